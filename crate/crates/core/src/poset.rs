//! Finite posets and their Hasse quivers, the forbidden peak-subposet
//! test for posets of type A, alien sets over type-A quivers, and the
//! constructive correspondence sending a type-A poset to a quiver-plus-
//! alien-set pair and back.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::{AlienViolation, Error, Result};

/// Directed graph on vertices 1..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub n: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn sorted(&self) -> Quiver {
        let mut arrows = self.arrows.clone();
        arrows.sort();
        Quiver { n: self.n, arrows }
    }

    pub fn has_arrow(&self, s: usize, t: usize) -> bool {
        self.arrows.contains(&(s, t))
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != v)
    }

    pub fn sinks(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| self.is_sink(v)).collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| self.is_source(v)).collect()
    }

    /// True when some directed path (possibly empty) leads from u to v.
    pub fn has_path(&self, u: usize, v: usize) -> bool {
        let mut seen = vec![false; self.n + 1];
        let mut queue = VecDeque::from([u]);
        seen[u] = true;
        while let Some(x) = queue.pop_front() {
            if x == v {
                return true;
            }
            for &(s, t) in &self.arrows {
                if s == x && !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        false
    }

    /// The quiver together with the alien arrows.
    pub fn with_alien(&self, f: &AlienSet) -> Quiver {
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&f.arrows);
        arrows.sort();
        Quiver { n: self.n, arrows }
    }

    /// Vertices listed along the underlying path, starting from the
    /// endpoint with the smaller label. Errors when the underlying graph
    /// is not a simple path on 1..=n.
    pub fn path_order(&self) -> Result<Vec<usize>> {
        let n = self.n;
        let fail = |msg: &str| Err(Error::NotTypeAQuiver(msg.to_string()));
        if n == 0 {
            return fail("no vertices");
        }
        for &(s, t) in &self.arrows {
            if s == 0 || t == 0 || s > n || t > n {
                return fail("arrow endpoint out of range");
            }
            if s == t {
                return fail("loop arrow");
            }
        }
        if self.arrows.len() != n - 1 {
            return fail("arrow count does not fit a path");
        }
        if n == 1 {
            return Ok(vec![1]);
        }
        let mut undirected = BTreeSet::new();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for &(s, t) in &self.arrows {
            if !undirected.insert((s.min(t), s.max(t))) {
                return fail("parallel or opposite arrows");
            }
            adj[s].push(t);
            adj[t].push(s);
        }
        if adj.iter().any(|nb| nb.len() > 2) {
            return fail("vertex of degree three");
        }
        let ends: Vec<usize> = (1..=n).filter(|&v| adj[v].len() == 1).collect();
        if ends.len() != 2 {
            return fail("not a single path");
        }
        let mut order = vec![ends[0]];
        let (mut prev, mut cur) = (0usize, ends[0]);
        while order.len() < n {
            match adj[cur].iter().copied().find(|&w| w != prev) {
                Some(w) => {
                    order.push(w);
                    prev = cur;
                    cur = w;
                }
                None => return fail("disconnected"),
            }
        }
        Ok(order)
    }

    pub fn is_type_a(&self) -> bool {
        self.path_order().is_ok()
    }
}

/// Extra arrows attached to a type-A quiver, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlienSet {
    pub arrows: Vec<(usize, usize)>,
}

impl AlienSet {
    pub fn new(mut arrows: Vec<(usize, usize)>) -> Self {
        arrows.sort();
        AlienSet { arrows }
    }

    pub fn empty() -> Self {
        AlienSet::default()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Vertices admitting a path into the sink `z`.
pub fn sink_support(q: &Quiver, z: usize) -> Result<BTreeSet<usize>> {
    if z == 0 || z > q.n || !q.is_sink(z) {
        return Err(Error::NotSink(z));
    }
    Ok((1..=q.n).filter(|&v| q.has_path(v, z)).collect())
}

/// The unique sink whose support holds both endpoints of the arrow, if
/// one exists. Distinct sinks of a type-A quiver share at most one
/// support vertex, so uniqueness is automatic for proper arrows.
pub fn alien_sink(q: &Quiver, arrow: (usize, usize)) -> Option<usize> {
    let mut found = None;
    for z in q.sinks() {
        let supp = sink_support(q, z).expect("enumerated sinks are sinks");
        if supp.contains(&arrow.0) && supp.contains(&arrow.1) {
            assert!(
                found.is_none(),
                "two sink supports share both endpoints of {arrow:?}"
            );
            found = Some(z);
        }
    }
    found
}

/// Full subquiver on the support of one sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubQuiver {
    pub vertices: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
}

pub fn z_subquiver(q: &Quiver, z: usize) -> Result<SubQuiver> {
    let supp = sink_support(q, z)?;
    let mut arrows: Vec<(usize, usize)> = q
        .arrows
        .iter()
        .copied()
        .filter(|(s, t)| supp.contains(s) && supp.contains(t))
        .collect();
    arrows.sort();
    Ok(SubQuiver { vertices: supp.into_iter().collect(), arrows })
}

fn has_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; n + 1];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for &(s, t) in edges {
        adj[s].push(t);
        indeg[t] += 1;
    }
    let mut queue: VecDeque<usize> = (1..=n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0usize;
    while let Some(v) = queue.pop_front() {
        seen += 1;
        for &w in &adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    seen < n
}

/// Path count from s to t in an acyclic multigraph, parallel edges
/// counted with multiplicity.
fn count_paths(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> u64 {
    let mut indeg = vec![0usize; n + 1];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for &(u, v) in edges {
        adj[u].push(v);
        indeg[v] += 1;
    }
    let mut queue: VecDeque<usize> = (1..=n).filter(|&v| indeg[v] == 0).collect();
    let mut ways = vec![0u64; n + 1];
    ways[s] = 1;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            ways[w] += ways[v];
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    ways[t]
}

/// Checks the four alien-set clauses in the order a, b, d, c; the path
/// uniqueness of clause c is only meaningful once clause d guarantees an
/// acyclic extended quiver.
pub fn validate_alien_set(q: &Quiver, f: &AlienSet) -> Result<()> {
    let order = q.path_order()?;
    for &(s, t) in &f.arrows {
        if s == 0 || t == 0 || s > q.n || t > q.n {
            return Err(Error::Input(format!("alien arrow ({s}, {t}) out of range")));
        }
    }
    for &a in &f.arrows {
        if a.0 != a.1 && alien_sink(q, a).is_none() {
            return Err(Error::AlienSet(AlienViolation::OutsideSinkSupport { arrow: a }));
        }
    }
    let extremal = [order[0], *order.last().unwrap()];
    for &a in &f.arrows {
        if a.0 != a.1 && q.is_source(a.1) && !extremal.contains(&a.1) {
            return Err(Error::AlienSet(AlienViolation::TargetNonExtremalSource {
                arrow: a,
            }));
        }
    }
    let mut edges = q.arrows.clone();
    edges.extend_from_slice(&f.arrows);
    if has_cycle(q.n, &edges) {
        return Err(Error::AlienSet(AlienViolation::Cyclic));
    }
    for &a in &f.arrows {
        if count_paths(q.n, &edges, a.0, a.1) != 1 {
            return Err(Error::AlienSet(AlienViolation::NonUniquePath { arrow: a }));
        }
    }
    Ok(())
}

/// Every valid alien set for `q`, the empty one included, found by
/// monotone backtracking: a set violating path uniqueness or acyclicity
/// stays in violation under any extension, so such branches are pruned.
pub fn enumerate_alien_sets(q: &Quiver) -> Result<Vec<AlienSet>> {
    let order = q.path_order()?;
    let extremal = [order[0], *order.last().unwrap()];
    let mut candidates = Vec::new();
    for s in 1..=q.n {
        for t in 1..=q.n {
            if s == t || q.has_arrow(s, t) {
                continue;
            }
            if alien_sink(q, (s, t)).is_none() {
                continue;
            }
            if q.is_source(t) && !extremal.contains(&t) {
                continue;
            }
            candidates.push((s, t));
        }
    }
    candidates.sort();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend_alien(q, &candidates, 0, &mut chosen, &mut out);
    Ok(out)
}

fn extend_alien(
    q: &Quiver,
    candidates: &[(usize, usize)],
    start: usize,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<AlienSet>,
) {
    out.push(AlienSet::new(chosen.clone()));
    for i in start..candidates.len() {
        chosen.push(candidates[i]);
        let mut edges = q.arrows.clone();
        edges.extend_from_slice(chosen);
        let valid = !has_cycle(q.n, &edges)
            && chosen
                .iter()
                .all(|&(s, t)| count_paths(q.n, &edges, s, t) == 1);
        if valid {
            extend_alien(q, candidates, i + 1, chosen, out);
        }
        chosen.pop();
    }
}

/// Finite poset with usize labels. The order matrix is stored in full and
/// the cover list is always the transitive reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<usize>,
    leq: Vec<Vec<bool>>,
    covers: Vec<(usize, usize)>,
}

fn transitive_close(leq: &mut [Vec<bool>]) {
    let k = leq.len();
    for h in 0..k {
        for i in 0..k {
            if leq[i][h] {
                for j in 0..k {
                    if leq[h][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }
}

fn reduction(leq: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let k = leq.len();
    let mut covers = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j || !leq[i][j] {
                continue;
            }
            let skipped = (0..k).any(|h| h != i && h != j && leq[i][h] && leq[h][j]);
            if !skipped {
                covers.push((i, j));
            }
        }
    }
    covers
}

impl Poset {
    /// Builds the poset generated by the given relations, each `(x, y)`
    /// read as x below y. Redundant relations are tolerated; the stored
    /// cover list is recomputed as the transitive reduction.
    pub fn from_covers(mut labels: Vec<usize>, relations: &[(usize, usize)]) -> Result<Poset> {
        labels.sort_unstable();
        if labels.is_empty() {
            return Err(Error::Input("empty poset".into()));
        }
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Input("duplicate element label".into()));
        }
        let k = labels.len();
        let mut leq = vec![vec![false; k]; k];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(x, y) in relations {
            let (Ok(i), Ok(j)) = (labels.binary_search(&x), labels.binary_search(&y)) else {
                return Err(Error::Input(format!("relation ({x}, {y}) uses unknown label")));
            };
            if i == j {
                return Err(Error::Input(format!("reflexive relation on {x}")));
            }
            leq[i][j] = true;
        }
        transitive_close(&mut leq);
        for i in 0..k {
            for j in 0..i {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::Input("relations generate a cycle".into()));
                }
            }
        }
        Ok(Poset::from_parts(labels, leq))
    }

    fn from_parts(labels: Vec<usize>, leq: Vec<Vec<bool>>) -> Poset {
        let covers = reduction(&leq);
        Poset { labels, leq, covers }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn contains(&self, label: usize) -> bool {
        self.labels.binary_search(&label).is_ok()
    }

    fn idx(&self, label: usize) -> usize {
        self.labels
            .binary_search(&label)
            .unwrap_or_else(|_| panic!("label {label} not in poset"))
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[self.idx(x)][self.idx(y)]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Cover pairs `(x, y)` with y covering x, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .covers
            .iter()
            .map(|&(i, j)| (self.labels[i], self.labels[j]))
            .collect();
        out.sort();
        out
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        self.labels
            .iter()
            .copied()
            .filter(|&x| !self.labels.iter().any(|&y| self.lt(x, y)))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        self.labels
            .iter()
            .copied()
            .filter(|&x| !self.labels.iter().any(|&y| self.lt(y, x)))
            .collect()
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        self.maximal_elements().contains(&x)
    }

    pub fn up_cone(&self, a: usize) -> BTreeSet<usize> {
        self.labels.iter().copied().filter(|&x| self.leq(a, x)).collect()
    }

    pub fn down_cone(&self, a: usize) -> BTreeSet<usize> {
        self.labels.iter().copied().filter(|&x| self.leq(x, a)).collect()
    }

    pub fn is_connected(&self) -> bool {
        let k = self.len();
        if k == 0 {
            return false;
        }
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = queue.pop_front() {
            for j in 0..k {
                if !seen[j] && (self.leq[i][j] || self.leq[j][i]) {
                    seen[j] = true;
                    reached += 1;
                    queue.push_back(j);
                }
            }
        }
        reached == k
    }

    /// Induced subposet on the given labels.
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> Poset {
        let labels: Vec<usize> = self.labels.iter().copied().filter(|l| keep.contains(l)).collect();
        let k = labels.len();
        let mut leq = vec![vec![false; k]; k];
        for a in 0..k {
            for b in 0..k {
                leq[a][b] = self.leq(labels[a], labels[b]);
            }
        }
        Poset::from_parts(labels, leq)
    }

    /// Transports the poset along an injective relabeling of elements.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Result<Poset> {
        let new_labels: Vec<usize> = self.labels.iter().map(|&l| map(l)).collect();
        let mut order: Vec<usize> = (0..new_labels.len()).collect();
        order.sort_by_key(|&i| new_labels[i]);
        if order.windows(2).any(|w| new_labels[w[0]] == new_labels[w[1]]) {
            return Err(Error::Input("relabeling is not injective".into()));
        }
        let labels: Vec<usize> = order.iter().map(|&i| new_labels[i]).collect();
        let k = labels.len();
        let mut leq = vec![vec![false; k]; k];
        for a in 0..k {
            for b in 0..k {
                leq[a][b] = self.leq[order[a]][order[b]];
            }
        }
        Ok(Poset::from_parts(labels, leq))
    }

    /// Minimum chain cover, each chain listed bottom first. Computed from
    /// a maximum matching on the strict-order bipartite graph, augmenting
    /// in ascending label order so the cover is deterministic.
    pub fn min_chain_cover(&self) -> Vec<Vec<usize>> {
        let k = self.len();
        let adj: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).filter(|&j| i != j && self.leq[i][j]).collect())
            .collect();
        let mut match_to: Vec<Option<usize>> = vec![None; k];
        for u in 0..k {
            let mut visited = vec![false; k];
            kuhn_augment(u, &adj, &mut visited, &mut match_to);
        }
        let mut succ: Vec<Option<usize>> = vec![None; k];
        let mut has_pred = vec![false; k];
        for (v, owner) in match_to.iter().enumerate() {
            if let Some(u) = owner {
                succ[*u] = Some(v);
                has_pred[v] = true;
            }
        }
        let mut chains = Vec::new();
        for s in 0..k {
            if has_pred[s] {
                continue;
            }
            let mut chain = vec![self.labels[s]];
            let mut cur = s;
            while let Some(nx) = succ[cur] {
                chain.push(self.labels[nx]);
                cur = nx;
            }
            chains.push(chain);
        }
        chains
    }

    /// Maximum antichain size, exact by the chain-cover duality.
    pub fn width(&self) -> usize {
        self.min_chain_cover().len()
    }

    /// Hasse quiver for posets labeled exactly by 1..=n.
    pub fn hasse_quiver(&self) -> Result<Quiver> {
        let n = self.len();
        if self.labels.iter().copied().ne(1..=n) {
            return Err(Error::Input("hasse quiver needs labels 1..=n".into()));
        }
        Ok(Quiver { n, arrows: self.covers() })
    }
}

fn kuhn_augment(
    u: usize,
    adj: &[Vec<usize>],
    visited: &mut [bool],
    match_to: &mut [Option<usize>],
) -> bool {
    for &v in &adj[u] {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        let free = match match_to[v] {
            None => true,
            Some(owner) => kuhn_augment(owner, adj, visited, match_to),
        };
        if free {
            match_to[v] = Some(u);
            return true;
        }
    }
    false
}

/// Reachability order of an acyclic quiver: x below y when a directed
/// path runs from x to y, so maximal elements sit at the sinks.
pub fn poset_from_quiver(q: &Quiver) -> Result<Poset> {
    let n = q.n;
    if n == 0 {
        return Err(Error::Input("empty quiver".into()));
    }
    for &(s, t) in &q.arrows {
        if s == 0 || t == 0 || s > n || t > n {
            return Err(Error::Input(format!("arrow ({s}, {t}) out of range")));
        }
        if s == t {
            return Err(Error::CyclicQuiver);
        }
    }
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(s, t) in &q.arrows {
        leq[s - 1][t - 1] = true;
    }
    transitive_close(&mut leq);
    for i in 0..n {
        for j in 0..i {
            if leq[i][j] && leq[j][i] {
                return Err(Error::CyclicQuiver);
            }
        }
    }
    Ok(Poset::from_parts((1..=n).collect(), leq))
}

/// Forbidden peak-subposet families: a peak over a 3-antichain, two peaks
/// over a 2-chain, three peaks over a point, and crowns on n+2 peaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForbiddenFamily {
    R1,
    R2,
    R3,
    R4n(usize),
}

impl std::fmt::Display for ForbiddenFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ForbiddenFamily::R1 => write!(f, "R1"),
            ForbiddenFamily::R2 => write!(f, "R2"),
            ForbiddenFamily::R3 => write!(f, "R3"),
            ForbiddenFamily::R4n(n) => write!(f, "R4,{n}"),
        }
    }
}

/// Searches for a full subposet, with all its maxima maximal in `p`,
/// isomorphic to one of the forbidden families. The crown search runs
/// last: with R2 and R3 ruled out, every element under exactly two peaks
/// is minimal, and crowns are exactly the cycles of the bipartite
/// peak-incidence graph.
pub fn find_forbidden_peak_subposet(p: &Poset) -> Option<(ForbiddenFamily, BTreeSet<usize>)> {
    let maxes = p.maximal_elements();

    for &z in &maxes {
        let below: Vec<usize> = p.down_cone(z).into_iter().filter(|&x| x != z).collect();
        for i in 0..below.len() {
            for j in i + 1..below.len() {
                if p.comparable(below[i], below[j]) {
                    continue;
                }
                for h in j + 1..below.len() {
                    if !p.comparable(below[i], below[h]) && !p.comparable(below[j], below[h]) {
                        let witness = BTreeSet::from([below[i], below[j], below[h], z]);
                        return Some((ForbiddenFamily::R1, witness));
                    }
                }
            }
        }
    }

    for (i, &z) in maxes.iter().enumerate() {
        for &z2 in &maxes[i + 1..] {
            let shared: Vec<usize> = p
                .down_cone(z)
                .intersection(&p.down_cone(z2))
                .copied()
                .collect();
            for &x in &shared {
                for &y in p.labels() {
                    if p.lt(y, x) {
                        return Some((ForbiddenFamily::R2, BTreeSet::from([y, x, z, z2])));
                    }
                }
            }
        }
    }

    for i in 0..maxes.len() {
        for j in i + 1..maxes.len() {
            for h in j + 1..maxes.len() {
                let common = p
                    .down_cone(maxes[i])
                    .intersection(&p.down_cone(maxes[j]))
                    .copied()
                    .collect::<BTreeSet<usize>>()
                    .intersection(&p.down_cone(maxes[h]))
                    .copied()
                    .collect::<Vec<usize>>();
                if let Some(&x) = common.first() {
                    let witness = BTreeSet::from([x, maxes[i], maxes[j], maxes[h]]);
                    return Some((ForbiddenFamily::R3, witness));
                }
            }
        }
    }

    let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &x in p.labels() {
        if maxes.contains(&x) {
            continue;
        }
        let above: Vec<usize> = maxes.iter().copied().filter(|&z| p.lt(x, z)).collect();
        if above.len() == 2 {
            assert!(
                p.minimal_elements().contains(&x),
                "element under two peaks is non-minimal despite absent R2"
            );
            by_pair.entry((above[0], above[1])).or_default().push(x);
        }
    }
    for (&(z, z2), xs) in &by_pair {
        if xs.len() >= 2 {
            let witness = BTreeSet::from([xs[0], xs[1], z, z2]);
            return Some((ForbiddenFamily::R4n(0), witness));
        }
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = maxes.iter().map(|&z| (z, Vec::new())).collect();
    for &(z, z2) in by_pair.keys() {
        adj.get_mut(&z).unwrap().push(z2);
        adj.get_mut(&z2).unwrap().push(z);
    }
    let mut visited = BTreeSet::new();
    for &root in &maxes {
        if visited.contains(&root) {
            continue;
        }
        let mut stack = Vec::new();
        if let Some(cycle) = peak_cycle(root, 0, &adj, &mut visited, &mut stack) {
            let mut witness: BTreeSet<usize> = cycle.iter().copied().collect();
            for i in 0..cycle.len() {
                let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                let xs = &by_pair[&(a.min(b), a.max(b))];
                witness.insert(xs[0]);
            }
            return Some((ForbiddenFamily::R4n(cycle.len() - 2), witness));
        }
    }
    None
}

fn peak_cycle(
    u: usize,
    parent: usize,
    adj: &BTreeMap<usize, Vec<usize>>,
    visited: &mut BTreeSet<usize>,
    stack: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    visited.insert(u);
    stack.push(u);
    for &w in &adj[&u] {
        if w == parent {
            continue;
        }
        if let Some(pos) = stack.iter().position(|&x| x == w) {
            return Some(stack[pos..].to_vec());
        }
        if !visited.contains(&w) {
            if let Some(c) = peak_cycle(w, u, adj, visited, stack) {
                return Some(c);
            }
        }
    }
    stack.pop();
    None
}

pub fn is_type_a(p: &Poset) -> bool {
    p.is_connected() && find_forbidden_peak_subposet(p).is_none()
}

fn not_type_a_error(p: &Poset) -> Error {
    match find_forbidden_peak_subposet(p) {
        Some((fam, witness)) => Error::NotTypeA(format!("contains {fam} on {witness:?}")),
        None => Error::NotTypeA("poset is disconnected".into()),
    }
}

/// All pairs of maximal elements with intersecting down-cones, each with
/// the single shared minimal element.
pub fn neighbors(p: &Poset) -> Result<Vec<(usize, usize, usize)>> {
    if !is_type_a(p) {
        return Err(not_type_a_error(p));
    }
    Ok(neighbor_pairs(p))
}

fn neighbor_pairs(p: &Poset) -> Vec<(usize, usize, usize)> {
    let maxes = p.maximal_elements();
    let mins = p.minimal_elements();
    let mut out = Vec::new();
    for (i, &z) in maxes.iter().enumerate() {
        for &z2 in &maxes[i + 1..] {
            let inter: Vec<usize> = p
                .down_cone(z)
                .intersection(&p.down_cone(z2))
                .copied()
                .collect();
            if inter.is_empty() {
                continue;
            }
            assert!(
                inter.len() == 1,
                "down-cones of {z} and {z2} share {inter:?}, not a single element"
            );
            assert!(mins.contains(&inter[0]), "shared element {} is not minimal", inter[0]);
            out.push((z, z2, inter[0]));
        }
    }
    out
}

/// Output of `decompose_type_a`: a path quiver on positions 1..=n, the
/// alien arrows, and `labels[i]` naming the poset element at vertex i+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub quiver: Quiver,
    pub alien: AlienSet,
    pub labels: Vec<usize>,
}

/// Writes a type-A poset as the reachability order of a type-A quiver
/// with alien arrows. Every structural step asserts the shape the theory
/// guarantees, and the result is verified by rebuilding the poset before
/// it is returned.
pub fn decompose_type_a(p: &Poset) -> Result<Decomposition> {
    if !is_type_a(p) {
        return Err(not_type_a_error(p));
    }
    let seq = decompose_seq(p, None)?;
    let pos: BTreeMap<usize, usize> =
        seq.iter().enumerate().map(|(i, &l)| (l, i + 1)).collect();
    let mut arrows = Vec::new();
    for w in seq.windows(2) {
        let (u, v) = (w[0], w[1]);
        if p.lt(u, v) {
            arrows.push((pos[&u], pos[&v]));
        } else if p.lt(v, u) {
            arrows.push((pos[&v], pos[&u]));
        } else {
            return Err(Error::Internal(format!(
                "consecutive path elements {u}, {v} are incomparable"
            )));
        }
    }
    arrows.sort();
    let quiver = Quiver { n: seq.len(), arrows };
    let consecutive: BTreeSet<(usize, usize)> = seq
        .windows(2)
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
        .collect();
    let mut alien_arrows = Vec::new();
    for (x, y) in p.covers() {
        if !consecutive.contains(&(x.min(y), x.max(y))) {
            alien_arrows.push((pos[&x], pos[&y]));
        }
    }
    let alien = AlienSet::new(alien_arrows);
    validate_alien_set(&quiver, &alien)
        .map_err(|e| Error::Internal(format!("constructed alien set is invalid: {e}")))?;
    let rebuilt = poset_from_quiver(&quiver.with_alien(&alien))?;
    let relabeled = rebuilt.relabel(|v| seq[v - 1])?;
    if relabeled != *p {
        return Err(Error::Internal(
            "decomposition does not rebuild the original poset".into(),
        ));
    }
    Ok(Decomposition { quiver, alien, labels: seq })
}

/// Lists the poset along a path: consecutive elements comparable, every
/// element once. A forced element, always minimal, is placed first.
fn decompose_seq(p: &Poset, forced_start: Option<usize>) -> Result<Vec<usize>> {
    let maxes = p.maximal_elements();
    if maxes.len() == 1 {
        return one_peak_seq(p, forced_start, None);
    }
    let pairs = neighbor_pairs(p);
    let mut degree: BTreeMap<usize, usize> = maxes.iter().map(|&z| (z, 0)).collect();
    for &(z, z2, _) in &pairs {
        *degree.get_mut(&z).unwrap() += 1;
        *degree.get_mut(&z2).unwrap() += 1;
    }
    if pairs.len() != maxes.len() - 1 || degree.values().any(|&d| d > 2) {
        return Err(Error::Internal("peaks do not form a path of neighbors".into()));
    }
    let endpoints: Vec<usize> = maxes.iter().copied().filter(|z| degree[z] == 1).collect();
    if endpoints.len() != 2 {
        return Err(Error::Internal("neighbor path lacks two endpoints".into()));
    }
    let z_first = match forced_start {
        Some(x) => *endpoints
            .iter()
            .find(|&&z| p.lt(x, z))
            .ok_or_else(|| Error::Internal("forced element lies under no endpoint peak".into()))?,
        None => endpoints[0],
    };
    let w1 = pairs
        .iter()
        .find_map(|&(z, z2, x)| (z == z_first || z2 == z_first).then_some(x))
        .expect("endpoint has a neighbor");
    let cone = p.down_cone(z_first);
    let block = one_peak_seq(&p.restrict(&cone), forced_start, Some(w1))?;
    let mut rest_labels: BTreeSet<usize> =
        p.labels().iter().copied().filter(|l| !cone.contains(l)).collect();
    rest_labels.insert(w1);
    let tail = decompose_seq(&p.restrict(&rest_labels), Some(w1))?;
    if block.last() != Some(&w1) || tail.first() != Some(&w1) {
        return Err(Error::Internal("glue element missing at the junction".into()));
    }
    let mut seq = block;
    seq.extend_from_slice(&tail[1..]);
    Ok(seq)
}

/// Path listing of a one-peak poset: one Dilworth chain climbs to the
/// peak and the other descends from it. Forced elements are minimal, so
/// they sit at chain bottoms, which are exactly the path ends.
fn one_peak_seq(
    p: &Poset,
    forced_start: Option<usize>,
    forced_end: Option<usize>,
) -> Result<Vec<usize>> {
    let maxes = p.maximal_elements();
    if maxes.len() != 1 {
        return Err(Error::Internal("one-peak listing on a multi-peak poset".into()));
    }
    let z = maxes[0];
    let rest: BTreeSet<usize> = p.labels().iter().copied().filter(|&l| l != z).collect();
    if rest.is_empty() {
        for forced in [forced_start, forced_end].into_iter().flatten() {
            if forced != z {
                return Err(Error::Internal("forced element outside singleton poset".into()));
            }
        }
        return Ok(vec![z]);
    }
    let chains = p.restrict(&rest).min_chain_cover();
    if chains.len() > 2 {
        return Err(Error::Internal("more than two chains under a single peak".into()));
    }
    let find_chain = |x: usize| chains.iter().position(|c| c.contains(&x));
    let other = |i: usize| if chains.len() == 2 { Some(1 - i) } else { None };
    let (ia, ib) = match (forced_start, forced_end) {
        (Some(s), Some(e)) => {
            let is_ = find_chain(s)
                .ok_or_else(|| Error::Internal("forced start missing from chains".into()))?;
            let ie = find_chain(e)
                .ok_or_else(|| Error::Internal("forced end missing from chains".into()))?;
            if is_ == ie {
                return Err(Error::Internal("forced endpoints share a chain".into()));
            }
            (Some(is_), Some(ie))
        }
        (Some(s), None) => {
            let is_ = find_chain(s)
                .ok_or_else(|| Error::Internal("forced start missing from chains".into()))?;
            (Some(is_), other(is_))
        }
        (None, Some(e)) => {
            let ie = find_chain(e)
                .ok_or_else(|| Error::Internal("forced end missing from chains".into()))?;
            (other(ie), Some(ie))
        }
        (None, None) => {
            if chains.len() == 1 {
                (Some(0), None)
            } else if chains[0][0] < chains[1][0] {
                (Some(0), Some(1))
            } else {
                (Some(1), Some(0))
            }
        }
    };
    let ca: Vec<usize> = ia.map(|i| chains[i].clone()).unwrap_or_default();
    let cb: Vec<usize> = ib.map(|i| chains[i].clone()).unwrap_or_default();
    if let Some(s) = forced_start {
        if ca.first() != Some(&s) {
            return Err(Error::Internal("forced start is not a chain bottom".into()));
        }
    }
    if let Some(e) = forced_end {
        if cb.first() != Some(&e) {
            return Err(Error::Internal("forced end is not a chain bottom".into()));
        }
    }
    let mut seq = ca;
    seq.push(z);
    seq.extend(cb.iter().rev());
    Ok(seq)
}

/// The three zigzag families of sincere type-A posets of small width:
/// both path ends peaks, exactly one end a peak, or no end a peak.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SincereFamily {
    S1,
    S2,
    S3,
}

impl std::fmt::Display for SincereFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SincereFamily::S1 => write!(f, "S1"),
            SincereFamily::S2 => write!(f, "S2"),
            SincereFamily::S3 => write!(f, "S3"),
        }
    }
}

/// Matches `p` against the zigzag templates: the cover graph must be a
/// single path whose every element is minimal or maximal. The family is
/// read off the path ends and r counts the peaks; a single point is the
/// r = 1 degeneration of the both-ends-peaks family.
pub fn classify_sincere(p: &Poset) -> Option<(SincereFamily, usize)> {
    let k = p.len();
    if k == 1 {
        return Some((SincereFamily::S1, 1));
    }
    let covers = p.covers();
    if covers.len() != k - 1 {
        return None;
    }
    let mut degree: BTreeMap<usize, usize> = p.labels().iter().map(|&l| (l, 0)).collect();
    let mut has_lower: BTreeSet<usize> = BTreeSet::new();
    let mut has_upper: BTreeSet<usize> = BTreeSet::new();
    for &(x, y) in &covers {
        *degree.get_mut(&x).unwrap() += 1;
        *degree.get_mut(&y).unwrap() += 1;
        has_upper.insert(x);
        has_lower.insert(y);
    }
    if p.labels().iter().any(|l| has_lower.contains(l) && has_upper.contains(l)) {
        return None;
    }
    if degree.values().any(|&d| d > 2) {
        return None;
    }
    let ends: Vec<usize> = p.labels().iter().copied().filter(|l| degree[l] == 1).collect();
    if ends.len() != 2 || !p.is_connected() {
        return None;
    }
    let r = p.maximal_elements().len();
    let peak_ends = ends.iter().filter(|&&e| p.is_maximal(e)).count();
    let family = match peak_ends {
        2 => SincereFamily::S1,
        1 => SincereFamily::S2,
        _ => SincereFamily::S3,
    };
    debug_assert_eq!(
        k,
        match family {
            SincereFamily::S1 => 2 * r - 1,
            SincereFamily::S2 => 2 * r,
            SincereFamily::S3 => 2 * r + 1,
        }
    );
    Some((family, r))
}
