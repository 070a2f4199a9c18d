//! Categories of diagonals over a triangulated polygon: crossing
//! supports, the star and non-frozen tests that cut out sp-diagonals,
//! one-dimensional Hom spaces, pivoting sp-moves, and AR-quivers with
//! translations for both the full diagonal category and its
//! socle-projective subcategory.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::polygon::{
    all_diagonals, crosses, elementary_moves, fans, peak_diagonal, quiver_from_triangulation,
    rotate, Diagonal, Edge, Fan, Triangulation,
};
use crate::poset::{alien_sink, validate_alien_set, AlienSet, Quiver};
use crate::repcat::ThinModule;
use crate::{Error, Result};

/// A non-triangulation diagonal together with the labels of the
/// triangulation diagonals it crosses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DiagObject {
    pub diagonal: Diagonal,
    pub support: BTreeSet<usize>,
}

/// Labels of the triangulation diagonals crossing `g`. The support of a
/// diagonal outside `T` is never empty and is connected in the quiver of
/// `T`; both facts are asserted.
pub fn support(g: &Diagonal, t: &Triangulation) -> Result<BTreeSet<usize>> {
    if t.contains(g) {
        return Err(Error::DiagonalInT(g.a, g.b));
    }
    let supp: BTreeSet<usize> = (1..=t.n)
        .filter(|&x| crosses(&t.diagonal_of_label(x), g))
        .collect();
    assert!(!supp.is_empty(), "diagonal {g} crosses no member of a maximal set");
    let q = quiver_from_triangulation(t);
    assert!(
        connected_in(&q, &supp),
        "support of {g} is disconnected in the triangulation quiver"
    );
    Ok(supp)
}

/// Connectivity of `s` in the underlying graph of `q`.
fn connected_in(q: &Quiver, s: &BTreeSet<usize>) -> bool {
    let Some(&start) = s.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &(a, b) in &q.arrows {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && s.contains(&y) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
    }
    seen.len() == s.len()
}

fn star_with(g: &Diagonal, t: &Triangulation, all_fans: &[Fan], q: &Quiver) -> bool {
    (1..=t.n)
        .filter(|&x| crosses(&t.diagonal_of_label(x), g))
        .all(|x| {
            let containing: Vec<&Fan> = all_fans
                .iter()
                .filter(|f| f.members.contains(&x))
                .collect();
            // A diagonal outside every fan happens only in the square,
            // where the lone member is its own peak.
            if containing.is_empty() {
                return true;
            }
            containing.iter().any(|f| {
                let peak = peak_diagonal(f, q);
                crosses(&t.diagonal_of_label(peak), g)
            })
        })
}

/// True when every triangulation diagonal crossed by `g` lies in some fan
/// whose peak-diagonal `g` also crosses.
pub fn is_star_diagonal(g: &Diagonal, t: &Triangulation) -> bool {
    assert!(!t.contains(g), "star test is for diagonals outside T");
    let q = quiver_from_triangulation(t);
    star_with(g, t, &fans(t), &q)
}

/// The alien arrows freezing `g`: those whose source and sink diagonals
/// are crossed while the target diagonal is not. Expects a valid alien
/// set for the quiver of `t`.
pub fn frozen_by(g: &Diagonal, t: &Triangulation, f: &AlienSet) -> Vec<(usize, usize)> {
    let q = quiver_from_triangulation(t);
    f.arrows
        .iter()
        .copied()
        .filter(|&(s, tgt)| {
            let z = alien_sink(&q, (s, tgt))
                .expect("alien arrow endpoints lie in one sink support");
            crosses(&t.diagonal_of_label(s), g)
                && crosses(&t.diagonal_of_label(z), g)
                && !crosses(&t.diagonal_of_label(tgt), g)
        })
        .collect()
}

/// True when no alien arrow freezes `g`.
pub fn is_nonfrozen(g: &Diagonal, t: &Triangulation, f: &AlienSet) -> bool {
    frozen_by(g, t, f).is_empty()
}

/// All sp-diagonals of `(T, F)`: diagonals outside `T` that are star and
/// non-frozen, in lexicographic order.
pub fn sp_diagonals(t: &Triangulation, f: &AlienSet) -> Result<Vec<DiagObject>> {
    let q = quiver_from_triangulation(t);
    validate_alien_set(&q, f)?;
    let all_fans = fans(t);
    let mut out = Vec::new();
    for g in all_diagonals(t.m()) {
        if t.contains(&g) || !star_with(&g, t, &all_fans, &q) || !is_nonfrozen(&g, t, f) {
            continue;
        }
        out.push(DiagObject { diagonal: g, support: support(&g, t)? });
    }
    Ok(out)
}

/// Dimension of the morphism space from `g` to `g2` in the diagonal
/// category of `T`: one exactly when some crossed diagonal `(v1, v2)`
/// sees the four non-shared endpoints in the cyclic order
/// `v1 < u1 <= w1 < v2 < u2 <= w2`, zero otherwise.
pub fn hom_dim(g: &Diagonal, g2: &Diagonal, t: &Triangulation) -> usize {
    assert!(!t.contains(g) && !t.contains(g2), "hom is between diagonals outside T");
    let m = t.m();
    for tau in &t.diagonals {
        if !crosses(tau, g) || !crosses(tau, g2) {
            continue;
        }
        for (v1, v2) in [(tau.a, tau.b), (tau.b, tau.a)] {
            let ord = |x: usize| (x + m - v1) % m;
            let split = |d: &Diagonal| {
                if ord(d.a) < ord(v2) {
                    (ord(d.a), ord(d.b))
                } else {
                    (ord(d.b), ord(d.a))
                }
            };
            let (u1, u2) = split(g);
            let (w1, w2) = split(g2);
            if u1 <= w1 && u2 <= w2 {
                return 1;
            }
        }
    }
    0
}

/// One counter-clockwise rotation about a fixed endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotMove {
    pub pivot: usize,
    pub source: Edge,
    pub target: Edge,
}

/// A same-pivot chain of elementary moves whose interior edges are plain
/// diagonals: neither sp, nor in the triangulation, nor boundary. The
/// chain stops at the first edge of `E(T, F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpMove {
    pub pivot: usize,
    pub chain: Vec<PivotMove>,
}

impl SpMove {
    pub fn source(&self) -> Edge {
        self.chain.first().expect("chain is nonempty").source
    }

    pub fn target(&self) -> Edge {
        self.chain.last().expect("chain is nonempty").target
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgeClass {
    Boundary,
    InT,
    Sp,
    Plain,
}

fn classify(e: &Edge, t: &Triangulation, sp: &BTreeSet<Diagonal>) -> EdgeClass {
    match e {
        Edge::Boundary(_) => EdgeClass::Boundary,
        Edge::Diag(d) if t.contains(d) => EdgeClass::InT,
        Edge::Diag(d) if sp.contains(d) => EdgeClass::Sp,
        Edge::Diag(_) => EdgeClass::Plain,
    }
}

fn pivot_chain(g: &Diagonal, pivot: usize, t: &Triangulation, sp: &BTreeSet<Diagonal>) -> SpMove {
    let m = t.m();
    let mut chain = Vec::new();
    let mut source = Edge::Diag(*g);
    let mut moving = g.other_endpoint(pivot);
    loop {
        moving = (moving + 1) % m;
        let target = Edge::from_pair(m, pivot, moving);
        chain.push(PivotMove { pivot, source, target });
        match classify(&target, t, sp) {
            EdgeClass::Plain => source = target,
            _ => return SpMove { pivot, chain },
        }
    }
}

/// The two pivoting sp-moves out of an sp-diagonal, one per endpoint.
pub fn sp_moves(g: &Diagonal, t: &Triangulation, f: &AlienSet) -> Result<Vec<SpMove>> {
    let objs = sp_diagonals(t, f)?;
    let set: BTreeSet<Diagonal> = objs.iter().map(|o| o.diagonal).collect();
    if !set.contains(g) {
        return Err(Error::NotSpDiagonal(g.a, g.b));
    }
    Ok(sp_moves_with(g, t, &set))
}

fn sp_moves_with(g: &Diagonal, t: &Triangulation, sp: &BTreeSet<Diagonal>) -> Vec<SpMove> {
    vec![pivot_chain(g, g.a, t, sp), pivot_chain(g, g.b, t, sp)]
}

/// One AR-sequence: `start` maps into the sum of the `middles`, which map
/// onto `end`, and the translation sends `end` back to `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mesh {
    pub start: usize,
    pub middles: Vec<usize>,
    pub end: usize,
}

/// AR-quiver of a diagonal category: objects, irreducible morphisms,
/// translation, and the vertices with no sequence ending (projectives) or
/// starting (injectives) at them.
#[derive(Debug, Clone)]
pub struct ArQuiver {
    pub vertices: Vec<DiagObject>,
    pub arrows: Vec<(usize, usize)>,
    pub translation: BTreeMap<usize, usize>,
    pub projectives: Vec<usize>,
    pub injectives: Vec<usize>,
    pub meshes: Vec<Mesh>,
}

impl ArQuiver {
    pub fn index_of(&self, d: &Diagonal) -> Option<usize> {
        self.vertices.iter().position(|o| o.diagonal == *d)
    }
}

/// AR-quiver of the full diagonal category of `T`: vertices are the
/// diagonals outside `T`, arrows the elementary moves between them, and
/// the translation is the clockwise rotation where it stays outside `T`.
pub fn ar_quiver_ct(t: &Triangulation) -> ArQuiver {
    let m = t.m();
    let vertices: Vec<DiagObject> = all_diagonals(m)
        .into_iter()
        .filter(|g| !t.contains(g))
        .map(|g| DiagObject { support: support(&g, t).expect("vertex is outside T"), diagonal: g })
        .collect();
    let index: BTreeMap<Diagonal, usize> =
        vertices.iter().enumerate().map(|(i, o)| (o.diagonal, i)).collect();
    let mut arrows = Vec::new();
    for (i, obj) in vertices.iter().enumerate() {
        for (_, target) in elementary_moves(&obj.diagonal, m) {
            if let Some(d) = target.as_diagonal() {
                if let Some(&j) = index.get(&d) {
                    arrows.push((i, j));
                }
            }
        }
    }
    arrows.sort();
    let mut translation = BTreeMap::new();
    let mut projectives = Vec::new();
    let mut injectives = Vec::new();
    let mut meshes = Vec::new();
    for (i, obj) in vertices.iter().enumerate() {
        let back = rotate(&obj.diagonal, -1, m);
        if let Some(&j) = index.get(&back) {
            translation.insert(i, j);
        } else {
            projectives.push(i);
        }
        let forward = rotate(&obj.diagonal, 1, m);
        match index.get(&forward) {
            Some(&j) => {
                let middles: Vec<usize> =
                    arrows.iter().filter(|&&(s, _)| s == i).map(|&(_, v)| v).collect();
                meshes.push(Mesh { start: i, middles, end: j });
            }
            None => injectives.push(i),
        }
    }
    ArQuiver { vertices, arrows, translation, projectives, injectives, meshes }
}

/// AR-quiver of the sp subcategory: vertices are sp-diagonals, arrows the
/// sp-moves landing on sp-diagonals, and each AR-sequence completes the
/// rectangle spanned by the two sp-moves out of its starting diagonal.
/// With chains of lengths k and l out of `(a, b)`, the sequence ends at
/// `(a + k, b + l)` and keeps as middle terms the chain targets that are
/// sp-diagonals; it exists when the end is an sp-diagonal and at least
/// one middle survives.
pub fn ar_quiver_sp(t: &Triangulation, f: &AlienSet) -> Result<ArQuiver> {
    let m = t.m();
    let vertices = sp_diagonals(t, f)?;
    let set: BTreeSet<Diagonal> = vertices.iter().map(|o| o.diagonal).collect();
    let index: BTreeMap<Diagonal, usize> =
        vertices.iter().enumerate().map(|(i, o)| (o.diagonal, i)).collect();
    let mut arrows = Vec::new();
    for (i, obj) in vertices.iter().enumerate() {
        for mv in sp_moves_with(&obj.diagonal, t, &set) {
            if let Some(d) = mv.target().as_diagonal() {
                if let Some(&j) = index.get(&d) {
                    arrows.push((i, j));
                }
            }
        }
    }
    arrows.sort();
    let mut meshes = Vec::new();
    let mut translation: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, obj) in vertices.iter().enumerate() {
        let d = obj.diagonal;
        let moves = sp_moves_with(&d, t, &set);
        let l = moves[0].chain.len();
        let k = moves[1].chain.len();
        let corner = Edge::from_pair(m, (d.a + k) % m, (d.b + l) % m);
        let Some(&end) = corner.as_diagonal().and_then(|c| index.get(&c)) else {
            continue;
        };
        let middles: Vec<usize> = moves
            .iter()
            .filter_map(|mv| mv.target().as_diagonal())
            .filter_map(|s| index.get(&s).copied())
            .collect();
        if middles.is_empty() {
            continue;
        }
        if translation.insert(end, i).is_some() {
            return Err(Error::Internal(format!(
                "two AR-sequences end at sp-diagonal {}",
                vertices[end].diagonal
            )));
        }
        for &mid in &middles {
            if !arrows.contains(&(i, mid)) || !arrows.contains(&(mid, end)) {
                return Err(Error::Internal(format!(
                    "mesh through {} is not made of sp-moves",
                    vertices[mid].diagonal
                )));
            }
        }
        meshes.push(Mesh { start: i, middles, end });
    }
    let projectives: Vec<usize> =
        (0..vertices.len()).filter(|i| !translation.contains_key(i)).collect();
    let ends: BTreeSet<usize> = translation.values().copied().collect();
    let injectives: Vec<usize> = (0..vertices.len()).filter(|i| !ends.contains(i)).collect();
    Ok(ArQuiver { vertices, arrows, translation, projectives, injectives, meshes })
}

/// The thin module of a diagonal over the poset of the triangulation
/// quiver: dimension one exactly on the crossing support.
pub fn theta_module(g: &Diagonal, t: &Triangulation) -> Result<ThinModule> {
    Ok(ThinModule { support: support(g, t)? })
}

/// Graphviz rendering: boxes labeled by diagonal and support, solid
/// arrows for irreducible morphisms, dashed back-edges for the
/// translation.
pub fn to_dot(aq: &ArQuiver) -> String {
    let mut out = String::from("digraph ar_quiver {\n  rankdir=LR;\n  node [shape=box];\n");
    for (i, obj) in aq.vertices.iter().enumerate() {
        let supp: Vec<String> = obj.support.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!(
            "  d{} [label=\"({}, {})\\n{{{}}}\"];\n",
            i,
            obj.diagonal.a,
            obj.diagonal.b,
            supp.join(",")
        ));
    }
    for &(s, t) in &aq.arrows {
        out.push_str(&format!("  d{s} -> d{t};\n"));
    }
    for (&end, &start) in &aq.translation {
        out.push_str(&format!(
            "  d{end} -> d{start} [style=dashed, constraint=false];\n"
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::polygon::triangulation_from_quiver;

    fn d(a: usize, b: usize) -> Diagonal {
        Diagonal::new(a, b)
    }

    fn supp_of(aq: &ArQuiver, i: usize) -> Vec<usize> {
        aq.vertices[i].support.iter().copied().collect()
    }

    #[test]
    fn supports_of_zigzag_fixture() {
        let t = zigzag_triangulation();
        let cases = [
            (d(4, 6), vec![1, 2, 3]),
            (d(3, 6), vec![2, 3]),
            (d(4, 7), vec![1, 2, 3, 4]),
            (d(2, 6), vec![3]),
            (d(3, 7), vec![2, 3, 4]),
            (d(4, 8), vec![1, 2, 3, 4, 5]),
            (d(2, 7), vec![3, 4]),
            (d(3, 8), vec![2, 3, 4, 5]),
            (d(0, 4), vec![1, 2, 3, 4, 5, 6]),
            (d(0, 3), vec![2, 3, 4, 5, 6]),
        ];
        for (g, want) in cases {
            let got: Vec<usize> = support(&g, &t).unwrap().into_iter().collect();
            assert_eq!(got, want, "support of {g}");
        }
        assert!(matches!(support(&d(1, 5), &t), Err(Error::DiagonalInT(1, 5))));
    }

    #[test]
    fn star_classification_on_fan() {
        let t = Triangulation::new(3, vec![d(0, 2), d(0, 3), d(0, 4)]).unwrap();
        for (g, star) in [
            (d(1, 3), true),
            (d(1, 4), true),
            (d(1, 5), true),
            (d(2, 4), false),
            (d(2, 5), false),
            (d(3, 5), false),
        ] {
            assert_eq!(is_star_diagonal(&g, &t), star, "{g}");
        }
        // With no alien arrows the sp-diagonals are exactly the stars.
        let sp = sp_diagonals(&t, &AlienSet::empty()).unwrap();
        let got: Vec<Diagonal> = sp.iter().map(|o| o.diagonal).collect();
        assert_eq!(got, vec![d(1, 3), d(1, 4), d(1, 5)]);
    }

    #[test]
    fn frozen_diagonals_of_zigzag() {
        let t = zigzag_triangulation();
        let f = zigzag_alien();
        assert_eq!(frozen_by(&d(2, 8), &t, &f), vec![(5, 2)]);
        assert_eq!(frozen_by(&d(0, 2), &t, &f), vec![(5, 2)]);
        assert!(is_nonfrozen(&d(3, 7), &t, &f));
        assert!(is_nonfrozen(&d(0, 4), &t, &f));
    }

    #[test]
    fn frozen_diagonals_of_three_sink() {
        let t = three_sink_triangulation();
        let f = three_sink_alien();
        for g in [d(1, 3), d(0, 3), d(3, 7), d(3, 8), d(3, 9)] {
            assert_eq!(frozen_by(&g, &t, &f), vec![(3, 1)], "{g}");
        }
        for g in [d(1, 9), d(1, 8)] {
            assert_eq!(frozen_by(&g, &t, &f), vec![(6, 4)], "{g}");
        }
        assert!(is_nonfrozen(&d(2, 9), &t, &f));
    }

    #[test]
    fn sp_diagonals_of_zigzag() {
        let t = zigzag_triangulation();
        let sp = sp_diagonals(&t, &zigzag_alien()).unwrap();
        let got: Vec<Diagonal> = sp.iter().map(|o| o.diagonal).collect();
        let want = vec![
            d(0, 3),
            d(0, 4),
            d(2, 6),
            d(2, 7),
            d(3, 6),
            d(3, 7),
            d(3, 8),
            d(4, 6),
            d(4, 7),
            d(4, 8),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn sp_diagonals_of_three_sink() {
        let t = three_sink_triangulation();
        let sp = sp_diagonals(&t, &three_sink_alien()).unwrap();
        assert_eq!(sp.len(), 15);
        let supports: BTreeSet<Vec<usize>> =
            sp.iter().map(|o| o.support.iter().copied().collect()).collect();
        let want: BTreeSet<Vec<usize>> = [
            vec![7],
            vec![4, 5, 6],
            vec![1, 2, 3],
            vec![4, 5, 6, 7],
            vec![1, 2, 3, 4, 5, 6],
            vec![5],
            vec![4, 5],
            vec![1, 2, 3, 4, 5, 6, 7],
            vec![3, 4, 5, 6],
            vec![1, 2, 3, 4, 5],
            vec![3, 4, 5, 6, 7],
            vec![1, 2],
            vec![3, 4, 5],
            vec![6, 7],
            vec![2],
        ]
        .into_iter()
        .collect();
        assert_eq!(supports, want);
    }

    #[test]
    fn hom_identity_disjoint_and_direction() {
        let t = zigzag_triangulation();
        for g in [d(3, 6), d(0, 4), d(2, 7)] {
            assert_eq!(hom_dim(&g, &g, &t), 1, "identity on {g}");
        }
        // Supports {1} and {3} share no crossed diagonal.
        assert_eq!(hom_dim(&d(2, 4), &d(2, 6), &t), 0);
        assert_eq!(hom_dim(&d(2, 6), &d(2, 4), &t), 0);
        assert_eq!(hom_dim(&d(3, 6), &d(3, 7), &t), 1);
        assert_eq!(hom_dim(&d(3, 7), &d(3, 6), &t), 0);
    }

    #[test]
    fn sp_moves_walk_to_the_next_sp_edge() {
        let t = zigzag_triangulation();
        let f = zigzag_alien();
        let moves = sp_moves(&d(2, 7), &t, &f).unwrap();
        assert_eq!(moves.len(), 2);
        // Pivot 2 walks through the frozen region to the boundary.
        assert_eq!(moves[0].pivot, 2);
        assert_eq!(moves[0].chain.len(), 3);
        assert_eq!(moves[0].target(), Edge::from_pair(9, 1, 2));
        // Pivot 7 reaches an sp-diagonal in one step.
        assert_eq!(moves[1].pivot, 7);
        assert_eq!(moves[1].chain.len(), 1);
        assert_eq!(moves[1].target(), Edge::Diag(d(3, 7)));
        assert!(matches!(
            sp_moves(&d(2, 8), &t, &f),
            Err(Error::NotSpDiagonal(2, 8))
        ));
    }

    #[test]
    fn ct_quiver_counts_and_translation() {
        for (t, objects) in [(zigzag_triangulation(), 21), (three_sink_triangulation(), 28)] {
            let aq = ar_quiver_ct(&t);
            assert_eq!(aq.vertices.len(), objects);
            assert_eq!(aq.projectives.len(), t.n);
            assert_eq!(aq.injectives.len(), t.n);
            // The translation is a bijection from non-projectives onto
            // non-injectives.
            assert_eq!(aq.translation.len(), objects - t.n);
            let image: BTreeSet<usize> = aq.translation.values().copied().collect();
            assert_eq!(image.len(), objects - t.n);
            for i in &aq.injectives {
                assert!(!image.contains(i));
            }
        }
    }

    #[test]
    fn ct_meshes_are_dimension_additive() {
        for t in [zigzag_triangulation(), three_sink_triangulation()] {
            let aq = ar_quiver_ct(&t);
            assert!(!aq.meshes.is_empty());
            for mesh in &aq.meshes {
                let sum: usize = mesh.middles.iter().map(|&v| aq.vertices[v].support.len()).sum();
                assert_eq!(
                    aq.vertices[mesh.start].support.len() + aq.vertices[mesh.end].support.len(),
                    sum,
                    "mesh at {}",
                    aq.vertices[mesh.start].diagonal
                );
                assert_eq!(aq.translation[&mesh.end], mesh.start);
            }
        }
    }

    #[test]
    fn sp_quiver_of_zigzag_is_pinned() {
        let t = zigzag_triangulation();
        let aq = ar_quiver_sp(&t, &zigzag_alien()).unwrap();
        assert_eq!(aq.vertices.len(), 10);
        let di = |a, b| aq.index_of(&d(a, b)).unwrap();
        let mut want: Vec<(usize, usize)> = [
            ((2, 6), (2, 7)),
            ((2, 6), (3, 6)),
            ((2, 7), (3, 7)),
            ((3, 6), (3, 7)),
            ((3, 6), (4, 6)),
            ((3, 7), (3, 8)),
            ((3, 7), (4, 7)),
            ((3, 8), (0, 3)),
            ((3, 8), (4, 8)),
            ((4, 6), (4, 7)),
            ((4, 7), (4, 8)),
            ((4, 8), (0, 4)),
            ((0, 3), (0, 4)),
        ]
        .iter()
        .map(|&((a, b), (c, e))| (di(a, b), di(c, e)))
        .collect();
        want.sort();
        assert_eq!(aq.arrows, want);
        assert_eq!(aq.meshes.len(), 4);
        let pairs: Vec<(Diagonal, Diagonal)> = aq
            .translation
            .iter()
            .map(|(&end, &start)| (aq.vertices[end].diagonal, aq.vertices[start].diagonal))
            .collect();
        let want_pairs = vec![
            (d(0, 4), d(3, 8)),
            (d(3, 7), d(2, 6)),
            (d(4, 7), d(3, 6)),
            (d(4, 8), d(3, 7)),
        ];
        assert_eq!(pairs, want_pairs);
        let projs: BTreeSet<Diagonal> =
            aq.projectives.iter().map(|&i| aq.vertices[i].diagonal).collect();
        assert_eq!(
            projs,
            [d(0, 3), d(2, 6), d(2, 7), d(3, 6), d(3, 8), d(4, 6)].into_iter().collect()
        );
        let injs: BTreeSet<Diagonal> =
            aq.injectives.iter().map(|&i| aq.vertices[i].diagonal).collect();
        assert_eq!(
            injs,
            [d(0, 3), d(0, 4), d(2, 7), d(4, 6), d(4, 7), d(4, 8)].into_iter().collect()
        );
    }

    #[test]
    fn sp_quiver_of_three_sink_matches_pinned_shape() {
        let t = three_sink_triangulation();
        let aq = ar_quiver_sp(&t, &three_sink_alien()).unwrap();
        assert_eq!(aq.vertices.len(), 15);
        let by_support: BTreeSet<(Vec<usize>, Vec<usize>)> = aq
            .arrows
            .iter()
            .map(|&(s, e)| (supp_of(&aq, s), supp_of(&aq, e)))
            .collect();
        let want: BTreeSet<(Vec<usize>, Vec<usize>)> = [
            (vec![7], vec![4, 5, 6, 7]),
            (vec![4, 5, 6], vec![1, 2, 3, 4, 5, 6]),
            (vec![4, 5, 6, 7], vec![4, 5, 6]),
            (vec![4, 5, 6, 7], vec![1, 2, 3, 4, 5, 6, 7]),
            (vec![1, 2, 3, 4, 5, 6], vec![1, 2, 3]),
            (vec![1, 2, 3, 4, 5, 6], vec![3, 4, 5, 6]),
            (vec![5], vec![4, 5]),
            (vec![4, 5], vec![4, 5, 6, 7]),
            (vec![4, 5], vec![1, 2, 3, 4, 5]),
            (vec![1, 2, 3, 4, 5, 6, 7], vec![1, 2, 3, 4, 5, 6]),
            (vec![1, 2, 3, 4, 5, 6, 7], vec![3, 4, 5, 6, 7]),
            (vec![1, 2, 3, 4, 5], vec![1, 2, 3, 4, 5, 6, 7]),
            (vec![1, 2, 3, 4, 5], vec![3, 4, 5]),
            (vec![3, 4, 5, 6, 7], vec![3, 4, 5, 6]),
            (vec![3, 4, 5, 6, 7], vec![6, 7]),
            (vec![1, 2], vec![1, 2, 3, 4, 5]),
            (vec![3, 4, 5], vec![3, 4, 5, 6, 7]),
            (vec![2], vec![1, 2]),
        ]
        .into_iter()
        .collect();
        assert_eq!(by_support, want);
        assert_eq!(aq.meshes.len(), 8);
        for mesh in &aq.meshes {
            let sum: usize = mesh.middles.iter().map(|&v| aq.vertices[v].support.len()).sum();
            assert_eq!(
                aq.vertices[mesh.start].support.len() + aq.vertices[mesh.end].support.len(),
                sum
            );
        }
        assert_eq!(aq.projectives.len(), 7);
    }

    #[test]
    fn sp_arrows_refine_ct_arrows() {
        // Every sp-move chain runs through plain diagonals only, so each
        // sp arrow lifts to a chain of full-category arrows.
        let t = three_sink_triangulation();
        let f = three_sink_alien();
        let sp = sp_diagonals(&t, &f).unwrap();
        let set: BTreeSet<Diagonal> = sp.iter().map(|o| o.diagonal).collect();
        for obj in &sp {
            for mv in sp_moves(&obj.diagonal, &t, &f).unwrap() {
                for step in &mv.chain[..mv.chain.len() - 1] {
                    let inner = step.target.as_diagonal().expect("interior edges are diagonals");
                    assert!(!t.contains(&inner) && !set.contains(&inner));
                }
            }
        }
    }

    #[test]
    fn single_square_degenerates_cleanly() {
        let q = Quiver { n: 1, arrows: vec![] };
        let t = triangulation_from_quiver(&q).unwrap();
        let sp = sp_diagonals(&t, &AlienSet::empty()).unwrap();
        assert_eq!(sp.len(), 1);
        assert_eq!(sp[0].support, BTreeSet::from([1]));
        let aq = ar_quiver_sp(&t, &AlienSet::empty()).unwrap();
        assert_eq!(aq.vertices.len(), 1);
        assert!(aq.arrows.is_empty() && aq.meshes.is_empty());
        assert_eq!(aq.projectives, vec![0]);
        assert_eq!(aq.injectives, vec![0]);
        assert_eq!(ar_quiver_ct(&t).vertices.len(), 1);
    }

    #[test]
    fn theta_module_carries_the_support() {
        let t = zigzag_triangulation();
        let m = theta_module(&d(4, 6), &t).unwrap();
        assert_eq!(m.support, BTreeSet::from([1, 2, 3]));
    }

    #[test]
    fn dot_output_lists_vertices_and_translation() {
        let t = zigzag_triangulation();
        let aq = ar_quiver_sp(&t, &zigzag_alien()).unwrap();
        let dot = to_dot(&aq);
        assert!(dot.starts_with("digraph ar_quiver {"));
        assert!(dot.contains("label=\"(2, 6)\\n{3}\""));
        assert!(dot.contains("style=dashed"));
        assert_eq!(dot.matches(" -> ").count(), aq.arrows.len() + aq.translation.len());
    }
}
