//! Combinatorics of the regular (n+3)-gon: diagonals and their crossings,
//! triangulations, elementary rotations, fans and peak-diagonals, and the
//! dictionary between triangulations and type-A quivers.
//!
//! Vertices are numbered 0..n+2 counter-clockwise; "counter-clockwise"
//! always means increasing vertex index. Diagonals of a triangulation are
//! labeled 1..n and double as the vertices of its quiver.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::Deserializer;
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::poset::Quiver;
use crate::{Error, Result};

/// Chord joining two non-adjacent polygon vertices, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagonal {
    pub a: usize,
    pub b: usize,
}

impl Diagonal {
    pub fn new(x: usize, y: usize) -> Self {
        assert_ne!(x, y, "degenerate diagonal");
        Diagonal { a: x.min(y), b: x.max(y) }
    }

    /// True when both endpoints exist in the m-gon and are non-adjacent.
    pub fn is_valid(&self, m: usize) -> bool {
        self.b < m && self.b - self.a >= 2 && !(self.a == 0 && self.b == m - 1)
    }

    pub fn has_endpoint(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    pub fn other_endpoint(&self, v: usize) -> usize {
        debug_assert!(self.has_endpoint(v));
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Side of the polygon: a pair of cyclically adjacent vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryEdge {
    pub a: usize,
    pub b: usize,
}

impl fmt::Display for BoundaryEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Any vertex pair: a diagonal or a boundary edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Edge {
    Diag(Diagonal),
    Boundary(BoundaryEdge),
}

impl Edge {
    pub fn from_pair(m: usize, x: usize, y: usize) -> Self {
        assert!(x != y && x < m && y < m, "bad edge ({x}, {y}) in {m}-gon");
        let (a, b) = (x.min(y), x.max(y));
        if b - a == 1 || (a == 0 && b == m - 1) {
            Edge::Boundary(BoundaryEdge { a, b })
        } else {
            Edge::Diag(Diagonal { a, b })
        }
    }

    pub fn as_diagonal(&self) -> Option<Diagonal> {
        match self {
            Edge::Diag(d) => Some(*d),
            Edge::Boundary(_) => None,
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edge::Diag(d) => d.fmt(f),
            Edge::Boundary(e) => e.fmt(f),
        }
    }
}

/// True when the open segments intersect, i.e. the endpoint pairs strictly
/// interleave on the circle. Diagonals sharing an endpoint do not cross.
pub fn crosses(d1: &Diagonal, d2: &Diagonal) -> bool {
    if d1.has_endpoint(d2.a) || d1.has_endpoint(d2.b) {
        return false;
    }
    let inside = |x: usize| d1.a < x && x < d1.b;
    inside(d2.a) != inside(d2.b)
}

/// Shifts both endpoints by one vertex: `+1` counter-clockwise (r+),
/// `-1` clockwise (r-). Rotation preserves validity.
pub fn rotate(d: &Diagonal, direction: i32, m: usize) -> Diagonal {
    debug_assert!(direction == 1 || direction == -1);
    let shift = |v: usize| (v + m).wrapping_add_signed(direction as isize) % m;
    Diagonal::new(shift(d.a), shift(d.b))
}

/// All diagonals of the m-gon in lexicographic order.
pub fn all_diagonals(m: usize) -> Vec<Diagonal> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 2..m {
            let d = Diagonal { a, b };
            if d.is_valid(m) {
                out.push(d);
            }
        }
    }
    out
}

/// True iff `diags` is a maximal pairwise non-crossing set: n distinct
/// valid diagonals with no crossing pair.
pub fn is_triangulation(diags: &[Diagonal], n: usize) -> bool {
    let m = n + 3;
    let set: BTreeSet<&Diagonal> = diags.iter().collect();
    if set.len() != n || diags.len() != n {
        return false;
    }
    if !diags.iter().all(|d| d.is_valid(m)) {
        return false;
    }
    diags
        .iter()
        .enumerate()
        .all(|(i, d)| diags[i + 1..].iter().all(|e| !crosses(d, e)))
}

/// Triangulation of the (n+3)-gon. `diagonals[i]` is the diagonal labeled
/// `i + 1`, matching the quiver vertex of the same number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub n: usize,
    pub diagonals: Vec<Diagonal>,
}

impl Triangulation {
    pub fn new(n: usize, diagonals: Vec<Diagonal>) -> Result<Self> {
        if !is_triangulation(&diagonals, n) {
            return Err(Error::Input(format!(
                "not a triangulation of the {}-gon",
                n + 3
            )));
        }
        Ok(Triangulation { n, diagonals })
    }

    pub fn m(&self) -> usize {
        self.n + 3
    }

    pub fn contains(&self, d: &Diagonal) -> bool {
        self.diagonals.contains(d)
    }

    /// 1-based label of a member diagonal.
    pub fn label_of(&self, d: &Diagonal) -> Option<usize> {
        self.diagonals.iter().position(|t| t == d).map(|i| i + 1)
    }

    pub fn diagonal_of_label(&self, label: usize) -> Diagonal {
        self.diagonals[label - 1]
    }

    /// Vertex triples bounding the n+1 triangles, ascending.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let m = self.m();
        let has = |x: usize, y: usize| {
            let (a, b) = (x.min(y), x.max(y));
            b - a == 1 || (a == 0 && b == m - 1) || self.contains(&Diagonal { a, b })
        };
        let mut out = Vec::new();
        for u in 0..m {
            for v in u + 1..m {
                if !has(u, v) {
                    continue;
                }
                for w in v + 1..m {
                    if has(v, w) && has(u, w) {
                        out.push([u, v, w]);
                    }
                }
            }
        }
        debug_assert_eq!(out.len(), self.n + 1);
        out
    }
}

impl Serialize for Triangulation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut sorted: Vec<(usize, usize)> = self.diagonals.iter().map(|d| (d.a, d.b)).collect();
        sorted.sort();
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("diagonals", &sorted)?;
        map.end()
    }
}

impl Serialize for Diagonal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (self.a, self.b).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Diagonal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (a, b) = <(usize, usize)>::deserialize(deserializer)?;
        if a == b {
            return Err(serde::de::Error::custom("degenerate diagonal"));
        }
        Ok(Diagonal::new(a, b))
    }
}

/// Maximal set of at least two triangulation diagonals through one vertex.
/// `members` holds labels ordered by clockwise sweep about the pivot, so
/// the peak-diagonal sits last.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fan {
    pub pivot: usize,
    pub members: Vec<usize>,
}

/// All fans of `t`, ordered by pivot vertex.
pub fn fans(t: &Triangulation) -> Vec<Fan> {
    let m = t.m();
    let mut out = Vec::new();
    for pivot in 0..m {
        let mut members: Vec<usize> = (1..=t.n)
            .filter(|&l| t.diagonal_of_label(l).has_endpoint(pivot))
            .collect();
        if members.len() < 2 {
            continue;
        }
        members.sort_by_key(|&l| {
            let w = t.diagonal_of_label(l).other_endpoint(pivot);
            (pivot + m - w) % m
        });
        out.push(Fan { pivot, members });
    }
    out
}

/// The fan member reachable in the quiver from every other member;
/// geometrically the last diagonal of the clockwise sweep.
pub fn peak_diagonal(f: &Fan, q: &Quiver) -> usize {
    let geometric = *f.members.last().expect("fan has at least two members");
    for &x in &f.members {
        assert!(
            q.has_path(x, geometric),
            "fan member {x} cannot reach geometric peak {geometric}"
        );
    }
    geometric
}

/// The two pivoting elementary moves out of `g`: for each endpoint kept
/// fixed, the other endpoint advances one vertex counter-clockwise.
pub fn elementary_moves(g: &Diagonal, m: usize) -> Vec<(usize, Edge)> {
    vec![
        (g.a, Edge::from_pair(m, g.a, (g.b + 1) % m)),
        (g.b, Edge::from_pair(m, g.b, (g.a + 1) % m)),
    ]
}

/// Quiver of a triangulation: one vertex per diagonal, and an arrow x -> y
/// whenever the diagonals labeled x and y bound a common triangle with y
/// counter-clockwise from x along its boundary.
pub fn quiver_from_triangulation(t: &Triangulation) -> Quiver {
    let label = |x: usize, y: usize| {
        Edge::from_pair(t.m(), x, y)
            .as_diagonal()
            .and_then(|d| t.label_of(&d))
    };
    let mut arrows = Vec::new();
    for [u, v, w] in t.triangles() {
        let sides = [(u, v), (v, w), (w, u)];
        for i in 0..3 {
            let (x1, y1) = sides[i];
            let (x2, y2) = sides[(i + 1) % 3];
            if let (Some(s), Some(tgt)) = (label(x1, y1), label(x2, y2)) {
                arrows.push((s, tgt));
            }
        }
    }
    arrows.sort();
    Quiver { n: t.n, arrows }
}

/// Deterministic snake construction of a triangulation whose quiver is
/// `q`, with diagonal labels matching quiver vertices. The first diagonal
/// sits at vertices (3, 5); walking the path of `q`, a forward arrow pulls
/// the lower endpoint back one vertex and a backward arrow pushes the
/// upper endpoint forward one. The round trip through
/// `quiver_from_triangulation` is checked before returning.
pub fn triangulation_from_quiver(q: &Quiver) -> Result<Triangulation> {
    let order = q.path_order()?;
    let n = q.n;
    let m = n + 3;
    let norm = |x: i64| -> usize { x.rem_euclid(m as i64) as usize };
    let mut tau: Vec<Option<Diagonal>> = vec![None; n + 1];
    let (mut a, mut b) = (3i64, 5i64);
    tau[order[0]] = Some(Diagonal::new(norm(a), norm(b)));
    for win in order.windows(2) {
        let (u, v) = (win[0], win[1]);
        if q.has_arrow(u, v) {
            a -= 1;
        } else {
            b += 1;
        }
        tau[v] = Some(Diagonal::new(norm(a), norm(b)));
    }
    let diagonals: Vec<Diagonal> = tau.into_iter().skip(1).map(|d| d.unwrap()).collect();
    let t = Triangulation::new(n, diagonals)
        .map_err(|_| Error::Internal("snake construction left the triangulation class".into()))?;
    let q2 = quiver_from_triangulation(&t);
    let set = |q: &Quiver| q.arrows.iter().copied().collect::<BTreeSet<_>>();
    if set(q) != set(&q2) {
        return Err(Error::Internal(format!(
            "snake round trip changed the quiver: {:?} vs {:?}",
            q.arrows, q2.arrows
        )));
    }
    Ok(t)
}
