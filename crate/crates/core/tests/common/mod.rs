//! Shared oracle for the acceptance tests: morphism dimensions computed
//! by counting arrow paths in an AR-quiver and factoring out the mesh
//! relations. Nothing here looks at crossings, so agreement with the
//! crossing-based count is a genuine cross-check.

use std::collections::BTreeMap;

use num::BigInt;
use spdiag_core::linalg::{Mat, Rat};
use spdiag_core::ArQuiver;

/// Panics when the arrow quiver has a directed cycle; path counting is
/// only meaningful on an acyclic quiver.
pub fn assert_acyclic(aq: &ArQuiver) {
    let k = aq.vertices.len();
    let mut indeg = vec![0usize; k];
    for &(_, j) in &aq.arrows {
        indeg[j] += 1;
    }
    let mut queue: Vec<usize> = (0..k).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0usize;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &(i, j) in &aq.arrows {
            if i == v {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push(j);
                }
            }
        }
    }
    assert_eq!(seen, k, "AR-quiver has a directed cycle");
}

fn adjacency(aq: &ArQuiver) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); aq.vertices.len()];
    for &(i, j) in &aq.arrows {
        adj[i].push(j);
    }
    adj
}

/// All directed paths from `a` to `b`, each listed as its vertex
/// sequence; `a == b` yields the single lazy path `[a]`.
fn paths_between(adj: &[Vec<usize>], a: usize, b: usize) -> Vec<Vec<usize>> {
    fn walk(adj: &[Vec<usize>], b: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *cur.last().expect("path is nonempty");
        if v == b {
            out.push(cur.clone());
            return;
        }
        for &w in &adj[v] {
            cur.push(w);
            walk(adj, b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    walk(adj, b, &mut vec![a], &mut out);
    out
}

/// Morphism dimension from vertex `a` to vertex `b`: the number of arrow
/// paths minus the rank of the mesh relations spread over the path
/// basis. Each mesh identifies its two two-step compositions, and kills
/// the surviving one when the other leg left the quiver.
pub fn hom_via_mesh_relations(aq: &ArQuiver, a: usize, b: usize) -> usize {
    let adj = adjacency(aq);
    let basis = paths_between(&adj, a, b);
    if basis.is_empty() {
        return 0;
    }
    let index: BTreeMap<&[usize], usize> =
        basis.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for mesh in &aq.meshes {
        let prefixes = paths_between(&adj, a, mesh.start);
        if prefixes.is_empty() {
            continue;
        }
        let suffixes = paths_between(&adj, mesh.end, b);
        for pre in &prefixes {
            for suf in &suffixes {
                let mut row = vec![Rat::from_integer(BigInt::from(0)); basis.len()];
                let mut sign = 1i64;
                for &mid in &mesh.middles {
                    let mut full = pre.clone();
                    full.push(mid);
                    full.extend_from_slice(suf);
                    row[index[full.as_slice()]] += Rat::from_integer(BigInt::from(sign));
                    sign = -sign;
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return basis.len();
    }
    basis.len() - Mat::from_rows(rows).rank()
}
