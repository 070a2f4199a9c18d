//! Cluster algebra of a type-A quiver: seed mutation, the finite list of
//! cluster variables with their denominator vectors and diagonals,
//! projective-variable identities, and certified membership in the
//! subalgebra spanned by the sp-diagonal variables.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use itertools::Itertools;
use num::BigInt;
use serde::Serialize;

use crate::diagcat::{sp_diagonals, support};
use crate::laurent::LaurentPoly;
use crate::linalg::{Mat, Rat};
use crate::polygon::{all_diagonals, rotate, triangulation_from_quiver, Diagonal};
use crate::poset::{poset_from_quiver, AlienSet, Quiver};
use crate::{Error, Result};

/// A labeled seed: one Laurent polynomial per vertex and the signed
/// adjacency matrix of the exchange quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    pub variables: Vec<LaurentPoly>,
    pub b: Vec<Vec<i32>>,
}

/// The initial seed of `q`: variables are the coordinates themselves and
/// `b[i][j]` counts arrows from `i + 1` to `j + 1` minus the reverse.
pub fn seed_from_quiver(q: &Quiver) -> Seed {
    let n = q.n;
    let variables = (1..=n).map(|i| LaurentPoly::var(n, i)).collect();
    let mut b = vec![vec![0i32; n]; n];
    for &(s, t) in &q.arrows {
        b[s - 1][t - 1] += 1;
        b[t - 1][s - 1] -= 1;
    }
    Seed { variables, b }
}

/// Mutation at vertex `k` (1-indexed): the variable at `k` is replaced by
/// the exchange binomial divided by it, and the matrix follows the usual
/// sign rule. Mutating twice at the same vertex returns the seed.
pub fn mutate(seed: &Seed, k: usize) -> Result<Seed> {
    let n = seed.b.len();
    assert!(1 <= k && k <= n, "mutation vertex out of range");
    let kk = k - 1;
    let nv = seed.variables[kk].nvars;
    let mut p_in = LaurentPoly::one(nv);
    let mut p_out = LaurentPoly::one(nv);
    for j in 0..n {
        if seed.b[j][kk] > 0 {
            p_in = p_in.mul(&seed.variables[j].pow(seed.b[j][kk] as u32));
        }
        if seed.b[kk][j] > 0 {
            p_out = p_out.mul(&seed.variables[j].pow(seed.b[kk][j] as u32));
        }
    }
    let new_var = p_in.add(&p_out).div_exact(&seed.variables[kk])?;
    let mut b = vec![vec![0i32; n]; n];
    for i in 0..n {
        for j in 0..n {
            b[i][j] = if i == kk || j == kk {
                -seed.b[i][j]
            } else {
                seed.b[i][j]
                    + (seed.b[i][kk].abs() * seed.b[kk][j]
                        + seed.b[i][kk] * seed.b[kk][j].abs())
                        / 2
            };
        }
    }
    let mut variables = seed.variables.clone();
    variables[kk] = new_var;
    Ok(Seed { variables, b })
}

/// One cluster variable: its denominator vector, the matching polygon
/// diagonal, and the number of Laurent terms.
#[derive(Debug, Clone)]
pub struct ClusterVariableEntry {
    pub variable: LaurentPoly,
    pub d_vector: Vec<i32>,
    pub diagonal: Diagonal,
    pub num_terms: usize,
}

/// Every cluster variable of the algebra, sorted by denominator vector,
/// together with the number of distinct clusters.
#[derive(Debug, Clone)]
pub struct ClusterVariableTable {
    pub n: usize,
    pub entries: Vec<ClusterVariableEntry>,
    pub cluster_count: usize,
}

impl ClusterVariableTable {
    pub fn variable_of_diagonal(&self, d: &Diagonal) -> Option<&LaurentPoly> {
        self.entries.iter().find(|e| e.diagonal == *d).map(|e| &e.variable)
    }
}

/// Breadth-first search of the exchange graph. Initial variables match
/// the triangulation diagonals; every other variable matches the unique
/// diagonal whose crossing pattern is the denominator vector.
pub fn all_cluster_variables(q: &Quiver) -> Result<ClusterVariableTable> {
    let t = triangulation_from_quiver(q)?;
    let n = q.n;
    let start = seed_from_quiver(q);
    let key = |s: &Seed| {
        let mut vs = s.variables.clone();
        vs.sort();
        vs
    };
    let mut seen: BTreeSet<Vec<LaurentPoly>> = BTreeSet::from([key(&start)]);
    let mut vars: BTreeSet<LaurentPoly> = start.variables.iter().cloned().collect();
    let mut queue = VecDeque::from([start]);
    while let Some(seed) = queue.pop_front() {
        for k in 1..=n {
            let next = mutate(&seed, k)?;
            vars.insert(next.variables[k - 1].clone());
            if seen.insert(key(&next)) {
                queue.push_back(next);
            }
        }
    }

    let mut by_support: BTreeMap<Vec<i32>, Diagonal> = BTreeMap::new();
    for g in all_diagonals(t.m()) {
        if t.contains(&g) {
            continue;
        }
        let s = support(&g, &t)?;
        let pattern: Vec<i32> = (1..=n).map(|x| i32::from(s.contains(&x))).collect();
        if by_support.insert(pattern, g).is_some() {
            return Err(Error::Internal(format!("two diagonals cross like {g}")));
        }
    }
    let mut entries = Vec::new();
    for variable in vars {
        let d_vector = variable.d_vector();
        let negatives: Vec<usize> =
            (0..n).filter(|&i| d_vector[i] < 0).collect();
        let diagonal = match negatives.as_slice() {
            [i] if d_vector[*i] == -1 && d_vector.iter().sum::<i32>() == -1 => {
                t.diagonal_of_label(i + 1)
            }
            [] => *by_support.get(&d_vector).ok_or_else(|| {
                Error::Internal(format!("denominator {d_vector:?} crosses no diagonal"))
            })?,
            _ => {
                return Err(Error::Internal(format!(
                    "denominator {d_vector:?} matches no diagonal"
                )))
            }
        };
        let num_terms = variable.num_terms();
        entries.push(ClusterVariableEntry { variable, d_vector, diagonal, num_terms });
    }
    entries.sort_by(|x, y| x.d_vector.cmp(&y.d_vector));
    let distinct: BTreeSet<Diagonal> = entries.iter().map(|e| e.diagonal).collect();
    if distinct.len() != entries.len() {
        return Err(Error::Internal("two cluster variables share a diagonal".into()));
    }
    Ok(ClusterVariableTable { n, entries, cluster_count: seen.len() })
}

/// The cluster variables of the indecomposable projectives, indexed by
/// vertex. Each is found by its denominator vector (the up-cone of the
/// vertex), cross-checked against the rotated triangulation diagonal,
/// and then certified by the exchange-style identities: for every vertex
/// `t`, `x_{P_t} x_t = 1 + p_t^- prod x_{P_r}` over the arrows `t -> r`,
/// and for every leaf source `w -> t`, `x_w x_{P_w} = 1 + x_{P_t}`.
pub fn projective_variables(q: &Quiver) -> Result<Vec<LaurentPoly>> {
    let table = all_cluster_variables(q)?;
    let p = poset_from_quiver(q)?;
    let t = triangulation_from_quiver(q)?;
    let n = q.n;
    let mut proj = Vec::with_capacity(n);
    for i in 1..=n {
        let up = p.up_cone(i);
        let want: Vec<i32> = (1..=n).map(|x| i32::from(up.contains(&x))).collect();
        let entry = table
            .entries
            .iter()
            .find(|e| e.d_vector == want)
            .ok_or_else(|| {
                Error::Internal(format!("no cluster variable for the projective at {i}"))
            })?;
        let expected = rotate(&t.diagonal_of_label(i), 1, t.m());
        if entry.diagonal != expected {
            return Err(Error::Internal(format!(
                "projective variable at {i} sits on {} instead of {expected}",
                entry.diagonal
            )));
        }
        proj.push(entry.variable.clone());
    }
    for v in 1..=n {
        let lhs = proj[v - 1].mul(&LaurentPoly::var(n, v));
        let mut rhs = LaurentPoly::one(n);
        for &(s, tgt) in &q.arrows {
            if tgt == v {
                rhs = rhs.mul(&LaurentPoly::var(n, s));
            }
            if s == v {
                rhs = rhs.mul(&proj[tgt - 1]);
            }
        }
        if lhs != LaurentPoly::one(n).add(&rhs) {
            return Err(Error::IdentityFailed(v));
        }
    }
    for w in q.sources() {
        let out: Vec<usize> =
            q.arrows.iter().filter(|&&(s, _)| s == w).map(|&(_, tgt)| tgt).collect();
        let [tgt] = out.as_slice() else {
            continue;
        };
        let lhs = LaurentPoly::var(n, w).mul(&proj[w - 1]);
        let rhs = LaurentPoly::one(n).add(&proj[tgt - 1]);
        if lhs != rhs {
            return Err(Error::IdentityFailed(w));
        }
    }
    Ok(proj)
}

/// The cluster variables of the sp-diagonals of `(T, F)` followed by the
/// initial variables.
pub fn subalgebra_generators(q: &Quiver, f: &AlienSet) -> Result<Vec<LaurentPoly>> {
    let t = triangulation_from_quiver(q)?;
    let table = all_cluster_variables(q)?;
    let mut gens = Vec::new();
    for obj in sp_diagonals(&t, f)? {
        let var = table.variable_of_diagonal(&obj.diagonal).ok_or_else(|| {
            Error::Internal(format!("no cluster variable on sp-diagonal {}", obj.diagonal))
        })?;
        gens.push(var.clone());
    }
    for i in 1..=q.n {
        gens.push(LaurentPoly::var(q.n, i));
    }
    Ok(gens)
}

/// One product of generators with its rational coefficient.
#[derive(Debug, Clone, Serialize)]
pub struct CertTerm {
    pub factors: Vec<usize>,
    pub coefficient: String,
}

/// An explicit expression of a target as a combination of generator
/// products of bounded length.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub degree: usize,
    pub terms: Vec<CertTerm>,
}

/// Searches for a rational combination of generator products expressing
/// `target`, raising the product length one step at a time up to
/// `bound`. Products are kept even when their denominators exceed the
/// target's, since the combination may cancel them; `None` means no
/// certificate was found within the bound.
pub fn membership_check(
    target: &LaurentPoly,
    gens: &[LaurentPoly],
    bound: usize,
) -> Option<Certificate> {
    let nv = target.nvars;
    let mut cols: Vec<(Vec<usize>, LaurentPoly)> = Vec::new();
    let mut seen: BTreeSet<LaurentPoly> = BTreeSet::new();
    for degree in 1..=bound {
        let sizes = if degree == 1 { vec![0, 1] } else { vec![degree] };
        for size in sizes {
            for combo in (0..gens.len()).combinations_with_replacement(size) {
                let prod =
                    combo.iter().fold(LaurentPoly::one(nv), |acc, &i| acc.mul(&gens[i]));
                if prod.is_zero() {
                    continue;
                }
                if seen.insert(prod.clone()) {
                    cols.push((combo, prod));
                }
            }
        }
        let mut exps: BTreeSet<Vec<i32>> = target.terms.keys().cloned().collect();
        for (_, p) in &cols {
            exps.extend(p.terms.keys().cloned());
        }
        let rows: Vec<Vec<i32>> = exps.into_iter().collect();
        let rindex: BTreeMap<&Vec<i32>, usize> =
            rows.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut a = Mat::zero(rows.len(), cols.len());
        for (j, (_, p)) in cols.iter().enumerate() {
            for (e, c) in &p.terms {
                a.a[rindex[e]][j] = Rat::from_integer(BigInt::from(*c));
            }
        }
        let b: Vec<Rat> = rows
            .iter()
            .map(|e| Rat::from_integer(BigInt::from(target.terms.get(e).copied().unwrap_or(0))))
            .collect();
        if let Some(sol) = a.solve(&b) {
            let terms: Vec<CertTerm> = sol
                .iter()
                .zip(&cols)
                .filter(|(c, _)| !num::Zero::is_zero(*c))
                .map(|(c, (combo, _))| CertTerm {
                    factors: combo.clone(),
                    coefficient: c.to_string(),
                })
                .collect();
            return Some(Certificate { degree, terms });
        }
    }
    None
}

/// Certification that each one-step mutation of the initial seed lands
/// in the subalgebra generated by the sp-diagonal variables and the
/// initial cluster, with no alien arrows.
#[derive(Debug, Clone, Serialize)]
pub struct GenerationReport {
    pub generator_count: usize,
    pub certificates: Vec<Option<Certificate>>,
}

impl GenerationReport {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(Option::is_some)
    }
}

/// Runs [`membership_check`] on every first mutation `x_k'` of the
/// initial seed against the sp-variable generators.
pub fn verify_generation(q: &Quiver, bound: usize) -> Result<GenerationReport> {
    let gens = subalgebra_generators(q, &AlienSet::empty())?;
    let seed = seed_from_quiver(q);
    let mut certificates = Vec::new();
    for k in 1..=q.n {
        let target = mutate(&seed, k)?.variables[k - 1].clone();
        certificates.push(membership_check(&target, &gens, bound));
    }
    Ok(GenerationReport { generator_count: gens.len(), certificates })
}
