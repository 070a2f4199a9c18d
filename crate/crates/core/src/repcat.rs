//! Representations of alien-extended posets: thin modules and their
//! morphism spaces, general matrix representations with the
//! socle-projectivity test, and the verification bridge that matches the
//! category of sp-diagonals against socle-projective thin modules.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::diagcat::{hom_dim, sp_diagonals, theta_module};
use crate::linalg::Mat;
use crate::polygon::{quiver_from_triangulation, Triangulation};
use crate::poset::{poset_from_quiver, AlienSet, Poset, Quiver};
use crate::{Error, Result};

/// A module with dimension one on its support and zero elsewhere; all
/// structure maps between support elements are identities.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ThinModule {
    pub support: BTreeSet<usize>,
}

/// Socle-projectivity for a thin module: the support must be convex, and
/// every support element must lie under a maximal element of the poset
/// that is again in the support. A convexity gap is reported with the
/// missing middle element.
pub fn thin_is_sp(m: &ThinModule, p: &Poset) -> Result<bool> {
    let s = &m.support;
    for &x in s {
        for &y in s {
            if !p.lt(x, y) {
                continue;
            }
            for &z in p.labels() {
                if p.lt(x, z) && p.lt(z, y) && !s.contains(&z) {
                    return Err(Error::NotConvex(z));
                }
            }
        }
    }
    let maxes = p.maximal_elements();
    Ok(s.iter().all(|&x| maxes.iter().any(|&z| s.contains(&z) && p.leq(x, z))))
}

/// All indecomposable socle-projective thin modules over `p`, where `q`
/// is the type-A quiver underlying the poset: the supports are the
/// convex path intervals passing the socle test, sorted by support.
pub fn enumerate_indecomposable_sp(p: &Poset, q: &Quiver) -> Result<Vec<ThinModule>> {
    let order = q.path_order()?;
    let mut out = Vec::new();
    for i in 0..order.len() {
        for j in i..order.len() {
            let m = ThinModule { support: order[i..=j].iter().copied().collect() };
            if matches!(thin_is_sp(&m, p), Ok(true)) {
                out.push(m);
            }
        }
    }
    out.sort();
    Ok(out)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx] = ry;
        }
    }
}

/// Dimension of the morphism space between two thin modules. A morphism
/// is a scalar on each element of the common support; cover relations
/// inside both supports glue the scalars, while covers leaving one
/// support but not the other force a scalar to vanish.
pub fn hom_dim_modules(m: &ThinModule, n: &ThinModule, p: &Poset) -> usize {
    components(m, n, p).len()
}

/// The supports of a basis of Hom(m, n): one indicator morphism per
/// glued component of the common support that no cover forces to zero.
fn components(m: &ThinModule, n: &ThinModule, p: &Poset) -> Vec<BTreeSet<usize>> {
    let inter: Vec<usize> = m.support.intersection(&n.support).copied().collect();
    if inter.is_empty() {
        return Vec::new();
    }
    let pos: BTreeMap<usize, usize> = inter.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut uf = UnionFind::new(inter.len());
    let mut forced = Vec::new();
    for (x, y) in p.covers() {
        let xm = m.support.contains(&x);
        let xn = n.support.contains(&x);
        let ym = m.support.contains(&y);
        let yn = n.support.contains(&y);
        if xm && xn && ym && yn {
            uf.union(pos[&x], pos[&y]);
        } else if xm && ym && yn && !xn {
            forced.push(y);
        } else if xm && xn && yn && !ym {
            forced.push(x);
        }
    }
    let dead: BTreeSet<usize> = forced.iter().map(|e| uf.find(pos[e])).collect();
    let mut comps: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (i, &x) in inter.iter().enumerate() {
        let r = uf.find(i);
        if !dead.contains(&r) {
            comps.entry(r).or_default().insert(x);
        }
    }
    comps.into_values().collect()
}

/// A basis morphism between thin modules: the identity on `on`, zero
/// elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinHom {
    pub from: ThinModule,
    pub to: ThinModule,
    pub on: BTreeSet<usize>,
}

/// Basis of the morphism space from `m` to `n`.
pub fn hom_basis(m: &ThinModule, n: &ThinModule, p: &Poset) -> Vec<ThinHom> {
    components(m, n, p)
        .into_iter()
        .map(|on| ThinHom { from: m.clone(), to: n.clone(), on })
        .collect()
}

/// Support of the composite `g` after `f`; morphisms of thin modules
/// multiply pointwise, so the composite lives on the overlap.
pub fn compose(g: &ThinHom, f: &ThinHom) -> BTreeSet<usize> {
    assert_eq!(f.to, g.from, "composition needs matching middle module");
    f.on.intersection(&g.on).copied().collect()
}

/// A matrix representation of a poset: a dimension for each element and
/// a structure map for each cover relation, acting on column vectors.
/// Missing cover maps are read as zero.
#[derive(Debug, Clone)]
pub struct GenModule {
    pub dims: BTreeMap<usize, usize>,
    pub maps: BTreeMap<(usize, usize), Mat>,
}

impl GenModule {
    pub fn dim(&self, x: usize) -> usize {
        self.dims.get(&x).copied().unwrap_or(0)
    }

    fn map_for(&self, x: usize, y: usize) -> Mat {
        self.maps.get(&(x, y)).cloned().unwrap_or_else(|| Mat::zero(self.dim(y), self.dim(x)))
    }

    /// Composite structure maps from `x` to everything above it, built
    /// cover by cover in topological order. Two paths that disagree at
    /// some element make the data fail to be a module there.
    fn composites_from(&self, x: usize, p: &Poset, topo: &[usize]) -> Result<BTreeMap<usize, Mat>> {
        let mut comp: BTreeMap<usize, Mat> = BTreeMap::new();
        comp.insert(x, Mat::identity(self.dim(x)));
        let covers = p.covers();
        for &y in topo {
            if y == x || !p.lt(x, y) {
                continue;
            }
            let mut candidate: Option<Mat> = None;
            for &(w, v) in &covers {
                if v != y {
                    continue;
                }
                let Some(below) = comp.get(&w) else {
                    continue;
                };
                let via = self.map_for(w, y).mul(below);
                match &candidate {
                    None => candidate = Some(via),
                    Some(c) if *c == via => {}
                    Some(_) => return Err(Error::NotAModule(y)),
                }
            }
            if let Some(c) = candidate {
                comp.insert(y, c);
            }
        }
        Ok(comp)
    }

    /// Checks that every pair of cover paths with common endpoints
    /// composes to the same matrix.
    pub fn check_commutativity(&self, p: &Poset) -> Result<()> {
        let topo = topological(p);
        for &x in p.labels() {
            self.composites_from(x, p, &topo)?;
        }
        Ok(())
    }

    /// Socle-projectivity: for every element, the joint composite map
    /// into the maximal elements above it must be injective.
    pub fn is_socle_projective(&self, p: &Poset) -> Result<bool> {
        self.check_commutativity(p)?;
        let topo = topological(p);
        let maxes = p.maximal_elements();
        for &x in p.labels() {
            if self.dim(x) == 0 || maxes.contains(&x) {
                continue;
            }
            let comp = self.composites_from(x, p, &topo)?;
            let mut stacked = Mat::zero(0, self.dim(x));
            for &z in &maxes {
                if let Some(m) = comp.get(&z) {
                    stacked = stacked.vstack(m);
                }
            }
            if stacked.nullity() > 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Labels of `p` in an order compatible with the partial order.
fn topological(p: &Poset) -> Vec<usize> {
    let mut order: Vec<usize> = p.labels().to_vec();
    order.sort_by_key(|&x| p.down_cone(x).len());
    order
}

/// The thin module attached to an sp-diagonal over the alien-extended
/// poset: dimension one on the crossing support.
pub fn omega(
    g: &crate::polygon::Diagonal,
    t: &Triangulation,
    f: &AlienSet,
) -> Result<ThinModule> {
    let objs = sp_diagonals(t, f)?;
    let Some(obj) = objs.iter().find(|o| o.diagonal == *g) else {
        return Err(Error::NotSpDiagonal(g.a, g.b));
    };
    let m = ThinModule { support: obj.support.clone() };
    let p = poset_from_quiver(&quiver_from_triangulation(t).with_alien(f))?;
    match thin_is_sp(&m, &p) {
        Ok(true) => Ok(m),
        _ => Err(Error::Internal(format!(
            "support of sp-diagonal {g} is not socle-projective over the extended poset"
        ))),
    }
}

/// Outcome of matching the category of sp-diagonals of `(T, F)` against
/// the socle-projective thin modules of the alien-extended poset.
#[derive(Debug, Clone, Serialize)]
pub struct EquivReport {
    pub sp_count: usize,
    pub module_count: usize,
    pub object_bijection: bool,
    pub hom_matrix_diag: Vec<Vec<usize>>,
    pub hom_matrix_mod: Vec<Vec<usize>>,
    pub composition_agrees: bool,
    pub mismatches: Vec<String>,
}

impl EquivReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares objects by support, all pairwise Hom dimensions, and the
/// zero pattern of all composable pairs of basis morphisms. The diagonal
/// side composes morphisms of crossing-support modules over the
/// triangulation poset; the module side works over the alien-extended
/// poset.
pub fn verify_equivalence(t: &Triangulation, f: &AlienSet) -> Result<EquivReport> {
    let q = quiver_from_triangulation(t);
    let p_ext = poset_from_quiver(&q.with_alien(f))?;
    let p_plain = poset_from_quiver(&q)?;
    let objs = sp_diagonals(t, f)?;
    let modules = enumerate_indecomposable_sp(&p_ext, &q)?;
    let mut mismatches = Vec::new();

    let diag_supports: BTreeSet<&BTreeSet<usize>> = objs.iter().map(|o| &o.support).collect();
    assert_eq!(diag_supports.len(), objs.len(), "sp-diagonal supports repeat");
    let module_supports: BTreeSet<&BTreeSet<usize>> =
        modules.iter().map(|m| &m.support).collect();
    let object_bijection =
        objs.len() == modules.len() && diag_supports == module_supports;
    if !object_bijection {
        for o in &objs {
            if !module_supports.contains(&o.support) {
                mismatches.push(format!("diagonal {} has no module partner", o.diagonal));
            }
        }
        for m in &modules {
            if !diag_supports.contains(&m.support) {
                mismatches.push(format!("module on {:?} has no diagonal partner", m.support));
            }
        }
        return Ok(EquivReport {
            sp_count: objs.len(),
            module_count: modules.len(),
            object_bijection,
            hom_matrix_diag: Vec::new(),
            hom_matrix_mod: Vec::new(),
            composition_agrees: false,
            mismatches,
        });
    }

    let paired: Vec<ThinModule> = objs
        .iter()
        .map(|o| ThinModule { support: o.support.clone() })
        .collect();
    let k = objs.len();
    let mut hom_matrix_diag = vec![vec![0usize; k]; k];
    let mut hom_matrix_mod = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            hom_matrix_diag[i][j] = hom_dim(&objs[i].diagonal, &objs[j].diagonal, t);
            hom_matrix_mod[i][j] = hom_dim_modules(&paired[i], &paired[j], &p_ext);
            if hom_matrix_diag[i][j] != hom_matrix_mod[i][j] {
                mismatches.push(format!(
                    "hom({}, {}): diagonal side {}, module side {}",
                    objs[i].diagonal, objs[j].diagonal, hom_matrix_diag[i][j], hom_matrix_mod[i][j]
                ));
            }
        }
    }

    let thetas: Vec<ThinModule> = objs
        .iter()
        .map(|o| theta_module(&o.diagonal, t))
        .collect::<Result<_>>()?;
    let mut composition_agrees = true;
    for i in 0..k {
        for j in 0..k {
            if hom_matrix_diag[i][j] != 1 || hom_matrix_mod[i][j] != 1 {
                continue;
            }
            let fd = hom_basis(&thetas[i], &thetas[j], &p_plain);
            let fm = hom_basis(&paired[i], &paired[j], &p_ext);
            if fd.len() != 1 || fm.len() != 1 {
                composition_agrees = false;
                mismatches.push(format!(
                    "basis size differs from hom at ({}, {})",
                    objs[i].diagonal, objs[j].diagonal
                ));
                continue;
            }
            for l in 0..k {
                if hom_matrix_diag[j][l] != 1 || hom_matrix_mod[j][l] != 1 {
                    continue;
                }
                let gd = hom_basis(&thetas[j], &thetas[l], &p_plain);
                let gm = hom_basis(&paired[j], &paired[l], &p_ext);
                if gd.len() != 1 || gm.len() != 1 {
                    continue;
                }
                let zero_d = compose(&gd[0], &fd[0]).is_empty();
                let zero_m = compose(&gm[0], &fm[0]).is_empty();
                if zero_d != zero_m {
                    composition_agrees = false;
                    mismatches.push(format!(
                        "composite {} -> {} -> {} vanishes on one side only",
                        objs[i].diagonal, objs[j].diagonal, objs[l].diagonal
                    ));
                }
            }
        }
    }

    Ok(EquivReport {
        sp_count: k,
        module_count: modules.len(),
        object_bijection,
        hom_matrix_diag,
        hom_matrix_mod,
        composition_agrees,
        mismatches,
    })
}
