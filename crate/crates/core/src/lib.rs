//! Combinatorics of diagonals in triangulated convex polygons, posets of
//! type A with alien sets, socle-projective modules over incidence
//! algebras, and exact cluster-algebra computations for type A.
//!
//! The crate is organized around one dictionary: a triangulation `T` of an
//! (n+3)-gon gives a type-A quiver `Q_T`; an alien set `F` on that quiver
//! gives a poset `P` whose socle-projective module category is equivalent
//! to the category of sp-diagonals of `(T, F)`; and the cluster variables
//! of `Q_T` attached to sp-diagonals generate a distinguished subalgebra
//! of the cluster algebra. Every module checks its own side of that
//! dictionary and `repcat::verify_equivalence` checks the bridge.

pub mod cluster;
pub mod diagcat;
pub mod generate;
pub mod laurent;
pub mod linalg;
pub mod polygon;
pub mod poset;
pub mod repcat;

pub use diagcat::{ArQuiver, DiagObject};
pub use polygon::{BoundaryEdge, Diagonal, Edge, Triangulation};
pub use poset::{AlienSet, Poset, Quiver};
pub use repcat::ThinModule;

/// Violated clause of the alien-set definition, with the offending arrow
/// where one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlienViolation {
    /// (a) the arrow's endpoints do not lie in a common sink support.
    OutsideSinkSupport { arrow: (usize, usize) },
    /// (b) the target is a source of the quiver but not an extremal vertex.
    TargetNonExtremalSource { arrow: (usize, usize) },
    /// (c) the arrow is not the unique path between its endpoints.
    NonUniquePath { arrow: (usize, usize) },
    /// (d) the extended quiver has a directed cycle.
    Cyclic,
}

impl std::fmt::Display for AlienViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlienViolation::OutsideSinkSupport { arrow } => write!(
                f,
                "clause a: endpoints of {}->{} lie in no common sink support",
                arrow.0, arrow.1
            ),
            AlienViolation::TargetNonExtremalSource { arrow } => write!(
                f,
                "clause b: target of {}->{} is a non-extremal source",
                arrow.0, arrow.1
            ),
            AlienViolation::NonUniquePath { arrow } => write!(
                f,
                "clause c: {}->{} is not the unique path between its endpoints",
                arrow.0, arrow.1
            ),
            AlienViolation::Cyclic => write!(f, "clause d: extended quiver is cyclic"),
        }
    }
}

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("quiver is not of type A: {0}")]
    NotTypeAQuiver(String),
    #[error("quiver has a directed cycle")]
    CyclicQuiver,
    #[error("vertex {0} is not a sink")]
    NotSink(usize),
    #[error("poset is not of type A: {0}")]
    NotTypeA(String),
    #[error("invalid alien set: {0}")]
    AlienSet(AlienViolation),
    #[error("diagonal ({0}, {1}) belongs to the triangulation")]
    DiagonalInT(usize, usize),
    #[error("diagonal ({0}, {1}) is not an sp-diagonal")]
    NotSpDiagonal(usize, usize),
    #[error("support is not convex: {0} lies between support elements")]
    NotConvex(usize),
    #[error("not a module: maps do not commute at element {0}")]
    NotAModule(usize),
    #[error("inexact Laurent division")]
    InexactDivision,
    #[error("generation identity failed at vertex {0}")]
    IdentityFailed(usize),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shared test instances: the zigzag quiver (one sink) on six vertices
/// and the three-sink quiver on seven, each with its alien set and the
/// matching triangulation.
#[cfg(test)]
pub(crate) mod fixtures {
    use crate::polygon::triangulation_from_quiver;
    use crate::{AlienSet, Quiver, Triangulation};

    pub fn zigzag_quiver() -> Quiver {
        Quiver { n: 6, arrows: vec![(1, 2), (2, 3), (4, 3), (5, 4), (6, 5)] }
    }

    pub fn zigzag_alien() -> AlienSet {
        AlienSet::new(vec![(5, 2)])
    }

    pub fn zigzag_triangulation() -> Triangulation {
        triangulation_from_quiver(&zigzag_quiver()).unwrap()
    }

    pub fn three_sink_quiver() -> Quiver {
        Quiver { n: 7, arrows: vec![(1, 2), (3, 2), (3, 4), (4, 5), (6, 5), (6, 7)] }
    }

    pub fn three_sink_alien() -> AlienSet {
        AlienSet::new(vec![(3, 1), (6, 4)])
    }

    pub fn three_sink_triangulation() -> Triangulation {
        triangulation_from_quiver(&three_sink_quiver()).unwrap()
    }
}
