//! Numerical geometry and dynamics of discrete subgroups of PSL(3, C)
//! acting on the complex projective plane.
//!
//! The crate classifies single projective transformations into the
//! elliptic / parabolic / loxodromic taxonomy, builds the explicit group
//! families whose limit sets are known (torus, Kodaira, Inoue, diagonal,
//! suspensions, hyperbolic toral, ...), approximates Kulkarni and Myrberg
//! limit sets through effective lines and orbit accumulation, and decides
//! whether a group is elementary of the first kind, of the second kind,
//! or non-elementary.

pub mod element;
pub mod families;
pub mod io;
pub mod limit_set;
pub mod moebius;
pub mod projective;
pub mod pseudo;
pub mod render;
pub mod verify;

pub use element::{classify, element_limit_set, ElementClass, ElementKind, ElementLimitSet};
pub use families::GroupSpec;
pub use limit_set::{ElementaryKind, ElementaryVerdict, LambdaEstimate, LimitSetApprox};
pub use moebius::{Mobius, MobiusClass, P1Point};
pub use projective::{KernelDescriptor, Mat3, ProjLine, ProjMap, ProjPoint, PseudoProjMap};

use thiserror::Error;

/// Chordal dedup tolerance for points and lines.
pub const DEDUP_TOL: f64 = 1e-6;
/// Sup-norm tolerance for canonicalized matrix equality.
pub const MAT_TOL: f64 = 1e-9;
/// Relative singular-value threshold for numerical rank.
pub const RANK_TOL: f64 = 1e-9;
/// Incidence and fixed-point residual tolerance.
pub const INCIDENCE_TOL: f64 = 1e-9;
/// Default cutoff when probing for finite order in PSL(3, C).
pub const ORDER_CUTOFF: usize = 200;
/// Line counts at or above this are reported as the infinity class.
pub const LAMBDA_INFINITY_CUTOFF: usize = 50;

#[derive(Debug, Error)]
pub enum Error {
    #[error("points coincide up to dedup tolerance")]
    CoincidentPoints,
    #[error("lines coincide up to dedup tolerance")]
    CoincidentLines,
    #[error("duplicate lines in input")]
    DuplicateLines,
    #[error("zero vector cannot represent a projective object")]
    ZeroVector,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("element is the identity")]
    IsIdentity,
    #[error("element could not be classified")]
    UnclassifiedElement,
    #[error("lattice basis is not discrete")]
    NonDiscreteLattice,
    #[error("mu must take unit-modulus values")]
    NonUnitaryMu,
    #[error("gamma_1 degenerates for z = 0")]
    DegenerateGamma1,
    #[error("group fails the small-word discreteness heuristic")]
    NonDiscreteHeuristic,
    #[error("parameter must be non-unitary")]
    UnitaryParameter,
    #[error("alpha must be non-unitary")]
    UnitaryAlpha,
    #[error("matrix is not a hyperbolic toral automorphism")]
    NotHyperbolic,
    #[error("matrix is not in SL(2, Z)")]
    NotUnimodular,
    #[error("sigma must be non-elementary")]
    ElementarySigma,
    #[error("mu must diverge to 0 or infinity along the lattice")]
    MuConditionViolated,
    #[error("k must be at least 1")]
    InvalidK,
    #[error("spec was not built by the hyperbolic toral constructor")]
    NotToralSpec,
    #[error("point is not fixed by every generator")]
    NotGloballyFixed,
    #[error("fixed point lies on the horizon line")]
    PointOnHorizon,
    #[error("unknown affine chart")]
    BadChart,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
