//! Veronese subalgebras and the lifting of their derivations and
//! automorphisms to `d`-graded maps of the ambient algebra.
//!
//! Both ambient algebras are handled as polynomial rings with weighted
//! indeterminates: `K[x1..xn]` with every weight 1, and the free Poisson
//! algebra as the polynomial ring on its Lyndon basis with weight = word
//! length. The Veronese subalgebra of degree `d` is spanned by the monomials
//! whose weighted degree is divisible by `d`.

mod automorphism;
mod context;
mod derivation;
mod generators;
mod lnd;
mod maps;
mod outcome;

pub use automorphism::{lift_automorphism, verify_quotient_kernel, KernelReport, LiftOptions, SignConvention};
pub use context::{Context, ContextKind};
pub use derivation::lift_derivation;
pub use generators::{GeneratorSet, Relation};
pub use lnd::{check_locally_nilpotent, LndReport, LndVerdict, DEFAULT_LND_CAP};
pub use maps::{
    check_relations, restrict_automorphism, restrict_automorphism_with_inverse, restrict_derivation,
    VeroneseAutomorphism, VeroneseDerivation, VeroneseMap,
};
pub use outcome::{
    ImageSource, Lift, LiftKind, LiftOutcome, Normalization, Obstruction, ObstructionReason,
    Verification,
};

use thiserror::Error;

use crate::lie::LieError;
use crate::poisson::PoissonError;
use crate::poly::PolyError;

/// Failures that are not mathematical obstructions: malformed input or
/// requests beyond the configured degree bound.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VeroneseError {
    #[error("Veronese degree must be at least 2, got {0}")]
    BadDegree(u32),
    #[error("need at least one variable")]
    NoVariables,
    #[error("degree bound {bound} is smaller than the Veronese degree {d}")]
    BoundTooSmall { bound: usize, d: u32 },
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("image of {generator} is not in the Veronese subalgebra: {image}")]
    ImageOutsideVeronese { generator: String, image: String },
    #[error("image of {variable} is not in graded component {residue}: {image}")]
    NotGraded {
        variable: String,
        residue: u32,
        image: String,
    },
    #[error("{0} is not a product of Veronese generators within the degree bound")]
    NotDecomposable(String),
    #[error("lift of the {which} map failed: {reason}")]
    LiftFailed { which: String, reason: String },
    #[error("no inverse images supplied")]
    MissingInverse,
    #[error("composite of the lifts is not a scalar map: {0}")]
    CompositeNotScalar(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Lie(#[from] LieError),
}
