use std::fmt;

use crate::poly::{Polynomial, Scalar};

use super::Context;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObstructionReason {
    /// Exact division failed: the map has no polynomial lift.
    NotDivisible,
    /// The factor `v` in `alpha(x1^d) = v f1^d` is not a scalar.
    UnitNotConstant,
    /// `v` has no rational `d`-th root.
    NoRationalDthRoot,
    /// The map violates a relation among generators, or the bracket law.
    RelationInconsistent,
    /// Two generators share an image, or one maps to zero.
    NotInjectiveOnGenerators,
    /// A recovered image is not in the required graded component.
    NotGraded,
    /// One variable: the lifting statement does not hold.
    SingleVariable,
}

impl ObstructionReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObstructionReason::NotDivisible => "NotDivisible",
            ObstructionReason::UnitNotConstant => "UnitNotConstant",
            ObstructionReason::NoRationalDthRoot => "NoRationalDthRoot",
            ObstructionReason::RelationInconsistent => "RelationInconsistent",
            ObstructionReason::NotInjectiveOnGenerators => "NotInjectiveOnGenerators",
            ObstructionReason::NotGraded => "NotGraded",
            ObstructionReason::SingleVariable => "SingleVariable",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        use ObstructionReason::*;
        [
            NotDivisible,
            UnitNotConstant,
            NoRationalDthRoot,
            RelationInconsistent,
            NotInjectiveOnGenerators,
            NotGraded,
            SingleVariable,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
    }
}

impl fmt::Display for ObstructionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Certificate that no lift exists over the rationals (or that the input
/// is not a derivation/automorphism of the Veronese subalgebra).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub reason: ObstructionReason,
    pub message: String,
    /// Named witness polynomials, e.g. the failed numerator and denominator.
    pub witness: Vec<(String, Polynomial)>,
    pub scalar: Option<Scalar>,
}

impl Obstruction {
    pub fn new(reason: ObstructionReason, message: impl Into<String>) -> Self {
        Obstruction {
            reason,
            message: message.into(),
            witness: Vec::new(),
            scalar: None,
        }
    }

    pub fn with(mut self, name: &str, p: Polynomial) -> Self {
        self.witness.push((name.to_string(), p));
        self
    }

    pub fn with_scalar(mut self, c: Scalar) -> Self {
        self.scalar = Some(c);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftKind {
    Derivation,
    Automorphism,
}

/// How the image of an indeterminate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageSource {
    /// The indeterminate is itself a Veronese generator.
    Generator,
    /// From `D(e^d) / (d e^(d-1))`.
    PowerDivision,
    /// Division by a power of `x1`: `alpha(e x1^k) / f1^k`, or the derivation
    /// analogue.
    MixedDivision,
    /// From the bracket law along the standard factorization.
    BracketLaw,
    /// Beyond the degree bound.
    Undetermined,
}

impl ImageSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            ImageSource::Generator => "generator",
            ImageSource::PowerDivision => "power-division",
            ImageSource::MixedDivision => "mixed-division",
            ImageSource::BracketLaw => "bracket-law",
            ImageSource::Undetermined => "undetermined",
        }
    }
}

/// Scalars fixed while lifting an automorphism: `mu^d = v` and the sign
/// representative `lambda` of the ambiguity group `{lambda : lambda^d = 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub v: Scalar,
    pub mu: Scalar,
    pub lambda: Scalar,
}

/// Counts of the checks a lift passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub generators_checked: usize,
    pub generators_skipped: usize,
    pub bracket_pairs_checked: usize,
    pub bracket_pairs_skipped: usize,
}

/// A verified `d`-graded lift.
#[derive(Clone, Debug)]
pub struct Lift {
    pub kind: LiftKind,
    pub context: Context,
    pub d: u32,
    /// Image of every indeterminate (`x_i`, or every basis element `e_i`);
    /// `None` beyond the degree bound.
    pub images: Vec<Option<Polynomial>>,
    pub sources: Vec<ImageSource>,
    pub normalization: Option<Normalization>,
    pub verification: Verification,
}

impl Lift {
    /// Images of the free generators `x1..xn`.
    pub fn generator_images(&self) -> Vec<Polynomial> {
        self.images[..self.context.n()]
            .iter()
            .map(|p| p.clone().expect("free generators always have images"))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub enum LiftOutcome {
    Lifted(Lift),
    Obstructed(Obstruction),
}

impl LiftOutcome {
    pub fn is_lifted(&self) -> bool {
        matches!(self, LiftOutcome::Lifted(_))
    }

    pub fn lift(&self) -> Option<&Lift> {
        match self {
            LiftOutcome::Lifted(l) => Some(l),
            LiftOutcome::Obstructed(_) => None,
        }
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match self {
            LiftOutcome::Lifted(_) => None,
            LiftOutcome::Obstructed(o) => Some(o),
        }
    }

    pub fn into_lift(self) -> Result<Lift, Obstruction> {
        match self {
            LiftOutcome::Lifted(l) => Ok(l),
            LiftOutcome::Obstructed(o) => Err(o),
        }
    }
}
