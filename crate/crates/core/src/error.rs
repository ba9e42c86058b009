//! Error type shared by every module of the engine.

use thiserror::Error;

/// Broad classification used by front-ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or out-of-contract input.
    Validation,
    /// The mathematics degenerates (singular system, vanishing discriminant, ...).
    Degeneracy,
    /// The numeric oracle could not produce a trustworthy value.
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: expected {expected}")]
    SyntaxError { position: usize, expected: String },

    #[error("unknown variable `{name}` at byte {position} (ambient dimension n = {n})")]
    UnknownVariable {
        name: String,
        position: usize,
        n: usize,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("expected a polynomial, found a proper rational function")]
    NotPolynomial,

    #[error("ambient dimensions differ ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("divisor is not monic")]
    NonMonicDivisor,

    #[error("polynomials are not coprime (gcd has degree {gcd_degree})")]
    NotCoprime { gcd_degree: usize },

    #[error("polynomial has degree zero")]
    ZeroDegree,

    #[error("component {component} contains the vertical line x = 0")]
    ImproperIntersection { component: usize },

    #[error(
        "vertical degree {germ_degree} at a = 0 differs from the global degree {global_degree} in Y"
    )]
    DegreeDropAtInfinity {
        germ_degree: usize,
        global_degree: usize,
    },

    #[error("polar locus of the function meets the cycle")]
    PolarLocusMeetsCycle,

    #[error("Hankel system is degenerate (determinant vanishes)")]
    DegenerateHankel,

    #[error("coefficient has a pole along a = 0")]
    NonSpecializable,

    #[error("interpolating polynomial violates the (**) condition")]
    StarStarViolation,

    #[error("polynomial violates the (*) condition")]
    StarViolation,

    #[error("trace-coefficient system is degenerate: rank {rank} < {expected}{}", cause_suffix(.cause))]
    DegenerateStildeSystem {
        rank: usize,
        expected: usize,
        cause: Option<DegeneracyCause>,
    },

    #[error("cycle is not reduced (discriminant vanishes identically)")]
    NotReduced,

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("sample point too close to the discriminant locus (|disc| = {disc:e})")]
    NearDiscriminant { disc: f64 },

    #[error("leading coefficient vanishes at the sample point")]
    LeadingCoefficientVanishes,

    #[error("function has a pole at an intersection point")]
    PoleHit,

    #[error("root refinement did not reach the residual tolerance (residual {residual:e})")]
    RootsNotConverged { residual: f64 },

    #[error("internal consistency check failed: {0}")]
    ConsistencyCheck(String),
}

/// Why the trace-coefficient system of an abelian-inverse reconstruction is singular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegeneracyCause {
    /// The form vanishes identically on the component cut out by `factor`.
    FormVanishesOnComponent { factor: String },
    /// `dy`-derivative of the tilted equation vanishes on a component, i.e. the
    /// component is a union of vertical lines.
    VerticalComponent { factor: String },
    /// All supplied coefficients are zero.
    ZeroForm,
}

fn cause_suffix(cause: &Option<DegeneracyCause>) -> String {
    match cause {
        None => String::new(),
        Some(DegeneracyCause::FormVanishesOnComponent { factor }) => {
            format!("; form vanishes on component {factor} = 0")
        }
        Some(DegeneracyCause::VerticalComponent { factor }) => {
            format!("; component {factor} = 0 is vertical")
        }
        Some(DegeneracyCause::ZeroForm) => "; form is identically zero".to_string(),
    }
}

impl Error {
    /// Stable identifier of the error kind, used in machine-readable output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::SyntaxError { .. } => "SyntaxError",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotPolynomial => "NotPolynomial",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidInput(_) => "InvalidInput",
            Error::NonMonicDivisor => "NonMonicDivisor",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::ZeroDegree => "ZeroDegree",
            Error::ImproperIntersection { .. } => "ImproperIntersection",
            Error::DegreeDropAtInfinity { .. } => "DegreeDropAtInfinity",
            Error::PolarLocusMeetsCycle => "PolarLocusMeetsCycle",
            Error::DegenerateHankel => "DegenerateHankel",
            Error::NonSpecializable => "NonSpecializable",
            Error::StarStarViolation => "StarStarViolation",
            Error::StarViolation => "StarViolation",
            Error::DegenerateStildeSystem { .. } => "DegenerateStildeSystem",
            Error::NotReduced => "NotReduced",
            Error::OutOfRange(_) => "OutOfRange",
            Error::NearDiscriminant { .. } => "NearDiscriminant",
            Error::LeadingCoefficientVanishes => "LeadingCoefficientVanishes",
            Error::PoleHit => "PoleHit",
            Error::RootsNotConverged { .. } => "RootsNotConverged",
            Error::ConsistencyCheck(_) => "ConsistencyCheck",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::SyntaxError { .. }
            | Error::UnknownVariable { .. }
            | Error::DivisionByZero
            | Error::NotPolynomial
            | Error::DimensionMismatch { .. }
            | Error::InvalidInput(_)
            | Error::NonMonicDivisor
            | Error::ZeroDegree
            | Error::ImproperIntersection { .. }
            | Error::DegreeDropAtInfinity { .. }
            | Error::OutOfRange(_) => ErrorClass::Validation,
            Error::NotCoprime { .. }
            | Error::PolarLocusMeetsCycle
            | Error::DegenerateHankel
            | Error::NonSpecializable
            | Error::StarStarViolation
            | Error::StarViolation
            | Error::DegenerateStildeSystem { .. }
            | Error::NotReduced => ErrorClass::Degeneracy,
            Error::NearDiscriminant { .. }
            | Error::LeadingCoefficientVanishes
            | Error::PoleHit
            | Error::RootsNotConverged { .. }
            | Error::ConsistencyCheck(_) => ErrorClass::Oracle,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
