//! Exact traces of functions and maximal-degree forms on affine hypersurfaces
//! along the pencil of lines `x = a y + b`, the reconstruction of a cycle and
//! of a function on it from finitely many traces, abelian forms, and a
//! floating-point oracle that checks every exact quantity against direct
//! summation over intersection points.

pub mod abelian;
pub mod corpus;
pub mod error;
pub mod gcd;
pub mod linalg;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod reconstruct;
pub mod residue;
pub mod trace;
pub mod unipoly;
pub mod var;

pub use abelian::{
    abelian_basis, castelnuovo_bound, qform_trace_coeffs, AbelianBasis, MultiIndex,
    NullityCertificate,
};
pub use error::{DegeneracyCause, Error, ErrorClass, Result};
pub use oracle::{
    agreement_suite, numeric_trace, numeric_trace_form, oracle_compare, roots, OracleReport, Point,
    SamplePlan, SuiteReport,
};
pub use parse::{infer_dimension, parse_poly, parse_ratfunc};
pub use poly::{Monomial, MultiPoly};
pub use ratfunc::RatFunc;
pub use reconstruct::{
    abel_inverse, abel_inverse_from_cycle, hankel_check, pi_inverse, pi_map, rho_inverse, rho_map,
    shock_check, solve_S, star_check, starstar_check, wood_test, AbelianPair, HankelSystem,
};
pub use residue::{dual_membership_test, residue_sum, residue_sums, ResidueQuery};
pub use trace::{
    power_sums, tilt, trace_form, trace_form_coeffs, trace_function, vertical_degrees, Cycle,
    MeroFunc, TiltedCycle, TraceData, TraceForm,
};
pub use unipoly::{
    discriminant, divmod_monic, gcd_y, inverse_mod, partial_derivative, resultant,
    PartialDerivative, UniPolyK,
};
pub use var::{VarId, VarKind};

/// Exact rational numbers; always stored in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;
