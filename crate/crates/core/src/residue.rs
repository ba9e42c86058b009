//! Complete residue sums of one-variable quotients `G(Y) dY / F(Y)` and the
//! duality test for divisibility by `F`.
//!
//! For monic `F` of degree `d`, the sum of the residues of `G dY / F` over all
//! roots of `F` is the coefficient of `Y^(d-1)` in `G mod F`. No root is ever
//! computed, so repeated or parameter-dependent roots are handled for free.

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::unipoly::{divmod_monic, inverse_mod, UniPolyK};

/// The symbol `Res[ (numerator / denominator) dY / F ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueQuery {
    numerator: UniPolyK,
    denominator: UniPolyK,
    f: UniPolyK,
}

impl ResidueQuery {
    /// Monicizes `f` when needed; the monic polynomial is what the residue
    /// is taken against.
    pub fn new(numerator: UniPolyK, denominator: UniPolyK, f: UniPolyK) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if f.degree().unwrap_or(0) == 0 {
            return Err(Error::ZeroDegree);
        }
        let f = if f.is_monic() { f } else { f.monicize()?.1 };
        Ok(ResidueQuery {
            numerator,
            denominator,
            f,
        })
    }

    pub fn polynomial(numerator: UniPolyK, f: UniPolyK) -> Result<Self> {
        let n = f.n();
        Self::new(numerator, UniPolyK::one(n), f)
    }

    pub fn numerator(&self) -> &UniPolyK {
        &self.numerator
    }

    pub fn denominator(&self) -> &UniPolyK {
        &self.denominator
    }

    /// The monic divisor.
    pub fn f(&self) -> &UniPolyK {
        &self.f
    }

    /// `numerator / denominator mod F`, of degree below `deg F`.
    fn reduced_integrand(&self) -> Result<UniPolyK> {
        let g = if self.denominator.degree() == Some(0) {
            let inv = self.denominator.coeffs()[0].recip()?;
            self.numerator.scale(&inv)
        } else {
            let e = inverse_mod(&self.denominator, &self.f)?;
            &self.numerator.rem_monic(&self.f)? * &e
        };
        g.rem_monic(&self.f)
    }
}

/// Complete sum of residues of `(num/den)(Y) dY / F(Y)`.
pub fn residue_sum(q: &ResidueQuery) -> Result<RatFunc> {
    let g = q.reduced_integrand()?;
    Ok(top_coeff(&g, q.f.degree().unwrap()))
}

/// `Res[ Y^k (num/den) dY / F ]` for `k = 0..=kmax`.
pub fn residue_sums(q: &ResidueQuery, kmax: usize) -> Result<Vec<RatFunc>> {
    let g = q.reduced_integrand()?;
    Ok(shifted_residues(g, &q.f, kmax))
}

/// Residues of `Y^k g dY / F` for `k = 0..=kmax`, given `deg g < deg F`.
pub(crate) fn shifted_residues(mut g: UniPolyK, f: &UniPolyK, kmax: usize) -> Vec<RatFunc> {
    let d = f.degree().unwrap();
    let mut out = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        out.push(top_coeff(&g, d));
        if k < kmax {
            g = times_y_mod(&g, f);
        }
    }
    out
}

fn top_coeff(g: &UniPolyK, d: usize) -> RatFunc {
    g.coeff(d - 1)
}

/// `Y * g mod F` for monic `F` and `deg g < deg F`.
fn times_y_mod(g: &UniPolyK, f: &UniPolyK) -> UniPolyK {
    let d = f.degree().unwrap();
    let shifted = g.shift(1);
    let top = shifted.coeff(d);
    if top.is_zero() {
        return shifted;
    }
    let correction = f.scale(&top);
    &shifted - &correction
}

/// `true` iff `F` divides `H`, decided by the vanishing of the `d` residue
/// sums `Res[Y^k H dY / F]`, `k < d`; the Euclidean remainder is checked to
/// agree.
pub fn dual_membership_test(h: &UniPolyK, f: &UniPolyK) -> Result<bool> {
    let q = ResidueQuery::polynomial(h.clone(), f.clone())?;
    let d = q.f.degree().unwrap();
    let by_residues = residue_sums(&q, d - 1)?.iter().all(RatFunc::is_zero);
    let by_division = divmod_monic(h, &q.f)?.1.is_zero();
    if by_residues != by_division {
        return Err(Error::ConsistencyCheck(
            "residue duality disagrees with Euclidean remainder".into(),
        ));
    }
    Ok(by_residues)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ratfunc;

    fn u(s: &str) -> UniPolyK {
        UniPolyK::from_poly_in_y(parse_ratfunc(s, 1).unwrap().as_poly().unwrap())
    }

    fn k(s: &str) -> RatFunc {
        parse_ratfunc(s, 1).unwrap()
    }

    fn quad() -> UniPolyK {
        u("y^2 - a1*y - b1")
    }

    #[test]
    fn log_derivative_counts_roots() {
        let f = u("y^3 - a1*y + b1^2");
        let q = ResidueQuery::polynomial(f.derivative_y(), f).unwrap();
        assert_eq!(residue_sum(&q).unwrap(), k("3"));
    }

    #[test]
    fn polynomial_numerator() {
        let q = ResidueQuery::polynomial(u("2*y^2"), quad()).unwrap();
        assert_eq!(residue_sum(&q).unwrap(), k("2*a1"));
    }

    #[test]
    fn rational_numerator() {
        let q = ResidueQuery::new(u("2*y - a1"), u("2*y"), quad()).unwrap();
        assert_eq!(residue_sum(&q).unwrap(), k("-a1/(2*b1)"));
    }

    #[test]
    fn degree_deficit_gives_zero() {
        let f = u("y^4");
        for j in 0..=2 {
            let q = ResidueQuery::polynomial(UniPolyK::y(1).pow(j), f.clone()).unwrap();
            assert!(residue_sum(&q).unwrap().is_zero());
        }
    }

    #[test]
    fn non_monic_divisor_is_monicized() {
        let q = ResidueQuery::polynomial(u("y"), u("2*y^2 - 2")).unwrap();
        assert_eq!(q.f(), &u("y^2 - 1"));
        assert_eq!(residue_sum(&q).unwrap(), k("1"));
    }

    #[test]
    fn pole_on_the_divisor_is_rejected() {
        let q = ResidueQuery::new(u("1"), u("y"), u("y^2 - a1*y")).unwrap();
        assert!(matches!(residue_sum(&q), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn membership_examples() {
        let f = quad();
        assert!(dual_membership_test(&(&u("y") * &f), &f).unwrap());
        assert!(!dual_membership_test(&u("1"), &f).unwrap());
        assert!(!dual_membership_test(&u("(a1^2 + b1)*y + a1*b1"), &f).unwrap());
    }
}
