//! Reduced quotients of multivariate polynomials: the coefficient field for
//! every polynomial in `Y` handled by the engine.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gcd::gcd;
use crate::poly::{normalizing_factor, MultiPoly};
use crate::var::VarId;
use crate::Rational;

/// `num / den` with `gcd(num, den) = 1`, both integral with jointly unit
/// content, and `den` having positive leading coefficient. Zero is `0/1`.
///
/// The normal form is unique, so `==` is equality of rational functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        num.try_same_dim(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.n();
        Self::from_coprime(p, MultiPoly::one(n))
    }

    pub fn zero(n: usize) -> Self {
        Self::from_poly(MultiPoly::zero(n))
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly(MultiPoly::one(n))
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(n, c))
    }

    pub fn from_int(n: usize, c: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(n, c))
    }

    pub fn var(n: usize, v: VarId) -> Self {
        Self::from_poly(MultiPoly::var(n, v))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn n(&self) -> usize {
        self.num.n()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Full reduction: common factors, then scalar normalization.
    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        let n = num.n();
        if num.is_zero() {
            return Self::zero(n);
        }
        if let Some(c) = den.constant_value() {
            return Self::from_coprime(num.scale(&c.recip()), MultiPoly::one(n));
        }
        if let Some(q) = num.div_exact(&den) {
            return Self::from_coprime(q, MultiPoly::one(n));
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Self::from_coprime(num, den)
        } else {
            let num = num.div_exact(&g).expect("gcd divides numerator");
            let den = den.div_exact(&g).expect("gcd divides denominator");
            Self::from_coprime(num, den)
        }
    }

    /// Scalar normalization of an already coprime pair.
    fn from_coprime(num: MultiPoly, den: MultiPoly) -> Self {
        let n = num.n();
        if num.is_zero() {
            return RatFunc {
                num: MultiPoly::zero(n),
                den: MultiPoly::one(n),
            };
        }
        if let Some(c) = den.constant_value() {
            let num = num.scale(&c.recip());
            return RatFunc {
                num,
                den: MultiPoly::one(n),
            };
        }
        let s = normalizing_factor(
            num.terms()
                .map(|(_, c)| c)
                .chain(den.terms().map(|(_, c)| c)),
            den.leading_coeff().unwrap(),
        );
        RatFunc {
            num: num.scale(&s),
            den: den.scale(&s),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n());
        }
        Self::from_coprime(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::from_coprime(self.num.pow(e), self.den.pow(e))
    }

    pub fn derivative(&self, v: VarId) -> Self {
        let dn = self.num.derivative(v);
        if self.den.is_one() {
            return Self::from_coprime(dn, MultiPoly::one(self.n()));
        }
        let dd = self.den.derivative(v);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::reduce(num, self.den.pow(2))
    }

    /// Value at a full slot-indexed point; `None` on a pole.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.num.eval_complex(point) / self.den.eval_complex(point)
    }

    /// Fixes `v` to `value`; fails when the denominator vanishes identically.
    pub fn eval_var(&self, v: VarId, value: &Rational) -> Result<Self> {
        let den = self.den.eval_var(v, value);
        if den.is_zero() {
            return Err(Error::NonSpecializable);
        }
        Ok(Self::reduce(self.num.eval_var(v, value), den))
    }

    /// Simultaneous polynomial substitution `v_i <- p_i`.
    pub fn substitute_many(&self, subs: &[(VarId, MultiPoly)]) -> Result<Self> {
        let den = self.den.substitute_many(subs);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.num.substitute_many(subs), den))
    }

    /// Embeds into ambient dimension `n`, keeping variable names.
    pub fn lift(&self, n: usize) -> Self {
        RatFunc {
            num: self.num.lift(n),
            den: self.den.lift(n),
        }
    }

    pub fn uses(&self, v: VarId) -> bool {
        self.num.uses(v) || self.den.uses(v)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_coprime(&self.num + &rhs.num, self.den.clone());
        }
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            return RatFunc::from_coprime(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc::from_coprime(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let (l, r) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).unwrap(),
                rhs.den.div_exact(&g).unwrap(),
            )
        };
        let num = &(&self.num * &r) + &(&rhs.num * &l);
        let den = &self.den * &r;
        if g.is_one() {
            RatFunc::from_coprime(num, den)
        } else {
            RatFunc::reduce(num, den)
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.n());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_coprime(&self.num * &rhs.num, self.den.clone());
        }
        // Cross-cancel so the product is already reduced.
        let g1 = cancel(&self.num, &rhs.den);
        let g2 = cancel(&rhs.num, &self.den);
        let num = &g1.0 * &g2.0;
        let den = &g2.1 * &g1.1;
        RatFunc::from_coprime(num, den)
    }
}

/// `(p / g, q / g)` for `g = gcd(p, q)`.
fn cancel(p: &MultiPoly, q: &MultiPoly) -> (MultiPoly, MultiPoly) {
    if q.is_constant() || p.is_constant() {
        return (p.clone(), q.clone());
    }
    let g = gcd(p, q);
    if g.is_one() {
        (p.clone(), q.clone())
    } else {
        (p.div_exact(&g).unwrap(), q.div_exact(&g).unwrap())
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

/// `num` alone for polynomials, otherwise `(num)/(den)`; re-parseable.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ratfunc;

    fn r(s: &str) -> RatFunc {
        parse_ratfunc(s, 1).unwrap()
    }

    #[test]
    fn normal_form_is_unique() {
        assert_eq!(r("(-a1)/(2*b1)"), r("(a1/2)/(-b1)"));
        assert_eq!(r("(-a1)/(2*b1)").to_string(), "(-a1)/(2*b1)");
        assert_eq!(r("(y^2-1)/(y-1)"), r("y+1"));
        assert_eq!(r("(2*y)/(4*y*a1)").to_string(), "(1)/(2*a1)");
    }

    #[test]
    fn field_operations() {
        let u = r("1/(y-1)");
        let v = r("1/(y+1)");
        assert_eq!(&u + &v, r("2*y/(y^2-1)"));
        assert_eq!(&u - &v, r("2/(y^2-1)"));
        assert_eq!(&u * &v, r("1/(y^2-1)"));
        assert_eq!(u.checked_div(&v).unwrap(), r("(y+1)/(y-1)"));
        assert!(RatFunc::zero(1).recip().is_err());
    }

    #[test]
    fn quotient_rule() {
        let u = r("y/(y+a1)");
        assert_eq!(u.derivative(VarId::y()), r("a1/(y+a1)^2"));
        assert_eq!(u.derivative(VarId::b(1)), RatFunc::zero(1));
    }

    #[test]
    fn specialization_detects_poles() {
        let u = r("b1/a1");
        assert_eq!(
            u.eval_var(VarId::a(1), &Rational::zero()),
            Err(Error::NonSpecializable)
        );
        let w = r("b1/(a1+1)");
        assert_eq!(w.eval_var(VarId::a(1), &Rational::zero()).unwrap(), r("b1"));
    }
}
