//! Polynomials in the auxiliary variable `Y` over the field of rational
//! functions in the line parameters.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ratfunc::RatFunc;
use crate::var::VarId;
use crate::Rational;

/// `coeffs[k]` multiplies `Y^k`; the last stored coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPolyK {
    n: usize,
    coeffs: Vec<RatFunc>,
}

impl UniPolyK {
    pub fn zero(n: usize) -> Self {
        UniPolyK { n, coeffs: vec![] }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(RatFunc::one(n))
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::from_coeffs(c.n(), vec![c])
    }

    /// `Y`.
    pub fn y(n: usize) -> Self {
        Self::monomial(RatFunc::one(n), 1)
    }

    /// `c * Y^k`.
    pub fn monomial(c: RatFunc, k: usize) -> Self {
        let n = c.n();
        let mut coeffs = vec![RatFunc::zero(n); k];
        coeffs.push(c);
        Self::from_coeffs(n, coeffs)
    }

    pub fn from_coeffs(n: usize, mut coeffs: Vec<RatFunc>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.n() == n));
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        UniPolyK { n, coeffs }
    }

    /// Reads `p` as a polynomial in `y` with coefficients in the other variables.
    pub fn from_poly_in_y(p: &MultiPoly) -> Self {
        let coeffs = p
            .coeffs_in(VarId::y())
            .into_iter()
            .map(RatFunc::from_poly)
            .collect();
        Self::from_coeffs(p.n(), coeffs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// Coefficient of `Y^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> RatFunc {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&RatFunc> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(RatFunc::is_one)
    }

    /// Splits off the leading coefficient: `self = lc * monic`.
    pub fn monicize(&self) -> Result<(RatFunc, UniPolyK)> {
        let lc = self.leading_coeff().ok_or(Error::DivisionByZero)?.clone();
        if lc.is_one() {
            return Ok((lc, self.clone()));
        }
        let inv = lc.recip()?;
        Ok((lc, self.scale(&inv)))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self::from_coeffs(self.n, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplication by `Y^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![RatFunc::zero(self.n); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPolyK { n: self.n, coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal derivative in `Y`.
    pub fn derivative_y(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
            .collect();
        Self::from_coeffs(self.n, coeffs)
    }

    /// Coefficient-wise derivative in a parameter (or coordinate) variable.
    pub fn derivative_coeffs(&self, v: VarId) -> Self {
        Self::from_coeffs(
            self.n,
            self.coeffs.iter().map(|c| c.derivative(v)).collect(),
        )
    }

    /// Horner evaluation at `Y = value`.
    pub fn eval(&self, value: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero(self.n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// `sum c_k y^k` as a single rational function, `Y` read as `y`.
    pub fn to_ratfunc(&self) -> RatFunc {
        self.eval(&RatFunc::var(self.n, VarId::y()))
    }

    pub fn specialize(&self, v: VarId, value: &Rational) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.eval_var(v, value))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(self.n, coeffs))
    }

    /// Euclidean division over the coefficient field.
    pub fn divmod(&self, d: &UniPolyK) -> Result<(UniPolyK, UniPolyK)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = d.leading_coeff().unwrap().recip()?;
        Ok(self.divmod_with(d, dd, &lc_inv))
    }

    fn divmod_with(&self, d: &UniPolyK, dd: usize, lc_inv: &RatFunc) -> (UniPolyK, UniPolyK) {
        let n = self.n;
        let Some(ds) = self.degree() else {
            return (Self::zero(n), Self::zero(n));
        };
        if ds < dd {
            return (Self::zero(n), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RatFunc::zero(n); ds - dd + 1];
        for k in (dd..=ds).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = if lc_inv.is_one() {
                rem[k].clone()
            } else {
                &rem[k] * lc_inv
            };
            for (j, c) in d.coeffs.iter().enumerate().take(dd) {
                if !c.is_zero() {
                    rem[k - dd + j] = &rem[k - dd + j] - &(&q * c);
                }
            }
            rem[k] = RatFunc::zero(n);
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        (Self::from_coeffs(n, quot), Self::from_coeffs(n, rem))
    }

    /// Remainder modulo a monic divisor.
    pub fn rem_monic(&self, f: &UniPolyK) -> Result<UniPolyK> {
        Ok(divmod_monic(self, f)?.1)
    }
}

/// `g = q * f + r` with `deg r < deg f`, for monic `f`.
pub fn divmod_monic(g: &UniPolyK, f: &UniPolyK) -> Result<(UniPolyK, UniPolyK)> {
    if !f.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    let dd = f.degree().unwrap();
    Ok(g.divmod_with(f, dd, &RatFunc::one(f.n)))
}

/// Monic gcd over the coefficient field (zero when both inputs are zero).
pub fn gcd_y(a: &UniPolyK, b: &UniPolyK) -> Result<UniPolyK> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let (_, r) = r0.divmod(&r1)?;
        r0 = r1;
        r1 = r;
    }
    if r0.is_zero() {
        return Ok(r0);
    }
    Ok(r0.monicize()?.1)
}

/// `E` with `D * E = 1 mod F` and `deg E < deg F`, by the extended Euclidean
/// algorithm over the coefficient field.
pub fn inverse_mod(d: &UniPolyK, f: &UniPolyK) -> Result<UniPolyK> {
    if !f.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    let n = f.n;
    if f.degree() == Some(0) {
        return Ok(UniPolyK::zero(n));
    }
    let mut r0 = f.clone();
    let mut r1 = d.rem_monic(f)?;
    let mut s0 = UniPolyK::zero(n);
    let mut s1 = UniPolyK::one(n);
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1)?;
        let s = &s0 - &(&q * &s1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let g_deg = r0.degree().unwrap();
    if g_deg > 0 {
        return Err(Error::NotCoprime { gcd_degree: g_deg });
    }
    let inv = r0.coeffs[0].recip()?;
    s0.scale(&inv).rem_monic(f)
}

/// Resultant over the coefficient field: the Sylvester determinant, computed
/// fraction-free.
pub fn resultant(a: &UniPolyK, b: &UniPolyK) -> Result<RatFunc> {
    let n = a.n;
    let (Some(m), Some(k)) = (a.degree(), b.degree()) else {
        return Ok(RatFunc::zero(n));
    };
    if k == 0 {
        return Ok(b.coeffs[0].pow(m as u32));
    }
    if m == 0 {
        return Ok(a.coeffs[0].pow(k as u32));
    }
    let size = m + k;
    let row = |p: &UniPolyK, shift: usize| -> Vec<RatFunc> {
        let deg = p.coeffs.len() - 1;
        (0..size)
            .map(|j| {
                j.checked_sub(shift)
                    .filter(|&t| t <= deg)
                    .map(|t| p.coeffs[deg - t].clone())
                    .unwrap_or_else(|| RatFunc::zero(n))
            })
            .collect()
    };
    let sylvester: Vec<Vec<RatFunc>> = (0..k)
        .map(|i| row(a, i))
        .chain((0..m).map(|i| row(b, i)))
        .collect();
    Ok(crate::linalg::determinant(&sylvester))
}

/// `Disc F = (-1)^(d(d-1)/2) Res(F, F')` for monic `F` of degree `d >= 1`.
pub fn discriminant(f: &UniPolyK) -> Result<RatFunc> {
    if !f.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    let d = f.degree().unwrap();
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let r = resultant(f, &f.derivative_y())?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -r } else { r })
}

/// Formal partial derivatives, shared by every algebraic type.
pub trait PartialDerivative {
    fn partial(&self, v: VarId) -> Self;
}

impl PartialDerivative for MultiPoly {
    fn partial(&self, v: VarId) -> Self {
        self.derivative(v)
    }
}

impl PartialDerivative for RatFunc {
    fn partial(&self, v: VarId) -> Self {
        self.derivative(v)
    }
}

/// For `UniPolyK`, `VarId::y()` denotes the polynomial variable `Y`; every
/// other variable acts on the coefficients.
impl PartialDerivative for UniPolyK {
    fn partial(&self, v: VarId) -> Self {
        if v == VarId::y() {
            self.derivative_y()
        } else {
            self.derivative_coeffs(v)
        }
    }
}

pub fn partial_derivative<T: PartialDerivative>(p: &T, v: VarId) -> T {
    p.partial(v)
}

impl Add for &UniPolyK {
    type Output = UniPolyK;
    fn add(self, rhs: &UniPolyK) -> UniPolyK {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        UniPolyK::from_coeffs(self.n, coeffs)
    }
}

impl Sub for &UniPolyK {
    type Output = UniPolyK;
    fn sub(self, rhs: &UniPolyK) -> UniPolyK {
        self + &(-rhs)
    }
}

impl Neg for &UniPolyK {
    type Output = UniPolyK;
    fn neg(self) -> UniPolyK {
        UniPolyK {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UniPolyK {
    type Output = UniPolyK;
    fn mul(self, rhs: &UniPolyK) -> UniPolyK {
        if self.is_zero() || rhs.is_zero() {
            return UniPolyK::zero(self.n);
        }
        let mut coeffs = vec![RatFunc::zero(self.n); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(x * y);
                }
            }
        }
        UniPolyK::from_coeffs(self.n, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for UniPolyK {
            type Output = UniPolyK;
            fn $f(self, rhs: UniPolyK) -> UniPolyK {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Prints with `y` standing for `Y`, so the output re-parses.
impl fmt::Display for UniPolyK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfunc())
    }
}
