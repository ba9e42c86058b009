//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::var::VarId;
use crate::Rational;

/// Exponent vector, one entry per variable slot.
///
/// Ordered graded-lex: total degree first, ties broken by comparing exponents
/// slot by slot in the global variable order, `x_1` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `self / other` when `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out.into_boxed_slice()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the `3n + 1` variables `x, y, a, b` of ambient dimension `n`.
///
/// Zero coefficients are never stored, so the zero polynomial has no terms and
/// structural equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(VarId::count(n)), c);
        }
        p
    }

    pub fn from_int(n: usize, c: i64) -> Self {
        Self::constant(n, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(n: usize, v: VarId) -> Self {
        Self::var_pow(n, v, 1)
    }

    pub fn var_pow(n: usize, v: VarId, e: u32) -> Self {
        let mut exps = vec![0; VarId::count(n)];
        exps[v.slot(n)] = e;
        Self::monomial(n, Monomial::from_exponents(exps), Rational::one())
    }

    pub fn monomial(n: usize, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.0.len(), VarId::count(n));
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(n: usize, terms: I) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        VarId::count(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.degree_in_slot(v.slot(self.n))
    }

    pub(crate) fn degree_in_slot(&self, slot: usize) -> u32 {
        self.terms.keys().map(|m| m.0[slot]).max().unwrap_or(0)
    }

    pub fn uses(&self, v: VarId) -> bool {
        self.degree_in(v) > 0
    }

    pub(crate) fn uses_slot(&self, slot: usize) -> bool {
        self.terms.keys().any(|m| m.0[slot] > 0)
    }

    /// Variables that occur with positive exponent, in global order.
    pub fn variables(&self) -> Vec<VarId> {
        (0..self.nvars())
            .filter(|&s| self.uses_slot(s))
            .map(|s| VarId::from_slot(s, self.n))
            .collect()
    }

    fn check_dim(&self, other: &MultiPoly) {
        assert_eq!(
            self.n, other.n,
            "polynomials of different ambient dimension combined"
        );
    }

    pub fn try_same_dim(&self, other: &MultiPoly) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, v: VarId) -> MultiPoly {
        let s = v.slot(self.n);
        let mut out = MultiPoly::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.0[s];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.to_vec();
            exps[s] -= 1;
            out.add_term(
                Monomial::from_exponents(exps),
                c * Rational::from_integer(BigInt::from(e)),
            );
        }
        out
    }

    /// Coefficients with respect to `v`: entry `k` multiplies `v^k`.
    pub fn coeffs_in(&self, v: VarId) -> Vec<MultiPoly> {
        self.coeffs_in_slot(v.slot(self.n))
    }

    pub(crate) fn coeffs_in_slot(&self, s: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in_slot(s) as usize;
        let mut out = vec![MultiPoly::zero(self.n); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let e = m.0[s] as usize;
            let mut exps = m.0.clone();
            exps[s] = 0;
            out[e].terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(n: usize, v: VarId, coeffs: &[MultiPoly]) -> MultiPoly {
        Self::from_coeffs_in_slot(n, v.slot(n), coeffs)
    }

    pub(crate) fn from_coeffs_in_slot(n: usize, s: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(n);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                let mut exps = m.0.clone();
                exps[s] += k as u32;
                out.add_term(Monomial(exps), x.clone());
            }
        }
        out
    }

    /// Replaces `v` by `value` everywhere.
    pub fn substitute(&self, v: VarId, value: &MultiPoly) -> MultiPoly {
        self.check_dim(value);
        let coeffs = self.coeffs_in(v);
        // Horner in the substituted variable.
        let mut acc = MultiPoly::zero(self.n);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Simultaneous substitution `v_i <- values_i`.
    pub fn substitute_many(&self, subs: &[(VarId, MultiPoly)]) -> MultiPoly {
        let slots: Vec<usize> = subs.iter().map(|(v, _)| v.slot(self.n)).collect();
        let mut cache: Vec<Vec<MultiPoly>> = subs
            .iter()
            .map(|(_, p)| vec![MultiPoly::one(self.n), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(self.n);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let mut term = MultiPoly::zero(self.n);
            for &s in &slots {
                exps[s] = 0;
            }
            term.terms.insert(Monomial(exps), c.clone());
            for (i, &s) in slots.iter().enumerate() {
                let e = m.0[s] as usize;
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e {
                    let next = &cache[i][cache[i].len() - 1] * &subs[i].1;
                    cache[i].push(next);
                }
                term = &term * &cache[i][e];
            }
            out = &out + &term;
        }
        out
    }

    /// Fixes `v` to the rational `value`.
    pub fn eval_var(&self, v: VarId, value: &Rational) -> MultiPoly {
        let s = v.slot(self.n);
        let mut out = MultiPoly::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.0[s];
            let mut exps = m.0.clone();
            exps[s] = 0;
            out.add_term(Monomial(exps), c * rational_pow(value, e));
        }
        out
    }

    /// Evaluates at a full assignment indexed by slot.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= rational_pow(&point[s], e);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(rational_to_f64(c), 0.0);
            for (s, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= point[s].powu(e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        self.check_dim(d);
        let (dm, dc) = d.leading_term()?;
        if self.is_zero() {
            return Some(MultiPoly::zero(self.n));
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        if d.terms.len() == 1 {
            let mut out = MultiPoly::zero(self.n);
            for (m, c) in &self.terms {
                out.terms.insert(m.div(dm)?, c / dc);
            }
            return Some(out);
        }
        if (0..self.nvars()).any(|s| d.degree_in_slot(s) > self.degree_in_slot(s)) {
            return None;
        }
        if self.is_integral() && d.is_integral() {
            if let Some(q) = self.div_exact_integral(d) {
                return q;
            }
        }
        let dm = dm.clone();
        let dc_inv = dc.recip();
        let tail: Vec<(&Monomial, &Rational)> = d.terms.iter().rev().skip(1).collect();
        let mut rem = self.terms.clone();
        let mut quot = MultiPoly::zero(self.n);
        while let Some((rm, rc)) = rem.pop_last() {
            let qm = rm.div(&dm)?;
            let qc = rc * &dc_inv;
            for (m, c) in &tail {
                let key = qm.mul(m);
                let delta = &qc * *c;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quot.terms.insert(qm, qc);
        }
        Some(quot)
    }

    /// Scales to integer coefficients with unit content and positive leading
    /// coefficient. Returns the scale factor applied.
    pub fn integer_normalized(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let scale = normalizing_factor(self.terms.values(), self.leading_coeff().unwrap());
        (scale.clone(), self.scale(&scale))
    }

    /// `lcm` of the coefficient denominators and `gcd` of the numerators.
    pub fn content_parts(&self) -> (BigInt, BigInt) {
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        (den_lcm, num_gcd)
    }

    /// Rational content: `self = content * primitive` with `primitive` integral
    /// and of unit integer content (sign left on the primitive part).
    pub fn rational_content(&self) -> Rational {
        let (l, g) = self.content_parts();
        if g.is_zero() {
            Rational::one()
        } else {
            Rational::new(g, l)
        }
    }

    /// Variables `x`, `y` do not occur.
    pub fn is_param_only(&self) -> bool {
        (0..=self.n).all(|s| !self.uses_slot(s))
    }

    /// Embeds into a larger ambient dimension, keeping variable names.
    pub fn lift(&self, n: usize) -> MultiPoly {
        assert!(n >= self.n);
        if n == self.n {
            return self.clone();
        }
        let mut out = MultiPoly::zero(n);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; VarId::count(n)];
            for (s, &e) in m.0.iter().enumerate() {
                exps[VarId::from_slot(s, self.n).slot(n)] = e;
            }
            out.terms.insert(Monomial::from_exponents(exps), c.clone());
        }
        out
    }
}

pub(crate) fn rational_pow(x: &Rational, e: u32) -> Rational {
    num_traits::pow::pow(x.clone(), e as usize)
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: fall back on scaled division.
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Factor `s` such that `s * coeffs` are coprime integers and `s * lead > 0`.
pub(crate) fn normalizing_factor<'a, I: Iterator<Item = &'a Rational>>(
    coeffs: I,
    lead: &Rational,
) -> Rational {
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for c in coeffs {
        den_lcm = den_lcm.lcm(c.denom());
        num_gcd = num_gcd.gcd(c.numer());
    }
    let mut s = Rational::new(den_lcm, num_gcd);
    if lead.is_negative() {
        s = -s;
    }
    s
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_dim(rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_dim(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl MultiPoly {
    fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// Exact division over the integers. The outer `None` means an integer
    /// quotient coefficient did not exist, so the rational path must decide.
    fn div_exact_integral(&self, d: &MultiPoly) -> Option<Option<MultiPoly>> {
        let (dm, dc) = d.leading_term()?;
        let dc = dc.numer();
        let tail: Vec<(&Monomial, &BigInt)> = d
            .terms
            .iter()
            .rev()
            .skip(1)
            .map(|(m, c)| (m, c.numer()))
            .collect();
        let mut rem: BTreeMap<Monomial, BigInt> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.numer().clone()))
            .collect();
        let mut quot = BTreeMap::new();
        while let Some((rm, rc)) = rem.pop_last() {
            let Some(qm) = rm.div(dm) else {
                return Some(None);
            };
            let (qc, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            for (m, c) in &tail {
                let delta = &qc * *c;
                match rem.entry(qm.mul(m)) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quot.insert(qm, Rational::from_integer(qc));
        }
        Some(Some(MultiPoly {
            n: self.n,
            terms: quot,
        }))
    }

    /// Product of two polynomials with integer coefficients, accumulated in
    /// integers.
    fn mul_integral(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            let c1 = c1.numer();
            for (m2, c2) in &rhs.terms {
                let prod = c1 * c2.numer();
                match acc.entry(m1.mul(m2)) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                    }
                }
            }
        }
        MultiPoly {
            n: self.n,
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, Rational::from_integer(c)))
                .collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_dim(rhs);
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero(self.n);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        if self.is_integral() && rhs.is_integral() {
            return self.mul_integral(rhs);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly {
            n: self.n,
            terms: acc,
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(m: &Monomial, n: usize) -> String {
    let mut parts = Vec::new();
    for (s, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(VarId::from_slot(s, n).to_string()),
            _ => parts.push(format!("{}^{}", VarId::from_slot(s, n), e)),
        }
    }
    parts.join("*")
}

/// Canonical form: terms in descending graded-lex order, explicit `*`, no
/// spaces, rationals as `p/q`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", fmt_monomial(m, self.n))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), fmt_monomial(m, self.n))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1() -> MultiPoly {
        MultiPoly::var(1, VarId::x(1))
    }
    fn y() -> MultiPoly {
        MultiPoly::var(1, VarId::y())
    }

    #[test]
    fn display_is_descending_graded_lex() {
        let p = &(&y() * &y()) - &x1();
        assert_eq!(p.to_string(), "y^2-x1");
        let q = &x1() + &y();
        assert_eq!(q.to_string(), "x1+y");
        let r = MultiPoly::constant(1, Rational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(r.to_string(), "-1/2");
        assert_eq!(MultiPoly::zero(1).to_string(), "0");
    }

    #[test]
    fn exact_division_detects_non_divisibility() {
        let p = &(&y() * &y()) - &MultiPoly::one(1);
        let d = &y() - &MultiPoly::one(1);
        let q = p.div_exact(&d).unwrap();
        assert_eq!(q, &y() + &MultiPoly::one(1));
        assert!(p.div_exact(&(&y() - &x1())).is_none());
    }

    #[test]
    fn substitution_matches_expansion() {
        let n = 1;
        let p = &(&y() * &y()) - &x1();
        let line = &(&MultiPoly::var(n, VarId::a(1)) * &y()) + &MultiPoly::var(n, VarId::b(1));
        let t = p.substitute(VarId::x(1), &line);
        assert_eq!(t.to_string(), "y^2-y*a1-b1");
        assert_eq!(t, p.substitute_many(&[(VarId::x(1), line)]));
    }

    #[test]
    fn integer_normalization() {
        let p = (&y() - &x1()).scale(&Rational::new(BigInt::from(-2), BigInt::from(3)));
        let (_, q) = p.integer_normalized();
        assert_eq!(q.to_string(), "x1-y");
    }
}
