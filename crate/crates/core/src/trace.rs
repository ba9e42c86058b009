//! Traces along the pencil of lines `x = a y + b`.
//!
//! A cycle `V = sum k_i {f_i = 0}` is tilted by the substitution
//! `x_i <- a_i Y + b_i`; the monic part `Q` of the tilted equation has the
//! ordinates of the intersection points `V ∩ L_(a,b)` as roots. Every trace is
//! then a complete residue sum against `Q`.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ratfunc::RatFunc;
use crate::residue::{residue_sums, ResidueQuery};
use crate::unipoly::UniPolyK;
use crate::var::{VarId, VarKind};
use crate::Rational;

/// Formal sum `sum k_i V_i` of hypersurfaces `V_i = {f_i = 0}` in `(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cycle {
    n: usize,
    components: Vec<(MultiPoly, u32)>,
}

impl Cycle {
    pub fn new(n: usize, components: Vec<(MultiPoly, u32)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidInput(
                "a cycle needs at least one component".into(),
            ));
        }
        for (f, k) in &components {
            if f.n() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: f.n(),
                });
            }
            if *k == 0 {
                return Err(Error::InvalidInput(
                    "multiplicities must be positive".into(),
                ));
            }
            if f.is_constant() {
                return Err(Error::InvalidInput("constant component equation".into()));
            }
            if f.variables().iter().any(|v| v.is_param()) {
                return Err(Error::InvalidInput(
                    "component equations may only involve x and y".into(),
                ));
            }
        }
        Ok(Cycle { n, components })
    }

    /// The reduced hypersurface `{f = 0}`.
    pub fn hypersurface(f: MultiPoly) -> Result<Self> {
        let n = f.n();
        Self::new(n, vec![(f, 1)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[(MultiPoly, u32)] {
        &self.components
    }

    /// Formal sum; equal components (up to a scalar) add their multiplicities.
    pub fn sum(&self, other: &Cycle) -> Result<Cycle> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut comps: Vec<(MultiPoly, u32)> = self
            .components
            .iter()
            .map(|(f, k)| (f.integer_normalized().1, *k))
            .collect();
        for (f, k) in &other.components {
            let f = f.integer_normalized().1;
            match comps.iter_mut().find(|(g, _)| *g == f) {
                Some(entry) => entry.1 += k,
                None => comps.push((f, *k)),
            }
        }
        Cycle::new(self.n, comps)
    }

    /// `prod f_i^(k_i)`.
    pub fn defining_polynomial(&self) -> MultiPoly {
        self.components
            .iter()
            .fold(MultiPoly::one(self.n), |acc, (f, k)| &acc * &f.pow(*k))
    }
}

/// A meromorphic (here rational) function `num / den` in `(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeroFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl MeroFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        let r = RatFunc::new(num, den)?;
        Self::from_ratfunc(&r)
    }

    pub fn from_ratfunc(r: &RatFunc) -> Result<Self> {
        let uses_params = r
            .num()
            .variables()
            .iter()
            .chain(r.den().variables().iter())
            .any(|v| v.is_param());
        if uses_params {
            return Err(Error::InvalidInput(
                "functions on the cycle may only involve x and y".into(),
            ));
        }
        Ok(MeroFunc {
            num: r.num().clone(),
            den: r.den().clone(),
        })
    }

    pub fn polynomial(p: MultiPoly) -> Result<Self> {
        let n = p.n();
        Self::new(p, MultiPoly::one(n))
    }

    pub fn one(n: usize) -> Self {
        MeroFunc {
            num: MultiPoly::one(n),
            den: MultiPoly::one(n),
        }
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

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::new(self.num.clone(), self.den.clone()).expect("denominator is nonzero")
    }
}

impl fmt::Display for MeroFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfunc())
    }
}

/// The tilted cycle: `f(aY + b, Y) = lc * Q` with `Q` monic of degree `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct TiltedCycle {
    q: UniPolyK,
    d: usize,
    lc: RatFunc,
    factors: Vec<(UniPolyK, u32)>,
}

impl TiltedCycle {
    pub fn q(&self) -> &UniPolyK {
        &self.q
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// The discarded leading coefficient (a polynomial in `a` only).
    pub fn lc(&self) -> &RatFunc {
        &self.lc
    }

    /// Monic tilts of the components with their multiplicities.
    pub fn factors(&self) -> &[(UniPolyK, u32)] {
        &self.factors
    }
}

/// Substitutions `x_i <- a_i y + b_i`.
pub fn line_substitution(n: usize) -> Vec<(VarId, MultiPoly)> {
    (1..=n)
        .map(|i| {
            let line = &(&MultiPoly::var(n, VarId::a(i)) * &MultiPoly::var(n, VarId::y()))
                + &MultiPoly::var(n, VarId::b(i));
            (VarId::x(i), line)
        })
        .collect()
}

/// `p(aY + b, Y)` as a polynomial in `Y` over the parameters.
pub fn tilt_poly(p: &MultiPoly) -> UniPolyK {
    let t = p.substitute_many(&line_substitution(p.n()));
    UniPolyK::from_poly_in_y(&t)
}

/// `deg_y f(0, y)`, or `None` when `f(0, y)` vanishes identically.
pub fn germ_degree(f: &MultiPoly) -> Option<usize> {
    let mut restricted = f.clone();
    for i in 1..=f.n() {
        restricted = restricted.eval_var(VarId::x(i), &Rational::from_integer(0.into()));
    }
    if restricted.is_zero() {
        None
    } else {
        Some(restricted.degree_in(VarId::y()) as usize)
    }
}

/// Per component: the intersection count with the vertical line and the
/// degree in `Y` of the tilted equation.
pub fn vertical_degrees(v: &Cycle) -> Result<Vec<(usize, usize)>> {
    v.components
        .iter()
        .enumerate()
        .map(|(i, (f, _))| {
            let germ = germ_degree(f).ok_or(Error::ImproperIntersection { component: i })?;
            let global = tilt_poly(f).degree().unwrap_or(0);
            Ok((germ, global))
        })
        .collect()
}

pub fn tilt(v: &Cycle) -> Result<TiltedCycle> {
    let n = v.n;
    let mut q = UniPolyK::one(n);
    let mut lc = RatFunc::one(n);
    let mut factors = Vec::with_capacity(v.components.len());
    for (i, (f, k)) in v.components.iter().enumerate() {
        let germ = germ_degree(f).ok_or(Error::ImproperIntersection { component: i })?;
        let tilted = tilt_poly(f);
        let global = tilted.degree().unwrap_or(0);
        if global != germ {
            return Err(Error::DegreeDropAtInfinity {
                germ_degree: germ,
                global_degree: global,
            });
        }
        let (lc_i, q_i) = tilted.monicize()?;
        q = &q * &q_i.pow(*k);
        lc = &lc * &lc_i.pow(*k);
        factors.push((q_i, *k));
    }
    let d = q.degree().unwrap();
    Ok(TiltedCycle { q, d, lc, factors })
}

/// Power sums `u_k` and, when a function is involved, its traces `v_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceData {
    pub u: Vec<RatFunc>,
    pub v: Option<Vec<RatFunc>>,
}

/// `u_k = Tr_V(y^k)` for `k = 0..=m`, by Newton's identities on the
/// coefficients of `Q`.
pub fn power_sums(t: &TiltedCycle, m: usize) -> TraceData {
    TraceData {
        u: newton_power_sums(&t.q, m),
        v: None,
    }
}

/// Power sums of the roots of a monic polynomial, `p_0 = deg`.
pub fn newton_power_sums(q: &UniPolyK, m: usize) -> Vec<RatFunc> {
    let n = q.n();
    let d = q.degree().expect("nonzero polynomial");
    // q = Y^d + c_{d-1} Y^{d-1} + ... + c_0
    let c = q.coeffs();
    let mut p: Vec<RatFunc> = Vec::with_capacity(m + 1);
    p.push(RatFunc::from_int(n, d as i64));
    for k in 1..=m {
        let mut acc = if k <= d {
            -&c[d - k].scale(&Rational::from_integer((k as i64).into()))
        } else {
            RatFunc::zero(n)
        };
        for j in 1..=(k - 1).min(d) {
            let cj = &c[d - j];
            if !cj.is_zero() {
                acc = &acc - &(cj * &p[k - j]);
            }
        }
        p.push(acc);
    }
    p
}

/// `u_k = Res[Y^k Q' dY / Q]`, the residue route to the power sums.
pub fn power_sums_by_residue(q: &UniPolyK, m: usize) -> Result<Vec<RatFunc>> {
    let query = ResidueQuery::polynomial(q.derivative_y(), q.clone())?;
    residue_sums(&query, m)
}

/// `v_k = Tr_V(y^k h) = Res[Y^k h(aY + b, Y) Q' dY / Q]`, `k = 0..=m`.
pub fn trace_function(v: &Cycle, h: &MeroFunc, m: usize) -> Result<TraceData> {
    let t = tilt(v)?;
    let u = newton_power_sums(&t.q, m);
    let vals = traces_with_weight(&t, h, &t.q.derivative_y(), m)?;
    Ok(TraceData { u, v: Some(vals) })
}

/// `∂_Y F - sum_i a_i ∂_(b_i) F`.
pub fn form_weight(f: &UniPolyK) -> UniPolyK {
    let n = f.n();
    let mut g = f.derivative_y();
    for i in 1..=n {
        let a = RatFunc::var(n, VarId::a(i));
        g = &g - &f.derivative_coeffs(VarId::b(i)).scale(&a);
    }
    g
}

fn traces_with_weight(
    t: &TiltedCycle,
    h: &MeroFunc,
    weight: &UniPolyK,
    kmax: usize,
) -> Result<Vec<RatFunc>> {
    let mut num = &tilt_poly(&h.num) * weight;
    let mut den = tilt_poly(&h.den);
    if den.is_zero() {
        return Err(Error::PolarLocusMeetsCycle);
    }
    if den.degree() > Some(0) {
        let (quot, rem) = num.divmod(&den)?;
        if rem.is_zero() {
            num = quot;
            den = UniPolyK::one(t.q.n());
        }
    }
    let query = ResidueQuery::new(num, den, t.q.clone())?;
    residue_sums(&query, kmax).map_err(|e| match e {
        Error::NotCoprime { .. } => Error::PolarLocusMeetsCycle,
        other => other,
    })
}

/// Coefficients `w_0..w_n` of the trace of the maximal form `h dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceForm {
    pub w: Vec<RatFunc>,
}

/// One monomial `sign * w_k da_I ∧ db_J` of the trace form, `J` the
/// complement of `I`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormTerm {
    pub a_indices: Vec<usize>,
    pub b_indices: Vec<usize>,
    pub sign: i8,
    pub k: usize,
}

impl TraceForm {
    pub fn n(&self) -> usize {
        self.w.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.w.iter().all(RatFunc::is_zero)
    }

    /// All `2^n` monomials. The sign of `da_I ∧ db_J` is the signature of
    /// the permutation that sorts the index word `(I, J)` into `(1, ..., n)`.
    pub fn terms(&self) -> Vec<FormTerm> {
        let n = self.n();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let a_indices: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            let b_indices: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) == 0).collect();
            let word: Vec<usize> = a_indices.iter().chain(b_indices.iter()).copied().collect();
            out.push(FormTerm {
                k: a_indices.len(),
                sign: permutation_sign(&word),
                a_indices,
                b_indices,
            });
        }
        out.sort_by(|x, y| x.k.cmp(&y.k).then_with(|| x.a_indices.cmp(&y.a_indices)));
        out
    }
}

fn permutation_sign(word: &[usize]) -> i8 {
    let mut inversions = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl fmt::Display for TraceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for term in self.terms() {
            let w = &self.w[term.k];
            if w.is_zero() {
                continue;
            }
            let wedge: Vec<String> = term
                .a_indices
                .iter()
                .map(|i| format!("da{i}"))
                .chain(term.b_indices.iter().map(|i| format!("db{i}")))
                .collect();
            let sign = if term.sign < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            write!(f, "{sign}({w})*{}", wedge.join("^"))?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `w_k = Res[Y^k h(aY + b, Y) (∂_Y F - sum a_i ∂_(b_i) F) dY / F]`, `k = 0..=kmax`.
pub fn trace_form_coeffs(v: &Cycle, h: &MeroFunc, kmax: usize) -> Result<Vec<RatFunc>> {
    let t = tilt(v)?;
    traces_with_weight(&t, h, &form_weight(&t.q), kmax)
}

/// Coefficients `w_0..w_n` of `Tr_V(h dx)`.
pub fn trace_form(v: &Cycle, h: &MeroFunc) -> Result<TraceForm> {
    Ok(TraceForm {
        w: trace_form_coeffs(v, h, v.n)?,
    })
}

/// Slot vector for evaluating parameter-only functions at `(a, b)`.
pub fn parameter_point(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let mut point = vec![Rational::from_integer(0.into()); VarId::count(n)];
    for i in 1..=n {
        point[VarId::a(i).slot(n)] = a[i - 1].clone();
        point[VarId::b(i).slot(n)] = b[i - 1].clone();
    }
    point
}

/// `true` when no coordinate variable occurs.
pub fn is_parameter_function(r: &RatFunc) -> bool {
    let coord = |v: &VarId| matches!(v.kind, VarKind::X | VarKind::Y);
    !r.num().variables().iter().any(coord) && !r.den().variables().iter().any(coord)
}
