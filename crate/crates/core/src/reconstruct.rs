//! Reconstruction of the cycle polynomial `F` and of the interpolating
//! polynomial `H` from finitely many traces, the conditions `(*)` and `(**)`,
//! Wood's affineness test and the Abel-inverse pipeline.

use crate::error::{DegeneracyCause, Error, Result};
use crate::linalg::{hankel, rank, solve_with_det, Matrix};
use crate::poly::MultiPoly;
use crate::ratfunc::RatFunc;
use crate::residue::{residue_sums, ResidueQuery};
use crate::trace::{
    form_weight, newton_power_sums, tilt, tilt_poly, trace_form_coeffs, Cycle, MeroFunc,
};
use crate::unipoly::{discriminant, divmod_monic, gcd_y, UniPolyK};
use crate::var::{VarId, VarKind};
use crate::Rational;

/// The Hankel system `sum_j seq[k + j] x_j = rhs[k]`, `k < d`.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelSystem {
    pub a: Matrix,
    pub rhs: Vec<RatFunc>,
    pub det: RatFunc,
    solution: Option<Vec<RatFunc>>,
}

impl HankelSystem {
    /// Requires `seq[0..=2d-2]`.
    pub fn new(seq: &[RatFunc], d: usize, rhs: Vec<RatFunc>) -> Self {
        assert!(d > 0 && seq.len() + 1 >= 2 * d && rhs.len() == d);
        let a = hankel(seq, d);
        let (det, solution) = solve_with_det(&a, &rhs);
        HankelSystem {
            a,
            rhs,
            det,
            solution,
        }
    }

    pub fn size(&self) -> usize {
        self.rhs.len()
    }

    pub fn solution(&self) -> Option<&[RatFunc]> {
        self.solution.as_deref()
    }

    pub fn rank(&self) -> usize {
        if self.solution.is_some() {
            self.size()
        } else {
            rank(&self.a)
        }
    }
}

/// The monic `F` (satisfying `(*)`) and the interpolant `H` (satisfying
/// `(**)` relative to `F`).
#[derive(Debug, Clone, PartialEq)]
pub struct AbelianPair {
    pub f: UniPolyK,
    pub h: UniPolyK,
}

impl AbelianPair {
    /// `(F(y, 0, x), H(y, 0, x))`.
    pub fn specialize(&self) -> Result<(MultiPoly, MeroFunc)> {
        Ok((pi_inverse(&self.f)?, rho_inverse(&self.f, &self.h)?))
    }
}

fn degree_from_u0(u0: &RatFunc) -> Result<usize> {
    use num_traits::ToPrimitive;
    let c = u0
        .constant_value()
        .filter(|c| c.is_integer())
        .and_then(|c| c.to_integer().to_usize())
        .filter(|&d| d > 0);
    c.ok_or_else(|| Error::InvalidInput("u_0 must be a positive integer".into()))
}

/// `Y^d + sum_j c_j Y^j`.
fn monic_from(c: Vec<RatFunc>, n: usize) -> UniPolyK {
    let mut coeffs = c;
    coeffs.push(RatFunc::one(n));
    UniPolyK::from_coeffs(n, coeffs)
}

/// Monic `F` of degree `d = u_0` from the power sums `u_0..u_(2d-1)`.
#[allow(non_snake_case)]
pub fn solve_S(u: &[RatFunc]) -> Result<UniPolyK> {
    let u0 = u
        .first()
        .ok_or_else(|| Error::InvalidInput("empty power sums".into()))?;
    let n = u0.n();
    let d = degree_from_u0(u0)?;
    if u.len() < 2 * d {
        return Err(Error::InvalidInput(format!(
            "need power sums up to index {}, got {}",
            2 * d - 1,
            u.len().saturating_sub(1)
        )));
    }
    let rhs = (0..d).map(|k| -&u[k + d]).collect();
    let sys = HankelSystem::new(u, d, rhs);
    let c = sys.solution.ok_or(Error::DegenerateHankel)?;
    Ok(monic_from(c, n))
}

/// Newton's identities run backwards: the monic polynomial with power sums
/// `u_1..u_d`.
pub fn newton_reconstruction(u: &[RatFunc]) -> Result<UniPolyK> {
    let u0 = u
        .first()
        .ok_or_else(|| Error::InvalidInput("empty power sums".into()))?;
    let n = u0.n();
    let d = degree_from_u0(u0)?;
    if u.len() <= d {
        return Err(Error::InvalidInput("need power sums up to index d".into()));
    }
    // e_k = (1/k) sum_{i=1..k} (-1)^(i-1) e_(k-i) p_i
    let mut e = vec![RatFunc::one(n)];
    for k in 1..=d {
        let mut acc = RatFunc::zero(n);
        for i in 1..=k {
            let t = &e[k - i] * &u[i];
            acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
        }
        e.push(acc.scale(&Rational::new(1.into(), (k as i64).into())));
    }
    let c = (0..d)
        .map(|j| {
            let ej = &e[d - j];
            if (d - j) % 2 == 0 {
                ej.clone()
            } else {
                -ej
            }
        })
        .collect();
    Ok(monic_from(c, n))
}

/// Elementary symmetric functions `e_1..e_d` of the roots of a monic `F`.
pub fn elementary_symmetric(f: &UniPolyK) -> Vec<RatFunc> {
    let d = f.degree().expect("nonzero polynomial");
    (1..=d)
        .map(|j| {
            let c = f.coeff(d - j);
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// The coefficients `sigma_0..sigma_(d-1)` of the alternating expansion of
/// `F`, indexed by `sigma_(d-j) = e_j`.
pub fn sigma_coefficients(f: &UniPolyK) -> Vec<RatFunc> {
    let mut e = elementary_symmetric(f);
    e.reverse();
    e
}

/// `det A` of the power-sum Hankel matrix against `Disc Q`.
pub fn hankel_check(u: &[RatFunc], q: &UniPolyK) -> Result<(RatFunc, RatFunc, bool)> {
    let d = q.degree().unwrap_or(0);
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if u.len() + 1 < 2 * d {
        return Err(Error::InvalidInput("not enough power sums".into()));
    }
    let n = q.n();
    let det = HankelSystem::new(u, d, vec![RatFunc::zero(n); d]).det;
    let disc = discriminant(q)?;
    let equal = det == disc;
    Ok((det, disc, equal))
}

fn star_remainder_zero(p: &UniPolyK, f: &UniPolyK) -> Result<bool> {
    let n = f.n();
    for i in 1..=n {
        let e = &p.derivative_coeffs(VarId::a(i)) - &p.derivative_coeffs(VarId::b(i)).shift(1);
        if !divmod_monic(&e, f)?.1.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Condition `(*)`: `F | ∂_(a_i) F - Y ∂_(b_i) F` for every `i`.
pub fn star_check(f: &UniPolyK) -> Result<bool> {
    star_remainder_zero(f, f)
}

/// Condition `(**)`: `F | ∂_(a_i) H - Y ∂_(b_i) H` for every `i`.
pub fn starstar_check(f: &UniPolyK, h: &UniPolyK) -> Result<bool> {
    star_remainder_zero(h, f)
}

/// `Π(V)`: the monicized tilt; for a reduced cycle it is checked against the
/// reconstruction from power sums.
pub fn pi_map(v: &Cycle) -> Result<UniPolyK> {
    let t = tilt(v)?;
    if v.components().iter().all(|(_, k)| *k == 1) {
        let u = newton_power_sums(t.q(), 2 * t.degree() - 1);
        if let Ok(f) = solve_S(&u) {
            if &f != t.q() {
                return Err(Error::ConsistencyCheck(
                    "power-sum reconstruction differs from the tilt".into(),
                ));
            }
        }
    }
    Ok(t.q().clone())
}

/// Restricts a coefficient to `a = 0` and renames `b_i` to `x_i`.
fn at_vertical(c: &RatFunc) -> Result<RatFunc> {
    let n = c.n();
    let zero = Rational::from_integer(0.into());
    let mut r = c.clone();
    for i in 1..=n {
        if r.uses(VarId::a(i)) {
            r = r.eval_var(VarId::a(i), &zero)?;
        }
    }
    let subs: Vec<(VarId, MultiPoly)> = (1..=n)
        .map(|i| (VarId::b(i), MultiPoly::var(n, VarId::x(i))))
        .collect();
    r.substitute_many(&subs)
}

/// `P(y, 0, x)` as a rational function in `(x, y)`.
fn specialize_vertical(p: &UniPolyK) -> Result<RatFunc> {
    let n = p.n();
    let y = RatFunc::var(n, VarId::y());
    let mut acc = RatFunc::zero(n);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * &y) + &at_vertical(c)?;
    }
    Ok(acc)
}

/// `f(x, y) = F(y, 0, x)` with denominators cleared, integer coefficients of
/// unit content and positive leading coefficient.
pub fn pi_inverse(f: &UniPolyK) -> Result<MultiPoly> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ZeroDegree);
    }
    let f = if f.is_monic() {
        f.clone()
    } else {
        f.monicize()?.1
    };
    if !star_check(&f)? {
        return Err(Error::StarViolation);
    }
    let r = specialize_vertical(&f)?;
    let g = r.num().integer_normalized().1;
    if germ_is_zero(&g) {
        return Err(Error::ImproperIntersection { component: 0 });
    }
    Ok(g)
}

fn germ_is_zero(f: &MultiPoly) -> bool {
    crate::trace::germ_degree(f).is_none()
}

/// `h(x, y) = H(y, 0, x)`.
pub fn rho_inverse(f: &UniPolyK, h: &UniPolyK) -> Result<MeroFunc> {
    let f = if f.is_monic() {
        f.clone()
    } else {
        f.monicize()?.1
    };
    if !starstar_check(&f, h)? {
        return Err(Error::StarStarViolation);
    }
    MeroFunc::from_ratfunc(&specialize_vertical(h)?)
}

/// `ρ(h)`: the polynomial `H` of degree below `d` with `H(Y) = h(aY + b, Y)`
/// on the roots of `Q`.
pub fn rho_map(v: &Cycle, h: &MeroFunc) -> Result<UniPolyK> {
    let t = tilt(v)?;
    let d = t.degree();
    let n = v.n();
    let u = newton_power_sums(t.q(), 2 * d - 2);
    let num = &tilt_poly(h.num()) * &t.q().derivative_y();
    let den = tilt_poly(h.den());
    let query = ResidueQuery::new(num, den.clone(), t.q().clone())?;
    let vals = residue_sums(&query, d - 1).map_err(|e| match e {
        Error::NotCoprime { .. } => Error::PolarLocusMeetsCycle,
        other => other,
    })?;
    let sys = HankelSystem::new(&u, d, vals);
    let tau = sys.solution.ok_or(Error::DegenerateHankel)?;
    let big_h = UniPolyK::from_coeffs(n, tau);
    if !starstar_check(t.q(), &big_h)? {
        return Err(Error::StarStarViolation);
    }
    let defect = &tilt_poly(h.num()) - &(&big_h * &den);
    if !divmod_monic(&defect, t.q())?.1.is_zero() {
        return Err(Error::StarStarViolation);
    }
    Ok(big_h)
}

/// Wood's criterion: `u1` is a polynomial of degree at most one in the
/// `b` variables, with coefficients rational in `a`.
pub fn wood_test(u1: &RatFunc, _d: usize) -> bool {
    let b_degree = |p: &MultiPoly| {
        p.terms()
            .map(|(m, _)| {
                let n = p.n();
                (1..=n)
                    .map(|i| m.exponents()[VarId::b(i).slot(n)])
                    .sum::<u32>()
            })
            .max()
            .unwrap_or(0)
    };
    b_degree(u1.den()) == 0 && b_degree(u1.num()) <= 1
}

/// Shock-wave identities `∂_(a_i) seq[k] = ∂_(b_i) seq[k+1]`.
pub fn shock_check(seq: &[RatFunc]) -> bool {
    let Some(first) = seq.first() else {
        return true;
    };
    let n = first.n();
    seq.windows(2).all(|pair| {
        (1..=n).all(|i| pair[0].derivative(VarId::a(i)) == pair[1].derivative(VarId::b(i)))
    })
}

/// Inputs whose traces vanish in low degree must have the predicted
/// polynomial growth: if `w_0 = .. = w_(k-1) = 0` then `w_(k+j)` is a
/// polynomial of degree at most `j` in `b`.
pub fn vanishing_growth_check(w: &[RatFunc]) -> bool {
    let k = w.iter().take_while(|x| x.is_zero()).count();
    if k == 0 || k == w.len() {
        return true;
    }
    w[k..].iter().enumerate().all(|(j, x)| {
        let n = x.n();
        let b_free_den = !x.den().variables().iter().any(|v| v.kind == VarKind::B);
        let deg = x
            .num()
            .terms()
            .map(|(m, _)| {
                (1..=n)
                    .map(|i| m.exponents()[VarId::b(i).slot(n)])
                    .sum::<u32>()
            })
            .max()
            .unwrap_or(0);
        b_free_den && deg as usize <= j
    })
}

/// `ξ_k = Res[Y^k (∂_Y F - sum a_i ∂_(b_i) F) dY / F]`.
pub fn xi_sequence(f: &UniPolyK, kmax: usize) -> Result<Vec<RatFunc>> {
    let query = ResidueQuery::polynomial(form_weight(f), f.clone())?;
    residue_sums(&query, kmax)
}

/// Recovers `(F, H)` from the trace-form coefficients `w_0..w_(2d-1)`.
pub fn abel_inverse(w: &[RatFunc], d: usize, n: usize) -> Result<AbelianPair> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if w.len() < 2 * d {
        return Err(Error::InvalidInput(format!(
            "need w_0..w_{}, got {} values",
            2 * d - 1,
            w.len()
        )));
    }
    if let Some(bad) = w.iter().find(|x| x.n() != n) {
        return Err(Error::DimensionMismatch {
            left: n,
            right: bad.n(),
        });
    }
    let rhs = (0..d).map(|k| -&w[k + d]).collect();
    let first = HankelSystem::new(w, d, rhs);
    let Some(c) = first.solution.clone() else {
        let cause = w
            .iter()
            .all(RatFunc::is_zero)
            .then_some(DegeneracyCause::ZeroForm);
        return Err(Error::DegenerateStildeSystem {
            rank: first.rank(),
            expected: d,
            cause,
        });
    };
    let f = monic_from(c, n);
    let xi = xi_sequence(&f, 2 * d - 2)?;
    let second = HankelSystem::new(&xi, d, w[..d].to_vec());
    let Some(tau) = second.solution.clone() else {
        let g = gcd_y(&f, &form_weight(&f))?;
        return Err(Error::DegenerateStildeSystem {
            rank: second.rank(),
            expected: d,
            cause: Some(DegeneracyCause::VerticalComponent {
                factor: g.to_string(),
            }),
        });
    };
    let h = UniPolyK::from_coeffs(n, tau);
    if !star_check(&f)? {
        return Err(Error::StarViolation);
    }
    if !starstar_check(&f, &h)? {
        return Err(Error::StarStarViolation);
    }
    Ok(AbelianPair { f, h })
}

/// The full pipeline: trace the form `h dx` over `V` up to `k = 2d - 1` and
/// invert. Degenerate cases are diagnosed against the cycle.
pub fn abel_inverse_from_cycle(v: &Cycle, h: &MeroFunc) -> Result<AbelianPair> {
    let t = tilt(v)?;
    let d = t.degree();
    let w = trace_form_coeffs(v, h, 2 * d - 1)?;
    abel_inverse(&w, d, v.n()).map_err(|e| match e {
        Error::DegenerateStildeSystem {
            rank,
            expected,
            cause,
        } => {
            let cause = cause.or_else(|| diagnose(t.q(), h));
            Error::DegenerateStildeSystem {
                rank,
                expected,
                cause,
            }
        }
        other => other,
    })
}

fn diagnose(q: &UniPolyK, h: &MeroFunc) -> Option<DegeneracyCause> {
    let hn = tilt_poly(h.num());
    if let Ok(g) = gcd_y(q, &hn) {
        if g.degree().unwrap_or(0) > 0 {
            return Some(DegeneracyCause::FormVanishesOnComponent {
                factor: g.to_string(),
            });
        }
    }
    if let Ok(g) = gcd_y(q, &form_weight(q)) {
        if g.degree().unwrap_or(0) > 0 {
            return Some(DegeneracyCause::VerticalComponent {
                factor: g.to_string(),
            });
        }
    }
    None
}
