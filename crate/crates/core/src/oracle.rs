//! Floating-point oracle: roots of the specialized univariate polynomials by
//! Aberth–Ehrlich iteration and traces as plain sums over intersection
//! points, compared against the exact values.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{rational_to_f64, MultiPoly};
use crate::ratfunc::RatFunc;
use crate::reconstruct::{rho_map, solve_S};
use crate::trace::{
    newton_power_sums, parameter_point, tilt, trace_form_coeffs, trace_function, Cycle, MeroFunc,
};
use crate::unipoly::{discriminant, UniPolyK};
use crate::var::VarId;
use crate::Rational;

pub const RESIDUAL_TOL: f64 = 1e-12;
pub const COMPARE_TOL: f64 = 1e-9;
pub const MIN_DISC: f64 = 1e-6;
const MAX_ITERATIONS: usize = 500;

/// A parameter point `(a, b)` of the pencil.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl Point {
    pub fn new(a: Vec<Rational>, b: Vec<Rational>) -> Self {
        assert_eq!(a.len(), b.len());
        Point { a, b }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Full slot vector with `x = y = 0`.
    pub fn slots(&self) -> Vec<Rational> {
        parameter_point(&self.a, &self.b)
    }

    fn line_at(&self, y: Complex64) -> Vec<Complex64> {
        let n = self.n();
        let mut v = vec![Complex64::zero(); VarId::count(n)];
        for i in 1..=n {
            let a = rational_to_f64(&self.a[i - 1]);
            let b = rational_to_f64(&self.b[i - 1]);
            v[VarId::x(i).slot(n)] = y * a + b;
            v[VarId::a(i).slot(n)] = Complex64::new(a, 0.0);
            v[VarId::b(i).slot(n)] = Complex64::new(b, 0.0);
        }
        v[VarId::y().slot(n)] = y;
        v
    }
}

/// Deterministic random sampling of parameter points.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePlan {
    pub seed: u64,
    pub count: usize,
    /// Bound on `|a_i|` and `|b_i|`.
    pub bound: Rational,
    pub min_disc: f64,
}

impl SamplePlan {
    pub fn new(seed: u64, count: usize) -> Self {
        SamplePlan {
            seed,
            count: count.max(1),
            bound: Rational::from_integer(2.into()),
            min_disc: MIN_DISC,
        }
    }

    /// An endless, seed-determined stream of points with coordinates `p/q`,
    /// `1 <= q <= 12`, inside the box.
    pub fn points(&self, n: usize) -> impl Iterator<Item = Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let bound = self.bound.clone();
        std::iter::repeat_with(move || {
            let mut coord = || {
                let q: i64 = rng.gen_range(1..=12);
                let lim = (&bound * Rational::from_integer(q.into()))
                    .floor()
                    .to_integer()
                    .to_i64()
                    .unwrap_or(i64::MAX / 2);
                let p: i64 = rng.gen_range(-lim..=lim);
                Rational::new(p.into(), q.into())
            };
            let a: Vec<Rational> = (0..n).map(|_| coord()).collect();
            let b: Vec<Rational> = (0..n).map(|_| coord()).collect();
            Point::new(a, b)
        })
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of `sum c_k y^k` (ascending coefficients, nonzero leading
/// coefficient), sorted by real then imaginary part.
pub fn roots_of(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let d = coeffs.len().saturating_sub(1);
    let lead = *coeffs.last().ok_or(Error::ZeroDegree)?;
    if lead == 0.0 {
        return Err(Error::LeadingCoefficientVanishes);
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let monic: Vec<Complex64> = coeffs
        .iter()
        .map(|c| Complex64::new(c / lead, 0.0))
        .collect();
    let radius = 1.0 + monic[..d].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
            let r = radius * (1.0 + 0.01 * k as f64 / d as f64);
            Complex64::from_polar(r, angle)
        })
        .collect();
    for _ in 0..MAX_ITERATIONS {
        let mut largest_step = 0.0f64;
        for i in 0..d {
            let (p, dp) = horner(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                largest_step = largest_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if largest_step < 1e-16 {
            break;
        }
    }
    // Newton polishing.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *zi);
            if dp.norm() > 0.0 {
                let step = p / dp;
                if step.is_finite() {
                    *zi -= step;
                }
            }
        }
    }
    let scale = 1.0 + monic.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let residual = z
        .iter()
        .map(|&zi| horner(&monic, zi).0.norm())
        .fold(0.0, f64::max);
    if residual.is_nan() || residual > RESIDUAL_TOL * scale {
        return Err(Error::RootsNotConverged { residual });
    }
    z.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(z)
}

/// Exact discriminant of the monic normalization of a rational polynomial.
fn exact_discriminant(coeffs: &[Rational]) -> Result<Rational> {
    let lead = coeffs.last().ok_or(Error::ZeroDegree)?;
    if lead.is_zero() {
        return Err(Error::LeadingCoefficientVanishes);
    }
    let monic = UniPolyK::from_coeffs(
        1,
        coeffs
            .iter()
            .map(|c| RatFunc::constant(1, c / lead))
            .collect(),
    );
    let disc = discriminant(&monic)?;
    Ok(disc.constant_value().expect("constant coefficients"))
}

fn guarded_roots(coeffs: &[Rational], min_disc: f64) -> Result<Vec<Complex64>> {
    let disc = exact_discriminant(coeffs)?;
    let disc = rational_to_f64(&disc);
    if disc.abs() < min_disc {
        return Err(Error::NearDiscriminant { disc });
    }
    let floats: Vec<f64> = coeffs.iter().map(rational_to_f64).collect();
    roots_of(&floats)
}

/// Roots at `(a, b)` of `F`, whose coefficients are functions of the
/// parameters.
pub fn roots(f: &UniPolyK, at: &Point) -> Result<Vec<Complex64>> {
    let slots = at.slots();
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| c.eval(&slots).ok_or(Error::PoleHit))
        .collect::<Result<Vec<_>>>()?;
    guarded_roots(&coeffs, MIN_DISC)
}

fn poly_mul(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `f(a y + b, y)` at a fixed rational point, computed term by term.
fn restrict_to_line(f: &MultiPoly, at: &Point) -> Vec<Rational> {
    let n = f.n();
    let mut out = vec![Rational::zero()];
    for (m, c) in f.terms() {
        let e = m.exponents();
        let mut term = vec![c.clone()];
        for i in 1..=n {
            let line = vec![at.b[i - 1].clone(), at.a[i - 1].clone()];
            for _ in 0..e[VarId::x(i).slot(n)] {
                term = poly_mul(&term, &line);
            }
        }
        let ey = e[VarId::y().slot(n)] as usize;
        let mut shifted = vec![Rational::zero(); ey];
        shifted.extend(term);
        if shifted.len() > out.len() {
            out.resize(shifted.len(), Rational::zero());
        }
        for (o, t) in out.iter_mut().zip(shifted) {
            *o += t;
        }
    }
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

struct ComponentSample {
    multiplicity: u32,
    roots: Vec<Complex64>,
    derivative: Vec<f64>,
    f: MultiPoly,
}

fn sample_components(v: &Cycle, at: &Point, min_disc: f64) -> Result<Vec<ComponentSample>> {
    v.components()
        .iter()
        .map(|(f, k)| {
            let g = restrict_to_line(f, at);
            let expected = f.total_degree().unwrap_or(0) as usize;
            if g.len() - 1 < expected {
                return Err(Error::LeadingCoefficientVanishes);
            }
            let roots = guarded_roots(&g, min_disc)?;
            let derivative = g
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| rational_to_f64(c) * j as f64)
                .collect();
            Ok(ComponentSample {
                multiplicity: *k,
                roots,
                derivative,
                f: f.clone(),
            })
        })
        .collect()
}

fn eval_mero(h: &MeroFunc, point: &[Complex64]) -> Result<Complex64> {
    let num = h.num().eval_complex(point);
    let den = h.den().eval_complex(point);
    if den.norm() <= 1e-12 * (1.0 + num.norm()) {
        return Err(Error::PoleHit);
    }
    Ok(num / den)
}

fn eval_real(p: &[f64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c)
}

/// `sum_i k_i sum_(y in V_i ∩ L) y^k h(a y + b, y)`.
pub fn numeric_trace(v: &Cycle, h: &MeroFunc, k: u32, at: &Point) -> Result<Complex64> {
    numeric_trace_with(v, h, k, at, MIN_DISC)
}

fn numeric_trace_with(
    v: &Cycle,
    h: &MeroFunc,
    k: u32,
    at: &Point,
    min_disc: f64,
) -> Result<Complex64> {
    let mut total = Complex64::zero();
    for comp in sample_components(v, at, min_disc)? {
        let mut s = Complex64::zero();
        for &y in &comp.roots {
            s += y.powu(k) * eval_mero(h, &at.line_at(y))?;
        }
        total += s * comp.multiplicity as f64;
    }
    Ok(total)
}

/// Coefficient `w_k` of the trace of `h dx`, summed over intersection
/// points: `sum_i k_i sum_y y^k h ∂_y f_i / (d/dy) f_i(a y + b, y)`.
pub fn numeric_trace_form(v: &Cycle, h: &MeroFunc, k: u32, at: &Point) -> Result<Complex64> {
    numeric_trace_form_with(v, h, k, at, MIN_DISC)
}

fn numeric_trace_form_with(
    v: &Cycle,
    h: &MeroFunc,
    k: u32,
    at: &Point,
    min_disc: f64,
) -> Result<Complex64> {
    let mut total = Complex64::zero();
    for comp in sample_components(v, at, min_disc)? {
        let dy = comp.f.derivative(VarId::y());
        let mut s = Complex64::zero();
        for &y in &comp.roots {
            let p = at.line_at(y);
            let jac = eval_real(&comp.derivative, y);
            s += y.powu(k) * eval_mero(h, &p)? * dy.eval_complex(&p) / jac;
        }
        total += s * comp.multiplicity as f64;
    }
    Ok(total)
}

/// Roots of the whole cycle at `at`, with multiplicity.
pub fn cycle_roots(v: &Cycle, at: &Point, min_disc: f64) -> Result<Vec<Complex64>> {
    let mut out = Vec::new();
    for comp in sample_components(v, at, min_disc)? {
        for _ in 0..comp.multiplicity {
            out.extend(comp.roots.iter().copied());
        }
    }
    Ok(out)
}

/// `e_j` of the intersection ordinates.
fn numeric_elementary(roots: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = e.clone();
        next.push(Complex64::zero());
        for j in 1..next.len() {
            next[j] += e[j - 1] * r;
        }
        e = next;
    }
    e
}

/// Lagrange interpolation coefficients of the values `vals` at `nodes`.
fn interpolate(nodes: &[Complex64], vals: &[Complex64]) -> Vec<Complex64> {
    let d = nodes.len();
    let mut out = vec![Complex64::zero(); d];
    for j in 0..d {
        let others: Vec<Complex64> = (0..d).filter(|&i| i != j).map(|i| nodes[i]).collect();
        // prod (Y - y_i) over i != j, ascending.
        let mut basis = vec![Complex64::new(1.0, 0.0)];
        let mut scale = Complex64::new(1.0, 0.0);
        for &r in &others {
            let mut next = vec![Complex64::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            basis = next;
            scale *= nodes[j] - r;
        }
        let weight = vals[j] / scale;
        for (o, c) in out.iter_mut().zip(basis) {
            *o += c * weight;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub symbolic: f64,
    pub numeric_re: f64,
    pub numeric_im: f64,
    pub error: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub quantity: String,
    pub symbolic: String,
    pub seed: u64,
    pub requested: usize,
    pub valid: usize,
    pub skipped: usize,
    pub max_error: f64,
    pub pass: bool,
    pub failures: Vec<String>,
    pub samples: Vec<SampleRecord>,
}

fn skippable(e: &Error) -> bool {
    matches!(
        e,
        Error::NearDiscriminant { .. } | Error::PoleHit | Error::LeadingCoefficientVanishes
    )
}

/// Compares an exact function of `(a, b)` with a numeric evaluator on
/// `plan.count` valid samples. Invalid points (near the discriminant, on a
/// pole) are skipped; any other evaluator error is a failure.
pub fn oracle_compare<E>(
    quantity: &str,
    symbolic: &RatFunc,
    plan: &SamplePlan,
    evaluator: E,
) -> OracleReport
where
    E: Fn(&Point) -> Result<Complex64>,
{
    let n = symbolic.n();
    let mut report = OracleReport {
        quantity: quantity.to_string(),
        symbolic: symbolic.to_string(),
        seed: plan.seed,
        requested: plan.count,
        valid: 0,
        skipped: 0,
        max_error: 0.0,
        pass: true,
        failures: Vec::new(),
        samples: Vec::new(),
    };
    let max_attempts = plan.count * 20;
    for (index, point) in plan.points(n).take(max_attempts).enumerate() {
        if report.valid == plan.count {
            break;
        }
        let Some(exact) = symbolic.eval(&point.slots()) else {
            report.skipped += 1;
            continue;
        };
        let numeric = match evaluator(&point) {
            Ok(z) => z,
            Err(e) if skippable(&e) => {
                report.skipped += 1;
                continue;
            }
            Err(e) => {
                report.pass = false;
                report
                    .failures
                    .push(format!("sample {index}: {}: {e}", e.name()));
                continue;
            }
        };
        let s = rational_to_f64(&exact);
        let error = (numeric - s).norm() / s.abs().max(1.0);
        let pass = error <= COMPARE_TOL;
        report.valid += 1;
        report.max_error = report.max_error.max(error);
        report.pass &= pass;
        report.samples.push(SampleRecord {
            index,
            a: point.a.iter().map(Rational::to_string).collect(),
            b: point.b.iter().map(Rational::to_string).collect(),
            symbolic: s,
            numeric_re: numeric.re,
            numeric_im: numeric.im,
            error,
            pass,
        });
    }
    if report.valid < plan.count {
        report.pass = false;
        report.failures.push(format!(
            "only {} valid samples out of {} requested",
            report.valid, plan.count
        ));
    }
    report
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub pass: bool,
    pub reports: Vec<OracleReport>,
}

/// Every exact trace quantity of `(V, h)` against its numeric counterpart:
/// power sums, function traces and trace-form coefficients up to `kmax`, the
/// coefficients of `F`, the Hankel determinant, and the coefficients of `H`.
pub fn agreement_suite(
    v: &Cycle,
    h: &MeroFunc,
    kmax: usize,
    plan: &SamplePlan,
) -> Result<SuiteReport> {
    let t = tilt(v)?;
    let d = t.degree();
    let mut reports = Vec::new();
    let md = plan.min_disc;

    let u = newton_power_sums(t.q(), kmax);
    let one = MeroFunc::one(v.n());
    for (k, uk) in u.iter().enumerate() {
        reports.push(oracle_compare(&format!("u{k}"), uk, plan, |p| {
            numeric_trace_with(v, &one, k as u32, p, md)
        }));
    }
    let traces = trace_function(v, h, kmax)?.v.expect("function traces");
    for (k, vk) in traces.iter().enumerate() {
        reports.push(oracle_compare(&format!("v{k}"), vk, plan, |p| {
            numeric_trace_with(v, h, k as u32, p, md)
        }));
    }
    let w = trace_form_coeffs(v, h, kmax)?;
    for (k, wk) in w.iter().enumerate() {
        reports.push(oracle_compare(&format!("w{k}"), wk, plan, |p| {
            numeric_trace_form_with(v, h, k as u32, p, md)
        }));
    }

    let reduced = v.components().iter().all(|(_, k)| *k == 1);
    if reduced {
        let pows = newton_power_sums(t.q(), 2 * d - 1);
        let f = solve_S(&pows)?;
        for j in 0..d {
            // coefficient of Y^j is (-1)^(d-j) e_(d-j)
            let c = f.coeff(j);
            reports.push(oracle_compare(&format!("F[{j}]"), &c, plan, |p| {
                let roots = cycle_roots(v, p, md)?;
                let e = numeric_elementary(&roots);
                let sign = if (d - j) % 2 == 0 { 1.0 } else { -1.0 };
                Ok(e[d - j] * sign)
            }));
        }
        let (det, _, _) = crate::reconstruct::hankel_check(&pows, t.q())?;
        reports.push(oracle_compare("detA", &det, plan, |p| {
            let roots = cycle_roots(v, p, md)?;
            let mut prod = Complex64::new(1.0, 0.0);
            for i in 0..roots.len() {
                for j in i + 1..roots.len() {
                    prod *= (roots[i] - roots[j]).powu(2);
                }
            }
            Ok(prod)
        }));
        let big_h = rho_map(v, h)?;
        for j in 0..d {
            let c = big_h.coeff(j);
            reports.push(oracle_compare(&format!("H[{j}]"), &c, plan, |p| {
                let roots = cycle_roots(v, p, md)?;
                let vals = roots
                    .iter()
                    .map(|&y| eval_mero(h, &p.line_at(y)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(interpolate(&roots, &vals)[j])
            }));
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    Ok(SuiteReport { pass, reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_ratfunc};

    fn q(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    fn point(a: i64, b: i64) -> Point {
        Point::new(vec![q(a)], vec![q(b)])
    }

    fn parabola() -> Cycle {
        Cycle::hypersurface(parse_poly("y^2 - x1", 1).unwrap()).unwrap()
    }

    fn mero(s: &str) -> MeroFunc {
        MeroFunc::from_ratfunc(&parse_ratfunc(s, 1).unwrap()).unwrap()
    }

    fn close(z: Complex64, x: f64) -> bool {
        (z - x).norm() <= 1e-12 * (1.0 + x.abs())
    }

    #[test]
    fn simple_roots() {
        let r = roots_of(&[-1.0, 0.0, 1.0]).unwrap();
        assert!(close(r[0], -1.0) && close(r[1], 1.0));
        let f = UniPolyK::from_poly_in_y(&parse_poly("y^2 - a1*y - b1", 1).unwrap());
        let r = roots(&f, &point(0, 1)).unwrap();
        assert!(close(r[0], -1.0) && close(r[1], 1.0));
    }

    #[test]
    fn cube_roots_of_eight() {
        let f = UniPolyK::from_poly_in_y(&parse_poly("y^3 - b1", 1).unwrap());
        let r = roots(&f, &point(0, 8)).unwrap();
        assert_eq!(r.len(), 3);
        for z in &r {
            assert!((z.powu(3) - 8.0).norm() <= 1e-12 * 9.0);
            assert!((z.norm() - 2.0).abs() < 1e-12);
        }
        assert!(close(r[2], 2.0));
    }

    #[test]
    fn guards() {
        let f = UniPolyK::from_poly_in_y(&parse_poly("y^2 - b1", 1).unwrap());
        assert!(matches!(
            roots(&f, &point(0, 0)),
            Err(Error::NearDiscriminant { .. })
        ));
        assert_eq!(
            roots_of(&[1.0, 0.0]),
            Err(Error::LeadingCoefficientVanishes)
        );
    }

    #[test]
    fn trace_examples() {
        let v = parabola();
        let z = numeric_trace(&v, &MeroFunc::one(1), 0, &point(1, 3)).unwrap();
        assert!(close(z, 2.0));
        let z = numeric_trace(&v, &mero("x1"), 0, &point(1, 1)).unwrap();
        assert!(close(z, 3.0));
        let z = numeric_trace(&v, &mero("1/(2*y)"), 0, &point(0, 1)).unwrap();
        assert!(z.norm() < 1e-12);
        let hit = numeric_trace(&v, &mero("1/(y-1)"), 0, &point(0, 1));
        assert_eq!(hit, Err(Error::PoleHit));
    }

    #[test]
    fn compare_reports() {
        let v = parabola();
        let one = MeroFunc::one(1);
        let u2 = parse_ratfunc("a1^2 + 2*b1", 1).unwrap();
        let plan = SamplePlan::new(7, 50);
        let eval = |p: &Point| numeric_trace(&v, &one, 2, p);
        let good = oracle_compare("u2", &u2, &plan, eval);
        assert!(good.pass && good.valid == 50, "{:?}", good.failures);
        assert!(good.max_error <= COMPARE_TOL);
        let again = oracle_compare("u2", &u2, &plan, eval);
        assert_eq!(
            serde_json::to_string(&good).unwrap(),
            serde_json::to_string(&again).unwrap()
        );
        let bad = oracle_compare("u2+1", &(&u2 + &RatFunc::one(1)), &plan, eval);
        assert!(!bad.pass);
        assert!(bad.samples.iter().all(|s| !s.pass));
    }

    #[test]
    fn suite_on_parabola() {
        let rep =
            agreement_suite(&parabola(), &mero("x1 + 1/y"), 3, &SamplePlan::new(1, 10)).unwrap();
        for r in &rep.reports {
            assert!(r.pass, "{} {:?} {}", r.quantity, r.failures, r.max_error);
        }
    }
}
