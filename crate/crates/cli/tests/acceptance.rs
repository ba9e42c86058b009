//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use abeltrace::corpus::{fermat_curve, random_cycle, random_function, random_tilted_cycle};
use abeltrace::linalg::determinant;
use abeltrace::oracle::cycle_roots;
use abeltrace::{
    abel_inverse_from_cycle, abelian_basis, agreement_suite, castelnuovo_bound, discriminant,
    numeric_trace, numeric_trace_form, oracle_compare, parse_poly, parse_ratfunc, pi_inverse,
    pi_map, rho_inverse, rho_map, shock_check, tilt, trace_form_coeffs, trace_function, wood_test,
    Cycle, DegeneracyCause, Error, MeroFunc, MultiPoly, Point, RatFunc, SamplePlan, VarId,
};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_607;
const COMPARE_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Twenty reduced cycles, n in {1, 2}, vertical degree 1..=4, some with a
/// leading coefficient depending on `a`.
fn cycle_corpus() -> Vec<Cycle> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..20)
        .map(|i| {
            let n = 1 + i % 2;
            let d = 1 + (i / 2) % 4;
            if i % 5 == 4 && d >= 2 {
                random_tilted_cycle(&mut rng, n, d)
            } else {
                random_cycle(&mut rng, n, d)
            }
        })
        .collect()
}

fn hankel_determinant(u: &[RatFunc], d: usize) -> RatFunc {
    let a: Vec<Vec<RatFunc>> = (0..d)
        .map(|k| (0..d).map(|j| u[k + j].clone()).collect())
        .collect();
    determinant(&a)
}

fn criterion_1() -> Outcome {
    let corpus = cycle_corpus();
    for v in &corpus {
        let t = tilt(v).map_err(|e| e.to_string())?;
        let d = t.degree();
        let u = trace_function(v, &MeroFunc::one(v.n()), 2 * d - 2)
            .map_err(|e| e.to_string())?
            .u;
        let det = hankel_determinant(&u, d);
        let disc = discriminant(t.q()).map_err(|e| e.to_string())?;
        check((&det - &disc).is_zero(), || {
            format!(
                "det A - Disc Q = {} for f = {}",
                &det - &disc,
                v.defining_polynomial()
            )
        })?;
        check(!disc.is_zero(), || {
            format!("corpus cycle not reduced: {}", v.defining_polynomial())
        })?;
    }
    Ok(format!(
        "{} cycles, det A - Disc Q == 0 exactly",
        corpus.len()
    ))
}

fn criterion_2() -> Outcome {
    let corpus = cycle_corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut identities = 0;
    for v in &corpus {
        let n = v.n();
        let d = tilt(v).map_err(|e| e.to_string())?.degree();
        let h = random_function(&mut rng, v, n == 1);
        let w = trace_form_coeffs(v, &h, 2 * d + 1).map_err(|e| e.to_string())?;
        check(shock_check(&w), || {
            format!(
                "w-sequence of h = {h} on {} breaks the shock identity",
                v.defining_polynomial()
            )
        })?;
        let u = trace_function(v, &h, 2 * d + 1)
            .map_err(|e| e.to_string())?
            .u;
        for k in 1..=2 * d {
            for i in 1..=n {
                let lhs = u[k].derivative(VarId::a(i)).scale(&rat(1, k as i64));
                let rhs = u[k + 1]
                    .derivative(VarId::b(i))
                    .scale(&rat(1, k as i64 + 1));
                check(lhs == rhs, || {
                    format!("u-relation fails at k = {k}, i = {i}")
                })?;
                identities += 1;
            }
        }
        identities += n * (2 * d + 1);
    }
    Ok(format!(
        "{identities} exact identities on w_k and u_k, k <= 2d"
    ))
}

fn rat(p: i64, q: i64) -> abeltrace::Rational {
    abeltrace::Rational::new(p.into(), q.into())
}

fn normalized(p: &MultiPoly) -> MultiPoly {
    p.integer_normalized().1
}

/// `f1/g1 - f2/g2` vanishes on `f = 0`, checked by exact divisibility.
fn congruent_mod(h1: &MeroFunc, h2: &MeroFunc, f: &MultiPoly) -> bool {
    let diff = &(h1.num() * h2.den()) - &(h2.num() * h1.den());
    diff.is_zero() || diff.div_exact(f).is_some()
}

fn complex_slots(n: usize, x: &[Complex64], y: Complex64) -> Vec<Complex64> {
    let mut s = vec![Complex64::new(0.0, 0.0); VarId::count(n)];
    for (i, xi) in x.iter().enumerate() {
        s[VarId::x(i + 1).slot(n)] = *xi;
    }
    s[VarId::y().slot(n)] = y;
    s
}

fn magnitude(p: &MultiPoly, at: &[Complex64]) -> f64 {
    p.terms()
        .map(|(m, c)| {
            let mono = MultiPoly::monomial(p.n(), m.clone(), rat(1, 1));
            abeltrace::poly::rational_to_f64(c).abs() * mono.eval_complex(at).norm()
        })
        .sum::<f64>()
        .max(1.0)
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut numeric_points = 0;
    let mut exact_cases = 0;
    for (i, (n, d)) in [
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 3),
        (2, 2),
        (2, 3),
        (2, 2),
        (2, 3),
    ]
    .into_iter()
    .enumerate()
    {
        let v = random_cycle(&mut rng, n, d);
        let h = random_function(&mut rng, &v, n == 1);
        let f = v.defining_polynomial();
        let big_f = pi_map(&v).map_err(|e| e.to_string())?;
        let big_h = rho_map(&v, &h).map_err(|e| e.to_string())?;
        let f_back = pi_inverse(&big_f).map_err(|e| e.to_string())?;
        let h_back = rho_inverse(&big_f, &big_h).map_err(|e| e.to_string())?;
        check(normalized(&f_back) == normalized(&f), || {
            format!("case {i}: pi_inverse gives {f_back}, expected {f}")
        })?;
        if n == 1 {
            check(congruent_mod(&h_back, &h, &f), || {
                format!("case {i}: rho_inverse gives {h_back}, expected {h} mod {f}")
            })?;
            exact_cases += 1;
            continue;
        }
        // Points of f = 0 on random lines x = a y + b.
        let plan = SamplePlan::new(SEED + i as u64, 20);
        let mut found = 0;
        for p in plan.points(n).take(400) {
            if found == 20 {
                break;
            }
            let Ok(ys) = cycle_roots(&v, &p, plan.min_disc) else {
                continue;
            };
            let y = ys[0];
            let x: Vec<Complex64> = (0..n)
                .map(|j| {
                    let a = abeltrace::poly::rational_to_f64(&p.a[j]);
                    let b = abeltrace::poly::rational_to_f64(&p.b[j]);
                    Complex64::new(a, 0.0) * y + b
                })
                .collect();
            let at = complex_slots(n, &x, y);
            let hv = h.num().eval_complex(&at) / h.den().eval_complex(&at);
            let hb = h_back.num().eval_complex(&at) / h_back.den().eval_complex(&at);
            let fv = f_back.eval_complex(&at).norm() / magnitude(&f_back, &at);
            let err = (hv - hb).norm() / hv.norm().max(1.0);
            check(fv <= COMPARE_TOL && err <= COMPARE_TOL, || {
                format!("case {i}: residual {fv:e}, function error {err:e} at {p:?}")
            })?;
            found += 1;
        }
        check(found == 20, || {
            format!("case {i}: only {found} on-surface points")
        })?;
        numeric_points += found;
    }
    Ok(format!(
        "{exact_cases} exact n = 1 round trips, {numeric_points} on-surface points for n = 2 within 1e-9"
    ))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut cases = 0;
    let shapes = [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3)];
    for i in 0..20 {
        let (n, d) = shapes[i % shapes.len()];
        let v = random_cycle(&mut rng, n, d);
        let h = random_function(&mut rng, &v, n == 1);
        let pair = abel_inverse_from_cycle(&v, &h).map_err(|e| format!("case {i}: {e}"))?;
        let f = pi_map(&v).map_err(|e| e.to_string())?;
        let big_h = rho_map(&v, &h).map_err(|e| e.to_string())?;
        check(pair.f == f && pair.h == big_h, || {
            format!(
                "case {i}: recovered ({}, {}), expected ({f}, {big_h})",
                pair.f, pair.h
            )
        })?;
        cases += 1;
    }
    let v = Cycle::new(
        1,
        vec![
            (parse_poly("y - x1", 1).unwrap(), 1),
            (parse_poly("y^2 + x1 - 3", 1).unwrap(), 1),
        ],
    )
    .map_err(|e| e.to_string())?;
    let h = MeroFunc::polynomial(parse_poly("y - x1", 1).unwrap()).unwrap();
    match abel_inverse_from_cycle(&v, &h) {
        Err(Error::DegenerateStildeSystem {
            cause: Some(DegeneracyCause::FormVanishesOnComponent { .. }),
            ..
        }) => {}
        other => return Err(format!("degenerate input not diagnosed: {other:?}")),
    }
    Ok(format!(
        "{cases} exact recoveries; vanishing-on-component input diagnosed"
    ))
}

fn criterion_5() -> Outcome {
    let corpus = cycle_corpus();
    for v in &corpus {
        let f = pi_map(v).map_err(|e| e.to_string())?;
        let d = f.degree().unwrap();
        let sigma = -&f.coeff(d - 1);
        check(wood_test(&sigma, d), || {
            format!("sigma_(d-1) = {sigma} judged non-affine")
        })?;
    }
    let crafted = [("b1^2", 1), ("1/b1", 1), ("a1*b1*b2", 2)];
    for (text, n) in crafted {
        let u1 = parse_ratfunc(text, n).map_err(|e| e.to_string())?;
        check(!wood_test(&u1, 2), || format!("{text} judged affine in b"))?;
    }
    Ok(format!(
        "{} corpus members affine, {} crafted inputs rejected",
        corpus.len(),
        crafted.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut sizes = Vec::new();
    for d in 3..=5usize {
        let f = fermat_curve(d);
        let basis = abelian_basis(&f, 1).map_err(|e| e.to_string())?;
        let expected = (d - 1) * (d - 2) / 2;
        check(
            basis.dimension == expected && basis.generators.len() == expected,
            || format!("d = {d}: dimension {} != {expected}", basis.dimension),
        )?;
        check(basis.independent, || {
            format!("d = {d}: basis not independent")
        })?;
        let v = Cycle::hypersurface(f.clone()).unwrap();
        let dy = f.derivative(VarId::y());
        for (p, cert) in basis.generators.iter().zip(&basis.certificates) {
            check(
                cert.w.len() == 2 && cert.w.iter().all(RatFunc::is_zero),
                || format!("d = {d}: nonzero exact trace for {p}"),
            )?;
            let h = MeroFunc::new(p.clone(), dy.clone()).map_err(|e| e.to_string())?;
            for k in 0..=1u32 {
                let plan = SamplePlan::new(SEED + d as u64, 20);
                let report = oracle_compare(&format!("w{k}"), &RatFunc::zero(1), &plan, |pt| {
                    numeric_trace_form(&v, &h, k, pt)
                });
                check(report.pass && report.valid == 20, || {
                    format!(
                        "d = {d}, P = {p}, k = {k}: max |w| = {:e}",
                        report.max_error
                    )
                })?;
            }
        }
        sizes.push(basis.dimension);
    }
    Ok(format!(
        "basis sizes {sizes:?}; every w_0, w_1 zero exactly and on 20 samples"
    ))
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for n in 0..=3u64 {
        for q in 0..=n {
            for d in 1..=6u64 {
                let got = castelnuovo_bound(d, n, q).map_err(|e| e.to_string())?;
                let (d1, n1, q1) = (d as u128, n as u128, q as u128);
                let want = binomial(n1, q1) * binomial(d1 + n1 - q1 - 1, n1 + 1);
                check(got == want, || {
                    format!("pi_{q}({d}, 2, {n}) = {got}, expected {want}")
                })?;
                if q == n {
                    check(got == binomial(d1 - 1, n1 + 1), || {
                        format!("q = n mismatch at d = {d}")
                    })?;
                }
                checked += 1;
            }
        }
    }
    for (d, size) in [(3, 1), (4, 3), (5, 6)] {
        check(castelnuovo_bound(d, 1, 1) == Ok(size), || {
            format!("d = {d}: not the basis size")
        })?;
    }
    Ok(format!(
        "{checked} values match the direct binomial formula"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut quantities = 0;
    for (n, d, poles) in [
        (1, 2, true),
        (1, 3, true),
        (1, 4, false),
        (2, 2, false),
        (2, 3, false),
    ] {
        let v = random_cycle(&mut rng, n, d);
        let h = random_function(&mut rng, &v, poles);
        let plan = SamplePlan::new(SEED + 80 + n as u64 * 10 + d as u64, 50);
        let first = agreement_suite(&v, &h, 2 * d - 1, &plan).map_err(|e| e.to_string())?;
        let second = agreement_suite(&v, &h, 2 * d - 1, &plan).map_err(|e| e.to_string())?;
        for r in &first.reports {
            check(r.pass && r.valid == 50, || {
                format!(
                    "{} on f = {}: max error {:e}, {:?}",
                    r.quantity,
                    v.defining_polynomial(),
                    r.max_error,
                    r.failures
                )
            })?;
        }
        check(first == second, || "reports differ between runs".into())?;
        quantities += first.reports.len();
        // Sensitivity control: a perturbed value must fail everywhere.
        let u = trace_function(&v, &MeroFunc::one(n), 2)
            .map_err(|e| e.to_string())?
            .u;
        let bumped = &u[2] + &RatFunc::one(n);
        let one = MeroFunc::one(n);
        let report = oracle_compare("u2+1", &bumped, &SamplePlan::new(SEED, 10), |p: &Point| {
            numeric_trace(&v, &one, 2, p)
        });
        check(
            !report.pass && report.samples.iter().all(|s| !s.pass),
            || "perturbed quantity passed".into(),
        )?;
    }
    Ok(format!(
        "{quantities} quantities x 50 samples within 1e-9; reports identical across runs"
    ))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_abeltrace"))
        .args(args)
        .env_remove("ABELTRACE_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.success(), || {
        format!(
            "{args:?} exited with {}: {}",
            out.status,
            String::from_utf8_lossy(&out.stdout)
        )
    })?;
    Ok(out.stdout)
}

fn criterion_9() -> Outcome {
    let commands: [&[&str]; 3] = [
        &[
            "trace", "--n", "1", "--f", "y^2 - x1", "--h", "x1", "--kmax", "2",
        ],
        &["castelnuovo", "--d", "4", "--n", "2", "--q", "1"],
        &["wood", "--u1", "b1^2"],
    ];
    let mut outputs = Vec::new();
    for args in commands {
        let a = run_cli(args)?;
        let b = run_cli(args)?;
        check(a == b, || format!("{args:?}: outputs differ between runs"))?;
        outputs.push(String::from_utf8(a).map_err(|e| e.to_string())?);
    }
    let trace: serde_json::Value = serde_json::from_str(&outputs[0]).map_err(|e| e.to_string())?;
    check(
        trace["v"] == serde_json::json!(["a1^2+2*b1", "a1^3+3*a1*b1", "a1^4+4*a1^2*b1+2*b1^2"]),
        || format!("trace output {}", outputs[0]),
    )?;
    check(outputs[1] == "{\"pi_q\":8}\n", || {
        format!("castelnuovo output {}", outputs[1])
    })?;
    check(outputs[2] == "{\"affine_in_b\":false}\n", || {
        format!("wood output {}", outputs[2])
    })?;
    Ok("three documented commands byte-identical across two runs".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Hankel determinant equals discriminant", criterion_1),
        ("shock-wave identities", criterion_2),
        ("Pi/rho round trips", criterion_3),
        ("Abel-inverse pipeline", criterion_4),
        ("Wood's test", criterion_5),
        ("abelian dimension", criterion_6),
        ("Castelnuovo bound", criterion_7),
        ("symbolic/numeric agreement", criterion_8),
        ("CLI conformance", criterion_9),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "{} of 9 criteria passed in {:.1}s",
        9 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
