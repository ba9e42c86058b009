//! Seeded generators of reduced cycles and functions on them, used by the
//! test suites, benchmarks and the `verify` command.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::abelian::monomials_up_to;
use crate::poly::MultiPoly;
use crate::trace::{tilt, tilt_poly, Cycle, MeroFunc};
use crate::unipoly::{discriminant, inverse_mod};
use crate::var::VarId;
use crate::Rational;

fn small_int<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::from_integer(rng.gen_range(-bound..=bound).into())
}

/// `y^d` plus random lower-degree terms; optionally a top-degree `x_1^d`
/// term, which makes the tilt's leading coefficient depend on `a`.
pub fn random_component<R: Rng>(rng: &mut R, n: usize, d: usize, tilted_top: bool) -> MultiPoly {
    let mut f = MultiPoly::var_pow(n, VarId::y(), d as u32);
    if tilted_top {
        f = &f + &MultiPoly::var_pow(n, VarId::x(1), d as u32);
    }
    let lower = if d >= 1 {
        monomials_up_to(n, d as u32 - 1)
    } else {
        Vec::new()
    };
    let mut support: Vec<&MultiPoly> = lower.iter().collect();
    support.shuffle(rng);
    let terms = rng.gen_range(1..=support.len().clamp(1, 2 + n));
    for m in support.into_iter().take(terms) {
        let c = small_int(rng, 3);
        f = &f + &m.scale(&c);
    }
    // Keep the constant term nonzero so no component passes through the origin.
    let c0 = f.eval(&vec![Rational::from_integer(0.into()); VarId::count(n)]);
    if c0 == Rational::from_integer(0.into()) {
        f = &f + &MultiPoly::from_int(n, rng.gen_range(1..=3));
    }
    f
}

fn is_reduced(v: &Cycle) -> bool {
    match tilt(v) {
        Ok(t) => discriminant(t.q()).map(|d| !d.is_zero()).unwrap_or(false),
        Err(_) => false,
    }
}

/// A reduced cycle of vertical degree `d`, split into one or two components.
pub fn random_cycle<R: Rng>(rng: &mut R, n: usize, d: usize) -> Cycle {
    loop {
        let split = d >= 2 && rng.gen_bool(0.3);
        let comps = if split {
            let d1 = rng.gen_range(1..d);
            vec![
                (random_component(rng, n, d1, false), 1),
                (random_component(rng, n, d - d1, false), 1),
            ]
        } else {
            vec![(random_component(rng, n, d, false), 1)]
        };
        let v = Cycle::new(n, comps).expect("valid components");
        if is_reduced(&v) {
            return v;
        }
    }
}

/// A cycle whose tilt has a non-constant leading coefficient.
pub fn random_tilted_cycle<R: Rng>(rng: &mut R, n: usize, d: usize) -> Cycle {
    loop {
        let v = Cycle::hypersurface(random_component(rng, n, d, true)).expect("valid component");
        if is_reduced(&v) {
            return v;
        }
    }
}

/// A function on `v` whose polar locus meets no intersection point
/// generically: a random polynomial of degree at most 2, sometimes divided by
/// a random affine form.
pub fn random_function<R: Rng>(rng: &mut R, v: &Cycle, allow_poles: bool) -> MeroFunc {
    let n = v.n();
    let t = tilt(v).expect("cycle tilts");
    loop {
        let mons = monomials_up_to(n, 2);
        let mut num = MultiPoly::zero(n);
        for m in &mons {
            if rng.gen_bool(0.4) {
                num = &num + &m.scale(&small_int(rng, 3));
            }
        }
        if num.is_zero() || num.is_constant() {
            continue;
        }
        let den = if allow_poles && rng.gen_bool(0.4) {
            let mut l = MultiPoly::from_int(n, rng.gen_range(1..=3));
            for m in monomials_up_to(n, 1).iter().skip(1) {
                l = &l + &m.scale(&small_int(rng, 2));
            }
            l
        } else {
            MultiPoly::one(n)
        };
        let Ok(h) = MeroFunc::new(num, den) else {
            continue;
        };
        let tilted_den = tilt_poly(h.den());
        if tilted_den.degree() > Some(0) && inverse_mod(&tilted_den, t.q()).is_err() {
            continue;
        }
        if tilted_den.is_zero() {
            continue;
        }
        return h;
    }
}

/// The Fermat curve `y^d + x1^d - 1`, smooth of degree `d`.
pub fn fermat_curve(d: usize) -> MultiPoly {
    let n = 1;
    &(&MultiPoly::var_pow(n, VarId::y(), d as u32) + &MultiPoly::var_pow(n, VarId::x(1), d as u32))
        - &MultiPoly::one(n)
}
