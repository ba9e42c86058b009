//! Multivariate gcd by content / primitive-part recursion with a subresultant
//! remainder sequence in the main variable.

use std::collections::BTreeMap;

use crate::poly::{Monomial, MultiPoly};
use crate::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Greatest common divisor, normalized to integer coefficients with unit
/// content and positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    p.try_same_dim(q)
        .expect("gcd of polynomials in different dimensions");
    let g = gcd_rec(p, q);
    g.integer_normalized().1
}

pub fn lcm(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    if p.is_zero() || q.is_zero() {
        return MultiPoly::zero(p.n());
    }
    let g = gcd(p, q);
    let cofactor = q.div_exact(&g).expect("gcd divides its argument");
    (p * &cofactor).integer_normalized().1
}

/// gcd up to a nonzero rational factor.
fn gcd_rec(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    let n = p.n();
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one(n);
    }
    if let Some(g) = trivial_divisor(p, q) {
        return g;
    }
    if let Some(g) = subset_gcd(p, q) {
        return g;
    }

    // A common factor can only involve variables present in both.
    let nvars = p.nvars();
    let main = (0..nvars)
        .filter(|&s| p.uses_slot(s) && q.uses_slot(s))
        .min_by_key(|&s| (p.degree_in_slot(s).max(q.degree_in_slot(s)), usize::MAX - s));
    let Some(main) = main else {
        return MultiPoly::one(n);
    };

    let pc = p.coeffs_in_slot(main);
    let qc = q.coeffs_in_slot(main);
    let cont_p = content(&pc);
    let cont_q = content(&qc);
    let cont = gcd_rec(&cont_p, &cont_q);
    if coprime_in_main(&pc, &qc) {
        return cont;
    }

    let pp: Vec<MultiPoly> = pc.iter().map(|c| exact(c, &cont_p)).collect();
    let qp: Vec<MultiPoly> = qc.iter().map(|c| exact(c, &cont_q)).collect();

    let g = subresultant_gcd(pp, qp);
    let g_cont = content(&g);
    let g_prim: Vec<MultiPoly> = g.iter().map(|c| exact(c, &g_cont)).collect();
    let g_poly = MultiPoly::from_coeffs_in_slot(n, main, &g_prim);
    &cont * &g_poly
}

/// When one argument involves strictly fewer variables, the gcd divides it
/// and hence every coefficient of the other with respect to the extra
/// variables.
fn subset_gcd(p: &MultiPoly, q: &MultiPoly) -> Option<MultiPoly> {
    let nvars = p.nvars();
    let in_p: Vec<bool> = (0..nvars).map(|s| p.uses_slot(s)).collect();
    let in_q: Vec<bool> = (0..nvars).map(|s| q.uses_slot(s)).collect();
    let q_in_p = (0..nvars).all(|s| !in_q[s] || in_p[s]);
    let p_in_q = (0..nvars).all(|s| !in_p[s] || in_q[s]);
    let (small, big, extra) = if q_in_p && !p_in_q {
        (
            q,
            p,
            (0..nvars)
                .filter(|&s| in_p[s] && !in_q[s])
                .collect::<Vec<_>>(),
        )
    } else if p_in_q && !q_in_p {
        (
            p,
            q,
            (0..nvars)
                .filter(|&s| in_q[s] && !in_p[s])
                .collect::<Vec<_>>(),
        )
    } else {
        return None;
    };
    let mut groups: BTreeMap<Vec<u32>, Vec<(Monomial, Rational)>> = BTreeMap::new();
    for (m, c) in big.terms() {
        let key: Vec<u32> = extra.iter().map(|&s| m.exponents()[s]).collect();
        let mut e = m.exponents().to_vec();
        for &s in &extra {
            e[s] = 0;
        }
        groups
            .entry(key)
            .or_default()
            .push((Monomial::from_exponents(e), c.clone()));
    }
    let mut coeffs: Vec<MultiPoly> = groups
        .into_values()
        .map(|t| MultiPoly::from_terms(p.n(), t))
        .collect();
    coeffs.sort_by_key(|c| (c.num_terms(), c.total_degree()));
    let mut acc = small.clone();
    for c in &coeffs {
        if acc.is_constant() {
            break;
        }
        acc = gcd_rec(&acc, c);
    }
    Some(if acc.is_constant() {
        MultiPoly::one(p.n())
    } else {
        acc
    })
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(x: u64, y: u64) -> u64 {
    ((x as u128 * y as u128) % PRIME as u128) as u64
}

fn pow_mod(mut x: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, x);
        }
        x = mul_mod(x, x);
        e >>= 1;
    }
    r
}

fn inv_mod(x: u64) -> u64 {
    pow_mod(x, PRIME - 2)
}

fn rational_mod(c: &Rational) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let num = c.numer().mod_floor(&p).to_u64()?;
    let den = c.denom().mod_floor(&p).to_u64()?;
    (den != 0).then(|| mul_mod(num, inv_mod(den)))
}

/// Value modulo the prime at a fixed pseudo-random point.
fn eval_mod(p: &MultiPoly, point: &[u64]) -> Option<u64> {
    let mut acc = 0u64;
    for (m, c) in p.terms() {
        let mut t = rational_mod(c)?;
        for (s, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = mul_mod(t, pow_mod(point[s], e as u64));
            }
        }
        acc = (acc + t) % PRIME;
    }
    Some(acc)
}

fn degree_of_gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let lb_inv = inv_mod(*b.last().unwrap());
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = mul_mod(*a.last().unwrap(), lb_inv);
            for (i, &bc) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + PRIME - mul_mod(f, bc)) % PRIME;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Sound one-sided test: the images of `p` and `q` modulo a prime at a
/// point where both leading coefficients survive are coprime, so the true
/// gcd has degree zero in the main variable.
fn coprime_in_main(pc: &[MultiPoly], qc: &[MultiPoly]) -> bool {
    let nvars = pc[0].nvars();
    for attempt in 0..2u64 {
        let point: Vec<u64> = (0..nvars as u64)
            .map(|s| (1_000_003 * (s + 1) + 7919 * attempt + 12345) % PRIME)
            .collect();
        let image = |cs: &[MultiPoly]| {
            cs.iter()
                .map(|c| eval_mod(c, &point))
                .collect::<Option<Vec<u64>>>()
        };
        let (Some(a), Some(b)) = (image(pc), image(qc)) else {
            continue;
        };
        if a.last() == Some(&0) || b.last() == Some(&0) {
            continue;
        }
        return degree_of_gcd_mod(a, b) == 0;
    }
    false
}

/// Cheap exits: one argument divides the other.
fn trivial_divisor(p: &MultiPoly, q: &MultiPoly) -> Option<MultiPoly> {
    let (small, big) = if p.num_terms() <= q.num_terms() {
        (p, q)
    } else {
        (q, p)
    };
    if small.total_degree() <= big.total_degree() && big.div_exact(small).is_some() {
        return Some(small.clone());
    }
    None
}

fn content(coeffs: &[MultiPoly]) -> MultiPoly {
    let mut nonzero = coeffs.iter().filter(|c| !c.is_zero());
    let Some(first) = nonzero.next() else {
        return MultiPoly::zero(coeffs.first().map_or(1, |c| c.n()));
    };
    // Start from the sparsest coefficient to keep intermediate gcds small.
    let mut sorted: Vec<&MultiPoly> = std::iter::once(first).chain(nonzero).collect();
    sorted.sort_by_key(|c| (c.num_terms(), c.total_degree()));
    let mut acc = sorted[0].clone();
    for c in &sorted[1..] {
        if acc.is_constant() {
            break;
        }
        acc = gcd_rec(&acc, c);
    }
    if acc.is_constant() {
        MultiPoly::one(acc.n())
    } else {
        acc
    }
}

fn exact(p: &MultiPoly, d: &MultiPoly) -> MultiPoly {
    p.div_exact(d)
        .expect("exact division failed inside gcd computation")
}

fn deg(u: &[MultiPoly]) -> usize {
    u.len() - 1
}

fn trim(u: &mut Vec<MultiPoly>) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut r = a.to_vec();
    let db = deg(b);
    let lb = &b[db];
    let mut e = deg(a) as i64 - db as i64 + 1;
    trim(&mut r);
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = lb * c;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            r[i + shift] = &r[i + shift] - &t;
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &f * c;
        }
    }
    r
}

fn subresultant_gcd(a: Vec<MultiPoly>, b: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let n = a[0].n();
    let (mut a, mut b) = if deg(&a) >= deg(&b) { (a, b) } else { (b, a) };
    let mut g = MultiPoly::one(n);
    let mut h = MultiPoly::one(n);
    loop {
        let delta = (deg(&a) - deg(&b)) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if deg(&r) == 0 {
            return vec![MultiPoly::one(n)];
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.iter().map(|c| exact(c, &divisor)).collect();
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            exact(&g.pow(delta), &h.pow(delta - 1))
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn recovers_planted_common_factor() {
        let g = p("a1*y - b2 + 3");
        let u = &g * &p("y^2 + a2*b1 - 1");
        let v = &g * &p("x1*y + b1^2");
        assert_eq!(gcd(&u, &v), g.integer_normalized().1);
    }

    #[test]
    fn coprime_inputs_give_one() {
        assert!(gcd(&p("y^2 - x1"), &p("y - x1")).is_one());
        assert!(gcd(&p("a1"), &p("b1")).is_one());
    }

    #[test]
    fn gcd_with_zero_and_constants() {
        let f = p("2*y - 4*x2");
        assert_eq!(gcd(&f, &MultiPoly::zero(2)).to_string(), "2*x2-y");
        assert!(gcd(&f, &p("7")).is_one());
    }

    #[test]
    fn lcm_of_overlapping_products() {
        let u = &p("y - 1") * &p("y + a1");
        let v = &p("y - 1") * &p("b1");
        let l = lcm(&u, &v);
        assert!(l.div_exact(&u).is_some());
        assert!(l.div_exact(&v).is_some());
        assert_eq!(l.total_degree(), Some(3));
    }
}
