//! Fraction-free (Bareiss) elimination over the field of rational functions.
//!
//! Each row is first scaled by the lcm of its denominators so the elimination
//! runs in the polynomial ring, where every Bareiss division is exact.

use crate::gcd::lcm;
use crate::poly::MultiPoly;
use crate::ratfunc::RatFunc;

pub type Matrix = Vec<Vec<RatFunc>>;

/// Clears denominators row by row; returns the polynomial rows and the
/// multipliers used.
fn clear_rows(rows: &[Vec<RatFunc>]) -> (Vec<Vec<MultiPoly>>, Vec<MultiPoly>) {
    let mut out = Vec::with_capacity(rows.len());
    let mut scales = Vec::with_capacity(rows.len());
    for row in rows {
        let n = row[0].n();
        let mut l = MultiPoly::one(n);
        for e in row {
            if !e.den().is_one() && l.div_exact(e.den()).is_none() {
                l = lcm(&l, e.den());
            }
        }
        let prow = row
            .iter()
            .map(|e| {
                if e.den().is_one() {
                    &l * e.num()
                } else {
                    let cof = l.div_exact(e.den()).expect("lcm is a multiple");
                    &cof * e.num()
                }
            })
            .collect();
        let prow: Vec<MultiPoly> = prow;
        let den = prow.iter().fold(num_bigint::BigInt::from(1), |acc, e| {
            num_integer::Integer::lcm(&acc, &e.content_parts().0)
        });
        let k = crate::Rational::from_integer(den);
        out.push(prow.iter().map(|e| e.scale(&k)).collect());
        scales.push(l.scale(&k));
    }
    (out, scales)
}

/// Forward Bareiss elimination on the first `pivot_cols` columns. Returns
/// the swap parity, or `None` when a pivot is missing (singular).
fn bareiss(m: &mut [Vec<MultiPoly>], pivot_cols: usize) -> Option<bool> {
    let rows = m.len();
    let cols = m[0].len();
    let n = m[0][0].n();
    let mut prev = MultiPoly::one(n);
    let mut odd = false;
    for k in 0..pivot_cols {
        let p = (k..rows).find(|&i| !m[i][k].is_zero())?;
        if p != k {
            m.swap(p, k);
            odd = !odd;
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MultiPoly::zero(n);
        }
        prev = m[k][k].clone();
    }
    Some(odd)
}

pub fn determinant(a: &[Vec<RatFunc>]) -> RatFunc {
    let size = a.len();
    assert!(
        size > 0 && a.iter().all(|r| r.len() == size),
        "square matrix required"
    );
    let n = a[0][0].n();
    let (mut m, scales) = clear_rows(a);
    let Some(odd) = bareiss(&mut m, size) else {
        return RatFunc::zero(n);
    };
    let mut det = m[size - 1][size - 1].clone();
    if odd {
        det = -det;
    }
    let scale = scales.iter().fold(MultiPoly::one(n), |acc, s| &acc * s);
    RatFunc::new(det, scale).expect("row multipliers are nonzero")
}

/// Unique solution of `a x = rhs`, or `None` when `a` is singular.
pub fn solve(a: &[Vec<RatFunc>], rhs: &[RatFunc]) -> Option<Vec<RatFunc>> {
    solve_with_det(a, rhs).1
}

/// `det a` together with the unique solution of `a x = rhs` when it exists.
pub fn solve_with_det(a: &[Vec<RatFunc>], rhs: &[RatFunc]) -> (RatFunc, Option<Vec<RatFunc>>) {
    let size = a.len();
    assert!(size > 0 && rhs.len() == size && a.iter().all(|r| r.len() == size));
    let n = a[0][0].n();
    let augmented: Vec<Vec<RatFunc>> = a
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            row.iter()
                .cloned()
                .chain(std::iter::once(r.clone()))
                .collect()
        })
        .collect();
    let (mut m, scales) = clear_rows(&augmented);
    let Some(odd) = bareiss(&mut m, size) else {
        return (RatFunc::zero(n), None);
    };
    let det = m[size - 1][size - 1].clone();
    // det * x_i are polynomials (Cramer numerators up to sign).
    let mut numer: Vec<MultiPoly> = vec![MultiPoly::zero(n); size];
    for i in (0..size).rev() {
        let mut acc = &det * &m[i][size];
        for j in i + 1..size {
            acc = &acc - &(&m[i][j] * &numer[j]);
        }
        numer[i] = acc
            .div_exact(&m[i][i])
            .expect("fraction-free back substitution is exact");
    }
    let x = numer
        .into_iter()
        .map(|x| RatFunc::new(x, det.clone()).expect("nonzero determinant"))
        .collect();
    let scale = scales.iter().fold(MultiPoly::one(n), |acc, s| &acc * s);
    let signed = if odd { -det } else { det };
    let det_a = RatFunc::new(signed, scale).expect("row multipliers are nonzero");
    (det_a, Some(x))
}

/// Rank over the field of rational functions (any shape).
pub fn rank(a: &[Vec<RatFunc>]) -> usize {
    if a.is_empty() || a[0].is_empty() {
        return 0;
    }
    let (mut m, _) = clear_rows(a);
    let rows = m.len();
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            for j in c + 1..cols {
                m[i][j] = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
            }
            m[i][c] = MultiPoly::zero(m[i][c].n());
            // Keep entries small: strip each row's rational content.
            let content = row_content(&m[i]);
            if let Some(c) = content {
                for e in m[i].iter_mut() {
                    *e = e.scale(&c);
                }
            }
        }
        r += 1;
    }
    r
}

fn row_content(row: &[MultiPoly]) -> Option<crate::Rational> {
    let nonzero: Vec<&MultiPoly> = row.iter().filter(|e| !e.is_zero()).collect();
    if nonzero.is_empty() {
        return None;
    }
    let all: Vec<crate::Rational> = nonzero
        .iter()
        .flat_map(|e| e.terms().map(|(_, c)| c.clone()))
        .collect();
    let lead = all[0].clone();
    Some(crate::poly::normalizing_factor(all.iter(), &lead))
}

/// `m[i][j] = seq[i + j]`, `0 <= i, j < size`.
pub fn hankel(seq: &[RatFunc], size: usize) -> Matrix {
    (0..size)
        .map(|i| (0..size).map(|j| seq[i + j].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ratfunc;

    fn r(s: &str) -> RatFunc {
        parse_ratfunc(s, 1).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Matrix {
        rows.iter()
            .map(|row| row.iter().map(|s| r(s)).collect())
            .collect()
    }

    #[test]
    fn determinant_with_fractions_and_pivoting() {
        let m = mat(&[&["0", "1/a1"], &["b1", "y"]]);
        assert_eq!(determinant(&m), r("-b1/a1"));
        let hank = mat(&[&["2", "a1"], &["a1", "a1^2+2*b1"]]);
        assert_eq!(determinant(&hank), r("a1^2+4*b1"));
    }

    #[test]
    fn solve_matches_substitution() {
        let m = mat(&[&["2", "a1"], &["a1", "a1^2+2*b1"]]);
        let rhs = vec![r("a1"), r("a1^2+2*b1")];
        let (det, x) = solve_with_det(&m, &rhs);
        assert_eq!(det, r("a1^2+4*b1"));
        assert_eq!(x.unwrap(), vec![r("0"), r("1")]);
        let rhs = vec![r("1"), r("0")];
        let x = solve(&m, &rhs).unwrap();
        for (row, b) in m.iter().zip(&rhs) {
            let lhs = &(&row[0] * &x[0]) + &(&row[1] * &x[1]);
            assert_eq!(&lhs, b);
        }
    }

    #[test]
    fn singular_systems() {
        let m = mat(&[&["a1", "b1"], &["2*a1", "2*b1"]]);
        assert!(solve(&m, &[r("1"), r("2")]).is_none());
        assert!(determinant(&m).is_zero());
        assert_eq!(rank(&m), 1);
        assert_eq!(rank(&mat(&[&["0", "0"], &["0", "0"]])), 0);
        assert_eq!(rank(&mat(&[&["1", "a1", "b1"], &["y", "0", "1"]])), 2);
    }
}
