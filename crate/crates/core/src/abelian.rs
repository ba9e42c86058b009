//! Abelian forms of maximal degree `P / ∂_y f dx` on hypersurfaces, the
//! Castelnuovo numbers and the trace coefficients of `q`-forms on the slice
//! `a = 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::binomial;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Monomial, MultiPoly};
use crate::ratfunc::RatFunc;
use crate::reconstruct::pi_map;
use crate::residue::{residue_sums, ResidueQuery};
use crate::trace::{germ_degree, tilt, trace_form, Cycle, MeroFunc};
use crate::unipoly::{discriminant, UniPolyK};
use crate::var::VarId;
use crate::Rational;

/// Exact evidence that the trace of one basis form vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct NullityCertificate {
    pub generator: MultiPoly,
    /// `w_0..w_n`, all zero.
    pub w: Vec<RatFunc>,
    /// `deg P + n <= d - 2`, so every `Y^k P(aY + b, Y)`, `k <= n`, has degree
    /// below `d - 1` and no residue.
    pub degree_bound: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbelianBasis {
    pub f: MultiPoly,
    pub n: usize,
    pub d: usize,
    pub generators: Vec<MultiPoly>,
    pub dimension: usize,
    pub certificates: Vec<NullityCertificate>,
    /// The trace vectors on `a = 0` of the basis forms are linearly
    /// independent over the rationals.
    pub independent: bool,
}

impl AbelianBasis {
    /// `P / (∂_y f) dx1^...^dxn` for each generator.
    pub fn forms(&self) -> Vec<String> {
        let dy = self.f.derivative(VarId::y());
        let dx: Vec<String> = (1..=self.n).map(|i| format!("dx{i}")).collect();
        self.generators
            .iter()
            .map(|p| format!("({p})/({dy}) {}", dx.join("^")))
            .collect()
    }
}

/// All monomials in `x, y` of total degree at most `max_degree`, ascending.
pub fn monomials_up_to(n: usize, max_degree: u32) -> Vec<MultiPoly> {
    let nv = VarId::count(n);
    let coord_slots: Vec<usize> = (1..=n)
        .map(|i| VarId::x(i).slot(n))
        .chain(std::iter::once(VarId::y().slot(n)))
        .collect();
    let mut out = Vec::new();
    let mut exps = vec![0u32; coord_slots.len()];
    fill(&mut exps, 0, max_degree, &mut |e| {
        let mut full = vec![0u32; nv];
        for (s, &v) in coord_slots.iter().zip(e) {
            full[*s] = v;
        }
        out.push(Monomial::from_exponents(full));
    });
    out.sort();
    out.into_iter()
        .map(|m| MultiPoly::monomial(n, m, Rational::from_integer(1.into())))
        .collect()
}

fn fill(exps: &mut [u32], pos: usize, budget: u32, emit: &mut dyn FnMut(&[u32])) {
    if pos == exps.len() {
        emit(exps);
        return;
    }
    for e in 0..=budget {
        exps[pos] = e;
        fill(exps, pos + 1, budget - e, emit);
    }
    exps[pos] = 0;
}

/// Basis of the abelian `n`-forms on `{f = 0}` with nullity and
/// independence certificates.
pub fn abelian_basis(f: &MultiPoly, n: usize) -> Result<AbelianBasis> {
    if f.n() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: f.n(),
        });
    }
    let v = Cycle::hypersurface(f.clone())?;
    let d = f.total_degree().unwrap_or(0) as usize;
    let germ = germ_degree(f).ok_or(Error::ImproperIntersection { component: 0 })?;
    if germ != d {
        return Err(Error::DegreeDropAtInfinity {
            germ_degree: germ,
            global_degree: d,
        });
    }
    let t = tilt(&v)?;
    if discriminant(t.q())?.is_zero() {
        return Err(Error::NotReduced);
    }
    let generators = if d >= n + 2 {
        monomials_up_to(n, (d - n - 2) as u32)
    } else {
        Vec::new()
    };
    let expected = binomial(d as u128 - 1, n as u128 + 1) as usize;
    if generators.len() != expected {
        return Err(Error::ConsistencyCheck(format!(
            "{} generators, expected {expected}",
            generators.len()
        )));
    }
    let dy = f.derivative(VarId::y());
    let mut certificates = Vec::with_capacity(generators.len());
    let mut t_vectors = Vec::with_capacity(generators.len());
    let full: Vec<usize> = (1..=n).collect();
    for p in &generators {
        let h = MeroFunc::new(p.clone(), dy.clone())?;
        let w = trace_form(&v, &h)?.w;
        if !w.iter().all(RatFunc::is_zero) {
            return Err(Error::ConsistencyCheck(format!(
                "trace of ({p})/({dy}) dx does not vanish"
            )));
        }
        let degree_bound = p.total_degree().unwrap_or(0) as usize + n + 2 <= d;
        certificates.push(NullityCertificate {
            generator: p.clone(),
            w,
            degree_bound,
        });
        let mut hmap = BTreeMap::new();
        hmap.insert(MultiIndex::new(full.clone(), n)?, h);
        let t = qform_trace_coeffs(f, n, n, &hmap, d - 1)?;
        t_vectors.push(t.into_values().collect::<Vec<_>>());
    }
    let independent = rational_rank(&t_vectors) == generators.len();
    Ok(AbelianBasis {
        f: f.clone(),
        n,
        d,
        dimension: generators.len(),
        generators,
        certificates,
        independent,
    })
}

/// Rank over the rationals of vectors of rational functions: each column
/// is put over a common denominator and expanded into monomial coefficients.
fn rational_rank(vectors: &[Vec<RatFunc>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let n = vectors[0][0].n();
    let cols = vectors[0].len();
    let mut rows: Vec<Vec<RatFunc>> = vec![Vec::new(); vectors.len()];
    for c in 0..cols {
        let den = vectors.iter().fold(MultiPoly::one(n), |acc, v| {
            crate::gcd::lcm(&acc, v[c].den())
        });
        let numerators: Vec<MultiPoly> = vectors
            .iter()
            .map(|v| v[c].num() * &den.div_exact(v[c].den()).expect("lcm is a multiple"))
            .collect();
        let mut support: Vec<&Monomial> = numerators
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m))
            .collect();
        support.sort();
        support.dedup();
        for (row, p) in rows.iter_mut().zip(&numerators) {
            for m in &support {
                let c = p
                    .terms()
                    .find(|(mm, _)| mm == m)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(|| Rational::from_integer(0.into()));
                row.push(RatFunc::constant(n, c));
            }
        }
    }
    if rows[0].is_empty() {
        return 0;
    }
    linalg::rank(&rows)
}

/// `π_q(d, 2, n) = C(n, q) C(d + n - q - 1, n + 1)`.
pub fn castelnuovo_bound(d: u64, n: u64, q: u64) -> Result<u128> {
    if d == 0 || q > n {
        return Err(Error::OutOfRange(format!(
            "need 0 <= q <= n and d >= 1 (got d={d}, n={n}, q={q})"
        )));
    }
    let (d, n, q) = (d as u128, n as u128, q as u128);
    Ok(binomial(n, q) * binomial(d + n - q - 1, n + 1))
}

/// A strictly increasing multi-index `I ⊂ {1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        let increasing = indices.windows(2).all(|w| w[0] < w[1]);
        let in_range = indices.iter().all(|&i| (1..=n).contains(&i));
        if !increasing || !in_range {
            return Err(Error::InvalidInput(format!(
                "multi-index {indices:?} must be strictly increasing within 1..={n}"
            )));
        }
        Ok(MultiIndex(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `F(Y, 0, b)`, the monic cycle polynomial on the slice `a = 0`.
pub fn vertical_slice(v: &Cycle) -> Result<UniPolyK> {
    let f = pi_map(v)?;
    let mut out = f;
    for i in 1..=v.n() {
        out = out.specialize(VarId::a(i), &Rational::from_integer(0.into()))?;
    }
    Ok(out)
}

/// `t_(I,k)(b) = Res[Y^k h_I(b, Y) ∂_Y F(Y, 0, b) dY / F(Y, 0, b)]` for every
/// given `I` and `k = 0..=kmax`.
pub fn qform_trace_coeffs(
    f: &MultiPoly,
    n: usize,
    q: usize,
    h: &BTreeMap<MultiIndex, MeroFunc>,
    kmax: usize,
) -> Result<BTreeMap<(MultiIndex, usize), RatFunc>> {
    if q > n {
        return Err(Error::OutOfRange(format!("q = {q} exceeds n = {n}")));
    }
    let v = Cycle::hypersurface(f.clone())?;
    let f0 = vertical_slice(&v)?;
    let df0 = f0.derivative_y();
    let on_slice: Vec<(VarId, MultiPoly)> = (1..=n)
        .map(|i| (VarId::x(i), MultiPoly::var(n, VarId::b(i))))
        .collect();
    let mut out = BTreeMap::new();
    for (index, hi) in h {
        if index.len() != q {
            return Err(Error::InvalidInput(format!(
                "multi-index {index} has length {}, expected {q}",
                index.len()
            )));
        }
        let num = UniPolyK::from_poly_in_y(&hi.num().substitute_many(&on_slice));
        let den = UniPolyK::from_poly_in_y(&hi.den().substitute_many(&on_slice));
        let query = ResidueQuery::new(&num * &df0, den, f0.clone())?;
        let vals = residue_sums(&query, kmax).map_err(|e| match e {
            Error::NotCoprime { .. } => Error::PolarLocusMeetsCycle,
            other => other,
        })?;
        for (k, val) in vals.into_iter().enumerate() {
            out.insert((index.clone(), k), val);
        }
    }
    Ok(out)
}
