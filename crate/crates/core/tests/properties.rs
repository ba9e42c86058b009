use abeltrace::{
    discriminant, divmod_monic, dual_membership_test, inverse_mod, parse_poly, parse_ratfunc,
    residue_sums, resultant, Monomial, MultiPoly, RatFunc, Rational, ResidueQuery, UniPolyK,
};
use proptest::prelude::*;

const N: usize = 1;

fn rat(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// Sparse polynomials in `x1, y, a1, b1` with small coefficients.
fn poly(max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, 4), -4i64..=4),
        0..=max_terms,
    )
    .prop_map(|terms| {
        MultiPoly::from_terms(
            N,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(e), rat(c))),
        )
    })
}

/// Polynomials in the parameters `a1, b1` only.
fn param_poly(max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((0u32..=2, 0u32..=2, -3i64..=3), 0..=max_terms).prop_map(|terms| {
        MultiPoly::from_terms(
            N,
            terms
                .into_iter()
                .map(|(a, b, c)| (Monomial::from_exponents(vec![0, 0, a, b]), rat(c))),
        )
    })
}

fn uni(coeffs: Vec<MultiPoly>) -> UniPolyK {
    UniPolyK::from_coeffs(N, coeffs.into_iter().map(RatFunc::from).collect())
}

/// Monic polynomials in `Y` of the given degree with parameter coefficients.
fn monic(degree: usize) -> impl Strategy<Value = UniPolyK> {
    prop::collection::vec(param_poly(2), degree).prop_map(|mut c| {
        c.push(MultiPoly::one(N));
        uni(c)
    })
}

fn any_uni(max_degree: usize) -> impl Strategy<Value = UniPolyK> {
    prop::collection::vec(param_poly(2), 0..=max_degree + 1).prop_map(uni)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly(2, 4), q in poly(2, 4), r in poly(2, 4)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &MultiPoly::one(N), p.clone());
    }

    #[test]
    fn exact_division_undoes_multiplication(p in poly(2, 4), q in poly(2, 3)) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).div_exact(&q), Some(p));
    }

    #[test]
    fn printing_round_trips(p in poly(3, 5), q in poly(2, 3)) {
        prop_assert_eq!(parse_poly(&p.to_string(), N).unwrap(), p.clone());
        prop_assume!(!q.is_zero());
        let r = RatFunc::new(p, q).unwrap();
        prop_assert_eq!(parse_ratfunc(&r.to_string(), N).unwrap(), r);
    }

    #[test]
    fn rational_functions_form_a_field(p in poly(2, 3), q in poly(2, 3), s in poly(2, 3)) {
        prop_assume!(!p.is_zero() && !q.is_zero() && !s.is_zero());
        let x = RatFunc::new(p.clone(), q.clone()).unwrap();
        let y = RatFunc::new(s.clone(), q.clone()).unwrap();
        prop_assert!((&x * &x.recip().unwrap()).is_one());
        prop_assert_eq!(&x + &y, RatFunc::new(&p + &s, q).unwrap());
    }

    #[test]
    fn division_recombines(g in any_uni(5), f in monic(3)) {
        let (q, r) = divmod_monic(&g, &f).unwrap();
        prop_assert!(r.degree().is_none_or(|d| d < 3));
        prop_assert_eq!(&(&q * &f) + &r, g);
    }

    #[test]
    fn modular_inverse(g in any_uni(2), f in monic(2)) {
        if let Ok(inv) = inverse_mod(&g, &f) {
            let (_, r) = divmod_monic(&(&inv * &g), &f).unwrap();
            prop_assert_eq!(r, UniPolyK::one(N));
        }
    }

    #[test]
    fn discriminant_of_a_product(f in monic(2), g in monic(1)) {
        let fg = &f * &g;
        let res = resultant(&f, &g).unwrap();
        let expected = &(&discriminant(&f).unwrap() * &discriminant(&g).unwrap()) * &(&res * &res);
        prop_assert_eq!(discriminant(&fg).unwrap(), expected);
    }

    #[test]
    fn residues_are_linear(g1 in any_uni(3), g2 in any_uni(3), f in monic(2), c in -3i64..=3) {
        let sums = |g: &UniPolyK| {
            residue_sums(&ResidueQuery::polynomial(g.clone(), f.clone()).unwrap(), 4).unwrap()
        };
        let c = RatFunc::constant(N, rat(c));
        let combo = &g1 + &g2.scale(&c);
        let lhs = sums(&combo);
        let rhs: Vec<RatFunc> = sums(&g1)
            .iter()
            .zip(sums(&g2))
            .map(|(x, y)| x + &(&y * &c))
            .collect();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn residue_duality(f in monic(2), q in any_uni(2), r in any_uni(1), divisible in any::<bool>()) {
        let h = if divisible { &q * &f } else { &(&q * &f) + &r };
        let expected = divisible || r.is_zero();
        prop_assert_eq!(dual_membership_test(&h, &f).unwrap(), expected);
    }
}
