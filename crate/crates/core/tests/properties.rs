mod common;

use common::{p, unimodular, vars, yz_change};
use elephantine::cyclo::{monomial_character, normalize_type, semi_invariant_character, QuotientType};
use elephantine::duval::classify_germ;
use elephantine::locdef::{milnor_number, Truncation};
use elephantine::poly::univariate::UniPoly;
use elephantine::poly::{rational, Monomial, Poly, Valuation};
use elephantine::wblow::{strict_transform, WeightVector};
use elephantine::wps::weighted_monomials;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;

fn poly3(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, 3), -6i64..=6), 0..=max_terms)
        .prop_map(|ts| Poly::from_terms(vars(3), ts.into_iter().map(|(e, c)| (Monomial::new(e), rational(c)))))
}

fn nonzero_poly3() -> impl Strategy<Value = Poly> {
    poly3(4, 5).prop_filter("nonzero", |f| !f.is_zero())
}

fn quotient() -> impl Strategy<Value = QuotientType> {
    (2u64..=30)
        .prop_flat_map(|r| prop::collection::vec(0..r as i64, 3).prop_map(move |w| QuotientType::new(r, &w).unwrap()))
}

fn finite(v: Valuation<BigRational>) -> Option<BigRational> {
    match v {
        Valuation::Finite(q) => Some(q),
        Valuation::Infinity => None,
    }
}

fn units(r: u64) -> Vec<u64> {
    (1..r).filter(|k| num_integer::gcd(*k, r) == 1).collect()
}

fn scaled(q: &QuotientType, k: u64) -> QuotientType {
    let w: Vec<i64> = q.weights().iter().map(|a| (a * k % q.order()) as i64).collect();
    QuotientType::new(q.order(), &w).unwrap()
}

fn corpus() -> Vec<Poly> {
    [
        "x^2+y^2+z^2",
        "x^2+y^2+z^5",
        "x^2+y^2*z+z^3",
        "x^2+y^2*z+z^6",
        "x^2+y^3+z^4",
        "x^2+y^3+y*z^3",
        "x^2+y^3+z^5",
        "x^2+y^3+z^6",
        "x^3+y^3+z^3",
    ]
    .iter()
    .map(|s| p(s))
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(f in poly3(3, 4), g in poly3(3, 4), h in poly3(3, 4)) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn display_round_trips(f in poly3(5, 6)) {
        prop_assert_eq!(Poly::parse(&f.to_string(), &vars(3)).unwrap(), f);
    }

    #[test]
    fn weight_is_additive(f in poly3(4, 4), g in poly3(4, 4), v in prop::collection::vec(1u64..6, 3), r in 1u64..5) {
        let lhs = finite((&f * &g).weight(&v, r));
        let rhs = finite(f.weight(&v, r)).zip(finite(g.weight(&v, r))).map(|(a, b)| a + b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalize_is_idempotent_and_orbit_constant(q in quotient()) {
        let n = normalize_type(&q);
        prop_assert_eq!(normalize_type(&n), n.clone());
        for k in units(q.order()) {
            prop_assert_eq!(normalize_type(&scaled(&q, k)), n.clone());
        }
        let brute = units(q.order())
            .into_iter()
            .map(|k| {
                let mut w: Vec<u64> = scaled(&q, k).weights().to_vec();
                w.sort();
                w
            })
            .min()
            .unwrap();
        prop_assert_eq!(n.weights(), &brute[..]);
    }

    #[test]
    fn quotient_type_round_trips(q in quotient()) {
        prop_assert_eq!(q.to_string().parse::<QuotientType>().unwrap(), q);
    }

    #[test]
    fn characters_multiply(q in quotient(), a in prop::collection::vec(0u32..5, 3), b in prop::collection::vec(0u32..5, 3)) {
        let (ma, mb) = (Monomial::new(a), Monomial::new(b));
        let ca = monomial_character(&ma, &q);
        let cb = monomial_character(&mb, &q);
        let cab = monomial_character(&ma.mul(&mb), &q);
        prop_assert_eq!(cab.value, (ca.value + cb.value) % q.order());
        let f = Poly::monomial(vars(3), ma, rational(1));
        prop_assert_eq!(semi_invariant_character(&f, &q).unwrap(), Some(ca));
    }

    #[test]
    fn weight_vector_round_trips(b in prop::collection::vec(1u64..20, 1..5), r in 1u64..9) {
        let v = WeightVector::new(b, r).unwrap();
        prop_assert_eq!(v.to_string().parse::<WeightVector>().unwrap(), v);
    }

    #[test]
    fn strict_transform_divides_exactly(
        f in nonzero_poly3(),
        v in prop::collection::vec(1u64..5, 3).prop_filter("primitive", |v| v.iter().fold(0, |g, &b| num_integer::gcd(g, b)) == 1),
        i in 0usize..3,
    ) {
        let w = WeightVector::integral(&v).unwrap();
        let (g, wt) = strict_transform(&f, &w, i).unwrap();
        prop_assert!(g.terms().any(|(m, _)| m.exponents()[i] == 0));
        let xi = Poly::var(vars(3), i);
        let images: Vec<Poly> = (0..3)
            .map(|j| {
                let lead = if j == i { Poly::one(vars(3)) } else { Poly::var(vars(3), j) };
                &lead * &xi.pow(v[j] as u32)
            })
            .collect();
        let k: u32 = wt.to_integer().try_into().unwrap();
        prop_assert_eq!(f.substitute(&images).unwrap(), &g * &xi.pow(k));
    }

    #[test]
    fn gcd_divides_both(a in prop::collection::vec(-4i64..=4, 1..6), b in prop::collection::vec(-4i64..=4, 1..6), c in prop::collection::vec(-4i64..=4, 1..4)) {
        let up = |v: &[i64]| UniPoly::new(v.iter().map(|&x| rational(x)).collect());
        let common = up(&c);
        let f = UniPoly::new(mul(&up(&a), &common));
        let g = UniPoly::new(mul(&up(&b), &common));
        let d = f.gcd(&g);
        if !d.is_zero() {
            prop_assert!(f.div_rem(&d).1.is_zero());
            prop_assert!(g.div_rem(&d).1.is_zero());
            if !common.is_zero() {
                prop_assert!(d.div_rem(&common.monic()).1.is_zero());
            }
        }
    }

    #[test]
    fn weighted_monomials_have_the_degree(w in prop::collection::vec(1u64..6, 1..5), k in 0i64..15) {
        let ms = weighted_monomials(&w, k);
        prop_assert!(ms.iter().all(|m| m.weighted_degree(&w) == k as u64));
        let mut sorted = ms.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), ms.len());
    }

    #[test]
    fn truncation_round_trips(n in 1u32..40, extra in 0u32..20) {
        let t: Truncation = format!("{n},{}", n + extra).parse().unwrap();
        prop_assert_eq!(t.to_string().parse::<Truncation>().unwrap(), t);
    }
}

fn mul(a: &UniPoly, b: &UniPoly) -> Vec<BigRational> {
    let (a, b) = (a.coeffs(), b.coeffs());
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classifier_is_invariant_under_yz_changes(k in 0usize..9, seed in any::<u64>()) {
        let f = &corpus()[k];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = yz_change(f, unimodular(&mut rng));
        let a = classify_germ(f, Truncation::default()).unwrap().verdict;
        let b = classify_germ(&g, Truncation::default()).unwrap().verdict;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn milnor_number_is_invariant_under_yz_changes(k in 0usize..9, seed in any::<u64>()) {
        let f = &corpus()[k];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = yz_change(f, unimodular(&mut rng));
        prop_assert_eq!(milnor_number(f, 24).unwrap(), milnor_number(&g, 24).unwrap());
    }
}
