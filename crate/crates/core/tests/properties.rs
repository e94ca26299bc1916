//! Cross-module property tests: ring axioms, probabilistic-vs-exact
//! equality agreement, the quotient-rule product law, and the entry-wise
//! rational-function route through the rt decomposition identity.

use defcalc_core::glrep::{SiteActions, TensorContext};
use defcalc_core::kzdd::{build_kz, Construction, KzContext, OperatorKind};
use defcalc_core::poly::SparsePoly;
use defcalc_core::rational::Rational;
use defcalc_core::ratfunc::RatFunc;

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn term(c: Rational, x: u32, y: u32) -> SparsePoly {
    SparsePoly::constant(c)
        .mul(&SparsePoly::symbol("x").pow(x))
        .mul(&SparsePoly::symbol("y").pow(y))
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=10).prop_map(|(n, d)| Rational::new(n, d))
}

fn arb_poly() -> impl Strategy<Value = SparsePoly> {
    proptest::collection::vec(((0u32..4, 0u32..4), arb_rational()), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(SparsePoly::zero(), |acc, ((x, y), c)| {
                acc.add(&term(c, x, y))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn add_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn mul_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn mul_commutative(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn distributive(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!b.is_zero());
        let prod = a.mul(&b);
        prop_assert_eq!(prod.div_exact(&b).expect("constructed multiple"), a);
    }
}

fn random_ratfunc(rng: &mut ChaCha8Rng) -> RatFunc {
    let mut poly = |max_terms: usize| {
        let n = rng.gen_range(0..=max_terms);
        let mut acc = SparsePoly::zero();
        for _ in 0..n {
            let c = Rational::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9));
            let x = rng.gen_range(0u32..3);
            let y = rng.gen_range(0u32..3);
            acc = acc.add(&term(c, x, y));
        }
        acc
    };
    let num = poly(4);
    let mut den = poly(3);
    if den.is_zero() {
        den = SparsePoly::one();
    }
    RatFunc::new(num, den).expect("nonzero denominator")
}

#[test]
fn probabilistic_equality_agrees_with_exact_on_100_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..100 {
        let a = random_ratfunc(&mut rng);
        let b = random_ratfunc(&mut rng);
        let exact = a.equal_exact(&b);
        let sampled = a.equal_probabilistic(&b, 1000 + i, 3).expect("samplable");
        assert_eq!(exact, sampled, "pair {i}");
        // a function always agrees with itself
        assert!(a.equal_probabilistic(&a, i, 3).unwrap());
    }
}

#[test]
fn quotient_rule_product_law_on_50_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for i in 0..50 {
        let a = random_ratfunc(&mut rng);
        let b = random_ratfunc(&mut rng);
        for var in ["x", "y"] {
            let lhs = a.mul(&b).derivative(var);
            let rhs = a.derivative(var).mul(&b).add(&a.mul(&b.derivative(var)));
            assert!(lhs.equal_exact(&rhs), "pair {i}, d/d{var}");
        }
    }
}

#[test]
fn rt_decomposition_entrywise_by_cross_multiplication() {
    // the substitution- and direct-form rt KZ operators at M = N = 2 agree
    // entry by entry under the cross-multiplying exact equality, the ground
    // truth independent of the operator-algebra subtraction path
    let tensor = TensorContext::vector_power(2, 2).unwrap();
    let ctx = KzContext::symbolic(SiteActions::from_tensor(&tensor)).unwrap();
    for site in 1..=2 {
        let sub = build_kz(
            &ctx,
            OperatorKind::RationalTrigonometric,
            site,
            Construction::Substitution,
        )
        .unwrap();
        let direct = build_kz(
            &ctx,
            OperatorKind::RationalTrigonometric,
            site,
            Construction::Direct,
        )
        .unwrap();
        let mut exponents: Vec<Vec<u32>> = sub
            .terms()
            .map(|(e, _)| e.clone())
            .chain(direct.terms().map(|(e, _)| e.clone()))
            .collect();
        exponents.sort();
        exponents.dedup();
        assert!(!exponents.is_empty());
        for exp in exponents {
            let lhs = sub.coeff(&exp);
            let rhs = direct.coeff(&exp);
            for i in 0..lhs.rows() {
                for j in 0..lhs.cols() {
                    assert!(
                        lhs.get(i, j).equal_exact(rhs.get(i, j)),
                        "site {site}, entry ({i},{j})"
                    );
                }
            }
        }
    }
}
