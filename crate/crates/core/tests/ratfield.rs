use num::{BigInt, BigRational};
use proptest::prelude::*;
use qgarnier::ratfield::{gcd, random_identity_test, Polynomial, RationalFunction, Var};

fn arb_poly() -> impl Strategy<Value = RationalFunction> {
    proptest::collection::vec((-4i64..=4, 0u32..3, 0u32..3), 1..4).prop_map(|terms| {
        let mut f = RationalFunction::int(0);
        for (c, a, b) in terms {
            let m = RationalFunction::monomial(
                &BigRational::from_integer(BigInt::from(c)),
                [(Var::y(1), a as i64), (Var::y(2), b as i64)],
            );
            f = &f + &m;
        }
        f
    })
}

fn arb_rf() -> impl Strategy<Value = RationalFunction> {
    (arb_poly(), arb_poly()).prop_filter_map("nonzero denominator", |(n, d)| n.checked_div(&d).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
        prop_assert!((&(&a + &b) + &c).equals(&(&a + &(&b + &c))));
        prop_assert!((&a * &(&b + &c)).equals(&(&(&a * &b) + &(&a * &c))));
        prop_assert!((&a * &b).equals(&(&b * &a)));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a / &a).equals(&RationalFunction::int(1)));
        }
    }

    #[test]
    fn reduced_inputs_give_reduced_results(a in arb_rf(), b in arb_rf()) {
        let (a, b) = (a.reduce(), b.reduce());
        prop_assert!((&a * &b).is_reduced());
        prop_assert!((&a + &b).is_reduced());
    }

    #[test]
    fn display_parses_back(a in arb_rf()) {
        let back = RationalFunction::parse(&a.to_string()).unwrap();
        prop_assert!(back.equals(&a));
    }

    #[test]
    fn gcd_divides_both(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assume!(!c.is_zero());
        let (pa, pb) = ((&a * &c).num().clone(), (&b * &c).num().clone());
        let g = gcd(&pa, &pb);
        prop_assume!(!g.is_zero());
        let gf = RationalFunction::from_poly(g);
        for p in [pa, pb] {
            let quotient = RationalFunction::from_poly(p).checked_div(&gf).unwrap();
            prop_assert!(quotient.den().is_constant());
        }
    }
}

#[test]
fn randomized_identity_agrees_with_exact_equality() {
    let f = RationalFunction::parse("(y1^2 - y2^2)/(y1 - y2)").unwrap();
    let g = RationalFunction::parse("y1 + y2").unwrap();
    assert!(f.equals(&g));
    assert!(random_identity_test(&f, &g, 10, 7).unwrap());
    let h = RationalFunction::parse("y1 + y2 + 1/(y1*y2*y3)").unwrap();
    assert!(!random_identity_test(&f, &h, 10, 7).unwrap());
}

#[test]
fn limit_and_valuation() {
    let f = RationalFunction::parse("(eps + y1)/(1 + eps*y2)").unwrap();
    assert_eq!(f.valuation(Var::EPS), Some(0));
    assert!(f.limit_zero(Var::EPS).unwrap().equals(&RationalFunction::y(1)));
    let g = RationalFunction::parse("y1/eps").unwrap();
    assert_eq!(g.valuation(Var::EPS), Some(-1));
    assert!(g.limit_zero(Var::EPS).is_err());
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(RationalFunction::y(1).checked_div(&RationalFunction::int(0)).is_err());
    assert!(RationalFunction::new(Polynomial::one(), Polynomial::zero()).is_err());
}
