use num::{BigInt, BigRational};
use proptest::prelude::*;
use qgarnier::quiver::q12;
use qgarnier::ratfield::Var;
use qgarnier::seed::{compile, Automorphism, Step, Word};
use qgarnier::{ExactSeed, SymbolicSeed};

fn positive_point() -> impl Strategy<Value = Vec<BigRational>> {
    proptest::collection::vec((1i64..50, 1i64..50), 12)
        .prop_map(|v| v.into_iter().map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_mutation_is_an_involution(y in positive_point(), k in 1usize..=12) {
        let s = ExactSeed::new(q12(), y);
        let m = Step::Mutation(k);
        prop_assert_eq!(s.apply_step(&m).unwrap().apply_step(&m).unwrap(), s);
    }

    #[test]
    fn words_commute_with_evaluation(y in positive_point(), ks in proptest::collection::vec(1usize..=12, 1..4)) {
        let w = Word::new(ks.into_iter().map(Step::Mutation).collect());
        let sym = SymbolicSeed::initial(q12()).apply_word(&w).unwrap();
        let num = ExactSeed::new(q12(), y.clone()).apply_word(&w).unwrap();
        prop_assert_eq!(&sym.quiver, &num.quiver);
        let at = |v: Var| y[v.vertex().unwrap() - 1].clone();
        for (f, want) in sym.coeffs.iter().zip(&num.coeffs) {
            prop_assert_eq!(&f.eval(&at).unwrap(), want);
        }
    }
}

#[test]
fn word_inverse_undoes_the_word() {
    let w = Word::new(vec![Step::Mutation(3), Step::transposition(1, 2), Step::Reversal, Step::cycle(&[4, 5, 6])]);
    let s = SymbolicSeed::initial(q12());
    assert!(s.apply_word(&w.then(&w.inverse())).unwrap().equals(&s));
    assert_eq!(w.mutation_count(), 1);
}

#[test]
fn compiled_automorphism_composes() {
    let rep = qgarnier::weylrep::catalog("Q12").unwrap();
    let w = rep.word("r0").unwrap();
    let a = compile(&w, &q12()).unwrap();
    assert!(!a.equals(&Automorphism::identity(12)));
    assert!(a.compose(&a).unwrap().equals(&Automorphism::identity(12)));
    let m = Word::new(vec![Step::Mutation(1)]);
    assert!(compile(&m, &q12()).is_err());
}

#[test]
fn step_syntax_round_trips() {
    let w = Word::parse_steps("m3 (1,2) iota (4,5,6)^2").unwrap();
    assert_eq!(Word::parse_steps(&w.to_string()).unwrap(), w);
    assert!(Word::parse_steps("mu(").is_err());
}
