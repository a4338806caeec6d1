use num::BigRational;
use qgarnier::quiver::CATALOG;
use qgarnier::ratfield::{LaurentMonomial, RationalFunction};
use qgarnier::report::Status;
use qgarnier::seed::{compile, Word};
use qgarnier::weylrep::*;

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn assert_all_pass(results: &[qgarnier::report::CheckResult]) {
    let bad: Vec<String> =
        results.iter().filter(|c| !c.is_pass()).map(|c| format!("{} {:?}", c.id, c.detail)).collect();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn action_tables_hold_exactly() {
    for name in CATALOG {
        let rep = catalog(name).unwrap();
        assert!(!rep.tables.is_empty(), "{name}");
        assert_all_pass(&verify_action_table(&rep, Mode::Exact, &opts()));
    }
}

#[test]
fn randomized_tables_agree_on_q11() {
    let rep = catalog("Q11").unwrap();
    assert_all_pass(&verify_action_table(&rep, Mode::Randomized, &VerifyOptions { trials: 3, seed: 7 }));
}

#[test]
fn relations_hold() {
    for name in CATALOG {
        let rep = catalog(name).unwrap();
        assert_all_pass(&verify_relations(&rep, Mode::Randomized, &opts()));
    }
}

#[test]
fn squares_are_exactly_trivial_on_q12() {
    let rep = catalog("Q12").unwrap();
    for g in ["r0", "r3", "s0", "s1", "s'0", "s'1"] {
        let c = verify_decomposition(&rep, &format!("{g}^2"), "", Mode::Exact, &opts());
        assert!(c.is_pass(), "{g}");
    }
}

#[test]
fn decompositions_hold() {
    for name in CATALOG {
        let rep = catalog(name).unwrap();
        for (a, b) in &rep.decompositions {
            assert!(verify_decomposition(&rep, a, b, Mode::Randomized, &opts()).is_pass(), "{name}: {a} = {b}");
        }
    }
}

#[test]
fn a_wrong_decomposition_is_caught_with_a_witness() {
    let rep = catalog("Q12").unwrap();
    let c = verify_decomposition(&rep, "tau_c", "pi2 s0 s'0 r0", Mode::Randomized, &opts());
    assert_eq!(c.status, Status::Fail);
    assert_eq!(c.witness.unwrap().len(), 12);
}

#[test]
fn every_tabulated_reduction_holds() {
    let claims = all_reduction_claims();
    assert_eq!(claims.iter().filter(|c| c.target_rep == "Q11").count(), 26);
    for c in &claims {
        let r = verify_reduction(c, Mode::Randomized, &opts());
        assert!(r.is_pass(), "{} {:?}", r.id, r.detail);
    }
}

#[test]
fn short_reductions_hold_exactly() {
    for target in ["Q11", "Q101", "Q103"] {
        for c in reduction_claims(target).unwrap() {
            if let ClaimSide::Word(w) = &c.source {
                if w.starts_with('r') && w.len() <= 8 {
                    assert!(verify_reduction(&c, Mode::Exact, &opts()).is_pass(), "{}", c.id());
                }
            }
        }
    }
}

#[test]
fn fractional_root_rows_use_fifth_powers() {
    let c = reduction_claims("Q101").unwrap().into_iter().find(|c| c.target == ClaimSide::root("gamma")).unwrap();
    assert_eq!(c.power, 5);
    let c = reduction_claims("Q101").unwrap().into_iter().find(|c| c.target == ClaimSide::root("beta0")).unwrap();
    assert_eq!(c.power, 1);
}

#[test]
fn mislabelled_reduction_fails() {
    let mut c = reduction_claims("Q101").unwrap().remove(0);
    c.target = ClaimSide::Word("r1".into());
    assert_eq!(verify_reduction(&c, Mode::Randomized, &opts()).status, Status::Fail);
    let mut c = reduction_claims("Q101").unwrap().into_iter().find(|c| !c.is_word()).unwrap();
    c.target = ClaimSide::root("alpha1");
    assert_eq!(verify_reduction(&c, Mode::Exact, &opts()).status, Status::Fail);
}

#[test]
fn tau_c_diverges_under_five_to_eight() {
    let r = verify_divergence("tau_c", "Q103", &opts());
    assert!(r.is_pass(), "{:?}", r.detail);
    // The other translations of Q11 do converge there.
    assert!(!verify_divergence("V", "Q103", &opts()).is_pass());
}

#[test]
fn pi1_fourth_fixes_roots_not_coefficients_on_q103() {
    let r = verify_roots_fixed_coefficients_moved(&catalog("Q103").unwrap(), "pi1^4");
    assert!(r.is_pass(), "{:?}", r.detail);
    let r = verify_roots_fixed_coefficients_moved(&catalog("Q11").unwrap(), "r0^2");
    assert!(!r.is_pass());
}

#[test]
fn gamma_is_invariant_under_simple_reflections() {
    for name in CATALOG {
        let rep = catalog(name).unwrap();
        let gammas: Vec<&str> =
            rep.roots.iter().map(|(n, _)| n.as_str()).filter(|n| n.starts_with("gamma")).collect();
        for fam in &rep.families {
            for i in 0..fam.cartan.size() {
                for g in &gammas {
                    let img = root_image(&rep, &fam.generator(i), g).unwrap();
                    assert_eq!(&img, rep.root(g).unwrap(), "{name} {} {g}", fam.generator(i));
                }
            }
        }
    }
}

fn q(k: i64) -> LaurentMonomial {
    let rep = catalog("Q104").unwrap();
    rep.root("q").unwrap().pow(k)
}

#[test]
fn q104_translation_word_order() {
    // Read left to right as printed, r_{i+1}...r_{i+1} r_i undoes the T_i of the table.
    let rep = catalog("Q104").unwrap();
    let a0 = rep.root("alpha0").unwrap().clone();
    assert_eq!(root_image(&rep, "T0", "alpha0").unwrap(), a0.mul(&q(2)));
    assert_eq!(root_image(&rep, "r1 r2 r3 r4 r3 r2 r1 r0", "alpha0").unwrap(), a0.mul(&q(-2)));
}

#[test]
fn q103_v_fixes_gamma() {
    let rep = catalog("Q103").unwrap();
    assert_eq!(&root_image(&rep, "V", "gamma").unwrap(), rep.root("gamma").unwrap());
}

#[test]
fn standard_convention_is_the_only_consistent_reading() {
    let o = VerifyOptions { trials: 2, seed: 3 };
    for conv in Convention::all() {
        let rep = catalog_with("Q11", conv);
        let ok = match rep {
            Ok(rep) => verify_action_table(&rep, Mode::Randomized, &o).iter().all(|c| c.is_pass()),
            Err(_) => false,
        };
        assert_eq!(ok, conv == Convention::STANDARD, "{conv:?}");
    }
}

fn f(s: &str) -> RationalFunction {
    RationalFunction::parse(s).unwrap()
}

fn y3(i: usize, j: usize, k: usize) -> String {
    format!("(1 + y{i} + y{i}*y{j} + y{i}*y{j}*y{k})")
}

fn y2(i: usize, j: usize) -> String {
    format!("(1 + y{i} + y{i}*y{j})")
}

#[test]
fn r0_r5_r0_on_q12_matches_the_closed_form() {
    let rep = catalog("Q12").unwrap();
    let a = compile(&rep.word("r0 r5 r0").unwrap(), &rep.quiver).unwrap();
    let (a1, b1, c1, d1) = (y3(1, 12, 2), y3(12, 2, 11), y3(2, 11, 1), y3(11, 1, 12));
    let y1y12 = &a.images[0] * &a.images[11];
    assert!(y1y12.equals(&f(&format!("{a1}*{b1}/(y2*y12*{c1}*{d1})"))));
    let expected = [
        (2, format!("{c1}/(y11*{a1})")),
        (3, format!("y1*y3*y11*{b1}/{d1}")),
        (4, format!("y2*y4*y12*{d1}/{b1}")),
        (9, format!("y1*y9*y12*{c1}/{a1}")),
        (10, format!("y2*y10*y11*{a1}/{c1}")),
        (11, format!("{d1}/(y1*{b1})")),
    ];
    for (k, e) in expected {
        assert!(a.image(k).equals(&f(&e)), "y{k}: {}", a.image(k));
    }
    for k in 5..=8 {
        assert!(a.image(k).equals(&RationalFunction::y(k)));
    }
}

#[test]
fn r0_on_q11_matches_the_closed_form() {
    let rep = catalog("Q11").unwrap();
    let a = compile(rep.generator("r0").unwrap(), &rep.quiver).unwrap();
    let (p, r, s) = (y2(1, 2), y2(2, 11), y2(11, 1));
    let expected = [
        (1, format!("{p}/(y2*{s})")),
        (2, format!("{r}/(y11*{p})")),
        (3, format!("y1*y3*y11*{r}/{s}")),
        (4, format!("y2*y4*{s}/{r}")),
        (9, format!("y1*y9*{r}/{p}")),
        (10, format!("y2*y10*y11*{p}/{r}")),
        (11, format!("{s}/(y1*{r})")),
    ];
    for (k, e) in expected {
        assert!(a.image(k).equals(&f(&e)), "y{k}: {}", a.image(k));
    }
}

#[test]
fn generator_programs_run_written_words_right_to_left() {
    let rep = catalog("Q11").unwrap();
    for (name, written) in &rep.written {
        {
            let w = rep.word(name).unwrap();
            let steps = Word::parse_steps(written).unwrap().steps.into_iter().rev().collect();
            assert_eq!(w, Word::new(steps), "{name}");
        }
    }
}

#[test]
fn root_power_clears_denominators() {
    let rep = catalog("Q11").unwrap();
    let half = BigRational::new(1.into(), 2.into());
    let m = rep.root_power(&[("alpha1".into(), half)], 2).unwrap();
    assert_eq!(&m, rep.root("alpha1").unwrap());
}
