use qgarnier::dynamics::*;

#[test]
fn q12_riccati_map_matches_the_closed_form() {
    let m = riccati_map("Q12").unwrap();
    let want = q12_riccati_closed_form();
    for k in [1, 5, 9] {
        assert!(m.image(k).unwrap().equals(want.image(k).unwrap()), "y{k}: {}", m.image(k).unwrap());
    }
}

#[test]
fn degenerate_riccati_maps_exist() {
    for name in ["Q11", "Q101", "Q102"] {
        let m = riccati_map(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        eprintln!("{name}\n{m}");
    }
}

use num::{BigRational, ToPrimitive};
use qgarnier::seed::act_backward;
use qgarnier::weylrep::catalog;

/// Parameters whose product is close to one, so orbits stay bounded.
const NEAR_ONE: [f64; 6] = [0.9, 1.1, 0.95, 1.05, 0.98, 1.01];
const PARAMS: [f64; 6] = [0.3, 0.7, 0.5, 0.6, 0.8, 1.1];

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

#[test]
fn q105_has_no_tau_c() {
    assert!(matches!(tau_c_map("Q105"), Err(DynamicsError::NoTranslation(_))));
    assert!(matches!(riccati_map("Q105"), Err(DynamicsError::NoTranslation(_))));
    assert!(matches!(chart("Q103"), Err(DynamicsError::NoChart(_))));
}

#[test]
fn tau_c_fixes_the_alphas() {
    for name in ["Q12", "Q11"] {
        let rep = catalog(name).unwrap();
        let w = rep.word("tau_c").unwrap();
        for (root, m) in rep.roots.iter().filter(|(n, _)| n.starts_with("alpha")) {
            let img = act_backward(&w, &rep.quiver, &m.to_rational()).unwrap();
            assert!(img.equals(&m.to_rational()), "{name} {root}");
        }
    }
}

#[test]
fn one_step_agrees_with_evaluating_the_closed_form() {
    let m = riccati_map("Q12").unwrap();
    let p = [rat(0.7), rat(1.3), rat(0.9)];
    let params: Vec<BigRational> = PARAMS.iter().map(|&x| rat(x)).collect();
    let got = m.step(&p, &params, 0.0).unwrap();
    let want = q12_riccati_closed_form().step(&p, &params, 0.0).unwrap();
    assert_eq!(got, want);
}

#[test]
fn fifty_steps_keep_the_roots_constant() {
    for name in ["Q12", "Q11", "Q101", "Q102"] {
        let m = riccati_map(name).unwrap();
        let orbit = iterate_numeric(&m, &[0.7, 1.3, 0.9], &NEAR_ONE, 50, 1e-9).unwrap();
        assert_eq!(orbit.points.len(), 51);
        let worst = orbit.drift.iter().cloned().fold(0.0, f64::max);
        assert!(worst < 1e-9, "{name}: {worst:e}");
        // the chart is transversally unstable, so rounding off the locus grows;
        // exact agreement is covered by `exact_orbit_has_no_drift`
        if let Some(apart) = orbit.deviation[..4].iter().map(|d| *d).sum::<Option<f64>>() {
            assert!(apart < 1e-9, "{name}: {apart:e}");
        } else {
            assert!(matches!(name, "Q101" | "Q102"), "{name}");
        }
    }
}

#[test]
fn exact_orbit_has_no_drift() {
    let m = riccati_map("Q11").unwrap();
    let params: Vec<BigRational> = PARAMS.iter().map(|&x| rat(x)).collect();
    let orbit = iterate_numeric(&m, &[rat(0.7), rat(1.3), rat(0.9)], &params, 3, 0.0).unwrap();
    assert!(orbit.drift.iter().all(|&d| d == 0.0));
    assert!(orbit.deviation.iter().all(|&d| d == Some(0.0)));
    assert!(orbit.to_csv().starts_with("step,y1,y5,y9,drift,deviation\n0,"));
    assert!(orbit.points[3][0].to_f64().unwrap().is_finite());
}

#[test]
fn a_pole_is_reported_with_its_step() {
    // the Q11 image of y1 has the factor y1 - a0 in its denominator
    let m = riccati_map("Q11").unwrap();
    let params: Vec<BigRational> = PARAMS.iter().map(|&x| rat(x)).collect();
    let r = iterate_numeric(&m, &[params[0].clone(), rat(1.3), rat(0.9)], &params, 2, 0.0);
    assert!(matches!(r, Err(DynamicsError::PoleAtPoint { step: 1 })), "{r:?}");
}
