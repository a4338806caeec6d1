use num::{BigInt, BigRational, One};
use proptest::prelude::*;
use qgarnier::bigfloat::BigFloat;
use qgarnier::dynamics::riccati_map;
use qgarnier::qhg::*;
use qgarnier::ratfield::{RationalFunction, Var};

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn qpoch_small_cases() {
    assert_eq!(qpoch(&r(1, 2), &r(1, 3), 0), BigRational::one());
    assert_eq!(qpoch(&r(1, 2), &r(1, 3), 2), r(1, 2) * r(5, 6));
    assert_eq!(qpoch(&1.0, &0.5, 3), 0.0);
}

proptest! {
    #[test]
    fn qpoch_recurrence(a in -2.0f64..2.0, q in -0.9f64..0.9, n in 0usize..12) {
        let lhs = qpoch(&a, &q, n + 1);
        let rhs = qpoch(&a, &q, n) * (1.0 - a * q.powi(n as i32));
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn term_ratio_matches_the_closed_term(
        a in -0.9f64..0.9, b in -0.9f64..0.9, c in -0.9f64..0.9,
        q in 0.1f64..0.8, t in -0.5f64..0.5, n in 0usize..8,
    ) {
        // 1φ2 term: (a)_n / ((q)_n (b)_n (c)_n) · q^{n(n-1)} t^n
        let term = |k: usize| {
            qpoch(&a, &q, k) / (qpoch(&q, &q, k) * qpoch(&b, &q, k) * qpoch(&c, &q, k))
                * q.powi((k * k.saturating_sub(1)) as i32) * t.powi(k as i32)
        };
        let spec = PhiSpec::new(vec![a], vec![b, c], q, t);
        let want = term(n + 1) / term(n);
        let got = spec.term_ratio(n).unwrap();
        prop_assert!((got - want).abs() <= 1e-9 * (1.0 + want.abs()));
    }
}

#[test]
fn phi_at_zero_is_one() {
    let spec = PhiSpec::new(vec![0.3, 0.5, 0.7], vec![0.2, 0.4], 0.5, 0.0);
    assert_eq!(phi(&spec).unwrap(), 1.0);
}

#[test]
fn zero_upper_entry_is_allowed() {
    let (b, c, d, q, t): (f64, f64, f64, f64, f64) = (0.3, 0.2, 0.6, 0.4, 0.1);
    let mut direct: f64 = 0.0;
    for n in 0..60 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        direct += qpoch(&b, &q, n) / (qpoch(&q, &q, n) * qpoch(&c, &q, n) * qpoch(&d, &q, n))
            * sign * q.powi((n * n.saturating_sub(1) / 2) as i32) * t.powi(n as i32);
    }
    let v = phi(&PhiSpec::new(vec![0.0, b], vec![c, d], q, t)).unwrap();
    assert!((v - direct).abs() < 1e-15, "{v} {direct}");
}

#[test]
fn three_phi_two_matches_a_long_direct_sum() {
    let (a, b, c, d, e, q, t) = (0.3, 0.6, 0.8, 0.5, 0.7, 0.6, 0.4);
    let mut direct: f64 = 0.0;
    for n in 0..200 {
        direct += qpoch(&a, &q, n) * qpoch(&b, &q, n) * qpoch(&c, &q, n)
            / (qpoch(&q, &q, n) * qpoch(&d, &q, n) * qpoch(&e, &q, n))
            * f64::powi(t, n as i32);
    }
    let v = phi(&PhiSpec::new(vec![a, b, c], vec![d, e], q, t)).unwrap();
    assert!((v - direct).abs() < 1e-13, "{v} {direct}");
}

#[test]
fn divergent_series_reports_no_convergence() {
    let spec = PhiSpec::new(vec![0.3, 0.5, 0.7], vec![0.2, 0.4], 0.5, 3.0);
    assert!(matches!(phi(&spec), Err(QhgError::NoConvergence { .. })));
}

#[test]
fn matrix_shapes() {
    let s = symbolic_system(Case::Q12);
    assert!(s.pencil);
    for i in 0..3 {
        for j in 0..i {
            assert!(s.a1[i][j].is_zero(), "Q12 A1 ({i},{j})");
        }
    }
    let s = symbolic_system(Case::Q101);
    let nonzero = s.a1.iter().flatten().filter(|e| !e.is_zero()).count();
    assert_eq!(nonzero, 2);
    let s = symbolic_system(Case::Q102);
    assert!(s.a0[2][0].equals(&RationalFunction::parse("(1 - q)^2*a0").unwrap()));
}

#[test]
fn bad_parameters_are_rejected() {
    let mut p = standard_params::<f64>(Case::Q11);
    p.alpha.pop();
    assert!(matches!(build_system(Case::Q11, &p), Err(QhgError::BadParameters(_))));
    let mut p = standard_params::<f64>(Case::Q11);
    p.q = 0.5;
    assert!(matches!(solution(Case::Q11, &p, &0.05, 1e-17), Err(QhgError::BadParameters(_))));
}

#[test]
fn solution_at_zero_is_the_prefactors() {
    let p = standard_params::<f64>(Case::Q12);
    let x = solution(Case::Q12, &p, &0.0, 1e-17).unwrap();
    let a = &p.alpha;
    let f1 = (1.0 - a[5]) / (1.0 - a[0] * a[5]);
    assert_eq!(x[0], 1.0);
    assert!((x[1] - f1).abs() < 1e-15);
}

#[test]
fn solutions_satisfy_the_linear_systems() {
    for case in Case::ALL {
        let p = standard_params::<f64>(case);
        for t in standard_ts::<f64>() {
            let res = verify_linear(case, &p, &t, 1e-17).unwrap();
            assert!(res < 1e-9, "{case} t={t}: {res:e}");
        }
    }
}

#[test]
fn perturbed_matrix_entry_is_detected() {
    for case in Case::ALL {
        let p = standard_params::<f64>(case);
        let mut sys = build_system(case, &p).unwrap();
        sys.a0[1][1] += 1e-3;
        let t = 0.05;
        let x = solution(case, &p, &t, 1e-17).unwrap();
        let xn = solution(case, &p, &(t / p.q), 1e-17).unwrap();
        let m = sys.rhs(&t);
        let res = (0..3)
            .map(|i| (xn[i] - (0..3).map(|j| m[i][j] * x[j]).sum::<f64>()).abs())
            .fold(0.0, f64::max);
        assert!(res > 1e-5, "{case}: {res:e}");
    }
}

#[test]
fn residual_at_zero_vanishes() {
    for case in Case::ALL {
        let p = standard_params::<f64>(case);
        let res = verify_linear(case, &p, &0.0, 1e-17).unwrap();
        assert!(res < 1e-15, "{case}: {res:e}");
    }
}

#[test]
fn printed_q101_second_component_does_not_solve_the_system() {
    // x1 with lower parameters (α0, α0 α1) instead of (q α0, α0 α1).
    let p = standard_params::<f64>(Case::Q101);
    let (q, a) = (p.q, &p.alpha);
    let t = 0.05;
    let x1 = |t: f64| {
        let z = q * q * a[0] * a[0] * a[1] * t;
        (1.0 - q) * a[0] / (1.0 - a[0])
            * phi(&PhiSpec::new(vec![a[0] * a[1] * a[2]], vec![a[0], a[0] * a[1]], q, z)).unwrap()
    };
    let x = solution(Case::Q101, &p, &t, 1e-17).unwrap();
    let xn = solution(Case::Q101, &p, &(t / q), 1e-17).unwrap();
    let m = build_system(Case::Q101, &p).unwrap().rhs(&t);
    let row1 = |x1t: f64, x1n: f64| (x1n - (m[1][0] * x[0] + m[1][1] * x1t)).abs();
    assert!(row1(x[1], xn[1]) < 1e-12);
    assert!(row1(x1(t), x1(t / q)) > 1e-4);
}

fn other_params(case: Case) -> Params<f64> {
    let mut alpha: Vec<f64> = [0.9, 0.45, 0.8, 0.7, 0.55][..case.alphas() - 1].to_vec();
    let q = 0.15;
    alpha.push(q / alpha.iter().product::<f64>());
    Params { q, alpha }
}

#[test]
fn corrected_solutions_give_riccati_orbits() {
    for case in Case::ALL {
        let map = riccati_map(case.name()).unwrap();
        for p in [standard_params::<f64>(case), other_params(case)] {
            for t in [0.01, 0.02, 0.035, 0.05, 0.08] {
                let res = verify_riccati_solution(case, &map, &p, &t, Assignment::Corrected, 1e-17).unwrap();
                assert!(res < 1e-8, "{case} t={t}: {res:e}");
            }
        }
    }
}

#[test]
fn printed_assignments_fail_off_q12() {
    for case in Case::ALL {
        let map = riccati_map(case.name()).unwrap();
        let p = standard_params::<f64>(case);
        let res = verify_riccati_solution(case, &map, &p, &0.05, Assignment::Printed, 1e-17).unwrap();
        assert_eq!(res < 1e-8, case == Case::Q12, "{case}: {res:e}");
    }
}

/// `γ1 = y2² y3 y4 y10 / (y5 y9)` of Q102 from the full printed assignment.
fn q102_gamma1(p: &Params<f64>, t: f64) -> f64 {
    let a = &p.alpha;
    let x = solution(Case::Q102, p, &t, 1e-17).unwrap();
    let y2 = a[0] * x[1] / x[0];
    let y3 = -1.0;
    let y4 = a[1] * x[2] / x[1];
    let y5 = -x[1] / x[2];
    let y9 = -p.q * t * x[2] / x[0];
    let y10 = -a[3] * x[0] / (p.q * t * x[2]);
    y2 * y2 * y3 * y4 * y10 / (y5 * y9)
}

#[test]
fn q102_gamma_on_the_printed_solution() {
    let p = standard_params::<f64>(Case::Q102);
    let a = &p.alpha;
    for t in standard_ts::<f64>() {
        let want = a[0] * a[0] * a[1] * a[3] / (p.q * p.q * t * t);
        assert!((q102_gamma1(&p, t) / want - 1.0).abs() < 1e-12);
    }
    // Consistent with τ_c(γ1) = q² γ1 under t → t/q.
    let ratio = q102_gamma1(&p, 0.05 / p.q) / q102_gamma1(&p, 0.05);
    assert!((ratio - p.q * p.q).abs() < 1e-12);
}

#[test]
fn degenerations_hold_exactly() {
    for (s, t) in [(Case::Q12, Case::Q11), (Case::Q11, Case::Q101), (Case::Q11, Case::Q102)] {
        let d = degeneration(s, t).unwrap();
        assert_eq!(d.symbolic_mismatches().unwrap(), vec![], "{s} -> {t}");
    }
    assert!(degeneration(Case::Q12, Case::Q101).is_err());
}

#[test]
fn wrong_rescaling_is_caught() {
    let mut d = degeneration(Case::Q11, Case::Q102).unwrap();
    d.rescale[2] = RationalFunction::int(1);
    assert!(!d.symbolic_mismatches().unwrap().is_empty());
    let _ = Var::EPS;
}

#[test]
fn degenerations_converge_linearly() {
    let schedule = eps_schedule(6);
    for (s, t) in [(Case::Q12, Case::Q11), (Case::Q11, Case::Q101), (Case::Q11, Case::Q102)] {
        let rep = verify_degeneration::<BigFloat>(s, t, &schedule, &r(1, 20), 1e-40).unwrap();
        eprintln!("{s} -> {t}: {:?} slope {}", rep.table, rep.slope);
        assert!(rep.passes(0.15), "{s} -> {t}: slope {}", rep.slope);
    }
}
