//! The acceptance criteria, one summarized check each.

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qgarnier::bigfloat::{self, BigFloat};
use qgarnier::dynamics::{q12_riccati_closed_form, riccati_map};
use qgarnier::qhg::{self, Assignment, Case};
use qgarnier::quiver::{Quiver, Relabel};
use qgarnier::ratfield::RationalFunction;
use qgarnier::report::{CheckResult, Report, Status};
use qgarnier::seed::{compile, confluence_seed, Seed, Step};
use qgarnier::weylrep::{
    catalog, reduction_claims, verify_action_table, verify_decomposition, verify_divergence, verify_reduction,
    verify_relations, verify_roots_fixed_coefficients_moved, ClaimKind, Mode,
};

use crate::config::Config;

pub const CRITERIA: [&str; 11] = [
    "mutation involution on random quivers",
    "four-vertex confluence example",
    "Q12 relations",
    "Q12 action tables and tau_c decompositions",
    "Q12 Riccati map equals the closed form",
    "Q12 -> Q11 reductions",
    "Q11 -> ten-vertex reductions and Q105 relations",
    "divergence of tau_c into Q103 and pi1^4 on Q103",
    "hypergeometric residuals",
    "degeneration limits",
    "determinism of the suite report",
];

/// Folds many checks into one: passes when all of them pass, and names up
/// to three that did not.
fn summarize(n: usize, mode: &str, checks: &[CheckResult], extra: Option<String>) -> CheckResult {
    let id = format!("criterion {n}: {}", CRITERIA[n - 1]);
    let bad: Vec<&CheckResult> = checks.iter().filter(|c| !c.is_pass()).collect();
    let mut detail = format!("{} checks, {} not passing", checks.len(), bad.len());
    for c in bad.iter().take(3) {
        detail.push_str(&format!("; {}", c.id));
        if let Some(d) = &c.detail {
            detail.push_str(&format!(" ({d})"));
        }
    }
    if let Some(e) = extra {
        detail.push_str(&format!("; {e}"));
    }
    let status = if bad.is_empty() { Status::Pass } else { Status::Fail };
    CheckResult::new(id, mode, status).with_detail(detail)
}

fn random_quiver(rng: &mut ChaCha8Rng) -> Quiver {
    let n = rng.gen_range(2..=8);
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-3..=3);
            m[i][j] = v;
            m[j][i] = -v;
        }
    }
    Quiver::from_matrix(&m).expect("skew-symmetric")
}

pub fn mutation_involution(cfg: &Config) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut checks = Vec::new();
    for t in 0..200 {
        let q = random_quiver(&mut rng);
        let i = rng.gen_range(1..=q.n());
        let id = format!("mutation/{t}/m{i}m{i}");
        let s = Seed::initial(q.clone());
        let back = s.apply_step(&Step::Mutation(i)).and_then(|x| x.apply_step(&Step::Mutation(i)));
        checks.push(match back {
            Ok(b) if b.equals(&s) => CheckResult::pass(id, "exact"),
            Ok(_) => CheckResult::fail(id, "exact", format!("not an involution on {q:?}")),
            Err(e) => CheckResult::error(id, "exact", e.to_string()),
        });
    }
    summarize(1, "exact", &checks, None)
}

pub fn figure_one() -> CheckResult {
    let q = Quiver::from_matrix(&[vec![0, -1, -1, 1], vec![1, 0, -1, 1], vec![1, 1, 0, -1], vec![-1, -1, 1, 0]])
        .expect("skew-symmetric");
    let want = vec![vec![0, -2, 0], vec![2, 0, -1], vec![0, 1, 0]];
    let mut checks = Vec::new();
    match confluence_seed(&Seed::initial(q), 4, 1, &Relabel::identity()) {
        Ok(Ok(s)) => {
            let m = s.quiver.matrix();
            checks.push(if m == want {
                CheckResult::pass("confluence 4->1/matrix", "exact")
            } else {
                CheckResult::fail("confluence 4->1/matrix", "exact", format!("{m:?}"))
            });
            let ok = (1..=3).all(|k| s.coeffs[k - 1] == RationalFunction::y(k));
            checks.push(if ok {
                CheckResult::pass("confluence 4->1/coefficients", "exact")
            } else {
                let got: Vec<String> = s.coeffs.iter().map(|c| c.to_string()).collect();
                CheckResult::fail("confluence 4->1/coefficients", "exact", got.join(", "))
            });
        }
        Ok(Err(_)) => checks.push(CheckResult::new("confluence 4->1", "exact", Status::Divergent)),
        Err(e) => checks.push(CheckResult::error("confluence 4->1", "exact", e.to_string())),
    }
    summarize(2, "exact", &checks, None)
}

pub fn q12_relations(cfg: &Config) -> CheckResult {
    let rep = catalog("Q12").expect("catalog");
    let mut checks = verify_relations(&rep, Mode::Randomized, &cfg.verify_options());
    for fam in &rep.families {
        for i in 0..fam.cartan.size() {
            let g = fam.generator(i);
            checks.push(verify_decomposition(&rep, &format!("{g}^2"), "", Mode::Exact, &cfg.verify_options()));
        }
    }
    summarize(3, "randomized+exact", &checks, None)
}

pub fn q12_tables(cfg: &Config) -> CheckResult {
    let rep = catalog("Q12").expect("catalog");
    let mut checks = verify_action_table(&rep, Mode::Exact, &cfg.verify_options());
    for (a, b) in &rep.decompositions {
        checks.push(verify_decomposition(&rep, a, b, Mode::Randomized, &cfg.verify_options()));
    }
    summarize(4, "exact+randomized", &checks, None)
}

pub fn golden_riccati() -> CheckResult {
    let mut checks = Vec::new();
    match riccati_map("Q12") {
        Ok(map) => {
            checks.push(CheckResult::pass("Q12/chart invariance", "exact"));
            let closed = q12_riccati_closed_form();
            for (k, (a, b)) in map.free.iter().zip(map.images.iter().zip(&closed.images)) {
                let id = format!("Q12/tau_c(y{k})");
                checks.push(if a.equals(b) {
                    CheckResult::pass(id, "exact")
                } else {
                    CheckResult::fail(id, "exact", a.to_string())
                });
            }
        }
        Err(e) => checks.push(CheckResult::fail("Q12/riccati map", "exact", e.to_string())),
    }
    summarize(5, "exact", &checks, None)
}

fn cube(i: usize, j: usize, k: usize) -> String {
    format!("(1 + y{i} + y{i}*y{j} + y{i}*y{j}*y{k})")
}

/// The displayed action of `r0 r5 r0` on Q12, before any limit.
fn r0_r5_r0_closed_form() -> Vec<CheckResult> {
    let id = "Q12/r0 r5 r0 closed form";
    let rep = catalog("Q12").expect("catalog");
    let a = match rep.word("r0 r5 r0").map_err(|e| e.to_string()).and_then(|w| {
        compile(&w, &rep.quiver).map_err(|e| e.to_string())
    }) {
        Ok(a) => a,
        Err(e) => return vec![CheckResult::error(id, "exact", e)],
    };
    let (a1, b1, c1, d1) = (cube(1, 12, 2), cube(12, 2, 11), cube(2, 11, 1), cube(11, 1, 12));
    let mut expected = vec![
        (2, format!("{c1}/(y11*{a1})")),
        (3, format!("y1*y3*y11*{b1}/{d1}")),
        (4, format!("y2*y4*y12*{d1}/{b1}")),
        (9, format!("y1*y9*y12*{c1}/{a1}")),
        (10, format!("y2*y10*y11*{a1}/{c1}")),
        (11, format!("{d1}/(y1*{b1})")),
    ];
    expected.extend((5..=8).map(|k| (k, format!("y{k}"))));
    let mut out: Vec<CheckResult> = expected
        .into_iter()
        .map(|(k, e)| {
            let want = RationalFunction::parse(&e).expect("closed form parses");
            let cid = format!("{id}/y{k}");
            if a.image(k).equals(&want) {
                CheckResult::pass(cid, "exact")
            } else {
                CheckResult::fail(cid, "exact", a.image(k).to_string())
            }
        })
        .collect();
    let prod = &a.images[0] * &a.images[11];
    let want = RationalFunction::parse(&format!("{a1}*{b1}/(y2*y12*{c1}*{d1})")).expect("parses");
    let cid = format!("{id}/y1*y12");
    out.push(if prod.equals(&want) {
        CheckResult::pass(cid, "exact")
    } else {
        CheckResult::fail(cid, "exact", prod.to_string())
    });
    out
}

fn reductions(targets: &[&str], cfg: &Config) -> (Vec<CheckResult>, String) {
    let mut checks = Vec::new();
    let mut counts = Vec::new();
    for t in targets {
        let claims = reduction_claims(t).expect("catalog target");
        let count = |k: ClaimKind| claims.iter().filter(|c| c.kind == k).count();
        counts.push(format!(
            "{t}: {} generator, {} root, {} translation rows",
            count(ClaimKind::Generator),
            count(ClaimKind::Root),
            count(ClaimKind::Translation)
        ));
        checks.extend(claims.iter().map(|c| verify_reduction(c, Mode::Randomized, &cfg.verify_options())));
    }
    (checks, counts.join(", "))
}

pub fn q12_to_q11(cfg: &Config) -> CheckResult {
    let (mut checks, counts) = reductions(&["Q11"], cfg);
    checks.extend(r0_r5_r0_closed_form());
    summarize(6, "randomized+exact", &checks, Some(counts))
}

pub fn q11_to_ten(cfg: &Config) -> CheckResult {
    let (mut checks, counts) = reductions(&["Q101", "Q102", "Q103", "Q104", "Q105"], cfg);
    let q105 = catalog("Q105").expect("catalog");
    checks.extend(verify_relations(&q105, Mode::Randomized, &cfg.verify_options()));
    summarize(7, "randomized+exact", &checks, Some(counts))
}

pub fn negative(cfg: &Config) -> CheckResult {
    let checks = vec![
        verify_divergence("tau_c", "Q103", &cfg.verify_options()),
        verify_roots_fixed_coefficients_moved(&catalog("Q103").expect("catalog"), "pi1^4"),
    ];
    summarize(8, "randomized+exact", &checks, None)
}

fn residual_check(id: String, r: Result<f64, qhg::QhgError>, bound: f64) -> CheckResult {
    match r {
        Ok(x) if x < bound => CheckResult::pass(id, "f64").with_detail(format!("{x:.3e}")),
        Ok(x) => CheckResult::fail(id, "f64", format!("{x:.3e} >= {bound:e}")),
        Err(e) => CheckResult::error(id, "f64", e.to_string()),
    }
}

pub fn hypergeometric() -> CheckResult {
    let mut checks = Vec::new();
    let mut printed_failing = Vec::new();
    for case in Case::ALL {
        let p = qhg::standard_params::<f64>(case);
        let map = match riccati_map(case.name()) {
            Ok(m) => m,
            Err(e) => {
                checks.push(CheckResult::error(format!("{case}/riccati map"), "exact", e.to_string()));
                continue;
            }
        };
        for t in qhg::standard_ts::<f64>() {
            checks.push(residual_check(format!("{case}/linear t={t}"), qhg::verify_linear(case, &p, &t, 1e-17), 1e-9));
            let r = qhg::verify_riccati_solution(case, &map, &p, &t, Assignment::Corrected, 1e-17);
            checks.push(residual_check(format!("{case}/riccati t={t}"), r, 1e-8));
            let printed = qhg::verify_riccati_solution(case, &map, &p, &t, Assignment::Printed, 1e-17);
            if matches!(printed, Ok(x) if x >= 1e-8) && !printed_failing.contains(&case.name()) {
                printed_failing.push(case.name());
            }
        }
    }
    let note = (!printed_failing.is_empty()).then(|| {
        format!(
            "riccati residuals use the corrected assignment; the printed y-assignment fails for {}",
            printed_failing.join(", ")
        )
    });
    summarize(9, "f64", &checks, note)
}

pub fn degenerations(cfg: &Config) -> CheckResult {
    bigfloat::set_precision(cfg.precision_bits);
    let schedule = qhg::eps_schedule(5);
    let t = BigRational::new(BigInt::from(1), BigInt::from(20));
    let mut checks = Vec::new();
    let mut slopes = Vec::new();
    for (s, d) in [(Case::Q12, Case::Q11), (Case::Q11, Case::Q101), (Case::Q11, Case::Q102)] {
        let id = format!("{s}->{d}");
        match qhg::verify_degeneration::<BigFloat>(s, d, &schedule, &t, 1e-60) {
            Ok(rep) => {
                slopes.push(format!("{id} slope {:.4}", rep.slope));
                checks.push(if rep.mismatches.is_empty() {
                    CheckResult::pass(format!("{id}/matrix limit"), "exact")
                } else {
                    CheckResult::fail(format!("{id}/matrix limit"), "exact", format!("{:?}", rep.mismatches))
                });
                checks.push(if (rep.slope - 1.0).abs() <= 0.15 {
                    CheckResult::pass(format!("{id}/slope"), "bigfloat")
                } else {
                    CheckResult::fail(format!("{id}/slope"), "bigfloat", format!("{:.4}", rep.slope))
                });
            }
            Err(e) => checks.push(CheckResult::error(id, "exact", e.to_string())),
        }
    }
    summarize(10, "exact+bigfloat", &checks, Some(slopes.join(", ")))
}

/// Criterion `n` (1 to 10).
pub fn criterion(n: usize, cfg: &Config) -> CheckResult {
    match n {
        1 => mutation_involution(cfg),
        2 => figure_one(),
        3 => q12_relations(cfg),
        4 => q12_tables(cfg),
        5 => golden_riccati(),
        6 => q12_to_q11(cfg),
        7 => q11_to_ten(cfg),
        8 => negative(cfg),
        9 => hypergeometric(),
        10 => degenerations(cfg),
        _ => panic!("criterion {n} does not exist"),
    }
}

/// Criteria 1 to 10 as a report, timed.
pub fn first_ten(cfg: &Config) -> Report {
    let mut r = Report::new();
    for n in 1..=10 {
        r.push(CheckResult::timed(|| criterion(n, cfg)));
    }
    r
}

/// Criterion 11: a second run of criteria 1 to 10 with the same settings
/// serializes to the same JSON as `first`.
pub fn determinism(first: &Report, cfg: &Config) -> CheckResult {
    let second = first_ten(cfg);
    let checks = if first.to_json(false) == second.to_json(false) {
        vec![CheckResult::pass("suite/json", "exact")]
    } else {
        vec![CheckResult::fail("suite/json", "exact", "reports differ")]
    };
    summarize(11, "exact", &checks, None)
}

/// All eleven criteria.
pub fn run(cfg: &Config) -> Report {
    let mut r = first_ten(cfg);
    let d = CheckResult::timed(|| determinism(&r, cfg));
    r.push(d);
    r
}
