//! Relation, action-table and decomposition checks.

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quiver::Quiver;
use crate::ratfield::{LaurentMonomial, DEFAULT_TRIALS, SAMPLE_RANGE};
use crate::report::CheckResult;
use crate::scalar::{powi, Semifield};
use crate::seed::{act_backward, compile, Seed, SeedError, Word};

use super::{Representation, TableEntry, WeylError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Randomized,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Randomized => "randomized",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { trials: DEFAULT_TRIALS, seed: 0 }
    }
}

/// `n` positive integers drawn from the sampling range.
pub fn random_point(n: usize, rng: &mut impl Rng) -> Vec<BigRational> {
    (0..n).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(SAMPLE_RANGE)))).collect()
}

/// Applies `w` to the seed on `q` whose coefficients are `point`.
pub fn eval_word<S: Semifield>(q: &Quiver, w: &Word, point: Vec<S>) -> Result<Seed<S>, SeedError> {
    Seed::new(q.clone(), point).apply_word(w)
}

pub(crate) fn eval_monomial<S: Semifield>(m: &LaurentMonomial, value: impl Fn(usize) -> S, coeff: S) -> S {
    m.exps().fold(coeff, |acc, (v, e)| {
        let k = v.vertex().expect("root monomials use coefficient variables");
        acc * powi(&value(k), e).expect("coefficients are invertible")
    })
}

fn witness(p: &[BigRational]) -> Vec<String> {
    p.iter().map(|x| x.to_string()).collect()
}

pub(crate) fn rng_for(opts: &VerifyOptions, id: &str) -> ChaCha8Rng {
    // Per-claim streams keep results independent of evaluation order.
    let h = id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x1000_0000_01b3));
    ChaCha8Rng::seed_from_u64(opts.seed ^ h)
}

/// Whether the programs `a` and `b` induce the same seed map on `q`.
/// Randomized mode returns the first point where they differ.
fn compare_words(
    q: &Quiver,
    a: &Word,
    b: &Word,
    mode: Mode,
    opts: &VerifyOptions,
    id: &str,
) -> Result<Option<Vec<String>>, SeedError> {
    match mode {
        Mode::Exact => {
            let fa = compile(a, q)?;
            let fb = compile(b, q)?;
            Ok(if fa.equals(&fb) { None } else { Some(Vec::new()) })
        }
        Mode::Randomized => {
            let mut rng = rng_for(opts, id);
            for _ in 0..opts.trials {
                let p = random_point(q.n(), &mut rng);
                let sa = eval_word(q, a, p.clone())?;
                let sb = eval_word(q, b, p.clone())?;
                if sa != sb {
                    return Ok(Some(witness(&p)));
                }
            }
            Ok(None)
        }
    }
}

fn outcome(id: String, mode: Mode, r: Result<Option<Vec<String>>, SeedError>) -> CheckResult {
    match r {
        Ok(None) => CheckResult::pass(id, mode.as_str()),
        Ok(Some(w)) if w.is_empty() => CheckResult::fail(id, mode.as_str(), "automorphisms differ"),
        Ok(Some(w)) => CheckResult::fail(id, mode.as_str(), "automorphisms differ").with_witness(w),
        Err(e) => CheckResult::error(id, mode.as_str(), e.to_string()),
    }
}

/// The defining relations of each reflection family and the commutation of
/// distinct families.
pub fn verify_relations(rep: &Representation, mode: Mode, opts: &VerifyOptions) -> Vec<CheckResult> {
    let mut rels: Vec<String> = Vec::new();
    for fam in &rep.families {
        let size = fam.cartan.size();
        for i in 0..size {
            rels.push(format!("{}^2", fam.generator(i)));
        }
        for i in 0..size {
            for j in i + 1..size {
                if let Some(m) = fam.cartan.braid_order(i, j) {
                    rels.push(format!("({} {})^{m}", fam.generator(i), fam.generator(j)));
                }
            }
        }
    }
    for (a, fa) in rep.families.iter().enumerate() {
        for fb in &rep.families[a + 1..] {
            for i in 0..fa.cartan.size() {
                for j in 0..fb.cartan.size() {
                    let (g, h) = (fa.generator(i), fb.generator(j));
                    rels.push(format!("({g} {h})^2"));
                }
            }
        }
    }
    rels.iter().map(|r| CheckResult::timed(|| check_relation(rep, r, mode, opts))).collect()
}

fn check_relation(rep: &Representation, rel: &str, mode: Mode, opts: &VerifyOptions) -> CheckResult {
    let id = format!("{}/relation/{rel} = 1", rep.name);
    let w = match rep.word(rel) {
        Ok(w) => w,
        Err(e) => return CheckResult::error(id, mode.as_str(), e.to_string()),
    };
    let r = compare_words(&rep.quiver, &w, &Word::identity(), mode, opts, &id);
    outcome(id, mode, r)
}

/// Checks every tabulated root image.
pub fn verify_action_table(rep: &Representation, mode: Mode, opts: &VerifyOptions) -> Vec<CheckResult> {
    rep.tables.iter().map(|e| CheckResult::timed(|| check_entry(rep, e, mode, opts))).collect()
}

/// `element(root)` as a monomial, computed exactly.
pub fn root_image(rep: &Representation, element: &str, root: &str) -> Result<LaurentMonomial, WeylError> {
    let w = rep.word(element)?;
    let m = rep.root(root).ok_or_else(|| WeylError::UnknownRoot(root.to_string()))?;
    let img = act_backward(&w, &rep.quiver, &m.to_rational())?;
    LaurentMonomial::from_rational(&img).ok_or_else(|| WeylError::NonMonomialImage {
        element: element.to_string(),
        root: root.to_string(),
        image: img.to_string(),
    })
}

fn check_entry(rep: &Representation, e: &TableEntry, mode: Mode, opts: &VerifyOptions) -> CheckResult {
    let id = format!("{}/table/{e}", rep.name);
    let m = mode.as_str();
    let expected = match rep.root_product(&e.expected) {
        Ok(x) => x,
        Err(err) => return CheckResult::error(id, m, err.to_string()),
    };
    match mode {
        Mode::Exact => match root_image(rep, &e.element, &e.root) {
            Ok(img) if img == expected => CheckResult::pass(id, m),
            Ok(img) => CheckResult::fail(id, m, format!("image is {img}, expected {expected}")),
            Err(err) => CheckResult::error(id, m, err.to_string()),
        },
        Mode::Randomized => {
            let (w, root) = match (rep.word(&e.element), rep.root(&e.root)) {
                (Ok(w), Some(r)) => (w, r),
                (Err(err), _) => return CheckResult::error(id, m, err.to_string()),
                (_, None) => return CheckResult::error(id, m, format!("unknown root {}", e.root)),
            };
            let mut rng = rng_for(opts, &id);
            for _ in 0..opts.trials {
                let p = random_point(rep.n(), &mut rng);
                let s = match eval_word(&rep.quiver, &w, p.clone()) {
                    Ok(s) => s,
                    Err(err) => return CheckResult::error(id, m, err.to_string()),
                };
                let lhs = eval_monomial(root, |k| s.coeffs[k - 1].clone(), root.coeff().clone());
                let rhs = eval_monomial(&expected, |k| p[k - 1].clone(), expected.coeff().clone());
                if lhs != rhs {
                    return CheckResult::fail(id, m, "root image differs").with_witness(witness(&p));
                }
            }
            CheckResult::pass(id, m)
        }
    }
}

/// Checks that two expressions over the representation's generators name the
/// same automorphism.
pub fn verify_decomposition(
    rep: &Representation,
    lhs: &str,
    rhs: &str,
    mode: Mode,
    opts: &VerifyOptions,
) -> CheckResult {
    CheckResult::timed(|| {
        let id = format!("{}/decomposition/{lhs} = {rhs}", rep.name);
        let words = rep.word(lhs).and_then(|a| Ok((a, rep.word(rhs)?)));
        match words {
            Ok((a, b)) => outcome(id.clone(), mode, compare_words(&rep.quiver, &a, &b, mode, opts, &id)),
            Err(e) => CheckResult::error(id, mode.as_str(), e.to_string()),
        }
    })
}
