//! Reduction of group elements and roots through the confluences
//! `12 → 1` (Q12 to Q11) and `i → j` (Q11 to the ten-vertex quivers).

use std::fmt;

use num::integer::lcm;
use num::{BigInt, BigRational, One, ToPrimitive};

use crate::quiver::{degeneration_of, Relabel};
use crate::ratfield::{LaurentMonomial, RationalFunction, Var};
use crate::report::{CheckResult, Status};
use crate::seed::{compile, confluence_point, confluence_seed, Seed, SeedError, Word};
use crate::series::Leading;

use super::verify::{eval_word, random_point, rng_for};
use super::{catalog, Mode, Representation, VerifyOptions, WeylError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimKind {
    Generator,
    Root,
    Translation,
}

impl ClaimKind {
    fn as_str(self) -> &'static str {
        match self {
            ClaimKind::Generator => "generator",
            ClaimKind::Root => "root",
            ClaimKind::Translation => "translation",
        }
    }
}

/// One side of a reduction row: a group element or a root monomial with
/// rational exponents.
#[derive(Clone, Debug, PartialEq)]
pub enum ClaimSide {
    Word(String),
    Root(Vec<(String, BigRational)>),
}

impl ClaimSide {
    /// Parses `alpha1^-3/5 gamma^2/5`-style products of roots.
    pub fn root(expr: &str) -> ClaimSide {
        let factors = expr
            .split_whitespace()
            .map(|tok| match tok.split_once('^') {
                Some((name, e)) => {
                    let (n, d) = e.split_once('/').unwrap_or((e, "1"));
                    let r = BigRational::new(n.parse::<BigInt>().expect("exponent"), d.parse::<BigInt>().expect("exponent"));
                    (name.to_string(), r)
                }
                None => (tok.to_string(), BigRational::one()),
            })
            .collect();
        ClaimSide::Root(factors)
    }

    /// Least common multiple of the exponent denominators.
    fn clearing_power(&self) -> i64 {
        match self {
            ClaimSide::Word(_) => 1,
            ClaimSide::Root(fs) => {
                fs.iter().fold(1, |acc, (_, e)| lcm(acc, e.denom().to_i64().expect("small denominator")))
            }
        }
    }
}

impl fmt::Display for ClaimSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimSide::Word(w) => write!(f, "{w}"),
            ClaimSide::Root(fs) => {
                let parts: Vec<String> =
                    fs.iter().map(|(r, e)| if e.is_one() { r.clone() } else { format!("{r}^{e}") }).collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

/// `source` on `source_rep` becomes `target` on `target_rep` in the limit of
/// the confluence `i → j` followed by `relabel`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionClaim {
    pub source_rep: String,
    pub target_rep: String,
    pub kind: ClaimKind,
    pub source: ClaimSide,
    pub target: ClaimSide,
    pub confluence: (usize, usize),
    pub relabel: Relabel,
    /// Both root sides are raised to this power before comparison.
    pub power: i64,
}

impl ReductionClaim {
    fn new(target_rep: &str, kind: ClaimKind, source: ClaimSide, target: ClaimSide) -> Self {
        let (source_rep, i, j, n) = match target_rep {
            "Q11" => ("Q12", 12, 1, 12),
            t => {
                let (i, j) = degeneration_of(t).expect("ten-vertex target");
                ("Q11", i, j, 11)
            }
        };
        let power = lcm(source.clearing_power(), target.clearing_power());
        ReductionClaim {
            source_rep: source_rep.to_string(),
            target_rep: target_rep.to_string(),
            kind,
            source,
            target,
            confluence: (i, j),
            relabel: Relabel::fill_hole(n, i),
            power,
        }
    }

    pub fn id(&self) -> String {
        let (i, j) = self.confluence;
        format!(
            "{}->{}/{}/{} -> {} ({i}->{j})",
            self.source_rep,
            self.target_rep,
            self.kind.as_str(),
            self.source,
            self.target
        )
    }

    pub fn is_word(&self) -> bool {
        matches!(self.source, ClaimSide::Word(_))
    }
}

fn rows(target: &str, kind: ClaimKind, pairs: &[(&str, &str)]) -> Vec<ReductionClaim> {
    pairs
        .iter()
        .map(|(s, t)| {
            let (src, tgt) = match kind {
                ClaimKind::Root => (ClaimSide::root(s), ClaimSide::root(t)),
                _ => (ClaimSide::Word(s.to_string()), ClaimSide::Word(t.to_string())),
            };
            ReductionClaim::new(target, kind, src, tgt)
        })
        .collect()
}

fn same(names: &[&'static str]) -> Vec<(&'static str, &'static str)> {
    names.iter().map(|n| (*n, *n)).collect()
}

/// The tabulated reductions whose target is `target`.
pub fn reduction_claims(target: &str) -> Result<Vec<ReductionClaim>, WeylError> {
    use ClaimKind::*;
    let mut out = Vec::new();
    match target {
        "Q11" => {
            let mut g = vec![("r0 r5 r0", "r0")];
            g.extend(same(&["r1", "r2", "r3", "r4", "s0", "s1"]));
            g.extend([("pi2 s'0", "pi1^5"), ("pi3", "pi2")]);
            out.extend(rows(target, Generator, &g));
            let mut r = vec![("alpha0 alpha5", "alpha0")];
            r.extend(same(&["alpha1", "alpha2", "alpha3", "alpha4", "beta0", "beta1"]));
            r.push(("alpha1^-1 alpha2^-2 alpha3^-3 alpha4^-4 alpha5^-5 beta'1^5", "gamma"));
            out.extend(rows(target, Root, &r));
            let mut t = vec![("T5 T0", "T0")];
            t.extend(same(&["T1", "T2", "T3", "T4", "U0", "U1", "V"]));
            t.push(("V'^-1 V", "V'"));
            out.extend(rows(target, Translation, &t));
        }
        "Q101" => {
            let g = [
                ("r0", "r0"),
                ("r1 r2 r1", "r1"),
                ("r3", "r2"),
                ("r4", "r3"),
                ("s0", "s0"),
                ("s1", "s1"),
                ("r2 pi1", "pi1"),
                ("r1 r0 pi1^3", "pi2"),
                ("r2 r3 pi2", "pi3"),
            ];
            out.extend(rows(target, Generator, &g));
            let r = [
                ("alpha0", "alpha0"),
                ("alpha1 alpha2", "alpha1"),
                ("alpha3", "alpha2"),
                ("alpha4", "alpha3"),
                ("beta0", "beta0"),
                ("beta1", "beta1"),
                ("alpha1^-3/5 alpha2^9/5 alpha3^6/5 alpha4^3/5 gamma^2/5", "gamma"),
            ];
            out.extend(rows(target, Root, &r));
            let mut t = vec![("T0", "T0"), ("T1 T2", "T1"), ("T3", "T2"), ("T4", "T3")];
            t.extend(same(&["U0", "U1", "V", "V'"]));
            out.extend(rows(target, Translation, &t));
        }
        "Q102" => {
            let g = [
                ("r0", "r0"),
                ("r1 r2 r1", "r1"),
                ("r3", "r2"),
                ("r4", "r3"),
                ("r2 r3 r4 pi1 pi2", "pi1"),
                ("r2 r3 r4 r0 s1 pi1^2 pi2", "pi2"),
                ("r2 pi2 pi1", "pi3 pi1 pi3"),
            ];
            out.extend(rows(target, Generator, &g));
            let r = [
                ("alpha0", "alpha0"),
                ("alpha1 alpha2", "alpha1"),
                ("alpha3", "alpha2"),
                ("alpha4", "alpha3"),
                ("alpha1^1/5 alpha2^-3/5 alpha3^-2/5 alpha4^-1/5 beta1 gamma^1/5", "gamma1"),
                ("alpha1^-3/5 alpha2^9/5 alpha3^6/5 alpha4^3/5 beta0 beta1^-1 gamma^2/5", "gamma2"),
            ];
            out.extend(rows(target, Root, &r));
            let t = [
                ("T0", "T0"),
                ("T1 T2", "T1"),
                ("T3", "T2"),
                ("T4", "T3"),
                ("V U1", "U"),
                ("V' U1", "V"),
                ("V'", "V'"),
            ];
            out.extend(rows(target, Translation, &t));
        }
        "Q103" => {
            let g = [
                ("r0", "r0"),
                ("r1", "r1"),
                ("r2 r3 r2", "r2"),
                ("r4", "r3"),
                ("s0", "s0"),
                ("s1", "s1"),
                ("r3 pi1", "pi1"),
                ("pi2", "pi2"),
            ];
            out.extend(rows(target, Generator, &g));
            let r = [
                ("alpha0", "alpha0"),
                ("alpha1", "alpha1"),
                ("alpha2 alpha3", "alpha2"),
                ("alpha4", "alpha3"),
                ("beta0", "beta0"),
                ("beta1", "beta1"),
                ("alpha1^1/5 alpha2^2/5 alpha3^-2/5 alpha4^-1/5 gamma^1/5", "gamma"),
            ];
            out.extend(rows(target, Root, &r));
            let t = [
                ("T0", "T0"),
                ("T1", "T1"),
                ("T2 T3", "T2"),
                ("T4", "T3"),
                ("U0", "U0"),
                ("U1", "U1"),
                ("V", "V"),
            ];
            out.extend(rows(target, Translation, &t));
        }
        "Q104" => {
            let mut g = same(&["r0", "r1", "r2", "r3", "r4", "s0", "s1"]);
            g.extend([("pi1^6", "pi1"), ("pi1^5", "pi2"), ("pi2", "pi3")]);
            out.extend(rows(target, Generator, &g));
            let r = same(&["alpha0", "alpha1", "alpha2", "alpha3", "alpha4", "beta0", "beta1"]);
            out.extend(rows(target, Root, &r));
            let mut t = same(&["T0", "T1", "T2", "T3", "T4", "U0", "U1"]);
            t.extend([("V' V U1", "V"), ("V'", "V'")]);
            out.extend(rows(target, Translation, &t));
        }
        "Q105" => {
            out.extend(rows(target, Generator, &[("r1", "r2"), ("r2", "r3"), ("r3", "r4")]));
        }
        "Q12" => {}
        other => return Err(WeylError::UnknownName(other.to_string())),
    }
    Ok(out)
}

/// Every tabulated reduction, in catalog order of the targets.
pub fn all_reduction_claims() -> Vec<ReductionClaim> {
    crate::quiver::CATALOG.iter().flat_map(|t| reduction_claims(t).expect("catalog name")).collect()
}

/// Pushes `source` through the confluence and compares with `target`.
/// A coefficient whose limit blows up gives [`Status::Divergent`].
pub fn verify_reduction(claim: &ReductionClaim, mode: Mode, opts: &VerifyOptions) -> CheckResult {
    CheckResult::timed(|| {
        let id = claim.id();
        let mode = if claim.is_word() { mode } else { Mode::Exact };
        let m = mode.as_str();
        let reps = catalog(&claim.source_rep).and_then(|s| Ok((s, catalog(&claim.target_rep)?)));
        let (src, tgt) = match reps {
            Ok(r) => r,
            Err(e) => return CheckResult::error(id, m, e.to_string()),
        };
        let r = match (&claim.source, &claim.target) {
            (ClaimSide::Word(a), ClaimSide::Word(b)) => check_words(claim, &src, &tgt, a, b, mode, opts, &id),
            (ClaimSide::Root(a), ClaimSide::Root(b)) => check_roots(claim, &src, &tgt, a, b),
            _ => Err(WeylError::UnknownElement(format!("mixed claim {id}"))),
        };
        match r {
            Ok(Verdict::Holds) => CheckResult::pass(id, m),
            Ok(Verdict::Differs(detail, witness)) => {
                let c = CheckResult::fail(id, m, detail);
                if witness.is_empty() {
                    c
                } else {
                    c.with_witness(witness)
                }
            }
            Ok(Verdict::Divergent(detail)) => CheckResult::new(id, m, Status::Divergent).with_detail(detail),
            Err(e) => CheckResult::error(id, m, e.to_string()),
        }
    })
}

/// Passes exactly when pushing `element` of Q11 through the confluence into
/// `target` diverges.
pub fn verify_divergence(element: &str, target: &str, opts: &VerifyOptions) -> CheckResult {
    let claim = ReductionClaim::new(
        target,
        ClaimKind::Translation,
        ClaimSide::Word(element.to_string()),
        ClaimSide::Word(String::new()),
    );
    let (i, j) = claim.confluence;
    let id = format!("{}->{}/divergent/{element} ({i}->{j})", claim.source_rep, claim.target_rep);
    let r = verify_reduction(&claim, Mode::Randomized, opts);
    let mut out = match r.status {
        Status::Divergent => CheckResult::pass(id, "randomized").with_detail(r.detail.unwrap_or_default()),
        _ => CheckResult::fail(id, "randomized", "limit exists"),
    };
    out.wall_ms = r.wall_ms;
    out
}

enum Verdict {
    Holds,
    Differs(String, Vec<String>),
    Divergent(String),
}

#[allow(clippy::too_many_arguments)]
fn check_words(
    claim: &ReductionClaim,
    src: &Representation,
    tgt: &Representation,
    a: &str,
    b: &str,
    mode: Mode,
    opts: &VerifyOptions,
    id: &str,
) -> Result<Verdict, WeylError> {
    let (i, j) = claim.confluence;
    let wa = src.word(a)?;
    let wb = if b.is_empty() { Word::identity() } else { tgt.word(b)? };
    let old_of = claim.relabel.table(src.n(), i).map_err(SeedError::from)?;
    match mode {
        Mode::Exact => {
            let s = Seed::initial(src.quiver.clone()).apply_word(&wa)?;
            match confluence_seed(&s, i, j, &claim.relabel)? {
                Err(_) => Ok(Verdict::Divergent("a coefficient has negative ε-valuation".into())),
                Ok(lim) => {
                    let t = compile(&wb, &tgt.quiver)?;
                    let want = Seed::new(tgt.quiver.clone(), t.images);
                    if lim.equals(&want) {
                        Ok(Verdict::Holds)
                    } else {
                        Ok(Verdict::Differs("limit differs from target".into(), Vec::new()))
                    }
                }
            }
        }
        Mode::Randomized => {
            let mut rng = rng_for(opts, id);
            for _ in 0..opts.trials {
                let p = random_point(tgt.n(), &mut rng);
                let start = confluence_point(src.n(), i, j, &claim.relabel, &p);
                let s = eval_word::<Leading>(&src.quiver, &wa, start)?;
                let want = eval_word(&tgt.quiver, &wb, p.clone())?;
                let pushed: Vec<Leading> = old_of
                    .iter()
                    .map(|&old| {
                        if old == j {
                            s.coeffs[i - 1].clone() * s.coeffs[j - 1].clone()
                        } else {
                            s.coeffs[old - 1].clone()
                        }
                    })
                    .collect();
                if let Some(a) = pushed.iter().position(|v| v.valuation() < 0) {
                    let detail = format!("coefficient y{} has ε-valuation {}", a + 1, pushed[a].valuation());
                    return Ok(Verdict::Divergent(detail));
                }
                for (a, v) in pushed.iter().enumerate() {
                    if v.valuation() > 0 || *v.coeff() != want.coeffs[a] {
                        let w = p.iter().map(|x| x.to_string()).collect();
                        return Ok(Verdict::Differs(format!("coefficient y{} differs", a + 1), w));
                    }
                }
                if s.quiver != src.quiver || want.quiver != tgt.quiver {
                    return Err(SeedError::QuiverNotPreserved(a.to_string()).into());
                }
            }
            Ok(Verdict::Holds)
        }
    }
}

fn check_roots(
    claim: &ReductionClaim,
    src: &Representation,
    tgt: &Representation,
    a: &[(String, BigRational)],
    b: &[(String, BigRational)],
) -> Result<Verdict, WeylError> {
    let lhs = push_monomial(&src.root_power(a, claim.power)?, claim);
    let rhs = tgt.root_power(b, claim.power)?;
    let e = lhs.exp(Var::EPS);
    if e < 0 {
        return Ok(Verdict::Divergent(format!("ε-exponent {e}")));
    }
    let lhs_at_zero = LaurentMonomial::from_exps(lhs.exps().filter(|(v, _)| *v != Var::EPS)).with_coeff(lhs.coeff().clone());
    if e == 0 && lhs_at_zero == rhs {
        Ok(Verdict::Holds)
    } else {
        Ok(Verdict::Differs(format!("limit is {lhs}, expected {rhs}"), Vec::new()))
    }
}

/// The confluence substitution `y_i ↦ ε⁻¹ y_j`, `y_j ↦ ε` on a monomial,
/// followed by the relabeling.
pub fn push_monomial(m: &LaurentMonomial, claim: &ReductionClaim) -> LaurentMonomial {
    let (i, j) = claim.confluence;
    let rel = &claim.relabel;
    m.substitute(&|v| {
        let k = v.vertex()?;
        Some(if k == i {
            LaurentMonomial::from_exps([(Var::y(rel.apply(j)), 1), (Var::EPS, -1)])
        } else if k == j {
            LaurentMonomial::var(Var::EPS)
        } else {
            LaurentMonomial::var(Var::y(rel.apply(k)))
        })
    })
}

/// On `rep`, `element` fixes every root monomial but moves at least one
/// coefficient; the detail names the first coefficient that moves.
pub fn verify_roots_fixed_coefficients_moved(rep: &Representation, element: &str) -> CheckResult {
    CheckResult::timed(|| {
        let id = format!("{}/roots-only/{element}", rep.name);
        let inner = || -> Result<CheckResult, WeylError> {
            for (r, _) in &rep.roots {
                let img = super::root_image(rep, element, r)?;
                if &img != rep.root(r).expect("listed root") {
                    return Ok(CheckResult::fail(id.clone(), "exact", format!("{element} moves {r} to {img}")));
                }
            }
            let a = compile(&rep.word(element)?, &rep.quiver)?;
            for k in 1..=rep.n() {
                if !a.image(k).equals(&RationalFunction::y(k)) {
                    let detail = format!("roots fixed; y{k} -> {}", a.image(k));
                    return Ok(CheckResult::pass(id.clone(), "exact").with_detail(detail));
                }
            }
            Ok(CheckResult::fail(id.clone(), "exact", "every coefficient is fixed"))
        };
        inner().unwrap_or_else(|e| CheckResult::error(id.clone(), "exact", e.to_string()))
    })
}
