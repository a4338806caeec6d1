//! The τ_c time evolution and its q-Riccati specializations.
//!
//! A [`RiccatiChart`] is a declarative list of constraints `y_k = expr` in the
//! free coefficients and the root parameters `a0, a1, …`. Specializing the
//! initial seed along a chart and running the τ_c program on it gives the
//! Riccati map on the free coefficients.

use std::fmt;

use crate::ratfield::{RatError, RationalFunction, Var};
use crate::scalar::{Field, Magnitude};
use crate::seed::{compile, Automorphism, Seed, SeedError};
use crate::weylrep::{self, Representation, WeylError};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum DynamicsError {
    #[error("{0} has no translation tau_c")]
    NoTranslation(String),
    #[error("no Riccati chart for {0}")]
    NoChart(String),
    #[error("tau_c does not preserve the chart: y{coefficient} -> {image}")]
    ConstraintNotInvariant { coefficient: usize, image: String },
    #[error("pole at step {step}")]
    PoleAtPoint { step: usize },
    #[error("root {root} drifted by {drift:e} at step {step}")]
    NotConstant { root: String, step: usize, drift: f64 },
    #[error("expected {expected} values, got {got}")]
    BadPoint { expected: usize, got: usize },
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Rat(#[from] RatError),
}

/// Constraints `y_k = expr` cutting out the locus where τ_c reduces to a
/// second-order system in three free coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RiccatiChart {
    pub rep: String,
    pub constraints: Vec<(usize, String)>,
    pub free: Vec<usize>,
    /// Indices `i` of the parameters `a_i`, one per `α_i` root.
    pub params: Vec<usize>,
    /// Relation between the remaining roots implied by the constraints.
    pub parameter_constraint: Option<String>,
}

impl RiccatiChart {
    /// Image of every `y_k` under the chart (free coefficients map to
    /// themselves).
    pub fn substitution(&self, n: usize) -> Result<Vec<RationalFunction>, RatError> {
        let mut out: Vec<RationalFunction> = (1..=n).map(RationalFunction::y).collect();
        for (k, expr) in &self.constraints {
            out[k - 1] = RationalFunction::parse(expr)?;
        }
        Ok(out)
    }

    pub fn constraint(&self, k: usize) -> Option<&str> {
        self.constraints.iter().find(|(j, _)| *j == k).map(|(_, e)| e.as_str())
    }
}

fn chart_of(rep: &str, constraints: &[(usize, &str)], params: usize, relation: Option<&str>) -> RiccatiChart {
    RiccatiChart {
        rep: rep.to_string(),
        constraints: constraints.iter().map(|(k, e)| (*k, e.to_string())).collect(),
        free: vec![1, 5, 9],
        params: (0..params).collect(),
        parameter_constraint: relation.map(str::to_string),
    }
}

/// The chart used for the particular solutions. Each `α_i` root is solved
/// for one coefficient after the `-1` constraints are imposed.
pub fn chart(name: &str) -> Result<RiccatiChart, DynamicsError> {
    Ok(match name {
        "Q12" => chart_of(
            name,
            &[
                (2, "a0/y1"),
                (3, "-1"),
                (4, "-a1"),
                (6, "a2/y5"),
                (7, "-1"),
                (8, "-a3"),
                (10, "a4/y9"),
                (11, "-1"),
                (12, "-a5"),
            ],
            6,
            Some("beta'0 = beta0/(alpha1 alpha3 alpha5)"),
        ),
        "Q11" => chart_of(
            name,
            &[(2, "-a0/y1"), (3, "-1"), (4, "-a1"), (6, "a2/y5"), (7, "-1"), (8, "-a3"), (10, "a4/y9"), (11, "-1")],
            5,
            None,
        ),
        // y4 = -1 as stated for this quiver, with alpha1 = y3 y5 y6 solved for y6.
        "Q101" => chart_of(
            name,
            &[(2, "-a0/y1"), (3, "-1"), (4, "-1"), (6, "-a1/y5"), (7, "-1"), (8, "-a2"), (10, "a3/y9")],
            4,
            None,
        ),
        "Q102" => chart_of(
            name,
            &[(2, "-a0/y1"), (3, "-1"), (4, "-a1/y5"), (6, "-1"), (7, "-1"), (8, "-a2"), (10, "a3/y9")],
            4,
            None,
        ),
        other => return Err(DynamicsError::NoChart(other.to_string())),
    })
}

/// Rational images of the free coefficients.
#[derive(Clone, Debug)]
pub struct BirationalMap {
    pub rep: String,
    pub free: Vec<usize>,
    pub images: Vec<RationalFunction>,
}

impl BirationalMap {
    pub fn image(&self, k: usize) -> Option<&RationalFunction> {
        self.free.iter().position(|&f| f == k).map(|i| &self.images[i])
    }

    /// One step at `point` (free coefficients in order) with parameters
    /// `params[i] = a_i`.
    pub fn step<S: Field + Magnitude>(&self, point: &[S], params: &[S], tol: f64) -> Result<Vec<S>, RatError> {
        let value = |v: Var| -> S {
            if let Some(k) = v.vertex() {
                let i = self.free.iter().position(|&f| f == k).expect("free coefficient");
                point[i].clone()
            } else {
                let i = (v.id() - Var::alpha(0).id()) as usize;
                params[i].clone()
            }
        };
        self.images
            .iter()
            .map(|f| {
                let d: S = f.den().eval(&value);
                if d.magnitude() < tol {
                    return Err(RatError::PoleAtPoint);
                }
                Ok(f.num().eval(&value) / d)
            })
            .collect()
    }

    /// One line per free coefficient: `y1 -> image`.
    pub fn dump(&self) -> String {
        self.free.iter().zip(&self.images).map(|(k, f)| format!("y{k} -> {}\n", f.clone().reduce())).collect()
    }
}

impl fmt::Display for BirationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

fn tau_c(rep: &Representation) -> Result<crate::seed::Word, DynamicsError> {
    if !rep.has_tau_c() {
        return Err(DynamicsError::NoTranslation(rep.name.clone()));
    }
    Ok(rep.word("tau_c")?)
}

/// The compiled τ_c automorphism of `name`.
pub fn tau_c_map(name: &str) -> Result<Automorphism, DynamicsError> {
    let rep = weylrep::catalog(name)?;
    let w = tau_c(&rep)?;
    Ok(compile(&w, &rep.quiver)?)
}

/// τ_c restricted to the chart of `name`, checking that every constrained
/// coefficient is mapped to its constrained value.
///
/// When the program mutates at a vertex while its coefficient is still `-1`,
/// the `-1` constraints are perturbed to `-1 + eps`, the program is run over
/// the enlarged field, and the reduced images are evaluated at `eps = 0`.
pub fn riccati_map(name: &str) -> Result<BirationalMap, DynamicsError> {
    let rep = weylrep::catalog(name)?;
    let w = tau_c(&rep)?;
    let ch = chart(name)?;
    let sub = ch.substitution(rep.n())?;
    let images = match Seed::new(rep.quiver.clone(), sub.clone()).apply_word(&w) {
        Ok(s) => s.coeffs.into_iter().map(RationalFunction::reduce).collect(),
        Err(SeedError::DivisionByZero(_)) => perturbed_images(&rep, &ch, &w)?,
        Err(e) => return Err(e.into()),
    };
    let image_of = |k: usize| -> RationalFunction { images[k - 1].clone() };
    // A constrained value is an expression in the free coefficients; its
    // τ_c image is that expression at the images of the free coefficients.
    let on_images = |f: &RationalFunction| -> Result<RationalFunction, RatError> {
        f.substitute(&|v| v.vertex().map(image_of))
    };
    for (k, _) in &ch.constraints {
        let want = on_images(&sub[k - 1])?;
        let got = image_of(*k);
        if !got.equals(&want) {
            return Err(DynamicsError::ConstraintNotInvariant { coefficient: *k, image: got.to_string() });
        }
    }
    Ok(BirationalMap { rep: name.to_string(), images: ch.free.iter().map(|&k| image_of(k)).collect(), free: ch.free })
}

fn perturbed_images(
    rep: &Representation,
    ch: &RiccatiChart,
    w: &crate::seed::Word,
) -> Result<Vec<RationalFunction>, DynamicsError> {
    let mut lifted = ch.clone();
    for (_, e) in lifted.constraints.iter_mut() {
        if e == "-1" {
            *e = "-1 + eps".into();
        }
    }
    let s = Seed::new(rep.quiver.clone(), lifted.substitution(rep.n())?).apply_word(w)?;
    let at_zero = |v: Var| (v == Var::EPS).then(|| RationalFunction::int(0));
    s.coeffs
        .into_iter()
        .map(|f| {
            let f = f.reduce();
            if f.den().compose(&|v| (v == Var::EPS).then(crate::ratfield::Polynomial::zero)).is_zero() {
                return Err(DynamicsError::Rat(RatError::PoleAtPoint));
            }
            Ok(f.substitute(&at_zero)?.reduce())
        })
        .collect()
}

/// The closed form of the Q12 Riccati map, in the free coefficients
/// `y1, y5, y9` and parameters `a0..a5`.
pub fn q12_riccati_closed_form() -> BirationalMap {
    let p1 = "(y1*y5*y9 + a0*(1 - a1)*y5*y9 - a0*a1*a2*(1 - a3)*y9 + a0*a1*a2*a3*a4)";
    let p5 = "(y1*y5*y9 + a2*(1 - a3)*y1*y9 - a2*a3*a4*(1 - a5)*y1 + a0*a2*a3*a4*a5)";
    let p9 = "(y1*y5*y9 + a4*(1 - a5)*y1*y5 - a0*a4*a5*(1 - a1)*y5 + a0*a1*a2*a4*a5)";
    let parse = |s: String| RationalFunction::parse(&s).expect("closed form parses");
    BirationalMap {
        rep: "Q12".into(),
        free: vec![1, 5, 9],
        images: vec![
            parse(format!("y1*{p1}/(a0*a1*{p5})")),
            parse(format!("y5*{p5}/(a2*a3*{p9})")),
            parse(format!("y9*{p9}/(a4*a5*{p1})")),
        ],
    }
}

/// A numeric orbit of the Riccati map.
#[derive(Clone, Debug, PartialEq)]
pub struct Orbit<S> {
    pub free: Vec<usize>,
    /// `points[0]` is the start.
    pub points: Vec<Vec<S>>,
    /// Largest relative deviation per step of the τ_c-invariant roots from
    /// their start values.
    pub drift: Vec<f64>,
    /// Largest relative difference per step between the Riccati orbit and
    /// the full τ_c orbit of the lifted seed; `None` once the τ_c program
    /// passes through a mutation that is singular on the locus.
    pub deviation: Vec<Option<f64>>,
}

impl<S: fmt::Display> Orbit<S> {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step");
        for k in &self.free {
            out.push_str(&format!(",y{k}"));
        }
        out.push_str(",drift,deviation\n");
        for (i, p) in self.points.iter().enumerate() {
            out.push_str(&i.to_string());
            for x in p {
                out.push_str(&format!(",{x}"));
            }
            let dev = self.deviation[i].map(|d| format!("{d:e}")).unwrap_or_default();
            out.push_str(&format!(",{:e},{dev}\n", self.drift[i]));
        }
        out
    }
}

/// Iterates `map` from `start` for `steps` steps. Alongside, the full τ_c
/// program runs on the chart-lifted seed; every root that τ_c fixes (the
/// α's) must stay constant within `tol`. Where the program is singular on
/// the locus, the roots are read off the lifted Riccati orbit instead.
pub fn iterate_numeric<S: Field + Magnitude + fmt::Display>(
    map: &BirationalMap,
    start: &[S],
    params: &[S],
    steps: usize,
    tol: f64,
) -> Result<Orbit<S>, DynamicsError> {
    let rep = weylrep::catalog(&map.rep)?;
    let ch = chart(&map.rep)?;
    if start.len() != map.free.len() {
        return Err(DynamicsError::BadPoint { expected: map.free.len(), got: start.len() });
    }
    if params.len() < ch.params.len() {
        return Err(DynamicsError::BadPoint { expected: ch.params.len(), got: params.len() });
    }
    let w = tau_c(&rep)?;
    let pole_tol = 1e-300;
    let lift = |p: &[S]| -> Result<Vec<S>, RatError> {
        let value = |v: Var| -> S {
            match v.vertex() {
                Some(k) => p[map.free.iter().position(|&f| f == k).expect("free coefficient")].clone(),
                None => params[(v.id() - Var::alpha(0).id()) as usize].clone(),
            }
        };
        ch.substitution(rep.n())?.iter().map(|f| f.eval(&value).ok_or(RatError::PoleAtPoint)).collect()
    };
    let invariant: Vec<(String, crate::ratfield::LaurentMonomial)> =
        rep.roots.iter().filter(|(n, _)| n.starts_with("alpha")).cloned().collect();
    let root_values = |c: &[S]| -> Vec<S> { invariant.iter().map(|(_, m)| eval_root(m, c)).collect() };
    let lifted = Seed::new(rep.quiver.clone(), lift(start).map_err(|_| DynamicsError::PoleAtPoint { step: 0 })?);
    let roots0 = root_values(&lifted.coeffs);
    let mut full = Some(lifted);
    let mut points = vec![start.to_vec()];
    let mut drift = vec![0.0];
    let mut deviation = vec![Some(0.0)];
    for step in 1..=steps {
        let prev = points.last().expect("nonempty");
        let next = map.step(prev, params, pole_tol).map_err(|_| DynamicsError::PoleAtPoint { step })?;
        if !next.iter().all(|x| x.magnitude().is_finite()) {
            return Err(DynamicsError::PoleAtPoint { step });
        }
        full = match full.map(|f| f.apply_word(&w)) {
            Some(Ok(f)) => Some(f),
            Some(Err(SeedError::DivisionByZero(_))) | None => None,
            Some(Err(e)) => return Err(e.into()),
        };
        let coeffs = match &full {
            Some(f) => f.coeffs.clone(),
            None => lift(&next).map_err(|_| DynamicsError::PoleAtPoint { step })?,
        };
        deviation.push(full.as_ref().map(|f| {
            map.free
                .iter()
                .enumerate()
                .map(|(i, &k)| next[i].magnitude_diff(&f.coeffs[k - 1]) / (1.0 + next[i].magnitude()))
                .fold(0.0, f64::max)
        }));
        let mut d: f64 = 0.0;
        for ((name, _), (now, then)) in invariant.iter().zip(root_values(&coeffs).iter().zip(&roots0)) {
            let r = now.magnitude_diff(then) / (1.0 + then.magnitude());
            if !(r <= tol) {
                return Err(DynamicsError::NotConstant { root: name.clone(), step, drift: r });
            }
            d = d.max(r);
        }
        points.push(next);
        drift.push(d);
    }
    Ok(Orbit { free: map.free.clone(), points, drift, deviation })
}

fn eval_root<S: Field>(m: &crate::ratfield::LaurentMonomial, c: &[S]) -> S {
    let mut acc = S::from_rational(m.coeff());
    for (v, e) in m.exps() {
        let k = v.vertex().expect("root monomials use coefficients");
        acc = acc * crate::scalar::powi(&c[k - 1], e).expect("nonzero coefficient");
    }
    acc
}

trait MagnitudeDiff {
    fn magnitude_diff(&self, other: &Self) -> f64;
}

impl<S: Field + Magnitude> MagnitudeDiff for S {
    fn magnitude_diff(&self, other: &Self) -> f64 {
        (self.clone() - other.clone()).magnitude()
    }
}
