//! Basic hypergeometric series, the linear q-difference systems of the four
//! Riccati charts, and the checks tying their solutions to the Riccati maps.
//!
//! Every system has the form `x(t/q) = M(t) x(t)` with `M = A0 + t A1`, or
//! `(A0 + t A1)/(1 - t)` for `Q12`. Matrices are kept as rational functions
//! of the parameters `a0, a1, …`, `q` and `t`, so the degenerations between
//! cases can be checked exactly before anything is evaluated.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One};

use crate::dynamics::BirationalMap;
use crate::ratfield::{Divergent, RatError, RationalFunction, Var};
use crate::scalar::{powi, Field, Magnitude};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum QhgError {
    #[error("series did not converge within {terms} terms (last term {last:e})")]
    NoConvergence { terms: usize, last: f64 },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("no degeneration {0} -> {1}")]
    NoDegeneration(Case, Case),
    #[error("limit of entry ({row},{col}) does not exist")]
    Divergent { row: usize, col: usize },
    #[error(transparent)]
    Rat(#[from] RatError),
}

/// The four quivers with a hypergeometric particular solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Q12,
    Q11,
    Q101,
    Q102,
}

impl Case {
    pub const ALL: [Case; 4] = [Case::Q12, Case::Q11, Case::Q101, Case::Q102];

    pub fn name(self) -> &'static str {
        match self {
            Case::Q12 => "Q12",
            Case::Q11 => "Q11",
            Case::Q101 => "Q101",
            Case::Q102 => "Q102",
        }
    }

    /// Number of `α` parameters; their product is `q`.
    pub fn alphas(self) -> usize {
        match self {
            Case::Q12 => 6,
            Case::Q11 => 5,
            Case::Q101 | Case::Q102 => 4,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = QhgError;
    fn from_str(s: &str) -> Result<Self, QhgError> {
        Case::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| QhgError::UnknownCase(s.to_string()))
    }
}

/// Base `q` and the root parameters `α_0, α_1, …`.
#[derive(Clone, Debug, PartialEq)]
pub struct Params<S> {
    pub q: S,
    pub alpha: Vec<S>,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `q = 2/5` and `α = (3/10, 7/10, 1/2, 3/5, 4/5)`, truncated to the case's
/// count with the last `α` solved from `q = ∏ α_i`.
pub fn standard_params_exact(case: Case) -> Params<BigRational> {
    let q = ratio(2, 5);
    let base = [ratio(3, 10), ratio(7, 10), ratio(1, 2), ratio(3, 5), ratio(4, 5)];
    let mut alpha: Vec<BigRational> = base[..case.alphas() - 1].to_vec();
    let prod = alpha.iter().fold(BigRational::one(), |a, b| a * b);
    alpha.push(&q / prod);
    Params { q, alpha }
}

pub fn standard_params<S: Field>(case: Case) -> Params<S> {
    let p = standard_params_exact(case);
    Params { q: S::from_rational(&p.q), alpha: p.alpha.iter().map(S::from_rational).collect() }
}

/// Sample points `t = 1/50, 1/20, 2/25`.
pub fn standard_ts<S: Field>() -> [S; 3] {
    [S::from_rational(&ratio(1, 50)), S::from_rational(&ratio(1, 20)), S::from_rational(&ratio(2, 25))]
}

/// `(a; q)_n = ∏_{i<n} (1 - a q^i)`.
pub fn qpoch<S: Field>(a: &S, q: &S, n: usize) -> S {
    let mut acc = S::one();
    let mut aq = a.clone();
    for _ in 0..n {
        acc = acc * (S::one() - aq.clone());
        aq = aq * q.clone();
    }
    acc
}

/// `rφs[upper; lower; q, t]` with the factor `[(-1)^n q^{n(n-1)/2}]^{1+s-r}`.
#[derive(Clone, Debug)]
pub struct PhiSpec<S> {
    pub upper: Vec<S>,
    pub lower: Vec<S>,
    pub q: S,
    pub t: S,
    /// Summation stops after three consecutive terms below
    /// `tol · (|partial sum| + 1)`.
    pub tol: f64,
    pub max_terms: usize,
}

impl<S: Field + Magnitude> PhiSpec<S> {
    pub fn new(upper: Vec<S>, lower: Vec<S>, q: S, t: S) -> Self {
        Self { upper, lower, q, t, tol: 1e-17, max_terms: 10_000 }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn balance(&self) -> i64 {
        1 + self.lower.len() as i64 - self.upper.len() as i64
    }

    /// `term(n+1) / term(n)`.
    pub fn term_ratio(&self, n: usize) -> Result<S, QhgError> {
        let qn = powi(&self.q, n as i64).expect("nonnegative power");
        let mut num = self.t.clone();
        for a in &self.upper {
            num = num * (S::one() - a.clone() * qn.clone());
        }
        let mut den = S::one() - qn.clone() * self.q.clone();
        for b in &self.lower {
            den = den * (S::one() - b.clone() * qn.clone());
        }
        if den.magnitude() == 0.0 {
            return Err(QhgError::BadParameters(format!("lower parameter hits q^-{n}")));
        }
        let e = self.balance();
        if e != 0 {
            let f = powi(&(-qn), e).ok_or_else(|| QhgError::BadParameters("q = 0".into()))?;
            num = num * f;
        }
        Ok(num / den)
    }
}

pub fn phi<S: Field + Magnitude>(spec: &PhiSpec<S>) -> Result<S, QhgError> {
    let mut sum = S::one();
    let mut term = S::one();
    let mut small = 0;
    for n in 0..spec.max_terms {
        term = term * spec.term_ratio(n)?;
        sum = sum + term.clone();
        let m = term.magnitude();
        if !m.is_finite() {
            return Err(QhgError::NoConvergence { terms: n + 1, last: m });
        }
        if m <= spec.tol * (sum.magnitude() + 1.0) {
            small += 1;
            if small == 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(QhgError::NoConvergence { terms: spec.max_terms, last: term.magnitude() })
}

type Matrix<T> = [[T; 3]; 3];

/// `A0`, `A1` as rational functions of `a0, a1, …` and `q`.
#[derive(Clone, Debug)]
pub struct SymbolicSystem {
    pub case: Case,
    pub a0: Matrix<RationalFunction>,
    pub a1: Matrix<RationalFunction>,
    /// `M = (A0 + t A1) / (1 - t)` rather than `A0 + t A1`.
    pub pencil: bool,
}

fn matrix(rows: [[&str; 3]; 3]) -> Matrix<RationalFunction> {
    rows.map(|r| r.map(|e| RationalFunction::parse(e).expect("matrix entry parses")))
}

pub fn symbolic_system(case: Case) -> SymbolicSystem {
    let (a0, a1) = match case {
        Case::Q12 => (
            [["1", "0", "0"], ["1 - a5", "a0*a5", "0"], ["1 - a5", "a0*a5*(1 - a1)", "a0*a1*a2*a5"]],
            [
                ["-a5", "a0*a5*(1 - a1)", "a0*a1*a2*a5*(1 - a3)"],
                ["0", "-a0*a1*a5", "a0*a1*a2*a5*(1 - a3)"],
                ["0", "0", "-a0*a1*a2*a3*a5"],
            ],
        ),
        Case::Q11 => (
            [["1", "0", "0"], ["(1 - q)*a0", "a0", "0"], ["(1 - q)*a0", "a0*(1 - a1)", "a0*a1*a2"]],
            [["-a0", "-a0*(1 - a1)/(1 - q)", "-a0*a1*a2*(1 - a3)/(1 - q)"], ["0", "0", "0"], ["0", "0", "0"]],
        ),
        Case::Q101 => (
            [["1", "0", "0"], ["(1 - q)*a0", "a0", "0"], ["0", "(1 - q)*a0*a1", "a0*a1"]],
            [["0", "a0*a1/(1 - q)", "a0*a1*(1 - a2)/(1 - q)^2"], ["0", "0", "0"], ["0", "0", "0"]],
        ),
        Case::Q102 => (
            [["1", "0", "0"], ["(1 - q)*a0", "a0", "0"], ["(1 - q)^2*a0", "(1 - q)*a0", "a0*a1"]],
            [["-a0", "-a0/(1 - q)", "-a0*a1*(1 - a2)/(1 - q)^2"], ["0", "0", "0"], ["0", "0", "0"]],
        ),
    };
    SymbolicSystem { case, a0: matrix(a0), a1: matrix(a1), pencil: case == Case::Q12 }
}

impl SymbolicSystem {
    /// `M(t)` with `t` left as a variable.
    pub fn rhs(&self) -> Matrix<RationalFunction> {
        let t = RationalFunction::var(Var::T);
        let scale = if self.pencil {
            (RationalFunction::int(1) - t.clone()).recip().expect("1 - t is nonzero")
        } else {
            RationalFunction::int(1)
        };
        std::array::from_fn(|i| {
            std::array::from_fn(|j| ((&self.a0[i][j] + &(&t * &self.a1[i][j])) * scale.clone()).reduce())
        })
    }
}

/// Numeric `A0`, `A1` of a case.
#[derive(Clone, Debug)]
pub struct LinearQSystem<S> {
    pub case: Case,
    pub a0: Matrix<S>,
    pub a1: Matrix<S>,
    pub pencil: bool,
}

impl<S: Field> LinearQSystem<S> {
    pub fn rhs(&self, t: &S) -> Matrix<S> {
        let scale = if self.pencil { S::one() / (S::one() - t.clone()) } else { S::one() };
        std::array::from_fn(|i| {
            std::array::from_fn(|j| (self.a0[i][j].clone() + t.clone() * self.a1[i][j].clone()) * scale.clone())
        })
    }
}

fn check_params<S: Field + Magnitude>(case: Case, p: &Params<S>) -> Result<(), QhgError> {
    if p.alpha.len() != case.alphas() {
        return Err(QhgError::BadParameters(format!(
            "{case} takes {} alphas, got {}",
            case.alphas(),
            p.alpha.len()
        )));
    }
    if !(p.q.magnitude() < 1.0) {
        return Err(QhgError::BadParameters("|q| must be below 1".into()));
    }
    let prod = p.alpha.iter().fold(S::one(), |a, b| a * b.clone());
    let gap = (prod - p.q.clone()).magnitude() / p.q.magnitude();
    if !(gap < 1e-9) {
        return Err(QhgError::BadParameters(format!("product of alphas differs from q by {gap:e}")));
    }
    Ok(())
}

fn value_of<'a, S: Field>(p: &'a Params<S>, t: Option<&S>) -> impl Fn(Var) -> S + 'a {
    let t = t.cloned();
    move |v: Var| {
        if v == Var::Q {
            p.q.clone()
        } else if v == Var::T {
            t.clone().expect("t is bound")
        } else {
            p.alpha[(v.id() - Var::alpha(0).id()) as usize].clone()
        }
    }
}

pub fn build_system<S: Field + Magnitude>(case: Case, p: &Params<S>) -> Result<LinearQSystem<S>, QhgError> {
    check_params(case, p)?;
    let sym = symbolic_system(case);
    let value = value_of(p, None);
    let eval = |m: &Matrix<RationalFunction>| -> Result<Matrix<S>, QhgError> {
        let mut out: Matrix<S> = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = m[i][j].eval(&value).ok_or(RatError::PoleAtPoint)?;
            }
        }
        Ok(out)
    };
    Ok(LinearQSystem { case, a0: eval(&sym.a0)?, a1: eval(&sym.a1)?, pencil: sym.pencil })
}

/// One component `prefactor · φ[upper; lower; q, arg]` of a solution.
struct Component<S> {
    prefactor: S,
    upper: Vec<S>,
    lower: Vec<S>,
    arg: S,
}

fn components<S: Field>(case: Case, p: &Params<S>, t: &S) -> [Component<S>; 3] {
    let q = p.q.clone();
    let a = |i: usize| p.alpha[i].clone();
    let prod = |idx: &[usize]| idx.iter().fold(S::one(), |acc, &i| acc * a(i));
    let one = || S::one();
    let c = |prefactor: S, upper: Vec<S>, lower: Vec<S>, arg: S| Component { prefactor, upper, lower, arg };
    let qt = q.clone() * t.clone();
    match case {
        Case::Q12 => {
            let (u1, u2, u3) = (a(5), prod(&[0, 1, 5]), prod(&[0, 1, 2, 3, 5]));
            let (l1, l2) = (prod(&[0, 5]), prod(&[0, 1, 2, 5]));
            let f1 = (one() - a(5)) / (one() - l1.clone());
            let f2 = f1.clone() * (one() - u2.clone()) / (one() - l2.clone());
            [
                c(one(), vec![u1.clone(), u2.clone(), u3.clone()], vec![l1.clone(), l2.clone()], qt.clone()),
                c(f1, vec![q.clone() * u1.clone(), u2.clone(), u3.clone()], vec![q.clone() * l1.clone(), l2.clone()], qt.clone()),
                c(f2, vec![q.clone() * u1, q.clone() * u2, u3], vec![q.clone() * l1, q.clone() * l2], qt),
            ]
        }
        Case::Q11 => {
            let (u1, u2) = (prod(&[0, 1]), prod(&[0, 1, 2, 3]));
            let (l1, l2) = (a(0), prod(&[0, 1, 2]));
            let f1 = (one() - q.clone()) * a(0) / (one() - a(0));
            let f2 = f1.clone() * (one() - u1.clone()) / (one() - l2.clone());
            let z = a(0) * qt.clone();
            [
                c(one(), vec![u1.clone(), u2.clone()], vec![l1.clone(), l2.clone()], z.clone()),
                c(f1, vec![u1.clone(), u2.clone()], vec![q.clone() * l1.clone(), l2.clone()], q.clone() * z.clone()),
                c(f2, vec![q.clone() * u1, u2], vec![q.clone() * l1, q.clone() * l2], q.clone() * z),
            ]
        }
        Case::Q101 => {
            let u = prod(&[0, 1, 2]);
            let (l1, l2) = (a(0), prod(&[0, 1]));
            let f1 = (one() - q.clone()) * a(0) / (one() - a(0));
            let f2 = f1.clone() * (one() - q.clone()) * a(0) * a(1) / (one() - l2.clone());
            let z = a(0) * a(0) * a(1) * qt;
            // The lower parameters of x1 are (q α0, α0 α1), as the limit from
            // Q11 gives; the displayed (α0, α0 α1) does not solve the system.
            [
                c(one(), vec![u.clone()], vec![l1.clone(), l2.clone()], z.clone()),
                c(f1, vec![u.clone()], vec![q.clone() * l1.clone(), l2.clone()], q.clone() * z.clone()),
                c(f2, vec![u], vec![q.clone() * l1, q.clone() * l2], q.clone() * q.clone() * z),
            ]
        }
        Case::Q102 => {
            let u = prod(&[0, 1, 2]);
            let (l1, l2) = (a(0), prod(&[0, 1]));
            let f1 = (one() - q.clone()) * a(0) / (one() - a(0));
            let f2 = f1.clone() * (one() - q.clone()) / (one() - l2.clone());
            let z = a(0) * qt;
            [
                c(one(), vec![S::zero(), u.clone()], vec![l1.clone(), l2.clone()], z.clone()),
                c(f1, vec![S::zero(), u.clone()], vec![q.clone() * l1.clone(), l2.clone()], q.clone() * z.clone()),
                c(f2, vec![S::zero(), u], vec![q.clone() * l1, q.clone() * l2], q.clone() * z),
            ]
        }
    }
}

/// The particular solution `(x0, x1, x2)` at `t`.
pub fn solution<S: Field + Magnitude>(case: Case, p: &Params<S>, t: &S, tol: f64) -> Result<[S; 3], QhgError> {
    check_params(case, p)?;
    let [c0, c1, c2] = components(case, p, t);
    let eval = |c: Component<S>| -> Result<S, QhgError> {
        let spec = PhiSpec::new(c.upper, c.lower, p.q.clone(), c.arg).with_tol(tol);
        Ok(c.prefactor * phi(&spec)?)
    };
    Ok([eval(c0)?, eval(c1)?, eval(c2)?])
}

fn max_norm<S: Magnitude>(v: &[S]) -> f64 {
    v.iter().map(Magnitude::magnitude).fold(0.0, f64::max)
}

/// `‖x(t/q) - M(t) x(t)‖∞`.
pub fn verify_linear<S: Field + Magnitude>(case: Case, p: &Params<S>, t: &S, tol: f64) -> Result<f64, QhgError> {
    let sys = build_system(case, p)?;
    let x = solution(case, p, t, tol)?;
    let x_next = solution(case, p, &(t.clone() / p.q.clone()), tol)?;
    let m = sys.rhs(t);
    let r: Vec<S> = (0..3)
        .map(|i| {
            let mx = (0..3).fold(S::zero(), |acc, j| acc + m[i][j].clone() * x[j].clone());
            x_next[i].clone() - mx
        })
        .collect();
    Ok(max_norm(&r))
}

/// Which `y`-assignment to build from a solution `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assignment {
    /// `y1 = -x0/x1`, `y5 = -x1/x2`, `y9 = ∓qt x2/x0` as displayed with each
    /// solution.
    Printed,
    /// The printed values times the constants of [`gauge`]. For Q12 the two
    /// agree.
    Corrected,
}

/// Constant factors `(c1, c5, c9)` taking the printed assignment to one
/// that the τ_c Riccati map of the quiver actually fixes. For Q11 this
/// gives `β0 = y1 y4 y5 y8 y9 = q α0 α1 α3 t`, the value the Q12
/// correspondence `β0 = q α1 α3 α5 t` takes under `α5 → α0/ε`, `t → εt`.
pub fn gauge<S: Field>(case: Case, p: &Params<S>) -> [S; 3] {
    let one = S::one();
    let m = one.clone() - p.q.clone();
    let m2 = m.clone() * m.clone();
    let a = |i: usize| p.alpha[i].clone();
    match case {
        Case::Q12 => [one.clone(), one.clone(), one],
        Case::Q11 => [m.clone() * a(0), one.clone(), one / m],
        Case::Q101 => [m.clone() * a(0), m * a(1), one / m2],
        Case::Q102 => [m.clone() * a(0), m, -(one / m2)],
    }
}

/// `(y1, y5, y9)` of the particular solution built from `x` at `t`.
pub fn riccati_point<S: Field>(case: Case, p: &Params<S>, t: &S, x: &[S; 3], how: Assignment) -> [S; 3] {
    let y9 = p.q.clone() * t.clone() * x[2].clone() / x[0].clone();
    let y = [
        -(x[0].clone() / x[1].clone()),
        -(x[1].clone() / x[2].clone()),
        if case == Case::Q11 { y9 } else { -y9 },
    ];
    match how {
        Assignment::Printed => y,
        Assignment::Corrected => {
            let c = gauge(case, p);
            std::array::from_fn(|i| y[i].clone() * c[i].clone())
        }
    }
}

/// Largest relative difference between the Riccati map applied to the
/// solution point at `t` and the solution point at `t/q`; `τ_c` moves `t`
/// to `t/q`.
pub fn verify_riccati_solution<S: Field + Magnitude>(
    case: Case,
    map: &BirationalMap,
    p: &Params<S>,
    t: &S,
    how: Assignment,
    tol: f64,
) -> Result<f64, QhgError> {
    let x = solution(case, p, t, tol)?;
    let t_next = t.clone() / p.q.clone();
    let x_next = solution(case, p, &t_next, tol)?;
    let y = riccati_point(case, p, t, &x, how);
    let want = riccati_point(case, p, &t_next, &x_next, how);
    let got = map.step(&y, &p.alpha, 0.0)?;
    Ok(got
        .iter()
        .zip(&want)
        .map(|(g, w)| (g.clone() - w.clone()).magnitude() / (1.0 + w.magnitude()))
        .fold(0.0, f64::max))
}

/// A replacement-limit degeneration between two cases: source parameters
/// as expressions in the target's and `eps`, the optional `t → eps t`, and
/// `x_src[i] = rescale[i] · x_tgt[i]`.
#[derive(Clone, Debug)]
pub struct Degeneration {
    pub source: Case,
    pub target: Case,
    pub alpha: Vec<RationalFunction>,
    pub scale_t: bool,
    pub rescale: [RationalFunction; 3],
}

pub fn degeneration(source: Case, target: Case) -> Result<Degeneration, QhgError> {
    let (alpha, scale_t, rescale): (&[&str], bool, [&str; 3]) = match (source, target) {
        (Case::Q12, Case::Q11) => (
            &["eps", "a1", "a2", "a3", "a4", "a0/eps"],
            true,
            ["1", "-1/(eps*(1 - q))", "-1/(eps*(1 - q))"],
        ),
        (Case::Q11, Case::Q101) => (&["a0", "a1/eps", "eps", "a2", "a3"], true, ["1", "1", "-1/(eps*(1 - q))"]),
        (Case::Q11, Case::Q102) => (&["a0", "eps", "a1/eps", "a2", "a3"], false, ["1", "1", "1/(1 - q)"]),
        _ => return Err(QhgError::NoDegeneration(source, target)),
    };
    let parse = |s: &str| RationalFunction::parse(s).expect("replacement parses");
    Ok(Degeneration {
        source,
        target,
        alpha: alpha.iter().map(|s| parse(s)).collect(),
        scale_t,
        rescale: rescale.map(parse),
    })
}

impl Degeneration {
    /// `D⁻¹ M_src D` after the replacement, before the limit.
    pub fn replaced_rhs(&self) -> Result<Matrix<RationalFunction>, QhgError> {
        let m = symbolic_system(self.source).rhs();
        let t_img = if self.scale_t {
            Some(&RationalFunction::var(Var::EPS) * &RationalFunction::var(Var::T))
        } else {
            None
        };
        let images = |v: Var| -> Option<RationalFunction> {
            if v == Var::T {
                t_img.clone()
            } else if v == Var::Q || v == Var::EPS {
                None
            } else {
                Some(self.alpha[(v.id() - Var::alpha(0).id()) as usize].clone())
            }
        };
        let mut out: Matrix<RationalFunction> = std::array::from_fn(|_| std::array::from_fn(|_| RationalFunction::int(0)));
        for i in 0..3 {
            for j in 0..3 {
                let e = m[i][j].substitute(&images)?;
                out[i][j] = (&(&e * &self.rescale[j]) / &self.rescale[i]).reduce();
            }
        }
        Ok(out)
    }

    /// Entries whose `eps → 0` limit differs from the target system, as
    /// `(row, col)`; empty when the limit reproduces the target exactly.
    pub fn symbolic_mismatches(&self) -> Result<Vec<(usize, usize)>, QhgError> {
        let replaced = self.replaced_rhs()?;
        let want = symbolic_system(self.target).rhs();
        let mut bad = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let lim = replaced[i][j]
                    .limit_zero(Var::EPS)
                    .map_err(|Divergent| QhgError::Divergent { row: i, col: j })?;
                if !lim.equals(&want[i][j]) {
                    bad.push((i, j));
                }
            }
        }
        Ok(bad)
    }

    /// Largest relative difference between the rescaled source solution at
    /// `eps` and the target solution, both at target time `t`.
    pub fn error_at<S: Field + Magnitude>(&self, p: &Params<S>, t: &S, eps: &S, tol: f64) -> Result<f64, QhgError> {
        let value = |v: Var| -> S {
            if v == Var::EPS {
                eps.clone()
            } else {
                value_of(p, None)(v)
            }
        };
        let src = Params {
            q: p.q.clone(),
            alpha: self
                .alpha
                .iter()
                .map(|f| f.eval(&value).ok_or(RatError::PoleAtPoint))
                .collect::<Result<_, _>>()?,
        };
        let t_src = if self.scale_t { eps.clone() * t.clone() } else { t.clone() };
        let xs = solution(self.source, &src, &t_src, tol)?;
        let xt = solution(self.target, p, t, tol)?;
        let mut err: f64 = 0.0;
        for i in 0..3 {
            let d = self.rescale[i].eval(&value).ok_or(RatError::PoleAtPoint)?;
            let est = xs[i].clone() / d;
            err = err.max((est - xt[i].clone()).magnitude() / (1.0 + xt[i].magnitude()));
        }
        Ok(err)
    }
}

/// Outcome of [`verify_degeneration`].
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationReport {
    pub source: Case,
    pub target: Case,
    pub mismatches: Vec<(usize, usize)>,
    /// `(eps, error)` along the schedule.
    pub table: Vec<(f64, f64)>,
    /// Least-squares slope of `log error` against `log eps`.
    pub slope: f64,
}

impl DegenerationReport {
    pub fn passes(&self, slope_tol: f64) -> bool {
        self.mismatches.is_empty() && (self.slope - 1.0).abs() <= slope_tol
    }
}

/// Checks the exact matrix limit and the numeric `O(eps)` convergence of
/// the solutions, evaluating in the scalar type `S` at the target's standard
/// parameters and time `t`.
pub fn verify_degeneration<S: Field + Magnitude>(
    source: Case,
    target: Case,
    schedule: &[BigRational],
    t: &BigRational,
    tol: f64,
) -> Result<DegenerationReport, QhgError> {
    let d = degeneration(source, target)?;
    let mismatches = d.symbolic_mismatches()?;
    let p = standard_params::<S>(target);
    let ts = S::from_rational(t);
    let mut table = Vec::new();
    for e in schedule {
        let err = d.error_at(&p, &ts, &S::from_rational(e), tol)?;
        table.push((num::ToPrimitive::to_f64(e).unwrap_or(f64::NAN), err));
    }
    Ok(DegenerationReport { source, target, mismatches, slope: fit_slope(&table), table })
}

/// Least-squares slope of `log y` against `log x`.
pub fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// `eps = 10^-2, …, 10^-k`.
pub fn eps_schedule(k: u32) -> Vec<BigRational> {
    (2..=k).map(|e| BigRational::new(BigInt::one(), BigInt::from(10).pow(e))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_names_round_trip() {
        for c in Case::ALL {
            assert_eq!(c.name().parse::<Case>().unwrap(), c);
        }
        assert!("Q103".parse::<Case>().is_err());
    }

    #[test]
    fn standard_point_satisfies_the_product_rule() {
        for c in Case::ALL {
            let p = standard_params_exact(c);
            assert_eq!(p.alpha.iter().fold(BigRational::one(), |a, b| a * b), p.q);
        }
        
    }
}
