//! Seeds, elementary steps and words, compiled automorphisms, and confluence
//! of coefficients.
//!
//! A [`Word`] is a list of elementary steps applied to a seed leftmost-first.
//! Its automorphism `A` sends `y_k` to the final coefficient in slot `k`, so
//! concatenation of words is composition `(uv)(f) = u(v(f))`.

use std::fmt;

use num::BigRational;

use crate::quiver::{Quiver, QuiverError, Relabel, VertexMap};
use crate::ratfield::{Divergent, RatError, RationalFunction, Var};
use crate::scalar::Semifield;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SeedError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Rat(#[from] RatError),
    #[error("division by zero while applying {0}")]
    DivisionByZero(String),
    #[error("word {0} does not preserve the quiver")]
    QuiverNotPreserved(String),
    #[error("bad word: {0}")]
    BadWord(String),
}

/// An elementary step.
///
/// `Permute(σ)` sets `ỹ_k = y_{σ(k)}` and `λ̃(k,l) = λ(σ(k), σ(l))`; a
/// transposition is the special case of a 2-cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Mutation(usize),
    Permute(Vec<usize>),
    Reversal,
}

impl Step {
    /// The permutation step of a cycle `(a1, …, am)`, mapping `a_k → a_{k+1}`.
    pub fn cycle(cyc: &[usize]) -> Step {
        Step::Permute(cyc.to_vec())
    }

    pub fn transposition(i: usize, j: usize) -> Step {
        Step::Permute(vec![i, j])
    }

    pub fn inverse(&self) -> Step {
        match self {
            Step::Permute(c) => Step::Permute(c.iter().rev().copied().collect()),
            s => s.clone(),
        }
    }

    fn vertex_map(cyc: &[usize], n: usize) -> Result<VertexMap, QuiverError> {
        VertexMap::cycle(n, cyc)
    }

    /// The quiver after this step.
    pub fn apply_quiver(&self, q: &Quiver) -> Result<Quiver, QuiverError> {
        match self {
            Step::Mutation(i) => q.mutate(*i),
            Step::Permute(c) => q.permute(&Self::vertex_map(c, q.n())?),
            Step::Reversal => Ok(q.reverse()),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Mutation(i) => write!(f, "m{i}"),
            Step::Permute(c) => {
                let parts: Vec<String> = c.iter().map(|k| k.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            Step::Reversal => write!(f, "iota"),
        }
    }
}

/// A sequence of elementary steps, applied leftmost-first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    pub steps: Vec<Step>,
}

impl Word {
    pub fn new(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn mutation_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Mutation(_))).count()
    }

    /// Concatenation: the automorphism of `self.then(other)` is `self ∘ other`.
    pub fn then(&self, other: &Word) -> Word {
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        Word { steps }
    }

    pub fn inverse(&self) -> Word {
        Word { steps: self.steps.iter().rev().map(Step::inverse).collect() }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.then(&base);
        }
        out
    }

    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Word {
        words.into_iter().fold(Word::identity(), |acc, w| acc.then(w))
    }

    /// Parses the step grammar `mK`, `(i,j,…)`, `iota`; any other token is
    /// handed to `resolve`, which may expand named group elements. Tokens may
    /// carry an integer power, e.g. `pi1^5` or `V'^-1`.
    pub fn parse(s: &str, resolve: &dyn Fn(&str) -> Option<Word>) -> Result<Word, SeedError> {
        let bad = |m: String| SeedError::BadWord(m);
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut out = Word::identity();
        while pos < chars.len() {
            let c = chars[pos];
            if c.is_whitespace() || c == '*' {
                pos += 1;
                continue;
            }
            let (word, next) = if c == '(' {
                let end = chars[pos..].iter().position(|&c| c == ')').ok_or_else(|| bad(format!("unclosed '(' in {s}")))?;
                let inner: String = chars[pos + 1..pos + end].iter().collect();
                let cyc: Result<Vec<usize>, _> = inner.split(',').map(|t| t.trim().parse::<usize>()).collect();
                let cyc = cyc.map_err(|_| bad(format!("bad cycle ({inner})")))?;
                if cyc.len() < 2 {
                    return Err(bad(format!("cycle ({inner}) needs two vertices")));
                }
                (Word::new(vec![Step::cycle(&cyc)]), pos + end + 1)
            } else if c.is_ascii_alphabetic() {
                let mut end = pos;
                while end < chars.len() && (chars[end].is_ascii_alphanumeric() || chars[end] == '_' || chars[end] == '\'') {
                    end += 1;
                }
                let tok: String = chars[pos..end].iter().collect();
                let w = if tok == "iota" {
                    Word::new(vec![Step::Reversal])
                } else if let Some(k) = tok.strip_prefix('m').and_then(|d| d.parse::<usize>().ok()) {
                    Word::new(vec![Step::Mutation(k)])
                } else {
                    resolve(&tok).ok_or_else(|| bad(format!("unknown token '{tok}'")))?
                };
                (w, end)
            } else {
                return Err(bad(format!("unexpected '{c}' in {s}")));
            };
            pos = next;
            let mut word = word;
            if pos < chars.len() && chars[pos] == '^' {
                let mut end = pos + 1;
                if end < chars.len() && chars[end] == '-' {
                    end += 1;
                }
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let e: String = chars[pos + 1..end].iter().collect();
                let k: i64 = e.parse().map_err(|_| bad(format!("bad exponent '{e}'")))?;
                word = word.pow(k);
                pos = end;
            }
            out = out.then(&word);
        }
        Ok(out)
    }

    /// Parses a word of elementary steps only.
    pub fn parse_steps(s: &str) -> Result<Word, SeedError> {
        Word::parse(s, &|_| None)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A quiver together with one coefficient per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Seed<S> {
    pub quiver: Quiver,
    pub coeffs: Vec<S>,
}

impl Seed<RationalFunction> {
    /// The initial seed `y_k` on `quiver`.
    pub fn initial(quiver: Quiver) -> Self {
        let coeffs = (1..=quiver.n()).map(RationalFunction::y).collect();
        Seed { quiver, coeffs }
    }

    /// Seed-level equality up to field equality of coefficients.
    pub fn equals(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.equals(b))
    }
}

impl<S: Semifield> Seed<S> {
    pub fn new(quiver: Quiver, coeffs: Vec<S>) -> Self {
        assert_eq!(quiver.n(), coeffs.len(), "one coefficient per vertex");
        Seed { quiver, coeffs }
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k - 1]
    }

    pub fn apply_step(&self, step: &Step) -> Result<Seed<S>, SeedError> {
        let n = self.quiver.n();
        let quiver = step.apply_quiver(&self.quiver)?;
        let coeffs = match step {
            Step::Mutation(i) => {
                let i = *i;
                let yi = &self.coeffs[i - 1];
                let div0 = || SeedError::DivisionByZero(step.to_string());
                let inv = yi.try_recip().ok_or_else(div0)?;
                let p = S::one() + yi.clone();
                let p_inv = p.try_recip().ok_or_else(div0)?;
                // y_i / (1 + y_i) = (1 + y_i^{-1})^{-1}
                let q = yi.clone() * p_inv;
                let mut out = Vec::with_capacity(n);
                for k in 1..=n {
                    let yk = &self.coeffs[k - 1];
                    let l = self.quiver.lambda(k, i);
                    let v = if k == i {
                        inv.clone()
                    } else if l > 0 {
                        yk.clone() * crate::scalar::powi(&p, l).expect("nonnegative power")
                    } else if l < 0 {
                        yk.clone() * crate::scalar::powi(&q, -l).expect("nonnegative power")
                    } else {
                        yk.clone()
                    };
                    out.push(if l != 0 || k == i { v.normalize() } else { v });
                }
                out
            }
            Step::Permute(c) => {
                let sigma = VertexMap::cycle(n, c)?;
                (1..=n).map(|k| self.coeffs[sigma.apply(k) - 1].clone()).collect()
            }
            Step::Reversal => {
                let mut out = Vec::with_capacity(n);
                for y in &self.coeffs {
                    out.push(y.try_recip().ok_or_else(|| SeedError::DivisionByZero("iota".into()))?.normalize());
                }
                out
            }
        };
        Ok(Seed { quiver, coeffs })
    }

    pub fn apply_word(&self, w: &Word) -> Result<Seed<S>, SeedError> {
        let mut s = self.clone();
        for step in &w.steps {
            s = s.apply_step(step)?;
        }
        Ok(s)
    }

    /// Maps coefficients through `f`.
    pub fn map<T: Semifield>(&self, f: impl Fn(&S) -> T) -> Seed<T> {
        Seed { quiver: self.quiver.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }
}

/// The quiver reached by a word, without touching coefficients.
pub fn word_quiver(q: &Quiver, w: &Word) -> Result<Quiver, QuiverError> {
    w.steps.iter().try_fold(q.clone(), |acc, s| s.apply_quiver(&acc))
}

/// Whether `w` returns `q` to itself.
pub fn preserves(q: &Quiver, w: &Word) -> Result<bool, QuiverError> {
    Ok(&word_quiver(q, w)? == q)
}

/// A field automorphism given by the images of `y_1, …, y_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Automorphism {
    pub images: Vec<RationalFunction>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).map(RationalFunction::y).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, k: usize) -> &RationalFunction {
        &self.images[k - 1]
    }

    fn lookup(&self, v: Var) -> Option<RationalFunction> {
        v.vertex().filter(|&k| k <= self.n()).map(|k| self.images[k - 1].clone())
    }

    /// `a(f)`: substitutes the images into `f`.
    pub fn act_on(&self, f: &RationalFunction) -> Result<RationalFunction, RatError> {
        Ok(f.substitute(&|v| self.lookup(v))?.reduce())
    }

    /// `self ∘ other`: `(self ∘ other)(y_k) = self(other(y_k))`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism, RatError> {
        let images = other.images.iter().map(|f| self.act_on(f)).collect::<Result<_, _>>()?;
        Ok(Automorphism { images })
    }

    pub fn equals(&self, other: &Automorphism) -> bool {
        self.images.len() == other.images.len() && self.images.iter().zip(&other.images).all(|(a, b)| a.equals(b))
    }

    /// One line per variable, `yK -> image`.
    pub fn dump(&self) -> String {
        self.images.iter().enumerate().map(|(k, f)| format!("y{} -> {f}\n", k + 1)).collect()
    }
}

/// Compiles a word that preserves `q` into its automorphism.
pub fn compile(w: &Word, q: &Quiver) -> Result<Automorphism, SeedError> {
    let s = Seed::initial(q.clone()).apply_word(w)?;
    if s.quiver != *q {
        return Err(SeedError::QuiverNotPreserved(w.to_string()));
    }
    Ok(Automorphism { images: s.coeffs })
}

/// `w(f)` computed by substituting one elementary step at a time, innermost
/// (last) step first. Keeps intermediate expressions small when `f` is a
/// monomial whose image is again a monomial.
pub fn act_backward(w: &Word, q: &Quiver, f: &RationalFunction) -> Result<RationalFunction, SeedError> {
    let mut quivers = vec![q.clone()];
    for s in &w.steps {
        let next = s.apply_quiver(quivers.last().expect("nonempty"))?;
        quivers.push(next);
    }
    let mut acc = f.clone();
    for (idx, step) in w.steps.iter().enumerate().rev() {
        let before = &quivers[idx];
        let img = step_images(step, before)?;
        acc = acc.substitute(&|v| v.vertex().filter(|&k| k <= before.n()).and_then(|k| img[k - 1].clone()))?.reduce();
    }
    Ok(acc)
}

/// Images of `y_k` under a single step at quiver `q` (`None` = fixed).
fn step_images(step: &Step, q: &Quiver) -> Result<Vec<Option<RationalFunction>>, SeedError> {
    let n = q.n();
    let mut img = vec![None; n];
    match step {
        Step::Mutation(i) => {
            let i = *i;
            let yi = RationalFunction::y(i);
            let p = &RationalFunction::int(1) + &yi;
            let qv = yi.checked_div(&p)?;
            for k in 1..=n {
                let l = q.lambda(k, i);
                if k == i {
                    img[k - 1] = Some(yi.recip()?);
                } else if l > 0 {
                    img[k - 1] = Some(&RationalFunction::y(k) * &p.power(l)?);
                } else if l < 0 {
                    img[k - 1] = Some(&RationalFunction::y(k) * &qv.power(-l)?);
                }
            }
        }
        Step::Permute(c) => {
            let sigma = VertexMap::cycle(n, c)?;
            for k in 1..=n {
                if sigma.apply(k) != k {
                    img[k - 1] = Some(RationalFunction::y(sigma.apply(k)));
                }
            }
        }
        Step::Reversal => {
            for k in 1..=n {
                img[k - 1] = Some(RationalFunction::y(k).recip()?);
            }
        }
    }
    Ok(img)
}

/// The confluence `i → j` on coefficients: `y_i ↦ ε⁻¹ y_j`, `y_j ↦ ε`, other
/// variables renamed by `relabel`, limit `ε → 0`. Slot `j` receives the
/// limit of the product of slots `i` and `j`; slot `i` is dropped.
pub fn confluence_seed(
    s: &Seed<RationalFunction>,
    i: usize,
    j: usize,
    relabel: &Relabel,
) -> Result<Result<Seed<RationalFunction>, Divergent>, SeedError> {
    let n = s.quiver.n();
    let quiver = s.quiver.confluence(i, j, relabel)?;
    let old_of = relabel.table(n, i)?;
    let sub = confluence_substitution(n, i, j, relabel);
    let mut coeffs = Vec::with_capacity(n - 1);
    for &old in &old_of {
        let value = if old == j {
            &s.coeffs[i - 1] * &s.coeffs[j - 1]
        } else {
            s.coeffs[old - 1].clone()
        };
        let pushed = value.substitute(&|v| v.vertex().filter(|&k| k <= n).map(|k| sub[k - 1].clone()))?;
        match pushed.limit_zero(Var::EPS) {
            Ok(f) => coeffs.push(f),
            Err(d) => return Ok(Err(d)),
        }
    }
    Ok(Ok(Seed { quiver, coeffs }))
}

/// Images of `y_1..y_n` under the confluence substitution (before the limit).
pub fn confluence_substitution(n: usize, i: usize, j: usize, relabel: &Relabel) -> Vec<RationalFunction> {
    let eps = RationalFunction::var(Var::EPS);
    (1..=n)
        .map(|k| {
            if k == i {
                &RationalFunction::y(relabel.apply(j)) / &eps
            } else if k == j {
                eps.clone()
            } else {
                RationalFunction::y(relabel.apply(k))
            }
        })
        .collect()
}

/// The same substitution on ε-leading-term values: positive rational point
/// `point` on the target labels, `y_i ↦ ε⁻¹ point_j`, `y_j ↦ ε`.
pub fn confluence_point(
    n: usize,
    i: usize,
    j: usize,
    relabel: &Relabel,
    point: &[BigRational],
) -> Vec<crate::series::Leading> {
    use crate::series::Leading;
    (1..=n)
        .map(|k| {
            if k == i {
                Leading::new(-1, point[relabel.apply(j) - 1].clone())
            } else if k == j {
                Leading::eps()
            } else {
                Leading::constant(point[relabel.apply(k) - 1].clone())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::q12;

    fn f(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn first_mutation_on_q12() {
        let s = Seed::initial(q12()).apply_step(&Step::Mutation(1)).unwrap();
        assert_eq!(s.coeffs[0], f("1/y1"));
        assert_eq!(s.coeffs[2], f("y3/(1 + 1/y1)"));
        assert_eq!(s.coeffs[3], f("(1 + y1)*y4"));
        assert_eq!(s.coeffs[10], f("(1 + y1)*y11"));
        assert_eq!(s.coeffs[11], f("y12/(1 + 1/y1)"));
        for k in [2, 5, 6, 7, 8, 9, 10] {
            assert_eq!(s.coeffs[k - 1], RationalFunction::y(k));
        }
        let back = s.apply_step(&Step::Mutation(1)).unwrap();
        assert!(back.equals(&Seed::initial(q12())));
    }

    #[test]
    fn reversal_inverts() {
        let s = Seed::initial(q12()).apply_step(&Step::Reversal).unwrap();
        assert_eq!(s.quiver, q12().reverse());
        assert!(s.coeffs.iter().enumerate().all(|(k, c)| *c == f(&format!("1/y{}", k + 1))));
    }

    #[test]
    fn word_grammar() {
        let w = Word::parse_steps("m1 (1,2) m1").unwrap();
        assert_eq!(w.to_string(), "m1 (1,2) m1");
        let w = Word::parse_steps("m1(1,3,5)iota").unwrap();
        assert_eq!(w.steps, vec![Step::Mutation(1), Step::cycle(&[1, 3, 5]), Step::Reversal]);
        assert_eq!(w.inverse().steps, vec![Step::Reversal, Step::cycle(&[5, 3, 1]), Step::Mutation(1)]);
        assert!(Word::parse_steps("m1 x2").is_err());
        let named = |t: &str| (t == "g").then(|| Word::parse_steps("m2 m3").unwrap());
        assert_eq!(Word::parse("g^2", &named).unwrap().len(), 4);
        assert_eq!(Word::parse("g^-1", &named).unwrap().to_string(), "m3 m2");
    }

    #[test]
    fn r0_on_q12() {
        let w = Word::parse_steps("m1 (1,2) m1").unwrap();
        let a = compile(&w, &q12()).unwrap();
        assert_eq!(*a.image(3), f("y3*(1 + y2)/(1 + 1/y1)"));
        let id = a.compose(&a).unwrap();
        assert!(id.equals(&Automorphism::identity(12)));
        let alpha0 = f("y1*y2");
        assert_eq!(a.act_on(&alpha0).unwrap(), f("1/(y1*y2)"));
        assert_eq!(act_backward(&w, &q12(), &alpha0).unwrap(), f("1/(y1*y2)"));
    }

    #[test]
    fn figure_one_seed_confluence() {
        let q = Quiver::from_matrix(&[
            vec![0, -1, -1, 1],
            vec![1, 0, -1, 1],
            vec![1, 1, 0, -1],
            vec![-1, -1, 1, 0],
        ])
        .unwrap();
        let c = confluence_seed(&Seed::initial(q), 4, 1, &Relabel::identity()).unwrap().unwrap();
        assert_eq!(c.coeffs, vec![f("y1"), f("y2"), f("y3")]);
        assert_eq!(c.quiver.matrix(), vec![vec![0, -2, 0], vec![2, 0, -1], vec![0, 1, 0]]);
    }
}
