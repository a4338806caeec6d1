use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, Zero};

use super::gcd::gcd;
use super::{Monomial, Polynomial, RatError, Var};
use crate::scalar::{Field, Semifield};

static REDUCE_THRESHOLD: AtomicUsize = AtomicUsize::new(5000);

/// Sets the total term count above which arithmetic results are reduced
/// eagerly. Below it, fractions are left unreduced until asked.
pub fn set_reduce_threshold(terms: usize) {
    REDUCE_THRESHOLD.store(terms, Ordering::Relaxed);
}

pub fn reduce_threshold() -> usize {
    REDUCE_THRESHOLD.load(Ordering::Relaxed)
}

/// Marker for an ε→0 limit that does not exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Divergent;

impl fmt::Display for Divergent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "divergent")
    }
}

impl std::error::Error for Divergent {}

/// An element of Q(vars) as a fraction of integer polynomials.
///
/// Equality is field equality (cross-multiplication), independent of whether
/// either side has been reduced.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
    reduced: bool,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, RatError> {
        if den.is_zero() {
            return Err(RatError::DivisionByZero);
        }
        Ok(Self::raw(num, den))
    }

    fn raw(num: Polynomial, den: Polynomial) -> Self {
        let f = Self { num, den, reduced: false };
        if f.size() > reduce_threshold() {
            f.reduce()
        } else {
            f
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self { num: p, den: Polynomial::one(), reduced: true }
    }

    /// Sign-normalizes a fraction already known to be in lowest terms.
    fn lowest(num: Polynomial, den: Polynomial) -> Self {
        if den.leading_coeff().is_negative() {
            Self { num: -&num, den: -&den, reduced: true }
        } else {
            Self { num, den, reduced: true }
        }
    }

    /// Product of reduced fractions, cancelling across before multiplying.
    fn mul_reduced(&self, rhs: &Self) -> Self {
        if self.num == rhs.num && self.den == rhs.den {
            return Self::lowest(self.num.pow(2), self.den.pow(2));
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let cut = |p: &Polynomial, g: &Polynomial| if g.is_one() { p.clone() } else { p.div_exact(g).expect("gcd divides") };
        Self::lowest(
            &cut(&self.num, &g1) * &cut(&rhs.num, &g2),
            &cut(&self.den, &g2) * &cut(&rhs.den, &g1),
        )
    }

    /// Sum of reduced fractions; only the gcd of the denominators can cancel.
    fn add_reduced(&self, rhs: &Self) -> Self {
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            return Self::lowest(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den);
        }
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = rhs.den.div_exact(&g).expect("gcd divides");
        let n = &(&self.num * &d) + &(&rhs.num * &b);
        if n.is_zero() {
            return Self::int(0);
        }
        let h = gcd(&n, &g);
        if h.is_one() {
            Self::lowest(n, &(&b * &d) * &g)
        } else {
            Self::lowest(n.div_exact(&h).expect("gcd divides"), &(&b * &d) * &g.div_exact(&h).expect("gcd divides"))
        }
    }

    pub fn var(v: Var) -> Self {
        Self { num: Polynomial::var(v), den: Polynomial::one(), reduced: true }
    }

    pub fn y(k: usize) -> Self {
        Self::var(Var::y(k))
    }

    pub fn int(n: i64) -> Self {
        Self { num: Polynomial::constant(n.into()), den: Polynomial::one(), reduced: true }
    }

    pub fn constant(r: &BigRational) -> Self {
        Self {
            num: Polynomial::constant(r.numer().clone()),
            den: Polynomial::constant(r.denom().clone()),
            reduced: true,
        }
    }

    /// `c · ∏ v^e` with possibly negative exponents.
    pub fn monomial(c: &BigRational, exps: impl IntoIterator<Item = (Var, i64)>) -> Self {
        let mut up = Vec::new();
        let mut down = Vec::new();
        for (v, e) in exps {
            if e > 0 {
                up.push((v, e as u32));
            } else if e < 0 {
                down.push((v, (-e) as u32));
            }
        }
        Self {
            num: Polynomial::monomial(Monomial::from_pairs(up), c.numer().clone()),
            den: Polynomial::monomial(Monomial::from_pairs(down), c.denom().clone()),
            reduced: false,
        }
        .reduce()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Total number of terms in numerator and denominator.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    /// The constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        let r = self.clone().reduce();
        match (r.num.as_constant(), r.den.as_constant()) {
            (Some(n), Some(d)) => Some(BigRational::new(n, d)),
            _ => None,
        }
    }

    /// Cancels the gcd and normalizes: coprime integer contents, positive
    /// leading coefficient in the denominator.
    pub fn reduce(self) -> Self {
        if self.reduced {
            return self;
        }
        if self.num.is_zero() {
            return Self { num: Polynomial::zero(), den: Polynomial::one(), reduced: true };
        }
        let g = gcd(&self.num, &self.den);
        let (mut num, mut den) = if g.is_one() {
            (self.num, self.den)
        } else {
            (
                self.num.div_exact(&g).expect("gcd divides numerator"),
                self.den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if den.leading_coeff().is_negative() {
            num = -&num;
            den = -&den;
        }
        Self { num, den, reduced: true }
    }

    pub fn equals(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn recip(&self) -> Result<Self, RatError> {
        if self.num.is_zero() {
            return Err(RatError::DivisionByZero);
        }
        if self.reduced {
            return Ok(Self::lowest(self.den.clone(), self.num.clone()));
        }
        Ok(Self { num: self.den.clone(), den: self.num.clone(), reduced: false })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, RatError> {
        Ok(self * &other.recip()?)
    }

    pub fn power(&self, k: i64) -> Result<Self, RatError> {
        if k < 0 && self.is_zero() {
            return Err(RatError::DivisionByZero);
        }
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        Ok(Self { num: base.num.pow(e), den: base.den.pow(e), reduced: base.reduced })
    }

    /// Simultaneous substitution of rational functions for variables
    /// (variables mapped to `None` are kept).
    ///
    /// Numerator and denominator are homogenized over the same common
    /// denominator, so each is substituted as a polynomial.
    pub fn substitute(&self, images: &impl Fn(Var) -> Option<RationalFunction>) -> Result<Self, RatError> {
        let mut subs: HashMap<Var, RationalFunction> = HashMap::new();
        for v in self.vars() {
            if let Some(img) = images(v) {
                subs.insert(v, img);
            }
        }
        if subs.is_empty() {
            return Ok(self.clone());
        }
        let degs: HashMap<Var, u32> = subs
            .keys()
            .map(|&v| (v, self.num.degree_in(v).max(self.den.degree_in(v))))
            .collect();
        let num = homogenized(&self.num, &subs, &degs);
        let den = homogenized(&self.den, &subs, &degs);
        if den.is_zero() {
            return Err(RatError::DivisionByZero);
        }
        Ok(Self::raw(num, den))
    }

    /// Substitution from an explicit map.
    pub fn substitute_map(&self, map: &HashMap<Var, RationalFunction>) -> Result<Self, RatError> {
        self.substitute(&|v| map.get(&v).cloned())
    }

    /// Limit as `eps → 0`: zero for positive valuation, the ratio of lowest
    /// coefficients for valuation zero, [`Divergent`] otherwise.
    pub fn limit_zero(&self, eps: Var) -> Result<Self, Divergent> {
        if self.num.is_zero() {
            return Ok(Self::int(0));
        }
        let (vn, u0) = lowest_in(&self.num, eps);
        let (vd, w0) = lowest_in(&self.den, eps);
        match vn.cmp(&vd) {
            std::cmp::Ordering::Greater => Ok(Self::int(0)),
            std::cmp::Ordering::Less => Err(Divergent),
            std::cmp::Ordering::Equal => Ok(Self { num: u0, den: w0, reduced: false }.reduce()),
        }
    }

    /// Valuation in `eps` (order of vanishing at `eps = 0`).
    pub fn valuation(&self, eps: Var) -> Option<i64> {
        if self.num.is_zero() {
            return None;
        }
        Some(self.num.min_degree_in(eps) as i64 - self.den.min_degree_in(eps) as i64)
    }

    /// Exact evaluation in any field; `None` at a pole.
    pub fn eval<F: Field>(&self, value: &impl Fn(Var) -> F) -> Option<F> {
        let d = self.den.eval(value);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(value) / d)
    }

    /// Complex evaluation; a pole is reported when `|den| < tol`.
    pub fn eval_numeric(&self, point: &impl Fn(Var) -> Complex64, tol: f64) -> Result<Complex64, RatError> {
        let d: Complex64 = self.den.eval(point);
        if d.norm() < tol {
            return Err(RatError::PoleAtPoint);
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn eval_f64(&self, point: &impl Fn(Var) -> f64, tol: f64) -> Result<f64, RatError> {
        let d: f64 = self.den.eval(point);
        if d.abs() < tol {
            return Err(RatError::PoleAtPoint);
        }
        Ok(self.num.eval(point) / d)
    }
}

/// `(valuation, lowest coefficient)` of `p` as a polynomial in `eps`.
fn lowest_in(p: &Polynomial, eps: Var) -> (u32, Polynomial) {
    let v = p.min_degree_in(eps);
    let terms = p
        .terms()
        .iter()
        .filter(|(m, _)| m.exp(eps) == v)
        .map(|(m, c)| (m.split(eps).1, c.clone()));
    (v, Polynomial::from_terms(terms))
}

/// `Σ c·∏ n_v^{e_v} d_v^{D_v - e_v}` for images `n_v/d_v`.
fn homogenized(p: &Polynomial, subs: &HashMap<Var, RationalFunction>, degs: &HashMap<Var, u32>) -> Polynomial {
    let mut npow: HashMap<(Var, u32), Polynomial> = HashMap::new();
    let mut dpow: HashMap<(Var, u32), Polynomial> = HashMap::new();
    let mut acc = Polynomial::zero();
    for (m, c) in p.terms() {
        let mut kept = Monomial::one();
        let mut t = Polynomial::constant(c.clone());
        for (&v, &dv) in degs {
            let e = m.exp(v);
            let img = &subs[&v];
            if e > 0 {
                let f = npow.entry((v, e)).or_insert_with(|| img.num.pow(e));
                t = &t * f;
            }
            if dv > e {
                let f = dpow.entry((v, dv - e)).or_insert_with(|| img.den.pow(dv - e));
                t = &t * f;
            }
        }
        for (v, e) in m.iter() {
            if !subs.contains_key(&v) {
                kept = kept.mul(&Monomial::var_pow(v, e));
            }
        }
        acc = &acc + &t.mul_monomial(&kept, &BigInt::one());
    }
    acc
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for RationalFunction {
    /// Canonical text: `(num)/(den)` of the reduced form in ascending
    /// graded-lex order, or just the numerator when the denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.clone().reduce();
        if r.den.is_one() {
            write!(f, "{}", r.num)
        } else {
            write!(f, "({})/({})", r.num, r.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.reduced && rhs.reduced {
            return self.add_reduced(rhs);
        }
        if self.den == rhs.den {
            return RationalFunction::raw(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::raw(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone(), reduced: self.reduced }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::int(0);
        }
        if self.reduced && rhs.reduced {
            return self.mul_reduced(rhs);
        }
        // cancel identical factors across the product before multiplying out
        if self.den == rhs.num {
            return RationalFunction::raw(self.num.clone(), rhs.den.clone());
        }
        if self.num == rhs.den {
            return RationalFunction::raw(rhs.num.clone(), self.den.clone());
        }
        RationalFunction::raw(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; see [`RationalFunction::checked_div`].
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        Self::int(0)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::int(1)
    }
}

impl Semifield for RationalFunction {
    fn try_recip(&self) -> Option<Self> {
        self.recip().ok()
    }

    fn normalize(self) -> Self {
        self.reduce()
    }
}

impl Field for RationalFunction {
    fn from_rational(r: &BigRational) -> Self {
        Self::constant(r)
    }
}

impl From<Var> for RationalFunction {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn arithmetic_and_identities() {
        assert_eq!(f("y1") + RationalFunction::zero(), f("y1"));
        assert!((f("y1/y2") * f("y2/y1")).equals(&RationalFunction::one()));
        let d = f("1 + y1^2").checked_div(&f("1 + y1")).unwrap().reduce();
        assert_eq!(d.to_string(), "(1 + y1^2)/(1 + y1)");
        assert_eq!(
            RationalFunction::zero().checked_div(&RationalFunction::zero()).unwrap_err(),
            RatError::DivisionByZero
        );
    }

    #[test]
    fn powers() {
        assert_eq!(f("y1").power(-1).unwrap().to_string(), "(1)/(y1)");
        assert_eq!(f("1 + y1").power(2).unwrap().to_string(), "1 + 2*y1 + y1^2");
        assert!(f("(y1 + y2)/y3").power(0).unwrap().equals(&RationalFunction::one()));
        assert!(RationalFunction::zero().power(-2).is_err());
    }

    #[test]
    fn canonical_form() {
        let g = f("(y2 + y1*y2 + y1*y2^2)/(y2^2)");
        assert_eq!(g.to_string(), "(1 + y1 + y1*y2)/(y2)");
        let h = f("(2 + 2*y1)/(-4*y3)");
        assert_eq!(h.to_string(), "(-1 - y1)/(2*y3)");
        assert_eq!(f("(1 + y1)^2/(1 + y1)").to_string(), "1 + y1");
    }

    #[test]
    fn substitution() {
        let a0 = f("y1*y2*y11");
        let s = a0.substitute(&|v| (v == Var::y(11)).then(|| RationalFunction::int(-1))).unwrap();
        assert_eq!(s.to_string(), "-y1*y2");
        let s = f("y1")
            .substitute(&|v| match v.vertex() {
                Some(1) => Some(f("1/y2")),
                Some(2) => Some(f("1/y1")),
                _ => None,
            })
            .unwrap();
        assert_eq!(s, f("1/y2"));
        let r = f("y1*y3/(1 + y1)").substitute(&|v| (v == Var::y(1)).then(|| f("y2"))).unwrap();
        assert_eq!(r.to_string(), "(y2*y3)/(1 + y2)");
        let z = f("1/(y1 - y2)").substitute(&|v| (v == Var::y(1)).then(|| f("y2")));
        assert_eq!(z.unwrap_err(), RatError::DivisionByZero);
    }

    #[test]
    fn limits() {
        assert_eq!(f("eps*y1 + y2").limit_zero(Var::EPS).unwrap(), f("y2"));
        assert_eq!(f("y1/eps").limit_zero(Var::EPS), Err(Divergent));
        assert_eq!(f("eps^2/(eps + y1)").limit_zero(Var::EPS).unwrap(), RationalFunction::zero());
        assert_eq!(f("(eps + eps^2*y1)/(eps*y2 + eps^3)").limit_zero(Var::EPS).unwrap(), f("1/y2"));
    }

    #[test]
    fn numeric_evaluation() {
        let p = |v: Var| Complex64::new(v.id() as f64 + 1.0, 0.0);
        assert_eq!(f("y1*y2").eval_numeric(&p, 1e-12).unwrap(), Complex64::new(6.0, 0.0));
        let one = |_: Var| Complex64::new(1.0, 0.0);
        assert_eq!(f("1/(1 - y1)").eval_numeric(&one, 1e-12).unwrap_err(), RatError::PoleAtPoint);
    }
}
