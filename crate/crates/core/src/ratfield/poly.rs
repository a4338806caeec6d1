use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use super::modp;
use super::{Monomial, Var};
use crate::scalar::Field;

/// A multivariate polynomial with integer coefficients.
///
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, BigInt)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from unsorted terms, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut map: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            *map.entry(m).or_default() += c;
        }
        Self::from_map(map)
    }

    fn from_map(map: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Self { terms }
    }

    /// Wraps terms that are already sorted descending and nonzero.
    fn from_sorted(terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms.first().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.iter().flat_map(|(m, _)| m.vars()).collect()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).min().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::from_sorted(self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect())
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::from_sorted(self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect())
    }

    /// Exact division by an integer; panics if some coefficient is not divisible.
    pub fn div_int(&self, c: &BigInt) -> Polynomial {
        Polynomial::from_sorted(
            self.terms
                .iter()
                .map(|(m, d)| {
                    let (q, r) = d.div_rem(c);
                    assert!(r.is_zero(), "inexact integer division");
                    (m.clone(), q)
                })
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// gcd of the integer coefficients, signed like the leading coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.leading_coeff().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Divides out the integer content, leaving a positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        if c.is_one() {
            self.clone()
        } else {
            self.div_int(&c)
        }
    }

    /// The largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (n, c) in &self.terms {
            terms.push((n.div(m)?, c.clone()));
        }
        Some(Polynomial::from_sorted(terms))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if d.is_monomial() {
            let (m, c) = &d.terms[0];
            let q = self.div_monomial(m)?;
            let mut terms = Vec::with_capacity(q.terms.len());
            for (n, e) in q.terms {
                let (qq, r) = e.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                terms.push((n, qq));
            }
            return Some(Polynomial::from_sorted(terms));
        }
        // quick degree rejections
        if d.total_degree() > self.total_degree() {
            return None;
        }
        for v in d.vars() {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let (dm, dc) = &d.terms[0];
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(dm)?;
            let (qc, r) = c.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            for (n, e) in &d.terms[1..] {
                let key = n.mul(&qm);
                let val = e * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= val;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-val);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Polynomial::from_sorted(quot))
    }

    /// Groups terms by the power of `v`: `self = Σ coeff_k · v^k`, returned in
    /// decreasing `k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<(u32, Polynomial)> {
        let mut groups: BTreeMap<u32, Vec<(Monomial, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            groups.entry(e).or_default().push((rest, c.clone()));
        }
        // within a group the order of `rest` follows the order of `m` only up to
        // degree shifts, so re-sort
        groups
            .into_iter()
            .rev()
            .map(|(e, ts)| (e, Polynomial::from_terms(ts)))
            .collect()
    }

    /// Groups terms by their monomial in the variables rejected by `keep`,
    /// returning the coefficient polynomials in the kept variables.
    pub fn coeffs_outside(&self, keep: impl Fn(Var) -> bool) -> Vec<Polynomial> {
        let mut groups: HashMap<Monomial, Vec<(Monomial, BigInt)>> = HashMap::new();
        for (m, c) in &self.terms {
            let outer = m.restrict(|x| !keep(x));
            let inner = m.restrict(&keep);
            groups.entry(outer).or_default().push((inner, c.clone()));
        }
        let mut out: Vec<Polynomial> = groups.into_values().map(Polynomial::from_terms).collect();
        out.sort_by_key(|p| p.len());
        out
    }

    /// Evaluates at a point given by `value`, accumulating term by term.
    pub fn eval<F: Field>(&self, value: &impl Fn(Var) -> F) -> F {
        let mut cache: HashMap<(Var, u32), F> = HashMap::new();
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from_rational(&num::BigRational::from_integer(c.clone()));
            for (v, e) in m.iter() {
                let p = cache
                    .entry((v, e))
                    .or_insert_with(|| crate::scalar::powi(&value(v), e as i64).expect("nonnegative power"))
                    .clone();
                t = t * p;
            }
            acc = acc + t;
        }
        acc
    }

    /// Evaluates modulo the fixed prime of [`modp`].
    pub fn eval_mod(&self, value: &impl Fn(Var) -> u64) -> u64 {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = modp::from_bigint(c);
            for (v, e) in m.iter() {
                t = modp::mul(t, modp::pow(value(v), e as u64));
            }
            acc = modp::add(acc, t);
        }
        acc
    }

    /// Univariate image in `x` modulo p, other variables evaluated by `value`.
    /// Coefficients indexed by degree.
    pub fn univariate_mod(&self, x: Var, value: &impl Fn(Var) -> u64) -> Vec<u64> {
        let mut out = vec![0u64; self.degree_in(x) as usize + 1];
        for (m, c) in &self.terms {
            let mut t = modp::from_bigint(c);
            let mut ex = 0;
            for (v, e) in m.iter() {
                if v == x {
                    ex = e;
                } else {
                    t = modp::mul(t, modp::pow(value(v), e as u64));
                }
            }
            out[ex as usize] = modp::add(out[ex as usize], t);
        }
        out
    }

    /// Substitutes polynomials for variables (all substitutions simultaneous).
    pub fn compose(&self, images: &impl Fn(Var) -> Option<Polynomial>) -> Polynomial {
        let mut cache: HashMap<(Var, u32), Polynomial> = HashMap::new();
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut t = Polynomial::constant(c.clone());
            for (v, e) in m.iter() {
                match images(v) {
                    None => kept = kept.mul(&Monomial::var_pow(v, e)),
                    Some(img) => {
                        let p = cache.entry((v, e)).or_insert_with(|| img.pow(e)).clone();
                        t = &t * &p;
                    }
                }
            }
            for (n, d) in t.terms {
                *acc.entry(n.mul(&kept)).or_default() += d;
            }
        }
        Polynomial::from_map(acc)
    }

    pub fn to_f64_coeffs(&self) -> Vec<(Monomial, f64)> {
        self.terms.iter().map(|(m, c)| (m.clone(), c.to_f64().unwrap_or(f64::NAN))).collect()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial::from_sorted(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_sorted(self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_monomial(m, c);
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(small.len() * big.len());
        for (m, c) in &small.terms {
            for (n, d) in &big.terms {
                *acc.entry(m.mul(n)).or_default() += c * d;
            }
        }
        Polynomial::from_map(acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    /// Integer coefficients in ascending graded-lex order, e.g. `1 + y1 + y1*y2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(k: usize) -> Polynomial {
        Polynomial::var(Var::y(k))
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::constant(n.into())
    }

    #[test]
    fn ring_basics() {
        let p = &(&y(1) + &c(1)) * &(&y(1) + &c(1));
        assert_eq!(p.to_string(), "1 + 2*y1 + y1^2");
        assert!((&p - &p).is_zero());
        assert_eq!((&y(1) + &c(1)).pow(2), p);
    }

    #[test]
    fn exact_division() {
        let a = &y(1) + &y(2);
        let b = &(&y(1) * &y(3)) - &c(2);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(p.div_exact(&(&y(1) + &c(1))), None);
        assert_eq!(p.scale(&3.into()).div_exact(&a.scale(&2.into())), None);
    }

    #[test]
    fn coefficient_grouping() {
        let p = &(&y(1) * &y(2)) + &(&y(2) + &c(3));
        let g = p.coeffs_in(Var::y(2));
        assert_eq!(g.len(), 2);
        assert_eq!(g[0], (1, &y(1) + &c(1)));
        assert_eq!(g[1], (0, c(3)));
    }

    #[test]
    fn composition() {
        let p = &(&y(1) * &y(1)) + &y(2);
        let q = p.compose(&|v| (v == Var::y(1)).then(|| &y(3) + &c(1)));
        assert_eq!(q.to_string(), "1 + 2*y3 + y2 + y3^2");
    }
}
