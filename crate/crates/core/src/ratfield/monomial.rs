use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::Var;

/// A monomial with nonnegative exponents, stored sparsely and sorted by
/// variable id. Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: SmallVec<[(Var, u32); 6]>,
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut m = Self::one();
        if e > 0 {
            m.exps.push((v, e));
            m.deg = e;
        }
        m
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut v: Vec<(Var, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|&(x, _)| x);
        let mut exps: SmallVec<[(Var, u32); 6]> = SmallVec::new();
        for (x, e) in v {
            match exps.last_mut() {
                Some((y, f)) if *y == x => *f += e,
                _ => exps.push((x, e)),
            }
        }
        let deg = exps.iter().map(|&(_, e)| e).sum();
        Self { exps, deg }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(x, _)| x)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps: SmallVec<[(Var, u32); 6]> = SmallVec::with_capacity(self.exps.len() + other.exps.len());
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    exps.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&a[i..]);
        exps.extend_from_slice(&b[j..]);
        Monomial { exps, deg: self.deg + other.deg }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.deg > self.deg {
            return None;
        }
        let mut exps: SmallVec<[(Var, u32); 6]> = SmallVec::new();
        let mut j = 0;
        for &(v, e) in &self.exps {
            if j < other.exps.len() && other.exps[j].0 < v {
                return None;
            }
            if j < other.exps.len() && other.exps[j].0 == v {
                let f = other.exps[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => exps.push((v, e - f)),
                }
            } else {
                exps.push((v, e));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        Some(Monomial { exps, deg: self.deg - other.deg })
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(self.iter().filter_map(|(v, e)| {
            let f = other.exp(v);
            (f > 0).then_some((v, e.min(f)))
        }))
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial::from_pairs(self.iter().map(|(v, e)| (v, e * k)))
    }

    /// Splits off the power of `v`: returns `(exp_v, rest)`.
    pub fn split(&self, v: Var) -> (u32, Monomial) {
        let e = self.exp(v);
        let rest = Monomial::from_pairs(self.iter().filter(|&(x, _)| x != v));
        (e, rest)
    }

    /// Keeps only the variables accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(Var) -> bool) -> Monomial {
        Monomial::from_pairs(self.iter().filter(|&(x, _)| keep(x)))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order: total degree first, then the exponent of
    /// the smallest variable id decides.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(usize, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|&(k, e)| (Var::y(k), e)))
    }

    #[test]
    fn graded_lex_order() {
        assert!(m(&[(1, 2)]) > m(&[(1, 1), (2, 1)]));
        assert!(m(&[(1, 1), (2, 1)]) > m(&[(2, 2)]));
        assert!(m(&[(2, 1)]) < m(&[(1, 1)]));
        assert!(m(&[(3, 3)]) > m(&[(1, 2)]));
        assert!(Monomial::one() < m(&[(5, 1)]));
    }

    #[test]
    fn mul_div_gcd() {
        let a = m(&[(1, 2), (3, 1)]);
        let b = m(&[(1, 1), (2, 4)]);
        let p = a.mul(&b);
        assert_eq!(p, m(&[(1, 3), (2, 4), (3, 1)]));
        assert_eq!(p.div(&b), Some(a.clone()));
        assert_eq!(a.div(&b), None);
        assert_eq!(a.gcd(&b), m(&[(1, 1)]));
        assert_eq!(p.degree(), 8);
    }
}
