use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::{RationalFunction, Var};

/// `coeff · ∏ v^e` with integer (possibly negative) exponents; used for root
/// bookkeeping.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentMonomial {
    coeff: BigRational,
    exps: BTreeMap<Var, i64>,
}

impl LaurentMonomial {
    pub fn one() -> Self {
        Self { coeff: BigRational::one(), exps: BTreeMap::new() }
    }

    pub fn var(v: Var) -> Self {
        Self::from_exps([(v, 1)])
    }

    pub fn from_exps(exps: impl IntoIterator<Item = (Var, i64)>) -> Self {
        let mut m = Self::one();
        for (v, e) in exps {
            *m.exps.entry(v).or_insert(0) += e;
        }
        m.exps.retain(|_, e| *e != 0);
        m
    }

    /// Product of `y_k` over the given 1-based vertices.
    pub fn ys(vertices: &[usize]) -> Self {
        Self::from_exps(vertices.iter().map(|&k| (Var::y(k), 1)))
    }

    pub fn with_coeff(mut self, c: BigRational) -> Self {
        assert!(!c.is_zero(), "zero coefficient");
        self.coeff = c;
        self
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn exp(&self, v: Var) -> i64 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> impl Iterator<Item = (Var, i64)> + '_ {
        self.exps.iter().map(|(&v, &e)| (v, e))
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.exps.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = Self::from_exps(self.exps().chain(other.exps()));
        m.coeff = &self.coeff * &other.coeff;
        m
    }

    pub fn pow(&self, k: i64) -> Self {
        let mut m = Self::from_exps(self.exps().map(|(v, e)| (v, e * k)));
        let c = num::pow::pow(self.coeff.clone(), k.unsigned_abs() as usize);
        m.coeff = if k < 0 { c.recip() } else { c };
        m
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    /// Product of monomials raised to integer powers.
    pub fn product<'a>(factors: impl IntoIterator<Item = (&'a LaurentMonomial, i64)>) -> Self {
        factors.into_iter().fold(Self::one(), |acc, (m, k)| acc.mul(&m.pow(k)))
    }

    pub fn to_rational(&self) -> RationalFunction {
        RationalFunction::monomial(&self.coeff, self.exps())
    }

    /// Recognizes a monomial quotient; `None` if `f` is not of that shape.
    pub fn from_rational(f: &RationalFunction) -> Option<Self> {
        let r = f.clone().reduce();
        if !r.num().is_monomial() || !r.den().is_monomial() {
            return None;
        }
        let (nm, nc) = &r.num().terms()[0];
        let (dm, dc) = &r.den().terms()[0];
        let exps = nm.iter().map(|(v, e)| (v, e as i64)).chain(dm.iter().map(|(v, e)| (v, -(e as i64))));
        Some(Self::from_exps(exps).with_coeff(BigRational::new(nc.clone(), dc.clone())))
    }

    /// Substitutes Laurent monomials for variables (identity on `None`).
    pub fn substitute(&self, images: &impl Fn(Var) -> Option<LaurentMonomial>) -> Self {
        let mut out = Self::one().with_coeff(self.coeff.clone());
        for (v, e) in self.exps() {
            let img = images(v).unwrap_or_else(|| Self::var(v));
            out = out.mul(&img.pow(e));
        }
        out
    }
}

impl fmt::Display for LaurentMonomial {
    /// E.g. `y2^5*y4^4/(y3*y5^2)`; a non-unit coefficient is printed first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |sign: i64| -> String {
            self.exps()
                .filter(|&(_, e)| e.signum() == sign)
                .map(|(v, e)| if e.abs() == 1 { v.to_string() } else { format!("{v}^{}", e.abs()) })
                .collect::<Vec<_>>()
                .join("*")
        };
        let (up, down) = (part(1), part(-1));
        let c = &self.coeff;
        let mut head = String::new();
        if !c.is_one() {
            if c.is_negative() && (c.abs()).is_one() {
                head.push('-');
            } else {
                head = format!("{c}");
                if !up.is_empty() {
                    head.push('*');
                }
            }
        }
        let numer = match (head.as_str(), up.is_empty()) {
            (h, true) if h.is_empty() || h == "-" => format!("{h}1"),
            (h, _) => format!("{h}{up}"),
        };
        if down.is_empty() {
            write!(f, "{numer}")
        } else if down.contains('*') {
            write!(f, "{numer}/({down})")
        } else {
            write!(f, "{numer}/{down}")
        }
    }
}

impl fmt::Debug for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<BigInt> for LaurentMonomial {
    fn from(c: BigInt) -> Self {
        Self::one().with_coeff(BigRational::from_integer(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let g = LaurentMonomial::from_exps([
            (Var::y(2), 5),
            (Var::y(4), 4),
            (Var::y(6), 3),
            (Var::y(8), 2),
            (Var::y(10), 1),
            (Var::y(3), -1),
            (Var::y(5), -2),
            (Var::y(7), -3),
            (Var::y(9), -4),
            (Var::y(11), -5),
        ]);
        assert_eq!(g.to_string(), "y2^5*y4^4*y6^3*y8^2*y10/(y3*y5^2*y7^3*y9^4*y11^5)");
        assert!(g.mul(&g.inv()).is_one());
        let back = LaurentMonomial::from_rational(&g.to_rational()).unwrap();
        assert_eq!(back, g);
        let a = LaurentMonomial::ys(&[1, 2]);
        assert_eq!(a.pow(-2).to_string(), "1/(y1^2*y2^2)");
        assert!(LaurentMonomial::from_rational(&RationalFunction::parse("1 + y1").unwrap()).is_none());
    }
}
