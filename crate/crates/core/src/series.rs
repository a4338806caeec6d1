//! Leading terms `c·ε^v` of positive Laurent series in ε.
//!
//! For subtraction-free expressions with positive coefficients the lowest
//! order terms never cancel, so this semifield computes the exact leading term
//! of anything built by mutations, permutations and reversals.

use std::ops::{Add, Mul};

use num::{BigRational, One, Signed, Zero};

use crate::scalar::Semifield;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leading {
    val: i64,
    coeff: BigRational,
}

impl Leading {
    pub fn new(val: i64, coeff: BigRational) -> Self {
        assert!(coeff.is_positive(), "leading coefficient must be positive");
        Self { val, coeff }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(0, c)
    }

    pub fn eps() -> Self {
        Self::new(1, BigRational::one())
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    /// Value at ε = 0: `Some(0)` for positive valuation, `None` if divergent.
    pub fn limit(&self) -> Option<BigRational> {
        match self.val {
            v if v > 0 => Some(BigRational::zero()),
            0 => Some(self.coeff.clone()),
            _ => None,
        }
    }
}

impl Add for Leading {
    type Output = Leading;
    fn add(self, rhs: Leading) -> Leading {
        match self.val.cmp(&rhs.val) {
            std::cmp::Ordering::Less => self,
            std::cmp::Ordering::Greater => rhs,
            std::cmp::Ordering::Equal => Leading { val: self.val, coeff: self.coeff + rhs.coeff },
        }
    }
}

impl Mul for Leading {
    type Output = Leading;
    fn mul(self, rhs: Leading) -> Leading {
        Leading { val: self.val + rhs.val, coeff: self.coeff * rhs.coeff }
    }
}

impl One for Leading {
    fn one() -> Self {
        Self::constant(BigRational::one())
    }
}

impl Semifield for Leading {
    fn try_recip(&self) -> Option<Self> {
        Some(Leading { val: -self.val, coeff: self.coeff.recip() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn leading_terms() {
        let e = Leading::eps();
        let two = Leading::constant(r(2));
        // (2 + ε) / ε → valuation -1, coefficient 2
        let x = (two.clone() + e.clone()) * e.try_recip().unwrap();
        assert_eq!((x.valuation(), x.coeff().clone()), (-1, r(2)));
        assert_eq!(x.limit(), None);
        let y = e.clone() * two.clone() + two.clone();
        assert_eq!(y.limit(), Some(r(2)));
        assert_eq!((e.clone() * e).limit(), Some(r(0)));
    }
}
