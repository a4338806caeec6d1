//! Binary floating point with a configurable mantissa, for the limits whose
//! rescaled components cancel below double precision.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num::{BigInt, BigRational, One, Zero};

use crate::scalar::{Field, Magnitude, Semifield};

type Inner = FBig<HalfEven, 2>;

static PRECISION: AtomicUsize = AtomicUsize::new(256);

/// Mantissa bits used by constants and conversions.
pub fn precision() -> usize {
    PRECISION.load(Ordering::Relaxed)
}

pub fn set_precision(bits: usize) {
    PRECISION.store(bits.max(24), Ordering::Relaxed);
}

#[derive(Clone, PartialEq)]
pub struct BigFloat(Inner);

fn ibig(n: &BigInt) -> IBig {
    IBig::from_str(&n.to_string()).expect("decimal integer")
}

impl BigFloat {
    fn wrap(x: Inner) -> Self {
        Self(x.with_precision(precision()).value())
    }

    pub fn from_f64(x: f64) -> Self {
        Self::from_rational(&BigRational::from_float(x).expect("finite"))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    pub fn abs(&self) -> Self {
        if self.0 < Inner::ZERO {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $f(self, rhs: BigFloat) -> BigFloat {
                BigFloat::wrap(self.0 $op rhs.0)
            }
        }
    };
}
binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        Self::wrap(Inner::ZERO)
    }
    fn is_zero(&self) -> bool {
        self.0 == Inner::ZERO
    }
}

impl One for BigFloat {
    fn one() -> Self {
        Self::wrap(Inner::ONE)
    }
}

impl Semifield for BigFloat {
    fn try_recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::one() / self.clone())
    }
}

impl Field for BigFloat {
    fn from_rational(r: &BigRational) -> Self {
        let p = precision();
        let n = Inner::from(ibig(r.numer())).with_precision(p).value();
        let d = Inner::from(ibig(r.denom())).with_precision(p).value();
        Self::wrap(n / d)
    }
}

impl Magnitude for BigFloat {
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carries_more_than_double_precision() {
        let eps = BigFloat::from_rational(&BigRational::new(1.into(), BigInt::from(10).pow(30)));
        let x = (BigFloat::one() + eps.clone()) - BigFloat::one();
        assert!((x / eps - BigFloat::one()).magnitude() < 1e-40);
    }

    #[test]
    fn rationals_round_trip_through_f64() {
        let x = BigFloat::from_rational(&BigRational::new(3.into(), 10.into()));
        assert_eq!(x.to_f64(), 0.3);
        assert_eq!(BigFloat::from_f64(0.3).to_f64(), 0.3);
    }
}
