//! Scalar traits shared by the symbolic and numeric layers.
//!
//! Mutations, permutations and reversals only ever add, multiply and invert
//! coefficients, so the seed engine is written against [`Semifield`]. Every
//! concrete coefficient type in the crate implements it: exact rational
//! functions, exact rationals, `f64`, complex doubles, the high-precision
//! [`BigFloat`](crate::bigfloat::BigFloat) and the ε-leading-term type used for
//! confluence limits.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// A commutative semifield: addition, multiplication and (partial) inversion,
/// no subtraction.
pub trait Semifield: Clone + PartialEq + Debug + One + Add<Output = Self> + Mul<Output = Self> {
    /// Multiplicative inverse, `None` for the zero element.
    fn try_recip(&self) -> Option<Self>;

    /// Hook called by the seed engine after each elementary step.
    fn normalize(self) -> Self {
        self
    }
}

/// A field with a canonical embedding of the rationals.
pub trait Field:
    Semifield + Zero + Sub<Output = Self> + Neg<Output = Self> + Div<Output = Self>
{
    fn from_rational(r: &BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }
}

/// Scalars with a magnitude, used by tolerance checks in the numeric layer.
pub trait Magnitude {
    fn magnitude(&self) -> f64;
}

/// `x^k` for any integer `k`; `None` when `k < 0` and `x` has no inverse.
pub fn powi<S: Semifield>(x: &S, k: i64) -> Option<S> {
    let base = if k < 0 { x.try_recip()? } else { x.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = S::one();
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * sq.clone();
        }
        e >>= 1;
        if e > 0 {
            sq = sq.clone() * sq;
        }
    }
    Some(acc)
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Semifield for $t {
            fn try_recip(&self) -> Option<Self> {
                if *self == 0.0 {
                    None
                } else {
                    Some(1.0 / *self)
                }
            }
        }

        impl Field for $t {
            fn from_rational(r: &BigRational) -> Self {
                r.to_f64().unwrap_or(f64::NAN) as $t
            }
        }

        impl Magnitude for $t {
            fn magnitude(&self) -> f64 {
                self.abs() as f64
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

impl Semifield for Complex64 {
    fn try_recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }
}

impl Field for Complex64 {
    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl Magnitude for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Semifield for BigRational {
    fn try_recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Field for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

impl Magnitude for BigRational {
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powi_handles_signs() {
        assert_eq!(powi(&2.0f64, 10), Some(1024.0));
        assert_eq!(powi(&2.0f64, -2), Some(0.25));
        assert_eq!(powi(&0.0f64, -1), None);
        assert_eq!(powi(&0.0f64, 0), Some(1.0));
        let r = BigRational::new(3.into(), 2.into());
        assert_eq!(powi(&r, -3), Some(BigRational::new(8.into(), 27.into())));
    }
}
