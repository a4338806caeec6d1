//! Arithmetic modulo the Mersenne prime 2^61 - 1, used for gcd degree bounds.

use num::{BigInt, Integer, ToPrimitive};

pub const P: u64 = (1u64 << 61) - 1;

pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn mul(a: u64, b: u64) -> u64 {
    let w = (a as u128) * (b as u128);
    let lo = (w as u64) & P;
    let hi = (w >> 61) as u64;
    add(lo, hi)
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64) -> u64 {
    assert!(a != 0, "inverse of zero mod p");
    pow(a, P - 2)
}

pub fn from_bigint(c: &BigInt) -> u64 {
    c.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits in u64")
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of the monic gcd of two univariate polynomials (coefficients by
/// degree). Returns `None` if both are zero.
pub fn univariate_gcd_degree(a: &[u64], b: &[u64]) -> Option<usize> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() && b.is_empty() {
        return None;
    }
    while !b.is_empty() {
        // a <- a mod b
        let lb = inv(*b.last().unwrap());
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = mul(*a.last().unwrap(), lb);
            for (i, &bc) in b.iter().enumerate() {
                a[shift + i] = sub(a[shift + i], mul(f, bc));
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    Some(a.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = 123456789012345u64;
        assert_eq!(mul(a, inv(a)), 1);
        assert_eq!(sub(3, 5), P - 2);
        assert_eq!(from_bigint(&BigInt::from(-1)), P - 1);
    }

    #[test]
    fn gcd_degree() {
        // (x+1)(x+2) and (x+1)(x+3)
        let a = [2, 3, 1];
        let b = [3, 4, 1];
        assert_eq!(univariate_gcd_degree(&a, &b), Some(1));
        assert_eq!(univariate_gcd_degree(&[1, 1], &[2, 1]), Some(0));
    }
}
