//! Multivariate gcd over the integers.
//!
//! Degree bounds come from univariate images modulo a large prime; variables
//! whose bound is zero are eliminated by taking gcds of coefficient lists, and
//! the remaining core is handled by a primitive pseudo-remainder sequence in
//! the variable of least degree, with recursive content computation.

use std::collections::BTreeSet;

use num::{BigInt, Integer, One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{modp, Monomial, Polynomial, Var};

/// Normalized gcd: primitive over the integer-content gcd, positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return normalize(b.clone());
    }
    if b.is_zero() {
        return normalize(a.clone());
    }
    let ca = a.content().abs();
    let cb = b.content().abs();
    let c = ca.gcd(&cb);
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = ma.gcd(&mb);
    let pa = strip(a, &ca, &ma);
    let pb = strip(b, &cb, &mb);
    let core = if pa.is_constant() || pb.is_constant() {
        Polynomial::one()
    } else {
        gcd_primitive(&pa, &pb)
    };
    normalize(core.mul_monomial(&m, &c))
}

/// gcd of a list, stopping early once it becomes constant.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a Polynomial>>(polys: I) -> Polynomial {
    let mut g = Polynomial::zero();
    for p in polys {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn strip(p: &Polynomial, c: &BigInt, m: &Monomial) -> Polynomial {
    let q = p.div_monomial(m).expect("monomial content divides");
    let q = if c.is_one() { q } else { q.div_int(c) };
    if q.leading_coeff().is_negative() {
        -&q
    } else {
        q
    }
}

fn normalize(p: Polynomial) -> Polynomial {
    if p.leading_coeff().is_negative() {
        -&p
    } else {
        p
    }
}

/// Upper bound on the degree in `x` of gcd(a, b), from univariate images mod p.
fn degree_bound(a: &Polynomial, b: &Polynomial, x: Var, rng: &mut ChaCha8Rng) -> u32 {
    let (da, db) = (a.degree_in(x), b.degree_in(x));
    if da == 0 || db == 0 {
        return 0;
    }
    for _ in 0..4 {
        let vals: Vec<(Var, u64)> = a
            .vars()
            .union(&b.vars())
            .map(|&v| (v, rng.gen_range(2..modp::P)))
            .collect();
        let value = |v: Var| vals.iter().find(|(w, _)| *w == v).map(|&(_, x)| x).unwrap_or(0);
        let ua = a.univariate_mod(x, &value);
        let ub = b.univariate_mod(x, &value);
        if ua[da as usize] != 0 && ub[db as usize] != 0 {
            return modp::univariate_gcd_degree(&ua, &ub).unwrap_or(0) as u32;
        }
    }
    da.min(db)
}

/// gcd of primitive, nonconstant polynomials without monomial content.
fn gcd_primitive(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a == b {
        return a.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9 ^ (a.len() as u64) << 20 ^ b.len() as u64);
    let vars: BTreeSet<Var> = a.vars().union(&b.vars()).copied().collect();
    let bounds: Vec<(Var, u32)> = vars.iter().map(|&x| (x, degree_bound(a, b, x, &mut rng))).collect();
    let live: BTreeSet<Var> = bounds.iter().filter(|(_, d)| *d > 0).map(|&(x, _)| x).collect();
    if live.is_empty() {
        return Polynomial::one();
    }
    if live.len() < vars.len() {
        // the gcd only involves `live` variables: it is the gcd of all
        // coefficients with respect to the others
        let mut coeffs = a.coeffs_outside(|v| live.contains(&v));
        coeffs.extend(b.coeffs_outside(|v| live.contains(&v)));
        coeffs.sort_by_key(|p| p.len());
        return gcd_all(coeffs.iter());
    }
    let bound_of = |x: Var| bounds.iter().find(|(y, _)| *y == x).map(|&(_, d)| d).unwrap_or(0);
    for (p, q) in [(b, a), (a, b)] {
        if live.iter().all(|&x| bound_of(x) == p.degree_in(x)) {
            if q.div_exact(p).is_some() {
                return p.clone();
            }
        }
    }
    let bound_of = |x: Var| bounds.iter().find(|(y, _)| *y == x).map(|&(_, d)| d).unwrap_or(0);
    let x = *live
        .iter()
        .min_by_key(|&&x| (a.degree_in(x).max(b.degree_in(x)), x))
        .expect("nonempty");
    let (ca, pa) = split_content(a, x);
    let (cb, pb) = split_content(b, x);
    let gc = gcd(&ca, &cb);
    let gp = prs_gcd(&pa, &pb, x, bound_of(x));
    normalize(&gc * &gp)
}

/// Content with respect to `x` and the primitive part.
fn split_content(p: &Polynomial, x: Var) -> (Polynomial, Polynomial) {
    let coeffs = p.coeffs_in(x);
    let mut cs: Vec<&Polynomial> = coeffs.iter().map(|(_, c)| c).collect();
    cs.sort_by_key(|c| c.len());
    let c = gcd_all(cs);
    if c.is_one() {
        return (c, p.clone());
    }
    let pp = p.div_exact(&c).expect("content divides");
    (c, normalize(pp))
}

fn to_dense(p: &Polynomial, x: Var) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(); p.degree_in(x) as usize + 1];
    for (k, c) in p.coeffs_in(x) {
        out[k as usize] = c;
    }
    out
}

fn from_dense(coeffs: &[Polynomial], x: Var) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &c.mul_monomial(&Monomial::var_pow(x, k as u32), &BigInt::one());
        }
    }
    acc
}

fn trim(v: &mut Vec<Polynomial>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder of `a` by `b` as dense polynomials in the main variable.
fn prem(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut e = (a.len() as i64) - (b.len() as i64) + 1;
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&lr * bc);
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        trim(&mut r);
        e -= 1;
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn prs_gcd(a: &Polynomial, b: &Polynomial, x: Var, bound: u32) -> Polynomial {
    let (mut r0, mut r1) = if a.degree_in(x) >= b.degree_in(x) { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    loop {
        if r1.degree_in(x) == 0 {
            return Polynomial::one();
        }
        if r1.degree_in(x) == bound && a.div_exact(&r1).is_some() && b.div_exact(&r1).is_some() {
            return r1;
        }
        let mut r = prem(&to_dense(&r0, x), &to_dense(&r1, x));
        trim(&mut r);
        if r.len() == 1 && r[0].is_zero() {
            return r1;
        }
        let rp = from_dense(&r, x);
        let (_, pp) = split_content(&rp, x);
        let pp = pp.primitive();
        r0 = r1;
        r1 = pp;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::RationalFunction;

    fn p(s: &str) -> Polynomial {
        let f = RationalFunction::parse(s).unwrap();
        assert!(f.den().is_one());
        f.num().clone()
    }

    #[test]
    fn coprime_pairs() {
        assert!(gcd(&p("1 + y1^2"), &p("1 + y1")).is_one());
        assert!(gcd(&p("y1 + y2"), &p("y1 - y2")).is_one());
    }

    #[test]
    fn common_factors() {
        let f = p("1 + y1 + y1*y2");
        let g = p("1 + y3 + y2*y3");
        let h = p("y1 + y3^2");
        assert_eq!(gcd(&(&f * &h), &(&g * &h)), h);
        assert_eq!(gcd(&(&f * &g), &(&f * &h)), f);
        let six = Polynomial::constant(6.into());
        assert_eq!(gcd(&f.scale(&4.into()), &(&f * &six)), f.scale(&2.into()));
    }

    #[test]
    fn monomial_and_content() {
        assert_eq!(gcd(&p("y1^2*y2 + y1^3"), &p("y1*y3")), p("y1"));
        assert_eq!(gcd(&p("2*y1 + 4"), &p("6*y1 + 12")), p("2*y1 + 4"));
        assert_eq!(gcd(&p("-y1 - 1"), &Polynomial::zero()), p("y1 + 1"));
    }

    #[test]
    fn repeated_and_multivariate_factors() {
        let f = p("1 + y1 + y1*y2 + y1*y2*y3");
        let g = p("1 + y2 + y2*y3 + y2*y3*y4");
        let a = &(&f * &f) * &g;
        let b = &(&f * &g) * &g;
        assert_eq!(gcd(&a, &b), &f * &g);
    }
}
