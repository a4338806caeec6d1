//! Randomized identity testing at integer points.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{RatError, RationalFunction, Var};

pub const DEFAULT_TRIALS: usize = 20;

/// Range of the sampled coordinates.
pub const SAMPLE_RANGE: std::ops::RangeInclusive<i64> = 2..=1_000_000;

/// A reproducible random point assigning an integer from [`SAMPLE_RANGE`] to
/// each requested variable.
pub fn random_point(vars: impl IntoIterator<Item = Var>, rng: &mut impl Rng) -> BTreeMap<Var, BigRational> {
    vars.into_iter()
        .map(|v| (v, BigRational::from_integer(BigInt::from(rng.gen_range(SAMPLE_RANGE)))))
        .collect()
}

/// Compares `f` and `g` exactly at `trials` random points.
///
/// Points where either side has a pole are resampled (up to `trials` extra
/// draws in total); if no point was usable the test is inconclusive.
pub fn random_identity_test(
    f: &RationalFunction,
    g: &RationalFunction,
    trials: usize,
    seed: u64,
) -> Result<bool, RatError> {
    assert!(trials >= 1, "at least one trial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vars = f.vars();
    vars.extend(g.vars());
    let mut used = 0;
    let mut draws = 0;
    while used < trials && draws < 2 * trials {
        draws += 1;
        let pt = random_point(vars.iter().copied(), &mut rng);
        let value = |v: Var| pt.get(&v).cloned().unwrap_or_else(BigRational::zero);
        let (Some(a), Some(b)) = (f.eval(&value), g.eval(&value)) else {
            continue;
        };
        if a != b {
            return Ok(false);
        }
        used += 1;
    }
    if used == 0 {
        return Err(RatError::InconclusiveAllPoles);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn detects_identities_and_differences() {
        assert!(random_identity_test(&f("y1"), &f("y1"), 20, 1).unwrap());
        assert!(random_identity_test(&f("y1"), &f("y1 + (y2 - y2)"), 20, 1).unwrap());
        assert!(random_identity_test(&f("(y1^2 - y2^2)/(y1 - y2)"), &f("y1 + y2"), 20, 7).unwrap());
        assert!(!random_identity_test(&f("y1*y2"), &f("y1 + y2"), 20, 3).unwrap());
    }
}
