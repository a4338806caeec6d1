//! Birational Weyl group representations on the catalog quivers.
//!
//! Each [`Representation`] stores its generators as step programs (applied
//! leftmost-first to seeds), its root monomials, the translation elements as
//! products of named generators, the Cartan data of each reflection family,
//! and the action tables transcribed for verification.

mod catalog;
mod reduction;
mod verify;

use std::fmt;

use num::BigRational;

pub use catalog::Convention;
pub use reduction::{
    all_reduction_claims, push_monomial, reduction_claims, verify_divergence, verify_reduction,
    verify_roots_fixed_coefficients_moved, ClaimKind, ClaimSide, ReductionClaim,
};
pub use verify::{
    eval_word, random_point, root_image, verify_action_table, verify_decomposition, verify_relations, Mode,
    VerifyOptions,
};

use crate::quiver::{Quiver, QuiverError};
use crate::ratfield::{LaurentMonomial, RatError};
use crate::seed::{SeedError, Word};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum WeylError {
    #[error("unknown representation '{0}'")]
    UnknownName(String),
    #[error("unknown element '{0}'")]
    UnknownElement(String),
    #[error("unknown root '{0}'")]
    UnknownRoot(String),
    #[error("image of {root} under {element} is not a monomial: {image}")]
    NonMonomialImage { element: String, root: String, image: String },
    #[error("{0} has no translation")]
    NoTranslation(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Rat(#[from] RatError),
}

/// A generalized Cartan matrix of type `A_N^{(1)}` or `A_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    /// Type `A_n^{(1)}`, indices `0..=n`.
    pub fn affine(n: usize) -> Self {
        assert!(n >= 1);
        if n == 1 {
            return Self { entries: vec![vec![2, -2], vec![-2, 2]] };
        }
        let size = n + 1;
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        if i == j {
                            2
                        } else if (i + 1) % size == j || (j + 1) % size == i {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        Self { entries }
    }

    /// Type `A_n`, indices `0..n`.
    pub fn finite(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 2 } else if i.abs_diff(j) == 1 { -1 } else { 0 }).collect())
            .collect();
        Self { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Order of `g_i g_j` for `i ≠ j`; `None` when infinite.
    pub fn braid_order(&self, i: usize, j: usize) -> Option<u32> {
        match self.entry(i, j) * self.entry(j, i) {
            0 => Some(2),
            1 => Some(3),
            2 => Some(4),
            3 => Some(6),
            _ => None,
        }
    }
}

/// A family of simple reflections `prefix{first..}` acting on the roots
/// `root_prefix{first..}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    pub prefix: String,
    pub first: usize,
    pub cartan: CartanMatrix,
    pub root_prefix: String,
}

impl Family {
    pub fn generator(&self, i: usize) -> String {
        format!("{}{}", self.prefix, i + self.first)
    }
}

/// One row of an action table: `element(root) = ∏ expected_r^e`.
#[derive(Clone, Debug, PartialEq)]
pub struct TableEntry {
    pub element: String,
    pub root: String,
    pub expected: Vec<(String, i64)>,
}

impl fmt::Display for TableEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rhs: Vec<String> =
            self.expected.iter().map(|(r, e)| if *e == 1 { r.clone() } else { format!("{r}^{e}") }).collect();
        write!(f, "{}({}) = {}", self.element, self.root, rhs.join(" "))
    }
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub name: String,
    pub quiver: Quiver,
    /// Generator programs, in the order the generators are introduced.
    pub generators: Vec<(String, Word)>,
    /// The generator words as written, e.g. `m1 (1,2) m1`.
    pub written: Vec<(String, String)>,
    pub roots: Vec<(String, LaurentMonomial)>,
    /// Translations as products of named elements.
    pub translations: Vec<(String, String)>,
    pub families: Vec<Family>,
    pub tables: Vec<TableEntry>,
    /// Pairs of expressions that name the same automorphism.
    pub decompositions: Vec<(String, String)>,
    pub convention: Convention,
}

impl Representation {
    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn generator(&self, name: &str) -> Option<&Word> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }

    pub fn root(&self, name: &str) -> Option<&LaurentMonomial> {
        self.roots.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn translation(&self, name: &str) -> Option<&str> {
        self.translations.iter().find(|(n, _)| n == name).map(|(_, e)| e.as_str())
    }

    pub fn has_tau_c(&self) -> bool {
        self.translation("tau_c").is_some()
    }

    /// The step program of a product of generators, translations and
    /// elementary steps, e.g. `pi1^5 s0` or `(pi3 pi2 pi1)^2`.
    pub fn word(&self, expr: &str) -> Result<Word, WeylError> {
        Ok(catalog::expand(self, expr, 0)?)
    }

    /// `∏ root^e` as a monomial in the coefficients.
    pub fn root_product(&self, factors: &[(String, i64)]) -> Result<LaurentMonomial, WeylError> {
        let mut out = LaurentMonomial::one();
        for (r, e) in factors {
            let m = self.root(r).ok_or_else(|| WeylError::UnknownRoot(r.clone()))?;
            out = out.mul(&m.pow(*e));
        }
        Ok(out)
    }

    /// Root monomial with rational exponents, raised to `power`; `None` if an
    /// exponent does not clear.
    pub fn root_power(&self, factors: &[(String, BigRational)], power: i64) -> Result<LaurentMonomial, WeylError> {
        let mut ints = Vec::with_capacity(factors.len());
        for (r, e) in factors {
            let scaled = e * BigRational::from_integer(power.into());
            assert!(scaled.is_integer(), "power {power} does not clear exponent {e}");
            let k: i64 = num::ToPrimitive::to_i64(&scaled.to_integer()).expect("small exponent");
            ints.push((r.clone(), k));
        }
        self.root_product(&ints)
    }
}

/// The representation `name` under the standard convention.
pub fn catalog(name: &str) -> Result<Representation, WeylError> {
    catalog::build(name, Convention::STANDARD)
}

/// The representation `name` with generator words read under `conv`.
pub fn catalog_with(name: &str, conv: Convention) -> Result<Representation, WeylError> {
    catalog::build(name, conv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_patterns() {
        let a5 = CartanMatrix::affine(5);
        assert_eq!(a5.entry(0, 5), -1);
        assert_eq!(a5.entry(0, 2), 0);
        assert_eq!(a5.braid_order(0, 1), Some(3));
        let a1 = CartanMatrix::affine(1);
        assert_eq!(a1.braid_order(0, 1), None);
        let f = CartanMatrix::finite(5);
        assert_eq!(f.entry(0, 4), 0);
    }

    #[test]
    fn root_data() {
        let q12 = catalog("Q12").unwrap();
        assert_eq!(q12.root("beta'0").unwrap().to_string(), "y1*y3*y5*y7*y9*y11");
        let q11 = catalog("Q11").unwrap();
        assert_eq!(q11.root("gamma").unwrap().to_string(), "y2^5*y4^4*y6^3*y8^2*y10/(y3*y5^2*y7^3*y9^4*y11^5)");
        assert!(catalog("Q105").unwrap().translations.is_empty());
        assert!(matches!(catalog("Q7"), Err(WeylError::UnknownName(_))));
    }

    #[test]
    fn null_root_identities() {
        for name in crate::quiver::CATALOG {
            let rep = catalog(name).unwrap();
            let q = rep.root("q").unwrap();
            let alphas: Vec<(String, i64)> =
                rep.roots.iter().filter(|(n, _)| n.starts_with("alpha")).map(|(n, _)| (n.clone(), 1)).collect();
            if name != "Q105" {
                assert_eq!(&rep.root_product(&alphas).unwrap(), q, "{name}");
            }
            for pair in [["beta0", "beta1"], ["beta'0", "beta'1"]] {
                if rep.root(pair[0]).is_some() {
                    let prod = rep.root_product(&[(pair[0].into(), 1), (pair[1].into(), 1)]).unwrap();
                    assert_eq!(&prod, q, "{name}");
                }
            }
        }
    }

    #[test]
    fn generators_preserve_quivers() {
        for name in crate::quiver::CATALOG {
            let rep = catalog(name).unwrap();
            for (g, w) in &rep.generators {
                assert!(crate::seed::preserves(&rep.quiver, w).unwrap(), "{name} {g}");
            }
        }
    }
}
