//! Exchange matrices and their combinatorial operations.
//!
//! Vertices are 1-based throughout the public API. `λ(i, j)` counts arrows
//! `i → j` minus arrows `j → i`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("invalid vertex {0}")]
    InvalidVertex(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown quiver '{0}'")]
    UnknownName(String),
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("bad quiver json: {0}")]
    Json(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    b: Vec<i64>,
}

/// A permutation of `1..=n`, stored as images: `σ(k) = images[k-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexMap {
    images: Vec<usize>,
}

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, QuiverError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &k in &images {
            if k == 0 || k > n || seen[k - 1] {
                return Err(QuiverError::InvalidPermutation(format!("{images:?}")));
            }
            seen[k - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, QuiverError> {
        Self::cycle(n, &[i, j])
    }

    /// The cycle `a1 → a2 → … → am → a1`.
    pub fn cycle(n: usize, cyc: &[usize]) -> Result<Self, QuiverError> {
        let mut images: Vec<usize> = (1..=n).collect();
        for (k, &a) in cyc.iter().enumerate() {
            if a == 0 || a > n {
                return Err(QuiverError::InvalidVertex(a));
            }
            images[a - 1] = cyc[(k + 1) % cyc.len()];
        }
        Self::from_images(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (k, &s) in self.images.iter().enumerate() {
            inv[s - 1] = k + 1;
        }
        Self { images: inv }
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { images: other.images.iter().map(|&k| self.apply(k)).collect() }
    }
}

/// Renaming of the surviving vertices after a confluence `i → j`.
///
/// Surviving labels are `{1..=n} \ {i}`; the renames listed here are applied
/// and everything else keeps its label. The result must be `1..n-1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Relabel {
    renames: BTreeMap<usize, usize>,
}

impl Relabel {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn rename(pairs: &[(usize, usize)]) -> Self {
        Self { renames: pairs.iter().copied().collect() }
    }

    /// Moves the last label `n` into the hole left by `i` (identity if `i = n`).
    pub fn fill_hole(n: usize, i: usize) -> Self {
        if i == n {
            Self::identity()
        } else {
            Self::rename(&[(n, i)])
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.renames.iter().map(|(&a, &b)| (a, b))
    }

    /// New label of the surviving old label `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.renames.get(&k).copied().unwrap_or(k)
    }

    /// Old label for each new label `1..n-1`, validating bijectivity.
    pub fn table(&self, n: usize, removed: usize) -> Result<Vec<usize>, QuiverError> {
        let mut old_of = vec![0usize; n - 1];
        for k in (1..=n).filter(|&k| k != removed) {
            let new = self.apply(k);
            if new == 0 || new > n - 1 || old_of[new - 1] != 0 {
                return Err(QuiverError::InvalidPermutation(format!("relabel {:?} after removing {removed}", self.renames)));
            }
            old_of[new - 1] = k;
        }
        Ok(old_of)
    }
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    n: usize,
    arrows: Vec<[i64; 3]>,
}

impl Quiver {
    pub fn empty(n: usize) -> Self {
        Self { n, b: vec![0; n * n] }
    }

    /// Builds a quiver from `(src, dst, multiplicity)` triples.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, i64)]) -> Result<Self, QuiverError> {
        let mut q = Self::empty(n);
        for &(s, d, m) in arrows {
            q.check(s)?;
            q.check(d)?;
            if s == d {
                return Err(QuiverError::InvalidVertex(s));
            }
            q.b[(s - 1) * n + d - 1] += m;
            q.b[(d - 1) * n + s - 1] -= m;
        }
        Ok(q)
    }

    pub fn from_matrix(rows: &[Vec<i64>]) -> Result<Self, QuiverError> {
        let n = rows.len();
        let mut q = Self::empty(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(QuiverError::NotSkewSymmetric);
            }
            q.b[i * n..(i + 1) * n].copy_from_slice(row);
        }
        if !q.is_skew_symmetric() {
            return Err(QuiverError::NotSkewSymmetric);
        }
        Ok(q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, i: usize) -> Result<(), QuiverError> {
        if i == 0 || i > self.n {
            Err(QuiverError::InvalidVertex(i))
        } else {
            Ok(())
        }
    }

    pub fn lambda(&self, i: usize, j: usize) -> i64 {
        self.b[(i - 1) * self.n + j - 1]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.b[(i - 1) * self.n + j - 1] = v;
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.b.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (1..=self.n).all(|i| (1..=self.n).all(|j| self.lambda(i, j) == -self.lambda(j, i)))
    }

    /// Arrows `(src, dst, multiplicity)` with positive multiplicity, sorted.
    pub fn arrows(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                let l = self.lambda(i, j);
                if l > 0 {
                    out.push((i, j, l));
                }
            }
        }
        out
    }

    pub fn out_degree(&self, i: usize) -> i64 {
        (1..=self.n).map(|j| self.lambda(i, j).max(0)).sum()
    }

    pub fn in_degree(&self, i: usize) -> i64 {
        (1..=self.n).map(|j| self.lambda(j, i).max(0)).sum()
    }

    /// Matrix mutation at `i`.
    pub fn mutate(&self, i: usize) -> Result<Quiver, QuiverError> {
        self.check(i)?;
        let mut out = self.clone();
        for k in 1..=self.n {
            for l in 1..=self.n {
                let v = if k == i || l == i {
                    -self.lambda(k, l)
                } else {
                    let (a, b) = (self.lambda(k, i), self.lambda(i, l));
                    self.lambda(k, l) + (a.signum() + b.signum()) / 2 * a * b
                };
                out.set(k, l, v);
            }
        }
        Ok(out)
    }

    /// `λ̃(k, l) = λ(σ(k), σ(l))`.
    pub fn permute(&self, sigma: &VertexMap) -> Result<Quiver, QuiverError> {
        if sigma.n() != self.n {
            return Err(QuiverError::InvalidPermutation(format!("size {} on {} vertices", sigma.n(), self.n)));
        }
        let mut out = self.clone();
        for k in 1..=self.n {
            for l in 1..=self.n {
                out.set(k, l, self.lambda(sigma.apply(k), sigma.apply(l)));
            }
        }
        Ok(out)
    }

    pub fn reverse(&self) -> Quiver {
        Quiver { n: self.n, b: self.b.iter().map(|v| -v).collect() }
    }

    /// Confluence `i → j`: row and column `i` are added into `j`, vertex `i`
    /// is deleted, and the survivors are renamed by `relabel`.
    pub fn confluence(&self, i: usize, j: usize, relabel: &Relabel) -> Result<Quiver, QuiverError> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Err(QuiverError::InvalidVertex(i));
        }
        let mut m = self.clone();
        for k in 1..=self.n {
            m.set(j, k, m.lambda(j, k) + self.lambda(i, k));
        }
        let snapshot = m.clone();
        for k in 1..=self.n {
            m.set(k, j, snapshot.lambda(k, j) + snapshot.lambda(k, i));
        }
        let old_of = relabel.table(self.n, i)?;
        let mut out = Quiver::empty(self.n - 1);
        for (a, &oa) in old_of.iter().enumerate() {
            for (b, &ob) in old_of.iter().enumerate() {
                out.set(a + 1, b + 1, m.lambda(oa, ob));
            }
        }
        debug_assert!(out.is_skew_symmetric());
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let arrows = self.arrows().into_iter().map(|(s, d, m)| [s as i64, d as i64, m]).collect();
        serde_json::to_string(&QuiverJson { n: self.n, arrows }).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Quiver, QuiverError> {
        let j: QuiverJson = serde_json::from_str(s).map_err(|e| QuiverError::Json(e.to_string()))?;
        let arrows: Vec<(usize, usize, i64)> = j
            .arrows
            .iter()
            .map(|a| (a[0].max(0) as usize, a[1].max(0) as usize, a[2]))
            .collect();
        Quiver::from_arrows(j.n, &arrows)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph {name} {{\n");
        for k in 1..=self.n {
            s.push_str(&format!("  {k};\n"));
        }
        for (a, b, m) in self.arrows() {
            if m == 1 {
                s.push_str(&format!("  {a} -> {b};\n"));
            } else {
                s.push_str(&format!("  {a} -> {b} [label=\"{m}\"];\n"));
            }
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Quiver(n={})", self.n)?;
        for row in self.matrix() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Arrows of the twelve-vertex quiver.
pub const Q12_ARROWS: [(usize, usize); 24] = [
    (2, 11),
    (11, 1),
    (12, 2),
    (1, 12),
    (11, 10),
    (9, 11),
    (12, 9),
    (10, 12),
    (4, 1),
    (2, 4),
    (3, 2),
    (1, 3),
    (8, 10),
    (10, 7),
    (7, 9),
    (9, 8),
    (3, 5),
    (5, 4),
    (4, 6),
    (6, 3),
    (8, 5),
    (5, 7),
    (6, 8),
    (7, 6),
];

pub const CATALOG: [&str; 7] = ["Q12", "Q11", "Q101", "Q102", "Q103", "Q104", "Q105"];

/// How each ten-vertex quiver arises from `Q11`: confluence `i → j` followed
/// by moving label 11 into the hole.
pub fn degeneration_of(name: &str) -> Option<(usize, usize)> {
    match name {
        "Q101" => Some((4, 5)),
        "Q102" => Some((6, 4)),
        "Q103" => Some((5, 8)),
        "Q104" => Some((11, 2)),
        "Q105" => Some((1, 11)),
        _ => None,
    }
}

pub fn q12() -> Quiver {
    let arrows: Vec<_> = Q12_ARROWS.iter().map(|&(a, b)| (a, b, 1)).collect();
    Quiver::from_arrows(12, &arrows).expect("valid arrow list")
}

pub fn catalog(name: &str) -> Result<Quiver, QuiverError> {
    match name {
        "Q12" => Ok(q12()),
        "Q11" => q12().confluence(12, 1, &Relabel::identity()),
        _ => {
            let (i, j) = degeneration_of(name).ok_or_else(|| QuiverError::UnknownName(name.to_string()))?;
            catalog("Q11")?.confluence(i, j, &Relabel::fill_hole(11, i))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cycle_mutation() {
        let q = Quiver::from_arrows(3, &[(1, 2, 1), (2, 3, 1), (3, 1, 1)]).unwrap();
        let m = q.mutate(2).unwrap();
        assert_eq!(m.arrows(), vec![(2, 1, 1), (3, 2, 1)]);
        assert_eq!(m.mutate(2).unwrap(), q);
        assert_eq!(q.reverse().arrows(), vec![(1, 3, 1), (2, 1, 1), (3, 2, 1)]);
    }

    #[test]
    fn permutations() {
        let q = q12();
        let t = VertexMap::transposition(12, 1, 2).unwrap();
        assert_eq!(q.permute(&t).unwrap().permute(&t).unwrap(), q);
        assert_eq!(q.permute(&VertexMap::identity(12)).unwrap(), q);
        let c = VertexMap::cycle(4, &[1, 2, 3]).unwrap();
        assert_eq!(c.images(), &[2, 3, 1, 4]);
        assert_eq!(c.compose(&c.inverse()), VertexMap::identity(4));
    }

    #[test]
    fn figure_one_confluence() {
        let q = Quiver::from_matrix(&[
            vec![0, -1, -1, 1],
            vec![1, 0, -1, 1],
            vec![1, 1, 0, -1],
            vec![-1, -1, 1, 0],
        ])
        .unwrap();
        let c = q.confluence(4, 1, &Relabel::identity()).unwrap();
        assert_eq!(c.matrix(), vec![vec![0, -2, 0], vec![2, 0, -1], vec![0, 1, 0]]);
    }

    #[test]
    fn catalog_shapes() {
        let q = q12();
        for k in 1..=12 {
            assert_eq!((q.in_degree(k), q.out_degree(k)), (2, 2));
        }
        for w in [1, 3, 5, 7, 9, 11, 1].windows(2) {
            assert_eq!(q.lambda(w[0], w[1]), 1);
        }
        assert_eq!(catalog("Q11").unwrap().n(), 11);
        for name in ["Q101", "Q102", "Q103", "Q104", "Q105"] {
            let c = catalog(name).unwrap();
            assert_eq!(c.n(), 10);
            assert!(c.is_skew_symmetric());
        }
        assert!(catalog("Q7").is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = catalog("Q101").unwrap();
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
        assert!(q.to_dot("Q101").starts_with("digraph Q101 {"));
    }
}
