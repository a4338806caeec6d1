//! Transcribed data of the seven representations.

use crate::quiver;
use crate::ratfield::LaurentMonomial;
use crate::ratfield::Var;
use crate::seed::{SeedError, Step, Word};

use super::{CartanMatrix, Family, Representation, TableEntry, WeylError};

/// How the written words are turned into step programs (see
/// [`Representation::program_of`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Convention {
    /// Apply the elementary steps of a written generator word right to left.
    pub reverse_words: bool,
    /// Read a written cycle `(a1,…,am)` as `a_k ↦ a_{k-1}` instead of `a_{k+1}`.
    pub reverse_cycles: bool,
    /// Expand a product of named elements `gh` as `h` then `g`.
    pub reverse_products: bool,
}

impl Convention {
    /// The convention under which all transcribed tables hold.
    pub const STANDARD: Convention = Convention { reverse_words: true, reverse_cycles: false, reverse_products: false };

    pub fn all() -> impl Iterator<Item = Convention> {
        (0..8).map(|b| Convention { reverse_words: b & 1 != 0, reverse_cycles: b & 2 != 0, reverse_products: b & 4 != 0 })
    }
}

fn mono(exps: &[(usize, i64)]) -> LaurentMonomial {
    LaurentMonomial::from_exps(exps.iter().map(|&(k, e)| (Var::y(k), e)))
}

/// Builder state shared by the per-quiver transcriptions.
struct Builder {
    rep: Representation,
    conv: Convention,
}

impl Builder {
    fn new(name: &str, conv: Convention) -> Result<Self, WeylError> {
        let quiver = quiver::catalog(name)?;
        let rep = Representation {
            name: name.to_string(),
            quiver,
            generators: Vec::new(),
            written: Vec::new(),
            roots: Vec::new(),
            translations: Vec::new(),
            families: Vec::new(),
            tables: Vec::new(),
            decompositions: Vec::new(),
            convention: conv,
        };
        Ok(Self { rep, conv })
    }

    fn gen(&mut self, name: &str, written: &str) {
        let w = Word::parse_steps(written).expect("catalog words parse");
        let mut steps: Vec<Step> = w.steps;
        if self.conv.reverse_cycles {
            steps = steps
                .into_iter()
                .map(|s| match s {
                    Step::Permute(c) if c.len() > 2 => Step::Permute(c.into_iter().rev().collect()),
                    s => s,
                })
                .collect();
        }
        if self.conv.reverse_words {
            steps.reverse();
        }
        self.rep.generators.push((name.to_string(), Word::new(steps)));
        self.rep.written.push((name.to_string(), written.to_string()));
    }

    fn root(&mut self, name: &str, m: LaurentMonomial) {
        self.rep.roots.push((name.to_string(), m));
    }

    fn q_root(&mut self) {
        let n = self.rep.quiver.n();
        self.root("q", LaurentMonomial::ys(&(1..=n).collect::<Vec<_>>()));
    }

    fn translation(&mut self, name: &str, expr: &str) {
        self.rep.translations.push((name.to_string(), expr.to_string()));
    }

    fn family(&mut self, prefix: &str, first: usize, cartan: CartanMatrix, root_prefix: &str) {
        self.rep.families.push(Family {
            prefix: prefix.to_string(),
            first,
            cartan,
            root_prefix: root_prefix.to_string(),
        });
    }

    fn entry(&mut self, element: &str, root: &str, expected: &[(&str, i64)]) {
        self.rep.tables.push(TableEntry {
            element: element.to_string(),
            root: root.to_string(),
            expected: expected.iter().map(|&(r, e)| (r.to_string(), e)).collect(),
        });
    }

    fn fixes(&mut self, element: &str, roots: &[String]) {
        for r in roots {
            self.entry(element, r, &[(r, 1)]);
        }
    }

    /// `g(root) = q^k · root`.
    fn shift(&mut self, element: &str, root: &str, k: i64) {
        if k == 0 {
            self.entry(element, root, &[(root, 1)]);
        } else {
            self.entry(element, root, &[(root, 1), ("q", k)]);
        }
    }

    /// `g_i(ρ_j) = ρ_j ρ_i^{-a_ij}` for every member of family `idx`.
    fn reflection_table(&mut self, idx: usize) {
        let fam = self.rep.families[idx].clone();
        let size = fam.cartan.size();
        for i in 0..size {
            for j in 0..size {
                let g = format!("{}{}", fam.prefix, i + fam.first);
                let rj = format!("{}{}", fam.root_prefix, j + fam.first);
                let ri = format!("{}{}", fam.root_prefix, i + fam.first);
                let a = fam.cartan.entry(i, j);
                if a == 0 {
                    self.entry(&g, &rj, &[(&rj, 1)]);
                } else if i == j {
                    self.entry(&g, &rj, &[(&rj, 1 - a)]);
                } else {
                    self.entry(&g, &rj, &[(&rj, 1), (&ri, -a)]);
                }
            }
        }
    }

    /// Translation tables `T_i(α_j) = q^{-δ_{j,i-1}+2δ_{j,i}-δ_{j,i+1}} α_j`.
    fn t_table(&mut self, n: usize, others: &[String]) {
        for i in 0..n {
            let t = format!("T{i}");
            for j in 0..n {
                let d = |a: usize| i64::from(j == a % n);
                let k = -d(i + n - 1) + 2 * d(i) - d(i + 1);
                self.shift(&t, &format!("alpha{j}"), k);
            }
            self.fixes(&t, others);
        }
    }

    /// `U_k(ρ_l) = q^{4δ_{lk}-2} ρ_l` for a pair of `A1` roots.
    fn u_table(&mut self, u: &str, root: &str, others: &[String]) {
        for k in 0..2 {
            for l in 0..2 {
                let e = if k == l { 2 } else { -2 };
                self.shift(&format!("{u}{k}"), &format!("{root}{l}"), e);
            }
            self.fixes(&format!("{u}{k}"), others);
        }
    }

    /// The standard `T_i` words `r_i r_{i+1} … r_{i+n-1} r_{i+n-2} … r_{i+1}`.
    fn t_words(&mut self, n: usize) {
        for i in 0..n {
            let mut idx: Vec<usize> = (0..n).map(|k| (i + k) % n).collect();
            idx.extend((1..n - 1).rev().map(|k| (i + k) % n));
            let w: Vec<String> = idx.iter().map(|k| format!("r{k}")).collect();
            self.translation(&format!("T{i}"), &w.join(" "));
        }
    }

    fn finish(self) -> Representation {
        self.rep
    }
}

fn names(prefix: &str, range: std::ops::Range<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn with_q(mut v: Vec<String>) -> Vec<String> {
    v.push("q".into());
    v
}

fn cat(parts: &[&[String]]) -> Vec<String> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

fn q12(conv: Convention) -> Result<Representation, WeylError> {
    let mut b = Builder::new("Q12", conv)?;
    for i in 0..6 {
        let (a, c) = (2 * i + 1, 2 * i + 2);
        b.gen(&format!("r{i}"), &format!("m{a} ({a},{c}) m{a}"));
    }
    b.gen("s0", "m1 m4 m5 m8 m9 (9,12) m9 m8 m5 m4 m1");
    b.gen("s1", "m2 m3 m6 m7 m10 (10,11) m10 m7 m6 m3 m2");
    b.gen("s'0", "m1 m3 m5 m7 m9 (9,11) m9 m7 m5 m3 m1");
    b.gen("s'1", "m2 m4 m6 m8 m10 (10,12) m10 m8 m6 m4 m2");
    b.gen("pi1", "(2,4,6,8,10,12) (1,3,5,7,9,11)");
    b.gen("pi2", "(1,2) (3,4) (5,6) (7,8) (9,10) (11,12)");
    b.gen("pi3", "iota (1,12) (2,11) (3,10) (4,9) (5,8) (6,7)");
    for i in 0..6 {
        b.root(&format!("alpha{i}"), LaurentMonomial::ys(&[2 * i + 1, 2 * i + 2]));
    }
    b.root("beta0", LaurentMonomial::ys(&[1, 4, 5, 8, 9, 12]));
    b.root("beta1", LaurentMonomial::ys(&[2, 3, 6, 7, 10, 11]));
    b.root("beta'0", LaurentMonomial::ys(&[1, 3, 5, 7, 9, 11]));
    b.root("beta'1", LaurentMonomial::ys(&[2, 4, 6, 8, 10, 12]));
    b.q_root();
    b.family("r", 0, CartanMatrix::affine(5), "alpha");
    b.family("s", 0, CartanMatrix::affine(1), "beta");
    b.family("s'", 0, CartanMatrix::affine(1), "beta'");

    let alphas = names("alpha", 0..6);
    let betas = names("beta", 0..2);
    let betas_p = names("beta'", 0..2);
    for f in 0..3 {
        b.reflection_table(f);
    }
    for i in 0..6 {
        b.fixes(&format!("r{i}"), &with_q(cat(&[&betas, &betas_p])));
    }
    for k in 0..2 {
        b.fixes(&format!("s{k}"), &with_q(cat(&[&alphas, &betas_p])));
        b.fixes(&format!("s'{k}"), &with_q(cat(&[&alphas, &betas])));
    }
    for i in 0..6 {
        b.entry("pi1", &format!("alpha{i}"), &[(&format!("alpha{}", (i + 1) % 6), 1)]);
        b.entry("pi3", &format!("alpha{i}"), &[(&format!("alpha{}", 5 - i), -1)]);
    }
    b.entry("pi1", "beta0", &[("beta1", 1)]);
    b.entry("pi1", "beta1", &[("beta0", 1)]);
    b.fixes("pi1", &with_q(betas_p.clone()));
    b.fixes("pi2", &with_q(alphas.clone()));
    b.entry("pi2", "beta0", &[("beta1", 1)]);
    b.entry("pi2", "beta1", &[("beta0", 1)]);
    b.entry("pi2", "beta'0", &[("beta'1", 1)]);
    b.entry("pi2", "beta'1", &[("beta'0", 1)]);
    b.entry("pi3", "beta0", &[("beta0", -1)]);
    b.entry("pi3", "beta1", &[("beta1", -1)]);
    b.entry("pi3", "beta'0", &[("beta'1", -1)]);
    b.entry("pi3", "beta'1", &[("beta'0", -1)]);
    b.entry("pi3", "q", &[("q", -1)]);

    b.t_words(6);
    b.translation("U0", "s0 s1");
    b.translation("U1", "s1 s0");
    b.translation("U'0", "s'0 s'1");
    b.translation("U'1", "s'1 s'0");
    b.translation("V", "pi1 r5 r4 r3 r2 r1 s1");
    b.translation("V'", "pi2 pi1 r5 r4 r3 r2 r1 s'1");
    b.translation("tau_c", "V'^-1 V U1");
    b.t_table(6, &cat(&[&betas, &betas_p]));
    b.u_table("U", "beta", &cat(&[&alphas, &betas_p]));
    b.u_table("U'", "beta'", &cat(&[&alphas, &betas]));
    for j in 0..6 {
        let k = i64::from(j == 0) - i64::from(j == 1);
        b.shift("V", &format!("alpha{j}"), k);
        b.shift("V'", &format!("alpha{j}"), k);
        b.fixes("tau_c", &[format!("alpha{j}")]);
    }
    for l in 0..2 {
        let k = i64::from(l == 0) - i64::from(l == 1);
        b.shift("V", &format!("beta{l}"), k);
        b.fixes("V", &[format!("beta'{l}")]);
        b.fixes("V'", &[format!("beta{l}")]);
        b.shift("V'", &format!("beta'{l}"), k);
        b.shift("tau_c", &format!("beta{l}"), -k);
        b.shift("tau_c", &format!("beta'{l}"), -k);
    }
    b.rep.decompositions = vec![
        ("tau_c".into(), "pi2 s'0 s0".into()),
        ("m1 (1,2) m1".into(), "m2 (1,2) m2".into()),
    ];
    Ok(b.finish())
}

fn q11_gamma() -> LaurentMonomial {
    mono(&[(2, 5), (4, 4), (6, 3), (8, 2), (10, 1), (3, -1), (5, -2), (7, -3), (9, -4), (11, -5)])
}

fn q11(conv: Convention) -> Result<Representation, WeylError> {
    let mut b = Builder::new("Q11", conv)?;
    b.gen("r0", "m1 m2 (2,11) m2 m1");
    for i in 1..5 {
        let (a, c) = (2 * i + 1, 2 * i + 2);
        b.gen(&format!("r{i}"), &format!("m{a} ({a},{c}) m{a}"));
    }
    b.gen("s0", "m1 m4 m5 m8 (8,9) m8 m5 m4 m1");
    b.gen("s1", "m2 m3 m6 m7 m10 (10,11) m10 m7 m6 m3 m2");
    b.gen("pi1", "(1,3,5,7,9,11,2,4,6,8,10) m2");
    b.gen("pi2", "iota (2,11) (3,10) (4,9) (5,8) (6,7)");
    b.root("alpha0", LaurentMonomial::ys(&[1, 2, 11]));
    for i in 1..5 {
        b.root(&format!("alpha{i}"), LaurentMonomial::ys(&[2 * i + 1, 2 * i + 2]));
    }
    b.root("beta0", LaurentMonomial::ys(&[1, 4, 5, 8, 9]));
    b.root("beta1", LaurentMonomial::ys(&[2, 3, 6, 7, 10, 11]));
    b.root("gamma", q11_gamma());
    b.q_root();
    b.family("r", 0, CartanMatrix::affine(4), "alpha");
    b.family("s", 0, CartanMatrix::affine(1), "beta");
    let alphas = names("alpha", 0..5);
    let betas = names("beta", 0..2);
    let gamma = vec!["gamma".to_string()];
    b.reflection_table(0);
    b.reflection_table(1);
    for i in 0..5 {
        b.fixes(&format!("r{i}"), &with_q(cat(&[&betas, &gamma])));
    }
    for k in 0..2 {
        b.fixes(&format!("s{k}"), &with_q(cat(&[&alphas, &gamma])));
    }
    for i in 0..5 {
        b.entry("pi1", &format!("alpha{i}"), &[(&format!("alpha{}", (i + 1) % 5), 1)]);
        let target = if i == 0 { 0 } else { 5 - i };
        b.entry("pi2", &format!("alpha{i}"), &[(&format!("alpha{target}"), -1)]);
    }
    b.entry("pi1", "beta0", &[("beta1", 1)]);
    b.entry("pi1", "beta1", &[("beta0", 1)]);
    b.shift("pi1", "gamma", 1);
    b.fixes("pi1", &["q".into()]);
    b.entry("pi2", "beta0", &[("beta0", -1)]);
    b.entry("pi2", "beta1", &[("beta1", -1)]);
    b.fixes("pi2", &gamma);
    b.entry("pi2", "q", &[("q", -1)]);

    b.t_words(5);
    b.translation("U0", "s0 s1");
    b.translation("U1", "s1 s0");
    b.translation("V", "pi1 r4 r3 r2 r1 s1");
    b.translation("V'", "pi1^5 s1");
    b.translation("tau_c", "V' U1");
    b.t_table(5, &cat(&[&betas, &gamma]));
    b.u_table("U", "beta", &cat(&[&alphas, &gamma]));
    for j in 0..5 {
        b.shift("V", &format!("alpha{j}"), i64::from(j == 0) - i64::from(j == 1));
        b.fixes("V'", &[format!("alpha{j}")]);
        b.fixes("tau_c", &[format!("alpha{j}")]);
    }
    for l in 0..2 {
        let k = i64::from(l == 0) - i64::from(l == 1);
        b.shift("V", &format!("beta{l}"), k);
        b.shift("V'", &format!("beta{l}"), k);
        b.shift("tau_c", &format!("beta{l}"), -k);
    }
    b.shift("V", "gamma", 1);
    b.shift("V'", "gamma", 5);
    b.shift("tau_c", "gamma", 5);
    b.rep.decompositions = vec![
        ("tau_c".into(), "pi1^5 s0".into()),
        ("m1 m2 (2,11) m2 m1".into(), "m2 m1 (11,1) m1 m2".into()),
    ];
    Ok(b.finish())
}

fn q101(conv: Convention) -> Result<Representation, WeylError> {
    let mut b = Builder::new("Q101", conv)?;
    b.gen("r0", "m1 m2 (2,4) m2 m1");
    b.gen("r1", "m3 m5 (5,6) m5 m3");
    b.gen("r2", "m7 (7,8) m7");
    b.gen("r3", "m9 (9,10) m9");
    b.gen("s0", "m1 m5 m8 (8,9) m8 m5 m1");
    b.gen("s1", "m2 m3 m6 m7 m10 (10,4) m10 m7 m6 m3 m2");
    b.gen("pi1", "(1,3,6,8,10) (2,5,7,9,4) m2 m6");
    b.gen("pi2", "(1,7) (2,8) (3,9) (4,6) (5,10) m4 m6");
    b.gen("pi3", "iota (2,4) (3,10) (5,9) (6,8) m8 m6");
    b.root("alpha0", LaurentMonomial::ys(&[1, 2, 4]));
    b.root("alpha1", LaurentMonomial::ys(&[3, 5, 6]));
    b.root("alpha2", LaurentMonomial::ys(&[7, 8]));
    b.root("alpha3", LaurentMonomial::ys(&[9, 10]));
    b.root("beta0", LaurentMonomial::ys(&[1, 5, 8, 9]));
    b.root("beta1", LaurentMonomial::ys(&[2, 3, 4, 6, 7, 10]));
    b.root("gamma", mono(&[(2, 2), (5, 1), (6, 3), (8, 2), (10, 1), (3, -1), (4, -2), (9, -1)]));
    b.q_root();
    b.family("r", 0, CartanMatrix::affine(3), "alpha");
    b.family("s", 0, CartanMatrix::affine(1), "beta");
    let alphas = names("alpha", 0..4);
    let betas = names("beta", 0..2);
    let gamma = vec!["gamma".to_string()];
    b.reflection_table(0);
    b.reflection_table(1);
    for i in 0..4 {
        b.fixes(&format!("r{i}"), &with_q(cat(&[&betas, &gamma])));
    }
    for k in 0..2 {
        b.fixes(&format!("s{k}"), &with_q(cat(&[&alphas, &gamma])));
    }
    for i in 0..4 {
        b.entry("pi1", &format!("alpha{i}"), &[(&format!("alpha{}", (i + 1) % 4), 1)]);
        b.entry("pi2", &format!("alpha{i}"), &[(&format!("alpha{}", (i + 2) % 4), 1)]);
        b.entry("pi3", &format!("alpha{i}"), &[(&format!("alpha{}", (4 - i) % 4), -1)]);
    }
    for p in ["pi1", "pi2"] {
        b.entry(p, "beta0", &[("beta1", 1)]);
        b.entry(p, "beta1", &[("beta0", 1)]);
        b.fixes(p, &["q".into()]);
    }
    b.shift("pi1", "gamma", 1);
    b.fixes("pi2", &gamma);
    b.entry("pi3", "beta0", &[("beta0", -1)]);
    b.entry("pi3", "beta1", &[("beta1", -1)]);
    b.fixes("pi3", &gamma);
    b.entry("pi3", "q", &[("q", -1)]);

    b.t_words(4);
    b.translation("U0", "s0 s1");
    b.translation("U1", "s1 s0");
    b.translation("V", "pi1 r3 r2 r1 s1");
    b.translation("V'", "pi2 pi1^2 s1");
    b.translation("tau_c", "V' U1");
    b.t_table(4, &cat(&[&betas, &gamma]));
    b.u_table("U", "beta", &cat(&[&alphas, &gamma]));
    for j in 0..4 {
        b.shift("V", &format!("alpha{j}"), i64::from(j == 0) - i64::from(j == 1));
        b.fixes("V'", &[format!("alpha{j}")]);
        b.fixes("tau_c", &[format!("alpha{j}")]);
    }
    for l in 0..2 {
        let k = i64::from(l == 0) - i64::from(l == 1);
        b.shift("V", &format!("beta{l}"), k);
        b.shift("V'", &format!("beta{l}"), k);
        b.shift("tau_c", &format!("beta{l}"), -k);
    }
    b.shift("V", "gamma", 1);
    b.shift("V'", "gamma", 2);
    b.shift("tau_c", "gamma", 2);
    b.rep.decompositions = vec![("tau_c".into(), "pi2 pi1^2 s0".into())];
    Ok(b.finish())
}

fn q102(conv: Convention) -> Result<Representation, WeylError> {
    let mut b = Builder::new("Q102", conv)?;
    b.gen("r0", "m1 m2 (2,6) m2 m1");
    b.gen("r1", "m3 m4 (4,5) m4 m3");
    b.gen("r2", "m7 (7,8) m7");
    b.gen("r3", "m9 (9,10) m9");
    b.gen("pi1", "iota (1,3) (4,6) (5,9) (7,10) m9 m8 m2 m5");
    b.gen("pi2", "iota (1,7) (2,4) (3,5) (6,8) (9,10) m4 m2");
    b.gen("pi3", "(1,7) (2,5) (3,4) (6,8) m5 m2");
    b.root("alpha0", LaurentMonomial::ys(&[1, 2, 6]));
    b.root("alpha1", LaurentMonomial::ys(&[3, 4, 5]));
    b.root("alpha2", LaurentMonomial::ys(&[7, 8]));
    b.root("alpha3", LaurentMonomial::ys(&[9, 10]));
    b.root("gamma1", mono(&[(2, 2), (3, 1), (4, 1), (10, 1), (5, -1), (9, -1)]));
    b.root("gamma2", mono(&[(1, 1), (2, 1), (4, 2), (5, 2), (8, 3), (3, -2), (6, -3), (7, -1)]));
    b.q_root();
    b.family("r", 0, CartanMatrix::affine(3), "alpha");
    let gammas = vec!["gamma1".to_string(), "gamma2".to_string()];
    b.reflection_table(0);
    for i in 0..4 {
        b.fixes(&format!("r{i}"), &with_q(gammas.clone()));
    }
    for (i, j) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
        b.entry("pi1", &format!("alpha{i}"), &[(&format!("alpha{j}"), -1)]);
    }
    b.shift("pi1", "gamma1", -1);
    b.shift("pi1", "gamma2", 1);
    b.entry("pi1", "q", &[("q", -1)]);
    for (i, j) in [(0, 2), (1, 1), (2, 0), (3, 3)] {
        b.entry("pi2", &format!("alpha{i}"), &[(&format!("alpha{j}"), -1)]);
        b.entry("pi3", &format!("alpha{i}"), &[(&format!("alpha{j}"), 1)]);
    }
    b.fixes("pi2", &gammas);
    b.entry("pi2", "q", &[("q", -1)]);
    b.fixes("pi3", &["gamma1".into(), "q".into()]);
    b.entry("pi3", "gamma2", &[("gamma2", -1)]);

    b.t_words(4);
    b.translation("U", "pi2 pi1 r3 r2 r1");
    b.translation("V", "(pi3 pi2 pi1)^2");
    b.translation("V'", "(pi1 pi3)^4");
    b.translation("tau_c", "V");
    b.t_table(4, &gammas);
    for j in 0..4 {
        b.shift("U", &format!("alpha{j}"), i64::from(j == 0) - i64::from(j == 1));
        b.fixes("V", &[format!("alpha{j}")]);
        b.fixes("V'", &[format!("alpha{j}")]);
        b.fixes("tau_c", &[format!("alpha{j}")]);
    }
    b.shift("U", "gamma1", 1);
    b.shift("U", "gamma2", -1);
    b.shift("V", "gamma1", 2);
    b.shift("V", "gamma2", 0);
    b.shift("V'", "gamma1", 0);
    b.shift("V'", "gamma2", 4);
    b.shift("tau_c", "gamma1", 2);
    b.shift("tau_c", "gamma2", 0);
    b.rep.decompositions = vec![("tau_c".into(), "pi3 pi2 pi1 pi3 pi2 pi1".into())];
    Ok(b.finish())
}

fn q103(conv: Convention) -> Result<Representation, WeylError> {
    let mut b = Builder::new("Q103", conv)?;
    b.gen("r0", "m1 m2 (2,5) m2 m1");
    b.gen("r1", "m3 (3,4) m3");
    b.gen("r2", "m6 m7 (7,8) m7 m6");
    b.gen("r3", "m9 (9,10) m9");
    b.gen("s0", "m1 m4 m8 (8,9) m8 m4 m1");
    b.gen("s1", "m2 m3 m6 m7 m10 (10,5) m10 m7 m6 m3 m2");
    b.gen("pi1", "(1,3,8,10) (2,4,6,7,9,5) m7 m2");
    b.gen("pi2", "iota (2,5) (3,10) (4,9) (6,7)");
    b.gen("pi3", "(1,8) (2,7) (3,10) (4,9) (5,6)");
    b.root("alpha0", LaurentMonomial::ys(&[1, 2, 5]));
    b.root("alpha1", LaurentMonomial::ys(&[3, 4]));
    b.root("alpha2", LaurentMonomial::ys(&[6, 7, 8]));
    b.root("alpha3", LaurentMonomial::ys(&[9, 10]));
    b.root("beta0", LaurentMonomial::ys(&[1, 4, 8, 9]));
    b.root("beta1", LaurentMonomial::ys(&[2, 3, 5, 6, 7, 10]));
    b.root("gamma", mono(&[(2, 1), (4, 1), (6, 1), (5, -1), (7, -1), (9, -1)]));
    b.q_root();
    b.family("r", 0, CartanMatrix::affine(3), "alpha");
    b.family("s", 0, CartanMatrix::affine(1), "beta");
    let alphas = names("alpha", 0..4);
    let betas = names("beta", 0..2);
    let gamma = vec!["gamma".to_string()];
    b.reflection_table(0);
    b.reflection_table(1);
    for i in 0..4 {
        b.fixes(&format!("r{i}"), &with_q(cat(&[&betas, &gamma])));
    }
    for k in 0..2 {
        b.fixes(&format!("s{k}"), &with_q(cat(&[&alphas, &gamma])));
    }
    for i in 0..4 {
        b.entry("pi1", &format!("alpha{i}"), &[(&format!("alpha{}", (i + 1) % 4), 1)]);
        b.entry("pi2", &format!("alpha{i}"), &[(&format!("alpha{}", (4 - i) % 4), -1)]);
        b.entry("pi3", &format!("alpha{i}"), &[(&format!("alpha{}", (i + 2) % 4), 1)]);
    }
    b.entry("pi1", "beta0", &[("beta1", 1)]);
    b.entry("pi1", "beta1", &[("beta0", 1)]);
    b.fixes("pi1", &with_q(gamma.clone()));
    b.entry("pi2", "beta0", &[("beta0", -1)]);
    b.entry("pi2", "beta1", &[("beta1", -1)]);
    b.fixes("pi2", &gamma);
    b.entry("pi2", "q", &[("q", -1)]);
    b.fixes("pi3", &with_q(betas.clone()));
    b.entry("pi3", "gamma", &[("gamma", -1)]);

    b.t_words(4);
    b.translation("U0", "s0 s1");
    b.translation("U1", "s1 s0");
    b.translation("V", "pi1 r3 r2 r1 s1");
    b.t_table(4, &cat(&[&betas, &gamma]));
    b.u_table("U", "beta", &cat(&[&alphas, &gamma]));
    for j in 0..4 {
        b.shift("V", &format!("alpha{j}"), i64::from(j == 0) - i64::from(j == 1));
    }
    for l in 0..2 {
        b.shift("V", &format!("beta{l}"), i64::from(l == 0) - i64::from(l == 1));
    }
    // V fixes gamma here: the Q11 images of the roots entering the reduced
    // gamma pick up q^{-1/5} and q^{1/5}, which cancel.
    b.fixes("V", &["gamma".to_string()]);
    Ok(b.finish())
}

fn q104(conv: Convention) -> Result<Representation, WeylError> {
    let mut b = Builder::new("Q104", conv)?;
    for i in 0..5 {
        let (a, c) = (2 * i + 1, 2 * i + 2);
        b.gen(&format!("r{i}"), &format!("m{a} ({a},{c}) m{a}"));
    }
    b.gen("s0", "m1 m4 m5 m8 (8,9) m8 m5 m4 m1");
    b.gen("s1", "m2 m3 m7 m10 (10,6) m10 m7 m3 m2");
    b.gen("pi1", "(1,4,5,8,9) (2,3,6,7,10)");
    b.gen("pi2", "(1,2) (3,4) (5,6) (7,8) (9,10)");
    b.gen("pi3", "iota (3,10) (4,9) (5,8) (6,7)");
    for i in 0..5 {
        b.root(&format!("alpha{i}"), LaurentMonomial::ys(&[2 * i + 1, 2 * i + 2]));
    }
    b.root("beta0", LaurentMonomial::ys(&[1, 4, 5, 8, 9]));
    b.root("beta1", LaurentMonomial::ys(&[2, 3, 6, 7, 10]));
    b.q_root();
    b.family("r", 0, CartanMatrix::affine(4), "alpha");
    b.family("s", 0, CartanMatrix::affine(1), "beta");
    let alphas = names("alpha", 0..5);
    let betas = names("beta", 0..2);
    // The table below and the corollary for 11 -> 2 both need the usual
    // r_i r_{i+1} ... r_{i+1}; the reversed word r_{i+1} ... r_{i+1} r_i is its inverse.
    b.t_words(5);
    b.translation("U0", "s0 s1");
    b.translation("U1", "s1 s0");
    b.translation("V", "pi1 r4 r3 r2 r1");
    b.translation("V'", "pi2 s1");
    b.translation("tau_c", "V' U1");
    b.t_table(5, &betas);
    b.u_table("U", "beta", &alphas);
    for j in 0..5 {
        b.shift("V", &format!("alpha{j}"), i64::from(j == 0) - i64::from(j == 1));
        b.fixes("V'", &[format!("alpha{j}")]);
        b.fixes("tau_c", &[format!("alpha{j}")]);
    }
    for l in 0..2 {
        let k = i64::from(l == 0) - i64::from(l == 1);
        b.fixes("V", &[format!("beta{l}")]);
        b.shift("V'", &format!("beta{l}"), k);
        b.shift("tau_c", &format!("beta{l}"), -k);
    }
    b.rep.decompositions = vec![("tau_c".into(), "pi2 s0".into())];
    Ok(b.finish())
}

fn q105(conv: Convention) -> Result<Representation, WeylError> {
    let mut b = Builder::new("Q105", conv)?;
    for i in 1..=5 {
        let (a, c) = (2 * i - 1, 2 * i);
        b.gen(&format!("r{i}"), &format!("m{a} ({a},{c}) m{a}"));
    }
    b.gen("pi1", "(1,2) (3,4) (5,6) (7,8) (9,10)");
    b.gen("pi2", "iota (3,4) (7,8)");
    b.gen("pi3", "iota (1,10) (2,9) (3,8) (4,7) (5,6)");
    for i in 1..=5 {
        b.root(&format!("alpha{i}"), LaurentMonomial::ys(&[2 * i - 1, 2 * i]));
    }
    b.root("gamma", mono(&[(1, 1), (5, 1), (9, 1), (2, -1), (6, -1), (10, -1)]));
    b.q_root();
    b.family("r", 1, CartanMatrix::finite(5), "alpha");
    let gamma = vec!["gamma".to_string()];
    for i in 1..=5 {
        b.fixes(&format!("r{i}"), &gamma);
        b.fixes("pi1", &[format!("alpha{i}")]);
        b.entry("pi2", &format!("alpha{i}"), &[(&format!("alpha{i}"), -1)]);
        b.entry("pi3", &format!("alpha{i}"), &[(&format!("alpha{}", 6 - i), -1)]);
    }
    b.entry("pi1", "gamma", &[("gamma", -1)]);
    b.entry("pi2", "gamma", &[("gamma", -1)]);
    b.fixes("pi3", &gamma);
    Ok(b.finish())
}

pub(crate) fn build(name: &str, conv: Convention) -> Result<Representation, WeylError> {
    match name {
        "Q12" => q12(conv),
        "Q11" => q11(conv),
        "Q101" => q101(conv),
        "Q102" => q102(conv),
        "Q103" => q103(conv),
        "Q104" => q104(conv),
        "Q105" => q105(conv),
        _ => Err(WeylError::UnknownName(name.to_string())),
    }
}

/// Expands a product of named elements and elementary steps into a program.
pub(crate) fn expand(rep: &Representation, expr: &str, depth: usize) -> Result<Word, SeedError> {
    if depth > 8 {
        return Err(SeedError::BadWord(format!("recursive definition in {expr}")));
    }
    let mut factors = split_factors(expr)?;
    if rep.convention.reverse_products {
        factors.reverse();
    }
    let mut out = Word::identity();
    for f in &factors {
        let w = match f {
            Factor::Group(body, k) => expand(rep, body, depth)?.pow(*k),
            Factor::Plain(s) => {
                // Resolve names up front so that errors inside definitions surface.
                let mut named = Vec::new();
                for tok in s.split(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '\'')) {
                    if tok.is_empty() || tok == "iota" || is_mutation(tok) || tok.parse::<i64>().is_ok() {
                        continue;
                    }
                    if let Some((_, w)) = rep.generators.iter().find(|(n, _)| n == tok) {
                        if !crate::seed::preserves(&rep.quiver, w)? {
                            return Err(SeedError::QuiverNotPreserved(format!("{tok} = {w}")));
                        }
                        named.push((tok.to_string(), w.clone()));
                    } else if let Some((_, e)) = rep.translations.iter().find(|(n, _)| n == tok) {
                        named.push((tok.to_string(), expand(rep, e, depth + 1)?));
                    }
                }
                Word::parse(s, &|tok| named.iter().find(|(n, _)| n == tok).map(|(_, w)| w.clone()))?
            }
        };
        out = out.then(&w);
    }
    Ok(out)
}

fn is_mutation(tok: &str) -> bool {
    tok.strip_prefix('m').is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
}

enum Factor {
    Group(String, i64),
    Plain(String),
}

/// Splits `a b^2 (pi1 pi2)^3` into factors. A parenthesized list of names
/// is a group with an optional power; a parenthesized vertex list is a cycle.
fn split_factors(expr: &str) -> Result<Vec<Factor>, SeedError> {
    let bad = || SeedError::BadWord(format!("unbalanced parentheses in {expr}"));
    let mut out = Vec::new();
    let chars: Vec<char> = expr.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if chars[i] == '(' {
            let close = chars[i..].iter().position(|&c| c == ')').ok_or_else(bad)? + i;
            let inner: String = chars[start + 1..close].iter().collect();
            i = close + 1;
            let pow_start = i;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                while i < chars.len() && (chars[i] == '-' || chars[i].is_ascii_digit()) {
                    i += 1;
                }
            }
            if inner.chars().any(|c| c.is_ascii_alphabetic()) {
                let pow: String = chars[pow_start..i].iter().collect();
                let k = match pow.strip_prefix('^') {
                    Some(e) => e.parse().map_err(|_| SeedError::BadWord(format!("bad exponent in {expr}")))?,
                    None => 1,
                };
                out.push(Factor::Group(inner, k));
            } else {
                out.push(Factor::Plain(chars[start..i].iter().collect()));
            }
        } else {
            while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '(' {
                i += 1;
            }
            out.push(Factor::Plain(chars[start..i].iter().collect()));
        }
    }
    Ok(out)
}
