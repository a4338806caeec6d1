use std::fmt;

use serde::{Deserialize, Serialize};

/// A variable of the ambient rational function field.
///
/// Ids are partitioned into fixed namespaces so every variable has a stable
/// printable name: coefficients `y1..y99`, the confluence parameter `eps`,
/// root parameters `a0..a9`, and the spectral variables `t` and `q`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var(u16);

const EPS_ID: u16 = 100;
const ALPHA_BASE: u16 = 110;
const T_ID: u16 = 120;
const Q_ID: u16 = 121;

impl Var {
    pub const EPS: Var = Var(EPS_ID);
    pub const T: Var = Var(T_ID);
    pub const Q: Var = Var(Q_ID);

    /// The coefficient `y_k` of vertex `k` (1-based).
    pub fn y(k: usize) -> Var {
        assert!((1..EPS_ID as usize).contains(&k), "vertex id {k} out of range");
        Var(k as u16)
    }

    /// The root parameter `a_i`.
    pub fn alpha(i: usize) -> Var {
        assert!(i < 10, "alpha index {i} out of range");
        Var(ALPHA_BASE + i as u16)
    }

    pub fn id(self) -> u16 {
        self.0
    }

    /// Vertex index if this is a coefficient variable.
    pub fn vertex(self) -> Option<usize> {
        (1..EPS_ID).contains(&self.0).then_some(self.0 as usize)
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "eps" => return Some(Var::EPS),
            "t" => return Some(Var::T),
            "q" => return Some(Var::Q),
            _ => {}
        }
        let (head, digits) = name.split_at(1);
        let k: usize = digits.parse().ok()?;
        match head {
            "y" if (1..EPS_ID as usize).contains(&k) => Some(Var::y(k)),
            "a" if k < 10 => Some(Var::alpha(k)),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            EPS_ID => write!(f, "eps"),
            T_ID => write!(f, "t"),
            Q_ID => write!(f, "q"),
            id if id >= ALPHA_BASE && id < ALPHA_BASE + 10 => write!(f, "a{}", id - ALPHA_BASE),
            id => write!(f, "y{id}"),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in [Var::y(1), Var::y(12), Var::EPS, Var::T, Var::Q, Var::alpha(0), Var::alpha(5)] {
            assert_eq!(Var::from_name(&v.to_string()), Some(v));
        }
        assert_eq!(Var::from_name("z3"), None);
        assert_eq!(Var::from_name("y0"), None);
    }
}
