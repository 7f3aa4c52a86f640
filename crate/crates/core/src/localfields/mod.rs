//! Factorization data over finite prime fields and p-adic fields: Frobenius
//! cycle types, (e, f)-invariants of local factors, and the dedicated
//! 7-adic splitting check over Q₇(√7).

pub mod gf;
pub mod gfext;
pub mod invariants;
pub mod padic;
pub mod q7;

pub use gf::{factor_mod_p, roots_mod_p, PolyModP};
pub use gfext::{ExtField, ExtPoly};
pub use invariants::{frobenius_cycle_type, local_invariants, LocalData};
pub use padic::PadicElt;
pub use q7::{q7_sqrt7_split_check, RamQuadElt};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LocalFieldError {
    #[error("polynomial is not squarefree modulo {p}")]
    NotSquarefree { p: u64 },
    #[error("p-adic precision exhausted")]
    PrecisionExhausted,
    #[error("wild ramification at p = {p} (e = {e}) is not supported")]
    WildUnsupported { p: u64, e: u32 },
    #[error("analysis would require a tower of residue extensions")]
    ResidueTower,
    #[error("irregular higher-order segment data; not supported")]
    IrregularUnsupported,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Multiset of cycle lengths; entries sum to the degree of the ambient action.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleType {
    parts: Vec<u32>,
}

impl CycleType {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Order of a permutation with this cycle type.
    pub fn order(&self) -> u64 {
        self.parts
            .iter()
            .fold(1u64, |acc, &x| num_integer::lcm(acc, x as u64))
    }

    /// Number of fixed points.
    pub fn fixed_points(&self) -> u32 {
        self.parts.iter().filter(|&&x| x == 1).count() as u32
    }
}

impl std::fmt::Debug for CycleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::fmt::Display for CycleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // grouped notation like (2^3.1^2)
        write!(f, "(")?;
        let mut first = true;
        let mut i = 0;
        while i < self.parts.len() {
            let v = self.parts[i];
            let mut count = 0;
            while i < self.parts.len() && self.parts[i] == v {
                count += 1;
                i += 1;
            }
            if !first {
                write!(f, ".")?;
            }
            if count == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{count}")?;
            }
            first = false;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_type_display_and_order() {
        let t = CycleType::new(vec![2, 1, 2, 2, 1]);
        assert_eq!(format!("{t}"), "(2^3.1^2)");
        assert_eq!(t.order(), 2);
        assert_eq!(t.total(), 8);
        assert_eq!(t.fixed_points(), 2);
        let u = CycleType::new(vec![6, 1, 1]);
        assert_eq!(format!("{u}"), "(6.1^2)");
        assert_eq!(u.order(), 6);
    }
}
