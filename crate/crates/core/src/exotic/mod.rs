//! Witness pairs for exotic decompositions and exotic maps.
//!
//! A pair `(D₁, D₂)` certifies a decomposition problem in dimension `n` when
//!
//! * `B_n ≤ D₁ ⊕ D₂ + 1`, so every `n`-dimensional Boltyanskii compactum
//!   splits as `A ∪ B` with `d_A ≤ D₁`, `d_B ≤ D₂`; and
//! * `dim(D₁ ⊞ D₂) ≤ n − 2`, so `dim(A × B) + 1 < n`.
//!
//! For maps the bound type is `D` with `D(ℚ) = m − 1` and `D(p) = (n−1)⁺`,
//! and the pair must satisfy `D ≤ D₁ ⊕ D₂ + 1`, `dim D₁ = m` and
//! `dim(D₁ ⊞ (D₂ + 1)) ≤ n − 1`.

mod ledger;
mod search;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::decorated::DecoratedValue;
use crate::dimtype::{DimensionType, Prime};

pub use ledger::{verify_paper, verify_paper_with, LedgerConfig, LedgerEntry, LedgerReport};
pub use search::{enumerate_types, search_decomposition, search_map, PrimePolicy, SearchBounds};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExoticError {
    #[error("decomposition problems need n >= {min}, got n={n}")]
    DecompositionIndex { n: u64, min: u64 },
    #[error("map problems need n >= {min_n} and 2 <= m <= n-{gap}, got n={n}, m={m}")]
    MapIndices { n: u64, m: u64, min_n: u64, gap: u64 },
    #[error("search bounds: {0}")]
    Bounds(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Problem {
    Decomposition { n: u64 },
    Map { n: u64, m: u64 },
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Decomposition { n } => write!(f, "decomposition n={n}"),
            Problem::Map { n, m } => write!(f, "map n={n} m={m}"),
        }
    }
}

/// One inequality of a certificate with both sides rendered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub left: String,
    pub relation: String,
    pub right: String,
    pub pass: bool,
}

impl Check {
    fn leq_types(name: &str, left: &DimensionType, right: &DimensionType) -> Check {
        Check {
            name: name.into(),
            left: left.to_string(),
            relation: "<=".into(),
            right: right.to_string(),
            pass: left.leq(right),
        }
    }

    fn compare<T: PartialOrd + fmt::Display>(name: &str, left: T, relation: &str, right: T) -> Check {
        let pass = match relation {
            "<=" => left <= right,
            "=" => left == right,
            _ => unreachable!("unknown relation {relation}"),
        };
        Check {
            name: name.into(),
            left: left.to_string(),
            relation: relation.into(),
            right: right.to_string(),
            pass,
        }
    }
}

/// A feasibility record for a witness pair.
///
/// Text form, one field per line:
///
/// ```text
/// problem<TAB>decomposition n=5
/// D1<TAB>q=1 all=2-
/// D2<TAB>q=2 all=1+
/// check<TAB><name><TAB><left><TAB><relation><TAB><right><TAB>pass|fail
/// valid<TAB>true|false
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCertificate {
    pub problem: Problem,
    pub d1: DimensionType,
    pub d2: DimensionType,
    pub checks: Vec<Check>,
}

impl WitnessCertificate {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Recomputes every check from `D₁`, `D₂` and compares with the record.
    pub fn recheck(&self) -> bool {
        let fresh = match self.problem {
            Problem::Decomposition { n } => decomposition_feasible(n, &self.d1, &self.d2),
            Problem::Map { n, m } => map_feasible(n, m, &self.d1, &self.d2),
        };
        fresh.map_or(false, |c| c == *self)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("certificate serializes");
        v["valid"] = self.is_valid().into();
        v
    }
}

impl fmt::Display for WitnessCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "problem\t{}", self.problem)?;
        writeln!(f, "D1\t{}", self.d1)?;
        writeln!(f, "D2\t{}", self.d2)?;
        for c in &self.checks {
            writeln!(
                f,
                "check\t{}\t{}\t{}\t{}\t{}",
                c.name,
                c.left,
                c.relation,
                c.right,
                if c.pass { "pass" } else { "fail" }
            )?;
        }
        write!(f, "valid\t{}", self.is_valid())
    }
}

fn check_decomposition_index(n: u64) -> Result<(), ExoticError> {
    if n < 2 {
        return Err(ExoticError::DecompositionIndex { n, min: 2 });
    }
    Ok(())
}

fn check_map_indices(n: u64, m: u64, min_n: u64, gap: u64) -> Result<(), ExoticError> {
    if n < min_n || m < 2 || m + gap > n {
        return Err(ExoticError::MapIndices { n, m, min_n, gap });
    }
    Ok(())
}

/// Checks `B_n ≤ D₁ ⊕ D₂ + 1` and `dim(D₁ ⊞ D₂) ≤ n − 2`.
pub fn decomposition_feasible(
    n: u64,
    d1: &DimensionType,
    d2: &DimensionType,
) -> Result<WitnessCertificate, ExoticError> {
    check_decomposition_index(n)?;
    let bn = DimensionType::boltyanskii(n).expect("n >= 2");
    let bound = d1.oplus(d2).add_const(1);
    let product_dim = d1.boxplus(d2).dim();
    Ok(WitnessCertificate {
        problem: Problem::Decomposition { n },
        d1: d1.clone(),
        d2: d2.clone(),
        checks: vec![
            Check::leq_types("B_n <= (D1 (+) D2) + 1", &bn, &bound),
            Check::compare("dim(D1 [+] D2) <= n-2", product_dim, "<=", (n - 2).into()),
        ],
    })
}

/// The bound type of the map problem: `q = m − 1`, `(n−1)⁺` at every prime.
pub fn map_bound_type(n: u64, m: u64) -> Result<DimensionType, ExoticError> {
    check_map_indices(n, m, 4, 2)?;
    Ok(DimensionType::uniform(m - 1, DecoratedValue::plus(n - 1)).expect("valid bound type"))
}

/// Checks `D ≤ D₁ ⊕ D₂ + 1`, `dim D₁ = m` and `dim(D₁ ⊞ (D₂ + 1)) ≤ n − 1`.
pub fn map_feasible(
    n: u64,
    m: u64,
    d1: &DimensionType,
    d2: &DimensionType,
) -> Result<WitnessCertificate, ExoticError> {
    let bound_type = map_bound_type(n, m)?;
    let bound = d1.oplus(d2).add_const(1);
    let fiber_product_dim = d1.boxplus(&d2.add_const(1)).dim();
    Ok(WitnessCertificate {
        problem: Problem::Map { n, m },
        d1: d1.clone(),
        d2: d2.clone(),
        checks: vec![
            Check::leq_types("D <= (D1 (+) D2) + 1", &bound_type, &bound),
            Check::compare("dim D1 = m", d1.dim(), "=", m.into()),
            Check::compare("dim(D1 [+] (D2 + 1)) <= n-1", fiber_product_dim, "<=", (n - 1).into()),
        ],
    })
}

/// The decomposition witness `D₁ = (q=1, 2⁻)`, `D₂ = (q=n−3, (n−4)⁺)`.
pub fn paper_witness_decomposition(n: u64) -> Result<(DimensionType, DimensionType), ExoticError> {
    if n < 5 {
        return Err(ExoticError::DecompositionIndex { n, min: 5 });
    }
    let d1 = DimensionType::uniform(1, DecoratedValue::minus(2)).expect("valid");
    let d2 = DimensionType::uniform(n - 3, DecoratedValue::plus(n - 4)).expect("valid");
    Ok((d1, d2))
}

/// The map witness triple `(D, D₁, D₂)`:
/// `D = (m−1, (n−1)⁺)`, `D₁ = (m−1, m⁻)`, `D₂ = (n−m−1, (n−m−2)⁺)`.
pub fn paper_witness_map(
    n: u64,
    m: u64,
) -> Result<(DimensionType, DimensionType, DimensionType), ExoticError> {
    check_map_indices(n, m, 5, 3)?;
    let d = map_bound_type(n, m)?;
    let d1 = DimensionType::uniform(m - 1, DecoratedValue::minus(m)).expect("valid");
    let d2 = DimensionType::uniform(n - m - 1, DecoratedValue::plus(n - m - 2)).expect("valid");
    Ok((d, d1, d2))
}

/// Primes as given on the command line, checked.
pub fn prime_list(primes: &[Prime]) -> Result<Vec<Prime>, ExoticError> {
    let mut out = primes.to_vec();
    out.sort_unstable();
    out.dedup();
    if let Some(p) = out.iter().find(|&&p| !crate::dimtype::is_prime(p)) {
        return Err(ExoticError::Bounds(format!("{p} is not prime")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DimensionType {
        s.parse().unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let c = decomposition_feasible(5, &d("q=1 all=2-"), &d("q=2 all=1+")).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.checks[0].right, "q=4 all=4+");
        assert_eq!(c.checks[1].left, "3");

        let c = decomposition_feasible(5, &d("q=1 all=2-"), &d("q=3 all=2+")).unwrap();
        assert!(c.checks[0].pass);
        assert!(!c.checks[1].pass);
        assert_eq!(c.checks[1].left, "4");

        let z = DimensionType::zero();
        let c = decomposition_feasible(2, &z, &z).unwrap();
        assert!(!c.checks[0].pass);
        assert!(!c.is_valid());

        assert!(decomposition_feasible(1, &z, &z).is_err());
    }

    #[test]
    fn map_examples() {
        let c = map_feasible(5, 2, &d("q=1 all=2-"), &d("q=2 all=1+")).unwrap();
        assert!(c.is_valid(), "{c}");

        let c = map_feasible(6, 2, &d("q=1 all=2-"), &d("q=3 all=2+")).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.checks[2].left, "5");

        // (2) (+) 1+ = (2 [+] 1-)* = 3+ with q=4, so the bound holds; the
        // fiber product 2 [+] 2+ = 4+ with q=5 has dimension 5 > 4.
        let c = map_feasible(5, 2, &d("q=2"), &d("q=2 all=1+")).unwrap();
        assert!(c.checks[0].pass);
        assert!(c.checks[1].pass);
        assert!(!c.checks[2].pass);
        assert_eq!(c.checks[2].left, "5");

        assert!(map_feasible(3, 2, &d("q=1"), &d("q=1")).is_err());
        assert!(map_feasible(5, 4, &d("q=1"), &d("q=1")).is_err());
        assert!(map_feasible(5, 1, &d("q=1"), &d("q=1")).is_err());
    }

    #[test]
    fn witness_constructors() {
        assert_eq!(paper_witness_decomposition(5).unwrap(), (d("q=1 all=2-"), d("q=2 all=1+")));
        assert_eq!(paper_witness_decomposition(6).unwrap(), (d("q=1 all=2-"), d("q=3 all=2+")));
        assert!(paper_witness_decomposition(4).is_err());

        assert_eq!(
            paper_witness_map(5, 2).unwrap(),
            (d("q=1 all=4+"), d("q=1 all=2-"), d("q=2 all=1+"))
        );
        assert_eq!(
            paper_witness_map(7, 3).unwrap(),
            (d("q=2 all=6+"), d("q=2 all=3-"), d("q=3 all=2+"))
        );
        assert!(paper_witness_map(5, 3).is_err());
        assert!(paper_witness_map(4, 2).is_err());
    }

    #[test]
    fn certificate_formats() {
        let c = decomposition_feasible(5, &d("q=1 all=2-"), &d("q=2 all=1+")).unwrap();
        let text = c.to_text();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "problem\tdecomposition n=5");
        assert_eq!(lines[1], "D1\tq=1 all=2-");
        assert_eq!(lines[3], "check\tB_n <= (D1 (+) D2) + 1\tq=4 all=4+\t<=\tq=4 all=4+\tpass");
        assert_eq!(lines[5], "valid\ttrue");
        let j = c.to_json();
        assert_eq!(j["problem"]["kind"], "decomposition");
        assert_eq!(j["d2"], "q=2 all=1+");
        assert_eq!(j["checks"][1]["left"], "3");
        assert_eq!(j["valid"], true);
        assert!(c.recheck());
    }
}
