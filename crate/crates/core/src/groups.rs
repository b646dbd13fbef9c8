//! Finite direct sums of abelian groups and their Bockstein bases.
//!
//! `σ(G) ⊂ σ` is read off from the torsion and divisibility of `G`:
//!
//! * `ℤ_{(p)} ∈ σ(G)` iff `G/Tor G` is not divisible by `p`;
//! * `ℤ_p ∈ σ(G)` iff `p-Tor G` is nonzero and not divisible by `p`;
//! * `ℤ_{p^∞} ∈ σ(G)` iff `p-Tor G` is nonzero and divisible by `p`;
//! * `ℚ ∈ σ(G)` iff `G/Tor G` is nonzero and divisible by every `p`.
//!
//! For `ℤ[1/p]` these rules leave `ℚ` out of the basis even though some
//! treatments include it. `dim_G` is unaffected, since `D(ℚ) ≤ D(ℤ_{(q)})`
//! for every dimension type.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::decorated::ExtNat;
use crate::dimtype::{is_prime, join, BocksteinGroup, DimensionType, Prime, PrimeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupAtom {
    /// `ℤ`
    Z,
    /// `ℚ`
    Q,
    /// `ℤ/p^k`, `k ≥ 1`
    ZmodPk(Prime, u32),
    /// `ℤ_{p^∞}`
    ZpInf(Prime),
    /// `ℤ_{(p)}`
    ZLoc(Prime),
    /// `ℤ[1/p]`
    ZInvP(Prime),
}

impl GroupAtom {
    fn is_torsion(self) -> bool {
        matches!(self, GroupAtom::ZmodPk(..) | GroupAtom::ZpInf(_))
    }

    /// Primes `p` by which this torsion-free atom is *not* divisible.
    fn non_divisible_primes(self) -> PrimeSet {
        match self {
            GroupAtom::Z => PrimeSet::all(),
            GroupAtom::Q => PrimeSet::empty(),
            GroupAtom::ZLoc(p) => PrimeSet::only(p),
            GroupAtom::ZInvP(p) => PrimeSet::all_except(p),
            GroupAtom::ZmodPk(..) | GroupAtom::ZpInf(_) => unreachable!("torsion atom"),
        }
    }
}

impl From<BocksteinGroup> for GroupAtom {
    fn from(g: BocksteinGroup) -> Self {
        match g {
            BocksteinGroup::Q => GroupAtom::Q,
            BocksteinGroup::Zp(p) => GroupAtom::ZmodPk(p, 1),
            BocksteinGroup::ZpInfinity(p) => GroupAtom::ZpInf(p),
            BocksteinGroup::ZLocalized(p) => GroupAtom::ZLoc(p),
        }
    }
}

impl fmt::Display for GroupAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupAtom::Z => f.write_str("Z"),
            GroupAtom::Q => f.write_str("Q"),
            GroupAtom::ZmodPk(p, 1) => write!(f, "Z/{p}"),
            GroupAtom::ZmodPk(p, k) => write!(f, "Z/{p}^{k}"),
            GroupAtom::ZpInf(p) => write!(f, "Z({p}inf)"),
            GroupAtom::ZLoc(p) => write!(f, "Z_({p})"),
            GroupAtom::ZInvP(p) => write!(f, "Z[1/{p}]"),
        }
    }
}

/// A formal finite direct sum of atoms. Equality is multiset equality; the
/// zero group is the empty sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupExpr {
    atoms: Vec<GroupAtom>,
}

impl GroupExpr {
    pub fn new(atoms: impl IntoIterator<Item = GroupAtom>) -> Self {
        let mut atoms: Vec<_> = atoms.into_iter().collect();
        atoms.sort();
        GroupExpr { atoms }
    }

    pub fn zero() -> Self {
        GroupExpr::default()
    }

    pub fn atoms(&self) -> &[GroupAtom] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn direct_sum(&self, other: &GroupExpr) -> GroupExpr {
        GroupExpr::new(self.atoms.iter().chain(&other.atoms).copied())
    }

    /// The Bockstein basis `σ(G)`.
    pub fn sigma(&self) -> SigmaSet {
        let mut fields = BTreeSet::new();

        let torsion_free: Vec<_> = self.atoms.iter().copied().filter(|a| !a.is_torsion()).collect();
        let localized = torsion_free
            .iter()
            .fold(PrimeSet::empty(), |acc, a| acc.union(&a.non_divisible_primes()));
        if !torsion_free.is_empty() && localized.is_empty() {
            fields.insert(BocksteinGroup::Q);
        }

        let torsion_primes: BTreeSet<Prime> = self
            .atoms
            .iter()
            .filter_map(|a| match *a {
                GroupAtom::ZmodPk(p, _) | GroupAtom::ZpInf(p) => Some(p),
                _ => None,
            })
            .collect();
        for p in torsion_primes {
            let divisible = !self.atoms.iter().any(|a| matches!(*a, GroupAtom::ZmodPk(q, _) if q == p));
            fields.insert(if divisible {
                BocksteinGroup::ZpInfinity(p)
            } else {
                BocksteinGroup::Zp(p)
            });
        }

        SigmaSet::from_parts(fields, localized)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<_> = self.atoms.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for GroupExpr {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group(s)
    }
}

impl Serialize for GroupExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `σ(G)`: finitely many basis members plus possibly the family
/// `ℤ_{(p)}` for all primes outside a finite set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SigmaSet {
    members: BTreeSet<BocksteinGroup>,
    localized_cofinite: Option<BTreeSet<Prime>>,
}

impl SigmaSet {
    fn from_parts(mut members: BTreeSet<BocksteinGroup>, localized: PrimeSet) -> Self {
        let localized_cofinite = match localized {
            PrimeSet::Finite(ps) => {
                members.extend(ps.into_iter().map(BocksteinGroup::ZLocalized));
                None
            }
            PrimeSet::AllExcept(ps) => Some(ps),
        };
        SigmaSet {
            members,
            localized_cofinite,
        }
    }

    /// The explicitly listed members.
    pub fn members(&self) -> &BTreeSet<BocksteinGroup> {
        &self.members
    }

    /// `Some(S)` when `σ(G)` contains `ℤ_{(p)}` for every `p ∉ S`.
    pub fn localized_cofinite(&self) -> Option<&BTreeSet<Prime>> {
        self.localized_cofinite.as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty() && self.localized_cofinite.is_none()
    }

    pub fn contains(&self, g: BocksteinGroup) -> bool {
        match (g, &self.localized_cofinite) {
            (BocksteinGroup::ZLocalized(p), Some(except)) if !except.contains(&p) => true,
            _ => self.members.contains(&g),
        }
    }

    /// `sup { D(H) : H ∈ σ(G) }`, computed from the finite support of `D`.
    pub fn sup(&self, d: &DimensionType) -> ExtNat {
        let mut best = self.members.iter().map(|&g| d.evaluate(g)).max().unwrap_or(ExtNat::ZERO);
        if let Some(except) = &self.localized_cofinite {
            // Infinitely many primes lie outside both `except` and the exception map.
            best = best.max(d.default_local_values().z_localized);
            for &p in d.exceptions().keys().filter(|p| !except.contains(p)) {
                best = best.max(d.local_values(p).z_localized);
            }
        }
        best
    }
}

impl fmt::Display for SigmaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.members.iter().map(|g| g.to_string()).collect();
        match &self.localized_cofinite {
            Some(s) if s.is_empty() => parts.push("Z_(p) for all p".into()),
            Some(s) => parts.push(format!("Z_(p) for all p not in {{{}}}", join(s))),
            None => {}
        }
        if parts.is_empty() {
            f.write_str("empty")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

impl Serialize for SigmaSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            members: &'a BTreeSet<BocksteinGroup>,
            localized_all_primes_except: &'a Option<BTreeSet<Prime>>,
        }
        Repr {
            members: &self.members,
            localized_all_primes_except: &self.localized_cofinite,
        }
        .serialize(serializer)
    }
}

/// `dim_G` of a dimension type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimG {
    pub value: ExtNat,
    /// Set for the zero group, where the value 0 is a convention.
    pub degenerate: bool,
}

/// `dim_G D = sup { D(H) : H ∈ σ(G) }`.
pub fn dim_g(d: &DimensionType, g: &GroupExpr) -> DimG {
    DimG {
        value: g.sigma().sup(d),
        degenerate: g.is_zero(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("at position {pos}: {value} is not prime")]
    NotPrime { pos: usize, value: u64 },
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), GroupError> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{lit}'")))
        }
    }

    fn error(&self, msg: String) -> GroupError {
        GroupError::Syntax { pos: self.pos, msg }
    }

    fn number(&mut self) -> Result<u64, GroupError> {
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected a number".into()));
        }
        let digits = &self.src[start..start + len];
        if len > 1 && digits.starts_with('0') {
            return Err(self.error(format!("leading zero in '{digits}'")));
        }
        self.pos += len;
        digits.parse().map_err(|_| GroupError::Syntax {
            pos: start,
            msg: format!("number '{digits}' out of range"),
        })
    }

    fn prime(&mut self) -> Result<Prime, GroupError> {
        let start = self.pos;
        let p = self.number()?;
        if is_prime(p) {
            Ok(p)
        } else {
            Err(GroupError::NotPrime { pos: start, value: p })
        }
    }

    /// `None` for the zero atom.
    fn atom(&mut self) -> Result<Option<GroupAtom>, GroupError> {
        if self.eat("0") {
            return Ok(None);
        }
        if self.eat("Q") {
            return Ok(Some(GroupAtom::Q));
        }
        if !self.eat("Z") {
            return Err(self.error("expected an atom".into()));
        }
        let atom = if self.eat("/") {
            let p = self.prime()?;
            let k = if self.eat("^") {
                let at = self.pos;
                match self.number()? {
                    0 => return Err(GroupError::Syntax { pos: at, msg: "exponent must be at least 1".into() }),
                    k => u32::try_from(k).map_err(|_| GroupError::Syntax { pos: at, msg: "exponent out of range".into() })?,
                }
            } else {
                1
            };
            GroupAtom::ZmodPk(p, k)
        } else if self.eat("_(") {
            let p = self.prime()?;
            self.expect(")")?;
            GroupAtom::ZLoc(p)
        } else if self.eat("[1/") {
            let p = self.prime()?;
            self.expect("]")?;
            GroupAtom::ZInvP(p)
        } else if self.eat("(") {
            let p = self.prime()?;
            self.expect("inf)")?;
            GroupAtom::ZpInf(p)
        } else {
            GroupAtom::Z
        };
        Ok(Some(atom))
    }
}

/// Parses `atom ("+" atom)*` with atoms
/// `Z | Q | Z/<p>^<k> | Z/<p> | Z(<p>inf) | Z_(<p>) | Z[1/<p>] | 0`.
pub fn parse_group(s: &str) -> Result<GroupExpr, GroupError> {
    let mut parser = Parser { src: s, pos: 0 };
    let mut atoms = Vec::new();
    loop {
        parser.skip_ws();
        atoms.extend(parser.atom()?);
        parser.skip_ws();
        if parser.rest().is_empty() {
            break;
        }
        parser.expect("+")?;
    }
    Ok(GroupExpr::new(atoms))
}
