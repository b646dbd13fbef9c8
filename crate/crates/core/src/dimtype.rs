//! Dimension types.
//!
//! A dimension type is a function `D: σ → ℕ ∪ {∞}` on the Bockstein basis
//! `σ = {ℚ, ℤ_p, ℤ_{p^∞}, ℤ_{(p)}}` that is `p`-regular or `p^±`-singular at
//! every prime. It is stored as its rational value `q = D(ℚ)` together with a
//! decorated value at every prime; since every type of interest is constant
//! on all but finitely many primes, the primes are represented by a default
//! decorated value plus a finite exception map.
//!
//! The four values at a prime `p` are recovered from the stored `(n, ε)`:
//!
//! | group       | regular | `p⁺`-singular      | `p⁻`-singular    |
//! |-------------|---------|--------------------|------------------|
//! | `ℤ_p`       | `n`     | `n`                | `n`              |
//! | `ℤ_{p^∞}`   | `n`     | `n`                | `n - 1`          |
//! | `ℤ_{(p)}`   | `n = q` | `max(q, n + 1)`    | `max(q, n)`      |

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::decorated::{
    parse_decorated, parse_natural, sign_product, DecoratedError, DecoratedValue, Decoration, ExtNat,
    SignProduct,
};

pub type Prime = u64;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A member of the Bockstein basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BocksteinGroup {
    /// `ℚ`
    Q,
    /// `ℤ/p`
    Zp(Prime),
    /// `ℤ_{p^∞}`
    ZpInfinity(Prime),
    /// `ℤ_{(p)}`
    ZLocalized(Prime),
}

impl BocksteinGroup {
    pub fn prime(self) -> Option<Prime> {
        match self {
            BocksteinGroup::Q => None,
            BocksteinGroup::Zp(p) | BocksteinGroup::ZpInfinity(p) | BocksteinGroup::ZLocalized(p) => Some(p),
        }
    }

    /// `ℚ` and `ℤ/p` are the fields of the basis.
    pub fn is_field(self) -> bool {
        matches!(self, BocksteinGroup::Q | BocksteinGroup::Zp(_))
    }

    pub fn is_valid(self) -> bool {
        self.prime().map_or(true, is_prime)
    }

    /// The basis members at the given primes, in canonical order.
    pub fn restricted_basis(primes: &[Prime]) -> Vec<BocksteinGroup> {
        let mut out = vec![BocksteinGroup::Q];
        for &p in primes {
            out.extend([
                BocksteinGroup::Zp(p),
                BocksteinGroup::ZpInfinity(p),
                BocksteinGroup::ZLocalized(p),
            ]);
        }
        out
    }
}

impl fmt::Display for BocksteinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BocksteinGroup::Q => f.write_str("Q"),
            BocksteinGroup::Zp(p) => write!(f, "Z/{p}"),
            BocksteinGroup::ZpInfinity(p) => write!(f, "Z({p}inf)"),
            BocksteinGroup::ZLocalized(p) => write!(f, "Z_({p})"),
        }
    }
}

impl Serialize for BocksteinGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A set of primes that is either finite or cofinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrimeSet {
    Finite(BTreeSet<Prime>),
    AllExcept(BTreeSet<Prime>),
}

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet::Finite(BTreeSet::new())
    }

    pub fn all() -> Self {
        PrimeSet::AllExcept(BTreeSet::new())
    }

    pub fn only(p: Prime) -> Self {
        PrimeSet::Finite(BTreeSet::from([p]))
    }

    pub fn all_except(p: Prime) -> Self {
        PrimeSet::AllExcept(BTreeSet::from([p]))
    }

    pub fn contains(&self, p: Prime) -> bool {
        match self {
            PrimeSet::Finite(s) => s.contains(&p),
            PrimeSet::AllExcept(s) => !s.contains(&p),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSet::Finite(s) if s.is_empty())
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        use PrimeSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a | b),
            (AllExcept(a), AllExcept(b)) => AllExcept(a & b),
            (AllExcept(a), Finite(b)) | (Finite(b), AllExcept(a)) => AllExcept(a - b),
        }
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSet::Finite(s) => write!(f, "{{{}}}", join(s)),
            PrimeSet::AllExcept(s) if s.is_empty() => f.write_str("all primes"),
            PrimeSet::AllExcept(s) => write!(f, "all primes except {{{}}}", join(s)),
        }
    }
}

impl Serialize for PrimeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(tag = "kind", rename_all = "snake_case")]
        enum Repr<'a> {
            Finite { primes: &'a BTreeSet<Prime> },
            Cofinite { except: &'a BTreeSet<Prime> },
        }
        match self {
            PrimeSet::Finite(s) => Repr::Finite { primes: s },
            PrimeSet::AllExcept(s) => Repr::Cofinite { except: s },
        }
        .serialize(serializer)
    }
}

pub(crate) fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// `p`-singularity class at a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Singularity {
    Regular,
    PlusSingular,
    MinusSingular,
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Singularity::Regular => "regular",
            Singularity::PlusSingular => "plus-singular",
            Singularity::MinusSingular => "minus-singular",
        })
    }
}

/// The values `(ℤ_p, ℤ_{p^∞}, ℤ_{(p)})` a dimension type takes at one prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalValues {
    pub zp: ExtNat,
    pub zp_infinity: ExtNat,
    pub z_localized: ExtNat,
}

impl LocalValues {
    fn of(q: ExtNat, dv: DecoratedValue) -> LocalValues {
        let n = dv.value();
        match dv.decoration() {
            Decoration::Plain => LocalValues {
                zp: n,
                zp_infinity: n,
                z_localized: q,
            },
            Decoration::Plus => LocalValues {
                zp: n,
                zp_infinity: n,
                z_localized: q.max(n.succ()),
            },
            Decoration::Minus => LocalValues {
                zp: n,
                zp_infinity: n.pred(),
                z_localized: q.max(n),
            },
        }
    }

    fn max(self) -> ExtNat {
        self.zp.max(self.zp_infinity).max(self.z_localized)
    }
}

/// Which rule a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `∞` carries a decoration.
    DecoratedInfinity,
    /// A decorated value with base 0.
    DecoratedZero,
    /// An undecorated (regular) value differs from `q`.
    RegularityCoupling,
    /// An exception key is not prime.
    NonPrimeKey,
    /// Some derived value is 0 although the type is not identically 0.
    ZeroRule,
}

impl Rule {
    pub fn is_formal(self) -> bool {
        !matches!(self, Rule::ZeroRule)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::DecoratedInfinity => "infinity carries no decoration",
            Rule::DecoratedZero => "decorated values need base at least 1",
            Rule::RegularityCoupling => "regular value must equal q",
            Rule::NonPrimeKey => "exception key must be prime",
            Rule::ZeroRule => "derived value 0 on a nonzero type",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub location: String,
    pub rule: Rule,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub formal: bool,
    pub realizable: bool,
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "formal: {}", self.formal)?;
        write!(f, "realizable: {}", self.realizable)?;
        for v in &self.violations {
            write!(f, "\nviolation at {}: {} ({})", v.location, v.rule, v.detail)?;
        }
        Ok(())
    }
}

/// Unchecked components of a dimension type, as read from input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionTypeParts {
    pub q: ExtNat,
    pub default: (ExtNat, Decoration),
    pub exceptions: BTreeMap<Prime, (ExtNat, Decoration)>,
}

impl DimensionTypeParts {
    pub fn uniform(q: ExtNat, default: (ExtNat, Decoration)) -> Self {
        DimensionTypeParts {
            q,
            default,
            exceptions: BTreeMap::new(),
        }
    }
}

/// Checks the formal rules and the zero-rule realizability condition.
pub fn validate(parts: &DimensionTypeParts) -> ValidityReport {
    let mut violations = Vec::new();
    let mut check = |location: String, (value, dec): (ExtNat, Decoration)| {
        if let Err(e) = DecoratedValue::new(value, dec) {
            let rule = match e {
                DecoratedError::DecoratedInfinity => Rule::DecoratedInfinity,
                _ => Rule::DecoratedZero,
            };
            violations.push(Violation {
                location,
                rule,
                detail: e.to_string(),
            });
        } else if dec == Decoration::Plain && value != parts.q {
            violations.push(Violation {
                location,
                rule: Rule::RegularityCoupling,
                detail: format!("regular value {value} but q={}", parts.q),
            });
        }
    };
    check("all".into(), parts.default);
    for (&p, &v) in &parts.exceptions {
        check(format!("p{p}"), v);
    }
    for &p in parts.exceptions.keys() {
        if !is_prime(p) {
            violations.push(Violation {
                location: format!("p{p}"),
                rule: Rule::NonPrimeKey,
                detail: format!("{p} is not prime"),
            });
        }
    }
    let formal = violations.is_empty();
    if formal {
        let d = DimensionType::from_valid_parts(parts);
        violations.extend(d.zero_rule_violations());
    }
    let realizable = formal && violations.is_empty();
    ValidityReport {
        formal,
        realizable,
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimTypeError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid dimension type at {location}: {rule} ({detail})")]
    Invalid {
        location: String,
        rule: Rule,
        detail: String,
    },
    #[error("B_n is defined for n >= 2, got {0}")]
    BoltyanskiiIndex(u64),
    #[error("operation requires finite dimension")]
    InfiniteDimension,
    #[error("operation requires dimension at least 1")]
    ZeroDimension,
}

impl From<DecoratedError> for DimTypeError {
    fn from(e: DecoratedError) -> Self {
        match e {
            DecoratedError::Syntax { pos, msg } => DimTypeError::Syntax { pos, msg },
            DecoratedError::DecoratedInfinity => DimTypeError::Invalid {
                location: "value".into(),
                rule: Rule::DecoratedInfinity,
                detail: e.to_string(),
            },
            DecoratedError::DecoratedZero(_) => DimTypeError::Invalid {
                location: "value".into(),
                rule: Rule::DecoratedZero,
                detail: e.to_string(),
            },
        }
    }
}

/// Boltyanskii / standard classification of a finite-dimensional type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Boltyanskii,
    Standard,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Boltyanskii => "boltyanskii",
            Classification::Standard => "standard",
        })
    }
}

/// A formally valid dimension type in canonical finite-support form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimensionType {
    q: ExtNat,
    default: DecoratedValue,
    exceptions: BTreeMap<Prime, DecoratedValue>,
}

impl DimensionType {
    /// Builds a type, rejecting formal violations and dropping exceptions
    /// equal to the default.
    pub fn new(
        q: ExtNat,
        default: DecoratedValue,
        exceptions: impl IntoIterator<Item = (Prime, DecoratedValue)>,
    ) -> Result<Self, DimTypeError> {
        let parts = DimensionTypeParts {
            q,
            default: (default.value(), default.decoration()),
            exceptions: exceptions
                .into_iter()
                .map(|(p, v)| (p, (v.value(), v.decoration())))
                .collect(),
        };
        Self::try_from(&parts)
    }

    /// A type with the same decorated value at every prime.
    pub fn uniform(q: impl Into<ExtNat>, default: DecoratedValue) -> Result<Self, DimTypeError> {
        Self::new(q.into(), default, [])
    }

    /// The type sending every group to `n`.
    pub fn constant(n: impl Into<ExtNat>) -> Self {
        let n = n.into();
        let default = match n {
            ExtNat::Finite(k) => DecoratedValue::plain(k),
            ExtNat::Infinite => DecoratedValue::INFINITE,
        };
        DimensionType {
            q: n,
            default,
            exceptions: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(0)
    }

    /// `B_n`: `q = n - 1` and `(n-1)⁺` at every prime.
    pub fn boltyanskii(n: u64) -> Result<Self, DimTypeError> {
        if n < 2 {
            return Err(DimTypeError::BoltyanskiiIndex(n));
        }
        Self::uniform(n - 1, DecoratedValue::plus(n - 1))
    }

    fn from_valid_parts(parts: &DimensionTypeParts) -> Self {
        let default = DecoratedValue::new(parts.default.0, parts.default.1).expect("validated");
        let exceptions = parts
            .exceptions
            .iter()
            .map(|(&p, &(v, d))| (p, DecoratedValue::new(v, d).expect("validated")))
            .filter(|&(_, v)| v != default)
            .collect();
        DimensionType {
            q: parts.q,
            default,
            exceptions,
        }
    }

    pub fn parts(&self) -> DimensionTypeParts {
        DimensionTypeParts {
            q: self.q,
            default: (self.default.value(), self.default.decoration()),
            exceptions: self
                .exceptions
                .iter()
                .map(|(&p, v)| (p, (v.value(), v.decoration())))
                .collect(),
        }
    }

    pub fn q(&self) -> ExtNat {
        self.q
    }

    pub fn default_value(&self) -> DecoratedValue {
        self.default
    }

    pub fn exceptions(&self) -> &BTreeMap<Prime, DecoratedValue> {
        &self.exceptions
    }

    pub fn is_uniform(&self) -> bool {
        self.exceptions.is_empty()
    }

    /// The decorated value `D(p)`.
    pub fn at(&self, p: Prime) -> DecoratedValue {
        self.exceptions.get(&p).copied().unwrap_or(self.default)
    }

    pub fn local_values(&self, p: Prime) -> LocalValues {
        LocalValues::of(self.q, self.at(p))
    }

    /// The local values at primes that are not exceptions.
    pub fn default_local_values(&self) -> LocalValues {
        LocalValues::of(self.q, self.default)
    }

    /// `D(G)` for a Bockstein basis member `G`.
    pub fn evaluate(&self, group: BocksteinGroup) -> ExtNat {
        match group {
            BocksteinGroup::Q => self.q,
            BocksteinGroup::Zp(p) => self.local_values(p).zp,
            BocksteinGroup::ZpInfinity(p) => self.local_values(p).zp_infinity,
            BocksteinGroup::ZLocalized(p) => self.local_values(p).z_localized,
        }
    }

    fn stored_values(&self) -> impl Iterator<Item = DecoratedValue> + '_ {
        std::iter::once(self.default).chain(self.exceptions.values().copied())
    }

    /// `sup { D(G) : G ∈ σ }`.
    pub fn dim(&self) -> ExtNat {
        self.stored_values()
            .map(|v| LocalValues::of(self.q, v).max())
            .fold(self.q, ExtNat::max)
    }

    fn finite_dim(&self) -> Result<u64, DimTypeError> {
        self.dim().finite().ok_or(DimTypeError::InfiniteDimension)
    }

    fn primes_of_either<'a>(&'a self, other: &'a DimensionType) -> BTreeSet<Prime> {
        self.exceptions.keys().chain(other.exceptions.keys()).copied().collect()
    }

    /// The pointwise order: `q ≤ q'` and `D(p) ≤ D'(p)` at every prime.
    pub fn leq(&self, other: &DimensionType) -> bool {
        self.q <= other.q
            && self.default <= other.default
            && self.primes_of_either(other).into_iter().all(|p| self.at(p) <= other.at(p))
    }

    /// Applies `f` at `q`, at the defaults, and at the union of exception primes.
    fn combine(
        &self,
        other: &DimensionType,
        q: ExtNat,
        f: impl Fn(DecoratedValue, DecoratedValue) -> DecoratedValue,
    ) -> DimensionType {
        let default = f(self.default, other.default);
        let exceptions = self
            .primes_of_either(other)
            .into_iter()
            .map(|p| (p, f(self.at(p), other.at(p))))
            .filter(|&(_, v)| v != default)
            .collect();
        DimensionType { q, default, exceptions }
    }

    fn map_values(&self, q: ExtNat, f: impl Fn(DecoratedValue) -> DecoratedValue) -> DimensionType {
        DimensionType {
            q,
            default: f(self.default),
            exceptions: self.exceptions.iter().map(|(&p, &v)| (p, f(v))).collect(),
        }
    }

    /// `D*`: exchanges `+` and `-` at every prime.
    pub fn star(&self) -> DimensionType {
        self.map_values(self.q, DecoratedValue::dual)
    }

    /// `D₁ ⊞ D₂`, the dimension type of a product.
    pub fn boxplus(&self, other: &DimensionType) -> DimensionType {
        self.boxplus_with(other, sign_product)
    }

    /// [`boxplus`](Self::boxplus) under an explicit sign rule.
    pub fn boxplus_with(&self, other: &DimensionType, sign: SignProduct) -> DimensionType {
        self.combine(other, self.q + other.q, |a, b| a.box_add_with(b, sign))
    }

    /// `D₁ ⊕ D₂ = (D₁* ⊞ D₂*)*`.
    pub fn oplus(&self, other: &DimensionType) -> DimensionType {
        self.oplus_with(other, sign_product)
    }

    pub fn oplus_with(&self, other: &DimensionType, sign: SignProduct) -> DimensionType {
        self.star().boxplus_with(&other.star(), sign).star()
    }

    /// `D + k`, the pointwise sum with the constant type `k`.
    pub fn add_const(&self, k: u64) -> DimensionType {
        self.map_values(self.q + k, |v| v.shift(k))
    }

    pub fn singularity(&self, p: Prime) -> Singularity {
        match self.at(p).decoration() {
            Decoration::Plain => Singularity::Regular,
            Decoration::Plus => Singularity::PlusSingular,
            Decoration::Minus => Singularity::MinusSingular,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == DimensionType::zero()
    }

    fn zero_rule_violations(&self) -> Vec<Violation> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut out = Vec::new();
        if self.q == 0 {
            out.push(Violation {
                location: "q".into(),
                rule: Rule::ZeroRule,
                detail: "Q-value is 0".into(),
            });
        }
        let located = std::iter::once(("all".to_string(), self.default))
            .chain(self.exceptions.iter().map(|(p, &v)| (format!("p{p}"), v)));
        for (location, v) in located {
            let lv = LocalValues::of(self.q, v);
            for (name, x) in [("Z/p", lv.zp), ("Z(pinf)", lv.zp_infinity), ("Z_(p)", lv.z_localized)] {
                if x == 0 {
                    out.push(Violation {
                        location: location.clone(),
                        rule: Rule::ZeroRule,
                        detail: format!("{name}-value is 0 for stored value {v}"),
                    });
                }
            }
        }
        out
    }

    /// Formal validity (always true for a constructed value) and realizability.
    pub fn validity(&self) -> ValidityReport {
        let violations = self.zero_rule_violations();
        ValidityReport {
            formal: true,
            realizable: violations.is_empty(),
            violations,
        }
    }

    /// The zero type, or every derived value at least 1.
    pub fn is_realizable(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        self.q >= ExtNat::Finite(1)
            && self
                .stored_values()
                .all(|v| !(v.decoration() == Decoration::Minus && v.value() == 1) && v.value() >= ExtNat::Finite(1))
    }

    /// Largest value on a field: `max(q, D(p))` over all primes.
    fn max_field_value(&self) -> ExtNat {
        self.stored_values().map(DecoratedValue::value).fold(self.q, ExtNat::max)
    }

    /// `dim D ≥ 1` and `D(F) < dim D` for every field `F`.
    pub fn is_boltyanskii(&self) -> Result<bool, DimTypeError> {
        let n = self.finite_dim()?;
        Ok(n >= 1 && self.max_field_value() < ExtNat::Finite(n))
    }

    /// Some field attains the dimension; the zero type is standard.
    pub fn is_standard(&self) -> Result<bool, DimTypeError> {
        self.is_boltyanskii().map(|b| !b)
    }

    pub fn classify(&self) -> Result<Classification, DimTypeError> {
        Ok(if self.is_boltyanskii()? {
            Classification::Boltyanskii
        } else {
            Classification::Standard
        })
    }

    /// The primes `p` with `D(ℤ_{(p)}) = dim D`.
    pub fn critical_primes(&self) -> Result<PrimeSet, DimTypeError> {
        let n = self.finite_dim()?;
        if n == 0 {
            return Err(DimTypeError::ZeroDimension);
        }
        let n = ExtNat::Finite(n);
        let attains = |v: DecoratedValue| LocalValues::of(self.q, v).z_localized == n;
        let flagged = |want: bool| {
            self.exceptions
                .iter()
                .filter(|&(_, &v)| attains(v) == want)
                .map(|(&p, _)| p)
                .collect::<BTreeSet<_>>()
        };
        Ok(if attains(self.default) {
            PrimeSet::AllExcept(flagged(false))
        } else {
            PrimeSet::Finite(flagged(true))
        })
    }

    /// An order-compatible key for deterministic sorting.
    pub fn sort_key(&self) -> (ExtNat, DecoratedValue, Vec<(Prime, DecoratedValue)>) {
        (
            self.q,
            self.default,
            self.exceptions.iter().map(|(&p, &v)| (p, v)).collect(),
        )
    }
}

impl TryFrom<&DimensionTypeParts> for DimensionType {
    type Error = DimTypeError;

    fn try_from(parts: &DimensionTypeParts) -> Result<Self, Self::Error> {
        let report = validate(parts);
        if let Some(v) = report.violations.into_iter().find(|v| v.rule.is_formal()) {
            return Err(DimTypeError::Invalid {
                location: v.location,
                rule: v.rule,
                detail: v.detail,
            });
        }
        Ok(Self::from_valid_parts(parts))
    }
}

impl PartialOrd for DimensionType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.leq(other), other.leq(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for DimensionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={}", self.q)?;
        if self.default.decoration() != Decoration::Plain {
            write!(f, " all={}", self.default)?;
        }
        for (p, v) in &self.exceptions {
            write!(f, " p{p}={v}")?;
        }
        Ok(())
    }
}

impl FromStr for DimensionType {
    type Err = DimTypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_dimtype(s)
    }
}

impl Serialize for DimensionType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DimensionType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Splits on ASCII whitespace, keeping byte offsets.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.split(|c: char| c.is_ascii_whitespace())
        .scan(0usize, |offset, tok| {
            let start = *offset;
            *offset += tok.len() + 1;
            Some((start, tok))
        })
        .filter(|(_, tok)| !tok.is_empty())
}

/// Parses the literal `q=<n|inf> [all=<dv>] [p<prime>=<dv>]*`.
///
/// An omitted `all` means the regular default `q`.
pub fn parse_dimtype(s: &str) -> Result<DimensionType, DimTypeError> {
    let syntax = |pos: usize, msg: String| DimTypeError::Syntax { pos, msg };
    let mut toks = tokens(s).peekable();

    let (pos, tok) = toks.next().ok_or_else(|| syntax(0, "expected 'q=<n|inf>'".into()))?;
    let rest = tok
        .strip_prefix("q=")
        .ok_or_else(|| syntax(pos, format!("expected 'q=' but found '{tok}'")))?;
    let q = if rest == "inf" {
        ExtNat::Infinite
    } else {
        ExtNat::Finite(parse_natural(rest, pos + 2)?)
    };

    let mut default = match q {
        ExtNat::Finite(n) => (ExtNat::Finite(n), Decoration::Plain),
        ExtNat::Infinite => (ExtNat::Infinite, Decoration::Plain),
    };
    if let Some(&(pos, tok)) = toks.peek() {
        if let Some(rest) = tok.strip_prefix("all=") {
            let v = parse_decorated(rest, pos + 4)?;
            default = (v.value(), v.decoration());
            toks.next();
        }
    }

    let mut exceptions = BTreeMap::new();
    for (pos, tok) in toks {
        let body = tok
            .strip_prefix('p')
            .ok_or_else(|| syntax(pos, format!("expected 'p<prime>=<value>' but found '{tok}'")))?;
        let (prime, value) = body
            .split_once('=')
            .ok_or_else(|| syntax(pos, format!("missing '=' in '{tok}'")))?;
        let p = parse_natural(prime, pos + 1)?;
        if !is_prime(p) {
            return Err(DimTypeError::Invalid {
                location: format!("p{p}"),
                rule: Rule::NonPrimeKey,
                detail: format!("{p} is not prime"),
            });
        }
        let v = parse_decorated(value, pos + 2 + prime.len())?;
        if exceptions.insert(p, (v.value(), v.decoration())).is_some() {
            return Err(syntax(pos, format!("prime {p} given twice")));
        }
    }
    DimensionType::try_from(&DimensionTypeParts { q, default, exceptions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use BocksteinGroup::*;

    fn d(s: &str) -> DimensionType {
        s.parse().unwrap()
    }

    fn raw(q: u64, v: u64, dec: Decoration) -> DimensionTypeParts {
        DimensionTypeParts::uniform(ExtNat::Finite(q), (ExtNat::Finite(v), dec))
    }

    #[test]
    fn validate_examples() {
        let r = validate(&raw(1, 2, Decoration::Minus));
        assert!(r.formal && r.realizable);
        let r = validate(&raw(0, 0, Decoration::Plain));
        assert!(r.formal && r.realizable);
        let r = validate(&raw(1, 1, Decoration::Minus));
        assert!(r.formal && !r.realizable);
        assert_eq!(r.violations[0].rule, Rule::ZeroRule);
        assert!(r.violations[0].detail.starts_with("Z(pinf)"));
    }

    #[test]
    fn validate_formal_rules() {
        let r = validate(&raw(1, 2, Decoration::Plain));
        assert!(!r.formal && !r.realizable);
        assert_eq!(r.violations[0].rule, Rule::RegularityCoupling);
        let r = validate(&raw(1, 0, Decoration::Plus));
        assert_eq!(r.violations[0].rule, Rule::DecoratedZero);
        let r = validate(&DimensionTypeParts::uniform(
            ExtNat::Infinite,
            (ExtNat::Infinite, Decoration::Plus),
        ));
        assert_eq!(r.violations[0].rule, Rule::DecoratedInfinity);
        let mut parts = raw(1, 2, Decoration::Minus);
        parts.exceptions.insert(4, (ExtNat::Finite(2), Decoration::Plus));
        let r = validate(&parts);
        assert_eq!(r.violations[0].rule, Rule::NonPrimeKey);
        assert!(DimensionType::try_from(&parts).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let w = d("q=1 all=2-");
        assert_eq!(w.evaluate(Zp(5)), 2);
        assert_eq!(w.evaluate(ZpInfinity(5)), 1);
        assert_eq!(w.evaluate(ZLocalized(5)), 2);
        assert_eq!(w.evaluate(Q), 1);
        let b5 = DimensionType::boltyanskii(5).unwrap();
        assert_eq!(b5.evaluate(ZLocalized(3)), 5);
        assert_eq!(b5.evaluate(Zp(3)), 4);
    }

    #[test]
    fn dim_examples() {
        for n in 2..10 {
            assert_eq!(DimensionType::boltyanskii(n).unwrap().dim(), n);
        }
        assert_eq!(DimensionType::zero().dim(), 0);
        assert_eq!(d("q=2 all=3+").dim(), 4);
        assert_eq!(d("q=inf all=3+").dim(), ExtNat::Infinite);
        assert!(parse_dimtype("q=2 p3=inf").is_err());
        assert_eq!(d("q=inf p3=3+").dim(), ExtNat::Infinite);
    }

    #[test]
    fn leq_examples() {
        let b4 = DimensionType::boltyanskii(4).unwrap();
        let b5 = DimensionType::boltyanskii(5).unwrap();
        assert!(b4.leq(&b5));
        assert!(!b5.leq(&b4));
        assert!(b5.leq(&b5));
        assert!(d("q=1 all=2-").leq(&d("q=2")));
        assert!(d("q=1 all=2- p3=1+").leq(&d("q=2 p5=3+")));
        assert!(!d("q=1 all=2- p3=3+").leq(&d("q=2")));
        assert_eq!(b4.partial_cmp(&b5), Some(Ordering::Less));
        assert_eq!(d("q=3").partial_cmp(&d("q=1 all=4-")), None);
    }

    #[test]
    fn star_examples() {
        assert_eq!(d("q=1 all=2-").star(), d("q=1 all=2+"));
        let b = DimensionType::boltyanskii(6).unwrap();
        assert_eq!(b.star(), d("q=5 all=5-"));
        assert_eq!(b.star().star(), b);
    }

    #[test]
    fn boxplus_examples() {
        assert_eq!(d("q=1 all=2-").boxplus(&d("q=2 all=1+")), d("q=3 all=3-"));
        assert_eq!(d("q=1 all=2- p3=1+").boxplus(&DimensionType::zero()), d("q=1 all=2- p3=1+"));
        assert_eq!(
            d("q=1 all=2-").boxplus(&d("q=2 all=1+ p3=2+")),
            d("q=3 all=3- p3=4-")
        );
    }

    #[test]
    fn oplus_examples() {
        let b4 = DimensionType::boltyanskii(4).unwrap();
        assert_eq!(d("q=1 all=2-").oplus(&d("q=2 all=1+")), b4);
        assert_eq!(d("q=1 all=2-").oplus(&DimensionType::zero()), d("q=1 all=2-"));
        assert_eq!(d("q=1 all=2-").oplus(&d("q=3 all=2+")), d("q=4 all=4+"));
    }

    #[test]
    fn combine_drops_exceptions_equal_to_default() {
        // 2- ⊞ 1+ = 3- at the default; at p3 the exception 1- gives 3- as well.
        assert_eq!(d("q=1 all=2-").boxplus(&d("q=2 all=1+ p3=1-")), d("q=3 all=3-"));
        assert_eq!(d("q=1 all=2- p3=2-"), d("q=1 all=2-"));
    }

    #[test]
    fn add_const_examples() {
        assert_eq!(d("q=2 all=1+").add_const(1), d("q=3 all=2+"));
        let x = d("q=1 all=2- p7=4+");
        assert_eq!(x.add_const(0), x);
        for k in 0..5 {
            assert_eq!(x.add_const(k).dim(), x.dim() + k);
        }
        assert_eq!(d("q=inf all=2-").add_const(3), d("q=inf all=5-"));
    }

    #[test]
    fn singularity_examples() {
        assert_eq!(DimensionType::boltyanskii(5).unwrap().singularity(11), Singularity::PlusSingular);
        assert_eq!(d("q=3").singularity(2), Singularity::Regular);
        assert_eq!(d("q=1 all=2-").singularity(7), Singularity::MinusSingular);
        assert_eq!(d("q=1 all=2- p3=1").singularity(3), Singularity::Regular);
    }

    #[test]
    fn boltyanskii_examples() {
        assert_eq!(DimensionType::boltyanskii(5).unwrap(), d("q=4 all=4+"));
        assert_eq!(DimensionType::boltyanskii(2).unwrap().dim(), 2);
        assert_eq!(DimensionType::boltyanskii(1), Err(DimTypeError::BoltyanskiiIndex(1)));
        assert_eq!(DimensionType::boltyanskii(0), Err(DimTypeError::BoltyanskiiIndex(0)));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(DimensionType::boltyanskii(5).unwrap().classify(), Ok(Classification::Boltyanskii));
        assert_eq!(d("q=3").classify(), Ok(Classification::Standard));
        assert_eq!(DimensionType::zero().is_standard(), Ok(true));
        assert_eq!(d("q=1 all=2-").classify(), Ok(Classification::Standard));
        assert_eq!(d("q=inf all=2-").classify(), Err(DimTypeError::InfiniteDimension));
        // Boltyanskii only at the prime that attains dim.
        assert_eq!(d("q=2 all=2- p3=3+").classify(), Ok(Classification::Boltyanskii));
    }

    #[test]
    fn critical_prime_examples() {
        assert_eq!(DimensionType::boltyanskii(5).unwrap().critical_primes(), Ok(PrimeSet::all()));
        assert_eq!(d("q=2 p3=3+").critical_primes(), Ok(PrimeSet::only(3)));
        assert_eq!(d("q=3").critical_primes(), Ok(PrimeSet::all()));
        assert_eq!(d("q=1 all=2+ p5=1+").critical_primes(), Ok(PrimeSet::all_except(5)));
        assert_eq!(DimensionType::zero().critical_primes(), Err(DimTypeError::ZeroDimension));
        assert_eq!(d("q=inf").critical_primes(), Err(DimTypeError::InfiniteDimension));
    }

    #[test]
    fn realizability() {
        assert!(DimensionType::zero().is_realizable());
        assert!(d("q=1 all=2-").is_realizable());
        assert!(!d("q=1 all=1-").is_realizable());
        assert!(!d("q=0 all=2+").is_realizable());
        assert!(!d("q=2 p3=1-").is_realizable());
        assert!(d("q=inf all=1+").is_realizable());
        for s in ["q=0", "q=1 all=1-", "q=0 all=2+", "q=3 all=1+ p2=1-", "q=2 p5=4-"] {
            let x = d(s);
            assert_eq!(x.is_realizable(), x.validity().realizable, "{s}");
            assert_eq!(x.is_realizable(), validate(&x.parts()).realizable, "{s}");
        }
    }

    #[test]
    fn literal_errors() {
        assert!(matches!(
            parse_dimtype("q=1 all=2"),
            Err(DimTypeError::Invalid { rule: Rule::RegularityCoupling, .. })
        ));
        assert_eq!(
            parse_dimtype("r=1"),
            Err(DimTypeError::Syntax {
                pos: 0,
                msg: "expected 'q=' but found 'r=1'".into()
            })
        );
        assert!(matches!(parse_dimtype("q=1 all=2x"), Err(DimTypeError::Syntax { pos: 9, .. })));
        assert!(matches!(parse_dimtype("q=1 p4=2+"), Err(DimTypeError::Invalid { rule: Rule::NonPrimeKey, .. })));
        assert!(matches!(parse_dimtype("q=1 p3=2+ p3=2-"), Err(DimTypeError::Syntax { pos: 10, .. })));
        assert!(matches!(parse_dimtype("q=1 p3=2+ all=2-"), Err(DimTypeError::Syntax { pos: 10, .. })));
        assert!(matches!(parse_dimtype(""), Err(DimTypeError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_dimtype("q=1 all=0+"), Err(DimTypeError::Invalid { rule: Rule::DecoratedZero, .. })));
    }

    #[test]
    fn literal_printing() {
        assert_eq!(DimensionType::zero().to_string(), "q=0");
        assert_eq!(DimensionType::boltyanskii(5).unwrap().to_string(), "q=4 all=4+");
        assert_eq!(d("q=2  p5=3+ p3=1-").to_string(), "q=2 p3=1- p5=3+");
        assert_eq!(d("q=1 all=2- p3=1").to_string(), "q=1 all=2- p3=1");
        assert_eq!(d("q=inf").to_string(), "q=inf");
    }

    #[test]
    fn prime_set_union() {
        let a = PrimeSet::all_except(3);
        let b = PrimeSet::only(3);
        assert_eq!(a.union(&b), PrimeSet::all());
        assert_eq!(PrimeSet::all_except(3).union(&PrimeSet::all_except(5)), PrimeSet::all());
        assert_eq!(PrimeSet::only(2).union(&PrimeSet::only(5)).to_string(), "{2, 5}");
        assert_eq!(PrimeSet::all_except(7).to_string(), "all primes except {7}");
    }
}
