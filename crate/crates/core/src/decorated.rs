//! Decorated extended naturals.
//!
//! A decorated value is a pair `(n, ε)` with `n ∈ ℕ ∪ {∞}` and `ε` one of
//! `-`, nothing, `+`. It is the per-prime datum of a dimension type: the base
//! records `dim_{ℤ_p}` and the decoration records the `p`-singularity class.
//!
//! Values are totally ordered by `… < n⁻ < n < n⁺ < (n+1)⁻ < …`, with `∞` on
//! top. The canonical integer encoding of that order is
//! `3n + offset(ε)` where `offset(-, none, +) = (-1, 0, +1)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// `ℕ ∪ {∞}` with `∞` absorbing under addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Infinite => None,
        }
    }

    /// Subtracts one, saturating at zero. `∞ - 1 = ∞`.
    pub fn pred(self) -> ExtNat {
        match self {
            ExtNat::Finite(n) => ExtNat::Finite(n.saturating_sub(1)),
            ExtNat::Infinite => ExtNat::Infinite,
        }
    }

    pub fn succ(self) -> ExtNat {
        self + ExtNat::Finite(1)
    }
}

impl Default for ExtNat {
    fn default() -> Self {
        ExtNat::ZERO
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Finite(n)
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => {
                a.checked_add(b).map_or(ExtNat::Infinite, ExtNat::Finite)
            }
            _ => ExtNat::Infinite,
        }
    }
}

impl Add<u64> for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: u64) -> ExtNat {
        self + ExtNat::Finite(rhs)
    }
}

impl PartialEq<u64> for ExtNat {
    fn eq(&self, other: &u64) -> bool {
        *self == ExtNat::Finite(*other)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = DecoratedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(ExtNat::Infinite);
        }
        parse_natural(s, 0).map(ExtNat::Finite)
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(n) => serializer.serialize_u64(*n),
            ExtNat::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// The decoration of a decorated value. Ordered `Minus < Plain < Plus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decoration {
    Minus,
    Plain,
    Plus,
}

/// A rule combining the decorations of two factors of a product.
pub type SignProduct = fn(Decoration, Decoration) -> Decoration;

impl Decoration {
    pub const ALL: [Decoration; 3] = [Decoration::Minus, Decoration::Plain, Decoration::Plus];

    /// The sign product `⊗`: plain is neutral, `ε ⊗ ε = ε`, and `+ ⊗ - = -`.
    pub fn product(self, other: Decoration) -> Decoration {
        use Decoration::*;
        match (self, other) {
            (Plain, e) | (e, Plain) => e,
            (Plus, Plus) => Plus,
            _ => Minus,
        }
    }

    /// Exchanges `+` and `-`.
    pub fn dual(self) -> Decoration {
        match self {
            Decoration::Minus => Decoration::Plus,
            Decoration::Plain => Decoration::Plain,
            Decoration::Plus => Decoration::Minus,
        }
    }

    fn offset(self) -> i8 {
        match self {
            Decoration::Minus => -1,
            Decoration::Plain => 0,
            Decoration::Plus => 1,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Decoration::Minus => "-",
            Decoration::Plain => "",
            Decoration::Plus => "+",
        }
    }
}

/// Free-function form of [`Decoration::product`], usable as a [`SignProduct`].
pub fn sign_product(a: Decoration, b: Decoration) -> Decoration {
    a.product(b)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecoratedError {
    #[error("at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("infinity carries no decoration")]
    DecoratedInfinity,
    #[error("decorated value {0} requires a base of at least 1")]
    DecoratedZero(String),
}

/// A value `n`, `n⁺` or `n⁻` over `ℕ ∪ {∞}`.
///
/// Construction enforces: `∞` is undecorated, and decorated values have base
/// at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedValue {
    value: ExtNat,
    dec: Decoration,
}

impl DecoratedValue {
    pub const ZERO: DecoratedValue = DecoratedValue {
        value: ExtNat::ZERO,
        dec: Decoration::Plain,
    };

    pub const INFINITE: DecoratedValue = DecoratedValue {
        value: ExtNat::Infinite,
        dec: Decoration::Plain,
    };

    pub fn new(value: ExtNat, dec: Decoration) -> Result<Self, DecoratedError> {
        match (value, dec) {
            (_, Decoration::Plain) => Ok(Self { value, dec }),
            (ExtNat::Infinite, _) => Err(DecoratedError::DecoratedInfinity),
            (ExtNat::Finite(0), _) => Err(DecoratedError::DecoratedZero(format!("0{}", dec.suffix()))),
            (ExtNat::Finite(_), _) => Ok(Self { value, dec }),
        }
    }

    pub fn plain(n: u64) -> Self {
        Self {
            value: ExtNat::Finite(n),
            dec: Decoration::Plain,
        }
    }

    /// `n⁺`. Panics if `n == 0`.
    pub fn plus(n: u64) -> Self {
        Self::new(ExtNat::Finite(n), Decoration::Plus).expect("0+ is not a decorated value")
    }

    /// `n⁻`. Panics if `n == 0`.
    pub fn minus(n: u64) -> Self {
        Self::new(ExtNat::Finite(n), Decoration::Minus).expect("0- is not a decorated value")
    }

    pub fn value(self) -> ExtNat {
        self.value
    }

    pub fn decoration(self) -> Decoration {
        self.dec
    }

    pub fn is_plain(self) -> bool {
        self.dec == Decoration::Plain
    }

    /// `(n, ε) ⊞ (m, δ) = (n + m, ε ⊗ δ)`.
    pub fn box_add(self, other: DecoratedValue) -> DecoratedValue {
        self.box_add_with(other, sign_product)
    }

    /// [`box_add`](Self::box_add) with an explicit sign rule.
    pub fn box_add_with(self, other: DecoratedValue, sign: SignProduct) -> DecoratedValue {
        let value = self.value + other.value;
        let dec = if value.is_finite() {
            sign(self.dec, other.dec)
        } else {
            Decoration::Plain
        };
        DecoratedValue { value, dec }
    }

    pub fn dual(self) -> DecoratedValue {
        DecoratedValue {
            value: self.value,
            dec: self.dec.dual(),
        }
    }

    pub fn shift(self, k: u64) -> DecoratedValue {
        let value = self.value + k;
        let dec = if value.is_finite() { self.dec } else { Decoration::Plain };
        DecoratedValue { value, dec }
    }

    /// The order-preserving integer code `3n + offset(ε)`; `None` for `∞`.
    pub fn code(self) -> Option<u64> {
        let n = self.value.finite()?;
        Some((3 * n).wrapping_add_signed(self.dec.offset() as i64))
    }

    /// Compares two decorated values in the order `n⁻ < n < n⁺ < (n+1)⁻`.
    pub fn compare(self, other: DecoratedValue) -> Ordering {
        self.cmp(&other)
    }
}

impl fmt::Display for DecoratedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, self.dec.suffix())
    }
}

impl FromStr for DecoratedValue {
    type Err = DecoratedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_decorated(s, 0)
    }
}

impl Serialize for DecoratedValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DecoratedValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a decorated value; `base` is the offset of `s` in a larger input,
/// used for error positions.
pub(crate) fn parse_decorated(s: &str, base: usize) -> Result<DecoratedValue, DecoratedError> {
    if s == "inf" {
        return Ok(DecoratedValue::INFINITE);
    }
    if let Some(stripped) = s.strip_prefix("inf") {
        if stripped == "+" || stripped == "-" {
            return Err(DecoratedError::DecoratedInfinity);
        }
    }
    let (digits, dec) = match s.as_bytes().last() {
        Some(b'+') => (&s[..s.len() - 1], Decoration::Plus),
        Some(b'-') => (&s[..s.len() - 1], Decoration::Minus),
        _ => (s, Decoration::Plain),
    };
    let n = parse_natural(digits, base)?;
    DecoratedValue::new(ExtNat::Finite(n), dec)
}

pub(crate) fn parse_natural(s: &str, base: usize) -> Result<u64, DecoratedError> {
    if s.is_empty() {
        return Err(DecoratedError::Syntax {
            pos: base,
            msg: "expected a natural number".into(),
        });
    }
    if let Some(i) = s.bytes().position(|b| !b.is_ascii_digit()) {
        return Err(DecoratedError::Syntax {
            pos: base + i,
            msg: format!("unexpected character '{}'", &s[i..].chars().next().unwrap()),
        });
    }
    // Leading zeros would break exact round-tripping.
    if s.len() > 1 && s.starts_with('0') {
        return Err(DecoratedError::Syntax {
            pos: base,
            msg: format!("leading zero in '{s}'"),
        });
    }
    s.parse().map_err(|_| DecoratedError::Syntax {
        pos: base,
        msg: format!("number '{s}' out of range"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Decoration::*;

    fn all_values(max: u64) -> Vec<DecoratedValue> {
        let mut out = vec![DecoratedValue::INFINITE];
        for n in 0..=max {
            for dec in Decoration::ALL {
                if let Ok(v) = DecoratedValue::new(ExtNat::Finite(n), dec) {
                    out.push(v);
                }
            }
        }
        out
    }

    #[test]
    fn order_examples() {
        assert_eq!(DecoratedValue::minus(5).compare(DecoratedValue::plain(5)), Ordering::Less);
        assert_eq!(DecoratedValue::plus(5).compare(DecoratedValue::minus(6)), Ordering::Less);
        assert_eq!(DecoratedValue::plain(7).compare(DecoratedValue::INFINITE), Ordering::Less);
    }

    #[test]
    fn sign_product_table() {
        assert_eq!(Plus.product(Minus), Minus);
        assert_eq!(Plain.product(Plus), Plus);
        assert_eq!(Minus.product(Minus), Minus);
        for a in Decoration::ALL {
            for b in Decoration::ALL {
                assert_eq!(a.product(b), b.product(a));
            }
        }
    }

    #[test]
    fn box_add_examples() {
        assert_eq!(DecoratedValue::minus(2).box_add(DecoratedValue::plus(1)), DecoratedValue::minus(3));
        assert_eq!(DecoratedValue::plus(3).box_add(DecoratedValue::plus(4)), DecoratedValue::plus(7));
        for v in all_values(6) {
            assert_eq!(v.box_add(DecoratedValue::ZERO), v);
        }
        assert_eq!(DecoratedValue::plus(3).box_add(DecoratedValue::INFINITE), DecoratedValue::INFINITE);
    }

    #[test]
    fn dual_and_shift_examples() {
        assert_eq!(DecoratedValue::plus(5).dual(), DecoratedValue::minus(5));
        assert_eq!(DecoratedValue::plain(5).dual(), DecoratedValue::plain(5));
        assert_eq!(DecoratedValue::ZERO.dual(), DecoratedValue::ZERO);
        assert_eq!(DecoratedValue::minus(2).shift(1), DecoratedValue::minus(3));
        assert_eq!(DecoratedValue::plus(4).shift(0), DecoratedValue::plus(4));
        assert_eq!(DecoratedValue::INFINITE.shift(5), DecoratedValue::INFINITE);
    }

    #[test]
    fn floors_rejected() {
        assert_eq!(
            DecoratedValue::new(ExtNat::Finite(0), Minus),
            Err(DecoratedError::DecoratedZero("0-".into()))
        );
        assert!(DecoratedValue::new(ExtNat::Finite(0), Plus).is_err());
        assert_eq!(
            DecoratedValue::new(ExtNat::Infinite, Plus),
            Err(DecoratedError::DecoratedInfinity)
        );
        assert!("0+".parse::<DecoratedValue>().is_err());
        assert!("inf-".parse::<DecoratedValue>().is_err());
        assert!("07".parse::<DecoratedValue>().is_err());
        assert!("".parse::<DecoratedValue>().is_err());
        assert!("3x".parse::<DecoratedValue>().is_err());
    }

    #[test]
    fn order_is_total_and_matches_code() {
        let vals = all_values(8);
        for &a in &vals {
            for &b in &vals {
                let ab = a.compare(b);
                assert_eq!(ab, b.compare(a).reverse());
                if let (Some(x), Some(y)) = (a.code(), b.code()) {
                    assert_eq!(ab, x.cmp(&y), "{a} vs {b}");
                }
                for &c in &vals {
                    if ab != Ordering::Greater && b.compare(c) != Ordering::Greater {
                        assert_ne!(a.compare(c), Ordering::Greater);
                    }
                }
            }
        }
    }

    #[test]
    fn box_add_laws_exhaustive() {
        let vals = all_values(6);
        for &a in &vals {
            assert_eq!(a.dual().dual(), a);
            for &b in &vals {
                assert_eq!(a.box_add(b), b.box_add(a));
                for &c in &vals {
                    assert_eq!(a.box_add(b).box_add(c), a.box_add(b.box_add(c)));
                }
            }
        }
    }

    #[test]
    fn shift_monotone_and_commutes_with_dual() {
        let vals = all_values(6);
        for &a in &vals {
            for k in 0..4 {
                assert_eq!(a.shift(k).dual(), a.dual().shift(k));
                assert!(a.shift(k) <= a.shift(k + 1));
                for &b in &vals {
                    if a <= b {
                        assert!(a.shift(k) <= b.shift(k));
                    }
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for v in all_values(12) {
            assert_eq!(v.to_string().parse::<DecoratedValue>(), Ok(v));
        }
        assert_eq!("inf".parse::<DecoratedValue>(), Ok(DecoratedValue::INFINITE));
        assert_eq!("12+".parse::<DecoratedValue>(), Ok(DecoratedValue::plus(12)));
    }
}
