//! Test-only oracles, written against the defining formulas rather than the
//! library's evaluator.

#![allow(dead_code)]

use bockstein::{BocksteinGroup, DecoratedValue, Decoration, DimensionType, ExtNat};

/// The four basis values `(Q, Z/p, Z(pinf), Z_(p))` at prime `p`, finite types only.
pub fn sigma_values(d: &DimensionType, p: u64) -> [u64; 4] {
    let q = d.q().finite().expect("finite q");
    let v = d.at(p);
    let zp = v.value().finite().expect("finite value");
    let (zp_inf, loc) = match v.decoration() {
        Decoration::Plain => (zp, zp),
        Decoration::Plus => (zp, q.max(zp + 1)),
        Decoration::Minus => (zp - 1, q.max(zp)),
    };
    [q, zp, zp_inf, loc]
}

/// Singularity class read back from the four values.
fn class_of(vals: [u64; 4]) -> Decoration {
    let [q, zp, zp_inf, loc] = vals;
    if q == zp && zp == zp_inf && zp_inf == loc {
        Decoration::Plain
    } else if zp_inf == zp {
        Decoration::Plus
    } else {
        assert_eq!(zp_inf + 1, zp, "not a dimension type at this prime: {vals:?}");
        Decoration::Minus
    }
}

/// The product of two σ-functions at `p`: fields add, the singularity
/// class is multiplied by the product rule, and the rest is reconstructed.
pub fn product_values(a: [u64; 4], b: [u64; 4]) -> [u64; 4] {
    let q = a[0] + b[0];
    let zp = a[1] + b[1];
    let class = match (class_of(a), class_of(b)) {
        (Decoration::Plain, c) | (c, Decoration::Plain) => c,
        (Decoration::Plus, Decoration::Plus) => Decoration::Plus,
        _ => Decoration::Minus,
    };
    match class {
        Decoration::Plain => [q, zp, zp, q],
        Decoration::Plus => [q, zp, zp, q.max(zp + 1)],
        Decoration::Minus => [q, zp, zp - 1, q.max(zp)],
    }
}

/// Pointwise `≤` of the σ-functions at the given primes.
pub fn pointwise_leq(a: &DimensionType, b: &DimensionType, primes: &[u64]) -> bool {
    primes.iter().all(|&p| {
        let (x, y) = (sigma_values(a, p), sigma_values(b, p));
        x.iter().zip(&y).all(|(u, v)| u <= v)
    })
}

/// Uniform types with `q ≤ max` and base values `≤ max`, all decorations.
pub fn uniform_types(max: u64) -> Vec<DimensionType> {
    let mut out = Vec::new();
    for q in 0..=max {
        out.push(DimensionType::constant(q));
        for v in 1..=max {
            out.push(DimensionType::uniform(q, DecoratedValue::minus(v)).unwrap());
            out.push(DimensionType::uniform(q, DecoratedValue::plus(v)).unwrap());
        }
    }
    out
}

/// Types with a default and values at the primes 2 and 3, bases `≤ max`.
pub fn types_with_exceptions(max: u64) -> Vec<DimensionType> {
    let mut out = Vec::new();
    for q in 0..=max {
        let mut local = vec![DecoratedValue::plain(q)];
        for v in 1..=max {
            local.push(DecoratedValue::minus(v));
            local.push(DecoratedValue::plus(v));
        }
        for &a in &local {
            for &b in &local {
                for &c in &local {
                    out.push(DimensionType::new(ExtNat::Finite(q), a, [(2, b), (3, c)]).unwrap());
                }
            }
        }
    }
    out
}

pub fn fields(primes: &[u64]) -> Vec<BocksteinGroup> {
    BocksteinGroup::restricted_basis(primes)
        .into_iter()
        .filter(|g| g.is_field())
        .collect()
}
