//! The Bockstein calculus of cohomological dimension types.
//!
//! * [`decorated`]: decorated extended naturals `n`, `n⁺`, `n⁻` with their
//!   order, sign product, `⊞`-addition and duality.
//! * [`dimtype`]: dimension types over the Bockstein basis, with `∗`, `⊞`,
//!   `⊕`, `+k`, the pointwise order and the Boltyanskii classification.
//! * [`groups`]: finite direct sums of abelian groups, their Bockstein bases
//!   `σ(G)` and `dim_G`.
//! * [`exotic`]: feasibility certificates and exhaustive search for
//!   exotic-decomposition and exotic-map witness pairs, and the replay ledger.
//! * [`cli`]: the command-line surface used by the `bockstein` binary.
//!
//! ```
//! use bockstein::DimensionType;
//!
//! let d1: DimensionType = "q=1 all=2-".parse().unwrap();
//! let d2: DimensionType = "q=2 all=1+".parse().unwrap();
//! assert_eq!(d1.oplus(&d2), DimensionType::boltyanskii(4).unwrap());
//! assert_eq!(d1.boxplus(&d2).dim(), 3);
//! ```

pub mod cli;
pub mod decorated;
pub mod dimtype;
pub mod exotic;
pub mod groups;

pub use decorated::{DecoratedValue, Decoration, ExtNat};
pub use dimtype::{BocksteinGroup, DimensionType, PrimeSet};
pub use exotic::{SearchBounds, WitnessCertificate};
pub use groups::{GroupExpr, SigmaSet};
