//! Exact-arithmetic growth invariants of finitely presented pro-p groups.
//!
//! The crate is organized in layers:
//!
//! * [`fp`] — the degree-truncated free noncommutative algebra over F_p
//!   together with a row-echelon subspace engine (rank, membership, ideal
//!   closures).
//! * [`word`] / [`magnus`] — free pro-p group words, their grammar, and the
//!   expansion sending each generator to `1 + u_i`, from which word depths
//!   are read off as valuations.
//! * [`presentation`] — relator depths, truncated defining ideals, Hilbert
//!   coefficients `c_n = dim I^n/I^{n+1}` of the quotient algebra, and the
//!   product criterion `H(t)·P(t) >= 1`.
//! * [`group_algebra`] — an independent brute-force route through the group
//!   algebra of an explicit finite p-group, used to cross-check the
//!   presentation pipeline.
//! * [`gspoly`] — exact-rational analysis of the sparse polynomials
//!   `1 - d·t + Σ t^ω` (negativity witnesses, growth bounds, cuts).
//! * [`tower`] — number-field tower data and the derived per-level bound
//!   profiles, certification checks, and growth tables.
//!
//! All certified paths use exact integer/rational arithmetic; floating point
//! never decides an inequality.
//!
//! With the `parallel` feature (on by default) the elimination and table
//! loops run on rayon. Results are bit-identical to the sequential fallback:
//! every parallel reduction is an exact commutative sum.

pub mod error;
pub mod fp;
pub mod group_algebra;
pub mod gspoly;
pub mod magnus;
pub mod numfmt;
pub mod presentation;
pub mod tower;
pub mod word;

pub use error::{Error, Result};
pub use fp::{FpSubspace, FreeAlgebra, Monomial, Strategy, TruncatedSeries, Valuation};
pub use gspoly::{GsPolynomial, NegativityWitness, Rational};
pub use magnus::DepthValue;
pub use presentation::{HilbertPrefix, Presentation, VinbergVerdict};
pub use word::GroupWord;
