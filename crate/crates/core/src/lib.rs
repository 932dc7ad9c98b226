//! Exact torsion computations for Drinfeld F_q[T]-modules over F_q(T) and
//! the local fields F_q((T)).
//!
//! The crate is organised bottom-up:
//!
//! * [`field`], [`poly`], [`ratfn`], [`factor`], [`place`]: exact arithmetic
//!   in F_q, F_q[T], F_q(T), places, divisors and Riemann–Roch spaces.
//! * [`ore`]: additive polynomials under composition.
//! * [`drinfeld`]: Drinfeld modules, twists and reduction.
//! * [`torsion`]: global torsion via valuation floors and parallelotope
//!   enumeration, the rank-one classifier, censuses and heights.
//! * [`local`]: Laurent series with tracked precision and local orbit
//!   analysis.
//! * [`arithstats`]: the Euler function of F_q[T] and primorial statistics.

pub mod arithstats;
pub mod decimal;
pub mod drinfeld;
pub mod error;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod local;
pub mod ore;
pub mod place;
pub mod poly;
pub mod ratfn;
pub mod text;
pub mod torsion;

pub use drinfeld::DrinfeldModule;
pub use error::{Error, Result};
pub use field::{FqElem, FqField};
pub use local::{LaurentSeries, LocalModule};
pub use ore::OrePoly;
pub use place::{Divisor, Place, Valuation};
pub use poly::Poly;
pub use ratfn::RatFn;
pub use torsion::TorsionModule;

/// Default cap on the number of field elements a single enumeration may
/// visit.
pub const DEFAULT_BUDGET: u64 = 1 << 20;
