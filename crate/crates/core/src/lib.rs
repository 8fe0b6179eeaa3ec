//! Exact computation in the metaplectic double covers of `Sp(2n)` and
//! `GSp(2n)` over `Q_p`.
//!
//! The crate is layered bottom-up:
//!
//! * [`padic`]: square classes of `Q_p^*`, Hilbert symbols, the Weil factor
//!   `gamma_psi` together with brute-force oracles for both.
//! * [`symplectic`]: exact `GSp(2n)` matrices, Levi shapes, the Siegel
//!   Bruhat decomposition and Rao's `x`-map.
//! * [`cover`]: the group law of the double cover (Rao cocycle rules,
//!   Kubota's closed form for `n = 1`, the extension to `GSp`).
//! * [`structure`]: centers of covered Levi subgroups.
//! * [`characters`]: characters of `Q_p^*` and genuine central characters.
//! * [`torus`]: explicit genuine representations of the covered torus.
//! * [`deciders`]: principal-series verdicts and Whittaker orbit counts.
//! * [`verify`]: seeded property suites with machine-readable reports.

pub mod characters;
pub mod cover;
pub mod deciders;
mod error;
pub mod matrix;
pub mod padic;
pub mod rational;
mod sign;
pub mod structure;
pub mod symplectic;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
pub use sign::Sign;
