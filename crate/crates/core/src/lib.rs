//! Lorentz boosts acting on two-particle spin-½ Bell states.
//!
//! The crate follows a pair of particles with opposite momenta along ±z while
//! the observer frame is boosted along x. Each particle's spin picks up a
//! Wigner rotation about y, which mixes the Bell basis. On top of that sit the
//! boost-corrected spin observables, pairwise correlators and the CHSH
//! combination, together with sweep, threshold and optimisation tools.
//!
//! Conventions used throughout:
//!
//! * four-vectors are ordered `(x, y, z, t)` with metric `diag(+1, +1, +1, -1)`;
//! * natural units, `c = 1`, and a frame speed relates to rapidity by `β = tanh ω`;
//! * two-particle amplitudes use the basis `{↑↑, ↑↓, ↓↑, ↓↓}` with particle A
//!   in the left slot.

pub mod analysis;
pub mod bellstates;
pub mod cli;
pub mod correlators;
mod error;
pub mod littlegroup;
pub mod minkowski;

pub use error::{Error, Result};
