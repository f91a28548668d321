//! Casimir force and force gradient between a metallic sphere and a plate
//! at finite temperature.
//!
//! The headline quantities come from a semi-analytic split of the Matsubara
//! sum: the classical n = 0 term is evaluated exactly in bispherical
//! coordinates (Drude prescription), while the n >= 1 modes enter through
//! the proximity force approximation dressed with a curvature correction
//! from the derivative expansion,
//!
//! ```text
//! F  = F_n0  + F_pfa  (1 - theta  a/R)
//! F' = F'_n0 + F'_pfa (1 - theta~ a/R)
//! ```
//!
//! with coefficients theta(a), theta~(a) shipped as a data table for gold
//! at 300 K. An independent multipole scattering evaluation of the same
//! n >= 1 modes lives in [`scattering`] and serves as the in-crate ground
//! truth for the formula's accuracy.
//!
//! # Conventions
//!
//! Internally everything is SI (m, rad/s, J, N, Pa). Free energies are
//! negative (binding), the force F = -dE/da is negative (attraction), and
//! the gradient F' = dF/da is positive. The parallel-plate "pressure"
//! functions return the positive magnitude of the attraction. The CLI
//! speaks micrometers, eV, kelvin and mPa at the boundary and converts on
//! entry.
//!
//! ```
//! use casimir::{MaterialModel, MatsubaraGrid, ThetaTable};
//!
//! let gold = MaterialModel::drude(9.0, 0.035)?;
//! let grid = MatsubaraGrid::new(300.0, 0.5e-6)?;
//! let table = ThetaTable::builtin();
//! let force = casimir::pfa::force_approx(&gold, 5e-6, 0.5e-6, &grid, &table)?;
//! assert!(force < 0.0);
//! # Ok::<(), casimir::CasimirError>(())
//! ```

pub mod classical;
pub mod cli;
pub mod constants;
mod error;
pub mod interp;
pub mod lifshitz;
pub mod material;
pub mod pfa;
pub mod quadrature;
pub mod run;
pub mod scattering;
pub mod special;

pub use classical::Geometry;
pub use error::{CasimirError, Result};
pub use lifshitz::MatsubaraGrid;
pub use material::MaterialModel;
pub use pfa::ThetaTable;
pub use scattering::MultipoleTruncation;
