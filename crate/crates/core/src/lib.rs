//! Pressure-tunable stiffness of a soft foil stiffened by inflatable elastic tubes.
//!
//! Inflating an elastic tube grows its radius, and with it the second moment
//! of area of the cross section. Embedded in a silicone tail, two such tubes
//! give a foil whose bending stiffness can be dialled in with pressure. This
//! crate models that foil end to end:
//!
//! * [`tube`]: inflation geometry, stiffness ratio and buckling of a single tube,
//!   plus the in-extensible fabric beam for contrast.
//! * [`foil`]: composite stiffness and the static moment/angle test.
//! * [`dynamics`]: lumped forced response, frequency sweeps, high-gain bands.
//! * [`analysis`]: calibration, design solves, inflation energy, Strouhal points.
//! * [`cli`]: configuration and the experiment runners behind the `softfoil` binary.
//!
//! ```
//! use softfoil::{foil::{composite_ei, FoilSpec}, units::Pressure};
//!
//! let foil = FoilSpec::reference();
//! let ratio = composite_ei(&foil, Pressure::from_bar(0.8))? / composite_ei(&foil, Pressure::ZERO)?;
//! assert!((ratio - 2.0).abs() < 0.01);
//! # Ok::<(), softfoil::FoilError>(())
//! ```

pub mod analysis;
pub mod cli;
pub mod dynamics;
mod error;
pub mod foil;
pub mod tube;
pub mod units;

pub use error::{FoilError, Result};
