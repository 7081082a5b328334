//! Unit conversions used at the configuration and output boundary.
//!
//! Everything inside the library is SI. The exact factors below are the
//! only place where bar, millimetres or degrees are turned into SI values.

use std::fmt;

/// Pascals per bar.
pub const PA_PER_BAR: f64 = 1.0e5;
/// Metres per millimetre.
pub const M_PER_MM: f64 = 1.0e-3;

/// Gauge pressure in pascals.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Pressure(f64);

impl Pressure {
    pub const ZERO: Pressure = Pressure(0.0);

    pub fn from_pa(pa: f64) -> Self {
        Pressure(pa)
    }

    pub fn from_bar(bar: f64) -> Self {
        Pressure(bar * PA_PER_BAR)
    }

    pub fn pa(self) -> f64 {
        self.0
    }

    pub fn bar(self) -> f64 {
        self.0 / PA_PER_BAR
    }
}

impl fmt::Display for Pressure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bar", self.bar())
    }
}

pub fn mm(v: f64) -> f64 {
    v * M_PER_MM
}

pub fn hz_to_rad_s(f: f64) -> f64 {
    2.0 * std::f64::consts::PI * f
}

pub fn rad_s_to_hz(w: f64) -> f64 {
    w / (2.0 * std::f64::consts::PI)
}
