//! Pressure-for-frequency design solves and Strouhal operating points.

use crate::dynamics::DynamicModel;
use crate::error::{ensure, FoilError, Result};
use crate::foil::FoilSpec;
use crate::units::Pressure;

/// Natural-frequency tolerance of [`pressure_for_frequency`].
pub const FREQUENCY_TOLERANCE_HZ: f64 = 1e-9;

const MAX_BISECTIONS: usize = 200;

/// Biological cruising range of the Strouhal number.
pub const BIOLOGICAL_STROUHAL: (f64, f64) = (0.25, 0.4);

fn natural_hz(foil: &FoilSpec, mass: f64, pressure: Pressure) -> Result<f64> {
    DynamicModel::new(mass, 0.0)?.natural_frequency_hz(foil, pressure)
}

/// Natural frequencies at zero pressure and at the inflation limit.
pub fn achievable_band(foil: &FoilSpec, mass: f64) -> Result<(f64, f64)> {
    Ok((
        natural_hz(foil, mass, Pressure::ZERO)?,
        natural_hz(foil, mass, foil.max_pressure())?,
    ))
}

/// Pressure whose natural frequency equals `target_hz`, by bisection.
pub fn pressure_for_frequency(foil: &FoilSpec, mass: f64, target_hz: f64) -> Result<Pressure> {
    let (f_min, f_max) = achievable_band(foil, mass)?;
    if !(target_hz >= f_min && target_hz <= f_max) {
        return Err(FoilError::OutOfEnvelope {
            target_hz,
            f_min_hz: f_min,
            f_max_hz: f_max,
        });
    }
    if target_hz == f_min {
        return Ok(Pressure::ZERO);
    }
    let (mut lo, mut hi) = (0.0, foil.max_pressure().pa());
    let mut best = (f64::INFINITY, hi);
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let f = natural_hz(foil, mass, Pressure::from_pa(mid))?;
        let err = f - target_hz;
        if err.abs() < best.0 {
            best = (err.abs(), mid);
        }
        if err.abs() < FREQUENCY_TOLERANCE_HZ || mid <= lo || mid >= hi {
            break;
        }
        if err < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Pressure::from_pa(best.1))
}

/// A flapping operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrouhalPoint {
    /// Peak-to-peak amplitude, metres.
    pub amplitude: f64,
    pub frequency_hz: f64,
    pub speed: f64,
    pub strouhal: f64,
}

impl StrouhalPoint {
    pub fn in_biological_range(&self) -> bool {
        (BIOLOGICAL_STROUHAL.0..=BIOLOGICAL_STROUHAL.1).contains(&self.strouhal)
    }
}

/// `St = A f / U`.
pub fn strouhal(amplitude: f64, frequency_hz: f64, speed: f64) -> Result<StrouhalPoint> {
    ensure(speed > 0.0, || format!("swimming speed must be positive, got {speed}"))?;
    Ok(StrouhalPoint {
        amplitude,
        frequency_hz,
        speed,
        strouhal: amplitude * frequency_hz / speed,
    })
}

/// Resonant swimming speeds reachable across a set of pressures.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeedEnvelope {
    pub strouhal: f64,
    pub amplitude: f64,
    /// `(pressure, resonant frequency Hz, speed m/s)` per pressure, input order.
    pub points: Vec<(Pressure, f64, f64)>,
    pub min_speed: f64,
    pub max_speed: f64,
}

/// `U = A f_n(P) / St` over the given pressures.
pub fn speed_envelope(
    foil: &FoilSpec,
    mass: f64,
    pressures: &[Pressure],
    amplitude: f64,
    strouhal_target: f64,
) -> Result<SpeedEnvelope> {
    ensure(strouhal_target > 0.0 && strouhal_target < 1.0, || {
        format!("target Strouhal number must lie in (0, 1), got {strouhal_target}")
    })?;
    ensure(amplitude > 0.0, || format!("amplitude must be positive, got {amplitude}"))?;
    ensure(!pressures.is_empty(), || "speed envelope needs at least one pressure".into())?;
    let points = pressures
        .iter()
        .map(|&p| {
            let f = natural_hz(foil, mass, p)?;
            Ok((p, f, amplitude * f / strouhal_target))
        })
        .collect::<Result<Vec<_>>>()?;
    let min_speed = points.iter().map(|p| p.2).fold(f64::INFINITY, f64::min);
    let max_speed = points.iter().map(|p| p.2).fold(f64::NEG_INFINITY, f64::max);
    Ok(SpeedEnvelope {
        strouhal: strouhal_target,
        amplitude,
        points,
        min_speed,
        max_speed,
    })
}
