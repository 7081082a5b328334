//! Single-degree-of-freedom forced response of the foil.
//!
//! The first bending mode is lumped into `m x'' + c x' + k x = F sin(w t)`
//! with `k = 3 EI / L^3` from the composite section and `c = 2 zeta sqrt(k m)`.
//! Gains are reported relative to the response at 1 Hz, the reference
//! drive of the frequency sweep.

mod ode;
mod sweep;

pub use ode::{simulate, time_response, Trajectory, TimeHistory, MIN_STEPS_PER_CYCLE, MIN_DRIVE_CYCLES};
pub use sweep::{frequency_sweep, operational_envelope, union_of, Band, Envelope, FrequencyRange, SweepResult};

use crate::error::{ensure, FoilError, Result};
use crate::foil::{tip_stiffness, FoilSpec};
use crate::units::{hz_to_rad_s, rad_s_to_hz, Pressure};

/// Frequency at which the sweep amplitude `A0` is taken.
pub const REFERENCE_FREQUENCY_HZ: f64 = 1.0;

/// Damping ratio used when nothing has been calibrated; `1 / (2 zeta)` is about 6.
pub const DEFAULT_DAMPING_RATIO: f64 = 0.08;

/// Effective mass used when nothing has been calibrated.
///
/// Puts the first-mode natural frequency of [`FoilSpec::reference`] at
/// about 5.5 Hz unpressurised.
pub const DEFAULT_EFFECTIVE_MASS: f64 = 3.8e-3;

/// Crank drive amplitude, degrees peak to peak.
pub const DEFAULT_DRIVE_DEG_PP: f64 = 6.0;

/// Lumped mass of a uniform cantilever's first mode, `33/140` of the distributed mass.
pub fn rayleigh_lumped_mass(distributed_mass: f64) -> f64 {
    33.0 / 140.0 * distributed_mass
}

/// `w_n = sqrt(k / m)`.
pub fn natural_frequency(stiffness: f64, mass: f64) -> Result<f64> {
    ensure(stiffness > 0.0 && mass > 0.0, || {
        format!("stiffness and mass must be positive, got k={stiffness}, m={mass}")
    })?;
    Ok((stiffness / mass).sqrt())
}

/// `1 / |1 - (w / w_n)^2|`.
pub fn undamped_gain(omega: f64, omega_n: f64) -> Result<f64> {
    ensure(omega >= 0.0 && omega_n > 0.0, || {
        format!("frequencies must be non-negative, got w={omega}, w_n={omega_n}")
    })?;
    if omega == omega_n {
        return Err(FoilError::UnboundedResonance);
    }
    let r = omega / omega_n;
    Ok(1.0 / (1.0 - r * r).abs())
}

/// `1 / sqrt((1 - r^2)^2 + (2 zeta r)^2)` with `r = w / w_n`.
pub fn damped_gain(omega: f64, omega_n: f64, zeta: f64) -> Result<f64> {
    ensure(omega >= 0.0 && omega_n > 0.0, || {
        format!("frequencies must be non-negative, got w={omega}, w_n={omega_n}")
    })?;
    ensure(zeta >= 0.0, || format!("damping ratio must be non-negative, got {zeta}"))?;
    let r = omega / omega_n;
    let gain = 1.0 / ((1.0 - r * r).powi(2) + (2.0 * zeta * r).powi(2)).sqrt();
    if !gain.is_finite() {
        return Err(FoilError::UnboundedResonance);
    }
    Ok(gain)
}

/// Frequency ratio of the damped gain maximum, `sqrt(1 - 2 zeta^2)`.
pub fn damped_peak_ratio(zeta: f64) -> f64 {
    (1.0 - 2.0 * zeta * zeta).max(0.0).sqrt()
}

/// Maximum of the damped gain, `1 / (2 zeta sqrt(1 - zeta^2))`.
pub fn damped_peak_gain(zeta: f64) -> f64 {
    1.0 / (2.0 * zeta * (1.0 - zeta * zeta).sqrt())
}

/// How the crank drive enters the lumped model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DriveMode {
    /// Harmonic force of constant magnitude at every frequency.
    #[default]
    ConstantForce,
    /// Prescribed base motion; the tip amplitude follows the absolute
    /// transmissibility `sqrt(1 + (2 zeta r)^2) * H(r)`.
    BaseExcitation,
}

/// Mass, damping and drive of the lumped foil model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicModel {
    pub effective_mass: f64,
    pub damping_ratio: f64,
    pub drive: DriveMode,
    /// Drive amplitude, radians peak to peak at the nose.
    pub drive_amplitude: f64,
}

impl Default for DynamicModel {
    fn default() -> Self {
        Self {
            effective_mass: DEFAULT_EFFECTIVE_MASS,
            damping_ratio: DEFAULT_DAMPING_RATIO,
            drive: DriveMode::ConstantForce,
            drive_amplitude: DEFAULT_DRIVE_DEG_PP.to_radians(),
        }
    }
}

impl DynamicModel {
    pub fn new(effective_mass: f64, damping_ratio: f64) -> Result<Self> {
        let model = Self {
            effective_mass,
            damping_ratio,
            ..Self::default()
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.effective_mass.is_finite() && self.effective_mass > 0.0, || {
            format!("effective mass must be positive, got {}", self.effective_mass)
        })?;
        ensure((0.0..1.0).contains(&self.damping_ratio), || {
            format!("damping ratio must lie in [0, 1), got {}", self.damping_ratio)
        })?;
        ensure(self.drive_amplitude > 0.0 && self.drive_amplitude < std::f64::consts::PI, || {
            format!("drive amplitude must lie in (0, 180) deg, got {} deg", self.drive_amplitude.to_degrees())
        })
    }

    /// Steady amplitude relative to the quasi-static response.
    pub fn response(&self, omega: f64, omega_n: f64) -> Result<f64> {
        let h = damped_gain(omega, omega_n, self.damping_ratio)?;
        Ok(match self.drive {
            DriveMode::ConstantForce => h,
            DriveMode::BaseExcitation => {
                let r = omega / omega_n;
                (1.0 + (2.0 * self.damping_ratio * r).powi(2)).sqrt() * h
            }
        })
    }

    /// Response at `freq_hz` normalised by the response at 1 Hz.
    pub fn normalized_gain(&self, freq_hz: f64, natural_hz: f64) -> Result<f64> {
        let w_n = hz_to_rad_s(natural_hz);
        Ok(self.response(hz_to_rad_s(freq_hz), w_n)? / self.response(hz_to_rad_s(REFERENCE_FREQUENCY_HZ), w_n)?)
    }

    /// Quasi-static tip amplitude (half of peak to peak) imposed by the drive.
    pub fn static_tip_amplitude(&self, span: f64) -> f64 {
        span * (0.5 * self.drive_amplitude).sin()
    }

    /// Natural frequency in Hz of the foil at a pressure.
    pub fn natural_frequency_hz(&self, foil: &FoilSpec, pressure: Pressure) -> Result<f64> {
        Ok(rad_s_to_hz(natural_frequency(tip_stiffness(foil, pressure)?, self.effective_mass)?))
    }

    /// Oscillator at a given pressure and drive frequency.
    ///
    /// The force amplitude reproduces the kinematic drive amplitude at the tip
    /// in the quasi-static limit, so every pressure starts from the same
    /// low-frequency deflection.
    pub fn oscillator(&self, foil: &FoilSpec, pressure: Pressure, drive_hz: f64) -> Result<OscillatorParams> {
        let k = tip_stiffness(foil, pressure)?;
        OscillatorParams::new(
            k,
            self.effective_mass,
            self.damping_ratio,
            k * self.static_tip_amplitude(foil.span()),
            hz_to_rad_s(drive_hz),
        )
    }
}

/// Parameters of `m x'' + c x' + k x = F sin(w t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    pub stiffness: f64,
    pub mass: f64,
    pub damping_ratio: f64,
    pub force_amplitude: f64,
    pub drive_omega: f64,
}

impl OscillatorParams {
    pub fn new(stiffness: f64, mass: f64, damping_ratio: f64, force_amplitude: f64, drive_omega: f64) -> Result<Self> {
        ensure(stiffness > 0.0 && mass > 0.0, || {
            format!("stiffness and mass must be positive, got k={stiffness}, m={mass}")
        })?;
        ensure((0.0..1.0).contains(&damping_ratio), || {
            format!("damping ratio must lie in [0, 1), got {damping_ratio}")
        })?;
        ensure(force_amplitude.is_finite() && drive_omega.is_finite() && drive_omega >= 0.0, || {
            format!("invalid drive: F={force_amplitude}, w={drive_omega}")
        })?;
        Ok(Self {
            stiffness,
            mass,
            damping_ratio,
            force_amplitude,
            drive_omega,
        })
    }

    pub fn natural_omega(&self) -> f64 {
        (self.stiffness / self.mass).sqrt()
    }

    /// Viscous coefficient `c = 2 zeta sqrt(k m)`.
    pub fn damping_coefficient(&self) -> f64 {
        2.0 * self.damping_ratio * (self.stiffness * self.mass).sqrt()
    }

    /// Kinetic plus elastic energy of a state.
    pub fn mechanical_energy(&self, x: f64, v: f64) -> f64 {
        0.5 * self.mass * v * v + 0.5 * self.stiffness * x * x
    }
}
