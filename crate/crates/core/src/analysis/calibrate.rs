//! Least-squares calibration of the foil model against measurements.

use super::optimize::GaussNewton;
use crate::dynamics::{damped_peak_ratio, DriveMode, DynamicModel, DEFAULT_DAMPING_RATIO};
use crate::error::{FoilError, Result};
use crate::foil::{composite_ei, tip_stiffness, FoilSpec, StiffnessCurvePoint};
use crate::units::{hz_to_rad_s, Pressure};

/// Digitised gain curve at one pressure.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredGainCurve {
    pressure: Pressure,
    /// `(frequency Hz, gain)`, frequencies strictly increasing.
    samples: Vec<(f64, f64)>,
}

impl MeasuredGainCurve {
    pub const MIN_SAMPLES: usize = 5;

    pub fn new(pressure: Pressure, samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < Self::MIN_SAMPLES {
            return Err(FoilError::Precondition(format!(
                "a gain curve needs at least {} samples, got {} at {}",
                Self::MIN_SAMPLES,
                samples.len(),
                pressure
            )));
        }
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(FoilError::Precondition(format!(
                "gain curve frequencies at {pressure} must be strictly increasing"
            )));
        }
        if samples.iter().any(|&(f, g)| !(f > 0.0 && g.is_finite() && g > 0.0)) {
            return Err(FoilError::Precondition(format!(
                "gain curve at {pressure} has non-positive frequencies or gains"
            )));
        }
        Ok(Self { pressure, samples })
    }

    pub fn pressure(&self) -> Pressure {
        self.pressure
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    fn peak(&self) -> (usize, f64) {
        let i = self
            .samples
            .iter()
            .enumerate()
            .fold(0, |best, (i, s)| if s.1 > self.samples[best].1 { i } else { best });
        (i, self.samples[i].0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationResult {
    pub effective_mass: f64,
    pub damping_ratio: f64,
    /// Multiplier on the model tip stiffness for each curve, ascending pressure.
    /// The lowest-pressure curve is the reference and is pinned at 1.
    pub stiffness_scales: Vec<(Pressure, f64)>,
    pub residual_rms: f64,
    pub iterations: usize,
    pub objective_history: Vec<f64>,
}

impl CalibrationResult {
    /// Lumped model carrying the fitted mass and damping.
    pub fn model(&self, drive: DriveMode) -> DynamicModel {
        DynamicModel {
            effective_mass: self.effective_mass,
            damping_ratio: self.damping_ratio,
            drive,
            ..DynamicModel::default()
        }
    }
}

/// Options for [`calibrate_dynamic_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicCalibration {
    /// Fit a stiffness multiplier for every curve but the lowest-pressure one.
    pub fit_stiffness_scales: bool,
    pub drive: DriveMode,
    pub optimizer: GaussNewton,
}

impl Default for DynamicCalibration {
    fn default() -> Self {
        Self {
            fit_stiffness_scales: true,
            drive: DriveMode::ConstantForce,
            optimizer: GaussNewton::default(),
        }
    }
}

pub fn calibrate_dynamic(curves: &[MeasuredGainCurve], foil: &FoilSpec) -> Result<CalibrationResult> {
    calibrate_dynamic_with(curves, foil, DynamicCalibration::default())
}

/// Fits effective mass, damping ratio and optional stiffness multipliers so
/// the normalised damped gain reproduces the measured curves.
///
/// Parameters are `[ln m, zeta, ln s_1, ...]`. The initial mass places the
/// reference curve's measured peak at the damped peak of `zeta = 0.08`.
pub fn calibrate_dynamic_with(
    curves: &[MeasuredGainCurve],
    foil: &FoilSpec,
    options: DynamicCalibration,
) -> Result<CalibrationResult> {
    if curves.is_empty() {
        return Err(FoilError::Precondition("calibration needs at least one gain curve".into()));
    }
    let mut curves: Vec<&MeasuredGainCurve> = curves.iter().collect();
    curves.sort_by(|a, b| a.pressure.pa().total_cmp(&b.pressure.pa()));
    for c in &curves {
        let (i, _) = c.peak();
        if i == 0 || i + 1 == c.samples.len() {
            return Err(FoilError::Precondition(format!(
                "gain curve at {} does not span its peak",
                c.pressure
            )));
        }
    }
    let stiffness = curves
        .iter()
        .map(|c| tip_stiffness(foil, c.pressure))
        .collect::<Result<Vec<_>>>()?;

    let (_, f_peak) = curves[0].peak();
    let w_n0 = hz_to_rad_s(f_peak) / damped_peak_ratio(DEFAULT_DAMPING_RATIO);
    let mut initial = vec![(stiffness[0] / (w_n0 * w_n0)).ln(), DEFAULT_DAMPING_RATIO];
    let n_scales = if options.fit_stiffness_scales { curves.len() - 1 } else { 0 };
    initial.extend(std::iter::repeat(0.0).take(n_scales));

    let residuals = |x: &[f64]| -> Option<Vec<f64>> {
        let zeta = x[1];
        if !(zeta > 0.0 && zeta < 1.0) {
            return None;
        }
        let model = DynamicModel {
            effective_mass: x[0].exp(),
            damping_ratio: zeta,
            drive: options.drive,
            ..DynamicModel::default()
        };
        let mut out = Vec::new();
        for (i, c) in curves.iter().enumerate() {
            let scale = if i == 0 || n_scales == 0 { 1.0 } else { x[1 + i].exp() };
            let natural_hz = (scale * stiffness[i] / model.effective_mass).sqrt() / (2.0 * std::f64::consts::PI);
            for &(f, g) in &c.samples {
                out.push(model.normalized_gain(f, natural_hz).ok()? - g);
            }
        }
        Some(out)
    };

    let fit = options.optimizer.minimize(residuals, &initial)?;
    let stiffness_scales = curves
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let s = if i == 0 || n_scales == 0 { 1.0 } else { fit.params[1 + i].exp() };
            (c.pressure, s)
        })
        .collect();
    Ok(CalibrationResult {
        effective_mass: fit.params[0].exp(),
        damping_ratio: fit.params[1],
        stiffness_scales,
        residual_rms: fit.residual_rms,
        iterations: fit.iterations,
        objective_history: fit.objective_history,
    })
}

/// Fitted moduli of the static calibration.
#[derive(Debug, Clone, PartialEq)]
pub struct StaticCalibration {
    pub silicone_modulus: f64,
    pub tube_modulus: f64,
    /// Fitted over initial silicone modulus.
    pub silicone_scale: f64,
    /// Fitted over initial tube modulus.
    pub tube_scale: f64,
    /// Root mean square of the relative effective-stiffness residuals.
    pub residual_rms: f64,
    pub iterations: usize,
    pub objective_history: Vec<f64>,
}

impl StaticCalibration {
    pub fn apply(&self, foil: &FoilSpec) -> Result<FoilSpec> {
        foil.with_silicone_modulus(self.silicone_modulus)?
            .with_tube_modulus(self.tube_modulus)
    }
}

/// Model effective stiffness `EI(P) / I0`, independent of the applied moment.
pub fn model_effective_stiffness(foil: &FoilSpec, pressure: Pressure) -> Result<f64> {
    Ok(composite_ei(foil, pressure)? / foil.nominal_i0())
}

/// Fits the silicone and tube moduli to effective-stiffness measurements.
///
/// The tube modulus also sets the dimensionless pressure, so the problem is
/// nonlinear; it is solved in `[ln E_s, ln E_tube]` with relative residuals.
pub fn calibrate_static(points: &[StiffnessCurvePoint], foil: &FoilSpec) -> Result<StaticCalibration> {
    calibrate_static_with(points, foil, GaussNewton::default())
}

pub fn calibrate_static_with(
    points: &[StiffnessCurvePoint],
    foil: &FoilSpec,
    optimizer: GaussNewton,
) -> Result<StaticCalibration> {
    if points.is_empty() {
        return Err(FoilError::Precondition("static calibration needs data points".into()));
    }
    let mut pressures: Vec<f64> = points.iter().map(|p| p.pressure.pa()).collect();
    pressures.sort_by(f64::total_cmp);
    pressures.dedup();
    if pressures.len() < 2 {
        return Err(FoilError::RankDeficient(
            "static data at a single pressure cannot separate silicone and tube moduli".into(),
        ));
    }
    let p_high = *pressures.last().expect("non-empty");
    let tube = foil.tube();
    // keep every data pressure inside the inflation validity range at the start
    let min_tube_modulus = p_high * tube.resting_radius() / (tube.resting_thickness() * tube.p_max());
    let e_s0 = foil.tail().modulus;
    let e_t0 = tube.modulus().max(1.01 * min_tube_modulus);

    let residuals = |x: &[f64]| -> Option<Vec<f64>> {
        let trial = foil
            .with_silicone_modulus(x[0].exp())
            .and_then(|f| f.with_tube_modulus(x[1].exp()))
            .ok()?;
        points
            .iter()
            .map(|pt| {
                model_effective_stiffness(&trial, pt.pressure)
                    .ok()
                    .map(|e| (e - pt.effective_stiffness) / pt.effective_stiffness)
            })
            .collect()
    };
    let fit = optimizer.minimize(residuals, &[e_s0.ln(), e_t0.ln()])?;
    let (silicone_modulus, tube_modulus) = (fit.params[0].exp(), fit.params[1].exp());
    Ok(StaticCalibration {
        silicone_modulus,
        tube_modulus,
        silicone_scale: silicone_modulus / foil.tail().modulus,
        tube_scale: tube_modulus / tube.modulus(),
        residual_rms: fit.residual_rms,
        iterations: fit.iterations,
        objective_history: fit.objective_history,
    })
}
