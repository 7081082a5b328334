//! Experiment configuration file.
//!
//! TOML with one table per concern. Every table and key is optional and
//! falls back to the demonstrator foil and the default test protocol;
//! unknown keys are rejected. Units at this boundary are millimetres, bar,
//! hertz and degrees, converted to SI with the factors in [`crate::units`].

use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::CliError;
use crate::analysis::DEFAULT_NODES;
use crate::dynamics::{
    DriveMode, DynamicModel, FrequencyRange, DEFAULT_DAMPING_RATIO, DEFAULT_DRIVE_DEG_PP, DEFAULT_EFFECTIVE_MASS,
    MIN_DRIVE_CYCLES, MIN_STEPS_PER_CYCLE,
};
use crate::foil::{FoilSpec, TailSection, DEFAULT_ROLLOFF_DEG};
use crate::tube::{ElasticTube, DEFAULT_P_MAX};
use crate::units::{mm, Pressure};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawConfig {
    pub run: RunSection,
    pub foil: FoilSection,
    pub tube: TubeSection,
    pub dynamics: DynamicsSection,
    pub static_sweep: StaticSection,
    pub freq_sweep: FreqSection,
    pub time_history: TimeHistorySection,
    pub energy: EnergySection,
    pub calibrate: CalibrateSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    /// Runs are always deterministic; `false` is rejected.
    pub deterministic: bool,
}

impl Default for RunSection {
    fn default() -> Self {
        Self { deterministic: true }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FoilSection {
    pub tail_length_mm: f64,
    pub tail_width_mm: f64,
    pub tail_height_mm: f64,
    pub nose_length_mm: f64,
    pub silicone_modulus_pa: f64,
    pub support_span_mm: Option<f64>,
    pub nominal_i0_mm4: Option<f64>,
    pub rolloff_angle_deg: f64,
}

impl Default for FoilSection {
    fn default() -> Self {
        let foil = FoilSpec::reference();
        let tail = foil.tail();
        Self {
            tail_length_mm: tail.length * 1e3,
            tail_width_mm: tail.width * 1e3,
            tail_height_mm: tail.height * 1e3,
            nose_length_mm: foil.nose_length() * 1e3,
            silicone_modulus_pa: tail.modulus,
            support_span_mm: None,
            nominal_i0_mm4: None,
            rolloff_angle_deg: DEFAULT_ROLLOFF_DEG,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TubeSection {
    pub radius_mm: f64,
    pub wall_thickness_mm: f64,
    pub length_mm: f64,
    pub modulus_pa: f64,
    pub p_max: f64,
}

impl Default for TubeSection {
    fn default() -> Self {
        let foil = FoilSpec::reference();
        let tube = foil.tube();
        Self {
            radius_mm: tube.resting_radius() * 1e3,
            wall_thickness_mm: tube.resting_thickness() * 1e3,
            length_mm: tube.length() * 1e3,
            modulus_pa: tube.modulus(),
            p_max: DEFAULT_P_MAX,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DriveKind {
    ConstantForce,
    BaseExcitation,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DynamicsSection {
    pub effective_mass_kg: Option<f64>,
    pub damping_ratio: Option<f64>,
    /// Calibration report written by `softfoil calibrate`.
    pub calibration: Option<PathBuf>,
    pub drive: DriveKind,
    pub drive_amplitude_deg: f64,
}

impl Default for DynamicsSection {
    fn default() -> Self {
        Self {
            effective_mass_kg: None,
            damping_ratio: None,
            calibration: None,
            drive: DriveKind::ConstantForce,
            drive_amplitude_deg: DEFAULT_DRIVE_DEG_PP,
        }
    }
}

fn protocol_pressures() -> Vec<f64> {
    (0..=8).map(|i| i as f64 / 10.0).collect()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StaticSection {
    pub pressures_bar: Vec<f64>,
    pub moments_nm: Vec<f64>,
}

impl Default for StaticSection {
    fn default() -> Self {
        Self {
            pressures_bar: protocol_pressures(),
            moments_nm: (0..=16).map(|i| i as f64 / 100.0).collect(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FreqSection {
    pub pressures_bar: Vec<f64>,
    pub freq_min_hz: f64,
    pub freq_max_hz: f64,
    pub n_points: usize,
    pub gain_threshold: f64,
}

impl Default for FreqSection {
    fn default() -> Self {
        Self {
            pressures_bar: vec![0.0, 0.2, 0.5, 0.8],
            freq_min_hz: 1.0,
            freq_max_hz: 12.0,
            n_points: 551,
            gain_threshold: 5.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TimeHistorySection {
    pub frequency_hz: f64,
    pub pressures_bar: Vec<f64>,
    pub cycles: usize,
    pub steps_per_cycle: usize,
}

impl Default for TimeHistorySection {
    fn default() -> Self {
        Self {
            frequency_hz: 6.0,
            pressures_bar: vec![0.0, 0.8],
            cycles: 40,
            steps_per_cycle: 100,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnergySection {
    pub pressure_bar: f64,
    pub nodes: usize,
}

impl Default for EnergySection {
    fn default() -> Self {
        Self {
            pressure_bar: 0.8,
            nodes: DEFAULT_NODES,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CalibrateSection {
    pub input: Option<PathBuf>,
    pub fit_stiffness_scales: bool,
}

impl Default for CalibrateSection {
    fn default() -> Self {
        Self {
            input: None,
            fit_stiffness_scales: true,
        }
    }
}

/// Mass and damping read back from a calibration report.
#[derive(Debug, Clone, Deserialize)]
struct CalibrationFile {
    effective_mass_kg: f64,
    damping_ratio: f64,
}

/// Where the lumped mass and damping came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Default,
    Config,
    Calibrated,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Default => "default",
            Provenance::Config => "config",
            Provenance::Calibrated => "calibrated",
        }
    }
}

/// Validated experiment, all quantities SI.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub foil: FoilSpec,
    pub model: DynamicModel,
    pub mass_provenance: Provenance,
    pub damping_provenance: Provenance,
    pub static_pressures: Vec<Pressure>,
    pub moments: Vec<f64>,
    pub sweep_pressures: Vec<Pressure>,
    pub range: FrequencyRange,
    pub n_points: usize,
    pub threshold: f64,
    pub history_frequency_hz: f64,
    pub history_pressures: Vec<Pressure>,
    pub history_cycles: usize,
    pub history_steps_per_cycle: usize,
    pub energy_pressure: Pressure,
    pub energy_nodes: usize,
    pub calibration_input: Option<PathBuf>,
    pub fit_stiffness_scales: bool,
}

/// Command-line overrides applied on top of the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub threshold: Option<f64>,
    pub pressures_bar: Option<Vec<f64>>,
    pub input: Option<PathBuf>,
}

fn config_err(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{field}: {msg}"))
}

fn positive(field: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(config_err(field, format!("must be positive, got {v}")))
    }
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Validates every field and builds the SI experiment. `base_dir`
    /// resolves relative paths inside the file.
    pub fn into_experiment(self, overrides: &Overrides, base_dir: &Path) -> Result<Experiment, CliError> {
        if !self.run.deterministic {
            return Err(config_err("run.deterministic", "only deterministic runs are supported"));
        }
        let t = &self.tube;
        let tube = ElasticTube::new(
            mm(positive("tube.radius_mm", t.radius_mm)?),
            mm(positive("tube.wall_thickness_mm", t.wall_thickness_mm)?),
            mm(positive("tube.length_mm", t.length_mm)?),
            positive("tube.modulus_pa", t.modulus_pa)?,
        )
        .and_then(|tube| tube.with_p_max(t.p_max))
        .map_err(|e| config_err("tube", e))?;

        let f = &self.foil;
        let tail = TailSection {
            length: mm(positive("foil.tail_length_mm", f.tail_length_mm)?),
            width: mm(positive("foil.tail_width_mm", f.tail_width_mm)?),
            height: mm(positive("foil.tail_height_mm", f.tail_height_mm)?),
            modulus: positive("foil.silicone_modulus_pa", f.silicone_modulus_pa)?,
        };
        let mut foil = FoilSpec::new(tail, tube)
            .and_then(|foil| foil.with_nose_length(mm(f.nose_length_mm)))
            .map_err(|e| config_err("foil", e))?;
        if !(f.rolloff_angle_deg > 0.0 && f.rolloff_angle_deg < 90.0) {
            return Err(config_err("foil.rolloff_angle_deg", format!("must lie in (0, 90), got {}", f.rolloff_angle_deg)));
        }
        foil = foil.with_rolloff_angle(f.rolloff_angle_deg.to_radians()).map_err(|e| config_err("foil", e))?;
        if let Some(span) = f.support_span_mm {
            foil = foil
                .with_support_span(mm(positive("foil.support_span_mm", span)?))
                .map_err(|e| config_err("foil", e))?;
        }
        if let Some(i0) = f.nominal_i0_mm4 {
            foil = foil
                .with_nominal_i0(positive("foil.nominal_i0_mm4", i0)? * 1e-12)
                .map_err(|e| config_err("foil", e))?;
        }

        let d = &self.dynamics;
        let (mass, damping, mass_provenance, damping_provenance) = match &d.calibration {
            Some(path) => {
                if d.effective_mass_kg.is_some() || d.damping_ratio.is_some() {
                    return Err(config_err(
                        "dynamics.calibration",
                        "cannot be combined with effective_mass_kg or damping_ratio",
                    ));
                }
                let path = base_dir.join(path);
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    CliError::Input(format!("cannot read calibration {}: {e}", path.display()))
                })?;
                let cal: CalibrationFile = toml::from_str(&text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                (cal.effective_mass_kg, cal.damping_ratio, Provenance::Calibrated, Provenance::Calibrated)
            }
            None => (
                d.effective_mass_kg.unwrap_or(DEFAULT_EFFECTIVE_MASS),
                d.damping_ratio.unwrap_or(DEFAULT_DAMPING_RATIO),
                if d.effective_mass_kg.is_some() { Provenance::Config } else { Provenance::Default },
                if d.damping_ratio.is_some() { Provenance::Config } else { Provenance::Default },
            ),
        };
        let model = DynamicModel {
            effective_mass: mass,
            damping_ratio: damping,
            drive: match d.drive {
                DriveKind::ConstantForce => DriveMode::ConstantForce,
                DriveKind::BaseExcitation => DriveMode::BaseExcitation,
            },
            drive_amplitude: d.drive_amplitude_deg.to_radians(),
        };
        model.validate().map_err(|e| config_err("dynamics", e))?;

        let pressures = |field: &str, bars: &[f64]| -> Result<Vec<Pressure>, CliError> {
            let bars = overrides.pressures_bar.as_deref().unwrap_or(bars);
            if bars.is_empty() {
                return Err(config_err(field, "at least one pressure is required"));
            }
            let limit = foil.max_pressure();
            bars.iter()
                .map(|&b| {
                    let p = Pressure::from_bar(b);
                    if !(b.is_finite() && b >= 0.0) {
                        Err(config_err(field, format!("pressure must be non-negative, got {b} bar")))
                    } else if p > limit {
                        Err(config_err(
                            field,
                            format!("{b} bar exceeds the inflation validity limit of {} bar", limit.bar()),
                        ))
                    } else {
                        Ok(p)
                    }
                })
                .collect()
        };

        let s = &self.static_sweep;
        let static_pressures = pressures("static_sweep.pressures_bar", &s.pressures_bar)?;
        if s.moments_nm.is_empty() || s.moments_nm.iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
            return Err(config_err("static_sweep.moments_nm", "needs one or more non-negative moments"));
        }

        let fq = &self.freq_sweep;
        let sweep_pressures = pressures("freq_sweep.pressures_bar", &fq.pressures_bar)?;
        let mut distinct: Vec<f64> = sweep_pressures.iter().map(|p| p.pa()).collect();
        distinct.sort_by(f64::total_cmp);
        if distinct.windows(2).any(|w| w[0] == w[1]) {
            return Err(config_err("freq_sweep.pressures_bar", "pressures must be distinct"));
        }
        let range = FrequencyRange::new(fq.freq_min_hz, fq.freq_max_hz).map_err(|e| config_err("freq_sweep", e))?;
        if fq.n_points < FrequencyRange::MIN_POINTS {
            return Err(config_err(
                "freq_sweep.n_points",
                format!("must be at least {}, got {}", FrequencyRange::MIN_POINTS, fq.n_points),
            ));
        }
        let threshold = positive("freq_sweep.gain_threshold", overrides.threshold.unwrap_or(fq.gain_threshold))?;

        let th = &self.time_history;
        let (lo, hi) = FrequencyRange::VALIDITY;
        if !(th.frequency_hz >= lo && th.frequency_hz <= hi) {
            return Err(config_err(
                "time_history.frequency_hz",
                format!("must lie in [{lo}, {hi}] Hz, got {}", th.frequency_hz),
            ));
        }
        if (th.cycles as f64) < MIN_DRIVE_CYCLES {
            return Err(config_err("time_history.cycles", format!("must be at least {MIN_DRIVE_CYCLES}")));
        }
        if (th.steps_per_cycle as f64) < MIN_STEPS_PER_CYCLE {
            return Err(config_err(
                "time_history.steps_per_cycle",
                format!("must be at least {MIN_STEPS_PER_CYCLE}"),
            ));
        }
        let history_pressures = pressures("time_history.pressures_bar", &th.pressures_bar)?;

        let e = &self.energy;
        let energy_pressure = pressures("energy.pressure_bar", &[e.pressure_bar])?[0];
        if e.nodes < 3 || e.nodes % 2 == 0 {
            return Err(config_err("energy.nodes", format!("must be odd and at least 3, got {}", e.nodes)));
        }

        let calibration_input = overrides
            .input
            .clone()
            .or_else(|| self.calibrate.input.as_ref().map(|p| base_dir.join(p)));

        Ok(Experiment {
            foil,
            model,
            mass_provenance,
            damping_provenance,
            static_pressures,
            moments: s.moments_nm.clone(),
            sweep_pressures,
            range,
            n_points: fq.n_points,
            threshold,
            history_frequency_hz: th.frequency_hz,
            history_pressures,
            history_cycles: th.cycles,
            history_steps_per_cycle: th.steps_per_cycle,
            energy_pressure,
            energy_nodes: e.nodes,
            calibration_input,
            fit_stiffness_scales: self.calibrate.fit_stiffness_scales,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(text: &str) -> Result<Experiment, CliError> {
        RawConfig::parse(text)?.into_experiment(&Overrides::default(), Path::new("."))
    }

    #[test]
    fn empty_config_is_the_reference_experiment() {
        let exp = build("").unwrap();
        assert_eq!(exp.foil, FoilSpec::reference());
        assert_eq!(exp.static_pressures.len(), 9);
        assert_eq!(exp.sweep_pressures.len(), 4);
        assert_eq!(exp.mass_provenance, Provenance::Default);
        assert!((exp.model.drive_amplitude - 6f64.to_radians()).abs() < 1e-15);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = build("[foil]\ntail_lenght_mm = 120\n").unwrap_err();
        match err {
            CliError::Config(msg) => assert!(msg.contains("tail_lenght_mm"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_positive_fields_name_the_field() {
        let err = build("[tube]\nmodulus_pa = -1.0\n").unwrap_err();
        assert!(matches!(err, CliError::Config(ref m) if m.starts_with("tube.modulus_pa")), "{err:?}");
    }

    #[test]
    fn pressure_beyond_validity_is_a_config_error() {
        let err = build("[freq_sweep]\npressures_bar = [0.0, 9.0]\n").unwrap_err();
        assert!(matches!(err, CliError::Config(ref m) if m.contains("validity")));
    }

    #[test]
    fn overrides_apply() {
        let overrides = Overrides {
            threshold: Some(4.0),
            pressures_bar: Some(vec![0.1, 0.3]),
            input: None,
        };
        let exp = RawConfig::parse("").unwrap().into_experiment(&overrides, Path::new(".")).unwrap();
        assert_eq!(exp.threshold, 4.0);
        assert_eq!(exp.sweep_pressures, vec![Pressure::from_bar(0.1), Pressure::from_bar(0.3)]);
    }

    #[test]
    fn explicit_dynamics_are_marked_config() {
        let exp = build("[dynamics]\neffective_mass_kg = 0.005\ndrive = \"base-excitation\"\n").unwrap();
        assert_eq!(exp.mass_provenance, Provenance::Config);
        assert_eq!(exp.damping_provenance, Provenance::Default);
        assert_eq!(exp.model.drive, DriveMode::BaseExcitation);
        assert!(build("[dynamics]\ndrive = \"sideways\"\n").is_err());
    }

    #[test]
    fn nondeterministic_runs_rejected() {
        assert!(build("[run]\ndeterministic = false\n").is_err());
    }
}
