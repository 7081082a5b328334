//! Experiment runners behind the `softfoil` binary.
//!
//! Each subcommand renders one or more text artifacts. With `--out <dir>`
//! they are written to files; otherwise they go to stdout. Exit codes:
//! 0 success, 2 configuration error, 3 input-data error, 4 numeric failure.

pub mod config;
pub mod output;

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::analysis::{
    calibrate_dynamic_with, foil_inflation_energy, inflation_energy_with_nodes, CalibrationResult, DynamicCalibration,
    MeasuredGainCurve,
};
use crate::dynamics::{frequency_sweep, operational_envelope, time_response, DriveMode};
use crate::foil::{static_sweep, Rotation};
use crate::units::Pressure;
use crate::FoilError;

pub use config::{Experiment, Overrides, Provenance, RawConfig};
use output::{num, opt_num, quoted, Document};

/// Header of the measured gain-curve CSV.
pub const GAIN_CURVE_HEADER: [&str; 3] = ["pressure_bar", "frequency_hz", "gain"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("numeric failure: {0}")]
    Numeric(#[from] FoilError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Input(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "softfoil", version, about = "Pressure-tunable soft foil: static, dynamic and energy experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Experiment configuration (TOML); built-in defaults when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for output files; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Gain threshold of the high-gain band.
    #[arg(long, global = true)]
    pub threshold: Option<f64>,
    /// Comma-separated pressures in bar, replacing every pressure list of the config.
    #[arg(long, global = true, value_delimiter = ',')]
    pub pressures: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Moment/angle test over the pressure grid.
    StaticSweep,
    /// Normalised gain curves per pressure.
    FreqSweep,
    /// High-gain bands, their union and the widening ratio.
    Envelope,
    /// Inflation work of the tubes.
    Energy,
    /// Simulated tip history per pressure.
    TimeHistory,
    /// Fit effective mass and damping to measured gain curves.
    Calibrate {
        /// Gain-curve CSV; overrides `calibrate.input`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

/// One rendered output file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub file_name: String,
    pub contents: String,
}

/// Loads and validates the configuration named by the common flags.
pub fn load_experiment(common: &CommonArgs, input: Option<PathBuf>) -> Result<Experiment, CliError> {
    let overrides = Overrides {
        threshold: common.threshold,
        pressures_bar: common.pressures.clone(),
        input,
    };
    match &common.config {
        Some(path) => {
            let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
            RawConfig::load(path)?.into_experiment(&overrides, &base)
        }
        None => RawConfig::default().into_experiment(&overrides, Path::new(".")),
    }
}

pub fn execute(command: &Command, experiment: &Experiment) -> Result<Vec<Artifact>, CliError> {
    Ok(match command {
        Command::StaticSweep => vec![render_static_sweep(experiment)?],
        Command::FreqSweep => vec![render_freq_sweep(experiment)?],
        Command::Envelope => vec![render_envelope(experiment)?],
        Command::Energy => vec![render_energy(experiment)?],
        Command::TimeHistory => render_time_histories(experiment)?,
        Command::Calibrate { .. } => vec![render_calibration(experiment)?],
    })
}

/// Parses arguments, runs the command and writes its artifacts. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let input = match &cli.command {
        Command::Calibrate { input } => input.clone(),
        _ => None,
    };
    let result = load_experiment(&cli.common, input)
        .and_then(|exp| execute(&cli.command, &exp))
        .and_then(|artifacts| write_artifacts(&artifacts, cli.common.out.as_deref()));
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("softfoil: {e}");
            e.exit_code()
        }
    }
}

fn write_artifacts(artifacts: &[Artifact], out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::Input(format!("cannot create output directory {}: {e}", dir.display())))?;
            for a in artifacts {
                let path = dir.join(&a.file_name);
                std::fs::write(&path, &a.contents)
                    .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            for a in artifacts {
                stdout
                    .write_all(a.contents.as_bytes())
                    .map_err(|e| CliError::Input(format!("cannot write to stdout: {e}")))?;
            }
        }
    }
    Ok(())
}

fn drive_name(mode: DriveMode) -> &'static str {
    match mode {
        DriveMode::ConstantForce => "constant-force",
        DriveMode::BaseExcitation => "base-excitation",
    }
}

fn model_comments(doc: &mut Document, exp: &Experiment) {
    doc.comment(format!(
        "effective_mass_kg={} ({})",
        num(exp.model.effective_mass),
        exp.mass_provenance.name()
    ))
    .comment(format!(
        "damping_ratio={} ({})",
        num(exp.model.damping_ratio),
        exp.damping_provenance.name()
    ))
    .comment(format!(
        "drive={} amplitude_deg_pp={}",
        drive_name(exp.model.drive),
        num(exp.model.drive_amplitude.to_degrees())
    ));
}

pub fn render_static_sweep(exp: &Experiment) -> Result<Artifact, CliError> {
    let rows = static_sweep(&exp.foil, &exp.static_pressures, &exp.moments)?;
    let mut doc = Document::default();
    doc.comment("softfoil static-sweep")
        .comment(format!("span_m={} nominal_i0_m4={}", num(exp.foil.span()), num(exp.foil.nominal_i0())))
        .comment(format!("rolloff_angle_deg={}", num(exp.foil.rolloff_angle().to_degrees())))
        .row(["pressure_bar", "moment_nm", "theta_rad", "e_eff_pa", "rolloff_flag"]);
    for r in rows {
        let (theta, flag) = match r.rotation {
            Rotation::Supported(theta) => (num(theta), "0"),
            Rotation::RolledOff { .. } => (String::new(), "1"),
        };
        doc.row([
            num(r.pressure.bar()),
            num(r.moment),
            theta,
            opt_num(r.effective_stiffness),
            flag.to_string(),
        ]);
    }
    Ok(Artifact {
        file_name: "static_sweep.csv".into(),
        contents: doc.finish(),
    })
}

pub fn render_freq_sweep(exp: &Experiment) -> Result<Artifact, CliError> {
    let mut doc = Document::default();
    doc.comment("softfoil freq-sweep");
    model_comments(&mut doc, exp);
    doc.comment(format!("gain_threshold={}", num(exp.threshold)))
        .row(["pressure_bar", "frequency_hz", "gain", "peak_flag", "band_low_hz", "band_high_hz"]);
    for &p in &exp.sweep_pressures {
        let s = frequency_sweep(&exp.foil, &exp.model, p, exp.range, exp.n_points, exp.threshold)?;
        let (lo, hi) = (opt_num(s.band.map(|b| b.low)), opt_num(s.band.map(|b| b.high)));
        for (i, (&f, &g)) in s.frequencies.iter().zip(&s.gains).enumerate() {
            let peak = if i == s.peak_index { "1" } else { "0" };
            doc.row([num(p.bar()), num(f), num(g), peak.to_string(), lo.clone(), hi.clone()]);
        }
    }
    Ok(Artifact {
        file_name: "freq_sweep.csv".into(),
        contents: doc.finish(),
    })
}

pub fn render_envelope(exp: &Experiment) -> Result<Artifact, CliError> {
    let env = operational_envelope(&exp.foil, &exp.model, &exp.sweep_pressures, exp.range, exp.n_points, exp.threshold)?;
    let mut doc = Document::default();
    doc.comment("softfoil envelope");
    model_comments(&mut doc, exp);
    doc.key("gain_threshold", num(exp.threshold))
        .key("union_width_hz", num(env.union_width()))
        .key("max_band_width_hz", num(env.max_band_width()))
        .key("ratio", num(env.widening_ratio()))
        .key("peaks_strictly_increasing", env.peaks_strictly_increasing().to_string());
    for s in &env.sweeps {
        doc.line("").line("[[band]]");
        doc.key("pressure_bar", num(s.pressure.bar()))
            .key("natural_frequency_hz", num(s.natural_frequency_hz))
            .key("peak_hz", num(s.peak_frequency))
            .key("peak_gain", num(s.peak_gain))
            .key("first_mode_peak", s.first_mode_peak.to_string())
            .key("width_hz", num(s.band_width()));
        if let Some(b) = s.band {
            doc.key("low_hz", num(b.low)).key("high_hz", num(b.high));
        }
    }
    for b in &env.union {
        doc.line("").line("[[union]]");
        doc.key("low_hz", num(b.low)).key("high_hz", num(b.high));
    }
    Ok(Artifact {
        file_name: "envelope.toml".into(),
        contents: doc.finish(),
    })
}

pub fn render_energy(exp: &Experiment) -> Result<Artifact, CliError> {
    let report = foil_inflation_energy(&exp.foil, exp.energy_pressure)?;
    let per_tube = inflation_energy_with_nodes(exp.foil.tube(), exp.energy_pressure, exp.energy_nodes)?;
    let total = per_tube * report.tube_count as f64;
    let mut doc = Document::default();
    doc.comment("softfoil energy")
        .key("pressure_bar", num(exp.energy_pressure.bar()))
        .key("quadrature_nodes", exp.energy_nodes.to_string())
        .key("tube_count", report.tube_count.to_string())
        .key("per_tube_j", num(per_tube))
        .key("total_j", num(total))
        .key(
            "assumptions",
            format!(
                "[{}]",
                report.assumptions.iter().map(|a| quoted(a)).collect::<Vec<_>>().join(", ")
            ),
        );
    Ok(Artifact {
        file_name: "energy.toml".into(),
        contents: doc.finish(),
    })
}

pub fn render_time_histories(exp: &Experiment) -> Result<Vec<Artifact>, CliError> {
    exp.history_pressures
        .iter()
        .map(|&p| {
            let params = exp.model.oscillator(&exp.foil, p, exp.history_frequency_hz)?;
            let period = 1.0 / exp.history_frequency_hz;
            let h = time_response(
                &params,
                exp.history_cycles as f64 * period,
                period / exp.history_steps_per_cycle as f64,
            )?;
            let mut doc = Document::default();
            doc.comment("softfoil time-history")
                .comment(format!("pressure_bar={}", num(p.bar())))
                .comment(format!("drive_frequency_hz={}", num(h.drive_frequency_hz)));
            model_comments(&mut doc, exp);
            doc.comment(format!("a0_m={}", num(h.a0)))
                .comment(format!("steady_peak_to_peak_norm={}", num(h.steady_peak_to_peak / h.a0)))
                .comment(format!("steady_start_s={}", num(h.time[h.steady_start])))
                .row(["t_s", "a_norm"]);
            for (t, a) in h.time.iter().zip(&h.normalized) {
                doc.row([num(*t), num(*a)]);
            }
            Ok(Artifact {
                file_name: format!("time_history_{}bar.csv", num(p.bar())),
                contents: doc.finish(),
            })
        })
        .collect()
}

/// Reads gain curves from CSV with a `pressure_bar,frequency_hz,gain` header.
///
/// Extra columns are ignored and `#` lines are comments, so a `freq-sweep`
/// output file reads back as calibration input. Curves keep the order in
/// which their pressure first appears.
pub fn read_gain_curves(path: &Path) -> Result<Vec<MeasuredGainCurve>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_gain_curves(&text).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_gain_curves(text: &str) -> Result<Vec<MeasuredGainCurve>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| CliError::Input(e.to_string()))?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Input(format!("missing column `{name}`")))
    };
    let cols = [column(GAIN_CURVE_HEADER[0])?, column(GAIN_CURVE_HEADER[1])?, column(GAIN_CURVE_HEADER[2])?];

    let mut order: Vec<u64> = Vec::new();
    let mut grouped: BTreeMap<u64, Vec<(f64, f64)>> = BTreeMap::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Input(e.to_string()))?;
        let field = |i: usize| -> Result<f64, CliError> {
            let raw = record.get(cols[i]).unwrap_or("");
            raw.parse::<f64>().map_err(|_| {
                CliError::Input(format!("record {}: `{}` is not a number: `{raw}`", line + 1, GAIN_CURVE_HEADER[i]))
            })
        };
        let (bar, f, g) = (field(0)?, field(1)?, field(2)?);
        let key = bar.to_bits();
        if !grouped.contains_key(&key) {
            order.push(key);
        }
        grouped.entry(key).or_default().push((f, g));
    }
    if order.is_empty() {
        return Err(CliError::Input("no gain samples".into()));
    }
    order
        .into_iter()
        .map(|key| {
            let samples = grouped.remove(&key).expect("grouped by key");
            MeasuredGainCurve::new(Pressure::from_bar(f64::from_bits(key)), samples)
                .map_err(|e| CliError::Input(e.to_string()))
        })
        .collect()
}

pub fn render_calibration_report(result: &CalibrationResult, drive: DriveMode) -> String {
    let mut doc = Document::default();
    doc.comment("softfoil calibration")
        .key("effective_mass_kg", num(result.effective_mass))
        .key("damping_ratio", num(result.damping_ratio))
        .key("residual_rms", num(result.residual_rms))
        .key("iterations", result.iterations.to_string())
        .key("drive", quoted(drive_name(drive)));
    for (p, s) in &result.stiffness_scales {
        doc.line("").line("[[stiffness_scale]]");
        doc.key("pressure_bar", num(p.bar())).key("scale", num(*s));
    }
    doc.finish()
}

pub fn render_calibration(exp: &Experiment) -> Result<Artifact, CliError> {
    let path = exp
        .calibration_input
        .as_ref()
        .ok_or_else(|| CliError::Config("calibrate.input: no gain-curve CSV given (use --input)".into()))?;
    let curves = read_gain_curves(path)?;
    let options = DynamicCalibration {
        fit_stiffness_scales: exp.fit_stiffness_scales,
        drive: exp.model.drive,
        ..DynamicCalibration::default()
    };
    let result = calibrate_dynamic_with(&curves, &exp.foil, options).map_err(|e| match e {
        FoilError::Precondition(msg) => CliError::Input(msg),
        other => CliError::Numeric(other),
    })?;
    Ok(Artifact {
        file_name: "calibration.toml".into(),
        contents: render_calibration_report(&result, exp.model.drive),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_experiment() -> Experiment {
        load_experiment(
            &CommonArgs {
                config: None,
                out: None,
                threshold: None,
                pressures: None,
            },
            None,
        )
        .unwrap()
    }

    #[test]
    fn static_sweep_has_nine_series_and_blank_singular_rows() {
        let a = render_static_sweep(&default_experiment()).unwrap();
        let data: Vec<&str> = a.contents.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data[0], "pressure_bar,moment_nm,theta_rad,e_eff_pa,rolloff_flag");
        let mut pressures: Vec<&str> = data[1..].iter().map(|l| l.split(',').next().unwrap()).collect();
        pressures.dedup();
        assert_eq!(pressures.len(), 9);
        assert_eq!(data[1], "0.0,0.0,0.0,,0");
        assert!(data.iter().any(|l| l.ends_with(",,,1")));
    }

    #[test]
    fn freq_sweep_is_self_normalised() {
        let a = render_freq_sweep(&default_experiment()).unwrap();
        assert!(a.contents.contains("# effective_mass_kg=0.0038 (default)"));
        let ones = a.contents.lines().filter(|l| l.contains(",1.0,1.0,")).count();
        assert_eq!(ones, 4);
    }

    #[test]
    fn sweep_output_reads_back_as_calibration_input() {
        let a = render_freq_sweep(&default_experiment()).unwrap();
        let curves = parse_gain_curves(&a.contents).unwrap();
        assert_eq!(curves.len(), 4);
        assert_eq!(curves[1].pressure(), Pressure::from_bar(0.2));
    }

    #[test]
    fn gain_csv_errors() {
        assert!(matches!(parse_gain_curves("a,b\n1,2\n"), Err(CliError::Input(_))));
        assert!(matches!(
            parse_gain_curves("pressure_bar,frequency_hz,gain\n0,x,1\n"),
            Err(CliError::Input(_))
        ));
        assert!(matches!(parse_gain_curves("pressure_bar,frequency_hz,gain\n"), Err(CliError::Input(_))));
    }

    #[test]
    fn missing_calibration_input_is_an_input_error() {
        let mut exp = default_experiment();
        exp.calibration_input = Some(PathBuf::from("/nonexistent/curves.csv"));
        let err = render_calibration(&exp).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("/nonexistent/curves.csv"));
    }

    #[test]
    fn envelope_and_energy_reports_parse_as_toml() {
        let exp = default_experiment();
        let env: toml::Value = toml::from_str(&render_envelope(&exp).unwrap().contents).unwrap();
        assert!(env["ratio"].as_float().unwrap() >= 1.0);
        assert_eq!(env["band"].as_array().unwrap().len(), 4);
        let energy: toml::Value = toml::from_str(&render_energy(&exp).unwrap().contents).unwrap();
        let total = energy["total_j"].as_float().unwrap();
        assert!((1.0..=4.0).contains(&total));
    }
}
