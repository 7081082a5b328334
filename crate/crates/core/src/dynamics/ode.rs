//! Fixed-step time integration of the forced oscillator.
//!
//! Classic fourth-order Runge-Kutta on the state `(x, v)`. The step is
//! shrunk so that a whole number of steps fits into one drive period; the
//! steady amplitude is then read off the final three periods by projecting
//! onto the drive harmonic, which is exact for a sampled sinusoid.

use super::{damped_gain, OscillatorParams, REFERENCE_FREQUENCY_HZ};
use crate::error::{FoilError, Result};
use crate::units::{hz_to_rad_s, rad_s_to_hz};

/// Minimum number of steps per drive period.
pub const MIN_STEPS_PER_CYCLE: f64 = 50.0;
/// Minimum simulated duration in drive periods.
pub const MIN_DRIVE_CYCLES: f64 = 10.0;
/// Cycles used for the steady-state amplitude.
const STEADY_CYCLES: usize = 3;
/// `w_n dt` above this is rejected; RK4 loses stability at `2 sqrt(2)`.
const MAX_NATURAL_STEP: f64 = 2.5;

/// Raw integrated trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub time: Vec<f64>,
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
}

fn rk4_step(p: &OscillatorParams, c: f64, t: f64, x: f64, v: f64, h: f64) -> (f64, f64) {
    let accel = |t: f64, x: f64, v: f64| (p.force_amplitude * (p.drive_omega * t).sin() - c * v - p.stiffness * x) / p.mass;
    let (k1x, k1v) = (v, accel(t, x, v));
    let (k2x, k2v) = (v + 0.5 * h * k1v, accel(t + 0.5 * h, x + 0.5 * h * k1x, v + 0.5 * h * k1v));
    let (k3x, k3v) = (v + 0.5 * h * k2v, accel(t + 0.5 * h, x + 0.5 * h * k2x, v + 0.5 * h * k2v));
    let (k4x, k4v) = (v + h * k3v, accel(t + h, x + h * k3x, v + h * k3v));
    (
        x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
        v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
    )
}

/// Integrates `steps` RK4 steps of size `dt` from `(x0, v0)` at `t = 0`.
pub fn simulate(params: &OscillatorParams, x0: f64, v0: f64, dt: f64, steps: usize) -> Result<Trajectory> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(FoilError::UnstableStep(format!("step must be positive, got {dt}")));
    }
    let wn_dt = params.natural_omega() * dt;
    if wn_dt > MAX_NATURAL_STEP {
        return Err(FoilError::UnstableStep(format!(
            "w_n dt = {wn_dt:.3} exceeds the RK4 limit {MAX_NATURAL_STEP}"
        )));
    }
    let c = params.damping_coefficient();
    let mut traj = Trajectory {
        time: Vec::with_capacity(steps + 1),
        position: Vec::with_capacity(steps + 1),
        velocity: Vec::with_capacity(steps + 1),
    };
    let (mut x, mut v) = (x0, v0);
    traj.time.push(0.0);
    traj.position.push(x);
    traj.velocity.push(v);
    for i in 0..steps {
        let t = i as f64 * dt;
        (x, v) = rk4_step(params, c, t, x, v, dt);
        if !(x.is_finite() && v.is_finite()) {
            return Err(FoilError::UnstableStep(format!("state diverged at t = {t} s")));
        }
        traj.time.push((i + 1) as f64 * dt);
        traj.position.push(x);
        traj.velocity.push(v);
    }
    Ok(traj)
}

/// Simulated tip history normalised by the 1 Hz amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeHistory {
    pub drive_frequency_hz: f64,
    /// Step actually used, a whole fraction of the drive period.
    pub dt: f64,
    pub time: Vec<f64>,
    pub deflection: Vec<f64>,
    /// `a / A0`; all zeros when the drive is zero.
    pub normalized: Vec<f64>,
    /// Peak-to-peak steady amplitude at 1 Hz for the same oscillator.
    pub a0: f64,
    /// Index of the first sample of the steady-state window.
    pub steady_start: usize,
    /// Steady peak-to-peak amplitude from the drive harmonic.
    pub steady_peak_to_peak: f64,
    /// Largest minus smallest sample in the steady-state window.
    pub steady_peak_to_peak_raw: f64,
}

/// Forced response from rest.
///
/// `dt` is an upper bound; it is reduced so that the drive period holds a
/// whole number of steps, and `duration` is rounded down to whole periods.
pub fn time_response(params: &OscillatorParams, duration: f64, dt: f64) -> Result<TimeHistory> {
    let omega = params.drive_omega;
    if omega <= 0.0 {
        return Err(FoilError::Precondition("time response needs a positive drive frequency".into()));
    }
    let period = 2.0 * std::f64::consts::PI / omega;
    if !(dt > 0.0 && dt <= period / MIN_STEPS_PER_CYCLE * (1.0 + 1e-12)) {
        return Err(FoilError::Precondition(format!(
            "dt = {dt} s gives fewer than {MIN_STEPS_PER_CYCLE} steps per drive period ({period} s)"
        )));
    }
    let cycles = (duration / period + 1e-9).floor();
    if cycles < MIN_DRIVE_CYCLES {
        return Err(FoilError::Precondition(format!(
            "duration {duration} s is shorter than {MIN_DRIVE_CYCLES} drive periods"
        )));
    }
    let per_cycle = (period / dt - 1e-9).ceil() as usize;
    let h = period / per_cycle as f64;
    let steps = cycles as usize * per_cycle;
    let traj = simulate(params, 0.0, 0.0, h, steps)?;

    let window = STEADY_CYCLES * per_cycle;
    let steady_start = steps - window;
    let (mut s, mut c) = (0.0, 0.0);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for j in steady_start..steps {
        let x = traj.position[j];
        let phase = omega * traj.time[j];
        s += x * phase.sin();
        c += x * phase.cos();
        lo = lo.min(x);
        hi = hi.max(x);
    }
    let amplitude = 2.0 / window as f64 * s.hypot(c);

    let w_n = params.natural_omega();
    let a0 = 2.0 * params.force_amplitude.abs() / params.stiffness
        * damped_gain(hz_to_rad_s(REFERENCE_FREQUENCY_HZ), w_n, params.damping_ratio)?;
    let normalized = if a0 > 0.0 {
        traj.position.iter().map(|x| x / a0).collect()
    } else {
        vec![0.0; traj.position.len()]
    };

    Ok(TimeHistory {
        drive_frequency_hz: rad_s_to_hz(omega),
        dt: h,
        time: traj.time,
        deflection: traj.position,
        normalized,
        a0,
        steady_start,
        steady_peak_to_peak: 2.0 * amplitude,
        steady_peak_to_peak_raw: hi - lo,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oscillator(zeta: f64, r: f64, force: f64) -> OscillatorParams {
        let (k, m) = (400.0, 1.0);
        OscillatorParams::new(k, m, zeta, force, r * 20.0).unwrap()
    }

    #[test]
    fn zero_force_stays_at_rest() {
        let p = oscillator(0.08, 0.9, 0.0);
        let period = 2.0 * std::f64::consts::PI / p.drive_omega;
        let h = time_response(&p, 12.0 * period, period / 60.0).unwrap();
        assert!(h.deflection.iter().all(|&x| x == 0.0));
        assert!(h.normalized.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn rejects_coarse_step_and_short_run() {
        let p = oscillator(0.08, 0.9, 1.0);
        let period = 2.0 * std::f64::consts::PI / p.drive_omega;
        assert!(matches!(time_response(&p, 20.0 * period, period / 10.0), Err(FoilError::Precondition(_))));
        assert!(matches!(time_response(&p, 5.0 * period, period / 100.0), Err(FoilError::Precondition(_))));
    }

    #[test]
    fn rejects_unstable_step() {
        // natural frequency far above the drive: 50 steps per drive period is too coarse
        let p = OscillatorParams::new(1e6, 1.0, 0.05, 1.0, 1.0).unwrap();
        let period = 2.0 * std::f64::consts::PI;
        assert!(matches!(time_response(&p, 10.0 * period, period / 50.0), Err(FoilError::UnstableStep(_))));
    }

    #[test]
    fn steady_amplitude_matches_frequency_response() {
        // oracle: steady state of the linear ODE is F/k * H(r) per unit amplitude
        let (zeta, r) = (0.08, 0.9);
        let p = oscillator(zeta, r, 1.0);
        let period = 2.0 * std::f64::consts::PI / p.drive_omega;
        let duration = (40.0 / (zeta * p.natural_omega()) / period).ceil() * period;
        let h = time_response(&p, duration, period / 100.0).unwrap();
        let expected = 2.0 / p.stiffness / ((1.0 - r * r).powi(2) + (2.0 * zeta * r).powi(2)).sqrt();
        assert!((h.steady_peak_to_peak - expected).abs() / expected < 1e-5, "{} vs {expected}", h.steady_peak_to_peak);
        assert!((h.steady_peak_to_peak_raw - expected).abs() / expected < 1e-2);
        assert_eq!(h.time.len(), h.normalized.len());
        assert!(h.steady_start < h.time.len());
    }

    #[test]
    fn undriven_energy_is_conserved() {
        let p = OscillatorParams::new(400.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        let period = 2.0 * std::f64::consts::PI / p.natural_omega();
        let steps = 500;
        let traj = simulate(&p, 0.01, 0.0, period / MIN_STEPS_PER_CYCLE, steps).unwrap();
        let e0 = p.mechanical_energy(0.01, 0.0);
        let e1 = p.mechanical_energy(*traj.position.last().unwrap(), *traj.velocity.last().unwrap());
        assert!((e1 - e0).abs() / e0 < 1e-3);
    }
}
