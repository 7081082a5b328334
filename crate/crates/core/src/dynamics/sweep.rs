//! Frequency sweeps, high-gain bands and the operational envelope.

use super::{DynamicModel, REFERENCE_FREQUENCY_HZ};
use crate::error::{FoilError, Result};
use crate::foil::FoilSpec;
use crate::units::Pressure;

/// Closed frequency interval in Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub low: f64,
    pub high: f64,
}

impl Band {
    pub fn width(&self) -> f64 {
        self.high - self.low
    }
}

/// Inclusive frequency range of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyRange {
    pub min_hz: f64,
    pub max_hz: f64,
}

impl FrequencyRange {
    /// Frequencies outside this window are rejected.
    pub const VALIDITY: (f64, f64) = (0.5, 20.0);
    pub const MIN_POINTS: usize = 20;

    pub fn new(min_hz: f64, max_hz: f64) -> Result<Self> {
        let (lo, hi) = Self::VALIDITY;
        if !(min_hz >= lo && max_hz <= hi && min_hz < max_hz) {
            return Err(FoilError::Domain(format!(
                "frequency range [{min_hz}, {max_hz}] Hz must be increasing and within [{lo}, {hi}] Hz"
            )));
        }
        Ok(Self { min_hz, max_hz })
    }

    pub fn grid(&self, n_points: usize) -> Vec<f64> {
        let step = (self.max_hz - self.min_hz) / (n_points - 1) as f64;
        (0..n_points)
            .map(|i| if i + 1 == n_points { self.max_hz } else { self.min_hz + step * i as f64 })
            .collect()
    }
}

/// Gain curve of one pressure.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub pressure: Pressure,
    pub natural_frequency_hz: f64,
    pub frequencies: Vec<f64>,
    /// `A / A0`.
    pub gains: Vec<f64>,
    /// Peak-to-peak tip amplitude at 1 Hz, metres.
    pub a0: f64,
    pub peak_index: usize,
    pub peak_frequency: f64,
    pub peak_gain: f64,
    /// The maximum lies strictly inside the grid, i.e. a first-mode peak was resolved below `f_max`.
    pub first_mode_peak: bool,
    pub threshold: f64,
    /// Contiguous band around the peak where the gain reaches the threshold.
    pub band: Option<Band>,
}

impl SweepResult {
    pub fn band_width(&self) -> f64 {
        self.band.map_or(0.0, |b| b.width())
    }
}

fn crossing(f0: f64, g0: f64, f1: f64, g1: f64, threshold: f64) -> f64 {
    f0 + (threshold - g0) * (f1 - f0) / (g1 - g0)
}

fn band_around(freqs: &[f64], gains: &[f64], peak: usize, threshold: f64) -> Option<Band> {
    if gains[peak] < threshold {
        return None;
    }
    let mut lo = peak;
    while lo > 0 && gains[lo - 1] >= threshold {
        lo -= 1;
    }
    let mut hi = peak;
    while hi + 1 < gains.len() && gains[hi + 1] >= threshold {
        hi += 1;
    }
    let low = if lo == 0 {
        freqs[0]
    } else {
        crossing(freqs[lo - 1], gains[lo - 1], freqs[lo], gains[lo], threshold)
    };
    let high = if hi + 1 == gains.len() {
        freqs[hi]
    } else {
        crossing(freqs[hi], gains[hi], freqs[hi + 1], gains[hi + 1], threshold)
    };
    Some(Band { low, high })
}

pub fn frequency_sweep(
    foil: &FoilSpec,
    model: &DynamicModel,
    pressure: Pressure,
    range: FrequencyRange,
    n_points: usize,
    threshold: f64,
) -> Result<SweepResult> {
    model.validate()?;
    if n_points < FrequencyRange::MIN_POINTS {
        return Err(FoilError::Precondition(format!(
            "a sweep needs at least {} points, got {n_points}",
            FrequencyRange::MIN_POINTS
        )));
    }
    let natural_hz = model.natural_frequency_hz(foil, pressure)?;
    let frequencies = range.grid(n_points);
    let gains = frequencies
        .iter()
        .map(|&f| model.normalized_gain(f, natural_hz))
        .collect::<Result<Vec<_>>>()?;

    // first maximum wins on ties
    let peak_index = gains
        .iter()
        .enumerate()
        .fold(0, |best, (i, &g)| if g > gains[best] { i } else { best });
    let w_n = crate::units::hz_to_rad_s(natural_hz);
    let a0 = 2.0
        * model.static_tip_amplitude(foil.span())
        * model.response(crate::units::hz_to_rad_s(REFERENCE_FREQUENCY_HZ), w_n)?;

    Ok(SweepResult {
        pressure,
        natural_frequency_hz: natural_hz,
        band: band_around(&frequencies, &gains, peak_index, threshold),
        peak_frequency: frequencies[peak_index],
        peak_gain: gains[peak_index],
        first_mode_peak: peak_index > 0 && peak_index + 1 < n_points,
        peak_index,
        frequencies,
        gains,
        a0,
        threshold,
    })
}

/// Merges bands into a sorted, non-overlapping interval set.
pub fn union_of(bands: impl IntoIterator<Item = Band>) -> Vec<Band> {
    let mut sorted: Vec<Band> = bands.into_iter().collect();
    sorted.sort_by(|a, b| a.low.total_cmp(&b.low).then(a.high.total_cmp(&b.high)));
    let mut merged: Vec<Band> = Vec::with_capacity(sorted.len());
    for band in sorted {
        match merged.last_mut() {
            Some(last) if band.low <= last.high => last.high = last.high.max(band.high),
            _ => merged.push(band),
        }
    }
    merged
}

/// High-gain bands of several pressures and their union.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    /// One sweep per pressure, in ascending pressure order.
    pub sweeps: Vec<SweepResult>,
    pub union: Vec<Band>,
}

impl Envelope {
    pub fn union_width(&self) -> f64 {
        self.union.iter().map(Band::width).sum()
    }

    pub fn max_band_width(&self) -> f64 {
        self.sweeps.iter().map(SweepResult::band_width).fold(0.0, f64::max)
    }

    /// Union width over the widest single band; 1 when no band exists.
    pub fn widening_ratio(&self) -> f64 {
        let max = self.max_band_width();
        if max > 0.0 {
            self.union_width() / max
        } else {
            1.0
        }
    }

    pub fn peaks_strictly_increasing(&self) -> bool {
        self.sweeps.windows(2).all(|w| w[1].peak_frequency > w[0].peak_frequency)
    }
}

pub fn operational_envelope(
    foil: &FoilSpec,
    model: &DynamicModel,
    pressures: &[Pressure],
    range: FrequencyRange,
    n_points: usize,
    threshold: f64,
) -> Result<Envelope> {
    if pressures.is_empty() {
        return Err(FoilError::Precondition("envelope needs at least one pressure".into()));
    }
    let mut sorted = pressures.to_vec();
    sorted.sort_by(|a, b| a.pa().total_cmp(&b.pa()));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(FoilError::Precondition("envelope pressures must be distinct".into()));
    }
    let sweeps = sorted
        .iter()
        .map(|&p| frequency_sweep(foil, model, p, range, n_points, threshold))
        .collect::<Result<Vec<_>>>()?;
    let union = union_of(sweeps.iter().filter_map(|s| s.band));
    Ok(Envelope { sweeps, union })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{damped_peak_ratio, DEFAULT_DAMPING_RATIO};
    use proptest::prelude::*;

    fn sweep(bar: f64) -> SweepResult {
        frequency_sweep(
            &FoilSpec::reference(),
            &DynamicModel::default(),
            Pressure::from_bar(bar),
            FrequencyRange::new(1.0, 12.0).unwrap(),
            1101,
            5.0,
        )
        .unwrap()
    }

    #[test]
    fn gain_is_one_at_reference_frequency() {
        let s = sweep(0.3);
        assert_eq!(s.frequencies[0], 1.0);
        assert_eq!(s.gains[0], 1.0);
    }

    #[test]
    fn peak_and_band() {
        let s = sweep(0.0);
        let analytic = s.natural_frequency_hz * damped_peak_ratio(DEFAULT_DAMPING_RATIO);
        assert!((s.peak_frequency - analytic).abs() <= 0.01 + 1e-12);
        assert!(s.peak_gain >= 5.0 && s.peak_gain <= 7.0);
        assert!(s.first_mode_peak);
        let band = s.band.unwrap();
        assert!(band.low < s.peak_frequency && s.peak_frequency < band.high);
        // about a tenth of the natural frequency at this damping
        assert!((band.width() - 0.1 * s.natural_frequency_hz).abs() < 0.1 * s.natural_frequency_hz * 0.3);
    }

    #[test]
    fn threshold_above_peak_gives_empty_band() {
        let s = frequency_sweep(
            &FoilSpec::reference(),
            &DynamicModel::default(),
            Pressure::ZERO,
            FrequencyRange::new(1.0, 12.0).unwrap(),
            200,
            50.0,
        )
        .unwrap();
        assert_eq!(s.band, None);
        assert_eq!(s.band_width(), 0.0);
    }

    #[test]
    fn band_reaching_the_grid_edge_is_clipped() {
        let f = [1.0, 2.0, 3.0, 4.0];
        let g = [1.0, 2.0, 6.0, 7.0];
        let b = band_around(&f, &g, 3, 5.0).unwrap();
        assert_eq!(b.high, 4.0);
        assert!((b.low - 2.75).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(FrequencyRange::new(0.1, 5.0).is_err());
        assert!(FrequencyRange::new(5.0, 25.0).is_err());
        assert!(FrequencyRange::new(5.0, 5.0).is_err());
        let r = frequency_sweep(
            &FoilSpec::reference(),
            &DynamicModel::default(),
            Pressure::ZERO,
            FrequencyRange::new(1.0, 12.0).unwrap(),
            10,
            5.0,
        );
        assert!(matches!(r, Err(FoilError::Precondition(_))));
    }

    #[test]
    fn single_pressure_envelope_equals_its_band() {
        let env = operational_envelope(
            &FoilSpec::reference(),
            &DynamicModel::default(),
            &[Pressure::from_bar(0.5)],
            FrequencyRange::new(1.0, 12.0).unwrap(),
            500,
            5.0,
        )
        .unwrap();
        assert_eq!(env.union, vec![env.sweeps[0].band.unwrap()]);
        assert_eq!(env.widening_ratio(), 1.0);
    }

    #[test]
    fn duplicate_pressures_rejected() {
        let r = operational_envelope(
            &FoilSpec::reference(),
            &DynamicModel::default(),
            &[Pressure::ZERO, Pressure::ZERO],
            FrequencyRange::new(1.0, 12.0).unwrap(),
            500,
            5.0,
        );
        assert!(r.is_err());
    }

    #[test]
    fn union_merges_overlaps() {
        let u = union_of([
            Band { low: 3.0, high: 4.0 },
            Band { low: 1.0, high: 2.0 },
            Band { low: 1.5, high: 2.5 },
        ]);
        assert_eq!(u, vec![Band { low: 1.0, high: 2.5 }, Band { low: 3.0, high: 4.0 }]);
    }

    proptest! {
        #[test]
        fn union_width_bounds(raw in proptest::collection::vec((0.0f64..10.0, 0.0f64..2.0), 1..8)) {
            let bands: Vec<Band> = raw.iter().map(|&(l, w)| Band { low: l, high: l + w }).collect();
            let u = union_of(bands.iter().copied());
            let width: f64 = u.iter().map(Band::width).sum();
            let max = bands.iter().map(Band::width).fold(0.0, f64::max);
            let total: f64 = bands.iter().map(Band::width).sum();
            prop_assert!(width >= max - 1e-12);
            prop_assert!(width <= total + 1e-12);
            prop_assert!(u.windows(2).all(|w| w[0].high < w[1].low));
            // adding a band never shrinks the union
            let fewer: f64 = union_of(bands[..bands.len() - 1].iter().copied()).iter().map(Band::width).sum();
            prop_assert!(width >= fewer - 1e-12);
        }
    }
}
