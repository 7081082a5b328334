//! Composite bending stiffness of the foil and the static moment/angle test.
//!
//! The tail is a silicone block with two tube holes. The tubes sit on the
//! tail midplane, so stiffnesses add about a shared neutral axis:
//!
//! ```text
//! EI(P) = E_s I_silicone + 2 E_tube I_tube(p)
//! ```
//!
//! The silicone section is the solid rectangle minus the two holes at rest
//! radius; the hole growth under inflation is ignored for the silicone term.
//!
//! The static test is mapped onto a cantilever: a moment `M` about the nose
//! axis is an effective tip load `F = M / L`, and the rotation `theta` a tip
//! deflection `A = L sin(theta)`.

use std::f64::consts::PI;

use crate::error::{ensure, FoilError, Result};
use crate::tube::{inflate, ElasticTube};
use crate::units::{mm, Pressure};

/// Default roll-off angle of the static test, in degrees.
pub const DEFAULT_ROLLOFF_DEG: f64 = 60.0;

/// Silicone tail block. Lengths in metres, modulus in pascals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSection {
    pub length: f64,
    pub width: f64,
    pub height: f64,
    pub modulus: f64,
}

/// The tunable-stiffness foil: silicone tail, rigid nose, two identical tubes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoilSpec {
    tail: TailSection,
    nose_length: f64,
    tube: ElasticTube,
    nominal_i0: Option<f64>,
    support_span: Option<f64>,
    rolloff_angle: f64,
}

impl FoilSpec {
    pub const TUBE_COUNT: f64 = 2.0;

    pub fn new(tail: TailSection, tube: ElasticTube) -> Result<Self> {
        for (name, v) in [
            ("tail length", tail.length),
            ("tail width", tail.width),
            ("tail height", tail.height),
            ("silicone modulus", tail.modulus),
        ] {
            ensure(v.is_finite() && v > 0.0, || format!("{name} must be positive, got {v}"))?;
        }
        ensure(2.0 * tube.resting_radius() < tail.height, || {
            format!(
                "tube diameter {} m does not fit in tail height {} m",
                2.0 * tube.resting_radius(),
                tail.height
            )
        })?;
        let foil = Self {
            tail,
            nose_length: 0.0,
            tube,
            nominal_i0: None,
            support_span: None,
            rolloff_angle: DEFAULT_ROLLOFF_DEG.to_radians(),
        };
        ensure(foil.silicone_second_moment() > 0.0, || "tube holes remove the whole silicone section".into())?;
        Ok(foil)
    }

    /// Table geometry of the demonstrator foil with calibrated moduli.
    ///
    /// Tail 140 mm chord, 120 mm span, 30 mm thick; tubes 7.5 mm radius,
    /// 1 mm wall, 110 mm long. The tube modulus of 1 MPa puts 0.8 bar at
    /// `p = 0.6`, and the silicone modulus is chosen so that the composite
    /// stiffness doubles between 0 and 0.8 bar.
    pub fn reference() -> Self {
        let tube = ElasticTube::new(mm(7.5), mm(1.0), mm(110.0), 1.0e6).expect("reference tube is valid");
        let tail = TailSection {
            length: mm(140.0),
            width: mm(120.0),
            height: mm(30.0),
            modulus: 5.6e3,
        };
        FoilSpec::new(tail, tube)
            .and_then(|f| f.with_nose_length(mm(80.0)))
            .expect("reference foil is valid")
    }

    pub fn with_nose_length(mut self, nose_length: f64) -> Result<Self> {
        ensure(nose_length >= 0.0, || format!("nose length must be non-negative, got {nose_length}"))?;
        self.nose_length = nose_length;
        Ok(self)
    }

    pub fn with_nominal_i0(mut self, i0: f64) -> Result<Self> {
        ensure(i0.is_finite() && i0 > 0.0, || format!("nominal I0 must be positive, got {i0}"))?;
        self.nominal_i0 = Some(i0);
        Ok(self)
    }

    pub fn with_support_span(mut self, span: f64) -> Result<Self> {
        ensure(span.is_finite() && span > 0.0, || format!("support span must be positive, got {span}"))?;
        self.support_span = Some(span);
        Ok(self)
    }

    pub fn with_rolloff_angle(mut self, radians: f64) -> Result<Self> {
        ensure(radians > 0.0 && radians < PI / 2.0, || format!("roll-off angle must lie in (0, 90) deg, got {} deg", radians.to_degrees()))?;
        self.rolloff_angle = radians;
        Ok(self)
    }

    pub fn with_silicone_modulus(mut self, modulus: f64) -> Result<Self> {
        ensure(modulus.is_finite() && modulus > 0.0, || format!("silicone modulus must be positive, got {modulus}"))?;
        self.tail.modulus = modulus;
        Ok(self)
    }

    pub fn with_tube_modulus(mut self, modulus: f64) -> Result<Self> {
        self.tube = self.tube.with_modulus(modulus)?;
        Ok(self)
    }

    pub fn with_p_max(mut self, p_max: f64) -> Result<Self> {
        self.tube = self.tube.with_p_max(p_max)?;
        Ok(self)
    }

    pub fn tail(&self) -> &TailSection {
        &self.tail
    }

    pub fn tube(&self) -> &ElasticTube {
        &self.tube
    }

    pub fn nose_length(&self) -> f64 {
        self.nose_length
    }

    pub fn rolloff_angle(&self) -> f64 {
        self.rolloff_angle
    }

    /// Beam length used by the cantilever mapping; the tail length unless overridden.
    pub fn span(&self) -> f64 {
        self.support_span.unwrap_or(self.tail.length)
    }

    /// Silicone rectangle minus the two tube holes at rest radius.
    pub fn silicone_second_moment(&self) -> f64 {
        let rect = self.tail.width * self.tail.height.powi(3) / 12.0;
        let hole = PI * self.tube.resting_radius().powi(4) / 4.0;
        rect - Self::TUBE_COUNT * hole
    }

    /// Nominal second moment used to normalise the effective stiffness.
    ///
    /// Defaults to the purely geometric rest-state composite section.
    pub fn nominal_i0(&self) -> f64 {
        self.nominal_i0
            .unwrap_or_else(|| self.silicone_second_moment() + Self::TUBE_COUNT * self.tube.resting_second_moment())
    }

    /// Gauge pressure at which the tubes reach their validity limit.
    pub fn max_pressure(&self) -> Pressure {
        self.tube.max_pressure()
    }
}

/// Bending stiffness of the two tubes alone at a given pressure.
pub fn tube_ei(foil: &FoilSpec, pressure: Pressure) -> Result<f64> {
    let state = inflate(foil.tube(), pressure)?;
    Ok(FoilSpec::TUBE_COUNT * foil.tube().modulus() * state.second_moment)
}

/// `EI_total = E_s I_silicone + 2 E_tube I_tube(p)` in N m^2.
pub fn composite_ei(foil: &FoilSpec, pressure: Pressure) -> Result<f64> {
    Ok(foil.tail.modulus * foil.silicone_second_moment() + tube_ei(foil, pressure)?)
}

/// Cantilever tip stiffness `3 EI / L^3` in N/m.
pub fn tip_stiffness(foil: &FoilSpec, pressure: Pressure) -> Result<f64> {
    Ok(3.0 * composite_ei(foil, pressure)? / foil.span().powi(3))
}

/// `A = F L^3 / (3 EI)`.
pub fn tip_deflection(load: f64, length: f64, ei: f64) -> Result<f64> {
    ensure(length > 0.0, || format!("beam length must be positive, got {length}"))?;
    ensure(ei > 0.0, || format!("bending stiffness must be positive, got {ei}"))?;
    Ok(load * length.powi(3) / (3.0 * ei))
}

/// A single moment/angle reading of the static test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticLoadCase {
    pub moment: f64,
    pub rotation: f64,
}

/// `E_eff = M L / (3 I0 sin(theta))`.
pub fn effective_stiffness(moment: f64, length: f64, rotation: f64, i0: f64) -> Result<f64> {
    ensure(rotation > 0.0 && rotation < PI / 2.0, || {
        format!("rotation must lie in (0, pi/2) for the effective stiffness, got {rotation} rad")
    })?;
    ensure(moment > 0.0, || format!("applied moment must be positive, got {moment}"))?;
    ensure(length > 0.0 && i0 > 0.0, || format!("length and I0 must be positive, got L={length}, I0={i0}"))?;
    Ok(moment * length / (3.0 * i0 * rotation.sin()))
}

impl StaticLoadCase {
    pub fn effective_stiffness(&self, foil: &FoilSpec) -> Result<f64> {
        effective_stiffness(self.moment, foil.span(), self.rotation, foil.nominal_i0())
    }
}

/// Predicted outcome of one static load step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rotation {
    Supported(f64),
    /// The tail would slide off the rear support; `sin_demand = A / L`.
    RolledOff { sin_demand: f64 },
}

impl Rotation {
    pub fn angle(&self) -> Option<f64> {
        match *self {
            Rotation::Supported(theta) => Some(theta),
            Rotation::RolledOff { .. } => None,
        }
    }

    pub fn rolled_off(&self) -> bool {
        matches!(self, Rotation::RolledOff { .. })
    }
}

/// Forward model of the static test: rotation produced by moment `M` at pressure `P`.
pub fn predict_rotation(foil: &FoilSpec, pressure: Pressure, moment: f64) -> Result<Rotation> {
    ensure(moment.is_finite() && moment >= 0.0, || format!("applied moment must be non-negative, got {moment}"))?;
    let span = foil.span();
    let ei = composite_ei(foil, pressure)?;
    let deflection = tip_deflection(moment / span, span, ei)?;
    let sin_demand = deflection / span;
    if sin_demand >= foil.rolloff_angle.sin() {
        return Ok(Rotation::RolledOff { sin_demand });
    }
    Ok(Rotation::Supported(sin_demand.asin()))
}

/// One point of an effective-stiffness curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StiffnessCurvePoint {
    pub pressure: Pressure,
    pub moment: f64,
    pub effective_stiffness: f64,
}

impl StiffnessCurvePoint {
    pub fn new(pressure: Pressure, moment: f64, effective_stiffness: f64) -> Result<Self> {
        if !(effective_stiffness.is_finite() && effective_stiffness > 0.0) {
            return Err(FoilError::Domain(format!(
                "effective stiffness must be positive, got {effective_stiffness}"
            )));
        }
        Ok(Self {
            pressure,
            moment,
            effective_stiffness,
        })
    }
}

/// One row of a simulated static sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticSample {
    pub pressure: Pressure,
    pub moment: f64,
    pub rotation: Rotation,
    /// `None` for a zero moment (singular) or after roll-off.
    pub effective_stiffness: Option<f64>,
}

/// Simulated static test over a pressure grid and a moment grid.
///
/// Rows are ordered by pressure, then by moment, in the order given.
pub fn static_sweep(foil: &FoilSpec, pressures: &[Pressure], moments: &[f64]) -> Result<Vec<StaticSample>> {
    let mut rows = Vec::with_capacity(pressures.len() * moments.len());
    for &pressure in pressures {
        for &moment in moments {
            let rotation = predict_rotation(foil, pressure, moment)?;
            let effective_stiffness = match rotation {
                Rotation::Supported(theta) if theta > 0.0 && moment > 0.0 => {
                    Some(effective_stiffness(moment, foil.span(), theta, foil.nominal_i0())?)
                }
                _ => None,
            };
            rows.push(StaticSample {
                pressure,
                moment,
                rotation,
                effective_stiffness,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tube::stiffness_ratio;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn rest_state_composite() {
        let foil = FoilSpec::reference();
        let t = foil.tube();
        let expected = foil.tail().modulus * foil.silicone_second_moment()
            + 2.0 * t.modulus() * PI * t.resting_radius().powi(3) * t.resting_thickness();
        assert_relative_eq!(composite_ei(&foil, Pressure::ZERO).unwrap(), expected, max_relative = 1e-14);
    }

    #[test]
    fn tube_contribution_quadruples_at_unit_p() {
        let foil = FoilSpec::reference();
        let rest = tube_ei(&foil, Pressure::ZERO).unwrap();
        let inflated = tube_ei(&foil, foil.tube().pressure_for(1.0)).unwrap();
        assert_relative_eq!(inflated / rest, 4.0, max_relative = 1e-13);
    }

    #[test]
    fn reference_foil_doubles_at_08_bar() {
        let foil = FoilSpec::reference();
        let ratio = composite_ei(&foil, Pressure::from_bar(0.8)).unwrap() / composite_ei(&foil, Pressure::ZERO).unwrap();
        assert!(ratio >= 2.0 && ratio < 2.02, "ratio {ratio}");
    }

    #[test]
    fn tip_deflection_examples() {
        assert_eq!(tip_deflection(0.0, 1.0, 1.0).unwrap(), 0.0);
        assert_relative_eq!(tip_deflection(3.0, 1.0, 1.0).unwrap(), 1.0);
        assert_relative_eq!(tip_deflection(3.0, 1.0, 0.5).unwrap(), 2.0);
        assert!(tip_deflection(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn effective_stiffness_examples() {
        assert_relative_eq!(effective_stiffness(3.0, 1.0, PI / 2.0 - 1e-12, 1.0).unwrap(), 1.0, max_relative = 1e-12);
        let small = effective_stiffness(1.0, 1.0, 1e-9, 1.0).unwrap();
        assert!(small > 1e8);
        assert!(effective_stiffness(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(effective_stiffness(1.0, 1.0, -0.1, 1.0).is_err());
    }

    #[test]
    fn rotation_round_trip_recovers_effective_stiffness() {
        let foil = FoilSpec::reference();
        for bar in [0.0, 0.3, 0.8] {
            let p = Pressure::from_bar(bar);
            let theta = predict_rotation(&foil, p, 0.004).unwrap().angle().unwrap();
            assert!(theta < 10f64.to_radians());
            let e_eff = effective_stiffness(0.004, foil.span(), theta, foil.nominal_i0()).unwrap();
            let expected = composite_ei(&foil, p).unwrap() / foil.nominal_i0();
            assert_relative_eq!(e_eff, expected, max_relative = 1e-9);
        }
    }

    #[test]
    fn zero_moment_gives_zero_rotation() {
        let foil = FoilSpec::reference();
        assert_eq!(predict_rotation(&foil, Pressure::ZERO, 0.0).unwrap(), Rotation::Supported(0.0));
    }

    #[test]
    fn large_moment_rolls_off() {
        let foil = FoilSpec::reference();
        let r = predict_rotation(&foil, Pressure::ZERO, 0.5).unwrap();
        assert!(r.rolled_off());
        let stiffer = foil.with_rolloff_angle(80f64.to_radians()).unwrap();
        let m = 0.9 * 3.0 * composite_ei(&foil, Pressure::ZERO).unwrap() / foil.span();
        assert!(predict_rotation(&foil, Pressure::ZERO, m).unwrap().rolled_off());
        assert!(!predict_rotation(&stiffer, Pressure::ZERO, m).unwrap().rolled_off());
    }

    #[test]
    fn static_sweep_curves_ordered_by_pressure() {
        let foil = FoilSpec::reference();
        let pressures: Vec<_> = (0..=8).map(|i| Pressure::from_bar(0.1 * i as f64)).collect();
        let moments: Vec<_> = (1..=10).map(|i| 0.005 * i as f64).collect();
        let rows = static_sweep(&foil, &pressures, &moments).unwrap();
        assert_eq!(rows.len(), 90);
        for (j, _) in moments.iter().enumerate() {
            let column: Vec<_> = (0..pressures.len())
                .filter_map(|i| rows[i * moments.len() + j].effective_stiffness)
                .collect();
            assert!(column.windows(2).all(|w| w[1] > w[0]));
        }
    }

    #[test]
    fn tube_ratio_is_consistent_with_stiffness_ratio() {
        let foil = FoilSpec::reference();
        let rest = tube_ei(&foil, Pressure::ZERO).unwrap();
        for p in [0.1, 0.6, 1.7] {
            let ratio = tube_ei(&foil, foil.tube().pressure_for(p)).unwrap() / rest;
            assert_relative_eq!(ratio, 1.0 + stiffness_ratio(p).unwrap(), max_relative = 1e-13);
        }
    }

    proptest! {
        #[test]
        fn composite_ei_increasing(a in 0.0f64..2.6e5, d in 1.0f64..1e4) {
            let foil = FoilSpec::reference();
            prop_assume!(a + d <= foil.max_pressure().pa());
            let lo = composite_ei(&foil, Pressure::from_pa(a)).unwrap();
            let hi = composite_ei(&foil, Pressure::from_pa(a + d)).unwrap();
            prop_assert!(hi > lo);
        }

        #[test]
        fn rotation_monotone(bar in 0.0f64..0.8, m in 1e-4f64..0.04) {
            let foil = FoilSpec::reference();
            let p = Pressure::from_bar(bar);
            let base = predict_rotation(&foil, p, m).unwrap().angle().unwrap();
            let stiffer = predict_rotation(&foil, Pressure::from_bar(bar + 0.1), m).unwrap().angle().unwrap();
            let heavier = predict_rotation(&foil, p, m * 1.1).unwrap().angle().unwrap();
            prop_assert!(stiffer < base);
            prop_assert!(heavier > base);
        }
    }
}
