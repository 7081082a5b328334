//! Mechanics of a single inflatable stiffener.
//!
//! Two tube kinds are modelled:
//!
//! * [`ElasticTube`]: a rubber tube whose radius grows with pressure. The
//!   hoop strain is linearised, `r = r0 (1 + p)`, and the wall cross
//!   section is conserved, `t = t0 r0 / r`. With `I = pi r^3 t` this gives
//!   `I / I0 = (1 + p)^2`, so the relative stiffness change is `2p + p^2`.
//! * [`FabricTube`]: an in-extensible fabric beam. Pressure does not change
//!   its bending stiffness; it only raises the buckling load.
//!
//! Here `p = P r0 / (E t0)` is the dimensionless pressure.

use std::f64::consts::PI;

use crate::error::{ensure, FoilError, Result};
use crate::units::Pressure;

/// Default upper bound on the dimensionless pressure.
pub const DEFAULT_P_MAX: f64 = 2.0;

/// Largest wall-thickness to radius ratio accepted as thin walled.
pub const MAX_THICKNESS_RATIO: f64 = 0.3;

/// Geometry and material of one elastic inflatable tube at rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticTube {
    resting_radius: f64,
    resting_thickness: f64,
    length: f64,
    modulus: f64,
    p_max: f64,
}

impl ElasticTube {
    /// Lengths in metres, modulus in pascals.
    pub fn new(resting_radius: f64, resting_thickness: f64, length: f64, modulus: f64) -> Result<Self> {
        for (name, v) in [
            ("resting radius", resting_radius),
            ("resting wall thickness", resting_thickness),
            ("length", length),
            ("modulus", modulus),
        ] {
            ensure(v.is_finite() && v > 0.0, || format!("tube {name} must be positive, got {v}"))?;
        }
        ensure(resting_thickness <= MAX_THICKNESS_RATIO * resting_radius, || {
            format!(
                "tube wall thickness {resting_thickness} m is not thin relative to radius {resting_radius} m (t0/r0 <= {MAX_THICKNESS_RATIO})"
            )
        })?;
        Ok(Self {
            resting_radius,
            resting_thickness,
            length,
            modulus,
            p_max: DEFAULT_P_MAX,
        })
    }

    pub fn with_p_max(mut self, p_max: f64) -> Result<Self> {
        ensure(p_max.is_finite() && p_max > 0.0, || format!("p_max must be positive, got {p_max}"))?;
        self.p_max = p_max;
        Ok(self)
    }

    /// Same geometry with a different wall modulus.
    pub fn with_modulus(mut self, modulus: f64) -> Result<Self> {
        ensure(modulus.is_finite() && modulus > 0.0, || format!("tube modulus must be positive, got {modulus}"))?;
        self.modulus = modulus;
        Ok(self)
    }

    pub fn resting_radius(&self) -> f64 {
        self.resting_radius
    }

    pub fn resting_thickness(&self) -> f64 {
        self.resting_thickness
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn modulus(&self) -> f64 {
        self.modulus
    }

    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    /// Second moment of area at rest, `pi r0^3 t0`.
    pub fn resting_second_moment(&self) -> f64 {
        PI * self.resting_radius.powi(3) * self.resting_thickness
    }

    /// Gauge pressure at which the tube reaches `p_max`.
    pub fn max_pressure(&self) -> Pressure {
        Pressure::from_pa(self.p_max * self.modulus * self.resting_thickness / self.resting_radius)
    }

    /// Gauge pressure corresponding to a dimensionless pressure.
    pub fn pressure_for(&self, p: f64) -> Pressure {
        Pressure::from_pa(p * self.modulus * self.resting_thickness / self.resting_radius)
    }
}

/// Inflated configuration of an [`ElasticTube`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InflationState {
    pub pressure: Pressure,
    pub dimensionless_pressure: f64,
    pub radius: f64,
    pub thickness: f64,
    pub second_moment: f64,
}

/// `p = P r0 / (E t0)`.
pub fn dimensionless_pressure(pressure: Pressure, tube: &ElasticTube) -> Result<f64> {
    let pa = pressure.pa();
    ensure(pa.is_finite() && pa >= 0.0, || format!("gauge pressure must be non-negative, got {pa} Pa"))?;
    Ok(pa * tube.resting_radius / (tube.modulus * tube.resting_thickness))
}

pub fn inflate(tube: &ElasticTube, pressure: Pressure) -> Result<InflationState> {
    let p = dimensionless_pressure(pressure, tube)?;
    if p > tube.p_max {
        return Err(FoilError::OutOfValidity { p, p_max: tube.p_max });
    }
    let radius = tube.resting_radius * (1.0 + p);
    let thickness = tube.resting_thickness * tube.resting_radius / radius;
    Ok(InflationState {
        pressure,
        dimensionless_pressure: p,
        radius,
        thickness,
        second_moment: PI * radius.powi(3) * thickness,
    })
}

/// Relative stiffness change `dk/k0 = 2p + p^2` of an elastic tube.
pub fn stiffness_ratio(p: f64) -> Result<f64> {
    ensure(p.is_finite() && p >= 0.0, || format!("dimensionless pressure must be non-negative, got {p}"))?;
    Ok(2.0 * p + p * p)
}

/// Buckling tip load `F_b = pi P r^3 / (2 L)` of a pressurised membrane beam.
pub fn buckling_load(pressure: Pressure, radius: f64, length: f64) -> Result<f64> {
    ensure(radius > 0.0 && length > 0.0, || format!("radius and length must be positive, got r={radius}, L={length}"))?;
    let pa = pressure.pa();
    ensure(pa >= 0.0, || format!("gauge pressure must be non-negative, got {pa} Pa"))?;
    Ok(PI * pa * radius.powi(3) / (2.0 * length))
}

/// In-extensible fabric beam: fixed radius, pressure-independent bending stiffness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FabricTube {
    radius: f64,
    length: f64,
    fabric_ei: f64,
}

impl FabricTube {
    pub fn new(radius: f64, length: f64, fabric_ei: f64) -> Result<Self> {
        ensure(radius > 0.0 && length > 0.0 && fabric_ei > 0.0, || {
            format!("fabric tube needs positive radius, length and EI, got r={radius}, L={length}, EI={fabric_ei}")
        })?;
        Ok(Self { radius, length, fabric_ei })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn fabric_ei(&self) -> f64 {
        self.fabric_ei
    }
}

/// Tip response of a fabric beam under an end load.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FabricResponse {
    /// Pre-buckling tip deflection in metres.
    Deflected(f64),
    /// Load exceeds the buckling load; post-buckling is not modelled.
    Buckled { buckling_load: f64 },
}

impl FabricResponse {
    pub fn is_buckled(&self) -> bool {
        matches!(self, FabricResponse::Buckled { .. })
    }

    pub fn deflection(&self) -> Option<f64> {
        match *self {
            FabricResponse::Deflected(a) => Some(a),
            FabricResponse::Buckled { .. } => None,
        }
    }
}

pub fn fabric_deflection(tube: &FabricTube, load: f64, pressure: Pressure) -> Result<FabricResponse> {
    ensure(load.is_finite() && load >= 0.0, || format!("tip load must be non-negative, got {load} N"))?;
    let fb = buckling_load(pressure, tube.radius, tube.length)?;
    // a zero load never buckles, even an unpressurised membrane
    if load > fb {
        return Ok(FabricResponse::Buckled { buckling_load: fb });
    }
    Ok(FabricResponse::Deflected(load * tube.length.powi(3) / (3.0 * tube.fabric_ei)))
}
