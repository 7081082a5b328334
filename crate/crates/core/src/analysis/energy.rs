//! Quasi-static inflation work of the tubes.
//!
//! `W = integral P dV` along the membrane equilibrium path, with
//! `V(p) = pi r(p)^2 L`, `r = r0 (1 + p)` and gauge pressure
//! `P = p E t0 / r0`. The fluid is taken as incompressible, so only work
//! against the gauge pressure counts.

use std::f64::consts::PI;

use crate::error::{FoilError, Result};
use crate::foil::FoilSpec;
use crate::tube::{inflate, ElasticTube};
use crate::units::Pressure;

/// Default number of Simpson nodes.
pub const DEFAULT_NODES: usize = 101;

/// Assumptions attached to every energy report.
pub const ENERGY_ASSUMPTIONS: [&str; 4] = [
    "quasi-static work of gauge pressure along the inflation path",
    "isothermal, incompressible inflation fluid; no compression work",
    "linear hoop strain r = r0 (1 + p), tube length constant",
    "total over both tubes",
];

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, nodes: usize) -> f64 {
    let intervals = nodes - 1;
    let h = (b - a) / intervals as f64;
    let inner: f64 = (1..intervals)
        .map(|i| {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            w * f(a + h * i as f64)
        })
        .sum();
    h / 3.0 * (f(a) + inner + f(b))
}

/// Inflation work of one tube, composite Simpson with `nodes` (odd, at least 3) nodes.
pub fn inflation_energy_with_nodes(tube: &ElasticTube, final_pressure: Pressure, nodes: usize) -> Result<f64> {
    if nodes < 3 || nodes % 2 == 0 {
        return Err(FoilError::Precondition(format!(
            "Simpson quadrature needs an odd node count of at least 3, got {nodes}"
        )));
    }
    let p_final = inflate(tube, final_pressure)?.dimensionless_pressure;
    if p_final == 0.0 {
        return Ok(0.0);
    }
    let (r0, t0, len, e) = (tube.resting_radius(), tube.resting_thickness(), tube.length(), tube.modulus());
    // P(p) dV/dp with dV/dp = 2 pi r0^2 L (1 + p)
    let integrand = |p: f64| p * e * t0 / r0 * 2.0 * PI * r0 * r0 * len * (1.0 + p);
    Ok(simpson(integrand, 0.0, p_final, nodes))
}

pub fn inflation_energy(tube: &ElasticTube, final_pressure: Pressure) -> Result<f64> {
    inflation_energy_with_nodes(tube, final_pressure, DEFAULT_NODES)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub pressure: Pressure,
    pub per_tube: f64,
    pub tube_count: usize,
    pub total: f64,
    pub assumptions: &'static [&'static str],
}

/// Inflation work of both tubes of the foil.
pub fn foil_inflation_energy(foil: &FoilSpec, final_pressure: Pressure) -> Result<EnergyReport> {
    let per_tube = inflation_energy(foil.tube(), final_pressure)?;
    let tube_count = FoilSpec::TUBE_COUNT as usize;
    Ok(EnergyReport {
        pressure: final_pressure,
        per_tube,
        tube_count,
        total: per_tube * tube_count as f64,
        assumptions: &ENERGY_ASSUMPTIONS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::mm;

    fn table_tube() -> ElasticTube {
        ElasticTube::new(mm(7.5), mm(1.0), mm(110.0), 1.0e6).unwrap()
    }

    /// Closed form of the same integral: 2 pi E t0 r0 L (p^2/2 + p^3/3).
    fn closed_form(tube: &ElasticTube, p: f64) -> f64 {
        2.0 * PI * tube.modulus() * tube.resting_thickness() * tube.resting_radius() * tube.length()
            * (p * p / 2.0 + p * p * p / 3.0)
    }

    #[test]
    fn zero_pressure_costs_nothing() {
        assert_eq!(inflation_energy(&table_tube(), Pressure::ZERO).unwrap(), 0.0);
    }

    #[test]
    fn matches_closed_form_and_converges() {
        let tube = table_tube();
        let p = Pressure::from_bar(0.8);
        let w51 = inflation_energy_with_nodes(&tube, p, 51).unwrap();
        let w101 = inflation_energy_with_nodes(&tube, p, 101).unwrap();
        assert!((w51 - w101).abs() / w101 < 1e-6);
        assert!((w101 - closed_form(&tube, 0.6)).abs() / w101 < 1e-12);
    }

    #[test]
    fn rejects_even_nodes_and_invalid_pressure() {
        let tube = table_tube();
        assert!(inflation_energy_with_nodes(&tube, Pressure::from_bar(0.5), 50).is_err());
        assert!(inflation_energy(&tube, Pressure::from_bar(5.0)).is_err());
        assert!(inflation_energy(&tube, Pressure::from_pa(-1.0)).is_err());
    }

    #[test]
    fn increasing_and_convex() {
        let tube = table_tube();
        let w: Vec<f64> = (0..=40)
            .map(|i| inflation_energy(&tube, Pressure::from_bar(0.05 * i as f64)).unwrap())
            .collect();
        assert!(w.windows(2).all(|s| s[1] > s[0]));
        assert!(w.windows(3).all(|s| s[2] - 2.0 * s[1] + s[0] > 0.0));
    }

    #[test]
    fn reference_foil_total() {
        let report = foil_inflation_energy(&FoilSpec::reference(), Pressure::from_bar(0.8)).unwrap();
        assert_eq!(report.tube_count, 2);
        assert!(report.total > 1.0 && report.total < 4.0, "{}", report.total);
    }
}
