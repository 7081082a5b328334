// Recovers mass and damping from gain curves, and moduli from static stiffness.

use softfoil::analysis::{
    calibrate_dynamic, calibrate_static, model_effective_stiffness, MeasuredGainCurve,
};
use softfoil::dynamics::DynamicModel;
use softfoil::foil::{FoilSpec, StiffnessCurvePoint};
use softfoil::units::Pressure;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let foil = FoilSpec::reference();

    // pretend measurements from a foil with a different mass and damping
    let truth = DynamicModel::new(4.4e-3, 0.065)?;
    let mut curves = Vec::new();
    for bar in [0.0, 0.3, 0.6] {
        let p = Pressure::from_bar(bar);
        let fn_hz = truth.natural_frequency_hz(&foil, p)?;
        let samples = (0..45)
            .map(|i| {
                let f = 1.0 + 0.2 * i as f64;
                truth.normalized_gain(f, fn_hz).map(|g| (f, g))
            })
            .collect::<Result<Vec<_>, _>>()?;
        curves.push(MeasuredGainCurve::new(p, samples)?);
    }
    let fit = calibrate_dynamic(&curves, &foil)?;
    println!(
        "mass {:.4e} kg, damping {:.4}, rms {:.1e} after {} iterations",
        fit.effective_mass, fit.damping_ratio, fit.residual_rms, fit.iterations
    );

    // static: a stiffness curve that doubles between 0 and 0.8 bar
    let e0 = model_effective_stiffness(&foil, Pressure::ZERO)?;
    let points = [
        StiffnessCurvePoint::new(Pressure::ZERO, 0.02, 1.1 * e0)?,
        StiffnessCurvePoint::new(Pressure::from_bar(0.8), 0.02, 2.2 * e0)?,
    ];
    let fit = calibrate_static(&points, &foil)?;
    println!(
        "silicone {:.0} Pa (x{:.3}), tube {:.3e} Pa (x{:.3}), rms {:.1e}",
        fit.silicone_modulus, fit.silicone_scale, fit.tube_modulus, fit.tube_scale, fit.residual_rms
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
