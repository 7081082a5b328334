// Simulated moment/angle test of the reference foil.

use softfoil::analysis::model_effective_stiffness;
use softfoil::foil::{static_sweep, FoilSpec, Rotation};
use softfoil::units::Pressure;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let foil = FoilSpec::reference();
    let pressures = [0.0, 0.4, 0.8].map(Pressure::from_bar);
    let moments: Vec<f64> = (1..=6).map(|i| 0.01 * i as f64).collect();

    for row in static_sweep(&foil, &pressures, &moments)? {
        match row.rotation {
            Rotation::Supported(theta) => println!(
                "{} M={:.2} N m  theta={:.2} deg  E_eff={:.0} Pa",
                row.pressure,
                row.moment,
                theta.to_degrees(),
                row.effective_stiffness.unwrap_or(f64::NAN)
            ),
            Rotation::RolledOff { sin_demand } => {
                println!("{} M={:.2} N m  rolled off (sin demand {sin_demand:.2})", row.pressure, row.moment)
            }
        }
    }
    let e0 = model_effective_stiffness(&foil, Pressure::ZERO)?;
    let e8 = model_effective_stiffness(&foil, Pressure::from_bar(0.8))?;
    println!("stiffness ratio 0.8 bar / 0 bar: {:.3}", e8 / e0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
