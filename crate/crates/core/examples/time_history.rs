// Tip motion from rest under a 6 Hz drive, soft against inflated.

use softfoil::dynamics::{time_response, DynamicModel};
use softfoil::foil::FoilSpec;
use softfoil::units::Pressure;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let foil = FoilSpec::reference();
    let model = DynamicModel::default();
    let drive_hz = 6.0;
    for bar in [0.0, 0.8] {
        let osc = model.oscillator(&foil, Pressure::from_bar(bar), drive_hz)?;
        let period = 1.0 / drive_hz;
        let h = time_response(&osc, 40.0 * period, period / 100.0)?;
        println!(
            "{bar} bar: {} samples, dt {:.2e} s, steady A/A0 {:.3} (raw {:.3})",
            h.time.len(),
            h.dt,
            h.steady_peak_to_peak / h.a0,
            h.steady_peak_to_peak_raw / h.a0
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
