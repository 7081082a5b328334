// High-gain bands over a pressure set and how much wider their union is.

use softfoil::dynamics::{operational_envelope, DynamicModel, FrequencyRange};
use softfoil::foil::FoilSpec;
use softfoil::units::Pressure;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let foil = FoilSpec::reference();
    let pressures = [0.0, 0.2, 0.5, 0.8].map(Pressure::from_bar);
    let env = operational_envelope(
        &foil,
        &DynamicModel::default(),
        &pressures,
        FrequencyRange::new(1.0, 12.0)?,
        551,
        5.0,
    )?;
    for s in &env.sweeps {
        println!("{}: peak {:.3} Hz, band width {:.3} Hz", s.pressure, s.peak_frequency, s.band_width());
    }
    for b in &env.union {
        println!("union [{:.3}, {:.3}] Hz", b.low, b.high);
    }
    println!("widening ratio {:.2}", env.widening_ratio());
    println!("peaks increase with pressure: {}", env.peaks_strictly_increasing());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
