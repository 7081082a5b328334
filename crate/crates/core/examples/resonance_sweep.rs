// Normalised gain curves of the reference foil at a few pressures.

use softfoil::dynamics::{frequency_sweep, DynamicModel, FrequencyRange};
use softfoil::foil::FoilSpec;
use softfoil::units::Pressure;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let foil = FoilSpec::reference();
    let model = DynamicModel::default();
    let range = FrequencyRange::new(1.0, 12.0)?;
    for bar in [0.0, 0.4, 0.8] {
        let s = frequency_sweep(&foil, &model, Pressure::from_bar(bar), range, 551, 5.0)?;
        print!(
            "{bar} bar: f_n={:.3} Hz  peak {:.2} at {:.3} Hz",
            s.natural_frequency_hz, s.peak_gain, s.peak_frequency
        );
        match s.band {
            Some(b) => println!("  band [{:.3}, {:.3}] Hz", b.low, b.high),
            None => println!("  no band above {}", s.threshold),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
