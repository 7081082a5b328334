// Pressure needed for a target frequency, and the swimming speeds it buys.

use softfoil::analysis::{achievable_band, pressure_for_frequency, speed_envelope, strouhal};
use softfoil::dynamics::DEFAULT_EFFECTIVE_MASS;
use softfoil::foil::FoilSpec;
use softfoil::units::Pressure;
use softfoil::FoilError;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let foil = FoilSpec::reference();
    let mass = DEFAULT_EFFECTIVE_MASS;
    let (lo, hi) = achievable_band(&foil, mass)?;
    println!("natural frequency range {lo:.3} to {hi:.3} Hz");
    for target in [6.0, 7.0, 8.0] {
        let p = pressure_for_frequency(&foil, mass, target)?;
        println!("{target} Hz needs {p}");
    }
    match pressure_for_frequency(&foil, mass, 2.0 * hi) {
        Err(FoilError::OutOfEnvelope { f_max_hz, .. }) => println!("{:.1} Hz is above {f_max_hz:.3} Hz", 2.0 * hi),
        other => println!("unexpected: {other:?}"),
    }

    let amplitude = 0.03;
    let env = speed_envelope(&foil, mass, &[0.0, 0.4, 0.8, 1.2].map(Pressure::from_bar), amplitude, 0.3)?;
    for (p, f, u) in &env.points {
        println!("{p}: {f:.3} Hz -> {u:.3} m/s at St {}", env.strouhal);
    }
    let st = strouhal(amplitude, 6.0, 0.5)?;
    println!("St at 6 Hz, 0.5 m/s: {:.3} (biological: {})", st.strouhal, st.in_biological_range());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
