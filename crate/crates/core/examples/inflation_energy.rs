// Work needed to inflate the tubes.

use softfoil::analysis::{foil_inflation_energy, inflation_energy_with_nodes};
use softfoil::foil::FoilSpec;
use softfoil::units::Pressure;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let foil = FoilSpec::reference();
    for bar in [0.2, 0.5, 0.8] {
        let r = foil_inflation_energy(&foil, Pressure::from_bar(bar))?;
        println!("{}: {:.4} J per tube, {:.4} J for {} tubes", r.pressure, r.per_tube, r.total, r.tube_count);
    }
    let coarse = inflation_energy_with_nodes(foil.tube(), Pressure::from_bar(0.8), 11)?;
    let fine = inflation_energy_with_nodes(foil.tube(), Pressure::from_bar(0.8), 401)?;
    println!("11 vs 401 nodes: {coarse:.12} / {fine:.12} J");
    for a in foil_inflation_energy(&foil, Pressure::from_bar(0.8))?.assumptions {
        println!("- {a}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
