// Inflates one elastic tube and compares it with an inextensible fabric tube.

use softfoil::tube::{buckling_load, fabric_deflection, inflate, stiffness_ratio, ElasticTube, FabricTube};
use softfoil::units::{mm, Pressure};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let tube = ElasticTube::new(mm(7.5), mm(1.0), mm(110.0), 1.0e6)?;
    println!("bar      p        r_mm     t_mm     I/I0     2p+p^2");
    for bar in [0.0, 0.2, 0.4, 0.6, 0.8, 1.0] {
        let s = inflate(&tube, Pressure::from_bar(bar))?;
        println!(
            "{bar:<8.2} {:<8.4} {:<8.4} {:<8.4} {:<8.4} {:<8.4}",
            s.dimensionless_pressure,
            s.radius * 1e3,
            s.thickness * 1e3,
            s.second_moment / tube.resting_second_moment(),
            stiffness_ratio(s.dimensionless_pressure)?
        );
    }
    if let Err(e) = inflate(&tube, Pressure::from_bar(3.0)) {
        println!("3 bar: {e}");
    }

    // A fabric tube of the same size: stiffness does not move with pressure,
    // pressure only postpones buckling.
    let fabric = FabricTube::new(mm(7.5), mm(110.0), 0.05)?;
    for bar in [0.2, 1.0] {
        let fb = buckling_load(Pressure::from_bar(bar), fabric.radius(), fabric.length())?;
        println!("fabric {bar} bar buckles above {fb:.3} N");
        for load in [0.1, 0.4] {
            let r = fabric_deflection(&fabric, load, Pressure::from_bar(bar))?;
            match r.deflection() {
                Some(a) => println!("fabric {bar} bar, {load} N: tip {:.3} mm", a * 1e3),
                None => println!("fabric {bar} bar, {load} N: buckled"),
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
