//! Plane-wave modes of the dissipative equation: frequencies, damping rates
//! and the equation-of-motion residual of system, environment and
//! conjugated modes.

use bicomplex_fields::dispersion::{dissipative_coefficients, eom_residual, FieldParams, ModeSolution};
use bicomplex_fields::Bicomplex;

fn main() -> bicomplex_fields::Result<()> {
    let p = FieldParams::new(1.0, 0.5, 1)?;
    let (g1, g2) = dissipative_coefficients(&p);
    println!("M^2 = {}, damping rates ({g1}, {g2}), infrared cutoff {}", p.modified_mass_squared(), p.ir_cutoff());
    for k in [0.0, 0.5, 1.0, 2.0] {
        println!("omega({k}) = {}", p.omega(k)?);
    }

    let a = Bicomplex::new(0.4, -0.2, 0.0, 0.0);
    let b = Bicomplex::new(0.1, 0.3, 0.0, 0.0);
    let modes = [
        ("system", ModeSolution::system(a, b, vec![0.7], &p)?),
        ("environment", ModeSolution::environment(a, b, vec![0.7], &p)?),
        ("conjugated", ModeSolution::system(a, b, vec![0.7], &p)?.conjugated()),
    ];
    for (name, m) in &modes {
        let r = eom_residual(m, &p, &[0.3], 1.2);
        println!("{name:<12} value {}  residual {:.1e}", m.jet(&[0.3], 1.2).value, r.norm());
    }

    let below = FieldParams::new(0.2, 1.0, 1)?;
    println!("below the cutoff: {:?}", below.omega(0.1).map_err(|e| e.to_string()));
    Ok(())
}
