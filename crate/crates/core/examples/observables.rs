//! Hamiltonian kernel, the factor five on the diagonal, geometry kernels,
//! vacuum expectation values and the conserved-current residual.

use bicomplex_fields::dispersion::{FieldParams, ModeSolution};
use bicomplex_fields::observables::{
    charge_density, current_density, geometry_kernel, h_gamma, noether_residual, vev_charge, vev_hamiltonian,
    GeometrySpec,
};
use bicomplex_fields::operators::{CommutationTable, Lattice, VacuumRules};
use bicomplex_fields::Bicomplex;

fn main() -> bicomplex_fields::Result<()> {
    let p = FieldParams::new(1.0, 0.5, 1)?;
    for k in [0.3, 1.0, 2.5] {
        let w = p.omega(k)?;
        let h = h_gamma(k, k, &p)?;
        println!("k = {k}: H(k,k) = {h:.6}, Re H / omega^2 = {:.12}", h.re / (w * w));
    }

    let finite = GeometrySpec::finite(-1.0, 1.0)?;
    for q in [0.0, 0.5, 3.0] {
        println!("I({q}) on [-1, 1] = {:.6}", geometry_kernel(q, &finite, 0.1));
    }

    let table = CommutationTable::standard(Lattice::new(0.1, 16, true)?);
    let l1 = Bicomplex::new(0.7, 0.2, -0.4, 0.1);
    let l2 = Bicomplex::new(-0.3, 0.5, 0.6, -0.2);
    for rules in [VacuumRules::unconstrained(l1, l2), VacuumRules::constrained(l1, l2)] {
        println!(
            "constrained = {:<5} <H> = {}   <Q> = {}",
            rules.constrained,
            vev_hamiltonian(&p, &GeometrySpec::infinite(), &table, &rules)?,
            vev_charge(&p, &table, &rules)?
        );
    }

    let free = FieldParams::new(1.0, 0.0, 1)?;
    let modes = vec![
        ModeSolution::system(Bicomplex::new(0.5, 0.1, 0.0, 0.0), Bicomplex::new(0.2, -0.3, 0.0, 0.0), vec![0.8], &free)?,
        ModeSolution::environment(Bicomplex::new(-0.1, 0.4, 0.0, 0.0), Bicomplex::new(0.3, 0.0, 0.0, 0.0), vec![-1.3], &free)?,
    ];
    let (x, t) = (0.4, 1.1);
    println!("j0 = {}", charge_density(&modes, &free, x, t));
    println!("j1 = {}", current_density(&modes, x, t));
    println!("continuity residual = {:.2e}", noether_residual(&modes, &free, x, t, 1e-4).norm());
    Ok(())
}
