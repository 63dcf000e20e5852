//! Closed-form commutators against the regularized momentum quadrature.

use bicomplex_fields::dispersion::FieldParams;
use bicomplex_fields::field_commutators::quadrature::quadrature_detailed;
use bicomplex_fields::field_commutators::{
    commutator_omega_pi_closed, weighted_commutators, Convention, Integrand, QuadratureSpec, WeightedKind,
};
use bicomplex_fields::operators::{CommutationTable, Lattice};

fn main() -> bicomplex_fields::Result<()> {
    let p = FieldParams::new(1.0, 0.5, 1)?;
    let table = CommutationTable::standard(Lattice::new(0.1, 32, false)?);
    let mass = p.modified_mass()?;
    let woo = weighted_commutators(WeightedKind::OmegaOmega, &p, &table, Convention::Oracle)?;
    println!("{:>6} {:>14} {:>14} {:>10}", "M*dx", "closed", "quadrature", "rel gap");
    for md in [0.5, 1.0, 2.0, 3.0, 5.0] {
        let d = md / mass;
        let spec = QuadratureSpec::for_separation(d);
        for (label, which, closed) in [
            ("[O,P]", Integrand::OmegaPi, commutator_omega_pi_closed(d, &p, &table, Convention::Oracle)?),
            ("w[O,O+]", Integrand::WeightedOmegaOmega, woo.value_at(d)?),
        ] {
            let q = quadrature_detailed(which, d, &p, &spec, &table)?;
            let (c, _) = closed.idempotent_decompose();
            let (v, _) = q.value.idempotent_decompose();
            println!("{md:>6} {label:>8} {:>14.8} {:>14.8} {:>10.1e}", c.norm(), v.norm(), (closed - q.value).norm() / closed.norm());
        }
    }
    Ok(())
}
