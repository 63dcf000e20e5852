//! Closed forms of the field commutators next to their lattice sums.

use bicomplex_fields::dispersion::FieldParams;
use bicomplex_fields::field_commutators::lattice::{omega_omegadagger_lattice, pi_pidagger_lattice, Measure};
use bicomplex_fields::field_commutators::{
    commutator_omega_omegadagger, commutator_omega_pi_closed, commutator_pi_pidagger, weighted_commutators,
    Convention, WeightedKind,
};
use bicomplex_fields::operators::{CommutationTable, Lattice};

fn main() -> bicomplex_fields::Result<()> {
    let p = FieldParams::new(1.0, 0.5, 1)?;
    let table = CommutationTable::standard(Lattice::new(0.1, 32, false)?);

    let oo = commutator_omega_omegadagger(&table, 1)?;
    let pp = commutator_pi_pidagger(&table, &p)?;
    println!("[O, O+] = {} x {:?}", oo.coefficient, oo.kernel);
    println!("[P, P+] = {} x {:?}", pp.coefficient, pp.kernel);
    if let Some((d0, d2)) = pp.delta_coefficients() {
        println!("  delta coefficient {d0}, delta'' coefficient {d2}");
    }

    for d in [0.5, 1.0, 2.0, 4.0] {
        let op = commutator_omega_pi_closed(d, &p, &table, Convention::Oracle)?;
        let printed = commutator_omega_pi_closed(d, &p, &table, Convention::Printed)?;
        let woo = weighted_commutators(WeightedKind::OmegaOmega, &p, &table, Convention::Oracle)?.value_at(d)?;
        let wpp = weighted_commutators(WeightedKind::PiPi, &p, &table, Convention::Oracle)?.value_at(d)?;
        println!("dx = {d}: [O,P] {op} (printed {printed}); weighted [O,O+] {woo}; weighted [P,P+] {wpp}");
    }

    let lat_oo = omega_omegadagger_lattice(&p, &table, Measure::Plain);
    let lat_pp = pi_pidagger_lattice(&p, &table, Measure::Plain);
    for t in [0.0, 5.0] {
        println!(
            "lattice at t = {t}: [O,O+](0.3, -0.4) = {}, [P,P+](0.3, -0.4) = {}",
            lat_oo.evaluate(0.3, -0.4, t),
            lat_pp.evaluate(0.3, -0.4, t)
        );
    }
    Ok(())
}
