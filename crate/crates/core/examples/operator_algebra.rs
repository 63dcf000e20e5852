//! Mode operators, normal ordering and vacuum expectation values under the
//! pair-coherent vacuum, with and without the constraints.

use bicomplex_fields::operators::{
    commutator, normal_order, pair_commutation_check, pair_minus, pair_plus, vev, CommutationTable, Lattice,
    ModeOp, OperatorPoly, Species, VacuumRules,
};
use bicomplex_fields::Bicomplex;

fn main() -> bicomplex_fields::Result<()> {
    let table = CommutationTable::standard(Lattice::new(0.5, 2, false)?);
    let a1 = ModeOp::new(Species::A1, 1);
    println!("[a1(1), a1(1)+] = {}", commutator(a1, a1.adjoint(), &table));
    println!("[a1(1), b1(1)+] = {}", commutator(a1, ModeOp::dag(Species::B1, 1), &table));
    println!("pair generators commute: {}", pair_commutation_check(&table));

    let word = OperatorPoly::monomial(Bicomplex::ONE, vec![a1, a1.adjoint()]);
    let ordered = normal_order(&word, &table);
    println!("a1 a1+ normal ordered has {} terms", ordered.len());

    let l1 = Bicomplex::new(0.7, 0.2, -0.4, 0.1);
    let l2 = Bicomplex::new(-0.3, 0.5, 0.6, -0.2);
    let pairs = pair_plus(1, 1).add(&pair_minus(1, 1));
    for rules in [VacuumRules::unconstrained(l1, l2), VacuumRules::constrained(l1, l2)] {
        let ann = pairs.adjoint();
        println!(
            "constrained = {:<5}  <0|annihilation pairs|0> = {}",
            rules.constrained,
            vev(&ann, &rules, &table)?
        );
    }
    Ok(())
}
