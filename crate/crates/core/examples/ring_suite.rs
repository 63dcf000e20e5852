//! The exact rational property suite, once with the standard unit table and
//! once with a table whose `j²` is wrong.

use bicomplex_fields::ring::suite::{run_suite, UnitTable};

fn main() {
    for (label, table) in [("standard", UnitTable::standard()), ("j^2 = +i", UnitTable::with_bad_j_square())] {
        let report = run_suite(&table, 2_000, 7);
        println!("{label}: passed = {} in {:.2?}", report.passed(), report.elapsed);
        for p in &report.properties {
            if p.failures > 0 {
                println!("  {} failed {}/{}", p.name, p.failures, p.cases);
            }
        }
    }
}
