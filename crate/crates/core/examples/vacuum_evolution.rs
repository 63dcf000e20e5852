//! Truncated evolution of the vacuum, its alignment with the initial vacuum
//! and the size of the omitted series tail.

use bicomplex_fields::config::RunConfig;
use bicomplex_fields::states::{
    evolution_pairs, evolve_vacuum, norm_preservation, overlap_phases, schmidt_rank, truncation_remainder, Partition,
};

fn main() -> bicomplex_fields::Result<()> {
    let cfg = RunConfig::default();
    let p = cfg.params()?;
    let geom = cfg.geometry()?;
    let table = cfg.state_table()?;
    let rules = cfg.constrained_rules();
    let part = Partition::momenta([*table.lattice.indices().start()]);
    for t in [0.0, 0.01, 0.05, 0.2] {
        let state = evolve_vacuum(t, 3, &p, &geom, &table, &rules, cfg.basis_cap)?;
        let x = evolution_pairs(t, &p, &geom, &table)?;
        let phases = overlap_phases(t, &p, &geom, &table, &rules)?;
        println!(
            "t = {t:<5} kets {:>6}  |X| {:.3e}  tail {:.2e}  norm deviation {:.1e}  overlap phases ({}, {})  rank {}",
            state.len(),
            x.norm(),
            truncation_remainder(&x, 3),
            norm_preservation(&state),
            phases.alpha,
            phases.beta,
            schmidt_rank(&state, &part)
        );
    }
    let state = evolve_vacuum(0.05, 2, &p, &geom, &table, &rules, cfg.basis_cap)?;
    for (ket, amp) in state.amplitudes.iter().take(4) {
        println!("  {ket}: {amp}");
    }
    Ok(())
}
