//! Late-time state on a finite interval: kernels, Schmidt ranks and the two
//! idempotent views.

use bicomplex_fields::config::RunConfig;
use bicomplex_fields::dispersion::FieldParams;
use bicomplex_fields::states::{
    asymptotic_state_finite, eta, project_view, schmidt_rank, species_content, AsymptoticKernel, Partition, Side,
};

fn main() -> bicomplex_fields::Result<()> {
    let cfg = RunConfig::default();
    let geom = cfg.geometry()?;
    let table = cfg.state_table()?;
    let part = Partition::momenta([*table.lattice.indices().start()]);
    for k in [0.2, 0.6] {
        println!("eta({k}) = {:.5}", eta(k, &cfg.params()?)?);
    }
    for gamma in [0.5, 0.0] {
        let p = FieldParams::new(1.0, gamma, 1)?;
        for kernel in [AsymptoticKernel::Printed, AsymptoticKernel::Contracted { cross_term: false }, AsymptoticKernel::Contracted { cross_term: true }] {
            let s = asymptotic_state_finite(2, &p, &geom, &table, kernel, cfg.basis_cap)?;
            println!("gamma = {gamma} {kernel:?}: {} kets, Schmidt rank {}", s.len(), schmidt_rank(&s, &part));
        }
        let s = asymptotic_state_finite(2, &p, &geom, &table, AsymptoticKernel::Printed, cfg.basis_cap)?;
        let plus = project_view(&s, Side::Plus);
        let minus = project_view(&s, Side::Minus);
        println!(
            "  J+ view {} kets, species (1, 2) present: {:?}; J- view {} kets, {:?}; recomposes: {}",
            plus.len(),
            species_content(&plus),
            minus.len(),
            species_content(&minus),
            plus.add(&minus) == s
        );
    }
    Ok(())
}
