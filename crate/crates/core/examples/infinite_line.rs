//! Generating factor of the infinite-line state: constant modulus without
//! dissipation, exponential growth with it.

use bicomplex_fields::config::RunConfig;
use bicomplex_fields::dispersion::FieldParams;
use bicomplex_fields::states::{asymptotic_state_infinite, infinite_growth_rate};

fn main() -> bicomplex_fields::Result<()> {
    let table = RunConfig::default().state_table()?;
    let ts: Vec<f64> = (0..=5).map(|n| n as f64 * 0.4).collect();
    for gamma in [0.0, 0.5] {
        let p = FieldParams::new(1.0, gamma, 1)?;
        println!("gamma = {gamma}, predicted growth rate {:.6}", infinite_growth_rate(&p, &table));
        for d in asymptotic_state_infinite(&ts, &p, &table) {
            println!(
                "  t = {:<4.1} |F| = {:<12.6e} phase = {:+.4}  rate = {:.6}  cyclostationary = {}",
                d.t, d.modulus, d.phase, d.modulus_growth_rate, d.is_cyclostationary
            );
        }
    }
    Ok(())
}
