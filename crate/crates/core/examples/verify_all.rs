//! Runs every acceptance criterion on the default configuration, or on a
//! JSON configuration passed as the first argument.

use bicomplex_fields::config::RunConfig;
use bicomplex_fields::verify::run_all;

fn main() -> bicomplex_fields::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => RunConfig::load(path.as_ref())?,
        None => RunConfig::default(),
    };
    let report = run_all(&cfg);
    for c in &report.criteria {
        println!("{}", c.line());
    }
    std::process::exit(if report.passed { 0 } else { 1 });
}
