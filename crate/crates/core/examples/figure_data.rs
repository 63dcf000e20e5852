//! Writes the data behind the separation and mass sweeps as `x,re,im` CSV
//! files into a directory given on the command line (default `figures`).

use std::path::PathBuf;

use bicomplex_fields::dispersion::FieldParams;
use bicomplex_fields::field_commutators::{figure_data, to_csv, Convention, Figure, Grid};
use bicomplex_fields::operators::{CommutationTable, Lattice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir)?;
    let p = FieldParams::new(1.0, 0.5, 1)?;
    let table = CommutationTable::standard(Lattice::new(0.1, 32, false)?);
    let separation = Grid::new(0.05, 6.0, 120)?;
    let mass = Grid::new(0.05, 5.0, 100)?;
    for fig in [Figure::Fig1, Figure::Fig2, Figure::Fig6a, Figure::Fig6b, Figure::Fig7a, Figure::Fig7b] {
        let grid = if fig.sweeps_mass() { mass } else { separation };
        let rows = figure_data(fig, grid, &p, &table, Convention::Oracle)?;
        let path = dir.join(format!("{}.csv", format!("{fig:?}").to_lowercase()));
        std::fs::write(&path, to_csv(&rows))?;
        let peak = rows.iter().map(|r| r.re.hypot(r.im)).fold(0.0, f64::max);
        println!("{} ({}): {} rows, peak magnitude {peak:.4}", path.display(), fig.kind().name(), rows.len());
    }
    Ok(())
}
