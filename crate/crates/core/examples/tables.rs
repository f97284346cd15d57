//! Runs every construction over the default grid (or the quick grid with
//! `--quick`) and prints one line per row.

use polar_srg::srg::Caps;
use polar_srg::tables::{default_grid, quick_grid, run_spec};

fn main() -> polar_srg::Result<()> {
    let quick = std::env::args().any(|a| a == "--quick");
    let grid = if quick { quick_grid() } else { default_grid() };
    let caps = Caps::from_env();
    let mut failed = 0;
    for spec in &grid {
        let start = std::time::Instant::now();
        let rows = run_spec(spec, &caps)?;
        for row in &rows {
            failed += usize::from(!row.passed);
            println!("{}", row.line());
        }
        eprintln!("{spec}: {:.1?}", start.elapsed());
    }
    println!("{failed} failing rows");
    Ok(())
}
