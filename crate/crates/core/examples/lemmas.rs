//! Exhaustive checks of the group and trace lemmas at small parameters.

use polar_srg::construct::lemmas::run_all;

fn main() -> polar_srg::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    for r in run_all(seed)? {
        let status = if r.passed { "ok  " } else { "FAIL" };
        println!("{status} {:<20} {:<16} {:>8} cases  {}", r.name, r.params, r.checked, r.detail);
    }
    Ok(())
}
