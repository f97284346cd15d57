//! Perps of a chain of totally singular subspaces, their complements and
//! consecutive differences.

use polar_srg::construct::{
    complement, construction_i, construction_i_bound, difference_bound, flag_difference_set,
};
use polar_srg::srg::{build_graph, Family, GraphSpec};
use polar_srg::verify::check_intriguing;

fn main() -> polar_srg::Result<()> {
    let spec = GraphSpec::new(Family::NoOdd, 5, 2, Some(1))?;
    let g = build_graph(&spec)?;
    for t in construction_i_bound(&spec)? {
        let y = construction_i(&g, t)?;
        let r = check_intriguing(&g, &y)?;
        println!("t={t} |Y|={} (h1,h2)={:?} {} matches={:?}", y.len(), r.values(), r.set_type, r.matches_expected);
        let c = complement(&y)?;
        let r = check_intriguing(&g, &c)?;
        println!("    complement |Y|={} (h1,h2)={:?} matches={:?}", c.len(), r.values(), r.matches_expected);
    }
    for t in difference_bound(&spec)? {
        let d = flag_difference_set(&g, t)?;
        let r = check_intriguing(&g, &d)?;
        println!("W_{t} minus W_{} |Y|={} (h1,h2)={:?} matches={:?}", t + 1, d.len(), r.values(), r.matches_expected);
    }
    Ok(())
}
