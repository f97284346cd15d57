//! Every intriguing union of K-orbits on a small tangency graph.

use polar_srg::construct::{group_orbits, GroupKind};
use polar_srg::srg::{build_graph, Coords, Family, GraphSpec};
use polar_srg::verify::orbit_union_scan;

fn main() -> polar_srg::Result<()> {
    let spec = GraphSpec::new(Family::NoOdd, 5, 2, Some(-1))?.with_coords(Coords::Split)?;
    let g = build_graph(&spec)?;
    let orbits = group_orbits(&g, GroupKind::K)?;
    let hits = orbit_union_scan(&g, &orbits, None)?;
    println!("{spec}: {} orbits, {} intriguing unions", orbits.len(), hits.len());
    for hit in hits.iter().take(12) {
        let r = &hit.report;
        println!("mask {:#014b} size {:>3} (h1,h2)={:?} {}", hit.mask, r.set_size, r.values(), r.set_type);
    }
    Ok(())
}
