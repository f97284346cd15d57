//! Orbits of K on an orthogonality graph, unions of K-orbits on a tangency
//! graph, and L-orbits on a hyperbolic graph.

use polar_srg::construct::{group_orbits, orbit_union_sets, GroupKind};
use polar_srg::srg::{build_graph, Coords, Family, GraphSpec};
use polar_srg::verify::check_intriguing;

fn main() -> polar_srg::Result<()> {
    let cases = [
        (Family::NoPerp, 5, 2, GroupKind::K, false),
        (Family::NoOdd, 7, 2, GroupKind::K, true),
        (Family::NoEven2, 2, 3, GroupKind::L, false),
    ];
    for (family, q, r, kind, unions) in cases {
        let spec = GraphSpec::new(family, q, r, Some(1))?.with_coords(Coords::Split)?;
        let g = build_graph(&spec)?;
        let sets = if unions { orbit_union_sets(&g)? } else { group_orbits(&g, kind)? };
        println!("{spec}: {} sets", sets.len());
        for s in sets.iter().take(4) {
            let r = check_intriguing(&g, s)?;
            println!("  {:<40} size {:>3} (h1,h2)={:?} {}", s.provenance.label(), s.len(), r.values(), r.set_type);
        }
    }
    Ok(())
}
