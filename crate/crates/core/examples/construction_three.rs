//! Sets cut out by nonsingular points of the opposite square class; the
//! size does not depend on the point chosen.

use polar_srg::construct::{construction_iii, nonsingular_points_in_class, vertex_class};
use polar_srg::srg::{build_graph, Family, GraphSpec};
use polar_srg::verify::check_intriguing;

fn main() -> polar_srg::Result<()> {
    for spec in [
        GraphSpec::new(Family::NoPerp, 5, 2, Some(1))?,
        GraphSpec::new(Family::NoPerp, 5, 2, Some(-1))?,
        GraphSpec::new(Family::NoEven3, 3, 3, Some(1))?,
    ] {
        let g = build_graph(&spec)?;
        let class = vertex_class(&spec).expect("orthogonality graph").opposite();
        let ys = nonsingular_points_in_class(&g, class)?;
        println!("{spec}: {} candidate points", ys.len());
        for y in ys.iter().step_by(ys.len() / 4) {
            let set = construction_iii(&g, y)?;
            let r = check_intriguing(&g, &set)?;
            println!("  y={y:<18} size {} (h1,h2)={:?} {}", set.len(), r.values(), r.set_type);
        }
    }
    Ok(())
}
