//! The hermitian tangency graph at q=2, r=3: G-orbits, the sets M_k, and
//! the two values printed for them.

use polar_srg::construct::{group_orbits, mk_by_log_class, mk_count, mk_set, GroupKind, RepChoice};
use polar_srg::srg::{build_graph, Family, GraphSpec};
use polar_srg::verify::check_intriguing;

fn main() -> polar_srg::Result<()> {
    let g = build_graph(&GraphSpec::new(Family::Nu, 2, 3, None)?)?;
    let p = g.params()?;
    println!("{}: {:?}, eigenvalues {} {}", g.spec(), p.tuple(), p.e_plus, p.e_minus);
    let orbits = group_orbits(&g, GroupKind::G)?;
    println!("{} G-orbits of sizes {:?}", orbits.len(), orbits.iter().map(|o| o.len()).collect::<Vec<_>>());
    let h = g.space().hermitian().expect("hermitian space");
    for k in 0..mk_count(h) {
        let m = mk_set(&g, k, RepChoice::First)?;
        let r = check_intriguing(&g, &m)?;
        let same = m.indices() == mk_by_log_class(&g, k)?.indices()
            && m.indices() == mk_set(&g, k, RepChoice::Second)?.indices();
        println!("M_{k:<2} (h1,h2)={:?} matched {:?} log-class agrees {same}", r.values(), r.matched);
    }
    Ok(())
}
