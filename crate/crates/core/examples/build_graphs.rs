//! Builds one graph per family and compares measured parameters with the
//! closed forms.

use polar_srg::srg::{build_graph, expected_params, Family, GraphSpec};

fn main() -> polar_srg::Result<()> {
    let specs = [
        GraphSpec::new(Family::NoPerp, 5, 2, Some(1))?,
        GraphSpec::new(Family::NoEven3, 3, 3, Some(1))?,
        GraphSpec::new(Family::NoEven2, 2, 2, Some(-1))?,
        GraphSpec::new(Family::NoOdd, 5, 2, Some(-1))?,
        GraphSpec::new(Family::Nu, 2, 3, None)?,
    ];
    for spec in specs {
        let g = build_graph(&spec)?;
        let m = g.params()?;
        let e = expected_params(&spec)?;
        println!(
            "{spec:<28} (v,k,lambda,mu) = {:?}  eigenvalues {} {}  formula agrees: {}",
            m.tuple(),
            m.e_plus,
            m.e_minus,
            m == e
        );
    }
    Ok(())
}
