//! Writes a set to the text format, reads it back and re-checks it.

use polar_srg::construct::construction_i;
use polar_srg::io::{read_set, read_set_spec, write_set, SetReport};
use polar_srg::srg::{build_graph, Family, GraphSpec};
use polar_srg::verify::{check_intriguing, eigenvector_check};

fn main() -> polar_srg::Result<()> {
    let g = build_graph(&GraphSpec::new(Family::NoEven3, 3, 2, Some(-1))?)?;
    let text = write_set(&g, &construction_i(&g, 1)?)?;
    print!("{text}");

    let h = build_graph(&read_set_spec(&text)?)?;
    let y = read_set(&h, &text)?;
    assert_eq!(write_set(&h, &y)?, text);
    let r = check_intriguing(&h, &y)?;
    let report = SetReport::new(&h, &y, &r, eigenvector_check(&h, &y, &r)?)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(())
}
