//! Injects a color at each H-node of rings 2 and 5 and prints what every node
//! sees after the colors seep one step.

use idcode::ics::{is_ics, seepage_coloring, CodeSet, Domination};

fn main() {
    let g = idcode::build_sbg();
    let names = [
        "H2_1", "H2_2", "H2_3", "H2_4", "H2_5", "H5_1", "H5_2", "H5_3", "H5_4", "H5_5",
    ];
    let code = CodeSet::from_names(&g, &names).unwrap();
    let palette: Vec<_> = names.iter().map(|n| g.node_by_name(n).unwrap()).collect();
    let colors = seepage_coloring(&g, &code).color_strings(&palette);
    for v in g.nodes() {
        println!("{:5} {}", g.name(v), colors[v.index()]);
    }
    println!("identifying: {}", is_ics(&g, &code, Domination::Required));
}
