//! Builds the soccer ball graph and prints its degree profile and edge list.

use idcode::graph::write_edge_list;

fn main() {
    let g = idcode::build_sbg();
    let pentagon_centers = g.nodes().filter(|&v| g.degree(v).unwrap() == 5).count();
    println!(
        "{} nodes, {} edges, {} of degree 5, {} of degree 6",
        g.node_count(),
        g.edge_count(),
        pentagon_centers,
        g.node_count() - pentagon_centers
    );
    print!("{}", write_edge_list(&g));
}
