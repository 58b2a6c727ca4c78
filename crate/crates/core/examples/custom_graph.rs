//! Minimum identifying code of a user-supplied edge list, found both by the
//! solver and by exhaustive search.
//!
//! Usage: `cargo run --example custom_graph -- graph.txt`. Without an argument
//! a 3x3 grid is used.

use idcode::graph::{parse_edge_list, Graph};
use idcode::oracle::min_ics_size;
use idcode::pb::var_node;
use idcode::{encode_ics, solve, CodeSet};

fn grid() -> Graph {
    let id = |r: usize, c: usize| r * 3 + c;
    let mut edges = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            if c < 2 {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r < 2 {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(9, edges).unwrap()
}

fn main() {
    let g = match std::env::args().nth(1) {
        Some(path) => parse_edge_list(&std::fs::read_to_string(path).unwrap()).unwrap(),
        None => grid(),
    };
    let n = g.node_count();
    let by_solver = (0..=n).find_map(|b| {
        let r = solve(&encode_ics(&g, b)).unwrap();
        r.witness().map(|w| {
            let code: CodeSet = w.true_vars().map(var_node).collect();
            (b, code.names(&g))
        })
    });
    match by_solver {
        Some((b, names)) => println!("solver: size {b}, e.g. {}", names.join(" ")),
        None => println!("solver: no identifying code (twin nodes)"),
    }
    if n <= 64 {
        println!("oracle: {:?}", min_ics_size(&g, n).unwrap());
    }
}
