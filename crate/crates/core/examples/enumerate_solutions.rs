//! Enumerates every size-10 identifying code of the soccer ball graph with the
//! solver and blocking constraints.

use std::time::Instant;

use idcode::pb::{encode_ics_with, Budget};
use idcode::solve::enumerate_all;

fn main() {
    let g = idcode::build_sbg();
    let f = encode_ics_with(&g, Budget::Exactly(10));
    let vars: Vec<_> = f.vars().collect();
    let t = Instant::now();
    let e = enumerate_all(&f, Some(&vars)).expect("solver");
    for (i, a) in e.solutions.iter().enumerate() {
        let names: Vec<_> = a.true_vars().filter_map(|v| f.name(v)).collect();
        println!("{:2}: {}", i + 1, names.join(" "));
    }
    println!(
        "{} solutions, {} solver calls, {:.2?}, {:?}",
        e.solutions.len(),
        e.solver_calls,
        t.elapsed(),
        e.stats
    );
}
