//! Solves the soccer ball encoding at budgets 9 and 10.

use std::time::Instant;

use idcode::pb::encode_ics;
use idcode::solve::solve;

fn main() {
    let g = idcode::build_sbg();
    for k in [9, 10] {
        let f = encode_ics(&g, k);
        let t = Instant::now();
        let r = solve(&f).expect("solver");
        println!(
            "budget {k}: {} constraints, {} in {:.2?} ({:?})",
            f.len(),
            if r.is_sat() { "SAT" } else { "UNSAT" },
            t.elapsed(),
            r.stats
        );
    }
}
