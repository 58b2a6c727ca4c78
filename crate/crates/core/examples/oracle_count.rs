//! Exhaustive count of identifying codes on the soccer ball graph for k = 8..10,
//! with the size-10 codes sorted into motif families.

use std::time::Instant;

use idcode::oracle::{classify_solutions, count_ics};

fn main() {
    let g = idcode::build_sbg();
    for k in 8..=10 {
        let t = Instant::now();
        let r = count_ics(&g, k, k == 10).expect("graph fits in 64 bits");
        println!("k = {k}: {} codes ({:.2?})", r.count, t.elapsed());
        if let Some(solutions) = r.solutions {
            let h = classify_solutions(&solutions);
            for (family, n) in &h.families {
                println!("  class {family}: {n}");
            }
            println!("  unmatched: {}", h.unmatched.len());
        }
    }
}
