//! Checks the bundled refutation of a seven-constraint formula, then shows
//! how a tampered proof is rejected.

use idcode::opb::parse_opb;
use idcode::proof::{parse_proof, verify};

const FORMULA: &str = include_str!("../fixtures/example1.opb");
const PROOF: &str = include_str!("../fixtures/example1.pbp");

fn main() {
    let f = parse_opb(FORMULA).unwrap();
    let v = verify(&f, &parse_proof(PROOF).unwrap()).unwrap();
    for (id, c) in v.db.iter() {
        println!("{id:2}: {c}");
    }
    println!("contradiction at id {}", v.contradiction_id);

    let tampered = PROOF.replace("p 9 x3 + 0", "p 9 x4 + 0");
    match verify(&f, &parse_proof(&tampered).unwrap()) {
        Ok(_) => println!("tampered proof accepted"),
        Err(e) => println!("tampered proof rejected: {e}"),
    }
}
