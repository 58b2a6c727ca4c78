//! Writes the budget-9 soccer ball encoding in OPB format to stdout.

use idcode::opb::write_opb;

fn main() {
    let budget = std::env::args()
        .nth(1)
        .map_or(9, |s| s.parse().expect("budget must be a number"));
    let f = idcode::encode_ics(&idcode::build_sbg(), budget);
    eprintln!("{} constraints", f.len());
    print!("{}", write_opb(&f));
}
