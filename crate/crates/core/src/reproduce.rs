//! End-to-end checks on the soccer ball graph and the small refutation
//! fixture, reported as `{check, expected, actual, pass}` rows.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::{build_sbg, Graph, NodeId, Patch, SbgLabel};
use crate::ics::{signatures, CodeSet};
use crate::opb::parse_opb;
use crate::oracle::{classify_solutions, count_ics};
use crate::pb::{encode_ics, encode_ics_with, var_node, Budget};
use crate::proof::{parse_proof, verify};
use crate::solve::{enumerate_all, solve, Outcome};

pub const EXAMPLE_OPB: &str = include_str!("../fixtures/example1.opb");
pub const EXAMPLE_PROOF: &str = include_str!("../fixtures/example1.pbp");

/// Colors after seepage from the ten Class I injection nodes. Colors `A..E`
/// are injected at `H2_1..H2_5` and `F..J` at `H5_1..H5_5`; `*` marks the
/// injection node of a color.
pub const CLASS_I_COLORS: [(&str, &str); 32] = [
    ("P1_1", "ABCDE"),
    ("H2_1", "A*BE"),
    ("H2_2", "AB*C"),
    ("H2_3", "BC*D"),
    ("H2_4", "CD*E"),
    ("H2_5", "DE*A"),
    ("H3_1", "A"),
    ("P3_1", "AB"),
    ("H3_2", "B"),
    ("P3_2", "BC"),
    ("H3_3", "C"),
    ("P3_3", "CD"),
    ("H3_4", "D"),
    ("P3_4", "DE"),
    ("H3_5", "E"),
    ("P3_5", "AE"),
    ("P4_1", "JF"),
    ("H4_1", "F"),
    ("P4_2", "FG"),
    ("H4_2", "G"),
    ("P4_3", "GH"),
    ("H4_3", "H"),
    ("P4_4", "HI"),
    ("H4_4", "I"),
    ("P4_5", "IJ"),
    ("H4_5", "J"),
    ("H5_1", "JF*G"),
    ("H5_2", "FG*H"),
    ("H5_3", "GH*I"),
    ("H5_4", "HI*J"),
    ("H5_5", "IJ*F"),
    ("P6_1", "FGHIJ"),
];

/// Parses a color string into `(letter, starred)` pairs; letter order is
/// not significant.
pub fn color_set(s: &str) -> BTreeSet<(char, bool)> {
    let mut out = BTreeSet::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        let starred = chars.next_if_eq(&'*').is_some();
        out.insert((c, starred));
    }
    out
}

/// Class I injection nodes in color order `A..J`.
pub fn class_i_palette(g: &Graph) -> Vec<NodeId> {
    [2u8, 5]
        .iter()
        .flat_map(|&layer| {
            (1..=5).map(move |p| SbgLabel::new(Patch::H, layer, p).expect("valid label"))
        })
        .map(|l| g.sbg_node(l).expect("soccer ball graph"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn new(check: &str, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Self {
            check: check.to_string(),
            pass: expected == actual,
            expected,
            actual,
        }
    }
}

/// Runs every check in order, handing each row to `report` as it completes.
pub fn run(mut report: impl FnMut(&Check)) -> Vec<Check> {
    let mut checks = Vec::new();
    let mut push = |c: Check| {
        report(&c);
        checks.push(c);
    };
    let g = build_sbg();

    let degrees: Vec<usize> = g.nodes().map(|v| g.degree(v).expect("in range")).collect();
    push(Check::new(
        "sbg-structure",
        "32 nodes, 90 edges, 12 of degree 5, 20 of degree 6",
        format!(
            "{} nodes, {} edges, {} of degree 5, {} of degree 6",
            g.node_count(),
            g.edge_count(),
            degrees.iter().filter(|&&d| d == 5).count(),
            degrees.iter().filter(|&&d| d == 6).count()
        ),
    ));

    let palette = class_i_palette(&g);
    let strings = signatures(&g, &palette.iter().copied().collect()).color_strings(&palette);
    let matching = CLASS_I_COLORS
        .iter()
        .filter(|(name, want)| {
            g.node_by_name(name)
                .is_some_and(|v| color_set(&strings[v.index()]) == color_set(want))
        })
        .count();
    push(Check::new(
        "class-i-coloring",
        "32 of 32 rows match",
        format!("{matching} of 32 rows match"),
    ));

    let f9 = encode_ics(&g, 9);
    push(Check::new("encoding-size-budget-9", 273, f9.len()));

    for k in [8, 9] {
        let n = count_ics(&g, k, false).map(|r| r.count.to_string());
        push(Check::new(
            &format!("oracle-count-k{k}"),
            0,
            n.unwrap_or_else(|e| e.to_string()),
        ));
    }
    push(Check::new(
        "solver-budget-9",
        "UNSAT",
        outcome_label(solve(&f9)),
    ));
    push(Check::new(
        "solver-budget-10",
        "SAT",
        outcome_label(solve(&encode_ics(&g, 10))),
    ));

    let oracle10 = count_ics(&g, 10, true).expect("32 nodes");
    let oracle_sets: BTreeSet<Vec<usize>> = oracle10
        .solutions
        .as_deref()
        .unwrap_or_default()
        .iter()
        .map(|c| c.members().iter().map(NodeId::index).collect())
        .collect();
    push(Check::new("oracle-count-k10", 26, oracle10.count));

    for (check, budget) in [
        ("enumeration-exactly-10", Budget::Exactly(10)),
        ("enumeration-at-most-10", Budget::AtMost(10)),
    ] {
        let actual = match enumerated_sets(&g, budget) {
            Ok(sets) if sets == oracle_sets => format!("{} sets, equal to oracle", sets.len()),
            Ok(sets) => format!("{} sets, differ from oracle", sets.len()),
            Err(e) => e,
        };
        push(Check::new(check, "26 sets, equal to oracle", actual));
    }

    let h = classify_solutions(oracle10.solutions.as_deref().unwrap_or_default());
    let families: Vec<String> = h.families.iter().map(|(f, n)| format!("{f}:{n}")).collect();
    push(Check::new(
        "class-histogram",
        "I:1 II:10 III:10 IV:5 unmatched:0",
        format!("{} unmatched:{}", families.join(" "), h.unmatched.len()),
    ));

    push(Check::new(
        "fixture-proof",
        "verified, id 14 is 0 >= 1",
        fixture_proof_result(),
    ));
    checks
}

fn outcome_label<E: std::fmt::Display>(r: Result<crate::solve::SolveResult, E>) -> String {
    match r {
        Ok(r) => match r.outcome {
            Outcome::Sat(_) => "SAT".into(),
            Outcome::Unsat => "UNSAT".into(),
        },
        Err(e) => format!("inconclusive: {e}"),
    }
}

fn enumerated_sets(g: &Graph, budget: Budget) -> Result<BTreeSet<Vec<usize>>, String> {
    let f = encode_ics_with(g, budget);
    let vars: Vec<_> = f.vars().collect();
    let e = enumerate_all(&f, Some(&vars)).map_err(|e| e.to_string())?;
    Ok(e.solutions
        .iter()
        .map(|a| {
            let code: CodeSet = a.true_vars().map(var_node).collect();
            code.members().iter().map(NodeId::index).collect()
        })
        .collect())
}

fn fixture_proof_result() -> String {
    let f = match parse_opb(EXAMPLE_OPB) {
        Ok(f) => f,
        Err(e) => return e.to_string(),
    };
    let steps = match parse_proof(EXAMPLE_PROOF) {
        Ok(s) => s,
        Err(e) => return e.to_string(),
    };
    match verify(&f, &steps) {
        Ok(v) => format!(
            "verified, id {} is {}",
            v.contradiction_id,
            v.db.get(v.contradiction_id).expect("claimed id exists")
        ),
        Err(e) => e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn color_sets_ignore_letter_order() {
        assert_eq!(color_set("DE*A"), color_set("ADE*"));
        assert_ne!(color_set("A*B"), color_set("AB*"));
        assert_eq!(color_set(""), BTreeSet::new());
    }

    #[test]
    fn palette_is_two_rings() {
        let g = build_sbg();
        let names: Vec<_> = class_i_palette(&g)
            .iter()
            .map(|&v| g.name(v).to_string())
            .collect();
        assert_eq!(names[0], "H2_1");
        assert_eq!(names[9], "H5_5");
    }

    #[test]
    fn fixture_verifies() {
        assert_eq!(fixture_proof_result(), "verified, id 14 is 0 >= 1");
    }
}
