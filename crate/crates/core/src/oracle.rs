//! Exhaustive identifying-code search over all k-subsets, independent of the
//! solver and the proof checker.
//!
//! Subsets are visited in colexicographic order as 64-bit masks. The rank
//! range is cut into fixed-size chunks that run in parallel; chunk results
//! are concatenated in rank order, so output does not depend on the number of
//! worker threads.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, NodeSet};
use crate::ics::{motif_class_sets, CodeSet, Family, MotifClass};

const CHUNK: u64 = 1 << 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("k = {k} exceeds the node count {n}")]
    KTooLarge { k: usize, n: usize },
    #[error("exhaustive search supports at most 64 nodes, graph has {0}")]
    TooManyNodes(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCount {
    pub count: u64,
    /// Every identifying code of size k, in colex order, when requested.
    pub solutions: Option<Vec<CodeSet>>,
}

/// `C(n, k)` for `n <= 64`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// The k-subset of rank `rank` in colex order, as a mask.
fn unrank_colex(mut rank: u64, k: usize) -> u64 {
    let mut mask = 0u64;
    for i in (1..=k).rev() {
        let mut c = i - 1;
        while binomial(c + 1, i) <= rank {
            c += 1;
        }
        mask |= 1 << c;
        rank -= binomial(c, i);
    }
    mask
}

/// Next mask with the same popcount (Gosper's hack).
fn next_colex(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x.wrapping_add(c);
    (((r ^ x) >> 2) / c) | r
}

/// Checks domination first, then distinctness by insertion into a sorted
/// buffer, bailing out on the first failure.
fn identifies(closed: &[u64], code: u64, buf: &mut Vec<u64>) -> bool {
    buf.clear();
    for &m in closed {
        if m & code == 0 {
            return false;
        }
    }
    for &m in closed {
        let sig = m & code;
        match buf.binary_search(&sig) {
            Ok(_) => return false,
            Err(at) => buf.insert(at, sig),
        }
    }
    true
}

/// Counts (and optionally lists) the dominating identifying codes of size `k`.
pub fn count_ics(g: &Graph, k: usize, list: bool) -> Result<OracleCount, OracleError> {
    let n = g.node_count();
    let closed = g.closed_masks_u64().ok_or(OracleError::TooManyNodes(n))?;
    if k > n {
        return Err(OracleError::KTooLarge { k, n });
    }
    let total = binomial(n, k);
    let chunks = total.div_ceil(CHUNK);
    let per_chunk: Vec<(u64, Vec<u64>)> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let start = ci * CHUNK;
            let len = CHUNK.min(total - start);
            let mut mask = unrank_colex(start, k);
            let mut buf = Vec::with_capacity(n);
            let mut count = 0;
            let mut found = Vec::new();
            for step in 0..len {
                if identifies(&closed, mask, &mut buf) {
                    count += 1;
                    if list {
                        found.push(mask);
                    }
                }
                if step + 1 < len {
                    mask = next_colex(mask);
                }
            }
            (count, found)
        })
        .collect();
    let count = per_chunk.iter().map(|(c, _)| c).sum();
    let solutions = list.then(|| {
        per_chunk
            .into_iter()
            .flat_map(|(_, masks)| masks)
            .map(|m| CodeSet::new(NodeSet::from_u64(m)))
            .collect()
    });
    Ok(OracleCount { count, solutions })
}

/// Smallest `k <= k_max` admitting a dominating identifying code.
pub fn min_ics_size(g: &Graph, k_max: usize) -> Result<Option<usize>, OracleError> {
    for k in 0..=k_max.min(g.node_count()) {
        if count_ics(g, k, false)?.count > 0 {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassHistogram {
    pub families: BTreeMap<Family, usize>,
    pub classes: BTreeMap<MotifClass, usize>,
    pub unmatched: Vec<CodeSet>,
}

/// Matches soccer ball codes against the motif families.
pub fn classify_solutions(solutions: &[CodeSet]) -> ClassHistogram {
    let motifs = motif_class_sets();
    let mut h = ClassHistogram::default();
    for s in solutions {
        match motifs.iter().find(|m| &m.code == s) {
            Some(m) => {
                *h.classes.entry(m.class).or_default() += 1;
                *h.families.entry(m.class.family()).or_default() += 1;
            }
            None => h.unmatched.push(s.clone()),
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_subdivided_k4, NodeId};
    use crate::ics::{is_ics, Domination};

    #[test]
    fn binomials() {
        assert_eq!(binomial(32, 10), 64_512_240);
        assert_eq!(binomial(32, 9), 28_048_800);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(5, 0), 1);
    }

    #[test]
    fn colex_unrank_matches_successor() {
        for (n, k) in [(6, 3), (7, 1), (5, 5), (8, 4)] {
            let mut mask = unrank_colex(0, k);
            for r in 0..binomial(n, k) {
                assert_eq!(unrank_colex(r, k), mask, "n={n} k={k} r={r}");
                assert!(mask < 1 << n);
                assert_eq!(mask.count_ones() as usize, k);
                if r + 1 < binomial(n, k) {
                    let next = next_colex(mask);
                    assert!(next > mask);
                    mask = next;
                }
            }
        }
    }

    #[test]
    fn full_and_empty_subsets() {
        let g = build_subdivided_k4();
        let full = count_ics(&g, 10, true).unwrap();
        let all: CodeSet = g.nodes().collect();
        assert_eq!(
            full.count,
            u64::from(is_ics(&g, &all, Domination::Required))
        );
        assert_eq!(count_ics(&g, 0, false).unwrap().count, 0);
        assert_eq!(
            count_ics(&g, 11, false),
            Err(OracleError::KTooLarge { k: 11, n: 10 })
        );
    }

    #[test]
    fn subdivided_k4_minimum() {
        let g = build_subdivided_k4();
        let min = min_ics_size(&g, 10).unwrap().unwrap();
        assert!(min <= 4);
        let four = count_ics(&g, 4, true).unwrap();
        let expected = CodeSet::from_names(&g, &["v1", "v2", "v3", "v4"]).unwrap();
        assert!(four.solutions.unwrap().contains(&expected));
    }

    #[test]
    fn single_node() {
        let g = Graph::from_edges(1, []).unwrap();
        assert_eq!(min_ics_size(&g, 1).unwrap(), Some(1));
        assert_eq!(min_ics_size(&g, 0).unwrap(), None);
    }

    #[test]
    fn too_many_nodes() {
        let g = Graph::from_edges(65, []).unwrap();
        assert_eq!(count_ics(&g, 1, false), Err(OracleError::TooManyNodes(65)));
    }

    #[test]
    fn classify_reports_unmatched() {
        assert_eq!(classify_solutions(&[]), ClassHistogram::default());
        let fake: CodeSet = (0..10).map(NodeId).collect();
        let h = classify_solutions(std::slice::from_ref(&fake));
        assert_eq!(h.unmatched, vec![fake]);
        assert!(h.families.is_empty());
    }
}
