//! Complete backtracking search over pseudo-Boolean formulas, and solution
//! enumeration with blocking constraints.

use serde::Serialize;
use thiserror::Error;

use crate::pb::{blocking_constraint, Assignment, Literal, PBFormula, Var};
use crate::propagate::Propagator;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
}

impl std::ops::AddAssign for SolveStats {
    fn add_assign(&mut self, o: Self) {
        self.decisions += o.decisions;
        self.propagations += o.propagations;
        self.conflicts += o.conflicts;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Sat(Assignment),
    Unsat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub outcome: Outcome,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self.outcome, Outcome::Sat(_))
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match &self.outcome {
            Outcome::Sat(a) => Some(a),
            Outcome::Unsat => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("decision limit of {limit} reached; result inconclusive")]
    LimitExceeded { limit: u64, stats: SolveStats },
    #[error("internal error: witness violates constraint {0}")]
    UnsoundWitness(usize),
}

/// Variable selection rule.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Branching {
    /// Largest summed coefficient over constraints not yet satisfied; ties go
    /// to the lowest variable index.
    #[default]
    CoefficientMass,
    /// First unassigned variable in the given order, then the remaining
    /// variables by index.
    FixedOrder(Vec<Var>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Cap on the number of decisions per call.
    pub decision_limit: Option<u64>,
    pub branching: Branching,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            decision_limit: Some(2_000_000_000),
            branching: Branching::CoefficientMass,
        }
    }
}

pub fn solve(f: &PBFormula) -> Result<SolveResult, SolveError> {
    solve_with(f, &SolverConfig::default())
}

struct Decision {
    trail_len: usize,
    lit: Literal,
    flipped: bool,
}

pub fn solve_with(f: &PBFormula, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    let mut p = Propagator::new(f.num_vars());
    for c in f.constraints() {
        p.add(c.clone());
    }
    let mut stats = SolveStats::default();
    let mut stack: Vec<Decision> = Vec::new();
    let mut conflict = p.propagate_root().is_err();

    loop {
        if conflict {
            stats.conflicts += 1;
            // Chronological backtracking: flip the most recent unflipped decision.
            loop {
                let Some(d) = stack.pop() else {
                    stats.propagations = p.propagations;
                    return Ok(SolveResult {
                        outcome: Outcome::Unsat,
                        stats,
                    });
                };
                p.backtrack(d.trail_len);
                if !d.flipped {
                    stack.push(Decision {
                        trail_len: d.trail_len,
                        lit: !d.lit,
                        flipped: true,
                    });
                    p.assign(!d.lit);
                    break;
                }
            }
        } else {
            let Some(v) = pick_branch(&p, &config.branching) else {
                stats.propagations = p.propagations;
                let witness = Assignment::total(
                    f.vars()
                        .map(|v| p.value(v).expect("all assigned"))
                        .collect(),
                );
                for (i, c) in f.constraints().iter().enumerate() {
                    if c.lhs(|v| witness.get(v).unwrap_or(false)) < c.degree() {
                        return Err(SolveError::UnsoundWitness(i));
                    }
                }
                return Ok(SolveResult {
                    outcome: Outcome::Sat(witness),
                    stats,
                });
            };
            stats.decisions += 1;
            if let Some(limit) = config.decision_limit {
                if stats.decisions > limit {
                    stats.propagations = p.propagations;
                    return Err(SolveError::LimitExceeded { limit, stats });
                }
            }
            let lit = v.positive();
            stack.push(Decision {
                trail_len: p.trail_len(),
                lit,
                flipped: false,
            });
            p.assign(lit);
        }
        conflict = p.propagate().is_err();
    }
}

fn pick_branch(p: &Propagator, branching: &Branching) -> Option<Var> {
    let n = p.num_vars();
    let first_unassigned = || (1..=n as u32).map(Var::new).find(|&v| p.value(v).is_none());
    match branching {
        Branching::FixedOrder(order) => order
            .iter()
            .copied()
            .filter(|v| (v.index() as usize) <= n)
            .find(|&v| p.value(v).is_none())
            .or_else(first_unassigned),
        Branching::CoefficientMass => {
            let mut mass = vec![0i64; n + 1];
            for (i, c) in p.constraints().iter().enumerate() {
                if p.is_satisfied(i) {
                    continue;
                }
                for &(a, l) in c.terms() {
                    if p.value(l.var()).is_none() {
                        mass[l.var().index() as usize] += a;
                    }
                }
            }
            let mut best: Option<(i64, Var)> = None;
            for (i, &m) in mass.iter().enumerate().skip(1) {
                let v = Var::new(i as u32);
                if p.value(v).is_none() && best.is_none_or(|(b, _)| m > b) {
                    best = Some((m, v));
                }
            }
            best.map(|(_, v)| v)
        }
    }
}

/// All solutions of `f`, restricted to `projection` (every variable when
/// `None`), found by repeated solving with blocking constraints.
///
/// Each returned assignment is the projection of a witness that has been
/// re-checked against the original formula.
pub fn enumerate_all(f: &PBFormula, projection: Option<&[Var]>) -> Result<Enumeration, SolveError> {
    enumerate_with(f, projection, &SolverConfig::default())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub solutions: Vec<Assignment>,
    pub stats: SolveStats,
    pub solver_calls: usize,
}

pub fn enumerate_with(
    f: &PBFormula,
    projection: Option<&[Var]>,
    config: &SolverConfig,
) -> Result<Enumeration, SolveError> {
    let all: Vec<Var> = f.vars().collect();
    let projection = projection.unwrap_or(&all);
    let mut working = f.clone();
    let mut solutions: Vec<Assignment> = Vec::new();
    let mut stats = SolveStats::default();
    let mut calls = 0;
    loop {
        let r = solve_with(&working, config)?;
        calls += 1;
        stats += r.stats;
        let Outcome::Sat(w) = r.outcome else { break };
        for (i, c) in f.constraints().iter().enumerate() {
            if c.lhs(|v| w.get(v).unwrap_or(false)) < c.degree() {
                return Err(SolveError::UnsoundWitness(i));
            }
        }
        let projected = w.restrict(projection);
        debug_assert!(!solutions.contains(&projected));
        working.push(blocking_constraint(&projected));
        solutions.push(projected);
    }
    Ok(Enumeration {
        solutions,
        stats,
        solver_calls: calls,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pb::LinearConstraint;

    fn x(i: u32) -> Literal {
        Var::new(i).positive()
    }

    #[test]
    fn unit_formula() {
        let mut f = PBFormula::new(1);
        f.push(LinearConstraint::clause_like([x(1)], 1));
        let r = solve(&f).unwrap();
        assert_eq!(r.witness(), Some(&Assignment::total(vec![true])));
    }

    #[test]
    fn empty_contradiction_is_unsat() {
        let mut f = PBFormula::new(1);
        f.push(LinearConstraint::constant(1));
        assert_eq!(solve(&f).unwrap().outcome, Outcome::Unsat);
    }

    #[test]
    fn enumerates_clause_models() {
        let mut f = PBFormula::new(2);
        f.push(LinearConstraint::clause_like([x(1), x(2)], 1));
        let e = enumerate_all(&f, None).unwrap();
        assert_eq!(e.solutions.len(), 3);
        assert_eq!(e.solver_calls, 4);
    }

    #[test]
    fn projection_collapses_free_variables() {
        let mut f = PBFormula::new(3);
        f.push(LinearConstraint::clause_like([x(1), x(2)], 1));
        let e = enumerate_all(&f, Some(&[Var::new(3)])).unwrap();
        assert_eq!(e.solutions.len(), 2);
    }

    #[test]
    fn limit_is_inconclusive_not_unsat() {
        let mut f = PBFormula::new(2);
        f.push(LinearConstraint::clause_like([x(1)], 1));
        f.push(LinearConstraint::clause_like([!x(1), x(2)], 1));
        f.push(LinearConstraint::clause_like([!x(2)], 1));
        let config = SolverConfig {
            decision_limit: Some(0),
            ..SolverConfig::default()
        };
        // Refuted at the root, so no decision is needed.
        assert_eq!(solve_with(&f, &config).unwrap().outcome, Outcome::Unsat);

        let mut g = PBFormula::new(4);
        g.push(LinearConstraint::clause_like([x(1), x(2)], 1));
        assert!(matches!(
            solve_with(&g, &config),
            Err(SolveError::LimitExceeded { limit: 0, .. })
        ));
    }

    #[test]
    fn fixed_order_branching() {
        let mut f = PBFormula::new(2);
        f.push(LinearConstraint::clause_like([x(1), x(2)], 1));
        f.push(LinearConstraint::clause_like([!x(1), !x(2)], 1));
        let config = SolverConfig {
            branching: Branching::FixedOrder(vec![Var::new(2)]),
            ..SolverConfig::default()
        };
        let r = solve_with(&f, &config).unwrap();
        assert_eq!(r.witness(), Some(&Assignment::total(vec![false, true])));
    }
}
