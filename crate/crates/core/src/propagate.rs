//! Slack-based propagation over normalized pseudo-Boolean constraints.
//!
//! For a constraint `Σ a_i ℓ_i >= d` the slack under a partial assignment is
//! the sum of coefficients of literals that are not false, minus `d`. A
//! negative slack is a conflict; an unassigned literal whose coefficient
//! exceeds the slack is forced true.

use crate::pb::{LinearConstraint, Literal, Var};

pub(crate) struct Propagator {
    constraints: Vec<LinearConstraint>,
    /// Indexed by literal code: constraints containing that literal.
    occurs: Vec<Vec<(usize, i64)>>,
    slack: Vec<i64>,
    /// Sum of coefficients of true literals, per constraint.
    satisfied: Vec<i64>,
    max_coef: Vec<i64>,
    values: Vec<Option<bool>>,
    trail: Vec<Literal>,
    qhead: usize,
    pub propagations: u64,
}

impl Propagator {
    pub fn new(num_vars: usize) -> Self {
        Self {
            constraints: Vec::new(),
            occurs: vec![Vec::new(); 2 * (num_vars + 1)],
            slack: Vec::new(),
            satisfied: Vec::new(),
            max_coef: Vec::new(),
            values: vec![None; num_vars + 1],
            trail: Vec::new(),
            qhead: 0,
            propagations: 0,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len() - 1
    }

    fn ensure_var(&mut self, v: Var) {
        let needed = v.index() as usize + 1;
        if self.values.len() < needed {
            self.values.resize(needed, None);
            self.occurs.resize(2 * needed, Vec::new());
        }
    }

    /// Adds a constraint. Only valid while nothing is assigned.
    pub fn add(&mut self, c: LinearConstraint) {
        debug_assert!(self.trail.is_empty());
        let idx = self.constraints.len();
        for &(a, l) in c.terms() {
            self.ensure_var(l.var());
            self.occurs[l.code()].push((idx, a));
        }
        self.slack.push(c.coefficient_sum() - c.degree());
        self.satisfied.push(0);
        self.max_coef
            .push(c.terms().iter().map(|&(a, _)| a).max().unwrap_or(0));
        self.constraints.push(c);
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn value(&self, v: Var) -> Option<bool> {
        self.values[v.index() as usize]
    }

    pub fn is_satisfied(&self, c: usize) -> bool {
        self.satisfied[c] >= self.constraints[c].degree()
    }

    pub fn trail_len(&self) -> usize {
        self.trail.len()
    }

    pub fn assign(&mut self, l: Literal) {
        debug_assert!(self.value(l.var()).is_none());
        self.values[l.var().index() as usize] = Some(!l.is_negated());
        for &(c, a) in &self.occurs[l.code()] {
            self.satisfied[c] += a;
        }
        self.trail.push(l);
    }

    /// Scans every constraint once; used before the first decision.
    pub fn propagate_root(&mut self) -> Result<(), usize> {
        for c in 0..self.constraints.len() {
            if self.slack[c] < 0 {
                return Err(c);
            }
            if self.slack[c] < self.max_coef[c] {
                self.force(c);
            }
        }
        self.propagate()
    }

    fn force(&mut self, c: usize) {
        let slack = self.slack[c];
        for i in 0..self.constraints[c].terms().len() {
            let (a, l) = self.constraints[c].terms()[i];
            if a > slack && self.value(l.var()).is_none() {
                self.assign(l);
                self.propagations += 1;
            }
        }
    }

    /// Propagates the unprocessed part of the trail to a fixpoint, returning
    /// the index of a conflicting constraint if one is found.
    pub fn propagate(&mut self) -> Result<(), usize> {
        while self.qhead < self.trail.len() {
            let falsified = self.trail[self.qhead].negate().code();
            self.qhead += 1;
            let mut conflict = None;
            for &(c, a) in &self.occurs[falsified] {
                self.slack[c] -= a;
                if self.slack[c] < 0 && conflict.is_none() {
                    conflict = Some(c);
                }
            }
            if let Some(c) = conflict {
                return Err(c);
            }
            for k in 0..self.occurs[falsified].len() {
                let c = self.occurs[falsified][k].0;
                if self.slack[c] < self.max_coef[c] {
                    self.force(c);
                }
            }
        }
        Ok(())
    }

    /// Undoes every assignment at trail position `len` and above.
    pub fn backtrack(&mut self, len: usize) {
        for i in (len..self.trail.len()).rev() {
            let l = self.trail[i];
            if i < self.qhead {
                for &(c, a) in &self.occurs[l.negate().code()] {
                    self.slack[c] += a;
                }
            }
            for &(c, a) in &self.occurs[l.code()] {
                self.satisfied[c] -= a;
            }
            self.values[l.var().index() as usize] = None;
        }
        self.trail.truncate(len);
        self.qhead = self.qhead.min(len);
    }
}

/// Checks `claim` by reverse unit propagation: adds its negation to `db` and
/// reports whether root-level propagation reaches a conflict.
pub(crate) fn rup<'a>(
    db: impl IntoIterator<Item = &'a LinearConstraint>,
    num_vars: usize,
    claim: &LinearConstraint,
) -> bool {
    let mut p = Propagator::new(num_vars);
    for c in db {
        p.add(c.clone());
    }
    p.add(negation(claim));
    p.propagate_root().is_err()
}

/// `Σ a ℓ >= d` negates to `Σ a ℓ <= d - 1`, i.e. `Σ a ℓ̄ >= Σ a - d + 1`.
pub(crate) fn negation(c: &LinearConstraint) -> LinearConstraint {
    let terms: Vec<_> = c.terms().iter().map(|&(a, l)| (a, l.negate())).collect();
    LinearConstraint::from_signed(&terms, c.coefficient_sum() - c.degree() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Literal {
        Var::new(i).positive()
    }

    #[test]
    fn forces_large_coefficients() {
        // 3 x1 + x2 + x3 >= 2 with x2 false: slack 2 < 3, x1 forced.
        let mut p = Propagator::new(3);
        p.add(LinearConstraint::from_signed(
            &[(3, x(1)), (1, x(2)), (1, x(3))],
            2,
        ));
        p.propagate_root().unwrap();
        assert_eq!(p.value(Var::new(1)), None);
        p.assign(!x(2));
        p.propagate().unwrap();
        assert_eq!(p.value(Var::new(1)), Some(true));
        assert_eq!(p.value(Var::new(3)), None);
        p.backtrack(0);
        assert_eq!(p.value(Var::new(1)), None);
        assert_eq!(p.trail_len(), 0);
    }

    #[test]
    fn detects_conflict_and_restores_slack() {
        let mut p = Propagator::new(2);
        p.add(LinearConstraint::clause_like([x(1), x(2)], 1));
        p.add(LinearConstraint::clause_like([!x(1)], 1));
        p.add(LinearConstraint::clause_like([!x(2), x(1)], 1));
        assert!(p.propagate_root().is_err());
    }

    #[test]
    fn rup_of_trivial_claims() {
        assert!(rup([], 0, &LinearConstraint::constant(0)));
        assert!(!rup([], 1, &LinearConstraint::clause_like([x(1)], 1)));
        let db = [LinearConstraint::clause_like([x(1)], 1)];
        assert!(rup(&db, 2, &LinearConstraint::clause_like([x(1), x(2)], 1)));
    }

    #[test]
    fn negation_flips_satisfaction() {
        let c = LinearConstraint::from_signed(&[(2, x(1)), (1, !x(2))], 2);
        let n = negation(&c);
        for mask in 0..4u32 {
            let val = |v: Var| mask >> (v.index() - 1) & 1 == 1;
            assert_ne!(c.lhs(val) >= c.degree(), n.lhs(val) >= n.degree());
        }
    }
}
