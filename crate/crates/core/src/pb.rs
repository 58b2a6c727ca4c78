//! Pseudo-Boolean constraints, formulas and assignments, plus the
//! identifying-code encoding.
//!
//! Every stored constraint is in normalized form: a `>=` relation, strictly
//! positive coefficients, and at most one term per variable.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, NodeId};

/// Boolean variable, numbered from 1 as in OPB files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Panics on 0.
    pub fn new(index: u32) -> Self {
        assert!(index >= 1, "variables are numbered from 1");
        Self(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn positive(self) -> Literal {
        Literal::new(self, false)
    }

    pub fn negative(self) -> Literal {
        Literal::new(self, true)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A variable or its negation, packed as `2 * var + negated`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(u32);

impl Literal {
    pub fn new(var: Var, negated: bool) -> Self {
        Self(var.0 << 1 | u32::from(negated))
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_negated(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn negate(self) -> Self {
        Self(self.0 ^ 1)
    }

    /// Dense code usable as an array index (`2 * var + negated`).
    pub fn code(self) -> usize {
        self.0 as usize
    }

    /// Truth value of the literal when its variable takes `value`.
    pub fn eval(self, value: bool) -> bool {
        value != self.is_negated()
    }
}

impl std::ops::Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        self.negate()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negated() {
            write!(f, "~{}", self.var())
        } else {
            write!(f, "{}", self.var())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Gt,
    Le,
    Lt,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            ">=" => Relation::Ge,
            ">" => Relation::Gt,
            "<=" => Relation::Le,
            "<" => Relation::Lt,
            "=" => Relation::Eq,
            _ => return None,
        })
    }
}

/// A constraint as written by a user: signed coefficients, any relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawConstraint {
    pub terms: Vec<(i64, Literal)>,
    pub relation: Relation,
    pub rhs: i64,
}

impl RawConstraint {
    pub fn new(terms: Vec<(i64, Literal)>, relation: Relation, rhs: i64) -> Self {
        Self {
            terms,
            relation,
            rhs,
        }
    }

    /// Rewrites into one (two for `=`) normalized `>=` constraints.
    pub fn normalize(&self) -> Vec<LinearConstraint> {
        let negated = || self.terms.iter().map(|&(a, l)| (-a, l)).collect::<Vec<_>>();
        match self.relation {
            Relation::Ge => vec![LinearConstraint::from_signed(&self.terms, self.rhs)],
            Relation::Gt => vec![LinearConstraint::from_signed(&self.terms, self.rhs + 1)],
            Relation::Le => vec![LinearConstraint::from_signed(&negated(), -self.rhs)],
            Relation::Lt => vec![LinearConstraint::from_signed(&negated(), -self.rhs + 1)],
            Relation::Eq => vec![
                LinearConstraint::from_signed(&self.terms, self.rhs),
                LinearConstraint::from_signed(&negated(), -self.rhs),
            ],
        }
    }
}

/// Normalized constraint `Σ a_i ℓ_i >= degree` with every `a_i > 0`.
///
/// Terms are kept sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    terms: Vec<(i64, Literal)>,
    degree: i64,
}

impl LinearConstraint {
    /// Normalizes `Σ a_i ℓ_i >= degree` where the `a_i` may have any sign and
    /// literals may repeat.
    pub fn from_signed(terms: &[(i64, Literal)], degree: i64) -> Self {
        let mut linear = LinearForm::default();
        for &(a, l) in terms {
            linear.add_term(a, l);
        }
        linear.degree += degree;
        linear.into_constraint()
    }

    /// `Σ ℓ >= degree` over the given literals.
    pub fn clause_like(lits: impl IntoIterator<Item = Literal>, degree: i64) -> Self {
        let terms: Vec<_> = lits.into_iter().map(|l| (1, l)).collect();
        Self::from_signed(&terms, degree)
    }

    /// The constraint `0 >= degree`.
    pub fn constant(degree: i64) -> Self {
        Self {
            terms: Vec::new(),
            degree,
        }
    }

    pub fn terms(&self) -> &[(i64, Literal)] {
        &self.terms
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Satisfied by every assignment.
    pub fn is_trivial(&self) -> bool {
        self.degree <= 0
    }

    /// Violated by every assignment: the coefficients cannot reach the degree.
    pub fn is_contradiction(&self) -> bool {
        self.coefficient_sum() < self.degree
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.terms.iter().map(|&(a, _)| a).sum()
    }

    pub fn max_var(&self) -> u32 {
        self.terms
            .iter()
            .map(|&(_, l)| l.var().index())
            .max()
            .unwrap_or(0)
    }

    pub fn coefficient_of(&self, lit: Literal) -> i64 {
        self.terms
            .iter()
            .find(|&&(_, l)| l == lit)
            .map_or(0, |&(a, _)| a)
    }

    /// Left-hand side value under a variable lookup.
    pub fn lhs(&self, value: impl Fn(Var) -> bool) -> i64 {
        self.terms
            .iter()
            .filter(|&&(_, l)| l.eval(value(l.var())))
            .map(|&(a, _)| a)
            .sum()
    }

    /// Equivalent form with every literal positive: `Σ c_x x >= rhs`.
    /// Coefficients may then be negative.
    pub fn signed_terms(&self) -> (Vec<(i64, Var)>, i64) {
        let mut rhs = self.degree;
        let terms = self
            .terms
            .iter()
            .map(|&(a, l)| {
                if l.is_negated() {
                    rhs -= a;
                    (-a, l.var())
                } else {
                    (a, l.var())
                }
            })
            .collect();
        (terms, rhs)
    }

    pub(crate) fn linear_form(&self) -> LinearForm {
        let mut f = LinearForm::default();
        for &(a, l) in &self.terms {
            f.add_term(a, l);
        }
        f.degree += self.degree;
        f
    }

    pub(crate) fn from_parts_unchecked(terms: Vec<(i64, Literal)>, degree: i64) -> Self {
        debug_assert!(terms.iter().all(|&(a, _)| a > 0));
        debug_assert!(terms.windows(2).all(|w| w[0].1.var() < w[1].1.var()));
        Self { terms, degree }
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, &(a, l)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if a != 1 {
                write!(f, "{a} ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, " >= {}", self.degree)
    }
}

/// `Σ c_x x >= degree` over positive literals with signed coefficients; the
/// intermediate form for normalization and addition.
#[derive(Clone, Debug, Default)]
pub(crate) struct LinearForm {
    pub coeffs: BTreeMap<Var, i64>,
    pub degree: i64,
}

impl LinearForm {
    pub fn add_term(&mut self, a: i64, l: Literal) {
        if a == 0 {
            return;
        }
        // a·x̄ = a − a·x
        let (c, shift) = if l.is_negated() { (-a, a) } else { (a, 0) };
        *self.coeffs.entry(l.var()).or_insert(0) += c;
        self.degree -= shift;
    }

    pub fn add(&mut self, other: &LinearForm) {
        for (&v, &c) in &other.coeffs {
            *self.coeffs.entry(v).or_insert(0) += c;
        }
        self.degree += other.degree;
    }

    pub fn into_constraint(self) -> LinearConstraint {
        let mut degree = self.degree;
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (v, c) in self.coeffs {
            match c.cmp(&0) {
                std::cmp::Ordering::Greater => terms.push((c, v.positive())),
                std::cmp::Ordering::Less => {
                    // c·x = c + |c|·x̄
                    terms.push((-c, v.negative()));
                    degree -= c;
                }
                std::cmp::Ordering::Equal => {}
            }
        }
        LinearConstraint { terms, degree }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PbError {
    #[error("assignment is not total")]
    NotTotal,
}

/// Total or partial map from variables `1..=num_vars` to truth values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    pub fn unassigned(num_vars: usize) -> Self {
        Self {
            values: vec![None; num_vars],
        }
    }

    /// `values[i]` is the value of variable `i + 1`.
    pub fn total(values: Vec<bool>) -> Self {
        Self {
            values: values.into_iter().map(Some).collect(),
        }
    }

    /// Total assignment over `num_vars` variables read from the low bits of
    /// `mask` (bit `i` is variable `i + 1`).
    pub fn from_mask(num_vars: usize, mask: u64) -> Self {
        Self::total((0..num_vars).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, v: Var) -> Option<bool> {
        self.values.get(v.index() as usize - 1).copied().flatten()
    }

    pub fn set(&mut self, v: Var, value: bool) {
        let i = v.index() as usize - 1;
        if i >= self.values.len() {
            self.values.resize(i + 1, None);
        }
        self.values[i] = Some(value);
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    /// Variables set to true, ascending.
    pub fn true_vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == Some(true))
            .map(|(i, _)| Var::new(i as u32 + 1))
    }

    /// Keeps only the given variables; everything else becomes unassigned.
    pub fn restrict(&self, vars: &[Var]) -> Self {
        let mut out = Self::unassigned(self.num_vars());
        for &v in vars {
            if let Some(b) = self.get(v) {
                out.set(v, b);
            }
        }
        out
    }

    /// `v x1 -x2 ...` witness line; unassigned variables are omitted.
    pub fn to_witness_line(&self) -> String {
        let mut out = String::from("v");
        for (i, v) in self.values.iter().enumerate() {
            match v {
                Some(true) => out.push_str(&format!(" x{}", i + 1)),
                Some(false) => out.push_str(&format!(" -x{}", i + 1)),
                None => {}
            }
        }
        out
    }
}

/// Evaluates a constraint under a total assignment.
pub fn evaluate(c: &LinearConstraint, a: &Assignment) -> Result<bool, PbError> {
    if !a.is_total() || c.max_var() as usize > a.num_vars() {
        return Err(PbError::NotTotal);
    }
    Ok(c.lhs(|v| a.get(v).unwrap_or(false)) >= c.degree())
}

/// Ordered list of normalized constraints with a variable name table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PBFormula {
    constraints: Vec<LinearConstraint>,
    num_vars: usize,
    names: BTreeMap<u32, String>,
}

impl PBFormula {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            ..Self::default()
        }
    }

    /// Appends a constraint, growing `num_vars` if it mentions a new variable.
    pub fn push(&mut self, c: LinearConstraint) {
        self.num_vars = self.num_vars.max(c.max_var() as usize);
        self.constraints.push(c);
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (1..=self.num_vars as u32).map(Var::new)
    }

    pub fn set_name(&mut self, v: Var, name: impl Into<String>) {
        self.num_vars = self.num_vars.max(v.index() as usize);
        self.names.insert(v.index(), name.into());
    }

    pub fn name(&self, v: Var) -> Option<&str> {
        self.names.get(&v.index()).map(String::as_str)
    }

    pub fn names(&self) -> &BTreeMap<u32, String> {
        &self.names
    }

    pub fn var_by_name(&self, name: &str) -> Option<Var> {
        self.names
            .iter()
            .find(|(_, n)| n.as_str() == name)
            .map(|(&i, _)| Var::new(i))
    }

    /// Whether a total assignment satisfies every constraint.
    pub fn is_satisfied_by(&self, a: &Assignment) -> Result<bool, PbError> {
        for c in &self.constraints {
            if !evaluate(c, a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Variable assigned to a graph node: node `i` is `x{i+1}`.
pub fn node_var(v: NodeId) -> Var {
    Var::new(v.index() as u32 + 1)
}

pub fn var_node(v: Var) -> NodeId {
    NodeId(v.index() as usize - 1)
}

/// Cardinality bound on the number of chosen code nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    AtMost(usize),
    Exactly(usize),
}

/// Identifying-code encoding with an upper bound on the code size.
///
/// Emits, in order: one "some closed neighbor is chosen" constraint per node,
/// one distinguishing constraint per unordered pair of distinct nodes within
/// distance two, and the normalized budget.
pub fn encode_ics(g: &Graph, budget: usize) -> PBFormula {
    encode_ics_with(g, Budget::AtMost(budget))
}

pub fn encode_ics_with(g: &Graph, budget: Budget) -> PBFormula {
    let n = g.node_count();
    let mut f = PBFormula::new(n);
    for v in g.nodes() {
        f.set_name(node_var(v), g.name(v));
    }
    for v in g.nodes() {
        let closed = g.closed_neighborhood(v).expect("node in range");
        f.push(LinearConstraint::clause_like(
            closed.iter().map(|u| node_var(u).positive()),
            1,
        ));
    }
    for u in g.nodes() {
        let near = g.closed_two_neighborhood(u).expect("node in range");
        for v in near.iter().filter(|&v| v > u) {
            let ds = g.distinguishing_set(u, v).expect("distinct nodes");
            // Twins give an empty constraint with degree 1: unsatisfiable.
            f.push(LinearConstraint::clause_like(
                ds.iter().map(|w| node_var(w).positive()),
                1,
            ));
        }
    }
    let all: Vec<(i64, Literal)> = g.nodes().map(|v| (1, node_var(v).positive())).collect();
    let raw = match budget {
        Budget::AtMost(b) => RawConstraint::new(all, Relation::Le, b as i64),
        Budget::Exactly(b) => RawConstraint::new(all, Relation::Eq, b as i64),
    };
    for c in raw.normalize() {
        f.push(c);
    }
    f
}

/// Constraint satisfied by exactly the assignments that differ from `a` on at
/// least one assigned variable.
pub fn blocking_constraint(a: &Assignment) -> LinearConstraint {
    let lits = (1..=a.num_vars() as u32).filter_map(|i| {
        let v = Var::new(i);
        a.get(v)
            .map(|b| if b { v.negative() } else { v.positive() })
    });
    LinearConstraint::clause_like(lits, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_sbg;

    fn x(i: u32) -> Literal {
        Var::new(i).positive()
    }

    #[test]
    fn literal_negation_is_involution() {
        let l = x(7);
        assert_eq!(!!l, l);
        assert_ne!(!l, l);
        assert_eq!((!l).var(), l.var());
        assert_eq!((!l).to_string(), "~x7");
    }

    #[test]
    fn normalize_negative_coefficients() {
        let raw = RawConstraint::new(vec![(-1, x(1)), (-1, x(2))], Relation::Ge, -9);
        let out = raw.normalize();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].terms(), &[(1, !x(1)), (1, !x(2))]);
        assert_eq!(out[0].degree(), -7);
        assert!(out[0].is_trivial());
    }

    #[test]
    fn normalize_budget_over_32() {
        let terms = (1..=32).map(|i| (1, x(i))).collect();
        let out = RawConstraint::new(terms, Relation::Le, 9).normalize();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].degree(), 23);
        assert!(out[0]
            .terms()
            .iter()
            .all(|&(a, l)| a == 1 && l.is_negated()));
    }

    #[test]
    fn normalize_equality_and_strict() {
        let eq = RawConstraint::new(vec![(1, x(1)), (1, x(2))], Relation::Eq, 1).normalize();
        assert_eq!(
            eq,
            vec![
                LinearConstraint::clause_like([x(1), x(2)], 1),
                LinearConstraint::clause_like([!x(1), !x(2)], 1),
            ]
        );
        let gt = RawConstraint::new(vec![(2, x(1))], Relation::Gt, 1).normalize();
        assert_eq!(gt[0], LinearConstraint::from_signed(&[(2, x(1))], 2));
        let lt = RawConstraint::new(vec![(1, x(1)), (0, x(2))], Relation::Lt, 1).normalize();
        assert_eq!(lt[0].terms(), &[(1, !x(1))]);
        assert_eq!(lt[0].degree(), 1);
    }

    #[test]
    fn opposite_literals_merge() {
        let c = LinearConstraint::from_signed(&[(3, x(1)), (1, !x(1)), (2, x(2))], 2);
        assert_eq!(c.terms(), &[(2, x(1)), (2, x(2))]);
        assert_eq!(c.degree(), 1);
    }

    #[test]
    fn evaluate_examples() {
        let c = LinearConstraint::clause_like([x(1), x(2)], 1);
        assert_eq!(
            evaluate(&c, &Assignment::total(vec![false, true])),
            Ok(true)
        );
        let l2 = LinearConstraint::from_signed(&[(1, x(2)), (2, x(3)), (3, x(4))], 3);
        let a = Assignment::total(vec![false, true, true, false]);
        assert_eq!(evaluate(&l2, &a), Ok(true));
        let trivial = LinearConstraint::from_signed(&[(1, x(1))], -2);
        assert_eq!(
            evaluate(&trivial, &Assignment::total(vec![false])),
            Ok(true)
        );
        let mut partial = Assignment::unassigned(2);
        partial.set(Var::new(1), true);
        assert_eq!(evaluate(&c, &partial), Err(PbError::NotTotal));
        assert_eq!(
            evaluate(&c, &Assignment::total(vec![true])),
            Err(PbError::NotTotal)
        );
    }

    #[test]
    fn blocking_examples() {
        let a = Assignment::total(vec![true, false]);
        let b = blocking_constraint(&a);
        assert_eq!(b, LinearConstraint::clause_like([!x(1), x(2)], 1));
        assert_eq!(evaluate(&b, &a), Ok(false));
        for flip in 0..2 {
            let mut other = a.clone();
            let v = Var::new(flip + 1);
            other.set(v, !a.get(v).unwrap());
            assert_eq!(evaluate(&b, &other), Ok(true));
        }
    }

    #[test]
    fn sbg_encoding_counts() {
        let g = build_sbg();
        let f = encode_ics(&g, 9);
        assert_eq!(f.len(), 273);
        assert_eq!(f.num_vars(), 32);
        let budget = &f.constraints()[272];
        assert_eq!(budget.degree(), 23);
        assert_eq!(f.name(Var::new(1)), Some("P1_1"));
        assert_eq!(f.name(Var::new(32)), Some("P6_1"));
        let exact = encode_ics_with(&g, Budget::Exactly(10));
        assert_eq!(exact.len(), 274);
    }

    #[test]
    fn single_node_encoding() {
        let g = Graph::from_edges(1, []).unwrap();
        let f = encode_ics(&g, 1);
        assert_eq!(
            f.constraints(),
            &[
                LinearConstraint::clause_like([x(1)], 1),
                LinearConstraint::clause_like([!x(1)], 0),
            ]
        );
    }

    #[test]
    fn twins_emit_empty_constraint() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let f = encode_ics(&g, 2);
        assert_eq!(f.len(), 4);
        assert_eq!(f.constraints()[2], LinearConstraint::constant(1));
        assert!(f.constraints()[2].is_contradiction());
    }
}
