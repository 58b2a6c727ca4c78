//! Cutting-planes inference rules on normalized constraints.

use thiserror::Error;

use crate::pb::{LinearConstraint, Literal};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("factor must be positive, got {0}")]
    NonPositiveFactor(i64),
    #[error("coefficient overflow")]
    Overflow,
}

/// `ℓ >= 0`. For a negated literal this is the upper bound `-x >= -1`.
pub fn axiom_literal(l: Literal) -> LinearConstraint {
    LinearConstraint::from_parts_unchecked(vec![(1, l)], 0)
}

/// Sum of two constraints. Opposite literals cancel: `a·x + b·x̄` becomes
/// `|a - b|` on the dominant literal with the degree lowered by `min(a, b)`.
pub fn add(a: &LinearConstraint, b: &LinearConstraint) -> LinearConstraint {
    let mut f = a.linear_form();
    f.add(&b.linear_form());
    f.into_constraint()
}

pub fn multiply(c: &LinearConstraint, factor: i64) -> Result<LinearConstraint, RuleError> {
    if factor <= 0 {
        return Err(RuleError::NonPositiveFactor(factor));
    }
    let terms = c
        .terms()
        .iter()
        .map(|&(a, l)| a.checked_mul(factor).map(|a| (a, l)))
        .collect::<Option<Vec<_>>>()
        .ok_or(RuleError::Overflow)?;
    let degree = c.degree().checked_mul(factor).ok_or(RuleError::Overflow)?;
    Ok(LinearConstraint::from_parts_unchecked(terms, degree))
}

fn ceil_div(n: i64, d: i64) -> i64 {
    n.div_euclid(d) + i64::from(n.rem_euclid(d) != 0)
}

/// Divides every coefficient and the degree by `divisor`, rounding up.
pub fn divide(c: &LinearConstraint, divisor: i64) -> Result<LinearConstraint, RuleError> {
    if divisor <= 0 {
        return Err(RuleError::NonPositiveFactor(divisor));
    }
    let terms = c
        .terms()
        .iter()
        .map(|&(a, l)| (ceil_div(a, divisor), l))
        .collect();
    Ok(LinearConstraint::from_parts_unchecked(
        terms,
        ceil_div(c.degree(), divisor),
    ))
}

/// Caps every coefficient at `max(degree, 0)`.
pub fn saturate(c: &LinearConstraint) -> LinearConstraint {
    let cap = c.degree().max(0);
    let terms = c
        .terms()
        .iter()
        .filter(|_| cap > 0)
        .map(|&(a, l)| (a.min(cap), l))
        .collect();
    LinearConstraint::from_parts_unchecked(terms, c.degree())
}
