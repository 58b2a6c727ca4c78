//! Reading and writing the linear subset of the OPB format.
//!
//! ```text
//! * #variable= 2 #constraint= 1
//! * name x1 a
//! +1 x1 +1 x2 >= 1 ;
//! ```
//!
//! Negated literals are written as negative coefficients on the positive
//! variable with the degree shifted, so every line stays in plain
//! `±c xN` form. `* name xN <name>` comment lines carry the variable name
//! table.

use std::fmt::Write as _;

use thiserror::Error;

use crate::pb::{Literal, PBFormula, RawConstraint, Relation, Var};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct OpbError {
    pub line: usize,
    pub kind: OpbErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OpbErrorKind {
    #[error("unknown token {0:?}")]
    UnknownToken(String),
    #[error("missing ';' terminator")]
    MissingSemicolon,
    #[error("variable x{var} exceeds declared #variable= {declared}")]
    VariableOutOfRange { var: u32, declared: usize },
    #[error("nonlinear term at {0:?}")]
    Nonlinear(String),
    #[error("objective functions are not supported")]
    Objective,
    #[error("malformed header: {0}")]
    Header(String),
    #[error("header declares {declared} constraints, found {found}")]
    ConstraintCount { declared: usize, found: usize },
}

const NAME_PREFIX: &str = "* name ";

/// Renders one normalized constraint as an OPB line (without newline).
pub fn constraint_line(c: &crate::pb::LinearConstraint) -> String {
    let (terms, rhs) = c.signed_terms();
    let mut out = String::new();
    for (a, v) in terms {
        let _ = write!(out, "{a:+} {v} ");
    }
    let _ = write!(out, ">= {rhs} ;");
    out
}

/// The `* name xN <name>` block for a formula's name table.
pub fn names_block(f: &PBFormula) -> String {
    let mut out = String::new();
    for (i, name) in f.names() {
        let _ = writeln!(out, "{NAME_PREFIX}x{i} {name}");
    }
    out
}

pub fn write_opb(f: &PBFormula) -> String {
    let mut out = format!("* #variable= {} #constraint= {}\n", f.num_vars(), f.len());
    out.push_str(&names_block(f));
    for c in f.constraints() {
        out.push_str(&constraint_line(c));
        out.push('\n');
    }
    out
}

fn parse_var(tok: &str) -> Option<Var> {
    let idx: u32 = tok.strip_prefix('x')?.parse().ok()?;
    (idx >= 1).then(|| Var::new(idx))
}

/// Parses `xN` or `~xN`.
pub fn parse_literal(tok: &str) -> Option<Literal> {
    match tok.strip_prefix('~') {
        Some(rest) => parse_var(rest).map(Var::negative),
        None => parse_var(tok).map(Var::positive),
    }
}

fn parse_coefficient(tok: &str) -> Option<i64> {
    let digits = tok.strip_prefix('+').unwrap_or(tok);
    if digits.is_empty() || digits.starts_with('+') {
        return None;
    }
    digits.parse().ok()
}

/// Parses a constraint body (`[coef lit]* rel rhs ;`) into raw form.
///
/// Shared with the proof parser, which uses the same syntax for `u` steps.
pub fn parse_constraint_tokens(tokens: &[&str]) -> Result<RawConstraint, OpbErrorKind> {
    let Some((&last, body)) = tokens.split_last() else {
        return Err(OpbErrorKind::MissingSemicolon);
    };
    let body: Vec<&str> = match last {
        ";" => body.to_vec(),
        t if t.ends_with(';') => {
            let mut b = body.to_vec();
            b.push(&t[..t.len() - 1]);
            b
        }
        _ => return Err(OpbErrorKind::MissingSemicolon),
    };
    let rel_pos = body
        .iter()
        .position(|t| Relation::parse(t).is_some())
        .ok_or_else(|| OpbErrorKind::UnknownToken(body.join(" ")))?;
    let relation = Relation::parse(body[rel_pos]).expect("position found above");
    let rhs_tokens = &body[rel_pos + 1..];
    let rhs = match rhs_tokens {
        [r] => parse_coefficient(r).ok_or_else(|| OpbErrorKind::UnknownToken(r.to_string()))?,
        [] => return Err(OpbErrorKind::UnknownToken(relation.symbol().to_string())),
        [_, extra, ..] => return Err(OpbErrorKind::UnknownToken(extra.to_string())),
    };

    let mut terms = Vec::new();
    let mut i = 0;
    let lhs = &body[..rel_pos];
    while i < lhs.len() {
        let tok = lhs[i];
        if let Some(a) = parse_coefficient(tok) {
            let lit_tok = lhs
                .get(i + 1)
                .ok_or_else(|| OpbErrorKind::UnknownToken(tok.to_string()))?;
            let lit = parse_literal(lit_tok)
                .ok_or_else(|| OpbErrorKind::UnknownToken(lit_tok.to_string()))?;
            if let Some(next) = lhs.get(i + 2) {
                if parse_literal(next).is_some() {
                    return Err(OpbErrorKind::Nonlinear(format!("{lit_tok} {next}")));
                }
            }
            terms.push((a, lit));
            i += 2;
        } else if let Some(lit) = parse_literal(tok) {
            // Bare literal: coefficient 1.
            if let Some(next) = lhs.get(i + 1) {
                if parse_literal(next).is_some() {
                    return Err(OpbErrorKind::Nonlinear(format!("{tok} {next}")));
                }
            }
            terms.push((1, lit));
            i += 1;
        } else {
            return Err(OpbErrorKind::UnknownToken(tok.to_string()));
        }
    }
    Ok(RawConstraint::new(terms, relation, rhs))
}

fn parse_header(line: &str) -> Option<Result<(usize, usize), String>> {
    if !line.contains("#variable=") {
        return None;
    }
    let toks: Vec<&str> = line.split_whitespace().collect();
    let field = |key: &str| -> Result<usize, String> {
        let pos = toks
            .iter()
            .position(|t| *t == key)
            .ok_or_else(|| format!("missing {key}"))?;
        toks.get(pos + 1)
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| format!("bad value after {key}"))
    };
    Some(field("#variable=").and_then(|v| Ok((v, field("#constraint=")?))))
}

/// Parses an OPB file. Equalities normalize to two constraints.
pub fn parse_opb(text: &str) -> Result<PBFormula, OpbError> {
    let mut declared: Option<(usize, usize)> = None;
    let mut f = PBFormula::new(0);
    let mut lines_seen = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |kind| OpbError { line, kind };
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('*') {
            if declared.is_none() && lines_seen == 0 {
                if let Some(h) = parse_header(trimmed) {
                    let (vars, cons) = h.map_err(|m| err(OpbErrorKind::Header(m)))?;
                    declared = Some((vars, cons));
                    f = PBFormula::new(vars);
                    continue;
                }
            }
            if let Some(rest) = trimmed.strip_prefix(NAME_PREFIX) {
                let mut it = rest.split_whitespace();
                if let (Some(v), Some(name), None) = (it.next(), it.next(), it.next()) {
                    let var = parse_var(v)
                        .ok_or_else(|| err(OpbErrorKind::UnknownToken(v.to_string())))?;
                    check_var(var, declared, line)?;
                    f.set_name(var, name);
                }
            }
            continue;
        }
        if trimmed.starts_with("min:") || trimmed.starts_with("max:") {
            return Err(err(OpbErrorKind::Objective));
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let raw_c = parse_constraint_tokens(&tokens).map_err(err)?;
        for &(_, l) in &raw_c.terms {
            check_var(l.var(), declared, line)?;
        }
        lines_seen += 1;
        for c in raw_c.normalize() {
            f.push(c);
        }
    }
    if let Some((_, cons)) = declared {
        if cons != lines_seen {
            return Err(OpbError {
                line: 1,
                kind: OpbErrorKind::ConstraintCount {
                    declared: cons,
                    found: lines_seen,
                },
            });
        }
    }
    Ok(f)
}

fn check_var(v: Var, declared: Option<(usize, usize)>, line: usize) -> Result<(), OpbError> {
    match declared {
        Some((n, _)) if v.index() as usize > n => Err(OpbError {
            line,
            kind: OpbErrorKind::VariableOutOfRange {
                var: v.index(),
                declared: n,
            },
        }),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_sbg;
    use crate::pb::{encode_ics, LinearConstraint};

    fn x(i: u32) -> Literal {
        Var::new(i).positive()
    }

    #[test]
    fn renders_clause() {
        let c = LinearConstraint::clause_like([x(1), x(2)], 1);
        assert_eq!(constraint_line(&c), "+1 x1 +1 x2 >= 1 ;");
        let neg = LinearConstraint::clause_like([!x(1), !x(2)], 1);
        assert_eq!(constraint_line(&neg), "-1 x1 -1 x2 >= -1 ;");
        assert_eq!(constraint_line(&LinearConstraint::constant(1)), ">= 1 ;");
    }

    #[test]
    fn sbg_header() {
        let text = write_opb(&encode_ics(&build_sbg(), 9));
        assert!(text.starts_with("* #variable= 32 #constraint= 273\n"));
        assert!(text.contains("* name x7 H3_1\n"));
        assert!(text.ends_with(">= -9 ;\n"));
        let back = parse_opb(&text).unwrap();
        assert_eq!(back, encode_ics(&build_sbg(), 9));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_opb("* #variable= 2 #constraint= 1\n+1 x1 +1 y2 >= 1 ;\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, OpbErrorKind::UnknownToken(_)));
        let e = parse_opb("+1 x1 >= 1\n").unwrap_err();
        assert_eq!(e.kind, OpbErrorKind::MissingSemicolon);
        let e = parse_opb("* #variable= 2 #constraint= 1\n\n+1 x3 >= 1 ;\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(
            e.kind,
            OpbErrorKind::VariableOutOfRange {
                var: 3,
                declared: 2
            }
        );
        let e = parse_opb("+1 x1 x2 >= 1 ;\n").unwrap_err();
        assert!(matches!(e.kind, OpbErrorKind::Nonlinear(_)));
        let e = parse_opb("min: +1 x1 ;\n").unwrap_err();
        assert_eq!(e.kind, OpbErrorKind::Objective);
        let e = parse_opb("* #variable= 1 #constraint= 2\n+1 x1 >= 1 ;\n").unwrap_err();
        assert!(matches!(e.kind, OpbErrorKind::ConstraintCount { .. }));
    }

    #[test]
    fn accepts_common_variants() {
        let f = parse_opb("1 x1 +2 ~x2 >= 2;\nx1 = 1 ;\n* comment\n").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(
            f.constraints()[0],
            LinearConstraint::from_signed(&[(1, x(1)), (2, !x(2))], 2)
        );
    }
}
