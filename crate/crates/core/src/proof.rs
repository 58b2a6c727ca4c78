//! Parser and checker for cutting-planes refutations in the
//! `pseudo-Boolean proof version 1.0` text format.
//!
//! Supported lines:
//!
//! | line              | effect                                              |
//! |-------------------|-----------------------------------------------------|
//! | `u <constraint> ;`| assert a constraint checked by reverse propagation  |
//! | `l <k>`           | load the k-th input constraint                      |
//! | `p <tokens> 0`    | reverse-Polish derivation                           |
//! | `c <id> 0`        | claim that constraint `id` is `0 >= d`, `d >= 1`    |
//! | `* ...`           | comment                                             |
//!
//! Every `u`, `l` and `p` line receives the next constraint id, starting at 1.
//! Derivation tokens are constraint ids, literals (`x3`, `~x3`), `+`,
//! `<k> *`, `<k> d` and `s`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cutting_planes::{self, RuleError};
use crate::opb::{parse_constraint_tokens, parse_literal, OpbErrorKind};
use crate::pb::{LinearConstraint, Literal, PBFormula};
use crate::propagate::rup;

pub const PROOF_HEADER: &str = "pseudo-Boolean proof version 1.0";

/// Directives of richer proof systems that this checker refuses.
const UNSUPPORTED: &[&str] = &[
    "del",
    "delc",
    "deld",
    "red",
    "dom",
    "e",
    "f",
    "i",
    "ia",
    "j",
    "v",
    "o",
    "w",
    "a",
    "core",
    "output",
    "conclusion",
    "end",
    "pol",
    "rup",
    "strengthening_to_core",
    "#",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RpnToken {
    Id(usize),
    Literal(Literal),
    Add,
    Multiply(i64),
    Divide(i64),
    Saturate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    Header,
    Rup(LinearConstraint),
    Load(usize),
    Derive(Vec<RpnToken>),
    Contradiction(usize),
}

impl StepKind {
    pub fn rule(&self) -> &'static str {
        match self {
            StepKind::Header => "header",
            StepKind::Rup(_) => "u",
            StepKind::Load(_) => "l",
            StepKind::Derive(_) => "p",
            StepKind::Contradiction(_) => "c",
        }
    }

    fn produces_constraint(&self) -> bool {
        matches!(
            self,
            StepKind::Rup(_) | StepKind::Load(_) | StepKind::Derive(_)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    /// 1-based line in the proof file.
    pub line: usize,
    pub kind: StepKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("proof line {line}: {kind}")]
pub struct ProofParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected header {PROOF_HEADER:?}, found {0:?}")]
    BadHeader(String),
    #[error("empty proof")]
    Empty,
    #[error("unknown directive {0:?}")]
    UnknownDirective(String),
    #[error("unsupported rule {0:?}")]
    Unsupported(String),
    #[error("bad token {0:?}")]
    BadToken(String),
    #[error("stack underflow at {0:?}")]
    StackUnderflow(String),
    #[error("derivation leaves {0} constraints on the stack")]
    LeftoverStack(usize),
    #[error("missing terminating 0")]
    MissingTerminator,
    #[error("bad constraint: {0}")]
    Constraint(OpbErrorKind),
}

pub fn parse_proof(text: &str) -> Result<Vec<ProofStep>, ProofParseError> {
    let mut steps = Vec::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (first_line, header) =
        lines
            .by_ref()
            .find(|(_, l)| !l.is_empty())
            .ok_or(ProofParseError {
                line: 1,
                kind: ParseErrorKind::Empty,
            })?;
    if header != PROOF_HEADER {
        return Err(ProofParseError {
            line: first_line,
            kind: ParseErrorKind::BadHeader(header.to_string()),
        });
    }
    steps.push(ProofStep {
        line: first_line,
        kind: StepKind::Header,
    });
    for (line, text) in lines {
        if text.is_empty() || text.starts_with('*') {
            continue;
        }
        let err = |kind| ProofParseError { line, kind };
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let kind = match tokens[0] {
            "u" => {
                let raw = parse_constraint_tokens(&tokens[1..])
                    .map_err(|k| err(ParseErrorKind::Constraint(k)))?;
                let mut normalized = raw.normalize();
                if normalized.len() != 1 {
                    return Err(err(ParseErrorKind::Unsupported("u with =".into())));
                }
                StepKind::Rup(normalized.remove(0))
            }
            "l" => match tokens[1..] {
                [k] => StepKind::Load(parse_index(k).map_err(err)?),
                _ => return Err(err(ParseErrorKind::BadToken(text.to_string()))),
            },
            "p" => StepKind::Derive(parse_rpn(&tokens[1..]).map_err(err)?),
            "c" => match tokens[1..] {
                [id] | [id, "0"] => StepKind::Contradiction(parse_index(id).map_err(err)?),
                _ => return Err(err(ParseErrorKind::BadToken(text.to_string()))),
            },
            d if UNSUPPORTED.contains(&d) => {
                return Err(err(ParseErrorKind::Unsupported(d.to_string())))
            }
            d => return Err(err(ParseErrorKind::UnknownDirective(d.to_string()))),
        };
        steps.push(ProofStep { line, kind });
    }
    Ok(steps)
}

fn parse_index(tok: &str) -> Result<usize, ParseErrorKind> {
    match tok.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(ParseErrorKind::BadToken(tok.to_string())),
    }
}

fn parse_rpn(tokens: &[&str]) -> Result<Vec<RpnToken>, ParseErrorKind> {
    let Some((&"0", body)) = tokens.split_last() else {
        return Err(ParseErrorKind::MissingTerminator);
    };
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut i = 0;
    while i < body.len() {
        let tok = body[i];
        let need = |n: usize, depth: usize| {
            if depth < n {
                Err(ParseErrorKind::StackUnderflow(tok.to_string()))
            } else {
                Ok(())
            }
        };
        if let Ok(k) = tok.parse::<i64>() {
            match body.get(i + 1) {
                Some(&"*") | Some(&"d") => {
                    need(1, depth).map_err(|_| {
                        ParseErrorKind::StackUnderflow(format!("{tok} {}", body[i + 1]))
                    })?;
                    if k <= 0 {
                        return Err(ParseErrorKind::BadToken(tok.to_string()));
                    }
                    out.push(if body[i + 1] == "*" {
                        RpnToken::Multiply(k)
                    } else {
                        RpnToken::Divide(k)
                    });
                    i += 2;
                    continue;
                }
                _ => {
                    out.push(RpnToken::Id(parse_index(tok)?));
                    depth += 1;
                }
            }
        } else if let Some(l) = parse_literal(tok) {
            out.push(RpnToken::Literal(l));
            depth += 1;
        } else {
            match tok {
                "+" => {
                    need(2, depth)?;
                    depth -= 1;
                    out.push(RpnToken::Add);
                }
                "s" => {
                    need(1, depth)?;
                    out.push(RpnToken::Saturate);
                }
                "*" | "d" => return Err(ParseErrorKind::StackUnderflow(tok.to_string())),
                "w" | "r" => return Err(ParseErrorKind::Unsupported(tok.to_string())),
                _ => return Err(ParseErrorKind::BadToken(tok.to_string())),
            }
        }
        i += 1;
    }
    if depth != 1 {
        return Err(ParseErrorKind::LeftoverStack(depth));
    }
    Ok(out)
}

/// Constraints indexed by id; ids are handed out sequentially from 1 and
/// never reused.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintDb {
    constraints: BTreeMap<usize, LinearConstraint>,
    next_id: usize,
}

impl ConstraintDb {
    pub fn new() -> Self {
        Self {
            constraints: BTreeMap::new(),
            next_id: 1,
        }
    }

    pub fn insert(&mut self, c: LinearConstraint) -> usize {
        let id = self.next_id;
        self.constraints.insert(id, c);
        self.next_id += 1;
        id
    }

    pub fn get(&self, id: usize) -> Option<&LinearConstraint> {
        self.constraints.get(&id)
    }

    pub fn next_id(&self) -> usize {
        self.next_id
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &LinearConstraint)> {
        self.constraints.iter().map(|(&i, c)| (i, c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verified {
    /// Id of the constraint accepted as a contradiction.
    pub contradiction_id: usize,
    pub db: ConstraintDb,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub struct VerifyError {
    pub line: usize,
    /// Id the failing step would have produced, or referenced for `c`.
    pub id: Option<usize>,
    pub rule: &'static str,
    pub kind: VerifyErrorKind,
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "proof line {} ({}", self.line, self.rule)?;
        if let Some(id) = self.id {
            write!(f, ", id {id}")?;
        }
        write!(f, "): {}", self.kind)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyErrorKind {
    #[error("reference to unassigned constraint id {0}")]
    UnknownId(usize),
    #[error("load of input constraint {k}, but the formula has {available}")]
    LoadOutOfRange { k: usize, available: usize },
    #[error("claim `{claim}` is not implied by reverse propagation")]
    RupFailed { claim: String },
    #[error("not a contradiction: expected `0 >= d` with d >= 1, found `{actual}`")]
    NotContradiction { actual: String },
    #[error("proof ended without a contradiction claim")]
    NoContradiction,
    #[error(transparent)]
    Rule(#[from] RuleError),
}

/// Replays `steps` against `f`, checking every inference.
pub fn verify(f: &PBFormula, steps: &[ProofStep]) -> Result<Verified, VerifyError> {
    let mut db = ConstraintDb::new();
    let mut contradiction = None;
    let mut last_line = 0;
    for step in steps {
        last_line = step.line;
        let pending_id = step.kind.produces_constraint().then(|| db.next_id());
        let fail = |id, kind| VerifyError {
            line: step.line,
            id,
            rule: step.kind.rule(),
            kind,
        };
        match &step.kind {
            StepKind::Header => {}
            StepKind::Rup(claim) => {
                let vars = f.num_vars().max(claim.max_var() as usize);
                if !rup(db.iter().map(|(_, c)| c), vars, claim) {
                    return Err(fail(
                        pending_id,
                        VerifyErrorKind::RupFailed {
                            claim: claim.to_string(),
                        },
                    ));
                }
                db.insert(claim.clone());
            }
            StepKind::Load(k) => {
                let c = f.constraints().get(k - 1).ok_or_else(|| {
                    fail(
                        pending_id,
                        VerifyErrorKind::LoadOutOfRange {
                            k: *k,
                            available: f.len(),
                        },
                    )
                })?;
                db.insert(c.clone());
            }
            StepKind::Derive(tokens) => {
                let c = evaluate_rpn(&db, tokens).map_err(|k| fail(pending_id, k))?;
                db.insert(c);
            }
            StepKind::Contradiction(id) => {
                let c = db
                    .get(*id)
                    .ok_or_else(|| fail(Some(*id), VerifyErrorKind::UnknownId(*id)))?;
                if !c.terms().is_empty() || c.degree() < 1 {
                    return Err(fail(
                        Some(*id),
                        VerifyErrorKind::NotContradiction {
                            actual: c.to_string(),
                        },
                    ));
                }
                contradiction.get_or_insert(*id);
            }
        }
    }
    match contradiction {
        Some(contradiction_id) => Ok(Verified {
            contradiction_id,
            db,
        }),
        None => Err(VerifyError {
            line: last_line,
            id: None,
            rule: "end",
            kind: VerifyErrorKind::NoContradiction,
        }),
    }
}

fn evaluate_rpn(
    db: &ConstraintDb,
    tokens: &[RpnToken],
) -> Result<LinearConstraint, VerifyErrorKind> {
    let mut stack: Vec<LinearConstraint> = Vec::new();
    for t in tokens {
        match t {
            RpnToken::Id(id) => stack.push(
                db.get(*id)
                    .cloned()
                    .ok_or(VerifyErrorKind::UnknownId(*id))?,
            ),
            RpnToken::Literal(l) => stack.push(cutting_planes::axiom_literal(*l)),
            RpnToken::Add => {
                let b = stack.pop().expect("stack depth checked at parse time");
                let a = stack.pop().expect("stack depth checked at parse time");
                stack.push(cutting_planes::add(&a, &b));
            }
            RpnToken::Multiply(k) => {
                let top = stack.pop().expect("stack depth checked at parse time");
                stack.push(cutting_planes::multiply(&top, *k)?);
            }
            RpnToken::Divide(k) => {
                let top = stack.pop().expect("stack depth checked at parse time");
                stack.push(cutting_planes::divide(&top, *k)?);
            }
            RpnToken::Saturate => {
                let top = stack.pop().expect("stack depth checked at parse time");
                stack.push(cutting_planes::saturate(&top));
            }
        }
    }
    Ok(stack.pop().expect("derivation leaves one constraint"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pb::Var;

    fn x(i: u32) -> Literal {
        Var::new(i).positive()
    }

    #[test]
    fn merged_derivation_tokens() {
        let steps = parse_proof("pseudo-Boolean proof version 1.0\np 8 4 ~x3 + 2 d + 0\n").unwrap();
        assert_eq!(
            steps[1].kind,
            StepKind::Derive(vec![
                RpnToken::Id(8),
                RpnToken::Id(4),
                RpnToken::Literal(!x(3)),
                RpnToken::Add,
                RpnToken::Divide(2),
                RpnToken::Add,
            ])
        );
        assert_eq!(steps[1].line, 2);
    }

    #[test]
    fn parse_errors() {
        let e = |s: &str| parse_proof(s).unwrap_err();
        assert!(matches!(e("").kind, ParseErrorKind::Empty));
        assert!(matches!(
            e("pseudo-Boolean proof version 2.0\n").kind,
            ParseErrorKind::BadHeader(_)
        ));
        let h = "pseudo-Boolean proof version 1.0\n";
        let err = e(&format!("{h}p 1 + 0\n"));
        assert_eq!(err.line, 2);
        assert!(matches!(err.kind, ParseErrorKind::StackUnderflow(_)));
        assert!(matches!(
            e(&format!("{h}p 1 2 0\n")).kind,
            ParseErrorKind::LeftoverStack(2)
        ));
        assert!(matches!(
            e(&format!("{h}p 1 2 +\n")).kind,
            ParseErrorKind::MissingTerminator
        ));
        assert!(matches!(
            e(&format!("{h}p 2 d 0\n")).kind,
            ParseErrorKind::StackUnderflow(_)
        ));
        assert!(matches!(
            e(&format!("{h}q 1\n")).kind,
            ParseErrorKind::UnknownDirective(_)
        ));
        assert!(matches!(
            e(&format!("{h}del id 1\n")).kind,
            ParseErrorKind::Unsupported(_)
        ));
        assert!(matches!(
            e(&format!("{h}red 1 x1 >= 1 ; x1 -> 1\n")).kind,
            ParseErrorKind::Unsupported(_)
        ));
        assert!(matches!(
            e(&format!("{h}p 1 w 0\n")).kind,
            ParseErrorKind::Unsupported(_)
        ));
        assert!(matches!(
            e(&format!("{h}u 1 x1 >= 1\n")).kind,
            ParseErrorKind::Constraint(_)
        ));
        assert!(matches!(
            e(&format!("{h}u 1 x1 x1 >= 1 ;\n")).kind,
            ParseErrorKind::Constraint(OpbErrorKind::Nonlinear(_))
        ));
        assert!(matches!(
            e(&format!("{h}l 0\n")).kind,
            ParseErrorKind::BadToken(_)
        ));
    }

    #[test]
    fn header_only_has_no_contradiction() {
        let steps = parse_proof("pseudo-Boolean proof version 1.0\n").unwrap();
        assert_eq!(steps.len(), 1);
        let err = verify(&PBFormula::new(0), &steps).unwrap_err();
        assert_eq!(err.kind, VerifyErrorKind::NoContradiction);
    }

    #[test]
    fn satisfiable_claim_is_not_a_contradiction() {
        let mut f = PBFormula::new(1);
        f.push(LinearConstraint::clause_like([x(1)], 1));
        let steps = parse_proof("pseudo-Boolean proof version 1.0\nl 1\nc 1 0\n").unwrap();
        let err = verify(&f, &steps).unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.id, Some(1));
        assert!(matches!(err.kind, VerifyErrorKind::NotContradiction { .. }));
    }

    #[test]
    fn rup_steps() {
        let mut f = PBFormula::new(2);
        f.push(LinearConstraint::clause_like([x(1)], 1));
        f.push(LinearConstraint::clause_like([!x(1), x(2)], 1));
        f.push(LinearConstraint::clause_like([!x(2)], 1));
        let ok = "pseudo-Boolean proof version 1.0\nu >= 0 ;\nl 1\nl 2\nl 3\nu 1 x2 >= 1 ;\nu >= 1 ;\nc 6 0\n";
        let v = verify(&f, &parse_proof(ok).unwrap()).unwrap();
        assert_eq!(v.contradiction_id, 6);
        // Without loading constraint 1, x2 is not implied.
        let bad = "pseudo-Boolean proof version 1.0\nl 2\nu 1 x2 >= 1 ;\n";
        let err = verify(&f, &parse_proof(bad).unwrap()).unwrap_err();
        assert_eq!((err.line, err.id), (3, Some(2)));
        assert!(matches!(err.kind, VerifyErrorKind::RupFailed { .. }));
    }

    #[test]
    fn load_out_of_range() {
        let f = PBFormula::new(1);
        let err = verify(
            &f,
            &parse_proof("pseudo-Boolean proof version 1.0\nl 1\n").unwrap(),
        )
        .unwrap_err();
        assert_eq!(
            err.kind,
            VerifyErrorKind::LoadOutOfRange { k: 1, available: 0 }
        );
    }

    #[test]
    fn saturation_and_multiplication_tokens() {
        let mut f = PBFormula::new(2);
        f.push(LinearConstraint::from_signed(&[(1, x(1)), (1, x(2))], 1));
        let text = "pseudo-Boolean proof version 1.0\nl 1\np 1 3 * s 0\n";
        let steps = parse_proof(text).unwrap();
        let v = verify(&f, &steps);
        // No contradiction, but the derivation itself replays.
        assert_eq!(v.unwrap_err().kind, VerifyErrorKind::NoContradiction);
    }
}
