//! Identifying codes on graphs, with a pseudo-Boolean encoding, a complete
//! solver and enumerator, a cutting-planes proof checker and an exhaustive
//! oracle.
//!
//! The soccer ball graph (truncated icosahedron) is built in by
//! [`graph::build_sbg`].

pub mod cli;
pub mod cutting_planes;
pub mod graph;
pub mod ics;
pub mod opb;
pub mod oracle;
pub mod pb;
pub mod proof;
mod propagate;
pub mod reproduce;
pub mod solve;

pub use graph::{build_sbg, Graph, NodeId, NodeSet};
pub use ics::{is_ics, seepage_coloring, signatures, CodeSet, Domination};
pub use pb::{encode_ics, Assignment, Budget, LinearConstraint, PBFormula};
pub use proof::{parse_proof, verify};
pub use solve::{enumerate_all, solve};
