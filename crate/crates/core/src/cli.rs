//! Command-line front end. [`run`] parses arguments, executes one subcommand
//! and returns the process exit code.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use crate::graph::{build_sbg, parse_edge_list, write_edge_list, EdgeListError, Graph};
use crate::ics::{is_ics, seepage_coloring, signatures, CodeSet, Domination};
use crate::opb::{parse_opb, write_opb, OpbError};
use crate::oracle::{classify_solutions, count_ics, OracleError};
use crate::pb::{encode_ics_with, Budget, PBFormula, Var};
use crate::proof::{parse_proof, verify, ProofParseError};
use crate::reproduce;
use crate::solve::{enumerate_all, solve, Outcome, SolveError};

#[derive(Debug, Parser)]
#[command(name = "idcode", version, about = "Identifying codes on graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the soccer ball graph as an edge list with its name table.
    BuildSbg {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print per-node signatures of a code and whether it identifies.
    CheckIcs {
        /// Edge-list file; the soccer ball graph when omitted.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Comma-separated node names.
        #[arg(long)]
        set: String,
    },
    /// Seepage color table, one color per injected node in the given order.
    Color {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        inject: String,
    },
    /// Write the pseudo-Boolean encoding of "an identifying code within budget".
    Encode {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        budget: usize,
        /// Require exactly `budget` code nodes instead of at most.
        #[arg(long)]
        exactly: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide an OPB formula.
    Solve { formula: PathBuf },
    /// List every solution of an OPB formula.
    Enumerate {
        formula: PathBuf,
        /// Comma-separated variables (names or xN) to project onto.
        #[arg(long)]
        project: Option<String>,
        /// Write solutions as JSON lines.
        #[arg(long)]
        solutions: Option<PathBuf>,
    },
    /// Check a refutation. Exit 0 verified, 1 rejected, 2 unreadable input.
    Verify { formula: PathBuf, proof: PathBuf },
    /// Exhaustively count identifying codes of size k.
    Oracle {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        /// Print each code as a sorted list of node names.
        #[arg(long)]
        list: bool,
        /// Sort codes into the soccer ball motif families.
        #[arg(long)]
        classify: bool,
    },
    /// Run every soccer ball and fixture check and report pass or fail.
    Reproduce {
        /// Also write the report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    EdgeList { path: String, source: EdgeListError },
    #[error("{path}: {source}")]
    Opb { path: String, source: OpbError },
    #[error("{path}: {source}")]
    Proof {
        path: String,
        source: ProofParseError,
    },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 2 for unreadable or malformed input, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. }
            | CliError::EdgeList { .. }
            | CliError::Opb { .. }
            | CliError::Proof { .. }
            | CliError::Input(_) => 2,
            _ => 1,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_graph(path: Option<&Path>) -> Result<Graph, CliError> {
    match path {
        None => Ok(build_sbg()),
        Some(p) => parse_edge_list(&read(p)?).map_err(|source| CliError::EdgeList {
            path: p.display().to_string(),
            source,
        }),
    }
}

fn load_formula(path: &Path) -> Result<PBFormula, CliError> {
    parse_opb(&read(path)?).map_err(|source| CliError::Opb {
        path: path.display().to_string(),
        source,
    })
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect()
}

fn code_from_names(g: &Graph, list: &str) -> Result<CodeSet, CliError> {
    CodeSet::from_names(g, &split_list(list)).map_err(CliError::Input)
}

fn var_label(f: &PBFormula, v: Var) -> String {
    f.name(v).map_or_else(|| v.to_string(), str::to_string)
}

fn io_err(source: io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source,
    }
}

/// Runs the command line `args` (program name first), writing normal output
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::BuildSbg { out: path } => {
            let text = write_edge_list(&build_sbg());
            match path {
                Some(p) => write_file(&p, &text)?,
                None => out.write_all(text.as_bytes()).map_err(io_err)?,
            }
        }
        Command::CheckIcs { graph, set } => {
            let g = load_graph(graph.as_deref())?;
            let code = code_from_names(&g, &set)?;
            let table = signatures(&g, &code);
            for (v, sig) in table.iter() {
                let names: Vec<&str> = sig.iter().map(|u| g.name(u)).collect();
                writeln!(out, "{}: {{{}}}", g.name(v), names.join(", ")).map_err(io_err)?;
            }
            let verdict = if is_ics(&g, &code, Domination::Required) {
                "identifying code"
            } else {
                "not an identifying code"
            };
            writeln!(out, "{verdict}").map_err(io_err)?;
        }
        Command::Color { graph, inject } => {
            let g = load_graph(graph.as_deref())?;
            let names = split_list(&inject);
            let code = code_from_names(&g, &names.join(","))?;
            let palette: Vec<_> = names.iter().filter_map(|n| g.node_by_name(n)).collect();
            let strings = seepage_coloring(&g, &code).color_strings(&palette);
            for v in g.nodes() {
                writeln!(out, "{}: {}", g.name(v), strings[v.index()]).map_err(io_err)?;
            }
        }
        Command::Encode {
            graph,
            budget,
            exactly,
            out: path,
        } => {
            let g = load_graph(graph.as_deref())?;
            let budget = if exactly {
                Budget::Exactly(budget)
            } else {
                Budget::AtMost(budget)
            };
            let text = write_opb(&encode_ics_with(&g, budget));
            match path {
                Some(p) => write_file(&p, &text)?,
                None => out.write_all(text.as_bytes()).map_err(io_err)?,
            }
        }
        Command::Solve { formula } => {
            let f = load_formula(&formula)?;
            let r = solve(&f)?;
            match &r.outcome {
                Outcome::Sat(a) => {
                    writeln!(out, "s SATISFIABLE").map_err(io_err)?;
                    writeln!(out, "{}", a.to_witness_line()).map_err(io_err)?;
                    let chosen: Vec<String> = a.true_vars().map(|v| var_label(&f, v)).collect();
                    writeln!(out, "c true: {}", chosen.join(" ")).map_err(io_err)?;
                }
                Outcome::Unsat => writeln!(out, "s UNSATISFIABLE").map_err(io_err)?,
            }
            writeln!(
                out,
                "c decisions {} propagations {} conflicts {}",
                r.stats.decisions, r.stats.propagations, r.stats.conflicts
            )
            .map_err(io_err)?;
        }
        Command::Enumerate {
            formula,
            project,
            solutions,
        } => {
            let f = load_formula(&formula)?;
            let projection = match project {
                None => None,
                Some(list) => Some(
                    split_list(&list)
                        .into_iter()
                        .map(|name| {
                            f.var_by_name(name)
                                .or_else(|| crate::opb::parse_literal(name).map(|l| l.var()))
                                .filter(|v| (v.index() as usize) <= f.num_vars())
                                .ok_or_else(|| CliError::Input(format!("unknown variable {name}")))
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                ),
            };
            let e = enumerate_all(&f, projection.as_deref())?;
            let mut jsonl = String::new();
            for a in &e.solutions {
                writeln!(out, "{}", a.to_witness_line()).map_err(io_err)?;
                let chosen: Vec<String> = a.true_vars().map(|v| var_label(&f, v)).collect();
                let values: serde_json::Map<String, serde_json::Value> = f
                    .vars()
                    .filter_map(|v| a.get(v).map(|b| (var_label(&f, v), b.into())))
                    .collect();
                jsonl.push_str(&json!({ "true": chosen, "assignment": values }).to_string());
                jsonl.push('\n');
            }
            writeln!(
                out,
                "c {} solutions, {} solver calls",
                e.solutions.len(),
                e.solver_calls
            )
            .map_err(io_err)?;
            if let Some(p) = solutions {
                write_file(&p, &jsonl)?;
            }
        }
        Command::Verify { formula, proof } => {
            let f = load_formula(&formula)?;
            let steps = parse_proof(&read(&proof)?).map_err(|source| CliError::Proof {
                path: proof.display().to_string(),
                source,
            })?;
            match verify(&f, &steps) {
                Ok(v) => writeln!(
                    out,
                    "verified: contradiction at id {} ({})",
                    v.contradiction_id,
                    v.db.get(v.contradiction_id).expect("claimed id exists")
                )
                .map_err(io_err)?,
                Err(e) => return Err(CliError::Failed(format!("rejected: {e}"))),
            }
        }
        Command::Oracle {
            graph,
            k,
            list,
            classify,
        } => {
            let g = load_graph(graph.as_deref())?;
            let r = count_ics(&g, k, list || classify)?;
            if list {
                for code in r.solutions.as_deref().unwrap_or_default() {
                    let mut names = code.names(&g);
                    names.sort();
                    writeln!(out, "{}", names.join(" ")).map_err(io_err)?;
                }
            }
            writeln!(out, "count {}", r.count).map_err(io_err)?;
            if classify {
                let h = classify_solutions(r.solutions.as_deref().unwrap_or_default());
                for (class, n) in &h.classes {
                    writeln!(out, "motif {class}: {n}").map_err(io_err)?;
                }
                for (family, n) in &h.families {
                    writeln!(out, "class {family}: {n}").map_err(io_err)?;
                }
                writeln!(out, "unmatched: {}", h.unmatched.len()).map_err(io_err)?;
            }
        }
        Command::Reproduce { report } => {
            let checks = reproduce::run(|c| {
                let _ = writeln!(
                    out,
                    "{} {}: {} (expected {})",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.check,
                    c.actual,
                    c.expected
                );
            });
            if let Some(p) = report {
                let text = serde_json::to_string_pretty(&checks).expect("plain data");
                write_file(&p, &text)?;
            }
            let failed = checks.iter().filter(|c| !c.pass).count();
            if failed > 0 {
                return Err(CliError::Failed(format!("{failed} checks failed")));
            }
        }
    }
    Ok(0)
}
