//! Command driver. `run` never touches the process: it returns the exit
//! code and both output streams, so tests can call it directly.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;
use voltlift::voltage::coord_label;
use voltlift::{
    decide_with_trees, directed_product, find_common_covers, AlphaScope, Ambient, DecideOptions, Error, Input, Outcome, TreeSet,
    VoltageGraph, Witness, DEFAULT_BUDGET,
};

use crate::document::{coords, load_str, serialize, DocError, Loaded, VoltageGraphDocument};
use crate::dot::export_dot;

pub const EXIT_DECIDED: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
/// A verdict the procedure cannot reach for abelian groups.
pub const EXIT_UNRESOLVED: i32 = 3;

/// Environment variable that overrides the default search budget.
pub const BUDGET_ENV: &str = "VOLTLIFT_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "voltlift", version, about = "Voltage graphs, derived graphs and isomorphism of derived graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a document and summarize it.
    Check { file: PathBuf },
    /// Derived graph as DOT: a ball around the first lifted vertex, or the whole graph over a finite group.
    Derive {
        file: PathBuf,
        #[arg(long, conflicts_with = "full")]
        radius: Option<usize>,
        #[arg(long)]
        full: bool,
    },
    /// Condense the voltages over the document's tree (or a breadth-first tree).
    Condense {
        file: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
    /// Directed product of the two underlying graphs as DOT.
    Product { a: PathBuf, b: PathBuf },
    /// List the common covers inside the product.
    Covers {
        a: PathBuf,
        b: PathBuf,
        /// Only covers that are good for both voltage assignments.
        #[arg(long)]
        good: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Decide whether the derived graphs are isomorphic.
    Decide {
        a: PathBuf,
        b: PathBuf,
        /// Print the successful cover, the automorphism and the paired generators as JSON.
        #[arg(long)]
        witness: bool,
        /// Node budget of the common cover search (default from VOLTLIFT_BUDGET, else 10000000).
        #[arg(long)]
        budget: Option<u64>,
        /// Let the cover automorphism move the cover's spanning tree onto itself.
        #[arg(long, conflicts_with = "alpha_any")]
        alpha_setwise: bool,
        /// Let the cover automorphism be arbitrary.
        #[arg(long)]
        alpha_any: bool,
    },
    /// The voltage graph as DOT with voltages as edge labels.
    ExportDot { file: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Document { path: String, source: DocError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

/// Runs the command line `args` (program name first).
pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code, stdout: String::new(), stderr: text }
            } else {
                Output { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli.command) {
        Ok((code, stdout)) => Output { code, stdout, stderr: String::new() },
        Err(e) => Output { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: p.clone(), source })?;
    load_str(&text).map_err(|source| CliError::Document { path: p, source })
}

fn budget(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{BUDGET_ENV} must be a non-negative integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn group_label(vg: &VoltageGraph) -> String {
    let spec = vg.spec();
    let mut parts = Vec::new();
    if spec.rank() > 0 {
        parts.push(if spec.rank() == 1 { "Z".to_string() } else { format!("Z^{}", spec.rank()) });
    }
    parts.extend(spec.moduli().iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "trivial".to_string()
    } else {
        parts.join(" + ")
    }
}

fn execute(command: Command) -> Result<(i32, String), CliError> {
    let mut out = String::new();
    match command {
        Command::Check { file } => {
            let l = load(&file)?;
            let g = l.vg.graph();
            writeln!(out, "vertices {}", g.vertex_count()).unwrap();
            writeln!(out, "edges {}", g.edge_count()).unwrap();
            writeln!(out, "group {}", group_label(&l.vg)).unwrap();
            writeln!(out, "connected {}", voltlift::is_connected(g)).unwrap();
            if let Some(t) = &l.tree {
                writeln!(out, "condensed {}", l.vg.is_condensed(t)).unwrap();
            }
        }
        Command::Derive { file, radius, full: _ } => {
            let l = load(&file)?;
            let g = match radius {
                Some(r) => l.vg.derived_ball(r)?,
                None => {
                    if !l.vg.spec().is_finite() {
                        return Err(CliError::Usage(format!(
                            "the group {} is infinite, so the derived graph is infinite; use --radius k for a finite ball",
                            group_label(&l.vg)
                        )));
                    }
                    l.vg.derived_graph(&Ambient::Full)?.domain().clone()
                }
            };
            out = export_dot(&g, None);
        }
        Command::Condense { file, base } => {
            let l = load(&file)?;
            let g = l.vg.graph();
            let base = match base {
                Some(name) => Some(g.vertex_by_name(&name).map_err(|_| CliError::Usage(format!("unknown base vertex {name:?}")))?),
                None => l.base,
            };
            let tree = match (&l.tree, base) {
                (Some(t), Some(b)) => TreeSet::from_edges(g, b, &t.edges())?,
                (Some(t), None) => t.clone(),
                (None, b) => voltlift::spanning_tree(g, b.unwrap_or(0))?,
            };
            let condensed = l.vg.condense(&tree)?;
            out = serialize(&VoltageGraphDocument::from_parts(&condensed, Some(&tree), Some(tree.base())));
        }
        Command::Product { a, b } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let (theta, _, _) = directed_product(a.vg.graph(), b.vg.graph());
            out = export_dot(&theta, None);
        }
        Command::Covers { a, b, good, budget: flag } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let (ta, tb) = (a.tree_or_spanning().map_err(doc_err)?, b.tree_or_spanning().map_err(doc_err)?);
            let covers = match find_common_covers(a.vg.graph(), b.vg.graph(), budget(flag)?) {
                Ok(c) => c,
                Err(Error::SearchBudgetExceeded(n)) => {
                    return Ok((EXIT_BUDGET, format!("BUDGET_EXCEEDED after {n} search nodes\n")));
                }
                Err(e) => return Err(e.into()),
            };
            let mut lines = Vec::new();
            for (i, c) in covers.iter().enumerate() {
                let g1 = c.mu1.is_good_cover(&a.vg, &ta)?;
                let g2 = c.mu2.is_good_cover(&b.vg, &tb)?;
                if good && !(g1 && g2) {
                    continue;
                }
                let top = c.graph();
                let vs: Vec<&str> = top.vertices().map(|v| top.vertex_name(v)).collect();
                let es: Vec<&str> = top.edges().map(|e| top.edge_name(e)).collect();
                lines.push(format!(
                    "cover {i}: {} vertices, {} edges, good {}/{}: vertices {} edges {}",
                    vs.len(),
                    es.len(),
                    yes_no(g1),
                    yes_no(g2),
                    vs.join(" "),
                    es.join(" ")
                ));
            }
            writeln!(out, "{} {}common covers", lines.len(), if good { "good " } else { "" }).unwrap();
            for line in lines {
                writeln!(out, "{line}").unwrap();
            }
        }
        Command::Decide { a, b, witness, budget: flag, alpha_setwise, alpha_any } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let alpha = match (alpha_setwise, alpha_any) {
                (_, true) => AlphaScope::Any,
                (true, _) => AlphaScope::TreeSetwise,
                _ => AlphaScope::TreeFixing,
            };
            let opts = DecideOptions { budget: budget(flag)?, alpha, ..DecideOptions::default() };
            let verdict = decide_with_trees(input(&a), input(&b), &opts)?;
            let (word, code) = match verdict.outcome {
                Outcome::Isomorphic => ("ISOMORPHIC", EXIT_DECIDED),
                Outcome::NotIsomorphic => ("NOT_ISOMORPHIC", EXIT_DECIDED),
                Outcome::BudgetExceeded => ("BUDGET_EXCEEDED", EXIT_BUDGET),
                Outcome::Unresolved => ("UNRESOLVED", EXIT_UNRESOLVED),
            };
            writeln!(out, "{word} {:?}", verdict.reason).unwrap();
            writeln!(
                out,
                "common covers {}, good covers tested {}, failing good covers {}",
                verdict.covers_found, verdict.good_covers_tested, verdict.failed_good_covers
            )
            .unwrap();
            if let (true, Some(w)) = (witness, &verdict.witness) {
                out.push_str(&witness_json(w));
            }
            return Ok((code, out));
        }
        Command::ExportDot { file } => {
            let l = load(&file)?;
            let labels: Vec<String> = l.vg.voltages().iter().map(coord_label).collect();
            out = export_dot(l.vg.graph(), Some(&labels));
        }
    }
    Ok((EXIT_DECIDED, out))
}

fn input(l: &Loaded) -> Input<'_, voltlift::Int> {
    match &l.tree {
        Some(t) => Input::with_tree(&l.vg, t),
        None => Input::new(&l.vg),
    }
}

fn doc_err(source: DocError) -> CliError {
    CliError::Document { path: "input".into(), source }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The witness as JSON: both lifted, condensed assignments on the common
/// cover as documents (with the cover's tree), the edge permutation `α`
/// and the paired chord voltages.
pub fn witness_json(w: &Witness) -> String {
    let top = w.cover.graph();
    let first = VoltageGraphDocument::from_parts(&w.lifted.0, Some(&w.tree_top), None);
    let second = VoltageGraphDocument::from_parts(&w.lifted.1, Some(&w.tree_top), None);
    let alpha: Vec<[&str; 2]> = top.edges().map(|e| [top.edge_name(e), top.edge_name(w.alpha.emap[e])]).collect();
    let pairs: Vec<[Vec<i64>; 2]> = w.generator_pairs.iter().map(|(g, h)| [coords(g), coords(h)]).collect();
    let value = json!({
        "witness": {
            "first": first,
            "second": second,
            "alpha": alpha,
            "generator_pairs": pairs,
        }
    });
    let mut s = serde_json::to_string_pretty(&value).expect("witness serializes");
    s.push('\n');
    s
}
