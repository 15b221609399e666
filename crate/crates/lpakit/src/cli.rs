use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use lpakit_core::algebra::{AlgebraError, PathAlgebra};
use lpakit_core::graph::{parse_graph, Graph};
use lpakit_core::laurent::{self, LaurentError};
use lpakit_core::lie::{self, LieError};
use serde::{Deserialize, Serialize};

use crate::report::{self, EvidenceOptions, Inspection, Report};

pub const DEFAULT_TRUNCATION: usize = 4;

#[derive(Debug, Parser)]
#[command(
    name = "lpakit",
    version,
    about = "Leavitt path algebras, skew brackets and almost simple graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Common {
    /// Graph file in the `vertex` / `edge` line format.
    pub file: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Process every `*.graph` file of a directory, in filename order.
    #[arg(long, value_name = "DIR", conflicts_with = "file")]
    pub corpus: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a graph and report finite evidence about [K,K].
    Classify {
        #[command(flatten)]
        common: Common,
        /// Degree bound for the symbolic evidence.
        #[arg(long, default_value_t = DEFAULT_TRUNCATION, value_name = "N")]
        truncate: usize,
        /// Include a nonzero bracket witness.
        #[arg(long)]
        witness: bool,
        /// Skip all symbolic computation.
        #[arg(long)]
        no_evidence: bool,
    },
    /// List sinks, sources, fibers, hereditary saturated subsets and cycles.
    Inspect {
        #[command(flatten)]
        common: Common,
    },
    /// Algebra facts: dimension, skew basis, bracket space, M2 and cycle checks.
    Algebra {
        #[command(flatten)]
        common: Common,
        /// What to compute; inferred from `--fiber` or `--cycle-check` when omitted.
        #[arg(long, value_enum)]
        action: Option<Action>,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION, value_name = "N")]
        truncate: usize,
        /// Fiber edge for the M2(F) table check.
        #[arg(long, value_name = "EDGE")]
        fiber: Option<String>,
        /// Verify the matrix model of the cycle with D vertices (1 to 6).
        #[arg(long, value_name = "D")]
        cycle_check: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Action {
    Summary,
    Dim,
    SkewBasis,
    BracketDim,
    M2Check,
    CycleCheck,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::SelfCheck(_) => 3,
        }
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        match e {
            LieError::TableMismatch(..) | LieError::StarMismatch => {
                CliError::SelfCheck(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<LaurentError> for CliError {
    fn from(e: LaurentError) -> Self {
        match e {
            LaurentError::RelationFailure(_) => CliError::SelfCheck(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Input(e.to_string())
    }
}

pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries =
        fs::read_dir(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "graph"))
        .collect();
    files.sort();
    Ok(files)
}

/// Facts printed by `algebra`; unused fields are absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFacts {
    pub dimension: Option<usize>,
    pub truncation: Option<usize>,
    pub skew_basis: Option<Vec<String>>,
    pub skew_basis_dim: Option<usize>,
    pub bracket_space_dim: Option<usize>,
    pub m2_check: Option<M2Facts>,
    pub cycle_check: Option<CycleFacts>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct M2Facts {
    pub edge: String,
    pub products_checked: usize,
    pub products_matched: usize,
    pub star_compatible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleFacts {
    pub d: usize,
    pub relations_checked: usize,
    pub involution_checked: usize,
    pub products_checked: usize,
    pub images_independent: bool,
}

pub struct AlgebraRequest<'a> {
    pub action: Option<Action>,
    pub truncate: usize,
    pub fiber: Option<&'a str>,
    pub cycle_check: Option<usize>,
}

pub fn algebra_facts(g: &Graph, req: &AlgebraRequest) -> Result<AlgebraFacts, CliError> {
    let action = req.action.unwrap_or(match (req.fiber, req.cycle_check) {
        (Some(_), _) => Action::M2Check,
        (None, Some(_)) => Action::CycleCheck,
        _ => Action::Summary,
    });
    let alg = PathAlgebra::new(g);
    let n = req.truncate;
    let mut facts = AlgebraFacts::default();
    match action {
        Action::Summary => {
            facts.dimension = alg.dimension().ok();
            facts.truncation = Some(n);
            facts.skew_basis_dim = Some(lie::skew_basis(&alg, n).len());
            facts.bracket_space_dim = Some(lie::bracket_space(&alg, n).dimension());
        }
        Action::Dim => facts.dimension = Some(alg.dimension()?),
        Action::SkewBasis => {
            let basis: Vec<String> = lie::skew_basis(&alg, n)
                .iter()
                .map(|x| x.element().display(g).to_string())
                .collect();
            facts.truncation = Some(n);
            facts.skew_basis_dim = Some(basis.len());
            facts.skew_basis = Some(basis);
        }
        Action::BracketDim => {
            facts.truncation = Some(n);
            facts.bracket_space_dim = Some(lie::bracket_space(&alg, n).dimension());
        }
        Action::M2Check => {
            let name = req
                .fiber
                .ok_or_else(|| CliError::Input("m2-check needs --fiber EDGE".into()))?;
            let e = g
                .edge(name)
                .ok_or_else(|| CliError::Input(format!("unknown edge {name}")))?;
            let r = lie::fiber_m2_iso(&alg, e)?;
            facts.m2_check = Some(M2Facts {
                edge: name.to_string(),
                products_checked: r.products_checked,
                products_matched: r.products_matched,
                star_compatible: r.star_compatible,
            });
        }
        Action::CycleCheck => {
            let d = req
                .cycle_check
                .ok_or_else(|| CliError::Input("cycle-check needs --cycle-check D".into()))?;
            let r = laurent::verify_cycle_iso(d)?;
            facts.cycle_check = Some(CycleFacts {
                d: r.d,
                relations_checked: r.relations_checked,
                involution_checked: r.involution_checked,
                products_checked: r.products_checked,
                images_independent: r.images_independent,
            });
        }
    }
    Ok(facts)
}

fn set(xs: &[String]) -> String {
    format!("{{{}}}", xs.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_report(r: &Report) -> String {
    let mut s = String::new();
    let g = &r.graph;
    let _ = writeln!(
        s,
        "graph: {} vertices, {} edges, {} components",
        g.vertices,
        g.edges,
        g.components.len()
    );
    let cert = match &r.simple.certificate {
        Some(c) if c.kind == "exitless_cycle" => format!(" (exitless cycle {})", c.edges.join(" ")),
        Some(c) => format!(" (proper hereditary saturated subset {})", set(&c.vertices)),
        None => String::new(),
    };
    let _ = writeln!(s, "simple: {}{cert}", yes(r.simple.value));
    let _ = writeln!(s, "almost simple: {}", yes(r.almost_simple));
    if let Some(f) = &r.failure_reason {
        let extra = match (&f.vertex, &f.certificate) {
            (Some(v), _) => format!(" at {v}"),
            (None, Some(c)) if c.kind == "exitless_cycle" => {
                format!(" (exitless cycle {})", c.edges.join(" "))
            }
            (None, Some(c)) => {
                format!(" (proper hereditary saturated subset {})", set(&c.vertices))
            }
            _ => String::new(),
        };
        let _ = writeln!(s, "reason: {}{extra}", f.kind);
    }
    let d = &r.decomposition;
    let _ = writeln!(s, "core: {}", set(&d.core));
    let _ = writeln!(s, "balloons: {}", set(&d.balloons));
    let units: Vec<String> = d
        .fiber_units
        .iter()
        .map(|u| format!("{}: {} -> {}", u.edge, u.source, u.target))
        .collect();
    let _ = writeln!(
        s,
        "fiber units: {}",
        if units.is_empty() {
            "none".into()
        } else {
            units.join(", ")
        }
    );
    let _ = writeln!(s, "predicted [K,K] simple: {}", yes(r.predicted_kk_simple));
    if let Some(e) = &r.evidence {
        let _ = writeln!(s, "evidence at truncation {}:", e.truncation);
        match e.algebra_dim {
            Some(n) => {
                let _ = writeln!(s, "  dim L: {n}");
            }
            None => {
                let _ = writeln!(s, "  dim L: infinite");
            }
        }
        let _ = writeln!(s, "  skew basis: {}", e.skew_basis_dim);
        let _ = writeln!(s, "  bracket space: {}", e.bracket_space_dim);
        if let Some(c) = &e.containment {
            let _ = writeln!(
                s,
                "  brackets of degree {} in ideal of {} (slack {}): {} ({} checked)",
                c.degree,
                set(&c.generators),
                c.slack,
                if c.holds { "holds" } else { "fails" },
                c.checked
            );
        }
        if let Some(w) = &e.witness {
            let _ = writeln!(s, "  witness: [{}, {}] = {}", w.left, w.right, w.value);
        }
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {}", w.message);
    }
    s
}

pub fn render_inspection(i: &Inspection) -> String {
    let mut s = String::new();
    let list = |xs: &[String]| {
        if xs.is_empty() {
            "none".to_string()
        } else {
            xs.join(", ")
        }
    };
    let _ = writeln!(
        s,
        "graph: {} vertices, {} edges, {} components",
        i.graph.vertices,
        i.graph.edges,
        i.graph.components.len()
    );
    let _ = writeln!(s, "sinks: {}", list(&i.sinks));
    let _ = writeln!(s, "sources: {}", list(&i.sources));
    let _ = writeln!(s, "fibers: {}", list(&i.fibers));
    match &i.hs_subsets {
        Some(subs) => {
            let shown: Vec<String> = subs.iter().map(|x| set(x)).collect();
            let _ = writeln!(s, "HS subsets: {}", list(&shown));
        }
        None => {
            let _ = writeln!(s, "HS subsets: not enumerated (too many vertices)");
        }
    }
    let cyc = |cs: &[Vec<String>]| -> Vec<String> {
        cs.iter().map(|c| format!("({})", c.join(" "))).collect()
    };
    if i.cycles_truncated {
        let _ = writeln!(s, "cycles: more than {}", report::CYCLE_LISTING_LIMIT);
    } else {
        let _ = writeln!(s, "cycles: {}", list(&cyc(&i.cycles)));
    }
    let _ = writeln!(s, "exitless cycles: {}", list(&cyc(&i.exitless_cycles)));
    s
}

pub fn render_facts(f: &AlgebraFacts) -> String {
    let mut s = String::new();
    if let Some(d) = f.dimension {
        let _ = writeln!(s, "dimension: {d}");
    }
    if let Some(n) = f.truncation {
        let _ = writeln!(s, "truncation: {n}");
    }
    if let Some(basis) = &f.skew_basis {
        for x in basis {
            let _ = writeln!(s, "  {x}");
        }
    }
    if let Some(n) = f.skew_basis_dim {
        let _ = writeln!(s, "skew basis dimension: {n}");
    }
    if let Some(n) = f.bracket_space_dim {
        let _ = writeln!(s, "bracket space dimension: {n}");
    }
    if let Some(m) = &f.m2_check {
        let _ = writeln!(
            s,
            "fiber {}: {}/{} products match, star is transpose: {}",
            m.edge,
            m.products_matched,
            m.products_checked,
            yes(m.star_compatible)
        );
    }
    if let Some(c) = &f.cycle_check {
        let _ = writeln!(
            s,
            "cycle of length {}: {} relations, {} involution checks, {} products pass",
            c.d, c.relations_checked, c.involution_checked, c.products_checked
        );
    }
    s
}

/// One file's output, as text or a JSON value.
fn run_one(command: &Command, g: &Graph) -> Result<(String, serde_json::Value), CliError> {
    match command {
        Command::Classify {
            truncate,
            witness,
            no_evidence,
            ..
        } => {
            let opts = (!no_evidence).then_some(EvidenceOptions {
                truncation: *truncate,
                witness: *witness,
            });
            let r = report::report(g, opts);
            Ok((render_report(&r), value(&r)))
        }
        Command::Inspect { .. } => {
            let i = report::inspect(g);
            Ok((render_inspection(&i), value(&i)))
        }
        Command::Algebra {
            action,
            truncate,
            fiber,
            cycle_check,
            ..
        } => {
            let req = AlgebraRequest {
                action: *action,
                truncate: *truncate,
                fiber: fiber.as_deref(),
                cycle_check: *cycle_check,
            };
            let f = algebra_facts(g, &req)?;
            Ok((render_facts(&f), value(&f)))
        }
    }
}

fn value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("outputs serialize")
}

#[derive(Serialize)]
struct CorpusEntry {
    file: String,
    result: Option<serde_json::Value>,
    error: Option<String>,
}

/// Runs a parsed command line, appending stdout text to `out`. In corpus
/// mode every file is processed and the first error is returned at the end.
pub fn run(cli: &Cli, out: &mut String) -> Result<(), CliError> {
    let common = match &cli.command {
        Command::Classify { common, .. }
        | Command::Inspect { common }
        | Command::Algebra { common, .. } => common,
    };
    if let Some(dir) = &common.corpus {
        let mut text = String::new();
        let mut entries = Vec::new();
        let mut first_error = None;
        for path in corpus_files(dir)? {
            let file = path
                .file_name()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            match load_graph(&path).and_then(|g| run_one(&cli.command, &g)) {
                Ok((t, v)) => {
                    let _ = write!(text, "== {file}\n{t}");
                    entries.push(CorpusEntry {
                        file,
                        result: Some(v),
                        error: None,
                    });
                }
                Err(e) => {
                    let _ = writeln!(text, "== {file}\nerror: {e}");
                    entries.push(CorpusEntry {
                        file,
                        result: None,
                        error: Some(e.to_string()),
                    });
                    first_error.get_or_insert(e);
                }
            }
        }
        if common.json {
            out.push_str(&(report::to_json(&entries) + "\n"));
        } else {
            out.push_str(&text);
        }
        return first_error.map_or(Ok(()), Err);
    }
    let path = common
        .file
        .as_ref()
        .ok_or_else(|| CliError::Input("a graph file or --corpus DIR is required".into()))?;
    let g = load_graph(path)?;
    let (text, value) = run_one(&cli.command, &g)?;
    if common.json {
        out.push_str(&(report::to_json(&value) + "\n"));
    } else {
        out.push_str(&text);
    }
    Ok(())
}
