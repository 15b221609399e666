//! Serializable reports. Field names are the JSON schema; keys are emitted
//! sorted.

use std::collections::BTreeMap;

use lpakit_core::algebra::PathAlgebra;
use lpakit_core::classify::{self, Classification, FailureReason, SimplicityCertificate, Warning};
use lpakit_core::graph::{Cycle, EdgeId, Graph, VertexSet};
use lpakit_core::lie;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub components: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// `proper_hs_subset` or `exitless_cycle`.
    pub kind: String,
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleReport {
    pub value: bool,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberUnitReport {
    pub source: String,
    pub edge: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub core: Vec<String>,
    pub balloons: Vec<String>,
    pub fiber_units: Vec<FiberUnitReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// `empty_after_fiber_stripping`, `zero_bracket_core`,
    /// `balloon_check_failed` or `core_not_simple`.
    pub kind: String,
    pub vertex: Option<String>,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WarningReport {
    /// `disconnected`, `bare_fiber_units`, `shared_source_fiber` or
    /// `finite_dimensional_core`.
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub degree: usize,
    pub slack: usize,
    pub generators: Vec<String>,
    pub checked: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub truncation: usize,
    pub skew_basis_dim: usize,
    pub bracket_space_dim: usize,
    /// `dim L(Γ)` when the graph is acyclic.
    pub algebra_dim: Option<usize>,
    pub witness: Option<Witness>,
    pub containment: Option<Containment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub graph: GraphSummary,
    pub simple: SimpleReport,
    pub almost_simple: bool,
    pub decomposition: Decomposition,
    pub failure_reason: Option<Failure>,
    #[serde(rename = "predicted_KK_simple")]
    pub predicted_kk_simple: bool,
    pub evidence: Option<Evidence>,
    pub warnings: Vec<WarningReport>,
}

pub fn names(g: &Graph, set: &VertexSet) -> Vec<String> {
    set.iter().map(|&v| g.vertex_name(v).to_string()).collect()
}

fn edge_names(g: &Graph, edges: &[EdgeId]) -> Vec<String> {
    edges.iter().map(|&e| g.edge_name(e).to_string()).collect()
}

pub fn cycle_certificate(g: &Graph, c: &Cycle) -> Certificate {
    Certificate {
        kind: "exitless_cycle".into(),
        vertices: c
            .vertices(g)
            .iter()
            .map(|&v| g.vertex_name(v).to_string())
            .collect(),
        edges: edge_names(g, c.edges()),
    }
}

fn certificate(g: &Graph, c: &SimplicityCertificate) -> Certificate {
    match c {
        SimplicityCertificate::ProperHsSubset(s) => Certificate {
            kind: "proper_hs_subset".into(),
            vertices: names(g, s),
            edges: Vec::new(),
        },
        SimplicityCertificate::ExitlessCycle(c) => cycle_certificate(g, c),
    }
}

fn failure(g: &Graph, r: &FailureReason) -> Failure {
    let (kind, vertex, cert) = match r {
        FailureReason::EmptyAfterFiberStripping => ("empty_after_fiber_stripping", None, None),
        FailureReason::ZeroBracketCore => ("zero_bracket_core", None, None),
        FailureReason::BalloonCheckFailed(v) => (
            "balloon_check_failed",
            Some(g.vertex_name(*v).to_string()),
            None,
        ),
        FailureReason::CoreNotSimple(c) => ("core_not_simple", None, Some(certificate(g, c))),
    };
    Failure {
        kind: kind.into(),
        vertex,
        certificate: cert,
    }
}

fn warning(g: &Graph, w: &Warning) -> WarningReport {
    let (kind, message) = match w {
        Warning::Disconnected { components } => (
            "disconnected",
            format!("graph has {components} weak components; the decomposition is applied to the whole graph"),
        ),
        Warning::BareFiberUnits => (
            "bare_fiber_units",
            "graph is a disjoint union of fiber units, so [K,K] = 0; reported as not almost simple".into(),
        ),
        Warning::SharedSourceFiber(e) => (
            "shared_source_fiber",
            format!("fiber {} has a source with other out-edges and is kept in the graph", g.edge_name(*e)),
        ),
        Warning::FiniteDimensionalCore { matrix_size } => (
            "finite_dimensional_core",
            format!(
                "algebra is M_{matrix_size}(F) and [K,K] is so({matrix_size}){}",
                if *matrix_size == 4 { ", which is not simple" } else { "" }
            ),
        ),
    };
    WarningReport {
        kind: kind.into(),
        message,
    }
}

pub fn summary(g: &Graph) -> GraphSummary {
    GraphSummary {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        components: g.weak_components().iter().map(|c| names(g, c)).collect(),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EvidenceOptions {
    pub truncation: usize,
    pub witness: bool,
}

pub fn evidence(g: &Graph, c: &Classification, opts: EvidenceOptions) -> Evidence {
    let alg = PathAlgebra::new(g);
    let n = opts.truncation;
    let witness = if opts.witness && c.almost_simple {
        lie::find_witness(&alg, n).map(|w| Witness {
            left: w.left.element().display(g).to_string(),
            right: w.right.element().display(g).to_string(),
            value: w.value.element().display(g).to_string(),
        })
    } else {
        None
    };
    let containment = c.almost_simple.then(|| {
        let r = lie::bracket_in_ideal(
            &alg,
            &c.core,
            lie::MIN_EVIDENCE_TRUNCATION,
            lie::DEFAULT_SLACK,
        )
        .expect("almost simple graphs pass the precondition");
        Containment {
            degree: r.degree,
            slack: r.slack,
            generators: names(g, &r.generators),
            checked: r.checked,
            holds: r.holds,
        }
    });
    Evidence {
        truncation: n,
        skew_basis_dim: lie::skew_basis(&alg, n).len(),
        bracket_space_dim: lie::bracket_space(&alg, n).dimension(),
        algebra_dim: alg.dimension().ok(),
        witness,
        containment,
    }
}

pub fn report(g: &Graph, evidence_opts: Option<EvidenceOptions>) -> Report {
    let c = classify::classify(g);
    Report {
        graph: summary(g),
        simple: SimpleReport {
            value: c.simple.simple,
            certificate: c.simple.certificate.as_ref().map(|x| certificate(g, x)),
        },
        almost_simple: c.almost_simple,
        decomposition: Decomposition {
            core: names(g, &c.core),
            balloons: names(g, &c.balloons),
            fiber_units: c
                .fiber_units
                .iter()
                .map(|u| FiberUnitReport {
                    source: g.vertex_name(u.source).to_string(),
                    edge: g.edge_name(u.edge).to_string(),
                    target: g.vertex_name(u.target).to_string(),
                })
                .collect(),
        },
        failure_reason: c.failure_reason.as_ref().map(|r| failure(g, r)),
        predicted_kk_simple: c.predicted_kk_simple,
        evidence: evidence_opts.map(|o| evidence(g, &c, o)),
        warnings: c.warnings.iter().map(|w| warning(g, w)).collect(),
    }
}

/// Structural listing for `inspect`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inspection {
    pub graph: GraphSummary,
    pub sinks: Vec<String>,
    pub sources: Vec<String>,
    pub fibers: Vec<String>,
    /// Absent above the enumeration limit.
    pub hs_subsets: Option<Vec<Vec<String>>>,
    pub cycles: Vec<Vec<String>>,
    pub cycles_truncated: bool,
    pub exitless_cycles: Vec<Vec<String>>,
}

pub const CYCLE_LISTING_LIMIT: usize = 1000;

pub fn inspect(g: &Graph) -> Inspection {
    let hs_subsets = classify::enumerate_hs_subsets(g, classify::DEFAULT_MAX_ENUMERATION_VERTICES)
        .ok()
        .map(|subs| subs.iter().map(|s| names(g, &s.vertices)).collect());
    let (cycles, cycles_truncated) = match g.enumerate_cycles(CYCLE_LISTING_LIMIT) {
        Ok(cs) => (cs, false),
        Err(_) => (Vec::new(), true),
    };
    let fibers: Vec<EdgeId> = classify::find_fibers(g).into_iter().collect();
    Inspection {
        graph: summary(g),
        sinks: names(g, &g.sinks()),
        sources: names(g, &g.sources()),
        fibers: edge_names(g, &fibers),
        hs_subsets,
        cycles: cycles.iter().map(|c| edge_names(g, c.edges())).collect(),
        cycles_truncated,
        exitless_cycles: g
            .exitless_cycles()
            .iter()
            .map(|c| edge_names(g, c.edges()))
            .collect(),
    }
}

/// Pretty JSON with keys sorted at every level.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("reports serialize");
    let sorted: serde_json::Value = sort_keys(v);
    serde_json::to_string_pretty(&sorted).expect("values serialize")
}

fn sort_keys(v: serde_json::Value) -> serde_json::Value {
    use serde_json::Value;
    match v {
        Value::Object(map) => {
            let sorted: BTreeMap<String, Value> =
                map.into_iter().map(|(k, v)| (k, sort_keys(v))).collect();
            Value::Object(sorted.into_iter().collect())
        }
        Value::Array(xs) => Value::Array(xs.into_iter().map(sort_keys).collect()),
        other => other,
    }
}
