//! Hereditary and saturated vertex sets, the simplicity criterion for
//! Leavitt path algebras, and the almost-simple graph classifier.

use alloc::vec::Vec;

use crate::graph::{Cycle, EdgeId, EdgeSet, Graph, GraphError, VertexId, VertexSet};

/// Brute-force subset enumeration is refused above this many vertices.
pub const DEFAULT_MAX_ENUMERATION_VERTICES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("graph has {vertices} vertices, enumeration limit is {limit}")]
    GraphTooLarge { vertices: usize, limit: usize },
    #[error("balloon search needs a nonempty target set")]
    EmptyW,
    #[error("vertex set is not hereditary and saturated")]
    NotHereditarySaturated,
    #[error("vertex set is all of V")]
    WIsAllOfV,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `W` is hereditary when every descendant of a member is a member.
pub fn is_hereditary(g: &Graph, set: &VertexSet) -> bool {
    set.iter()
        .all(|&v| g.out_edges(v).iter().all(|&e| set.contains(&g.range(e))))
}

/// `W` is saturated when every non-sink whose out-edges all land in `W`
/// belongs to `W`.
pub fn is_saturated(g: &Graph, set: &VertexSet) -> bool {
    g.vertices()
        .all(|v| set.contains(&v) || !lands_inside(g, v, set))
}

fn lands_inside(g: &Graph, v: VertexId, set: &VertexSet) -> bool {
    !g.is_sink(v) && g.out_edges(v).iter().all(|&e| set.contains(&g.range(e)))
}

pub fn hereditary_closure(g: &Graph, set: &VertexSet) -> VertexSet {
    g.descendants_of_set(set.iter().copied())
}

pub fn saturated_closure(g: &Graph, set: &VertexSet) -> VertexSet {
    let mut out = set.clone();
    loop {
        let added: Vec<VertexId> = g
            .vertices()
            .filter(|v| !out.contains(v) && lands_inside(g, *v, &out))
            .collect();
        if added.is_empty() {
            return out;
        }
        out.extend(added);
    }
}

/// Least hereditary and saturated superset.
pub fn hs_closure(g: &Graph, set: &VertexSet) -> VertexSet {
    let mut out = set.clone();
    loop {
        let next = saturated_closure(g, &hereditary_closure(g, &out));
        if next == out {
            return out;
        }
        out = next;
    }
}

/// A vertex set together with its two definitional predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsSubset {
    pub vertices: VertexSet,
    pub is_hereditary: bool,
    pub is_saturated: bool,
}

impl HsSubset {
    pub fn check(g: &Graph, vertices: VertexSet) -> Self {
        HsSubset {
            is_hereditary: is_hereditary(g, &vertices),
            is_saturated: is_saturated(g, &vertices),
            vertices,
        }
    }
}

/// All nonempty hereditary saturated subsets, in bitmask order over the
/// declaration order of vertices.
pub fn enumerate_hs_subsets(
    g: &Graph,
    max_vertices: usize,
) -> Result<Vec<HsSubset>, ClassifyError> {
    let n = g.vertex_count();
    if n > max_vertices || n >= usize::BITS as usize {
        return Err(ClassifyError::GraphTooLarge {
            vertices: n,
            limit: max_vertices,
        });
    }
    let all: Vec<VertexId> = g.vertices().collect();
    let mut out = Vec::new();
    for mask in 1usize..(1 << n) {
        let set: VertexSet = all
            .iter()
            .copied()
            .filter(|v| mask >> v.index() & 1 == 1)
            .collect();
        let subset = HsSubset::check(g, set);
        if subset.is_hereditary && subset.is_saturated {
            out.push(subset);
        }
    }
    Ok(out)
}

/// The intersection of all nonempty hereditary saturated subsets, when that
/// intersection is itself nonempty, hereditary and saturated.
pub fn smallest_hs_subset(g: &Graph) -> Option<VertexSet> {
    let mut acc = g.all_vertices();
    for v in g.vertices() {
        let closure = hs_closure(g, &VertexSet::from([v]));
        acc = acc.intersection(&closure).copied().collect();
        if acc.is_empty() {
            return None;
        }
    }
    (is_hereditary(g, &acc) && is_saturated(g, &acc)).then_some(acc)
}

/// Why a graph fails the simplicity criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicityCertificate {
    ProperHsSubset(VertexSet),
    ExitlessCycle(Cycle),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub simple: bool,
    pub certificate: Option<SimplicityCertificate>,
}

/// `L(Γ)` is simple iff `V` has no proper hereditary saturated subset and
/// every cycle has an exit.
pub fn is_simple(g: &Graph) -> SimplicityVerdict {
    let all = g.all_vertices();
    for v in g.vertices() {
        let closure = hs_closure(g, &VertexSet::from([v]));
        if closure != all {
            return SimplicityVerdict {
                simple: false,
                certificate: Some(SimplicityCertificate::ProperHsSubset(closure)),
            };
        }
    }
    if let Some(cycle) = g.exitless_cycles().into_iter().next() {
        return SimplicityVerdict {
            simple: false,
            certificate: Some(SimplicityCertificate::ExitlessCycle(cycle)),
        };
    }
    SimplicityVerdict {
        simple: true,
        certificate: None,
    }
}

/// Source is a source, range is a sink, and `e` is the only edge into it.
pub fn is_fiber(g: &Graph, e: EdgeId) -> bool {
    let (s, r) = (g.source(e), g.range(e));
    g.is_source(s) && g.is_sink(r) && g.in_edges(r) == [e]
}

pub fn find_fibers(g: &Graph) -> EdgeSet {
    g.edges().filter(|&e| is_fiber(g, e)).collect()
}

/// Connected, more than one vertex, exactly one source and every other
/// vertex a sink.
pub fn is_fork(g: &Graph) -> bool {
    if g.vertex_count() < 2 || !g.is_connected() {
        return false;
    }
    let sources = g.sources();
    sources.len() == 1 && g.vertices().all(|v| sources.contains(&v) || g.is_sink(v))
}

/// The unique loop at `v` when `v` is a balloon over `w`.
pub fn balloon_loop(g: &Graph, v: VertexId, w: &VertexSet) -> Option<EdgeId> {
    if w.contains(&v) {
        return None;
    }
    let &[c] = g.in_edges(v) else { return None };
    if !g.is_loop(c) {
        return None;
    }
    let out = g.out_edges(v);
    let into_w = out.iter().filter(|&&e| w.contains(&g.range(e))).count();
    (into_w > 0 && into_w + 1 == out.len()).then_some(c)
}

/// Vertices outside `W` carrying a loop whose other out-edges all land in a
/// nonempty part of `W` and whose only in-edge is that loop.
pub fn find_balloons(g: &Graph, w: &VertexSet) -> Result<VertexSet, ClassifyError> {
    if w.is_empty() {
        return Err(ClassifyError::EmptyW);
    }
    Ok(g.vertices()
        .filter(|&v| balloon_loop(g, v, w).is_some())
        .collect())
}

/// `Γ' = (V∖W, E∖E(V,W))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    pub graph: Graph,
}

pub fn quotient_graph(g: &Graph, w: &VertexSet) -> Result<QuotientGraph, ClassifyError> {
    if w.is_empty() || !is_hereditary(g, w) || !is_saturated(g, w) {
        return Err(ClassifyError::NotHereditarySaturated);
    }
    if w.len() == g.vertex_count() {
        return Err(ClassifyError::WIsAllOfV);
    }
    let keep: VertexSet = g.vertices().filter(|v| !w.contains(v)).collect();
    // W hereditary: an edge with range outside W also has source outside W.
    Ok(QuotientGraph {
        graph: g.induced_subgraph(&keep)?,
    })
}

/// A source of out-degree one together with its fiber and the fiber's sink;
/// such a triple is an isolated copy of `u → w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberUnit {
    pub source: VertexId,
    pub edge: EdgeId,
    pub target: VertexId,
}

/// Why a graph is not almost simple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureReason {
    /// Every vertex belongs to a detached fiber unit; `[K,K] = 0`.
    EmptyAfterFiberStripping,
    /// What remains is a single bare vertex, whose algebra is the field.
    ZeroBracketCore,
    /// A balloon candidate failed a clause of the balloon definition.
    BalloonCheckFailed(VertexId),
    CoreNotSimple(SimplicityCertificate),
}

/// Judgment calls surfaced alongside the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    /// The graph is not connected; the decomposition is applied to it whole.
    Disconnected { components: usize },
    /// The graph is a disjoint union of fiber units.
    BareFiberUnits,
    /// A fiber whose source has other out-edges; it is not detached.
    SharedSourceFiber(EdgeId),
    /// The remainder is acyclic, so `L ≅ M_n(F)` is finite dimensional and
    /// `[K,K]` is `so(n)`, which is not simple for `n = 4`.
    FiniteDimensionalCore { matrix_size: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub simple: SimplicityVerdict,
    pub almost_simple: bool,
    pub core: VertexSet,
    pub balloons: VertexSet,
    pub fiber_units: Vec<FiberUnit>,
    pub components: Vec<VertexSet>,
    pub failure_reason: Option<FailureReason>,
    pub warnings: Vec<Warning>,
    pub predicted_kk_simple: bool,
}

impl Classification {
    /// `V₁`: core plus balloons.
    pub fn v1(&self) -> VertexSet {
        self.core.union(&self.balloons).copied().collect()
    }
}

/// Decides whether `Γ` is almost simple: detached fiber units, balloons
/// `V₁∖V₂` over a core `V₂`, and a simple core graph `(V₂, E(V₂,V₂))`.
pub fn classify(g: &Graph) -> Classification {
    let simple = is_simple(g);
    let components = g.weak_components();
    let mut warnings = Vec::new();
    if components.len() > 1 {
        warnings.push(Warning::Disconnected {
            components: components.len(),
        });
    }

    let mut fiber_units = Vec::new();
    let mut stripped = VertexSet::new();
    for e in find_fibers(g) {
        let s = g.source(e);
        if g.out_edges(s).len() == 1 {
            fiber_units.push(FiberUnit {
                source: s,
                edge: e,
                target: g.range(e),
            });
            stripped.insert(s);
            stripped.insert(g.range(e));
        } else {
            warnings.push(Warning::SharedSourceFiber(e));
        }
    }
    let remainder: VertexSet = g.vertices().filter(|v| !stripped.contains(v)).collect();

    let mut out = Classification {
        simple,
        almost_simple: false,
        core: VertexSet::new(),
        balloons: VertexSet::new(),
        fiber_units,
        components,
        failure_reason: None,
        warnings,
        predicted_kk_simple: false,
    };

    if remainder.is_empty() {
        out.warnings.push(Warning::BareFiberUnits);
        out.failure_reason = Some(FailureReason::EmptyAfterFiberStripping);
        return out;
    }

    let balloons = balloon_fixpoint(g, &remainder);
    let core: VertexSet = remainder.difference(&balloons).copied().collect();
    out.core = core.clone();
    out.balloons = balloons.clone();

    if let Some(&bad) = balloons
        .iter()
        .find(|&&v| balloon_loop(g, v, &core).is_none())
    {
        out.failure_reason = Some(FailureReason::BalloonCheckFailed(bad));
        return out;
    }
    let core_graph = g
        .induced_subgraph(&core)
        .expect("core is a nonempty vertex subset");
    let verdict = is_simple(&core_graph);
    if let Some(cert) = verdict.certificate {
        out.failure_reason = Some(FailureReason::CoreNotSimple(lift_certificate(
            g, &core, cert,
        )));
        return out;
    }
    if balloons.is_empty() && core_graph.vertex_count() == 1 && core_graph.edge_count() == 0 {
        out.failure_reason = Some(FailureReason::ZeroBracketCore);
        return out;
    }
    if balloons.is_empty() && core_graph.is_acyclic() {
        out.warnings.push(Warning::FiniteDimensionalCore {
            matrix_size: paths_into_sink(&core_graph),
        });
    }
    out.almost_simple = true;
    out.predicted_kk_simple = true;
    out
}

/// Local balloon candidates (loop, in-edges exactly that loop, at least one
/// other out-edge), then evict any candidate pointing into the candidate
/// set until stable.
fn balloon_fixpoint(g: &Graph, within: &VertexSet) -> VertexSet {
    let mut cand: VertexSet = within
        .iter()
        .copied()
        .filter(|&v| match g.in_edges(v) {
            &[c] => g.is_loop(c) && g.out_edges(v).len() >= 2,
            _ => false,
        })
        .collect();
    loop {
        let evict: Vec<VertexId> = cand
            .iter()
            .copied()
            .filter(|&v| {
                g.out_edges(v)
                    .iter()
                    .any(|&e| !g.is_loop(e) && cand.contains(&g.range(e)))
            })
            .collect();
        if evict.is_empty() {
            return cand;
        }
        for v in evict {
            cand.remove(&v);
        }
    }
}

/// Translates a certificate computed on an induced subgraph back into the
/// ids of `g`.
fn lift_certificate(
    g: &Graph,
    keep: &VertexSet,
    cert: SimplicityCertificate,
) -> SimplicityCertificate {
    let vmap: Vec<VertexId> = keep.iter().copied().collect();
    let emap: Vec<EdgeId> = g
        .edges()
        .filter(|&e| keep.contains(&g.source(e)) && keep.contains(&g.range(e)))
        .collect();
    match cert {
        SimplicityCertificate::ProperHsSubset(set) => {
            SimplicityCertificate::ProperHsSubset(set.iter().map(|v| vmap[v.index()]).collect())
        }
        SimplicityCertificate::ExitlessCycle(c) => {
            let edges: Vec<EdgeId> = c.edges().iter().map(|e| emap[e.index()]).collect();
            SimplicityCertificate::ExitlessCycle(Cycle::new(g, &edges).expect("lifted cycle"))
        }
    }
}

/// Number of paths ending at the unique sink of a simple acyclic graph.
fn paths_into_sink(g: &Graph) -> usize {
    let Some(sink) = g.sinks().into_iter().next() else {
        return 0;
    };
    // Count paths ending at `sink` by dynamic programming in reverse
    // topological order.
    let mut count: Vec<Option<usize>> = alloc::vec![None; g.vertex_count()];
    fn go(g: &Graph, v: VertexId, sink: VertexId, count: &mut Vec<Option<usize>>) -> usize {
        if let Some(c) = count[v.index()] {
            return c;
        }
        let mut c = usize::from(v == sink);
        for &e in g.out_edges(v) {
            c += go(g, g.range(e), sink, count);
        }
        count[v.index()] = Some(c);
        c
    }
    g.vertices().map(|v| go(g, v, sink, &mut count)).sum()
}
