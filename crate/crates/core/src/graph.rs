//! Finite directed multigraphs `Γ = (V, E, s, r)`.
//!
//! Vertices and edges are addressed by dense indices in declaration order,
//! so every set-valued query returned from this module iterates in
//! declaration order.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicUsize, Ordering};

/// Index of a vertex in its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) u32);

/// Index of an edge in its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type VertexSet = BTreeSet<VertexId>;
pub type EdgeSet = BTreeSet<EdgeId>;

/// Identity shared by a graph and all of its clones. Elements of the path
/// algebra carry it so that arithmetic across different graphs is refused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphId(usize);

static NEXT_GRAPH_ID: AtomicUsize = AtomicUsize::new(1);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    UnknownVertex { name: String, line: Option<usize> },
    DuplicateName { name: String, line: Option<usize> },
    InvalidName { name: String },
    EmptyGraph,
    MalformedLine { line: usize, reason: &'static str },
    TooManyCycles { limit: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = |f: &mut fmt::Formatter<'_>, line: &Option<usize>| match line {
            Some(l) => write!(f, "line {l}: "),
            None => Ok(()),
        };
        match self {
            GraphError::UnknownVertex { name, line } => {
                at(f, line)?;
                write!(f, "edge references undeclared vertex `{name}`")
            }
            GraphError::DuplicateName { name, line } => {
                at(f, line)?;
                write!(f, "name `{name}` is already declared")
            }
            GraphError::InvalidName { name } => {
                write!(f, "`{name}` is not a valid name (expected [A-Za-z0-9_]+)")
            }
            GraphError::EmptyGraph => write!(f, "graph declares no vertices"),
            GraphError::MalformedLine { line, reason } => write!(f, "line {line}: {reason}"),
            GraphError::TooManyCycles { limit } => {
                write!(f, "graph has more than {limit} simple cycles")
            }
        }
    }
}

impl core::error::Error for GraphError {}

#[derive(Clone, Debug)]
struct EdgeData {
    name: String,
    source: VertexId,
    range: VertexId,
}

/// A finite directed multigraph with named vertices and edges.
#[derive(Clone, Debug)]
pub struct Graph {
    id: GraphId,
    vertex_names: Vec<String>,
    edges: Vec<EdgeData>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    vertex_index: BTreeMap<String, VertexId>,
    edge_index: BTreeMap<String, EdgeId>,
}

/// Graphs compare structurally; the identity token is ignored.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(&other.edges)
                .all(|(a, b)| a.name == b.name && a.source == b.source && a.range == b.range)
    }
}

impl Eq for Graph {}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Incremental graph construction with name validation.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    vertex_names: Vec<String>,
    edges: Vec<EdgeData>,
    vertex_index: BTreeMap<String, VertexId>,
    edge_index: BTreeMap<String, EdgeId>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn check_fresh(&self, name: &str) -> Result<(), GraphError> {
        if !valid_name(name) {
            return Err(GraphError::InvalidName {
                name: name.to_string(),
            });
        }
        if self.vertex_index.contains_key(name) || self.edge_index.contains_key(name) {
            return Err(GraphError::DuplicateName {
                name: name.to_string(),
                line: None,
            });
        }
        Ok(())
    }

    pub fn vertex(&mut self, name: &str) -> Result<VertexId, GraphError> {
        self.check_fresh(name)?;
        let id = VertexId(self.vertex_names.len() as u32);
        self.vertex_names.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn edge(&mut self, name: &str, source: &str, range: &str) -> Result<EdgeId, GraphError> {
        self.check_fresh(name)?;
        let lookup = |v: &str| {
            self.vertex_index
                .get(v)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex {
                    name: v.to_string(),
                    line: None,
                })
        };
        let (source, range) = (lookup(source)?, lookup(range)?);
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(EdgeData {
            name: name.to_string(),
            source,
            range,
        });
        self.edge_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        if self.vertex_names.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let n = self.vertex_names.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            out_edges[e.source.index()].push(EdgeId(i as u32));
            in_edges[e.range.index()].push(EdgeId(i as u32));
        }
        Ok(Graph {
            id: GraphId(NEXT_GRAPH_ID.fetch_add(1, Ordering::Relaxed)),
            vertex_names: self.vertex_names,
            edges: self.edges,
            out_edges,
            in_edges,
            vertex_index: self.vertex_index,
            edge_index: self.edge_index,
        })
    }
}

/// Parses the line-oriented graph format:
///
/// ```text
/// # comment
/// vertex v
/// vertex w
/// edge e v w
/// ```
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut b = GraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = raw.split(' ').collect();
        if tokens.iter().any(|t| t.is_empty()) {
            return Err(GraphError::MalformedLine {
                line,
                reason: "tokens must be separated by single spaces",
            });
        }
        if tokens[1..].iter().any(|t| !valid_name(t)) {
            return Err(GraphError::MalformedLine {
                line,
                reason: "names must match [A-Za-z0-9_]+",
            });
        }
        let with_line = |e: GraphError| match e {
            GraphError::UnknownVertex { name, .. } => GraphError::UnknownVertex {
                name,
                line: Some(line),
            },
            GraphError::DuplicateName { name, .. } => GraphError::DuplicateName {
                name,
                line: Some(line),
            },
            other => other,
        };
        match tokens.as_slice() {
            ["vertex", name] => {
                b.vertex(name).map_err(with_line)?;
            }
            ["edge", name, source, range] => {
                b.edge(name, source, range).map_err(with_line)?;
            }
            ["vertex", ..] => {
                return Err(GraphError::MalformedLine {
                    line,
                    reason: "expected `vertex NAME`",
                })
            }
            ["edge", ..] => {
                return Err(GraphError::MalformedLine {
                    line,
                    reason: "expected `edge NAME SOURCE RANGE`",
                })
            }
            _ => {
                return Err(GraphError::MalformedLine {
                    line,
                    reason: "unknown declaration",
                })
            }
        }
    }
    b.build()
}

impl fmt::Display for Graph {
    /// Canonical text form: all vertices, then all edges, one per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for name in &self.vertex_names {
            writeln!(f, "vertex {name}")?;
        }
        for e in &self.edges {
            writeln!(
                f,
                "edge {} {} {}",
                e.name,
                self.vertex_names[e.source.index()],
                self.vertex_names[e.range.index()]
            )?;
        }
        Ok(())
    }
}

impl Graph {
    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(
        &self,
    ) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator + Clone {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> impl DoubleEndedIterator<Item = EdgeId> + ExactSizeIterator + Clone {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].range
    }

    /// `s⁻¹(v)` in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.index()]
    }

    /// `r⁻¹(v)` in declaration order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.index()]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.index()].is_empty()
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.in_edges[v.index()].is_empty()
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.source(e) == self.range(e)
    }

    pub fn sinks(&self) -> VertexSet {
        self.vertices().filter(|&v| self.is_sink(v)).collect()
    }

    pub fn sources(&self) -> VertexSet {
        self.vertices().filter(|&v| self.is_source(v)).collect()
    }

    /// `E(X, Y)`: edges with source in `X` and range in `Y`.
    pub fn edges_between(&self, from: &VertexSet, to: &VertexSet) -> EdgeSet {
        self.edges()
            .filter(|&e| from.contains(&self.source(e)) && to.contains(&self.range(e)))
            .collect()
    }

    /// All vertices reachable from `v`, including `v` itself.
    pub fn descendants(&self, v: VertexId) -> VertexSet {
        self.descendants_of_set(core::iter::once(v))
    }

    pub(crate) fn descendants_of_set(
        &self,
        start: impl IntoIterator<Item = VertexId>,
    ) -> VertexSet {
        let mut seen = VertexSet::new();
        let mut stack: Vec<VertexId> = Vec::new();
        for v in start {
            if seen.insert(v) {
                stack.push(v);
            }
        }
        while let Some(v) = stack.pop() {
            for &e in self.out_edges(v) {
                let w = self.range(e);
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Partition of `V` into weakly connected components, ordered by their
    /// least vertex.
    pub fn weak_components(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut component = vec![usize::MAX; n];
        let mut result = Vec::new();
        for start in self.vertices() {
            if component[start.index()] != usize::MAX {
                continue;
            }
            let idx = result.len();
            let mut members = VertexSet::new();
            let mut stack = vec![start];
            component[start.index()] = idx;
            while let Some(v) = stack.pop() {
                members.insert(v);
                let neighbours = self
                    .out_edges(v)
                    .iter()
                    .map(|&e| self.range(e))
                    .chain(self.in_edges(v).iter().map(|&e| self.source(e)));
                for w in neighbours {
                    if component[w.index()] == usize::MAX {
                        component[w.index()] = idx;
                        stack.push(w);
                    }
                }
            }
            result.push(members);
        }
        result
    }

    pub fn is_connected(&self) -> bool {
        self.weak_components().len() == 1
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm.
        let mut indegree: Vec<usize> = self.vertices().map(|v| self.in_edges(v).len()).collect();
        let mut ready: Vec<VertexId> = self
            .vertices()
            .filter(|v| indegree[v.index()] == 0)
            .collect();
        let mut removed = 0;
        while let Some(v) = ready.pop() {
            removed += 1;
            for &e in self.out_edges(v) {
                let w = self.range(e);
                indegree[w.index()] -= 1;
                if indegree[w.index()] == 0 {
                    ready.push(w);
                }
            }
        }
        removed == self.vertex_count()
    }

    /// The subgraph `(X, E(X, X))`, keeping declaration order and names.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new();
        for &v in keep {
            b.vertex(self.vertex_name(v))?;
        }
        for e in self.edges() {
            if keep.contains(&self.source(e)) && keep.contains(&self.range(e)) {
                b.edge(
                    self.edge_name(e),
                    self.vertex_name(self.source(e)),
                    self.vertex_name(self.range(e)),
                )?;
            }
        }
        b.build()
    }

    /// Cycles without an exit, found by walking the unique out-edges of the
    /// out-degree-one vertices. Each cycle starts at its least vertex; the list
    /// is ordered by that vertex.
    pub fn exitless_cycles(&self) -> Vec<Cycle> {
        const UNSEEN: u8 = 0;
        const ON_WALK: u8 = 1;
        const DONE: u8 = 2;
        let next = |v: VertexId| -> Option<EdgeId> {
            match self.out_edges(v) {
                [e] => Some(*e),
                _ => None,
            }
        };
        let mut state = vec![UNSEEN; self.vertex_count()];
        let mut cycles = Vec::new();
        for start in self.vertices() {
            if state[start.index()] != UNSEEN {
                continue;
            }
            let mut walk = Vec::new();
            let mut v = start;
            loop {
                match state[v.index()] {
                    UNSEEN => {}
                    ON_WALK => {
                        // The walk closed on itself: the tail from `v` is a cycle.
                        let pos = walk.iter().position(|&(u, _)| u == v).unwrap();
                        let edges: Vec<EdgeId> = walk[pos..].iter().map(|&(_, e)| e).collect();
                        cycles.push(Cycle::canonical(self, edges));
                        break;
                    }
                    _ => break,
                }
                let Some(e) = next(v) else { break };
                state[v.index()] = ON_WALK;
                walk.push((v, e));
                v = self.range(e);
            }
            for (u, _) in walk {
                state[u.index()] = DONE;
            }
        }
        cycles.sort_by_key(|c| c.start(self));
        cycles
    }

    /// Exhaustive simple-cycle enumeration (each start vertex explores only
    /// larger vertices). Exponential; meant for small graphs and oracles.
    pub fn enumerate_cycles(&self, max_count: usize) -> Result<Vec<Cycle>, GraphError> {
        let mut out = Vec::new();
        let mut on_path = vec![false; self.vertex_count()];
        for start in self.vertices() {
            let mut edges = Vec::new();
            on_path[start.index()] = true;
            self.cycles_from(start, start, &mut on_path, &mut edges, &mut out, max_count)?;
            on_path[start.index()] = false;
        }
        out.sort_by(|a: &Cycle, b: &Cycle| a.edges().cmp(b.edges()));
        Ok(out)
    }

    fn cycles_from(
        &self,
        start: VertexId,
        v: VertexId,
        on_path: &mut [bool],
        edges: &mut Vec<EdgeId>,
        out: &mut Vec<Cycle>,
        max_count: usize,
    ) -> Result<(), GraphError> {
        for &e in self.out_edges(v) {
            let w = self.range(e);
            if w == start {
                if out.len() == max_count {
                    return Err(GraphError::TooManyCycles { limit: max_count });
                }
                edges.push(e);
                out.push(Cycle {
                    edges: edges.clone(),
                });
                edges.pop();
            } else if w > start && !on_path[w.index()] {
                on_path[w.index()] = true;
                edges.push(e);
                self.cycles_from(start, w, on_path, edges, out, max_count)?;
                edges.pop();
                on_path[w.index()] = false;
            }
        }
        Ok(())
    }

    /// An edge `e` is an exit of `C` when `s(e) ∈ V(C)` but `e ∉ E(C)`.
    pub fn is_exit(&self, cycle: &Cycle, e: EdgeId) -> bool {
        cycle.vertices(self).contains(&self.source(e)) && !cycle.edges().contains(&e)
    }

    pub fn has_exit(&self, cycle: &Cycle) -> bool {
        self.edges().any(|e| self.is_exit(cycle, e))
    }
}

/// A path `e₁⋯eₙ`, or a vertex viewed as a path of length zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    range: VertexId,
    edges: Vec<EdgeId>,
}

#[allow(clippy::len_without_is_empty)]
impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Path {
            source: v,
            range: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Self {
        Path {
            source: g.source(e),
            range: g.range(e),
            edges: vec![e],
        }
    }

    /// Returns `None` for an empty or non-composable sequence.
    pub fn from_edges(g: &Graph, edges: &[EdgeId]) -> Option<Self> {
        let (first, last) = (*edges.first()?, *edges.last()?);
        if edges.windows(2).any(|w| g.range(w[0]) != g.source(w[1])) {
            return None;
        }
        Some(Path {
            source: g.source(first),
            range: g.range(last),
            edges: edges.to_vec(),
        })
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// `self` followed by `other`; `None` unless `r(self) = s(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.range != other.source {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path {
            source: self.source,
            range: other.range,
            edges,
        })
    }

    pub fn push(&mut self, g: &Graph, e: EdgeId) -> bool {
        if g.source(e) != self.range {
            return false;
        }
        self.edges.push(e);
        self.range = g.range(e);
        true
    }

    /// If `self = prefix · rest`, returns `rest`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if self.source != prefix.source || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path {
            source: prefix.range,
            range: self.range,
            edges: self.edges[prefix.edges.len()..].to_vec(),
        })
    }

    /// Drops the last edge, returning the shortened path (a vertex path when
    /// the original had length one).
    pub fn pop(&self, g: &Graph) -> Option<(Path, EdgeId)> {
        let (&last, rest) = self.edges.split_last()?;
        let range = g.source(last);
        Some((
            Path {
                source: self.source,
                range,
                edges: rest.to_vec(),
            },
            last,
        ))
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> PathDisplay<'a> {
        PathDisplay {
            path: self,
            graph: g,
        }
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shorter paths first, then edge indices, then the base vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.source.cmp(&other.source))
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_vertex() {
            return f.write_str(self.graph.vertex_name(self.path.source));
        }
        for (i, &e) in self.path.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.graph.edge_name(e))?;
        }
        Ok(())
    }
}

/// A closed path whose edge sources are pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    edges: Vec<EdgeId>,
}

#[allow(clippy::len_without_is_empty)]
impl Cycle {
    /// Validates the cycle conditions and rotates to start at the least vertex.
    pub fn new(g: &Graph, edges: &[EdgeId]) -> Option<Cycle> {
        let path = Path::from_edges(g, edges)?;
        if path.source() != path.range() {
            return None;
        }
        let sources: VertexSet = edges.iter().map(|&e| g.source(e)).collect();
        if sources.len() != edges.len() {
            return None;
        }
        Some(Cycle::canonical(g, edges.to_vec()))
    }

    fn canonical(g: &Graph, mut edges: Vec<EdgeId>) -> Cycle {
        let pos = (0..edges.len())
            .min_by_key(|&i| g.source(edges[i]))
            .unwrap_or(0);
        edges.rotate_left(pos);
        Cycle { edges }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_loop(&self) -> bool {
        self.edges.len() == 1
    }

    pub fn start(&self, g: &Graph) -> VertexId {
        g.source(self.edges[0])
    }

    /// `V(C)` in cycle order.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        self.edges.iter().map(|&e| g.source(e)).collect()
    }

    pub fn as_path(&self, g: &Graph) -> Path {
        Path::from_edges(g, &self.edges).expect("cycle edges compose")
    }

    pub fn edge_names<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = &'a str> + 'a {
        self.edges.iter().map(move |&e| g.edge_name(e))
    }
}
