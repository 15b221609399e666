//! The Leavitt path algebra `L(Γ)` over the rationals.
//!
//! Elements are stored in the normal-form basis spanned by monomials `pq*`
//! with `r(p) = r(q)`, excluding those where `p` and `q` end in the same
//! special edge. Every non-sink `v` has one special out-edge `γ(v)` (least
//! edge name); the Cuntz–Krieger relation `v = Σ_{s(e)=v} ee*` is used as the
//! single rewrite rule
//!
//! ```text
//! p₁γ(v)(q₁γ(v))*  →  p₁q₁* − Σ_{e ∈ s⁻¹(v), e ≠ γ(v)} (p₁e)(q₁e)*
//! ```
//!
//! Each step strictly shortens the special suffix pair and the remaining
//! terms are already normal, so rewriting terminates; a monomial has at most
//! one redex (its final edge pair), so the result does not depend on the
//! order in which terms are processed.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::classify;
use crate::graph::{EdgeId, Graph, GraphId, Path, VertexId, VertexSet};
use crate::span::Span;

pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("elements belong to different graphs")]
    MixedGraphs,
    #[error("graph has a cycle, so its Leavitt path algebra is infinite dimensional")]
    GraphHasCycle,
    #[error("vertex set is empty or not hereditary")]
    NotHereditary,
    #[error("vertices outside the set are not all balloons over it")]
    NotBalloonDecomposition,
    #[error("cannot parse element: {0}")]
    Parse(String),
}

/// `pq*` with `r(p) = r(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    p: Path,
    q: Path,
}

impl Monomial {
    pub fn new(p: Path, q: Path) -> Option<Self> {
        (p.range() == q.range()).then_some(Monomial { p, q })
    }

    pub fn vertex(v: VertexId) -> Self {
        Monomial {
            p: Path::vertex(v),
            q: Path::vertex(v),
        }
    }

    /// `p · r(p)*`, the path itself.
    pub fn path(p: Path) -> Self {
        let q = Path::vertex(p.range());
        Monomial { p, q }
    }

    pub fn p(&self) -> &Path {
        &self.p
    }

    pub fn q(&self) -> &Path {
        &self.q
    }

    /// `|p| + |q|`.
    pub fn degree(&self) -> usize {
        self.p.len() + self.q.len()
    }

    pub fn range(&self) -> VertexId {
        self.p.range()
    }

    /// `(pq*)* = qp*`.
    pub fn star(&self) -> Monomial {
        Monomial {
            p: self.q.clone(),
            q: self.p.clone(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.p == self.q
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, g }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then `|q|` (so `e` sorts before `e*`), then `p`, then `q`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.q.len().cmp(&other.q.len()))
            .then_with(|| self.p.cmp(&other.p))
            .then_with(|| self.q.cmp(&other.q))
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    g: &'a Graph,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} . {}^*",
            self.m.p.display(self.g),
            self.m.q.display(self.g)
        )
    }
}

/// The choice `γ(v)` of one out-edge per non-sink vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialEdges(Vec<Option<EdgeId>>);

impl SpecialEdges {
    /// Lexicographically least edge name at each non-sink.
    pub fn choose(g: &Graph) -> Self {
        SpecialEdges(
            g.vertices()
                .map(|v| {
                    g.out_edges(v)
                        .iter()
                        .copied()
                        .min_by(|&a, &b| g.edge_name(a).cmp(g.edge_name(b)))
                })
                .collect(),
        )
    }

    pub fn get(&self, v: VertexId) -> Option<EdgeId> {
        self.0[v.index()]
    }

    pub fn is_special(&self, g: &Graph, e: EdgeId) -> bool {
        self.get(g.source(e)) == Some(e)
    }
}

/// A finite rational combination of normal-form monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    graph: GraphId,
    terms: BTreeMap<Monomial, Scalar>,
}

#[allow(clippy::len_without_is_empty)]
impl Element {
    pub fn zero(graph: GraphId) -> Self {
        Element {
            graph,
            terms: BTreeMap::new(),
        }
    }

    pub fn graph(&self) -> GraphId {
        self.graph
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Greatest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(Monomial, Scalar)> {
        self.terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    /// Largest monomial degree; zero for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Adds `c · m` assuming `m` is already normal.
    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        assert_eq!(
            self.graph, other.graph,
            "elements belong to different graphs"
        );
        for (m, k) in &other.terms {
            self.add_term(m.clone(), &(k * c));
        }
    }

    pub fn scale_in_place(&mut self, c: &Scalar) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for k in self.terms.values_mut() {
            *k *= c;
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Element {
        let mut out = self.clone();
        out.scale_in_place(c);
        out
    }

    /// `(pq*)* = qp*`, extended linearly. The basis condition is symmetric in
    /// `p` and `q`, so no renormalisation is needed.
    pub fn star(&self) -> Element {
        Element {
            graph: self.graph,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.star(), c.clone()))
                .collect(),
        }
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> ElementDisplay<'a> {
        ElementDisplay { x: self, g }
    }
}

impl Add<&Element> for &Element {
    type Output = Element;

    /// Panics if the operands belong to different graphs.
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scaled(&-Scalar::one())
    }
}

impl Add for Element {
    type Output = Element;

    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;

    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for Element {
    type Output = Element;

    fn neg(self) -> Element {
        -&self
    }
}

fn fmt_scalar(f: &mut fmt::Formatter<'_>, c: &Scalar) -> fmt::Result {
    write!(f, "{}/{}", c.numer(), c.denom())
}

/// Canonical text form: `c * p . q^*` terms in basis order joined by ` + `,
/// coefficients as `num/den`, and `0` for the zero element.
pub struct ElementDisplay<'a> {
    x: &'a Element,
    g: &'a Graph,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.x.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            fmt_scalar(f, c)?;
            write!(f, " * {}", m.display(self.g))?;
        }
        Ok(())
    }
}

/// `L(Γ)` for a fixed graph and choice of special edges.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    graph: Graph,
    special: SpecialEdges,
}

impl PathAlgebra {
    pub fn new(g: &Graph) -> Self {
        PathAlgebra {
            special: SpecialEdges::choose(g),
            graph: g.clone(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn special_edges(&self) -> &SpecialEdges {
        &self.special
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.graph.id())
    }

    fn check(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.graph != self.graph.id() {
            return Err(AlgebraError::MixedGraphs);
        }
        Ok(())
    }

    /// `c · m`, normalised.
    pub fn term(&self, c: Scalar, m: Monomial) -> Element {
        self.normal_form([(c, m)])
    }

    pub fn monomial(&self, m: Monomial) -> Element {
        self.term(Scalar::one(), m)
    }

    pub fn vertex(&self, v: VertexId) -> Element {
        self.monomial(Monomial::vertex(v))
    }

    pub fn edge(&self, e: EdgeId) -> Element {
        self.monomial(Monomial::path(Path::edge(&self.graph, e)))
    }

    /// The ghost edge `e*`.
    pub fn ghost(&self, e: EdgeId) -> Element {
        self.monomial(Monomial::path(Path::edge(&self.graph, e)).star())
    }

    pub fn path(&self, p: Path) -> Element {
        self.monomial(Monomial::path(p))
    }

    /// `Σ_{v ∈ set} v`.
    pub fn vertex_sum<'a>(&self, set: impl IntoIterator<Item = &'a VertexId>) -> Element {
        let mut out = self.zero();
        for &v in set {
            out.add_term(Monomial::vertex(v), &Scalar::one());
        }
        out
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        self.special_suffix(m).is_none()
    }

    /// Splits `p₁f(q₁f)*` when `f` is special.
    fn special_suffix(&self, m: &Monomial) -> Option<(Path, Path, EdgeId)> {
        let (p1, f) = m.p.pop(&self.graph)?;
        let (q1, f2) = m.q.pop(&self.graph)?;
        (f == f2 && self.special.is_special(&self.graph, f)).then_some((p1, q1, f))
    }

    /// Normal form of a formal combination of monomials.
    pub fn normal_form(&self, raw: impl IntoIterator<Item = (Scalar, Monomial)>) -> Element {
        let mut out = self.zero();
        let mut stack: Vec<(Scalar, Monomial)> = raw.into_iter().collect();
        while let Some((c, m)) = stack.pop() {
            if c.is_zero() {
                continue;
            }
            match self.special_suffix(&m) {
                None => out.add_term(m, &c),
                Some((p1, q1, f)) => {
                    let v = self.graph.source(f);
                    let neg = -c.clone();
                    for &e in self.graph.out_edges(v) {
                        if e == f {
                            continue;
                        }
                        let (mut p, mut q) = (p1.clone(), q1.clone());
                        p.push(&self.graph, e);
                        q.push(&self.graph, e);
                        out.add_term(Monomial { p, q }, &neg);
                    }
                    stack.push((c, Monomial { p: p1, q: q1 }));
                }
            }
        }
        out
    }

    /// `(p₁q₁*)(p₂q₂*)` by comparing `q₁` with `p₂`.
    pub fn monomial_mul(&self, a: &Monomial, b: &Monomial) -> Element {
        match raw_monomial_mul(a, b) {
            Some(m) => self.monomial(m),
            None => self.zero(),
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a + b)
    }

    pub fn scale(&self, c: &Scalar, a: &Element) -> Result<Element, AlgebraError> {
        self.check(a)?;
        Ok(a.scaled(c))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        let mut raw = Vec::with_capacity(a.len() * b.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some(m) = raw_monomial_mul(ma, mb) {
                    raw.push((ca * cb, m));
                }
            }
        }
        Ok(self.normal_form(raw))
    }

    pub fn star(&self, a: &Element) -> Result<Element, AlgebraError> {
        self.check(a)?;
        Ok(a.star())
    }

    /// All paths of length at most `n`, ordered by length then edges.
    pub fn paths_up_to(&self, n: usize) -> Vec<Path> {
        let g = &self.graph;
        let mut all: Vec<Path> = g.vertices().map(Path::vertex).collect();
        let mut frontier = all.clone();
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in g.out_edges(p.range()) {
                    let mut q = p.clone();
                    q.push(g, e);
                    next.push(q);
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all.sort();
        all
    }

    /// All monomials `pq*` of degree at most `n`, normal or not, grouped by
    /// common range and filtered by `keep`.
    fn monomials_up_to(&self, n: usize, mut keep: impl FnMut(&Monomial) -> bool) -> Vec<Monomial> {
        let mut by_range: BTreeMap<VertexId, Vec<Path>> = BTreeMap::new();
        for p in self.paths_up_to(n) {
            by_range.entry(p.range()).or_default().push(p);
        }
        let mut out = Vec::new();
        for paths in by_range.values() {
            for p in paths {
                for q in paths {
                    if p.len() + q.len() > n {
                        continue;
                    }
                    let m = Monomial {
                        p: p.clone(),
                        q: q.clone(),
                    };
                    if keep(&m) {
                        out.push(m);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Normal-form basis monomials of degree at most `n`.
    pub fn basis_monomials(&self, n: usize) -> Vec<Monomial> {
        self.monomials_up_to(n, |m| self.is_normal(m))
    }

    /// `dim L(Γ)` for an acyclic graph.
    pub fn dimension(&self) -> Result<usize, AlgebraError> {
        if !self.graph.is_acyclic() {
            return Err(AlgebraError::GraphHasCycle);
        }
        let longest = self.graph.vertex_count().saturating_sub(1);
        Ok(self.basis_monomials(2 * longest).len())
    }

    /// The degree-`≤ n` slice of the ideal generated by a hereditary `W`,
    /// as an echelon span of the monomials `pq*` with `r(p) = r(q) ∈ W`.
    pub fn ideal_span_space(&self, w: &VertexSet, n: usize) -> Result<Span, AlgebraError> {
        if w.is_empty() || !classify::is_hereditary(&self.graph, w) {
            return Err(AlgebraError::NotHereditary);
        }
        let mut span = Span::new(self.graph.id());
        for m in self.monomials_up_to(n, |m| w.contains(&m.range())) {
            span.insert(&self.monomial(m))?;
        }
        Ok(span)
    }

    pub fn ideal_span(&self, w: &VertexSet, n: usize) -> Result<Vec<Element>, AlgebraError> {
        Ok(self.ideal_span_space(w, n)?.reduced_basis())
    }

    /// `u = Σ_{w∈W} w` followed by `cᵢʲ e e* (cᵢ*)ʲ` for every balloon `vᵢ`
    /// with loop `cᵢ`, `j ≤ k` and `e ∈ E(vᵢ, W)`.
    pub fn orthogonal_idempotent_family(
        &self,
        w: &VertexSet,
        k: usize,
    ) -> Result<Vec<Element>, AlgebraError> {
        let g = &self.graph;
        if w.is_empty() {
            return Err(AlgebraError::NotBalloonDecomposition);
        }
        let mut out = vec![self.vertex_sum(w)];
        for v in g.vertices().filter(|v| !w.contains(v)) {
            let c = classify::balloon_loop(g, v, w).ok_or(AlgebraError::NotBalloonDecomposition)?;
            let exits: Vec<EdgeId> = g
                .out_edges(v)
                .iter()
                .copied()
                .filter(|&e| w.contains(&g.range(e)))
                .collect();
            let mut power = Path::vertex(v);
            for _ in 0..=k {
                for &e in &exits {
                    let mut p = power.clone();
                    p.push(g, e);
                    out.push(self.monomial(Monomial { p: p.clone(), q: p }));
                }
                power.push(g, c);
            }
        }
        Ok(out)
    }

    /// Parses the canonical text form produced by [`Element::display`].
    pub fn parse_element(&self, text: &str) -> Result<Element, AlgebraError> {
        let text = text.trim();
        if text == "0" {
            return Ok(self.zero());
        }
        let mut raw = Vec::new();
        for term in text.split(" + ") {
            let (coeff, rest) = term
                .split_once(" * ")
                .ok_or_else(|| parse_err(format!("term `{term}` lacks ` * `")))?;
            let (p, q) = rest
                .split_once(" . ")
                .ok_or_else(|| parse_err(format!("term `{term}` lacks ` . `")))?;
            let q = q
                .strip_suffix("^*")
                .ok_or_else(|| parse_err(format!("term `{term}` lacks `^*`")))?;
            let c = parse_scalar(coeff)?;
            let m = Monomial::new(self.parse_path(p)?, self.parse_path(q)?)
                .ok_or_else(|| parse_err(format!("term `{term}`: r(p) ≠ r(q)")))?;
            raw.push((c, m));
        }
        Ok(self.normal_form(raw))
    }

    fn parse_path(&self, text: &str) -> Result<Path, AlgebraError> {
        let g = &self.graph;
        if let Some(v) = g.vertex(text) {
            return Ok(Path::vertex(v));
        }
        let edges = text
            .split(' ')
            .map(|name| {
                g.edge(name)
                    .ok_or_else(|| parse_err(format!("unknown name `{name}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_edges(g, &edges).ok_or_else(|| parse_err(format!("`{text}` is not a path")))
    }
}

fn parse_err(reason: String) -> AlgebraError {
    AlgebraError::Parse(reason)
}

fn parse_scalar(text: &str) -> Result<Scalar, AlgebraError> {
    let bad = || parse_err(format!("bad coefficient `{text}`"));
    let (n, d) = text.split_once('/').unwrap_or((text, "1"));
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// The product of two monomials as a single (possibly non-normal) monomial,
/// or `None` when it vanishes.
pub(crate) fn raw_monomial_mul(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    if let Some(u) = b.p.strip_prefix(&a.q) {
        // q₁*p₂ = u
        return Some(Monomial {
            p: a.p.concat(&u)?,
            q: b.q.clone(),
        });
    }
    if let Some(u) = a.q.strip_prefix(&b.p) {
        // q₁*p₂ = u*
        return Some(Monomial {
            p: a.p.clone(),
            q: b.q.concat(&u)?,
        });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use alloc::string::ToString;

    const G_F1: &str = "vertex u\nvertex w\nedge e u w\n";
    const G_FORK2: &str = "vertex u\nvertex w1\nvertex w2\nedge e1 u w1\nedge e2 u w2\n";
    const G_L: &str = "vertex v\nedge c v v\n";
    const G_T: &str = "vertex v\nvertex w\nedge c v v\nedge e v w\n";

    fn alg(text: &str) -> PathAlgebra {
        PathAlgebra::new(&parse_graph(text).unwrap())
    }

    fn el(a: &PathAlgebra, text: &str) -> Element {
        a.parse_element(text).unwrap()
    }

    fn show(a: &PathAlgebra, x: &Element) -> String {
        x.display(a.graph()).to_string()
    }

    fn e(a: &PathAlgebra, name: &str) -> EdgeId {
        a.graph().edge(name).unwrap()
    }

    fn v(a: &PathAlgebra, name: &str) -> VertexId {
        a.graph().vertex(name).unwrap()
    }

    #[test]
    fn ghost_times_edge_is_range() {
        let a = alg(G_F1);
        let x = a.mul(&a.ghost(e(&a, "e")), &a.edge(e(&a, "e"))).unwrap();
        assert_eq!(x, a.vertex(v(&a, "w")));
    }

    #[test]
    fn edge_times_ghost_is_source_when_single_out_edge() {
        let a = alg(G_F1);
        let x = a.mul(&a.edge(e(&a, "e")), &a.ghost(e(&a, "e"))).unwrap();
        assert_eq!(x, a.vertex(v(&a, "u")));
    }

    #[test]
    fn distinct_ghost_edge_product_vanishes() {
        let a = alg(G_FORK2);
        assert!(a
            .mul(&a.ghost(e(&a, "e1")), &a.edge(e(&a, "e2")))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn ck2_rewrite_in_fork() {
        let a = alg(G_FORK2);
        let x = a.mul(&a.edge(e(&a, "e1")), &a.ghost(e(&a, "e1"))).unwrap();
        assert_eq!(show(&a, &x), "1/1 * u . u^* + -1/1 * e2 . e2^*");
        // Substituting u = e1e1* + e2e2* back recovers e1e1*.
        let u = a.normal_form([
            (
                scalar(1),
                Monomial::new(
                    Path::edge(a.graph(), e(&a, "e1")),
                    Path::edge(a.graph(), e(&a, "e1")),
                )
                .unwrap(),
            ),
            (
                scalar(1),
                Monomial::new(
                    Path::edge(a.graph(), e(&a, "e2")),
                    Path::edge(a.graph(), e(&a, "e2")),
                )
                .unwrap(),
            ),
        ]);
        assert_eq!(u, a.vertex(v(&a, "u")));
    }

    #[test]
    fn normal_form_of_loop_pair() {
        let a = alg(G_L);
        let c = Path::edge(a.graph(), e(&a, "c"));
        let cc = a.normal_form([(scalar(1), Monomial::new(c.clone(), c).unwrap())]);
        assert_eq!(cc, a.vertex(v(&a, "v")));
    }

    #[test]
    fn normal_form_is_idempotent_on_normal_input() {
        let a = alg(G_T);
        let x = el(&a, "1/1 * c . v^* + -3/2 * e . e^* + 2/1 * w . e^*");
        let again = a.normal_form(x.terms().map(|(m, c)| (c.clone(), m.clone())));
        assert_eq!(x, again);
    }

    #[test]
    fn local_units_in_acyclic_graph() {
        let a = alg(G_FORK2);
        let one = a.vertex_sum(&a.graph().all_vertices());
        for m in a.basis_monomials(2) {
            let x = a.monomial(m);
            assert_eq!(a.mul(&one, &x).unwrap(), x);
            assert_eq!(a.mul(&x, &one).unwrap(), x);
        }
        let b = alg(G_F1);
        let x = a.add(&a.zero(), &a.zero()).unwrap();
        assert!(x.is_zero());
        let ew = b.mul(&b.edge(e(&b, "e")), &b.vertex(v(&b, "w"))).unwrap();
        assert_eq!(
            b.mul(&ew, &b.ghost(e(&b, "e"))).unwrap(),
            b.vertex(v(&b, "u"))
        );
    }

    #[test]
    fn additive_inverse() {
        let a = alg(G_T);
        let x = el(&a, "1/1 * c . v^* + 5/3 * e . e^*");
        let y = a.scale(&scalar(-1), &x).unwrap();
        assert!(a.add(&x, &y).unwrap().is_zero());
    }

    #[test]
    fn star_examples() {
        let a = alg(G_T);
        let ee = e(&a, "e");
        assert_eq!(a.edge(ee).star(), a.ghost(ee));
        let c = e(&a, "c");
        let skew = &a.edge(c) - &a.ghost(c);
        assert_eq!(skew.star(), -&skew);
        let p = Path::edge(a.graph(), ee);
        let eet = a.monomial(Monomial::new(p.clone(), p).unwrap());
        assert_eq!(eet.star(), eet);
    }

    #[test]
    fn basis_examples() {
        let gv = alg("vertex v");
        assert_eq!(gv.basis_monomials(5).len(), 1);
        let f1 = alg(G_F1);
        let listed: Vec<String> = f1
            .basis_monomials(2)
            .iter()
            .map(|m| m.display(f1.graph()).to_string())
            .collect();
        assert_eq!(listed, ["u . u^*", "w . w^*", "e . w^*", "w . e^*"]);
        let l = alg(G_L);
        let listed: Vec<String> = l
            .basis_monomials(2)
            .iter()
            .map(|m| m.display(l.graph()).to_string())
            .collect();
        assert_eq!(
            listed,
            ["v . v^*", "c . v^*", "v . c^*", "c c . v^*", "v . c c^*"]
        );
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(alg(G_F1).dimension(), Ok(4));
        assert_eq!(alg(G_FORK2).dimension(), Ok(8));
        assert_eq!(alg(G_L).dimension(), Err(AlgebraError::GraphHasCycle));
    }

    #[test]
    fn ideal_span_examples() {
        let t = alg(G_T);
        let w = VertexSet::from([v(&t, "w")]);
        let span = t.ideal_span_space(&w, 2).unwrap();
        for text in [
            "1/1 * w . w^*",
            "1/1 * e . w^*",
            "1/1 * w . e^*",
            "1/1 * e . e^*",
        ] {
            assert!(span.contains(&el(&t, text)).unwrap(), "{text}");
        }
        assert!(!span.contains(&t.vertex(v(&t, "v"))).unwrap());
        // ce and (ce)* also have degree 2.
        assert_eq!(span.dimension(), 6);

        let f1 = alg(G_F1);
        let w = VertexSet::from([v(&f1, "w")]);
        assert_eq!(f1.ideal_span(&w, 2).unwrap().len(), 4);
        assert!(f1
            .ideal_span_space(&w, 2)
            .unwrap()
            .contains(&f1.vertex(v(&f1, "u")))
            .unwrap());

        let all = t.graph().all_vertices();
        assert_eq!(
            t.ideal_span(&all, 3).unwrap().len(),
            t.basis_monomials(3).len()
        );
        assert_eq!(
            t.ideal_span(&VertexSet::from([v(&t, "v")]), 2),
            Err(AlgebraError::NotHereditary)
        );
    }

    #[test]
    fn orthogonal_idempotents_in_toeplitz() {
        let t = alg(G_T);
        let w = VertexSet::from([v(&t, "w")]);
        let fam = t.orthogonal_idempotent_family(&w, 1).unwrap();
        let listed: Vec<String> = fam.iter().map(|x| show(&t, x)).collect();
        assert_eq!(
            listed,
            ["1/1 * w . w^*", "1/1 * e . e^*", "1/1 * c e . c e^*"]
        );
        assert_eq!(t.orthogonal_idempotent_family(&w, 0).unwrap().len(), 2);
        for (i, x) in fam.iter().enumerate() {
            for (j, y) in fam.iter().enumerate() {
                let xy = t.mul(x, y).unwrap();
                if i == j {
                    assert_eq!(&xy, x);
                } else {
                    assert!(xy.is_zero());
                }
            }
        }
        assert_eq!(
            t.orthogonal_idempotent_family(&VertexSet::from([v(&t, "v")]), 1),
            Err(AlgebraError::NotBalloonDecomposition)
        );
    }

    #[test]
    fn span_membership() {
        let t = alg(G_T);
        let x = el(&t, "1/1 * c . v^* + -1/1 * v . c^*");
        assert!(crate::span::element_in_span(&x, core::slice::from_ref(&x)).unwrap());
        assert!(crate::span::element_in_span(&t.zero(), &[]).unwrap());
        let other = alg(G_T);
        assert_eq!(
            crate::span::element_in_span(&other.vertex(v(&other, "v")), &[x]),
            Err(AlgebraError::MixedGraphs)
        );
    }

    #[test]
    fn mixed_graphs_are_refused() {
        let a = alg(G_T);
        let b = alg(G_T);
        assert_eq!(a.mul(&a.zero(), &b.zero()), Err(AlgebraError::MixedGraphs));
    }

    #[test]
    fn parse_errors() {
        let a = alg(G_T);
        assert!(a.parse_element("1/1 * q . v^*").is_err());
        assert!(a.parse_element("1/0 * v . v^*").is_err());
        assert!(a.parse_element("1/1 * e . v^*").is_err());
        assert!(a.parse_element("1/1 * e w").is_err());
    }
}
