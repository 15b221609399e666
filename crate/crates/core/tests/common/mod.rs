//! Brute-force oracles and generators shared by the integration tests.
//! Everything here uses only the raw graph accessors, never the classifier.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use lpakit_core::algebra::{scalar, Element, Monomial, PathAlgebra, Scalar};
use lpakit_core::graph::{EdgeId, Graph, GraphBuilder, Path, VertexId, VertexSet};
use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::Rng;

pub type Bits = u32;

pub fn graph_from_pairs(n: usize, edges: &[(usize, usize)]) -> Graph {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.vertex(&format!("v{i}")).unwrap();
    }
    for (k, &(s, r)) in edges.iter().enumerate() {
        b.edge(
            &format!("e{k}"),
            &format!("v{}", s % n),
            &format!("v{}", r % n),
        )
        .unwrap();
    }
    b.build().unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> Graph {
    let n = rng.random_range(1..=max_vertices);
    let m = rng.random_range(0..=2 * n);
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
        .collect();
    graph_from_pairs(n, &edges)
}

pub fn vid(g: &Graph, i: usize) -> VertexId {
    g.vertices().nth(i).unwrap()
}

pub fn to_bits(set: &VertexSet) -> Bits {
    set.iter().fold(0, |acc, v| acc | 1 << v.index())
}

pub fn from_bits(g: &Graph, bits: Bits) -> VertexSet {
    g.vertices()
        .filter(|v| bits >> v.index() & 1 == 1)
        .collect()
}

fn bit(v: VertexId) -> Bits {
    1 << v.index()
}

/// Every edge leaving the set lands in it.
pub fn brute_hereditary(g: &Graph, s: Bits) -> bool {
    g.edges()
        .all(|e| s & bit(g.source(e)) == 0 || s & bit(g.range(e)) != 0)
}

/// Every non-sink whose out-ranges all lie in the set is in it.
pub fn brute_saturated(g: &Graph, s: Bits) -> bool {
    g.vertices().all(|v| {
        let outs = g.out_edges(v);
        outs.is_empty() || s & bit(v) != 0 || outs.iter().any(|&e| s & bit(g.range(e)) == 0)
    })
}

pub fn brute_hs_subsets(g: &Graph) -> Vec<Bits> {
    let n = g.vertex_count();
    (1..(1 << n) as Bits)
        .filter(|&s| brute_hereditary(g, s) && brute_saturated(g, s))
        .collect()
}

/// The unique minimal HS superset, checked to be unique by comparing all
/// minimal candidates.
pub fn brute_hs_closure(g: &Graph, x: Bits) -> Bits {
    let full: Bits = (1 << g.vertex_count()) - 1;
    let supersets: Vec<Bits> = (x..=full)
        .filter(|&s| s & x == x && brute_hereditary(g, s) && brute_saturated(g, s))
        .collect();
    let minimal: Vec<Bits> = supersets
        .iter()
        .copied()
        .filter(|&s| !supersets.iter().any(|&t| t != s && t & s == t))
        .collect();
    assert_eq!(minimal.len(), 1, "HS supersets have a unique minimum");
    minimal[0]
}

/// All simple cycles as edge lists, each found once (starting at its least
/// vertex, by DFS over edges).
pub fn brute_cycles(g: &Graph) -> Vec<Vec<EdgeId>> {
    fn dfs(
        g: &Graph,
        start: VertexId,
        at: VertexId,
        seen: Bits,
        path: &mut Vec<EdgeId>,
        out: &mut Vec<Vec<EdgeId>>,
    ) {
        for &e in g.out_edges(at) {
            let r = g.range(e);
            if r == start {
                path.push(e);
                out.push(path.clone());
                path.pop();
            } else if r > start && seen & bit(r) == 0 {
                path.push(e);
                dfs(g, start, r, seen | bit(r), path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in g.vertices() {
        dfs(g, v, v, bit(v), &mut Vec::new(), &mut out);
    }
    out
}

pub fn cycle_has_exit(g: &Graph, cycle: &[EdgeId]) -> bool {
    cycle.iter().any(|&e| g.out_edges(g.source(e)).len() > 1)
}

pub fn brute_is_simple(g: &Graph) -> bool {
    let full: Bits = (1 << g.vertex_count()) - 1;
    brute_hs_subsets(g) == [full] && brute_cycles(g).iter().all(|c| cycle_has_exit(g, c))
}

pub fn brute_is_simple_on(g: &Graph, s: Bits) -> bool {
    let keep = from_bits(g, s);
    brute_is_simple(&g.induced_subgraph(&keep).unwrap())
}

/// Source, sink, and the only edge into its range.
pub fn fiber_oracle(g: &Graph, e: EdgeId) -> bool {
    let (s, r) = (g.source(e), g.range(e));
    g.in_edges(s).is_empty() && g.out_edges(r).is_empty() && g.in_edges(r) == [e]
}

/// Balloon over `w`: a single loop `C` at `v`, some edge into `w`, every other
/// out-edge into `w`, and `C` the only edge into `v`.
pub fn balloon_oracle(g: &Graph, v: VertexId, w: Bits) -> bool {
    if w & bit(v) != 0 {
        return false;
    }
    let loops: Vec<EdgeId> = g
        .out_edges(v)
        .iter()
        .copied()
        .filter(|&e| g.range(e) == v)
        .collect();
    let [c] = loops[..] else { return false };
    let others: Vec<EdgeId> = g.out_edges(v).iter().copied().filter(|&e| e != c).collect();
    !others.is_empty() && others.iter().all(|&e| w & bit(g.range(e)) != 0) && g.in_edges(v) == [c]
}

/// Almost simplicity by exhaustive search over cores, with fiber units
/// detached and a bare single vertex not counted.
pub fn almost_simple_oracle(g: &Graph) -> bool {
    let mut detached: Bits = 0;
    for e in g.edges() {
        if fiber_oracle(g, e) && g.out_edges(g.source(e)).len() == 1 {
            detached |= bit(g.source(e)) | bit(g.range(e));
        }
    }
    let full: Bits = (1 << g.vertex_count()) - 1;
    let v1 = full & !detached;
    if v1 == 0 {
        return false;
    }
    let mut sub = v1;
    while sub != 0 {
        let v2 = sub;
        sub = (sub - 1) & v1;
        let balloons = v1 & !v2;
        let trivial = balloons == 0 && v2.count_ones() == 1 && {
            let v = from_bits(g, v2).into_iter().next().unwrap();
            g.out_edges(v).is_empty()
        };
        if trivial {
            continue;
        }
        let all_balloons = from_bits(g, balloons)
            .into_iter()
            .all(|v| balloon_oracle(g, v, v2));
        if all_balloons && brute_is_simple_on(g, v2) {
            return true;
        }
    }
    false
}

/// Every disjoint union of single vertices, single loops and forks (no
/// parallel edges) with at most `max_vertices` vertices, one per multiset of
/// components.
pub fn vanishing_family(max_vertices: usize) -> Vec<Graph> {
    // Component kinds: 0 = vertex, 1 = loop, k + 1 = fork with k prongs.
    fn rec(budget: usize, min_kind: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !acc.is_empty() {
            out.push(acc.clone());
        }
        for kind in min_kind..=budget.max(1) {
            let size = if kind < 2 { 1 } else { kind };
            if size > budget {
                break;
            }
            acc.push(kind);
            rec(budget - size, kind, acc, out);
            acc.pop();
        }
    }
    let mut shapes = Vec::new();
    rec(max_vertices, 0, &mut Vec::new(), &mut shapes);
    shapes
        .into_iter()
        .map(|kinds| build_union(&kinds))
        .collect()
}

fn build_union(kinds: &[usize]) -> Graph {
    let mut b = GraphBuilder::new();
    for (i, &kind) in kinds.iter().enumerate() {
        let root = format!("c{i}");
        b.vertex(&root).unwrap();
        match kind {
            0 => {}
            1 => {
                b.edge(&format!("l{i}"), &root, &root).unwrap();
            }
            k => {
                for j in 1..k {
                    let leaf = format!("c{i}w{j}");
                    b.vertex(&leaf).unwrap();
                    b.edge(&format!("c{i}e{j}"), &root, &leaf).unwrap();
                }
            }
        }
    }
    b.build().unwrap()
}

/// A random path ending at `end`, built backwards.
pub fn random_path_into<R: Rng>(g: &Graph, rng: &mut R, end: VertexId, len: usize) -> Path {
    let mut rev = Vec::new();
    let mut at = end;
    for _ in 0..len {
        let Some(&e) = g.in_edges(at).choose(rng) else {
            break;
        };
        rev.push(e);
        at = g.source(e);
    }
    if rev.is_empty() {
        return Path::vertex(end);
    }
    rev.reverse();
    Path::from_edges(g, &rev).unwrap()
}

/// `pq*` with `|p|, |q| ≤ max_len`, possibly not in normal form.
pub fn random_raw_monomial<R: Rng>(g: &Graph, rng: &mut R, max_len: usize) -> Monomial {
    let end = vid(g, rng.random_range(0..g.vertex_count()));
    let (lp, lq) = (rng.random_range(0..=max_len), rng.random_range(0..=max_len));
    let p = random_path_into(g, rng, end, lp);
    let q = random_path_into(g, rng, end, lq);
    Monomial::new(p, q).unwrap()
}

pub fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let n: i64 = rng.random_range(-4..=4);
    let d: i64 = rng.random_range(1..=3);
    Scalar::new(n.into(), d.into())
}

/// A random normal-form element with up to `terms` terms drawn from
/// `basis`.
pub fn random_element<R: Rng>(
    alg: &PathAlgebra,
    rng: &mut R,
    basis: &[Monomial],
    terms: usize,
) -> Element {
    let mut x = alg.zero();
    for _ in 0..rng.random_range(1..=terms) {
        let m = basis.choose(rng).unwrap().clone();
        x.add_scaled(&alg.monomial(m), &random_scalar(rng));
    }
    x
}

/// Least-named out-edge.
pub fn special_edge(g: &Graph, v: VertexId) -> Option<EdgeId> {
    g.out_edges(v)
        .iter()
        .copied()
        .min_by(|&a, &b| g.edge_name(a).cmp(g.edge_name(b)))
}

/// Rewrites raw terms to normal form, choosing the next reducible monomial
/// at random until none is left.
pub fn rewrite_randomly<R: Rng>(
    g: &Graph,
    rng: &mut R,
    raw: &[(Scalar, Monomial)],
) -> BTreeMap<Monomial, Scalar> {
    let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    let add = |terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar| {
        let slot = terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            terms.remove(&m);
        }
    };
    for (c, m) in raw {
        add(&mut terms, m.clone(), c.clone());
    }
    loop {
        let reducible: Vec<Monomial> = terms
            .keys()
            .filter(|m| reducible_at(g, m).is_some())
            .cloned()
            .collect();
        let Some(m) = reducible.choose(rng).cloned() else {
            return terms;
        };
        let c = terms.remove(&m).unwrap();
        let f = reducible_at(g, &m).unwrap();
        let p1 = Path::from_edges(g, &m.p().edges()[..m.p().len() - 1])
            .unwrap_or_else(|| Path::vertex(g.source(f)));
        let q1 = Path::from_edges(g, &m.q().edges()[..m.q().len() - 1])
            .unwrap_or_else(|| Path::vertex(g.source(f)));
        add(
            &mut terms,
            Monomial::new(p1.clone(), q1.clone()).unwrap(),
            c.clone(),
        );
        for &e in g.out_edges(g.source(f)) {
            if e != f {
                let mut pe = p1.clone();
                let mut qe = q1.clone();
                assert!(pe.push(g, e) && qe.push(g, e));
                add(&mut terms, Monomial::new(pe, qe).unwrap(), -c.clone());
            }
        }
    }
}

fn reducible_at(g: &Graph, m: &Monomial) -> Option<EdgeId> {
    let (a, b) = (m.p().last_edge()?, m.q().last_edge()?);
    (a == b && special_edge(g, g.source(a)) == Some(a)).then_some(a)
}

pub fn element_terms(x: &Element) -> BTreeMap<Monomial, Scalar> {
    x.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

pub fn int(n: i64) -> Scalar {
    scalar(n)
}

pub fn names(g: &Graph, set: &VertexSet) -> BTreeSet<String> {
    set.iter().map(|&v| g.vertex_name(v).to_string()).collect()
}
