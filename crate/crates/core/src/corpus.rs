//! Named graph families and a small curated corpus.

use alloc::format;
use alloc::vec::Vec;

use crate::graph::{parse_graph, Graph, GraphBuilder};

/// Curated graphs shipped with the crate, by file stem.
pub const CURATED: &[(&str, &str)] = &[
    ("balloon_s2", include_str!("../corpus/balloon_s2.graph")),
    (
        "balloon_tower",
        include_str!("../corpus/balloon_tower.graph"),
    ),
    ("chain", include_str!("../corpus/chain.graph")),
    ("converging", include_str!("../corpus/converging.graph")),
    ("cycle3", include_str!("../corpus/cycle3.graph")),
    (
        "disjoint_s2_toeplitz",
        include_str!("../corpus/disjoint_s2_toeplitz.graph"),
    ),
    ("fiber", include_str!("../corpus/fiber.graph")),
    ("fiber_s2", include_str!("../corpus/fiber_s2.graph")),
    ("fork2", include_str!("../corpus/fork2.graph")),
    ("loop", include_str!("../corpus/loop.graph")),
    (
        "loop_and_fork",
        include_str!("../corpus/loop_and_fork.graph"),
    ),
    (
        "loop_two_exits",
        include_str!("../corpus/loop_two_exits.graph"),
    ),
    ("rose2", include_str!("../corpus/rose2.graph")),
    ("s2", include_str!("../corpus/s2.graph")),
    (
        "single_vertex",
        include_str!("../corpus/single_vertex.graph"),
    ),
    (
        "three_sources",
        include_str!("../corpus/three_sources.graph"),
    ),
    ("toeplitz", include_str!("../corpus/toeplitz.graph")),
    ("two_balloons", include_str!("../corpus/two_balloons.graph")),
];

pub fn curated() -> Vec<(&'static str, Graph)> {
    CURATED
        .iter()
        .map(|&(name, text)| (name, parse_graph(text).expect("curated graphs parse")))
        .collect()
}

pub fn curated_graph(name: &str) -> Option<Graph> {
    CURATED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_graph(text).expect("curated graphs parse"))
}

/// `u → w1, …, u → wn` with edges `e1, …, en`.
pub fn fork(n: usize) -> Graph {
    assert!(n >= 1);
    let mut b = GraphBuilder::new();
    b.vertex("u").unwrap();
    for i in 1..=n {
        b.vertex(&format!("w{i}")).unwrap();
        b.edge(&format!("e{i}"), "u", &format!("w{i}")).unwrap();
    }
    b.build().unwrap()
}

/// `v1 → v2 → ⋯ → vd → v1` with `ei : vi → v(i+1)`.
pub fn cycle(d: usize) -> Graph {
    assert!(d >= 1);
    let mut b = GraphBuilder::new();
    for i in 1..=d {
        b.vertex(&format!("v{i}")).unwrap();
    }
    for i in 1..=d {
        let next = i % d + 1;
        b.edge(&format!("e{i}"), &format!("v{i}"), &format!("v{next}"))
            .unwrap();
    }
    b.build().unwrap()
}

/// One vertex with `k` loops `c1, …, ck`.
pub fn rose(k: usize) -> Graph {
    let mut b = GraphBuilder::new();
    b.vertex("v").unwrap();
    for i in 1..=k {
        b.edge(&format!("c{i}"), "v", "v").unwrap();
    }
    b.build().unwrap()
}

/// Disjoint union; names are prefixed with `g{i}_` to keep them apart.
pub fn disjoint_union(parts: &[&Graph]) -> Graph {
    let mut b = GraphBuilder::new();
    for (i, g) in parts.iter().enumerate() {
        for v in g.vertices() {
            b.vertex(&format!("g{i}_{}", g.vertex_name(v))).unwrap();
        }
        for e in g.edges() {
            let s = format!("g{i}_{}", g.vertex_name(g.source(e)));
            let r = format!("g{i}_{}", g.vertex_name(g.range(e)));
            b.edge(&format!("g{i}_{}", g.edge_name(e)), &s, &r).unwrap();
        }
    }
    b.build().expect("at least one part")
}
