//! Skew-symmetric elements `K = {a : a* = −a}` of `L(Γ)`, commutator
//! brackets, and finite evidence about the Lie algebra `[K,K]`.
//!
//! Nothing here decides simplicity of the infinite-dimensional `[K,K]`;
//! the verdict comes from [`crate::classify::classify`]. What is computed is
//! a degree-truncated window: bracket spaces, nonzero witnesses and ideal
//! containment.

use alloc::vec::Vec;

use num_traits::One;

use crate::algebra::{AlgebraError, Element, Monomial, PathAlgebra, Scalar};
use crate::classify::{self, Classification};
use crate::graph::{EdgeId, Graph, VertexSet};
use crate::span::Span;

/// Containment of truncated brackets is checked against the ideal slice of
/// degree `n + slack`.
pub const DEFAULT_SLACK: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("edge is not a fiber")]
    NotAFiber,
    #[error("matrix-unit table mismatch at product ({0}, {1})")]
    TableMismatch(usize, usize),
    #[error("involution does not map to transposition")]
    StarMismatch,
    #[error("graph is not almost simple")]
    NotAlmostSimple,
    #[error("truncation must be at least {min}")]
    TruncationTooSmall { min: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An element with `x* = −x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewElement(Element);

impl SkewElement {
    pub fn new(x: Element) -> Option<Self> {
        (x.star() == -&x).then_some(SkewElement(x))
    }

    pub fn element(&self) -> &Element {
        &self.0
    }

    pub fn into_element(self) -> Element {
        self.0
    }
}

/// `{a} = a − a*`.
pub fn skew_part(a: &Element) -> SkewElement {
    SkewElement(a - &a.star())
}

/// `[a, b] = ab − ba`.
pub fn bracket(alg: &PathAlgebra, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
    Ok(alg.mul(a, b)? - alg.mul(b, a)?)
}

pub fn skew_bracket(alg: &PathAlgebra, a: &SkewElement, b: &SkewElement) -> SkewElement {
    let x = bracket(alg, &a.0, &b.0).expect("skew elements share the algebra");
    SkewElement(x)
}

/// `{m − m* : m normal, deg m ≤ n, m ≠ m*}`, one per pair `{m, m*}`, keyed by
/// the smaller of the two.
pub fn skew_basis(alg: &PathAlgebra, n: usize) -> Vec<SkewElement> {
    alg.basis_monomials(n)
        .into_iter()
        .filter(|m| !m.is_symmetric() && *m < m.star())
        .map(|m| {
            let mut x = alg.zero();
            x.add_scaled(&alg.monomial(m.clone()), &Scalar::one());
            x.add_scaled(&alg.monomial(m.star()), &-Scalar::one());
            SkewElement(x)
        })
        .collect()
}

/// The span of all brackets of degree-`≤ n` skew basis elements.
#[derive(Clone, Debug)]
pub struct BracketSpace {
    pub degree: usize,
    pub basis: Vec<SkewElement>,
}

impl BracketSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn bracket_space(alg: &PathAlgebra, n: usize) -> BracketSpace {
    let skew = skew_basis(alg, n);
    let mut span = Span::new(alg.graph().id());
    for (i, x) in skew.iter().enumerate() {
        for y in &skew[i + 1..] {
            let b = skew_bracket(alg, x, y);
            span.insert(b.element()).expect("same graph");
        }
    }
    BracketSpace {
        degree: n,
        basis: span.reduced_basis().into_iter().map(SkewElement).collect(),
    }
}

/// A pair of skew basis elements with nonzero bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketWitness {
    pub left: SkewElement,
    pub right: SkewElement,
    pub value: SkewElement,
}

/// The first nonzero bracket among skew basis elements of degree `≤ n`,
/// lowest degrees first.
pub fn find_witness(alg: &PathAlgebra, n: usize) -> Option<BracketWitness> {
    let skew = skew_basis(alg, n);
    for (i, x) in skew.iter().enumerate() {
        for y in &skew[i + 1..] {
            let value = skew_bracket(alg, x, y);
            if !value.element().is_zero() {
                return Some(BracketWitness {
                    left: x.clone(),
                    right: y.clone(),
                    value,
                });
            }
        }
    }
    None
}

/// Outcome of checking that `Fe + Fe* + Fr(e) + F(ee*)` multiplies like the
/// matrix units of `M₂(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M2Report {
    pub edge: EdgeId,
    /// Images of `E₁₁, E₁₂, E₂₁, E₂₂`.
    pub units: [Element; 4],
    pub products_checked: usize,
    pub products_matched: usize,
    pub star_compatible: bool,
}

/// `ee* ↦ E₁₁`, `e ↦ E₁₂`, `e* ↦ E₂₁`, `r(e) ↦ E₂₂`, verified on all sixteen
/// products and against transposition.
pub fn fiber_m2_iso(alg: &PathAlgebra, e: EdgeId) -> Result<M2Report, LieError> {
    let g = alg.graph();
    if !classify::is_fiber(g, e) {
        return Err(LieError::NotAFiber);
    }
    let edge = alg.edge(e);
    let ghost = alg.ghost(e);
    let units = [alg.mul(&edge, &ghost)?, edge, ghost, alg.vertex(g.range(e))];
    let idx = |i: usize, j: usize| 2 * i + j;
    let mut matched = 0;
    for (a, b) in (0..4).flat_map(|a| (0..4).map(move |b| (a, b))) {
        let (i, j, k, l) = (a / 2, a % 2, b / 2, b % 2);
        let expected = if j == k {
            units[idx(i, l)].clone()
        } else {
            alg.zero()
        };
        if alg.mul(&units[a], &units[b])? != expected {
            return Err(LieError::TableMismatch(a, b));
        }
        matched += 1;
    }
    let star_compatible = (0..4).all(|a| units[a].star() == units[idx(a % 2, a / 2)]);
    if !star_compatible {
        return Err(LieError::StarMismatch);
    }
    Ok(M2Report {
        edge: e,
        units,
        products_checked: 16,
        products_matched: matched,
        star_compatible,
    })
}

/// Truncated containment `[K,K]ₙ ⊆ I` for the ideal generated by a vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentReport {
    pub degree: usize,
    pub slack: usize,
    pub generators: VertexSet,
    pub checked: usize,
    pub holds: bool,
    pub first_failure: Option<Element>,
}

/// Checks every basis element of `bracket_space(n)` against the ideal slice
/// generated by the hereditary closure of `w` at degree `n + slack`.
pub fn bracket_in_ideal(
    alg: &PathAlgebra,
    w: &VertexSet,
    n: usize,
    slack: usize,
) -> Result<ContainmentReport, LieError> {
    if !classify::classify(alg.graph()).almost_simple {
        return Err(LieError::NotAlmostSimple);
    }
    let generators = classify::hereditary_closure(alg.graph(), w);
    let ideal = alg.ideal_span_space(&generators, n + slack)?;
    let space = bracket_space(alg, n);
    let mut first_failure = None;
    for b in &space.basis {
        if !ideal.contains(b.element())? {
            first_failure = Some(b.element().clone());
            break;
        }
    }
    Ok(ContainmentReport {
        degree: n,
        slack,
        generators,
        checked: space.dimension(),
        holds: first_failure.is_none(),
        first_failure,
    })
}

/// Disjoint union of single vertices, single loops and forks: the family
/// on which `[K,K]` is expected to vanish.
pub fn is_vertex_loop_fork_union(g: &Graph) -> bool {
    g.weak_components().iter().all(|comp| {
        let sub = g.induced_subgraph(comp).expect("nonempty component");
        match (sub.vertex_count(), sub.edge_count()) {
            (1, 0) | (1, 1) => true,
            _ => classify::is_fork(&sub),
        }
    })
}

/// Everything the crate can say about the Lie algebra of a graph at a
/// finite truncation.
#[derive(Clone, Debug)]
pub struct LieEvidence {
    pub classification: Classification,
    pub truncation: usize,
    pub vertex_loop_fork_union: bool,
    /// Dimension of the truncated bracket space, computed for the
    /// vertex/loop/fork family.
    pub bracket_space_dim: Option<usize>,
    pub witness: Option<BracketWitness>,
    pub containment: Option<ContainmentReport>,
}

pub const MIN_EVIDENCE_TRUNCATION: usize = 2;

/// Classification plus finite evidence: vanishing of the truncated bracket
/// space for the vertex/loop/fork family, or a nonzero witness and ideal
/// containment at degree 2 for almost simple graphs.
pub fn lie_evidence(g: &Graph, n: usize) -> Result<LieEvidence, LieError> {
    if n < MIN_EVIDENCE_TRUNCATION {
        return Err(LieError::TruncationTooSmall {
            min: MIN_EVIDENCE_TRUNCATION,
        });
    }
    let alg = PathAlgebra::new(g);
    let classification = classify::classify(g);
    let family = is_vertex_loop_fork_union(g);
    let mut out = LieEvidence {
        truncation: n,
        vertex_loop_fork_union: family,
        bracket_space_dim: None,
        witness: None,
        containment: None,
        classification,
    };
    if out.classification.almost_simple {
        out.witness = find_witness(&alg, n);
        let core = out.classification.core.clone();
        out.containment = Some(bracket_in_ideal(
            &alg,
            &core,
            MIN_EVIDENCE_TRUNCATION,
            DEFAULT_SLACK,
        )?);
    } else if family {
        out.bracket_space_dim = Some(bracket_space(&alg, n).dimension());
    }
    Ok(out)
}

/// Every normal monomial in a skew element appears with its adjoint and the
/// negated coefficient.
pub fn is_skew(x: &Element) -> bool {
    x.terms()
        .all(|(m, c): (&Monomial, &Scalar)| x.coefficient(&m.star()) == -c.clone())
}
