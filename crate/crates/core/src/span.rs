//! Exact linear spans of algebra elements over the rationals.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::One;

use crate::algebra::{AlgebraError, Element, Monomial};
use crate::graph::GraphId;

/// A subspace in echelon form: each stored row is monic in its greatest
/// monomial, and no two rows share that leading monomial.
#[derive(Clone, Debug)]
pub struct Span {
    graph: GraphId,
    rows: BTreeMap<Monomial, Element>,
}

impl Span {
    pub fn new(graph: GraphId) -> Self {
        Span {
            graph,
            rows: BTreeMap::new(),
        }
    }

    pub fn from_elements<'a, I>(graph: GraphId, elements: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        let mut span = Span::new(graph);
        for x in elements {
            span.insert(x)?;
        }
        Ok(span)
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    fn check(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.graph() != self.graph {
            return Err(AlgebraError::MixedGraphs);
        }
        Ok(())
    }

    /// Reduces `x` against the rows until its leading monomial is not a
    /// pivot. Returns zero exactly when `x` lies in the span.
    fn reduce(&self, x: &Element) -> Element {
        let mut x = x.clone();
        while let Some((lead, coeff)) = x.leading_term() {
            let Some(row) = self.rows.get(&lead) else {
                break;
            };
            x.add_scaled(row, &-coeff);
        }
        x
    }

    /// Adds `x` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, x: &Element) -> Result<bool, AlgebraError> {
        self.check(x)?;
        let mut r = self.reduce(x);
        let Some((lead, coeff)) = r.leading_term() else {
            return Ok(false);
        };
        if !coeff.is_one() {
            r.scale_in_place(&coeff.recip());
        }
        self.rows.insert(lead, r);
        Ok(true)
    }

    pub fn contains(&self, x: &Element) -> Result<bool, AlgebraError> {
        self.check(x)?;
        Ok(self.reduce(x).is_zero())
    }

    /// The reduced row echelon basis: every pivot monomial appears in exactly
    /// one basis element. Ordered by increasing pivot.
    pub fn reduced_basis(&self) -> Vec<Element> {
        let mut done: BTreeMap<Monomial, Element> = BTreeMap::new();
        // Rows in increasing pivot order; a row only involves its own pivot
        // and smaller monomials, so clearing against earlier finished rows
        // suffices.
        for (pivot, row) in &self.rows {
            let mut r = row.clone();
            let others: Vec<(Monomial, _)> = r
                .terms()
                .filter(|(m, _)| *m != pivot && done.contains_key(*m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            for (m, c) in others {
                r.add_scaled(&done[&m], &-c);
            }
            debug_assert!(r.coefficient(pivot).is_one());
            done.insert(pivot.clone(), r);
        }
        done.into_values().collect()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Monomial> {
        self.rows.keys()
    }
}

/// Exact membership test by Gaussian elimination.
pub fn element_in_span(x: &Element, basis: &[Element]) -> Result<bool, AlgebraError> {
    let span = Span::from_elements(x.graph(), basis)?;
    span.contains(x)
}
