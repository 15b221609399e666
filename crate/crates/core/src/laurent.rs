//! Laurent polynomials over the rationals and matrices over them, with the
//! involution `(f_ij(t))* = (f_ji(t⁻¹))`.
//!
//! `L(cycle_d) ≅ M_d(F[t,t⁻¹])` is realised by [`cycle_iso`] and checked by
//! [`verify_cycle_iso`].

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::{Element, Monomial, PathAlgebra, Scalar};
use crate::corpus;
use crate::graph::{EdgeId, Path};

pub const MAX_CYCLE_CHECK: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("cycle length must be between 1 and {max}, got {d}")]
    InvalidDimension { d: usize, max: usize },
    #[error("relation failed: {0}")]
    RelationFailure(String),
}

/// `Σ cₖ tᵏ` with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Scalar::one(), 0)
    }

    pub fn t() -> Self {
        Self::monomial(Scalar::one(), 1)
    }

    pub fn monomial(c: Scalar, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// `(1 − t)ⁿ`.
    pub fn one_minus_t_pow(n: u32) -> Self {
        (Self::one() - Self::t()).pow(n)
    }

    fn add_term(&mut self, k: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coefficient(&self, k: i64) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max − min` exponent; zero for a monomial.
    pub fn support_width(&self) -> Option<u64> {
        Some(self.max_exponent()?.abs_diff(self.min_exponent()?))
    }

    /// `f(t) ↦ f(t⁻¹)`.
    pub fn substitute_inverse(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, c)| (-k, c.clone())).collect(),
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, a)| (k, a * c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval_at_1(&self) -> Scalar {
        self.terms.values().fold(Scalar::zero(), |acc, c| acc + c)
    }

    /// Multiplicity of `t = 1` as a root; `None` for the zero polynomial.
    pub fn vanish_order_at_1(&self) -> Option<u32> {
        let lo = self.min_exponent()?;
        let hi = self.max_exponent()?;
        // Dense coefficients of t^{-lo}·f, lowest degree first.
        let mut coeffs: Vec<Scalar> = (lo..=hi).map(|k| self.coefficient(k)).collect();
        let mut order = 0;
        loop {
            let at_one = coeffs.iter().fold(Scalar::zero(), |acc, c| acc + c);
            if !at_one.is_zero() {
                return Some(order);
            }
            // Divide by (t − 1): Horner from the top.
            let n = coeffs.len();
            let mut quotient = vec![Scalar::zero(); n - 1];
            let mut carry = Scalar::zero();
            for i in (1..n).rev() {
                carry += &coeffs[i];
                quotient[i - 1] = carry.clone();
            }
            coeffs = quotient;
            order += 1;
        }
    }

    /// Membership in `Jₙ`, the ideal generated by `(1 − t)ⁿ`.
    pub fn in_jn(&self, n: u32) -> bool {
        self.vanish_order_at_1().is_none_or(|k| k >= n)
    }
}

/// The ideal `Jₙ = (1 − t)ⁿ F[t,t⁻¹]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JnIdeal {
    pub order: u32,
}

impl JnIdeal {
    pub fn contains(&self, f: &LaurentPoly) -> bool {
        f.in_jn(self.order)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*t^{k}")?;
        }
        Ok(())
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &-rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

macro_rules! by_value {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    )*};
}
by_value!(LaurentPoly, Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// A `d × d` matrix over `F[t,t⁻¹]`, row-major, indices from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    d: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(d: usize) -> Self {
        assert!(d >= 1, "matrix dimension must be positive");
        LaurentMatrix {
            d,
            entries: vec![LaurentPoly::zero(); d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    /// `f · E_ij`.
    pub fn unit(d: usize, i: usize, j: usize, f: LaurentPoly) -> Self {
        let mut m = Self::zero(d);
        m.set(i, j, f);
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let d = rows.len();
        assert!(
            d >= 1 && rows.iter().all(|r| r.len() == d),
            "matrix must be square"
        );
        LaurentMatrix {
            d,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: LaurentPoly) {
        self.entries[i * self.d + j] = f;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.d).all(|i| (0..self.d).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<LaurentPoly> {
        (0..self.d).map(|i| self.get(i, i).clone()).collect()
    }

    /// Transpose with `t ↦ t⁻¹` entrywise.
    pub fn star(&self) -> Self {
        let mut m = Self::zero(self.d);
        for i in 0..self.d {
            for j in 0..self.d {
                m.set(j, i, self.get(i, j).substitute_inverse());
            }
        }
        m
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        LaurentMatrix {
            d: self.d,
            entries: self.entries.iter().map(|f| f.scaled(c)).collect(),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

impl Add<&LaurentMatrix> for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn add(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.d, rhs.d, "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        LaurentMatrix { d: self.d, entries }
    }
}

impl Sub<&LaurentMatrix> for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn sub(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.d, rhs.d, "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        LaurentMatrix { d: self.d, entries }
    }
}

impl Mul<&LaurentMatrix> for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn mul(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.d, rhs.d, "dimension mismatch");
        let d = self.d;
        let mut out = LaurentMatrix::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let sum = out.get(i, j) + &(a * b);
                        out.set(i, j, sum);
                    }
                }
            }
        }
        out
    }
}

impl Neg for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn neg(self) -> LaurentMatrix {
        LaurentMatrix {
            d: self.d,
            entries: self.entries.iter().map(|f| -f).collect(),
        }
    }
}

by_value!(LaurentMatrix, Add add, Sub sub, Mul mul);

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.d {
            f.write_str("[")?;
            for j in 0..self.d {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// `[[0, f], [−f(t⁻¹), 0]]`, a skew element of `M₂(F[t,t⁻¹])`.
pub fn skew_pair_matrix(f: &LaurentPoly) -> LaurentMatrix {
    LaurentMatrix::from_rows(vec![
        vec![LaurentPoly::zero(), f.clone()],
        vec![-f.substitute_inverse(), LaurentPoly::zero()],
    ])
}

/// Diagonal of the bracket of two skew pair matrices:
/// `(g(t)f(t⁻¹) − f(t)g(t⁻¹), f(t)g(t⁻¹) − f(t⁻¹)g(t))`.
pub fn skew_commutator_diag(f: &LaurentPoly, g: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let (fi, gi) = (f.substitute_inverse(), g.substitute_inverse());
    (&(g * &fi) - &(f * &gi), &(f * &gi) - &(&fi * g))
}

/// Images of the generators of `L(cycle(d))` in `M_d(F[t,t⁻¹])`:
/// `vᵢ ↦ Eᵢᵢ`, `eᵢ ↦ E_{i,i+1}` for `i < d`, `e_d ↦ t·E_{d,1}`.
#[derive(Clone, Debug)]
pub struct CycleIso {
    pub algebra: PathAlgebra,
    pub vertex_images: Vec<LaurentMatrix>,
    pub edge_images: Vec<LaurentMatrix>,
}

pub fn cycle_iso(d: usize) -> Result<CycleIso, LaurentError> {
    if d == 0 {
        return Err(LaurentError::InvalidDimension { d, max: usize::MAX });
    }
    let g = corpus::cycle(d);
    let vertex_images = (0..d)
        .map(|i| LaurentMatrix::unit(d, i, i, LaurentPoly::one()))
        .collect();
    let edge_images = (0..d)
        .map(|i| {
            if i + 1 < d {
                LaurentMatrix::unit(d, i, i + 1, LaurentPoly::one())
            } else {
                LaurentMatrix::unit(d, i, 0, LaurentPoly::t())
            }
        })
        .collect();
    Ok(CycleIso {
        algebra: PathAlgebra::new(&g),
        vertex_images,
        edge_images,
    })
}

impl CycleIso {
    pub fn dimension(&self) -> usize {
        self.vertex_images.len()
    }

    pub fn edge_image(&self, e: EdgeId) -> &LaurentMatrix {
        &self.edge_images[e.index()]
    }

    pub fn path_image(&self, p: &Path) -> LaurentMatrix {
        p.edges()
            .iter()
            .fold(self.vertex_images[p.source().index()].clone(), |acc, &e| {
                &acc * self.edge_image(e)
            })
    }

    pub fn monomial_image(&self, m: &Monomial) -> LaurentMatrix {
        &self.path_image(m.p()) * &self.path_image(m.q()).star()
    }

    pub fn image(&self, x: &Element) -> LaurentMatrix {
        x.terms()
            .fold(LaurentMatrix::zero(self.dimension()), |acc, (m, c)| {
                &acc + &self.monomial_image(m).scaled(c)
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleIsoReport {
    pub d: usize,
    pub relations_checked: usize,
    pub involution_checked: usize,
    pub products_checked: usize,
    /// Distinct normal monomials of degree ≤ 3 have distinct images
    /// `c·tᵏ·E_ij`.
    pub images_independent: bool,
}

pub const CROSS_CHECK_DEGREE: usize = 3;

/// Checks relations (1)–(4) of `L(cycle(d))` on the images, compatibility
/// with the involutions, and all products of normal monomials of degree
/// `≤ 3`.
pub fn verify_cycle_iso(d: usize) -> Result<CycleIsoReport, LaurentError> {
    if !(1..=MAX_CYCLE_CHECK).contains(&d) {
        return Err(LaurentError::InvalidDimension {
            d,
            max: MAX_CYCLE_CHECK,
        });
    }
    let iso = cycle_iso(d)?;
    let g = iso.algebra.graph();
    let fail = |what: String| Err(LaurentError::RelationFailure(what));
    let mut relations = 0;

    // (1) vᵢvⱼ = δᵢⱼvᵢ.
    for v in g.vertices() {
        for w in g.vertices() {
            let lhs = &iso.vertex_images[v.index()] * &iso.vertex_images[w.index()];
            let rhs = if v == w {
                iso.vertex_images[v.index()].clone()
            } else {
                LaurentMatrix::zero(d)
            };
            if lhs != rhs {
                return fail(alloc::format!(
                    "vertex product {} {}",
                    g.vertex_name(v),
                    g.vertex_name(w)
                ));
            }
            relations += 1;
        }
    }
    for e in g.edges() {
        let x = iso.edge_image(e);
        let xs = x.star();
        let s = &iso.vertex_images[g.source(e).index()];
        let r = &iso.vertex_images[g.range(e).index()];
        // (2) s(e)e = e = e r(e), and the ghost version.
        if &(s * x) != x || &(x * r) != x || (r * &xs) != xs || (&xs * s) != xs {
            return fail(alloc::format!("source/range of {}", g.edge_name(e)));
        }
        relations += 2;
        // (3) e*f = δ r(e).
        for f in g.edges() {
            let lhs = &xs * iso.edge_image(f);
            let rhs = if e == f {
                r.clone()
            } else {
                LaurentMatrix::zero(d)
            };
            if lhs != rhs {
                return fail(alloc::format!("{}* {}", g.edge_name(e), g.edge_name(f)));
            }
            relations += 1;
        }
    }
    // (4) v = Σ_{s(e)=v} ee*.
    for v in g.vertices() {
        let sum = g
            .out_edges(v)
            .iter()
            .fold(LaurentMatrix::zero(d), |acc, &e| {
                &acc + &(iso.edge_image(e) * &iso.edge_image(e).star())
            });
        if sum != iso.vertex_images[v.index()] {
            return fail(alloc::format!("CK2 at {}", g.vertex_name(v)));
        }
        relations += 1;
    }

    let basis = iso.algebra.basis_monomials(CROSS_CHECK_DEGREE);
    let images: Vec<LaurentMatrix> = basis.iter().map(|m| iso.monomial_image(m)).collect();
    let mut involution = 0;
    for (m, img) in basis.iter().zip(&images) {
        if iso.monomial_image(&m.star()) != img.star() {
            return fail(alloc::format!("involution on {}", m.display(g)));
        }
        involution += 1;
    }
    let mut products = 0;
    for (a, ia) in basis.iter().zip(&images) {
        for (b, ib) in basis.iter().zip(&images) {
            let prod = iso.algebra.monomial_mul(a, b);
            if iso.image(&prod) != ia * ib {
                return fail(alloc::format!(
                    "product {} · {}",
                    a.display(g),
                    b.display(g)
                ));
            }
            products += 1;
        }
    }
    let images_independent = {
        let mut seen = BTreeMap::new();
        images.iter().all(|img| match single_entry(img) {
            Some(key) => seen.insert(key, ()).is_none(),
            None => false,
        })
    };
    if !images_independent {
        return fail("normal monomials have dependent images".into());
    }
    Ok(CycleIsoReport {
        d,
        relations_checked: relations,
        involution_checked: involution,
        products_checked: products,
        images_independent,
    })
}

/// `(i, j, k)` when the matrix is `c·tᵏ·E_ij` with `c ≠ 0`.
fn single_entry(m: &LaurentMatrix) -> Option<(usize, usize, i64)> {
    let d = m.dimension();
    let mut found = None;
    for i in 0..d {
        for j in 0..d {
            let f = m.get(i, j);
            if f.is_zero() {
                continue;
            }
            let mut terms = f.terms();
            let (k, _) = terms.next()?;
            if terms.next().is_some() || found.is_some() {
                return None;
            }
            found = Some((i, j, k));
        }
    }
    found
}
