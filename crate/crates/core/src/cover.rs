//! Finite open interval covers of the function range and their nerves.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::simplicial::{ScalarField, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoverError {
    #[error("invalid interval ({lo}, {hi}): need finite lo < hi")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("nerve is not one-dimensional: elements {0}, {1}, {2} share a common point")]
    NerveNotOneDimensional(usize, usize, usize),
    #[error("invalid cover parameters: {0}")]
    InvalidParams(String),
    #[error("cover does not contain function value {value} of vertex {vertex}")]
    RangeNotCovered { vertex: usize, value: f64 },
}

/// A bounded open interval `(lo, hi)` of the real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpenInterval {
    pub lo: f64,
    pub hi: f64,
}

impl OpenInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, CoverError> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(OpenInterval { lo, hi })
        } else {
            Err(CoverError::InvalidInterval { lo, hi })
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    /// Closed containment test for `[a, b]`.
    pub fn contains_span(&self, a: f64, b: f64) -> bool {
        self.lo < a && b < self.hi
    }

    /// Open sets overlap iff they share an interior point; touching ends do not count.
    pub fn overlaps(&self, other: &OpenInterval) -> bool {
        self.lo.max(other.lo) < self.hi.min(other.hi)
    }

    pub fn intersection(&self, other: &OpenInterval) -> Option<OpenInterval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo < hi).then_some(OpenInterval { lo, hi })
    }

    pub fn is_subset_of(&self, other: &OpenInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

impl fmt::Display for OpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// `V^eps = {y : d(y, V) < eps}`
pub fn thicken(v: &OpenInterval, eps: f64) -> OpenInterval {
    assert!(eps >= 0.0, "negative thickening");
    OpenInterval {
        lo: v.lo - eps,
        hi: v.hi + eps,
    }
}

/// Exact value of a finite float.
pub(crate) fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Ordered list of open intervals indexed `0..n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cover {
    elements: Vec<OpenInterval>,
}

impl Cover {
    pub fn new(elements: Vec<OpenInterval>) -> Result<Self, CoverError> {
        if elements.is_empty() {
            return Err(CoverError::InvalidParams(
                "a cover needs at least one element".into(),
            ));
        }
        for e in &elements {
            OpenInterval::new(e.lo, e.hi)?;
        }
        Ok(Cover { elements })
    }

    pub fn elements(&self) -> &[OpenInterval] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &OpenInterval {
        &self.elements[i]
    }

    /// Sup over elements of their diameter.
    pub fn resolution(&self) -> f64 {
        self.elements
            .iter()
            .map(OpenInterval::length)
            .fold(0.0, f64::max)
    }

    /// Pairs `(i, j)` where element `i` sits inside element `j`.
    pub fn nested_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                if i != j && a.is_subset_of(b) && !(b.is_subset_of(a) && j < i) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Checks `[min f, max f]` is inside the union, reporting the first uncovered vertex.
    pub fn check_covers(&self, f: &ScalarField) -> Result<(), CoverError> {
        for (vertex, &value) in f.values().iter().enumerate() {
            if !self.elements.iter().any(|e| e.contains(value)) {
                return Err(CoverError::RangeNotCovered { vertex, value });
            }
        }
        Ok(())
    }
}

/// Mapper-style cover of `(lo, hi)` by `n` equal open intervals.
///
/// Consecutive elements overlap in a fraction `overlap` of their length. The
/// outer ends are padded by 1% of the unpadded element length so that `lo` and
/// `hi` lie strictly inside; lengths are computed on the padded range, so all
/// elements have the same length.
pub fn uniform_cover(n: usize, overlap: f64, lo: f64, hi: f64) -> Result<Cover, CoverError> {
    if n == 0 {
        return Err(CoverError::InvalidParams("n must be at least 1".into()));
    }
    if !(overlap > 0.0 && overlap < 1.0) {
        return Err(CoverError::InvalidParams(format!(
            "overlap {overlap} not in (0, 1)"
        )));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CoverError::InvalidParams(format!(
            "range ({lo}, {hi}) is empty"
        )));
    }
    let denom = n as f64 - (n as f64 - 1.0) * overlap;
    let pad = 0.01 * (hi - lo) / denom;
    let (lo, hi) = (lo - pad, hi + pad);
    let length = (hi - lo) / denom;
    let step = length * (1.0 - overlap);
    let elements = (0..n)
        .map(|i| {
            let a = lo + i as f64 * step;
            let b = if i + 1 == n { hi } else { a + length };
            OpenInterval { lo: a, hi: b }
        })
        .collect();
    Cover::new(elements)
}

/// Uniform covers with `n, 2n, 4n, ...` elements.
pub fn refine(
    n: usize,
    overlap: f64,
    lo: f64,
    hi: f64,
    levels: usize,
) -> Result<Vec<Cover>, CoverError> {
    if levels == 0 {
        return Err(CoverError::InvalidParams(
            "levels must be at least 1".into(),
        ));
    }
    (0..levels)
        .map(|k| {
            let size = n
                .checked_mul(1usize << k)
                .ok_or_else(|| CoverError::InvalidParams("cover size overflow".into()))?;
            uniform_cover(size, overlap, lo, hi)
        })
        .collect()
}

/// One-dimensional nerve: a vertex per element, an edge per overlapping pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NerveComplex {
    vertex_count: usize,
    /// Sorted pairs `(i, j)` with `i < j`.
    edges: Vec<(usize, usize)>,
    edge_intervals: Vec<OpenInterval>,
}

impl NerveComplex {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `U_i ∩ U_j` for edge index `e`.
    pub fn edge_interval(&self, e: usize) -> &OpenInterval {
        &self.edge_intervals[e]
    }

    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.edges.binary_search(&key).ok()
    }

    /// `σ ≤ τ` in the face poset. Simplices are encoded as sorted vertex lists.
    pub fn is_face(&self, sigma: &[usize], tau: &[usize]) -> bool {
        sigma.iter().all(|v| tau.contains(v))
    }

    pub fn full(&self) -> SubNerve {
        SubNerve {
            vertices: (0..self.vertex_count).collect(),
            edges: (0..self.edges.len()).collect(),
        }
    }
}

pub fn nerve(c: &Cover) -> Result<NerveComplex, CoverError> {
    let n = c.len();
    let mut edges = Vec::new();
    let mut edge_intervals = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if let Some(iv) = c.element(i).intersection(c.element(j)) {
                edges.push((i, j));
                edge_intervals.push(iv);
            }
        }
    }
    // Intervals have the Helly property: a triple meets iff some pairwise
    // intersection meets the third element.
    for (e, &(i, j)) in edges.iter().enumerate() {
        for k in j + 1..n {
            if edge_intervals[e].overlaps(c.element(k)) {
                return Err(CoverError::NerveNotOneDimensional(i, j, k));
            }
        }
    }
    Ok(NerveComplex {
        vertex_count: n,
        edges,
        edge_intervals,
    })
}

/// A subcomplex of a nerve, given by sorted vertex and edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubNerve {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl SubNerve {
    pub fn empty() -> Self {
        SubNerve {
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_subset_of(&self, other: &SubNerve) -> bool {
        self.vertices
            .iter()
            .all(|v| other.vertices.binary_search(v).is_ok())
            && self
                .edges
                .iter()
                .all(|e| other.edges.binary_search(e).is_ok())
    }

    /// Face-closed with respect to `nerve` and within its index range.
    pub fn is_subcomplex_of(&self, nerve: &NerveComplex) -> bool {
        self.vertices.iter().all(|&v| v < nerve.vertex_count())
            && self.edges.iter().all(|&e| {
                e < nerve.edge_count() && {
                    let (i, j) = nerve.edges()[e];
                    self.vertices.binary_search(&i).is_ok()
                        && self.vertices.binary_search(&j).is_ok()
                }
            })
    }
}

/// `K_V`: simplices σ of the nerve whose set `U_σ` meets `v`.
pub fn sub_nerve(c: &Cover, n: &NerveComplex, v: &OpenInterval) -> SubNerve {
    let vertices = (0..c.len()).filter(|&i| c.element(i).overlaps(v)).collect();
    let edges = (0..n.edge_count())
        .filter(|&e| n.edge_interval(e).overlaps(v))
        .collect();
    SubNerve { vertices, edges }
}

/// Disjoint maximal intervals making up `∪_{σ ∈ K} U_σ`. Edges add nothing.
pub fn union_support(c: &Cover, k: &SubNerve) -> Vec<OpenInterval> {
    normalize(k.vertices.iter().map(|&i| *c.element(i)).collect())
}

/// Merge overlapping open intervals. Touching intervals stay separate since the
/// shared endpoint is not covered.
pub fn normalize(mut intervals: Vec<OpenInterval>) -> Vec<OpenInterval> {
    intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
    let mut out: Vec<OpenInterval> = Vec::new();
    for iv in intervals {
        match out.last_mut() {
            Some(last) if iv.lo < last.hi => last.hi = last.hi.max(iv.hi),
            _ => out.push(iv),
        }
    }
    out
}

/// Every maximal simplex must have all its vertex values inside one element.
/// Returns the first offending simplex (vertex ids), scanning by dimension and
/// then lexicographically.
pub fn admissible(c: &Cover, x: &SimplicialComplex, f: &ScalarField) -> Result<(), Vec<usize>> {
    for (dim, idx) in x.maximal_simplices() {
        let (lo, hi) = f.span(x.simplex(dim, idx));
        if !c.elements().iter().any(|e| e.contains_span(lo, hi)) {
            return Err(x.simplex_ids(dim, idx));
        }
    }
    Ok(())
}
