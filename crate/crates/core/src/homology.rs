//! Simplicial homology with explicit cycle bases and inclusion-induced maps.
//!
//! Boundary matrices are reduced column by column with the standard
//! "eliminate by lowest nonzero row" rule, tracking the column operations.
//! With simplices in their fixed lexicographic order this gives, per degree:
//!
//! * a set of boundary generators with pairwise distinct lowest rows,
//! * for every remaining positive simplex, a cycle whose lowest entry is that
//!   simplex; these cycles form the homology basis.
//!
//! Together these generators are triangular, so every cycle has a unique
//! expansion in them. The expansion gives homology coordinates and, for a
//! boundary, a bounding chain that depends linearly on the boundary.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::chain::SparseVec;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::simplicial::Subcomplex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("source subcomplex is not contained in the target")]
    NestingViolation,
    #[error("graded map shapes do not compose: {0}")]
    ShapeMismatch(String),
    #[error("chain in degree {0} is not a cycle")]
    NotACycle(usize),
    #[error("chain in degree {0} is not a boundary")]
    NotABoundary(usize),
}

/// Column reduction of one boundary matrix `∂_n : C_n → C_{n-1}`.
#[derive(Debug, Clone)]
struct Reduction<F> {
    /// Reduced columns `r_j = ∂ v_j`.
    reduced: Vec<SparseVec<F>>,
    /// Accumulated column operations.
    ops: Vec<SparseVec<F>>,
    /// Lowest row -> column index, for nonzero reduced columns.
    low_to_col: HashMap<usize, usize>,
}

impl<F: Field> Reduction<F> {
    fn empty() -> Self {
        Reduction {
            reduced: Vec::new(),
            ops: Vec::new(),
            low_to_col: HashMap::new(),
        }
    }

    fn compute(k: &Subcomplex, n: usize) -> Self {
        let cols = k.count(n);
        let mut reduced = Vec::with_capacity(cols);
        let mut ops = Vec::with_capacity(cols);
        let mut low_to_col = HashMap::new();
        for j in 0..cols {
            let mut r: SparseVec<F> = k.boundary_column(n, j);
            let mut v = SparseVec::unit(j);
            while let Some((low, value)) = r.low() {
                let Some(&c) = low_to_col.get(&low) else {
                    break;
                };
                let pivot: &SparseVec<F> = &reduced[c];
                let factor = value.div(pivot.low().expect("registered column is nonzero").1);
                let neg = factor.neg();
                r.add_scaled(&neg, &reduced[c]);
                v.add_scaled(&neg, &ops[c]);
            }
            if let Some((low, _)) = r.low() {
                low_to_col.insert(low, j);
            }
            reduced.push(r);
            ops.push(v);
        }
        Reduction {
            reduced,
            ops,
            low_to_col,
        }
    }

    fn is_positive(&self, j: usize) -> bool {
        self.reduced[j].is_zero()
    }
}

/// Homology of one degree.
#[derive(Debug, Clone)]
struct DegreeData<F> {
    /// Basis cycles, each with lowest entry at the matching `essential` simplex.
    basis: Vec<SparseVec<F>>,
    /// Local simplex index -> basis position.
    essential: HashMap<usize, usize>,
}

/// `H_•` of a subcomplex in degrees `0..=max_deg`, with explicit cycle bases.
#[derive(Debug, Clone)]
pub struct Homology<F> {
    space: Subcomplex,
    max_deg: usize,
    degrees: Vec<DegreeData<F>>,
    /// `reductions[n]` reduces `∂_n`; index 0 is unused.
    reductions: Vec<Reduction<F>>,
}

impl<F: Field> Homology<F> {
    /// Computes homology in degrees `0..=max_deg`; higher entries are zero.
    pub fn compute(k: &Subcomplex, max_deg: usize) -> Self {
        let mut reductions = vec![Reduction::empty()];
        for n in 1..=max_deg + 1 {
            reductions.push(Reduction::compute(k, n));
        }
        let degrees = (0..=max_deg)
            .map(|n| {
                let positive: Vec<usize> = (0..k.count(n))
                    .filter(|&j| n == 0 || reductions[n].is_positive(j))
                    .collect();
                let mut basis = Vec::new();
                let mut essential = HashMap::new();
                for j in positive {
                    if reductions[n + 1].low_to_col.contains_key(&j) {
                        continue;
                    }
                    let cycle = if n == 0 {
                        SparseVec::unit(j)
                    } else {
                        reductions[n].ops[j].clone()
                    };
                    essential.insert(j, basis.len());
                    basis.push(cycle);
                }
                DegreeData { basis, essential }
            })
            .collect();
        Homology {
            space: k.clone(),
            max_deg,
            degrees,
            reductions,
        }
    }

    pub fn subcomplex(&self) -> &Subcomplex {
        &self.space
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    pub fn dim(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.basis.len())
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.max_deg).map(|n| self.dim(n)).collect()
    }

    /// Basis cycles in local chain coordinates.
    pub fn basis(&self, n: usize) -> &[SparseVec<F>] {
        self.degrees.get(n).map_or(&[], |d| d.basis.as_slice())
    }

    /// Unique expansion `z = Σ coords_k · basis_k + ∂ c`.
    pub fn decompose(
        &self,
        n: usize,
        cycle: &SparseVec<F>,
    ) -> Result<(Vec<F>, SparseVec<F>), HomologyError> {
        let deg = &self.degrees[n];
        let bounding = &self.reductions[n + 1];
        let mut z = cycle.clone();
        let mut coords = vec![F::zero(); deg.basis.len()];
        let mut chain = SparseVec::new();
        while let Some((low, value)) = z.low() {
            let value = value.clone();
            if let Some(&c) = bounding.low_to_col.get(&low) {
                let col = &bounding.reduced[c];
                let a = value.div(col.low().expect("nonzero").1);
                z.add_scaled(&a.neg(), col);
                chain.add_scaled(&a, &bounding.ops[c]);
            } else if let Some(&b) = deg.essential.get(&low) {
                let cyc = &deg.basis[b];
                let a = value.div(cyc.low().expect("nonzero").1);
                z.add_scaled(&a.neg(), cyc);
                coords[b] = coords[b].add(&a);
            } else {
                return Err(HomologyError::NotACycle(n));
            }
        }
        Ok((coords, chain))
    }

    /// Coordinates of the class of `cycle` in the homology basis.
    pub fn express(&self, n: usize, cycle: &SparseVec<F>) -> Result<Vec<F>, HomologyError> {
        if n > self.max_deg {
            return Ok(Vec::new());
        }
        self.decompose(n, cycle).map(|(c, _)| c)
    }

    /// A chain `c` with `∂c = boundary`; linear in `boundary`.
    pub fn bounding_chain(
        &self,
        n: usize,
        boundary: &SparseVec<F>,
    ) -> Result<SparseVec<F>, HomologyError> {
        let (coords, chain) = self.decompose(n, boundary)?;
        if coords.iter().any(|c| !c.is_zero()) {
            return Err(HomologyError::NotABoundary(n));
        }
        Ok(chain)
    }

    /// Linear combination of basis cycles.
    pub fn cycle_from_coords(&self, n: usize, coords: &[F]) -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (c, z) in coords.iter().zip(self.basis(n)) {
            out.add_scaled(c, z);
        }
        out
    }
}

/// Degree-wise linear maps between graded vector spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap<F> {
    blocks: Vec<Matrix<F>>,
}

impl<F: Field> GradedMap<F> {
    pub fn new(blocks: Vec<Matrix<F>>) -> Self {
        GradedMap { blocks }
    }

    pub fn identity(dims: &[usize]) -> Self {
        GradedMap {
            blocks: dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn zero(source: &[usize], target: &[usize]) -> Self {
        assert_eq!(source.len(), target.len());
        GradedMap {
            blocks: source
                .iter()
                .zip(target)
                .map(|(&s, &t)| Matrix::zeros(t, s))
                .collect(),
        }
    }

    pub fn degrees(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, n: usize) -> &Matrix<F> {
        &self.blocks[n]
    }

    pub fn blocks(&self) -> &[Matrix<F>] {
        &self.blocks
    }

    pub fn source_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::cols).collect()
    }

    pub fn target_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::rows).collect()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.blocks.iter().map(crate::linalg::rank).collect()
    }
}

/// `g ∘ f`, degree by degree.
pub fn compose<F: Field>(
    g: &GradedMap<F>,
    f: &GradedMap<F>,
) -> Result<GradedMap<F>, HomologyError> {
    if g.degrees() != f.degrees() {
        return Err(HomologyError::ShapeMismatch(format!(
            "{} degrees vs {} degrees",
            g.degrees(),
            f.degrees()
        )));
    }
    g.blocks
        .iter()
        .zip(&f.blocks)
        .enumerate()
        .map(|(n, (gb, fb))| {
            gb.mul(fb)
                .map_err(|e| HomologyError::ShapeMismatch(format!("degree {n}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(GradedMap::new)
}

/// Map on homology induced by the inclusion `a.subcomplex() ⊆ b.subcomplex()`.
pub fn induced_map<F: Field>(
    a: &Homology<F>,
    b: &Homology<F>,
) -> Result<GradedMap<F>, HomologyError> {
    if !a.subcomplex().is_subcomplex_of(b.subcomplex()) {
        return Err(HomologyError::NestingViolation);
    }
    let degrees = a.max_deg().min(b.max_deg());
    let blocks = (0..=degrees)
        .map(|n| {
            let cols: Vec<Vec<F>> = a
                .basis(n)
                .iter()
                .map(|z| {
                    let pushed = a
                        .subcomplex()
                        .push_chain(n, z, b.subcomplex())
                        .ok_or(HomologyError::NestingViolation)?;
                    b.express(n, &pushed)
                })
                .collect::<Result<_, _>>()?;
            Ok(Matrix::from_columns(b.dim(n), &cols))
        })
        .collect::<Result<Vec<_>, HomologyError>>()?;
    Ok(GradedMap::new(blocks))
}

/// Convenience: homology of a shared subcomplex, reference-counted.
pub fn homology<F: Field>(k: &Subcomplex, max_deg: usize) -> Arc<Homology<F>> {
    Arc::new(Homology::compute(k, max_deg))
}
