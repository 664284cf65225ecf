//! Homology of cellular cosheaves on graphs.
//!
//! A cosheaf `F` on a graph gives the two-term complex
//! `⊕_e F(e) → ⊕_v F(v)`; `H₀` is its cokernel and `H₁` its kernel.
//! Edges are oriented from the lower to the higher endpoint label, and the
//! boundary of a section over `(i, j)` is `r_j(s) − r_i(s)`.

use std::collections::HashMap;

use thiserror::Error;

use crate::cosheaf::CellularCosheaf;
use crate::cover::SubNerve;
use crate::field::Field;
use crate::linalg::{cokernel_basis, kernel_basis, Cokernel, LinalgError, Matrix, SpanSolver};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CosheafHomologyError {
    #[error("sub-nerves are not nested")]
    NestingViolation,
    #[error("internal linear algebra failure: {0}")]
    Linalg(#[from] LinalgError),
}

/// Position of one summand inside a block space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub label: usize,
    pub offset: usize,
    pub dim: usize,
}

fn layout(items: impl IntoIterator<Item = (usize, usize)>) -> Vec<Block> {
    let mut offset = 0;
    items
        .into_iter()
        .map(|(label, dim)| {
            let b = Block { label, offset, dim };
            offset += dim;
            b
        })
        .collect()
}

fn total(blocks: &[Block]) -> usize {
    blocks.last().map_or(0, |b| b.offset + b.dim)
}

/// An edge of the underlying graph together with its two extension maps.
#[derive(Debug, Clone, Copy)]
pub struct GraphEdge<'a, F> {
    pub label: usize,
    /// Lower endpoint label.
    pub tail: usize,
    /// Higher endpoint label.
    pub head: usize,
    pub into_tail: &'a Matrix<F>,
    pub into_head: &'a Matrix<F>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CosheafChainComplex<F> {
    pub vertex_blocks: Vec<Block>,
    pub edge_blocks: Vec<Block>,
    /// `vertex_dim x edge_dim`.
    pub boundary: Matrix<F>,
}

impl<F: Field> CosheafChainComplex<F> {
    /// `vertices` are `(label, dim)` pairs; edge endpoints refer to those labels.
    pub fn assemble(vertices: &[(usize, usize)], edges: &[GraphEdge<'_, F>]) -> Self {
        let vertex_blocks = layout(vertices.iter().copied());
        let edge_blocks = layout(edges.iter().map(|e| (e.label, e.into_head.cols())));
        let at: HashMap<usize, Block> = vertex_blocks.iter().map(|b| (b.label, *b)).collect();
        let mut boundary: Matrix<F> = Matrix::zeros(total(&vertex_blocks), total(&edge_blocks));
        for (e, eb) in edges.iter().zip(&edge_blocks) {
            let (t, h) = (at[&e.tail], at[&e.head]);
            assert_eq!(e.into_tail.shape(), (t.dim, eb.dim), "tail map shape");
            assert_eq!(e.into_head.shape(), (h.dim, eb.dim), "head map shape");
            for c in 0..eb.dim {
                for r in 0..h.dim {
                    let v = e.into_head.get(r, c);
                    if !v.is_zero() {
                        let cur = boundary.get(h.offset + r, eb.offset + c).add(v);
                        boundary.set(h.offset + r, eb.offset + c, cur);
                    }
                }
                for r in 0..t.dim {
                    let v = e.into_tail.get(r, c);
                    if !v.is_zero() {
                        let cur = boundary.get(t.offset + r, eb.offset + c).sub(v);
                        boundary.set(t.offset + r, eb.offset + c, cur);
                    }
                }
            }
        }
        CosheafChainComplex {
            vertex_blocks,
            edge_blocks,
            boundary,
        }
    }

    /// The constant cosheaf with stalk `F` on a graph with vertices `0..n`.
    /// Edge `k` is labelled `k`; loops are not allowed.
    pub fn constant(vertex_count: usize, edges: &[(usize, usize)]) -> Self {
        let one = Matrix::identity(1);
        let graph: Vec<GraphEdge<'_, F>> = edges
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| {
                assert_ne!(a, b, "constant cosheaf on a loop");
                GraphEdge {
                    label: k,
                    tail: a.min(b),
                    head: a.max(b),
                    into_tail: &one,
                    into_head: &one,
                }
            })
            .collect();
        let vertices: Vec<(usize, usize)> = (0..vertex_count).map(|v| (v, 1)).collect();
        Self::assemble(&vertices, &graph)
    }

    pub fn vertex_dim(&self) -> usize {
        total(&self.vertex_blocks)
    }

    pub fn edge_dim(&self) -> usize {
        total(&self.edge_blocks)
    }

    pub fn homology(&self) -> CosheafHomology<F> {
        CosheafHomology {
            h0: cokernel_basis(&self.boundary, self.vertex_dim()),
            h1: kernel_basis(&self.boundary),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CosheafHomology<F> {
    pub h0: Cokernel<F>,
    /// Columns are a kernel basis in the edge block space.
    pub h1: Matrix<F>,
}

impl<F: Field> CosheafHomology<F> {
    pub fn dim0(&self) -> usize {
        self.h0.dim()
    }

    pub fn dim1(&self) -> usize {
        self.h1.cols()
    }
}

/// Chain complex and homology of one degree.
#[derive(Debug, Clone)]
pub struct DegreeHomology<F> {
    pub chain: CosheafChainComplex<F>,
    pub homology: CosheafHomology<F>,
}

/// The degree-`n` chain complex of `d` over its support.
///
/// Degrees above the cosheaf's range give zero stalks.
pub fn cosheaf_boundary<F: Field>(d: &CellularCosheaf<F>, n: usize) -> CosheafChainComplex<F> {
    let k = d.support();
    let dim_at = |h: &crate::homology::Homology<F>| if n <= d.max_deg() { h.dim(n) } else { 0 };
    let vertices: Vec<(usize, usize)> = k
        .vertices
        .iter()
        .map(|&v| (v, dim_at(d.vertex_space(v))))
        .collect();
    let zero: Vec<[Matrix<F>; 2]> = k
        .edges
        .iter()
        .map(|&e| {
            let (i, j) = d.nerve().edges()[e];
            [
                Matrix::zeros(dim_at(d.vertex_space(i)), 0),
                Matrix::zeros(dim_at(d.vertex_space(j)), 0),
            ]
        })
        .collect();
    let edges: Vec<GraphEdge<'_, F>> = k
        .edges
        .iter()
        .zip(&zero)
        .map(|(&e, z)| {
            let (i, j) = d.nerve().edges()[e];
            let maps = d.edge_maps(e);
            let (into_tail, into_head) = if n <= d.max_deg() {
                (maps[0].block(n), maps[1].block(n))
            } else {
                (&z[0], &z[1])
            };
            GraphEdge {
                label: e,
                tail: i,
                head: j,
                into_tail,
                into_head,
            }
        })
        .collect();
    CosheafChainComplex::assemble(&vertices, &edges)
}

/// Homology of `d` over its support in degrees `0..=max_deg`.
pub fn cosheaf_homology<F: Field>(
    d: &CellularCosheaf<F>,
    max_deg: usize,
) -> Vec<DegreeHomology<F>> {
    (0..=max_deg)
        .map(|n| {
            let chain = cosheaf_boundary(d, n);
            let homology = chain.homology();
            DegreeHomology { chain, homology }
        })
        .collect()
}

fn zero_extend<F: Field>(
    v: &[F],
    from: &[Block],
    to: &[Block],
) -> Result<Vec<F>, CosheafHomologyError> {
    let at: HashMap<usize, &Block> = to.iter().map(|b| (b.label, b)).collect();
    let mut out = vec![F::zero(); total(to)];
    for b in from {
        let target = at
            .get(&b.label)
            .ok_or(CosheafHomologyError::NestingViolation)?;
        if target.dim != b.dim {
            return Err(CosheafHomologyError::NestingViolation);
        }
        out[target.offset..target.offset + b.dim].clone_from_slice(&v[b.offset..b.offset + b.dim]);
    }
    Ok(out)
}

/// `(H₀(ι), H₁(ι))` for a sub-complex inclusion, matched by block labels.
pub fn induced_between<F: Field>(
    small: &DegreeHomology<F>,
    big: &DegreeHomology<F>,
) -> Result<(Matrix<F>, Matrix<F>), CosheafHomologyError> {
    let reps = &small.homology.h0.representatives;
    let h0_cols: Vec<Vec<F>> = (0..reps.cols())
        .map(|c| {
            let v = zero_extend(
                &reps.column(c),
                &small.chain.vertex_blocks,
                &big.chain.vertex_blocks,
            )?;
            Ok(big.homology.h0.projection.mul_vec(&v))
        })
        .collect::<Result<_, CosheafHomologyError>>()?;
    let h0 = Matrix::from_columns(big.homology.dim0(), &h0_cols);

    let solver = SpanSolver::new(&big.homology.h1);
    let h1_cols: Vec<Vec<F>> = (0..small.homology.h1.cols())
        .map(|c| {
            let v = zero_extend(
                &small.homology.h1.column(c),
                &small.chain.edge_blocks,
                &big.chain.edge_blocks,
            )?;
            Ok(solver.solve(&v)?)
        })
        .collect::<Result<_, CosheafHomologyError>>()?;
    let h1 = Matrix::from_columns(big.homology.dim1(), &h1_cols);
    Ok((h0, h1))
}

/// Maps induced on `H₀` and `H₁`.
pub type InducedPair<F> = (Matrix<F>, Matrix<F>);

/// Per degree `n`, the maps induced on `H₀` and `H₁` by `k_small ⊆ k_big`.
pub fn induced_cosheaf_map<F: Field>(
    d: &CellularCosheaf<F>,
    k_small: &SubNerve,
    k_big: &SubNerve,
) -> Result<Vec<InducedPair<F>>, CosheafHomologyError> {
    if !k_small.is_subset_of(k_big) {
        return Err(CosheafHomologyError::NestingViolation);
    }
    let small = d
        .restrict(k_small)
        .map_err(|_| CosheafHomologyError::NestingViolation)?;
    let big = d
        .restrict(k_big)
        .map_err(|_| CosheafHomologyError::NestingViolation)?;
    let hs = cosheaf_homology(&small, d.max_deg());
    let hb = cosheaf_homology(&big, d.max_deg());
    hs.iter()
        .zip(&hb)
        .map(|(s, b)| induced_between(s, b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosheaf::build_cellular_leray;
    use crate::cover::{Cover, OpenInterval};
    use crate::field::{Gf2, Rational};
    use crate::linalg::rank;
    use crate::simplicial::{build_complex, SimplicialComplex};
    use std::sync::Arc;

    fn fine_hexagon() -> CellularCosheaf<Gf2> {
        let edges: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
        let values: Vec<(usize, f64)> = [0.0, 1.0, 2.0, 3.0, 2.0, 1.0]
            .into_iter()
            .enumerate()
            .collect();
        let (x, f) = build_complex(&edges, &values).unwrap();
        let x: Arc<SimplicialComplex> = Arc::new(x);
        let c = Cover::new(
            [(-0.5, 1.2), (0.8, 2.2), (1.8, 3.5)]
                .iter()
                .map(|&(a, b)| OpenInterval::new(a, b).unwrap())
                .collect(),
        )
        .unwrap();
        build_cellular_leray(&x, &f, &c, 1).unwrap()
    }

    #[test]
    fn single_edge_constant() {
        let c = CosheafChainComplex::<Rational>::constant(2, &[(0, 1)]);
        assert_eq!(c.boundary, Matrix::from_i64(2, 1, &[-1, 1]));
        assert_eq!(rank(&c.boundary), 1);
    }

    #[test]
    fn empty_complex() {
        let c = CosheafChainComplex::<Rational>::constant(0, &[]);
        assert_eq!(c.boundary.shape(), (0, 0));
        let h = c.homology();
        assert_eq!((h.dim0(), h.dim1()), (0, 0));
    }

    #[test]
    fn path_and_cycle() {
        let path =
            CosheafChainComplex::<Rational>::constant(4, &[(0, 1), (1, 2), (2, 3)]).homology();
        assert_eq!((path.dim0(), path.dim1()), (1, 0));
        let cycle = CosheafChainComplex::<Rational>::constant(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
            .homology();
        assert_eq!((cycle.dim0(), cycle.dim1()), (1, 1));
        // parallel edges form a cycle too
        let bigon = CosheafChainComplex::<Gf2>::constant(2, &[(0, 1), (0, 1)]).homology();
        assert_eq!((bigon.dim0(), bigon.dim1()), (1, 1));
    }

    #[test]
    fn hexagon_fine_degree_zero() {
        let d = fine_hexagon();
        let c = cosheaf_boundary(&d, 0);
        assert_eq!((c.edge_dim(), c.vertex_dim()), (4, 4));
        assert_eq!(rank(&c.boundary), 3);
        let h = cosheaf_homology(&d, 1);
        assert_eq!((h[0].homology.dim0(), h[0].homology.dim1()), (1, 1));
        assert_eq!((h[1].homology.dim0(), h[1].homology.dim1()), (0, 0));
    }

    #[test]
    fn induced_maps() {
        let d = fine_hexagon();
        let full = d.nerve().full();
        let id = induced_cosheaf_map(&d, &full, &full).unwrap();
        assert_eq!(id[0].0, Matrix::identity(1));
        assert_eq!(id[0].1, Matrix::identity(1));

        let one = SubNerve {
            vertices: vec![1],
            edges: vec![],
        };
        let m = induced_cosheaf_map(&d, &one, &full).unwrap();
        assert_eq!(m[0].0.shape(), (1, 2));
        assert_eq!(rank(&m[0].0), 1);
        assert_eq!(m[0].1.shape(), (1, 0));

        assert_eq!(
            induced_cosheaf_map(&d, &full, &one).unwrap_err(),
            CosheafHomologyError::NestingViolation
        );
    }

    #[test]
    fn two_points_joined_by_a_path() {
        // vertices 0 and 2 of the path 0-1-2
        let small = CosheafChainComplex::<Rational>::assemble(&[(0, 1), (2, 1)], &[]);
        let big = CosheafChainComplex::<Rational>::constant(3, &[(0, 1), (1, 2)]);
        let s = DegreeHomology {
            homology: small.homology(),
            chain: small,
        };
        let b = DegreeHomology {
            homology: big.homology(),
            chain: big,
        };
        let (h0, h1) = induced_between(&s, &b).unwrap();
        assert_eq!(h0.shape(), (1, 2));
        assert_eq!(rank(&h0), 1);
        assert_eq!(h1.shape(), (0, 0));
    }
}
