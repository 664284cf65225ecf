//! The explicit Mayer–Vietoris isomorphism `C(V) ≅ H_•(f⁻¹(∪_{σ∈K_V} U_σ))`.
//!
//! With `A_τ` the preimage of `U_τ` and `Y` the preimage of the union, the
//! chain-level sequence `0 → ⊕_e C(A_e) → ⊕_i C(A_i) → C(Y) → 0` is exact for
//! admissible covers. The `H₀` part of the isomorphism is the inclusion of the
//! vertex pieces; the `H₁` part is a section of the connecting map built by a
//! zig-zag: cycles `z_e` on the edges, the alternating sums `w_i` on the
//! vertices, chains `c_i` with `∂c_i = w_i`, glued into the cycle `Σ c_i`.

use std::sync::Arc;

use crate::chain::SparseVec;
use crate::cosheaf::CellularCosheaf;
use crate::cover::{union_support, OpenInterval, SubNerve};
use crate::field::Field;
use crate::homology::{compose, homology, induced_map, GradedMap, Homology};
use crate::linalg::{inverse, rank, Matrix};
use crate::simplicial::preimage_of_union;

use super::{
    continuous_extension, extension_at, extension_map_between, ConvergenceError, ExtensionValue,
};

#[derive(Debug, Clone)]
pub struct MVWitness<F> {
    pub extension: ExtensionValue<F>,
    pub union: Vec<OpenInterval>,
    pub union_homology: Arc<Homology<F>>,
    /// `C(V) → H_•(Y)`, per degree.
    pub map: GradedMap<F>,
    pub inverse: GradedMap<F>,
}

pub fn mv_isomorphism<F: Field>(
    d: &CellularCosheaf<F>,
    k: &SubNerve,
) -> Result<MVWitness<F>, ConvergenceError> {
    let extension = extension_at(d, k)?;
    let union = union_support(d.cover(), k);
    let y = homology::<F>(
        &preimage_of_union(d.complex(), d.values(), &union),
        d.max_deg(),
    );
    let mut blocks = Vec::with_capacity(d.max_deg() + 1);
    let mut inverses = Vec::with_capacity(d.max_deg() + 1);
    for n in 0..=d.max_deg() {
        let mut cols = h0_part(d, &extension, &y, n)?;
        if n > 0 {
            cols.extend(h1_part(d, &extension, &y, n)?);
        }
        let m = Matrix::from_columns(y.dim(n), &cols);
        if m.rows() != m.cols() {
            return Err(ConvergenceError::NotInvertible(n));
        }
        inverses.push(inverse(&m).map_err(|_| ConvergenceError::NotInvertible(n))?);
        blocks.push(m);
    }
    Ok(MVWitness {
        extension,
        union,
        union_homology: y,
        map: GradedMap::new(blocks),
        inverse: GradedMap::new(inverses),
    })
}

/// Columns for the cokernel representatives of `H₀(K; D_n)`.
fn h0_part<F: Field>(
    d: &CellularCosheaf<F>,
    ext: &ExtensionValue<F>,
    y: &Homology<F>,
    n: usize,
) -> Result<Vec<Vec<F>>, ConvergenceError> {
    let part = &ext.parts[n];
    let reps = &part.homology.h0.representatives;
    (0..reps.cols())
        .map(|c| {
            let v = reps.column(c);
            let mut cycle = SparseVec::new();
            for b in &part.chain.vertex_blocks {
                let a = d.vertex_space(b.label);
                for k in 0..b.dim {
                    let coeff = &v[b.offset + k];
                    if !coeff.is_zero() {
                        let z = push(a, n, &a.basis(n)[k], y)?;
                        cycle.add_scaled(coeff, &z);
                    }
                }
            }
            Ok(y.express(n, &cycle)?)
        })
        .collect()
}

/// Columns for the kernel basis of `H₁(K; D_{n−1})`.
fn h1_part<F: Field>(
    d: &CellularCosheaf<F>,
    ext: &ExtensionValue<F>,
    y: &Homology<F>,
    n: usize,
) -> Result<Vec<Vec<F>>, ConvergenceError> {
    let part = &ext.parts[n - 1];
    let kernel = &part.homology.h1;
    let k = &ext.sub_nerve;
    (0..kernel.cols())
        .map(|c| {
            let xi = kernel.column(c);
            // w_i as (n-1)-chains in A_i, indexed like k.vertices
            let mut w: Vec<SparseVec<F>> = vec![SparseVec::new(); k.vertices.len()];
            let slot = |i: usize| {
                k.vertices
                    .binary_search(&i)
                    .expect("edge endpoints lie in K")
            };
            for b in &part.chain.edge_blocks {
                let a = d.edge_space(b.label);
                let mut z = SparseVec::new();
                for j in 0..b.dim {
                    z.add_scaled(&xi[b.offset + j], &a.basis(n - 1)[j]);
                }
                if z.is_zero() {
                    continue;
                }
                let (tail, head) = d.nerve().edges()[b.label];
                let into = |i: usize| push(a, n - 1, &z, d.vertex_space(i));
                w[slot(head)].add_scaled(&F::one(), &into(head)?);
                w[slot(tail)].add_scaled(&F::one().neg(), &into(tail)?);
            }
            let mut cycle = SparseVec::new();
            for (pos, &i) in k.vertices.iter().enumerate() {
                if w[pos].is_zero() {
                    continue;
                }
                let a = d.vertex_space(i);
                let chain = a.bounding_chain(n - 1, &w[pos])?;
                cycle.add_scaled(&F::one(), &push(a, n, &chain, y)?);
            }
            Ok(y.express(n, &cycle)?)
        })
        .collect()
}

fn push<F: Field>(
    from: &Homology<F>,
    n: usize,
    chain: &SparseVec<F>,
    to: &Homology<F>,
) -> Result<SparseVec<F>, ConvergenceError> {
    from.subcomplex()
        .push_chain(n, chain, to.subcomplex())
        .ok_or(ConvergenceError::Homology(
            crate::homology::HomologyError::NestingViolation,
        ))
}

/// Outcome of checking one commuting square
/// `Φ_W ∘ C(V ⊆ W) = H(Y_V ⊆ Y_W) ∘ Φ_V`.
#[derive(Debug, Clone, PartialEq)]
pub struct PropositionReport {
    pub v: OpenInterval,
    pub w: OpenInterval,
    pub dims_v: Vec<usize>,
    pub dims_w: Vec<usize>,
    pub oracle_v: Vec<usize>,
    pub oracle_w: Vec<usize>,
    pub left_ranks: Vec<usize>,
    pub right_ranks: Vec<usize>,
    pub invertible: bool,
    pub commutes: bool,
}

impl PropositionReport {
    pub fn passed(&self) -> bool {
        self.invertible
            && self.commutes
            && self.dims_v == self.oracle_v
            && self.dims_w == self.oracle_w
    }
}

pub fn verify_proposition<F: Field>(
    d: &CellularCosheaf<F>,
    v: &OpenInterval,
    w: &OpenInterval,
) -> Result<PropositionReport, ConvergenceError> {
    if !v.is_subset_of(w) {
        return Err(ConvergenceError::NotNested(*v, *w));
    }
    let kv = continuous_extension(d, v)?.sub_nerve;
    let kw = continuous_extension(d, w)?.sub_nerve;
    let wv = mv_isomorphism(d, &kv)?;
    let ww = mv_isomorphism(d, &kw)?;
    let left = extension_map_between(&wv.extension, &ww.extension)?;
    let right = induced_map(&wv.union_homology, &ww.union_homology)?;
    let commutes = compose(&ww.map, &left)? == compose(&right, &wv.map)?;
    let invertible = [&wv.map, &ww.map].iter().all(|m| {
        m.blocks()
            .iter()
            .all(|b| b.rows() == b.cols() && rank(b) == b.rows())
    });
    Ok(PropositionReport {
        v: *v,
        w: *w,
        dims_v: wv.extension.dims(),
        dims_w: ww.extension.dims(),
        oracle_v: wv.union_homology.dims(),
        oracle_w: ww.union_homology.dims(),
        left_ranks: left.ranks(),
        right_ranks: right.ranks(),
        invertible,
        commutes,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{coarse, fine, hexagon};
    use super::*;
    use crate::cosheaf::build_cellular_leray;
    use crate::field::{Gf2, Rational};
    use crate::simplicial::build_complex;

    fn iv(a: f64, b: f64) -> OpenInterval {
        OpenInterval::new(a, b).unwrap()
    }

    #[test]
    fn single_vertex_is_plain_inclusion() {
        let (x, f) = hexagon();
        let d = build_cellular_leray::<Gf2>(&x, &f, &fine(), 1).unwrap();
        let k = SubNerve {
            vertices: vec![1],
            edges: vec![],
        };
        let w = mv_isomorphism(&d, &k).unwrap();
        assert_eq!(w.map, GradedMap::identity(&[2, 0]));
    }

    #[test]
    fn fundamental_cycle_from_the_zig_zag() {
        let (x, f) = hexagon();
        let d = build_cellular_leray::<Rational>(&x, &f, &fine(), 1).unwrap();
        let w = mv_isomorphism(&d, &d.nerve().full()).unwrap();
        assert_eq!(w.extension.split_dim(1), (0, 1));
        assert_eq!(w.map.block(1).shape(), (1, 1));
        assert!(!w.map.block(1).get(0, 0).is_zero());
        // the glued chain uses every edge of the hexagon
        let z = w
            .union_homology
            .cycle_from_coords(1, &w.map.block(1).column(0));
        assert_eq!(z.len(), 6);
    }

    #[test]
    fn hexagon_squares_commute() {
        let (x, f) = hexagon();
        for c in [fine(), coarse()] {
            let d = build_cellular_leray::<Rational>(&x, &f, &c, 1).unwrap();
            let r = verify_proposition(&d, &iv(1.3, 1.7), &iv(-1.0, 4.0)).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.left_ranks[0], 1);
            assert_eq!(r.right_ranks[0], 1);
            let r = verify_proposition(&d, &iv(0.5, 2.5), &iv(0.5, 2.5)).unwrap();
            assert!(r.passed());
        }
    }

    #[test]
    fn filled_triangle_strip() {
        // a disk: two triangles, function along one axis
        let (x, f) = build_complex(
            &[vec![0, 1, 2], vec![1, 2, 3]],
            &[(0, 0.0), (1, 1.0), (2, 1.0), (3, 2.0)],
        )
        .unwrap();
        let x = Arc::new(x);
        let c = super::super::tests::cover(&[(-0.5, 1.5), (0.5, 2.5)]);
        let d = build_cellular_leray::<Gf2>(&x, &f, &c, 2).unwrap();
        let r = verify_proposition(&d, &iv(0.2, 0.4), &iv(-1.0, 3.0)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.dims_w, vec![1, 0, 0]);
    }
}
