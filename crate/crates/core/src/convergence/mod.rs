//! The continuous extension of the cellular Leray cosheaf to open intervals,
//! its Mayer–Vietoris comparison with the homology of preimages, and the
//! resolution-interleaving checks.
//!
//! For an open interval `V`, let `K_V` be the sub-nerve of cover simplices
//! meeting `V`. The extension in degree `n` is
//! `H₀(K_V; D_n) ⊕ H₁(K_V; D_{n−1})`, with `D_{−1} = 0`. Bases are ordered
//! with the `H₀` part first.

mod interleaving;
mod pl;
mod table;
mod witness;

use num_rational::BigRational;
use thiserror::Error;

use crate::cosheaf::{CellularCosheaf, CosheafError};
use crate::cosheaf_homology::{
    cosheaf_homology, induced_between, CosheafHomologyError, DegreeHomology,
};
use crate::cover::{exact, union_support, Cover, CoverError, NerveComplex, OpenInterval, SubNerve};
use crate::field::Field;
use crate::homology::{homology, GradedMap, HomologyError};
use crate::linalg::Matrix;
use crate::simplicial::preimage_of_union;

pub use interleaving::{
    interleaving_check, interleaving_samples, InterleavingReport, InterleavingSample,
};
pub use pl::{critical_values, feature_scale, pl_preimage_dims};
pub use table::{
    convergence_table, generic_intervals, nested_pairs, ConvergenceRow, ConvergenceTable,
    TableParams,
};
pub use witness::{mv_isomorphism, verify_proposition, MVWitness, PropositionReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConvergenceError {
    #[error("interval {0:?} is not contained in {1:?}")]
    NotNested(OpenInterval, OpenInterval),
    #[error("cover is not admissible: simplex {0:?} fits in no single cover element")]
    NotAdmissible(Vec<usize>),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Cosheaf(CosheafError),
    #[error(transparent)]
    CosheafHomology(#[from] CosheafHomologyError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("Mayer–Vietoris map in degree {0} is not invertible")]
    NotInvertible(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

impl From<CosheafError> for ConvergenceError {
    fn from(e: CosheafError) -> Self {
        match e {
            CosheafError::NotAdmissible(s) => ConvergenceError::NotAdmissible(s),
            CosheafError::Cover(c) => ConvergenceError::Cover(c),
            other => ConvergenceError::Cosheaf(other),
        }
    }
}

/// An open interval with exact rational endpoints, used wherever intervals
/// are shifted (thickenings) so that containments are decided exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Window {
    pub fn new(v: &OpenInterval) -> Self {
        Window {
            lo: exact(v.lo),
            hi: exact(v.hi),
        }
    }

    /// `V^ε`
    pub fn thicken(&self, eps: &BigRational) -> Self {
        Window {
            lo: &self.lo - eps,
            hi: &self.hi + eps,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let x = exact(x);
        self.lo < x && x < self.hi
    }

    pub fn meets(&self, u: &OpenInterval) -> bool {
        exact(u.lo) < self.hi && self.lo < exact(u.hi)
    }

    pub fn contains_interval(&self, u: &OpenInterval) -> bool {
        self.lo <= exact(u.lo) && exact(u.hi) <= self.hi
    }

    /// Nearest floats; only for display.
    pub fn approx(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (
            self.lo.to_f64().unwrap_or(f64::NAN),
            self.hi.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// `res(𝒰)` as an exact rational.
pub fn exact_resolution(c: &Cover) -> BigRational {
    c.elements()
        .iter()
        .map(|u| exact(u.hi) - exact(u.lo))
        .max()
        .expect("covers are nonempty")
}

/// `K_V` for an exact window.
pub fn sub_nerve_of(c: &Cover, n: &NerveComplex, w: &Window) -> SubNerve {
    SubNerve {
        vertices: (0..c.len()).filter(|&i| w.meets(c.element(i))).collect(),
        edges: (0..n.edge_count())
            .filter(|&e| w.meets(n.edge_interval(e)))
            .collect(),
    }
}

/// `C(V)`: cosheaf homology of the restriction to `K_V`, per cosheaf degree.
#[derive(Debug, Clone)]
pub struct ExtensionValue<F> {
    pub sub_nerve: SubNerve,
    pub cover: Cover,
    /// Indexed by cosheaf degree `0..=max_deg`.
    pub parts: Vec<DegreeHomology<F>>,
}

impl<F: Field> ExtensionValue<F> {
    pub fn max_deg(&self) -> usize {
        self.parts.len() - 1
    }

    /// `(dim H₀(D_n), dim H₁(D_{n−1}))`
    pub fn split_dim(&self, n: usize) -> (usize, usize) {
        let h0 = self.parts[n].homology.dim0();
        let h1 = if n == 0 {
            0
        } else {
            self.parts[n - 1].homology.dim1()
        };
        (h0, h1)
    }

    pub fn dim(&self, n: usize) -> usize {
        let (a, b) = self.split_dim(n);
        a + b
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.max_deg()).map(|n| self.dim(n)).collect()
    }
}

/// Extension value over an arbitrary sub-nerve of `d`'s nerve.
pub fn extension_at<F: Field>(
    d: &CellularCosheaf<F>,
    k: &SubNerve,
) -> Result<ExtensionValue<F>, ConvergenceError> {
    let r = d.restrict(k)?;
    Ok(ExtensionValue {
        sub_nerve: k.clone(),
        cover: d.cover().clone(),
        parts: cosheaf_homology(&r, d.max_deg()),
    })
}

pub fn continuous_extension<F: Field>(
    d: &CellularCosheaf<F>,
    v: &OpenInterval,
) -> Result<ExtensionValue<F>, ConvergenceError> {
    let k = sub_nerve_of(d.cover(), d.nerve(), &Window::new(v));
    extension_at(d, &k)
}

/// `C(K ⊆ L)`, block diagonal in the `H₀ ⊕ H₁` splitting.
pub fn extension_map_between<F: Field>(
    small: &ExtensionValue<F>,
    big: &ExtensionValue<F>,
) -> Result<GradedMap<F>, ConvergenceError> {
    if !small.sub_nerve.is_subset_of(&big.sub_nerve) {
        return Err(CosheafHomologyError::NestingViolation.into());
    }
    let pairs = small
        .parts
        .iter()
        .zip(&big.parts)
        .map(|(s, b)| induced_between(s, b))
        .collect::<Result<Vec<_>, _>>()?;
    let blocks = (0..pairs.len())
        .map(|n| {
            let h1 = if n == 0 {
                Matrix::zeros(0, 0)
            } else {
                pairs[n - 1].1.clone()
            };
            pairs[n].0.direct_sum(&h1)
        })
        .collect();
    Ok(GradedMap::new(blocks))
}

pub fn extension_map<F: Field>(
    d: &CellularCosheaf<F>,
    v: &OpenInterval,
    w: &OpenInterval,
) -> Result<GradedMap<F>, ConvergenceError> {
    if !v.is_subset_of(w) {
        return Err(ConvergenceError::NotNested(*v, *w));
    }
    extension_map_between(&continuous_extension(d, v)?, &continuous_extension(d, w)?)
}

/// Betti numbers of the combinatorial preimage of `∪_{σ∈K} U_σ`, computed
/// directly.
pub fn oracle_union_homology<F: Field>(d: &CellularCosheaf<F>, k: &SubNerve) -> Vec<usize> {
    let pieces = union_support(d.cover(), k);
    let y = preimage_of_union(d.complex(), d.values(), &pieces);
    homology::<F>(&y, d.max_deg()).dims()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosheaf::build_cellular_leray;
    use crate::field::{Gf2, Rational};
    use crate::linalg::rank;
    use crate::simplicial::{build_complex, SimplicialComplex};
    use std::sync::Arc;

    pub(super) fn hexagon() -> (Arc<SimplicialComplex>, crate::simplicial::ScalarField) {
        let edges: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
        let values: Vec<(usize, f64)> = [0.0, 1.0, 2.0, 3.0, 2.0, 1.0]
            .into_iter()
            .enumerate()
            .collect();
        let (x, f) = build_complex(&edges, &values).unwrap();
        (Arc::new(x), f)
    }

    pub(super) fn cover(v: &[(f64, f64)]) -> Cover {
        Cover::new(
            v.iter()
                .map(|&(a, b)| OpenInterval::new(a, b).unwrap())
                .collect(),
        )
        .unwrap()
    }

    pub(super) fn fine() -> Cover {
        cover(&[(-0.5, 1.2), (0.8, 2.2), (1.8, 3.5)])
    }

    pub(super) fn coarse() -> Cover {
        cover(&[(-0.5, 2.1), (0.9, 3.5)])
    }

    fn iv(a: f64, b: f64) -> OpenInterval {
        OpenInterval::new(a, b).unwrap()
    }

    #[test]
    fn hexagon_extension_values() {
        let (x, f) = hexagon();
        let dc = build_cellular_leray::<Gf2>(&x, &f, &coarse(), 1).unwrap();
        let df = build_cellular_leray::<Gf2>(&x, &f, &fine(), 1).unwrap();
        let v = iv(1.3, 1.7);
        assert_eq!(continuous_extension(&dc, &v).unwrap().dim(0), 1);
        assert_eq!(continuous_extension(&df, &v).unwrap().dim(0), 2);
        let all = iv(-1.0, 4.0);
        assert_eq!(continuous_extension(&df, &all).unwrap().dims(), vec![1, 1]);
        assert_eq!(continuous_extension(&dc, &all).unwrap().dims(), vec![1, 1]);
        let out = iv(10.0, 11.0);
        assert_eq!(continuous_extension(&df, &out).unwrap().dims(), vec![0, 0]);
    }

    #[test]
    fn hexagon_extension_maps() {
        let (x, f) = hexagon();
        let d = build_cellular_leray::<Rational>(&x, &f, &fine(), 1).unwrap();
        let v = iv(1.3, 1.7);
        let w = iv(-1.0, 4.0);
        let m = extension_map(&d, &v, &v).unwrap();
        assert_eq!(m, GradedMap::identity(&[2, 0]));
        let m = extension_map(&d, &v, &w).unwrap();
        assert_eq!(m.block(0).shape(), (1, 2));
        assert_eq!(rank(m.block(0)), 1);
        assert!(matches!(
            extension_map(&d, &w, &v),
            Err(ConvergenceError::NotNested(..))
        ));
    }

    #[test]
    fn union_oracle() {
        let (x, f) = hexagon();
        let d = build_cellular_leray::<Gf2>(&x, &f, &fine(), 1).unwrap();
        let k = sub_nerve_of(d.cover(), d.nerve(), &Window::new(&iv(1.3, 1.7)));
        assert_eq!(oracle_union_homology(&d, &k), vec![2, 0]);
        assert_eq!(oracle_union_homology(&d, &d.nerve().full()), vec![1, 1]);
        assert_eq!(oracle_union_homology(&d, &SubNerve::empty()), vec![0, 0]);
    }

    #[test]
    fn exact_windows() {
        let w = Window::new(&iv(0.1, 0.3));
        let t = w.thicken(&exact(0.2));
        assert!(t.contains_interval(&iv(-0.05, 0.45)));
        assert!(!t.contains_interval(&iv(-0.2, 0.2)));
        // exact difference of the endpoints, not a rounded float
        let r = exact_resolution(&fine());
        assert_eq!(r, exact(1.2) + exact(0.5));
    }
}
