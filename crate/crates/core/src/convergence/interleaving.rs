//! The `ε`-interleaving between `C` and `L`, `ε = res(𝒰)`, checked on samples.
//!
//! `L(V)` is the homology of the combinatorial preimage of `V`. For each
//! sample the candidate maps are
//! `φ_V = Φ_V⁻¹ ∘ H(P(V) ⊆ Y_V)` and `ψ_V = H(Y_V ⊆ P(V^ε)) ∘ Φ_V`, and both
//! triangles `ψ_V φ_V = L(V ⊆ V^ε)` and `φ_{V^ε} ψ_V = C(V ⊆ V^ε)` must hold
//! as matrix identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cosheaf::CellularCosheaf;
use crate::cover::{normalize, OpenInterval};
use crate::field::Field;
use crate::homology::{compose, homology, induced_map, Homology};
use crate::simplicial::induced_subcomplex;

use super::witness::mv_isomorphism;
use super::{exact_resolution, extension_map_between, sub_nerve_of, ConvergenceError, Window};

#[derive(Debug, Clone, PartialEq)]
pub struct InterleavingSample {
    pub interval: OpenInterval,
    /// `V ∩ ∪𝒰 ⊆ ∪_{K_V} U_σ ⊆ V^ε`, decided exactly.
    pub containment: bool,
    /// `ψ_V ∘ φ_V = L(V ⊆ V^ε)`
    pub triangle_l: bool,
    /// `φ_{V^ε} ∘ ψ_V = C(V ⊆ V^ε)`
    pub triangle_c: bool,
}

impl InterleavingSample {
    pub fn passed(&self) -> bool {
        self.containment && self.triangle_l && self.triangle_c
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterleavingReport {
    pub epsilon: f64,
    pub samples: Vec<InterleavingSample>,
    pub verdict: bool,
}

/// Sample intervals: centred alternately at cover-element midpoints, overlap
/// midpoints and uniform points of the padded range, with random widths.
pub fn interleaving_samples<F: Field>(
    d: &CellularCosheaf<F>,
    count: usize,
    seed: u64,
) -> Vec<OpenInterval> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = d.values().range().unwrap_or((0.0, 1.0));
    let span = (hi - lo).max(1e-9);
    let element_mids: Vec<f64> = d
        .cover()
        .elements()
        .iter()
        .map(OpenInterval::midpoint)
        .collect();
    let overlap_mids: Vec<f64> = (0..d.nerve().edge_count())
        .map(|e| d.nerve().edge_interval(e).midpoint())
        .collect();
    (0..count)
        .map(|k| {
            let centre = match k % 3 {
                0 if !element_mids.is_empty() => element_mids[(k / 3) % element_mids.len()],
                1 if !overlap_mids.is_empty() => overlap_mids[(k / 3) % overlap_mids.len()],
                _ => rng.gen_range(lo - 0.1 * span..hi + 0.1 * span),
            };
            let half = span * rng.gen_range(0.01..0.4);
            OpenInterval {
                lo: centre - half,
                hi: centre + half,
            }
        })
        .collect()
}

fn containment<F: Field>(
    d: &CellularCosheaf<F>,
    v: &Window,
    k: &crate::cover::SubNerve,
    eps: &Window,
) -> bool {
    let pieces = normalize(k.vertices.iter().map(|&i| *d.cover().element(i)).collect());
    // every maximal piece of V ∩ ∪𝒰 lies in one piece of the K_V union
    let all = normalize(d.cover().elements().to_vec());
    let inner = all.iter().filter(|p| v.meets(p)).all(|p| {
        let a = crate::cover::exact(p.lo).max(v.lo.clone());
        let b = crate::cover::exact(p.hi).min(v.hi.clone());
        pieces
            .iter()
            .any(|q| crate::cover::exact(q.lo) <= a && b <= crate::cover::exact(q.hi))
    });
    let outer = pieces.iter().all(|p| eps.contains_interval(p));
    inner && outer
}

pub fn interleaving_check<F: Field>(
    d: &CellularCosheaf<F>,
    samples: usize,
    seed: u64,
) -> Result<InterleavingReport, ConvergenceError> {
    let intervals = interleaving_samples(d, samples, seed);
    interleaving_on(d, &intervals)
}

/// The check on a given list of intervals.
pub fn interleaving_on<F: Field>(
    d: &CellularCosheaf<F>,
    intervals: &[OpenInterval],
) -> Result<InterleavingReport, ConvergenceError> {
    let eps = exact_resolution(d.cover());
    let x = d.complex();
    let f = d.values();
    let l = |w: &Window| -> std::sync::Arc<Homology<F>> {
        homology(
            &induced_subcomplex(x, |vertex| w.contains(f.value(vertex))),
            d.max_deg(),
        )
    };
    let mut out = Vec::with_capacity(intervals.len());
    for v in intervals {
        let wv = Window::new(v);
        let we = wv.thicken(&eps);
        let kv = sub_nerve_of(d.cover(), d.nerve(), &wv);
        let ke = sub_nerve_of(d.cover(), d.nerve(), &we);
        let containment = containment(d, &wv, &kv, &we);

        let phi_v = mv_isomorphism(d, &kv)?;
        let phi_e = mv_isomorphism(d, &ke)?;
        let lv = l(&wv);
        let le = l(&we);
        let phi = compose(&phi_v.inverse, &induced_map(&lv, &phi_v.union_homology)?)?;
        let psi = compose(&induced_map(&phi_v.union_homology, &le)?, &phi_v.map)?;
        let triangle_l = compose(&psi, &phi)? == induced_map(&lv, &le)?;
        let phi_eps = compose(&phi_e.inverse, &induced_map(&le, &phi_e.union_homology)?)?;
        let triangle_c =
            compose(&phi_eps, &psi)? == extension_map_between(&phi_v.extension, &phi_e.extension)?;
        out.push(InterleavingSample {
            interval: *v,
            containment,
            triangle_l,
            triangle_c,
        });
    }
    Ok(InterleavingReport {
        epsilon: d.cover().resolution(),
        verdict: out.iter().all(InterleavingSample::passed),
        samples: out,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{coarse, cover, fine, hexagon};
    use super::*;
    use crate::cosheaf::build_cellular_leray;
    use crate::field::{Gf2, Rational};

    #[test]
    fn hexagon_fine_and_coarse() {
        let (x, f) = hexagon();
        for c in [fine(), coarse()] {
            let d = build_cellular_leray::<Rational>(&x, &f, &c, 1).unwrap();
            let r = interleaving_check(&d, 20, 42).unwrap();
            assert_eq!(r.samples.len(), 20);
            assert!(r.verdict, "{r:?}");
            assert_eq!(r.epsilon, c.resolution());
        }
    }

    #[test]
    fn single_element_cover() {
        let (x, f) = hexagon();
        let d = build_cellular_leray::<Gf2>(&x, &f, &cover(&[(-1.0, 4.0)]), 1).unwrap();
        assert!(interleaving_check(&d, 10, 1).unwrap().verdict);
    }

    #[test]
    fn samples_are_seeded() {
        let (x, f) = hexagon();
        let d = build_cellular_leray::<Gf2>(&x, &f, &fine(), 1).unwrap();
        assert_eq!(
            interleaving_samples(&d, 9, 3),
            interleaving_samples(&d, 9, 3)
        );
        assert_ne!(
            interleaving_samples(&d, 9, 3),
            interleaving_samples(&d, 9, 4)
        );
    }
}
