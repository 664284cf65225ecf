//! Exact homology of PL preimages, and the critical values of `f`.
//!
//! `f` is extended affinely over simplices. For an open interval `V`, the
//! preimage `f⁻¹(V)` is homotopy equivalent to the order complex of the cells
//! whose open image meets `V` (that set of cells is closed under cofaces, and
//! each cell meets `f⁻¹(V)` in a convex set).

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::field::Field;
use crate::homology::Homology;
use crate::simplicial::{build_complex, ScalarField, SimplicialComplex};

use super::Window;

fn open_image_meets(f: &ScalarField, cell: &[usize], w: &Window) -> bool {
    let (lo, hi) = f.span(cell);
    if lo == hi {
        w.contains(lo)
    } else {
        w.meets(&crate::cover::OpenInterval { lo, hi })
    }
}

fn dims_of<F: Field>(
    maximal: &[Vec<usize>],
    ids: impl IntoIterator<Item = usize>,
    max_deg: usize,
) -> Vec<usize> {
    let values: Vec<(usize, f64)> = ids.into_iter().map(|id| (id, 0.0)).collect();
    let (k, _) = build_complex(maximal, &values).expect("well-formed by construction");
    Homology::<F>::compute(&Arc::new(k).whole(), max_deg).dims()
}

/// Betti numbers of `f⁻¹(V)` for the PL extension of `f`, degrees `0..=max_deg`.
pub fn pl_preimage_dims<F: Field>(
    x: &SimplicialComplex,
    f: &ScalarField,
    w: &Window,
    max_deg: usize,
) -> Vec<usize> {
    let top = x.max_dim().map_or(0, |d| d + 1);
    let mut offset = vec![0; top + 1];
    for d in 0..top {
        offset[d + 1] = offset[d] + x.count(d);
    }
    let member: Vec<Vec<bool>> = (0..top)
        .map(|d| {
            (0..x.count(d))
                .map(|i| open_image_meets(f, x.simplex(d, i), w))
                .collect()
        })
        .collect();
    let mut covered: Vec<Vec<bool>> = (0..top).map(|d| vec![false; x.count(d)]).collect();
    for d in 1..top {
        for (i, _) in member[d].iter().enumerate().filter(|(_, &m)| m) {
            for &fc in x.faces(d, i) {
                covered[d - 1][fc] = true;
            }
        }
    }
    // maximal chains descend by codimension one from a maximal cell
    fn descend(
        x: &SimplicialComplex,
        member: &[Vec<bool>],
        offset: &[usize],
        d: usize,
        i: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        prefix.push(offset[d] + i);
        let facets: Vec<usize> = if d == 0 {
            Vec::new()
        } else {
            x.faces(d, i)
                .iter()
                .copied()
                .filter(|&fc| member[d - 1][fc])
                .collect()
        };
        if facets.is_empty() {
            out.push(prefix.clone());
        }
        for fc in facets {
            descend(x, member, offset, d - 1, fc, prefix, out);
        }
        prefix.pop();
    }
    let mut chains = Vec::new();
    let mut ids = Vec::new();
    for d in 0..top {
        for i in 0..x.count(d) {
            if member[d][i] {
                ids.push(offset[d] + i);
                if !covered[d][i] {
                    descend(x, &member, &offset, d, i, &mut Vec::new(), &mut chains);
                }
            }
        }
    }
    dims_of::<F>(&chains, ids, max_deg)
}

/// Values at vertices whose lower or upper link is not acyclic; ties in `f`
/// are broken by vertex index. Sorted and deduplicated.
pub fn critical_values<F: Field>(x: &SimplicialComplex, f: &ScalarField) -> Vec<f64> {
    let n = x.vertex_count();
    let mut star: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for d in 1..=x.max_dim().unwrap_or(0) {
        for i in 0..x.count(d) {
            for &v in x.simplex(d, i) {
                star[v].push((d, i));
            }
        }
    }
    let below = |a: usize, b: usize| (f.value(a), a) < (f.value(b), b);
    let acyclic = |side: &[Vec<usize>]| {
        if side.is_empty() {
            return false;
        }
        let ids: BTreeSet<usize> = side.iter().flatten().copied().collect();
        let dims = dims_of::<F>(side, ids, x.max_dim().unwrap_or(0));
        dims[0] == 1 && dims[1..].iter().all(|&b| b == 0)
    };
    let mut out: Vec<f64> = Vec::new();
    for (v, cells) in star.iter().enumerate().take(n) {
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for &(d, i) in cells {
            let tau: Vec<usize> = x
                .simplex(d, i)
                .iter()
                .copied()
                .filter(|&u| u != v)
                .collect();
            if tau.iter().all(|&u| below(u, v)) {
                lower.push(tau);
            } else if tau.iter().all(|&u| below(v, u)) {
                upper.push(tau);
            }
        }
        if !acyclic(&lower) || !acyclic(&upper) {
            out.push(f.value(v));
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// Smallest gap between distinct critical values, if there are two.
pub fn feature_scale(critical: &[f64]) -> Option<f64> {
    critical
        .windows(2)
        .map(|w| w[1] - w[0])
        .min_by(f64::total_cmp)
}
