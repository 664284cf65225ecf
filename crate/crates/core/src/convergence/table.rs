//! Convergence of the extension to `L` under uniform refinement.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cosheaf::{build_cellular_leray, CosheafError};
use crate::cover::{refine, OpenInterval};
use crate::field::Field;
use crate::simplicial::{ScalarField, SimplicialComplex};

use super::interleaving::interleaving_check;
use super::pl::{critical_values, feature_scale, pl_preimage_dims};
use super::{continuous_extension, ConvergenceError, Window};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableParams {
    pub base_n: usize,
    pub overlap: f64,
    pub levels: usize,
    pub samples: usize,
    pub seed: u64,
    pub max_deg: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub level: usize,
    pub cover_size: usize,
    pub resolution: f64,
    /// Inadmissible levels are flagged and carry no counts.
    pub admissible: bool,
    pub samples: usize,
    /// Number of `(V, degree)` pairs where `dim C(V) ≠ dim H(f⁻¹(V))`.
    pub mismatches: Option<usize>,
    pub interleaving: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    pub critical_values: Vec<f64>,
    pub feature_scale: Option<f64>,
    pub intervals: Vec<OpenInterval>,
}

impl ConvergenceTable {
    /// Mismatch counts over admissible rows, in order.
    pub fn mismatch_series(&self) -> Vec<usize> {
        self.rows.iter().filter_map(|r| r.mismatches).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(
            "level,cover_size,resolution,admissible,samples,mismatches,interleaving\n",
        );
        for r in &self.rows {
            let opt = |v: Option<String>| v.unwrap_or_default();
            s.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.level,
                r.cover_size,
                r.resolution,
                r.admissible,
                r.samples,
                opt(r.mismatches.map(|m| m.to_string())),
                opt(r
                    .interleaving
                    .map(|b| if b { "pass".into() } else { "fail".into() })),
            ));
        }
        s
    }
}

/// Seeded intervals whose endpoints stay at least `δ` away from every critical
/// value, `δ` a third of the feature scale (or of the range when there is
/// only one critical value). Such intervals have stable preimage homology
/// under perturbations smaller than `δ`.
pub fn generic_intervals(
    f: &ScalarField,
    critical: &[f64],
    count: usize,
    seed: u64,
) -> Vec<OpenInterval> {
    let Some((lo, hi)) = f.range() else {
        return Vec::new();
    };
    let span = if hi > lo { hi - lo } else { 1.0 };
    let delta = feature_scale(critical).unwrap_or(span) / 3.0;
    let far = |y: f64| critical.iter().all(|&c| (y - c).abs() >= delta);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < 1_000_000 {
        attempts += 1;
        let a = rng.gen_range(lo - 2.0 * delta..hi + 2.0 * delta);
        let b = rng.gen_range(lo - 2.0 * delta..hi + 2.0 * delta);
        let (a, b) = (a.min(b), a.max(b));
        if b - a >= delta && far(a) && far(b) {
            out.push(OpenInterval { lo: a, hi: b });
        }
    }
    out
}

/// Seeded pairs `V ⊆ W` over the padded range of `f`; about one in eight has
/// `V = W`.
pub fn nested_pairs(f: &ScalarField, count: usize, seed: u64) -> Vec<(OpenInterval, OpenInterval)> {
    let (lo, hi) = f.range().unwrap_or((0.0, 1.0));
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let c = rng.gen_range(lo - 0.1 * span..hi + 0.1 * span);
            let h = span * rng.gen_range(0.01..0.5);
            let v = OpenInterval {
                lo: c - h,
                hi: c + h,
            };
            if rng.gen_ratio(1, 8) {
                return (v, v);
            }
            let a = span * rng.gen_range(0.0..0.6);
            let b = span * rng.gen_range(0.0..0.6);
            (
                v,
                OpenInterval {
                    lo: v.lo - a,
                    hi: v.hi + b,
                },
            )
        })
        .collect()
}

/// One row per refinement level `base_n · 2^k`, `k < levels`.
pub fn convergence_table<F: Field>(
    x: &Arc<SimplicialComplex>,
    f: &ScalarField,
    p: &TableParams,
) -> Result<ConvergenceTable, ConvergenceError> {
    if p.samples == 0 {
        return Err(ConvergenceError::InvalidParams(
            "at least one sample is needed".into(),
        ));
    }
    let (lo, hi) = f
        .range()
        .ok_or_else(|| ConvergenceError::InvalidParams("complex has no vertices".into()))?;
    let covers = refine(p.base_n, p.overlap, lo, hi, p.levels)?;
    let critical = critical_values::<F>(x, f);
    let intervals = generic_intervals(f, &critical, p.samples, p.seed);
    let truth: Vec<Vec<usize>> = intervals
        .iter()
        .map(|v| pl_preimage_dims::<F>(x, f, &Window::new(v), p.max_deg))
        .collect();
    let mut rows = Vec::with_capacity(covers.len());
    for (level, c) in covers.iter().enumerate() {
        let mut row = ConvergenceRow {
            level,
            cover_size: c.len(),
            resolution: c.resolution(),
            admissible: false,
            samples: intervals.len(),
            mismatches: None,
            interleaving: None,
        };
        let d = match build_cellular_leray::<F>(x, f, c, p.max_deg) {
            Ok(d) => d,
            Err(CosheafError::NotAdmissible(_)) => {
                rows.push(row);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        row.admissible = true;
        let mut mismatches = 0;
        for (v, t) in intervals.iter().zip(&truth) {
            let dims = continuous_extension(&d, v)?.dims();
            mismatches += dims.iter().zip(t).filter(|(a, b)| a != b).count();
        }
        row.mismatches = Some(mismatches);
        row.interleaving = Some(interleaving_check(&d, p.samples, p.seed)?.verdict);
        rows.push(row);
    }
    Ok(ConvergenceTable {
        rows,
        feature_scale: feature_scale(&critical),
        critical_values: critical,
        intervals,
    })
}
