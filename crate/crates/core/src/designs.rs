//! Spherical-design strength, sharpness classification, and the structural
//! checks that back the certification pipeline.
//!
//! A configuration is a spherical `n`-design when the configuration average
//! of every polynomial of degree at most `n` equals the sphere average.
//! Strength is tested through normalized Gegenbauer kernel sums
//! `S_k = (1/N^2) sum_{i,j} G_k(x_i . x_j)`: each `S_k` is nonnegative, and
//! `S_k = 0` for `k = 1..n` exactly characterizes strength-`n` designs. This
//! is numerically stable and costs `O(N^2)` per degree.
//!
//! Sphere averages of functions of a dot product reduce to integrals against
//! the weight `w_d(t) = gamma_d (1 - t^2)^{d/2-1}` on `[-1, 1]`; its monomial
//! moments have the closed form used by [`weight_moment`].

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{
    dot_products, inner_product_spectrum, is_antipodal, DotProductSet, PointConfiguration,
    DEFAULT_CLUSTER_TOL,
};
use crate::polarization::random_unit_vector;
use crate::vecmath::{clamp_cos, dot};
use crate::{Error, Result};

/// Default cap on the design strength search; every catalog member tops out
/// at strength 7 or below.
pub const DEFAULT_STRENGTH_CAP: usize = 12;

/// Default tolerance on the normalized kernel sums `S_k`.
pub const DEFAULT_DESIGN_TOL: f64 = 1e-9;

/// Ultraspherical polynomial for `S^d` normalized to 1 at `t = 1`,
/// evaluated by the three-term recurrence
/// `(k + d - 1) G_{k+1} = (2k + d - 1) t G_k - k G_{k-1}`.
/// For `d = 1` this reproduces the Chebyshev polynomials `T_k`.
pub fn gegenbauer(k: usize, d: usize, t: f64) -> Result<f64> {
    if d < 1 {
        return Err(Error::Domain("gegenbauer requires d >= 1".into()));
    }
    if t.abs() > 1.0 + 1e-12 {
        return Err(Error::Domain(format!(
            "gegenbauer argument {t} outside [-1, 1]"
        )));
    }
    let mut buf = vec![0.0; k + 1];
    gegenbauer_all(k, d, clamp_cos(t), &mut buf);
    Ok(buf[k])
}

/// Fill `out[0..=cap]` with `G_0(t) .. G_cap(t)`. `t` must already be clamped.
pub(crate) fn gegenbauer_all(cap: usize, d: usize, t: f64, out: &mut [f64]) {
    out[0] = 1.0;
    if cap == 0 {
        return;
    }
    out[1] = t;
    for k in 1..cap {
        let kf = k as f64;
        let df = d as f64;
        out[k + 1] = ((2.0 * kf + df - 1.0) * t * out[k] - kf * out[k - 1]) / (kf + df - 1.0);
    }
}

/// Moment of the projection weight: `int_{-1}^{1} t^k w_d(t) dt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightMoment {
    pub k: usize,
    pub value: f64,
}

/// Closed-form weight moment: zero for odd `k`, and for even `k` the product
/// of the ratios `(2j-1)/(2j+d-1)`, which is the Beta-function ratio in
/// recursive form.
pub fn weight_moment(k: usize, d: usize) -> WeightMoment {
    WeightMoment {
        k,
        value: weight_moments_upto(k, d)[k],
    }
}

/// Moments `mu_0 .. mu_kmax` for `S^d`.
pub(crate) fn weight_moments_upto(kmax: usize, d: usize) -> Vec<f64> {
    let mut mu = vec![0.0; kmax + 1];
    mu[0] = 1.0;
    let mut j = 2;
    while j <= kmax {
        mu[j] = mu[j - 2] * (j as f64 - 1.0) / (j as f64 + d as f64 - 1.0);
        j += 2;
    }
    mu
}

/// Normalized kernel sums `S_1 .. S_cap` over all ordered point pairs.
pub fn design_residuals(cfg: &PointConfiguration, cap: usize) -> Vec<f64> {
    let n = cfg.len();
    let d = cfg.dim_d();
    let mut sums = vec![0.0; cap + 1];
    let mut buf = vec![0.0; cap + 1];
    // off-diagonal pairs once, doubled; diagonal contributes G_k(1) = 1
    for i in 0..n {
        for j in (i + 1)..n {
            let t = clamp_cos(dot(cfg.point(i), cfg.point(j)));
            gegenbauer_all(cap, d, t, &mut buf);
            for k in 1..=cap {
                sums[k] += 2.0 * buf[k];
            }
        }
    }
    let nn = (n * n) as f64;
    (1..=cap).map(|k| (sums[k] + n as f64) / nn).collect()
}

/// Largest `n <= cap` such that `S_k <= tol` for every `1 <= k <= n`.
pub fn design_strength(cfg: &PointConfiguration, cap: usize, tol: f64) -> usize {
    let residuals = design_residuals(cfg, cap);
    let mut strength = 0;
    for (idx, s) in residuals.iter().enumerate() {
        if *s <= tol {
            strength = idx + 1;
        } else {
            break;
        }
    }
    strength
}

/// Design strength, dot-product spectrum, and the sharpness flags of a
/// configuration. A configuration with `m` spectrum values is `m`-sharp when
/// its strength reaches `2m - 1`, strongly `m`-sharp at `2m`.
#[derive(Debug, Clone, Serialize)]
pub struct SharpnessReport {
    #[serde(rename = "strength")]
    pub design_strength: usize,
    pub m: usize,
    pub spectrum: DotProductSet,
    pub antipodal: bool,
    #[serde(skip)]
    pub is_sharp: bool,
    #[serde(rename = "strongly_sharp")]
    pub is_strongly_sharp: bool,
    pub residuals: BTreeMap<usize, f64>,
}

/// Combine spectrum, strength (capped at `cap`, kernel tolerance `tol`),
/// and antipodality into a [`SharpnessReport`].
pub fn sharpness_report(cfg: &PointConfiguration, cap: usize, tol: f64) -> SharpnessReport {
    let spectrum = inner_product_spectrum(cfg);
    let m = spectrum.len();
    let residuals = design_residuals(cfg, cap);
    let mut strength = 0;
    for (idx, s) in residuals.iter().enumerate() {
        if *s <= tol {
            strength = idx + 1;
        } else {
            break;
        }
    }
    let antipodal = is_antipodal(cfg, DEFAULT_CLUSTER_TOL);
    SharpnessReport {
        design_strength: strength,
        m,
        spectrum,
        antipodal,
        is_sharp: m >= 1 && strength + 1 >= 2 * m,
        is_strongly_sharp: m >= 1 && strength >= 2 * m,
        residuals: residuals
            .iter()
            .enumerate()
            .map(|(idx, s)| (idx + 1, *s))
            .collect(),
    }
}

/// Evaluate a monomial-coefficient polynomial by Horner's rule.
pub(crate) fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

/// Maximum over sampled probe points `z` of
/// `| sum_i p(z . x_i) - N int p w_d |` for a monomial-coefficient
/// polynomial `p`. The sample always includes the configuration points plus
/// `trials` seeded uniform points, so a strength violation of a low-degree
/// witness cannot hide between samples. For `deg p` up to the design
/// strength the residual is rounding-level by design constancy.
pub fn design_constancy_residual(
    cfg: &PointConfiguration,
    poly: &[f64],
    trials: usize,
    seed: u64,
) -> f64 {
    let n = cfg.len() as f64;
    let mu = weight_moments_upto(poly.len().saturating_sub(1), cfg.dim_d());
    let expected: f64 = n * poly.iter().zip(&mu).map(|(c, m)| c * m).sum::<f64>();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sum_at =
        |z: &[f64]| -> f64 { cfg.iter().map(|p| horner(poly, clamp_cos(dot(z, p)))).sum() };
    let mut worst = 0.0_f64;
    for p in cfg.iter() {
        worst = worst.max((sum_at(p) - expected).abs());
    }
    for _ in 0..trials {
        let z = random_unit_vector(cfg.dim_d() + 1, &mut rng);
        worst = worst.max((sum_at(&z) - expected).abs());
    }
    worst
}

/// Minimum over sampled probes `z` of the number of distinct dot products
/// `|D(z, cfg)|`. Requires the configuration to be a `2n`-design; the
/// returned count is then at least `n + 1` for every probe.
pub fn min_dot_count(
    cfg: &PointConfiguration,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<usize> {
    if design_strength(cfg, 2 * n, DEFAULT_DESIGN_TOL) < 2 * n {
        return Err(Error::Precondition(format!(
            "configuration {} is not a {}-design",
            cfg.name(),
            2 * n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_count = usize::MAX;
    for _ in 0..trials.max(1) {
        let z = random_unit_vector(cfg.dim_d() + 1, &mut rng);
        let count = dot_products(&z, cfg, DEFAULT_CLUSTER_TOL)?.len();
        min_count = min_count.min(count);
    }
    Ok(min_count)
}

/// True iff the distinct-pair spectrum excludes -1 (within the clustering
/// tolerance). Holds for every strongly sharp configuration.
pub fn check_no_minus_one(cfg: &PointConfiguration) -> bool {
    let spectrum = inner_product_spectrum(cfg);
    spectrum
        .values
        .first()
        .map(|t| *t > -1.0 + DEFAULT_CLUSTER_TOL)
        .unwrap_or(true)
}
