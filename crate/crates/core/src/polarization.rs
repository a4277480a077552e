//! Global extrema of the potential over the sphere, pair energies, and
//! seeded comparison trials against random competitor configurations.
//!
//! The searches are plain numerics: a dense angular grid with golden-section
//! refinement on `S^1`, and multistart projected gradient ascent with
//! backtracking on higher spheres (tangential gradient
//! `sum_i g'(x.x_i) (x_i - (x.x_i) x)`, normalization retraction).
//!
//! The comparison trials test the min-max inequality: the certified maximum
//! of a strongly sharp or antipodal sharp configuration never exceeds the
//! maximum of any competitor with the same cardinality. A competitor's
//! maximum estimated by finite search is only a lower bound, which could
//! flag false violations, so every trial also evaluates the potential at the
//! competitor's own points: the mean of those values already dominates the
//! reference (the energy mean-value chain), making the seeded estimate safe.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::catalog::PointConfiguration;
use crate::certificates::certify_max;
use crate::potentials::{g_prime, potential_sum, PotentialFamily};
use crate::vecmath::{angle_between, clamp_cos, dot, normalized};
use crate::{Error, Result};

/// Violation threshold for the comparison inequalities: a competitor's
/// estimate must fall below the certified reference by more than this to
/// count as a violation.
pub const VIOLATION_TOL: f64 = 1e-6;

/// Budgets and tolerances for the extremum searches.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SearchOptions {
    /// Multistart count on spheres of dimension d >= 2.
    pub starts: usize,
    /// Angular grid size on S^1.
    pub grid_size: usize,
    pub seed: u64,
    /// Relative gradient-norm stopping tolerance.
    pub tol: f64,
    /// Iteration cap per ascent.
    pub max_iters: usize,
    /// Angular tolerance for clustering extremizers, radians.
    pub cluster_tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            starts: 500,
            grid_size: 1_000_000,
            seed: 0,
            tol: 1e-10,
            max_iters: 500,
            cluster_tol: 1e-4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStrategy {
    Grid,
    MultistartGradient,
}

/// Outcome of a global extremum search.
#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub best_value: f64,
    /// Extremizers within value tolerance of the best, clustered angularly.
    pub argmax: Vec<Vec<f64>>,
    pub starts: usize,
    pub converged_fraction: f64,
    pub strategy: SearchStrategy,
}

/// Pairwise energy and the mean-value identity check.
#[derive(Debug, Clone, Serialize)]
pub struct EnergyReport {
    pub config: String,
    pub n: usize,
    /// Ordered-pair sum `sum_{i != j} f(|x_i - x_j|^2)`.
    pub energy: f64,
    /// `|Q_f - (energy + N f(0)) / N|` when a certificate exists.
    pub mean_value_check: Option<f64>,
}

/// One comparison trial.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    /// RNG stream used for this trial.
    pub stream: u64,
    pub competitor_value: f64,
    /// Signed slack in the proven inequality; negative beyond the violation
    /// tolerance would contradict it.
    pub gap: f64,
    pub degenerate: bool,
}

/// Outcome of a batch of comparison trials against random competitors.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    /// Certified value for the sharp reference configuration.
    pub reference_value: f64,
    pub trials: usize,
    pub competitor_values: Vec<f64>,
    pub violations: usize,
    pub min_gap: f64,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

/// Uniform point on `S^{dim-1} x ... `: `dim` is the ambient dimension
/// (`d + 1` coordinates), sampled by normalizing a standard Gaussian.
pub fn random_unit_vector(dim: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1e-8 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

/// `n` i.i.d. uniform points on `S^d`; when `duplicate` is set, one random
/// point is copied over another slot, exercising the multiset case.
pub fn random_configuration(
    n: usize,
    d: usize,
    rng: &mut impl Rng,
    duplicate: bool,
) -> PointConfiguration {
    let mut points: Vec<Vec<f64>> = (0..n).map(|_| random_unit_vector(d + 1, rng)).collect();
    if duplicate && n >= 2 {
        let src = rng.gen_range(0..n);
        let mut dst = rng.gen_range(0..n);
        if dst == src {
            dst = (dst + 1) % n;
        }
        points[dst] = points[src].clone();
    }
    PointConfiguration::new("random", d, points).expect("normalized points")
}

/// Tangential gradient of the potential at `x`:
/// `sum_i g'(x.x_i) (x_i - (x.x_i) x)`.
pub fn tangential_gradient(cfg: &PointConfiguration, fam: &PotentialFamily, x: &[f64]) -> Vec<f64> {
    let dim = x.len();
    let mut grad = vec![0.0; dim];
    let mut radial = 0.0;
    for p in cfg.iter() {
        let t = clamp_cos(dot(x, p));
        let gp = g_prime(fam, t);
        for (gc, pc) in grad.iter_mut().zip(p) {
            *gc += gp * pc;
        }
        radial += gp * t;
    }
    for (gc, xc) in grad.iter_mut().zip(x) {
        *gc -= radial * xc;
    }
    grad
}

/// Projected gradient ascent/descent with Armijo backtracking and
/// normalization retraction. Returns (endpoint, potential value, converged).
fn ascend(
    cfg: &PointConfiguration,
    fam: &PotentialFamily,
    x0: Vec<f64>,
    maximize: bool,
    opts: &SearchOptions,
) -> (Vec<f64>, f64, bool) {
    let sign = if maximize { 1.0 } else { -1.0 };
    let mut x = x0;
    let mut fx = sign * potential_sum(cfg, fam, &x);
    if !fx.is_finite() {
        return (x, sign * fx, false);
    }
    let mut step = 0.25;
    let mut converged = false;
    let mut stagnant = 0u32;
    for _ in 0..opts.max_iters {
        let mut g = tangential_gradient(cfg, fam, &x);
        if !maximize {
            for c in &mut g {
                *c = -*c;
            }
        }
        let gn2: f64 = g.iter().map(|c| c * c).sum();
        let gn = gn2.sqrt();
        if !gn.is_finite() {
            return (x, sign * fx, false);
        }
        if gn <= opts.tol * fx.abs().max(1.0) {
            converged = true;
            break;
        }
        let mut accepted = false;
        let mut s = step;
        for _ in 0..60 {
            let y: Vec<f64> = normalized(x.iter().zip(&g).map(|(xc, gc)| xc + s * gc).collect());
            let fy = sign * potential_sum(cfg, fam, &y);
            if fy >= fx + 1e-4 * s * gn2 {
                stagnant = if fy - fx <= 1e-14 * fx.abs().max(1.0) {
                    stagnant + 1
                } else {
                    0
                };
                x = y;
                fx = fy;
                step = (s * 2.0).min(64.0);
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        // value-level stagnation or no Armijo progress at the smallest step:
        // numerically extremal (cusped potentials terminate here too)
        if !accepted || stagnant >= 3 {
            converged = true;
            break;
        }
    }
    (x, sign * fx, converged)
}

/// Greedy angular clustering: keep candidates within `value_tol` of the best
/// value, merge endpoints closer than `cluster_tol`, keep the best per
/// cluster. Deterministic given the candidate order.
fn cluster_extremizers(
    mut candidates: Vec<(Vec<f64>, f64)>,
    cluster_tol: f64,
    best: f64,
) -> Vec<Vec<f64>> {
    let value_tol = 1e-9 * best.abs().max(1.0);
    candidates.retain(|(_, v)| *v >= best - value_tol);
    candidates.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    let mut reps: Vec<(Vec<f64>, f64)> = Vec::new();
    for (x, v) in candidates {
        if !reps
            .iter()
            .any(|(r, _)| angle_between(r, &x) <= cluster_tol)
        {
            reps.push((x, v));
        }
    }
    reps.into_iter().map(|(x, _)| x).collect()
}

fn search_extremum(
    cfg: &PointConfiguration,
    fam: &PotentialFamily,
    maximize: bool,
    opts: &SearchOptions,
) -> SearchResult {
    if cfg.dim_d() == 1 {
        grid_search_circle(cfg, fam, maximize, opts)
    } else {
        multistart_search(cfg, fam, maximize, opts)
    }
}

fn grid_search_circle(
    cfg: &PointConfiguration,
    fam: &PotentialFamily,
    maximize: bool,
    opts: &SearchOptions,
) -> SearchResult {
    let sign = if maximize { 1.0 } else { -1.0 };
    let g = opts.grid_size.max(64);
    let two_pi = 2.0 * std::f64::consts::PI;
    let at = |theta: f64| -> f64 {
        let x = [theta.cos(), theta.sin()];
        sign * potential_sum(cfg, fam, &x)
    };
    let values: Vec<f64> = (0..g).map(|j| at(two_pi * j as f64 / g as f64)).collect();
    // refine every circular local maximum of the signed objective
    let mut candidates = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for j in 0..g {
        let prev = values[(j + g - 1) % g];
        let next = values[(j + 1) % g];
        let v = values[j];
        if v >= prev && v >= next {
            let center = two_pi * j as f64 / g as f64;
            let span = two_pi / g as f64;
            let (theta, v) = golden_max(at, center - span, center + span);
            best = best.max(v);
            candidates.push((vec![theta.cos(), theta.sin()], v));
        }
    }
    SearchResult {
        best_value: sign * best,
        argmax: cluster_extremizers(candidates, opts.cluster_tol, best),
        starts: g,
        converged_fraction: 1.0,
        strategy: SearchStrategy::Grid,
    }
}

/// Golden-section maximization on [a, b]; returns (argmax, max).
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..90 {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn multistart_search(
    cfg: &PointConfiguration,
    fam: &PotentialFamily,
    maximize: bool,
    opts: &SearchOptions,
) -> SearchResult {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut candidates = Vec::with_capacity(opts.starts);
    let mut best = f64::NEG_INFINITY;
    let mut converged = 0usize;
    let sign = if maximize { 1.0 } else { -1.0 };
    for _ in 0..opts.starts {
        let x0 = random_unit_vector(cfg.dim_d() + 1, &mut rng);
        let (x, v, ok) = ascend(cfg, fam, x0, maximize, opts);
        if ok {
            converged += 1;
        }
        let signed = sign * v;
        best = best.max(signed);
        candidates.push((x, signed));
    }
    SearchResult {
        best_value: sign * best,
        argmax: cluster_extremizers(candidates, opts.cluster_tol, best),
        starts: opts.starts,
        converged_fraction: converged as f64 / opts.starts.max(1) as f64,
        strategy: SearchStrategy::MultistartGradient,
    }
}

/// Global maximum of the potential. Dense grid plus refinement on `S^1`,
/// multistart gradient ascent on higher spheres. Families unbounded at
/// coincidence have no finite maximum and are rejected.
pub fn global_max(
    cfg: &PointConfiguration,
    fam: &PotentialFamily,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    if fam.singular_at_zero() {
        return Err(Error::Domain(format!(
            "{fam} is unbounded above on the sphere; no finite maximum"
        )));
    }
    Ok(search_extremum(cfg, fam, true, opts))
}

/// Global minimum of the potential (search only; minima carry no
/// certificate).
pub fn global_min(
    cfg: &PointConfiguration,
    fam: &PotentialFamily,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    Ok(search_extremum(cfg, fam, false, opts))
}

/// Ordered-pair energy `sum_{i != j} f(|x_i - x_j|^2)`, with the mean-value
/// identity reading `|Q_f - (energy + N f(0)) / N|` when the configuration
/// certifies under `fam`.
pub fn pair_energy(cfg: &PointConfiguration, fam: &PotentialFamily) -> Result<EnergyReport> {
    let n = cfg.len();
    let mut energy = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let u = cfg
                .point(i)
                .iter()
                .zip(cfg.point(j))
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .clamp(0.0, 4.0);
            if u <= 0.0 && fam.singular_at_zero() {
                return Err(Error::Domain(format!(
                    "{fam} is singular and the configuration has coincident points"
                )));
            }
            energy += 2.0 * fam.eval(u, 0)?;
        }
    }
    let mean_value_check = match certify_max(cfg, fam) {
        Ok(cert) => {
            let f0 = fam.value_at_zero()?;
            Some((cert.certified_max - (energy + n as f64 * f0) / n as f64).abs())
        }
        Err(_) => None,
    };
    Ok(EnergyReport {
        config: cfg.name().to_string(),
        n,
        energy,
        mean_value_check,
    })
}

/// Best lower estimate of a competitor's maximum: the potential at each of
/// its own points (whose mean already dominates any sharp reference), plus
/// ascents from the best three of those points and from `opts.starts`
/// random starts.
pub fn competitor_max_estimate(
    cfg: &PointConfiguration,
    fam: &PotentialFamily,
    opts: &SearchOptions,
    rng: &mut impl Rng,
) -> f64 {
    let mut point_values: Vec<(usize, f64)> = cfg
        .iter()
        .enumerate()
        .map(|(i, p)| (i, potential_sum(cfg, fam, p)))
        .collect();
    point_values.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    let mut best = point_values
        .first()
        .map(|(_, v)| *v)
        .unwrap_or(f64::NEG_INFINITY);
    for (i, _) in point_values.iter().take(3) {
        let (_, v, _) = ascend(cfg, fam, cfg.point(*i).to_vec(), true, opts);
        best = best.max(v);
    }
    for _ in 0..opts.starts {
        let x0 = random_unit_vector(cfg.dim_d() + 1, rng);
        let (_, v, _) = ascend(cfg, fam, x0, true, opts);
        best = best.max(v);
    }
    best
}

fn run_trials(
    cfg_sharp: &PointConfiguration,
    fam: &PotentialFamily,
    reference: f64,
    minimum_side: bool,
    trials: usize,
    seed: u64,
    opts: &SearchOptions,
) -> ComparisonReport {
    let n = cfg_sharp.len();
    let d = cfg_sharp.dim_d();
    let mut records = Vec::with_capacity(trials);
    let mut competitor_values = Vec::with_capacity(trials);
    let mut violations = 0usize;
    let mut min_gap = f64::INFINITY;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        // every eighth trial duplicates a point: the inequality covers
        // multisets, and coincident points must land strictly above
        let degenerate = trials >= 8 && trial % 8 == 7;
        let competitor = random_configuration(n, d, &mut rng, degenerate);
        let q_est = competitor_max_estimate(&competitor, fam, opts, &mut rng);
        // for the minimum-side inequality the competitor value is the
        // estimated minimum of the distance sum, -q_est; the slack in the
        // proven inequality is the same either way
        let competitor_value = if minimum_side { -q_est } else { q_est };
        let gap = q_est - reference;
        if gap < -VIOLATION_TOL {
            violations += 1;
        }
        min_gap = min_gap.min(gap);
        competitor_values.push(competitor_value);
        records.push(TrialRecord {
            trial,
            stream: trial as u64,
            competitor_value,
            gap,
            degenerate,
        });
    }
    ComparisonReport {
        reference_value: if minimum_side { -reference } else { reference },
        trials,
        competitor_values,
        violations,
        min_gap,
        records,
    }
}

/// Sample random `N`-point competitors and test the min-max inequality:
/// each competitor's maximum (estimated from below) must not undercut the
/// certified maximum of the sharp reference beyond [`VIOLATION_TOL`].
pub fn compare_random(
    cfg_sharp: &PointConfiguration,
    fam: &PotentialFamily,
    trials: usize,
    seed: u64,
    opts: &SearchOptions,
) -> Result<ComparisonReport> {
    let cert = certify_max(cfg_sharp, fam)?;
    Ok(run_trials(
        cfg_sharp,
        fam,
        cert.certified_max,
        false,
        trials,
        seed,
        opts,
    ))
}

/// Distance-sum form of the comparison for `0 < s < 2`: the minimum of
/// `sum_i |x - y_i|^s` over the sphere for any competitor never exceeds the
/// sharp reference's certified minimum. Uses the negative-power certificate
/// with `alpha = s/2` (the distance sum is minus that potential).
pub fn riesz_min_compare(
    cfg_sharp: &PointConfiguration,
    s: f64,
    trials: usize,
    seed: u64,
    opts: &SearchOptions,
) -> Result<ComparisonReport> {
    if !(0.0 < s && s < 2.0) {
        return Err(Error::Precondition(format!(
            "riesz exponent s = {s} must lie in (0, 2)"
        )));
    }
    let fam = PotentialFamily::NegPower { alpha: s / 2.0 };
    let cert = certify_max(cfg_sharp, &fam)?;
    Ok(run_trials(
        cfg_sharp,
        &fam,
        cert.certified_max,
        true,
        trials,
        seed,
        opts,
    ))
}

/// Gaussian-kernel specialization of [`compare_random`].
pub fn gaussian_max_compare(
    cfg_sharp: &PointConfiguration,
    sigma: f64,
    trials: usize,
    seed: u64,
    opts: &SearchOptions,
) -> Result<ComparisonReport> {
    if sigma <= 0.0 {
        return Err(Error::Precondition("sigma must be positive".into()));
    }
    compare_random(
        cfg_sharp,
        &PotentialFamily::Gaussian { sigma },
        trials,
        seed,
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::potentials::potential_value;
    use approx::assert_abs_diff_eq;

    fn gaussian(sigma: f64) -> PotentialFamily {
        PotentialFamily::Gaussian { sigma }
    }

    fn quick_opts() -> SearchOptions {
        SearchOptions {
            starts: 60,
            grid_size: 200_000,
            seed: 1,
            max_iters: 200,
            ..Default::default()
        }
    }

    #[test]
    fn square_max_on_grid() {
        let cfg = catalog::polygon(4).unwrap();
        let res = global_max(&cfg, &gaussian(1.0), &quick_opts()).unwrap();
        let e2 = (-2.0_f64).exp();
        assert_abs_diff_eq!(res.best_value, (1.0 + e2) * (1.0 + e2), epsilon = 1e-9);
        assert_eq!(res.argmax.len(), 4, "the four vertices maximize");
        for x in &res.argmax {
            let closest = cfg
                .iter()
                .map(|p| angle_between(p, x))
                .fold(f64::INFINITY, f64::min);
            assert!(closest <= 1e-4, "argmax {closest} rad from a vertex");
        }
    }

    #[test]
    fn square_min_at_edge_midpoints() {
        let cfg = catalog::polygon(4).unwrap();
        let res = global_min(&cfg, &gaussian(1.0), &quick_opts()).unwrap();
        let r2 = 2.0_f64.sqrt();
        let expect = 2.0 * (-2.0_f64).exp() * (r2.exp() + (-r2).exp());
        assert_abs_diff_eq!(res.best_value, expect, epsilon = 1e-9);
        assert_eq!(res.argmax.len(), 4, "the four edge midpoints minimize");
        for x in &res.argmax {
            let theta = x[1].atan2(x[0]);
            let k = (theta / std::f64::consts::FRAC_PI_2).rem_euclid(4.0);
            let frac = (k - k.round()).abs();
            assert!(
                (frac - 0.5).abs() < 1e-3 || frac > 0.4999,
                "midpoint angle {theta}"
            );
        }
    }

    #[test]
    fn antipodal_pair_on_s2() {
        let pts = vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, -1.0]];
        let cfg = PointConfiguration::new("pair", 2, pts).unwrap();
        let fam = gaussian(1.0);
        let res = global_max(&cfg, &fam, &quick_opts()).unwrap();
        assert_abs_diff_eq!(res.best_value, 1.0 + (-4.0_f64).exp(), epsilon = 1e-9);
        assert_eq!(res.argmax.len(), 2, "both poles maximize");
        let res = global_min(&cfg, &fam, &quick_opts()).unwrap();
        assert_abs_diff_eq!(res.best_value, 2.0 * (-2.0_f64).exp(), epsilon = 1e-9);
        for x in &res.argmax {
            assert!(x[2].abs() < 1e-4, "minimizers sit on the equator");
        }
    }

    #[test]
    fn tetrahedron_min_at_antipodes() {
        let cfg = catalog::simplex(2).unwrap();
        let res = global_min(&cfg, &gaussian(1.0), &quick_opts()).unwrap();
        for x in &res.argmax {
            let closest = cfg
                .iter()
                .map(|p| {
                    let negated: Vec<f64> = p.iter().map(|c| -c).collect();
                    angle_between(&negated, x)
                })
                .fold(f64::INFINITY, f64::min);
            assert!(closest <= 1e-4, "minimizer {closest} rad from an antipode");
        }
    }

    #[test]
    fn multistart_matches_certificate_on_s2() {
        let cfg = catalog::icosahedron();
        let fam = gaussian(1.0);
        let cert = certify_max(&cfg, &fam).unwrap();
        let res = global_max(&cfg, &fam, &quick_opts()).unwrap();
        assert_abs_diff_eq!(res.best_value, cert.certified_max, epsilon = 1e-7);
        assert!(res.converged_fraction > 0.9);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let cfg = catalog::icosahedron();
        let fams = [
            gaussian(1.0),
            PotentialFamily::ShiftedRiesz { s: 2.0, c: 0.5 },
            PotentialFamily::NegPower { alpha: 0.5 },
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = 1e-6;
        for fam in fams {
            for _ in 0..30 {
                let x = random_unit_vector(3, &mut rng);
                let mut v = random_unit_vector(3, &mut rng);
                let r = dot(&v, &x);
                for (vc, xc) in v.iter_mut().zip(&x) {
                    *vc -= r * xc;
                }
                let v = normalized(v);
                let grad = tangential_gradient(&cfg, &fam, &x);
                let analytic = dot(&grad, &v);
                let shift = |sgn: f64| {
                    let y: Vec<f64> =
                        normalized(x.iter().zip(&v).map(|(a, b)| a + sgn * h * b).collect());
                    potential_value(&y, &cfg, &fam).unwrap()
                };
                let fd = (shift(1.0) - shift(-1.0)) / (2.0 * h);
                let scale = analytic.abs().max(1.0);
                assert!(
                    ((analytic - fd) / scale).abs() < 1e-6,
                    "{fam}: analytic {analytic} vs fd {fd}"
                );
            }
        }
    }

    #[test]
    fn pair_energy_square() {
        let cfg = catalog::polygon(4).unwrap();
        let rep = pair_energy(&cfg, &gaussian(1.0)).unwrap();
        let expect = 4.0 * (2.0 * (-2.0_f64).exp() + (-4.0_f64).exp());
        assert_abs_diff_eq!(rep.energy, expect, epsilon = 1e-12);
        assert!(rep.mean_value_check.unwrap() <= 1e-12);
    }

    #[test]
    fn pair_energy_antipodal_pair() {
        let cfg = catalog::polygon(2).unwrap();
        let rep = pair_energy(&cfg, &gaussian(1.0)).unwrap();
        assert_abs_diff_eq!(rep.energy, 2.0 * (-4.0_f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn pair_energy_rejects_singular_on_coincident() {
        let pts = vec![vec![1.0, 0.0], vec![1.0, 0.0]];
        let cfg = PointConfiguration::new("dup", 1, pts).unwrap();
        assert!(pair_energy(&cfg, &PotentialFamily::Riesz { s: 1.0 }).is_err());
        assert!(pair_energy(&cfg, &gaussian(1.0)).is_ok());
    }

    #[test]
    fn rotated_copy_achieves_equality() {
        let cfg = catalog::polygon(4).unwrap();
        let fam = gaussian(1.0);
        let cert = certify_max(&cfg, &fam).unwrap();
        let c = 0.3_f64.cos();
        let s = 0.3_f64.sin();
        let rotated: Vec<Vec<f64>> = cfg
            .iter()
            .map(|p| vec![c * p[0] - s * p[1], s * p[0] + c * p[1]])
            .collect();
        let rotated = PointConfiguration::new("rotated", 1, rotated).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let est = competitor_max_estimate(&rotated, &fam, &quick_opts(), &mut rng);
        assert_abs_diff_eq!(est, cert.certified_max, epsilon = 1e-9);
    }

    #[test]
    fn compare_random_square() {
        let cfg = catalog::polygon(4).unwrap();
        let opts = SearchOptions {
            starts: 4,
            max_iters: 80,
            ..quick_opts()
        };
        let rep = compare_random(&cfg, &gaussian(1.0), 64, 42, &opts).unwrap();
        assert_eq!(rep.violations, 0);
        assert!(rep.min_gap > -VIOLATION_TOL);
        // competitors with a coincident pair sit strictly above the reference
        let degenerate: Vec<_> = rep.records.iter().filter(|r| r.degenerate).collect();
        assert!(!degenerate.is_empty());
        for r in degenerate {
            assert!(
                r.gap > 0.0,
                "degenerate trial {} gap {:.3e}",
                r.trial,
                r.gap
            );
        }
    }

    #[test]
    fn gaussian_compare_wrapper() {
        let cfg = catalog::cross_polytope(2).unwrap();
        let opts = SearchOptions {
            starts: 4,
            max_iters: 80,
            ..quick_opts()
        };
        let rep = gaussian_max_compare(&cfg, 1.0, 40, 11, &opts).unwrap();
        assert_eq!(rep.violations, 0);
        assert!(gaussian_max_compare(&cfg, 0.0, 4, 11, &opts).is_err());
    }

    #[test]
    fn riesz_compare_triangle() {
        let cfg = catalog::polygon(3).unwrap();
        let opts = SearchOptions {
            starts: 4,
            max_iters: 80,
            ..quick_opts()
        };
        let rep = riesz_min_compare(&cfg, 1.0, 48, 7, &opts).unwrap();
        assert_abs_diff_eq!(rep.reference_value, 2.0 * 3.0_f64.sqrt(), epsilon = 1e-12);
        assert_eq!(rep.violations, 0);
        // competitor minima never exceed the sharp reference's minimum
        for v in &rep.competitor_values {
            assert!(*v <= rep.reference_value + VIOLATION_TOL);
        }
        assert!(riesz_min_compare(&cfg, 2.5, 4, 7, &opts).is_err());
    }

    #[test]
    fn searches_are_deterministic_under_seed() {
        let cfg = catalog::icosahedron();
        let fam = gaussian(1.0);
        let opts = SearchOptions {
            starts: 20,
            max_iters: 120,
            ..quick_opts()
        };
        let a = global_max(&cfg, &fam, &opts).unwrap();
        let b = global_max(&cfg, &fam, &opts).unwrap();
        assert_eq!(a.best_value.to_bits(), b.best_value.to_bits());
        assert_eq!(a.argmax, b.argmax);
    }

    #[test]
    fn global_max_rejects_singular_family() {
        let cfg = catalog::polygon(4).unwrap();
        assert!(global_max(&cfg, &PotentialFamily::Riesz { s: 1.0 }, &quick_opts()).is_err());
        assert!(global_min(&cfg, &PotentialFamily::Riesz { s: 1.0 }, &quick_opts()).is_ok());
    }
}
