//! Hermite interpolation certificates for the exact maximum of a potential
//! over the sphere.
//!
//! For a configuration whose distinct pairs realize the dot products
//! `t_1 < ... < t_m` (< 1), the certificate interpolates the circle function
//! `g(t) = f(2 - 2t)` by a polynomial `q` at the nodes `t_1, ..., t_m, 1`,
//! matching first derivatives at the interior nodes (and at `t_1` when
//! `nu = 1`). With `L = 2m - 2 + nu` and `g^{(L)}` convex, `q >= g` on the
//! whole interval, and since the configuration is a design of strength at
//! least `deg q`, the sum `sum_i q(x . x_i)` is the same constant for every
//! `x` on the sphere. At a configuration point all dot products are nodes,
//! so the constant equals the potential there: that value is the certified
//! absolute maximum.
//!
//! Strongly sharp configurations take `nu = 1` (their spectrum avoids -1);
//! antipodal sharp configurations take `nu = 0` with `t_1 = -1`.
//!
//! The polynomial is carried in Newton form on the repeated-node sequence --
//! stable for clustered nodes -- and expanded to monomial coefficients only
//! for the moment-based consistency reading.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::PointConfiguration;
use crate::designs::{
    horner, sharpness_report, weight_moments_upto, DEFAULT_DESIGN_TOL, DEFAULT_STRENGTH_CAP,
};
use crate::polarization::random_unit_vector;
use crate::potentials::{potential_value, CircleFunction, PotentialFamily};
use crate::vecmath::{clamp_cos, dot};
use crate::{Error, Result};

/// Grid size used when a certificate verifies dominance.
pub const DEFAULT_DOMINANCE_GRID: usize = 100_000;

/// Signed slack floor: `min(q - g)` must stay above `-SLACK_TOL * scale`.
pub const SLACK_TOL: f64 = 1e-9;

const INTERP_VALUE_TOL: f64 = 1e-11;
const INTERP_DERIV_TOL: f64 = 1e-9;
const CONSISTENCY_TOL: f64 = 1e-9;

/// Interpolation nodes `t_1 < ... < t_{m+1} = 1` with multiplicities
/// 2 at the interior nodes, `1 + nu` at `t_1`, and 1 at `t_{m+1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeSystem {
    nodes: Vec<f64>,
    nu: u8,
}

impl NodeSystem {
    /// `nu = 0` requires `t_1 = -1`; `nu = 1` requires `t_1 > -1`. Nodes must
    /// be strictly increasing with the last node equal to 1.
    pub fn new(mut nodes: Vec<f64>, nu: u8) -> Result<Self> {
        if nu > 1 {
            return Err(Error::InvalidNodeSystem("nu must be 0 or 1".into()));
        }
        if nodes.len() < 2 {
            return Err(Error::InvalidNodeSystem(
                "need at least two nodes (m >= 1)".into(),
            ));
        }
        for w in nodes.windows(2) {
            if w[1] - w[0] <= 1e-12 {
                return Err(Error::InvalidNodeSystem(format!(
                    "coincident nodes beyond declared multiplicity: {} and {}",
                    w[0], w[1]
                )));
            }
        }
        let last = *nodes.last().unwrap();
        if (last - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidNodeSystem(format!(
                "last node must be 1, got {last}"
            )));
        }
        *nodes.last_mut().unwrap() = 1.0;
        if nodes[0] < -1.0 - 1e-12 {
            return Err(Error::InvalidNodeSystem("nodes must lie in [-1, 1]".into()));
        }
        if nu == 0 {
            if (nodes[0] + 1.0).abs() > 1e-12 {
                return Err(Error::InvalidNodeSystem(format!(
                    "nu = 0 requires t_1 = -1, got {}",
                    nodes[0]
                )));
            }
            nodes[0] = -1.0;
        } else if nodes[0] <= -1.0 + 1e-12 {
            return Err(Error::InvalidNodeSystem("nu = 1 requires t_1 > -1".into()));
        }
        Ok(Self { nodes, nu })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn nu(&self) -> u8 {
        self.nu
    }

    pub fn m(&self) -> usize {
        self.nodes.len() - 1
    }

    /// `L = 2m - 2 + nu`; the interpolant has degree at most `L + 1`.
    pub fn big_l(&self) -> usize {
        2 * self.m() - 2 + self.nu as usize
    }

    /// Multiplicity of node `i`: sum over nodes is `L + 2`.
    pub fn multiplicity(&self, i: usize) -> usize {
        if i == self.nodes.len() - 1 {
            1
        } else if i == 0 {
            1 + self.nu as usize
        } else {
            2
        }
    }

    /// Node sequence with repetitions, ascending; length `L + 2`.
    pub(crate) fn expanded(&self) -> Vec<f64> {
        let mut z = Vec::with_capacity(self.big_l() + 2);
        for (i, t) in self.nodes.iter().enumerate() {
            for _ in 0..self.multiplicity(i) {
                z.push(*t);
            }
        }
        z
    }
}

/// Interpolating polynomial in Newton form on a repeated-node sequence,
/// with derived monomial coefficients. Newton evaluation is the source of
/// truth; the monomial form feeds the weight-moment consistency reading.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitePolynomial {
    nodes: Vec<f64>,
    newton: Vec<f64>,
    monomial: Vec<f64>,
}

impl HermitePolynomial {
    /// Degree bound (number of conditions minus one).
    pub fn degree_bound(&self) -> usize {
        self.newton.len() - 1
    }

    pub fn newton_coeffs(&self) -> &[f64] {
        &self.newton
    }

    pub fn monomial_coeffs(&self) -> &[f64] {
        &self.monomial
    }

    /// Evaluate the Newton form.
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.newton.len();
        let mut acc = self.newton[n - 1];
        for k in (0..n - 1).rev() {
            acc = acc * (t - self.nodes[k]) + self.newton[k];
        }
        acc
    }

    /// Evaluate the Newton form and its first derivative.
    pub fn eval_with_derivative(&self, t: f64) -> (f64, f64) {
        let n = self.newton.len();
        let mut p = self.newton[n - 1];
        let mut dp = 0.0;
        for k in (0..n - 1).rev() {
            let dt = t - self.nodes[k];
            dp = dp * dt + p;
            p = p * dt + self.newton[k];
        }
        (p, dp)
    }

    /// Evaluate the derived monomial form (consistency cross-check).
    pub fn eval_monomial(&self, t: f64) -> f64 {
        horner(&self.monomial, t)
    }

    /// A copy shifted by the constant `c` (used to exercise the dominance
    /// detector with a forced failure).
    pub fn offset(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.newton[0] += c;
        out.monomial[0] += c;
        out
    }
}

/// Newton divided-difference interpolant honoring the node system's value
/// and first-derivative conditions; degree at most `L + 1`.
pub fn hermite_interpolant(ns: &NodeSystem, cf: &CircleFunction) -> Result<HermitePolynomial> {
    let z = ns.expanded();
    let n = z.len();
    let mut coef: Vec<f64> = Vec::with_capacity(n);
    for t in &z {
        coef.push(cf.g(*t, 0)?);
    }
    for j in 1..n {
        for i in (j..n).rev() {
            let span = z[i] - z[i - j];
            coef[i] = if span == 0.0 {
                // repeated node; multiplicities <= 2 mean only j = 1 lands here
                cf.g(z[i], 1)?
            } else {
                (coef[i] - coef[i - 1]) / span
            };
        }
    }
    // expand to monomial coefficients
    let mut monomial = vec![0.0; n];
    monomial[0] = coef[n - 1];
    for (deg, k) in (0..n - 1).rev().enumerate() {
        // monomial <- monomial * (x - z_k) + coef[k]
        for i in (0..=deg + 1).rev() {
            let prev = if i > 0 { monomial[i - 1] } else { 0.0 };
            monomial[i] = prev - z[k] * monomial[i];
        }
        monomial[0] += coef[k];
    }
    Ok(HermitePolynomial {
        nodes: z,
        newton: coef,
        monomial,
    })
}

/// Minimum of `q - g` over a Chebyshev-distributed grid with golden-section
/// refinement around every interior local minimum. A nonnegative result (up
/// to rounding) confirms dominance.
pub fn verify_dominance(
    q: &HermitePolynomial,
    cf: &CircleFunction,
    grid_size: usize,
    refine: bool,
) -> Result<f64> {
    Ok(dominance_scan(q, cf, grid_size, refine)?.0)
}

/// (min slack, scale) where scale = max(1, max |g| over the grid).
pub(crate) fn dominance_scan(
    q: &HermitePolynomial,
    cf: &CircleFunction,
    grid_size: usize,
    refine: bool,
) -> Result<(f64, f64)> {
    let gs = grid_size.max(8);
    let mut ts = Vec::with_capacity(gs);
    let mut slack = Vec::with_capacity(gs);
    let mut scale = 1.0_f64;
    for j in 0..gs {
        // Chebyshev angles walk t from 1 down to -1, clustering near the ends
        let t = (std::f64::consts::PI * j as f64 / (gs - 1) as f64).cos();
        let g = cf.g(t, 0)?;
        scale = scale.max(g.abs());
        ts.push(t);
        slack.push(q.eval(t) - g);
    }
    let mut min_slack = slack.iter().copied().fold(f64::INFINITY, f64::min);
    if refine {
        for j in 1..gs - 1 {
            if slack[j] <= slack[j - 1] && slack[j] <= slack[j + 1] {
                // ts is descending: bracket is [ts[j+1], ts[j-1]]
                let refined = golden_min(
                    |t| q.eval(t) - cf.g(t, 0).unwrap_or(f64::INFINITY),
                    ts[j + 1],
                    ts[j - 1],
                );
                min_slack = min_slack.min(refined);
            }
        }
    }
    Ok((min_slack, scale))
}

/// Golden-section minimization on [a, b]; returns the minimal value found.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut best = f(a).min(f(b));
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..90 {
        if f1 <= f2 {
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
    best = best.min(f1).min(f2);
    best
}

/// Agreement between the three readings of the certified value: the design
/// constant via weight moments, the direct potential at a configuration
/// point, and the worst potential deviation across all configuration points.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Consistency {
    /// `|certified - N sum_k a_k mu_k|`
    pub moment: f64,
    /// `|certified - p_f(y)|` at the reference configuration point
    pub potential: f64,
    /// `max_i |p_f(x_i) - certified|`
    pub constancy: f64,
}

/// A verified interpolation certificate: `certified_max` is the absolute
/// maximum of the potential over the sphere, attained at every
/// configuration point.
#[derive(Debug, Clone, Serialize)]
pub struct DominanceCertificate {
    pub config: String,
    pub potential: String,
    pub nu: u8,
    pub nodes: Vec<f64>,
    pub newton_coeffs: Vec<f64>,
    pub monomial_coeffs: Vec<f64>,
    pub certified_max: f64,
    pub min_slack: f64,
    pub consistency: Consistency,
    #[serde(skip)]
    node_system: NodeSystem,
    #[serde(skip)]
    polynomial: HermitePolynomial,
}

impl DominanceCertificate {
    pub fn node_system(&self) -> &NodeSystem {
        &self.node_system
    }

    pub fn polynomial(&self) -> &HermitePolynomial {
        &self.polynomial
    }
}

/// Build and verify the dominance certificate for a strongly sharp or an
/// antipodal sharp configuration under a certifiable potential family.
///
/// Strongly sharp: `nu = 1`, nodes are the spectrum plus 1 (the spectrum
/// avoids -1 for such configurations). Antipodal sharp: `nu = 0` with
/// `t_1 = -1`. Anything else is rejected. The interpolation residuals, the
/// dominance slack, the design strength against the polynomial degree, and
/// the three-way consistency of the certified value are all enforced here.
pub fn certify_max(
    cfg: &PointConfiguration,
    fam: &PotentialFamily,
) -> Result<DominanceCertificate> {
    if !fam.supports_certificates() {
        return Err(Error::UnsupportedConfiguration(format!(
            "{fam} is unbounded at t = 0 and cannot be max-certified"
        )));
    }
    let report = sharpness_report(cfg, DEFAULT_STRENGTH_CAP, DEFAULT_DESIGN_TOL);
    let mut nodes = report.spectrum.values.clone();
    let nu = if report.is_strongly_sharp {
        if nodes.first().is_some_and(|t| *t <= -1.0 + 1e-9) {
            return Err(Error::Internal(
                "strongly sharp configuration with -1 in its spectrum".into(),
            ));
        }
        1
    } else if report.antipodal && report.is_sharp {
        0
    } else {
        return Err(Error::UnsupportedConfiguration(format!(
            "{} is neither strongly sharp nor antipodal sharp \
             (strength {}, m {}, antipodal {})",
            cfg.name(),
            report.design_strength,
            report.m,
            report.antipodal
        )));
    };
    nodes.push(1.0);
    let ns = NodeSystem::new(nodes, nu)?;
    let cf = CircleFunction::new(*fam);
    let q = hermite_interpolant(&ns, &cf)?;

    if report.design_strength < q.degree_bound() {
        return Err(Error::Internal(format!(
            "design strength {} below interpolant degree {}",
            report.design_strength,
            q.degree_bound()
        )));
    }

    // interpolation residuals at the declared conditions
    let mut value_scale = 1.0_f64;
    let mut deriv_scale = 1.0_f64;
    for (i, t) in ns.nodes().iter().enumerate() {
        value_scale = value_scale.max(cf.g(*t, 0)?.abs());
        if ns.multiplicity(i) == 2 {
            deriv_scale = deriv_scale.max(cf.g(*t, 1)?.abs());
        }
    }
    for (i, t) in ns.nodes().iter().enumerate() {
        let (qv, qd) = q.eval_with_derivative(*t);
        let rv = (qv - cf.g(*t, 0)?).abs();
        if rv > INTERP_VALUE_TOL * value_scale {
            return Err(Error::Certification(format!(
                "interpolation residual {rv:.3e} at node {t}"
            )));
        }
        if ns.multiplicity(i) == 2 {
            let rd = (qd - cf.g(*t, 1)?).abs();
            if rd > INTERP_DERIV_TOL * deriv_scale {
                return Err(Error::Certification(format!(
                    "derivative residual {rd:.3e} at node {t}"
                )));
            }
        }
    }

    let (min_slack, scale) = dominance_scan(&q, &cf, DEFAULT_DOMINANCE_GRID, true)?;
    if min_slack < -SLACK_TOL * scale {
        return Err(Error::Certification(format!(
            "dominance violated: min slack {min_slack:.3e} at scale {scale:.3e}"
        )));
    }

    // three readings of the certified value
    let n = cfg.len() as f64;
    let y = cfg.point(0);
    let certified: f64 = cfg.iter().map(|p| q.eval(clamp_cos(dot(y, p)))).sum();
    let mu = weight_moments_upto(q.degree_bound(), cfg.dim_d());
    let via_moments: f64 = n * q
        .monomial_coeffs()
        .iter()
        .zip(&mu)
        .map(|(a, m)| a * m)
        .sum::<f64>();
    let via_potential = potential_value(y, cfg, fam)?;
    let mut constancy = 0.0_f64;
    for p in cfg.iter() {
        constancy = constancy.max((potential_value(p, cfg, fam)? - certified).abs());
    }
    let consistency = Consistency {
        moment: (certified - via_moments).abs(),
        potential: (certified - via_potential).abs(),
        constancy,
    };
    if consistency.moment > CONSISTENCY_TOL * n || consistency.potential > CONSISTENCY_TOL * n {
        return Err(Error::Internal(format!(
            "certified value readings disagree: moment {:.3e}, potential {:.3e}",
            consistency.moment, consistency.potential
        )));
    }

    Ok(DominanceCertificate {
        config: cfg.name().to_string(),
        potential: fam.to_string(),
        nu,
        nodes: ns.nodes().to_vec(),
        newton_coeffs: q.newton_coeffs().to_vec(),
        monomial_coeffs: q.monomial_coeffs().to_vec(),
        certified_max: certified,
        min_slack,
        consistency,
        node_system: ns,
        polynomial: q,
    })
}

/// Sample `samples` seeded uniform points; true iff the potential at every
/// sample is strictly below the certified maximum. For strictly completely
/// monotone families the maximizer set is exactly the configuration, so
/// random points (almost surely off the configuration) must sit strictly
/// below.
pub fn uniqueness_check(
    cert: &DominanceCertificate,
    cfg: &PointConfiguration,
    fam: &PotentialFamily,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let z = random_unit_vector(cfg.dim_d() + 1, &mut rng);
        if potential_value(&z, cfg, fam)? >= cert.certified_max {
            return Ok(false);
        }
    }
    Ok(true)
}
