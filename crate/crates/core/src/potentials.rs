//! Parametric potential families on `[0, 4]` with closed-form derivatives of
//! every order, the induced circle function `g(t) = f(2 - 2t)`, and
//! monotonicity diagnostics.
//!
//! The families certifiable by the interpolation machinery are completely
//! monotone on `(0, 4]` (after an additive constant for the negative-power
//! family) and continuous at 0:
//!
//! - `gaussian:SIGMA`   — `f(t) = exp(-sigma t)`, `sigma > 0`
//! - `negpower:ALPHA`   — `f(t) = -t^alpha`, `0 < alpha < 1`
//! - `shifted:S:C`      — `f(t) = (t + C)^{-S/2}`, `S > 0`, `C > 0`
//!
//! Two additional kernels, `riesz:S` (`f(t) = t^{-S/2}`, `S > 0`) and `log`
//! (`f(t) = ln(1/t)/2`), are unbounded at `t = 0`; they are accepted for
//! energy and pointwise evaluation on distinct points but are rejected by
//! the certificate builder, which needs `f` continuous on all of `[0, 4]`.

use std::fmt;

use serde::Serialize;

use crate::catalog::PointConfiguration;
use crate::vecmath::{clamp_cos, norm};
use crate::{Error, Result};

/// Slack allowed when checking the `[0, 4]` evaluation domain.
const DOMAIN_SLACK: f64 = 1e-9;

/// A potential function `f` on `[0, 4]`, identified by family and parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialFamily {
    /// `f(t) = exp(-sigma t)`
    Gaussian { sigma: f64 },
    /// `f(t) = -t^alpha` with `alpha` in (0, 1); continuous extension `f(0) = 0`
    NegPower { alpha: f64 },
    /// `f(t) = (t + c)^{-s/2}` with `s, c > 0`
    ShiftedRiesz { s: f64, c: f64 },
    /// `f(t) = t^{-s/2}` with `s > 0`; singular at 0, evaluation only
    Riesz { s: f64 },
    /// `f(t) = ln(1/t)/2`; singular at 0, evaluation only
    Log,
}

impl PotentialFamily {
    /// Parse a CLI potential spec: `gaussian:SIGMA`, `negpower:ALPHA`,
    /// `shifted:S:C`, `riesz:S`, or `log`. Parameters are parsed as decimal
    /// floats exactly as written.
    pub fn parse(spec: &str) -> Result<Self> {
        let err = |reason: &str| Error::PotentialSpec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let mut parts = spec.trim().split(':');
        let family = parts.next().unwrap_or("").to_ascii_lowercase();
        let params: Vec<&str> = parts.collect();
        let num = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|_| err(&format!("'{s}' is not a number")))
        };
        match (family.as_str(), params.as_slice()) {
            ("gaussian", [sigma]) => {
                let sigma = num(sigma)?;
                if sigma > 0.0 {
                    Ok(Self::Gaussian { sigma })
                } else {
                    Err(err("sigma must be positive"))
                }
            }
            ("negpower", [alpha]) => {
                let alpha = num(alpha)?;
                if alpha > 0.0 && alpha < 1.0 {
                    Ok(Self::NegPower { alpha })
                } else {
                    Err(err("alpha must lie in (0, 1)"))
                }
            }
            ("shifted", [s, c]) => {
                let (s, c) = (num(s)?, num(c)?);
                if s > 0.0 && c > 0.0 {
                    Ok(Self::ShiftedRiesz { s, c })
                } else {
                    Err(err("s and c must be positive"))
                }
            }
            ("riesz", [s]) => {
                let s = num(s)?;
                if s > 0.0 {
                    Ok(Self::Riesz { s })
                } else {
                    Err(err("s must be positive"))
                }
            }
            ("log", []) => Ok(Self::Log),
            _ => Err(err(
                "expected gaussian:SIGMA, negpower:ALPHA, shifted:S:C, riesz:S, or log",
            )),
        }
    }

    /// True when `f` diverges at `t = 0` (evaluation-only kernels).
    pub fn singular_at_zero(&self) -> bool {
        matches!(self, Self::Riesz { .. } | Self::Log)
    }

    /// True for the families the certificate builder accepts: continuous on
    /// `[0, 4]` with closed-form derivatives of every order.
    pub fn supports_certificates(&self) -> bool {
        !self.singular_at_zero()
    }

    /// `f(0)` by continuous extension where it exists.
    pub fn value_at_zero(&self) -> Result<f64> {
        match self {
            Self::Gaussian { .. } => Ok(1.0),
            Self::NegPower { .. } => Ok(0.0),
            Self::ShiftedRiesz { s, c } => Ok(c.powf(-s / 2.0)),
            Self::Riesz { .. } | Self::Log => {
                Err(Error::Domain(format!("{self} is unbounded at t = 0")))
            }
        }
    }

    /// `f^{(order)}(t)` in closed form. `t` must lie in `[0, 4]`; families
    /// singular at the origin (and NegPower for `order >= 1`) require `t > 0`.
    pub fn eval(&self, t: f64, order: usize) -> Result<f64> {
        if !(-DOMAIN_SLACK..=4.0 + DOMAIN_SLACK).contains(&t) {
            return Err(Error::Domain(format!(
                "potential argument {t} outside [0, 4]"
            )));
        }
        let t = t.clamp(0.0, 4.0);
        match *self {
            Self::Gaussian { sigma } => Ok((-sigma).powi(order as i32) * (-sigma * t).exp()),
            Self::NegPower { alpha } => {
                if order == 0 {
                    Ok(-t.powf(alpha))
                } else if t <= 0.0 {
                    Err(Error::Domain(
                        "negpower derivatives are singular at t = 0".into(),
                    ))
                } else {
                    let mut coeff = -1.0;
                    for i in 0..order {
                        coeff *= alpha - i as f64;
                    }
                    Ok(coeff * t.powf(alpha - order as f64))
                }
            }
            Self::ShiftedRiesz { s, c } => {
                let mut coeff = 1.0;
                for i in 0..order {
                    coeff *= -s / 2.0 - i as f64;
                }
                Ok(coeff * (t + c).powf(-s / 2.0 - order as f64))
            }
            Self::Riesz { s } => {
                if t <= 0.0 {
                    return Err(Error::Domain("riesz kernel is singular at t = 0".into()));
                }
                let mut coeff = 1.0;
                for i in 0..order {
                    coeff *= -s / 2.0 - i as f64;
                }
                Ok(coeff * t.powf(-s / 2.0 - order as f64))
            }
            Self::Log => {
                if t <= 0.0 {
                    return Err(Error::Domain("log kernel is singular at t = 0".into()));
                }
                if order == 0 {
                    Ok(-0.5 * t.ln())
                } else {
                    // d^k/dt^k ln t = (-1)^{k-1} (k-1)! t^{-k}
                    let mut fact = 1.0;
                    for i in 1..order {
                        fact *= i as f64;
                    }
                    let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
                    Ok(0.5 * sign * fact * t.powi(-(order as i32)))
                }
            }
        }
    }
}

impl fmt::Display for PotentialFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Gaussian { sigma } => write!(f, "gaussian:{sigma}"),
            Self::NegPower { alpha } => write!(f, "negpower:{alpha}"),
            Self::ShiftedRiesz { s, c } => write!(f, "shifted:{s}:{c}"),
            Self::Riesz { s } => write!(f, "riesz:{s}"),
            Self::Log => write!(f, "log"),
        }
    }
}

/// The circle function `g(t) = f(2 - 2t)` on `[-1, 1]` together with its
/// derivatives `g^{(k)}(t) = (-2)^k f^{(k)}(2 - 2t)`.
#[derive(Debug, Clone, Copy)]
pub struct CircleFunction {
    source: PotentialFamily,
    max_order: usize,
}

impl CircleFunction {
    pub fn new(source: PotentialFamily) -> Self {
        Self {
            source,
            max_order: 24,
        }
    }

    pub fn with_max_order(source: PotentialFamily, max_order: usize) -> Self {
        Self { source, max_order }
    }

    pub fn family(&self) -> &PotentialFamily {
        &self.source
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    /// `g^{(order)}(t)` for `t` in `[-1, 1]`. Families whose `f` is singular
    /// at 0 exclude `t = 1` (and NegPower excludes it for `order >= 1`).
    pub fn g(&self, t: f64, order: usize) -> Result<f64> {
        if t.abs() > 1.0 + 1e-12 {
            return Err(Error::Domain(format!(
                "circle argument {t} outside [-1, 1]"
            )));
        }
        if order > self.max_order {
            return Err(Error::Domain(format!(
                "derivative order {order} exceeds declared maximum {}",
                self.max_order
            )));
        }
        let u = (2.0 - 2.0 * clamp_cos(t)).clamp(0.0, 4.0);
        let chain = (-2.0_f64).powi(order as i32);
        Ok(chain * self.source.eval(u, order)?)
    }
}

/// Minimum of `(-1)^k f^{(k)}` over a grid on `(0, 4]`, per order.
#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityRow {
    pub order: usize,
    pub min_value: f64,
}

/// Grid scan of the complete-monotonicity signs `(-1)^k f^{(k)} >= 0`.
#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityReport {
    pub family: String,
    pub rows: Vec<MonotonicityRow>,
    /// Orders whose scanned minimum is negative beyond rounding.
    pub violations: Vec<usize>,
}

/// Scan `(-1)^k f^{(k)}` for `k = 0..=orders` over `grid` points of `(0, 4]`.
/// The negative-power family is reported only for `k >= 1`: it is completely
/// monotone only up to an additive constant, which shifts `k = 0` alone.
pub fn monotonicity_scan(fam: &PotentialFamily, orders: usize, grid: usize) -> MonotonicityReport {
    let grid = grid.max(2);
    let start_order = usize::from(matches!(fam, PotentialFamily::NegPower { .. }));
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for k in start_order..=orders {
        let mut min_value = f64::INFINITY;
        for i in 1..=grid {
            let t = 4.0 * i as f64 / grid as f64;
            if let Ok(v) = fam.eval(t, k) {
                let signed = if k % 2 == 0 { v } else { -v };
                min_value = min_value.min(signed);
            }
        }
        if min_value < -1e-12 {
            violations.push(k);
        }
        rows.push(MonotonicityRow {
            order: k,
            min_value,
        });
    }
    MonotonicityReport {
        family: fam.to_string(),
        rows,
        violations,
    }
}

/// Squared distance computed coordinate-wise, clamped to [0, 4]. Agrees
/// with `2 - 2 x.y` to rounding but is exactly 0 at coincidence and keeps
/// its relative accuracy there, which the singular-slope families need.
#[inline]
fn dist_sq(x: &[f64], p: &[f64]) -> f64 {
    let mut u = 0.0;
    for (a, b) in x.iter().zip(p) {
        let d = a - b;
        u += d * d;
    }
    u.clamp(0.0, 4.0)
}

/// Total potential `p_f(x) = sum_i f(|x - x_i|^2)`. `x` must be unit length
/// within 1e-9.
pub fn potential_value(x: &[f64], cfg: &PointConfiguration, fam: &PotentialFamily) -> Result<f64> {
    let deviation = (norm(x) - 1.0).abs();
    if deviation > 1e-9 {
        return Err(Error::NonUnitVector {
            deviation,
            tol: 1e-9,
        });
    }
    if x.len() != cfg.dim_d() + 1 {
        return Err(Error::Domain(format!(
            "point has {} coordinates, configuration lives in R^{}",
            x.len(),
            cfg.dim_d() + 1
        )));
    }
    if fam.singular_at_zero() {
        for p in cfg.iter() {
            if dist_sq(x, p) <= 0.0 {
                return Err(Error::Domain(format!(
                    "{fam} is singular at a configuration point"
                )));
            }
        }
    }
    Ok(potential_sum(cfg, fam, x))
}

/// Unchecked fast path for the search loops: returns +infinity when a
/// singular kernel hits an exact coincidence.
pub(crate) fn potential_sum(cfg: &PointConfiguration, fam: &PotentialFamily, x: &[f64]) -> f64 {
    let mut sum = 0.0;
    match *fam {
        PotentialFamily::Gaussian { sigma } => {
            for p in cfg.iter() {
                sum += (-sigma * dist_sq(x, p)).exp();
            }
        }
        PotentialFamily::NegPower { alpha } => {
            for p in cfg.iter() {
                sum -= dist_sq(x, p).powf(alpha);
            }
        }
        PotentialFamily::ShiftedRiesz { s, c } => {
            for p in cfg.iter() {
                sum += (dist_sq(x, p) + c).powf(-s / 2.0);
            }
        }
        PotentialFamily::Riesz { s } => {
            for p in cfg.iter() {
                let u = dist_sq(x, p);
                sum += if u <= 0.0 {
                    f64::INFINITY
                } else {
                    u.powf(-s / 2.0)
                };
            }
        }
        PotentialFamily::Log => {
            for p in cfg.iter() {
                let u = dist_sq(x, p);
                sum += if u <= 0.0 {
                    f64::INFINITY
                } else {
                    -0.5 * u.ln()
                };
            }
        }
    }
    sum
}

/// `g'(t)` without the `Result` plumbing, for the gradient inner loops.
/// `t` is clamped; singular coincidences return +/- infinity.
pub(crate) fn g_prime(fam: &PotentialFamily, t: f64) -> f64 {
    let u = (2.0 - 2.0 * clamp_cos(t)).clamp(0.0, 4.0);
    match *fam {
        PotentialFamily::Gaussian { sigma } => 2.0 * sigma * (-sigma * u).exp(),
        PotentialFamily::NegPower { alpha } => {
            if u <= 0.0 {
                f64::INFINITY
            } else {
                2.0 * alpha * u.powf(alpha - 1.0)
            }
        }
        PotentialFamily::ShiftedRiesz { s, c } => s * (u + c).powf(-s / 2.0 - 1.0),
        PotentialFamily::Riesz { s } => {
            if u <= 0.0 {
                f64::INFINITY
            } else {
                s * u.powf(-s / 2.0 - 1.0)
            }
        }
        PotentialFamily::Log => {
            if u <= 0.0 {
                f64::INFINITY
            } else {
                1.0 / u
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::vecmath::dot;
    use approx::assert_abs_diff_eq;

    #[test]
    fn eval_examples() {
        let g = PotentialFamily::Gaussian { sigma: 1.0 };
        assert_abs_diff_eq!(g.eval(0.0, 0).unwrap(), 1.0);

        let np = PotentialFamily::NegPower { alpha: 0.5 };
        assert_abs_diff_eq!(np.eval(4.0, 0).unwrap(), -2.0);

        let sr = PotentialFamily::ShiftedRiesz { s: 2.0, c: 1.0 };
        assert_abs_diff_eq!(sr.eval(1.0, 1).unwrap(), -0.25, epsilon = 1e-15);
    }

    #[test]
    fn eval_matches_finite_differences() {
        let h = 1e-5;
        let fams = [
            PotentialFamily::Gaussian { sigma: 1.0 },
            PotentialFamily::NegPower { alpha: 0.5 },
            PotentialFamily::ShiftedRiesz { s: 2.0, c: 0.5 },
        ];
        for fam in fams {
            for order in 1..=4 {
                for i in 0..20 {
                    let t = 0.5 + 3.0 * i as f64 / 19.0;
                    let fd = (fam.eval(t + h, order - 1).unwrap()
                        - fam.eval(t - h, order - 1).unwrap())
                        / (2.0 * h);
                    let exact = fam.eval(t, order).unwrap();
                    let scale = exact.abs().max(1e-6);
                    assert!(
                        ((fd - exact) / scale).abs() < 1e-6,
                        "{fam} order {order} at {t}: fd {fd} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn eval_domain_errors() {
        let g = PotentialFamily::Gaussian { sigma: 1.0 };
        assert!(g.eval(-0.5, 0).is_err());
        assert!(g.eval(4.5, 0).is_err());
        let np = PotentialFamily::NegPower { alpha: 0.5 };
        assert!(np.eval(0.0, 1).is_err());
        assert_abs_diff_eq!(np.eval(0.0, 0).unwrap(), 0.0);
    }

    #[test]
    fn circle_function_examples() {
        let cf = CircleFunction::new(PotentialFamily::Gaussian { sigma: 1.0 });
        assert_abs_diff_eq!(cf.g(1.0, 0).unwrap(), 1.0);
        assert_abs_diff_eq!(
            cf.g(0.0, 2).unwrap(),
            4.0 * (-2.0_f64).exp(),
            epsilon = 1e-15
        );

        let cf = CircleFunction::new(PotentialFamily::NegPower { alpha: 0.5 });
        assert_abs_diff_eq!(cf.g(-1.0, 0).unwrap(), -2.0);
        assert!(cf.g(1.0, 1).is_err(), "derivative singular at t = 1");
        assert_abs_diff_eq!(cf.g(1.0, 0).unwrap(), 0.0);
    }

    #[test]
    fn circle_derivatives_match_finite_differences() {
        let fams = [
            PotentialFamily::Gaussian { sigma: 0.25 },
            PotentialFamily::Gaussian { sigma: 4.0 },
            PotentialFamily::NegPower { alpha: 0.5 },
            PotentialFamily::ShiftedRiesz { s: 2.0, c: 0.5 },
        ];
        let h = 1e-5;
        for fam in fams {
            let cf = CircleFunction::new(fam);
            for order in 1..=6 {
                for i in 0..100 {
                    let t = -0.9 + 1.8 * i as f64 / 99.0;
                    let fd = (cf.g(t + h, order - 1).unwrap() - cf.g(t - h, order - 1).unwrap())
                        / (2.0 * h);
                    let exact = cf.g(t, order).unwrap();
                    let scale = exact.abs().max(1.0);
                    assert!(
                        ((fd - exact) / scale).abs() < 1e-6,
                        "{fam} g^({order}) at {t}"
                    );
                }
            }
        }
    }

    #[test]
    fn monotonicity_scans() {
        let rep = monotonicity_scan(&PotentialFamily::Gaussian { sigma: 1.0 }, 6, 400);
        assert!(rep.violations.is_empty());
        assert!(rep.rows.iter().all(|r| r.min_value > 0.0));

        let rep = monotonicity_scan(&PotentialFamily::ShiftedRiesz { s: 1.0, c: 0.5 }, 6, 400);
        assert!(rep.violations.is_empty());
        assert!(rep.rows.iter().all(|r| r.min_value > 0.0));

        let rep = monotonicity_scan(&PotentialFamily::NegPower { alpha: 0.5 }, 6, 400);
        assert!(rep.violations.is_empty());
        assert_eq!(rep.rows[0].order, 1, "negpower reports start at k = 1");
        assert!(rep.rows.iter().all(|r| r.min_value > 0.0));
    }

    #[test]
    fn potential_value_closed_forms() {
        let gauss = PotentialFamily::Gaussian { sigma: 1.0 };
        let tri = catalog::polygon(3).unwrap();
        let v = potential_value(tri.point(0), &tri, &gauss).unwrap();
        assert_abs_diff_eq!(v, 1.0 + 2.0 * (-3.0_f64).exp(), epsilon = 1e-12);

        let sq = catalog::polygon(4).unwrap();
        let v = potential_value(sq.point(0), &sq, &gauss).unwrap();
        let e2 = (-2.0_f64).exp();
        assert_abs_diff_eq!(v, (1.0 + e2) * (1.0 + e2), epsilon = 1e-12);

        let oct = catalog::cross_polytope(2).unwrap();
        let v = potential_value(oct.point(0), &oct, &gauss).unwrap();
        assert_abs_diff_eq!(
            v,
            1.0 + 4.0 * (-2.0_f64).exp() + (-4.0_f64).exp(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn potential_value_rejects_bad_input() {
        let sq = catalog::polygon(4).unwrap();
        let gauss = PotentialFamily::Gaussian { sigma: 1.0 };
        assert!(potential_value(&[2.0, 0.0], &sq, &gauss).is_err());
        // singular kernel at a configuration point
        let riesz = PotentialFamily::Riesz { s: 1.0 };
        assert!(potential_value(sq.point(0), &sq, &riesz).is_err());
        let z = vec![(0.3f64).cos(), (0.3f64).sin()];
        assert!(potential_value(&z, &sq, &riesz).unwrap().is_finite());
    }

    #[test]
    fn distance_route_matches_dot_route() {
        let cfg = catalog::icosahedron();
        let fam = PotentialFamily::Gaussian { sigma: 0.7 };
        let z = crate::vecmath::normalized(vec![0.3, -0.5, 1.1]);
        let value = potential_value(&z, &cfg, &fam).unwrap();
        let via_dots: f64 = cfg
            .iter()
            .map(|p| {
                let u = (2.0 - 2.0 * dot(&z, p)).clamp(0.0, 4.0);
                fam.eval(u, 0).unwrap()
            })
            .sum();
        assert_abs_diff_eq!(value, via_dots, epsilon = 1e-12);
    }

    #[test]
    fn parse_round_trips() {
        for spec in [
            "gaussian:1",
            "gaussian:0.25",
            "negpower:0.5",
            "shifted:2:0.5",
            "riesz:1",
            "log",
        ] {
            let fam = PotentialFamily::parse(spec).unwrap();
            assert_eq!(PotentialFamily::parse(&fam.to_string()).unwrap(), fam);
        }
        assert!(PotentialFamily::parse("gaussian:-1").is_err());
        assert!(PotentialFamily::parse("negpower:1.5").is_err());
        assert!(PotentialFamily::parse("boop:1").is_err());
        assert!(PotentialFamily::parse("shifted:2").is_err());
    }
}
