//! Shared oracles for the integration suites. These stay independent of the
//! library's computation paths: moments come from quadrature, sphere grids
//! from a Fibonacci lattice, geometry from first principles.

#![allow(dead_code)]

/// Weight moments `mu_0 .. mu_kmax` for `S^d` by composite Simpson on the
/// substituted integral `int_0^pi cos^k(t) sin^{d-1}(t) dt`, normalized by
/// the `k = 0` case. The substitution removes the endpoint singularity the
/// raw weight has for d = 1.
pub fn simpson_weight_moments(kmax: usize, d: usize, intervals: usize) -> Vec<f64> {
    let n = intervals + intervals % 2;
    let h = std::f64::consts::PI / n as f64;
    let mut num = vec![0.0; kmax + 1];
    let mut den = 0.0;
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let theta = h * i as f64;
        let c = theta.cos();
        let s = theta.sin().powi(d as i32 - 1);
        den += w * s;
        let mut ck = 1.0;
        for slot in num.iter_mut() {
            *slot += w * ck * s;
            ck *= c;
        }
    }
    num.iter().map(|v| v / den).collect()
}

/// `int_-1^1 f(t) w_d(t) dt` by the same substituted Simpson rule.
pub fn simpson_weighted_integral(f: impl Fn(f64) -> f64, d: usize, intervals: usize) -> f64 {
    let n = intervals + intervals % 2;
    let h = std::f64::consts::PI / n as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let theta = h * i as f64;
        let s = theta.sin().powi(d as i32 - 1);
        num += w * s * f(theta.cos());
        den += w * s;
    }
    num / den
}

/// Deterministic near-uniform grid of `n` points on S^2.
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden_angle = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden_angle * i as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn angle(a: &[f64], b: &[f64]) -> f64 {
    dot(a, b).clamp(-1.0, 1.0).acos()
}

/// Angle from `x` to the nearest configuration point.
pub fn angle_to_nearest(points: &[Vec<f64>], x: &[f64]) -> f64 {
    points
        .iter()
        .map(|p| angle(p, x))
        .fold(f64::INFINITY, f64::min)
}

/// Angle from `x` to the nearest negated configuration point.
pub fn angle_to_nearest_antipode(points: &[Vec<f64>], x: &[f64]) -> f64 {
    points
        .iter()
        .map(|p| {
            let neg: Vec<f64> = p.iter().map(|c| -c).collect();
            angle(&neg, x)
        })
        .fold(f64::INFINITY, f64::min)
}
