//! Small dense-vector helpers shared across modules.

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn normalized(mut v: Vec<f64>) -> Vec<f64> {
    let n = norm(&v);
    for c in &mut v {
        *c /= n;
    }
    v
}

/// Clamp a cosine to [-1, 1] so rounding never escapes the domain.
pub(crate) fn clamp_cos(t: f64) -> f64 {
    t.clamp(-1.0, 1.0)
}

/// Angle between two unit vectors, in radians.
pub(crate) fn angle_between(a: &[f64], b: &[f64]) -> f64 {
    clamp_cos(dot(a, b)).acos()
}
