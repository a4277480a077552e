//! Point configurations on the unit sphere `S^d` in `R^{d+1}`.
//!
//! Provides the named constructions (regular polygons, regular simplices,
//! cross-polytopes, the icosahedron, the 27-point two-distance configuration
//! on `S^5`, the 240-point `E_8` root shell), dot-product clustering, an
//! antipodality test, and JSON persistence for arbitrary user configurations.
//!
//! Configurations are multisets: duplicate points are permitted. They are
//! immutable after construction and all validation happens at construction
//! time, so values can be shared freely across threads.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::vecmath::{clamp_cos, dot, norm};
use crate::{Error, Result};

/// Unit-norm validation tolerance applied to every stored point.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Default absolute tolerance for clustering nearby dot products. The exact
/// constructions in this module keep distinct values at least 0.1 apart, so
/// clustering at this scale is unambiguous.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-9;

/// A finite multiset of unit vectors on `S^d`, `d >= 1`, with a text label.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfiguration {
    name: String,
    dim_d: usize,
    points: Vec<Vec<f64>>,
}

impl PointConfiguration {
    /// Validates dimensions and unit norms (tolerance [`UNIT_NORM_TOL`]).
    pub fn new(name: impl Into<String>, dim_d: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if dim_d < 1 {
            return Err(Error::Domain("sphere dimension d must be >= 1".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidCardinality { got: 0, min: 1 });
        }
        for p in &points {
            if p.len() != dim_d + 1 {
                return Err(Error::Domain(format!(
                    "point has {} coordinates, expected {}",
                    p.len(),
                    dim_d + 1
                )));
            }
            let deviation = (norm(p) - 1.0).abs();
            if deviation > UNIT_NORM_TOL {
                return Err(Error::NonUnitVector {
                    deviation,
                    tol: UNIT_NORM_TOL,
                });
            }
        }
        Ok(Self {
            name: name.into(),
            dim_d,
            points,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Sphere dimension `d` (the points live in `R^{d+1}`).
    pub fn dim_d(&self) -> usize {
        self.dim_d
    }

    /// Number of points `N`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<f64>> {
        self.points.iter()
    }
}

impl fmt::Display for PointConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (N={}, S^{})",
            self.name,
            self.points.len(),
            self.dim_d
        )
    }
}

/// Sorted distinct dot-product values after clustering at `clustering_tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct DotProductSet {
    pub values: Vec<f64>,
    pub clustering_tol: f64,
}

impl DotProductSet {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.values
            .iter()
            .any(|v| (v - t).abs() <= self.clustering_tol)
    }
}

// On the wire a dot-product set is just its sorted value list.
impl Serialize for DotProductSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.values.len()))?;
        for v in &self.values {
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

/// Cluster a list of cosines into distinct values: sort, group runs whose
/// consecutive gaps are <= `tol`, represent each group by its mean clamped
/// to [-1, 1].
pub(crate) fn cluster_sorted(mut values: Vec<f64>, tol: f64) -> Vec<f64> {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol {
            let group = &values[start..i];
            let mean = group.iter().sum::<f64>() / group.len() as f64;
            out.push(clamp_cos(mean));
            start = i;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Named constructions
// ---------------------------------------------------------------------------

/// `N` equally spaced points on `S^1`, first point at angle 0.
pub fn polygon(n: usize) -> Result<PointConfiguration> {
    if n < 2 {
        return Err(Error::InvalidCardinality { got: n, min: 2 });
    }
    let points = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            vec![theta.cos(), theta.sin()]
        })
        .collect();
    PointConfiguration::new(format!("polygon:{n}"), 1, points)
}

/// The `d+2` vertices of a regular simplex inscribed in `S^d`: all pairwise
/// dot products equal `-1/(d+1)`. Built by factoring the Gram matrix, which
/// keeps the coordinates numerically uniform across vertices.
pub fn simplex(d: usize) -> Result<PointConfiguration> {
    if d < 1 {
        return Err(Error::Domain("simplex requires d >= 1".into()));
    }
    let n = d + 2;
    let off = -1.0 / (d as f64 + 1.0);
    let gram: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { off }).collect())
        .collect();
    let points = gram_factor(&gram, d + 1)?;
    PointConfiguration::new(format!("simplex:{d}"), d, points)
}

/// The `2(d+1)` vertices `±e_i` of a regular cross-polytope inscribed in `S^d`.
pub fn cross_polytope(d: usize) -> Result<PointConfiguration> {
    if d < 1 {
        return Err(Error::Domain("cross-polytope requires d >= 1".into()));
    }
    let mut points = Vec::with_capacity(2 * (d + 1));
    for i in 0..=d {
        for sign in [1.0, -1.0] {
            let mut p = vec![0.0; d + 1];
            p[i] = sign;
            points.push(p);
        }
    }
    PointConfiguration::new(format!("cross-polytope:{d}"), d, points)
}

/// The 12 vertices of a regular icosahedron inscribed in `S^2`: cyclic
/// permutations of `(0, ±1, ±phi)` normalized, `phi` the golden ratio.
pub fn icosahedron() -> PointConfiguration {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let scale = 1.0 / (1.0 + phi * phi).sqrt();
    let mut points = Vec::with_capacity(12);
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            points.push(vec![0.0, s1 * scale, s2 * phi * scale]);
            points.push(vec![s1 * scale, s2 * phi * scale, 0.0]);
            points.push(vec![s2 * phi * scale, 0.0, s1 * scale]);
        }
    }
    PointConfiguration::new("icosahedron", 2, points).expect("exact construction")
}

/// The 240 minimal vectors of the `E_8` root lattice scaled onto `S^7`:
/// 112 vectors `(±1, ±1, 0^6)/sqrt(2)` over all position pairs and signs,
/// plus 128 vectors `(±1/2, ..., ±1/2)/sqrt(2)` with an even number of
/// minus signs.
pub fn e8_roots() -> PointConfiguration {
    let inv = 1.0 / 2.0_f64.sqrt();
    let mut points = Vec::with_capacity(240);
    for i in 0..8 {
        for j in (i + 1)..8 {
            for si in [1.0, -1.0] {
                for sj in [1.0, -1.0] {
                    let mut p = vec![0.0; 8];
                    p[i] = si * inv;
                    p[j] = sj * inv;
                    points.push(p);
                }
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let p = (0..8)
                .map(|b| {
                    let sign = if mask >> b & 1 == 1 { -1.0 } else { 1.0 };
                    sign * 0.5 * inv
                })
                .collect();
            points.push(p);
        }
    }
    debug_assert_eq!(points.len(), 240);
    PointConfiguration::new("e8", 7, points).expect("exact construction")
}

/// The 27-point two-distance configuration on `S^5` with dot products
/// `{-1/2, 1/4}` (27 vertices: `a_1..a_6`, `b_1..b_6`, `c_ij` for `i<j`).
///
/// Pairs at dot `-1/2` form the 10-regular incidence graph: `a_i ~ b_j` for
/// `i != j`, `a_i ~ c_jk` and `b_i ~ c_jk` for `i` in `{j,k}`, and
/// `c_ij ~ c_kl` for disjoint index pairs; all other distinct pairs sit at
/// `1/4`. The resulting Gram matrix is positive semidefinite of rank 6 and is
/// factored into unit vectors. The embedding is canonical only up to an
/// orthogonal transformation.
pub fn schlafli_27() -> PointConfiguration {
    let pairs: Vec<(usize, usize)> = (0..6)
        .flat_map(|i| ((i + 1)..6).map(move |j| (i, j)))
        .collect();
    let vertex_count = 27;
    // meets = pairs at dot -1/2
    let meets = |u: usize, v: usize| -> bool {
        let class = |x: usize| {
            if x < 6 {
                (0, x, 0)
            } else if x < 12 {
                (1, x - 6, 0)
            } else {
                let (i, j) = pairs[x - 12];
                (2, i, j)
            }
        };
        let (cu, u1, u2) = class(u);
        let (cv, v1, v2) = class(v);
        match (cu, cv) {
            (0, 0) | (1, 1) => false,
            (0, 1) | (1, 0) => u1 != v1,
            (0, 2) | (1, 2) => u1 == v1 || u1 == v2,
            (2, 0) | (2, 1) => v1 == u1 || v1 == u2,
            (2, 2) => u1 != v1 && u1 != v2 && u2 != v1 && u2 != v2,
            _ => unreachable!(),
        }
    };
    let gram: Vec<Vec<f64>> = (0..vertex_count)
        .map(|i| {
            (0..vertex_count)
                .map(|j| {
                    if i == j {
                        1.0
                    } else if meets(i, j) {
                        -0.5
                    } else {
                        0.25
                    }
                })
                .collect()
        })
        .collect();
    let points = gram_factor(&gram, 6).expect("gram matrix has rank 6");
    PointConfiguration::new("schlafli27", 5, points).expect("exact construction")
}

/// Factor a positive semidefinite Gram matrix of rank `rank` into unit rows:
/// pivoted Cholesky, largest remaining diagonal first. Rows come back in the
/// original index order and are renormalized to exact unit length.
fn gram_factor(gram: &[Vec<f64>], rank: usize) -> Result<Vec<Vec<f64>>> {
    let n = gram.len();
    let mut l = vec![vec![0.0; rank]; n];
    let mut diag: Vec<f64> = (0..n).map(|i| gram[i][i]).collect();
    let mut used = vec![false; n];
    for k in 0..rank {
        let p = (0..n)
            .filter(|&i| !used[i])
            .max_by(|&a, &b| diag[a].partial_cmp(&diag[b]).unwrap())
            .ok_or_else(|| Error::Internal("gram factorization ran out of pivots".into()))?;
        if diag[p] <= 1e-12 {
            return Err(Error::Internal(format!(
                "gram matrix rank {k} is below requested rank {rank}"
            )));
        }
        used[p] = true;
        let root = diag[p].sqrt();
        l[p][k] = root;
        let pivot_row = l[p].clone();
        for i in 0..n {
            if used[i] {
                continue;
            }
            let mut s = gram[i][p];
            for (a, b) in l[i][..k].iter().zip(&pivot_row[..k]) {
                s -= a * b;
            }
            l[i][k] = s / root;
            diag[i] -= l[i][k] * l[i][k];
        }
    }
    // Unit diagonal in the Gram matrix means rows are unit vectors up to
    // rounding; renormalize so construction-time validation is exact.
    for row in &mut l {
        let n = norm(row);
        for c in row.iter_mut() {
            *c /= n;
        }
    }
    Ok(l)
}

// ---------------------------------------------------------------------------
// Dot-product structure
// ---------------------------------------------------------------------------

/// The distinct dot products formed by the point `z` and the configuration,
/// clustered at `tol`. `z` must be unit length within 1e-9.
pub fn dot_products(z: &[f64], cfg: &PointConfiguration, tol: f64) -> Result<DotProductSet> {
    let deviation = (norm(z) - 1.0).abs();
    if deviation > 1e-9 {
        return Err(Error::NonUnitVector {
            deviation,
            tol: 1e-9,
        });
    }
    if z.len() != cfg.dim_d() + 1 {
        return Err(Error::Domain(format!(
            "probe point has {} coordinates, configuration lives in R^{}",
            z.len(),
            cfg.dim_d() + 1
        )));
    }
    let dots: Vec<f64> = cfg.iter().map(|p| clamp_cos(dot(z, p))).collect();
    Ok(DotProductSet {
        values: cluster_sorted(dots, tol),
        clustering_tol: tol,
    })
}

/// Distinct dot products over unordered distinct-index pairs, clustered at
/// [`DEFAULT_CLUSTER_TOL`].
pub fn inner_product_spectrum(cfg: &PointConfiguration) -> DotProductSet {
    let n = cfg.len();
    let mut dots = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            dots.push(clamp_cos(dot(cfg.point(i), cfg.point(j))));
        }
    }
    DotProductSet {
        values: cluster_sorted(dots, DEFAULT_CLUSTER_TOL),
        clustering_tol: DEFAULT_CLUSTER_TOL,
    }
}

/// True iff for every point its negation is also in the configuration
/// (within Euclidean distance `tol`).
pub fn is_antipodal(cfg: &PointConfiguration, tol: f64) -> bool {
    cfg.iter().all(|p| {
        cfg.iter().any(|q| {
            p.iter()
                .zip(q)
                .map(|(a, b)| (a + b) * (a + b))
                .sum::<f64>()
                .sqrt()
                <= tol
        })
    })
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct ConfigFile {
    name: String,
    dim: usize,
    points: Vec<Vec<f64>>,
}

/// Load a configuration from a JSON file `{"name", "dim", "points"}`.
/// Malformed files yield a parse error carrying line and column.
pub fn load(path: impl AsRef<Path>) -> Result<PointConfiguration> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let raw: ConfigFile = serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    PointConfiguration::new(raw.name, raw.dim, raw.points)
}

/// Save a configuration as JSON with 17 significant digits per coordinate,
/// enough for bit-exact save/load round trips.
pub fn save(cfg: &PointConfiguration, path: impl AsRef<Path>) -> Result<()> {
    let mut file = fs::File::create(path)?;
    write!(file, "{}", render_config(cfg))?;
    Ok(())
}

/// The JSON text written by [`save`].
pub fn render_config(cfg: &PointConfiguration) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{{\n  \"name\": {},\n  \"dim\": {},\n  \"points\": [\n",
        serde_json::to_string(cfg.name()).expect("string encodes"),
        cfg.dim_d()
    ));
    for (i, p) in cfg.iter().enumerate() {
        let coords: Vec<String> = p.iter().map(|c| format!("{c:.16e}")).collect();
        let sep = if i + 1 == cfg.len() { "" } else { "," };
        out.push_str(&format!("    [{}]{}\n", coords.join(", "), sep));
    }
    out.push_str("  ]\n}\n");
    out
}

// ---------------------------------------------------------------------------
// Catalog lookup
// ---------------------------------------------------------------------------

/// Canonical selector forms understood by [`by_name`].
pub const SELECTOR_FORMS: &[&str] = &[
    "polygon:N",
    "simplex:D",
    "cross-polytope:D",
    "icosahedron",
    "schlafli27",
    "e8",
];

/// Resolve a catalog selector such as `polygon:5`, `simplex:2`,
/// `cross-polytope:7`, `icosahedron`, `schlafli27`, or `e8`. Common aliases
/// (`triangle`, `square`, `pentagon`, `hexagon`, `tetrahedron`, `octahedron`)
/// are accepted.
pub fn by_name(name: &str) -> Result<PointConfiguration> {
    let lower = name.trim().to_ascii_lowercase();
    let canonical = match lower.as_str() {
        "triangle" => "polygon:3".to_string(),
        "square" => "polygon:4".to_string(),
        "pentagon" => "polygon:5".to_string(),
        "hexagon" => "polygon:6".to_string(),
        "tetrahedron" => "simplex:2".to_string(),
        "octahedron" => "cross-polytope:2".to_string(),
        "schlafli" => "schlafli27".to_string(),
        "e8-roots" | "e8_roots" => "e8".to_string(),
        other => other.to_string(),
    };
    match canonical.as_str() {
        "icosahedron" => return Ok(icosahedron()),
        "schlafli27" => return Ok(schlafli_27()),
        "e8" => return Ok(e8_roots()),
        _ => {}
    }
    if let Some((family, param)) = canonical.split_once(':') {
        let value: usize = param.parse().map_err(|_| Error::UnknownConfiguration {
            given: name.to_string(),
            suggestions: suggest(&canonical),
        })?;
        return match family {
            "polygon" => polygon(value),
            "simplex" => simplex(value),
            "cross-polytope" | "cross" => cross_polytope(value),
            _ => Err(Error::UnknownConfiguration {
                given: name.to_string(),
                suggestions: suggest(&canonical),
            }),
        };
    }
    Err(Error::UnknownConfiguration {
        given: name.to_string(),
        suggestions: suggest(&canonical),
    })
}

fn suggest(given: &str) -> Vec<String> {
    let known = [
        "polygon:N",
        "simplex:D",
        "cross-polytope:D",
        "icosahedron",
        "schlafli27",
        "e8",
        "triangle",
        "square",
        "tetrahedron",
        "octahedron",
    ];
    let stem: String = given.chars().take(3).collect();
    let mut out: Vec<String> = known
        .iter()
        .filter(|k| !stem.is_empty() && k.starts_with(&stem))
        .map(|k| k.to_string())
        .collect();
    if out.is_empty() {
        out = known.iter().take(6).map(|k| k.to_string()).collect();
    }
    out
}

/// The catalog roster exercised by the verification suites: polygons 2..=7,
/// simplices on S^2 and S^5, cross-polytopes on S^2 and S^7, the icosahedron,
/// the 27-point configuration, and the E8 shell.
pub fn standard_catalog() -> Vec<PointConfiguration> {
    let mut out = Vec::new();
    for n in 2..=7 {
        out.push(polygon(n).expect("n >= 2"));
    }
    out.push(simplex(2).expect("d >= 1"));
    out.push(simplex(5).expect("d >= 1"));
    out.push(cross_polytope(2).expect("d >= 1"));
    out.push(cross_polytope(7).expect("d >= 1"));
    out.push(icosahedron());
    out.push(schlafli_27());
    out.push(e8_roots());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polygon_four_matches_axes() {
        let cfg = polygon(4).unwrap();
        let expect = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        for (p, e) in cfg.iter().zip(expect.iter()) {
            assert_abs_diff_eq!(p[0], e[0], epsilon = 1e-15);
            assert_abs_diff_eq!(p[1], e[1], epsilon = 1e-15);
        }
    }

    #[test]
    fn polygon_three_has_constant_dot() {
        let cfg = polygon(3).unwrap();
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert_abs_diff_eq!(dot(cfg.point(i), cfg.point(j)), -0.5, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn polygon_five_spectrum() {
        let spec = inner_product_spectrum(&polygon(5).unwrap());
        assert_eq!(spec.len(), 2);
        let c1 = (2.0 * std::f64::consts::PI / 5.0).cos();
        let c2 = (4.0 * std::f64::consts::PI / 5.0).cos();
        assert_abs_diff_eq!(spec.values[0], c2, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.values[1], c1, epsilon = 1e-12);
    }

    #[test]
    fn polygon_rejects_single_point() {
        assert!(matches!(
            polygon(1),
            Err(Error::InvalidCardinality { got: 1, min: 2 })
        ));
    }

    #[test]
    fn simplex_gram_is_uniform() {
        for d in [1usize, 2, 5] {
            let cfg = simplex(d).unwrap();
            assert_eq!(cfg.len(), d + 2);
            let expected = -1.0 / (d as f64 + 1.0);
            for i in 0..cfg.len() {
                assert_abs_diff_eq!(norm(cfg.point(i)), 1.0, epsilon = 1e-14);
                for j in (i + 1)..cfg.len() {
                    assert_abs_diff_eq!(dot(cfg.point(i), cfg.point(j)), expected, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn cross_polytope_spectrum() {
        let spec = inner_product_spectrum(&cross_polytope(2).unwrap());
        assert_eq!(spec.values, vec![-1.0, 0.0]);
        assert_eq!(cross_polytope(7).unwrap().len(), 16);
    }

    #[test]
    fn icosahedron_structure() {
        let cfg = icosahedron();
        assert_eq!(cfg.len(), 12);
        assert_eq!(cfg.dim_d(), 2);
        let spec = inner_product_spectrum(&cfg);
        let s = 1.0 / 5.0_f64.sqrt();
        assert_eq!(spec.len(), 3);
        assert_abs_diff_eq!(spec.values[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.values[1], -s, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.values[2], s, epsilon = 1e-12);
        assert!(is_antipodal(&cfg, DEFAULT_CLUSTER_TOL));
    }

    #[test]
    fn e8_structure() {
        let cfg = e8_roots();
        assert_eq!(cfg.len(), 240);
        assert_eq!(cfg.dim_d(), 7);
        let spec = inner_product_spectrum(&cfg);
        assert_eq!(spec.len(), 4);
        for (got, want) in spec.values.iter().zip([-1.0, -0.5, 0.0, 0.5]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        assert!(is_antipodal(&cfg, DEFAULT_CLUSTER_TOL));
    }

    #[test]
    fn schlafli_structure() {
        let cfg = schlafli_27();
        assert_eq!(cfg.len(), 27);
        assert_eq!(cfg.dim_d(), 5);
        let spec = inner_product_spectrum(&cfg);
        assert_eq!(spec.len(), 2);
        assert_abs_diff_eq!(spec.values[0], -0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(spec.values[1], 0.25, epsilon = 1e-10);
        assert!(!is_antipodal(&cfg, DEFAULT_CLUSTER_TOL));
    }

    #[test]
    fn dot_products_square() {
        let cfg = polygon(4).unwrap();
        let set = dot_products(cfg.point(0), &cfg, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(set.len(), 3);
        for (got, want) in set.values.iter().zip([-1.0, 0.0, 1.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }

        let theta = std::f64::consts::FRAC_PI_4;
        let z = vec![theta.cos(), theta.sin()];
        let set = dot_products(&z, &cfg, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(set.len(), 2);
        let r = 2.0_f64.sqrt() / 2.0;
        assert_abs_diff_eq!(set.values[0], -r, epsilon = 1e-12);
        assert_abs_diff_eq!(set.values[1], r, epsilon = 1e-12);
    }

    #[test]
    fn dot_products_tetrahedron_vertex() {
        let cfg = simplex(2).unwrap();
        let set = dot_products(cfg.point(0), &cfg, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(set.len(), 2);
        assert_abs_diff_eq!(set.values[0], -1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(set.values[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn dot_products_rejects_non_unit_probe() {
        let cfg = polygon(4).unwrap();
        assert!(matches!(
            dot_products(&[2.0, 0.0], &cfg, 1e-9),
            Err(Error::NonUnitVector { .. })
        ));
    }

    #[test]
    fn antipodality_flags() {
        assert!(is_antipodal(&polygon(4).unwrap(), 1e-9));
        assert!(!is_antipodal(&simplex(2).unwrap(), 1e-9));
        assert!(!is_antipodal(&polygon(5).unwrap(), 1e-9));
    }

    #[test]
    fn save_load_round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        for cfg in [polygon(5).unwrap(), icosahedron(), schlafli_27()] {
            let path = dir.path().join(format!("{}.json", cfg.name()));
            save(&cfg, &path).unwrap();
            let back = load(&path).unwrap();
            assert_eq!(back.name(), cfg.name());
            assert_eq!(back.dim_d(), cfg.dim_d());
            for (p, q) in cfg.iter().zip(back.iter()) {
                assert_eq!(p, q, "coordinates must round-trip bit-exactly");
            }
        }
    }

    #[test]
    fn load_reports_line_info() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        fs::write(&path, "{\n  \"name\": \"x\",\n  \"dim\": oops\n}\n").unwrap();
        match load(&path) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn by_name_aliases_and_suggestions() {
        assert_eq!(by_name("square").unwrap().name(), "polygon:4");
        assert_eq!(by_name("cross:2").unwrap().name(), "cross-polytope:2");
        assert_eq!(by_name("SCHLAFLI").unwrap().name(), "schlafli27");
        match by_name("polygone:4") {
            Err(Error::UnknownConfiguration { suggestions, .. }) => {
                assert!(suggestions.iter().any(|s| s.starts_with("polygon")));
            }
            other => panic!("expected unknown-configuration error, got {other:?}"),
        }
    }

    #[test]
    fn generated_catalog_is_unit_norm_clean() {
        for cfg in standard_catalog() {
            for p in cfg.iter() {
                assert!((norm(p) - 1.0).abs() <= UNIT_NORM_TOL, "{}", cfg.name());
            }
        }
    }
}
