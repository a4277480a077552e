//! Sharp spherical configurations and certified extrema of their potentials.
//!
//! A configuration of `N` unit vectors on the sphere `S^d` induces, for a
//! potential function `f` on `[0, 4]`, the field
//! `p_f(x) = sum_i f(|x - x_i|^2)`. For configurations whose distinct pairs
//! realize only `m` dot products and whose spherical-design strength is high
//! enough ("sharp" configurations), the absolute maximum of `p_f` over the
//! sphere is attained at the configuration points themselves and can be
//! certified exactly: a Hermite interpolant `q >= g` of the circle function
//! `g(t) = f(2 - 2t)` at the dot-product values turns the maximum into a
//! design-constant sum.
//!
//! The crate is organized as:
//!
//! - [`catalog`] — named configurations (polygons, simplices, cross-polytopes,
//!   icosahedron, the 27-point two-distance set on `S^5`, the 240-point `E_8`
//!   shell), dot-product spectra, JSON persistence.
//! - [`designs`] — design-strength verification via Gegenbauer kernel sums,
//!   weight moments, sharpness reports, and the structural sanity checks.
//! - [`potentials`] — Gaussian / negative-power / shifted-Riesz families with
//!   closed-form derivatives of all orders, and the circle transform.
//! - [`certificates`] — Hermite interpolation with repeated nodes, dominance
//!   verification on a Chebyshev grid, and maximum certification.
//! - [`polarization`] — global max/min searches, pair energies, and seeded
//!   comparison trials against random competitor configurations.
//! - [`cli`] — the batch front end used by the `polarmax` binary.

pub mod catalog;
pub mod certificates;
pub mod cli;
pub mod designs;
mod error;
pub mod polarization;
pub mod potentials;
pub(crate) mod vecmath;

pub use error::{Error, Result};
