//! One-dimensional restrictions of a discrete minimizer.
//!
//! For a degenerate anisotropy the minimizer restricted to almost every line
//! in the seminorm's axis direction is a 1D p-Laplacian eigenfunction (or
//! zero). `slice_check` samples such lines, computes each restriction's 1D
//! Rayleigh quotient and reports how many agree with the closed form
//! `lambda_{1,p}(0, L)` for the maximal slice length L.

use super::fem::DiscreteField;
use super::mesh::Mesh;
use crate::error::{Error, Result};
use crate::math::Vec2;
use crate::spectra::lambda_1d;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SliceReport {
    /// Longest restriction support encountered.
    pub l_max: f64,
    /// Reference value lambda_{1,p}(0, l_max).
    pub lambda_ref: f64,
    pub n_lines: usize,
    /// Components with non-negligible amplitude.
    pub n_nontrivial: usize,
    /// Near-zero components (excluded from the fraction).
    pub n_near_zero: usize,
    /// Non-trivial components whose quotient is within `rel_tol`.
    pub n_within: usize,
    pub rel_tol: f64,
    /// n_within / n_nontrivial (1.0 when there are no non-trivial slices).
    pub fraction: f64,
    /// Per-component quotients for diagnostics.
    pub quotients: Vec<f64>,
}

/// Gauss-Legendre 4-point nodes/weights on [0, 1].
const GL4: [(f64, f64); 4] = [
    (0.069_431_844_202_973_71, 0.173_927_422_568_727),
    (0.330_009_478_207_571_9, 0.326_072_577_431_273),
    (0.669_990_521_792_428, 0.326_072_577_431_273),
    (0.930_568_155_797_026_3, 0.173_927_422_568_727),
];

/// Piecewise-linear 1D restriction: sorted (y, u) breakpoints of one
/// connected component.
struct Restriction {
    pts: Vec<(f64, f64)>,
}

impl Restriction {
    fn length(&self) -> f64 {
        self.pts.last().unwrap().0 - self.pts[0].0
    }

    fn max_abs(&self) -> f64 {
        self.pts.iter().map(|p| p.1.abs()).fold(0.0, f64::max)
    }

    fn quotient(&self, p: f64) -> Option<f64> {
        let mut energy = 0.0;
        let mut norm = 0.0;
        for w in self.pts.windows(2) {
            let ((y0, u0), (y1, u1)) = (w[0], w[1]);
            let dy = y1 - y0;
            if dy <= 0.0 {
                continue;
            }
            let du = (u1 - u0) / dy;
            energy += du.abs().powf(p) * dy;
            for &(t, wgt) in &GL4 {
                let u = u0 + (u1 - u0) * t;
                norm += wgt * u.abs().powf(p) * dy;
            }
        }
        (norm > 0.0).then(|| energy / norm)
    }
}

/// Sample vertical lines (after rotating so `theta` is the vertical
/// direction), extract 1D restrictions of `u` and compare their Rayleigh
/// quotients to the 1D closed form.
pub fn slice_check(
    mesh: &Mesh,
    u: &DiscreteField,
    theta: f64,
    p: f64,
    n_lines: usize,
    rel_tol: f64,
) -> Result<SliceReport> {
    if !(p > 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let rot = PI / 2.0 - theta;
    let verts: Vec<Vec2> = mesh.vertices.iter().map(|v| v.rotate(rot)).collect();
    let umax = u.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if umax <= 0.0 {
        return Err(Error::ZeroField);
    }

    let xmin = verts.iter().map(|v| v.x).fold(f64::INFINITY, f64::min);
    let xmax = verts.iter().map(|v| v.x).fold(f64::NEG_INFINITY, f64::max);
    let margin = 1e-6 * (xmax - xmin);
    let n_lines = n_lines.max(3);

    let mut restrictions: Vec<Restriction> = Vec::new();
    for k in 0..n_lines {
        let x = xmin + margin + (xmax - xmin - 2.0 * margin) * (k as f64 + 0.5) / n_lines as f64;
        // Crossing segments per triangle.
        let mut segs: Vec<((f64, f64), (f64, f64))> = Vec::new();
        for t in &mesh.triangles {
            let mut cross: Vec<(f64, f64)> = Vec::new();
            for e in 0..3 {
                let (ia, ib) = (t[e], t[(e + 1) % 3]);
                let (a, b) = (verts[ia], verts[ib]);
                if (a.x <= x) != (b.x <= x) {
                    let s = (x - a.x) / (b.x - a.x);
                    cross.push((
                        a.y + s * (b.y - a.y),
                        u.values[ia] + s * (u.values[ib] - u.values[ia]),
                    ));
                }
            }
            if cross.len() == 2 {
                let (lo, hi) = if cross[0].0 <= cross[1].0 {
                    (cross[0], cross[1])
                } else {
                    (cross[1], cross[0])
                };
                if hi.0 > lo.0 {
                    segs.push((lo, hi));
                }
            }
        }
        segs.sort_by(|a, b| a.0 .0.partial_cmp(&b.0 .0).unwrap());
        // Merge contiguous segments into connected components.
        let join_tol = 1e-9 * (xmax - xmin);
        let mut current: Vec<(f64, f64)> = Vec::new();
        for (lo, hi) in segs {
            if let Some(&(last_y, _)) = current.last() {
                if lo.0 - last_y > join_tol {
                    if current.len() >= 2 {
                        restrictions.push(Restriction {
                            pts: std::mem::take(&mut current),
                        });
                    } else {
                        current.clear();
                    }
                    current.push(lo);
                } // else: contiguous, skip duplicate breakpoint
            } else {
                current.push(lo);
            }
            current.push(hi);
        }
        if current.len() >= 2 {
            restrictions.push(Restriction { pts: current });
        }
    }

    let l_max = restrictions
        .iter()
        .map(|r| r.length())
        .fold(0.0_f64, f64::max);
    if l_max <= 0.0 {
        return Err(Error::ZeroField);
    }
    let lambda_ref = lambda_1d(p, l_max)?.value;

    let mut n_nontrivial = 0;
    let mut n_near_zero = 0;
    let mut n_within = 0;
    let mut quotients = Vec::new();
    for r in &restrictions {
        if r.max_abs() < 1e-6 * umax {
            n_near_zero += 1;
            continue;
        }
        if let Some(q) = r.quotient(p) {
            n_nontrivial += 1;
            quotients.push(q);
            if (q - lambda_ref).abs() <= rel_tol * lambda_ref {
                n_within += 1;
            }
        }
    }
    Ok(SliceReport {
        l_max,
        lambda_ref,
        n_lines,
        n_nontrivial,
        n_near_zero,
        n_within,
        rel_tol,
        fraction: if n_nontrivial == 0 {
            1.0
        } else {
            n_within as f64 / n_nontrivial as f64
        },
        quotients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anisotropy::Anisotropy;
    use crate::geometry::generators;
    use crate::solver::fem::{rayleigh_minimize, SolverOpts};
    use crate::solver::mesh::triangulate;

    #[test]
    fn rectangle_slices_are_1d_eigenfunctions() {
        // Separable exact solution phi(x) sin(pi y / b): every non-trivial
        // vertical restriction has quotient pi^2 / b^2.
        let b = 0.8;
        let m = generators::rect(1.5, b).unwrap();
        let mesh = triangulate(&m, 0.02).unwrap();
        let h = Anisotropy::directional(1.0, PI / 2.0);
        let (_, field) = rayleigh_minimize(&mesh, &h, 2.0, &SolverOpts::default()).unwrap();
        let report = slice_check(&mesh, &field, PI / 2.0, 2.0, 40, 0.02).unwrap();
        assert!(
            report.fraction >= 0.95,
            "fraction {} with l_max {}",
            report.fraction,
            report.l_max
        );
        assert!((report.l_max - b).abs() < 0.05);
    }
}
