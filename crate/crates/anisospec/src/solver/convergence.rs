//! Mesh-refinement convergence study.

use super::fem::{rayleigh_minimize, SolverOpts};
use super::mesh::triangulate;
use crate::anisotropy::Anisotropy;
use crate::error::{Error, Result};
use crate::geometry::Membrane;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    /// (h, lambda_h) per mesh size, in the order supplied.
    pub rows: Vec<(f64, f64)>,
    /// Aitken-extrapolated limit from the three finest meshes.
    pub extrapolated: f64,
    /// Empirical order from |lambda_h - extrapolated| against h.
    pub order: f64,
}

/// Run the solver at each mesh size (must be decreasing, at least 3 values)
/// and extrapolate the limit.
pub fn convergence_study(
    m: &Membrane,
    h: &Anisotropy,
    p: f64,
    h_list: &[f64],
    opts: &SolverOpts,
) -> Result<ConvergenceStudy> {
    if h_list.len() < 3 {
        return Err(Error::InvalidParams(
            "convergence study needs at least 3 mesh sizes".into(),
        ));
    }
    if !h_list.windows(2).all(|w| w[1] < w[0]) {
        return Err(Error::InvalidParams("mesh sizes must be decreasing".into()));
    }
    let mut rows = Vec::with_capacity(h_list.len());
    for &hh in h_list {
        let mesh = triangulate(m, hh)?;
        let (res, _) = rayleigh_minimize(&mesh, h, p, opts)?;
        rows.push((hh, res.value));
    }
    let k = rows.len();
    let (l0, l1, l2) = (rows[k - 3].1, rows[k - 2].1, rows[k - 1].1);
    // Aitken delta-squared; fall back to the finest value if degenerate.
    let denom = (l0 - l1) - (l1 - l2);
    let extrapolated = if denom.abs() > 1e-300 {
        l2 - (l1 - l2) * (l1 - l2) / denom
    } else {
        l2
    };
    // Least-squares slope of log|lambda_h - limit| against log h.
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|(_, l)| (l - extrapolated).abs() > 0.0)
        .map(|(hh, l)| (hh.ln(), (l - extrapolated).abs().ln()))
        .collect();
    let order = if pts.len() >= 2 {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    } else {
        f64::NAN
    };
    Ok(ConvergenceStudy {
        rows,
        extrapolated,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::generators;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn square_laplacian_second_order() {
        let m = generators::rect(1.0, 1.0).unwrap();
        let study = convergence_study(
            &m,
            &Anisotropy::Euclidean,
            2.0,
            &[0.1, 0.05, 0.025],
            &SolverOpts::default(),
        )
        .unwrap();
        assert_relative_eq!(study.extrapolated, 2.0 * PI * PI, max_relative = 2e-3);
        // Errors shrink monotonically toward the limit.
        let errs: Vec<f64> = study
            .rows
            .iter()
            .map(|(_, l)| (l - study.extrapolated).abs())
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]));
        assert!(study.order > 1.5, "order {}", study.order);
    }
}
