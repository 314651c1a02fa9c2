//! Closed-form spectral quantities and shape inequalities.
//!
//! The central reduction: a degenerate anisotropy `c |cos t x + sin t y|`
//! turns the membrane problem into the one-dimensional p-Laplacian on the
//! longest chord in direction t, so its least level is
//! `c^p lambda_{1,p}(0, L_t)` with `lambda_{1,p}(0,L) = (p-1) (pi_p / L)^p`.

use crate::anisotropy::{Anisotropy, AnisotropyClass, CLASSIFY_TOL};
use crate::error::{Error, Result};
use crate::geometry::{self, Membrane, TriState};
use crate::solver::{self, SolverOpts};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Fem,
}

/// A frequency value with its provenance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralResult {
    pub value: f64,
    pub method: Method,
    pub p: f64,
    pub error_estimate: f64,
    pub provenance: String,
}

/// Extremizers of the lower anisotropic constant on the unit sphere of
/// anisotropies: directional seminorms at the width-maximal directions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtremizerSet {
    pub anisotropies: Vec<Anisotropy>,
    /// True when the membrane has optimal anisotropic design (so the listed
    /// set is the complete extremizer set for a Lipschitz boundary).
    pub complete: bool,
    /// The width profile is flat: every direction is extremal and the set is
    /// a continuum (reported as zero discrete members).
    pub continuum: bool,
}

/// Half-period constant of the one-dimensional p-Laplacian eigenfunction:
/// `pi_p = 2 pi / (p sin(pi/p))`.
pub fn pi_p(p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    Ok(2.0 * PI / (p * (PI / p).sin()))
}

/// Fundamental frequency of the 1D p-Laplacian on (0, L):
/// `(p-1) (pi_p / L)^p`. Satisfies the scaling law
/// `lambda(0, L) = L^{-p} lambda(0, 1)` exactly.
pub fn lambda_1d(p: f64, len: f64) -> Result<SpectralResult> {
    let pp = pi_p(p)?;
    if !(len > 0.0) {
        return Err(Error::InvalidLength(len));
    }
    Ok(SpectralResult {
        value: (p - 1.0) * (pp / len).powf(p),
        method: Method::ClosedForm,
        p,
        error_estimate: 0.0,
        provenance: format!("1d p-laplacian on (0, {len})"),
    })
}

/// Least level for a degenerate anisotropy via the directional width
/// (an explicit zero for the zero anisotropy; an error for positive ones).
pub fn lambda_degenerate(m: &Membrane, h: &Anisotropy, p: f64) -> Result<SpectralResult> {
    if !(p > 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    match h.classify(CLASSIFY_TOL)? {
        AnisotropyClass::Zero => Ok(SpectralResult {
            value: 0.0,
            method: Method::ClosedForm,
            p,
            error_estimate: 0.0,
            provenance: "zero anisotropy: least level is 0".into(),
        }),
        AnisotropyClass::Positive => Err(Error::NotDegenerate("positive".into())),
        AnisotropyClass::Degenerate { c, theta } => {
            let len = geometry::chord_width(m, theta);
            if !(len > 0.0) {
                return Err(Error::InvalidLength(len));
            }
            let base = lambda_1d(p, len)?;
            // First-order sensitivity of L^{-p} to the geometric width
            // resolution.
            let dl = 1e-9 * m.bbox_diag();
            let value = c.powf(p) * base.value;
            Ok(SpectralResult {
                value,
                method: Method::ClosedForm,
                p,
                error_estimate: p * (dl / len) * value,
                provenance: format!("degenerate level: c^p lambda_1d(p, L) with c={c}, L={len}"),
            })
        }
    }
}

/// Lower anisotropic constant `inf lambda^H` over unit-norm anisotropies,
/// with its extremizer set.
pub fn lambda_min(m: &Membrane, p: f64) -> Result<(SpectralResult, ExtremizerSet)> {
    if !(p > 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let profile = geometry::width_profile(m, 256, true);
    let sup = profile.sup_width;
    if !(sup > 0.0) {
        return Err(Error::InvalidLength(sup));
    }
    let base = lambda_1d(p, sup)?;
    let attained = profile.attained_flag == TriState::Attained;
    let extremizers = if profile.is_continuum {
        ExtremizerSet {
            anisotropies: Vec::new(),
            complete: true,
            continuum: true,
        }
    } else if attained {
        ExtremizerSet {
            anisotropies: profile
                .maxima
                .iter()
                .map(|&(t, _)| Anisotropy::directional(1.0, t))
                .collect(),
            complete: true,
            continuum: false,
        }
    } else {
        ExtremizerSet {
            anisotropies: Vec::new(),
            complete: false,
            continuum: false,
        }
    };
    let dl = 1e-9 * m.bbox_diag();
    Ok((
        SpectralResult {
            value: base.value,
            method: Method::ClosedForm,
            p,
            error_estimate: p * (dl / sup) * base.value,
            provenance: format!("lambda_min via sup width {sup}"),
        },
        extremizers,
    ))
}

/// Upper anisotropic constant: the ordinary p-Laplacian frequency, computed
/// by the finite-element solver with a two-mesh error estimate.
pub fn lambda_max(m: &Membrane, p: f64, opts: &SolverOpts) -> Result<SpectralResult> {
    let fine = solver::triangulate(m, opts.mesh_h)?;
    let (mut res, _) = solver::rayleigh_minimize(&fine, &Anisotropy::Euclidean, p, opts)?;
    if opts.richardson {
        let coarse = solver::triangulate(m, 2.0 * opts.mesh_h)?;
        let (res2, _) = solver::rayleigh_minimize(&coarse, &Anisotropy::Euclidean, p, opts)?;
        // Second-order elements: halving h divides the error by about 4.
        res.error_estimate = res.error_estimate.max((res2.value - res.value).abs() / 3.0);
    }
    res.provenance = format!("lambda_max (p-laplacian) at h={}", opts.mesh_h);
    Ok(res)
}

/// Sharp two-sided bounds `(lambda_min ||H||^p, lambda_max ||H||^p)` for the
/// level of any anisotropy with the given sup-norm.
pub fn u_estimate_bounds(
    m: &Membrane,
    h: &Anisotropy,
    p: f64,
    opts: &SolverOpts,
) -> Result<(f64, f64)> {
    let s = h.sup_norm();
    if s <= 0.0 {
        return Err(Error::ZeroAnisotropy);
    }
    let (lo, _) = lambda_min(m, p)?;
    let hi = lambda_max(m, p, opts)?;
    Ok((lo.value * s.powf(p), hi.value * s.powf(p)))
}

/// Unit-area rectangles aligned against the dominating degenerate direction
/// of H: lower bounds `c^p lambda_1d(p, 1/k)` that grow like k^p.
pub fn blowup_sequence(
    h: &Anisotropy,
    p: f64,
    k_max: usize,
) -> Result<Vec<(usize, f64, SpectralResult)>> {
    if !(p > 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    if k_max < 2 {
        return Err(Error::InvalidParams(format!("k_max = {k_max} must be >= 2")));
    }
    let h0 = h.dominating_degenerate()?;
    let (c, theta) = match h0.classify(CLASSIFY_TOL)? {
        AnisotropyClass::Degenerate { c, theta } => (c, theta),
        _ => return Err(Error::ZeroAnisotropy),
    };
    let phi = theta - PI / 2.0;
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let rect = geometry::generators::rotated_rect(k as f64, 1.0 / k as f64, phi)?;
        let area = rect.area();
        let len = geometry::chord_width(&rect, theta);
        let base = lambda_1d(p, len)?;
        out.push((
            k,
            area,
            SpectralResult {
                value: c.powf(p) * base.value,
                method: Method::ClosedForm,
                p,
                error_estimate: 0.0,
                provenance: format!("blow-up lower bound at k={k}, chord {len}"),
            },
        ));
    }
    Ok(out)
}

/// Lower isodiametric bound for the lower constant:
/// `lambda_min >= lambda_1d(p, 1) diam^{-p}`, equality iff some direction
/// realizes the diameter as a width.
pub fn id_min_bound(m: &Membrane, p: f64) -> Result<(f64, f64, bool, bool)> {
    let (lhs, _) = lambda_min(m, p)?;
    let diam = m.diameter();
    let rhs = lambda_1d(p, 1.0)?.value * diam.powf(-p);
    let tol = 1e-6 * rhs.abs();
    Ok((
        lhs.value,
        rhs,
        lhs.value >= rhs - tol,
        (lhs.value - rhs).abs() <= tol,
    ))
}

/// Upper isoperimetric bound on convex membranes:
/// `lambda_min <= lambda_1d(p, 2/sqrt(pi)) |area|^{-p/2}`, equality only for
/// disks.
pub fn ip_min_bound(m: &Membrane, p: f64, eq_tol: f64) -> Result<(f64, f64, bool, bool)> {
    if !m.is_convex() {
        return Err(Error::NotConvex);
    }
    let (lhs, _) = lambda_min(m, p)?;
    let rhs = lambda_1d(p, 2.0 / PI.sqrt())?.value * m.area().powf(-p / 2.0);
    let tol = 1e-6 * rhs.abs();
    Ok((
        lhs.value,
        rhs,
        lhs.value <= rhs + tol,
        (lhs.value - rhs).abs() <= eq_tol * rhs.abs(),
    ))
}

/// Classical isodiametric inequality `area <= pi (diam/2)^2`.
pub fn isodiametric_check(m: &Membrane) -> (f64, f64, bool) {
    let area = m.area();
    let bound = PI * (m.diameter() / 2.0).powi(2);
    (area, bound, area <= bound * (1.0 + 1e-9))
}
