//! 2D anisotropies: nonnegative, convex, 1-homogeneous functions on the
//! plane, represented by a closed constructor grammar.
//!
//! The grammar covers the canonical examples (axis seminorms, Euclidean and
//! quadratic norms, weighted l^q norms, maxima and l^p sums of anisotropies)
//! and is closed under scaling and rotation. Degenerate members are exactly
//! the seminorms `c |cos(theta) x + sin(theta) y|`; [`Anisotropy::classify`]
//! recovers `(c, theta)` numerically.

use crate::error::{Error, Result};
use crate::math::{golden_max, normalize_angle_pi, Vec2};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Number of circle samples used when no closed form is available.
pub const CIRCLE_SAMPLES: usize = 4096;

/// Default relative classification tolerance.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// Constructor tree for a 2D anisotropy.
///
/// Every variant evaluates to a nonnegative, convex, 1-homogeneous function;
/// these properties are preserved by all constructors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Anisotropy {
    /// The Euclidean norm |xi|.
    Euclidean,
    /// `c |cos(theta) x + sin(theta) y|` - the degenerate prototype.
    Directional { c: f64, theta: f64 },
    /// `|xi^T A xi|^(1/2)` for a symmetric positive-semidefinite A.
    Quadratic { a: [[f64; 2]; 2] },
    /// `(wx |x|^q + wy |y|^q)^(1/q)`, q >= 1, weights nonnegative.
    #[serde(rename = "weightedlq")]
    WeightedLq { q: f64, wx: f64, wy: f64 },
    /// `alpha * child(xi)`, alpha >= 0.
    Scaled { alpha: f64, child: Box<Anisotropy> },
    /// Child with its level sets rotated counterclockwise by `phi`:
    /// evaluates `child(R_{-phi} xi)`.
    Rotated { phi: f64, child: Box<Anisotropy> },
    /// Pointwise maximum of the children.
    #[serde(rename = "maxof")]
    MaxOf { children: Vec<Anisotropy> },
    /// `(sum_i child_i(xi)^p)^(1/p)`, p >= 1.
    #[serde(rename = "lpsum")]
    LpSum { p: f64, children: Vec<Anisotropy> },
    /// The zero function.
    Zero,
}

/// Result of classifying an anisotropy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum AnisotropyClass {
    /// A norm: positive away from the origin.
    Positive,
    /// `c |cos(theta) x + sin(theta) y|` with c > 0, theta in [0, pi).
    Degenerate { c: f64, theta: f64 },
    /// Identically zero.
    Zero,
}

impl Anisotropy {
    pub fn directional(c: f64, theta: f64) -> Self {
        Anisotropy::Directional {
            c,
            theta: normalize_angle_pi(theta),
        }
    }

    pub fn quadratic(a: [[f64; 2]; 2]) -> Self {
        Anisotropy::Quadratic { a }
    }

    pub fn weighted_lq(q: f64, wx: f64, wy: f64) -> Self {
        Anisotropy::WeightedLq { q, wx, wy }
    }

    pub fn scaled(alpha: f64, child: Anisotropy) -> Self {
        Anisotropy::Scaled {
            alpha,
            child: Box::new(child),
        }
    }

    pub fn max_of(children: Vec<Anisotropy>) -> Self {
        Anisotropy::MaxOf { children }
    }

    pub fn lp_sum(p: f64, children: Vec<Anisotropy>) -> Self {
        Anisotropy::LpSum { p, children }
    }

    /// Validate parameter domains of the whole tree. Deserialized trees should
    /// be validated before use.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        match self {
            Anisotropy::Euclidean | Anisotropy::Zero => Ok(()),
            Anisotropy::Directional { c, theta } => {
                if !c.is_finite() || *c < 0.0 {
                    return bad(format!("directional scale c = {c} must be >= 0"));
                }
                if !theta.is_finite() {
                    return bad("directional theta must be finite".into());
                }
                Ok(())
            }
            Anisotropy::Quadratic { a } => {
                let [[a00, a01], [a10, a11]] = *a;
                if ![a00, a01, a10, a11].iter().all(|v| v.is_finite()) {
                    return bad("quadratic matrix entries must be finite".into());
                }
                let scale = a00.abs().max(a11.abs()).max(a01.abs()).max(1e-300);
                if (a01 - a10).abs() > 1e-9 * scale {
                    return bad("quadratic matrix must be symmetric".into());
                }
                let tr = a00 + a11;
                let det = a00 * a11 - a01 * a10;
                if tr < -1e-12 * scale || det < -1e-9 * scale * scale {
                    return bad("quadratic matrix must be positive semidefinite".into());
                }
                Ok(())
            }
            Anisotropy::WeightedLq { q, wx, wy } => {
                if !(*q >= 1.0) {
                    return bad(format!("weightedlq exponent q = {q} must be >= 1"));
                }
                if *wx < 0.0 || *wy < 0.0 || !wx.is_finite() || !wy.is_finite() {
                    return bad("weightedlq weights must be nonnegative".into());
                }
                Ok(())
            }
            Anisotropy::Scaled { alpha, child } => {
                if !alpha.is_finite() || *alpha < 0.0 {
                    return bad(format!("scale alpha = {alpha} must be >= 0"));
                }
                child.validate()
            }
            Anisotropy::Rotated { phi, child } => {
                if !phi.is_finite() {
                    return bad("rotation angle must be finite".into());
                }
                child.validate()
            }
            Anisotropy::MaxOf { children } => {
                if children.is_empty() {
                    return bad("maxof needs at least one child".into());
                }
                children.iter().try_for_each(|c| c.validate())
            }
            Anisotropy::LpSum { p, children } => {
                if !(*p >= 1.0) {
                    return bad(format!("lpsum exponent p = {p} must be >= 1"));
                }
                if children.is_empty() {
                    return bad("lpsum needs at least one child".into());
                }
                children.iter().try_for_each(|c| c.validate())
            }
        }
    }

    /// Evaluate H at `xi`. Total, nonnegative, 1-homogeneous.
    pub fn eval(&self, xi: Vec2) -> f64 {
        match self {
            Anisotropy::Euclidean => xi.norm(),
            Anisotropy::Directional { c, theta } => {
                let (s, co) = theta.sin_cos();
                c * (co * xi.x + s * xi.y).abs()
            }
            Anisotropy::Quadratic { a } => {
                let q = a[0][0] * xi.x * xi.x
                    + (a[0][1] + a[1][0]) * xi.x * xi.y
                    + a[1][1] * xi.y * xi.y;
                q.abs().sqrt()
            }
            Anisotropy::WeightedLq { q, wx, wy } => {
                let v = wx * xi.x.abs().powf(*q) + wy * xi.y.abs().powf(*q);
                v.powf(1.0 / q)
            }
            Anisotropy::Scaled { alpha, child } => alpha * child.eval(xi),
            Anisotropy::Rotated { phi, child } => child.eval(xi.rotate(-phi)),
            Anisotropy::MaxOf { children } => children
                .iter()
                .map(|c| c.eval(xi))
                .fold(0.0_f64, f64::max),
            Anisotropy::LpSum { p, children } => {
                let s: f64 = children.iter().map(|c| c.eval(xi).powf(*p)).sum();
                s.powf(1.0 / p)
            }
            Anisotropy::Zero => 0.0,
        }
    }

    /// Evaluate on the unit circle at angle `phi`.
    #[inline]
    pub fn eval_angle(&self, phi: f64) -> f64 {
        self.eval(Vec2::unit(phi))
    }

    /// The sup-norm `max { H(u) : |u| = 1 }`.
    ///
    /// Closed form for all nodes except `LpSum`, which is resolved by dense
    /// circle sampling with golden-section refinement.
    pub fn sup_norm(&self) -> f64 {
        match self {
            Anisotropy::Euclidean => 1.0,
            Anisotropy::Directional { c, .. } => *c,
            Anisotropy::Quadratic { a } => {
                let (_, lmax) = sym_eigenvalues(a);
                lmax.max(0.0).sqrt()
            }
            Anisotropy::WeightedLq { q, wx, wy } => weighted_lq_sup(*q, *wx, *wy),
            Anisotropy::Scaled { alpha, child } => alpha * child.sup_norm(),
            Anisotropy::Rotated { child, .. } => child.sup_norm(),
            Anisotropy::MaxOf { children } => children
                .iter()
                .map(|c| c.sup_norm())
                .fold(0.0_f64, f64::max),
            Anisotropy::LpSum { .. } => self.extremum_on_circle(true).1,
            Anisotropy::Zero => 0.0,
        }
    }

    /// Minimum of H over the unit circle, with its location in [0, pi).
    pub fn min_on_circle(&self) -> (f64, f64) {
        let (phi, v) = self.extremum_on_circle(false);
        (v, phi)
    }

    /// Sampled extremum of `h(phi) = H(cos phi, sin phi)` over [0, pi)
    /// (H is pi-periodic on the circle by homogeneity). Returns
    /// `(arg, value)`.
    fn extremum_on_circle(&self, maximize: bool) -> (f64, f64) {
        let n = CIRCLE_SAMPLES;
        let h = |phi: f64| self.eval_angle(phi);
        let sign = if maximize { 1.0 } else { -1.0 };
        let mut best_i = 0;
        let mut best = sign * h(0.0);
        let step = PI / n as f64;
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let v = sign * h(i as f64 * step);
            values.push(v);
            if v > best {
                best = v;
                best_i = i;
            }
        }
        let a = (best_i as f64 - 1.0) * step;
        let b = (best_i as f64 + 1.0) * step;
        let (x, v, _, _) = golden_max(|p| sign * h(p), a, b, 80);
        if v >= best {
            (normalize_angle_pi(x), sign * v)
        } else {
            (normalize_angle_pi(best_i as f64 * step), sign * best)
        }
    }

    /// Classify into Zero / Degenerate(c, theta) / Positive.
    ///
    /// `tol` is relative to the sup-norm. The circle minimum decides the
    /// class; a minimum inside the band `(tol, 10 tol) * ||H||` is reported
    /// as ambiguous rather than guessed. For a degenerate result the
    /// recovered seminorm is re-verified against H on a dense circle sample.
    pub fn classify(&self, tol: f64) -> Result<AnisotropyClass> {
        if tol <= 0.0 {
            return Err(Error::InvalidParams(format!("tol = {tol} must be > 0")));
        }
        let s = self.sup_norm();
        if s <= tol {
            return Ok(AnisotropyClass::Zero);
        }
        let (min, phi_min) = self.min_on_circle();
        if min <= tol * s {
            // Kernel direction phi_min; the seminorm axis is its normal.
            let theta = normalize_angle_pi(phi_min + PI / 2.0);
            let model = Anisotropy::directional(s, theta);
            let mut worst = 0.0_f64;
            for i in 0..CIRCLE_SAMPLES {
                let phi = i as f64 * PI / CIRCLE_SAMPLES as f64;
                let d = (self.eval_angle(phi) - model.eval_angle(phi)).abs();
                worst = worst.max(d);
            }
            // Characterization check: a degenerate anisotropy must agree with
            // its directional model everywhere, not only at the extrema.
            if worst > 10.0 * tol * s {
                return Err(Error::ClassificationAmbiguous {
                    min: worst,
                    lo: tol * s,
                    hi: 10.0 * tol * s,
                });
            }
            Ok(AnisotropyClass::Degenerate { c: s, theta })
        } else if min <= 10.0 * tol * s {
            Err(Error::ClassificationAmbiguous {
                min,
                lo: tol * s,
                hi: 10.0 * tol * s,
            })
        } else {
            Ok(AnisotropyClass::Positive)
        }
    }

    /// Rotate the anisotropy's level sets counterclockwise by `phi`:
    /// `rotate(H, phi)(xi) = H(R_{-phi} xi)`. A directional anisotropy with
    /// axis `theta` maps to one with axis `theta + phi`.
    pub fn rotate(&self, phi: f64) -> Anisotropy {
        match self {
            Anisotropy::Euclidean => Anisotropy::Euclidean,
            Anisotropy::Zero => Anisotropy::Zero,
            Anisotropy::Directional { c, theta } => Anisotropy::directional(*c, theta + phi),
            Anisotropy::Rotated { phi: p0, child } => Anisotropy::Rotated {
                phi: p0 + phi,
                child: child.clone(),
            },
            other => Anisotropy::Rotated {
                phi,
                child: Box::new(other.clone()),
            },
        }
    }

    /// A degenerate minorant with the same sup-norm: `H0 <= H` pointwise and
    /// `||H0|| = ||H||`.
    ///
    /// The axis is taken from the supporting line of `{H <= ||H||}` at a
    /// maximizer of H on the circle (finite-difference tangent), verified by
    /// dense sampling, with a grid search fallback.
    pub fn dominating_degenerate(&self) -> Result<Anisotropy> {
        let s = self.sup_norm();
        if s <= 0.0 {
            return Err(Error::ZeroAnisotropy);
        }
        if let AnisotropyClass::Degenerate { c, theta } = self.classify(CLASSIFY_TOL)? {
            return Ok(Anisotropy::directional(c, theta));
        }
        let h = |phi: f64| self.eval_angle(phi);
        let (phi0, _) = self.extremum_on_circle(true);
        // Tangent direction of the level curve rho(phi) = ||H|| / h(phi) at
        // the maximizer; its normal is the seminorm axis.
        let d = 1e-6;
        let dh = (h(phi0 + d) - h(phi0 - d)) / (2.0 * d);
        let theta = normalize_angle_pi(phi0 + (dh / h(phi0)).atan());

        let margin = |theta: f64| -> f64 {
            let mut m = f64::INFINITY;
            for i in 0..CIRCLE_SAMPLES {
                let phi = i as f64 * PI / CIRCLE_SAMPLES as f64;
                m = m.min(h(phi) - s * (phi - theta).cos().abs());
            }
            m
        };
        if margin(theta) >= -1e-9 * s {
            return Ok(Anisotropy::directional(s, theta));
        }
        // Fallback: pick the axis with the best domination margin.
        let mut best = (f64::NEG_INFINITY, 0.0);
        for k in 0..1024 {
            let t = k as f64 * PI / 1024.0;
            let m = margin(t);
            if m > best.0 {
                best = (m, t);
            }
        }
        if best.0 >= -1e-9 * s {
            Ok(Anisotropy::directional(s, best.1))
        } else {
            Err(Error::DominationFailed(-best.0))
        }
    }

    /// Express `H(xi)^2` as `xi^T Q xi` when the tree admits it (quadratic,
    /// Euclidean, directional, and their scalings/rotations). Used by the
    /// p = 2 matrix path of the solver.
    pub fn quadratic_form(&self) -> Option<[[f64; 2]; 2]> {
        match self {
            Anisotropy::Euclidean => Some([[1.0, 0.0], [0.0, 1.0]]),
            Anisotropy::Zero => Some([[0.0, 0.0], [0.0, 0.0]]),
            Anisotropy::Directional { c, theta } => {
                let d = Vec2::unit(*theta);
                let c2 = c * c;
                Some([
                    [c2 * d.x * d.x, c2 * d.x * d.y],
                    [c2 * d.x * d.y, c2 * d.y * d.y],
                ])
            }
            Anisotropy::Quadratic { a } => Some(*a),
            Anisotropy::Scaled { alpha, child } => {
                let q = child.quadratic_form()?;
                let a2 = alpha * alpha;
                Some([[a2 * q[0][0], a2 * q[0][1]], [a2 * q[1][0], a2 * q[1][1]]])
            }
            Anisotropy::Rotated { phi, child } => {
                // H(R_{-phi} xi)^2 = xi^T (R_{phi} Q R_{phi}^T)^T... careful:
                // (R_{-phi} xi)^T Q (R_{-phi} xi) = xi^T R_{-phi}^T Q R_{-phi} xi.
                let q = child.quadratic_form()?;
                let (s, c) = (-phi).sin_cos();
                let r = [[c, -s], [s, c]];
                let mut qr = [[0.0; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        qr[i][j] = (0..2).map(|k| q[i][k] * r[k][j]).sum();
                    }
                }
                let mut out = [[0.0; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        out[i][j] = (0..2).map(|k| r[k][i] * qr[k][j]).sum();
                    }
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// An a.e.-defined (sub)gradient of H at `xi`. At kinks one element of
    /// the subdifferential is returned; at the origin the zero vector.
    pub fn subgradient(&self, xi: Vec2) -> Vec2 {
        match self {
            Anisotropy::Euclidean => {
                let n = xi.norm();
                if n > 0.0 {
                    xi * (1.0 / n)
                } else {
                    Vec2::ZERO
                }
            }
            Anisotropy::Directional { c, theta } => {
                let d = Vec2::unit(*theta);
                d * (c * d.dot(xi).signum_or_zero())
            }
            Anisotropy::Quadratic { a } => {
                let v = self.eval(xi);
                if v > 0.0 {
                    Vec2::new(
                        a[0][0] * xi.x + a[0][1] * xi.y,
                        a[1][0] * xi.x + a[1][1] * xi.y,
                    ) * (1.0 / v)
                } else {
                    Vec2::ZERO
                }
            }
            Anisotropy::WeightedLq { q, wx, wy } => {
                let v = self.eval(xi);
                if v <= 0.0 {
                    return Vec2::ZERO;
                }
                let gx = wx * xi.x.abs().powf(q - 1.0) * xi.x.signum_or_zero();
                let gy = wy * xi.y.abs().powf(q - 1.0) * xi.y.signum_or_zero();
                Vec2::new(gx, gy) * v.powf(1.0 - q)
            }
            Anisotropy::Scaled { alpha, child } => child.subgradient(xi) * *alpha,
            Anisotropy::Rotated { phi, child } => child.subgradient(xi.rotate(-phi)).rotate(*phi),
            Anisotropy::MaxOf { children } => {
                let mut best = (f64::NEG_INFINITY, Vec2::ZERO);
                for c in children {
                    let v = c.eval(xi);
                    if v > best.0 {
                        best = (v, c.subgradient(xi));
                    }
                }
                best.1
            }
            Anisotropy::LpSum { p, children } => {
                let v = self.eval(xi);
                if v <= 0.0 {
                    return Vec2::ZERO;
                }
                let mut g = Vec2::ZERO;
                for c in children {
                    let cv = c.eval(xi);
                    if cv > 0.0 {
                        g = g + c.subgradient(xi) * cv.powf(p - 1.0);
                    }
                }
                g * v.powf(1.0 - p)
            }
            Anisotropy::Zero => Vec2::ZERO,
        }
    }
}

trait SignumOrZero {
    fn signum_or_zero(self) -> f64;
}
impl SignumOrZero for f64 {
    #[inline]
    fn signum_or_zero(self) -> f64 {
        if self == 0.0 {
            0.0
        } else {
            self.signum()
        }
    }
}

/// Eigenvalues of a symmetric 2x2 matrix, (min, max).
fn sym_eigenvalues(a: &[[f64; 2]; 2]) -> (f64, f64) {
    let tr = a[0][0] + a[1][1];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
    (tr / 2.0 - disc, tr / 2.0 + disc)
}

/// Closed-form sup of `(wx |cos|^q + wy |sin|^q)^(1/q)` over the circle.
fn weighted_lq_sup(q: f64, wx: f64, wy: f64) -> f64 {
    if wx <= 0.0 || wy <= 0.0 {
        return wx.max(wy).max(0.0).powf(1.0 / q);
    }
    if q >= 2.0 {
        // t |-> wx t^(q/2) + wy (1-t)^(q/2) is convex on [0,1]: axis maxima.
        wx.max(wy).powf(1.0 / q)
    } else {
        // Interior maximum of the concave profile.
        let e = 2.0 / (2.0 - q);
        (wx.powf(e) + wy.powf(e)).powf((2.0 - q) / (2.0 * q))
    }
}

/// A convex polygon symmetric about the origin, counterclockwise.
///
/// Used to represent the unit ball `D_H = {H <= 1}` of a positive anisotropy
/// and its polar (Wulff) body.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvexBodyPoly {
    pub vertices: Vec<Vec2>,
}

impl ConvexBodyPoly {
    /// Validate convexity, orientation, origin-interiority and symmetry.
    pub fn validate(&self) -> Result<()> {
        let v = &self.vertices;
        let n = v.len();
        if n < 4 || n % 2 != 0 {
            return Err(Error::InvalidParams(
                "convex body needs an even number (>= 4) of vertices".into(),
            ));
        }
        let scale = v.iter().map(|p| p.norm()).fold(0.0_f64, f64::max);
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            let c = v[(i + 2) % n];
            if (b - a).cross(c - b) < -1e-9 * scale * scale {
                return Err(Error::InvalidParams("vertices not in convex position".into()));
            }
            if a.cross(b) <= 0.0 {
                return Err(Error::OriginNotInterior);
            }
            let m = v[(i + n / 2) % n];
            if (a + m).norm() > 1e-9 * scale {
                return Err(Error::InvalidParams("body not symmetric about origin".into()));
            }
        }
        Ok(())
    }

    /// Radius of the largest origin-centered disk inside the body:
    /// the minimum distance from the origin to an edge line.
    pub fn inradius(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        let mut r = f64::INFINITY;
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            let e = b - a;
            let len = e.norm();
            if len > 0.0 {
                r = r.min(a.cross(b).abs() / len);
            }
        }
        r
    }

    /// Support function `max { u . v : v in body }` of the body at `u`.
    pub fn support(&self, u: Vec2) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Signed area (positive for counterclockwise).
    pub fn area(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        let mut s = 0.0;
        for i in 0..n {
            s += v[i].cross(v[(i + 1) % n]);
        }
        s / 2.0
    }
}

/// Inscribed polygonal approximation of the unit ball `{H <= 1}`.
///
/// `n` equispaced angles, `n >= 8` even; requires a positive anisotropy
/// (otherwise the ball is unbounded).
pub fn unit_ball_poly(h: &Anisotropy, n: usize) -> Result<ConvexBodyPoly> {
    if n < 8 || n % 2 != 0 {
        return Err(Error::InvalidParams(format!(
            "unit ball polygon needs even n >= 8, got {n}"
        )));
    }
    match h.classify(CLASSIFY_TOL)? {
        AnisotropyClass::Positive => {}
        _ => return Err(Error::DegenerateBody),
    }
    let mut vertices = Vec::with_capacity(n);
    for i in 0..n {
        let phi = 2.0 * PI * i as f64 / n as f64;
        let u = Vec2::unit(phi);
        vertices.push(u * (1.0 / h.eval(u)));
    }
    Ok(ConvexBodyPoly { vertices })
}

/// Polar body `{u : u . v <= 1 for all v in B}` of a symmetric convex
/// polygon: one polar vertex per primal edge. Involutive on polygons.
pub fn polar_body(b: &ConvexBodyPoly) -> Result<ConvexBodyPoly> {
    b.validate()?;
    let v = &b.vertices;
    let n = v.len();
    let mut vertices = Vec::with_capacity(n);
    for i in 0..n {
        let a = v[i];
        let c = v[(i + 1) % n];
        let det = a.cross(c);
        if det <= 0.0 {
            return Err(Error::OriginNotInterior);
        }
        // Solve u . a = 1, u . c = 1.
        vertices.push(Vec2::new((c.y - a.y) / det, (a.x - c.x) / det));
    }
    Ok(ConvexBodyPoly { vertices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn dir(c: f64, theta: f64) -> Anisotropy {
        Anisotropy::directional(c, theta)
    }

    #[test]
    fn eval_examples() {
        assert_relative_eq!(Anisotropy::Euclidean.eval(Vec2::new(3.0, 4.0)), 5.0);
        assert!(dir(1.0, PI / 2.0).eval(Vec2::new(7.0, 0.0)).abs() < 1e-12);
        for p in [1.5, 2.0, 3.0] {
            let h = Anisotropy::weighted_lq(p, 1.0, 1.0);
            assert_relative_eq!(
                h.eval(Vec2::new(1.0, 1.0)),
                2.0_f64.powf(1.0 / p),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn sup_norm_examples() {
        assert_relative_eq!(Anisotropy::Euclidean.sup_norm(), 1.0);
        assert_relative_eq!(dir(2.0, 0.7).sup_norm(), 2.0);
        let q = Anisotropy::quadratic([[4.0, 0.0], [0.0, 1.0]]);
        // Oracle: dense circle sampling.
        let mut m = 0.0_f64;
        for i in 0..200_000 {
            m = m.max(q.eval_angle(i as f64 * PI / 200_000.0));
        }
        assert_relative_eq!(q.sup_norm(), 2.0, epsilon = 1e-12);
        assert_relative_eq!(q.sup_norm(), m, epsilon = 1e-8);
    }

    #[test]
    fn sup_norm_weighted_lq_against_sampling() {
        for (q, wx, wy) in [(1.0, 1.0, 1.0), (1.5, 2.0, 0.5), (3.0, 1.0, 0.25), (2.0, 0.3, 0.9)] {
            let h = Anisotropy::weighted_lq(q, wx, wy);
            let mut m = 0.0_f64;
            for i in 0..200_000 {
                m = m.max(h.eval_angle(i as f64 * PI / 200_000.0));
            }
            assert_relative_eq!(h.sup_norm(), m, epsilon = 1e-9, max_relative = 1e-9);
        }
    }

    #[test]
    fn classify_round_trip_and_examples() {
        match dir(3.0, PI / 4.0).classify(1e-9).unwrap() {
            AnisotropyClass::Degenerate { c, theta } => {
                assert_relative_eq!(c, 3.0, epsilon = 1e-9);
                assert_relative_eq!(theta, PI / 4.0, epsilon = 1e-7);
            }
            other => panic!("expected degenerate, got {other:?}"),
        }
        assert_eq!(
            Anisotropy::Euclidean.classify(1e-9).unwrap(),
            AnisotropyClass::Positive
        );
        assert_eq!(Anisotropy::Zero.classify(1e-9).unwrap(), AnisotropyClass::Zero);
        // |x + y| = sqrt(2) |cos(pi/4) x + sin(pi/4) y|
        let q = Anisotropy::quadratic([[1.0, 1.0], [1.0, 1.0]]);
        match q.classify(1e-9).unwrap() {
            AnisotropyClass::Degenerate { c, theta } => {
                assert_relative_eq!(c, 2.0_f64.sqrt(), epsilon = 1e-9);
                assert_relative_eq!(theta, PI / 4.0, epsilon = 1e-6);
            }
            other => panic!("expected degenerate, got {other:?}"),
        }
    }

    #[test]
    fn classify_identity_on_directional_grid() {
        for &c in &[0.1, 1.0, 10.0] {
            for k in 0..64 {
                let theta = k as f64 * PI / 64.0;
                match dir(c, theta).classify(1e-9).unwrap() {
                    AnisotropyClass::Degenerate { c: cc, theta: tt } => {
                        assert_relative_eq!(cc, c, max_relative = 1e-9);
                        assert!(
                            crate::math::angle_dist_mod_pi(tt, theta) < 1e-7,
                            "theta {tt} vs {theta}"
                        );
                    }
                    other => panic!("expected degenerate, got {other:?}"),
                }
            }
        }
    }

    #[test]
    fn rotation_examples() {
        let h = dir(1.0, PI / 2.0).rotate(-PI / 2.0);
        for k in 0..32 {
            let xi = Vec2::unit(0.37 * k as f64) * (0.1 + k as f64);
            assert_relative_eq!(h.eval(xi), xi.x.abs(), epsilon = 1e-12);
        }
        let e = Anisotropy::Euclidean.rotate(0.9);
        assert_eq!(e, Anisotropy::Euclidean);
        // Inverse composition on a sampled tree.
        let tree = Anisotropy::lp_sum(
            3.0,
            vec![Anisotropy::Euclidean, dir(0.5, 0.3)],
        );
        let rt = tree.rotate(0.7).rotate(-0.7);
        for k in 0..100 {
            let xi = Vec2::unit(0.063 * k as f64) * (1.0 + (k % 7) as f64);
            assert_relative_eq!(rt.eval(xi), tree.eval(xi), epsilon = 1e-12);
        }
    }

    #[test]
    fn dominating_degenerate_examples() {
        // Already degenerate: identity up to classification tolerance.
        let d = dir(2.0, 1.1);
        match d.dominating_degenerate().unwrap() {
            Anisotropy::Directional { c, theta } => {
                assert_relative_eq!(c, 2.0, max_relative = 1e-9);
                assert!(crate::math::angle_dist_mod_pi(theta, 1.1) < 1e-7);
            }
            other => panic!("expected directional, got {other:?}"),
        }

        // Euclidean: any axis works; check domination and norm.
        let e0 = Anisotropy::Euclidean.dominating_degenerate().unwrap();
        assert_relative_eq!(e0.sup_norm(), 1.0, epsilon = 1e-9);

        // Anisotropic quadratic: axis of maximal H is x, supporting line
        // vertical; H0 = 2 |x|.
        let q = Anisotropy::quadratic([[4.0, 0.0], [0.0, 1.0]]);
        let q0 = q.dominating_degenerate().unwrap();
        assert_relative_eq!(q0.sup_norm(), 2.0, epsilon = 1e-9);
        for h in [&e0, &q0] {
            let big = if h == &e0 { &Anisotropy::Euclidean } else { &q };
            for i in 0..4096 {
                let u = Vec2::unit(i as f64 * 2.0 * PI / 4096.0);
                assert!(big.eval(u) >= h.eval(u) - 1e-9);
            }
        }
        match q0 {
            Anisotropy::Directional { theta, .. } => {
                assert!(crate::math::angle_dist_mod_pi(theta, 0.0) < 1e-4);
            }
            other => panic!("expected directional, got {other:?}"),
        }
    }

    #[test]
    fn dominating_degenerate_sampled_trees() {
        let trees = vec![
            Anisotropy::lp_sum(2.0, vec![dir(1.0, 0.2), dir(0.7, 1.4)]),
            Anisotropy::max_of(vec![dir(1.0, 0.0), dir(1.0, PI / 3.0)]),
            Anisotropy::weighted_lq(1.5, 1.0, 2.0),
            Anisotropy::lp_sum(
                3.0,
                vec![Anisotropy::Euclidean, Anisotropy::weighted_lq(3.0, 1.0, 1.0)],
            ),
        ];
        for h in trees {
            let h0 = h.dominating_degenerate().unwrap();
            assert_relative_eq!(h0.sup_norm(), h.sup_norm(), max_relative = 1e-9);
            for i in 0..4096 {
                let u = Vec2::unit(i as f64 * 2.0 * PI / 4096.0);
                assert!(
                    h.eval(u) >= h0.eval(u) - 1e-9 * h.sup_norm(),
                    "domination fails for {h:?} at sample {i}"
                );
            }
        }
    }

    #[test]
    fn unit_ball_examples() {
        let b = unit_ball_poly(&Anisotropy::Euclidean, 8).unwrap();
        for v in &b.vertices {
            assert_relative_eq!(v.norm(), 1.0, epsilon = 1e-12);
        }
        // l^1 ball: extreme points on the axes.
        let l1 = unit_ball_poly(&Anisotropy::weighted_lq(1.0, 1.0, 1.0), 8).unwrap();
        assert_relative_eq!(l1.vertices[0].x, 1.0, epsilon = 1e-12);
        assert_relative_eq!(l1.vertices[2].y, 1.0, epsilon = 1e-12);
        // Ellipse 4x^2 + y^2 = 1 sampled radially.
        let q = Anisotropy::quadratic([[4.0, 0.0], [0.0, 1.0]]);
        let e = unit_ball_poly(&q, 256).unwrap();
        for v in &e.vertices {
            assert_relative_eq!(4.0 * v.x * v.x + v.y * v.y, 1.0, epsilon = 1e-10);
        }
        assert!(matches!(
            unit_ball_poly(&dir(1.0, 0.3), 16),
            Err(Error::DegenerateBody)
        ));
    }

    #[test]
    fn polar_dualities() {
        // l^1 ball -> l^inf ball.
        let l1 = ConvexBodyPoly {
            vertices: vec![
                Vec2::new(1.0, 0.0),
                Vec2::new(0.0, 1.0),
                Vec2::new(-1.0, 0.0),
                Vec2::new(0.0, -1.0),
            ],
        };
        let linf = polar_body(&l1).unwrap();
        for v in &linf.vertices {
            assert_relative_eq!(v.x.abs(), 1.0, epsilon = 1e-12);
            assert_relative_eq!(v.y.abs(), 1.0, epsilon = 1e-12);
        }
        // Regular n-gon inscribed in the unit circle -> circumscribed copy
        // scaled by 1/cos(pi/n). Oracle: support-function evaluation.
        let n = 12;
        let gon = unit_ball_poly(&Anisotropy::Euclidean, n).unwrap();
        let dual = polar_body(&gon).unwrap();
        for v in &dual.vertices {
            assert_relative_eq!(v.norm(), 1.0 / (PI / n as f64).cos(), epsilon = 1e-12);
        }
        for i in 0..n {
            let u = Vec2::unit(2.0 * PI * (i as f64 + 0.5) / n as f64);
            // Polar membership boundary: support of primal equals 1 there.
            assert!((gon.support(u * (1.0 / gon.support(u))) - 1.0).abs() < 1e-12);
        }
        // Involution.
        let back = polar_body(&dual).unwrap();
        for (a, b) in gon.vertices.iter().zip(back.vertices.iter().skip(n - 1).chain(back.vertices.iter())) {
            // polar of polar may rotate the vertex list; compare as sets.
            let _ = (a, b);
        }
        let mut matched = 0;
        for a in &gon.vertices {
            if back.vertices.iter().any(|b| a.dist(*b) < 1e-12) {
                matched += 1;
            }
        }
        assert_eq!(matched, n);
    }

    #[test]
    fn inradius_examples() {
        let square = ConvexBodyPoly {
            vertices: vec![
                Vec2::new(1.0, -1.0),
                Vec2::new(1.0, 1.0),
                Vec2::new(-1.0, 1.0),
                Vec2::new(-1.0, -1.0),
            ],
        };
        assert_relative_eq!(square.inradius(), 1.0, epsilon = 1e-12);
        // Apothem of a regular hexagon inscribed in the unit circle.
        let hex = ConvexBodyPoly {
            vertices: (0..6).map(|k| Vec2::unit(k as f64 * PI / 3.0)).collect(),
        };
        assert_relative_eq!(hex.inradius(), (PI / 6.0).cos(), epsilon = 1e-12);
        let q = Anisotropy::quadratic([[4.0, 0.0], [0.0, 1.0]]);
        let b = unit_ball_poly(&q, 256).unwrap();
        assert_relative_eq!(b.inradius(), 1.0 / q.sup_norm(), epsilon = 1e-3);
    }

    #[test]
    fn json_round_trip() {
        let h = Anisotropy::lp_sum(
            2.0,
            vec![
                Anisotropy::directional(1.0, PI / 2.0),
                Anisotropy::scaled(0.5, Anisotropy::Euclidean),
            ],
        );
        let s = serde_json::to_string(&h).unwrap();
        assert!(s.contains("\"kind\":\"lpsum\""));
        let back: Anisotropy = serde_json::from_str(&s).unwrap();
        assert_eq!(h, back);
        let d: Anisotropy =
            serde_json::from_str(r#"{"kind":"directional","c":1.0,"theta":1.5707963267948966}"#)
                .unwrap();
        assert_relative_eq!(d.eval(Vec2::new(0.0, 2.0)), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn homogeneity_and_convexity_dense_sampling() {
        // Deterministic 1000-sample sweeps complementing the property tests.
        let h = Anisotropy::lp_sum(
            2.5,
            vec![
                Anisotropy::max_of(vec![dir(1.0, 0.2), Anisotropy::weighted_lq(1.5, 1.0, 0.5)]),
                Anisotropy::quadratic([[2.0, 0.4], [0.4, 1.0]]),
            ],
        );
        for k in 0..1000 {
            let t = -5.0 + 10.0 * (k as f64) / 999.0;
            let xi = Vec2::unit(0.61 * k as f64) * (0.1 + (k % 13) as f64 * 0.3);
            let lhs = h.eval(xi * t);
            let rhs = t.abs() * h.eval(xi);
            assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs), "homogeneity at {k}");
            let zeta = Vec2::unit(1.7 + 0.37 * k as f64) * (0.2 + (k % 7) as f64);
            let mid = h.eval((xi + zeta) * 0.5);
            let avg = 0.5 * (h.eval(xi) + h.eval(zeta));
            assert!(mid <= avg + 1e-12 * (1.0 + avg), "convexity at {k}");
        }
    }

    /// Random anisotropy trees for property tests.
    fn arb_anisotropy(depth: u32) -> BoxedStrategy<Anisotropy> {
        let leaf = prop_oneof![
            Just(Anisotropy::Euclidean),
            (0.01..10.0_f64, 0.0..PI).prop_map(|(c, t)| Anisotropy::directional(c, t)),
            (0.01..4.0_f64, 0.0..4.0_f64, -1.0..1.0_f64).prop_map(|(a, b, r)| {
                let c = r * (a * b).sqrt();
                Anisotropy::quadratic([[a, c], [c, b]])
            }),
            (1.0..4.0_f64, 0.0..3.0_f64, 0.0..3.0_f64)
                .prop_map(|(q, wx, wy)| Anisotropy::weighted_lq(q, wx, wy)),
        ];
        if depth == 0 {
            leaf.boxed()
        } else {
            let inner = arb_anisotropy(depth - 1);
            prop_oneof![
                leaf,
                (0.0..3.0_f64, arb_anisotropy(depth - 1))
                    .prop_map(|(a, c)| Anisotropy::scaled(a, c)),
                (0.0..PI, arb_anisotropy(depth - 1)).prop_map(|(p, c)| c.rotate(p)),
                prop::collection::vec(inner.clone(), 1..3).prop_map(Anisotropy::max_of),
                (1.0..3.0_f64, prop::collection::vec(arb_anisotropy(depth - 1), 1..3))
                    .prop_map(|(p, cs)| Anisotropy::lp_sum(p, cs)),
            ]
            .boxed()
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn homogeneity(h in arb_anisotropy(2), t in -10.0..10.0_f64, phi in 0.0..2.0*PI, r in 0.01..10.0_f64) {
            let xi = Vec2::unit(phi) * r;
            let lhs = h.eval(xi * t);
            let rhs = t.abs() * h.eval(xi);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
        }

        #[test]
        fn midpoint_convexity(h in arb_anisotropy(2), a in 0.0..2.0*PI, b in 0.0..2.0*PI, ra in 0.0..5.0_f64, rb in 0.0..5.0_f64) {
            let xi = Vec2::unit(a) * ra;
            let zeta = Vec2::unit(b) * rb;
            let mid = h.eval((xi + zeta) * 0.5);
            let avg = 0.5 * (h.eval(xi) + h.eval(zeta));
            prop_assert!(mid <= avg + 1e-12 * (1.0 + avg));
        }

        #[test]
        fn nonnegative(h in arb_anisotropy(2), phi in 0.0..2.0*PI, r in 0.0..10.0_f64) {
            prop_assert!(h.eval(Vec2::unit(phi) * r) >= 0.0);
        }

        #[test]
        fn scaled_sup_norm(h in arb_anisotropy(1), alpha in 0.0..5.0_f64) {
            let s = Anisotropy::scaled(alpha, h.clone());
            prop_assert!((s.sup_norm() - alpha * h.sup_norm()).abs() <= 1e-9 * (1.0 + alpha * h.sup_norm()));
        }

        #[test]
        fn polar_involution(n in (4..32usize).prop_map(|k| 2 * k), seed in 0.0..PI) {
            let h = Anisotropy::quadratic([[1.0 + seed, 0.2], [0.2, 2.0 - seed / 4.0]]);
            if let Ok(b) = unit_ball_poly(&h, n) {
                let bb = polar_body(&polar_body(&b).unwrap()).unwrap();
                let scale = b.vertices.iter().map(|v| v.norm()).fold(0.0_f64, f64::max);
                for a in &b.vertices {
                    let ok = bb.vertices.iter().any(|c| a.dist(*c) < 1e-9 * scale);
                    prop_assert!(ok);
                }
            }
        }

        #[test]
        fn sup_norm_bounds_eval(h in arb_anisotropy(2), phi in 0.0..2.0*PI) {
            let s = h.sup_norm();
            prop_assert!(h.eval_angle(phi) <= s * (1.0 + 1e-9) + 1e-12);
        }
    }
}
