//! Directional width functions, attainment predicates and optimal design.
//!
//! `chord_width(M, theta)` is the supremum over lines of direction
//! `(cos theta, sin theta)` of the longest connected open segment of the
//! line inside the region. The shape is rotated so the queried direction is
//! vertical; between consecutive vertex abscissae every section component
//! length is linear in x, so sampling each event interval near its endpoints
//! and midpoint resolves the supremum exactly up to the event perturbation
//! scale.

use super::membrane::{Membrane, SectionComponents};
use crate::math::{angle_dist_mod_pi, golden_max, normalize_angle_pi, Vec2};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Relative tolerance for grouping width-profile maxima.
pub const TOL_CLUSTER: f64 = 1e-6;

/// Attainment of the width supremum is not numerically decidable in
/// general; `Unresolved` is an honest answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriState {
    Attained,
    NotAttained,
    Unresolved,
}

/// Sampled and refined directional width function.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WidthProfile {
    /// Uniform grid on [0, pi).
    pub thetas: Vec<f64>,
    /// L_theta per grid point.
    pub values: Vec<f64>,
    /// Refined supremum of the profile.
    pub sup_width: f64,
    /// Clusters of (theta, L) achieving the supremum within [`TOL_CLUSTER`].
    /// Empty when the profile is flat (`is_continuum`).
    pub maxima: Vec<(f64, f64)>,
    /// Profile constant within tolerance: every direction is maximal.
    pub is_continuum: bool,
    /// Whether the supremum over theta is attained.
    pub attained_flag: TriState,
}

/// Witness for an attained direction, in the rotated frame where the
/// direction is vertical.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessStrip {
    /// Open x-interval over which the maximal component persists.
    pub x_interval: (f64, f64),
    /// The attaining component at the interval midpoint.
    pub y_interval: (f64, f64),
    /// Component length (equals the direction's width).
    pub length: f64,
}

struct Frame {
    /// Edges with p.x < q.x (x-degenerate edges dropped).
    edges: Vec<(Vec2, Vec2)>,
    /// Sorted unique vertex abscissae.
    events: Vec<f64>,
    eps: f64,
}

impl Frame {
    fn new(m: &Membrane, theta: f64) -> Frame {
        let rot = PI / 2.0 - theta;
        let eps = 1e-9 * m.bbox_diag().max(1e-300);
        let mut edges = Vec::with_capacity(m.vertex_count());
        let mut events = Vec::with_capacity(m.vertex_count());
        for ring in m.rings() {
            let pts: Vec<Vec2> = ring.iter().map(|p| p.rotate(rot)).collect();
            let n = pts.len();
            for i in 0..n {
                let (a, b) = (pts[i], pts[(i + 1) % n]);
                events.push(a.x);
                if a.x < b.x {
                    edges.push((a, b));
                } else if b.x < a.x {
                    edges.push((b, a));
                }
            }
        }
        events.sort_by(|u, v| u.partial_cmp(v).unwrap());
        events.dedup_by(|a, b| (*a - *b).abs() <= 0.0);
        edges.sort_by(|e1, e2| e1.0.x.partial_cmp(&e2.0.x).unwrap());
        Frame { edges, events, eps }
    }

    /// Candidate abscissae: each event interval is probed at two offsets
    /// from both endpoints so component lengths (linear in x between events)
    /// can be extrapolated to their exact one-sided event limits.
    fn candidates(&self) -> Vec<f64> {
        let mut xs = Vec::with_capacity(4 * self.events.len());
        for w in self.events.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b - a > 6.0 * self.eps {
                xs.push(a + self.eps);
                xs.push(a + 2.0 * self.eps);
                xs.push(b - 2.0 * self.eps);
                xs.push(b - self.eps);
            } else if b - a > 3.0 * self.eps {
                xs.push(0.5 * (a + b));
            }
        }
        xs
    }

    /// Sweep `visit(x, intervals)` over ascending abscissae.
    fn sweep<F: FnMut(f64, &[(f64, f64)])>(&self, xs: &[f64], mut visit: F) {
        let mut active: Vec<usize> = Vec::new();
        let mut next = 0usize;
        let mut ys: Vec<f64> = Vec::new();
        let mut intervals: Vec<(f64, f64)> = Vec::new();
        for &x in xs {
            while next < self.edges.len() && self.edges[next].0.x <= x {
                active.push(next);
                next += 1;
            }
            active.retain(|&i| self.edges[i].1.x > x);
            ys.clear();
            for &i in &active {
                let (a, b) = self.edges[i];
                if (a.x <= x) != (b.x <= x) {
                    let t = (x - a.x) / (b.x - a.x);
                    ys.push(a.y + t * (b.y - a.y));
                }
            }
            ys.sort_by(|u, v| u.partial_cmp(v).unwrap());
            intervals.clear();
            let mut k = 0;
            while k + 1 < ys.len() {
                let (lo, hi) = (ys[k], ys[k + 1]);
                if hi > lo {
                    match intervals.last_mut() {
                        Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                        _ => intervals.push((lo, hi)),
                    }
                }
                k += 2;
            }
            visit(x, &intervals);
        }
    }

    fn max_component(&self) -> f64 {
        let xs = self.candidates();
        let mut lengths: Vec<Vec<f64>> = Vec::with_capacity(xs.len());
        self.sweep(&xs, |_, iv| {
            lengths.push(iv.iter().map(|(a, b)| b - a).collect());
        });
        let mut best = 0.0_f64;
        let mut k = 0;
        while k < xs.len() {
            // Paired probes (x, x +/- eps apart) share their component
            // structure; extrapolating index-wise gives the exact limit of
            // each component length at the event.
            if k + 1 < xs.len() && (xs[k + 1] - xs[k] - self.eps).abs() < 0.5 * self.eps {
                let (l1, l2) = (&lengths[k], &lengths[k + 1]);
                if l1.len() == l2.len() {
                    for (a, b) in l1.iter().zip(l2) {
                        // Left pair extrapolates to the left event, right
                        // pair to the right one; taking both covers each.
                        best = best.max(2.0 * a - b).max(2.0 * b - a).max(*a).max(*b);
                    }
                } else {
                    for v in l1.iter().chain(l2.iter()) {
                        best = best.max(*v);
                    }
                }
                k += 2;
            } else {
                for v in &lengths[k] {
                    best = best.max(*v);
                }
                k += 1;
            }
        }
        best
    }
}

/// Directional width `L_theta` of the membrane.
pub fn chord_width(m: &Membrane, theta: f64) -> f64 {
    Frame::new(m, theta).max_component()
}

/// Strip-attainment test for one direction (Theorem-level criterion: the
/// per-direction supremum is achieved by section components of the full
/// width on an open interval of abscissae).
///
/// Returns the witness strip in the rotated frame when attained.
pub fn attainment_check(m: &Membrane, theta: f64) -> (bool, Option<WitnessStrip>) {
    let frame = Frame::new(m, theta);
    let sup = frame.max_component();
    if sup <= 0.0 {
        return (false, None);
    }
    let tol = 1e-9 * sup;
    // Component lengths are linear between events, so the midpoint value
    // equals the supremum iff the component is maximal on the whole
    // interval.
    let mut mids = Vec::new();
    for w in frame.events.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a > 10.0 * frame.eps {
            mids.push((a, b));
        }
    }
    let xs: Vec<f64> = mids.iter().map(|(a, b)| 0.5 * (a + b)).collect();
    let mut witness: Option<WitnessStrip> = None;
    let mut idx = 0usize;
    frame.sweep(&xs, |_, iv| {
        if witness.is_none() {
            for (lo, hi) in iv {
                if hi - lo >= sup - tol {
                    witness = Some(WitnessStrip {
                        x_interval: mids[idx],
                        y_interval: (*lo, *hi),
                        length: hi - lo,
                    });
                }
            }
        }
        idx += 1;
    });
    (witness.is_some(), witness)
}

/// Sample and refine the width profile over [0, pi).
///
/// Refinement runs a golden-section pass around every grid-local maximum and
/// watches the final bracket: a value gap that persists while the bracket
/// collapses marks a jump discontinuity, i.e. a supremum that is approached
/// but not attained at that direction.
pub fn width_profile(m: &Membrane, n_theta: usize, refine: bool) -> WidthProfile {
    let n = n_theta.max(64);
    let thetas: Vec<f64> = (0..n).map(|i| i as f64 * PI / n as f64).collect();
    let values: Vec<f64> = thetas.iter().map(|&t| chord_width(m, t)).collect();
    let vmax = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let vmin = values.iter().cloned().fold(f64::INFINITY, f64::min);

    if vmax - vmin <= TOL_CLUSTER * vmax {
        return WidthProfile {
            thetas,
            values,
            sup_width: vmax,
            maxima: Vec::new(),
            is_continuum: true,
            attained_flag: TriState::Attained,
        };
    }

    if !refine {
        let mut maxima = Vec::new();
        for i in 0..n {
            if values[i] >= vmax * (1.0 - TOL_CLUSTER) {
                maxima.push((thetas[i], values[i]));
            }
        }
        let maxima = cluster_maxima(maxima, 2.0 * PI / n as f64);
        return WidthProfile {
            thetas,
            values,
            sup_width: vmax,
            maxima,
            is_continuum: false,
            attained_flag: TriState::Unresolved,
        };
    }

    // Refine every local maximum of the periodic grid.
    let mut peaks: Vec<(f64, f64, bool)> = Vec::new(); // (theta, value, is_jump)
    let step = PI / n as f64;
    for i in 0..n {
        let prev = values[(i + n - 1) % n];
        let next = values[(i + 1) % n];
        if values[i] >= prev && values[i] >= next {
            let a = thetas[i] - step;
            let b = thetas[i] + step;
            let (t, v, fa, fb) = golden_max(|th| chord_width(m, th), a, b, 90);
            let jump = (fa - fb).abs() > TOL_CLUSTER * v.max(vmax);
            peaks.push((normalize_angle_pi(t), v, jump));
        }
    }
    let sup = peaks
        .iter()
        .map(|p| p.1)
        .fold(vmax, f64::max);
    let near: Vec<(f64, f64, bool)> = peaks
        .into_iter()
        .filter(|p| p.1 >= sup * (1.0 - TOL_CLUSTER))
        .collect();
    let any_attained = near.iter().any(|p| !p.2);
    let all_jump = !near.is_empty() && near.iter().all(|p| p.2);
    let maxima = cluster_maxima(near.iter().map(|p| (p.0, p.1)).collect(), 2.0 * step);
    WidthProfile {
        thetas,
        values,
        sup_width: sup,
        maxima,
        is_continuum: false,
        attained_flag: if any_attained {
            TriState::Attained
        } else if all_jump {
            TriState::NotAttained
        } else {
            TriState::Unresolved
        },
    }
}

/// Merge near-maximal directions within an angular tolerance (mod pi),
/// keeping the best value per cluster.
fn cluster_maxima(mut pts: Vec<(f64, f64)>, angle_tol: f64) -> Vec<(f64, f64)> {
    if pts.is_empty() {
        return pts;
    }
    pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut clusters: Vec<(f64, f64)> = Vec::new();
    for (t, v) in pts {
        match clusters.last_mut() {
            Some(last) if t - last.0 <= angle_tol => {
                if v > last.1 {
                    *last = (t, v);
                }
            }
            _ => clusters.push((t, v)),
        }
    }
    // Cyclic wrap: first and last may be the same direction mod pi.
    if clusters.len() > 1 {
        let first = clusters[0];
        let last = *clusters.last().unwrap();
        if angle_dist_mod_pi(first.0, last.0) <= angle_tol {
            clusters[0] = if first.1 >= last.1 { first } else { last };
            clusters.pop();
        }
    }
    clusters
}

/// Whether the width function attains its global maximum.
pub fn has_optimal_design(m: &Membrane) -> TriState {
    width_profile(m, 256, true).attained_flag
}

/// Number of direction clusters for which the strip attainment holds.
///
/// Candidates are the structural directions of the polygon (edge directions
/// and their normals) together with the width-profile maxima; attainment on
/// a polygon requires a linear piece of the section-length function to equal
/// the supremum, which pins the attained set's boundary to such directions.
/// Verified candidates are grouped into angular clusters.
pub fn attainment_multiplicity(m: &Membrane, n_theta: usize) -> usize {
    let mut cand: Vec<f64> = Vec::new();
    for ring in m.rings() {
        let n = ring.len();
        for i in 0..n {
            let e = ring[(i + 1) % n] - ring[i];
            if e.norm() > 0.0 {
                let dir = normalize_angle_pi(e.y.atan2(e.x));
                cand.push(dir);
                cand.push(normalize_angle_pi(dir + PI / 2.0));
            }
        }
    }
    let profile = width_profile(m, n_theta.max(256), true);
    for (t, _) in &profile.maxima {
        cand.push(normalize_angle_pi(*t));
    }
    cand.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cand.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);

    let verdicts: Vec<(f64, bool)> = cand
        .iter()
        .map(|&t| (t, attainment_check(m, t).0))
        .collect();

    // Group consecutive attained candidates; a false candidate or a wide
    // angular gap separates clusters (cyclically, mod pi).
    const GAP: f64 = 0.1;
    let n = verdicts.len();
    if n == 0 {
        return 0;
    }
    let attained: Vec<usize> = (0..n).filter(|&i| verdicts[i].1).collect();
    if attained.is_empty() {
        return 0;
    }
    if attained.len() == n {
        return 1;
    }
    let mut clusters = 0;
    for &i in &attained {
        // Cluster starts where the cyclic predecessor is false or far away.
        let prev = (i + n - 1) % n;
        let gap = if i == 0 {
            verdicts[0].0 + PI - verdicts[n - 1].0
        } else {
            verdicts[i].0 - verdicts[i - 1].0
        };
        if !verdicts[prev].1 || gap > GAP {
            clusters += 1;
        }
    }
    clusters.max(1)
}

/// Convenience: vertical-frame section components exposed for reports.
pub fn section_in_direction(m: &Membrane, theta: f64, x: f64) -> SectionComponents {
    let rot = PI / 2.0 - theta;
    m.rotated(rot).vertical_components(x)
}
