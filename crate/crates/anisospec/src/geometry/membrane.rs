//! Polygonal membranes with holes.
//!
//! A membrane is an open, bounded, connected planar region realized as a
//! simple outer ring (counterclockwise) minus pairwise-disjoint simple hole
//! rings (clockwise) strictly inside it.

use crate::error::{Error, Result};
use crate::math::Vec2;
use serde::{Deserialize, Serialize};

/// Polygon-with-holes region.
///
/// Serializes as `{"outer": [[x, y], ...], "holes": [[[x, y], ...], ...]}`;
/// deserialization re-validates the rings.
#[derive(Clone, Debug, Serialize)]
pub struct Membrane {
    outer: Vec<Vec2>,
    holes: Vec<Vec<Vec2>>,
}

impl<'de> serde::Deserialize<'de> for Membrane {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Membrane, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            outer: Vec<Vec2>,
            #[serde(default)]
            holes: Vec<Vec<Vec2>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Membrane::new(raw.outer, raw.holes).map_err(serde::de::Error::custom)
    }
}

/// Intersection of the region with a vertical line: disjoint open intervals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionComponents {
    pub x: f64,
    /// Sorted, disjoint (y_low, y_high) pairs; may be empty.
    pub intervals: Vec<(f64, f64)>,
}

impl SectionComponents {
    /// Length of the longest component (0 for an empty section).
    pub fn max_len(&self) -> f64 {
        self.intervals
            .iter()
            .map(|(a, b)| b - a)
            .fold(0.0_f64, f64::max)
    }

    /// Total length of all components.
    pub fn total_len(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }
}

fn signed_area(ring: &[Vec2]) -> f64 {
    let n = ring.len();
    let mut s = 0.0;
    for i in 0..n {
        s += ring[i].cross(ring[(i + 1) % n]);
    }
    s / 2.0
}

fn dedup_ring(ring: &[Vec2], eps: f64) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = Vec::with_capacity(ring.len());
    for &p in ring {
        if out.last().map_or(true, |q| q.dist(p) > eps) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].dist(*out.last().unwrap()) <= eps {
        out.pop();
    }
    out
}

/// Proper-crossing test for open segments (shared endpoints do not count).
fn segments_cross(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let d1 = (b - a).cross(c - a);
    let d2 = (b - a).cross(d - a);
    let d3 = (d - c).cross(a - c);
    let d4 = (d - c).cross(b - c);
    (d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0) && d1 != d2 && d3 != d4
}

fn ring_is_simple(ring: &[Vec2]) -> bool {
    let n = ring.len();
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        for j in (i + 1)..n {
            // Skip adjacent edges (they share an endpoint).
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let (c, d) = (ring[j], ring[(j + 1) % n]);
            if segments_cross(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

fn rings_cross(r1: &[Vec2], r2: &[Vec2]) -> bool {
    let n1 = r1.len();
    let n2 = r2.len();
    for i in 0..n1 {
        for j in 0..n2 {
            if segments_cross(r1[i], r1[(i + 1) % n1], r2[j], r2[(j + 1) % n2]) {
                return true;
            }
        }
    }
    false
}

/// Crossing-parity point-in-ring test (half-open rule; boundary points give
/// an arbitrary but consistent answer).
pub(crate) fn point_in_ring(ring: &[Vec2], p: Vec2) -> bool {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let t = (p.y - a.y) / (b.y - a.y);
            if p.x < a.x + t * (b.x - a.x) {
                inside = !inside;
            }
        }
    }
    inside
}

impl Membrane {
    /// Build and validate a membrane. Ring orientations are normalized
    /// (outer counterclockwise, holes clockwise).
    pub fn new(outer: Vec<Vec2>, holes: Vec<Vec<Vec2>>) -> Result<Membrane> {
        let scale = outer
            .iter()
            .chain(holes.iter().flatten())
            .map(|p| p.x.abs().max(p.y.abs()))
            .fold(0.0_f64, f64::max);
        if !scale.is_finite() {
            return Err(Error::InvalidRing("non-finite coordinates".into()));
        }
        let eps = 1e-12 * (1.0 + scale);

        let mut outer = dedup_ring(&outer, eps);
        if outer.len() < 3 {
            return Err(Error::InvalidRing("outer ring needs >= 3 vertices".into()));
        }
        if signed_area(&outer) < 0.0 {
            outer.reverse();
        }
        if signed_area(&outer) <= 0.0 {
            return Err(Error::InvalidRing("outer ring has zero area".into()));
        }
        if !ring_is_simple(&outer) {
            return Err(Error::InvalidRing("outer ring self-intersects".into()));
        }

        let mut norm_holes = Vec::with_capacity(holes.len());
        for (k, h) in holes.into_iter().enumerate() {
            let mut h = dedup_ring(&h, eps);
            if h.len() < 3 {
                return Err(Error::InvalidRing(format!("hole {k} needs >= 3 vertices")));
            }
            if signed_area(&h) > 0.0 {
                h.reverse();
            }
            if signed_area(&h) >= 0.0 {
                return Err(Error::InvalidRing(format!("hole {k} has zero area")));
            }
            if !ring_is_simple(&h) {
                return Err(Error::InvalidRing(format!("hole {k} self-intersects")));
            }
            if !point_in_ring(&outer, h[0]) || rings_cross(&outer, &h) {
                return Err(Error::InvalidRing(format!("hole {k} not inside outer ring")));
            }
            norm_holes.push(h);
        }
        for i in 0..norm_holes.len() {
            for j in (i + 1)..norm_holes.len() {
                if rings_cross(&norm_holes[i], &norm_holes[j])
                    || point_in_ring(&norm_holes[i], norm_holes[j][0])
                    || point_in_ring(&norm_holes[j], norm_holes[i][0])
                {
                    return Err(Error::InvalidRing(format!("holes {i} and {j} overlap")));
                }
            }
        }
        Ok(Membrane {
            outer,
            holes: norm_holes,
        })
    }

    pub fn outer(&self) -> &[Vec2] {
        &self.outer
    }

    pub fn holes(&self) -> &[Vec<Vec2>] {
        &self.holes
    }

    /// All rings: outer first, then holes.
    pub fn rings(&self) -> impl Iterator<Item = &[Vec2]> {
        std::iter::once(self.outer.as_slice()).chain(self.holes.iter().map(|h| h.as_slice()))
    }

    pub fn vertex_count(&self) -> usize {
        self.outer.len() + self.holes.iter().map(|h| h.len()).sum::<usize>()
    }

    /// Shoelace area of the outer ring minus the holes.
    pub fn area(&self) -> f64 {
        signed_area(&self.outer) + self.holes.iter().map(|h| signed_area(h)).sum::<f64>()
    }

    /// Axis-aligned bounding box (min, max).
    pub fn bbox(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.outer {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    pub(crate) fn bbox_diag(&self) -> f64 {
        let (lo, hi) = self.bbox();
        (hi - lo).norm()
    }

    /// Max pairwise distance over outer-ring vertices (holes cannot increase
    /// the diameter). Convex hull plus rotating calipers.
    pub fn diameter(&self) -> f64 {
        let hull = convex_hull(&self.outer);
        let n = hull.len();
        if n == 1 {
            return 0.0;
        }
        if n == 2 {
            return hull[0].dist(hull[1]);
        }
        let mut best = 0.0_f64;
        let mut j = 1;
        for i in 0..n {
            let edge = hull[(i + 1) % n] - hull[i];
            // Advance the antipodal point while the triangle area grows.
            while edge.cross(hull[(j + 1) % n] - hull[i]) > edge.cross(hull[j] - hull[i]) {
                j = (j + 1) % n;
            }
            best = best.max(hull[i].dist(hull[j]));
            best = best.max(hull[(i + 1) % n].dist(hull[j]));
        }
        best
    }

    /// True iff the membrane has no holes and the outer ring is convex
    /// (collinear runs allowed).
    pub fn is_convex(&self) -> bool {
        if !self.holes.is_empty() {
            return false;
        }
        let v = &self.outer;
        let n = v.len();
        let scale = self.bbox_diag();
        let tol = 1e-12 * scale * scale;
        for i in 0..n {
            let c = (v[(i + 1) % n] - v[i]).cross(v[(i + 2) % n] - v[(i + 1) % n]);
            if c < -tol {
                return false;
            }
        }
        true
    }

    /// Point-in-region test (outer minus holes), by crossing parity over all
    /// rings.
    pub fn contains(&self, p: Vec2) -> bool {
        if !point_in_ring(&self.outer, p) {
            return false;
        }
        !self.holes.iter().any(|h| point_in_ring(h, p))
    }

    /// Intersection with the vertical line at `x` as disjoint open intervals.
    ///
    /// Edge-crossing parity with a half-open rule: an edge contributes iff
    /// its endpoints straddle the line with the left endpoint strictly left.
    /// This resolves lines through vertices consistently with open-set
    /// semantics.
    pub fn vertical_components(&self, x: f64) -> SectionComponents {
        let mut ys: Vec<f64> = Vec::new();
        for ring in self.rings() {
            let n = ring.len();
            for i in 0..n {
                let a = ring[i];
                let b = ring[(i + 1) % n];
                if (a.x <= x) != (b.x <= x) {
                    let t = (x - a.x) / (b.x - a.x);
                    ys.push(a.y + t * (b.y - a.y));
                }
            }
        }
        ys.sort_by(|u, v| u.partial_cmp(v).unwrap());
        let mut intervals = Vec::with_capacity(ys.len() / 2);
        let mut k = 0;
        while k + 1 < ys.len() {
            if ys[k + 1] > ys[k] {
                intervals.push((ys[k], ys[k + 1]));
            }
            k += 2;
        }
        // Merge touching intervals produced by tangential crossings.
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if iv.0 <= last.1 => last.1 = last.1.max(iv.1),
                _ => merged.push(iv),
            }
        }
        SectionComponents {
            x,
            intervals: merged,
        }
    }

    /// Rotate all vertices counterclockwise by `phi` about the origin.
    pub fn rotated(&self, phi: f64) -> Membrane {
        Membrane {
            outer: self.outer.iter().map(|p| p.rotate(phi)).collect(),
            holes: self
                .holes
                .iter()
                .map(|h| h.iter().map(|p| p.rotate(phi)).collect())
                .collect(),
        }
    }

    /// Scale all vertices by `s > 0` about the origin.
    pub fn scaled(&self, s: f64) -> Membrane {
        Membrane {
            outer: self.outer.iter().map(|&p| p * s).collect(),
            holes: self
                .holes
                .iter()
                .map(|h| h.iter().map(|&p| p * s).collect())
                .collect(),
        }
    }

    /// Translate all vertices by `d`.
    pub fn translated(&self, d: Vec2) -> Membrane {
        Membrane {
            outer: self.outer.iter().map(|&p| p + d).collect(),
            holes: self
                .holes
                .iter()
                .map(|h| h.iter().map(|&p| p + d).collect())
                .collect(),
        }
    }
}

/// Monotone-chain convex hull (counterclockwise, no duplicate endpoint).
pub(crate) fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| a == b);
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let mut hull: Vec<Vec2> = Vec::with_capacity(2 * n);
    for &p in pts.iter().chain(pts.iter().rev().skip(1)) {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b - a).cross(p - a) <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.pop();
    hull
}
