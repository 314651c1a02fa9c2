//! Shape generator gallery.
//!
//! Curved shapes are realized as inscribed polygons; vertex counts are
//! explicit parameters so tests can state their discretization error.

use super::membrane::Membrane;
use crate::error::{Error, Result};
use crate::math::Vec2;
use std::f64::consts::PI;

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{name} = {v} must be positive")))
    }
}

/// Axis-aligned rectangle (0, a) x (0, b).
pub fn rect(a: f64, b: f64) -> Result<Membrane> {
    positive("a", a)?;
    positive("b", b)?;
    Membrane::new(
        vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(a, 0.0),
            Vec2::new(a, b),
            Vec2::new(0.0, b),
        ],
        vec![],
    )
}

/// Rectangle a x b centered at the origin, rotated counterclockwise by `phi`.
pub fn rotated_rect(a: f64, b: f64, phi: f64) -> Result<Membrane> {
    positive("a", a)?;
    positive("b", b)?;
    let corners = [
        Vec2::new(-a / 2.0, -b / 2.0),
        Vec2::new(a / 2.0, -b / 2.0),
        Vec2::new(a / 2.0, b / 2.0),
        Vec2::new(-a / 2.0, b / 2.0),
    ];
    Membrane::new(corners.iter().map(|p| p.rotate(phi)).collect(), vec![])
}

/// Inscribed regular polygon approximating the disk of radius `r`.
///
/// The vertex count is forced odd: an even regular polygon has antipodal
/// parallel edges, which create width-attainment strips that the smooth disk
/// does not have.
pub fn disk(r: f64, n: usize) -> Result<Membrane> {
    positive("r", r)?;
    if n < 16 {
        return Err(Error::InvalidParams(format!("disk needs n >= 16, got {n}")));
    }
    let m = if n % 2 == 0 { n + 1 } else { n };
    Membrane::new(
        (0..m)
            .map(|k| Vec2::unit(2.0 * PI * k as f64 / m as f64) * r)
            .collect(),
        vec![],
    )
}

/// Annulus with outer radius `big_r` and hole radius `small_r`, both
/// approximated by `n`-gons with vertices on the circles.
pub fn annulus(big_r: f64, small_r: f64, n: usize) -> Result<Membrane> {
    positive("R", big_r)?;
    positive("r", small_r)?;
    if small_r >= big_r {
        return Err(Error::InvalidParams(format!(
            "annulus needs r < R, got r = {small_r}, R = {big_r}"
        )));
    }
    if n < 16 {
        return Err(Error::InvalidParams(format!("annulus needs n >= 16, got {n}")));
    }
    let ring = |radius: f64| -> Vec<Vec2> {
        (0..n)
            .map(|k| Vec2::unit(2.0 * PI * k as f64 / n as f64) * radius)
            .collect()
    };
    Membrane::new(ring(big_r), vec![ring(small_r)])
}

/// Disk of radius `r` cropped by the two horizontal chords y = -h and y = h.
///
/// The two parallel straight edges give the shape exactly one cluster of
/// width-attainment directions (around the cut normal); a single chord crop
/// admits none.
pub fn cropped_disk(r: f64, h: f64, n: usize) -> Result<Membrane> {
    positive("r", r)?;
    positive("h", h)?;
    if h >= r {
        return Err(Error::InvalidParams(format!(
            "cropped_disk needs h < r, got h = {h}, r = {r}"
        )));
    }
    if n < 16 {
        return Err(Error::InvalidParams(format!(
            "cropped_disk needs n >= 16, got {n}"
        )));
    }
    let alpha = (h / r).asin();
    let arc_pts = ((n as f64) * alpha / PI).ceil().max(8.0) as usize;
    let mut pts = Vec::with_capacity(2 * arc_pts + 3);
    let arc = |from: f64, to: f64, count: usize, out: &mut Vec<Vec2>| {
        for k in 0..=count {
            let t = from + (to - from) * k as f64 / count as f64;
            out.push(Vec2::unit(t) * r);
        }
    };
    // The two arcs get different sample counts: antipodally symmetric
    // sampling would create parallel arc-edge pairs (and with them width
    // strips) that the smooth shape does not have.
    arc(-alpha, alpha, arc_pts, &mut pts);
    arc(PI - alpha, PI + alpha, arc_pts + 1, &mut pts);
    Membrane::new(pts, vec![])
}

/// Intersection of `m` congruent rectangles (length `len`, width `wid`)
/// centered at the origin at angles j pi / m.
///
/// For thin rectangles this is a regular 2m-gon realizing exactly m
/// width-attainment direction clusters.
pub fn asterisk(m: usize, len: f64, wid: f64) -> Result<Membrane> {
    if m < 1 {
        return Err(Error::InvalidParams("asterisk needs m >= 1".into()));
    }
    positive("len", len)?;
    positive("wid", wid)?;
    if wid > len {
        return Err(Error::InvalidParams(format!(
            "asterisk needs wid <= len, got wid = {wid}, len = {len}"
        )));
    }
    // Start from a generous box and clip by the 4m half-planes.
    let big = len * 2.0;
    let mut poly = vec![
        Vec2::new(-big, -big),
        Vec2::new(big, -big),
        Vec2::new(big, big),
        Vec2::new(-big, big),
    ];
    for j in 0..m {
        let e = Vec2::unit(j as f64 * PI / m as f64);
        let p = e.perp();
        for (nrm, c) in [
            (e, len / 2.0),
            (-e, len / 2.0),
            (p, wid / 2.0),
            (-p, wid / 2.0),
        ] {
            poly = clip_halfplane(&poly, nrm, c);
            if poly.len() < 3 {
                return Err(Error::InvalidParams(
                    "asterisk degenerated while clipping".into(),
                ));
            }
        }
    }
    Membrane::new(poly, vec![])
}

/// Sutherland-Hodgman clip of a convex polygon by the half-plane n.x <= c.
fn clip_halfplane(poly: &[Vec2], n: Vec2, c: f64) -> Vec<Vec2> {
    let mut out = Vec::with_capacity(poly.len() + 2);
    let len = poly.len();
    for i in 0..len {
        let a = poly[i];
        let b = poly[(i + 1) % len];
        let da = n.dot(a) - c;
        let db = n.dot(b) - c;
        if da <= 0.0 {
            out.push(a);
        }
        if (da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0) {
            let t = da / (da - db);
            out.push(a + (b - a) * t);
        }
    }
    out
}

/// Star with `2m` spikes of radius `big_r` alternating with notches of
/// radius `small_r` (a 4m-gon). The spike tips form m antipodal pairs, so
/// the width function has exactly m global maxima; the profile realizes m
/// extremizer directions while deep notches prevent any attainment strip.
pub fn star(m: usize, big_r: f64, small_r: f64) -> Result<Membrane> {
    if m < 1 {
        return Err(Error::InvalidParams("star needs m >= 1".into()));
    }
    positive("R", big_r)?;
    positive("r", small_r)?;
    if small_r >= big_r {
        return Err(Error::InvalidParams(format!(
            "star needs r < R, got r = {small_r}, R = {big_r}"
        )));
    }
    let mut pts = Vec::with_capacity(4 * m);
    for k in 0..(2 * m) {
        let base = k as f64 * PI / m as f64;
        pts.push(Vec2::unit(base) * big_r);
        pts.push(Vec2::unit(base + PI / (2.0 * m as f64)) * small_r);
    }
    Membrane::new(pts, vec![])
}

/// Serpentine chain of half-annuli with inner radius `a` and outer radius
/// `2a`; consecutive centers are spaced `3a` apart and alternate above and
/// below the axis, glued along shared feet.
fn s_polygon(n_rings: usize, a: f64, n: usize) -> Vec<Vec2> {
    let b = 2.0 * a;
    let spacing = a + b;
    let center = |i: usize| Vec2::new(i as f64 * spacing, 0.0);
    let outer_pts = (n / 2).max(16);
    let inner_pts = (n / 4).max(8);
    let arc = |c: Vec2, radius: f64, from: f64, to: f64, count: usize, out: &mut Vec<Vec2>| {
        for k in 0..=count {
            let t = from + (to - from) * k as f64 / count as f64;
            out.push(c + Vec2::unit(t) * radius);
        }
    };
    let mut pts: Vec<Vec2> = Vec::new();
    // South side, west to east: left foot, then inner arcs of upper rings
    // alternating with outer arcs of lower rings.
    pts.push(center(0) + Vec2::new(-b, 0.0));
    pts.push(center(0) + Vec2::new(-a, 0.0));
    let mut i = 0;
    while i + 1 < n_rings {
        arc(center(i), a, PI, 0.0, inner_pts, &mut pts);
        arc(center(i + 1), b, PI, 2.0 * PI, outer_pts, &mut pts);
        i += 2;
    }
    // North side, east to west: right foot, then inner arcs of lower rings
    // alternating with outer arcs of upper rings.
    let last = n_rings - 1;
    pts.push(center(last) + Vec2::new(b, 0.0));
    pts.push(center(last) + Vec2::new(a, 0.0));
    let mut i = last;
    loop {
        arc(center(i), a, 0.0, -PI, inner_pts, &mut pts);
        arc(center(i - 1), b, 0.0, PI, outer_pts, &mut pts);
        if i < 3 {
            break;
        }
        i -= 2;
    }
    pts
}

/// Unit-area serpentine membrane built from `12 k^2` S-shaped units
/// (each unit is two glued half-annuli with radii 1/(6 k sqrt(pi)) and
/// 1/(3 k sqrt(pi))). `n` controls arc sampling per full circle.
pub fn s_chain(k: usize, n: usize) -> Result<Membrane> {
    if k < 1 {
        return Err(Error::InvalidParams("s_chain needs k >= 1".into()));
    }
    if n < 16 {
        return Err(Error::InvalidParams(format!("s_chain needs n >= 16, got {n}")));
    }
    let a = 1.0 / (6.0 * k as f64 * PI.sqrt());
    let n_rings = 24 * k * k;
    Membrane::new(s_polygon(n_rings, a, n), vec![])
}

/// A single S-shaped membrane (two glued half-annuli, radii 0.5 and 1.0,
/// centers (0, 0) and (1.5, 0)) whose width function approaches its supremum
/// at the internal-tangent direction of the two holes but drops there: the
/// supremum is not attained, so the shape has no optimal anisotropic design.
pub fn s_counterexample() -> Membrane {
    Membrane::new(s_polygon(2, 0.5, 720), vec![]).expect("builtin shape is valid")
}
