//! Conforming triangulation of a membrane.
//!
//! Boundary rings are resampled to the target edge length, inserted as
//! constraint loops into a constrained Delaunay triangulation, and refined
//! (Delaunay refinement with an angle limit and a maximum triangle area).
//! Faces are then classified against the membrane so holes stay empty.

use crate::error::{Error, Result};
use crate::geometry::Membrane;
use crate::math::Vec2;
use spade::{
    AngleLimit, ConstrainedDelaunayTriangulation, Point2, RefinementParameters, Triangulation,
};
use std::fmt::Write as _;

/// Triangle mesh with boundary flags.
#[derive(Clone, Debug)]
pub struct Mesh {
    pub vertices: Vec<Vec2>,
    /// Counterclockwise vertex-index triples.
    pub triangles: Vec<[usize; 3]>,
    /// True for vertices on the membrane boundary (Dirichlet nodes).
    pub boundary: Vec<bool>,
    /// Target edge length the mesh was built for.
    pub h: f64,
}

impl Mesh {
    pub fn interior_count(&self) -> usize {
        self.boundary.iter().filter(|b| !**b).count()
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t];
        let (p, q, r) = (self.vertices[a], self.vertices[b], self.vertices[c]);
        0.5 * (q - p).cross(r - p)
    }

    /// Smallest interior angle over all triangles, in radians.
    pub fn min_angle(&self) -> f64 {
        let mut worst = f64::INFINITY;
        for t in &self.triangles {
            for k in 0..3 {
                let a = self.vertices[t[k]];
                let b = self.vertices[t[(k + 1) % 3]];
                let c = self.vertices[t[(k + 2) % 3]];
                let u = b - a;
                let v = c - a;
                let ang = u.cross(v).atan2(u.dot(v));
                worst = worst.min(ang.abs());
            }
        }
        worst
    }

    /// Edge count (each undirected edge once).
    pub fn edge_count(&self) -> usize {
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(3 * self.triangles.len());
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                edges.push((a.min(b), a.max(b)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        edges.len()
    }

    /// Plain-text export: vertex list, triangle list, boundary flags.
    pub fn export_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "vertices {}", self.vertices.len());
        for (v, b) in self.vertices.iter().zip(&self.boundary) {
            let _ = writeln!(s, "{:.17e} {:.17e} {}", v.x, v.y, u8::from(*b));
        }
        let _ = writeln!(s, "triangles {}", self.triangles.len());
        for t in &self.triangles {
            let _ = writeln!(s, "{} {} {}", t[0], t[1], t[2]);
        }
        s
    }
}

/// Resample a closed ring so no segment exceeds `h` (original vertices are
/// kept).
fn resample_ring(ring: &[Vec2], h: f64) -> Vec<Vec2> {
    let n = ring.len();
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        let len = a.dist(b);
        let pieces = (len / h).ceil().max(1.0) as usize;
        for k in 0..pieces {
            out.push(a + (b - a) * (k as f64 / pieces as f64));
        }
    }
    out
}

/// Triangulate the membrane with target edge length `h`.
pub fn triangulate(m: &Membrane, h: f64) -> Result<Mesh> {
    if !(h > 0.0) {
        return Err(Error::InvalidParams(format!("mesh size h = {h} must be > 0")));
    }
    let diag = m.bbox_diag();
    if h >= diag / 8.0 {
        return Err(Error::InvalidParams(format!(
            "mesh size h = {h} too coarse for bounding box diagonal {diag}"
        )));
    }

    let mut cdt: ConstrainedDelaunayTriangulation<Point2<f64>> =
        ConstrainedDelaunayTriangulation::new();
    for ring in m.rings() {
        let pts = resample_ring(ring, h);
        let handles: Vec<_> = pts
            .iter()
            .map(|p| cdt.insert(Point2::new(p.x, p.y)))
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::MeshFailure(format!("constraint insertion: {e:?}")))?;
        let n = handles.len();
        for i in 0..n {
            let (a, b) = (handles[i], handles[(i + 1) % n]);
            if a != b && !cdt.exists_constraint(a, b) {
                cdt.add_constraint(a, b);
            }
        }
    }

    // Equilateral triangle of side h has area sqrt(3)/4 h^2; allow a bit
    // more so the refiner is not forced to over-split.
    let max_area = 0.5 * h * h;
    let params = RefinementParameters::<f64>::new()
        .exclude_outer_faces(true)
        .with_angle_limit(AngleLimit::from_deg(25.0))
        .with_max_allowed_area(max_area)
        .with_max_additional_vertices(4_000_000);
    cdt.refine(params);

    let mut vertices = Vec::with_capacity(cdt.num_vertices());
    for v in cdt.vertices() {
        let p = v.position();
        vertices.push(Vec2::new(p.x, p.y));
    }

    // Collinear constraint points can leave zero-area slivers along the
    // boundary; they carry no measure and would poison gradients.
    let min_area = 1e-9 * h * h;
    let mut triangles = Vec::with_capacity(cdt.num_inner_faces());
    for f in cdt.inner_faces() {
        let vs = f.vertices();
        let idx = [vs[0].index(), vs[1].index(), vs[2].index()];
        let (a, b, c) = (vertices[idx[0]], vertices[idx[1]], vertices[idx[2]]);
        if 0.5 * (b - a).cross(c - a) <= min_area {
            continue;
        }
        let centroid = (a + b + c) * (1.0 / 3.0);
        if m.contains(centroid) {
            triangles.push(idx);
        }
    }
    if triangles.is_empty() {
        return Err(Error::MeshFailure(
            "no interior triangles; is a feature thinner than h?".into(),
        ));
    }

    // Keep only referenced vertices.
    let mut remap = vec![usize::MAX; vertices.len()];
    let mut kept = Vec::new();
    for t in &mut triangles {
        for v in t.iter_mut() {
            if remap[*v] == usize::MAX {
                remap[*v] = kept.len();
                kept.push(vertices[*v]);
            }
            *v = remap[*v];
        }
    }
    let vertices = kept;

    // Boundary flags: vertices within snapping tolerance of a ring segment.
    let tol = 1e-9 * diag;
    let mut boundary = vec![false; vertices.len()];
    let mut segs: Vec<(Vec2, Vec2)> = Vec::new();
    for ring in m.rings() {
        let n = ring.len();
        for i in 0..n {
            segs.push((ring[i], ring[(i + 1) % n]));
        }
    }
    for (vi, v) in vertices.iter().enumerate() {
        for &(a, b) in &segs {
            let e = b - a;
            let len2 = e.norm_sq();
            if len2 == 0.0 {
                continue;
            }
            let t = ((*v - a).dot(e) / len2).clamp(0.0, 1.0);
            if (a + e * t).dist(*v) <= tol {
                boundary[vi] = true;
                break;
            }
        }
    }

    let mesh = Mesh {
        vertices,
        triangles,
        boundary,
        h,
    };
    if mesh.interior_count() == 0 {
        return Err(Error::MeshFailure(
            "no interior vertices; is a feature thinner than h?".into(),
        ));
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::generators;

    #[test]
    fn square_mesh_structure() {
        let m = generators::rect(1.0, 1.0).unwrap();
        let mesh = triangulate(&m, 0.1).unwrap();
        assert!(mesh.triangles.len() > 100, "got {}", mesh.triangles.len());
        for v in &mesh.vertices {
            assert!(v.x >= -1e-9 && v.x <= 1.0 + 1e-9);
            assert!(v.y >= -1e-9 && v.y <= 1.0 + 1e-9);
        }
        let area: f64 = (0..mesh.triangles.len()).map(|t| mesh.triangle_area(t)).sum();
        assert!((area - 1.0).abs() < 1e-9);
        assert!(mesh.min_angle() >= 15.0_f64.to_radians());
        assert!(mesh.interior_count() > 0);
    }

    #[test]
    fn disk_mesh_boundary_resolution() {
        let m = generators::disk(1.0, 256).unwrap();
        let mesh = triangulate(&m, 0.05).unwrap();
        for (v, b) in mesh.vertices.iter().zip(&mesh.boundary) {
            if *b {
                // On the polygon boundary, hence within 0.05 of the circle.
                assert!((v.norm() - 1.0).abs() < 0.05);
            }
        }
        assert!(mesh.min_angle() >= 15.0_f64.to_radians());
    }

    #[test]
    fn annulus_mesh_topology() {
        let m = generators::annulus(0.5, 0.25, 128).unwrap();
        let mesh = triangulate(&m, 0.03).unwrap();
        let v = mesh.vertices.len() as i64;
        let e = mesh.edge_count() as i64;
        let f = mesh.triangles.len() as i64;
        // Euler characteristic of an annulus is 0.
        assert_eq!(v - e + f, 0);
    }

    #[test]
    fn too_coarse_h_rejected() {
        let m = generators::rect(1.0, 1.0).unwrap();
        assert!(triangulate(&m, 0.5).is_err());
    }
}
