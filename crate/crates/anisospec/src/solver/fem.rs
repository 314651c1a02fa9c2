//! Discrete Rayleigh-quotient minimization over piecewise-linear finite
//! elements vanishing on the boundary.
//!
//! Two paths:
//! - p = 2 with a quadratic anisotropy (Euclidean, quadratic form, or a
//!   directional seminorm): assemble stiffness and mass matrices and run
//!   inverse power iteration with conjugate-gradient solves.
//! - general p or non-quadratic H: projected subgradient descent on the
//!   quotient with Barzilai-Borwein steps and seeded restarts.
//!
//! Being a conforming method, the discrete minimum is an upper bound on the
//! continuum least level.

use super::mesh::Mesh;
use super::sparse::{dot, CsrMatrix};
use crate::anisotropy::Anisotropy;
use crate::error::{Error, Result};
use crate::math::Vec2;
use crate::spectra::{Method, SpectralResult};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Nodal values on a mesh; zero on Dirichlet (boundary) vertices.
#[derive(Clone, Debug)]
pub struct DiscreteField {
    pub values: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct SolverOpts {
    /// Relative quotient-change tolerance over a 50-iteration window.
    pub tol: f64,
    pub max_iter: usize,
    /// Seeded descent restarts (the first start is deterministic).
    pub restarts: usize,
    pub seed: u64,
    /// Target mesh edge length for membrane-level drivers.
    pub mesh_h: f64,
    /// Two-mesh Richardson error estimate in membrane-level drivers.
    pub richardson: bool,
}

impl Default for SolverOpts {
    fn default() -> Self {
        SolverOpts {
            tol: 1e-9,
            max_iter: 20_000,
            restarts: 3,
            seed: 0x5eed,
            mesh_h: 0.02,
            richardson: true,
        }
    }
}

/// 7-point triangle rule, exact for polynomials of degree 5.
const QUAD7: [(f64, f64, f64); 7] = [
    (1.0 / 3.0, 1.0 / 3.0, 0.225),
    (0.059_715_871_789_77, 0.470_142_064_105_115, 0.132_394_152_788_506),
    (0.470_142_064_105_115, 0.059_715_871_789_77, 0.132_394_152_788_506),
    (0.470_142_064_105_115, 0.470_142_064_105_115, 0.132_394_152_788_506),
    (0.797_426_985_353_087, 0.101_286_507_323_456, 0.125_939_180_544_827),
    (0.101_286_507_323_456, 0.797_426_985_353_087, 0.125_939_180_544_827),
    (0.101_286_507_323_456, 0.101_286_507_323_456, 0.125_939_180_544_827),
];

/// 3-point midedge rule, exact for degree 2 (used for quadrature error
/// estimates).
const QUAD3: [(f64, f64, f64); 3] = [
    (0.5, 0.5, 1.0 / 3.0),
    (0.0, 0.5, 1.0 / 3.0),
    (0.5, 0.0, 1.0 / 3.0),
];

struct TriGeom {
    idx: [usize; 3],
    area: f64,
    /// Gradients of the three hat functions.
    grads: [Vec2; 3],
}

fn tri_geoms(mesh: &Mesh) -> Vec<TriGeom> {
    mesh.triangles
        .iter()
        .map(|&idx| {
            let [i, j, k] = idx;
            let (a, b, c) = (mesh.vertices[i], mesh.vertices[j], mesh.vertices[k]);
            let two_a = (b - a).cross(c - a);
            let area = 0.5 * two_a;
            let grads = [
                (c - b).perp() * (1.0 / two_a),
                (a - c).perp() * (1.0 / two_a),
                (b - a).perp() * (1.0 / two_a),
            ];
            TriGeom { idx, area, grads }
        })
        .collect()
}

fn gradient_on_tri(g: &TriGeom, u: &[f64]) -> Vec2 {
    g.grads[0] * u[g.idx[0]] + g.grads[1] * u[g.idx[1]] + g.grads[2] * u[g.idx[2]]
}

fn norm_p_quad(tris: &[TriGeom], u: &[f64], p: f64, rule: &[(f64, f64, f64)]) -> f64 {
    let mut acc = 0.0;
    for t in tris {
        let (u0, u1, u2) = (u[t.idx[0]], u[t.idx[1]], u[t.idx[2]]);
        let mut local = 0.0;
        for &(l1, l2, w) in rule {
            let uv = u0 * (1.0 - l1 - l2) + u1 * l1 + u2 * l2;
            local += w * uv.abs().powf(p);
        }
        acc += t.area * local;
    }
    acc
}

/// Energy, p-th power norm, and their quotient for a discrete field.
pub fn rayleigh_eval(
    mesh: &Mesh,
    u: &DiscreteField,
    h: &Anisotropy,
    p: f64,
) -> Result<(f64, f64, f64)> {
    if !(p > 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let tris = tri_geoms(mesh);
    let energy = energy_of(&tris, &u.values, h, p);
    let norm = norm_p_quad(&tris, &u.values, p, &QUAD7);
    if norm <= 0.0 {
        return Err(Error::ZeroField);
    }
    Ok((energy, norm, energy / norm))
}

fn energy_of(tris: &[TriGeom], u: &[f64], h: &Anisotropy, p: f64) -> f64 {
    tris.iter()
        .map(|t| t.area * h.eval(gradient_on_tri(t, u)).powf(p))
        .sum()
}

/// Positive initial iterate: product of distances to the bounding box sides,
/// zeroed on the boundary.
fn initial_field(mesh: &Mesh) -> Vec<f64> {
    let (mut lo, mut hi) = (
        Vec2::new(f64::INFINITY, f64::INFINITY),
        Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for v in &mesh.vertices {
        lo.x = lo.x.min(v.x);
        lo.y = lo.y.min(v.y);
        hi.x = hi.x.max(v.x);
        hi.y = hi.y.max(v.y);
    }
    mesh.vertices
        .iter()
        .zip(&mesh.boundary)
        .map(|(v, b)| {
            if *b {
                0.0
            } else {
                (v.x - lo.x) * (hi.x - v.x) * (v.y - lo.y) * (hi.y - v.y)
            }
        })
        .collect()
}

/// Discrete least level and a normalized minimizer.
pub fn rayleigh_minimize(
    mesh: &Mesh,
    h: &Anisotropy,
    p: f64,
    opts: &SolverOpts,
) -> Result<(SpectralResult, DiscreteField)> {
    if !(p > 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    if h.sup_norm() <= 0.0 {
        return Err(Error::ZeroAnisotropy);
    }
    if mesh.interior_count() == 0 {
        return Err(Error::MeshFailure("no interior degrees of freedom".into()));
    }
    if p == 2.0 {
        if let Some(q) = h.quadratic_form() {
            return eigen_matrix_path(mesh, q, opts);
        }
    }
    descent_path(mesh, h, p, opts)
}

fn interior_map(mesh: &Mesh) -> (Vec<usize>, Vec<usize>) {
    // (vertex -> dof or MAX, dof -> vertex)
    let mut to_dof = vec![usize::MAX; mesh.vertices.len()];
    let mut to_vertex = Vec::new();
    for (i, b) in mesh.boundary.iter().enumerate() {
        if !b {
            to_dof[i] = to_vertex.len();
            to_vertex.push(i);
        }
    }
    (to_dof, to_vertex)
}

fn eigen_matrix_path(
    mesh: &Mesh,
    q: [[f64; 2]; 2],
    opts: &SolverOpts,
) -> Result<(SpectralResult, DiscreteField)> {
    let tris = tri_geoms(mesh);
    let (to_dof, to_vertex) = interior_map(mesh);
    let n = to_vertex.len();

    let mut kt: Vec<(usize, usize, f64)> = Vec::with_capacity(9 * tris.len());
    let mut mt: Vec<(usize, usize, f64)> = Vec::with_capacity(9 * tris.len());
    let qv = |g: Vec2| Vec2::new(q[0][0] * g.x + q[0][1] * g.y, q[1][0] * g.x + q[1][1] * g.y);
    for t in &tris {
        for a in 0..3 {
            let ia = to_dof[t.idx[a]];
            if ia == usize::MAX {
                continue;
            }
            for b in 0..3 {
                let ib = to_dof[t.idx[b]];
                if ib == usize::MAX {
                    continue;
                }
                kt.push((ia, ib, t.area * t.grads[a].dot(qv(t.grads[b]))));
                let mass = if a == b { t.area / 6.0 } else { t.area / 12.0 };
                mt.push((ia, ib, mass));
            }
        }
    }
    let k = CsrMatrix::from_triplets(n, &mut kt);
    let m = CsrMatrix::from_triplets(n, &mut mt);

    let init = initial_field(mesh);
    let x0: Vec<f64> = to_vertex.iter().map(|&v| init[v]).collect();
    let (lambda, x, converged) = lobpcg_smallest(&k, &m, x0, opts)?;
    if lambda <= 1e-12 {
        return Err(Error::SingularStiffness(lambda));
    }

    let mut values = vec![0.0; mesh.vertices.len()];
    for (dof, &v) in to_vertex.iter().enumerate() {
        values[v] = x[dof];
    }
    Ok((
        SpectralResult {
            value: lambda,
            method: Method::Fem,
            p: 2.0,
            error_estimate: opts.tol.max(1e-12) * lambda + 1e-10 * lambda,
            provenance: format!(
                "lobpcg, {n} dofs{}",
                if converged { "" } else { " (iteration cap reached)" }
            ),
        },
        DiscreteField { values },
    ))
}

/// Single-vector locally optimal preconditioned CG (LOBPCG) for the smallest
/// eigenpair of `K x = lambda M x`, with a Jacobi preconditioner.
///
/// Chosen over inverse power iteration because degenerate anisotropies give
/// stiffness pencils with tightly clustered lowest eigenvalues, where
/// inexact inner solves stall; LOBPCG needs no inner solves at all.
fn lobpcg_smallest(
    k: &CsrMatrix,
    m: &CsrMatrix,
    mut x: Vec<f64>,
    opts: &SolverOpts,
) -> Result<(f64, Vec<f64>, bool)> {
    let n = k.n;
    let mnorm = m.quadratic(&x);
    if !(mnorm > 0.0) {
        return Err(Error::ZeroField);
    }
    let s = mnorm.sqrt();
    x.iter_mut().for_each(|v| *v /= s);

    let diag = k.diagonal();
    let precond: Vec<f64> = diag
        .iter()
        .map(|&d| if d.abs() > 1e-300 { 1.0 / d } else { 1.0 })
        .collect();

    let mut kx = vec![0.0; n];
    let mut mx = vec![0.0; n];
    k.mul_vec(&x, &mut kx);
    m.mul_vec(&x, &mut mx);
    let mut lambda = dot(&x, &kx);
    if dot(&x, &kx) < -1e-12 {
        return Err(Error::SingularStiffness(lambda));
    }
    let mut p: Option<Vec<f64>> = None;
    let mut kp = vec![0.0; n];
    let mut mp = vec![0.0; n];
    let mut converged = false;
    let mut stall = 0usize;

    for _ in 0..2000 {
        // Preconditioned residual.
        let mut w: Vec<f64> = (0..n)
            .map(|i| (kx[i] - lambda * mx[i]) * precond[i])
            .collect();
        let wn = dot(&w, &w).sqrt();
        if wn == 0.0 {
            converged = true;
            break;
        }
        w.iter_mut().for_each(|v| *v /= wn);
        let mut kw = vec![0.0; n];
        let mut mw = vec![0.0; n];
        k.mul_vec(&w, &mut kw);
        m.mul_vec(&w, &mut mw);

        // Rayleigh-Ritz on span{x, w, p}.
        let mut basis: Vec<(&[f64], &[f64], &[f64])> = vec![(&x, &kx, &mx), (&w, &kw, &mw)];
        if let Some(pv) = &p {
            basis.push((pv, &kp, &mp));
        }
        let dim = basis.len();
        let mut a = [[0.0; 3]; 3];
        let mut g = [[0.0; 3]; 3];
        for i in 0..dim {
            for j in 0..dim {
                a[i][j] = dot(basis[i].0, basis[j].1);
                g[i][j] = dot(basis[i].0, basis[j].2);
            }
        }
        let Some((ritz, y)) = smallest_ritz(&a, &g, dim) else {
            converged = true;
            break;
        };
        // New iterate and implicit conjugate direction (the non-x part).
        let mut xn = vec![0.0; n];
        let mut pn = vec![0.0; n];
        for i in 0..n {
            let wx = y[0] * x[i] + y[1] * w[i] + if dim > 2 { y[2] * p.as_ref().unwrap()[i] } else { 0.0 };
            let wp = y[1] * w[i] + if dim > 2 { y[2] * p.as_ref().unwrap()[i] } else { 0.0 };
            xn[i] = wx;
            pn[i] = wp;
        }
        let mn = m.quadratic(&xn).sqrt();
        if !(mn > 0.0) {
            break;
        }
        xn.iter_mut().for_each(|v| *v /= mn);
        x = xn;
        let pnn = dot(&pn, &pn).sqrt();
        if pnn > 0.0 {
            pn.iter_mut().for_each(|v| *v /= pnn);
            k.mul_vec(&pn, &mut kp);
            m.mul_vec(&pn, &mut mp);
            p = Some(pn);
        } else {
            p = None;
        }
        k.mul_vec(&x, &mut kx);
        m.mul_vec(&x, &mut mx);
        let new_lambda = dot(&x, &kx) / dot(&x, &mx);
        let delta = (lambda - new_lambda).abs();
        lambda = new_lambda;
        if delta <= opts.tol.max(1e-13) * lambda.abs() {
            stall += 1;
            if stall >= 8 {
                converged = true;
                break;
            }
        } else {
            stall = 0;
        }
        let _ = ritz;
    }
    Ok((lambda, x, converged))
}

/// Smallest Ritz pair of the symmetric pencil (A, G) restricted to `dim`
/// columns (dim <= 3). Returns None if G is numerically singular even after
/// dropping the oldest direction.
fn smallest_ritz(a: &[[f64; 3]; 3], g: &[[f64; 3]; 3], dim: usize) -> Option<(f64, [f64; 3])> {
    for d in (1..=dim).rev() {
        // Cholesky of the leading d x d block of G.
        let mut l = [[0.0; 3]; 3];
        let mut ok = true;
        for i in 0..d {
            for j in 0..=i {
                let mut s = g[i][j];
                for t in 0..j {
                    s -= l[i][t] * l[j][t];
                }
                if i == j {
                    if s <= 1e-14 * (1.0 + g[i][i].abs()) {
                        ok = false;
                        break;
                    }
                    l[i][i] = s.sqrt();
                } else {
                    l[i][j] = s / l[j][j];
                }
            }
            if !ok {
                break;
            }
        }
        if !ok {
            continue;
        }
        // C = L^-1 A L^-T via two triangular solves, then Jacobi sweeps.
        let mut z = [[0.0; 3]; 3]; // Z = L^-1 A
        for col in 0..d {
            for i in 0..d {
                let mut s = a[i][col];
                for t in 0..i {
                    s -= l[i][t] * z[t][col];
                }
                z[i][col] = s / l[i][i];
            }
        }
        let mut c = [[0.0; 3]; 3]; // row r of C solves L y = (row r of Z)
        for r in 0..d {
            for i in 0..d {
                let mut s = z[r][i];
                for t in 0..i {
                    s -= l[i][t] * c[r][t];
                }
                c[r][i] = s / l[i][i];
            }
        }
        // Symmetrize against rounding.
        for i in 0..d {
            for j in 0..i {
                let avg = 0.5 * (c[i][j] + c[j][i]);
                c[i][j] = avg;
                c[j][i] = avg;
            }
        }
        // Jacobi rotations.
        let mut v = [[0.0; 3]; 3];
        for i in 0..d {
            v[i][i] = 1.0;
        }
        for _ in 0..30 {
            let mut off = 0.0;
            for i in 0..d {
                for j in (i + 1)..d {
                    off += c[i][j] * c[i][j];
                }
            }
            if off <= 1e-30 {
                break;
            }
            for i in 0..d {
                for j in (i + 1)..d {
                    if c[i][j].abs() < 1e-300 {
                        continue;
                    }
                    let tau = (c[j][j] - c[i][i]) / (2.0 * c[i][j]);
                    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let cos = 1.0 / (1.0 + t * t).sqrt();
                    let sin = t * cos;
                    for r in 0..d {
                        let (cri, crj) = (c[r][i], c[r][j]);
                        c[r][i] = cos * cri - sin * crj;
                        c[r][j] = sin * cri + cos * crj;
                    }
                    for r in 0..d {
                        let (cir, cjr) = (c[i][r], c[j][r]);
                        c[i][r] = cos * cir - sin * cjr;
                        c[j][r] = sin * cir + cos * cjr;
                    }
                    for r in 0..d {
                        let (vri, vrj) = (v[r][i], v[r][j]);
                        v[r][i] = cos * vri - sin * vrj;
                        v[r][j] = sin * vri + cos * vrj;
                    }
                }
            }
        }
        let mut best = 0;
        for i in 1..d {
            if c[i][i] < c[best][best] {
                best = i;
            }
        }
        // Back-substitute y = L^-T v_best.
        let mut y = [0.0; 3];
        for i in (0..d).rev() {
            let mut s = v[i][best];
            for t in (i + 1)..d {
                s -= l[t][i] * y[t];
            }
            y[i] = s / l[i][i];
        }
        return Some((c[best][best], y));
    }
    None
}

struct QuotientState {
    energy: f64,
    norm: f64,
}

/// Gradient of the Rayleigh quotient with respect to interior dofs.
/// Uses an a.e. subgradient of H; `full` is a scratch buffer over all
/// vertices, `g` receives the result.
#[allow(clippy::too_many_arguments)]
fn quotient_gradient(
    tris: &[TriGeom],
    to_dof: &[usize],
    to_vertex: &[usize],
    x: &[f64],
    st: &QuotientState,
    h: &Anisotropy,
    p: f64,
    full: &mut [f64],
    g: &mut [f64],
) {
    for (dof, &v) in to_vertex.iter().enumerate() {
        full[v] = x[dof];
    }
    g.iter_mut().for_each(|v| *v = 0.0);
    let q = st.energy / st.norm;
    for t in tris {
        let gt = gradient_on_tri(t, full);
        let hv = h.eval(gt);
        if hv > 0.0 {
            let coeff = p * hv.powf(p - 1.0);
            let hg = h.subgradient(gt);
            for a in 0..3 {
                let dof = to_dof[t.idx[a]];
                if dof != usize::MAX {
                    g[dof] += t.area * coeff * hg.dot(t.grads[a]);
                }
            }
        }
        let (u0, u1, u2) = (full[t.idx[0]], full[t.idx[1]], full[t.idx[2]]);
        for &(l1, l2, w) in &QUAD7 {
            let bary = [1.0 - l1 - l2, l1, l2];
            let uv = u0 * bary[0] + u1 * bary[1] + u2 * bary[2];
            if uv != 0.0 {
                let coeff = w * t.area * p * uv.abs().powf(p - 1.0) * uv.signum();
                for a in 0..3 {
                    let dof = to_dof[t.idx[a]];
                    if dof != usize::MAX {
                        g[dof] -= q * coeff * bary[a];
                    }
                }
            }
        }
    }
    g.iter_mut().for_each(|v| *v /= st.norm);
}

fn descent_path(
    mesh: &Mesh,
    h: &Anisotropy,
    p: f64,
    opts: &SolverOpts,
) -> Result<(SpectralResult, DiscreteField)> {
    let tris = tri_geoms(mesh);
    let (to_dof, to_vertex) = interior_map(mesh);
    let n = to_vertex.len();
    // Warm start from the p = 2 eigenfunction of the anisotropy's quadratic
    // form (Euclidean when none): it already sits in the right energy
    // valley, which matters for degenerate anisotropies whose quotient is
    // flat along the seminorm kernel.
    let warm = h
        .quadratic_form()
        .or(Some([[1.0, 0.0], [0.0, 1.0]]))
        .and_then(|q| eigen_matrix_path(mesh, q, opts).ok())
        .map(|(_, f)| {
            to_vertex
                .iter()
                .map(|&v| f.values[v])
                .collect::<Vec<f64>>()
        });
    let base: Vec<f64> = warm.unwrap_or_else(|| {
        let init = initial_field(mesh);
        to_vertex.iter().map(|&v| init[v]).collect()
    });

    let mut best: Option<(f64, Vec<f64>, bool)> = None;
    let mut spread = 0.0_f64;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for restart in 0..opts.restarts.max(1) {
        let mut x = base.clone();
        if restart > 0 {
            for v in x.iter_mut() {
                *v *= 1.0 + 0.3 * (rng.gen::<f64>() - 0.5);
            }
        }
        let (q, xs, conv) = minimize_quotient(&tris, &to_dof, &to_vertex, x, h, p, opts);
        match &mut best {
            Some((bq, bx, bc)) => {
                spread = spread.max((q - *bq).abs());
                if q < *bq {
                    *bq = q;
                    *bx = xs;
                    *bc = conv;
                }
            }
            None => best = Some((q, xs, conv)),
        }
    }
    let (q, x, conv) = best.expect("at least one restart");

    let mut values = vec![0.0; mesh.vertices.len()];
    for (dof, &v) in to_vertex.iter().enumerate() {
        values[v] = x[dof];
    }
    // Quadrature sensitivity: compare the 7-point norm with the 3-point one.
    let n7 = norm_p_quad(&tris, &values, p, &QUAD7);
    let n3 = norm_p_quad(&tris, &values, p, &QUAD3);
    let quad_err = q * (n7 - n3).abs() / n7.max(1e-300);
    let _ = n;
    Ok((
        SpectralResult {
            value: q,
            method: Method::Fem,
            p,
            error_estimate: quad_err + spread + opts.tol * q,
            provenance: format!(
                "subgradient descent, {} dofs, {} restarts{}",
                to_vertex.len(),
                opts.restarts.max(1),
                if conv { "" } else { " (iteration cap reached)" }
            ),
        },
        DiscreteField { values },
    ))
}

/// Barzilai-Borwein descent on the Rayleigh quotient over interior dofs.
/// Returns (quotient, minimizer, converged).
fn minimize_quotient(
    tris: &[TriGeom],
    to_dof: &[usize],
    to_vertex: &[usize],
    mut x: Vec<f64>,
    h: &Anisotropy,
    p: f64,
    opts: &SolverOpts,
) -> (f64, Vec<f64>, bool) {
    let n = x.len();
    let mut full = vec![0.0; to_dof.len()];
    let scatter = |x: &[f64], full: &mut [f64]| {
        for (dof, &v) in to_vertex.iter().enumerate() {
            full[v] = x[dof];
        }
    };

    let eval_state = |x: &[f64], full: &mut Vec<f64>| -> QuotientState {
        scatter(x, full);
        QuotientState {
            energy: energy_of(tris, full, h, p),
            norm: norm_p_quad(tris, full, p, &QUAD7),
        }
    };

    // Normalize the p-norm to 1 for numeric sanity.
    let mut st = eval_state(&x, &mut full);
    let scale = st.norm.powf(1.0 / p);
    x.iter_mut().for_each(|v| *v /= scale);
    st = eval_state(&x, &mut full);

    let mut g = vec![0.0; n];
    let mut g_prev = vec![0.0; n];
    let mut x_prev = x.clone();
    quotient_gradient(tris, to_dof, to_vertex, &x, &st, h, p, &mut full, &mut g);
    let mut q = st.energy / st.norm;
    let mut step = 0.1 / (1.0 + dot(&g, &g).sqrt());
    let mut window: Vec<f64> = vec![q];
    let mut converged = false;

    for it in 0..opts.max_iter {
        // Trial step with halving safeguard.
        let mut alpha = step;
        let mut accepted = false;
        for _ in 0..40 {
            let trial: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - alpha * gi).collect();
            let st_t = eval_state(&trial, &mut full);
            if st_t.norm > 0.0 {
                let q_t = st_t.energy / st_t.norm;
                if q_t < q {
                    x_prev.copy_from_slice(&x);
                    g_prev.copy_from_slice(&g);
                    x = trial;
                    st = st_t;
                    q = q_t;
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if !accepted {
            converged = true;
            break;
        }
        // Renormalize occasionally (the quotient is scale invariant).
        if it % 32 == 31 {
            let scale = st.norm.powf(1.0 / p);
            x.iter_mut().for_each(|v| *v /= scale);
            st = eval_state(&x, &mut full);
        }
        quotient_gradient(tris, to_dof, to_vertex, &x, &st, h, p, &mut full, &mut g);
        // Two-point (Barzilai-Borwein) step size, alternating forms.
        let s: Vec<f64> = x.iter().zip(&x_prev).map(|(a, b)| a - b).collect();
        let ydiff: Vec<f64> = g.iter().zip(&g_prev).map(|(a, b)| a - b).collect();
        let ss = dot(&s, &s);
        let sy = dot(&s, &ydiff);
        let yy = dot(&ydiff, &ydiff);
        step = if it % 2 == 0 {
            if sy > 0.0 {
                ss / sy
            } else {
                alpha * 2.0
            }
        } else if yy > 0.0 && sy > 0.0 {
            sy / yy
        } else {
            alpha * 2.0
        };
        step = step.clamp(1e-14, 1e6);

        window.push(q);
        if window.len() > 50 {
            let old = window.remove(0);
            if (old - q).abs() <= opts.tol * q.abs() {
                converged = true;
                break;
            }
        }
    }
    (q, x, converged)
}
