//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use anisospec::anisotropy::{unit_ball_poly, Anisotropy, AnisotropyClass};
use anisospec::geometry::{self, generators, TriState};
use anisospec::solver::{self, SolverOpts};
use anisospec::spectra;
use anisospec::verify::{self, ToleranceConfig};
use std::f64::consts::PI;
use std::time::Instant;

/// Independent 1D oracles for the closed form (p-1)(pi_p/L)^p. These never
/// touch the library's spectra module.
mod oracle1d {
    /// Smallest Dirichlet eigenvalue of the 1D Laplacian on (0, L) by
    /// inverse power iteration on the second-difference matrix (Thomas
    /// solver), n interior nodes.
    pub fn fd_eigenvalue_p2(l: f64, n: usize) -> f64 {
        let h = l / (n + 1) as f64;
        let mut v = vec![1.0_f64; n];
        let mut lambda = 0.0;
        for _ in 0..200 {
            // Solve (tridiag(-1, 2, -1)/h^2) w = v by the Thomas algorithm.
            let diag = 2.0 / (h * h);
            let off = -1.0 / (h * h);
            let mut c = vec![0.0; n];
            let mut d = vec![0.0; n];
            c[0] = off / diag;
            d[0] = v[0] / diag;
            for i in 1..n {
                let m = diag - off * c[i - 1];
                c[i] = off / m;
                d[i] = (v[i] - off * d[i - 1]) / m;
            }
            let mut w = vec![0.0; n];
            w[n - 1] = d[n - 1];
            for i in (0..n - 1).rev() {
                w[i] = d[i] - c[i] * w[i + 1];
            }
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            w.iter_mut().for_each(|x| *x /= norm);
            // Rayleigh quotient of the normalized iterate.
            let mut num = 0.0;
            for i in 0..=n {
                let a = if i == 0 { 0.0 } else { w[i - 1] };
                let b = if i == n { 0.0 } else { w[i] };
                num += (b - a) * (b - a) / (h * h);
            }
            let new_lambda = num / w.iter().map(|x| x * x).sum::<f64>();
            let done = (new_lambda - lambda).abs() < 1e-14 * new_lambda.abs();
            lambda = new_lambda;
            v = w;
            if done {
                break;
            }
        }
        lambda
    }

    /// Discrete Rayleigh minimization for the 1D p-Laplacian on (0, L):
    /// projected gradient descent with Barzilai-Borwein steps on
    /// sum |dv/h|^p h / sum |v|^p h.
    pub fn descent_eigenvalue(p: f64, l: f64, n: usize) -> f64 {
        let h = l / (n + 1) as f64;
        let energy = |v: &[f64]| -> f64 {
            let mut e = 0.0;
            for i in 0..=n {
                let a = if i == 0 { 0.0 } else { v[i - 1] };
                let b = if i == n { 0.0 } else { v[i] };
                e += ((b - a) / h).abs().powf(p) * h;
            }
            e
        };
        let norm_p = |v: &[f64]| -> f64 { v.iter().map(|x| x.abs().powf(p) * h).sum() };
        let grad = |v: &[f64], q: f64, g: &mut [f64]| {
            let nrm = norm_p(v);
            for gi in g.iter_mut() {
                *gi = 0.0;
            }
            for i in 0..=n {
                let a = if i == 0 { 0.0 } else { v[i - 1] };
                let b = if i == n { 0.0 } else { v[i] };
                let s = (b - a) / h;
                let de = p * s.abs().powf(p - 1.0) * s.signum();
                if i > 0 {
                    g[i - 1] -= de;
                }
                if i < n {
                    g[i] += de;
                }
            }
            for (gi, vi) in g.iter_mut().zip(v) {
                *gi -= q * p * vi.abs().powf(p - 1.0) * vi.signum() * h;
                *gi /= nrm;
            }
        };
        // Positive bump initial iterate.
        let mut v: Vec<f64> = (1..=n)
            .map(|i| {
                let x = i as f64 * h;
                x * (l - x)
            })
            .collect();
        let scale = norm_p(&v).powf(1.0 / p);
        v.iter_mut().for_each(|x| *x /= scale);
        let mut q = energy(&v) / norm_p(&v);
        let mut g = vec![0.0; n];
        let mut g_prev = vec![0.0; n];
        let mut v_prev = v.clone();
        grad(&v, q, &mut g);
        let mut step = 1e-3;
        for it in 0..60_000 {
            let mut alpha = step;
            let mut moved = false;
            for _ in 0..40 {
                let trial: Vec<f64> = v.iter().zip(&g).map(|(x, gi)| x - alpha * gi).collect();
                let nrm = norm_p(&trial);
                if nrm > 0.0 {
                    let qt = energy(&trial) / nrm;
                    if qt < q {
                        v_prev.copy_from_slice(&v);
                        g_prev.copy_from_slice(&g);
                        v = trial;
                        q = qt;
                        moved = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if !moved {
                break;
            }
            grad(&v, q, &mut g);
            let ss: f64 = v
                .iter()
                .zip(&v_prev)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let sy: f64 = v
                .iter()
                .zip(&v_prev)
                .zip(g.iter().zip(&g_prev))
                .map(|((a, b), (c, d))| (a - b) * (c - d))
                .sum();
            step = if sy > 0.0 { ss / sy } else { alpha * 2.0 };
            step = step.clamp(1e-12, 1e5);
            if it % 32 == 31 {
                let scale = norm_p(&v).powf(1.0 / p);
                v.iter_mut().for_each(|x| *x /= scale);
            }
        }
        q
    }
}

fn check(criterion: &str, cond: bool, detail: String) {
    println!(
        "acceptance criterion {criterion}: {} - {detail}",
        if cond { "PASS" } else { "FAIL" }
    );
    assert!(cond, "criterion {criterion}: {detail}");
}

#[test]
fn criterion_01_theorem_t2_matrix() {
    let start = Instant::now();
    let cfg = ToleranceConfig::default();
    let shapes = vec![
        ("square".to_string(), generators::rect(1.0, 1.0).unwrap()),
        (
            "annulus(0.5,0.3,1024)".to_string(),
            generators::annulus(0.5, 0.3, 1024).unwrap(),
        ),
        (
            "rotated_rect(1,2,0.5)".to_string(),
            generators::rotated_rect(1.0, 2.0, 0.5).unwrap(),
        ),
    ];
    // Angles stay clear of the polygons' diagonal directions, where (as on
    // the annulus everywhere) the continuum infimum is not attained by an
    // eigenfunction and a conforming space at fixed h cannot reach it.
    let report = verify::suite_theorem_t2(&shapes, &[0.0, 0.3, 2.9], &[1.5, 2.0, 3.0], &cfg);
    let elapsed = start.elapsed().as_secs_f64();
    // KNOWN RED: the annulus rows fail at h = 0.02. No direction of the
    // annulus admits a width-attainment strip, so minimizing sequences
    // concentrate near the hole-tangent chords; the discrete conforming
    // minimum exceeds the (unattained) infimum by ~45% at this resolution
    // and decays only at a fractional rate in h. Even a perfectly aligned
    // structured mesh is limited to ~7% at h = 0.02. The 2-3% tolerance at
    // fixed h = 0.02 is therefore unreachable for these cells; the polygon
    // cells all pass at 0.03-1.1%. See the refinement trend in
    // `annulus_fem_upper_bound_decreases_under_refinement`.
    check(
        "1 (T2 FEM vs closed form)",
        report.ok() && elapsed < 300.0,
        format!(
            "{} cases, {} failed, {} errored, {elapsed:.1}s\n{report}",
            report.cases.len(),
            report.failed,
            report.errored
        ),
    );
}

/// Companion evidence for criterion 1's red annulus rows: the FEM value is a
/// strict upper bound that decreases monotonically toward the closed form
/// under mesh refinement (the defect is the fixed-h tolerance, not the
/// solver).
#[test]
fn annulus_fem_upper_bound_decreases_under_refinement() {
    let ann = generators::annulus(0.5, 0.3, 1024).unwrap();
    let h = Anisotropy::directional(1.0, PI / 2.0);
    let closed = spectra::lambda_degenerate(&ann, &h, 2.0).unwrap().value;
    let opts = SolverOpts {
        restarts: 1,
        richardson: false,
        ..SolverOpts::default()
    };
    let mut prev = f64::INFINITY;
    for hh in [0.08, 0.04, 0.02] {
        let mesh = solver::triangulate(&ann, hh).unwrap();
        let (res, _) = solver::rayleigh_minimize(&mesh, &h, 2.0, &opts).unwrap();
        assert!(
            res.value > closed && res.value < prev,
            "h={hh}: {} not in (closed {closed}, prev {prev})",
            res.value
        );
        prev = res.value;
    }
}

#[test]
fn criterion_02_rayleigh_rectangle_formula() {
    let opts = SolverOpts {
        mesh_h: 0.02,
        richardson: false,
        ..SolverOpts::default()
    };
    let start = Instant::now();
    let l11 = spectra::lambda_max(&generators::rect(1.0, 1.0).unwrap(), 2.0, &opts).unwrap();
    let l12 = spectra::lambda_max(&generators::rect(1.0, 2.0).unwrap(), 2.0, &opts).unwrap();
    let want11 = 2.0 * PI * PI;
    let want12 = 5.0 * PI * PI / 4.0;
    let e11 = (l11.value - want11).abs() / want11;
    let e12 = (l12.value - want12).abs() / want12;
    let elapsed = start.elapsed().as_secs_f64();
    check(
        "2 (rectangle formula)",
        e11 < 0.01 && e12 < 0.01 && elapsed < 60.0,
        format!(
            "rect(1,1): {:.6} vs {want11:.6} ({:.3}%); rect(1,2): {:.6} vs {want12:.6} ({:.3}%); {elapsed:.1}s",
            l11.value,
            100.0 * e11,
            l12.value,
            100.0 * e12
        ),
    );
}

#[test]
fn criterion_03_multiplicity_table() {
    let start = Instant::now();
    let cases = [
        ("disk", generators::disk(0.5, 256).unwrap(), 0usize),
        (
            "cropped disk",
            generators::cropped_disk(0.5, 0.25, 512).unwrap(),
            1,
        ),
        ("rectangle", generators::rect(1.0, 1.0).unwrap(), 2),
        ("asterisk(9)", generators::asterisk(9, 2.0, 0.15).unwrap(), 9),
    ];
    let mut detail = String::new();
    let mut ok = true;
    for (name, m, want) in &cases {
        let got = geometry::attainment_multiplicity(m, 512);
        detail.push_str(&format!("{name}: {got} (want {want}); "));
        ok &= got == *want;
    }
    let star = generators::star(10, 0.5, 0.175).unwrap();
    let star_mult = geometry::attainment_multiplicity(&star, 512);
    let (_, ext) = spectra::lambda_min(&star, 2.0).unwrap();
    detail.push_str(&format!(
        "star(10): {} extremizers (want 10), attainment {} (want 0)",
        ext.anisotropies.len(),
        star_mult
    ));
    ok &= ext.anisotropies.len() == 10 && star_mult == 0;
    let elapsed = start.elapsed().as_secs_f64();
    check(
        "3 (multiplicity table)",
        ok && elapsed < 60.0,
        format!("{detail}; {elapsed:.1}s"),
    );
}

#[test]
fn criterion_04_annulus_chord_width() {
    let mut ok = true;
    let mut detail = String::new();
    for r in [0.1, 0.25, 0.4] {
        let ann = generators::annulus(0.5, r, 4096).unwrap();
        let want = (1.0 - 4.0 * r * r).sqrt();
        for theta in [0.0, PI / 2.0, 1.0] {
            let got = geometry::chord_width(&ann, theta);
            let err = (got - want).abs();
            ok &= err <= 1e-6;
            if err > 1e-6 {
                detail.push_str(&format!("r={r} theta={theta}: err {err:.2e}; "));
            }
        }
        detail.push_str(&format!("r={r}: |chord - sqrt(1-4r^2)| ok; "));
    }
    check("4 (annulus chord formula)", ok, detail);
}

#[test]
fn criterion_05_theorem_t5_suite() {
    let start = Instant::now();
    let cfg = ToleranceConfig::default();
    let report = verify::suite_theorem_t5(&verify::gallery(), &[1.5, 2.0, 3.0], &cfg);
    let elapsed = start.elapsed().as_secs_f64();
    check(
        "5 (T5 shape inequalities)",
        report.ok() && elapsed < 60.0,
        format!(
            "{} cases over 12 generators, {} failed, {} errored, {elapsed:.1}s\n{report}",
            report.cases.len(),
            report.failed,
            report.errored
        ),
    );
}

#[test]
fn criterion_06_blowup_growth() {
    let cfg = ToleranceConfig::default();
    let hs = vec![
        ("euclidean".to_string(), Anisotropy::Euclidean, 2.0),
        (
            "weightedlq(3,1,1)".to_string(),
            Anisotropy::weighted_lq(3.0, 1.0, 1.0),
            3.0,
        ),
    ];
    let report = verify::suite_blowup(&hs, 32, &cfg);
    check(
        "6 (blow-up growth)",
        report.ok(),
        format!("{report}"),
    );
}

#[test]
fn criterion_07_property_suite() {
    let mut ok = true;
    let mut detail = String::new();

    // P1 scaling, closed form, exact to 1e-12.
    let sq = generators::rect(1.0, 1.0).unwrap();
    for p in [1.5, 2.0, 3.0] {
        let h = Anisotropy::directional(1.0, 0.7);
        let base = spectra::lambda_degenerate(&sq, &h, p).unwrap().value;
        let scaled = spectra::lambda_degenerate(
            &sq,
            &Anisotropy::scaled(2.5, Anisotropy::directional(1.0, 0.7)),
            p,
        )
        .unwrap()
        .value;
        let rel = (scaled - 2.5_f64.powf(p) * base).abs() / scaled;
        ok &= rel <= 1e-12;
    }
    detail.push_str("P1 closed-form scaling exact; ");

    // P1 scaling through the FEM path within 1%.
    let opts = SolverOpts {
        mesh_h: 0.05,
        richardson: false,
        ..SolverOpts::default()
    };
    let mesh = solver::triangulate(&sq, 0.05).unwrap();
    let (le, _) = solver::rayleigh_minimize(&mesh, &Anisotropy::Euclidean, 2.0, &opts).unwrap();
    let (ls, _) = solver::rayleigh_minimize(
        &mesh,
        &Anisotropy::scaled(2.0, Anisotropy::Euclidean),
        2.0,
        &opts,
    )
    .unwrap();
    let rel = (ls.value - 4.0 * le.value).abs() / ls.value;
    ok &= rel <= 0.01;
    detail.push_str(&format!("P1 FEM scaling {:.2e}; ", rel));

    // P2 domain monotonicity on 6 nested pairs (closed forms).
    let pairs = [
        (generators::rect(1.0, 1.0).unwrap(), generators::rect(2.0, 2.0).unwrap()),
        (generators::rect(1.0, 2.0).unwrap(), generators::rect(1.5, 2.5).unwrap()),
        (generators::rect(0.5, 3.0).unwrap(), generators::rect(0.75, 3.5).unwrap()),
        (
            generators::disk(0.5, 512).unwrap(),
            generators::disk(0.8, 512).unwrap(),
        ),
        (
            generators::disk(0.4, 512).unwrap(),
            // A disk inside the square [-0.5, 0.5]^2 centered at the origin.
            generators::rect(1.0, 1.0).unwrap().translated(anisospec::math::Vec2::new(-0.5, -0.5)),
        ),
        (
            generators::asterisk(5, 1.0, 0.2).unwrap(),
            generators::disk(2.0, 512).unwrap(),
        ),
    ];
    for (inner, outer) in &pairs {
        for p in [1.5, 2.0] {
            let h = Anisotropy::directional(1.0, 0.3);
            let li = spectra::lambda_degenerate(inner, &h, p).unwrap().value;
            let lo = spectra::lambda_degenerate(outer, &h, p).unwrap().value;
            ok &= lo <= li * (1.0 + 1e-12);
            let (mi, _) = spectra::lambda_min(inner, p).unwrap();
            let (mo, _) = spectra::lambda_min(outer, p).unwrap();
            ok &= mo.value <= mi.value * (1.0 + 1e-12);
        }
    }
    detail.push_str("P2 monotonicity on 6 nested pairs; ");

    // P3 anisotropy monotonicity: dominating degenerate minorant stays below
    // the FEM value on 8 anisotropies.
    let anisotropies = [
        Anisotropy::Euclidean,
        Anisotropy::quadratic([[4.0, 0.0], [0.0, 1.0]]),
        Anisotropy::quadratic([[1.0, 0.3], [0.3, 0.8]]),
        Anisotropy::weighted_lq(2.0, 1.0, 0.25),
        Anisotropy::weighted_lq(3.0, 1.0, 1.0),
        Anisotropy::weighted_lq(1.5, 0.8, 1.2),
        Anisotropy::max_of(vec![
            Anisotropy::directional(1.0, 0.0),
            Anisotropy::directional(1.0, PI / 3.0),
        ]),
        Anisotropy::lp_sum(
            2.0,
            vec![Anisotropy::directional(0.7, 0.2), Anisotropy::directional(0.7, 1.8)],
        ),
    ];
    for h in &anisotropies {
        let h0 = h.dominating_degenerate().unwrap();
        let closed = spectra::lambda_degenerate(&sq, &h0, 2.0).unwrap();
        let (fem, _) = solver::rayleigh_minimize(&mesh, h, 2.0, &opts).unwrap();
        let tol = 0.02 * fem.value + 3.0 * fem.error_estimate;
        ok &= closed.value <= fem.value + tol;
    }
    detail.push_str("P3 dominating minorant below FEM on 8 anisotropies; ");

    // P4 rotation invariance: closed form to 1e-9 (relative), FEM to 0.5%.
    let m = generators::rect(1.0, 2.0).unwrap();
    let h = Anisotropy::directional(1.0, 0.4);
    let base = spectra::lambda_degenerate(&m, &h, 2.0).unwrap().value;
    for phi in [0.5, 1.3] {
        let rot = spectra::lambda_degenerate(&m.rotated(phi), &h.rotate(phi), 2.0)
            .unwrap()
            .value;
        ok &= (rot - base).abs() <= 1e-9 * base;
    }
    let (f0, _) = solver::rayleigh_minimize(
        &solver::triangulate(&m, 0.04).unwrap(),
        &Anisotropy::Euclidean,
        2.0,
        &opts,
    )
    .unwrap();
    let (f1, _) = solver::rayleigh_minimize(
        &solver::triangulate(&m.rotated(0.7), 0.04).unwrap(),
        &Anisotropy::Euclidean,
        2.0,
        &opts,
    )
    .unwrap();
    let rel = (f0.value - f1.value).abs() / f0.value;
    ok &= rel <= 0.005;
    detail.push_str(&format!("P4 rotation: closed 1e-9, FEM {:.2e}", rel));

    check("7 (properties P1-P4)", ok, detail);
}

#[test]
fn criterion_08_strictness_over_dominating_minorant() {
    // Four positive unit-norm anisotropies on the unit square at p = 2: the
    // FEM level must exceed the dominating degenerate closed form by more
    // than five times the combined tolerance.
    let sq = generators::rect(1.0, 1.0).unwrap();
    let mesh = solver::triangulate(&sq, 0.03).unwrap();
    let opts = SolverOpts {
        mesh_h: 0.03,
        richardson: false,
        ..SolverOpts::default()
    };
    let maxof = Anisotropy::max_of(vec![
        Anisotropy::directional(1.0, 0.0),
        Anisotropy::directional(1.0, PI / 3.0),
    ]);
    let maxof_unit = Anisotropy::scaled(1.0 / maxof.sup_norm(), maxof);
    let quad = Anisotropy::quadratic([[1.0, 0.3], [0.3, 0.6]]);
    let quad_unit = Anisotropy::scaled(1.0 / quad.sup_norm(), quad);
    let wlq = Anisotropy::weighted_lq(2.0, 1.0, 0.25);
    let wlq_unit = Anisotropy::scaled(1.0 / wlq.sup_norm(), wlq);
    let hs = [
        ("euclidean", Anisotropy::Euclidean),
        ("weightedlq", wlq_unit),
        ("quadratic", quad_unit),
        ("maxof", maxof_unit),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for (name, h) in &hs {
        assert!((h.sup_norm() - 1.0).abs() < 1e-9);
        let h0 = h.dominating_degenerate().unwrap();
        let closed = spectra::lambda_degenerate(&sq, &h0, 2.0).unwrap().value;
        let (fem, _) = solver::rayleigh_minimize(&mesh, h, 2.0, &opts).unwrap();
        let combined_tol = 0.02 * fem.value + 3.0 * fem.error_estimate;
        let gap = fem.value - closed;
        ok &= gap > 5.0 * combined_tol;
        detail.push_str(&format!(
            "{name}: gap {gap:.3} vs 5*tol {:.3}; ",
            5.0 * combined_tol
        ));
    }
    check("8 (strict gap over degenerate minorant)", ok, detail);
}

#[test]
fn criterion_09_oracle_validation_gate() {
    let mut ok = true;
    let mut detail = String::new();
    for p in [1.5, 2.0, 3.0, 4.0] {
        for l in [0.5, 1.0, 2.0] {
            let closed = spectra::lambda_1d(p, l).unwrap().value;
            let oracle = oracle1d::descent_eigenvalue(p, l, 2000);
            let rel = (oracle - closed).abs() / closed;
            ok &= rel <= 1e-3;
            if rel > 1e-3 {
                detail.push_str(&format!("p={p} L={l}: rel {rel:.2e}; "));
            }
        }
    }
    detail.push_str("descent oracle within 1e-3 on all (p, L); ");
    // Richardson-extrapolated finite differences at p = 2.
    let l1 = oracle1d::fd_eigenvalue_p2(1.0, 2000);
    let l2 = oracle1d::fd_eigenvalue_p2(1.0, 4000);
    let extrapolated = (4.0 * l2 - l1) / 3.0;
    let rel = (extrapolated - PI * PI).abs() / (PI * PI);
    ok &= rel <= 1e-5;
    detail.push_str(&format!("fd Richardson vs pi^2: rel {rel:.2e}"));
    check("9 (1d oracle gate)", ok, detail);
}

#[test]
fn criterion_10_solver_sanity() {
    let start = Instant::now();
    // First Dirichlet eigenvalue of the unit disk: the squared first zero of
    // the Bessel function J0.
    let j01 = 2.404_825_557_695_773_f64;
    let want = j01 * j01;
    let disk = generators::disk(1.0, 512).unwrap();
    let opts = SolverOpts {
        mesh_h: 0.04,
        richardson: false,
        ..SolverOpts::default()
    };
    let res = spectra::lambda_max(&disk, 2.0, &opts).unwrap();
    let rel = (res.value - want).abs() / want;

    let study = solver::convergence_study(
        &generators::rect(1.0, 1.0).unwrap(),
        &Anisotropy::Euclidean,
        2.0,
        &[0.1, 0.05, 0.025],
        &SolverOpts::default(),
    )
    .unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    check(
        "10 (solver sanity)",
        rel < 0.01 && study.order >= 1.7,
        format!(
            "disk lambda {:.5} vs j01^2 {want:.5} ({:.3}%); square order {:.2}; {elapsed:.1}s",
            res.value,
            100.0 * rel,
            study.order
        ),
    );
}

#[test]
fn criterion_11_non_attainment() {
    let s = generators::s_counterexample();
    let design = geometry::has_optimal_design(&s);
    let (res, ext) = spectra::lambda_min(&s, 2.0).unwrap();
    check(
        "11 (non-attainment counterexample)",
        design == TriState::NotAttained
            && ext.anisotropies.is_empty()
            && !ext.complete
            && res.value > 0.0
            && res.value.is_finite(),
        format!(
            "design {design:?}, {} extremizers, lambda_min {:.6}",
            ext.anisotropies.len(),
            res.value
        ),
    );
}

/// Cross-check between the two independent routes required by the oracle
/// policy: the FEM solver and the 1d oracle agree on a degenerate problem.
#[test]
fn oracle_cross_check_degenerate_square() {
    let sq = generators::rect(1.0, 1.0).unwrap();
    let mesh = solver::triangulate(&sq, 0.03).unwrap();
    let h = Anisotropy::directional(1.0, PI / 2.0);
    for p in [1.5, 3.0] {
        let (fem, _) = solver::rayleigh_minimize(&mesh, &h, p, &SolverOpts::default()).unwrap();
        let oracle = oracle1d::descent_eigenvalue(p, 1.0, 1500);
        let rel = (fem.value - oracle).abs() / oracle;
        assert!(
            rel < 0.03,
            "p={p}: fem {} vs 1d oracle {oracle} (rel {rel:.3})",
            fem.value
        );
    }
}

/// Pseudo p-Laplacian on the square at p = 3: no closed form is claimed, but
/// the FEM value must land inside the sharp two-sided bounds.
#[test]
fn pseudo_p_laplacian_bracket() {
    let sq = generators::rect(1.0, 1.0).unwrap();
    let p = 3.0;
    let h = Anisotropy::weighted_lq(p, 1.0, 1.0);
    let opts = SolverOpts {
        mesh_h: 0.05,
        richardson: false,
        ..SolverOpts::default()
    };
    let (lo, hi) = spectra::u_estimate_bounds(&sq, &h, p, &opts).unwrap();
    let mesh = solver::triangulate(&sq, 0.05).unwrap();
    let (fem, _) = solver::rayleigh_minimize(&mesh, &h, p, &opts).unwrap();
    let tol = 0.03 * fem.value + 3.0 * fem.error_estimate;
    assert!(
        fem.value >= lo - tol && fem.value <= hi + tol,
        "pseudo p-laplacian {} outside [{lo}, {hi}] with tol {tol}",
        fem.value
    );
}

/// The AFK suite is not a numbered criterion but ships with the verify
/// module; run it here at a coarse mesh as a regression guard.
#[test]
fn afk_suite_runs_clean() {
    let cfg = ToleranceConfig {
        mesh_h: 0.05,
        ..ToleranceConfig::default()
    };
    let hs = vec![
        ("euclidean".to_string(), Anisotropy::Euclidean),
        (
            "quadratic(diag(4,1))".to_string(),
            Anisotropy::quadratic([[4.0, 0.0], [0.0, 1.0]]),
        ),
        (
            "weightedlq(4,1,1)".to_string(),
            Anisotropy::weighted_lq(4.0, 1.0, 1.0),
        ),
    ];
    let report = verify::suite_afk(&hs, &[2.0], &cfg);
    assert!(report.ok(), "{report}");
    // The Wulff construction itself: polar of the unit ball of a quadratic
    // anisotropy is the dual ellipse.
    let q = Anisotropy::quadratic([[4.0, 0.0], [0.0, 1.0]]);
    let ball = unit_ball_poly(&q, 64).unwrap();
    let wulff = anisospec::anisotropy::polar_body(&ball).unwrap();
    for v in &wulff.vertices {
        // Dual ellipse: x^2/ (1/4)... the polar of {4x^2 + y^2 <= 1} is
        // {x^2/4 + y^2 <= 1}.
        let val = v.x * v.x / 4.0 + v.y * v.y;
        assert!((val - 1.0).abs() < 0.01, "wulff vertex off dual ellipse: {val}");
    }
    match q.classify(1e-9).unwrap() {
        AnisotropyClass::Positive => {}
        other => panic!("expected positive, got {other:?}"),
    }
}
