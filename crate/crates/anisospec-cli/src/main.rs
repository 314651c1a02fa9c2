//! Command-line front end: shape generation, anisotropy classification,
//! width profiles, frequency computations, the FEM solver and the
//! verification suites.
//!
//! Exit codes: 0 success, 1 computation failure (or failing verification
//! suite), 2 usage error.

use anisospec::anisotropy::{self, Anisotropy};
use anisospec::geometry::{self, generators, Membrane};
use anisospec::solver::{self, SolverOpts};
use anisospec::verify::{self, ToleranceConfig, VerificationReport};
use anisospec::{io, spectra};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "anisospec", version, about = "Anisotropic membrane frequencies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a shape from the gallery and write its JSON.
    GenShape {
        #[command(subcommand)]
        shape: ShapeCmd,
    },
    /// Classify an anisotropy (positive / degenerate / zero).
    Classify {
        #[arg(long)]
        anis: String,
        /// Relative classification tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the directional width function and export it as CSV.
    WidthProfile {
        #[arg(long)]
        shape: PathBuf,
        /// Number of grid directions on [0, pi).
        #[arg(long, default_value_t = 512)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form least level for a degenerate anisotropy.
    Lambda {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        anis: String,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower anisotropic constant and its extremizers.
    LambdaMin {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Upper anisotropic constant (FEM p-Laplacian frequency).
    LambdaMax {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-sided sharp bounds for a given anisotropy.
    Bounds {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        anis: String,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimize the discrete Rayleigh quotient; export the eigenfunction.
    Solve {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        anis: String,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        solver: SolverArgs,
        /// Eigenfunction CSV (x, y, u).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Mesh export (plain text).
        #[arg(long)]
        mesh_out: Option<PathBuf>,
    },
    /// Solve with a degenerate anisotropy and test 1D slice quotients.
    SliceCheck {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        anis: String,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 40)]
        lines: usize,
        #[arg(long, default_value_t = 0.02)]
        tol: f64,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unit-area blow-up sequence of lower bounds; CSV k,area,lower_bound.
    Blowup {
        #[arg(long)]
        anis: String,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 32)]
        k_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites; nonzero exit if any case fails.
    Verify {
        /// One of: t2, t3, t4, t5, blowup, afk, all.
        #[arg(long)]
        suite: String,
        /// key = value tolerance configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the JSON reports here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mesh-refinement convergence study.
    Convergence {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        anis: String,
        #[arg(long)]
        p: f64,
        /// Comma-separated decreasing mesh sizes, e.g. 0.1,0.05,0.025.
        #[arg(long)]
        h_list: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ShapeCmd {
    Rect {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    RotatedRect {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        /// Rotation angle in radians.
        #[arg(long)]
        phi: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Disk {
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 257)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Annulus {
        #[arg(long)]
        big_r: f64,
        #[arg(long)]
        small_r: f64,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    CroppedDisk {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 512)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Asterisk {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        len: f64,
        #[arg(long)]
        wid: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Star {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        big_r: f64,
        #[arg(long)]
        small_r: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    SChain {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    SCounterexample {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolverArgs {
    /// Target mesh edge length.
    #[arg(long, default_value_t = 0.02)]
    h: f64,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Skip the two-mesh error estimate.
    #[arg(long, default_value_t = false)]
    no_richardson: bool,
}

impl SolverArgs {
    fn opts(&self) -> SolverOpts {
        SolverOpts {
            mesh_h: self.h,
            seed: self.seed,
            richardson: !self.no_richardson,
            ..SolverOpts::default()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(RunError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(RunError::SuiteFailed) => ExitCode::from(1),
    }
}

enum RunError {
    Computation(String),
    Usage(String),
    SuiteFailed,
}

impl From<anisospec::Error> for RunError {
    fn from(e: anisospec::Error) -> Self {
        match e {
            anisospec::Error::InvalidParams(m) => RunError::Usage(m),
            other => RunError::Computation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Computation(format!("I/O: {e}"))
    }
}

fn load_shape(path: &Path) -> Result<Membrane, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Usage(format!("cannot read shape {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| RunError::Usage(format!("shape {} is not JSON: {e}", path.display())))?;
    io::shape_from_json(v).map_err(RunError::from)
}

/// Accept an inline JSON anisotropy or a path to a JSON file.
fn load_anisotropy(spec: &str) -> Result<Anisotropy, RunError> {
    let v: Value = match serde_json::from_str(spec) {
        Ok(v) => v,
        Err(_) => {
            let p = Path::new(spec);
            if p.exists() {
                let text = std::fs::read_to_string(p)?;
                serde_json::from_str(&text)
                    .map_err(|e| RunError::Usage(format!("anisotropy file is not JSON: {e}")))?
            } else {
                return Err(RunError::Usage(format!(
                    "--anis is neither inline JSON nor an existing file: {spec}"
                )));
            }
        }
    };
    io::anisotropy_from_json(v).map_err(RunError::from)
}

/// Write JSON to --out (then print a summary) or print it to stdout (summary
/// to stderr).
fn emit_json(out: Option<&PathBuf>, value: &Value, summary: &str) -> Result<(), RunError> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            println!("{summary} -> {}", path.display());
        }
        None => {
            println!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn emit_text(out: Option<&PathBuf>, text: &str, summary: &str) -> Result<(), RunError> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            println!("{summary} -> {}", path.display());
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::GenShape { shape } => {
            let (m, out, desc) = build_shape(shape)?;
            let v = io::shape_to_json(&m);
            emit_json(
                out.as_ref(),
                &v,
                &format!(
                    "{desc}: {} outer vertices, {} holes, area {:.6}",
                    m.outer().len(),
                    m.holes().len(),
                    m.area()
                ),
            )
        }
        Command::Classify { anis, tol, out } => {
            let h = load_anisotropy(&anis)?;
            let class = h.classify(tol)?;
            let v = json!({
                "schema": io::SCHEMA,
                "anisotropy": serde_json::to_value(&h).unwrap(),
                "sup_norm": h.sup_norm(),
                "class": serde_json::to_value(&class).unwrap(),
            });
            emit_json(out.as_ref(), &v, &format!("classified: {class:?}"))
        }
        Command::WidthProfile { shape, n, out } => {
            let m = load_shape(&shape)?;
            let profile = geometry::width_profile(&m, n, true);
            let mut csv = String::from("theta,L\n");
            for (t, l) in profile.thetas.iter().zip(&profile.values) {
                csv.push_str(&format!("{t:.17e},{l:.17e}\n"));
            }
            let summary = format!(
                "sup width {:.9}, {} maxima cluster(s){}, attainment {:?}",
                profile.sup_width,
                profile.maxima.len(),
                if profile.is_continuum { " (continuum)" } else { "" },
                profile.attained_flag
            );
            emit_text(out.as_ref(), &csv, &summary)
        }
        Command::Lambda { shape, anis, p, out } => {
            let m = load_shape(&shape)?;
            let h = load_anisotropy(&anis)?;
            let res = spectra::lambda_degenerate(&m, &h, p)?;
            let v = json!({
                "schema": io::SCHEMA,
                "shape": shape.display().to_string(),
                "anisotropy": serde_json::to_value(&h).unwrap(),
                "p": p,
                "lambda": res.value,
                "method": serde_json::to_value(res.method).unwrap(),
                "error": res.error_estimate,
                "provenance": res.provenance,
            });
            emit_json(out.as_ref(), &v, &format!("lambda = {:.9}", res.value))
        }
        Command::LambdaMin { shape, p, out } => {
            let m = load_shape(&shape)?;
            let (res, ext) = spectra::lambda_min(&m, p)?;
            let v = json!({
                "schema": io::SCHEMA,
                "shape": shape.display().to_string(),
                "p": p,
                "lambda": res.value,
                "method": serde_json::to_value(res.method).unwrap(),
                "error": res.error_estimate,
                "extremizers": serde_json::to_value(&ext).unwrap(),
            });
            emit_json(
                out.as_ref(),
                &v,
                &format!(
                    "lambda_min = {:.9} with {} extremizer(s){}",
                    res.value,
                    ext.anisotropies.len(),
                    if ext.continuum { " (continuum)" } else { "" }
                ),
            )
        }
        Command::LambdaMax { shape, p, solver, out } => {
            let m = load_shape(&shape)?;
            let res = spectra::lambda_max(&m, p, &solver.opts())?;
            let v = json!({
                "schema": io::SCHEMA,
                "shape": shape.display().to_string(),
                "p": p,
                "lambda": res.value,
                "method": serde_json::to_value(res.method).unwrap(),
                "error": res.error_estimate,
                "provenance": res.provenance,
            });
            emit_json(out.as_ref(), &v, &format!("lambda_max = {:.9}", res.value))
        }
        Command::Bounds { shape, anis, p, solver, out } => {
            let m = load_shape(&shape)?;
            let h = load_anisotropy(&anis)?;
            let (lo, hi) = spectra::u_estimate_bounds(&m, &h, p, &solver.opts())?;
            let v = json!({
                "schema": io::SCHEMA,
                "shape": shape.display().to_string(),
                "anisotropy": serde_json::to_value(&h).unwrap(),
                "p": p,
                "bounds": {"lower": lo, "upper": hi},
                "sup_norm": h.sup_norm(),
            });
            emit_json(out.as_ref(), &v, &format!("bounds [{lo:.9}, {hi:.9}]"))
        }
        Command::Solve { shape, anis, p, solver, out, mesh_out } => {
            let m = load_shape(&shape)?;
            let h = load_anisotropy(&anis)?;
            let mesh = solver::triangulate(&m, solver.h)?;
            let (res, field) = solver::rayleigh_minimize(&mesh, &h, p, &solver.opts())?;
            if let Some(path) = &mesh_out {
                std::fs::write(path, mesh.export_text())?;
            }
            let mut csv = String::from("x,y,u\n");
            for (v, u) in mesh.vertices.iter().zip(&field.values) {
                csv.push_str(&format!("{:.17e},{:.17e},{:.17e}\n", v.x, v.y, u));
            }
            emit_text(
                out.as_ref(),
                &csv,
                &format!(
                    "lambda = {:.9} (est. error {:.2e}, {} vertices)",
                    res.value,
                    res.error_estimate,
                    mesh.vertices.len()
                ),
            )
        }
        Command::SliceCheck { shape, anis, p, lines, tol, solver, out } => {
            let m = load_shape(&shape)?;
            let h = load_anisotropy(&anis)?;
            let class = h.classify(1e-9)?;
            let theta = match class {
                anisotropy::AnisotropyClass::Degenerate { theta, .. } => theta,
                other => {
                    return Err(RunError::Usage(format!(
                        "slice-check needs a degenerate anisotropy, got {other:?}"
                    )))
                }
            };
            let mesh = solver::triangulate(&m, solver.h)?;
            let (res, field) = solver::rayleigh_minimize(&mesh, &h, p, &solver.opts())?;
            let report = solver::slice_check(&mesh, &field, theta, p, lines, tol)?;
            let v = json!({
                "schema": io::SCHEMA,
                "shape": shape.display().to_string(),
                "p": p,
                "lambda_fem": res.value,
                "report": serde_json::to_value(&report).unwrap(),
            });
            emit_json(
                out.as_ref(),
                &v,
                &format!(
                    "{} / {} non-trivial slices within {:.1}% (fraction {:.3})",
                    report.n_within,
                    report.n_nontrivial,
                    100.0 * report.rel_tol,
                    report.fraction
                ),
            )
        }
        Command::Blowup { anis, p, k_max, out } => {
            let h = load_anisotropy(&anis)?;
            let seq = spectra::blowup_sequence(&h, p, k_max)?;
            let mut csv = String::from("k,area,lower_bound\n");
            for (k, area, res) in &seq {
                csv.push_str(&format!("{k},{area:.17e},{:.17e}\n", res.value));
            }
            let last = seq.last().unwrap();
            emit_text(
                out.as_ref(),
                &csv,
                &format!("k={} lower bound {:.6e}", last.0, last.2.value),
            )
        }
        Command::Verify { suite, config, out } => {
            let cfg = match &config {
                Some(path) => ToleranceConfig::from_file(path)?,
                None => ToleranceConfig::default(),
            };
            let reports = run_suites(&suite, &cfg)?;
            let mut all_ok = true;
            for r in &reports {
                print!("{r}");
                all_ok &= r.ok();
            }
            if let Some(path) = &out {
                std::fs::write(path, serde_json::to_string_pretty(&reports).unwrap())?;
            }
            if all_ok {
                Ok(())
            } else {
                Err(RunError::SuiteFailed)
            }
        }
        Command::Convergence { shape, anis, p, h_list, out } => {
            let m = load_shape(&shape)?;
            let h = load_anisotropy(&anis)?;
            let hs: Vec<f64> = h_list
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| RunError::Usage(format!("bad mesh size {s}")))
                })
                .collect::<Result<_, _>>()?;
            let study = solver::convergence_study(&m, &h, p, &hs, &SolverOpts::default())?;
            let v = json!({
                "schema": io::SCHEMA,
                "shape": shape.display().to_string(),
                "p": p,
                "rows": study.rows,
                "extrapolated": study.extrapolated,
                "order": study.order,
            });
            emit_json(
                out.as_ref(),
                &v,
                &format!(
                    "extrapolated {:.9}, empirical order {:.2}",
                    study.extrapolated, study.order
                ),
            )
        }
    }
}

fn build_shape(cmd: ShapeCmd) -> Result<(Membrane, Option<PathBuf>, String), RunError> {
    Ok(match cmd {
        ShapeCmd::Rect { a, b, out } => (generators::rect(a, b)?, out, format!("rect({a},{b})")),
        ShapeCmd::RotatedRect { a, b, phi, out } => (
            generators::rotated_rect(a, b, phi)?,
            out,
            format!("rotated_rect({a},{b},{phi})"),
        ),
        ShapeCmd::Disk { r, n, out } => (generators::disk(r, n)?, out, format!("disk({r},{n})")),
        ShapeCmd::Annulus { big_r, small_r, n, out } => (
            generators::annulus(big_r, small_r, n)?,
            out,
            format!("annulus({big_r},{small_r},{n})"),
        ),
        ShapeCmd::CroppedDisk { r, h, n, out } => (
            generators::cropped_disk(r, h, n)?,
            out,
            format!("cropped_disk({r},{h},{n})"),
        ),
        ShapeCmd::Asterisk { m, len, wid, out } => (
            generators::asterisk(m, len, wid)?,
            out,
            format!("asterisk({m},{len},{wid})"),
        ),
        ShapeCmd::Star { m, big_r, small_r, out } => (
            generators::star(m, big_r, small_r)?,
            out,
            format!("star({m},{big_r},{small_r})"),
        ),
        ShapeCmd::SChain { k, n, out } => {
            (generators::s_chain(k, n)?, out, format!("s_chain({k},{n})"))
        }
        ShapeCmd::SCounterexample { out } => (
            generators::s_counterexample(),
            out,
            "s_counterexample".to_string(),
        ),
    })
}

fn run_suites(which: &str, cfg: &ToleranceConfig) -> Result<Vec<VerificationReport>, RunError> {
    let t2 = || {
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
        verify::suite_theorem_t2(
            &shapes,
            &[0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_4],
            &[1.5, 2.0, 3.0],
            cfg,
        )
    };
    let t3 = || {
        let shapes = vec![("square".to_string(), generators::rect(1.0, 1.0).unwrap())];
        let hs = verify_anisotropies();
        verify::suite_theorem_t3(&shapes, &hs, &[2.0], cfg)
    };
    let t5 = || verify::suite_theorem_t5(&verify::gallery(), &[1.5, 2.0, 3.0], cfg);
    let blowup = || {
        let hs = vec![
            ("euclidean".to_string(), Anisotropy::Euclidean, 2.0),
            (
                "weightedlq(3,1,1)".to_string(),
                Anisotropy::weighted_lq(3.0, 1.0, 1.0),
                3.0,
            ),
        ];
        verify::suite_blowup(&hs, 32, cfg)
    };
    let afk = || {
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
        verify::suite_afk(&hs, &[2.0], cfg)
    };
    Ok(match which {
        "t2" | "T2" => vec![t2()],
        "t3" | "T3" => vec![t3()],
        "t4" | "T4" => vec![verify::suite_theorem_t4_multiplicity(cfg)],
        "t5" | "T5" => vec![t5()],
        "blowup" => vec![blowup()],
        "afk" | "AFK" => vec![afk()],
        "all" => vec![
            t2(),
            t3(),
            verify::suite_theorem_t4_multiplicity(cfg),
            t5(),
            blowup(),
            afk(),
        ],
        other => {
            return Err(RunError::Usage(format!(
                "unknown suite {other}; expected t2, t3, t4, t5, blowup, afk or all"
            )))
        }
    })
}

/// Unit-norm anisotropies for the rigidity suite.
fn verify_anisotropies() -> Vec<(String, Anisotropy)> {
    let maxof = Anisotropy::max_of(vec![
        Anisotropy::directional(1.0, 0.0),
        Anisotropy::directional(1.0, std::f64::consts::FRAC_PI_3),
    ]);
    let s = maxof.sup_norm();
    vec![
        (
            "directional(1,pi/2)".to_string(),
            Anisotropy::directional(1.0, std::f64::consts::FRAC_PI_2),
        ),
        ("euclidean".to_string(), Anisotropy::Euclidean),
        (
            "weightedlq(2,1,0.25)".to_string(),
            Anisotropy::weighted_lq(2.0, 1.0, 0.25),
        ),
        (
            "maxof(two directionals)".to_string(),
            Anisotropy::scaled(1.0 / s, maxof),
        ),
    ]
}
