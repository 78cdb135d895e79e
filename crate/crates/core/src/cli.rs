//! The `spheriq` command line.
//!
//! Every command builds a JSON report stamped with the tool version and an
//! echo of its configuration. With `--json` the report goes to stdout;
//! otherwise it is written to `--report` (default `<command>-report.json`)
//! and a one-line summary is printed.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::conics::{
    canonical_residual, classify, conic_loops, focal_params, locus_residual, param,
    report as conic_report, Branch, CylinderConic, MomentumCoeffs,
};
use crate::momentum::{
    feasible_intervals, reconstruct_with, validate_reconstruction_where, MomentumProfile,
    ReconstructOptions, DEFAULT_GRID,
};
use crate::projection::{
    cyclide_coeffs, cyclide_residual, mesh_from_surface, spiric_coeffs, spiric_residual, stereo_s2,
    write_obj,
};
use crate::sphere::{resample_by_arclength, write_curve_csv, SampledCurve, UnitPoint2};
use crate::surfaces::{
    make_degenerate, make_fake_paraboloid, make_quadric, principal_curvatures_numeric,
    quadric_surface, DegenerateKind, RotationalSurface,
};
use crate::weingarten::{
    classify_theorem_main, cubic_residual, sextic_relation, sextic_residual, Classification,
    WeingartenReport,
};
use crate::{Error, Result, VERSION};

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "spheriq",
    version,
    about = "Spherical conics and rotational quadrics in the 3-sphere"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the report as JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Report path when not using --json.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Classify and sample a sphere ∩ cylinder conic.
    #[command(allow_negative_numbers = true)]
    Conic(ConicArgs),
    /// Rebuild a curve from its momentum profile K(z).
    #[command(allow_negative_numbers = true)]
    Reconstruct(ReconstructArgs),
    /// Build the rotational quadric with moduli (mu, c).
    #[command(allow_negative_numbers = true)]
    Quadric(QuadricArgs),
    /// Decide whether a surface satisfies k_m = mu k_p^3 and which one it is.
    #[command(allow_negative_numbers = true)]
    Classify(SurfaceArgs),
    /// Sweep the cubic or sextic Weingarten residuals.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Stereographic images: spiric coefficients or a projected mesh.
    #[command(allow_negative_numbers = true)]
    Project(ProjectArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Conic(_) => "conic",
            Command::Reconstruct(_) => "reconstruct",
            Command::Quadric(_) => "quadric",
            Command::Classify(_) => "classify",
            Command::Verify(_) => "verify",
            Command::Project(_) => "project",
        }
    }
}

#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false, id = "cylinder")]
pub struct CylinderArgs {
    /// x^2/C^2 + z^2/D^2 = 1.
    #[arg(long, num_args = 2, value_names = ["C", "D"], group = "cylinder")]
    pub horizontal: Option<Vec<f64>>,
    /// x^2/A^2 + y^2/B^2 = 1.
    #[arg(long, num_args = 2, value_names = ["A", "B"], group = "cylinder")]
    pub vertical: Option<Vec<f64>>,
}

impl CylinderArgs {
    fn conic(&self) -> Result<CylinderConic> {
        match (&self.horizontal, &self.vertical) {
            (Some(h), None) => CylinderConic::horizontal(h[0], h[1]),
            (None, Some(v)) => CylinderConic::vertical(v[0], v[1]),
            _ => Err(Error::BadParameter(
                "give exactly one of --horizontal, --vertical".into(),
            )),
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct ConicArgs {
    #[command(flatten)]
    pub cylinder: CylinderArgs,
    /// Samples per component.
    #[arg(long, default_value_t = 720)]
    pub samples: usize,
    /// Arc-length step of the CSV curve.
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false, id = "profile")]
pub struct ProfileArgs {
    /// K(z) = k.
    #[arg(long, value_name = "K", group = "profile")]
    pub constant: Option<f64>,
    /// K(z) = k0 z.
    #[arg(long, value_name = "K0", group = "profile")]
    pub linear: Option<f64>,
    /// K(z)^2 = z^2/(mu + c z^2).
    #[arg(long, num_args = 2, value_names = ["MU", "C"], group = "profile")]
    pub quadric: Option<Vec<f64>>,
    /// Momentum of the curve x^2 + (y + a)^2 = 1 + a^2.
    #[arg(long, value_name = "A", group = "profile")]
    pub fake_paraboloid: Option<f64>,
}

impl ProfileArgs {
    fn profile(&self) -> Result<MomentumProfile> {
        if let Some(k) = self.constant {
            MomentumProfile::constant(k)
        } else if let Some(k0) = self.linear {
            MomentumProfile::linear(k0)
        } else if let Some(q) = &self.quadric {
            MomentumProfile::quadric(q[0], q[1], 1.0)
        } else if let Some(a) = self.fake_paraboloid {
            MomentumProfile::sphero_cylindrical(a)
        } else {
            Err(Error::BadParameter("no momentum profile given".into()))
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct ReconstructArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    /// Monotone branches stitched at turning points.
    #[arg(long, default_value_t = 1)]
    pub branches: usize,
    /// Samples this close to a turning point (fraction of the interval) are
    /// left out of the validation.
    #[arg(long, default_value_t = 0.05)]
    pub margin: f64,
    /// Curve CSV; further intervals get `_1`, `_2`, … suffixes.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct QuadricArgs {
    #[arg(long, num_args = 2, value_names = ["MU", "C"], required = true)]
    pub quadric: Vec<f64>,
    /// Use the prolate (IIb) form of a two-piece quadric.
    #[arg(long)]
    pub swap: bool,
    #[arg(long, default_value_t = 1.0)]
    pub branch: f64,
    #[arg(long, default_value_t = 64)]
    pub ns: usize,
    #[arg(long, default_value_t = 64)]
    pub nt: usize,
    /// Stereographically project the mesh.
    #[arg(long)]
    pub project: bool,
    #[arg(long)]
    pub obj: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
#[group(skip)]
#[command(group(clap::ArgGroup::new("surface").required(true).multiple(false)))]
pub struct SurfaceArgs {
    #[arg(long, num_args = 2, value_names = ["MU", "C"], group = "surface")]
    pub quadric: Option<Vec<f64>>,
    #[arg(long, value_name = "A", group = "surface")]
    pub fake_paraboloid: Option<f64>,
    #[arg(long, value_name = "PHI0", group = "surface")]
    pub torus: Option<f64>,
    #[arg(long, value_name = "DELTA", group = "surface")]
    pub umbilical: Option<f64>,
    #[arg(long, value_name = "THETA", group = "surface")]
    pub moon: Option<f64>,
    #[arg(long, group = "surface")]
    pub equatorial: bool,
    /// Use the prolate (IIb) form of a two-piece quadric.
    #[arg(long)]
    pub swap: bool,
}

impl SurfaceArgs {
    fn surface(&self) -> Result<RotationalSurface> {
        if let Some(q) = &self.quadric {
            let mut spec = make_quadric(MomentumCoeffs::new(q[0], q[1]))?;
            if self.swap {
                spec = spec.swapped()?;
            }
            quadric_surface(&spec, 1.0)
        } else if let Some(a) = self.fake_paraboloid {
            make_fake_paraboloid(a)
        } else if let Some(phi0) = self.torus {
            make_degenerate(DegenerateKind::StandardTorus, phi0)
        } else if let Some(delta) = self.umbilical {
            make_degenerate(DegenerateKind::Umbilical, delta)
        } else if let Some(theta) = self.moon {
            make_degenerate(DegenerateKind::SphericalMoon, theta)
        } else if self.equatorial {
            make_degenerate(DegenerateKind::Equatorial, 0.0)
        } else {
            Err(Error::BadParameter("no surface given".into()))
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    /// Heights sampled per feasible interval.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Largest accepted analytic residual.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
#[group(skip)]
#[command(group(clap::ArgGroup::new("target").required(true).multiple(false)))]
pub struct ProjectArgs {
    /// Project the conic x^2/C^2 + z^2/D^2 = 1 to a spiric curve.
    #[arg(long, num_args = 2, value_names = ["C", "D"], group = "target")]
    pub horizontal: Option<Vec<f64>>,
    #[arg(long, num_args = 2, value_names = ["MU", "C"], group = "target")]
    pub quadric: Option<Vec<f64>>,
    #[arg(long, value_name = "PHI0", group = "target")]
    pub torus: Option<f64>,
    #[arg(long, value_name = "A", group = "target")]
    pub fake_paraboloid: Option<f64>,
    #[arg(long, default_value_t = 64)]
    pub ns: usize,
    #[arg(long, default_value_t = 64)]
    pub nt: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long)]
    pub obj: Option<PathBuf>,
}

/// Result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub summary: String,
    pub files: Vec<PathBuf>,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::BadParameter(format!("--{name} must be positive")));
    }
    Ok(())
}

fn max_abs<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().map(f64::abs).fold(0.0, f64::max)
}

fn write_csv(c: &SampledCurve, path: &Path) -> Result<()> {
    write_curve_csv(c, BufWriter::new(File::create(path)?))
}

fn suffixed(path: &Path, k: usize) -> PathBuf {
    if k == 0 {
        return path.to_path_buf();
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("curve");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_{k}.{ext}"),
        None => format!("{stem}_{k}"),
    };
    path.with_file_name(name)
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let (body, summary, files) = match &cli.command {
        Command::Conic(a) => cmd_conic(a)?,
        Command::Reconstruct(a) => cmd_reconstruct(a)?,
        Command::Quadric(a) => cmd_quadric(a)?,
        Command::Classify(a) => cmd_classify(a)?,
        Command::Verify(a) => cmd_verify(a)?,
        Command::Project(a) => cmd_project(a)?,
    };
    let config = serde_json::to_value(&cli.command).unwrap_or(Value::Null);
    let mut report = json!({
        "tool": "spheriq",
        "version": VERSION,
        "command": cli.command.name(),
        "config": config,
    });
    if let (Value::Object(r), Value::Object(b)) = (&mut report, body) {
        r.extend(b);
    }
    Ok(Outcome {
        report,
        summary,
        files,
    })
}

type Parts = (Value, String, Vec<PathBuf>);

fn cmd_conic(a: &ConicArgs) -> Result<Parts> {
    check_positive("step", a.step)?;
    if a.samples < 8 {
        return Err(Error::BadParameter("--samples must be at least 8".into()));
    }
    let conic = a.cylinder.conic()?;
    let rep = conic_report(&conic)?;
    let class = classify(&conic)?;

    let components: Vec<Vec<UnitPoint2>> = if class.is_degenerate() {
        let mut comps = Vec::new();
        for br in [Branch::Plus, Branch::Minus] {
            let pts: Vec<_> = (0..a.samples)
                .filter_map(|k| {
                    param(
                        &conic,
                        2.0 * std::f64::consts::PI * k as f64 / a.samples as f64,
                        br,
                    )
                    .ok()
                })
                .collect();
            comps.push(pts);
        }
        comps
    } else {
        conic_loops(&conic)?
            .iter()
            .map(|l| {
                (0..a.samples)
                    .map(|k| {
                        l.point(
                            -std::f64::consts::PI
                                + 2.0 * std::f64::consts::PI * k as f64 / a.samples as f64,
                        )
                    })
                    .collect()
            })
            .collect()
    };
    let all = components.iter().flatten();
    let cylinder_max = max_abs(all.clone().map(|p| conic.cylinder_residual(*p)));
    let (locus_max, canonical_max) = if class.is_degenerate() {
        (None, None)
    } else {
        let f = focal_params(&conic)?;
        (
            Some(max_abs(all.clone().map(|p| locus_residual(*p, &f)))),
            Some(max_abs(all.map(|p| canonical_residual(p.to_geo(), &f)))),
        )
    };

    let mut files = Vec::new();
    if let Some(path) = &a.csv {
        let mut pts = components[0].clone();
        if !class.is_degenerate() {
            pts.push(pts[0]);
        }
        let curve = resample_by_arclength(&pts, a.step)?;
        write_csv(&curve, path)?;
        files.push(path.clone());
    }
    let body = json!({
        "class": rep.class,
        "d": rep.d,
        "e": rep.e,
        "mu": rep.mu,
        "c": rep.c,
        "cylinder_residual_max": cylinder_max,
        "locus_residual_max": locus_max,
        "canonical_residual_max": canonical_max,
        "samples": 2 * a.samples,
    });
    let summary = match (rep.mu, rep.c) {
        (Some(mu), Some(c)) => format!("{:?}: mu = {mu}, c = {c}", rep.class),
        _ => format!("{:?}", rep.class),
    };
    Ok((body, summary, files))
}

fn cmd_reconstruct(a: &ReconstructArgs) -> Result<Parts> {
    check_positive("step", a.step)?;
    if !(0.0..0.5).contains(&a.margin) {
        return Err(Error::BadParameter("--margin must lie in [0, 0.5)".into()));
    }
    let p = a.profile.profile()?;
    let intervals = feasible_intervals(&p, DEFAULT_GRID)?;
    let mut curves = Vec::new();
    let mut files = Vec::new();
    for (k, iv) in intervals.iter().enumerate() {
        let opts = ReconstructOptions {
            branches: a.branches,
            ..ReconstructOptions::new(a.step)
        };
        let curve = reconstruct_with(&p, iv, &opts)?;
        let pad = a.margin * (iv.z_hi - iv.z_lo);
        let (lo, hi) = (iv.z_lo + pad, iv.z_hi - pad);
        let check = validate_reconstruction_where(&curve, &p, |z| z >= lo && z <= hi)?;
        if let Some(path) = &a.csv {
            let path = suffixed(path, k);
            write_csv(&curve, &path)?;
            files.push(path);
        }
        curves.push(json!({
            "interval": iv,
            "samples": curve.len(),
            "length": curve.s.last().copied().unwrap_or(0.0),
            "max_momentum_deviation": check.max_momentum_deviation,
            "max_curvature_deviation": check.max_curvature_deviation,
            "validated_samples": check.samples,
        }));
    }
    let worst = curves
        .iter()
        .map(|c| c["max_momentum_deviation"].as_f64().unwrap_or(f64::NAN))
        .fold(0.0, f64::max);
    let summary = format!(
        "{} curve(s), max momentum deviation {worst:e}",
        curves.len()
    );
    Ok((json!({ "profile": p, "curves": curves }), summary, files))
}

fn cmd_quadric(a: &QuadricArgs) -> Result<Parts> {
    let mut spec = make_quadric(MomentumCoeffs::new(a.quadric[0], a.quadric[1]))?;
    if a.swap {
        spec = spec.swapped()?;
    }
    let surf = quadric_surface(&spec, a.branch)?;
    let mesh = mesh_from_surface(&surf, a.ns, a.nt, a.project)?;
    let mut files = Vec::new();
    if let Some(path) = &a.obj {
        write_obj(&mesh, path)?;
        files.push(path.clone());
    }
    let implicit_max = max_abs(
        mesh.sources
            .iter()
            .map(|q| crate::surfaces::implicit_residual(&surf, *q))
            .collect::<Result<Vec<_>>>()?,
    );
    let body = json!({
        "spec": spec,
        "surface": surf.descriptor(),
        "vertices": mesh.vertices.len(),
        "faces": mesh.faces.len(),
        "culled": mesh.culled,
        "implicit_residual_max": implicit_max,
    });
    let summary = format!(
        "{:?}: {} vertices, {} faces",
        spec.family,
        mesh.vertices.len(),
        mesh.faces.len()
    );
    Ok((body, summary, files))
}

fn cmd_classify(a: &SurfaceArgs) -> Result<Parts> {
    let surf = a.surface()?;
    let c = classify_theorem_main(&surf)?;
    let rep = WeingartenReport::from_classification(&c);
    let implicit = match c {
        Classification::Cubic { implicit_max, .. } => Some(implicit_max),
        Classification::NotCubic { .. } => None,
    };
    let mut body = serde_json::to_value(&rep).unwrap_or(Value::Null);
    if let Value::Object(m) = &mut body {
        m.insert("implicit_residual_max".into(), json!(implicit));
    }
    Ok((body, format!("case = {}", rep.case), Vec::new()))
}

fn sweep_heights(p: &MomentumProfile, n: usize) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for iv in feasible_intervals(p, DEFAULT_GRID)? {
        for k in 1..=n {
            let z = iv.z_lo + (iv.z_hi - iv.z_lo) * k as f64 / (n + 1) as f64;
            if z.abs() > 1e-6 {
                out.push(z);
            }
        }
    }
    Ok(out)
}

fn cmd_verify(a: &VerifyArgs) -> Result<Parts> {
    check_positive("tol", a.tol)?;
    if a.samples == 0 {
        return Err(Error::BadParameter("--samples must be positive".into()));
    }
    let p = a.profile.profile()?;
    let heights = sweep_heights(&p, a.samples)?;
    let (relation, mu, analytic, numeric) = match p {
        MomentumProfile::SpheroCylindrical { a: sa } => {
            let analytic = max_abs(
                heights
                    .iter()
                    .map(|&z| sextic_residual(sa, z))
                    .collect::<Result<Vec<_>>>()?,
            );
            let surf = make_fake_paraboloid(sa)?;
            let numeric = numeric_sweep(&surf, |pc| sextic_relation(sa, pc))?;
            ("sextic", None, analytic, numeric)
        }
        _ => {
            let (mu, surf) = match p {
                MomentumProfile::Constant { k } => (0.0, constant_surface(k)?),
                MomentumProfile::Linear { k0 } => (1.0 / (k0 * k0), linear_surface(k0)?),
                MomentumProfile::Quadric { mu, c, .. } => {
                    let spec = make_quadric(MomentumCoeffs::new(mu, c))?;
                    (mu, quadric_surface(&spec, 1.0)?)
                }
                MomentumProfile::SpheroCylindrical { .. } => unreachable!(),
            };
            let analytic = max_abs(
                heights
                    .iter()
                    .map(|&z| cubic_residual(&p, mu, z))
                    .collect::<Result<Vec<_>>>()?,
            );
            let numeric = numeric_sweep(&surf, |pc| pc.km - mu * pc.kp.powi(3))?;
            ("cubic", Some(mu), analytic, numeric)
        }
    };
    let pass = analytic < a.tol;
    let body = json!({
        "relation": relation,
        "mu": mu,
        "heights": heights.len(),
        "analytic_residual_max": analytic,
        "numeric_residual_max": numeric,
        "tol": a.tol,
        "pass": pass,
    });
    let summary = format!("{relation} residual max {analytic:e} (numeric {numeric:e})");
    if !pass {
        return Err(Error::QuadratureFailure(format!(
            "{relation} residual {analytic:e} exceeds tolerance {:e}",
            a.tol
        )));
    }
    Ok((body, summary, Vec::new()))
}

/// Moon (or equatorial sphere) with `K ≡ k`.
fn constant_surface(k: f64) -> Result<RotationalSurface> {
    if k == 0.0 {
        return make_degenerate(DegenerateKind::Equatorial, 0.0);
    }
    make_degenerate(DegenerateKind::SphericalMoon, (-k).acos())
}

/// Umbilical sphere with `K = k₀ z`, up to the reflection `x₂ → −x₂`.
fn linear_surface(k0: f64) -> Result<RotationalSurface> {
    make_degenerate(DegenerateKind::Umbilical, (-k0).asinh().abs())
}

fn numeric_sweep<F: Fn(crate::surfaces::PrincipalCurvatures) -> f64>(
    surf: &RotationalSurface,
    relation: F,
) -> Result<f64> {
    let (lo, hi) = surf.profile.domain();
    let mut worst: f64 = 0.0;
    for k in 1..200 {
        let s = lo + (hi - lo) * k as f64 / 200.0;
        match principal_curvatures_numeric(surf, s) {
            Ok(pc) => worst = worst.max(relation(pc).abs()),
            Err(Error::ZeroLatitude) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(worst)
}

fn cmd_project(a: &ProjectArgs) -> Result<Parts> {
    if let Some(h) = &a.horizontal {
        let conic = CylinderConic::horizontal(h[0], h[1])?;
        let k = spiric_coeffs(&conic)?;
        let mut res: f64 = 0.0;
        let mut used = 0;
        for l in conic_loops(&conic)? {
            for i in 0..a.samples {
                let psi = -std::f64::consts::PI
                    + 2.0 * std::f64::consts::PI * i as f64 / a.samples as f64;
                if let Ok(v) = stereo_s2(l.point(psi)) {
                    res = res.max(spiric_residual(&k, v).abs());
                    used += 1;
                }
            }
        }
        let body = json!({ "spiric": k, "points": used, "spiric_residual_max": res });
        return Ok((body, format!("spiric a = {}, b = {}", k.a, k.b), Vec::new()));
    }
    let (surf, cyclide) = if let Some(q) = &a.quadric {
        let spec = make_quadric(MomentumCoeffs::new(q[0], q[1]))?;
        (quadric_surface(&spec, 1.0)?, cyclide_coeffs(&spec).ok())
    } else if let Some(phi0) = a.torus {
        (make_degenerate(DegenerateKind::StandardTorus, phi0)?, None)
    } else if let Some(fa) = a.fake_paraboloid {
        (make_fake_paraboloid(fa)?, None)
    } else {
        return Err(Error::BadParameter("nothing to project".into()));
    };
    let mesh = mesh_from_surface(&surf, a.ns, a.nt, true)?;
    let mut files = Vec::new();
    if let Some(path) = &a.obj {
        write_obj(&mesh, path)?;
        files.push(path.clone());
    }
    let res = cyclide.map(|k| max_abs(mesh.vertices.iter().map(|v| cyclide_residual(&k, *v))));
    let body = json!({
        "family": surf.family,
        "cyclide": cyclide,
        "vertices": mesh.vertices.len(),
        "faces": mesh.faces.len(),
        "culled": mesh.culled,
        "euler_characteristic": mesh.euler_characteristic(),
        "cyclide_residual_max": res,
    });
    let summary = format!(
        "{} vertices, {} faces",
        mesh.vertices.len(),
        mesh.faces.len()
    );
    Ok((body, summary, files))
}

/// Parses `args`, runs the command and delivers the report. Returns the
/// process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.report).unwrap_or_default();
            if cli.json {
                println!("{text}");
            } else {
                let path = cli.report.clone().unwrap_or_else(|| {
                    PathBuf::from(format!("{}-report.json", cli.command.name()))
                });
                if let Err(e) = std::fs::write(&path, text + "\n") {
                    eprintln!("error: {e}");
                    return 3;
                }
                println!("{}", out.summary);
                for f in out.files.iter().chain(std::iter::once(&path)) {
                    println!("wrote {}", f.display());
                }
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(args: &[&str]) -> Result<Value> {
        let cli =
            Cli::try_parse_from(std::iter::once("spheriq").chain(args.iter().copied())).unwrap();
        run(&cli).map(|o| o.report)
    }

    #[test]
    fn conic_reports() {
        let r = report(&["conic", "--horizontal", "2", "0.5"]).unwrap();
        assert_eq!(r["class"], "TypeI");
        assert!((r["mu"].as_f64().unwrap() + 1.0 / 12.0).abs() < 1e-12);
        assert!((r["c"].as_f64().unwrap() - 5.0 / 3.0).abs() < 1e-12);
        assert!(r["locus_residual_max"].as_f64().unwrap() < 1e-9);
        assert_eq!(r["version"], VERSION);
        assert_eq!(
            r["config"]["conic"]["cylinder"]["horizontal"],
            json!([2.0, 0.5])
        );

        let r = report(&["conic", "--vertical", "0.6", "0.6"]).unwrap();
        assert_eq!(r["class"], "DegenerateParallel");
        let e = report(&["conic", "--vertical", "1.2", "1.3"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn reconstruct_reports() {
        let r = report(&["reconstruct", "--constant", "-0.5"]).unwrap();
        assert!(r["curves"][0]["max_momentum_deviation"].as_f64().unwrap() < 1e-5);
        let r = report(&["reconstruct", "--quadric", "-1.5", "5", "--step", "0.005"]).unwrap();
        assert_eq!(r["curves"].as_array().unwrap().len(), 2);
        assert_eq!(
            report(&["reconstruct", "--quadric", "0", "0"])
                .unwrap_err()
                .exit_code(),
            2
        );
    }

    #[test]
    fn surface_commands() {
        let r = report(&["classify", "--quadric", "1", "-1"]).unwrap();
        assert_eq!(r["case"], "QuadricIII");
        let r = report(&["verify", "--fake-paraboloid", "1"]).unwrap();
        assert!(r["analytic_residual_max"].as_f64().unwrap() < 1e-10);
        let r = report(&["verify", "--linear", "-1.1752011936438014"]).unwrap();
        assert!(r["numeric_residual_max"].as_f64().unwrap() < 1e-4);
        let r = report(&[
            "project",
            "--quadric",
            "-1.5",
            "5",
            "--ns",
            "16",
            "--nt",
            "16",
        ])
        .unwrap();
        assert_eq!(r["cyclide"]["L"].as_f64().unwrap(), 2.0 * 3.0 * 1.6);
        assert!(r["cyclide_residual_max"].as_f64().unwrap() < 1e-8);
        let r = report(&["project", "--horizontal", "2", "0.5"]).unwrap();
        assert_eq!(r["spiric"]["a"], 1.5);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = report(&[
            "quadric",
            "--quadric",
            "0.5",
            "0.5",
            "--ns",
            "12",
            "--nt",
            "12",
        ])
        .unwrap();
        let b = report(&[
            "quadric",
            "--quadric",
            "0.5",
            "0.5",
            "--ns",
            "12",
            "--nt",
            "12",
        ])
        .unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn bad_flags_fail_validation() {
        assert!(Cli::try_parse_from(["spheriq", "conic"]).is_err());
        assert!(Cli::try_parse_from([
            "spheriq",
            "conic",
            "--horizontal",
            "2",
            "0.5",
            "--vertical",
            "1",
            "2"
        ])
        .is_err());
        assert_eq!(
            report(&["conic", "--horizontal", "2", "0.5", "--step", "0"])
                .unwrap_err()
                .exit_code(),
            2
        );
    }
}
