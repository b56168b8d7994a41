//! Subcommand dispatch. Scene lookups that fail are usage errors (exit 2);
//! failures inside a computation end up in the certificate (exit 1).

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use poncelet_core::closure::{
    check_member, darboux_complete, incidence_count_on_d, porism_pencil, split_gamma, trace_gon,
    ClosureReport, PonceletFlag,
};
use poncelet_core::forms::BinaryForm;
use poncelet_core::numeric::{Backend, Exact, Float, Scalar, Tolerance, CERTIFY_TOL};
use poncelet_core::projective::{CanonicalFrame, Conic, P1Point, ProjPoint};
use poncelet_core::schwarzenberger::{
    build_matrix, determinant_curve, evaluate_section_fiber, section_vanishes_at, zero_locus, Gon,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::certificate::Certificate;
use crate::render::{render, Figure};
use crate::scene::{coords_json, curve_json, form_json, peek_backend, JsonScalar, Object, Scene};

/// Member vertices must satisfy the curve to this relative residual.
pub const MEMBER_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(
    name = "poncelet",
    version,
    about = "Poncelet and Darboux closure on plane conics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Override the backend tag of the scene.
    #[arg(long, global = true)]
    pub backend: Option<Backend>,
    /// Relative tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for sampled pencil members.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the certificate here (for render-svg: the SVG file).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the banded matrix of linear forms for degree n.
    Matrix { n: usize },
    /// Complete gon of a tangency form.
    ZeroLocus {
        scene: PathBuf,
        #[arg(long, default_value = "f")]
        form: String,
        /// Also report vertices in the world frame of this conic.
        #[arg(long)]
        inner: Option<String>,
    },
    /// Determinant curve of a pencil of sections.
    DetCurve {
        scene: PathBuf,
        #[arg(long, default_value = "f")]
        form: String,
        #[arg(long, default_value = "g")]
        with: String,
        #[arg(long)]
        inner: Option<String>,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Complete one gon to a pencil whose vertices stay on a curve.
    Darboux {
        scene: PathBuf,
        #[arg(long, default_value = "C")]
        inner: String,
        #[arg(long, default_value = "S")]
        curve: String,
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Run the tangent-chord iteration.
    Trace {
        scene: PathBuf,
        #[arg(long, default_value = "C")]
        inner: String,
        #[arg(long, default_value = "D")]
        outer: String,
        #[arg(long, default_value = "p")]
        start: String,
        #[arg(short, long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        branch: usize,
    },
    /// Certify a porism through the solution space of sections.
    PorismPencil {
        scene: PathBuf,
        #[arg(long, default_value = "C")]
        inner: String,
        #[arg(long, default_value = "D")]
        outer: String,
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Count how the vertices of a gon sit on the outer conic.
    Incidence {
        scene: PathBuf,
        #[arg(long, default_value = "C")]
        inner: String,
        #[arg(long, default_value = "D")]
        outer: String,
        #[command(flatten)]
        source: Source,
    },
    /// Draw the real slice of a scene.
    RenderSvg {
        scene: PathBuf,
        #[arg(long)]
        inner: Option<String>,
        #[arg(long, default_value = "D")]
        outer: String,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        grid: Option<usize>,
    },
}

/// Where the gon comes from: a form in the canonical frame of the inner
/// conic, named tangent lines, or a traced start point.
#[derive(Clone, Debug, Args)]
pub struct Source {
    #[arg(long)]
    pub form: Option<String>,
    #[arg(long)]
    pub gon: Option<String>,
    #[arg(long)]
    pub start: Option<String>,
    #[arg(short, long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub branch: usize,
}

impl Source {
    fn is_empty(&self) -> bool {
        self.form.is_none() && self.gon.is_none() && self.start.is_none()
    }
}

/// What the process prints and returns.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn usage(e: anyhow::Error) -> Self {
        Outcome {
            stderr: format!("error: {e:#}\n"),
            code: 2,
            ..Outcome::default()
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => Outcome::usage(e),
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<Outcome> {
    if let Command::Matrix { n } = &cli.command {
        let m = build_matrix(*n)?;
        return Ok(Outcome {
            stdout: m.to_string(),
            ..Outcome::default()
        });
    }
    let path = scene_path(&cli.command);
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let backend = match cli.backend {
        Some(b) => b,
        None => peek_backend(&text).with_context(|| path.display().to_string())?,
    };
    match backend {
        Backend::Exact => run_with::<Exact>(cli, &text, path, backend),
        Backend::Float => run_with::<Float>(cli, &text, path, backend),
    }
}

fn scene_path(c: &Command) -> &PathBuf {
    match c {
        Command::Matrix { .. } => unreachable!("no scene"),
        Command::ZeroLocus { scene, .. }
        | Command::DetCurve { scene, .. }
        | Command::Darboux { scene, .. }
        | Command::Trace { scene, .. }
        | Command::PorismPencil { scene, .. }
        | Command::Incidence { scene, .. }
        | Command::RenderSvg { scene, .. } => scene,
    }
}

struct Ctx<S: Scalar> {
    scene: Scene<S>,
    tol: Tolerance,
    backend: Backend,
    seed: u64,
}

impl<S: Scalar> Ctx<S> {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn cert(&self, op: &str) -> Certificate {
        let mut c = Certificate::new(op, self.backend);
        c.input("seed", self.seed).input("tol", self.tol.rel);
        c
    }

    // incidence and closure tolerance
    fn certify_tol(&self) -> Tolerance {
        if S::is_exact() {
            self.tol
        } else {
            self.tol
                .with_rel(self.tol.rel.max(CERTIFY_TOL))
                .expect("valid")
        }
    }
}

fn run_with<S: JsonScalar>(
    cli: &Cli,
    text: &str,
    path: &std::path::Path,
    backend: Backend,
) -> anyhow::Result<Outcome> {
    let scene = Scene::<S>::parse(text).with_context(|| path.display().to_string())?;
    let mut tol = scene.tolerance;
    if let Some(t) = cli.tol {
        tol = tol.with_rel(t)?;
    }
    let ctx = Ctx {
        scene,
        tol,
        backend,
        seed: cli.seed,
    };
    let cert = match &cli.command {
        Command::Matrix { .. } => unreachable!("handled above"),
        Command::ZeroLocus { form, inner, .. } => zero_locus_cmd(&ctx, form, inner.as_deref())?,
        Command::DetCurve {
            form,
            with,
            inner,
            samples,
            ..
        } => det_curve_cmd(&ctx, form, with, inner.as_deref(), *samples)?,
        Command::Darboux {
            inner,
            curve,
            source,
            samples,
            ..
        } => darboux_cmd(&ctx, inner, curve, source, *samples)?,
        Command::Trace {
            inner,
            outer,
            start,
            n,
            branch,
            ..
        } => trace_cmd(&ctx, inner, outer, start, *n, *branch)?,
        Command::PorismPencil {
            inner,
            outer,
            source,
            samples,
            ..
        } => porism_cmd(&ctx, inner, outer, source, *samples)?,
        Command::Incidence {
            inner,
            outer,
            source,
            ..
        } => incidence_cmd(&ctx, inner, outer, source)?,
        Command::RenderSvg {
            inner,
            outer,
            source,
            grid,
            ..
        } => {
            let (cert, svg) = render_cmd(&ctx, inner.as_deref(), outer, source, *grid)?;
            let code = if cert.passed() { 0 } else { 1 };
            return Ok(match &cli.out {
                Some(p) => {
                    std::fs::write(p, svg).with_context(|| format!("writing {}", p.display()))?;
                    Outcome {
                        stdout: cert.to_text(),
                        code,
                        ..Outcome::default()
                    }
                }
                None => Outcome {
                    stdout: svg,
                    stderr: cert.to_text(),
                    code,
                },
            });
        }
    };
    let text = cert.to_text();
    if let Some(p) = &cli.out {
        std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(Outcome {
        code: if cert.passed() { 0 } else { 1 },
        stdout: text,
        stderr: String::new(),
    })
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn p1_json<S: JsonScalar>(t: &P1Point<S>) -> Value {
    coords_json(t.coords())
}

fn random_p1(rng: &mut ChaCha8Rng, complex: bool) -> P1Point<Float> {
    loop {
        let mut z = || {
            let im = if complex {
                rng.gen_range(-1.0..1.0)
            } else {
                0.0
            };
            Float::new(rng.gen_range(-1.0..1.0), im)
        };
        if let Ok(t) = P1Point::new(z(), z()) {
            return t;
        }
    }
}

fn gon_json<S: JsonScalar>(gon: &Gon<S>) -> Value {
    let vertices: Vec<Value> = gon
        .vertices()
        .iter()
        .map(|v| json!({ "lines": [v.lines.0, v.lines.1], "point": coords_json(v.point.coords()) }))
        .collect();
    json!({
        "lines": gon.lines().iter().map(|l| coords_json(l.coords())).collect::<Vec<_>>(),
        "vertices": vertices,
    })
}

/// Largest fiber value at a point, relative to `|f| |x|^(n−1)`.
fn fiber_residual<S: Scalar>(f: &BinaryForm<S>, x: &ProjPoint<S>) -> poncelet_core::Result<f64> {
    let r = evaluate_section_fiber(f, x)?;
    let xs = x.coords().iter().map(Scalar::modulus).fold(0.0, f64::max);
    let scale =
        f.coeffs().iter().map(Scalar::modulus).fold(0.0, f64::max) * xs.powi(f.degree() as i32 - 1);
    Ok(r[0].modulus().max(r[1].modulus()) / scale)
}

/// The gon's tangency form in the canonical frame of `c`.
fn resolve_form<S: JsonScalar>(
    ctx: &Ctx<S>,
    cert: &mut Certificate,
    c: &Conic<S>,
    outer: Option<&Conic<S>>,
    source: &Source,
) -> anyhow::Result<Option<BinaryForm<S>>> {
    if let Some(name) = &source.form {
        cert.input("form", name.as_str());
        return Ok(Some(ctx.scene.form(name)?.clone()));
    }
    let frame = || CanonicalFrame::new(c, None, &ctx.tol);
    if let Some(name) = &source.gon {
        cert.input("gon", name.as_str());
        let lines = ctx.scene.gon(name)?;
        return Ok(
            match frame().and_then(|fr| fr.tangency_form(&lines, &ctx.tol)) {
                Ok(f) => Some(f),
                Err(e) => {
                    cert.fail(e);
                    None
                }
            },
        );
    }
    if let Some(name) = &source.start {
        if S::is_exact() {
            bail!("tracing from --start needs the float backend (pass --backend float)");
        }
        let n = source.n.context("--start needs -n")?;
        cert.input("start", name.as_str()).input("n", n);
        let d = outer.context("--start needs an outer conic")?;
        let p = ctx.scene.point(name)?;
        let report = trace(ctx, c, d, p, n, source.branch);
        return Ok(match report {
            Ok(r) => {
                cert.float_evidence("trace_residual", r.residual);
                let f = r.side_form();
                Some(to_scalar(&f))
            }
            Err(e) => {
                cert.fail(e);
                None
            }
        });
    }
    bail!("give the gon with --form, --gon or --start")
}

fn to_scalar<S: Scalar>(f: &BinaryForm<Float>) -> BinaryForm<S> {
    BinaryForm::new(f.coeffs().iter().map(|z| S::from_c64(*z)).collect()).expect("nonempty")
}

fn trace<S: Scalar>(
    ctx: &Ctx<S>,
    c: &Conic<S>,
    d: &Conic<S>,
    p: &ProjPoint<S>,
    n: usize,
    branch: usize,
) -> poncelet_core::Result<ClosureReport> {
    let tol = ctx.tol;
    let flag = PonceletFlag::from_point(&c.to_float(), &d.to_float(), p.to_float(), branch, &tol)?;
    trace_gon(&flag, n, &tol)
}

fn zero_locus_cmd<S: JsonScalar>(
    ctx: &Ctx<S>,
    form: &str,
    inner: Option<&str>,
) -> anyhow::Result<Certificate> {
    let mut cert = ctx.cert("zero-locus");
    cert.input("form", form);
    let f = ctx.scene.form(form)?;
    let c = match inner {
        Some(name) => {
            cert.input("inner", name);
            Some(ctx.scene.conic(name)?)
        }
        None => None,
    };
    let n = f.degree();
    let body = |cert: &mut Certificate| -> poncelet_core::Result<()> {
        let gon = zero_locus(f, &ctx.tol)?;
        cert.evidence("n", n)
            .evidence("vertex_count", gon.vertices().len())
            .evidence(
                "roots",
                gon.params().iter().map(p1_json).collect::<Vec<_>>(),
            )
            .evidence("canonical", gon_json(&gon));
        cert.check("vertex_count", gon.vertices().len() == binom2(n));
        let mut all = true;
        let mut worst = 0.0f64;
        for v in gon.vertices() {
            all &= section_vanishes_at(f, &v.point, &ctx.tol)?;
            worst = worst.max(fiber_residual(f, &v.point)?);
        }
        cert.check("vanishing", all);
        if S::is_exact() {
            cert.check("fiber_zero", worst == 0.0);
        } else {
            cert.residual("fiber", worst, ctx.tol.rel);
        }
        if let Some(c) = c {
            let frame = CanonicalFrame::new(c, None, &ctx.tol)?;
            cert.evidence("world", gon_json(&gon.to_world(&frame)));
        }
        Ok(())
    };
    if let Err(e) = body(&mut cert) {
        cert.fail(e);
    }
    Ok(cert)
}

// worst relative residual of `curve` at the vertices of sampled members
fn sample_members(
    rng: &mut ChaCha8Rng,
    f: &BinaryForm<Float>,
    g: &BinaryForm<Float>,
    curve: &poncelet_core::forms::PlaneCurve<Float>,
    samples: usize,
    tol: &Tolerance,
) -> poncelet_core::Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let t = random_p1(rng, true);
        let member = BinaryForm::combine(t.u(), f, t.v(), g)?;
        for v in zero_locus(&member, tol)?.vertices() {
            worst = worst.max(curve.residual(&v.point));
        }
    }
    Ok(worst)
}

fn det_curve_cmd<S: JsonScalar>(
    ctx: &Ctx<S>,
    form: &str,
    with: &str,
    inner: Option<&str>,
    samples: usize,
) -> anyhow::Result<Certificate> {
    let mut cert = ctx.cert("det-curve");
    cert.input("form", form)
        .input("with", with)
        .input("samples", samples);
    let (f, g) = (ctx.scene.form(form)?, ctx.scene.form(with)?);
    let c = inner.map(|n| ctx.scene.conic(n)).transpose()?;
    if let Some(n) = inner {
        cert.input("inner", n);
    }
    let body = |cert: &mut Certificate| -> poncelet_core::Result<()> {
        let curve = determinant_curve(f, g, &ctx.tol)?;
        let n = f.degree();
        cert.check("x0_division", true);
        cert.check("degree", curve.degree() as usize + 1 == n);
        cert.evidence("degree", curve.degree())
            .evidence("curve", curve_json(curve.form()));
        for (name, h) in [("form", f), ("with", g)] {
            match zero_locus(h, &ctx.tol) {
                Ok(gon) => {
                    let ok = gon
                        .vertices()
                        .iter()
                        .all(|v| curve.contains(&v.point, &ctx.tol));
                    cert.check(&format!("vertices_of_{name}"), ok);
                }
                Err(poncelet_core::Error::Irrational(_)) => {
                    cert.warn(format!(
                        "{name}: roots are not rational, vertex check left to the sampled members"
                    ));
                }
                Err(e) => return Err(e),
            }
        }
        let worst = sample_members(
            &mut ctx.rng(),
            &f.to_float(),
            &g.to_float(),
            &curve.to_float(),
            samples,
            &ctx.tol,
        )?;
        cert.residual("members_on_curve", worst, MEMBER_TOL);
        if let Some(c) = c {
            let frame = CanonicalFrame::new(c, None, &ctx.tol)?;
            cert.evidence(
                "world_curve",
                curve_json(&frame.form_to_world(curve.form())),
            );
        }
        Ok(())
    };
    if let Err(e) = body(&mut cert) {
        cert.fail(e);
    }
    Ok(cert)
}

fn darboux_cmd<S: JsonScalar>(
    ctx: &Ctx<S>,
    inner: &str,
    curve: &str,
    source: &Source,
    samples: usize,
) -> anyhow::Result<Certificate> {
    let mut cert = ctx.cert("darboux");
    cert.input("inner", inner)
        .input("curve", curve)
        .input("samples", samples);
    let c = ctx.scene.conic(inner)?;
    let s = ctx.scene.curve(curve)?;
    let Some(f) = resolve_form(ctx, &mut cert, c, None, source)? else {
        return Ok(cert);
    };
    let body = |cert: &mut Certificate| -> poncelet_core::Result<()> {
        let dc = darboux_complete(c, s, &f, &ctx.tol)?;
        cert.evidence("t", form_json(&dc.t));
        if S::is_exact() {
            cert.check("vertices_on_curve", dc.max_vertex_residual == 0.0);
        } else {
            cert.residual("vertices_on_curve", dc.max_vertex_residual, ctx.tol.rel);
        }
        let worst = sample_members(
            &mut ctx.rng(),
            &dc.pencil.f().to_float(),
            &dc.pencil.g().to_float(),
            &dc.curve_canonical.to_float(),
            samples,
            &ctx.tol,
        )?;
        cert.residual("members_on_curve", worst, MEMBER_TOL);
        Ok(())
    };
    if let Err(e) = body(&mut cert) {
        cert.fail(e);
    }
    Ok(cert)
}

fn trace_cmd<S: JsonScalar>(
    ctx: &Ctx<S>,
    inner: &str,
    outer: &str,
    start: &str,
    n: usize,
    branch: usize,
) -> anyhow::Result<Certificate> {
    let mut cert = ctx.cert("trace");
    cert.input("inner", inner)
        .input("outer", outer)
        .input("start", start)
        .input("n", n)
        .input("branch", branch);
    let (c, d, p) = (
        ctx.scene.conic(inner)?,
        ctx.scene.conic(outer)?,
        ctx.scene.point(start)?,
    );
    match trace(ctx, c, d, p, n, branch) {
        Ok(r) => {
            cert.evidence("closed", r.closed);
            cert.float_evidence("params", r.params.iter().map(p1_json).collect::<Vec<_>>());
            cert.float_evidence(
                "points",
                r.points
                    .iter()
                    .map(|p| coords_json(p.coords()))
                    .collect::<Vec<_>>(),
            );
            cert.residual("closure", r.residual, CERTIFY_TOL);
        }
        Err(e) => cert.fail(e),
    }
    Ok(cert)
}

fn porism_cmd<S: JsonScalar>(
    ctx: &Ctx<S>,
    inner: &str,
    outer: &str,
    source: &Source,
    samples: usize,
) -> anyhow::Result<Certificate> {
    let mut cert = ctx.cert("porism-pencil");
    cert.input("inner", inner)
        .input("outer", outer)
        .input("samples", samples);
    let (c, d) = (ctx.scene.conic(inner)?, ctx.scene.conic(outer)?);
    let Some(f) = resolve_form(ctx, &mut cert, c, Some(d), source)? else {
        return Ok(cert);
    };
    let n = f.degree();
    let body = |cert: &mut Certificate| -> poncelet_core::Result<()> {
        let pp = match porism_pencil(c, d, &f, &ctx.tol) {
            Ok(pp) => pp,
            Err(poncelet_core::Error::PorismCertificateFailed { dimension }) => {
                cert.evidence("nullity", dimension);
                cert.check("nullity", false);
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        cert.evidence("nullity", pp.nullity)
            .evidence("g", form_json(pp.pencil.g()));
        cert.check("nullity", pp.nullity == 2);
        let split = split_gamma(&pp, &ctx.tol)?;
        cert.check("gamma_split", true);
        cert.evidence("gamma1", curve_json(split.gamma1.form()));
        cert.check("gamma1_degree", split.gamma1.degree() as usize + 3 == n);
        let gon = zero_locus(pp.pencil.f(), &ctx.tol)?;
        let inc = incidence_count_on_d(&gon, &pp.outer_canonical, &ctx.certify_tol())?;
        cert.evidence("vertices_on_d", inc.vertices_on_d.len());
        cert.check("incidence", inc.passed);

        // members are re-traced by the float iteration
        let ppf = porism_pencil(&c.to_float(), &d.to_float(), &f.to_float(), &ctx.tol)?;
        let mut rng = ctx.rng();
        let cert_tol = Tolerance::default().with_rel(CERTIFY_TOL)?;
        let (mut passed, mut worst_res, mut worst_param) = (0, 0.0f64, 0.0f64);
        for _ in 0..samples {
            let t = random_p1(&mut rng, false);
            let member = ppf.pencil.member(t.u(), t.v());
            match check_member(&ppf, &member, &ctx.tol, &cert_tol) {
                Ok(m) => {
                    passed += usize::from(m.passed);
                    worst_res = worst_res.max(m.closure_residual);
                    worst_param = worst_param.max(m.param_distance);
                }
                Err(e) => cert.warn(format!("member ({}:{}): {e}", t.u(), t.v())),
            }
        }
        cert.evidence("members_passed", passed);
        cert.check("members", passed == samples);
        cert.residual("member_closure", worst_res, CERTIFY_TOL);
        cert.residual("member_params", worst_param, CERTIFY_TOL);
        Ok(())
    };
    if let Err(e) = body(&mut cert) {
        cert.fail(e);
    }
    Ok(cert)
}

fn incidence_cmd<S: JsonScalar>(
    ctx: &Ctx<S>,
    inner: &str,
    outer: &str,
    source: &Source,
) -> anyhow::Result<Certificate> {
    let mut cert = ctx.cert("incidence");
    cert.input("inner", inner).input("outer", outer);
    let (c, d) = (ctx.scene.conic(inner)?, ctx.scene.conic(outer)?);
    let Some(f) = resolve_form(ctx, &mut cert, c, Some(d), source)? else {
        return Ok(cert);
    };
    let body = |cert: &mut Certificate| -> poncelet_core::Result<()> {
        let frame = CanonicalFrame::new(c, None, &ctx.tol)?;
        let gon = zero_locus(&f, &ctx.tol)?;
        let inc = incidence_count_on_d(&gon, &frame.to_canonical(d), &ctx.certify_tol())?;
        let lines: Vec<Value> = inc
            .lines
            .iter()
            .map(|l| json!({ "line": l.line, "vertices_on_d": l.vertices_on_d, "matched": l.matched, "passed": l.passed }))
            .collect();
        cert.evidence("n", inc.n)
            .evidence("vertices_on_d", inc.vertices_on_d.clone())
            .evidence("lines", lines);
        if !inc.failures.is_empty() {
            cert.evidence("failures", inc.failures.clone());
        }
        cert.check("incidence", inc.passed);
        Ok(())
    };
    if let Err(e) = body(&mut cert) {
        cert.fail(e);
    }
    Ok(cert)
}

fn render_cmd<S: JsonScalar>(
    ctx: &Ctx<S>,
    inner: Option<&str>,
    outer: &str,
    source: &Source,
    grid: Option<usize>,
) -> anyhow::Result<(Certificate, String)> {
    let mut cert = ctx.cert("render-svg");
    let mut fig = Figure {
        view: ctx.scene.view,
        grid,
        ..Figure::default()
    };
    for (name, o) in &ctx.scene.objects {
        match o {
            Object::Conic(c) => fig.conics.push((name.clone(), c.to_float().to_form())),
            Object::Curve(c) => fig.curves.push((name.clone(), c.form().to_float())),
            Object::Point(p) => fig.points.push((name.clone(), p.to_float())),
            _ => {}
        }
    }
    let mut expected = (0, 0);
    if let Some(inner) = inner.filter(|_| !source.is_empty()) {
        cert.input("inner", inner);
        let c = ctx.scene.conic(inner)?;
        if let Some(start) = &source.start {
            let n = source.n.context("--start needs -n")?;
            cert.input("start", start.as_str())
                .input("n", n)
                .input("outer", outer);
            let d = ctx.scene.conic(outer)?;
            let p = ctx.scene.point(start)?;
            match trace(ctx, c, d, p, n, source.branch) {
                Ok(r) => {
                    fig.sides = r.lines.clone();
                    fig.vertices = r.points.clone();
                    expected = (n, n);
                }
                Err(e) => cert.fail(e),
            }
        } else if let Some(f) = resolve_form(ctx, &mut cert, c, None, source)? {
            let gon = CanonicalFrame::new(c, None, &ctx.tol)
                .and_then(|frame| Ok(zero_locus(&f, &ctx.tol)?.to_world(&frame)));
            match gon {
                Ok(g) => {
                    fig.sides = g.lines().iter().map(|l| l.to_float()).collect();
                    fig.vertices = g.vertex_points().iter().map(|p| p.to_float()).collect();
                    expected = (g.n(), g.vertices().len());
                }
                Err(e) => cert.fail(e),
            }
        }
    }
    let out = render(&fig);
    for w in &out.warnings {
        cert.warn(w.clone());
    }
    cert.evidence("conic_paths", out.conic_paths)
        .evidence("curve_paths", out.curve_paths)
        .evidence("sides", out.sides)
        .evidence("vertices", out.vertices)
        .evidence("points", out.points);
    cert.check("sides", out.sides == expected.0);
    cert.check("vertices", out.vertices == expected.1);
    Ok((cert, out.svg))
}
