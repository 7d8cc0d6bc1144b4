//! Command-line front end. `run` takes parsed arguments and output streams and returns
//! the process exit code: 0 all pass, 1 a check failed, 2 a configuration error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::ajima::{
    ajima_oracle, ajima_radius, arc_radius_forms, build_arc, build_gamma, lengths, AjimaError,
    Measured,
};
use crate::apollonius::{
    apollonius, bary_d, bary_oa, bary_t, miyamoto_tangency, rho_inner, rho_outer, Triad,
};
use crate::svg::{Figure, Layer};
use crate::triangle::{BaryCoords, Triangle, TriangleError, Vertex};
use crate::verify::{draw_sample, run_instance, run_suite, select_checks, SamplePolicy, DEFAULT_THRESHOLD};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

pub const TOL_ENV: &str = "AJIMA_TOL";

#[derive(Debug, Parser)]
#[command(name = "ajima", version, about = "Ajima circles of a triangle: solve, draw and verify")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the check registry on sampled or explicit configurations.
    Verify(VerifyArgs),
    /// Print every named quantity of one configuration.
    Solve(InstanceArgs),
    /// Write an SVG figure of one configuration.
    Figure(FigureArgs),
}

#[derive(Debug, Args, Clone)]
pub struct Source {
    /// Side lengths a,b,c.
    #[arg(long, value_parser = parse_triple, conflicts_with = "sample")]
    pub triangle: Option<[f64; 3]>,
    /// Take the triangle and θ of this sample index of the seeded sampler.
    #[arg(long)]
    pub sample: Option<u64>,
    /// Arc measure in degrees.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Per-side arc measures in degrees (a,b,c).
    #[arg(long, value_parser = parse_triple)]
    pub thetas: Option<[f64; 3]>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    /// Pass threshold; defaults to $AJIMA_TOL, then 1e-7.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Comma-separated check ids (full or short, e.g. T01).
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<String>,
    /// Write the JSON report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[command(flatten)]
    pub source: Source,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Extra layers: apollonius, soddy, registry-witness.
    #[arg(long, value_delimiter = ',')]
    pub show: Vec<Layer>,
    /// Pixels per unit length.
    #[arg(long, default_value_t = crate::svg::DEFAULT_SCALE)]
    pub scale: f64,
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("expected three comma-separated numbers, got {s:?}"));
    };
    let num = |x: &str| x.parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok([num(a)?, num(b)?, num(c)?])
}

#[derive(Debug)]
struct ConfigError(String);

impl<E: std::fmt::Display> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.to_string())
    }
}

/// An explicit configuration: triangle plus either one θ or a per-side triple.
struct Instance {
    tri: Triangle,
    theta: f64,
    thetas: Option<[f64; 3]>,
}

impl Source {
    fn instance(&self) -> Result<Instance, ConfigError> {
        let (tri, sampled_theta) = match (self.triangle, self.sample) {
            (Some([a, b, c]), None) => (triangle(a, b, c)?, None),
            (None, Some(i)) => {
                let s = draw_sample(&SamplePolicy { seed: self.seed, ..SamplePolicy::default() }, i);
                (s.tri, Some(s.theta))
            }
            _ => return Err(ConfigError("give exactly one of --triangle or --sample".into())),
        };
        let theta = self
            .theta
            .or(sampled_theta)
            .or(self.thetas.map(|t| t[0]))
            .ok_or(ConfigError("--theta is required with --triangle".into()))?;
        for th in std::iter::once(theta).chain(self.thetas.into_iter().flatten()) {
            if !(th > 0.0 && th < 360.0) {
                return Err(AjimaError::ThetaOutOfRange(th).into());
            }
        }
        Ok(Instance {
            tri,
            theta,
            thetas: self.thetas,
        })
    }
}

fn triangle(a: f64, b: f64, c: f64) -> Result<Triangle, TriangleError> {
    Triangle::from_sides(a, b, c)
}

fn tolerance(flag: Option<f64>) -> Result<f64, ConfigError> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s
                .parse()
                .map_err(|e| ConfigError(format!("{TOL_ENV}={s:?}: {e}")))?,
            Err(_) => DEFAULT_THRESHOLD,
        },
    };
    if !(tol > 0.0) {
        return Err(ConfigError(format!("tolerance must be positive, got {tol}")));
    }
    Ok(tol)
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let res = match cli.command {
        Command::Verify(a) => verify(a, out, err),
        Command::Solve(a) => solve(a, out),
        Command::Figure(a) => figure(a, out, err),
    };
    match res {
        Ok(code) => code,
        Err(ConfigError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_CONFIG
        }
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, ConfigError> {
    let tol = tolerance(a.tol)?;
    let checks = select_checks(&a.checks)?;
    let explicit = a.source.triangle.is_some() || a.source.sample.is_some();
    let report = if explicit {
        let inst = a.source.instance()?;
        run_instance(&inst.tri, inst.theta, inst.thetas, &checks, tol)?
    } else {
        let policy = SamplePolicy {
            seed: a.source.seed,
            trials: a.trials,
            threshold: tol,
            ..SamplePolicy::default()
        };
        run_suite(&policy, &checks)?
    };
    writeln!(out, "{:<34} {:>6} {:>6} {:>6}  {:>10}", "check", "pass", "fail", "na", "max resid")?;
    for c in &report.per_check {
        let resid = c.max_residual.map_or("-".to_string(), |r| format!("{r:.2e}"));
        let mut line = format!("{:<34} {:>6} {:>6} {:>6}  {:>10}", c.id, c.pass, c.fail, c.na, resid);
        if c.pass + c.fail == 0 {
            if let Some((why, _)) = c.na_reasons.iter().next() {
                line.push_str(&format!("  not_applicable: {why}"));
            }
        }
        writeln!(out, "{line}")?;
    }
    let failures = report.total_failures();
    writeln!(out, "{} checks, {failures} failing sample(s), threshold {tol:e}", report.per_check.len())?;
    if let Some(path) = a.json {
        std::fs::write(&path, report.to_json() + "\n")
            .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    }
    if failures > 0 {
        let _ = writeln!(err, "verification failed");
        return Ok(EXIT_FAIL);
    }
    Ok(EXIT_OK)
}

struct Table<'a> {
    out: &'a mut dyn Write,
}

impl Table<'_> {
    fn head(&mut self, title: &str) -> std::io::Result<()> {
        writeln!(self.out, "\n[{title}]")?;
        writeln!(self.out, "{:<26} {:>16} {:>16} {:>10}", "quantity", "formula", "measured", "residual")
    }

    fn value(&mut self, name: &str, v: f64) -> std::io::Result<()> {
        writeln!(self.out, "{name:<26} {v:>16.10}")
    }

    fn pair(&mut self, name: &str, formula: f64, measured: f64) -> std::io::Result<()> {
        let m = Measured { formula, measured };
        writeln!(self.out, "{name:<26} {formula:>16.10} {measured:>16.10} {:>10.2e}", m.rel_error())
    }

    fn note(&mut self, name: &str, text: &str) -> std::io::Result<()> {
        writeln!(self.out, "{name:<26} {text}")
    }

    fn bary(&mut self, name: &str, tri: &Triangle, b: BaryCoords, measured: crate::kernel::Point2) -> std::io::Result<()> {
        let s = b.u + b.v + b.w;
        let n = tri.point_to_bary(measured);
        writeln!(
            self.out,
            "{name:<26} ({:.8}, {:.8}, {:.8})  measured ({:.8}, {:.8}, {:.8})",
            tidy(b.u / s),
            tidy(b.v / s),
            tidy(b.w / s),
            tidy(n.u),
            tidy(n.v),
            tidy(n.w)
        )
    }
}

/// Rounds values that would print as "-0.00000000".
fn tidy(x: f64) -> f64 {
    if x.abs() < 5e-9 {
        0.0
    } else {
        x
    }
}

fn solve(a: InstanceArgs, out: &mut dyn Write) -> Result<i32, ConfigError> {
    let inst = a.source.instance()?;
    let tri = inst.tri;
    let m = tri.metrics();
    let thetas = inst.thetas.unwrap_or([inst.theta; 3]);
    let mut t = Table { out };
    writeln!(t.out, "triangle a={} b={} c={}  theta={:?}", m.a, m.b, m.c, thetas)?;
    t.head("triangle")?;
    t.value("p", m.p)?;
    t.value("area", m.area)?;
    t.pair("r", m.area / m.p, tri.side_line(Vertex::A).distance(tri.incenter()))?;
    t.pair("R", m.big_r, tri.circumcenter().dist(tri.vertices[0]))?;
    t.value("W = (4R + r)/p", m.w)?;

    for v in Vertex::ALL {
        let th = thetas[v.index()];
        let arc = build_arc(&tri, v, th)?;
        t.head(&format!("side {} (theta {th})", v.side_name()))?;
        t.value("t = tan(theta/4)", arc.t)?;
        let forms = arc_radius_forms(&m, v, th);
        t.pair("R_arc", forms[0], arc.center.dist(tri.relabeled(v).vertices[1]))?;
        let rho = ajima_radius(&m, v, arc.t);
        let oracle = ajima_oracle(&tri, &arc);
        match (build_gamma(&tri, &arc), oracle) {
            (Ok(g), Ok(o)) => {
                t.pair("rho", rho, o.radius)?;
                let ls = lengths(&g);
                t.pair("AK", ls.ak.formula, ls.ak.measured)?;
                t.pair("AL", ls.al.formula, ls.al.measured)?;
                t.pair("AL'", ls.alp.formula, ls.alp.measured)?;
                t.pair("AX", ls.ax.formula, ls.ax.measured)?;
                t.pair("HK", ls.hk.formula, ls.hk.measured)?;
                if let Ok(f) = ls.if_len {
                    t.pair("IF", f.formula, f.measured)?;
                }
                t.bary("D", &tri, bary_d(&m, v, arc.t), g.d)?;
                t.bary("O", &tri, bary_oa(&m, v, th), arc.center)?;
                t.bary("T", &tri, bary_t(&m, v, th), g.t_touch)?;
            }
            _ if rho.abs() <= 1e-9 * m.r => {
                t.value("rho", rho)?;
                t.note("", "degenerate point circle at the vertex")?;
            }
            _ => {
                t.value("rho", rho)?;
                t.note("", "no interior circle (angle >= 180 - theta/2)")?;
            }
        }
    }

    match Triad::mixed(&tri, thetas) {
        Ok(triad) if triad.is_general() => match apollonius(&triad) {
            Ok(res) => {
                let tt = triad.t();
                t.head("Apollonius circles")?;
                t.pair("rho_i", rho_inner(&m, tt), res.inner.rho)?;
                t.pair("rho_o", rho_outer(&m, tt), res.outer.rho)?;
                t.pair(
                    "(rho_i + r)/(rho_o - r)",
                    3.0,
                    (res.inner.rho + m.r) / (res.outer.rho - m.r),
                )?;
            }
            Err(e) => {
                t.head("Apollonius circles")?;
                t.note("rho_i", &e.to_string())?;
            }
        },
        Ok(_) => {
            t.head("inner circles")?;
            match miyamoto_tangency(&tri, thetas) {
                Ok(rep) => {
                    t.value("gamma inner rho", rep.gamma_inner.1)?;
                    t.value("omega inner rho", rep.omega_inner.1)?;
                    t.value("tangency residual", rep.residual)?;
                    t.note("contact", &format!("{:?}", rep.kind))?;
                }
                Err(e) => t.note("solver", &e.to_string())?,
            }
        }
        Err(e) => {
            t.head("Apollonius circles")?;
            t.note("", &e.to_string())?;
        }
    }
    Ok(EXIT_OK)
}

fn figure(a: FigureArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, ConfigError> {
    let inst = a.source.instance()?;
    if !(a.scale > 0.0) {
        return Err(ConfigError("--scale must be positive".into()));
    }
    let mut layers = a.show;
    layers.sort();
    layers.dedup();
    let fig = Figure {
        layers,
        scale: a.scale,
        ..Figure::new(inst.tri, inst.thetas.unwrap_or([inst.theta; 3]))
    };
    let svg = fig.render();
    match a.svg {
        Some(path) => {
            std::fs::write(&path, svg).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
            let _ = writeln!(err, "wrote {}", path.display());
        }
        None => out.write_all(svg.as_bytes())?,
    }
    Ok(EXIT_OK)
}
