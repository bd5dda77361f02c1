//! Argument parsing and dispatch.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sutured::cones::{dual_cones, fan_check_with, foliation_cones, FanCheckConfig, DEFAULT_FAN_SEED};
use sutured::corpus::{load_example, presentation_text};
use sutured::error::Error;
use sutured::fox::{labeled_support, newton_polytope, parse_fox_input};
use sutured::io::{
    cone_records, cones_json, facets_json, parse_polytope, polynomial_json, polytope_json, PolytopeInput,
};
use sutured::linalg::{format_rational, parse_rational, Coords, ExactVector, Side};
use sutured::norms::{
    chi_beta, chi_minus, chi_s_minus, support_min, unit_ball, y_seminorm, y_t, z_symmetrized, NormBall,
    SurfaceComplexityData,
};
use sutured::polytope::{LabeledSupport, Polytope};

use crate::render::{render_cones, render_polytope, Projection};
use crate::verify::verify;

/// Environment variable naming the directory `render` writes to when no
/// `--output` is given.
pub const OUT_DIR_VAR: &str = "SUTURED_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "sutured", version, about = "Sutured Floer polytopes, dual cones and seminorms")]
pub struct Cli {
    /// Print module JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormKind {
    /// Seminorm of the centred polytope.
    Y,
    /// Support-function norm of the polytope as given.
    Yt,
    /// Symmetrized seminorm.
    Z,
    /// Σ max(0, −χ).
    Chi,
    /// Σ max(0, −χ + |S ∩ β|).
    ChiBeta,
    /// Σ max(0, −χ + n/2).
    ChiS,
}

/// Polytope arguments are JSON files or `example:<name>`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertices of the convex hull.
    Hull { polytope: String },
    /// Facet inequalities ⟨x, n⟩ ≤ h.
    Facets { polytope: String },
    /// Dual cone at every vertex.
    DualCones {
        polytope: String,
        /// Also run the fan check.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Dual cones at vertices labeled exactly ℤ.
    FoliationCones { polytope: String },
    /// Minimum of ⟨c, a⟩ over the polytope and the face attaining it.
    Support {
        #[arg(long)]
        polytope: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Evaluate a seminorm or a surface complexity.
    Norm {
        #[arg(long, value_enum)]
        kind: NormKind,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[arg(long)]
        polytope: Option<String>,
        /// Translate the polytope to its vertex centroid first.
        #[arg(long)]
        center: bool,
        /// Surface data file for the χ kinds.
        #[arg(long)]
        surface: Option<PathBuf>,
    },
    /// Unit ball of the seminorm.
    Ball {
        #[arg(long)]
        polytope: String,
        #[arg(long)]
        center: bool,
    },
    /// Polynomial of a presentation file (or `example:<name>`) and its Newton polytope.
    Fox {
        presentation: String,
        /// Read coefficient magnitudes as ranks under the L-space hypothesis.
        #[arg(long)]
        lspace: bool,
    },
    /// Reproduce the built-in examples.
    Verify {
        #[arg(long)]
        example: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write an SVG picture of a polytope or its dual cones.
    Render {
        polytope: String,
        #[arg(long)]
        cones: bool,
        /// Viewing direction for 3D input, e.g. "1,1,1".
        #[arg(long, allow_hyphen_values = true)]
        project_along: Option<String>,
        /// Length at which cone rays are cut off.
        #[arg(long, default_value_t = 3.0)]
        radius: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Failure of a command, with its exit status.
#[derive(Debug)]
pub enum CliError {
    Domain(Error),
    Io { path: PathBuf, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(e) if e.is_parse() => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Domain(e) => json!({"error": e.kind(), "message": e.to_string()}),
            CliError::Io { path, message } => {
                json!({"error": "io", "message": format!("{}: {message}", path.display())})
            }
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

/// Standard output and exit status of a successful run.
#[derive(Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn text(s: String) -> Self {
        Output { stdout: s, code: 0 }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })
}

fn load_polytope_input(arg: &str) -> Result<PolytopeInput, CliError> {
    if let Some(name) = arg.strip_prefix("example:") {
        let ex = load_example(name)?;
        return Ok(PolytopeInput {
            dim: ex.polytope.ambient_dim(),
            points: ex.labels.entries().keys().cloned().collect(),
            labels: Some(ex.labels),
        });
    }
    Ok(parse_polytope(&read(Path::new(arg))?)?)
}

fn load_polytope(arg: &str) -> Result<Polytope, CliError> {
    Ok(load_polytope_input(arg)?.hull()?)
}

fn vector(s: &str) -> Result<ExactVector, CliError> {
    Ok(Coords::parse(s)?)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn list<S: Side>(xs: &[Coords<S>]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let json = cli.json;
    match &cli.command {
        Command::Hull { polytope } => {
            let input = load_polytope_input(polytope)?;
            let p = input.hull()?;
            if json {
                return Ok(Output::text(pretty(&polytope_json(&p, input.labels.as_ref()))));
            }
            let mut out = format!("vertices: {}\naffine dimension: {}\n", p.vertex_count(), p.affine_dim());
            for v in p.vertices() {
                let _ = writeln!(out, "{v}");
            }
            Ok(Output::text(out))
        }
        Command::Facets { polytope } => {
            let p = load_polytope(polytope)?;
            let facets = p.facets()?;
            if json {
                return Ok(Output::text(pretty(&facets_json(&facets))));
            }
            let mut out = String::new();
            for f in &facets {
                let idx: Vec<String> = f.incident_vertex_indices.iter().map(|i| i.to_string()).collect();
                let _ = writeln!(
                    out,
                    "<x, {}> <= {}  vertices {}",
                    f.outward_normal,
                    format_rational(&f.offset),
                    idx.join(" ")
                );
            }
            Ok(Output::text(out))
        }
        Command::DualCones { polytope, check, seed } => {
            let p = load_polytope(polytope)?;
            let sys = dual_cones(&p);
            let report = check.then(|| {
                fan_check_with(&sys, FanCheckConfig { seed: seed.unwrap_or(DEFAULT_FAN_SEED), ..Default::default() })
            });
            if json {
                let mut v = cones_json(&cone_records(&sys));
                if let Some(r) = &report {
                    v["fan_check"] = json!({
                        "covers": r.covers,
                        "disjoint": r.disjoint,
                        "walls_matched": r.walls_matched,
                        "samples": r.samples,
                        "witnesses": r.witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    });
                }
                return Ok(Output::text(pretty(&v)));
            }
            let mut out = String::new();
            for (c, v) in sys.cones().iter().zip(p.vertices()) {
                let _ = writeln!(out, "cone {} at {v}: rays {}", c.label().unwrap_or(0), list(c.generators()));
            }
            if let Some(r) = report {
                let _ = writeln!(out, "fan check: covers={} disjoint={}", r.covers, r.disjoint);
                for w in &r.witnesses {
                    let _ = writeln!(out, "witness {w}");
                }
            }
            Ok(Output::text(out))
        }
        Command::FoliationCones { polytope } => {
            let input = load_polytope_input(polytope)?;
            let labels = input.labels_or_all_z()?;
            let set = foliation_cones(&labels);
            let records = cone_records(set.system());
            let selected: Vec<_> = records.into_iter().filter(|r| set.selected().contains(&r.label)).collect();
            if json {
                return Ok(Output::text(pretty(&cones_json(&selected))));
            }
            let mut out =
                format!("{} of {} dual cones sit over ℤ vertices\n", selected.len(), set.system().cones().len());
            for r in &selected {
                let _ = writeln!(out, "cone {}: rays {}", r.label, list(&r.rays));
            }
            Ok(Output::text(out))
        }
        Command::Support { polytope, at } => {
            let p = load_polytope(polytope)?;
            let ev = support_min(&p, &vector(at)?)?;
            let face: Vec<_> = ev.attaining_face.vertex_indices.iter().map(|&i| p.vertices()[i].clone()).collect();
            if json {
                return Ok(Output::text(pretty(&json!({
                    "value": format_rational(&ev.value),
                    "face": face.iter().map(|v| v.coords().iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "face_dim": ev.attaining_face.dim,
                }))));
            }
            Ok(Output::text(format!("{}\nface: {}\n", format_rational(&ev.value), list(&face))))
        }
        Command::Norm { kind, at, polytope, center, surface } => {
            let value = match kind {
                NormKind::Chi | NormKind::ChiBeta | NormKind::ChiS => {
                    let path = surface
                        .as_ref()
                        .ok_or_else(|| Error::Parse(format!("--kind {kind:?} needs --surface").to_lowercase()))?;
                    let s: SurfaceComplexityData =
                        serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(e.to_string()))?;
                    match kind {
                        NormKind::Chi => chi_minus(&s).to_string(),
                        NormKind::ChiBeta => chi_beta(&s).to_string(),
                        _ => format_rational(&chi_s_minus(&s)),
                    }
                }
                NormKind::Y | NormKind::Yt | NormKind::Z => {
                    let path = polytope.as_ref().ok_or_else(|| Error::Parse("this kind needs --polytope".into()))?;
                    let a = vector(at.as_ref().ok_or_else(|| Error::Parse("this kind needs --at".into()))?)?;
                    let mut p = load_polytope(path)?;
                    if *center {
                        p = p.centered();
                    }
                    let v = match kind {
                        NormKind::Y => y_seminorm(&p, &a)?,
                        NormKind::Yt => y_t(&p, &a)?,
                        _ => z_symmetrized(&p, &a)?,
                    };
                    format_rational(&v)
                }
            };
            if json {
                return Ok(Output::text(pretty(&json!({"value": value}))));
            }
            Ok(Output::text(value + "\n"))
        }
        Command::Ball { polytope, center } => {
            let mut p = load_polytope(polytope)?;
            if *center {
                p = p.centered();
            }
            match unit_ball(&p)? {
                NormBall::Bounded(b) => {
                    if json {
                        let mut v = polytope_json(&b, None);
                        v["bounded"] = json!(true);
                        return Ok(Output::text(pretty(&v)));
                    }
                    let mut out = format!("bounded ball with {} vertices\n", b.vertex_count());
                    for v in b.vertices() {
                        let _ = writeln!(out, "{v}");
                    }
                    Ok(Output::text(out))
                }
                NormBall::Unbounded { dim, normals } => {
                    if json {
                        return Ok(Output::text(pretty(&json!({
                            "bounded": false,
                            "dim": dim,
                            "halfspaces": normals.iter().map(|n| json!({
                                "normal": n.coords().iter().map(format_rational).collect::<Vec<_>>(),
                                "offset": "1",
                            })).collect::<Vec<_>>(),
                        }))));
                    }
                    let mut out = format!("unbounded ball cut out by {} halfspaces\n", normals.len());
                    for n in &normals {
                        let _ = writeln!(out, "<{n}, a> <= 1");
                    }
                    Ok(Output::text(out))
                }
            }
        }
        Command::Fox { presentation, lspace } => {
            let text = match presentation.strip_prefix("example:") {
                Some(name) => presentation_text(name)?.to_string(),
                None => read(Path::new(presentation))?,
            };
            let f = parse_fox_input(&text)?.polynomial()?;
            let support: Option<LabeledSupport> = if f.is_zero() { None } else { Some(labeled_support(&f, *lspace)?) };
            let newton = if f.is_zero() { None } else { Some(newton_polytope(&f)?) };
            if json {
                let mut v = polynomial_json(&f);
                if let (Some(ls), Some(np)) = (&support, &newton) {
                    v["newton_polytope"] = polytope_json(np, Some(ls));
                    v["warning"] = json!(ls.warning());
                }
                return Ok(Output::text(pretty(&v)));
            }
            let mut out = format!("polynomial: {f}\n");
            if let (Some(ls), Some(np)) = (&support, &newton) {
                let _ = writeln!(out, "newton polytope vertices: {}", list(np.vertices()));
                if ls.warning() {
                    let _ = writeln!(out, "warning: some coefficient is not ±1, so not every group is ℤ");
                }
            }
            Ok(Output::text(out))
        }
        Command::Verify { example, seed } => {
            let report = verify(example.as_deref(), seed.unwrap_or(DEFAULT_FAN_SEED))?;
            let code = if report.ok() { 0 } else { 3 };
            let stdout = if json { pretty(&report.to_json()) } else { report.to_text() };
            Ok(Output { stdout, code })
        }
        Command::Render { polytope, cones, project_along, radius, output } => {
            let p = load_polytope(polytope)?;
            let proj = match project_along {
                Some(v) => {
                    let dir: Vec<f64> = v
                        .split(',')
                        .map(|x| parse_rational(x).map(|r| ExactVector::new(vec![r]).to_f64()[0]))
                        .collect::<Result<_, _>>()?;
                    Projection::along(p.ambient_dim(), &dir)?
                }
                None => Projection::standard(p.ambient_dim())?,
            };
            let svg = if *cones { render_cones(&dual_cones(&p), &proj, *radius)? } else { render_polytope(&p, &proj)? };
            let target = output.clone().or_else(|| {
                std::env::var_os(OUT_DIR_VAR).map(|dir| {
                    let stem = polytope.strip_prefix("example:").unwrap_or(polytope);
                    let stem =
                        Path::new(stem).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    PathBuf::from(dir).join(format!("{stem}{}.svg", if *cones { "-cones" } else { "" }))
                })
            });
            match target {
                Some(path) => {
                    std::fs::write(&path, svg)
                        .map_err(|e| CliError::Io { path: path.clone(), message: e.to_string() })?;
                    Ok(Output::text(format!("{}\n", path.display())))
                }
                None => Ok(Output::text(svg)),
            }
        }
    }
}
