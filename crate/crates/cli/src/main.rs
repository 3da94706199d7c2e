use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ulfp::annular::{annular_distance, twist_coord, Annulus, TwistRecord};
use ulfp::bounds::{BoundCalculator, BoundParams, Mode, Surface, DEFAULT_DIGIT_CAP};
use ulfp::farey::{dehn_twist, distance, geodesics, half_twist, Geodesic, Slope, SurfaceKind};
use ulfp::graph::{greedy_separated, verify_dichotomy};
use ulfp::projections::{bgit_audit, ulfp_witness, verify_certificate};
use ulfp::slices::{verify_slice_bounds, weak_tight_index, Sampling, SliceQuery};
use ulfp::{io, Error};

const SCHEMA: &str = "ulfp.run-report/1";

#[derive(Parser, Debug)]
#[command(name = "ulfp", version, about = "Curve-graph geometry on the once-holed torus and four-holed sphere")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every subcommand. `M` and `delta` have no canonical
/// value; the defaults are placeholders and every report echoes them.
#[derive(Args, Debug, Serialize)]
struct Config {
    /// Bounded-geodesic-image constant M.
    #[arg(long = "M", global = true, env = "ULFP_M", default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    #[serde(rename = "M")]
    m: u64,
    /// Hyperbolicity constant used as the slice radius.
    #[arg(long, global = true, env = "ULFP_DELTA", default_value_t = 17)]
    delta: u64,
    /// Surface: torus (S_{1,1}) or sphere (S_{0,4}).
    #[arg(long, global = true, default_value = "torus")]
    kind: SurfaceKind,
    #[arg(long, global = true, env = "ULFP_SEED", default_value_t = 0)]
    seed: u64,
    /// Largest exact value, in decimal digits, before switching to log10.
    #[arg(long, global = true, default_value_t = DEFAULT_DIGIT_CAP)]
    digit_cap: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distance between two slopes.
    Dist {
        #[arg(allow_hyphen_values = true)]
        x: Slope,
        #[arg(allow_hyphen_values = true)]
        y: Slope,
    },
    /// Every geodesic between two slopes.
    Geod {
        #[arg(allow_hyphen_values = true)]
        x: Slope,
        #[arg(allow_hyphen_values = true)]
        y: Slope,
    },
    /// Apply the n-th power of the twist about x to y.
    Twist {
        #[arg(allow_hyphen_values = true)]
        x: Slope,
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(allow_hyphen_values = true)]
        y: Slope,
        /// Half twist (four-holed sphere only).
        #[arg(long)]
        half: bool,
    },
    /// Twist coordinates and annular distance of y and z around a core.
    Project {
        #[arg(long, allow_hyphen_values = true)]
        core: Slope,
        #[arg(allow_hyphen_values = true)]
        y: Slope,
        #[arg(allow_hyphen_values = true)]
        z: Slope,
    },
    /// Separated-set witness or cover certificate for a slope set.
    Ulfp {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        k: usize,
    },
    /// Empirical one-sided annular image over a pair corpus.
    AuditBgit {
        #[arg(long)]
        pairs: PathBuf,
    },
    /// Slice of the geodesics from a to b near c, checked against its bound.
    Slice {
        #[arg(allow_hyphen_values = true)]
        a: Slope,
        #[arg(allow_hyphen_values = true)]
        b: Slope,
        #[arg(allow_hyphen_values = true)]
        c: Slope,
        /// Endpoint radius; r > 0 samples endpoints in the r-balls.
        #[arg(long, default_value_t = 0)]
        r: u64,
        /// Endpoint pairs sampled when r > 0.
        #[arg(long, default_value_t = 32)]
        budget: usize,
        /// Restrict to D-weakly tight geodesics.
        #[arg(long)]
        weak: Option<u64>,
    },
    /// Weak-tightness index of a geodesic given as a comma-separated list.
    WeakIndex {
        #[arg(long, allow_hyphen_values = true)]
        geodesic: Geodesic,
    },
    /// Threshold N_S(l, k) or the slice bounds derived from it.
    Bounds {
        /// Surface as "g,n".
        #[arg(long, value_parser = parse_surface)]
        surface: Surface,
        #[arg(long, default_value_t = 1)]
        l: u64,
        #[arg(long, default_value_t = 2)]
        k: u64,
        /// Tight slice bounds N_S(2M,3) and N_S(4M,3).
        #[arg(long, conflicts_with = "weak")]
        slice: bool,
        /// Weak-tight slice bounds N_S(2D,3) and N_S(2(D+M),3).
        #[arg(long)]
        weak: Option<u64>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Separated-set / ball-cover dichotomy in a finite graph.
    GraphUlfp {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Log10,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Log10 => Mode::Log10,
        }
    }
}

fn parse_surface(text: &str) -> Result<Surface, String> {
    let (g, n) = text.split_once(',').ok_or_else(|| format!("expected \"g,n\", got {text:?}"))?;
    let g = g.trim().parse().map_err(|e| format!("genus: {e}"))?;
    let n = n.trim().parse().map_err(|e| format!("boundary count: {e}"))?;
    Surface::new(g, n).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct RunReport<'a> {
    schema: &'static str,
    tool: &'static str,
    version: &'static str,
    command: Vec<String>,
    inputs: Value,
    outputs: Value,
    config: &'a Config,
    timing_ms: f64,
}

/// Failure with the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse(_) | Error::ZeroSlope => 2,
            Error::Overflow(_) => 1,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn run(command: &Command, config: &Config) -> Result<(Value, Value), Failure> {
    let kind = config.kind;
    Ok(match command {
        Command::Dist { x, y } => (json!({ "x": x, "y": y }), json!({ "distance": distance(*x, *y) })),
        Command::Geod { x, y } => {
            let gs = geodesics(*x, *y);
            let lines: Vec<String> = gs.iter().map(|g| g.to_string()).collect();
            (
                json!({ "x": x, "y": y }),
                json!({ "distance": distance(*x, *y), "count": gs.len(), "geodesics": lines }),
            )
        }
        Command::Twist { x, n, y, half } => {
            let image = if *half {
                if kind != SurfaceKind::Sphere {
                    return Err(Failure {
                        code: 3,
                        message: "half twists exist only on the four-holed sphere; pass --kind sphere".into(),
                    });
                }
                half_twist(*x, *n, *y)
            } else {
                dehn_twist(kind, *x, *n, *y)
            };
            let d = if y == x { None } else { Some(annular_distance(kind, &Annulus::new(*x), *y, image)?) };
            (
                json!({ "x": x, "n": n, "y": y, "half": half }),
                json!({ "image": image, "annular_distance": d }),
            )
        }
        Command::Project { core, y, z } => {
            let annulus = Annulus::new(*core);
            let record = |w: Slope| -> Result<TwistRecord, Error> {
                Ok(TwistRecord {
                    core: *core,
                    twist: twist_coord(&annulus, w)?,
                    distance: annular_distance(kind, &annulus, *y, w)?,
                })
            };
            let (ry, rz) = (record(*y)?, record(*z)?);
            (
                json!({ "core": core, "y": y, "z": z }),
                json!({ "twist_y": ry.twist, "twist_z": rz.twist, "distance": rz.distance }),
            )
        }
        Command::Ulfp { set, l, k } => {
            let a = io::parse_slope_list(&read(set)?)?;
            let cert = ulfp_witness(kind, &a, *l, *k)?;
            let verified = verify_certificate(kind, &a, *l, *k, &cert)?;
            (
                json!({ "set": set, "size": a.len(), "l": l, "k": k }),
                json!({ "certificate": to_json(&cert), "verified": verified }),
            )
        }
        Command::AuditBgit { pairs } => {
            let corpus = io::parse_slope_pairs(&read(pairs)?)?;
            let audit = bgit_audit(kind, &corpus)?;
            (json!({ "pairs": pairs, "count": corpus.len() }), to_json(&audit))
        }
        Command::Slice { a, b, c, r, budget, weak } => {
            let query = SliceQuery { a: *a, b: *b, c: *c, delta: config.delta, r: *r };
            let calc = BoundCalculator::new(config.digit_cap);
            let sampling = Sampling { budget: *budget, seed: config.seed };
            let v = verify_slice_bounds(kind, &query, config.m, *weak, sampling, &calc)?;
            (
                json!({ "a": a, "b": b, "c": c, "delta": config.delta, "r": r, "budget": budget, "weak": weak }),
                to_json(&v),
            )
        }
        Command::WeakIndex { geodesic } => {
            let report = weak_tight_index(kind, geodesic)?;
            (json!({ "geodesic": geodesic }), to_json(&report))
        }
        Command::Bounds { surface, l, k, slice, weak, mode } => {
            let calc = BoundCalculator::new(config.digit_cap);
            let mode = Mode::from(*mode);
            let outputs = if *slice {
                let (plain, radius) = calc.slice_bound_tight(*surface, config.m, mode)?;
                json!({ "surface": surface.to_string(), "value": plain, "value_radius": radius, "mode": plain.mode() })
            } else if let Some(d) = weak {
                let (plain, radius) = calc.slice_bound_weak(*surface, *d, config.m, mode)?;
                json!({ "surface": surface.to_string(), "value": plain, "value_radius": radius, "mode": plain.mode() })
            } else {
                let p = BoundParams::new(*l, *k, config.m)?;
                let v = calc.n_bound(*surface, p, mode)?;
                json!({ "surface": surface.to_string(), "params": p, "value": v, "mode": v.mode() })
            };
            (
                json!({ "surface": surface.to_string(), "l": l, "k": k, "slice": slice, "weak": weak }),
                outputs,
            )
        }
        Command::GraphUlfp { graph, set, l, k } => {
            let g = io::parse_graph(&read(graph)?)?;
            let a = io::parse_vertex_set(&read(set)?)?;
            let result = greedy_separated(&g, &a, *l, *k)?;
            let verified = verify_dichotomy(&g, &a, *l, *k, &result);
            (
                json!({ "graph": graph, "set": set, "vertices": g.vertex_count(), "size": a.len(), "l": l, "k": k }),
                json!({ "result": to_json(&result), "verified": verified }),
            )
        }
    })
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.command, &cli.config) {
        Ok((inputs, outputs)) => {
            let report = RunReport {
                schema: SCHEMA,
                tool: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
                command: argv.into_iter().skip(1).collect(),
                inputs,
                outputs,
                config: &cli.config,
                timing_ms: (start.elapsed().as_secs_f64() * 1e6).round() / 1e3,
            };
            let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
            text.push('\n');
            // A closed pipe downstream is not our failure.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
