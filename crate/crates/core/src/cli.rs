//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a claim or prediction failed, 2 usage error,
//! 3 capacity exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::export;
use crate::gf::{prime_power, FieldCtx};
use crate::hom::HomTag;
use crate::plane::{parse_triple, point_total, PlaneConfig, PlaneCtx, PointClass};
use crate::verify::{verify, Depth};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ringplane", version, about = "Projective planes over GF(q) x GF(q)")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Order of the coordinate field (a prime power)
    #[arg(long, global = true, conflicts_with_all = ["p", "n"])]
    pub q: Option<u64>,
    /// Characteristic, used with --n instead of --q
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Extension degree (default 1)
    #[arg(long, global = true)]
    pub n: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = DepthArg::Fast)]
    pub depth: DepthArg,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Refuse planes with more points than this
    #[arg(long, global = true)]
    pub max_points: Option<u64>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Enumerated counts next to their closed forms
    Stats,
    /// Run the claim suite
    Verify,
    /// List the neighbours of a point
    Neighbours { point: String },
    /// How one reduction splits the neighbourhood of a point
    Hom {
        point: String,
        #[arg(long, value_enum, default_value_t = TagArg::Hat)]
        tag: TagArg,
    },
    /// Write the plane, the neighbour graph or a split report
    Export {
        #[arg(value_enum)]
        what: ExportKind,
        #[arg(long)]
        point: Option<String>,
        #[arg(long, value_enum, default_value_t = TagArg::Hat)]
        tag: TagArg,
        /// Fill type II vertices in DOT output
        #[arg(long)]
        color_types: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthArg {
    Fast,
    Definitional,
    Oracle,
}

impl From<DepthArg> for Depth {
    fn from(d: DepthArg) -> Self {
        match d {
            DepthArg::Fast => Depth::Fast,
            DepthArg::Definitional => Depth::Definitional,
            DepthArg::Oracle => Depth::Oracle,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TagArg {
    Hat,
    Tilde,
}

impl From<TagArg> for HomTag {
    fn from(t: TagArg) -> Self {
        match t {
            TagArg::Hat => HomTag::Hat,
            TagArg::Tilde => HomTag::Tilde,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportKind {
    Plane,
    Graph,
    Hom,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Capacity(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity(_) => Failure::Capacity(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<(String, bool), Failure>;

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let result = execute(&cli).and_then(|(text, ok)| {
        match &cli.run.out {
            Some(path) => std::fs::write(path, text.as_bytes())
                .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?,
            None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string()))?,
        }
        Ok(ok)
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(Failure::Usage(m)) | Err(Failure::Io(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Capacity(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_CAPACITY
        }
    }
}

fn resolve_field(cfg: &RunConfig) -> std::result::Result<FieldCtx, Failure> {
    let (p, n) = match (cfg.q, cfg.p) {
        (Some(q), _) => prime_power(q).ok_or_else(|| Failure::Usage(format!("q = {q} is not a prime power")))?,
        (None, Some(p)) => (p, cfg.n.unwrap_or(1)),
        (None, None) => return Err(Failure::Usage("one of --q or --p is required".into())),
    };
    Ok(FieldCtx::new(p, n)?)
}

fn plane_config(cfg: &RunConfig) -> PlaneConfig {
    PlaneConfig { max_points: cfg.max_points, ..PlaneConfig::from_env() }
}

fn build_plane(cfg: &RunConfig) -> std::result::Result<PlaneCtx, Failure> {
    let field = resolve_field(cfg)?;
    Ok(PlaneCtx::build(Arc::new(field), &plane_config(cfg))?)
}

fn locate<'a>(plane: &'a PlaneCtx, text: &str) -> std::result::Result<&'a PointClass, Failure> {
    let t = parse_triple(plane.ring(), text)?;
    Ok(plane.locate_point(&t)?)
}

fn check_format(cmd: &str, format: Format, allowed: &[Format]) -> std::result::Result<Format, Failure> {
    if allowed.contains(&format) {
        Ok(format)
    } else {
        Err(Failure::Usage(format!("{cmd} does not support {format:?} output")))
    }
}

fn execute(cli: &Cli) -> CmdResult {
    let cfg = &cli.run;
    match &cli.command {
        Command::Stats => cmd_stats(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::Neighbours { point } => cmd_neighbours(cfg, point),
        Command::Hom { point, tag } => cmd_hom(cfg, point, (*tag).into()),
        Command::Export { what, point, tag, color_types } => {
            cmd_export(cfg, *what, point.as_deref(), (*tag).into(), *color_types)
        }
    }
}

#[derive(Serialize)]
struct StatEntry {
    name: &'static str,
    observed: u64,
    predicted: u64,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct StatsReport {
    q: u32,
    p: u32,
    n: u32,
    modulus_poly: Vec<u32>,
    entries: Vec<StatEntry>,
    all_match: bool,
}

fn cmd_stats(cfg: &RunConfig) -> CmdResult {
    let format = check_format("stats", cfg.format.unwrap_or(Format::Text), &[Format::Text, Format::Json])?;
    let plane = build_plane(cfg)?;
    let q = plane.order() as u64;
    let census = plane.ring().census();
    let (type_i, type_ii) = plane.type_counts();
    let per_line = plane.points_on_line_definitional(plane.line(0))?.len() as u64;
    let per_point = plane.lines_through_point_definitional(plane.point(0))?.len() as u64;
    let hood = plane.neighbourhood(plane.point(0))?.len() as u64;
    let total = point_total(q);
    let entry = |name, observed, predicted| StatEntry { name, observed, predicted, matches: observed == predicted };
    let entries = vec![
        entry("ring.elements", census.total, q * q),
        entry("ring.zero_divisors", census.zero_divisors, 2 * q - 1),
        entry("ring.units", census.units, (q - 1) * (q - 1)),
        entry("plane.points", plane.num_points() as u64, total),
        entry("plane.lines", plane.num_lines() as u64, total),
        entry("plane.type_i", type_i, total - 6 * q),
        entry("plane.type_ii", type_ii, 6 * q),
        entry("plane.points_per_line", per_line, (q + 1) * (q + 1)),
        entry("plane.lines_per_point", per_point, (q + 1) * (q + 1)),
        entry("neighbour.size", hood, 2 * q * (q + 1)),
        entry("pg.points", plane.pg().len() as u64, q * q + q + 1),
    ];
    let all_match = entries.iter().all(|e| e.matches);
    let f = plane.field();
    let report =
        StatsReport { q: q as u32, p: f.p(), n: f.n(), modulus_poly: f.modulus().to_vec(), entries, all_match };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("stats serialization cannot fail") + "\n",
        _ => {
            let mut out = format!("q={} p={} n={} modulus={:?}\n", report.q, report.p, report.n, report.modulus_poly);
            for e in &report.entries {
                let flag = if e.matches { "ok" } else { "MISMATCH" };
                out += &format!("{:24} {:>10}  predicted {:>10}  {flag}\n", e.name, e.observed, e.predicted);
            }
            out
        }
    };
    Ok((text, all_match))
}

fn cmd_verify(cfg: &RunConfig) -> CmdResult {
    let format = check_format("verify", cfg.format.unwrap_or(Format::Text), &[Format::Text, Format::Json])?;
    let depth: Depth = cfg.depth.into();
    let field = resolve_field(cfg)?;
    if depth == Depth::Oracle && field.order() > crate::plane::ORACLE_MAX_Q {
        return Err(Failure::Capacity(format!(
            "oracle depth is limited to q <= {}, got q = {}",
            crate::plane::ORACLE_MAX_Q,
            field.order()
        )));
    }
    let plane = PlaneCtx::build(Arc::new(field), &plane_config(cfg))?;
    let report = verify(&plane, depth)?;
    let text = match format {
        Format::Json => report.to_json(),
        _ => report.to_text(),
    };
    Ok((text, report.all_passed()))
}

fn cmd_neighbours(cfg: &RunConfig, point: &str) -> CmdResult {
    let format =
        check_format("neighbours", cfg.format.unwrap_or(Format::Text), &[Format::Text, Format::Json, Format::Csv])?;
    let plane = build_plane(cfg)?;
    let a = locate(&plane, point)?;
    let hood = match cfg.depth {
        DepthArg::Fast => plane.neighbourhood(a)?,
        _ => plane.neighbourhood_definitional(a)?,
    };
    let text = match format {
        Format::Json => {
            let v = serde_json::json!({
                "point": a.to_string(),
                "count": hood.len(),
                "neighbours": hood.iter().map(|&i| plane.point(i).to_string()).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&v).expect("listing serialization cannot fail") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("index,point\n");
            for &i in &hood {
                out += &format!("{},\"{}\"\n", i, plane.point(i));
            }
            out
        }
        _ => {
            let mut out = format!("# {} neighbours of {}\n", hood.len(), a);
            for &i in &hood {
                out += &format!("{}\n", plane.point(i));
            }
            out
        }
    };
    Ok((text, true))
}

fn cmd_hom(cfg: &RunConfig, point: &str, tag: HomTag) -> CmdResult {
    let format = check_format("hom", cfg.format.unwrap_or(Format::Text), &[Format::Text, Format::Json, Format::Dot])?;
    let plane = build_plane(cfg)?;
    let a = locate(&plane, point)?;
    let split = plane.neighbourhood_split(a, tag)?;
    let text = match format {
        Format::Json => export::hom_json(&plane, a, &split),
        Format::Dot => export::hom_dot(&plane, a, &split),
        _ => {
            let mut out = format!("{} of {} -> {}\nmerged ({}):\n", tag, a, split.image, split.merged.len());
            for &i in &split.merged {
                out += &format!("  {}\n", plane.point(i));
            }
            out += &format!("spread ({}):\n", split.spread.len());
            for (&i, &g) in &split.spread {
                out += &format!("  {} -> {}\n", plane.point(i), plane.pg().point(g));
            }
            out
        }
    };
    Ok((text, split.is_balanced(plane.order() as usize)))
}

fn cmd_export(cfg: &RunConfig, what: ExportKind, point: Option<&str>, tag: HomTag, color_types: bool) -> CmdResult {
    let plane = build_plane(cfg)?;
    let text = match what {
        ExportKind::Plane => {
            match check_format("export plane", cfg.format.unwrap_or(Format::Json), &[Format::Json, Format::Csv])? {
                Format::Csv => export::incidence_csv(&plane)?,
                _ => export::plane_json(&plane)?,
            }
        }
        ExportKind::Graph => {
            let format = check_format(
                "export graph",
                cfg.format.unwrap_or(Format::Dot),
                &[Format::Dot, Format::Json, Format::Csv],
            )?;
            let g = plane.neighbour_graph()?;
            match format {
                Format::Json => export::graph_json(&plane, &g),
                Format::Csv => export::graph_csv(&g),
                _ => export::graph_dot(&plane, &g, color_types),
            }
        }
        ExportKind::Hom => {
            let format = check_format("export hom", cfg.format.unwrap_or(Format::Json), &[Format::Json, Format::Dot])?;
            let text = point.ok_or_else(|| Failure::Usage("export hom requires --point".into()))?;
            let a = locate(&plane, text)?;
            let split = plane.neighbourhood_split(a, tag)?;
            match format {
                Format::Dot => export::hom_dot(&plane, a, &split),
                _ => export::hom_json(&plane, a, &split),
            }
        }
    };
    Ok((text, true))
}
