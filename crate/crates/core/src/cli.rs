//! Command-line interface: `build`, `certify`, `export` and `table`.
//!
//! Exit status is 0 on success, 1 when a certificate fails and 2 for usage
//! or input errors.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{comparator_bounds, theorem_len_bound, theorem_rop_bound, theorem_rop_decimal, Check, FormulaId};
use crate::corpus::{lookup, CORPUS};
use crate::error::Error;
use crate::grid::{parse_grid, random_grid, GridDiagram, GridFormat};
use crate::lattice::LatticeKnot;
use crate::laurent::LaurentPoly;
use crate::pipeline::{certify_knot, certify_run, run_pipeline, KnotInfo, PipelineRun, StageCertificate};
use crate::rope::{export_geometry, rope_metrics, smooth, GeometryFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "latticeknot", version, about = "Lattice knots and smooth ropes from grid diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Settle and fold grid diagrams, writing one lattice file per step.
    Build(BuildArgs),
    /// Check pipeline outputs against every applicable bound.
    Certify(CertifyArgs),
    /// Round pipeline outputs into smooth ropes and write their geometry.
    Export(ExportArgs),
    /// Print the crossing-number bounds for a range of c.
    Table(TableArgs),
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Corpus entry by name or alias, or `all`.
    #[arg(long, group = "source")]
    pub corpus: Option<String>,
    /// Grid diagram file.
    #[arg(long, group = "source")]
    pub input: Option<PathBuf>,
    /// Random diagrams, e.g. `g=7,seed=1,count=10`.
    #[arg(long, group = "source")]
    pub random: Option<RandomSpec>,
    /// Steps to run: `1`, `1-2` or `1-2-3`.
    #[arg(long, default_value = "1-2-3")]
    pub steps: Steps,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub source: SourceArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Certify lattice files written by `build` instead of rebuilding.
    #[arg(long, num_args = 1.., group = "source")]
    pub lattice: Vec<PathBuf>,
    /// Print the bound table for a range such as `c=3..16`.
    #[arg(long, group = "source")]
    pub table: Option<CRange>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
    /// Thickness tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryChoice {
    Polyline,
    ArcExact,
    Both,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Export lattice files written by `build` instead of rebuilding.
    #[arg(long, num_args = 1.., group = "source")]
    pub lattice: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "both")]
    pub geometry: GeometryChoice,
    /// Polyline samples per quarter circle (at least 8).
    #[arg(long, default_value_t = 64)]
    pub density: usize,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Range such as `c=3..16` (inclusive).
    #[arg(default_value = "c=3..16")]
    pub range: CRange,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub g: usize,
    pub seed: u64,
    pub count: u64,
}

impl FromStr for RandomSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut spec = RandomSpec { g: 0, seed: 0, count: 1 };
        for part in s.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(|| format!("expected key=value, got `{part}`"))?;
            let bad = |_| format!("bad value for {k}: `{v}`");
            match k.trim() {
                "g" => spec.g = v.trim().parse().map_err(bad)?,
                "seed" => spec.seed = v.trim().parse().map_err(bad)?,
                "count" => spec.count = v.trim().parse().map_err(bad)?,
                other => return Err(format!("unknown key `{other}`")),
            }
        }
        if spec.g < 2 {
            return Err("g must be at least 2".into());
        }
        Ok(spec)
    }
}

/// Number of steps run, from `1`, `1-2` or `1-2-3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Steps(pub u8);

impl FromStr for Steps {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "1" => Ok(Steps(1)),
            "1-2" => Ok(Steps(2)),
            "1-2-3" => Ok(Steps(3)),
            other => Err(format!("steps must be 1, 1-2 or 1-2-3, got `{other}`")),
        }
    }
}

/// Inclusive crossing-number range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CRange(pub u32, pub u32);

impl FromStr for CRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().strip_prefix("c=").unwrap_or(s.trim());
        let (a, b) = body.split_once("..").ok_or_else(|| format!("expected a range like c=3..16, got `{s}`"))?;
        let a: u32 = a.parse().map_err(|_| format!("bad range start `{a}`"))?;
        let b: u32 = b.trim_start_matches('=').parse().map_err(|_| format!("bad range end `{b}`"))?;
        if a < 3 || b < a {
            return Err(format!("range must satisfy 3 <= start <= end, got {a}..{b}"));
        }
        Ok(CRange(a, b))
    }
}

/// Usage or input problem; always exit status 2.
#[derive(Debug)]
struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<std::io::Error> for UsageError {
    fn from(e: std::io::Error) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult = Result<i32, UsageError>;

struct Input {
    stem: String,
    grid: GridDiagram,
    info: KnotInfo,
}

fn resolve_inputs(src: &SourceArgs) -> Result<Vec<Input>, UsageError> {
    if let Some(name) = &src.corpus {
        let entries: Vec<_> = if name == "all" {
            CORPUS.iter().collect()
        } else {
            vec![lookup(name).ok_or_else(|| UsageError(format!("unknown corpus entry `{name}`")))?]
        };
        return Ok(entries
            .into_iter()
            .map(|e| Input { stem: e.name.to_string(), grid: e.diagram(), info: KnotInfo::from(e) })
            .collect());
    }
    if let Some(path) = &src.input {
        let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        let grid = parse_grid(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "input".into());
        return Ok(vec![Input { info: KnotInfo { name: stem.clone(), ..Default::default() }, stem, grid }]);
    }
    if let Some(spec) = src.random {
        return (0..spec.count)
            .map(|i| {
                let seed = spec.seed + i;
                let stem = format!("random-g{}-seed{seed}", spec.g);
                let grid = random_grid(spec.g, seed).map_err(Error::from)?;
                Ok(Input { info: KnotInfo { name: stem.clone(), ..Default::default() }, stem, grid })
            })
            .collect();
    }
    Err(UsageError("no input: give --corpus, --input or --random".into()))
}

fn grid_line(d: &GridDiagram) -> String {
    d.to_text(GridFormat::Permutations).lines().collect::<Vec<_>>().join(" / ")
}

fn lattice_header(input: &Input, run: &PipelineRun, step: u8, alexander: &str) -> Vec<String> {
    let mut h = vec![
        format!("name: {}", input.info.name),
        format!("step: {step}"),
        format!("g: {}", run.size()),
        format!("grid: {}", grid_line(&run.grid)),
        format!("grid_alexander: {}", run.grid_alexander),
        format!("alexander: {alexander}"),
    ];
    if let Some(c) = input.info.crossing_number {
        h.push(format!("crossing_number: {c}"));
    }
    h
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), UsageError> {
    fs::create_dir_all(dir).map_err(|e| UsageError(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

fn cmd_build(args: &BuildArgs, out: &mut dyn Write) -> CliResult {
    let src = &args.source;
    let inputs = resolve_inputs(src)?;
    let mut summary = String::new();
    for input in &inputs {
        let run = run_pipeline(&input.grid, src.steps.0)?;
        let mut line = format!("{} g={}", input.stem, run.size());
        for s in &run.stages {
            let header = lattice_header(input, &run, s.step, &s.alexander);
            write_file(&src.out, &format!("{}.step{}.lattice", input.stem, s.step), &s.knot.to_text(&header))?;
            if let Some(report) = &s.fold {
                write_file(&src.out, &format!("{}.step{}.fold.json", input.stem, s.step), &to_json(report))?;
            }
            let _ = write!(line, " step{}: edges={} corners={}", s.step, s.census.total_edges(), s.census.corners);
        }
        let _ = write!(line, " alexander: {}", run.grid_alexander);
        writeln!(out, "{line}")?;
        summary.push_str(&line);
        summary.push('\n');
    }
    write_file(&src.out, "summary.txt", &summary)?;
    Ok(EXIT_OK)
}

fn stage_text(title: &str, c: &StageCertificate) -> String {
    let mut t = String::new();
    let census = &c.lattice.census;
    let _ = writeln!(t, "certificate {title} step {} (g={})", c.step, c.lattice.provenance.g);
    let _ = writeln!(
        t,
        "census: edges={} x={} y={} z={} sticks={}/{}/{} corners={}",
        census.total_edges(),
        census.x_edges,
        census.y_edges,
        census.z_edges,
        census.x_sticks,
        census.y_sticks,
        census.z_sticks,
        census.corners
    );
    if let Some(a) = &c.alexander {
        let _ = writeln!(t, "alexander: {a}");
    }
    if let Some(m) = &c.rope {
        let _ = writeln!(
            t,
            "rope: length={:.12} thickness={:.12} ropelength={:.12} self-distance>={:.12}",
            m.length, m.thickness_radius, m.ropelength, m.distance_lower_bound
        );
    }
    for check in c.all_checks() {
        let _ = writeln!(t, "{check}");
    }
    let _ = writeln!(t, "result: {}", if c.pass { "PASS" } else { "FAIL" });
    t
}

fn checks_text(title: &str, checks: &[Check]) -> String {
    let mut t = format!("certificate {title} run\n");
    for c in checks {
        let _ = writeln!(t, "{c}");
    }
    let pass = checks.iter().all(|c| c.pass);
    let _ = writeln!(t, "result: {}", if pass { "PASS" } else { "FAIL" });
    t
}

fn header_value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix('#'))
        .filter_map(|l| l.trim().split_once(':'))
        .find(|(k, _)| k.trim() == key)
        .map(|(_, v)| v.trim())
}

struct LatticeFile {
    stem: String,
    knot: LatticeKnot,
    step: u8,
    g: u32,
    reference: Option<LaurentPoly>,
    info: KnotInfo,
}

fn read_lattice_file(path: &Path) -> Result<LatticeFile, UsageError> {
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let knot = LatticeKnot::parse(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    fn need<T: FromStr>(text: &str, key: &str, path: &Path) -> Result<T, UsageError> {
        header_value(text, key)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| UsageError(format!("{}: missing or bad `# {key}:` header", path.display())))
    }
    let step: u8 = need(&text, "step", path)?;
    let g: u32 = need(&text, "g", path)?;
    if !(1..=3).contains(&step) {
        return Err(UsageError(format!("{}: step must be 1, 2 or 3", path.display())));
    }
    let reference = match header_value(&text, "grid_alexander") {
        Some(p) => Some(p.parse().map_err(|e: crate::error::InvariantError| UsageError(e.to_string()))?),
        None => None,
    };
    let name = header_value(&text, "name").unwrap_or("").to_string();
    let info = match lookup(&name) {
        Some(e) => KnotInfo::from(e),
        None => KnotInfo { name, ..Default::default() },
    };
    let stem = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let stem = stem.strip_suffix(".lattice").unwrap_or(&stem).to_string();
    Ok(LatticeFile { stem, knot, step, g, reference, info })
}

fn cmd_certify(args: &CertifyArgs, out: &mut dyn Write) -> CliResult {
    if !(args.tol > 0.0 && args.tol < 1.0) {
        return Err(UsageError(format!("tolerance must be in (0, 1), got {}", args.tol)));
    }
    if let Some(range) = args.table {
        out.write_all(bound_table(range, args.format).as_bytes())?;
        return Ok(EXIT_OK);
    }
    let dir = &args.source.out;
    let ext = match args.format {
        ReportFormat::Text => "txt",
        ReportFormat::Json => "json",
    };
    let mut all_pass = true;
    if !args.lattice.is_empty() {
        for path in &args.lattice {
            let f = read_lattice_file(path)?;
            let (cert, _) = certify_knot(&f.knot, f.step, f.g, f.reference.as_ref(), &f.info, args.tol)?;
            let body = match args.format {
                ReportFormat::Text => stage_text(&f.stem, &cert),
                ReportFormat::Json => to_json(&cert),
            };
            write_file(dir, &format!("{}.cert.{ext}", f.stem), &body)?;
            report_line(out, &path.display().to_string(), cert.pass, &cert.failures())?;
            all_pass &= cert.pass;
        }
        return Ok(if all_pass { EXIT_OK } else { EXIT_FAILED });
    }
    for input in resolve_inputs(&args.source)? {
        let run = run_pipeline(&input.grid, args.source.steps.0)?;
        let cert = certify_run(&run, &input.info, args.tol)?;
        for s in &cert.stages {
            let body = match args.format {
                ReportFormat::Text => stage_text(&input.stem, s),
                ReportFormat::Json => to_json(s),
            };
            write_file(dir, &format!("{}.step{}.cert.{ext}", input.stem, s.step), &body)?;
        }
        if !cert.theorem_checks.is_empty() {
            let body = match args.format {
                ReportFormat::Text => checks_text(&input.stem, &cert.theorem_checks),
                ReportFormat::Json => to_json(&cert.theorem_checks),
            };
            write_file(dir, &format!("{}.run.cert.{ext}", input.stem), &body)?;
        }
        report_line(out, &input.stem, cert.pass, &cert.failures())?;
        all_pass &= cert.pass;
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_FAILED })
}

fn report_line(out: &mut dyn Write, what: &str, pass: bool, failures: &[&Check]) -> std::io::Result<()> {
    writeln!(out, "{} {what}", if pass { "PASS" } else { "FAIL" })?;
    for f in failures {
        writeln!(out, "  {f}")?;
    }
    Ok(())
}

fn cmd_export(args: &ExportArgs, out: &mut dyn Write) -> CliResult {
    if args.density < 8 {
        return Err(UsageError(format!("density must be at least 8, got {}", args.density)));
    }
    let mut knots: Vec<(String, u8, LatticeKnot)> = Vec::new();
    if args.lattice.is_empty() {
        for input in resolve_inputs(&args.source)? {
            let run = run_pipeline(&input.grid, args.source.steps.0)?;
            knots.extend(run.stages.into_iter().map(|s| (format!("{}.step{}", input.stem, s.step), s.step, s.knot)));
        }
    } else {
        for path in &args.lattice {
            let f = read_lattice_file(path)?;
            knots.push((f.stem, f.step, f.knot));
        }
    }
    let dir = &args.source.out;
    for (stem, step, knot) in knots {
        let rope = smooth(&knot).map_err(Error::from)?;
        let m = rope_metrics(&rope);
        if matches!(args.geometry, GeometryChoice::Polyline | GeometryChoice::Both) {
            let doc = export_geometry(&rope, GeometryFormat::PolylineSampled, args.density).map_err(Error::from)?;
            write_file(dir, &format!("{stem}.polyline.txt"), &doc)?;
        }
        if matches!(args.geometry, GeometryChoice::ArcExact | GeometryChoice::Both) {
            let doc = export_geometry(&rope, GeometryFormat::ArcExact, args.density).map_err(Error::from)?;
            write_file(dir, &format!("{stem}.arcs.txt"), &doc)?;
        }
        let line = format!(
            "{stem} step={step} length={:.12} corners={} thickness={:.12} ropelength={:.12}",
            m.length, m.corner_count, m.thickness_radius, m.ropelength
        );
        write_file(dir, &format!("{stem}.metrics.txt"), &format!("{line}\n"))?;
        writeln!(out, "{line}")?;
    }
    Ok(EXIT_OK)
}

/// Bound table over an inclusive range of crossing numbers.
pub fn bound_table(range: CRange, format: ReportFormat) -> String {
    let mut t = String::new();
    if format == ReportFormat::Text {
        let _ = writeln!(
            t,
            "{:>4} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>14} {:>12}",
            "c", "len", "len_nap", "rop", "rop_decimal", "rop_nap", "prior_len", "cantarella", "diao_rop", "diao_len"
        );
    }
    for c in range.0..=range.1 {
        let len = theorem_len_bound(c, false).expect("c >= 3");
        let len_nap = theorem_len_bound(c, true).expect("c >= 3");
        let rop = theorem_rop_bound(c, false).expect("c >= 3");
        let rop_dec = theorem_rop_decimal(c).expect("c >= 3");
        let rop_nap = theorem_rop_bound(c, true).expect("c >= 3");
        let comp = comparator_bounds(c).expect("c >= 3");
        let by = |id: FormulaId| comp.iter().find(|b| b.formula_id == id).expect("comparator present").to_f64();
        let row = [
            len.min.to_f64(),
            len_nap.min.to_f64(),
            rop.min.to_f64(),
            rop_dec.min.to_f64(),
            rop_nap.min.to_f64(),
            by(FormulaId::PriorLen),
            by(FormulaId::CantarellaRop),
            by(FormulaId::DiaoRop),
            by(FormulaId::DiaoLen),
        ];
        match format {
            ReportFormat::Text => {
                let _ = write!(t, "{c:>4}");
                for (i, v) in row.iter().enumerate() {
                    let w = if i == 7 { 14 } else { 12 };
                    let _ = write!(t, " {v:>w$.3}");
                }
                t.push('\n');
            }
            ReportFormat::Json => {
                let rec = serde_json::json!({
                    "c": c,
                    "len": len,
                    "len_nap": len_nap,
                    "rop": rop,
                    "rop_decimal": rop_dec,
                    "rop_nap": rop_nap,
                    "comparators": comp,
                });
                t.push_str(&rec.to_string());
                t.push('\n');
            }
        }
    }
    t
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Build(a) => cmd_build(a, out),
        Command::Certify(a) => cmd_certify(a, out),
        Command::Export(a) => cmd_export(a, out),
        Command::Table(a) => {
            out.write_all(bound_table(a.range, a.format).as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!("g=7,seed=1,count=10".parse::<RandomSpec>().unwrap(), RandomSpec { g: 7, seed: 1, count: 10 });
        assert_eq!("g=5".parse::<RandomSpec>().unwrap().count, 1);
        assert!("g=1".parse::<RandomSpec>().is_err());
        assert!("h=3".parse::<RandomSpec>().is_err());
        assert_eq!("1-2".parse::<Steps>().unwrap(), Steps(2));
        assert!("2-3".parse::<Steps>().is_err());
        assert_eq!("c=3..16".parse::<CRange>().unwrap(), CRange(3, 16));
        assert_eq!("4..=9".parse::<CRange>().unwrap(), CRange(4, 9));
        assert!("c=2..5".parse::<CRange>().is_err());
    }

    #[test]
    fn table_rows() {
        let t = bound_table(CRange(3, 5), ReportFormat::Text);
        assert_eq!(t.lines().count(), 4);
        assert!(t.lines().nth(1).unwrap().contains("26.000"));
        let j = bound_table(CRange(3, 3), ReportFormat::Json);
        let v: serde_json::Value = serde_json::from_str(j.trim()).unwrap();
        assert_eq!(v["c"], 3);
    }

    #[test]
    fn usage_errors_exit_2() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["latticeknot", "frobnicate"], &mut o, &mut e), EXIT_USAGE);
        assert_eq!(run(["latticeknot", "build"], &mut o, &mut e), EXIT_USAGE);
        assert_eq!(run(["latticeknot", "build", "--corpus", "6_1"], &mut o, &mut e), EXIT_USAGE);
        assert_eq!(run(["latticeknot", "--help"], &mut o, &mut e), EXIT_OK);
    }
}
