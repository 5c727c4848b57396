use std::fmt::Display;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use packdens_core::generators::GeneratorError;
use packdens_core::pointfile::{parse_point_file, write_point_file, PointFile};
use packdens_core::render::{render_svg, RenderOptions};
use packdens_core::saturation::{saturate_detailed, ConfigError};
use packdens_core::{
    analyze, certify, delaunay, find_witness, generate, validate, AnalysisOptions, Configuration, GeneratorKind,
    GeneratorSpec, Report, Scalar, Window,
};

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "packdens", version, about = "Exact circle-packing density certification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a configuration and print it as a point file.
    Generate(GenerateArgs),
    /// Check that every point is in the window and pairs are at least 2 apart.
    Validate(InputArgs),
    /// Insert free spots until the window is saturated.
    Saturate(InputArgs),
    /// Print the Delaunay edge list.
    Triangulate(InputArgs),
    /// Report densities of an already saturated configuration.
    Analyze(AnalyzeArgs),
    /// Saturate, triangulate, verify and bound-check.
    Certify(AnalyzeArgs),
    /// Draw the triangulation as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Point file; standard input when omitted or `-`.
    input: Option<PathBuf>,
    /// Write output here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Analyse only triangles whose vertices are this deep inside the window
    /// (0 = every triangle). When none qualify, triangles with circumcentre
    /// inside the window are used.
    #[arg(long, default_value = "4", value_parser = parse_scalar)]
    interior_margin: Scalar,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Hex,
    Square,
    PerturbedHex,
    Dart,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value = "2", value_parser = parse_scalar)]
    spacing: Scalar,
    /// `xmin,ymin,xmax,ymax`
    #[arg(long, default_value = "0,0,20,20", value_parser = parse_window, allow_hyphen_values = true)]
    window: Window,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum per-point offset for `perturbed-hex`.
    #[arg(long, default_value = "0", value_parser = parse_scalar)]
    perturb: Scalar,
    /// Stop dart throwing after this many points.
    #[arg(long)]
    max_points: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    io: InputArgs,
    #[arg(long)]
    no_circles: bool,
    #[arg(long)]
    no_edges: bool,
    #[arg(long)]
    circumcircles: bool,
    #[arg(long)]
    no_heat: bool,
    #[arg(long)]
    no_window: bool,
}

fn parse_scalar(s: &str) -> Result<Scalar, String> {
    s.trim().parse().map_err(|e| format!("{e}"))
}

fn parse_window(s: &str) -> Result<Window, String> {
    let v = s.split(',').map(parse_scalar).collect::<Result<Vec<_>, _>>()?;
    let [a, b, c, d]: [Scalar; 4] = v.try_into().map_err(|_| "expected xmin,ymin,xmax,ymax".to_string())?;
    Window::new(a, b, c, d).map_err(|e| e.to_string())
}

/// Error carrying the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Display) -> Failure {
    Failure { code: EXIT_INPUT, message: message.to_string() }
}

type CmdResult = Result<u8, Failure>;

fn read_input(path: &Option<PathBuf>) -> Result<PointFile, Failure> {
    let text = match path.as_deref() {
        None => read_stdin()?,
        Some(p) if p.as_os_str() == "-" => read_stdin()?,
        Some(p) => std::fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display())))?,
    };
    parse_point_file(&text).map_err(input_error)
}

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(input_error)?;
    Ok(s)
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(input_error)
        }
    }
}

/// Validation with point indices translated to source lines.
fn configuration(file: PointFile) -> Result<Configuration, Failure> {
    let lines = file.lines;
    validate(file.points, file.window).map_err(|e| match e {
        ConfigError::PairTooClose { first, second, distance_squared } => input_error(format!(
            "PairTooClose: points on lines {} and {} are too close (distance² = {distance_squared} < 4)",
            lines[first], lines[second]
        )),
        ConfigError::OutOfWindow { index } => {
            input_error(format!("OutOfWindow: point on line {} lies outside the window", lines[index]))
        }
        other => input_error(other),
    })
}

fn cmd_generate(a: GenerateArgs) -> CmdResult {
    let kind = match a.kind {
        Kind::Hex => GeneratorKind::Hexagonal,
        Kind::Square => GeneratorKind::Square,
        Kind::PerturbedHex => GeneratorKind::PerturbedHex,
        Kind::Dart => GeneratorKind::RandomDart,
    };
    let spec = GeneratorSpec {
        kind,
        window: a.window,
        spacing: a.spacing,
        perturbation: a.perturb,
        seed: a.seed,
        max_points: a.max_points,
    };
    let c = generate(&spec).map_err(|e| match e {
        GeneratorError::InvalidSpec(_) | GeneratorError::PerturbationTooLarge(_) => input_error(e),
    })?;
    write_output(&a.output, &write_point_file(c.window(), c.points(), &[]))?;
    Ok(EXIT_OK)
}

fn cmd_validate(a: InputArgs) -> CmdResult {
    let c = configuration(read_input(&a.input)?)?;
    write_output(&a.output, &format!("ok: {} points\n", c.len()))?;
    Ok(EXIT_OK)
}

fn cmd_saturate(a: InputArgs) -> CmdResult {
    let c = configuration(read_input(&a.input)?)?;
    let original = c.len();
    let sat = saturate_detailed(&c);
    let mut notes = vec![None; sat.configuration.len()];
    for (k, w) in sat.inserted.iter().enumerate() {
        let clearance = w.clearance_squared.as_ref().map_or("unbounded".to_string(), |s| s.to_exact_string());
        notes[original + k] = Some(format!("inserted {}: clearance² = {clearance}", k + 1));
    }
    let text = write_point_file(sat.configuration.window(), sat.configuration.points(), &notes);
    write_output(&a.output, &text)?;
    Ok(EXIT_OK)
}

fn cmd_triangulate(a: InputArgs) -> CmdResult {
    let c = configuration(read_input(&a.input)?)?;
    let t = delaunay(c.points()).map_err(input_error)?;
    let edges = t.edges();
    let mut out = format!("# {} points, {} triangles, {} edges\n", t.points.len(), t.triangles.len(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    write_output(&a.output, &out)?;
    Ok(EXIT_OK)
}

fn finish_report(report: Report, output: &Option<PathBuf>) -> CmdResult {
    write_output(output, &report.to_json())?;
    if report.certified() {
        return Ok(EXIT_OK);
    }
    eprintln!("failed checks: {}", report.failed_checks.join(", "));
    Ok(EXIT_VIOLATION)
}

fn cmd_analyze(a: AnalyzeArgs) -> CmdResult {
    let c = configuration(read_input(&a.io.input)?)?;
    if let Some(w) = find_witness(&c) {
        let clearance = w.clearance_squared.as_ref().map_or("unbounded".to_string(), |s| s.to_exact_string());
        eprintln!(
            "not saturated: witness ({}, {}) with clearance² = {clearance}",
            w.location.x.to_exact_string(),
            w.location.y.to_exact_string()
        );
    }
    let opts = AnalysisOptions { interior_margin: a.interior_margin };
    let report = analyze(&c, &opts).map_err(input_error)?;
    finish_report(report, &a.io.output)
}

fn cmd_certify(a: AnalyzeArgs) -> CmdResult {
    let c = configuration(read_input(&a.io.input)?)?;
    let opts = AnalysisOptions { interior_margin: a.interior_margin };
    let report = certify(&c, &opts).map_err(input_error)?;
    finish_report(report, &a.io.output)
}

fn cmd_render(a: RenderArgs) -> CmdResult {
    let c = configuration(read_input(&a.io.input)?)?;
    let t = delaunay(c.points()).map_err(input_error)?;
    let opts = RenderOptions {
        circles: !a.no_circles,
        edges: !a.no_edges,
        circumcircles: a.circumcircles,
        heat: !a.no_heat,
        window: !a.no_window,
    };
    write_output(&a.io.output, &render_svg(&t, c.window(), opts))?;
    Ok(EXIT_OK)
}

fn configure_threads() {
    if let Some(n) = std::env::var("PACKDENS_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            // Fails only if a pool already exists, which cannot happen here.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Saturate(a) => cmd_saturate(a),
        Command::Triangulate(a) => cmd_triangulate(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Render(a) => cmd_render(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    configure_threads();
    let code = match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(code)) => code,
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message);
            f.code
        }
        Err(_) => EXIT_INPUT,
    };
    ExitCode::from(code)
}
