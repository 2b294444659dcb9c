//! Command-line front end. `main.rs` only forwards to [`run`].

use std::ffi::OsString;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::construction::{
    BrouwerDescriptor, ConstructedBrouwer, Descriptor, DescriptorError, LayoutParams, SpernerDescriptor,
};
use crate::grid::{Coloring, Region, Triangle, UnitSquare};
use crate::qbf::{eval_qbf, parse_qdimacs, Prefix};
use crate::reduction::{brouwer_to_sperner, sperner_solution_to_brouwer};
use crate::render::{layout_boxes, render_ascii, render_svg, SvgOptions};
use crate::verify::{enumerate_solutions, enumerate_sperner_solutions, verify_construction, RoutingMode, SuiteOptions};
use crate::walker::{brouwer_walk_with, default_cap, sperner_walk_with, Outcome, TraceEntry, WalkConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_MALFORMED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "sperner-forge", version, about = "Build, walk, render and verify QBF-derived Brouwer and Sperner instances")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, env = "SPERNER_FORGE_JOBS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a QDIMACS formula by brute force.
    Eval {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Write the instance descriptor for a formula.
    Build {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Follow the path from the origin to its solution.
    Follow {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        cap: Option<u128>,
        /// Write one line per visited cell.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Walk the Sperner reduction instead.
        #[arg(long)]
        sperner: bool,
    },
    /// Draw a region as text or SVG.
    Render {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        region: Option<Region>,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Overlay the walk from the origin.
        #[arg(long)]
        walk: bool,
        /// Draw structure boxes down to this depth.
        #[arg(long)]
        boxes: Option<usize>,
    },
    /// Run the verification suite.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, conflicts_with = "trace_based")]
        exhaustive: bool,
        #[arg(long)]
        trace_based: bool,
        /// Also seed defects and require them to be caught.
        #[arg(long)]
        mutation: bool,
    },
    /// Wrap a Brouwer descriptor as its Sperner reduction.
    Reduce {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List every solution in a region.
    Solutions {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        region: Option<Region>,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ParamArgs {
    #[arg(long, default_value_t = 32)]
    pub lw: u32,
    #[arg(long, default_value_t = 32)]
    pub lh: u32,
    #[arg(long, default_value_t = 8)]
    pub m: u32,
    #[arg(long, default_value_t = 8)]
    pub g: u32,
}

impl From<ParamArgs> for LayoutParams {
    fn from(p: ParamArgs) -> Self {
        LayoutParams {
            lw: p.lw,
            lh: p.lh,
            m: p.m,
            g: p.g,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Malformed(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("verification failed")]
    VerifyFailed,
    #[error("walk cap of {0} steps exceeded")]
    CapExceeded(u128),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Malformed(_) => EXIT_MALFORMED,
            CliError::VerifyFailed => EXIT_VERIFY,
            CliError::CapExceeded(_) => EXIT_CAP,
        }
    }
}

impl From<DescriptorError> for CliError {
    fn from(e: DescriptorError) -> Self {
        CliError::Malformed(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn stdout_err(source: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn write_out(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => out.write_all(text.as_bytes()).map_err(stdout_err),
    }
}

fn load(path: &Path) -> Result<Descriptor, CliError> {
    Ok(Descriptor::parse(&read(path)?)?)
}

fn emit(out: &mut dyn Write, json: bool, value: serde_json::Value, text: impl FnOnce() -> String) -> Result<(), CliError> {
    if json {
        writeln!(out, "{value}").map_err(stdout_err)
    } else {
        let t = text();
        if t.is_empty() {
            Ok(())
        } else {
            writeln!(out, "{t}").map_err(stdout_err)
        }
    }
}

/// Which terminal a square is.
fn classify(inst: &ConstructedBrouwer, s: UnitSquare) -> &'static str {
    let t = inst.terminals();
    if s == t.yes {
        "YES"
    } else if s == t.no {
        "NO"
    } else if s == t.aux_source {
        "AUX"
    } else {
        "OTHER"
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    execute(&cli, &mut out, &mut std::io::stderr())
}

/// Like [`run`], with output captured in `out` and diagnostics in `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, out, err),
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            }
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Some(n) = cli.jobs {
        // Fails only if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let res = dispatch(cli, out);
    let _ = out.flush();
    match res {
        Ok(()) => EXIT_OK,
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string(), "exit": e.exit_code() }));
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            e.exit_code()
        }
    }
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let json = cli.json;
    match &cli.command {
        Command::Eval { input } => {
            let f = parse_qdimacs(&read(input)?).map_err(|e| CliError::Malformed(e.to_string()))?;
            let v = eval_qbf(&f, &Prefix::empty()).map_err(|e| CliError::Malformed(e.to_string()))?;
            emit(out, json, json!({ "value": v }), || if v { "TRUE" } else { "FALSE" }.to_string())?;
        }
        Command::Build { input, output, params } => {
            let f = parse_qdimacs(&read(input)?).map_err(|e| CliError::Malformed(e.to_string()))?;
            let d = BrouwerDescriptor::new(f, (*params).into());
            let inst = d.build()?;
            let text = Descriptor::Brouwer(d).to_json()?;
            write_out(out, output.as_deref(), &text)?;
            if output.is_some() {
                let t = inst.terminals();
                emit(
                    out,
                    json,
                    json!({ "m": inst.size_param(), "side": inst.side().to_string(),
                            "yes": t.yes.anchor, "no": t.no.anchor, "aux_source": t.aux_source.anchor }),
                    || format!("domain 2^{} x 2^{}; YES at {}, NO at {}", inst.size_param(), inst.size_param(), t.yes, t.no),
                )?;
            }
        }
        Command::Follow {
            input,
            cap,
            trace,
            sperner,
        } => follow(out, json, &load(input)?, *cap, trace.as_deref(), *sperner)?,
        Command::Render {
            input,
            region,
            format,
            output,
            walk,
            boxes,
        } => {
            let d = load(input)?;
            let inst = d.brouwer().build()?;
            let text = if d.is_sperner() {
                let s = brouwer_to_sperner(&inst);
                let region = region.unwrap_or_else(|| Region::full(s.size_param()));
                draw(&s, region, *format, SvgOptions::default())?
            } else {
                let region = region.unwrap_or_else(|| Region::full(inst.size_param()));
                let mut opts = SvgOptions::default();
                if *walk {
                    let cfg = WalkConfig::new(default_cap(inst.size_param())).with_trace(crate::walker::TraceMode::Full);
                    let w = brouwer_walk_with(&inst, &cfg, None);
                    opts.trace = w.trace.unwrap_or_default().into_iter().map(|e| e.cell).collect();
                }
                if let Some(depth) = boxes {
                    opts.boxes = layout_boxes(&inst, *depth);
                }
                draw(&inst, region, *format, opts)?
            };
            write_out(out, output.as_deref(), &text)?;
        }
        Command::Verify {
            input,
            exhaustive: _,
            trace_based,
            mutation,
        } => {
            let d = load(input)?;
            let inst = d.brouwer().build()?;
            let opts = SuiteOptions {
                mode: if *trace_based {
                    RoutingMode::TraceBased
                } else {
                    RoutingMode::Exhaustive
                },
                mutation: *mutation,
            };
            let report = verify_construction(&inst, opts).map_err(|e| CliError::Malformed(e.to_string()))?;
            emit(out, json, serde_json::to_value(&report).expect("report serializes"), || {
                report.to_string().trim_end().to_string()
            })?;
            if !report.passed() {
                return Err(CliError::VerifyFailed);
            }
        }
        Command::Reduce { input, output } => {
            let d = load(input)?;
            let s = Descriptor::Sperner(SpernerDescriptor {
                brouwer: d.brouwer().clone(),
            });
            s.brouwer().build()?;
            write_out(out, output.as_deref(), &s.to_json()?)?;
        }
        Command::Solutions { input, region } => {
            let d = load(input)?;
            let inst = d.brouwer().build()?;
            let malformed = |e: crate::grid::GridError| CliError::Usage(e.to_string());
            if d.is_sperner() {
                let s = brouwer_to_sperner(&inst);
                let region = region.unwrap_or_else(|| Region::full(s.size_param()));
                let sols: Vec<Triangle> = enumerate_sperner_solutions(&s, region).map_err(malformed)?;
                let list: Vec<_> = sols.iter().map(|t| json!({ "kind": t.kind.name(), "anchor": t.anchor })).collect();
                emit(out, json, json!({ "solutions": list }), || {
                    sols.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("\n")
                })?;
            } else {
                let region = region.unwrap_or_else(|| Region::full(inst.size_param()));
                let sols = enumerate_solutions(&inst, region).map_err(malformed)?;
                let list: Vec<_> = sols
                    .iter()
                    .map(|s| json!({ "anchor": s.anchor, "terminal": classify(&inst, *s) }))
                    .collect();
                emit(out, json, json!({ "solutions": list }), || {
                    sols.iter()
                        .map(|s| format!("{s} {}", classify(&inst, *s)))
                        .collect::<Vec<_>>()
                        .join("\n")
                })?;
            }
        }
    }
    Ok(())
}

fn draw<I: Coloring + ?Sized>(inst: &I, region: Region, format: Format, opts: SvgOptions) -> Result<String, CliError> {
    let r = match format {
        Format::Ascii => render_ascii(inst, region),
        Format::Svg => render_svg(inst, region, &opts),
    };
    r.map_err(|e| CliError::Usage(e.to_string()))
}

fn follow(out: &mut dyn Write, json: bool, d: &Descriptor, cap: Option<u128>, trace: Option<&Path>, sperner: bool) -> Result<(), CliError> {
    let inst = d.brouwer().build()?;
    let mut sink = match trace {
        Some(p) => Some(BufWriter::new(fs::File::create(p).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        })?)),
        None => None,
    };
    let mut io_err: Option<std::io::Error> = None;
    let mut record = |line: String| {
        if let Some(w) = sink.as_mut() {
            if let Err(e) = writeln!(w, "{line}") {
                io_err.get_or_insert(e);
            }
        }
    };
    let (steps, cell, square, cap_used, outcome_err) = if sperner || d.is_sperner() {
        let s = brouwer_to_sperner(&inst);
        let cap = cap.unwrap_or_else(|| default_cap(s.size_param()));
        let mut obs = |e: &TraceEntry<Triangle>| record(e.to_string());
        let r = sperner_walk_with(&s, &WalkConfig::new(cap), Some(&mut obs));
        match r.outcome {
            Outcome::Solution(t) => (r.steps, t.to_string(), Some(sperner_solution_to_brouwer(t)), cap, None),
            Outcome::CapExceeded => (r.steps, String::new(), None, cap, None),
            Outcome::Failed(e) => (r.steps, String::new(), None, cap, Some(e.to_string())),
        }
    } else {
        let cap = cap.unwrap_or_else(|| default_cap(inst.size_param()));
        let mut obs = |e: &TraceEntry<UnitSquare>| record(e.to_string());
        let r = brouwer_walk_with(&inst, &WalkConfig::new(cap), Some(&mut obs));
        match r.outcome {
            Outcome::Solution(s) => (r.steps, s.to_string(), Some(s), cap, None),
            Outcome::CapExceeded => (r.steps, String::new(), None, cap, None),
            Outcome::Failed(e) => (r.steps, String::new(), None, cap, Some(e.to_string())),
        }
    };
    if let Some(w) = sink.as_mut() {
        if let Err(e) = w.flush() {
            io_err.get_or_insert(e);
        }
    }
    if let (Some(e), Some(p)) = (io_err, trace) {
        return Err(CliError::Io {
            path: p.to_path_buf(),
            source: e,
        });
    }
    if let Some(e) = outcome_err {
        return Err(CliError::Malformed(format!("walk failed: {e}")));
    }
    let Some(square) = square else {
        return Err(CliError::CapExceeded(cap_used));
    };
    let class = classify(&inst, square);
    emit(
        out,
        json,
        json!({ "endpoint": cell, "square": square.anchor, "steps": steps.to_string(), "terminal": class }),
        || format!("endpoint {cell}\nsteps {steps}\n{class} terminal"),
    )
}
