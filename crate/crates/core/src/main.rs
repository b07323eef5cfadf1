use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use foxcolor::codec::{self, corpus, ColoredDiagramDoc, Metadata, TraceFile};
use foxcolor::coloring::{self, lower_bound, FoxColoring, MIN_COLOR_TABLE};
use foxcolor::reducer::{self, ReduceConfig, ReduceError, ReductionReport, SearchLimits, P};
use foxcolor::{ColoredDiagram, Diagram, Execution};

#[derive(Parser)]
#[command(name = "foxcolor", version, about = "Fox colorings of knot diagrams and a six-color reducer mod 17")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Coloring space of a diagram modulo a prime.
    Color {
        /// PD text file, JSON document, or builtin corpus name.
        file: String,
        #[arg(long)]
        p: u64,
    },
    /// Reduce a 17-colored diagram to the palette {0,2,3,4,8,12}.
    Reduce {
        file: String,
        /// JSON array of arc colors, or a document whose coloring is used.
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Depth cap of the fallback search.
        #[arg(long, env = "FOXCOLOR_SEARCH_DEPTH")]
        depth: Option<usize>,
        /// Where to write the JSON reduction report.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Where to write the replayable trace.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Where to write the reduced diagram as a JSON document.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Disable parallel search.
        #[arg(long)]
        sequential: bool,
    },
    /// Check a colored diagram: structure, coloring and Euler characteristic.
    Verify { file: String },
    /// Print the special-case tables and the minimal color numbers.
    Tables,
    /// Determinant, colorability and coloring counts for primes up to 17.
    Invariants { file: String },
    /// Replay a trace, checking every checksum.
    Replay { trace: PathBuf },
}

/// A failed command: exit code and a machine-readable error.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

fn invalid(kind: &'static str, e: impl ToString) -> Failure {
    Failure { code: 1, kind, message: e.to_string() }
}

fn failed(kind: &'static str, e: impl ToString) -> Failure {
    Failure { code: 2, kind, message: e.to_string() }
}

struct Input {
    name: String,
    diagram: Diagram,
    coloring: Option<FoxColoring>,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| invalid("io", format!("{}: {e}", path.display())))
}

fn load(arg: &str) -> Result<Input, Failure> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(entry) = corpus::entry(arg) {
            let coloring = entry.coloring17.clone().map(|colors| FoxColoring::new(P, colors));
            return Ok(Input { name: entry.name.to_string(), diagram: entry.diagram(), coloring });
        }
    }
    let text = read(path)?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    if text.trim_start().starts_with('{') {
        let doc = ColoredDiagramDoc::from_json(&text).map_err(|e| invalid("document", e))?;
        let diagram = doc.diagram().map_err(|e| invalid("document", e))?;
        let coloring = if doc.coloring.is_empty() {
            None
        } else {
            Some(doc.fox_coloring(&diagram).map_err(|e| invalid("coloring", e))?)
        };
        let name = if doc.metadata.name.is_empty() { name } else { doc.metadata.name.clone() };
        return Ok(Input { name, diagram, coloring });
    }
    let diagram = codec::parse_pd(&text).map_err(|e| invalid("pd", e))?;
    Ok(Input { name, diagram, coloring: None })
}

fn coloring_file(path: &Path, d: &Diagram) -> Result<FoxColoring, Failure> {
    let text = read(path)?;
    if let Ok(colors) = serde_json::from_str::<Vec<u64>>(&text) {
        return Ok(FoxColoring::new(P, colors));
    }
    let doc = ColoredDiagramDoc::from_json(&text).map_err(|e| invalid("coloring", e))?;
    doc.fox_coloring(d).map_err(|e| invalid("coloring", e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| failed("io", format!("{}: {e}", path.display())))
}

fn palette_text(palette: &std::collections::BTreeSet<u64>) -> String {
    let items: Vec<String> = palette.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn color(file: &str, p: u64) -> Result<(), Failure> {
    let input = load(file)?;
    let space = coloring::solve_colorings(&input.diagram, p).map_err(|e| invalid("modulus", e))?;
    println!("dimension: {}", space.dimension);
    println!("count: {}", space.count());
    match space.sample_nontrivial() {
        Some(col) => println!("sample: {}", col.colors.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")),
        None => println!("sample: none"),
    }
    Ok(())
}

#[derive(Serialize)]
struct ReportFile<'a> {
    name: &'a str,
    #[serde(flatten)]
    report: &'a ReductionReport,
    trace: Option<String>,
}

#[allow(clippy::too_many_arguments)]
fn reduce(
    file: &str,
    coloring: Option<PathBuf>,
    depth: Option<usize>,
    report: Option<PathBuf>,
    trace: Option<PathBuf>,
    out: Option<PathBuf>,
    sequential: bool,
) -> Result<(), Failure> {
    let input = load(file)?;
    let col = match (coloring, input.coloring) {
        (Some(path), _) => coloring_file(&path, &input.diagram)?,
        (None, Some(col)) => col,
        (None, None) => corpus::default_coloring(&input.diagram, P).map_err(|e| invalid("coloring", e))?,
    };
    if col.p != P {
        return Err(invalid("modulus", ReduceError::WrongModulus(col.p)));
    }
    let cd = ColoredDiagram::from_fox(input.diagram, &col).map_err(|e| invalid("coloring", e))?;
    let metadata = Metadata { name: input.name.clone(), provenance: String::new() };
    // Through the document form, so the trace replays from what it stores.
    let start = codec::serialize(&cd, metadata.clone()).colored().map_err(|e| invalid("coloring", e))?;
    let mut limits = SearchLimits::default();
    if let Some(depth) = depth {
        limits.depth = depth;
    }
    let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
    let config = ReduceConfig { limits, exec, ..Default::default() };
    let result = reducer::reduce_colored(&start, config).map_err(|e| match e {
        ReduceError::TrivialColoring | ReduceError::WrongModulus(_) | ReduceError::InvalidColoring => {
            invalid("coloring", e)
        }
        e => failed("reduction", e),
    })?;
    for s in &result.report.steps {
        println!(
            "step {:>2}  color {:>2}  moves {:>5}  crossings {:>5}  palette {}",
            s.step,
            s.color,
            s.moves,
            s.crossings,
            palette_text(&s.palette)
        );
    }
    println!("final palette: {}", palette_text(&result.report.final_palette));
    if let Some(path) = &trace {
        let tf = TraceFile::new(&start, result.trace.clone(), &result.diagram, metadata.clone());
        write(path, &serde_json::to_string(&tf).expect("serializable"))?;
    }
    if let Some(path) = &report {
        let rf = ReportFile {
            name: &input.name,
            report: &result.report,
            trace: trace.as_ref().map(|p| p.display().to_string()),
        };
        write(path, &serde_json::to_string_pretty(&rf).expect("serializable"))?;
    }
    if let Some(path) = &out {
        write(path, &codec::serialize(&result.diagram, metadata).to_json())?;
    }
    Ok(())
}

fn verify(file: &str) -> Result<(), Failure> {
    let input = load(file)?;
    let col = input.coloring.ok_or_else(|| invalid("coloring", "input has no coloring"))?;
    let report = input.diagram.validate();
    let valid = coloring::validate_coloring(&input.diagram, &col).map_err(|e| invalid("coloring", e))?;
    let chi = input.diagram.euler_characteristic().map_err(|e| failed("verification", e))?;
    println!("diagram: {}", if report.is_valid() { "ok".to_string() } else { format!("{:?}", report.violations) });
    println!("coloring mod {}: {}", col.p, if valid { "valid" } else { "invalid" });
    println!("euler characteristic: {chi}");
    println!("palette: {}", palette_text(&coloring::palette(&col)));
    if !report.is_valid() || !valid || chi != 2 {
        return Err(failed("verification", "diagram, coloring or Euler characteristic check failed"));
    }
    Ok(())
}

fn tables() {
    print!("{}", reducer::tables::render(&reducer::special_case_tables()));
    println!("p | C_p");
    for (p, _) in MIN_COLOR_TABLE {
        println!("{p} | {}", lower_bound(p));
    }
}

fn invariants(file: &str) -> Result<(), Failure> {
    let input = load(file)?;
    let d = &input.diagram;
    let det = coloring::determinant(d).map_err(|e| invalid("diagram", e))?;
    println!("determinant: {det}");
    for p in [3, 5, 7, 11, 13, 17] {
        let count = coloring::count_colorings(d, p).map_err(|e| invalid("diagram", e))?;
        let colorable = coloring::is_p_colorable(d, p).map_err(|e| invalid("diagram", e))?;
        println!("p = {p:>2}: colorable {colorable}, colorings {count}");
    }
    Ok(())
}

fn replay(path: &Path) -> Result<(), Failure> {
    let tf: TraceFile = serde_json::from_str(&read(path)?).map_err(|e| invalid("trace", e))?;
    let end = tf.replay().map_err(|e| failed("replay", e))?;
    println!("replayed {} moves", tf.trace.len());
    println!("final checksum: {}", end.checksum());
    println!("final palette: {}", palette_text(&end.palette()));
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Color { file, p } => color(&file, p),
        Cmd::Reduce { file, coloring, depth, report, trace, out, sequential } => {
            reduce(&file, coloring, depth, report, trace, out, sequential)
        }
        Cmd::Verify { file } => verify(&file),
        Cmd::Tables => {
            tables();
            Ok(())
        }
        Cmd::Invariants { file } => invariants(&file),
        Cmd::Replay { trace } => replay(&trace),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let err: BTreeMap<&str, serde_json::Value> =
                BTreeMap::from([("error", json!(f.kind)), ("message", json!(f.message))]);
            eprintln!("{}", serde_json::to_string(&err).expect("serializable"));
            ExitCode::from(f.code)
        }
    }
}
