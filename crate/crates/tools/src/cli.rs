//! Command-line front door: parse instance files, dispatch analyses and
//! solvers, and emit each result as an aligned-text table or as JSON.
//!
//! Both renderings are produced from the same report value, so they always
//! carry identical values. Exit codes: 0 when the command succeeds and any
//! checked property holds; 1 when the command ran but found violations,
//! counterexamples, or a non-converging iteration; 2 on input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::format::{parse_instance, FormatError, LabInstance};
use crate::lab;
use crate::report;
use qpmet_core::funcspec::FunctionSpec;
use qpmet_core::hyperspace::hausdorff;
use qpmet_core::multimaps::{approx_value, classify_all, level_sets, SetValuedMap, ValueKind};
use qpmet_core::solvers::{
    endpoint_solve, fixed_point_solve, picard_solve, startpoint_solve, DescentOptions,
    OrbitOptions, TerminalStatus,
};
use qpmet_core::{parse_rational, FiniteQuasiSpace, PointSet, Rational, Side};

#[derive(Parser)]
#[command(
    name = "qpmet",
    version,
    about = "Exact toolkit for finite asymmetric-distance spaces: validation, \
             set distances, point classification, and certified iterations"
)]
struct Cli {
    /// Report rendering
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an instance file and check the distance axioms
    Validate { file: PathBuf },
    /// Classify every point under the instance's map; report approximate
    /// values and level sets
    Analyze {
        file: PathBuf,
        /// Deepest level set (membership below 1/n) to compute
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Asymmetric set distance between two comma-separated label sets
    Hausdorff {
        file: PathBuf,
        left: String,
        right: String,
    },
    /// Run a certified iteration from a seed point
    #[command(subcommand)]
    Solve(Solve),
    /// Seeded property suites with counterexample shrinking
    #[command(subcommand)]
    Lab(Lab),
    /// Built-in worked instances
    #[command(subcommand)]
    Corpus(Corpus),
}

#[derive(Args)]
struct SolveCommon {
    file: PathBuf,
    /// Label of the starting point
    #[arg(long)]
    seed_point: String,
    /// Contraction factor for feasibility bounds; also the linear
    /// comparison function when the file carries none
    #[arg(long, default_value = "1/2", value_parser = rational_arg)]
    c: Rational,
    /// Step budget override
    #[arg(long)]
    max_iter: Option<usize>,
}

#[derive(Subcommand)]
enum Solve {
    /// Descend start values to a point whose whole image sits at forward
    /// distance zero
    Startpoint(SolveCommon),
    /// Descend end values (the reversed-order dual of startpoint)
    Endpoint(SolveCommon),
    /// Symmetric descent to a point that is simultaneously fixed, a
    /// startpoint, and an endpoint
    Fixed {
        #[command(flatten)]
        common: SolveCommon,
        /// Admit a successor y of x by the backward distance d(y, x) alone
        /// instead of the two-sided min(d(x, y), d(y, x))
        #[arg(long)]
        strict_feasibility: bool,
    },
    /// Weighted orbit of a single-valued map under a comparison bound
    Picard {
        #[command(flatten)]
        common: SolveCommon,
        /// Which orientation the step weights control
        #[arg(long, value_enum, default_value_t = Mode::Forward)]
        mode: Mode,
        /// Accept heuristically certified comparison functions
        #[arg(long)]
        accept_heuristic: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Forward,
    Backward,
    Symmetric,
}

#[derive(Subcommand)]
enum Lab {
    /// Run one suite
    Run {
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap on generated point counts (suite default when omitted)
        #[arg(long)]
        size: Option<usize>,
    },
    /// List the registered suites
    List,
}

#[derive(Subcommand)]
enum Corpus {
    /// Print a corpus instance in the input file format
    Export {
        id: String,
        /// Write to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the corpus identifiers
    List,
}

fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|err| err.to_string())
}

/// Parses the command line and runs it. Input errors of every stripe —
/// unreadable files, grammar violations, unknown labels, unmet method
/// preconditions — exit 2 with a message on stderr.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(cli.output, file),
        Command::Analyze { file, nmax } => cmd_analyze(cli.output, file, *nmax),
        Command::Hausdorff { file, left, right } => cmd_hausdorff(cli.output, file, left, right),
        Command::Solve(solve) => cmd_solve(cli.output, solve),
        Command::Lab(Lab::Run {
            suite,
            trials,
            seed,
            size,
        }) => cmd_lab_run(cli.output, suite, *trials, *seed, *size),
        Command::Lab(Lab::List) => cmd_lab_list(cli.output),
        Command::Corpus(Corpus::Export { id, out }) => cmd_corpus_export(id, out.as_deref()),
        Command::Corpus(Corpus::List) => cmd_corpus_list(cli.output),
    }
}

fn emit(output: Output, value: &Value) {
    let text = match output {
        Output::Text => report::render_text(value),
        Output::Json => report::render_json(value),
    };
    print!("{text}");
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|err| format!("{}: {err}", path.display()))
}

fn load_instance(path: &Path) -> Result<LabInstance, String> {
    parse_instance(&read_file(path)?).map_err(|err| err.to_string())
}

/// The set-valued map the instance offers: the explicit one when present,
/// otherwise the single-valued map viewed through singleton images.
fn instance_set_map(instance: &LabInstance) -> Result<SetValuedMap, String> {
    if let Some(map) = &instance.set_map {
        return Ok(map.clone());
    }
    if let Some(map) = &instance.single_map {
        return Ok(map.as_set_valued());
    }
    Err(String::from("the instance carries no map (add F or f)"))
}

fn body_object(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(map) => map,
        _ => unreachable!("report converters yield objects"),
    }
}

fn cmd_validate(output: Output, file: &Path) -> Result<ExitCode, String> {
    let text = read_file(file)?;
    match parse_instance(&text) {
        Ok(instance) => {
            let space = &instance.space;
            let mut body = Map::new();
            body.insert("valid".into(), json!(true));
            body.insert("points".into(), json!(space.len()));
            body.insert("t0".into(), json!(space.is_t0()));
            body.insert("t0_required".into(), json!(instance.require_t0));
            body.insert("set_map".into(), json!(instance.set_map.is_some()));
            body.insert("single_map".into(), json!(instance.single_map.is_some()));
            body.insert(
                "weights".into(),
                json!(instance
                    .single_map
                    .as_ref()
                    .is_some_and(|map| map.has_weights())),
            );
            body.insert("comparison".into(), json!(instance.comparison.is_some()));
            body.insert("modulus".into(), json!(instance.modulus.is_some()));
            emit(output, &report::report("validate", body));
            Ok(ExitCode::SUCCESS)
        }
        Err(FormatError::Axioms(diagnostics)) => {
            let mut body = Map::new();
            body.insert("valid".into(), json!(false));
            let violations: Vec<Value> = diagnostics
                .violations
                .iter()
                .map(|violation| json!(violation.to_string()))
                .collect();
            body.insert("violations".into(), json!(violations));
            emit(output, &report::report("validate", body));
            Ok(ExitCode::from(1))
        }
        Err(other) => Err(other.to_string()),
    }
}

fn cmd_analyze(output: Output, file: &Path, nmax: usize) -> Result<ExitCode, String> {
    let instance = load_instance(file)?;
    let space = &instance.space;
    let map = instance_set_map(&instance)?;
    let classifications = classify_all(space, &map).map_err(|err| err.to_string())?;
    let mut body = Map::new();
    body.insert("points".into(), json!(space.len()));
    body.insert("t0".into(), json!(space.is_t0()));
    let rows: Vec<Value> = classifications
        .iter()
        .map(|classification| report::classification(space, classification))
        .collect();
    body.insert("classifications".into(), json!(rows));
    for (key, kind) in [
        ("approx_start", ValueKind::Start),
        ("approx_end", ValueKind::End),
        ("approx_mix", ValueKind::Mix),
    ] {
        let approx = approx_value(space, &map, kind).map_err(|err| err.to_string())?;
        body.insert(key.into(), report::approx(space, &approx));
    }
    let levels = level_sets(space, &map, nmax).map_err(|err| err.to_string())?;
    body.insert("level_sets".into(), report::level_sets(space, &levels));
    emit(output, &report::report("analyze", body));
    Ok(ExitCode::SUCCESS)
}

fn parse_label_set(space: &FiniteQuasiSpace, text: &str) -> Result<PointSet, String> {
    let mut set = PointSet::empty();
    for label in text.split(',') {
        let label = label.trim();
        if label.is_empty() {
            return Err(format!("empty label in point set {text:?}"));
        }
        set.insert(space.point(label).map_err(|err| err.to_string())?);
    }
    if set.is_empty() {
        return Err(String::from("point sets must be nonempty"));
    }
    Ok(set)
}

fn cmd_hausdorff(output: Output, file: &Path, left: &str, right: &str) -> Result<ExitCode, String> {
    let instance = load_instance(file)?;
    let space = &instance.space;
    let left_set = parse_label_set(space, left)?;
    let right_set = parse_label_set(space, right)?;
    let distance = hausdorff(space, &left_set, &right_set).map_err(|err| err.to_string())?;
    let mut body = Map::new();
    body.insert("left".into(), report::point_set(space, &left_set));
    body.insert("right".into(), report::point_set(space, &right_set));
    body.insert("distance".into(), report::hyper_distance(space, &distance));
    emit(output, &report::report("hausdorff", body));
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(output: Output, solve: &Solve) -> Result<ExitCode, String> {
    let common = match solve {
        Solve::Startpoint(common) | Solve::Endpoint(common) => common,
        Solve::Fixed { common, .. } | Solve::Picard { common, .. } => common,
    };
    let instance = load_instance(&common.file)?;
    let space = &instance.space;
    let seed = space
        .point(&common.seed_point)
        .map_err(|err| err.to_string())?;
    let descent = DescentOptions {
        factor: common.c.clone(),
        max_iter: common.max_iter,
    };
    let log = match solve {
        Solve::Startpoint(_) => {
            let map = instance_set_map(&instance)?;
            startpoint_solve(space, &map, seed, &descent)
        }
        Solve::Endpoint(_) => {
            let map = instance_set_map(&instance)?;
            endpoint_solve(space, &map, seed, &descent)
        }
        Solve::Fixed {
            strict_feasibility, ..
        } => {
            let map = instance_set_map(&instance)?;
            fixed_point_solve(space, &map, seed, &descent, *strict_feasibility)
        }
        Solve::Picard {
            mode,
            accept_heuristic,
            ..
        } => {
            let map = instance
                .single_map
                .as_ref()
                .ok_or("the weighted orbit needs a single-valued map f")?;
            let comparison = match &instance.comparison {
                Some(comparison) => comparison.clone(),
                None => FunctionSpec::linear(common.c.clone()).map_err(|err| err.to_string())?,
            };
            let options = OrbitOptions {
                mode: match mode {
                    Mode::Forward => Side::Forward,
                    Mode::Backward => Side::Backward,
                    Mode::Symmetric => Side::Symmetric,
                },
                max_iter: common.max_iter,
                accept_heuristic: *accept_heuristic,
            };
            picard_solve(space, map, &comparison, seed, &options)
        }
    }
    .map_err(|err| err.to_string())?;
    emit(
        output,
        &report::report("solve", body_object(report::iteration_log(space, &log))),
    );
    Ok(if log.status == TerminalStatus::Converged {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_lab_run(
    output: Output,
    suite: &str,
    trials: usize,
    seed: u64,
    size: Option<usize>,
) -> Result<ExitCode, String> {
    let outcome = lab::run_suite(suite, trials, seed, size)?;
    emit(output, &lab::suite_report(&outcome));
    Ok(if outcome.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_lab_list(output: Output) -> Result<ExitCode, String> {
    let rows: Vec<Value> = lab::suites()
        .iter()
        .map(|suite| {
            json!({
                "id": suite.id,
                "default_points": suite.default_points,
                "description": suite.description,
            })
        })
        .collect();
    let mut body = Map::new();
    body.insert("suites".into(), json!(rows));
    emit(output, &report::report("suites", body));
    Ok(ExitCode::SUCCESS)
}

fn cmd_corpus_export(id: &str, out: Option<&Path>) -> Result<ExitCode, String> {
    let instance = lab::corpus_instance(id)?;
    let text = crate::format::export_instance(&instance);
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|err| format!("{}: {err}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_corpus_list(output: Output) -> Result<ExitCode, String> {
    let rows: Vec<Value> = lab::corpus_catalog()
        .iter()
        .map(|(id, description)| json!({"id": id, "description": description}))
        .collect();
    let mut body = Map::new();
    body.insert("instances".into(), json!(rows));
    emit(output, &report::report("corpus", body));
    Ok(ExitCode::SUCCESS)
}
