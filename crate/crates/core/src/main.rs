use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use selfsim_green::blowup::{self, BlowupOptions, Identification};
use selfsim_green::cell::{builtin, enumerate_cells, parse_cell, validate_cell, CellGraph, ValidateOptions, BUILTIN_NAMES};
use selfsim_green::classify::{classify, Outcome};
use selfsim_green::green::{asymptotic_check, cell_functions};
use selfsim_green::iteration::{green_series, invariants_with, singular_prefactor_probe, ProbeOptions};
use selfsim_green::report::{digest, FunctionsReport, Input, Report};
use selfsim_green::verify::{verify_cell, verify_enumeration, CheckOutcome};
use selfsim_green::Error;

/// Green's functions of symmetrically self-similar graphs.
#[derive(Parser)]
#[command(name = "ssgreen", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CellArg {
    /// Cell file (text or JSON), or a built-in name with --builtin.
    cell: String,
    /// Treat CELL as a built-in name: diamond, path2, sierpinski, k4_corners.
    #[arg(long)]
    builtin: bool,
    /// Print the JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the cell axioms.
    Validate(CellArg),
    /// Return function f, transition function d and first-return function r.
    Functions {
        #[command(flatten)]
        cell: CellArg,
        /// Highest power of the printed expansions.
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Coefficients of G through z^ORDER.
    Green {
        #[command(flatten)]
        cell: CellArg,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// tau, alpha, mu and eta.
    Invariants(CellArg),
    /// Algebraic star, differentially transcendental, or open.
    Classify(CellArg),
    /// Run the property suite on a cell, on an enumeration, or against a saved report.
    Verify {
        /// Cell file or built-in name.
        cell: Option<String>,
        #[arg(long)]
        builtin: bool,
        /// Verify every cell of the enumeration instead.
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = 2)]
        theta: usize,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        /// Recompute a JSON report from `verify --json` and compare outcomes.
        #[arg(long, value_name = "FILE")]
        from_report: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Build a finite approximant.
    Blowup {
        #[command(flatten)]
        cell: CellArg,
        #[arg(long, default_value_t = 2)]
        level: usize,
        /// Copies glued at the origin.
        #[arg(long, default_value_t = 1)]
        copies: usize,
        /// Match cliques to copies randomly with this seed.
        #[arg(long)]
        random_seed: Option<u64>,
        /// Write the edge list here instead of stdout.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Monte Carlo estimate of the n-step return probability.
    Simulate {
        #[command(flatten)]
        cell: CellArg,
        #[arg(long, default_value_t = 3)]
        level: usize,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// CSV of G(z) (1 - z)^(-eta) at points of (0, 1).
    Probe {
        #[command(flatten)]
        cell: CellArg,
        /// Comma-separated increasing points.
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.9,0.99")]
        points: Vec<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        #[arg(long, default_value_t = 5000)]
        max_order: usize,
    },
    /// Compare return probabilities of the cell with the dominant-eigenvalue prediction.
    Asymptotic {
        #[command(flatten)]
        cell: CellArg,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
    },
    /// List valid cells up to isomorphism.
    Enumerate {
        #[arg(long, default_value_t = 2)]
        theta: usize,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        /// Write one file per cell into this directory.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

/// Failure with its exit code: 1 internal, 2 invalid input or failed
/// check, 3 edge budget exceeded.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => 3,
            Error::Parse { .. }
            | Error::InvalidCell(_)
            | Error::UnsupportedTheta(_)
            | Error::InvalidArgument(_)
            | Error::PointTooClose { .. } => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type CmdResult = Result<(), Failure>;

struct Loaded {
    graph: CellGraph,
    input: Input,
}

fn load(name: &str, is_builtin: bool) -> Result<Loaded, Failure> {
    if is_builtin {
        let graph = builtin(name)
            .ok_or_else(|| fail(2, format!("unknown built-in cell '{name}'; available: {}", BUILTIN_NAMES.join(", "))))?;
        let sha256 = digest(graph.to_cell_text().as_bytes());
        return Ok(Loaded { graph, input: Input { source: format!("builtin:{name}"), sha256 } });
    }
    let text = std::fs::read_to_string(name).map_err(|e| fail(2, format!("{name}: {e}")))?;
    let graph = parse_cell(&text)?;
    Ok(Loaded { graph, input: Input { source: name.to_string(), sha256: digest(text.as_bytes()) } })
}

/// Loads and validates; invalid cells stop here with exit code 2.
fn load_valid(arg: &CellArg) -> Result<(Loaded, Report), Failure> {
    let loaded = load(&arg.cell, arg.builtin)?;
    let cell_report = validate_cell(&loaded.graph, ValidateOptions::default());
    if !cell_report.is_valid() {
        return Err(fail(2, format!("invalid cell:\n  {}", cell_report.violations.join("\n  "))));
    }
    let report = Report::new(loaded.input.clone(), loaded.graph.to_cell_text(), cell_report);
    Ok((loaded, report))
}

fn print_json<T: Serialize>(value: &T) -> CmdResult {
    println!("{}", serde_json::to_string_pretty(value).map_err(Error::from)?);
    Ok(())
}

fn finish(mut report: Report, start: Instant) -> CmdResult {
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    println!("{}", report.to_json()?);
    Ok(())
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn cmd_validate(arg: &CellArg, start: Instant) -> CmdResult {
    let loaded = load(&arg.cell, arg.builtin)?;
    let cell_report = validate_cell(&loaded.graph, ValidateOptions::default());
    let valid = cell_report.is_valid();
    if arg.json {
        finish(Report::new(loaded.input, loaded.graph.to_cell_text(), cell_report), start)?;
    } else {
        let r = &cell_report;
        println!("vertices {}  edges {}  theta {}  mu {}", r.vertices, r.edges, r.theta, r.mu.map_or("-".into(), |m| m.to_string()));
        println!("bipartite {}  path {}  doubly transitive {}", r.bipartite, r.is_path, r.doubly_transitive.map_or("-".into(), |b| b.to_string()));
        if valid {
            println!("valid");
        }
        for v in &r.violations {
            println!("violation: {v}");
        }
    }
    if valid {
        Ok(())
    } else {
        Err(fail(2, "cell violates the axioms"))
    }
}

fn cmd_functions(arg: &CellArg, order: usize, start: Instant) -> CmdResult {
    let (loaded, mut report) = load_valid(arg)?;
    let cf = cell_functions(&loaded.graph)?;
    let fr = FunctionsReport::new(&cf, order)?;
    if arg.json {
        report.functions = Some(fr);
        return finish(report, start);
    }
    println!("f = {}", fr.f);
    println!("d = {}", fr.d);
    println!("r = {}", fr.r);
    println!("f: {}", join(fr.series.f.coeffs()));
    println!("d: {}", join(fr.series.d.coeffs()));
    println!("r: {}", join(fr.series.r.coeffs()));
    for (name, s) in [("f", &fr.spectral_f), ("d", &fr.spectral_d), ("r", &fr.spectral_r)] {
        match &s.rho {
            Some(rho) => println!("rho_{name} ~ {:.15}  (pole order {})", rho.midpoint_f64(), s.pole_order),
            None => println!("rho_{name} = inf"),
        }
    }
    Ok(())
}

fn cmd_green(arg: &CellArg, order: usize, start: Instant) -> CmdResult {
    let (loaded, mut report) = load_valid(arg)?;
    let cf = cell_functions(&loaded.graph)?;
    let gs = green_series(&cf, order)?;
    if arg.json {
        report.green = Some(gs);
        return finish(report, start);
    }
    println!("{}", join(gs.series.coeffs()));
    Ok(())
}

fn cmd_invariants(arg: &CellArg, start: Instant) -> CmdResult {
    let (loaded, mut report) = load_valid(arg)?;
    let cf = cell_functions(&loaded.graph)?;
    let inv = invariants_with(&loaded.graph, &cf)?;
    if arg.json {
        report.invariants = Some(inv);
        return finish(report, start);
    }
    println!("theta {}  mu {}  tau {}  alpha {}", inv.theta, inv.mu, inv.tau, inv.alpha);
    println!("eta     ~ {:.12}  (log mu / log tau - 1)", inv.eta.midpoint_f64());
    println!("eta_alt ~ {:.12}  (-log alpha / log tau)", inv.eta_alt.midpoint_f64());
    println!("brackets overlap {}", inv.eta_brackets_overlap);
    Ok(())
}

fn cmd_classify(arg: &CellArg, start: Instant) -> CmdResult {
    let loaded = load(&arg.cell, arg.builtin)?;
    let verdict = classify(&loaded.graph);
    let invalid = verdict.outcome == Outcome::Invalid;
    if arg.json {
        let cell_report = validate_cell(&loaded.graph, ValidateOptions::default());
        let mut report = Report::new(loaded.input, loaded.graph.to_cell_text(), cell_report);
        report.verdict = Some(verdict);
        finish(report, start)?;
    } else {
        println!("{:?}", verdict.outcome);
        println!("basis: {}", verdict.theorem_basis);
        if let Some(b) = verdict.branch {
            println!("branch: {b:?}");
        }
        for n in verdict.notes.iter().chain(&verdict.violations) {
            println!("note: {n}");
        }
    }
    if invalid {
        Err(fail(2, "cell violates the axioms"))
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
struct ReplayOutcome {
    matches: bool,
    saved: Vec<CheckOutcome>,
    recomputed: Vec<CheckOutcome>,
}

fn cmd_verify_report(path: &Path, json: bool) -> CmdResult {
    let text = std::fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(Error::from)?;
    let cell_text = value["cell_text"].as_str().ok_or_else(|| fail(2, "report has no cell_text"))?;
    let saved: Vec<CheckOutcome> = serde_json::from_value(value["properties"].clone())
        .map_err(|e| fail(2, format!("report has no property list: {e}")))?;
    let g = parse_cell(cell_text)?;
    let recomputed = verify_cell(&g, &BlowupOptions::default())?.outcomes();
    let matches = saved == recomputed;
    if json {
        print_json(&ReplayOutcome { matches, saved, recomputed })?;
    } else {
        println!("{} checks, outcomes {}", recomputed.len(), if matches { "reproduced" } else { "differ" });
    }
    if matches {
        Ok(())
    } else {
        Err(fail(2, "recomputed outcomes differ from the report"))
    }
}

fn cmd_verify(
    cell: Option<&str>,
    is_builtin: bool,
    enumerate: bool,
    theta: usize,
    max_vertices: usize,
    from_report: Option<&Path>,
    json: bool,
    start: Instant,
) -> CmdResult {
    let opts = BlowupOptions::default();
    if let Some(path) = from_report {
        return cmd_verify_report(path, json);
    }
    if enumerate {
        let summary = verify_enumeration(theta, max_vertices, &opts)?;
        if json {
            print_json(&summary)?;
        } else {
            println!("{} cells (theta {theta}, at most {max_vertices} vertices), {} paths", summary.cells, summary.paths);
            for t in &summary.tallies {
                println!("{:<45} {:>6} passed {:>4} failed", t.name, t.passed, t.failed);
            }
            for f in &summary.failures {
                println!("FAIL cell {}: {}: {}", f.index, f.check, f.detail);
            }
            println!("{}", if summary.all_passed() { "all checks passed" } else { "some checks failed" });
        }
        return if summary.all_passed() { Ok(()) } else { Err(fail(2, "property suite failed")) };
    }
    let name = cell.ok_or_else(|| fail(2, "give a cell, --enumerate, or --from-report"))?;
    let arg = CellArg { cell: name.to_string(), builtin: is_builtin, json };
    let (loaded, mut report) = load_valid(&arg)?;
    let v = verify_cell(&loaded.graph, &opts)?;
    let ok = v.all_passed();
    if json {
        report.properties = Some(v.checks);
        finish(report, start)?;
    } else {
        for c in &v.checks {
            println!("{} {:<45} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
    }
    if ok {
        Ok(())
    } else {
        Err(fail(2, "property suite failed"))
    }
}

fn blowup_options(copies: usize, random_seed: Option<u64>) -> BlowupOptions {
    BlowupOptions {
        copies,
        identification: random_seed.map_or(Identification::BoundaryOrder, |seed| Identification::Random { seed }),
        ..BlowupOptions::default()
    }
}

fn cmd_blowup(arg: &CellArg, level: usize, copies: usize, random_seed: Option<u64>, emit: Option<&Path>) -> CmdResult {
    let (loaded, _) = load_valid(arg)?;
    let a = blowup::blowup(&loaded.graph, level, &blowup_options(copies, random_seed))?;
    if let Some(path) = emit {
        std::fs::write(path, a.to_cell_text())?;
        eprintln!("{} vertices, {} edges, safe horizon {} -> {}", a.n(), a.edge_count(), a.safe_horizon, path.display());
    } else if arg.json {
        print_json(&a)?;
    } else {
        print!("{}", a.to_cell_text());
    }
    Ok(())
}

fn cmd_simulate(arg: &CellArg, level: usize, steps: usize, trials: u64, seed: u64, workers: usize) -> CmdResult {
    let (loaded, _) = load_valid(arg)?;
    let a = blowup::blowup(&loaded.graph, level, &BlowupOptions::default())?;
    let stats = blowup::monte_carlo(&a, steps, trials, seed, workers)?;
    if arg.json {
        print_json(&stats)?;
    } else {
        println!(
            "p^({steps}) ~ {} = {:.6} +- {:.6}  ({} trials, seed {}, {} workers{})",
            stats.estimate,
            selfsim_green::algebra::to_f64(&stats.estimate),
            stats.std_err,
            stats.trials,
            stats.seed,
            stats.workers,
            if stats.approximant_only { ", beyond safe horizon" } else { "" }
        );
    }
    Ok(())
}

fn cmd_probe(arg: &CellArg, points: &[f64], tolerance: f64, max_order: usize) -> CmdResult {
    let (loaded, _) = load_valid(arg)?;
    let cf = cell_functions(&loaded.graph)?;
    let inv = invariants_with(&loaded.graph, &cf)?;
    let rows = singular_prefactor_probe(&cf, &inv.eta, points, ProbeOptions { tolerance, max_order })?;
    if arg.json {
        return print_json(&rows);
    }
    println!("z,order,green,prefactor,tail_bound");
    for r in rows {
        println!("{},{},{:.15e},{:.15e},{:.3e}", r.z, r.order, r.green, r.prefactor, r.tail_bound);
    }
    Ok(())
}

fn cmd_asymptotic(arg: &CellArg, n_max: usize) -> CmdResult {
    let (loaded, _) = load_valid(arg)?;
    let rep = asymptotic_check(&loaded.graph.transition_matrix(), 0, n_max)?;
    if arg.json {
        return print_json(&rep);
    }
    println!("n,coefficient,predicted,relative_error");
    for r in &rep.rows {
        println!("{},{},{:.15e},{:.3e}", r.n, r.coefficient, r.predicted, r.relative_error);
    }
    Ok(())
}

fn cmd_enumerate(theta: usize, max_vertices: usize, emit_dir: Option<&Path>, json: bool) -> CmdResult {
    let cells = enumerate_cells(theta, max_vertices)?;
    if let Some(dir) = emit_dir {
        std::fs::create_dir_all(dir)?;
        for (i, g) in cells.iter().enumerate() {
            std::fs::write(dir.join(format!("cell_{i:04}.txt")), g.to_cell_text())?;
        }
    }
    if json {
        let texts: Vec<String> = cells.iter().map(CellGraph::to_cell_text).collect();
        return print_json(&texts);
    }
    if emit_dir.is_none() {
        for (i, g) in cells.iter().enumerate() {
            println!("# cell {i}: {} vertices, {} edges{}", g.n(), g.edge_count(), if g.is_path() { ", path" } else { "" });
            println!("{}", g.to_cell_text());
        }
    }
    eprintln!("{} cells", cells.len());
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    let start = Instant::now();
    match cli.command {
        Command::Validate(arg) => cmd_validate(&arg, start),
        Command::Functions { cell, order } => cmd_functions(&cell, order, start),
        Command::Green { cell, order } => cmd_green(&cell, order, start),
        Command::Invariants(arg) => cmd_invariants(&arg, start),
        Command::Classify(arg) => cmd_classify(&arg, start),
        Command::Verify { cell, builtin, enumerate, theta, max_vertices, from_report, json } => {
            cmd_verify(cell.as_deref(), builtin, enumerate, theta, max_vertices, from_report.as_deref(), json, start)
        }
        Command::Blowup { cell, level, copies, random_seed, emit } => cmd_blowup(&cell, level, copies, random_seed, emit.as_deref()),
        Command::Simulate { cell, level, steps, trials, seed, workers } => cmd_simulate(&cell, level, steps, trials, seed, workers),
        Command::Probe { cell, points, tolerance, max_order } => cmd_probe(&cell, &points, tolerance, max_order),
        Command::Asymptotic { cell, n_max } => cmd_asymptotic(&cell, n_max),
        Command::Enumerate { theta, max_vertices, emit_dir, json } => cmd_enumerate(theta, max_vertices, emit_dir.as_deref(), json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ssgreen: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
