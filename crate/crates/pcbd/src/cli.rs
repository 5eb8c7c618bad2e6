//! Command-line entry point: construct, verify, certify, oracle, hadamard,
//! simulate and catalog.
//!
//! Exit status: 0 success, 1 I/O failure, 2 validation or class error,
//! 3 unsupported Hadamard order, 4 oracle budget refusal, 64 unknown subcommand.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{catalog, construct, MethodParams};
use crate::design_core::{BlockLayout, BlockedDesign, DesignClassDescriptor};
use crate::error::{Error, Result};
use crate::estimation::{estimate, monte_carlo, orthogonality_payoff, simulate, ModelParams};
use crate::hadamard;
use crate::info_matrix::Criterion;
use crate::optimality::{brute_force_best, certify, certify_with_oracle, OracleBudget, DEFAULT_BUDGET};

/// Exit status for an unknown subcommand.
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "pcbd", version, about = "Optimal paired-comparison designs in blocks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a design with one of the 27 methods.
    Construct(ConstructArgs),
    /// Recompute M and structural properties of a design file.
    Verify(FileArgs),
    /// Print the certificate of a design file as JSON.
    Certify(CertifyArgs),
    /// Exhaustive search for the optimum of a small class.
    Oracle(OracleArgs),
    /// Generate, list or check Hadamard matrices.
    Hadamard(HadamardArgs),
    /// Simulate responses and estimate main effects.
    Simulate(SimulateArgs),
    /// List the construction methods.
    Catalog(CatalogArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Pairs,
    #[value(name = "pairs-t")]
    PairsT,
}

#[derive(Args, Debug, Serialize)]
struct ConstructArgs {
    /// Method id 1–27.
    #[arg(long)]
    method: u8,
    /// Number of pairs N.
    #[arg(long)]
    n: Option<usize>,
    /// Number of attributes K.
    #[arg(long)]
    k: Option<usize>,
    /// Number of equal blocks b.
    #[arg(long)]
    b: Option<usize>,
    /// Block sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// K₁.
    #[arg(long)]
    k1: Option<usize>,
    /// m₁.
    #[arg(long)]
    m1: Option<usize>,
    /// i.
    #[arg(long)]
    i: Option<usize>,
    /// Hadamard order p (b₁ for method 10).
    #[arg(long)]
    p: Option<usize>,
    /// q.
    #[arg(long)]
    q: Option<usize>,
    /// Block size m.
    #[arg(long)]
    m: Option<usize>,
    /// t₁.
    #[arg(long)]
    t1: Option<usize>,
    /// N₁ of the two-part split.
    #[arg(long)]
    n1: Option<usize>,
    /// Groups b×m, e.g. 4x2,4x3.
    #[arg(long, value_delimiter = ',')]
    groups: Option<Vec<String>>,
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    #[serde(skip)]
    format: Format,
    /// Write to FILE (plus FILE.manifest.json) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FileArgs {
    /// Design file (CSV or JSON).
    file: PathBuf,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    /// Design file (CSV or JSON).
    file: PathBuf,
    /// Also compare with the oracle for these criteria, e.g. D,E.
    #[arg(long, value_delimiter = ',')]
    oracle: Vec<Criterion>,
    /// Oracle candidate budget.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug, Serialize)]
struct OracleArgs {
    /// Number of pairs N.
    #[arg(long)]
    n: usize,
    /// Number of attributes K.
    #[arg(long)]
    k: usize,
    /// Block sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    blocks: Vec<usize>,
    /// Criterion: D, A, E or trace.
    #[arg(long)]
    criterion: Criterion,
    /// Allow 0 entries.
    #[arg(long)]
    include_zero: bool,
    /// Disable column negation/permutation reduction.
    #[arg(long)]
    no_symmetry: bool,
    /// Candidate budget.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug)]
struct HadamardArgs {
    /// Order to generate.
    #[arg(long)]
    order: Option<usize>,
    /// List available orders up to --max.
    #[arg(long)]
    list: bool,
    /// Largest order listed.
    #[arg(long, default_value_t = hadamard::DEFAULT_MAX_ORDER)]
    max: usize,
    /// Verify a ±1 CSV file.
    #[arg(long)]
    check: Option<PathBuf>,
    /// Output JSON instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug, Serialize)]
struct SimulateArgs {
    /// Design file (CSV or JSON).
    #[arg(long)]
    design: PathBuf,
    /// Main effects, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    beta: Vec<f64>,
    /// Block effects, comma separated (default all zero).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    gamma: Option<Vec<f64>>,
    /// Noise standard deviation.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Replications; 1 prints y and β̂.
    #[arg(long, default_value_t = 1)]
    reps: u64,
    /// Seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    /// JSON output.
    #[arg(long)]
    json: bool,
}

/// Record written next to every output file.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    /// Subcommand.
    pub subcommand: String,
    /// Parameters as given.
    pub parameters: Value,
    /// Input files.
    pub inputs: Vec<String>,
    /// Output file.
    pub output: String,
    /// Toolkit version.
    pub version: String,
    /// Seconds since the Unix epoch (SOURCE_DATE_EPOCH when set).
    pub timestamp: u64,
}

fn timestamp() -> u64 {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or_else(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0))
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn read_design(path: &Path) -> Result<BlockedDesign> {
    BlockedDesign::parse_any(&read(path)?)
}

fn to_json_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).unwrap_or_else(|e| format!("{{\"error\":\"{e}\"}}")) + "\n"
}

fn parse_groups(g: &[String]) -> Result<Vec<(usize, usize)>> {
    g.iter()
        .map(|s| {
            let (b, m) = s
                .split_once(['x', 'X'])
                .ok_or_else(|| Error::Parameter(format!("group {s:?} must look like BxM")))?;
            let p = |v: &str| v.trim().parse::<usize>().map_err(|_| Error::Parameter(format!("bad group {s:?}")));
            Ok((p(b)?, p(m)?))
        })
        .collect()
}

fn cmd_construct(a: &ConstructArgs, out: &mut dyn Write) -> Result<()> {
    let params = MethodParams {
        method: a.method,
        n: a.n,
        k: a.k,
        b: a.b,
        sizes: a.sizes.clone(),
        k1: a.k1,
        m1: a.m1,
        i: a.i,
        p: a.p,
        q: a.q,
        m: a.m,
        t1: a.t1,
        n1: a.n1,
        groups: a.groups.as_deref().map(parse_groups).transpose()?,
    };
    let d = construct(&params)?;
    let text = match a.format {
        Format::Csv => d.to_csv(),
        Format::Json => to_json_string(&d.to_json()),
        Format::Pairs => d.to_pairs()?,
        Format::PairsT => d.to_pairs_transposed()?,
    };
    emit(out, &text, a.out.as_deref(), "construct", serde_json::to_value(a).unwrap_or(Value::Null), vec![])
}

fn emit(
    out: &mut dyn Write,
    text: &str,
    path: Option<&Path>,
    sub: &str,
    parameters: Value,
    inputs: Vec<String>,
) -> Result<()> {
    match path {
        None => out.write_all(text.as_bytes()).map_err(Error::from),
        Some(p) => {
            std::fs::write(p, text).map_err(|e| io_err(p, e))?;
            let manifest = RunManifest {
                subcommand: sub.to_string(),
                parameters,
                inputs,
                output: p.display().to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                timestamp: timestamp(),
            };
            let mp = PathBuf::from(format!("{}.manifest.json", p.display()));
            std::fs::write(&mp, to_json_string(&manifest)).map_err(|e| io_err(&mp, e))
        }
    }
}

fn cmd_verify(a: &FileArgs, out: &mut dyn Write) -> Result<()> {
    let d = read_design(&a.file)?;
    let cert = certify(&d);
    let mut report = json!({
        "n": d.n(),
        "k": d.k(),
        "block_sizes": d.layout().sizes(),
        "info": cert.info,
        "info_normalized": cert.info_normalized,
        "ij_form": cert.ij_form,
        "orthogonally_blocked": cert.orthogonally_blocked,
        "eigenvalues": cert.eigenvalues,
        "criteria": cert.criteria,
    });
    let prov = d.provenance();
    if prov.method.is_some() {
        // rebuild from the recorded parameters and compare
        let rebuilt = serde_json::to_value(&prov.params)
            .ok()
            .and_then(|v| serde_json::from_value::<MethodParams>(v).ok())
            .map(|p| construct(&p));
        let matches = matches!(&rebuilt, Some(Ok(r)) if r.f() == d.f() && r.layout() == d.layout());
        report["reconstruction_matches"] = json!(matches);
    }
    out.write_all(to_json_string(&report).as_bytes()).map_err(Error::from)
}

fn cmd_certify(a: &CertifyArgs, out: &mut dyn Write) -> Result<()> {
    let d = read_design(&a.file)?;
    let cert = if a.oracle.is_empty() {
        certify(&d)
    } else {
        let budget = OracleBudget { max_candidates: a.budget, ..OracleBudget::default() };
        certify_with_oracle(&d, &a.oracle, &budget)?
    };
    let mut v = serde_json::to_value(&cert).unwrap_or(Value::Null);
    if let Ok(p) = orthogonality_payoff(&d) {
        v["orthogonality_payoff"] = serde_json::to_value(p).unwrap_or(Value::Null);
    }
    out.write_all(to_json_string(&v).as_bytes()).map_err(Error::from)
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let layout = BlockLayout::new(a.blocks.clone())?;
    let class = DesignClassDescriptor::new(a.n, a.k, &layout);
    let budget = OracleBudget {
        max_candidates: a.budget,
        symmetry_reduction: !a.no_symmetry,
        include_zero: a.include_zero,
    };
    let start = Instant::now();
    let res = brute_force_best(&class, &layout, a.criterion, &budget)?;
    let _ = writeln!(err, "wall time: {:.3} s", start.elapsed().as_secs_f64());
    let v = json!({
        "class": res.class,
        "criterion": res.criterion,
        "candidates": res.candidates,
        "budget": res.budget,
        "optimum": res.optimum,
        "witness": res.witness.to_json(),
    });
    out.write_all(to_json_string(&v).as_bytes()).map_err(Error::from)
}

fn cmd_hadamard(a: &HadamardArgs, out: &mut dyn Write) -> Result<()> {
    if let Some(path) = &a.check {
        let h = hadamard::read_csv(path)?;
        let cert = hadamard::certify(&h)?;
        return out.write_all(to_json_string(&cert).as_bytes()).map_err(Error::from);
    }
    if a.list {
        let orders = hadamard::available_orders(a.max);
        let text = if a.json {
            to_json_string(&orders)
        } else {
            orders.iter().map(ToString::to_string).collect::<Vec<_>>().join(",") + "\n"
        };
        return out.write_all(text.as_bytes()).map_err(Error::from);
    }
    let order = a.order.ok_or_else(|| Error::Parameter("hadamard requires --order, --list or --check".into()))?;
    let h = hadamard::lookup(order)?;
    let text = if a.json { to_json_string(&h.to_rows()) } else { hadamard::to_csv(&h) };
    out.write_all(text.as_bytes()).map_err(Error::from)
}

fn cmd_simulate(a: &SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let d = read_design(&a.design)?;
    let p = ModelParams {
        beta: a.beta.clone(),
        gamma: a.gamma.clone().unwrap_or_else(|| vec![0.0; d.layout().blocks()]),
        sigma: a.sigma,
        seed: a.seed,
    };
    let v = if a.reps <= 1 {
        let y = simulate(&d, &p)?;
        let est = estimate(&d, &y)?;
        json!({ "y": y, "estimate": est })
    } else {
        serde_json::to_value(monte_carlo(&d, &p, a.reps)?).unwrap_or(Value::Null)
    };
    out.write_all(to_json_string(&v).as_bytes()).map_err(Error::from)
}

fn cmd_catalog(a: &CatalogArgs, out: &mut dyn Write) -> Result<()> {
    let cat = catalog();
    let text = if a.json {
        to_json_string(&cat)
    } else {
        let mut s = String::new();
        for m in &cat {
            s.push_str(&format!("{:>2}  {}\n    class: {}\n    Hadamard orders: {}\n", m.id, m.title, m.class, m.hadamard));
        }
        s
    };
    out.write_all(text.as_bytes()).map_err(Error::from)
}

/// Run the CLI on `args` (including the program name), writing to the given streams.
/// Returns the process exit status.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_USAGE,
                _ => 2,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let res = match &cli.command {
        Command::Construct(a) => cmd_construct(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Certify(a) => cmd_certify(a, out),
        Command::Oracle(a) => cmd_oracle(a, out, err),
        Command::Hadamard(a) => cmd_hadamard(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Catalog(a) => cmd_catalog(a, out),
    };
    match res {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Run the CLI with the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
