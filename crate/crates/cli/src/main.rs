//! `ogs`: build, verify and use ordered generating systems from the shell.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ogs_core::catalog::{self, CatalogError};
use ogs_core::construct::{
    brute_force_composition_series, ogs_from_chain, solvable_ogs, ConstructError, SearchConfig,
    COMPOSITION_ORDER_LIMIT,
};
use ogs_core::ogs::{Method, VerificationReport, DEFAULT_MEMORY_BUDGET};
use ogs_core::{
    ExponentVector, GroupError, OgsError, OrderedGeneratingSystem, PermError, PermGroup,
    Permutation,
};

/// `println!` that ends the process quietly once stdout is closed
/// (`ogs build | head`).
macro_rules! out {
    ($($arg:tt)*) => {
        emit(format_args!("{}\n", format_args!($($arg)*)))
    };
}

macro_rules! out_raw {
    ($($arg:tt)*) => {
        emit(format_args!($($arg)*))
    };
}

fn emit(args: std::fmt::Arguments<'_>) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(2);
    }
}

/// Orders up to this are verified exhaustively in `auto` mode.
const AUTO_EXHAUSTIVE_LIMIT: u128 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "ogs",
    version,
    about = "Ordered generating systems of permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct an OGS and print it.
    Build(Input),
    /// Verify an OGS; exits 1 with a witness on failure.
    Verify(Input),
    /// Exponent vector of an element.
    Factor(Input),
    /// Rank of an element or exponent vector.
    Rank(Input),
    /// Exponent vector and element of a rank.
    Unrank(Input),
    /// Group order.
    Order(Input),
    /// List catalog entries, or export them with --json.
    Catalog(CatalogArgs),
    /// Check the printed Mathieu data.
    CheckPaper(Output),
}

#[derive(Args)]
struct Output {
    /// Machine-readable JSON output.
    #[arg(long)]
    json: bool,
    /// Worker threads for verification (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(flatten)]
    out: Output,
    /// Build and verify every entry.
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Structural,
    Exhaustive,
    Auto,
}

#[derive(Args)]
struct Input {
    /// Catalog group name (M11, A7, S5, C12, PSL2_11, ..).
    #[arg(long, conflicts_with_all = ["generators_file", "file"])]
    group: Option<String>,
    /// Generators file: `degree <n>` then one cycle expression per line.
    #[arg(long, conflicts_with = "file")]
    generators_file: Option<PathBuf>,
    /// OGS JSON file, or `-` for stdin.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Element in cycle notation.
    #[arg(long)]
    element: Option<String>,
    /// Exponent vector, comma separated.
    #[arg(long, conflicts_with = "element")]
    exponents: Option<String>,
    #[arg(long)]
    rank: Option<u128>,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Byte budget for exhaustive fingerprints.
    #[arg(long, default_value_t = DEFAULT_MEMORY_BUDGET)]
    memory_budget: u128,
    #[command(flatten)]
    out: Output,
}

/// An error with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

fn ogs_code(e: &OgsError) -> u8 {
    match e {
        OgsError::ItemNotInGroup { .. } | OgsError::NotVerified => 1,
        OgsError::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

impl From<OgsError> for Failure {
    fn from(e: OgsError) -> Self {
        Failure {
            code: ogs_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        let code = match &e {
            ConstructError::Ogs(inner) => ogs_code(inner),
            ConstructError::Certification(_) | ConstructError::CosetCollision { .. } => 1,
            ConstructError::Invalid(_) | ConstructError::Group(_) => 2,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Construct(c) => c.into(),
            CatalogError::Ogs(o) => o.into(),
            CatalogError::Unknown(_) | CatalogError::Perm(_) | CatalogError::Formula { .. } => {
                Failure::invalid(e.to_string())
            }
            CatalogError::Group(_) => Failure::invalid(e.to_string()),
            _ => Failure {
                code: 1,
                message: e.to_string(),
            },
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<PermError> for Failure {
    fn from(e: PermError) -> Self {
        Failure::invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Build(input) => {
            set_threads(&input.out)?;
            let ogs = load(&input)?;
            if input.out.json {
                out!("{}", ogs.to_json());
            } else {
                print_ogs(&ogs);
            }
            Ok(0)
        }
        Command::Verify(input) => {
            set_threads(&input.out)?;
            let mut ogs = load(&input)?;
            let report = verify(&mut ogs, &input)?;
            if input.out.json {
                print_json(&report);
            } else {
                print_report(&ogs, &report);
            }
            Ok(if report.ok { 0 } else { 1 })
        }
        Command::Factor(input) => {
            set_threads(&input.out)?;
            let ogs = ready(&input)?;
            let g = element(&input, &ogs)?;
            let e = ogs.factor(&g).map_err(not_in_group)?;
            emit_vector(&ogs, &e, input.out.json)?;
            Ok(0)
        }
        Command::Rank(input) => {
            set_threads(&input.out)?;
            let ogs = ready(&input)?;
            let e = match (&input.exponents, &input.element) {
                (Some(text), _) => parse_exponents(text)?,
                (None, Some(_)) => ogs.factor(&element(&input, &ogs)?).map_err(not_in_group)?,
                (None, None) => {
                    return Err(Failure::invalid("rank needs --element or --exponents"))
                }
            };
            emit_vector(&ogs, &e, input.out.json)?;
            Ok(0)
        }
        Command::Unrank(input) => {
            set_threads(&input.out)?;
            let ogs = ready(&input)?;
            let r = input
                .rank
                .ok_or_else(|| Failure::invalid("unrank needs --rank"))?;
            let e = ogs.unrank(r)?;
            emit_vector(&ogs, &e, input.out.json)?;
            Ok(0)
        }
        Command::Order(input) => {
            let g = load_group(&input)?;
            if input.out.json {
                print_json(
                    &serde_json::json!({ "order": g.order().to_string(), "degree": g.degree() }),
                );
            } else {
                out!("{}", g.order());
            }
            Ok(0)
        }
        Command::Catalog(args) => {
            set_threads(&args.out)?;
            catalog_command(&args)
        }
        Command::CheckPaper(out) => {
            set_threads(&out)?;
            let rows = catalog::check_paper();
            if out.json {
                print_json(&rows);
            } else {
                let width = rows.iter().map(|r| r.claim.len()).max().unwrap_or(0);
                for r in &rows {
                    let status = if r.pass { "pass" } else { "FAIL" };
                    out!(
                        "{status}  {:<width$}  computed {}  paper {}",
                        r.claim,
                        r.computed,
                        r.paper
                    );
                }
            }
            Ok(if rows.iter().all(|r| r.pass) { 0 } else { 1 })
        }
    }
}

fn set_threads(out: &Output) -> Result<(), Failure> {
    if let Some(n) = out.threads {
        if n == 0 {
            return Err(Failure::invalid("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::invalid(e.to_string()))?;
    }
    Ok(())
}

fn print_json<T: Serialize>(value: &T) {
    out!(
        "{}",
        serde_json::to_string_pretty(value).expect("plain data serializes")
    );
}

fn read_source(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::invalid(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
    }
}

/// Parses `degree <n>` followed by one generator per line. Blank lines and
/// `#` comments are skipped.
fn parse_generators(text: &str) -> Result<PermGroup, Failure> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Failure::invalid("empty generators file"))?;
    let degree = header
        .strip_prefix("degree")
        .and_then(|n| n.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::invalid(format!("expected `degree <n>`, found `{header}`")))?;
    let gens: Vec<&str> = lines.collect();
    Ok(PermGroup::from_cycle_strings(degree, &gens)?)
}

fn load_group(input: &Input) -> Result<Arc<PermGroup>, Failure> {
    if let Some(name) = &input.group {
        let entry = catalog::lookup(name)?;
        return Ok(Arc::new(entry.group()?));
    }
    if let Some(path) = &input.generators_file {
        return Ok(Arc::new(parse_generators(&read_source(path)?)?));
    }
    if input.file.is_some() {
        return Ok(load(input)?.group().clone());
    }
    Err(Failure::invalid(
        "one of --group, --generators-file or --file is required",
    ))
}

/// The system named by the input flags. Catalog and generated systems are
/// certified; files start unverified.
fn load(input: &Input) -> Result<OrderedGeneratingSystem, Failure> {
    if let Some(name) = &input.group {
        let (_, ogs) = catalog::build_with_seed(name, input.seed)?;
        return Ok(ogs);
    }
    if let Some(path) = &input.generators_file {
        let g = Arc::new(parse_generators(&read_source(path)?)?);
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        return generic_ogs(g, &name, input.seed);
    }
    if let Some(path) = &input.file {
        let text = read_source(path)?;
        return Ok(OrderedGeneratingSystem::from_json(&text)?);
    }
    Err(Failure::invalid(
        "one of --group, --generators-file or --file is required",
    ))
}

/// Solvable groups of small order via their composition series, anything
/// else by power-cover search down the stabilizer chain.
fn generic_ogs(
    g: Arc<PermGroup>,
    name: &str,
    seed: u64,
) -> Result<OrderedGeneratingSystem, Failure> {
    if g.order() <= COMPOSITION_ORDER_LIMIT {
        let series = brute_force_composition_series(&g, COMPOSITION_ORDER_LIMIT)?;
        if series.is_solvable() {
            return Ok(solvable_ogs(g, name)?);
        }
    }
    let config = SearchConfig {
        seed,
        ..SearchConfig::default()
    };
    Ok(ogs_from_chain(g, name, config)?)
}

fn method(input: &Input, order: u128) -> Method {
    match input.mode {
        Mode::Structural => Method::Structural,
        Mode::Exhaustive => Method::Exhaustive,
        Mode::Auto if order <= AUTO_EXHAUSTIVE_LIMIT => Method::Exhaustive,
        Mode::Auto => Method::Structural,
    }
}

fn verify(ogs: &mut OrderedGeneratingSystem, input: &Input) -> Result<VerificationReport, Failure> {
    let m = method(input, ogs.group().order());
    Ok(ogs.verify(m, input.memory_budget)?)
}

/// A system ready for factoring: files are verified first.
fn ready(input: &Input) -> Result<OrderedGeneratingSystem, Failure> {
    let mut ogs = load(input)?;
    if input.file.is_some() {
        let report = verify(&mut ogs, input)?;
        if let Some(f) = report.failure {
            return Err(Failure {
                code: 1,
                message: format!("the system does not verify: {f}"),
            });
        }
    }
    Ok(ogs)
}

fn element(input: &Input, ogs: &OrderedGeneratingSystem) -> Result<Permutation, Failure> {
    let text = input
        .element
        .as_deref()
        .ok_or_else(|| Failure::invalid("--element is required"))?;
    Ok(Permutation::parse(text, Some(ogs.degree()))?)
}

fn not_in_group(e: OgsError) -> Failure {
    match e {
        OgsError::NotInGroup | OgsError::Group(_) => Failure::invalid(format!("element: {e}")),
        other => other.into(),
    }
}

fn parse_exponents(text: &str) -> Result<ExponentVector, Failure> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(ExponentVector(Vec::new()));
    }
    inner
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map(ExponentVector)
        .map_err(|_| Failure::invalid(format!("bad exponent vector `{text}`")))
}

#[derive(Serialize)]
struct VectorOut {
    exponents: Vec<u64>,
    rank: String,
    element: String,
}

fn emit_vector(
    ogs: &OrderedGeneratingSystem,
    e: &ExponentVector,
    json: bool,
) -> Result<(), Failure> {
    let rank = ogs.rank(e)?;
    let g = ogs.word(e)?;
    if json {
        print_json(&VectorOut {
            exponents: e.0.clone(),
            rank: rank.to_string(),
            element: g.to_cycles(),
        });
    } else {
        out!("exponents {e}");
        out!("rank      {rank}");
        out!("element   {g}");
    }
    Ok(())
}

fn print_ogs(ogs: &OrderedGeneratingSystem) {
    out!(
        "group      {} (degree {}, order {})",
        ogs.group_name(),
        ogs.degree(),
        ogs.group().order()
    );
    out!("provenance {}", ogs.provenance());
    out!("bounds     {:?}", ogs.bounds());
    for (i, item) in ogs.items().iter().enumerate() {
        out!("  a{:<3} {:>5}  {}", i + 1, item.bound, item.perm);
    }
    match ogs.levels() {
        None => out!("levels     none"),
        Some(levels) => {
            out!("levels (outermost first)");
            for l in levels {
                let base = l
                    .base_point
                    .map_or("coset".to_string(), |b| format!("point {b}"));
                out!(
                    "  items {:>3}..{:<3} {:<5} {}",
                    l.from,
                    l.to,
                    format!("{:?}", l.side).to_lowercase(),
                    base
                );
            }
        }
    }
}

fn print_report(ogs: &OrderedGeneratingSystem, report: &VerificationReport) {
    let method = format!("{:?}", report.method).to_lowercase();
    let status = if report.ok { "ok" } else { "FAILED" };
    out!("{} {method} verification {status}", ogs.group_name());
    out!("  group order   {}", report.group_order);
    out!("  words checked {}", report.words_checked);
    if let Some(f) = &report.failure {
        out!("  witness       {f}");
    }
}

fn catalog_command(args: &CatalogArgs) -> Result<u8, Failure> {
    if args.verify {
        let rows = catalog::verify_catalog();
        if args.out.json {
            print_json(&rows);
        } else {
            for r in &rows {
                let exhaustive = match r.exhaustive {
                    Some(true) => "pass",
                    Some(false) => "FAIL",
                    None => "-",
                };
                out!(
                    "{}  {:<8} order {:>10}  structural {}  exhaustive {:<4}  build {:>6} ms  verify {:>6} ms{}",
                    if r.passed() { "pass" } else { "FAIL" },
                    r.name,
                    r.order,
                    if r.structural { "pass" } else { "FAIL" },
                    exhaustive,
                    r.build_ms,
                    r.verify_ms,
                    r.error.as_ref().map(|e| format!("  {e}")).unwrap_or_default(),
                );
            }
        }
        return Ok(if rows.iter().all(|r| r.passed()) {
            0
        } else {
            1
        });
    }
    if args.out.json {
        out_raw!("{}", catalog::export_json()?);
        return Ok(0);
    }
    for e in catalog::entries() {
        out!(
            "{:<8} degree {:>3}  order {:>10}  {}",
            e.name,
            e.degree,
            e.expected_order,
            e.notes.join(" ")
        );
    }
    Ok(0)
}
