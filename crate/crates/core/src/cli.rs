//! Command-line front end: compute, compare, mutate, catalog and cache
//! subcommands over the library.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{compare_values, Field, InvariantReport};
use crate::catalog::{Catalog, CatalogEntry, CatalogError, CatalogObject};
use crate::diagram::{BraidWord, Diagram};
use crate::engine::{homfly, Budget, EngineError, EngineKind, MemoCache, Source};
use crate::laurent::{LaurentVZ, DEFAULT_TRUNCATION};
use crate::mutation::MutationScheme;

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "GENUS2_CACHE_DIR";

pub const EXIT_OTHER: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "genus2", version, about = "Homfly polynomials of knots and genus 2 mutants")]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ConfigArgs {
    /// auto picks hecke for closed braids and memo for other diagrams
    #[arg(long, global = true, default_value = "auto")]
    pub engine: EngineKind,
    #[arg(long, global = true)]
    pub budget_seconds: Option<f64>,
    #[arg(long, global = true)]
    pub budget_mem_mb: Option<u64>,
    /// Defaults to $GENUS2_CACHE_DIR, then the platform cache directory
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Highest h-degree of the Vassiliev gap search
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNCATION)]
    pub truncation: usize,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the result here instead of stdout; for mutate, a directory
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Homfly polynomial and its specializations for one knot
    Compute(ComputeArgs),
    /// Compare two knots
    Compare(CompareArgs),
    /// Assemble a mutation scheme into the knot and its mutant
    Mutate(MutateArgs),
    /// List or show the bundled knots, tangles and schemes
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Inspect or clear the resolution cache
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct ComputeArgs {
    /// Name of a catalog knot
    #[arg(long)]
    pub catalog: Option<String>,
    /// Braid as JSON, e.g. '{"strands":2,"word":[1,1,1]}'
    #[arg(long)]
    pub braid: Option<String>,
    /// Diagram as a JSON file or inline JSON
    #[arg(long)]
    pub diagram: Option<String>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Read both inputs as catalog names
    #[arg(long)]
    pub catalog: bool,
    /// Catalog name, JSON file or inline JSON (braid or diagram)
    pub first: String,
    pub second: String,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct MutateArgs {
    /// Scheme file: a catalog entry or a bare scheme
    #[arg(long)]
    pub scheme: Option<PathBuf>,
    /// Name of a catalog scheme
    #[arg(long)]
    pub catalog: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    List,
    Show { name: String },
}

#[derive(Subcommand, Debug)]
pub enum CacheCommand {
    Stats,
    Clear,
}

/// A failure with its exit code class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Validation(String),
    Budget(String),
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Other(_) => EXIT_OTHER,
        }
    }

    pub fn class(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Validation(_) => "validation",
            CliError::Budget(_) => "budget",
            CliError::Other(_) => "other",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Validation(m) | CliError::Budget(m) | CliError::Other(m) => m,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            EngineError::CrossingLimit { .. } => CliError::Budget(e.to_string()),
            EngineError::NeedsBraid => CliError::Usage(e.to_string()),
            EngineError::NotZPolynomial(_) => CliError::Other(e.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Io(_) => CliError::Other(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

fn io_err(what: &Path, e: std::io::Error) -> CliError {
    CliError::Other(format!("{}: {e}", what.display()))
}

/// Resolved configuration for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub engine: EngineKind,
    pub budget: Budget,
    pub cache_dir: Option<PathBuf>,
    pub truncation: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Validates flags and resolves the cache directory from the flag, then
    /// the environment, then the platform default.
    pub fn resolve(a: &ConfigArgs, env_cache: Option<PathBuf>) -> Result<Self, CliError> {
        if let Some(s) = a.budget_seconds {
            if !(s > 0.0 && s.is_finite()) {
                return Err(CliError::Usage(format!("--budget-seconds must be positive, got {s}")));
            }
        }
        if a.budget_mem_mb == Some(0) {
            return Err(CliError::Usage("--budget-mem-mb must be positive".into()));
        }
        if a.truncation == 0 {
            return Err(CliError::Usage("--truncation must be positive".into()));
        }
        let cache_dir = a.cache_dir.clone().or(env_cache).or_else(default_cache_dir);
        Ok(Self {
            engine: a.engine,
            budget: Budget { seconds: a.budget_seconds, mem_mb: a.budget_mem_mb },
            cache_dir,
            truncation: a.truncation,
            format: a.format,
            out: a.out.clone(),
        })
    }

    fn open_cache(&self) -> Result<MemoCache, CliError> {
        match &self.cache_dir {
            Some(d) => MemoCache::open(d).map_err(|e| io_err(d, e)),
            None => Ok(MemoCache::in_memory()),
        }
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    let non_empty = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    non_empty("XDG_CACHE_HOME")
        .or_else(|| non_empty("HOME").map(|h| h.join(".cache")))
        .map(|d| d.join("genus2"))
}

/// Parses arguments, runs, and reports errors on stderr.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.config.format;
    match run(cli, std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if format == Format::Json {
                let body = serde_json::json!({ "error": { "class": e.class(), "message": e.message() } });
                eprintln!("{body}");
            } else {
                eprintln!("error ({}): {}", e.class(), e.message());
            }
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(cli: Cli, env_cache: Option<PathBuf>) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(&cli.config, env_cache)?;
    match cli.command {
        Command::Compute(a) => compute(&cfg, &a),
        Command::Compare(a) => compare(&cfg, &a),
        Command::Mutate(a) => mutate(&cfg, &a),
        Command::Catalog(c) => catalog(&cfg, c),
        Command::Cache(c) => cache(&cfg, c),
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(p) => std::fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Other(e.to_string()))
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Knot input owned by the command.
enum Input {
    Braid(BraidWord),
    Diagram(Diagram),
}

impl Input {
    fn source(&self) -> Source<'_> {
        match self {
            Input::Braid(b) => Source::Braid(b),
            Input::Diagram(d) => Source::Diagram(d),
        }
    }
}

fn read_json_arg(arg: &str) -> Result<String, CliError> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    let p = Path::new(arg);
    if !p.exists() {
        return Err(CliError::Validation(format!("{arg:?} is neither inline JSON nor an existing file")));
    }
    std::fs::read_to_string(p).map_err(|e| io_err(p, e))
}

fn parse_braid(text: &str) -> Result<BraidWord, CliError> {
    let b: BraidWord = serde_json::from_str(text).map_err(|e| CliError::Validation(format!("bad braid: {e}")))?;
    b.validate().map_err(|e| CliError::Validation(format!("bad braid: {e}")))?;
    Ok(b)
}

fn parse_diagram(text: &str) -> Result<Diagram, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Validation(format!("bad diagram: {e}")))
}

/// A braid, a diagram, or a catalog entry file holding a knot.
fn parse_any(text: &str) -> Result<(Option<String>, Input), CliError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Validation(format!("bad JSON: {e}")))?;
    if v.get("object").is_some() {
        let e: CatalogEntry =
            serde_json::from_value(v).map_err(|e| CliError::Validation(format!("bad catalog entry: {e}")))?;
        let input = match e.object {
            CatalogObject::Knot { braid: Some(b), .. } | CatalogObject::Braid { braid: b } => Input::Braid(b),
            CatalogObject::Knot { diagram, braid: None } => Input::Diagram(diagram),
            _ => return Err(CliError::Validation(format!("entry {:?} is not a knot", e.name))),
        };
        Ok((Some(e.name), input))
    } else if v.get("word").is_some() {
        Ok((None, Input::Braid(parse_braid(text)?)))
    } else {
        Ok((None, Input::Diagram(parse_diagram(text)?)))
    }
}

fn catalog_input(cat: &Catalog, name: &str) -> Result<Input, CliError> {
    Ok(match cat.knot(name)? {
        Source::Braid(b) => Input::Braid(b.clone()),
        Source::Diagram(d) => Input::Diagram(d.clone()),
    })
}

/// Prints cache growth and hit rate to stderr while a computation runs.
struct Progress {
    done: std::sync::Arc<AtomicBool>,
    handle: Option<std::thread::JoinHandle<()>>,
}

impl Progress {
    fn start(cache: std::sync::Arc<MemoCache>) -> Self {
        let done = std::sync::Arc::new(AtomicBool::new(false));
        let flag = done.clone();
        let handle = std::thread::spawn(move || {
            let tick = Duration::from_millis(100);
            let mut waited = Duration::ZERO;
            while !flag.load(Ordering::Relaxed) {
                std::thread::sleep(tick);
                waited += tick;
                if waited.as_secs() >= 5 && waited.as_millis().is_multiple_of(5000) {
                    let s = cache.stats();
                    let looked = s.hits + s.misses;
                    let rate = if looked == 0 { 0.0 } else { 100.0 * s.hits as f64 / looked as f64 };
                    eprintln!("progress: {} resolved nodes cached, hit rate {rate:.1}%", s.entries);
                }
            }
        });
        Self { done, handle: Some(handle) }
    }
}

impl Drop for Progress {
    fn drop(&mut self) {
        self.done.store(true, Ordering::Relaxed);
        if let Some(h) = self.handle.take() {
            let _ = h.join();
        }
    }
}

#[derive(Serialize)]
struct ComputeOutput {
    engine: EngineKind,
    writhe: i64,
    framed_homfly: Field<LaurentVZ>,
    #[serde(flatten)]
    report: InvariantReport,
}

fn compute(cfg: &RunConfig, a: &ComputeArgs) -> Result<(), CliError> {
    let cat = Catalog::builtin();
    let (name, input) = match (&a.catalog, &a.braid, &a.diagram) {
        (Some(n), _, _) => (n.clone(), catalog_input(&cat, n)?),
        (_, Some(b), _) => ("braid".to_string(), Input::Braid(parse_braid(b)?)),
        (_, _, Some(d)) => {
            let (n, i) = parse_any(&read_json_arg(d)?)?;
            (n.unwrap_or_else(|| "diagram".into()), i)
        }
        _ => return Err(CliError::Usage("give --catalog, --braid or --diagram".into())),
    };
    let cache = std::sync::Arc::new(cfg.open_cache()?);
    let src = input.source();
    let framed = {
        let _p = Progress::start(cache.clone());
        homfly(src, cfg.engine, &cache, cfg.budget)
    };
    save(&cache)?;
    let framed = framed?;
    let ambient = crate::engine::ambient(&framed, src.writhe());
    let report = InvariantReport::from_homfly(&name, ambient);
    let text = match cfg.format {
        Format::Json => {
            to_json(&ComputeOutput { engine: cfg.engine, writhe: src.writhe(), framed_homfly: Field::Computed(framed), report })
        }
        Format::Table => format!("framed homfly: {framed}\n{}", report.render()),
    };
    emit(cfg, &text)
}

fn save(cache: &MemoCache) -> Result<(), CliError> {
    match cache.save() {
        Ok(()) => Ok(()),
        Err(e) => Err(CliError::Other(format!("saving cache: {e}"))),
    }
}

fn compare(cfg: &RunConfig, a: &CompareArgs) -> Result<(), CliError> {
    let cat = Catalog::builtin();
    let load = |arg: &str| -> Result<(String, Input), CliError> {
        let bare_name = !arg.trim_start().starts_with('{') && !Path::new(arg).exists() && cat.lookup(arg).is_ok();
        if a.catalog || bare_name {
            Ok((arg.to_string(), catalog_input(&cat, arg)?))
        } else {
            let (n, i) = parse_any(&read_json_arg(arg)?)?;
            Ok((n.unwrap_or_else(|| arg.to_string()), i))
        }
    };
    let (na, ia) = load(&a.first)?;
    let (nb, ib) = load(&a.second)?;
    let cache = std::sync::Arc::new(cfg.open_cache()?);
    let (ra, rb) = {
        let _p = Progress::start(cache.clone());
        let run = |s: Source| crate::engine::ambient_homfly(s, cfg.engine, &cache, cfg.budget);
        rayon::join(|| run(ia.source()), || run(ib.source()))
    };
    save(&cache)?;
    let budget_hit = [&ra, &rb]
        .iter()
        .find_map(|r| match r {
            Err(e @ (EngineError::BudgetExceeded { .. } | EngineError::CrossingLimit { .. })) => Some(e.to_string()),
            _ => None,
        });
    let other = [&ra, &rb].iter().find_map(|r| r.as_ref().err().cloned());
    let report = compare_values((&na, ra), (&nb, rb), cfg.truncation);
    let text = match cfg.format {
        Format::Json => to_json(&report),
        Format::Table => report.render(),
    };
    // the partial report is still written when an engine gives up
    emit(cfg, &text)?;
    match (budget_hit, other) {
        (Some(m), _) => Err(CliError::Budget(m)),
        (None, Some(e)) => Err(e.into()),
        (None, None) => Ok(()),
    }
}

fn load_scheme(a: &MutateArgs) -> Result<(String, MutationScheme), CliError> {
    if let Some(n) = &a.catalog {
        return Ok((n.clone(), Catalog::builtin().scheme(n)?.clone()));
    }
    let p = a.scheme.as_ref().ok_or_else(|| CliError::Usage("give --scheme or --catalog".into()))?;
    let text = std::fs::read_to_string(p).map_err(|e| io_err(p, e))?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("bad JSON: {e}")))?;
    if v.get("object").is_some() {
        let e: CatalogEntry =
            serde_json::from_value(v).map_err(|e| CliError::Validation(format!("bad catalog entry: {e}")))?;
        match e.object {
            CatalogObject::Scheme { scheme, .. } => Ok((e.name, scheme)),
            CatalogObject::Unavailable { reason, .. } => Err(CatalogError::Unavailable(e.name, reason).into()),
            _ => Err(CliError::Validation(format!("entry {:?} is not a scheme", e.name))),
        }
    } else {
        let s: MutationScheme =
            serde_json::from_value(v).map_err(|e| CliError::Validation(format!("bad scheme: {e}")))?;
        let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("scheme").to_string();
        Ok((stem, s))
    }
}

#[derive(Serialize)]
struct MutateOutput {
    knot: PathBuf,
    mutant: PathBuf,
    crossings: usize,
}

fn mutate(cfg: &RunConfig, a: &MutateArgs) -> Result<(), CliError> {
    let (name, scheme) = load_scheme(a)?;
    scheme.validate().map_err(|e| CliError::Validation(e.to_string()))?;
    let (k, m) = scheme.mutant_pair().map_err(|e| CliError::Validation(e.to_string()))?;
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
    let kp = dir.join(format!("{name}_knot.json"));
    let mp = dir.join(format!("{name}_mutant.json"));
    for (p, d) in [(&kp, k.diagram()), (&mp, m.diagram())] {
        std::fs::write(p, to_json(d)).map_err(|e| io_err(p, e))?;
    }
    let out = MutateOutput { knot: kp, mutant: mp, crossings: k.diagram().crossing_count() };
    let text = match cfg.format {
        Format::Json => to_json(&out),
        Format::Table => {
            format!("knot: {}\nmutant: {}\ncrossings: {}\n", out.knot.display(), out.mutant.display(), out.crossings)
        }
    };
    print!("{text}");
    Ok(())
}

fn catalog(cfg: &RunConfig, c: CatalogCommand) -> Result<(), CliError> {
    let cat = Catalog::builtin();
    let text = match c {
        CatalogCommand::List => match cfg.format {
            Format::Json => to_json(&cat.list()),
            Format::Table => cat
                .entries()
                .map(|e| format!("{:<26} {}\n", e.name, e.kind_name()))
                .collect(),
        },
        CatalogCommand::Show { name } => {
            let e = cat.lookup(&name)?;
            match cfg.format {
                Format::Json => to_json(e),
                Format::Table => show_table(e),
            }
        }
    };
    emit(cfg, &text)
}

fn show_table(e: &CatalogEntry) -> String {
    let mut s = format!("{} ({})\n{}\n", e.name, e.kind_name(), e.description);
    match &e.object {
        CatalogObject::Braid { braid } | CatalogObject::Knot { braid: Some(braid), .. } => {
            s += &format!("braid: {} strands, word {:?}\n", braid.strands, braid.word);
        }
        CatalogObject::Unavailable { reason, reference_lm_table } => {
            s += &format!("unavailable: {reason}\n");
            if let Some(t) = reference_lm_table {
                s += "reference table:\n";
                s += &t.render(&e.name);
            }
        }
        _ => {}
    }
    if let CatalogObject::Knot { diagram, .. } = &e.object {
        s += &format!("crossings: {}\n", diagram.crossing_count());
    }
    for o in &e.obligations {
        s += &format!("obligation: {o:?}\n");
    }
    s
}

fn cache(cfg: &RunConfig, c: CacheCommand) -> Result<(), CliError> {
    let dir = cfg.cache_dir.as_ref().ok_or_else(|| CliError::Usage("no cache directory could be determined".into()))?;
    let cache = MemoCache::open(dir).map_err(|e| io_err(dir, e))?;
    if let CacheCommand::Clear = c {
        cache.clear().map_err(|e| io_err(dir, e))?;
    }
    let s = cache.stats();
    let text = match cfg.format {
        Format::Json => to_json(&s),
        Format::Table => format!(
            "entries: {}\napprox bytes: {}\nfile: {}\nfile bytes: {}\n",
            s.entries,
            s.approx_bytes,
            s.file.as_ref().map(|f| f.display().to_string()).unwrap_or_default(),
            s.file_bytes.unwrap_or(0)
        ),
    };
    emit(cfg, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("genus2").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn cache_dir_resolution_order() {
        let cli = parse(&["--cache-dir", "/a", "cache", "stats"]);
        let cfg = RunConfig::resolve(&cli.config, Some("/b".into())).unwrap();
        assert_eq!(cfg.cache_dir, Some(PathBuf::from("/a")));
        let cli = parse(&["cache", "stats"]);
        let cfg = RunConfig::resolve(&cli.config, Some("/b".into())).unwrap();
        assert_eq!(cfg.cache_dir, Some(PathBuf::from("/b")));
    }

    #[test]
    fn budgets_must_be_positive() {
        for args in [["--budget-seconds", "0"], ["--budget-mem-mb", "0"], ["--truncation", "0"]] {
            let cli = parse(&[args[0], args[1], "catalog", "list"]);
            let e = RunConfig::resolve(&cli.config, None).unwrap_err();
            assert_eq!(e.exit_code(), EXIT_USAGE);
        }
    }

    #[test]
    fn compute_needs_exactly_one_input() {
        let argv = ["genus2", "compute", "--catalog", "a", "--braid", "{}"];
        assert!(Cli::try_parse_from(argv).is_err());
        assert!(Cli::try_parse_from(["genus2", "compute"]).is_err());
    }

    #[test]
    fn error_classes() {
        let e: CliError = EngineError::BudgetExceeded { nodes: 1, reason: "x".into() }.into();
        assert_eq!(e.exit_code(), EXIT_BUDGET);
        let e: CliError = CatalogError::Unknown("x".into()).into();
        assert_eq!(e.exit_code(), EXIT_VALIDATION);
    }

    #[test]
    fn input_kinds() {
        let (_, i) = parse_any(r#"{"strands":2,"word":[1,1,1]}"#).unwrap();
        assert!(matches!(i, Input::Braid(_)));
        assert!(parse_any(r#"{"strands":2,"word":[2]}"#).is_err());
        let d = serde_json::to_string(&BraidWord::new(2, vec![1, 1, 1]).unwrap().closure()).unwrap();
        let (_, i) = parse_any(&d).unwrap();
        assert!(matches!(i, Input::Diagram(_)));
    }
}
