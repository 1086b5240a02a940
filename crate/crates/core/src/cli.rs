//! The `flatstir` command line.
//!
//! Exit codes: 0 success, 1 a verification found a mismatch, 2 usage or
//! parse error, 3 enumeration budget exceeded, 4 input outside the domain of
//! the requested map.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bijection::{generate_flattened_via_bijection, phi, psi, BijectionGenError};
use crate::budget::{Budget, DEFAULT_CAP};
use crate::enumeration::{dowling, flatm_recurrence, mstirling_count};
use crate::error::{BijectionError, Error};
use crate::oeis::{compare, read_bfile, Generator};
use crate::table::{
    flat_table, multiplicity_table, CountTable, Key, MultiplicityMode, Provenance, TableError,
    TableMode,
};
use crate::typeb::{format_adler, generate_typeb, parse_adler, AdlerError};
use crate::verify::{run_suite, Suite};
use crate::word::{generate_flattened_filter, generate_stirling, StirlingWord, WordError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "flatstir",
    version,
    about = "Flattened Stirling permutations and type B set partitions"
)]
struct Cli {
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest number of objects a single enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List Stirling words, flattened words, or type B partitions.
    Gen(GenArgs),
    /// Apply the bijection or its inverse to one object.
    Map(MapArgs),
    /// Print the run-count table or the multiplicity table.
    Table(TableArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Compare an OEIS b-file with the matching generator.
    Oeis(OeisArgs),
    /// Build, check, or remove a JSON count cache.
    Cache(CacheArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    /// m-Stirling words of order n.
    Stirling,
    /// Flattened m-Stirling words of order n.
    Flat,
    /// Type B partitions of [-n, n] in canonical form.
    Typeb,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Via {
    Filter,
    Bijection,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ListFormat {
    Lines,
    Json,
}

#[derive(Debug, Args)]
struct GenArgs {
    family: Family,
    #[arg(short)]
    n: usize,
    #[arg(short, default_value_t = 2, value_parser = clap::value_parser!(u16).range(1..))]
    m: u16,
    #[arg(long, value_enum, default_value_t = ListFormat::Lines)]
    format: ListFormat,
    /// How flattened words of multiplicity 2 are produced.
    #[arg(long, value_enum, default_value_t = Via::Filter)]
    via: Via,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MapKind {
    /// Partition (canonical form) to flattened word.
    Phi,
    /// Flattened word to partition.
    Psi,
}

#[derive(Debug, Args)]
struct MapArgs {
    map: MapKind,
    /// The object to map; `-` reads standard input.
    input: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Filter,
    Bijection,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    /// Number of run columns (default: as many as the rows need).
    #[arg(long)]
    max_k: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Bijection)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Print the table of flat(Q_n^m) for m = 2..=max-m instead.
    #[arg(long)]
    mstirling: bool,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u16).range(2..))]
    max_m: u16,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Bijection,
    Runs,
    Dowling,
    Table1,
    Table2,
    Conjectures,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    suite: SuiteArg,
    #[arg(long)]
    max_n: Option<usize>,
    /// Print only the summary line.
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GeneratorArg {
    Dowling,
    Flat2,
    Mstirling3,
    Mstirling4,
}

#[derive(Debug, Args)]
struct OeisArgs {
    seq_id: String,
    bfile: PathBuf,
    /// Defaults to the generator registered for the sequence id.
    #[arg(long, value_enum)]
    generator: Option<GeneratorArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CacheAction {
    Build,
    Check,
    Clear,
}

#[derive(Debug, Args)]
struct CacheArgs {
    action: CacheAction,
    path: PathBuf,
    /// Largest order stored by `build`.
    #[arg(long, default_value_t = 8)]
    max_n: usize,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: thread pool: {e}");
            return EXIT_USAGE;
        }
    };
    let budget = Budget::new(cli.budget);
    let result = pool.install(|| dispatch(cli.command, &budget, out));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget(_) => EXIT_BUDGET,
        Error::Word(WordError::InvalidToken { .. }) | Error::Adler(AdlerError::Syntax { .. }) => {
            EXIT_USAGE
        }
        Error::Word(_) | Error::Adler(_) | Error::Family(_) | Error::Bijection(_) => EXIT_DOMAIN,
        Error::Table(TableError::Incoherent { .. }) => EXIT_MISMATCH,
        Error::Precision(_) => EXIT_MISMATCH,
        Error::BFile(_) | Error::Table(_) | Error::Io(_) => EXIT_USAGE,
    }
}

fn dispatch(command: Command, budget: &Budget, out: &mut (dyn Write + Send)) -> Result<i32, Error> {
    match command {
        Command::Gen(a) => gen(a, budget, out),
        Command::Map(a) => map(a, out),
        Command::Table(a) => table(a, budget, out),
        Command::Verify(a) => verify(a, budget, out),
        Command::Oeis(a) => oeis(a, out),
        Command::Cache(a) => cache(a, budget, out),
    }
}

/// Writes items one per line, or as a JSON array of strings.
fn emit(
    items: impl Iterator<Item = String>,
    format: ListFormat,
    out: &mut (dyn Write + Send),
) -> io::Result<()> {
    let mut out = io::BufWriter::new(out);
    match format {
        ListFormat::Lines => {
            for s in items {
                writeln!(out, "{s}")?;
            }
        }
        ListFormat::Json => {
            write!(out, "[")?;
            for (i, s) in items.enumerate() {
                let sep = if i == 0 { "" } else { "," };
                write!(out, "{sep}\n  {}", serde_json::Value::String(s))?;
            }
            writeln!(out, "\n]")?;
        }
    }
    out.flush()
}

fn gen(a: GenArgs, budget: &Budget, out: &mut (dyn Write + Send)) -> Result<i32, Error> {
    let m = a.m as usize;
    match (a.family, a.via) {
        (Family::Stirling, _) => emit(
            generate_stirling(a.n, m, budget)?.map(|w| w.to_string()),
            a.format,
            out,
        )?,
        (Family::Flat, Via::Bijection) if m == 2 && a.n >= 1 => {
            let words = generate_flattened_via_bijection(a.n, budget).map_err(|e| match e {
                BijectionGenError::Budget(b) => Error::Budget(b),
                BijectionGenError::ZeroOrder => unreachable!("n >= 1"),
            })?;
            emit(words.map(|w| w.to_string()), a.format, out)?
        }
        (Family::Flat, Via::Bijection) if m != 2 => {
            return Err(BijectionError::Multiplicity(m).into())
        }
        (Family::Flat, _) => emit(
            generate_flattened_filter(a.n, m, budget)?.map(|w| w.to_string()),
            a.format,
            out,
        )?,
        (Family::Typeb, _) => emit(
            generate_typeb(a.n, budget)?.map(|p| format_adler(&p)),
            a.format,
            out,
        )?,
    }
    Ok(EXIT_OK)
}

fn read_input(input: &str) -> Result<String, Error> {
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(input.to_string())
    }
}

fn map(a: MapArgs, out: &mut (dyn Write + Send)) -> Result<i32, Error> {
    let text = read_input(&a.input)?;
    match a.map {
        MapKind::Phi => {
            let p = parse_adler(&text)?;
            writeln!(out, "{}", phi(&p)?)?;
        }
        MapKind::Psi => {
            let w = StirlingWord::parse(&text, 2)?;
            writeln!(out, "{}", format_adler(&psi(&w)?))?;
        }
    }
    Ok(EXIT_OK)
}

fn table(a: TableArgs, budget: &Budget, out: &mut (dyn Write + Send)) -> Result<i32, Error> {
    if a.mstirling {
        let ms: Vec<usize> = (2..=a.max_m as usize).collect();
        let mode = match a.mode {
            ModeArg::Filter => MultiplicityMode::Enumeration,
            ModeArg::Bijection => MultiplicityMode::Recurrence,
        };
        let t = multiplicity_table(a.max_n, &ms, mode, budget)?;
        match a.format {
            TableFormat::Csv => out.write_all(t.to_csv().as_bytes())?,
            TableFormat::Json => {
                writeln!(out, "{}", t.to_count_table(provenance(a.mode))?.to_json())?
            }
        }
        return Ok(EXIT_OK);
    }
    let mode = match a.mode {
        ModeArg::Filter => TableMode::Filter,
        ModeArg::Bijection => TableMode::Bijection,
    };
    let t = flat_table(a.max_n, mode, budget)?;
    match a.format {
        TableFormat::Csv => out.write_all(t.to_csv(a.max_k).as_bytes())?,
        TableFormat::Json => writeln!(
            out,
            "{}",
            t.to_count_table(Provenance::Enumeration)?.to_json()
        )?,
    }
    Ok(EXIT_OK)
}

fn provenance(mode: ModeArg) -> Provenance {
    match mode {
        ModeArg::Filter => Provenance::Enumeration,
        ModeArg::Bijection => Provenance::Formula,
    }
}

fn verify(a: VerifyArgs, budget: &Budget, out: &mut (dyn Write + Send)) -> Result<i32, Error> {
    let suite = match a.suite {
        SuiteArg::Bijection => Suite::Bijection,
        SuiteArg::Runs => Suite::Runs,
        SuiteArg::Dowling => Suite::Dowling,
        SuiteArg::Table1 => Suite::Table1,
        SuiteArg::Table2 => Suite::Table2,
        SuiteArg::Conjectures => Suite::Conjectures,
        SuiteArg::All => Suite::All,
    };
    let report = run_suite(suite, a.max_n, budget);
    let text = report.to_string();
    if a.quiet {
        writeln!(out, "{}", text.lines().last().unwrap_or_default())?;
    } else {
        out.write_all(text.as_bytes())?;
    }
    Ok(match (&report.budget_hit, report.passed()) {
        (Some(_), _) => EXIT_BUDGET,
        (None, true) => EXIT_OK,
        (None, false) => EXIT_MISMATCH,
    })
}

fn oeis(a: OeisArgs, out: &mut (dyn Write + Send)) -> Result<i32, Error> {
    let generator = match a.generator {
        Some(GeneratorArg::Dowling) => Generator::Dowling,
        Some(GeneratorArg::Flat2) => Generator::Flat2,
        Some(GeneratorArg::Mstirling3) => Generator::MStirling3,
        Some(GeneratorArg::Mstirling4) => Generator::MStirling4,
        None => match Generator::for_sequence(&a.seq_id) {
            Some(g) => g,
            None => {
                return Err(Error::Io(io::Error::new(
                    io::ErrorKind::InvalidInput,
                    format!("no generator registered for {}; pass --generator", a.seq_id),
                )))
            }
        },
    };
    let seq = read_bfile(&a.seq_id, &a.bfile)?;
    let report = compare(generator, &seq);
    out.write_all(report.to_string().as_bytes())?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

/// Counts stored by `cache build`.
pub fn build_cache(max_n: usize, budget: &Budget) -> Result<CountTable, Error> {
    let mut t =
        flat_table(max_n, TableMode::Bijection, budget)?.to_count_table(Provenance::Enumeration)?;
    for n in 0..=max_n {
        t.insert(Key::typeb(n), dowling(n), Provenance::Formula)?;
        for m in 2..=5 {
            t.insert(
                Key::stirling(n, m),
                mstirling_count(n, m),
                Provenance::Formula,
            )?;
            t.insert(
                Key::mstirling_flat(n, m),
                flatm_recurrence(n, m),
                Provenance::Formula,
            )?;
        }
    }
    Ok(t)
}

fn cache(a: CacheArgs, budget: &Budget, out: &mut (dyn Write + Send)) -> Result<i32, Error> {
    match a.action {
        CacheAction::Build => {
            let t = build_cache(a.max_n, budget)?;
            write_atomically(&a.path, &t.to_json())?;
            writeln!(out, "wrote {} entries to {}", t.len(), a.path.display())?;
        }
        CacheAction::Check => {
            let text = std::fs::read_to_string(&a.path)?;
            let t = CountTable::load(&text, budget)?;
            writeln!(out, "ok: {} entries recomputed", t.len())?;
        }
        CacheAction::Clear => match std::fs::remove_file(&a.path) {
            Ok(()) => writeln!(out, "removed {}", a.path.display())?,
            Err(e) if e.kind() == io::ErrorKind::NotFound => writeln!(out, "nothing to remove")?,
            Err(e) => return Err(e.into()),
        },
    }
    Ok(EXIT_OK)
}

fn write_atomically(path: &Path, text: &str) -> io::Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, text)?;
    std::fs::rename(tmp, path)
}
