//! The `ktile` command line.
//!
//! Exit codes: 0 success or all identities matched, 1 a verified mismatch
//! was found, 2 usage or limit error.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::decompositions::{decompose, DecompositionError, DecompositionKind};
use crate::identities::{self, report, EvalContext, Grid, LucasConvention, Scope};
use crate::seqcore::{self, Natural, SequenceCache};
use crate::tilings::{self, parse_pieces, total_width, Tiling, DEFAULT_ENUM_LIMIT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const ENUM_LIMIT_ENV: &str = "KTILE_ENUM_LIMIT";

#[derive(Debug, Parser)]
#[command(name = "ktile", version, about = "Generalized Fibonacci and Lucas numbers via board tilings")]
pub struct Cli {
    /// Memo file of `kind,k,n,value` lines, read before and written after the run.
    #[arg(long, global = true)]
    pub cache_file: Option<PathBuf>,
    /// Ignore the cache file entirely.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print F_n, F(3,n), F(4,n), L_n, L(3,n), L(4,n).
    Table {
        #[arg(long = "n", default_value = "0..11", value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Stream the codes of every tiling of one class.
    Enumerate {
        #[arg(long, value_enum)]
        class: Class,
        #[arg(long, value_parser = parse_k)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        enum_limit: Option<usize>,
    },
    /// Split one tiling with a structural cut.
    Decompose {
        #[arg(long)]
        kind: DecompositionKind,
        #[arg(long, value_parser = parse_k)]
        k: usize,
        #[arg(long)]
        code: String,
    },
    /// Compare enumeration counts against F and L over a grid.
    Oracle {
        #[arg(long, default_value = "2..5", value_parser = parse_k_range)]
        k: RangeInclusive<usize>,
        #[arg(long = "n", default_value = "0..14", value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long)]
        enum_limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check registered identities over a grid.
    Verify {
        /// Comma-separated identity ids; all when omitted.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
        #[arg(long, default_value = "2..6", value_parser = parse_k_range)]
        k: RangeInclusive<usize>,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        /// Bound for identities whose n multiplies k; defaults to --n-max.
        #[arg(long)]
        multiplier_max: Option<usize>,
        /// Evaluate outside the stated ranges instead of inside them.
        #[arg(long)]
        explore: bool,
        #[arg(long, default_value = "classical")]
        lucas_convention: LucasConvention,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Class {
    A,
    B,
}

/// `a..b` (inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |v: &str| {
        v.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad bound `{v}`: {e}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse(lo)?, parse(hi.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

fn parse_k(s: &str) -> Result<usize, String> {
    let k = s.parse::<usize>().map_err(|e| e.to_string())?;
    if k < 2 {
        return Err(format!("k must be at least 2, got {k}"));
    }
    Ok(k)
}

fn parse_k_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let r = parse_range(s)?;
    if *r.start() < 2 {
        return Err(format!("k must be at least 2, got {}", r.start()));
    }
    Ok(r)
}

fn enum_limit(flag: Option<usize>) -> Result<usize, String> {
    if let Some(limit) = flag {
        return Ok(limit);
    }
    match std::env::var(ENUM_LIMIT_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| format!("{ENUM_LIMIT_ENV}={v}: {e}")),
        Err(_) => Ok(DEFAULT_ENUM_LIMIT),
    }
}

/// Result of one subcommand before the cache is persisted.
type Outcome = Result<i32, Failure>;

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };

    let cache_path = cli.cache_file.as_ref().filter(|_| !cli.no_cache);
    let cache = match cache_path {
        Some(path) if path.exists() => {
            match File::open(path)
                .map_err(seqcore::SeqError::from)
                .and_then(|f| SequenceCache::load(BufReader::new(f)))
            {
                Ok(c) => c,
                Err(e) => {
                    let _ = writeln!(err, "error: cache file {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
        }
        _ => SequenceCache::new(),
    };
    let mut ctx = EvalContext::with_cache(cache);

    let outcome = match cli.command {
        Command::Table { n, format } => cmd_table(n, format, &mut ctx.cache, out),
        Command::Enumerate {
            class,
            k,
            n,
            enum_limit: limit,
        } => cmd_enumerate(class, k, n, limit, out),
        Command::Decompose { kind, k, code } => cmd_decompose(kind, k, &code, out),
        Command::Oracle {
            k,
            n,
            enum_limit: limit,
            format,
        } => cmd_oracle(k, n, limit, format, &mut ctx.cache, out),
        Command::Verify {
            ids,
            k,
            n_max,
            multiplier_max,
            explore,
            lucas_convention,
            format,
            output,
            jobs,
        } => {
            let grid = Grid::new(*k.start(), *k.end(), n_max)
                .multiplier_max(multiplier_max.unwrap_or(n_max))
                .scope(if explore { Scope::Explore } else { Scope::Stated })
                .lucas_convention(lucas_convention);
            cmd_verify(&ids, &grid, format, output, jobs, &mut ctx, out)
        }
    };

    let code = match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };

    if let Some(path) = cache_path {
        let saved = File::create(path)
            .map_err(seqcore::SeqError::from)
            .and_then(|f| {
                let mut w = BufWriter::new(f);
                ctx.cache.save(&mut w)?;
                w.flush()?;
                Ok(())
            });
        if let Err(e) = saved {
            let _ = writeln!(err, "error: writing cache file {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    code
}

#[derive(Serialize)]
struct TableRow {
    label: &'static str,
    values: Vec<String>,
}

#[derive(Serialize)]
struct TableOut {
    n: Vec<usize>,
    rows: Vec<TableRow>,
}

const TABLE_LABEL_WIDTH: usize = 8;

fn table_rows(ns: &RangeInclusive<usize>, cache: &mut SequenceCache) -> Result<Vec<TableRow>, Failure> {
    type Eval = fn(usize, &mut SequenceCache) -> Result<Natural, seqcore::SeqError>;
    let rows: [(&'static str, Eval); 6] = [
        ("F_n", seqcore::classic_fib),
        ("F(3,n)", |n, c| seqcore::gen_fib(3, n, c)),
        ("F(4,n)", |n, c| seqcore::gen_fib(4, n, c)),
        ("L_n", seqcore::classic_lucas),
        ("L(3,n)", |n, c| seqcore::gen_lucas(3, n, c)),
        ("L(4,n)", |n, c| seqcore::gen_lucas(4, n, c)),
    ];
    rows.iter()
        .map(|(label, eval)| {
            let values = ns
                .clone()
                .map(|n| eval(n, cache).map(|v| v.to_string()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?;
            Ok(TableRow { label, values })
        })
        .collect()
}

fn cmd_table(ns: RangeInclusive<usize>, format: Format, cache: &mut SequenceCache, out: &mut dyn Write) -> Outcome {
    let rows = table_rows(&ns, cache)?;
    match format {
        Format::Text => {
            let header: Vec<String> = ns.clone().map(|n| n.to_string()).collect();
            let width = rows
                .iter()
                .flat_map(|r| r.values.iter())
                .chain(header.iter())
                .map(String::len)
                .max()
                .unwrap_or(1)
                + 1;
            let mut line = |label: &str, cells: &[String]| -> io::Result<()> {
                let mut s = format!("{label:<TABLE_LABEL_WIDTH$}");
                for c in cells {
                    s.push_str(&format!("{c:>width$}"));
                }
                writeln!(out, "{s}")
            };
            line("n", &header)?;
            for row in &rows {
                line(row.label, &row.values)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let header = std::iter::once("row".to_string()).chain(ns.clone().map(|n| n.to_string()));
            w.write_record(header).map_err(io::Error::from)?;
            for row in &rows {
                w.write_record(std::iter::once(row.label.to_string()).chain(row.values.iter().cloned()))
                    .map_err(io::Error::from)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let table = TableOut {
                n: ns.collect(),
                rows,
            };
            serde_json::to_writer_pretty(&mut *out, &table).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(class: Class, k: usize, n: usize, limit: Option<usize>, out: &mut dyn Write) -> Outcome {
    let limit = enum_limit(limit).map_err(usage)?;
    let mut count = 0usize;
    let mut io_result = Ok(());
    let mut emit = |pieces: &[tilings::Piece]| {
        if io_result.is_ok() {
            io_result = writeln!(out, "{}", tilings::code_of(pieces));
        }
        count += 1;
    };
    match class {
        Class::A => tilings::for_each_type_a(k, n, limit, &mut emit),
        Class::B => tilings::for_each_type_b(k, n, limit, &mut emit),
    }
    .map_err(usage)?;
    io_result?;
    writeln!(out, "count={count}")?;
    Ok(EXIT_OK)
}

fn cmd_decompose(kind: DecompositionKind, k: usize, code: &str, out: &mut dyn Write) -> Outcome {
    let pieces = parse_pieces(code).map_err(usage)?;
    let n = total_width(k, &pieces)
        .checked_sub(1)
        .ok_or_else(|| usage("empty code"))?;
    let tiling = Tiling::new(k, n, pieces).map_err(usage)?;
    match decompose(kind, &tiling) {
        Ok(d) => {
            writeln!(out, "code={code} n={n} {}", d.record())?;
            Ok(EXIT_OK)
        }
        Err(e @ DecompositionError::ReducedNotTypeB { .. }) => {
            writeln!(out, "code={code} n={n} kind={kind} k={k} error=\"{e}\"")?;
            Ok(EXIT_MISMATCH)
        }
        Err(e) => Err(usage(e)),
    }
}

#[derive(Debug, Serialize)]
struct OracleCell {
    k: usize,
    n: usize,
    type_a: usize,
    #[serde(serialize_with = "decimal")]
    fib: Natural,
    type_b: usize,
    #[serde(serialize_with = "decimal")]
    lucas: Natural,
    agree: bool,
}

fn decimal<S: serde::Serializer>(v: &Natural, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn cmd_oracle(
    ks: RangeInclusive<usize>,
    ns: RangeInclusive<usize>,
    limit: Option<usize>,
    format: Format,
    cache: &mut SequenceCache,
    out: &mut dyn Write,
) -> Outcome {
    let limit = enum_limit(limit).map_err(usage)?;
    if *ns.end() > limit {
        return Err(usage(tilings::TilingError::LimitExceeded {
            n: *ns.end(),
            limit,
        }));
    }
    let mut cells = Vec::new();
    for k in ks {
        for n in ns.clone() {
            let mut type_a = 0;
            let mut type_b = 0;
            tilings::for_each_type_a(k, n, limit, |p| {
                type_a += 1;
                if tilings::is_type_b(k, n, p) {
                    type_b += 1;
                }
            })
            .map_err(usage)?;
            let fib = seqcore::gen_fib(k, n, cache).map_err(usage)?;
            let lucas = seqcore::gen_lucas(k, n, cache).map_err(usage)?;
            let agree = fib == Natural::from(type_a) && lucas == Natural::from(type_b);
            cells.push(OracleCell {
                k,
                n,
                type_a,
                fib,
                type_b,
                lucas,
                agree,
            });
        }
    }
    let disagreements = cells.iter().filter(|c| !c.agree).count();
    match format {
        Format::Text => {
            for c in &cells {
                writeln!(
                    out,
                    "k={} n={} type-a={} F={} type-b={} L={} {}",
                    c.k,
                    c.n,
                    c.type_a,
                    c.fib,
                    c.type_b,
                    c.lucas,
                    if c.agree { "ok" } else { "MISMATCH" }
                )?;
            }
            writeln!(out, "oracle: {} cells, {disagreements} disagreements", cells.len())?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["k", "n", "type_a", "fib", "type_b", "lucas", "agree"])
                .map_err(io::Error::from)?;
            for c in &cells {
                w.serialize((c.k, c.n, c.type_a, c.fib.to_string(), c.type_b, c.lucas.to_string(), c.agree))
                    .map_err(io::Error::from)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &cells).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(if disagreements == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_verify(
    ids: &[String],
    grid: &Grid,
    format: Format,
    output: Option<PathBuf>,
    jobs: Option<usize>,
    ctx: &mut EvalContext,
    out: &mut dyn Write,
) -> Outcome {
    let selected = if ids.is_empty() {
        identities::registry()
    } else {
        identities::select(ids).map_err(usage)?
    };
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let report = identities::verify_grid(&selected, grid, ctx, jobs).map_err(usage)?;

    let mut file;
    let sink: &mut dyn Write = match &output {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => out,
    };
    match format {
        Format::Text => report::write_text(&report, &mut *sink)?,
        Format::Json => report::write_json(&report, &mut *sink)?,
        Format::Csv => report::write_csv(&report, &mut *sink)?,
    }
    sink.flush()?;
    Ok(if report.all_matched() { EXIT_OK } else { EXIT_MISMATCH })
}
