//! The `kbonacci` command line.
//!
//! Exit codes: 0 success, 1 usage or other error, 2 size guard, 3 engine
//! disagreement, 4 classification error, 5 table mismatch, 6 conjecture
//! failure.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use crate::analysis::{asymptotic_check_with, check_batch, geometric_control, DEFAULT_TOLERANCE};
use crate::counting::{count_series, CountSeries, Engine};
use crate::factors::{classify2, enumerate_fac2, fac_m_empirical, Family};
use crate::gf::{ogf_digit_expr, ogf_factor2_expr, GfExpr};
use crate::tables::{regenerate, verify, TableId};
use crate::words::{iterate_stream, iterate_with_guard, Digit, KParam, Word, DEFAULT_SIZE_GUARD};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SIZE_GUARD: i32 = 2;
pub const EXIT_ENGINE_DISAGREEMENT: i32 = 3;
pub const EXIT_CLASSIFICATION: i32 = 4;
pub const EXIT_TABLE_MISMATCH: i32 = 5;
pub const EXIT_CONJECTURE_FAILURE: i32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Parser)]
#[command(name = "kbonacci", version, about = "Factor statistics of the infinite-alphabet k-Bonacci words")]
pub struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct KArg {
    /// Alphabet parameter, at least 2.
    #[arg(short = 'k', value_parser = parse_k)]
    pub k: KParam,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the iterate W_n.
    Iterate {
        #[command(flatten)]
        k: KArg,
        /// Iterate index.
        #[arg(short = 'n')]
        n: usize,
        /// Write digits as they are generated instead of materializing the word.
        #[arg(long)]
        stream: bool,
        /// Reduce every digit mod k.
        #[arg(long)]
        project: bool,
        /// Refuse to build words longer than this.
        #[arg(long, default_value_t = DEFAULT_SIZE_GUARD)]
        guard: u64,
    },
    /// Count occurrences of a factor in W_n, or in W_0..W_upto.
    Count {
        #[command(flatten)]
        k: KArg,
        /// Factor as digits (`0102`) or comma-separated (`10,12`).
        #[arg(short = 'f', value_parser = parse_word)]
        factor: Word,
        /// Count in W_n only.
        #[arg(short = 'n', conflicts_with = "series", required_unless_present = "series")]
        n: Option<usize>,
        /// Count in every iterate up to W_UPTO.
        #[arg(long, value_name = "UPTO")]
        series: Option<usize>,
        /// naive, block, rec, ogf, or all (cross-check).
        #[arg(long, default_value = "block")]
        engine: String,
    },
    /// Print the closed-form generating function of a digit or length-2 factor.
    Ogf {
        #[command(flatten)]
        k: KArg,
        /// Factor as digits (`0102`) or comma-separated (`10,12`).
        #[arg(short = 'f', value_parser = parse_word)]
        factor: Word,
        /// Also print the series through y^N.
        #[arg(long, value_name = "N")]
        expand: Option<usize>,
    },
    /// Classify a length-2 word into B1, B2, B3 or NotAFactor.
    Classify {
        #[command(flatten)]
        k: KArg,
        /// Factor as digits (`0102`) or comma-separated (`10,12`).
        #[arg(short = 'f', value_parser = parse_word)]
        factor: Word,
    },
    /// List all length-2 factors with digits up to a bound.
    Enumerate {
        #[command(flatten)]
        k: KArg,
        /// Largest digit allowed in a listed factor.
        #[arg(long, default_value_t = 9)]
        bound: Digit,
    },
    /// Regenerate or verify the reference tables.
    Tables {
        /// digits-k4, B1-k4 or len2-mixed-k4; all three if omitted.
        #[arg(long, value_parser = parse_table)]
        table: Option<TableId>,
        /// Compare against the bundled reference copy.
        #[arg(long)]
        verify: bool,
        /// Treat known errata in the reference copy as failures.
        #[arg(long, requires = "verify")]
        strict: bool,
    },
    /// Test whether every factor's characteristic polynomial divides a power
    /// of the (k-1)-Bonacci polynomial.
    Conjecture {
        #[command(flatten)]
        k: KArg,
        /// Longest factor length to test.
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        /// Factors are taken from this iterate.
        #[arg(long, default_value_t = 12)]
        iterate: usize,
        /// Number of count terms per factor (default depends on the factor).
        #[arg(long)]
        max_n_terms: Option<usize>,
        /// Largest recurrence order to accept.
        #[arg(long)]
        order_cap: Option<usize>,
        /// Include per-factor verdicts.
        #[arg(long)]
        report: bool,
        /// Run the synthetic geometric series instead; it must fail.
        #[arg(long)]
        self_test: bool,
    },
    /// Growth of digit counts against n^(s-1) alpha^n.
    Asymptotics {
        #[command(flatten)]
        k: KArg,
        /// Digit whose counts are measured.
        #[arg(short = 'd')]
        d: Digit,
        /// Range of n, as LO..HI.
        #[arg(long, default_value = "40..60", value_parser = parse_window)]
        window: (usize, usize),
        /// Largest relative change between successive ratios still counted as converging.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
}

fn parse_k(s: &str) -> Result<KParam, String> {
    let k: u32 = s.parse().map_err(|e| format!("{e}"))?;
    KParam::new(k).map_err(|e| e.to_string())
}

fn parse_word(s: &str) -> Result<Word, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_table(s: &str) -> Result<TableId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((lo, hi))
}

/// Maps a library error to its exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeGuardExceeded { .. } => EXIT_SIZE_GUARD,
        Error::NotAFactor(_) | Error::UnclassifiedFactor(_) | Error::WrongLength { .. } => EXIT_CLASSIFICATION,
        _ => EXIT_USAGE,
    }
}

enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Iterate {
            k,
            n,
            stream,
            project,
            guard,
        } => cmd_iterate(out, format.unwrap_or(Format::Text), k.k, n, stream, project, guard),
        Command::Count {
            k,
            factor,
            n,
            series,
            engine,
        } => cmd_count(out, format.unwrap_or(Format::Text), k.k, &factor, n, series, &engine),
        Command::Ogf { k, factor, expand } => cmd_ogf(out, format.unwrap_or(Format::Text), k.k, &factor, expand),
        Command::Classify { k, factor } => cmd_classify(out, format.unwrap_or(Format::Json), k.k, &factor),
        Command::Enumerate { k, bound } => cmd_enumerate(out, format.unwrap_or(Format::Json), k.k, bound),
        Command::Tables { table, verify, strict } => {
            cmd_tables(out, format.unwrap_or(Format::Text), table, verify, strict)
        }
        Command::Conjecture {
            k,
            max_len,
            iterate,
            max_n_terms,
            order_cap,
            report,
            self_test,
        } => {
            let opts = ConjectureArgs {
                max_len,
                iterate,
                max_n_terms,
                order_cap,
                report,
            };
            if self_test {
                cmd_self_test(out, format.unwrap_or(Format::Json), k.k)
            } else {
                cmd_conjecture(out, format.unwrap_or(Format::Json), k.k, opts)
            }
        }
        Command::Asymptotics {
            k,
            d,
            window,
            tolerance,
        } => cmd_asymptotics(out, format.unwrap_or(Format::Json), k.k, d, window, tolerance),
    }
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::other)?;
    writeln!(out)
}

fn digit_text(d: Digit, separated: bool, first: bool) -> String {
    if separated && !first {
        format!("·{d}")
    } else {
        d.to_string()
    }
}

fn cmd_iterate(
    out: &mut dyn Write,
    format: Format,
    k: KParam,
    n: usize,
    stream: bool,
    project: bool,
    guard: u64,
) -> Outcome {
    let kd = k.as_digit();
    let map = |d: Digit| if project { d % kd } else { d };
    if stream {
        let separated = if project { kd > 10 } else { n > 9 };
        let mut w = io::BufWriter::new(out);
        let json = format == Format::Json;
        if json {
            write!(w, "[")?;
        }
        for (i, d) in iterate_stream(k, n).map(map).enumerate() {
            if json {
                write!(w, "{}{d}", if i > 0 { "," } else { "" })?;
            } else {
                write!(w, "{}", digit_text(d, separated, i == 0))?;
            }
        }
        writeln!(w, "{}", if json { "]" } else { "" })?;
        w.flush()?;
        return Ok(EXIT_OK);
    }
    let word = iterate_with_guard(k, n, guard)?;
    let word = if project { word.project(k) } else { word };
    match format {
        Format::Json => write_json(
            out,
            &json!({"k": k, "n": n, "projected": project, "length": word.len(), "word": word}),
        )?,
        _ => writeln!(out, "{word}")?,
    }
    Ok(EXIT_OK)
}

fn engines_for(spec: &str) -> std::result::Result<Vec<Engine>, Error> {
    if spec == "all" {
        Ok(Engine::ALL.to_vec())
    } else {
        Ok(vec![spec.parse()?])
    }
}

#[derive(Serialize)]
struct CountOutput<'a> {
    k: KParam,
    factor: &'a Word,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<String>>,
    engines: Vec<String>,
    skipped: Vec<String>,
    agree: bool,
}

fn cmd_count(
    out: &mut dyn Write,
    format: Format,
    k: KParam,
    factor: &Word,
    n: Option<usize>,
    series: Option<usize>,
    engine: &str,
) -> Outcome {
    let engines = engines_for(engine)?;
    let cross_check = engines.len() > 1;
    let upto = series.or(n).expect("clap requires -n or --series");
    let mut results: Vec<CountSeries> = Vec::new();
    let mut skipped = Vec::new();
    for e in engines {
        match count_series(k, factor, upto, e) {
            Ok(s) => results.push(s),
            Err(err @ (Error::EngineInapplicable { .. } | Error::SizeGuardExceeded { .. })) if cross_check => {
                skipped.push(format!("{e}: {err}"))
            }
            Err(err) => return Err(err.into()),
        }
    }
    let first = results.first().ok_or_else(|| Error::EngineInapplicable {
        engine: engine.to_string(),
        factor: factor.to_string(),
    })?;
    let agree = results.iter().all(|s| s.values == first.values);
    let values: &[BigUint] = &first.values;
    let output = CountOutput {
        k,
        factor,
        n,
        count: n.map(|n| values[n].to_string()),
        values: series.map(|_| values.iter().map(|v| v.to_string()).collect()),
        engines: results.iter().map(|s| s.engine.to_string()).collect(),
        skipped,
        agree,
    };
    match format {
        Format::Json => write_json(out, &output)?,
        Format::Csv | Format::Markdown if series.is_some() => {
            let mut header = vec!["n".to_string()];
            header.extend(results.iter().map(|s| s.engine.to_string()));
            let sep = if format == Format::Csv { "," } else { " | " };
            let wrap = |row: String| if format == Format::Csv { row } else { format!("| {row} |") };
            writeln!(out, "{}", wrap(header.join(sep)))?;
            if format == Format::Markdown {
                writeln!(out, "|{}", "---:|".repeat(header.len()))?;
            }
            for i in 0..=upto {
                let mut row = vec![i.to_string()];
                row.extend(results.iter().map(|s| s.values[i].to_string()));
                writeln!(out, "{}", wrap(row.join(sep)))?;
            }
        }
        _ => {
            match n {
                Some(n) => writeln!(out, "{}", values[n])?,
                None => {
                    let text: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                    writeln!(out, "{}", text.join(","))?
                }
            }
            if cross_check {
                let verdict = if agree { "agree" } else { "DISAGREE" };
                writeln!(out, "engines {verdict}: {}", output.engines.join(", "))?;
                for s in &output.skipped {
                    writeln!(out, "skipped {s}")?;
                }
            }
        }
    }
    if !agree {
        for s in &results {
            let text: Vec<String> = s.values.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}: {}", s.engine, text.join(","))?;
        }
        return Ok(EXIT_ENGINE_DISAGREEMENT);
    }
    Ok(EXIT_OK)
}

fn closed_form(k: KParam, factor: &Word) -> std::result::Result<GfExpr, Error> {
    match factor.len() {
        1 => ogf_digit_expr(k, factor.digits()[0]),
        2 => ogf_factor2_expr(k, factor),
        got => Err(Error::WrongLength { expected: 2, got }),
    }
}

fn cmd_ogf(out: &mut dyn Write, format: Format, k: KParam, factor: &Word, expand: Option<usize>) -> Outcome {
    let expr = closed_form(k, factor)?;
    let rational = expr.eval();
    let series = expand.map(|n| rational.series(n)).transpose()?;
    match format {
        Format::Json => write_json(
            out,
            &json!({
                "k": k,
                "factor": factor,
                "expr": expr.to_string(),
                "rational": rational,
                "series": series.as_ref().map(|s| s.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            }),
        )?,
        _ => {
            writeln!(out, "{expr}")?;
            writeln!(out, "= {rational}")?;
            if let Some(s) = series {
                let text: Vec<String> = s.iter().map(|c| c.to_string()).collect();
                writeln!(out, "series: {}", text.join(","))?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    k: KParam,
    word: &'a Word,
    #[serde(flatten)]
    family: Family,
    witness: Option<usize>,
}

fn cmd_classify(out: &mut dyn Write, format: Format, k: KParam, factor: &Word) -> Outcome {
    let class = classify2(k, factor)?;
    match format {
        Format::Json => write_json(
            out,
            &ClassifyOutput {
                k,
                word: factor,
                family: class.verdict,
                witness: class.witness,
            },
        )?,
        _ => match class.witness {
            Some(w) => writeln!(out, "{} (witness W_{w})", class.verdict)?,
            None => writeln!(out, "{}", class.verdict)?,
        },
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(out: &mut dyn Write, format: Format, k: KParam, bound: Digit) -> Outcome {
    let entries = enumerate_fac2(k, bound);
    match format {
        Format::Json => write_json(out, &entries)?,
        Format::Csv => {
            writeln!(out, "word,family,witness")?;
            for e in &entries {
                writeln!(out, "{},\"{}\",{}", e.word, e.class, e.witness)?;
            }
        }
        _ => {
            for e in &entries {
                writeln!(out, "{}\t{}\t{}", e.word, e.class, e.witness)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_tables(out: &mut dyn Write, format: Format, table: Option<TableId>, check: bool, strict: bool) -> Outcome {
    let ids: Vec<TableId> = table.map_or(TableId::ALL.to_vec(), |t| vec![t]);
    if !check {
        for id in ids {
            let t = regenerate(id)?;
            match format {
                Format::Json => write_json(out, &t)?,
                Format::Markdown => writeln!(out, "{}", t.to_markdown())?,
                _ => write!(out, "{}", t.to_csv())?,
            }
        }
        return Ok(EXIT_OK);
    }
    let reports = ids
        .iter()
        .map(|&id| verify(id, strict))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    match format {
        Format::Json => write_json(out, &reports)?,
        _ => {
            for r in &reports {
                write!(out, "{r}")?;
            }
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    Ok(if pass { EXIT_OK } else { EXIT_TABLE_MISMATCH })
}

struct ConjectureArgs {
    max_len: usize,
    iterate: usize,
    max_n_terms: Option<usize>,
    order_cap: Option<usize>,
    report: bool,
}

fn cmd_conjecture(out: &mut dyn Write, format: Format, k: KParam, args: ConjectureArgs) -> Outcome {
    let mut factors = Vec::new();
    for m in 1..=args.max_len {
        factors.extend(fac_m_empirical(k, m, args.iterate)?);
    }
    let batch = check_batch(k, &factors, args.max_n_terms, args.order_cap)?;
    match format {
        Format::Json if args.report => write_json(out, &batch)?,
        Format::Json => write_json(
            out,
            &json!({
                "k": k,
                "max_len": args.max_len,
                "iterate": args.iterate,
                "factors": batch.factors,
                "holds": batch.holds,
                "fails": batch.fails,
                "inconclusive": batch.inconclusive,
            }),
        )?,
        _ => {
            writeln!(
                out,
                "k={k}: {} factors of length <= {} from W_{}: {} hold, {} fail, {} inconclusive",
                batch.factors, args.max_len, args.iterate, batch.holds, batch.fails, batch.inconclusive
            )?;
            if args.report {
                let table = batch.summary_table();
                match format {
                    Format::Csv => write!(out, "{}", table.replace('\t', ","))?,
                    _ => write!(out, "{table}")?,
                }
            }
        }
    }
    Ok(if batch.fails > 0 { EXIT_CONJECTURE_FAILURE } else { EXIT_OK })
}

fn cmd_self_test(out: &mut dyn Write, format: Format, k: KParam) -> Outcome {
    let (fit, verdict) = geometric_control(k)?;
    match format {
        Format::Json => write_json(
            out,
            &json!({"series": "1,2,4,8,...", "fit": fit, "verdict": verdict}),
        )?,
        _ => writeln!(out, "geometric control: {verdict}")?,
    }
    Ok(if verdict.fails() { EXIT_CONJECTURE_FAILURE } else { EXIT_OK })
}

fn cmd_asymptotics(
    out: &mut dyn Write,
    format: Format,
    k: KParam,
    d: Digit,
    (lo, hi): (usize, usize),
    tolerance: f64,
) -> Outcome {
    let report = asymptotic_check_with(k, d, lo, hi, tolerance)?;
    match format {
        Format::Json => write_json(out, &report)?,
        _ => {
            writeln!(out, "alpha = {}", report.alpha)?;
            writeln!(out, "s = {}", report.s)?;
            writeln!(out, "gamma ~ {:.6}", report.gamma_estimate)?;
            writeln!(
                out,
                "max relative fluctuation over {lo}..{hi}: {:.3e} ({})",
                report.max_relative_fluctuation,
                if report.converging { "converging" } else { "not converging" }
            )?;
        }
    }
    Ok(EXIT_OK)
}
