//! Command-line front end. [`run`] is the whole program minus process exit,
//! so it can be driven from tests with in-memory streams.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::abf::{abf_sum, Direction};
use crate::error::Error;
use crate::partitions::{durfee_side, e1_stat, enumerate, frobenius, mex, stat, Partition, Stat};
use crate::paths::{bbs_evolve, config_sum, path_encode, BitSeq};
use crate::verify::{run_checks, Bounds, CheckId, Report};

/// Version tag carried by every JSON object the CLI prints.
pub const JSON_SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "sqrank", version, about = "Partition statistics, configuration sums and identity checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AbfArg {
    Up,
    Down,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Statistics of one partition, given as `19,16,9,2,1` or `2^3 1^2`.
    Stat { partition: String },

    /// Tables comparing sqrank with mex_{2,1} and rerank with mex_{2,2}.
    Table {
        #[arg(long)]
        n: usize,
    },

    /// Stream partitions of n in lexicographically decreasing order.
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_parts: Option<usize>,
        #[arg(long)]
        max_part: Option<usize>,
        /// `sqrank=r`, `rerank=r`, or `e1=r,n=m`.
        #[arg(long)]
        filter: Option<String>,
    },

    /// Box-ball time evolution of a bit string.
    Bbs {
        bits: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Also print the path encoding of every state.
        #[arg(long)]
        show_path: bool,
    },

    /// Configuration sum over words of length L with s ones.
    Zsum {
        #[arg(long = "L")]
        l: usize,
        #[arg(long)]
        s: usize,
        /// Restrict to the stratum epsilon1 = r.
        #[arg(long, conflicts_with = "abf")]
        r: Option<usize>,
        /// Boundary-weighted half-integer sum instead.
        #[arg(long, value_enum)]
        abf: Option<AbfArg>,
    },

    /// Run the verification checks; exits 1 if any fails.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CheckId::ALL.map(CheckId::name)))]
        check: Option<String>,
        #[arg(long = "n-max", env = "SQRANK_N_MAX", default_value_t = Bounds::default().n_max)]
        n_max: usize,
        #[arg(long = "L-max", env = "SQRANK_L_MAX", default_value_t = Bounds::default().l_max)]
        l_max: usize,
        #[arg(long, env = "SQRANK_ORDER", default_value_t = Bounds::default().order)]
        order: usize,
        #[arg(long = "weight-max", env = "SQRANK_WEIGHT_MAX", default_value_t = Bounds::default().weight_max)]
        weight_max: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code: 0 success, 1 failed check, 2 bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return e.exit_code();
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let f = cli.format;
    match cli.command {
        Command::Stat { partition } => cmd_stat(&partition, f, out)?,
        Command::Table { n } => cmd_table(n, f, out)?,
        Command::Enum { n, max_parts, max_part, filter } => cmd_enum(n, max_parts, max_part, filter.as_deref(), f, out)?,
        Command::Bbs { bits, steps, show_path } => cmd_bbs(&bits, steps, show_path, f, out)?,
        Command::Zsum { l, s, r, abf } => cmd_zsum(l, s, r, abf, f, out)?,
        Command::Verify { check, n_max, l_max, order, weight_max } => {
            let ids: Vec<CheckId> = match check {
                Some(c) => vec![c.parse()?],
                None => CheckId::ALL.to_vec(),
            };
            let reports = run_checks(&ids, &Bounds { n_max, l_max, order, weight_max });
            write_reports(&reports, f, out)?;
            return Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn write_json(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json"))
}

fn cmd_stat(arg: &str, f: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let lam = Partition::parse_any(arg)?;
    let fr = frobenius(&lam);
    let sq = stat(&lam, Stat::Sqrank);
    let re = stat(&lam, Stat::Rerank);
    let (m1, m2) = (mex(&lam, 2, 1)?, mex(&lam, 2, 2)?);
    let (n0, n1) = (durfee_side(&lam, 0), durfee_side(&lam, 1));
    match f {
        Format::Text => {
            writeln!(out, "partition  {}", lam.multiplicity_notation())?;
            writeln!(out, "weight     {}", lam.weight())?;
            writeln!(out, "frobenius  {fr}")?;
            writeln!(out, "durfee     n0={n0} n1={n1}")?;
            writeln!(out, "sqrank     {sq}")?;
            writeln!(out, "rerank     {re}")?;
            writeln!(out, "mex_2_1    {m1}")?;
            writeln!(out, "mex_2_2    {m2}")?;
        }
        Format::Json => write_json(
            out,
            &json!({
                "schema": JSON_SCHEMA_VERSION,
                "partition": lam.parts(),
                "weight": lam.weight(),
                "frobenius": {"arms": fr.arms, "legs": fr.legs},
                "durfee_side": {"a0": n0, "a1": n1},
                "sqrank": sq,
                "rerank": re,
                "mex_2_1": m1,
                "mex_2_2": m2,
            }),
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["partition", "weight", "frobenius", "durfee_a0", "durfee_a1", "sqrank", "rerank", "mex_2_1", "mex_2_2"])?;
            w.write_record([
                lam.to_string(),
                lam.weight().to_string(),
                fr.to_string(),
                n0.to_string(),
                n1.to_string(),
                sq.to_string(),
                re.to_string(),
                m1.to_string(),
                m2.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

struct TableRow {
    partition: Partition,
    stat: usize,
    mex_r: usize,
}

struct Table {
    which: Stat,
    rows: Vec<TableRow>,
}

impl Table {
    fn build(n: usize, which: Stat) -> Table {
        let mut all: Vec<Partition> = enumerate(n, None, None).collect();
        all.reverse();
        let a = which.offset();
        let rows = all
            .into_iter()
            .map(|p| {
                let m = mex(&p, 2, a + 1).expect("valid modulus");
                TableRow { stat: stat(&p, which), mex_r: (m - a - 1) / 2, partition: p }
            })
            .collect();
        Table { which, rows }
    }

    fn width(&self) -> usize {
        self.rows.iter().map(|r| r.stat.max(r.mex_r) + 1).max().unwrap_or(1)
    }

    fn mex_label(&self) -> &'static str {
        match self.which {
            Stat::Sqrank => "mex_{2,1}",
            Stat::Rerank => "mex_{2,2}",
        }
    }

    fn mex_value(&self, r: usize) -> usize {
        2 * r + self.which.offset() + 1
    }

    fn totals(&self, cols: usize) -> (Vec<usize>, Vec<usize>) {
        let mut s = vec![0; cols];
        let mut m = vec![0; cols];
        for r in &self.rows {
            s[r.stat] += 1;
            m[r.mex_r] += 1;
        }
        (s, m)
    }
}

fn cmd_table(n: usize, f: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let tables = [Table::build(n, Stat::Sqrank), Table::build(n, Stat::Rerank)];
    match f {
        Format::Text => {
            for (i, t) in tables.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                write_table_text(t, n, out)?;
            }
        }
        Format::Json => {
            let tables: Vec<Value> = tables
                .iter()
                .map(|t| {
                    let cols = t.width();
                    let (ts, tm) = t.totals(cols);
                    json!({
                        "stat": t.which.name(),
                        "mex": t.mex_label(),
                        "stat_columns": (0..cols).collect::<Vec<_>>(),
                        "mex_columns": (0..cols).map(|r| t.mex_value(r)).collect::<Vec<_>>(),
                        "rows": t.rows.iter().map(|r| json!({
                            "partition": r.partition.parts(),
                            "notation": r.partition.multiplicity_notation(),
                            "stat": r.stat,
                            "mex": t.mex_value(r.mex_r),
                        })).collect::<Vec<_>>(),
                        "totals": {"stat": ts, "mex": tm},
                    })
                })
                .collect();
            write_json(out, &json!({"schema": JSON_SCHEMA_VERSION, "n": n, "tables": tables}))?;
        }
        Format::Csv => {
            let cols = tables.iter().map(Table::width).max().unwrap_or(1);
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["table".to_string(), "partition".to_string()];
            header.extend((0..cols).map(|r| format!("stat_r{r}")));
            header.extend((0..cols).map(|r| format!("mex_r{r}")));
            w.write_record(&header)?;
            for t in &tables {
                let one_hot = |k: usize| (0..cols).map(move |c| if c == k { "1" } else { "0" }.to_string());
                for r in &t.rows {
                    let mut rec = vec![t.which.name().to_string(), r.partition.multiplicity_notation()];
                    rec.extend(one_hot(r.stat));
                    rec.extend(one_hot(r.mex_r));
                    w.write_record(&rec)?;
                }
                let (ts, tm) = t.totals(cols);
                let mut rec = vec![t.which.name().to_string(), "Total".to_string()];
                rec.extend(ts.iter().chain(&tm).map(usize::to_string));
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn write_table_text(t: &Table, n: usize, out: &mut dyn Write) -> io::Result<()> {
    let cols = t.width();
    let (ts, tm) = t.totals(cols);
    let name_w = t.rows.iter().map(|r| r.partition.multiplicity_notation().chars().count()).max().unwrap_or(0).max(9);
    let cell_w = ts.iter().chain(&tm).map(|v| v.to_string().len()).max().unwrap_or(1).max(2) + 2;
    let block = cell_w * cols;
    let rule = format!("{}-+-{}-+-{}", "-".repeat(name_w), "-".repeat(block), "-".repeat(block));
    let cells = |vals: &mut dyn Iterator<Item = String>| vals.map(|v| format!("{v:>cell_w$}")).collect::<String>();

    writeln!(out, "{} vs {}, partitions of {n}", t.which.name(), t.mex_label())?;
    let head = format!("{:name_w$} | {:block$} | {}", "", t.which.name(), t.mex_label());
    writeln!(out, "{head}")?;
    writeln!(
        out,
        "{:name_w$} | {} | {}",
        "Partition",
        cells(&mut (0..cols).map(|r| r.to_string())),
        cells(&mut (0..cols).map(|r| t.mex_value(r).to_string()))
    )?;
    writeln!(out, "{rule}")?;
    let mark = |k: usize| (0..cols).map(move |c| if c == k { "x".to_string() } else { String::new() });
    let mut prev_largest = None;
    for r in &t.rows {
        let largest = r.partition.largest_part();
        if prev_largest.is_some_and(|p| p != largest) {
            writeln!(out, "{rule}")?;
        }
        prev_largest = Some(largest);
        let line = format!(
            "{:name_w$} | {} | {}",
            r.partition.multiplicity_notation(),
            cells(&mut mark(r.stat)),
            cells(&mut mark(r.mex_r))
        );
        writeln!(out, "{}", line.trim_end())?;
    }
    writeln!(out, "{rule}")?;
    writeln!(
        out,
        "{:name_w$} | {} | {}",
        "Total",
        cells(&mut ts.iter().map(usize::to_string)),
        cells(&mut tm.iter().map(usize::to_string))
    )
}

enum Filter {
    Stat(Stat, usize),
    E1 { r: usize, n: usize },
}

fn parse_filter(s: &str) -> Result<Filter, Error> {
    let bad = |tok: &str| Error::Parse { what: "filter", token: tok.to_string() };
    let mut fields = std::collections::BTreeMap::new();
    for tok in s.split(',') {
        let (k, v) = tok.split_once('=').ok_or_else(|| bad(tok))?;
        let v: usize = v.trim().parse().map_err(|_| bad(tok))?;
        if fields.insert(k.trim().to_string(), v).is_some() {
            return Err(bad(tok));
        }
    }
    let keys: Vec<&str> = fields.keys().map(String::as_str).collect();
    match keys.as_slice() {
        ["sqrank"] => Ok(Filter::Stat(Stat::Sqrank, fields["sqrank"])),
        ["rerank"] => Ok(Filter::Stat(Stat::Rerank, fields["rerank"])),
        ["e1", "n"] => Ok(Filter::E1 { r: fields["e1"], n: fields["n"] }),
        _ => Err(bad(s)),
    }
}

fn cmd_enum(
    n: usize,
    max_parts: Option<usize>,
    max_part: Option<usize>,
    filter: Option<&str>,
    f: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let filter = filter.map(parse_filter).transpose()?;
    let keep = |p: &Partition| match &filter {
        None => true,
        Some(Filter::Stat(which, r)) => stat(p, *which) == *r,
        Some(Filter::E1 { r, n }) => e1_stat(p, *n) == *r,
    };
    let iter = enumerate(n, max_parts, max_part).filter(keep);
    match f {
        Format::Text => {
            for p in iter {
                writeln!(out, "{p}")?;
            }
        }
        Format::Json => {
            for p in iter {
                writeln!(out, "{}", serde_json::to_string(p.parts()).expect("json"))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["partition"])?;
            for p in iter {
                w.write_record([p.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn join_path(eta: &BitSeq) -> String {
    path_encode(eta).iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_bbs(bits: &str, steps: usize, show_path: bool, f: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let mut states = vec![bits.parse::<BitSeq>()?];
    for _ in 0..steps {
        let next = bbs_evolve(states.last().expect("nonempty"))?;
        states.push(next);
    }
    let shown = states.iter().enumerate().skip(if show_path { 0 } else { 1 });
    match f {
        Format::Text => {
            for (_, s) in shown {
                if show_path {
                    writeln!(out, "{s}\t{}", join_path(s))?;
                } else {
                    writeln!(out, "{s}")?;
                }
            }
        }
        Format::Json => {
            let steps: Vec<Value> = shown
                .map(|(t, s)| {
                    let mut v = json!({"t": t, "bits": s.to_string()});
                    if show_path {
                        v["path"] = json!(path_encode(s));
                    }
                    v
                })
                .collect();
            write_json(out, &json!({"schema": JSON_SCHEMA_VERSION, "input": states[0].to_string(), "states": steps}))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if show_path {
                w.write_record(["t", "bits", "path"])?;
            } else {
                w.write_record(["t", "bits"])?;
            }
            for (t, s) in shown {
                if show_path {
                    w.write_record([t.to_string(), s.to_string(), join_path(s)])?;
                } else {
                    w.write_record([t.to_string(), s.to_string()])?;
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_zsum(l: usize, s: usize, r: Option<usize>, abf: Option<AbfArg>, f: Format, out: &mut dyn Write) -> Result<(), CliError> {
    if s > l {
        return Err(Error::Domain(format!("need s <= L, got L = {l}, s = {s}")).into());
    }
    if let Some(dir) = abf {
        let dir = match dir {
            AbfArg::Up => Direction::Up,
            AbfArg::Down => Direction::Down,
        };
        let z = abf_sum(l, s, dir);
        match f {
            Format::Text => writeln!(out, "{z}")?,
            Format::Json => write_json(
                out,
                &json!({"schema": JSON_SCHEMA_VERSION, "L": l, "s": s, "abf": dir.name(), "series": z.to_json()}),
            )?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["exponent_half", "coefficient"])?;
                for (e, c) in z.as_x().terms() {
                    w.write_record([e.to_string(), c.to_string()])?;
                }
                w.flush()?;
            }
        }
        return Ok(());
    }
    let z = config_sum(l, s, r);
    match f {
        Format::Text => writeln!(out, "{z}")?,
        Format::Json => {
            write_json(out, &json!({"schema": JSON_SCHEMA_VERSION, "L": l, "s": s, "r": r, "series": z.to_json()}))?
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["exponent", "coefficient"])?;
            for (e, c) in z.terms() {
                w.write_record([e.to_string(), c.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn write_reports(reports: &[Report], f: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match f {
        Format::Text => {
            for r in reports {
                write!(out, "{r}")?;
            }
        }
        Format::Json => write_json(
            out,
            &json!({
                "schema": JSON_SCHEMA_VERSION,
                "pass": reports.iter().all(|r| r.pass),
                "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
            }),
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["check", "pass", "cells_checked", "counterexamples", "elapsed_ms", "params"])?;
            for r in reports {
                w.write_record([
                    r.check.clone(),
                    r.pass.to_string(),
                    r.cells_checked.to_string(),
                    r.counterexamples.len().to_string(),
                    r.elapsed_ms.to_string(),
                    serde_json::to_string(&r.params).expect("json"),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
