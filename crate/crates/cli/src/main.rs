//! `froblab`: compute, verify and tabulate p-Frobenius and p-Sylvester numbers.

mod cache;

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use froblab::closed_forms::params;
use froblab::compute::{compute_family_with, compute_tuple_with, Computed, Fallback, Source};
use froblab::denumerant::largest_with_exactly_p_in;
use froblab::sequences::seq;
use froblab::tables::{build_table, export_json, render_ascii, RenderMode, ResidueTable};
use froblab::verify::{parse_range, proposition_check, run_sweep, KRange, Mode, PropositionRow, SweepSpec, VerifyReport};
use froblab::{Error, FreshTables, GeneratorTuple, Method, Quantity, SemigroupOracle, SequenceKind, TableSource};
use serde_json::{json, Value};

use cache::DiskCache;

#[derive(Parser, Debug)]
#[command(name = "froblab", version, about = "p-Frobenius and p-Sylvester numbers of numerical semigroups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for sweeps (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Suppress diagnostics on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// g_p and/or n_p of a tuple or a family triple.
    Compute(ComputeArgs),
    /// Compare closed forms with the oracle over a parameter grid.
    Verify(VerifyArgs),
    /// Render the residue table of a family triple.
    Table(TableArgs),
    /// Largest integer with exactly p representations.
    Exact(ExactArgs),
    /// Print Fibonacci or Lucas numbers.
    Seq(SeqArgs),
}

#[derive(Args, Debug)]
#[group(id = "target", required = true, args = ["gens", "kind"])]
struct ComputeArgs {
    /// Comma-separated generators, e.g. 8,21,55.
    #[arg(long, value_parser = parse_gens)]
    gens: Option<GeneratorTuple>,
    /// Sequence family (fib or lucas).
    #[arg(long, requires_all = ["i", "k"], conflicts_with = "gens")]
    kind: Option<SequenceKind>,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// A single p or a range such as 0..4.
    #[arg(long, value_parser = parse_range, default_value = "0")]
    p: RangeInclusive<u32>,
    #[arg(long, value_enum, default_value_t = What::G)]
    what: What,
    /// closed, oracle or auto.
    #[arg(long, default_value = "auto")]
    method: Method,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum What {
    G,
    N,
    Both,
}

impl What {
    fn quantities(self) -> &'static [Quantity] {
        match self {
            What::G => &[Quantity::Frobenius],
            What::N => &[Quantity::Sylvester],
            What::Both => &[Quantity::Frobenius, Quantity::Sylvester],
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma-separated families.
    #[arg(long, value_delimiter = ',', default_value = "fib")]
    kinds: Vec<SequenceKind>,
    #[arg(long, value_parser = parse_range, default_value = "3..12")]
    i: RangeInclusive<u32>,
    /// Absolute or relative to i, e.g. 3..i+5 or i-5..i+5.
    #[arg(long, default_value = "3..i+5")]
    k: KRange,
    #[arg(long, value_parser = parse_range, default_value = "0..4")]
    p: RangeInclusive<u32>,
    /// frobenius, sylvester or both.
    #[arg(long, default_value = "both")]
    mode: Mode,
    /// Do not fail on mismatches in branches already marked unconfirmed.
    #[arg(long)]
    allow_unconfirmed: bool,
    /// Check the two-generator collapse instead of the grid (uses the i range and the top of the p range).
    #[arg(long)]
    proposition: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    kind: SequenceKind,
    #[arg(long)]
    i: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 4)]
    pmax: u32,
    /// value, residue or level.
    #[arg(long, default_value = "value")]
    mode: RenderMode,
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[arg(long, value_parser = parse_gens)]
    gens: GeneratorTuple,
    #[arg(long)]
    p: u32,
}

#[derive(Args, Debug)]
struct SeqArgs {
    #[arg(long)]
    kind: SequenceKind,
    /// A single index or a range such as 0..20.
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<u32>,
}

fn parse_gens(s: &str) -> Result<GeneratorTuple, String> {
    s.parse()
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::DegenerateTuple) => 3,
            Failure::Lib(Error::NotCovered(_)) => 4,
            Failure::Lib(Error::MalformedTable(_)) | Failure::Mismatch(_) => 1,
            Failure::Lib(_) => 2,
        }
    }
}

struct Ctx {
    format: Format,
    jobs: usize,
    quiet: bool,
    tables: Box<dyn TableSource>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let ctx = Ctx {
        format: cli.format,
        jobs: cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, usize::from)).max(1),
        quiet: cli.quiet,
        tables: match DiskCache::from_env() {
            Some(c) => Box::new(c),
            None => Box::new(FreshTables),
        },
    };
    let result = match &cli.command {
        Command::Compute(a) => cmd_compute(&ctx, a),
        Command::Verify(a) => cmd_verify(&ctx, a),
        Command::Table(a) => cmd_table(&ctx, a),
        Command::Exact(a) => cmd_exact(&ctx, a),
        Command::Seq(a) => cmd_seq(&ctx, a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Mismatch(out) => print!("{out}"),
            }
            ExitCode::from(f.code())
        }
    }
}

/// An arbitrary-precision integer as a JSON number.
fn number(v: impl ToString) -> Value {
    Value::Number(v.to_string().parse().expect("integer literal"))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn symbol(kind: SequenceKind) -> char {
    match kind {
        SequenceKind::Fibonacci => 'F',
        SequenceKind::Lucas => 'L',
    }
}

fn cmd_compute(ctx: &Ctx, a: &ComputeArgs) -> Result<String, Failure> {
    let mut results = Vec::new();
    let (tuple, family) = match (&a.gens, a.kind) {
        (Some(t), _) => {
            if a.method == Method::Closed {
                return Err(Error::NotCovered(format!("the tuple {t}: closed forms need --kind, --i and --k")).into());
            }
            for p in a.p.clone() {
                for &q in a.what.quantities() {
                    results.push(compute_tuple_with(t, p, q, ctx.tables.as_ref())?);
                }
            }
            (t.gens().iter().map(u64::to_string).collect::<Vec<_>>(), Value::Null)
        }
        (None, Some(kind)) => {
            let (i, k) = (a.i.expect("required by clap"), a.k.expect("required by clap"));
            let tp = params(kind, i, k, *a.p.start())?;
            for p in a.p.clone() {
                for &q in a.what.quantities() {
                    results.push(compute_family_with(kind, i, k, p, q, a.method, ctx.tables.as_ref())?);
                }
            }
            let family = json!({"kind": kind.short_name(), "i": i, "k": k, "r": number(&tp.r), "ell": number(&tp.ell)});
            (tp.generators().iter().map(ToString::to_string).collect(), family)
        }
        (None, None) => unreachable!("clap requires a target"),
    };

    let gens = format!("({})", tuple.join(","));
    Ok(match ctx.format {
        Format::Text => {
            let mut out = String::new();
            if let Value::Object(f) = &family {
                let _ = writeln!(out, "{} i={} k={} gens={gens} r={} ell={}", f["kind"].as_str().unwrap_or(""), f["i"], f["k"], f["r"], f["ell"]);
            } else {
                let _ = writeln!(out, "gens={gens}");
            }
            for c in &results {
                let _ = writeln!(out, "{}_{} = {}  [{}]", c.quantity, c.p, c.value, c.source);
            }
            out
        }
        Format::Json => pretty(&json!({
            "tuple": tuple.iter().map(number).collect::<Vec<_>>(),
            "family": family,
            "method": method_name(a.method),
            "results": results.iter().map(result_json).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("quantity,p,value,path,case_tag\n");
            for c in &results {
                let (path, tag) = path_and_tag(c);
                let _ = writeln!(out, "{},{},{},{},{}", c.quantity, c.p, c.value, path, tag.unwrap_or_default());
            }
            out
        }
    })
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Closed => "closed",
        Method::Oracle => "oracle",
        Method::Auto => "auto",
    }
}

/// Which path answered, and the closed-form tag involved if any.
fn path_and_tag(c: &Computed) -> (&'static str, Option<String>) {
    match &c.source {
        Source::ClosedForm(tag) => ("closed", Some(tag.to_string())),
        Source::Oracle(Fallback::Unconfirmed(tag)) => ("oracle", Some(tag.to_string())),
        Source::Oracle(_) => ("oracle", None),
    }
}

fn result_json(c: &Computed) -> Value {
    let (path, tag) = path_and_tag(c);
    json!({
        "quantity": c.quantity.symbol(),
        "p": c.p,
        "value": number(&c.value),
        "path": path,
        "case_tag": tag,
        "source": c.source.to_string(),
    })
}

fn cmd_verify(ctx: &Ctx, a: &VerifyArgs) -> Result<String, Failure> {
    if a.proposition {
        return verify_proposition(ctx, a);
    }
    let spec = SweepSpec { kinds: a.kinds.clone(), i: a.i.clone(), k: a.k, p: a.p.clone(), mode: a.mode };
    let report = run_sweep(&spec, ctx.jobs, ctx.tables.as_ref())?;
    if !ctx.quiet {
        eprintln!("wall time: {:.3}s on {} thread(s)", report.wall_time.as_secs_f64(), ctx.jobs);
    }
    let out = match ctx.format {
        Format::Text => report.summary(),
        Format::Json => pretty(&report.to_json()),
        Format::Csv => report.to_csv(),
    };
    if failing(&report, a.allow_unconfirmed) {
        Err(Failure::Mismatch(out))
    } else {
        Ok(out)
    }
}

fn failing(report: &VerifyReport, allow_unconfirmed: bool) -> bool {
    if allow_unconfirmed {
        report.confirmed_mismatches().next().is_some()
    } else {
        report.mismatches().next().is_some()
    }
}

fn verify_proposition(ctx: &Ctx, a: &VerifyArgs) -> Result<String, Failure> {
    if *a.i.start() < 3 {
        return Err(Error::Domain { name: "i", value: *a.i.start() }.into());
    }
    let rows = proposition_check(*a.p.end(), a.i.clone(), ctx.tables.as_ref())?;
    let verdict = |r: &PropositionRow| if r.holds() { "yes" } else { "no" };
    let out = match ctx.format {
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                let _ = writeln!(out, "p={} h={} i={} k={} g_p={} two-generator={} holds={}", r.p, r.h, r.i, r.k, r.oracle, r.two_generator, verdict(r));
            }
            let held = rows.iter().filter(|r| r.holds()).count();
            let _ = writeln!(out, "{held}/{} collapse checks hold", rows.len());
            out
        }
        Format::Json => pretty(&Value::Array(
            rows.iter()
                .map(|r| {
                    json!({"p": r.p, "h": r.h, "i": r.i, "k": r.k, "oracle_value": number(&r.oracle),
                           "two_generator_value": number(&r.two_generator), "holds": r.holds()})
                })
                .collect(),
        )),
        Format::Csv => {
            let mut out = String::from("p,h,i,k,oracle_value,two_generator_value,holds\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{},{},{},{},{}", r.p, r.h, r.i, r.k, r.oracle, r.two_generator, verdict(r));
            }
            out
        }
    };
    if rows.iter().all(PropositionRow::holds) {
        Ok(out)
    } else {
        Err(Failure::Mismatch(out))
    }
}

fn cmd_table(ctx: &Ctx, a: &TableArgs) -> Result<String, Failure> {
    let table = build_table(a.kind, a.i, a.k, a.pmax)?;
    Ok(match ctx.format {
        Format::Text => render_ascii(&table, a.mode),
        Format::Json => pretty(&export_json(&table)),
        Format::Csv => table_csv(&table),
    })
}

fn table_csv(table: &ResidueTable) -> String {
    let mut out = String::from("x,y,value,residue,level\n");
    for c in &table.cells {
        let level = c.level.map_or(String::new(), |l| l.to_string());
        let _ = writeln!(out, "{},{},{},{},{}", c.x, c.y, c.value, c.residue, level);
    }
    out
}

fn cmd_exact(ctx: &Ctx, a: &ExactArgs) -> Result<String, Failure> {
    let t = &a.gens;
    let oracle = SemigroupOracle::from_source(t, a.p.into(), ctx.tables.as_ref())?;
    let g = oracle.p_frobenius(a.p.into())?;
    // every n above g_p has more than p representations
    let cap = usize::try_from(g + t.a1()).map_err(|_| Error::TooLarge(format!("search cap for {t}")))?;
    let table = ctx.tables.table(t, cap)?;
    let found = largest_with_exactly_p_in(&table, a.p.into());
    Ok(match ctx.format {
        Format::Text => found.map_or("none\n".to_string(), |n| format!("{n}\n")),
        Format::Json => pretty(&json!({"tuple": t.gens(), "p": a.p, "value": found})),
        Format::Csv => format!("p,value\n{},{}\n", a.p, found.map_or(String::new(), |n| n.to_string())),
    })
}

fn cmd_seq(ctx: &Ctx, a: &SeqArgs) -> Result<String, Failure> {
    let terms: Vec<_> = a.n.clone().map(|n| (n, seq(a.kind, n))).collect();
    let s = symbol(a.kind);
    Ok(match ctx.format {
        Format::Text => terms.iter().map(|(n, v)| format!("{s}_{n} = {v}\n")).collect(),
        Format::Json => pretty(&Value::Array(terms.iter().map(|(n, v)| json!({"n": n, "value": number(v)})).collect())),
        Format::Csv => {
            let mut out = String::from("n,value\n");
            for (n, v) in &terms {
                let _ = writeln!(out, "{n},{v}");
            }
            out
        }
    })
}
