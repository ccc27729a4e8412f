mod span;
mod verify;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use qspivey::boson::{parse_op_expr, Bindings};
use qspivey::identities::{IdentityId, OracleKind};
use qspivey::sequences::{
    bell, q_bell_numbers, q_bell_poly, qr_dowling_poly, qr_whitney, r_dowling, TriangleKind,
    TriangleTable,
};
use qspivey::sweep::run_acceptance;
use qspivey::{BigInt, Summary, Variant};

use span::Span;
use verify::{parse_oracle_kind, Plan, Ranges};

/// Exact q-Stirling, q-Bell, (q,r)-Whitney and (q,r)-Dowling numbers, and
/// checks of the Spivey-type identities they satisfy.
#[derive(Parser, Debug)]
#[command(name = "qspivey", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a triangle of coefficients, rows 0..=n.
    Triangle(TriangleArgs),
    /// Print a generating polynomial in x with q-polynomial coefficients.
    Poly(PolyArgs),
    /// Print a sequence of numbers for indices 0..=n.
    Numbers(NumbersArgs),
    /// Normal-order an expression in a, ad (a†) and N = ad*a.
    NormalOrder(NormalOrderArgs),
    /// Check an identity over parameter ranges; prints JSON lines.
    Verify(VerifyArgs),
    /// Run a named test suite.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Shift {
    /// Shift parameter m (at least 1 for the Whitney and Dowling families).
    #[arg(long)]
    m: Option<u64>,
    /// Offset parameter r.
    #[arg(long)]
    r: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct TriangleArgs {
    #[arg(long, value_parser = parse_triangle_kind)]
    kind: TriangleKind,
    #[arg(long, default_value_t = 6)]
    n: u64,
    #[command(flatten)]
    shift: Shift,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolyKind {
    QBell,
    QrDowling,
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[arg(long, value_enum)]
    kind: PolyKind,
    #[arg(long, default_value_t = 4)]
    n: u64,
    #[command(flatten)]
    shift: Shift,
    /// Substitute this value for x and print a q-polynomial instead.
    #[arg(long)]
    x: Option<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NumbersKind {
    Bell,
    QBell,
    RDowling,
    QrDowling,
}

#[derive(Args, Debug)]
struct NumbersArgs {
    #[arg(long, value_enum)]
    kind: NumbersKind,
    #[arg(long, default_value_t = 10)]
    n: u64,
    #[command(flatten)]
    shift: Shift,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct NormalOrderArgs {
    /// For example "N^3", "a*ad" or "(m*N+r)^2".
    expr: String,
    #[command(flatten)]
    shift: Shift,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_identity)]
    identity: IdentityId,
    /// Reading of the printed formula, for result1, result2 and result3.
    #[arg(long, value_parser = parse_variant)]
    variant: Option<Variant>,
    /// Triangle checked by triangle-oracle: q-stirling2 or qr-whitney.
    #[arg(long, value_parser = parse_oracle_kind)]
    kind: Option<OracleKind>,
    #[arg(long)]
    n: Option<Span>,
    #[arg(long)]
    mshift: Option<Span>,
    #[arg(long)]
    l: Option<Span>,
    #[arg(long)]
    m: Option<Span>,
    #[arg(long)]
    r: Option<Span>,
    #[arg(long)]
    x: Option<Span>,
    #[arg(long)]
    k: Option<Span>,
    #[arg(long)]
    s: Option<Span>,
    #[arg(long)]
    cap: Option<Span>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Acceptance,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum, default_value_t = Suite::Acceptance)]
    suite: Suite,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    output: Output,
}

fn parse_triangle_kind(s: &str) -> Result<TriangleKind, String> {
    s.parse()
}

fn parse_identity(s: &str) -> Result<IdentityId, String> {
    s.parse()
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

enum Failure {
    Usage(String),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

type Outcome = Result<bool, Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn internal(e: qspivey::Error) -> Failure {
    Failure::Internal(e.into())
}

/// Reads `--m`/`--r` for a family that requires them.
fn whitney_shift(shift: &Shift, what: &str) -> Result<(u64, u64), Failure> {
    match shift.m {
        None => usage(format!("{what} needs --m")),
        Some(0) => usage("--m must be at least 1"),
        Some(m) => Ok((m, shift.r.unwrap_or(0))),
    }
}

fn no_shift(shift: &Shift, what: &str) -> Result<(), Failure> {
    if shift.m.is_some() || shift.r.is_some() {
        return usage(format!("--m and --r do not apply to {what}"));
    }
    Ok(())
}

fn json_line(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("output serializes");
    s.push('\n');
    s
}

fn emit(output: &Output, text: &str) -> anyhow::Result<()> {
    match &output.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn cmd_triangle(args: &TriangleArgs) -> Outcome {
    let (m, r) = if args.kind.is_whitney() {
        let (m, r) = whitney_shift(&args.shift, args.kind.as_str())?;
        (Some(m), Some(r))
    } else {
        no_shift(&args.shift, args.kind.as_str())?;
        (None, None)
    };
    let table = TriangleTable::build(args.kind, args.n as usize, m, r).map_err(internal)?;
    let text = match args.format {
        Format::Json => json_line(&table),
        Format::Csv => table.to_csv(),
    };
    emit(&args.output, &text)?;
    Ok(true)
}

fn cmd_poly(args: &PolyArgs) -> Outcome {
    let n = args.n as usize;
    let poly = match args.kind {
        PolyKind::QBell => {
            no_shift(&args.shift, "q-bell")?;
            q_bell_poly(n)
        }
        PolyKind::QrDowling => {
            let (m, r) = whitney_shift(&args.shift, "qr-dowling")?;
            qr_dowling_poly(n, m, r).map_err(internal)?
        }
    };
    let text = match args.x {
        Some(x) => json_line(&poly.eval_x(&BigInt::from(x))),
        None => json_line(&poly),
    };
    emit(&args.output, &text)?;
    Ok(true)
}

#[derive(serde::Serialize)]
struct Decimals(#[serde(with = "qspivey::poly::decimal::seq")] Vec<BigInt>);

fn cmd_numbers(args: &NumbersArgs) -> Outcome {
    let n = args.n as usize;
    let text = match args.kind {
        NumbersKind::Bell => {
            no_shift(&args.shift, "bell")?;
            json_line(&Decimals(bell(n)))
        }
        NumbersKind::QBell => {
            no_shift(&args.shift, "q-bell")?;
            json_line(&q_bell_numbers(n))
        }
        NumbersKind::RDowling => {
            let (m, r) = whitney_shift(&args.shift, "r-dowling")?;
            json_line(&Decimals(r_dowling(n, m, r).map_err(internal)?))
        }
        NumbersKind::QrDowling => {
            let (m, r) = whitney_shift(&args.shift, "qr-dowling")?;
            let tri = qr_whitney(n, m, r).map_err(internal)?;
            let sums: Vec<qspivey::QPoly> = tri
                .rows()
                .iter()
                .map(|row| row.iter().cloned().sum())
                .collect();
            json_line(&sums)
        }
    };
    emit(&args.output, &text)?;
    Ok(true)
}

fn cmd_normal_order(args: &NormalOrderArgs) -> Outcome {
    let bindings = Bindings {
        m: args.shift.m,
        r: args.shift.r,
    };
    let expr = match parse_op_expr(&args.expr, &bindings) {
        Ok(e) => e,
        Err(e) => {
            let caret = " ".repeat(e.pos);
            return usage(format!(
                "cannot parse expression {e}\n  {}\n  {caret}^",
                args.expr
            ));
        }
    };
    emit(&args.output, &json_line(&expr.normal_form()))?;
    Ok(true)
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    if args.jobs == 0 {
        return usage("--jobs must be at least 1");
    }
    let ranges = Ranges {
        n: args.n,
        mshift: args.mshift,
        l: args.l,
        m: args.m,
        r: args.r,
        x: args.x,
        k: args.k,
        s: args.s,
        cap: args.cap,
    };
    let plan =
        Plan::new(args.identity, args.variant, args.kind, &ranges).map_err(Failure::Usage)?;
    let reports = plan.run(args.jobs)?;
    let summary = Summary::of(&reports);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&json_line(r));
    }
    text.push_str(&json_line(&summary));
    emit(&args.output, &text)?;
    Ok(summary.all_passed())
}

fn cmd_sweep(args: &SweepArgs) -> Outcome {
    if args.jobs == 0 {
        return usage("--jobs must be at least 1");
    }
    let outcome = match args.suite {
        Suite::Acceptance => run_acceptance(args.jobs),
    };
    emit(&args.output, &outcome.to_jsonl())?;
    Ok(outcome.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Triangle(a) => cmd_triangle(a),
        Command::Poly(a) => cmd_poly(a),
        Command::Numbers(a) => cmd_numbers(a),
        Command::NormalOrder(a) => cmd_normal_order(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
