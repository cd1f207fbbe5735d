//! `tcone`: tangent cones of Gorenstein monomial curves in 4-space.
//!
//! Exit status: 0 all checks pass, 1 mathematical mismatch, 2 unsupported
//! hypothesis, out of scope or bad input, 3 resource limit.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tcone_core::engine::{Limits, LIMITS_ENV};
use tcone_core::report::{
    jsonl, parse_a, parse_c, parse_input, parse_n, parse_poly_list, run_analysis, run_family,
    run_paper_suite, run_standard_basis, AnalysisRequest, FamilyFlags, Input, OrderChoice, Stage,
    Status, SuiteSpec,
};
use tcone_core::Poly;

#[derive(Parser, Debug)]
#[command(
    name = "tcone",
    version,
    about = "Cohen-Macaulay tangent cones of Gorenstein monomial curves in A^4"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Engine limits, e.g. `pairs=50000,basis=5000,steps=2000000,degree=4294967296`.
    #[arg(long, env = LIMITS_ENV, global = true)]
    limits: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify, decide Cohen-Macaulayness and count tangent cone generators.
    Analyze(AnalyzeArgs),
    /// Toric ideal and Bresinsky pattern recognition only.
    Classify(InputArgs),
    /// Minimal generators of the toric ideal.
    Toric(InputArgs),
    /// Standard basis (local order) or reduced Gröbner basis of binomials.
    StandardBasis(BasisArgs),
    /// Sweep the one-parameter family over a range of c.
    Family(FamilyArgs),
    /// Check the published examples and the family against expectations.
    PaperSuite(SuiteArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// `n1,n2,n3,n4`, `a13=..,a14=..,..` or `c=N`.
    input: Option<String>,
    /// Semigroup generators `n1,n2,n3,n4`.
    #[arg(long, conflicts_with_all = ["input", "a", "c", "input_file"])]
    n: Option<String>,
    /// Free exponents `a13=..,a14=..,a21=..,a23=..,a32=..,a34=..,a41=..,a42=..`.
    #[arg(long, conflicts_with_all = ["input", "c", "input_file"])]
    a: Option<String>,
    /// Family member, `N` or `c=N`.
    #[arg(long, conflicts_with_all = ["input", "input_file"])]
    c: Option<String>,
    /// One input per line, `#` comments; `-` reads stdin.
    #[arg(long, conflicts_with = "input")]
    input_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Run the leading-monomial oracle next to the criterion.
    #[arg(long)]
    oracle: bool,
    /// Recompute the toric ideal for `--a` and `--c` inputs.
    #[arg(long)]
    recompute_toric: bool,
    /// Include the standard basis in the report.
    #[arg(long)]
    dump_basis: bool,
}

#[derive(Args, Debug)]
struct BasisArgs {
    /// Generators separated by `;`, e.g. `x2 - x1^2; x3 - x1^3`.
    #[arg(long, conflicts_with_all = ["n", "a", "c", "input_file"])]
    polys: Option<String>,
    /// Use f1..f5 of this curve.
    #[arg(long, conflicts_with_all = ["a", "c", "input_file"])]
    n: Option<String>,
    #[arg(long, conflicts_with_all = ["c", "input_file"])]
    a: Option<String>,
    #[arg(long, conflicts_with = "input_file")]
    c: Option<String>,
    /// Generators one per line; `-` reads stdin.
    #[arg(long)]
    input_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "local")]
    order: OrderArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Local,
    Degrevlex,
    Lex,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Inclusive range `from..to`, or a single value.
    #[arg(long, default_value = "2..10")]
    c_range: String,
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    recompute_toric: bool,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    /// Expectations file replacing the built-in one.
    #[arg(long)]
    expectations: Option<PathBuf>,
    /// Force the oracle on for every case.
    #[arg(long)]
    oracle: bool,
}

struct Failure {
    status: Status,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            status: Status::Unsupported,
            message: message.into(),
        }
    }
}

fn read_source(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }
}

fn inputs(args: &InputArgs) -> Result<Vec<Input>, Failure> {
    let bad =
        |what: &str, e: tcone_core::report::ParseError| Failure::input(format!("{what}: {e}"));
    if let Some(n) = &args.n {
        return Ok(vec![Input::NVector {
            n: parse_n(n).map_err(|e| bad("--n", e))?,
        }]);
    }
    if let Some(a) = &args.a {
        return Ok(vec![Input::AMatrix {
            a: parse_a(a).map_err(|e| bad("--a", e))?,
        }]);
    }
    if let Some(c) = &args.c {
        let text = if c.contains('=') {
            c.clone()
        } else {
            format!("c={c}")
        };
        // report columns against what the user typed
        let shift = text.len() - c.len();
        return parse_c(&text)
            .map(|c| vec![Input::FamilyC { c }])
            .map_err(|mut e| {
                e.column = e.column.saturating_sub(shift).max(1);
                bad("--c", e)
            });
    }
    if let Some(t) = &args.input {
        return Ok(vec![parse_input(t).map_err(|e| bad("input", e))?]);
    }
    if let Some(path) = &args.input_file {
        let text = read_source(path)?;
        let mut out = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            out.push(parse_input(body).map_err(|e| bad(&format!("line {}", i + 1), e))?);
        }
        if out.is_empty() {
            return Err(Failure::input("input file has no entries"));
        }
        return Ok(out);
    }
    Err(Failure::input(
        "no input: give INPUT, --n, --a, --c or --input-file",
    ))
}

fn limits(cli: &Cli) -> Result<Limits, Failure> {
    match &cli.limits {
        Some(s) => s
            .parse()
            .map_err(|e| Failure::input(format!("limits: {e}"))),
        None => Ok(Limits::default()),
    }
}

fn c_range(s: &str) -> Result<(u64, u64), Failure> {
    let num = |x: &str| {
        x.trim()
            .parse::<u64>()
            .map_err(|_| Failure::input(format!("--c-range: {x:?} is not a number")))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.trim_start_matches('='))?)),
        None => {
            let c = num(s)?;
            Ok((c, c))
        }
    }
}

fn emit(cli: &Cli, records: Vec<serde_json::Value>, text: String) -> Result<(), Failure> {
    let body = match cli.format {
        Format::Structured => jsonl(&records),
        Format::Text => text,
    };
    let res = match &cli.output {
        Some(p) => fs::write(p, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    };
    res.map_err(|e| Failure::input(format!("writing report: {e}")))
}

fn run(cli: &Cli) -> Result<Status, Failure> {
    let limits = limits(cli)?;
    match &cli.command {
        Command::Analyze(a) => analyses(
            cli,
            &a.input,
            Stage::Full,
            a.oracle,
            a.recompute_toric,
            a.dump_basis,
            limits,
        ),
        Command::Classify(i) => analyses(cli, i, Stage::Classify, false, false, false, limits),
        Command::Toric(i) => analyses(cli, i, Stage::Toric, false, false, false, limits),
        Command::StandardBasis(b) => {
            let gens = basis_generators(b, &limits)?;
            let order = match b.order {
                OrderArg::Local => OrderChoice::Local,
                OrderArg::Degrevlex => OrderChoice::Degrevlex,
                OrderArg::Lex => OrderChoice::Lex,
            };
            let rep = run_standard_basis(&gens, order, &limits);
            emit(cli, rep.records(), rep.to_text())?;
            Ok(rep.status)
        }
        Command::Family(f) => {
            let (from, to) = c_range(&f.c_range)?;
            let flags = FamilyFlags {
                oracle: f.oracle,
                recompute_toric: f.recompute_toric,
                limits,
            };
            let rep = run_family(from, to, &flags);
            emit(cli, rep.records(), rep.to_text())?;
            Ok(rep.status)
        }
        Command::PaperSuite(s) => {
            let spec = match &s.expectations {
                None => SuiteSpec::builtin(),
                Some(p) => SuiteSpec::parse(&read_source(p)?)
                    .map_err(|e| Failure::input(format!("{}: {e}", p.display())))?,
            };
            let rep = run_paper_suite(&spec, s.oracle, &limits);
            emit(cli, rep.records(), rep.to_text())?;
            Ok(rep.status)
        }
    }
}

fn analyses(
    cli: &Cli,
    args: &InputArgs,
    stage: Stage,
    oracle: bool,
    recompute_toric: bool,
    dump_basis: bool,
    limits: Limits,
) -> Result<Status, Failure> {
    let mut records = Vec::new();
    let mut text = String::new();
    let mut status = Status::Pass;
    for input in inputs(args)? {
        let req = AnalysisRequest {
            input,
            oracle,
            dump_basis,
            recompute_toric,
            limits,
            stage,
        };
        let r = run_analysis(&req);
        records.extend(r.records());
        text.push_str(&r.to_text());
        status = status.max(r.status);
    }
    emit(cli, records, text)?;
    Ok(status)
}

fn basis_generators(b: &BasisArgs, limits: &Limits) -> Result<Vec<Poly>, Failure> {
    if let Some(p) = &b.polys {
        return parse_poly_list(&p.replace(';', "\n"))
            .map_err(|e| Failure::input(format!("--polys: {e}")));
    }
    if let Some(path) = &b.input_file {
        return parse_poly_list(&read_source(path)?)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())));
    }
    let args = InputArgs {
        input: None,
        n: b.n.clone(),
        a: b.a.clone(),
        c: b.c.clone(),
        input_file: None,
    };
    let input = inputs(&args)?.remove(0);
    let req = AnalysisRequest {
        limits: *limits,
        stage: Stage::Classify,
        ..AnalysisRequest::new(input)
    };
    let r = run_analysis(&req);
    match r.data {
        Some(d) => Ok(d.generators().into_iter().map(Poly::from).collect()),
        None => Err(Failure {
            status: r.status.max(Status::Unsupported),
            message: r.message.unwrap_or_else(|| "not a Bresinsky curve".into()),
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(s) => ExitCode::from(s.exit_code() as u8),
        Err(f) => {
            eprintln!("tcone: {}", f.message);
            ExitCode::from(f.status.exit_code() as u8)
        }
    }
}
