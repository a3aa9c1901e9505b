//! `bicomplex`: validate, tabulate and check double complexes given in the
//! line-oriented text format.
//!
//! Exit codes: 0 normal, 1 usage error, 2 unreadable or invalid input,
//! 3 when a check returns VIOLATION.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bicomplex::bicomplex::{
    parse_text, to_text, Arrow, Bidegree, DoubleComplex, GeneratorKind, GeneratorSpec,
};
use bicomplex::checkers::{Checker, HypothesisMode, StatementId, Verdict};
use bicomplex::cohomology::{Cohomology, Functor};
use bicomplex::report::{Format, Report, Section};
use bicomplex::{zoo, Error};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bicomplex",
    version,
    about = "Exact cohomology of bounded double complexes"
)]
struct Cli {
    /// Render the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the double complex identities.
    Validate(Input),
    /// Dolbeault, Bott-Chern and Aeppli dimensions plus Betti numbers.
    Table(Input),
    /// Evaluate one statement (thm1.1a, thm1.1b, thm1.2, cor1.3, prop2.1,
    /// prop2.2, cor3.3, cor3.4, cor3.5).
    Check(CheckArgs),
    /// Cohomological q-completeness, Dolbeault or Bott-Chern flavour.
    Qcomplete(QArgs),
    /// Print a generated model in the text format.
    Gen(GenArgs),
    /// Comparison maps between the cohomology theories.
    Maps(MapsArgs),
}

#[derive(Args)]
struct Input {
    /// Complex file; `-` or nothing reads standard input.
    input: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    statement: StatementId,
    #[command(flatten)]
    input: Input,
    #[arg(long, allow_negative_numbers = true)]
    p: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    q: Option<i64>,
    /// `direct` or `literal`.
    #[arg(long, default_value = "direct")]
    mode: HypothesisMode,
}

#[derive(Args)]
struct QArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, allow_negative_numbers = true)]
    q: Option<i64>,
    /// Use the Bott-Chern predicate (needs a declared `n`).
    #[arg(long)]
    bc: bool,
    /// Evaluate every q from 1 to n.
    #[arg(long)]
    sweep: bool,
}

#[derive(Args)]
struct GenArgs {
    /// dot, square, zigzag, random_sum, iwasawa, stein_like, counterexample.
    #[arg(long)]
    kind: GeneratorKind,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    p: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    q: i64,
    /// Zigzag word, e.g. `d-out,dbar-out`.
    #[arg(long, value_delimiter = ',')]
    shape: Vec<Arrow>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    blocks: usize,
    /// Rectangle `plo,qlo,phi,qhi` for random blocks.
    #[arg(long, default_value = "0,0,4,4")]
    bounds: String,
    /// Pair random blocks with their mirrors and attach a real structure.
    #[arg(long)]
    symmetric: bool,
    /// Declared dimension.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct MapsArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, allow_negative_numbers = true, requires = "q")]
    p: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires = "p")]
    q: Option<i64>,
    /// Source theory: bc, dbar, del, dr.
    #[arg(long, requires_all = ["to", "p"])]
    from: Option<Functor>,
    /// Target theory: dbar, del, a, dr.
    #[arg(long, requires_all = ["from", "p"])]
    to: Option<Functor>,
}

/// A failed run: the message goes to standard error.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidComplex(_) | Error::MissingDimension => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

/// Standard output plus the exit code of a completed run.
struct Outcome {
    stdout: String,
    code: u8,
}

fn read_input(input: &Input) -> Result<DoubleComplex, Failure> {
    let text = match &input.input {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| Failure {
            code: 2,
            message: format!("cannot read {}: {e}", p.display()),
        })?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Failure {
                code: 2,
                message: format!("cannot read standard input: {e}"),
            })?;
            s
        }
    };
    Ok(parse_text(&text)?)
}

struct Ctx {
    echo: String,
    format: Format,
}

impl Ctx {
    fn done(&self, report: Report, code: u8) -> Outcome {
        Outcome {
            stdout: report.render(self.format),
            code,
        }
    }

    /// Reads and validates; an invalid complex yields its validation report
    /// and exit code 2.
    fn load(&self, input: &Input) -> Result<Result<DoubleComplex, Outcome>, Failure> {
        let c = read_input(input)?;
        let v = c.validate();
        if v.is_valid() {
            Ok(Ok(c))
        } else {
            Ok(Err(self.done(
                Report::new(&self.echo, &c).with(Section::Validation(v)),
                2,
            )))
        }
    }
}

fn parse_bounds(s: &str) -> Result<(Bidegree, Bidegree), Failure> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("bad --bounds `{s}`")))?;
    match v[..] {
        [a, b, c, d] => Ok((Bidegree::new(a, b), Bidegree::new(c, d))),
        _ => Err(usage(format!("--bounds needs four numbers, got `{s}`"))),
    }
}

fn run(cli: Cli, echo: String) -> Result<Outcome, Failure> {
    let ctx = Ctx {
        echo,
        format: if cli.json { Format::Json } else { Format::Text },
    };
    macro_rules! load {
        ($input:expr) => {
            match ctx.load($input)? {
                Ok(c) => c,
                Err(outcome) => return Ok(outcome),
            }
        };
    }
    match cli.command {
        Command::Validate(input) => {
            let c = read_input(&input)?;
            let v = c.validate();
            let code = if v.is_valid() { 0 } else { 2 };
            Ok(ctx.done(
                Report::new(&ctx.echo, &c).with(Section::Validation(v)),
                code,
            ))
        }
        Command::Table(input) => {
            let c = load!(&input);
            let table = Cohomology::new(&c)?.table()?;
            Ok(ctx.done(Report::new(&ctx.echo, &c).with(Section::Table(table)), 0))
        }
        Command::Check(args) => {
            let c = load!(&args.input);
            let verdicts = Checker::new(&c)?.check(args.statement, args.p, args.q, args.mode)?;
            let violated = verdicts.iter().any(|v| v.verdict == Verdict::Violation);
            let report = Report::new(&ctx.echo, &c).with(Section::Verdicts(verdicts));
            Ok(ctx.done(report, if violated { 3 } else { 0 }))
        }
        Command::Qcomplete(args) => {
            let c = load!(&args.input);
            let checker = Checker::new(&c)?;
            let qs: Vec<i64> = if args.sweep {
                let n = c.n().ok_or(Error::MissingDimension)?;
                (1..=n as i64).collect()
            } else {
                vec![args
                    .q
                    .ok_or_else(|| usage("qcomplete needs --q or --sweep"))?]
            };
            let results = qs
                .into_iter()
                .map(|q| {
                    if args.bc {
                        checker.bc_q_complete(q)
                    } else {
                        checker.q_complete(q)
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ctx.done(
                Report::new(&ctx.echo, &c).with(Section::QComplete(results)),
                0,
            ))
        }
        Command::Gen(args) => {
            let spec = GeneratorSpec {
                kind: args.kind,
                placement: Bidegree::new(args.p, args.q),
                zigzag_shape: args.shape,
                block_count: args.blocks,
                bounds: parse_bounds(&args.bounds)?,
                seed: args.seed,
                symmetric: args.symmetric,
                dimension: args.n,
            };
            let c = zoo::generate(&spec)?;
            Ok(Outcome {
                stdout: to_text(&c),
                code: 0,
            })
        }
        Command::Maps(args) => {
            let c = load!(&args.input);
            let h = Cohomology::new(&c)?;
            let mut report = Report::new(&ctx.echo, &c);
            let maps = match (args.p.zip(args.q), args.from.zip(args.to)) {
                (Some((p, q)), Some((from, to))) => {
                    vec![h.natural_map(from, to, Bidegree::new(p, q))?]
                }
                (Some((p, q)), None) => h.all_natural_maps(Bidegree::new(p, q))?,
                (None, _) => {
                    let mut all = Vec::new();
                    for at in c.support() {
                        all.extend(h.all_natural_maps(at)?);
                    }
                    report = report.with(Section::DdbarLemma(h.ddbar_lemma()?));
                    all
                }
            };
            Ok(ctx.done(report.with(Section::Maps(maps)), 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match run(cli, echo) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
