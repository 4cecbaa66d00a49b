//! Command-line front end for the Veronese lifting kernel.

pub mod mapfile;
pub mod parse;
pub mod report;

use std::io::Read as _;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use veronese_core::checks;
use veronese_core::lie::LieBasis;
use veronese_core::veronese::{
    check_locally_nilpotent, lift_automorphism, lift_derivation, verify_quotient_kernel, Context, LiftOptions,
    LiftOutcome, VeroneseError, DEFAULT_LND_CAP,
};

use mapfile::{parse_map_file, MapFile};
use parse::{infer_variable_count, parse_expression, ParseError};
use report::{ContextEcho, ElementJson, NamedElement, Payload, Report, Status};

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_BOUND: usize = 6;
pub const MAX_BOUND: usize = 12;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error at {0}")]
    Parse(ParseError),
    #[error("{0}")]
    Kernel(#[from] VeroneseError),
    #[error("{0}")]
    Io(String),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ContextArg {
    Poly,
    Poisson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    Derivation,
    Automorphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    fn options(self) -> LiftOptions {
        match self {
            Sign::Positive => LiftOptions::default(),
            Sign::Negative => LiftOptions::negative(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "veronese", version, about = "Exact lifting of maps on Veronese subalgebras")]
pub struct Cli {
    /// Algebra: commutative polynomials or the free Poisson algebra.
    #[arg(long, global = true, value_enum)]
    pub context: Option<ContextArg>,
    /// Number of free generators.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Veronese degree.
    #[arg(long, global = true)]
    pub d: Option<u32>,
    /// Lie degree bound of the Poisson basis table.
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression, or the Poisson bracket of two.
    Bracket { expr: String, other: Option<String> },
    /// Split an expression into its components modulo d.
    Grade { expr: String },
    /// List the Hall basis of the free Lie algebra.
    Basis,
    /// Restrict a d-graded map given on x1..xn to the Veronese generators.
    Restrict {
        file: String,
        #[arg(long, value_enum, default_value = "derivation")]
        kind: MapKind,
    },
    /// Lift a Veronese derivation to a d-graded derivation.
    LiftDerivation { file: String },
    /// Lift a Veronese automorphism to a d-graded automorphism.
    LiftAutomorphism {
        file: String,
        #[arg(long, value_enum, default_value = "positive")]
        sign: Sign,
    },
    /// Lift a derivation and test whether the lift is locally nilpotent.
    CheckLnd {
        file: String,
        #[arg(long, default_value_t = DEFAULT_LND_CAP)]
        cap: usize,
    },
    /// Lift an automorphism and its inverse and check the composite is scalar.
    VerifyKernel {
        file: String,
        #[arg(long, value_enum, default_value = "positive")]
        sign: Sign,
        #[arg(long, value_enum, default_value = "positive")]
        sign_inverse: Sign,
    },
    /// Run the randomized invariant suites.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Bracket { .. } => "bracket",
            Command::Grade { .. } => "grade",
            Command::Basis => "basis",
            Command::Restrict { .. } => "restrict",
            Command::LiftDerivation { .. } => "lift-derivation",
            Command::LiftAutomorphism { .. } => "lift-automorphism",
            Command::CheckLnd { .. } => "check-lnd",
            Command::VerifyKernel { .. } => "verify-kernel",
            Command::Selftest { .. } => "selftest",
        }
    }
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

/// Parses arguments (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 1 } else { 0 };
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Invocation {
                code,
                stdout,
                stderr,
                report: None,
            };
        }
    };
    let report = run(&cli);
    let code = report.exit_code();
    let (stdout, stderr) = match (cli.format, &report.payload) {
        (Format::Json, _) => (report.to_json() + "\n", String::new()),
        (Format::Text, Payload::Error { message }) => (String::new(), format!("error: {message}\n")),
        (Format::Text, _) => (report.to_text(), String::new()),
    };
    Invocation {
        code,
        stdout,
        stderr,
        report: Some(report),
    }
}

/// Runs a parsed command.
pub fn run(cli: &Cli) -> Report {
    let start = Instant::now();
    let mut report = match dispatch(cli) {
        Ok(r) => r,
        Err(e) => Report {
            command: cli.command.name().to_string(),
            status: Status::Error,
            context: None,
            input: Vec::new(),
            payload: Payload::Error { message: e.to_string() },
            elapsed_us: 0,
        },
    };
    report.elapsed_us = start.elapsed().as_micros() as u64;
    report
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
    }
}

fn option_context(cli: &Cli, default: ContextArg, inferred_n: usize) -> Result<Context, CliError> {
    let n = cli.n.unwrap_or(inferred_n.max(1));
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".to_string()));
    }
    match cli.context.unwrap_or(default) {
        ContextArg::Poly => {
            if cli.bound.is_some() {
                return Err(CliError::Usage("--bound only applies to the Poisson context".to_string()));
            }
            Ok(Context::polynomial(n)?)
        }
        ContextArg::Poisson => {
            let bound = cli.bound.unwrap_or(DEFAULT_BOUND);
            if bound == 0 || bound > MAX_BOUND {
                return Err(CliError::Usage(format!("--bound must be between 1 and {MAX_BOUND}")));
            }
            let basis = LieBasis::shared(n, bound).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(Context::poisson(basis))
        }
    }
}

/// Command-line options may repeat the file header but not contradict it.
fn check_header_agrees(cli: &Cli, file: &MapFile) -> Result<(), CliError> {
    let ctx = &file.context;
    let mismatch = |what: &str| Err(CliError::Usage(format!("--{what} disagrees with the map file header")));
    if let Some(kind) = cli.context {
        if (kind == ContextArg::Poisson) != ctx.is_poisson() {
            return mismatch("context");
        }
    }
    if cli.n.is_some_and(|n| n != ctx.n()) {
        return mismatch("n");
    }
    if cli.d.is_some_and(|d| d != file.d) {
        return mismatch("d");
    }
    if cli.bound.is_some() && cli.bound != ctx.table_bound() {
        return mismatch("bound");
    }
    Ok(())
}

fn load_map(cli: &Cli, path: &str) -> Result<MapFile, CliError> {
    let file = parse_map_file(&read_input(path)?)?;
    check_header_agrees(cli, &file)?;
    Ok(file)
}

fn report(cli: &Cli, status: Status, context: Option<ContextEcho>, input: Vec<String>, payload: Payload) -> Report {
    Report {
        command: cli.command.name().to_string(),
        status,
        context,
        input,
        payload,
        elapsed_us: 0,
    }
}

fn outcome_report(cli: &Cli, file: &MapFile, outcome: &LiftOutcome) -> Report {
    let echo = Some(ContextEcho::new(&file.context, Some(file.d)));
    match outcome {
        LiftOutcome::Lifted(lift) => report(cli, Status::Lifted, echo, file.echo(), report::lift_payload(lift)),
        LiftOutcome::Obstructed(o) => report(
            cli,
            Status::Obstructed,
            echo,
            file.echo(),
            report::obstruction_payload(o, &file.context),
        ),
    }
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Bracket { expr, other } => {
            let inferred = infer_variable_count(expr).max(other.as_deref().map_or(0, infer_variable_count));
            let ctx = option_context(cli, ContextArg::Poisson, inferred)?;
            let f = parse_expression(expr, &ctx)?;
            let mut input = vec![ctx.format(&f)];
            let value = match other {
                None => f,
                Some(text) => {
                    if !ctx.is_poisson() {
                        return Err(CliError::Usage("a bracket of two expressions needs the Poisson context".into()));
                    }
                    let g = parse_expression(text, &ctx)?;
                    input.push(ctx.format(&g));
                    let basis = ctx.basis().expect("Poisson context has a basis");
                    veronese_core::poisson::bracket(basis, &f, &g).map_err(VeroneseError::from)?
                }
            };
            let payload = Payload::Element {
                value: ElementJson::new(&value, &ctx),
            };
            Ok(report(cli, Status::Ok, Some(ContextEcho::new(&ctx, None)), input, payload))
        }
        Command::Grade { expr } => {
            let d = cli.d.ok_or_else(|| CliError::Usage("grade needs --d".to_string()))?;
            if d == 0 {
                return Err(CliError::Usage("--d must be at least 1".to_string()));
            }
            let ctx = option_context(cli, ContextArg::Poly, infer_variable_count(expr))?;
            let p = parse_expression(expr, &ctx)?;
            let parts = p
                .grade_weighted(d, ctx.weights())
                .map_err(VeroneseError::from)?
                .parts()
                .iter()
                .map(|q| ElementJson::new(q, &ctx))
                .collect();
            Ok(report(
                cli,
                Status::Ok,
                Some(ContextEcho::new(&ctx, Some(d))),
                vec![ctx.format(&p)],
                Payload::Grade { d, parts },
            ))
        }
        Command::Basis => {
            let n = cli.n.ok_or_else(|| CliError::Usage("basis needs --n".to_string()))?;
            if cli.context == Some(ContextArg::Poly) {
                return Err(CliError::Usage("basis lists the Lie basis of the Poisson context".to_string()));
            }
            let ctx = option_context(cli, ContextArg::Poisson, n)?;
            let basis = ctx.basis().expect("Poisson context has a basis");
            Ok(report(
                cli,
                Status::Ok,
                Some(ContextEcho::new(&ctx, None)),
                Vec::new(),
                report::basis_payload(basis),
            ))
        }
        Command::Restrict { file, kind } => {
            let file = load_map(cli, file)?;
            let gens = file.generators.clone();
            let images: Vec<_> = match kind {
                MapKind::Derivation => file.derivation()?.images().to_vec(),
                MapKind::Automorphism => file.automorphism()?.images().to_vec(),
            };
            let named = images
                .iter()
                .enumerate()
                .map(|(i, p)| NamedElement {
                    name: gens.name(i),
                    value: Some(ElementJson::new(p, &file.context)),
                    source: None,
                })
                .collect();
            let map = format!("{kind:?}").to_lowercase();
            Ok(report(
                cli,
                Status::Ok,
                Some(ContextEcho::new(&file.context, Some(file.d))),
                file.echo(),
                Payload::Restriction { map, images: named },
            ))
        }
        Command::LiftDerivation { file } => {
            let file = load_map(cli, file)?;
            let outcome = lift_derivation(&file.derivation()?)?;
            Ok(outcome_report(cli, &file, &outcome))
        }
        Command::LiftAutomorphism { file, sign } => {
            let file = load_map(cli, file)?;
            let outcome = lift_automorphism(&file.automorphism()?, sign.options())?;
            Ok(outcome_report(cli, &file, &outcome))
        }
        Command::CheckLnd { file, cap } => {
            let file = load_map(cli, file)?;
            let lift = match lift_derivation(&file.derivation()?)? {
                LiftOutcome::Lifted(lift) => lift,
                obstructed => return Ok(outcome_report(cli, &file, &obstructed)),
            };
            let lnd = check_locally_nilpotent(&lift, *cap)?;
            let (status, payload) = report::lnd_payload(&lnd, &file.context);
            Ok(report(
                cli,
                status,
                Some(ContextEcho::new(&file.context, Some(file.d))),
                file.echo(),
                payload,
            ))
        }
        Command::VerifyKernel {
            file,
            sign,
            sign_inverse,
        } => {
            let file = load_map(cli, file)?;
            let map = file.automorphism()?;
            let inverse = map
                .inverse()
                .ok_or_else(|| CliError::Usage("verify-kernel needs an inverse block in the map file".to_string()))?;
            for (m, s) in [(&map, sign), (&inverse, sign_inverse)] {
                let outcome = lift_automorphism(m, s.options())?;
                if !outcome.is_lifted() {
                    return Ok(outcome_report(cli, &file, &outcome));
                }
            }
            let echo = Some(ContextEcho::new(&file.context, Some(file.d)));
            match verify_quotient_kernel(&map, sign.options(), sign_inverse.options()) {
                Ok(k) => Ok(report(
                    cli,
                    Status::Ok,
                    echo,
                    file.echo(),
                    Payload::Kernel {
                        lambda: k.lambda.to_string(),
                        checked: k.indeterminates_checked,
                        forward: report::lift_images(&k.forward),
                        inverse: report::lift_images(&k.inverse),
                    },
                )),
                Err(e @ VeroneseError::CompositeNotScalar(_)) => Ok(report(
                    cli,
                    Status::Failed,
                    echo,
                    file.echo(),
                    Payload::Error { message: e.to_string() },
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Selftest { seed } => {
            let suites = checks::run_all(*seed);
            let passed = suites.iter().all(|s| s.passed());
            Ok(report(
                cli,
                if passed { Status::Ok } else { Status::Failed },
                None,
                Vec::new(),
                Payload::Selftest {
                    seed: *seed,
                    suites: suites.iter().map(report::suite_json).collect(),
                },
            ))
        }
    }
}
