mod check;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nmr_core::operators::Fault;
use nmr_core::{
    konolige, parse_default_theory, parse_theory, semantics, Error, Limits, OperatorContext, SemanticsKind,
    TruthFunction,
};

#[derive(Parser)]
#[command(name = "nmr", version, about = "Fixpoint semantics for autoepistemic and default logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the results of one semantics for a theory.
    Solve(SolveArgs),
    /// Print the modal translation of a default theory as `.ael` text.
    Translate(InputArgs),
    /// Cross-check the fast algorithms against brute-force references.
    Check(CheckArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input file (`.ael` or `.dt`).
    #[arg(long = "input", value_name = "FILE")]
    input: Option<PathBuf>,

    #[arg(value_name = "FILE", conflicts_with = "input", hide = true)]
    path: Option<PathBuf>,
}

impl InputArgs {
    fn path(&self) -> Result<&Path, Failure> {
        self.input
            .as_deref()
            .or(self.path.as_deref())
            .ok_or_else(|| Failure::Usage("an input file is required (--input FILE)".into()))
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Input language; inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    logic: Option<Logic>,

    #[arg(long, value_enum)]
    semantics: SemanticsArg,

    #[arg(long, value_enum, default_value = "kleene")]
    truth: TruthArg,

    /// Print machine-readable JSON.
    #[arg(long)]
    json: bool,

    /// Include the derivation of each result.
    #[arg(long)]
    trace: bool,

    /// Largest vocabulary accepted.
    #[arg(long, value_name = "N", default_value_t = nmr_core::worlds::DEFAULT_MAX_ATOMS)]
    max_atoms: usize,

    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,

    #[arg(long, value_enum)]
    logic: Option<Logic>,

    #[arg(long, value_name = "N", default_value_t = nmr_core::worlds::DEFAULT_MAX_ATOMS)]
    max_atoms: usize,

    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Logic {
    Ael,
    Dl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SemanticsArg {
    Kk,
    Expansion,
    Stable,
    Wf,
    Reiter,
    Weak,
}

impl SemanticsArg {
    fn name(self) -> &'static str {
        match self {
            SemanticsArg::Kk => "kk",
            SemanticsArg::Expansion => "expansion",
            SemanticsArg::Stable => "stable",
            SemanticsArg::Wf => "wf",
            SemanticsArg::Reiter => "reiter",
            SemanticsArg::Weak => "weak",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TruthArg {
    Kleene,
    Sv,
}

impl From<TruthArg> for TruthFunction {
    fn from(t: TruthArg) -> Self {
        match t {
            TruthArg::Kleene => TruthFunction::Kleene,
            TruthArg::Sv => TruthFunction::Supervaluation,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FaultArg {
    SkipMi,
    DropFirstCandidate,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Self {
        match f {
            FaultArg::SkipMi => Fault::SkipUnfoundedSets,
            FaultArg::DropFirstCandidate => Fault::DropFirstCandidate,
        }
    }
}

/// Everything that ends a run with a non-zero exit code.
enum Failure {
    Usage(String),
    Input(String),
    Solver(Error),
    Disagreement,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Solver(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Input(_) => 1,
            Failure::Solver(e) => match e {
                Error::Parse { .. } | Error::UnknownAtom(_) => 1,
                Error::ResourceCap { .. } => 2,
                _ => 3,
            },
            Failure::Disagreement => 4,
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn infer_logic(explicit: Option<Logic>, path: &Path) -> Logic {
    explicit.unwrap_or_else(|| {
        if path.extension().is_some_and(|e| e == "dt") {
            Logic::Dl
        } else {
            Logic::Ael
        }
    })
}

fn solve(args: &SolveArgs) -> Result<String, Failure> {
    let path = args.input.path()?;
    let logic = infer_logic(args.logic, path);
    if logic == Logic::Ael && matches!(args.semantics, SemanticsArg::Reiter | SemanticsArg::Weak) {
        return Err(Failure::Usage(format!(
            "--semantics {} requires --logic dl",
            args.semantics.name()
        )));
    }
    let text = read_input(path)?;
    let truth = TruthFunction::from(args.truth);
    let limits = Limits {
        max_atoms: args.max_atoms,
        ..Limits::default()
    };
    let theory = match logic {
        Logic::Ael => parse_theory(&text)?,
        Logic::Dl => konolige(&parse_default_theory(&text)?),
    };
    let mut ctx = OperatorContext::with_limits(theory, truth, limits)?;
    ctx.fault = args.inject_fault.map(Fault::from);

    // Default theories are solved through their translation: weak
    // extensions are its expansions and Reiter extensions its stable ones.
    let kind = match args.semantics {
        SemanticsArg::Kk => SemanticsKind::KripkeKleene,
        SemanticsArg::Expansion | SemanticsArg::Weak => SemanticsKind::Expansion,
        SemanticsArg::Stable | SemanticsArg::Reiter => SemanticsKind::Stable,
        SemanticsArg::Wf => SemanticsKind::WellFounded,
    };
    let result = semantics::compute(&ctx, kind)?;
    for trace in &result.traces {
        trace.replay()?;
    }

    let request = render::Request {
        logic: match logic {
            Logic::Ael => "ael",
            Logic::Dl => "dl",
        },
        semantics: args.semantics.name(),
        truth,
        trace: args.trace,
    };
    if args.json {
        Ok(render::json(&request, ctx.theory().vocabulary(), &result)?)
    } else {
        Ok(render::human(&request, &result))
    }
}

fn translate(args: &InputArgs) -> Result<String, Failure> {
    let text = read_input(args.path()?)?;
    Ok(konolige(&parse_default_theory(&text)?).to_string())
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Solve(args) => solve(args),
        Command::Translate(args) => translate(args),
        Command::Check(args) => {
            let path = args.input.path()?;
            let logic = infer_logic(args.logic, path);
            let text = read_input(path)?;
            let limits = Limits {
                max_atoms: args.max_atoms,
                ..Limits::default()
            };
            let fault = args.inject_fault.map(Fault::from);
            let report = match logic {
                Logic::Ael => check::check_theory(&parse_theory(&text)?, limits, fault)?,
                Logic::Dl => check::check_default_theory(&parse_default_theory(&text)?, limits, fault)?,
            };
            print!("{}", report.text);
            if report.agreed {
                Ok(String::new())
            } else {
                Err(Failure::Disagreement)
            }
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
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::Usage(m) | Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Solver(e) => eprintln!("error: {e}"),
                Failure::Disagreement => eprintln!("check failed: fast and reference results disagree"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
