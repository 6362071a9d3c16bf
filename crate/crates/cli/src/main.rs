use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use injspec_cli::check::{self, Suite};
use injspec_cli::format::QuiverModules;
use injspec_cli::sheaf::Target;
use injspec_cli::spectrum::Format;
use injspec_cli::{localize, sheaf, spectrum, CliError, Loaded};

/// Injective spectra, torsion theories and their sheaves over finite-dimensional path algebras and PIDs.
#[derive(Parser)]
#[command(name = "injspec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Points, closed basis, specialization order and topology checks.
    Spectrum {
        ring: PathBuf,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Localize a module at the class cogenerated by a set of points.
    Localize {
        ring: PathBuf,
        #[command(flatten)]
        modules: ModuleArgs,
        #[arg(long, default_value = "R")]
        module: String,
        /// Points, e.g. "1,2".
        #[arg(long)]
        cogen: String,
        #[arg(long)]
        json: bool,
    },
    /// Sections of the structure sheaf, or the sheaves attached to a module.
    Sheaf {
        ring: PathBuf,
        #[command(flatten)]
        modules: ModuleArgs,
        #[arg(long, conflicts_with_all = ["open", "module"])]
        global: bool,
        /// Points of the open, e.g. "{E2}"; for a PID, the primes removed.
        #[arg(long, conflicts_with = "module")]
        open: Option<String>,
        #[arg(long)]
        module: Option<String>,
    },
    /// Run the invariant suites and print a JSON verdict.
    Check {
        ring: PathBuf,
        #[command(flatten)]
        modules: ModuleArgs,
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Args)]
struct ModuleArgs {
    /// Module file with named modules and morphisms.
    #[arg(long = "modules")]
    path: Option<PathBuf>,
}

fn load_modules(eng: &Loaded, path: Option<&Path>) -> Result<Option<QuiverModules>, CliError> {
    let Some(path) = path else { return Ok(None) };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    match eng {
        Loaded::Quiver(q) => QuiverModules::parse(&text, q)
            .map(Some)
            .map_err(|e| match e {
                CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
                e => e,
            }),
        _ => Err(CliError::Input("module files are read for the quiver engine only".into())),
    }
}

fn run(cli: Cli) -> Result<(String, i32), CliError> {
    match cli.command {
        Command::Spectrum { ring, json, dot } => {
            let eng = Loaded::from_path(&ring)?;
            let format = if json {
                Format::Json
            } else if dot {
                Format::Dot
            } else {
                Format::Text
            };
            Ok((spectrum::run(&eng, format)?, 0))
        }
        Command::Localize { ring, modules, module, cogen, json } => {
            let eng = Loaded::from_path(&ring)?;
            let file = load_modules(&eng, modules.path.as_deref())?;
            Ok((localize::run(&eng, file.as_ref(), &module, &cogen, json)?, 0))
        }
        Command::Sheaf { ring, modules, global: _, open, module } => {
            let eng = Loaded::from_path(&ring)?;
            let file = load_modules(&eng, modules.path.as_deref())?;
            let target = match (open, module) {
                (Some(u), _) => Target::Open(u),
                (_, Some(m)) => Target::Module(m),
                _ => Target::Global,
            };
            Ok((sheaf::run(&eng, file.as_ref(), &target)?, 0))
        }
        Command::Check { ring, modules, suite } => {
            let suites = Suite::parse_selection(&suite)?;
            let eng = Loaded::from_path(&ring)?;
            let file = load_modules(&eng, modules.path.as_deref())?;
            let v = check::run(&eng, file.as_ref(), &suites)?;
            if !v.passed {
                eprintln!("check failed: {}", v.failures.join(", "));
            }
            Ok((v.to_json(), v.exit_code()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("injspec: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
