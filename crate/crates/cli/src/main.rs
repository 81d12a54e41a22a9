use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use koszulkit::field::FieldSpec;
use koszulkit::poset::{generate, parse, wedge, GeneratorSpec, RankedPoset};
use koszulkit_cli::run::{self, DEFAULT_MAX_CELLS};
use koszulkit_cli::{render::render, AnalysisReport, CliError, Options};

/// Exact analysis of finite ranked posets and their quadratic algebras.
///
/// Exit codes: 0 success, 1 failed assertion or validation, 2 input error,
/// 3 refused by a resource guard.
#[derive(Parser)]
#[command(name = "koszulkit", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Print the report as JSON (schema 1).
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 1 when a verdict in the report is negative.
    #[arg(long, global = true)]
    assert: bool,
    /// Record per-stage timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    /// Refuse posets whose order complex has more cells.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: u128,
    /// Word bound for the tensor cross-check of the dual dimensions.
    #[arg(long, global = true, default_value_t = koszulkit::dual_koszul::DEFAULT_TENSOR_BOUND)]
    max_tensor: u128,
}

#[derive(Args)]
struct FieldArg {
    /// Coefficient field: q, or a prime such as 2 or F3.
    #[arg(long, default_value = "q")]
    field: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file describes a ranked poset.
    Validate { file: PathBuf },
    /// Ranks, uniformity, cyclicity and purity.
    Info { file: PathBuf },
    /// Table of the internal cohomology H_Γ(n, k).
    Cohomology {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArg,
        /// Also show the augmented complexes.
        #[arg(long)]
        augmented: bool,
    },
    /// Cohomology of an order complex.
    Order {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArg,
        /// Use the open interval (A, B) instead of the proper part.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        interval: Option<Vec<String>>,
        /// Cohomology relative to the complex on the elements named in SUBFILE.
        #[arg(long, value_name = "SUBFILE")]
        relative: Option<PathBuf>,
    },
    /// Cohen-Macaulay verdict with a witness interval.
    Cm {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Every applicable Koszul verdict, checked for agreement.
    Koszul {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArg,
        /// Also resolve the trivial module up to homological degree N.
        #[arg(long, value_name = "N")]
        ext: Option<usize>,
    },
    /// Hilbert series of R, the pair formulas and the dual dimensions.
    Hilbert {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArg,
        /// Truncation degree; defaults to the maximal rank plus two.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Numerical Koszul defect with the report for every pair.
    Nkd {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Checks on the map from order-complex cochains to R.
    Phi {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Wedge two posets at rank-one elements.
    Wedge {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, num_args = 2, value_names = ["V1", "V2"], required = true)]
        at: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a generated poset, e.g. `boolean 3`, `hat(chain:2)` or
    /// `random 2,3,2 0.6 uniform`.
    Generate {
        kind: String,
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn options(g: &Global, field: &FieldArg) -> Result<Options, CliError> {
    Ok(Options {
        field: field.field.parse::<FieldSpec>()?,
        max_cells: g.max_cells,
        max_tensor: g.max_tensor,
        timings: g.timings,
    })
}

fn emit_poset(p: &RankedPoset, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, p.to_text())
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{}", p.to_text());
            Ok(())
        }
    }
}

fn validate(file: &Path) -> Result<(), CliError> {
    let text = run::read(file)?;
    match parse(&text) {
        Ok(p) => {
            let p = run::name_from_path(p, file);
            println!(
                "valid: {} ({} elements, max rank {})",
                p.name().unwrap_or("unnamed"),
                p.len(),
                p.max_rank()
            );
            Ok(())
        }
        Err(e) => {
            let debug = format!("{e:?}");
            let kind = debug.split(['(', ' ', '{']).next().unwrap_or_default();
            Err(CliError::Failure(format!("invalid ({kind}): {e}")))
        }
    }
}

fn execute(cli: &Cli) -> Result<Option<(AnalysisReport, bool)>, CliError> {
    let g = &cli.global;
    let report = match &cli.command {
        Command::Validate { file } => {
            validate(file)?;
            return Ok(None);
        }
        Command::Info { file } => {
            let opts = Options {
                timings: g.timings,
                ..Options::default()
            };
            (run::info(&run::load(file)?, &opts), false)
        }
        Command::Cohomology {
            file,
            field,
            augmented,
        } => (
            run::cohomology(&run::load(file)?, &options(g, field)?)?,
            *augmented,
        ),
        Command::Order {
            file,
            field,
            interval,
            relative,
        } => {
            let p = run::load(file)?;
            let sub = relative.as_deref().map(run::load).transpose()?;
            let iv = interval.as_ref().map(|v| (v[0].as_str(), v[1].as_str()));
            (
                run::order(&p, iv, sub.as_ref(), &options(g, field)?)?,
                false,
            )
        }
        Command::Cm { file, field } => (run::cm(&run::load(file)?, &options(g, field)?)?, false),
        Command::Koszul { file, field, ext } => (
            run::koszul(&run::load(file)?, *ext, &options(g, field)?)?,
            false,
        ),
        Command::Hilbert {
            file,
            field,
            max_degree,
        } => (
            run::hilbert(&run::load(file)?, *max_degree, &options(g, field)?)?,
            false,
        ),
        Command::Nkd { file, field } => (run::nkd(&run::load(file)?, &options(g, field)?)?, false),
        Command::Phi { file, field } => (run::phi(&run::load(file)?, &options(g, field)?)?, false),
        Command::Wedge {
            file1,
            file2,
            at,
            output,
        } => {
            let (a, b) = (run::load(file1)?, run::load(file2)?);
            let w = wedge(&a, &b, a.id(&at[0])?, b.id(&at[1])?)?;
            emit_poset(&w, output.as_deref())?;
            return Ok(None);
        }
        Command::Generate {
            kind,
            params,
            seed,
            output,
        } => {
            let spec: GeneratorSpec = std::iter::once(kind.as_str())
                .chain(params.iter().map(String::as_str))
                .collect::<Vec<_>>()
                .join(":")
                .parse()?;
            let p = generate(&spec, *seed)?;
            emit_poset(&p, output.as_deref())?;
            return Ok(None);
        }
    };
    Ok(Some(report))
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("KOSZULKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Input(format!(
            "KOSZULKIT_THREADS must be a positive integer, got '{v}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Input(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| execute(&cli)).and_then(|out| {
        let Some((report, augmented)) = out else {
            return Ok(());
        };
        if cli.global.json {
            print!("{}", report.to_json());
        } else {
            print!("{}", render(&report, augmented));
        }
        let failures = report.assertion_failures();
        if cli.global.assert && !failures.is_empty() {
            return Err(CliError::Failure(format!(
                "assertion failed: {}",
                failures.join("; ")
            )));
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
