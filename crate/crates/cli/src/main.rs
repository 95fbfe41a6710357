use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dlchow::dlclass::{ClassKind, ComputationPath};
use dlchow::permgroup::Twist;

mod commands;
mod error;

use error::CliError;

const MAX_N: usize = 8;
const SLOW_N: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "dlchow", version, about = "Chow classes of Deligne-Lusztig varieties for GL_n")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Rank: the Weyl group is S_n.
    #[arg(long, global = true, default_value_t = 3)]
    pub n: usize,
    #[arg(long, global = true, value_enum, default_value_t = TwistArg::Trivial)]
    pub twist: TwistArg,
    /// Evaluate symbolic results at this integer value of q (x for Hecke elements).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub q: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, env = "DLCHOW_CACHE", default_value = "./.dlchow-cache")]
    pub cache_dir: PathBuf,
    /// Fail with exit code 4 if the structure-constant cache had to be rebuilt.
    #[arg(long, global = true)]
    pub strict_cache: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class of X(w), Y_{w,s} or Y_{w,u} in the Schubert basis; all of S_n without --w.
    Class {
        #[arg(long)]
        w: Option<String>,
        #[arg(long, value_enum, default_value_t = KindArg::Dl)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = PathArg::PairEnumeration)]
        path: PathArg,
    },
    /// Groups of elements with equal regular semisimple classes.
    EqualClasses,
    /// Matrix of classes of X(w) against Schubert cycles, with its determinant.
    Transition,
    /// Number of irreducible components.
    Components {
        #[arg(long)]
        w: Option<String>,
        #[arg(long, value_enum, default_value_t = KindArg::Dl)]
        kind: KindArg,
    },
    /// Evaluate an expression in the Iwahori-Hecke algebra, e.g. "T[s1]*T[s1]".
    Hecke {
        #[arg(long)]
        expr: String,
    },
    /// Schubert polynomial of w; all of S_n without --w.
    Schubert {
        #[arg(long)]
        w: Option<String>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistArg {
    Trivial,
    W0,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindArg {
    Dl,
    Ss,
    Unip,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathArg {
    PairEnumeration,
    DividedDifference,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl From<TwistArg> for Twist {
    fn from(t: TwistArg) -> Twist {
        match t {
            TwistArg::Trivial => Twist::Trivial,
            TwistArg::W0 => Twist::ConjByW0,
        }
    }
}

impl From<KindArg> for ClassKind {
    fn from(k: KindArg) -> ClassKind {
        match k {
            KindArg::Dl => ClassKind::DLFrobenius,
            KindArg::Ss => ClassKind::RegSemisimple,
            KindArg::Unip => ClassKind::RegUnipotent,
        }
    }
}

impl From<PathArg> for ComputationPath {
    fn from(p: PathArg) -> ComputationPath {
        match p {
            PathArg::PairEnumeration => ComputationPath::PairEnumeration,
            PathArg::DividedDifference => ComputationPath::DividedDifference,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    if g.n == 0 {
        return Err(CliError::Parse("--n must be at least 1".into()));
    }
    if g.n > MAX_N {
        return Err(CliError::Cap(format!("--n {} exceeds the supported maximum {MAX_N}", g.n)));
    }
    if g.n > SLOW_N {
        eprintln!("warning: n = {} may take a long time", g.n);
    }
    if let Some(jobs) = g.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Class { w, kind, path } => commands::class(g, w.as_deref(), kind.into(), path.into(), &mut out),
        Command::EqualClasses => commands::equal_classes(g, &mut out),
        Command::Transition => commands::transition(g, &mut out),
        Command::Components { w, kind } => commands::components(g, w.as_deref(), kind.into(), &mut out),
        Command::Hecke { expr } => commands::hecke(g, &expr, &mut out),
        Command::Schubert { w } => commands::schubert(g, w.as_deref(), &mut out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
