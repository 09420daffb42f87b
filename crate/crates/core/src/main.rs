use clap::{Args, Parser, Subcommand};
use lazard::bch::BchError;
use lazard::cohomology::CohomologyError;
use lazard::corpus::{corpus, CorpusError, ENTRIES};
use lazard::format::{parse_chain, parse_module, AlgebraFile, FormatError};
use lazard::lhs::{main_theorem_check, LhsError};
use lazard::lie::{LieAlgebra, LieError};
use lazard::modarith::PrimeContext;
use lazard::report::{self, Versioned};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lazard", version, about = "Mod-p cohomology of Lie algebras over Z/p^k")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgebraArg {
    /// Structure-constant JSON file, or a corpus entry such as `heisenberg_gen(1)`.
    #[arg(long)]
    algebra: String,
    /// Prime for corpus entries.
    #[arg(long, default_value_t = 5)]
    p: u64,
    /// Precision for corpus entries.
    #[arg(long, default_value_t = 2)]
    k: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers of g/pg.
    Betti {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// `trivial` or a module JSON file.
        #[arg(long, default_value = "trivial")]
        coeff: String,
        /// Also compute cohomology over Z/p^k.
        #[arg(long)]
        integral: bool,
    },
    /// Group-side and Lie-side recursions against the direct computation.
    Compare {
        #[command(flatten)]
        algebra: AlgebraArg,
    },
    /// Derived and central series, solvable chain, filtration check.
    Series {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Chain JSON file to check instead of the canonical chain.
        #[arg(long)]
        chain: Option<PathBuf>,
    },
    /// Truncated Baker–Campbell–Hausdorff table.
    Bch {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Cup products H^deg1 x H^deg2 -> H^(deg1+deg2).
    Cup {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        deg1: usize,
        #[arg(long)]
        deg2: usize,
    },
    /// List corpus entries, or emit one as an algebra file.
    Corpus {
        #[arg(long)]
        list: bool,
        #[arg(long, conflicts_with = "list")]
        name: Option<String>,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
}

enum Failure {
    /// Bad input or unmet hypothesis: exit 2.
    Input(String),
    /// A computed check disagreed: exit 1.
    Math(String),
}

fn cohomology_failure(e: CohomologyError) -> Failure {
    match e {
        CohomologyError::DSquaredNonzero { .. }
        | CohomologyError::UniversalCoefficients { .. }
        | CohomologyError::DoesNotPreserveCocycles { .. }
        | CohomologyError::DoesNotPreserveCoboundaries { .. } => Failure::Math(e.to_string()),
        _ => Failure::Input(e.to_string()),
    }
}

fn bch_failure(e: BchError) -> Failure {
    match e {
        BchError::OracleMismatch { .. } => Failure::Math(e.to_string()),
        _ => Failure::Input(e.to_string()),
    }
}

impl From<LhsError> for Failure {
    fn from(e: LhsError) -> Self {
        match e {
            LhsError::Cohomology(c) => cohomology_failure(c),
            LhsError::Bch(b) => bch_failure(b),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<CohomologyError> for Failure {
    fn from(e: CohomologyError) -> Self {
        cohomology_failure(e)
    }
}

impl From<BchError> for Failure {
    fn from(e: BchError) -> Self {
        bch_failure(e)
    }
}

macro_rules! input_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Input(e.to_string())
            }
        }
    )*};
}

input_failure!(FormatError, CorpusError, LieError, lazard::modarith::ModArithError);

fn load(arg: &AlgebraArg) -> Result<(LieAlgebra, String), Failure> {
    let path = Path::new(&arg.algebra);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let file: AlgebraFile = serde_json::from_str(&text).map_err(FormatError::from)?;
        let name = file.name.clone().unwrap_or_else(|| arg.algebra.clone());
        return Ok((file.to_algebra()?, name));
    }
    let ctx = PrimeContext::new(arg.p, arg.k)?;
    match corpus(&arg.algebra, ctx) {
        Ok(g) => Ok((g, arg.algebra.clone())),
        Err(CorpusError::Unknown(_)) => Err(Failure::Input(format!(
            "`{}` is neither a readable file nor a corpus entry",
            arg.algebra
        ))),
        Err(e) => Err(e.into()),
    }
}

fn emit<T: Serialize>(out: Option<&Path>, body: T) -> Result<(), Failure> {
    let json = Versioned::new(body).to_json();
    match out {
        Some(path) => std::fs::write(path, json).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}

/// Returns whether every check in the report passed.
fn run(cli: &Cli) -> Result<bool, Failure> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Betti {
            algebra,
            coeff,
            integral,
        } => {
            let (g, name) = load(algebra)?;
            let module = match coeff.as_str() {
                "trivial" => None,
                path => Some(parse_module(Path::new(path), &g)?),
            };
            let rep = report::betti_report(&g, &name, module.as_ref(), *integral)?;
            let ok = rep.euler == 0;
            emit(out, rep)?;
            Ok(ok)
        }
        Command::Compare { algebra } => {
            let (g, name) = load(algebra)?;
            let rep = main_theorem_check(&g, &name)?;
            let table = report::comparison_table(&rep);
            if out.is_some() {
                print!("{table}");
            } else {
                eprint!("{table}");
            }
            let ok = rep.pass;
            emit(out, rep)?;
            Ok(ok)
        }
        Command::Series { algebra, chain } => {
            let (g, name) = load(algebra)?;
            let chain = chain.as_deref().map(|c| parse_chain(c, &g)).transpose()?;
            let rep = report::series_report(&g, &name, chain.as_ref())?;
            let ok = rep.pass();
            emit(out, rep)?;
            Ok(ok)
        }
        Command::Bch { p, degree, k } => {
            let ctx = PrimeContext::new(*p, *k)?;
            emit(out, report::bch_report(ctx, *degree)?)?;
            Ok(true)
        }
        Command::Cup { algebra, deg1, deg2 } => {
            let (g, name) = load(algebra)?;
            emit(out, report::cup_report(&g, &name, *deg1, *deg2)?)?;
            Ok(true)
        }
        Command::Corpus { list, name, p, k } => match name {
            Some(spec) if !list => {
                let g = corpus(spec, PrimeContext::new(*p, *k)?)?;
                let file = AlgebraFile::from_algebra(&g, Some(spec));
                let json = serde_json::to_string_pretty(&file).expect("serializable") + "\n";
                match out {
                    Some(path) => std::fs::write(path, json).map_err(|e| Failure::Input(e.to_string()))?,
                    None => print!("{json}"),
                }
                Ok(true)
            }
            _ => {
                #[derive(Serialize)]
                struct Listing {
                    entries: &'static [lazard::corpus::CorpusEntry],
                }
                emit(out, Listing { entries: ENTRIES })?;
                Ok(true)
            }
        },
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("LAZARD_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| Failure::Input(format!("LAZARD_THREADS must be a non-negative integer, got `{v}`")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match configure_threads().and_then(|_| run(&cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
