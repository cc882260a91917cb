mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "ultralip", version, about = "Exact Lipschitz analysis over ultrametric spaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Truncation depth for presented spaces.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Lp,
    Tree,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFormat {
    Dend,
    Space,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a space or dendrogram file.
    Validate { file: PathBuf },
    /// Partition chain centers per level and nearest-center trails.
    Partition {
        file: PathBuf,
        #[arg(long)]
        q: String,
        #[arg(long)]
        level: Option<i64>,
        #[arg(long)]
        trail: Option<String>,
    },
    /// Smallest retraction index at which a function is eps-flat on fibers.
    Ywitness {
        file: PathBuf,
        /// Enumeration order as labels, base first.
        #[arg(long)]
        order: Option<String>,
        /// Function values as `label=value,...`; missing labels are 0.
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        eps: String,
    },
    /// Free norm of an element `label:coeff,...`.
    Freenorm {
        file: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value_t = Engine::Both)]
        engine: Engine,
    },
    /// The trail function and its perturbation ledger.
    Extreme {
        file: PathBuf,
        #[arg(long)]
        q: String,
        /// Perturbation sizes, comma separated.
        #[arg(long)]
        eps: Option<String>,
    },
    /// Projection audit and recentering demo.
    Mideal {
        #[command(subcommand)]
        which: MidealCommand,
    },
    /// Pseudo-Cauchy search, gap check and nested balls on a builtin space.
    Spherical {
        #[arg(long)]
        builtin: String,
        /// Depth used for the nested-ball search.
        #[arg(long, default_value_t = 30)]
        chain_depth: usize,
        /// Smallest admissible ball radius.
        #[arg(long, default_value = "1")]
        min_alpha: String,
    },
    /// Non-duality bookkeeping for one element and one ball chain.
    Audit {
        #[arg(long)]
        builtin: String,
        /// Element as `label:coeff,...`.
        #[arg(long)]
        phi: Option<String>,
        /// Element as molecules `lambda:p>q,...`.
        #[arg(long)]
        molecules: Option<String>,
        /// Chain as `center@radius,...`; defaults to the nested-ball search.
        #[arg(long)]
        chain: Option<String>,
    },
    /// Failure of M-embedding on a non-proper builtin.
    Membed {
        #[arg(long)]
        builtin: String,
        #[arg(long, default_value_t = 4)]
        yscale: usize,
        #[arg(long, default_value_t = 3)]
        min_len: usize,
    },
    /// Random dendrogram.
    Gen {
        #[arg(long)]
        points: usize,
        #[arg(long, default_value_t = 3)]
        branching: usize,
        /// Candidate heights, comma separated.
        #[arg(long)]
        heights: Option<String>,
        #[arg(long = "as", value_enum, default_value_t = GenFormat::Dend)]
        output: GenFormat,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Acceptance battery: lemmas, freenorm, mideal, extreme, spherical, membed or all.
    Suite { name: String },
}

#[derive(Subcommand, Debug)]
pub enum MidealCommand {
    /// `F(x) = x`, `F(p) = 1/2` against evaluation at `p`.
    Werner {
        #[arg(long, default_value_t = 8)]
        grid: u32,
    },
    /// Recentering demo for random F and flat f_1, f_2, f_3.
    Demo {
        file: PathBuf,
        #[arg(long)]
        q: String,
        #[arg(long = "N")]
        n: i64,
        #[arg(long = "R")]
        r: String,
        #[arg(long)]
        eps: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok((text, pass)) => {
            print!("{text}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
