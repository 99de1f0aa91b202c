use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "rieszwalk", version, about = "Riesz-measure quantum walk: exact parameters, CMV operators and walk data")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Print exact rationals as decimals.
    #[arg(long, global = true)]
    pub float: bool,
    /// Write to this file (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// The Riesz measure itself.
    Mu,
    /// The same product started at level zero; `μ(z) = ν(z⁴)`.
    Nu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerblunskyMethod {
    Schur,
    Ansatz,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Distribution,
    NormTrace,
    Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReturnMethod {
    Exact,
    Numeric,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlphaSource {
    Riesz,
    Hadamard,
}

/// `riesz`, `hadamard` or `file:PATH`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoinSpec {
    Riesz,
    Hadamard,
    File(PathBuf),
}

impl FromStr for CoinSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "riesz" => Ok(CoinSpec::Riesz),
            "hadamard" => Ok(CoinSpec::Hadamard),
            _ => match s.strip_prefix("file:") {
                Some(p) if !p.is_empty() => Ok(CoinSpec::File(PathBuf::from(p))),
                _ => Err(format!("expected riesz, hadamard or file:PATH, found {s:?}")),
            },
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moments of the measure, j = 0..=max.
    Moments {
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Variant::Mu)]
        variant: Variant,
    },
    /// Nonzero Verblunsky parameters from the Schur algorithm, the closed form, or both.
    Verblunsky {
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t = VerblunskyMethod::Schur)]
        method: VerblunskyMethod,
        /// `nu` lists g's parameters by their own index; `mu` lists f's at index 4m-1.
        #[arg(long, value_enum, default_value_t = Variant::Nu)]
        variant: Variant,
    },
    /// Backbone values A_1..A_count.
    Backbone {
        #[arg(long)]
        count: usize,
    },
    /// The three families of limit points, count members each.
    Limits {
        #[arg(long)]
        count: usize,
    },
    /// Evolve |0,up> and emit the position distribution, the norm trace or the operator.
    Walk {
        #[arg(long)]
        coin: CoinSpec,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Emit::Distribution)]
        emit: Emit,
    },
    /// First-return amplitudes and cumulative return probability.
    FirstReturn {
        #[arg(long)]
        coin: CoinSpec,
        #[arg(long)]
        max: usize,
        /// Defaults to exact for riesz and numeric otherwise.
        #[arg(long, value_enum)]
        method: Option<ReturnMethod>,
    },
    /// Nonzero entries of a CMV matrix.
    Cmv {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum)]
        alphas: AlphaSource,
    },
}
