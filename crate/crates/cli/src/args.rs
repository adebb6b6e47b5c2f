use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "belyikit", version, about = "Belyi maps, abc triples and S-integral points over Q")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Worker threads; reports do not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the report here instead of stdout (atomic replace).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; defaults to the `--out` extension, else json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Add wall-clock timing to the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct or certify Belyi maps.
    #[command(subcommand)]
    Belyi(BelyiCmd),
    /// Search or test abc triples.
    #[command(subcommand)]
    Abc(AbcCmd),
    /// Height of a point of P²(Q).
    Height {
        /// Projective point `x0:x1:x2`.
        #[arg(long)]
        point: String,
    },
    /// Radical of a point of P²(Q).
    Radical {
        #[arg(long)]
        point: String,
    },
    /// S-integral points on P¹ minus a finite set.
    #[command(subcommand)]
    Siegel(SiegelCmd),
    /// Regression corpus.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Debug, Subcommand)]
pub enum BelyiCmd {
    /// Compose `f` with Möbius maps and β-maps until it is Belyi.
    Make {
        #[arg(long)]
        map: String,
        /// Points that must land in {0, 1, ∞}, e.g. `0,1,oo`.
        #[arg(long, default_value = "")]
        marked: String,
    },
    /// Certify that all critical values lie in {0, 1, ∞}.
    Check {
        #[arg(long)]
        map: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum AbcCmd {
    /// Rank all coprime triples with `c ≤ cmax` by quality.
    Scan {
        #[arg(long)]
        cmax: u64,
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
    /// Test `log M ≤ (1+ε) log R + c` for `a + b = c`.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Rational `ε ≥ 0`.
        #[arg(long)]
        eps: String,
        /// Rational `ρ ≥ 1`; the constant is `log ρ` and the test is exact.
        #[arg(long = "c", conflicts_with = "c_log")]
        rho: Option<String>,
        /// The constant itself as a decimal; the test is in floating point.
        #[arg(long, allow_hyphen_values = true)]
        c_log: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SiegelCmd {
    /// All S-integral points with witness exponents ≤ bound.
    Enumerate {
        /// Points at infinity, e.g. `0,1,oo`.
        #[arg(long)]
        infty: String,
        /// Primes of S, e.g. `2,3`; empty for S = ∅.
        #[arg(long, default_value = "")]
        s: String,
        #[arg(long)]
        bound: u32,
    },
    /// Height and radical audits along a Belyi map.
    Audit {
        #[arg(long)]
        map: String,
        #[arg(long)]
        infty: String,
        #[arg(long, default_value = "")]
        s: String,
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(long)]
        bound: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusCmd {
    /// Re-execute every stored case and byte-compare its report.
    Run {
        /// Corpus directory.
        path: PathBuf,
        /// Rewrite the stored reports instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}
