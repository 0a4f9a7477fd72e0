//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sirnet", version, about = "Outage, contention, throughput and capacity of interference-limited networks")]
pub struct Cli {
    /// Write CSV here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// TOML file with `theta`, `[class]`, `[mac]` and `[sim]` sections.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output format; only CSV is produced.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spatial contention gamma and spatial efficiency sigma = 1/gamma.
    Contention(ContentionArgs),
    /// Success probability with bounds, optionally checked by simulation.
    Outage(OutageArgs),
    /// Optimal transmit probability, reuse factor or rate.
    Throughput(ThroughputArgs),
    /// Ergodic and spatial capacity.
    Capacity(CapacityArgs),
    /// Analytic-versus-simulation sweep; exits 1 when it fails.
    Validate(ValidateArgs),
    /// Raw SIR samples, one per line.
    Sample(SampleArgs),
    /// Data behind the standard tables and curves.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ClassArgs {
    /// ppp<d>, ppp2-nofade, ppp2-exp, line1, line2, explicit or single.
    #[arg(long)]
    pub class: Option<String>,
    /// Path loss exponent.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Exponential path loss rate for ppp2-exp.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Fading case desired/interferer for single, e.g. 1/1, 0/1, m2/1.
    #[arg(long = "case")]
    pub fading_case: Option<String>,
    /// Single interferer at r = xi^(1/alpha).
    #[arg(long, conflicts_with = "r")]
    pub xi: Option<f64>,
    /// Single interferer distance.
    #[arg(long)]
    pub r: Option<f64>,
    /// Interferer distances for explicit, e.g. 1,2,3 or 1:1:10.
    #[arg(long)]
    pub distances: Option<String>,
    /// Interferer fading for ppp and explicit: rayleigh, none or m<value>.
    #[arg(long)]
    pub interferers: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ThetaArgs {
    /// SIR thresholds (linear): list or a:step:b.
    #[arg(long, conflicts_with = "theta_db", allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// SIR thresholds in dB: list or a:step:b.
    #[arg(long = "theta-db", allow_hyphen_values = true)]
    pub theta_db: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct AccessArgs {
    /// ALOHA transmit probability.
    #[arg(long, conflicts_with = "m")]
    pub p: Option<f64>,
    /// TDMA reuse factor (regular lines only).
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct SimArgs {
    /// Monte Carlo trials.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Base seed (default 0).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; results do not depend on this.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ContentionArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    #[command(flatten)]
    pub theta: ThetaArgs,
    /// Every row of the contention catalog over the thresholds.
    #[arg(long)]
    pub table3: bool,
    /// Reuse factor for the TDMA catalog row.
    #[arg(long, default_value_t = 2)]
    pub m: u32,
}

#[derive(Debug, Args)]
pub struct OutageArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    #[command(flatten)]
    pub theta: ThetaArgs,
    #[command(flatten)]
    pub access: AccessArgs,
    /// Add a Monte Carlo estimate and z-score per threshold.
    #[arg(long)]
    pub validate: bool,
    #[command(flatten)]
    pub sim: SimArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DuplexArg {
    Full,
    Half,
}

#[derive(Debug, Args)]
pub struct ThroughputArgs {
    /// Reuse factor optimization on the two-sided line.
    #[arg(long, conflicts_with = "rate")]
    pub tdma: bool,
    /// Joint optimization of rate and transmit probability in a Poisson network.
    #[arg(long)]
    pub rate: bool,
    #[command(flatten)]
    pub class: ClassArgs,
    #[command(flatten)]
    pub theta: ThetaArgs,
    /// Exponents for --tdma and --rate: list or a:step:b.
    #[arg(long = "alphas")]
    pub alphas: Option<String>,
    /// Dimension for --rate.
    #[arg(long, default_value_t = 2)]
    pub dim: u32,
    /// Contention constant for --rate (default C_d(alpha)).
    #[arg(long)]
    pub c: Option<f64>,
    /// Duplex mode; both when omitted.
    #[arg(long, value_enum)]
    pub duplex: Option<DuplexArg>,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    /// One-sided TDMA line over --m.
    #[arg(long, conflicts_with = "spatial")]
    pub tdma: bool,
    /// Spatial capacity optimized over p.
    #[arg(long)]
    pub spatial: bool,
    /// Path loss exponents: list or a:step:b.
    #[arg(long, default_value = "4")]
    pub alpha: String,
    /// Reuse factors for --tdma.
    #[arg(long, default_value = "1:10")]
    pub m: String,
    /// Transmit probabilities for Poisson networks.
    #[arg(long, default_value = "0.01,0.05,0.1,0.2,0.5,1")]
    pub p: String,
    /// Dimension of the Poisson network.
    #[arg(long, default_value_t = 2)]
    pub dim: u32,
    /// Duplex mode for --spatial; both when omitted.
    #[arg(long, value_enum)]
    pub duplex: Option<DuplexArg>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// 10^4 trials per case.
    #[arg(long, conflicts_with = "full")]
    pub quick: bool,
    /// 10^5 trials per case (default).
    #[arg(long)]
    pub full: bool,
    /// Restrict to one family: ppp, line, single, explicit, tdma.
    #[arg(long)]
    pub class: Option<String>,
    #[command(flatten)]
    pub sim: SimArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    #[command(flatten)]
    pub access: AccessArgs,
    #[command(flatten)]
    pub sim: SimArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Contention catalog at alpha = 4 over -10..20 dB.
    Table3,
    /// Reuse factor versus threshold for alpha = 2 and 4.
    MValues,
    /// Optimal rate and throughput versus alpha.
    MaxThru,
    /// Poisson ergodic capacity and bounds versus p.
    ErgCapacity,
    /// TDMA line capacity versus m.
    CapTdma,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub target: Target,
}
