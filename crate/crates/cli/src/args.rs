use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "limwit", version, about = "Entanglement witnesses from XX/YY/ZZ measurement statistics")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be positive, got {v}"))
    }
}

fn positive_count(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0 {
        Ok(v)
    } else {
        Err("must be at least 1".into())
    }
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Round numbers to 6 significant digits and indent JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[arg(long, global = true, env = "WK_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Product-value floor below which a witness is not block-positive.
    #[arg(long, global = true, env = "WK_BP_TOL", default_value_t = limwit::tolerance::BP_TOL, value_parser = positive)]
    pub bp_tol: f64,

    /// A witness needs an eigenvalue below -eig_tol.
    #[arg(long, global = true, default_value_t = limwit::tolerance::EIG_TOL, value_parser = positive)]
    pub eig_tol: f64,

    /// Sampled records are entangled when the minimum lies this many standard errors below zero.
    #[arg(long, global = true, default_value_t = limwit::tolerance::SIGMA_THRESHOLD, value_parser = positive)]
    pub detect_tol: f64,

    #[arg(long, global = true, env = "WK_RESTARTS", default_value_t = 64, value_parser = positive_count)]
    pub restarts: usize,

    #[arg(long, global = true, default_value_t = 200, value_parser = positive_count)]
    pub iters: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a density matrix as JSON.
    State {
        #[command(subcommand)]
        kind: StateKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Produce the nine-number measurement record of a two-qubit state.
    Record {
        /// Density-matrix JSON to measure.
        #[arg(long)]
        state: Option<PathBuf>,
        #[command(subcommand)]
        kind: Option<StateKind>,
        /// Sample this many shots per setting instead of exact expectations.
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run the six-family detection on a record.
    Detect {
        #[arg(long)]
        record: PathBuf,
        /// Also compute the PPT minimum of this state for comparison.
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Build a witness and optionally certify block-positivity.
    Witness(WitnessArgs),
    /// Tabulate detection over a parameter grid as CSV.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BellArg {
    #[value(name = "phi+")]
    PhiPlus,
    #[value(name = "phi-")]
    PhiMinus,
    #[value(name = "psi+")]
    PsiPlus,
    #[value(name = "psi-")]
    PsiMinus,
}

#[derive(Debug, Clone, Subcommand)]
pub enum StateKind {
    Bell {
        #[arg(long, value_enum, default_value = "phi+")]
        kind: BellArg,
    },
    Werner {
        #[arg(long, allow_negative_numbers = true)]
        f: f64,
    },
    Isotropic {
        #[arg(long)]
        p: f64,
    },
    /// Weights on phi+, phi-, psi+, psi-.
    BellDiagonal {
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
    },
    /// Maximally correlated `sum_i x_i |ii>`.
    Mc {
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        x: Vec<f64>,
    },
    Theorem1 {
        #[arg(long)]
        family: u8,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long)]
        negative_b: bool,
    },
    Theorem2 {
        #[arg(long)]
        family: u8,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long)]
        negative_b: bool,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
    },
    DampedBell {
        #[arg(long)]
        gamma: f64,
    },
}

#[derive(Debug, Clone, Args)]
#[command(group = clap::ArgGroup::new("construction").required(true).multiple(false))]
pub struct WitnessArgs {
    /// Extremal two-qubit witness W_k(a, b).
    #[arg(long, group = "construction")]
    pub family: Option<u8>,
    #[arg(long, group = "construction")]
    pub example1: bool,
    #[arg(long, group = "construction")]
    pub example2: bool,
    #[arg(long, group = "construction")]
    pub example3: bool,
    #[arg(long, group = "construction")]
    pub reduction: bool,
    #[arg(long, group = "construction")]
    pub flip: bool,
    /// lambda 1 - |psi_MC><psi_MC|.
    #[arg(long, group = "construction")]
    pub mc: bool,

    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub negative_b: bool,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p0: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub x: Vec<f64>,

    /// Run the product-vector minimizer.
    #[arg(long)]
    pub certify: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Channel {
    /// Amplitude damping on the second qubit of phi+.
    Ad,
}

#[derive(Debug, Clone, Args)]
#[command(group = clap::ArgGroup::new("target").required(true).multiple(false))]
pub struct ScanArgs {
    #[arg(long, value_enum, group = "target", requires = "gamma_grid")]
    pub channel: Option<Channel>,
    /// `lo:hi:n`, n evenly spaced points including both ends.
    #[arg(long)]
    pub gamma_grid: Option<String>,
    #[arg(long, group = "target", requires = "f_grid")]
    pub werner: bool,
    #[arg(long)]
    pub f_grid: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_state_and_globals() {
        let cli = Cli::try_parse_from(["limwit", "--seed", "5", "state", "werner", "--f", "-0.5"]).unwrap();
        assert_eq!(cli.global.seed, 5);
        assert!(matches!(cli.command, Command::State { kind: StateKind::Werner { f }, .. } if f == -0.5));
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        assert!(Cli::try_parse_from(["limwit", "--bp-tol", "0", "scan", "--werner", "--f-grid", "0:1:3"]).is_err());
        assert!(Cli::try_parse_from(["limwit", "--restarts", "0", "scan", "--werner", "--f-grid", "0:1:3"]).is_err());
    }

    #[test]
    fn witness_needs_one_construction() {
        assert!(Cli::try_parse_from(["limwit", "witness"]).is_err());
        assert!(Cli::try_parse_from(["limwit", "witness", "--example1", "--example3"]).is_err());
        assert!(Cli::try_parse_from(["limwit", "witness", "--family", "2", "--a", "0"]).is_ok());
    }
}
