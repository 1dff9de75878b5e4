mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact tools for simple polytopes, Dantzig figures and their
/// fundamental deformations.
///
/// Exit status: 0 success, 1 counterexample found (certificate written),
/// 2 input error, 3 budget or sampler exhausted.
#[derive(Parser, Debug)]
#[command(name = "polydeform", version)]
struct Cli {
    #[command(flatten)]
    tuning: Tuning,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Tuning {
    /// Palette tilts tried after a non-generic deformation.
    #[arg(long, global = true, env = "POLYDEFORM_TILT_RETRIES", default_value_t = 4)]
    tilt_retries: usize,
    /// Seeded random tilts tried after the palette.
    #[arg(long, global = true, env = "POLYDEFORM_RANDOM_TILTS", default_value_t = 2)]
    random_tilts: usize,
    /// Polytopes drawn per sample before the sampler gives up.
    #[arg(long, global = true, env = "POLYDEFORM_SAMPLER_ATTEMPTS", default_value_t = 10_000)]
    sampler_attempts: usize,
    /// States visited by the non-revisiting search before giving up.
    #[arg(long, global = true, env = "POLYDEFORM_STATE_BUDGET", default_value_t = 10_000_000)]
    state_budget: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List vertices with their tight facets (facets numbered from 1).
    Vertices { file: PathBuf },
    #[command(subcommand)]
    Check(CheckCmd),
    #[command(subcommand)]
    Dantzig(DantzigCmd),
    #[command(subcommand)]
    Geodesics(GeodesicsCmd),
    #[command(subcommand)]
    Fd(FdCmd),
    #[command(subcommand)]
    Campaign(CampaignCmd),
    #[command(subcommand)]
    Moduli(ModuliCmd),
    #[command(subcommand)]
    Certificate(CertificateCmd),
}

#[derive(Args, Debug)]
struct Pair {
    /// Vertex coordinates, e.g. `0,1/2,1`. Defaults to the file's marks.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    /// Compare the skeleton diameter with n − d.
    Hirsch {
        file: PathBuf,
        /// Where to write a certificate on violation.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Search for an x–y edge path that never re-enters a facet it left.
    Nonrevisiting {
        file: PathBuf,
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum DantzigCmd {
    /// List vertex pairs with complementary tight sets.
    Find { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum GeodesicsCmd {
    /// Print dist(x, y), the number of geodesics and the maximum number of
    /// internally disjoint geodesics.
    Count {
        file: PathBuf,
        #[command(flatten)]
        pair: Pair,
    },
}

#[derive(Args, Debug)]
struct FdArgs {
    file: PathBuf,
    /// Facet to move, numbered from 1.
    #[arg(long)]
    facet: usize,
    /// Motion speed as a positive rational `P/Q`.
    #[arg(long, default_value = "1")]
    step: String,
}

#[derive(Subcommand, Debug)]
enum FdCmd {
    /// Apply a fundamental deformation and write the result.
    Apply {
        #[command(flatten)]
        fd: FdArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide whether a fundamental deformation is good.
    Good {
        #[command(flatten)]
        fd: FdArgs,
        #[command(flatten)]
        pair: Pair,
        /// Check every vertex pair off the vanishing edge.
        #[arg(long)]
        all_pairs: bool,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct CampaignArgs {
    #[arg(long)]
    d: usize,
    /// Number of figures to sample.
    #[arg(long)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON report path.
    #[arg(long)]
    out: PathBuf,
    /// Certificate path, written only when counterexamples are found.
    /// Defaults to the report path with `.certificates.json` appended.
    #[arg(long)]
    certificates: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum CampaignCmd {
    /// At least three disjoint x–y geodesics in every sampled figure.
    #[command(name = "3geodesic")]
    ThreeGeodesic(CampaignArgs),
    /// Every fundamental deformation of every sampled figure is good.
    StrongDantzig(CampaignArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum KindArg {
    Dantzig,
    Polytope,
}

#[derive(Subcommand, Debug)]
enum ModuliCmd {
    /// Breadth-first exploration of the type graph from one sampled seed.
    Explore {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Dantzig)]
        kind: KindArg,
        /// Nodes to expand.
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Facet count for the polytope kind (default 2d).
        #[arg(long)]
        facets: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        /// Graph file to resume from and update.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Strongly connected components of an explored graph.
    Scc {
        graph: PathBuf,
        #[arg(long)]
        good_only: bool,
    },
    /// Replay every arc of an explored graph.
    Verify { graph: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CertificateCmd {
    /// Re-run the checks stored in a certificate, a certificate list or a
    /// campaign report.
    Verify { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(commands::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Counterexample(path)) => {
            eprintln!("counterexample certificate written to {}", path.display());
            ExitCode::from(1)
        }
        Err(commands::Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::Failure::Exhausted(msg)) => {
            eprintln!("exhausted: {msg}");
            ExitCode::from(3)
        }
    }
}
