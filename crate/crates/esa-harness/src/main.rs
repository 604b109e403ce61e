//! `esa` — run early-stopped-aggregation experiments and write CSV results.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use esa_core::{MarginMode, StopRule, Traversal};
use esa_harness::{
    parse_methods, run_cluster_experiment, run_gauss_experiment, run_knn_experiment, write_csv,
    ClusterExperiment, ClusterSetting, CommonConfig, GaussExperiment, HarnessError, KnnExperiment,
    RegressionCriterion, RunRecord,
};

#[derive(Parser)]
#[command(
    name = "esa",
    about = "Early-stopped aggregation experiments over synthetic benchmarks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gaussian sequence model: excess risk of the aggregated posterior mean.
    #[command(name = "gauss-seq")]
    GaussSeq(GaussArgs),
    /// Variational Gaussian mixture clustering on synthetic settings A/B.
    Gmm(GmmArgs),
    /// k-nearest-neighbor regression with AICc, validation, or penalized tuning.
    Knn(KnnArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Comma-separated subset of: esa, fa, ms.
    #[arg(long, default_value = "esa,fa,ms")]
    method: String,
    /// Sample size per replicate.
    #[arg(long)]
    n: Option<usize>,
    /// Number of seeded replicates.
    #[arg(long, default_value_t = 1)]
    replicates: usize,
    /// Master seed; each replicate derives its own stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Promoting parameter of the stopping rule.
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    /// Margin mode of the stopping rule: mult or add.
    #[arg(long, default_value = "add")]
    margin: String,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Write 0 in the wall-time column (byte-reproducible output).
    #[arg(long, default_value_t = false)]
    no_timing: bool,
}

impl CommonArgs {
    fn build(&self, default_n: usize) -> Result<CommonConfig, HarnessError> {
        let margin = match self.margin.as_str() {
            "mult" => MarginMode::Multiplicative,
            "add" => MarginMode::Additive,
            other => {
                return Err(HarnessError::Config(format!(
                    "unknown margin mode '{other}' (expected mult or add)"
                )))
            }
        };
        let rule = StopRule::new(self.delta, margin, Traversal::Forward)
            .map_err(|e| HarnessError::Config(e.to_string()))?;
        Ok(CommonConfig {
            methods: parse_methods(&self.method)?,
            n: self.n.unwrap_or(default_n),
            replicates: self.replicates,
            seed: self.seed,
            rule,
            no_timing: self.no_timing,
        })
    }
}

#[derive(Args)]
struct GaussArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// True smoothness of the power-law signal.
    #[arg(long, default_value_t = 1.0)]
    beta_star: f64,
    /// Comma-separated strictly increasing exponents in [0, 1].
    #[arg(long, default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
    q_ladder: String,
}

#[derive(Args)]
struct GmmArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Synthetic benchmark: a (heterogeneous Gaussians) or b (semicircles).
    #[arg(long, default_value = "a")]
    setting: String,
    /// Largest component count on the ladder.
    #[arg(long, default_value_t = 10)]
    k_max: usize,
}

#[derive(Args)]
struct KnnArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated strictly increasing neighbor counts. Defaults to
    /// 1,3,5,10,20,40,80,160 (without the interpolating first rung for aicc).
    #[arg(long)]
    ladder: Option<String>,
    /// Criterion: aicc, val, or pen.
    #[arg(long, default_value = "aicc")]
    criterion: String,
    /// Exponential-weight sharpness for the validation criterion.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Validation fraction for the val criterion.
    #[arg(long, default_value_t = 0.2)]
    split: f64,
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, HarnessError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<T>()
                .map_err(|_| HarnessError::Config(format!("cannot parse '{part}' in {what}")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    let (records, out): (Vec<RunRecord>, PathBuf) = match cli.command {
        Command::GaussSeq(args) => {
            let cfg = GaussExperiment {
                common: args.common.build(4096)?,
                beta_star: args.beta_star,
                q_ladder: parse_list(&args.q_ladder, "--q-ladder")?,
            };
            (run_gauss_experiment(&cfg)?, args.common.out)
        }
        Command::Gmm(args) => {
            let setting = match args.setting.as_str() {
                "a" => ClusterSetting::A,
                "b" => ClusterSetting::B,
                other => {
                    return Err(HarnessError::Config(format!(
                        "unknown setting '{other}' (expected a or b)"
                    )))
                }
            };
            let cfg = ClusterExperiment {
                common: args.common.build(500)?,
                setting,
                k_max: args.k_max,
            };
            (run_cluster_experiment(&cfg)?, args.common.out)
        }
        Command::Knn(args) => {
            let criterion = match args.criterion.as_str() {
                "aicc" => RegressionCriterion::Aicc,
                "val" => RegressionCriterion::Validation,
                "pen" => RegressionCriterion::Penalized,
                other => {
                    return Err(HarnessError::Config(format!(
                        "unknown criterion '{other}' (expected aicc, val, pen)"
                    )))
                }
            };
            let ladder = match &args.ladder {
                Some(text) => parse_list(text, "--ladder")?,
                // AICc diverges on the interpolating single-neighbor model,
                // so the default ladder drops it for that criterion.
                None if criterion == RegressionCriterion::Aicc => {
                    vec![3, 5, 10, 20, 40, 80, 160]
                }
                None => vec![1, 3, 5, 10, 20, 40, 80, 160],
            };
            let cfg = KnnExperiment {
                common: args.common.build(500)?,
                ladder,
                criterion,
                alpha: args.alpha,
                split: args.split,
                sigma: 0.3,
            };
            (run_knn_experiment(&cfg)?, args.common.out)
        }
    };
    write_csv(&records, &out)?;
    Ok(())
}

fn main() -> ExitCode {
    // Exit codes: 0 success, 1 configuration error, 2 runtime failure.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successful exits.
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            if error.is_config() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
