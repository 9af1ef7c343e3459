// `!(tol > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use alpha_leakage::avg_hamming::{DEFAULT_GRID, DEFAULT_REFINE_ITERS};
use alpha_leakage::leakage::SolverOptions;
use alpha_leakage::report::{self, RunConfig};
use alpha_leakage::{Channel, Dist, DistortionSpec, Error, Joint, LogBase, Result};

#[derive(Parser)]
#[command(name = "alphaleak", version, about = "α-leakage measures and privacy-utility tradeoffs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Single order, e.g. 2, 1 or inf.
    #[arg(long, conflicts_with = "alpha_sweep")]
    alpha: Option<String>,
    /// Comma list of orders and start:stop:step ranges, e.g. 1,1.5:4:0.5,inf.
    #[arg(long)]
    alpha_sweep: Option<String>,
    #[arg(long, default_value = "nats")]
    base: LogBase,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 100_000)]
    max_iter: usize,
    /// Write the main output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self, default_alphas: &str) -> Result<RunConfig> {
        if !(self.tol > 0.0) {
            return Err(Error::OutOfRange { name: "tol", value: self.tol, expected: "tol > 0" });
        }
        let text = self.alpha.as_deref().or(self.alpha_sweep.as_deref()).unwrap_or(default_alphas);
        Ok(RunConfig {
            alphas: report::parse_sweep(text)?,
            base: self.base,
            opts: SolverOptions { tol: self.tol, max_iter: self.max_iter },
        })
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => std::fs::write(p, text).map_err(Error::from),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Entropies, α-leakage and minimal α-loss of a joint distribution.
    Measures {
        #[arg(long)]
        joint: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Maximal α-leakage of a channel over an order sweep.
    Capacity {
        #[arg(long)]
        channel: PathBuf,
        /// Compare against a second channel and report ordering changes.
        #[arg(long)]
        compare: Option<PathBuf>,
        /// Prior used at α = 1 (defaults to uniform).
        #[arg(long)]
        prior: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Optimal guessing strategy for a posterior channel with rows P(x|y).
    Strategy {
        #[arg(long)]
        posterior: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Privacy-utility tradeoffs.
    Put {
        #[command(subcommand)]
        mode: PutMode,
    },
}

#[derive(Subcommand)]
enum PutMode {
    /// Hard distortion constraint from a JSON distortion spec.
    Hard {
        #[arg(long)]
        spec: PathBuf,
        /// Prior used at α = 1.
        #[arg(long)]
        prior: Option<PathBuf>,
        /// Solve for maximal f-leakage instead: kl, hellinger:<order>, chi2
        /// or reverse-kl.
        #[arg(long, conflicts_with_all = ["prior", "alpha", "alpha_sweep"])]
        generator: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Binary datasets of length n with type distance at most m/n.
    Types {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        common: Common,
    },
    /// q-ary datasets of length n with Hamming distance at most m/n.
    Hamming {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Bernoulli(p) source under average Hamming distortion D.
    AvgBinary {
        #[arg(long)]
        p: f64,
        #[arg(long = "D")]
        d: f64,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_REFINE_ITERS)]
        refine_iters: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Measures { joint, common } => {
            let j: Joint = report::load_json(&joint)?;
            let cfg = common.config("1,2,inf")?;
            common.emit(&report::measures_table(&j, &cfg)?.to_csv())
        }
        Command::Capacity { channel, compare, prior, common } => {
            let cfg = common.config("1.5,2,inf")?;
            let w: Channel = report::load_json(&channel)?;
            if let Some(other) = compare {
                let w2: Channel = report::load_json(&other)?;
                let (t, crossings) = report::compare_table(&w, &w2, &cfg)?;
                common.emit(&t.to_csv())?;
                eprint!("{}", report::crossing_report(&crossings));
                return Ok(());
            }
            let prior: Option<Dist> = prior.map(|p| report::load_json(&p)).transpose()?;
            let r = report::capacity_table(&w, prior.as_ref(), &cfg)?;
            for warning in &r.warnings {
                eprintln!("warning: {warning}");
            }
            common.emit(&r.table.to_csv())?;
            r.unconverged.map_or(Ok(()), Err)
        }
        Command::Strategy { posterior, common } => {
            let post: Channel = report::load_json(&posterior)?;
            let cfg = common.config("1,2,inf")?;
            common.emit(&report::strategy_table(&post, &cfg)?.to_csv())
        }
        Command::Put { mode } => match mode {
            PutMode::Hard { spec, prior, generator, common } => {
                let s: DistortionSpec = report::load_json(&spec)?;
                if let Some(g) = generator {
                    let cfg = common.config("2")?;
                    let (v, summary) = report::put_hard_f_report(&s, &report::parse_generator(&g)?, &cfg)?;
                    eprintln!("{summary}");
                    return common.emit(&json_text(&v));
                }
                let prior: Option<Dist> = prior.map(|p| report::load_json(&p)).transpose()?;
                let cfg = common.config("2")?;
                let mut out = Vec::new();
                for &a in &cfg.alphas {
                    let (v, summary) = report::put_hard_report(&s, prior.as_ref(), a, &cfg)?;
                    eprintln!("{summary}");
                    out.push(v);
                }
                let v = if out.len() == 1 { out.remove(0) } else { serde_json::Value::from(out) };
                common.emit(&json_text(&v))
            }
            PutMode::Types { n, m, common } => {
                let cfg = common.config("2")?;
                let (v, summary) = report::put_types_report(n, m, &cfg)?;
                eprintln!("{summary}");
                common.emit(&json_text(&v))
            }
            PutMode::Hamming { n, m, q, common } => {
                let cfg = common.config("2")?;
                let (v, summary) = report::put_hamming_report(n, m, q, &cfg)?;
                eprintln!("{summary}");
                common.emit(&json_text(&v))
            }
            PutMode::AvgBinary { p, d, grid, refine_iters, common } => {
                let cfg = common.config("1.001:4:0.25")?;
                common.emit(&report::avg_binary_table(p, d, grid, refine_iters, &cfg)?.to_csv())
            }
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
