//! `gm` — decide discreteness, non-discreteness, or non-freeness of a
//! two-generator subgroup of PSL(2, ℝ) with the Gilman–Maskit algorithm.

mod document;
mod input;
mod render;

use std::io::Read as _;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gm_core::algorithm::{self, Config};
use gm_core::oracle::{self, InstanceClass, InstanceSpec};
use gm_core::Error;
use rayon::prelude::*;

use input::{Model, PairInput};

/// The Sanov pair: the classical free, discrete example.
const DEMO_INPUT: &str = r#"{"model":"uhp","A":[[1,2],[0,1]],"B":[[1,0],[2,1]]}"#;

/// A hyperbolic pair with disjoint axes (0↔∞ and 1↔3), used by `render
/// --seed-demo` since the Sanov pair has no axes to draw.
const RENDER_DEMO_INPUT: &str =
    r#"{"model":"uhp","A":[[2,0],[0,0.5]],"B":[[2.75,-2.25],[0.75,-0.25]]}"#;

#[derive(Parser)]
#[command(name = "gm", version, about = "Discreteness of two-generator subgroups of PSL(2,R)")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Numeric tolerance for classifications and stopping tests
    /// (falls back to the GM_TOLERANCE environment variable)
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Tolerance for ratio comparisons near integer boundaries
    #[arg(long, global = true)]
    ratio_tolerance: Option<f64>,
    /// Cap on the total number of linear steps before giving up
    #[arg(long, global = true)]
    max_steps: Option<usize>,
    /// Model the input matrices are written in, unless the document says
    #[arg(long, global = true, value_enum, default_value_t = Model::Uhp)]
    model: Model,
    /// Include the per-step trace in the output document
    #[arg(long, global = true)]
    trace: bool,
    /// Also write an SVG of the configuration to this path
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the algorithm on one generator pair
    Run {
        /// Inline JSON, a file path, or "-" for stdin
        input: Option<String>,
        /// Use the bundled demo pair instead of reading input
        #[arg(long)]
        seed_demo: bool,
    },
    /// Run on a JSON-lines stream, one pair per line
    Batch {
        /// File path or "-" for stdin
        input: Option<String>,
        /// Number of worker threads
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
    },
    /// Draw the disc-model configuration as SVG
    Render {
        /// Inline JSON, a file path, or "-" for stdin
        input: Option<String>,
        /// Use the bundled demo pair instead of reading input
        #[arg(long)]
        seed_demo: bool,
    },
    /// Reference implementations for cross-checking
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleClass {
    Hh,
    Hp,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Compare closed-form step counts against the step-by-step oracle
    Compare {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        class: OracleClass,
    },
    /// Enumerate nontrivial reduced words up to a length
    Words {
        #[arg(long)]
        max_len: usize,
    },
}

fn config(opts: &GlobalOpts) -> Result<Config> {
    let mut cfg = Config::default();
    cfg.tolerance = match opts.tolerance {
        Some(t) => t,
        None => match std::env::var("GM_TOLERANCE") {
            Ok(s) => s
                .parse::<f64>()
                .with_context(|| format!("GM_TOLERANCE is not a number: {s:?}"))?,
            Err(_) => cfg.tolerance,
        },
    };
    if let Some(r) = opts.ratio_tolerance {
        cfg.ratio_tolerance = r;
    }
    if let Some(m) = opts.max_steps {
        cfg.max_steps = m;
    }
    if !(cfg.tolerance.is_finite() && cfg.tolerance > 0.0) {
        bail!("tolerance must be a positive number");
    }
    Ok(cfg)
}

/// Inline JSON (starts with '{'), "-" for stdin, or a file path.
fn read_source(arg: Option<&str>, seed_demo: bool) -> Result<String> {
    if seed_demo {
        return Ok(DEMO_INPUT.to_string());
    }
    let arg = arg.context("missing input: pass inline JSON, a path, \"-\", or --seed-demo")?;
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        return Ok(buf);
    }
    std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
}

fn write_svg(pair: &PairInput, cfg: &Config, path: &PathBuf) -> Result<()> {
    let svg = render::render(pair, cfg)?;
    std::fs::write(path, svg).with_context(|| format!("writing {}", path.display()))
}

fn cmd_run(opts: &GlobalOpts, input: Option<&str>, seed_demo: bool) -> Result<()> {
    let cfg = config(opts)?;
    let json = read_source(input, seed_demo)?;
    let pair = input::parse_input(&json, opts.model)?;
    let verdict = algorithm::run(&pair.a, &pair.b, &cfg)?;
    let doc = document::build(&pair, &verdict, cfg.tolerance, opts.trace);
    println!("{}", serde_json::to_string_pretty(&doc)?);
    if let Some(path) = &opts.svg {
        write_svg(&pair, &cfg, path)?;
    }
    Ok(())
}

/// One batch line to one output line: a verdict document on success, an
/// error record otherwise. Lines never abort the batch.
fn batch_line(line: &str, number: usize, model: Model, cfg: &Config, with_steps: bool) -> String {
    let outcome: Result<String> = (|| {
        let pair = input::parse_input(line, model)?;
        let verdict = algorithm::run(&pair.a, &pair.b, cfg)?;
        let doc = document::build(&pair, &verdict, cfg.tolerance, with_steps);
        Ok(serde_json::to_string(&doc)?)
    })();
    match outcome {
        Ok(doc) => doc,
        Err(e) => serde_json::json!({ "line": number, "error": format!("{e:#}") }).to_string(),
    }
}

fn cmd_batch(opts: &GlobalOpts, input: Option<&str>, parallelism: usize) -> Result<()> {
    let cfg = config(opts)?;
    let text = read_source(input.or(Some("-")), false)?;
    let lines: Vec<(usize, &str)> = text.lines().enumerate().collect();
    let process =
        |(ix, line): &(usize, &str)| batch_line(line, ix + 1, opts.model, &cfg, opts.trace);
    let results: Vec<String> = if parallelism <= 1 {
        lines.iter().map(process).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(parallelism)
            .build()
            .context("building thread pool")?;
        pool.install(|| lines.par_iter().map(process).collect())
    };
    let mut out = String::new();
    for r in &results {
        out.push_str(r);
        out.push('\n');
    }
    print!("{out}");
    Ok(())
}

fn cmd_render(opts: &GlobalOpts, input: Option<&str>, seed_demo: bool) -> Result<()> {
    let cfg = config(opts)?;
    let json = if seed_demo {
        RENDER_DEMO_INPUT.to_string()
    } else {
        read_source(input, false)?
    };
    let pair = input::parse_input(&json, opts.model)?;
    match &opts.svg {
        Some(path) => write_svg(&pair, &cfg, path)?,
        None => print!("{}", render::render(&pair, &cfg)?),
    }
    Ok(())
}

fn cmd_compare(opts: &GlobalOpts, samples: u64, seed: u64, class: OracleClass) -> Result<()> {
    let cfg = config(opts)?;
    let tol = cfg.tolerance;
    let mut agree = 0u64;
    let mut boundary_flagged = 0u64;
    let mut discrepancies = Vec::new();
    for k in 0..samples {
        let spec = match class {
            OracleClass::Hh => InstanceSpec {
                seed: seed.wrapping_add(k),
                class: InstanceClass::HhDisjoint,
                trace_range: (2.1, 30.0),
                separation_range: (0.2, 2.5),
            },
            OracleClass::Hp => InstanceSpec {
                seed: seed.wrapping_add(k),
                class: InstanceClass::Hp,
                trace_range: (2.5, 30.0),
                separation_range: (0.5, 3.0),
            },
        };
        let (a, b) = oracle::random_instance(&spec)?;
        let outcome: Result<Option<(u64, u64)>> = match class {
            OracleClass::Hh => {
                let pair = algorithm::coherently_orient(&a, &b, tol)?;
                let (n, boundary) = algorithm::step_count_hh(&pair.c, &pair.d, &cfg)?;
                if boundary {
                    Ok(None)
                } else {
                    Ok(Some((n, oracle::linear_step_count(&pair.c, &pair.d, tol)?)))
                }
            }
            OracleClass::Hp => {
                let a = a.with_nonneg_trace();
                let b = b.with_nonneg_trace();
                let oracle_n = oracle::linear_step_count(&a, &b, tol)?;
                match algorithm::step_count_hp(&a, &b, &cfg) {
                    Ok(n) => Ok(Some((n, oracle_n))),
                    Err(Error::ZeroStepCount) => Ok(Some((0, oracle_n))),
                    Err(e) => Err(e.into()),
                }
            }
        };
        match outcome? {
            None => {
                boundary_flagged += 1;
                agree += 1;
            }
            Some((n, oracle_n)) => {
                if n == oracle_n {
                    agree += 1;
                } else {
                    discrepancies.push(format!(
                        "sample {k}: formula {n} vs oracle {oracle_n}"
                    ));
                }
            }
        }
    }
    println!("{agree}/{samples} agree ({boundary_flagged} boundary-flagged)");
    if !discrepancies.is_empty() {
        for d in &discrepancies {
            eprintln!("{d}");
        }
        bail!("{} discrepancies", discrepancies.len());
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run { input, seed_demo } => cmd_run(&cli.opts, input.as_deref(), *seed_demo),
        Command::Batch { input, parallelism } => {
            cmd_batch(&cli.opts, input.as_deref(), *parallelism)
        }
        Command::Render { input, seed_demo } => {
            cmd_render(&cli.opts, input.as_deref(), *seed_demo)
        }
        Command::Oracle { cmd } => match cmd {
            OracleCmd::Compare {
                samples,
                seed,
                class,
            } => cmd_compare(&cli.opts, *samples, *seed, *class),
            OracleCmd::Words { max_len } => {
                for w in oracle::enumerate_words(*max_len) {
                    println!("{w}");
                }
                Ok(())
            }
        },
    }
}
