//! `hemicube`: build generalized hemicubic codes, decode syndromes and run
//! experiments.
//!
//! Exit codes: 0 ok, 1 usage or configuration error, 2 invalid syndrome,
//! 3 search guard exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hemicube_core::harness::{self, Side};
use hemicube_core::quotient::parse_descriptor;
use hemicube_core::{decoder, f2la, formats, ClassicalCode, CodeInstance, Error};

#[derive(Parser, Debug)]
#[command(
    name = "hemicube",
    version,
    about = "Generalized hemicubic quantum CSS codes"
)]
struct Cli {
    /// Worker threads for experiments (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print timing and extra diagnostics to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CodeArgs {
    /// Cube dimension (length of the classical code).
    #[arg(long)]
    n: Option<usize>,
    /// Face dimension carrying the qubits.
    #[arg(long)]
    p: Option<usize>,
    /// Named classical code; only `rep` is known.
    #[arg(long, conflicts_with_all = ["gens", "code_file"])]
    code: Option<String>,
    /// Generator rows of the classical code, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "code_file")]
    gens: Option<Vec<String>>,
    /// Code descriptor file: `rep:n`, or `n k p` followed by k generator lines.
    #[arg(long)]
    code_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the parity checks; print N, k and the distance.
    Build {
        #[command(flatten)]
        code: CodeArgs,
        /// Directory receiving `hx`, `hz` and `qubits`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print code parameters, optionally confirmed by a brute-force ladder.
    Params {
        #[command(flatten)]
        code: CodeArgs,
        /// Scan all chains up to this weight for logical operators.
        #[arg(long)]
        ladder: Option<usize>,
    },
    /// Emit explicit logical operators, one chain per line.
    Logicals {
        #[command(flatten)]
        code: CodeArgs,
        /// Directory receiving `x_logicals` and `z_logicals`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode a syndrome file into a correction.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// Two lines: X syndrome then Z syndrome (face literals or `#index`).
        #[arg(long)]
        syndrome: PathBuf,
        /// Correction output (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo decoding trials; writes trial_reports.csv rows.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        /// Error weights, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        weight: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Enumerate every error of each weight instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        /// CSV output (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Worst syndrome-to-coset weight ratios; writes soundness.csv rows.
    Soundness {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        /// Enumeration budget: 2^N for exhaustive, ladder candidates otherwise.
        #[arg(long, default_value_t = 1 << 24)]
        budget: u64,
        /// Require the exhaustive scan (exit 3 when 2^N exceeds the budget).
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Realized filling and cofilling ratios on random inputs.
    MeasureConstants {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    X,
    Z,
    Both,
}

impl SideArg {
    fn sides(self) -> &'static [Side] {
        match self {
            SideArg::X => &[Side::X],
            SideArg::Z => &[Side::Z],
            SideArg::Both => &[Side::X, Side::Z],
        }
    }
}

fn instance(args: &CodeArgs) -> anyhow::Result<CodeInstance> {
    let (code, file_p) = if let Some(path) = &args.code_file {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let d = parse_descriptor(&text)?;
        (d.code, d.p)
    } else if let Some(gens) = &args.gens {
        let rows: Vec<&str> = gens.iter().map(String::as_str).collect();
        (ClassicalCode::from_generator_strings(&rows)?, None)
    } else {
        match args.code.as_deref() {
            Some("rep") | None => {
                let n = args
                    .n
                    .ok_or_else(|| anyhow!("--n is required for the repetition code"))?;
                (ClassicalCode::repetition(n)?, None)
            }
            Some(other) => bail!("unknown code {other:?}; use rep, --gens or --code-file"),
        }
    };
    if let Some(n) = args.n {
        if n != code.length() {
            bail!("--n {n} does not match the code length {}", code.length());
        }
    }
    let p = match (args.p, file_p) {
        (Some(p), Some(q)) if p != q => bail!("--p {p} contradicts p = {q} in the code file"),
        (Some(p), _) | (None, Some(p)) => p,
        (None, None) => bail!("--p is required"),
    };
    Ok(CodeInstance::new(code, p)?)
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(dir: &Path, name: &str, text: &str) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let verbose = cli.verbose;
    match cli.command {
        Command::Build { code, out } => {
            let ci = instance(&code)?;
            let (_, _, d) = ci.distance_formula();
            println!("N={} k={} d={}", ci.num_qubits(), ci.dimension(), d);
            if let Some(dir) = out {
                write_file(&dir, "hx", &formats::write_sparse(ci.hx()))?;
                write_file(&dir, "hz", &formats::write_sparse(ci.hz()))?;
                write_file(&dir, "qubits", &formats::qubit_map(&ci))?;
            }
        }
        Command::Params { code, ladder } => {
            let ci = instance(&code)?;
            let (dx, dz, d) = ci.distance_formula();
            println!("instance={}", harness::instance_label(&ci));
            println!(
                "n={} k_code={} d_code={} p={}",
                ci.n(),
                ci.qc().k(),
                ci.code().min_distance(),
                ci.p()
            );
            println!("N={} k={}", ci.num_qubits(), ci.dimension());
            println!("x_checks={} z_checks={}", ci.hx().rows(), ci.hz().rows());
            println!("rank_hx={} rank_hz={}", ci.rank_hx(), ci.rank_hz());
            println!(
                "max_row_weight_hx={} max_row_weight_hz={}",
                ci.hx().max_row_weight(),
                ci.hz().max_row_weight()
            );
            println!("d_x={dx} d_z={dz} d={d}");
            if let Ok(r) = decoder::guaranteed_radius(&ci) {
                println!("radius={r}");
            }
            if let Some(cap) = ladder {
                let (fx, fz) = harness::distance_ladder(&ci, cap)?;
                let show = |v: Option<usize>| v.map_or(format!(">{cap}"), |w| w.to_string());
                println!(
                    "ladder_cap={cap} found_d_x={} found_d_z={}",
                    show(fx),
                    show(fz)
                );
            }
        }
        Command::Logicals { code, out } => {
            let ci = instance(&code)?;
            let set = ci.logical_basis()?;
            let x = formats::write_chains(&set.x_logicals);
            let z = formats::write_chains(&set.z_logicals);
            match out {
                Some(dir) => {
                    write_file(&dir, "x_logicals", &x)?;
                    write_file(&dir, "z_logicals", &z)?;
                    println!(
                        "k={} pairing_rank={}",
                        set.x_logicals.len(),
                        f2la::rank(&set.pairing_matrix())
                    );
                }
                None => {
                    for l in x.lines() {
                        println!("X {l}");
                    }
                    for l in z.lines() {
                        println!("Z {l}");
                    }
                }
            }
        }
        Command::Decode {
            code,
            syndrome,
            out,
        } => {
            let ci = instance(&code)?;
            let text = fs::read_to_string(&syndrome)
                .with_context(|| format!("reading {}", syndrome.display()))?;
            let s = formats::parse_syndrome(&ci, &text)?;
            let start = Instant::now();
            let c = decoder::decode(&ci, &s)?;
            let elapsed = start.elapsed();
            emit(out.as_deref(), &formats::write_correction(&ci, &c)?)?;
            eprintln!(
                "decoded |sigma_x|={} |sigma_z|={} -> |e_x|={} |e_z|={} in {:.3} ms",
                s.sigma_x.weight(),
                s.sigma_z.weight(),
                c.e_x.weight(),
                c.e_z.weight(),
                elapsed.as_secs_f64() * 1e3
            );
        }
        Command::Simulate {
            code,
            weight,
            trials,
            seed,
            exhaustive,
            out,
        } => {
            let ci = instance(&code)?;
            let mut reports = Vec::new();
            for w in weight {
                let r = if exhaustive {
                    harness::run_exhaustive(&ci, w)?
                } else {
                    harness::run_trials(&ci, w, trials, seed)?
                };
                if verbose > 0 {
                    eprintln!(
                        "weight {w}: {}/{} succeeded, {} invalid, {:.3} s",
                        r.successes,
                        r.trials,
                        r.invalid_syndromes,
                        r.wall_time.as_secs_f64()
                    );
                }
                reports.push(r);
            }
            emit(out.as_deref(), &formats::trial_csv(&reports))?;
        }
        Command::Soundness {
            code,
            side,
            budget,
            exhaustive,
            samples,
            seed,
            out,
        } => {
            let ci = instance(&code)?;
            let mut reports = Vec::new();
            for &s in side.sides() {
                let r = if exhaustive {
                    harness::soundness_exhaustive(&ci, s, budget)?
                } else if ci.num_qubits() < 40 && 1u64 << ci.num_qubits() <= budget {
                    harness::soundness_exhaustive(&ci, s, budget)?
                } else {
                    harness::soundness_sampled(&ci, s, samples, budget, seed)?
                };
                reports.push(r);
            }
            emit(out.as_deref(), &formats::soundness_csv(&reports))?;
        }
        Command::MeasureConstants {
            code,
            samples,
            seed,
        } => {
            let ci = instance(&code)?;
            let r = harness::measure_constants(&ci, samples, seed)?;
            println!("instance={} samples={}", r.instance, r.samples);
            let mut violated = false;
            for (name, stats, bound) in [
                ("fill", &r.fill, r.fill_bound),
                ("cofill", &r.cofill, r.cofill_bound),
            ] {
                let max = stats.max_ratio().map_or("-".into(), |m| m.to_string());
                let bound = bound.map_or("-".into(), |b| b.to_string());
                println!(
                    "{name}: count={} max={max} bound={bound} violations={} mismatches={}",
                    stats.count, stats.violations, stats.mismatches
                );
                for (ratio, count) in &stats.histogram {
                    println!("  {name} {ratio} {count}");
                }
                violated |= stats.violations > 0 || stats.mismatches > 0;
            }
            if violated {
                bail!("filling bound or syndrome reproduction violated");
            }
        }
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::InvalidSyndrome(_)) => 2,
        Some(Error::TooLarge(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let threads = cli.threads.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
