use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use polar_ga::channel::ChannelKind;
use polar_ga::codec::{Algorithm, DecoderConfig};
use polar_ga::construction::construct_code;
use polar_ga::diagnostics::{census_levels, solve_set_boundaries, ExactTree};
use polar_ga::dispersion::{dispersion_limit, DispersionMode, DispersionOutcome, DispersionQuery};
use polar_ga::ga::ebn0_to_noise_variance;
use polar_ga_bench::io::{self as files, CensusRow, CleRow, ConstructionRecord};
use polar_ga_bench::{run_bler, DesignSnr, Method, SimConfig, StopRule};

#[derive(Parser)]
#[command(name = "polar-ga", version, about = "Polar code construction by Gaussian approximation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a code and write it as JSON.
    #[command(allow_negative_numbers = true)]
    Construct {
        /// Polarization level n, N = 2^n.
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ebn0_db: f64,
        /// Rate used to convert Eb/N0 into a noise variance.
        #[arg(long)]
        rate: f64,
        #[arg(long)]
        method: Method,
        /// Construct at this Eb/N0 instead of --ebn0-db.
        #[arg(long)]
        design_snr_db: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count violation and reversal nodes in the code tree.
    #[command(allow_negative_numbers = true)]
    Census {
        #[arg(long)]
        method: Method,
        /// Level range `a..b`, both ends included.
        #[arg(long, value_parser = parse_levels)]
        levels: (u32, u32),
        #[arg(long)]
        ebn0_db: f64,
        #[arg(long)]
        rate: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the violation/reversal boundary points of a scheme.
    Boundaries {
        #[arg(long)]
        method: Method,
    },
    /// Injected-error cumulative logarithmic error over a grid of root means.
    Cle {
        #[arg(long)]
        levels: u32,
        #[arg(long)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long)]
        points: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        methods: Vec<Method>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo block error rate.
    #[command(allow_negative_numbers = true)]
    Simulate {
        #[arg(long)]
        n: u32,
        /// Code dimension; with --crc16 the last 16 of these bits are the CRC.
        #[arg(long)]
        k: usize,
        /// Comma-separated list.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        ebn0_db: Vec<f64>,
        #[arg(long)]
        method: Method,
        #[arg(long, value_enum)]
        decoder: DecoderArg,
        /// List size for scl, maximum list size for adcascl.
        #[arg(long, default_value_t = 8)]
        list_size: usize,
        #[arg(long)]
        crc16: bool,
        #[arg(long, value_enum, default_value_t = ChannelArg::Awgn)]
        channel: ChannelArg,
        #[arg(long, default_value_t = 100)]
        target_errors: u64,
        #[arg(long, default_value_t = 1_000_000)]
        max_trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Construct once at this Eb/N0 instead of at every point.
        #[arg(long)]
        design_snr_db: Option<f64>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Finite-blocklength normal approximation on BI-AWGN.
    #[command(allow_negative_numbers = true)]
    Dispersion {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        epsilon: f64,
        /// Print the maximum rate at this Eb/N0 (rate K/N) instead.
        #[arg(long)]
        ebn0_db: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DecoderArg {
    Sc,
    Scl,
    Adcascl,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    Awgn,
    Rayleigh,
}

fn parse_levels(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let a: u32 = a.trim().parse().map_err(|e| format!("bad level `{a}`: {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("bad level `{b}`: {e}"))?;
    if a == 0 || a > b {
        return Err(format!("need 1 <= a <= b, got {a}..{b}"));
    }
    Ok((a, b))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn scheme_of(method: Method) -> Result<polar_ga::ga::GaScheme> {
    method
        .scheme()
        .with_context(|| format!("method `{method}` has no GA scheme"))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct {
            n,
            k,
            ebn0_db,
            rate,
            method,
            design_snr_db,
            out,
        } => {
            ensure!((1..=24).contains(&n), "--n must be in 1..=24");
            let sigma2 = ebn0_to_noise_variance(design_snr_db.unwrap_or(ebn0_db), rate)?;
            let c = construct_code(&method.construction(), n, k, sigma2)?;
            files::write_construction(output(out.as_deref())?, &ConstructionRecord::new(method, &c))?;
        }
        Command::Census {
            method,
            levels: (lo, hi),
            ebn0_db,
            rate,
            out,
        } => {
            let scheme = scheme_of(method)?;
            let sigma2 = ebn0_to_noise_variance(ebn0_db, rate)?;
            let rows: Vec<CensusRow> = census_levels(&scheme, lo, hi, sigma2)?.iter().map(CensusRow::from).collect();
            if out.is_some() {
                for r in &rows {
                    println!(
                        "n={:<3} pvs={:<8} ({:.3}%)  prs={:<8} ({:.3}%)",
                        r.n,
                        r.mu_pvs,
                        100.0 * r.theta_pvs,
                        r.mu_prs,
                        100.0 * r.theta_prs
                    );
                }
            }
            files::write_csv(output(out.as_deref())?, &rows)?;
        }
        Command::Boundaries { method } => {
            let b = solve_set_boundaries(&scheme_of(method)?)?;
            if b.empty {
                println!("empty");
            } else {
                println!("a1={:.10}", b.prs_upper);
                println!("a2={:.10}", b.pvs_upper);
            }
        }
        Command::Cle {
            levels,
            t_min,
            t_max,
            points,
            methods,
            out,
        } => {
            ensure!(levels <= 20, "--levels must be at most 20");
            ensure!(points >= 1, "--points must be at least 1");
            ensure!(t_min > 0.0 && t_max >= t_min, "need 0 < t-min <= t-max");
            let grid: Vec<f64> = (0..points)
                .map(|i| {
                    if points == 1 {
                        t_min
                    } else {
                        t_min + (t_max - t_min) * i as f64 / (points - 1) as f64
                    }
                })
                .collect();
            let schemes = methods.iter().map(|&m| scheme_of(m)).collect::<Result<Vec<_>>>()?;
            let trees = grid.iter().map(|&t| ExactTree::new(levels, t)).collect::<Result<Vec<_>, _>>()?;
            let mut rows = Vec::with_capacity(grid.len() * methods.len());
            for (&m, scheme) in methods.iter().zip(&schemes) {
                for tree in &trees {
                    let (cle_exact, cle_bound) = tree.injected(scheme)?;
                    rows.push(CleRow {
                        t: tree.root(),
                        method: m.name().to_string(),
                        cle_exact,
                        cle_bound,
                    });
                }
            }
            files::write_csv(output(out.as_deref())?, &rows)?;
        }
        Command::Simulate {
            n,
            k,
            ebn0_db,
            method,
            decoder,
            list_size,
            crc16,
            channel,
            target_errors,
            max_trials,
            seed,
            design_snr_db,
            workers,
            out,
        } => {
            let algorithm = match decoder {
                DecoderArg::Sc => Algorithm::Sc,
                DecoderArg::Scl => Algorithm::Scl { list_size },
                DecoderArg::Adcascl => Algorithm::AdCascl { max_list: list_size },
            };
            let config = SimConfig {
                n,
                k,
                method,
                design: design_snr_db.map_or(DesignSnr::PerPoint, DesignSnr::Fixed),
                decoder: DecoderConfig { algorithm, crc: crc16 },
                channel: match channel {
                    ChannelArg::Awgn => ChannelKind::BiAwgn,
                    ChannelArg::Rayleigh => ChannelKind::Rayleigh,
                },
                ebn0_db,
                stop: StopRule {
                    target_errors,
                    max_trials,
                },
                seed,
            };
            let result = run_bler(&config, workers)?;
            if out.is_some() {
                for p in &result.points {
                    eprintln!(
                        "{:>7.3} dB  trials={:<9} errors={:<6} bler={:.4e}  ({:.1} s)",
                        p.ebn0_db, p.trials, p.block_errors, p.bler, p.wall_time_s
                    );
                }
            }
            files::write_csv(output(out.as_deref())?, &files::sim_rows(&result))?;
        }
        Command::Dispersion { n, k, epsilon, ebn0_db } => {
            ensure!(n <= 40, "--n must be at most 40");
            let blocklength = 1usize << n;
            let mode = match ebn0_db {
                None => DispersionMode::MinEbN0,
                Some(db) => {
                    if k == 0 {
                        bail!("--k must be positive");
                    }
                    DispersionMode::Rate {
                        sigma2: ebn0_to_noise_variance(db, k as f64 / blocklength as f64)?,
                    }
                }
            };
            let query = DispersionQuery {
                blocklength,
                k,
                epsilon,
                mode,
            };
            match dispersion_limit(&query)? {
                DispersionOutcome::MinEbN0Db(db) => println!("{db:.6}"),
                DispersionOutcome::Rate(r) => println!("{r:.6}"),
                DispersionOutcome::NoSolution => println!("no solution"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
