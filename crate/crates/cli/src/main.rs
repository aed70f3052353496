//! Command-line front end: pack instances, compare algorithms, generate
//! adversarial families, time the packer, and verify solutions.
//!
//! Exit codes: 0 success, 1 failed verification, 2 bad input or parameters,
//! 3 internal invariant violation.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rangepack::baselines::{bfd, ffd};
use rangepack::generators::{gen_uniform, FamilySpec, DEFAULT_CAPACITY};
use rangepack::io::{
    parse_instance, serialize_instance, write_results, ResultFormat, ResultRecord,
};
use rangepack::oracle::{lower_bound, optimal_bins, OracleLimits};
use rangepack::ranger::{pack, ProbeStrategy};
use rangepack::{batch, validate_solution, Instance, Solution};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "rangepack",
    version,
    about = "Bin packing by decile ranges and complementary matching"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pack one instance file and print the bins
    Pack {
        /// Instance file (see README for the format)
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Ranger)]
        algo: Algo,
        #[arg(long, value_enum, default_value_t = StrategyArg::Random)]
        strategy: StrategyArg,
        /// Seed for the random strategy
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = PackFormat::Human)]
        format: PackFormat,
    },
    /// Run several algorithms on one instance and tabulate the results
    Compare {
        /// Instance file; omit when using --family
        input: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        /// Algorithms to run
        #[arg(long, value_enum, value_delimiter = ',',
              default_values_t = [Algo::Ranger, Algo::Ffd, Algo::Bfd])]
        algos: Vec<Algo>,
        /// Solve exactly when the instance has at most this many items
        #[arg(long, default_value_t = 16)]
        oracle_max_n: usize,
        /// Seeds for the ranger's random strategy, one run each
        #[arg(long, value_delimiter = ',', default_values_t = [0])]
        seeds: Vec<u64>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Random)]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Generate an instance file from a parameterized family
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output path for the instance text
        #[arg(long)]
        out: PathBuf,
    },
    /// Time the packer across instance sizes (excluding parsing)
    Bench {
        #[arg(long, value_enum, default_value_t = BenchFamily::Uniform)]
        family: BenchFamily,
        /// Item counts to time, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Repeats per size; the median is reported
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value_t = 1)]
        lo: u64,
        /// Upper size bound; defaults to the capacity
        #[arg(long)]
        hi: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_CAPACITY)]
        capacity: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Random)]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value_t = TableFormat::Human)]
        format: TableFormat,
    },
    /// Validate a solution file against its instance
    Verify {
        /// Instance file
        instance: PathBuf,
        /// Solution as JSON, as printed by `pack --format json`
        solution: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Ranger,
    Ffd,
    Bfd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Random,
    PopLast,
    PopFirst,
}

impl StrategyArg {
    fn to_strategy(self, seed: u64) -> ProbeStrategy {
        match self {
            StrategyArg::Random => ProbeStrategy::SeededRandom(seed),
            StrategyArg::PopLast => ProbeStrategy::PopLast,
            StrategyArg::PopFirst => ProbeStrategy::PopFirst,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PackFormat {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Human,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Complementary,
    Range,
    Triplets,
    Uniform,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchFamily {
    Uniform,
}

#[derive(Args)]
struct FamilyArgs {
    /// Instance family
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Pair count (complementary family)
    #[arg(long)]
    k: Option<usize>,
    /// Decile of the large items, 5..=9 (complementary family)
    #[arg(long, default_value_t = 6)]
    m_decile: u8,
    /// Size spread inside the decile, integer units (complementary family)
    #[arg(long, default_value_t = 1_000)]
    delta: u64,
    /// Item count (range and uniform families)
    #[arg(long)]
    n: Option<usize>,
    /// Decile to draw from, 0..=9 (range family)
    #[arg(long, default_value_t = 3)]
    decile: u8,
    /// Triple count (triplet family)
    #[arg(long)]
    m: Option<usize>,
    /// Lower size bound (uniform family)
    #[arg(long, default_value_t = 1)]
    lo: u64,
    /// Upper size bound; defaults to the capacity (uniform family)
    #[arg(long)]
    hi: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_CAPACITY)]
    capacity: u64,
    /// Seed for the generator's randomness
    #[arg(long, default_value_t = 0)]
    gen_seed: u64,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Pack {
            input,
            algo,
            strategy,
            seed,
            format,
        } => cmd_pack(&input, algo, strategy, seed, format),
        Command::Compare {
            input,
            family,
            algos,
            oracle_max_n,
            seeds,
            strategy,
            format,
        } => cmd_compare(
            input.as_deref(),
            &family,
            &algos,
            oracle_max_n,
            &seeds,
            strategy,
            format,
        ),
        Command::Gen { family, out } => cmd_gen(&family, &out),
        Command::Bench {
            family: _,
            sizes,
            repeats,
            lo,
            hi,
            capacity,
            seed,
            strategy,
            format,
        } => cmd_bench(&sizes, repeats, lo, hi, capacity, seed, strategy, format),
        Command::Verify { instance, solution } => cmd_verify(&instance, &solution),
    }
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::input(format!("{}: {err}", path.display())))?;
    let instance = parse_instance(&text)
        .map_err(|err| CliError::input(format!("{}: {err}", path.display())))?;
    if instance.name().is_some() {
        return Ok(instance);
    }
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "unnamed".to_string());
    Ok(instance.with_name(stem))
}

fn run_algo(instance: &Instance, algo: Algo, strategy: ProbeStrategy) -> Solution {
    match algo {
        Algo::Ranger => pack(instance, strategy),
        Algo::Ffd => ffd(instance),
        Algo::Bfd => bfd(instance),
    }
}

fn checked_solution(instance: &Instance, solution: Solution) -> Result<Solution, CliError> {
    let report = validate_solution(instance, &solution);
    if report.ok {
        Ok(solution)
    } else {
        let detail: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        Err(CliError::internal(format!(
            "algorithm produced an invalid packing: {}",
            detail.join("; ")
        )))
    }
}

fn cmd_pack(
    input: &Path,
    algo: Algo,
    strategy: StrategyArg,
    seed: u64,
    format: PackFormat,
) -> Result<u8, CliError> {
    let instance = load_instance(input)?;
    let strategy = strategy.to_strategy(seed);
    let solution = checked_solution(&instance, run_algo(&instance, algo, strategy))?;

    match format {
        PackFormat::Human => {
            println!(
                "instance {}: n={}, capacity={}",
                instance.name().unwrap_or("unnamed"),
                instance.len(),
                instance.capacity()
            );
            match algo {
                Algo::Ranger => println!(
                    "algorithm: {} (strategy {}{})",
                    solution.algorithm,
                    strategy.label(),
                    strategy
                        .seed()
                        .map(|s| format!(", seed {s}"))
                        .unwrap_or_default()
                ),
                _ => println!("algorithm: {}", solution.algorithm),
            }
            println!("bins: {}", solution.bin_count());
            for (idx, bin) in solution.bins.iter().enumerate() {
                println!("  bin {idx}: load {} items {:?}", bin.load, bin.members);
            }
            println!("total slack: {}", solution.stats.total_slack);
            if let Some(fill) = solution.stats.min_fill() {
                println!("min fill: {fill:.4}");
            }
        }
        PackFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&solution).expect("solutions serialize")
            );
        }
        PackFormat::Csv => {
            println!("bin,load,items");
            for (idx, bin) in solution.bins.iter().enumerate() {
                let items: Vec<String> = bin.members.iter().map(|id| id.to_string()).collect();
                println!("{idx},{},{}", bin.load, items.join(" "));
            }
        }
    }
    Ok(0)
}

/// One comparison cell: an algorithm run with a fixed strategy.
struct Cell {
    algorithm: String,
    algo: Algo,
    strategy: ProbeStrategy,
    seed: Option<u64>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_compare(
    input: Option<&Path>,
    family: &FamilyArgs,
    algos: &[Algo],
    oracle_max_n: usize,
    seeds: &[u64],
    strategy: StrategyArg,
    format: TableFormat,
) -> Result<u8, CliError> {
    let (instance, declared) = match (input, family.family) {
        (Some(path), None) => (load_instance(path)?, None),
        (None, Some(_)) => build_family(family)?,
        (Some(_), Some(_)) => {
            return Err(CliError::input(
                "give either an instance file or --family, not both",
            ))
        }
        (None, None) => {
            return Err(CliError::input(
                "give an instance file or --family to compare on",
            ))
        }
    };

    let optimum = if instance.len() <= oracle_max_n {
        optimal_bins(
            &instance,
            OracleLimits {
                max_items: oracle_max_n,
                ..OracleLimits::default()
            },
        )
        .bins()
        .or(declared)
    } else {
        declared
    };
    let bound = lower_bound(&instance);

    let mut cells = Vec::new();
    for &algo in algos {
        match algo {
            Algo::Ranger => match strategy {
                StrategyArg::Random => {
                    for &seed in seeds {
                        cells.push(Cell {
                            algorithm: "ranger".to_string(),
                            algo,
                            strategy: ProbeStrategy::SeededRandom(seed),
                            seed: Some(seed),
                        });
                    }
                }
                _ => {
                    let strategy = strategy.to_strategy(0);
                    cells.push(Cell {
                        algorithm: format!("ranger:{}", strategy.label()),
                        algo,
                        strategy,
                        seed: None,
                    });
                }
            },
            Algo::Ffd => cells.push(Cell {
                algorithm: "ffd".to_string(),
                algo,
                strategy: ProbeStrategy::PopLast,
                seed: None,
            }),
            Algo::Bfd => cells.push(Cell {
                algorithm: "bfd".to_string(),
                algo,
                strategy: ProbeStrategy::PopLast,
                seed: None,
            }),
        }
    }

    // Cells are independent; records keep the order of the cell list
    // regardless of execution order.
    let solutions = batch::map(&cells, |cell| {
        let start = Instant::now();
        let solution = run_algo(&instance, cell.algo, cell.strategy);
        (solution, start.elapsed().as_nanos() as u64)
    });

    let mut records = Vec::with_capacity(cells.len());
    for (cell, (solution, elapsed_ns)) in cells.iter().zip(solutions) {
        let solution = checked_solution(&instance, solution)?;
        records.push(ResultRecord {
            instance: instance.name().unwrap_or("unnamed").to_string(),
            algorithm: cell.algorithm.clone(),
            seed: cell.seed,
            bins: solution.bin_count(),
            lower_bound: bound,
            optimum,
            ratio: optimum.map(|o| solution.bin_count() as f64 / o as f64),
            elapsed_ns,
            n: instance.len(),
        });
    }

    match format {
        TableFormat::Csv => print!("{}", write_results(&records, ResultFormat::Csv)),
        TableFormat::Json => println!("{}", write_results(&records, ResultFormat::Json)),
        TableFormat::Human => {
            println!(
                "instance {}: n={}, capacity={}, lower bound {}, optimum {}",
                instance.name().unwrap_or("unnamed"),
                instance.len(),
                instance.capacity(),
                bound,
                optimum
                    .map(|o| o.to_string())
                    .unwrap_or_else(|| "unknown".to_string()),
            );
            for r in &records {
                let ratio = r
                    .ratio
                    .map(|x| format!("{x:.3}"))
                    .unwrap_or_else(|| "-".to_string());
                let seed = r.seed.map(|s| format!(" seed {s}")).unwrap_or_default();
                println!(
                    "  {:<16} {:>4} bins  ratio {:>6}  {:>10} ns{}",
                    r.algorithm, r.bins, ratio, r.elapsed_ns, seed
                );
            }
        }
    }
    Ok(0)
}

fn build_family(args: &FamilyArgs) -> Result<(Instance, Option<usize>), CliError> {
    let family = args
        .family
        .ok_or_else(|| CliError::input("--family is required"))?;
    let spec = match family {
        Family::Complementary => FamilySpec::ComplementaryPair {
            k: args
                .k
                .ok_or_else(|| CliError::input("--k is required for the complementary family"))?,
            m_decile: args.m_decile,
            delta: args.delta,
            capacity: args.capacity,
        },
        Family::Range => FamilySpec::RangeFamily {
            n: args
                .n
                .ok_or_else(|| CliError::input("--n is required for the range family"))?,
            decile: args.decile,
            seed: args.gen_seed,
            capacity: args.capacity,
        },
        Family::Triplets => FamilySpec::Triplet {
            m: args
                .m
                .ok_or_else(|| CliError::input("--m is required for the triplet family"))?,
            seed: args.gen_seed,
            capacity: args.capacity,
        },
        Family::Uniform => FamilySpec::Uniform {
            n: args
                .n
                .ok_or_else(|| CliError::input("--n is required for the uniform family"))?,
            lo: args.lo,
            hi: args.hi.unwrap_or(args.capacity),
            seed: args.gen_seed,
            capacity: args.capacity,
        },
    };
    spec.generate()
        .map_err(|err| CliError::input(err.to_string()))
}

fn cmd_gen(family: &FamilyArgs, out: &Path) -> Result<u8, CliError> {
    let (instance, declared) = build_family(family)?;
    std::fs::write(out, serialize_instance(&instance))
        .map_err(|err| CliError::input(format!("{}: {err}", out.display())))?;
    println!(
        "wrote {} (n={}, capacity={})",
        out.display(),
        instance.len(),
        instance.capacity()
    );
    if let Some(optimum) = declared {
        println!("declared optimum: {optimum}");
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    sizes: &[usize],
    repeats: usize,
    lo: u64,
    hi: Option<u64>,
    capacity: u64,
    seed: u64,
    strategy: StrategyArg,
    format: TableFormat,
) -> Result<u8, CliError> {
    if repeats == 0 {
        return Err(CliError::input("--repeats must be at least 1"));
    }
    let hi = hi.unwrap_or(capacity);
    let strategy = strategy.to_strategy(seed);

    struct Row {
        n: usize,
        median_ns: u64,
        ns_per_item: f64,
        ratio: Option<f64>,
        bins: usize,
    }

    let mut rows: Vec<Row> = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let instance = gen_uniform(n, lo, hi, seed, capacity)
            .map_err(|err| CliError::input(err.to_string()))?;
        let mut samples = Vec::with_capacity(repeats);
        let mut bins = 0;
        for _ in 0..repeats {
            let start = Instant::now();
            let solution = pack(&instance, strategy);
            samples.push(start.elapsed().as_nanos() as u64);
            bins = solution.bin_count();
        }
        samples.sort_unstable();
        let median_ns = samples[samples.len() / 2];
        let ratio = rows
            .last()
            .map(|prev: &Row| median_ns as f64 / prev.median_ns.max(1) as f64);
        rows.push(Row {
            n,
            median_ns,
            ns_per_item: median_ns as f64 / n.max(1) as f64,
            ratio,
            bins,
        });
    }

    match format {
        TableFormat::Csv | TableFormat::Json => {
            println!("n,median_ns,ns_per_item,ratio_vs_prev,bins");
            for row in &rows {
                println!(
                    "{},{},{:.2},{},{}",
                    row.n,
                    row.median_ns,
                    row.ns_per_item,
                    row.ratio.map(|x| format!("{x:.4}")).unwrap_or_default(),
                    row.bins,
                );
            }
        }
        TableFormat::Human => {
            println!(
                "{:>10} {:>14} {:>12} {:>10} {:>10}",
                "n", "median_ns", "ns/item", "x prev", "bins"
            );
            for row in &rows {
                println!(
                    "{:>10} {:>14} {:>12.2} {:>10} {:>10}",
                    row.n,
                    row.median_ns,
                    row.ns_per_item,
                    row.ratio
                        .map(|x| format!("{x:.2}"))
                        .unwrap_or_else(|| "-".to_string()),
                    row.bins,
                );
            }
        }
    }
    Ok(0)
}

fn cmd_verify(instance_path: &Path, solution_path: &Path) -> Result<u8, CliError> {
    let instance = load_instance(instance_path)?;
    let text = std::fs::read_to_string(solution_path)
        .map_err(|err| CliError::input(format!("{}: {err}", solution_path.display())))?;
    let solution: Solution = serde_json::from_str(&text)
        .map_err(|err| CliError::input(format!("{}: {err}", solution_path.display())))?;

    let report = validate_solution(&instance, &solution);
    if report.ok {
        println!(
            "ok: {} bins, all {} items packed exactly once",
            solution.bin_count(),
            instance.len()
        );
        Ok(0)
    } else {
        for violation in &report.violations {
            println!("violation: {violation}");
        }
        Ok(1)
    }
}
