use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use matroid_cost::algorithms::{
    greedy_basis, max_weight_basis_bounded_circ, partition_size, BasisResult, BoundedCircParams,
};
use matroid_cost::bench::{run_bench, summarize, write_csv, BenchConfig, BenchRecord, Task};
use matroid_cost::combinators::TieBrokenWeights;
use matroid_cost::generate::{generate, FamilyKind, GenParams};
use matroid_cost::hard::{
    count_partition_witness_partitions, count_rank_witness_sets, is_partition_witness,
    is_rank_witness, partition_witness_count_bound, rank_witness_count_bound, HardParams, Secret,
};
use matroid_cost::oracle::{format_trace, SharedMatroid};
use matroid_cost::verify::{
    bf_circumference, bf_max_weight_basis, bf_partition_size, bf_rank, check_matroid_axioms, AxiomVerdict,
};
use matroid_cost::{CostLedger, CostModel, Descriptor, Error, Matroid, MeteredOracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "matroid-cost", version, about = "Matroid algorithms under a size-sensitive query cost")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance descriptor
    Gen(GenArgs),
    /// Compute a basis
    Basis(BasisArgs),
    /// Compute the rank with the greedy scan
    Rank(SolveArgs),
    /// Compute the partition size
    Partition(SolveArgs),
    /// Cross-check an instance against brute force
    Verify(VerifyArgs),
    /// Run a scaling benchmark and fit the log-log slope
    Bench(BenchArgs),
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long)]
    family: FamilyKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    vertices: Option<usize>,
    #[arg(long)]
    edges: Option<usize>,
    #[arg(long)]
    positions: Option<usize>,
    #[arg(long)]
    parts: Option<usize>,
    #[arg(long)]
    max_capacity: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    alpha: Option<usize>,
    /// Truncated sibling of a hard family; a fair coin when omitted
    #[arg(long)]
    truncated: Option<bool>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value = "linear")]
    cost_model: CostModel,
    /// Append the run as a CSV row to this file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write "size,verdict" lines for every query
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Alg {
    Greedy,
    BoundedCirc,
}

#[derive(clap::Args)]
struct BasisArgs {
    #[command(flatten)]
    solve: SolveArgs,
    #[arg(long, value_enum, default_value = "greedy")]
    alg: Alg,
    /// Circumference bound for bounded-circ
    #[arg(long, default_value_t = 2)]
    c: u32,
    /// JSON array of element weights
    #[arg(long, conflicts_with = "random_weights")]
    weights: Option<PathBuf>,
    /// Draw uniform weights in [0, 1) from this seed
    #[arg(long)]
    random_weights: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Axioms,
    Rank,
    Partition,
    Circumference,
    WitnessCounts,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "axioms,rank,partition")]
    checks: Vec<Check>,
    /// Refuse instances with more elements than this
    #[arg(long, default_value_t = 14)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(clap::Args)]
struct BenchArgs {
    #[arg(long)]
    task: Task,
    #[arg(long)]
    family: FamilyKind,
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "linear")]
    cost_model: CostModel,
    #[arg(long, default_value_t = 2)]
    c: u32,
    /// CSV output; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_instance(path: &Path) -> Result<Descriptor> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Descriptor::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let params = GenParams {
        n: args.n,
        vertices: args.vertices,
        edges: args.edges,
        positions: args.positions,
        parts: args.parts,
        max_capacity: args.max_capacity,
        r: args.r,
        m: args.m,
        epsilon: args.epsilon,
        alpha: args.alpha,
        truncated: args.truncated,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let descriptor = generate(args.family, &params, &mut rng)?;
    write_output(args.out.as_deref(), &format!("{}\n", descriptor.to_json()))
}

struct Run {
    descriptor: Descriptor,
    oracle: MeteredOracle<SharedMatroid>,
    started: Instant,
}

impl Run {
    fn start(args: &SolveArgs) -> Result<Self> {
        let descriptor = load_instance(&args.instance)?;
        let mut oracle = MeteredOracle::new(descriptor.build()?, args.cost_model.clone())
            .with_useful_threshold(descriptor.useful_threshold());
        if args.trace.is_some() {
            oracle = oracle.with_trace();
        }
        Ok(Self {
            descriptor,
            oracle,
            started: Instant::now(),
        })
    }

    fn finish(self, args: &SolveArgs, task: &str, answer: String) -> Result<()> {
        let wall_ms = self.started.elapsed().as_secs_f64() * 1e3;
        if let (Some(path), Some(trace)) = (&args.trace, self.oracle.trace()) {
            fs::write(path, format_trace(trace)).with_context(|| format!("writing {}", path.display()))?;
        }
        if let Some(path) = &args.out {
            let ledger = self.oracle.ledger_snapshot();
            let record = BenchRecord {
                task: task.to_string(),
                family: self.descriptor.family_name().to_string(),
                n: self.oracle.matroid().ground_size(),
                seed: args.seed,
                cost_model: args.cost_model.to_string(),
                total_cost: ledger.total_cost.to_string(),
                query_count: ledger.query_count,
                max_query_size: ledger.max_query_size,
                useful_query_count: self.oracle.useful_query_count(),
                answer,
                wall_ms,
                cost: ledger.total_cost.as_f64(),
            };
            append_record(path, &record)?;
        }
        Ok(())
    }
}

fn append_record(path: &Path, record: &BenchRecord) -> Result<()> {
    let fresh = !path.exists() || fs::metadata(path)?.len() == 0;
    let mut buffer = Vec::new();
    write_csv(&mut buffer, std::slice::from_ref(record))?;
    let text = String::from_utf8(buffer)?;
    let body = if fresh {
        text.as_str()
    } else {
        text.split_once('\n').map_or("", |(_, rest)| rest)
    };
    let mut file = fs::OpenOptions::new().create(true).append(true).open(path)?;
    file.write_all(body.as_bytes())?;
    Ok(())
}

fn ledger_fields(ledger: &CostLedger) -> String {
    format!("total_cost={} queries={}", ledger.total_cost, ledger.query_count)
}

fn join(set: &[usize]) -> String {
    set.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_rank(args: SolveArgs) -> Result<()> {
    let mut run = Run::start(&args)?;
    let order: Vec<usize> = (0..run.oracle.matroid().ground_size()).collect();
    let result = greedy_basis(&mut run.oracle, &order)?;
    println!("rank={} {}", result.rank, ledger_fields(&result.ledger));
    run.finish(&args, "rank", format!("rank={}", result.rank))
}

fn load_weights(args: &BasisArgs, n: usize) -> Result<TieBrokenWeights> {
    let weights: Vec<f64> = match (&args.weights, args.random_weights) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing weights in {}", path.display()))?
        }
        (None, Some(seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| rng.random::<f64>()).collect()
        }
        (None, None) => vec![1.0; n],
    };
    if weights.len() != n {
        bail!("{} weights for a ground set of size {n}", weights.len());
    }
    Ok(TieBrokenWeights::new(weights)?)
}

fn cmd_basis(args: BasisArgs) -> Result<()> {
    let mut run = Run::start(&args.solve)?;
    let n = run.oracle.matroid().ground_size();
    let weights = load_weights(&args, n)?;
    let (task, result): (&str, BasisResult) = match args.alg {
        Alg::Greedy => {
            let order = weights.order_elements(&(0..n).collect::<Vec<_>>());
            ("greedy-basis", greedy_basis(&mut run.oracle, &order)?)
        }
        Alg::BoundedCirc => {
            let params = BoundedCircParams::new(args.c, args.solve.seed)?;
            let result = max_weight_basis_bounded_circ(&mut run.oracle, &weights, params)?;
            ("bounded-circ-basis", result)
        }
    };
    println!(
        "basis={} rank={} weight={} {}",
        join(&result.basis),
        result.rank,
        weights.total(&result.basis),
        ledger_fields(&result.ledger)
    );
    let answer = format!("rank={};weight={:.6}", result.rank, weights.total(&result.basis));
    run.finish(&args.solve, task, answer)
}

fn cmd_partition(args: SolveArgs) -> Result<()> {
    let mut run = Run::start(&args)?;
    let result = match partition_size(&mut run.oracle) {
        Err(Error::LoopElement(e)) => bail!("element {e} is a loop, so no partition into independent sets exists"),
        other => other?,
    };
    println!("k={} {}", result.k, ledger_fields(&result.ledger));
    let parts: Vec<String> = result.parts.iter().map(|p| join(p)).collect();
    println!("parts={}", parts.join("|"));
    run.finish(&args, "partition-size", format!("k={}", result.k))
}

struct Reporter {
    color: bool,
    failures: usize,
}

impl Reporter {
    fn new() -> Self {
        Self {
            color: std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && io::stdout().is_terminal(),
            failures: 0,
        }
    }

    fn line(&mut self, name: &str, pass: Option<bool>, detail: &str) {
        let (tag, code) = match pass {
            Some(true) => ("PASS", "32"),
            Some(false) => ("FAIL", "31"),
            None => ("SKIP", "33"),
        };
        if pass == Some(false) {
            self.failures += 1;
        }
        if self.color {
            println!("\x1b[{code}m{tag}\x1b[0m {name}: {detail}");
        } else {
            println!("{tag} {name}: {detail}");
        }
    }
}

fn witness_count_check(descriptor: &Descriptor) -> Result<(Option<bool>, String)> {
    let Some(instance) = descriptor.hard_instance()? else {
        return Ok((None, "not a hard-family instance".into()));
    };
    let n = instance.ground_size();
    let mut over = 0;
    let mut mismatched = 0;
    let mut witnesses = 0;
    match (&instance.params, &instance.secret) {
        (HardParams::Rank(p), Secret::Set(secret)) => {
            let plain = matroid_cost::hard::rank_instance(
                matroid_cost::hard::RankHardParams { truncated: false, ..*p },
                secret,
            )?;
            let cut = matroid_cost::hard::rank_instance(
                matroid_cost::hard::RankHardParams { truncated: true, ..*p },
                secret,
            )?;
            for mask in 0u32..1 << n {
                let w: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let predicate = is_rank_witness(&w, secret, p.m, p.eps_times_m);
                witnesses += usize::from(predicate);
                if predicate != (plain.matroid.is_independent(&w) && !cut.matroid.is_independent(&w)) {
                    mismatched += 1;
                }
                if count_rank_witness_sets(&w, p.m, p.eps_times_m)? as u128 > rank_witness_count_bound(p.m, w.len()) {
                    over += 1;
                }
            }
        }
        (HardParams::Partition(p), Secret::Partition(parts)) => {
            let plain = matroid_cost::hard::partition_instance(
                matroid_cost::hard::PartitionHardParams { truncated: false, ..*p },
                parts,
            )?;
            let cut = matroid_cost::hard::partition_instance(
                matroid_cost::hard::PartitionHardParams { truncated: true, ..*p },
                parts,
            )?;
            let bound = partition_witness_count_bound(p.m, p.alpha);
            for mask in 0u32..1 << n {
                let w: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let predicate = is_partition_witness(&w, parts, p.m, p.alpha);
                witnesses += usize::from(predicate);
                if predicate != (plain.matroid.is_independent(&w) && !cut.matroid.is_independent(&w)) {
                    mismatched += 1;
                }
                if count_partition_witness_partitions(&w, p.m, p.alpha)? as u128 > bound {
                    over += 1;
                }
            }
        }
        _ => unreachable!("hard instance params and secret kinds always agree"),
    }
    Ok((
        Some(over == 0 && mismatched == 0),
        format!("{witnesses} witnesses, {mismatched} characterization mismatches, {over} counts above the bound"),
    ))
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    let descriptor = load_instance(&args.instance)?;
    let matroid = descriptor.build()?;
    let n = matroid.ground_size();
    if n > args.max_n {
        bail!("instance has {n} elements, above --max-n {}", args.max_n);
    }
    let mut report = Reporter::new();
    for check in &args.checks {
        match check {
            Check::Axioms => {
                let verdict = check_matroid_axioms(&*matroid)?;
                let detail = match &verdict {
                    AxiomVerdict::Pass => "all subsets checked".to_string(),
                    AxiomVerdict::Fail(v) => format!("{v:?}"),
                };
                report.line("axioms", Some(verdict.passed()), &detail);
            }
            Check::Rank => {
                let mut oracle = MeteredOracle::new(matroid.clone(), CostModel::linear());
                let greedy = greedy_basis(&mut oracle, &(0..n).collect::<Vec<_>>())?.rank;
                let brute = bf_rank(&*matroid)?;
                report.line("rank", Some(greedy == brute), &format!("greedy {greedy}, brute force {brute}"));
            }
            Check::Partition => {
                let mut oracle = MeteredOracle::new(matroid.clone(), CostModel::linear());
                match (partition_size(&mut oracle), bf_partition_size(&*matroid)) {
                    (Ok(found), Ok(brute)) => report.line(
                        "partition",
                        Some(found.k == brute),
                        &format!("search {}, brute force {brute}", found.k),
                    ),
                    (Err(Error::LoopElement(a)), Err(Error::LoopElement(b))) => {
                        report.line("partition", Some(a == b), &format!("loop element {a}"))
                    }
                    (found, brute) => report.line(
                        "partition",
                        Some(false),
                        &format!("search {:?}, brute force {:?}", found.map(|r| r.k), brute),
                    ),
                }
            }
            Check::Circumference => {
                let c = bf_circumference(&*matroid)?;
                let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
                let weights = TieBrokenWeights::new((0..n).map(|_| rng.random::<f64>()).collect())?;
                let params = BoundedCircParams::new((c as u32).max(1), args.seed)?;
                let mut oracle = MeteredOracle::new(matroid.clone(), CostModel::linear());
                let found = max_weight_basis_bounded_circ(&mut oracle, &weights, params)?.basis;
                let brute = bf_max_weight_basis(&*matroid, &weights)?;
                report.line(
                    "circumference",
                    Some(found == brute),
                    &format!("c = {c}, bounded-circ basis {}", if found == brute { "matches" } else { "differs" }),
                );
            }
            Check::WitnessCounts => {
                let (pass, detail) = witness_count_check(&descriptor)?;
                report.line("witness-counts", pass, &detail);
            }
        }
    }
    Ok(report.failures == 0)
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    if args.sizes.is_empty() {
        bail!("--sizes needs at least one size");
    }
    let config = BenchConfig {
        task: args.task,
        family: args.family,
        sizes: args.sizes,
        trials: args.trials,
        seed: args.seed,
        cost_model: args.cost_model,
        c: args.c,
    };
    let records = run_bench(&config)?;
    let summary = summarize(&records);
    match &args.out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(io::BufWriter::new(file), &records)?;
            println!("{summary}");
        }
        None => {
            write_csv(io::stdout().lock(), &records)?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(args) => cmd_gen(args).map(|()| true),
        Command::Basis(args) => cmd_basis(args).map(|()| true),
        Command::Rank(args) => cmd_rank(args).map(|()| true),
        Command::Partition(args) => cmd_partition(args).map(|()| true),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
