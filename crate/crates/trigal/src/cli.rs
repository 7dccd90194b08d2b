//! Command-line interface.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use trigal_core::harness::{analysis_poly, sample_plan};
use trigal_core::mixing::ChainId;
use trigal_core::model::ModelConfig;
use trigal_core::poly::char_poly;
use trigal_core::wreath::WreathSubgroup;
use trigal_core::IntPoly;

use crate::config::{digest_str, RunConfig};
use crate::error::CliError;
use crate::experiments::{
    self, ChebotarevParams, Expectation, GroupCheck, GroupsParams, IdentityParams, MixingParams, Outcome,
    PopulationParams, WreathParams,
};
use crate::output::{OutDir, RunManifest, Summary, TOOL_VERSION};
use crate::parallel::Workers;

#[derive(Debug, Parser)]
#[command(name = "trigal", version, about = "Galois groups and mixing of random tridiagonal integer matrices")]
pub struct Cli {
    /// Directory receiving summaries, manifests and CSV files.
    #[arg(long, global = true, env = "TRIGAL_OUT_DIR", default_value = "trigal-out")]
    pub out_dir: PathBuf,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "TRIGAL_THREADS")]
    pub threads: Option<usize>,
    /// Master seed; overrides the seed of a config file.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact polynomial identities on random and structured matrices.
    Identities {
        #[arg(long, default_value_t = 500)]
        matrices: u64,
    },
    /// Root statistics of one polynomial over the primes in (x, 2x].
    Chebotarev(ChebotarevArgs),
    /// Certification and root statistics over a sampled population.
    Population(PopulationArgs),
    /// Random walks on PSL_2(p): exact identities, spectral bound, decay.
    Mixing(MixingArgs),
    /// Exhaustive generation sweeps over primes and spectral parameters.
    Groups(GroupsArgs),
    /// Orbits of signed permutation groups on ordered tuples.
    Wreath(WreathArgs),
    /// First cohomology of symmetric and alternating groups over F_2.
    Cohomology {
        #[arg(long, value_delimiter = ',', default_value = "3,4,5,6")]
        n: Vec<usize>,
    },
    /// Dyson populations at both parities of n.
    Dyson(PopulationArgs),
    /// Collects the checks of every summary in the output directory.
    Report,
}

#[derive(Debug, Args)]
pub struct ChebotarevArgs {
    /// Integer coefficients from the leading one down, e.g. `1,0,1` for x^2 + 1.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "config")]
    pub poly: Option<Vec<i64>>,
    /// Analyse sample `--index` of this model instead of `--poly`.
    #[arg(long, requires = "index")]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub index: Option<u64>,
    #[arg(long, default_value_t = 10_000)]
    pub x: u64,
    #[arg(long, default_value_t = 3)]
    pub k_max: u32,
    /// Count only nonzero roots.
    #[arg(long)]
    pub exclude_zero: bool,
    /// `K:LO:HI`, requiring `LO <= A_K <= HI`. Repeatable.
    #[arg(long, value_parser = parse_expectation)]
    pub expect: Vec<Expectation>,
}

#[derive(Debug, Args)]
pub struct PopulationArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub x: Option<u64>,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Certification only.
    #[arg(long)]
    pub no_chebotarev: bool,
}

#[derive(Debug, Args)]
pub struct MixingArgs {
    #[arg(long, default_value_t = 5)]
    pub p: u64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub chain: u8,
    #[arg(long, default_value_t = 2000)]
    pub steps: u64,
    #[arg(long, default_value_t = 0)]
    pub lambda: u64,
    /// Steps allowed for the first chain to come within 1e-3 of uniform.
    #[arg(long, default_value_t = 5000)]
    pub horizon: u64,
    /// Model whose driving distribution is used (default Bernoulli{0,1}).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CheckArg {
    Gen,
    Dyson,
    Genprod,
    Dysonprod,
}

#[derive(Debug, Args)]
pub struct GroupsArgs {
    #[arg(long, value_enum)]
    pub check: CheckArg,
    #[arg(long)]
    pub pmin: Option<u64>,
    #[arg(long, default_value_t = 101)]
    pub pmax: u64,
    /// First value (`v`, or the weight `w` for Dyson checks).
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    pub v: i64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
    pub vp: i64,
    /// Factors of a product check, descending.
    #[arg(long, value_delimiter = ',')]
    pub primes: Vec<u64>,
    /// Spectral parameters of a product check (default: all tuples).
    #[arg(long, value_delimiter = ',')]
    pub lambdas: Option<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SubgroupArg {
    Full,
    Ua,
}

#[derive(Debug, Args)]
pub struct WreathArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "full")]
    pub subgroup: SubgroupArg,
}

fn parse_expectation(s: &str) -> Result<Expectation, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [k, lo, hi] = parts[..] else {
        return Err(format!("expected K:LO:HI, got {s:?}"));
    };
    Ok(Expectation {
        k: k.parse().map_err(|e| format!("K: {e}"))?,
        lo: lo.parse().map_err(|e| format!("LO: {e}"))?,
        hi: hi.parse().map_err(|e| format!("HI: {e}"))?,
    })
}

fn read_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    RunConfig::parse(&text).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Shared state of one invocation.
struct Context {
    out: OutDir,
    workers: Workers,
    seed: Option<u64>,
}

struct Job {
    stem: String,
    subcommand: &'static str,
    config_path: Option<PathBuf>,
    seed: u64,
    canonical: String,
}

impl Context {
    fn manifest(&self, job: &Job) -> RunManifest {
        RunManifest {
            config_path: job.config_path.as_ref().map(|p| p.display().to_string()),
            subcommand: job.subcommand.into(),
            master_seed: job.seed,
            threads: self.workers.threads(),
            output_dir: self.out.path().display().to_string(),
            tool_version: TOOL_VERSION.into(),
            config_digest: digest_str(&job.canonical),
        }
    }

    /// Runs `f` on the pool, writes its files and summary, prints the checks.
    fn run<T, F>(&self, job: Job, f: F) -> Result<bool, CliError>
    where
        T: Serialize + Send,
        F: FnOnce() -> Result<Outcome<T>, CliError> + Send,
    {
        let start = Instant::now();
        let outcome = self.workers.install(f)?;
        let manifest = self.manifest(&job);
        for (name, contents) in &outcome.files {
            let path = self.out.write(&format!("{}_{name}", job.stem), contents)?;
            println!("wrote {}", path.display());
        }
        let ok = outcome.checks.all_pass();
        let summary = Summary::new(&manifest, outcome.checks.into_map(), outcome.results);
        let path = self.out.write_summary(&job.stem, &manifest, &summary)?;
        for (name, pass) in &summary.checks {
            println!("{} {name}", if *pass { "PASS" } else { "FAIL" });
        }
        println!("wrote {}", path.display());
        eprintln!("{} finished in {:.1}s on {} threads", job.subcommand, start.elapsed().as_secs_f64(), self.workers.threads());
        Ok(ok)
    }

    fn plain_job(&self, stem: impl Into<String>, subcommand: &'static str, params: Value) -> Job {
        let seed = self.seed.unwrap_or(0);
        let canonical = json!({ "subcommand": subcommand, "seed": seed, "params": params }).to_string();
        Job { stem: stem.into(), subcommand, config_path: None, seed, canonical }
    }

    fn config_job(&self, stem: String, subcommand: &'static str, path: &Path, cfg: &RunConfig) -> Job {
        Job {
            stem,
            subcommand,
            config_path: Some(path.to_path_buf()),
            seed: cfg.seed,
            canonical: cfg.canonical_json(),
        }
    }
}

fn poly_from_leading(coeffs: &[i64]) -> IntPoly {
    let mut c = coeffs.to_vec();
    c.reverse();
    IntPoly::from_i64s(&c)
}

fn effective_config(ctx: &Context, args: &PopulationArgs) -> Result<RunConfig, CliError> {
    let mut cfg = read_config(&args.config)?;
    if let Some(s) = ctx.seed {
        cfg.seed = s;
    }
    if let Some(s) = args.samples {
        cfg.samples = s;
    }
    if let Some(n) = args.n {
        cfg.n = n;
    }
    if let Some(x) = args.x {
        cfg.x = x;
    }
    if let Some(b) = args.budget {
        cfg.budget = b;
    }
    RunConfig::parse(&cfg.canonical_json())
}

fn population_params(cfg: &RunConfig, no_chebotarev: bool) -> Result<PopulationParams, CliError> {
    Ok(PopulationParams {
        model: cfg.model()?,
        seed: cfg.seed,
        samples: cfg.samples,
        chebotarev: (!no_chebotarev).then_some((cfg.x, cfg.k_max)),
        budget: cfg.budget,
    })
}

/// Canonical JSON of a config with one extra flag folded in.
fn with_flag(cfg: &RunConfig, key: &str, value: bool) -> String {
    let mut v = serde_json::to_value(cfg).expect("plain data");
    v[key] = Value::Bool(value);
    v.to_string()
}

fn dispatch(ctx: &Context, command: Command) -> Result<bool, CliError> {
    match command {
        Command::Identities { matrices } => {
            let params = IdentityParams { seed: ctx.seed.unwrap_or(0), matrices, ..IdentityParams::default() };
            let job = ctx.plain_job("identities", "identities", json!({ "matrices": matrices }));
            ctx.run(job, || experiments::identities(&params))
        }
        Command::Chebotarev(args) => {
            let (params, job) = match (&args.poly, &args.config) {
                (Some(coeffs), None) => {
                    let mut params = ChebotarevParams::new(poly_from_leading(coeffs), args.x, args.k_max);
                    params.exclude_zero = args.exclude_zero;
                    params.expect = args.expect.clone();
                    let job = ctx.plain_job(
                        "chebotarev",
                        "chebotarev",
                        json!({ "poly": coeffs, "x": args.x, "k_max": args.k_max, "exclude_zero": args.exclude_zero }),
                    );
                    (params, job)
                }
                (None, Some(path)) => {
                    let mut cfg = read_config(path)?;
                    if let Some(s) = ctx.seed {
                        cfg.seed = s;
                    }
                    let model = cfg.model()?;
                    let index = args.index.expect("clap enforces --index with --config");
                    let draw = model.sample(cfg.seed, index);
                    let analysis = analysis_poly(&model, &char_poly(&draw.matrix()));
                    let plan = sample_plan(&model, &draw.offdiag, args.x, args.k_max);
                    let mut params = ChebotarevParams::new(analysis.poly, args.x, args.k_max);
                    params.exclude_zero = plan.exclude_zero || args.exclude_zero;
                    params.min_prime = plan.min_prime;
                    params.offdiag = plan.offdiag;
                    params.expect = args.expect.clone();
                    let mut job = ctx.config_job(format!("chebotarev_sample{index}"), "chebotarev", path, &cfg);
                    job.canonical = json!({ "config": cfg, "index": index, "x": args.x, "k_max": args.k_max }).to_string();
                    (params, job)
                }
                _ => return Err(CliError::Config("chebotarev: give exactly one of --poly or --config".into())),
            };
            ctx.run(job, || experiments::chebotarev(&params))
        }
        Command::Population(args) => {
            let cfg = effective_config(ctx, &args)?;
            let params = population_params(&cfg, args.no_chebotarev)?;
            let stem = format!("population_{}_n{}", params.model.kind().name(), cfg.n);
            let mut job = ctx.config_job(stem, "population", &args.config, &cfg);
            job.canonical = with_flag(&cfg, "no_chebotarev", args.no_chebotarev);
            ctx.run(job, || experiments::population(&params))
        }
        Command::Dyson(args) => {
            let cfg = effective_config(ctx, &args)?;
            let params = population_params(&cfg, args.no_chebotarev)?;
            let mut job = ctx.config_job("dyson".into(), "dyson", &args.config, &cfg);
            job.canonical = with_flag(&cfg, "no_chebotarev", args.no_chebotarev);
            ctx.run(job, || experiments::dyson(&params))
        }
        Command::Mixing(args) => {
            let (model, config_path, model_json) = match &args.config {
                Some(path) => {
                    let cfg = read_config(path)?;
                    (cfg.model()?, Some(path.clone()), serde_json::to_value(&cfg).expect("plain data"))
                }
                None => (ModelConfig::bernoulli(1), None, json!("bernoulli")),
            };
            let params = MixingParams {
                model,
                p: args.p,
                lambda: args.lambda,
                chain: ChainId::from_index(args.chain)?,
                steps: args.steps,
                horizon: args.horizon,
                target: 1e-3,
            };
            let mut job = ctx.plain_job(
                format!("mixing_p{}_chain{}", args.p, args.chain),
                "mixing",
                json!({ "p": args.p, "lambda": args.lambda, "chain": args.chain, "steps": args.steps,
                        "horizon": args.horizon, "model": model_json }),
            );
            job.config_path = config_path;
            ctx.run(job, || experiments::mixing(&params))
        }
        Command::Groups(args) => {
            let check = match args.check {
                CheckArg::Gen => GroupCheck::Gen,
                CheckArg::Dyson => GroupCheck::Dyson,
                CheckArg::Genprod => GroupCheck::GenProd,
                CheckArg::Dysonprod => GroupCheck::DysonProd,
            };
            let pmin = args.pmin.unwrap_or(if check == GroupCheck::Dyson { 7 } else { 5 });
            let params = GroupsParams {
                check,
                v: args.v,
                vp: args.vp,
                pmin,
                pmax: args.pmax,
                primes: args.primes.clone(),
                lambdas: args.lambdas.clone(),
            };
            let mut stem = format!("groups_{}_{}_{}", check.name(), args.v, args.vp);
            for p in &args.primes {
                stem.push_str(&format!("_{p}"));
            }
            let job = ctx.plain_job(
                stem,
                "groups",
                json!({ "check": check.name(), "v": args.v, "vp": args.vp, "pmin": pmin, "pmax": args.pmax,
                        "primes": args.primes, "lambdas": args.lambdas }),
            );
            ctx.run(job, || experiments::groups(&params))
        }
        Command::Wreath(args) => {
            let subgroup = match args.subgroup {
                SubgroupArg::Full => WreathSubgroup::Full,
                SubgroupArg::Ua => WreathSubgroup::UA,
            };
            let params = WreathParams { m: args.m, k: args.k, subgroup };
            let job = ctx.plain_job(
                format!("wreath_m{}_k{}", args.m, args.k),
                "wreath",
                json!({ "m": args.m, "k": args.k, "subgroup": format!("{:?}", args.subgroup).to_lowercase() }),
            );
            ctx.run(job, || {
                let out = experiments::wreath(&params)?;
                println!("{}", out.results.orbits);
                Ok(out)
            })
        }
        Command::Cohomology { n } => {
            let job = ctx.plain_job("cohomology", "cohomology", json!({ "n": n }));
            ctx.run(job, || experiments::cohomology(&n))
        }
        Command::Report => report(&ctx.out),
    }
}

/// Prints every check of every summary and writes `report.json`.
fn report(out: &OutDir) -> Result<bool, CliError> {
    let dir = out.path();
    let entries = fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            name.ends_with(".json") && !name.ends_with(".manifest.json") && name != "report.json"
        })
        .collect();
    paths.sort();
    let mut table = serde_json::Map::new();
    let mut all = true;
    for path in &paths {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let Some(checks) = value.get("checks").and_then(Value::as_object) else {
            continue;
        };
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("").to_string();
        for (name, pass) in checks {
            let pass = pass.as_bool().unwrap_or(false);
            all &= pass;
            println!("{} {stem}/{name}", if pass { "PASS" } else { "FAIL" });
        }
        table.insert(stem, Value::Object(checks.clone()));
    }
    if table.is_empty() {
        return Err(CliError::Config(format!("no summaries found in {}", dir.display())));
    }
    let mut text = serde_json::to_string_pretty(&json!({ "all_pass": all, "summaries": table })).expect("plain data");
    text.push('\n');
    let path = out.write("report.json", &text)?;
    println!("wrote {}", path.display());
    Ok(all)
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let result = Workers::new(threads).and_then(|workers| {
        let ctx = Context { out: OutDir::new(cli.out_dir), workers, seed: cli.seed };
        dispatch(&ctx, cli.command)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
