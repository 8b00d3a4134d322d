//! Grid sweeps. Columns, in order:
//!
//! `family,n,r,k,edits,seed,status,p0,verdict,kernel_n,kernel_k,size_bound,
//! rule1,rule2,rule3,stalled,approx_cost,opt,approx_ratio`
//!
//! One row per grid cell, in grid order (family, n, r, k, edits, seed).
//! `status` is `ok`, or `invalid` when the cell's parameters are not a valid
//! generator spec; unavailable values are left empty. `opt` is filled only
//! within the oracle cap, `approx_cost` only for FAST.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use ranking_csp::kernel::{characterization_size, RuleId};
use ranking_csp::{
    approx, kernelize_characterized, kernelize_rfast, Family, GeneratorMode, GeneratorSpec, KernelOptions,
    Oracle, ProblemKind, RankingProvider, Verdict,
};

use crate::{emit, Mode, Provider};

pub const HEADER: &str = "family,n,r,k,edits,seed,status,p0,verdict,kernel_n,kernel_k,size_bound,rule1,rule2,rule3,stalled,approx_cost,opt,approx_ratio";

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "fast")]
    pub families: Vec<Family>,
    #[arg(long, value_delimiter = ',', default_value = "6,7,8")]
    pub n_values: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "3")]
    pub r_values: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub k_values: Vec<i64>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub edits_values: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Planted)]
    pub mode: Mode,
    /// Seeds per cell group: `seed`, `seed + 1`, ...
    #[arg(long, default_value_t = 3)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Provider for betweenness and transitive FAST.
    #[arg(long, value_enum, default_value_t = Provider::Localsearch)]
    pub provider: Provider,
    #[arg(long, default_value_t = ranking_csp::oracle::DEFAULT_CAP)]
    pub oracle_cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

struct Cell {
    family: Family,
    n: usize,
    r: usize,
    k: i64,
    edits: usize,
    seed: u64,
}

fn row(cell: &Cell, args: &BenchArgs, oracle: Oracle) -> String {
    let prefix = format!(
        "{},{},{},{},{},{}",
        cell.family.tag(),
        cell.n,
        cell.r,
        cell.k,
        cell.edits,
        cell.seed
    );
    match measure(cell, args, oracle) {
        Ok(rest) => format!("{prefix},ok,{rest}"),
        Err(_) => format!("{prefix},invalid{}", ",".repeat(12)),
    }
}

fn measure(cell: &Cell, args: &BenchArgs, oracle: Oracle) -> Result<String> {
    let kind = ProblemKind::new(cell.family, cell.r)?;
    let mode = match args.mode {
        Mode::Planted => GeneratorMode::Planted { edits: cell.edits },
        Mode::Uniform => GeneratorMode::Uniform,
    };
    let inst = ranking_csp::generate(&GeneratorSpec {
        kind,
        n: cell.n,
        mode,
        seed: cell.seed,
    })?
    .instance;
    let opts = KernelOptions {
        debug_oracle_checks: false,
        oracle,
    };
    let out = if cell.family == Family::Fast {
        kernelize_rfast(&inst, cell.k, &opts)?
    } else {
        let provider = match args.provider {
            Provider::Exact => RankingProvider::Exact(oracle),
            Provider::Incdegree => anyhow::bail!("Inc-Degree applies to FAST only"),
            Provider::Localsearch => RankingProvider::LocalSearch,
        };
        let l_r = characterization_size(kind).expect("characterized family");
        kernelize_characterized(&inst, cell.k, l_r, &provider, &opts)?
    };
    let (verdict, kernel_n, kernel_k) = match &out.verdict {
        Verdict::Reduced(r) => ("REDUCED", r.instance.n().to_string(), r.k.to_string()),
        Verdict::TrivialYes => ("TRIVIAL_YES", String::new(), String::new()),
        Verdict::TrivialNo => ("TRIVIAL_NO", String::new(), String::new()),
    };
    let approx_cost = if cell.family == Family::Fast {
        Some(inst.count_inconsistent(&approx::inc_degree_ranking(&inst)?))
    } else {
        None
    };
    let opt = if cell.n <= oracle.cap() {
        Some(oracle.min_inconsistencies(&inst)?.opt)
    } else {
        None
    };
    let ratio = match (approx_cost, opt) {
        (Some(c), Some(o)) if o > 0 => format!("{:.4}", c as f64 / o as f64),
        (Some(0), Some(0)) => "1.0000".to_string(),
        _ => String::new(),
    };
    let show = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    Ok(format!(
        "{},{verdict},{kernel_n},{kernel_k},{},{},{},{},{},{},{},{ratio}",
        out.initial_cost,
        out.size_bound,
        out.count(RuleId::Sunflower),
        out.count(RuleId::UselessVertex),
        out.count(RuleId::RfastSunflower),
        out.stalled,
        show(approx_cost),
        show(opt),
    ))
}

pub fn run(args: &BenchArgs) -> Result<()> {
    let oracle = Oracle::with_cap(args.oracle_cap);
    let mut csv = String::new();
    writeln!(csv, "{HEADER}")?;
    for &family in &args.families {
        for &n in &args.n_values {
            for &r in &args.r_values {
                for &k in &args.k_values {
                    for &edits in &args.edits_values {
                        for s in 0..args.seeds {
                            let cell = Cell {
                                family,
                                n,
                                r,
                                k,
                                edits,
                                seed: args.seed.wrapping_add(s),
                            };
                            writeln!(csv, "{}", row(&cell, args, oracle))?;
                        }
                    }
                }
            }
        }
    }
    emit(args.out.as_ref(), &csv)
}
