use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use ranking_csp::kernel::{characterization_size, KernelOutcome};
use ranking_csp::{
    approx, kernelize_characterized, kernelize_rfast, Decision, Family, Instance, KernelOptions, Oracle,
    RankingProvider, Verdict,
};

use crate::{emit, precondition, InputArgs, Provider};

fn yes_no(d: Decision) -> &'static str {
    match d {
        Decision::Yes => "YES",
        Decision::No => "NO",
    }
}

pub fn solve(inst: &Instance, k: Option<i64>, oracle: Oracle) -> Result<String> {
    let res = oracle.min_inconsistencies(inst)?;
    let mut out = format!("opt={}\nwitness={}\n", res.opt, res.witness);
    if let Some(k) = k {
        let d = Decision::from_bool(k >= 0 && res.opt as i64 <= k);
        writeln!(out, "decision={}", yes_no(d))?;
    }
    Ok(out)
}

pub fn approx(inst: &Instance, oracle: Option<Oracle>) -> Result<String> {
    let sigma = approx::inc_degree_ranking(inst)?;
    let cost = inst.count_inconsistent(&sigma);
    let mut out = format!("cost={cost}\nranking={sigma}\n");
    if let Some(oracle) = oracle {
        let opt = oracle.min_inconsistencies(inst)?.opt;
        writeln!(out, "opt={opt}")?;
        if opt > 0 {
            writeln!(out, "ratio={:.4}", cost as f64 / opt as f64)?;
        }
        writeln!(out, "within_factor_5={}", cost <= 5 * opt)?;
    }
    Ok(out)
}

#[derive(Args, Debug)]
pub struct KernelizeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub k: i64,
    /// Ranking provider for betweenness and transitive FAST. FAST always uses Inc-Degree.
    #[arg(long, value_enum)]
    pub provider: Option<Provider>,
    /// Petal size; defaults to the smallest known characterization size.
    #[arg(long)]
    pub l_r: Option<usize>,
    #[arg(long, default_value_t = ranking_csp::oracle::DEFAULT_CAP)]
    pub oracle_cap: usize,
    /// Check every applied petal with the oracle.
    #[arg(long)]
    pub debug_oracle_checks: bool,
    /// Decide the input and the kernel with the oracle and report both.
    #[arg(long)]
    pub verify: bool,
    /// Where to write the kernel instance (trivial verdicts give the canonical instances).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the rule trace; printed after the summary otherwise.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

fn summary(out: &KernelOutcome, k: i64) -> String {
    let mut s = String::new();
    let verdict = match &out.verdict {
        Verdict::Reduced(_) => "REDUCED",
        Verdict::TrivialYes => "TRIVIAL_YES",
        Verdict::TrivialNo => "TRIVIAL_NO",
    };
    let _ = writeln!(s, "verdict={verdict}");
    let _ = writeln!(s, "k_in={k}");
    let _ = writeln!(s, "initial_p={}", out.initial_cost);
    let _ = writeln!(s, "size_bound={}", out.size_bound);
    if let Some(red) = out.reduced() {
        let _ = writeln!(s, "kernel_n={}", red.instance.n());
        let _ = writeln!(s, "kernel_k={}", red.k);
        if let Some(p) = out.final_cost {
            let _ = writeln!(s, "final_p={p}");
        }
        let ids: Vec<String> = red.original_ids.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "original_ids={}", ids.join(" "));
    }
    let _ = writeln!(s, "rules_applied={}", out.trace.len());
    let _ = writeln!(s, "stalled={}", out.stalled);
    s
}

pub fn kernelize(args: &KernelizeArgs) -> Result<()> {
    let inst = args.input.load()?;
    let kind = inst.kind();
    let oracle = Oracle::with_cap(args.oracle_cap);
    let opts = KernelOptions {
        debug_oracle_checks: args.debug_oracle_checks,
        oracle,
    };
    let outcome = if kind.family() == Family::Fast {
        if !matches!(args.provider, None | Some(Provider::Incdegree)) {
            return Err(precondition("the FAST kernel always ranks with Inc-Degree"));
        }
        if args.l_r.is_some() {
            return Err(precondition("--l-r does not apply to FAST"));
        }
        kernelize_rfast(&inst, args.k, &opts)?
    } else {
        let provider = match args.provider.unwrap_or(Provider::Localsearch) {
            Provider::Exact => RankingProvider::Exact(oracle),
            Provider::Incdegree => return Err(precondition("Inc-Degree applies to FAST only")),
            Provider::Localsearch => RankingProvider::LocalSearch,
        };
        let l_r = match args.l_r.or_else(|| characterization_size(kind)) {
            Some(l) => l,
            None => return Err(precondition(format!("{kind} has no known characterization size"))),
        };
        kernelize_characterized(&inst, args.k, l_r, &provider, &opts)?
    };
    let mut report = summary(&outcome, args.k);
    if args.verify {
        let original = oracle.decide(&inst, args.k)?;
        let kernel = outcome.decide(&oracle)?;
        let _ = writeln!(report, "original_decision={}", yes_no(original));
        let _ = writeln!(report, "kernel_decision={}", yes_no(kernel));
        let _ = writeln!(report, "equivalent={}", original == kernel);
    }
    let trace: String = outcome.trace.iter().map(|t| format!("{t}\n")).collect();
    match &args.trace {
        Some(path) => emit(Some(path), &trace)?,
        None => report.push_str(&trace),
    }
    if let Some(path) = &args.out {
        let (kernel, _) = outcome.materialize(kind)?;
        emit(Some(path), &ranking_csp::serialize(&kernel))?;
    }
    print!("{report}");
    Ok(())
}
