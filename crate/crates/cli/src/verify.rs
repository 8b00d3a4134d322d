use std::fmt::Write as _;

use anyhow::Result;
use clap::Args;
use ranking_csp::approx::{check_lemma_approxone, check_lemma_approxthree, check_lemma_approxtwo};
use ranking_csp::characterize::{
    fast_first_block_fault, rbit_single_fault_is_conflict, rfast_single_fault_is_conflict,
    single_fault_configurations, verify_simple_characterization,
};
use ranking_csp::rng::SeededRng;
use ranking_csp::{GeneratorMode, GeneratorSpec, Oracle, ProblemKind, Ranking};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Random cases for the approximation inequalities, and the sample
    /// budget for characterizations too large to exhaust.
    #[arg(long, default_value_t = 400)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = ranking_csp::oracle::DEFAULT_CAP)]
    pub oracle_cap: usize,
}

struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn line(&mut self, pass: bool, name: &str, detail: String) {
        self.ok &= pass;
        let _ = writeln!(
            self.text,
            "{} {name}: {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
    }
}

fn predicate_vs_oracle(
    report: &mut Report,
    oracle: &Oracle,
    kind: ProblemKind,
    name: &str,
    predicate: impl Fn(
        &ranking_csp::characterize::SingleFaultConfig,
    ) -> Result<bool, ranking_csp::characterize::CharacterizeError>,
) -> Result<()> {
    let configs = single_fault_configurations(kind, kind.arity() + 1);
    let mut mismatches = 0;
    for cfg in &configs {
        let truth = oracle.ranking_within(cfg.instance(), 0)?.is_none();
        if predicate(cfg)? != truth {
            mismatches += 1;
        }
    }
    report.line(
        mismatches == 0,
        name,
        format!("{} configurations, {mismatches} mismatches", configs.len()),
    );
    Ok(())
}

pub fn run(args: &VerifyArgs) -> Result<(String, bool)> {
    let oracle = Oracle::with_cap(args.oracle_cap);
    let mut report = Report {
        text: String::new(),
        ok: true,
    };

    predicate_vs_oracle(
        &mut report,
        &oracle,
        ProblemKind::betweenness(4)?,
        "betweenness r=4 single-fault table",
        rbit_single_fault_is_conflict,
    )?;
    for r in [3, 4] {
        predicate_vs_oracle(
            &mut report,
            &oracle,
            ProblemKind::fast(r)?,
            &format!("fast r={r} single-fault predicate"),
            rfast_single_fault_is_conflict,
        )?;
    }
    for (kind, size) in [
        (ProblemKind::betweenness(3)?, 4),
        (ProblemKind::transitive_fast(3)?, 4),
        (ProblemKind::betweenness(4)?, 8),
    ] {
        let rep = verify_simple_characterization(kind, size, args.samples, args.seed, &oracle)?;
        report.line(
            rep.holds(),
            &format!("{kind} conflicts on {size} vertices"),
            format!(
                "{} of {} checked ({}), {} counterexamples",
                rep.checked,
                rep.total_configurations,
                if rep.exhaustive { "exhaustive" } else { "sampled" },
                rep.counterexamples.len()
            ),
        );
    }
    let mut first_block_ok = true;
    for size in 4..=7 {
        for sel in 0..2 {
            let cfg = fast_first_block_fault(3, size, sel)?;
            first_block_ok &= oracle.ranking_within(cfg.instance(), 0)?.is_some();
        }
    }
    report.line(
        first_block_ok,
        "fast r=3 first-block fault is no conflict",
        "sizes 4..=7".into(),
    );

    let mut rng = SeededRng::new(args.seed);
    let mut worst = [i64::MAX; 4];
    let mut identity_ok = true;
    let mut per_vertex_ok = true;
    for i in 0..args.samples {
        let r = 2 + i % 3;
        let n = r + 1 + rng.index(8 - r);
        let spec = GeneratorSpec {
            kind: ProblemKind::fast(r)?,
            n,
            mode: GeneratorMode::Uniform,
            seed: rng.next_u64(),
        };
        let inst = ranking_csp::generate(&spec)?.instance;
        let mut order: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut order);
        let rho = Ranking::new(order.clone())?;
        rng.shuffle(&mut order);
        let gamma = Ranking::new(order)?;
        let one = check_lemma_approxone(&inst, &rho)?;
        let two = check_lemma_approxtwo(&inst, &rho)?;
        let three = check_lemma_approxthree(&inst, &rho, &gamma)?;
        identity_ok &= one.identity_holds();
        per_vertex_ok &= one.per_vertex_bound && one.per_vertex_min_bound;
        for (w, s) in worst.iter_mut().zip([
            one.slack(),
            two.slack(),
            three.cost_slack(),
            three.distance_slack(),
        ]) {
            *w = (*w).min(s);
        }
    }
    let names = [
        "2b >= sum |l - In|",
        "sum |l - In| is smallest for Inc-Degree",
        "sum |l_rho - l_gamma| >= |b_rho - b_gamma|",
        "sum |l_rho - l_gamma| >= distance",
    ];
    for (name, w) in names.iter().zip(worst) {
        report.line(w >= 0, name, format!("{} cases, minimum slack {w}", args.samples));
    }
    report.line(
        identity_ok,
        "double count equals 2b",
        format!("{} cases", args.samples),
    );
    report.line(
        per_vertex_ok,
        "per-vertex bounds",
        format!("{} cases", args.samples),
    );
    Ok((report.text, report.ok))
}
