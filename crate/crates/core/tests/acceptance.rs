//! Acceptance checks. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use ranking_csp::approx::{
    check_lemma_approxone, check_lemma_approxthree, check_lemma_approxtwo, hill_climb, inc_degree_ranking,
    left_counts,
};
use ranking_csp::characterize::{
    fast_first_block_fault, rbit_single_fault_is_conflict, rfast_single_fault_is_conflict,
    single_fault_configurations, single_fault_count, verify_simple_characterization, CharacterizeError,
    SingleFaultConfig,
};
use ranking_csp::kernel::{characterization_size, rule_useless_vertex, RuleId};
use ranking_csp::model::subset_count;
use ranking_csp::rng::SeededRng;
use ranking_csp::{
    generate, kernelize_characterized, kernelize_rfast, parse, serialize, Family, GeneratorMode,
    GeneratorSpec, Instance, KernelOptions, Oracle, ProblemKind, Ranking, RankingProvider,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn random_ranking(rng: &mut SeededRng, n: usize) -> Ranking {
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    Ranking::new(order).unwrap()
}

fn planted(kind: ProblemKind, n: usize, edits: usize, seed: u64) -> ranking_csp::Generated {
    generate(&GeneratorSpec {
        kind,
        n,
        mode: GeneratorMode::Planted { edits },
        seed,
    })
    .unwrap()
}

fn uniform(kind: ProblemKind, n: usize, seed: u64) -> Instance {
    generate(&GeneratorSpec {
        kind,
        n,
        mode: GeneratorMode::Uniform,
        seed,
    })
    .unwrap()
    .instance
}

/// Kernel answer preservation on 500 planted instances.
fn answer_preservation() -> Check {
    let oracle = Oracle::default();
    let opts = KernelOptions {
        debug_oracle_checks: true,
        oracle,
    };
    let kinds = [
        ProblemKind::betweenness(3).unwrap(),
        ProblemKind::betweenness(4).unwrap(),
        ProblemKind::transitive_fast(3).unwrap(),
        ProblemKind::fast(2).unwrap(),
        ProblemKind::fast(3).unwrap(),
    ];
    let mut rng = SeededRng::new(2024);
    let (mut instances, mut runs, mut rules, mut yes, mut failures) = (0, 0, 0, 0, Vec::new());
    for i in 0..500 {
        let kind = kinds[i % kinds.len()];
        let r = kind.arity();
        let n = r + 1 + rng.index(9 - r);
        let edits = (1 + rng.index(4)).min(subset_count(n, r));
        let k = rng.index(4) as i64;
        let g = planted(kind, n, edits, rng.next_u64());
        let truth = oracle.decide(&g.instance, k).map_err(|e| e.to_string())?;
        yes += truth.is_yes() as usize;
        let providers = if kind.family() == Family::Fast {
            vec![None]
        } else {
            vec![
                Some(RankingProvider::LocalSearch),
                Some(RankingProvider::Fixed(g.base.clone().unwrap())),
                Some(RankingProvider::Exact(oracle)),
            ]
        };
        for provider in providers {
            let out = match &provider {
                None => kernelize_rfast(&g.instance, k, &opts),
                Some(p) => {
                    kernelize_characterized(&g.instance, k, characterization_size(kind).unwrap(), p, &opts)
                }
            };
            runs += 1;
            let out = match out {
                Ok(out) => out,
                Err(e) => {
                    failures.push(format!("{kind} n={n} k={k}: {e}"));
                    continue;
                }
            };
            rules += out
                .trace
                .iter()
                .filter(|t| t.rule != RuleId::UselessVertex)
                .count();
            let mut k_now = k;
            for t in &out.trace {
                let drop = (t.rule != RuleId::UselessVertex) as i64;
                if t.k_before != k_now || t.k_after != k_now - drop {
                    failures.push(format!("{kind} n={n} k={k}: k not lowered by exactly one"));
                }
                k_now = t.k_after;
            }
            if out.decide(&oracle).map_err(|e| e.to_string())? != truth {
                failures.push(format!("{kind} n={n} k={k}: kernel answer differs"));
            }
        }
        instances += 1;
    }
    let detail = format!(
        "{instances} instances, {runs} kernel runs, {yes} YES answers, {rules} sunflower edits (petals oracle-checked), {} mismatches",
        failures.len()
    );
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; first: {}", failures[0]))
    }
}

/// FAST kernel size bound.
fn fast_size_bound() -> Check {
    let opts = KernelOptions::default();
    let mut seeds = SeededRng::new(77);
    let (mut reduced, mut with_rules, mut violations) = (0, 0, Vec::new());
    let (mut r2_reduced, mut r2_stalled, mut r2_over_6k, mut r2_over_p) = (0, 0, 0, 0);
    for r in [2usize, 3, 4] {
        let kind = ProblemKind::fast(r).unwrap();
        for n in r + 1..=14 {
            for trial in 0..30 {
                let seed = seeds.next_u64();
                let inst = if trial % 2 == 0 {
                    uniform(kind, n, seed)
                } else {
                    planted(kind, n, (1 + trial % 7).min(subset_count(n, r)), seed).instance
                };
                for k in 0..=4i64 {
                    let out =
                        kernelize_rfast(&inst, k, &opts).map_err(|e| format!("r={r} n={n} k={k}: {e}"))?;
                    let Some(red) = out.reduced() else { continue };
                    let size = red.instance.n();
                    let over_6k = size > 6 * k as usize + r;
                    let over_p = size > out.final_cost.unwrap() + red.k as usize + r;
                    if r == 2 {
                        r2_reduced += 1;
                        r2_stalled += out.stalled as usize;
                        r2_over_6k += over_6k as usize;
                        r2_over_p += over_p as usize;
                        continue;
                    }
                    reduced += 1;
                    with_rules += !out.trace.is_empty() as usize;
                    if over_6k || over_p || out.stalled {
                        violations.push(format!("r={r} n={n} k={k}: {size} vertices"));
                    }
                }
            }
        }
    }
    println!(
        "[INFO] FAST r=2 (no size guarantee below r = 3): {r2_reduced} reduced outputs, {r2_stalled} stalled, \
         {r2_over_6k} above 6k+r, {r2_over_p} above p+k+r"
    );
    let detail = format!(
        "r in {{3,4}}, n <= 14: {reduced} reduced outputs ({with_rules} after rule applications), {} above 6k+r or p+k+r",
        violations.len()
    );
    if violations.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; first: {}", violations[0]))
    }
}

/// Inc-Degree ratio against the oracle.
fn inc_degree_ratio() -> Check {
    let oracle = Oracle::default();
    let mut seeds = SeededRng::new(5);
    let (mut count, mut worst, mut bad) = (0, 0.0f64, 0);
    for r in [2usize, 3] {
        let kind = ProblemKind::fast(r).unwrap();
        for n in r..=7 {
            for trial in 0..120 {
                let seed = seeds.next_u64();
                let inst = if trial % 3 == 0 {
                    planted(kind, n, (trial % 5).min(subset_count(n, r)), seed).instance
                } else {
                    uniform(kind, n, seed)
                };
                let cost = inst.count_inconsistent(&inc_degree_ranking(&inst).unwrap());
                let opt = oracle.min_inconsistencies(&inst).unwrap().opt;
                count += 1;
                if cost > 5 * opt {
                    bad += 1;
                }
                if opt > 0 {
                    worst = worst.max(cost as f64 / opt as f64);
                }
            }
        }
    }
    let detail = format!("{count} instances, worst ratio {worst:.3}, {bad} violations");
    if count >= 1000 && bad == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

#[derive(Default)]
struct Slacks {
    one: i64,
    two: i64,
    three_cost: i64,
    three_distance: i64,
    identity_failures: usize,
    per_vertex_failures: usize,
}

impl Slacks {
    fn new() -> Self {
        Self {
            one: i64::MAX,
            two: i64::MAX,
            three_cost: i64::MAX,
            three_distance: i64::MAX,
            ..Self::default()
        }
    }

    fn record(&mut self, inst: &Instance, rho: &Ranking, gamma: &Ranking) {
        let one = check_lemma_approxone(inst, rho).unwrap();
        let two = check_lemma_approxtwo(inst, rho).unwrap();
        let three = check_lemma_approxthree(inst, rho, gamma).unwrap();
        self.one = self.one.min(one.slack());
        self.two = self.two.min(two.slack());
        self.three_cost = self.three_cost.min(three.cost_slack());
        self.three_distance = self.three_distance.min(three.distance_slack());
        self.identity_failures += !one.identity_holds() as usize;
        self.per_vertex_failures += !(one.per_vertex_bound && one.per_vertex_min_bound) as usize;
    }
}

/// The approximation inequalities on random and adversarial rankings.
fn inequality_slacks() -> Check {
    let mut rng = SeededRng::new(99);
    let mut s = Slacks::new();
    let mut random_cases = 0;
    for i in 0..1000 {
        let r = 2 + i % 3;
        let n = r + 1 + rng.index(8 - r);
        let inst = uniform(ProblemKind::fast(r).unwrap(), n, rng.next_u64());
        let rho = random_ranking(&mut rng, n);
        let gamma = random_ranking(&mut rng, n);
        s.record(&inst, &rho, &gamma);
        random_cases += 1;
    }
    let mut adversarial = 0;
    for i in 0..60 {
        let r = 2 + i % 3;
        let n = r + 2 + rng.index(7 - r);
        let kind = ProblemKind::fast(r).unwrap();
        let inst = if i % 2 == 0 {
            uniform(kind, n, rng.next_u64())
        } else {
            planted(kind, n, 2.min(subset_count(n, r)), rng.next_u64()).instance
        };
        let start = random_ranking(&mut rng, n);
        let rho = hill_climb(start.clone(), |x| {
            check_lemma_approxone(&inst, x).unwrap().slack()
        });
        s.record(&inst, &rho, &start);
        let rho = hill_climb(start.clone(), |x| {
            check_lemma_approxtwo(&inst, x).unwrap().slack()
        });
        s.record(&inst, &rho, &start);
        let gamma = random_ranking(&mut rng, n);
        let rho = hill_climb(start.clone(), |x| {
            check_lemma_approxthree(&inst, x, &gamma).unwrap().cost_slack()
        });
        s.record(&inst, &rho, &gamma);
        let rho = hill_climb(start, |x| {
            check_lemma_approxthree(&inst, x, &gamma)
                .unwrap()
                .distance_slack()
        });
        s.record(&inst, &rho, &gamma);
        adversarial += 4;
    }
    let detail = format!(
        "{random_cases} random + {adversarial} hill-climbed cases; min slacks: 2b-dev {}, dev-vs-inc-degree {}, \
         left-gap-vs-cost {}, left-gap-vs-distance {}; double-count failures {}, per-vertex failures {}",
        s.one, s.two, s.three_cost, s.three_distance, s.identity_failures, s.per_vertex_failures
    );
    let ok = s.one >= 0
        && s.two >= 0
        && s.three_cost >= 0
        && s.three_distance >= 0
        && s.identity_failures == 0
        && s.per_vertex_failures == 0;
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn predicate_mismatches(
    oracle: &Oracle,
    kind: ProblemKind,
    predicate: fn(&SingleFaultConfig) -> Result<bool, CharacterizeError>,
) -> (usize, usize) {
    let configs = single_fault_configurations(kind, kind.arity() + 1);
    let bad = configs
        .iter()
        .filter(|cfg| predicate(cfg).unwrap() != oracle.ranking_within(cfg.instance(), 0).unwrap().is_none())
        .count();
    (configs.len(), bad)
}

/// Conflict characterizations against the oracle.
fn characterizations() -> Check {
    let oracle = Oracle::default();
    let mut parts = Vec::new();
    let mut ok = true;

    let (total, bad) = predicate_mismatches(
        &oracle,
        ProblemKind::betweenness(4).unwrap(),
        rbit_single_fault_is_conflict,
    );
    ok &= total == 25 && bad == 0;
    parts.push(format!("betweenness r=4 table {total} configs/{bad} mismatches"));
    for r in [3, 4] {
        let (total, bad) = predicate_mismatches(
            &oracle,
            ProblemKind::fast(r).unwrap(),
            rfast_single_fault_is_conflict,
        );
        ok &= bad == 0;
        parts.push(format!("fast r={r} {total}/{bad}"));
    }
    for (kind, size) in [
        (ProblemKind::betweenness(4).unwrap(), 8),
        (ProblemKind::transitive_fast(3).unwrap(), 4),
        (ProblemKind::betweenness(3).unwrap(), 4),
    ] {
        let all = single_fault_count(kind, size);
        let rep = verify_simple_characterization(kind, size, all, 0, &oracle).unwrap();
        ok &= rep.exhaustive && rep.holds();
        parts.push(format!(
            "{kind} on {size}: {} exhaustive, {} counterexamples",
            rep.checked,
            rep.counterexamples.len()
        ));
    }
    let mut first_block = 0;
    for r in [3, 4] {
        for size in r + 1..=r + 4 {
            for sel in 0..r - 1 {
                let cfg = fast_first_block_fault(r, size, sel).unwrap();
                let consistent = oracle.ranking_within(cfg.instance(), 0).unwrap().is_some();
                ok &= consistent;
                first_block += 1;
            }
        }
    }
    parts.push(format!("fast first-block non-conflicts {first_block}"));
    let detail = parts.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Useless-vertex removal keeps the optimum.
fn rule_two_exactness() -> Check {
    let oracle = Oracle::default();
    let mut rng = SeededRng::new(31);
    let (mut checked, mut skipped, mut bad) = (0, 0, 0);
    while checked < 200 {
        let r = 2 + checked % 3;
        let n = r + 1 + rng.index(8 - r);
        let kind = ProblemKind::fast(r).unwrap();
        let inst = planted(kind, n, rng.index(4).min(subset_count(n, r)), rng.next_u64()).instance;
        let Some(rm) = rule_useless_vertex(&inst).unwrap() else {
            skipped += 1;
            continue;
        };
        let before = oracle.min_inconsistencies(&inst).unwrap().opt;
        let after = oracle.min_inconsistencies(&rm.instance).unwrap().opt;
        bad += (before != after) as usize;
        checked += 1;
    }
    let detail = format!(
        "{checked} instances with a removable vertex ({skipped} without one skipped), {bad} changed optima"
    );
    if bad == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Golden round trips, generator determinism, left-count closed form.
fn infrastructure() -> Check {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut golden = 0;
    let mut failures = Vec::new();
    for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        match parse(&text) {
            Ok(inst) if serialize(&inst) == text => golden += 1,
            _ => failures.push(format!("round trip {}", path.display())),
        }
    }
    let mut rng = SeededRng::new(1);
    let mut determinism = 0;
    for kind in [
        ProblemKind::betweenness(3).unwrap(),
        ProblemKind::transitive_fast(4).unwrap(),
        ProblemKind::fast(2).unwrap(),
        ProblemKind::fast(5).unwrap(),
    ] {
        for mode in [GeneratorMode::Uniform, GeneratorMode::Planted { edits: 3 }] {
            let spec = GeneratorSpec {
                kind,
                n: 8,
                mode,
                seed: rng.next_u64(),
            };
            let a = serialize(&generate(&spec).unwrap().instance);
            let b = serialize(&generate(&spec).unwrap().instance);
            if a != b {
                failures.push(format!("generator not deterministic for {kind}"));
            }
            determinism += 1;
        }
    }
    let mut left_checks = 0;
    for n in 1..=8 {
        for r in 1..=4 {
            let rankings: Vec<Ranking> = if n <= 5 {
                use itertools::Itertools;
                (0..n).permutations(n).map(|p| Ranking::new(p).unwrap()).collect()
            } else {
                (0..20).map(|_| random_ranking(&mut rng, n)).collect()
            };
            for rk in rankings {
                for (v, &l) in left_counts(&rk, r).left.iter().enumerate() {
                    if l != common::left_by_enumeration(rk.order(), r, v) {
                        failures.push(format!("left count n={n} r={r} v={v}"));
                    }
                    left_checks += 1;
                }
            }
        }
    }
    let detail = format!(
        "{golden} golden files round-trip, {determinism} generator specs reproduced, {left_checks} left counts match enumeration"
    );
    if failures.is_empty() && golden > 0 {
        Ok(detail)
    } else {
        Err(format!("{detail}; failures: {failures:?}"))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("kernel answer preservation", answer_preservation),
        ("FAST kernel size bound", fast_size_bound),
        ("Inc-Degree within factor 5", inc_degree_ratio),
        ("approximation inequalities", inequality_slacks),
        ("conflict characterizations", characterizations),
        ("useless-vertex removal keeps opt", rule_two_exactness),
        ("format, generator and left counts", infrastructure),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] {}. {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
