//! Sunflower reduction rules and the kernelization drivers.
//!
//! A simple sunflower for an ordered instance `R_σ` is a family of vertex sets
//! (petals) that pairwise intersect exactly in the members of one
//! σ-inconsistent constraint (the center), each petal inducing no other
//! inconsistent constraint. When the problem guarantees that every such petal
//! is a conflict and there are more than `k` petals, every solution must edit
//! the center, and it must edit it to agree with σ.
//!
//! Two drivers are provided:
//! * [`kernelize_characterized`] for families in which every single-fault set
//!   of `l_r` vertices is a conflict (betweenness, transitive FAST);
//! * [`kernelize_rfast`] for FAST, which additionally removes vertices that
//!   are selected in every constraint containing them.

use std::fmt;

use thiserror::Error;

use crate::approx::{in_degrees, inc_degree_ranking, ApproxError};
use crate::characterize::violating_selections;
use crate::error::{ModelError, OracleError};
use crate::model::{
    for_each_subset, induced, satisfied, span_minus, subset_count, Constraint, Family, Instance,
    OrderedInstance, ProblemKind, Ranking, Selection, Vertex,
};
use crate::oracle::{Decision, Oracle};

/// Approximation factor of Inc-Degree for FAST.
pub const INC_DEGREE_FACTOR: u64 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("{kind} is not known to be {l_r}-simply characterized")]
    NotCharacterized { kind: ProblemKind, l_r: usize },
    #[error("operation requires a {expected} instance, found {found}")]
    WrongFamily { expected: Family, found: Family },
    #[error("parameter k must be non-negative, got {0}")]
    NegativeK(i64),
    #[error("center {0} is consistent with the ranking")]
    ConsistentCenter(Constraint),
    #[error("sunflower has {petals} petals, rule needs more than k = {k}")]
    RuleInapplicable { petals: usize, k: i64 },
    #[error("not a simple sunflower: {0}")]
    NotSimple(String),
    #[error("no sunflower with {needed} petals around {center} although the size bound is exceeded")]
    NoSunflower { center: Constraint, needed: usize },
    #[error("ranking provider: {0}")]
    Provider(String),
    #[error("debug oracle check failed: {0}")]
    DebugCheck(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Approx(#[from] ApproxError),
}

/// Where the ranking that drives kernelization comes from.
#[derive(Debug, Clone)]
pub enum RankingProvider {
    /// Optimal ranking from the exhaustive oracle (factor 1).
    Exact(Oracle),
    /// Inc-Degree; FAST only (factor 5).
    IncDegree,
    /// Adjacent-swap descent from the identity; no guaranteed factor.
    LocalSearch,
    /// A caller-supplied ranking; no guaranteed factor.
    Fixed(Ranking),
}

#[derive(Debug, Clone)]
pub struct ProvidedRanking {
    pub ranking: Ranking,
    /// Guaranteed approximation factor, when one is known.
    pub factor: Option<u64>,
}

impl RankingProvider {
    pub fn name(&self) -> &'static str {
        match self {
            RankingProvider::Exact(_) => "exact",
            RankingProvider::IncDegree => "incdegree",
            RankingProvider::LocalSearch => "localsearch",
            RankingProvider::Fixed(_) => "fixed",
        }
    }

    pub fn rank(&self, inst: &Instance) -> Result<ProvidedRanking, KernelError> {
        let (ranking, factor) = match self {
            RankingProvider::Exact(oracle) => (oracle.min_inconsistencies(inst)?.witness, Some(1)),
            RankingProvider::IncDegree => (inc_degree_ranking(inst)?, Some(INC_DEGREE_FACTOR)),
            RankingProvider::LocalSearch => (local_search(inst), None),
            RankingProvider::Fixed(r) => (r.clone(), None),
        };
        if ranking.len() != inst.n() {
            return Err(KernelError::Provider(format!(
                "ranking over {} vertices for an instance on {}",
                ranking.len(),
                inst.n()
            )));
        }
        Ok(ProvidedRanking { ranking, factor })
    }
}

/// First-improvement adjacent-swap descent starting from the identity.
pub fn local_search(inst: &Instance) -> Ranking {
    let n = inst.n();
    let mut rk = Ranking::identity(n);
    let mut cost = inst.count_inconsistent(&rk);
    let mut improved = true;
    while improved && cost > 0 {
        improved = false;
        for i in 0..n.saturating_sub(1) {
            rk.swap_positions(i, i + 1);
            let c = inst.count_inconsistent(&rk);
            if c < cost {
                cost = c;
                improved = true;
            } else {
                rk.swap_positions(i, i + 1);
            }
        }
    }
    rk
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleSunflower {
    pub center: Constraint,
    /// Each petal as a sorted vertex set containing the center's members.
    pub petals: Vec<Vec<Vertex>>,
}

/// Smallest `l_r` for which the family is known to be `l_r`-simply characterized.
pub fn characterization_size(kind: ProblemKind) -> Option<usize> {
    let r = kind.arity();
    match kind.family() {
        Family::Betweenness if r == 3 => Some(4),
        Family::Betweenness => Some(2 * r),
        Family::TransitiveFast => Some(r + 1),
        Family::Fast => None,
    }
}

fn require_characterized(kind: ProblemKind, l_r: usize) -> Result<(), KernelError> {
    match characterization_size(kind) {
        Some(min) if l_r >= min => Ok(()),
        _ => Err(KernelError::NotCharacterized { kind, l_r }),
    }
}

fn require_inconsistent(oi: &OrderedInstance, center: &Constraint) -> Result<(), KernelError> {
    let stored = oi.instance.constraint(center.members())?;
    if stored != *center {
        return Err(KernelError::NotSimple(format!(
            "{center} is not the stored constraint {stored}"
        )));
    }
    if center.is_satisfied(&oi.sigma) {
        return Err(KernelError::ConsistentCenter(center.clone()));
    }
    Ok(())
}

/// True iff, under σ, the only inconsistent constraint induced by the sorted
/// set `petal` is the one at `center_index`.
fn is_single_fault_set(oi: &OrderedInstance, petal: &[Vertex], center_index: usize) -> bool {
    let inst = &oi.instance;
    let pos = oi.sigma.positions();
    let r = inst.arity();
    let mut buf = vec![0; r];
    let mut clean = true;
    for_each_subset(petal.len(), r, |local| {
        if !clean {
            return;
        }
        for (b, &i) in buf.iter_mut().zip(local) {
            *b = petal[i];
        }
        let c = inst.get(crate::model::lex_rank(&buf, inst.n()));
        if c.index != center_index && !satisfied(c.family, c.members, c.selected, pos) {
            clean = false;
        }
    });
    clean
}

fn petal_with(center: &[Vertex], extra: &[Vertex]) -> Vec<Vertex> {
    let mut petal: Vec<Vertex> = center.iter().chain(extra).copied().collect();
    petal.sort_unstable();
    petal
}

/// First combination (lexicographic over indices of `avail`) of `size`
/// elements satisfying `accept`.
fn first_combination(
    avail: &[Vertex],
    size: usize,
    mut accept: impl FnMut(&[Vertex]) -> bool,
) -> Option<Vec<Vertex>> {
    let m = avail.len();
    if size > m {
        return None;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut pick = vec![0; size];
    loop {
        for (p, &i) in pick.iter_mut().zip(&idx) {
            *p = avail[i];
        }
        if accept(&pick) {
            return Some(pick);
        }
        let mut i = size;
        while i > 0 && idx[i - 1] == m - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Greedy first-fit search for `k+1` petals of size `l_r` around `center`.
///
/// Extra vertices are drawn from outside the center in σ order; each accepted
/// extra set is disjoint from earlier ones. Returns `None` when fewer than
/// `k+1` petals are found.
pub fn find_simple_sunflower(
    oi: &OrderedInstance,
    center: &Constraint,
    l_r: usize,
    k: i64,
) -> Result<Option<SimpleSunflower>, KernelError> {
    require_inconsistent(oi, center)?;
    if k < 0 {
        return Err(KernelError::NegativeK(k));
    }
    let r = oi.instance.arity();
    if l_r <= r {
        return Err(KernelError::NotCharacterized {
            kind: oi.instance.kind(),
            l_r,
        });
    }
    let extras = l_r - r;
    let needed = k as usize + 1;
    let center_index = oi.instance.index_of(center.members())?;
    let mut avail: Vec<Vertex> = oi
        .sigma
        .order()
        .iter()
        .copied()
        .filter(|&v| !center.contains(v))
        .collect();
    let mut petals = Vec::new();
    while petals.len() < needed {
        let found = first_combination(&avail, extras, |extra| {
            is_single_fault_set(oi, &petal_with(center.members(), extra), center_index)
        });
        let Some(extra) = found else { break };
        avail.retain(|v| !extra.contains(v));
        petals.push(petal_with(center.members(), &extra));
    }
    Ok((petals.len() >= needed).then(|| SimpleSunflower {
        center: center.clone(),
        petals,
    }))
}

fn check_simple(oi: &OrderedInstance, sf: &SimpleSunflower) -> Result<(), KernelError> {
    require_inconsistent(oi, &sf.center)?;
    let center_index = oi.instance.index_of(sf.center.members())?;
    for (i, p) in sf.petals.iter().enumerate() {
        if !sf.center.members().iter().all(|v| p.binary_search(v).is_ok()) {
            return Err(KernelError::NotSimple(format!(
                "petal {i} does not contain the center"
            )));
        }
        if !is_single_fault_set(oi, p, center_index) {
            return Err(KernelError::NotSimple(format!(
                "petal {i} induces another inconsistency"
            )));
        }
        for q in &sf.petals[i + 1..] {
            let shared = p.iter().filter(|v| q.binary_search(v).is_ok()).count();
            if shared != sf.center.arity() {
                return Err(KernelError::NotSimple("petals overlap outside the center".into()));
            }
        }
    }
    Ok(())
}

/// Edits the center to agree with σ and lowers `k` by one. Requires more
/// than `k` petals.
pub fn apply_rule_sunflower(
    oi: &OrderedInstance,
    sunflower: &SimpleSunflower,
    k: i64,
) -> Result<(Instance, i64), KernelError> {
    if sunflower.petals.len() as i64 <= k {
        return Err(KernelError::RuleInapplicable {
            petals: sunflower.petals.len(),
            k,
        });
    }
    check_simple(oi, sunflower)?;
    let edited = sunflower.center.edit_wrt(&oi.sigma);
    Ok((oi.instance.with_constraint(&edited)?, k - 1))
}

/// Result of removing a vertex selected in every constraint containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Removal {
    pub instance: Instance,
    pub removed: Vertex,
    /// New id `i` is old id `relabel[i]`.
    pub relabel: Vec<Vertex>,
}

/// Finds a FAST vertex selected in every constraint containing it and removes
/// it with its constraints. Inapplicable on `r` or fewer vertices.
pub fn rule_useless_vertex(inst: &Instance) -> Result<Option<Removal>, KernelError> {
    if inst.kind().family() != Family::Fast {
        return Err(KernelError::WrongFamily {
            expected: Family::Fast,
            found: inst.kind().family(),
        });
    }
    let (n, r) = (inst.n(), inst.arity());
    if n <= r {
        return Ok(None);
    }
    let containing = subset_count(n - 1, r - 1) as u64;
    let profile = in_degrees(inst)?;
    let mut useless = (0..n).filter(|&v| profile.in_degree[v] == containing);
    let Some(v) = useless.next() else {
        return Ok(None);
    };
    assert!(
        useless.next().is_none(),
        "two vertices selected in all their constraints"
    );
    let rest: Vec<Vertex> = (0..n).filter(|&u| u != v).collect();
    let (instance, relabel) = induced(inst, &rest)?;
    Ok(Some(Removal {
        instance,
        removed: v,
        relabel,
    }))
}

/// Petals `center ∪ {u}` for FAST.
///
/// For `r >= 3`, `u` ranges over `span⁻(center)`: any single-fault `(r+1)`-set
/// there is a conflict. For `r = 2` a single fault gives a conflict only when
/// `u` lies strictly inside the span, so petals are instead all directed
/// triangles through the arc, found anywhere in the instance.
pub fn find_rfast_sunflower(
    oi: &OrderedInstance,
    center: &Constraint,
    k: i64,
) -> Result<Option<SimpleSunflower>, KernelError> {
    let kind = oi.instance.kind();
    if kind.family() != Family::Fast {
        return Err(KernelError::WrongFamily {
            expected: Family::Fast,
            found: kind.family(),
        });
    }
    require_inconsistent(oi, center)?;
    if k < 0 {
        return Err(KernelError::NegativeK(k));
    }
    let needed = k as usize + 1;
    let center_index = oi.instance.index_of(center.members())?;
    let candidates = if kind.arity() >= 3 {
        span_minus(center.members(), &oi.sigma)
    } else {
        oi.sigma.order().to_vec()
    };
    let mut petals = Vec::new();
    for u in candidates {
        if center.contains(u) {
            continue;
        }
        let petal = petal_with(center.members(), &[u]);
        let accepted = if kind.arity() >= 3 {
            is_single_fault_set(oi, &petal, center_index)
        } else {
            is_directed_triangle(&oi.instance, &petal)
        };
        if accepted {
            petals.push(petal);
            if petals.len() == needed {
                break;
            }
        }
    }
    Ok((petals.len() >= needed).then(|| SimpleSunflower {
        center: center.clone(),
        petals,
    }))
}

/// For FAST with `r = 2`: the three pairwise constraints of `t` form a cycle.
fn is_directed_triangle(inst: &Instance, t: &[Vertex]) -> bool {
    // Each vertex is selected (last) in exactly one of its two pairs iff cyclic.
    let winner = |a: Vertex, b: Vertex| inst.get(crate::model::lex_rank(&[a, b], inst.n())).selected[0];
    let wins = [winner(t[0], t[1]), winner(t[0], t[2]), winner(t[1], t[2])];
    t.iter().all(|v| wins.iter().filter(|&&w| w == *v).count() == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleId {
    /// Sunflower rule for simply characterized families.
    Sunflower,
    /// Useless-vertex removal (FAST).
    UselessVertex,
    /// Sunflower rule for FAST.
    RfastSunflower,
}

impl RuleId {
    pub fn tag(self) -> &'static str {
        match self {
            RuleId::Sunflower => "rule1",
            RuleId::UselessVertex => "rule2",
            RuleId::RfastSunflower => "rule3",
        }
    }
}

/// One rule application, in the input instance's vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleRecord {
    pub rule: RuleId,
    pub center: Vec<Vertex>,
    pub old_selection: Vec<Vertex>,
    pub new_selection: Vec<Vertex>,
    pub petals: usize,
    pub removed: Option<Vertex>,
    pub k_before: i64,
    pub k_after: i64,
}

fn join(ids: &[Vertex]) -> String {
    ids.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for RuleRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.removed {
            Some(v) => write!(
                f,
                "{} removed={} k={}->{}",
                self.rule.tag(),
                v,
                self.k_before,
                self.k_after
            ),
            None => write!(
                f,
                "{} center={} sel={}->{} petals={} k={}->{}",
                self.rule.tag(),
                join(&self.center),
                join(&self.old_selection),
                join(&self.new_selection),
                self.petals,
                self.k_before,
                self.k_after
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    pub instance: Instance,
    pub k: i64,
    /// Vertex `i` of `instance` is vertex `original_ids[i]` of the input.
    pub original_ids: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Reduced(ReducedInstance),
    TrivialYes,
    TrivialNo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelOutcome {
    pub verdict: Verdict,
    pub trace: Vec<RuleRecord>,
    /// Inconsistencies of the provider's ranking on the input (`p₀`).
    pub initial_cost: usize,
    /// Inconsistencies of the (restricted) ranking on the output, when reduced.
    pub final_cost: Option<usize>,
    /// Vertex bound guaranteed for a reduced output.
    pub size_bound: usize,
    /// Set when no rule applied although the instance is above the bound
    /// (possible only for FAST with `r = 2`). The output is still equivalent.
    pub stalled: bool,
}

impl KernelOutcome {
    pub fn reduced(&self) -> Option<&ReducedInstance> {
        match &self.verdict {
            Verdict::Reduced(r) => Some(r),
            _ => None,
        }
    }

    /// The answer of the kernel: trivial verdicts as they are, reduced
    /// instances decided by the oracle.
    pub fn decide(&self, oracle: &Oracle) -> Result<Decision, OracleError> {
        match &self.verdict {
            Verdict::TrivialYes => Ok(Decision::Yes),
            Verdict::TrivialNo => Ok(Decision::No),
            Verdict::Reduced(r) => oracle.decide(&r.instance, r.k),
        }
    }

    /// The output as an `(instance, k)` pair, using the canonical trivial
    /// instances for trivial verdicts.
    pub fn materialize(&self, kind: ProblemKind) -> Result<(Instance, i64), KernelError> {
        match &self.verdict {
            Verdict::Reduced(r) => Ok((r.instance.clone(), r.k)),
            Verdict::TrivialYes => trivial_instance(kind, Decision::Yes),
            Verdict::TrivialNo => trivial_instance(kind, Decision::No),
        }
    }

    pub fn count(&self, rule: RuleId) -> usize {
        self.trace.iter().filter(|t| t.rule == rule).count()
    }
}

#[derive(Debug, Clone, Default)]
pub struct KernelOptions {
    /// Check every petal of every applied sunflower with the oracle.
    pub debug_oracle_checks: bool,
    pub oracle: Oracle,
}

fn debug_check_petals(
    opts: &KernelOptions,
    inst: &Instance,
    sf: &SimpleSunflower,
) -> Result<(), KernelError> {
    if !opts.debug_oracle_checks {
        return Ok(());
    }
    for p in &sf.petals {
        if !opts.oracle.is_conflict(inst, p)? {
            return Err(KernelError::DebugCheck(format!(
                "petal {:?} around {} is not a conflict",
                p, sf.center
            )));
        }
    }
    Ok(())
}

fn record(
    rule: RuleId,
    sf: &SimpleSunflower,
    edited: &Constraint,
    ids: &[Vertex],
    k_before: i64,
) -> RuleRecord {
    let map = |xs: &[Vertex]| xs.iter().map(|&v| ids[v]).collect::<Vec<_>>();
    RuleRecord {
        rule,
        center: map(sf.center.members()),
        old_selection: map(sf.center.selection().as_slice()),
        new_selection: map(edited.selection().as_slice()),
        petals: sf.petals.len(),
        removed: None,
        k_before,
        k_after: k_before - 1,
    }
}

/// Kernel for `l_r`-simply characterized families.
///
/// With `p` the provider's inconsistency count: `p <= k` gives a trivial YES,
/// `p > q·k` (when the provider guarantees a factor `q`) a trivial NO. Then,
/// while `n > p(l_r − r) + (l_r − r)(k+1) + r`, a sunflower around the first
/// inconsistent constraint is found and its center edited; `k` dropping below
/// zero gives a trivial NO.
pub fn kernelize_characterized(
    inst: &Instance,
    k: i64,
    l_r: usize,
    provider: &RankingProvider,
    opts: &KernelOptions,
) -> Result<KernelOutcome, KernelError> {
    let kind = inst.kind();
    require_characterized(kind, l_r)?;
    if k < 0 {
        return Err(KernelError::NegativeK(k));
    }
    let r = kind.arity();
    let extras = l_r - r;
    let ProvidedRanking {
        ranking: sigma,
        factor,
    } = provider.rank(inst)?;
    let p0 = inst.count_inconsistent(&sigma);
    let size_bound = p0 * extras + extras * (k as usize + 1) + r;
    let outcome = |verdict, trace, final_cost| KernelOutcome {
        verdict,
        trace,
        initial_cost: p0,
        final_cost,
        size_bound,
        stalled: false,
    };
    if p0 as i64 <= k {
        return Ok(outcome(Verdict::TrivialYes, Vec::new(), None));
    }
    if let Some(q) = factor {
        if p0 as u64 > q * k as u64 {
            return Ok(outcome(Verdict::TrivialNo, Vec::new(), None));
        }
    }
    let ids: Vec<Vertex> = (0..inst.n()).collect();
    let mut oi = OrderedInstance::new(inst.clone(), sigma)?;
    let mut k = k;
    let mut p = p0;
    let mut trace = Vec::new();
    loop {
        let bound = p * extras + extras * (k as usize + 1) + r;
        if oi.instance.n() <= bound {
            let reduced = ReducedInstance {
                instance: oi.instance,
                k,
                original_ids: ids,
            };
            return Ok(outcome(Verdict::Reduced(reduced), trace, Some(p)));
        }
        let first = oi.instance.inconsistent_indices(&oi.sigma)[0];
        let center = oi.instance.get(first).to_constraint();
        let sf = find_simple_sunflower(&oi, &center, l_r, k)?.ok_or_else(|| KernelError::NoSunflower {
            center: center.clone(),
            needed: k as usize + 1,
        })?;
        debug_check_petals(opts, &oi.instance, &sf)?;
        let (next, next_k) = apply_rule_sunflower(&oi, &sf, k)?;
        trace.push(record(
            RuleId::Sunflower,
            &sf,
            &center.edit_wrt(&oi.sigma),
            &ids,
            k,
        ));
        oi.instance = next;
        k = next_k;
        p = oi.inconsistency_count();
        if k < 0 {
            return Ok(outcome(Verdict::TrivialNo, trace, None));
        }
    }
}

/// Kernel for FAST driven by Inc-Degree.
///
/// Trivial YES when `p <= k`, trivial NO when `p > 5k`. Otherwise alternates
/// exhaustive useless-vertex removal with the FAST sunflower rule on an
/// inconsistent constraint containing the σ-last vertex, until
/// `n <= p + k + r` (reduced, hence at most `6k + r` vertices) or `k < 0`.
///
/// When no sunflower exists, σ is first improved by adjacent swaps. If that
/// fails too, `r >= 3` is an error (it cannot happen), while for `r = 2` the
/// current instance is returned with [`KernelOutcome::stalled`] set.
pub fn kernelize_rfast(inst: &Instance, k: i64, opts: &KernelOptions) -> Result<KernelOutcome, KernelError> {
    let kind = inst.kind();
    if kind.family() != Family::Fast {
        return Err(KernelError::WrongFamily {
            expected: Family::Fast,
            found: kind.family(),
        });
    }
    if k < 0 {
        return Err(KernelError::NegativeK(k));
    }
    let r = kind.arity();
    let sigma = inc_degree_ranking(inst)?;
    let p0 = inst.count_inconsistent(&sigma);
    let size_bound = (INC_DEGREE_FACTOR as usize + 1) * k as usize + r;
    let outcome = |verdict, trace, final_cost| KernelOutcome {
        verdict,
        trace,
        initial_cost: p0,
        final_cost,
        size_bound,
        stalled: false,
    };
    if p0 as i64 <= k {
        return Ok(outcome(Verdict::TrivialYes, Vec::new(), None));
    }
    if p0 as u64 > INC_DEGREE_FACTOR * k as u64 {
        return Ok(outcome(Verdict::TrivialNo, Vec::new(), None));
    }
    let mut ids: Vec<Vertex> = (0..inst.n()).collect();
    let mut oi = OrderedInstance::new(inst.clone(), sigma)?;
    let mut k = k;
    let mut trace = Vec::new();
    loop {
        while let Some(rm) = rule_useless_vertex(&oi.instance)? {
            trace.push(RuleRecord {
                rule: RuleId::UselessVertex,
                center: Vec::new(),
                old_selection: Vec::new(),
                new_selection: Vec::new(),
                petals: 0,
                removed: Some(ids[rm.removed]),
                k_before: k,
                k_after: k,
            });
            oi.sigma = oi.sigma.restrict(&rm.relabel);
            ids = rm.relabel.iter().map(|&v| ids[v]).collect();
            oi.instance = rm.instance;
        }
        let p = oi.inconsistency_count();
        if p as i64 <= k {
            return Ok(outcome(Verdict::TrivialYes, trace, None));
        }
        if oi.instance.n() <= p + k as usize + r {
            let reduced = ReducedInstance {
                instance: oi.instance,
                k,
                original_ids: ids,
            };
            return Ok(outcome(Verdict::Reduced(reduced), trace, Some(p)));
        }
        let (center, sf) = match rfast_center(&oi, k) {
            Ok(found) => found,
            Err(KernelError::NoSunflower { .. }) if improve_by_adjacent_swaps(&mut oi) => continue,
            Err(KernelError::NoSunflower { .. }) if r == 2 => {
                let reduced = ReducedInstance {
                    instance: oi.instance,
                    k,
                    original_ids: ids,
                };
                let mut out = outcome(Verdict::Reduced(reduced), trace, Some(p));
                out.stalled = true;
                return Ok(out);
            }
            Err(e) => return Err(e),
        };
        debug_check_petals(opts, &oi.instance, &sf)?;
        let edited = center.edit_wrt(&oi.sigma);
        trace.push(record(RuleId::RfastSunflower, &sf, &edited, &ids, k));
        oi.instance = oi.instance.with_constraint(&edited)?;
        k -= 1;
        if k < 0 {
            return Ok(outcome(Verdict::TrivialNo, trace, None));
        }
    }
}

/// Adjacent-swap descent on σ. Returns whether the inconsistency count dropped.
fn improve_by_adjacent_swaps(oi: &mut OrderedInstance) -> bool {
    let start = oi.inconsistency_count();
    let mut cost = start;
    let mut improved = true;
    while improved {
        improved = false;
        for i in 0..oi.sigma.len().saturating_sub(1) {
            oi.sigma.swap_positions(i, i + 1);
            let c = oi.inconsistency_count();
            if c < cost {
                cost = c;
                improved = true;
            } else {
                oi.sigma.swap_positions(i, i + 1);
            }
        }
    }
    cost < start
}

/// Center and sunflower for the FAST rule. For `r >= 3` the center is the
/// first inconsistent constraint containing the σ-last vertex. For `r = 2`
/// every inconsistent constraint is tried, those containing the σ-last vertex
/// first.
fn rfast_center(oi: &OrderedInstance, k: i64) -> Result<(Constraint, SimpleSunflower), KernelError> {
    let last = oi.sigma.last().expect("non-empty instance");
    let bad = oi.instance.inconsistent_indices(&oi.sigma);
    let (with_last, others): (Vec<usize>, Vec<usize>) = bad
        .into_iter()
        .partition(|&i| oi.instance.get(i).members.contains(&last));
    let tried: Vec<usize> = if oi.instance.arity() >= 3 {
        with_last.into_iter().take(1).collect()
    } else {
        with_last.into_iter().chain(others).collect()
    };
    for &i in &tried {
        let center = oi.instance.get(i).to_constraint();
        if let Some(sf) = find_rfast_sunflower(oi, &center, k)? {
            return Ok((center, sf));
        }
    }
    let center = match tried.first() {
        Some(&i) => oi.instance.get(i).to_constraint(),
        None => {
            return Err(KernelError::Provider(
                "σ-last vertex lies in no inconsistent constraint".into(),
            ))
        }
    };
    Err(KernelError::NoSunflower {
        center,
        needed: k as usize + 1,
    })
}

/// Canonical small instances with a known answer and `k = 0`.
///
/// YES: the consistent instance on `r` vertices. NO: `r+1` vertices ordered by
/// id, consistent except for the constraint skipping vertex 1, which gets the
/// first violating selection. Both answers are confirmed by the oracle.
pub fn trivial_instance(kind: ProblemKind, verdict: Decision) -> Result<(Instance, i64), KernelError> {
    let r = kind.arity();
    let inst = match verdict {
        Decision::Yes => Instance::consistent_with(kind, &Ranking::identity(r)),
        Decision::No => {
            let sigma = Ranking::identity(r + 1);
            let members: Vec<Vertex> = (0..=r).filter(|&v| v != 1).collect();
            let sel: Selection = violating_selections(kind.family(), &members).swap_remove(0);
            let fault = Constraint::new(kind, members, sel)?;
            Instance::consistent_with(kind, &sigma).with_constraint(&fault)?
        }
    };
    let got = Oracle::default().decide(&inst, 0)?;
    if got != verdict {
        return Err(KernelError::DebugCheck(format!(
            "canonical {verdict:?} instance decided {got:?}"
        )));
    }
    Ok((inst, 0))
}
