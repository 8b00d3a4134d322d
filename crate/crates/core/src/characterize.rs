//! Conflict structure of sets carrying exactly one inconsistent constraint.
//!
//! The predicates here decide, without enumeration, whether an `(r+1)`-vertex
//! ordered set whose only inconsistent constraint is `S` is a conflict. They
//! depend only on where `S` sits inside the set (first `r`, last `r`, or with
//! a gap) and on which members of `S` are selected.

use std::fmt;

use thiserror::Error;

use crate::error::{ModelError, OracleError};
use crate::model::{Constraint, Family, Instance, OrderedInstance, ProblemKind, Ranking, Selection, Vertex};
use crate::oracle::Oracle;
use crate::rng::SeededRng;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterizeError {
    #[error("expected a {expected} instance, found {found}")]
    WrongFamily { expected: Family, found: Family },
    #[error("arity {found} is below the required {required}")]
    ArityTooSmall { required: usize, found: usize },
    #[error("configuration must span {expected} vertices, found {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("expected exactly one inconsistent constraint, found {0}")]
    NotSingleFault(usize),
    #[error("constraint {0} is satisfied by the ranking")]
    SatisfiedConstraint(Constraint),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// An ordered instance with exactly one inconsistent constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleFaultConfig {
    oi: OrderedInstance,
    fault: Constraint,
}

impl SingleFaultConfig {
    pub fn new(oi: OrderedInstance) -> Result<Self, CharacterizeError> {
        let mut bad = oi.inconsistent_constraints();
        if bad.len() != 1 {
            return Err(CharacterizeError::NotSingleFault(bad.len()));
        }
        let fault = bad.pop().expect("one element");
        Ok(Self { oi, fault })
    }

    /// Identity ranking on `m` vertices, every constraint edited to agree with
    /// it except `members`, which receives `selection`.
    pub fn planted(
        kind: ProblemKind,
        m: usize,
        members: Vec<Vertex>,
        selection: Selection,
    ) -> Result<Self, CharacterizeError> {
        let sigma = Ranking::identity(m);
        let fault = Constraint::new(kind, members, selection)?;
        let inst = Instance::consistent_with(kind, &sigma).with_constraint(&fault)?;
        Self::new(OrderedInstance::new(inst, sigma)?)
    }

    pub fn ordered(&self) -> &OrderedInstance {
        &self.oi
    }

    pub fn instance(&self) -> &Instance {
        &self.oi.instance
    }

    pub fn sigma(&self) -> &Ranking {
        &self.oi.sigma
    }

    pub fn fault(&self) -> &Constraint {
        &self.fault
    }

    pub fn size(&self) -> usize {
        self.oi.instance.n()
    }

    /// Where the fault sits among the vertices of the configuration.
    pub fn placement(&self) -> FaultPlacement {
        let n = self.size();
        let r = self.fault.arity();
        let mut pos: Vec<usize> = self
            .fault
            .members()
            .iter()
            .map(|&v| self.sigma().position(v))
            .collect();
        pos.sort_unstable();
        if pos[r - 1] - pos[0] + 1 > r {
            FaultPlacement::Unconsecutive
        } else if pos[0] == 0 {
            FaultPlacement::FirstBlock
        } else if pos[r - 1] == n - 1 {
            FaultPlacement::LastBlock
        } else {
            FaultPlacement::Interior
        }
    }
}

/// Position of the fault's members relative to the configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaultPlacement {
    /// Some non-member lies between two members.
    Unconsecutive,
    /// The members are the first `r` vertices.
    FirstBlock,
    /// The members are the last `r` vertices.
    LastBlock,
    /// Consecutive but touching neither end (impossible on `r+1` vertices).
    Interior,
}

/// Shape of a betweenness pair, in the fault's own σ order `t_0 < ... < t_{r-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairPattern {
    /// `{t_0, t_1}`
    FirstSecond,
    /// `{t_0, t_b}` with `2 <= b <= r-2`
    FirstInterior,
    /// `{t_a, t_b}` with `1 <= a < b <= r-2`
    BothInterior,
    /// `{t_a, t_{r-1}}` with `1 <= a <= r-3`
    InteriorLast,
    /// `{t_{r-2}, t_{r-1}}`
    PenultimateLast,
}

impl PairPattern {
    /// `None` for the extremes pair, which is the satisfied one.
    pub fn of(a: usize, b: usize, r: usize) -> Option<Self> {
        let (a, b) = (a.min(b), a.max(b));
        Some(match (a, b) {
            (0, e) if e == r - 1 => return None,
            (0, 1) => PairPattern::FirstSecond,
            (0, _) => PairPattern::FirstInterior,
            (a, e) if e == r - 1 && a == r - 2 => PairPattern::PenultimateLast,
            (_, e) if e == r - 1 => PairPattern::InteriorLast,
            _ => PairPattern::BothInterior,
        })
    }
}

/// One case of the betweenness `(r+1)`-vertex analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecisionRow {
    pub case: &'static str,
    pub placement: FaultPlacement,
    pub patterns: &'static [PairPattern],
    pub conflict: bool,
}

use PairPattern::*;

/// Betweenness (`r >= 4`) on `r+1` vertices with a single fault: every
/// (placement, pattern) combination maps to exactly one row.
pub const RBIT_DECISION_TABLE: &[DecisionRow] = &[
    DecisionRow {
        case: "gap: one selected vertex out of place",
        placement: FaultPlacement::Unconsecutive,
        patterns: &[FirstSecond, FirstInterior, InteriorLast, PenultimateLast],
        conflict: true,
    },
    DecisionRow {
        case: "gap: both selected vertices out of place",
        placement: FaultPlacement::Unconsecutive,
        patterns: &[BothInterior],
        conflict: true,
    },
    DecisionRow {
        case: "first block: {t0, interior} (swap with t_r-1 repairs)",
        placement: FaultPlacement::FirstBlock,
        patterns: &[FirstInterior],
        conflict: false,
    },
    DecisionRow {
        case: "first block: {t0, t1}",
        placement: FaultPlacement::FirstBlock,
        patterns: &[FirstSecond],
        conflict: true,
    },
    DecisionRow {
        case: "first block: {interior, t_r-1}",
        placement: FaultPlacement::FirstBlock,
        patterns: &[InteriorLast, PenultimateLast],
        conflict: true,
    },
    DecisionRow {
        case: "first block: both interior",
        placement: FaultPlacement::FirstBlock,
        patterns: &[BothInterior],
        conflict: true,
    },
    DecisionRow {
        case: "last block: {interior, t_r-1} (mirror repair)",
        placement: FaultPlacement::LastBlock,
        patterns: &[InteriorLast],
        conflict: false,
    },
    DecisionRow {
        case: "last block: {t_r-2, t_r-1}",
        placement: FaultPlacement::LastBlock,
        patterns: &[PenultimateLast],
        conflict: true,
    },
    DecisionRow {
        case: "last block: {t0, interior}",
        placement: FaultPlacement::LastBlock,
        patterns: &[FirstSecond, FirstInterior],
        conflict: true,
    },
    DecisionRow {
        case: "last block: both interior",
        placement: FaultPlacement::LastBlock,
        patterns: &[BothInterior],
        conflict: true,
    },
];

fn require_family(kind: ProblemKind, family: Family, min_arity: usize) -> Result<(), CharacterizeError> {
    if kind.family() != family {
        return Err(CharacterizeError::WrongFamily {
            expected: family,
            found: kind.family(),
        });
    }
    if kind.arity() < min_arity {
        return Err(CharacterizeError::ArityTooSmall {
            required: min_arity,
            found: kind.arity(),
        });
    }
    Ok(())
}

fn require_size(cfg: &SingleFaultConfig, expected: usize) -> Result<(), CharacterizeError> {
    if cfg.size() != expected {
        return Err(CharacterizeError::WrongSize {
            expected,
            found: cfg.size(),
        });
    }
    Ok(())
}

/// Local σ-indices of a betweenness pair within its constraint.
fn pair_local_indices(s: &Constraint, sigma: &Ranking) -> (usize, usize) {
    let Selection::Pair([x, y]) = *s.selection() else {
        unreachable!("betweenness constraints carry pairs")
    };
    let mut ordered = s.members().to_vec();
    sigma.sort_by_position(&mut ordered);
    let local = |v| {
        ordered
            .iter()
            .position(|&m| m == v)
            .expect("selected vertex is a member")
    };
    let (a, b) = (local(x), local(y));
    (a.min(b), a.max(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Compatibility {
    pub right_compatible: bool,
    pub left_compatible: bool,
}

/// Right-compatible: `sel = {t_0, t_l}` with `2 <= l <= r-2` (0-based).
/// Left-compatible: `sel = {t_l, t_{r-1}}` with `1 <= l <= r-3`.
pub fn classify_compatibility(s: &Constraint, sigma: &Ranking) -> Result<Compatibility, CharacterizeError> {
    if s.family() != Family::Betweenness {
        return Err(CharacterizeError::WrongFamily {
            expected: Family::Betweenness,
            found: s.family(),
        });
    }
    let r = s.arity();
    if r < 4 {
        return Err(CharacterizeError::ArityTooSmall {
            required: 4,
            found: r,
        });
    }
    if s.members().iter().any(|&v| v >= sigma.len()) {
        return Err(ModelError::DomainMismatch {
            expected: s.members().iter().max().copied().unwrap_or(0) + 1,
            found: sigma.len(),
        }
        .into());
    }
    if s.is_satisfied(sigma) {
        return Err(CharacterizeError::SatisfiedConstraint(s.clone()));
    }
    let (a, b) = pair_local_indices(s, sigma);
    Ok(Compatibility {
        right_compatible: a == 0 && (2..=r - 2).contains(&b),
        left_compatible: b == r - 1 && (1..=r - 3).contains(&a),
    })
}

/// The decision-table row that covers a betweenness single-fault configuration on `r+1` vertices.
pub fn rbit_decision_row(cfg: &SingleFaultConfig) -> Result<&'static DecisionRow, CharacterizeError> {
    let kind = cfg.instance().kind();
    require_family(kind, Family::Betweenness, 4)?;
    require_size(cfg, kind.arity() + 1)?;
    let (a, b) = pair_local_indices(cfg.fault(), cfg.sigma());
    let pattern = PairPattern::of(a, b, kind.arity()).expect("fault is inconsistent");
    let placement = cfg.placement();
    Ok(RBIT_DECISION_TABLE
        .iter()
        .find(|row| row.placement == placement && row.patterns.contains(&pattern))
        .expect("decision table covers every configuration"))
}

/// Betweenness, `r >= 4`, `r+1` vertices: a conflict iff the fault has a gap,
/// or it is the first block and not right-compatible, or the last block and
/// not left-compatible.
pub fn rbit_single_fault_is_conflict(cfg: &SingleFaultConfig) -> Result<bool, CharacterizeError> {
    Ok(rbit_decision_row(cfg)?.conflict)
}

/// FAST, `r >= 3`, `r+1` vertices: a conflict iff the fault has a gap or is
/// the last block.
pub fn rfast_single_fault_is_conflict(cfg: &SingleFaultConfig) -> Result<bool, CharacterizeError> {
    let kind = cfg.instance().kind();
    require_family(kind, Family::Fast, 3)?;
    require_size(cfg, kind.arity() + 1)?;
    Ok(matches!(
        cfg.placement(),
        FaultPlacement::Unconsecutive | FaultPlacement::LastBlock
    ))
}

/// Every selection of `ordered` (members in σ order) that σ violates, in a
/// fixed order: betweenness pairs `(i, j)` lexicographic by local index;
/// FAST local indices ascending; transitive FAST permutations of local
/// indices in lexicographic order.
pub fn violating_selections(family: Family, ordered: &[Vertex]) -> Vec<Selection> {
    let r = ordered.len();
    match family {
        Family::Betweenness => {
            let mut out = Vec::new();
            for i in 0..r {
                for j in i + 1..r {
                    if (i, j) != (0, r - 1) {
                        let (x, y) = (ordered[i], ordered[j]);
                        out.push(Selection::Pair([x.min(y), x.max(y)]));
                    }
                }
            }
            out
        }
        Family::Fast => ordered[..r - 1].iter().map(|&v| Selection::Single(v)).collect(),
        Family::TransitiveFast => {
            let mut perm: Vec<usize> = (0..r).collect();
            let mut out = Vec::new();
            while next_permutation(&mut perm) {
                out.push(Selection::Order(perm.iter().map(|&i| ordered[i]).collect()));
            }
            out
        }
    }
}

pub(crate) fn violating_count(family: Family, r: usize) -> usize {
    match family {
        Family::Betweenness => r * (r - 1) / 2 - 1,
        Family::Fast => r - 1,
        Family::TransitiveFast => (1..=r).product::<usize>() - 1,
    }
}

/// Advances to the lexicographically next permutation; false after the last.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All single-fault configurations on `m` vertices under the identity
/// ranking: each r-subset paired with each of its violating selections.
pub fn single_fault_configurations(kind: ProblemKind, m: usize) -> Vec<SingleFaultConfig> {
    let mut out = Vec::new();
    crate::model::for_each_subset(m, kind.arity(), |members| {
        for sel in violating_selections(kind.family(), members) {
            out.push(
                SingleFaultConfig::planted(kind, m, members.to_vec(), sel).expect("valid planted fault"),
            );
        }
    });
    out
}

pub fn single_fault_count(kind: ProblemKind, m: usize) -> usize {
    crate::model::subset_count(m, kind.arity()) * violating_count(kind.family(), kind.arity())
}

/// A configuration the oracle found to be consistent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub fault: Constraint,
    pub consistent_ranking: Ranking,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizationReport {
    pub kind: ProblemKind,
    pub set_size: usize,
    pub total_configurations: usize,
    pub checked: usize,
    pub exhaustive: bool,
    pub counterexamples: Vec<Counterexample>,
}

impl CharacterizationReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for CharacterizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} single-fault sets of {} vertices: checked {} of {} ({}), counterexamples {}",
            self.kind,
            self.set_size,
            self.checked,
            self.total_configurations,
            if self.exhaustive { "exhaustive" } else { "sampled" },
            self.counterexamples.len()
        )?;
        for c in self.counterexamples.iter().take(10) {
            writeln!(f, "  fault {} consistent under {}", c.fault, c.consistent_ranking)?;
        }
        Ok(())
    }
}

/// Checks with the oracle that every single-fault set of `set_size` vertices
/// is a conflict. Exhaustive when the configuration count fits in `budget`,
/// otherwise `budget` seeded samples (with replacement).
pub fn verify_simple_characterization(
    kind: ProblemKind,
    set_size: usize,
    budget: usize,
    seed: u64,
    oracle: &Oracle,
) -> Result<CharacterizationReport, CharacterizeError> {
    let total = single_fault_count(kind, set_size);
    let exhaustive = total <= budget;
    let configs: Vec<SingleFaultConfig> = if exhaustive {
        single_fault_configurations(kind, set_size)
    } else {
        let mut rng = SeededRng::new(seed);
        let subsets = crate::model::all_subsets_flat(set_size, kind.arity());
        let r = kind.arity();
        (0..budget)
            .map(|_| {
                let s = rng.index(subsets.len() / r);
                let members = subsets[s * r..(s + 1) * r].to_vec();
                let mut options = violating_selections(kind.family(), &members);
                let sel = options.swap_remove(rng.index(options.len()));
                SingleFaultConfig::planted(kind, set_size, members, sel).expect("valid planted fault")
            })
            .collect()
    };
    let mut counterexamples = Vec::new();
    for cfg in &configs {
        if let Some(rk) = oracle.ranking_within(cfg.instance(), 0)? {
            counterexamples.push(Counterexample {
                fault: cfg.fault().clone(),
                consistent_ranking: rk,
            });
        }
    }
    Ok(CharacterizationReport {
        kind,
        set_size,
        total_configurations: total,
        checked: configs.len(),
        exhaustive,
        counterexamples,
    })
}

/// FAST single fault on the first `r` of `size` vertices, selecting local
/// index `selected` (< r-1). Such a set is never a conflict, whatever `size`.
pub fn fast_first_block_fault(
    r: usize,
    size: usize,
    selected: usize,
) -> Result<SingleFaultConfig, CharacterizeError> {
    let kind = ProblemKind::fast(r)?;
    if size < r {
        return Err(CharacterizeError::WrongSize {
            expected: r,
            found: size,
        });
    }
    SingleFaultConfig::planted(kind, size, (0..r).collect(), Selection::Single(selected))
}
