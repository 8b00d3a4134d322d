//! Exhaustive ground truth.
//!
//! Rankings are enumerated depth-first in lexicographic order of vertex ids.
//! A constraint is evaluated at the moment its last member is placed, so the
//! inconsistency count of every prefix is known incrementally.

use crate::error::OracleError;
use crate::model::{satisfied, Family, Instance, Ranking, Vertex};

/// Largest vertex count enumerated unless the caller raises the cap.
pub const DEFAULT_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    /// Minimum number of inconsistent constraints over all rankings.
    pub opt: usize,
    /// Lexicographically first ranking attaining `opt`.
    pub witness: Ranking,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
}

impl Decision {
    pub fn from_bool(yes: bool) -> Self {
        if yes {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }
}

/// Exhaustive solver with a refusal threshold on the vertex count.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, n: usize) -> Result<(), OracleError> {
        if n > self.cap {
            Err(OracleError::TooLarge { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Minimum over all `n!` rankings of the number of inconsistent constraints.
    pub fn min_inconsistencies(&self, inst: &Instance) -> Result<ExactResult, OracleError> {
        self.check(inst.n())?;
        let mut search = Search::new(inst);
        search.minimize(0, 0);
        Ok(ExactResult {
            opt: search.best,
            witness: Ranking::new(search.best_order).expect("enumerated permutation"),
        })
    }

    /// First ranking (lexicographic order) with at most `k` inconsistent
    /// constraints, if any. Prefixes already above `k` are not extended.
    pub fn ranking_within(&self, inst: &Instance, k: usize) -> Result<Option<Ranking>, OracleError> {
        self.check(inst.n())?;
        let mut search = Search::new(inst);
        search.best = k + 1;
        if search.find_within(0, 0, k) {
            Ok(Some(
                Ranking::new(search.order.clone()).expect("enumerated permutation"),
            ))
        } else {
            Ok(None)
        }
    }

    /// YES iff some ranking has at most `k` inconsistent constraints.
    pub fn decide(&self, inst: &Instance, k: i64) -> Result<Decision, OracleError> {
        if k < 0 {
            self.check(inst.n())?;
            return Ok(Decision::No);
        }
        Ok(Decision::from_bool(
            self.ranking_within(inst, k as usize)?.is_some(),
        ))
    }

    /// True iff no ranking is consistent with the instance induced by `subset`.
    pub fn is_conflict(&self, inst: &Instance, subset: &[Vertex]) -> Result<bool, OracleError> {
        if subset.len() < inst.arity() {
            return Ok(false);
        }
        self.check(subset.len())?;
        let (sub, _) = crate::model::induced(inst, subset).expect("subset large enough and in range");
        Ok(self.ranking_within(&sub, 0)?.is_none())
    }
}

/// Convenience wrappers using the default cap.
pub fn min_inconsistencies(inst: &Instance) -> Result<ExactResult, OracleError> {
    Oracle::default().min_inconsistencies(inst)
}

pub fn decide(inst: &Instance, k: i64) -> Result<Decision, OracleError> {
    Oracle::default().decide(inst, k)
}

pub fn is_conflict(inst: &Instance, subset: &[Vertex]) -> Result<bool, OracleError> {
    Oracle::default().is_conflict(inst, subset)
}

struct Search<'a> {
    inst: &'a Instance,
    family: Family,
    n: usize,
    /// For each vertex, the constraints containing it, with their member bitmask.
    incident: Vec<Vec<(u64, usize)>>,
    order: Vec<Vertex>,
    pos: Vec<usize>,
    placed: u64,
    best: usize,
    best_order: Vec<Vertex>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance) -> Self {
        let n = inst.n();
        assert!(n <= 64, "bitmask search supports at most 64 vertices");
        let mut incident = vec![Vec::new(); n];
        for c in inst.iter() {
            let mask = c.members.iter().fold(0u64, |m, &v| m | (1 << v));
            for &v in c.members {
                incident[v].push((mask, c.index));
            }
        }
        Self {
            inst,
            family: inst.kind().family(),
            n,
            incident,
            order: Vec::with_capacity(n),
            pos: vec![usize::MAX; n],
            placed: 0,
            best: usize::MAX,
            best_order: (0..n).collect(),
        }
    }

    /// Inconsistencies completed by placing `v` at the end of the current prefix.
    fn place(&mut self, v: Vertex) -> usize {
        self.pos[v] = self.order.len();
        self.order.push(v);
        self.placed |= 1 << v;
        let mut bad = 0;
        for &(mask, idx) in &self.incident[v] {
            if mask & !self.placed == 0 {
                let c = self.inst.get(idx);
                if !satisfied(self.family, c.members, c.selected, &self.pos) {
                    bad += 1;
                }
            }
        }
        bad
    }

    fn unplace(&mut self, v: Vertex) {
        self.order.pop();
        self.placed &= !(1 << v);
        self.pos[v] = usize::MAX;
    }

    fn minimize(&mut self, depth: usize, count: usize) {
        if depth == self.n {
            if count < self.best {
                self.best = count;
                self.best_order.clone_from(&self.order);
            }
            return;
        }
        for v in 0..self.n {
            if self.placed & (1 << v) != 0 {
                continue;
            }
            let added = self.place(v);
            self.minimize(depth + 1, count + added);
            self.unplace(v);
        }
    }

    fn find_within(&mut self, depth: usize, count: usize, k: usize) -> bool {
        if depth == self.n {
            return true;
        }
        for v in 0..self.n {
            if self.placed & (1 << v) != 0 {
                continue;
            }
            let added = self.place(v);
            if count + added <= k && self.find_within(depth + 1, count + added, k) {
                return true;
            }
            self.unplace(v);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Constraint, ProblemKind, Selection};

    #[test]
    fn consistent_instance_has_zero_opt() {
        let sigma = Ranking::new(vec![2, 0, 3, 1, 4]).unwrap();
        for kind in [
            ProblemKind::betweenness(3).unwrap(),
            ProblemKind::fast(2).unwrap(),
            ProblemKind::transitive_fast(3).unwrap(),
        ] {
            let inst = Instance::consistent_with(kind, &sigma);
            let res = min_inconsistencies(&inst).unwrap();
            assert_eq!(res.opt, 0);
            assert_eq!(inst.count_inconsistent(&res.witness), 0);
            assert!(decide(&inst, 0).unwrap().is_yes());
        }
    }

    #[test]
    fn planted_single_fault() {
        let kind = ProblemKind::betweenness(3).unwrap();
        let sigma = Ranking::identity(5);
        let inst = Instance::consistent_with(kind, &sigma);
        let fault = Constraint::new(kind, vec![0, 2, 4], Selection::Pair([0, 2])).unwrap();
        let inst = inst.with_constraint(&fault).unwrap();
        let res = min_inconsistencies(&inst).unwrap();
        assert!(res.opt <= 1);
        assert_eq!(decide(&inst, 0).unwrap(), Decision::from_bool(res.opt == 0));
        assert!(decide(&inst, 1).unwrap().is_yes());
        assert_eq!(decide(&inst, -1).unwrap(), Decision::No);
    }

    #[test]
    fn witness_is_lexicographically_first() {
        // FAST r=2 on 3 vertices, all arcs into vertex 2 except 0 -> 1 reversed.
        let kind = ProblemKind::fast(2).unwrap();
        let inst = Instance::from_fn(kind, 3, |m| match m {
            [0, 1] => Selection::Single(0),
            [a, b] => Selection::Single(*a.max(b)),
            _ => unreachable!(),
        })
        .unwrap();
        let res = min_inconsistencies(&inst).unwrap();
        assert_eq!(res.opt, 0);
        assert_eq!(res.witness.order(), &[1, 0, 2]);
    }

    #[test]
    fn cap_is_enforced() {
        let inst = Instance::consistent_with(ProblemKind::fast(2).unwrap(), &Ranking::identity(6));
        assert_eq!(
            Oracle::with_cap(5).min_inconsistencies(&inst),
            Err(OracleError::TooLarge { n: 6, cap: 5 })
        );
        assert!(Oracle::with_cap(5).decide(&inst, 0).is_err());
    }

    #[test]
    fn fast_conflict_examples() {
        // r=3, C = {0,1,2,3} consecutive under identity.
        let kind = ProblemKind::fast(3).unwrap();
        let base = Instance::consistent_with(kind, &Ranking::identity(4));
        let last = Constraint::new(kind, vec![1, 2, 3], Selection::Single(1)).unwrap();
        assert!(is_conflict(&base.with_constraint(&last).unwrap(), &[0, 1, 2, 3]).unwrap());
        let first = Constraint::new(kind, vec![0, 1, 2], Selection::Single(0)).unwrap();
        assert!(!is_conflict(&base.with_constraint(&first).unwrap(), &[0, 1, 2, 3]).unwrap());
        assert!(!is_conflict(&base, &[0, 1, 2, 3]).unwrap());
        assert!(!is_conflict(&base, &[0, 1]).unwrap());
    }
}
