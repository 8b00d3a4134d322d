//! Inc-Degree ordering for FAST and the quantities its analysis is built on.
//!
//! For a ranking ρ and vertex v, `l_ρ(v)` counts the constraints in which v is
//! the ρ-maximum (its left constraints); by density it equals
//! `C(pos_ρ(v), r-1)`. `In(v)` counts the constraints selecting v. The
//! checkers return slacks (left side minus right side) so callers can look at
//! how tight each inequality is, not just whether it holds.

use num_integer::binomial;
use thiserror::Error;

use crate::error::ModelError;
use crate::model::{satisfied, Family, Instance, Ranking, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("operation is defined for FAST instances only, found {0}")]
    NotFast(Family),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn require_fast(inst: &Instance) -> Result<(), ApproxError> {
    match inst.kind().family() {
        Family::Fast => Ok(()),
        other => Err(ApproxError::NotFast(other)),
    }
}

/// `In(v)` for every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub in_degree: Vec<u64>,
}

impl DegreeProfile {
    pub fn total(&self) -> u64 {
        self.in_degree.iter().sum()
    }
}

/// `l_σ(v)` for every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftCounts {
    pub left: Vec<u64>,
}

pub fn in_degrees(inst: &Instance) -> Result<DegreeProfile, ApproxError> {
    require_fast(inst)?;
    let mut in_degree = vec![0u64; inst.n()];
    for c in inst.iter() {
        in_degree[c.selected[0]] += 1;
    }
    Ok(DegreeProfile { in_degree })
}

/// Vertices by ascending in-degree, ties by ascending id.
pub fn inc_degree_ranking(inst: &Instance) -> Result<Ranking, ApproxError> {
    let profile = in_degrees(inst)?;
    let mut order: Vec<Vertex> = (0..inst.n()).collect();
    order.sort_by_key(|&v| (profile.in_degree[v], v));
    Ok(Ranking::new(order)?)
}

pub fn left_counts(sigma: &Ranking, r: usize) -> LeftCounts {
    let left = (0..sigma.len())
        .map(|v| binomial(sigma.position(v) as u64, (r - 1) as u64))
        .collect();
    LeftCounts { left }
}

/// `𝒦(ρ, γ)`: constraints whose satisfaction differs between the two rankings.
pub fn csp_distance(inst: &Instance, rho: &Ranking, gamma: &Ranking) -> Result<usize, ApproxError> {
    inst.check_ranking(rho)?;
    inst.check_ranking(gamma)?;
    Ok(inst
        .iter()
        .filter(|c| c.is_satisfied(rho) != c.is_satisfied(gamma))
        .count())
}

fn abs_diff_sum(a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).map(|(&x, &y)| x.abs_diff(y)).sum()
}

/// Tallies behind `2 b_ρ >= Σ |l_ρ(v) - In(v)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxOneReport {
    /// `2 b_ρ`
    pub twice_cost: u64,
    /// `Σ |l_ρ(v) - In(v)|`
    pub deviation: u64,
    /// `Σ (W⁺_L(v) + W⁻_R(v))`, which must equal `twice_cost`.
    pub double_count: u64,
    /// Whether `min(l_ρ(v), In(v)) >= W⁻_L(v)` held at every vertex.
    pub per_vertex_min_bound: bool,
    /// Whether `W⁺_L(v) + W⁻_R(v) >= |l_ρ(v) - In(v)|` held at every vertex.
    pub per_vertex_bound: bool,
}

impl ApproxOneReport {
    pub fn slack(&self) -> i64 {
        self.twice_cost as i64 - self.deviation as i64
    }

    pub fn identity_holds(&self) -> bool {
        self.double_count == self.twice_cost
    }
}

pub fn check_lemma_approxone(inst: &Instance, rho: &Ranking) -> Result<ApproxOneReport, ApproxError> {
    require_fast(inst)?;
    inst.check_ranking(rho)?;
    let n = inst.n();
    let pos = rho.positions();
    // W⁻_L: left constraints selecting v; W⁺_L: left constraints not selecting v;
    // W⁻_R: non-left constraints selecting v.
    let mut w_minus_left = vec![0u64; n];
    let mut w_plus_left = vec![0u64; n];
    let mut w_minus_right = vec![0u64; n];
    let mut bad = 0u64;
    for c in inst.iter() {
        let top = *c.members.iter().max_by_key(|&&m| pos[m]).expect("non-empty");
        let sel = c.selected[0];
        if sel == top {
            w_minus_left[top] += 1;
        } else {
            w_plus_left[top] += 1;
            w_minus_right[sel] += 1;
        }
        if !satisfied(c.family, c.members, c.selected, pos) {
            bad += 1;
        }
    }
    let left = left_counts(rho, inst.arity()).left;
    let indeg = in_degrees(inst)?.in_degree;
    let mut per_vertex_min_bound = true;
    let mut per_vertex_bound = true;
    for v in 0..n {
        per_vertex_min_bound &= left[v].min(indeg[v]) >= w_minus_left[v];
        per_vertex_bound &= w_plus_left[v] + w_minus_right[v] >= left[v].abs_diff(indeg[v]);
    }
    Ok(ApproxOneReport {
        twice_cost: 2 * bad,
        deviation: abs_diff_sum(&left, &indeg),
        double_count: (0..n).map(|v| w_plus_left[v] + w_minus_right[v]).sum(),
        per_vertex_min_bound,
        per_vertex_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxTwoReport {
    /// `Σ |l_ρ(v) - In(v)|`
    pub deviation: u64,
    /// `Σ |l_σA(v) - In(v)|` for the Inc-Degree ranking σA.
    pub inc_degree_deviation: u64,
}

impl ApproxTwoReport {
    pub fn slack(&self) -> i64 {
        self.deviation as i64 - self.inc_degree_deviation as i64
    }
}

pub fn check_lemma_approxtwo(inst: &Instance, rho: &Ranking) -> Result<ApproxTwoReport, ApproxError> {
    require_fast(inst)?;
    inst.check_ranking(rho)?;
    let indeg = in_degrees(inst)?.in_degree;
    let sigma_a = inc_degree_ranking(inst)?;
    let r = inst.arity();
    Ok(ApproxTwoReport {
        deviation: abs_diff_sum(&left_counts(rho, r).left, &indeg),
        inc_degree_deviation: abs_diff_sum(&left_counts(&sigma_a, r).left, &indeg),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxThreeReport {
    /// `Σ |l_ρ(v) - l_γ(v)|`
    pub left_gap: u64,
    /// `|b_ρ - b_γ|`
    pub cost_gap: u64,
    /// `𝒦(ρ, γ)`
    pub distance: u64,
}

impl ApproxThreeReport {
    /// Slack against the cost difference.
    pub fn cost_slack(&self) -> i64 {
        self.left_gap as i64 - self.cost_gap as i64
    }

    /// Slack against the distance.
    pub fn distance_slack(&self) -> i64 {
        self.left_gap as i64 - self.distance as i64
    }
}

pub fn check_lemma_approxthree(
    inst: &Instance,
    rho: &Ranking,
    gamma: &Ranking,
) -> Result<ApproxThreeReport, ApproxError> {
    require_fast(inst)?;
    let distance = csp_distance(inst, rho, gamma)? as u64;
    let r = inst.arity();
    let b_rho = inst.count_inconsistent(rho) as u64;
    let b_gamma = inst.count_inconsistent(gamma) as u64;
    Ok(ApproxThreeReport {
        left_gap: abs_diff_sum(&left_counts(rho, r).left, &left_counts(gamma, r).left),
        cost_gap: b_rho.abs_diff(b_gamma),
        distance,
    })
}

/// Steepest-descent over transpositions: repeatedly applies the swap of two
/// positions that lowers `objective` most, until no swap lowers it.
pub fn hill_climb(start: Ranking, mut objective: impl FnMut(&Ranking) -> i64) -> Ranking {
    let n = start.len();
    let mut current = start;
    let mut value = objective(&current);
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in 0..n {
            for j in i + 1..n {
                current.swap_positions(i, j);
                let v = objective(&current);
                current.swap_positions(i, j);
                if v < value && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        match best {
            Some((v, i, j)) => {
                current.swap_positions(i, j);
                value = v;
            }
            None => return current,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ProblemKind, Selection};

    fn fast(r: usize) -> ProblemKind {
        ProblemKind::fast(r).unwrap()
    }

    #[test]
    fn in_degrees_of_consistent_instance() {
        let inst = Instance::consistent_with(fast(3), &Ranking::identity(4));
        assert_eq!(in_degrees(&inst).unwrap().in_degree, vec![0, 0, 1, 3]);
        assert_eq!(in_degrees(&inst).unwrap().total(), 4);
    }

    #[test]
    fn non_fast_is_rejected() {
        let inst = Instance::consistent_with(ProblemKind::betweenness(3).unwrap(), &Ranking::identity(4));
        assert_eq!(in_degrees(&inst), Err(ApproxError::NotFast(Family::Betweenness)));
        assert!(inc_degree_ranking(&inst).is_err());
        assert!(check_lemma_approxone(&inst, &Ranking::identity(4)).is_err());
    }

    #[test]
    fn inc_degree_recovers_consistent_ranking() {
        for r in 2..=4 {
            let sigma = Ranking::new(vec![4, 1, 5, 0, 3, 2]).unwrap();
            let inst = Instance::consistent_with(fast(r), &sigma);
            let got = inc_degree_ranking(&inst).unwrap();
            assert_eq!(inst.count_inconsistent(&got), 0);
        }
        let inst = Instance::consistent_with(fast(3), &Ranking::identity(5));
        assert_eq!(inc_degree_ranking(&inst).unwrap(), Ranking::identity(5));
    }

    #[test]
    fn left_count_small_positions() {
        let lc = left_counts(&Ranking::identity(6), 4);
        assert_eq!(lc.left, vec![0, 0, 0, 1, 4, 10]);
    }

    #[test]
    fn distance_examples() {
        let inst = Instance::consistent_with(fast(3), &Ranking::identity(5));
        let rho = Ranking::new(vec![4, 3, 2, 1, 0]).unwrap();
        assert_eq!(csp_distance(&inst, &rho, &rho).unwrap(), 0);
        let d = csp_distance(&inst, &Ranking::identity(5), &rho).unwrap();
        assert_eq!(d, inst.count_inconsistent(&rho));
        assert!(csp_distance(&inst, &Ranking::identity(4), &rho).is_err());
    }

    #[test]
    fn consistent_ranking_has_zero_slack() {
        let sigma = Ranking::identity(6);
        let inst = Instance::consistent_with(fast(3), &sigma);
        let one = check_lemma_approxone(&inst, &sigma).unwrap();
        assert_eq!((one.twice_cost, one.deviation, one.slack()), (0, 0, 0));
        assert!(one.identity_holds());
        assert_eq!(check_lemma_approxtwo(&inst, &sigma).unwrap().slack(), 0);
        let three = check_lemma_approxthree(&inst, &sigma, &sigma).unwrap();
        assert_eq!((three.left_gap, three.cost_gap, three.distance), (0, 0, 0));
    }

    #[test]
    fn approxtwo_is_zero_at_inc_degree() {
        let inst = Instance::from_fn(fast(3), 6, |m| Selection::Single(m[(m[0] + m[2]) % 3])).unwrap();
        let sa = inc_degree_ranking(&inst).unwrap();
        assert_eq!(check_lemma_approxtwo(&inst, &sa).unwrap().slack(), 0);
    }

    #[test]
    fn hill_climb_reaches_local_minimum() {
        // Minimizing the position of vertex 3 moves it to the front.
        let got = hill_climb(Ranking::identity(5), |rk| rk.position(3) as i64);
        assert_eq!(got.position(3), 0);
    }
}
