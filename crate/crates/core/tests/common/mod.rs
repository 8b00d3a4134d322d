//! Independent re-implementation of the semantics, working from raw records.

#![allow(dead_code)]

use itertools::Itertools;
use ranking_csp::Instance;

#[derive(Debug, Clone)]
pub struct Raw {
    pub family: String,
    pub n: usize,
    pub r: usize,
    pub records: Vec<(Vec<usize>, Vec<usize>)>,
}

/// Reads the text format with plain string handling.
pub fn raw_from_text(text: &str) -> Raw {
    let mut lines = text.lines();
    let head: Vec<&str> = lines.next().unwrap().split(' ').collect();
    let (n, r): (usize, usize) = (head[3].parse().unwrap(), head[4].parse().unwrap());
    let records = lines
        .map(|l| {
            let nums: Vec<usize> = l.split(' ').map(|t| t.parse().unwrap()).collect();
            (nums[..r].to_vec(), nums[r..].to_vec())
        })
        .collect();
    Raw {
        family: head[2].to_string(),
        n,
        r,
        records,
    }
}

pub fn raw_from(inst: &Instance) -> Raw {
    Raw {
        family: inst.kind().family().tag().to_string(),
        n: inst.n(),
        r: inst.arity(),
        records: inst
            .iter()
            .map(|c| (c.members.to_vec(), c.selected.to_vec()))
            .collect(),
    }
}

/// `order[i]` is the vertex at position i.
pub fn satisfied(family: &str, members: &[usize], sel: &[usize], order: &[usize]) -> bool {
    let seen: Vec<usize> = order.iter().copied().filter(|v| members.contains(v)).collect();
    match family {
        "betweenness" => {
            let ends = [seen[0], seen[seen.len() - 1]];
            (ends[0] == sel[0] && ends[1] == sel[1]) || (ends[0] == sel[1] && ends[1] == sel[0])
        }
        "fast" => seen[seen.len() - 1] == sel[0],
        "tfast" => seen == sel,
        other => panic!("unknown family {other}"),
    }
}

pub fn cost(raw: &Raw, order: &[usize]) -> usize {
    raw.records
        .iter()
        .filter(|(m, s)| !satisfied(&raw.family, m, s, order))
        .count()
}

pub fn brute_opt(raw: &Raw) -> usize {
    (0..raw.n)
        .permutations(raw.n)
        .map(|p| cost(raw, &p))
        .min()
        .unwrap_or(0)
}

/// Number of r-subsets containing `v` in which `v` comes last under `order`.
pub fn left_by_enumeration(order: &[usize], r: usize, v: usize) -> u64 {
    let n = order.len();
    (0..n)
        .combinations(r)
        .filter(|c| c.contains(&v))
        .filter(|c| {
            let pos = |x: usize| order.iter().position(|&y| y == x).unwrap();
            c.iter().all(|&x| pos(x) <= pos(v))
        })
        .count() as u64
}
