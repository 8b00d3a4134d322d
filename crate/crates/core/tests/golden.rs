mod common;

use std::path::PathBuf;

use ranking_csp::{generate, oracle, parse, serialize, Family, GeneratorMode, GeneratorSpec, ProblemKind};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// File name, generator spec, and optimum found by an independent enumerator.
fn cases() -> Vec<(&'static str, GeneratorSpec, usize)> {
    let spec = |family: Family, r: usize, n: usize, mode, seed| GeneratorSpec {
        kind: ProblemKind::new(family, r).unwrap(),
        n,
        mode,
        seed,
    };
    use Family::*;
    use GeneratorMode::*;
    vec![
        ("fast-r2-n6-uniform-seed7.rcsp", spec(Fast, 2, 6, Uniform, 7), 2),
        ("fast-r3-n6-uniform-seed3.rcsp", spec(Fast, 3, 6, Uniform, 3), 8),
        (
            "fast-r3-n7-planted3-seed1.rcsp",
            spec(Fast, 3, 7, Planted { edits: 3 }, 1),
            3,
        ),
        (
            "betweenness-r3-n6-planted2-seed5.rcsp",
            spec(Betweenness, 3, 6, Planted { edits: 2 }, 5),
            2,
        ),
        (
            "betweenness-r4-n6-uniform-seed9.rcsp",
            spec(Betweenness, 4, 6, Uniform, 9),
            9,
        ),
        (
            "tfast-r3-n5-planted2-seed2.rcsp",
            spec(TransitiveFast, 3, 5, Planted { edits: 2 }, 2),
            2,
        ),
        (
            "tfast-r4-n5-uniform-seed4.rcsp",
            spec(TransitiveFast, 4, 5, Uniform, 4),
            3,
        ),
    ]
}

#[test]
fn every_golden_file_is_listed() {
    let mut on_disk: Vec<String> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    on_disk.sort();
    let mut listed: Vec<String> = cases().iter().map(|c| c.0.to_string()).collect();
    listed.sort();
    assert_eq!(on_disk, listed);
}

#[test]
fn round_trip_is_byte_identical() {
    for (name, _, _) in cases() {
        let text = std::fs::read_to_string(golden_dir().join(name)).unwrap();
        assert_eq!(serialize(&parse(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn generator_reproduces_golden_bytes() {
    for (name, spec, _) in cases() {
        let text = std::fs::read_to_string(golden_dir().join(name)).unwrap();
        assert_eq!(serialize(&generate(&spec).unwrap().instance), text, "{name}");
    }
}

#[test]
fn golden_optima_agree_with_independent_enumeration() {
    for (name, _, opt) in cases() {
        let text = std::fs::read_to_string(golden_dir().join(name)).unwrap();
        let raw = common::raw_from_text(&text);
        assert_eq!(common::brute_opt(&raw), opt, "{name}");
        let inst = parse(&text).unwrap();
        let res = oracle::min_inconsistencies(&inst).unwrap();
        assert_eq!(res.opt, opt, "{name}");
        assert_eq!(common::cost(&raw, res.witness.order()), opt, "{name}");
    }
}

#[test]
fn inc_degree_on_golden_fast_instance() {
    let text = std::fs::read_to_string(golden_dir().join("fast-r3-n6-uniform-seed3.rcsp")).unwrap();
    let raw = common::raw_from_text(&text);
    let mut indeg = vec![0usize; raw.n];
    for (_, sel) in &raw.records {
        indeg[sel[0]] += 1;
    }
    let mut expected: Vec<usize> = (0..raw.n).collect();
    expected.sort_by_key(|&v| (indeg[v], v));
    let inst = parse(&text).unwrap();
    assert_eq!(
        ranking_csp::inc_degree_ranking(&inst).unwrap().order(),
        &expected[..]
    );
}
