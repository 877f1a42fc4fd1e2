mod common;

use std::io::Cursor;

use proptest::prelude::*;
use sparse_summa::gen::{er_generate, rmat_edges, rmat_generate, RmatParams};
use sparse_summa::matrix::{
    permute_symmetric, random_permutation, random_symmetric_permute, read_matrix_market, read_matrix_market_from,
    write_matrix_market, write_matrix_market_to, Triple, TripleList,
};
use sparse_summa::Error;

use common::*;

fn parse(s: &str) -> sparse_summa::Result<TripleList<f64>> {
    read_matrix_market_from(Cursor::new(s))
}

#[test]
fn symmetric_file_is_expanded() {
    let t =
        parse("%%MatrixMarket matrix coordinate real symmetric\n% comment\n3 3 3\n1 1 2.5\n3 1 -1\n3 2 4\n").unwrap();
    let got: Vec<_> = t.iter().map(|e| (e.row, e.col, e.value)).collect();
    assert_eq!(
        got,
        vec![(0, 0, 2.5), (2, 0, -1.0), (2, 1, 4.0), (0, 2, -1.0), (1, 2, 4.0)]
    );
}

#[test]
fn pattern_integer_and_explicit_zero() {
    let t = parse("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n2 1\n").unwrap();
    assert_eq!(t.triples(), &[Triple::new(1, 0, 1.0)]);
    let t = parse("%%MatrixMarket matrix coordinate integer general\n2 2 2\n1 1 0\n2 2 7\n").unwrap();
    assert_eq!(t.triples(), &[Triple::new(0, 0, 0.0), Triple::new(1, 1, 7.0)]);
}

#[test]
fn malformed_files_report_lines() {
    let cases = [
        ("", 1),
        ("%%MatrixMarket matrix array real general\n1 1\n1\n", 1),
        ("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n", 3),
        ("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 x\n", 3),
        ("%%MatrixMarket matrix coordinate real symmetric\n2 3 0\n", 2),
    ];
    for (text, line) in cases {
        match parse(text) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?} gave {other:?}"),
        }
    }
    assert!(matches!(
        parse("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n"),
        Err(Error::Parse { .. })
    ));
    assert!(matches!(read_matrix_market("/nonexistent/file.mtx"), Err(Error::Io(_))));
}

#[test]
fn file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.mtx");
    let t = TripleList::new(
        4,
        6,
        vec![
            Triple::new(3, 5, 1e-300),
            Triple::new(0, 0, 0.0),
            Triple::new(2, 1, -7.25),
        ],
    )
    .unwrap();
    write_matrix_market(&t, &path).unwrap();
    assert_eq!(read_matrix_market(&path).unwrap(), t);
}

proptest! {
    #[test]
    fn in_memory_round_trip(seed: u64, m in 1usize..30, n in 1usize..30, d in 0.0f64..0.5) {
        let t = random_int(&mut rng(seed), m, n, d).map_values(|v| v as f64 / 8.0);
        let mut buf = Vec::new();
        write_matrix_market_to(&t, &mut buf).unwrap();
        prop_assert_eq!(read_matrix_market_from(Cursor::new(buf)).unwrap(), t);
    }

    #[test]
    fn permutation_properties(seed: u64, n in 1usize..60, d in 0.0f64..0.3) {
        let t = random_int(&mut rng(seed), n, n, d);
        let perm = random_permutation(n, seed);
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..n).collect::<Vec<_>>());

        let mut inverse = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let pt = permute_symmetric(&t, &perm).unwrap();
        prop_assert_eq!(pt.nnz(), t.nnz());
        prop_assert_eq!(permute_symmetric(&pt, &inverse).unwrap(), t.clone());
        prop_assert_eq!(random_symmetric_permute(&t, seed).unwrap(), pt.clone());
        let dense = to_dense(&t);
        for e in pt.iter() {
            prop_assert_eq!(dense[inverse[e.row]][inverse[e.col]], e.value);
        }
    }
}

#[test]
fn bad_permutations_rejected() {
    let t = TripleList::<f64>::identity(3, 1.0);
    assert!(permute_symmetric(&t, &[0, 1]).is_err());
    assert!(permute_symmetric(&t, &[0, 1, 1]).is_err());
    assert!(permute_symmetric(&TripleList::<f64>::empty(2, 3), &[0, 1]).is_err());
}

/// Pearson chi-square of the first recursion level against the quadrant
/// probabilities `probs`; 16.27 is the 0.999 quantile with 3 degrees of
/// freedom.
fn quadrant_chi_square(p: &RmatParams, probs: [f64; 4]) -> f64 {
    let edges = rmat_edges(p).unwrap();
    let half = p.dimension() / 2;
    let mut counts = [0f64; 4];
    for (r, c) in &edges {
        counts[2 * usize::from(*r >= half) + usize::from(*c >= half)] += 1.0;
    }
    let total = edges.len() as f64;
    probs
        .iter()
        .zip(counts)
        .map(|(prob, seen)| {
            let expected = prob * total;
            (seen - expected).powi(2) / expected
        })
        .sum()
}

#[test]
fn rmat_quadrants_follow_seed() {
    for p in [RmatParams::g500(10, 1), RmatParams::ssca(10, 2), RmatParams::er(10, 3)] {
        let chi = quadrant_chi_square(&p, [p.a, p.b, p.c, p.d]);
        assert!(chi < 16.27, "{p:?}: chi-square {chi}");
    }
    // The test has power: a mildly different seed is rejected.
    let skewed = RmatParams::new(10, [0.52, 0.19, 0.19, 0.10], 16, 1);
    assert!(quadrant_chi_square(&skewed, [0.57, 0.19, 0.19, 0.05]) > 16.27);
}

#[test]
fn rmat_values_count_duplicates() {
    let p = RmatParams::g500(8, 4);
    let t = rmat_generate(&p).unwrap();
    assert!(t.is_reduced());
    assert_eq!(t.iter().map(|e| e.value).sum::<f64>(), p.drawn_entries() as f64);
    let mut bad = p.clone();
    bad.a = 0.9;
    assert!(rmat_generate(&bad).is_err());
    bad = p.clone();
    bad.max_entries = 100;
    assert!(rmat_generate(&bad).is_err());
}

#[test]
fn er_nnz_is_binomial() {
    let (n, d) = (4000usize, 6.0);
    let prob = d / n as f64;
    let trials = (n * n) as f64;
    let sd = (trials * prob * (1.0 - prob)).sqrt();
    for seed in 0..5 {
        let t = er_generate(n, d, seed).unwrap();
        assert!(t.is_reduced());
        let z = (t.nnz() as f64 - trials * prob) / sd;
        assert!(z.abs() < 4.0, "seed {seed}: z = {z}");
    }
    assert_eq!(er_generate(10, 0.0, 1).unwrap().nnz(), 0);
    assert_eq!(er_generate(10, 10.0, 1).unwrap().nnz(), 100);
    assert!(er_generate(10, 11.0, 1).is_err());
}
