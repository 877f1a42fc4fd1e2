#![allow(dead_code)]

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparse_summa::matrix::{DcscMatrix, Triple, TripleList};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random reduced integer matrix; each cell present with probability
/// `density`, values in -9..=9 (zero included).
pub fn random_int(rng: &mut impl Rng, m: usize, n: usize, density: f64) -> TripleList<i64> {
    let mut t = Vec::new();
    for j in 0..n {
        for i in 0..m {
            if rng.random_bool(density) {
                t.push(Triple::new(i, j, rng.random_range(-9..=9)));
            }
        }
    }
    TripleList::from_sorted(m, n, t).unwrap()
}

/// Random reduced integer matrix with about `nnz` entries, drawn by
/// coordinate so large dimensions stay cheap.
pub fn random_sparse_int(rng: &mut impl Rng, m: usize, n: usize, nnz: usize) -> TripleList<i64> {
    let t = (0..nnz)
        .map(|_| Triple::new(rng.random_range(0..m), rng.random_range(0..n), rng.random_range(1..=5)))
        .collect();
    TripleList::new(m, n, t).unwrap().sum_duplicates_with(|a, b| a + b)
}

pub fn to_dense(t: &TripleList<i64>) -> Vec<Vec<i64>> {
    let mut d = vec![vec![0; t.ncols()]; t.nrows()];
    for e in t.iter() {
        d[e.row][e.col] += e.value;
    }
    d
}

/// Dense product plus the structural pattern (which cells receive at least
/// one product of stored entries).
pub fn dense_product(a: &TripleList<i64>, b: &TripleList<i64>) -> (Vec<Vec<i64>>, Vec<Vec<bool>>) {
    let bd = to_dense(b);
    let mut present_b = vec![vec![false; b.ncols()]; b.nrows()];
    for e in b.iter() {
        present_b[e.row][e.col] = true;
    }
    let mut c = vec![vec![0i64; b.ncols()]; a.nrows()];
    let mut s = vec![vec![false; b.ncols()]; a.nrows()];
    for e in a.iter() {
        for j in 0..b.ncols() {
            if present_b[e.col][j] {
                c[e.row][j] += e.value * bd[e.col][j];
                s[e.row][j] = true;
            }
        }
    }
    (c, s)
}

/// Does the sparse result match a dense oracle, pattern and values?
pub fn matches_dense(c: &TripleList<i64>, dense: &(Vec<Vec<i64>>, Vec<Vec<bool>>)) -> bool {
    let (vals, pattern) = dense;
    let expected_nnz: usize = pattern.iter().map(|r| r.iter().filter(|&&p| p).count()).sum();
    c.is_reduced()
        && c.nnz() == expected_nnz
        && c.iter().all(|e| pattern[e.row][e.col] && vals[e.row][e.col] == e.value)
}

pub fn dcsc(t: &TripleList<i64>) -> DcscMatrix<i64> {
    DcscMatrix::from_triples(t).unwrap()
}

/// Symmetric 0/1 adjacency without self loops.
pub fn undirected(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> TripleList<f64> {
    let t = edges
        .into_iter()
        .filter(|(u, v)| u != v)
        .flat_map(|(u, v)| [Triple::new(u, v, 1.0), Triple::new(v, u, 1.0)])
        .collect();
    TripleList::new(n, n, t).unwrap().sum_duplicates_with(|a, _| a)
}

pub fn adjacency_lists(t: &TripleList<f64>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); t.nrows()];
    for e in t.iter().filter(|e| e.row != e.col) {
        adj[e.row].push(e.col);
    }
    adj
}

/// BFS distances from `s`, capped at `limit` hops (farther = usize::MAX).
pub fn bfs(adj: &[Vec<usize>], s: usize, limit: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        if dist[u] == limit {
            continue;
        }
        for &v in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                q.push_back(v);
            }
        }
    }
    dist
}

/// Checks distance-2 independence and maximality by brute force.
pub fn is_valid_mis2(adj: &[Vec<usize>], members: &[usize]) -> Result<(), String> {
    let n = adj.len();
    let mut covered = vec![false; n];
    let mut is_member = vec![false; n];
    for &m in members {
        is_member[m] = true;
    }
    for &m in members {
        let d = bfs(adj, m, 2);
        for v in 0..n {
            if d[v] <= 2 {
                covered[v] = true;
                if v != m && is_member[v] {
                    return Err(format!("members {m} and {v} are within distance 2"));
                }
            }
        }
    }
    match covered.iter().position(|c| !c) {
        Some(v) => Err(format!("vertex {v} could still be added")),
        None => Ok(()),
    }
}

/// Graph families for MIS-2 checks: ER, R-MAT, path, 2D grid, star.
pub fn graph_family(rng: &mut impl Rng, kind: usize) -> TripleList<f64> {
    match kind % 5 {
        0 => {
            let n = rng.random_range(1..120);
            let p = rng.random_range(0.0..0.1);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.random_bool(p))
                .collect();
            undirected(n, edges)
        }
        1 => {
            let scale = rng.random_range(3..8);
            let p = sparse_summa::gen::RmatParams::g500(scale, rng.random());
            let edges = sparse_summa::gen::rmat_edges(&p).unwrap();
            undirected(1 << scale, edges)
        }
        2 => {
            let n = rng.random_range(1..150);
            undirected(n, (1..n).map(|v| (v - 1, v)))
        }
        3 => {
            let (w, h) = (rng.random_range(1..15), rng.random_range(1..15));
            let id = |x: usize, y: usize| y * w + x;
            let mut edges = Vec::new();
            for y in 0..h {
                for x in 0..w {
                    if x + 1 < w {
                        edges.push((id(x, y), id(x + 1, y)));
                    }
                    if y + 1 < h {
                        edges.push((id(x, y), id(x, y + 1)));
                    }
                }
            }
            undirected(w * h, edges)
        }
        _ => {
            let n = rng.random_range(1..80);
            undirected(n, (1..n).map(|v| (0, v)))
        }
    }
}
