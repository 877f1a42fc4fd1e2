use std::path::Path;
use std::process::{Command, Output};

use sparse_summa::matrix::{write_matrix_market, Triple, TripleList};

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spgemm-bench"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// (phase, bytes, messages) rows of a phase CSV, skipping anything printed
/// before its header.
fn phase_rows(text: &str) -> Vec<(String, u64, u64)> {
    let rows: Vec<_> = text
        .lines()
        .skip_while(|l| *l != "phase,seconds,bytes,messages")
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 4, "{l}");
            f[1].parse::<f64>().unwrap();
            (f[0].to_string(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 5);
    rows
}

#[test]
fn distributed_run_verifies_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("phases.csv");
    let o = bench(&[
        "--gen",
        "g500",
        "--scale",
        "8",
        "--grid",
        "2x2x2",
        "--block",
        "16",
        "--threads",
        "2",
        "--verify",
        "--int-values",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("verify A*A: ok"), "{out}");
    assert!(out.lines().any(|l| l.starts_with("A*A: nnz(A)=")));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("# p=8,c=2,b=16,t=2,matrix=g500-s8,op=square,seed=1"));
    let rows = phase_rows(&text);
    let names: Vec<&str> = rows.iter().map(|r| r.0.as_str()).collect();
    assert_eq!(
        names,
        ["Broadcast", "AlltoAll", "LocalMultiply", "MergeLayer", "MergeFiber"]
    );
    // 8 processes, 256/(16·2) = 8 stages, 2 broadcasts each, 1 message per
    // broadcast root in a 2-member communicator.
    assert_eq!(rows[0].2, 8 * 8);
    assert!(rows[1].1 > 0);
}

#[test]
fn single_process_moves_no_bytes() {
    let o = bench(&["--gen", "ssca", "--scale", "7", "--grid", "1x1x1"]);
    assert_eq!(o.status.code(), Some(0));
    for (phase, bytes, messages) in phase_rows(&stdout(&o)) {
        assert_eq!((bytes, messages), (0, 0), "{phase}");
    }
}

#[test]
fn rtar_on_matrix_market_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ring.mtx");
    let n = 30;
    let t: Vec<_> = (0..n)
        .flat_map(|v| [Triple::new(v, (v + 1) % n, 1.0), Triple::new((v + 1) % n, v, 1.0)])
        .collect();
    write_matrix_market(&TripleList::new(n, n, t).unwrap(), &path).unwrap();
    let o = bench(&[
        "--input",
        path.to_str().unwrap(),
        "--op",
        "rtar",
        "--grid",
        "2x2x1",
        "--verify",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let rt_a = out.find("RT*A: ").unwrap();
    let rt_a_r = out.find("RT*A*R: ").unwrap();
    assert!(rt_a < rt_a_r);
    assert_eq!(out.matches("verify").count(), 2);
    let summary = out.lines().find(|l| l.contains("nnz(RTAR)=")).unwrap();
    assert!(summary.starts_with(&format!("nnz(R)={n} ")), "{summary}");
}

#[test]
fn exit_codes() {
    // Non-square layers, bad block width, zero threads: configuration.
    assert_eq!(bench(&["--scale", "5", "--grid", "3x2x1"]).status.code(), Some(2));
    assert_eq!(bench(&["--scale", "5", "--block", "0"]).status.code(), Some(2));
    assert_eq!(bench(&["--scale", "5", "--threads", "0"]).status.code(), Some(2));
    assert_eq!(bench(&["--bogus"]).status.code(), Some(2));
    // G(n, p) is not symmetric, so MIS-2 needs --symmetrize.
    assert_eq!(
        bench(&["--gen", "er", "--scale", "6", "--op", "rta"]).status.code(),
        Some(2)
    );
    assert_eq!(
        bench(&["--gen", "er", "--scale", "6", "--op", "rta", "--symmetrize"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(bench(&["--input", "/nonexistent.mtx"]).status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mtx");
    std::fs::write(&bad, "%%MatrixMarket matrix coordinate real general\n2 2 1\n9 9 1\n").unwrap();
    assert_eq!(bench(&["--input", bad.to_str().unwrap()]).status.code(), Some(3));
    let frac = dir.path().join("frac.mtx");
    std::fs::write(&frac, "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 0.5\n").unwrap();
    assert_eq!(
        bench(&["--input", frac.to_str().unwrap(), "--int-values"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bench(&["--help"]).status.code(), Some(0));
}

#[test]
fn model_sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("model.csv");
    let o = bench(&[
        "model",
        "--nnz-a",
        "1e6",
        "--nnz-b",
        "1e6",
        "--flops",
        "1e8",
        "--n",
        "1e5",
        "--p",
        "64",
        "--c",
        "1,4",
        "--b",
        "256",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(Path::new(&out)).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "p,c,b,b_redistribution,a_broadcast,b_broadcast,c_exchange,total,best"
    );
    assert_eq!(lines.len(), 3);
    let c1: Vec<&str> = lines[1].split(',').collect();
    assert_eq!((c1[1], c1[3], c1[6]), ("1", "0", "0"));
}
