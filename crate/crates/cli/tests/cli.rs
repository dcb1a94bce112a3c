use std::path::Path;
use std::process::{Command, Output};

fn ulam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ulam-words"))
        .args(args)
        .env_remove("ULAM_STORE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn compute_store(dir: &Path, max_n: u32) {
    let o = ulam(&[
        "compute",
        "--max-n",
        &max_n.to_string(),
        "--store",
        dir.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn compute_prints_counts_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = ulam(&[
        "compute",
        "--max-n",
        "14",
        "--store",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("n,count\n1,2\n2,2\n3,4\n"));
    assert!(out.contains("\n12,1018\n"));
    assert!(out.ends_with("14,3812\n"));
    for n in 1..=14 {
        assert!(dir.path().join(format!("level_{n:02}.ulmw")).is_file());
    }
}

#[test]
fn compute_respects_memory_budget() {
    let o = ulam(&["compute", "--max-n", "30", "--memory-budget-mb", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("memory"));
}

#[test]
fn verify_passes_with_patterns() {
    let o = ulam(&[
        "verify",
        "--oracle-max",
        "12",
        "--patterns",
        "--max-n",
        "18",
    ]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("ok    oracle agrees at n=12 (1018 words)"));
    assert!(out.contains("ok    #U_18 = 58478"));
    assert!(out.ends_with("0 check(s) failed\n"));
}

#[test]
fn verify_rejects_large_oracle() {
    assert_eq!(
        ulam(&["verify", "--oracle-max", "17"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_flags_a_tampered_store() {
    let dir = tempfile::tempdir().unwrap();
    compute_store(dir.path(), 10);
    // Swap U_9 for U_9 minus one word and plus its neighbour.
    let path = dir.path().join("level_09.ulmw");
    let level = ulam_words::io::load_level(&path).unwrap();
    let mut codes: Vec<u64> = level.codes().collect();
    let first = codes.remove(0);
    let replacement = (0..512)
        .find(|c| *c != first && !level.contains(*c))
        .unwrap();
    codes.push(replacement);
    let bad = ulam_words::LevelSet::from_codes(9, codes).unwrap();
    ulam_words::io::save_level(&bad, &path).unwrap();

    let o = ulam(&[
        "verify",
        "--oracle-max",
        "10",
        "--store",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  oracle agrees at n=9"));
}

#[test]
fn stats_heatmap_and_conjectures_use_store_env() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store");
    compute_store(&store, 16);
    let reports = dir.path().join("reports");
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_ulam-words"))
            .args(args)
            .env("ULAM_STORE", &store)
            .output()
            .unwrap()
    };

    let o = run(&["stats", "--out", reports.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let counts = std::fs::read_to_string(reports.join("counts.csv")).unwrap();
    assert!(counts.starts_with("n,count,density\n1,2,1\n"));
    assert!(counts.contains("\n13,1916,0.233886719\n"));
    assert!(reports.join("gaps.csv").is_file());
    assert!(reports.join("mod_density_6.csv").is_file());

    let pgm = dir.path().join("u8.pgm");
    let o = run(&["heatmap", "--n", "8", "--out", pgm.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let bytes = std::fs::read(&pgm).unwrap();
    assert!(bytes.starts_with(b"P5\n8 "));

    let o = run(&["conjectures"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("0^a 1^2 0^b (theorem): 0 counterexample(s)"));
    assert!(out.contains("violations []; weak checked"));
}

#[test]
fn heatmap_without_store_computes_level() {
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("u6.pgm");
    let o = ulam(&["heatmap", "--n", "6", "--out", pgm.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    // U_6 has 26 words, half of them zero-leading.
    let bytes = std::fs::read(&pgm).unwrap();
    assert_eq!(&bytes[..12], b"P5\n6 13\n255\n");
    assert_eq!(bytes.len(), 12 + 6 * 13);
}

#[test]
fn missing_store_is_an_error() {
    let o = ulam(&[
        "stats",
        "--store",
        "/nonexistent/ulam",
        "--out",
        "/tmp/unused",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = ulam(&["conjectures"]);
    assert_eq!(o.status.code(), Some(2), "store is required");
}
