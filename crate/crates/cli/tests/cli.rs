use std::path::Path;
use std::process::{Command, Output};

fn shiftconv(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shiftconv"))
        .current_dir(dir)
        .env("SHIFTCONV_CACHE_DIR", dir.join("cache"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn jutila_smoke() {
    let dir = tempfile::tempdir().unwrap();
    let o = shiftconv(dir.path(), &["verify", "jutila", "--q", "64"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("defect"));
    assert!(dir.path().join("jutila.csv").exists());
}

#[test]
fn voronoi_d3_single_modulus() {
    let dir = tempfile::tempdir().unwrap();
    let o = shiftconv(dir.path(), &["verify", "voronoi-d3", "--qmax", "1", "--scale", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rel_error"));
    let csv = std::fs::read_to_string(dir.path().join("voronoi-d3-q1-Y1000.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("q,c,Y,"));
    assert!(lines[1].starts_with("1,1,1000,"));
}

#[test]
fn failed_check_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = shiftconv(dir.path(), &["verify", "voronoi-d3", "--qmax", "1", "--scale", "1000", "--tolerance", "1e-20"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = shiftconv(dir.path(), &["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    let o = shiftconv(dir.path(), &["sum", "--X", "100"]);
    assert_eq!(o.status.code(), Some(2));
    let o = shiftconv(dir.path(), &["sum", "--X", "100", "--H", "5", "--lambda", "e8"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(dir.path().join("bad.cfg"), "threads = 0\n").unwrap();
    let o = shiftconv(dir.path(), &["--config", "bad.cfg", "verify", "jutila", "--q", "64"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_cache_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let o = shiftconv(dir.path(), &["--cache-only", "sum", "--X", "100", "--H", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing cache"));
    let o = shiftconv(dir.path(), &["sieve", "--limit", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    let o = shiftconv(dir.path(), &["--cache-only", "sum", "--X", "100", "--H", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("S(H, X)"));
}

#[test]
fn experiment_outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("grid.txt"), "lambda = d3\nr = 1\nlog2_x = 10..12\nh_exponent = 0.4, 0.6\n").unwrap();
    let run = |threads: &str, out: &str| {
        let o = shiftconv(dir.path(), &["--threads", threads, "--out-dir", out, "experiment", "--grid", "grid.txt"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let mut files: Vec<_> = std::fs::read_dir(dir.path().join(out)).unwrap().map(|e| e.unwrap().path()).collect();
        files.sort();
        files.iter().map(|p| (p.file_name().unwrap().to_owned(), std::fs::read(p).unwrap())).collect::<Vec<_>>()
    };
    let a = run("1", "a");
    let b = run("4", "b");
    let c = run("4", "c");
    assert_eq!(a.len(), 2);
    assert_eq!(a, b);
    assert_eq!(b, c);
}
