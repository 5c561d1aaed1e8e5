use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn parcore(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parcore"))
        .args(args)
        .current_dir(dir)
        .env_remove("PARCORE_THREADS")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) {
    fs::write(dir.join(name), body).unwrap();
}

const TRIANGLE_AND_PENDANT: &str = "# ids need not be dense\n10 20\n20 30\n30 10\n30 40\n";

#[test]
fn insert_writes_cores_and_verify_accepts_them() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "g.txt", TRIANGLE_AND_PENDANT);
    // Completes K4 on {10, 20, 30, 40}.
    write(dir.path(), "b.txt", "40 10\n40 20\n");
    let out = parcore(
        &[
            "insert",
            "--graph",
            "g.txt",
            "--batch",
            "b.txt",
            "--threads",
            "8",
            "--out-cores",
            "out.txt",
            "--log",
            "log.txt",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("dataset\t"));
    assert_eq!(stdout.lines().count(), 2);
    assert_eq!(
        fs::read_to_string(dir.path().join("out.txt")).unwrap(),
        "10 3\n20 3\n30 3\n40 3\n"
    );
    let log = fs::read_to_string(dir.path().join("log.txt")).unwrap();
    assert!(
        log.starts_with("# mode insert rounds 2 dropped 0\n"),
        "{log}"
    );

    let mut full = TRIANGLE_AND_PENDANT.to_string();
    full.push_str("40 10\n40 20\n");
    write(dir.path(), "full.txt", &full);
    let out = parcore(
        &["verify", "--graph", "full.txt", "--cores", "out.txt"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_reports_first_divergent_vertex() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "g.txt", TRIANGLE_AND_PENDANT);
    write(dir.path(), "c.txt", "10 2\n20 2\n30 3\n40 2\n");
    let out = parcore(
        &["verify", "--graph", "g.txt", "--cores", "c.txt"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("vertex 30: expected core 2, found 3"),
        "{stderr}"
    );
}

#[test]
fn delete_and_baseline_agree() {
    let dir = tempfile::tempdir().unwrap();
    let gen = parcore(
        &[
            "gen",
            "--gen",
            "er",
            "--n",
            "400",
            "--deg",
            "4",
            "--seed",
            "9",
            "--out",
            "g.txt",
            "--batch",
            "b.txt",
            "--batch-size",
            "60",
            "--mode",
            "delete",
        ],
        dir.path(),
    );
    assert!(
        gen.status.success(),
        "{}",
        String::from_utf8_lossy(&gen.stderr)
    );
    for (flags, name) in [
        (&["--threads", "3"][..], "engine.txt"),
        (&["--baseline"][..], "baseline.txt"),
    ] {
        let mut args = vec![
            "delete",
            "--graph",
            "g.txt",
            "--batch",
            "b.txt",
            "--out-cores",
            name,
        ];
        args.extend_from_slice(flags);
        let out = parcore(&args, dir.path());
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let engine = fs::read_to_string(dir.path().join("engine.txt")).unwrap();
    assert_eq!(
        engine,
        fs::read_to_string(dir.path().join("baseline.txt")).unwrap()
    );
}

#[test]
fn bench_emits_one_row_per_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = parcore(
        &[
            "bench",
            "--gen",
            "er",
            "--n",
            "2048",
            "--deg",
            "8",
            "--batch-size",
            "100",
            "--mode",
            "insert",
            "--threads",
            "1,2,4,8",
            "--baseline",
            "--baseline-sample",
            "10",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = stdout.lines().map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 6);
    let width = rows[0].len();
    assert!(rows.iter().all(|r| r.len() == width));
    assert!(rows[1][0].ends_with("/baseline"));
    let workers: Vec<&str> = rows[2..].iter().map(|r| r[3]).collect();
    assert_eq!(workers, ["1", "2", "4", "8"]);
    assert!(rows[2..].iter().all(|r| r[width - 1] != "-"));
}

#[test]
fn threads_fall_back_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "g.txt", TRIANGLE_AND_PENDANT);
    write(dir.path(), "b.txt", "40 10\n");
    let out = Command::new(env!("CARGO_BIN_EXE_parcore"))
        .args(["insert", "--graph", "g.txt", "--batch", "b.txt"])
        .current_dir(dir.path())
        .env("PARCORE_THREADS", "5")
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let row: Vec<&str> = stdout.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(row[3], "5");
}

#[test]
fn exit_codes_for_usage_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let usage = parcore(&["insert", "--graph", "g.txt"], dir.path());
    assert_eq!(usage.status.code(), Some(2));
    let zero = parcore(
        &[
            "insert",
            "--graph",
            "g.txt",
            "--batch",
            "b.txt",
            "--threads",
            "0",
        ],
        dir.path(),
    );
    assert_eq!(zero.status.code(), Some(2));
    let missing = parcore(
        &["insert", "--graph", "missing.txt", "--batch", "b.txt"],
        dir.path(),
    );
    assert_eq!(missing.status.code(), Some(1));

    write(dir.path(), "g.txt", "1 2\n");
    write(dir.path(), "b.txt", "1 x\n");
    let parse = parcore(
        &["insert", "--graph", "g.txt", "--batch", "b.txt"],
        dir.path(),
    );
    assert_eq!(parse.status.code(), Some(1));
    let stderr = String::from_utf8(parse.stderr).unwrap();
    assert!(stderr.contains("line 1"), "{stderr}");

    write(dir.path(), "b.txt", "1 3\n");
    let absent = parcore(
        &["delete", "--graph", "g.txt", "--batch", "b.txt"],
        dir.path(),
    );
    assert_eq!(absent.status.code(), Some(1));
}
