use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const D18: &str =
    "sectionkit-group 1\nname D18\ndegree 9\ngen (0 1 2 3 4 5 6 7 8)\ngen (1 8)(2 7)(3 6)(4 5)\n";
const DIAGONAL: &str = "degree 18\ngen (0 1 2 3 4 5 6 7 8)(9 10 11 12 13 14 15 16 17)\n\
                        gen (1 8)(2 7)(3 6)(4 5)(10 17)(11 16)(12 15)(13 14)\n";

fn sectionkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sectionkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Fixture {
            dir: tempfile::tempdir().unwrap(),
        };
        f.write("x.grp", D18);
        f.write("y.grp", D18);
        f.write("g.grp", DIAGONAL);
        f.write("h.grp", "degree 18\n");
        f.write(
            "c18.grp",
            "degree 18\ngen (0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17)\n",
        );
        let out = sectionkit(&[
            "construct-d",
            "--p",
            "3",
            "--n",
            "2",
            "--q",
            "2",
            "--out",
            &f.path("d.grp"),
        ]);
        assert_eq!(code(&out), 0);
        f
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_string_lossy().into_owned()
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn pipeline(&self, extra: &[&str]) -> Output {
        let (x, y, g, h, d) = (
            self.path("x.grp"),
            self.path("y.grp"),
            self.path("g.grp"),
            self.path("h.grp"),
            self.path("d.grp"),
        );
        let mut args = vec![
            "run-pipeline",
            "--x",
            &x,
            "--y",
            &y,
            "--g",
            &g,
            "--h",
            &h,
            "--d",
            &d,
        ];
        args.extend_from_slice(extra);
        sectionkit(&args)
    }
}

fn read(p: impl AsRef<Path>) -> String {
    fs::read_to_string(p).unwrap()
}

#[test]
fn construct_then_check_chain() {
    let f = Fixture::new();
    let text = read(f.path("d.grp"));
    assert!(text.starts_with("sectionkit-group 1\n"));
    let out = sectionkit(&["check-chain", &f.path("d.grp"), "--p", "3"]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(s.contains("normal subgroup orders: 1,3,9,18"), "{s}");
    assert!(s.contains("chain=true"));
    let out = sectionkit(&["check-chain", &f.path("c18.grp"), "--p", "3"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("chain=false"));
}

#[test]
fn construct_without_valid_exponent_is_a_usage_error() {
    let out = sectionkit(&["construct-d", "--p", "3", "--n", "2", "--q", "5"]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn pipeline_on_the_diagonal_writes_a_verifying_witness() {
    let f = Fixture::new();
    let (w, t) = (f.path("w.txt"), f.path("t.txt"));
    let out = f.pipeline(&["--out", &w, "--trace", &t]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(read(&t).starts_with("sectionkit-trace 1\n"));
    let v = sectionkit(&[
        "verify-witness",
        "--witness",
        &w,
        "--in",
        &f.path("x.grp"),
        "--d",
        &f.path("d.grp"),
    ]);
    assert_eq!(code(&v), 0);
    assert_eq!(stdout(&v).trim(), "valid");

    let w2 = f.path("w2.txt");
    let again = f.pipeline(&["--replay", &t, "--out", &w2, "--spec", "3,2,2,8"]);
    assert_eq!(code(&again), 0);
    assert_eq!(read(&w), read(&w2));
}

#[test]
fn tampered_witness_is_invalid() {
    let f = Fixture::new();
    let w = f.path("w.txt");
    assert_eq!(code(&f.pipeline(&["--out", &w])), 0);
    let text = read(&w);
    let line = text.lines().find(|l| l.starts_with("iso ")).unwrap();
    let (rep, _) = line.split_once(" -> ").unwrap();
    let bad = text.replace(line, &format!("{rep} -> ()"));
    assert_ne!(bad, text);
    let tampered = f.write("bad.txt", &bad);
    let v = sectionkit(&[
        "verify-witness",
        "--witness",
        &tampered.to_string_lossy(),
        "--in",
        &f.path("x.grp"),
        "--d",
        &f.path("d.grp"),
    ]);
    assert_eq!(code(&v), 1);
    assert!(stdout(&v).starts_with("invalid: "));
}

#[test]
fn tampered_trace_fails_replay() {
    let f = Fixture::new();
    let t = f.path("t.txt");
    assert_eq!(code(&f.pipeline(&["--trace", &t])), 0);
    let text = read(&t);
    let line = text
        .lines()
        .find(|l| l.starts_with("decide generating "))
        .unwrap();
    f.write("t2.txt", &text.replace(line, "decide generating 7"));
    let out = f.pipeline(&["--replay", &f.path("t2.txt")]);
    assert_eq!(code(&out), 1);
}

#[test]
fn find_section_exit_codes() {
    let f = Fixture::new();
    let w = f.path("found.txt");
    let out = sectionkit(&[
        "find-section",
        "--d",
        &f.path("d.grp"),
        "--in",
        &f.path("x.grp"),
        "--out",
        &w,
    ]);
    assert_eq!(code(&out), 0);
    let v = sectionkit(&[
        "verify-witness",
        "--witness",
        &w,
        "--in",
        &f.path("x.grp"),
        "--d",
        &f.path("d.grp"),
    ]);
    assert_eq!(code(&v), 0);
    let out = sectionkit(&[
        "find-section",
        "--d",
        &f.path("d.grp"),
        "--in",
        &f.path("c18.grp"),
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn cap_violations_exit_with_three() {
    let f = Fixture::new();
    let out = Command::new(env!("CARGO_BIN_EXE_sectionkit"))
        .args(["find-section", "--d", &f.path("d.grp"), "--in", &f.path("x.grp")])
        .env("SECTIONKIT_ORACLE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    let out = sectionkit(&["sweep", "--catalog-max", "100000", "--spec", "3,1,2"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn usage_and_io_errors_exit_with_two() {
    let f = Fixture::new();
    assert_eq!(code(&sectionkit(&["no-such-command"])), 2);
    assert_eq!(
        code(&sectionkit(&["check-chain", &f.path("missing.grp"), "--p", "3"])),
        2
    );
    f.write("broken.grp", "degree 3\ngen (0 1)(1 2)\n");
    let out = sectionkit(&["check-chain", &f.path("broken.grp"), "--p", "3"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = f.pipeline(&["--spec", "5,1,2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sweep_prints_records_and_summary() {
    let run = |jobs: &str| sectionkit(&["sweep", "--catalog-max", "12", "--spec", "3,1,2", "--jobs", jobs]);
    let one = run("1");
    let four = run("4");
    assert_eq!(code(&one), 0);
    assert_eq!(stdout(&one), stdout(&four));
    let s = stdout(&one);
    let records: Vec<&str> = s.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(!records.is_empty());
    for r in &records {
        let fields: Vec<&str> = r.split(',').collect();
        assert_eq!(fields.len(), 5, "{r}");
        assert_eq!(fields[4], "ok");
    }
    assert!(s.contains("# discrepancies 0"));
    let curated = sectionkit(&["sweep", "--curated", "--spec", "7,1,3", "--limit", "2"]);
    assert_eq!(code(&curated), 0);
}
