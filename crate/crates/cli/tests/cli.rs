use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ideal-dyn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn density_prints_one_row_per_kind() {
    let o = run(&["density", "--set", "ap:3,1", "--horizon", "65536"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("set_spec,"));
    assert_eq!(lines.count(), 5);
    assert!(text.contains("upper_asymptotic"));

    let o = run(&[
        "density",
        "--set",
        "blocks:pow4",
        "--kind",
        "upper-asymptotic",
        "--horizon",
        "4096",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        &["density", "--set", "nonsense", "--horizon", "100"][..],
        &["density", "--set", "ap:2,0", "--horizon", "1"],
        &[
            "returnset",
            "--system",
            "torus",
            "--point",
            "0.1",
            "--center",
            "0.1",
            "--radius",
            "0.1",
            "--horizon",
            "10",
        ],
        &["verify", "--suite", "no_such_check", "--out"],
    ] {
        let mut args = args.to_vec();
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap().to_string();
        if args.last() == Some(&"--out") {
            args.push(&out);
        }
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn returnset_writes_members() {
    let dir = tempfile::tempdir().unwrap();
    let members = dir.path().join("members.txt");
    let o = run(&[
        "returnset",
        "--system",
        "rotation:golden",
        "--point",
        "0",
        "--center",
        "0",
        "--radius",
        "0.05",
        "--horizon",
        "10000",
        "--members",
        members.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let card: usize = row[5].parse().unwrap();
    let listed = fs::read_to_string(&members).unwrap();
    assert_eq!(listed.lines().filter(|l| l.parse::<usize>().is_ok()).count(), card);
    assert!((900..1100).contains(&card));
}

#[test]
fn verdict_and_classify() {
    let o = run(&["verdict", "--set", "squares", "--horizon", "65536"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("member"), "{}", stdout(&o));

    let o = run(&[
        "classify",
        "--system",
        "doubling",
        "--point",
        "champernowne",
        "--targets",
        "8",
        "--horizon",
        "65536",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn verify_output_is_deterministic() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let o = run(&[
            "verify",
            "--suite",
            "ansari,density_chain,gap_properties",
            "--horizon",
            "4096",
            "--seed",
            "42",
            "--out",
            d.path().to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(stdout(&o).contains("result: PASS"));
    }
    for f in ["checks.csv", "cases.csv", "summary.txt"] {
        assert_eq!(
            fs::read(dirs[0].path().join(f)).unwrap(),
            fs::read(dirs[1].path().join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn tiny_horizon_warns_but_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--horizon", "100", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("inconclusive"));
    let checks = fs::read_to_string(dir.path().join("checks.csv")).unwrap();
    assert_eq!(checks.lines().count(), 12);
}

#[test]
fn config_file_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("suite.cfg");
    fs::write(&cfg, "# small run\nhorizon=2048\nseed=3\nsuite=ansari\n").unwrap();
    let out = dir.path().join("out");
    let o = run(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("horizon=2048 seed=3"));

    let cases = fs::read_to_string(out.join("cases.csv")).unwrap();
    let mut reader = csv::Reader::from_reader(cases.as_bytes());
    let first = reader.records().next().unwrap().unwrap();
    let o = run(&["replay", &first[1]]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("Pass"));

    let o = run(&[
        "replay",
        "check=ansari system=doubling x=0.3 center=0.3 radius=0.1 k=0 horizon=64",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn checks_lists_the_registry() {
    let o = run(&["checks"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 11);
}
