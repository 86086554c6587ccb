use std::process::{Command, Output};

fn ssgreen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssgreen")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn green_diamond() {
    let o = ssgreen(&["green", "diamond", "--builtin", "--order", "8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1, 0, 1/3, 0, 2/9, 0, 5/27, 0, 40/243");
}

#[test]
fn classify_path_is_star() {
    let o = ssgreen(&["classify", "path2", "--builtin", "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"]["outcome"], "AlgebraicStar");
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn rationals_are_strings() {
    let v = json(&ssgreen(&["invariants", "diamond", "--builtin", "--json"]));
    assert_eq!(v["invariants"]["tau"], "18");
    assert_eq!(v["invariants"]["alpha"], "3");
    assert!(v["invariants"]["eta"]["low"].as_str().unwrap().contains('/'));
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: serde_json::Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let args = ["functions", "sierpinski", "--builtin", "--json", "--order", "12"];
    assert_eq!(strip(json(&ssgreen(&args))), strip(json(&ssgreen(&args))));
}

#[test]
fn verify_report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = ssgreen(&["verify", "diamond", "--builtin", "--json"]);
    assert!(o.status.success());
    std::fs::write(&path, &o.stdout).unwrap();
    let replay = ssgreen(&["verify", "--from-report", path.to_str().unwrap(), "--json"]);
    assert!(replay.status.success(), "{}", String::from_utf8_lossy(&replay.stderr));
    assert_eq!(json(&replay)["matches"], true);

    let mut v = json(&o);
    v["properties"][0]["passed"] = false.into();
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(ssgreen(&["verify", "--from-report", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn enumeration_verify_passes() {
    let o = ssgreen(&["verify", "--enumerate", "--max-vertices", "6"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("28 cells"));
    assert!(stdout(&o).contains("all checks passed"));
}

#[test]
fn cell_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("diamond.txt");
    std::fs::write(&path, "vertices 6\nboundary 0 1\nedge 0 2\nedge 2 4\nedge 2 5\nedge 4 3\nedge 5 3\nedge 3 1\n").unwrap();
    let o = ssgreen(&["green", path.to_str().unwrap(), "--order", "4"]);
    assert_eq!(stdout(&o).trim(), "1, 0, 1/3, 0, 2/9");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let square = dir.path().join("square.txt");
    std::fs::write(&square, "vertices 4\nboundary 0 2\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 0\n").unwrap();
    let garbage = dir.path().join("garbage.txt");
    std::fs::write(&garbage, "vertices two\n").unwrap();

    assert_eq!(ssgreen(&["validate", square.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(ssgreen(&["classify", square.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(ssgreen(&["green", garbage.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(ssgreen(&["green", "nosuch", "--builtin"]).status.code(), Some(2));
    assert_eq!(ssgreen(&["probe", "path2", "--builtin", "--points", "0.999999"]).status.code(), Some(2));
    let budget = Command::new(env!("CARGO_BIN_EXE_ssgreen"))
        .args(["blowup", "diamond", "--builtin", "--level", "4"])
        .env("SSGREEN_EDGE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(budget.status.code(), Some(3));
}

#[test]
fn blowup_emits_a_parsable_graph() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("level2.txt");
    let o = ssgreen(&["blowup", "sierpinski", "--builtin", "--level", "2", "--emit", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let g = selfsim_green::cell::parse_cell(&text).unwrap();
    assert_eq!((g.n(), g.edge_count()), (15, 27));
}

#[test]
fn simulate_is_reproducible() {
    let args = ["simulate", "diamond", "--builtin", "--level", "2", "--trials", "20000", "--seed", "5", "--workers", "2", "--json"];
    let (a, b) = (json(&ssgreen(&args)), json(&ssgreen(&args)));
    assert_eq!(a, b);
    assert_eq!(a["trials"], 20000);
}

#[test]
fn probe_csv() {
    let o = ssgreen(&["probe", "path2", "--builtin", "--points", "0.5,0.9"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("z,order,green,prefactor,tail_bound"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let green: f64 = row[2].parse().unwrap();
    assert!((green - 1.0 / 0.75f64.sqrt()).abs() < 1e-9);
}
