use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rowmotion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = run(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn square_rowmotion_has_orbits_of_length_four_and_two() {
    let v = json(&[
        "orbits",
        "--a",
        "2",
        "--b",
        "2",
        "--setting",
        "combinatorial",
        "--map",
        "rowmotion",
        "--format",
        "json",
    ]);
    let mut lengths: Vec<u64> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["length"].as_u64().unwrap())
        .collect();
    lengths.sort();
    assert_eq!(lengths, vec![2, 4]);
    assert_eq!(v["verdict"], "homomesic");
    assert_eq!(v["constant"], "2");
}

#[test]
fn birational_orbit_lists_the_worked_step() {
    let v = json(&[
        "orbits",
        "--setting",
        "birational",
        "--init",
        "1,2,3,4",
        "--format",
        "json",
    ]);
    assert_eq!(v["period"], 4);
    assert_eq!(v["states"][1], serde_json::json!(["1/4", "5/8", "5/12", "5/4"]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["orbits", "--a", "0", "--b", "2"]).status.code(), Some(2));
    assert_eq!(run(&["orbits", "--map", "sideways"]).status.code(), Some(2));
    assert_eq!(run(&["orbits", "--setting", "birational"]).status.code(), Some(2));
    assert_eq!(run(&["orbits", "--init", "1,2,3,4"]).status.code(), Some(2));
    assert_eq!(
        run(&["trajectory", "--setting", "birational", "--init", "1,0,3,4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "thm-card", "--setting", "birational"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["orbits", "--bogus"]).status.code(), Some(2));
}

#[test]
fn unknown_theorem_ids_list_the_known_ones() {
    let o = run(&["verify", "thm-nope"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("thm-card") && err.contains("edge-invariant") && err.contains("all"));
}

#[test]
fn size_guard_exits_three() {
    assert_eq!(
        run(&["span", "--a", "6", "--b", "6", "--max-states", "100"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["orbits", "--a", "6", "--b", "6", "--max-states", "100"])
            .status
            .code(),
        Some(3)
    );
    assert!(run(&["span", "--a", "6", "--b", "6", "--format", "json"])
        .status
        .success());
}

#[test]
fn verify_reports_the_card_constant() {
    let v = json(&["verify", "thm-card", "--a", "3", "--b", "4", "--format", "json"]);
    assert_eq!(v["passed"], true);
    let cases = v["checks"][0]["cases"].as_array().unwrap();
    assert!(cases.iter().all(|c| c["value"] == "6"));
}

#[test]
fn verify_products_and_birational_order() {
    let v = json(&[
        "verify",
        "thm-prod",
        "--a",
        "3",
        "--b",
        "3",
        "--samples",
        "20",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(v["passed"], true);
    let v = json(&[
        "verify",
        "order-n",
        "--a",
        "4",
        "--b",
        "4",
        "--setting",
        "birational",
        "--samples",
        "10",
        "--seed",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_all_passes_on_small_rectangles() {
    for (a, b) in [("1", "3"), ("2", "3")] {
        let o = run(&["verify", "all", "--a", a, "--b", b, "--samples", "10"]);
        assert!(o.status.success(), "{}", stdout(&o));
        assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 16);
    }
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "verify",
        "thm-sum",
        "--a",
        "3",
        "--b",
        "3",
        "--samples",
        "30",
        "--seed",
        "11",
        "--format",
        "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = [
        "experiment",
        "antichain",
        "--setting",
        "birational",
        "--samples",
        "8",
        "--seed",
        "3",
        "--format",
        "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn span_of_the_square() {
    let v = json(&["span", "--a", "2", "--b", "2", "--map", "rowmotion", "--format", "json"]);
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["verdict"], "equal");
    for row in v["basis"].as_array().unwrap() {
        assert_eq!(row[0], row[3]);
    }
    let v = json(&["span", "--a", "1", "--b", "2", "--map", "promotion", "--format", "json"]);
    assert_eq!(v["orbits"], 1);
    assert_eq!(v["dimension"], 2);
}

#[test]
fn twelve_steps_of_the_plan_reach_forty_eight() {
    let v = json(&[
        "trajectory",
        "--setting",
        "pl-unit",
        "--init",
        "1/100,50/100,50/100,50/100",
        "--map",
        "plan:w,x,z,y",
        "--steps",
        "12",
        "--format",
        "json",
    ]);
    assert_eq!(
        v["steps"][12]["state"],
        serde_json::json!(["1/100", "12/25", "12/25", "12/25"])
    );
}

#[test]
fn birational_trajectory_returns_after_four_steps() {
    let v = json(&[
        "trajectory",
        "--setting",
        "birational",
        "--init",
        "1,2,3,4",
        "--map",
        "rowmotion",
        "--steps",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(v["steps"][4]["state"], v["steps"][0]["state"]);
}

#[test]
fn csv_has_the_documented_columns() {
    let o = run(&["orbits", "--format", "csv"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("orbit_id,step,statistic,value"));
    assert_eq!(text.lines().count(), 1 + 6);
    let o = run(&[
        "trajectory",
        "--init",
        "1/10,2/10,3/10,4/10",
        "--steps",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(
        stdout(&o),
        "orbit_id,step,statistic,value\n0,0,cardinality,1\n0,1,cardinality,3\n"
    );
}

#[test]
fn experiments_run() {
    let v = json(&["experiment", "infinite-order", "--format", "json"]);
    assert_eq!(v["all_match"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 97);
    let v = json(&[
        "experiment",
        "orbit-length",
        "--init",
        "1/10,5/10,5/10,5/10",
        "--format",
        "json",
    ]);
    assert_eq!(v["length"], 74);
    let v = json(&[
        "experiment",
        "cesaro",
        "--init",
        "1/10,5/10,5/10,5/10",
        "--format",
        "json",
    ]);
    assert_eq!(v["average"], "0");
    assert_eq!(v["period"], 74);
}

#[test]
fn out_writes_a_file() {
    let path = std::env::temp_dir().join(format!("rowmotion-cli-{}.json", std::process::id()));
    let o = run(&["span", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["dimension"], 3);
}
