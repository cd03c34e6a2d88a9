use riemann_fan::region::read_region_csv;
use riemann_fan_cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("riemann-fan").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

const WORKED: [&str; 10] = [
    "--rho-minus",
    "1",
    "--rho-plus",
    "4",
    "--v-minus2",
    "3.3",
    "--v-plus2",
    "0",
    "--gamma",
    "2",
];

#[test]
fn classify_two_shocks() {
    let (code, out, _) = call(&[
        "classify",
        "--rho-minus",
        "1",
        "--rho-plus",
        "4",
        "--v-minus2",
        "3.5",
        "--v-plus2",
        "0",
        "--gamma",
        "2",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "Case3_TwoShocks");
    assert_eq!(v["sqrtT"].as_f64().unwrap(), 3.35410197);
}

#[test]
fn input_errors_exit_2() {
    let bad_gamma = [
        "classify",
        "--rho-minus",
        "1",
        "--rho-plus",
        "4",
        "--v-minus2",
        "3.5",
        "--v-plus2",
        "0",
        "--gamma",
        "0.5",
    ];
    let (code, out, err) = call(&bad_gamma);
    assert_eq!(code, 2);
    assert!(out.is_empty() && err.contains("gamma"));
    assert_eq!(
        call(&[
            "classify",
            "--rho-minus",
            "-1",
            "--rho-plus",
            "4",
            "--v-minus2",
            "0",
            "--v-plus2",
            "0",
            "--gamma",
            "2"
        ])
        .0,
        2
    );
    assert_eq!(call(&["classify", "--unknown"]).0, 2);
    assert_eq!(call(&["nope"]).0, 2);
    assert_eq!(call(&[]).0, 2);
    assert_eq!(
        call(&["verify", "--input", "/nonexistent/witness.json"]).0,
        2
    );
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn threshold_near_2_7() {
    let (code, out, _) = call(&[
        "threshold",
        "--rho-minus",
        "1",
        "--rho-plus",
        "4",
        "--v-plus2",
        "0",
        "--gamma",
        "2",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!((v["V"].as_f64().unwrap() - 2.7).abs() < 0.05);
    assert!(v.get("feasible_probe").is_none());
    let (_, out, _) = call(&[
        "threshold",
        "--rho-minus",
        "1",
        "--rho-plus",
        "4",
        "--v-plus2",
        "0",
        "--gamma",
        "2",
        "--trace",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["feasible_probe"].as_array().unwrap().len() as u64,
        v["probes"].as_u64().unwrap()
    );
}

#[test]
fn threshold_table_accepts_negative_list() {
    let (code, out, err) = call(&[
        "threshold-table",
        "--rho-minus",
        "1",
        "--rho-plus",
        "4",
        "--gamma",
        "2",
        "--v-plus2-list",
        "-1,0,1",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "v_plus2,V,sqrtT,error");
    assert!(lines[1].starts_with("-1,"));
    assert!(lines[3].starts_with("1,"));
    assert!(err.contains("nondecreasing"));
}

#[test]
fn feasibility_witness_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("witness.json");
    let p = path.to_str().unwrap();
    let mut args = vec!["feasibility"];
    args.extend(WORKED);
    args.extend(["--grid", "256", "--emit-witness", p]);
    let (code, out, _) = call(&args);
    assert_eq!(code, 0);
    assert!(out.starts_with("rho_1,nu_minus,"));
    assert!(out.lines().skip(1).any(|l| l.ends_with(",true")));

    let (code, report, _) = call(&["verify", "--input", p]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["failures"].as_array().unwrap().is_empty());

    // break the normal velocity of the middle state
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["beta"] = Value::from(doc["beta"].as_f64().unwrap() + 0.01);
    std::fs::write(&path, doc.to_string()).unwrap();
    let (code, report, _) = call(&["verify", "--input", p]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn infeasible_datum_exits_1() {
    let (code, _, _) = call(&[
        "feasibility",
        "--rho-minus",
        "1",
        "--rho-plus",
        "4",
        "--v-minus2",
        "0.5",
        "--v-plus2",
        "0",
        "--gamma",
        "2",
        "--grid",
        "128",
    ]);
    assert_eq!(code, 1);
    // outside |u| < sqrt(T): valid input, negative finding
    let (code, _, _) = call(&[
        "feasibility",
        "--rho-minus",
        "1",
        "--rho-plus",
        "4",
        "--v-minus2",
        "3.5",
        "--v-plus2",
        "0",
        "--gamma",
        "2",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn region_map_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("map.csv");
    let args = [
        "region-map",
        "--rho-minus",
        "1",
        "--v-minus2",
        "3.3",
        "--gamma",
        "2",
        "--rho-plus-min",
        "0.5",
        "--rho-plus-max",
        "4",
        "--rho-plus-n",
        "5",
        "--v-plus2-min",
        "-1",
        "--v-plus2-max",
        "1",
        "--v-plus2-n",
        "4",
    ];
    let (code, first, _) = call(&args);
    assert_eq!(code, 0);
    let (_, second, _) = call(&args);
    assert_eq!(first, second);
    let cells = read_region_csv(first.as_bytes()).unwrap();
    assert_eq!(cells.len(), 20);

    let mut with_out = args.to_vec();
    with_out.extend(["--output", path.to_str().unwrap()]);
    let (code, out, _) = call(&with_out);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);

    assert_eq!(
        call(&[
            "region-map",
            "--rho-minus",
            "1",
            "--v-minus2",
            "3.3",
            "--gamma",
            "2",
            "--rho-plus-min",
            "0.5",
            "--rho-plus-max",
            "4",
            "--rho-plus-n",
            "1",
            "--v-plus2-min",
            "-1",
            "--v-plus2-max",
            "1"
        ])
        .0,
        2
    );
}

#[test]
fn classify_is_deterministic() {
    let mut args = vec!["classify"];
    args.extend(WORKED);
    assert_eq!(call(&args), call(&args));
}
