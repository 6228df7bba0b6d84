use std::process::{Command, Output};

fn vk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vk")).args(args).output().expect("vk runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn eval(n: u32, expr: &str) -> String {
    let o = vk(&["--n", &n.to_string(), "eval", expr]);
    assert_eq!(o.status.code(), Some(0), "{expr}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).trim().to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(eval(3, "one[0] + 2*x[1]^-1"), "one[0] + 2*x[1]^2");
    assert_eq!(eval(2, "u[1,0]*u[1,0]"), "u[1,0]");
    assert_eq!(eval(4, "u[1,0]*u[1,0]"), "u[1,0]");
    assert_eq!(eval(2, "L(1,0;0,0)"), eval(2, "sigma[0]"));
    assert_eq!(eval(2, "psi[2](xe[0,0])"), "-e[0,0] + 2*xe[0,0] + e[0,1]");
    assert_eq!(eval(3, "gamma(one[0])"), "e[0,0] + e[0,1] + e[0,2]");
    assert_eq!(eval(3, "eps(x[0]^3)"), "one[0]");
}

#[test]
fn printed_values_evaluate_to_themselves() {
    for (n, expr) in [(3, "x[1]*x[2] + zeta*x[0]^-1"), (2, "psi[3](xe[0,0] - e[1,1])"), (3, "nu[1]*sigma[2]")] {
        let once = eval(n, expr);
        assert_eq!(eval(n, &once), once, "{expr}");
    }
}

#[test]
fn verbs_agree_with_eval() {
    let mul = vk(&["--n", "3", "mul", "x[1]", "x[2]"]);
    assert_eq!(stdout(&mul).trim(), eval(3, "x[1]*x[2]"));
    let adams = vk(&["--n", "3", "adams", "-k", "2", "x[1]"]);
    assert_eq!(stdout(&adams).trim(), eval(3, "psi[2](x[1])"));
    let loc = vk(&["--n", "3", "localize", "x[1]"]);
    assert_eq!(stdout(&loc).trim(), eval(3, "gamma(x[1])"));
    let back = vk(&["--n", "3", "delocalize", stdout(&loc).trim()]);
    assert_eq!(stdout(&back).trim(), "x[1]");
}

#[test]
fn exit_codes() {
    assert_eq!(vk(&["--n", "2", "eval", "x[0] + e[0,0]"]).status.code(), Some(2));
    assert_eq!(vk(&["--n", "2", "eval", "x[2]"]).status.code(), Some(2));
    assert_eq!(vk(&["--n", "2", "eval", "x[0] +"]).status.code(), Some(2));
    assert_eq!(vk(&["--n", "1", "eval", "x[0]"]).status.code(), Some(2));
    assert_eq!(vk(&["eval", "x[0]"]).status.code(), Some(2));
    assert_eq!(vk(&["--n", "2", "eval", "(x[0] - one[0])^-1"]).status.code(), Some(2));
    assert_eq!(vk(&["--n", "2", "localize", "e[0,0]"]).status.code(), Some(2));
    assert_eq!(vk(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(vk(&["--n", "2", "line", "sigma[1]*nu[0]"]).status.code(), Some(0));
    assert_eq!(vk(&["--n", "2", "line", "2*sigma[1]"]).status.code(), Some(1));
    assert_eq!(vk(&["--n", "2", "line", "e[0,1]"]).status.code(), Some(1));
}

#[test]
fn errors_report_positions() {
    let o = vk(&["--n", "2", "eval", "x[0] + e[0,0]"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("basis mixing at position 5"), "{err}");
}

#[test]
fn json_value_schema() {
    let o = vk(&["--n", "3", "--json", "eval", "zeta*x[1] - 1/2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["basis"], "sector");
    // Sector 0 has dimension n + 1 = 4, so x[1] follows one[1] at index 5.
    assert_eq!(v["coeffs"], serde_json::json!([
        {"index": 0, "value": ["-1/2", "0"]},
        {"index": 5, "value": ["0", "1"]},
    ]));
    let text = stdout(&o);
    assert!(text.find("\"n\"").unwrap() < text.find("\"basis\"").unwrap());
    let u = vk(&["--n", "2", "--json", "eval", "u[1,1]"]);
    let v: serde_json::Value = serde_json::from_slice(&u.stdout).unwrap();
    assert_eq!(v["basis"], "u");
    assert_eq!(v["coeffs"], serde_json::json!([{"index": 4, "value": ["1"]}]));
    let forced = vk(&["--n", "2", "--json", "eval", "--basis", "loc", "u[1,1]"]);
    let v: serde_json::Value = serde_json::from_slice(&forced.stdout).unwrap();
    assert_eq!(v["basis"], "loc");
}

#[test]
fn line_reports_parameters() {
    let o = vk(&["--n", "3", "line", "L(2,0,1; 1/2, 0, zeta)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "line element L(2,0,1; 1/2,0,(zeta))");
}

#[test]
fn verify_json_is_deterministic_and_written() {
    let path = std::env::temp_dir().join(format!("vk-report-{}.json", std::process::id()));
    let path_s = path.to_str().unwrap();
    let args = ["verify", "--n-min", "2", "--n-max", "3", "--suite", "span,presentation", "--json", "--out", path_s];
    let a = vk(&args);
    let b = vk(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_file(&path).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 4);
    assert_eq!(reports[0]["suite"], "span");
    assert_eq!(reports[0]["n"], 2);
    assert!(reports[0].get("timing_ms").is_none());
    let check = &reports[0]["checks"][0];
    for key in ["id", "status", "lhs", "rhs"] {
        assert!(check.get(key).is_some(), "{key}");
    }
}

#[test]
fn verify_text_and_single_n() {
    let o = vk(&["--n", "3", "verify", "--suite", "psi-ring", "--k-max", "3", "--sequential"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("n=3 psi-ring"), "{text}");
    assert!(text.contains("all checks passed"));
}
