use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use qk_core::localization::LocalizationInput;
use qk_core::toric::ToricGitDatum;

fn qk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qk")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("qk-cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Run with `--out`, returning the exit status and the raw JSON text.
fn qk_json(name: &str, args: &[&str]) -> (i32, String) {
    let path = scratch(name);
    let _ = std::fs::remove_file(&path);
    let out = path.to_str().unwrap().to_string();
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--out", &out]);
    let o = qk(&all);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    (o.status.code().unwrap(), text)
}

const COMMANDS: &[&[&str]] = &[
    &["present", "--example", "bz2"],
    &["present", "--example", "wps 1 2"],
    &["ifun", "--example", "pn 1", "--cap", "2", "--jet", "1", "--zorder", "3"],
    &["chi", "--example", "p1xp1", "--psi", "1,2"],
    &["wallcross", "--example", "cremona"],
    &["grass", "--example", "grass 2 3", "--killing", "none"],
    &["crepant-check", "--weights", "2x2,-2x2"],
];

#[test]
fn output_is_deterministic_and_reparses() {
    for (i, args) in COMMANDS.iter().enumerate() {
        let (s1, a) = qk_json(&format!("det-{i}-a.json"), args);
        let (s2, b) = qk_json(&format!("det-{i}-b.json"), args);
        assert_eq!((s1, s2), (0, 0), "{args:?}");
        assert_eq!(a, b, "{args:?}");
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", a);
    }
}

#[test]
fn embedded_data_reparse_into_equal_values() {
    let (_, text) = qk_json("rt-chi.json", &["chi", "--example", "blp2", "--psi", "1,1"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let input = LocalizationInput::from_json(&v["input"]).unwrap();
    assert_eq!(LocalizationInput::from_json(&input.to_json()).unwrap(), input);

    let (_, text) = qk_json("rt-wall.json", &["wallcross", "--example", "pn 2", "--class", "3"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let datum = ToricGitDatum::from_json(&v["datum"]).unwrap();
    assert_eq!(datum.to_json(), v["datum"]);
    assert_eq!(v["result"]["chambers"][1]["chi"], "10");
}

#[test]
fn bz2_presentation() {
    let (status, text) = qk_json("bz2.json", &["present", "--example", "bz2"]);
    assert_eq!(status, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["ring"]["rank"], 2);
    assert_eq!(v["result"]["ring"]["relation_text"], "Y^2 - 2*Y - q + 1 = 0");
    assert_eq!(v["result"]["ring"]["product_table"][1][1], "q");
}

#[test]
fn ifun_below_every_positive_degree_is_one() {
    let (status, text) = qk_json("ifun-one.json", &["ifun", "--example", "pn 2", "--cap", "1/2"]);
    assert_eq!(status, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    let coeffs = v["result"]["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 1);
    assert_eq!(coeffs[0]["degree"], serde_json::json!([0]));
    assert_eq!(coeffs[0]["jet"][0]["text"], "[(1)]");
}

#[test]
fn cremona_table() {
    let o = qk(&["wallcross", "--example", "cremona-degenerate"]);
    assert_eq!(o.status.code(), Some(0));
    let table = String::from_utf8(o.stdout).unwrap();
    assert_eq!(table.lines().filter(|l| l.contains("smooth")).count(), 6);
    assert!(table.lines().filter(|l| l.contains("smooth")).all(|l| l.split_whitespace().rev().take(2).all(|x| x == "1")));
    assert!(table.contains("telescope: ok"));
}

#[test]
fn problem_files() {
    let path = scratch("problem-wall.json");
    let doc = serde_json::json!({
        "kind": "wallcross",
        "datum": {
            "datum": {"weights": [[1], [1], [1]], "theta": ["1"]},
            "theta_minus": ["-1"],
            "theta_plus": ["1"],
            "class": [{"coefficient": 1, "character": [2]}],
        },
    });
    std::fs::write(&path, doc.to_string()).unwrap();
    let (status, text) = qk_json("problem-wall-out.json", &["wallcross", "--json", path.to_str().unwrap()]);
    assert_eq!(status, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["chambers"][1]["chi"], "6");

    let chi_path = scratch("problem-chi.json");
    let chi_doc = serde_json::json!({
        "kind": "chi",
        "datum": {"one_ps": [], "points": [{"tangent_weights": [[1, -1]], "class": [2, 0]}, {"tangent_weights": [[-1, 1]], "class": [0, 2]}]},
        "options": {"one_ps": [1, 3]},
    });
    std::fs::write(&chi_path, chi_doc.to_string()).unwrap();
    let (status, text) = qk_json("problem-chi-out.json", &["chi", "--json", chi_path.to_str().unwrap()]);
    assert_eq!(status, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["euler_characteristic"], "3");
    assert_eq!(v["input"]["one_ps"], serde_json::json!([1, 3]));

    // A problem of another kind is an input error.
    let (status, text) = qk_json("problem-kind.json", &["chi", "--json", path.to_str().unwrap()]);
    assert_eq!(status, 1);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["error"]["code"], "input.usage");
}

#[test]
fn exit_statuses() {
    // Input errors.
    assert_eq!(qk(&["present", "--example", "nonsense"]).status.code(), Some(1));
    assert_eq!(qk(&["present"]).status.code(), Some(1));
    assert_eq!(qk(&["present", "--no-such-flag"]).status.code(), Some(1));
    assert_eq!(qk(&["--help"]).status.code(), Some(0));
    assert_eq!(qk(&["crepant-check", "--weights", "0"]).status.code(), Some(1));
    assert_eq!(qk(&["wallcross", "--example", "cremona", "--class", "1,2"]).status.code(), Some(1));
    assert_eq!(qk(&["chi", "--json", "/nonexistent/problem.json"]).status.code(), Some(1));
    let o = qk(&["wallcross", "--example", "p1xp1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("error[input.wallcross]"));
    // Failed mathematical checks.
    let (status, text) = qk_json("killing.json", &["grass", "--example", "grass 2 3"]);
    assert_eq!(status, 2);
    assert!(text.contains("check.normalization"));
    let (status, text) = qk_json("eulind.json", &["grass", "--example", "grass 2 2", "--killing", "none", "--eulind", "0,1"]);
    assert_eq!(status, 2);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["eulind"]["holds"], false);
}

#[test]
fn acceptance_filter_and_fault_injection() {
    let o = qk(&["acceptance", "--filter", "wallcross"]);
    assert_eq!(o.status.code(), Some(0));
    let out = String::from_utf8(o.stdout).unwrap();
    let ids: Vec<&str> = out.lines().map(|l| l.split_whitespace().nth(1).unwrap()).collect();
    assert_eq!(ids, vec!["[1]", "[2]"]);
    assert!(out.lines().all(|l| l.starts_with("PASS")));

    let o = qk(&["acceptance", "--filter", "presentation", "--perturb-batyrev", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("FAIL [4]"));
    assert_eq!(qk(&["acceptance", "--filter", "presentation"]).status.code(), Some(0));
    assert_eq!(qk(&["acceptance", "--filter", "none-such"]).status.code(), Some(1));
}
