use std::process::{Command, Output};

fn lamalpha(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamalpha"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_prints_the_derivation() {
    let o = lamalpha(&["check", "\\x. W x * x"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("{x} ⊢ \\x. W x * x  R5\n"), "{out}");
    assert!(out.contains("R8"));

    let o = lamalpha(&["check", "x", "--context", "{y}"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not derivable"));
}

#[test]
fn free_variables_and_goodness() {
    let o = lamalpha(&["fv", "W z * z"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "{z}; z\n".to_string()));
    let o = lamalpha(&["fv", "\\x. W y * z"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "undefined\n".to_string()));
    assert_eq!(stdout(&lamalpha(&["good", "\\y. W y * y"])), "yes\n");
    assert_eq!(lamalpha(&["good", "W z * z"]).status.code(), Some(1));
}

#[test]
fn reduce_traces() {
    let o = lamalpha(&["reduce", "(\\x.\\y.x) y", "--steps", "20"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[2], "Alpha\t[]\tz\t\\z. {z y} * [y/x]^y * x");
    assert_eq!(lines[6], "W\t[0]\tnull\t\\z. y");

    let o = lamalpha(&["reduce", "(\\x.x) y", "--steps", "5", "--trace", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["steps"][1]["printedTerm"], "y");
    assert_eq!(json["steps"][1]["pathAsChildIndices"], serde_json::json!([]));

    let o = lamalpha(&["reduce", "(\\x.x) y", "--strategy", "index:3", "--rules", "sigma"]);
    assert_eq!(stdout(&o), "");
}

#[test]
fn normalize_reports_exhaustion() {
    let o = lamalpha(&["normalize", "(\\x.\\y.\\z. x z (y z)) (\\x.\\y.x)"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "\\y. \\z. z\n".to_string()));
    let o = lamalpha(&["normalize", "(\\x. x x) (\\x. x x)", "--fuel", "50"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn translate_in_both_notations() {
    let o = lamalpha(&["translate", "\\x. W x * x", "--context", "{x}"]);
    assert_eq!(stdout(&o), "λ(x[↑])\n");
    let o = lamalpha(&[
        "translate",
        "\\x. W x * x",
        "--context",
        "{x}",
        "--calculus",
        "upsilon2",
        "--notation",
        "compose",
    ]);
    assert_eq!(stdout(&o), "Λ W∘x\n");
    let o = lamalpha(&["translate", "x", "--context", "{y}"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn equivalence() {
    let o = lamalpha(&["equiv", "\\x. W x * x", "\\y. x"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "true\n".to_string()));
    let o = lamalpha(&["equiv", "\\x. W x * x", "\\x. x", "--alpha"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "false\n".to_string()));
    let o = lamalpha(&["equiv", "W y * x", "x", "--context", "{x}; y"]);
    assert_eq!(o.status.code(), Some(0));
    let o = lamalpha(&["equiv", "x", "x", "--context", "{x}", "--alpha"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn normal_form_classification() {
    let o = lamalpha(&["nf", "\\y. W y * y"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert!(out.starts_with("sigma-nf: yes\npure: no"), "{out}");
    let o = lamalpha(&["nf", "\\y.\\z. z"]);
    assert_eq!(stdout(&o), "sigma-nf: yes\npure: \\y. \\z. z\n");
    assert_eq!(lamalpha(&["nf", "[y/x] * x"]).status.code(), Some(1));
}

#[test]
fn suites_run_and_reproduce() {
    let args = ["test", "confluence", "--count", "30", "--seed", "4", "--json"];
    let a = lamalpha(&args);
    let b = lamalpha(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["suite"], "confluence");
    assert_eq!(report["trials"], 30);
    let text = stdout(&lamalpha(&["test", "join-lemmas", "--count", "20"]));
    assert!(text.starts_with("suite join-lemmas seed 0: 20 trials, 20 passed"), "{text}");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(lamalpha(&["fv", "(x"]).status.code(), Some(2));
    assert_eq!(lamalpha(&["test", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(lamalpha(&["reduce", "x", "--strategy", "sideways"]).status.code(), Some(2));
    assert_eq!(lamalpha(&["test", "fv-least", "--size", "0"]).status.code(), Some(2));
}
