use std::process::{Command, Output};

fn bell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bell"))
        .args(args)
        .output()
        .expect("run bell")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn default_table_matches_golden() {
    let golden = include_str!("fixtures/table1.tsv");
    let out = bell(&["table"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden);
    let again = bell(&["table", "--n-max", "8", "--m-max", "5", "--format", "tsv"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn value_routes_agree() {
    for method in ["egf", "recursion", "poly", "auto"] {
        let out = bell(&["value", "--n", "5", "--m", "5", "--method", method]);
        assert_eq!(stdout(&out), "7556\n", "method {method}");
    }
    let out = bell(&["value", "--n", "3", "--m", "100000000"]);
    assert_eq!(stdout(&out), "15000000250000001\n");
}

#[test]
fn poly_json_round_trips_through_value() {
    let out = bell(&["poly", "--n", "4", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        doc["coefficients"],
        serde_json::json!(["1", "9/2", "13/2", "3"])
    );
    assert_eq!(doc["leading_theorem"], "3");
    assert_eq!(doc["match"], true);
    assert_eq!(doc["n"], 4);
}

#[test]
fn asympt_report() {
    let out = bell(&["asympt", "--n", "3", "--m", "100", "--digits", "6"]);
    assert_eq!(
        stdout(&out),
        "n\t3\nm\t100\nexact\t15251\nleading\t15000\nratio\t15251/15000\nratio_decimal\t1.016733\n"
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bell(&["table", "--n-max", "0"]).status.code(), Some(2));
    assert_eq!(
        bell(&["value", "--n", "3", "--m", "1", "--method", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bell(&["poly", "--n", "0"]).status.code(), Some(2));
    assert_eq!(
        bell(&["poly", "--n", "0", "--allow-zero"]).status.code(),
        Some(0)
    );
    assert_eq!(bell(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn selfcheck_catches_perturbed_stirling() {
    let out = bell(&["selfcheck", "--perturb-stirling", "6,3"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(
        text.contains("first failure: cross-method equivalence"),
        "{text}"
    );
}
