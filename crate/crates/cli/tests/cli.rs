//! Binary-level checks: output schemas, exit codes, and reproducibility.

use std::process::{Command, Output};

fn wecken(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wecken"))
        .args(args)
        .env_remove("WECKEN_BUDGET")
        .output()
        .expect("binary runs")
}

fn wecken_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wecken"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn tails_lists_slots_and_equalities() {
    let out = wecken(&["tails", "--rank", "2", "--images", "1 2", "2 1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("slot 0: trivial w=e wbar=e"));
    assert!(text.contains("slot 1: gen=1 pos=1 sign=+1 w=e wbar=-2"));
    assert!(text.contains("slot 2: gen=2 pos=1 sign=+1 w=e wbar=-1"));
    assert_eq!(text.matches("len=0").count(), 5);
}

#[test]
fn tails_empty_image_contributes_nothing() {
    let out = wecken(&["tails", "--rank", "2", "--images", "e", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.matches("slot ").count(), 2);
    assert!(text.contains("gen=2"));
}

#[test]
fn tails_rejects_zero_token() {
    let out = wecken(&["tails", "--rank", "2", "--images", "0", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("index 0"));
}

#[test]
fn tails_json_round_trips() {
    let out = wecken(&[
        "tails", "--format", "json", "--rank", "2", "--images", "2 1 -2", "2 2",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["slots"].as_array().unwrap().len(), 4);
    assert!(!v["equalities"].as_array().unwrap().is_empty());
}

#[test]
fn classify_reports_certified_v() {
    let out = wecken(&["classify", "--rank", "2", "--images", "2 1 2", "1 1"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["wecken"], "certified_v");
    assert_eq!(v["nielsen_lower_bound"], 2);
    assert_eq!(v["V"], true);
}

#[test]
fn classify_reports_certified_b_for_identity() {
    let out = wecken(&["classify", "--rank", "2", "--images", "1", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["wecken"], "certified_b");
    assert_eq!(v["nielsen_lower_bound"], 1);
}

#[test]
fn classify_reports_no_remnant() {
    let out = wecken(&["classify", "--rank", "2", "--images", "1 2", "1 2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["wecken"], "no_remnant");
    assert_eq!(v["remnant"], false);
    assert_eq!(code(&out), 0);
}

#[test]
fn classify_accepts_inline_json() {
    let out = wecken(&[
        "classify",
        "--json",
        r#"{"rank":2,"images":["2 1 2","1 1"]}"#,
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["wecken"], "certified_v");
}

#[test]
fn alpha_and_signed_inputs_agree() {
    let signed = wecken(&["classify", "--rank", "2", "--images", "1 2", "2 1"]);
    let alpha = wecken(&["classify", "--alpha", "--rank", "2", "--images", "ab", "ba"]);
    assert_eq!(stdout(&signed), stdout(&alpha));
}

#[test]
fn unreduced_input_warns_but_succeeds() {
    let out = wecken(&["classify", "--rank", "2", "--images", "1 -1 2", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("not freely reduced"));
}

#[test]
fn census_small_ball_csv_row() {
    let out = wecken(&["census", "--rank", "2", "--max-p", "1", "--no-header"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,p,total,remnant,vprime,v,a0,b,ak_json,wecken_certified,xp_num,xp_den"
    );
    assert_eq!(
        lines.next().unwrap(),
        r#"2,1,25,8,16,5,3,3,"{""0"":3}",8,16,25"#
    );
}

#[test]
fn census_json_mirror() {
    let out = wecken(&["census", "--rank", "2", "--max-p", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["total"], 25);
    assert_eq!(v["vprime"], 16);
    assert_eq!(v["ak"]["0"], 3);
    assert_eq!(v["xp_num"], "16");
}

#[test]
fn census_budget_exceeded_exits_3() {
    let out = wecken(&["census", "--rank", "3", "--max-p", "4"]);
    assert_eq!(code(&out), 3);
    let err = stderr(&out);
    assert!(err.contains("822656953"), "{err}");
    assert!(err.contains("budget"));
}

#[test]
fn budget_env_override_applies() {
    let out = wecken_env(
        &["census", "--rank", "2", "--max-p", "1"],
        "WECKEN_BUDGET",
        "10",
    );
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("25"));
}

#[test]
fn header_comment_is_suppressible() {
    let with = wecken(&["census", "--rank", "2", "--max-p", "1"]);
    assert!(stdout(&with).starts_with("# wecken census generated-at-unix="));
    let without = wecken(&["census", "--rank", "2", "--max-p", "1", "--no-header"]);
    assert!(!stdout(&without).contains('#'));
}

#[test]
fn xp_column_is_nonincreasing() {
    let out = wecken(&["xp", "--rank", "2", "--max-p", "4", "--no-header"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "p,xp_num,xp_den,xp_decimal");
    let decimals: Vec<f64> = lines
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(decimals.len(), 4);
    for pair in decimals.windows(2) {
        assert!(pair[0] >= pair[1]);
    }
}

#[test]
fn bounds_single_rank_and_range() {
    let out = wecken(&["bounds", "--n", "8", "--precision", "6", "--no-header"]);
    let text = stdout(&out);
    assert!(text.contains("8,101,112,0.901786"), "{text}");

    let ranged = wecken(&["bounds", "--n-range", "7..8", "--no-header"]);
    let text = stdout(&ranged);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("7,149,168,"));
    assert!(rows[1].starts_with("8,101,112,"));
}

#[test]
fn bounds_per_k_table() {
    let out = wecken(&[
        "bounds",
        "--n",
        "2",
        "--k-max",
        "3",
        "--no-header",
        "--precision",
        "6",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,k,bound_num,bound_den,bound_decimal"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0], "2,1,1,3,0.333333");
    assert_eq!(rows[1], "2,2,1,9,0.111111");
    assert_eq!(rows[2], "2,3,1,27,0.037037");
}

#[test]
fn mc_rows_follow_schema() {
    let out = wecken(&[
        "mc",
        "--rank",
        "2",
        "--max-p",
        "3",
        "--samples",
        "4000",
        "--seed",
        "9",
        "--shards",
        "2",
        "--no-header",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,p,samples,seed,shards,category,fraction,ci_low,ci_high"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[..5], ["2", "3", "4000", "9", "2"]);
        let fraction: f64 = fields[6].parse().unwrap();
        let lo: f64 = fields[7].parse().unwrap();
        let hi: f64 = fields[8].parse().unwrap();
        assert!(lo <= fraction && fraction <= hi);
    }
}

#[test]
fn invalid_config_exits_2() {
    assert_eq!(
        code(&wecken(&[
            "mc",
            "--rank",
            "2",
            "--max-p",
            "3",
            "--samples",
            "0"
        ])),
        2
    );
    assert_eq!(
        code(&wecken(&["trend", "--n-list", "1,3", "--samples", "10"])),
        2
    );
    assert_eq!(code(&wecken(&["bounds", "--n-range", "9..2"])), 2);
    assert_eq!(code(&wecken(&["bounds", "--n", "1"])), 2);
    assert_eq!(
        code(&wecken(&[
            "tails", "--format", "csv", "--rank", "2", "--images", "1", "2"
        ])),
        2
    );
    // clap usage errors share the invalid-input code.
    assert_eq!(code(&wecken(&["census", "--rank", "2"])), 2);
    assert_eq!(code(&wecken(&["no-such-command"])), 2);
}

#[test]
fn trend_emits_comparison_columns() {
    let out = wecken(&[
        "trend",
        "--n-list",
        "2,3",
        "--max-p",
        "6",
        "--samples",
        "1500",
        "--seed",
        "4",
        "--shards",
        "2",
        "--no-header",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("n,p,samples,seed,remnant,vprime,"));
    assert!(header.contains("a0_minus_two_over_e"));
    assert!(header.contains("a0_minus_one_minus_inv_e"));
    assert!(header.contains("wecken_bound"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("2,6,1500,4,"));
    assert!(rows[1].starts_with("3,6,1500,4,"));
}
