use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sopq::formats::DistOutput;
use sopq::grid::ZonalRow;

fn sopq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sopq")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn scratch(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn zonal_at_sigma_zero_is_one() {
    let o = sopq(&["zonal", "--p", "3", "--q", "2", "--sigma", "0,0", "--alpha", "0.5", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rows: Vec<ZonalRow> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 1);
    assert!((rows[0].re.unwrap() - 1.0).abs() < 1e-14);
    assert!(rows[0].im.unwrap().abs() < 1e-14);
}

#[test]
fn csv_header_and_row_order() {
    let o = sopq(&[
        "zonal", "--p", "4", "--q", "3", "--sigma", "-2.5,0", "--sigma", "-2.5,1.5", "--alpha", "0:1:4",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,q,sigma_re,sigma_im,alpha,re,im,tail_estimate,terms_used,error"
    );
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<ZonalRow> = reader.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows[..4].iter().all(|r| r.sigma_im == 0.0));
    assert!(rows.windows(2).take(3).all(|w| w[0].alpha < w[1].alpha));
}

#[test]
fn json_round_trip_is_exact() {
    let args = ["zonal", "--p", "5", "--q", "2", "--sigma", "-2.5,0.7", "--alpha", "0.1:0.9:5", "--format", "json"];
    let first = stdout(&sopq(&args));
    let rows: Vec<ZonalRow> = serde_json::from_str(&first).unwrap();
    let again = serde_json::to_string_pretty(&rows).unwrap() + "\n";
    assert_eq!(first, again);
}

#[test]
fn q1_series_matches_closed_form_columns() {
    let series = sopq(&["zonal", "--p", "4", "--q", "1", "--sigma", "-1.5,0.8", "--alpha", "0:1.2:7", "--format", "json"]);
    let closed = sopq(&[
        "zonal", "--p", "4", "--q", "1", "--sigma", "-1.5,0.8", "--alpha", "0:1.2:7", "--format", "json", "--method",
        "closed-form",
    ]);
    let a: Vec<ZonalRow> = serde_json::from_str(&stdout(&series)).unwrap();
    let b: Vec<ZonalRow> = serde_json::from_str(&stdout(&closed)).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x.re.unwrap() - y.re.unwrap()).abs() < 1e-12);
        assert!((x.im.unwrap() - y.im.unwrap()).abs() < 1e-12);
    }
}

#[test]
fn group_flag_uses_the_special_path() {
    let special = sopq(&["zonal", "--group", "so42", "--sigma", "-2,1", "--alpha", "0.7", "--format", "json"]);
    assert_eq!(code(&special), 0);
    let general = sopq(&["zonal", "--p", "4", "--q", "2", "--sigma", "-2,1", "--alpha", "0.7", "--format", "json"]);
    let a: Vec<ZonalRow> = serde_json::from_str(&stdout(&special)).unwrap();
    let b: Vec<ZonalRow> = serde_json::from_str(&stdout(&general)).unwrap();
    assert_eq!((a[0].p, a[0].q), (4, 2));
    assert!((a[0].re.unwrap() - b[0].re.unwrap()).abs() < 1e-12);
}

#[test]
fn compare_passes_and_detects_a_corrupted_series() {
    let base = ["compare", "--p", "3", "--q", "2", "--sigma", "-1.5,1", "--alpha", "0.1:1:4"];
    let o = sopq(&base);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let mut bad = base.to_vec();
    bad.extend(["--corrupt-series", "1e-6"]);
    let o = sopq(&bad);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("false"));
}

#[test]
fn compare_associated_index() {
    let o = sopq(&[
        "compare", "--p", "4", "--q", "2", "--nu", "1", "--r", "0", "--s", "1", "--alpha", "0.1:0.4:2", "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((rows[0]["lambda"].as_u64(), rows[0]["mu"].as_u64()), (Some(1), Some(3)));
}

#[test]
fn shipped_horn_fixture_equals_the_zonal_command() {
    let alpha: f64 = 0.4;
    let t2 = alpha.tanh().powi(2);
    let x = format!("{t2},{t2}");
    let o = sopq(&["horn", "--spec", &fixture("zonal_4f2_p4_q3.json"), "--x", &x]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let (re, im) = (v["re"].as_f64().unwrap() / alpha.cosh(), v["im"].as_f64().unwrap() / alpha.cosh());
    let z = sopq(&["zonal", "--p", "4", "--q", "3", "--sigma", "-2.5,0.5", "--alpha", "0.4", "--format", "json"]);
    let rows: Vec<ZonalRow> = serde_json::from_str(&stdout(&z)).unwrap();
    assert!((re - rows[0].re.unwrap()).abs() < 1e-12);
    assert!((im - rows[0].im.unwrap()).abs() < 1e-12);
}

#[test]
fn horn_2f1_at_zero_is_one() {
    let spec = scratch(
        "gauss.json",
        r#"{"variables":1,"numerator":[{"re":0.5,"row":[1]},{"re":1.5,"im":0.2,"row":[1]}],"denominator":[{"re":2,"row":[1]}]}"#,
    );
    let o = sopq(&["horn", "--spec", &spec, "--x", "0"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["re"].as_f64(), v["im"].as_f64()), (Some(1.0), Some(0.0)));
}

#[test]
fn horn_input_errors() {
    let unbalanced = scratch(
        "unbalanced.json",
        r#"{"variables":1,"numerator":[{"re":0.5,"row":[1]}],"denominator":[{"re":2,"row":[1]}]}"#,
    );
    let o = sopq(&["horn", "--spec", &unbalanced, "--x", "0.1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unbalanced"));
    let garbage = scratch("garbage.json", "{not json");
    assert_eq!(code(&sopq(&["horn", "--spec", &garbage, "--x", "0.1"])), 2);
    assert_eq!(code(&sopq(&["horn", "--spec", "/nonexistent/spec.json", "--x", "0.1"])), 2);
    let gauss = scratch(
        "gauss_far.json",
        r#"{"variables":1,"numerator":[{"re":0.5,"row":[1]},{"re":0.5,"row":[1]}],"denominator":[{"re":1,"row":[1]}]}"#,
    );
    assert_eq!(code(&sopq(&["horn", "--spec", &gauss, "--x", "1.5"])), 2);
}

#[test]
fn dist_identity_and_scaling() {
    let id = scratch("identity.json", "[[1.0]]");
    let o = sopq(&["dist", "--beta", &id, "--q", "2"]);
    assert_eq!(code(&o), 0);
    let t: DistOutput = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t.terms.len(), 1);
    assert_eq!((t.terms[0].p.clone(), t.terms[0].coeff), (vec![2], 1.0));
    let half = scratch("half.json", "[[0.5]]");
    let t: DistOutput = serde_json::from_str(&stdout(&sopq(&["dist", "--beta", &half, "--q", "1"]))).unwrap();
    assert_eq!(t.terms[0].coeff, 0.25);
}

#[test]
fn dist_matches_the_regression_fixture() {
    let o = sopq(&["dist", "--beta", &fixture("dist_k2_beta.json"), "--q", "2,1"]);
    assert_eq!(code(&o), 0);
    let got: DistOutput = serde_json::from_str(&stdout(&o)).unwrap();
    let expected: DistOutput =
        serde_json::from_str(&std::fs::read_to_string(fixture("dist_k2_expected.json")).unwrap()).unwrap();
    assert_eq!(got.det_beta, expected.det_beta);
    assert_eq!(got.as_map().keys().collect::<Vec<_>>(), expected.as_map().keys().collect::<Vec<_>>());
    for (g, e) in got.terms.iter().zip(&expected.terms) {
        assert!((g.coeff - e.coeff).abs() < 1e-12 * e.coeff.abs(), "{:?}", g.p);
    }
}

#[test]
fn dist_singular_and_mismatched_inputs() {
    let singular = scratch("singular.json", r#"{"beta": [[1, 2], [2, 4]]}"#);
    assert_eq!(code(&sopq(&["dist", "--beta", &singular, "--q", "1,1"])), 2);
    let ok = scratch("ok.json", "[[1, 0], [0, 1]]");
    assert_eq!(code(&sopq(&["dist", "--beta", &ok, "--q", "1,1,1"])), 2);
    let ragged = scratch("ragged.json", "[[1, 0], [0]]");
    assert_eq!(code(&sopq(&["dist", "--beta", &ragged, "--q", "1,1"])), 2);
}

#[test]
fn exit_codes_for_bad_input_and_numerical_failure() {
    assert_eq!(code(&sopq(&["zonal", "--p", "3", "--q", "2", "--alpha", "1:0:3"])), 2);
    assert_eq!(code(&sopq(&["zonal", "--p", "1", "--q", "2"])), 2);
    assert_eq!(code(&sopq(&["zonal", "--p", "3", "--q", "2", "--sigma", "a,b"])), 2);
    assert_eq!(code(&sopq(&["frobnicate"])), 2);
    let o = sopq(&["zonal", "--p", "3", "--q", "2", "--sigma", "0,0", "--alpha", "0.5:3:2"]);
    assert_eq!(code(&o), 3);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3, "the grid is completed: {text}");
}

#[test]
fn selftest_single_criterion() {
    let o = sopq(&["selftest", "--criterion", "9"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("criterion 9 [PASS]"));
    assert_eq!(code(&sopq(&["selftest", "--criterion", "12"])), 2);
}
