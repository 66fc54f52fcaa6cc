use std::process::{Command, Output};

use dadew_core::grouppoly::{Family, GroupDescriptor};
use dadew_core::pipeline::{w_invariant, WReport};

fn dadew(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dadew"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gu_21_table_shows_the_relative_syzygy() {
    let o = dadew(&[
        "w-invariant",
        "--family",
        "gu",
        "--n",
        "21",
        "--q",
        "5",
        "--p",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("Ω_{D/D_1}(k)"), "{out}");
    assert!(out.contains("7^2"), "{out}");
    assert!(out.contains("GU_7(125)"), "{out}");
}

#[test]
fn gl_6_json_is_trivial_with_defect_one() {
    let o = dadew(&[
        "w-invariant",
        "--family",
        "gl",
        "--n",
        "6",
        "--q",
        "2",
        "--p",
        "7",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["trivial"], serde_json::json!(true));
    assert_eq!(v["defect_exponent"], serde_json::json!(1));
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in [
        "family",
        "n",
        "q",
        "p",
        "n0",
        "d",
        "m",
        "aprime",
        "eps_reduced",
        "q_reduced",
        "defect_exponent",
        "label",
        "rendered",
        "trivial",
        "chain",
        "notes",
    ] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(keys.len(), 16);
    assert_eq!(v["label"]["A"], serde_json::json!([]));
}

#[test]
fn json_round_trips_to_the_library_report() {
    let o = dadew(&[
        "w-invariant",
        "--family",
        "spin-",
        "--n",
        "42",
        "--q",
        "5",
        "--p",
        "7",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let parsed: WReport = serde_json::from_slice(&o.stdout).unwrap();
    let g = GroupDescriptor::new(Family::SpinMinus, 42, 5).unwrap();
    assert_eq!(parsed, w_invariant(&g, 7, None).unwrap());
    assert_eq!(parsed.label.indices(), vec![1]);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "enumerate",
        "--family",
        "sp",
        "--n",
        "24",
        "--q",
        "4",
        "--p",
        "7",
    ];
    assert_eq!(dadew(&args).stdout, dadew(&args).stdout);
}

#[test]
fn enumerate_lists_one_row_per_scenario() {
    let o = dadew(&[
        "enumerate",
        "--family",
        "gu",
        "--n",
        "21",
        "--q",
        "5",
        "--p",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(2).collect();
    assert_eq!(rows.len(), 7, "{out}");
    assert_eq!(
        rows.iter().filter(|r| r.contains("Ω_{D/D_1}(k)")).count(),
        1
    );
    assert!(rows[6].starts_with("21"));

    let o = dadew(&[
        "enumerate",
        "--family",
        "gu",
        "--n",
        "21",
        "--q",
        "5",
        "--p",
        "7",
        "--json",
    ]);
    let v: Vec<WReport> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v.iter().map(|r| r.n0).collect::<Vec<_>>(),
        vec![3, 6, 9, 12, 15, 18, 21]
    );
}

#[test]
fn enumerate_keeps_caveat_rows() {
    let o = dadew(&[
        "enumerate",
        "--family",
        "gu",
        "--n",
        "2",
        "--q",
        "2",
        "--p",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().count() >= 3);
}

#[test]
fn bdr_example_passes() {
    let o = dadew(&["bdr-example"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("449"));
    assert!(!out.contains("FAIL"));
    let o = dadew(&["bdr-example", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["defect_group_order"], serde_json::json!(49));
    assert_eq!(v["tree_edges"], serde_json::json!(3));
    assert_eq!(v["morita_side_trivial"], serde_json::json!(true));
}

#[test]
fn verify_single_suite() {
    let o = dadew(&["verify", "--suite", "dade"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("0 failures"), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_all_suites() {
    let o = dadew(&["verify", "--suite", "all", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
}

#[test]
fn validation_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &[
            "w-invariant",
            "--family",
            "gx",
            "--n",
            "3",
            "--q",
            "5",
            "--p",
            "7",
        ],
        &[
            "w-invariant",
            "--family",
            "gl",
            "--n",
            "3",
            "--q",
            "7",
            "--p",
            "7",
        ],
        &[
            "w-invariant",
            "--family",
            "gl",
            "--n",
            "three",
            "--q",
            "5",
            "--p",
            "7",
        ],
        &[
            "w-invariant",
            "--family",
            "gl",
            "--n",
            "3",
            "--q",
            "6",
            "--p",
            "7",
        ],
        &[
            "w-invariant",
            "--family",
            "gu",
            "--n",
            "25",
            "--q",
            "5",
            "--p",
            "3",
            "--support",
            "3",
        ],
        &[
            "w-invariant",
            "--family",
            "su",
            "--n",
            "9",
            "--q",
            "2",
            "--p",
            "3",
        ],
        &[
            "w-invariant",
            "--family",
            "gl",
            "--n",
            "3",
            "--q",
            "5",
            "--p",
            "9",
        ],
        &["verify", "--suite", "nonsense"],
        &["w-invariant", "--family", "gl", "--n", "3", "--q", "5"],
        &[],
    ];
    for args in cases {
        let o = dadew(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(dadew(&["--help"]).status.code(), Some(0));
}
