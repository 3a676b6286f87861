mod common;

use std::process::Command;

use khtor::diagram::parse_pd;

fn khtor(args: &[&str], threads: &str) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_khtor"))
        .args(args)
        .env("KHTOR_THREADS", threads)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path(name: &str) -> String {
    common::knot_path(name).display().to_string()
}

#[test]
fn right_trefoil_table() {
    let (code, out, _) = khtor(&["kh", &path("3_1_right")], "1");
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "j\\i  0  1  2    3\n  9             1\n  7           1_2\n  5        1\n  3  1\n  1  1\n"
    );
    let (_, csv, _) = khtor(&["kh", "--format", "csv", &path("3_1_right")], "1");
    assert_eq!(csv, "i,j,free,torsion\n0,1,1,\n0,3,1,\n2,5,1,\n3,7,0,2:1\n3,9,1,\n");
    let (_, json, _) = khtor(&["kh", "--format", "json", &path("3_1_right")], "1");
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["writhe"], 3);
    assert_eq!(v["crossings"], 3);
}

#[test]
fn field_coefficients() {
    let (code, out, _) = khtor(&["kh", "--ring", "F2", &path("3_1_right")], "1");
    assert_eq!(code, 0);
    assert_eq!(out, "j\\i  0  1  2  3\n  9           1\n  7        1  1\n  5        1\n  3  1\n  1  1\n");
    let (code, _, err) = khtor(&["kh", "--ring", "F6", &path("3_1_right")], "1");
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn output_is_independent_of_threads() {
    for name in ["6_1", "8_19"] {
        for format in ["text", "csv", "json"] {
            let one = khtor(&["kh", "--format", format, &path(name)], "1");
            let four = khtor(&["kh", "--format", format, &path(name)], "4");
            assert_eq!(one, four, "{name} {format}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(khtor(&["kh", "no/such/file.pd"], "1").0, 2);
    assert_eq!(khtor(&["kh", "--cap", "4", &path("6_1")], "1").0, 3);
    assert_eq!(khtor(&["summand", &path("unknot"), &path("6_1")], "1").0, 0);
    assert_eq!(khtor(&["summand", &path("4_1"), &path("3_1_left")], "1").0, 1);
    assert_eq!(khtor(&["bogus"], "1").0, 2);
    assert_eq!(khtor(&["--help"], "1").0, 0);
}

#[test]
fn emitted_diagrams_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Vec<String>> = vec![
        vec!["consum".into(), path("3_1_left"), path("6_1")],
        vec!["consum".into(), path("3_1_left"), path("4_1"), "--format".into(), "json".into()],
        vec!["ktjoin".into(), path("3_1_left"), "--arc".into(), "1".into(), "--arc".into(), "4".into()],
        vec!["satellite".into(), path("3_1_left")],
        vec!["satellite".into(), path("unknot")],
    ];
    for (k, args) in runs.iter().enumerate() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out, err) = khtor(&args, "1");
        assert_eq!(code, 0, "{args:?}: {err}");
        let d = parse_pd(&out).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(d.is_knot());
        // and the file is accepted by the other subcommands
        let f = dir.path().join(format!("{k}.pd"));
        std::fs::write(&f, &out).unwrap();
        assert_eq!(khtor(&["alexander", f.to_str().unwrap()], "1").0, 0);
    }
}

#[test]
fn construction_sizes() {
    let (_, out, _) = khtor(&["satellite", &path("3_1_left")], "1");
    let d = parse_pd(&out).unwrap();
    let p = khtor::diagram::livingston_pattern().crossing_count();
    assert_eq!(d.crossing_count(), 9 * 3 + p + 6 * 3);
    let (_, out, _) = khtor(&["ktjoin", &path("3_1_left"), "--arc", "1", "--arc", "4"], "1");
    let kt = khtor::diagram::kt_tangle().crossing_count();
    assert_eq!(parse_pd(&out).unwrap().crossing_count(), 3 + kt);
}

#[test]
fn alexander_family() {
    let (code, out, _) = khtor(&["alexander", &path("3_1_left"), "--family", &path("6_1"), "--n", "2"], "1");
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n crossings direct predicted");
    assert_eq!(lines.len(), 5);
    assert_eq!(*lines.last().unwrap(), "PASS");
    let (_, out, _) = khtor(&["alexander", &path("6_1")], "1");
    assert_eq!(out, "2 -5 2\n");
    let (_, out, _) = khtor(&["alexander", "--laurent", &path("6_1")], "1");
    assert_eq!(out, "-2t^-1 + 5 - 2t\n");
}

#[test]
fn triplet_dump() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("trefoil.txt");
    let (code, _, err) = khtor(&["kh", "--dump-triplets", f.to_str().unwrap(), &path("3_1_left")], "1");
    assert_eq!(code, 0, "{err}");
    assert!(!std::fs::read_to_string(&f).unwrap().is_empty());
}
