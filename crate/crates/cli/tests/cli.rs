use std::process::{Command, Output};

fn qet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qet"))
        .args(args)
        .output()
        .expect("running qet")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix(" = "))
}

#[test]
fn deff_of_table1() {
    let o = qet(&[
        "deff",
        "--code",
        "table1",
        "--admissible",
        "ZI",
        "--cap",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "d_eff"), Some("3"));
}

#[test]
fn verify_table2_passes_and_narrower_set_fails() {
    let o = qet(&[
        "verify",
        "qet",
        "--code",
        "table2",
        "--admissible",
        "ZI,IZ",
        "--max-weight",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "verdict"), Some("pass"));

    let o = qet(&["verify", "qet", "--code", "table2", "--admissible", "ZI"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert_eq!(value(&out, "verdict"), Some("fail"));
    assert_eq!(
        value(&out, "witness").map(|w| w.split(' ').count()),
        Some(2)
    );
}

#[test]
fn verify_qec_on_table1_fails() {
    let o = qet(&["verify", "qec", "--code", "table1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn toric_pure_z_class_weight() {
    for class in ["Z1Z2", "ZZ"] {
        let o = qet(&[
            "distance", "--code", "toric:3", "--class", class, "--pure", "z", "--cap", "6",
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(value(&stdout(&o), "d"), Some("6"), "{class}");
    }
}

#[test]
fn cap_limited_exact_request_exits_3() {
    let o = qet(&["distance", "--code", "css17", "--cap", "2", "--exact"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(value(&stdout(&o), "d"), Some(">= 3"));
    let o = qet(&["distance", "--code", "css17", "--cap", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(
        qet(&["verify", "qet", "--code", "nope", "--admissible", "ZI"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qet(&["distance", "--code", "table1"]).status.code(),
        Some(2)
    );
    assert_eq!(qet(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        qet(&["verify", "qet", "--code", "table2", "--admissible", "QQ"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn json_output_is_parseable() {
    let o = qet(&[
        "--json", "distance", "--code", "toric:3", "--class", "ZZ", "--pure", "z", "--cap", "6",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cap"], 6);
    assert_eq!(
        v["witness"][0]
            .as_str()
            .map(|w| w.chars().filter(|&c| c == 'Z').count()),
        Some(6)
    );
}

#[test]
fn emitted_codes_read_back() {
    let dir = std::env::temp_dir().join(format!("qet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table2.code");
    let p = path.to_str().unwrap();
    assert_eq!(
        qet(&["catalog", "emit", "table2", "--out", p])
            .status
            .code(),
        Some(0)
    );
    let o = qet(&["verify", "qet", "--code", p, "--admissible", "ZI,IZ"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn css_build_from_cyclic_codes() {
    let c1 = "dual:shifts:17:1+x^3+x^4+x^9+x^10+x^13:7";
    let c2 = "cyclic:17:1+x^3+x^4+x^5+x^8";
    let o = qet(&["css", "build", "--c1", c1, "--c2", c2, "--cap", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "k"), Some("2"));
    assert_eq!(value(&out, "d_x"), Some("3"));
    assert_eq!(value(&out, "d_z"), Some("5"));
}

#[test]
fn simulate_is_seeded() {
    let args = [
        "simulate",
        "--code",
        "table1",
        "--admissible",
        "default",
        "--trials",
        "5000",
        "--seed",
        "11",
    ];
    let a = qet(&args);
    let b = qet(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(value(&stdout(&a), "violations"), Some("0"));

    let o = qet(&[
        "simulate",
        "--code",
        "table1",
        "--admissible",
        "ZI",
        "--trials",
        "10",
    ]);
    assert!(value(&stdout(&o), "seed").is_some_and(|s| s.parse::<u64>().is_ok()));
}

#[test]
fn random_search_replays_with_seed() {
    let args = [
        "search",
        "--n",
        "6",
        "--k",
        "2",
        "--pattern",
        "ZI,IZ",
        "--seed",
        "7",
        "--budget",
        "20000",
        "--max-hits",
        "1",
    ];
    let a = stdout(&qet(&args));
    assert_eq!(value(&a, "hits"), Some("1"));
    assert_eq!(a, stdout(&qet(&args)));
}

#[test]
fn lattice_and_concat() {
    let o = qet(&["lattice", "check", "--cell", "eq16"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qet(&["lattice", "torus", "--cell", "eq16", "--L", "4,4"]);
    assert_eq!(value(&stdout(&o), "n"), Some("48"));
    let o = qet(&[
        "concat",
        "--outer",
        "table1",
        "--inner",
        "inner-5q",
        "--admissible",
        "default",
        "--cap",
        "5",
    ]);
    let out = stdout(&o);
    assert_eq!(value(&out, "n"), Some("35"));
    assert_eq!(value(&out, "d_eff"), Some(">= 6"));
}
