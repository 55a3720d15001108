use qet_core::catalog::{by_name, selftest, table2_admissible, NAMES};
use qet_core::lattice::{eq16_cell, parse_unit_cell, render_unit_cell};
use qet_core::pauli::errors_up_to_weight;
use qet_core::qet::{build_recovery, check_qet, effective_distance, AdmissibleSet};
use qet_core::report::{Outcome, Report};
use qet_core::search::{run_search, SearchMode, SearchSpec};
use qet_core::sim::{run_trials, ChannelModel};
use qet_core::stabilizer::{code_distance, parse_code, render_code};

#[test]
fn catalog_selftest_passes() {
    let lines = selftest();
    assert!(lines.len() > 15);
    for l in &lines {
        assert!(l.pass, "{l}");
    }
}

#[test]
fn catalog_codes_round_trip_through_text() {
    for name in [
        "table1",
        "table2",
        "table1-z1",
        "css17",
        "eq16",
        "eq20:3,4",
        "compact:4",
        "toric:2",
        "rep:4",
        "inner-5q",
        "trivial",
    ] {
        let entry = by_name(name).unwrap();
        let text = render_code(&entry.code);
        assert_eq!(parse_code(&text).unwrap(), entry.code, "{name}");
    }
    assert!(NAMES.iter().any(|(n, _)| *n == "css17"));
    assert!(by_name("nope").is_err());
    assert!(by_name("compact:5").is_err());
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse_code("2 1\nXQ\n").unwrap_err().to_string();
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("column 2"), "{err}");
    assert!(parse_code("2 1\nZZ\nXL\nXX\n").is_err());
}

#[test]
fn unit_cell_file_round_trip() {
    let text = render_unit_cell(&eq16_cell());
    let cell = parse_unit_cell(&text).unwrap();
    assert!(cell.validate().is_ok());
    assert_eq!(cell.instantiate(4, 4).unwrap().code.n(), 48);
}

#[test]
fn verify_then_report_then_simulate() {
    let entry = by_name("table2").unwrap();
    let m = entry.admissible.unwrap();
    let errors = errors_up_to_weight(6, 1);
    let v = check_qet(&entry.code, &m, &errors).unwrap();
    let d = effective_distance(&entry.code, &m, 3).unwrap();
    let mut r = Report::from_verdict(&v);
    r.d_eff = Some(d.bound);
    r.cap = Some(3);
    r.seed = Some(17);
    let parsed = Report::parse_text(&r.to_string()).unwrap();
    assert_eq!(parsed, r);
    assert_eq!(parsed.verdict, Some(Outcome::Pass));
    assert_eq!(Report::from_json(&r.to_json().unwrap()).unwrap(), r);

    let table = build_recovery(&entry.code, &m, &v, None).unwrap();
    let a = run_trials(
        &entry.code,
        &m,
        &table,
        &ChannelModel::Depolarizing { n: 6, p: 0.02 },
        20000,
        17,
    )
    .unwrap();
    let b = run_trials(
        &entry.code,
        &m,
        &table,
        &ChannelModel::Depolarizing { n: 6, p: 0.02 },
        20000,
        17,
    )
    .unwrap();
    assert_eq!(a, b);
    assert_eq!(a.violations, 0);
    assert!(a.uncovered > 0);
}

#[test]
fn failing_verdict_report_names_the_witness() {
    let entry = by_name("table2").unwrap();
    let m = AdmissibleSet::parse("ZI", 2).unwrap();
    let v = check_qet(&entry.code, &m, &errors_up_to_weight(6, 1)).unwrap();
    let r = Report::from_verdict(&v);
    assert_eq!(r.verdict, Some(Outcome::Fail));
    assert_eq!(r.witness.len(), 2);
    assert_eq!(Report::parse_text(&r.to_string()).unwrap(), r);
}

#[test]
fn random_search_finds_six_qubit_codes() {
    let spec = SearchSpec {
        n: 6,
        k: 2,
        admissible: table2_admissible(),
        error_weight: 1,
        require_detection: true,
        mode: SearchMode::Random {
            seed: 7,
            trials: 20000,
        },
        max_hits: Some(1),
    };
    let report = run_search(&spec).unwrap();
    let hit = report.hits.first().expect("a [6,2] hit");
    let code = &hit.code;
    assert!(code.validate().is_ok());
    assert_eq!(code_distance(code, 2).value(), 2);
    assert!(
        check_qet(code, &table2_admissible(), &errors_up_to_weight(6, 1))
            .unwrap()
            .pass
    );
    let again = run_search(&spec).unwrap();
    assert_eq!(again.hits[0].index, hit.index);
}
