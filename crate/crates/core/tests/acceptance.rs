//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qet_core::catalog::{
    css17_admissible, five_qubit, table1, table1_admissible, table1_z1_stabilized, table2,
    table2_admissible,
};
use qet_core::classical::{asymmetric_distances, css17, css17_parts, LinearCode};
use qet_core::f2::BitVec;
use qet_core::lattice::{
    compact_encoding, eq16_cell, eq20_cell, symplectic_form, toric_code, LPoly,
};
use qet_core::pauli::{errors_up_to_weight, Letter, PauliOp};
use qet_core::qet::{
    build_recovery, check_general_qet, check_group_qet, check_qet, effective_distance,
    strong_conditions_hold, AdmissibleSet,
};
use qet_core::search::{run_search, SearchMode, SearchSpec};
use qet_core::sim::{exact_class_distribution, run_trials, total_variation, ChannelModel};
use qet_core::stabilizer::{
    code_distance, min_weight_in_class, sample_standard_form, symplectic_bases, Bound,
    LogicalClass, Purity, StabilizerCode,
};
use qet_core::transforms::concatenate;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn class(s: &str) -> LogicalClass {
    LogicalClass::parse(s, s.len()).expect("class literal")
}

fn pauli(s: &str) -> PauliOp {
    s.parse().expect("pauli literal")
}

const LETTERS: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

/// Every weight-2 Pauli on `n` qubits, by nested loops.
fn weight_two(n: usize) -> Vec<PauliOp> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for la in LETTERS {
                for lb in LETTERS {
                    let mut p = PauliOp::identity(n);
                    p.set(a, la);
                    p.set(b, lb);
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Letter-level commutation, independent of the bit layout.
fn naive_anticommutes(a: &PauliOp, b: &PauliOp) -> bool {
    (0..a.num_qubits())
        .filter(|&q| {
            let (x, y) = (a.letter(q), b.letter(q));
            x != Letter::I && y != Letter::I && x != y
        })
        .count()
        % 2
        == 1
}

fn naive_zero_syndrome(code: &StabilizerCode, p: &PauliOp) -> bool {
    code.generators().iter().all(|g| !naive_anticommutes(g, p))
}

fn weight_one_detected(code: &StabilizerCode) -> bool {
    (0..code.n()).all(|q| {
        LETTERS
            .iter()
            .all(|&l| !naive_zero_syndrome(code, &PauliOp::single(code.n(), q, l)))
    })
}

/// Weight-2 elements of `N(S) \ S`, sorted as strings.
fn weight_two_logicals(code: &StabilizerCode) -> (Vec<String>, usize) {
    let all = weight_two(code.n());
    let scanned = all.len();
    let mut found: Vec<String> = all
        .into_iter()
        .filter(|p| naive_zero_syndrome(code, p) && !code.in_stabilizer(p))
        .map(|p| p.to_string())
        .collect();
    found.sort();
    (found, scanned)
}

fn sorted(v: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn criterion_1() -> Check {
    let code = table1();
    ensure(code.validate().is_ok(), "table1 code does not validate")?;
    ensure(
        weight_one_detected(&code),
        "some weight-1 Pauli has zero syndrome",
    )?;
    let (found, scanned) = weight_two_logicals(&code);
    ensure(scanned == 189, format!("scanned {scanned} weight-2 Paulis"))?;
    ensure(
        found == sorted(&["ZZIIIII", "IIZZIII", "IIIIZZI", "IIIIZIZ"]),
        format!("weight-2 logicals {found:?}"),
    )?;
    for p in &found {
        let c = code.logical_class(&pauli(p)).map_err(err)?;
        ensure(c == class("ZI"), format!("{p} is in class {c}"))?;
    }
    let d = effective_distance(&code, &table1_admissible(), 3).map_err(err)?;
    ensure(d.bound == Bound::Exact(3), format!("d_eff = {d}"))?;
    Ok(format!(
        "{} weight-2 logicals in class ZI, d_eff = {d}",
        found.len()
    ))
}

fn criterion_2() -> Check {
    let code = table1_z1_stabilized();
    ensure((code.n(), code.k()) == (7, 1), "wrong parameters")?;
    let d = code_distance(&code, 4);
    ensure(d.bound == Bound::Exact(3), format!("distance {d}"))?;
    Ok(format!("[7,1,{d}]"))
}

fn criterion_3() -> Check {
    let code = table2();
    let m = table2_admissible();
    ensure(code.validate().is_ok(), "table2 code does not validate")?;
    let (found, _) = weight_two_logicals(&code);
    ensure(
        found == sorted(&["ZZIIII", "IIZZII", "IIIIZZ", "IIIIXX", "IIIIYY"]),
        format!("weight-2 logicals {found:?}"),
    )?;
    for (p, want) in [
        ("ZZIIII", "ZI"),
        ("IIZZII", "ZI"),
        ("IIIIZZ", "ZI"),
        ("IIIIXX", "IZ"),
        ("IIIIYY", "ZZ"),
    ] {
        let c = code.logical_class(&pauli(p)).map_err(err)?;
        ensure(
            c == class(want),
            format!("{p} is in class {c}, expected {want}"),
        )?;
    }
    let errors = errors_up_to_weight(6, 1);
    ensure(
        check_general_qet(&code, &m, &errors).map_err(err)?.pass,
        "general check fails",
    )?;
    ensure(
        !strong_conditions_hold(&code, &m, &errors).map_err(err)?,
        "strong conditions hold",
    )?;
    let pair = vec![pauli("IIIIYI"), pauli("IIIIIY")];
    ensure(
        !strong_conditions_hold(&code, &m, &pair).map_err(err)?,
        "Y5, Y6 satisfy the strong conditions",
    )?;
    ensure(
        check_general_qet(&code, &m, &pair).map_err(err)?.pass,
        "Y5, Y6 fail the general check",
    )?;
    let d = effective_distance(&code, &m, 3).map_err(err)?;
    ensure(d.bound == Bound::Exact(3), format!("d_eff = {d}"))?;
    Ok(format!(
        "general passes, strong fails on Y5/Y6, d_eff = {d}"
    ))
}

fn codeword_min_weight(c: &LinearCode) -> (usize, usize) {
    let rows = c.generator().row_vecs();
    let mut best = usize::MAX;
    let mut count = 0;
    for mask in 1u64..1 << rows.len() {
        let mut v = BitVec::zeros(c.n());
        for (i, r) in rows.iter().enumerate() {
            if mask >> i & 1 == 1 {
                v ^= r;
            }
        }
        count += 1;
        best = best.min(v.count_ones());
    }
    (best, count)
}

fn criterion_4() -> Check {
    let parts = css17_parts().map_err(err)?;
    let (dqr, count) = codeword_min_weight(&parts.qr);
    ensure(
        (dqr, count) == (5, 511),
        format!("QR distance {dqr} over {count} codewords"),
    )?;
    let (dc2, _) = codeword_min_weight(&parts.c2);
    ensure(dc2 == 3, format!("C2 distance {dc2}"))?;
    let css = css17().map_err(err)?;
    let code = &css.code;
    ensure(
        code.validate().is_ok() && (code.n(), code.k()) == (17, 2),
        "css17 is not a valid [17,2] code",
    )?;
    let (dx, dz) = asymmetric_distances(code, 6).map_err(err)?;
    ensure(
        (dx.bound, dz.bound) == (Bound::Exact(3), Bound::Exact(5)),
        format!("asymmetric ({dx}, {dz})"),
    )?;

    let mut supports = 0;
    let mut classes: Vec<BTreeSet<LogicalClass>> = Vec::new();
    for w in [3usize, 4] {
        let mut seen = BTreeSet::new();
        let mut idx: Vec<usize> = (0..w).collect();
        loop {
            supports += 1;
            let p = PauliOp::x_on(17, &idx);
            if naive_zero_syndrome(code, &p) && !code.in_stabilizer(&p) {
                seen.insert(code.logical_pattern(&p));
            }
            // next combination
            let mut i = w;
            while i > 0 && idx[i - 1] == 17 - w + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..w {
                idx[j] = idx[j - 1] + 1;
            }
        }
        classes.push(seen);
    }
    ensure(
        supports == 680 + 2380,
        format!("scanned {supports} supports"),
    )?;
    ensure(
        classes[0].len() == 1 && classes[1].len() == 1,
        format!("classes {classes:?}"),
    )?;
    let (c3, c4) = (classes[0].first().unwrap(), classes[1].first().unwrap());
    ensure(
        c3 != c4 && !c3.anticommutes(c4),
        "weight-3 and weight-4 classes coincide or anticommute",
    )?;

    let m = css17_admissible();
    let errors = errors_up_to_weight(17, 2);
    let nontrivial = errors.iter().filter(|e| !e.is_identity()).count();
    ensure(
        nontrivial == 1275,
        format!("{nontrivial} errors of weight 1..2"),
    )?;
    ensure(
        check_qet(code, &m, &errors).map_err(err)?.pass,
        "weight <= 2 check fails",
    )?;
    let d = effective_distance(code, &m, 3).map_err(err)?;
    ensure(d.bound == Bound::Exact(5), format!("d_eff = {d}"))?;
    Ok(format!(
        "QR d=5, C2 d=3, (dX, dZ) = (3, 5), classes {c3}/{c4}, d_eff = {d}"
    ))
}

fn criterion_5() -> Check {
    let cell = eq16_cell();
    let sigma = &cell.sigma()[0];
    ensure(
        symplectic_form(sigma, sigma).map_err(err)?.is_zero(),
        "sigma is not self-orthogonal",
    )?;
    let (a, b) = (cell.logical_a(), cell.logical_b());
    for i in 0..2 {
        for j in 0..2 {
            let ab = symplectic_form(&a[i], &b[j]).map_err(err)?;
            let want = if i == j { LPoly::one() } else { LPoly::zero() };
            ensure(ab == want, format!("a{i}.b{j} = {ab}"))?;
            ensure(
                symplectic_form(&a[i], &a[j]).map_err(err)?.is_zero(),
                format!("a{i}.a{j} != 0"),
            )?;
            ensure(
                symplectic_form(&b[i], &b[j]).map_err(err)?.is_zero(),
                format!("b{i}.b{j} != 0"),
            )?;
        }
        ensure(
            symplectic_form(sigma, &a[i]).map_err(err)?.is_zero(),
            format!("sigma.a{i} != 0"),
        )?;
        ensure(
            symplectic_form(sigma, &b[i]).map_err(err)?.is_zero(),
            format!("sigma.b{i} != 0"),
        )?;
    }
    let torus = cell.instantiate(4, 4).map_err(err)?;
    let code = &torus.code;
    ensure(
        weight_one_detected(code),
        "some weight-1 Pauli has zero syndrome",
    )?;
    let zero: BTreeSet<String> = weight_two(48)
        .into_iter()
        .filter(|p| naive_zero_syndrome(code, p))
        .map(|p| p.to_string())
        .collect();
    let translates: BTreeSet<String> = torus
        .logical_translates(0)
        .map_err(err)?
        .into_iter()
        .map(|p| p.to_string())
        .collect();
    ensure(translates.len() == 16, "translates are not distinct")?;
    ensure(
        zero == translates,
        format!("{} weight-2 zero-syndrome Paulis", zero.len()),
    )?;
    let m = torus.translates_admissible(0).map_err(err)?;
    let d = effective_distance(code, &m, 2).map_err(err)?;
    ensure(d.bound == Bound::Exact(3), format!("d_eff = {d}"))?;
    Ok(format!(
        "form relations hold, 16 weight-2 translates, d_eff = {d}"
    ))
}

fn criterion_6() -> Check {
    let torus = eq20_cell().instantiate(4, 4).map_err(err)?;
    let d = code_distance(&torus.code, 4);
    ensure(d.bound == Bound::Exact(3), format!("distance {d}"))?;
    Ok(format!("[{},{},{d}]", torus.code.n(), torus.code.k()))
}

fn criterion_7() -> Check {
    let c = compact_encoding(4).map_err(err)?;
    let code = &c.code;
    let mut seen = BTreeSet::new();
    for i in 0..4 {
        for j in 0..4 {
            let syn = |t: usize, l: Letter| {
                code.syndrome_unchecked(&PauliOp::single(48, c.qubit(i, j, t), l))
            };
            ensure(
                syn(0, Letter::Z).is_zero() && syn(2, Letter::Z).is_zero(),
                "vertex Z has a syndrome",
            )?;
            ensure(syn(0, Letter::X) == syn(0, Letter::Y), "X1 and Y1 differ")?;
            ensure(syn(2, Letter::X) == syn(2, Letter::Y), "X3 and Y3 differ")?;
            for s in [
                syn(0, Letter::X),
                syn(1, Letter::X),
                syn(1, Letter::Y),
                syn(1, Letter::Z),
                syn(2, Letter::X),
            ] {
                ensure(!s.is_zero(), "zero syndrome in a nontrivial coset")?;
                ensure(seen.insert(s.to_string()), "syndrome repeated")?;
            }
        }
    }
    let m = c.vertex_z_admissible().map_err(err)?;
    let d = effective_distance(code, &m, 2).map_err(err)?;
    ensure(d.bound == Bound::Exact(3), format!("d_eff = {d}"))?;
    Ok(format!("80 distinct coset syndromes, d_eff = {d}"))
}

fn criterion_8() -> Check {
    let code = toric_code(3).map_err(err)?;
    let mut out = Vec::new();
    for (purity, cls) in [
        (Purity::Z, ["ZI", "IZ", "ZZ"]),
        (Purity::X, ["XI", "IX", "XX"]),
    ] {
        for (c, want) in cls.iter().zip([3, 3, 6]) {
            let d = min_weight_in_class(&code, &class(c), purity, 6);
            ensure(d.bound == Bound::Exact(want), format!("class {c}: {d}"))?;
            out.push(format!("{c}={d}"));
        }
    }
    Ok(out.join(" "))
}

fn criterion_9() -> Check {
    let c = concatenate(&table1(), &five_qubit(), Some(&table1_admissible())).map_err(err)?;
    ensure(
        c.result.validate().is_ok(),
        "concatenated code does not validate",
    )?;
    ensure((c.result.n(), c.result.k()) == (35, 2), "wrong parameters")?;
    let d = c.excluded_min_weight(5);
    ensure(d.bound == Bound::AtLeast(6), format!("scan found {d}"))?;
    Ok(format!(
        "[35,2], no element of N(S')\\M' up to weight 5: d_eff' {d} (bound, consistent with >= 9)"
    ))
}

fn random_code(rng: &mut ChaCha8Rng, max_n: usize) -> StabilizerCode {
    let n = rng.gen_range(2..=max_n);
    let k = rng.gen_range(1..=2usize.min(n - 1));
    sample_standard_form(n, k, rng)
}

fn random_pauli(rng: &mut ChaCha8Rng, n: usize) -> PauliOp {
    let mut p = PauliOp::identity(n);
    for q in 0..n {
        p.set(
            q,
            [Letter::I, Letter::X, Letter::Y, Letter::Z][rng.gen_range(0..4)],
        );
    }
    p
}

fn simulate(
    name: &str,
    code: &StabilizerCode,
    m: &AdmissibleSet,
    weight: usize,
    seed: u64,
) -> Check {
    let errors = errors_up_to_weight(code.n(), weight);
    let v = check_qet(code, m, &errors).map_err(err)?;
    ensure(v.pass, format!("{name}: verdict fails"))?;
    let table = build_recovery(code, m, &v, None).map_err(err)?;
    let nontrivial: Vec<PauliOp> = errors.into_iter().filter(|e| !e.is_identity()).collect();
    let p = 1.0 / nontrivial.len() as f64;
    let model = ChannelModel::Explicit(nontrivial.into_iter().map(|e| (e, p)).collect());
    let report = run_trials(code, m, &table, &model, 100_000, seed).map_err(err)?;
    ensure(
        report.violations == 0 && report.uncovered == 0,
        format!("{name}: {} violations", report.violations),
    )?;
    let tv = total_variation(
        &report,
        &exact_class_distribution(code, &table, &model).map_err(err)?,
    );
    ensure(tv < 0.01, format!("{name}: total variation {tv}"))?;
    Ok(format!("{name} tv={tv:.4}"))
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..200 {
        let code = random_code(&mut rng, 6);
        let (a, b) = (
            random_pauli(&mut rng, code.n()),
            random_pauli(&mut rng, code.n()),
        );
        let ab = a.mul_unchecked(&b);
        ensure(
            code.syndrome_unchecked(&ab)
                == &code.syndrome_unchecked(&a) ^ &code.syndrome_unchecked(&b),
            "syndrome is not additive",
        )?;
        ensure(
            code.logical_pattern(&ab) == code.logical_pattern(&a).xor(&code.logical_pattern(&b)),
            "logical pattern is not additive",
        )?;
    }

    let mut agree = 0;
    for _ in 0..200 {
        let code = random_code(&mut rng, 6);
        let k = code.k();
        let gens: Vec<LogicalClass> = (0..rng.gen_range(0..=2))
            .map(|_| LogicalClass::from_mask(k, rng.gen_range(0..1u64 << (2 * k))))
            .collect();
        let m = AdmissibleSet::generated_by(k, &gens).map_err(err)?;
        let errors = errors_up_to_weight(code.n(), rng.gen_range(1..=2));
        let g = check_group_qet(&code, &m, &errors).map_err(err)?.pass;
        let h = check_general_qet(&code, &m, &errors).map_err(err)?.pass;
        ensure(g == h, format!("group and general checks disagree for {m}"))?;
        agree += 1;
    }

    for _ in 0..100 {
        let code = random_code(&mut rng, 5);
        let errors = errors_up_to_weight(code.n(), 1);
        let qec = errors.iter().enumerate().all(|(i, a)| {
            errors[i + 1..].iter().all(|b| {
                let p = a.mul_unchecked(b);
                !naive_zero_syndrome(&code, &p) || code.in_stabilizer(&p)
            })
        });
        let v = check_qet(&code, &AdmissibleSet::trivial(code.k()), &errors).map_err(err)?;
        ensure(
            v.pass == qec,
            "trivial admissible set disagrees with error correction",
        )?;
    }

    for _ in 0..100 {
        let code = random_code(&mut rng, 5);
        let k = code.k();
        let m = AdmissibleSet::new(
            k,
            (0..3).map(|_| LogicalClass::from_mask(k, rng.gen_range(0..1u64 << (2 * k)))),
        )
        .map_err(err)?;
        let bases = symplectic_bases(k);
        let t = bases[rng.gen_range(0..bases.len())];
        let nx: Vec<LogicalClass> = (0..k).map(|i| LogicalClass::from_mask(k, t.x[i])).collect();
        let nz: Vec<LogicalClass> = (0..k).map(|i| LogicalClass::from_mask(k, t.z[i])).collect();
        let relabeled = code.relabel(&nx, &nz).map_err(err)?;
        let image = m
            .classes()
            .map(|c| relabeled.logical_class(&code.representative(c)))
            .collect::<Result<Vec<_>, _>>();
        let m2 = AdmissibleSet::new(k, image.map_err(err)?).map_err(err)?;
        let errors = errors_up_to_weight(code.n(), 1);
        ensure(
            check_general_qet(&code, &m, &errors).map_err(err)?.pass
                == check_general_qet(&relabeled, &m2, &errors)
                    .map_err(err)?
                    .pass,
            "verdict changes under relabeling",
        )?;
    }

    let mut sims = vec![
        simulate("table1", &table1(), &table1_admissible(), 1, 1)?,
        simulate("table2", &table2(), &table2_admissible(), 1, 2)?,
        simulate(
            "css17",
            &css17().map_err(err)?.code,
            &css17_admissible(),
            2,
            3,
        )?,
    ];
    let torus = eq16_cell().instantiate(4, 4).map_err(err)?;
    sims.push(simulate(
        "eq16",
        &torus.code,
        &torus.translates_admissible(0).map_err(err)?,
        1,
        4,
    )?);
    let compact = compact_encoding(4).map_err(err)?;
    sims.push(simulate(
        "compact4",
        &compact.code,
        &compact.vertex_z_admissible().map_err(err)?,
        1,
        5,
    )?);
    Ok(format!(
        "homomorphism, {agree} group/general agreements, QEC, relabeling; {}",
        sims.join(", ")
    ))
}

fn criterion_11() -> Check {
    let pattern = AdmissibleSet::new(2, [class("ZI"), class("IZ")]).map_err(err)?;
    let mut out = Vec::new();
    for n in 3..=5 {
        let spec = SearchSpec {
            n,
            k: 2,
            admissible: pattern.clone(),
            error_weight: 1,
            require_detection: true,
            mode: SearchMode::Exhaustive {
                start: 0,
                limit: None,
            },
            max_hits: Some(1),
        };
        let r = run_search(&spec).map_err(err)?;
        ensure(r.complete, format!("n={n} scan incomplete"))?;
        if let Some(hit) = r.hits.first() {
            return Err(format!("n={n}: hit at index {}", hit.index));
        }
        out.push(format!("n={n}: 0/{}", r.examined));
    }
    Ok(out.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("table1 code", Duration::from_secs(1), criterion_1),
        (
            "table1 with Z1 stabilized",
            Duration::from_secs(1),
            criterion_2,
        ),
        ("table2 code", Duration::from_secs(1), criterion_3),
        ("17-qubit CSS code", Duration::from_secs(30), criterion_4),
        (
            "three-qubit-cell lattice code",
            Duration::from_secs(10),
            criterion_5,
        ),
        (
            "two-qubit-cell lattice code",
            Duration::from_secs(10),
            criterion_6,
        ),
        ("compact encoding L=4", Duration::from_secs(10), criterion_7),
        ("toric code L=3", Duration::from_secs(60), criterion_8),
        (
            "concatenation with [5,1,3]",
            Duration::from_secs(600),
            criterion_9,
        ),
        ("property suites", Duration::from_secs(120), criterion_10),
        (
            "negative search n <= 5",
            Duration::from_secs(600),
            criterion_11,
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed > *limit {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            } else {
                Ok(detail)
            }
        });
        match result {
            Ok(detail) => println!(
                "[PASS] criterion {}: {name}: {detail} ({elapsed:.2?})",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
