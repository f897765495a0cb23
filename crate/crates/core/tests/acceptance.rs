//! Acceptance criteria, run in sequence with one PASS/FAIL line each.
//! Every bound below is exact: dimensions must match with zero tolerance,
//! and each criterion must finish inside its runtime limit.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use zigzag::cli::{execute, CommandKind, Format, RunConfig};
use zigzag::dcomplex::{check_page_recursion, degree_sums, spectral_sequence, Filtration, Flavor};
use zigzag::decomp::{
    consistency_report_with, decompose, default_r_max, squares_at, verify_decomposition,
};
use zigzag::exactla::{Matrix, Subspace};
use zigzag::iwasawa::reference::{expected_fingerprint, BETTI, CHI_E2, DOLBEAULT_BC_D1, PAGES};
use zigzag::iwasawa::sampling::{random_params, representatives, sample_params};
use zigzag::iwasawa::{build_complex, case_of, delbar_phi, golden, Case, InvariantForm, Monomial};
use zigzag::scalar::Scalar;

type Outcome = Result<(), String>;

fn column(case: Case) -> usize {
    match case {
        Case::I => 0,
        Case::II => 1,
        Case::III => 2,
    }
}

fn expect(bad: &mut Vec<String>, what: String, got: i64, want: i64) {
    if got != want {
        bad.push(format!("{what}: computed {got}, expected {want}"));
    }
}

fn finish(bad: Vec<String>) -> Outcome {
    if bad.is_empty() {
        Ok(())
    } else {
        let shown: Vec<&String> = bad.iter().take(8).collect();
        Err(format!("{} violations, first: {:?}", bad.len(), shown))
    }
}

/// Closed forms of every displayed differential at 10 random points, plus
/// one formula written out here independently of the fixture table.
fn golden_formulas() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bad = Vec::new();
    for _ in 0..10 {
        let t = random_params(&mut rng);
        bad.extend(golden::check_formulas(&t).iter().map(|m| m.to_string()));
        bad.extend(golden::check_lie_identities(&t));
        let phi3 = delbar_phi(&t, &InvariantForm::phi(3));
        let mut want = InvariantForm::zero();
        let m = |s: &str| s.parse::<Monomial>().unwrap();
        want.add_term(t.t21.clone(), m("1|1"));
        want.add_term(-t.t11.clone(), m("2|1"));
        want.add_term(t.t22.clone(), m("1|2"));
        want.add_term(-t.t12.clone(), m("2|2"));
        if phi3 != want {
            bad.push(format!("delbar_phi(phi^3) = {phi3}, expected {want}"));
        }
    }
    finish(bad)
}

fn table_one() -> Outcome {
    let mut bad = Vec::new();
    for t in representatives() {
        let case = case_of(&t);
        let col = column(case);
        let c = build_complex(&t);
        let page = spectral_sequence(&c, Filtration::Column, 1).remove(0);
        for &(p, q, h, bc, d1) in DOLBEAULT_BC_D1 {
            let at = format!("case {case} t=({t}) ({p},{q})");
            expect(&mut bad, format!("h_dbar {at}"), c.column_cohomology(p, q) as i64, h[col] as i64);
            expect(&mut bad, format!("h_BC {at}"), c.bott_chern(p, q) as i64, bc[col] as i64);
            expect(&mut bad, format!("im d1 {at}"), page.im((p, q)) as i64, d1[col] as i64);
        }
        // Spot values quoted with the criterion.
        let want = [[6, 5, 5], [8, 7, 7], [2, 1, 0]];
        expect(&mut bad, format!("h^(1,1) case {case}"), c.column_cohomology(1, 1) as i64, want[0][col]);
        expect(&mut bad, format!("h_BC^(2,2) case {case}"), c.bott_chern(2, 2) as i64, want[1][col]);
        expect(&mut bad, format!("im d1^(1,1) case {case}"), page.im((1, 1)) as i64, want[2][col]);
    }
    finish(bad)
}

fn table_two() -> Outcome {
    let mut bad = Vec::new();
    for t in representatives() {
        let case = case_of(&t);
        let col = column(case);
        let pages = spectral_sequence(&build_complex(&t), Filtration::Column, 2);
        let (e1, e2) = (&pages[0], &pages[1]);
        for &(p, q, w1, w2) in PAGES {
            expect(&mut bad, format!("e1 case {case} ({p},{q})"), e1.dim((p, q)) as i64, w1[col] as i64);
            expect(&mut bad, format!("e2 case {case} ({p},{q})"), e2.dim((p, q)) as i64, w2[col] as i64);
        }
        for &(p, q, chi) in CHI_E2 {
            let got: i64 = (0..=q)
                .map(|i| if (q - i) % 2 == 0 { 1 } else { -1 } * e2.dim((p, i)) as i64)
                .sum();
            expect(&mut bad, format!("chi^{p}_{q}(E2) case {case}"), got, chi[col]);
        }
        let quoted = [[4, 4, 5], [2, 2, 3], [2, 2, 1]];
        expect(&mut bad, format!("e2^(1,1) case {case}"), e2.dim((1, 1)) as i64, quoted[0][col]);
        let chi = |q: i64| (0..=q).map(|i| if (q - i) % 2 == 0 { 1 } else { -1 } * e2.dim((1, i)) as i64).sum();
        expect(&mut bad, format!("chi^1_1 case {case}"), chi(1), quoted[1][col]);
        expect(&mut bad, format!("chi^1_2 case {case}"), chi(2), quoted[2][col]);
    }
    finish(bad)
}

fn classification() -> Outcome {
    let config = RunConfig {
        source: None,
        command: CommandKind::Classify,
        format: Format::Json,
        r_max: 3,
        filtration: Filtration::Column,
        samples: 200,
        seed: 0,
        show_scalars: false,
    };
    let out = execute(&config).map_err(|e| e.to_string())?;
    if let Some(e) = out.failure {
        return Err(e.to_string());
    }
    let census: Value = serde_json::from_str(&out.text).map_err(|e| e.to_string())?;
    let groups = census["groups"].as_array().ok_or("no groups")?;
    let mut bad = Vec::new();
    expect(&mut bad, "fingerprint classes".into(), groups.len() as i64, 3);
    let mut seen = BTreeSet::new();
    let mut total = 0;
    for g in groups {
        let cases = g["cases"].as_array().ok_or("no cases")?;
        if cases.len() != 1 {
            bad.push(format!("group with cases {cases:?}"));
            continue;
        }
        let case = match cases[0].as_str() {
            Some("I") => Case::I,
            Some("II") => Case::II,
            Some("III") => Case::III,
            other => return Err(format!("unknown case {other:?}")),
        };
        seen.insert(case);
        total += g["count"].as_u64().unwrap_or(0);
        let fp: zigzag::decomp::Fingerprint =
            serde_json::from_value(g["fingerprint"].clone()).map_err(|e| e.to_string())?;
        if fp != expected_fingerprint(case) {
            bad.push(format!("case {case} fingerprint differs from its diagram"));
        }
        if fp.get("square:1,1;1,2;2,1;2,2") != Some(&1) {
            bad.push(format!("case {case} lacks the single square"));
        }
    }
    expect(&mut bad, "samples classified".into(), total as i64, 200);
    expect(&mut bad, "distinct cases".into(), seen.len() as i64, 3);
    finish(bad)
}

fn degeneration() -> Outcome {
    let mut bad = Vec::new();
    for (i, t) in sample_params(100, 77).iter().enumerate() {
        let c = build_complex(t);
        for f in [Filtration::Column, Filtration::Row] {
            let pages = spectral_sequence(&c, f, 3);
            for page in &pages[1..] {
                if !page.is_degenerate() {
                    bad.push(format!("sample {i}: d{} ({f}) nonzero at t=({t})", page.r));
                }
            }
            let sums = degree_sums(&pages[1]);
            for (k, &b) in BETTI.iter().enumerate() {
                let got = sums.get(&(k as i64)).copied().unwrap_or(0);
                expect(&mut bad, format!("sample {i} ({f}) sum e2 in degree {k}"), got as i64, b as i64);
            }
        }
    }
    finish(bad)
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();
    for i in 0..200 {
        let (c, built) = common::random_complex(&mut rng);
        let d = decompose(&c);
        if d.fingerprint() != built {
            bad.push(format!("complex {i}: fingerprint differs from the summed shapes"));
        }
        let report = consistency_report_with(&c, &d, default_r_max(&c));
        if !report.decomposition.is_ok() {
            bad.push(format!("complex {i}: {}", report.decomposition));
        }
        bad.extend(report.mismatches.iter().map(|m| format!("complex {i}: {m}")));
    }
    finish(bad)
}

fn structural_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = Vec::new();
    for i in 0..100 {
        let (c, _) = common::random_complex(&mut rng);
        let report = c.validate();
        if !report.is_ok() {
            bad.push(format!("complex {i}: {report}"));
        }
        let d = decompose(&c);
        let mut subspaces = Vec::new();
        for &at in c.components().keys() {
            for m in [c.d1(at).into_owned(), c.d2(at).into_owned(), c.d2d1(at)] {
                if m.rank() + m.kernel().dim() != m.cols() {
                    bad.push(format!("complex {i}: rank-nullity at {at:?}"));
                }
            }
            subspaces.push(c.d1(at).kernel());
            subspaces.push(c.d2(at).kernel());
            let n = c.dim(at);
            for m in [c.d1((at.0 - 1, at.1)), c.d2((at.0, at.1 - 1))] {
                if m.rows() == n {
                    subspaces.push(m.image());
                }
            }
            let k = squares_at(&d, at.0, at.1);
            if k != c.d2d1(at).rank() {
                bad.push(format!("complex {i}: {k} squares at {at:?}, rank d2d1 = {}", c.d2d1(at).rank()));
            }
        }
        for u in &subspaces {
            for v in &subspaces {
                if u.ambient_dim() != v.ambient_dim() {
                    continue;
                }
                let lhs = u.sum(v).unwrap().dim() + u.intersect(v).unwrap().dim();
                if lhs != u.dim() + v.dim() {
                    bad.push(format!("complex {i}: modular law"));
                }
            }
        }
        let moved = common::base_change(&c, &mut rng);
        if decompose(&moved).fingerprint() != d.fingerprint() {
            bad.push(format!("complex {i}: fingerprint changed under base change"));
        }
        if !verify_decomposition(&moved, &decompose(&moved)).is_ok() {
            bad.push(format!("complex {i}: decomposition after base change fails verification"));
        }
        for f in [Filtration::Column, Filtration::Row] {
            let pages = spectral_sequence(&c, f, default_r_max(&c));
            for (r, at) in check_page_recursion(&pages) {
                bad.push(format!("complex {i}: page recursion r={r} at {at:?} ({f})"));
            }
            let first = if f == Filtration::Column { Flavor::Column } else { Flavor::Row };
            for at in c.support() {
                if pages[0].dim(at) != c.cohomology(first, at.0, at.1) {
                    bad.push(format!("complex {i}: E1 ({f}) at {at:?}"));
                }
            }
        }
    }
    // Echelon canonicality and exactness under common scaling.
    let a = Matrix::from_i64(&[&[1, 2, 0], &[0, 1, 1]]);
    let b = Matrix::from_i64(&[&[1, 3, 1], &[2, 5, 1]]);
    if Subspace::span(3, &a.transpose().columns()) != Subspace::span(3, &b.transpose().columns()) {
        bad.push("echelon representatives differ for equal spans".into());
    }
    if Scalar::ratio(6, 8) != Scalar::ratio(3, 4) {
        bad.push("scaled rational not reduced".into());
    }
    finish(bad)
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [Criterion; 7] = [
        ("1 golden operator formulas", golden_formulas, secs(1)),
        ("2 cohomology and im d1 table", table_one, secs(5)),
        ("3 spectral pages and chi(E2) table", table_two, secs(5)),
        ("4 three fingerprint classes over 200 samples", classification, secs(60)),
        ("5 degeneration at E2 over 100 samples", degeneration, secs(60)),
        ("6 zigzag counts equal direct computation", oracle_equivalence, secs(120)),
        ("7 structural laws on the fuzz corpus", structural_laws, None),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| match limit {
            Some(limit) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            _ => Ok(()),
        });
        let bound = limit.map_or("no limit".to_string(), |l| format!("limit {l:?}"));
        match result {
            Ok(()) => println!("PASS criterion {name} ({elapsed:.2?}, {bound})"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.2?}, {bound}): {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
