use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::dcomplex::{
    check_page_recursion, degree_sums, spectral_sequence, Bidegree, BigradedComplex, Filtration, Flavor,
};
use crate::decomp::{
    consistency_report, counts_to_cohomology, counts_to_im_dr, decompose as split, verify_decomposition,
    Decomposition, Fingerprint,
};
use crate::iwasawa::reference::{check_diagram, check_tables, expected_fingerprint};
use crate::iwasawa::sampling::{random_params, representatives, sample_params};
use crate::iwasawa::{build_complex, case_of, golden, Case};

use super::{render, CliError, Format, Outcome, RunConfig};

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn outcome(text: String, problems: Vec<String>) -> Outcome {
    let failure = (!problems.is_empty()).then(|| CliError::Inconsistent(problems.join("; ")));
    Outcome { text, failure }
}

/// Decompose and verify, turning a failed verification into a problem line.
fn checked_split(c: &BigradedComplex, problems: &mut Vec<String>) -> Decomposition {
    let d = split(c);
    let report = verify_decomposition(c, &d);
    if !report.is_ok() {
        problems.push(format!("decomposition check failed: {report}"));
    }
    d
}

fn grid(c: &BigradedComplex) -> Vec<Bidegree> {
    let Some((p0, p1, q0, q1)) = c.bounding_box() else {
        return Vec::new();
    };
    (p0..=p1).flat_map(|p| (q0..=q1).map(move |q| (p, q))).collect()
}

/// A number agreed on by both computations, or `None` after recording the
/// disagreement.
fn agreed(what: &str, at: Bidegree, direct: usize, counted: usize, problems: &mut Vec<String>) -> Option<usize> {
    if direct == counted {
        Some(direct)
    } else {
        problems.push(format!("{what} at ({},{}): direct {direct}, from zigzags {counted}", at.0, at.1));
        None
    }
}

fn cell(v: Option<usize>) -> String {
    v.map_or("?".into(), |n| n.to_string())
}

fn json_cell(v: Option<usize>) -> Value {
    v.map_or(Value::Null, Value::from)
}

pub fn decompose(config: &RunConfig) -> Result<Outcome, CliError> {
    let c = config.load()?;
    let mut problems = Vec::new();
    let d = checked_split(&c, &mut problems);
    let verified = problems.is_empty();
    let text = match config.format {
        Format::Json => pretty(&json!({
            "verified": verified,
            "fingerprint": d.fingerprint(),
            "summands": d.to_value()["summands"],
        })),
        Format::Ascii => {
            let mut s = render::ascii(&c, &d, config.show_scalars);
            writeln!(s, "verified: {}", if verified { "ok" } else { "FAILED" }).unwrap();
            s
        }
        Format::Tikz => render::tikz(&c, &d, config.show_scalars),
    };
    Ok(outcome(text, problems))
}

pub fn tables(config: &RunConfig) -> Result<Outcome, CliError> {
    let c = config.load()?;
    let mut problems = Vec::new();
    let d = checked_split(&c, &mut problems);
    let page = spectral_sequence(&c, config.filtration, 1).remove(0);
    let flavors = [Flavor::Column, Flavor::Row, Flavor::BottChern, Flavor::Aeppli];

    let mut rows = Vec::new();
    for at in grid(&c) {
        let mut values: Vec<Option<usize>> = flavors
            .iter()
            .map(|&f| agreed(f.name(), at, c.cohomology(f, at.0, at.1), counts_to_cohomology(&d, f, at.0, at.1), &mut problems))
            .collect();
        values.push(agreed("im d1", at, page.im(at), counts_to_im_dr(&d, config.filtration, 1, at.0, at.1), &mut problems));
        rows.push((at, values));
    }
    let mut betti = Vec::new();
    if let Some((lo, hi)) = c.degree_range() {
        for k in lo..=hi {
            let direct = c.de_rham(k);
            let counted = counts_to_cohomology(&d, Flavor::DeRham, k, 0);
            betti.push((k, agreed("de_rham", (k, 0), direct, counted, &mut problems)));
        }
    }

    let text = match config.format {
        Format::Json => {
            let cohomology: Vec<Value> = rows
                .iter()
                .map(|((p, q), v)| {
                    json!({
                        "p": p, "q": q,
                        "column": json_cell(v[0]), "row": json_cell(v[1]),
                        "bott_chern": json_cell(v[2]), "aeppli": json_cell(v[3]),
                        "im_d1": json_cell(v[4]),
                    })
                })
                .collect();
            let de_rham: Vec<Value> = betti.iter().map(|(k, b)| json!({"k": k, "dim": json_cell(*b)})).collect();
            pretty(&json!({
                "filtration": config.filtration,
                "consistent": problems.is_empty(),
                "cohomology": cohomology,
                "de_rham": de_rham,
            }))
        }
        Format::Ascii => {
            let mut s = format!("filtration for im d1: {}\n", config.filtration);
            writeln!(s, "{:<8}{:>6}{:>6}{:>6}{:>6}{:>7}", "(p,q)", "H_d2", "H_d1", "H_BC", "H_A", "im d1").unwrap();
            for ((p, q), v) in &rows {
                let mut line = format!("{:<8}", format!("({p},{q})"));
                for (i, x) in v.iter().enumerate() {
                    let w = if i == 4 { 7 } else { 6 };
                    write!(line, "{:>w$}", cell(*x)).unwrap();
                }
                writeln!(s, "{line}").unwrap();
            }
            let b: Vec<String> = betti.iter().map(|(k, b)| format!("b{k}={}", cell(*b))).collect();
            writeln!(s, "de Rham: {}", b.join(" ")).unwrap();
            s
        }
        Format::Tikz => {
            let mut s = String::from("\\begin{tabular}{|c|c|c|c|c|c|}\n\\hline\n");
            s.push_str("$(p,q)$ & $H_{d_2}$ & $H_{d_1}$ & $H_{BC}$ & $H_A$ & $\\operatorname{im} d_1$ \\\\\n\\hline\n");
            for ((p, q), v) in &rows {
                let cells: Vec<String> = v.iter().map(|x| cell(*x)).collect();
                writeln!(s, "$({p},{q})$ & {} \\\\", cells.join(" & ")).unwrap();
            }
            s.push_str("\\hline\n\\end{tabular}\n");
            s
        }
    };
    Ok(outcome(text, problems))
}

/// `χ^p_q = Σ_{i≤q} (−1)^{q−i} e^{p,i}`, summing from the bottom of the box.
fn chi(e: impl Fn(Bidegree) -> usize, p: i64, q: i64, q0: i64) -> i64 {
    (q0..=q).map(|i| if (q - i) % 2 == 0 { e((p, i)) as i64 } else { -(e((p, i)) as i64) }).sum()
}

pub fn pages(config: &RunConfig) -> Result<Outcome, CliError> {
    let c = config.load()?;
    let f = config.filtration;
    let mut problems = Vec::new();
    let d = checked_split(&c, &mut problems);
    let pages = spectral_sequence(&c, f, config.r_max);
    for (r, at) in check_page_recursion(&pages) {
        problems.push(format!("page recursion fails at r={r}, ({},{})", at.0, at.1));
    }
    let first = match f {
        Filtration::Column => Flavor::Column,
        Filtration::Row => Flavor::Row,
    };
    let cells = grid(&c);
    // Page dimensions from the zigzag counts alone: E_1 is the first-page
    // cohomology, later pages follow from the counted differentials.
    let mut counted_dims: BTreeMap<Bidegree, usize> =
        cells.iter().map(|&at| (at, counts_to_cohomology(&d, first, at.0, at.1))).collect();
    let mut e: Vec<BTreeMap<Bidegree, Option<usize>>> = Vec::new();
    let mut im: Vec<BTreeMap<Bidegree, Option<usize>>> = Vec::new();
    for page in &pages {
        let r = page.r;
        let mut e_r = BTreeMap::new();
        let mut im_r = BTreeMap::new();
        let mut counted_im = BTreeMap::new();
        for &at in &cells {
            e_r.insert(at, agreed(&format!("e{r}"), at, page.dim(at), counted_dims[&at], &mut problems));
            let n = counts_to_im_dr(&d, f, r, at.0, at.1);
            counted_im.insert(at, n);
            im_r.insert(at, agreed(&format!("im d{r}"), at, page.im(at), n, &mut problems));
        }
        for &at in &cells {
            let incoming = counted_im.get(&f.source(r, at)).copied().unwrap_or(0);
            let slot = counted_dims.get_mut(&at).expect("grid point");
            *slot = slot.saturating_sub(counted_im[&at] + incoming);
        }
        e.push(e_r);
        im.push(im_r);
    }
    let chi_e2: Vec<(i64, i64, Option<i64>)> = match (e.get(1), c.bounding_box()) {
        (Some(e2), Some((p0, p1, q0, q1))) => (p0..=p1)
            .flat_map(|p| (q0..=q1).map(move |q| (p, q)))
            .map(|(p, q)| {
                let known = (q0..=q).all(|i| e2.get(&(p, i)).is_some_and(|x| x.is_some()));
                let value = known.then(|| chi(|at| e2[&at].unwrap_or(0), p, q, q0));
                (p, q, value)
            })
            .collect(),
        _ => Vec::new(),
    };
    let sums: Vec<BTreeMap<i64, usize>> = pages.iter().map(degree_sums).collect();

    let text = match config.format {
        Format::Json => {
            let page_values: Vec<Value> = pages
                .iter()
                .enumerate()
                .map(|(i, page)| {
                    let entries: Vec<Value> = cells
                        .iter()
                        .map(|&(p, q)| json!({"p": p, "q": q, "dim": json_cell(e[i][&(p, q)]), "im_d": json_cell(im[i][&(p, q)])}))
                        .collect();
                    json!({"r": page.r, "entries": entries, "degree_sums": sums[i]})
                })
                .collect();
            let chi_values: Vec<Value> = chi_e2.iter().map(|(p, q, v)| json!({"p": p, "q": q, "chi": v})).collect();
            pretty(&json!({
                "filtration": f,
                "consistent": problems.is_empty(),
                "pages": page_values,
                "chi_e2": chi_values,
            }))
        }
        Format::Ascii | Format::Tikz => {
            let tex = config.format == Format::Tikz;
            let mut header = vec!["(p,q)".to_string()];
            header.extend(pages.iter().map(|p| format!("e{}", p.r)));
            header.extend(pages.iter().map(|p| format!("im d{}", p.r)));
            let mut lines = vec![header];
            for &(p, q) in &cells {
                let mut row = vec![format!("({p},{q})")];
                row.extend(e.iter().map(|m| cell(m[&(p, q)])));
                row.extend(im.iter().map(|m| cell(m[&(p, q)])));
                lines.push(row);
            }
            let mut s = String::new();
            if tex {
                writeln!(s, "\\begin{{tabular}}{{|{}|}}\n\\hline", vec!["c"; lines[0].len()].join("|")).unwrap();
                for row in &lines {
                    writeln!(s, "{} \\\\", row.join(" & ")).unwrap();
                }
                s.push_str("\\hline\n\\end{tabular}\n");
            } else {
                writeln!(s, "filtration: {f}").unwrap();
                for row in &lines {
                    let mut line = format!("{:<8}", row[0]);
                    for x in &row[1..] {
                        write!(line, "{x:>7}").unwrap();
                    }
                    writeln!(s, "{line}").unwrap();
                }
                for (page, sum) in pages.iter().zip(&sums) {
                    let parts: Vec<String> = sum.iter().map(|(k, n)| format!("{k}:{n}")).collect();
                    writeln!(s, "sum over p+q=k of e{}: {}", page.r, parts.join(" ")).unwrap();
                }
                if !chi_e2.is_empty() {
                    s.push_str("chi^p_q(E2):\n");
                    for (p, q, v) in &chi_e2 {
                        let v = v.map_or("?".into(), |x| x.to_string());
                        writeln!(s, "  p={p} q={q} {v}").unwrap();
                    }
                }
            }
            s
        }
    };
    Ok(outcome(text, problems))
}

struct Sample {
    case: Case,
    fingerprint: Fingerprint,
    verified: bool,
}

pub fn classify(config: &RunConfig) -> Result<Outcome, CliError> {
    let params = sample_params(config.samples, config.seed);
    let samples: Vec<Sample> = params
        .par_iter()
        .map(|t| {
            let c = build_complex(t);
            let d = split(&c);
            Sample { case: case_of(t), verified: verify_decomposition(&c, &d).is_ok(), fingerprint: d.fingerprint() }
        })
        .collect();

    let mut problems = Vec::new();
    let unverified = samples.iter().filter(|s| !s.verified).count();
    if unverified > 0 {
        problems.push(format!("{unverified} decompositions failed verification"));
    }
    let mut groups: BTreeMap<&Fingerprint, (BTreeSet<Case>, usize)> = BTreeMap::new();
    for s in &samples {
        let g = groups.entry(&s.fingerprint).or_default();
        g.0.insert(s.case);
        g.1 += 1;
    }
    let mut groups: Vec<(&Fingerprint, BTreeSet<Case>, usize)> =
        groups.into_iter().map(|(fp, (cases, n))| (fp, cases, n)).collect();
    groups.sort_by(|a, b| (&a.1, a.0).cmp(&(&b.1, b.0)));

    let mut reports = Vec::new();
    for (fp, cases, n) in &groups {
        let labels: Vec<String> = cases.iter().map(|c| c.to_string()).collect();
        let matches = cases.len() == 1 && expected_fingerprint(*cases.first().expect("nonempty")) == **fp;
        if cases.len() > 1 {
            problems.push(format!("one fingerprint holds samples of cases {}", labels.join(", ")));
        } else if !matches {
            problems.push(format!("case {} samples do not have the expected diagram", labels[0]));
        }
        reports.push((labels, *n, matches, *fp));
    }

    let text = match config.format {
        Format::Json => {
            let g: Vec<Value> = reports
                .iter()
                .map(|(labels, n, matches, fp)| json!({"cases": labels, "count": n, "matches_diagram": matches, "fingerprint": fp}))
                .collect();
            pretty(&json!({"samples": config.samples, "seed": config.seed, "groups": g}))
        }
        _ => {
            let mut s = format!(
                "{} samples, seed {}, {} fingerprint groups\n",
                config.samples,
                config.seed,
                reports.len()
            );
            for (labels, n, matches, fp) in &reports {
                writeln!(
                    s,
                    "case {}: {n} samples, {}",
                    labels.join("+"),
                    if *matches { "matches the expected diagram" } else { "DOES NOT match the expected diagram" }
                )
                .unwrap();
                let mut dots = 0;
                for (shape, k) in fp.iter() {
                    if shape.contains(';') {
                        writeln!(s, "  {k} x {shape}").unwrap();
                    } else {
                        dots += k;
                    }
                }
                writeln!(s, "  {dots} dots").unwrap();
            }
            s
        }
    };
    Ok(outcome(text, problems))
}

pub fn selftest(config: &RunConfig) -> Result<Outcome, CliError> {
    let mut checks: Vec<(String, Result<(), String>)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut points = representatives();
    points.extend((0..10).map(|_| random_params(&mut rng)));

    let mut formula = Vec::new();
    let mut lie = Vec::new();
    let mut laws = Vec::new();
    for t in &points {
        formula.extend(golden::check_formulas(t).iter().map(|m| m.to_string()));
        lie.extend(golden::check_lie_identities(t));
        let report = build_complex(t).validate();
        if !report.is_ok() {
            laws.push(report.to_string());
        }
    }
    let joined = |v: Vec<String>| if v.is_empty() { Ok(()) } else { Err(v.join("; ")) };
    checks.push(("operator closed forms".into(), joined(formula)));
    checks.push(("Lie derivative identities".into(), joined(lie)));
    checks.push(("differential laws".into(), joined(laws)));
    for t in representatives() {
        let case = case_of(&t);
        checks.push((format!("dimension tables, case {case}, t = {t}"), joined(check_tables(&t))));
        checks.push((format!("diagram, case {case}, t = {t}"), check_diagram(&t)));
        let report = consistency_report(&build_complex(&t));
        let detail = report
            .mismatches
            .iter()
            .map(|m| m.to_string())
            .chain((!report.decomposition.is_ok()).then(|| report.decomposition.to_string()))
            .collect();
        checks.push((format!("direct vs zigzag counts, case {case}, t = {t}"), joined(detail)));
    }

    let problems: Vec<String> =
        checks.iter().filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}"))).collect();
    let text = match config.format {
        Format::Json => {
            let list: Vec<Value> = checks
                .iter()
                .map(|(name, r)| json!({"name": name, "passed": r.is_ok(), "detail": r.as_ref().err()}))
                .collect();
            pretty(&json!({"passed": problems.is_empty(), "checks": list}))
        }
        _ => {
            let mut s = String::new();
            for (name, r) in &checks {
                match r {
                    Ok(()) => writeln!(s, "PASS {name}").unwrap(),
                    Err(e) => writeln!(s, "FAIL {name}: {e}").unwrap(),
                }
            }
            writeln!(s, "{} of {} checks passed", checks.len() - problems.len(), checks.len()).unwrap();
            s
        }
    };
    Ok(outcome(text, problems))
}

pub fn convert(config: &RunConfig) -> Result<Outcome, CliError> {
    let c = config.load()?;
    Ok(outcome(c.to_json(), Vec::new()))
}
