//! Published dimension tables and decomposition diagrams for the three
//! cases, with checkers used by the self-test and the acceptance suite.

use std::collections::{BTreeMap, BTreeSet};

use crate::dcomplex::{spectral_sequence, Bidegree, Filtration};
use crate::decomp::{decompose, ElementaryShape, Fingerprint};

use super::{build_complex, case_of, Case, IwasawaParams, Monomial};

/// Column of a three-valued row, one value per case.
fn pick<T: Copy>(values: PerCase<T>, case: Case) -> T {
    values[match case {
        Case::I => 0,
        Case::II => 1,
        Case::III => 2,
    }]
}

/// Values for cases I, II, III.
pub type PerCase<T> = [T; 3];

/// `(p, q, h_∂̄, h_BC, dim im d₁)`.
pub type TableRow = (i64, i64, PerCase<usize>, PerCase<usize>, PerCase<usize>);

pub const DOLBEAULT_BC_D1: &[TableRow] = &[
    (1, 0, [3, 2, 2], [2, 2, 2], [1, 0, 0]),
    (0, 1, [2, 2, 2], [2, 2, 2], [0, 0, 0]),
    (2, 0, [3, 2, 1], [3, 2, 1], [0, 0, 0]),
    (1, 1, [6, 5, 5], [4, 4, 4], [2, 1, 0]),
    (0, 2, [2, 2, 2], [3, 3, 3], [0, 0, 0]),
    (3, 0, [1, 1, 1], [1, 1, 1], [0, 0, 0]),
    (2, 1, [6, 5, 4], [6, 6, 6], [0, 0, 0]),
    (1, 2, [6, 5, 4], [6, 6, 6], [2, 1, 0]),
    (0, 3, [1, 1, 1], [1, 1, 1], [0, 0, 0]),
    (3, 1, [2, 2, 2], [2, 2, 2], [0, 0, 0]),
    (2, 2, [6, 5, 5], [8, 7, 7], [0, 0, 0]),
    (1, 3, [3, 2, 1], [2, 2, 2], [1, 0, 0]),
    (3, 2, [2, 2, 2], [3, 3, 3], [0, 0, 0]),
    (2, 3, [3, 2, 2], [3, 3, 3], [0, 0, 0]),
];

/// `(p, q, e₁, e₂)` for the column filtration.
pub const PAGES: &[(i64, i64, PerCase<usize>, PerCase<usize>)] = &[
    (1, 0, [3, 2, 2], [2, 2, 2]),
    (0, 1, [2, 2, 2], [2, 2, 2]),
    (2, 0, [3, 2, 1], [2, 2, 1]),
    (1, 1, [6, 5, 5], [4, 4, 5]),
    (0, 2, [2, 2, 2], [2, 2, 2]),
    (3, 0, [1, 1, 1], [1, 1, 1]),
    (2, 1, [6, 5, 4], [4, 4, 4]),
    (1, 2, [6, 5, 4], [4, 4, 4]),
    (0, 3, [1, 1, 1], [1, 1, 1]),
    (3, 1, [2, 2, 2], [2, 2, 2]),
    (2, 2, [6, 5, 5], [4, 4, 5]),
    (1, 3, [3, 2, 1], [2, 2, 1]),
    (3, 2, [2, 2, 2], [2, 2, 2]),
    (2, 3, [3, 2, 2], [2, 2, 2]),
];

/// `(p, q, χ^p_q(E₂))` with `χ^p_q = Σ_{i≤q} (−1)^{q−i} e₂^{p,i}`.
pub const CHI_E2: &[(i64, i64, PerCase<i64>)] = &[
    (0, 1, [1, 1, 1]),
    (0, 2, [1, 1, 1]),
    (0, 3, [0, 0, 0]),
    (1, 1, [2, 2, 3]),
    (1, 2, [2, 2, 1]),
    (1, 3, [0, 0, 0]),
    (2, 1, [2, 2, 3]),
    (2, 2, [2, 2, 2]),
    (2, 3, [0, 0, 0]),
    (3, 1, [1, 1, 1]),
    (3, 2, [1, 1, 1]),
    (3, 3, [0, 0, 0]),
];

/// Total Betti numbers `b₀..b₆`, the same in every case.
pub const BETTI: [usize; 7] = [1, 4, 8, 10, 8, 4, 1];

/// Shapes other than dots drawn in each case's diagram, with multiplicity.
pub fn drawn_shapes(case: Case) -> Vec<(&'static str, usize)> {
    let common = [
        ("square:1,1;1,2;2,1;2,2", 1),
        ("zigzag:0,1;0,2", 1),
        ("zigzag:1,1;1,2", 2),
        ("zigzag:2,1;2,2", 2),
        ("zigzag:3,1;3,2", 1),
    ];
    let specific: &[(&str, usize)] = match case {
        Case::I => &[
            ("zigzag:1,0;2,0", 1),
            ("zigzag:1,1;2,1", 2),
            ("zigzag:1,2;2,2", 2),
            ("zigzag:1,3;2,3", 1),
        ],
        Case::II => &[
            ("zigzag:1,0;1,1;2,0", 1),
            ("zigzag:1,1;2,0;2,1", 1),
            ("zigzag:1,1;2,1", 1),
            ("zigzag:1,2;2,2", 1),
            ("zigzag:1,2;1,3;2,2", 1),
            ("zigzag:1,3;2,2;2,3", 1),
        ],
        Case::III => &[
            ("zigzag:1,0;1,1;2,0", 1),
            ("zigzag:1,1;2,0;2,1", 2),
            ("zigzag:1,2;1,3;2,2", 2),
            ("zigzag:1,3;2,2;2,3", 1),
        ],
    };
    common.iter().chain(specific).copied().collect()
}

/// Full expected fingerprint: the drawn shapes plus a dot for every basis
/// vector they leave uncovered.
pub fn expected_fingerprint(case: Case) -> Fingerprint {
    let mut left: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for p in 0..=3 {
        for q in 0..=3 {
            left.insert((p, q), Monomial::basis(p, q).len());
        }
    }
    let mut out = Fingerprint::new();
    for (s, n) in drawn_shapes(case) {
        let shape: ElementaryShape = s.parse().expect("fixture shape");
        for at in shape.points() {
            let slot = left.get_mut(at).expect("inside the box");
            *slot = slot.checked_sub(n).expect("diagram fits the dimensions");
        }
        out.insert(shape.canonical(), n);
    }
    for ((p, q), n) in left {
        if n > 0 {
            out.insert(ElementaryShape::dot(p, q).canonical(), n);
        }
    }
    out
}

/// The case whose diagram has this fingerprint, if any.
pub fn case_of_fingerprint(fp: &Fingerprint) -> Option<Case> {
    [Case::I, Case::II, Case::III].into_iter().find(|&c| expected_fingerprint(c) == *fp)
}

/// Compare the cohomology and page tables (including χ and Betti numbers) at `t`,
/// returning a line per mismatch.
pub fn check_tables(t: &IwasawaParams) -> Vec<String> {
    let case = case_of(t);
    let c = build_complex(t);
    let pages = spectral_sequence(&c, Filtration::Column, 2);
    let mut bad = Vec::new();
    let mut check = |what: &str, (p, q): Bidegree, got: i64, want: i64| {
        if got != want {
            bad.push(format!("case {case} {what}^{{{p},{q}}}: computed {got}, expected {want}"));
        }
    };
    for &(p, q, h, bc, d1) in DOLBEAULT_BC_D1 {
        check("h_dbar", (p, q), c.column_cohomology(p, q) as i64, pick(h, case) as i64);
        check("h_BC", (p, q), c.bott_chern(p, q) as i64, pick(bc, case) as i64);
        check("im d1", (p, q), pages[0].im((p, q)) as i64, pick(d1, case) as i64);
    }
    for &(p, q, e1, e2) in PAGES {
        check("e1", (p, q), pages[0].dim((p, q)) as i64, pick(e1, case) as i64);
        check("e2", (p, q), pages[1].dim((p, q)) as i64, pick(e2, case) as i64);
    }
    for &(p, q, chi) in CHI_E2 {
        let got: i64 = (0..=q)
            .map(|i| {
                let sign = if (q - i) % 2 == 0 { 1 } else { -1 };
                sign * pages[1].dim((p, i)) as i64
            })
            .sum();
        check("chi(E2)", (p, q), got, pick(chi, case));
    }
    for (k, &b) in BETTI.iter().enumerate() {
        check("b", (k as i64, 0), c.de_rham(k as i64) as i64, b as i64);
    }
    bad
}

/// Compare the computed decomposition at `t` with its case's diagram.
pub fn check_diagram(t: &IwasawaParams) -> Result<(), String> {
    let case = case_of(t);
    let got = decompose(&build_complex(t)).fingerprint();
    let want = expected_fingerprint(case);
    if got == want {
        return Ok(());
    }
    let keys: BTreeSet<&String> = got.keys().chain(want.keys()).collect();
    let mut diff = Vec::new();
    for key in keys {
        let (a, b) = (got.get(key).copied().unwrap_or(0), want.get(key).copied().unwrap_or(0));
        if a != b {
            diff.push(format!("{key} computed {a} expected {b}"));
        }
    }
    Err(format!("case {case} diagram: {}", diff.join(", ")))
}
