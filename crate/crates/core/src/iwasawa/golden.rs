//! Hand-derived closed forms of `∂̄_φ(t)` on every basis monomial of positive
//! degree with antiholomorphic degree below 3, as polynomials in
//! `t₁₁, t₁₂, t₂₁, t₂₂`.
//! Used by the self-test and the acceptance suite.

use crate::scalar::Scalar;

use super::{del, delbar_phi, lie10, BeltramiTensor, InvariantForm, IwasawaParams, Monomial};

/// `(source, [(coefficient, target)])`. A coefficient is `"+1"`, `"-1"`, or
/// a signed parameter name such as `"-t11"`.
pub type Formula = (&'static str, &'static [(&'static str, &'static str)]);

pub const DELBAR_PHI: &[Formula] = &[
    ("1|", &[]),
    ("2|", &[]),
    ("3|", &[("+t21", "1|1"), ("-t11", "2|1"), ("+t22", "1|2"), ("-t12", "2|2")]),
    ("|1", &[]),
    ("|2", &[]),
    ("|3", &[("-1", "|12")]),
    ("12|", &[]),
    ("13|", &[("+t11", "12|1"), ("+t12", "12|2")]),
    ("23|", &[("+t21", "12|1"), ("+t22", "12|2")]),
    ("1|1", &[]),
    ("1|2", &[]),
    ("2|1", &[]),
    ("2|2", &[]),
    ("1|3", &[("+1", "1|12")]),
    ("2|3", &[("+1", "2|12")]),
    ("3|1", &[("-t22", "1|12"), ("+t12", "2|12")]),
    ("3|2", &[("+t21", "1|12"), ("-t11", "2|12")]),
    (
        "3|3",
        &[("+1", "3|12"), ("-t11", "2|13"), ("+t21", "1|13"), ("-t12", "2|23"), ("+t22", "1|23")],
    ),
    ("|12", &[]),
    ("|13", &[]),
    ("|23", &[]),
    ("123|", &[]),
    ("12|1", &[]),
    ("12|2", &[]),
    ("12|3", &[("-1", "12|12")]),
    ("13|1", &[("-t12", "12|12")]),
    ("13|2", &[("+t11", "12|12")]),
    ("23|1", &[("-t22", "12|12")]),
    ("23|2", &[("+t21", "12|12")]),
    ("13|3", &[("-1", "13|12"), ("+t11", "12|13"), ("+t12", "12|23")]),
    ("23|3", &[("-1", "23|12"), ("+t21", "12|13"), ("+t22", "12|23")]),
    ("1|12", &[]),
    ("1|13", &[]),
    ("1|23", &[]),
    ("2|12", &[]),
    ("2|13", &[]),
    ("2|23", &[]),
    ("3|12", &[]),
    ("3|13", &[("+t12", "2|123"), ("-t22", "1|123")]),
    ("3|23", &[("+t21", "1|123"), ("-t11", "2|123")]),
    ("123|1", &[]),
    ("123|2", &[]),
    ("123|3", &[("+1", "123|12")]),
    ("12|12", &[]),
    ("12|13", &[]),
    ("12|23", &[]),
    ("13|12", &[]),
    ("23|12", &[]),
    ("13|13", &[("-t12", "12|123")]),
    ("13|23", &[("+t11", "12|123")]),
    ("23|13", &[("-t22", "12|123")]),
    ("23|23", &[("+t21", "12|123")]),
    ("123|12", &[]),
    ("123|13", &[]),
    ("123|23", &[]),
];

/// Closed forms of `∂` used as fixtures.
pub const DEL: &[Formula] = &[
    ("3|", &[("-1", "12|")]),
    ("3|3", &[("-1", "12|3")]),
    ("123|", &[]),
];

fn coefficient(text: &str, t: &IwasawaParams) -> Scalar {
    let (sign, body) = match text.split_at(1) {
        ("+", b) => (Scalar::one(), b),
        ("-", b) => (Scalar::from_int(-1), b),
        _ => panic!("coefficient {text:?} lacks a sign"),
    };
    let value = match body {
        "1" => Scalar::one(),
        name => {
            let digits: Vec<usize> = name
                .strip_prefix('t')
                .expect("parameter name")
                .chars()
                .map(|c| c.to_digit(10).expect("digit") as usize)
                .collect();
            t.get(digits[0], digits[1]).clone()
        }
    };
    sign * value
}

/// Evaluate a closed form at `t`.
pub fn expected(terms: &[(&str, &str)], t: &IwasawaParams) -> InvariantForm {
    let mut out = InvariantForm::zero();
    for &(c, m) in terms {
        out.add_term(coefficient(c, t), m.parse::<Monomial>().expect("fixture monomial"));
    }
    out
}

/// One failed fixture, with the computed and expected forms.
#[derive(Debug, Clone)]
pub struct Mismatch {
    pub operator: &'static str,
    pub source: &'static str,
    pub computed: InvariantForm,
    pub expected: InvariantForm,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} on {}: computed {}, expected {}",
            self.operator, self.source, self.computed, self.expected
        )
    }
}

/// Compare every closed form with the operators at `t`.
pub fn check_formulas(t: &IwasawaParams) -> Vec<Mismatch> {
    let mut bad = Vec::new();
    let mut run = |operator: &'static str, table: &'static [Formula], op: &dyn Fn(&InvariantForm) -> InvariantForm| {
        for &(src, terms) in table {
            let m: Monomial = src.parse().expect("fixture monomial");
            let computed = op(&InvariantForm::monomial(m));
            let want = expected(terms, t);
            if computed != want {
                bad.push(Mismatch { operator, source: src, computed, expected: want });
            }
        }
    };
    run("del", DEL, &del);
    run("delbar_phi", DELBAR_PHI, &|a| delbar_phi(t, a));
    bad
}

/// `L_{φ₁} φ³ = Σ_λ (t_{1λ}φ² − t_{2λ}φ¹) ∧ φ̄^λ`, `L_{φ₁} φ¹ = 0` and
/// `L_{φ₂}` vanishing on all generators. Returns a description of each
/// failure.
pub fn check_lie_identities(t: &IwasawaParams) -> Vec<String> {
    let mut bad = Vec::new();
    let first = BeltramiTensor::first_order(t);
    let second = BeltramiTensor::second_order(t);
    let mut want = InvariantForm::zero();
    for l in 1..=2u8 {
        let bar = InvariantForm::phibar(l);
        let left = InvariantForm::phi(2)
            .scale(t.get(1, l as usize))
            .sub(&InvariantForm::phi(1).scale(t.get(2, l as usize)));
        want = want.add(&left.wedge(&bar));
    }
    let got = lie10(&first, &InvariantForm::phi(3));
    if got != want {
        bad.push(format!("L_phi1 on phi^3: computed {got}, expected {want}"));
    }
    let got = lie10(&first, &InvariantForm::phi(1));
    if !got.is_zero() {
        bad.push(format!("L_phi1 on phi^1: computed {got}, expected 0"));
    }
    for g in 0..6 {
        let gen = InvariantForm::monomial(Monomial::generator(g));
        let got = lie10(&second, &gen);
        if !got.is_zero() {
            bad.push(format!("L_phi2 on {}: computed {got}, expected 0", Monomial::generator(g)));
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iwasawa::sampling::random_params;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixtures_cover_every_monomial_with_room_above() {
        assert_eq!(DELBAR_PHI.len(), 55);
        let mut seen: Vec<Monomial> = DELBAR_PHI.iter().map(|(s, _)| s.parse().unwrap()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 55);
    }

    #[test]
    fn formulas_hold_at_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let t = random_params(&mut rng);
            let bad = check_formulas(&t);
            assert!(bad.is_empty(), "{}", bad.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("\n"));
            assert!(check_lie_identities(&t).is_empty());
        }
    }
}
