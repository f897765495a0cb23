//! Invariant forms on the Iwasawa manifold and the double complex
//! `(∧•, ∂ + ∂̄_φ(t))` of its Kuranishi deformations.
//!
//! Structure equations: `dφ¹ = dφ² = 0`, `dφ³ = −φ¹∧φ²`, so `∂φ³ = −φ^{12}`
//! and `∂̄φ̄³ = −φ̄^{12}`. The Beltrami differential is
//! `φ(t) = Σ_{i, λ≤2} t_{iλ} θ^i ⊗ φ̄^λ − D(t) θ³ ⊗ φ̄³` with
//! `D(t) = t₁₁t₂₂ − t₂₁t₁₂`, and `∂̄_φ = ∂̄ − (i_φ∂ − ∂i_φ)`.

mod forms;
pub mod golden;
mod params;
pub mod reference;
pub mod sampling;

pub use forms::{InvariantForm, Monomial, GENERATORS};
pub use params::{case_of, Case, IwasawaParams, ParamsError, PARAM_NAMES};

use crate::dcomplex::BigradedComplex;
use crate::exactla::Matrix;
use crate::scalar::Scalar;

/// Coefficients of `θ^i ⊗ φ̄^λ`, indexed `[i-1][λ-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeltramiTensor {
    pub coeff: [[Scalar; 3]; 3],
}

impl BeltramiTensor {
    pub fn zero() -> Self {
        Self { coeff: std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero())) }
    }

    /// The full Kuranishi `φ(t)`.
    pub fn from_params(t: &IwasawaParams) -> Self {
        let mut phi = Self::first_order(t);
        phi.coeff[2][2] = -t.discriminant();
        phi
    }

    /// The part linear in `t`.
    pub fn first_order(t: &IwasawaParams) -> Self {
        let mut phi = Self::zero();
        for i in 0..3 {
            for l in 0..2 {
                phi.coeff[i][l] = t.get(i + 1, l + 1).clone();
            }
        }
        phi
    }

    /// The quadratic part `−D(t) θ³ ⊗ φ̄³`.
    pub fn second_order(t: &IwasawaParams) -> Self {
        let mut phi = Self::zero();
        phi.coeff[2][2] = -t.discriminant();
        phi
    }
}

/// Apply a derivation determined by its values on generators. For an odd
/// derivation the term replacing the `k`-th factor carries `(−1)^k`.
fn derivation(a: &InvariantForm, odd: bool, on_generator: impl Fn(usize) -> InvariantForm) -> InvariantForm {
    let mut out = InvariantForm::zero();
    for (m, c) in a.terms() {
        let gens: Vec<usize> = m.generators().collect();
        for (k, &g) in gens.iter().enumerate() {
            let image = on_generator(g);
            if image.is_zero() {
                continue;
            }
            let mut prefix = Monomial::ONE;
            for &h in &gens[..k] {
                prefix = prefix.wedge(Monomial::generator(h)).expect("distinct").1;
            }
            let mut suffix = Monomial::ONE;
            for &h in &gens[k + 1..] {
                suffix = suffix.wedge(Monomial::generator(h)).expect("distinct").1;
            }
            let sign = if odd && k % 2 == 1 { -1 } else { 1 };
            let piece = InvariantForm::monomial(prefix)
                .wedge(&image)
                .wedge(&InvariantForm::monomial(suffix));
            out = out.add(&piece.scale(&(c * &Scalar::from_int(sign))));
        }
    }
    out
}

/// `∂`: `∂φ³ = −φ^{12}`, zero on the other generators.
pub fn del(a: &InvariantForm) -> InvariantForm {
    derivation(a, true, |g| match g {
        2 => InvariantForm::monomial(Monomial::from_indices(&[1, 2], &[])).scale(&Scalar::from_int(-1)),
        _ => InvariantForm::zero(),
    })
}

/// Undeformed `∂̄`: `∂̄φ̄³ = −φ̄^{12}`, zero on the other generators.
pub fn delbar(a: &InvariantForm) -> InvariantForm {
    derivation(a, true, |g| match g {
        5 => InvariantForm::monomial(Monomial::from_indices(&[], &[1, 2])).scale(&Scalar::from_int(-1)),
        _ => InvariantForm::zero(),
    })
}

/// Contraction `i_φ`: even derivation with `i_φ φ^j = Σ_λ φ_{jλ} φ̄^λ` and
/// `i_φ φ̄^j = 0`.
pub fn contract(phi: &BeltramiTensor, a: &InvariantForm) -> InvariantForm {
    derivation(a, false, |g| {
        let mut out = InvariantForm::zero();
        if g < 3 {
            for l in 0..3 {
                out.add_term(phi.coeff[g][l].clone(), Monomial::generator(3 + l));
            }
        }
        out
    })
}

/// `L^{1,0}_φ = i_φ∂ − ∂i_φ`.
pub fn lie10(phi: &BeltramiTensor, a: &InvariantForm) -> InvariantForm {
    contract(phi, &del(a)).sub(&del(&contract(phi, a)))
}

/// `∂̄_φ = ∂̄ − L^{1,0}_φ` for an explicit tensor.
pub fn delbar_phi_with(phi: &BeltramiTensor, a: &InvariantForm) -> InvariantForm {
    delbar(a).sub(&lie10(phi, a))
}

/// `∂̄_{φ(t)}` for the Kuranishi parameters `t`.
pub fn delbar_phi(t: &IwasawaParams, a: &InvariantForm) -> InvariantForm {
    delbar_phi_with(&BeltramiTensor::from_params(t), a)
}

/// Matrix of a bidegree-`(dp, dq)` operator from `∧^{p,q}` in canonical bases.
pub fn operator_matrix(
    p: i64,
    q: i64,
    shift: (i64, i64),
    op: impl Fn(&InvariantForm) -> InvariantForm,
) -> Matrix {
    let src = Monomial::basis(p, q);
    let dst = Monomial::basis(p + shift.0, q + shift.1);
    let mut m = Matrix::zeros(dst.len(), src.len());
    for (col, &s) in src.iter().enumerate() {
        let image = op(&InvariantForm::monomial(s));
        for (row, &d) in dst.iter().enumerate() {
            let c = image.coeff(d);
            if !c.is_zero() {
                m.set(row, col, c);
            }
        }
        debug_assert!(
            image.terms().all(|(mm, _)| dst.contains(&mm)),
            "operator left the target bidegree"
        );
    }
    m
}

/// The double complex `(∧^{•,•}, ∂, ∂̄_φ(t))` on `0 ≤ p, q ≤ 3`, with
/// monomial labels.
pub fn build_complex(t: &IwasawaParams) -> BigradedComplex {
    let phi = BeltramiTensor::from_params(t);
    let mut c = BigradedComplex::new();
    for p in 0..=3 {
        for q in 0..=3 {
            c.set_dim((p, q), Monomial::basis(p, q).len());
        }
    }
    for p in 0..=3 {
        for q in 0..=3 {
            let labels = Monomial::basis(p, q).iter().map(|m| m.label()).collect();
            c.set_labels((p, q), labels).expect("label count matches basis");
            if p < 3 {
                c.set_d1((p, q), operator_matrix(p, q, (1, 0), del)).expect("shape");
            }
            if q < 3 {
                c.set_d2((p, q), operator_matrix(p, q, (0, 1), |a| delbar_phi_with(&phi, a)))
                    .expect("shape");
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn form(terms: &[(i64, &str)]) -> InvariantForm {
        let mut f = InvariantForm::zero();
        for &(c, s) in terms {
            f.add_term(Scalar::from_int(c), m(s));
        }
        f
    }

    #[test]
    fn del_on_structure_generators() {
        assert_eq!(del(&InvariantForm::phi(3)), form(&[(-1, "12|")]));
        assert_eq!(del(&InvariantForm::monomial(m("3|3"))), form(&[(-1, "12|3")]));
        assert!(del(&InvariantForm::monomial(m("123|"))).is_zero());
    }

    #[test]
    fn delbar_on_structure_generators() {
        assert_eq!(delbar(&InvariantForm::phibar(3)), form(&[(-1, "|12")]));
        for i in 1..=3 {
            assert!(delbar(&InvariantForm::phi(i)).is_zero());
        }
        assert_eq!(delbar(&InvariantForm::monomial(m("123|3"))), form(&[(1, "123|12")]));
    }

    #[test]
    fn contraction_examples() {
        let t: IwasawaParams = "t31=1/2".parse().unwrap();
        let phi = BeltramiTensor::from_params(&t);
        assert_eq!(
            contract(&phi, &InvariantForm::phi(3)),
            InvariantForm::term(Scalar::ratio(1, 2), m("|1"))
        );
        assert!(contract(&phi, &InvariantForm::phibar(2)).is_zero());

        let t: IwasawaParams = "t11=1/2".parse().unwrap();
        let phi = BeltramiTensor::from_params(&t);
        assert_eq!(
            contract(&phi, &InvariantForm::monomial(m("12|"))),
            InvariantForm::term(Scalar::ratio(-1, 2), m("2|1"))
        );
    }

    #[test]
    fn squares_vanish_at_a_generic_point() {
        let t: IwasawaParams = "t11=1/2+i,t12=-3,t21=2/7,t22=5i,t31=1,t32=-1/3".parse().unwrap();
        let c = build_complex(&t);
        assert!(c.validate().is_ok(), "{}", c.validate());
    }

    #[test]
    fn origin_reduces_to_the_undeformed_operators() {
        let t = IwasawaParams::zero();
        for bits in 0..64u8 {
            let a = InvariantForm::monomial(Monomial::from_bits(bits));
            assert_eq!(delbar_phi(&t, &a), delbar(&a));
        }
    }
}
