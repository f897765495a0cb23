//! Exterior algebra on `φ¹, φ², φ³, φ̄¹, φ̄², φ̄³`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::scalar::Scalar;

/// Number of generators: three holomorphic, three antiholomorphic.
pub const GENERATORS: usize = 6;

/// A wedge monomial `φ^{I J̄}` as a bit set. Bits 0..3 are `φ¹, φ², φ³`;
/// bits 3..6 are `φ̄¹, φ̄², φ̄³`. The product is taken in bit order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u8);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_bits(bits: u8) -> Self {
        assert!(bits < 64, "monomial bits out of range");
        Monomial(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// Single generator; `0..3` holomorphic, `3..6` antiholomorphic.
    pub fn generator(g: usize) -> Self {
        assert!(g < GENERATORS);
        Monomial(1 << g)
    }

    /// From 1-based index lists, e.g. `([1, 3], [2])` for `φ^{13 2̄}`.
    pub fn from_indices(holo: &[u8], anti: &[u8]) -> Self {
        let mut bits = 0u8;
        for &i in holo {
            assert!((1..=3).contains(&i));
            bits |= 1 << (i - 1);
        }
        for &j in anti {
            assert!((1..=3).contains(&j));
            bits |= 1 << (j + 2);
        }
        Monomial(bits)
    }

    pub fn holo(self) -> Vec<u8> {
        (1..=3).filter(|i| self.0 & (1 << (i - 1)) != 0).collect()
    }

    pub fn anti(self) -> Vec<u8> {
        (1..=3).filter(|j| self.0 & (1 << (j + 2)) != 0).collect()
    }

    pub fn bidegree(self) -> (i64, i64) {
        ((self.0 & 0b111).count_ones() as i64, (self.0 >> 3).count_ones() as i64)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Generators in product order.
    pub fn generators(self) -> impl Iterator<Item = usize> {
        (0..GENERATORS).filter(move |g| self.0 & (1 << g) != 0)
    }

    /// All monomials of bidegree `(p, q)` in canonical order.
    pub fn basis(p: i64, q: i64) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = (0u8..64)
            .map(Monomial)
            .filter(|m| m.bidegree() == (p, q))
            .collect();
        out.sort();
        out
    }

    /// `"phi^{13|2}"`, or `"1"` for the empty monomial.
    pub fn label(self) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        let digits = |v: Vec<u8>| v.iter().map(|d| d.to_string()).collect::<String>();
        format!("phi^{{{}|{}}}", digits(self.holo()), digits(self.anti()))
    }

    /// Product `self ∧ other` as `(sign, monomial)`, or `None` if it vanishes.
    pub fn wedge(self, other: Monomial) -> Option<(i64, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0;
        for a in self.generators() {
            inversions += other.generators().filter(|&b| b < a).count();
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial(self.0 | other.0)))
    }
}

impl Ord for Monomial {
    /// By bidegree, then lexicographically on holomorphic then
    /// antiholomorphic index lists.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.bidegree(), self.holo(), self.anti()).cmp(&(other.bidegree(), other.holo(), other.anti()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for Monomial {
    type Err = String;

    /// `"13|2"` (holomorphic digits, bar, antiholomorphic digits), with an
    /// optional `phi^{…}` wrapper; `"1"` or `"|"` is the empty monomial.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::ONE);
        }
        let inner = s
            .strip_prefix("phi^{")
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(s);
        let (h, a) = inner
            .split_once('|')
            .ok_or_else(|| format!("monomial {s:?} needs a '|' separator"))?;
        let parse = |part: &str| -> Result<Vec<u8>, String> {
            let mut out: Vec<u8> = Vec::new();
            for ch in part.chars() {
                let d = ch.to_digit(10).filter(|d| (1..=3).contains(d));
                let d = d.ok_or_else(|| format!("bad index {ch:?} in monomial {s:?}"))? as u8;
                if out.last().is_some_and(|&last| last >= d) {
                    return Err(format!("indices in {s:?} must be strictly ascending"));
                }
                out.push(d);
            }
            Ok(out)
        };
        Ok(Monomial::from_indices(&parse(h)?, &parse(a)?))
    }
}

/// Element of the exterior algebra with exact coefficients; zero
/// coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvariantForm {
    terms: BTreeMap<Monomial, Scalar>,
}

impl InvariantForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut f = Self::zero();
        f.add_term(c, m);
        f
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Scalar::one(), m)
    }

    /// `φ^i`, `i ∈ 1..=3`.
    pub fn phi(i: u8) -> Self {
        Self::monomial(Monomial::from_indices(&[i], &[]))
    }

    /// `φ̄^j`, `j ∈ 1..=3`.
    pub fn phibar(j: u8) -> Self {
        Self::monomial(Monomial::from_indices(&[], &[j]))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Scalar)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn add_term(&mut self, c: Scalar, m: Monomial) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Scalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(c.clone(), m);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            out.add_term(c * s, m);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if let Some((sign, m)) = a.wedge(b) {
                    out.add_term(ca * cb * Scalar::from_int(sign), m);
                }
            }
        }
        out
    }

    /// Component of bidegree `(p, q)`.
    pub fn part(&self, p: i64, q: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.bidegree() == (p, q))
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for InvariantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| if c.is_one() { m.label() } else { format!("({c}){}", m.label()) })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
