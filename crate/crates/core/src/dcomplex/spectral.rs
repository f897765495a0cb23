//! Spectral sequences of the column and row filtrations of the total complex,
//! computed from the classical `Z_r / B_r` subspace description.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exactla::{Matrix, Subspace};

use super::{Bidegree, BigradedComplex};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Filtration {
    /// `F^p = ⊕_{p' ≥ p} A^{p',•}`; `d_r` has bidegree `(r, 1−r)`.
    #[default]
    Column,
    /// `F^q = ⊕_{q' ≥ q} A^{•,q'}`; `d_r` has bidegree `(1−r, r)`.
    Row,
}

impl Filtration {
    /// Target of `d_r` from `(p, q)`.
    pub fn target(self, r: usize, (p, q): Bidegree) -> Bidegree {
        let r = r as i64;
        match self {
            Filtration::Column => (p + r, q - r + 1),
            Filtration::Row => (p - r + 1, q + r),
        }
    }

    /// Source of the `d_r` landing in `(p, q)`.
    pub fn source(self, r: usize, (p, q): Bidegree) -> Bidegree {
        let r = r as i64;
        match self {
            Filtration::Column => (p - r, q + r - 1),
            Filtration::Row => (p + r - 1, q - r),
        }
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Filtration::Column => "column",
            Filtration::Row => "row",
        })
    }
}

impl FromStr for Filtration {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "column" => Ok(Filtration::Column),
            "row" => Ok(Filtration::Row),
            other => Err(format!("unknown filtration {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralPage {
    pub r: usize,
    pub filtration: Filtration,
    /// `dim E_r^{p,q}`, over the support of the complex.
    pub dims: BTreeMap<Bidegree, usize>,
    /// `dim im d_r^{p,q}`, over the support of the complex.
    pub im_dr: BTreeMap<Bidegree, usize>,
}

impl SpectralPage {
    pub fn dim(&self, at: Bidegree) -> usize {
        self.dims.get(&at).copied().unwrap_or(0)
    }

    pub fn im(&self, at: Bidegree) -> usize {
        self.im_dr.get(&at).copied().unwrap_or(0)
    }

    pub fn is_degenerate(&self) -> bool {
        self.im_dr.values().all(|&d| d == 0)
    }
}

/// Per-degree data for the column filtration of one complex.
struct ColumnOracle<'a> {
    complex: &'a BigradedComplex,
    diff: BTreeMap<i64, Matrix>,
    cycles: RefCell<HashMap<(i64, i64, i64), Subspace>>,
}

impl<'a> ColumnOracle<'a> {
    fn new(complex: &'a BigradedComplex) -> Self {
        let mut diff = BTreeMap::new();
        if let Some((lo, hi)) = complex.degree_range() {
            for k in lo - 1..=hi {
                diff.insert(k, complex.total_differential(k));
            }
        }
        Self { complex, diff, cycles: RefCell::new(HashMap::new()) }
    }

    fn d(&self, k: i64) -> std::borrow::Cow<'_, Matrix> {
        match self.diff.get(&k) {
            Some(m) => std::borrow::Cow::Borrowed(m),
            None => std::borrow::Cow::Owned(self.complex.total_differential(k)),
        }
    }

    /// `Z_r^p(k) = F^p A^k ∩ D^{-1}(F^{p+r} A^{k+1})`.
    fn z(&self, r: i64, p: i64, k: i64) -> Subspace {
        let r = r.max(0);
        if let Some(s) = self.cycles.borrow().get(&(r, p, k)) {
            return s.clone();
        }
        let f = self.complex.column_filtration(k, p);
        let s = if r == 0 {
            f
        } else {
            let target = self.complex.column_filtration(k + 1, p + r);
            let pre = self.d(k).preimage(&target).expect("matching dimensions");
            f.intersect(&pre).expect("same ambient")
        };
        self.cycles.borrow_mut().insert((r, p, k), s.clone());
        s
    }

    /// `Z_{r−1}^{p+1}(k) + D Z_{r−1}^{p−r+1}(k−1)`.
    fn denominator(&self, r: i64, p: i64, k: i64) -> Subspace {
        let deeper = self.z(r - 1, p + 1, k);
        let boundaries = self.z(r - 1, p - r + 1, k - 1).map(&self.d(k - 1));
        deeper.sum(&boundaries).expect("same ambient")
    }

    fn page_dim(&self, r: i64, p: i64, k: i64) -> usize {
        self.z(r, p, k)
            .quotient_dim(&self.denominator(r, p, k))
            .expect("B_r ⊆ Z_r")
    }

    fn image_dim(&self, r: i64, p: i64, k: i64) -> usize {
        let den = self.denominator(r, p + r, k + 1);
        let pushed = self.z(r, p, k).map(&self.d(k));
        let total = pushed.sum(&den).expect("same ambient");
        total.dim() - den.dim()
    }

    fn pages(&self, r_max: usize) -> Vec<SpectralPage> {
        let support: Vec<Bidegree> = self.complex.support().collect();
        (1..=r_max)
            .map(|r| {
                let ri = r as i64;
                let mut dims = BTreeMap::new();
                let mut im_dr = BTreeMap::new();
                for &(p, q) in &support {
                    dims.insert((p, q), self.page_dim(ri, p, p + q));
                    im_dr.insert((p, q), self.image_dim(ri, p, p + q));
                }
                SpectralPage { r, filtration: Filtration::Column, dims, im_dr }
            })
            .collect()
    }
}

/// Pages `E_1 … E_{r_max}` with the dimensions of the images of `d_r`.
pub fn spectral_sequence(c: &BigradedComplex, filtration: Filtration, r_max: usize) -> Vec<SpectralPage> {
    match filtration {
        Filtration::Column => ColumnOracle::new(c).pages(r_max),
        Filtration::Row => {
            let t = c.transpose();
            let swap = |m: BTreeMap<Bidegree, usize>| m.into_iter().map(|((p, q), d)| ((q, p), d)).collect();
            ColumnOracle::new(&t)
                .pages(r_max)
                .into_iter()
                .map(|page| SpectralPage {
                    r: page.r,
                    filtration: Filtration::Row,
                    dims: swap(page.dims),
                    im_dr: swap(page.im_dr),
                })
                .collect()
        }
    }
}

/// Check `dim E_{r+1} = dim E_r − im d_r(out) − im d_r(in)` between
/// consecutive pages. Returns the offending `(r, p, q)` triples.
pub fn check_page_recursion(pages: &[SpectralPage]) -> Vec<(usize, Bidegree)> {
    let mut bad = Vec::new();
    for pair in pages.windows(2) {
        let (cur, next) = (&pair[0], &pair[1]);
        for (&at, &d) in &cur.dims {
            let incoming = cur.im(cur.filtration.source(cur.r, at));
            let expected = d as i64 - cur.im(at) as i64 - incoming as i64;
            if expected != next.dim(at) as i64 {
                bad.push((cur.r, at));
            }
        }
    }
    bad
}

/// `Σ_q (−1)^q dim E_r^{p,q}` for each `p` of the column filtration (for each
/// `q`, summing over `p`, for the row filtration).
pub fn euler_characteristics(page: &SpectralPage) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for (&(p, q), &d) in &page.dims {
        let (key, sign_deg) = match page.filtration {
            Filtration::Column => (p, q),
            Filtration::Row => (q, p),
        };
        let sign = if sign_deg.rem_euclid(2) == 0 { 1 } else { -1 };
        *out.entry(key).or_insert(0) += sign * d as i64;
    }
    out
}

/// `Σ_{p,q} (−1)^{p+q} dim E_r^{p,q}`; constant in `r` and equal to the Euler
/// characteristic of the total complex.
pub fn total_euler_characteristic(page: &SpectralPage) -> i64 {
    page.dims
        .iter()
        .map(|(&(p, q), &d)| if (p + q).rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// `Σ_{p+q=k} dim E_r^{p,q}` for each total degree `k`.
pub fn degree_sums(page: &SpectralPage) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (&(p, q), &d) in &page.dims {
        *out.entry(p + q).or_insert(0) += d;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcomplex::tests::unit_square;
    use crate::exactla::Matrix;

    fn horizontal_pair() -> BigradedComplex {
        let mut c = BigradedComplex::with_dims([((0, 0), 1), ((1, 0), 1)]);
        c.set_d1((0, 0), Matrix::from_i64(&[&[1]])).unwrap();
        c
    }

    #[test]
    fn first_page_is_column_cohomology() {
        let c = horizontal_pair();
        let pages = spectral_sequence(&c, Filtration::Column, 2);
        assert_eq!(pages[0].dim((0, 0)), 1);
        assert_eq!(pages[0].dim((1, 0)), 1);
        assert_eq!(pages[0].im((0, 0)), 1);
        assert_eq!(pages[1].dim((0, 0)), 0);
        assert_eq!(pages[1].dim((1, 0)), 0);
        assert!(check_page_recursion(&pages).is_empty());
    }

    #[test]
    fn row_filtration_kills_the_pair_on_the_first_page() {
        let c = horizontal_pair();
        let pages = spectral_sequence(&c, Filtration::Row, 2);
        assert_eq!(pages[0].dim((0, 0)), 0);
        assert_eq!(pages[0].dim((1, 0)), 0);
    }

    #[test]
    fn length_four_zigzag_survives_to_the_second_page() {
        // (0,1) → (1,1) ← (1,0) → (2,0)
        let mut c = BigradedComplex::with_dims([((0, 1), 1), ((1, 1), 1), ((1, 0), 1), ((2, 0), 1)]);
        c.set_d1((0, 1), Matrix::from_i64(&[&[1]])).unwrap();
        c.set_d2((1, 0), Matrix::from_i64(&[&[1]])).unwrap();
        c.set_d1((1, 0), Matrix::from_i64(&[&[1]])).unwrap();
        assert!(c.validate().is_ok());
        let pages = spectral_sequence(&c, Filtration::Column, 3);
        assert_eq!(pages[0].dim((0, 1)), 1);
        assert_eq!(pages[0].dim((2, 0)), 1);
        assert_eq!(pages[0].im((0, 1)), 0);
        assert_eq!(pages[1].dim((0, 1)), 1);
        assert_eq!(pages[1].im((0, 1)), 1);
        assert_eq!(pages[2].dim((0, 1)), 0);
        assert!(check_page_recursion(&pages).is_empty());
    }

    #[test]
    fn square_pages_vanish() {
        let pages = spectral_sequence(&unit_square(), Filtration::Column, 3);
        assert!(pages.iter().all(|p| p.dims.values().all(|&d| d == 0)));
    }
}
