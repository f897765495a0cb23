//! Bounded double complexes: the data model, its validity laws, direct
//! cohomology computations and the filtered-complex spectral sequence.

mod cohomology;
mod json;
mod spectral;
mod total;

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::Matrix;

pub use cohomology::{CohomologyTable, Flavor, TableKey};
pub use json::{ParseOptions, DEFAULT_MAX_DIM};
pub use spectral::{
    check_page_recursion, degree_sums, euler_characteristics, spectral_sequence, total_euler_characteristic, Filtration,
    SpectralPage,
};
pub use total::TotalDegree;

/// Lattice point `(p, q)`.
pub type Bidegree = (i64, i64);

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("{which} at ({p},{q}) has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    Shape {
        which: &'static str,
        p: i64,
        q: i64,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("component ({p},{q}) has dimension {dim}, above the limit {limit}")]
    TooLarge { p: i64, q: i64, dim: usize, limit: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
}

/// Which horizontal/vertical differential a law or entry refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Law {
    /// A stored matrix disagrees with the component dimensions.
    Shape,
    /// `d1 ∘ d1 ≠ 0`.
    D1Squared,
    /// `d2 ∘ d2 ≠ 0`.
    D2Squared,
    /// `d1 ∘ d2 + d2 ∘ d1 ≠ 0`.
    Anticommute,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: Law,
    pub bidegree: Bidegree,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{:?} at ({},{})", v.law, v.bidegree.0, v.bidegree.1))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Finite-dimensional bigraded vector space with `d1: (p,q) → (p+1,q)` and
/// `d2: (p,q) → (p,q+1)`, both given as matrices in fixed bases.
///
/// Absent components have dimension 0 and absent matrices are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BigradedComplex {
    dims: BTreeMap<Bidegree, usize>,
    d1: BTreeMap<Bidegree, Matrix>,
    d2: BTreeMap<Bidegree, Matrix>,
    labels: BTreeMap<Bidegree, Vec<String>>,
}

impl BigradedComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Complex with the given component dimensions and zero differentials.
    pub fn with_dims(dims: impl IntoIterator<Item = (Bidegree, usize)>) -> Self {
        Self {
            dims: dims.into_iter().collect(),
            ..Self::default()
        }
    }

    pub fn set_dim(&mut self, at: Bidegree, dim: usize) {
        self.dims.insert(at, dim);
    }

    pub fn set_labels(&mut self, at: Bidegree, labels: Vec<String>) -> Result<(), ComplexError> {
        if labels.len() != self.dim(at) {
            return Err(ComplexError::Invalid(format!(
                "component ({},{}) has {} labels for dimension {}",
                at.0,
                at.1,
                labels.len(),
                self.dim(at)
            )));
        }
        self.labels.insert(at, labels);
        Ok(())
    }

    pub fn set_d1(&mut self, at: Bidegree, m: Matrix) -> Result<(), ComplexError> {
        self.check_shape("d1", at, (at.0 + 1, at.1), &m)?;
        if m.is_zero() {
            self.d1.remove(&at);
        } else {
            self.d1.insert(at, m);
        }
        Ok(())
    }

    pub fn set_d2(&mut self, at: Bidegree, m: Matrix) -> Result<(), ComplexError> {
        self.check_shape("d2", at, (at.0, at.1 + 1), &m)?;
        if m.is_zero() {
            self.d2.remove(&at);
        } else {
            self.d2.insert(at, m);
        }
        Ok(())
    }

    fn check_shape(&self, which: &'static str, src: Bidegree, dst: Bidegree, m: &Matrix) -> Result<(), ComplexError> {
        let (want_rows, want_cols) = (self.dim(dst), self.dim(src));
        if m.rows() != want_rows || m.cols() != want_cols {
            return Err(ComplexError::Shape {
                which,
                p: src.0,
                q: src.1,
                got_rows: m.rows(),
                got_cols: m.cols(),
                want_rows,
                want_cols,
            });
        }
        Ok(())
    }

    pub fn dim(&self, at: Bidegree) -> usize {
        self.dims.get(&at).copied().unwrap_or(0)
    }

    pub fn labels(&self, at: Bidegree) -> Option<&[String]> {
        self.labels.get(&at).map(Vec::as_slice)
    }

    /// Component dimensions as stored, including explicit zeros.
    pub fn components(&self) -> &BTreeMap<Bidegree, usize> {
        &self.dims
    }

    /// Bidegrees with nonzero dimension, ascending in `(p, q)`.
    pub fn support(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.dims.iter().filter(|(_, &d)| d > 0).map(|(&b, _)| b)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// `(p_min, p_max, q_min, q_max)` of the support, or `None` if empty.
    pub fn bounding_box(&self) -> Option<(i64, i64, i64, i64)> {
        let mut it = self.support();
        let first = it.next()?;
        Some(it.fold((first.0, first.0, first.1, first.1), |(a, b, c, d), (p, q)| {
            (a.min(p), b.max(p), c.min(q), d.max(q))
        }))
    }

    /// `d1: A^{p,q} → A^{p+1,q}`.
    pub fn d1(&self, at: Bidegree) -> Cow<'_, Matrix> {
        match self.d1.get(&at) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(self.dim((at.0 + 1, at.1)), self.dim(at))),
        }
    }

    /// `d2: A^{p,q} → A^{p,q+1}`.
    pub fn d2(&self, at: Bidegree) -> Cow<'_, Matrix> {
        match self.d2.get(&at) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(self.dim((at.0, at.1 + 1)), self.dim(at))),
        }
    }

    /// `d2 ∘ d1: A^{p,q} → A^{p+1,q+1}`.
    pub fn d2d1(&self, at: Bidegree) -> Matrix {
        self.d2((at.0 + 1, at.1)).mul(&self.d1(at))
    }

    pub(crate) fn stored_d1(&self) -> &BTreeMap<Bidegree, Matrix> {
        &self.d1
    }

    pub(crate) fn stored_d2(&self) -> &BTreeMap<Bidegree, Matrix> {
        &self.d2
    }

    pub(crate) fn stored_labels(&self) -> &BTreeMap<Bidegree, Vec<String>> {
        &self.labels
    }

    /// Swap the roles of `p` and `q` (and of `d1` and `d2`). The total
    /// complex is unchanged; the row filtration becomes the column filtration.
    pub fn transpose(&self) -> Self {
        let swap = |(p, q): Bidegree| (q, p);
        Self {
            dims: self.dims.iter().map(|(&b, &d)| (swap(b), d)).collect(),
            d1: self.d2.iter().map(|(&b, m)| (swap(b), m.clone())).collect(),
            d2: self.d1.iter().map(|(&b, m)| (swap(b), m.clone())).collect(),
            labels: self.labels.iter().map(|(&b, l)| (swap(b), l.clone())).collect(),
        }
    }

    /// Check matrix shapes and `d1² = 0`, `d2² = 0`, `d1d2 + d2d1 = 0`.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut shapes_ok = true;
        for (which, map, step) in [("d1", &self.d1, (1, 0)), ("d2", &self.d2, (0, 1))] {
            for (&at, m) in map {
                if self.check_shape(which, at, (at.0 + step.0, at.1 + step.1), m).is_err() {
                    violations.push(Violation { law: Law::Shape, bidegree: at });
                    shapes_ok = false;
                }
            }
        }
        if !shapes_ok {
            return ValidationReport { violations };
        }
        let mut sources: Vec<Bidegree> = self.support().collect();
        sources.sort();
        for at in sources {
            let (p, q) = at;
            if !self.d1((p + 1, q)).mul(&self.d1(at)).is_zero() {
                violations.push(Violation { law: Law::D1Squared, bidegree: at });
            }
            if !self.d2((p, q + 1)).mul(&self.d2(at)).is_zero() {
                violations.push(Violation { law: Law::D2Squared, bidegree: at });
            }
            let anti = self.d1((p, q + 1)).mul(&self.d2(at)).add(&self.d2d1(at));
            if !anti.is_zero() {
                violations.push(Violation { law: Law::Anticommute, bidegree: at });
            }
        }
        ValidationReport { violations }
    }
}
