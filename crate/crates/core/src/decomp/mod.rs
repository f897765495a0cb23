//! Decomposition of bounded double complexes into squares and zigzags,
//! a verifier for decompositions, shape fingerprints, and the counting rules
//! that read every cohomology and every spectral differential off the
//! multiset of shapes.

mod algorithm;
mod shape;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dcomplex::{spectral_sequence, Bidegree, BigradedComplex, Filtration, Flavor};
use crate::exactla::{is_zero_vector, Matrix, Vector};
use crate::scalar::Scalar;

pub use algorithm::{decompose, multiplicity};
pub use shape::{elementary_complex, Direction, ElementaryShape, ShapeKind};

/// One elementary summand: its shape and a spanning vector at each point,
/// in the coordinates of the ambient component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub shape: ElementaryShape,
    pub vectors: BTreeMap<Bidegree, Vector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

/// Multiplicity of each shape, keyed by canonical shape string.
pub type Fingerprint = BTreeMap<String, usize>;

impl Decomposition {
    pub fn fingerprint(&self) -> Fingerprint {
        fingerprint(self)
    }

    /// Summands whose shape covers `at`.
    pub fn at(&self, at: Bidegree) -> impl Iterator<Item = &Summand> {
        self.summands.iter().filter(move |s| s.shape.contains(at))
    }
}

pub fn fingerprint(d: &Decomposition) -> Fingerprint {
    let mut out = BTreeMap::new();
    for s in &d.summands {
        *out.entry(s.shape.canonical()).or_insert(0) += 1;
    }
    out
}

#[derive(Serialize, Deserialize)]
struct SummandJson {
    kind: ShapeKind,
    points: Vec<Bidegree>,
    vectors: BTreeMap<String, Vec<Scalar>>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    summands: Vec<SummandJson>,
}

impl Decomposition {
    pub fn to_value(&self) -> serde_json::Value {
        let doc = DecompositionJson {
            summands: self
                .summands
                .iter()
                .map(|s| SummandJson {
                    kind: s.shape.kind(),
                    points: s.shape.points().to_vec(),
                    vectors: s.vectors.iter().map(|(&(p, q), v)| (format!("{p},{q}"), v.clone())).collect(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_value()).expect("serializable");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let doc: DecompositionJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let mut summands = Vec::new();
        for s in doc.summands {
            let shape = match s.kind {
                ShapeKind::Zigzag => ElementaryShape::zigzag(s.points)?,
                ShapeKind::Square => {
                    let &(p, q) = s.points.iter().min().ok_or("empty square")?;
                    let sq = ElementaryShape::square(p, q);
                    let mut pts = s.points.clone();
                    pts.sort();
                    if pts != sq.points() {
                        return Err("square points do not form a unit square".into());
                    }
                    sq
                }
            };
            let mut vectors = BTreeMap::new();
            for (key, v) in s.vectors {
                let (p, q) = key.split_once(',').ok_or_else(|| format!("bad point key {key:?}"))?;
                let p: i64 = p.parse().map_err(|_| format!("bad point key {key:?}"))?;
                let q: i64 = q.parse().map_err(|_| format!("bad point key {key:?}"))?;
                vectors.insert((p, q), v);
            }
            summands.push(Summand { shape, vectors });
        }
        Ok(Decomposition { summands })
    }
}

/// A failed condition of [`verify_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecompositionIssue {
    /// The summand vectors at a bidegree are not a basis of the component.
    Basis { at: Bidegree, vectors: usize, dim: usize },
    /// A summand lacks a vector at one of its points, has one off its shape,
    /// or has one of the wrong length.
    Vectors { summand: usize, at: Bidegree },
    ZeroVector { summand: usize, at: Bidegree },
    /// A differential does not send the vector at `at` to a nonzero multiple
    /// of the neighbour inside the shape, or to zero outside it.
    Closure { summand: usize, at: Bidegree, direction: Direction },
    /// Summand dimensions do not add up to the total dimension.
    Count { summands: usize, total: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub issues: Vec<DecompositionIssue>,
}

impl DecompositionReport {
    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        let parts: Vec<String> = self.issues.iter().map(|i| format!("{i:?}")).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Is `w` a nonzero multiple of `v` (both nonzero)?
fn proportional(w: &[Scalar], v: &[Scalar]) -> bool {
    let Some(j) = v.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let Some(ratio) = v[j].inv().map(|inv| &w[j] * &inv) else {
        return false;
    };
    !ratio.is_zero() && w.iter().zip(v).all(|(a, b)| *a == b * &ratio)
}

/// Check the direct-sum property, closure of every summand under both
/// differentials, and the total dimension count.
pub fn verify_decomposition(c: &BigradedComplex, d: &Decomposition) -> DecompositionReport {
    let mut issues = Vec::new();
    let mut per_point: BTreeMap<Bidegree, Vec<Vector>> = BTreeMap::new();
    for (i, s) in d.summands.iter().enumerate() {
        for (&at, v) in &s.vectors {
            if !s.shape.contains(at) || v.len() != c.dim(at) {
                issues.push(DecompositionIssue::Vectors { summand: i, at });
            }
        }
        for &at in s.shape.points() {
            let Some(v) = s.vectors.get(&at) else {
                issues.push(DecompositionIssue::Vectors { summand: i, at });
                continue;
            };
            if v.len() != c.dim(at) {
                continue;
            }
            if is_zero_vector(v) {
                issues.push(DecompositionIssue::ZeroVector { summand: i, at });
            }
            per_point.entry(at).or_default().push(v.clone());
            for dir in [Direction::D1, Direction::D2] {
                let (dp, dq) = dir.step();
                let t = (at.0 + dp, at.1 + dq);
                let m = match dir {
                    Direction::D1 => c.d1(at),
                    Direction::D2 => c.d2(at),
                };
                let image = m.apply(v);
                let ok = if s.shape.contains(t) {
                    s.vectors.get(&t).is_some_and(|w| w.len() == image.len() && proportional(&image, w))
                } else {
                    is_zero_vector(&image)
                };
                if !ok {
                    issues.push(DecompositionIssue::Closure { summand: i, at, direction: dir });
                }
            }
        }
    }
    for (&at, &dim) in c.components() {
        let vectors = per_point.remove(&at).unwrap_or_default();
        let n = vectors.len();
        let rank = if n == 0 { 0 } else { Matrix::from_rows(vectors).rank() };
        if n != dim || rank != dim {
            issues.push(DecompositionIssue::Basis { at, vectors: n, dim });
        }
    }
    for (at, vectors) in per_point {
        issues.push(DecompositionIssue::Basis { at, vectors: vectors.len(), dim: 0 });
    }
    let summed: usize = d.summands.iter().map(|s| s.shape.len()).sum();
    if summed != c.total_dim() {
        issues.push(DecompositionIssue::Count { summands: summed, total: c.total_dim() });
    }
    DecompositionReport { issues }
}

/// Does a zigzag through `(p, q)` contribute to the given cohomology there?
pub fn shape_contributes(shape: &ElementaryShape, flavor: Flavor, (p, q): Bidegree) -> bool {
    if shape.is_square() || !shape.contains((p, q)) {
        return false;
    }
    let absent = |s: Bidegree| !shape.contains(s);
    match flavor {
        Flavor::Row => absent((p - 1, q)) && absent((p + 1, q)),
        Flavor::Column => absent((p, q - 1)) && absent((p, q + 1)),
        Flavor::BottChern => absent((p + 1, q)) && absent((p, q + 1)),
        Flavor::Aeppli => absent((p - 1, q)) && absent((p, q - 1)),
        // Only odd-length zigzags survive in the total complex; they are
        // counted once, at any one of their points.
        Flavor::DeRham => shape.len() % 2 == 1 && shape.points()[0] == (p, q),
    }
}

/// Cohomology dimension at `(p, q)` read off the shapes. For de Rham,
/// `(p, q)` is read as total degree `p + q`.
pub fn counts_to_cohomology(d: &Decomposition, flavor: Flavor, p: i64, q: i64) -> usize {
    if flavor == Flavor::DeRham {
        return d
            .summands
            .iter()
            .filter(|s| {
                let sh = &s.shape;
                !sh.is_square() && sh.len() % 2 == 1 && {
                    // An odd zigzag has one more point in one degree; that
                    // degree carries its class.
                    let k0 = sh.points().iter().map(|&(a, b)| a + b).min().expect("nonempty");
                    let low = sh.points().iter().filter(|&&(a, b)| a + b == k0).count();
                    let deg = if 2 * low > sh.len() { k0 } else { k0 + 1 };
                    deg == p + q
                }
            })
            .count();
    }
    d.summands.iter().filter(|s| shape_contributes(&s.shape, flavor, (p, q))).count()
}

/// The length-`2r` zigzag carrying a nonzero `d_r` out of `(p, q)`.
pub fn dr_shape(filtration: Filtration, r: usize, (p, q): Bidegree) -> ElementaryShape {
    let r = r as i64;
    let points = (0..r).flat_map(|i| match filtration {
        Filtration::Column => [(p + i, q - i), (p + i + 1, q - i)],
        Filtration::Row => [(p - i, q + i), (p - i, q + i + 1)],
    });
    ElementaryShape::zigzag(points).expect("staircase")
}

/// `dim im d_r^{p,q}` read off the shapes.
pub fn counts_to_im_dr(d: &Decomposition, filtration: Filtration, r: usize, p: i64, q: i64) -> usize {
    if r == 0 {
        return 0;
    }
    let target = dr_shape(filtration, r, (p, q));
    d.summands.iter().filter(|s| s.shape == target).count()
}

/// One disagreement between a direct computation and the shape count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub quantity: String,
    pub at: Bidegree,
    pub direct: usize,
    pub counted: usize,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at ({},{}): direct {}, from shapes {}",
            self.quantity, self.at.0, self.at.1, self.direct, self.counted
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub decomposition: DecompositionReport,
    pub mismatches: Vec<Mismatch>,
}

impl ConsistencyReport {
    pub fn is_ok(&self) -> bool {
        self.decomposition.is_ok() && self.mismatches.is_empty()
    }
}

/// Pages needed to see every nonzero `d_r`: a zigzag of length `2r` spans
/// `r + 1` columns and `r + 1` rows.
pub fn default_r_max(c: &BigradedComplex) -> usize {
    match c.bounding_box() {
        Some((p0, p1, q0, q1)) => ((p1 - p0).max(q1 - q0) + 1).max(1) as usize,
        None => 1,
    }
}

/// Compare the four bigraded cohomologies, de Rham cohomology and both
/// spectral sequences computed directly against the counts from a
/// decomposition (computed here and verified first).
pub fn consistency_report(c: &BigradedComplex) -> ConsistencyReport {
    let d = decompose(c);
    consistency_report_with(c, &d, default_r_max(c))
}

pub fn consistency_report_with(c: &BigradedComplex, d: &Decomposition, r_max: usize) -> ConsistencyReport {
    let decomposition = verify_decomposition(c, d);
    let mut mismatches = Vec::new();
    let mut check = |quantity: String, at: Bidegree, direct: usize, counted: usize| {
        if direct != counted {
            mismatches.push(Mismatch { quantity, at, direct, counted });
        }
    };
    let support: Vec<Bidegree> = c.support().collect();
    for &(p, q) in &support {
        for flavor in Flavor::BIGRADED {
            check(flavor.to_string(), (p, q), c.cohomology(flavor, p, q), counts_to_cohomology(d, flavor, p, q));
        }
    }
    if let Some((lo, hi)) = c.degree_range() {
        for k in lo..=hi {
            check("de_rham".into(), (k, 0), c.de_rham(k), counts_to_cohomology(d, Flavor::DeRham, k, 0));
        }
    }
    for filtration in [Filtration::Column, Filtration::Row] {
        for page in spectral_sequence(c, filtration, r_max) {
            for &(p, q) in &support {
                check(
                    format!("im d_{} ({filtration})", page.r),
                    (p, q),
                    page.im((p, q)),
                    counts_to_im_dr(d, filtration, page.r, p, q),
                );
            }
        }
    }
    ConsistencyReport { decomposition, mismatches }
}

/// Number of squares with lower-left corner `(p, q)`.
pub fn squares_at(d: &Decomposition, p: i64, q: i64) -> usize {
    let sq = ElementaryShape::square(p, q);
    d.summands.iter().filter(|s| s.shape == sq).count()
}
