use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dcomplex::{Bidegree, BigradedComplex};
use crate::exactla::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeKind {
    Square,
    Zigzag,
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeKind::Square => "square",
            ShapeKind::Zigzag => "zigzag",
        })
    }
}

/// Which differential an arrow of a shape belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    D1,
    D2,
}

impl Direction {
    pub fn step(self) -> Bidegree {
        match self {
            Direction::D1 => (1, 0),
            Direction::D2 => (0, 1),
        }
    }
}

/// Support of an indecomposable double complex: a square or a zigzag.
/// Points are kept sorted by `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryShape {
    kind: ShapeKind,
    points: Vec<Bidegree>,
}

/// Position of `(p, q)` along the staircase between total degrees `k` and
/// `k + 1`: the degree-`k + 1` point with first coordinate `p` sits at `2p`,
/// the degree-`k` point at `2p + 1`. Neighbours in this order are exactly
/// the pairs joined by a differential.
fn strip_index(k: i64, (p, q): Bidegree) -> i64 {
    if p + q == k {
        2 * p + 1
    } else {
        2 * p
    }
}

impl ElementaryShape {
    /// Square with lower-left corner `(p, q)`.
    pub fn square(p: i64, q: i64) -> Self {
        Self {
            kind: ShapeKind::Square,
            points: vec![(p, q), (p, q + 1), (p + 1, q), (p + 1, q + 1)],
        }
    }

    pub fn dot(p: i64, q: i64) -> Self {
        Self { kind: ShapeKind::Zigzag, points: vec![(p, q)] }
    }

    /// Zigzag on the given points, in any order.
    pub fn zigzag(points: impl IntoIterator<Item = Bidegree>) -> Result<Self, String> {
        let mut points: Vec<Bidegree> = points.into_iter().collect();
        points.sort();
        let n = points.len();
        points.dedup();
        if points.len() != n {
            return Err("zigzag points repeat".into());
        }
        if points.is_empty() {
            return Err("zigzag needs at least one point".into());
        }
        if n > 1 {
            let degrees: BTreeSet<i64> = points.iter().map(|&(p, q)| p + q).collect();
            let k = *degrees.iter().next().expect("nonempty");
            if degrees.len() != 2 || !degrees.contains(&(k + 1)) {
                return Err("zigzag points must occupy two adjacent total degrees".into());
            }
            let mut idx: Vec<i64> = points.iter().map(|&s| strip_index(k, s)).collect();
            idx.sort();
            if idx.windows(2).any(|w| w[1] != w[0] + 1) {
                return Err("zigzag points must form a connected staircase".into());
            }
        }
        Ok(Self { kind: ShapeKind::Zigzag, points })
    }

    /// Zigzag from a contiguous index range `lo..=hi` of the staircase
    /// between degrees `k` and `k + 1`.
    pub fn strip(k: i64, lo: i64, hi: i64) -> Self {
        let points = (lo..=hi).map(|i| {
            let p = i.div_euclid(2);
            if i.rem_euclid(2) == 1 {
                (p, k - p)
            } else {
                (p, k + 1 - p)
            }
        });
        Self::zigzag(points).expect("contiguous strip")
    }

    pub fn kind(&self) -> ShapeKind {
        self.kind
    }

    pub fn points(&self) -> &[Bidegree] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.kind == ShapeKind::Square
    }

    pub fn is_dot(&self) -> bool {
        self.kind == ShapeKind::Zigzag && self.points.len() == 1
    }

    pub fn contains(&self, at: Bidegree) -> bool {
        self.points.binary_search(&at).is_ok()
    }

    /// All `(from, to, direction)` arrows between points of the shape.
    pub fn arrows(&self) -> Vec<(Bidegree, Bidegree, Direction)> {
        let mut out = Vec::new();
        for &s in &self.points {
            for dir in [Direction::D1, Direction::D2] {
                let (dp, dq) = dir.step();
                let t = (s.0 + dp, s.1 + dq);
                if self.contains(t) {
                    out.push((s, t, dir));
                }
            }
        }
        out
    }

    /// `"zigzag:1,0;1,1;2,0"`.
    pub fn canonical(&self) -> String {
        let pts: Vec<String> = self.points.iter().map(|(p, q)| format!("{p},{q}")).collect();
        format!("{}:{}", self.kind, pts.join(";"))
    }
}

impl fmt::Display for ElementaryShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl FromStr for ElementaryShape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| format!("shape {s:?} lacks a kind"))?;
        let mut points = Vec::new();
        for item in rest.split(';') {
            let (p, q) = item.split_once(',').ok_or_else(|| format!("bad point {item:?}"))?;
            let p: i64 = p.trim().parse().map_err(|_| format!("bad point {item:?}"))?;
            let q: i64 = q.trim().parse().map_err(|_| format!("bad point {item:?}"))?;
            points.push((p, q));
        }
        match kind {
            "square" => {
                let &(p, q) = points.iter().min().ok_or("empty square")?;
                let sq = ElementaryShape::square(p, q);
                let mut sorted = points.clone();
                sorted.sort();
                if sorted != sq.points {
                    return Err(format!("{s:?} is not a unit square"));
                }
                Ok(sq)
            }
            "zigzag" => ElementaryShape::zigzag(points),
            other => Err(format!("unknown shape kind {other:?}")),
        }
    }
}

impl Serialize for ElementaryShape {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.canonical())
    }
}

impl<'de> Deserialize<'de> for ElementaryShape {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Sign of the horizontal map leaving `(p, q)` in an elementary complex.
pub(crate) fn d1_sign(q: i64) -> i64 {
    if q.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `C(S)`: one-dimensional at each point, `d1 = (−1)^q` and `d2 = 1` along
/// the arrows of the shape.
pub fn elementary_complex(shape: &ElementaryShape) -> BigradedComplex {
    let mut c = BigradedComplex::with_dims(shape.points().iter().map(|&s| (s, 1)));
    for (from, _, dir) in shape.arrows() {
        match dir {
            Direction::D1 => c.set_d1(from, Matrix::from_i64(&[&[d1_sign(from.1)]])),
            Direction::D2 => c.set_d2(from, Matrix::from_i64(&[&[1]])),
        }
        .expect("1x1 between unit components");
    }
    c
}
