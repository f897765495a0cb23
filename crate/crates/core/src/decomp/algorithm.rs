//! Splitting off elementary summands one at a time.
//!
//! The working remainder `R` is a subcomplex with a basis matrix per
//! bidegree and the differentials in those bases. For a shape `S`, a chain
//! map `f: C(S) → R` and a chain map `g: R → C(S)` with `g ∘ f ≠ 0` make
//! `f ∘ g` (suitably scaled) an idempotent on `R`, so `R = im f ⊕ ker g`.
//! Since `End C(S)` is the ground field, such a pair exists exactly when
//! `C(S)` is a summand of `R`, and the rank of the pairing
//! `Hom(R, C(S)) × Hom(C(S), R) → End C(S)` is its multiplicity.

use std::collections::{BTreeMap, BTreeSet};

use crate::dcomplex::{Bidegree, BigradedComplex};
use crate::exactla::{dot, Matrix, Vector};
use crate::scalar::Scalar;

use super::shape::{d1_sign, ElementaryShape};
use super::{Decomposition, Summand};

struct Remainder {
    /// Columns span `R^{p,q}` inside `A^{p,q}`.
    basis: BTreeMap<Bidegree, Matrix>,
    d1: BTreeMap<Bidegree, Matrix>,
    d2: BTreeMap<Bidegree, Matrix>,
}

const STEPS: [Bidegree; 2] = [(1, 0), (0, 1)];

fn add(a: Bidegree, b: Bidegree) -> Bidegree {
    (a.0 + b.0, a.1 + b.1)
}

fn sub(a: Bidegree, b: Bidegree) -> Bidegree {
    (a.0 - b.0, a.1 - b.1)
}

/// Coefficient of the elementary differential `e_s ↦ c · e_{s+step}`.
fn elementary_coeff(s: Bidegree, step: Bidegree) -> i64 {
    if step == (1, 0) {
        d1_sign(s.1)
    } else {
        1
    }
}

impl Remainder {
    fn new(c: &BigradedComplex) -> Self {
        let mut basis = BTreeMap::new();
        let mut d1 = BTreeMap::new();
        let mut d2 = BTreeMap::new();
        for s in c.support() {
            basis.insert(s, Matrix::identity(c.dim(s)));
            d1.insert(s, c.d1(s).into_owned());
            d2.insert(s, c.d2(s).into_owned());
        }
        Self { basis, d1, d2 }
    }

    fn rank(&self, s: Bidegree) -> usize {
        self.basis.get(&s).map_or(0, Matrix::cols)
    }

    fn total(&self) -> usize {
        self.basis.values().map(Matrix::cols).sum()
    }

    fn diff(&self, s: Bidegree, step: Bidegree) -> Matrix {
        let map = if step == (1, 0) { &self.d1 } else { &self.d2 };
        match map.get(&s) {
            Some(m) if m.rows() == self.rank(add(s, step)) && m.cols() == self.rank(s) => m.clone(),
            _ => Matrix::zeros(self.rank(add(s, step)), self.rank(s)),
        }
    }

    fn support(&self) -> Vec<Bidegree> {
        self.basis.iter().filter(|(_, m)| m.cols() > 0).map(|(&s, _)| s).collect()
    }

    /// Chain maps `C(S) → R` as per-point coordinate vectors.
    fn maps_into(&self, shape: &ElementaryShape) -> Vec<BTreeMap<Bidegree, Vector>> {
        let pts = shape.points();
        let mut offset = BTreeMap::new();
        let mut n = 0;
        for &s in pts {
            offset.insert(s, n);
            n += self.rank(s);
        }
        let mut rows: Vec<Vector> = Vec::new();
        for &s in pts {
            for step in STEPS {
                let t = add(s, step);
                let rt = self.rank(t);
                if rt == 0 {
                    continue;
                }
                let d = self.diff(s, step);
                let coeff = elementary_coeff(s, step);
                for i in 0..rt {
                    let mut row = vec![Scalar::zero(); n];
                    for j in 0..self.rank(s) {
                        row[offset[&s] + j] = d.get(i, j).clone();
                    }
                    if shape.contains(t) {
                        row[offset[&t] + i] -= &Scalar::from_int(coeff);
                    }
                    rows.push(row);
                }
            }
        }
        let kernel = solve_homogeneous(rows, n);
        kernel
            .into_iter()
            .map(|v| pts.iter().map(|&s| (s, v[offset[&s]..offset[&s] + self.rank(s)].to_vec())).collect())
            .collect()
    }

    /// Chain maps `R → C(S)` as per-point functionals (row vectors).
    fn maps_from(&self, shape: &ElementaryShape) -> Vec<BTreeMap<Bidegree, Vector>> {
        let pts = shape.points();
        let mut offset = BTreeMap::new();
        let mut n = 0;
        for &t in pts {
            offset.insert(t, n);
            n += self.rank(t);
        }
        let mut rows: Vec<Vector> = Vec::new();
        for &t in pts {
            for step in STEPS {
                let u = sub(t, step);
                let ru = self.rank(u);
                if ru == 0 {
                    continue;
                }
                // g_t ∘ D_u − [u ∈ S] c_u g_u = 0, one equation per column of D_u
                let d = self.diff(u, step);
                let coeff = elementary_coeff(u, step);
                for j in 0..ru {
                    let mut row = vec![Scalar::zero(); n];
                    for i in 0..self.rank(t) {
                        row[offset[&t] + i] = d.get(i, j).clone();
                    }
                    if shape.contains(u) {
                        row[offset[&u] + j] -= &Scalar::from_int(coeff);
                    }
                    rows.push(row);
                }
            }
        }
        let kernel = solve_homogeneous(rows, n);
        kernel
            .into_iter()
            .map(|v| pts.iter().map(|&s| (s, v[offset[&s]..offset[&s] + self.rank(s)].to_vec())).collect())
            .collect()
    }

    /// Split off `im f` along `ker g`, where `g_s(f_s) = 1`. Returns the
    /// summand's vectors in ambient coordinates.
    fn peel(&mut self, shape: &ElementaryShape, f: &BTreeMap<Bidegree, Vector>, g: &BTreeMap<Bidegree, Vector>) -> BTreeMap<Bidegree, Vector> {
        let mut vectors = BTreeMap::new();
        // Kernel of g_s: e_i − (g_i / g_j) e_j for i ≠ j, j the pivot.
        let mut kernels: BTreeMap<Bidegree, (usize, Matrix)> = BTreeMap::new();
        for &s in shape.points() {
            let b = &self.basis[&s];
            vectors.insert(s, normalize(b.apply(&f[&s])));
            let gs = &g[&s];
            let j = gs.iter().position(|x| !x.is_zero()).expect("g nonzero on the shape");
            let r = gs.len();
            let inv = gs[j].inv().expect("nonzero pivot");
            let mut k = Matrix::zeros(r, r - 1);
            for (col, (i, gi)) in gs.iter().enumerate().filter(|&(i, _)| i != j).enumerate() {
                k.set(i, col, Scalar::one());
                k.set(j, col, -(gi * &inv));
            }
            kernels.insert(s, (j, k));
        }
        let touched: BTreeSet<Bidegree> = shape
            .points()
            .iter()
            .flat_map(|&s| [s, sub(s, (1, 0)), sub(s, (0, 1))])
            .collect();
        for step in STEPS {
            for &u in &touched {
                if self.rank(u) == 0 && !kernels.contains_key(&u) {
                    continue;
                }
                let t = add(u, step);
                let mut d = self.diff(u, step);
                if let Some((_, k)) = kernels.get(&u) {
                    d = d.mul(k);
                }
                if let Some((j, _)) = kernels.get(&t) {
                    d = drop_row(&d, *j);
                }
                let map = if step == (1, 0) { &mut self.d1 } else { &mut self.d2 };
                map.insert(u, d);
            }
        }
        for (s, (_, k)) in kernels {
            let b = self.basis[&s].mul(&k);
            self.basis.insert(s, b);
        }
        vectors
    }
}

/// Basis of the solutions of `rows · x = 0` in `n` unknowns.
fn solve_homogeneous(rows: Vec<Vector>, n: usize) -> Vec<Vector> {
    let system = if rows.is_empty() { Matrix::zeros(0, n) } else { Matrix::from_rows(rows) };
    system.kernel().basis().to_vec()
}

fn drop_row(m: &Matrix, j: usize) -> Matrix {
    let rows: Vec<Vector> = (0..m.rows()).filter(|&i| i != j).map(|i| m.row(i).to_vec()).collect();
    if rows.is_empty() {
        Matrix::zeros(0, m.cols())
    } else {
        Matrix::from_rows(rows)
    }
}

/// Scale so the first nonzero coordinate is 1.
pub(crate) fn normalize(v: Vector) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.inv().expect("nonzero");
            v.iter().map(|x| x * &inv).collect()
        }
        None => v,
    }
}

/// Candidate shapes in processing order: squares, dots, then longer
/// zigzags by length; lexicographic within each group.
fn candidates(support: &[Bidegree]) -> (Vec<ElementaryShape>, Vec<ElementaryShape>, BTreeMap<usize, Vec<ElementaryShape>>) {
    let set: BTreeSet<Bidegree> = support.iter().copied().collect();
    let mut squares = Vec::new();
    for &(p, q) in support {
        let sq = ElementaryShape::square(p, q);
        if sq.points().iter().all(|s| set.contains(s)) {
            squares.push(sq);
        }
    }
    let dots: Vec<ElementaryShape> = support.iter().map(|&(p, q)| ElementaryShape::dot(p, q)).collect();
    let mut zigzags: BTreeMap<usize, BTreeSet<ElementaryShape>> = BTreeMap::new();
    let degrees: BTreeSet<i64> = support.iter().map(|&(p, q)| p + q).collect();
    for &k in &degrees {
        // Indices of supported points on the staircase between k and k + 1.
        let mut idx: Vec<i64> = support
            .iter()
            .filter(|&&(p, q)| p + q == k || p + q == k + 1)
            .map(|&(p, q)| if p + q == k { 2 * p + 1 } else { 2 * p })
            .collect();
        idx.sort();
        for (a, &lo) in idx.iter().enumerate() {
            let mut hi = lo;
            for &next in &idx[a + 1..] {
                if next != hi + 1 {
                    break;
                }
                hi = next;
                let z = ElementaryShape::strip(k, lo, hi);
                zigzags.entry(z.len()).or_default().insert(z);
            }
        }
    }
    (
        squares,
        dots,
        zigzags.into_iter().map(|(len, set)| (len, set.into_iter().collect())).collect(),
    )
}

/// Find an `(f, g)` pair with nonzero pairing, scaled so that `g(f) = 1`.
fn find_pair(rem: &Remainder, shape: &ElementaryShape) -> Option<(BTreeMap<Bidegree, Vector>, BTreeMap<Bidegree, Vector>)> {
    if shape.points().iter().any(|&s| rem.rank(s) == 0) {
        return None;
    }
    let into = rem.maps_into(shape);
    if into.is_empty() {
        return None;
    }
    let from = rem.maps_from(shape);
    let s0 = shape.points()[0];
    for g in &from {
        for f in &into {
            let pairing = dot(&g[&s0], &f[&s0]);
            if let Some(inv) = pairing.inv() {
                let g = g.iter().map(|(&s, v)| (s, v.iter().map(|x| x * &inv).collect())).collect();
                return Some((f.clone(), g));
            }
        }
    }
    None
}

/// Multiplicity of `C(S)` as a summand of `c`.
pub fn multiplicity(c: &BigradedComplex, shape: &ElementaryShape) -> usize {
    let rem = Remainder::new(c);
    if shape.points().iter().any(|&s| rem.rank(s) == 0) {
        return 0;
    }
    let into = rem.maps_into(shape);
    let from = rem.maps_from(shape);
    if into.is_empty() || from.is_empty() {
        return 0;
    }
    let s0 = shape.points()[0];
    let rows: Vec<Vector> = from
        .iter()
        .map(|g| into.iter().map(|f| dot(&g[&s0], &f[&s0])).collect())
        .collect();
    Matrix::from_rows(rows).rank()
}

/// Decompose a valid complex into squares and zigzags.
pub fn decompose(c: &BigradedComplex) -> Decomposition {
    let mut rem = Remainder::new(c);
    let mut summands = Vec::new();
    let (squares, dots, zigzags) = candidates(&rem.support());
    let ordered = squares.into_iter().chain(dots).chain(zigzags.into_values().flatten());
    for shape in ordered {
        if rem.total() == 0 {
            break;
        }
        while let Some((f, g)) = find_pair(&rem, &shape) {
            let vectors = rem.peel(&shape, &f, &g);
            summands.push(Summand { shape: shape.clone(), vectors });
        }
    }
    debug_assert_eq!(rem.total(), 0, "remainder not exhausted");
    Decomposition { summands }
}
