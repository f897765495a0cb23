//! Random bounded double complexes for the integration tests.
//!
//! A complex is a direct sum of randomly placed elementary shapes inside
//! `[0,3]²` with every component of dimension at most 4, disguised by an
//! independent random invertible base change at each bidegree. The summed
//! shapes are returned as the expected fingerprint.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use zigzag::dcomplex::{Bidegree, BigradedComplex};
use zigzag::decomp::{ElementaryShape, Fingerprint};
use zigzag::exactla::Matrix;
use zigzag::scalar::Scalar;

pub const MAX_DIM: usize = 4;
pub const BOX: i64 = 3;

fn in_box(&(p, q): &Bidegree) -> bool {
    (0..=BOX).contains(&p) && (0..=BOX).contains(&q)
}

pub fn random_shape(rng: &mut impl Rng) -> ElementaryShape {
    loop {
        let shape = if rng.gen_bool(0.2) {
            ElementaryShape::square(rng.gen_range(0..BOX), rng.gen_range(0..BOX))
        } else {
            let k = rng.gen_range(-1..=2 * BOX);
            let lo = rng.gen_range(0..=2 * BOX + 1);
            let len = rng.gen_range(1..=6);
            ElementaryShape::strip(k, lo, lo + len - 1)
        };
        if shape.points().iter().all(in_box) {
            return shape;
        }
    }
}

pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    let re = Scalar::from_int(rng.gen_range(-2..=2));
    if rng.gen_bool(0.2) {
        &re + &(&Scalar::i() * &Scalar::from_int(rng.gen_range(-2..=2)))
    } else {
        re
    }
}

/// `(inverse, g)` for a random invertible `n × n` matrix `g`.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> (Matrix, Matrix) {
    loop {
        let mut g = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                g.set(r, c, random_scalar(rng));
            }
        }
        if let Some(inv) = inverse(&g) {
            return (inv, g);
        }
    }
}

pub fn inverse(g: &Matrix) -> Option<Matrix> {
    let n = g.rows();
    if n == 0 {
        return Some(Matrix::zeros(0, 0));
    }
    let (r, pivots) = g.hstack(&Matrix::identity(n)).rref();
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.get(i, n + j).clone());
        }
    }
    Some(inv)
}

/// Direct sum of the shapes in their standard bases.
pub fn direct_sum(shapes: &[ElementaryShape]) -> BigradedComplex {
    let mut dims: BTreeMap<Bidegree, usize> = BTreeMap::new();
    let mut slots: Vec<BTreeMap<Bidegree, usize>> = Vec::new();
    for s in shapes {
        let mut slot = BTreeMap::new();
        for &at in s.points() {
            let n = dims.entry(at).or_insert(0);
            slot.insert(at, *n);
            *n += 1;
        }
        slots.push(slot);
    }
    let mut d1: BTreeMap<Bidegree, Matrix> = BTreeMap::new();
    let mut d2: BTreeMap<Bidegree, Matrix> = BTreeMap::new();
    for (s, slot) in shapes.iter().zip(&slots) {
        for &(p, q) in s.points() {
            let t = (p + 1, q);
            if s.contains(t) {
                let m = d1.entry((p, q)).or_insert_with(|| Matrix::zeros(dims[&t], dims[&(p, q)]));
                let sign = if q % 2 == 0 { 1 } else { -1 };
                m.set(slot[&t], slot[&(p, q)], Scalar::from_int(sign));
            }
            let t = (p, q + 1);
            if s.contains(t) {
                let m = d2.entry((p, q)).or_insert_with(|| Matrix::zeros(dims[&t], dims[&(p, q)]));
                m.set(slot[&t], slot[&(p, q)], Scalar::one());
            }
        }
    }
    let mut c = BigradedComplex::with_dims(dims);
    for (at, m) in d1 {
        c.set_d1(at, m).unwrap();
    }
    for (at, m) in d2 {
        c.set_d2(at, m).unwrap();
    }
    c
}

/// `g_t · d · g_s⁻¹` on every differential, with `g` random per bidegree.
pub fn base_change(c: &BigradedComplex, rng: &mut impl Rng) -> BigradedComplex {
    let mut g: BTreeMap<Bidegree, (Matrix, Matrix)> = BTreeMap::new();
    for (&at, &n) in c.components() {
        g.insert(at, random_invertible(rng, n));
    }
    let mut out = BigradedComplex::with_dims(c.components().iter().map(|(&at, &n)| (at, n)));
    for &(p, q) in c.components().keys() {
        let (inv_s, _) = &g[&(p, q)];
        if let Some((_, g_t)) = g.get(&(p + 1, q)) {
            let m = g_t.mul(&c.d1((p, q))).mul(inv_s);
            if !m.is_zero() {
                out.set_d1((p, q), m).unwrap();
            }
        }
        if let Some((_, g_t)) = g.get(&(p, q + 1)) {
            let m = g_t.mul(&c.d2((p, q))).mul(inv_s);
            if !m.is_zero() {
                out.set_d2((p, q), m).unwrap();
            }
        }
    }
    out
}

/// A random valid complex and the fingerprint it was built from.
pub fn random_complex(rng: &mut impl Rng) -> (BigradedComplex, Fingerprint) {
    let target = rng.gen_range(1..=14);
    let mut dims: BTreeMap<Bidegree, usize> = BTreeMap::new();
    let mut shapes = Vec::new();
    for _ in 0..target * 3 {
        if shapes.len() == target {
            break;
        }
        let s = random_shape(rng);
        if s.points().iter().all(|at| dims.get(at).copied().unwrap_or(0) < MAX_DIM) {
            for &at in s.points() {
                *dims.entry(at).or_insert(0) += 1;
            }
            shapes.push(s);
        }
    }
    let mut fp = Fingerprint::new();
    for s in &shapes {
        *fp.entry(s.canonical()).or_insert(0) += 1;
    }
    (base_change(&direct_sum(&shapes), rng), fp)
}
