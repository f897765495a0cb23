use crate::exactla::{Matrix, Subspace};
use crate::scalar::Scalar;

use super::{Bidegree, BigradedComplex};

/// Layout of the total-degree-`k` space `⊕_{p+q=k} A^{p,q}`: blocks ordered
/// by ascending `p`, concatenated.
#[derive(Debug, Clone)]
pub struct TotalDegree {
    pub k: i64,
    pub blocks: Vec<(Bidegree, usize, usize)>,
    pub dim: usize,
}

impl TotalDegree {
    pub fn offset_of(&self, at: Bidegree) -> Option<(usize, usize)> {
        self.blocks
            .iter()
            .find(|(b, _, _)| *b == at)
            .map(|&(_, off, d)| (off, d))
    }
}

impl BigradedComplex {
    pub fn total_degree(&self, k: i64) -> TotalDegree {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for at in self.support().filter(|&(p, q)| p + q == k) {
            let d = self.dim(at);
            blocks.push((at, offset, d));
            offset += d;
        }
        TotalDegree { k, blocks, dim: offset }
    }

    /// Matrix of `d = d1 + d2` from total degree `k` to `k + 1`.
    pub fn total_differential(&self, k: i64) -> Matrix {
        let src = self.total_degree(k);
        let dst = self.total_degree(k + 1);
        let mut m = Matrix::zeros(dst.dim, src.dim);
        for &(at, col_off, _) in &src.blocks {
            let (p, q) = at;
            for (target, block) in [((p + 1, q), self.d1(at)), ((p, q + 1), self.d2(at))] {
                let Some((row_off, _)) = dst.offset_of(target) else {
                    continue;
                };
                for (r, c, x) in block.nonzero_entries() {
                    m.set(row_off + r, col_off + c, x.clone());
                }
            }
        }
        m
    }

    /// `F^p A^k = ⊕_{p' ≥ p} A^{p', k-p'}` inside the total-degree-`k` space.
    pub fn column_filtration(&self, k: i64, p: i64) -> Subspace {
        let layout = self.total_degree(k);
        let mut basis = Vec::new();
        for &((bp, _), off, d) in &layout.blocks {
            if bp >= p {
                for i in 0..d {
                    let mut v = vec![Scalar::zero(); layout.dim];
                    v[off + i] = Scalar::one();
                    basis.push(v);
                }
            }
        }
        Subspace::span(layout.dim, &basis)
    }

    /// Range of total degrees carrying nonzero components.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let mut it = self.support().map(|(p, q)| p + q);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), k| (lo.min(k), hi.max(k))))
    }
}
