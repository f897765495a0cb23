//! Seeded random parameter tuples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;

use super::IwasawaParams;

/// `n/d` with `n ∈ [−9, 9]`, `d ∈ [1, 9]`.
pub fn random_rational(rng: &mut impl Rng) -> Scalar {
    Scalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// Gaussian rational with independently drawn real and imaginary parts.
pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    let re = random_rational(rng);
    let im = random_rational(rng);
    re + im * Scalar::i()
}

fn random_nonzero(rng: &mut impl Rng) -> Scalar {
    loop {
        let s = random_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// All six entries random.
pub fn random_params(rng: &mut impl Rng) -> IwasawaParams {
    IwasawaParams::from_array(std::array::from_fn(|_| random_scalar(rng)))
}

/// Only `t₃₁, t₃₂` random; the rest zero.
pub fn random_vertical(rng: &mut impl Rng) -> IwasawaParams {
    let mut t = IwasawaParams::zero();
    t.t31 = random_scalar(rng);
    t.t32 = random_scalar(rng);
    t
}

/// `t_{iλ} = u_i v_λ` for `i, λ ∈ {1, 2}` with `u, v` nonzero: a nonzero
/// linear part with vanishing discriminant.
pub fn random_rank_one(rng: &mut impl Rng) -> IwasawaParams {
    let (u1, u2) = if rng.gen_bool(0.5) {
        (random_nonzero(rng), random_scalar(rng))
    } else {
        (random_scalar(rng), random_nonzero(rng))
    };
    let (v1, v2) = if rng.gen_bool(0.5) {
        (random_nonzero(rng), random_scalar(rng))
    } else {
        (random_scalar(rng), random_nonzero(rng))
    };
    IwasawaParams::from_array([
        &u1 * &v1,
        &u1 * &v2,
        &u2 * &v1,
        &u2 * &v2,
        random_scalar(rng),
        random_scalar(rng),
    ])
}

/// Representative tuples: the origin, a point moving only `t₃₁, t₃₂`, a
/// rank-one point and a point with `D ≠ 0`.
pub fn representatives() -> Vec<IwasawaParams> {
    vec![
        IwasawaParams::zero(),
        IwasawaParams::from_ratios([(0, 1), (0, 1), (0, 1), (0, 1), (1, 2), (1, 3)]),
        IwasawaParams::from_ratios([(1, 2), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)]),
        IwasawaParams::from_ratios([(1, 2), (0, 1), (0, 1), (1, 2), (0, 1), (0, 1)]),
    ]
}

/// `n` tuples, deterministic in `seed`: the representatives first, then a
/// rotation of vertical-only, rank-one, rank-one with `t₃₁, t₃₂` redrawn,
/// and fully random draws.
pub fn sample_params(n: usize, seed: u64) -> Vec<IwasawaParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<IwasawaParams> = representatives().into_iter().take(n).collect();
    let mut i = 0usize;
    while out.len() < n {
        let t = match i % 4 {
            0 => random_vertical(&mut rng),
            1 => random_rank_one(&mut rng),
            2 => {
                let mut t = out.last().expect("nonempty").clone();
                t.t31 = random_scalar(&mut rng);
                t.t32 = random_scalar(&mut rng);
                t
            }
            _ => random_params(&mut rng),
        };
        out.push(t);
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iwasawa::Case;

    #[test]
    fn sampling_is_deterministic_and_covers_all_cases() {
        let a = sample_params(40, 7);
        assert_eq!(a, sample_params(40, 7));
        assert_ne!(a, sample_params(40, 8));
        for case in [Case::I, Case::II, Case::III] {
            assert!(a.iter().any(|t| t.case() == case));
        }
    }

    #[test]
    fn rank_one_draws_are_case_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert_eq!(random_rank_one(&mut rng).case(), Case::II);
        }
    }
}
