//! Seeded generators for test matrices and transforms.
//!
//! Every randomized procedure draws from a ChaCha stream derived from
//! `(seed, trial index)`, so trial `t` sees the same numbers whether trials
//! run sequentially or on a thread pool.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::{FieldDescriptor, Scalar};
use crate::matrix::Matrix;

/// Default seed for randomized commands.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

const MAX_REJECTIONS: usize = 64;

pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Integer in `[-bound, bound]` over Q, uniform residue over GF(p).
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, field: FieldDescriptor, bound: u64) -> Scalar {
    match field.modulus() {
        None => {
            let b = bound as i64;
            Scalar::from_i64(field, rng.random_range(-b..=b))
        }
        Some(p) => Scalar::residue(field, rng.random_range(0..p as u64)),
    }
}

pub fn random_nonzero_scalar<R: Rng + ?Sized>(
    rng: &mut R,
    field: FieldDescriptor,
    bound: u64,
) -> Scalar {
    match field.modulus() {
        None => {
            let b = bound.max(1) as i64;
            let v = rng.random_range(1..=b);
            Scalar::from_i64(field, if rng.random::<bool>() { v } else { -v })
        }
        Some(p) => Scalar::residue(field, rng.random_range(1..p as u64)),
    }
}

/// Any matrix, singular or not.
pub fn random_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    field: FieldDescriptor,
    bound: u64,
) -> Matrix {
    Matrix::from_fn(field, n, |_, _| random_scalar(rng, field, bound))
}

/// Seeded nonsingular matrix; see [`random_nonsingular_with`].
pub fn random_nonsingular(
    n: usize,
    field: FieldDescriptor,
    seed: u64,
    bound: u64,
) -> Result<Matrix> {
    Matrix::identity(field, n)?;
    Ok(random_nonsingular_with(&mut trial_rng(seed, 0), n, field, bound))
}

/// Rejection-samples uniform entries up to 64 times, then falls back to a
/// product of random elementary matrices.
pub fn random_nonsingular_with<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    field: FieldDescriptor,
    bound: u64,
) -> Matrix {
    for _ in 0..MAX_REJECTIONS {
        let a = random_matrix(rng, n, field, bound);
        if a.is_nonsingular() {
            return a;
        }
    }
    random_elementary_product(rng, n, field, bound)
}

/// Product of elementary row operations applied to the identity.
pub fn random_elementary_product<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    field: FieldDescriptor,
    bound: u64,
) -> Matrix {
    let mut rows: Vec<Vec<Scalar>> = Matrix::identity_unchecked(field, n)
        .rows()
        .map(<[Scalar]>::to_vec)
        .collect();
    for _ in 0..3 * n {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i == j || n == 1 {
            let c = random_nonzero_scalar(rng, field, bound);
            rows[i].iter_mut().for_each(|e| *e = &*e * &c);
        } else if rng.random_range(0..4) == 0 {
            rows.swap(i, j);
        } else {
            let c = random_scalar(rng, field, bound);
            let src = rows[j].clone();
            for (e, s) in rows[i].iter_mut().zip(&src) {
                *e = &*e + &(&c * s);
            }
        }
    }
    Matrix::from_fn(field, n, |i, j| rows[i][j].clone())
}

/// Nonsingular symmetric matrix: `B + ᵗB` plus a random diagonal, with
/// rejection; falls back to `ᵗP·diag(d)·P`.
pub fn random_symmetric_nonsingular<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    field: FieldDescriptor,
    bound: u64,
) -> Matrix {
    for _ in 0..MAX_REJECTIONS {
        let b = random_matrix(rng, n, field, bound);
        let mut s = b.add(&b.transpose()).expect("same shape");
        let diag: Vec<Scalar> = (0..n).map(|_| random_scalar(rng, field, bound)).collect();
        s = s
            .add(&Matrix::diagonal(field, diag).expect("valid dimension"))
            .expect("same shape");
        if s.is_nonsingular() {
            return s;
        }
    }
    let p = random_elementary_product(rng, n, field, bound);
    let d: Vec<Scalar> = (0..n).map(|_| random_nonzero_scalar(rng, field, bound)).collect();
    let d = Matrix::diagonal(field, d).expect("valid dimension");
    &(&p.transpose() * &d) * &p
}

/// Nonsingular skew-symmetric matrix, for even `n` outside characteristic 2.
pub fn random_skew_nonsingular<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    field: FieldDescriptor,
    bound: u64,
) -> Option<Matrix> {
    if n % 2 == 1 || field.characteristic() == 2 {
        return None;
    }
    for _ in 0..MAX_REJECTIONS {
        let b = random_matrix(rng, n, field, bound);
        let s = b.sub(&b.transpose()).expect("same shape");
        if s.is_nonsingular() {
            return Some(s);
        }
    }
    // ᵗP·J·P with J the standard symplectic block matrix.
    let one = field.one();
    let j = Matrix::from_fn(field, n, |r, c| {
        if r % 2 == 0 && c == r + 1 {
            one.clone()
        } else if r % 2 == 1 && c + 1 == r {
            -&one
        } else {
            field.zero()
        }
    });
    let p = random_elementary_product(rng, n, field, bound);
    Some(&(&p.transpose() * &j) * &p)
}
