//! Packed n×n matrices (n ≤ 3) over small prime fields, for exhaustive
//! enumeration of GL(n, p).
//!
//! A matrix is identified with its code: the row-major entries read as base-p
//! digits, entry (1,1) most significant. Ascending code order is therefore
//! lexicographic order on entries.

use crate::field::{FieldDescriptor, Scalar};
use crate::matrix::Matrix;

pub(crate) const MAX_SMALL_N: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Small {
    e: [u32; 9],
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SmallField {
    pub n: usize,
    pub p: u32,
}

impl SmallField {
    pub fn new(n: usize, p: u32) -> Self {
        assert!((1..=MAX_SMALL_N).contains(&n));
        SmallField { n, p }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::prime(self.p as u64).expect("prime modulus")
    }

    /// Number of n×n matrices, `p^(n²)`.
    pub fn code_count(&self) -> u64 {
        (self.p as u64).pow((self.n * self.n) as u32)
    }

    pub fn decode(&self, mut code: u64) -> Small {
        let mut e = [0u32; 9];
        let len = self.n * self.n;
        for k in (0..len).rev() {
            e[k] = (code % self.p as u64) as u32;
            code /= self.p as u64;
        }
        Small { e }
    }

    pub fn encode(&self, m: &Small) -> u64 {
        m.e[..self.n * self.n]
            .iter()
            .fold(0u64, |acc, &d| acc * self.p as u64 + d as u64)
    }

    #[inline]
    fn get(&self, m: &Small, i: usize, j: usize) -> u32 {
        m.e[i * self.n + j]
    }

    pub fn det(&self, m: &Small) -> u32 {
        let p = self.p as i64;
        let g = |i, j| self.get(m, i, j) as i64;
        let d = match self.n {
            1 => g(0, 0),
            2 => g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0),
            _ => {
                g(0, 0) * ((g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) % p)
                    - g(0, 1) * ((g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0)) % p)
                    + g(0, 2) * ((g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0)) % p)
            }
        };
        d.rem_euclid(p) as u32
    }

    pub fn is_invertible_code(&self, code: u64) -> bool {
        self.det(&self.decode(code)) != 0
    }

    /// `ᵗX·A·X`.
    pub fn congruence(&self, a: &Small, x: &Small) -> Small {
        let n = self.n;
        let p = self.p as u64;
        // ax = A·X
        let mut ax = [0u64; 9];
        for i in 0..n {
            for j in 0..n {
                ax[i * n + j] = (0..n)
                    .map(|k| self.get(a, i, k) as u64 * self.get(x, k, j) as u64)
                    .sum::<u64>()
                    % p;
            }
        }
        let mut e = [0u32; 9];
        for i in 0..n {
            for j in 0..n {
                e[i * n + j] = ((0..n)
                    .map(|k| self.get(x, k, i) as u64 * ax[k * n + j])
                    .sum::<u64>()
                    % p) as u32;
            }
        }
        Small { e }
    }

    pub fn scale(&self, m: &Small, c: u32) -> Small {
        let mut e = m.e;
        for v in e.iter_mut().take(self.n * self.n) {
            *v = ((*v as u64 * c as u64) % self.p as u64) as u32;
        }
        Small { e }
    }

    pub fn inv_scalar(&self, c: u32) -> u32 {
        Scalar::residue(self.descriptor(), c as u64)
            .inv()
            .expect("nonzero scalar")
            .as_residue()
            .expect("residue")
    }

    pub fn lift(&self, m: &Small) -> Matrix {
        let f = self.descriptor();
        Matrix::from_fn(f, self.n, |i, j| Scalar::residue(f, self.get(m, i, j) as u64))
    }

    pub fn lower(&self, m: &Matrix) -> Small {
        debug_assert_eq!(m.n(), self.n);
        let mut e = [0u32; 9];
        for (k, s) in m.entries().iter().enumerate() {
            e[k] = s.as_residue().expect("prime-field entry");
        }
        Small { e }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::congruence_transform;

    #[test]
    fn codes_roundtrip_and_order() {
        let f = SmallField::new(2, 3);
        assert_eq!(f.code_count(), 81);
        for code in 0..81 {
            assert_eq!(f.encode(&f.decode(code)), code);
        }
        // code 1 is [[0,0],[0,1]]
        assert_eq!(
            f.lift(&f.decode(1)),
            Matrix::from_ints(f.descriptor(), &[[0, 0], [0, 1]]).unwrap()
        );
    }

    #[test]
    fn kernel_matches_generic_arithmetic() {
        for (n, p) in [(1, 5), (2, 3), (3, 3), (3, 5)] {
            let f = SmallField::new(n, p);
            let step = (f.code_count() / 300).max(1);
            for code in (0..f.code_count()).step_by(step as usize) {
                let a = f.decode(code);
                let x = f.decode((code * 7919 + 13) % f.code_count());
                let (ma, mx) = (f.lift(&a), f.lift(&x));
                assert_eq!(Scalar::residue(f.descriptor(), f.det(&a) as u64), ma.determinant());
                if mx.is_nonsingular() {
                    let c = congruence_transform(&ma, &mx).unwrap();
                    assert_eq!(f.lift(&f.congruence(&a, &x)), c);
                    assert_eq!(f.lower(&c), f.congruence(&a, &x));
                }
            }
        }
    }
}
