//! The congruence invariant `σ(A) = Tr(ᵗA·A⁻¹)` and its relatives.
//!
//! `σ` is computed three independent ways (see [`SigmaMode`]); the default
//! [`sigma`] uses the trace form and, in debug builds, checks it against the
//! cofactor-sum form. For 3×3 matrices `κ(A) = 3 − σ(A)` is available both
//! through `σ` and through its expanded polynomial, and the unitriangular
//! canonical form `A(a, b, c)` satisfies `κ(A(a, b, c)) = a² + b² + c² − abc`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaMode {
    /// `Tr(ᵗA·A⁻¹)`.
    TraceForm,
    /// `|A|⁻¹ · Σ_ij a_ij·ã_ji` with `ã` the cofactors.
    CofactorForm,
    /// `|A|⁻¹ · Tr(A·adj(ᵗA))`.
    AdjugateForm,
}

impl SigmaMode {
    pub const ALL: [SigmaMode; 3] = [
        SigmaMode::TraceForm,
        SigmaMode::CofactorForm,
        SigmaMode::AdjugateForm,
    ];
}

/// `σ(A)` via the trace form.
pub fn sigma(a: &Matrix) -> Result<Scalar> {
    let s = sigma_by(a, SigmaMode::TraceForm)?;
    debug_assert_eq!(
        Some(&s),
        sigma_by(a, SigmaMode::CofactorForm).ok().as_ref(),
        "trace and cofactor forms of sigma disagree on {a}"
    );
    Ok(s)
}

pub fn sigma_by(a: &Matrix, mode: SigmaMode) -> Result<Scalar> {
    match mode {
        SigmaMode::TraceForm => {
            let inv = a.inverse()?;
            Ok((&a.transpose() * &inv).trace())
        }
        SigmaMode::CofactorForm => {
            let det_inv = a.determinant().inv().map_err(|_| Error::SingularMatrix)?;
            let n = a.n();
            let mut sum = a.field().zero();
            for i in 1..=n {
                for j in 1..=n {
                    sum = sum + a.entry(i, j)? * &a.cofactor(j, i)?;
                }
            }
            Ok(det_inv * sum)
        }
        SigmaMode::AdjugateForm => {
            let det_inv = a.determinant().inv().map_err(|_| Error::SingularMatrix)?;
            Ok(det_inv * (a * &a.transpose().adjugate()).trace())
        }
    }
}

/// `σ` under all three modes, in [`SigmaMode::ALL`] order.
pub fn sigma_all_modes(a: &Matrix) -> Result<[Scalar; 3]> {
    Ok([
        sigma_by(a, SigmaMode::TraceForm)?,
        sigma_by(a, SigmaMode::CofactorForm)?,
        sigma_by(a, SigmaMode::AdjugateForm)?,
    ])
}

fn check_transform(a: &Matrix, x: &Matrix) -> Result<()> {
    if a.field() != x.field() {
        return Err(Error::FieldMismatch {
            left: a.field(),
            right: x.field(),
        });
    }
    if a.n() != x.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: x.n(),
        });
    }
    if !x.is_nonsingular() {
        return Err(Error::SingularTransform);
    }
    Ok(())
}

/// `ᵗX·A·X`.
pub fn congruence_transform(a: &Matrix, x: &Matrix) -> Result<Matrix> {
    check_transform(a, x)?;
    Ok(&(&x.transpose() * a) * x)
}

/// `|X|⁻¹·ᵗX·A·X`, the isomorphism action on zeropotent structure matrices.
pub fn scaled_congruence_transform(a: &Matrix, x: &Matrix) -> Result<Matrix> {
    check_transform(a, x)?;
    let det_inv = x.determinant().inv()?;
    (&(&x.transpose() * a) * x).scale(&det_inv)
}

/// `P⁻¹·A·P`.
pub fn similarity_transform(a: &Matrix, p: &Matrix) -> Result<Matrix> {
    check_transform(a, p)?;
    Ok(&(&p.inverse()? * a) * p)
}

/// Whether `ᵗX·A·X = B`.
pub fn is_congruent_via(a: &Matrix, b: &Matrix, x: &Matrix) -> Result<bool> {
    Ok(congruence_transform(a, x)? == *b)
}

/// Whether `P⁻¹·A·P = B`.
pub fn is_similar_via(a: &Matrix, b: &Matrix, p: &Matrix) -> Result<bool> {
    Ok(similarity_transform(a, p)? == *b)
}

fn check_three(a: &Matrix) -> Result<()> {
    if a.n() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: a.n(),
        });
    }
    Ok(())
}

/// `κ(A) = 3 − σ(A)` for nonsingular 3×3 `A`.
pub fn kappa(a: &Matrix) -> Result<Scalar> {
    check_three(a)?;
    Ok(a.field().int(3) - sigma(a)?)
}

/// `κ(A)` from its expanded homogeneous polynomial divided by `|A|`.
pub fn kappa_explicit(a: &Matrix) -> Result<Scalar> {
    check_three(a)?;
    let det_inv = a.determinant().inv().map_err(|_| Error::SingularMatrix)?;
    let f = a.field();
    let e = |i: usize, j: usize| a.entry(i, j).expect("3x3 index");
    let (a11, a12, a13) = (e(1, 1), e(1, 2), e(1, 3));
    let (a21, a22, a23) = (e(2, 1), e(2, 2), e(2, 3));
    let (a31, a32, a33) = (e(3, 1), e(3, 2), e(3, 3));
    let k = |c: i64| f.int(c);

    let inner = a21 * a23 + k(2) * a22 * a31 - k(3) * a21 * a32 + a12 * &(a23 + a32);
    let poly = a13.square() * a22 + k(3) * a12 * a23 * a31 - a21 * a23 * a31
        + a22 * &a31.square()
        + a11 * &(a23 - a32).square()
        - a12 * a31 * a32
        - a21 * a31 * a32
        - a13 * &inner
        + a12.square() * a33
        - k(2) * a12 * a21 * a33
        + a21.square() * a33;
    Ok(det_inv * poly)
}

fn check_scalars(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<FieldDescriptor> {
    let f = a.field();
    for s in [b, c] {
        if s.field() != f {
            return Err(Error::FieldMismatch {
                left: f,
                right: s.field(),
            });
        }
    }
    Ok(f)
}

/// `D(a, b, c) = a² + b² + c² − abc`.
pub fn d_invariant(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<Scalar> {
    check_scalars(a, b, c)?;
    Ok(a.square() + b.square() + c.square() - a * &(b * c))
}

/// The unitriangular canonical form `[[1, a, b], [0, 1, c], [0, 0, 1]]`.
pub fn canonical_form(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<Matrix> {
    let f = check_scalars(a, b, c)?;
    let (z, o) = (f.zero(), f.one());
    Matrix::from_rows(
        f,
        vec![
            vec![o.clone(), a.clone(), b.clone()],
            vec![z.clone(), o.clone(), c.clone()],
            vec![z.clone(), z, o],
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_nonsingular_with, random_scalar, random_symmetric_nonsingular, trial_rng};

    fn q() -> FieldDescriptor {
        FieldDescriptor::rational()
    }

    fn gf(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime(p).unwrap()
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(q(), rows).unwrap()
    }

    #[test]
    fn sigma_of_identity_is_n() {
        for n in 1..=6 {
            let i = Matrix::identity(q(), n).unwrap();
            for mode in SigmaMode::ALL {
                assert_eq!(sigma_by(&i, mode).unwrap(), q().int(n as i64));
            }
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&m(&[&[1, 1], &[0, 1]])).unwrap(), q().int(1));
        assert_eq!(sigma(&m(&[&[0, 1], &[-1, 0]])).unwrap(), q().int(-2));
        assert_eq!(sigma(&m(&[&[1, 2], &[2, 4]])), Err(Error::SingularMatrix));
        for mode in SigmaMode::ALL {
            assert_eq!(sigma_by(&m(&[&[0, 0], &[0, 0]]), mode), Err(Error::SingularMatrix));
        }
    }

    #[test]
    fn sigma_two_by_two_closed_form() {
        // (2ad − b² − c²)/(ad − bc)
        let mut rng = trial_rng(11, 0);
        for _ in 0..200 {
            let a = random_nonsingular_with(&mut rng, 2, q(), 7);
            let [x, y, z, w] = [&a.entries()[0], &a.entries()[1], &a.entries()[2], &a.entries()[3]];
            let num = q().int(2) * x * w - y.square() - z.square();
            let den = x * w - y * z;
            assert_eq!(sigma(&a).unwrap(), num * den.inv().unwrap());
        }
    }

    #[test]
    fn sigma_one_by_one_is_one() {
        for c in [-5i64, 1, 3, 17] {
            assert!(sigma(&m(&[&[c]])).unwrap().is_one());
        }
        assert!(sigma(&Matrix::from_ints(gf(2), &[[1]]).unwrap()).unwrap().is_one());
    }

    #[test]
    fn symmetric_reduces_n_into_field() {
        let mut rng = trial_rng(5, 0);
        let s = random_symmetric_nonsingular(&mut rng, 3, gf(3), 1);
        assert!(sigma(&s).unwrap().is_zero());
    }

    #[test]
    fn skew_symmetric_gives_minus_n() {
        let mut rng = trial_rng(2, 0);
        for field in [q(), gf(3), gf(7)] {
            for n in [2, 4] {
                let k = crate::random::random_skew_nonsingular(&mut rng, n, field, 5).unwrap();
                assert_eq!(sigma(&k).unwrap(), field.int(-(n as i64)));
            }
        }
    }

    #[test]
    fn congruence_examples() {
        let a = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(congruence_transform(&a, &Matrix::identity(q(), 2).unwrap()).unwrap(), a);
        let x = m(&[&[2, 0], &[0, 1]]);
        assert_eq!(congruence_transform(&a, &x).unwrap(), m(&[&[4, 2], &[0, 1]]));
        assert_eq!(
            congruence_transform(&a, &m(&[&[1, 1], &[1, 1]])),
            Err(Error::SingularTransform)
        );
        assert!(matches!(
            congruence_transform(&a, &Matrix::identity(q(), 3).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(is_congruent_via(&a, &m(&[&[4, 2], &[0, 1]]), &x).unwrap());
    }

    #[test]
    fn scaled_congruence_by_scalar_matrix() {
        let mut rng = trial_rng(9, 0);
        for n in 1..=4 {
            let a = random_nonsingular_with(&mut rng, n, q(), 5);
            let c = q().int(3);
            let x = Matrix::identity(q(), n).unwrap().scale(&c).unwrap();
            // c^(2−n)·a
            let factor = c.pow(2) * c.inv().unwrap().pow(n as u32);
            let expected = a.scale(&factor).unwrap();
            assert_eq!(scaled_congruence_transform(&a, &x).unwrap(), expected);
            let i = Matrix::identity(q(), n).unwrap();
            assert_eq!(scaled_congruence_transform(&a, &i).unwrap(), a);
        }
    }

    #[test]
    fn similarity_preserves_trace() {
        let mut rng = trial_rng(4, 0);
        let a = random_nonsingular_with(&mut rng, 3, q(), 5);
        let p = random_nonsingular_with(&mut rng, 3, q(), 5);
        let b = similarity_transform(&a, &p).unwrap();
        assert_eq!(b.trace(), a.trace());
        assert!(is_similar_via(&a, &b, &p).unwrap());
    }

    #[test]
    fn kappa_examples() {
        assert!(kappa(&Matrix::identity(q(), 3).unwrap()).unwrap().is_zero());
        assert!(kappa_explicit(&Matrix::identity(q(), 3).unwrap()).unwrap().is_zero());
        assert!(kappa(&m(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap().is_one());
        assert_eq!(
            kappa_explicit(&m(&[&[1, 0, 0], &[0, 1, 1], &[0, -1, 1]])).unwrap(),
            q().int(2)
        );
        assert!(matches!(
            kappa(&Matrix::identity(q(), 2).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(kappa_explicit(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]])), Err(Error::SingularMatrix));
    }

    #[test]
    fn d_and_canonical_form() {
        let (z, one) = (q().zero(), q().one());
        assert!(d_invariant(&z, &z, &z).unwrap().is_zero());
        assert_eq!(d_invariant(&q().int(1), &q().int(2), &q().int(3)).unwrap(), q().int(8));
        assert_eq!(canonical_form(&z, &z, &z).unwrap(), Matrix::identity(q(), 3).unwrap());
        let g = Scalar::from_i64(gf(5), 1);
        assert!(matches!(d_invariant(&one, &g, &one), Err(Error::FieldMismatch { .. })));
        assert!(matches!(canonical_form(&one, &one, &g), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn canonical_form_sigma_matches_d() {
        let mut rng = trial_rng(8, 0);
        for field in [q(), gf(5), gf(2)] {
            for _ in 0..100 {
                let (a, b, c) = (
                    random_scalar(&mut rng, field, 20),
                    random_scalar(&mut rng, field, 20),
                    random_scalar(&mut rng, field, 20),
                );
                let cf = canonical_form(&a, &b, &c).unwrap();
                assert!(cf.determinant().is_one());
                let d = d_invariant(&a, &b, &c).unwrap();
                assert_eq!(sigma(&cf).unwrap(), field.int(3) - &d);
                assert_eq!(kappa(&cf).unwrap(), d);
                assert_eq!(kappa_explicit(&cf).unwrap(), d);
            }
        }
    }

    #[test]
    fn modes_agree_on_small_fields() {
        let mut rng = trial_rng(10, 0);
        for field in [gf(2), gf(3), gf(5), q()] {
            for n in 1..=5 {
                for _ in 0..20 {
                    let a = random_nonsingular_with(&mut rng, n, field, 4);
                    let [t, c, d] = sigma_all_modes(&a).unwrap();
                    assert_eq!(t, c);
                    assert_eq!(t, d);
                }
            }
        }
    }
}
