//! Dense square matrices over an exact field.
//!
//! Indices in the public API are 1-based (`a_ij` with `1 <= i, j <= n`).

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldKind, FieldDoc, Scalar};

/// Largest dimension accepted by the public API.
pub const MAX_DIM: usize = 64;

/// Rational determinants of this size and above go through Bareiss elimination
/// over cleared-denominator integers.
pub const BAREISS_THRESHOLD: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixDocument", into = "MatrixDocument")]
pub struct Matrix {
    field: FieldDescriptor,
    n: usize,
    entries: Vec<Scalar>,
}

/// The JSON matrix document: `{"field": {...}, "rows": [["1/2", "0"], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub field: FieldDoc,
    pub rows: Vec<Vec<String>>,
}

impl TryFrom<MatrixDocument> for Matrix {
    type Error = Error;

    fn try_from(doc: MatrixDocument) -> Result<Self> {
        let field = FieldDescriptor::try_from(doc.field)?;
        let rows = doc
            .rows
            .iter()
            .map(|row| row.iter().map(|s| Scalar::parse(field, s)).collect())
            .collect::<Result<Vec<Vec<Scalar>>>>()?;
        Matrix::from_rows(field, rows)
    }
}

impl From<Matrix> for MatrixDocument {
    fn from(m: Matrix) -> Self {
        MatrixDocument {
            field: m.field.into(),
            rows: m
                .entries
                .chunks(m.n)
                .map(|row| row.iter().map(Scalar::to_string).collect())
                .collect(),
        }
    }
}

fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidDimension(n))
    }
}

impl Matrix {
    /// Builds a matrix from row-major entries, checking shape and field.
    pub fn new(field: FieldDescriptor, n: usize, entries: Vec<Scalar>) -> Result<Self> {
        check_dim(n)?;
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch {
                left: field,
                right: bad.field(),
            });
        }
        Ok(Matrix { field, n, entries })
    }

    pub fn from_rows(field: FieldDescriptor, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        check_dim(n)?;
        if let Some(row) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        Matrix::new(field, n, rows.into_iter().flatten().collect())
    }

    /// Integer entries embedded in `field`.
    pub fn from_ints<R: AsRef<[i64]>>(field: FieldDescriptor, rows: &[R]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| Scalar::from_i64(field, v)).collect())
            .collect();
        Matrix::from_rows(field, rows)
    }

    pub(crate) fn from_fn(
        field: FieldDescriptor,
        n: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Matrix { field, n, entries }
    }

    pub fn identity(field: FieldDescriptor, n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self::identity_unchecked(field, n))
    }

    pub(crate) fn identity_unchecked(field: FieldDescriptor, n: usize) -> Matrix {
        let (zero, one) = (field.zero(), field.one());
        Matrix::from_fn(field, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn zeros(field: FieldDescriptor, n: usize) -> Result<Self> {
        check_dim(n)?;
        let zero = field.zero();
        Ok(Matrix::from_fn(field, n, |_, _| zero.clone()))
    }

    pub fn diagonal(field: FieldDescriptor, diag: Vec<Scalar>) -> Result<Self> {
        let n = diag.len();
        check_dim(n)?;
        let zero = field.zero();
        let m = Matrix::from_fn(field, n, |i, j| if i == j { diag[i].clone() } else { zero.clone() });
        Matrix::new(field, n, m.entries)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `a_ij`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> Result<&Scalar> {
        self.check_index(i, j)?;
        Ok(self.at(i - 1, j - 1))
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.entries.chunks(self.n)
    }

    #[inline]
    pub(crate) fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.n + c]
    }

    fn check_index(&self, i: usize, j: usize) -> Result<()> {
        if (1..=self.n).contains(&i) && (1..=self.n).contains(&j) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                row: i,
                col: j,
                n: self.n,
            })
        }
    }

    fn check_compatible(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.n, |i, j| self.at(j, i).clone())
    }

    pub fn mat_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        let n = self.n;
        Ok(Matrix::from_fn(self.field, n, |i, j| {
            (0..n).fold(self.field.zero(), |acc, k| acc + self.at(i, k) * other.at(k, j))
        }))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        Ok(Matrix::from_fn(self.field, self.n, |i, j| self.at(i, j) + other.at(i, j)))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        Ok(Matrix::from_fn(self.field, self.n, |i, j| self.at(i, j) - other.at(i, j)))
    }

    /// `c * A`.
    pub fn scale(&self, c: &Scalar) -> Result<Matrix> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: c.field(),
            });
        }
        Ok(Matrix::from_fn(self.field, self.n, |i, j| c * self.at(i, j)))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).fold(self.field.zero(), |acc, i| acc + self.at(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| *self.at(i, j) == -self.at(j, i)))
    }

    pub fn is_nonsingular(&self) -> bool {
        !self.determinant().is_zero()
    }

    /// Exact determinant. Singular input yields zero.
    pub fn determinant(&self) -> Scalar {
        if self.field.kind() == FieldKind::Rational && self.n >= BAREISS_THRESHOLD {
            self.determinant_bareiss()
        } else {
            self.determinant_gauss()
        }
    }

    /// Determinant by Gaussian elimination with field division.
    pub fn determinant_gauss(&self) -> Scalar {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = self.field.one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
                return self.field.zero();
            };
            if p != k {
                for c in 0..n {
                    a.swap(p * n + c, k * n + c);
                }
                det = -det;
            }
            let pivot = a[k * n + k].clone();
            let pinv = pivot.inv().expect("nonzero pivot");
            det = det * &pivot;
            for r in k + 1..n {
                if a[r * n + k].is_zero() {
                    continue;
                }
                let factor = &a[r * n + k] * &pinv;
                for c in k + 1..n {
                    let t = &factor * &a[k * n + c];
                    a[r * n + c] = &a[r * n + c] - &t;
                }
            }
        }
        det
    }

    /// Fraction-free determinant: rows are scaled to integers, eliminated with
    /// Bareiss' exact-division update, and the scaling is divided back out.
    /// Prime-field entries are lifted to their residues and the result reduced.
    pub fn determinant_bareiss(&self) -> Scalar {
        let n = self.n;
        let mut scale = BigInt::one();
        let mut ints = Vec::with_capacity(n * n);
        for row in self.rows() {
            match self.field.kind() {
                FieldKind::Rational => {
                    let lcm = row.iter().fold(BigInt::one(), |l, e| {
                        l.lcm(e.as_rational().expect("rational entry").denom())
                    });
                    for e in row {
                        let q = e.as_rational().expect("rational entry");
                        ints.push(q.numer() * (&lcm / q.denom()));
                    }
                    scale *= lcm;
                }
                FieldKind::Prime => {
                    ints.extend(row.iter().map(|e| BigInt::from(e.as_residue().expect("residue"))));
                }
            }
        }
        let det = bareiss(ints, n);
        match self.field.kind() {
            FieldKind::Rational => Scalar::ratio(det, scale).expect("positive row scale"),
            FieldKind::Prime => Scalar::from_bigint(self.field, det),
        }
    }

    /// Submatrix with (0-based) row `r` and column `c` removed.
    fn minor_matrix(&self, r: usize, c: usize) -> Matrix {
        let m = self.n - 1;
        Matrix::from_fn(self.field, m, |i, j| {
            self.at(if i < r { i } else { i + 1 }, if j < c { j } else { j + 1 })
                .clone()
        })
    }

    /// Cofactor `(-1)^(i+j) * M_ij`, 1-based. For `n = 1` the cofactor is 1.
    pub fn cofactor(&self, i: usize, j: usize) -> Result<Scalar> {
        self.check_index(i, j)?;
        Ok(self.cofactor0(i - 1, j - 1))
    }

    fn cofactor0(&self, r: usize, c: usize) -> Scalar {
        if self.n == 1 {
            return self.field.one();
        }
        let minor = self.minor_matrix(r, c).determinant();
        if (r + c).is_multiple_of(2) {
            minor
        } else {
            -minor
        }
    }

    /// Classical adjugate, `adj(A)_ij = cofactor(A, j, i)`. Total: singular
    /// input is fine.
    pub fn adjugate(&self) -> Matrix {
        let cof: Vec<Scalar> = (0..self.n * self.n)
            .map(|k| self.cofactor0(k / self.n, k % self.n))
            .collect();
        Matrix::from_fn(self.field, self.n, |i, j| cof[j * self.n + i].clone())
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let w = 2 * n;
        let mut a: Vec<Scalar> = Vec::with_capacity(n * w);
        let (zero, one) = (self.field.zero(), self.field.one());
        for (i, row) in self.rows().enumerate() {
            a.extend(row.iter().cloned());
            a.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
        }
        for k in 0..n {
            let p = (k..n)
                .find(|&r| !a[r * w + k].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if p != k {
                for c in 0..w {
                    a.swap(p * w + c, k * w + c);
                }
            }
            let pinv = a[k * w + k].inv()?;
            for c in k..w {
                a[k * w + c] = &a[k * w + c] * &pinv;
            }
            for r in 0..n {
                if r == k || a[r * w + k].is_zero() {
                    continue;
                }
                let factor = a[r * w + k].clone();
                for c in k..w {
                    let t = &factor * &a[k * w + c];
                    a[r * w + c] = &a[r * w + c] - &t;
                }
            }
        }
        Ok(Matrix::from_fn(self.field, n, |i, j| a[i * w + n + j].clone()))
    }

    /// Embeds an integer matrix into another field entrywise. Fails on
    /// non-integer rationals.
    pub fn reduce_into(&self, field: FieldDescriptor) -> Result<Matrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| match e.as_rational() {
                Some(q) if q.is_integer() => Ok(Scalar::from_bigint(field, q.to_integer())),
                Some(_) => Err(Error::Parse(format!("{e} is not an integer"))),
                None if self.field == field => Ok(e.clone()),
                None => Err(Error::FieldMismatch {
                    left: self.field,
                    right: field,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(field, self.n, entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serializes")
    }

    pub fn from_json(s: &str) -> Result<Matrix> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn bareiss(mut m: Vec<BigInt>, n: usize) -> BigInt {
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                m.swap(p * n + c, k * n + c);
            }
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = v / &prev;
            }
        }
        prev = m[k * n + k].clone();
    }
    let det = m[n * n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;

    /// Panics on field or dimension mismatch; see [`Matrix::mat_mul`].
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.mat_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
