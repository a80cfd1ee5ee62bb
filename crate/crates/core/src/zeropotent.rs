//! Three-dimensional zeropotent algebras given by structure constants.
//!
//! The structure matrix `A` has rows holding the coordinates of `e₂e₃`,
//! `e₃e₁` and `e₁e₂` in the basis `e₁, e₂, e₃`. Two such algebras are
//! isomorphic iff `B = |X|⁻¹·ᵗX·A·X` for some nonsingular `X`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::field::{FieldDescriptor, Scalar};
use crate::invariant::{scaled_congruence_transform, sigma};
use crate::matrix::Matrix;
use crate::orbit::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ZeropotentAlgebra3 {
    structure: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector3 {
    coords: [Scalar; 3],
}

impl Vector3 {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Result<Self> {
        let f = x.field();
        for s in [&y, &z] {
            if s.field() != f {
                return Err(Error::FieldMismatch {
                    left: f,
                    right: s.field(),
                });
            }
        }
        Ok(Vector3 { coords: [x, y, z] })
    }

    /// Basis vector `e_i`, 1-based.
    pub fn basis(field: FieldDescriptor, i: usize) -> Result<Self> {
        if !(1..=3).contains(&i) {
            return Err(Error::IndexOutOfRange { row: i, col: 1, n: 3 });
        }
        let mut coords = [field.zero(), field.zero(), field.zero()];
        coords[i - 1] = field.one();
        Ok(Vector3 { coords })
    }

    pub fn zero(field: FieldDescriptor) -> Self {
        Vector3 {
            coords: [field.zero(), field.zero(), field.zero()],
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.coords[0].field()
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.coords
    }

    pub fn add(&self, other: &Vector3) -> Vector3 {
        Vector3 {
            coords: std::array::from_fn(|i| &self.coords[i] + &other.coords[i]),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector3 {
        Vector3 {
            coords: std::array::from_fn(|i| c * &self.coords[i]),
        }
    }

    pub fn neg(&self) -> Vector3 {
        Vector3 {
            coords: std::array::from_fn(|i| -&self.coords[i]),
        }
    }
}

impl ZeropotentAlgebra3 {
    pub fn new(structure: Matrix) -> Result<Self> {
        if structure.n() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: structure.n(),
            });
        }
        Ok(ZeropotentAlgebra3 { structure })
    }

    pub fn structure(&self) -> &Matrix {
        &self.structure
    }

    pub fn field(&self) -> FieldDescriptor {
        self.structure.field()
    }

    /// `x·y`: the cross-pattern vector `w` of `x` and `y` times the structure
    /// matrix, `w·A`.
    pub fn product(&self, x: &Vector3, y: &Vector3) -> Result<Vector3> {
        let f = self.field();
        for v in [x, y] {
            if v.field() != f {
                return Err(Error::FieldMismatch {
                    left: f,
                    right: v.field(),
                });
            }
        }
        let [x1, x2, x3] = &x.coords;
        let [y1, y2, y3] = &y.coords;
        let w = [x2 * y3 - x3 * y2, x3 * y1 - x1 * y3, x1 * y2 - x2 * y1];
        let a = &self.structure;
        let coords = std::array::from_fn(|j| {
            (0..3).fold(f.zero(), |acc, k| acc + &w[k] * a.at(k, j))
        });
        Ok(Vector3 { coords })
    }

    /// `σ` of the structure matrix; rank < 3 algebras have none.
    pub fn sigma(&self) -> Result<Scalar> {
        sigma(&self.structure)
    }
}

pub fn sigma_of_algebra(alg: &ZeropotentAlgebra3) -> Result<Scalar> {
    alg.sigma()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsomorphismResult {
    pub isomorphic: bool,
    /// The first `X` in lexicographic enumeration order of GL(3, p) with
    /// `B = |X|⁻¹·ᵗX·A·X`.
    pub witness: Option<Matrix>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IsoOptions {
    pub limits: Limits,
    pub strategy: Strategy,
}

pub fn is_isomorphic_bruteforce(
    a: &ZeropotentAlgebra3,
    b: &ZeropotentAlgebra3,
) -> Result<IsomorphismResult> {
    is_isomorphic_bruteforce_with(a, b, &IsoOptions::default())
}

/// Exhaustive search over GL(3, p) for an isomorphism witness.
pub fn is_isomorphic_bruteforce_with(
    a: &ZeropotentAlgebra3,
    b: &ZeropotentAlgebra3,
    opts: &IsoOptions,
) -> Result<IsomorphismResult> {
    let field = a.field();
    if b.field() != field {
        return Err(Error::FieldMismatch {
            left: field,
            right: b.field(),
        });
    }
    let Some(p) = field.modulus() else {
        return Err(Error::UnsupportedField {
            field,
            reason: "brute-force isomorphism needs a finite field".into(),
        });
    };
    let f = opts.limits.check(3, p as u64).map_err(|e| match e {
        Error::CapExceeded(reason) => Error::UnsupportedField { field, reason },
        other => other,
    })?;
    let sa = f.lower(&a.structure);
    let sb = f.lower(&b.structure);
    let hit = opts.strategy.find_first_in_range(0..f.code_count(), |code| {
        let x = f.decode(code);
        let d = f.det(&x);
        d != 0 && f.scale(&f.congruence(&sa, &x), f.inv_scalar(d)) == sb
    });
    let witness = hit.map(|code| f.lift(&f.decode(code)));
    if let Some(x) = &witness {
        debug_assert_eq!(&scaled_congruence_transform(&a.structure, x)?, b.structure());
    }
    Ok(IsomorphismResult {
        isomorphic: witness.is_some(),
        witness,
    })
}
