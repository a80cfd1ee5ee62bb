//! Exact scalar arithmetic over the rationals and over prime fields GF(p).
//!
//! Both families sit behind one [`Scalar`] type. Every scalar knows which
//! field it lives in, so mixing fields is detected rather than silently
//! coerced. The checked entry points ([`scalar_arith`], [`Scalar::try_add`]
//! and friends) report mismatches as errors; the `std::ops` impls panic on
//! them, the same way slice indexing panics on a bad index. Matrix code,
//! which guarantees a single field per matrix, uses the operators.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted for GF(p) (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Prime,
}

/// Which exact field a scalar or matrix lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldDoc", into = "FieldDoc")]
pub struct FieldDescriptor {
    modulus: Option<u32>,
}

impl FieldDescriptor {
    pub const fn rational() -> Self {
        FieldDescriptor { modulus: None }
    }

    /// GF(p). Fails unless `p` is a prime below 2^31.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(FieldDescriptor {
            modulus: Some(p as u32),
        })
    }

    pub fn kind(&self) -> FieldKind {
        match self.modulus {
            None => FieldKind::Rational,
            Some(_) => FieldKind::Prime,
        }
    }

    pub fn modulus(&self) -> Option<u32> {
        self.modulus
    }

    pub fn characteristic(&self) -> u32 {
        self.modulus.unwrap_or(0)
    }

    pub fn is_rational(&self) -> bool {
        self.modulus.is_none()
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(*self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(*self)
    }

    pub fn int(&self, v: i64) -> Scalar {
        Scalar::from_i64(*self, v)
    }

    /// Parses a field name as accepted on the command line:
    /// `rational` (or `q`), `gf<p>`, `gf(<p>)`, `prime:<p>` or `p<p>`.
    pub fn parse_name(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "rational" || t == "q" || t == "rationals" {
            return Ok(Self::rational());
        }
        let digits = t
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("gf"))
            .or_else(|| t.strip_prefix("prime:"))
            .or_else(|| t.strip_prefix('p'))
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field {s:?}")))?;
        Self::prime(p)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "Q"),
            Some(p) => write!(f, "GF({p})"),
        }
    }
}

/// Wire form of a field: `{"kind":"rational"}` or `{"kind":"prime","p":5}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldDoc {
    Rational,
    Prime { p: u64 },
}

impl TryFrom<FieldDoc> for FieldDescriptor {
    type Error = Error;

    fn try_from(doc: FieldDoc) -> Result<Self> {
        match doc {
            FieldDoc::Rational => Ok(FieldDescriptor::rational()),
            FieldDoc::Prime { p } => FieldDescriptor::prime(p),
        }
    }
}

impl From<FieldDescriptor> for FieldDoc {
    fn from(d: FieldDescriptor) -> Self {
        match d.modulus {
            None => FieldDoc::Rational,
            Some(p) => FieldDoc::Prime { p: p as u64 },
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Prime { value: u32, p: u32 },
}

/// One exact field element.
///
/// Rationals are kept normalized (`gcd(|num|, den) = 1`, `den > 0`); prime
/// field elements store their residue in `[0, p)`. Equality is structural and
/// therefore exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// Checked arithmetic. Binary ops require `y`; unary ops ignore it.
pub fn scalar_arith(op: ArithOp, x: &Scalar, y: Option<&Scalar>) -> Result<Scalar> {
    let rhs = || y.ok_or_else(|| Error::Parse(format!("{op:?} needs two operands")));
    match op {
        ArithOp::Add => x.try_add(rhs()?),
        ArithOp::Sub => x.try_sub(rhs()?),
        ArithOp::Mul => x.try_mul(rhs()?),
        ArithOp::Div => x.try_div(rhs()?),
        ArithOp::Neg => Ok(-x),
        ArithOp::Inv => x.inv(),
    }
}

#[inline]
fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i64) as u32
}

fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn zero(field: FieldDescriptor) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: FieldDescriptor) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldDescriptor, v: i64) -> Self {
        match field.modulus {
            None => Scalar(Repr::Rational(BigRational::from_integer(v.into()))),
            Some(p) => Scalar(Repr::Prime {
                value: v.rem_euclid(p as i64) as u32,
                p,
            }),
        }
    }

    pub fn from_bigint(field: FieldDescriptor, v: BigInt) -> Self {
        match field.modulus {
            None => Scalar(Repr::Rational(BigRational::from_integer(v))),
            Some(p) => {
                let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Scalar(Repr::Prime {
                    value: u32::try_from(r).expect("residue below modulus"),
                    p,
                })
            }
        }
    }

    /// The rational `num/den`, normalized.
    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(Repr::Rational(BigRational::new(num.into(), den))))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar(Repr::Rational(q))
    }

    /// Residue `value mod p` in GF(p).
    pub fn residue(field: FieldDescriptor, value: u64) -> Self {
        match field.modulus {
            None => Self::from_bigint(field, value.into()),
            Some(p) => Scalar(Repr::Prime {
                value: (value % p as u64) as u32,
                p,
            }),
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        match &self.0 {
            Repr::Rational(_) => FieldDescriptor::rational(),
            Repr::Prime { p, .. } => FieldDescriptor { modulus: Some(*p) },
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_zero(),
            Repr::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_one(),
            Repr::Prime { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            Repr::Prime { .. } => None,
        }
    }

    /// Residue in `[0, p)` for prime-field scalars.
    pub fn as_residue(&self) -> Option<u32> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Prime { value, .. } => Some(*value),
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<()> {
        let (l, r) = (self.field(), other.field());
        if l == r {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: l, right: r })
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self * other)
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(q) => Scalar(Repr::Rational(q.recip())),
            Repr::Prime { value, p } => Scalar(Repr::Prime {
                value: inv_mod(*value, *p),
                p: *p,
            }),
        })
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        match &self.0 {
            Repr::Rational(q) => Scalar(Repr::Rational(num_traits::pow(q.clone(), exp as usize))),
            Repr::Prime { value, p } => Scalar(Repr::Prime {
                value: pow_mod(*value, exp as u64, *p),
                p: *p,
            }),
        }
    }

    /// Parses the text grammar of [`fmt::Display`] for the given field:
    /// `n` or `n/d` over Q, a decimal integer over GF(p) (reduced mod p).
    pub fn parse(field: FieldDescriptor, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let err = || Error::Parse(format!("invalid scalar {s:?} for {field}"));
        fn integer(t: &str) -> Option<BigInt> {
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            BigInt::from_str(t).ok()
        }
        match field.modulus {
            None => match t.split_once('/') {
                None => integer(t).map(|n| Scalar::from_bigint(field, n)).ok_or_else(err),
                Some((n, d)) => {
                    if !d.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(err());
                    }
                    let n = integer(n).ok_or_else(err)?;
                    let d = integer(d).ok_or_else(err)?;
                    Scalar::ratio(n, d)
                }
            },
            Some(_) => integer(t).map(|n| Scalar::from_bigint(field, n)).ok_or_else(err),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Repr::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Repr::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $rat:expr, $prime:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (&self.0, &rhs.0) {
                    (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational($rat(a, b))),
                    (Repr::Prime { value: a, p }, Repr::Prime { value: b, p: q }) if p == q => {
                        Scalar(Repr::Prime {
                            value: $prime(*a, *b, *p),
                            p: *p,
                        })
                    }
                    _ => panic!(
                        "scalar field mismatch: {} vs {}",
                        self.field(),
                        rhs.field()
                    ),
                }
            }
        }

        impl $tr<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(
    Add,
    add,
    |a: &BigRational, b: &BigRational| a + b,
    add_mod
);
binop!(
    Sub,
    sub,
    |a: &BigRational, b: &BigRational| a - b,
    sub_mod
);
binop!(
    Mul,
    mul,
    |a: &BigRational, b: &BigRational| a * b,
    mul_mod
);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rational(q) => Scalar(Repr::Rational(-q)),
            Repr::Prime { value, p } => Scalar(Repr::Prime {
                value: (p - value) % p,
                p: *p,
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

/// All square roots of `d` inside its own field (0, 1 or 2 of them),
/// in ascending order: by value over Q, by residue over GF(p).
pub fn sqrt_in_field(d: &Scalar) -> Vec<Scalar> {
    if d.is_zero() {
        return vec![d.clone()];
    }
    match &d.0 {
        Repr::Rational(q) => {
            if q.is_negative() {
                return vec![];
            }
            let (n, m) = (q.numer(), q.denom());
            let (rn, rm) = (n.sqrt(), m.sqrt());
            if &(&rn * &rn) != n || &(&rm * &rm) != m {
                return vec![];
            }
            let r = BigRational::new(rn, rm);
            vec![Scalar(Repr::Rational(-r.clone())), Scalar(Repr::Rational(r))]
        }
        Repr::Prime { value, p } => {
            let Some(r) = tonelli_shanks(*value, *p) else {
                return vec![];
            };
            let s = (p - r) % p;
            let mut roots = vec![r.min(s), r.max(s)];
            roots.dedup();
            roots
                .into_iter()
                .map(|value| Scalar(Repr::Prime { value, p: *p }))
                .collect()
        }
    }
}

/// A square root of the nonzero residue `n` mod `p`, if one exists.
fn tonelli_shanks(n: u32, p: u32) -> Option<u32> {
    if p == 2 {
        return Some(n);
    }
    let half = (p as u64 - 1) / 2;
    if pow_mod(n, half, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p as u64 - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, half, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}
