//! Exhaustive checks over GL(n, p) for small n and p.
//!
//! [`congruence_orbits`] splits GL(n, p) into orbits of `A ↦ ᵗX·A·X` by
//! seed-and-close: the smallest unvisited matrix (in enumeration order) seeds
//! an orbit, every `X` in GL(n, p) is applied to it, and all images are
//! marked. Each member's `σ` is then recomputed with the generic exact
//! arithmetic and compared against its orbit's representative.
//!
//! [`explore_reduction`] searches, for canonical forms `A(a, b, c)` over
//! GF(p), for an `X` with `ᵗX·A(a, b, c)·X = A(s, 0, 0)` where `s² = D`.
//! It reports what it finds and asserts nothing about how often.

use rand::seq::index::sample;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::field::{sqrt_in_field, FieldDescriptor, Scalar};
use crate::gfp::{Small, SmallField, MAX_SMALL_N};
use crate::invariant::{canonical_form, congruence_transform, d_invariant, sigma};
use crate::matrix::Matrix;
use crate::random::trial_rng;

/// Largest modulus ever accepted by the exhaustive routines.
pub const HARD_MAX_P: u32 = 7;
/// Default modulus cap for orbit and isomorphism searches.
pub const DEFAULT_MAX_P: u32 = 5;
/// Modulus cap for [`explore_reduction`].
pub const REDUCTION_MAX_P: u32 = 5;

/// Caps for the exhaustive routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
    pub max_p: u32,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        max_n: MAX_SMALL_N,
        max_p: DEFAULT_MAX_P,
    };

    /// Raises the modulus cap to [`HARD_MAX_P`].
    pub const EXTENDED: Limits = Limits {
        max_n: MAX_SMALL_N,
        max_p: HARD_MAX_P,
    };

    pub(crate) fn check(&self, n: usize, p: u64) -> Result<SmallField> {
        if n == 0 || n > self.max_n.min(MAX_SMALL_N) {
            return Err(Error::CapExceeded(format!(
                "n = {n} outside 1..={}",
                self.max_n.min(MAX_SMALL_N)
            )));
        }
        if p > self.max_p.min(HARD_MAX_P) as u64 {
            return Err(Error::CapExceeded(format!(
                "p = {p} above the cap {}",
                self.max_p.min(HARD_MAX_P)
            )));
        }
        let field = FieldDescriptor::prime(p)?;
        Ok(SmallField::new(n, field.modulus().expect("prime")))
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::DEFAULT
    }
}

/// `|GL(n, p)| = ∏_{k<n} (pⁿ − pᵏ)`.
pub fn gl_order(n: usize, p: u64) -> u64 {
    let q = p.pow(n as u32);
    (0..n as u32).map(|k| q - p.pow(k)).product()
}

/// Every nonsingular n×n matrix over GF(p), once each, in lexicographic
/// order of row-major entries. `n ≤ 3`, `p ≤ 7`.
pub fn enumerate_gl(n: usize, p: u64) -> Result<impl Iterator<Item = Matrix>> {
    let f = Limits::EXTENDED.check(n, p)?;
    Ok((0..f.code_count()).filter_map(move |code| {
        let m = f.decode(code);
        (f.det(&m) != 0).then(|| f.lift(&m))
    }))
}

/// Codes of GL(n, p) in ascending order.
pub(crate) fn gl_codes(f: &SmallField, strategy: Strategy) -> Vec<u64> {
    strategy.filter_range(0..f.code_count(), |c| f.is_invertible_code(c))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OrbitOptions {
    pub limits: Limits,
    pub strategy: Strategy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: Matrix,
    pub size: u64,
    pub sigma: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaViolation {
    pub orbit: usize,
    pub member: Matrix,
    pub expected: Scalar,
    pub found: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub field: FieldDescriptor,
    pub n: usize,
    pub matrix_count: u64,
    pub orbit_count: usize,
    pub orbits: Vec<Orbit>,
    pub violations: Vec<SigmaViolation>,
}

impl OrbitReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn congruence_orbits(n: usize, p: u64) -> Result<OrbitReport> {
    congruence_orbits_with(n, p, &OrbitOptions::default())
}

pub fn congruence_orbits_with(n: usize, p: u64, opts: &OrbitOptions) -> Result<OrbitReport> {
    let f = opts.limits.check(n, p)?;
    let strategy = opts.strategy;
    let gl = gl_codes(&f, strategy);
    let gl_small: Vec<Small> = gl.iter().map(|&c| f.decode(c)).collect();

    const UNSEEN: u32 = u32::MAX;
    let mut orbit_of = vec![UNSEEN; f.code_count() as usize];
    let mut seeds: Vec<(u64, u64)> = Vec::new();
    for &seed in &gl {
        if orbit_of[seed as usize] != UNSEEN {
            continue;
        }
        let id = seeds.len() as u32;
        let a = f.decode(seed);
        let images = strategy.map_slice(&gl_small, |x| f.encode(&f.congruence(&a, x)));
        let mut size = 0;
        for img in images {
            let slot = &mut orbit_of[img as usize];
            if *slot == UNSEEN {
                *slot = id;
                size += 1;
            } else {
                debug_assert_eq!(*slot, id, "orbits overlap");
            }
        }
        seeds.push((seed, size));
    }

    let sigmas: Vec<Scalar> = strategy.map_slice(&gl_small, |m| {
        sigma(&f.lift(m)).expect("GL members are nonsingular")
    });
    let orbits: Vec<Orbit> = seeds
        .iter()
        .map(|&(seed, size)| {
            let idx = gl.binary_search(&seed).expect("seed is in GL");
            Orbit {
                representative: f.lift(&gl_small[idx]),
                size,
                sigma: sigmas[idx].clone(),
            }
        })
        .collect();
    let mut violations = Vec::new();
    for ((&code, m), s) in gl.iter().zip(&gl_small).zip(&sigmas) {
        let id = orbit_of[code as usize] as usize;
        if *s != orbits[id].sigma {
            violations.push(SigmaViolation {
                orbit: id,
                member: f.lift(m),
                expected: orbits[id].sigma.clone(),
                found: s.clone(),
            });
        }
    }

    Ok(OrbitReport {
        field: f.descriptor(),
        n,
        matrix_count: gl.len() as u64,
        orbit_count: orbits.len(),
        orbits,
        violations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionMode {
    All,
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionStatus {
    /// `D = 0`.
    ExcludedDZero,
    /// `a² + b² − abc = 0`.
    ExcludedCondition,
    /// `D` has no square root in GF(p).
    NoSquareRoot,
    Found,
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionOutcome {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    #[serde(rename = "D")]
    pub d: Scalar,
    pub roots: Vec<Scalar>,
    pub status: ReductionStatus,
    pub found: bool,
    /// The root `s` of the reached target `A(s, 0, 0)`.
    pub target_root: Option<Scalar>,
    pub witness: Option<Matrix>,
    /// Whether `ᵗX·A(a, b, c)·X = A(s, 0, 0)` holds when recomputed with
    /// generic arithmetic. Present iff a witness was found.
    pub witness_valid: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub field: FieldDescriptor,
    pub mode: String,
    pub seed: Option<u64>,
    pub triples_examined: usize,
    pub found: usize,
    pub not_found: usize,
    pub excluded: usize,
    pub no_square_root: usize,
    pub all_witnesses_valid: bool,
    pub outcomes: Vec<ReductionOutcome>,
}

pub fn explore_reduction(p: u64, mode: ReductionMode) -> Result<ReductionReport> {
    explore_reduction_with(p, mode, Strategy::default())
}

pub fn explore_reduction_with(
    p: u64,
    mode: ReductionMode,
    strategy: Strategy,
) -> Result<ReductionReport> {
    let limits = Limits {
        max_n: 3,
        max_p: REDUCTION_MAX_P,
    };
    let f = limits.check(3, p)?;
    let field = f.descriptor();
    let total = (p * p * p) as usize;
    let indices: Vec<usize> = match mode {
        ReductionMode::All => (0..total).collect(),
        ReductionMode::Sample { count, seed } => {
            let mut rng = trial_rng(seed, 0);
            sample(&mut rng, total, count.min(total)).into_vec()
        }
    };
    let gl = gl_codes(&f, strategy);
    let gl_small: Vec<Small> = gl.iter().map(|&c| f.decode(c)).collect();

    let mut outcomes = Vec::with_capacity(indices.len());
    for idx in indices {
        let t = idx as u64;
        let (a, b, c) = (
            Scalar::residue(field, t / (p * p)),
            Scalar::residue(field, (t / p) % p),
            Scalar::residue(field, t % p),
        );
        outcomes.push(explore_triple(&f, &gl_small, strategy, a, b, c)?);
    }

    let count = |s: ReductionStatus| outcomes.iter().filter(|o| o.status == s).count();
    Ok(ReductionReport {
        field,
        mode: match mode {
            ReductionMode::All => "all".into(),
            ReductionMode::Sample { .. } => "sample".into(),
        },
        seed: match mode {
            ReductionMode::All => None,
            ReductionMode::Sample { seed, .. } => Some(seed),
        },
        triples_examined: outcomes.len(),
        found: count(ReductionStatus::Found),
        not_found: count(ReductionStatus::NotFound),
        excluded: count(ReductionStatus::ExcludedDZero) + count(ReductionStatus::ExcludedCondition),
        no_square_root: count(ReductionStatus::NoSquareRoot),
        all_witnesses_valid: outcomes.iter().all(|o| o.witness_valid != Some(false)),
        outcomes,
    })
}

fn explore_triple(
    f: &SmallField,
    gl: &[Small],
    strategy: Strategy,
    a: Scalar,
    b: Scalar,
    c: Scalar,
) -> Result<ReductionOutcome> {
    let d = d_invariant(&a, &b, &c)?;
    let roots = sqrt_in_field(&d);
    let mut out = ReductionOutcome {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        d: d.clone(),
        roots: roots.clone(),
        status: ReductionStatus::NotFound,
        found: false,
        target_root: None,
        witness: None,
        witness_valid: None,
    };
    if d.is_zero() {
        out.status = ReductionStatus::ExcludedDZero;
        return Ok(out);
    }
    if (a.square() + b.square() - &a * &(&b * &c)).is_zero() {
        out.status = ReductionStatus::ExcludedCondition;
        return Ok(out);
    }
    if roots.is_empty() {
        out.status = ReductionStatus::NoSquareRoot;
        return Ok(out);
    }

    let zero = f.descriptor().zero();
    let source = canonical_form(&a, &b, &c)?;
    let targets: Vec<(Scalar, Matrix)> = roots
        .iter()
        .map(|s| Ok((s.clone(), canonical_form(s, &zero, &zero)?)))
        .collect::<Result<_>>()?;
    let target_small: Vec<Small> = targets.iter().map(|(_, t)| f.lower(t)).collect();
    let src = f.lower(&source);
    let hit = strategy.position_first(gl, |x| target_small.contains(&f.congruence(&src, x)));
    if let Some(pos) = hit {
        let image = f.congruence(&src, &gl[pos]);
        let (s, target) = &targets[target_small.iter().position(|t| *t == image).expect("hit")];
        let x = f.lift(&gl[pos]);
        let valid = congruence_transform(&source, &x)? == *target;
        out.status = ReductionStatus::Found;
        out.found = true;
        out.target_root = Some(s.clone());
        out.witness = Some(x);
        out.witness_valid = Some(valid);
    }
    Ok(out)
}
