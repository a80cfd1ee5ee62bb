//! Property checks for `σ` and seeded fuzzing over them.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::exec::Strategy;
use crate::field::{FieldDescriptor, Scalar};
use crate::invariant::{congruence_transform, scaled_congruence_transform, sigma, sigma_all_modes};
use crate::matrix::Matrix;
use crate::random::{
    random_nonsingular_with, random_nonzero_scalar, random_symmetric_nonsingular, trial_rng,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// The three σ formulas agree.
    ModeAgreement,
    /// σ(ᵗXAX) = σ(A).
    CongruenceInvariance,
    /// σ(|X|⁻¹ᵗXAX) = σ(A).
    ScaledCongruenceInvariance,
    /// σ(ᵗA) = σ(A).
    Transpose,
    /// σ(A⁻¹) = σ(A).
    Inverse,
    /// σ(adj A) = σ(A).
    Adjugate,
    /// σ(cA) = σ(A) for c ≠ 0.
    ScalarMultiple,
    /// σ(S) = n for symmetric S.
    Symmetric,
    /// σ(ᵗXAX)² + 1 = σ(A)² + 1.
    PolynomialOfSigma,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        write!(f, "{}", s.as_str().expect("string"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub property: Property,
    /// `None` when the property does not apply to the input.
    pub holds: Option<bool>,
    pub lhs: Option<Scalar>,
    pub rhs: Option<Scalar>,
}

impl PropertyCheck {
    fn compare(property: Property, lhs: Scalar, rhs: Scalar) -> Self {
        PropertyCheck {
            property,
            holds: Some(lhs == rhs),
            lhs: Some(lhs),
            rhs: Some(rhs),
        }
    }

    fn skipped(property: Property) -> Self {
        PropertyCheck {
            property,
            holds: None,
            lhs: None,
            rhs: None,
        }
    }

    pub fn failed(&self) -> bool {
        self.holds == Some(false)
    }
}

/// Checks that all three σ formulas agree on `a`, returning the common value.
pub fn check_modes(a: &Matrix) -> Result<(Scalar, PropertyCheck)> {
    let [t, c, d] = sigma_all_modes(a)?;
    let agree = t == c && c == d;
    let check = PropertyCheck {
        property: Property::ModeAgreement,
        holds: Some(agree),
        lhs: Some(t.clone()),
        rhs: Some(if t == c { d } else { c }),
    };
    Ok((t, check))
}

/// The transpose, inverse, adjugate and scalar-multiple identities on a
/// nonsingular `a`, plus the symmetric identity when `a` is symmetric.
pub fn prop1_checks(a: &Matrix, c: &Scalar) -> Result<Vec<PropertyCheck>> {
    let s = sigma(a)?;
    let mut checks = vec![
        PropertyCheck::compare(Property::Transpose, sigma(&a.transpose())?, s.clone()),
        PropertyCheck::compare(Property::Inverse, sigma(&a.inverse()?)?, s.clone()),
        PropertyCheck::compare(Property::Adjugate, sigma(&a.adjugate())?, s.clone()),
        PropertyCheck::compare(Property::ScalarMultiple, sigma(&a.scale(c)?)?, s.clone()),
    ];
    checks.push(symmetric_check(a, &s));
    Ok(checks)
}

fn symmetric_check(a: &Matrix, s: &Scalar) -> PropertyCheck {
    if a.is_symmetric() {
        PropertyCheck::compare(Property::Symmetric, s.clone(), a.field().int(a.n() as i64))
    } else {
        PropertyCheck::skipped(Property::Symmetric)
    }
}

/// Invariance checks for one pair `(A, X)`.
pub fn congruence_checks(a: &Matrix, x: &Matrix) -> Result<Vec<PropertyCheck>> {
    let (sa, ma) = check_modes(a)?;
    let b = congruence_transform(a, x)?;
    let (sb, mb) = check_modes(&b)?;
    let scaled = sigma(&scaled_congruence_transform(a, x)?)?;
    let poly = |s: &Scalar| s.square() + s.field().one();
    Ok(vec![
        ma,
        mb,
        PropertyCheck::compare(Property::CongruenceInvariance, sb.clone(), sa.clone()),
        PropertyCheck::compare(Property::ScaledCongruenceInvariance, scaled, sa.clone()),
        PropertyCheck::compare(Property::PolynomialOfSigma, poly(&sb), poly(&sa)),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuzzConfig {
    pub n: usize,
    pub count: u64,
    pub seed: u64,
    pub field: FieldDescriptor,
    /// Entry bound over Q.
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzFailure {
    pub trial: u64,
    pub property: Property,
    pub a: Matrix,
    pub x: Option<Matrix>,
    pub lhs: Option<Scalar>,
    pub rhs: Option<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub field: FieldDescriptor,
    pub n: usize,
    pub count: u64,
    pub seed: u64,
    pub bound: u64,
    pub checks: u64,
    pub violations: u64,
    pub first_failure: Option<FuzzFailure>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

struct TrialOutcome {
    checks: u64,
    violations: u64,
    first: Option<FuzzFailure>,
}

/// One fuzz trial: a random nonsingular `A`, transform `X`, nonzero `c` and
/// symmetric `S`, all drawn from the stream for `(seed, trial)`.
fn fuzz_trial(cfg: &FuzzConfig, trial: u64) -> Result<TrialOutcome> {
    let mut rng = trial_rng(cfg.seed, trial);
    let a = random_nonsingular_with(&mut rng, cfg.n, cfg.field, cfg.bound);
    let x = random_nonsingular_with(&mut rng, cfg.n, cfg.field, cfg.bound);
    let c = random_nonzero_scalar(&mut rng, cfg.field, cfg.bound);
    let sym = random_symmetric_nonsingular(&mut rng, cfg.n, cfg.field, cfg.bound);

    let mut rows: Vec<(PropertyCheck, Matrix, Option<Matrix>)> = Vec::new();
    for ch in congruence_checks(&a, &x)? {
        rows.push((ch, a.clone(), Some(x.clone())));
    }
    for ch in prop1_checks(&a, &c)? {
        if ch.property != Property::Symmetric {
            rows.push((ch, a.clone(), None));
        }
    }
    let ssig = sigma(&sym)?;
    rows.push((symmetric_check(&sym, &ssig), sym.clone(), None));

    let mut out = TrialOutcome {
        checks: 0,
        violations: 0,
        first: None,
    };
    for (ch, m, x) in rows {
        if ch.holds.is_none() {
            continue;
        }
        out.checks += 1;
        if ch.failed() {
            out.violations += 1;
            if out.first.is_none() {
                out.first = Some(FuzzFailure {
                    trial,
                    property: ch.property,
                    a: m,
                    x,
                    lhs: ch.lhs,
                    rhs: ch.rhs,
                });
            }
        }
    }
    Ok(out)
}

pub fn fuzz(cfg: &FuzzConfig) -> Result<FuzzReport> {
    fuzz_with(cfg, Strategy::default())
}

/// Runs `cfg.count` independent trials. The report depends only on `cfg`.
pub fn fuzz_with(cfg: &FuzzConfig, strategy: Strategy) -> Result<FuzzReport> {
    crate::matrix::Matrix::identity(cfg.field, cfg.n)?;
    let outcomes = strategy.map_range(0..cfg.count, |t| fuzz_trial(cfg, t));
    let mut report = FuzzReport {
        field: cfg.field,
        n: cfg.n,
        count: cfg.count,
        seed: cfg.seed,
        bound: cfg.bound,
        checks: 0,
        violations: 0,
        first_failure: None,
    };
    for o in outcomes {
        let o = o?;
        report.checks += o.checks;
        report.violations += o.violations;
        if report.first_failure.is_none() {
            report.first_failure = o.first;
        }
    }
    Ok(report)
}
