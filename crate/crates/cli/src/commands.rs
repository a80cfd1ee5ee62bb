use std::fs;
use std::io::Read;
use std::path::Path;

use congruence_core::invariant::sigma_all_modes;
use congruence_core::orbit::{
    congruence_orbits_with, explore_reduction_with, Limits, OrbitOptions, ReductionMode,
};
use congruence_core::verify::{fuzz_with, prop1_checks, FuzzConfig, PropertyCheck};
use congruence_core::zeropotent::{is_isomorphic_bruteforce_with, IsoOptions};
use congruence_core::{
    canonical_form, d_invariant, kappa, kappa_explicit, sigma, Error, FieldDescriptor, Matrix,
    Scalar, Strategy, ZeropotentAlgebra3,
};
use serde::Serialize;
use serde_json::json;

use crate::Command;

pub struct Outcome {
    pub report: String,
    pub violation: bool,
}

impl Outcome {
    fn new(report: impl Serialize, violation: bool) -> Self {
        Outcome {
            report: serde_json::to_string_pretty(&report).expect("report serializes"),
            violation,
        }
    }
}

type CmdResult = Result<Outcome, Error>;

fn read_matrix(path: &Path) -> Result<Matrix, Error> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
    };
    Matrix::from_json(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn run(command: Command, strategy: Strategy) -> CmdResult {
    match command {
        Command::Sigma { file } => sigma_cmd(&read_matrix(&file)?),
        Command::Props { file, scalar } => props_cmd(&read_matrix(&file)?, scalar.as_deref()),
        Command::Kappa { file } => kappa_cmd(&read_matrix(&file)?),
        Command::Canon { a, b, c, field } => canon_cmd(&a, &b, &c, &field),
        Command::Fuzz {
            n,
            count,
            seed,
            field,
            bound,
        } => {
            let cfg = FuzzConfig {
                n,
                count,
                seed,
                field: FieldDescriptor::parse_name(&field)?,
                bound,
            };
            let report = fuzz_with(&cfg, strategy)?;
            if let Some(f) = &report.first_failure {
                eprintln!(
                    "violation: trial {} property {} A = {} X = {}",
                    f.trial,
                    f.property,
                    f.a,
                    f.x.as_ref().map_or("-".to_string(), Matrix::to_string)
                );
            }
            let violation = !report.passed();
            Ok(Outcome::new(report, violation))
        }
        Command::Orbits { n, p, allow_p7 } => {
            let opts = OrbitOptions {
                limits: limits(allow_p7),
                strategy,
            };
            let report = congruence_orbits_with(n, p, &opts)?;
            let violation = !report.is_clean();
            Ok(Outcome::new(report, violation))
        }
        Command::Iso {
            file_a,
            file_b,
            p,
            allow_p7,
        } => {
            let (a, b) = (read_matrix(&file_a)?, read_matrix(&file_b)?);
            iso_cmd(a, b, p, limits(allow_p7), strategy)
        }
        Command::ExploreReduction { p, sample, seed } => {
            let mode = match sample {
                Some(count) => ReductionMode::Sample { count, seed },
                None => ReductionMode::All,
            };
            let report = explore_reduction_with(p, mode, strategy)?;
            let violation = !report.all_witnesses_valid;
            Ok(Outcome::new(report, violation))
        }
    }
}

fn limits(allow_p7: bool) -> Limits {
    if allow_p7 {
        Limits::EXTENDED
    } else {
        Limits::DEFAULT
    }
}

fn sigma_cmd(a: &Matrix) -> CmdResult {
    let [t, c, d] = sigma_all_modes(a)?;
    let agree = t == c && c == d;
    Ok(Outcome::new(
        json!({
            "field": a.field(),
            "n": a.n(),
            "trace_form": t,
            "cofactor_form": c,
            "adjugate_form": d,
            "agree": agree,
        }),
        !agree,
    ))
}

fn props_cmd(a: &Matrix, scalar: Option<&str>) -> CmdResult {
    let field = a.field();
    let c = match scalar {
        Some(s) => Scalar::parse(field, s)?,
        None if field.characteristic() == 2 => field.one(),
        None => field.int(2),
    };
    if c.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let checks = prop1_checks(a, &c)?;
    let passed = !checks.iter().any(PropertyCheck::failed);
    Ok(Outcome::new(
        json!({
            "field": field,
            "n": a.n(),
            "sigma": sigma(a)?,
            "scalar": c,
            "checks": checks,
            "passed": passed,
        }),
        !passed,
    ))
}

fn kappa_cmd(a: &Matrix) -> CmdResult {
    let k = kappa(a)?;
    let e = kappa_explicit(a)?;
    let agree = k == e;
    Ok(Outcome::new(
        json!({
            "field": a.field(),
            "kappa": k,
            "kappa_explicit": e,
            "agree": agree,
        }),
        !agree,
    ))
}

fn canon_cmd(a: &str, b: &str, c: &str, field: &str) -> CmdResult {
    let f = FieldDescriptor::parse_name(field)?;
    let (a, b, c) = (Scalar::parse(f, a)?, Scalar::parse(f, b)?, Scalar::parse(f, c)?);
    let m = canonical_form(&a, &b, &c)?;
    let d = d_invariant(&a, &b, &c)?;
    Ok(Outcome::new(json!({ "matrix": m, "D": d }), false))
}

fn iso_cmd(a: Matrix, b: Matrix, p: Option<u64>, limits: Limits, strategy: Strategy) -> CmdResult {
    let (a, b) = match p {
        Some(p) => {
            let f = FieldDescriptor::prime(p)?;
            (a.reduce_into(f)?, b.reduce_into(f)?)
        }
        None => (a, b),
    };
    let (a, b) = (ZeropotentAlgebra3::new(a)?, ZeropotentAlgebra3::new(b)?);
    let result = is_isomorphic_bruteforce_with(&a, &b, &IsoOptions { limits, strategy })?;
    Ok(Outcome::new(
        json!({
            "field": a.field(),
            "isomorphic": result.isomorphic,
            "witness": result.witness,
            "sigma_a": a.sigma().ok(),
            "sigma_b": b.sigma().ok(),
        }),
        false,
    ))
}
