//! JSON serialization of types and reports. Big integers are decimal
//! strings, rationals are "a/b" in lowest terms, and objects use sorted
//! keys, so equal inputs give byte-identical output.

use crate::arith::{IntPoly, Prime};
use crate::error::{Error, Result};
use crate::ff::{FFElem, FFPoly, FieldHandle};
use crate::invariants::InvariantReport;
use crate::lifting::LiftedFactorization;
use crate::montes::{MontesOutput, OMRep, Witness};
use crate::omtype::OMType;
use crate::polygon::Slope;
use num_bigint::{BigInt, BigUint};
use num_rational::Rational64;
use serde_json::{json, Value};
use std::str::FromStr;

pub fn intpoly_to_json(f: &IntPoly) -> Value {
    Value::Array(
        f.coeffs()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

pub fn intpoly_from_json(v: &Value) -> Result<IntPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Invalid("expected a coefficient array".into()))?;
    let mut coeffs = vec![];
    for c in arr {
        let s = c
            .as_str()
            .ok_or_else(|| Error::Invalid("coefficients must be decimal strings".into()))?;
        coeffs.push(
            BigInt::from_str(s).map_err(|e| Error::Invalid(format!("bad integer: {e}")))?,
        );
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

fn ffelem_from_json(field: &FieldHandle, v: &Value) -> Result<FFElem> {
    if field.level == 0 {
        let s = v
            .as_str()
            .ok_or_else(|| Error::Invalid("prime-field element must be a string".into()))?;
        let n = BigUint::from_str(s).map_err(|e| Error::Invalid(format!("bad residue: {e}")))?;
        return Ok(FFElem::from_biguint(field, n));
    }
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Invalid("tower element must be an array".into()))?;
    let base = field.base.as_ref().unwrap();
    let mut coords = vec![];
    for c in arr {
        coords.push(ffelem_from_json(base, c)?);
    }
    while coords.len() < field.degree {
        coords.push(FFElem::zero(base));
    }
    FFElem::from_coords(field, coords)
}

fn ffpoly_from_json(field: &FieldHandle, v: &Value) -> Result<FFPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Invalid("expected a psi coefficient array".into()))?;
    let mut coeffs = vec![];
    for c in arr {
        coeffs.push(ffelem_from_json(field, c)?);
    }
    Ok(FFPoly::from_coeffs(field, coeffs))
}

pub fn omtype_to_json(t: &OMType) -> Value {
    let levels: Vec<Value> = t
        .levels()
        .iter()
        .map(|lvl| {
            let (h, e) = match lvl.slope {
                Slope::NegInf => (Value::Null, Value::Null),
                Slope::Finite { h, e } => (json!(h), json!(e)),
            };
            json!({
                "phi": intpoly_to_json(&lvl.phi),
                "h": h,
                "e": e,
                "psi": lvl.psi.as_ref().map_or(Value::Null, |p| p.to_json()),
                "v": lvl.v,
                "m": lvl.m,
            })
        })
        .collect();
    json!({
        "p": t.prime().as_bigint().to_string(),
        "psi0": t.psi0().to_json(),
        "levels": levels,
    })
}

pub fn omtype_from_json(v: &Value) -> Result<OMType> {
    let p = Prime::new(
        BigInt::from_str(
            v["p"]
                .as_str()
                .ok_or_else(|| Error::Invalid("missing field p".into()))?,
        )
        .map_err(|e| Error::Invalid(format!("bad prime: {e}")))?,
    )?;
    let field0 = crate::ff::prime_field(p.clone());
    let psi0 = ffpoly_from_json(&field0, &v["psi0"])?;
    let mut t = OMType::new(p, psi0)?;
    let levels = v["levels"]
        .as_array()
        .ok_or_else(|| Error::Invalid("missing levels".into()))?;
    for lvl in levels {
        let phi = intpoly_from_json(&lvl["phi"])?;
        if lvl["h"].is_null() {
            t = t.extend_exact(phi)?;
            continue;
        }
        let h = lvl["h"]
            .as_i64()
            .ok_or_else(|| Error::Invalid("h must be an integer".into()))?;
        let e = lvl["e"]
            .as_i64()
            .ok_or_else(|| Error::Invalid("e must be an integer".into()))?;
        let field = t.field(t.order() + 1).clone();
        let psi = ffpoly_from_json(&field, &lvl["psi"])?;
        t = t.extend(phi, h, e, psi)?;
    }
    Ok(t)
}

fn rational_str(r: Rational64) -> Value {
    Value::String(r.to_string())
}

fn leaf_to_json(rep: &OMRep, lifted: Option<&IntPoly>) -> Value {
    let t = omtype_to_json(&rep.tipo);
    json!({
        "depth": rep.depth(),
        "levels": t["levels"],
        "psi0": t["psi0"],
        "exact": rep.exact,
        "okutsu_factor": intpoly_to_json(&rep.okutsu_factor),
        "lifted_factor": lifted.map_or(Value::Null, intpoly_to_json),
    })
}

pub fn factor_report(
    out: &MontesOutput,
    lifted: Option<&LiftedFactorization>,
    nu_used: i64,
) -> Value {
    let leaves: Vec<Value> = out
        .reps
        .iter()
        .enumerate()
        .map(|(i, rep)| leaf_to_json(rep, lifted.map(|l| &l.factors[i])))
        .collect();
    json!({
        "n": out.n,
        "p": out.p.as_bigint().to_string(),
        "delta": out.delta,
        "nu_used": nu_used,
        "leaves": leaves,
    })
}

pub fn witness_to_json(w: &Witness) -> Value {
    match w {
        Witness::MultiSide { level, slopes } => json!({
            "kind": "multi-side",
            "level": level,
            "slopes": slopes.iter().map(|s| s.render()).collect::<Vec<_>>(),
        }),
        Witness::MultiResidualFactor { level, factors } => json!({
            "kind": "multi-residual-factor",
            "level": level,
            "factors": factors,
        }),
        Witness::Complete { tipo } => json!({
            "kind": "complete",
            "type": omtype_to_json(tipo),
        }),
    }
}

pub fn irreducible_report(irr: bool, w: &Witness, nu_needed: i64) -> Value {
    json!({
        "irreducible": irr,
        "witness": witness_to_json(w),
        "nu_needed": nu_needed,
    })
}

pub fn invariants_report(r: &InvariantReport) -> Value {
    let levels: Vec<Value> = r
        .levels
        .iter()
        .map(|l| json!({"e": l.e, "f": l.f, "h": l.h, "m": l.m, "v": l.v}))
        .collect();
    json!({
        "n": r.n,
        "depth": r.depth,
        "e": r.e,
        "f": r.f,
        "mu": rational_str(r.mu),
        "delta0": rational_str(r.delta0),
        "delta": r.delta,
        "rho": rational_str(r.rho),
        "width": r.width,
        "levels": levels,
    })
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotPrime(_) => "not-prime",
        Error::NonMonicDivisor => "non-monic-divisor",
        Error::ZeroInput => "zero-input",
        Error::ReducibleModulus => "reducible-modulus",
        Error::DivisionByZero => "division-by-zero",
        Error::FieldMismatch => "field-mismatch",
        Error::EmptyCloud => "empty-cloud",
        Error::InsufficientV(_) => "insufficient-value",
        Error::Inseparable => "inseparable",
        Error::NonMonic => "non-monic",
        Error::AlreadyExact => "already-exact",
        Error::IterationCapExceeded(_) => "iteration-cap-exceeded",
        Error::PrecisionTooLow { .. } => "precision-too-low",
        Error::NotIrreducible => "not-irreducible",
        Error::SharedRoot => "shared-root",
        Error::DegreeMismatch => "degree-mismatch",
        Error::InconsistentLevels(_) => "inconsistent-levels",
        Error::Parse { .. } => "parse",
        Error::Invalid(_) => "invalid",
        Error::Internal(_) => "internal",
    }
}

pub fn error_report(e: &Error) -> Value {
    json!({
        "error": {
            "kind": error_kind(e),
            "message": e.to_string(),
        }
    })
}
