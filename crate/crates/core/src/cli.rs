//! Command dispatch for the omf binary: polynomial parsing, report
//! assembly and exit-code mapping. Kept in the library so the output
//! schemas are testable without spawning a process.

use crate::arith::{vp, IntPoly, Prime};
use crate::error::{Error, Result};
use crate::invariants::{
    factorization_precision, irreducibility_precision, okutsu_data, single_rep,
};
use crate::lifting::lift_factorization;
use crate::montes::{irreducibility_test, montes};
use crate::omtype::newton_data;
use crate::polygon::{lower_hull, render_ascii, PolyPoint};
use crate::serial::{
    error_report, factor_report, invariants_report, irreducible_report,
    omtype_from_json,
};
use crate::arith::discriminant_valuation;
use num_bigint::BigInt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Factor,
    Irreducible,
    Invariants,
    Polygon,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Request {
    pub command: Command,
    pub poly: IntPoly,
    pub p: Prime,
    pub precision: Option<i64>,
    pub seed: u64,
    pub json: bool,
    pub no_lift: bool,
    /// Level for the polygon command; levels above 1 need a type JSON.
    pub level: usize,
    pub type_json: Option<serde_json::Value>,
}

/// Parse "x^4+5*x^2+25" or "[25,0,5,0,1]" into the same polynomial.
pub fn parse_poly(text: &str) -> Result<IntPoly> {
    let t = text.trim();
    if t.starts_with('[') {
        return parse_bracket(t);
    }
    parse_expression(t)
}

fn parse_bracket(t: &str) -> Result<IntPoly> {
    if !t.ends_with(']') {
        return Err(Error::Parse { pos: t.len(), msg: "missing closing bracket".into() });
    }
    let inner = &t[1..t.len() - 1];
    if inner.trim().is_empty() {
        return Ok(IntPoly::zero());
    }
    let mut coeffs = vec![];
    for (k, part) in inner.split(',').enumerate() {
        let c = BigInt::from_str(part.trim()).map_err(|_| Error::Parse {
            pos: k,
            msg: format!("bad coefficient '{}'", part.trim()),
        })?;
        coeffs.push(c);
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

fn parse_expression(t: &str) -> Result<IntPoly> {
    let bytes = t.as_bytes();
    let mut pos = 0usize;
    let mut terms: Vec<(BigInt, usize)> = vec![];
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(Error::Parse { pos, msg: "empty input".into() });
    }
    while pos < bytes.len() {
        skip_ws(&mut pos);
        let mut sign = BigInt::from(1);
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !terms.is_empty() {
            return Err(Error::Parse { pos, msg: "expected + or - between terms".into() });
        }
        if pos == bytes.len() {
            return Err(Error::Parse { pos, msg: "dangling sign".into() });
        }
        // coefficient
        let mut coeff: Option<BigInt> = None;
        if bytes[pos].is_ascii_digit() {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            coeff = Some(BigInt::from_str(&t[start..pos]).unwrap());
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                skip_ws(&mut pos);
                if pos == bytes.len() || bytes[pos] != b'x' {
                    return Err(Error::Parse { pos, msg: "expected x after *".into() });
                }
            }
        }
        // variable part
        let mut exp = 0usize;
        if pos < bytes.len() && bytes[pos] == b'x' {
            pos += 1;
            exp = 1;
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                skip_ws(&mut pos);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(Error::Parse { pos, msg: "expected exponent digits".into() });
                }
                exp = t[start..pos]
                    .parse()
                    .map_err(|_| Error::Parse { pos: start, msg: "exponent too large".into() })?;
            }
        } else if coeff.is_none() {
            return Err(Error::Parse { pos, msg: "expected a coefficient or x".into() });
        }
        terms.push((sign * coeff.unwrap_or_else(|| BigInt::from(1)), exp));
        skip_ws(&mut pos);
    }
    let deg = terms.iter().map(|&(_, e)| e).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::from(0); deg + 1];
    for (c, e) in terms {
        coeffs[e] += c;
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// Run a request; returns the process exit code and the rendered output.
pub fn run(req: &Request) -> (i32, String) {
    match dispatch(req) {
        Ok(s) => (0, s),
        Err(e) => {
            let code = match e {
                Error::Parse { .. } | Error::Invalid(_) => 2,
                _ => 1,
            };
            let body = if req.json {
                serde_json::to_string_pretty(&error_report(&e)).unwrap()
            } else {
                format!("error: {e}")
            };
            (code, body)
        }
    }
}

fn dispatch(req: &Request) -> Result<String> {
    match req.command {
        Command::Factor => {
            let out = montes(&req.poly, &req.p, req.seed)?;
            let nu = match req.precision {
                Some(nu) => nu,
                None => factorization_precision(&req.poly, &req.p)?,
            };
            let lifted = if req.no_lift {
                None
            } else {
                Some(lift_factorization(&req.poly, &out, nu)?)
            };
            let report = factor_report(&out, lifted.as_ref(), nu);
            if req.json {
                Ok(serde_json::to_string_pretty(&report).unwrap())
            } else {
                let mut s = format!(
                    "n = {}, p = {}, delta = {}, nu = {nu}\n",
                    out.n, out.p.as_bigint(), out.delta
                );
                for (i, rep) in out.reps.iter().enumerate() {
                    s += &format!(
                        "leaf {}: depth {}, {} factor {}",
                        i,
                        rep.depth(),
                        if rep.exact { "exact" } else { "approximate" },
                        rep.okutsu_factor.to_string_x()
                    );
                    if let Some(l) = &lifted {
                        s += &format!(", lifted {}", l.factors[i].to_string_x());
                    }
                    s.push('\n');
                }
                Ok(s)
            }
        }
        Command::Irreducible => {
            let (irr, w) = irreducibility_test(&req.poly, &req.p, req.seed)?;
            let nu = irreducibility_precision(&req.poly, &req.p)?;
            let report = irreducible_report(irr, &w, nu);
            if req.json {
                Ok(serde_json::to_string_pretty(&report).unwrap())
            } else {
                Ok(format!("irreducible: {irr} (certified at precision {nu})\n"))
            }
        }
        Command::Invariants => {
            let rep = single_rep(&req.poly, &req.p)?;
            let delta = discriminant_valuation(&req.poly, &req.p)?;
            let report = okutsu_data(&rep, delta)?;
            let j = invariants_report(&report);
            if req.json {
                Ok(serde_json::to_string_pretty(&j).unwrap())
            } else {
                Ok(format!(
                    "n = {}, depth = {}, e = {}, f = {}, mu = {}, delta0 = {}, delta = {}, rho = {}\n",
                    report.n, report.depth, report.e, report.f,
                    report.mu, report.delta0, report.delta, report.rho
                ))
            }
        }
        Command::Polygon => {
            let poly = &req.poly;
            if req.level <= 1 {
                let points: Vec<PolyPoint> = poly
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(s, c)| PolyPoint { x: s as i64, y: vp(c, &req.p) })
                    .collect();
                let n = lower_hull(&points)?;
                return Ok(render_ascii(&n));
            }
            let tjson = req
                .type_json
                .as_ref()
                .ok_or_else(|| Error::Invalid("levels above 1 need a type JSON".into()))?;
            let t = omtype_from_json(tjson)?;
            if req.level > t.order() {
                return Err(Error::Invalid(format!(
                    "type has order {}, cannot build N_{}",
                    t.order(),
                    req.level
                )));
            }
            let trunc = t.truncate(req.level - 1);
            let phi = &t.level(req.level).phi;
            let omega = poly.degree().unwrap_or(0) / phi.degree().unwrap();
            let data = newton_data(&trunc, phi, omega, poly)?;
            Ok(render_ascii(&data.polygon))
        }
    }
}
