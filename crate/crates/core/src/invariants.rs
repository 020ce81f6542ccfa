//! Okutsu invariants of an irreducible polynomial read off its OM
//! representation: e(F), f(F), mu, delta_0, rho, widths, plus the
//! valuation-at-root oracle and Okutsu equivalence.

use crate::arith::{discriminant_valuation, resultant, vp, IntPoly, Prime, Valuation};
use crate::error::{Error, Result};
use crate::ff::{prime_field, reduce_int_poly};
use crate::montes::{montes, OMRep};
use num_rational::Rational64;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct LevelData {
    pub e: i64,
    pub f: i64,
    pub h: i64,
    pub m: usize,
    pub v: i64,
}

/// Numerical invariants of one irreducible factor.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub n: usize,
    pub depth: usize,
    pub e: i64,
    pub f: i64,
    pub mu: Rational64,
    pub delta0: Rational64,
    pub delta: i64,
    pub rho: Rational64,
    pub width: Vec<i64>,
    pub levels: Vec<LevelData>,
}

/// Fill the report from level data; delta_0 is computed three equivalent
/// ways (V_{r+1}/e, mu_r + nu_r, the slope sum) and cross-asserted.
pub fn okutsu_data(rep: &OMRep, delta: Valuation) -> Result<InvariantReport> {
    let delta = delta.finite().ok_or(Error::Inseparable)?;
    let n = rep.factor_degree();
    let r = rep.depth();
    let f0 = rep.tipo.psi0().degree().unwrap() as i64;
    let mut levels = vec![];
    for i in 1..=r {
        let lvl = rep.tipo.level(i);
        let (h, e) = lvl.he();
        levels.push(LevelData { e, f: lvl.f as i64, h, m: lvl.m, v: lvl.v });
    }
    let e: i64 = levels.iter().map(|l| l.e).product();
    let f: i64 = f0 * levels.iter().map(|l| l.f).product::<i64>();
    if e * f != n as i64 {
        return Err(Error::InconsistentLevels(format!(
            "e*f = {} does not cover n = {n}",
            e * f
        )));
    }

    // mu_r and nu_r from the section-1 recurrences
    let mut mu = Rational64::zero();
    let mut nu = Rational64::zero();
    let mut e_cum = 1i64; // e_1 ... e_j
    for (j, lj) in levels.iter().enumerate() {
        e_cum *= lj.e;
        let tail: i64 = levels[j..].iter().map(|l| l.e * l.f).product();
        mu += Rational64::new((tail - 1) * lj.h, e_cum);
        nu += Rational64::new(lj.h, e_cum);
    }

    let v_next = rep.tipo.levels()[r].v;
    let d0_a = Rational64::new(v_next, e);
    let d0_b = mu + nu;
    let mut d0_c = Rational64::zero();
    let mut e_below = 1i64; // e_0 ... e_{i-1}
    for l in &levels {
        d0_c += Rational64::new(l.h, l.e * e_below) * Rational64::from_integer(n as i64 / l.m as i64);
        e_below *= l.e;
    }
    if d0_a != d0_b || d0_b != d0_c {
        return Err(Error::InconsistentLevels(format!(
            "delta_0 disagrees: {d0_a} vs {d0_b} vs {d0_c}"
        )));
    }

    let rho = (Rational64::from_integer(delta) - Rational64::from_integer(n as i64) * mu)
        / Rational64::from_integer(f);
    if rho.is_negative() {
        return Err(Error::InconsistentLevels(format!("negative rho {rho}")));
    }
    let width = levels.iter().map(|l| (l.h + l.e - 1) / l.e).collect();
    Ok(InvariantReport {
        n,
        depth: r,
        e,
        f,
        mu,
        delta0: d0_a,
        delta,
        rho,
        width,
        levels,
    })
}

/// nu = floor(2 delta / n) + 1, the precision certifying irreducibility.
pub fn irreducibility_precision(f: &IntPoly, p: &Prime) -> Result<i64> {
    let delta = discriminant_valuation(f, p)?
        .finite()
        .ok_or(Error::Inseparable)?;
    let n = f.degree().ok_or(Error::ZeroInput)? as i64;
    Ok(2 * delta / n + 1)
}

/// nu = delta + 1, the precision determining the OM factorization.
pub fn factorization_precision(f: &IntPoly, p: &Prime) -> Result<i64> {
    let delta = discriminant_valuation(f, p)?
        .finite()
        .ok_or(Error::Inseparable)?;
    Ok(delta + 1)
}

/// v(g(theta)) for a root theta of irreducible F, by Galois invariance:
/// vp(Res(F, g)) / deg F.
pub fn value_at_root(f: &IntPoly, g: &IntPoly, p: &Prime) -> Result<Rational64> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let rep = single_rep(f, p)?;
    let _ = rep;
    let res = resultant(f, g)?;
    if res.is_zero() {
        return Err(Error::SharedRoot);
    }
    let val = vp(&res, p).finite().unwrap();
    Ok(Rational64::new(val, f.degree().unwrap() as i64))
}

/// The unique OM representation of an irreducible F.
pub fn single_rep(f: &IntPoly, p: &Prime) -> Result<OMRep> {
    let out = montes(f, p, 0)?;
    if out.reps.len() != 1 {
        return Err(Error::NotIrreducible);
    }
    Ok(out.reps.into_iter().next().unwrap())
}

/// Okutsu equivalence P ~ Q. At depth 0 this is equality of the
/// reductions mod p; at depth >= 1 it is the threshold test
/// v(Q(theta_P)) > delta_0(P).
pub fn okutsu_equivalent(pp: &IntPoly, q: &IntPoly, p: &Prime) -> Result<bool> {
    if pp.degree() != q.degree() {
        return Err(Error::DegreeMismatch);
    }
    if pp == q {
        return Ok(true);
    }
    let rep = single_rep(pp, p)?;
    let _ = single_rep(q, p)?;
    if rep.depth() == 0 {
        let field = prime_field(p.clone());
        return Ok(reduce_int_poly(pp, &field) == reduce_int_poly(q, &field));
    }
    let delta = discriminant_valuation(pp, p)?;
    let report = okutsu_data(&rep, delta)?;
    Ok(value_at_root(pp, q, p)? > report.delta0)
}

/// Maximal j <= min(r_F+1, r_G+1) with phi_j equivalent level-wise;
/// phi_0 = 1 by convention, so the index is at least 0.
pub fn index_of_coincidence(rep_f: &OMRep, rep_g: &OMRep, p: &Prime) -> Result<usize> {
    let top = (rep_f.depth() + 1).min(rep_g.depth() + 1);
    for j in (1..=top).rev() {
        let phi_f = &rep_f.tipo.level(j).phi;
        let phi_g = &rep_g.tipo.level(j).phi;
        if phi_f.degree() != phi_g.degree() {
            continue;
        }
        if okutsu_equivalent(phi_f, phi_g, p)? {
            return Ok(j);
        }
    }
    Ok(0)
}
