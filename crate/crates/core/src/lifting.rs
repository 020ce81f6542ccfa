//! Lifting the Okutsu factors to a prescribed precision by repeated
//! terminal-level refinement, with the product congruence as the stopping
//! rule, plus the discriminant decomposition check.

use crate::arith::{
    discriminant_valuation, reduce_mod_power, resultant, vp, IntPoly, Prime, Valuation,
};
use crate::error::{Error, Result};
use crate::montes::{MontesOutput, OMRep, TrailStep};
use crate::omtype::{newton_data, representative, residual_from_data};
use crate::polygon::Slope;
use num_traits::Zero;

#[derive(Debug, Clone)]
pub struct LiftedFactorization {
    pub factors: Vec<IntPoly>,
    pub nu: i64,
    /// |lambda| reached at the terminal level of each leaf (None = exact).
    pub slopes: Vec<Slope>,
    pub iterations: usize,
}

/// One refinement round at the terminal level: phi' = phi + g with the
/// residual of the current terminal psi, recomputed against F. The new
/// terminal |lambda| is strictly larger; the leaf may become exact.
pub fn improve_leaf(f: &IntPoly, rep: &OMRep) -> Result<OMRep> {
    if rep.exact {
        return Err(Error::AlreadyExact);
    }
    let r = rep.depth();
    let trunc = rep.tipo.truncate(r);
    let old = rep.terminal_slope();
    let phi_new = representative(&rep.tipo)?;
    debug_assert_eq!(phi_new.degree(), rep.okutsu_factor.degree());
    let data = newton_data(&trunc, &phi_new, 1, f)?;
    let principal = data.polygon.principal();
    debug_assert_eq!(principal.sides.len(), 1);
    let side = &principal.sides[0];
    let mut trail = rep.trail.clone();
    trail.push(TrailStep {
        level: r + 1,
        phi: phi_new.clone(),
        slopes: principal.slopes(),
    });
    let rep_new = match side.slope {
        Slope::NegInf => OMRep {
            tipo: trunc.extend_exact(phi_new.clone())?,
            exact: true,
            okutsu_factor: phi_new,
            trail,
        },
        Slope::Finite { h, e } => {
            debug_assert_eq!(e, 1, "terminal sides have length one");
            let res = residual_from_data(&trunc, &data, h, e)?;
            let psi = res.monic()?;
            OMRep {
                tipo: trunc.extend(phi_new.clone(), h, e, psi)?,
                exact: false,
                okutsu_factor: phi_new,
                trail,
            }
        }
    };
    if old.cmp_value(&rep_new.terminal_slope()) != std::cmp::Ordering::Greater {
        return Err(Error::Internal(format!(
            "slope did not improve: {} to {}",
            old.render(),
            rep_new.terminal_slope().render()
        )));
    }
    Ok(rep_new)
}

/// Refine every leaf until the product of the factors matches F mod p^nu.
pub fn lift_factorization(
    f: &IntPoly,
    out: &MontesOutput,
    nu: i64,
) -> Result<LiftedFactorization> {
    if nu < 1 {
        return Err(Error::Invalid("precision must be positive".into()));
    }
    let p = &out.p;
    let cap = 2 * (nu as usize + out.delta as usize + out.n + 10);
    let mut reps: Vec<OMRep> = out.reps.clone();
    let mut iterations = 0usize;
    loop {
        let factors: Vec<IntPoly> = reps
            .iter()
            .map(|r| reduce_mod_power(&r.okutsu_factor, p, nu as u32))
            .collect();
        // the product congruence alone can match spurious splits (two bad
        // linear factors whose product is still close to F); demand
        // v(P_s(theta_s)) >= nu per leaf as well
        let sharp = reps.iter().all(|r| leaf_sharp(r, nu));
        if sharp && verify_congruence(f, &factors, p, nu) {
            return Ok(LiftedFactorization {
                factors,
                nu,
                slopes: reps.iter().map(|r| r.terminal_slope()).collect(),
                iterations,
            });
        }
        if iterations >= cap {
            return Err(Error::IterationCapExceeded(cap));
        }
        iterations += 1;
        for rep in reps.iter_mut() {
            if !rep.exact {
                *rep = improve_leaf(f, rep)?;
            }
        }
    }
}

/// v(P_s(theta_s)) = (V_{r+1} + |lambda_{r+1}|) / e(F_s) >= nu.
fn leaf_sharp(rep: &OMRep, nu: i64) -> bool {
    let lvl = rep.tipo.levels().last().unwrap();
    match lvl.slope {
        Slope::NegInf => true,
        Slope::Finite { h, e } => {
            let e_prod: i64 = rep
                .tipo
                .levels()
                .iter()
                .take(rep.depth())
                .map(|l| l.he().1)
                .product();
            lvl.v * e + h >= nu * e * e_prod
        }
    }
}

/// Coefficientwise congruence of F with the product of the factors.
pub fn verify_congruence(f: &IntPoly, factors: &[IntPoly], p: &Prime, nu: i64) -> bool {
    if nu < 1 {
        return false;
    }
    let mut prod = IntPoly::from_i64(&[1]);
    for g in factors {
        prod = prod.mul(g);
    }
    reduce_mod_power(&f.sub(&prod), p, nu as u32).is_zero()
}

/// vp(Disc F) = sum vp(Disc P_s) + 2 sum_{s<t} vp(Res(P_s, P_t)), exact
/// once the factors carry precision delta+1.
pub fn disc_decomposition_check(f: &IntPoly, factors: &[IntPoly], p: &Prime) -> Result<bool> {
    let delta = discriminant_valuation(f, p)?
        .finite()
        .ok_or(Error::Inseparable)?;
    let mut prod = IntPoly::from_i64(&[1]);
    for g in factors {
        prod = prod.mul(g);
    }
    let got = match f.sub(&prod).content_vp(p) {
        Valuation::Infinite => i64::MAX,
        Valuation::Finite(v) => v,
    };
    if got < delta + 1 {
        return Err(Error::PrecisionTooLow { got, need: delta + 1 });
    }
    let mut total = 0i64;
    for (s, ps) in factors.iter().enumerate() {
        total += discriminant_valuation(ps, p)?
            .finite()
            .ok_or(Error::Inseparable)?;
        for pt in &factors[s + 1..] {
            let res = resultant(ps, pt)?;
            if res.is_zero() {
                return Err(Error::SharedRoot);
            }
            total += 2 * vp(&res, p).finite().unwrap();
        }
    }
    Ok(total == delta)
}
