//! The Montes algorithm: branching over Newton-polygon sides and residual
//! factors, with refinement and the step-16 optimization, producing one OM
//! representation per p-adic irreducible factor. Also the early-exit
//! irreducibility test.

use crate::arith::{discriminant_valuation, IntPoly, Prime, Valuation};
use crate::error::{Error, Result};
use crate::ff::{ff_factor, lift_ffpoly_over_fp, prime_field, reduce_int_poly, FFPoly};
use crate::omtype::{
    newton_data, ord_type, representative, residual_from_data, OMType,
};
use crate::polygon::Slope;
use num_bigint::BigUint;

/// One Newton-polygon computation in the history of a branch: the phi in
/// force at that moment and the principal slopes seen against F.
#[derive(Debug, Clone)]
pub struct TrailStep {
    pub level: usize,
    pub phi: IntPoly,
    pub slopes: Vec<Slope>,
}

/// An OM representation of one irreducible factor: a complete optimal type
/// of order r+1, where r is the Okutsu depth.
#[derive(Debug, Clone)]
pub struct OMRep {
    pub tipo: OMType,
    pub exact: bool,
    pub okutsu_factor: IntPoly,
    pub trail: Vec<TrailStep>,
}

impl OMRep {
    /// Okutsu depth r (the type has order r+1).
    pub fn depth(&self) -> usize {
        self.tipo.order() - 1
    }

    /// Degree of the true p-adic factor this rep approximates.
    pub fn factor_degree(&self) -> usize {
        self.okutsu_factor.degree().unwrap()
    }

    /// Terminal slope lambda_{r+1}.
    pub fn terminal_slope(&self) -> Slope {
        self.tipo.levels().last().unwrap().slope
    }

    pub fn sort_key(&self) -> (Vec<BigUint>, Vec<(i64, i64, Vec<BigUint>)>) {
        let psi0 = self.tipo.psi0().canonical_key();
        let levels = self
            .tipo
            .levels()
            .iter()
            .map(|lvl| match lvl.slope {
                Slope::NegInf => (-1, 0, vec![]),
                Slope::Finite { h, e } => (
                    h,
                    e,
                    lvl.psi.as_ref().map_or(vec![], |p| p.canonical_key()),
                ),
            })
            .collect();
        (psi0, levels)
    }
}

/// A node of the forest of types; nodes live in `MontesOutput::nodes` and
/// refer to each other by index.
#[derive(Debug, Clone)]
pub struct TypeNode {
    pub label: NodeLabel,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Index into `reps` when this node is a leaf.
    pub leaf: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeLabel {
    Root(FFPoly),
    Level {
        phi: IntPoly,
        slope: Slope,
        psi: Option<FFPoly>,
    },
}

#[derive(Debug, Clone)]
pub struct MontesOutput {
    pub reps: Vec<OMRep>,
    pub nodes: Vec<TypeNode>,
    pub roots: Vec<usize>,
    pub n: usize,
    pub p: Prime,
    pub delta: i64,
}

/// Reducibility witness of the irreducibility test, or the certifying type.
#[derive(Debug, Clone)]
pub enum Witness {
    MultiSide { level: usize, slopes: Vec<Slope> },
    MultiResidualFactor { level: usize, factors: usize },
    Complete { tipo: OMType },
}

/// A stack entry: a type of order i-1 together with the pending data
/// (phi_i, omega_i) of the level under construction.
struct Pending {
    t: OMType,
    phi: IntPoly,
    omega: usize,
    trail: Vec<TrailStep>,
}

impl Pending {
    fn slice_degree(&self) -> usize {
        self.phi.degree().unwrap() * self.omega
    }
}

fn check_input(f: &IntPoly, p: &Prime) -> Result<(usize, i64)> {
    if f.degree().map_or(true, |d| d == 0) {
        return Err(Error::ZeroInput);
    }
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    let delta = match discriminant_valuation(f, p)? {
        Valuation::Finite(d) => d,
        Valuation::Infinite => return Err(Error::Inseparable),
    };
    Ok((f.degree().unwrap(), delta))
}

pub fn montes(f: &IntPoly, p: &Prime, seed: u64) -> Result<MontesOutput> {
    let (n, delta) = check_input(f, p)?;
    let field0 = prime_field(p.clone());
    let fbar = reduce_int_poly(f, &field0);
    let cap = 4 * (delta as usize + n + 10);
    let mut reps: Vec<OMRep> = vec![];
    for (psi0, a) in ff_factor(&fbar, seed)? {
        let phi1 = lift_ffpoly_over_fp(&psi0);
        let t0 = OMType::new(p.clone(), psi0)?;
        let mut leaves = vec![];
        branch(f, seed, cap, Pending { t: t0, phi: phi1, omega: a, trail: vec![] }, &mut leaves)?;
        reps.extend(leaves);
    }
    reps.sort_by_key(|r| r.sort_key());
    let total: usize = reps.iter().map(|r| r.factor_degree()).sum();
    if total != n {
        return Err(Error::Internal(format!(
            "degree accounting broke: leaves cover {total} of {n}"
        )));
    }
    let (nodes, roots) = build_forest(&reps);
    let out = MontesOutput { reps, nodes, roots, n, p: p.clone(), delta };
    if !check_faithful(&out, f)? {
        return Err(Error::Internal("output is not faithful".into()));
    }
    if !check_om_condition(&out, f)? {
        return Err(Error::Internal("OM slope condition failed".into()));
    }
    Ok(out)
}

/// The WHILE loop of the algorithm for a single root psi0, steps 6-17.
fn branch(
    f: &IntPoly,
    seed: u64,
    cap: usize,
    start: Pending,
    leaves: &mut Vec<OMRep>,
) -> Result<()> {
    let slice = start.slice_degree();
    let mut stack = vec![start];
    let mut spent = 0usize;
    while let Some(cur) = stack.pop() {
        spent += 1;
        if spent > cap {
            return Err(Error::IterationCapExceeded(cap));
        }
        let i = cur.t.order() + 1;
        let data = newton_data(&cur.t, &cur.phi, cur.omega, f)?;
        let principal = data.polygon.principal();
        debug_assert_eq!(
            principal.length(),
            cur.omega as i64,
            "principal polygon length must equal omega"
        );
        let mut trail = cur.trail.clone();
        trail.push(TrailStep {
            level: i,
            phi: cur.phi.clone(),
            slopes: principal.slopes(),
        });
        for side in &principal.sides {
            let (h, e) = match side.slope {
                Slope::NegInf => {
                    // phi divides F exactly; separability caps this at one copy
                    debug_assert_eq!(side.length(), 1);
                    let t = cur.t.extend_exact(cur.phi.clone())?;
                    leaves.push(OMRep {
                        tipo: t,
                        exact: true,
                        okutsu_factor: cur.phi.clone(),
                        trail: trail.clone(),
                    });
                    continue;
                }
                Slope::Finite { h, e } => (h, e),
            };
            let res = residual_from_data(&cur.t, &data, h, e)?;
            for (psi, mult) in ff_factor(&res, seed)? {
                let t = cur.t.extend(cur.phi.clone(), h, e, psi)?;
                if cur.omega == 1 {
                    leaves.push(OMRep {
                        tipo: t,
                        exact: false,
                        okutsu_factor: cur.phi.clone(),
                        trail: trail.clone(),
                    });
                    continue;
                }
                let phi_next = representative(&t)?;
                if phi_next.degree() == cur.phi.degree() {
                    // step 16: the enlarged type is not strongly optimal;
                    // refine the order-(i-1) type with the better phi
                    stack.push(Pending {
                        t: cur.t.clone(),
                        phi: phi_next,
                        omega: mult,
                        trail: trail.clone(),
                    });
                } else {
                    stack.push(Pending {
                        t,
                        phi: phi_next,
                        omega: mult,
                        trail: trail.clone(),
                    });
                }
            }
        }
        let covered: usize = stack.iter().map(|s| s.slice_degree()).sum::<usize>()
            + leaves.iter().map(|l| l.factor_degree()).sum::<usize>();
        debug_assert_eq!(covered, slice, "degree accounting per loop iteration");
    }
    Ok(())
}

/// Steps 1-13 of the irreducibility test: early exit on the first witness.
pub fn irreducibility_test(f: &IntPoly, p: &Prime, seed: u64) -> Result<(bool, Witness)> {
    let (n, delta) = check_input(f, p)?;
    let field0 = prime_field(p.clone());
    let fbar = reduce_int_poly(f, &field0);
    let factors = ff_factor(&fbar, seed)?;
    if factors.len() > 1 {
        return Ok((
            false,
            Witness::MultiResidualFactor { level: 0, factors: factors.len() },
        ));
    }
    let (psi0, a) = factors.into_iter().next().unwrap();
    let phi1 = lift_ffpoly_over_fp(&psi0);
    let t0 = OMType::new(p.clone(), psi0)?;
    let cap = 4 * (delta as usize + n + 10);
    let mut stack = vec![Pending { t: t0, phi: phi1, omega: a, trail: vec![] }];
    let mut spent = 0usize;
    while let Some(cur) = stack.pop() {
        spent += 1;
        if spent > cap {
            return Err(Error::IterationCapExceeded(cap));
        }
        let i = cur.t.order() + 1;
        let data = newton_data(&cur.t, &cur.phi, cur.omega, f)?;
        let principal = data.polygon.principal();
        if principal.sides.len() > 1 {
            return Ok((
                false,
                Witness::MultiSide { level: i, slopes: principal.slopes() },
            ));
        }
        let side = &principal.sides[0];
        let (h, e) = match side.slope {
            Slope::NegInf => {
                let t = cur.t.extend_exact(cur.phi)?;
                return Ok((true, Witness::Complete { tipo: t }));
            }
            Slope::Finite { h, e } => (h, e),
        };
        let res = residual_from_data(&cur.t, &data, h, e)?;
        let rfactors = ff_factor(&res, seed)?;
        if rfactors.len() > 1 {
            return Ok((
                false,
                Witness::MultiResidualFactor { level: i, factors: rfactors.len() },
            ));
        }
        let (psi, mult) = rfactors.into_iter().next().unwrap();
        let t = cur.t.extend(cur.phi.clone(), h, e, psi)?;
        if mult == 1 {
            return Ok((true, Witness::Complete { tipo: t }));
        }
        let phi_next = representative(&t)?;
        if phi_next.degree() == cur.phi.degree() {
            stack.push(Pending { t: cur.t, phi: phi_next, omega: mult, trail: vec![] });
        } else {
            stack.push(Pending { t, phi: phi_next, omega: mult, trail: vec![] });
        }
    }
    unreachable!("the stack never empties without a verdict")
}

/// Definition of a faithful family, condition (b): ord on F is 1 per leaf.
pub fn check_faithful(out: &MontesOutput, f: &IntPoly) -> Result<bool> {
    for rep in &out.reps {
        if ord_type(&rep.tipo, f)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The slope condition |lambda_{s,s}| > |lambda_{s,t}| for ordered pairs
/// with full index of coincidence, read off the Newton polygon of the
/// other factor's approximation against Trunc_r(t_s).
pub fn check_om_condition(out: &MontesOutput, _f: &IntPoly) -> Result<bool> {
    for (s, rep_s) in out.reps.iter().enumerate() {
        let r = rep_s.depth();
        let trunc = rep_s.tipo.truncate(r);
        for (t, rep_t) in out.reps.iter().enumerate() {
            if s == t {
                continue;
            }
            // pair is relevant only when Trunc_r(t_s) divides P_t
            if ord_type(&trunc, &rep_t.okutsu_factor).unwrap_or(0) == 0 {
                continue;
            }
            let omega =
                rep_t.okutsu_factor.degree().unwrap() / rep_s.okutsu_factor.degree().unwrap();
            if omega == 0 {
                continue;
            }
            let data = newton_data(&trunc, &rep_s.okutsu_factor, omega, &rep_t.okutsu_factor)?;
            for side in &data.polygon.principal().sides {
                if !slope_dominates(rep_s.terminal_slope(), side.slope) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// |a| > |b| for negative slopes, with -infinity dominating everything.
fn slope_dominates(a: Slope, b: Slope) -> bool {
    match (a, b) {
        (Slope::NegInf, _) => true,
        (_, Slope::NegInf) => false,
        (Slope::Finite { h: ha, e: ea }, Slope::Finite { h: hb, e: eb }) => ha * eb > hb * ea,
    }
}

/// Group the sorted leaves into the forest of types by shared prefixes.
fn build_forest(reps: &[OMRep]) -> (Vec<TypeNode>, Vec<usize>) {
    let mut nodes: Vec<TypeNode> = vec![];
    let mut roots: Vec<usize> = vec![];
    for (idx, rep) in reps.iter().enumerate() {
        let root_label = NodeLabel::Root(rep.tipo.psi0().clone());
        let root = match roots
            .iter()
            .find(|&&r| nodes[r].label == root_label)
        {
            Some(&r) => r,
            None => {
                nodes.push(TypeNode { label: root_label, parent: None, children: vec![], leaf: None });
                roots.push(nodes.len() - 1);
                nodes.len() - 1
            }
        };
        let mut at = root;
        for lvl in rep.tipo.levels() {
            let label = NodeLabel::Level {
                phi: lvl.phi.clone(),
                slope: lvl.slope,
                psi: lvl.psi.clone(),
            };
            let found = nodes[at].children.iter().find(|&&c| nodes[c].label == label).copied();
            at = match found {
                Some(c) => c,
                None => {
                    nodes.push(TypeNode { label, parent: Some(at), children: vec![], leaf: None });
                    let c = nodes.len() - 1;
                    nodes[at].children.push(c);
                    c
                }
            };
        }
        nodes[at].leaf = Some(idx);
    }
    (nodes, roots)
}
