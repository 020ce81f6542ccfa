//! Types of order r: towers of (phi_i, lambda_i, psi_i) levels together
//! with the MacLane valuations v_i, Newton polygon operators N_i and
//! residual polynomial operators R_i acting on Z[x].

use crate::arith::{poly_divrem, IntPoly, Prime, Valuation};
use crate::error::{Error, Result};
use crate::ff::{
    field_extend, lift_to_int_poly, prime_field, FFElem, FFPoly, FieldHandle,
};
use crate::polygon::{lambda_component, lower_hull, NewtonPolygon, PolyPoint, Slope};

/// One level of a type: phi_i, lambda_i = -h/e, psi_i over F_i, and
/// V_i = v_i(phi_i). The exact flag (slope -infinity) marks a terminal
/// level whose phi divides the polynomial exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct OMLevel {
    pub phi: IntPoly,
    pub slope: Slope,
    pub psi: Option<FFPoly>,
    pub v: i64,
    pub m: usize,
    pub f: usize,
    /// F_{i+1} = F_i[y]/(psi_i); equals F_i on an exact terminal level.
    pub field_up: FieldHandle,
    /// Image of y in F_{i+1}.
    pub z: Option<FFElem>,
}

impl OMLevel {
    pub fn he(&self) -> (i64, i64) {
        match self.slope {
            Slope::Finite { h, e } => (h, e),
            Slope::NegInf => panic!("exact level has no finite slope"),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.slope == Slope::NegInf
    }
}

/// A type over (Q_p, x): psi_0 plus a stack of levels.
#[derive(Debug, Clone, PartialEq)]
pub struct OMType {
    p: Prime,
    field0: FieldHandle,
    psi0: FFPoly,
    field1: FieldHandle,
    z0: FFElem,
    levels: Vec<OMLevel>,
}

impl OMType {
    /// Order-0 type from an irreducible psi_0 over F_p.
    pub fn new(p: Prime, psi0: FFPoly) -> Result<OMType> {
        let field0 = prime_field(p.clone());
        if psi0.field().as_ref() != field0.as_ref() {
            return Err(Error::FieldMismatch);
        }
        let (field1, z0) = field_extend(&field0, &psi0)?;
        Ok(OMType {
            p,
            field0,
            psi0,
            field1,
            z0,
            levels: vec![],
        })
    }

    pub fn prime(&self) -> &Prime {
        &self.p
    }

    pub fn psi0(&self) -> &FFPoly {
        &self.psi0
    }

    pub fn order(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[OMLevel] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &OMLevel {
        &self.levels[i - 1]
    }

    /// F_i for i = 0 ..= order + 1.
    pub fn field(&self, i: usize) -> &FieldHandle {
        match i {
            0 => &self.field0,
            1 => &self.field1,
            _ => &self.levels[i - 2].field_up,
        }
    }

    /// z_i in F_{i+1} for i = 0 ..= order.
    pub fn z(&self, i: usize) -> &FFElem {
        if i == 0 {
            &self.z0
        } else {
            self.levels[i - 1].z.as_ref().expect("exact level has no z")
        }
    }

    /// m_i = deg phi_i; m_{order+1} is the degree of a representative.
    pub fn m(&self, i: usize) -> usize {
        if i == 0 {
            1
        } else if i <= self.levels.len() {
            self.levels[i - 1].m
        } else {
            let r = self.levels.len();
            if r == 0 {
                self.psi0.degree().unwrap()
            } else {
                let lvl = &self.levels[r - 1];
                let (_, e) = lvl.he();
                (e as usize) * lvl.f * lvl.m
            }
        }
    }

    /// V_i = v_i(phi_i); V_{order+1} is the value of a representative.
    pub fn v_level(&self, i: usize) -> i64 {
        if i <= self.levels.len() {
            if i == 0 {
                0
            } else {
                self.levels[i - 1].v
            }
        } else {
            let r = self.levels.len();
            if r == 0 {
                0
            } else {
                let lvl = &self.levels[r - 1];
                let (h, e) = lvl.he();
                e * (lvl.f as i64) * (e * lvl.v + h)
            }
        }
    }

    /// Truncation to order j (levels 1..j kept).
    pub fn truncate(&self, j: usize) -> OMType {
        let mut t = self.clone();
        t.levels.truncate(j);
        t
    }

    /// Extend by a new level (phi, -h/e, psi); psi lives over
    /// F_{order+1} and must be monic irreducible.
    pub fn extend(&self, phi: IntPoly, h: i64, e: i64, psi: FFPoly) -> Result<OMType> {
        let i = self.order() + 1;
        let top = self.field(i);
        if psi.field().as_ref() != top.as_ref() {
            return Err(Error::FieldMismatch);
        }
        let v = maclane_v(self, i, &phi)
            .finite()
            .ok_or_else(|| Error::Internal("phi has infinite value".into()))?;
        let (field_up, z) = field_extend(top, &psi)?;
        let mut t = self.clone();
        let m = phi.degree().ok_or(Error::ZeroInput)?;
        t.levels.push(OMLevel {
            phi,
            slope: Slope::finite(h, e),
            f: psi.degree().unwrap(),
            psi: Some(psi),
            v,
            m,
            field_up,
            z: Some(z),
        });
        Ok(t)
    }

    /// Extend by an exact terminal level: phi divides the polynomial.
    pub fn extend_exact(&self, phi: IntPoly) -> Result<OMType> {
        let i = self.order() + 1;
        let v = maclane_v(self, i, &phi).finite().unwrap_or(0);
        let mut t = self.clone();
        let m = phi.degree().ok_or(Error::ZeroInput)?;
        t.levels.push(OMLevel {
            phi,
            slope: Slope::NegInf,
            psi: None,
            v,
            m,
            f: 1,
            field_up: self.field(i).clone(),
            z: None,
        });
        Ok(t)
    }
}

/// Expansion g = sum a_s phi^s with deg a_s < deg phi.
pub fn phi_expansion(g: &IntPoly, phi: &IntPoly) -> Result<Vec<IntPoly>> {
    if phi.degree().map_or(true, |d| d == 0) {
        return Err(Error::ZeroInput);
    }
    let mut out = vec![];
    let mut rest = g.clone();
    while !rest.is_zero() {
        let (q, r) = poly_divrem(&rest, phi)?;
        out.push(r);
        rest = q;
    }
    if out.is_empty() {
        out.push(IntPoly::zero());
    }
    Ok(out)
}

/// v_i(g) for i = 1 ..= order+1, by the recursive line-shifting rule:
/// v_1 is the Gauss valuation, and v_{i+1}(g) = min over the phi_i
/// expansion of e_i v_i(a_s) + s (e_i V_i + h_i).
pub fn maclane_v(t: &OMType, i: usize, g: &IntPoly) -> Valuation {
    assert!(i >= 1 && i <= t.order() + 1);
    if g.is_zero() {
        return Valuation::Infinite;
    }
    if i == 1 {
        return g.content_vp(t.prime());
    }
    let lvl = t.level(i - 1);
    let (h, e) = lvl.he();
    let coeffs = phi_expansion(g, &lvl.phi).expect("monic phi");
    let mut best = Valuation::Infinite;
    for (s, a) in coeffs.iter().enumerate() {
        let va = maclane_v(t, i - 1, a);
        if let Valuation::Finite(va) = va {
            best = best.min(Valuation::Finite(
                e * va + (s as i64) * (e * lvl.v + h),
            ));
        }
    }
    best
}

/// Closed form v_i(phi_j) = e_{j+1}...e_{i-1} (e_j V_j + h_j) for j < i.
pub fn v_of_phi(t: &OMType, i: usize, j: usize) -> i64 {
    assert!(j >= 1 && j < i);
    let lvl = t.level(j);
    let (h, e) = lvl.he();
    let mut val = e * lvl.v + h;
    for k in j + 1..i {
        let (_, ek) = t.level(k).he();
        val *= ek;
    }
    val
}

/// Multiadic expansion of a (deg a < m_i) in the basis
/// phi_1^{j_1} ... phi_{i-1}^{j_{i-1}}, 0 <= j_k < e_k f_k; returns
/// (exponent tuple, base coefficient of degree < m_1) pairs.
pub fn multiadic(t: &OMType, i: usize, a: &IntPoly) -> Result<Vec<(Vec<usize>, IntPoly)>> {
    fn rec(
        t: &OMType,
        i: usize,
        a: &IntPoly,
        suffix: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, IntPoly)>,
    ) -> Result<()> {
        if a.is_zero() {
            return Ok(());
        }
        if i == 1 {
            let mut key = suffix.clone();
            key.reverse();
            out.push((key, a.clone()));
            return Ok(());
        }
        let lvl = t.level(i - 1);
        let digits = phi_expansion(a, &lvl.phi)?;
        let (_, e) = lvl.he();
        if digits.len() > (e as usize) * lvl.f {
            return Err(Error::Invalid(
                "multiadic input exceeds the level degree bound".into(),
            ));
        }
        for (k, d) in digits.iter().enumerate() {
            suffix.push(k);
            rec(t, i - 1, d, suffix, out)?;
            suffix.pop();
        }
        Ok(())
    }
    let mut out = vec![];
    rec(t, i, a, &mut vec![], &mut out)?;
    Ok(out)
}

/// Fast path for v_i on deg < m_i inputs: minimum over multiadic terms of
/// (e_1...e_{i-1}) v_1(a_j) + sum j_k v_i(phi_k).
pub fn maclane_v_multiadic(t: &OMType, i: usize, a: &IntPoly) -> Result<Valuation> {
    if a.is_zero() {
        return Ok(Valuation::Infinite);
    }
    if i == 1 {
        return Ok(a.content_vp(t.prime()));
    }
    let mut e_prod = 1i64;
    for k in 1..i {
        e_prod *= t.level(k).he().1;
    }
    let vphis: Vec<i64> = (1..i).map(|j| v_of_phi(t, i, j)).collect();
    let mut best = Valuation::Infinite;
    for (exps, base) in multiadic(t, i, a)? {
        let v1 = base.content_vp(t.prime()).unwrap();
        let mut val = e_prod * v1;
        for (k, &jk) in exps.iter().enumerate() {
            val += (jk as i64) * vphis[k];
        }
        best = best.min(Valuation::Finite(val));
    }
    Ok(best)
}

/// Newton polygon data of g with respect to (t, phi): the first
/// omega + 1 coefficients of the phi-expansion and their points
/// (s, v_i(a_s) + s v_i(phi)), i = order + 1.
pub struct NewtonData {
    pub polygon: NewtonPolygon,
    pub points: Vec<PolyPoint>,
    pub coeffs: Vec<IntPoly>,
    pub v_phi: i64,
}

pub fn newton_data(t: &OMType, phi: &IntPoly, omega: usize, g: &IntPoly) -> Result<NewtonData> {
    let i = t.order() + 1;
    let v_phi = maclane_v(t, i, phi)
        .finite()
        .ok_or_else(|| Error::Internal("phi has infinite value".into()))?;
    let mut coeffs = phi_expansion(g, phi)?;
    coeffs.truncate(omega + 1);
    while coeffs.len() < omega + 1 {
        coeffs.push(IntPoly::zero());
    }
    let points: Vec<PolyPoint> = coeffs
        .iter()
        .enumerate()
        .map(|(s, a)| PolyPoint {
            x: s as i64,
            y: maclane_v(t, i, a).add_i64((s as i64) * v_phi),
        })
        .collect();
    let polygon = lower_hull(&points)?;
    Ok(NewtonData {
        polygon,
        points,
        coeffs,
        v_phi,
    })
}

/// N_i(g) restricted to the first omega + 1 coefficients.
pub fn newton_op(t: &OMType, phi: &IntPoly, omega: usize, g: &IntPoly) -> Result<NewtonPolygon> {
    Ok(newton_data(t, phi, omega, g)?.polygon)
}

/// v_{i+1}(g) as the touching-line value e*u+s*h read off the cloud;
/// used as the slow cross-check for augmented values.
pub fn augmented_value(t: &OMType, phi: &IntPoly, h: i64, e: i64, g: &IntPoly) -> Result<i64> {
    let omega = full_omega(phi, g);
    let data = newton_data(t, phi, omega, g)?;
    let (w, _, _) = lambda_component(&data.points, h, e)?;
    Ok(w)
}

fn full_omega(phi: &IntPoly, g: &IntPoly) -> usize {
    match (g.degree(), phi.degree()) {
        (Some(dg), Some(dp)) if dp > 0 => dg / dp,
        _ => 0,
    }
}

/// R_{lambda,i}(g) in F_i[y] for lambda = -h/e, where i = order + 1 and
/// phi is a representative of t.
pub fn residual_poly(t: &OMType, phi: &IntPoly, h: i64, e: i64, g: &IntPoly) -> Result<FFPoly> {
    let data = newton_data(t, phi, full_omega(phi, g), g)?;
    residual_from_data(t, &data, h, e)
}

/// Residual polynomial over an already-computed Newton cloud (used by the
/// engine so that the omega truncation and the polygon agree).
pub fn residual_from_data(t: &OMType, data: &NewtonData, h: i64, e: i64) -> Result<FFPoly> {
    let i = t.order() + 1;
    let top = t.field(i).clone();
    let (w, s0, s1) = lambda_component(&data.points, h, e)?;
    debug_assert_eq!((s1 - s0) % e, 0);
    let d = (s1 - s0) / e;
    let mut out = vec![];
    for j in 0..=d {
        let s = (s0 + j * e) as usize;
        let pt = data.points[s];
        let on_side = pt.y.finite().map_or(false, |y| e * y + h * (s as i64) == w);
        if on_side {
            let va = pt.y.unwrap() - (s as i64) * data.v_phi;
            out.push(coeff_residue(t, i, &data.coeffs[s], va)?);
        } else {
            out.push(FFElem::zero(&top));
        }
    }
    Ok(FFPoly::from_coeffs(&top, out))
}

/// Residue of a coefficient a (deg a < m_i) normalized by its own value
/// w = v_i(a), as an element of F_i. Level 1 is the classical reduction;
/// higher levels twist the previous-level residual evaluated at z_{i-1}:
///   c = z_{i-1}^t R_{i-1}(a)(z_{i-1}),  t = (s' - l_{i-1} w) / e_{i-1},
/// where s' is the initial abscissa of the lambda_{i-1}-component of
/// N_{i-1}(a) and l_{i-1} h_{i-1} = 1 (mod e_{i-1}).
fn coeff_residue(t: &OMType, i: usize, a: &IntPoly, w: i64) -> Result<FFElem> {
    if i == 1 {
        let p = t.prime().as_bigint();
        let scale = p.pow(w as u32);
        let reduced = FFPoly::from_coeffs(
            t.field(0),
            a.coeffs()
                .iter()
                .map(|c| FFElem::from_bigint_prime(t.field(0), &(c / &scale)))
                .collect(),
        );
        return reduced.eval(t.z(0));
    }
    let lvl = t.level(i - 1);
    let (hp, ep) = lvl.he();
    let sub = newton_data(&t.truncate(i - 2), &lvl.phi, full_omega(&lvl.phi, a), a)?;
    let (wprime, sprime, _) = lambda_component(&sub.points, hp, ep)?;
    debug_assert_eq!(wprime, w, "component value must match v_i(a)");
    let ell = inv_mod(hp, ep);
    let num = sprime - ell * w;
    debug_assert_eq!(num % ep, 0, "twist exponent must be integral");
    let texp = num / ep;
    let rprev = residual_from_data(&t.truncate(i - 2), &sub, hp, ep)?;
    let z = t.z(i - 1);
    let val = rprev.eval(z)?;
    val.mul(&z.pow_unit(texp)?)
}

/// h^{-1} mod e (0 when e = 1).
fn inv_mod(h: i64, e: i64) -> i64 {
    if e == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (e, h.rem_euclid(e));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "h and e must be coprime");
    t0.rem_euclid(e)
}

/// ord_t(g) = ord_{psi_r} R_r(g) for a type of order r >= 1, and
/// ord_{psi_0}(g mod p) at order 0. On an exact terminal level it is the
/// multiplicity of phi in g.
pub fn ord_type(t: &OMType, g: &IntPoly) -> Result<usize> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if t.order() == 0 {
        let gbar = crate::ff::reduce_int_poly(g, t.field(0));
        if gbar.is_zero() {
            return Err(Error::Invalid("reduction vanishes; divide out p first".into()));
        }
        return gbar.multiplicity_of(&t.psi0);
    }
    let r = t.order();
    let lvl = t.level(r);
    if lvl.is_exact() {
        let coeffs = phi_expansion(g, &lvl.phi)?;
        return Ok(coeffs.iter().take_while(|c| c.is_zero()).count());
    }
    let (h, e) = lvl.he();
    let below = t.truncate(r - 1);
    let rr = residual_poly(&below, &lvl.phi, h, e, g)?;
    rr.multiplicity_of(lvl.psi.as_ref().unwrap())
}

/// Construct g with v_{i+1}(g) = v_target and prescribed residual:
/// y^{ord_y target} R_{lambda,i}(g) = target, for i = order + 1.
pub fn construct(
    t: &OMType,
    phi: &IntPoly,
    h: i64,
    e: i64,
    target: &FFPoly,
    v_target: i64,
) -> Result<IntPoly> {
    let g = construct_at(t, t.order() + 1, phi, h, e, target, v_target)?;
    // postconditions, cheap at desk scale
    let got = augmented_value(t, phi, h, e, &g)?;
    if got != v_target {
        return Err(Error::Internal(format!(
            "construct value mismatch: got {got}, want {v_target}"
        )));
    }
    let r = residual_poly(t, phi, h, e, &g)?;
    let o = target
        .coeffs()
        .iter()
        .take_while(|c| c.is_zero())
        .count();
    let shifted = FFPoly::from_coeffs(target.field(), target.coeffs()[o..].to_vec());
    if r != shifted {
        return Err(Error::Internal("construct residual mismatch".into()));
    }
    Ok(g)
}

fn construct_at(
    t: &OMType,
    i: usize,
    phi: &IntPoly,
    h: i64,
    e: i64,
    target: &FFPoly,
    v_target: i64,
) -> Result<IntPoly> {
    let d = target.degree().ok_or(Error::ZeroInput)? as i64;
    let ell = inv_mod(h, e);
    let s = (ell * v_target).rem_euclid(e);
    let u = (v_target - s * h) / e;
    if u < 0 || (v_target - s * h) % e != 0 {
        return Err(Error::InsufficientV(v_target));
    }
    let v_phi = maclane_v(t, i, phi)
        .finite()
        .ok_or_else(|| Error::Internal("phi has infinite value".into()))?;
    let mut g = IntPoly::zero();
    for j in 0..=d {
        let cj = target.coeff(j as usize);
        if cj.is_zero() {
            continue;
        }
        let abscissa = s + j * e;
        let w = u - j * h - abscissa * v_phi;
        if w < 0 {
            return Err(Error::InsufficientV(v_target));
        }
        let block = if i == 1 {
            let lift = lift_to_int_poly(&cj);
            let scale = t.prime().as_bigint().pow(w as u32);
            lift.scale(&scale)
        } else {
            let lvl = t.level(i - 1);
            let (hp, ep) = lvl.he();
            let ellp = inv_mod(hp, ep);
            let texp = -(ellp * w).div_euclid(ep);
            let z = t.z(i - 1);
            let alpha = cj.mul(&z.pow_unit(-texp)?)?;
            let below = t.field(i - 1);
            let tau = FFPoly::from_coeffs(below, alpha.coords().to_vec());
            construct_at(t, i - 1, &lvl.phi, hp, ep, &tau, w)?
        };
        g = g.add(&block.mul(&phi.pow(abscissa as usize)));
    }
    Ok(g)
}

/// Representative of a type of order i >= 1: phi_{i+1} = phi_i^{e f} + g
/// where g realizes c (psi - y^f) at value V_{i+1}. The constant c is
/// checked by the ord postcondition and searched over F_i^* if needed.
pub fn representative(t: &OMType) -> Result<IntPoly> {
    let r = t.order();
    assert!(r >= 1, "order-0 types take a lift of psi0 as representative");
    let lvl = t.level(r);
    let (h, e) = lvl.he();
    let psi = lvl.psi.as_ref().unwrap();
    let f = lvl.f;
    let v_next = t.v_level(r + 1);
    let below = t.truncate(r - 1);
    let yf = {
        let mut c = vec![FFElem::zero(t.field(r)); f + 1];
        c[f] = FFElem::one(t.field(r));
        FFPoly::from_coeffs(t.field(r), c)
    };
    let phi0 = psi.sub(&yf)?;
    debug_assert!(!phi0.is_zero(), "psi = y^f cannot be irreducible for f > 1");
    let base = lvl.phi.pow(e as usize * f);
    let mut candidates = field_units(t.field(r));
    let one = FFElem::one(t.field(r));
    candidates.retain(|c| c != &one);
    candidates.insert(0, one);
    for c in candidates {
        let g = construct(&below, &lvl.phi, h, e, &phi0.scale(&c)?, v_next)?;
        let rep = base.add(&g);
        if ord_type(t, &rep)? == 1 {
            return Ok(rep);
        }
    }
    Err(Error::Internal(
        "no adequate constant for the representative".into(),
    ))
}

/// All nonzero elements of a (small) tower field, canonically ordered.
pub fn field_units(field: &FieldHandle) -> Vec<FFElem> {
    use num_traits::ToPrimitive;
    let card = field
        .cardinality
        .to_u64()
        .expect("field too large to enumerate");
    let mut out: Vec<FFElem> = (1..card).map(|n| elem_from_index(field, n)).collect();
    out.sort_by_key(|e| e.canonical_key());
    out
}

/// Element with mixed-radix index n over the tower coordinates.
fn elem_from_index(field: &FieldHandle, n: u64) -> FFElem {
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    if field.level == 0 {
        return FFElem::from_biguint(field, BigUint::from(n));
    }
    let base = field.base.as_ref().unwrap();
    let bc = base.cardinality.to_u64().unwrap();
    let mut n = n;
    let mut coords = vec![];
    for _ in 0..field.degree {
        coords.push(elem_from_index(base, n % bc));
        n /= bc;
    }
    FFElem::from_coords(field, coords).unwrap()
}
