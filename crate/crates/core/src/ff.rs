//! Finite fields built as a tower of extensions F_{i+1} = F_i[y]/(psi_i).
//!
//! Elements carry their field handle; arithmetic between mismatched fields
//! is an error rather than a coercion. Factorization is Cantor-Zassenhaus
//! seeded by the caller, so equal seeds give identical output.

use crate::arith::Prime;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

#[derive(Debug)]
pub struct Field {
    pub level: usize,
    pub p: Prime,
    pub base: Option<FieldHandle>,
    /// Defining polynomial over the base field; `None` at level 0.
    pub modulus: Option<FFPoly>,
    /// Degree over the base field.
    pub degree: usize,
    pub cardinality: BigUint,
}

pub type FieldHandle = Arc<Field>;

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        self.level == other.level
            && self.p == other.p
            && self.modulus == other.modulus
            && match (&self.base, &other.base) {
                (None, None) => true,
                (Some(a), Some(b)) => a == b,
                _ => false,
            }
    }
}
impl Eq for Field {}

pub fn prime_field(p: Prime) -> FieldHandle {
    let cardinality = p.to_biguint();
    Arc::new(Field {
        level: 0,
        p,
        base: None,
        modulus: None,
        degree: 1,
        cardinality,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Base(BigUint),
    Ext(Vec<FFElem>),
}

/// Element of a tower field, stored as nested coordinates over the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FFElem {
    field: FieldHandle,
    repr: Repr,
}

impl FFElem {
    pub fn field(&self) -> &FieldHandle {
        &self.field
    }

    pub fn zero(field: &FieldHandle) -> FFElem {
        match field.level {
            0 => FFElem {
                field: field.clone(),
                repr: Repr::Base(BigUint::zero()),
            },
            _ => {
                let base = field.base.as_ref().unwrap();
                FFElem {
                    field: field.clone(),
                    repr: Repr::Ext(vec![FFElem::zero(base); field.degree]),
                }
            }
        }
    }

    pub fn one(field: &FieldHandle) -> FFElem {
        FFElem::from_biguint(field, BigUint::one())
    }

    pub fn from_biguint(field: &FieldHandle, n: BigUint) -> FFElem {
        match field.level {
            0 => FFElem {
                field: field.clone(),
                repr: Repr::Base(n % &field.cardinality),
            },
            _ => {
                let base = field.base.as_ref().unwrap();
                let mut coords = vec![FFElem::zero(base); field.degree];
                coords[0] = FFElem::from_biguint(base, n);
                FFElem {
                    field: field.clone(),
                    repr: Repr::Ext(coords),
                }
            }
        }
    }

    /// Element of an extension field from coordinates over its base.
    pub fn from_coords(field: &FieldHandle, mut coords: Vec<FFElem>) -> Result<FFElem> {
        let base = field.base.as_ref().ok_or(Error::FieldMismatch)?;
        if coords.len() > field.degree
            || coords.iter().any(|c| c.field().as_ref() != base.as_ref())
        {
            return Err(Error::FieldMismatch);
        }
        while coords.len() < field.degree {
            coords.push(FFElem::zero(base));
        }
        Ok(FFElem {
            field: field.clone(),
            repr: Repr::Ext(coords),
        })
    }

    /// Embed a base-field element as a constant of `field`.
    pub fn embed(field: &FieldHandle, c: &FFElem) -> Result<FFElem> {
        let base = field.base.as_ref().ok_or(Error::FieldMismatch)?;
        if c.field.as_ref() != base.as_ref() {
            return Err(Error::FieldMismatch);
        }
        let mut coords = vec![FFElem::zero(base); field.degree];
        coords[0] = c.clone();
        Ok(FFElem {
            field: field.clone(),
            repr: Repr::Ext(coords),
        })
    }

    /// Coordinates over the base field (level >= 1 only).
    pub fn coords(&self) -> &[FFElem] {
        match &self.repr {
            Repr::Ext(v) => v,
            Repr::Base(_) => panic!("coords of a prime-field element"),
        }
    }

    /// Residue in [0, p) for prime-field elements.
    pub fn base_value(&self) -> &BigUint {
        match &self.repr {
            Repr::Base(v) => v,
            Repr::Ext(_) => panic!("base_value of an extension element"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Base(v) => v.is_zero(),
            Repr::Ext(v) => v.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &FFElem::one(&self.field)
    }

    fn check_field(&self, other: &FFElem) -> Result<()> {
        if self.field.as_ref() == other.field.as_ref() {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FFElem) -> Result<FFElem> {
        self.check_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Base(a), Repr::Base(b)) => {
                Repr::Base((a + b) % &self.field.cardinality)
            }
            (Repr::Ext(a), Repr::Ext(b)) => Repr::Ext(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.add(y))
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(Error::FieldMismatch),
        };
        Ok(FFElem {
            field: self.field.clone(),
            repr,
        })
    }

    pub fn neg(&self) -> FFElem {
        let repr = match &self.repr {
            Repr::Base(a) => {
                if a.is_zero() {
                    Repr::Base(BigUint::zero())
                } else {
                    Repr::Base(&self.field.cardinality - a)
                }
            }
            Repr::Ext(a) => Repr::Ext(a.iter().map(|x| x.neg()).collect()),
        };
        FFElem {
            field: self.field.clone(),
            repr,
        }
    }

    pub fn sub(&self, other: &FFElem) -> Result<FFElem> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FFElem) -> Result<FFElem> {
        self.check_field(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Base(a), Repr::Base(b)) => Ok(FFElem {
                field: self.field.clone(),
                repr: Repr::Base((a * b) % &self.field.cardinality),
            }),
            (Repr::Ext(a), Repr::Ext(b)) => {
                let base = self.field.base.as_ref().unwrap();
                let pa = FFPoly::from_coeffs(base, a.clone());
                let pb = FFPoly::from_coeffs(base, b.clone());
                let prod = pa.mul(&pb)?;
                let modulus = self.field.modulus.as_ref().unwrap();
                let rem = prod.rem(modulus)?;
                Ok(FFElem {
                    field: self.field.clone(),
                    repr: Repr::Ext(rem.padded_coeffs(self.field.degree)),
                })
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn inv(&self) -> Result<FFElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.repr {
            Repr::Base(a) => {
                let p = &self.field.cardinality;
                let e = p - BigUint::from(2u32);
                Ok(FFElem {
                    field: self.field.clone(),
                    repr: Repr::Base(a.modpow(&e, p)),
                })
            }
            Repr::Ext(a) => {
                let base = self.field.base.as_ref().unwrap();
                let pa = FFPoly::from_coeffs(base, a.clone());
                let modulus = self.field.modulus.as_ref().unwrap();
                let (g, s) = pa.half_gcd_bezout(modulus)?;
                // g = gcd(a, modulus) must be a nonzero constant
                if g.degree() != Some(0) {
                    return Err(Error::DivisionByZero);
                }
                let c = g.coeff(0).inv()?;
                let inv = s.scale(&c)?.rem(modulus)?;
                Ok(FFElem {
                    field: self.field.clone(),
                    repr: Repr::Ext(inv.padded_coeffs(self.field.degree)),
                })
            }
        }
    }

    pub fn div(&self, other: &FFElem) -> Result<FFElem> {
        self.mul(&other.inv()?)
    }

    pub fn pow_biguint(&self, e: &BigUint) -> Result<FFElem> {
        let mut acc = FFElem::one(&self.field);
        let mut base = self.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base)?;
            }
            if i + 1 < bits {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Power with a possibly negative exponent (unit base required if < 0).
    pub fn pow_i64(&self, e: i64) -> Result<FFElem> {
        if e >= 0 {
            self.pow_biguint(&BigUint::from(e as u64))
        } else {
            self.inv()?.pow_biguint(&BigUint::from((-e) as u64))
        }
    }

    /// Exponent reduced modulo the unit group order; valid for any integer.
    pub fn pow_unit(&self, e: i64) -> Result<FFElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ord = &self.field.cardinality - BigUint::one();
        let ord_i = BigInt::from_biguint(num_bigint::Sign::Plus, ord.clone());
        let mut r = BigInt::from(e) % &ord_i;
        if r < BigInt::zero() {
            r += &ord_i;
        }
        self.pow_biguint(&r.to_biguint().unwrap())
    }

    pub fn random<R: Rng>(field: &FieldHandle, rng: &mut R) -> FFElem {
        match field.level {
            0 => {
                let p = field
                    .cardinality
                    .to_u64()
                    .expect("prime too large for random sampling");
                FFElem {
                    field: field.clone(),
                    repr: Repr::Base(BigUint::from(rng.gen_range(0..p))),
                }
            }
            _ => {
                let base = field.base.as_ref().unwrap();
                FFElem {
                    field: field.clone(),
                    repr: Repr::Ext(
                        (0..field.degree)
                            .map(|_| FFElem::random(base, rng))
                            .collect(),
                    ),
                }
            }
        }
    }

    /// Flattened canonical coordinates over the prime field, used for
    /// deterministic ordering and serialization.
    pub fn canonical_key(&self) -> Vec<BigUint> {
        match &self.repr {
            Repr::Base(v) => vec![v.clone()],
            Repr::Ext(v) => v.iter().flat_map(|c| c.canonical_key()).collect(),
        }
    }

    /// Frobenius-stable description as nested JSON-ready values.
    pub fn to_json(&self) -> serde_json::Value {
        match &self.repr {
            Repr::Base(v) => serde_json::Value::String(v.to_string()),
            Repr::Ext(v) => {
                serde_json::Value::Array(v.iter().map(|c| c.to_json()).collect())
            }
        }
    }
}

/// Dense polynomial over a tower field, ascending coefficients, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FFPoly {
    field: FieldHandle,
    coeffs: Vec<FFElem>,
}

impl FFPoly {
    pub fn zero(field: &FieldHandle) -> FFPoly {
        FFPoly {
            field: field.clone(),
            coeffs: vec![],
        }
    }

    pub fn from_coeffs(field: &FieldHandle, mut coeffs: Vec<FFElem>) -> FFPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        FFPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn constant(c: FFElem) -> FFPoly {
        let field = c.field().clone();
        FFPoly::from_coeffs(&field, vec![c])
    }

    pub fn y(field: &FieldHandle) -> FFPoly {
        FFPoly::from_coeffs(
            field,
            vec![FFElem::zero(field), FFElem::one(field)],
        )
    }

    pub fn field(&self) -> &FieldHandle {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FFElem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| FFElem::zero(&self.field))
    }

    fn padded_coeffs(&self, n: usize) -> Vec<FFElem> {
        let mut v = self.coeffs.clone();
        while v.len() < n {
            v.push(FFElem::zero(&self.field));
        }
        v
    }

    pub fn leading(&self) -> Option<&FFElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, other: &FFPoly) -> Result<FFPoly> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(self.coeff(k).add(&other.coeff(k))?);
        }
        Ok(FFPoly::from_coeffs(&self.field, c))
    }

    pub fn sub(&self, other: &FFPoly) -> Result<FFPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FFPoly {
        FFPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &FFPoly) -> Result<FFPoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(FFPoly::zero(&self.field));
        }
        let mut c =
            vec![FFElem::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(FFPoly::from_coeffs(&self.field, c))
    }

    pub fn scale(&self, k: &FFElem) -> Result<FFPoly> {
        let mut c = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            c.push(a.mul(k)?);
        }
        Ok(FFPoly::from_coeffs(&self.field, c))
    }

    pub fn monic(&self) -> Result<FFPoly> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(l) => self.scale(&l.inv()?),
        }
    }

    pub fn divrem(&self, d: &FFPoly) -> Result<(FFPoly, FFPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let linv = d.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((FFPoly::zero(&self.field), self.clone()));
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![FFElem::zero(&self.field); qlen];
        for k in (0..qlen).rev() {
            let c = rem[k + dd].mul(&linv)?;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(dc)?)?;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((
            FFPoly::from_coeffs(&self.field, quot),
            FFPoly::from_coeffs(&self.field, rem),
        ))
    }

    pub fn rem(&self, d: &FFPoly) -> Result<FFPoly> {
        Ok(self.divrem(d)?.1)
    }

    pub fn gcd(&self, other: &FFPoly) -> Result<FFPoly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (gcd-like remainder g, s) with s * self = g mod `other`,
    /// enough to invert units modulo `other`.
    fn half_gcd_bezout(&self, other: &FFPoly) -> Result<(FFPoly, FFPoly)> {
        let one = FFPoly::constant(FFElem::one(&self.field));
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = one;
        let mut s1 = FFPoly::zero(&self.field);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = s0.sub(&q.mul(&s1)?)?;
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        Ok((r0, s0))
    }

    pub fn eval(&self, x: &FFElem) -> Result<FFElem> {
        let mut acc = FFElem::zero(x.field());
        for c in self.coeffs.iter().rev() {
            let c = if x.field().as_ref() == self.field.as_ref() {
                c.clone()
            } else {
                FFElem::embed(x.field(), c)?
            };
            acc = acc.mul(x)?.add(&c)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Result<FFPoly> {
        if self.coeffs.len() <= 1 {
            return Ok(FFPoly::zero(&self.field));
        }
        let mut c = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, a) in self.coeffs[1..].iter().enumerate() {
            let kk = FFElem::from_biguint(&self.field, BigUint::from(k as u64 + 1));
            c.push(a.mul(&kk)?);
        }
        Ok(FFPoly::from_coeffs(&self.field, c))
    }

    pub fn pow_mod(&self, e: &BigUint, m: &FFPoly) -> Result<FFPoly> {
        let mut acc = FFPoly::constant(FFElem::one(&self.field));
        let mut base = self.rem(m)?;
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base)?.rem(m)?;
            }
            if i + 1 < bits {
                base = base.mul(&base)?.rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, k: usize) -> Result<FFPoly> {
        let mut acc = FFPoly::constant(FFElem::one(&self.field));
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Composition into an extension: evaluate at an element whose field
    /// has `self.field` as base.
    pub fn eval_up(&self, x: &FFElem) -> Result<FFElem> {
        self.eval(x)
    }

    /// Multiplicity of the monic factor `d` in self.
    pub fn multiplicity_of(&self, d: &FFPoly) -> Result<usize> {
        let mut f = self.clone();
        let mut k = 0;
        loop {
            if f.degree() < d.degree() {
                return Ok(k);
            }
            let (q, r) = f.divrem(d)?;
            if !r.is_zero() {
                return Ok(k);
            }
            k += 1;
            f = q;
            if f.is_zero() {
                return Ok(k);
            }
        }
    }

    pub fn canonical_key(&self) -> Vec<BigUint> {
        let mut key = vec![BigUint::from(self.coeffs.len())];
        for c in &self.coeffs {
            key.extend(c.canonical_key());
        }
        key
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(|c| c.to_json()).collect())
    }

    pub fn to_string_y(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = vec![];
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = render_elem(c);
            let term = match k {
                0 => cs,
                1 if c.is_one() => "y".into(),
                1 => format!("{cs}*y"),
                _ if c.is_one() => format!("y^{k}"),
                _ => format!("{cs}*y^{k}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

fn render_elem(c: &FFElem) -> String {
    let key = c.canonical_key();
    if key.len() == 1 {
        key[0].to_string()
    } else {
        format!(
            "[{}]",
            key.iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Build F' = field[y]/(modulus); the modulus must be monic irreducible.
/// Degree-1 extensions are allowed. Returns the new field and the image
/// of y in it.
pub fn field_extend(field: &FieldHandle, modulus: &FFPoly) -> Result<(FieldHandle, FFElem)> {
    if !modulus.is_monic() || modulus.degree().map_or(true, |d| d == 0) {
        return Err(Error::ReducibleModulus);
    }
    if !ff_is_irreducible(modulus)? {
        return Err(Error::ReducibleModulus);
    }
    let degree = modulus.degree().unwrap();
    let cardinality = field.cardinality.pow(degree as u32);
    let up: FieldHandle = Arc::new(Field {
        level: field.level + 1,
        p: field.p.clone(),
        base: Some(field.clone()),
        modulus: Some(modulus.clone()),
        degree,
        cardinality,
    });
    // z = y mod modulus
    let z = if degree == 1 {
        let c = modulus.coeff(0).neg();
        FFElem::embed(&up, &c)?
    } else {
        let base = field;
        let mut coords = vec![FFElem::zero(base); degree];
        coords[1] = FFElem::one(base);
        FFElem {
            field: up.clone(),
            repr: Repr::Ext(coords),
        }
    };
    Ok((up, z))
}

/// q-th root extraction per coefficient for the char-p squarefree step:
/// c -> c^(q/p) is the inverse of the Frobenius x -> x^p.
fn pth_root(f: &FFPoly) -> Result<FFPoly> {
    let field = f.field();
    let p = field.p.to_biguint();
    let exp = &field.cardinality / &p;
    let d = f.degree().unwrap_or(0);
    let pu = p.to_usize().expect("char too large");
    let mut c = vec![];
    for k in (0..=d).step_by(pu) {
        c.push(f.coeff(k).pow_biguint(&exp)?);
    }
    Ok(FFPoly::from_coeffs(field, c))
}

/// Squarefree decomposition in characteristic p: returns pairwise coprime
/// squarefree monic (g, m) with f = lc * prod g^m.
pub fn squarefree_decomposition(f: &FFPoly) -> Result<Vec<(FFPoly, usize)>> {
    let mut out = vec![];
    sqfree_rec(&f.monic()?, 1, &mut out)?;
    out.sort_by_key(|(g, m)| (*m, g.degree(), g.canonical_key()));
    Ok(out)
}

fn sqfree_rec(f: &FFPoly, scale: usize, out: &mut Vec<(FFPoly, usize)>) -> Result<()> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    let df = f.derivative()?;
    if df.is_zero() {
        let root = pth_root(f)?;
        let p = f.field().p.to_biguint().to_usize().unwrap();
        return sqfree_rec(&root, scale * p, out);
    }
    let mut g = f.gcd(&df)?;
    let mut w = f.divrem(&g)?.0.monic()?;
    let mut i = 1usize;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&g)?;
        let z = w.divrem(&y)?.0.monic()?;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i * scale));
        }
        w = y;
        g = g.divrem(&w)?.0.monic()?;
        i += 1;
    }
    if g.degree().unwrap_or(0) > 0 {
        let root = pth_root(&g)?;
        let p = f.field().p.to_biguint().to_usize().unwrap();
        sqfree_rec(&root, scale * p, out)?;
    }
    Ok(())
}

/// Distinct-degree split of a squarefree monic polynomial: (product, d) pairs.
fn distinct_degree(f: &FFPoly) -> Result<Vec<(FFPoly, usize)>> {
    let field = f.field();
    let q = field.cardinality.clone();
    let mut out = vec![];
    let mut f = f.clone();
    let y = FFPoly::y(field);
    let mut h = y.clone();
    let mut d = 0usize;
    while f.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > f.degree().unwrap() {
            out.push((f.clone(), f.degree().unwrap()));
            break;
        }
        h = h.pow_mod(&q, &f)?;
        let g = h.sub(&y)?.gcd(&f)?;
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), d));
            f = f.divrem(&g)?.0.monic()?;
            h = h.rem(&f)?;
        }
    }
    Ok(out)
}

/// Cantor-Zassenhaus equal-degree splitting.
fn equal_degree(f: &FFPoly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<FFPoly>> {
    let n = f.degree().unwrap();
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field();
    let q = &field.cardinality;
    let one = FFPoly::constant(FFElem::one(field));
    loop {
        let mut coeffs = vec![];
        for _ in 0..n {
            coeffs.push(FFElem::random(field, rng));
        }
        let r = FFPoly::from_coeffs(field, coeffs);
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = if (q % BigUint::from(2u32)).is_zero() {
            // char 2: use the trace map sum r^(2^i), i < k*d with q = 2^k
            let k = q.bits() - 1;
            let mut t = r.rem(f)?;
            let mut acc = t.clone();
            for _ in 1..(k as usize) * d {
                t = t.mul(&t)?.rem(f)?;
                acc = acc.add(&t)?;
            }
            acc.gcd(f)?
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let s = r.pow_mod(&e, f)?;
            s.sub(&one)?.gcd(f)?
        };
        let dg = g.degree().unwrap_or(0);
        if dg == 0 || dg == n {
            continue;
        }
        let rest = f.divrem(&g)?.0.monic()?;
        let mut parts = equal_degree(&g, d, rng)?;
        parts.extend(equal_degree(&rest, d, rng)?);
        return Ok(parts);
    }
}

/// Full factorization into monic irreducibles with multiplicities,
/// deterministic for a fixed seed. Output sorted canonically.
pub fn ff_factor(f: &FFPoly, seed: u64) -> Result<Vec<(FFPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(FFPoly, usize)> = vec![];
    for (g, m) in squarefree_decomposition(f)? {
        for (h, d) in distinct_degree(&g)? {
            for irr in equal_degree(&h, d, &mut rng)? {
                out.push((irr, m));
            }
        }
    }
    out.sort_by_key(|(g, _)| (g.degree(), g.canonical_key()));
    Ok(out)
}

/// Irreducibility over any tower field via Rabin's test.
pub fn ff_is_irreducible(f: &FFPoly) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let field = f.field();
    let q = &field.cardinality;
    let y = FFPoly::y(field);
    // y^(q^n) == y mod f
    let mut h = y.clone();
    for _ in 0..n {
        h = h.pow_mod(q, f)?;
    }
    if h.sub(&y)?.rem(f)?.is_zero() == false {
        return Ok(false);
    }
    let mut primes = vec![];
    let mut m = n;
    let mut c = 2;
    while c * c <= m {
        if m % c == 0 {
            primes.push(c);
            while m % c == 0 {
                m /= c;
            }
        }
        c += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    for ell in primes {
        let k = n / ell;
        let mut h = y.clone();
        for _ in 0..k {
            h = h.pow_mod(q, f)?;
        }
        let g = h.sub(&y)?.gcd(f)?;
        if g.degree().unwrap_or(0) > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Image of y in an extension field (the class of the defining variable).
pub fn generator(field: &FieldHandle) -> FFElem {
    let base = field.base.as_ref().expect("prime field has no generator");
    let modulus = field.modulus.as_ref().unwrap();
    if field.degree == 1 {
        FFElem::embed(field, &modulus.coeff(0).neg()).unwrap()
    } else {
        let mut coords = vec![FFElem::zero(base); field.degree];
        coords[1] = FFElem::one(base);
        FFElem::from_coords(field, coords).unwrap()
    }
}

/// Frobenius x -> x^q fixing the base field of `e.field()`.
pub fn frobenius(e: &FFElem) -> Result<FFElem> {
    let q = e
        .field()
        .base
        .as_ref()
        .map(|b| b.cardinality.clone())
        .unwrap_or_else(|| e.field().p.to_biguint());
    e.pow_biguint(&q)
}

/// Reduce an integer polynomial mod p into F_p[y].
pub fn reduce_int_poly(f: &crate::arith::IntPoly, field: &FieldHandle) -> FFPoly {
    assert_eq!(field.level, 0);
    FFPoly::from_coeffs(
        field,
        f.coeffs()
            .iter()
            .map(|c| FFElem::from_bigint_prime(field, c))
            .collect(),
    )
}

impl FFElem {
    /// Prime-field constructor from a signed integer.
    pub fn from_bigint_prime(field: &FieldHandle, n: &BigInt) -> FFElem {
        assert_eq!(field.level, 0);
        let p = BigInt::from_biguint(num_bigint::Sign::Plus, field.cardinality.clone());
        let mut r = n % &p;
        if r < BigInt::zero() {
            r += &p;
        }
        FFElem {
            field: field.clone(),
            repr: Repr::Base(r.to_biguint().unwrap()),
        }
    }
}

/// Canonical integer lift of an element of F_1 = F_p[y]/(psi0) as a
/// polynomial in x of degree < deg(psi0), coefficients in [0, p).
pub fn lift_to_int_poly(e: &FFElem) -> crate::arith::IntPoly {
    use crate::arith::IntPoly;
    let field = e.field();
    match &e.repr {
        Repr::Base(v) => IntPoly::from_coeffs(vec![BigInt::from_biguint(
            num_bigint::Sign::Plus,
            v.clone(),
        )]),
        Repr::Ext(coords) => {
            assert_eq!(field.level, 1, "lift only defined one step above F_p");
            IntPoly::from_coeffs(
                coords
                    .iter()
                    .map(|c| {
                        BigInt::from_biguint(num_bigint::Sign::Plus, c.base_value().clone())
                    })
                    .collect(),
            )
        }
    }
}

/// Canonical monic integer lift of a polynomial over F_p.
pub fn lift_ffpoly_over_fp(f: &FFPoly) -> crate::arith::IntPoly {
    use crate::arith::IntPoly;
    assert_eq!(f.field().level, 0);
    IntPoly::from_coeffs(
        f.coeffs()
            .iter()
            .map(|c| BigInt::from_biguint(num_bigint::Sign::Plus, c.base_value().clone()))
            .collect(),
    )
}
