//! Exact integer and polynomial arithmetic over Z, with p-adic valuations.
//!
//! Polynomials are dense vectors of `BigInt` coefficients in ascending
//! degree order with no trailing zeros; the zero polynomial is the empty
//! vector.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A p-adic valuation: a finite integer or +infinity (for 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn unwrap(self) -> i64 {
        self.finite().expect("unexpected infinite valuation")
    }

    pub fn add(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }

    pub fn add_i64(self, k: i64) -> Valuation {
        match self {
            Valuation::Finite(a) => Valuation::Finite(a + k),
            Valuation::Infinite => Valuation::Infinite,
        }
    }

    pub fn scale(self, k: i64) -> Valuation {
        match self {
            Valuation::Finite(a) => Valuation::Finite(a * k),
            Valuation::Infinite => Valuation::Infinite,
        }
    }

    pub fn min(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a.min(b)),
            (Valuation::Finite(a), _) | (_, Valuation::Finite(a)) => Valuation::Finite(a),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// A verified prime number.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Prime(BigInt);

impl Prime {
    pub fn new(p: BigInt) -> Result<Prime> {
        if is_prime(&p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p.to_string()))
        }
    }

    pub fn as_bigint(&self) -> &BigInt {
        &self.0
    }

    pub fn to_biguint(&self) -> BigUint {
        self.0.to_biguint().unwrap()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic Miller-Rabin over the first few bases, exact for all
/// inputs below 3.3e24; desk-scale primes are far smaller.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    let n = n.to_biguint().unwrap();
    let small: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &small {
        let q = BigUint::from(q);
        if n == q {
            return true;
        }
        if (&n % &q).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let nm1 = &n - &one;
    let s = nm1.trailing_zeros().unwrap();
    let d = &nm1 >> s;
    'bases: for &a in &small {
        let mut x = BigUint::from(a).modpow(&d, &n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x.modpow(&two, &n);
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// p-adic valuation of an integer; `Infinite` for 0.
pub fn vp(n: &BigInt, p: &Prime) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let p = p.as_bigint();
    let mut n = n.clone();
    let mut v = 0i64;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        n = q;
        v += 1;
    }
}

/// Dense univariate polynomial over Z, ascending coefficients, trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly { coeffs: vec![] }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> IntPoly {
        IntPoly::from_coeffs(vec![c])
    }

    pub fn x() -> IntPoly {
        IntPoly::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    /// x^k
    pub fn x_pow(k: usize) -> IntPoly {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
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

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(self.coeff(k) + other.coeff(k));
        }
        IntPoly::from_coeffs(c)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(self.coeff(k) - other.coeff(k));
        }
        IntPoly::from_coeffs(c)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly { coeffs: c }
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, mut k: usize) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::constant(BigInt::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * BigInt::from(k as u64 + 1))
                .collect(),
        )
    }

    /// Minimum p-adic valuation over the coefficients (the Gauss valuation).
    pub fn content_vp(&self, p: &Prime) -> Valuation {
        let mut acc = Valuation::Infinite;
        for c in &self.coeffs {
            acc = acc.min(vp(c, p));
            if acc == Valuation::Finite(0) {
                break;
            }
        }
        acc
    }

    pub fn to_string_x(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = vec![];
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = match k {
                0 => format!("{c}"),
                1 if c.is_one() => "x".into(),
                1 => format!("{c}*x"),
                _ if c.is_one() => format!("x^{k}"),
                _ => format!("{c}*x^{k}"),
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Division with remainder by a monic divisor; exact over Z.
pub fn poly_divrem(f: &IntPoly, d: &IntPoly) -> Result<(IntPoly, IntPoly)> {
    if !d.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    let dd = d.degree().unwrap();
    let mut rem = f.coeffs.clone();
    if rem.len() <= dd {
        return Ok((IntPoly::zero(), f.clone()));
    }
    let qlen = rem.len() - dd;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.coeffs.iter().enumerate() {
            rem[k + j] -= &c * dc;
        }
        quot[k] = c;
    }
    rem.truncate(dd);
    Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
}

/// Resultant as the determinant of the Sylvester matrix with the rows of
/// `f` first, computed exactly by fraction-free elimination.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    if m == 0 {
        return Ok(f.coeffs[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(g.coeffs[0].pow(m as u32));
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (k, c) in f.coeffs.iter().rev().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in g.coeffs.iter().rev().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> Result<BigInt> {
    let n = a.len();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign < 0 { -det } else { det })
}

/// p-adic valuation of disc(f) = +/- Res(f, f') / lc(f).
/// `Infinite` signals an inseparable reduction (disc divisible by all
/// powers of p is impossible over Z unless disc = 0).
pub fn discriminant_valuation(f: &IntPoly, p: &Prime) -> Result<Valuation> {
    let deg = f.degree().ok_or(Error::ZeroInput)?;
    if deg == 0 {
        return Err(Error::ZeroInput);
    }
    let r = resultant(f, &f.derivative())?;
    if r.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let lead = vp(f.leading().unwrap(), p);
    Ok(Valuation::Finite(vp(&r, p).unwrap() - lead.unwrap()))
}

/// Reduce every coefficient into [0, p^nu); a monic leading coefficient is
/// kept as 1 so the degree is preserved for monic inputs.
pub fn reduce_mod_power(f: &IntPoly, p: &Prime, nu: u32) -> IntPoly {
    let modulus = p.as_bigint().pow(nu);
    let monic = f.is_monic();
    let mut c: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|x| {
            let mut r = x % &modulus;
            if r.is_negative() {
                r += &modulus;
            }
            r
        })
        .collect();
    if monic {
        *c.last_mut().unwrap() = BigInt::one();
    }
    IntPoly::from_coeffs(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(n: u64) -> Prime {
        Prime::new(BigInt::from(n)).unwrap()
    }

    #[test]
    fn primality() {
        for q in [2u64, 3, 5, 7, 11, 13, 97, 65537] {
            assert!(Prime::new(BigInt::from(q)).is_ok());
        }
        for q in [0u64, 1, 4, 9, 91, 561, 65535] {
            assert!(Prime::new(BigInt::from(q)).is_err());
        }
    }

    #[test]
    fn vp_values() {
        assert_eq!(vp(&BigInt::from(572), &p(2)), Valuation::Finite(2));
        assert_eq!(vp(&BigInt::from(0), &p(2)), Valuation::Infinite);
        assert_eq!(vp(&BigInt::from(-24), &p(2)), Valuation::Finite(3));
        assert_eq!(vp(&BigInt::from(125), &p(5)), Valuation::Finite(3));
    }

    #[test]
    fn divrem_worked_example() {
        // x^2 + 48x + 572 = (x + 46)(x + 2) + 480
        let f = IntPoly::from_i64(&[572, 48, 1]);
        let d = IntPoly::from_i64(&[2, 1]);
        let (q, r) = poly_divrem(&f, &d).unwrap();
        assert_eq!(q, IntPoly::from_i64(&[46, 1]));
        assert_eq!(r, IntPoly::from_i64(&[480]));
        assert_eq!(q.mul(&d).add(&r), f);
    }

    #[test]
    fn divrem_rejects_non_monic() {
        let f = IntPoly::from_i64(&[1, 1]);
        let d = IntPoly::from_i64(&[1, 2]);
        assert!(matches!(poly_divrem(&f, &d), Err(Error::NonMonicDivisor)));
    }

    #[test]
    fn resultant_worked_examples() {
        // Res(x - 2, x^2 + 1) = g(2) = 5
        let f = IntPoly::from_i64(&[-2, 1]);
        let g = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), BigInt::from(5));
        // Res(x + 22, x + 26) = 4
        let f = IntPoly::from_i64(&[22, 1]);
        let g = IntPoly::from_i64(&[26, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), BigInt::from(4));
        assert!(matches!(
            resultant(&IntPoly::zero(), &g),
            Err(Error::ZeroInput)
        ));
    }

    #[test]
    fn resultant_swap_sign() {
        let f = IntPoly::from_i64(&[3, 1, 2]);
        let g = IntPoly::from_i64(&[-1, 4, 0, 1]);
        let m = f.degree().unwrap() as u32;
        let n = g.degree().unwrap() as u32;
        let rfg = resultant(&f, &g).unwrap();
        let rgf = resultant(&g, &f).unwrap();
        let sign = if (m * n) % 2 == 1 { -1 } else { 1 };
        assert_eq!(rfg, rgf * BigInt::from(sign));
    }

    #[test]
    fn resultant_multiplicative() {
        let f = IntPoly::from_i64(&[1, 2, 1, 3]);
        let g = IntPoly::from_i64(&[5, -1, 2]);
        let h = IntPoly::from_i64(&[-3, 7, 1]);
        let lhs = resultant(&f.mul(&g), &h).unwrap();
        let rhs = resultant(&f, &h).unwrap() * resultant(&g, &h).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_root_product() {
        // Res(f, g) = lc(f)^deg(g) * prod g(root_i) for f = (x-1)(x-3)
        let f = IntPoly::from_i64(&[3, -4, 1]);
        let g = IntPoly::from_i64(&[1, 1, 2]);
        let expect = g.eval(&BigInt::from(1)) * g.eval(&BigInt::from(3));
        assert_eq!(resultant(&f, &g).unwrap(), expect);
    }

    #[test]
    fn disc_valuations() {
        let f = IntPoly::from_i64(&[25, 0, 5, 0, 1]);
        assert_eq!(
            discriminant_valuation(&f, &p(5)).unwrap(),
            Valuation::Finite(6)
        );
        let g = IntPoly::from_i64(&[572, 48, 1]);
        assert_eq!(
            discriminant_valuation(&g, &p(2)).unwrap(),
            Valuation::Finite(4)
        );
        // (x+1)^2 is inseparable everywhere
        let s = IntPoly::from_i64(&[1, 2, 1]);
        assert_eq!(
            discriminant_valuation(&s, &p(2)).unwrap(),
            Valuation::Infinite
        );
    }

    #[test]
    fn reduce_mod_power_keeps_leading_one() {
        let f = IntPoly::from_i64(&[572, 48, 1]);
        let r = reduce_mod_power(&f, &p(2), 4);
        assert_eq!(r, IntPoly::from_i64(&[12, 0, 1]));
        let g = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(reduce_mod_power(&g, &p(2), 3), IntPoly::from_i64(&[7, 1]));
    }

    #[test]
    fn pow_and_eval() {
        let f = IntPoly::from_i64(&[1, 1]);
        assert_eq!(f.pow(3), IntPoly::from_i64(&[1, 3, 3, 1]));
        assert_eq!(f.pow(0), IntPoly::from_i64(&[1]));
        assert_eq!(
            IntPoly::from_i64(&[25, 0, 5, 0, 1]).eval(&BigInt::from(2)),
            BigInt::from(61)
        );
    }
}
