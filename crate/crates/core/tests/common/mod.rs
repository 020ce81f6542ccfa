//! Shared fixture corpus and helpers for the integration suites.

#![allow(dead_code)]

pub mod props;

use num_bigint::BigInt;
use om_factor::arith::{discriminant_valuation, vp, IntPoly, Prime, Valuation};
use om_factor::montes::OMRep;
use om_factor::polygon::{lower_hull, NewtonPolygon, PolyPoint};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Fixture {
    pub name: &'static str,
    pub coeffs: &'static [i64],
    pub p: i64,
}

impl Fixture {
    pub fn poly(&self) -> IntPoly {
        IntPoly::from_i64(self.coeffs)
    }

    pub fn prime(&self) -> Prime {
        Prime::new(BigInt::from(self.p)).unwrap()
    }
}

/// Irreducible over Z_p; names carry the prime so products stay coherent.
pub const IRREDUCIBLE: &[Fixture] = &[
    Fixture { name: "quartic-5", coeffs: &[25, 0, 5, 0, 1], p: 5 },
    Fixture { name: "eis2-2", coeffs: &[2, 0, 1], p: 2 },
    Fixture { name: "eis3-3", coeffs: &[3, 0, 0, 1], p: 3 },
    Fixture { name: "eis2-5", coeffs: &[5, 0, 1], p: 5 },
    Fixture { name: "eis3-7", coeffs: &[7, 0, 0, 1], p: 7 },
    Fixture { name: "unram2-2", coeffs: &[1, 1, 1], p: 2 },
    Fixture { name: "deep-2", coeffs: &[4, 8, 4, 0, 1], p: 2 },
    Fixture { name: "deepb-2", coeffs: &[4, 16, 4, 0, 1], p: 2 },
    Fixture { name: "sextic-2", coeffs: &[2, 2, 0, 2, 0, 0, 1], p: 2 },
    Fixture { name: "lin-2", coeffs: &[22, 1], p: 2 },
    Fixture { name: "eis2-13", coeffs: &[13, 0, 1], p: 13 },
    Fixture { name: "eis3-11", coeffs: &[11, 0, 0, 1], p: 11 },
];

pub struct Composite {
    pub name: &'static str,
    pub parts: &'static [&'static [i64]],
    pub p: i64,
}

impl Composite {
    pub fn poly(&self) -> IntPoly {
        self.parts
            .iter()
            .fold(IntPoly::from_i64(&[1]), |acc, c| acc.mul(&IntPoly::from_i64(c)))
    }

    pub fn prime(&self) -> Prime {
        Prime::new(BigInt::from(self.p)).unwrap()
    }
}

pub const COMPOSITE: &[Composite] = &[
    Composite { name: "twin-lin-2", parts: &[&[22, 1], &[26, 1]], p: 2 },
    Composite { name: "quads-5", parts: &[&[5, 0, 1], &[30, 0, 1]], p: 5 },
    Composite { name: "mixed-2", parts: &[&[2, 0, 1], &[1, 1, 1]], p: 2 },
    Composite { name: "triple-3", parts: &[&[3, 0, 0, 1], &[3, 0, 1], &[3, 1]], p: 3 },
    Composite { name: "quartic-quad-5", parts: &[&[25, 0, 5, 0, 1], &[5, 0, 1]], p: 5 },
    Composite { name: "deep-eis-2", parts: &[&[4, 8, 4, 0, 1], &[2, 0, 1]], p: 2 },
];

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G = F + p^nu * R with deg R < deg F, so G stays monic and G = F mod p^nu.
pub fn perturb(f: &IntPoly, p: &Prime, nu: i64, rng: &mut ChaCha8Rng) -> IntPoly {
    let n = f.degree().unwrap();
    let scale = p.as_bigint().pow(nu as u32);
    let mut coeffs: Vec<BigInt> = f.coeffs().to_vec();
    coeffs.resize(n + 1, BigInt::from(0));
    for c in coeffs.iter_mut().take(n) {
        let bump: i64 = rng.gen_range(-999..=999);
        *c += &scale * BigInt::from(bump);
    }
    IntPoly::from_coeffs(coeffs)
}

pub fn disc_val(f: &IntPoly, p: &Prime) -> i64 {
    match discriminant_valuation(f, p).unwrap() {
        Valuation::Finite(d) => d,
        Valuation::Infinite => panic!("inseparable fixture"),
    }
}

/// Classical (level-1) Newton polygon of f with respect to v_p.
pub fn classical_polygon(f: &IntPoly, p: &Prime) -> NewtonPolygon {
    let pts: Vec<PolyPoint> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match vp(c, p) {
            Valuation::Finite(v) => Some(PolyPoint { x: i as i64, y: Valuation::Finite(v) }),
            Valuation::Infinite => None,
        })
        .collect();
    lower_hull(&pts).unwrap()
}

/// Per-leaf signature used by the stability theorems: depth plus the
/// (e, f, h) triple of every non-terminal level.
pub fn leaf_key(rep: &OMRep) -> (usize, i64, Vec<(i64, i64, i64)>) {
    let f0 = rep.tipo.psi0().degree().unwrap() as i64;
    let levels = (1..=rep.depth())
        .map(|i| {
            let lvl = rep.tipo.level(i);
            let (h, e) = lvl.he();
            (e, lvl.f as i64, h)
        })
        .collect();
    (rep.depth(), f0, levels)
}
