//! Randomized property suites shared by the acceptance gate and the
//! standalone property target. Each family runs >= 200 cases from a
//! fixed ChaCha seed.

use super::*;
use num_bigint::BigInt;
use num_rational::Rational64;
use om_factor::arith::IntPoly;
use om_factor::ff::{
    ff_factor, ff_is_irreducible, field_extend, prime_field, reduce_int_poly, FFElem, FFPoly,
    FieldHandle,
};
use om_factor::invariants::{
    irreducibility_precision, okutsu_data, single_rep, value_at_root,
};
use om_factor::lifting::{disc_decomposition_check, lift_factorization};
use om_factor::montes::montes;
use om_factor::omtype::{ord_type, OMType};
use om_factor::polygon::{minkowski_sum, Slope};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};
use rand::Rng;

fn runner(seed: u8) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases: 256, failure_persistence: None, ..Config::default() },
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    )
}

fn check<S: Strategy>(
    seed: u8,
    strategy: S,
    test: impl Fn(S::Value) -> std::result::Result<(), TestCaseError>,
) {
    if let Err(e) = runner(seed).run(&strategy, test) {
        match e {
            TestError::Fail(reason, value) => {
                panic!("property failed: {reason} (input {value:?})")
            }
            TestError::Abort(reason) => panic!("property aborted: {reason}"),
        }
    }
}

fn poly_strategy(len: std::ops::Range<usize>, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, len).prop_map(|c| IntPoly::from_i64(&c))
}

/// ord_t(gh) = ord_t(g) + ord_t(h) at types of order 0, 1 and 2.
pub fn ord_type_multiplicative() {
    let p5 = Prime::new(BigInt::from(5)).unwrap();
    let f5 = prime_field(p5.clone());
    let psi0 = reduce_int_poly(&IntPoly::from_i64(&[2, 1]), &f5);
    let t0 = OMType::new(p5, psi0).unwrap();
    let t1 = single_rep(&IRREDUCIBLE[0].poly(), &IRREDUCIBLE[0].prime())
        .unwrap()
        .tipo
        .truncate(1);
    let deepb = &IRREDUCIBLE[7];
    let t2 = single_rep(&deepb.poly(), &deepb.prime()).unwrap().tipo.truncate(2);
    let types: Vec<OMType> = vec![t0, t1, t2];

    check(
        11,
        (poly_strategy(1..6, 50), poly_strategy(1..6, 50)),
        move |(g, h)| {
            if g.is_zero() || h.is_zero() {
                return Err(TestCaseError::reject("zero operand"));
            }
            let gh = g.mul(&h);
            for t in &types {
                if t.order() == 0
                    && (reduce_int_poly(&g, t.field(0)).is_zero()
                        || reduce_int_poly(&h, t.field(0)).is_zero())
                {
                    continue;
                }
                let lhs = ord_type(t, &gh).unwrap();
                let rhs = ord_type(t, &g).unwrap() + ord_type(t, &h).unwrap();
                prop_assert_eq!(lhs, rhs, "order-{} type", t.order());
            }
            Ok(())
        },
    );
}

/// N(gh) is the Minkowski sum of N(g) and N(h) for the classical polygon.
pub fn polygon_product_theorem() {
    check(
        23,
        (
            prop_oneof![Just(2i64), Just(3), Just(5)],
            poly_strategy(1..7, 40),
            poly_strategy(1..7, 40),
        ),
        |(p, g, h)| {
            if g.is_zero() || h.is_zero() {
                return Err(TestCaseError::reject("zero operand"));
            }
            let p = Prime::new(BigInt::from(p)).unwrap();
            let lhs = classical_polygon(&g.mul(&h), &p);
            let rhs = minkowski_sum(&classical_polygon(&g, &p), &classical_polygon(&h, &p));
            prop_assert_eq!(lhs, rhs);
            Ok(())
        },
    );
}

/// v(phi_i(theta)) = (V_i + h_i/e_i) / (e_0 ... e_{i-1}) on every level,
/// over seeded perturbations of the irreducible corpus.
pub fn resultant_identity() {
    check(37, (0..IRREDUCIBLE.len(), any::<u64>()), |(idx, seed)| {
        let fx = &IRREDUCIBLE[idx];
        let (f0, p) = (fx.poly(), fx.prime());
        let prec = irreducibility_precision(&f0, &p).unwrap();
        let f = perturb(&f0, &p, prec, &mut seeded(seed));
        let rep = single_rep(&f, &p).unwrap();
        let mut e_below = 1i64;
        for i in 1..=rep.depth() + 1 {
            let lvl = rep.tipo.level(i);
            let expect = match lvl.slope {
                Slope::NegInf => break,
                Slope::Finite { h, e } => {
                    (Rational64::from_integer(lvl.v) + Rational64::new(h, e))
                        / Rational64::from_integer(e_below)
                }
            };
            prop_assert_eq!(value_at_root(&f, &lvl.phi, &p).unwrap(), expect);
            e_below *= lvl.he().1;
        }
        Ok(())
    });
}

/// Okutsu frame: for monic g with m_i <= deg g < m_{i+1},
/// v(g(theta))/deg g <= v(phi_i(theta))/m_i.
pub fn okutsu_frame_inequality() {
    let frames: Vec<(IntPoly, Prime, om_factor::montes::OMRep)> = IRREDUCIBLE
        .iter()
        .map(|fx| {
            let (f, p) = (fx.poly(), fx.prime());
            let rep = single_rep(&f, &p).unwrap();
            (f, p, rep)
        })
        .filter(|(_, _, rep)| rep.depth() >= 1)
        .collect();

    check(41, (0..frames.len(), any::<u64>()), move |(idx, seed)| {
        let (f, p, rep) = &frames[idx];
        let n = f.degree().unwrap();
        let r = rep.depth();
        let mut rng = seeded(seed);
        let i = rng.gen_range(1..=r);
        let m_i = rep.tipo.level(i).m;
        let m_up = if i < r { rep.tipo.level(i + 1).m } else { n };
        let deg = rng.gen_range(m_i..m_up);
        let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.gen_range(-999..=999)).collect();
        coeffs.push(1);
        let g = IntPoly::from_i64(&coeffs);
        let lhs = value_at_root(f, &g, p).unwrap() / Rational64::from_integer(deg as i64);
        let rhs = value_at_root(f, &rep.tipo.level(i).phi, p).unwrap()
            / Rational64::from_integer(m_i as i64);
        prop_assert!(lhs <= rhs, "lhs {lhs} rhs {rhs} (deg {deg}, level {i})");
        Ok(())
    });
}

/// delta_0 <= 2 delta / n, with equality exactly when r = 0 or
/// (r = 1, e1 f1 = 2, p > e1).
pub fn delta0_bound() {
    check(43, (0..IRREDUCIBLE.len(), any::<u64>()), |(idx, seed)| {
        let fx = &IRREDUCIBLE[idx];
        let (f0, p) = (fx.poly(), fx.prime());
        let prec = irreducibility_precision(&f0, &p).unwrap();
        let f = perturb(&f0, &p, prec, &mut seeded(seed));
        let rep = single_rep(&f, &p).unwrap();
        let report =
            okutsu_data(&rep, om_factor::arith::discriminant_valuation(&f, &p).unwrap()).unwrap();
        let bound = Rational64::new(2 * report.delta, report.n as i64);
        prop_assert!(report.delta0 <= bound);
        let lemma = report.depth == 0
            || (report.depth == 1
                && report.levels[0].e * report.levels[0].f == 2
                && fx.p > report.levels[0].e);
        prop_assert_eq!(report.delta0 == bound, lemma, "delta0 {} bound {}", report.delta0, bound);
        Ok(())
    });
}

/// The discriminant decomposition is exact once factors are lifted to
/// precision delta + 1.
pub fn disc_decomposition_exact() {
    check(53, (0..COMPOSITE.len(), any::<u64>()), |(idx, seed)| {
        let fx = &COMPOSITE[idx];
        let (f0, p) = (fx.poly(), fx.prime());
        let delta = disc_val(&f0, &p);
        let f = perturb(&f0, &p, delta + 1, &mut seeded(seed));
        let out = montes(&f, &p, 0).unwrap();
        let lifted = lift_factorization(&f, &out, delta + 1).unwrap();
        prop_assert!(disc_decomposition_check(&f, &lifted.factors, &p).unwrap());
        Ok(())
    });
}

fn rabin_certified(fac: &FFPoly, field: &FieldHandle) -> bool {
    let d = fac.degree().unwrap();
    let y = FFPoly::y(field);
    let frob = y.pow_mod(&field.cardinality.pow(d as u32), fac).unwrap();
    if frob != y.rem(fac).unwrap() {
        return false;
    }
    for l in [2usize, 3, 5] {
        if d % l == 0 {
            let part = y.pow_mod(&field.cardinality.pow((d / l) as u32), fac).unwrap();
            let diff = part.sub(&y.rem(fac).unwrap()).unwrap();
            let g = diff.gcd(fac).unwrap();
            if g.degree() != Some(0) {
                return false;
            }
        }
    }
    true
}

/// ff_factor recomposes to the input and every factor passes the
/// Frobenius (Rabin) irreducibility certificate.
pub fn ff_factor_certified() {
    check(
        61,
        (
            prop_oneof![Just(2i64), Just(3), Just(5), Just(7)],
            1usize..=2,
            1usize..=6,
            any::<u64>(),
        ),
        |(p, ext, deg, seed)| {
            let prime = Prime::new(BigInt::from(p)).unwrap();
            let base = prime_field(prime.clone());
            let field = if ext == 1 {
                base
            } else {
                let mut found = None;
                'scan: for a in 0..p {
                    for b in 0..p {
                        let cand = reduce_int_poly(&IntPoly::from_i64(&[b, a, 1]), &base);
                        if ff_is_irreducible(&cand).unwrap() {
                            found = Some(cand);
                            break 'scan;
                        }
                    }
                }
                field_extend(&base, &found.unwrap()).unwrap().0
            };
            let mut rng = seeded(seed);
            let mut coeffs: Vec<FFElem> =
                (0..deg).map(|_| FFElem::random(&field, &mut rng)).collect();
            coeffs.push(FFElem::one(&field));
            let f = FFPoly::from_coeffs(&field, coeffs);
            let facs = ff_factor(&f, seed).unwrap();
            let mut prod = FFPoly::constant(FFElem::one(&field));
            for (fac, mult) in &facs {
                prop_assert!(fac.degree().unwrap() >= 1);
                prop_assert!(rabin_certified(fac, &field), "uncertified factor");
                for _ in 0..*mult {
                    prod = prod.mul(fac).unwrap();
                }
            }
            prop_assert_eq!(prod, f);
            Ok(())
        },
    );
}

pub fn run_all() -> Vec<&'static str> {
    ord_type_multiplicative();
    polygon_product_theorem();
    resultant_identity();
    okutsu_frame_inequality();
    delta0_bound();
    disc_decomposition_exact();
    ff_factor_certified();
    vec![
        "ord_type multiplicativity",
        "polygon product theorem",
        "resultant identity",
        "okutsu frame inequality",
        "delta0 bound",
        "disc decomposition",
        "ff_factor certificates",
    ]
}
