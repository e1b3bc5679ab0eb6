//! The invariant suite behind the `verify` command.
//!
//! Every check is exact. Randomized checks draw from a ChaCha stream seeded
//! by the caller, so a run is reproducible from its seed.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chebyshev::{chebyshev, chebyshev_explicit, chebyshev_t, interval_check};
use crate::census::census;
use crate::density::{msect_count, CountMethod};
use crate::field::FieldDesc;
use crate::places::{places_oracle, product_formula};
use crate::poly::Poly;
use crate::quadratic::height_k;
use crate::rational::{int, valuation};
use crate::roots::rational_roots;
use crate::sect::{decide_sectable, sect_poly_q, witness_family, witness_family_holds};
use crate::{FieldDesc as F, IntPoly, QuadElem, QuadField, RatPoly, Rational, Result};

pub const DEFAULT_SEED: u64 = 20_240_607;

/// The `T_0..T_7` list every implementation must reproduce verbatim.
pub const CHEBYSHEV_TEXT: [&str; 8] = [
    "1",
    "x",
    "2*x^2-1",
    "4*x^3-3*x",
    "8*x^4-8*x^2+1",
    "16*x^5-20*x^3+5*x",
    "32*x^6-48*x^4+18*x^2-1",
    "64*x^7-112*x^5+56*x^3-7*x",
];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, failures: Vec<String>, ran: usize) -> Check {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{ran} cases")
        } else {
            format!("{} of {ran} failed; first: {}", failures.len(), failures[0])
        };
        Check { name, passed, detail }
    }

    fn from_result(name: &'static str, r: Result<Check>) -> Check {
        r.unwrap_or_else(|e| Check { name, passed: false, detail: e.to_string() })
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= 1000`, `1 <= q <= 1000`; about half land in `[-1, 1]`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let q: i64 = rng.gen_range(1..=1000);
    let p: i64 = if rng.gen_bool(0.5) { rng.gen_range(-q..=q) } else { rng.gen_range(-1000..=1000) };
    Rational::new(p.into(), q.into())
}

/// A rational whose denominator carries `prime` to a random power in
/// `0..=3`, so that most draws have `|x|_prime > 1`.
pub fn random_rational_at(rng: &mut impl Rng, prime: u64) -> Rational {
    let e: u32 = rng.gen_range(0..=3);
    let s: i64 = rng.gen_range(1..=60);
    let p: i64 = rng.gen_range(-500..=500);
    Rational::new(p.into(), BigInt::from(s) * BigInt::from(prime).pow(e))
}

pub fn chebyshev_ground_truth() -> Check {
    let failures = (0..8u32)
        .filter_map(|m| {
            let got = chebyshev(m).t.to_string();
            (got != CHEBYSHEV_TEXT[m as usize]).then(|| format!("T_{m} = {got}"))
        })
        .collect();
    Check::new("chebyshev-ground-truth", failures, 8)
}

pub fn recurrence_matches_explicit(max_m: u32) -> Check {
    let failures = (0..=max_m)
        .filter(|&m| chebyshev(m) != chebyshev_explicit(m))
        .map(|m| format!("m = {m}"))
        .collect();
    Check::new("recurrence-explicit", failures, max_m as usize + 1)
}

pub fn composition(max_rs: u32) -> Check {
    let mut failures = Vec::new();
    for r in 1..=max_rs {
        for s in 1..=max_rs {
            let tr: IntPoly = chebyshev_t(r);
            if tr.compose(&chebyshev_t(s)) != chebyshev_t(r * s) {
                failures.push(format!("T_{r} o T_{s}"));
            }
        }
    }
    Check::new("composition", failures, (max_rs * max_rs) as usize)
}

pub fn pell(max_m: u32) -> Check {
    let one_minus_x2 = IntPoly::new(vec![1.into(), 0.into(), (-1).into()]);
    let failures = (0..=max_m)
        .filter(|&m| {
            let c = chebyshev(m);
            &(&c.t * &c.t) + &(&one_minus_x2 * &(&c.u * &c.u)) != IntPoly::constant(BigInt::one())
        })
        .map(|m| format!("m = {m}"))
        .collect();
    Check::new("pell", failures, max_m as usize + 1)
}

/// Leading term, parity and the values at `0` and `±1`.
pub fn basic_properties(max_m: u32) -> Check {
    let mut failures = Vec::new();
    for m in 1..=max_m {
        let t: IntPoly = chebyshev_t(m);
        let at = |x: i64| t.evaluate(&BigInt::from(x));
        let odd = m % 2 == 1;
        let sign = if m % 4 == 0 { 1 } else { -1 };
        let ok = t.degree() == Some(m as usize)
            && *t.lead().unwrap() == BigInt::one() << (m - 1)
            && t.has_parity(m as usize % 2)
            && at(1) == BigInt::one()
            && at(-1) == if odd { -BigInt::one() } else { BigInt::one() }
            && at(0) == if odd { BigInt::zero() } else { BigInt::from(sign) };
        if !ok {
            failures.push(format!("m = {m}"));
        }
    }
    Check::new("basic-properties", failures, max_m as usize)
}

/// `|x| <= 1` exactly when `|T_m(x)| <= 1`.
pub fn interval_law(rng: &mut impl Rng, samples: usize, max_m: u32) -> Check {
    let mut failures = Vec::new();
    for _ in 0..samples {
        let x = random_rational(rng);
        for m in 1..=max_m {
            let (a, b) = interval_check(&x, m);
            if a != b {
                failures.push(format!("x = {x}, m = {m}"));
            }
        }
    }
    Check::new("interval-law", failures, samples * max_m as usize)
}

/// `|T_m(r)|_q = |r|_q^m` whenever `|r|_q > 1`, for odd primes `q`.
pub fn valuation_law(rng: &mut impl Rng, samples: usize, primes: &[u64], ms: std::ops::RangeInclusive<u32>) -> Result<Check> {
    let polys: Vec<(u32, RatPoly)> = ms.clone().map(|m| (m, chebyshev_t(m))).collect();
    let mut failures = Vec::new();
    let mut ran = 0;
    for _ in 0..samples {
        for &q in primes {
            let r = random_rational_at(rng, q);
            let v = valuation(&r, q)?;
            if !v.exceeds_one() {
                continue;
            }
            let abs_r = v.multiplicative_value().unwrap();
            for (m, t) in &polys {
                ran += 1;
                let got = valuation(&t.evaluate(&r), q)?.multiplicative_value();
                if got != Some(num_traits::pow(abs_r.clone(), *m as usize)) {
                    failures.push(format!("r = {r}, q = {q}, m = {m}"));
                }
            }
        }
    }
    Ok(Check::new("valuation-law", failures, ran))
}

/// `witness_family(m)` is rootless for `T_m - a` over `Q` yet m-sectable.
pub fn witness_families(ms: &[u32]) -> Result<Check> {
    let mut failures = Vec::new();
    for &m in ms {
        let a = witness_family(m)?;
        let no_roots = rational_roots(&{
            let t: IntPoly = chebyshev_t(m);
            &t.scale(a.denom()) - &Poly::constant(a.numer().clone())
        })?
        .roots
        .is_empty();
        let sectable = decide_sectable(&QuadElem::from(a.clone()), m)?.sectable;
        if !(no_roots && sectable && witness_family_holds(m)?) {
            failures.push(format!("m = {m}, a = {a}"));
        }
    }
    Ok(Check::new("witness-families", failures, ms.len()))
}

/// Small Wantzel decisions with known answers.
pub fn wantzel_examples(rng: &mut impl Rng) -> Result<Check> {
    let mut failures = Vec::new();
    let q = |r: Rational| QuadElem::from(r);
    let mut expect = |a: Rational, m: u32, want: bool| -> Result<()> {
        if decide_sectable(&q(a.clone()), m)?.sectable != want {
            failures.push(format!("({a}, {m})"));
        }
        Ok(())
    };
    expect(Rational::new(1.into(), 2.into()), 3, false)?;
    expect(int(0), 3, true)?;
    for m in 1..=12 {
        expect(int(1), m, true)?;
        expect(int(-1), m, true)?;
    }
    let mut ran = 26;
    for _ in 0..50 {
        let mut a = random_rational(rng);
        if a.abs() > Rational::one() {
            a = a.recip();
        }
        expect(a, 1 << rng.gen_range(0..=5), true)?;
        ran += 1;
    }
    let _ = sect_poly_q;
    Ok(Check::new("wantzel-examples", failures, ran))
}

/// `in_unit = (total + 3) / 2` on every bound up to the given maxima.
pub fn census_identity(max_q: i64, quad: &[(i64, i64)], shards: usize) -> Result<Check> {
    let mut failures = Vec::new();
    let mut ran = 0;
    let mut cases: Vec<(FieldDesc, i64)> = (1..=max_q).map(|b| (F::Rational, b)).collect();
    for &(d, max_b) in quad {
        let k = F::quad(d)?;
        cases.extend((1..=max_b).map(|b| (k, b)));
    }
    for (field, b) in cases {
        ran += 1;
        match census(field, &int(b), shards) {
            Ok(row) if row.identity_holds() => {}
            Ok(row) => failures.push(format!("{field} B={b}: {} / {}", row.total, row.in_unit)),
            Err(e) => failures.push(format!("{field} B={b}: {e}")),
        }
    }
    Ok(Check::new("census-identity", failures, ran))
}

/// Per-element and forward-image counts agree.
pub fn method_cross_check(ms: &[u32], max_b: i64, shards: usize) -> Check {
    let mut failures = Vec::new();
    for &m in ms {
        for b in 1..=max_b {
            if let Err(e) = msect_count(F::Rational, m, &int(b), CountMethod::CrossCheck, shards) {
                failures.push(e.to_string());
            }
        }
    }
    Check::new("method-cross-check", failures, ms.len() * max_b as usize)
}

/// Product formula and place-by-place heights on random elements.
pub fn product_formula_check(rng: &mut impl Rng, samples: usize) -> Result<Check> {
    let mut failures = Vec::new();
    for d in [2, 3, 5, 7, 13] {
        let field = F::Quad(QuadField::new(d)?);
        let k = field.quad_field().unwrap();
        for _ in 0..samples {
            let small = |rng: &mut dyn rand::RngCore| {
                Rational::new(rng.gen_range(-40i64..=40).into(), rng.gen_range(1i64..=40).into())
            };
            let x = QuadElem::new(small(rng), small(rng), k);
            if x.is_zero() {
                continue;
            }
            if product_formula(field, &x)? != QuadElem::one() {
                failures.push(format!("product formula at {x}"));
            }
            if places_oracle(&x, field)?.value != height_k(&x, field)?.value {
                failures.push(format!("height at {x}"));
            }
        }
    }
    Ok(Check::new("product-formula", failures, 5 * samples))
}

/// Runs the whole suite. Sizes are chosen to finish in seconds.
pub fn run_all(seed: u64, shards: usize) -> Vec<Check> {
    let mut rng = rng(seed);
    vec![
        chebyshev_ground_truth(),
        recurrence_matches_explicit(32),
        composition(8),
        pell(32),
        basic_properties(32),
        interval_law(&mut rng, 1000, 12),
        Check::from_result("valuation-law", valuation_law(&mut rng, 1000, &[3, 5, 7, 11], 2..=9)),
        Check::from_result("witness-families", witness_families(&[6, 10, 12, 20, 24])),
        Check::from_result("wantzel-examples", wantzel_examples(&mut rng)),
        Check::from_result("census-identity", census_identity(200, &[(2, 30), (5, 30)], shards)),
        method_cross_check(&[3, 5, 6, 7, 9], 60, shards),
        Check::from_result("product-formula", product_formula_check(&mut rng, 100)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_checks_pass() {
        let mut r = rng(DEFAULT_SEED);
        for c in [
            chebyshev_ground_truth(),
            recurrence_matches_explicit(12),
            composition(4),
            pell(12),
            basic_properties(12),
            interval_law(&mut r, 50, 6),
            valuation_law(&mut r, 50, &[3, 5], 2..=5).unwrap(),
            witness_families(&[6, 10]).unwrap(),
            wantzel_examples(&mut r).unwrap(),
            census_identity(20, &[(2, 5)], 2).unwrap(),
            method_cross_check(&[3, 6], 10, 2),
            product_formula_check(&mut r, 10).unwrap(),
        ] {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn generators_are_seeded() {
        let a: Vec<_> = (0..5).map(|_| random_rational(&mut rng(7))).collect();
        let b: Vec<_> = (0..5).map(|_| random_rational(&mut rng(7))).collect();
        assert_eq!(a, b);
    }
}
