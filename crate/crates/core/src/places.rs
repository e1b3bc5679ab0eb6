//! Places of `Q` and of `Q(sqrt d)`, and the height as a literal product
//! over them.
//!
//! Each place `v` is reported through `|x|_v^{n_v}`, which is rational at
//! finite places: for a prime ideal `P` it equals `N(P)^(-ord_P(x))`. At an
//! inert or ramified rational prime `p` there is a single place and the
//! value is `p^(-ord_p(N(x)))`. At a split prime the two places
//! `P = (p, sqrt d - r)` and its conjugate are told apart by whether
//! `a + b r = 0 (mod p)` for the primitive part `a + b sqrt d` of `x`.
//! With these normalizations the product formula holds with the weights
//! shown.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{factor, legendre, ord, sqrt_mod};
use crate::field::FieldDesc;
use crate::quadratic::HeightValue;
use crate::{Error, QuadElem, Rational, Result};

/// Fields accepted by [`places_oracle`].
pub const ORACLE_RADICANDS: [u64; 5] = [2, 3, 5, 7, 13];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Splitting {
    /// The base field is `Q`.
    Unramified,
    Split,
    Inert,
    Ramified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaceKind {
    /// Real embedding; `conjugate` sends `sqrt d` to `-sqrt d`.
    Archimedean { conjugate: bool },
    /// Place above `prime`. For split primes `branch` is the residue of
    /// `sqrt d` modulo the prime ideal.
    Finite { prime: u64, splitting: Splitting, branch: Option<u64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Place {
    pub kind: PlaceKind,
    pub weight: u32,
}

pub fn archimedean_places(field: FieldDesc) -> Vec<Place> {
    match field {
        FieldDesc::Rational => vec![Place { kind: PlaceKind::Archimedean { conjugate: false }, weight: 1 }],
        FieldDesc::Quad(_) => [false, true]
            .into_iter()
            .map(|conjugate| Place { kind: PlaceKind::Archimedean { conjugate }, weight: 1 })
            .collect(),
    }
}

pub fn splitting(field: FieldDesc, p: u64) -> Splitting {
    let Some(k) = field.quad_field() else {
        return Splitting::Unramified;
    };
    let d = k.d();
    if d % p == 0 {
        return Splitting::Ramified;
    }
    if p == 2 {
        return match d % 8 {
            1 => Splitting::Split,
            5 => Splitting::Inert,
            _ => Splitting::Ramified,
        };
    }
    if legendre(d as i64, p) == 1 {
        Splitting::Split
    } else {
        Splitting::Inert
    }
}

/// The places above the rational prime `p`; weights sum to `[K:Q]`.
pub fn places_over(field: FieldDesc, p: u64) -> Result<Vec<Place>> {
    let sp = splitting(field, p);
    let finite = |branch, weight| Place { kind: PlaceKind::Finite { prime: p, splitting: sp, branch }, weight };
    Ok(match sp {
        Splitting::Unramified => vec![finite(None, 1)],
        Splitting::Inert | Splitting::Ramified => vec![finite(None, 2)],
        Splitting::Split => {
            let d = field.quad_field().unwrap().d();
            if p == 2 {
                return Err(Error::UnsupportedField(field.to_string(), "2 splits".into()));
            }
            let r = sqrt_mod(d as i64, p).expect("split prime has a square root of d");
            vec![finite(Some(r), 1), finite(Some(p - r), 1)]
        }
    })
}

/// `|x|_v^{n_v}` as an exact element (rational at finite places).
pub fn weighted_abs(place: &Place, x: &QuadElem) -> QuadElem {
    if x.is_zero() {
        return QuadElem::zero();
    }
    match place.kind {
        PlaceKind::Archimedean { conjugate: false } => x.abs(),
        PlaceKind::Archimedean { conjugate: true } => x.conj().abs(),
        PlaceKind::Finite { prime, splitting, branch } => {
            let e = match splitting {
                Splitting::Unramified => rational_ord(x.u(), prime),
                Splitting::Inert | Splitting::Ramified => rational_ord(&x.norm(), prime),
                Splitting::Split => split_ord(x, prime, branch.unwrap()),
            };
            QuadElem::from(prime_power(prime, -e))
        }
    }
}

fn rational_ord(x: &Rational, p: u64) -> i64 {
    ord(x.numer(), p) as i64 - ord(x.denom(), p) as i64
}

// ord_P(x) for P = (p, sqrt d - r), p odd and split.
fn split_ord(x: &QuadElem, p: u64, r: u64) -> i64 {
    let c = x.u().denom().lcm(x.v().denom());
    let a = x.u().numer() * (&c / x.u().denom());
    let b = x.v().numer() * (&c / x.v().denom());
    let content = a.gcd(&b);
    let k = ord(&content, p) as i64;
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    let (a, b) = (a / &pk, b / &pk);
    let d = BigInt::from(x.field().unwrap().d());
    let n = &a * &a - &d * &b * &b;
    let in_ideal = ((&a + &b * BigInt::from(r)) % BigInt::from(p)).is_zero();
    let ord_alpha = if in_ideal { ord(&n, p) as i64 } else { 0 };
    k + ord_alpha - ord(&c, p) as i64
}

fn prime_power(p: u64, e: i64) -> Rational {
    let pow = num_traits::pow(BigInt::from(p), e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(pow)
    } else {
        Rational::new(BigInt::one(), pow)
    }
}

/// Primes at which `x` can have a nontrivial absolute value.
pub fn relevant_primes(x: &QuadElem) -> Result<Vec<u64>> {
    let mut primes = BTreeSet::new();
    if x.is_zero() {
        return Ok(Vec::new());
    }
    let c = x.u().denom().lcm(x.v().denom());
    let n = x.norm();
    for m in [&c, n.numer(), n.denom(), x.u().numer(), x.v().numer()] {
        if m.is_zero() {
            continue;
        }
        for (p, _) in factor(m)? {
            primes.insert(p);
        }
    }
    Ok(primes.into_iter().collect())
}

/// All places where `|x|_v != 1`, plus the archimedean ones.
pub fn support(field: FieldDesc, x: &QuadElem) -> Result<Vec<Place>> {
    let mut out = archimedean_places(field);
    for p in relevant_primes(x)? {
        out.extend(places_over(field, p)?);
    }
    Ok(out)
}

/// `prod_v |x|_v^{n_v}` over [`support`]; equals 1 for `x != 0`.
pub fn product_formula(field: FieldDesc, x: &QuadElem) -> Result<QuadElem> {
    let x = x.clone().with_field(field)?;
    Ok(support(field, &x)?
        .iter()
        .fold(QuadElem::one(), |acc, v| acc * weighted_abs(v, &x)))
}

/// `H_K(x) = prod_v sup{1, |x|_v^{n_v}}`, computed place by place.
/// Quadratic fields are limited to [`ORACLE_RADICANDS`].
pub fn places_oracle(x: &QuadElem, field: FieldDesc) -> Result<HeightValue> {
    if let Some(k) = field.quad_field() {
        if !ORACLE_RADICANDS.contains(&k.d()) {
            return Err(Error::UnsupportedField(field.to_string(), "outside the oracle's radicand set".into()));
        }
    }
    let x = x.clone().with_field(field)?;
    let one = Rational::one();
    let mut h = QuadElem::one();
    for v in support(field, &x)? {
        let a = weighted_abs(&v, &x);
        if a.cmp_real(&one).is_gt() {
            h = h * a;
        }
    }
    Ok(HeightValue::new(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::height_k;
    use crate::rational::{frac, int};
    use crate::QuadField;

    fn q(d: i64) -> FieldDesc {
        FieldDesc::quad(d).unwrap()
    }

    fn e(u: Rational, v: Rational, d: i64) -> QuadElem {
        QuadElem::new(u, v, QuadField::new(d).unwrap())
    }

    #[test]
    fn splitting_types() {
        assert_eq!(splitting(q(2), 2), Splitting::Ramified);
        assert_eq!(splitting(q(3), 2), Splitting::Ramified);
        assert_eq!(splitting(q(5), 2), Splitting::Inert);
        assert_eq!(splitting(q(5), 5), Splitting::Ramified);
        assert_eq!(splitting(q(2), 7), Splitting::Split);
        assert_eq!(splitting(q(2), 3), Splitting::Inert);
        assert_eq!(splitting(FieldDesc::Rational, 3), Splitting::Unramified);
        for d in ORACLE_RADICANDS {
            for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
                let w: u32 = places_over(q(d as i64), p).unwrap().iter().map(|v| v.weight).sum();
                assert_eq!(w, 2);
            }
        }
    }

    #[test]
    fn oracle_matches_examples() {
        assert_eq!(places_oracle(&QuadElem::sqrt_d(QuadField::new(2).unwrap()), q(2)).unwrap().value, QuadElem::from(int(2)));
        assert_eq!(places_oracle(&QuadElem::from(frac(1, 2)), q(2)).unwrap().value, QuadElem::from(int(4)));
        let phi = e(frac(1, 2), frac(1, 2), 5);
        assert_eq!(places_oracle(&phi, q(5)).unwrap().value, phi);
        assert_eq!(places_oracle(&QuadElem::zero(), q(3)).unwrap().value, QuadElem::one());
        assert_eq!(places_oracle(&QuadElem::one(), q(3)).unwrap().value, QuadElem::one());
        assert!(places_oracle(&QuadElem::one(), q(11)).is_err());
    }

    #[test]
    fn split_prime_example() {
        // 7 splits in Q(sqrt 2): 3 + sqrt 2 has norm 7
        let x = e(int(3), int(1), 2).inv().unwrap();
        assert_eq!(places_oracle(&x, q(2)).unwrap(), height_k(&x, q(2)).unwrap());
        assert_eq!(product_formula(q(2), &x).unwrap(), QuadElem::one());
    }
}
