//! Deciding m-sectability of an angle from its cosine.
//!
//! The angle with cosine `a` can be divided into `m` equal parts by
//! straightedge and compass exactly when `T_{m_odd}(x) - a` has a root in
//! `Q(a)`, where `m_odd` is the largest odd divisor of `m`. Bisection is
//! always possible, which is why only the odd part matters.

use num_bigint::BigInt;

use serde::Serialize;

use crate::chebyshev::chebyshev_t;
use crate::field::FieldDesc;
use crate::poly::Poly;
use crate::quad_roots::quad_roots;
use crate::rational::{compact, frac, valuation};
use crate::roots::rational_roots;
use crate::scalar::ToF64;
use crate::{Error, FloatPoly, IntPoly, QuadElem, QuadPoly, RatPoly, Rational, Result};

pub fn max_odd_divisor(m: u32) -> Result<u32> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    Ok(m >> m.trailing_zeros())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    /// `m_odd = 1`: `a` is its own witness.
    Trivial,
    RationalRoots,
    QuadRoots,
}

/// What the root search did, so a negative verdict can be audited.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub method: SearchMethod,
    /// The polynomial searched, in text form.
    pub polynomial: String,
    /// Rational candidates generated by the rational root theorem.
    pub rational_candidates: u64,
    /// `(trace, norm)` pairs tried for quadratic roots.
    pub pair_candidates: u64,
    pub roots_found: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectVerdict {
    pub a: QuadElem,
    /// `Q(a)`.
    pub ground_field: FieldDesc,
    pub m: u32,
    pub m_odd: u32,
    pub sectable: bool,
    /// The smallest root of `T_{m_odd} - a` in `Q(a)`, when one exists.
    pub witness: Option<QuadElem>,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub a: String,
    pub field: String,
    pub m: u32,
    pub m_odd: u32,
    pub sectable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub certificate: Certificate,
}

impl SectVerdict {
    pub fn report(&self) -> VerdictReport {
        VerdictReport {
            a: self.a.to_string(),
            field: self.ground_field.to_string(),
            m: self.m,
            m_odd: self.m_odd,
            sectable: self.sectable,
            witness: self.witness.as_ref().map(ToString::to_string),
            certificate: self.certificate.clone(),
        }
    }
}

/// Decides whether the angle with cosine `a` is `m`-sectable.
///
/// `Q(a)` is `Q` whenever `a` is rational, even if `a` was given as an
/// element of a quadratic field.
pub fn decide_sectable(a: &QuadElem, m: u32) -> Result<SectVerdict> {
    let m_odd = max_odd_divisor(m)?;
    if !a.in_unit_interval() {
        return Err(Error::OutOfUnitInterval(a.to_string()));
    }
    let ground_field = a.generated_field();
    let a = a.clone().with_field(ground_field)?;
    if m_odd == 1 {
        return Ok(SectVerdict {
            witness: Some(a.clone()),
            certificate: Certificate {
                method: SearchMethod::Trivial,
                polynomial: format!("x-({a})"),
                rational_candidates: 0,
                pair_candidates: 0,
                roots_found: 1,
            },
            a,
            ground_field,
            m,
            m_odd,
            sectable: true,
        });
    }
    let (roots, certificate) = match (a.as_rational(), ground_field) {
        (Some(r), _) => {
            let poly = sect_poly_q(r, m_odd);
            let search = rational_roots(&poly)?;
            let cert = Certificate {
                method: SearchMethod::RationalRoots,
                polynomial: poly.to_string(),
                rational_candidates: search.candidates,
                pair_candidates: 0,
                roots_found: search.roots.len(),
            };
            (search.roots.into_iter().map(QuadElem::from).collect::<Vec<_>>(), cert)
        }
        (None, FieldDesc::Quad(k)) => {
            let t: QuadPoly = chebyshev_t(m_odd);
            let poly = &t - &Poly::constant(a.clone());
            let search = quad_roots(&poly, k)?;
            let cert = Certificate {
                method: SearchMethod::QuadRoots,
                polynomial: poly.to_string(),
                rational_candidates: search.rational_candidates,
                pair_candidates: search.pair_candidates,
                roots_found: search.roots.len(),
            };
            (search.roots, cert)
        }
        (None, FieldDesc::Rational) => unreachable!("irrational element over Q"),
    };
    Ok(SectVerdict {
        sectable: !roots.is_empty(),
        witness: roots.into_iter().next(),
        certificate,
        a,
        ground_field,
        m,
        m_odd,
    })
}

/// `den(a) T_n(x) - num(a)`, the cleared form of `T_n(x) - a`.
pub fn sect_poly_q(a: &Rational, n: u32) -> IntPoly {
    let t: IntPoly = chebyshev_t(n);
    &t.scale(a.denom()) - &Poly::constant(a.numer().clone())
}

/// For even `m = 2^k n` with odd `n > 1`: `a = T_{m/2}(1/3)`.
///
/// `T_m(sqrt(2/3)) = a` with `sqrt(2/3)` constructible, so the angle is
/// `m`-sectable, yet `T_m(x) - a` has no rational root since the 3-adic
/// absolute value of `a` is `3^(m/2)`.
pub fn witness_family(m: u32) -> Result<Rational> {
    if m % 2 == 1 || m.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("{m} must be even and not a power of two")));
    }
    let t: RatPoly = chebyshev_t(m / 2);
    Ok(t.evaluate(&frac(1, 3)))
}

/// Exponent `e` with `|witness_family(m)|_3 = 3^e`.
pub fn witness_family_exponent(m: u32) -> u32 {
    m / 2
}

/// Checks the three claims about [`witness_family`]: no rational root of
/// `T_m - a`, a positive decision, and the 3-adic size.
pub fn witness_family_holds(m: u32) -> Result<bool> {
    let a = witness_family(m)?;
    let t: IntPoly = chebyshev_t(m);
    let cleared = &t.scale(a.denom()) - &Poly::constant(a.numer().clone());
    let no_rational_root = rational_roots(&cleared)?.roots.is_empty();
    let decided = decide_sectable(&QuadElem::from(a.clone()), m)?.sectable;
    let expected = Rational::from_integer(num_traits::pow(BigInt::from(3), witness_family_exponent(m) as usize));
    let size_ok = valuation(&a, 3)?.multiplicative_value() == Some(expected);
    Ok(no_rational_root && decided && size_ok)
}

/// Repeated half-angle chain for `m = 2^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalvingChain {
    /// `b_k, b_{k-1}, ..., b_0 = a` with `T_2(b_j) = b_{j-1}`.
    pub chain: Vec<f64>,
    /// `|T_m(b_k) - a|`.
    pub residual: f64,
}

/// Solves `T_m(x) = a` for `m = 2^k` by `k` square roots
/// `x = sqrt((1 + c) / 2)`.
pub fn power_of_two_witness(m: u32, a: &Rational) -> Result<HalvingChain> {
    if !m.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("{m} is not a power of two")));
    }
    if !QuadElem::from(a.clone()).in_unit_interval() {
        return Err(Error::OutOfUnitInterval(compact(a)));
    }
    let a_f = a.to_f64_lossy();
    let mut chain = vec![a_f];
    for _ in 0..m.trailing_zeros() {
        let c = *chain.last().unwrap();
        chain.push(((1.0 + c) / 2.0).max(0.0).sqrt());
    }
    chain.reverse();
    let t: FloatPoly = chebyshev_t(m);
    let residual = (t.evaluate(&chain[0]) - a_f).abs();
    Ok(HalvingChain { chain, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::QuadField;

    fn rat(r: Rational) -> QuadElem {
        QuadElem::from(r)
    }

    #[test]
    fn odd_parts() {
        assert_eq!(max_odd_divisor(12).unwrap(), 3);
        assert_eq!(max_odd_divisor(8).unwrap(), 1);
        assert_eq!(max_odd_divisor(45).unwrap(), 45);
        assert!(max_odd_divisor(0).is_err());
    }

    #[test]
    fn classical_decisions() {
        let v = decide_sectable(&rat(frac(1, 2)), 3).unwrap();
        assert!(!v.sectable);
        assert_eq!(v.certificate.rational_candidates, 8);
        assert_eq!(v.certificate.polynomial, "8*x^3-6*x-1");

        let v = decide_sectable(&rat(frac(1, 5)), 4).unwrap();
        assert!(v.sectable);
        assert_eq!(v.witness, Some(rat(frac(1, 5))));

        let v = decide_sectable(&rat(frac(-23, 27)), 6).unwrap();
        assert!(v.sectable);
        assert_eq!(v.m_odd, 3);
        assert_eq!(v.witness, Some(rat(frac(1, 3))));

        let v = decide_sectable(&rat(int(0)), 3).unwrap();
        assert!(v.sectable);
        assert_eq!(v.witness, Some(rat(int(0))));

        assert!(matches!(decide_sectable(&rat(frac(3, 2)), 3), Err(Error::OutOfUnitInterval(_))));
    }

    #[test]
    fn quadratic_cosines() {
        let k = QuadField::new(2).unwrap();
        // cos 45 = sqrt2/2: trisectable (cos 15 is not in Q(sqrt2), but -sqrt2/2 = cos 135 is a root)
        let a = QuadElem::new(int(0), frac(1, 2), k);
        let v = decide_sectable(&a, 3).unwrap();
        assert!(v.sectable);
        assert_eq!(v.ground_field, FieldDesc::Quad(k));
        assert_eq!(v.witness, Some(QuadElem::new(int(0), frac(-1, 2), k)));
        // a rational element tagged with a quadratic field is decided over Q
        let half = QuadElem::new(frac(1, 2), int(0), k);
        let v = decide_sectable(&half, 3).unwrap();
        assert!(!v.sectable);
        assert_eq!(v.ground_field, FieldDesc::Rational);
    }

    #[test]
    fn witness_family_examples() {
        assert_eq!(witness_family(6).unwrap(), frac(-23, 27));
        assert_eq!(witness_family(12).unwrap(), frac(329, 729));
        assert_eq!(witness_family(10).unwrap(), frac(241, 243));
        assert!(witness_family(8).is_err());
        assert!(witness_family(9).is_err());
        for m in [6, 10, 12] {
            assert!(witness_family_holds(m).unwrap());
        }
    }

    #[test]
    fn halving_chains() {
        let c = power_of_two_witness(2, &frac(1, 4)).unwrap();
        assert!((c.chain[0] - (5.0f64 / 8.0).sqrt()).abs() < 1e-15);
        assert_eq!(power_of_two_witness(4, &int(1)).unwrap().chain, vec![1.0, 1.0, 1.0]);
        assert_eq!(power_of_two_witness(2, &int(-1)).unwrap().chain[0], 0.0);
        assert!(power_of_two_witness(16, &frac(-2, 7)).unwrap().residual < 1e-9);
        assert!(power_of_two_witness(6, &int(0)).is_err());
    }
}
