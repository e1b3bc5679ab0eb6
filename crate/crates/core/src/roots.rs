//! Rational roots of integer polynomials and irreducibility certificates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, is_prime};
use crate::chebyshev::chebyshev_t;
use crate::poly::Poly;
use crate::{Error, IntPoly, RatPoly, Rational, Result};

/// Scales `p` by a positive rational so that the result has integer
/// coefficients with content 1. Returns `(scaled, multiplier)`.
pub fn clear_denominators(p: &RatPoly) -> Result<(IntPoly, Rational)> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("cannot clear the zero polynomial".into()));
    }
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let ints = ints.into_iter().map(|c| c / &content).collect();
    Ok((Poly::new(ints), Rational::new(den, content)))
}

/// Outcome of an exhaustive rational-root search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSearch {
    /// Distinct rational roots, ascending.
    pub roots: Vec<Rational>,
    /// Candidates `±r/s` generated from the divisor lists.
    pub candidates: u64,
    /// Candidates that survived the `p(1)`, `p(-1)` divisibility filters and
    /// were evaluated exactly.
    pub evaluated: u64,
}

/// All rational roots of a nonzero integer polynomial.
///
/// Powers of `x` are factored out first (contributing the root 0); every
/// other root is `±r/s` with `r | c_0`, `s | c_n`, `gcd(r, s) = 1`. Each
/// candidate is checked exactly via the homogenized integer value.
pub fn rational_roots(p: &IntPoly) -> Result<RootSearch> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("rational roots of the zero polynomial".into()));
    }
    let coeffs = p.coeffs();
    let shift = coeffs.iter().take_while(|c| c.is_zero()).count();
    let q: IntPoly = Poly::new(coeffs[shift..].to_vec());
    let mut roots = BTreeSet::new();
    if shift > 0 {
        roots.insert(Rational::zero());
    }
    let mut search = RootSearch { roots: Vec::new(), candidates: 0, evaluated: 0 };
    if q.degree() == Some(0) {
        search.roots = roots.into_iter().collect();
        return Ok(search);
    }
    let c0 = q.coeff(0);
    let cn = q.lead().unwrap().clone();
    let at_one = q.evaluate(&BigInt::one());
    let at_minus_one = q.evaluate(&-BigInt::one());
    let num_divs = divisors(&c0)?;
    let den_divs = divisors(&cn)?;
    for s in &den_divs {
        for r in &num_divs {
            if !r.gcd(s).is_one() {
                continue;
            }
            for r in [r.clone(), -r] {
                search.candidates += 1;
                // a root r/s forces (s - r) | p(1) and (s + r) | p(-1)
                if !divides(&(s - &r), &at_one) || !divides(&(s + &r), &at_minus_one) {
                    continue;
                }
                search.evaluated += 1;
                if homogeneous_value(&q, &r, s).is_zero() {
                    roots.insert(Rational::new(r, s.clone()));
                }
            }
        }
    }
    search.roots = roots.into_iter().collect();
    Ok(search)
}

fn divides(d: &BigInt, n: &BigInt) -> bool {
    if d.is_zero() {
        n.is_zero()
    } else {
        (n % d).is_zero()
    }
}

/// `s^n p(r/s) = sum c_i r^i s^(n-i)`.
pub fn homogeneous_value(p: &IntPoly, r: &BigInt, s: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut s_pow = BigInt::one();
    for c in p.coeffs().iter().rev() {
        acc = acc * r + c * &s_pow;
        s_pow *= s;
    }
    acc
}

/// Eisenstein's criterion at `prime` on an integer polynomial.
pub fn eisenstein(p: &IntPoly, prime: u64) -> bool {
    let Some(n) = p.degree() else { return false };
    if n == 0 {
        return false;
    }
    let q = BigInt::from(prime);
    let q2 = &q * &q;
    let c = p.coeffs();
    !(c[n].is_multiple_of(&q))
        && c[..n].iter().all(|a| a.is_multiple_of(&q))
        && !c[0].is_multiple_of(&q2)
}

/// Certificate that `T_m(x) - a` is irreducible over `Q` for an odd prime
/// `m` and `a = r/s`: Eisenstein at `m` applied to `s T_m(x) - r`.
///
/// `false` means the criterion does not apply, not that the polynomial
/// factors.
pub fn eisenstein_irreducible(m: u64, a: &Rational) -> Result<bool> {
    if m % 2 == 0 || !is_prime(m) {
        return Err(Error::InvalidArgument(format!("{m} is not an odd prime")));
    }
    let t: IntPoly = chebyshev_t(m as u32);
    let cleared = &t.scale(a.denom()) - &Poly::constant(a.numer().clone());
    Ok(eisenstein(&cleared, m))
}

/// Whether every non-leading coefficient of `T_m` is divisible by `m`
/// (`m` an odd prime).
pub fn coeff_divisibility(m: u64) -> Result<bool> {
    if m % 2 == 0 || !is_prime(m) {
        return Err(Error::InvalidArgument(format!("{m} is not an odd prime")));
    }
    let t: IntPoly = chebyshev_t(m as u32);
    let modulus = BigInt::from(m);
    let n = t.degree().unwrap();
    Ok(t.coeffs()[..n].iter().all(|c| c.is_multiple_of(&modulus)))
}

/// Sign-normalized helper: the unique primitive integer polynomial with
/// positive leading coefficient proportional to `p`.
pub fn primitive_positive(p: &RatPoly) -> Result<IntPoly> {
    let (q, _) = clear_denominators(p)?;
    Ok(if q.lead().unwrap().is_negative() { -&q } else { q })
}
