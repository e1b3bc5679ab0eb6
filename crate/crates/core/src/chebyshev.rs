//! Chebyshev polynomials `T_m` and the companion `U_m`.
//!
//! `U_m` here has degree `m - 1` (`U_1 = 1`, `U_2 = 2x`): it is the
//! polynomial usually written `U_{m-1}`. With this indexing
//! `(x + i y)^m = T_m(x) + i y U_m(x)` whenever `x^2 + y^2 = 1`, and
//! `T_m^2 + (1 - x^2) U_m^2 = 1`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::Poly;
use crate::scalar::{Ring, ToF64};
use crate::{Error, IntPoly, RatPoly, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebyshevPair {
    pub m: u32,
    pub t: IntPoly,
    pub u: IntPoly,
}

/// `T_m` over any ring, by `T_m = 2x T_{m-1} - T_{m-2}`.
pub fn chebyshev_t<T: Ring>(m: u32) -> Poly<T> {
    let two_x = Poly::monomial(T::one() + T::one(), 1);
    let (mut prev, mut cur) = (Poly::constant(T::one()), Poly::x());
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = &(&two_x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `U_m` over any ring, same recurrence seeded with `U_0 = 0`, `U_1 = 1`.
pub fn chebyshev_u<T: Ring>(m: u32) -> Poly<T> {
    let two_x = Poly::monomial(T::one() + T::one(), 1);
    let (mut prev, mut cur) = (Poly::zero(), Poly::constant(T::one()));
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = &(&two_x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `T_m` and `U_m` with integer coefficients via the three-term recurrence.
/// `m = 0` gives `T_0 = 1`, `U_0 = 0`.
pub fn chebyshev(m: u32) -> ChebyshevPair {
    ChebyshevPair { m, t: chebyshev_t(m), u: chebyshev_u(m) }
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `T_m`, `U_m` from the closed binomial sums
///
/// `T_m = sum_{2k<=m} sum_{l<=k} (-1)^(k+l) C(m,2k) C(k,l) x^(m-2k+2l)`,
/// `U_m = sum_{2k+1<=m} C(m,2k+1) x^(m-2k-1) (x^2-1)^k`.
pub fn chebyshev_explicit(m: u32) -> ChebyshevPair {
    let m_us = m as usize;
    let mut t = vec![BigInt::zero(); m_us + 1];
    for k in 0..=m / 2 {
        let outer = binomial(m, 2 * k);
        for l in 0..=k {
            let term = &outer * binomial(k, l);
            let pos = (m - 2 * k + 2 * l) as usize;
            if (k + l) % 2 == 0 {
                t[pos] += term;
            } else {
                t[pos] -= term;
            }
        }
    }
    let x2_minus_1: IntPoly = Poly::new(vec![BigInt::from(-1), BigInt::zero(), BigInt::one()]);
    let mut u = IntPoly::zero();
    let mut k = 0;
    while 2 * k < m {
        let mut term = Poly::monomial(binomial(m, 2 * k + 1), (m - 2 * k - 1) as usize);
        for _ in 0..k {
            term = &term * &x2_minus_1;
        }
        u = &u + &term;
        k += 1;
    }
    ChebyshevPair { m, t: Poly::new(t), u }
}

/// Memoized pairs `0..=max_m`, built once and shared read-only.
#[derive(Debug, Clone)]
pub struct ChebyshevTable {
    pairs: Vec<ChebyshevPair>,
}

impl ChebyshevTable {
    pub fn new(max_m: u32) -> Self {
        let mut pairs = Vec::with_capacity(max_m as usize + 1);
        pairs.push(chebyshev(0));
        if max_m >= 1 {
            pairs.push(chebyshev(1));
        }
        let two_x: IntPoly = Poly::monomial(BigInt::from(2), 1);
        for m in 2..=max_m as usize {
            let t = &(&two_x * &pairs[m - 1].t) - &pairs[m - 2].t;
            let u = &(&two_x * &pairs[m - 1].u) - &pairs[m - 2].u;
            pairs.push(ChebyshevPair { m: m as u32, t, u });
        }
        ChebyshevTable { pairs }
    }

    pub fn max_m(&self) -> u32 {
        self.pairs.len() as u32 - 1
    }

    pub fn get(&self, m: u32) -> Option<&ChebyshevPair> {
        self.pairs.get(m as usize)
    }

    pub fn t(&self, m: u32) -> Option<&IntPoly> {
        self.get(m).map(|p| &p.t)
    }
}

/// `(|x| <= 1, |T_m(x)| <= 1)`, both decided exactly.
pub fn interval_check(x: &Rational, m: u32) -> (bool, bool) {
    let t: RatPoly = chebyshev_t(m);
    let y = t.evaluate(x);
    let one = Rational::one();
    (x.abs() <= one, y.abs() <= one)
}

/// `|Re(beta^m) - T_m(b)|` in floating point, where
/// `beta = b + i sqrt(1 - b^2)` is the unit complex number with real part
/// `b`.
pub fn angle_residual(b: &Rational, m: u32) -> Result<f64> {
    if b.abs().cmp(&Rational::one()) == Ordering::Greater {
        return Err(Error::OutOfUnitInterval(crate::rational::compact(b)));
    }
    let re = b.to_f64_lossy();
    let im = (1.0 - re * re).max(0.0).sqrt();
    let (mut pr, mut pi) = (1.0f64, 0.0f64);
    for _ in 0..m {
        (pr, pi) = (pr * re - pi * im, pr * im + pi * re);
    }
    let t: RatPoly = chebyshev_t(m);
    Ok((pr - t.evaluate(b).to_f64_lossy()).abs())
}
