//! Roots in `Q(sqrt d)` of polynomials with coefficients in `Q(sqrt d)`.
//!
//! Let `N = p * conj(p)`, which has rational coefficients. Every root of
//! `p` in the field is a root of `N`. Rational roots come from the rational
//! root theorem applied to `N`. An irrational root `x` has conjugate `x'`
//! which is a root of `conj(p)`, hence also of `N`, so `X^2 - sX + t` with
//! `s = x + x'`, `t = x x'` divides `N`. By Gauss's lemma the primitive
//! integer form of that quadratic divides the cleared `N`, so `s` and `t`
//! are integers over `L`, the leading coefficient of the cleared `N`.
//!
//! Both `x` and `x'` are real, so they are two distinct real roots of `N`.
//! For each pair of isolating intervals the admissible numerators
//! `k` (for `s = k / L`) and `j` (for `t = j / L`) form a finite range; every
//! one of them is tried. A candidate is kept only when the quadratic divides
//! `N` exactly, its discriminant is `d` times a rational square, and `p`
//! vanishes exactly at the resulting element.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::exact_sqrt;
use crate::field::{FieldDesc, QuadField};
use crate::poly::Poly;
use crate::real_roots::{RootInterval, SturmChain};
use crate::roots::{clear_denominators, rational_roots};
use crate::{Error, QuadElem, QuadPoly, RatPoly, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadRootSearch {
    /// Distinct roots in ascending real order.
    pub roots: Vec<QuadElem>,
    /// Rational candidates tried on the norm polynomial.
    pub rational_candidates: u64,
    /// `(s, t)` pairs tried.
    pub pair_candidates: u64,
}

/// `p * conj(p)` as a polynomial over `Q`.
pub fn norm_poly(p: &QuadPoly) -> Result<RatPoly> {
    let conj = p.map(QuadElem::conj);
    let n = p * &conj;
    n.coeffs()
        .iter()
        .map(|c| {
            c.as_rational()
                .cloned()
                .ok_or_else(|| Error::Inconsistency(format!("norm coefficient {c} is irrational")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Poly::new)
}

/// All roots of `p` lying in `field`.
pub fn quad_roots(p: &QuadPoly, field: QuadField) -> Result<QuadRootSearch> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("roots of the zero polynomial".into()));
    }
    let tag = FieldDesc::Quad(field);
    let p: QuadPoly = Poly::new(
        p.coeffs()
            .iter()
            .map(|c| c.clone().with_field(tag))
            .collect::<Result<Vec<_>>>()?,
    );
    let mut search = QuadRootSearch { roots: Vec::new(), rational_candidates: 0, pair_candidates: 0 };
    if p.degree() == Some(0) {
        return Ok(search);
    }
    let norm = norm_poly(&p)?;
    let (cleared, _) = clear_denominators(&norm)?;
    let lead = cleared.lead().unwrap().abs();
    let mut found: BTreeSet<QuadElem> = BTreeSet::new();

    let rational = rational_roots(&cleared)?;
    search.rational_candidates = rational.candidates;
    for r in rational.roots {
        let x = QuadElem::from(r).with_field(tag)?;
        if p.evaluate(&x).is_zero() {
            found.insert(x);
        }
    }

    if norm.degree().unwrap() >= 2 {
        let chain = SturmChain::new(&norm)?;
        let mut intervals = chain.isolate();
        let d = Rational::from_integer(BigInt::from(field.d()));
        let lead_q = Rational::from_integer(lead.clone());
        for i in 0..intervals.len() {
            for j in (i + 1)..intervals.len() {
                let (ranges, ri, rj) = candidate_ranges(&chain, &intervals[i], &intervals[j], &lead_q);
                intervals[i] = ri;
                intervals[j] = rj;
                let ((k_lo, k_hi), (j_lo, j_hi)) = ranges;
                let mut k = k_lo;
                while k <= k_hi {
                    let s = Rational::new(k.clone(), lead.clone());
                    let mut jj = j_lo.clone();
                    while jj <= j_hi {
                        let t = Rational::new(jj.clone(), lead.clone());
                        search.pair_candidates += 1;
                        for x in roots_from_pair(&s, &t, &d, field, &norm) {
                            if p.evaluate(&x).is_zero() {
                                found.insert(x);
                            }
                        }
                        jj += 1;
                    }
                    k += 1;
                }
            }
        }
    }
    search.roots = found.into_iter().collect();
    Ok(search)
}

type Range = (BigInt, BigInt);

// Refines both intervals until the integer ranges for L*s and L*t hold at
// most a handful of values, then returns the ranges and the refined
// intervals.
fn candidate_ranges(
    chain: &SturmChain,
    a: &RootInterval,
    b: &RootInterval,
    lead: &Rational,
) -> ((Range, Range), RootInterval, RootInterval) {
    let (mut a, mut b) = (a.clone(), b.clone());
    loop {
        let s_range = int_range(&(&a.lo + &b.lo), &(&a.hi + &b.hi), lead);
        let products = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let t_lo = products.iter().min().unwrap().clone();
        let t_hi = products.iter().max().unwrap().clone();
        let t_range = int_range(&t_lo, &t_hi, lead);
        let small = |r: &Range| &r.1 - &r.0 < BigInt::from(3);
        let exact = a.is_exact() && b.is_exact();
        if exact || (small(&s_range) && small(&t_range)) {
            return ((s_range, t_range), a, b);
        }
        a = chain.bisect(&a);
        b = chain.bisect(&b);
    }
}

// Integers k with lo <= k / lead <= hi.
fn int_range(lo: &Rational, hi: &Rational, lead: &Rational) -> Range {
    ((lo * lead).ceil().to_integer(), (hi * lead).floor().to_integer())
}

fn roots_from_pair(s: &Rational, t: &Rational, d: &Rational, field: QuadField, norm: &RatPoly) -> Vec<QuadElem> {
    let disc = s * s - t * Rational::from_integer(4.into());
    if !disc.is_positive() {
        return Vec::new();
    }
    let ratio = disc / d;
    let (Some(num), Some(den)) = (exact_sqrt(ratio.numer()), exact_sqrt(ratio.denom())) else {
        return Vec::new();
    };
    let quadratic: RatPoly = Poly::new(vec![t.clone(), -s.clone(), Rational::one()]);
    if !norm.div_rem(&quadratic).1.is_zero() {
        return Vec::new();
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let w = Rational::new(num, den) * &half;
    let u = s * &half;
    vec![QuadElem::new(u.clone(), -w.clone(), field), QuadElem::new(u, w, field)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::chebyshev_t;
    use crate::rational::{frac, int};

    fn k(d: i64) -> QuadField {
        QuadField::new(d).unwrap()
    }

    fn q(u: Rational, v: Rational, d: i64) -> QuadElem {
        QuadElem::new(u, v, k(d))
    }

    #[test]
    fn defining_element() {
        let p: QuadPoly = Poly::new(vec![QuadElem::from(int(-2)), QuadElem::zero(), QuadElem::one()]);
        let found = quad_roots(&p, k(2)).unwrap().roots;
        assert_eq!(found, vec![q(int(0), int(-1), 2), q(int(0), int(1), 2)]);
    }

    #[test]
    fn sixty_degrees_over_q_sqrt2() {
        let t3: QuadPoly = chebyshev_t(3);
        let p = &t3 - &Poly::constant(QuadElem::from(frac(1, 2)));
        assert!(quad_roots(&p, k(2)).unwrap().roots.is_empty());
    }

    #[test]
    fn golden_ratio() {
        let p: QuadPoly = Poly::new(vec![QuadElem::from(int(-1)), QuadElem::from(int(-1)), QuadElem::one()]);
        let found = quad_roots(&p, k(5)).unwrap().roots;
        assert_eq!(found, vec![q(frac(1, 2), frac(-1, 2), 5), q(frac(1, 2), frac(1, 2), 5)]);
    }

    #[test]
    fn irrational_coefficients() {
        // (x - sqrt3)(x - 1/2)(x^2 + 1) over Q(sqrt 3)
        let r3 = QuadElem::sqrt_d(k(3));
        let lin = |r: QuadElem| -> QuadPoly { Poly::new(vec![-r, QuadElem::one()]) };
        let irreducible: QuadPoly = Poly::new(vec![QuadElem::one(), QuadElem::zero(), QuadElem::one()]);
        let p = &(&lin(r3.clone()) * &lin(QuadElem::from(frac(1, 2)))) * &irreducible;
        let found = quad_roots(&p, k(3)).unwrap().roots;
        assert_eq!(found, vec![QuadElem::from(frac(1, 2)).with_field(FieldDesc::quad(3).unwrap()).unwrap(), r3]);
    }

    #[test]
    fn trisecting_forty_five_degrees() {
        // roots of T_3 - sqrt2/2 are cos 15, cos 105 and cos 135 = -sqrt2/2;
        // only the last lies in Q(sqrt 2)
        let a = q(int(0), frac(1, 2), 2);
        let t3: QuadPoly = chebyshev_t(3);
        let p = &t3 - &Poly::constant(a);
        let found = quad_roots(&p, k(2)).unwrap().roots;
        assert_eq!(found, vec![q(int(0), frac(-1, 2), 2)]);
    }
}
