//! Exact real-root isolation over `Q` with Sturm sequences.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::roots::clear_denominators;
use crate::{Error, RatPoly, Rational, Result};

/// A half-open interval `(lo, hi]` holding exactly one real root, or the
/// point `lo = hi` when the root is known exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    sign_lo: Ordering,
    sign_hi: Ordering,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Sturm chain of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    /// Builds the chain for the squarefree part of `p` (nonconstant).
    pub fn new(p: &RatPoly) -> Result<Self> {
        if p.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidArgument("real roots of a constant".into()));
        }
        let base = tame(&p.squarefree_part())?;
        let mut chain = vec![base.clone()];
        let mut prev = base.clone();
        let mut cur = tame(&base.derivative())?;
        while !cur.is_zero() {
            chain.push(cur.clone());
            let (_, r) = prev.div_rem(&cur);
            prev = cur;
            cur = if r.is_zero() { r } else { tame(&-&r)? };
        }
        Ok(SturmChain { chain })
    }

    /// The squarefree polynomial whose roots are being isolated.
    pub fn poly(&self) -> &RatPoly {
        &self.chain[0]
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for p in &self.chain {
            let s = p.evaluate(x).cmp(&Rational::zero());
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    fn sign_at(&self, x: &Rational) -> Ordering {
        self.poly().evaluate(x).cmp(&Rational::zero())
    }

    fn interval(&self, lo: Rational, hi: Rational) -> RootInterval {
        let sign_lo = self.sign_at(&lo);
        let sign_hi = self.sign_at(&hi);
        if sign_hi == Ordering::Equal {
            return RootInterval { lo: hi.clone(), hi, sign_lo: Ordering::Equal, sign_hi };
        }
        RootInterval { lo, hi, sign_lo, sign_hi }
    }

    /// Disjoint isolating intervals for every real root, ascending.
    pub fn isolate(&self) -> Vec<RootInterval> {
        let bound = cauchy_bound(self.poly());
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((a, b)) = stack.pop() {
            match self.count(&a, &b) {
                0 => {}
                1 => out.push(self.interval(a, b)),
                _ => {
                    let mid = (&a + &b) / Rational::from_integer(2.into());
                    stack.push((a, mid.clone()));
                    stack.push((mid, b));
                }
            }
        }
        out.sort_by(|x, y| x.hi.cmp(&y.hi));
        out
    }

    /// Halves the interval once, keeping the root.
    pub fn bisect(&self, iv: &RootInterval) -> RootInterval {
        if iv.is_exact() {
            return iv.clone();
        }
        let mid = (&iv.lo + &iv.hi) / Rational::from_integer(2.into());
        let sm = self.sign_at(&mid);
        if sm == Ordering::Equal {
            return RootInterval { lo: mid.clone(), hi: mid, sign_lo: sm, sign_hi: sm };
        }
        // On (root, hi] the sign is sign_hi; on (lo, root) it is -sign_hi.
        let root_right_of_mid = sm != iv.sign_hi;
        if root_right_of_mid {
            RootInterval { lo: mid, hi: iv.hi.clone(), sign_lo: sm, sign_hi: iv.sign_hi }
        } else {
            RootInterval { lo: iv.lo.clone(), hi: mid, sign_lo: iv.sign_lo, sign_hi: sm }
        }
    }

    pub fn refine_to(&self, iv: &RootInterval, width: &Rational) -> RootInterval {
        let mut cur = iv.clone();
        while !cur.is_exact() && cur.width() > *width {
            cur = self.bisect(&cur);
        }
        cur
    }
}

/// `1 + max |c_i / c_n|`; every real root lies strictly inside.
pub fn cauchy_bound(p: &RatPoly) -> Rational {
    let lead = p.lead().expect("nonzero polynomial").abs();
    let n = p.degree().unwrap();
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    max + Rational::one()
}

// Positive rescaling to a primitive integer polynomial keeps every sign.
fn tame(p: &RatPoly) -> Result<RatPoly> {
    if p.is_zero() {
        return Ok(p.clone());
    }
    let (ints, _) = clear_denominators(p)?;
    Ok(RatPoly::from_int_poly(&ints))
}
