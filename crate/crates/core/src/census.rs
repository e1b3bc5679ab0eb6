//! Elements of bounded height and their counts.
//!
//! # Completeness of the quadratic sweep
//!
//! A properly quadratic `x` in `Q(sqrt d)` has primitive minimal polynomial
//! `f = c2 X^2 + c1 X + c0 = c2 (X - x)(X - x')` and
//! `H_K(x) = M(f) = c2 max(1,|x|) max(1,|x'|)`. Then
//!
//! * `c2 <= M(f)`,
//! * `|c1| = c2 |x + x'| <= 2 c2 max(1,|x|) max(1,|x'|) = 2 M(f)`,
//! * `|c0| = c2 |x x'| <= M(f)`.
//!
//! So `H_K(x) <= B` forces `c2 <= B`, `|c1| <= 2B`, `|c0| <= B`. The sweep
//! covers one more than each bound, keeps primitive triples whose
//! discriminant is `d k^2` with `k > 0` (which also makes `f` irreducible,
//! `d` being squarefree and not 1), and then compares the exact height to
//! `B`. Rational `x` have `H_K(x) = H_Q(x)^2`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::field::{FieldDesc, QuadField};
use crate::quadratic::{height_k, HeightValue};
use crate::rational::canonical;
use crate::shard::run_sharded;
use crate::{Error, QuadElem, Rational, Result};

/// `floor(B)` as a machine integer.
fn floor_bound(bound: &Rational) -> Result<i64> {
    if *bound < Rational::from_integer(1.into()) {
        return Err(Error::InvalidArgument(format!("height bound {} < 1", canonical(bound))));
    }
    bound
        .floor()
        .to_integer()
        .to_i64()
        .filter(|&b| b <= 1 << 24)
        .ok_or_else(|| Error::InvalidArgument(format!("height bound {} too large", canonical(bound))))
}

/// Visits `(p, q)` with `gcd(p, q) = 1`, `1 <= q <= h`, `|p| <= h`, for
/// the denominators `q` owned by `shard`. With `unit_only`, `|p| <= q`.
fn for_each_coprime(h: i64, shard: usize, shards: usize, unit_only: bool, mut f: impl FnMut(i64, i64)) {
    for q in 1..=h {
        if (q as usize) % shards != shard {
            continue;
        }
        let pmax = if unit_only { q } else { h };
        for p in -pmax..=pmax {
            if p.unsigned_abs().gcd(&(q as u64)) == 1 {
                f(p, q);
            }
        }
    }
}

/// `{p/q : gcd(p,q) = 1, max(|p|, q) <= B}` ordered by height then value.
pub fn enumerate_q(bound: &Rational) -> Result<Vec<Rational>> {
    let h = floor_bound(bound)?;
    let mut out = Vec::new();
    for_each_coprime(h, 0, 1, false, |p, q| out.push(Rational::new(p.into(), q.into())));
    out.sort_by(|a, b| crate::rational::height_q(a).cmp(&crate::rational::height_q(b)).then(a.cmp(b)));
    Ok(out)
}

/// An element together with its height.
#[derive(Debug, Clone)]
pub struct Counted {
    pub elem: QuadElem,
    pub height: HeightValue,
}

fn sort_by_height(items: &mut [Counted]) {
    items.sort_by(|a, b| a.height.value.cmp(&b.height.value).then_with(|| a.elem.cmp(&b.elem)));
}

fn quad_shard(field: QuadField, bound: &Rational, h: i64, shard: usize, shards: usize) -> Result<Vec<Counted>> {
    let tag = FieldDesc::Quad(field);
    let d = field.d() as i64;
    let mut out = Vec::new();
    let c1_max = (bound * Rational::from_integer(2.into())).floor().to_integer().to_i64().unwrap() + 1;
    for c2 in 1..=h + 1 {
        if (c2 as usize) % shards != shard {
            continue;
        }
        for c1 in -c1_max..=c1_max {
            let g12 = c2.gcd(&c1);
            for c0 in -(h + 1)..=h + 1 {
                if g12.gcd(&c0) != 1 {
                    continue;
                }
                let disc = c1 * c1 - 4 * c2 * c0;
                if disc <= 0 || disc % d != 0 {
                    continue;
                }
                let ratio = disc / d;
                let k = ratio.sqrt();
                if k * k != ratio {
                    continue;
                }
                let den = BigInt::from(2 * c2);
                let u = Rational::new(BigInt::from(-c1), den.clone());
                let v = Rational::new(BigInt::from(k), den);
                let x = QuadElem::new(u, v, field);
                let height = height_k(&x, tag)?;
                if height.within(bound) {
                    out.push(Counted { elem: x.conj(), height: height.clone() });
                    out.push(Counted { elem: x, height });
                }
            }
        }
    }
    Ok(out)
}

fn rational_part(field: FieldDesc, bound: &Rational) -> Result<Vec<Counted>> {
    let h = floor_bound(bound)?;
    let hq = match field {
        FieldDesc::Rational => h,
        FieldDesc::Quad(_) => h.sqrt(),
    };
    let mut out = Vec::new();
    for_each_coprime(hq, 0, 1, false, |p, q| {
        let r = Rational::new(p.into(), q.into());
        let elem = QuadElem::from(r).with_field(field).expect("rational element");
        let height = height_k(&elem, field).expect("rational height");
        out.push(Counted { elem, height });
    });
    Ok(out)
}

/// Every element of `field` with `H_K(x) <= B`, with heights, ordered by
/// height then value.
pub fn enumerate_with_heights(field: FieldDesc, bound: &Rational, shards: usize) -> Result<Vec<Counted>> {
    let h = floor_bound(bound)?;
    let mut out = rational_part(field, bound)?;
    if let FieldDesc::Quad(k) = field {
        for part in run_sharded(shards, |i, n| quad_shard(k, bound, h, i, n)) {
            out.extend(part?);
        }
    }
    sort_by_height(&mut out);
    Ok(out)
}

/// Every element of `field` with `H_K(x) <= B`, ordered by height then
/// value.
pub fn enumerate(field: FieldDesc, bound: &Rational, shards: usize) -> Result<Vec<QuadElem>> {
    Ok(enumerate_with_heights(field, bound, shards)?.into_iter().map(|c| c.elem).collect())
}

pub fn enumerate_quad(field: QuadField, bound: &Rational, shards: usize) -> Result<Vec<QuadElem>> {
    enumerate(FieldDesc::Quad(field), bound, shards)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub field: FieldDesc,
    #[serde(rename = "B", with = "crate::rational::serde_text")]
    pub bound: Rational,
    /// `|H_K^{-1}[1, B]|`.
    pub total: u64,
    /// `|H_K^{-1}[1, B] ∩ [-1, 1]|`.
    pub in_unit: u64,
}

impl CensusRow {
    /// `in_unit = (total + 3) / 2`: inversion pairs `|x| > 1` with
    /// `0 < |x| < 1` at equal height, leaving `0, 1, -1`.
    pub fn identity_holds(&self) -> bool {
        2 * self.in_unit == self.total + 3
    }

    pub fn csv_header() -> [&'static str; 4] {
        ["field", "B", "total", "in_unit"]
    }

    pub fn csv_record(&self) -> [String; 4] {
        [self.field.to_string(), canonical(&self.bound), self.total.to_string(), self.in_unit.to_string()]
    }
}

/// Counts elements of height at most `B`, in total and in `[-1, 1]`, and
/// checks the inversion identity.
pub fn census(field: FieldDesc, bound: &Rational, shards: usize) -> Result<CensusRow> {
    let (total, in_unit) = match field {
        FieldDesc::Rational => {
            let h = floor_bound(bound)?;
            run_sharded(shards, |i, n| {
                let (mut total, mut unit) = (0u64, 0u64);
                for_each_coprime(h, i, n, false, |p, q| {
                    total += 1;
                    if p.abs() <= q {
                        unit += 1;
                    }
                });
                (total, unit)
            })
            .into_iter()
            .fold((0, 0), |acc, (t, u)| (acc.0 + t, acc.1 + u))
        }
        FieldDesc::Quad(_) => {
            let all = enumerate_with_heights(field, bound, shards)?;
            let unit = all.iter().filter(|c| c.elem.in_unit_interval()).count();
            (all.len() as u64, unit as u64)
        }
    };
    let row = CensusRow { field, bound: bound.clone(), total, in_unit };
    if !row.identity_holds() {
        return Err(Error::Inconsistency(format!(
            "census {} B={}: in_unit {} != ({} + 3)/2",
            field,
            canonical(bound),
            in_unit,
            total
        )));
    }
    Ok(row)
}

/// Which normalization of the leading constant the counts follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SchanuelConvention {
    /// `6 / pi^2`.
    SixOverPiSquared,
    /// `12 / pi^2`: both signs of every `p/q`.
    TwelveOverPiSquared,
}

impl SchanuelConvention {
    pub fn value(&self) -> f64 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        match self {
            SchanuelConvention::SixOverPiSquared => 6.0 / pi2,
            SchanuelConvention::TwelveOverPiSquared => 12.0 / pi2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SchanuelFit {
    pub field: FieldDesc,
    /// `(B, total)`.
    #[serde(skip)]
    pub samples: Vec<(Rational, u64)>,
    /// `total / B^2` per sample.
    pub s_hat_series: Vec<f64>,
    /// `total / B^2` at the largest bound.
    pub s_hat: f64,
    /// `|S(B_max) - S(B_prev)| / S(B_max)`, with `B_prev` the previous
    /// sample.
    pub drift: Option<f64>,
    /// Closest of `6/pi^2`, `12/pi^2` (meaningful over `Q`).
    pub nearest: SchanuelConvention,
    /// Relative distance of `s_hat` to `nearest`.
    pub relative_error: f64,
}

pub fn schanuel_fit(field: FieldDesc, bounds: &[Rational], shards: usize) -> Result<SchanuelFit> {
    if bounds.is_empty() || bounds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("bounds must be nonempty and strictly ascending".into()));
    }
    let mut samples = Vec::with_capacity(bounds.len());
    let mut s_hat_series = Vec::with_capacity(bounds.len());
    for b in bounds {
        let row = census(field, b, shards)?;
        let bf = b.to_f64().unwrap_or(f64::NAN);
        s_hat_series.push(row.total as f64 / (bf * bf));
        samples.push((b.clone(), row.total));
    }
    let s_hat = *s_hat_series.last().unwrap();
    let drift = (s_hat_series.len() >= 2).then(|| (s_hat - s_hat_series[s_hat_series.len() - 2]).abs() / s_hat);
    let rel = |c: SchanuelConvention| (s_hat - c.value()).abs() / c.value();
    let nearest = [SchanuelConvention::SixOverPiSquared, SchanuelConvention::TwelveOverPiSquared]
        .into_iter()
        .min_by(|a, b| rel(*a).partial_cmp(&rel(*b)).unwrap_or(Ordering::Equal))
        .unwrap();
    Ok(SchanuelFit { field, samples, s_hat_series, s_hat, drift, nearest, relative_error: rel(nearest) })
}

/// `|{p/q : max(|p|,q) <= h}|` from Euler's totient, independent of the
/// enumeration.
pub fn count_q_by_totient(h: u64) -> u64 {
    if h == 0 {
        return 0;
    }
    let mut phi: Vec<u64> = (0..=h).collect();
    for i in 2..=h as usize {
        if phi[i] == i as u64 {
            for j in (i..=h as usize).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    let coprime_positive: u64 = 2 * phi[1..].iter().sum::<u64>() - 1;
    2 * coprime_positive + 1
}
