//! Density of m-sectable cosines among elements of bounded height.
//!
//! Two independent counts of `m-Sect ∩ [-1, 1] ∩ H^{-1}[1, B]`:
//!
//! * per element: decide every `a` in the census;
//! * forward image: push every `b ∈ [-1, 1]` of small height through
//!   `T_{m_odd}` and keep the images of height at most `B`.
//!
//! # Preimage radius
//!
//! Let `D = [K:Q]`, `n = m_odd` and `V_n(y) = 2 T_n(y/2)`, which is monic
//! with integer coefficients. At a finite place `|V_n(y)|_v = |y|_v^n`
//! whenever `|y|_v > 1`. At a real place, writing `y = z + 1/z` when
//! `|y| > 2` gives `|V_n(y)| = |z^n + z^-n| >= |z|^n >= (|y|/2)^n`, and the
//! bound `max(1, |V_n(y)|) >= (max(1, |y|)/2)^n` is trivial for `|y| <= 2`.
//! Hence `H(V_n(y)) >= H(y)^n / 2^{nD}`. With `y = 2b`, `H(2) = 2^D` and
//! `H(uv) <= H(u) H(v)`:
//!
//! `H(b)^n <= 2^{nD} H(2b)^n <= 2^{2nD} H(V_n(2b)) <= 2^{2nD} 2^D H(T_n(b))`.
//!
//! So `H(T_n(b)) <= B` forces `H(b) <= 4^D (2^D B)^{1/n}`, and
//! [`preimage_radius`] rounds that up to an integer. For `n = 1` the map is
//! the identity and the radius is `B`.
//!
//! # Rational images over a quadratic field
//!
//! Sectability of `a` is decided over `Q(a)`. A rational `a` reached only
//! from an irrational `b` is therefore not counted: it needs a rational
//! preimage.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::ceil_root;
use crate::census::{census, enumerate_with_heights};
use crate::chebyshev::chebyshev_t;
use crate::field::FieldDesc;
use crate::fit::linear_fit;
use crate::quadratic::height_k;
use crate::rational::{canonical, parse_rational};
use crate::sect::{decide_sectable, max_odd_divisor};
use crate::shard::run_sharded;
use crate::{Error, QuadElem, QuadPoly, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMethod {
    PerElement,
    ForwardImage,
    /// Both, failing with [`Error::Inconsistency`] if they disagree.
    CrossCheck,
}

impl FromStr for CountMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-element" => Ok(CountMethod::PerElement),
            "forward-image" => Ok(CountMethod::ForwardImage),
            "cross-check" => Ok(CountMethod::CrossCheck),
            _ => Err(Error::Parse(format!("unknown count method '{s}'"))),
        }
    }
}

/// Height radius containing every `b` with `H(T_n(b)) <= B`.
pub fn preimage_radius(field: FieldDesc, n: u32, bound: &Rational) -> Rational {
    let b = bound.ceil().to_integer();
    if n == 1 {
        return Rational::from_integer(b);
    }
    let d = field.degree();
    let scaled = b << d;
    let root = ceil_root(&scaled, n);
    Rational::from_integer(root << (2 * d))
}

fn check_bound(bound: &Rational) -> Result<()> {
    if *bound < Rational::one() {
        return Err(Error::InvalidArgument(format!("height bound {} < 1", canonical(bound))));
    }
    Ok(())
}

fn unit_elements(field: FieldDesc, bound: &Rational, shards: usize) -> Result<Vec<crate::census::Counted>> {
    let mut all = enumerate_with_heights(field, bound, shards)?;
    all.retain(|c| c.elem.in_unit_interval());
    Ok(all)
}

fn decide_all(elems: &[QuadElem], m: u32, shards: usize) -> Result<Vec<bool>> {
    let parts = run_sharded(shards, |i, n| -> Result<Vec<(usize, bool)>> {
        let mut out = Vec::new();
        for (j, a) in elems.iter().enumerate().skip(i).step_by(n) {
            out.push((j, decide_sectable(a, m)?.sectable));
        }
        Ok(out)
    });
    let mut flags = vec![false; elems.len()];
    for part in parts {
        for (j, s) in part? {
            flags[j] = s;
        }
    }
    Ok(flags)
}

/// The m-sectable elements of `[-1, 1]` with height at most `B`, found by
/// deciding each one.
pub fn msect_set_per_element(field: FieldDesc, m: u32, bound: &Rational, shards: usize) -> Result<Vec<QuadElem>> {
    check_bound(bound)?;
    max_odd_divisor(m)?;
    let elems: Vec<QuadElem> = unit_elements(field, bound, shards)?.into_iter().map(|c| c.elem).collect();
    let flags = decide_all(&elems, m, shards)?;
    let mut out: Vec<QuadElem> = elems.into_iter().zip(flags).filter(|(_, s)| *s).map(|(a, _)| a).collect();
    out.sort();
    Ok(out)
}

/// The same set, found as images `T_{m_odd}(b)`.
pub fn msect_set_forward(field: FieldDesc, m: u32, bound: &Rational, shards: usize) -> Result<Vec<QuadElem>> {
    check_bound(bound)?;
    let n = max_odd_divisor(m)?;
    let radius = preimage_radius(field, n, bound);
    let t: QuadPoly = chebyshev_t(n);
    let pre = unit_elements(field, &radius, shards)?;
    let parts = run_sharded(shards, |i, k| -> Result<Vec<QuadElem>> {
        let mut out = Vec::new();
        for c in pre.iter().skip(i).step_by(k) {
            let image = t.evaluate(&c.elem);
            if image.is_rational() && !c.elem.is_rational() {
                continue;
            }
            let image = image.with_field(field)?;
            if height_k(&image, field)?.within(bound) {
                out.push(image);
            }
        }
        Ok(out)
    });
    let mut set = BTreeSet::new();
    for part in parts {
        set.extend(part?);
    }
    Ok(set.into_iter().collect())
}

/// `|m-Sect ∩ [-1, 1] ∩ H^{-1}[1, B]|`.
pub fn msect_count(field: FieldDesc, m: u32, bound: &Rational, method: CountMethod, shards: usize) -> Result<u64> {
    match method {
        CountMethod::PerElement => Ok(msect_set_per_element(field, m, bound, shards)?.len() as u64),
        CountMethod::ForwardImage => Ok(msect_set_forward(field, m, bound, shards)?.len() as u64),
        CountMethod::CrossCheck => {
            let a = msect_set_per_element(field, m, bound, shards)?;
            let b = msect_set_forward(field, m, bound, shards)?;
            if a != b {
                let first = a
                    .iter()
                    .find(|x| !b.contains(x))
                    .or_else(|| b.iter().find(|x| !a.contains(x)))
                    .map_or_else(String::new, |x| x.to_string());
                return Err(Error::Inconsistency(format!(
                    "{field} m={m} B={}: per-element {} vs forward-image {} (first difference {first})",
                    canonical(bound),
                    a.len(),
                    b.len()
                )));
            }
            Ok(a.len() as u64)
        }
    }
}

/// Per-element counts for several bounds from one pass at the largest
/// bound: each element is decided once and counted for every bound that
/// admits its height.
pub fn msect_counts_per_element(field: FieldDesc, m: u32, bounds: &[Rational], shards: usize) -> Result<Vec<u64>> {
    max_odd_divisor(m)?;
    let Some(top) = bounds.iter().max() else {
        return Ok(Vec::new());
    };
    check_bound(bounds.iter().min().unwrap())?;
    let counted = unit_elements(field, top, shards)?;
    let elems: Vec<QuadElem> = counted.iter().map(|c| c.elem.clone()).collect();
    let flags = decide_all(&elems, m, shards)?;
    Ok(bounds
        .iter()
        .map(|b| counted.iter().zip(&flags).filter(|(c, s)| **s && c.height.within(b)).count() as u64)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityRecord {
    pub field: FieldDesc,
    pub m: u32,
    pub m_odd: u32,
    #[serde(rename = "B", with = "crate::rational::serde_text")]
    pub bound: Rational,
    pub numerator: u64,
    pub denominator: u64,
    #[serde(with = "crate::rational::serde_text")]
    pub delta: Rational,
    pub delta_float: f64,
}

impl DensityRecord {
    pub fn new(field: FieldDesc, m: u32, bound: Rational, numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 || numerator > denominator {
            return Err(Error::Inconsistency(format!("density {numerator}/{denominator} outside [0, 1]")));
        }
        let delta = Rational::new(numerator.into(), denominator.into());
        let delta_float = delta.to_f64().unwrap_or(f64::NAN);
        Ok(DensityRecord { field, m, m_odd: max_odd_divisor(m)?, bound, numerator, denominator, delta, delta_float })
    }

    pub fn csv_header() -> [&'static str; 8] {
        ["field", "m", "m_odd", "B", "numerator", "denominator", "delta", "delta_float"]
    }

    pub fn csv_record(&self) -> [String; 8] {
        [
            self.field.to_string(),
            self.m.to_string(),
            self.m_odd.to_string(),
            canonical(&self.bound),
            self.numerator.to_string(),
            self.denominator.to_string(),
            canonical(&self.delta),
            format!("{:e}", self.delta_float),
        ]
    }

    /// Parses a row written by [`DensityRecord::csv_record`] and checks it
    /// is self-consistent.
    pub fn from_csv_record(fields: &[&str]) -> Result<Self> {
        if fields.len() != 8 {
            return Err(Error::Parse(format!("expected 8 columns, got {}", fields.len())));
        }
        let int = |s: &str| s.trim().parse::<u64>().map_err(|e| Error::Parse(format!("'{s}': {e}")));
        let field: FieldDesc = fields[0].parse()?;
        let m = u32::try_from(int(fields[1])?).map_err(|e| Error::Parse(e.to_string()))?;
        let rec = DensityRecord::new(field, m, parse_rational(fields[3])?, int(fields[4])?, int(fields[5])?)?;
        if rec.m_odd as u64 != int(fields[2])? || rec.delta != parse_rational(fields[6])? {
            return Err(Error::Parse(format!("inconsistent density row {fields:?}")));
        }
        Ok(rec)
    }
}

/// `δ(m-Sect, [-1, 1]; B)` as an exact ratio.
pub fn density(field: FieldDesc, m: u32, bound: &Rational, method: CountMethod, shards: usize) -> Result<DensityRecord> {
    let numerator = msect_count(field, m, bound, method, shards)?;
    let row = census(field, bound, shards)?;
    DensityRecord::new(field, m, bound.clone(), numerator, row.in_unit)
}

/// Densities over a grid of bounds.
pub fn density_grid(
    field: FieldDesc,
    m: u32,
    grid: &[Rational],
    method: CountMethod,
    shards: usize,
) -> Result<Vec<DensityRecord>> {
    grid.iter().map(|b| density(field, m, b, method, shards)).collect()
}

/// Parses `start:end:xfactor` into `start, start*factor, ...` up to `end`.
pub fn parse_grid(s: &str) -> Result<Vec<Rational>> {
    let bad = || Error::Parse(format!("grid '{s}' is not start:end:xfactor"));
    let parts: Vec<&str> = s.split(':').collect();
    let [start, end, factor] = parts[..] else {
        return Err(bad());
    };
    let start = parse_rational(start)?;
    let end = parse_rational(end)?;
    let factor = parse_rational(factor.strip_prefix('x').ok_or_else(bad)?)?;
    if start < Rational::one() || end < start || factor <= Rational::one() {
        return Err(Error::InvalidArgument(format!("grid '{s}' needs 1 <= start <= end and factor > 1")));
    }
    let mut out = Vec::new();
    let mut b = start;
    while b <= end {
        out.push(b.clone());
        b *= &factor;
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayFit {
    pub records: Vec<DensityRecord>,
    pub fitted_slope: f64,
    /// `2/m_odd - 2`.
    pub theoretical_slope: f64,
    pub intercept: f64,
    /// Records with a nonzero numerator.
    pub points_used: usize,
    /// `fitted_slope - theoretical_slope`.
    pub gap: f64,
}

/// The short summary written by `fit`.
#[derive(Debug, Clone, Serialize)]
pub struct DecayFitSummary {
    pub fitted_slope: f64,
    pub theoretical_slope: f64,
    pub intercept: f64,
    pub points_used: usize,
}

impl DecayFit {
    pub fn summary(&self) -> DecayFitSummary {
        DecayFitSummary {
            fitted_slope: self.fitted_slope,
            theoretical_slope: self.theoretical_slope,
            intercept: self.intercept,
            points_used: self.points_used,
        }
    }
}

/// Least-squares slope of `log δ` against `log B`.
///
/// Records must share field and `m`, lie on a geometric grid of at least
/// four bounds, and reach `B >= 256`.
pub fn decay_fit(records: &[DensityRecord]) -> Result<DecayFit> {
    let mut records = records.to_vec();
    records.sort_by(|a, b| a.bound.cmp(&b.bound));
    let first = records.first().ok_or(Error::NoFit)?;
    if records.iter().any(|r| r.field != first.field || r.m != first.m) {
        return Err(Error::InvalidArgument("records mix fields or m".into()));
    }
    if records.len() < 4 {
        return Err(Error::InvalidArgument(format!("{} records, need at least 4", records.len())));
    }
    if records.last().unwrap().bound < Rational::from_integer(BigInt::from(256)) {
        return Err(Error::InvalidArgument("largest bound must be at least 256".into()));
    }
    let ratio = &records[1].bound / &records[0].bound;
    if ratio <= Rational::one() || records.windows(2).any(|w| &w[1].bound / &w[0].bound != ratio) {
        return Err(Error::InvalidArgument("bounds are not a geometric grid".into()));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = records
        .iter()
        .filter(|r| !r.delta.is_zero())
        .map(|r| (r.bound.to_f64().unwrap().ln(), r.delta_float.ln()))
        .unzip();
    if xs.is_empty() {
        return Err(Error::NoFit);
    }
    let line = linear_fit(&xs, &ys).ok_or(Error::NoFit)?;
    let theoretical_slope = 2.0 / first.m_odd as f64 - 2.0;
    Ok(DecayFit {
        points_used: xs.len(),
        fitted_slope: line.slope,
        theoretical_slope,
        intercept: line.intercept,
        gap: line.slope - theoretical_slope,
        records,
    })
}
