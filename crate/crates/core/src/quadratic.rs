//! Exact arithmetic in real quadratic fields and heights of their elements.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{FieldDesc, QuadField};
use crate::poly::Poly;
use crate::rational::{compact, height_q, parse_rational};
use crate::scalar::ToF64;
use crate::{Error, IntPoly, Rational, Result};

/// `u + v sqrt(d)`.
///
/// Elements built from rationals alone (including `zero()` and `one()`)
/// carry no field tag and combine with elements of any field. An element
/// with `v != 0` always carries its field.
#[derive(Clone, Debug)]
pub struct QuadElem {
    u: Rational,
    v: Rational,
    field: Option<QuadField>,
}

impl QuadElem {
    pub fn new(u: Rational, v: Rational, field: QuadField) -> Self {
        QuadElem { u, v, field: Some(field) }
    }

    /// Element of `field`; fails for an irrational part over `Q`.
    pub fn in_field(u: Rational, v: Rational, field: FieldDesc) -> Result<Self> {
        match field {
            FieldDesc::Quad(k) => Ok(QuadElem::new(u, v, k)),
            FieldDesc::Rational if v.is_zero() => Ok(QuadElem::from(u)),
            FieldDesc::Rational => Err(Error::FieldMismatch("Q".into(), "irrational element".into())),
        }
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_d(field: QuadField) -> Self {
        QuadElem::new(Rational::zero(), Rational::one(), field)
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    pub fn v(&self) -> &Rational {
        &self.v
    }

    pub fn field(&self) -> Option<QuadField> {
        self.field
    }

    /// The smallest field containing the element: `Q` when `v = 0`.
    pub fn generated_field(&self) -> FieldDesc {
        match self.field {
            Some(k) if !self.v.is_zero() => FieldDesc::Quad(k),
            _ => FieldDesc::Rational,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.u)
    }

    /// Re-tags the element as a member of `field`.
    pub fn with_field(mut self, field: FieldDesc) -> Result<Self> {
        match (field, self.field) {
            (FieldDesc::Rational, _) if self.v.is_zero() => {
                self.field = None;
                Ok(self)
            }
            (FieldDesc::Rational, _) => Err(mismatch(self.field, None)),
            (FieldDesc::Quad(k), Some(own)) if own != k && !self.v.is_zero() => {
                Err(mismatch(Some(own), Some(k)))
            }
            (FieldDesc::Quad(k), _) => {
                self.field = Some(k);
                Ok(self)
            }
        }
    }

    fn d(&self) -> BigInt {
        BigInt::from(self.field.map_or(0, |k| k.d()))
    }

    fn join(&self, other: &QuadElem) -> Result<Option<QuadField>> {
        match (self.field, other.field) {
            (Some(a), Some(b)) if a != b => {
                if self.v.is_zero() {
                    Ok(Some(b))
                } else if other.v.is_zero() {
                    Ok(Some(a))
                } else {
                    Err(mismatch(Some(a), Some(b)))
                }
            }
            (a, b) => Ok(a.or(b)),
        }
    }

    pub fn try_add(&self, other: &QuadElem) -> Result<QuadElem> {
        let field = self.join(other)?;
        Ok(QuadElem { u: &self.u + &other.u, v: &self.v + &other.v, field })
    }

    pub fn try_sub(&self, other: &QuadElem) -> Result<QuadElem> {
        let field = self.join(other)?;
        Ok(QuadElem { u: &self.u - &other.u, v: &self.v - &other.v, field })
    }

    pub fn try_mul(&self, other: &QuadElem) -> Result<QuadElem> {
        let field = self.join(other)?;
        let d = Rational::from_integer(field.map_or(BigInt::zero(), |k| BigInt::from(k.d())));
        let u = &self.u * &other.u + &self.v * &other.v * d;
        let v = &self.u * &other.v + &self.v * &other.u;
        Ok(QuadElem { u, v, field })
    }

    pub fn try_div(&self, other: &QuadElem) -> Result<QuadElem> {
        self.try_mul(&other.inv()?)
    }

    pub fn conj(&self) -> QuadElem {
        QuadElem { u: self.u.clone(), v: -&self.v, field: self.field }
    }

    /// `u^2 - d v^2`.
    pub fn norm(&self) -> Rational {
        &self.u * &self.u - &self.v * &self.v * Rational::from_integer(self.d())
    }

    pub fn trace(&self) -> Rational {
        &self.u + &self.u
    }

    pub fn inv(&self) -> Result<QuadElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadElem { u: &self.u / &n, v: -&self.v / &n, field: self.field })
    }

    pub fn pow(&self, e: u32) -> QuadElem {
        let mut acc = QuadElem::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign of `u + v sqrt(d)` as a real number (`sqrt(d) > 0`).
    pub fn sign(&self) -> Ordering {
        sign_of(&self.u, &self.v, &self.d())
    }

    /// Exact comparison of the element with a rational.
    pub fn cmp_real(&self, r: &Rational) -> Ordering {
        sign_of(&(&self.u - r), &self.v, &self.d())
    }

    /// Exact comparison of two elements of compatible fields.
    pub fn try_cmp(&self, other: &QuadElem) -> Result<Ordering> {
        Ok(self.try_sub(other)?.sign())
    }

    pub fn abs(&self) -> QuadElem {
        if self.sign() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// `|x| <= 1`, decided exactly.
    pub fn in_unit_interval(&self) -> bool {
        self.cmp_real(&-Rational::one()) != Ordering::Less
            && self.cmp_real(&Rational::one()) != Ordering::Greater
    }

    /// Primitive integer minimal polynomial over `Q` with positive leading
    /// coefficient: degree 1 for rationals, 2 otherwise.
    pub fn min_poly(&self) -> IntPoly {
        if self.is_rational() {
            return Poly::new(vec![-self.u.numer().clone(), self.u.denom().clone()]);
        }
        let t = self.trace();
        let n = self.norm();
        let c2 = t.denom().lcm(n.denom());
        let c1 = -(t.numer() * (&c2 / t.denom()));
        let c0 = n.numer() * (&c2 / n.denom());
        let g = c2.gcd(&c1).gcd(&c0);
        Poly::new(vec![c0 / &g, c1 / &g, c2 / &g])
    }

    pub fn to_f64(&self) -> f64 {
        let d = self.field.map_or(0.0, |k| k.d() as f64);
        self.u.to_f64_lossy() + self.v.to_f64_lossy() * d.sqrt()
    }
}

fn mismatch(a: Option<QuadField>, b: Option<QuadField>) -> Error {
    let name = |k: Option<QuadField>| k.map_or(FieldDesc::Rational, FieldDesc::Quad).to_string();
    Error::FieldMismatch(name(a), name(b))
}

// Sign of a + b sqrt(d) for d >= 0.
fn sign_of(a: &Rational, b: &Rational, d: &BigInt) -> Ordering {
    let sa = a.cmp(&Rational::zero());
    let sb = if d.is_zero() { Ordering::Equal } else { b.cmp(&Rational::zero()) };
    match (sa, sb) {
        (s, Ordering::Equal) => s,
        (Ordering::Equal, s) => s,
        (x, y) if x == y => x,
        _ => {
            let a2 = a * a;
            let b2d = b * b * Rational::from_integer(d.clone());
            match a2.cmp(&b2d) {
                Ordering::Greater => sa,
                Ordering::Less => sb,
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

impl From<Rational> for QuadElem {
    fn from(u: Rational) -> Self {
        QuadElem { u, v: Rational::zero(), field: None }
    }
}

impl PartialEq for QuadElem {
    fn eq(&self, other: &Self) -> bool {
        self.u == other.u && self.v == other.v && (self.v.is_zero() || self.field == other.field)
    }
}

impl Eq for QuadElem {}

impl Hash for QuadElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.u.hash(state);
        self.v.hash(state);
    }
}

// Non-panicking: None across fields, where `cmp` would panic.
#[allow(clippy::non_canonical_partial_ord_impl)]
impl PartialOrd for QuadElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl Ord for QuadElem {
    /// Real-number order. Panics when comparing irrational elements of
    /// different fields.
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_cmp(other).expect("comparing elements of different quadratic fields")
    }
}

impl Zero for QuadElem {
    fn zero() -> Self {
        QuadElem::from(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}

impl One for QuadElem {
    fn one() -> Self {
        QuadElem::from(Rational::one())
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { u: -self.u, v: -self.v, field: self.field }
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { u: -&self.u, v: -&self.v, field: self.field }
    }
}

// Operator forms panic on a field mismatch; the `try_*` methods report it.
macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $try:ident) => {
        impl $Trait<&QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: &QuadElem) -> QuadElem {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $Trait<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: QuadElem) -> QuadElem {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: &QuadElem) -> QuadElem {
                (&self).$method(rhs)
            }
        }
        impl $Trait<QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: QuadElem) -> QuadElem {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl fmt::Display for QuadElem {
    /// `u`, `u+v*sqrt(d)` or `u-v*sqrt(d)`, rationals in compact form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(k) = self.field.filter(|_| !self.v.is_zero()) else {
            return write!(f, "{}", compact(&self.u));
        };
        let sign = if self.v.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*sqrt({})", compact(&self.u), sign, compact(&self.v.abs()), k.d())
    }
}

/// Parses element text such as `3/2`, `1/2+1/2*sqrt(5)`, `-sqrt(2)` or
/// `2*sqrt(3)-1`. The radicand must match `field`.
pub fn parse_elem(s: &str, field: FieldDesc) -> Result<QuadElem> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("not a field element: {s:?}"));
    if text.is_empty() {
        return Err(bad());
    }
    let mut u = Rational::zero();
    let mut v = Rational::zero();
    let mut radicand: Option<i64> = None;
    for term in split_signed_terms(&text) {
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, term.strip_prefix('+').unwrap_or(term)),
        };
        if body.is_empty() {
            return Err(bad());
        }
        if let Some(pos) = body.find("sqrt") {
            let coeff = &body[..pos];
            let coeff = match coeff.strip_suffix('*') {
                Some(c) => parse_rational(c)?,
                None if coeff.is_empty() => Rational::one(),
                None => return Err(bad()),
            };
            let rad = body[pos + 4..]
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?;
            let rad: i64 = rad.parse().map_err(|_| bad())?;
            if radicand.is_some_and(|r| r != rad) {
                return Err(bad());
            }
            radicand = Some(rad);
            v += if neg { -coeff } else { coeff };
        } else {
            let c = parse_rational(body)?;
            u += if neg { -c } else { c };
        }
    }
    match (radicand, field) {
        (None, _) => QuadElem::from(u).with_field(field),
        (Some(rad), FieldDesc::Quad(k)) if rad as u64 == k.d() => Ok(QuadElem::new(u, v, k)),
        (Some(rad), _) => Err(Error::FieldMismatch(field.to_string(), format!("Q(sqrt {rad})"))),
    }
}

// Splits at top-level '+'/'-' signs that start a new term.
pub(crate) fn split_signed_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    let mut depth = 0i32;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > start && !matches!(bytes[i - 1], b'*' | b'/' | b'^' | b'+' | b'-') => {
                out.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}


/// Height of a field element, kept exactly.
///
/// Heights of properly quadratic elements are themselves quadratic
/// irrationals in general, so the value is a [`QuadElem`]; comparisons
/// against rational bounds are exact.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightValue {
    pub value: QuadElem,
    pub float_hint: f64,
}

impl HeightValue {
    pub fn new(value: QuadElem) -> Self {
        let float_hint = value.to_f64();
        HeightValue { value, float_hint }
    }

    pub fn from_integer(n: BigInt) -> Self {
        HeightValue::new(QuadElem::from(Rational::from_integer(n)))
    }

    pub fn cmp_bound(&self, bound: &Rational) -> Ordering {
        self.value.cmp_real(bound)
    }

    pub fn within(&self, bound: &Rational) -> bool {
        self.cmp_bound(bound) != Ordering::Greater
    }
}

impl fmt::Display for HeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn max_one(x: &QuadElem) -> QuadElem {
    let a = x.abs();
    if a.cmp_real(&Rational::one()) == Ordering::Greater {
        a
    } else {
        QuadElem::one()
    }
}

/// Height `H_K(x)` relative to `field`.
///
/// Rationals: `H_Q(x)^[K:Q]`. Properly quadratic `x` with primitive minimal
/// polynomial `c2 X^2 + c1 X + c0`: `c2 max(1,|x|) max(1,|x'|)`, the Mahler
/// measure of that polynomial.
pub fn height_k(x: &QuadElem, field: FieldDesc) -> Result<HeightValue> {
    let x = x.clone().with_field(field)?;
    if let Some(r) = x.as_rational() {
        let h = height_q(r);
        return Ok(HeightValue::from_integer(num_traits::pow(h, field.degree() as usize)));
    }
    let c2 = x.min_poly().lead().cloned().expect("quadratic minimal polynomial");
    let value = QuadElem::from(Rational::from_integer(c2)) * max_one(&x) * max_one(&x.conj());
    Ok(HeightValue::new(value))
}
