//! Dense univariate polynomials over an arbitrary coefficient ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::field::FieldDesc;
use crate::quadratic::{parse_elem, split_signed_terms};
use crate::rational::{compact, parse_rational};
use crate::scalar::{Field, FromBigInt, Ring};
use crate::{Error, QuadElem, Rational, Result};

/// Coefficients stored constant term first. The leading coefficient is
/// nonzero; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![T::zero(), T::one()])
    }

    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly<T>) -> Poly<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }

    pub fn scale(&self, c: &T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Poly<T> {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::zero();
        for c in &self.coeffs {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Poly::new(out)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Lifts integer coefficients into `T`.
    pub fn from_int_poly(p: &Poly<BigInt>) -> Poly<T>
    where
        T: FromBigInt,
    {
        Poly::new(p.coeffs.iter().map(T::from_bigint).collect())
    }

    /// True when only even (`parity = 0`) or only odd (`parity = 1`)
    /// powers carry nonzero coefficients.
    pub fn has_parity(&self, parity: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == parity % 2 || c.is_zero())
    }
}

impl<T: Field> Poly<T> {
    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly<T>) -> (Poly<T>, Poly<T>) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.lead().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly<T> {
        match self.lead() {
            Some(l) => {
                let inv = T::one() / l.clone();
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly<T>) -> Poly<T> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Poly<T> {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }
}

impl<T: Ring> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Ring> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Ring> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Ring> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Ring> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Poly<T>) -> Poly<T> {
        &self + &rhs
    }
}

impl<T: Ring> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        &self - &rhs
    }
}

impl<T: Ring> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        &self * &rhs
    }
}

/// How a coefficient is written in a term.
pub trait CoeffText: Sized {
    /// Sign and magnitude text. The magnitude is parenthesized when it is
    /// not a single token.
    fn sign_and_text(&self) -> (bool, String);
    fn parse_coeff(s: &str, field: FieldDesc) -> Result<Self>;
}

impl CoeffText for BigInt {
    fn sign_and_text(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }

    fn parse_coeff(s: &str, _field: FieldDesc) -> Result<Self> {
        let r = parse_rational(s)?;
        if !r.denom().is_one() {
            return Err(Error::Parse(format!("not an integer: {s:?}")));
        }
        Ok(r.numer().clone())
    }
}

impl CoeffText for Rational {
    fn sign_and_text(&self) -> (bool, String) {
        (self.is_negative(), compact(&self.abs()))
    }

    fn parse_coeff(s: &str, _field: FieldDesc) -> Result<Self> {
        parse_rational(s)
    }
}

impl CoeffText for QuadElem {
    fn sign_and_text(&self) -> (bool, String) {
        if let Some(r) = self.as_rational() {
            return r.sign_and_text();
        }
        (false, format!("({self})"))
    }

    fn parse_coeff(s: &str, field: FieldDesc) -> Result<Self> {
        let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s);
        parse_elem(inner, field)
    }
}

impl<T: Ring + CoeffText> fmt::Display for Poly<T> {
    /// Space-free, highest power first: `64*x^7-112*x^5+56*x^3-7*x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = c.sign_and_text();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            match (k, mag.as_str()) {
                (0, _) => write!(f, "{mag}")?,
                (_, "1") => write!(f, "{var}")?,
                _ => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

impl<T: Ring + CoeffText> Poly<T> {
    /// Parses sums of terms `c`, `c*x`, `c*x^k`, `x^k`, `-x` in any order;
    /// whitespace is ignored and repeated powers are summed.
    pub fn parse(s: &str, field: FieldDesc) -> Result<Poly<T>> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("not a polynomial: {s:?}"));
        if text.is_empty() {
            return Err(bad());
        }
        let mut coeffs: Vec<T> = Vec::new();
        for term in split_signed_terms(&text) {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(term)),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff_text, power) = split_power(body).ok_or_else(bad)?;
            let c = match coeff_text {
                "" => T::one(),
                t => T::parse_coeff(t, field)?,
            };
            let c = if neg { -c } else { c };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, T::zero());
            }
            coeffs[power] = coeffs[power].clone() + c;
        }
        Ok(Poly::new(coeffs))
    }

    /// Coefficient strings, constant term first.
    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| {
                let (neg, mag) = c.sign_and_text();
                let mag = mag.trim_start_matches('(').trim_end_matches(')').to_string();
                match (neg, c.is_zero()) {
                    (_, true) => "0".to_string(),
                    (true, _) => format!("-{mag}"),
                    (false, _) => mag,
                }
            })
            .collect()
    }

    pub fn from_coeff_strings(items: &[String], field: FieldDesc) -> Result<Poly<T>> {
        items
            .iter()
            .map(|s| T::parse_coeff(s, field))
            .collect::<Result<Vec<_>>>()
            .map(Poly::new)
    }
}

// "c*x^k" -> ("c", k); "x" -> ("", 1); "c" -> ("c", 0).
fn split_power(body: &str) -> Option<(&str, usize)> {
    let Some(xpos) = body.rfind('x') else {
        return Some((body, 0));
    };
    let coeff = &body[..xpos];
    let coeff = if coeff.is_empty() { coeff } else { coeff.strip_suffix('*')? };
    if coeff.is_empty() && xpos != 0 {
        return None;
    }
    let rest = &body[xpos + 1..];
    let power = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse().ok()? };
    Some((coeff, power))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::{IntPoly, RatPoly};

    fn ip(c: &[i64]) -> IntPoly {
        Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn rp(c: &[Rational]) -> RatPoly {
        Poly::new(c.to_vec())
    }

    #[test]
    fn normalization_and_degree() {
        assert!(ip(&[0, 0]).is_zero());
        assert_eq!(ip(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn evaluate_examples() {
        let t3 = rp(&[int(0), int(-3), int(0), int(4)]);
        assert_eq!(t3.evaluate(&frac(1, 3)), frac(-23, 27));
        assert_eq!(t3.evaluate(&int(1)), int(1));
        let lin = rp(&[frac(-5, 7), int(1)]);
        assert_eq!(lin.evaluate(&frac(5, 7)), int(0));
    }

    #[test]
    fn compose_examples() {
        let sq = ip(&[0, 0, 1]);
        assert_eq!(sq.compose(&ip(&[1, 1])), ip(&[1, 2, 1]));
        let t2 = ip(&[-1, 0, 2]);
        let t3 = ip(&[0, -3, 0, 4]);
        let t6 = ip(&[-1, 0, 18, 0, -48, 0, 32]);
        assert_eq!(t2.compose(&t3), t6);
        assert_eq!(t3.compose(&t2), t6);
    }

    #[test]
    fn division_and_gcd() {
        let a = rp(&[int(-1), int(0), int(1)]); // x^2 - 1
        let b = rp(&[int(1), int(1)]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, rp(&[int(-1), int(1)]));
        assert!(r.is_zero());
        let sq = &a * &b; // (x-1)(x+1)^2
        assert_eq!(sq.squarefree_part(), a);
        assert_eq!(sq.gcd(&a), a);
    }

    #[test]
    fn render_examples() {
        let t7 = ip(&[0, -7, 0, 56, 0, -112, 0, 64]);
        assert_eq!(t7.to_string(), "64*x^7-112*x^5+56*x^3-7*x");
        assert_eq!(ip(&[0, 1]).to_string(), "x");
        assert_eq!(ip(&[1]).to_string(), "1");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(rp(&[frac(-1, 2), int(-3), int(0), int(4)]).to_string(), "4*x^3-3*x-1/2");
    }

    #[test]
    fn parse_examples() {
        let q = FieldDesc::Rational;
        assert_eq!(IntPoly::parse("64*x^7-112*x^5+56*x^3-7*x", q).unwrap(), ip(&[0, -7, 0, 56, 0, -112, 0, 64]));
        assert_eq!(RatPoly::parse("-1/2 + -3*x + 4*x^3", q).unwrap(), rp(&[frac(-1, 2), int(-3), int(0), int(4)]));
        assert_eq!(IntPoly::parse("x - x + 2", q).unwrap(), ip(&[2]));
        assert_eq!(IntPoly::parse("-x^2", q).unwrap(), ip(&[0, 0, -1]));
        assert!(IntPoly::parse("1/2*x", q).is_err());
        assert!(IntPoly::parse("2x", q).is_err());
        assert!(IntPoly::parse("", q).is_err());
        let k = FieldDesc::quad(2).unwrap();
        let p = crate::QuadPoly::parse("x^2-(1+sqrt(2))*x+sqrt(2)", k).unwrap();
        assert_eq!(p.to_string(), "x^2+(-1-1*sqrt(2))*x+(0+1*sqrt(2))");
        assert_eq!(crate::QuadPoly::parse(&p.to_string(), k).unwrap(), p);
    }

    #[test]
    fn coeff_strings_round_trip() {
        let p = rp(&[frac(-1, 2), int(0), int(4)]);
        let s = p.to_coeff_strings();
        assert_eq!(s, ["-1/2", "0", "4"]);
        assert_eq!(RatPoly::from_coeff_strings(&s, FieldDesc::Rational).unwrap(), p);
    }

    #[test]
    fn float_instantiation() {
        let p: Poly<f64> = Poly::new(vec![-1.0, 0.0, 2.0]);
        assert!((p.evaluate(&0.5) + 0.5).abs() < 1e-15);
        let q: Poly<f32> = Poly::new(vec![0.0, 1.0]);
        assert_eq!(q.compose(&q).evaluate(&3.0), 3.0);
    }
}
