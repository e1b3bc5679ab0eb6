//! Rationals: construction, canonical text, `q`-adic valuations and the
//! height on `Q`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::arith::is_prime;
use crate::{Error, Rational, Result};

/// Builds `num/den` in lowest terms with a positive denominator.
pub fn normalize(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(num.into(), den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q` or `p` (optional sign, surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let parse_int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        let t = t.strip_prefix('+').unwrap_or(t);
        if t.is_empty() {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        Some((n, d)) => normalize(parse_int(n)?, parse_int(d)?),
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Canonical text: always `p/q`, integers as `p/1`.
pub fn canonical(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Compact text: `p` for integers, `p/q` otherwise. Re-parses with
/// [`parse_rational`].
pub fn compact(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        canonical(x)
    }
}

/// Result of a `q`-adic valuation, kept additively.
///
/// The multiplicative value `|x|_q = q^(-exponent)` is derived. Zero gets
/// its own variant so that comparisons against 1 are only made on nonzero
/// inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Zero { prime: u64 },
    Finite { prime: u64, exponent: i64 },
}

impl Valuation {
    pub fn prime(&self) -> u64 {
        match *self {
            Valuation::Zero { prime } | Valuation::Finite { prime, .. } => prime,
        }
    }

    pub fn exponent(&self) -> Option<i64> {
        match *self {
            Valuation::Zero { .. } => None,
            Valuation::Finite { exponent, .. } => Some(exponent),
        }
    }

    /// `q^(-e)`; `None` for the zero input.
    pub fn multiplicative_value(&self) -> Option<Rational> {
        let e = self.exponent()?;
        let q = BigInt::from(self.prime());
        let pow = num_traits::pow(q, e.unsigned_abs() as usize);
        Some(if e >= 0 {
            Rational::new(BigInt::one(), pow)
        } else {
            Rational::from_integer(pow)
        })
    }

    /// Whether the multiplicative value exceeds 1, i.e. `q` divides the
    /// denominator.
    pub fn exceeds_one(&self) -> bool {
        matches!(self.exponent(), Some(e) if e < 0)
    }
}

fn multiplicity<T: Integer + Clone>(n: &T, q: &T) -> i64 {
    let mut rest = n.clone();
    let mut e = 0;
    loop {
        let (d, r) = rest.div_rem(q);
        if !r.is_zero() {
            return e;
        }
        rest = d;
        e += 1;
    }
}

/// `q`-adic valuation of `x`: the exponent `e` with `x = q^e h/k`,
/// `q` dividing neither `h` nor `k`.
pub fn valuation<T>(x: &Ratio<T>, q: u64) -> Result<Valuation>
where
    T: Integer + Clone + FromPrimitive,
{
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if x.numer().is_zero() {
        return Ok(Valuation::Zero { prime: q });
    }
    let qt = T::from_u64(q).ok_or_else(|| Error::InvalidArgument(format!("prime {q} too large for scalar")))?;
    let exponent = multiplicity(x.numer(), &qt) - multiplicity(x.denom(), &qt);
    Ok(Valuation::Finite { prime: q, exponent })
}

/// Height on `Q`: `max(|num|, den)` for `x = num/den` in lowest terms.
pub fn height_q<T>(x: &Ratio<T>) -> T
where
    T: Integer + Signed + Clone,
{
    let n = x.numer().abs();
    let d = x.denom().abs();
    if n > d {
        n
    } else {
        d
    }
}

/// Wrapper that renders a rational in canonical `p/q` form.
pub struct Canonical<'a>(pub &'a Rational);

impl fmt::Display for Canonical<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Serde adapter writing rationals as canonical `p/q` text.
pub mod serde_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{canonical, parse_rational};
    use crate::Rational;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&canonical(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(canonical(&normalize(2, 4).unwrap()), "1/2");
        assert_eq!(canonical(&normalize(3, -3).unwrap()), "-1/1");
        assert_eq!(canonical(&normalize(0, 7).unwrap()), "0/1");
        assert_eq!(normalize(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational(" 5 ").unwrap(), int(5));
        assert_eq!(parse_rational("+7/1").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/-").is_err());
    }

    #[test]
    fn valuation_examples() {
        let v = valuation(&frac(1, 3), 3).unwrap();
        assert_eq!(v.exponent(), Some(-1));
        assert_eq!(v.multiplicative_value(), Some(int(3)));
        assert!(v.exceeds_one());

        let v = valuation(&int(10), 5).unwrap();
        assert_eq!(v.exponent(), Some(1));
        assert_eq!(v.multiplicative_value(), Some(frac(1, 5)));

        let v = valuation(&frac(-23, 27), 3).unwrap();
        assert_eq!(v.exponent(), Some(-3));
        assert_eq!(v.multiplicative_value(), Some(int(27)));

        assert_eq!(valuation(&int(0), 7).unwrap(), Valuation::Zero { prime: 7 });
        assert_eq!(valuation(&int(0), 7).unwrap().multiplicative_value(), None);
        assert_eq!(valuation(&int(4), 4), Err(Error::NotPrime(4)));
        assert_eq!(valuation(&int(4), 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn valuation_generic_over_machine_ints() {
        let x = Ratio::new(50i64, 3);
        assert_eq!(valuation(&x, 5).unwrap().exponent(), Some(2));
        assert_eq!(height_q(&Ratio::new(-7i64, 2)), 7);
    }

    #[test]
    fn height_examples() {
        assert_eq!(height_q(&int(0)), BigInt::from(1));
        assert_eq!(height_q(&frac(2, 3)), BigInt::from(3));
        assert_eq!(height_q(&frac(-7, 2)), BigInt::from(7));
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        (-5000i64..5000, 1i64..5000)
            .prop_filter("nonzero", |(n, _)| *n != 0)
            .prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #[test]
        fn valuation_is_additive(x in nonzero_rational(), y in nonzero_rational(),
                                 q in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
            let e = |r: &Rational| valuation(r, q).unwrap().exponent().unwrap();
            prop_assert_eq!(e(&(&x * &y)), e(&x) + e(&y));
        }

        #[test]
        fn text_round_trip(x in nonzero_rational()) {
            prop_assert_eq!(parse_rational(&canonical(&x)).unwrap(), x.clone());
            prop_assert_eq!(parse_rational(&compact(&x)).unwrap(), x);
        }
    }
}
