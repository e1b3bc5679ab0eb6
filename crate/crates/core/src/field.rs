//! Field descriptors: `Q` or a real quadratic field `Q(sqrt d)`.

use std::fmt;
use std::str::FromStr;

use crate::arith::is_squarefree;
use crate::{Error, Result};

/// A real quadratic field `Q(sqrt d)` with `d >= 2` squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadField {
    d: u64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d < 2 || !is_squarefree(d as u64) {
            return Err(Error::InvalidField(format!(
                "d = {d} must be a squarefree integer >= 2"
            )));
        }
        Ok(QuadField { d: d as u64 })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn d_i64(&self) -> i64 {
        self.d as i64
    }
}

/// The ground field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDesc {
    Rational,
    Quad(QuadField),
}

impl FieldDesc {
    pub fn quad(d: i64) -> Result<Self> {
        QuadField::new(d).map(FieldDesc::Quad)
    }

    /// `[K : Q]`.
    pub fn degree(&self) -> u32 {
        match self {
            FieldDesc::Rational => 1,
            FieldDesc::Quad(_) => 2,
        }
    }

    pub fn quad_field(&self) -> Option<QuadField> {
        match self {
            FieldDesc::Rational => None,
            FieldDesc::Quad(k) => Some(*k),
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rational => write!(f, "Q"),
            FieldDesc::Quad(k) => write!(f, "Q(sqrt {})", k.d),
        }
    }
}

impl FromStr for FieldDesc {
    type Err = Error;

    /// Accepts `Q`, `Q(sqrt d)`, `Q(sqrt(d))`, `Q(sqrt d)` with any spacing,
    /// and `Q(√d)`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "Q" {
            return Ok(FieldDesc::Rational);
        }
        let bad = || Error::InvalidField(format!("cannot parse field {s:?}"));
        let inner = compact
            .strip_prefix("Q(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let radicand = if let Some(r) = inner.strip_prefix("sqrt") {
            r.strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .unwrap_or(r)
        } else if let Some(r) = inner.strip_prefix('√') {
            r
        } else {
            return Err(bad());
        };
        let d: i64 = radicand.parse().map_err(|_| bad())?;
        FieldDesc::quad(d)
    }
}

impl serde::Serialize for FieldDesc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for FieldDesc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!("Q".parse::<FieldDesc>().unwrap(), FieldDesc::Rational);
        let k: FieldDesc = "Q(sqrt 2)".parse().unwrap();
        assert_eq!(k, FieldDesc::quad(2).unwrap());
        assert_eq!(k.to_string(), "Q(sqrt 2)");
        assert_eq!("Q(sqrt(5))".parse::<FieldDesc>().unwrap().to_string(), "Q(sqrt 5)");
        assert_eq!("Q(√13)".parse::<FieldDesc>().unwrap().degree(), 2);
    }

    #[test]
    fn rejects_bad_radicands() {
        for s in ["Q(sqrt 4)", "Q(sqrt 1)", "Q(sqrt -3)", "Q(sqrt 0)", "R", "Q(sqrt x)"] {
            assert!(s.parse::<FieldDesc>().is_err(), "{s}");
        }
    }
}
