//! Exact decisions about angle m-section and bounded-height density experiments.
//!
//! The crate works over `Q` and real quadratic fields `Q(sqrt d)`. The
//! numerical core ([`poly`], [`chebyshev`], parts of [`rational`]) is generic
//! over the scalar type through `num-traits`; the aliases below fix the
//! concrete types used by the decision procedures and experiments.
//!
//! * [`chebyshev`] builds `T_m` and the companion `U_m` exactly.
//! * [`sect`] decides whether `a = cos(alpha)` is m-sectable: it is exactly
//!   when `T_{m_odd}(x) - a` has a root in `Q(a)`.
//! * [`census`] enumerates field elements of bounded height and
//!   [`density`] measures how rare m-sectable cosines are among them.

pub mod arith;
pub mod census;
pub mod chebyshev;
pub mod density;
mod error;
pub mod field;
pub mod fit;
pub mod places;
pub mod poly;
pub mod quad_roots;
pub mod quadratic;
pub mod rational;
pub mod real_roots;
pub mod roots;
pub mod scalar;
pub mod sect;
pub mod shard;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldDesc, QuadField};
pub use quadratic::{HeightValue, QuadElem};

use num_bigint::BigInt;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
/// Dense polynomial with integer coefficients.
pub type IntPoly = poly::Poly<BigInt>;
/// Dense polynomial over `Q`.
pub type RatPoly = poly::Poly<Rational>;
/// Dense polynomial over `Q(sqrt d)`.
pub type QuadPoly = poly::Poly<QuadElem>;
/// Polynomial with machine-float coefficients, for numeric cross-checks.
pub type FloatPoly = poly::Poly<f64>;
