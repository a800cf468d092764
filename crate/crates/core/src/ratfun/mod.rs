//! Exact polynomial and rational-function arithmetic in one variable `y`
//! over the Gaussian rationals ℚ(i).

mod function;
mod gauss;
mod partial;
mod poly;
pub mod roots;

use thiserror::Error;

pub use function::{RationalFunction, POLE_GUARD};
pub use gauss::{parse_rational, rational_to_f64, rational_to_wire, GaussRational};
pub use partial::{partial_fractions, partial_fractions_with_remainder, PartialFractionForm, PoleTerm};
pub use poly::Poly;

/// Arbitrary-precision reduced rational number.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RatfunError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("evaluation point is within {distance:e} of a pole")]
    Pole { distance: f64 },
    #[error("denominator factor {factor} has no matching known root")]
    UnknownRoot { factor: String },
    #[error("cannot parse {input:?} at position {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Serializes a rational in the exact `"p/q"` wire form.
pub fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_wire(r))
}

/// Deserializes a rational from `"p/q"`, an integer or a terminating decimal.
pub fn de_rational<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let s = <String as serde::Deserialize>::deserialize(d)?;
    parse_rational(&s).map_err(serde::de::Error::custom)
}
