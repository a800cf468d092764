//! Exact Gaussian rationals `re + i·im` with `re, im ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Rational, RatfunError};

/// An element of ℚ(i).
///
/// Both parts are canonical `BigRational`s (positive denominator, reduced),
/// so derived equality and hashing are structural equality of the value.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(n)))
    }

    /// `p/q` as a real Gaussian rational. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::real(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn i() -> Self {
        Self {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, RatfunError> {
        if self.is_zero() {
            return Err(RatfunError::DivisionByZero);
        }
        if self.is_real() {
            return Ok(Self::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Ok(Self {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    /// Real part, if the imaginary part vanishes exactly.
    pub fn to_real(&self) -> Option<Rational> {
        self.is_real().then(|| self.re.clone())
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact wire form: `"p/q"` for reals, `"p/q+r/si"` otherwise.
    pub fn to_wire(&self) -> String {
        if self.is_real() {
            rational_to_wire(&self.re)
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            format!(
                "{}{}{}i",
                rational_to_wire(&self.re),
                sign,
                rational_to_wire(&self.im.abs())
            )
        }
    }
}

/// `"num/den"` with the denominator always present.
pub fn rational_to_wire(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // Direct conversion loses range for huge num/den; divide in f64 after
    // shifting both to a common scale.
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let nb = r.numer().bits() as i64;
            let db = r.denom().bits() as i64;
            let shift = (nb.max(db) - 900).max(0) as usize;
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
            n / d
        }
    }
}

/// Parses an exact rational from `"p/q"`, an integer, or a terminating
/// decimal such as `"-0.125"`. Errors carry the byte offset of the problem.
pub fn parse_rational(s: &str) -> Result<Rational, RatfunError> {
    let bad = |pos: usize, msg: &str| RatfunError::Parse {
        input: s.to_string(),
        position: pos,
        message: msg.to_string(),
    };
    let t = s.trim();
    let offset = s.len() - s.trim_start().len();
    if t.is_empty() {
        return Err(bad(0, "empty number"));
    }
    if let Some(slash) = t.find('/') {
        let num = parse_int(&t[..slash]).map_err(|p| bad(offset + p, "invalid numerator"))?;
        let den = parse_int(&t[slash + 1..])
            .map_err(|p| bad(offset + slash + 1 + p, "invalid denominator"))?;
        if den.is_zero() {
            return Err(bad(offset + slash + 1, "zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some(dot) = t.find('.') {
        let (int_part, frac_part) = (&t[..dot], &t[dot + 1..]);
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            let p = frac_part
                .bytes()
                .position(|b| !b.is_ascii_digit())
                .unwrap_or(0);
            return Err(bad(offset + dot + 1 + p, "invalid decimal fraction"));
        }
        let whole = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            parse_int(int_digits).map_err(|p| bad(offset + (int_part.len() - int_digits.len()) + p, "invalid integer part"))?
        };
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac: BigInt = frac_part.parse().map_err(|_| bad(offset + dot + 1, "invalid decimal fraction"))?;
        let mag = Rational::new(whole * &scale + frac, scale);
        return Ok(if negative { -mag } else { mag });
    }
    parse_int(t)
        .map(Rational::from_integer)
        .map_err(|p| bad(offset + p, "invalid integer"))
}

fn parse_int(s: &str) -> Result<BigInt, usize> {
    let digits = s.trim_start_matches(['-', '+']);
    let sign_len = s.len() - digits.len();
    if sign_len > 1 {
        return Err(1);
    }
    if digits.is_empty() {
        return Err(sign_len);
    }
    if let Some(p) = digits.bytes().position(|b| !b.is_ascii_digit()) {
        return Err(sign_len + p);
    }
    s.parse::<BigInt>().map_err(|_| 0)
}

impl FromStr for GaussRational {
    type Err = RatfunError;

    /// Accepts the wire form produced by [`GaussRational::to_wire`] as well
    /// as bare reals and pure imaginaries (`"3/2i"`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let Some(body) = t.strip_suffix('i') else {
            return parse_rational(t).map(Self::real);
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => {
                let re = parse_rational(&body[..k])?;
                let im = parse_rational(&body[k..]).map_err(|e| shift_position(e, s, k))?;
                Ok(Self::new(re, im))
            }
            None => Ok(Self::new(Rational::zero(), parse_rational(body)?)),
        }
    }
}

fn shift_position(e: RatfunError, input: &str, by: usize) -> RatfunError {
    match e {
        RatfunError::Parse {
            position, message, ..
        } => RatfunError::Parse {
            input: input.to_string(),
            position: position + by,
            message,
        },
        other => other,
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "({}-{}i)", self.re, -&self.im)
        } else {
            write!(f, "({}+{}i)", self.re, self.im)
        }
    }
}

impl From<Rational> for GaussRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl From<i64> for GaussRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        Self::real(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Add<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GaussRational::real(&self.re * &rhs.re),
            (true, false) => GaussRational {
                re: &self.re * &rhs.re,
                im: &self.re * &rhs.im,
            },
            (false, true) => GaussRational {
                re: &self.re * &rhs.re,
                im: &self.im * &rhs.re,
            },
            (false, false) => GaussRational {
                re: &self.re * &rhs.re - &self.im * &rhs.im,
                im: &self.re * &rhs.im + &self.im * &rhs.re,
            },
        }
    }
}

impl Div<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    /// Panics on division by zero; use [`GaussRational::inv`] for a checked
    /// variant.
    fn div(self, rhs: &GaussRational) -> GaussRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: GaussRational) -> GaussRational { (&self).$m(&rhs) }
        }
        impl $tr<&GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: &GaussRational) -> GaussRational { (&self).$m(rhs) }
        }
        impl $tr<GaussRational> for &GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: GaussRational) -> GaussRational { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussRational> for GaussRational {
    fn mul_assign(&mut self, rhs: &GaussRational) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussRational {
        GaussRational::new(
            Rational::new(re.0.into(), re.1.into()),
            Rational::new(im.0.into(), im.1.into()),
        )
    }

    #[test]
    fn field_inverse() {
        let z = g((3, 2), (-1, 5));
        assert_eq!(&z * &z.inv().unwrap(), GaussRational::one());
        assert!(GaussRational::zero().inv().is_err());
    }

    #[test]
    fn conjugation_is_an_involution() {
        let z = g((1, 3), (7, 4));
        assert_eq!(z.conj().conj(), z);
        assert!((&z * &z.conj()).is_real());
    }

    #[test]
    fn wire_round_trip() {
        for z in [
            g((1, 2), (0, 1)),
            g((-3, 4), (5, 6)),
            g((0, 1), (-1, 2)),
            g((7, 1), (-7, 3)),
        ] {
            let s = z.to_wire();
            assert_eq!(s.parse::<GaussRational>().unwrap(), z, "{s}");
        }
        assert_eq!(GaussRational::ratio(3, 1).to_wire(), "3/1");
    }

    #[test]
    fn parses_decimals_and_reports_positions() {
        assert_eq!(parse_rational("0.25").unwrap(), Rational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("-1.5").unwrap(), Rational::new((-3).into(), 2.into()));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_integer(7.into()));
        match parse_rational("3/x") {
            Err(RatfunError::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        match parse_rational("1.2a") {
            Err(RatfunError::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn huge_rationals_convert_to_f64() {
        let big = BigInt::from(10u32).pow(400);
        let r = Rational::new(&big * 3, big * 2);
        assert_eq!(rational_to_f64(&r), 1.5);
    }
}
