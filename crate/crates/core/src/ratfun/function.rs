use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::roots::complex_roots;
use super::{GaussRational, Poly, RatfunError};

/// Minimum distance to a denominator root below which numeric evaluation
/// reports a pole instead of a value.
pub const POLE_GUARD: f64 = 1e-9;

/// Reduced quotient `num/den` of polynomials in `y`.
///
/// Canonical: `gcd(num, den) = 1`, `den` monic, and zero is `0/1`. Two
/// values are mathematically equal iff they compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self, RatfunError> {
        if den.is_zero() {
            return Err(RatfunError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.coeff(0).inv().expect("nonzero constant");
            return Self {
                num: num.scale(&inv),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den).expect("den is nonzero");
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        Self::normalize_lc(num, den)
    }

    /// Makes `den` monic; assumes the pair is already coprime.
    fn normalize_lc(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading().expect("nonzero").clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn y() -> Self {
        Self::from_poly(Poly::y())
    }

    /// `1/y^k`.
    pub fn inverse_power(k: usize) -> Self {
        Self {
            num: Poly::one(),
            den: Poly::monomial(GaussRational::one(), k),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if this function is constant.
    pub fn as_constant(&self) -> Option<GaussRational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn is_real(&self) -> bool {
        self.num.is_real() && self.den.is_real()
    }

    pub fn conj(&self) -> Self {
        Self {
            num: self.num.conj(),
            den: self.den.conj(),
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self {
            num: self.num.scale(c),
            den: if c.is_zero() { Poly::one() } else { self.den.clone() },
        }
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, RatfunError> {
        if rhs.is_zero() {
            return Err(RatfunError::DivisionByZero);
        }
        Ok(self * &rhs.recip_unchecked())
    }

    pub fn recip(&self) -> Result<Self, RatfunError> {
        if self.is_zero() {
            return Err(RatfunError::DivisionByZero);
        }
        Ok(self.recip_unchecked())
    }

    fn recip_unchecked(&self) -> Self {
        Self::normalize_lc(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        Self {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        // (n/d)' = (n'd - nd')/d²; with g = gcd(d, d') the result reduces to
        // (n'·(d/g) - n·(d'/g)) / (d·(d/g)) up to a gcd with g.
        let dp = self.den.derivative();
        let g = self.den.gcd(&dp).expect("den nonzero");
        let d_g = self.den.div_exact(&g).expect("gcd divides");
        let dp_g = dp.div_exact(&g).expect("gcd divides");
        let num = &(&self.num.derivative() * &d_g) - &(&self.num * &dp_g);
        let den = &self.den * &d_g;
        Self::reduce(num, den)
    }

    /// Composition `self(g(y))`.
    pub fn compose(&self, g: &RationalFunction) -> Self {
        let m = self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0));
        let homogenize = |p: &Poly| -> Poly {
            let mut acc = Poly::zero();
            let mut npow = Poly::one();
            for (k, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let term = &npow * &g.den.pow((m - k) as u32);
                    acc = &acc + &term.scale(c);
                }
                npow = &npow * &g.num;
            }
            acc
        };
        let num = homogenize(&self.num);
        let den = homogenize(&self.den);
        Self::new(num, den).expect("composition with a nonconstant-denominator value is defined")
    }

    /// Numeric evaluation with the [`POLE_GUARD`] radius.
    pub fn eval(&self, y: Complex64) -> Result<Complex64, RatfunError> {
        let d = self.den.eval(y);
        let Some(deg) = self.den.degree().filter(|&k| k > 0) else {
            return Ok(self.num.eval(y) / d);
        };
        // |den(y)| = Π|y - r_i| ≤ dist·(|y| + B)^(deg-1) with B a bound on the
        // root moduli, so a large enough |den(y)| certifies dist > POLE_GUARD.
        let bound = 1.0
            + self.den.coeffs()[..deg]
                .iter()
                .map(|c| c.to_complex64().norm())
                .fold(0.0, f64::max);
        let scale = (y.norm() + bound).powi(deg as i32 - 1);
        if d.norm() > POLE_GUARD * scale {
            return Ok(self.num.eval(y) / d);
        }
        let distance = complex_roots(&self.den)
            .iter()
            .map(|r| (r - y).norm())
            .fold(f64::INFINITY, f64::min);
        if distance < POLE_GUARD {
            Err(RatfunError::Pole { distance })
        } else {
            Ok(self.num.eval(y) / d)
        }
    }

    pub fn eval_real(&self, y: f64) -> Result<f64, RatfunError> {
        self.eval(Complex64::new(y, 0.0)).map(|z| z.re)
    }

    /// Exact evaluation at a point that is not a pole.
    pub fn eval_exact(&self, y: &GaussRational) -> Result<GaussRational, RatfunError> {
        let d = self.den.eval_exact(y);
        if d.is_zero() {
            return Err(RatfunError::Pole { distance: 0.0 });
        }
        Ok(&self.num.eval_exact(y) / &d)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl From<GaussRational> for RationalFunction {
    fn from(c: GaussRational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): only g can share factors with the sum
        let g = self.den.gcd(&rhs.den).expect("nonzero");
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RationalFunction::normalize_lc(num, &self.den * &rhs.den);
        }
        let b_g = self.den.div_exact(&g).expect("gcd divides");
        let d_g = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d_g) + &(&rhs.num * &b_g);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let h = num.gcd(&g).expect("nonzero");
        let (num, den) = if h.is_one() {
            (num, &b_g * &rhs.den)
        } else {
            (
                num.div_exact(&h).expect("gcd divides"),
                (&b_g * &rhs.den).div_exact(&h).expect("gcd divides"),
            )
        };
        RationalFunction::normalize_lc(num, den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // cross-cancel: a/b · c/d with gcd(a, d) and gcd(c, b)
        let cancel = |p: &Poly, q: &Poly| -> (Poly, Poly) {
            if q.is_one() || p.is_constant() {
                return (p.clone(), q.clone());
            }
            let g = p.gcd(q).expect("nonzero");
            if g.is_one() {
                (p.clone(), q.clone())
            } else {
                (
                    p.div_exact(&g).expect("gcd divides"),
                    q.div_exact(&g).expect("gcd divides"),
                )
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        RationalFunction::normalize_lc(&a * &c, &b * &d)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction { (&self).$m(&rhs) }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction { (&self).$m(rhs) }
        }
        impl $tr<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Serialize for GaussRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_wire())
    }
}

impl<'de> Deserialize<'de> for GaussRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vec::<GaussRational>::deserialize(d).map(Poly::new)
    }
}

#[derive(Serialize, Deserialize)]
struct WireFunction {
    num: Poly,
    den: Poly,
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WireFunction {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = WireFunction::deserialize(d)?;
        RationalFunction::new(w.num, w.den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let sum = &rf(&[1], &[0, 1]) + &RationalFunction::y();
        assert_eq!(sum, rf(&[1, 0, 1], &[0, 1]));
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), rf(&[1, 1], &[1]));
        let w = RationalFunction::y();
        assert_eq!(&w + &w, rf(&[0, 2], &[1]));
        assert!(w.try_div(&RationalFunction::zero()).is_err());
    }

    #[test]
    fn canonical_form() {
        let f = rf(&[2, 4], &[6, 2]);
        assert!(f.denom().is_monic());
        assert_eq!(f, rf(&[1, 2], &[3, 1]));
        assert_eq!(rf(&[0], &[5, 1]), RationalFunction::zero());
        assert!(RationalFunction::new(p(&[1]), Poly::zero()).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(rf(&[0, 0, 1], &[1]).derivative(), rf(&[0, 2], &[1]));
        assert_eq!(rf(&[1], &[0, 1]).derivative(), rf(&[-1], &[0, 0, 1]));
        // quotient rule: ((y²+1)/(y-1))' = (y²-2y-1)/(y-1)²
        assert_eq!(
            rf(&[1, 0, 1], &[-1, 1]).derivative(),
            rf(&[-1, -2, 1], &[1, -2, 1])
        );
        // repeated-root denominators
        let f = rf(&[1, 1], &[0, 0, 1]);
        let direct = &rf(&[-2], &[0, 0, 0, 1]) + &rf(&[-1], &[0, 0, 1]);
        assert_eq!(f.derivative(), direct);
    }

    #[test]
    fn eval_examples() {
        let sq = rf(&[0, 0, 1], &[1]);
        assert_eq!(sq.eval_real(3.0).unwrap(), 9.0);
        assert!(matches!(
            rf(&[1], &[0, 1]).eval_real(0.0),
            Err(RatfunError::Pole { .. })
        ));
        assert_eq!(rf(&[-1, 0, 2], &[1]).eval_real(0.5).unwrap(), -0.5);
        // inside the guard radius, but not at the pole
        assert!(rf(&[1], &[-1, 1]).eval_real(1.0 + 1e-10).is_err());
        assert!(rf(&[1], &[-1, 1]).eval_real(1.0 + 1e-8).is_ok());
    }

    #[test]
    fn compose_mobius() {
        // f(y) = y², g = (y+1)/(y-1) → (y+1)²/(y-1)²
        let f = rf(&[0, 0, 1], &[1]);
        let g = rf(&[1, 1], &[-1, 1]);
        assert_eq!(f.compose(&g), rf(&[1, 2, 1], &[1, -2, 1]));
        let h = rf(&[1], &[0, 1]).compose(&g);
        assert_eq!(h, rf(&[-1, 1], &[1, 1]));
    }

    #[test]
    fn serde_round_trip() {
        let f = rf(&[3, -1, 7], &[2, 0, 5]);
        let s = serde_json::to_string(&f).unwrap();
        let back: RationalFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
