use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{GaussRational, Rational, RatfunError};

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The coefficient vector never carries trailing zeros; the zero polynomial
/// is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_rationals<I: IntoIterator<Item = Rational>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(GaussRational::real).collect())
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussRational::from_integer(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `y`.
    pub fn y() -> Self {
        Self::monomial(GaussRational::one(), 1)
    }

    pub fn monomial(c: GaussRational, k: usize) -> Self {
        let mut coeffs = vec![GaussRational::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `y - r`.
    pub fn linear_factor(r: &GaussRational) -> Self {
        Self::new(vec![-r, GaussRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&GaussRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(GaussRational::is_real)
    }

    pub fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(GaussRational::conj).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussRational::from_integer(k as i64))
                .collect(),
        )
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval_exact(&self, y: &GaussRational) -> GaussRational {
        let mut acc = GaussRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * y) + c;
        }
        acc
    }

    /// Floating evaluation by Horner's rule.
    pub fn eval(&self, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c.to_complex64();
        }
        acc
    }

    pub fn eval_real(&self, y: f64) -> f64 {
        self.eval(Complex64::new(y, 0.0)).re
    }

    pub fn to_complex64(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(GaussRational::to_complex64).collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), RatfunError> {
        let dd = d.degree().ok_or(RatfunError::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lc_inv = d.coeffs[dd].inv()?;
        let monic_divisor = d.coeffs[dd].is_one();
        let mut r = self.coeffs.clone();
        let mut q = vec![GaussRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let c = if monic_divisor { top.clone() } else { top * &lc_inv };
            for (j, dc) in d.coeffs.iter().enumerate().take(dd) {
                if !dc.is_zero() {
                    let t = &c * dc;
                    r[k + j] -= &t;
                }
            }
            r[k + dd] = GaussRational::zero();
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly, RatfunError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(RatfunError::InvalidInput(format!("{d} does not divide {self}")))
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, RatfunError> {
        if self.is_zero() && other.is_zero() {
            return Err(RatfunError::InvalidInput(
                "gcd of two zero polynomials".into(),
            ));
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.monic(), other.monic())
        } else {
            (other.monic(), self.monic())
        };
        while !b.is_zero() {
            if b.is_constant() {
                return Ok(Poly::one());
            }
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a)
    }

    /// `p(y + c)`.
    pub fn taylor_shift(&self, c: &GaussRational) -> Poly {
        if c.is_zero() {
            return self.clone();
        }
        // repeated synthetic division
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for k in (i..n.saturating_sub(1)).rev() {
                let t = &a[k + 1] * c;
                a[k] += &t;
            }
        }
        Poly::new(a)
    }

    /// `p(q(y))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &GaussRational) -> usize {
        if self.is_zero() {
            return 0;
        }
        let f = Poly::linear_factor(r);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, rem) = p.div_rem(&f).expect("nonzero divisor");
            if !rem.is_zero() {
                return m;
            }
            p = q;
            m += 1;
        }
    }

    /// Substitute `y → -y`.
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Poly {
        let mut out = vec![GaussRational::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c * &GaussRational::ratio(1, k as i64 + 1));
        }
        Poly::new(out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "y")?,
                1 => write!(f, "{c}*y")?,
                _ if c.is_one() => write!(f, "y^{k}")?,
                _ => write!(f, "{c}*y^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut c = long.coeffs.clone();
        for (a, b) in c.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Poly::new(c)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut c = self.coeffs.clone();
        c.resize(n, GaussRational::zero());
        for (a, b) in c.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        Poly::new(c)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![GaussRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += &(a * b);
                }
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
