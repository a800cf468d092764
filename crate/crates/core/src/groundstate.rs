//! Ground state from raw potential coefficients by the degree-one
//! (Laurent-)polynomial ansatz for `w0`.
//!
//! First category: `V = λ₂y² + λ₁y + λ₀`, `P = α ± αy²`, `w = b₀ + b₁y`.
//! Second category: `V = λ₂y² + μ₂/y² + λ₀`, `P = α ± αy²`,
//! `w = b₁y + b₋₁/y`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::families::{Branch, FamilyInstance};
use crate::ratfun::{rat, rational_to_f64, rational_to_wire, GaussRational, Poly, Rational, RationalFunction};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroundError {
    #[error("negative discriminant {0} under the square root")]
    NegativeDiscriminant(f64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// A real number that is exact when the algebra allows it.
#[derive(Debug, Clone, PartialEq)]
pub enum Real {
    Exact(Rational),
    Approx(f64),
}

impl Real {
    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(r) => rational_to_f64(r),
            Real::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Real::Exact(r) => Some(r),
            Real::Approx(_) => None,
        }
    }

    fn zip(
        &self,
        other: &Real,
        exact: impl FnOnce(&Rational, &Rational) -> Rational,
        approx: impl FnOnce(f64, f64) -> f64,
    ) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(exact(a, b)),
            _ => Real::Approx(approx(self.to_f64(), other.to_f64())),
        }
    }

    fn add(&self, o: &Real) -> Real {
        self.zip(o, |a, b| a + b, |a, b| a + b)
    }
    fn sub(&self, o: &Real) -> Real {
        self.zip(o, |a, b| a - b, |a, b| a - b)
    }
    fn mul(&self, o: &Real) -> Real {
        self.zip(o, |a, b| a * b, |a, b| a * b)
    }
    fn div(&self, o: &Real) -> Real {
        self.zip(o, |a, b| a / b, |a, b| a / b)
    }
    fn neg(&self) -> Real {
        match self {
            Real::Exact(r) => Real::Exact(-r),
            Real::Approx(x) => Real::Approx(-x),
        }
    }
}

impl From<Rational> for Real {
    fn from(r: Rational) -> Self {
        Real::Exact(r)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(r) => write!(f, "{}", rational_to_wire(r)),
            Real::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Real {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Real::Exact(r) => s.serialize_str(&rational_to_wire(r)),
            Real::Approx(x) => s.serialize_f64(*x),
        }
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn sqrt_rational(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let isqrt = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(Rational::new(isqrt(r.numer())?, isqrt(r.denom())?))
}

fn sqrt_real(r: &Rational) -> Result<Real, GroundError> {
    if r.is_negative() {
        return Err(GroundError::NegativeDiscriminant(rational_to_f64(r)));
    }
    Ok(match sqrt_rational(r) {
        Some(s) => Real::Exact(s),
        None => Real::Approx(rational_to_f64(r).sqrt()),
    })
}

/// `β±(λ) = ±α/2 + √((α/2)² + λ)`.
pub fn beta(lambda: &Rational, alpha: &Rational, branch: Branch) -> Result<Real, GroundError> {
    let half = alpha / rat(2);
    let root = sqrt_real(&(&half * &half + lambda))?;
    let signed_half = match branch {
        Branch::Plus => half,
        Branch::Minus => -half,
    };
    Ok(Real::Exact(signed_half).add(&root))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FirstCategoryInput {
    pub lambda2: Rational,
    pub lambda1: Rational,
    pub lambda0: Rational,
    pub alpha: Rational,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecondCategoryInput {
    pub lambda2: Rational,
    pub mu2: Rational,
    pub lambda0: Rational,
    pub alpha: Rational,
    pub branch: Branch,
}

/// `P(y)` for the cases where `β±` does not apply.
#[derive(Debug, Clone, PartialEq)]
pub enum DegenerateP {
    /// `P = p₀`
    Constant(Rational),
    /// `P = p₁·y`
    Linear(Rational),
    /// `P = p₂·y²`
    Quadratic(Rational),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroundSolution {
    pub b0: Real,
    pub b1: Real,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_minus1: Option<Real>,
    pub e0: Real,
    pub exact: bool,
}

impl GroundSolution {
    fn new(b0: Real, b1: Real, b_minus1: Option<Real>, e0: Real) -> Self {
        let exact = b0.is_exact() && b1.is_exact() && e0.is_exact() && b_minus1.as_ref().map_or(true, Real::is_exact);
        Self {
            b0,
            b1,
            b_minus1,
            e0,
            exact,
        }
    }

    /// `w0(y)` when all coefficients are exact.
    pub fn w0(&self) -> Option<RationalFunction> {
        let g = |r: &Real| r.exact().map(|q| GaussRational::real(q.clone()));
        let bm = match &self.b_minus1 {
            Some(b) => g(b)?,
            None => GaussRational::zero(),
        };
        let num = Poly::new(vec![bm, g(&self.b0)?, g(&self.b1)?]);
        RationalFunction::new(num, Poly::y()).ok()
    }

    /// Numeric `w0(y)`.
    pub fn w0_at(&self, y: f64) -> f64 {
        let bm = self.b_minus1.as_ref().map_or(0.0, Real::to_f64);
        self.b0.to_f64() + self.b1.to_f64() * y + bm / y
    }
}

fn check_alpha(alpha: &Rational) -> Result<(), GroundError> {
    if alpha.is_zero() {
        return Err(GroundError::InvalidInput(
            "alpha must be nonzero; use the degenerate solver for P without a y² term".into(),
        ));
    }
    Ok(())
}

fn branch_sign(b: Branch) -> Rational {
    match b {
        Branch::Plus => rat(1),
        Branch::Minus => rat(-1),
    }
}

/// First category: `b₁ = β±(λ₂)`, `b₀ = λ₁/(2b₁)`, `E₀ = λ₀ + αb₁ - b₀²`.
pub fn solve_first(input: &FirstCategoryInput) -> Result<GroundSolution, GroundError> {
    check_alpha(&input.alpha)?;
    let b1 = beta(&input.lambda2, &input.alpha, input.branch)?;
    if b1.to_f64() == 0.0 {
        return Err(GroundError::InvalidInput("degenerate ansatz: b1 = 0".into()));
    }
    let b0 = Real::Exact(input.lambda1.clone()).div(&Real::Exact(rat(2)).mul(&b1));
    let e0 = Real::Exact(input.lambda0.clone())
        .add(&Real::Exact(input.alpha.clone()).mul(&b1))
        .sub(&b0.mul(&b0));
    Ok(GroundSolution::new(b0, b1, None, e0))
}

/// Second category: `b₀ = 0`, `b₁ = β±(λ₂)`, `b₋₁ = -β₊(μ₂)`,
/// `E₀ = λ₀ + α(β±(λ₂) ± β₊(μ₂)) + 2β±(λ₂)β₊(μ₂)`.
pub fn solve_second(input: &SecondCategoryInput) -> Result<GroundSolution, GroundError> {
    check_alpha(&input.alpha)?;
    let bl = beta(&input.lambda2, &input.alpha, input.branch)?;
    let bm = beta(&input.mu2, &input.alpha, Branch::Plus)?;
    let s = Real::Exact(branch_sign(input.branch));
    let alpha = Real::Exact(input.alpha.clone());
    let e0 = Real::Exact(input.lambda0.clone())
        .add(&alpha.mul(&bl.add(&s.mul(&bm))))
        .add(&Real::Exact(rat(2)).mul(&bl).mul(&bm));
    Ok(GroundSolution::new(Real::Exact(Rational::zero()), bl, Some(bm.neg()), e0))
}

/// Ground state when `P` is a monomial. `b₁` takes the sign of `P` on the
/// physical domain (`y > 0` for the linear and quadratic cases), and `μ₂` is
/// only meaningful for constant `P`.
pub fn solve_degenerate(
    p: &DegenerateP,
    lambda2: &Rational,
    lambda1: &Rational,
    lambda0: &Rational,
    mu2: Option<&Rational>,
) -> Result<GroundSolution, GroundError> {
    let two = Real::Exact(rat(2));
    let l1 = Real::Exact(lambda1.clone());
    let l0 = Real::Exact(lambda0.clone());
    match p {
        DegenerateP::Constant(p0) => {
            if !p0.is_positive() {
                return Err(GroundError::InvalidInput("constant P must be positive".into()));
            }
            let b1 = sqrt_real(lambda2)?;
            let p0r = Real::Exact(p0.clone());
            match mu2 {
                None => {
                    let b0 = l1.div(&two.mul(&b1));
                    let e0 = l0.add(&p0r.mul(&b1)).sub(&b0.mul(&b0));
                    Ok(GroundSolution::new(b0, b1, None, e0))
                }
                Some(mu2) => {
                    if !lambda1.is_zero() {
                        return Err(GroundError::InvalidInput(
                            "the isotonic ansatz has no linear term".into(),
                        ));
                    }
                    let bm = beta(mu2, p0, Branch::Plus)?.neg();
                    let e0 = l0.add(&p0r.mul(&b1)).sub(&two.mul(&b1).mul(&bm));
                    Ok(GroundSolution::new(Real::Exact(Rational::zero()), b1, Some(bm), e0))
                }
            }
        }
        DegenerateP::Linear(p1) => {
            if p1.is_zero() {
                return Err(GroundError::InvalidInput("P must not vanish".into()));
            }
            let root = sqrt_real(lambda2)?;
            let b1 = if p1.is_negative() { root.neg() } else { root };
            let b0 = l1.add(&Real::Exact(p1.clone()).mul(&b1)).div(&two.mul(&b1));
            let e0 = l0.sub(&b0.mul(&b0));
            Ok(GroundSolution::new(b0, b1, None, e0))
        }
        DegenerateP::Quadratic(p2) => {
            if p2.is_zero() {
                return Err(GroundError::InvalidInput("P must not vanish".into()));
            }
            // b₁² - p₂b₁ = λ₂
            let half = p2 / rat(2);
            let root = sqrt_real(&(&half * &half + lambda2))?;
            let b1 = if p2.is_negative() {
                Real::Exact(half).sub(&root)
            } else {
                Real::Exact(half).add(&root)
            };
            let b0 = l1.div(&two.mul(&b1));
            let e0 = l0.sub(&b0.mul(&b0));
            Ok(GroundSolution::new(b0, b1, None, e0))
        }
    }
}

/// Coefficients of `V = λ₂y² + λ₁y + λ₀ + μ₂/y²`.
#[derive(Debug, Clone, PartialEq)]
pub struct RawCoefficients {
    pub lambda2: Rational,
    pub lambda1: Rational,
    pub lambda0: Rational,
    pub mu2: Rational,
}

/// Reads the raw coefficients off an instance with real parameters.
pub fn raw_coefficients(inst: &FamilyInstance) -> Result<RawCoefficients, GroundError> {
    let v = inst.potential();
    let den = v.denom();
    let k = den.degree().unwrap_or(0);
    if den != &Poly::monomial(GaussRational::from_integer(1), k) || k > 2 {
        return Err(GroundError::InvalidInput(format!("potential {v} is not of the form λ₂y² + λ₁y + λ₀ + μ₂/y²")));
    }
    // shift the numerator so index j holds the coefficient of y^(j-2)
    let coeff = |j: i64| -> Result<Rational, GroundError> {
        let idx = j + k as i64;
        let c = if idx < 0 { GaussRational::zero() } else { v.numer().coeff(idx as usize) };
        c.to_real().ok_or_else(|| GroundError::InvalidInput(format!("potential {v} has a complex coefficient; the ansatz solver takes real coefficients only")))
    };
    if v.numer().degree().unwrap_or(0) > k + 2 || !coeff(-1)?.is_zero() {
        return Err(GroundError::InvalidInput(format!("potential {v} has unsupported terms")));
    }
    Ok(RawCoefficients {
        lambda2: coeff(2)?,
        lambda1: coeff(1)?,
        lambda0: coeff(0)?,
        mu2: coeff(-2)?,
    })
}

/// Dispatches an instance's raw coefficients to the matching solver.
pub fn solve_instance(inst: &FamilyInstance) -> Result<GroundSolution, GroundError> {
    let raw = raw_coefficients(inst)?;
    let p = inst.p();
    let c = |k: usize| {
        p.coeff(k)
            .to_real()
            .ok_or_else(|| GroundError::InvalidInput("complex P".into()))
    };
    let (p0, p1, p2) = (c(0)?, c(1)?, c(2)?);
    let second = !raw.mu2.is_zero() || !inst.category().is_harmonic_type();
    match (p0.is_zero(), p1.is_zero(), p2.is_zero()) {
        (false, true, true) => solve_degenerate(
            &DegenerateP::Constant(p0),
            &raw.lambda2,
            &raw.lambda1,
            &raw.lambda0,
            second.then_some(&raw.mu2),
        ),
        (true, false, true) => solve_degenerate(&DegenerateP::Linear(p1), &raw.lambda2, &raw.lambda1, &raw.lambda0, None),
        (true, true, false) => solve_degenerate(&DegenerateP::Quadratic(p2), &raw.lambda2, &raw.lambda1, &raw.lambda0, None),
        (false, true, false) => {
            // P = α ± αy² with α = p₀
            let branch = if (&p2 / &p0).is_positive() { Branch::Plus } else { Branch::Minus };
            if (&p2).abs() != (&p0).abs() {
                return Err(GroundError::InvalidInput(format!("P = {p} is not of the form α ± αy²")));
            }
            if second {
                solve_second(&SecondCategoryInput {
                    lambda2: raw.lambda2,
                    mu2: raw.mu2,
                    lambda0: raw.lambda0,
                    alpha: p0,
                    branch,
                })
            } else {
                solve_first(&FirstCategoryInput {
                    lambda2: raw.lambda2,
                    lambda1: raw.lambda1,
                    lambda0: raw.lambda0,
                    alpha: p0,
                    branch,
                })
            }
        }
        _ => Err(GroundError::InvalidInput(format!("unsupported P = {p}"))),
    }
}

/// `-P·w' + w² - (V - E)`, the Riccati residual of an arbitrary ansatz.
pub fn ansatz_residual(
    p: &Poly,
    w: &RationalFunction,
    v: &RationalFunction,
    e: &Rational,
) -> RationalFunction {
    let pf = RationalFunction::from_poly(p.clone());
    let shifted = v - &RationalFunction::constant(GaussRational::real(e.clone()));
    &(&(w * w) - &(&pf * &w.derivative())) - &shifted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{instantiate, Family, Params};
    use crate::ratfun::ratio;

    fn close(a: &Real, b: f64) -> bool {
        (a.to_f64() - b).abs() < 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn beta_examples() {
        let b = beta(&rat(2), &rat(2), Branch::Plus).unwrap();
        assert!(!b.is_exact());
        assert!(close(&b, 1.0 + 3f64.sqrt()));
        assert_eq!(beta(&rat(0), &rat(2), Branch::Minus).unwrap(), Real::Exact(rat(0)));
        // λ₂ = a(a - α) inverts to a for a > α/2
        let (a, al) = (ratio(7, 3), ratio(1, 2));
        let l2 = &a * (&a - &al);
        assert_eq!(beta(&l2, &al, Branch::Plus).unwrap(), Real::Exact(a));
        assert!(matches!(
            beta(&rat(-5), &rat(2), Branch::Plus),
            Err(GroundError::NegativeDiscriminant(_))
        ));
    }

    #[test]
    fn first_category_example() {
        let s = solve_first(&FirstCategoryInput {
            lambda2: rat(2),
            lambda1: rat(0),
            lambda0: rat(0),
            alpha: rat(2),
            branch: Branch::Plus,
        })
        .unwrap();
        assert!(close(&s.b1, 1.0 + 3f64.sqrt()));
        assert!(close(&s.b0, 0.0));
        assert!(close(&s.e0, 2.0 * (1.0 + 3f64.sqrt())));
        assert!(!s.exact);
    }

    #[test]
    fn degenerate_paths_reproduce_the_exceptional_families() {
        // harmonic: λ₂ = ω²/4, λ₀ = -ω/2
        let w = ratio(5, 2);
        let s = solve_degenerate(&DegenerateP::Constant(rat(1)), &(&w * &w / rat(4)), &rat(0), &(-&w / rat(2)), None).unwrap();
        assert_eq!(s.b1, Real::Exact(&w / rat(2)));
        assert_eq!(s.e0, Real::Exact(rat(0)));
        // isotonic: b₋₁ = -(l+1)
        let l = ratio(3, 2);
        let s = solve_degenerate(
            &DegenerateP::Constant(rat(1)),
            &(&w * &w / rat(4)),
            &rat(0),
            &(-&w * (&l + ratio(3, 2))),
            Some(&(&l * (&l + rat(1)))),
        )
        .unwrap();
        assert_eq!(s.b_minus1, Some(Real::Exact(-(&l + rat(1)))));
        assert_eq!(s.e0, Real::Exact(rat(0)));
    }

    #[test]
    fn poschl_teller_2_inversion() {
        // λ₂ = A(A + α) = 6, μ₂ = B(B - α) = 0 for A = 2, B = 1, α = 1
        let s = solve_second(&SecondCategoryInput {
            lambda2: rat(6),
            mu2: rat(0),
            lambda0: rat(0),
            alpha: rat(1),
            branch: Branch::Minus,
        })
        .unwrap();
        assert_eq!(s.b1, Real::Exact(rat(2)));
        assert_eq!(s.b_minus1, Some(Real::Exact(rat(-1))));
        assert_eq!(s.b0, Real::Exact(rat(0)));
    }

    #[test]
    fn instances_round_trip() {
        let pr = |pairs: &[(&str, Rational)]| Params::from_pairs(pairs.iter().cloned());
        let cases = [
            (Family::Harmonic, pr(&[("omega", rat(3))])),
            (Family::Isotonic, pr(&[("omega", rat(2)), ("l", rat(2))])),
            (Family::Kepler, pr(&[("gamma", rat(3)), ("l", rat(1))])),
            (Family::Morse, pr(&[("A", rat(3)), ("B", rat(2)), ("alpha", rat(1))])),
            (Family::RosenMorse1, pr(&[("A", rat(2)), ("B", rat(1)), ("alpha", rat(1))])),
            (Family::RosenMorse2, pr(&[("A", rat(3)), ("B", rat(1)), ("alpha", rat(1))])),
            (Family::Eckart, pr(&[("A", rat(2)), ("B", rat(10)), ("alpha", rat(1))])),
            (Family::PoschlTeller, pr(&[("A", rat(2)), ("B", rat(4)), ("alpha", rat(1))])),
            (Family::PoschlTeller1, pr(&[("A", rat(2)), ("B", rat(3)), ("alpha", rat(1))])),
            (Family::PoschlTeller2, pr(&[("A", rat(4)), ("B", rat(1)), ("alpha", rat(1))])),
            (Family::Scarf1, pr(&[("A", rat(3)), ("B", rat(1)), ("alpha", rat(1))])),
        ];
        for (f, p) in cases {
            let inst = instantiate(f, &p).unwrap();
            let s = solve_instance(&inst).unwrap_or_else(|e| panic!("{f}: {e}"));
            assert!(s.exact, "{f}");
            assert_eq!(s.e0, Real::Exact(rat(0)), "{f}");
            assert_eq!(&s.w0().unwrap(), inst.w0(), "{f}");
        }
    }

    #[test]
    fn higher_degree_ansatz_fails() {
        let inst = instantiate(Family::Harmonic, &Params::from_pairs([("omega", rat(2))])).unwrap();
        let w = RationalFunction::from_poly(Poly::from_i64(&[0, 1, 0, 1]));
        assert!(!ansatz_residual(inst.p(), &w, inst.potential(), &rat(0)).is_zero());
        assert!(ansatz_residual(inst.p(), inst.w0(), inst.potential(), &rat(0)).is_zero());
    }
}
