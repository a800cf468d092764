//! Closed-form eigenfunctions `ψ_n(x) = exp(-∫ w_n dx)`.
//!
//! In the variable `y` the integrand is `w_n(y)/P(y)`. Its partial fractions
//! over the roots of `P` (and the pole of `w0` at `y = 0`) give power factors
//! and exponentials; what is left over is exactly `-Q'/Q` for the node
//! polynomial `Q`, which contributes the factor `Q(y)` itself:
//!
//! `ψ_n = N · Q(y) · Π (y - r)^{e_r} · exp(-(I(y) + R(y)))`
//!
//! with `I` the antiderivative of the polynomial part and `R` the
//! antiderivative of the higher-order pole terms.

mod quadrature;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::backlund::Level;
use crate::families::{ChangeOfVariable, Family, FamilyInstance, Params};
use crate::ratfun::{partial_fractions_with_remainder, GaussRational, Poly, RatfunError, RationalFunction};

pub use quadrature::{integrate, QuadratureResult};

/// Relative tolerance of the normalization and overlap integrals.
pub const QUADRATURE_TOL: f64 = 1e-10;

/// Tail cut: the window ends where `|ψ|²` has dropped below this fraction of
/// its running maximum (`|ψ| < 1e-15` relative).
const TAIL_CUT: f64 = 1e-30;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WavefunError {
    #[error(transparent)]
    Ratfun(#[from] RatfunError),
    #[error("w_n/P does not decompose over the known roots and the node block; leftover {residual}")]
    Decomposition { residual: String },
    #[error("x = {x} is outside the domain ({lo}, {hi})")]
    Domain { x: f64, lo: f64, hi: f64 },
    #[error("wavefunction is not square integrable: {0}")]
    NonIntegrable(String),
    #[error("overlap between different instances: {0} vs {1}")]
    InstanceMismatch(String, String),
    #[error("quadrature did not converge: value {value}, error estimate {error}")]
    Quadrature { value: f64, error: f64 },
}

/// `(y - root)^exponent`; a conjugate pair stands for both `root` and its
/// conjugate with the conjugate exponent.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PowerFactor {
    Real { root: GaussRational, exponent: GaussRational },
    ConjugatePair { root: GaussRational, exponent: GaussRational },
}

impl PowerFactor {
    pub fn root(&self) -> &GaussRational {
        match self {
            PowerFactor::Real { root, .. } | PowerFactor::ConjugatePair { root, .. } => root,
        }
    }

    pub fn exponent(&self) -> &GaussRational {
        match self {
            PowerFactor::Real { exponent, .. } | PowerFactor::ConjugatePair { exponent, .. } => exponent,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Numeric {
    node: Vec<Complex64>,
    poly: Vec<Complex64>,
    rat_num: Vec<Complex64>,
    rat_den: Vec<Complex64>,
    factors: Vec<(Complex64, Complex64, bool)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormWavefunction {
    pub family: Family,
    pub params: Params,
    pub n: usize,
    pub node_poly: Poly,
    pub power_factors: Vec<PowerFactor>,
    pub exp_rational: RationalFunction,
    pub exp_poly_integral: Poly,
    pub cov: ChangeOfVariable,
    pub normalization: f64,
    /// Constant phase removed from complex-chart evaluations.
    #[serde(skip)]
    phase: Complex64,
    #[serde(skip)]
    numeric: Numeric,
}

fn horner(c: &[Complex64], y: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, &k| acc * y + k)
}

fn decomposition_error(residual: &RationalFunction) -> WavefunError {
    WavefunError::Decomposition {
        residual: residual.to_string(),
    }
}

/// Builds `ψ_n` for a level of `inst`.
pub fn assemble(level: &Level, inst: &FamilyInstance) -> Result<ClosedFormWavefunction, WavefunError> {
    let f = level.w.try_div(&inst.p_function())?;
    let known = inst.known_roots();
    let form = partial_fractions_with_remainder(&f, &known)?;

    let q = &level.node_poly;
    let block = -RationalFunction::new(q.derivative(), q.clone())?;
    if form.remainder != block {
        return Err(decomposition_error(&(&form.remainder - &block)));
    }

    let mut power_factors = Vec::new();
    let mut exp_rational = RationalFunction::zero();
    let mut seen: Vec<&GaussRational> = Vec::new();
    for root in &known {
        if seen.contains(&root) {
            continue;
        }
        seen.push(root);
        for term in form.terms_at(root) {
            if term.power == 1 {
                let exponent = -&term.coefficient;
                if root.is_real() {
                    power_factors.push(PowerFactor::Real {
                        root: root.clone(),
                        exponent,
                    });
                } else if root.im > num_traits::Zero::zero() {
                    let partner = form
                        .terms_at(&root.conj())
                        .find(|t| t.power == 1)
                        .map(|t| -&t.coefficient);
                    if partner.as_ref() != Some(&exponent.conj()) {
                        return Err(decomposition_error(&f));
                    }
                    power_factors.push(PowerFactor::ConjugatePair {
                        root: root.clone(),
                        exponent,
                    });
                }
            } else {
                // ∫ c (y-r)^{-k} dy = c (y-r)^{1-k} / (1-k)
                let k = term.power as i64;
                let c = &term.coefficient / &GaussRational::from_integer(1 - k);
                let den = Poly::linear_factor(root).pow((k - 1) as u32);
                exp_rational = &exp_rational + &RationalFunction::new(Poly::constant(c), den)?;
            }
        }
    }
    let exp_poly_integral = form.polynomial_part.integral();

    let numeric = Numeric {
        node: q.to_complex64(),
        poly: exp_poly_integral.to_complex64(),
        rat_num: exp_rational.numer().to_complex64(),
        rat_den: exp_rational.denom().to_complex64(),
        factors: power_factors
            .iter()
            .map(|pf| {
                (
                    pf.root().to_complex64(),
                    pf.exponent().to_complex64(),
                    matches!(pf, PowerFactor::ConjugatePair { .. }),
                )
            })
            .collect(),
    };
    let mut cf = ClosedFormWavefunction {
        family: inst.family(),
        params: inst.params().clone(),
        n: level.n,
        node_poly: q.clone(),
        power_factors,
        exp_rational,
        exp_poly_integral,
        cov: inst.cov().clone(),
        normalization: 1.0,
        phase: Complex64::new(1.0, 0.0),
        numeric,
    };
    if !cf.cov.is_real() {
        cf.phase = cf.reference_phase();
    }
    Ok(cf)
}

impl ClosedFormWavefunction {
    fn complex_value(&self, x: f64) -> Complex64 {
        let num = &self.numeric;
        let y = self.cov.forward(x);
        let q = horner(&num.node, y);
        if q.norm() == 0.0 {
            return Complex64::zero();
        }
        let mut log = q.ln();
        for &(r, e, pair) in &num.factors {
            log += e * self.cov.offset(x, r).ln();
            if pair {
                log += e.conj() * self.cov.offset(x, r.conj()).ln();
            }
        }
        log -= horner(&num.poly, y) + horner(&num.rat_num, y) / horner(&num.rat_den, y);
        log.exp()
    }

    /// Unnormalized value in a real chart, accumulated in log space.
    fn real_value(&self, x: f64) -> f64 {
        let num = &self.numeric;
        let y = self.cov.forward(x);
        let q = horner(&num.node, y).re;
        if q == 0.0 {
            return 0.0;
        }
        let mut log = q.abs().ln();
        for &(r, e, pair) in &num.factors {
            let d = self.cov.offset(x, r);
            if pair {
                log += 2.0 * (e.re * d.norm().ln() - e.im * d.arg());
            } else {
                log += e.re * d.re.abs().ln();
            }
        }
        log -= horner(&num.poly, y).re + horner(&num.rat_num, y).re / horner(&num.rat_den, y).re;
        q.signum() * log.exp()
    }

    fn value_unchecked(&self, x: f64) -> f64 {
        let v = if self.cov.is_real() {
            self.real_value(x)
        } else {
            (self.complex_value(x) * self.phase.conj()).re
        };
        self.normalization * v
    }

    fn reference_phase(&self) -> Complex64 {
        let s = self.cov.length_scale();
        let best = (-80..=80)
            .map(|k| k as f64 * s / 4.0)
            .filter(|&x| self.cov.x_domain.contains(x))
            .map(|x| self.complex_value(x))
            .filter(|z| z.is_finite())
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .unwrap_or(Complex64::new(1.0, 0.0));
        if best.norm() > 0.0 {
            best / best.norm()
        } else {
            Complex64::new(1.0, 0.0)
        }
    }

    /// `ψ_n(x)`, normalization included.
    pub fn eval_psi(&self, x: f64) -> Result<f64, WavefunError> {
        let dom = self.cov.x_domain;
        if !dom.contains(x) {
            return Err(WavefunError::Domain {
                x,
                lo: dom.lo,
                hi: dom.hi,
            });
        }
        Ok(self.value_unchecked(x))
    }

    /// Imaginary part left after removing the constant phase, relative to
    /// the modulus; zero for real charts.
    pub fn imaginary_defect(&self, x: f64) -> f64 {
        if self.cov.is_real() {
            return 0.0;
        }
        let z = self.complex_value(x) * self.phase.conj();
        if z.norm() == 0.0 {
            0.0
        } else {
            z.im.abs() / z.norm()
        }
    }

    /// The finite interval outside of which `|ψ|` is negligible.
    pub fn window(&self) -> Result<(f64, f64), WavefunError> {
        let dom = self.cov.x_domain;
        let s = self.cov.length_scale();
        let x0 = match (dom.lo.is_finite(), dom.hi.is_finite()) {
            (false, false) => 0.0,
            (true, false) => dom.lo + s,
            (false, true) => dom.hi - s,
            (true, true) => 0.5 * (dom.lo + dom.hi),
        };
        let span = if dom.lo.is_finite() && dom.hi.is_finite() {
            dom.hi - dom.lo
        } else {
            s
        };
        let lo = if dom.lo.is_finite() {
            self.check_finite_end(dom.lo, 1.0, span)?;
            dom.lo
        } else {
            self.tail_extent(x0, -1.0, s)?
        };
        let hi = if dom.hi.is_finite() {
            self.check_finite_end(dom.hi, -1.0, span)?;
            dom.hi
        } else {
            self.tail_extent(x0, 1.0, s)?
        };
        Ok((lo, hi))
    }

    fn tail_extent(&self, x0: f64, dir: f64, scale: f64) -> Result<f64, WavefunError> {
        let sq = |x: f64| self.value_unchecked(x).powi(2);
        let mut peak = sq(x0);
        let mut prev = peak;
        let mut d = 0.25 * scale;
        for _ in 0..90 {
            let x = x0 + dir * d;
            let v = sq(x);
            if !v.is_finite() {
                return Err(WavefunError::NonIntegrable(format!(
                    "|psi|^2 is not finite at x = {x}"
                )));
            }
            peak = peak.max(v);
            if v <= TAIL_CUT * peak && v <= prev {
                return Ok(x);
            }
            prev = v;
            d *= 1.5;
        }
        Err(WavefunError::NonIntegrable(format!(
            "no decay toward {} from x = {x0}",
            if dir > 0.0 { "+inf" } else { "-inf" }
        )))
    }

    /// Near a finite endpoint `|ψ|²·d` must shrink with the distance `d`.
    fn check_finite_end(&self, end: f64, dir: f64, span: f64) -> Result<(), WavefunError> {
        let g = |d: f64| self.value_unchecked(end + dir * d * span).powi(2) * d;
        let (far, near) = (g(1e-6), g(1e-9));
        if far.is_finite() && near.is_finite() && (near == 0.0 || near < far) {
            Ok(())
        } else {
            Err(WavefunError::NonIntegrable(format!(
                "|psi|^2 is not integrable at the endpoint x = {end}"
            )))
        }
    }

    fn integrate_over(
        &self,
        window: (f64, f64),
        abs_tol: f64,
        f: impl Fn(f64) -> f64,
    ) -> Result<f64, WavefunError> {
        let r = integrate(f, window.0, window.1, 64, QUADRATURE_TOL, abs_tol);
        if r.converged {
            Ok(r.value)
        } else {
            Err(WavefunError::Quadrature {
                value: r.value,
                error: r.error,
            })
        }
    }

    /// `∫|ψ|² dx` with the current normalization.
    pub fn norm_squared(&self) -> Result<f64, WavefunError> {
        let w = self.window()?;
        self.integrate_over(w, 1e-300, |x| self.value_unchecked(x).powi(2))
    }

    /// Copy with `∫|ψ|² dx = 1`.
    pub fn normalize(&self) -> Result<Self, WavefunError> {
        let n2 = self.norm_squared()?;
        if !(n2.is_finite() && n2 > 0.0) {
            return Err(WavefunError::NonIntegrable(format!("norm squared {n2}")));
        }
        let mut out = self.clone();
        out.normalization = self.normalization / n2.sqrt();
        Ok(out)
    }

    /// `∫ ψ_m ψ_n dx`.
    pub fn overlap(&self, other: &Self) -> Result<f64, WavefunError> {
        if self.family != other.family || self.params != other.params {
            return Err(WavefunError::InstanceMismatch(
                format!("{} {}", self.family, self.params),
                format!("{} {}", other.family, other.params),
            ));
        }
        let (a, b) = (self.window()?, other.window()?);
        let w = (a.0.min(b.0), a.1.max(b.1));
        let f = |x: f64| self.value_unchecked(x) * other.value_unchecked(x);
        // orthogonal pairs integrate to ~0, so the tolerance is set against ∫|ψ_m ψ_n|
        let magnitude = integrate(|x| f(x).abs(), w.0, w.1, 64, 1e-6, 1e-300).value;
        self.integrate_over(w, QUADRATURE_TOL * magnitude, f)
    }

    /// Sign changes of `ψ` on `points` equally spaced samples of its window,
    /// skipping exact zeros.
    pub fn sign_changes(&self, points: usize) -> Result<usize, WavefunError> {
        let (lo, hi) = self.window()?;
        let h = (hi - lo) / (points + 1) as f64;
        let mut last = 0.0_f64;
        let mut changes = 0;
        for k in 1..=points {
            let v = self.value_unchecked(lo + h * k as f64);
            if v != 0.0 {
                if last != 0.0 && v.signum() != last.signum() {
                    changes += 1;
                }
                last = v;
            }
        }
        Ok(changes)
    }

    /// `w_n` recovered numerically as `-ψ'/ψ` by a five-point difference whose
    /// step shrinks near finite endpoints.
    pub fn log_derivative(&self, x: f64) -> Result<f64, WavefunError> {
        let dom = self.cov.x_domain;
        let local = self
            .cov
            .length_scale()
            .min((x - dom.lo).abs())
            .min((dom.hi - x).abs());
        let h = 1e-3 * local;
        let f = |t: f64| self.eval_psi(t);
        let d = (f(x - 2.0 * h)? - 8.0 * f(x - h)? + 8.0 * f(x + h)? - f(x + 2.0 * h)?) / (12.0 * h);
        Ok(-d / f(x)?)
    }
}

/// `∫ψ_m ψ_n dx`; free-function form of [`ClosedFormWavefunction::overlap`].
pub fn overlap(a: &ClosedFormWavefunction, b: &ClosedFormWavefunction) -> Result<f64, WavefunError> {
    a.overlap(b)
}

/// Free-function form of [`ClosedFormWavefunction::normalize`].
pub fn normalize(cf: &ClosedFormWavefunction) -> Result<ClosedFormWavefunction, WavefunError> {
    cf.normalize()
}

/// Free-function form of [`ClosedFormWavefunction::eval_psi`].
pub fn eval_psi(cf: &ClosedFormWavefunction, x: f64) -> Result<f64, WavefunError> {
    cf.eval_psi(x)
}
