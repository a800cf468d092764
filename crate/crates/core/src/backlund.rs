//! Excited RS functions by the finite-difference Bäcklund step.
//!
//! With shape invariance the step closes on the family itself:
//! `w_n(y, a) = w0(y, a) - E_n(a) / (w0(y, a) + w_{n-1}(y, a₁))`,
//! which unrolls into a terminating continued fraction whose partial
//! numerators are `E_n - E_{j-1}` and partial denominators
//! `w0(a_{j-1}) + w0(a_j)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::families::{FamilyError, FamilyInstance, Params, YImage};
use crate::ratfun::roots::{complex_roots, count_real_roots};
use crate::ratfun::{GaussRational, Poly, Rational, RatfunError, RationalFunction};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BacklundError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Ratfun(#[from] RatfunError),
    #[error("energy gap {0} is not positive")]
    NonPositiveGap(Rational),
    #[error("w_k + w_kl vanishes identically")]
    ZeroDenominator,
    #[error("level {n} does not satisfy its Riccati equation: residual {residual}")]
    ResidualNonzero { n: usize, residual: String },
    #[error("invalid level index: {0}")]
    InvalidIndex(String),
}

/// One bound state in exact form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Level {
    pub n: usize,
    #[serde(serialize_with = "crate::ratfun::ser_rational")]
    pub energy: Rational,
    pub w: RationalFunction,
    /// Denominator of `w` with the factors at known roots (roots of `P`,
    /// poles of `w0`) removed; monic.
    pub node_poly: Poly,
    pub params_at_level: Params,
}

/// Partial numerator and denominator of the RS continued fraction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CfLadderTerm {
    #[serde(serialize_with = "crate::ratfun::ser_rational")]
    pub numerator_constant: Rational,
    pub denominator_seed: RationalFunction,
}

/// `w_l = w_k - ΔE / (w_k + w_kl)`.
pub fn backlund_step(
    w_k: &RationalFunction,
    w_kl: &RationalFunction,
    delta_e: &Rational,
) -> Result<RationalFunction, BacklundError> {
    if !delta_e.is_positive() {
        return Err(BacklundError::NonPositiveGap(delta_e.clone()));
    }
    let sum = w_k + w_kl;
    let inv = sum.recip().map_err(|_| BacklundError::ZeroDenominator)?;
    Ok(w_k - &inv.scale(&GaussRational::real(delta_e.clone())))
}

type MemoKey = (crate::families::Family, Params, Rational, usize);

fn memo() -> &'static Mutex<HashMap<MemoKey, RationalFunction>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, RationalFunction>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Drops every memoized RS function.
pub fn clear_cache() {
    memo().lock().expect("memo lock").clear();
}

fn memo_key(inst: &FamilyInstance, n: usize) -> MemoKey {
    let (f, p, bias) = inst.key();
    (f, p, bias, n)
}

/// `w_n` of `inst` through the recursion over shifted instances, memoized.
fn rs_w(inst: &FamilyInstance, n: usize) -> Result<RationalFunction, BacklundError> {
    if n == 0 {
        return Ok(inst.w0().clone());
    }
    let key = memo_key(inst, n);
    if let Some(w) = memo().lock().expect("memo lock").get(&key) {
        return Ok(w.clone());
    }
    let shifted = inst.shifted(1)?;
    let inner = rs_w(&shifted, n - 1)?;
    let e = inst.energy_formal(n)?;
    let w = backlund_step(inst.w0(), &inner, &e)?;
    // concurrent writers compute identical values; last one wins
    memo().lock().expect("memo lock").insert(key, w.clone());
    Ok(w)
}

/// Level `n` of `inst`. Formal instances skip the bound-state check.
pub fn rs_function(inst: &FamilyInstance, n: usize) -> Result<Level, BacklundError> {
    let energy = inst.energy(n)?;
    let w = rs_w(inst, n)?;
    let level = Level {
        n,
        energy,
        node_poly: strip_known_roots(w.denom(), &inst.known_roots()),
        params_at_level: inst.param_shift(n),
        w,
    };
    let residual = riccati_residual(inst, &level);
    if !residual.is_zero() {
        return Err(BacklundError::ResidualNonzero {
            n,
            residual: residual.to_string(),
        });
    }
    Ok(level)
}

/// `-P·w' + w² - V + E`.
pub fn riccati_residual(inst: &FamilyInstance, level: &Level) -> RationalFunction {
    let pw = &inst.p_function() * &level.w.derivative();
    let e = RationalFunction::constant(GaussRational::real(level.energy.clone()));
    &(&(&(&level.w * &level.w) - &pw) - inst.potential()) + &e
}

fn strip_known_roots(den: &Poly, known: &[GaussRational]) -> Poly {
    let mut q = den.clone();
    for r in known {
        let m = q.root_multiplicity(r);
        if m > 0 {
            q = q
                .div_exact(&Poly::linear_factor(r).pow(m as u32))
                .expect("multiplicity was measured");
        }
    }
    q.monic()
}

/// The `n` ladder terms `(E_n - E_{j-1}, w0(a_{j-1}) + w0(a_j))`, `j = 1..n`.
pub fn cf_expansion(inst: &FamilyInstance, n: usize) -> Result<Vec<CfLadderTerm>, BacklundError> {
    let e_n = inst.energy(n)?;
    let mut w_prev = inst.w0().clone();
    let mut terms = Vec::with_capacity(n);
    for j in 1..=n {
        let next = inst.shifted(j)?;
        terms.push(CfLadderTerm {
            numerator_constant: &e_n - inst.energy_formal(j - 1)?,
            denominator_seed: &w_prev + next.w0(),
        });
        w_prev = next.w0().clone();
    }
    Ok(terms)
}

/// Folds the ladder from its last term upward and returns
/// `w0 - c₁/(d₁ - c₂/(d₂ - ...))`.
pub fn fold_ladder(w0: &RationalFunction, terms: &[CfLadderTerm]) -> Result<RationalFunction, BacklundError> {
    let Some(last) = terms.last() else {
        return Ok(w0.clone());
    };
    let mut tail = last.denominator_seed.clone();
    for pair in terms.windows(2).rev() {
        let (here, below) = (&pair[0], &pair[1]);
        let frac = tail
            .recip()
            .map_err(|_| BacklundError::ZeroDenominator)?
            .scale(&GaussRational::real(below.numerator_constant.clone()));
        tail = &here.denominator_seed - &frac;
    }
    let c1 = GaussRational::real(terms[0].numerator_constant.clone());
    let frac = tail.recip().map_err(|_| BacklundError::ZeroDenominator)?.scale(&c1);
    Ok(w0 - &frac)
}

/// Checks `w_{n-1}(y, a₁) = w_n - P·g'/g` with `g = w0 - w_n`.
pub fn ladder_consistency(inst: &FamilyInstance, n: usize) -> Result<bool, BacklundError> {
    if n == 0 {
        return Err(BacklundError::InvalidIndex("ladder consistency needs n >= 1".into()));
    }
    let w_n = rs_function(inst, n)?.w;
    let lower = rs_w(&inst.shifted(1)?, n - 1)?;
    let g = inst.w0() - &w_n;
    let log_deriv = g.derivative().try_div(&g)?;
    Ok(lower == &w_n - &(&inst.p_function() * &log_deriv))
}

/// Number of distinct roots of the node polynomial inside the y-image, and
/// whether they are all simple.
pub fn nodes_in_image(inst: &FamilyInstance, level: &Level) -> (usize, bool) {
    let q = &level.node_poly;
    let simple = q.is_constant() || q.gcd(&q.derivative()).map_or(false, |g| g.is_one());
    let count = match &inst.cov().y_image {
        YImage::Interval(lo, hi) => count_real_roots(q, lo, hi).unwrap_or(0),
        YImage::UpperUnitArc => complex_roots(q)
            .iter()
            .filter(|z| (z.norm() - 1.0).abs() < 1e-8 && z.im > 1e-10)
            .count(),
    };
    (count, simple)
}

/// Residues of `w_n / P` at the roots of the node polynomial (each equals -1
/// for a node of the wavefunction).
pub fn node_residues(inst: &FamilyInstance, level: &Level) -> Vec<(Complex64, Complex64)> {
    let num = level.w.numer();
    let den = level.w.denom();
    let dden = den.derivative();
    complex_roots(&level.node_poly)
        .into_iter()
        .map(|q| (q, num.eval(q) / (inst.p().eval(q) * dden.eval(q))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{instantiate, Family};
    use crate::ratfun::{rat, ratio};

    fn params(pairs: &[(&str, Rational)]) -> Params {
        Params::from_pairs(pairs.iter().cloned())
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_i64(n), Poly::from_i64(d)).unwrap()
    }

    #[test]
    fn harmonic_first_step() {
        // ω = 2: w0 = y, ΔE = 2 → w₁ = y - 1/y
        let w0 = RationalFunction::y();
        let w1 = backlund_step(&w0, &w0, &rat(2)).unwrap();
        assert_eq!(w1, rf(&[-1, 0, 1], &[0, 1]));
        assert!(matches!(
            backlund_step(&w0, &w0, &rat(0)),
            Err(BacklundError::NonPositiveGap(_))
        ));
    }

    #[test]
    fn morse_first_step() {
        let w0 = rf(&[2, -1], &[1]);
        let w01 = rf(&[1, -1], &[1]);
        let w1 = backlund_step(&w0, &w01, &rat(3)).unwrap();
        let expected = &w0 - &rf(&[3], &[3, -2]);
        assert_eq!(w1, expected);
    }

    #[test]
    fn harmonic_levels() {
        let inst = instantiate(Family::Harmonic, &params(&[("omega", rat(3))])).unwrap();
        let l0 = rs_function(&inst, 0).unwrap();
        assert_eq!(l0.node_poly, Poly::one());
        let l2 = rs_function(&inst, 2).unwrap();
        // ωy² - 1, monic
        assert_eq!(
            l2.node_poly,
            Poly::from_rationals([ratio(-1, 3), rat(0), rat(1)])
        );
        let l3 = rs_function(&inst, 3).unwrap();
        assert_eq!(l3.node_poly, Poly::from_i64(&[0, -1, 0, 1]));
        let terms = cf_expansion(&inst, 2).unwrap();
        assert_eq!(terms[0].numerator_constant, rat(6));
        assert_eq!(terms[1].numerator_constant, rat(3));
        assert_eq!(terms[0].denominator_seed, rf(&[0, 3], &[1]));
        assert_eq!(fold_ladder(inst.w0(), &terms).unwrap(), l2.w);
        assert!(cf_expansion(&inst, 0).unwrap().is_empty());
    }

    #[test]
    fn ladder_checks() {
        let h = instantiate(Family::Harmonic, &params(&[("omega", rat(2))])).unwrap();
        assert!(ladder_consistency(&h, 1).unwrap());
        let m = instantiate(Family::Morse, &params(&[("A", rat(2)), ("B", rat(1)), ("alpha", rat(1))])).unwrap();
        assert!(ladder_consistency(&m, 1).unwrap());
        assert!(ladder_consistency(&m, 0).is_err());
    }

    #[test]
    fn kepler_first_level() {
        let (g, l) = (rat(3), rat(1));
        let inst = instantiate(Family::Kepler, &params(&[("gamma", g.clone()), ("l", l.clone())])).unwrap();
        let a = &l + rat(1);
        let a1 = &a + rat(1);
        let c = &g / (rat(2) * &a * &a1);
        let expected = inst.w0()
            + &rf(&[1], &[1]).scale(&GaussRational::real(&c * &c)).try_div(
                &RationalFunction::from_poly(Poly::from_rationals([-c.clone(), rat(1)])),
            ).unwrap();
        assert_eq!(rs_function(&inst, 1).unwrap().w, expected);
    }
}
