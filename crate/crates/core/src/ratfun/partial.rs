use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{GaussRational, Poly, RatfunError, RationalFunction};

/// `coefficient / (y - root)^power`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleTerm {
    pub root: GaussRational,
    pub power: usize,
    pub coefficient: GaussRational,
}

impl PoleTerm {
    pub fn to_rational_function(&self) -> RationalFunction {
        let den = Poly::linear_factor(&self.root).pow(self.power as u32);
        RationalFunction::new(Poly::constant(self.coefficient.clone()), den)
            .expect("nonzero denominator")
    }
}

/// `polynomial_part + Σ terms + remainder`.
///
/// `remainder` is the zero function when every denominator root was known.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialFractionForm {
    pub polynomial_part: Poly,
    pub terms: Vec<PoleTerm>,
    pub remainder: RationalFunction,
}

impl PartialFractionForm {
    pub fn reassemble(&self) -> RationalFunction {
        let mut acc = &RationalFunction::from_poly(self.polynomial_part.clone()) + &self.remainder;
        for t in &self.terms {
            acc = &acc + &t.to_rational_function();
        }
        acc
    }

    /// Terms attached to `root`, indexed by power.
    pub fn terms_at<'a>(&'a self, root: &'a GaussRational) -> impl Iterator<Item = &'a PoleTerm> + 'a {
        self.terms.iter().filter(move |t| &t.root == root)
    }
}

/// Decomposes `f` completely. Every root of the denominator must be listed in
/// `known_roots`; otherwise the leftover factor is reported.
pub fn partial_fractions(
    f: &RationalFunction,
    known_roots: &[GaussRational],
) -> Result<PartialFractionForm, RatfunError> {
    let form = partial_fractions_with_remainder(f, known_roots)?;
    if form.remainder.denom().is_constant() {
        Ok(form)
    } else {
        Err(RatfunError::UnknownRoot {
            factor: form.remainder.denom().to_string(),
        })
    }
}

/// Decomposes `f` over `known_roots` only, keeping the contribution of every
/// other denominator factor as a proper rational remainder.
pub fn partial_fractions_with_remainder(
    f: &RationalFunction,
    known_roots: &[GaussRational],
) -> Result<PartialFractionForm, RatfunError> {
    let (polynomial_part, proper) = f.numer().div_rem(f.denom())?;
    let mut terms = Vec::new();
    let mut rest_den = f.denom().clone();
    let mut seen: Vec<&GaussRational> = Vec::new();
    for r in known_roots {
        if seen.contains(&r) {
            continue;
        }
        seen.push(r);
        let m = f.denom().root_multiplicity(r);
        if m == 0 {
            continue;
        }
        let cofactor = f
            .denom()
            .div_exact(&Poly::linear_factor(r).pow(m as u32))
            .expect("multiplicity was measured");
        rest_den = rest_den
            .div_exact(&Poly::linear_factor(r).pow(m as u32))
            .expect("multiplicity was measured");
        // Laurent coefficients at r: series of proper/cofactor in t = y - r.
        let s = series_quotient(&proper.taylor_shift(r), &cofactor.taylor_shift(r), m);
        for (j, c) in s.into_iter().enumerate() {
            if !c.is_zero() {
                terms.push(PoleTerm {
                    root: r.clone(),
                    power: m - j,
                    coefficient: c,
                });
            }
        }
    }
    let mut remainder = RationalFunction::new(proper, f.denom().clone())?;
    for t in &terms {
        remainder = &remainder - &t.to_rational_function();
    }
    debug_assert!(remainder.is_zero() || rest_den.div_rem(remainder.denom()).is_ok_and(|(_, r)| r.is_zero()));
    Ok(PartialFractionForm {
        polynomial_part,
        terms,
        remainder,
    })
}

/// First `k` coefficients of the power series `a(t)/b(t)`, `b(0) ≠ 0`.
fn series_quotient(a: &Poly, b: &Poly, k: usize) -> Vec<GaussRational> {
    let b0_inv = b.coeff(0).inv().expect("cofactor does not vanish at the root");
    let mut out: Vec<GaussRational> = Vec::with_capacity(k);
    for j in 0..k {
        let mut s = a.coeff(j);
        for (i, o) in out.iter().enumerate() {
            let bj = b.coeff(j - i);
            if !bj.is_zero() {
                s -= &(o * &bj);
            }
        }
        out.push(&s * &b0_inv);
    }
    out
}
