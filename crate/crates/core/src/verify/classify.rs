//! Barclay-Maxwell classes as exact identities in `y`.
//!
//! With `F = P·w0'` (the x-derivative of `w0` written in `y`):
//! Class I is `F = α0 + α1·w0 + α2·w0²`, Class II is
//! `F = α0 + α2·w0² + α1·w0·√(α0 + α2·w0²)`, tested in the squared form
//! `(F - α0 - α2·w0²)² = α1²·w0²·(α0 + α2·w0²)`.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use super::VerifyError;
use crate::families::{FamilyInstance, YImage};
use crate::ratfun::roots::Endpoint;
use crate::ratfun::{rational_to_f64, GaussRational, Poly, RationalFunction};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "class")]
pub enum ClassAssignment {
    ClassI {
        alpha0: GaussRational,
        alpha1: GaussRational,
        alpha2: GaussRational,
    },
    /// `α1` is generally irrational; its square is exact and its value with
    /// the sign of the unsquared identity is found numerically.
    ClassII {
        alpha0: GaussRational,
        alpha1_squared: GaussRational,
        alpha2: GaussRational,
        alpha1: f64,
    },
}

impl ClassAssignment {
    pub fn is_class_one(&self) -> bool {
        matches!(self, ClassAssignment::ClassI { .. })
    }
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = a.gcd(b).expect("denominators are nonzero");
    (a * &b.div_exact(&g).expect("gcd divides")).monic()
}

/// Coefficients `c` with `target = Σ c_j·basis_j` identically, if any.
/// Free directions of a rank-deficient system are set to zero.
pub fn solve_identity(target: &RationalFunction, basis: &[RationalFunction]) -> Option<Vec<GaussRational>> {
    let den = basis
        .iter()
        .chain(std::iter::once(target))
        .fold(Poly::one(), |acc, f| lcm(&acc, f.denom()));
    let lift = |f: &RationalFunction| -> Poly {
        f.numer() * &den.div_exact(f.denom()).expect("lcm is a multiple")
    };
    let columns: Vec<Poly> = basis.iter().map(lift).collect();
    let rhs = lift(target);
    let rows = columns
        .iter()
        .chain(std::iter::once(&rhs))
        .filter_map(Poly::degree)
        .max()
        .map_or(0, |d| d + 1);
    let m = basis.len();
    let mut a: Vec<Vec<GaussRational>> = (0..rows)
        .map(|k| {
            let mut row: Vec<GaussRational> = columns.iter().map(|c| c.coeff(k)).collect();
            row.push(rhs.coeff(k));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m {
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].inv().expect("pivot is nonzero");
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][col].is_zero() {
                let factor = a[i][col].clone();
                for j in 0..=m {
                    let d = &factor * &a[r][j];
                    a[i][j] -= &d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    let mut out = vec![GaussRational::zero(); m];
    for (i, &col) in pivots.iter().enumerate() {
        out[col] = a[i][m].clone();
    }
    Some(out)
}

/// Class I then Class II; an instance in neither class is an error.
pub fn classify(inst: &FamilyInstance) -> Result<ClassAssignment, VerifyError> {
    let w = inst.w0();
    let f = &inst.p_function() * &w.derivative();
    let one = RationalFunction::one();
    let w2 = w * w;
    if let Some(c) = solve_identity(&f, &[one.clone(), w.clone(), w2.clone()]) {
        return Ok(ClassAssignment::ClassI {
            alpha0: c[0].clone(),
            alpha1: c[1].clone(),
            alpha2: c[2].clone(),
        });
    }
    class_two(inst, &f, &w2).ok_or_else(|| VerifyError::NoClass {
        family: inst.family(),
        w0: w.to_string(),
    })
}

fn class_two(inst: &FamilyInstance, f: &RationalFunction, w2: &RationalFunction) -> Option<ClassAssignment> {
    // F² = 2α0·F + 2α2·F·W² - α0² - (2α0α2 - cα0)·W² - (α2² - cα2)·W⁴ with c = α1²
    let fw2 = f * w2;
    let w4 = w2 * w2;
    let u = solve_identity(&(f * f), &[f.clone(), fw2, RationalFunction::one(), w2.clone(), w4])?;
    let half = GaussRational::ratio(1, 2);
    let a0 = &u[0] * &half;
    let a2 = &u[1] * &half;
    if u[2] != -(&a0 * &a0) {
        return None;
    }
    let two = GaussRational::from_integer(2);
    let c = if !a0.is_zero() {
        &(&u[3] + &(&two * &(&a0 * &a2))) / &a0
    } else if !a2.is_zero() {
        &(&u[4] + &(&a2 * &a2)) / &a2
    } else {
        return None;
    };
    let consistent_w2 = u[3] == &(&c * &a0) - &(&two * &(&a0 * &a2));
    let consistent_w4 = u[4] == &(&c * &a2) - &(&a2 * &a2);
    if !(consistent_w2 && consistent_w4) || c.is_zero() {
        return None;
    }
    let alpha1 = alpha1_branch(inst, f, &a0, &a2);
    Some(ClassAssignment::ClassII {
        alpha0: a0,
        alpha1_squared: c,
        alpha2: a2,
        alpha1,
    })
}

/// `(F - α0 - α2·w0²) / (w0·√(α0 + α2·w0²))` at a point of the y-image.
fn alpha1_branch(inst: &FamilyInstance, f: &RationalFunction, a0: &GaussRational, a2: &GaussRational) -> f64 {
    let y = match &inst.cov().y_image {
        YImage::UpperUnitArc => Complex64::new(0.6, 0.8),
        YImage::Interval(lo, hi) => {
            let at = |e: &Endpoint| match e {
                Endpoint::At(r) => Some(rational_to_f64(r)),
                _ => None,
            };
            let v = match (at(lo), at(hi)) {
                (Some(a), Some(b)) => a + 0.37 * (b - a),
                (Some(a), None) => a + 0.73,
                (None, Some(b)) => b - 0.73,
                (None, None) => 0.73,
            };
            Complex64::new(v, 0.0)
        }
    };
    let w = inst.w0().eval(y).unwrap_or_default();
    let fv = f.eval(y).unwrap_or_default();
    let (a0, a2) = (a0.to_complex64(), a2.to_complex64());
    let ratio = (fv - a0 - a2 * w * w) / (w * (a0 + a2 * w * w).sqrt());
    ratio.re
}
