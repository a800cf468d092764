//! Root location: floating Aberth iteration for all complex roots, and exact
//! Sturm sequences for counting real roots of real polynomials.

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use super::{Poly, Rational};

/// All complex roots of `p` (with multiplicity) by Aberth-Ehrlich iteration.
pub fn complex_roots(p: &Poly) -> Vec<Complex64> {
    let Some(deg) = p.degree().filter(|&d| d > 0) else {
        return Vec::new();
    };
    let c: Vec<Complex64> = p.to_complex64();
    let lc = c[deg];
    let c: Vec<Complex64> = c.iter().map(|z| z / lc).collect();
    let dc: Vec<Complex64> = (1..=deg).map(|k| c[k] * k as f64).collect();
    let horner = |coef: &[Complex64], z: Complex64| {
        coef.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a)
    };

    let radius = 1.0 + c[..deg].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let r0 = radius.min(
        // geometric mean of root moduli is a better starting scale
        c[0].norm().powf(1.0 / deg as f64).max(1e-3),
    );
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(r0, 0.4 + std::f64::consts::TAU * k as f64 / deg as f64))
        .collect();
    for _ in 0..1000 {
        let mut max_step: f64 = 0.0;
        for i in 0..deg {
            let pv = horner(&c, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / horner(&dc, z[i]);
            let sum: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if w.is_finite() {
                z[i] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

/// Real roots (numeric), sorted ascending; keeps roots whose imaginary part is
/// negligible relative to their modulus.
pub fn real_roots(p: &Poly) -> Vec<f64> {
    let mut r: Vec<f64> = complex_roots(p)
        .into_iter()
        .filter(|z| z.im.abs() <= 1e-7 * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect();
    r.sort_by(f64::total_cmp);
    r
}

/// End point of a real interval.
#[derive(Debug, Clone, PartialEq)]
pub enum Endpoint {
    NegInf,
    PosInf,
    At(Rational),
}

/// Number of distinct real roots of a real polynomial in the open interval
/// `(lo, hi)`, computed exactly. Returns `None` when `p` has non-real
/// coefficients or is zero.
pub fn count_real_roots(p: &Poly, lo: &Endpoint, hi: &Endpoint) -> Option<usize> {
    if p.is_zero() || !p.is_real() {
        return None;
    }
    // strip roots sitting exactly on finite endpoints
    let mut q = p.clone();
    for e in [lo, hi] {
        if let Endpoint::At(a) = e {
            let root = super::GaussRational::real(a.clone());
            let m = q.root_multiplicity(&root);
            if m > 0 {
                q = q
                    .div_exact(&Poly::linear_factor(&root).pow(m as u32))
                    .expect("multiplicity was measured");
            }
        }
    }
    let seq = sturm_sequence(&q);
    let v = |e: &Endpoint| sign_variations(&seq, e);
    Some(v(lo).saturating_sub(v(hi)))
}

fn sturm_sequence(p: &Poly) -> Vec<Vec<Rational>> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        // positive rescaling keeps the signs and tames coefficient growth
        let lc = r.leading().expect("nonzero").re.abs();
        seq.push(-r.scale(&super::GaussRational::real(lc.recip())));
    }
    seq.into_iter()
        .map(|p| p.coeffs().iter().map(|c| c.re.clone()).collect())
        .collect()
}

fn sign_at(coeffs: &[Rational], e: &Endpoint) -> i32 {
    let sgn = |r: &Rational| {
        if r.is_positive() {
            1
        } else if r.is_negative() {
            -1
        } else {
            0
        }
    };
    match e {
        Endpoint::PosInf => coeffs.last().map_or(0, sgn),
        Endpoint::NegInf => {
            let s = coeffs.last().map_or(0, sgn);
            if coeffs.len() % 2 == 0 {
                -s
            } else {
                s
            }
        }
        Endpoint::At(a) => {
            let mut acc = Rational::zero();
            for c in coeffs.iter().rev() {
                acc = acc * a + c;
            }
            sgn(&acc)
        }
    }
}

fn sign_variations(seq: &[Vec<Rational>], e: &Endpoint) -> usize {
    let signs: Vec<i32> = seq.iter().map(|p| sign_at(p, e)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;

    #[test]
    fn aberth_finds_known_roots() {
        // (y-1)(y+2)(y²+1)
        let p = &(&Poly::from_i64(&[-1, 1]) * &Poly::from_i64(&[2, 1])) * &Poly::from_i64(&[1, 0, 1]);
        let mut roots = complex_roots(&p);
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let expect = [
            Complex64::new(-2.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(1.0, 0.0),
        ];
        for (r, e) in roots.iter().zip(expect) {
            assert!((r - e).norm() < 1e-12, "{r} vs {e}");
        }
        assert_eq!(real_roots(&p).len(), 2);
    }

    #[test]
    fn sturm_counts() {
        // Hermite-like y³ - 3y: roots 0, ±√3
        let p = Poly::from_i64(&[0, -3, 0, 1]);
        let all = count_real_roots(&p, &Endpoint::NegInf, &Endpoint::PosInf);
        assert_eq!(all, Some(3));
        assert_eq!(count_real_roots(&p, &Endpoint::At(rat(0)), &Endpoint::PosInf), Some(1));
        assert_eq!(count_real_roots(&p, &Endpoint::At(rat(-1)), &Endpoint::At(ratio(1, 2))), Some(1));
        assert_eq!(count_real_roots(&Poly::from_i64(&[1, 0, 1]), &Endpoint::NegInf, &Endpoint::PosInf), Some(0));
        // repeated root counted once
        let sq = Poly::from_i64(&[1, -2, 1]);
        assert_eq!(count_real_roots(&sq, &Endpoint::NegInf, &Endpoint::PosInf), Some(1));
    }
}
