//! Adaptive Gauss-Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_SEGMENTS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let f1 = f(c - h * x);
        let f2 = f(c + h * x);
        kronrod += w * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * h;
    let error = ((kronrod - gauss) * h).abs();
    Segment { a, b, value, error }
}

/// `∫_a^b f` split first into `pieces` equal segments, then refined by
/// bisecting the worst segment until the summed error estimate drops below
/// `rel_tol·|∫f| + abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    pieces: usize,
    rel_tol: f64,
    abs_tol: f64,
) -> QuadratureResult {
    let pieces = pieces.max(1);
    let step = (b - a) / pieces as f64;
    let mut heap: BinaryHeap<Segment> = (0..pieces)
        .map(|k| {
            let lo = a + step * k as f64;
            let hi = if k + 1 == pieces { b } else { lo + step };
            gk15(&f, lo, hi)
        })
        .collect();
    loop {
        let value: f64 = heap.iter().map(|s| s.value).sum();
        let error: f64 = heap.iter().map(|s| s.error).sum();
        if !value.is_finite() || !error.is_finite() {
            return QuadratureResult {
                value,
                error,
                converged: false,
            };
        }
        if error <= rel_tol * value.abs() + abs_tol {
            return QuadratureResult {
                value,
                error,
                converged: true,
            };
        }
        if heap.len() >= MAX_SEGMENTS {
            return QuadratureResult {
                value,
                error,
                converged: false,
            };
        }
        let worst = heap.pop().expect("at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted in floating point; accept it as is
            heap.push(Segment { error: 0.0, ..worst });
            continue;
        }
        heap.push(gk15(&f, worst.a, mid));
        heap.push(gk15(&f, mid, worst.b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_and_polynomials() {
        let r = integrate(|x: f64| (-x * x).exp(), -10.0, 10.0, 4, 1e-12, 0.0);
        assert!(r.converged);
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        let r = integrate(|x: f64| x.powi(6), 0.0, 2.0, 1, 1e-13, 0.0);
        assert!((r.value - 128.0 / 7.0).abs() < 1e-11);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫_0^1 x^{-1/2} = 2
        let r = integrate(|x: f64| x.powf(-0.5), 0.0, 1.0, 1, 1e-10, 0.0);
        assert!((r.value - 2.0).abs() < 1e-8, "{r:?}");
    }
}
