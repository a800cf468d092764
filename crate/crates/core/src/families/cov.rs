use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::ratfun::roots::Endpoint;
use crate::ratfun::{rational_to_f64, GaussRational, Poly, Rational};

/// The substitution `y = y(x)` that turns the potential into a rational
/// function of `y`. `dy/dx = P(y)` with `P` of degree at most two.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CovKind {
    /// `y = x`
    Identity,
    /// `y = 1/x`
    Reciprocal,
    /// `y = exp(-αx)`
    ExpNeg {
        #[serde(serialize_with = "crate::ratfun::ser_rational")]
        alpha: Rational,
    },
    /// `y = tan(αx + kπ/4)`
    Tan {
        #[serde(serialize_with = "crate::ratfun::ser_rational")]
        alpha: Rational,
        quarter_pi_phase: i32,
    },
    /// `y = tanh(αx + φ)`
    Tanh {
        #[serde(serialize_with = "crate::ratfun::ser_rational")]
        alpha: Rational,
        phase: f64,
    },
    /// `y = -coth(αx)`
    Coth {
        #[serde(serialize_with = "crate::ratfun::ser_rational")]
        alpha: Rational,
    },
    /// `y = tan(αx/2)`
    HalfTan {
        #[serde(serialize_with = "crate::ratfun::ser_rational")]
        alpha: Rational,
    },
    /// `y = tanh(αx/2 + iπ/4) = tanh(αx) + i·sech(αx)`
    HalfTanhShiftedIPi4 {
        #[serde(serialize_with = "crate::ratfun::ser_rational")]
        alpha: Rational,
    },
}

/// Open interval of the real line; endpoints may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XDomain {
    pub lo: f64,
    pub hi: f64,
}

impl XDomain {
    pub const REAL_LINE: XDomain = XDomain {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };
    pub const POSITIVE: XDomain = XDomain {
        lo: 0.0,
        hi: f64::INFINITY,
    };

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }
}

/// Image of the x-domain in the `y` variable.
#[derive(Debug, Clone, PartialEq)]
pub enum YImage {
    Interval(Endpoint, Endpoint),
    /// The upper half of the unit circle, traversed from -1 to 1.
    UpperUnitArc,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChangeOfVariable {
    #[serde(flatten)]
    pub kind: CovKind,
    pub p: Poly,
    pub x_domain: XDomain,
    #[serde(skip)]
    pub y_image: YImage,
}

impl ChangeOfVariable {
    pub fn new(kind: CovKind, x_domain: XDomain, y_image: YImage) -> Self {
        let p = p_of(&kind);
        Self {
            kind,
            p,
            x_domain,
            y_image,
        }
    }

    /// Whether `y(x)` is real on the x-domain.
    pub fn is_real(&self) -> bool {
        !matches!(self.kind, CovKind::HalfTanhShiftedIPi4 { .. })
    }

    /// Natural length in x: `1/α` for the exponential and trigonometric
    /// maps, 1 otherwise.
    pub fn length_scale(&self) -> f64 {
        match &self.kind {
            CovKind::Identity | CovKind::Reciprocal => 1.0,
            CovKind::ExpNeg { alpha }
            | CovKind::Tan { alpha, .. }
            | CovKind::Tanh { alpha, .. }
            | CovKind::Coth { alpha }
            | CovKind::HalfTan { alpha }
            | CovKind::HalfTanhShiftedIPi4 { alpha } => 1.0 / rational_to_f64(alpha).abs(),
        }
    }

    /// Roots of `P`, exactly.
    pub fn p_roots(&self) -> Vec<GaussRational> {
        let one = GaussRational::from_integer(1);
        match &self.kind {
            CovKind::Identity => vec![],
            CovKind::Reciprocal | CovKind::ExpNeg { .. } => vec![GaussRational::from_integer(0)],
            CovKind::Tan { .. } | CovKind::HalfTan { .. } => {
                vec![GaussRational::i(), GaussRational::i().conj()]
            }
            CovKind::Tanh { .. } | CovKind::Coth { .. } | CovKind::HalfTanhShiftedIPi4 { .. } => {
                vec![one.clone(), -&one]
            }
        }
    }

    pub fn forward(&self, x: f64) -> Complex64 {
        let re = |v: f64| Complex64::new(v, 0.0);
        match &self.kind {
            CovKind::Identity => re(x),
            CovKind::Reciprocal => re(1.0 / x),
            CovKind::ExpNeg { alpha } => re((-rational_to_f64(alpha) * x).exp()),
            CovKind::Tan {
                alpha,
                quarter_pi_phase,
            } => {
                let t = rational_to_f64(alpha) * x;
                let (sp, cp) = quarter_pi_sin_cos(*quarter_pi_phase);
                let (s, c) = t.sin_cos();
                re((s * cp + c * sp) / (c * cp - s * sp))
            }
            CovKind::Tanh { alpha, phase } => re((rational_to_f64(alpha) * x + phase).tanh()),
            CovKind::Coth { alpha } => re(-1.0 / (rational_to_f64(alpha) * x).tanh()),
            CovKind::HalfTan { alpha } => re((rational_to_f64(alpha) * x / 2.0).tan()),
            CovKind::HalfTanhShiftedIPi4 { alpha } => {
                let t = rational_to_f64(alpha) * x;
                Complex64::new(t.tanh(), 1.0 / t.cosh())
            }
        }
    }

    /// `y(x) - root` without the cancellation of `forward(x) - root` when
    /// `y` approaches one of the roots `±1` of `P`.
    pub fn offset(&self, x: f64, root: Complex64) -> Complex64 {
        let sign = if root == Complex64::new(1.0, 0.0) {
            1.0
        } else if root == Complex64::new(-1.0, 0.0) {
            -1.0
        } else {
            return self.forward(x) - root;
        };
        let re = |v: f64| Complex64::new(v, 0.0);
        match &self.kind {
            // tanh t ∓ 1 = ∓2/(1 + e^{±2t})
            CovKind::Tanh { alpha, phase } => {
                let t = rational_to_f64(alpha) * x + phase;
                re(-sign * 2.0 / (1.0 + (sign * 2.0 * t).exp()))
            }
            // -coth t - 1 = -2/(1 - e^{-2t}),  -coth t + 1 = -2/(e^{2t} - 1)
            CovKind::Coth { alpha } => {
                let t = rational_to_f64(alpha) * x;
                if sign > 0.0 {
                    re(2.0 / (-2.0 * t).exp_m1())
                } else {
                    re(-2.0 / (2.0 * t).exp_m1())
                }
            }
            CovKind::HalfTanhShiftedIPi4 { alpha } => {
                let t = rational_to_f64(alpha) * x;
                Complex64::new(-sign * 2.0 / (1.0 + (sign * 2.0 * t).exp()), 1.0 / t.cosh())
            }
            _ => self.forward(x) - root,
        }
    }

    /// `x(y)` for real maps; `None` when `y` is outside the image.
    pub fn inverse(&self, y: f64) -> Option<f64> {
        let x = match &self.kind {
            CovKind::Identity => y,
            CovKind::Reciprocal => 1.0 / y,
            CovKind::ExpNeg { alpha } => -y.ln() / rational_to_f64(alpha),
            CovKind::Tan {
                alpha,
                quarter_pi_phase,
            } => {
                let a = rational_to_f64(alpha);
                let phase = *quarter_pi_phase as f64 * std::f64::consts::FRAC_PI_4;
                let base = y.atan() - phase;
                // choose the branch inside the domain
                let period = std::f64::consts::PI / a;
                let mut x = base / a;
                while x <= self.x_domain.lo {
                    x += period;
                }
                while x >= self.x_domain.hi {
                    x -= period;
                }
                x
            }
            CovKind::Tanh { alpha, phase } => (y.atanh() - phase) / rational_to_f64(alpha),
            CovKind::Coth { alpha } => (-1.0 / y).atanh() / rational_to_f64(alpha),
            CovKind::HalfTan { alpha } => {
                let x = 2.0 * y.atan() / rational_to_f64(alpha);
                if x <= 0.0 {
                    x + 2.0 * std::f64::consts::PI / rational_to_f64(alpha)
                } else {
                    x
                }
            }
            CovKind::HalfTanhShiftedIPi4 { .. } => return None,
        };
        self.x_domain.contains(x).then_some(x)
    }

    /// Human-readable substitution.
    pub fn describe(&self) -> String {
        match &self.kind {
            CovKind::Identity => "y = x".into(),
            CovKind::Reciprocal => "y = 1/x".into(),
            CovKind::ExpNeg { alpha } => format!("y = exp(-{alpha}*x)"),
            CovKind::Tan {
                alpha,
                quarter_pi_phase: 0,
            } => format!("y = tan({alpha}*x)"),
            CovKind::Tan {
                alpha,
                quarter_pi_phase,
            } => format!("y = tan({alpha}*x + {quarter_pi_phase}*pi/4)"),
            CovKind::Tanh { alpha, phase } if *phase == 0.0 => format!("y = tanh({alpha}*x)"),
            CovKind::Tanh { alpha, phase } => format!("y = tanh({alpha}*x + {phase})"),
            CovKind::Coth { alpha } => format!("y = -coth({alpha}*x)"),
            CovKind::HalfTan { alpha } => format!("y = tan({alpha}*x/2)"),
            CovKind::HalfTanhShiftedIPi4 { alpha } => format!("y = tanh({alpha}*x/2 + i*pi/4)"),
        }
    }
}

fn quarter_pi_sin_cos(k: i32) -> (f64, f64) {
    const H: f64 = FRAC_1_SQRT_2;
    match k.rem_euclid(8) {
        0 => (0.0, 1.0),
        1 => (H, H),
        2 => (1.0, 0.0),
        3 => (H, -H),
        4 => (0.0, -1.0),
        5 => (-H, -H),
        6 => (-1.0, 0.0),
        _ => (-H, H),
    }
}

fn p_of(kind: &CovKind) -> Poly {
    let r = |q: &Rational| GaussRational::real(q.clone());
    let z = GaussRational::from_integer(0);
    match kind {
        CovKind::Identity => Poly::one(),
        CovKind::Reciprocal => Poly::new(vec![z.clone(), z, GaussRational::from_integer(-1)]),
        CovKind::ExpNeg { alpha } => Poly::new(vec![z, -r(alpha)]),
        CovKind::Tan { alpha, .. } => Poly::new(vec![r(alpha), z, r(alpha)]),
        CovKind::Tanh { alpha, .. } => Poly::new(vec![r(alpha), z, -r(alpha)]),
        CovKind::Coth { alpha } => Poly::new(vec![-r(alpha), z, r(alpha)]),
        CovKind::HalfTan { alpha } => {
            let h = r(&(alpha / Rational::from_integer(2.into())));
            Poly::new(vec![h.clone(), z, h])
        }
        CovKind::HalfTanhShiftedIPi4 { alpha } => {
            let h = r(&(alpha / Rational::from_integer(2.into())));
            Poly::new(vec![h.clone(), z, -h])
        }
    }
}
