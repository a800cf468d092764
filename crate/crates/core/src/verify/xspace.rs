//! Potentials written directly in the physical coordinate `x`, in their
//! textbook trigonometric and hyperbolic forms, normalized so that the
//! ground state sits at zero energy. The Numerov oracle integrates these, so
//! they are deliberately not derived from the rational `V(y)`.

use crate::families::{Family, FamilyInstance};
use crate::ratfun::rational_to_f64;

/// `V(x)`. `from_hi` is `hi - x` for a finite upper endpoint `hi`, passed
/// separately to keep full precision next to that endpoint.
pub fn potential_x(inst: &FamilyInstance, x: f64, from_hi: f64) -> f64 {
    let p = |k: &str| rational_to_f64(inst.param(k).expect("parameter present"));
    let sq = |v: f64| v * v;
    match inst.family() {
        Family::Harmonic => {
            let w = p("omega");
            w * w * x * x / 4.0 - w / 2.0
        }
        Family::Isotonic => {
            let (w, l) = (p("omega"), p("l"));
            w * w * x * x / 4.0 + l * (l + 1.0) / (x * x) - w * (l + 1.5)
        }
        Family::Kepler => {
            let (g, l) = (p("gamma"), p("l"));
            l * (l + 1.0) / (x * x) - g / x + sq(g / (2.0 * (l + 1.0)))
        }
        Family::Morse => {
            let (a, b, al) = (p("A"), p("B"), p("alpha"));
            let e = (-al * x).exp();
            b * b * e * e - (2.0 * a * b + al * b) * e + a * a
        }
        Family::RosenMorse1 => {
            let (a, b, al) = (p("A"), p("B"), p("alpha"));
            // sin and cot evaluated from the nearer endpoint
            let (s, cot) = if x <= from_hi {
                let t = al * x;
                (t.sin(), t.cos() / t.sin())
            } else {
                let t = al * from_hi;
                (t.sin(), -t.cos() / t.sin())
            };
            a * (a - al) / (s * s) + 2.0 * b * cot - a * a + sq(b / a)
        }
        Family::RosenMorse2 => {
            let (a, b, al) = (p("A"), p("B"), p("alpha"));
            let t = al * x;
            -a * (a + al) / sq(t.cosh()) + 2.0 * b * t.tanh() + a * a + sq(b / a)
        }
        Family::Eckart => {
            let (a, b, al) = (p("A"), p("B"), p("alpha"));
            let t = al * x;
            a * (a - al) / sq(t.sinh()) - 2.0 * b / t.tanh() + a * a + sq(b / a)
        }
        Family::PoschlTeller => {
            let (a, b, al) = (p("A"), p("B"), p("alpha"));
            let (lam, mu, h) = ((a + b) / 2.0, (b - a) / 2.0, al / 2.0);
            let t = h * x;
            -lam * (lam + h) / sq(t.cosh()) + mu * (mu - h) / sq(t.sinh()) + sq(lam - mu)
        }
        Family::PoschlTeller1 => {
            let (lam, mu, al) = (p("A"), p("B"), p("alpha"));
            // cos(αx) = sin(α(hi - x)) with hi = π/2α
            let (s, c) = ((al * x).sin(), (al * from_hi).sin());
            lam * (lam - al) / (c * c) + mu * (mu - al) / (s * s) - sq(lam + mu)
        }
        Family::PoschlTeller2 => {
            let (lam, mu, al) = (p("A"), p("B"), p("alpha"));
            let t = al * x;
            -lam * (lam + al) / sq(t.cosh()) + mu * (mu - al) / sq(t.sinh()) + sq(lam - mu)
        }
        Family::Scarf1 => {
            let (a, b, al) = (p("A"), p("B"), p("alpha"));
            let (lam, mu, h) = ((a + b) / 2.0, (a - b) / 2.0, al / 2.0);
            // hi = π/α, so cos(hx) = sin(h(hi - x))
            let (s, c) = ((h * x).sin(), (h * from_hi).sin());
            lam * (lam - h) / (c * c) + mu * (mu - h) / (s * s) - sq(lam + mu)
        }
        Family::Scarf2 => {
            let (a, b, al) = (p("A"), p("B"), p("alpha"));
            let t = al * x;
            let sech = 1.0 / t.cosh();
            // superpotential A·tanh(αx) - B·sech(αx)
            a * a + (b * b - a * a - a * al) * sech * sech - b * (2.0 * a + al) * sech * t.tanh()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::instantiate;

    /// The hand-written forms agree with the catalog potential pulled back
    /// through the change of variable.
    #[test]
    fn matches_catalog_potential() {
        for f in Family::ALL {
            let inst = instantiate(f, &f.descriptor().example).unwrap();
            let dom = inst.cov().x_domain;
            let (lo, hi) = match (dom.lo.is_finite(), dom.hi.is_finite()) {
                (true, true) => (dom.lo, dom.hi),
                (true, false) => (dom.lo, dom.lo + 6.0),
                _ => (-3.0, 3.0),
            };
            for k in 1..20 {
                let x = lo + (hi - lo) * k as f64 / 20.0;
                let direct = potential_x(&inst, x, dom.hi - x);
                let pulled = inst.potential().eval(inst.cov().forward(x)).unwrap().re;
                assert!(
                    (direct - pulled).abs() < 1e-9 * (1.0 + pulled.abs()),
                    "{f} at x = {x}: {direct} vs {pulled}"
                );
            }
        }
    }
}
