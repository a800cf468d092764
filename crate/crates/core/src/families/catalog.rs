//! Per-family formulas: substitution, superpotential, potential, parameter
//! translation, shape-invariance constant, closed spectrum and level count.

use std::f64::consts::PI;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::cov::{ChangeOfVariable, CovKind, XDomain, YImage};
use super::{Branch, Category, Family, FamilyError, MaxBound, Params};
use crate::ratfun::roots::Endpoint;
use crate::ratfun::{rat, rational_to_f64, GaussRational, Poly, Rational, RationalFunction};

/// Safety cap on the level-count search.
const MAX_LEVEL_SEARCH: usize = 1_000_000;

/// JSON-exportable summary of a family.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyDescriptor {
    pub name: &'static str,
    pub category: Category,
    pub params: Vec<&'static str>,
    pub constraints: Vec<String>,
    pub x_domain: &'static str,
    pub substitution: &'static str,
    pub p: &'static str,
    pub w0: &'static str,
    pub shift: &'static str,
    pub bound_states: &'static str,
    pub example: Params,
    pub example_p: Poly,
    pub example_w0: RationalFunction,
}

pub(super) fn category(f: Family) -> Category {
    use Family::*;
    match f {
        Harmonic => Category::ExceptionalHarmonic,
        Isotonic => Category::ExceptionalIsotonic,
        Kepler => Category::ExceptionalKepler,
        Morse => Category::ExceptionalMorse,
        RosenMorse1 => Category::FirstCategory(Branch::Plus),
        RosenMorse2 | Eckart => Category::FirstCategory(Branch::Minus),
        PoschlTeller1 | Scarf1 => Category::SecondCategory(Branch::Plus),
        PoschlTeller | PoschlTeller2 | Scarf2 => Category::SecondCategory(Branch::Minus),
    }
}

pub(super) fn param_names(f: Family) -> &'static [&'static str] {
    match f {
        Family::Harmonic => &["omega"],
        Family::Isotonic => &["omega", "l"],
        Family::Kepler => &["gamma", "l"],
        _ => &["A", "B", "alpha"],
    }
}

fn example(f: Family) -> Params {
    let v: &[(&str, Rational)] = match f {
        Family::Harmonic => &[("omega", rat(2))],
        Family::Isotonic => &[("omega", rat(2)), ("l", rat(1))],
        Family::Kepler => &[("gamma", rat(2)), ("l", rat(1))],
        Family::Morse => &[("A", rat(2)), ("B", rat(1)), ("alpha", rat(1))],
        Family::RosenMorse1 => &[("A", rat(2)), ("B", rat(1)), ("alpha", rat(1))],
        Family::RosenMorse2 => &[("A", rat(3)), ("B", rat(1)), ("alpha", rat(1))],
        Family::Eckart => &[("A", rat(1)), ("B", rat(10)), ("alpha", rat(1))],
        Family::PoschlTeller => &[("A", rat(2)), ("B", rat(3)), ("alpha", rat(1))],
        Family::PoschlTeller1 => &[("A", rat(2)), ("B", rat(3)), ("alpha", rat(1))],
        Family::PoschlTeller2 => &[("A", rat(4)), ("B", rat(1)), ("alpha", rat(1))],
        Family::Scarf1 => &[("A", rat(2)), ("B", rat(1)), ("alpha", rat(1))],
        Family::Scarf2 => &[("A", rat(3)), ("B", rat(1)), ("alpha", rat(1))],
    };
    Params::from_pairs(v.iter().cloned())
}

pub(super) fn descriptor(f: Family) -> FamilyDescriptor {
    use Family::*;
    let (x_domain, substitution, p, w0, shift, bound_states) = match f {
        Harmonic => ("(-inf, inf)", "y = x", "1", "omega*y/2", "none", "unbounded"),
        Isotonic => (
            "(0, inf)",
            "y = x",
            "1",
            "omega*y/2 - (l+1)/y",
            "l -> l+1",
            "unbounded",
        ),
        Kepler => (
            "(0, inf)",
            "y = 1/x",
            "-y^2",
            "-(l+1)*y + gamma/(2*(l+1))",
            "l -> l+1",
            "unbounded",
        ),
        Morse => (
            "(-inf, inf)",
            "y = exp(-alpha*x)",
            "-alpha*y",
            "A - B*y",
            "A -> A-alpha",
            "n < A/alpha",
        ),
        RosenMorse1 => (
            "(0, pi/alpha)",
            "y = -cot(alpha*x)",
            "alpha + alpha*y^2",
            "A*y - B/A",
            "A -> A+alpha",
            "unbounded",
        ),
        RosenMorse2 => (
            "(-inf, inf)",
            "y = tanh(alpha*x)",
            "alpha - alpha*y^2",
            "A*y + B/A",
            "A -> A-alpha",
            "A - n*alpha > 0 and (A - n*alpha)^2 > |B|",
        ),
        Eckart => (
            "(0, inf)",
            "y = -coth(alpha*x)",
            "-alpha + alpha*y^2",
            "A*y + B/A",
            "A -> A+alpha",
            "(A + n*alpha)^2 < B",
        ),
        PoschlTeller => (
            "(0, inf)",
            "y = tanh(alpha*x/2)",
            "alpha/2 - alpha/2*y^2",
            "(A+B)/2*y - (B-A)/2/y",
            "A -> A-alpha",
            "n < A/alpha",
        ),
        PoschlTeller1 => (
            "(0, pi/(2*alpha))",
            "y = tan(alpha*x)",
            "alpha + alpha*y^2",
            "A*y - B/y",
            "A -> A+alpha, B -> B+alpha",
            "unbounded",
        ),
        PoschlTeller2 => (
            "(0, inf)",
            "y = tanh(alpha*x)",
            "alpha - alpha*y^2",
            "A*y - B/y",
            "A -> A-alpha, B -> B+alpha",
            "A - B - 2*n*alpha > 0",
        ),
        Scarf1 => (
            "(0, pi/alpha)",
            "y = tan(alpha*x/2)",
            "alpha/2 + alpha/2*y^2",
            "(A+B)/2*y - (A-B)/2/y",
            "A -> A+alpha",
            "unbounded",
        ),
        Scarf2 => (
            "(-inf, inf)",
            "y = tanh(alpha*x/2 + i*pi/4)",
            "alpha/2 - alpha/2*y^2",
            "(A+iB)/2*y - (-A+iB)/2/y",
            "A -> A-alpha",
            "n < A/alpha",
        ),
    };
    let ex = example(f);
    let inst = super::instantiate(f, &ex).expect("catalog example is admissible");
    FamilyDescriptor {
        name: f.name(),
        category: category(f),
        params: param_names(f).to_vec(),
        constraints: constraints(f, &ex).into_iter().map(|(c, _)| c.to_string()).collect(),
        x_domain,
        substitution,
        p,
        w0,
        shift,
        bound_states,
        example: ex,
        example_p: inst.p().clone(),
        example_w0: inst.w0().clone(),
    }
}

struct Native {
    a: Rational,
    b: Rational,
    alpha: Rational,
}

fn native(p: &Params) -> Native {
    Native {
        a: p.req("A").clone(),
        b: p.req("B").clone(),
        alpha: p.req("alpha").clone(),
    }
}

fn constraints(f: Family, p: &Params) -> Vec<(&'static str, bool)> {
    use Family::*;
    let zero = Rational::zero();
    match f {
        Harmonic => vec![("omega > 0", p.req("omega") > &zero)],
        Isotonic => vec![
            ("omega > 0", p.req("omega") > &zero),
            ("l > 0", p.req("l") > &zero),
        ],
        Kepler => vec![
            ("gamma > 0", p.req("gamma") > &zero),
            ("l > 0", p.req("l") > &zero),
        ],
        _ => {
            let Native { a, b, alpha } = native(p);
            let mut c = vec![("alpha > 0", alpha > zero)];
            match f {
                Morse => c.extend([("A > 0", a > zero), ("B > 0", b > zero)]),
                RosenMorse1 | Scarf2 => c.push(("A > 0", a > zero)),
                RosenMorse2 => {
                    let a2 = &a * &a;
                    c.extend([
                        ("A > 0", a > zero),
                        ("-A^2 < B", -&a2 < b),
                        ("B < A^2", b < a2),
                    ]);
                }
                Eckart => c.extend([("A > 0", a > zero), ("B > A^2", b > &a * &a)]),
                PoschlTeller => c.extend([("A > 0", a > zero), ("B > A", b > a)]),
                PoschlTeller1 => c.extend([("A > 0", a > zero), ("B > 0", b > zero)]),
                PoschlTeller2 => c.extend([("B > 0", b > zero), ("B < A", b < a)]),
                Scarf1 => c.extend([("-A < B", -&a < b), ("B < A", b < a)]),
                _ => unreachable!(),
            }
            c
        }
    }
}

/// Checks names and presence of the parameters.
pub(super) fn complete(f: Family, p: &Params) -> Result<Params, FamilyError> {
    let names = param_names(f);
    for (k, _) in p.iter() {
        if !names.contains(&k) {
            return Err(FamilyError::UnknownParameter {
                family: f,
                name: k.to_string(),
            });
        }
    }
    let mut out = Params::new();
    for n in names {
        let v = p.get(n).ok_or_else(|| FamilyError::MissingParameter {
            family: f,
            name: n.to_string(),
        })?;
        out.set(n, v.clone());
    }
    Ok(out)
}

pub(super) fn validate(f: Family, p: &Params) -> Result<Params, FamilyError> {
    let p = complete(f, p)?;
    if let Some((c, _)) = constraints(f, &p).into_iter().find(|(_, ok)| !ok) {
        return Err(FamilyError::ConstraintViolation {
            family: f,
            constraint: c.to_string(),
        });
    }
    Ok(p)
}

pub(super) fn satisfies_constraints(f: Family, p: &Params) -> bool {
    constraints(f, p).iter().all(|(_, ok)| *ok)
}

pub(super) fn change_of_variable(f: Family, p: &Params) -> ChangeOfVariable {
    use Family::*;
    let interval = |lo, hi| YImage::Interval(lo, hi);
    let pos = || interval(Endpoint::At(rat(0)), Endpoint::PosInf);
    let unit = || interval(Endpoint::At(rat(0)), Endpoint::At(rat(1)));
    let line = || interval(Endpoint::NegInf, Endpoint::PosInf);
    let alpha = || p.req("alpha").clone();
    let period = |scale: f64| XDomain {
        lo: 0.0,
        hi: scale * PI / rational_to_f64(p.req("alpha")),
    };
    let half = |a: Rational| a / rat(2);
    let (kind, dom, img) = match f {
        Harmonic => (CovKind::Identity, XDomain::REAL_LINE, line()),
        Isotonic => (CovKind::Identity, XDomain::POSITIVE, pos()),
        Kepler => (CovKind::Reciprocal, XDomain::POSITIVE, pos()),
        Morse => (CovKind::ExpNeg { alpha: alpha() }, XDomain::REAL_LINE, pos()),
        RosenMorse1 => (
            CovKind::Tan {
                alpha: alpha(),
                quarter_pi_phase: -2,
            },
            period(1.0),
            line(),
        ),
        RosenMorse2 => (
            CovKind::Tanh {
                alpha: alpha(),
                phase: 0.0,
            },
            XDomain::REAL_LINE,
            interval(Endpoint::At(rat(-1)), Endpoint::At(rat(1))),
        ),
        Eckart => (
            CovKind::Coth { alpha: alpha() },
            XDomain::POSITIVE,
            interval(Endpoint::NegInf, Endpoint::At(rat(-1))),
        ),
        PoschlTeller => (
            CovKind::Tanh {
                alpha: half(alpha()),
                phase: 0.0,
            },
            XDomain::POSITIVE,
            unit(),
        ),
        PoschlTeller1 => (
            CovKind::Tan {
                alpha: alpha(),
                quarter_pi_phase: 0,
            },
            period(0.5),
            pos(),
        ),
        PoschlTeller2 => (
            CovKind::Tanh {
                alpha: alpha(),
                phase: 0.0,
            },
            XDomain::POSITIVE,
            unit(),
        ),
        Scarf1 => (CovKind::HalfTan { alpha: alpha() }, period(1.0), pos()),
        Scarf2 => (
            CovKind::HalfTanhShiftedIPi4 { alpha: alpha() },
            XDomain::REAL_LINE,
            YImage::UpperUnitArc,
        ),
    };
    ChangeOfVariable::new(kind, dom, img)
}

fn g(r: &Rational) -> GaussRational {
    GaussRational::real(r.clone())
}

/// `c2·y² + c1·y + c0 + cm2/y²` as a rational function.
fn laurent(c2: GaussRational, c1: GaussRational, c0: GaussRational, cm2: GaussRational) -> RationalFunction {
    let z = GaussRational::zero();
    let num = Poly::new(vec![cm2, z.clone(), c0, c1, c2]);
    RationalFunction::new(num, Poly::monomial(GaussRational::one(), 2)).expect("y² is nonzero")
}

/// `c1·y + c0 + cm1/y`.
fn laurent1(c1: GaussRational, c0: GaussRational, cm1: GaussRational) -> RationalFunction {
    RationalFunction::new(Poly::new(vec![cm1, c0, c1]), Poly::y()).expect("y is nonzero")
}

/// `(λ, μ)` of a second-category family.
fn lambda_mu(f: Family, p: &Params) -> (GaussRational, GaussRational) {
    let Native { a, b, .. } = native(p);
    let two = rat(2);
    match f {
        Family::PoschlTeller => (g(&((&a + &b) / &two)), g(&((&b - &a) / &two))),
        Family::PoschlTeller1 | Family::PoschlTeller2 => (g(&a), g(&b)),
        Family::Scarf1 => (g(&((&a + &b) / &two)), g(&((&a - &b) / &two))),
        Family::Scarf2 => (
            GaussRational::new(&a / &two, &b / &two),
            GaussRational::new(-&a / &two, &b / &two),
        ),
        _ => unreachable!("not a second-category family"),
    }
}

pub(super) fn w0(f: Family, p: &Params) -> RationalFunction {
    use Family::*;
    let z = GaussRational::zero;
    match f {
        Harmonic => laurent1(g(&(p.req("omega") / rat(2))), z(), z()),
        Isotonic => laurent1(
            g(&(p.req("omega") / rat(2))),
            z(),
            -g(&(p.req("l") + rat(1))),
        ),
        Kepler => {
            let a = p.req("l") + rat(1);
            laurent1(-g(&a), g(&(p.req("gamma") / (rat(2) * &a))), z())
        }
        Morse => {
            let n = native(p);
            laurent1(-g(&n.b), g(&n.a), z())
        }
        RosenMorse1 => {
            let n = native(p);
            laurent1(g(&n.a), -g(&(&n.b / &n.a)), z())
        }
        RosenMorse2 | Eckart => {
            let n = native(p);
            laurent1(g(&n.a), g(&(&n.b / &n.a)), z())
        }
        _ => {
            let (l, m) = lambda_mu(f, p);
            laurent1(l, z(), -m)
        }
    }
}

pub(super) fn potential(f: Family, p: &Params) -> RationalFunction {
    use Family::*;
    let z = GaussRational::zero;
    match f {
        Harmonic => {
            let w = g(p.req("omega"));
            laurent(&(&w * &w) * &GaussRational::ratio(1, 4), z(), -(&w * &GaussRational::ratio(1, 2)), z())
        }
        Isotonic => {
            let w = p.req("omega");
            let l = p.req("l");
            laurent(
                g(&(w * w / rat(4))),
                z(),
                -g(&(w * (l + crate::ratfun::ratio(3, 2)))),
                g(&(l * (l + rat(1)))),
            )
        }
        Kepler => {
            let (gm, l) = (p.req("gamma"), p.req("l"));
            let a = l + rat(1);
            laurent(
                g(&(l * &a)),
                -g(gm),
                g(&(gm * gm / (rat(4) * &a * &a))),
                z(),
            )
        }
        Morse => {
            let Native { a, b, alpha } = native(p);
            laurent(g(&(&b * &b)), -g(&(rat(2) * &a * &b + &alpha * &b)), g(&(&a * &a)), z())
        }
        RosenMorse1 => {
            let Native { a, b, alpha } = native(p);
            laurent(
                g(&(&a * (&a - &alpha))),
                -g(&(rat(2) * &b)),
                g(&(&b * &b / (&a * &a) - &alpha * &a)),
                z(),
            )
        }
        RosenMorse2 => {
            let Native { a, b, alpha } = native(p);
            laurent(
                g(&(&a * (&a + &alpha))),
                g(&(rat(2) * &b)),
                g(&(&b * &b / (&a * &a) - &alpha * &a)),
                z(),
            )
        }
        Eckart => {
            let Native { a, b, alpha } = native(p);
            laurent(
                g(&(&a * (&a - &alpha))),
                g(&(rat(2) * &b)),
                g(&(&b * &b / (&a * &a) + &alpha * &a)),
                z(),
            )
        }
        _ => {
            let (l, m) = lambda_mu(f, p);
            let alpha = native(p).alpha;
            let two = GaussRational::from_integer(2);
            let lm2 = &two * &(&l * &m);
            // V = λ(λ + cl)y² + μ(μ + cm)/y² + c0 - 2λμ
            let (cl, cm, c0) = match f {
                PoschlTeller | Scarf2 => {
                    let ap = g(&(&alpha / rat(2)));
                    (ap.clone(), -&ap, -(&ap * &(&l - &m)))
                }
                PoschlTeller1 => {
                    let ap = g(&alpha);
                    (-&ap, -&ap, -(&ap * &(&l + &m)))
                }
                PoschlTeller2 => {
                    let ap = g(&alpha);
                    (ap.clone(), -&ap, -(&ap * &(&l - &m)))
                }
                Scarf1 => {
                    let ap = g(&(&alpha / rat(2)));
                    (-&ap, -&ap, -(&ap * &(&l + &m)))
                }
                _ => unreachable!(),
            };
            laurent(&l * &(&l + &cl), z(), &c0 - &lm2, &m * &(&m + &cm))
        }
    }
}

pub(super) fn shift(f: Family, p: &Params, k: usize) -> Params {
    use Family::*;
    let k = rat(k as i64);
    let mut out = p.clone();
    match f {
        Harmonic => {}
        Isotonic | Kepler => out.set("l", p.req("l") + &k),
        _ => {
            let Native { a, b, alpha } = native(p);
            let step = &alpha * &k;
            match f {
                Morse | RosenMorse2 | PoschlTeller | Scarf2 => out.set("A", a - step),
                RosenMorse1 | Eckart | Scarf1 => out.set("A", a + step),
                PoschlTeller1 => {
                    out.set("A", a + &step);
                    out.set("B", b + step);
                }
                PoschlTeller2 => {
                    out.set("A", a - &step);
                    out.set("B", b + step);
                }
                _ => unreachable!(),
            }
        }
    }
    out
}

/// Coefficients `(p0, p2)` of `P = p0 + p2·y²` for the quadratic families.
fn p_coeffs(f: Family, p: &Params) -> (Rational, Rational) {
    let alpha = p.req("alpha").clone();
    match f {
        Family::RosenMorse1 | Family::PoschlTeller1 => (alpha.clone(), alpha),
        Family::RosenMorse2 | Family::PoschlTeller2 => (alpha.clone(), -alpha),
        Family::Eckart => (-alpha.clone(), alpha),
        Family::Scarf1 => (&alpha / rat(2), &alpha / rat(2)),
        Family::PoschlTeller | Family::Scarf2 => (&alpha / rat(2), -&alpha / rat(2)),
        _ => unreachable!("P is not quadratic"),
    }
}

/// `R(a) = V₊(y, a) - V₋(y, a₁)`, from the coefficient matching of the
/// partner potentials.
pub(super) fn r_constant(f: Family, p: &Params) -> Rational {
    use Family::*;
    let p1 = shift(f, p, 1);
    match f {
        Harmonic => p.req("omega").clone(),
        Isotonic => rat(2) * p.req("omega"),
        Kepler => {
            let gm = p.req("gamma");
            let a = p.req("l") + rat(1);
            let a1 = &a + rat(1);
            gm * gm / (rat(4) * &a * &a) - gm * gm / (rat(4) * &a1 * &a1)
        }
        Morse => {
            let (a, a1) = (p.req("A"), p1.req("A"));
            a * a - a1 * a1
        }
        RosenMorse1 | RosenMorse2 | Eckart => {
            // V₋ = (a² - p2·a)y² + 2ac·y + c² - p0·a with c = w0(0)
            let (p0, _) = p_coeffs(f, p);
            let c = |q: &Params| w0(f, q).numer().coeff(0).re;
            let (a, a1) = (p.req("A"), p1.req("A"));
            &p0 * (a + a1) + c(p) * c(p) - c(&p1) * c(&p1)
        }
        _ => {
            let (p0, p2) = p_coeffs(f, p);
            let (l, m) = lambda_mu(f, p);
            let (l1, m1) = lambda_mu(f, &p1);
            let r = &(&(&g(&p0) * &(&l + &l1)) + &(&g(&p2) * &(&m + &m1)))
                + &(&GaussRational::from_integer(2) * &(&(&l1 * &m1) - &(&l * &m)));
            r.to_real().expect("shape-invariance constant is real")
        }
    }
}

pub(super) fn phi(f: Family, p: &Params) -> Option<Rational> {
    use Family::*;
    match f {
        Harmonic | Isotonic | Kepler | Morse => None,
        RosenMorse1 => {
            let Native { a, b, .. } = native(p);
            Some(-&a * &a + &b * &b / (&a * &a))
        }
        RosenMorse2 | Eckart => {
            let Native { a, b, .. } = native(p);
            Some(&a * &a + &b * &b / (&a * &a))
        }
        PoschlTeller | PoschlTeller2 | Scarf2 => {
            let (l, m) = lambda_mu(f, p);
            (&l - &m).pow(2).to_real()
        }
        PoschlTeller1 | Scarf1 => {
            let (l, m) = lambda_mu(f, p);
            (&l + &m).pow(2).to_real()
        }
    }
}

/// Whether `w0`, `R` and `φ` are defined at `p`. They have poles where the
/// first coefficient of `w0` divides its constant term.
pub(super) fn is_regular(f: Family, p: &Params) -> bool {
    use Family::*;
    match f {
        Kepler => !(p.req("l") + rat(1)).is_zero(),
        RosenMorse1 | RosenMorse2 | Eckart => !native(p).a.is_zero(),
        _ => true,
    }
}

pub(super) fn closed_energy(f: Family, p: &Params, n: usize) -> Rational {
    use Family::*;
    let nr = rat(n as i64);
    match f {
        Harmonic => nr * p.req("omega"),
        Isotonic => rat(2) * nr * p.req("omega"),
        Kepler => {
            let gm = p.req("gamma");
            let a = p.req("l") + rat(1);
            let an = &a + &nr;
            gm * gm / (rat(4) * &a * &a) - gm * gm / (rat(4) * &an * &an)
        }
        Morse => {
            let Native { a, alpha, .. } = native(p);
            &nr * &alpha * (rat(2) * a - &nr * &alpha)
        }
        _ => {
            let phi0 = phi(f, p).expect("quadratic family");
            let phin = phi(f, &shift(f, p, n)).expect("quadratic family");
            match f {
                PoschlTeller1 | Scarf1 => phin - phi0,
                _ => phi0 - phin,
            }
        }
    }
}

pub(super) fn level_is_bound(f: Family, p: &Params, n: usize) -> bool {
    use Family::*;
    let pn = shift(f, p, n);
    let zero = Rational::zero();
    match f {
        Harmonic | Isotonic | Kepler | RosenMorse1 | PoschlTeller1 | Scarf1 => true,
        Morse | PoschlTeller | Scarf2 => pn.req("A") > &zero,
        RosenMorse2 => {
            let an = pn.req("A");
            an > &zero && an * an > pn.req("B").abs()
        }
        Eckart => {
            let an = pn.req("A");
            an * an < *pn.req("B")
        }
        PoschlTeller2 => pn.req("A") - pn.req("B") > zero,
    }
}

pub(super) fn max_bound(f: Family, p: &Params) -> MaxBound {
    use Family::*;
    if matches!(f, Harmonic | Isotonic | Kepler | RosenMorse1 | PoschlTeller1 | Scarf1) {
        return MaxBound::Unbounded;
    }
    let mut n = 0;
    while n < MAX_LEVEL_SEARCH && level_is_bound(f, p, n + 1) {
        n += 1;
    }
    MaxBound::Index(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::ratio;

    #[test]
    fn r_matches_closed_first_level_everywhere() {
        for f in Family::ALL {
            let p = example(f);
            assert_eq!(r_constant(f, &p), closed_energy(f, &p, 1), "{f}");
            assert!(closed_energy(f, &p, 0).is_zero(), "{f}");
        }
    }

    #[test]
    fn level_counts() {
        let pr = |a, b, al| {
            Params::from_pairs([("A", a), ("B", b), ("alpha", al)])
        };
        assert_eq!(max_bound(Family::Morse, &pr(rat(2), rat(1), rat(1))), MaxBound::Index(1));
        assert_eq!(max_bound(Family::Morse, &pr(ratio(13, 2), rat(1), rat(1))), MaxBound::Index(6));
        // E₁ = 9/4 sits exactly at the continuum edge
        assert_eq!(max_bound(Family::RosenMorse2, &pr(rat(2), rat(1), rat(1))), MaxBound::Index(0));
        assert_eq!(max_bound(Family::RosenMorse2, &pr(rat(7), rat(1), rat(1))), MaxBound::Index(5));
        assert_eq!(max_bound(Family::Eckart, &pr(rat(1), rat(2), rat(1))), MaxBound::Index(0));
        assert_eq!(max_bound(Family::Eckart, &pr(rat(1), rat(10), rat(1))), MaxBound::Index(2));
        assert_eq!(max_bound(Family::PoschlTeller2, &pr(rat(4), rat(1), ratio(1, 2))), MaxBound::Index(2));
    }

    #[test]
    fn rosen_morse_2_level_one() {
        let p = Params::from_pairs([("A", rat(2)), ("B", rat(1)), ("alpha", rat(1))]);
        assert_eq!(closed_energy(Family::RosenMorse2, &p, 1), ratio(9, 4));
    }
}
