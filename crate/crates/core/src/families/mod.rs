//! Catalog of the twelve translationally shape-invariant families.
//!
//! Every family is written in a variable `y` with `dy/dx = P(y)`, where the
//! potential `V(y)` (ground-state energy shifted to zero) and the ground-state
//! RS function `w0(y)` are rational. Shape invariance shifts the native
//! parameters by a fixed translation.

mod catalog;
mod cov;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::ratfun::{parse_rational, rational_to_wire, GaussRational, Poly, Rational, RatfunError, RationalFunction};

pub use catalog::FamilyDescriptor;
pub use cov::{ChangeOfVariable, CovKind, XDomain, YImage};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("{family}: unknown parameter {name:?}")]
    UnknownParameter { family: Family, name: String },
    #[error("{family}: missing parameter {name:?}")]
    MissingParameter { family: Family, name: String },
    #[error("{family}: constraint violated: {constraint}")]
    ConstraintViolation { family: Family, constraint: String },
    #[error("level {n} is beyond the last bound state (index {max})")]
    IndexBeyondBound { n: usize, max: usize },
    #[error("{family}: telescoped energy {telescoped} differs from closed form {closed} at n = {n}")]
    InconsistentSpectrum {
        family: Family,
        n: usize,
        telescoped: Rational,
        closed: Rational,
    },
    #[error("{family}: {params} is a singular point of the family")]
    SingularPoint { family: Family, params: String },
    #[error("{family}: ground state does not solve the Riccati equation, residual {residual}")]
    GroundStateIdentity { family: Family, residual: String },
    #[error(transparent)]
    Ratfun(#[from] RatfunError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Harmonic,
    Isotonic,
    Kepler,
    Morse,
    RosenMorse1,
    RosenMorse2,
    Eckart,
    PoschlTeller,
    PoschlTeller1,
    PoschlTeller2,
    Scarf1,
    Scarf2,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::Harmonic,
        Family::Isotonic,
        Family::Kepler,
        Family::Morse,
        Family::RosenMorse1,
        Family::RosenMorse2,
        Family::Eckart,
        Family::PoschlTeller,
        Family::PoschlTeller1,
        Family::PoschlTeller2,
        Family::Scarf1,
        Family::Scarf2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Harmonic => "harmonic",
            Family::Isotonic => "isotonic",
            Family::Kepler => "kepler",
            Family::Morse => "morse",
            Family::RosenMorse1 => "rosen-morse-1",
            Family::RosenMorse2 => "rosen-morse-2",
            Family::Eckart => "eckart",
            Family::PoschlTeller => "poschl-teller",
            Family::PoschlTeller1 => "poschl-teller-1",
            Family::PoschlTeller2 => "poschl-teller-2",
            Family::Scarf1 => "scarf-1",
            Family::Scarf2 => "scarf-2",
        }
    }

    pub fn category(self) -> Category {
        catalog::category(self)
    }

    pub fn descriptor(self) -> FamilyDescriptor {
        catalog::descriptor(self)
    }

    /// Native parameter names, in canonical order.
    pub fn param_names(self) -> &'static [&'static str] {
        catalog::param_names(self)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Sign in `dy/dx = α ± α y²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "branch", rename_all = "kebab-case")]
pub enum Category {
    FirstCategory(Branch),
    SecondCategory(Branch),
    ExceptionalHarmonic,
    ExceptionalMorse,
    ExceptionalKepler,
    ExceptionalIsotonic,
}

impl Category {
    /// Whether the potential reduces to the harmonic (as opposed to the
    /// isotonic) canonical form.
    pub fn is_harmonic_type(self) -> bool {
        matches!(
            self,
            Category::FirstCategory(_)
                | Category::ExceptionalHarmonic
                | Category::ExceptionalMorse
                | Category::ExceptionalKepler
        )
    }
}

/// Native parameter values by name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Params(BTreeMap<String, Rational>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from `(name, value)` pairs; Greek aliases (`α`, `ω`, `γ`) are
    /// accepted.
    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, Rational)>,
        S: AsRef<str>,
    {
        let mut p = Self::new();
        for (k, v) in pairs {
            p.set(k.as_ref(), v);
        }
        p
    }

    /// Parses `name=value` strings where value is `p/q`, an integer or a
    /// terminating decimal.
    pub fn parse_assignments<I, S>(items: I) -> Result<Self, RatfunError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut p = Self::new();
        for item in items {
            let item = item.as_ref();
            let Some(eq) = item.find('=') else {
                return Err(RatfunError::Parse {
                    input: item.to_string(),
                    position: item.len(),
                    message: "expected name=value".into(),
                });
            };
            let value = parse_rational(&item[eq + 1..]).map_err(|e| match e {
                RatfunError::Parse {
                    position, message, ..
                } => RatfunError::Parse {
                    input: item.to_string(),
                    position: position + eq + 1,
                    message,
                },
                other => other,
            })?;
            p.set(item[..eq].trim(), value);
        }
        Ok(p)
    }

    pub fn set(&mut self, name: &str, value: Rational) {
        self.0.insert(canonical_name(name).to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.get(canonical_name(name))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    fn req(&self, name: &str) -> &Rational {
        self.get(name)
            .unwrap_or_else(|| panic!("parameter {name} validated at construction"))
    }
}

fn canonical_name(name: &str) -> &str {
    match name {
        "α" | "a" => "alpha",
        "ω" | "w" => "omega",
        "γ" | "g" => "gamma",
        other => other,
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<&str, String> = self
            .0
            .iter()
            .map(|(k, v)| (k.as_str(), rational_to_wire(v)))
            .collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Params {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = BTreeMap::<String, String>::deserialize(d)?;
        let mut p = Params::new();
        for (k, v) in m {
            p.set(&k, parse_rational(&v).map_err(serde::de::Error::custom)?);
        }
        Ok(p)
    }
}

/// Index of the highest bound state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MaxBound {
    Unbounded,
    Index(usize),
}

impl MaxBound {
    pub fn admits(self, n: usize) -> bool {
        match self {
            MaxBound::Unbounded => true,
            MaxBound::Index(m) => n <= m,
        }
    }

    /// `min(n, max index)`.
    pub fn clamp(self, n: usize) -> usize {
        match self {
            MaxBound::Unbounded => n,
            MaxBound::Index(m) => n.min(m),
        }
    }
}

/// A concrete member of one of the catalog families.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    family: Family,
    params: Params,
    cov: ChangeOfVariable,
    potential: RationalFunction,
    w0: RationalFunction,
    max_bound: MaxBound,
    formal: bool,
    energy_bias: Rational,
}

/// Public index of the catalog.
pub fn list_families() -> Vec<FamilyDescriptor> {
    Family::ALL.iter().map(|f| f.descriptor()).collect()
}

/// Validates `params` against the family constraints and builds the instance.
pub fn instantiate(family: Family, params: &Params) -> Result<FamilyInstance, FamilyError> {
    let params = catalog::validate(family, params)?;
    FamilyInstance::build(family, params, false)
}

/// Like [`instantiate`] but looks the family up by name.
pub fn instantiate_named(name: &str, params: &Params) -> Result<FamilyInstance, FamilyError> {
    instantiate(name.parse()?, params)
}

impl FamilyInstance {
    fn build(family: Family, params: Params, formal: bool) -> Result<Self, FamilyError> {
        if !catalog::is_regular(family, &params) {
            return Err(FamilyError::SingularPoint {
                family,
                params: params.to_string(),
            });
        }
        let cov = catalog::change_of_variable(family, &params);
        let w0 = catalog::w0(family, &params);
        let potential = catalog::potential(family, &params);
        let max_bound = catalog::max_bound(family, &params);
        let inst = Self {
            family,
            params,
            cov,
            potential,
            w0,
            max_bound,
            formal,
            energy_bias: Rational::zero(),
        };
        let residual = inst.ground_state_residual();
        if !residual.is_zero() {
            return Err(FamilyError::GroundStateIdentity {
                family,
                residual: residual.to_string(),
            });
        }
        Ok(inst)
    }

    /// Builds an instance without checking the parameter constraints. The
    /// ground-state identity still holds, but levels of such an instance may
    /// be non-normalizable.
    pub fn formal(family: Family, params: &Params) -> Result<Self, FamilyError> {
        let params = catalog::complete(family, params)?;
        Self::build(family, params, true)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    pub fn category(&self) -> Category {
        self.family.category()
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn param(&self, name: &str) -> Option<&Rational> {
        self.params.get(name)
    }

    pub fn cov(&self) -> &ChangeOfVariable {
        &self.cov
    }

    pub fn p(&self) -> &Poly {
        &self.cov.p
    }

    pub fn p_function(&self) -> RationalFunction {
        RationalFunction::from_poly(self.cov.p.clone())
    }

    /// `V(y)`, normalized so that the ground state has zero energy.
    pub fn potential(&self) -> &RationalFunction {
        &self.potential
    }

    /// Ground-state RS function (superpotential) `w0(y)`.
    pub fn w0(&self) -> &RationalFunction {
        &self.w0
    }

    pub fn max_bound_index(&self) -> MaxBound {
        self.max_bound
    }

    /// Whether this instance bypassed the parameter constraints.
    pub fn is_formal(&self) -> bool {
        self.formal
    }

    /// Roots of `P` together with the poles of `w0` (only `y = 0` occurs).
    /// These are the denominator roots of every `w_n` other than its nodes.
    pub fn known_roots(&self) -> Vec<GaussRational> {
        let mut roots = self.cov.p_roots();
        let zero = GaussRational::zero();
        if self.w0.denom().root_multiplicity(&zero) > 0 && !roots.contains(&zero) {
            roots.push(zero);
        }
        roots
    }

    /// `-P·w0' + w0² - V`, the zero function for a consistent instance.
    pub fn ground_state_residual(&self) -> RationalFunction {
        let pw = &self.p_function() * &self.w0.derivative();
        &(&(&self.w0 * &self.w0) - &pw) - &self.potential
    }

    /// Partner potential `V₊ = V + 2·P·w0'`.
    pub fn partner_potential(&self) -> RationalFunction {
        let pw = &self.p_function() * &self.w0.derivative();
        &self.potential + &(&pw + &pw)
    }

    /// Parameters after `k` shape-invariance translations.
    pub fn param_shift(&self, k: usize) -> Params {
        catalog::shift(self.family, &self.params, k)
    }

    /// The instance at shifted parameters `a_k`.
    pub fn shifted(&self, k: usize) -> Result<Self, FamilyError> {
        if k == 0 {
            return Ok(self.clone());
        }
        let mut inst = Self::build(self.family, self.param_shift(k), true)?;
        inst.formal = self.formal || !catalog::satisfies_constraints(self.family, &inst.params);
        inst.energy_bias = self.energy_bias.clone();
        Ok(inst)
    }

    /// Shape-invariance constant `R(a)` from its closed expression.
    pub fn r_constant(&self) -> Rational {
        catalog::r_constant(self.family, &self.params) + &self.energy_bias
    }

    /// Fails when some `a_k` with `k ≤ n` is a singular point.
    fn check_chain(&self, n: usize) -> Result<(), FamilyError> {
        match (0..=n).map(|k| self.param_shift(k)).find(|p| !catalog::is_regular(self.family, p)) {
            Some(p) => Err(FamilyError::SingularPoint {
                family: self.family,
                params: p.to_string(),
            }),
            None => Ok(()),
        }
    }

    /// `Σ_{k<n} R(a_k)`.
    pub fn telescoped_energy(&self, n: usize) -> Result<Rational, FamilyError> {
        self.check_chain(n)?;
        Ok((0..n)
            .map(|k| {
                catalog::r_constant(self.family, &catalog::shift(self.family, &self.params, k))
                    + &self.energy_bias
            })
            .fold(Rational::zero(), |acc, r| acc + r))
    }

    /// Closed-form energy from the family's φ-function.
    pub fn closed_energy(&self, n: usize) -> Result<Rational, FamilyError> {
        self.check_chain(n)?;
        Ok(catalog::closed_energy(self.family, &self.params, n)
            + &self.energy_bias * Rational::from_integer(n.into()))
    }

    /// `φ(a)` when the family has one.
    pub fn phi(&self) -> Option<Rational> {
        catalog::phi(self.family, &self.params)
    }

    /// Exact `E_n`, cross-checked between telescoped and closed forms.
    pub fn energy(&self, n: usize) -> Result<Rational, FamilyError> {
        if let MaxBound::Index(m) = self.max_bound {
            if n > m && !self.formal {
                return Err(FamilyError::IndexBeyondBound { n, max: m });
            }
        }
        self.energy_formal(n)
    }

    /// `E_n` without the bound-state check.
    pub fn energy_formal(&self, n: usize) -> Result<Rational, FamilyError> {
        let telescoped = self.telescoped_energy(n)?;
        let closed = self.closed_energy(n)?;
        if telescoped != closed {
            return Err(FamilyError::InconsistentSpectrum {
                family: self.family,
                n,
                telescoped,
                closed,
            });
        }
        Ok(closed)
    }

    /// Test hook: every shape-invariance constant is offset by `delta`,
    /// giving a deliberately wrong spectrum.
    #[doc(hidden)]
    pub fn with_energy_perturbation(&self, delta: Rational) -> Self {
        let mut inst = self.clone();
        inst.energy_bias = delta;
        inst
    }

    /// Stable identifier of the exact parameter point.
    pub fn key(&self) -> (Family, Params, Rational) {
        (self.family, self.params.clone(), self.energy_bias.clone())
    }

    /// Whether the potential is bounded below by its continuum threshold at
    /// level `n`, i.e. whether level `n` is a bound state.
    pub fn level_is_bound(&self, n: usize) -> bool {
        catalog::level_is_bound(self.family, &self.params, n)
    }

    /// Whether all three of `A`, `B`, `α` (or the family's own parameters)
    /// are strictly positive; a convenience for generators.
    pub fn params_positive(&self) -> bool {
        self.params.iter().all(|(_, v)| v.is_positive())
    }
}
