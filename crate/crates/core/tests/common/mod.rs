#![allow(dead_code)]

use proptest::prelude::*;
use tsip::families::{instantiate, Family, FamilyInstance, Params};
use tsip::ratfun::{parse_rational, Rational};

pub fn params(pairs: &[(&str, &str)]) -> Params {
    Params::from_pairs(
        pairs
            .iter()
            .map(|(k, v)| (*k, parse_rational(v).expect("valid rational literal"))),
    )
}

pub fn q(s: &str) -> Rational {
    parse_rational(s).expect("valid rational literal")
}

/// Three admissible parameter points per family, chosen so that the bounded
/// families keep several bound states.
pub fn parameter_sets(f: Family) -> Vec<Params> {
    let abc = |a: &str, b: &str, al: &str| params(&[("A", a), ("B", b), ("alpha", al)]);
    match f {
        Family::Harmonic => vec![
            params(&[("omega", "2")]),
            params(&[("omega", "3")]),
            params(&[("omega", "1/2")]),
        ],
        Family::Isotonic => vec![
            params(&[("omega", "2"), ("l", "1")]),
            params(&[("omega", "3"), ("l", "1/2")]),
            params(&[("omega", "1/2"), ("l", "2")]),
        ],
        Family::Kepler => vec![
            params(&[("gamma", "2"), ("l", "1")]),
            params(&[("gamma", "3"), ("l", "1/2")]),
            params(&[("gamma", "5/2"), ("l", "2")]),
        ],
        Family::Morse => vec![abc("2", "1", "1"), abc("13/2", "1", "1"), abc("7", "2", "1/2")],
        Family::RosenMorse1 => vec![abc("2", "1", "1"), abc("3", "2", "1/2"), abc("5/2", "-3", "1")],
        Family::RosenMorse2 => vec![abc("3", "1", "1"), abc("7", "1", "1"), abc("6", "2", "1/2")],
        Family::Eckart => vec![abc("1", "10", "1"), abc("3/2", "20", "1"), abc("2", "30", "1/2")],
        Family::PoschlTeller => vec![abc("2", "3", "1"), abc("5", "7", "1"), abc("9/2", "6", "1/2")],
        Family::PoschlTeller1 => vec![abc("2", "3", "1"), abc("1", "2", "1"), abc("3/2", "5/2", "2")],
        Family::PoschlTeller2 => vec![abc("4", "1", "1"), abc("10", "1", "1"), abc("12", "2", "1/2")],
        Family::Scarf1 => vec![abc("2", "1", "1"), abc("3", "-2", "1"), abc("5/2", "1/2", "1/2")],
        Family::Scarf2 => vec![abc("3", "1", "1"), abc("6", "2", "1"), abc("9/2", "1", "1/2")],
    }
}

pub fn instances(f: Family) -> Vec<FamilyInstance> {
    parameter_sets(f)
        .iter()
        .map(|p| instantiate(f, p).unwrap_or_else(|e| panic!("{f} {p}: {e}")))
        .collect()
}

pub fn example(f: Family) -> FamilyInstance {
    instantiate(f, &f.descriptor().example).expect("catalog example is admissible")
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=7).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != Rational::from_integer(0.into()))
}
