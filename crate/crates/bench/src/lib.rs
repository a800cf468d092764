//! Shared fixtures for the benchmarks.

use tsip::families::{instantiate, Family, FamilyInstance, Params};
use tsip::ratfun::parse_rational;

pub fn instance(family: Family, pairs: &[(&str, &str)]) -> FamilyInstance {
    let params = Params::from_pairs(pairs.iter().map(|(k, v)| (*k, parse_rational(v).expect("literal"))));
    instantiate(family, &params).expect("admissible parameters")
}

/// One instance per family with at least five bound states where the family
/// allows it.
pub fn deep_instances() -> Vec<(Family, FamilyInstance)> {
    let abc = |a, b, al| [("A", a), ("B", b), ("alpha", al)];
    vec![
        (Family::Harmonic, instance(Family::Harmonic, &[("omega", "2")])),
        (Family::Kepler, instance(Family::Kepler, &[("gamma", "3"), ("l", "1/2")])),
        (Family::Morse, instance(Family::Morse, &abc("7", "2", "1/2"))),
        (Family::Eckart, instance(Family::Eckart, &abc("3/2", "20", "1"))),
        (Family::PoschlTeller1, instance(Family::PoschlTeller1, &abc("2", "3", "1"))),
        (Family::Scarf2, instance(Family::Scarf2, &abc("6", "2", "1"))),
    ]
}
