//! Scenario files shipped with the crate.

use crate::error::Result;
use crate::scenario::{parse_scenario, Scenario};

/// `(name, text)` for every bundled file.
pub const FILES: &[(&str, &str)] = &[
    ("cube", include_str!("../data/cube.posq")),
    ("three", include_str!("../data/three.posq")),
    ("five", include_str!("../data/five.posq")),
    ("inclusion", include_str!("../data/inclusion.posq")),
    ("quantales", include_str!("../data/quantales.posq")),
];

pub fn text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load(name: &str) -> Option<Result<Scenario>> {
    text(name).map(parse_scenario)
}

/// Every bundled file, parsed.
pub fn all() -> Result<Vec<(&'static str, Scenario)>> {
    FILES
        .iter()
        .map(|(n, t)| parse_scenario(t).map(|s| (*n, s)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::print_scenario;

    #[test]
    fn every_file_parses_and_round_trips() {
        for (name, s) in all().unwrap() {
            let again = parse_scenario(&print_scenario(&s)).unwrap();
            assert_eq!(s, again, "{name}");
        }
    }

    #[test]
    fn three_element_example() {
        let s = load("three").unwrap().unwrap();
        let sg = s.posemigroup("S").unwrap().posemigroup();
        assert_eq!(sg.poset().names(), ["a", "b", "c"]);
        assert_eq!(s.morphisms.len(), 3);
    }
}
