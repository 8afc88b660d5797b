//! Example complexes shipped with the crate.

use cubegrowth_core::CubicalComplex;

use crate::format::parse_complex;

const BUNDLED: [(&str, &str); 6] = [
    ("fig1", include_str!("../data/fig1.json")),
    ("square", include_str!("../data/square.json")),
    ("cube3", include_str!("../data/cube3.json")),
    ("tree4", include_str!("../data/tree4.json")),
    ("flagfail", include_str!("../data/flagfail.json")),
    ("genus2", include_str!("../data/genus2.json")),
];

/// `(name, document)` for every bundled example.
pub fn bundled_examples() -> Vec<(&'static str, &'static str)> {
    BUNDLED.to_vec()
}

/// The bundled document called `name`, with or without a `.json` suffix.
pub fn bundled_document(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, d)| *d)
}

pub fn bundled(name: &str) -> Option<CubicalComplex> {
    bundled_document(name).map(|d| parse_complex(d).expect("bundled examples are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_load() {
        for (name, doc) in bundled_examples() {
            let c = parse_complex(doc).unwrap();
            assert_eq!(c.name(), name);
        }
        assert!(bundled("genus2.json").is_some());
        assert!(bundled("nope").is_none());
    }
}
