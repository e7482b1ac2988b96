//! Named lattice presets shipped as JSON data files.
//!
//! `u` is the hyperbolic plane, `u-m2` adds a square -2 class, `u2-m2` is
//! the rank-5 workhorse with Picard rank 1, `u2-m2-e` the same lattice with
//! a rank-2 NS sublattice, and `k3n2` the rank-23 lattice of a fourfold
//! (three hyperbolic planes, two negative E8 blocks and a square -2 class).
//! `k3n2` is large; command-line access is gated behind `--allow-large`.

use crate::error::{Error, Result};
use crate::quadratic_space::{Space, SpaceInput, SplitSpace};

const PRESETS: &[(&str, &str)] = &[
    ("u", include_str!("../presets/u.json")),
    ("u-m2", include_str!("../presets/u-m2.json")),
    ("u2-m2", include_str!("../presets/u2-m2.json")),
    ("u2-m2-e", include_str!("../presets/u2-m2-e.json")),
    ("k3n2", include_str!("../presets/k3n2.json")),
];

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).collect()
}

/// Presets expensive enough to require explicit opt-in.
pub fn is_large(name: &str) -> bool {
    name == "k3n2"
}

pub fn load(name: &str) -> Result<SpaceInput> {
    let body = PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, b)| *b)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
    SpaceInput::from_json_str(body)
}

pub fn space(name: &str) -> Result<Space> {
    load(name)?.space()
}

pub fn split(name: &str) -> Result<SplitSpace> {
    load(name)?.split()
}

pub fn space_u() -> Result<Space> {
    space("u")
}

pub fn space_u_m2() -> Result<Space> {
    space("u-m2")
}

pub fn space_u2_m2() -> Result<Space> {
    space("u2-m2")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_load_and_split() {
        for name in preset_names() {
            let input = load(name).unwrap();
            let space = input.space().unwrap();
            let split = input.split().unwrap();
            assert_eq!(split.rho() + split.tr_dim(), space.dim(), "{name}");
            // ns ⊥ tr under q
            for a in &split.ns_basis {
                for t in &split.tr_basis {
                    assert!(num::Zero::is_zero(&space.pair(a, t).unwrap()), "{name}");
                }
            }
            // l is a valid ample stand-in
            let l = input.l_class().unwrap();
            assert!(!num::Zero::is_zero(&space.q(&l).unwrap()), "{name}: q(l) != 0");
        }
    }

    #[test]
    fn expected_ranks() {
        assert_eq!(space("u").unwrap().dim(), 2);
        assert_eq!(space("u-m2").unwrap().dim(), 3);
        assert_eq!(space("u2-m2").unwrap().dim(), 5);
        assert_eq!(split("u2-m2-e").unwrap().rho(), 2);
        assert_eq!(space("k3n2").unwrap().dim(), 23);
        assert!(is_large("k3n2"));
        assert!(!is_large("u2-m2"));
    }

    #[test]
    fn unknown_preset_errors() {
        assert!(matches!(load("nope"), Err(Error::UnknownPreset(_))));
    }
}
