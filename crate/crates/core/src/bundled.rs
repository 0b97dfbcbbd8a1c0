//! Targets shipped with the crate, embedded from the `targets/` directory.

use crate::target::GwTarget;

pub const P1_JSON: &str = include_str!("../../../targets/p1.json");
pub const P2_JSON: &str = include_str!("../../../targets/p2.json");
pub const P3_JSON: &str = include_str!("../../../targets/p3.json");
pub const P1XP1_JSON: &str = include_str!("../../../targets/p1xp1.json");
pub const ORBIFOLD_JSON: &str = include_str!("../../../targets/orbifold.json");

pub const NAMES: [&str; 5] = ["p1", "p2", "p3", "p1xp1", "orbifold"];

fn load(text: &str) -> GwTarget {
    GwTarget::from_json(text).expect("bundled target parses")
}

pub fn p1() -> GwTarget {
    load(P1_JSON)
}

pub fn p2() -> GwTarget {
    load(P2_JSON)
}

pub fn p3() -> GwTarget {
    load(P3_JSON)
}

pub fn p1xp1() -> GwTarget {
    load(P1XP1_JSON)
}

/// A data-model example with `r = 3`, fractional ages and a nontrivial involution.
pub fn orbifold() -> GwTarget {
    load(ORBIFOLD_JSON)
}

pub fn all() -> Vec<GwTarget> {
    vec![p1(), p2(), p3(), p1xp1(), orbifold()]
}

pub fn by_name(name: &str) -> Option<GwTarget> {
    match name.to_ascii_lowercase().as_str() {
        "p1" => Some(p1()),
        "p2" => Some(p2()),
        "p3" => Some(p3()),
        "p1xp1" => Some(p1xp1()),
        "orbifold" => Some(orbifold()),
        _ => None,
    }
}
