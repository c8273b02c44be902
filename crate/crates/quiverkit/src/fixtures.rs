//! Presentation files shipped with the crate.

pub const D4_CLUSTER_TILTED: &str = include_str!("../fixtures/d4_clustertilted.q");
pub const D4_TILTED: &str = include_str!("../fixtures/d4_tilted.q");
pub const CM_S2: &str = include_str!("../fixtures/cm_s2.q");
pub const BPRIME: &str = include_str!("../fixtures/bprime.q");
pub const D4_BP: &str = include_str!("../fixtures/d4_bp.q");
pub const EX310: &str = include_str!("../fixtures/ex310.q");
pub const EX310_EXT: &str = include_str!("../fixtures/ex310_ext.q");

/// `(file name, contents)` for every fixture.
pub const ALL: &[(&str, &str)] = &[
    ("d4_clustertilted.q", D4_CLUSTER_TILTED),
    ("d4_tilted.q", D4_TILTED),
    ("cm_s2.q", CM_S2),
    ("bprime.q", BPRIME),
    ("d4_bp.q", D4_BP),
    ("ex310.q", EX310),
    ("ex310_ext.q", EX310_EXT),
];

/// Looks a fixture up by file name, with or without the `.q` suffix.
pub fn get(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".q").unwrap_or(name);
    ALL.iter().find(|(f, _)| f.strip_suffix(".q") == Some(name)).map(|(_, t)| *t)
}
