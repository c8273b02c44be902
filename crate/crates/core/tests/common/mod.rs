#![allow(dead_code)]

use quiverkit_core::{BasedAlgebra, Field, FieldSpec, Path, Presentation, Quiver, Relation};

pub type Rel<'a> = &'a [(i64, &'a [&'a str])];

pub fn presentation(field: FieldSpec, vs: &[&str], arrows: &[(&str, &str, &str)], rels: &[Rel]) -> Presentation {
    let mut q = Quiver::new(vs.iter().copied()).unwrap();
    for &(n, s, t) in arrows {
        q.add_arrow_by_label(n, s, t).unwrap();
    }
    let path = |names: &[&str]| Path::from_arrows(&q, names.iter().map(|n| q.arrow_index(n).unwrap()).collect()).unwrap();
    let rels = rels.iter().map(|r| Relation { terms: r.iter().map(|&(c, w)| (c, path(w))).collect() }).collect();
    Presentation::new(field, q.clone(), rels).unwrap()
}

pub fn build<K: Field>(k: K, vs: &[&str], arrows: &[(&str, &str, &str)], rels: &[Rel]) -> BasedAlgebra<K> {
    let p = presentation(k.spec(), vs, arrows, rels);
    BasedAlgebra::from_presentation(k, &p).unwrap()
}

pub const D4: [(&str, &str, &str); 4] = [("a", "1", "2"), ("b", "2", "4"), ("g", "1", "3"), ("d", "3", "4")];
pub const V4: [&str; 4] = ["1", "2", "3", "4"];

pub fn a_n<K: Field>(k: K, n: usize) -> BasedAlgebra<K> {
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let vs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let names: Vec<String> = (1..n).map(|i| format!("a{i}")).collect();
    let arrows: Vec<(&str, &str, &str)> = (0..n - 1).map(|i| (names[i].as_str(), vs[i], vs[i + 1])).collect();
    build(k, &vs, &arrows, &[])
}

pub fn tilted<K: Field>(k: K) -> BasedAlgebra<K> {
    build(k, &V4, &D4, &[&[(1, &["a", "b"]), (1, &["g", "d"])]])
}

pub fn cluster_tilted<K: Field>(k: K) -> BasedAlgebra<K> {
    let mut arrows = D4.to_vec();
    arrows.push(("e", "4", "1"));
    build(
        k,
        &V4,
        &arrows,
        &[
            &[(1, &["a", "b"]), (1, &["g", "d"])],
            &[(1, &["e", "a"])],
            &[(1, &["e", "g"])],
            &[(1, &["b", "e"])],
            &[(1, &["d", "e"])],
        ],
    )
}

/// The cluster-tilted algebra obtained by adding a source 5 with arrows to
/// 1, 2 and 3.
pub fn cluster_tilted_bp<K: Field>(k: K) -> BasedAlgebra<K> {
    let mut arrows = D4.to_vec();
    arrows.extend([("e", "4", "1"), ("x", "5", "1"), ("y", "5", "2"), ("z", "5", "3")]);
    build(
        k,
        &["1", "2", "3", "4", "5"],
        &arrows,
        &[
            &[(1, &["a", "b"]), (1, &["g", "d"])],
            &[(1, &["e", "a"])],
            &[(1, &["e", "g"])],
            &[(1, &["b", "e"])],
            &[(1, &["d", "e"])],
        ],
    )
}

/// The five-vertex cluster-tilted algebra with arrows 5 -> 2 and 4 -> 5.
pub fn cluster_tilted_b5<K: Field>(k: K) -> BasedAlgebra<K> {
    let mut arrows = D4.to_vec();
    arrows.extend([("e", "4", "1"), ("r", "5", "2"), ("s", "4", "5")]);
    build(
        k,
        &["1", "2", "3", "4", "5"],
        &arrows,
        &[
            &[(1, &["b", "e"])],
            &[(1, &["e", "a"]), (1, &["s", "r"])],
            &[(1, &["d", "e"])],
            &[(1, &["e", "g"])],
            &[(1, &["b", "s"])],
            &[(1, &["a", "b"]), (1, &["g", "d"])],
            &[(1, &["r", "b"])],
        ],
    )
}
