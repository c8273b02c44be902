//! Quiver mutation and a bounded search of the mutation class.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quiver::Quiver;

/// The skew-symmetric exchange matrix `b[i][j] = #(i -> j) - #(j -> i)`.
pub fn exchange_matrix(q: &Quiver) -> Vec<Vec<i64>> {
    let m = q.multiplicities();
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[i][j] as i64 - m[j][i] as i64).collect()).collect()
}

/// Mutates a skew-symmetric matrix at `k`.
pub fn mutate_matrix(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = b.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + b[i][k].signum() * (b[i][k] * b[k][j]).max(0)
            };
        }
    }
    out
}

/// Mutation of `q` at vertex `k`.
///
/// Arrows away from `k` that do not take part in a new composition are kept
/// as they are, so loops and 2-cycles elsewhere survive. New arrows are named
/// `m1`, `m2`, ...
pub fn mutate(q: &Quiver, k: usize) -> Result<Quiver> {
    let n = q.num_vertices();
    if k >= n {
        return Err(Error::UnknownVertex(format!("{k}")));
    }
    let m = q.multiplicities();
    let label = || q.vertices()[k].clone();
    if m[k][k] > 0 {
        return Err(Error::MutationObstructed(label()));
    }
    if (0..n).any(|j| m[k][j] > 0 && m[j][k] > 0) {
        return Err(Error::MutationObstructed(label()));
    }
    let mut c = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == k || j == k {
                c[i][j] = m[j][i];
            } else {
                c[i][j] = m[i][j] + m[i][k] * m[k][j];
            }
        }
    }
    // Cancel 2-cycles, but only between pairs that gained compositions.
    for i in 0..n {
        for j in (i + 1)..n {
            if i == k || j == k {
                continue;
            }
            let touched = m[i][k] * m[k][j] > 0 || m[j][k] * m[k][i] > 0;
            if touched {
                let d = c[i][j].min(c[j][i]);
                c[i][j] -= d;
                c[j][i] -= d;
            }
        }
    }
    let mut out = Quiver::new(q.vertices().iter().cloned())?;
    let mut count = 0;
    for (i, row) in c.iter().enumerate() {
        for (j, &mult) in row.iter().enumerate() {
            for _ in 0..mult {
                count += 1;
                out.add_arrow(format!("m{count}"), i, j)?;
            }
        }
    }
    Ok(out)
}

/// Mutates along a sequence of vertex labels.
pub fn mutate_sequence(q: &Quiver, labels: &[&str]) -> Result<Quiver> {
    let mut cur = q.clone();
    for l in labels {
        let k = cur.vertex_index(l).ok_or_else(|| Error::UnknownVertex(String::from(*l)))?;
        cur = mutate(&cur, k)?;
    }
    Ok(cur)
}

/// Lexicographically smallest adjacency matrix over all vertex orderings.
pub fn canonical_form(m: &[Vec<usize>]) -> Vec<usize> {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let flat = |p: &[usize]| -> Vec<usize> {
        let mut v = Vec::with_capacity(n * n);
        for &i in p {
            for &j in p {
                v.push(m[i][j]);
            }
        }
        v
    };
    let mut best = flat(&perm);
    // Heap's algorithm.
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let f = flat(&perm);
            if f < best {
                best = f;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Breadth-first search for an acyclic quiver within `max_depth` mutations.
///
/// Returns the labels to mutate at, in order. `None` only means nothing was
/// found within the bound. Quivers are deduplicated up to isomorphism.
pub fn find_acyclic_in_mutation_class(q: &Quiver, max_depth: usize) -> Option<Vec<String>> {
    if q.is_acyclic() {
        return Some(Vec::new());
    }
    let mut seen = BTreeSet::new();
    seen.insert(canonical_form(&q.multiplicities()));
    let mut queue = VecDeque::new();
    queue.push_back((q.clone(), Vec::<String>::new()));
    while let Some((cur, seq)) = queue.pop_front() {
        if seq.len() >= max_depth {
            continue;
        }
        for k in 0..cur.num_vertices() {
            let Ok(next) = mutate(&cur, k) else {
                continue;
            };
            let mut s = seq.clone();
            s.push(cur.vertices()[k].clone());
            if next.is_acyclic() {
                return Some(s);
            }
            if seen.insert(canonical_form(&next.multiplicities())) {
                queue.push_back((next, s));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> Quiver {
        let mut q = Quiver::new(["1", "2"]).unwrap();
        q.add_arrow_by_label("a", "1", "2").unwrap();
        q
    }

    #[test]
    fn a2_reverses() {
        let m = mutate(&a2(), 0).unwrap();
        assert_eq!(m.multiplicities(), vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(m.arrows()[0].name, "m1");
    }

    #[test]
    fn obstructed_at_two_cycle() {
        let mut q = a2();
        q.add_arrow_by_label("b", "2", "1").unwrap();
        assert!(matches!(mutate(&q, 0), Err(Error::MutationObstructed(_))));
    }

    #[test]
    fn loops_elsewhere_survive() {
        let mut q = a2();
        q.add_vertex("3").unwrap();
        q.add_arrow_by_label("l", "3", "3").unwrap();
        let m = mutate(&q, 0).unwrap();
        assert_eq!(m.multiplicities()[2][2], 1);
    }

    #[test]
    fn oriented_triangle_becomes_path() {
        let mut q = Quiver::new(["1", "2", "3"]).unwrap();
        q.add_arrow_by_label("a", "1", "2").unwrap();
        q.add_arrow_by_label("b", "2", "3").unwrap();
        q.add_arrow_by_label("c", "3", "1").unwrap();
        let m = mutate(&q, 1).unwrap();
        assert!(m.is_acyclic());
        assert_eq!(m.arrows().len(), 2);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let a = vec![vec![0, 1, 0], vec![0, 0, 2], vec![0, 0, 0]];
        let b = vec![vec![0, 0, 0], vec![2, 0, 0], vec![0, 1, 0]];
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    /// Independent three-step rule acting on arrow lists.
    fn three_step(m: &[Vec<usize>], k: usize) -> Vec<Vec<usize>> {
        let n = m.len();
        let mut arrows: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for _ in 0..m[i][j] {
                    arrows.push((i, j));
                }
            }
        }
        let ins: Vec<usize> = arrows.iter().filter(|a| a.1 == k).map(|a| a.0).collect();
        let outs: Vec<usize> = arrows.iter().filter(|a| a.0 == k).map(|a| a.1).collect();
        for &i in &ins {
            for &j in &outs {
                arrows.push((i, j));
            }
        }
        for a in arrows.iter_mut() {
            if a.0 == k || a.1 == k {
                *a = (a.1, a.0);
            }
        }
        loop {
            let pos = (0..arrows.len()).find_map(|x| {
                let (i, j) = arrows[x];
                let y = arrows.iter().position(|&b| b == (j, i))?;
                Some((x, y))
            });
            match pos {
                Some((x, y)) => {
                    let (hi, lo) = if x > y { (x, y) } else { (y, x) };
                    arrows.remove(hi);
                    arrows.remove(lo);
                }
                None => break,
            }
        }
        let mut out = vec![vec![0; n]; n];
        for (i, j) in arrows {
            out[i][j] += 1;
        }
        out
    }

    fn cluster_quiver() -> impl Strategy<Value = Quiver> {
        (2usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(-2i64..=2, n * (n - 1) / 2).prop_map(move |w| {
                let mut q = Quiver::new((1..=n).map(|i| alloc::format!("{i}"))).unwrap();
                let mut idx = 0;
                let mut c = 0;
                for i in 0..n {
                    for j in (i + 1)..n {
                        let x = w[idx];
                        idx += 1;
                        for _ in 0..x.unsigned_abs() {
                            c += 1;
                            let (s, t) = if x > 0 { (i, j) } else { (j, i) };
                            q.add_arrow(alloc::format!("x{c}"), s, t).unwrap();
                        }
                    }
                }
                q
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn mutation_is_an_involution(q in cluster_quiver(), k in 0usize..6) {
            let k = k % q.num_vertices();
            let once = mutate(&q, k).unwrap();
            let twice = mutate(&once, k).unwrap();
            prop_assert_eq!(twice.multiplicities(), q.multiplicities());
            prop_assert_eq!(once.num_vertices(), q.num_vertices());
        }

        #[test]
        fn mutation_matches_exchange_matrix_and_arrow_rule(q in cluster_quiver(), k in 0usize..6) {
            let k = k % q.num_vertices();
            let once = mutate(&q, k).unwrap();
            prop_assert_eq!(exchange_matrix(&once), mutate_matrix(&exchange_matrix(&q), k));
            prop_assert_eq!(once.multiplicities(), three_step(&q.multiplicities(), k));
        }
    }
}
