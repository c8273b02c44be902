//! Finite quivers, paths and presentations by relations.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with labelled vertices and named arrows.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut q = Quiver::default();
        for v in vertices {
            q.add_vertex(v)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize> {
        let label = label.into();
        if self.vertices.contains(&label) {
            return Err(Error::Duplicate(label));
        }
        self.vertices.push(label);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, source: usize, target: usize) -> Result<usize> {
        let name = name.into();
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(Error::Duplicate(name));
        }
        for v in [source, target] {
            if v >= self.vertices.len() {
                return Err(Error::UnknownVertex(v.to_string()));
            }
        }
        self.arrows.push(Arrow { name, source, target });
        Ok(self.arrows.len() - 1)
    }

    /// Adds an arrow between vertices given by label.
    pub fn add_arrow_by_label(&mut self, name: impl Into<String>, source: &str, target: &str) -> Result<usize> {
        let s = self.vertex_index(source).ok_or_else(|| Error::UnknownVertex(source.to_string()))?;
        let t = self.vertex_index(target).ok_or_else(|| Error::UnknownVertex(target.to_string()))?;
        self.add_arrow(name, s, t)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// `m[i][j]` is the number of arrows `i -> j`.
    pub fn multiplicities(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0; n]; n];
        for a in &self.arrows {
            m[a.source][a.target] += 1;
        }
        m
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        seen == n
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The full subquiver on the given vertices, in the given order.
    pub fn full_subquiver(&self, keep: &[usize]) -> Quiver {
        let mut pos = BTreeMap::new();
        for (i, &v) in keep.iter().enumerate() {
            pos.insert(v, i);
        }
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let arrows = self
            .arrows
            .iter()
            .filter_map(|a| {
                Some(Arrow { name: a.name.clone(), source: *pos.get(&a.source)?, target: *pos.get(&a.target)? })
            })
            .collect();
        Quiver { vertices, arrows }
    }

    /// A vertex bijection `p` with `self.m[i][j] == other.m[p[i]][p[j]]`,
    /// found by backtracking.
    pub fn isomorphism_to(&self, other: &Quiver) -> Option<Vec<usize>> {
        isomorphisms(&self.multiplicities(), &other.multiplicities(), &mut |_| true)
    }

    /// Same quiver up to renaming arrows, matching vertices by label.
    pub fn same_shape_by_labels(&self, other: &Quiver) -> bool {
        if self.vertices.len() != other.vertices.len() {
            return false;
        }
        let Some(p): Option<Vec<usize>> =
            self.vertices.iter().map(|v| other.vertex_index(v)).collect()
        else {
            return false;
        };
        let a = self.multiplicities();
        let b = other.multiplicities();
        (0..a.len()).all(|i| (0..a.len()).all(|j| a[i][j] == b[p[i]][p[j]]))
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", escape(name));
        for v in &self.vertices {
            let _ = writeln!(s, "  \"{}\";", escape(v));
        }
        for a in &self.arrows {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                escape(&self.vertices[a.source]),
                escape(&self.vertices[a.target]),
                escape(&a.name)
            );
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Enumerates bijections preserving two square matrices; returns the first
/// one accepted by `accept`.
pub fn isomorphisms(
    a: &[Vec<usize>],
    b: &[Vec<usize>],
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    // Cheap invariant: (out-degree, in-degree, loops) per vertex.
    let sig = |m: &[Vec<usize>], i: usize| {
        let out: usize = m[i].iter().sum();
        let inn: usize = m.iter().map(|r| r[i]).sum();
        (out, inn, m[i][i])
    };
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        a: &[Vec<usize>],
        b: &[Vec<usize>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sig: &dyn Fn(&[Vec<usize>], usize) -> (usize, usize, usize),
        accept: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = a.len();
        if i == n {
            return accept(perm);
        }
        for j in 0..n {
            if used[j] || sig(a, i) != sig(b, j) {
                continue;
            }
            if (0..i).any(|k| a[i][k] != b[j][perm[k]] || a[k][i] != b[perm[k]][j]) || a[i][i] != b[j][j] {
                continue;
            }
            perm[i] = j;
            used[j] = true;
            if go(i + 1, a, b, perm, used, sig, accept) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    if go(0, a, b, &mut perm, &mut used, &sig, accept) {
        Some(perm)
    } else {
        None
    }
}

/// A path in a quiver. Arrows compose left to right.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::NotComposable("empty arrow list".to_string()));
        };
        let qa = q.arrows();
        for w in arrows.windows(2) {
            if qa[w[0]].target != qa[w[1]].source {
                return Err(Error::NotComposable(format!("{} then {}", qa[w[0]].name, qa[w[1]].name)));
            }
        }
        let last = *arrows.last().unwrap();
        Ok(Path { source: qa[first].source, target: qa[last].target, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", q.vertices()[self.source]);
        }
        let names: Vec<&str> = self.arrows.iter().map(|&a| q.arrows()[a].name.as_str()).collect();
        names.join("*")
    }
}

/// A linear combination of parallel paths with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Path)>,
}

impl Relation {
    pub fn render(&self, q: &Quiver) -> String {
        let mut s = String::new();
        for (i, (c, p)) in self.terms.iter().enumerate() {
            let (sign, abs) = if *c < 0 { ("-", c.unsigned_abs()) } else { ("+", *c as u64) };
            if i == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                let _ = write!(s, " {sign} ");
            }
            if abs != 1 {
                let _ = write!(s, "{abs}*");
            }
            s.push_str(&p.render(q));
        }
        s
    }
}

/// A quiver with relations over a named field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub field: FieldSpec,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(field: FieldSpec, quiver: Quiver, relations: Vec<Relation>) -> Result<Self> {
        let p = Presentation { field: field.validate()?, quiver, relations };
        p.validate()?;
        Ok(p)
    }

    /// Terms must be parallel paths of length at least two with nonzero
    /// coefficients in the field.
    pub fn validate(&self) -> Result<()> {
        let q = &self.quiver;
        for r in &self.relations {
            let Some((_, first)) = r.terms.first() else {
                return Err(Error::NotAdmissible("empty relation".to_string()));
            };
            for (c, p) in &r.terms {
                if p.len() < 2 {
                    return Err(Error::NotAdmissible(format!("term `{}` has length {}", p.render(q), p.len())));
                }
                Path::from_arrows(q, p.arrows.clone())?;
                if (p.source, p.target) != (first.source, first.target) {
                    return Err(Error::NotParallel(r.render(q)));
                }
                let zero_mod_p = match self.field {
                    FieldSpec::Prime(pr) => c.rem_euclid(pr as i64) == 0,
                    FieldSpec::Rational => *c == 0,
                };
                if zero_mod_p {
                    return Err(Error::NotAdmissible(format!("zero coefficient in `{}`", r.render(q))));
                }
            }
        }
        Ok(())
    }
}
