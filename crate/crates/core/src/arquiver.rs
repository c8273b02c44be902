//! Knitting the Auslander-Reiten quiver from almost split sequences.
//!
//! Every node is processed once: a non-injective `X` contributes the almost
//! split sequence `0 -> X -> E -> τ⁻¹X -> 0`, a projective contributes the
//! arrows from the summands of its radical, an injective the arrows to the
//! summands of `I/soc I`. Together these give every irreducible map of the
//! component.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{tau, tau_inv};
use crate::matrix::{Echelon, Matrix, PivotOrder};
use crate::module::{decompose, hom_basis, indecomposables_isomorphic, radical_of_end, Module, ModuleMap};
use crate::projective::projective_cover;

#[derive(Debug, Clone)]
pub struct ArNode<K: Field> {
    pub module: Module<K>,
    /// Loewy series, e.g. `1/23/4`.
    pub label: String,
    /// Vertex `v` when the node is `P(v)`.
    pub projective: Option<usize>,
    pub injective: Option<usize>,
    pub tau: Option<usize>,
    pub tau_inv: Option<usize>,
    /// All arrows out of the node, its translates and, for a projective,
    /// the arrows into it are known.
    pub closed: bool,
}

/// An almost split sequence `0 -> start -> ⊕ middle -> end -> 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mesh {
    pub start: usize,
    pub end: usize,
    /// Middle summands with multiplicities.
    pub middle: Vec<(usize, usize)>,
    /// Dimension of the middle term as computed, before decomposing.
    pub middle_dim: usize,
}

#[derive(Debug, Clone)]
pub struct ArFragment<K: Field> {
    pub nodes: Vec<ArNode<K>>,
    /// `(source, target) -> number of irreducible maps`.
    pub arrows: BTreeMap<(usize, usize), usize>,
    pub meshes: Vec<Mesh>,
    /// The components through the projectives were closed before the cap.
    pub complete: bool,
}

/// Middle term of the almost split sequence starting at `x`, where
/// `m = τ⁻¹x` is given.
///
/// With `K = ker(P_0 -> m)`, `Ext¹(m, x) = Hom(K, x) / Hom(P_0, x)`. The
/// almost split class spans the socle of this group as an `End(x)`-module,
/// and the middle term is the pushout along a representative.
pub fn almost_split_middle<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>, x: &Module<K>) -> Result<Module<K>> {
    let k = alg.field();
    let (p0, epi) = projective_cover(alg, m);
    let (kmod, iota) = epi.kernel(alg, &p0.module);
    let len = ModuleMap::zero(k, &kmod, x).flatten().len();
    let mut span = Echelon::new(len, PivotOrder::Lowest);
    let mut bounds = Vec::new();
    for f in hom_basis(alg, &p0.module, x) {
        let v = iota.then(k, &f).flatten();
        if span.insert(k, &v) {
            bounds.push(v);
        }
    }
    let mut reps = Vec::new();
    for h in hom_basis(alg, &kmod, x) {
        if span.insert(k, &h.flatten()) {
            reps.push(h);
        }
    }
    if reps.is_empty() {
        return Err(Error::InvalidModule("no extension between a module and its translate".to_string()));
    }
    let mut cols = bounds.clone();
    cols.extend(reps.iter().map(|h| h.flatten()));
    let solver = Matrix::columns_of(k, &cols, len);
    let r = reps.len();
    let end = hom_basis(alg, x, x);
    let rad = radical_of_end(alg, x, &end)?;
    let mut rows: Vec<Vec<K::Elem>> = Vec::new();
    for psi in &rad {
        let mut act = Matrix::zeros(k, r, r);
        for (j, h) in reps.iter().enumerate() {
            let c = solver.solve(k, &h.then(k, psi).flatten()).expect("composite is a cocycle");
            for (i, y) in c[bounds.len()..].iter().enumerate() {
                act[(i, j)] = y.clone();
            }
        }
        for i in 0..r {
            rows.push(act.row(i).to_vec());
        }
    }
    let socle = if rows.is_empty() {
        let mut u = vec![k.zero(); r];
        u[0] = k.one();
        u
    } else {
        let stacked = Matrix::from_rows(rows, r);
        stacked.kernel_basis(k).into_iter().next().ok_or_else(|| {
            Error::InvalidModule("extension group has zero socle".to_string())
        })?
    };
    let mut xi = ModuleMap::zero(k, &kmod, x);
    for (h, c) in reps.iter().zip(&socle) {
        xi = xi.add(k, &h.scale(k, c));
    }
    let sum = Module::direct_sum(k, &[x.clone(), p0.module.clone()]);
    let neg = k.neg(&k.one());
    let blocks = (0..alg.num_vertices())
        .map(|v| xi.blocks[v].vstack(&iota.blocks[v].scale(k, &neg)))
        .collect();
    let push = ModuleMap::<K> { blocks };
    Ok(push.cokernel(alg, &sum).0)
}

impl<K: Field> ArFragment<K> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node isomorphic to the indecomposable `m`.
    pub fn find(&self, alg: &BasedAlgebra<K>, m: &Module<K>) -> Option<usize> {
        self.nodes
            .iter()
            .position(|n| n.module.dims() == m.dims() && indecomposables_isomorphic(alg, &n.module, m))
    }

    /// Node `P(v)`.
    pub fn projective(&self, v: usize) -> Option<usize> {
        self.nodes.iter().position(|n| n.projective == Some(v))
    }

    pub fn injective(&self, v: usize) -> Option<usize> {
        self.nodes.iter().position(|n| n.injective == Some(v))
    }

    /// Node with the given Loewy label, the first one if several share it.
    pub fn by_label(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.label == label)
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.keys().filter(move |(s, _)| *s == i).map(|&(_, t)| t)
    }

    pub fn predecessors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.keys().filter(move |(_, t)| *t == i).map(|&(s, _)| s)
    }

    /// Checks the mesh relations/exactness of every recorded almost split
    /// sequence; returns the offending meshes.
    pub fn mesh_defects(&self) -> Vec<usize> {
        let mut bad = Vec::new();
        for (i, mesh) in self.meshes.iter().enumerate() {
            let dim = |n: usize| self.nodes[n].module.dim();
            let total: usize = mesh.middle.iter().map(|&(n, m)| m * dim(n)).sum();
            let exact = mesh.middle_dim == dim(mesh.start) + dim(mesh.end) && total == mesh.middle_dim;
            let mut ins: Vec<(usize, usize)> = self
                .arrows
                .iter()
                .filter(|((_, t), _)| *t == mesh.end)
                .map(|(&(s, _), &m)| (s, m))
                .collect();
            let mut outs: Vec<(usize, usize)> = self
                .arrows
                .iter()
                .filter(|((s, _), _)| *s == mesh.start)
                .map(|(&(_, t), &m)| (t, m))
                .collect();
            ins.sort_unstable();
            outs.sort_unstable();
            let mut mid = mesh.middle.clone();
            mid.sort_unstable();
            if !exact || ins != outs || ins != mid {
                bad.push(i);
            }
        }
        bad
    }

    /// DOT text: nodes labelled by dimension vector and Loewy series,
    /// τ-links dashed.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph AR {\n  rankdir=LR;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\\n{}\"];", n.module.dim_label(), n.label);
        }
        for (&(a, b), &m) in &self.arrows {
            if m == 1 {
                let _ = writeln!(s, "  n{a} -> n{b};");
            } else {
                let _ = writeln!(s, "  n{a} -> n{b} [label=\"{m}\"];");
            }
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(t) = n.tau {
                let _ = writeln!(s, "  n{i} -> n{t} [style=dashed, constraint=false];");
            }
        }
        s.push_str("}\n");
        s
    }
}

struct Knitter<'a, K: Field> {
    alg: &'a BasedAlgebra<K>,
    frag: ArFragment<K>,
    queue: VecDeque<usize>,
    cap: usize,
    truncated: bool,
}

impl<K: Field> Knitter<'_, K> {
    fn node(&mut self, m: Module<K>) -> Option<usize> {
        if let Some(i) = self.frag.find(self.alg, &m) {
            return Some(i);
        }
        if self.frag.nodes.len() >= self.cap {
            self.truncated = true;
            return None;
        }
        let label = m.loewy_label(self.alg);
        self.frag.nodes.push(ArNode { module: m, label, projective: None, injective: None, tau: None, tau_inv: None, closed: false });
        let i = self.frag.nodes.len() - 1;
        self.queue.push_back(i);
        Some(i)
    }

    fn arrow(&mut self, s: usize, t: usize, mult: usize) {
        let e = self.frag.arrows.entry((s, t)).or_insert(0);
        *e = (*e).max(mult);
    }

    fn process(&mut self, i: usize) -> Result<()> {
        let before = self.truncated;
        self.truncated = false;
        self.process_inner(i)?;
        self.frag.nodes[i].closed = !self.truncated;
        self.truncated |= before;
        Ok(())
    }

    fn process_inner(&mut self, i: usize) -> Result<()> {
        let alg = self.alg;
        let x = self.frag.nodes[i].module.clone();
        let t = tau(alg, &x);
        if t.is_zero() {
            let v = top_vertex(alg, &x);
            self.frag.nodes[i].projective = Some(v);
            let (rad, _) = x.radical(alg);
            for (y, mult) in decompose(alg, &rad)? {
                if let Some(j) = self.node(y) {
                    self.arrow(j, i, mult);
                }
            }
        } else if let Some(j) = self.node(t) {
            self.frag.nodes[i].tau = Some(j);
            self.frag.nodes[j].tau_inv = Some(i);
        }
        let ti = tau_inv(alg, &x);
        if ti.is_zero() {
            let (soc, incl) = x.socle(alg);
            self.frag.nodes[i].injective = Some(socle_vertex(&soc));
            let (q, _) = incl.cokernel(alg, &x);
            for (y, mult) in decompose(alg, &q)? {
                if let Some(j) = self.node(y) {
                    self.arrow(i, j, mult);
                }
            }
        } else {
            // Register the translate first: past the cap the mesh is not
            // needed and its middle term is the expensive part.
            let Some(j) = self.node(ti.clone()) else { return Ok(()) };
            let e = almost_split_middle(alg, &ti, &x)?;
            self.frag.nodes[i].tau_inv = Some(j);
            self.frag.nodes[j].tau = Some(i);
            let mut middle = Vec::new();
            let mut whole = true;
            for (y, mult) in decompose(alg, &e)? {
                match self.node(y) {
                    Some(n) => {
                        self.arrow(i, n, mult);
                        self.arrow(n, j, mult);
                        middle.push((n, mult));
                    }
                    None => whole = false,
                }
            }
            if whole {
                self.frag.meshes.push(Mesh { start: i, end: j, middle, middle_dim: e.dim() });
            }
        }
        Ok(())
    }
}

fn top_vertex<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>) -> usize {
    let top = m.top_dims(alg);
    top.iter().position(|&d| d > 0).expect("nonzero module has a top")
}

fn socle_vertex<K: Field>(soc: &Module<K>) -> usize {
    soc.dims().iter().position(|&d| d > 0).expect("nonzero module has a socle")
}

/// Knits the components containing the indecomposable projectives.
///
/// Stops adding nodes once `node_cap` are known; `complete` then is false
/// and the nodes left open are those whose neighbours were cut off.
pub fn knit<K: Field>(alg: &BasedAlgebra<K>, node_cap: usize) -> Result<ArFragment<K>> {
    let seeds: Vec<Module<K>> = (0..alg.num_vertices()).map(|v| Module::projective(alg, v)).collect();
    knit_from(alg, &seeds, node_cap)
}

/// Knits the components through the given indecomposable modules.
pub fn knit_from<K: Field>(alg: &BasedAlgebra<K>, seeds: &[Module<K>], node_cap: usize) -> Result<ArFragment<K>> {
    let mut kn = Knitter {
        alg,
        frag: ArFragment { nodes: Vec::new(), arrows: BTreeMap::new(), meshes: Vec::new(), complete: false },
        queue: VecDeque::new(),
        cap: node_cap,
        truncated: false,
    };
    // Simple-radical projectives first, so arrows come out in knitting order.
    let mut order: Vec<usize> = (0..seeds.len()).collect();
    order.sort_by_key(|&i| seeds[i].dim());
    for i in order {
        kn.node(seeds[i].clone());
    }
    while let Some(i) = kn.queue.pop_front() {
        kn.process(i)?;
    }
    kn.frag.complete = !kn.truncated;
    Ok(kn.frag)
}

/// Text summary, one node per line.
pub fn describe<K: Field>(frag: &ArFragment<K>) -> String {
    let mut s = String::new();
    for (i, n) in frag.nodes.iter().enumerate() {
        let mut flags = Vec::new();
        if let Some(v) = n.projective {
            flags.push(format!("P{}", v + 1));
        }
        if let Some(v) = n.injective {
            flags.push(format!("I{}", v + 1));
        }
        let tau = n.tau.map_or("-".to_string(), |t| t.to_string());
        let _ = writeln!(s, "{i}: {} {} tau={} {}", n.label, n.module.dim_label(), tau, flags.join(" "));
    }
    for (&(a, b), &m) in &frag.arrows {
        let _ = writeln!(s, "{a} -> {b} x{m}");
    }
    let _ = writeln!(s, "complete: {}", frag.complete);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::tests::{algebra, d4b};
    use crate::module::is_isomorphic;

    #[test]
    fn a2_has_three_nodes() {
        let a = algebra(&["1", "2"], &[("a", "1", "2")], &[]);
        let f = knit(&a, 10).unwrap();
        assert!(f.complete);
        assert_eq!(f.len(), 3);
        let s1 = f.find(&a, &Module::simple(&a, 0)).unwrap();
        let s2 = f.find(&a, &Module::simple(&a, 1)).unwrap();
        assert_eq!(f.nodes[s1].tau, Some(s2));
        assert_eq!(f.nodes[s2].projective, Some(1));
        assert!(f.mesh_defects().is_empty());
    }

    #[test]
    fn d4_cluster_tilted_has_twelve() {
        let b = d4b();
        let f = knit(&b, 40).unwrap();
        assert!(f.complete);
        assert_eq!(f.len(), 12);
        assert!(f.mesh_defects().is_empty());
        for n in &f.nodes {
            if let Some(t) = n.tau {
                assert!(is_isomorphic(&b, &tau(&b, &n.module), &f.nodes[t].module).unwrap());
            }
        }
        let mut labels: Vec<&str> = f.nodes.iter().map(|n| n.label.as_str()).collect();
        labels.sort_unstable();
        let mut expect = ["4", "2/4", "3/4", "23/4", "1/23/4", "3", "2", "1/23", "1/2", "1/3", "1", "4/1"];
        expect.sort_unstable();
        assert_eq!(labels, expect);
    }

    #[test]
    fn cap_truncates() {
        let b = d4b();
        let f = knit(&b, 5).unwrap();
        assert!(!f.complete);
        assert_eq!(f.len(), 5);
    }
}
