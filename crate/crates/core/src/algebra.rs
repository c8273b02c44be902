//! Finite-dimensional algebras with a basis of paths and structure constants.
//!
//! Every algebra here is *based*: its basis starts with the primitive
//! idempotents, followed by words in a chosen set of arrow generators. Any
//! algebra assembled by hand (quotients, extensions) goes through
//! [`BasedAlgebra::from_raw`], which picks arrow generators in
//! `rad \ rad^2` and rewrites the structure constants in a basis of words.
//! Modules then only need one matrix per arrow.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Echelon, Matrix, PivotOrder};
use crate::quiver::{Path, Presentation, Quiver};

/// Sparse linear combination of basis elements.
pub type Sparse<E> = Vec<(usize, E)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    pub label: String,
    /// Arrow generators, left to right. Empty for idempotents.
    pub word: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowGen {
    pub name: String,
    pub source: usize,
    pub target: usize,
    /// Basis index of this generator.
    pub element: usize,
}

/// An algebra described only by tagged basis vectors and a product table.
#[derive(Debug, Clone)]
pub struct RawAlgebra<E> {
    pub vertices: Vec<String>,
    /// `(source, target, label)` per basis element.
    pub tags: Vec<(usize, usize, String)>,
    /// Row-major `dim x dim` table of products.
    pub table: Vec<Sparse<E>>,
    pub idempotents: Vec<usize>,
    pub radical: Vec<usize>,
}

/// Change of basis produced by rebasing: `to_old` has the new basis vectors
/// as columns in old coordinates, `to_new` is its inverse.
#[derive(Debug, Clone)]
pub struct Rebase<E> {
    pub to_old: Matrix<E>,
    pub to_new: Matrix<E>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedAlgebra<K: Field> {
    field: K,
    vertices: Vec<String>,
    basis: Vec<BasisElement>,
    table: Vec<Sparse<K::Elem>>,
    idempotents: Vec<usize>,
    radical: Vec<usize>,
    arrows: Vec<ArrowGen>,
    /// `blocks[s][t]`: basis indices from `s` to `t`, increasing.
    blocks: Vec<Vec<Vec<usize>>>,
    origin: Option<Presentation>,
}

/// A quotient algebra with the maps relating it to its parent.
#[derive(Debug, Clone)]
pub struct Quotient<K: Field> {
    pub algebra: BasedAlgebra<K>,
    /// Parent coordinates to quotient coordinates.
    pub proj: Matrix<K::Elem>,
    /// Quotient coordinates to chosen representatives in the parent. This is
    /// a linear section of `proj`, not an algebra map.
    pub lift: Matrix<K::Elem>,
    /// New index of each parent vertex that survives.
    pub vertex_map: Vec<Option<usize>>,
}

fn sparse_mul_raw<K: Field>(k: &K, table: &[Sparse<K::Elem>], n: usize, x: &[K::Elem], y: &[K::Elem]) -> Vec<K::Elem> {
    let mut out = vec![k.zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if k.is_zero(xi) {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if k.is_zero(yj) {
                continue;
            }
            let xy = k.mul(xi, yj);
            for (b, c) in &table[i * n + j] {
                out[*b] = k.add(&out[*b], &k.mul(&xy, c));
            }
        }
    }
    out
}

fn unit<K: Field>(k: &K, n: usize, i: usize) -> Vec<K::Elem> {
    let mut v = vec![k.zero(); n];
    v[i] = k.one();
    v
}

fn to_sparse<K: Field>(k: &K, v: Vec<K::Elem>) -> Sparse<K::Elem> {
    v.into_iter().enumerate().filter(|(_, x)| !k.is_zero(x)).collect()
}

impl<K: Field> BasedAlgebra<K> {
    /// Rebases a raw algebra onto words in arrow generators.
    ///
    /// Generators are the radical basis elements that are independent modulo
    /// `rad^2` and the generators chosen before them; words are grown level
    /// by level and kept when independent. Fails if words in the generators
    /// do not span the radical.
    pub fn from_raw(field: K, raw: RawAlgebra<K::Elem>) -> Result<(Self, Rebase<K::Elem>)> {
        let k = &field;
        let n = raw.tags.len();
        if raw.table.len() != n * n {
            return Err(Error::InvalidAlgebra("product table has the wrong size".to_string()));
        }
        let nv = raw.vertices.len();
        if raw.idempotents.len() != nv {
            return Err(Error::InvalidAlgebra("one idempotent per vertex is required".to_string()));
        }
        for (v, &e) in raw.idempotents.iter().enumerate() {
            if raw.tags[e].0 != v || raw.tags[e].1 != v {
                return Err(Error::InvalidAlgebra(format!("idempotent {e} is not tagged at vertex {v}")));
            }
        }
        let mul = |x: &[K::Elem], y: &[K::Elem]| sparse_mul_raw(k, &raw.table, n, x, y);

        let mut rad2 = Echelon::new(n, PivotOrder::Lowest);
        for &a in &raw.radical {
            for &b in &raw.radical {
                if raw.tags[a].1 != raw.tags[b].0 {
                    continue;
                }
                let p = mul(&unit(k, n, a), &unit(k, n, b));
                rad2.insert(k, &p);
            }
        }
        let mut gens = Vec::new();
        for &r in &raw.radical {
            if rad2.insert(k, &unit(k, n, r)) {
                gens.push(r);
            }
        }

        // (word, vector, source, target)
        let mut kept: Vec<(Vec<usize>, Vec<K::Elem>, usize, usize)> = Vec::new();
        let mut span = Echelon::new(n, PivotOrder::Lowest);
        for (v, &e) in raw.idempotents.iter().enumerate() {
            let u = unit(k, n, e);
            span.insert(k, &u);
            kept.push((Vec::new(), u, v, v));
        }
        let mut frontier = Vec::new();
        for (g, &r) in gens.iter().enumerate() {
            let u = unit(k, n, r);
            if !span.insert(k, &u) {
                return Err(Error::InvalidAlgebra("arrow generator is not independent".to_string()));
            }
            frontier.push(kept.len());
            kept.push((vec![g], u, raw.tags[r].0, raw.tags[r].1));
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &w in &frontier {
                for (g, &r) in gens.iter().enumerate() {
                    if raw.tags[r].0 != kept[w].3 {
                        continue;
                    }
                    let v = mul(&kept[w].1, &unit(k, n, r));
                    if v.iter().all(|x| k.is_zero(x)) || !span.insert(k, &v) {
                        continue;
                    }
                    let mut word = kept[w].0.clone();
                    word.push(g);
                    next.push(kept.len());
                    kept.push((word, v, kept[w].2, raw.tags[r].1));
                }
            }
            frontier = next;
        }
        if kept.len() != n {
            return Err(Error::InvalidAlgebra(format!(
                "words in arrow generators span {} of {} dimensions",
                kept.len(),
                n
            )));
        }

        let cols: Vec<Vec<K::Elem>> = kept.iter().map(|x| x.1.clone()).collect();
        let to_old = Matrix::columns_of(k, &cols, n);
        let to_new = to_old
            .inverse(k)
            .ok_or_else(|| Error::InvalidAlgebra("rebasing matrix is singular".to_string()))?;

        let gen_names: Vec<String> = gens.iter().map(|&r| raw.tags[r].2.clone()).collect();
        let basis: Vec<BasisElement> = kept
            .iter()
            .map(|(word, _, s, t)| {
                let label = if word.is_empty() {
                    format!("e{}", raw.vertices[*s])
                } else {
                    word.iter().map(|&g| gen_names[g].as_str()).collect::<Vec<_>>().join("*")
                };
                BasisElement { source: *s, target: *t, label, word: word.clone() }
            })
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                if basis[i].target != basis[j].source {
                    table.push(Vec::new());
                    continue;
                }
                let p = mul(&cols[i], &cols[j]);
                table.push(to_sparse(k, to_new.mul_vec(k, &p)));
            }
        }
        let arrows = gens
            .iter()
            .enumerate()
            .map(|(g, &r)| ArrowGen {
                name: gen_names[g].clone(),
                source: raw.tags[r].0,
                target: raw.tags[r].1,
                element: nv + g,
            })
            .collect();
        let alg = BasedAlgebra {
            field: field.clone(),
            vertices: raw.vertices,
            idempotents: (0..nv).collect(),
            radical: (nv..n).collect(),
            blocks: Self::make_blocks(nv, &basis),
            basis,
            table,
            arrows,
            origin: None,
        };
        Ok((alg, Rebase { to_old, to_new }))
    }

    fn make_blocks(nv: usize, basis: &[BasisElement]) -> Vec<Vec<Vec<usize>>> {
        let mut blocks = vec![vec![Vec::new(); nv]; nv];
        for (i, b) in basis.iter().enumerate() {
            blocks[b.source][b.target].push(i);
        }
        blocks
    }

    /// The algebra `kQ/I` of a presentation, with path representatives.
    pub fn from_presentation(field: K, p: &Presentation) -> Result<Self> {
        Self::from_presentation_with_cap(field, p, 30)
    }

    pub fn from_presentation_with_cap(field: K, p: &Presentation, cap: usize) -> Result<Self> {
        if field.spec() != p.field {
            return Err(Error::InvalidField(format!("presentation is over {}, not {}", p.field, field.spec())));
        }
        p.validate()?;
        let q = &p.quiver;
        if q.num_vertices() == 0 {
            return Err(Error::InvalidAlgebra("quiver has no vertices".to_string()));
        }
        let k = &field;
        // Keep the total number of paths in check for wild inputs.
        const PATH_LIMIT: usize = 50_000;
        for len in 1..=cap {
            let paths = enumerate_paths(q, len, PATH_LIMIT).ok_or(Error::InfiniteDimensional(len))?;
            let index: BTreeMap<&[usize], usize> =
                paths.iter().enumerate().filter(|(_, p)| !p.arrows.is_empty()).map(|(i, p)| (p.arrows.as_slice(), i)).collect();
            let np = paths.len();
            let ideal = saturate_relations(k, q, p, &paths, &index, len);
            let all_top = paths.iter().enumerate().filter(|(_, p)| p.len() == len).all(|(i, _)| ideal.is_pivot(i));
            if !all_top {
                continue;
            }
            let reps: Vec<usize> = ideal.free_columns();
            let rep_pos: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
            let nv = q.num_vertices();
            let tags: Vec<(usize, usize, String)> =
                reps.iter().map(|&r| (paths[r].source, paths[r].target, paths[r].render(q))).collect();
            let mut table = Vec::with_capacity(reps.len() * reps.len());
            for &a in &reps {
                for &b in &reps {
                    let (pa, pb) = (&paths[a], &paths[b]);
                    if pa.target != pb.source {
                        table.push(Vec::new());
                        continue;
                    }
                    let prod = if pa.arrows.is_empty() {
                        Some(b)
                    } else if pb.arrows.is_empty() {
                        Some(a)
                    } else if pa.len() + pb.len() > len {
                        None
                    } else {
                        let mut w = pa.arrows.clone();
                        w.extend_from_slice(&pb.arrows);
                        Some(index[w.as_slice()])
                    };
                    let Some(c) = prod else {
                        table.push(Vec::new());
                        continue;
                    };
                    let mut v = unit(k, np, c);
                    ideal.reduce(k, &mut v);
                    let entry = v
                        .into_iter()
                        .enumerate()
                        .filter(|(_, x)| !k.is_zero(x))
                        .map(|(i, x)| (rep_pos[&i], x))
                        .collect();
                    table.push(entry);
                }
            }
            let idempotents: Vec<usize> = (0..nv).map(|v| rep_pos[&v]).collect();
            let radical: Vec<usize> = (0..reps.len()).filter(|&i| paths[reps[i]].len() > 0).collect();
            let raw = RawAlgebra { vertices: q.vertices().to_vec(), tags, table, idempotents, radical };
            let (mut alg, _) = Self::from_raw(field.clone(), raw)?;
            alg.origin = Some(p.clone());
            return Ok(alg);
        }
        Err(Error::InfiniteDimensional(cap))
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn arrows(&self) -> &[ArrowGen] {
        &self.arrows
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn radical(&self) -> &[usize] {
        &self.radical
    }

    pub fn origin(&self) -> Option<&Presentation> {
        self.origin.as_ref()
    }

    /// Basis indices of `e_s A e_t`.
    pub fn block(&self, s: usize, t: usize) -> &[usize] {
        &self.blocks[s][t]
    }

    /// Product of two basis elements.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, K::Elem)] {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &[K::Elem], y: &[K::Elem]) -> Vec<K::Elem> {
        sparse_mul_raw(&self.field, &self.table, self.dim(), x, y)
    }

    pub fn unit(&self, i: usize) -> Vec<K::Elem> {
        unit(&self.field, self.dim(), i)
    }

    pub fn one(&self) -> Vec<K::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        for &e in &self.idempotents {
            v[e] = self.field.one();
        }
        v
    }

    /// Multiplicity of `i -> j` arrows equals `dim e_i (rad/rad^2) e_j`.
    pub fn gabriel_quiver(&self) -> Quiver {
        let mut q = Quiver::new(self.vertices.iter().cloned()).expect("vertex labels are distinct");
        for a in &self.arrows {
            q.add_arrow(a.name.clone(), a.source, a.target).expect("generator names are distinct");
        }
        q
    }

    /// `c[i][j] = dim e_i A e_j`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|r| r.iter().map(|b| b.len()).collect()).collect()
    }

    /// Same basis with the product reversed.
    pub fn opposite(&self) -> Self {
        let n = self.dim();
        let mut basis = self.basis.clone();
        for b in basis.iter_mut() {
            core::mem::swap(&mut b.source, &mut b.target);
            b.word.reverse();
            if !b.word.is_empty() {
                b.label = b.word.iter().map(|&g| self.arrows[g].name.as_str()).collect::<Vec<_>>().join("*");
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.table[j * n + i].clone());
            }
        }
        let arrows = self
            .arrows
            .iter()
            .map(|a| ArrowGen { name: a.name.clone(), source: a.target, target: a.source, element: a.element })
            .collect();
        BasedAlgebra {
            field: self.field.clone(),
            vertices: self.vertices.clone(),
            blocks: Self::make_blocks(self.vertices.len(), &basis),
            basis,
            table,
            idempotents: self.idempotents.clone(),
            radical: self.radical.clone(),
            arrows,
            origin: None,
        }
    }

    /// Checks `(xy)z = x(yz)` on all basis triples.
    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        let k = &self.field;
        for i in 0..n {
            for j in 0..n {
                let ij = sparse_vec(k, n, self.product(i, j));
                for l in 0..n {
                    let left = self.mul(&ij, &self.unit(l));
                    let jl = sparse_vec(k, n, self.product(j, l));
                    let right = self.mul(&self.unit(i), &jl);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks the structural invariants: orthogonal complete idempotents,
    /// tags respected by products, and a nilpotent radical.
    pub fn check_structure(&self) -> Result<()> {
        let k = &self.field;
        let n = self.dim();
        for (a, &ea) in self.idempotents.iter().enumerate() {
            for (b, &eb) in self.idempotents.iter().enumerate() {
                let p = self.product(ea, eb);
                let ok = if a == b { p.len() == 1 && p[0].0 == ea && k.is_one(&p[0].1) } else { p.is_empty() };
                if !ok {
                    return Err(Error::InvalidAlgebra(format!("idempotents {a} and {b} misbehave")));
                }
            }
        }
        for i in 0..n {
            let one = self.one();
            if self.mul(&one, &self.unit(i)) != self.unit(i) || self.mul(&self.unit(i), &one) != self.unit(i) {
                return Err(Error::InvalidAlgebra(format!("idempotents do not sum to one on {i}")));
            }
            for j in 0..n {
                for (b, _) in self.product(i, j) {
                    let e = &self.basis[*b];
                    if e.source != self.basis[i].source || e.target != self.basis[j].target {
                        return Err(Error::InvalidAlgebra(format!("product {i}*{j} leaves its block")));
                    }
                }
            }
        }
        // rad^L = 0 for some L <= dim
        let mut power: Vec<Vec<K::Elem>> = self.radical.iter().map(|&r| self.unit(r)).collect();
        for _ in 0..=n {
            if power.is_empty() {
                return Ok(());
            }
            let mut span = Echelon::new(n, PivotOrder::Lowest);
            let mut next = Vec::new();
            for x in &power {
                for &r in &self.radical {
                    let y = self.mul(x, &self.unit(r));
                    if span.insert(k, &y) {
                        next.push(y);
                    }
                }
            }
            power = next;
        }
        Err(Error::InvalidAlgebra("radical is not nilpotent".to_string()))
    }

    /// Basis of the two-sided ideal generated by `gens`.
    pub fn ideal_generated(&self, gens: &[Vec<K::Elem>]) -> Vec<Vec<K::Elem>> {
        let k = &self.field;
        let n = self.dim();
        let mut span = Echelon::new(n, PivotOrder::Highest);
        let mut out = Vec::new();
        let mut queue: Vec<Vec<K::Elem>> = gens.to_vec();
        // Idempotents and arrows generate the algebra.
        let mut mults: Vec<usize> = self.idempotents.clone();
        mults.extend(self.arrows.iter().map(|a| a.element));
        while let Some(v) = queue.pop() {
            if !span.insert(k, &v) {
                continue;
            }
            for &m in &mults {
                let u = self.unit(m);
                queue.push(self.mul(&u, &v));
                queue.push(self.mul(&v, &u));
            }
            out.push(v);
        }
        out
    }

    /// The quotient by the two-sided ideal generated by `gens`.
    pub fn quotient(&self, gens: &[Vec<K::Elem>]) -> Result<Quotient<K>> {
        let k = &self.field;
        let n = self.dim();
        // Split into (source, target) blocks so the span is homogeneous.
        let mut split = Vec::new();
        for g in gens {
            let mut parts: BTreeMap<(usize, usize), Vec<K::Elem>> = BTreeMap::new();
            for (i, x) in g.iter().enumerate() {
                if k.is_zero(x) {
                    continue;
                }
                let b = &self.basis[i];
                parts.entry((b.source, b.target)).or_insert_with(|| vec![k.zero(); n])[i] = x.clone();
            }
            split.extend(parts.into_values());
        }
        let ideal_basis = self.ideal_generated(&split);
        let mut ideal = Echelon::new(n, PivotOrder::Highest);
        for v in &ideal_basis {
            ideal.insert(k, v);
        }
        let reps = ideal.free_columns();
        if reps.is_empty() {
            return Err(Error::ZeroAlgebra);
        }
        let mut vertex_map = vec![None; self.num_vertices()];
        let mut vertices = Vec::new();
        for (v, &e) in self.idempotents.iter().enumerate() {
            if ideal.is_pivot(e) {
                if !ideal.contains(k, &self.unit(e)) {
                    return Err(Error::InvalidAlgebra("ideal mixes idempotents".to_string()));
                }
            } else {
                vertex_map[v] = Some(vertices.len());
                vertices.push(self.vertices[v].clone());
            }
        }
        let rep_pos: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let reduce_to_reps = |v: &[K::Elem]| -> Vec<K::Elem> {
            let mut w = v.to_vec();
            ideal.reduce(k, &mut w);
            reps.iter().map(|&r| w[r].clone()).collect()
        };
        let mut tags = Vec::new();
        for &r in &reps {
            let b = &self.basis[r];
            let (Some(s), Some(t)) = (vertex_map[b.source], vertex_map[b.target]) else {
                return Err(Error::InvalidAlgebra("basis element survives at a removed vertex".to_string()));
            };
            tags.push((s, t, b.label.clone()));
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                let p = sparse_vec(k, n, self.product(a, b));
                table.push(to_sparse(k, reduce_to_reps(&p)));
            }
        }
        let idempotents = self.idempotents.iter().filter(|&&e| !ideal.is_pivot(e)).map(|e| rep_pos[e]).collect();
        let radical = self.radical.iter().filter_map(|r| rep_pos.get(r).copied()).collect();
        let raw = RawAlgebra { vertices, tags, table, idempotents, radical };
        let (algebra, rebase) = Self::from_raw(self.field.clone(), raw)?;
        let mut proj = Matrix::zeros(k, m, n);
        for i in 0..n {
            let c = rebase.to_new.mul_vec(k, &reduce_to_reps(&self.unit(i)));
            for (r, x) in c.into_iter().enumerate() {
                proj[(r, i)] = x;
            }
        }
        let mut lift = Matrix::zeros(k, n, m);
        for j in 0..m {
            let c = rebase.to_old.column(j);
            for (r, x) in c.into_iter().enumerate() {
                lift[(reps[r], j)] = x;
            }
        }
        Ok(Quotient { algebra, proj, lift, vertex_map })
    }

    /// `A / A e_x A`.
    pub fn quotient_by_vertex(&self, x: usize) -> Result<Quotient<K>> {
        if x >= self.num_vertices() {
            return Err(Error::UnknownVertex(x.to_string()));
        }
        self.quotient(&[self.unit(self.idempotents[x])])
    }
}

pub(crate) fn sparse_vec<K: Field>(k: &K, n: usize, s: &[(usize, K::Elem)]) -> Vec<K::Elem> {
    let mut v = vec![k.zero(); n];
    for (i, x) in s {
        v[*i] = x.clone();
    }
    v
}

/// All paths of length at most `len` in degree-lexicographic order: the
/// trivial paths first, then by length, then by arrow index.
pub fn enumerate_paths(q: &Quiver, len: usize, limit: usize) -> Option<Vec<Path>> {
    let mut out: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
    let mut level: Vec<Path> = Vec::new();
    for (i, a) in q.arrows().iter().enumerate() {
        if len >= 1 {
            level.push(Path { source: a.source, target: a.target, arrows: vec![i] });
        }
    }
    let mut l = 1;
    while !level.is_empty() && l <= len {
        out.extend(level.iter().cloned());
        if out.len() > limit {
            return None;
        }
        if l == len {
            break;
        }
        let mut next = Vec::new();
        for p in &level {
            for (i, a) in q.arrows().iter().enumerate() {
                if a.source == p.target {
                    let mut w = p.arrows.clone();
                    w.push(i);
                    next.push(Path { source: p.source, target: a.target, arrows: w });
                }
            }
        }
        next.sort_by(|x, y| x.arrows.cmp(&y.arrows));
        level = next;
        l += 1;
    }
    Some(out)
}

/// Span of `u * rho * v` for relations `rho` and paths `u`, `v`, truncated
/// at length `len`. Pivots are the largest paths, so the free columns are
/// the smallest representatives.
fn saturate_relations<K: Field>(
    k: &K,
    q: &Quiver,
    p: &Presentation,
    paths: &[Path],
    index: &BTreeMap<&[usize], usize>,
    len: usize,
) -> Echelon<K::Elem> {
    let np = paths.len();
    let mut ideal = Echelon::new(np, PivotOrder::Highest);
    let mut queue: Vec<Vec<K::Elem>> = Vec::new();
    for r in &p.relations {
        let mut v = vec![k.zero(); np];
        for (c, path) in &r.terms {
            if path.len() <= len {
                let i = index[path.arrows.as_slice()];
                v[i] = k.add(&v[i], &k.from_i64(*c));
            }
        }
        queue.push(v);
    }
    while let Some(v) = queue.pop() {
        if !ideal.insert(k, &v) {
            continue;
        }
        for (ai, a) in q.arrows().iter().enumerate() {
            let mut left = vec![k.zero(); np];
            let mut right = vec![k.zero(); np];
            let (mut any_l, mut any_r) = (false, false);
            for (i, x) in v.iter().enumerate() {
                if k.is_zero(x) || paths[i].len() + 1 > len {
                    continue;
                }
                let path = &paths[i];
                if a.target == path.source {
                    let mut w = vec![ai];
                    w.extend_from_slice(&path.arrows);
                    left[index[w.as_slice()]] = x.clone();
                    any_l = true;
                }
                if path.target == a.source {
                    let mut w = path.arrows.clone();
                    w.push(ai);
                    right[index[w.as_slice()]] = x.clone();
                    any_r = true;
                }
            }
            if any_l {
                queue.push(left);
            }
            if any_r {
                queue.push(right);
            }
        }
    }
    ideal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Rationals};
    use crate::quiver::Relation;

    fn a2() -> BasedAlgebra<Rationals> {
        let mut q = Quiver::new(["1", "2"]).unwrap();
        q.add_arrow_by_label("a", "1", "2").unwrap();
        let p = Presentation::new(FieldSpec::Rational, q, vec![]).unwrap();
        BasedAlgebra::from_presentation(Rationals, &p).unwrap()
    }

    fn d4b() -> BasedAlgebra<Rationals> {
        let mut q = Quiver::new(["1", "2", "3", "4"]).unwrap();
        for (n, s, t) in [("a", "1", "2"), ("b", "2", "4"), ("g", "1", "3"), ("d", "3", "4"), ("e", "4", "1")] {
            q.add_arrow_by_label(n, s, t).unwrap();
        }
        let path = |names: &[&str]| {
            Path::from_arrows(&q, names.iter().map(|n| q.arrow_index(n).unwrap()).collect()).unwrap()
        };
        let rels = vec![
            Relation { terms: vec![(1, path(&["a", "b"])), (1, path(&["g", "d"]))] },
            Relation { terms: vec![(1, path(&["e", "a"]))] },
            Relation { terms: vec![(1, path(&["e", "g"]))] },
            Relation { terms: vec![(1, path(&["b", "e"]))] },
            Relation { terms: vec![(1, path(&["d", "e"]))] },
        ];
        let p = Presentation::new(FieldSpec::Rational, q.clone(), rels).unwrap();
        BasedAlgebra::from_presentation(Rationals, &p).unwrap()
    }

    #[test]
    fn a2_has_three_paths() {
        let a = a2();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.cartan_matrix(), vec![vec![1, 1], vec![0, 1]]);
        assert!(a.is_associative());
        a.check_structure().unwrap();
    }

    #[test]
    fn d4_cluster_tilted_dimension() {
        let b = d4b();
        assert_eq!(b.dim(), 10);
        assert!(b.is_associative());
        b.check_structure().unwrap();
        let labels: Vec<&str> = b.basis().iter().map(|x| x.label.as_str()).collect();
        assert!(labels.contains(&"a*b"));
        assert!(!labels.contains(&"g*d"));
        assert_eq!(b.gabriel_quiver().multiplicities(), b.origin().unwrap().quiver.multiplicities());
    }

    #[test]
    fn opposite_twice_is_identity() {
        let b = d4b();
        let oo = b.opposite().opposite();
        assert_eq!(oo.cartan_matrix(), b.cartan_matrix());
        assert_eq!(oo.basis(), b.basis());
        assert!(b.opposite().is_associative());
        let a = a2().opposite();
        assert_eq!(a.gabriel_quiver().multiplicities(), vec![vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn vertex_quotients() {
        let q = a2().quotient_by_vertex(1).unwrap();
        assert_eq!(q.algebra.dim(), 1);
        let b = d4b();
        let c = b.quotient_by_vertex(3).unwrap();
        // Removing 4 leaves 1 -> 2, 1 -> 3.
        assert_eq!(c.algebra.dim(), 5);
        assert!(c.algebra.is_associative());
        assert_eq!(c.vertex_map, vec![Some(0), Some(1), Some(2), None]);
        let one = BasedAlgebra::from_presentation(
            Rationals,
            &Presentation::new(FieldSpec::Rational, Quiver::new(["1"]).unwrap(), vec![]).unwrap(),
        )
        .unwrap();
        assert!(matches!(one.quotient_by_vertex(0), Err(Error::ZeroAlgebra)));
    }

    #[test]
    fn unbounded_cycle_is_rejected() {
        let mut q = Quiver::new(["1", "2"]).unwrap();
        q.add_arrow_by_label("a", "1", "2").unwrap();
        q.add_arrow_by_label("b", "2", "1").unwrap();
        let p = Presentation::new(FieldSpec::Rational, q, vec![]).unwrap();
        assert!(matches!(
            BasedAlgebra::from_presentation_with_cap(Rationals, &p, 8),
            Err(Error::InfiniteDimensional(8))
        ));
    }
}
