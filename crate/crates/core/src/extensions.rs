//! One-point extensions, the bimodule `Ext²(DC, C)` and relation extensions.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{BasedAlgebra, RawAlgebra, Rebase, Sparse};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{ext_from_resolution, global_dim, resolve, split_yoneda, Resolution};
use crate::matrix::{Echelon, Matrix, PivotOrder};
use crate::module::{decompose, indecomposables_isomorphic, Module, ModuleMap};
use crate::projective::ProjSum;
use crate::quiver::isomorphisms;

/// An algebra built on top of a smaller one, with the two structure maps.
#[derive(Debug, Clone)]
pub struct Extension<K: Field> {
    pub algebra: BasedAlgebra<K>,
    /// Base coordinates to extension coordinates; an algebra map.
    pub include: Matrix<K::Elem>,
    /// Extension coordinates to base coordinates; an algebra map.
    pub proj: Matrix<K::Elem>,
}

fn fresh_label(existing: &[String]) -> String {
    let mut l = (existing.len() + 1).to_string();
    while existing.contains(&l) {
        l.push('\'');
    }
    l
}

/// Turns raw structure maps into maps on the rebased algebra.
fn finish<K: Field>(
    k: &K,
    alg: BasedAlgebra<K>,
    rebase: Rebase<K::Elem>,
    base_dim: usize,
) -> Extension<K> {
    let n = alg.dim();
    let mut inc_raw = Matrix::zeros(k, n, base_dim);
    let mut proj_raw = Matrix::zeros(k, base_dim, n);
    for i in 0..base_dim {
        inc_raw[(i, i)] = k.one();
        proj_raw[(i, i)] = k.one();
    }
    Extension {
        include: rebase.to_new.mul(k, &inc_raw),
        proj: proj_raw.mul(k, &rebase.to_old),
        algebra: alg,
    }
}

/// `A[M]`, the matrix algebra `[[A, 0], [M, k]]`.
///
/// The new vertex comes last and is a source: an element of `M e_v` is a
/// basis element from the new vertex to `v`, multiplied on the right by `A`
/// through the module action, and `P(new)` has radical `M`.
pub fn one_point_extension<K: Field>(a: &BasedAlgebra<K>, m: &Module<K>) -> Result<Extension<K>> {
    m.validate(a)?;
    let k = a.field();
    let d = a.dim();
    let nv = a.num_vertices();
    let mut vertices = a.vertices().to_vec();
    vertices.push(fresh_label(a.vertices()));
    let x = nv;
    let mut tags: Vec<(usize, usize, String)> =
        a.basis().iter().map(|b| (b.source, b.target, b.label.clone())).collect();
    tags.push((x, x, format!("e{}", vertices[x])));
    let moff = d + 1;
    let offs = m.offsets();
    for v in 0..nv {
        for i in 0..m.dims()[v] {
            tags.push((x, v, format!("m{}_{}", a.vertices()[v], i + 1)));
        }
    }
    let n = tags.len();
    let acts = m.basis_actions(a);
    let mut table: Vec<Sparse<K::Elem>> = vec![Vec::new(); n * n];
    for i in 0..d {
        for j in 0..d {
            table[i * n + j] = a.product(i, j).to_vec();
        }
    }
    table[(d) * n + d] = vec![(d, k.one())];
    for v in 0..nv {
        for i in 0..m.dims()[v] {
            let mi = moff + offs[v] + i;
            table[d * n + mi] = vec![(mi, k.one())];
            for (b, el) in a.basis().iter().enumerate() {
                if el.source != v {
                    continue;
                }
                let col = acts[b].column(i);
                table[mi * n + b] = col
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !k.is_zero(c))
                    .map(|(r, c)| (moff + offs[el.target] + r, c))
                    .collect();
            }
        }
    }
    let mut idempotents = a.idempotents().to_vec();
    idempotents.push(d);
    let mut radical = a.radical().to_vec();
    radical.extend(moff..n);
    let raw = RawAlgebra { vertices, tags, table, idempotents, radical };
    let (alg, rebase) = BasedAlgebra::from_raw(k.clone(), raw)?;
    Ok(finish(k, alg, rebase, d))
}

/// `[N] A`, the dual construction; the new vertex is a sink.
pub fn one_point_coextension<K: Field>(a: &BasedAlgebra<K>, n: &Module<K>) -> Result<Extension<K>> {
    let op = a.opposite();
    let e = one_point_extension(&op, &n.dual())?;
    Ok(Extension { algebra: e.algebra.opposite(), include: e.include, proj: e.proj })
}

/// `Ext²_C(DC, C)` with its two `C`-actions.
///
/// Basis vector `r` lies in `e_i E e_j = Ext²(I(j), P(i))` for
/// `blocks[r] = (i, j)`. `left[c]` and `right[c]` give the action of the
/// basis element `c` in these coordinates: `coords(c e) = left[c] coords(e)`
/// and `coords(e c) = right[c] coords(e)`.
#[derive(Debug, Clone)]
pub struct Bimodule<K: Field> {
    pub blocks: Vec<(usize, usize)>,
    pub left: Vec<Matrix<K::Elem>>,
    pub right: Vec<Matrix<K::Elem>>,
}

/// Cocycle representatives of one block together with the coboundaries, so
/// that arbitrary cocycles can be written in the representative basis.
struct Block<K: Field> {
    reps: Vec<Vec<K::Elem>>,
    /// Coboundaries followed by representatives; pivots give coordinates.
    solver: Matrix<K::Elem>,
    n_bound: usize,
    offset: usize,
}

impl<K: Field> Block<K> {
    fn coords(&self, k: &K, v: &[K::Elem]) -> Vec<K::Elem> {
        if self.reps.is_empty() {
            return Vec::new();
        }
        let x = self.solver.solve(k, v).expect("vector is a cocycle");
        x[self.n_bound..].to_vec()
    }
}

/// Injective `I(j)` written as `D(C e_j)`, so that its vertex spaces are
/// dual to the blocks `e_v C e_j`.
fn injective_as_dual<K: Field>(op: &BasedAlgebra<K>, j: usize) -> Module<K> {
    Module::projective(op, j).dual()
}

/// `I(jp) -> I(j)`, `phi -> (x -> phi(x c))`, for a basis element `c` from
/// `j` to `jp`.
fn left_mult_on_injectives<K: Field>(
    c: &BasedAlgebra<K>,
    el: usize,
    src: &Module<K>,
    tgt: &Module<K>,
) -> ModuleMap<K> {
    let k = c.field();
    let (j, jp) = (c.basis()[el].source, c.basis()[el].target);
    let n = c.num_vertices();
    let blocks = (0..n)
        .map(|v| {
            let rows = c.block(v, j);
            let cols = c.block(v, jp);
            let mut m = Matrix::zeros(k, tgt.dims()[v], src.dims()[v]);
            for (r, &x) in rows.iter().enumerate() {
                for (y, coef) in c.product(x, el) {
                    let col = cols.iter().position(|t| t == y).expect("product in block");
                    m[(r, col)] = coef.clone();
                }
            }
            m
        })
        .collect();
    ModuleMap { blocks }
}

/// A map `Q -> P` with `target_map ∘ result = h`, solved generator by
/// generator. `target_map: P -> X` and `h: Q -> X` with `im h ⊆ im target_map`.
fn lift_through<K: Field>(
    alg: &BasedAlgebra<K>,
    q: &ProjSum<K>,
    p: &ProjSum<K>,
    target_map: &ModuleMap<K>,
    h: &ModuleMap<K>,
) -> ModuleMap<K> {
    let k = alg.field();
    let imgs = q.images_of(alg, h);
    let lifted: Vec<Vec<K::Elem>> = imgs
        .iter()
        .enumerate()
        .map(|(l, y)| {
            let v = q.vertices[l];
            target_map.blocks[v].solve(k, y).expect("map lifts through the resolution")
        })
        .collect();
    q.map_from_images(alg, &p.module, &lifted)
}

/// Chain map over `f: M' -> M` between resolutions, up to degree 2.
fn lift_to_degree_two<K: Field>(
    alg: &BasedAlgebra<K>,
    src: &Resolution<K>,
    tgt: &Resolution<K>,
    f: &ModuleMap<K>,
) -> ModuleMap<K> {
    let k = alg.field();
    let q0 = src.term(alg, 0);
    let p0 = tgt.term(alg, 0);
    let phi0 = lift_through(alg, &q0, &p0, &tgt.diffs[0], &src.diffs[0].then(k, f));
    let q1 = src.term(alg, 1);
    let p1 = tgt.term(alg, 1);
    if q1.is_empty() || p1.is_empty() {
        return ModuleMap::zero(k, &src.term(alg, 2).module, &tgt.term(alg, 2).module);
    }
    let phi1 = lift_through(alg, &q1, &p1, &tgt.diffs[1], &src.diffs[1].then(k, &phi0));
    let q2 = src.term(alg, 2);
    let p2 = tgt.term(alg, 2);
    if q2.is_empty() || p2.is_empty() {
        return ModuleMap::zero(k, &q2.module, &p2.module);
    }
    lift_through(alg, &q2, &p2, &tgt.diffs[2], &src.diffs[2].then(k, &phi1))
}

/// One block `Ext²(I(j), P(i))` in Yoneda coordinates over `P(i)`.
fn ext2_block<K: Field>(
    c: &BasedAlgebra<K>,
    res: &Resolution<K>,
    pi: &Module<K>,
    offset: usize,
) -> Block<K> {
    let k = c.field();
    let g = ext_from_resolution(c, res, pi, 2);
    let p1 = res.term(c, 1);
    let p2 = res.term(c, 2);
    let dim2: usize = p2.vertices.iter().map(|&v| pi.dims()[v]).sum();
    let mut bounds = Vec::new();
    if !p1.is_empty() && !p2.is_empty() {
        let acts = pi.basis_actions(c);
        let d = crate::homology::yoneda_differential(c, &p1, &p2, &res.images[2], pi, &acts);
        let mut span = Echelon::new(dim2, PivotOrder::Lowest);
        for col in 0..d.cols() {
            let v = d.column(col);
            if span.insert(k, &v) {
                bounds.push(v);
            }
        }
    }
    let mut cols = bounds.clone();
    cols.extend(g.cocycles.iter().cloned());
    let solver = Matrix::columns_of(k, &cols, dim2);
    Block { n_bound: bounds.len(), reps: g.cocycles, solver, offset }
}

/// Computes `Ext²_C(DC, C)` with both actions. Needs `gldim C <= 2`.
pub fn ext2_bimodule<K: Field>(c: &BasedAlgebra<K>) -> Result<Bimodule<K>> {
    if !global_dim(c, 3).at_most(2) {
        return Err(Error::GlobalDimensionTooLarge);
    }
    let k = c.field();
    let n = c.num_vertices();
    let op = c.opposite();
    let injs: Vec<Module<K>> = (0..n).map(|j| injective_as_dual(&op, j)).collect();
    let ress: Vec<Resolution<K>> = injs.iter().map(|m| resolve(c, m, 3)).collect();
    let projs: Vec<Module<K>> = (0..n).map(|i| Module::projective(c, i)).collect();
    let mut blocks_meta = Vec::new();
    let mut tbl: Vec<Vec<Block<K>>> = Vec::with_capacity(n);
    let mut offset = 0;
    for (i, pi) in projs.iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for (j, res) in ress.iter().enumerate() {
            let b = ext2_block(c, res, pi, offset);
            for _ in 0..b.reps.len() {
                blocks_meta.push((i, j));
            }
            offset += b.reps.len();
            row.push(b);
        }
        tbl.push(row);
    }
    let dim_e = offset;
    let mut left = Vec::with_capacity(c.dim());
    let mut right = Vec::with_capacity(c.dim());
    for (el, b) in c.basis().iter().enumerate() {
        // Left: c from ip to i sends block (i, j) to (ip, j).
        let mut l = Matrix::zeros(k, dim_e, dim_e);
        let (ip, i) = (b.source, b.target);
        let lm = ModuleMap::<K> { blocks: left_mult_on_projectives(c, el, &projs[i], &projs[ip]) };
        for j in 0..n {
            let src = &tbl[i][j];
            let dst = &tbl[ip][j];
            let p2 = ress[j].term(c, 2);
            for (r, rep) in src.reps.iter().enumerate() {
                let g = p2.map_from_images(c, &projs[i], &split_yoneda(&p2, &projs[i], rep));
                let cg = g.then(k, &lm);
                let v: Vec<K::Elem> = p2.images_of(c, &cg).concat();
                for (s, x) in dst.coords(k, &v).into_iter().enumerate() {
                    l[(dst.offset + s, src.offset + r)] = x;
                }
            }
        }
        left.push(l);
        // Right: c from j to jp sends block (i, j) to (i, jp).
        let mut rm = Matrix::zeros(k, dim_e, dim_e);
        let (j, jp) = (b.source, b.target);
        let lam = left_mult_on_injectives(c, el, &injs[jp], &injs[j]);
        let phi2 = lift_to_degree_two(c, &ress[jp], &ress[j], &lam);
        let p2 = ress[j].term(c, 2);
        let q2 = ress[jp].term(c, 2);
        for i in 0..n {
            let src = &tbl[i][j];
            let dst = &tbl[i][jp];
            for (r, rep) in src.reps.iter().enumerate() {
                let g = p2.map_from_images(c, &projs[i], &split_yoneda(&p2, &projs[i], rep));
                let gphi = phi2.then(k, &g);
                let v: Vec<K::Elem> = q2.images_of(c, &gphi).concat();
                for (s, x) in dst.coords(k, &v).into_iter().enumerate() {
                    rm[(dst.offset + s, src.offset + r)] = x;
                }
            }
        }
        right.push(rm);
    }
    Ok(Bimodule { blocks: blocks_meta, left, right })
}

/// Left multiplication `P(i) -> P(ip)`, `x -> c x`, for `c` from `ip` to `i`.
fn left_mult_on_projectives<K: Field>(
    c: &BasedAlgebra<K>,
    el: usize,
    src: &Module<K>,
    tgt: &Module<K>,
) -> Vec<Matrix<K::Elem>> {
    let k = c.field();
    let (ip, i) = (c.basis()[el].source, c.basis()[el].target);
    (0..c.num_vertices())
        .map(|v| {
            let cols = c.block(i, v);
            let rows = c.block(ip, v);
            let mut m = Matrix::zeros(k, tgt.dims()[v], src.dims()[v]);
            for (col, &x) in cols.iter().enumerate() {
                for (y, coef) in c.product(el, x) {
                    let r = rows.iter().position(|t| t == y).expect("product in block");
                    m[(r, col)] = coef.clone();
                }
            }
            m
        })
        .collect()
}

impl<K: Field> Bimodule<K> {
    pub fn dim(&self) -> usize {
        self.blocks.len()
    }

    /// `dims[i][j] = dim e_i E e_j`.
    pub fn block_dims(&self, n: usize) -> Vec<Vec<usize>> {
        let mut d = vec![vec![0; n]; n];
        for &(i, j) in &self.blocks {
            d[i][j] += 1;
        }
        d
    }

    /// Dimensions of `E / (rad C E + E rad C)` per block: the number of new
    /// arrows `i -> j` in the relation extension.
    pub fn top_dims(&self, c: &BasedAlgebra<K>) -> Vec<Vec<usize>> {
        let k = c.field();
        let n = c.num_vertices();
        let d = self.dim();
        let mut span = Echelon::new(d, PivotOrder::Lowest);
        for &r in c.radical() {
            for m in [&self.left[r], &self.right[r]] {
                for col in 0..d {
                    span.insert(k, &m.column(col));
                }
            }
        }
        let mut out = vec![vec![0; n]; n];
        for (r, &(i, j)) in self.blocks.iter().enumerate() {
            let mut u = vec![k.zero(); d];
            u[r] = k.one();
            if span.insert(k, &u) {
                out[i][j] += 1;
            }
        }
        out
    }

    /// Checks that the actions are associative, unital and commute.
    pub fn check(&self, c: &BasedAlgebra<K>) -> bool {
        let k = c.field();
        let d = self.dim();
        let id = Matrix::identity(k, d);
        let mut sum = Matrix::zeros(k, d, d);
        for &e in c.idempotents() {
            sum = sum.add(k, &self.left[e]);
        }
        if sum != id {
            return false;
        }
        let mut sum = Matrix::zeros(k, d, d);
        for &e in c.idempotents() {
            sum = sum.add(k, &self.right[e]);
        }
        if sum != id {
            return false;
        }
        let combo = |ms: &[Matrix<K::Elem>], s: &[(usize, K::Elem)]| {
            let mut acc = Matrix::zeros(k, d, d);
            for (b, x) in s {
                acc = acc.add(k, &ms[*b].scale(k, x));
            }
            acc
        };
        for a in 0..c.dim() {
            for b in 0..c.dim() {
                let p = c.product(a, b);
                if combo(&self.left, p) != self.left[a].mul(k, &self.left[b]) {
                    return false;
                }
                if combo(&self.right, p) != self.right[b].mul(k, &self.right[a]) {
                    return false;
                }
                if self.left[a].mul(k, &self.right[b]) != self.right[b].mul(k, &self.left[a]) {
                    return false;
                }
            }
        }
        true
    }

    /// `e_i E` as a right `C`-module.
    pub fn row_module(&self, c: &BasedAlgebra<K>, i: usize) -> Module<K> {
        let k = c.field();
        let n = c.num_vertices();
        let idx: Vec<Vec<usize>> =
            (0..n).map(|t| (0..self.dim()).filter(|&r| self.blocks[r] == (i, t)).collect()).collect();
        let dims: Vec<usize> = idx.iter().map(|v| v.len()).collect();
        let actions = c
            .arrows()
            .iter()
            .map(|a| {
                let m = &self.right[a.element];
                let mut out = Matrix::zeros(k, dims[a.target], dims[a.source]);
                for (r, &rr) in idx[a.target].iter().enumerate() {
                    for (s, &ss) in idx[a.source].iter().enumerate() {
                        out[(r, s)] = m[(rr, ss)].clone();
                    }
                }
                out
            })
            .collect();
        Module::from_parts(dims, actions)
    }
}

/// `R(C) = C ⋉ Ext²(DC, C)`.
#[derive(Debug, Clone)]
pub struct RelationExtension<K: Field> {
    pub ext: Extension<K>,
    pub bimodule: Bimodule<K>,
}

pub fn relation_extension<K: Field>(c: &BasedAlgebra<K>) -> Result<RelationExtension<K>> {
    let bimodule = ext2_bimodule(c)?;
    let k = c.field();
    let d = c.dim();
    let e = bimodule.dim();
    let n = d + e;
    let mut tags: Vec<(usize, usize, String)> =
        c.basis().iter().map(|b| (b.source, b.target, b.label.clone())).collect();
    let mut seen = vec![vec![0usize; c.num_vertices()]; c.num_vertices()];
    for &(i, j) in &bimodule.blocks {
        seen[i][j] += 1;
        let base = format!("r{}_{}", c.vertices()[i], c.vertices()[j]);
        let label = if seen[i][j] == 1 { base } else { format!("{base}_{}", seen[i][j]) };
        tags.push((i, j, label));
    }
    let mut table: Vec<Sparse<K::Elem>> = vec![Vec::new(); n * n];
    for a in 0..d {
        for b in 0..d {
            table[a * n + b] = c.product(a, b).to_vec();
        }
        for r in 0..e {
            let l = bimodule.left[a].column(r);
            table[a * n + d + r] = l.into_iter().enumerate().filter(|(_, x)| !k.is_zero(x)).map(|(s, x)| (d + s, x)).collect();
            let rr = bimodule.right[a].column(r);
            table[(d + r) * n + a] =
                rr.into_iter().enumerate().filter(|(_, x)| !k.is_zero(x)).map(|(s, x)| (d + s, x)).collect();
        }
    }
    let mut radical = c.radical().to_vec();
    radical.extend(d..n);
    let raw = RawAlgebra {
        vertices: c.vertices().to_vec(),
        tags,
        table,
        idempotents: c.idempotents().to_vec(),
        radical,
    };
    let (alg, rebase) = BasedAlgebra::from_raw(k.clone(), raw)?;
    Ok(RelationExtension { ext: finish(k, alg, rebase, d), bimodule })
}

/// Which indecomposable projective each summand of `p` is, with
/// multiplicities.
pub fn projective_multiplicities<K: Field>(c: &BasedAlgebra<K>, p: &Module<K>) -> Result<Vec<usize>> {
    let mut mult = vec![0; c.num_vertices()];
    for (s, m) in decompose(c, p)? {
        let j = (0..c.num_vertices())
            .find(|&j| indecomposables_isomorphic(c, &s, &Module::projective(c, j)))
            .ok_or(Error::NotProjective)?;
        mult[j] += m;
    }
    Ok(mult)
}

/// `P̄ = ⊕ a_j P_R(j)` for `P = ⊕ a_j P_C(j)`.
pub fn lift_projective<K: Field>(c: &BasedAlgebra<K>, p: &Module<K>, r: &RelationExtension<K>) -> Result<Module<K>> {
    let mult = projective_multiplicities(c, p)?;
    let ra = &r.ext.algebra;
    let mut parts = Vec::new();
    for (j, &a) in mult.iter().enumerate() {
        for _ in 0..a {
            parts.push(Module::projective(ra, j));
        }
    }
    Ok(if parts.is_empty() { Module::zero(ra) } else { Module::direct_sum(ra.field(), &parts) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Every invariant agrees. Evidence, not a proof.
    ConsistentWithIsomorphism,
    NotIsomorphic,
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Verdict::ConsistentWithIsomorphism => "consistent with isomorphism",
            Verdict::NotIsomorphic => "NOT isomorphic",
        })
    }
}

/// Invariant comparison of two algebras.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub dims: (usize, usize),
    /// Vertex permutation matching the Gabriel quivers, preferring one that
    /// also matches the Cartan matrices.
    pub quiver_iso: Option<Vec<usize>>,
    pub cartan_equal: bool,
    pub verdict: Verdict,
}

pub fn compare_algebras<K: Field>(a: &BasedAlgebra<K>, b: &BasedAlgebra<K>) -> Comparison {
    let qa = a.gabriel_quiver().multiplicities();
    let qb = b.gabriel_quiver().multiplicities();
    let ca = a.cartan_matrix();
    let cb = b.cartan_matrix();
    let both = isomorphisms(&qa, &qb, &mut |p| {
        (0..p.len()).all(|i| (0..p.len()).all(|j| ca[i][j] == cb[p[i]][p[j]]))
    });
    let (quiver_iso, cartan_equal) = match both {
        Some(p) => (Some(p), true),
        None => (isomorphisms(&qa, &qb, &mut |_| true), false),
    };
    let ok = a.dim() == b.dim() && quiver_iso.is_some() && cartan_equal;
    Comparison {
        dims: (a.dim(), b.dim()),
        quiver_iso,
        cartan_equal,
        verdict: if ok { Verdict::ConsistentWithIsomorphism } else { Verdict::NotIsomorphic },
    }
}

/// Both sides of `R(C[P]) ≅ R(C)[P̄]`.
#[derive(Debug, Clone)]
pub struct Thm1Instance<K: Field> {
    pub left: BasedAlgebra<K>,
    pub right: BasedAlgebra<K>,
    pub comparison: Comparison,
}

pub fn verify_thm1_instance<K: Field>(c: &BasedAlgebra<K>, p: &Module<K>) -> Result<Thm1Instance<K>> {
    projective_multiplicities(c, p)?;
    let cp = one_point_extension(c, p)?;
    let left = relation_extension(&cp.algebra)?.ext.algebra;
    let rc = relation_extension(c)?;
    let pbar = lift_projective(c, p, &rc)?;
    let right = one_point_extension(&rc.ext.algebra, &pbar)?.algebra;
    let comparison = compare_algebras(&left, &right);
    Ok(Thm1Instance { left, right, comparison })
}
