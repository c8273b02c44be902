//! Right modules as representations of the Gabriel quiver.
//!
//! A module stores one vector space per vertex and one matrix per arrow
//! generator of its algebra. An arrow `a: s -> t` acts by a `dims[t] x
//! dims[s]` matrix on column vectors, and a word `a1*a2*...` acts by the
//! product `A_ak ... A_a2 A_a1`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Echelon, Matrix, PivotOrder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Module<K: Field> {
    dims: Vec<usize>,
    actions: Vec<Matrix<K::Elem>>,
}

/// A morphism of modules, one matrix per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap<K: Field> {
    pub blocks: Vec<Matrix<K::Elem>>,
}

impl<K: Field> Module<K> {
    /// Builds a module and checks it against the algebra's structure
    /// constants.
    pub fn new(alg: &BasedAlgebra<K>, dims: Vec<usize>, actions: Vec<Matrix<K::Elem>>) -> Result<Self> {
        let m = Module { dims, actions };
        m.validate(alg)?;
        Ok(m)
    }

    /// Builds a module without checking the relations.
    pub fn from_parts(dims: Vec<usize>, actions: Vec<Matrix<K::Elem>>) -> Self {
        Module { dims, actions }
    }

    pub fn zero(alg: &BasedAlgebra<K>) -> Self {
        let k = alg.field();
        let actions = alg.arrows().iter().map(|_| Matrix::zeros(k, 0, 0)).collect();
        Module { dims: vec![0; alg.num_vertices()], actions }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn actions(&self) -> &[Matrix<K::Elem>] {
        &self.actions
    }

    pub fn action(&self, g: usize) -> &Matrix<K::Elem> {
        &self.actions[g]
    }

    /// Offsets of the vertex spaces inside the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            off.push(acc);
            acc += d;
        }
        off
    }

    /// Shapes of the arrow matrices and the relations of the algebra.
    pub fn validate(&self, alg: &BasedAlgebra<K>) -> Result<()> {
        let k = alg.field();
        if self.dims.len() != alg.num_vertices() || self.actions.len() != alg.arrows().len() {
            return Err(Error::InvalidModule("module does not match the algebra".to_string()));
        }
        for (g, a) in alg.arrows().iter().enumerate() {
            let m = &self.actions[g];
            if m.rows() != self.dims[a.target] || m.cols() != self.dims[a.source] {
                return Err(Error::InvalidModule(format!("action of `{}` has the wrong shape", a.name)));
            }
        }
        let acts = self.basis_actions(alg);
        for (b, el) in alg.basis().iter().enumerate() {
            for (g, a) in alg.arrows().iter().enumerate() {
                if el.target != a.source {
                    continue;
                }
                let lhs = self.actions[g].mul(k, &acts[b]);
                let mut rhs = Matrix::zeros(k, self.dims[a.target], self.dims[el.source]);
                for (c, x) in alg.product(b, a.element) {
                    rhs = rhs.add(k, &acts[*c].scale(k, x));
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "relation violated at `{}`*`{}`",
                        el.label, a.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Action of basis element `b` as a map `M_source -> M_target`.
    pub fn act_basis(&self, alg: &BasedAlgebra<K>, b: usize) -> Matrix<K::Elem> {
        let k = alg.field();
        let el = &alg.basis()[b];
        let mut m = Matrix::identity(k, self.dims[el.source]);
        for &g in &el.word {
            m = self.actions[g].mul(k, &m);
        }
        m
    }

    pub fn basis_actions(&self, alg: &BasedAlgebra<K>) -> Vec<Matrix<K::Elem>> {
        (0..alg.dim()).map(|b| self.act_basis(alg, b)).collect()
    }

    /// Action of an algebra element on a vector of `M_v`, landing in the
    /// total space split by vertex.
    pub fn act_element(&self, alg: &BasedAlgebra<K>, v: usize, x: &[K::Elem], elem: &[K::Elem]) -> Vec<Vec<K::Elem>> {
        let k = alg.field();
        let mut out: Vec<Vec<K::Elem>> = self.dims.iter().map(|&d| vec![k.zero(); d]).collect();
        for (b, c) in elem.iter().enumerate() {
            let el = &alg.basis()[b];
            if k.is_zero(c) || el.source != v {
                continue;
            }
            let y = self.act_basis(alg, b).mul_vec(k, x);
            for (o, yi) in out[el.target].iter_mut().zip(y) {
                k.mul_add_assign(o, c, &yi);
            }
        }
        out
    }

    pub fn simple(alg: &BasedAlgebra<K>, v: usize) -> Self {
        let k = alg.field();
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        let actions = alg
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(k, dims[a.target], dims[a.source]))
            .collect();
        Module { dims, actions }
    }

    /// `P(v) = e_v A`, with `P(v)_j` spanned by the basis elements from `v`
    /// to `j` in increasing order.
    pub fn projective(alg: &BasedAlgebra<K>, v: usize) -> Self {
        let k = alg.field();
        let n = alg.num_vertices();
        let dims: Vec<usize> = (0..n).map(|j| alg.block(v, j).len()).collect();
        let actions = alg
            .arrows()
            .iter()
            .map(|a| {
                let src = alg.block(v, a.source);
                let tgt = alg.block(v, a.target);
                let mut m = Matrix::zeros(k, tgt.len(), src.len());
                for (c, &b) in src.iter().enumerate() {
                    for (d, x) in alg.product(b, a.element) {
                        let r = tgt.iter().position(|t| t == d).expect("product stays in its block");
                        m[(r, c)] = x.clone();
                    }
                }
                m
            })
            .collect();
        Module { dims, actions }
    }

    /// `I(v) = D(e_v A^op)`.
    pub fn injective(alg: &BasedAlgebra<K>, v: usize) -> Self {
        Module::projective(&alg.opposite(), v).dual()
    }

    /// `A_A`.
    pub fn regular(alg: &BasedAlgebra<K>) -> Self {
        let ps: Vec<Module<K>> = (0..alg.num_vertices()).map(|v| Module::projective(alg, v)).collect();
        Module::direct_sum(alg.field(), &ps)
    }

    /// `DA`, the sum of the indecomposable injectives.
    pub fn dual_regular(alg: &BasedAlgebra<K>) -> Self {
        Module::regular(&alg.opposite()).dual()
    }

    /// `Hom_k(M, k)`, a module over the opposite algebra.
    pub fn dual(&self) -> Self {
        Module { dims: self.dims.clone(), actions: self.actions.iter().map(|m| m.transpose()).collect() }
    }

    pub fn direct_sum(k: &K, parts: &[Module<K>]) -> Self {
        let nv = parts.first().map_or(0, |p| p.dims.len());
        let na = parts.first().map_or(0, |p| p.actions.len());
        let mut dims = vec![0; nv];
        for p in parts {
            for (d, x) in dims.iter_mut().zip(&p.dims) {
                *d += x;
            }
        }
        let mut actions = Vec::with_capacity(na);
        for g in 0..na {
            let rows: usize = parts.iter().map(|p| p.actions[g].rows()).sum();
            let cols: usize = parts.iter().map(|p| p.actions[g].cols()).sum();
            let mut m = Matrix::zeros(k, rows, cols);
            let (mut r0, mut c0) = (0, 0);
            for p in parts {
                let a = &p.actions[g];
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        m[(r0 + r, c0 + c)] = a[(r, c)].clone();
                    }
                }
                r0 += a.rows();
                c0 += a.cols();
            }
            actions.push(m);
        }
        Module { dims, actions }
    }

    /// Submodule generated by the given vectors, with its inclusion.
    ///
    /// The basis of each vertex space is the reduced echelon basis of the
    /// generated subspace.
    pub fn submodule(&self, alg: &BasedAlgebra<K>, gens: &[Vec<Vec<K::Elem>>]) -> (Module<K>, ModuleMap<K>) {
        let k = alg.field();
        let mut spans: Vec<Echelon<K::Elem>> = self.dims.iter().map(|&d| Echelon::new(d, PivotOrder::Lowest)).collect();
        let mut queue: Vec<(usize, Vec<K::Elem>)> = Vec::new();
        for (v, vs) in gens.iter().enumerate() {
            for x in vs {
                queue.push((v, x.clone()));
            }
        }
        while let Some((v, x)) = queue.pop() {
            if !spans[v].insert(k, &x) {
                continue;
            }
            for (g, a) in alg.arrows().iter().enumerate() {
                if a.source == v {
                    queue.push((a.target, self.actions[g].mul_vec(k, &x)));
                }
            }
        }
        self.sub_from_spans(alg, &spans)
    }

    fn sub_from_spans(&self, alg: &BasedAlgebra<K>, spans: &[Echelon<K::Elem>]) -> (Module<K>, ModuleMap<K>) {
        let k = alg.field();
        let dims: Vec<usize> = spans.iter().map(|s| s.rank()).collect();
        let blocks: Vec<Matrix<K::Elem>> =
            spans.iter().zip(&self.dims).map(|(s, &d)| Matrix::columns_of(k, s.rows(), d)).collect();
        let actions = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(g, a)| {
                let mut m = Matrix::zeros(k, dims[a.target], dims[a.source]);
                for (c, u) in spans[a.source].rows().iter().enumerate() {
                    let w = self.actions[g].mul_vec(k, u);
                    let coords = spans[a.target].coordinates(k, &w).expect("span is closed");
                    for (r, x) in coords.into_iter().enumerate() {
                        m[(r, c)] = x;
                    }
                }
                m
            })
            .collect();
        (Module { dims, actions }, ModuleMap { blocks })
    }

    /// Quotient by the submodule generated by the given vectors, with the
    /// projection. The quotient basis is the unit vectors of the free
    /// columns.
    pub fn quotient(&self, alg: &BasedAlgebra<K>, gens: &[Vec<Vec<K::Elem>>]) -> (Module<K>, ModuleMap<K>) {
        let k = alg.field();
        let (_, incl) = self.submodule(alg, gens);
        let spans: Vec<Echelon<K::Elem>> = incl
            .blocks
            .iter()
            .zip(&self.dims)
            .map(|(b, &d)| {
                let mut e = Echelon::new(d, PivotOrder::Lowest);
                for c in 0..b.cols() {
                    e.insert(k, &b.column(c));
                }
                e
            })
            .collect();
        let free: Vec<Vec<usize>> = spans.iter().map(|s| s.free_columns()).collect();
        let reduce = |v: usize, x: Vec<K::Elem>| -> Vec<K::Elem> {
            let mut w = x;
            spans[v].reduce(k, &mut w);
            free[v].iter().map(|&c| w[c].clone()).collect()
        };
        let blocks: Vec<Matrix<K::Elem>> = (0..self.dims.len())
            .map(|v| {
                let cols: Vec<Vec<K::Elem>> = (0..self.dims[v])
                    .map(|j| {
                        let mut u = vec![k.zero(); self.dims[v]];
                        u[j] = k.one();
                        reduce(v, u)
                    })
                    .collect();
                Matrix::columns_of(k, &cols, free[v].len())
            })
            .collect();
        let dims: Vec<usize> = free.iter().map(|f| f.len()).collect();
        let actions = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(g, a)| {
                let cols: Vec<Vec<K::Elem>> = free[a.source]
                    .iter()
                    .map(|&c| reduce(a.target, self.actions[g].column(c)))
                    .collect();
                Matrix::columns_of(k, &cols, dims[a.target])
            })
            .collect();
        (Module { dims, actions }, ModuleMap { blocks })
    }

    /// Generators of `M rad A`, the images of the arrows.
    fn radical_gens(&self, alg: &BasedAlgebra<K>) -> Vec<Vec<Vec<K::Elem>>> {
        let mut gens: Vec<Vec<Vec<K::Elem>>> = vec![Vec::new(); self.dims.len()];
        for (g, a) in alg.arrows().iter().enumerate() {
            for c in 0..self.actions[g].cols() {
                gens[a.target].push(self.actions[g].column(c));
            }
        }
        gens
    }

    pub fn radical(&self, alg: &BasedAlgebra<K>) -> (Module<K>, ModuleMap<K>) {
        self.submodule(alg, &self.radical_gens(alg))
    }

    pub fn top(&self, alg: &BasedAlgebra<K>) -> (Module<K>, ModuleMap<K>) {
        self.quotient(alg, &self.radical_gens(alg))
    }

    /// Vectors killed by every arrow.
    pub fn socle(&self, alg: &BasedAlgebra<K>) -> (Module<K>, ModuleMap<K>) {
        let k = alg.field();
        let mut gens = Vec::with_capacity(self.dims.len());
        for v in 0..self.dims.len() {
            let outs: Vec<usize> = alg.arrows().iter().enumerate().filter(|(_, a)| a.source == v).map(|(g, _)| g).collect();
            let mut stacked = Matrix::zeros(k, 0, self.dims[v]);
            for g in outs {
                stacked = stacked.vstack(&self.actions[g]);
            }
            gens.push(stacked.kernel_basis(k));
        }
        self.submodule(alg, &gens)
    }

    /// Dimension vector of the top.
    pub fn top_dims(&self, alg: &BasedAlgebra<K>) -> Vec<usize> {
        self.top(alg).0.dims
    }

    /// Stacked label of the radical layers, e.g. `1/23/4`.
    pub fn loewy_label(&self, alg: &BasedAlgebra<K>) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut layers = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let top = cur.top_dims(alg);
            let mut s = String::new();
            for (v, &d) in top.iter().enumerate() {
                for _ in 0..d {
                    s.push_str(&alg.vertices()[v]);
                }
            }
            layers.push(s);
            cur = cur.radical(alg).0;
        }
        layers.join("/")
    }

    pub fn dim_label(&self) -> String {
        let mut s = String::from("(");
        for (i, d) in self.dims.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{d}");
        }
        s.push(')');
        s
    }

    /// Restriction of scalars along a linear map `phi` from `from` to the
    /// algebra of `self`, given as a `dim(self alg) x dim(from)` matrix.
    ///
    /// Each idempotent must map to an idempotent or to zero. The result is
    /// validated, so a map that is not multiplicative on the module shows up
    /// as an error.
    pub fn restrict_along(
        &self,
        to: &BasedAlgebra<K>,
        from: &BasedAlgebra<K>,
        phi: &Matrix<K::Elem>,
    ) -> Result<Module<K>> {
        let k = to.field();
        let mut vmap = Vec::with_capacity(from.num_vertices());
        for v in 0..from.num_vertices() {
            let img = phi.column(from.idempotents()[v]);
            let nz: Vec<usize> = (0..img.len()).filter(|&i| !k.is_zero(&img[i])).collect();
            let m = match nz.as_slice() {
                [] => None,
                [i] if k.is_one(&img[*i]) => to.idempotents().iter().position(|e| e == i),
                _ => None,
            };
            if m.is_none() && !nz.is_empty() {
                return Err(Error::InvalidModule("map does not send idempotents to idempotents".to_string()));
            }
            vmap.push(m);
        }
        let dims: Vec<usize> = vmap.iter().map(|m| m.map_or(0, |v| self.dims[v])).collect();
        let acts = self.basis_actions(to);
        let actions = from
            .arrows()
            .iter()
            .map(|a| {
                let mut m = Matrix::zeros(k, dims[a.target], dims[a.source]);
                let (Some(s), Some(t)) = (vmap[a.source], vmap[a.target]) else {
                    return m;
                };
                let img = phi.column(a.element);
                for (b, x) in img.iter().enumerate() {
                    let el = &to.basis()[b];
                    if k.is_zero(x) || el.source != s || el.target != t {
                        continue;
                    }
                    m = m.add(k, &acts[b].scale(k, x));
                }
                m
            })
            .collect();
        Module::new(from, dims, actions)
    }

    /// Whether every element of `ideal` acts as zero.
    pub fn annihilated_by(&self, alg: &BasedAlgebra<K>, ideal: &[Vec<K::Elem>]) -> bool {
        let k = alg.field();
        let acts = self.basis_actions(alg);
        for x in ideal {
            for s in 0..alg.num_vertices() {
                for t in 0..alg.num_vertices() {
                    let mut m = Matrix::zeros(k, self.dims[t], self.dims[s]);
                    for &b in alg.block(s, t) {
                        if !k.is_zero(&x[b]) {
                            m = m.add(k, &acts[b].scale(k, &x[b]));
                        }
                    }
                    if !m.is_zero(k) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl<K: Field> ModuleMap<K> {
    pub fn zero(k: &K, source: &Module<K>, target: &Module<K>) -> Self {
        ModuleMap { blocks: source.dims.iter().zip(&target.dims).map(|(&s, &t)| Matrix::zeros(k, t, s)).collect() }
    }

    pub fn identity(k: &K, m: &Module<K>) -> Self {
        ModuleMap { blocks: m.dims.iter().map(|&d| Matrix::identity(k, d)).collect() }
    }

    /// `next ∘ self`.
    pub fn then(&self, k: &K, next: &ModuleMap<K>) -> Self {
        ModuleMap { blocks: self.blocks.iter().zip(&next.blocks).map(|(f, g)| g.mul(k, f)).collect() }
    }

    pub fn add(&self, k: &K, other: &ModuleMap<K>) -> Self {
        ModuleMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(f, g)| f.add(k, g)).collect() }
    }

    pub fn scale(&self, k: &K, c: &K::Elem) -> Self {
        ModuleMap { blocks: self.blocks.iter().map(|f| f.scale(k, c)).collect() }
    }

    pub fn is_zero(&self, k: &K) -> bool {
        self.blocks.iter().all(|b| b.is_zero(k))
    }

    pub fn rank(&self, k: &K) -> usize {
        self.blocks.iter().map(|b| b.rank(k)).sum()
    }

    pub fn is_iso(&self, k: &K) -> bool {
        self.blocks.iter().all(|b| b.rows() == b.cols() && b.rank(k) == b.rows())
    }

    pub fn is_injective(&self, k: &K) -> bool {
        self.blocks.iter().all(|b| b.rank(k) == b.cols())
    }

    pub fn is_surjective(&self, k: &K) -> bool {
        self.blocks.iter().all(|b| b.rank(k) == b.rows())
    }

    pub fn trace(&self, k: &K) -> K::Elem {
        let mut t = k.zero();
        for b in &self.blocks {
            t = k.add(&t, &b.trace(k));
        }
        t
    }

    /// All entries, block by block, row-major.
    pub fn flatten(&self) -> Vec<K::Elem> {
        self.blocks.iter().flat_map(|b| b.data().iter().cloned()).collect()
    }

    /// Inverse of [`ModuleMap::flatten`] for maps `source -> target`.
    pub fn unflatten(source: &Module<K>, target: &Module<K>, v: &[K::Elem]) -> Self {
        let mut pos = 0;
        let blocks = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| {
                let m = Matrix::from_vec(t, s, v[pos..pos + s * t].to_vec());
                pos += s * t;
                m
            })
            .collect();
        ModuleMap { blocks }
    }

    /// Checks the commuting squares.
    pub fn is_homomorphism(&self, alg: &BasedAlgebra<K>, source: &Module<K>, target: &Module<K>) -> bool {
        let k = alg.field();
        alg.arrows().iter().enumerate().all(|(g, a)| {
            self.blocks[a.target].mul(k, &source.actions[g]) == target.actions[g].mul(k, &self.blocks[a.source])
        })
    }

    pub fn kernel(&self, alg: &BasedAlgebra<K>, source: &Module<K>) -> (Module<K>, ModuleMap<K>) {
        let k = alg.field();
        let gens: Vec<Vec<Vec<K::Elem>>> = self.blocks.iter().map(|b| b.kernel_basis(k)).collect();
        source.submodule(alg, &gens)
    }

    pub fn image(&self, alg: &BasedAlgebra<K>, target: &Module<K>) -> (Module<K>, ModuleMap<K>) {
        target.submodule(alg, &self.column_gens())
    }

    pub fn cokernel(&self, alg: &BasedAlgebra<K>, target: &Module<K>) -> (Module<K>, ModuleMap<K>) {
        target.quotient(alg, &self.column_gens())
    }

    fn column_gens(&self) -> Vec<Vec<Vec<K::Elem>>> {
        self.blocks.iter().map(|b| (0..b.cols()).map(|c| b.column(c)).collect()).collect()
    }
}

/// A basis of `Hom_A(M, N)`.
pub fn hom_basis<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>, n: &Module<K>) -> Vec<ModuleMap<K>> {
    let k = alg.field();
    let nv = alg.num_vertices();
    let mut off = Vec::with_capacity(nv);
    let mut total = 0;
    for v in 0..nv {
        off.push(total);
        total += m.dims[v] * n.dims[v];
    }
    if total == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<K::Elem>> = Vec::new();
    for (g, a) in alg.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let am = &m.actions[g];
        let an = &n.actions[g];
        // (f_t A^M - A^N f_s)[r][c] = 0
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![k.zero(); total];
                for q in 0..m.dims[t] {
                    let x = &am[(q, c)];
                    if !k.is_zero(x) {
                        let i = off[t] + r * m.dims[t] + q;
                        row[i] = k.add(&row[i], x);
                    }
                }
                for q in 0..n.dims[s] {
                    let x = &an[(r, q)];
                    if !k.is_zero(x) {
                        let i = off[s] + q * m.dims[s] + c;
                        row[i] = k.sub(&row[i], x);
                    }
                }
                if row.iter().any(|x| !k.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = Matrix::from_rows(rows, total);
    sys.kernel_basis(k).into_iter().map(|v| ModuleMap::unflatten(m, n, &v)).collect()
}

pub fn hom_dim<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>, n: &Module<K>) -> usize {
    hom_basis(alg, m, n).len()
}

/// Whether `End(M)` is local, using the trace form.
///
/// The radical of `End(M)` is the radical of `(x, y) -> tr(xy)`, which is
/// exact when the characteristic is zero or larger than `dim M`. The ring is
/// accepted as local when that radical has codimension one.
pub fn end_is_local<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>, end: &[ModuleMap<K>]) -> Option<bool> {
    let k = alg.field();
    let p = k.characteristic();
    if p != 0 && p <= m.dim() as u64 {
        return None;
    }
    let n = end.len();
    let mut gram = Matrix::zeros(k, n, n);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = end[j].then(k, &end[i]).trace(k);
        }
    }
    Some(n > 0 && n - gram.kernel_basis(k).len() == 1)
}

/// A basis of `rad End(M)` for indecomposable `M`, given a basis of `End(M)`.
///
/// Uses the kernel of the trace form when the characteristic exceeds
/// `dim M`; otherwise shifts each basis endomorphism by its unique
/// eigenvalue, which needs `End(M)/rad = k`.
pub fn radical_of_end<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>, end: &[ModuleMap<K>]) -> Result<Vec<ModuleMap<K>>> {
    let k = alg.field();
    let p = k.characteristic();
    let n = end.len();
    let combo = |c: &[K::Elem]| {
        let mut acc = ModuleMap::zero(k, m, m);
        for (f, x) in end.iter().zip(c) {
            acc = acc.add(k, &f.scale(k, x));
        }
        acc
    };
    if p == 0 || p > m.dim() as u64 {
        let mut gram = Matrix::zeros(k, n, n);
        for i in 0..n {
            for j in 0..n {
                gram[(i, j)] = end[j].then(k, &end[i]).trace(k);
            }
        }
        return Ok(gram.kernel_basis(k).iter().map(|c| combo(c)).collect());
    }
    let id = ModuleMap::identity(k, m);
    let mut out = Vec::with_capacity(n);
    let mut span = Echelon::new(id.flatten().len(), PivotOrder::Lowest);
    for f in end {
        let ev = eigenvalues(k, f, m.dim());
        let [lam] = ev.as_slice() else {
            return Err(Error::DecompositionFailed("endomorphism ring is not split local".to_string()));
        };
        let g = f.add(k, &id.scale(k, &k.neg(lam)));
        if span.insert(k, &g.flatten()) {
            out.push(g);
        }
    }
    Ok(out)
}

/// A nonzero proper direct summand from a Fitting decomposition, if the
/// sweep finds one.
fn fitting_split<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>, end: &[ModuleMap<K>]) -> Option<(ModuleMap<K>, ModuleMap<K>)> {
    let k = alg.field();
    let d = m.dim();
    let mut cands: Vec<ModuleMap<K>> = end.to_vec();
    for i in 0..end.len() {
        for j in (i + 1)..end.len() {
            cands.push(end[i].add(k, &end[j]));
        }
    }
    for i in 0..end.len() {
        for j in 0..end.len() {
            cands.push(end[j].then(k, &end[i]));
        }
    }
    let id = ModuleMap::identity(k, m);
    for f in cands {
        for lam in eigenvalues(k, &f, d) {
            let g = f.add(k, &id.scale(k, &k.neg(&lam)));
            let mut h = g.clone();
            for _ in 1..d {
                h = h.then(k, &g);
            }
            let r = h.rank(k);
            if r > 0 && r < d {
                return Some((h.clone(), h));
            }
        }
    }
    None
}

/// Eigenvalues in the field of an endomorphism, from its minimal
/// polynomial.
fn eigenvalues<K: Field>(k: &K, f: &ModuleMap<K>, d: usize) -> Vec<K::Elem> {
    let id: Vec<Matrix<K::Elem>> = f.blocks.iter().map(|b| Matrix::identity(k, b.rows())).collect();
    let mut powers: Vec<Vec<K::Elem>> = vec![ModuleMap::<K> { blocks: id.clone() }.flatten()];
    let mut cur = ModuleMap::<K> { blocks: id };
    let mut span = Echelon::new(powers[0].len(), PivotOrder::Lowest);
    span.insert(k, &powers[0]);
    for _ in 0..d {
        cur = cur.then(k, f);
        let v = cur.flatten();
        if !span.insert(k, &v) {
            // v = sum c_i f^i
            let cols = Matrix::columns_of(k, &powers, v.len());
            let c = cols.solve(k, &v).expect("power is dependent");
            let mut poly: Vec<K::Elem> = c.iter().map(|x| k.neg(x)).collect();
            poly.push(k.one());
            return k.roots(&poly).unwrap_or_default();
        }
        powers.push(v);
    }
    Vec::new()
}

/// Splits a module into indecomposable summands.
pub fn indecomposable_summands<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>) -> Result<Vec<Module<K>>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let end = hom_basis(alg, m, m);
    if end_is_local(alg, m, &end) == Some(true) {
        return Ok(vec![m.clone()]);
    }
    match fitting_split(alg, m, &end) {
        Some((h, _)) => {
            let (img, _) = h.image(alg, m);
            let (ker, _) = h.kernel(alg, m);
            let mut out = indecomposable_summands(alg, &img)?;
            out.extend(indecomposable_summands(alg, &ker)?);
            Ok(out)
        }
        None => {
            if end_is_local(alg, m, &end).is_none() {
                // Small characteristic: a failed sweep is the best evidence.
                return Ok(vec![m.clone()]);
            }
            Err(Error::DecompositionFailed(format!(
                "no idempotent found in a {}-dimensional endomorphism ring",
                end.len()
            )))
        }
    }
}

/// Isomorphism of two indecomposable modules: some `g ∘ f` is invertible.
pub fn indecomposables_isomorphic<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>, n: &Module<K>) -> bool {
    let k = alg.field();
    if m.dims != n.dims {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let mn = hom_basis(alg, m, n);
    if mn.is_empty() {
        return false;
    }
    let nm = hom_basis(alg, n, m);
    for f in &mn {
        if f.is_iso(k) {
            return true;
        }
        for g in &nm {
            if f.then(k, g).is_iso(k) {
                return true;
            }
        }
    }
    false
}

/// Indecomposable summands grouped up to isomorphism.
pub fn decompose<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>) -> Result<Vec<(Module<K>, usize)>> {
    let mut groups: Vec<(Module<K>, usize)> = Vec::new();
    for s in indecomposable_summands(alg, m)? {
        match groups.iter_mut().find(|(g, _)| indecomposables_isomorphic(alg, g, &s)) {
            Some(g) => g.1 += 1,
            None => groups.push((s, 1)),
        }
    }
    Ok(groups)
}

pub fn is_indecomposable<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>) -> Result<bool> {
    Ok(indecomposable_summands(alg, m)?.len() == 1)
}

/// Isomorphism of arbitrary modules through their decompositions.
pub fn is_isomorphic<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>, n: &Module<K>) -> Result<bool> {
    if m.dims != n.dims {
        return Ok(false);
    }
    let a = decompose(alg, m)?;
    let b = decompose(alg, n)?;
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for (x, mx) in &a {
        let Some(j) = (0..b.len()).find(|&j| !used[j] && b[j].1 == *mx && indecomposables_isomorphic(alg, x, &b[j].0))
        else {
            return Ok(false);
        };
        used[j] = true;
    }
    Ok(true)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::{FieldSpec, Rationals};
    use crate::quiver::{Path, Presentation, Quiver, Relation};

    pub(crate) type Rel<'a> = &'a [(i64, &'a [&'a str])];

    pub(crate) fn algebra(vs: &[&str], arrows: &[(&str, &str, &str)], rels: &[Rel]) -> BasedAlgebra<Rationals> {
        let mut q = Quiver::new(vs.iter().copied()).unwrap();
        for &(n, s, t) in arrows {
            q.add_arrow_by_label(n, s, t).unwrap();
        }
        let path = |names: &[&str]| {
            Path::from_arrows(&q, names.iter().map(|n| q.arrow_index(n).unwrap()).collect()).unwrap()
        };
        let rels = rels
            .iter()
            .map(|r| Relation { terms: r.iter().map(|&(c, w)| (c, path(w))).collect() })
            .collect();
        let p = Presentation::new(FieldSpec::Rational, q.clone(), rels).unwrap();
        BasedAlgebra::from_presentation(Rationals, &p).unwrap()
    }

    const D4_ARROWS: [(&str, &str, &str); 4] = [("a", "1", "2"), ("b", "2", "4"), ("g", "1", "3"), ("d", "3", "4")];

    /// The tilted algebra of type D4 with one commutativity relation.
    pub(crate) fn d4c() -> BasedAlgebra<Rationals> {
        algebra(&["1", "2", "3", "4"], &D4_ARROWS, &[&[(1, &["a", "b"]), (1, &["g", "d"])]])
    }

    /// Its relation extension, given by generators and relations.
    pub(crate) fn d4b() -> BasedAlgebra<Rationals> {
        let mut arrows = D4_ARROWS.to_vec();
        arrows.push(("e", "4", "1"));
        algebra(
            &["1", "2", "3", "4"],
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

    #[test]
    fn projectives_and_injectives_of_d4() {
        let b = d4b();
        let p2 = Module::projective(&b, 1);
        assert_eq!(p2.dims(), &[0, 1, 0, 1]);
        assert_eq!(p2.loewy_label(&b), "2/4");
        let p1 = Module::projective(&b, 0);
        assert_eq!(p1.dims(), &[1, 1, 1, 1]);
        assert_eq!(p1.loewy_label(&b), "1/23/4");
        p1.validate(&b).unwrap();
        let i4 = Module::injective(&b, 3);
        i4.validate(&b).unwrap();
        assert!(indecomposables_isomorphic(&b, &i4, &p1));
        let p4 = Module::projective(&b, 3);
        assert_eq!(p4.loewy_label(&b), "4/1");
        assert_eq!(hom_dim(&b, &p4, &p1), 1);
    }

    #[test]
    fn hom_from_projective_is_evaluation() {
        let b = d4b();
        let m = Module::dual_regular(&b);
        m.validate(&b).unwrap();
        for v in 0..4 {
            assert_eq!(hom_dim(&b, &Module::projective(&b, v), &m), m.dims()[v]);
            assert_eq!(hom_dim(&b, &m, &Module::injective(&b, v)), m.dims()[v]);
            for w in 0..4 {
                let d = hom_dim(&b, &Module::simple(&b, v), &Module::simple(&b, w));
                assert_eq!(d, usize::from(v == w));
            }
        }
    }

    #[test]
    fn radical_top_socle() {
        let b = d4b();
        for v in 0..4 {
            let p = Module::projective(&b, v);
            let (top, _) = p.top(&b);
            assert!(indecomposables_isomorphic(&b, &top, &Module::simple(&b, v)));
            let (soc, _) = Module::injective(&b, v).socle(&b);
            assert!(indecomposables_isomorphic(&b, &soc, &Module::simple(&b, v)));
        }
        let (rad, incl) = Module::projective(&b, 1).radical(&b);
        assert!(indecomposables_isomorphic(&b, &rad, &Module::simple(&b, 3)));
        assert!(incl.is_injective(b.field()));
    }

    #[test]
    fn decomposition_of_sums() {
        let b = d4b();
        let k = b.field();
        let s1 = Module::simple(&b, 0);
        let two = Module::direct_sum(k, &[s1.clone(), s1.clone()]);
        let d = decompose(&b, &two).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, 2);
        let p = Module::direct_sum(k, &[Module::projective(&b, 0), Module::projective(&b, 1), Module::projective(&b, 2)]);
        let d = decompose(&b, &p).unwrap();
        assert_eq!(d.len(), 3);
        assert!(d.iter().all(|x| x.1 == 1));
        let mixed = Module::direct_sum(k, &[Module::projective(&b, 1), Module::simple(&b, 1), Module::projective(&b, 1)]);
        let d = decompose(&b, &mixed).unwrap();
        let mut mults: Vec<usize> = d.iter().map(|x| x.1).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2]);
        let re = Module::direct_sum(k, &d.iter().flat_map(|(m, c)| core::iter::repeat(m.clone()).take(*c)).collect::<Vec<_>>());
        assert!(is_isomorphic(&b, &re, &mixed).unwrap());
        assert!(!is_isomorphic(&b, &Module::projective(&b, 1), &Module::simple(&b, 1)).unwrap());
    }

    #[test]
    fn hom_maps_commute() {
        let b = d4b();
        let m = Module::regular(&b);
        let n = Module::dual_regular(&b);
        for f in hom_basis(&b, &m, &n) {
            assert!(f.is_homomorphism(&b, &m, &n));
        }
    }

    #[test]
    fn bad_module_is_rejected() {
        let b = d4b();
        let k = b.field();
        // 1 -> 2 -> 4 with nonzero a*b but zero g*d violates a*b + g*d.
        let dims = vec![1, 1, 0, 1];
        let mut actions = Vec::new();
        for a in b.arrows() {
            let mut m = Matrix::zeros(k, dims[a.target], dims[a.source]);
            if a.name == "a" || a.name == "b" {
                m[(0, 0)] = k.one();
            }
            actions.push(m);
        }
        assert!(Module::new(&b, dims, actions).is_err());
    }
}
