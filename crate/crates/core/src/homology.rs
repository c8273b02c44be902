//! Projective resolutions, Ext, the transpose and the AR translates.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Echelon, Matrix, PivotOrder};
use crate::module::{Module, ModuleMap};
use crate::projective::{min_proj_presentation, projective_cover, ProjSum};

/// Default bound on resolution length.
pub const RESOLUTION_CAP: usize = 10;

/// A projective resolution `... -> P_1 -> P_0 -> M`.
///
/// `diffs[0]` is the augmentation `P_0 -> M`, `diffs[j]` maps `P_j` to
/// `P_{j-1}`. `images[j][l]` is the image of the `l`-th generator of `P_j`.
#[derive(Debug, Clone)]
pub struct Resolution<K: Field> {
    pub terms: Vec<ProjSum<K>>,
    pub diffs: Vec<ModuleMap<K>>,
    pub images: Vec<Vec<Vec<K::Elem>>>,
    /// True when the last kernel was zero, so later terms vanish.
    pub complete: bool,
    pub minimal: bool,
}

impl<K: Field> Resolution<K> {
    /// Number of nonzero terms minus one, when complete.
    pub fn length(&self) -> Option<usize> {
        if !self.complete {
            return None;
        }
        Some(self.terms.iter().rposition(|t| !t.is_empty()).unwrap_or(0))
    }

    /// The `j`-th term, empty past the end of a complete resolution.
    pub fn term(&self, alg: &BasedAlgebra<K>, j: usize) -> ProjSum<K> {
        self.terms.get(j).cloned().unwrap_or_else(|| ProjSum::new(alg, Vec::new()))
    }
}

/// Minimal resolution with terms `P_0 .. P_len`.
pub fn resolve<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>, len: usize) -> Resolution<K> {
    let k = alg.field();
    let (p0, epi) = projective_cover(alg, m);
    let mut images = vec![p0.images_of(alg, &epi)];
    let mut terms = vec![p0];
    let mut diffs = vec![epi];
    let mut complete = false;
    for _ in 0..len {
        let last = terms.last().unwrap();
        let (ker, incl) = diffs.last().unwrap().kernel(alg, &last.module);
        if ker.is_zero() {
            complete = true;
            break;
        }
        let (p, cover) = projective_cover(alg, &ker);
        let d = cover.then(k, &incl);
        images.push(p.images_of(alg, &d));
        terms.push(p);
        diffs.push(d);
    }
    if !complete {
        let last = terms.last().unwrap();
        complete = diffs.last().unwrap().kernel(alg, &last.module).0.is_zero();
    }
    Resolution { terms, diffs, images, complete, minimal: true }
}

/// An Ext group with cocycle representatives.
#[derive(Debug, Clone)]
pub struct ExtGroup<K: Field> {
    pub degree: usize,
    pub dim: usize,
    /// Representatives in Yoneda coordinates: one vector of `N_{v_l}` per
    /// summand `P(v_l)` of `P_degree`, concatenated.
    pub cocycles: Vec<Vec<K::Elem>>,
    /// The same representatives as maps `P_degree -> N`.
    pub maps: Vec<ModuleMap<K>>,
    pub term: ProjSum<K>,
}

/// Matrix of `Hom(P_{j-1}, N) -> Hom(P_j, N)` in Yoneda coordinates.
pub fn yoneda_differential<K: Field>(
    alg: &BasedAlgebra<K>,
    prev: &ProjSum<K>,
    cur: &ProjSum<K>,
    cur_images: &[Vec<K::Elem>],
    n: &Module<K>,
    acts: &[Matrix<K::Elem>],
) -> Matrix<K::Elem> {
    let k = alg.field();
    let rows: usize = cur.vertices.iter().map(|&v| n.dims()[v]).sum();
    let cols: usize = prev.vertices.iter().map(|&v| n.dims()[v]).sum();
    let mut d = Matrix::zeros(k, rows, cols);
    let mut col_off = Vec::with_capacity(prev.len());
    let mut acc = 0;
    for &v in &prev.vertices {
        col_off.push(acc);
        acc += n.dims()[v];
    }
    let mut r0 = 0;
    for (l, &vl) in cur.vertices.iter().enumerate() {
        let comps = prev.components(alg, vl, &cur_images[l]);
        for (m, coeffs) in comps.iter().enumerate() {
            let vm = prev.vertices[m];
            for (i, &b) in alg.block(vm, vl).iter().enumerate() {
                if k.is_zero(&coeffs[i]) {
                    continue;
                }
                let a = &acts[b];
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        let x = k.mul(&coeffs[i], &a[(r, c)]);
                        let e = &mut d[(r0 + r, col_off[m] + c)];
                        *e = k.add(e, &x);
                    }
                }
            }
        }
        r0 += n.dims()[vl];
    }
    d
}

/// `Ext^degree(M, N)` from any projective resolution of `M` long enough to
/// contain `P_{degree+1}` or complete.
pub fn ext_from_resolution<K: Field>(
    alg: &BasedAlgebra<K>,
    res: &Resolution<K>,
    n: &Module<K>,
    degree: usize,
) -> ExtGroup<K> {
    let k = alg.field();
    let acts = n.basis_actions(alg);
    let cur = res.term(alg, degree);
    let dim_cur: usize = cur.vertices.iter().map(|&v| n.dims()[v]).sum();
    // Cocycles: kernel of the next differential.
    let kernel: Vec<Vec<K::Elem>> = if res.terms.len() > degree + 1 {
        let next = &res.terms[degree + 1];
        let d = yoneda_differential(alg, &cur, next, &res.images[degree + 1], n, &acts);
        d.kernel_basis(k)
    } else {
        (0..dim_cur)
            .map(|i| {
                let mut u = vec![k.zero(); dim_cur];
                u[i] = k.one();
                u
            })
            .collect()
    };
    let mut span = Echelon::new(dim_cur, PivotOrder::Lowest);
    if degree > 0 && degree < res.terms.len() {
        let prev = &res.terms[degree - 1];
        let d = yoneda_differential(alg, prev, &cur, &res.images[degree], n, &acts);
        for c in 0..d.cols() {
            span.insert(k, &d.column(c));
        }
    }
    let mut cocycles = Vec::new();
    for v in kernel {
        if span.insert(k, &v) {
            cocycles.push(v);
        }
    }
    let maps = cocycles
        .iter()
        .map(|c| {
            let imgs = split_yoneda(&cur, n, c);
            cur.map_from_images_with(alg, n, &acts, &imgs)
        })
        .collect();
    ExtGroup { degree, dim: cocycles.len(), cocycles, maps, term: cur }
}

/// Cuts a Yoneda vector into one image per summand.
pub fn split_yoneda<K: Field>(p: &ProjSum<K>, n: &Module<K>, x: &[K::Elem]) -> Vec<Vec<K::Elem>> {
    let mut out = Vec::with_capacity(p.len());
    let mut pos = 0;
    for &v in &p.vertices {
        out.push(x[pos..pos + n.dims()[v]].to_vec());
        pos += n.dims()[v];
    }
    out
}

pub fn ext<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>, n: &Module<K>, degree: usize) -> Result<ExtGroup<K>> {
    if degree > RESOLUTION_CAP {
        return Err(Error::ResolutionCap(RESOLUTION_CAP));
    }
    let res = resolve(alg, m, degree + 1);
    Ok(ext_from_resolution(alg, &res, n, degree))
}

pub fn ext_dim<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>, n: &Module<K>, degree: usize) -> Result<usize> {
    Ok(ext(alg, m, n, degree)?.dim)
}

/// `Tr M`, a right module over the opposite algebra.
pub fn transpose<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>) -> Module<K> {
    let op = alg.opposite();
    transpose_with(alg, &op, m)
}

fn transpose_with<K: Field>(alg: &BasedAlgebra<K>, op: &BasedAlgebra<K>, m: &Module<K>) -> Module<K> {
    let pres = min_proj_presentation(alg, m);
    let q0 = ProjSum::new(op, pres.p0.vertices.clone());
    let q1 = ProjSum::new(op, pres.p1.vertices.clone());
    if q1.is_empty() {
        return Module::zero(op);
    }
    // Generator m of Q0 goes to (x_{lm})_l, where x_{lm} is the m-th
    // component of d1(gen_l).
    let mut images = Vec::with_capacity(q0.len());
    for (mi, &vm) in pres.p0.vertices.iter().enumerate() {
        let parts: Vec<Vec<K::Elem>> = pres
            .p1
            .vertices
            .iter()
            .enumerate()
            .map(|(l, &wl)| pres.p0.components(alg, wl, &pres.d1_images[l])[mi].clone())
            .collect();
        images.push(q1.assemble(op, vm, &parts));
    }
    let f = q0.map_from_images(op, &q1.module, &images);
    f.cokernel(op, &q1.module).0
}

/// `τ M = D Tr M`.
pub fn tau<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>) -> Module<K> {
    transpose(alg, m).dual()
}

/// `τ⁻¹ M = Tr D M`.
pub fn tau_inv<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>) -> Module<K> {
    let op = alg.opposite();
    transpose_with(&op, alg, &m.dual())
}

/// A homological dimension, or a lower bound when the cap was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomDim {
    Finite(usize),
    AtLeast(usize),
}

impl HomDim {
    pub fn at_most(self, n: usize) -> bool {
        matches!(self, HomDim::Finite(d) if d <= n)
    }
}

impl fmt::Display for HomDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomDim::Finite(d) => write!(f, "{d}"),
            HomDim::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

pub fn proj_dim<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>, cap: usize) -> HomDim {
    if m.is_zero() {
        return HomDim::Finite(0);
    }
    let res = resolve(alg, m, cap);
    match res.length() {
        Some(l) if l < cap => HomDim::Finite(l),
        _ => HomDim::AtLeast(cap),
    }
}

pub fn inj_dim<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>, cap: usize) -> HomDim {
    proj_dim(&alg.opposite(), &m.dual(), cap)
}

pub fn global_dim<K: Field>(alg: &BasedAlgebra<K>, cap: usize) -> HomDim {
    let mut best = 0;
    for v in 0..alg.num_vertices() {
        match proj_dim(alg, &Module::simple(alg, v), cap) {
            HomDim::Finite(d) => best = best.max(d),
            h => return h,
        }
    }
    HomDim::Finite(best)
}
