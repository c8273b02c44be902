//! Direct sums of indecomposable projectives and maps out of them.
//!
//! A map `P(v_1) + ... + P(v_r) -> N` is determined by where it sends the
//! generators `e_{v_l}`, one vector of `N_{v_l}` per summand.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::BasedAlgebra;
use crate::field::Field;
use crate::matrix::{Echelon, Matrix, PivotOrder};
use crate::module::{Module, ModuleMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjSum<K: Field> {
    /// Vertex of each summand.
    pub vertices: Vec<usize>,
    pub module: Module<K>,
    /// `offsets[l][j]`: where summand `l` starts inside the space at `j`.
    offsets: Vec<Vec<usize>>,
}

impl<K: Field> ProjSum<K> {
    pub fn new(alg: &BasedAlgebra<K>, vertices: Vec<usize>) -> Self {
        let parts: Vec<Module<K>> = vertices.iter().map(|&v| Module::projective(alg, v)).collect();
        let module = if parts.is_empty() { Module::zero(alg) } else { Module::direct_sum(alg.field(), &parts) };
        let n = alg.num_vertices();
        let mut acc = vec![0; n];
        let mut offsets = Vec::with_capacity(vertices.len());
        for &v in &vertices {
            offsets.push(acc.clone());
            for (j, a) in acc.iter_mut().enumerate() {
                *a += alg.block(v, j).len();
            }
        }
        ProjSum { vertices, module, offsets }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Position of generator `l` inside the space at its vertex.
    pub fn generator_position(&self, alg: &BasedAlgebra<K>, l: usize) -> usize {
        let v = self.vertices[l];
        let e = alg.idempotents()[v];
        self.offsets[l][v] + alg.block(v, v).iter().position(|&b| b == e).expect("idempotent in its block")
    }

    /// The generator `e_{v_l}` as a vector of the space at `v_l`.
    pub fn generator(&self, alg: &BasedAlgebra<K>, l: usize) -> Vec<K::Elem> {
        let k = alg.field();
        let v = self.vertices[l];
        let mut x = vec![k.zero(); self.module.dims()[v]];
        x[self.generator_position(alg, l)] = k.one();
        x
    }

    /// Splits a vector of the space at `j` into coefficients on the basis
    /// elements of `e_{v_l} A e_j`, one list per summand.
    pub fn components(&self, alg: &BasedAlgebra<K>, j: usize, x: &[K::Elem]) -> Vec<Vec<K::Elem>> {
        (0..self.len())
            .map(|l| {
                let len = alg.block(self.vertices[l], j).len();
                x[self.offsets[l][j]..self.offsets[l][j] + len].to_vec()
            })
            .collect()
    }

    /// Builds a vector of the space at `j` from per-summand coefficients.
    pub fn assemble(&self, alg: &BasedAlgebra<K>, j: usize, parts: &[Vec<K::Elem>]) -> Vec<K::Elem> {
        let k = alg.field();
        let mut x = vec![k.zero(); self.module.dims()[j]];
        for (l, p) in parts.iter().enumerate() {
            let len = alg.block(self.vertices[l], j).len();
            assert_eq!(p.len(), len);
            x[self.offsets[l][j]..self.offsets[l][j] + len].clone_from_slice(p);
        }
        x
    }

    /// The map sending generator `l` to `images[l]`.
    pub fn map_from_images(&self, alg: &BasedAlgebra<K>, target: &Module<K>, images: &[Vec<K::Elem>]) -> ModuleMap<K> {
        let acts = target.basis_actions(alg);
        self.map_from_images_with(alg, target, &acts, images)
    }

    pub fn map_from_images_with(
        &self,
        alg: &BasedAlgebra<K>,
        target: &Module<K>,
        acts: &[Matrix<K::Elem>],
        images: &[Vec<K::Elem>],
    ) -> ModuleMap<K> {
        let k = alg.field();
        let n = alg.num_vertices();
        let blocks = (0..n)
            .map(|j| {
                let mut m = Matrix::zeros(k, target.dims()[j], self.module.dims()[j]);
                for l in 0..self.len() {
                    for (i, &b) in alg.block(self.vertices[l], j).iter().enumerate() {
                        let col = acts[b].mul_vec(k, &images[l]);
                        for (r, x) in col.into_iter().enumerate() {
                            m[(r, self.offsets[l][j] + i)] = x;
                        }
                    }
                }
                m
            })
            .collect();
        ModuleMap { blocks }
    }

    /// Images of the generators under a map out of this sum.
    pub fn images_of(&self, alg: &BasedAlgebra<K>, f: &ModuleMap<K>) -> Vec<Vec<K::Elem>> {
        (0..self.len())
            .map(|l| {
                let v = self.vertices[l];
                f.blocks[v].column(self.generator_position(alg, l))
            })
            .collect()
    }
}

/// Projective cover `P -> M`, built from a complement of `rad M`.
pub fn projective_cover<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>) -> (ProjSum<K>, ModuleMap<K>) {
    let k = alg.field();
    let (_, incl) = m.radical(alg);
    let mut vertices = Vec::new();
    let mut images = Vec::new();
    for v in 0..alg.num_vertices() {
        let d = m.dims()[v];
        let mut span = Echelon::new(d, PivotOrder::Lowest);
        for c in 0..incl.blocks[v].cols() {
            span.insert(k, &incl.blocks[v].column(c));
        }
        for i in 0..d {
            let mut u = vec![k.zero(); d];
            u[i] = k.one();
            if span.insert(k, &u) {
                vertices.push(v);
                images.push(u);
            }
        }
    }
    let p = ProjSum::new(alg, vertices);
    let epi = p.map_from_images(alg, m, &images);
    (p, epi)
}

/// Minimal projective presentation `P1 -> P0 -> M -> 0`.
///
/// `d1_images[l]` is the image of the `l`-th generator of `P1` in `P0`.
#[derive(Debug, Clone)]
pub struct Presentation<K: Field> {
    pub p0: ProjSum<K>,
    pub p1: ProjSum<K>,
    pub epi: ModuleMap<K>,
    pub d1: ModuleMap<K>,
    pub d1_images: Vec<Vec<K::Elem>>,
}

pub fn min_proj_presentation<K: Field>(alg: &BasedAlgebra<K>, m: &Module<K>) -> Presentation<K> {
    let (p0, epi) = projective_cover(alg, m);
    let (ker, incl) = epi.kernel(alg, &p0.module);
    let (p1, cover) = projective_cover(alg, &ker);
    let d1 = cover.then(alg.field(), &incl);
    let d1_images = p1.images_of(alg, &d1);
    Presentation { p0, p1, epi, d1, d1_images }
}
