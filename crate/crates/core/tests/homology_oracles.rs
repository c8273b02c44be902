mod common;

use common::{a_n, cluster_tilted, tilted};
use quiverkit_core::homology::{ext_dim, ext_from_resolution, resolve, tau, tau_inv, Resolution};
use quiverkit_core::module::{hom_dim, is_isomorphic, ModuleMap};
use quiverkit_core::projective::{projective_cover, ProjSum};
use quiverkit_core::{BasedAlgebra, Field, Module, Rationals};

fn test_modules<K: Field>(a: &BasedAlgebra<K>) -> Vec<Module<K>> {
    let mut out = Vec::new();
    for v in 0..a.num_vertices() {
        out.push(Module::simple(a, v));
        out.push(Module::projective(a, v));
        out.push(Module::injective(a, v));
    }
    out
}

/// `dim Ext¹(M, N)` from Hom dimensions alone:
/// `0 -> Hom(M,N) -> Hom(P0,N) -> Hom(K,N) -> Ext¹(M,N) -> 0`.
fn ext1_by_hom<K: Field>(a: &BasedAlgebra<K>, m: &Module<K>, n: &Module<K>) -> usize {
    let (p0, epi) = projective_cover(a, m);
    let (k, _) = epi.kernel(a, &p0.module);
    hom_dim(a, &k, n) + hom_dim(a, m, n) - hom_dim(a, &p0.module, n)
}

/// `Ext²(M, N) = Ext¹(ΩM, N)`.
fn ext2_by_hom<K: Field>(a: &BasedAlgebra<K>, m: &Module<K>, n: &Module<K>) -> usize {
    let (p0, epi) = projective_cover(a, m);
    let (k, _) = epi.kernel(a, &p0.module);
    ext1_by_hom(a, &k, n)
}

#[test]
fn ext_agrees_with_hom_counting() {
    let algebras = [tilted(Rationals), cluster_tilted(Rationals), a_n(Rationals, 3)];
    for a in &algebras {
        let ms = test_modules(a);
        for m in &ms {
            for n in &ms {
                assert_eq!(ext_dim(a, m, n, 0).unwrap(), hom_dim(a, m, n));
                assert_eq!(ext_dim(a, m, n, 1).unwrap(), ext1_by_hom(a, m, n));
                assert_eq!(ext_dim(a, m, n, 2).unwrap(), ext2_by_hom(a, m, n));
            }
        }
    }
}

/// Adds a split acyclic piece `P(v) --id--> P(v)` in degrees `j`, `j-1`.
fn pad<K: Field>(a: &BasedAlgebra<K>, res: &Resolution<K>, j: usize, v: usize) -> Resolution<K> {
    let k = a.field();
    let mut terms = Vec::new();
    let mut images = Vec::new();
    for (i, t) in res.terms.iter().enumerate() {
        let mut vs = t.vertices.clone();
        if i == j || i + 1 == j {
            vs.push(v);
        }
        terms.push(ProjSum::new(a, vs));
    }
    for i in 0..terms.len() {
        let old = &res.terms[i];
        let new = &terms[i];
        let mut imgs = Vec::new();
        for l in 0..new.len() {
            let img = if l < old.len() {
                let x = &res.images[i][l];
                if i == 0 {
                    x.clone()
                } else {
                    // Same components, with a zero block for the padding summand.
                    let prev_old = &res.terms[i - 1];
                    let prev_new = &terms[i - 1];
                    let vl = new.vertices[l];
                    let mut parts = prev_old.components(a, vl, x);
                    if prev_new.len() > prev_old.len() {
                        parts.push(vec![k.zero(); a.block(v, vl).len()]);
                    }
                    prev_new.assemble(a, vl, &parts)
                }
            } else if i == 0 {
                vec![k.zero(); res.diffs[0].blocks[v].rows()]
            } else if i == j {
                let prev_new = &terms[i - 1];
                prev_new.generator(a, prev_new.len() - 1)
            } else {
                vec![k.zero(); terms[i - 1].module.dims()[v]]
            };
            imgs.push(img);
        }
        images.push(imgs);
    }
    let target0 = {
        let m_dims: Vec<usize> = res.diffs[0].blocks.iter().map(|b| b.rows()).collect();
        m_dims
    };
    let mut diffs = Vec::new();
    for i in 0..terms.len() {
        let target = if i == 0 { None } else { Some(&terms[i - 1].module) };
        let d = match target {
            Some(t) => terms[i].map_from_images(a, t, &images[i]),
            None => {
                // Augmentation: reuse the old one with zero columns appended.
                let blocks = res.diffs[0]
                    .blocks
                    .iter()
                    .enumerate()
                    .map(|(w, b)| {
                        let extra = terms[0].module.dims()[w] - b.cols();
                        b.hstack(&quiverkit_core::Matrix::zeros(k, target0[w], extra))
                    })
                    .collect();
                ModuleMap { blocks }
            }
        };
        diffs.push(d);
    }
    Resolution { terms, diffs, images, complete: res.complete, minimal: false }
}

#[test]
fn ext_is_independent_of_the_resolution() {
    let a = cluster_tilted(Rationals);
    let k = a.field();
    let ms = test_modules(&a);
    for m in ms.iter().take(6) {
        let res = resolve(&a, m, 4);
        for j in 1..res.terms.len() {
            let padded = pad(&a, &res, j, 0);
            for i in 1..padded.diffs.len() {
                let dd = padded.diffs[i].then(k, &padded.diffs[i - 1]);
                assert!(dd.is_zero(k), "padded complex is not a complex");
            }
            for n in &ms {
                for deg in 0..3 {
                    let x = ext_from_resolution(&a, &res, n, deg).dim;
                    let y = ext_from_resolution(&a, &padded, n, deg).dim;
                    assert_eq!(x, y, "degree {deg}");
                }
            }
        }
    }
}

#[test]
fn translates_invert_each_other() {
    for a in [tilted(Rationals), cluster_tilted(Rationals), a_n(Rationals, 4)] {
        for v in 0..a.num_vertices() {
            for m in [Module::simple(&a, v), Module::injective(&a, v), Module::projective(&a, v)] {
                let t = tau(&a, &m);
                if !t.is_zero() {
                    assert!(is_isomorphic(&a, &tau_inv(&a, &t), &m).unwrap());
                }
                let ti = tau_inv(&a, &m);
                if !ti.is_zero() {
                    assert!(is_isomorphic(&a, &tau(&a, &ti), &m).unwrap());
                }
            }
            assert!(tau(&a, &Module::projective(&a, v)).is_zero());
            assert!(tau_inv(&a, &Module::injective(&a, v)).is_zero());
        }
    }
}

/// Over a hereditary algebra `Ext¹(M, N) ≅ D Hom(N, τM)` for all `M, N`.
#[test]
fn ar_formula_over_hereditary() {
    let a = a_n(Rationals, 4);
    let ms = test_modules(&a);
    for m in &ms {
        for n in &ms {
            let t = tau(&a, m);
            assert_eq!(ext_dim(&a, m, n, 1).unwrap(), hom_dim(&a, n, &t));
        }
    }
}
