//! JSON documents. Every document carries `"schema": 1` at the top level.
//!
//! Field elements are written as strings in their display form (`"-1/2"`,
//! `"3"`), so rational entries survive without rounding.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use quiverkit_core::arquiver::ArFragment;
use quiverkit_core::extensions::Comparison;
use quiverkit_core::matrix::Matrix;
use quiverkit_core::slices::{Check, SliceVerdict};
use quiverkit_core::{BasedAlgebra, Field, Module, Presentation, Quiver};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct Document<T> {
    pub schema: u32,
    pub kind: String,
    #[serde(flatten)]
    pub body: T,
}

/// Pretty JSON for `body` wrapped in a versioned document.
pub fn document<T: Serialize>(kind: &str, body: T) -> String {
    let doc = Document { schema: SCHEMA, kind: kind.to_string(), body };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
}

impl QuiverJson {
    pub fn from_quiver(q: &Quiver) -> Self {
        let v = q.vertices();
        QuiverJson {
            vertices: v.to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowJson { name: a.name.clone(), source: v[a.source].clone(), target: v[a.target].clone() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coefficient: i64,
    /// Arrow names, first arrow first.
    pub path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub field: String,
    pub quiver: QuiverJson,
    pub relations: Vec<Vec<TermJson>>,
}

impl PresentationJson {
    pub fn from_presentation(p: &Presentation) -> Self {
        let q = &p.quiver;
        PresentationJson {
            field: p.field.to_string(),
            quiver: QuiverJson::from_quiver(q),
            relations: p
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, path)| TermJson {
                            coefficient: *c,
                            path: path.arrows.iter().map(|&a| q.arrows()[a].name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductJson {
    pub left: usize,
    pub right: usize,
    /// `(basis index, coefficient)` pairs.
    pub value: Vec<(usize, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisJson {
    pub label: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: String,
    pub dimension: usize,
    pub basis: Vec<BasisJson>,
    pub idempotents: Vec<usize>,
    /// Nonzero products of basis elements.
    pub products: Vec<ProductJson>,
    pub quiver: QuiverJson,
    pub cartan: Vec<Vec<usize>>,
}

impl AlgebraJson {
    pub fn from_algebra<K: Field>(a: &BasedAlgebra<K>) -> Self {
        let v = a.vertices();
        let n = a.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let p = a.product(i, j);
                if !p.is_empty() {
                    products.push(ProductJson {
                        left: i,
                        right: j,
                        value: p.iter().map(|(b, c)| (*b, c.to_string())).collect(),
                    });
                }
            }
        }
        AlgebraJson {
            field: a.field().spec().to_string(),
            dimension: n,
            basis: a
                .basis()
                .iter()
                .map(|b| BasisJson { label: b.label.clone(), source: v[b.source].clone(), target: v[b.target].clone() })
                .collect(),
            idempotents: a.idempotents().to_vec(),
            products,
            quiver: QuiverJson::from_quiver(&a.gabriel_quiver()),
            cartan: a.cartan_matrix(),
        }
    }
}

/// A module as a dimension vector and one matrix per arrow generator, rows
/// first. Arrows that are missing act by zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub dims: Vec<usize>,
    pub actions: BTreeMap<String, Vec<Vec<String>>>,
}

fn matrix_rows<E: ToString + Clone>(m: &Matrix<E>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect()
}

impl ModuleJson {
    pub fn from_module<K: Field>(a: &BasedAlgebra<K>, m: &Module<K>) -> Self {
        let actions = a.arrows().iter().zip(m.actions()).map(|(g, x)| (g.name.clone(), matrix_rows(x))).collect();
        ModuleJson { dims: m.dims().to_vec(), actions }
    }

    pub fn to_module<K: Field>(&self, a: &BasedAlgebra<K>) -> Result<Module<K>, String> {
        let k = a.field();
        if self.dims.len() != a.num_vertices() {
            return Err(format!("dimension vector has {} entries, algebra has {} vertices", self.dims.len(), a.num_vertices()));
        }
        for name in self.actions.keys() {
            if !a.arrows().iter().any(|g| &g.name == name) {
                return Err(format!("unknown arrow `{name}`"));
            }
        }
        let mut actions = Vec::new();
        for g in a.arrows() {
            let (r, c) = (self.dims[g.target], self.dims[g.source]);
            let m = match self.actions.get(&g.name) {
                None => Matrix::zeros(k, r, c),
                Some(rows) => {
                    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                        return Err(format!("arrow `{}` needs a {r} x {c} matrix", g.name));
                    }
                    let mut data = Vec::with_capacity(r * c);
                    for x in rows.iter().flatten() {
                        data.push(k.parse_elem(x).ok_or_else(|| format!("bad field element `{x}`"))?);
                    }
                    Matrix::from_vec(r, c, data)
                }
            };
            actions.push(m);
        }
        Module::new(a, self.dims.clone(), actions).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeJson {
    pub label: String,
    pub dims: Vec<usize>,
    pub projective: Option<String>,
    pub injective: Option<String>,
    pub tau: Option<usize>,
    pub tau_inv: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeJson {
    pub source: usize,
    pub target: usize,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeshJson {
    pub start: usize,
    pub end: usize,
    pub middle: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FragmentJson {
    pub complete: bool,
    pub nodes: Vec<NodeJson>,
    pub arrows: Vec<EdgeJson>,
    pub meshes: Vec<MeshJson>,
}

impl FragmentJson {
    pub fn from_fragment<K: Field>(a: &BasedAlgebra<K>, f: &ArFragment<K>) -> Self {
        let v = a.vertices();
        FragmentJson {
            complete: f.complete,
            nodes: f
                .nodes
                .iter()
                .map(|n| NodeJson {
                    label: n.label.clone(),
                    dims: n.module.dims().to_vec(),
                    projective: n.projective.map(|i| v[i].clone()),
                    injective: n.injective.map(|i| v[i].clone()),
                    tau: n.tau,
                    tau_inv: n.tau_inv,
                })
                .collect(),
            arrows: f.arrows.iter().map(|(&(s, t), &m)| EdgeJson { source: s, target: t, multiplicity: m }).collect(),
            meshes: f.meshes.iter().map(|m| MeshJson { start: m.start, end: m.end, middle: m.middle.clone() }).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ViolationJson {
    pub axiom: String,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictJson {
    pub holds: bool,
    pub violations: Vec<ViolationJson>,
}

impl VerdictJson {
    pub fn from_verdict<K: Field>(f: &ArFragment<K>, v: &SliceVerdict) -> Self {
        VerdictJson {
            holds: v.holds,
            violations: v
                .violations
                .iter()
                .map(|x| ViolationJson {
                    axiom: x.axiom.to_string(),
                    witnesses: x.witnesses.iter().map(|&i| f.nodes[i].label.clone()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonJson {
    pub dimensions: (usize, usize),
    pub quiver_iso: Option<Vec<usize>>,
    pub cartan_equal: bool,
    pub verdict: String,
}

impl ComparisonJson {
    pub fn from_comparison(c: &Comparison) -> Self {
        ComparisonJson {
            dimensions: c.dims,
            quiver_iso: c.quiver_iso.clone(),
            cartan_equal: c.cartan_equal,
            verdict: c.verdict.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckJson {
    pub fn from_check(c: &Check) -> Self {
        CheckJson { name: c.name.clone(), passed: c.passed, detail: c.detail.clone() }
    }
}
