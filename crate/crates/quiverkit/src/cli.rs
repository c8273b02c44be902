//! The `quiverkit` command line.
//!
//! [`run`] parses arguments, executes one verb and writes either the result
//! or a single `error: ...` line. Exit codes: 0 on success, 1 when the
//! computation fails, 2 on bad usage.

use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use quiverkit_core::arquiver::{knit, ArFragment};
use quiverkit_core::extensions::{one_point_coextension, one_point_extension, relation_extension, verify_thm1_instance};
use quiverkit_core::homology::{ext_dim, global_dim, tau, tau_inv};
use quiverkit_core::mutation::{find_acyclic_in_mutation_class, mutate_sequence};
use quiverkit_core::slices::{check_left_section, check_local_slice, check_slice, extend_cluster_tilted, SliceVerdict};
use quiverkit_core::{BasedAlgebra, Field, FieldSpec, Module, Presentation, PrimeField, Rationals};

use crate::format::{parse_presentation, quiver_to_text};
use crate::json::{
    document, AlgebraJson, CheckJson, ComparisonJson, FragmentJson, ModuleJson, PresentationJson, QuiverJson, VerdictJson,
};
use crate::modspec::parse_module;
use crate::{corpus, fixtures};

pub const DEFAULT_KNIT_CAP: usize = 40;
/// The extension pipeline knits the new algebra too, which may be wild;
/// its slice lies next to the projectives.
pub const DEFAULT_EXTEND_CAP: usize = 20;
pub const DEFAULT_DEPTH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "quiverkit", version, about = "Exact computations with bound quiver algebras")]
pub struct Cli {
    /// Override the field of the presentation: `rational`, `gf:p` or `gf(p)`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Node cap for knitting (default 40, and 20 for `extend`).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Depth bound for the mutation search.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// `FILE` is a presentation file, or the name of a shipped fixture such as
/// `d4_clustertilted`. `MODULE` arguments use the expressions of
/// [`crate::modspec`].
#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Build the algebra and summarize it.
    Build { file: String },
    /// Gabriel quiver of the algebra.
    Quiver { file: String },
    /// Dimension of Ext^DEGREE(M, N).
    Ext { file: String, m: String, n: String, degree: usize },
    /// Auslander-Reiten translate.
    Tau { file: String, module: String },
    /// Inverse Auslander-Reiten translate.
    Tauinv { file: String, module: String },
    /// Knit the components of the AR quiver through the projectives.
    Knit { file: String },
    /// Check the slice axioms for a set of indecomposables.
    CheckSlice { file: String, #[arg(required = true)] modules: Vec<String> },
    /// Check the local slice axioms.
    CheckLocalSlice { file: String, #[arg(required = true)] modules: Vec<String> },
    /// Check the left section axioms.
    CheckLeftSection { file: String, #[arg(required = true)] modules: Vec<String> },
    /// One-point extension by a module.
    Opext { file: String, module: String },
    /// One-point coextension by a module.
    Opcoext { file: String, module: String },
    /// Relation extension C ⋉ Ext²(DC, C).
    Relext { file: String },
    /// Quotient by the ideal generated by a vertex idempotent.
    DeleteVertex { file: String, vertex: String },
    /// Mutate the quiver at a sequence of vertices.
    Mutate { file: String, #[arg(required = true)] vertices: Vec<String> },
    /// Whether the quiver, after the given mutations, has no oriented cycle.
    IsAcyclic { file: String, vertices: Vec<String> },
    /// Breadth-first search for an acyclic quiver in the mutation class.
    SearchAcyclic { file: String },
    /// Compare R(C[P]) with R(C)[P̄] for a projective P.
    VerifyThm1 { file: String, module: String },
    /// Extend a cluster-tilted algebra by a module on a local slice.
    Extend {
        file: String,
        module: String,
        /// The local slice, one indecomposable per argument.
        #[arg(long, num_args = 1.., required = true)]
        sigma: Vec<String>,
    },
    /// Run all shipped fixtures through their checks.
    Corpus,
}

/// Failures of a command, split by exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(anyhow::Error),
    /// A result that was produced but reports failed checks.
    Reported { output: String, message: String },
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<quiverkit_core::Error> for Failure {
    fn from(e: quiverkit_core::Error) -> Self {
        Failure::Domain(e.into())
    }
}

/// The three renderings of a result. `dot` is absent for results without a
/// graph.
pub struct Output {
    pub text: String,
    pub json: String,
    pub dot: Option<String>,
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            0
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Reported { output, message }) => {
            let _ = out.write_all(output.as_bytes());
            let _ = writeln!(err, "error: {message}");
            1
        }
        Err(Failure::Domain(e)) => {
            let msg = format!("{e:#}").replace('\n', " ");
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

/// Executes a parsed command and returns the chosen rendering.
pub fn execute(cli: &Cli) -> Result<String, Failure> {
    let o = match &cli.command {
        Command::Corpus => {
            let (o, failed) = corpus_output();
            if failed > 0 {
                let output = render(o, cli)?;
                return Err(Failure::Reported { output, message: format!("{failed} corpus checks failed") });
            }
            o
        }
        Command::Mutate { file, vertices } => {
            let p = load(file)?;
            let labels: Vec<&str> = vertices.iter().map(String::as_str).collect();
            let q = mutate_sequence(&p.quiver, &labels)?;
            Output {
                text: quiver_to_text(p.field, &q),
                json: document("quiver", QuiverJson::from_quiver(&q)),
                dot: Some(q.to_dot("Q")),
            }
        }
        Command::IsAcyclic { file, vertices } => {
            let p = load(file)?;
            let labels: Vec<&str> = vertices.iter().map(String::as_str).collect();
            let acyclic = mutate_sequence(&p.quiver, &labels)?.is_acyclic();
            Output {
                text: format!("{acyclic}\n"),
                json: document("acyclicity", json!({ "mutations": vertices, "acyclic": acyclic })),
                dot: None,
            }
        }
        Command::SearchAcyclic { file } => {
            let p = load(file)?;
            let depth = cli.depth.unwrap_or(DEFAULT_DEPTH);
            let found = find_acyclic_in_mutation_class(&p.quiver, depth);
            let text = match &found {
                Some(seq) if seq.is_empty() => "acyclic already\n".to_string(),
                Some(seq) => format!("acyclic after mutating at {}\n", seq.join(" ")),
                None => format!("no acyclic quiver within depth {depth}\n"),
            };
            Output { text, json: document("acyclic_search", json!({ "depth": depth, "sequence": found })), dot: None }
        }
        cmd => {
            let file = match cmd {
                Command::Build { file }
                | Command::Quiver { file }
                | Command::Ext { file, .. }
                | Command::Tau { file, .. }
                | Command::Tauinv { file, .. }
                | Command::Knit { file }
                | Command::CheckSlice { file, .. }
                | Command::CheckLocalSlice { file, .. }
                | Command::CheckLeftSection { file, .. }
                | Command::Opext { file, .. }
                | Command::Opcoext { file, .. }
                | Command::Relext { file }
                | Command::DeleteVertex { file, .. }
                | Command::VerifyThm1 { file, .. }
                | Command::Extend { file, .. } => file,
                _ => unreachable!("handled above"),
            };
            let p = load(file)?;
            let spec = match &cli.field {
                Some(f) => f.parse::<FieldSpec>().map_err(|e| Failure::Usage(e.to_string()))?,
                None => p.field,
            };
            let mut p = p;
            p.field = spec;
            p.validate().map_err(anyhow::Error::from)?;
            match spec {
                FieldSpec::Rational => algebra_command(Rationals, &p, cli)?,
                FieldSpec::Prime(q) => algebra_command(PrimeField::new(q).map_err(anyhow::Error::from)?, &p, cli)?,
            }
        }
    };
    render(o, cli)
}

fn render(o: Output, cli: &Cli) -> Result<String, Failure> {
    let name = verb(&cli.command);
    match cli.format {
        Format::Text => Ok(o.text),
        Format::Json => Ok(o.json),
        Format::Dot => o.dot.ok_or_else(|| Failure::Usage(format!("`{name}` has no DOT output"))),
    }
}

/// The verb as typed on the command line.
pub fn verb(c: &Command) -> &'static str {
    match c {
        Command::Build { .. } => "build",
        Command::Quiver { .. } => "quiver",
        Command::Ext { .. } => "ext",
        Command::Tau { .. } => "tau",
        Command::Tauinv { .. } => "tauinv",
        Command::Knit { .. } => "knit",
        Command::CheckSlice { .. } => "check-slice",
        Command::CheckLocalSlice { .. } => "check-local-slice",
        Command::CheckLeftSection { .. } => "check-left-section",
        Command::Opext { .. } => "opext",
        Command::Opcoext { .. } => "opcoext",
        Command::Relext { .. } => "relext",
        Command::DeleteVertex { .. } => "delete-vertex",
        Command::Mutate { .. } => "mutate",
        Command::IsAcyclic { .. } => "is-acyclic",
        Command::SearchAcyclic { .. } => "search-acyclic",
        Command::VerifyThm1 { .. } => "verify-thm1",
        Command::Extend { .. } => "extend",
        Command::Corpus => "corpus",
    }
}

/// Every verb, for coverage checks.
pub const VERBS: &[&str] = &[
    "build",
    "quiver",
    "ext",
    "tau",
    "tauinv",
    "knit",
    "check-slice",
    "check-local-slice",
    "check-left-section",
    "opext",
    "opcoext",
    "relext",
    "delete-vertex",
    "mutate",
    "is-acyclic",
    "search-acyclic",
    "verify-thm1",
    "extend",
    "corpus",
];

/// Reads a presentation from a file, falling back to the shipped fixtures.
pub fn load(file: &str) -> anyhow::Result<Presentation> {
    let text = if Path::new(file).is_file() {
        std::fs::read_to_string(file).with_context(|| file.to_string())?
    } else if let Some(t) = fixtures::get(file) {
        t.to_string()
    } else {
        bail!("{file}: no such file or fixture");
    };
    parse_presentation(&text).map_err(|e| anyhow!("{file}: {e}"))
}

fn module<K: Field>(a: &BasedAlgebra<K>, spec: &str) -> anyhow::Result<Module<K>> {
    parse_module(a, spec).map_err(|e| anyhow!("module `{spec}`: {e}"))
}

fn summary<K: Field>(a: &BasedAlgebra<K>, kind: &str) -> Output {
    let q = a.gabriel_quiver();
    let gd = global_dim(a, 6);
    let mut text = format!(
        "field: {}\ndimension: {}\nvertices: {}\narrows: {}\nglobal dimension: {}\n",
        a.field().spec(),
        a.dim(),
        q.vertices().join(" "),
        arrows_text(&q),
        gd
    );
    text.push_str("cartan:\n");
    for row in a.cartan_matrix() {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        text.push_str(&format!("  {}\n", r.join(" ")));
    }
    let mut body = serde_json::to_value(AlgebraJson::from_algebra(a)).expect("serializable");
    body["global_dimension"] = json!(gd.to_string());
    if let Some(p) = a.origin() {
        body["presentation"] = serde_json::to_value(PresentationJson::from_presentation(p)).expect("serializable");
    }
    Output { text, json: document(kind, body), dot: Some(q.to_dot("Q")) }
}

fn arrows_text(q: &quiverkit_core::Quiver) -> String {
    let v = q.vertices();
    let a: Vec<String> = q.arrows().iter().map(|a| format!("{}: {} -> {}", a.name, v[a.source], v[a.target])).collect();
    a.join(", ")
}

fn module_output<K: Field>(a: &BasedAlgebra<K>, m: &Module<K>) -> Output {
    let text = if m.is_zero() { "0\n".to_string() } else { format!("{} {}\n", m.loewy_label(a), m.dim_label()) };
    Output { text, json: document("module", ModuleJson::from_module(a, m)), dot: None }
}

fn nodes_for<K: Field>(a: &BasedAlgebra<K>, f: &ArFragment<K>, specs: &[String]) -> anyhow::Result<Vec<usize>> {
    specs
        .iter()
        .map(|s| {
            let m = module(a, s)?;
            f.find(a, &m).ok_or_else(|| anyhow!("module `{s}` is not an indecomposable of the knitted fragment"))
        })
        .collect()
}

fn verdict_output<K: Field>(f: &ArFragment<K>, v: &SliceVerdict, kind: &str) -> Output {
    let mut text = v.to_string();
    for x in &v.violations {
        let w: Vec<&str> = x.witnesses.iter().map(|&i| f.nodes[i].label.as_str()).collect();
        text.push_str(&format!("\n  {}: {}", x.axiom, w.join(", ")));
    }
    text.push('\n');
    Output { text, json: document(kind, VerdictJson::from_verdict(f, v)), dot: None }
}

fn algebra_command<K: Field>(k: K, p: &Presentation, cli: &Cli) -> anyhow::Result<Output> {
    let a = BasedAlgebra::from_presentation(k, p)?;
    let cap = cli.cap.unwrap_or(DEFAULT_KNIT_CAP);
    Ok(match &cli.command {
        Command::Build { .. } => summary(&a, "algebra"),
        Command::Quiver { .. } => {
            let q = a.gabriel_quiver();
            Output {
                text: format!("vertices: {}\narrows: {}\n", q.vertices().join(" "), arrows_text(&q)),
                json: document("quiver", QuiverJson::from_quiver(&q)),
                dot: Some(q.to_dot("Q")),
            }
        }
        Command::Ext { m, n, degree, .. } => {
            let d = ext_dim(&a, &module(&a, m)?, &module(&a, n)?, *degree)?;
            Output {
                text: format!("dim Ext^{degree}({m}, {n}) = {d}\n"),
                json: document("ext", json!({ "m": m, "n": n, "degree": degree, "dimension": d })),
                dot: None,
            }
        }
        Command::Tau { module: s, .. } => module_output(&a, &tau(&a, &module(&a, s)?)),
        Command::Tauinv { module: s, .. } => module_output(&a, &tau_inv(&a, &module(&a, s)?)),
        Command::Knit { .. } => {
            let f = knit(&a, cap)?;
            Output {
                text: quiverkit_core::arquiver::describe(&f),
                json: document("ar_fragment", FragmentJson::from_fragment(&a, &f)),
                dot: Some(f.to_dot()),
            }
        }
        Command::CheckSlice { modules, .. } => {
            let f = knit(&a, cap)?;
            verdict_output(&f, &check_slice(&a, &f, &nodes_for(&a, &f, modules)?)?, "slice_verdict")
        }
        Command::CheckLocalSlice { modules, .. } => {
            let f = knit(&a, cap)?;
            verdict_output(&f, &check_local_slice(&a, &f, &nodes_for(&a, &f, modules)?)?, "local_slice_verdict")
        }
        Command::CheckLeftSection { modules, .. } => {
            let f = knit(&a, cap)?;
            verdict_output(&f, &check_left_section(&a, &f, &nodes_for(&a, &f, modules)?)?, "left_section_verdict")
        }
        Command::Opext { module: s, .. } => summary(&one_point_extension(&a, &module(&a, s)?)?.algebra, "algebra"),
        Command::Opcoext { module: s, .. } => summary(&one_point_coextension(&a, &module(&a, s)?)?.algebra, "algebra"),
        Command::Relext { .. } => {
            let r = relation_extension(&a)?;
            let mut o = summary(&r.ext.algebra, "algebra");
            let top = r.bimodule.top_dims(&a);
            let v = a.vertices();
            let mut new_arrows = Vec::new();
            for (i, row) in top.iter().enumerate() {
                for (j, &m) in row.iter().enumerate() {
                    if m > 0 {
                        new_arrows.push(json!({ "source": v[i], "target": v[j], "multiplicity": m }));
                        o.text.push_str(&format!("new arrow {} -> {} x{m}\n", v[i], v[j]));
                    }
                }
            }
            o.text.push_str(&format!("dim Ext^2(DC, C) = {}\n", r.bimodule.dim()));
            let mut body: serde_json::Value = serde_json::from_str(&o.json).expect("own output");
            body["bimodule_dimension"] = json!(r.bimodule.dim());
            body["new_arrows"] = json!(new_arrows);
            o.json = pretty(body);
            o
        }
        Command::DeleteVertex { vertex, .. } => {
            let x = a.vertex_index(vertex).ok_or_else(|| anyhow!("unknown vertex `{vertex}`"))?;
            summary(&a.quotient_by_vertex(x)?.algebra, "algebra")
        }
        Command::VerifyThm1 { module: s, .. } => {
            let inst = verify_thm1_instance(&a, &module(&a, s)?)?;
            let c = &inst.comparison;
            let text = format!(
                "dimensions: {} {}\nquiver isomorphism: {}\ncartan equal: {}\nverdict: {}\n",
                c.dims.0,
                c.dims.1,
                c.quiver_iso.as_ref().map_or("none".to_string(), |p| format!("{p:?}")),
                c.cartan_equal,
                c.verdict
            );
            Output { text, json: document("comparison", ComparisonJson::from_comparison(c)), dot: None }
        }
        Command::Extend { module: s, sigma, .. } => {
            let cap = cli.cap.unwrap_or(DEFAULT_EXTEND_CAP);
            let f = knit(&a, cap)?;
            let nodes = nodes_for(&a, &f, sigma)?;
            let r = extend_cluster_tilted(&a, &f, &nodes, &module(&a, s)?, cap)?;
            let mut text = String::new();
            for c in &r.checks {
                text.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
            }
            let bq = r.bprime.gabriel_quiver();
            text.push_str(&format!("dimension: {}\narrows: {}\n", r.bprime.dim(), arrows_text(&bq)));
            let checks: Vec<CheckJson> = r.checks.iter().map(CheckJson::from_check).collect();
            let body = json!({
                "passed": r.passed(),
                "checks": checks,
                "tilted": AlgebraJson::from_algebra(&r.tilted),
                "extended": AlgebraJson::from_algebra(&r.extended),
                "result": AlgebraJson::from_algebra(&r.bprime),
            });
            Output { text, json: document("extension_report", body), dot: Some(bq.to_dot("Q")) }
        }
        _ => unreachable!("quiver-only commands are handled by the caller"),
    })
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn corpus_output() -> (Output, usize) {
    let rows = corpus::run();
    let mut text = String::new();
    for r in &rows {
        text.push_str(&format!("{} {}  [{}]\n", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail));
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    text.push_str(&format!("{} checks, {} failed\n", rows.len(), failed));
    let body = json!({
        "rows": rows.iter().map(|r| json!({ "name": r.name, "passed": r.passed, "detail": r.detail, "argv": r.argv })).collect::<Vec<_>>(),
    });
    (Output { text, json: document("corpus", body), dot: None }, failed)
}
