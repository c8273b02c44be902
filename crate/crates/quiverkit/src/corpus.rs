//! The shipped fixtures run through the command line, each with the value it
//! must produce.
//!
//! Every row is an ordinary invocation with `--format json`, so the corpus
//! also exercises argument parsing and the JSON export of each verb.

use clap::Parser;
use serde_json::Value;

use crate::cli::{execute, Cli, Failure};

pub struct Row {
    pub name: &'static str,
    pub argv: Vec<String>,
    pub passed: bool,
    pub detail: String,
}

type Pred = fn(&Value) -> Result<(), String>;

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn arrow_pairs(q: &Value) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = q["arrows"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|a| (a["source"].as_str().unwrap_or("").to_string(), a["target"].as_str().unwrap_or("").to_string()))
        .collect();
    v.sort();
    v
}

fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = list.iter().map(|(s, t)| (s.to_string(), t.to_string())).collect();
    v.sort();
    v
}

const D4_CYCLE: &[(&str, &str)] = &[("1", "2"), ("2", "4"), ("1", "3"), ("3", "4"), ("4", "1")];
const BP_QUIVER: &[(&str, &str)] =
    &[("1", "2"), ("2", "4"), ("1", "3"), ("3", "4"), ("4", "1"), ("5", "1"), ("5", "2"), ("5", "3")];
const BPRIME_QUIVER: &[(&str, &str)] =
    &[("1", "2"), ("2", "4"), ("1", "3"), ("3", "4"), ("4", "1"), ("5", "2"), ("4", "5")];

/// `(name, argv, predicate)`; argv omits the program name and format flag.
fn cases() -> Vec<(&'static str, &'static str, Pred)> {
    vec![
        ("B has dimension 10", "build d4_clustertilted", |v| expect("dimension", v["dimension"].as_u64(), Some(10))),
        ("B has the D4 cycle quiver", "quiver d4_clustertilted", |v| {
            expect("arrows", arrow_pairs(v), pairs(D4_CYCLE))
        }),
        ("C has dimension 9 and global dimension 2", "build d4_tilted", |v| {
            expect("dimension", v["dimension"].as_u64(), Some(9))?;
            expect("global dimension", v["global_dimension"].as_str(), Some("2"))
        }),
        ("B is not acyclic", "is-acyclic d4_clustertilted", |v| expect("acyclic", v["acyclic"].as_bool(), Some(false))),
        ("AR quiver of B has 12 nodes", "knit d4_clustertilted", |v| {
            expect("complete", v["complete"].as_bool(), Some(true))?;
            expect("nodes", v["nodes"].as_array().map(Vec::len), Some(12))
        }),
        ("tau S(2) = P(3) over B", "tau d4_clustertilted S:2", |v| {
            expect("dims", v["dims"].clone(), serde_json::json!([0, 0, 1, 1]))
        }),
        ("tau^-1 P(3) = S(2) over B", "tauinv d4_clustertilted P:3", |v| {
            expect("dims", v["dims"].clone(), serde_json::json!([0, 1, 0, 0]))
        }),
        ("boldface modules are a local slice of B", "check-local-slice d4_clustertilted P:1 P:2 P:3 rad:P:1", |v| {
            expect("holds", v["holds"].as_bool(), Some(true))
        }),
        ("dropping 23/4 breaks LS4", "check-local-slice d4_clustertilted P:1 P:2 P:3", |v| {
            expect("holds", v["holds"].as_bool(), Some(false))?;
            let axioms: Vec<&str> = v["violations"].as_array().into_iter().flatten().filter_map(|x| x["axiom"].as_str()).collect();
            expect("LS4 violated", axioms.contains(&"LS4"), true)
        }),
        ("boldface modules are a slice of C", "check-slice d4_tilted P:1 P:2 P:3 rad:P:1", |v| {
            expect("holds", v["holds"].as_bool(), Some(true))
        }),
        ("boldface modules are a left section of C", "check-left-section d4_tilted P:1 P:2 P:3 rad:P:1", |v| {
            expect("holds", v["holds"].as_bool(), Some(true))
        }),
        ("Ext^2(S(1), S(4)) = 1 over C", "ext d4_tilted S:1 S:4 2", |v| expect("dimension", v["dimension"].as_u64(), Some(1))),
        ("Ext^2(S(4), S(1)) = 0 over C", "ext d4_tilted S:4 S:1 2", |v| expect("dimension", v["dimension"].as_u64(), Some(0))),
        ("R(C) has the quiver of B", "relext d4_tilted", |v| {
            expect("dimension", v["dimension"].as_u64(), Some(10))?;
            expect("arrows", arrow_pairs(&v["quiver"]), pairs(D4_CYCLE))
        }),
        ("C[S(2)] has dimension 11", "opext d4_tilted S:2", |v| expect("dimension", v["dimension"].as_u64(), Some(11))),
        ("R(C[S(2)]) has the quiver of B'", "relext cm_s2", |v| {
            expect("dimension", v["dimension"].as_u64(), Some(15))?;
            expect("new arrows", v["new_arrows"].as_array().map(Vec::len), Some(2))?;
            expect("arrows", arrow_pairs(&v["quiver"]), pairs(BPRIME_QUIVER))
        }),
        ("B[P] has dimension 19", "opext d4_clustertilted P:1+P:2+P:3", |v| {
            expect("dimension", v["dimension"].as_u64(), Some(19))?;
            expect("arrows", arrow_pairs(&v["quiver"]), pairs(BP_QUIVER))
        }),
        ("coextension of C by I(4) adds a sink", "opcoext d4_tilted I:4", |v| {
            expect("dimension", v["dimension"].as_u64(), Some(9 + 1 + 4))?;
            expect("arrows", arrow_pairs(&v["quiver"]).contains(&("4".into(), "5".into())), true)
        }),
        ("B' without vertex 5 is B", "delete-vertex bprime 5", |v| {
            expect("dimension", v["dimension"].as_u64(), Some(10))?;
            expect("arrows", arrow_pairs(&v["quiver"]), pairs(D4_CYCLE))
        }),
        ("R(C[P]) matches R(C)[P]", "verify-thm1 d4_tilted P:1+P:2+P:3", |v| {
            expect("cartan", v["cartan_equal"].as_bool(), Some(true))?;
            expect("verdict", v["verdict"].as_str(), Some("consistent with isomorphism"))
        }),
        ("extending B by P(1)+P(2)+P(3)", "extend d4_clustertilted P:1+P:2+P:3 --sigma P:1 P:2 P:3 rad:P:1", |v| {
            expect("passed", v["passed"].as_bool(), Some(true))?;
            expect("arrows", arrow_pairs(&v["result"]["quiver"]), pairs(BP_QUIVER))
        }),
        ("extending B by S(2)", "extend d4_clustertilted S:2 --sigma P:1 P:2 S:2 rad:P:1", |v| {
            expect("passed", v["passed"].as_bool(), Some(true))?;
            expect("arrows", arrow_pairs(&v["result"]["quiver"]), pairs(BPRIME_QUIVER))
        }),
        ("B[P] is mutation-acyclic", "search-acyclic d4_bp", |v| {
            expect("found", v["sequence"].is_array(), true)
        }),
        ("Example quiver is acyclic after mutating at 3, 4", "is-acyclic ex310 3 4", |v| {
            expect("acyclic", v["acyclic"].as_bool(), Some(true))
        }),
        ("mutation at 3, 4 gives a quiver", "mutate ex310 3 4", |v| {
            expect("vertices", v["vertices"].as_array().map(Vec::len), Some(4))
        }),
        ("extension by P(3) has no acyclic quiver within depth 8", "search-acyclic ex310_ext --depth 8", |v| {
            expect("sequence", v["sequence"].is_null(), true)
        }),
        ("knitting the example hits the cap", "knit ex310 --cap 40", |v| {
            expect("complete", v["complete"].as_bool(), Some(false))
        }),
    ]
}

pub fn run() -> Vec<Row> {
    cases()
        .into_iter()
        .map(|(name, args, pred)| {
            let mut argv: Vec<String> = vec!["quiverkit".into(), "--format".into(), "json".into()];
            argv.extend(args.split_whitespace().map(String::from));
            let (passed, detail) = match Cli::try_parse_from(&argv) {
                Err(e) => (false, format!("usage: {}", e.kind())),
                Ok(cli) => match execute(&cli) {
                    Ok(s) => match serde_json::from_str::<Value>(&s) {
                        Ok(v) => match pred(&v) {
                            Ok(()) => (true, args.to_string()),
                            Err(m) => (false, m),
                        },
                        Err(e) => (false, format!("bad JSON: {e}")),
                    },
                    Err(Failure::Usage(m)) => (false, format!("usage: {m}")),
                    Err(Failure::Domain(e)) => (false, format!("error: {e:#}")),
                    Err(Failure::Reported { message, .. }) => (false, message),
                },
            };
            Row { name, argv: argv[3..].to_vec(), passed, detail }
        })
        .collect()
}
