//! Small expressions naming modules on the command line.
//!
//! `S:v`, `P:v` and `I:v` are the simple, projective and injective at the
//! vertex labelled `v`; a bare vertex label means `S:v`. `rad:`, `top:`,
//! `soc:`, `tau:` and `tauinv:` apply to the expression on their right,
//! `X+Y` is a direct sum, parentheses group, and `@file.json` reads a module
//! in the JSON module format.

use quiverkit_core::homology::{tau, tau_inv};
use quiverkit_core::{BasedAlgebra, Field, Module};

use crate::json::ModuleJson;

fn split_top_level(s: &str) -> Result<Vec<&str>, String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(format!("unbalanced `)` in `{s}`"));
                }
            }
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(format!("unbalanced `(` in `{s}`"));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

pub fn parse_module<K: Field>(a: &BasedAlgebra<K>, spec: &str) -> Result<Module<K>, String> {
    let s = spec.trim();
    if s.is_empty() {
        return Err("empty module expression".into());
    }
    let parts = split_top_level(s)?;
    if parts.len() > 1 {
        let mods = parts.iter().map(|p| parse_module(a, p)).collect::<Result<Vec<_>, _>>()?;
        return Ok(Module::direct_sum(a.field(), &mods));
    }
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        return parse_module(a, inner);
    }
    if let Some(path) = s.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        let j: ModuleJson = serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
        return j.to_module(a);
    }
    let vertex = |v: &str| a.vertex_index(v.trim()).ok_or_else(|| format!("unknown vertex `{}`", v.trim()));
    let Some((head, rest)) = s.split_once(':') else {
        return Ok(Module::simple(a, vertex(s)?));
    };
    Ok(match head.trim() {
        "S" => Module::simple(a, vertex(rest)?),
        "P" => Module::projective(a, vertex(rest)?),
        "I" => Module::injective(a, vertex(rest)?),
        "rad" => parse_module(a, rest)?.radical(a).0,
        "top" => parse_module(a, rest)?.top(a).0,
        "soc" => parse_module(a, rest)?.socle(a).0,
        "tau" => tau(a, &parse_module(a, rest)?),
        "tauinv" => tau_inv(a, &parse_module(a, rest)?),
        other => return Err(format!("unknown module operation `{other}`")),
    })
}
