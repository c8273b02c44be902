//! The plain-text presentation format.
//!
//! ```text
//! field: rational
//! vertices: 1 2 3 4
//! arrows: a: 1 -> 2, b: 2 -> 4, g: 1 -> 3, d: 3 -> 4, e: 4 -> 1
//! relations: a*b + g*d, e*a, e*g, b*e, d*e
//! ```
//!
//! `field` defaults to `rational`. Blank lines and `#` comments are ignored.
//! In a relation, `*` composes paths left to right and a term may carry an
//! integer coefficient, as in `2*a*b - g*d`.

use std::fmt;

use quiverkit_core::{FieldSpec, Path, Presentation, Quiver, Relation};

/// A syntax or semantic error at a position in the input. Lines and columns
/// count from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

/// A slice of one input line that remembers where it started.
#[derive(Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

impl<'a> Span<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError { line: self.line, column: self.col, message: msg.into() })
    }

    fn slice(&self, start: usize, end: usize) -> Span<'a> {
        Span { text: &self.text[start..end], line: self.line, col: self.col + self.text[..start].chars().count() }
    }

    fn trim(&self) -> Span<'a> {
        let start = self.text.len() - self.text.trim_start().len();
        let end = self.text.trim_end().len().max(start);
        self.slice(start, end)
    }

    fn split_once(&self, pat: &str) -> Option<(Span<'a>, Span<'a>)> {
        let i = self.text.find(pat)?;
        Some((self.slice(0, i), self.slice(i + pat.len(), self.text.len())))
    }

    fn split(&self, sep: char) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, c) in self.text.char_indices() {
            if c == sep {
                out.push(self.slice(start, i));
                start = i + c.len_utf8();
            }
        }
        out.push(self.slice(start, self.text.len()));
        out
    }

    fn words(&self) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push(self.slice(s, i));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push(self.slice(s, self.text.len()));
        }
        out
    }
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '\'' | '.'))
}

/// Parses a presentation. The result has passed [`Presentation::validate`].
pub fn parse_presentation(text: &str) -> PResult<Presentation> {
    let mut field = None;
    let mut vertices: Option<Span> = None;
    let mut arrows: Option<Span> = None;
    let mut relations: Option<Span> = None;
    for (n, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let line = Span { text: content, line: n + 1, col: 1 };
        if line.text.trim().is_empty() {
            continue;
        }
        let Some((key, rest)) = line.split_once(":") else {
            return line.trim().err("expected `key: value`");
        };
        let key_t = key.trim();
        let slot = match key_t.text {
            "field" => {
                let v = rest.trim();
                let spec: FieldSpec = v.text.parse().or_else(|_| v.err(format!("unknown field `{}`", v.text)))?;
                if field.replace(spec).is_some() {
                    return key_t.err("`field` given twice");
                }
                continue;
            }
            "vertices" => &mut vertices,
            "arrows" => &mut arrows,
            "relations" => &mut relations,
            other => return key_t.err(format!("unknown key `{other}`")),
        };
        if slot.replace(rest).is_some() {
            return key_t.err(format!("`{}` given twice", key_t.text));
        }
    }
    let Some(vertices) = vertices else {
        return Err(ParseError { line: 1, column: 1, message: "missing `vertices:` line".into() });
    };
    let mut quiver = Quiver::default();
    for w in vertices.words() {
        if !is_name(w.text) {
            return w.err(format!("bad vertex name `{}`", w.text));
        }
        quiver.add_vertex(w.text).or_else(|e| w.err(e.to_string()))?;
    }
    if quiver.num_vertices() == 0 {
        return vertices.err("no vertices");
    }
    if let Some(arrows) = arrows.filter(|a| !a.text.trim().is_empty()) {
        for entry in arrows.split(',') {
            parse_arrow(&mut quiver, entry.trim())?;
        }
    }
    let mut rels = Vec::new();
    if let Some(relations) = relations.filter(|r| !r.text.trim().is_empty()) {
        for entry in relations.split(',') {
            rels.push(parse_relation(&quiver, entry.trim())?);
        }
    }
    let field = field.unwrap_or(FieldSpec::Rational);
    let p = Presentation { field, quiver, relations: rels };
    p.validate().map_err(|e| ParseError { line: relations.map_or(1, |r| r.line), column: 1, message: e.to_string() })?;
    Ok(p)
}

fn parse_arrow(q: &mut Quiver, entry: Span) -> PResult<()> {
    let Some((name, ends)) = entry.split_once(":") else {
        return entry.err("expected `name: source -> target`");
    };
    let Some((s, t)) = ends.split_once("->") else {
        return ends.err("expected `source -> target`");
    };
    let (name, s, t) = (name.trim(), s.trim(), t.trim());
    if !is_name(name.text) {
        return name.err(format!("bad arrow name `{}`", name.text));
    }
    let lookup = |v: Span| q.vertex_index(v.text).map_or_else(|| v.err(format!("unknown vertex `{}`", v.text)), Ok);
    let (si, ti) = (lookup(s)?, lookup(t)?);
    q.add_arrow(name.text, si, ti).map(|_| ()).or_else(|e| name.err(e.to_string()))
}

fn parse_relation(q: &Quiver, entry: Span) -> PResult<Relation> {
    if entry.text.is_empty() {
        return entry.err("empty relation");
    }
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut start = 0;
    for (i, c) in entry.text.char_indices().chain([(entry.text.len(), '+')]) {
        let end = i == entry.text.len();
        if c != '+' && c != '-' && !end {
            continue;
        }
        let piece = entry.slice(start, i).trim();
        if piece.text.is_empty() {
            // Only a leading sign may stand without a term before it.
            if end || !terms.is_empty() || start != 0 {
                return piece.err("missing term");
            }
        } else {
            terms.push(parse_term(q, piece, sign)?);
            sign = 1;
        }
        if c == '-' {
            sign = -1;
        }
        start = i + 1;
    }
    Ok(Relation { terms })
}

fn parse_term(q: &Quiver, term: Span, sign: i64) -> PResult<(i64, Path)> {
    let mut coeff = sign;
    let mut arrows = Vec::new();
    for (n, f) in term.split('*').into_iter().enumerate() {
        let f = f.trim();
        if f.text.is_empty() {
            return f.err("empty factor");
        }
        if f.text.chars().all(|c| c.is_ascii_digit()) {
            if n != 0 {
                return f.err("coefficient must come first");
            }
            let c: i64 = f.text.parse().or_else(|_| f.err("coefficient too large"))?;
            coeff *= c;
            continue;
        }
        let Some(a) = q.arrow_index(f.text) else {
            return f.err(format!("unknown arrow `{}`", f.text));
        };
        arrows.push(a);
    }
    if arrows.is_empty() {
        return term.err("term has no arrows");
    }
    let path = Path::from_arrows(q, arrows).or_else(|e| term.err(e.to_string()))?;
    Ok((coeff, path))
}

/// Writes a presentation in the format read by [`parse_presentation`].
pub fn to_text(p: &Presentation) -> String {
    let q = &p.quiver;
    let mut s = format!("field: {}\nvertices: {}\n", p.field, q.vertices().join(" "));
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|a| format!("{}: {} -> {}", a.name, q.vertices()[a.source], q.vertices()[a.target]))
        .collect();
    s.push_str(&format!("arrows: {}\n", arrows.join(", ")));
    let rels: Vec<String> = p.relations.iter().map(|r| r.render(q)).collect();
    s.push_str(&format!("relations: {}\n", rels.join(", ")));
    s
}

/// A presentation of a bare quiver, for example the result of a mutation.
pub fn quiver_to_text(field: FieldSpec, q: &Quiver) -> String {
    to_text(&Presentation { field, quiver: q.clone(), relations: Vec::new() })
}
