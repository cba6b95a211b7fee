//! Hypergraph documents: a plain line format and JSON.
//!
//! Plain format, one hyperedge per line:
//!
//! ```text
//! # Example: a filled triangle with a missing vertex
//! v0
//! v1
//! v0 v1 : 0.5
//! v0 v1 v2 : 1/3
//! [A]
//! v0
//! v0 v1
//! ```
//!
//! Labels are whitespace-separated; an optional `: value` suffix gives an
//! exact rational filtration value (decimal, exponent or `p/q`). A line
//! `[name]` starts a named sub-hypergraph; every following line belongs to
//! it and must repeat a hyperedge of the main list. Vertex ids follow the
//! natural order of the labels (`v2` before `v10`).
//!
//! The JSON form has `edges` (lists of labels) and optional `vertices`
//! (fixing the id order), `values` (parallel to `edges`, numbers, strings
//! or null) and `subs` (name to list of hyperedges).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Hypergraph, HypergraphPair, VertexId};
use crate::persistence::format_value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
}

impl Format {
    /// JSON for a `.json` path or text starting with `{`, plain otherwise.
    pub fn detect(path: Option<&str>, text: &str) -> Format {
        if path.is_some_and(|p| p.to_ascii_lowercase().ends_with(".json")) || text.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Plain
        }
    }
}

/// A labelled hypergraph with optional filtration values and named subs.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergraphDocument {
    vertices: Vec<String>,
    hypergraph: Hypergraph,
    values: BTreeMap<Hyperedge, BigRational>,
    subs: BTreeMap<String, Hypergraph>,
}

impl HypergraphDocument {
    /// Labels `v<i>` for vertex `i`.
    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        let max = h.vertices().iter().map(|v| v.0).max();
        HypergraphDocument {
            vertices: max.map_or(Vec::new(), |m| (0..=m).map(|i| format!("v{i}")).collect()),
            hypergraph: h.clone(),
            values: BTreeMap::new(),
            subs: BTreeMap::new(),
        }
    }

    pub fn with_sub(mut self, name: &str, sub: &Hypergraph) -> Result<Self> {
        if !sub.is_subset_of(&self.hypergraph) {
            return Err(Error::NotContained(format!("sub '{name}' is not contained in the main list")));
        }
        self.subs.insert(name.to_string(), sub.clone());
        Ok(self)
    }

    pub fn with_values(mut self, values: BTreeMap<Hyperedge, BigRational>) -> Result<Self> {
        if let Some(e) = values.keys().find(|e| !self.hypergraph.contains(e)) {
            return Err(Error::InvalidInput(format!("value for {} which is not a hyperedge", self.render_edge(e))));
        }
        self.values = values;
        Ok(self)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn values(&self) -> &BTreeMap<Hyperedge, BigRational> {
        &self.values
    }

    pub fn subs(&self) -> &BTreeMap<String, Hypergraph> {
        &self.subs
    }

    pub fn sub(&self, name: &str) -> Result<&Hypergraph> {
        self.subs.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.subs.keys().map(String::as_str).collect();
            Error::InvalidInput(format!(
                "no sub-hypergraph named '{name}' (available: {})",
                if known.is_empty() { "none".to_string() } else { known.join(", ") }
            ))
        })
    }

    /// `(H, sub)`, or `(H, ∅)` without a name.
    pub fn pair(&self, name: Option<&str>) -> Result<HypergraphPair> {
        let sub = match name {
            Some(n) => self.sub(n)?.clone(),
            None => Hypergraph::new(),
        };
        HypergraphPair::new(self.hypergraph.clone(), sub)
    }

    pub fn label(&self, v: VertexId) -> String {
        self.vertices
            .get(v.0 as usize)
            .cloned()
            .unwrap_or_else(|| format!("#{}", v.0))
    }

    /// `{a,b,c}`.
    pub fn render_edge(&self, e: &Hyperedge) -> String {
        let labels: Vec<String> = e.vertices().iter().map(|&v| self.label(v)).collect();
        format!("{{{}}}", labels.join(","))
    }

    /// `{{a},{a,b}}` in canonical hyperedge order.
    pub fn render(&self, h: &Hypergraph) -> String {
        let edges: Vec<String> = h.iter().map(|e| self.render_edge(e)).collect();
        format!("{{{}}}", edges.join(","))
    }

    /// Hyperedges as label lists, for structured output.
    pub fn edge_labels(&self, h: &Hypergraph) -> Vec<Vec<String>> {
        h.iter()
            .map(|e| e.vertices().iter().map(|&v| self.label(v)).collect())
            .collect()
    }

    /// A hyperedge written as labels separated by commas or whitespace,
    /// optionally wrapped in braces.
    pub fn parse_edge(&self, text: &str) -> Result<Hyperedge> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
        let labels: Vec<&str> = inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        if labels.is_empty() {
            return Err(Error::InvalidInput(format!("empty hyperedge '{text}'")));
        }
        let ids = labels
            .iter()
            .map(|l| {
                self.vertices
                    .iter()
                    .position(|x| x == l)
                    .map(|i| VertexId(i as u32))
                    .ok_or_else(|| Error::InvalidInput(format!("unknown vertex label '{l}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Hyperedge::new(ids).map_err(|_| Error::InvalidInput(format!("repeated vertex in '{text}'")))
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        let line = |e: &Hyperedge| -> String { e.vertices().iter().map(|&v| self.label(v)).collect::<Vec<_>>().join(" ") };
        for e in self.hypergraph.iter() {
            out.push_str(&line(e));
            if let Some(x) = self.values.get(e) {
                out.push_str(" : ");
                out.push_str(&format_value(x));
            }
            out.push('\n');
        }
        for (name, sub) in &self.subs {
            out.push_str(&format!("[{name}]\n"));
            for e in sub.iter() {
                out.push_str(&line(e));
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let raw = RawDocument {
            vertices: Some(self.vertices.clone()),
            edges: self.edge_labels(&self.hypergraph),
            values: (!self.values.is_empty()).then(|| {
                self.hypergraph
                    .iter()
                    .map(|e| self.values.get(e).map(|x| RawValue::Text(format_value(x))))
                    .collect()
            }),
            subs: self.subs.iter().map(|(n, s)| (n.clone(), self.edge_labels(s))).collect(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable") + "\n"
    }
}

pub fn parse_hypergraph(text: &str, format: Format) -> Result<HypergraphDocument> {
    match format {
        Format::Plain => parse_plain(text),
        Format::Json => parse_json(text),
    }
}

/// Exact rational from `3`, `-0.25`, `1.5e-3` or `2/7`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let s = text.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        return (!q.is_zero()).then(|| BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let n = BigInt::from_str(&format!("{int}{frac}")).ok()?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut x = if scale >= 0 {
        BigRational::from_integer(n * ten.pow(scale as u32))
    } else {
        BigRational::new(n, ten.pow(scale.unsigned_abs()))
    };
    if neg {
        x = -x;
    }
    Some(x)
}

/// Natural order on labels: digit runs compare as numbers.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, xa), (db, xb)) in ca.iter().zip(&cb) {
        let ord = match (da, db) {
            (true, true) => {
                let (ta, tb) = (xa.trim_start_matches('0'), xb.trim_start_matches('0'));
                ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb))
            }
            _ => xa.cmp(xb),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

struct RawEdge {
    line: usize,
    labels: Vec<String>,
    value: Option<BigRational>,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_plain(text: &str) -> Result<HypergraphDocument> {
    let mut main = Vec::new();
    let mut sections: Vec<(String, Vec<RawEdge>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(name) = t.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| perr(line, "unterminated section header"))?
                .trim();
            if name.is_empty() {
                return Err(perr(line, "empty section name"));
            }
            if sections.iter().any(|(n, _)| n == name) {
                return Err(perr(line, format!("duplicate section [{name}]")));
            }
            sections.push((name.to_string(), Vec::new()));
            continue;
        }
        let (labels, value) = match t.split_once(':') {
            Some((l, v)) => {
                let x = parse_rational(v).ok_or_else(|| perr(line, format!("invalid value '{}'", v.trim())))?;
                (l, Some(x))
            }
            None => (t, None),
        };
        let labels: Vec<String> = labels.split_whitespace().map(str::to_string).collect();
        if labels.is_empty() {
            return Err(perr(line, "empty hyperedge"));
        }
        let edge = RawEdge { line, labels, value };
        match sections.last_mut() {
            None => main.push(edge),
            Some((name, edges)) => {
                if edge.value.is_some() {
                    return Err(perr(line, format!("values are not allowed in sub [{name}]")));
                }
                edges.push(edge);
            }
        }
    }

    let mut labels: Vec<String> = main
        .iter()
        .flat_map(|e| e.labels.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    labels.sort_by(|a, b| natural_cmp(a, b));
    let index: HashMap<&str, u32> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i as u32)).collect();

    let resolve = |e: &RawEdge, context: &str| -> Result<Hyperedge> {
        let ids = e
            .labels
            .iter()
            .map(|l| {
                index
                    .get(l.as_str())
                    .map(|&i| VertexId(i))
                    .ok_or_else(|| perr(e.line, format!("unknown vertex label '{l}' in {context}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Hyperedge::new(ids).map_err(|_| perr(e.line, "repeated vertex in a hyperedge"))
    };

    let mut h = Hypergraph::new();
    let mut values = BTreeMap::new();
    for e in &main {
        let he = resolve(e, "the main list")?;
        if !h.insert(he.clone()) {
            return Err(perr(e.line, "duplicate hyperedge"));
        }
        if let Some(x) = &e.value {
            values.insert(he, x.clone());
        }
    }
    let mut subs = BTreeMap::new();
    for (name, edges) in &sections {
        let mut s = Hypergraph::new();
        for e in edges {
            let he = resolve(e, &format!("sub [{name}]"))?;
            if !h.contains(&he) {
                return Err(perr(e.line, format!("hyperedge of sub [{name}] is not in the main list")));
            }
            if !s.insert(he) {
                return Err(perr(e.line, format!("duplicate hyperedge in sub [{name}]")));
            }
        }
        subs.insert(name.clone(), s);
    }
    Ok(HypergraphDocument {
        vertices: labels,
        hypergraph: h,
        values,
        subs,
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<String>>,
    edges: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<Option<RawValue>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    subs: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawValue {
    Number(serde_json::Number),
    Text(String),
}

fn ferr(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::ParseField {
        field: field.into(),
        message: message.into(),
    }
}

fn parse_json(text: &str) -> Result<HypergraphDocument> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let labels = match raw.vertices {
        Some(v) => {
            let mut seen = BTreeSet::new();
            for (i, l) in v.iter().enumerate() {
                if l.trim().is_empty() || !seen.insert(l.as_str()) {
                    return Err(ferr(format!("vertices[{i}]"), format!("empty or repeated label '{l}'")));
                }
            }
            v
        }
        None => {
            let mut v: Vec<String> = raw.edges.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
            v.sort_by(|a, b| natural_cmp(a, b));
            v
        }
    };
    let index: HashMap<&str, u32> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i as u32)).collect();
    let resolve = |labels: &[String], field: &str| -> Result<Hyperedge> {
        if labels.is_empty() {
            return Err(ferr(field, "empty hyperedge"));
        }
        let ids = labels
            .iter()
            .map(|l| {
                index
                    .get(l.as_str())
                    .map(|&i| VertexId(i))
                    .ok_or_else(|| ferr(field, format!("unknown vertex label '{l}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Hyperedge::new(ids).map_err(|_| ferr(field, "repeated vertex in a hyperedge"))
    };

    let mut h = Hypergraph::new();
    let mut order = Vec::with_capacity(raw.edges.len());
    for (i, e) in raw.edges.iter().enumerate() {
        let field = format!("edges[{i}]");
        let he = resolve(e, &field)?;
        if !h.insert(he.clone()) {
            return Err(ferr(field, "duplicate hyperedge"));
        }
        order.push(he);
    }
    let mut values = BTreeMap::new();
    if let Some(vs) = raw.values {
        if vs.len() != order.len() {
            return Err(ferr("values", format!("{} values for {} hyperedges", vs.len(), order.len())));
        }
        for (i, (v, e)) in vs.into_iter().zip(&order).enumerate() {
            let Some(v) = v else { continue };
            let text = match v {
                RawValue::Number(n) => n.to_string(),
                RawValue::Text(s) => s,
            };
            let x = parse_rational(&text).ok_or_else(|| ferr(format!("values[{i}]"), format!("invalid value '{text}'")))?;
            values.insert(e.clone(), x);
        }
    }
    let mut subs = BTreeMap::new();
    for (name, edges) in &raw.subs {
        let mut s = Hypergraph::new();
        for (i, e) in edges.iter().enumerate() {
            let field = format!("subs.{name}[{i}]");
            let he = resolve(e, &field)?;
            if !h.contains(&he) {
                return Err(ferr(field, "hyperedge is not in the main list"));
            }
            if !s.insert(he) {
                return Err(ferr(field, "duplicate hyperedge"));
            }
        }
        subs.insert(name.clone(), s);
    }
    Ok(HypergraphDocument {
        vertices: labels,
        hypergraph: h,
        values,
        subs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn first_example_in_plain_form() {
        let doc = parse_plain("v0\nv1\nv2\nv0 v1\nv0 v1 v2\n").unwrap();
        assert_eq!(doc.hypergraph(), &fixtures::ex21_h());
        assert_eq!(doc.hypergraph().len(), 5);
    }

    #[test]
    fn value_suffix() {
        let doc = parse_plain("a b : 0.5").unwrap();
        let e = doc.parse_edge("a,b").unwrap();
        assert_eq!(doc.hypergraph().len(), 1);
        assert_eq!(e.dim(), 1);
        assert_eq!(doc.values()[&e], r(1, 2));
    }

    #[test]
    fn rationals_parse_exactly() {
        assert_eq!(parse_rational("3"), Some(r(3, 1)));
        assert_eq!(parse_rational("-0.25"), Some(r(-1, 4)));
        assert_eq!(parse_rational("1.5e-3"), Some(r(3, 2000)));
        assert_eq!(parse_rational("2E2"), Some(r(200, 1)));
        assert_eq!(parse_rational(" 2/6 "), Some(r(1, 3)));
        assert_eq!(parse_rational(".5"), Some(r(1, 2)));
        for bad in ["", "1/0", "x", "1.2.3", "-", "e3", "0.1f"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn plain_errors_carry_lines() {
        let cases = [
            ("v0\n : 1\n", 2),
            ("v0\nv0\n", 2),
            ("v0 v0\n", 1),
            ("v0\n[A]\nv1\n", 3),
            ("v0\nv1\n[A]\nv0 v1\n", 4),
            ("v0 : abc\n", 1),
            ("v0\n[A\n", 2),
            ("v0\n[A]\nv0 : 1\n", 3),
        ];
        for (text, line) in cases {
            match parse_plain(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn json_sub_outside_main_list_is_rejected() {
        let text = r#"{"edges": [["a"], ["b"]], "subs": {"A": [["a", "b"]]}}"#;
        assert!(matches!(parse_json(text), Err(Error::ParseField { field, .. }) if field == "subs.A[0]"));
        let text = r#"{"edges": [["a"], ["b"]], "subs": {"A": [["c"]]}}"#;
        assert!(matches!(parse_json(text), Err(Error::ParseField { .. })));
        let text = r#"{"edges": [["a"], []]}"#;
        assert!(matches!(parse_json(text), Err(Error::ParseField { field, .. }) if field == "edges[1]"));
        assert!(matches!(parse_json("{\"edges\": 3}"), Err(Error::Parse { .. })));
    }

    #[test]
    fn json_values_and_explicit_vertex_order() {
        let text = r#"{"vertices": ["z", "a"], "edges": [["a"], ["z", "a"]], "values": [1, "1/3"]}"#;
        let doc = parse_json(text).unwrap();
        let e = doc.parse_edge("{a}").unwrap();
        assert_eq!(e, Hyperedge::from_ids(&[1]));
        assert_eq!(doc.values()[&e], r(1, 1));
        assert_eq!(doc.render_edge(&doc.parse_edge("a z").unwrap()), "{z,a}");
    }

    #[test]
    fn natural_label_order() {
        let doc = parse_plain("v10\nv2\nv1 v10\n").unwrap();
        assert_eq!(doc.vertices(), ["v1", "v2", "v10"]);
        assert_eq!(natural_cmp("a01", "a1"), Ordering::Less);
        assert_eq!(natural_cmp("b", "a9"), Ordering::Greater);
    }

    #[test]
    fn round_trips() {
        let p = fixtures::ex4a();
        let doc = HypergraphDocument::from_hypergraph(p.total())
            .with_sub("A", p.sub())
            .unwrap()
            .with_values(crate::persistence::dimension_values(p.total()))
            .unwrap();
        assert_eq!(parse_plain(&doc.to_plain()).unwrap(), doc);
        assert_eq!(parse_json(&doc.to_json()).unwrap(), doc);
        assert_eq!(doc.render(doc.sub("A").unwrap()), "{{v0},{v1},{v3},{v0,v1},{v0,v1,v3}}");
        assert!(doc.sub("B").is_err());
    }
}
