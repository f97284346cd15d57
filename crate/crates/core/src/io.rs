//! Text formats: points as coefficient lists, vertex-set files, DOT export
//! and the JSON summaries emitted by the command line.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::construct::{Expected, Provenance, VertexSet};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::gf::{Elem, Field};
use crate::srg::{expected_params, Graph, GraphSpec};
use crate::verify::{IntriguingReport, SetType};

const GRAPH_TAG: &str = "# graph:";
const PROVENANCE_TAG: &str = "# provenance:";
const EXPECTED_TAG: &str = "# expected:";

/// `[c0,c1,...]`, low-to-high over the prime field, one entry per degree.
pub fn format_elem(f: &Field, x: Elem) -> String {
    let cs: Vec<String> = f.coeffs(x).iter().map(u32::to_string).collect();
    format!("[{}]", cs.join(","))
}

/// `([..], [..], ...)`.
pub fn format_point(f: &Field, p: &Point) -> String {
    let cs: Vec<String> = p.0.iter().map(|&x| format_elem(f, x)).collect();
    format!("({})", cs.join(", "))
}

/// Inverse of [`format_point`]; whitespace is ignored. The result is not
/// normalized.
pub fn parse_point(f: &Field, s: &str) -> Result<Vec<Elem>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("point {s:?} is not parenthesized")))?;
    let inner = inner
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("point {s:?} has no coefficient lists")))?;
    inner
        .split("],[")
        .map(|part| {
            let coeffs = if part.is_empty() {
                Vec::new()
            } else {
                part.split(',')
                    .map(|c| {
                        c.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad coefficient {c:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<u32>>>()?
            };
            f.from_coeffs(&coeffs)
        })
        .collect()
}

/// Vertex `i` of `g` in the point text format.
pub fn vertex_label(g: &Graph, i: usize) -> String {
    format_point(g.space().coord_field(), &g.vertices()[i])
}

/// Looks up a point given in text form, normalizing it first.
pub fn parse_vertex(g: &Graph, s: &str) -> Result<usize> {
    let v = parse_point(g.space().coord_field(), s)?;
    if v.len() != g.space().dim() {
        return Err(Error::DimensionMismatch {
            expected: g.space().dim(),
            found: v.len(),
        });
    }
    g.index_of_vector(&v)
        .ok_or_else(|| Error::Parse(format!("{} is not a vertex of {}", s.trim(), g.spec())))
}

/// The graph line of a set file.
pub fn read_set_spec(text: &str) -> Result<GraphSpec> {
    text.lines()
        .find_map(|l| l.strip_prefix(GRAPH_TAG))
        .ok_or_else(|| Error::Parse(format!("set file has no {GRAPH_TAG:?} line")))?
        .trim()
        .parse()
}

/// Set file: graph line, provenance, optional expected values, then one
/// vertex per line in canonical order.
pub fn write_set(g: &Graph, set: &VertexSet) -> Result<String> {
    if set.spec() != g.spec() || set.universe() != g.v() {
        return Err(Error::Invariant(format!(
            "set belongs to {}, graph is {}",
            set.spec(),
            g.spec()
        )));
    }
    let json = |e: serde_json::Error| Error::Invariant(e.to_string());
    let mut out = String::new();
    writeln!(out, "{GRAPH_TAG} {}", g.spec()).unwrap();
    writeln!(out, "{PROVENANCE_TAG} {}", serde_json::to_string(&set.provenance).map_err(json)?)
        .unwrap();
    if let Some(e) = &set.expected {
        writeln!(out, "{EXPECTED_TAG} {}", serde_json::to_string(e).map_err(json)?).unwrap();
    }
    for &i in set.indices() {
        writeln!(out, "{}", vertex_label(g, i)).unwrap();
    }
    Ok(out)
}

/// Parses a set file written for `g`. Blank lines and unknown `#` lines
/// are skipped; a missing provenance line reads as explicit.
pub fn read_set(g: &Graph, text: &str) -> Result<VertexSet> {
    let spec = read_set_spec(text)?;
    if &spec != g.spec() {
        return Err(Error::Parse(format!("set file is for {spec}, graph is {}", g.spec())));
    }
    let mut provenance = Provenance::Explicit;
    let mut expected: Option<Expected> = None;
    let mut indices = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(rest) = line.strip_prefix(PROVENANCE_TAG) {
            provenance = serde_json::from_str(rest.trim())
                .map_err(|e| Error::Parse(format!("provenance: {e}")))?;
        } else if let Some(rest) = line.strip_prefix(EXPECTED_TAG) {
            expected = Some(
                serde_json::from_str(rest.trim())
                    .map_err(|e| Error::Parse(format!("expected: {e}")))?,
            );
        } else if !line.starts_with('#') {
            indices.push(parse_vertex(g, line)?);
        }
    }
    let n = indices.len();
    let set = VertexSet::new(spec, g.v(), indices, provenance)?.with_expected(expected);
    if set.len() != n {
        return Err(Error::Parse("set file lists a vertex twice".into()));
    }
    Ok(set)
}

/// Undirected DOT graph labelled by coordinates; members of `highlight`
/// are filled.
pub fn to_dot(g: &Graph, highlight: Option<&VertexSet>) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{}\" {{", g.spec()).unwrap();
    for i in 0..g.v() {
        let fill = match highlight {
            Some(s) if s.contains(i) => ", style=filled, fillcolor=gray",
            _ => "",
        };
        writeln!(out, "  {i} [label=\"{}\"{fill}];", vertex_label(g, i)).unwrap();
    }
    for i in 0..g.v() {
        for j in g.adj().row_ones(i).filter(|&j| j > i) {
            writeln!(out, "  {i} -- {j};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub family: String,
    pub q: u32,
    pub r: u32,
    pub eps: Option<i8>,
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
    pub e_plus: i64,
    pub e_minus: i64,
    pub matches_expected: bool,
}

/// Measured parameters of `g` against the closed-form ones.
pub fn graph_summary(g: &Graph) -> Result<GraphSummary> {
    let m = g.params()?;
    let e = expected_params(g.spec())?;
    let spec = g.spec();
    Ok(GraphSummary {
        family: spec.family.to_string(),
        q: spec.q,
        r: spec.r,
        eps: spec.eps,
        v: m.v,
        k: m.k,
        lambda: m.lambda,
        mu: m.mu,
        e_plus: m.e_plus,
        e_minus: m.e_minus,
        matches_expected: m == e,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSummary {
    pub size: usize,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measured {
    pub h1: Option<u64>,
    pub h2: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetReport {
    pub graph: GraphSummary,
    pub set: SetSummary,
    pub measured: Measured,
    #[serde(rename = "type")]
    pub set_type: SetType,
    pub matches_expected: Option<bool>,
    pub eigenvector_ok: bool,
    pub matched: Vec<String>,
    pub expected: Option<Expected>,
}

impl SetReport {
    pub fn new(
        g: &Graph,
        set: &VertexSet,
        report: &IntriguingReport,
        eigenvector_ok: bool,
    ) -> Result<Self> {
        Ok(SetReport {
            graph: graph_summary(g)?,
            set: SetSummary {
                size: set.len(),
                provenance: set.provenance.clone(),
            },
            measured: Measured {
                h1: report.h1,
                h2: report.h2,
            },
            set_type: report.set_type,
            matches_expected: report.matches_expected,
            eigenvector_ok,
            matched: report.matched.clone(),
            expected: set.expected.clone(),
        })
    }

    /// Intriguing, eigenvector identity holds, and no expected value
    /// disagrees.
    pub fn passed(&self) -> bool {
        self.measured.h1.is_some() && self.eigenvector_ok && self.matches_expected != Some(false)
    }
}
