//! Text formats for complexes and covers, and JSON / DOT export of decorated
//! mapper graphs.
//!
//! Complex files:
//!
//! ```text
//! # comment
//! v <id> <value>
//! s <id> <id> ...
//! ```
//!
//! Cover files hold either `i <lo> <hi>` lines or a single
//! `uniform <n> <overlap> [<lo> <hi>]` line.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cosheaf::DecoratedMapperGraph;
use crate::cover::{uniform_cover, Cover, CoverError, OpenInterval};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::simplicial::{build_complex, ComplexError, ScalarField, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse().map_err(|_| ParseError {
        line,
        message: format!("invalid {what} `{tok}`"),
    })
}

/// Parsed but not yet validated complex file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexFile {
    /// `(line, id, value)`
    pub vertices: Vec<(usize, usize, f64)>,
    /// `(line, ids)`
    pub simplices: Vec<(usize, Vec<usize>)>,
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut out = ComplexFile::default();
        for (ln, toks) in lines(text) {
            match toks[0] {
                "v" => {
                    if toks.len() != 3 {
                        return err(ln, "expected `v <id> <value>`");
                    }
                    let id = number(ln, toks[1], "vertex id")?;
                    let value: f64 = number(ln, toks[2], "value")?;
                    if !value.is_finite() {
                        return err(ln, format!("non-finite value for vertex {id}"));
                    }
                    out.vertices.push((ln, id, value));
                }
                "s" => {
                    if toks.len() < 2 {
                        return err(ln, "empty simplex");
                    }
                    let ids = toks[1..]
                        .iter()
                        .map(|t| number(ln, t, "vertex id"))
                        .collect::<Result<Vec<usize>, _>>()?;
                    out.simplices.push((ln, ids));
                }
                other => return err(ln, format!("unknown record `{other}`")),
            }
        }
        Ok(out)
    }

    /// Builds the complex, attributing every failure to a line.
    pub fn build(&self) -> Result<(SimplicialComplex, ScalarField), ParseError> {
        let values: Vec<(usize, f64)> = self.vertices.iter().map(|&(_, id, v)| (id, v)).collect();
        let simplices: Vec<Vec<usize>> = self.simplices.iter().map(|(_, s)| s.clone()).collect();
        build_complex(&simplices, &values).map_err(|e| {
            let vertex_line = |id: usize, nth: usize| {
                self.vertices
                    .iter()
                    .filter(|v| v.1 == id)
                    .nth(nth)
                    .map_or(0, |v| v.0)
            };
            let simplex_line = |pred: &dyn Fn(&[usize]) -> bool| {
                self.simplices
                    .iter()
                    .find(|(_, s)| pred(s))
                    .map_or(0, |s| s.0)
            };
            let line = match &e {
                ComplexError::DuplicateVertex(id) => vertex_line(*id, 1),
                ComplexError::NonFiniteValue(id) => vertex_line(*id, 0),
                ComplexError::MissingFunctionValue(id) => simplex_line(&|s| s.contains(id)),
                ComplexError::DuplicateVertexInSimplex(bad) => {
                    simplex_line(&|s| s == bad.as_slice())
                }
                ComplexError::DegreeOutOfRange { .. } => 0,
            };
            let message = match e {
                ComplexError::MissingFunctionValue(id) => {
                    format!("simplex references unknown vertex {id}")
                }
                other => other.to_string(),
            };
            ParseError { line, message }
        })
    }
}

pub fn parse_complex(text: &str) -> Result<(SimplicialComplex, ScalarField), ParseError> {
    ComplexFile::parse(text)?.build()
}

/// Serializes maximal simplices and values; parsing the result rebuilds an
/// equal complex.
pub fn write_complex(x: &SimplicialComplex, f: &ScalarField, header: &str) -> String {
    let mut s = String::new();
    for l in header.lines() {
        let _ = writeln!(s, "# {l}");
    }
    for v in 0..x.vertex_count() {
        let _ = writeln!(s, "v {} {}", f.id(v), f.value(v));
    }
    let mut maximal = x.maximal_simplices();
    maximal.sort_unstable();
    for (d, i) in maximal {
        if d == 0 {
            continue;
        }
        let ids: Vec<String> = x.simplex_ids(d, i).iter().map(usize::to_string).collect();
        let _ = writeln!(s, "s {}", ids.join(" "));
    }
    s
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoverFile {
    Explicit(Vec<OpenInterval>),
    Uniform {
        n: usize,
        overlap: f64,
        range: Option<(f64, f64)>,
    },
}

impl CoverFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut explicit = Vec::new();
        let mut uniform = None;
        for (ln, toks) in lines(text) {
            if uniform.is_some() {
                return err(ln, "a `uniform` cover file has exactly one line");
            }
            match toks[0] {
                "i" => {
                    if toks.len() != 3 {
                        return err(ln, "expected `i <lo> <hi>`");
                    }
                    let lo: f64 = number(ln, toks[1], "endpoint")?;
                    let hi: f64 = number(ln, toks[2], "endpoint")?;
                    match OpenInterval::new(lo, hi) {
                        Ok(iv) => explicit.push(iv),
                        Err(e) => return err(ln, e.to_string()),
                    }
                }
                "uniform" => {
                    if !explicit.is_empty() {
                        return err(ln, "cannot mix `uniform` with explicit intervals");
                    }
                    if toks.len() != 3 && toks.len() != 5 {
                        return err(ln, "expected `uniform <n> <overlap> [<lo> <hi>]`");
                    }
                    let n = number(ln, toks[1], "element count")?;
                    let overlap = number(ln, toks[2], "overlap")?;
                    let range = if toks.len() == 5 {
                        Some((
                            number(ln, toks[3], "range bound")?,
                            number(ln, toks[4], "range bound")?,
                        ))
                    } else {
                        None
                    };
                    uniform = Some((ln, CoverFile::Uniform { n, overlap, range }));
                }
                other => return err(ln, format!("unknown record `{other}`")),
            }
        }
        if let Some((ln, u)) = uniform {
            // surface bad generator parameters as parse errors on their line
            if let CoverFile::Uniform { n, overlap, range } = &u {
                let (lo, hi) = range.unwrap_or((0.0, 1.0));
                if let Err(e) = uniform_cover(*n, *overlap, lo, hi) {
                    return err(ln, e.to_string());
                }
            }
            return Ok(u);
        }
        if explicit.is_empty() {
            return err(0, "cover file has no intervals");
        }
        Ok(CoverFile::Explicit(explicit))
    }

    /// A uniform cover without an explicit range spans `[min f, max f]`.
    pub fn resolve(&self, f: Option<&ScalarField>) -> Result<Cover, CoverError> {
        match self {
            CoverFile::Explicit(v) => Cover::new(v.clone()),
            CoverFile::Uniform { n, overlap, range } => {
                let (lo, hi) = match (range, f.and_then(ScalarField::range)) {
                    (Some(r), _) => *r,
                    (None, Some((lo, hi))) if hi > lo => (lo, hi),
                    (None, Some((lo, _))) => (lo - 0.5, lo + 0.5),
                    (None, None) => {
                        return Err(CoverError::InvalidParams(
                            "uniform cover needs a range or a complex".into(),
                        ))
                    }
                };
                uniform_cover(*n, *overlap, lo, hi)
            }
        }
    }
}

pub fn write_cover(c: &Cover) -> String {
    c.elements()
        .iter()
        .map(|u| format!("i {} {}\n", u.lo, u.hi))
        .collect()
}

/// Dense matrix with exact entries as strings, row-major.
pub type MatrixJson = Vec<Vec<String>>;

pub fn matrix_json<F: Field>(m: &Matrix<F>) -> MatrixJson {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub field: String,
    pub max_deg: usize,
    pub cover: Vec<OpenInterval>,
    pub resolution: f64,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub cover_index: usize,
    pub component_index: usize,
    pub betti: Vec<usize>,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: usize,
    pub source_node: usize,
    pub target_node: usize,
    pub cover_pair: [usize; 2],
    pub betti: Vec<usize>,
    pub maps: EdgeMapsJson,
}

/// Per-degree matrices of the maps into the source and the target node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeMapsJson {
    pub source: Vec<MatrixJson>,
    pub target: Vec<MatrixJson>,
}

impl GraphJson {
    pub fn from_graph<F: Field>(g: &DecoratedMapperGraph<F>) -> Self {
        GraphJson {
            field: F::KIND.tag().to_string(),
            max_deg: g.max_deg,
            cover: g.cover.elements().to_vec(),
            resolution: g.cover.resolution(),
            nodes: g
                .nodes
                .iter()
                .map(|n| NodeJson {
                    id: n.id,
                    cover_index: n.cover_index,
                    component_index: n.component_index,
                    betti: n.homology.dims(),
                    vertices: n.vertex_ids(),
                })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeJson {
                    id: e.id,
                    source_node: e.source_node,
                    target_node: e.target_node,
                    cover_pair: [e.cover_pair.0, e.cover_pair.1],
                    betti: e.homology.dims(),
                    maps: EdgeMapsJson {
                        source: e.maps[0].blocks().iter().map(matrix_json).collect(),
                        target: e.maps[1].blocks().iter().map(matrix_json).collect(),
                    },
                })
                .collect(),
        }
    }

    /// Canonical text: pretty-printed, fields in declaration order, trailing
    /// newline.
    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("graph json is serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Every map shape agrees with the Betti numbers of its endpoints.
    pub fn shapes_consistent(&self) -> bool {
        let betti = |id: usize| self.nodes.iter().find(|n| n.id == id).map(|n| &n.betti);
        self.edges.iter().all(|e| {
            let ok = |maps: &[MatrixJson], target: Option<&Vec<usize>>| {
                let Some(t) = target else { return false };
                maps.len() == e.betti.len()
                    && maps.iter().enumerate().all(|(n, m)| {
                        m.len() == t[n] && m.iter().all(|row| row.len() == e.betti[n])
                    })
            };
            ok(&e.maps.source, betti(e.source_node)) && ok(&e.maps.target, betti(e.target_node))
        })
    }

    /// Undirected multigraph in DOT syntax; parallel edges are kept.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph mapper {\n");
        for n in &self.nodes {
            let b: Vec<String> = n.betti.iter().map(usize::to_string).collect();
            let _ = writeln!(s, "  n{} [label=\"b=({})\"];", n.id, b.join(","));
        }
        for e in &self.edges {
            let b: Vec<String> = e.betti.iter().map(usize::to_string).collect();
            let _ = writeln!(
                s,
                "  n{} -- n{} [label=\"b=({})\"];",
                e.source_node,
                e.target_node,
                b.join(",")
            );
        }
        s.push_str("}\n");
        s
    }
}
