//! JSON formats for graphs, Pluecker vectors and matrices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cat0::LabeledGraph;
use crate::error::{Error, Result};
use crate::map::PlanarMap;
use crate::pluecker::{PlueckerVector, TMatrix};
use crate::subsets::{q_parse, q_to_string, Q};

/// A vertex given by index or by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VRef {
    Id(usize),
    Name(String),
}

/// Graph file: either `rotations` (ccw edge ids per vertex) or integer `coords`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GraphFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub names: Vec<String>,
    pub edges: Vec<[VRef; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotations: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<[i64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<[VRef; 2]>,
    #[serde(default)]
    pub labels: Vec<VRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl GraphFile {
    fn resolve(&self, r: &VRef, nv: usize) -> Result<usize> {
        match r {
            VRef::Id(i) if *i < nv => Ok(*i),
            VRef::Id(i) => Err(Error::Parse(format!("vertex {i} out of range"))),
            VRef::Name(s) => self
                .names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::Parse(format!("unknown vertex name {s:?}"))),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices
            .or(self.coords.as_ref().map(Vec::len))
            .or(self.rotations.as_ref().map(Vec::len))
            .unwrap_or(self.names.len())
    }

    pub fn build(&self) -> Result<LabeledGraph> {
        let nv = self.num_vertices();
        if nv == 0 {
            return Err(Error::Parse("graph has no vertices".into()));
        }
        let edges = self
            .edges
            .iter()
            .map(|[a, b]| Ok([self.resolve(a, nv)?, self.resolve(b, nv)?]))
            .collect::<Result<Vec<_>>>()?;
        let map = match (&self.rotations, &self.coords) {
            (Some(rot), _) => {
                let outer = match &self.outer {
                    Some([a, b]) => Some((self.resolve(a, nv)?, self.resolve(b, nv)?)),
                    None => None,
                };
                PlanarMap::from_rotations(nv, edges, rot, outer)?
            }
            (None, Some(c)) => {
                if c.len() != nv {
                    return Err(Error::Parse(format!("{} coordinates for {nv} vertices", c.len())));
                }
                PlanarMap::from_coords(edges, &c.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>())?
            }
            (None, None) if edges.is_empty() => PlanarMap::from_rotations(nv, edges, &vec![Vec::new(); nv], None)?,
            (None, None) => return Err(Error::Parse("graph needs rotations or coords".into())),
        };
        let labels = self.labels.iter().map(|r| self.resolve(r, nv)).collect::<Result<Vec<_>>>()?;
        LabeledGraph::with_k(map, labels, self.k.unwrap_or(3))
    }

    /// Serialize a labeled graph with explicit rotations.
    pub fn from_graph(g: &LabeledGraph) -> Self {
        let m = g.map();
        let outer = m.outer_walk().first().map(|&d| [VRef::Id(m.origin(d)), VRef::Id(m.target(d))]);
        GraphFile {
            vertices: Some(m.num_vertices()),
            names: Vec::new(),
            edges: m.edges().iter().map(|&[t, h]| [VRef::Id(t), VRef::Id(h)]).collect(),
            rotations: Some((0..m.num_vertices()).map(|v| m.rotation(v).iter().map(|d| d / 2).collect()).collect()),
            coords: None,
            outer,
            labels: g.labels().iter().map(|&z| VRef::Id(z)).collect(),
            k: (g.k() != 3).then_some(g.k()),
        }
    }
}

pub fn parse_graph(text: &str) -> Result<LabeledGraph> {
    let f: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    f.build()
}

#[derive(Serialize, Deserialize)]
struct Entry {
    #[serde(rename = "I")]
    i: Vec<usize>,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct PlueckerFile {
    n: usize,
    #[serde(default = "three")]
    k: usize,
    #[serde(default)]
    entries: Vec<Entry>,
    /// Sparse alternative: planar-basis coefficients keyed by triple text.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h: Option<BTreeMap<String, String>>,
    /// Sparse alternative: coordinate-vector coefficients keyed by triple text.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    e: Option<BTreeMap<String, String>>,
}

fn three() -> usize {
    3
}

pub fn pluecker_to_json(pi: &PlueckerVector) -> serde_json::Value {
    let f = PlueckerFile {
        n: pi.n(),
        k: pi.k(),
        entries: pi.iter().map(|(s, v)| Entry { i: s, value: q_to_string(&v) }).collect(),
        h: None,
        e: None,
    };
    serde_json::to_value(f).expect("serializable")
}

/// Parse a vector given by dense entries (missing ones are zero) or sparse `h` / `e` maps.
pub fn parse_pluecker(text: &str) -> Result<PlueckerVector> {
    let f: PlueckerFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut pi = PlueckerVector::zero(f.n, f.k);
    for e in &f.entries {
        if e.i.len() != f.k || e.i.iter().any(|&x| x == 0 || x > f.n) {
            return Err(Error::Parse(format!("bad index set {:?}", e.i)));
        }
        let mut s = e.i.clone();
        s.sort_unstable();
        pi.set(&s, q_parse(&e.value)?);
    }
    let parse_map = |m: &BTreeMap<String, String>| -> Result<Vec<(crate::Triple, Q)>> {
        m.iter().map(|(t, v)| Ok((crate::Triple::parse(t)?, q_parse(v)?))).collect()
    };
    if let Some(h) = &f.h {
        pi = pi.add(&PlueckerVector::from_h_terms(f.n, &parse_map(h)?)?);
    }
    if let Some(e) = &f.e {
        for (t, v) in parse_map(e)? {
            t.check_within(f.n)?;
            let cur = pi.at(t);
            pi.set(&t.get(), cur + v);
        }
    }
    Ok(pi)
}

#[derive(Serialize, Deserialize)]
struct TMatrixFile {
    n: usize,
    rows: [Vec<i64>; 2],
}

pub fn tmatrix_to_json(t: &TMatrix) -> serde_json::Value {
    serde_json::to_value(TMatrixFile { n: t.n, rows: t.rows.clone() }).expect("serializable")
}

pub fn parse_tmatrix(text: &str) -> Result<TMatrix> {
    let f: TMatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let len = f.n.saturating_sub(3);
    if f.rows.iter().any(|r| r.len() != len) {
        return Err(Error::LengthMismatch { expected: len, got: f.rows[0].len() });
    }
    Ok(TMatrix { n: f.n, rows: f.rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let text = r#"{"names":["a","b","c"],"coords":[[0,0],[2,0],[1,1]],
            "edges":[["a","b"],["b","c"],["c","a"]],"labels":["c","a","a","a","b","b"]}"#;
        let g = parse_graph(text).unwrap();
        assert_eq!(g.labels(), &[2, 0, 0, 0, 1, 1]);
        let again = serde_json::to_string(&GraphFile::from_graph(&g)).unwrap();
        let g2 = parse_graph(&again).unwrap();
        assert_eq!(g.map(), g2.map());
        assert_eq!(g.labels(), g2.labels());
    }

    #[test]
    fn pluecker_round_trip() {
        let pi = parse_pluecker(r#"{"n":6,"h":{"146":"1"},"e":{"123":"-1/2"}}"#).unwrap();
        let back = parse_pluecker(&pluecker_to_json(&pi).to_string()).unwrap();
        assert_eq!(pi, back);
    }
}
