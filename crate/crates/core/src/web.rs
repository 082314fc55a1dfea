//! SL(3)-webs in a disk, their dual graphs and strands.
//!
//! Boundary vertices are `0..n` in ccw order around the disk, interior vertices follow.
//! A boundary vertex lists its edges ccw as seen from inside the disk, starting next to
//! its ccw neighbor on the circle and ending next to its cw neighbor.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cat0::LabeledGraph;
use crate::error::{Error, Result};
use crate::map::PlanarMap;
use crate::pluecker::{canonical_form, relabel_expand, support, PlueckerVector};
use crate::subsets::{q, Triple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

#[derive(Clone, Debug)]
pub struct Web {
    n: usize,
    colors: Vec<Color>,
    edges: Vec<[usize; 2]>,
    rot: Vec<Vec<usize>>,
    /// The web plus boundary arcs b_i -> b_{i+1}, with edge ids `edges.len() + i`.
    aug: PlanarMap,
}

/// A directed boundary-to-boundary path; darts index the augmented map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Strand {
    pub start: usize,
    pub end: usize,
    pub darts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrandTriple {
    pub vertex: usize,
    pub color: Color,
    /// End labels of the strands entering the vertex, in ccw order of arrival.
    pub labels: [usize; 3],
}

impl StrandTriple {
    pub fn triple(&self) -> Option<Triple> {
        Triple::new(self.labels[0], self.labels[1], self.labels[2]).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WebFlags {
    pub non_elliptic: bool,
    pub standard: bool,
    pub black_boundary: bool,
    pub normal: bool,
    pub cyclic_less: bool,
}

/// A standard web with the label of each of its boundary vertices in the original web.
#[derive(Clone, Debug)]
pub struct Standardized {
    pub web: Web,
    pub labels: Vec<usize>,
}

impl Web {
    pub fn new(n: usize, colors: Vec<Color>, edges: Vec<[usize; 2]>, rot: Vec<Vec<usize>>) -> Result<Self> {
        let nv = colors.len();
        if n < 3 || n > nv {
            return Err(Error::InvalidWeb(format!("need at least three boundary vertices, got {n}")));
        }
        if rot.len() != nv {
            return Err(Error::InvalidWeb(format!("{} rotations for {nv} vertices", rot.len())));
        }
        for (e, &[a, b]) in edges.iter().enumerate() {
            if a >= nv || b >= nv {
                return Err(Error::InvalidWeb(format!("edge {e} has an endpoint out of range")));
            }
            if colors[a] == colors[b] {
                return Err(Error::InvalidWeb(format!("edge {e} joins two vertices of one color")));
            }
        }
        for v in n..nv {
            if rot[v].len() != 3 {
                return Err(Error::InvalidWeb(format!("interior vertex {v} has degree {}", rot[v].len())));
            }
        }
        let ne = edges.len();
        let mut aug_edges = edges.clone();
        aug_edges.extend((0..n).map(|i| [i, (i + 1) % n]));
        let mut darts: Vec<Vec<usize>> = Vec::with_capacity(nv);
        for (v, list) in rot.iter().enumerate() {
            let mut ds = Vec::with_capacity(list.len() + 2);
            if v < n {
                ds.push(2 * (ne + v));
            }
            for &e in list {
                let [a, b] = *edges.get(e).ok_or_else(|| Error::InvalidWeb(format!("unknown edge {e}")))?;
                ds.push(if a == v {
                    2 * e
                } else if b == v {
                    2 * e + 1
                } else {
                    return Err(Error::InvalidWeb(format!("vertex {v} lists edge {e} not incident to it")));
                });
            }
            if v < n {
                ds.push(2 * (ne + (v + n - 1) % n) + 1);
            }
            darts.push(ds);
        }
        let aug = PlanarMap::from_darts(nv, aug_edges, darts, Some(2 * ne + 1))
            .map_err(|e| Error::InvalidWeb(e.to_string()))?;
        if !aug.is_connected() {
            return Err(Error::InvalidWeb("a component does not reach the boundary".into()));
        }
        if nv as i64 - aug.num_edges() as i64 + aug.faces().len() as i64 != 2 {
            return Err(Error::InvalidWeb("rotation system is not planar".into()));
        }
        Ok(Web { n, colors, edges, rot, aug })
    }

    /// Build from integer positions; boundary vertices must be in convex ccw position.
    pub fn from_coords(n: usize, colors: Vec<Color>, edges: Vec<[usize; 2]>, coords: &[(i64, i64)]) -> Result<Self> {
        let ne = edges.len();
        if coords.len() != colors.len() || n < 3 {
            return Err(Error::InvalidWeb("coordinates do not match vertices".into()));
        }
        let mut aug_edges = edges.clone();
        aug_edges.extend((0..n).map(|i| [i, (i + 1) % n]));
        let aug = PlanarMap::from_coords(aug_edges, coords).map_err(|e| Error::InvalidWeb(e.to_string()))?;
        let mut rot = Vec::with_capacity(coords.len());
        for v in 0..coords.len() {
            let list: Vec<usize> = aug.rotation(v).to_vec();
            if v < n {
                let p = list.iter().position(|&d| d == 2 * (ne + v)).expect("arc at boundary vertex");
                let turned: Vec<usize> = list[p + 1..].iter().chain(&list[..p]).copied().collect();
                if turned.last() != Some(&(2 * (ne + (v + n - 1) % n) + 1)) {
                    return Err(Error::InvalidWeb(format!("boundary vertex {v} is not on the convex hull")));
                }
                rot.push(turned[..turned.len() - 1].iter().map(|d| d / 2).collect());
            } else {
                rot.push(list.iter().map(|d| d / 2).collect());
            }
        }
        Web::new(n, colors, edges, rot)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn augmented(&self) -> &PlanarMap {
        &self.aug
    }

    fn is_arc(&self, d: usize) -> bool {
        d / 2 >= self.edges.len()
    }

    /// Faces with no boundary vertex.
    pub fn interior_faces(&self) -> Vec<usize> {
        (0..self.aug.faces().len())
            .filter(|&f| {
                Some(f) != self.aug.outer_face()
                    && !self.aug.faces()[f].iter().any(|&d| self.is_arc(d) || self.aug.origin(d) < self.n)
            })
            .collect()
    }

    pub fn is_non_elliptic(&self) -> bool {
        self.interior_faces().iter().all(|&f| self.aug.faces()[f].len() >= 6)
    }

    pub fn is_standard(&self) -> bool {
        self.is_non_elliptic() && (0..self.n).all(|b| self.colors[b] == Color::Black && self.degree(b) == 1)
    }

    pub fn has_black_boundary(&self) -> bool {
        (0..self.n).all(|b| self.colors[b] == Color::Black)
    }

    /// Face ids of the augmented map that become vertices of the dual graph.
    fn dual_vertex_ids(&self) -> Vec<usize> {
        let mut id = vec![usize::MAX; self.aug.faces().len()];
        let mut next = 0;
        for (f, slot) in id.iter_mut().enumerate() {
            if Some(f) != self.aug.outer_face() {
                *slot = next;
                next += 1;
            }
        }
        id
    }

    /// The dual CAT(0) planar graph: faces become vertices, black vertices lie to the right
    /// of each dual edge, and z_a is the face just before b_a along the boundary.
    pub fn dual_graph(&self) -> Result<LabeledGraph> {
        if !self.is_non_elliptic() {
            return Err(Error::InvalidWeb("web is elliptic".into()));
        }
        let m = &self.aug;
        let ne = self.edges.len();
        let id = self.dual_vertex_ids();
        let nq = m.faces().len() - 1;
        let mut qedges = Vec::with_capacity(ne);
        for e in 0..ne {
            let [_, b] = self.edges[e];
            let d = if self.colors[b] == Color::Black { 2 * e } else { 2 * e + 1 };
            let (from, to) = (id[m.face_of(d ^ 1)], id[m.face_of(d)]);
            if from == to {
                return Err(Error::InvalidWeb(format!("edge {e} is a bridge")));
            }
            qedges.push([from, to]);
        }
        let mut rot = vec![Vec::new(); nq];
        let mut outer = None;
        for (f, walk) in m.faces().iter().enumerate() {
            if Some(f) == m.outer_face() {
                continue;
            }
            let v = id[f];
            for (i, &d) in walk.iter().enumerate() {
                if self.is_arc(d) {
                    continue;
                }
                let e = d / 2;
                let qd = if qedges[e][0] == v { 2 * e } else { 2 * e + 1 };
                rot[v].push(qd);
                if outer.is_none() && self.is_arc(walk[(i + 1) % walk.len()]) {
                    outer = Some(qd);
                }
            }
        }
        let map = PlanarMap::from_darts(nq, qedges, rot, outer)?;
        let labels = (0..self.n).map(|i| id[m.face_of(2 * (ne + (i + self.n - 1) % self.n))]).collect();
        LabeledGraph::new(map, labels)
    }

    /// The standard-labeled web whose dual is `g`; needs a ccw boundary and ccw labels.
    pub fn from_dual(g: &LabeledGraph) -> Result<Web> {
        let m = g.map();
        let n = g.n();
        if n < 3 {
            return Err(Error::InvalidGraph("need at least three labels".into()));
        }
        if m.num_edges() == 0 {
            return Web::new(n, vec![Color::Black; n], Vec::new(), vec![Vec::new(); n]);
        }
        let bdarts = m.ccw_boundary_darts();
        if !bdarts.iter().all(|&d| m.is_forward(d)) {
            return Err(Error::InvalidGraph("boundary is not oriented counterclockwise".into()));
        }
        let (start, offs) = g.ccw_offsets().ok_or_else(|| Error::InvalidGraph("labels are not in ccw order".into()))?;
        let len = bdarts.len();
        let mut owner = vec![usize::MAX; m.num_edges()];
        let mut brot = vec![Vec::new(); n];
        for a in 0..n {
            let end = if a + 1 < n { offs[a + 1] } else { offs[0] + len };
            for j in offs[a]..end {
                let e = bdarts[(start + j) % len] / 2;
                owner[e] = a;
                brot[a].push(e);
            }
            brot[a].reverse();
        }
        let mut tri = vec![usize::MAX; m.faces().len()];
        let mut colors = vec![Color::Black; n];
        let mut rot = brot;
        for (f, walk) in m.faces().iter().enumerate() {
            if Some(f) == m.outer_face() {
                continue;
            }
            tri[f] = colors.len();
            colors.push(if walk.iter().all(|&d| m.is_forward(d)) { Color::White } else { Color::Black });
            rot.push(walk.iter().map(|d| d / 2).collect());
        }
        let mut edges = Vec::with_capacity(m.num_edges());
        for e in 0..m.num_edges() {
            let (l, r) = (m.face_of(2 * e), m.face_of(2 * e + 1));
            let end = |f: usize| if Some(f) == m.outer_face() { owner[e] } else { tri[f] };
            if end(l) == usize::MAX || end(r) == usize::MAX {
                return Err(Error::InvalidGraph(format!("edge {e} is a cut edge")));
            }
            edges.push([end(l), end(r)]);
        }
        Web::new(n, colors, edges, rot)
    }

    fn next_dart(&self, d: usize) -> usize {
        let v = self.aug.target(d);
        if self.colors[v] == Color::White {
            self.aug.cw_next(d ^ 1)
        } else {
            self.aug.ccw_next(d ^ 1)
        }
    }

    /// All strands, one per boundary dart entering the web. Closed strands are an error.
    pub fn strands(&self) -> Result<Vec<Strand>> {
        let mut used = vec![false; 2 * self.edges.len()];
        let mut out = Vec::new();
        for b in 0..self.n {
            for &e in &self.rot[b] {
                let mut d = if self.edges[e][0] == b { 2 * e } else { 2 * e + 1 };
                let mut darts = vec![d];
                used[d] = true;
                while !self.is_boundary(self.aug.target(d)) {
                    d = self.next_dart(d);
                    darts.push(d);
                    used[d] = true;
                }
                out.push(Strand { start: b + 1, end: self.aug.target(d) + 1, darts });
            }
        }
        match used.iter().position(|&u| !u) {
            Some(d) => Err(Error::EllipticWeb(d)),
            None => Ok(out),
        }
    }

    /// End label of the strand through each web dart.
    pub fn dart_labels(&self) -> Result<Vec<usize>> {
        let mut lab = vec![0; 2 * self.edges.len()];
        for s in self.strands()? {
            for &d in &s.darts {
                lab[d] = s.end;
            }
        }
        Ok(lab)
    }

    pub fn strand_triples(&self) -> Result<Vec<StrandTriple>> {
        let lab = self.dart_labels()?;
        Ok((self.n..self.num_vertices())
            .map(|v| {
                let ds = self.aug.rotation(v);
                StrandTriple { vertex: v, color: self.colors[v], labels: [0, 1, 2].map(|i| lab[ds[i] ^ 1]) }
            })
            .collect())
    }

    pub fn flags(&self) -> Result<WebFlags> {
        let non_elliptic = self.is_non_elliptic();
        let triples = if non_elliptic { self.strand_triples()? } else { Vec::new() };
        let normal = non_elliptic && triples.iter().all(|t| t.triple().is_some());
        let cyclic_less = normal && triples.iter().all(|t| !t.triple().expect("distinct").is_cyclic(self.n));
        Ok(WebFlags {
            non_elliptic,
            standard: self.is_standard(),
            black_boundary: self.has_black_boundary(),
            normal,
            cyclic_less,
        })
    }

    /// Remove degree-0 boundary vertices, split higher-degree ones, and push white
    /// boundary vertices inside, each gaining two black boundary neighbors.
    pub fn standardize(&self) -> Result<Standardized> {
        if self.is_standard() {
            return Ok(Standardized { web: self.clone(), labels: (1..=self.n).collect() });
        }
        // new boundary vertices in ccw order: (old label, old edge or new edge marker)
        enum Slot {
            Old(usize, usize),
            Pushed(usize),
        }
        let mut slots: Vec<(usize, Slot)> = Vec::new();
        let mut pushed = Vec::new();
        for b in 0..self.n {
            for &e in self.rot[b].iter().rev() {
                if self.colors[b] == Color::Black {
                    slots.push((b + 1, Slot::Old(b, e)));
                } else {
                    let k = pushed.len();
                    pushed.push((b, e));
                    slots.push((b + 1, Slot::Pushed(2 * k)));
                    slots.push((b + 1, Slot::Pushed(2 * k + 1)));
                }
            }
        }
        let np = slots.len();
        if np < 3 {
            return Err(Error::InvalidWeb("too few boundary edges to standardize".into()));
        }
        let interior = self.num_vertices() - self.n;
        let remap_interior = |v: usize| np + (v - self.n);
        let white0 = np + interior;
        let mut colors = vec![Color::Black; np];
        colors.extend_from_slice(&self.colors[self.n..]);
        colors.extend(pushed.iter().map(|_| Color::White));
        let mut edges = self.edges.clone();
        // endpoint replacement for old boundary ends
        let mut end_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (i, (_, s)) in slots.iter().enumerate() {
            if let Slot::Old(b, e) = s {
                end_of.insert((*e, *b), i);
            }
        }
        for (k, &(b, e)) in pushed.iter().enumerate() {
            end_of.insert((e, b), white0 + k);
        }
        for (e, edge) in edges.iter_mut().enumerate() {
            for x in edge.iter_mut() {
                *x = if *x < self.n { end_of[&(e, *x)] } else { remap_interior(*x) };
            }
        }
        let mut rot: Vec<Vec<usize>> = vec![Vec::new(); np];
        rot.extend(self.rot[self.n..].iter().cloned());
        rot.extend(pushed.iter().map(|_| Vec::new()));
        for (i, (_, s)) in slots.iter().enumerate() {
            match s {
                Slot::Old(_, e) => rot[i].push(*e),
                Slot::Pushed(j) => {
                    let w = white0 + j / 2;
                    let e = edges.len();
                    edges.push([w, i]);
                    rot[i].push(e);
                    if j % 2 == 0 {
                        rot[w].push(pushed[j / 2].1);
                    }
                    rot[w].push(e);
                }
            }
        }
        let labels = slots.iter().map(|(l, _)| *l).collect();
        Ok(Standardized { web: Web::new(np, colors, edges, rot)?, labels })
    }

    /// Planar basis coefficients: +1 per white and -1 per black interior vertex at its
    /// strand triple. Non-standard webs are standardized and pulled back.
    pub fn pb_expansion(&self) -> Result<BTreeMap<Triple, i64>> {
        if !self.is_non_elliptic() {
            return Err(Error::InvalidWeb("web is elliptic".into()));
        }
        if self.is_standard() {
            let mut out: BTreeMap<Triple, i64> = BTreeMap::new();
            for t in self.strand_triples()? {
                let tr = t
                    .triple()
                    .ok_or_else(|| Error::InvalidWeb(format!("vertex {} has a repeated strand label", t.vertex)))?;
                *out.entry(tr).or_default() += if t.color == Color::White { 1 } else { -1 };
            }
            out.retain(|_, c| *c != 0);
            return Ok(out);
        }
        let std = self.standardize()?;
        let pi = if (0..self.n).all(|b| self.degree(b) > 0) {
            let inner = std.web.pb_expansion()?;
            let terms: Vec<(Triple, _)> = inner.iter().map(|(t, &c)| (*t, q(c))).collect();
            relabel_expand(&PlueckerVector::from_h_terms(std.web.n, &terms)?, &std.labels, self.n)?
        } else {
            // doubled labels from empty boundary vertices have no linear pullback
            self.dual_graph()?.pluecker()
        };
        support(&canonical_form(&pi))
            .into_iter()
            .map(|(t, c)| {
                if c.is_integer() {
                    Ok((t, c.to_integer()))
                } else {
                    Err(Error::NonIntegral(format!("coefficient of h{t}")))
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexSpec {
    pub color: Color,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
}

/// Web file: boundary then interior vertices; ids in `edges` count boundary first.
/// Rotations (edge ids) or integer `coords` give the embedding; `names` are optional.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WebFile {
    pub n: usize,
    pub boundary: Vec<VertexSpec>,
    #[serde(default)]
    pub interior: Vec<VertexSpec>,
    pub edges: Vec<[crate::io::VRef; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub names: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<[i64; 2]>>,
}

impl WebFile {
    pub fn build(&self) -> Result<Web> {
        if self.boundary.len() != self.n {
            return Err(Error::Parse(format!("{} boundary entries for n = {}", self.boundary.len(), self.n)));
        }
        let specs: Vec<&VertexSpec> = self.boundary.iter().chain(&self.interior).collect();
        let nv = specs.len();
        let resolve = |r: &crate::io::VRef| -> Result<usize> {
            match r {
                crate::io::VRef::Id(i) if *i < nv => Ok(*i),
                crate::io::VRef::Id(i) => Err(Error::Parse(format!("vertex {i} out of range"))),
                crate::io::VRef::Name(s) => self
                    .names
                    .iter()
                    .position(|x| x == s)
                    .ok_or_else(|| Error::Parse(format!("unknown vertex name {s:?}"))),
            }
        };
        let edges = self.edges.iter().map(|[a, b]| Ok([resolve(a)?, resolve(b)?])).collect::<Result<Vec<_>>>()?;
        let colors = specs.iter().map(|s| s.color).collect();
        let web = match &self.coords {
            Some(c) => Web::from_coords(self.n, colors, edges, &c.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>())?,
            None => {
                let rot = specs
                    .iter()
                    .enumerate()
                    .map(|(v, s)| s.rotation.clone().ok_or_else(|| Error::Parse(format!("vertex {v} lacks a rotation"))))
                    .collect::<Result<Vec<_>>>()?;
                Web::new(self.n, colors, edges, rot)?
            }
        };
        for (v, s) in specs.iter().enumerate() {
            if let Some(d) = s.degree {
                if d != web.degree(v) {
                    return Err(Error::Parse(format!("vertex {v} has degree {} but {d} was declared", web.degree(v))));
                }
            }
        }
        Ok(web)
    }

    pub fn from_web(w: &Web) -> Self {
        let spec = |v: usize| VertexSpec { color: w.color(v), rotation: Some(w.rotation(v).to_vec()), degree: None };
        WebFile {
            n: w.n(),
            boundary: (0..w.n()).map(spec).collect(),
            interior: (w.n()..w.num_vertices()).map(spec).collect(),
            edges: w.edges().iter().map(|&[a, b]| [crate::io::VRef::Id(a), crate::io::VRef::Id(b)]).collect(),
            names: Vec::new(),
            coords: None,
        }
    }
}

pub fn parse_web(text: &str) -> Result<Web> {
    let f: WebFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    f.build()
}
