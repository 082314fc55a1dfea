//! Labeled CAT(0) planar graphs and their directed distance geometry.

use std::collections::{BTreeSet, BinaryHeap, VecDeque};
use std::cmp::Reverse;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::PlanarMap;
use crate::pluecker::{check_tropical, PlueckerVector};
use crate::subsets::{all_subsets, Q};

/// A planar digraph with labels z_1..z_n and a frozen all-pairs directed distance table.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    map: PlanarMap,
    labels: Vec<usize>,
    k: usize,
    dist: Vec<u32>,
}

pub const UNREACHABLE: u32 = u32::MAX;

/// One violated CAT(0) condition with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    Disconnected { vertex: usize },
    EulerCharacteristic { value: i64 },
    MissingOuterFace,
    NonTriangularFace { face: usize, length: usize },
    UnorientedTriangle { face: usize },
    LowInteriorDegree { vertex: usize, degree: usize },
    Shortcut { tail: usize, head: usize, back_distance: u32 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Cat0Report {
    pub violations: Vec<Violation>,
}

impl Cat0Report {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn all_pairs(map: &PlanarMap, k: usize) -> Vec<u32> {
    let nv = map.num_vertices();
    let back = (k as u32).saturating_sub(1).max(1);
    let mut dist = vec![UNREACHABLE; nv * nv];
    for src in 0..nv {
        let row = &mut dist[src * nv..(src + 1) * nv];
        row[src] = 0;
        let mut heap = BinaryHeap::from([Reverse((0u32, src))]);
        while let Some(Reverse((d, v))) = heap.pop() {
            if d > row[v] {
                continue;
            }
            for &dart in map.rotation(v) {
                let w = map.target(dart);
                let nd = d + if map.is_forward(dart) { 1 } else { back };
                if nd < row[w] {
                    row[w] = nd;
                    heap.push(Reverse((nd, w)));
                }
            }
        }
    }
    dist
}

/// Check the defining conditions of a CAT(0) planar graph (for k = 3).
pub fn validate_cat0(map: &PlanarMap) -> Cat0Report {
    let mut violations = Vec::new();
    let nv = map.num_vertices();
    if nv == 0 {
        return Cat0Report { violations: vec![Violation::Empty] };
    }
    if !map.is_connected() {
        let dist = all_pairs(map, 3);
        let v = (0..nv).find(|&v| dist[v] == UNREACHABLE).unwrap_or(0);
        violations.push(Violation::Disconnected { vertex: v });
        return Cat0Report { violations };
    }
    let euler = nv as i64 - map.num_edges() as i64 + map.faces().len() as i64;
    if map.num_edges() > 0 && euler != 2 {
        violations.push(Violation::EulerCharacteristic { value: euler });
    }
    if map.num_edges() > 0 && map.outer_face().is_none() {
        violations.push(Violation::MissingOuterFace);
    }
    for (f, walk) in map.faces().iter().enumerate() {
        if Some(f) == map.outer_face() {
            continue;
        }
        if walk.len() != 3 {
            violations.push(Violation::NonTriangularFace { face: f, length: walk.len() });
        } else if !(walk.iter().all(|&d| map.is_forward(d)) || walk.iter().all(|&d| !map.is_forward(d))) {
            violations.push(Violation::UnorientedTriangle { face: f });
        }
    }
    let boundary = map.on_boundary();
    for v in 0..nv {
        if !boundary[v] && map.degree(v) < 6 {
            violations.push(Violation::LowInteriorDegree { vertex: v, degree: map.degree(v) });
        }
    }
    let dist = all_pairs(map, 3);
    for &[t, h] in map.edges() {
        let back = dist[h * nv + t];
        if back != 2 {
            violations.push(Violation::Shortcut { tail: t, head: h, back_distance: back });
        }
    }
    Cat0Report { violations }
}

/// A neighbor of v in the augmented cyclic order used by F-sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Neighbor {
    Vertex(usize),
    /// Fake incoming neighbor beside boundary dart `dart`, on its ccw side when `after`.
    Virtual { dart: usize, after: bool },
    /// Auxiliary element padding F(v) to size three.
    Padding(u8),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FSet {
    /// F(v) itself (v = z).
    Fan(Vec<Neighbor>),
    /// The two neighbors flanking an outgoing minimizing edge.
    Pair(Neighbor, Neighbor),
    /// An incoming minimizing neighbor.
    Single(usize),
}

impl FSet {
    pub fn members(&self) -> Vec<Neighbor> {
        match self {
            FSet::Fan(v) => v.clone(),
            FSet::Pair(a, b) => vec![*a, *b],
            FSet::Single(x) => vec![Neighbor::Vertex(*x)],
        }
    }

    pub fn len(&self) -> usize {
        self.members().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Flags derived from the boundary structure of a labeled graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub simple: bool,
    pub ccw_boundary: bool,
    pub ccw_labeled: bool,
    pub normal: bool,
    pub cyclic_less: bool,
    pub acute: Vec<usize>,
    pub cut_vertices: Vec<usize>,
    pub cut_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScaffoldReport {
    pub weak: bool,
    pub strong: bool,
    pub loopless: bool,
    pub injective: bool,
}

impl LabeledGraph {
    pub fn new(map: PlanarMap, labels: Vec<usize>) -> Result<Self> {
        Self::with_k(map, labels, 3)
    }

    pub fn with_k(map: PlanarMap, labels: Vec<usize>, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidGraph("k must be at least 2".into()));
        }
        if let Some(&z) = labels.iter().find(|&&z| z >= map.num_vertices()) {
            return Err(Error::InvalidGraph(format!("label points to missing vertex {z}")));
        }
        if !map.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        let dist = all_pairs(&map, k);
        Ok(LabeledGraph { map, labels, k, dist })
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Label z_i for 1-based i.
    pub fn z(&self, i: usize) -> usize {
        self.labels[i - 1]
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_vertices(&self) -> usize {
        self.map.num_vertices()
    }

    pub fn delta(&self, v: usize, w: usize) -> u32 {
        self.dist[v * self.num_vertices() + w]
    }

    /// Undirected edge count of a shortest path.
    pub fn comb_distance(&self, v: usize, w: usize) -> usize {
        self.comb_distances_from(v)[w]
    }

    pub fn comb_distances_from(&self, v: usize) -> Vec<usize> {
        let mut d = vec![usize::MAX; self.num_vertices()];
        d[v] = 0;
        let mut q = VecDeque::from([v]);
        while let Some(x) = q.pop_front() {
            for y in self.map.neighbors(x) {
                if d[y] == usize::MAX {
                    d[y] = d[x] + 1;
                    q.push_back(y);
                }
            }
        }
        d
    }

    /// The coloring with c(anchor) = 0 and c(head) = c(tail) + 1 mod k.
    pub fn coloring(&self, anchor: usize) -> Result<Vec<usize>> {
        let k = self.k;
        let nv = self.num_vertices();
        let mut c = vec![usize::MAX; nv];
        c[anchor] = 0;
        let mut q = VecDeque::from([anchor]);
        while let Some(v) = q.pop_front() {
            for &d in self.map.rotation(v) {
                let w = self.map.target(d);
                let want = if self.map.is_forward(d) { (c[v] + 1) % k } else { (c[v] + k - 1) % k };
                if c[w] == usize::MAX {
                    c[w] = want;
                    q.push_back(w);
                } else if c[w] != want {
                    return Err(Error::Invariant(format!("no consistent coloring along edge {}", d / 2)));
                }
            }
        }
        Ok(c)
    }

    /// Coloring anchored at z_1, or at vertex 0 when there are no labels.
    pub fn default_coloring(&self) -> Result<Vec<usize>> {
        self.coloring(self.labels.first().copied().unwrap_or(0))
    }

    /// Distance sum from x to the labels indexed by `idx` (1-based, repeats allowed).
    pub fn distance_sum(&self, x: usize, idx: &[usize]) -> u32 {
        idx.iter().map(|&i| self.delta(x, self.z(i))).sum()
    }

    /// Fermat-Le sum and the set of its minimizers.
    pub fn fermat_le(&self, idx: &[usize]) -> (u32, Vec<usize>) {
        let sums: Vec<u32> = (0..self.num_vertices()).map(|x| self.distance_sum(x, idx)).collect();
        let best = *sums.iter().min().expect("nonempty graph");
        let arg = (0..sums.len()).filter(|&x| sums[x] == best).collect();
        (best, arg)
    }

    pub fn pluecker(&self) -> PlueckerVector {
        let k = self.k as i64;
        PlueckerVector::from_fn(self.n(), self.k, |s| Q::new(-(self.fermat_le(s).0 as i64), k))
    }

    /// pi shifted by c(z)/k; integral by construction, which is asserted.
    pub fn modified_pluecker(&self) -> Result<PlueckerVector> {
        let c = self.default_coloring()?;
        let k = self.k as i64;
        let mut bad = None;
        let p = PlueckerVector::from_fn(self.n(), self.k, |s| {
            let shift: i64 = s.iter().map(|&i| c[self.z(i)] as i64).sum();
            let v = Q::new(shift - self.fermat_le(s).0 as i64, k);
            if !v.is_integer() {
                bad = Some(format!("{s:?}"));
            }
            v
        });
        match bad {
            Some(s) => Err(Error::NonIntegral(s)),
            None => Ok(p),
        }
    }

    /// Barycenter lift mu(v) = (delta(v, z_i) + c(v) - c(z_i)) / k, normalized to minimum zero.
    pub fn mu(&self, v: usize) -> Result<Vec<i64>> {
        let c = self.default_coloring()?;
        let k = self.k as i64;
        let raw: Vec<i64> = (1..=self.n())
            .map(|i| {
                let num = self.delta(v, self.z(i)) as i64 + c[v] as i64 - c[self.z(i)] as i64;
                if num.rem_euclid(k) != 0 {
                    return Err(Error::Invariant(format!("delta({v}, z_{i}) has the wrong residue")));
                }
                Ok(num / k)
            })
            .collect::<Result<_>>()?;
        let m = raw.iter().copied().min().unwrap_or(0);
        Ok(raw.into_iter().map(|x| x - m).collect())
    }

    /// The unique neighbor of v closest to z.
    pub fn min_neighbor(&self, v: usize, z: usize) -> Result<usize> {
        if v == z {
            return Err(Error::Invariant("min_neighbor needs v != z".into()));
        }
        let best = self.map.neighbors(v).map(|u| self.delta(u, z)).min();
        let Some(best) = best else {
            return Err(Error::Invariant(format!("vertex {v} is isolated")));
        };
        let mut it = self.map.neighbors(v).filter(|&u| self.delta(u, z) == best);
        let u = it.next().expect("minimum is attained");
        if it.any(|w| w != u) {
            return Err(Error::Invariant(format!("minimizing neighbor of {v} toward {z} is not unique")));
        }
        Ok(u)
    }

    /// Neighbors of v in ccw order with fake incoming neighbors beside outgoing boundary darts.
    /// Each entry is (neighbor, dart from v if real, incoming).
    fn augmented_rotation(&self, v: usize) -> Vec<(Neighbor, Option<usize>, bool)> {
        let m = &self.map;
        let rot = m.rotation(v);
        let mut out = Vec::new();
        for (i, &d) in rot.iter().enumerate() {
            let next = rot[(i + 1) % rot.len()];
            out.push((Neighbor::Vertex(m.target(d)), Some(d), !m.is_forward(d)));
            if m.is_outer(d) {
                if m.is_forward(d) {
                    out.push((Neighbor::Virtual { dart: d, after: true }, None, true));
                }
                if m.is_forward(next) {
                    out.push((Neighbor::Virtual { dart: next, after: false }, None, true));
                }
            }
        }
        out
    }

    /// F(v): incoming neighbors plus fakes, padded to three elements.
    pub fn fan(&self, v: usize) -> Vec<Neighbor> {
        let mut f: Vec<Neighbor> =
            self.augmented_rotation(v).into_iter().filter(|x| x.2).map(|x| x.0).collect();
        let mut p = 0;
        while f.len() < 3 {
            f.push(Neighbor::Padding(p));
            p += 1;
        }
        f.sort();
        f
    }

    pub fn f_set(&self, v: usize, z: usize) -> Result<FSet> {
        if v == z {
            return Ok(FSet::Fan(self.fan(v)));
        }
        let f = self.min_neighbor(v, z)?;
        let dart = self.map.dart_between(v, f).expect("neighbor");
        if !self.map.is_forward(dart) {
            return Ok(FSet::Single(f));
        }
        let aug = self.augmented_rotation(v);
        let p = aug.iter().position(|x| x.1 == Some(dart)).expect("dart in rotation");
        let a = aug[(p + aug.len() - 1) % aug.len()].0;
        let b = aug[(p + 1) % aug.len()].0;
        Ok(FSet::Pair(a.min(b), a.max(b)))
    }

    fn same_fset(a: &FSet, b: &FSet) -> bool {
        let mut x = a.members();
        let mut y = b.members();
        x.sort();
        y.sort();
        x == y
    }

    /// z and z' are parallel at v.
    pub fn is_parallel(&self, v: usize, z: usize, z2: usize) -> Result<bool> {
        let (fa, fb) = (self.f_set(v, z)?, self.f_set(v, z2)?);
        if !Self::same_fset(&fa, &fb) {
            return Ok(false);
        }
        if z == z2 && z != v {
            return Ok(true);
        }
        match fa.len() {
            1 => Ok(true),
            2 => {
                let (f1, f2) = (self.min_neighbor(v, z)?, self.min_neighbor(v, z2)?);
                if f1 == f2 {
                    self.is_parallel(f1, z, z2)
                } else {
                    Ok(false)
                }
            }
            _ => Ok(false),
        }
    }

    /// Focal point test for labels indexed by a triple of 1-based indices.
    pub fn is_focal(&self, v: usize, idx: [usize; 3]) -> Result<bool> {
        let zs = idx.map(|i| self.z(i));
        let sets: Vec<Vec<Neighbor>> =
            zs.iter().map(|&z| self.f_set(v, z).map(|f| f.members())).collect::<Result<_>>()?;
        let sdr = sets[0].iter().any(|a| {
            sets[1].iter().any(|b| b != a && sets[2].iter().any(|c| c != a && c != b))
        });
        if !sdr {
            return Ok(false);
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if self.is_parallel(v, zs[i], zs[j])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn focal_points(&self, idx: [usize; 3]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for v in 0..self.num_vertices() {
            if self.is_focal(v, idx)? {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Triples I for which v minimizes the distance sum.
    pub fn matroid_mv(&self, v: usize) -> BTreeSet<Vec<usize>> {
        all_subsets(self.n(), self.k)
            .into_iter()
            .filter(|s| {
                let d = self.distance_sum(v, s);
                (0..self.num_vertices()).all(|x| self.distance_sum(x, s) >= d)
            })
            .collect()
    }

    pub fn scaffold_check(&self) -> Result<ScaffoldReport> {
        let n = self.n();
        let colorable = self.default_coloring().is_ok();
        let tropical = if n >= self.k + 2 { check_tropical(&self.pluecker())? } else { true };
        let weak = colorable && tropical;
        let loopless = (0..self.num_vertices()).all(|v| {
            let m = self.matroid_mv(v);
            (1..=n).all(|i| m.iter().any(|s| s.contains(&i)))
        });
        let injective = if colorable {
            let mus: BTreeSet<Vec<i64>> = (0..self.num_vertices()).map(|v| self.mu(v)).collect::<Result<_>>()?;
            mus.len() == self.num_vertices()
        } else {
            false
        };
        Ok(ScaffoldReport { weak, strong: weak && loopless && injective, loopless, injective })
    }

    /// A start index into the ccw boundary walk and weakly increasing offsets from it
    /// at which z_1..z_n are met, if the labels are in ccw order.
    pub fn ccw_offsets(&self) -> Option<(usize, Vec<usize>)> {
        let walk = self.map.ccw_boundary();
        let m = walk.len();
        if self.labels.is_empty() {
            return Some((0, Vec::new()));
        }
        for start in (0..m).filter(|&p| walk[p] == self.labels[0]) {
            let mut offs = vec![0];
            let mut off = 0;
            let mut ok = true;
            for &z in &self.labels[1..] {
                match (off..=m).find(|&o| walk[(start + o) % m] == z) {
                    Some(o) => {
                        off = o;
                        offs.push(o);
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Some((start, offs));
            }
        }
        None
    }

    pub fn is_ccw_labeled(&self) -> bool {
        self.ccw_offsets().is_some()
    }

    pub fn classify(&self) -> Result<Classification> {
        let m = &self.map;
        let nv = self.num_vertices();
        let walk = m.ccw_boundary();
        let darts = m.ccw_boundary_darts();
        let single = nv == 1 && m.num_edges() == 0;
        let ccw_boundary = single || darts.iter().all(|&d| m.is_forward(d));
        let mut visits = vec![0usize; nv];
        for &v in &walk {
            visits[v] += 1;
        }
        let cut_vertices: Vec<usize> = (0..nv).filter(|&v| visits[v] > 1).collect();
        let simple = ccw_boundary && cut_vertices.is_empty();
        let cut_edges: Vec<usize> = (0..m.num_edges()).filter(|&e| m.is_outer(2 * e) && m.is_outer(2 * e + 1)).collect();
        let acute: Vec<usize> = (0..nv)
            .filter(|&v| {
                visits[v] > 0
                    && m.degree(v) == 2
                    && m.rotation(v).iter().filter(|&&d| !m.is_outer(d)).count() == 1
            })
            .collect();
        let ccw_labeled = self.is_ccw_labeled();
        let labeled: BTreeSet<usize> = self.labels.iter().copied().collect();
        let normal = single || (ccw_labeled && ccw_boundary && acute.iter().all(|v| labeled.contains(v)));
        if simple && !single {
            let curvature: i64 = walk.iter().map(|&v| (4 - m.degree(v) as i64).max(0)).sum();
            if curvature < 6 {
                return Err(Error::Invariant(format!("boundary curvature {curvature} < 6 on a simple graph")));
            }
        }
        let cyclic_less = !(normal && self.has_cyclic_pair(&walk, &acute, &visits));
        Ok(Classification { simple, ccw_boundary, ccw_labeled, normal, cyclic_less, acute, cut_vertices, cut_edges })
    }

    /// Consecutive labels on distinct acute vertices, each carrying only its own label,
    /// joined by a ccw boundary path through degree-four vertices. A cut vertex of degree
    /// four joins two separate blocks and does not count.
    fn has_cyclic_pair(&self, walk: &[usize], acute: &[usize], visits: &[usize]) -> bool {
        let n = self.n();
        if n < 2 || walk.len() < 2 {
            return false;
        }
        let count = |v: usize| self.labels.iter().filter(|&&z| z == v).count();
        for i in 1..=n {
            let j = i % n + 1;
            let (a, b) = (self.z(i), self.z(j));
            if a == b || !acute.contains(&a) || !acute.contains(&b) || count(a) != 1 || count(b) != 1 {
                continue;
            }
            let m = walk.len();
            let p = walk.iter().position(|&v| v == a).expect("acute vertex on boundary");
            let mut ok = true;
            let mut o = 1;
            while walk[(p + o) % m] != b {
                let w = walk[(p + o) % m];
                if self.map.degree(w) != 4 || visits[w] != 1 {
                    ok = false;
                    break;
                }
                o += 1;
                if o > m {
                    ok = false;
                    break;
                }
            }
            if ok {
                return true;
            }
        }
        false
    }
}

/// Wedge two labeled graphs on [n] at v1 in g1 and v2 in g2. Labels in the cyclic interval
/// [r, s] carried by v2 come from g1; the others come from g2.
pub fn sum_graphs(g1: &LabeledGraph, v1: usize, g2: &LabeledGraph, v2: usize) -> Result<LabeledGraph> {
    let n = g1.n();
    if g2.n() != n || g1.k != g2.k {
        return Err(Error::InvalidGraph("summands must share n and k".into()));
    }
    let on_v1: Vec<bool> = (1..=n).map(|i| g1.z(i) == v1).collect();
    let on_v2: Vec<bool> = (1..=n).map(|i| g2.z(i) == v2).collect();
    if !(0..n).all(|i| on_v1[i] || on_v2[i]) || on_v1.iter().all(|&b| b) || on_v2.iter().all(|&b| b) {
        return Err(Error::InvalidGraph("label intervals must be proper and cover [n]".into()));
    }
    for on in [&on_v1, &on_v2] {
        let runs = (0..n).filter(|&i| on[i] && !on[(i + n - 1) % n]).count();
        if runs != 1 {
            return Err(Error::InvalidGraph("labels at a wedge vertex must form a cyclic interval".into()));
        }
    }
    let (m1, m2) = (g1.map(), g2.map());
    let off = m1.num_vertices();
    let remap = |v: usize| if v == v2 { v1 } else if v < v2 { off + v } else { off + v - 1 };
    let mut edges = m1.edges().to_vec();
    let e_off = edges.len();
    edges.extend(m2.edges().iter().map(|&[t, h]| [remap(t), remap(h)]));
    let mut rot: Vec<Vec<usize>> = (0..m1.num_vertices()).map(|v| m1.rotation(v).iter().map(|d| d / 2).collect()).collect();
    for v in 0..m2.num_vertices() {
        if v != v2 {
            rot.push(m2.rotation(v).iter().map(|d| d / 2 + e_off).collect());
        }
    }
    // splice the fan of v2 into an outer sector of v1
    let fan2 = rotate_to_outer(m2, v2).into_iter().map(|d| d / 2 + e_off);
    let fan1 = rotate_to_outer(m1, v1).into_iter().map(|d| d / 2);
    rot[v1] = fan1.chain(fan2).collect();
    let outer = match m1.outer_walk().first() {
        Some(&d) => Some((m1.origin(d), m1.target(d))),
        None => m2.outer_walk().first().map(|&d| (remap(m2.origin(d)), remap(m2.target(d)))),
    };
    let map = PlanarMap::from_rotations(off + m2.num_vertices() - 1, edges, &rot, outer)?;
    let labels = (1..=n)
        .map(|i| if on_v2[i - 1] { g1.z(i) } else { remap(g2.z(i)) })
        .collect();
    LabeledGraph::with_k(map, labels, g1.k)
}

/// Rotation at v starting just after an outer sector, so an outer gap sits at the end.
fn rotate_to_outer(m: &PlanarMap, v: usize) -> Vec<usize> {
    let rot = m.rotation(v);
    match rot.iter().position(|&d| m.is_outer(d)) {
        Some(p) => rot[p + 1..].iter().chain(&rot[..=p]).copied().collect(),
        None => rot.to_vec(),
    }
}
