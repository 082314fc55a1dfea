//! Random CAT(0) planar graphs grown by local moves on the outer face.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cat0::{validate_cat0, LabeledGraph};
use crate::map::PlanarMap;

#[derive(Clone)]
struct Draft {
    nv: usize,
    edges: Vec<[usize; 2]>,
    rot: Vec<Vec<usize>>,
    outer: (usize, usize),
}

impl Draft {
    fn from_map(m: &PlanarMap) -> Self {
        let d = m.outer_walk()[0];
        Draft {
            nv: m.num_vertices(),
            edges: m.edges().to_vec(),
            rot: (0..m.num_vertices()).map(|v| m.rotation(v).iter().map(|d| d / 2).collect()).collect(),
            outer: (m.origin(d), m.target(d)),
        }
    }

    fn build(&self) -> Option<PlanarMap> {
        PlanarMap::from_rotations(self.nv, self.edges.clone(), &self.rot, Some(self.outer)).ok()
    }

    fn vertex(&mut self) -> usize {
        self.rot.push(Vec::new());
        self.nv += 1;
        self.nv - 1
    }

    fn edge(&mut self, t: usize, h: usize) -> usize {
        self.edges.push([t, h]);
        self.edges.len() - 1
    }

    /// Insert edge id `e` into the rotation of `v` right after edge `after` (or before it).
    fn insert(&mut self, v: usize, anchor: usize, e: usize, after: bool) {
        let p = self.rot[v].iter().position(|&x| x == anchor).expect("anchor at vertex");
        self.rot[v].insert(if after { p + 1 } else { p }, e);
    }
}

/// Grow a CAT(0) planar graph with at most `max_vertices` vertices from one triangle.
pub fn random_cat0<R: Rng>(rng: &mut R, max_vertices: usize) -> PlanarMap {
    let seed = if rng.gen_bool(0.5) { [[0, 1], [1, 2], [2, 0]] } else { [[1, 0], [2, 1], [0, 2]] };
    let mut map = PlanarMap::from_coords(seed.to_vec(), &[(0, 0), (2, 0), (1, 1)]).expect("triangle");
    let target = rng.gen_range(3..=max_vertices.max(3));
    let mut attempts = 0;
    while map.num_vertices() < target && attempts < 400 {
        attempts += 1;
        if let Some(next) = step(rng, &map) {
            if validate_cat0(&next).is_valid() {
                map = next;
            }
        }
    }
    map
}

fn step<R: Rng>(rng: &mut R, m: &PlanarMap) -> Option<PlanarMap> {
    let outer: Vec<usize> = m.outer_walk().to_vec();
    let d = *outer.choose(rng)?;
    let mut g = Draft::from_map(m);
    let (u, w, e) = (m.origin(d), m.target(d), d / 2);
    match rng.gen_range(0..10) {
        // triangle on an outer edge
        0..=3 => {
            let x = g.vertex();
            let (ux, wx) = if m.is_forward(d) {
                (g.edge(x, u), g.edge(w, x))
            } else {
                (g.edge(u, x), g.edge(x, w))
            };
            g.insert(u, e, ux, true);
            g.insert(w, e, wx, false);
            g.rot[x] = vec![wx, ux];
            g.outer = (u, x);
        }
        // close the outer angle at u between d and its ccw successor
        4..=7 => {
            let r2 = m.ccw_next(d);
            let (a, c) = (w, m.target(r2));
            if a == c || m.dart_between(a, c).is_some() || m.is_forward(d) == m.is_forward(r2) {
                return None;
            }
            let gaps = m.rotation(u).iter().filter(|&&x| m.is_outer(x)).count();
            if gaps == 1 && m.degree(u) < 6 {
                return None;
            }
            let ac = if m.is_forward(d) { g.edge(a, c) } else { g.edge(c, a) };
            g.insert(a, e, ac, false);
            g.insert(c, r2 / 2, ac, true);
            g.outer = (c, a);
        }
        // pendant edge in the outer sector after d
        8 => {
            let x = g.vertex();
            let ux = if rng.gen_bool(0.5) { g.edge(u, x) } else { g.edge(x, u) };
            g.insert(u, e, ux, true);
            g.rot[x] = vec![ux];
            g.outer = (u, x);
        }
        // triangle hanging from u in the outer sector after d
        _ => {
            let (x, y) = (g.vertex(), g.vertex());
            let (ux, xy, yu) = if rng.gen_bool(0.5) {
                (g.edge(u, x), g.edge(x, y), g.edge(y, u))
            } else {
                (g.edge(x, u), g.edge(y, x), g.edge(u, y))
            };
            g.insert(u, e, ux, true);
            g.insert(u, ux, yu, true);
            g.rot[x] = vec![ux, xy];
            g.rot[y] = vec![xy, yu];
            g.outer = (u, y);
        }
    }
    g.build()
}

/// Labels on boundary vertices read in ccw order from a random start.
pub fn ccw_labels<R: Rng>(rng: &mut R, m: &PlanarMap, n: usize) -> Vec<usize> {
    let walk = m.ccw_boundary();
    let len = walk.len();
    let start = rng.gen_range(0..len);
    let mut offsets: Vec<usize> = (0..n).map(|_| rng.gen_range(0..len)).collect();
    offsets.sort_unstable();
    offsets.into_iter().map(|o| walk[(start + o) % len]).collect()
}

/// Labels on arbitrary vertices.
pub fn any_labels<R: Rng>(rng: &mut R, m: &PlanarMap, n: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..m.num_vertices())).collect()
}

pub fn random_labeled<R: Rng>(rng: &mut R, max_vertices: usize, n: usize, ccw: bool) -> LabeledGraph {
    let m = random_cat0(rng, max_vertices);
    let labels = if ccw { ccw_labels(rng, &m, n) } else { any_labels(rng, &m, n) };
    LabeledGraph::new(m, labels).expect("generated graph is connected")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_graphs_are_valid_and_varied() {
        let mut rng = StdRng::seed_from_u64(7);
        let mut interior = 0;
        let mut non_simple = 0;
        for _ in 0..60 {
            let g = random_labeled(&mut rng, 20, 6, true);
            assert!(validate_cat0(g.map()).is_valid());
            assert!(g.is_ccw_labeled());
            let b = g.map().on_boundary();
            interior += b.iter().filter(|&&x| !x).count();
            non_simple += usize::from(!g.classify().unwrap().simple);
        }
        assert!(interior > 0 && non_simple > 0, "interior {interior}, non-simple {non_simple}");
    }
}
