//! Rotation-system planar maps.
//!
//! Edge `e` owns darts `2e` (tail to head) and `2e + 1` (head to tail). Each vertex
//! stores its darts in counterclockwise order. Faces are traced keeping the face on
//! the left, so bounded faces come out counterclockwise and the outer face clockwise.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarMap {
    nv: usize,
    edges: Vec<[usize; 2]>,
    rot: Vec<Vec<usize>>,
    pos: Vec<usize>,
    face_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
    outer_face: Option<usize>,
}

/// Exact counterclockwise angle comparison of integer direction vectors.
fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    let half = |(x, y): (i64, i64)| if y > 0 || (y == 0 && x > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&cross)
    })
}

impl PlanarMap {
    /// Build from per-vertex counterclockwise lists of incident edge ids.
    /// `outer` optionally names a dart (as `(from, to)`) with the outer face on its left.
    pub fn from_rotations(
        nv: usize,
        edges: Vec<[usize; 2]>,
        rotations: &[Vec<usize>],
        outer: Option<(usize, usize)>,
    ) -> Result<Self> {
        if rotations.len() != nv {
            return Err(Error::InvalidGraph(format!("{} rotation lists for {nv} vertices", rotations.len())));
        }
        for (e, &[t, h]) in edges.iter().enumerate() {
            if t >= nv || h >= nv {
                return Err(Error::InvalidGraph(format!("edge {e} has an endpoint out of range")));
            }
            if t == h {
                return Err(Error::InvalidGraph(format!("edge {e} is a loop")));
            }
        }
        let mut rot = Vec::with_capacity(nv);
        for (v, list) in rotations.iter().enumerate() {
            let mut darts = Vec::with_capacity(list.len());
            for &e in list {
                let [t, h] = *edges
                    .get(e)
                    .ok_or_else(|| Error::InvalidGraph(format!("vertex {v} lists unknown edge {e}")))?;
                darts.push(if t == v {
                    2 * e
                } else if h == v {
                    2 * e + 1
                } else {
                    return Err(Error::InvalidGraph(format!("vertex {v} lists edge {e} not incident to it")));
                });
            }
            rot.push(darts);
        }
        let outer_dart = match outer {
            Some((a, b)) => Some(
                rot[a]
                    .iter()
                    .copied()
                    .find(|&d| {
                        let [t, h] = edges[d / 2];
                        (if d % 2 == 0 { h } else { t }) == b
                    })
                    .ok_or_else(|| Error::InvalidGraph(format!("outer dart {a}->{b} is not an edge")))?,
            ),
            None => None,
        };
        Self::from_darts(nv, edges, rot, outer_dart)
    }

    /// Build from per-vertex ccw dart lists; `outer` is a dart with the outer face on its left.
    pub fn from_darts(nv: usize, edges: Vec<[usize; 2]>, rot: Vec<Vec<usize>>, outer: Option<usize>) -> Result<Self> {
        if rot.len() != nv {
            return Err(Error::InvalidGraph(format!("{} rotation lists for {nv} vertices", rot.len())));
        }
        for (e, &[t, h]) in edges.iter().enumerate() {
            if t >= nv || h >= nv {
                return Err(Error::InvalidGraph(format!("edge {e} has an endpoint out of range")));
            }
            if t == h {
                return Err(Error::InvalidGraph(format!("edge {e} is a loop")));
            }
        }
        let mut seen = vec![0u8; 2 * edges.len()];
        for (v, list) in rot.iter().enumerate() {
            for &d in list {
                let [t, h] = *edges
                    .get(d / 2)
                    .ok_or_else(|| Error::InvalidGraph(format!("vertex {v} lists unknown dart {d}")))?;
                if (if d % 2 == 0 { t } else { h }) != v {
                    return Err(Error::InvalidGraph(format!("dart {d} does not leave vertex {v}")));
                }
                seen[d] += 1;
            }
        }
        if let Some(d) = seen.iter().position(|&c| c != 1) {
            return Err(Error::InvalidGraph(format!(
                "edge {} must appear exactly once at each endpoint",
                d / 2
            )));
        }
        let mut map = Self::assemble(nv, edges, rot);
        map.outer_face = match outer {
            Some(d) if d < map.num_darts() => Some(map.face_of[d]),
            Some(d) => return Err(Error::InvalidGraph(format!("outer dart {d} does not exist"))),
            None => map.guess_outer()?,
        };
        Ok(map)
    }

    /// Build from integer coordinates of a straight-line embedding.
    pub fn from_coords(edges: Vec<[usize; 2]>, coords: &[(i64, i64)]) -> Result<Self> {
        let nv = coords.len();
        for (e, &[t, h]) in edges.iter().enumerate() {
            if t >= nv || h >= nv || t == h {
                return Err(Error::InvalidGraph(format!("edge {e} is malformed")));
            }
            if coords[t] == coords[h] {
                return Err(Error::InvalidGraph(format!("edge {e} has coincident endpoints")));
            }
        }
        let mut rot: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (e, &[t, h]) in edges.iter().enumerate() {
            rot[t].push(2 * e);
            rot[h].push(2 * e + 1);
        }
        let dir = |d: usize| {
            let [t, h] = edges[d / 2];
            let (a, b) = if d % 2 == 0 { (t, h) } else { (h, t) };
            (coords[b].0 - coords[a].0, coords[b].1 - coords[a].1)
        };
        for (v, list) in rot.iter_mut().enumerate() {
            list.sort_by(|&x, &y| angle_cmp(dir(x), dir(y)));
            for w in list.windows(2) {
                if angle_cmp(dir(w[0]), dir(w[1])) == Ordering::Equal {
                    return Err(Error::InvalidGraph(format!("overlapping edges at vertex {v}")));
                }
            }
        }
        let mut map = Self::assemble(nv, edges, rot);
        let area = |f: &Vec<usize>| -> i128 {
            f.iter()
                .map(|&d| {
                    let (a, b) = (map.origin(d), map.target(d));
                    coords[a].0 as i128 * coords[b].1 as i128 - coords[b].0 as i128 * coords[a].1 as i128
                })
                .sum()
        };
        map.outer_face = if map.faces.is_empty() {
            None
        } else if map.faces.len() == 1 {
            Some(0)
        } else {
            let negative: Vec<usize> = (0..map.faces.len()).filter(|&f| area(&map.faces[f]) < 0).collect();
            match negative.as_slice() {
                [f] => Some(*f),
                _ => return Err(Error::InvalidGraph("embedding is not planar or not connected".into())),
            }
        };
        Ok(map)
    }

    fn assemble(nv: usize, edges: Vec<[usize; 2]>, rot: Vec<Vec<usize>>) -> Self {
        let nd = 2 * edges.len();
        let mut pos = vec![0; nd];
        for list in &rot {
            for (i, &d) in list.iter().enumerate() {
                pos[d] = i;
            }
        }
        let mut map = PlanarMap { nv, edges, rot, pos, face_of: vec![usize::MAX; nd], faces: Vec::new(), outer_face: None };
        for start in 0..nd {
            if map.face_of[start] != usize::MAX {
                continue;
            }
            let id = map.faces.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                map.face_of[d] = id;
                walk.push(d);
                d = map.face_next(d);
                if d == start {
                    break;
                }
            }
            map.faces.push(walk);
        }
        map
    }

    fn guess_outer(&self) -> Result<Option<usize>> {
        if self.faces.is_empty() {
            return Ok(None);
        }
        if self.faces.len() == 1 {
            return Ok(Some(0));
        }
        let big: Vec<usize> = (0..self.faces.len()).filter(|&f| self.faces[f].len() != 3).collect();
        match big.as_slice() {
            [f] => Ok(Some(*f)),
            [] => Err(Error::InvalidGraph("outer face is ambiguous; give an outer dart".into())),
            _ => Err(Error::InvalidGraph("more than one non-triangular face".into())),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.nv
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_darts(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn origin(&self, d: usize) -> usize {
        let [t, h] = self.edges[d / 2];
        if d % 2 == 0 {
            t
        } else {
            h
        }
    }

    pub fn target(&self, d: usize) -> usize {
        self.origin(d ^ 1)
    }

    /// Whether the dart runs along its edge's orientation.
    pub fn is_forward(&self, d: usize) -> bool {
        d % 2 == 0
    }

    pub fn twin(&self, d: usize) -> usize {
        d ^ 1
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn ccw_next(&self, d: usize) -> usize {
        let list = &self.rot[self.origin(d)];
        list[(self.pos[d] + 1) % list.len()]
    }

    pub fn cw_next(&self, d: usize) -> usize {
        let list = &self.rot[self.origin(d)];
        list[(self.pos[d] + list.len() - 1) % list.len()]
    }

    /// Next dart along the face on the left of `d`.
    pub fn face_next(&self, d: usize) -> usize {
        self.cw_next(d ^ 1)
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    pub fn outer_face(&self) -> Option<usize> {
        self.outer_face
    }

    pub fn is_outer(&self, d: usize) -> bool {
        Some(self.face_of[d]) == self.outer_face
    }

    /// Darts of the outer face, in face order (clockwise around the graph).
    pub fn outer_walk(&self) -> &[usize] {
        match self.outer_face {
            Some(f) => &self.faces[f],
            None => &[],
        }
    }

    pub fn dart_between(&self, a: usize, b: usize) -> Option<usize> {
        self.rot.get(a)?.iter().copied().find(|&d| self.target(d) == b)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rot[v].iter().map(move |&d| self.target(d))
    }

    pub fn is_connected(&self) -> bool {
        if self.nv == 0 {
            return false;
        }
        let mut seen = vec![false; self.nv];
        seen[0] = true;
        let mut q = VecDeque::from([0]);
        let mut count = 1;
        while let Some(v) = q.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    q.push_back(w);
                }
            }
        }
        count == self.nv
    }

    /// Vertices on the boundary curve, traversed counterclockwise, one entry per visit.
    pub fn ccw_boundary(&self) -> Vec<usize> {
        if self.nv == 1 && self.edges.is_empty() {
            return vec![0];
        }
        self.outer_walk().iter().rev().map(|&d| self.target(d)).collect()
    }

    /// Darts of the counterclockwise boundary walk; entry i leaves `ccw_boundary()[i]`.
    pub fn ccw_boundary_darts(&self) -> Vec<usize> {
        self.outer_walk().iter().rev().map(|&d| d ^ 1).collect()
    }

    pub fn on_boundary(&self) -> Vec<bool> {
        let mut b = vec![false; self.nv];
        for v in self.ccw_boundary() {
            b[v] = true;
        }
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> PlanarMap {
        PlanarMap::from_coords(vec![[0, 1], [1, 2], [2, 0]], &[(0, 0), (2, 0), (1, 1)]).unwrap()
    }

    #[test]
    fn triangle_faces() {
        let m = triangle();
        assert_eq!(m.faces().len(), 2);
        let inner = 1 - m.outer_face().unwrap();
        assert!(m.faces()[inner].iter().all(|&d| m.is_forward(d)));
        assert!(m.outer_walk().iter().all(|&d| !m.is_forward(d)));
        assert_eq!(m.ccw_boundary().len(), 3);
    }

    #[test]
    fn rotation_round_trip() {
        let m = triangle();
        let rots: Vec<Vec<usize>> = (0..3).map(|v| m.rotation(v).iter().map(|d| d / 2).collect()).collect();
        let o = m.outer_walk()[0];
        let m2 = PlanarMap::from_rotations(3, m.edges().to_vec(), &rots, Some((m.origin(o), m.target(o)))).unwrap();
        assert_eq!(m, m2);
        assert!(PlanarMap::from_rotations(3, m.edges().to_vec(), &rots, None).is_err());
    }

    #[test]
    fn angle_order_is_ccw() {
        let dirs = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
        for w in dirs.windows(2) {
            assert_eq!(angle_cmp(w[0], w[1]), Ordering::Less);
        }
    }
}
