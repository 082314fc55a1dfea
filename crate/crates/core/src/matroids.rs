//! Matroids and positroids on the hypersimplex side: minimizing sets, Grassmann
//! necklaces, interval positroids, facet inequalities of M_v and tropical linear spaces.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cat0::LabeledGraph;
use crate::error::{Error, Result};
use crate::pluecker::PlueckerVector;
use crate::subsets::{all_subsets, cyclic_interval, Q};
use crate::web::Web;

/// A matroid as an explicit set of sorted bases.
pub type Bases = BTreeSet<Vec<usize>>;

/// Subsets where `pi` attains its minimum.
pub fn matroid_of_min(pi: &PlueckerVector) -> Bases {
    let m = pi.min_value();
    pi.iter().filter(|(_, v)| *v == m).map(|(s, _)| s).collect()
}

/// Basis exchange: for bases A, B and a in A \ B some b in B \ A has A - a + b a basis.
pub fn is_matroid(bases: &Bases) -> Result<bool> {
    let Some(first) = bases.iter().next() else {
        return Err(Error::NotAMatroid("no bases".into()));
    };
    let k = first.len();
    if bases.iter().any(|b| b.len() != k) {
        return Ok(false);
    }
    for a in bases {
        for b in bases {
            for &x in a.iter().filter(|x| !b.contains(x)) {
                let ok = b.iter().filter(|y| !a.contains(y)).any(|&y| bases.contains(&swap(a, x, y)));
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn swap(s: &[usize], out: usize, inn: usize) -> Vec<usize> {
    let mut t: Vec<usize> = s.iter().copied().filter(|&x| x != out).collect();
    t.push(inn);
    t.sort_unstable();
    t
}

/// Elements lying in no basis.
pub fn loops(bases: &Bases, n: usize) -> Vec<usize> {
    (1..=n).filter(|i| !bases.iter().any(|b| b.contains(i))).collect()
}

/// Connected components of the ground set, merged along single basis exchanges.
pub fn components(bases: &Bases, n: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for b in bases {
        for &x in b {
            for y in (1..=n).filter(|y| !b.contains(y)) {
                if bases.contains(&swap(b, x, y)) {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    parent[rx] = ry;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 1..=n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

pub fn is_connected(bases: &Bases, n: usize) -> bool {
    components(bases, n).len() == 1
}

/// Position of x in the order a <_a a+1 <_a ... <_a a-1.
fn shifted(x: usize, a: usize, n: usize) -> usize {
    (x + n - a) % n
}

fn sorted_in(s: &[usize], a: usize, n: usize) -> Vec<usize> {
    let mut t: Vec<usize> = s.iter().map(|&x| shifted(x, a, n)).collect();
    t.sort_unstable();
    t
}

/// I_a is the lexicographically smallest basis for the order starting at a.
pub fn grassmann_necklace(bases: &Bases, n: usize) -> Result<Vec<Vec<usize>>> {
    if !is_matroid(bases)? {
        return Err(Error::NotAMatroid("exchange axiom fails".into()));
    }
    Ok((1..=n)
        .map(|a| bases.iter().min_by_key(|b| sorted_in(b, a, n)).expect("nonempty").clone())
        .collect())
}

/// Gale order at a: after sorting both sets in <_a, each entry of `i` is <_a that of `j`.
fn gale_le(i: &[usize], j: &[usize], a: usize, n: usize) -> bool {
    sorted_in(i, a, n).iter().zip(sorted_in(j, a, n)).all(|(x, y)| *x <= y)
}

/// The positroid of a necklace: subsets Gale-above every I_a.
pub fn positroid_of_necklace(necklace: &[Vec<usize>], n: usize) -> Bases {
    let k = necklace.first().map_or(0, Vec::len);
    all_subsets(n, k)
        .into_iter()
        .filter(|s| necklace.iter().enumerate().all(|(a, ia)| gale_le(ia, s, a + 1, n)))
        .collect()
}

pub fn is_positroid(bases: &Bases, n: usize) -> Result<bool> {
    let neck = grassmann_necklace(bases, n)?;
    Ok(positroid_of_necklace(&neck, n) == *bases)
}

/// Rank-3 simple positroid whose rank-2 cyclic flats are the given intervals.
pub fn positroid_from_intervals(intervals: &[(usize, usize)], n: usize) -> Result<Bases> {
    let sets: Vec<Vec<usize>> = intervals
        .iter()
        .map(|&(a, b)| {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::NotASubset(vec![a, b], n));
            }
            let s = cyclic_interval(a, b, n);
            if s.len() < 3 || s.len() >= n {
                return Err(Error::InvalidGraph(format!("interval [{a},{b}] must be proper with at least 3 elements")));
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;
    for x in 1..=n {
        let y = x % n + 1;
        let covering = sets.iter().filter(|s| s.contains(&x) && s.contains(&y) && s.last() != Some(&x)).count();
        if covering > 1 {
            return Err(Error::InvalidGraph(format!("pair ({x},{y}) lies in {covering} intervals")));
        }
    }
    Ok(all_subsets(n, 3)
        .into_iter()
        .filter(|t| sets.iter().all(|s| t.iter().filter(|x| s.contains(x)).count() <= 2))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
}

/// x_{[a,b]} (sense) bound.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Facet {
    pub interval: (usize, usize),
    pub bound: usize,
    pub sense: Sense,
}

impl Facet {
    pub fn holds(&self, subset: &[usize], n: usize) -> bool {
        let s = cyclic_interval(self.interval.0, self.interval.1, n);
        let c = subset.iter().filter(|x| s.contains(x)).count();
        match self.sense {
            Sense::Ge => c >= self.bound,
            Sense::Le => c <= self.bound,
        }
    }

    /// The same half-space written as a lower bound on the complementary interval.
    fn as_lower_bound(&self, n: usize, k: usize) -> Facet {
        match self.sense {
            Sense::Ge => self.clone(),
            Sense::Le => Facet {
                interval: (self.interval.1 % n + 1, (self.interval.0 + n - 2) % n + 1),
                bound: k - self.bound,
                sense: Sense::Ge,
            },
        }
    }
}

impl std::fmt::Display for Facet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let op = if self.sense == Sense::Ge { ">=" } else { "<=" };
        write!(f, "x[{},{}] {op} {}", self.interval.0, self.interval.1, self.bound)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FacetReport {
    pub connected: bool,
    pub facets: Vec<Facet>,
}

/// Facets of P_{M_v} shared with neighbors whose matroids are connected and distinct.
///
/// For an edge u -> u' with strands i (u on its right) and j (u' on its right), P_{M_u}
/// lies in x_{[i+1,j]} <= 2 and P_{M_u'} in x_{[i+1,j]} >= 2. Facets are reported as
/// lower bounds on cyclic intervals.
pub fn facets_of_mv(g: &LabeledGraph, v: usize) -> Result<FacetReport> {
    let n = g.n();
    let mv: Bases = g.matroid_mv(v).into_iter().collect();
    if mv.is_empty() || !is_connected(&mv, n) {
        return Ok(FacetReport { connected: false, facets: Vec::new() });
    }
    let web = Web::from_dual(g)?;
    let lab = web.dart_labels()?;
    let m = g.map();
    let mut out = BTreeSet::new();
    for &d in m.rotation(v) {
        let w = m.target(d);
        let mw: Bases = g.matroid_mv(w).into_iter().collect();
        if mw.is_empty() || mw == mv || !is_connected(&mw, n) {
            continue;
        }
        let e = d / 2;
        let (i, j) = (lab[2 * e], lab[2 * e + 1]);
        let interval = (i % n + 1, j);
        let facet = if m.is_forward(d) {
            Facet { interval, bound: 2, sense: Sense::Le }
        } else {
            Facet { interval, bound: 2, sense: Sense::Ge }
        };
        out.insert(facet.as_lower_bound(n, 3));
    }
    Ok(FacetReport { connected: true, facets: out.into_iter().collect() })
}

/// Tropical linear space membership: every (k+1)-subset attains min(pi_{tau - i} + x_i) twice.
pub fn linear_space_member(pi: &PlueckerVector, x: &[Q]) -> Result<bool> {
    let (n, k) = (pi.n(), pi.k());
    if x.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: x.len() });
    }
    Ok(all_subsets(n, k + 1).iter().all(|tau| {
        let vals: Vec<Q> = (0..tau.len())
            .map(|p| {
                let rest: Vec<usize> = tau.iter().enumerate().filter(|&(q, _)| q != p).map(|(_, &y)| y).collect();
                pi.get(&rest) + x[tau[p] - 1]
            })
            .collect();
        let m = vals.iter().min().expect("nonempty").clone();
        vals.iter().filter(|v| **v == m).count() >= 2
    }))
}

/// Membership through looplessness of the minimizing matroid of pi_I - sum_{i in I} x_i.
pub fn linear_space_member_by_loops(pi: &PlueckerVector, x: &[Q]) -> Result<bool> {
    let n = pi.n();
    if x.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: x.len() });
    }
    let shifted = PlueckerVector::from_fn(n, pi.k(), |s| {
        s.iter().fold(pi.get(s), |acc, &i| acc - x[i - 1])
    });
    Ok(loops(&matroid_of_min(&shifted), n).is_empty())
}

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub vertices: Vec<usize>,
    pub bases: Vec<Vec<usize>>,
    pub connected: bool,
}

/// The distinct nonempty matroids M_v, with the vertices carrying each.
pub fn subdivision_cells(g: &LabeledGraph) -> Vec<Cell> {
    let n = g.n();
    let mut cells: Vec<(Bases, Vec<usize>)> = Vec::new();
    for v in 0..g.num_vertices() {
        let mv: Bases = g.matroid_mv(v).into_iter().collect();
        if mv.is_empty() {
            continue;
        }
        match cells.iter_mut().find(|(b, _)| *b == mv) {
            Some((_, vs)) => vs.push(v),
            None => cells.push((mv, vec![v])),
        }
    }
    cells
        .into_iter()
        .map(|(b, vertices)| Cell { connected: is_connected(&b, n), bases: b.into_iter().collect(), vertices })
        .collect()
}

/// pi_I = -min over cells containing I of sum_{i in I} (b_v)_i, checked for every I.
pub fn cells_reconstruct(g: &LabeledGraph) -> bool {
    let pi = g.pluecker();
    let k = Q::from_integer(g.k() as i64);
    let cells = subdivision_cells(g);
    let ok = pi.iter().all(|(s, val)| {
        let best = cells
            .iter()
            .filter(|c| c.bases.contains(&s))
            .flat_map(|c| c.vertices.iter())
            .map(|&v| Q::from_integer(g.distance_sum(v, &s) as i64) / k)
            .min();
        best.is_some_and(|b| (b + val).is_zero())
    });
    ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[[usize; 3]]) -> Bases {
        v.iter().map(|t| t.to_vec()).collect()
    }

    #[test]
    fn uniform_and_broken() {
        let u34: Bases = all_subsets(4, 3).into_iter().collect();
        assert!(is_matroid(&u34).unwrap());
        assert!(!is_matroid(&set(&[[1, 2, 3], [1, 4, 5]])).unwrap());
        assert!(is_matroid(&Bases::new()).is_err());
        let neck = grassmann_necklace(&all_subsets(6, 3).into_iter().collect(), 6).unwrap();
        assert_eq!(neck[4], vec![1, 5, 6]);
        assert!(is_positroid(&u34, 4).unwrap());
    }

    #[test]
    fn interval_positroid() {
        let p = positroid_from_intervals(&[(1, 3)], 5).unwrap();
        assert!(!p.contains(&vec![1, 2, 3]));
        assert_eq!(p.len(), 9);
        assert!(is_positroid(&p, 5).unwrap());
        let neck = grassmann_necklace(&p, 5).unwrap();
        assert_eq!(neck[0], vec![1, 2, 4]);
        assert!(positroid_from_intervals(&[(1, 2)], 5).is_err());
    }

    #[test]
    fn membership_criteria_agree() {
        let pi = PlueckerVector::zero(5, 3);
        let zero = vec![Q::zero(); 5];
        assert!(linear_space_member(&pi, &zero).unwrap());
        let mut e1 = zero.clone();
        e1[0] = Q::from_integer(1);
        assert_eq!(linear_space_member(&pi, &e1).unwrap(), linear_space_member_by_loops(&pi, &e1).unwrap());
    }
}
