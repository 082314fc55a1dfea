//! Noncrossing tableaux: standardization, the SSYT bijection, Tymoczko webs, t-sums and
//! the decomposition of a noncrossing-coordinate matrix back into a tableau.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pluecker::{t_vector, TMatrix};
use crate::subsets::{Triple, Q};
use crate::web::{Color, Web};

/// Arcs (a, b) and (a', b') with a < b do not cross on the circle.
fn arcs_noncrossing(p: (usize, usize), q: (usize, usize)) -> bool {
    let inter = |x: (usize, usize), y: (usize, usize)| x.0 < y.0 && y.0 < x.1 && x.1 < y.1;
    !inter(p, q) && !inter(q, p)
}

pub fn is_noncrossing_pair(j: Triple, k: Triple) -> bool {
    let [a, b, c] = j.get();
    let [x, y, z] = k.get();
    arcs_noncrossing((a, b), (x, y)) && arcs_noncrossing((b, c), (y, z)) && (b != y || arcs_noncrossing((a, c), (x, z)))
}

/// A pairwise noncrossing multiset of triples in [n], kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NcTableau {
    n: usize,
    triples: Vec<Triple>,
}

impl NcTableau {
    pub fn new(n: usize, mut triples: Vec<Triple>) -> Result<Self> {
        for t in &triples {
            t.check_within(n)?;
        }
        for (i, s) in triples.iter().enumerate() {
            if let Some(t) = triples[i + 1..].iter().find(|t| !is_noncrossing_pair(*s, **t)) {
                return Err(Error::InvalidTableau(format!("{s} and {t} cross")));
            }
        }
        triples.sort();
        Ok(NcTableau { n, triples })
    }

    pub fn empty(n: usize) -> Self {
        NcTableau { n, triples: Vec::new() }
    }

    /// Comma-separated triples such as "146,237,589" or "1.6.8,2.3.11".
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let triples = s
            .split(|c| c == ',' || c == ';')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(Triple::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, triples)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn weight(&self) -> usize {
        self.triples.len()
    }

    pub fn content(&self) -> Vec<usize> {
        let mut c = vec![0; self.n];
        for t in &self.triples {
            for x in t.get() {
                c[x - 1] += 1;
            }
        }
        c
    }

    pub fn is_standard(&self) -> bool {
        self.content().iter().all(|&c| c == 1)
    }

    pub fn is_cyclic_less(&self) -> bool {
        self.triples.iter().all(|t| !t.is_cyclic(self.n))
    }
}

impl fmt::Display for NcTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .triples
            .iter()
            .map(|t| {
                let [a, b, c] = t.get();
                if c < 10 {
                    format!("{a}{b}{c}")
                } else {
                    format!("{a}.{b}.{c}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for NcTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NC[{self}]")
    }
}

/// Standardization: the tableau on [3r] and, for each new letter, its old letter.
pub fn standardize(j: &NcTableau) -> (NcTableau, Vec<usize>) {
    // Each endpoint gets a sort key; equal letters are split without creating crossings:
    // right endpoints first, then middles, then left endpoints, and within the end groups
    // the arc with the larger middle sits further out.
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
    struct Key {
        letter: usize,
        group: u8,
        sub: Reverse<usize>,
        tie: usize,
    }
    let t = &j.triples;
    let mut keys: Vec<(Key, usize, usize)> = Vec::with_capacity(3 * t.len());
    for (i, tr) in t.iter().enumerate() {
        let [a, b, c] = tr.get();
        keys.push((Key { letter: c, group: 0, sub: Reverse(b), tie: i }, i, 2));
        keys.push((Key { letter: a, group: 2, sub: Reverse(b), tie: i }, i, 0));
        keys.push((Key { letter: b, group: 1, sub: Reverse(0), tie: i }, i, 1));
    }
    keys.sort();
    let mut pos = vec![[0usize; 3]; t.len()];
    let mut labels = Vec::with_capacity(keys.len());
    for (p, (k, i, role)) in keys.iter().enumerate() {
        pos[*i][*role] = p + 1;
        labels.push(k.letter);
    }
    // re-pair within each middle letter: sorted lefts with sorted rights, middles descending
    let mut by_middle: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, tr) in t.iter().enumerate() {
        by_middle.entry(tr.get()[1]).or_default().push(i);
    }
    let mut out = Vec::with_capacity(t.len());
    for group in by_middle.values() {
        let mut lefts: Vec<usize> = group.iter().map(|&i| pos[i][0]).collect();
        let mut mids: Vec<usize> = group.iter().map(|&i| pos[i][1]).collect();
        let mut rights: Vec<usize> = group.iter().map(|&i| pos[i][2]).collect();
        lefts.sort_unstable();
        rights.sort_unstable();
        mids.sort_unstable_by(|a, b| b.cmp(a));
        for q in 0..group.len() {
            out.push(Triple::of(lefts[q], mids[q], rights[q]));
        }
    }
    let std = NcTableau::new(labels.len(), out).expect("standardization is noncrossing");
    (std, labels)
}

/// Inverse of [`standardize`] given the content of the original tableau.
pub fn destandardize(std: &NcTableau, content: &[usize]) -> Result<NcTableau> {
    let total: usize = content.iter().sum();
    if total != std.n || !std.is_standard() {
        return Err(Error::InvalidTableau(format!("content sums to {total} for a tableau on [{}]", std.n)));
    }
    let iota: Vec<usize> = content.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat(i + 1).take(c)).collect();
    let mut by_middle: BTreeMap<usize, Vec<Triple>> = BTreeMap::new();
    for t in &std.triples {
        by_middle.entry(iota[t.get()[1] - 1]).or_default().push(*t);
    }
    let mut out = Vec::new();
    for (b, mut group) in by_middle {
        group.sort_by_key(|t| Reverse(t.get()[1]));
        let r = group.len();
        for q in 0..r {
            let a = iota[group[q].get()[0] - 1];
            let c = iota[group[r - 1 - q].get()[2] - 1];
            out.push(Triple::new(a, b, c).map_err(|_| Error::InvalidTableau("content merges a triple".into()))?);
        }
    }
    let j = NcTableau::new(content.len(), out)?;
    if j.content() != content {
        return Err(Error::InvalidTableau("content does not match".into()));
    }
    Ok(j)
}

/// Semistandard Young tableau of shape 3 x r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ssyt {
    pub rows: [Vec<usize>; 3],
}

impl Ssyt {
    pub fn new(rows: [Vec<usize>; 3]) -> Result<Self> {
        let r = rows[0].len();
        if rows.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidTableau("rows of different lengths".into()));
        }
        if rows.iter().any(|row| row.windows(2).any(|w| w[0] > w[1])) {
            return Err(Error::InvalidTableau("row decreases".into()));
        }
        if (0..r).any(|c| rows[0][c] >= rows[1][c] || rows[1][c] >= rows[2][c]) {
            return Err(Error::InvalidTableau("column is not strictly increasing".into()));
        }
        Ok(Ssyt { rows })
    }
}

/// Connect each letter to the rightmost unused smaller letter in the row above.
pub fn ssyt_to_nc(t: &Ssyt, n: usize) -> Result<NcTableau> {
    let mut chains: Vec<Vec<usize>> = t.rows[0].iter().map(|&x| vec![x]).collect();
    // (letter, chain) in the order of the row above
    let mut above: Vec<(usize, usize)> = t.rows[0].iter().enumerate().map(|(c, &x)| (x, c)).collect();
    for row in &t.rows[1..] {
        let mut used = vec![false; above.len()];
        let mut here = Vec::with_capacity(row.len());
        for &l in row {
            let p = (0..above.len())
                .rev()
                .find(|&p| !used[p] && above[p].0 < l)
                .ok_or_else(|| Error::InvalidTableau(format!("no partner for {l}")))?;
            used[p] = true;
            chains[above[p].1].push(l);
            here.push((l, p, above[p].1));
        }
        // equal letters take the order of their partners, as in standardization
        here.sort_unstable();
        above = here.into_iter().map(|(l, _, c)| (l, c)).collect();
    }
    NcTableau::new(n, chains.iter().map(|c| Triple::from_slice(c)).collect::<Result<_>>()?)
}

/// Sorted left, middle and right endpoints as rows.
pub fn nc_to_ssyt(j: &NcTableau) -> Ssyt {
    let mut rows: [Vec<usize>; 3] = Default::default();
    for t in &j.triples {
        for (row, x) in rows.iter_mut().zip(t.get()) {
            row.push(x);
        }
    }
    for row in &mut rows {
        row.sort_unstable();
    }
    Ssyt { rows }
}

pub fn t_sum(j: &NcTableau) -> TMatrix {
    let mut m = TMatrix::zero(j.n);
    for t in &j.triples {
        m.add_scaled(&t_vector(*t, j.n), 1);
    }
    m
}

/// Web of a standard tableau from its m-diagram: semicircles over the boundary line,
/// each m turned into a Y and each crossing into a black-white pair.
fn standard_web(k: &NcTableau) -> Result<Web> {
    let nb = k.n;
    let r = k.triples.len();
    // arcs 2t (left, a..b) and 2t+1 (right, b..c) as (p, q)
    let arcs: Vec<(usize, usize)> = k
        .triples
        .iter()
        .flat_map(|t| {
            let [a, b, c] = t.get();
            [(a, b), (b, c)]
        })
        .collect();
    struct Crossing {
        lo: usize,
        top: usize,
        bottom: usize,
    }
    let mut colors = vec![Color::Black; nb];
    let yw: Vec<usize> = (0..r).map(|i| nb + i).collect();
    colors.extend(std::iter::repeat(Color::White).take(r));
    let mut crossings = Vec::new();
    // per arc: (x, crossing index)
    let mut along: Vec<Vec<(Q, usize)>> = vec![Vec::new(); arcs.len()];
    for (i, &(p, q)) in arcs.iter().enumerate() {
        for (j, &(p2, q2)) in arcs.iter().enumerate() {
            if !(p < p2 && p2 < q && q < q2) {
                continue;
            }
            let num = Q::from_integer((p2 * q2) as i64 - (p * q) as i64);
            let x = num / Q::from_integer((p2 + q2) as i64 - (p + q) as i64);
            let (top, bottom) = (colors.len(), colors.len() + 1);
            // lower-centered arc i is a left arc: white on top
            let (ct, cb) = if i % 2 == 0 { (Color::White, Color::Black) } else { (Color::Black, Color::White) };
            colors.push(ct);
            colors.push(cb);
            let id = crossings.len();
            crossings.push(Crossing { lo: i, top, bottom });
            along[i].push((x.clone(), id));
            along[j].push((x, id));
        }
    }
    let nv = colors.len();
    let mut edges: Vec<[usize; 2]> = Vec::new();
    // rotation slots per vertex, filled by slot index
    let mut slots: Vec<[Option<usize>; 3]> = vec![[None; 3]; nv];
    let mut add = |edges: &mut Vec<[usize; 2]>, u: (usize, usize), v: (usize, usize)| {
        let e = edges.len();
        edges.push([u.0, v.0]);
        slots[u.0][u.1] = Some(e);
        slots[v.0][v.1] = Some(e);
    };
    // Y: rotation at the white vertex is [stem, right arc, left arc]
    for (t, tr) in k.triples.iter().enumerate() {
        add(&mut edges, (tr.get()[1] - 1, 0), (yw[t], 0));
    }
    for (i, &(p, q)) in arcs.iter().enumerate() {
        let t = i / 2;
        let start = if i % 2 == 0 { (p - 1, 0) } else { (yw[t], 1) };
        let end = if i % 2 == 0 { (yw[t], 2) } else { (q - 1, 0) };
        let mut pts = along[i].clone();
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        let mut prev = start;
        for (_, id) in pts {
            let c = &crossings[id];
            // top: [vertical, hi toward q, lo toward p]; bottom: [vertical, hi toward p, lo toward q]
            let (toward_p, toward_q) =
                if c.lo == i { ((c.top, 2), (c.bottom, 2)) } else { ((c.bottom, 1), (c.top, 1)) };
            add(&mut edges, prev, toward_p);
            prev = toward_q;
        }
        add(&mut edges, prev, end);
    }
    for c in &crossings {
        add(&mut edges, (c.top, 0), (c.bottom, 0));
    }
    let rot: Vec<Vec<usize>> = slots
        .iter()
        .enumerate()
        .map(|(v, s)| {
            let take = if v < nb { 1 } else { 3 };
            s[..take].iter().map(|e| e.expect("every slot is filled")).collect()
        })
        .collect();
    Web::new(nb, colors, edges, rot)
}

/// Merge boundary vertices of a standard web along a weakly increasing label map onto [n].
fn merge_boundary(w: &Web, labels: &[usize], n: usize) -> Result<Web> {
    let nb = w.n();
    let remap = |v: usize| if v < nb { labels[v] - 1 } else { n + v - nb };
    let edges: Vec<[usize; 2]> = w.edges().iter().map(|&[a, b]| [remap(a), remap(b)]).collect();
    let mut colors = vec![Color::Black; n];
    colors.extend_from_slice(&w.colors()[nb..]);
    let mut rot = vec![Vec::new(); n];
    for b in (0..nb).rev() {
        rot[labels[b] - 1].extend_from_slice(w.rotation(b));
    }
    rot.extend((nb..w.num_vertices()).map(|v| w.rotation(v).to_vec()));
    Web::new(n, colors, edges, rot)
}

/// The normal web of a tableau: the standard web relabeled by the content map.
pub fn tymoczko_web(j: &NcTableau) -> Result<Web> {
    if j.triples.is_empty() {
        return Web::new(j.n, vec![Color::Black; j.n], Vec::new(), vec![Vec::new(); j.n]);
    }
    let (k, labels) = standardize(j);
    let w = standard_web(&k)?;
    if j.is_standard() {
        return Ok(w);
    }
    merge_boundary(&w, &labels, j.n)
}

fn candidates(m: &TMatrix) -> Vec<(Triple, TMatrix)> {
    let mut c: Vec<(Triple, TMatrix)> =
        Triple::non_cyclic(m.n).into_iter().map(|t| (t, t_vector(t, m.n))).filter(|(_, v)| v.le(m)).collect();
    c.sort_by_key(|(t, _)| {
        let [a, b, cc] = t.get();
        (Reverse(cc), a, b)
    });
    c
}

fn search(
    cands: &[(Triple, TMatrix)],
    start: usize,
    residual: &mut TMatrix,
    chosen: &mut Vec<Triple>,
    crossing_ok: bool,
    found: &mut Vec<Vec<Triple>>,
    limit: usize,
) {
    if found.len() >= limit {
        return;
    }
    if residual.is_zero() {
        found.push(chosen.clone());
        return;
    }
    for i in start..cands.len() {
        let (t, v) = &cands[i];
        if !v.le(residual) {
            continue;
        }
        if crossing_ok && !chosen.iter().all(|s| is_noncrossing_pair(*s, *t)) {
            continue;
        }
        residual.add_scaled(v, -1);
        chosen.push(*t);
        search(cands, i, residual, chosen, crossing_ok, found, limit);
        chosen.pop();
        residual.add_scaled(v, 1);
    }
}

/// The unique cyclic-less noncrossing tableau whose t-sum is `m`.
pub fn nc_decompose(m: &TMatrix) -> Result<NcTableau> {
    if !m.is_nonnegative() {
        return Err(Error::NotInPositiveCone("negative entry".into()));
    }
    let cands = candidates(m);
    let mut found = Vec::new();
    search(&cands, 0, &mut m.clone(), &mut Vec::new(), true, &mut found, 2);
    match found.len() {
        0 => Err(Error::NotInPositiveCone(format!("{m:?} has no noncrossing decomposition"))),
        1 => {
            let j = NcTableau::new(m.n, found.pop().expect("one"))?;
            debug_assert_eq!(t_sum(&j), *m);
            Ok(j)
        }
        _ => Err(Error::NotUnique(format!("{m:?}"))),
    }
}

/// Every multiset of non-cyclic triples with t-sum `m`, noncrossing or not.
pub fn all_decompositions(m: &TMatrix) -> Vec<Vec<Triple>> {
    if !m.is_nonnegative() {
        return Vec::new();
    }
    let cands = candidates(m);
    let mut found = Vec::new();
    search(&cands, 0, &mut m.clone(), &mut Vec::new(), false, &mut found, usize::MAX);
    found
}

/// Exhaustive oracle: the noncrossing members of [`all_decompositions`].
pub fn nc_decompose_brute(m: &TMatrix) -> Vec<NcTableau> {
    all_decompositions(m).into_iter().filter_map(|d| NcTableau::new(m.n, d).ok()).collect()
}

/// All cyclic-less noncrossing tableaux on [n] with exactly `weight` triples.
pub fn enumerate_tableaux(n: usize, weight: usize) -> Vec<NcTableau> {
    tableaux_from(&Triple::non_cyclic(n), n, weight)
}

/// All noncrossing tableaux on [n] with `weight` triples, cyclic triples allowed.
pub fn enumerate_all_tableaux(n: usize, weight: usize) -> Vec<NcTableau> {
    tableaux_from(&crate::subsets::all_triples(n), n, weight)
}

fn tableaux_from(pool: &[Triple], n: usize, weight: usize) -> Vec<NcTableau> {
    fn rec(pool: &[Triple], start: usize, left: usize, cur: &mut Vec<Triple>, n: usize, out: &mut Vec<NcTableau>) {
        if left == 0 {
            out.push(NcTableau::new(n, cur.clone()).expect("noncrossing by construction"));
            return;
        }
        for i in start..pool.len() {
            if cur.iter().all(|s| is_noncrossing_pair(*s, pool[i])) {
                cur.push(pool[i]);
                rec(pool, i, left - 1, cur, n, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(pool, 0, weight, &mut Vec::new(), n, &mut out);
    out
}

/// Planar-basis form sum of c * h_J as exact rationals, from integer coefficients.
pub fn int_form(m: &BTreeMap<Triple, i64>) -> BTreeMap<Triple, Q> {
    m.iter().map(|(t, &c)| (*t, Q::from_integer(c))).collect()
}
