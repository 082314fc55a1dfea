//! Tropical Pluecker vectors: relations, lineality, the planar basis,
//! tropical cross-ratios and the projection onto t-coordinates.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subsets::{all_subsets, binomial, cyc, q, rank, Triple, Q};

/// Total map from k-subsets of [n] to exact rationals, stored densely in colex order.
#[derive(Clone, PartialEq, Eq)]
pub struct PlueckerVector {
    n: usize,
    k: usize,
    entries: Vec<Q>,
}

impl PlueckerVector {
    pub fn zero(n: usize, k: usize) -> Self {
        PlueckerVector { n, k, entries: vec![Q::zero(); binomial(n, k)] }
    }

    pub fn from_fn(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> Q) -> Self {
        let entries = all_subsets(n, k).iter().map(|s| f(s)).collect();
        PlueckerVector { n, k, entries }
    }

    pub fn from_entries(n: usize, k: usize, entries: Vec<Q>) -> Result<Self> {
        let expected = binomial(n, k);
        if entries.len() != expected {
            return Err(Error::LengthMismatch { expected, got: entries.len() });
        }
        Ok(PlueckerVector { n, k, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[Q] {
        &self.entries
    }

    /// Entry at a sorted 1-based subset.
    pub fn get(&self, subset: &[usize]) -> Q {
        self.entries[rank(subset)]
    }

    pub fn at(&self, t: Triple) -> Q {
        self.get(&t.get())
    }

    pub fn set(&mut self, subset: &[usize], v: Q) {
        let r = rank(subset);
        self.entries[r] = v;
    }

    /// Entry at an unsorted list of distinct indices.
    pub fn get_unsorted(&self, idx: &[usize]) -> Q {
        let mut s = idx.to_vec();
        s.sort_unstable();
        self.get(&s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, Q)> + '_ {
        all_subsets(self.n, self.k).into_iter().zip(self.entries.iter().copied())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.k), (other.n, other.k));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        PlueckerVector { n: self.n, k: self.k, entries }
    }

    pub fn scale(&self, c: Q) -> Self {
        PlueckerVector { n: self.n, k: self.k, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(q(-1)))
    }

    pub fn min_value(&self) -> Q {
        self.entries.iter().copied().min().unwrap_or_else(Q::zero)
    }

    /// Representative shifted by a constant so that the minimum entry is zero.
    pub fn normalized(&self) -> Self {
        let m = self.min_value();
        PlueckerVector { n: self.n, k: self.k, entries: self.entries.iter().map(|a| a - m).collect() }
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|v| v.is_integer())
    }

    /// Sum of coefficient * e^I.
    pub fn from_e_terms(n: usize, terms: &[(Triple, i64)]) -> Self {
        let mut p = Self::zero(n, 3);
        for &(t, c) in terms {
            let r = rank(&t.get());
            p.entries[r] += q(c);
        }
        p
    }

    /// Sum of coefficient * h_J.
    pub fn from_h_terms(n: usize, terms: &[(Triple, Q)]) -> Result<Self> {
        let mut p = Self::zero(n, 3);
        for &(t, c) in terms {
            p = p.add(&planar_basis_h(t, n)?.scale(c));
        }
        Ok(p)
    }
}

impl fmt::Debug for PlueckerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlueckerVector(n={}, k={}) {{", self.n, self.k)?;
        for (s, v) in self.iter() {
            if !v.is_zero() {
                write!(f, " {:?}:{}", s, v)?;
            }
        }
        write!(f, " }}")
    }
}

/// A lineality shift x acting by pi_I - sum_{i in I} x_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinealityShift(pub Vec<Q>);

pub fn lineality_apply(pi: &PlueckerVector, x: &LinealityShift) -> Result<PlueckerVector> {
    if x.0.len() != pi.n {
        return Err(Error::LengthMismatch { expected: pi.n, got: x.0.len() });
    }
    let mut out = pi.clone();
    for (s, e) in all_subsets(pi.n, pi.k).iter().zip(out.entries.iter_mut()) {
        for &i in s {
            *e -= x.0[i - 1];
        }
    }
    Ok(out)
}

/// The lineality generator sum_{I containing i} e^I.
pub fn lineality_generator(n: usize, i: usize) -> PlueckerVector {
    PlueckerVector::from_fn(n, 3, |s| if s.contains(&i) { q(1) } else { q(0) })
}

fn three_term_values(pi: &PlueckerVector, s: &[usize], a: usize, b: usize, c: usize, d: usize) -> [Q; 3] {
    let with = |x: usize, y: usize| {
        let mut v = s.to_vec();
        v.push(x);
        v.push(y);
        pi.get_unsorted(&v)
    };
    [with(a, b) + with(c, d), with(a, c) + with(b, d), with(a, d) + with(b, c)]
}

fn for_each_relation(
    pi: &PlueckerVector,
    mut f: impl FnMut(&[usize], [Q; 3]) -> bool,
) -> Result<bool> {
    let (n, k) = (pi.n, pi.k);
    if k < 2 || n < k + 2 {
        return Err(Error::DomainTooSmall { n, k });
    }
    for s in all_subsets(n, k - 2) {
        let rest: Vec<usize> = (1..=n).filter(|i| !s.contains(i)).collect();
        for quad in all_subsets(rest.len(), 4) {
            let [a, b, c, d] = [rest[quad[0] - 1], rest[quad[1] - 1], rest[quad[2] - 1], rest[quad[3] - 1]];
            if !f(&s, three_term_values(pi, &s, a, b, c, d)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Three-term tropical Pluecker relations: the minimum of the three pairings occurs twice.
pub fn check_tropical(pi: &PlueckerVector) -> Result<bool> {
    for_each_relation(pi, |_, [x, y, z]| {
        let m = x.min(y).min(z);
        [x, y, z].iter().filter(|&&v| v == m).count() >= 2
    })
}

/// Positive relations: pi_Sac + pi_Sbd = min(pi_Sab + pi_Scd, pi_Sad + pi_Sbc).
pub fn check_positive(pi: &PlueckerVector) -> Result<bool> {
    for_each_relation(pi, |_, [ab_cd, ac_bd, ad_bc]| ac_bd == ab_cd.min(ad_bc))
}

/// Directed step distances between vertices of the hypersimplex Delta(3, n).
struct StepTable {
    size: usize,
    dist: Vec<u16>,
}

fn step_table(n: usize) -> Arc<StepTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<StepTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("step table lock").get(&n) {
        return t.clone();
    }
    let table = Arc::new(build_step_table(n));
    cache.lock().expect("step table lock").insert(n, table.clone());
    table
}

/// Successors of a vertex: an element i+1 steps down to i (1 steps to n) when i is free.
fn step_moves(n: usize, s: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for &x in s {
        let y = cyc(x as i64 - 1, n);
        if !s.contains(&y) {
            let mut t: Vec<usize> = s.iter().map(|&e| if e == x { y } else { e }).collect();
            t.sort_unstable();
            out.push(t);
        }
    }
    out
}

fn build_step_table(n: usize) -> StepTable {
    let verts = all_subsets(n, 3);
    let size = verts.len();
    let succ: Vec<Vec<usize>> = verts.iter().map(|s| step_moves(n, s).iter().map(|t| rank(t)).collect()).collect();
    let mut dist = vec![u16::MAX; size * size];
    for src in 0..size {
        let row = &mut dist[src * size..(src + 1) * size];
        row[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &w in &succ[u] {
                if row[w] == u16::MAX {
                    row[w] = row[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    StepTable { size, dist }
}

/// Number of steps from e_J to e_I.
pub fn hypersimplex_distance(n: usize, from: Triple, to: Triple) -> u32 {
    let t = step_table(n);
    t.dist[rank(&from.get()) * t.size + rank(&to.get())] as u32
}

/// Planar basis vector h_J with entries d(e_J, e_I) / n.
pub fn planar_basis_h(j: Triple, n: usize) -> Result<PlueckerVector> {
    j.check_within(n)?;
    let t = step_table(n);
    let r = rank(&j.get());
    let entries = (0..t.size).map(|i| Q::new(t.dist[r * t.size + i] as i64, n as i64)).collect();
    Ok(PlueckerVector { n, k: 3, entries })
}

/// Signed vertices of the cubical array of a non-cyclic triple.
pub fn cubical_array(j: Triple, n: usize) -> Result<Vec<(Triple, i64)>> {
    j.check_within(n)?;
    if j.is_cyclic(n) {
        return Err(Error::CyclicTriple(j));
    }
    let js = j.get();
    let ends: Vec<usize> = js.iter().copied().filter(|&x| !j.contains(cyc(x as i64 + 1, n))).collect();
    let mut out = Vec::new();
    for mask in 0..(1u32 << ends.len()) {
        let moved: Vec<usize> = js
            .iter()
            .map(|&x| match ends.iter().position(|&e| e == x) {
                Some(p) if mask & (1 << p) != 0 => cyc(x as i64 + 1, n),
                _ => x,
            })
            .collect();
        let t = Triple::from_slice(&moved)?;
        let common = moved.iter().filter(|x| j.contains(**x)).count() as i64;
        let sign = if (common - 4).rem_euclid(2) == 0 { 1 } else { -1 };
        out.push((t, sign));
    }
    Ok(out)
}

/// Tropical cross-ratio u_J(pi).
pub fn cross_ratio_u(j: Triple, pi: &PlueckerVector) -> Result<Q> {
    Ok(cubical_array(j, pi.n)?.iter().map(|&(t, s)| pi.at(t) * q(s)).sum())
}

/// Coordinates of pi in the planar basis, which determine pi modulo lineality.
pub fn canonical_form(pi: &PlueckerVector) -> BTreeMap<Triple, Q> {
    Triple::non_cyclic(pi.n)
        .into_iter()
        .map(|j| (j, cross_ratio_u(j, pi).expect("non-cyclic triple")))
        .collect()
}

/// Nonzero part of a canonical form.
pub fn support(u: &BTreeMap<Triple, Q>) -> BTreeMap<Triple, Q> {
    u.iter().filter(|(_, v)| !v.is_zero()).map(|(t, v)| (*t, *v)).collect()
}

pub fn equal_mod_lineality(a: &PlueckerVector, b: &PlueckerVector) -> bool {
    a.n == b.n && canonical_form(a) == canonical_form(b)
}

/// 2 x (n-3) integer matrix in noncrossing coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TMatrix {
    pub n: usize,
    pub rows: [Vec<i64>; 2],
}

impl TMatrix {
    pub fn zero(n: usize) -> Self {
        let w = n.saturating_sub(3);
        TMatrix { n, rows: [vec![0; w], vec![0; w]] }
    }

    pub fn add_scaled(&mut self, other: &TMatrix, c: i64) {
        for r in 0..2 {
            for (a, b) in self.rows[r].iter_mut().zip(&other.rows[r]) {
                *a += c * b;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x >= 0))
    }

    /// Entrywise comparison `self <= other`.
    pub fn le(&self, other: &TMatrix) -> bool {
        (0..2).all(|r| self.rows[r].iter().zip(&other.rows[r]).all(|(a, b)| a <= b))
    }

    pub fn total(&self) -> i64 {
        self.rows.iter().flatten().sum()
    }
}

impl fmt::Debug for TMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{:?}/{:?}", self.rows[0], self.rows[1])
    }
}

/// t_J: row one is the indicator of [j1, j2-2], row two of [j2-1, j3-3].
pub fn t_vector(j: Triple, n: usize) -> TMatrix {
    let [a, b, c] = j.get();
    let mut t = TMatrix::zero(n);
    let w = n.saturating_sub(3);
    for p in 1..=w {
        if a <= p && p + 2 <= b {
            t.rows[0][p - 1] = 1;
        }
        if b <= p + 1 && p + 3 <= c {
            t.rows[1][p - 1] = 1;
        }
    }
    t
}

/// Psi(pi) = sum over non-cyclic J of u_J(pi) t_J; errors if the result is not integral.
pub fn psi_project(pi: &PlueckerVector) -> Result<TMatrix> {
    psi_of_form(&canonical_form(pi), pi.n)
}

pub fn psi_of_form(u: &BTreeMap<Triple, Q>, n: usize) -> Result<TMatrix> {
    let mut m = TMatrix::zero(n);
    for (&j, v) in u {
        if v.is_zero() {
            continue;
        }
        if !v.is_integer() {
            return Err(Error::NonIntegral(format!("u_{j} = {v}")));
        }
        m.add_scaled(&t_vector(j, n), v.to_integer());
    }
    Ok(m)
}

/// Check a label sequence [n'] -> [n] is a cyclically weakly increasing surjection and
/// return, for each target a, the first element of its fiber.
pub fn fiber_starts(labels: &[usize], n: usize) -> Result<Vec<usize>> {
    let np = labels.len();
    if labels.iter().any(|&l| l == 0 || l > n) {
        return Err(Error::BadLabels(format!("label outside [1,{n}]")));
    }
    let mut starts = vec![0usize; n + 1];
    let mut descents = 0;
    for p in 0..np {
        let prev = labels[(p + np - 1) % np];
        let cur = labels[p];
        if prev != cur {
            if starts[cur] != 0 {
                return Err(Error::BadLabels(format!("fiber over {cur} is not a cyclic interval")));
            }
            starts[cur] = p + 1;
            if cur < prev {
                descents += 1;
            }
        }
    }
    if n == 1 {
        return Ok(vec![0, 1]);
    }
    if descents != 1 {
        return Err(Error::BadLabels("not cyclically monotone".into()));
    }
    for (a, &s) in starts.iter().enumerate().skip(1) {
        if s == 0 {
            return Err(Error::BadLabels(format!("label {a} is not attained")));
        }
    }
    Ok(starts)
}

/// Pull back a vector on [n'] along a cyclically monotone surjection [n'] -> [n] by
/// restricting to the first element of each fiber.
pub fn relabel_expand(pi: &PlueckerVector, labels: &[usize], n: usize) -> Result<PlueckerVector> {
    if labels.len() != pi.n {
        return Err(Error::LengthMismatch { expected: pi.n, got: labels.len() });
    }
    let starts = fiber_starts(labels, n)?;
    Ok(PlueckerVector::from_fn(n, pi.k, |s| {
        let img: Vec<usize> = s.iter().map(|&a| starts[a]).collect();
        pi.get_unsorted(&img)
    }))
}

/// Canonical form rendered as a signed h-expansion, e.g. "-h136 + h137".
pub fn format_expansion(u: &BTreeMap<Triple, Q>) -> String {
    let mut s = String::new();
    for (t, v) in u.iter().filter(|(_, v)| !v.is_zero()) {
        let sign = if v.is_negative() { "-" } else { "+" };
        let mag = v.abs();
        let coef = if mag == q(1) { String::new() } else { crate::subsets::q_to_string(&mag) };
        if s.is_empty() {
            if sign == "-" {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        s.push_str(&format!("{coef}h{t}"));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Parse signed h-expansions like "-h136 + 2h1.3.10".
pub fn parse_expansion(s: &str) -> Result<Vec<(Triple, Q)>> {
    let mut out = Vec::new();
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            tokens.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    for tok in tokens {
        let (coef, trip) = tok
            .split_once('h')
            .ok_or_else(|| Error::Parse(format!("term {tok:?} lacks h")))?;
        let c = match coef {
            "" | "+" => q(1),
            "-" => q(-1),
            other => crate::subsets::q_parse(other)?,
        };
        out.push((Triple::parse(trip)?, c));
    }
    Ok(out)
}
