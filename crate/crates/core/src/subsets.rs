//! Exact scalars, k-subset ranking and triples.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact scalar used for every Pluecker coordinate.
pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Colexicographic rank of a sorted 1-based subset.
pub fn rank(subset: &[usize]) -> usize {
    subset
        .iter()
        .enumerate()
        .map(|(i, &s)| binomial(s - 1, i + 1))
        .sum()
}

/// All k-subsets of [n] (1-based, sorted) in colex order, so that `rank(all[r]) == r`.
pub fn all_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut cur: Vec<usize> = (1..=k).collect();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    loop {
        out.push(cur.clone());
        // colex successor: bump the lowest position that can move
        let mut i = 0;
        while i < k {
            let limit = if i + 1 < k { cur[i + 1] } else { n + 1 };
            if cur[i] + 1 < limit {
                cur[i] += 1;
                for (j, slot) in cur.iter_mut().enumerate().take(i) {
                    *slot = j + 1;
                }
                break;
            }
            i += 1;
        }
        if i == k {
            return out;
        }
    }
}

/// Reduce `i` into 1..=n cyclically.
pub fn cyc(i: i64, n: usize) -> usize {
    let n = n as i64;
    (((i - 1) % n + n) % n + 1) as usize
}

/// Cyclic interval [a, b] of [n], listed from a.
pub fn cyclic_interval(a: usize, b: usize, n: usize) -> Vec<usize> {
    let mut out = vec![a];
    let mut x = a;
    while x != b {
        x = cyc(x as i64 + 1, n);
        out.push(x);
    }
    out
}

/// Three distinct indices, stored increasing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 3]", into = "[usize; 3]")]
pub struct Triple([usize; 3]);

impl Triple {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == 0 || v[0] == v[1] || v[1] == v[2] {
            return Err(Error::NotASubset(v.to_vec(), 0));
        }
        Ok(Triple(v))
    }

    /// Panicking constructor for literals.
    pub fn of(a: usize, b: usize, c: usize) -> Self {
        Self::new(a, b, c).expect("distinct positive indices")
    }

    pub fn from_slice(s: &[usize]) -> Result<Self> {
        match s {
            [a, b, c] => Self::new(*a, *b, *c),
            _ => Err(Error::NotASubset(s.to_vec(), 0)),
        }
    }

    pub fn get(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(&x)
    }

    pub fn max(&self) -> usize {
        self.0[2]
    }

    /// A triple is cyclic when it is a cyclic interval of [n].
    pub fn is_cyclic(&self, n: usize) -> bool {
        (1..=n).any(|i| {
            let mut w = [i, cyc(i as i64 + 1, n), cyc(i as i64 + 2, n)];
            w.sort_unstable();
            w == self.0
        })
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        if self.0[2] > n {
            return Err(Error::NotASubset(self.0.to_vec(), n));
        }
        Ok(())
    }

    /// Parse "146" (single digits) or "1.4.10" / "1 4 10" style.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let parts: Vec<&str> = s
            .split(|c: char| matches!(c, '.' | ' ' | ',' | ':'))
            .filter(|p| !p.is_empty())
            .collect();
        let nums: Vec<usize> = if parts.len() == 1 && s.len() == 3 {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Parse(format!("bad triple {s:?}")))?
        } else {
            parts
                .iter()
                .map(|p| p.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("bad triple {s:?}")))?
        };
        Self::from_slice(&nums).map_err(|_| Error::Parse(format!("bad triple {s:?}")))
    }

    pub fn non_cyclic(n: usize) -> Vec<Triple> {
        all_triples(n).into_iter().filter(|t| !t.is_cyclic(n)).collect()
    }
}

pub fn all_triples(n: usize) -> Vec<Triple> {
    all_subsets(n, 3)
        .into_iter()
        .map(|s| Triple([s[0], s[1], s[2]]))
        .collect()
}

impl TryFrom<[usize; 3]> for Triple {
    type Error = Error;
    fn try_from(v: [usize; 3]) -> Result<Self> {
        Triple::new(v[0], v[1], v[2])
    }
}

impl From<Triple> for [usize; 3] {
    fn from(t: Triple) -> Self {
        t.0
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        if c < 10 {
            write!(f, "{a}{b}{c}")
        } else {
            write!(f, "{a},{b},{c}")
        }
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{self}")
    }
}

/// Render an exact value as "p" or "p/q".
pub fn q_to_string(x: &Q) -> String {
    if *x.denom() == 1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_parse(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    if let Some((p, d)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Q::new(p, d))
    } else if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ipv: i64 = if ip == "-" || ip.is_empty() { 0 } else { ip.parse().map_err(|_| bad())? };
        let scale = 10i64.checked_pow(fp.len() as u32).ok_or_else(bad)?;
        let fv: i64 = if fp.is_empty() { 0 } else { fp.parse().map_err(|_| bad())? };
        let frac = Q::new(fv, scale);
        Ok(if neg { q(ipv) - frac } else { q(ipv) + frac })
    } else {
        Ok(q(s.parse().map_err(|_| bad())?))
    }
}
