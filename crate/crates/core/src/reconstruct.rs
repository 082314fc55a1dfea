//! From an integer positive tropical Pluecker vector back to its normal model, plus the
//! exhaustive round-trip and ray-table verifiers.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::cat0::LabeledGraph;
use crate::error::{Error, Result};
use crate::io::parse_graph;
use crate::nc::{enumerate_tableaux, nc_decompose, t_sum, tymoczko_web, NcTableau};
use crate::pluecker::{canonical_form, check_positive, psi_of_form, psi_project, support, PlueckerVector};
use crate::subsets::{all_subsets, Triple, Q};
use crate::web::Web;

/// Every stage of the reconstruction.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub tableau: NcTableau,
    pub web: Web,
    pub graph: LabeledGraph,
}

/// Psi, decomposition, web and dual graph, with the result checked against the input.
pub fn reconstruct(pi: &PlueckerVector) -> Result<Reconstruction> {
    if pi.k() != 3 {
        return Err(Error::InvalidGraph(format!("expected 3-subsets, got k = {}", pi.k())));
    }
    if !check_positive(pi)? {
        return Err(Error::NotPositive);
    }
    let u = canonical_form(pi);
    let m = psi_of_form(&u, pi.n())?;
    let tableau = nc_decompose(&m)?;
    let web = tymoczko_web(&tableau)?;
    let graph = web.dual_graph()?;
    let c = graph.classify()?;
    if !(c.normal && c.cyclic_less) {
        return Err(Error::Invariant(format!("model of {tableau} is not normal and cyclic-less")));
    }
    if canonical_form(&graph.pluecker()) != u {
        return Err(Error::Invariant(format!("model of {tableau} does not reproduce the input")));
    }
    Ok(Reconstruction { tableau, web, graph })
}

/// The unique cyclic-less normal scaffold of `pi`.
pub fn normal_model(pi: &PlueckerVector) -> Result<LabeledGraph> {
    reconstruct(pi).map(|r| r.graph)
}

/// Orientation-preserving canonical code of a connected labeled planar map: the minimum over
/// all root darts of a breadth-first walk that reads each rotation from the entry dart.
pub fn canonical_code(g: &LabeledGraph) -> Vec<usize> {
    let m = g.map();
    let labels = |num: &[usize]| (1..=g.n()).map(|i| num[g.z(i)]).collect::<Vec<_>>();
    if m.num_darts() == 0 {
        let mut code = vec![m.num_vertices()];
        code.extend(labels(&vec![0; m.num_vertices()]));
        return code;
    }
    (0..m.num_darts())
        .map(|root| {
            let mut num = vec![usize::MAX; m.num_vertices()];
            let mut queue = VecDeque::from([(m.origin(root), root)]);
            num[m.origin(root)] = 0;
            let mut next = 1;
            let mut code = vec![m.num_vertices()];
            while let Some((v, entry)) = queue.pop_front() {
                let rot = m.rotation(v);
                let at = rot.iter().position(|&d| d == entry).expect("entry dart at its origin");
                code.push(rot.len());
                for s in 0..rot.len() {
                    let d = rot[(at + s) % rot.len()];
                    let t = m.target(d);
                    if num[t] == usize::MAX {
                        num[t] = next;
                        next += 1;
                        queue.push_back((t, m.twin(d)));
                    }
                    code.extend([num[t], m.is_forward(d) as usize, m.is_outer(d) as usize]);
                }
            }
            code.extend(labels(&num));
            code
        })
        .min()
        .expect("at least one dart")
}

/// Labeled planar maps related by an orientation-preserving isomorphism.
pub fn isomorphic(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    a.n() == b.n() && a.num_vertices() == b.num_vertices() && canonical_code(a) == canonical_code(b)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RoundtripReport {
    pub n: usize,
    pub max_weight: usize,
    /// Number of tableaux checked, indexed by weight.
    pub counts: Vec<usize>,
    pub failures: Vec<String>,
}

impl RoundtripReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check tableau -> t-sum -> decomposition and tableau -> web -> graph -> Psi on every
/// cyclic-less noncrossing tableau of weight at most `max_weight`.
pub fn roundtrip_all(n: usize, max_weight: usize) -> RoundtripReport {
    let mut report = RoundtripReport { n, max_weight, ..Default::default() };
    for w in 0..=max_weight {
        let all = enumerate_tableaux(n, w);
        report.counts.push(all.len());
        for j in all {
            if let Err(e) = roundtrip_one(&j) {
                report.failures.push(format!("{j}: {e}"));
            }
        }
    }
    report
}

fn roundtrip_one(j: &NcTableau) -> Result<()> {
    let m = t_sum(j);
    let back = nc_decompose(&m)?;
    if &back != j {
        return Err(Error::Invariant(format!("decomposed to {back}")));
    }
    let g = tymoczko_web(j)?.dual_graph()?;
    let c = g.classify()?;
    if !(c.normal && c.cyclic_less) {
        return Err(Error::Invariant("model is not normal and cyclic-less".into()));
    }
    let psi = psi_project(&g.pluecker())?;
    if psi != m {
        return Err(Error::Invariant(format!("Psi of the model is {psi:?}, t-sum is {m:?}")));
    }
    Ok(())
}

/// The vector with labels moved forward by `s`: the value at I + s is the old value at I.
pub fn rotate(pi: &PlueckerVector, s: usize) -> PlueckerVector {
    let n = pi.n();
    PlueckerVector::from_fn(n, pi.k(), |i| {
        let mut back: Vec<usize> = i.iter().map(|&x| (x + n - 1 + n - s % n) % n + 1).collect();
        back.sort_unstable();
        pi.get(&back)
    })
}

/// One tabulated ray: its expansion and, when tabulated, its tableau.
#[derive(Clone, Debug, Serialize)]
pub struct Ray {
    pub weight: usize,
    pub expansion: BTreeMap<String, String>,
    pub tableau: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RayReport {
    pub n: usize,
    /// Verified ray count per NC weight.
    pub counts: BTreeMap<usize, usize>,
    /// Machine-enumerated counts that are recorded but not checked against the table.
    pub observed: BTreeMap<String, usize>,
    pub rays: Vec<Ray>,
    pub failures: Vec<String>,
}

impl RayReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn h_vector(n: usize, terms: &[(i64, [usize; 3])]) -> Result<PlueckerVector> {
    let t: Vec<(Triple, Q)> = terms
        .iter()
        .map(|&(c, [a, b, d])| Ok((Triple::new(a, b, d)?, Q::from_integer(c))))
        .collect::<Result<_>>()?;
    PlueckerVector::from_h_terms(n, &t)
}

/// Ray checks: positivity, reconstruction, and agreement with a tabulated tableau.
fn check_ray(pi: &PlueckerVector, expected: Option<&NcTableau>, report: &mut RayReport) -> Option<Reconstruction> {
    let r = match reconstruct(pi) {
        Ok(r) => r,
        Err(e) => {
            report.failures.push(format!("{}: {e}", crate::pluecker::format_expansion(&support(&canonical_form(pi)))));
            return None;
        }
    };
    if let Some(j) = expected {
        if &r.tableau != j {
            report.failures.push(format!("expected tableau {j}, decomposed to {}", r.tableau));
        }
    }
    let w = r.tableau.weight();
    *report.counts.entry(w).or_default() += 1;
    report.rays.push(Ray {
        weight: w,
        expansion: support(&canonical_form(pi)).into_iter().map(|(t, c)| (t.to_string(), c.to_string())).collect(),
        tableau: r.tableau.to_string(),
    });
    Some(r)
}

fn seven_gon_rays(report: &mut RayReport) -> Result<Vec<PlueckerVector>> {
    let n = 7;
    let mut out = Vec::new();
    for t in Triple::non_cyclic(n) {
        let [a, b, c] = t.get();
        let pi = h_vector(n, &[(1, [a, b, c])])?;
        check_ray(&pi, Some(&NcTableau::new(n, vec![t])?), report);
        out.push(pi);
    }
    for s in all_subsets(n, 6) {
        let j = |i: usize| s[i - 1];
        let first = h_vector(
            n,
            &[(-1, [j(1), j(3), j(5)]), (1, [j(2), j(3), j(5)]), (1, [j(1), j(4), j(5)]), (1, [j(1), j(3), j(6)])],
        )?;
        let first_t = NcTableau::new(n, vec![Triple::new(j(1), j(4), j(5))?, Triple::new(j(2), j(3), j(6))?])?;
        let second = h_vector(
            n,
            &[(-1, [j(2), j(4), j(6)]), (1, [j(1), j(2), j(4)]), (1, [j(2), j(5), j(6)]), (1, [j(3), j(4), j(6)])],
        )?;
        let second_t = NcTableau::new(n, vec![Triple::new(j(1), j(2), j(4))?, Triple::new(j(3), j(5), j(6))?])?;
        check_ray(&first, Some(&first_t), report);
        check_ray(&second, Some(&second_t), report);
        out.extend([first, second]);
    }
    Ok(out)
}

/// The two orbit representatives of weight-three rays on eight labels.
pub fn eight_gon_orbit_representatives() -> Result<[PlueckerVector; 2]> {
    let tail = [(1, [1, 5, 6]), (-1, [1, 3, 7]), (1, [2, 3, 7]), (1, [1, 4, 7]), (1, [1, 3, 8])];
    let mut a = vec![(-1, [1, 4, 6]), (1, [2, 4, 6])];
    let mut b = vec![(-1, [1, 4, 6]), (1, [3, 4, 6])];
    a.extend(tail);
    b.extend(tail);
    Ok([h_vector(8, &a)?, h_vector(8, &b)?])
}

/// The printed normal models of the two orbit representatives.
pub fn eight_gon_models() -> Result<[LabeledGraph; 2]> {
    Ok([
        parse_graph(include_str!("../../../data/ray38_a.json"))?,
        parse_graph(include_str!("../../../data/ray38_b.json"))?,
    ])
}

fn eight_gon_rays(report: &mut RayReport) -> Result<Vec<PlueckerVector>> {
    let n = 8;
    let mut out = Vec::new();
    for t in Triple::non_cyclic(n) {
        let [a, b, c] = t.get();
        let pi = h_vector(n, &[(1, [a, b, c])])?;
        check_ray(&pi, Some(&NcTableau::new(n, vec![t])?), report);
        out.push(pi);
    }
    let reps = eight_gon_orbit_representatives()?;
    let models = eight_gon_models()?;
    for (rep, model) in reps.iter().zip(&models) {
        if let Some(r) = check_ray(rep, None, report) {
            if !isomorphic(&r.graph, model) {
                report.failures.push(format!("normal model of {} differs from the printed one", r.tableau));
            }
        }
        for s in 1..n {
            let pi = rotate(rep, s);
            check_ray(&pi, None, report);
            out.push(pi);
        }
        out.push(rep.clone());
    }
    // weight-two candidates are only counted: the table does not pin them down
    let forms: BTreeSet<_> = enumerate_tableaux(n, 2)
        .iter()
        .filter_map(|j| tymoczko_web(j).and_then(|w| w.dual_graph()).ok())
        .filter(|g| check_positive(&g.pluecker()).unwrap_or(false))
        .map(|g| canonical_form(&g.pluecker()))
        .collect();
    report.observed.insert("weight-two tableaux (positive, distinct)".into(), forms.len());
    Ok(out)
}

/// Rebuild the tabulated rays for `n` = 7 or 8 and check them.
pub fn verify_ray_tables(n: usize) -> Result<RayReport> {
    let mut report = RayReport { n, ..Default::default() };
    let rays = match n {
        7 => seven_gon_rays(&mut report)?,
        8 => eight_gon_rays(&mut report)?,
        _ => return Err(Error::InvalidGraph(format!("ray tables exist for n = 7 and 8, not {n}"))),
    };
    let distinct: BTreeSet<_> = rays.iter().map(canonical_form).collect();
    if distinct.len() != rays.len() {
        report.failures.push(format!("{} rays but {} distinct classes", rays.len(), distinct.len()));
    }
    let expected: &[(usize, usize)] = if n == 7 { &[(1, 28), (2, 14)] } else { &[(1, 48), (3, 16)] };
    for &(w, c) in expected {
        let got = report.counts.get(&w).copied().unwrap_or(0);
        if got != c {
            report.failures.push(format!("weight {w}: {got} rays, table lists {c}"));
        }
    }
    Ok(report)
}
