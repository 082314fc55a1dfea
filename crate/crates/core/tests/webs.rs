use std::collections::BTreeMap;

use scaffolds::pluecker::{canonical_form, support};
use scaffolds::web::{parse_web, Web};
use scaffolds::{LabeledGraph, Triple};

fn load(name: &str) -> Web {
    let path = format!("{}/../../data/{name}.json", env!("CARGO_MANIFEST_DIR"));
    parse_web(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn terms(list: &[(usize, usize, usize, i64)]) -> BTreeMap<Triple, i64> {
    list.iter().map(|&(a, b, c, s)| (Triple::of(a, b, c), s)).collect()
}

fn graph_expansion(g: &LabeledGraph) -> BTreeMap<Triple, i64> {
    support(&canonical_form(&g.pluecker())).into_iter().map(|(t, c)| (t, c.to_integer())).collect()
}

/// The dual vertex for the octagonal face: the only one of degree 8.
fn octagon_center(g: &LabeledGraph) -> usize {
    let c: Vec<usize> = (0..g.num_vertices()).filter(|&v| g.map().degree(v) == 8).collect();
    assert_eq!(c.len(), 1);
    c[0]
}

/// The printed example numbers the labels one step behind the drawn web:
/// its z_i is the drawn web's z_{i+1}.
fn example_labels(g: &LabeledGraph) -> LabeledGraph {
    let n = g.n();
    let labels = (0..n).map(|i| g.labels()[(i + 1) % n]).collect();
    LabeledGraph::new(g.map().clone(), labels).unwrap()
}

fn printed_expansion() -> BTreeMap<Triple, i64> {
    terms(&[
        (3, 4, 7, 1),
        (1, 4, 12, 1),
        (6, 7, 10, 1),
        (1, 9, 10, 1),
        (2, 4, 11, 1),
        (2, 5, 7, 1),
        (5, 8, 10, 1),
        (1, 8, 11, 1),
        (1, 4, 11, -1),
        (1, 8, 10, -1),
        (2, 4, 7, -1),
        (5, 7, 10, -1),
    ])
}

fn shift_up(m: &BTreeMap<Triple, i64>, n: usize) -> BTreeMap<Triple, i64> {
    m.iter()
        .map(|(t, &c)| {
            let [a, b, d] = t.get().map(|x| x % n + 1);
            (Triple::new(a, b, d).unwrap(), c)
        })
        .collect()
}

#[test]
fn twelve_gon_web_expansion() {
    let w = load("web_12gon");
    let f = w.flags().unwrap();
    assert!(f.standard && f.normal && f.cyclic_less, "{f:?}");
    // the bottom white vertex of the octagon has strand triple (3, 6, 8)
    let bottom = w.strand_triples().unwrap().into_iter().find(|t| t.vertex == 16).unwrap();
    assert_eq!(bottom.triple(), Some(Triple::of(3, 6, 8)));
    let exp = w.pb_expansion().unwrap();
    assert_eq!(exp, shift_up(&printed_expansion(), 12));
    let g = w.dual_graph().unwrap();
    assert!(scaffolds::cat0::validate_cat0(g.map()).is_valid());
    assert_eq!(graph_expansion(&g), exp);
    assert_eq!(graph_expansion(&example_labels(&g)), printed_expansion());
}

#[test]
fn twelve_gon_distances_and_membranes() {
    let g = example_labels(&load("web_12gon").dual_graph().unwrap());
    let v = octagon_center(&g);
    let c = g.default_coloring().unwrap();
    let cz: Vec<u32> = (1..=12).map(|i| c[g.z(i)] as u32).collect();
    assert_eq!(cz, [0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2]);
    let row = |x: usize| (1..=12).map(|i| g.delta(x, g.z(i))).collect::<Vec<_>>();
    assert_eq!(row(v), [3, 1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2]);
    assert_eq!(row(g.z(3)), [4, 2, 0, 1, 2, 3, 4, 2, 3, 4, 2, 3]);
    let mu = |x: usize| g.mu(x).unwrap();
    assert_eq!(mu(v), [1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0]);
    assert_eq!(mu(g.z(3)), [2, 1, 0, 1, 1, 1, 2, 1, 1, 2, 1, 1]);
    assert_eq!(mu(g.z(5)), [2, 1, 0, 1, 0, 0, 1, 1, 1, 2, 1, 1]);
    let diff: Vec<i64> = mu(g.z(3)).iter().zip(mu(v)).map(|(a, b)| a - b).collect();
    assert_eq!(diff, [1, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1]);
}

#[test]
fn hexagon_web_dual() {
    let w = load("web_hex");
    assert!(w.is_standard());
    let exp = w.pb_expansion().unwrap();
    let g = w.dual_graph().unwrap();
    assert!(scaffolds::cat0::validate_cat0(g.map()).is_valid());
    assert_eq!(graph_expansion(&g), exp);
    let back = Web::from_dual(&g).unwrap();
    assert_eq!(back.pb_expansion().unwrap(), exp);
}

#[test]
fn tripod_with_empty_boundary() {
    let w = load("web_tripod5");
    assert!(!w.is_standard());
    let s = w.standardize().unwrap();
    assert!(s.web.is_standard());
    assert_eq!(s.labels, [1, 3, 4]);
    assert_eq!(w.pb_expansion().unwrap(), terms(&[(1, 3, 4, 1)]));
}

#[test]
fn strands_cross_at_most_once() {
    for name in ["web_12gon", "web_hex"] {
        let w = load(name);
        let strands = w.strands().unwrap();
        for (i, a) in strands.iter().enumerate() {
            for b in &strands[i + 1..] {
                let shared = a.darts.iter().filter(|d| b.darts.contains(&(*d ^ 1)) || b.darts.contains(d)).count();
                assert!(shared <= 1, "{name}: strands {}→{} and {}→{} share {shared}", a.start, a.end, b.start, b.end);
            }
        }
    }
}

#[test]
fn dual_round_trip_on_random_graphs() {
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    let mut rng = StdRng::seed_from_u64(99);
    let mut checked = 0;
    for _ in 0..3000 {
        let g = scaffolds::gen::random_labeled(&mut rng, 10, 6, true);
        let Ok(w) = Web::from_dual(&g) else { continue };
        let Ok(exp) = w.pb_expansion() else { continue };
        assert_eq!(exp, graph_expansion(&g));
        checked += 1;
    }
    assert!(checked >= 10, "only {checked} graphs had ccw boundaries");
}


#[test]
fn octagon_facets() {
    use scaffolds::matroids::{facets_of_mv, is_positroid, Facet, Sense};
    let g = example_labels(&load("web_12gon").dual_graph().unwrap());
    let v = octagon_center(&g);
    let rep = facets_of_mv(&g, v).unwrap();
    assert!(rep.connected);
    let ge = |a, b, bound| Facet { interval: (a, b), bound, sense: Sense::Ge };
    let mut expected = vec![
        ge(2, 11, 2),
        ge(5, 2, 2),
        ge(8, 5, 2),
        ge(11, 8, 2),
        ge(5, 11, 1),
        ge(8, 2, 1),
        ge(11, 5, 1),
        ge(2, 8, 1),
    ];
    expected.sort();
    assert_eq!(rep.facets, expected);
    let mv = g.matroid_mv(v);
    for t in scaffolds::subsets::all_subsets(12, 3) {
        assert_eq!(mv.contains(&t), rep.facets.iter().all(|f| f.holds(&t, 12)), "{t:?}");
    }
    assert!(is_positroid(&mv.into_iter().collect(), 12).unwrap());
}

/// Push an expansion through a label substitution, with 0 standing for a label of its own.
fn substitute(m: &BTreeMap<Triple, i64>, to: &[usize]) -> BTreeMap<[usize; 3], i64> {
    let mut out = BTreeMap::new();
    for (t, &c) in m {
        let mut s = t.get().map(|x| to[x - 1]);
        s.sort_unstable();
        assert!(s[0] != s[1] && s[1] != s[2], "h{t} collapses");
        *out.entry(s).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

#[test]
fn cutting_an_edge_of_a_face_relabels_the_expansion() {
    let left = load("rsv_left");
    let right = load("rsv_right");
    for w in [&left, &right] {
        assert!(w.flags().unwrap().standard);
    }
    // right labels h1 c a' m c' b a p g2 g1 e h2 onto left labels h1 c b a p g2 g1 e h2
    let (c, b, a, m) = (2, 3, 4, 0);
    let to = [1, c, a, m, c, b, a, 5, 6, 7, 8, 9];
    let mut rhs = substitute(&right.pb_expansion().unwrap(), &to);
    *rhs.entry([m, c, a]).or_insert(0) -= 1;
    rhs.retain(|_, c| *c != 0);
    let lhs = substitute(&left.pb_expansion().unwrap(), &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
    assert_eq!(lhs, rhs);
    assert!(lhs.keys().all(|t| !t.contains(&m)));
    // the local terms: strands x = 7 and v = 8 run down the sides of the face
    assert_eq!((lhs[&[3, 4, 7]], lhs[&[2, 4, 7]], lhs[&[2, 4, 8]]), (1, -1, 1));
    let r = right.pb_expansion().unwrap();
    assert_eq!((r[&Triple::of(4, 5, 7)], r[&Triple::of(5, 7, 10)], r[&Triple::of(2, 3, 11)]), (1, -1, 1));
}

#[test]
fn graph_and_web_agree_on_cyclic_pairs() {
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    let mut rng = StdRng::seed_from_u64(41);
    let (mut normal, mut cyclic) = (0, 0);
    for i in 0..6000 {
        let n = 4 + i % 6;
        let g = scaffolds::gen::random_labeled(&mut rng, 12, n, true);
        let c = g.classify().unwrap();
        if !c.normal {
            continue;
        }
        let f = Web::from_dual(&g).unwrap().flags().unwrap();
        assert!(f.normal);
        assert_eq!(c.cyclic_less, f.cyclic_less, "labels {:?}", g.labels());
        normal += 1;
        cyclic += usize::from(!c.cyclic_less);
    }
    assert!(normal >= 50 && cyclic >= 5, "{normal} normal, {cyclic} cyclic");
}
