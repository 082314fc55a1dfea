use scaffolds::cat0::validate_cat0;
use scaffolds::io::parse_graph;
use scaffolds::subsets::all_triples;
use scaffolds::LabeledGraph;

fn load(name: &str) -> LabeledGraph {
    let path = format!("{}/../../data/{name}.json", env!("CARGO_MANIFEST_DIR"));
    parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn vertex(name: &str, names: &[&str]) -> usize {
    names.iter().position(|x| *x == name).unwrap()
}

const Q1: [&str; 10] = ["z1", "z2", "z3", "z4", "z5", "z6", "u", "v", "x", "y"];

#[test]
fn q1_distances_and_minimizers() {
    let g = load("q1");
    assert!(validate_cat0(g.map()).is_valid());
    let (v, x) = (vertex("v", &Q1), vertex("x", &Q1));
    let dv: Vec<u32> = [1, 2, 4].iter().map(|&i| g.delta(v, g.z(i))).collect();
    let dx: Vec<u32> = [1, 2, 4].iter().map(|&i| g.delta(x, g.z(i))).collect();
    assert_eq!(dv, [2, 3, 3]);
    assert_eq!(dx, [1, 2, 2]);
    let (sum, arg) = g.fermat_le(&[1, 2, 4]);
    assert_eq!(sum, 5);
    assert!(arg.contains(&x) && !arg.contains(&v));
}

#[test]
fn q1_focal_points() {
    let g = load("q1");
    let (v, x) = (vertex("v", &Q1), vertex("x", &Q1));
    assert!(g.is_focal(x, [1, 2, 4]).unwrap());
    assert!(!g.is_focal(v, [1, 2, 4]).unwrap());
    assert!(g.is_parallel(v, g.z(1), g.z(2)).unwrap());
    use scaffolds::cat0::{FSet, Neighbor};
    match g.f_set(x, g.z(4)).unwrap() {
        FSet::Pair(a, b) => {
            assert_eq!(a, Neighbor::Vertex(v));
            assert!(matches!(b, Neighbor::Virtual { .. }));
        }
        other => panic!("{other:?}"),
    }
    for t in all_triples(6) {
        let mut focal = g.focal_points(t.get()).unwrap();
        focal.sort();
        assert_eq!(focal, g.fermat_le(&t.get()).1, "triple {t}");
    }
}

#[test]
fn q1_classification() {
    let g = load("q1");
    let c = g.classify().unwrap();
    assert!(c.simple && c.ccw_boundary && c.ccw_labeled && c.normal);
    let s = g.scaffold_check().unwrap();
    assert!(s.strong, "{s:?}");
    assert!(g.modified_pluecker().is_ok());
}

fn expansion(g: &LabeledGraph) -> String {
    scaffolds::pluecker::format_expansion(&scaffolds::pluecker::support(&scaffolds::pluecker::canonical_form(
        &g.pluecker(),
    )))
}

#[test]
fn hexagon_models() {
    use scaffolds::pluecker::{check_positive, check_tropical, equal_mod_lineality};
    use scaffolds::{PlueckerVector, Triple};
    let g7 = load("hexagon7");
    assert!(validate_cat0(g7.map()).is_valid());
    let p7 = g7.pluecker();
    assert!(check_tropical(&p7).unwrap());
    assert!(!check_positive(&p7).unwrap());
    let s = g7.scaffold_check().unwrap();
    assert!(s.weak);
    let g6 = load("hexagon6");
    let p6 = g6.pluecker();
    assert!(check_positive(&p6).unwrap());
    let printed = PlueckerVector::from_e_terms(6, &[(Triple::of(2, 3, 4), 1), (Triple::of(4, 5, 6), 1), (Triple::of(1, 2, 6), 1)]);
    assert!(equal_mod_lineality(&p6, &printed), "{}", expansion(&g6));
    let c = g6.classify().unwrap();
    assert!(!c.normal && !c.ccw_boundary);
}

#[test]
fn normal_model_of_hexagon_point() {
    use scaffolds::pluecker::equal_mod_lineality;
    let g = load("normal36");
    assert!(validate_cat0(g.map()).is_valid());
    let c = g.classify().unwrap();
    assert!(c.normal && c.cyclic_less && c.simple, "{c:?}");
    // the right panel models the caption vector, a cyclic rotation of the middle panel's vector
    let e = |a, b, c| (scaffolds::Triple::of(a, b, c), 1);
    let caption = scaffolds::PlueckerVector::from_e_terms(6, &[e(1, 2, 3), e(3, 4, 5), e(1, 5, 6)]);
    assert!(equal_mod_lineality(&g.pluecker(), &caption));
    assert!(!equal_mod_lineality(&g.pluecker(), &load("hexagon6").pluecker()));
    assert!(g.scaffold_check().unwrap().strong);
}

#[test]
fn gr36_ray_scaffolds() {
    for (file, printed) in [
        ("ray36_146", "h146"),
        ("ray36_136", "h136"),
        ("ray36_246", "h246"),
        ("ray36_mixed", "h136 - h135 + h145 + h235"),
    ] {
        let g = load(file);
        assert!(validate_cat0(g.map()).is_valid());
        let got = expansion(&g);
        let want = scaffolds::pluecker::parse_expansion(printed).unwrap();
        let got_terms = scaffolds::pluecker::parse_expansion(&got).unwrap();
        let sort = |mut v: Vec<(scaffolds::Triple, scaffolds::Q)>| {
            v.sort();
            v
        };
        assert_eq!(sort(got_terms), sort(want), "{file}: {got}");
    }
}

#[test]
fn non_simple_graph() {
    let g = load("notsimple");
    assert!(validate_cat0(g.map()).is_valid(), "{:?}", validate_cat0(g.map()));
    let c = g.classify().unwrap();
    assert!(!c.simple);
    assert_eq!(c.cut_edges.len(), 1);
}

#[test]
fn tree_scaffold_k2() {
    use std::collections::BTreeSet;
    const T: [&str; 5] = ["z1", "v", "z3", "z4", "z6"];
    let g = load("tree7");
    assert!(scaffolds::pluecker::check_tropical(&g.pluecker()).unwrap());
    for i in 1..=7 {
        for j in i + 1..=7 {
            assert_eq!(g.fermat_le(&[i, j]).0, g.delta(g.z(i), g.z(j)));
        }
    }
    let pairs = |f: &dyn Fn(usize, usize) -> bool| -> BTreeSet<Vec<usize>> {
        (1..=7).flat_map(|i| (i + 1..=7).map(move |j| (i, j))).filter(|&(i, j)| f(i, j)).map(|(i, j)| vec![i, j]).collect()
    };
    let meets = |a: &'static [usize]| move |i: usize, j: usize| a.contains(&i) || a.contains(&j);
    assert_eq!(g.matroid_mv(vertex("z1", &T)), pairs(&meets(&[1, 2])));
    assert_eq!(g.matroid_mv(vertex("z4", &T)), pairs(&meets(&[4, 5])));
    assert_eq!(g.matroid_mv(vertex("z6", &T)), pairs(&meets(&[6, 7])));
    assert_eq!(g.matroid_mv(vertex("v", &T)), pairs(&|i, j| i <= 2 && j >= 3));
    assert_eq!(g.matroid_mv(vertex("z3", &T)), pairs(&|i, j| ![(1, 2), (4, 5), (6, 7)].contains(&(i, j))));
    let b = |name: &str| (1..=7).map(|i| g.delta(vertex(name, &T), g.z(i))).collect::<Vec<_>>();
    assert_eq!(b("z1"), [0, 0, 2, 3, 3, 3, 3]);
    assert_eq!(b("v"), [1, 1, 1, 2, 2, 2, 2]);
    assert_eq!(b("z3"), [2, 2, 0, 1, 1, 1, 1]);
    assert!(g.scaffold_check().unwrap().strong);
}
