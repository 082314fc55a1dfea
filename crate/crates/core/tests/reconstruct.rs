use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use scaffolds::gen::random_labeled;
use scaffolds::io::parse_graph;
use scaffolds::pluecker::{canonical_form, lineality_apply, LinealityShift};
use scaffolds::reconstruct::{
    eight_gon_models, eight_gon_orbit_representatives, isomorphic, normal_model, reconstruct, rotate, roundtrip_all,
    verify_ray_tables,
};
use scaffolds::{LabeledGraph, PlueckerVector, Q};

fn load(name: &str) -> LabeledGraph {
    let path = format!("{}/../../data/{name}.json", env!("CARGO_MANIFEST_DIR"));
    parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn zero_vector_gives_a_single_vertex() {
    let g = normal_model(&PlueckerVector::zero(6, 3)).unwrap();
    assert_eq!(g.num_vertices(), 1);
    assert!((1..=6).all(|i| g.z(i) == 0));
}

#[test]
fn gr36_figures_are_their_own_models() {
    for name in ["ray36_146", "ray36_136", "ray36_246", "ray36_mixed", "normal36"] {
        let g = load(name);
        let m = normal_model(&g.pluecker()).unwrap();
        assert!(isomorphic(&m, &g), "{name}");
    }
}

#[test]
fn isomorphism_sees_labels_and_orientation() {
    let a = load("ray36_146");
    let b = load("ray36_136");
    assert!(isomorphic(&a, &a));
    assert!(!isomorphic(&a, &b));
}

#[test]
fn random_normal_graphs_are_recovered() {
    let mut rng = StdRng::seed_from_u64(17);
    let mut checked = 0;
    for _ in 0..4000 {
        let n = rng.gen_range(4..=9);
        let g = random_labeled(&mut rng, 12, n, true);
        let c = g.classify().unwrap();
        if !(c.normal && c.cyclic_less) {
            continue;
        }
        let pi = g.pluecker();
        let m = normal_model(&pi).unwrap();
        assert!(isomorphic(&m, &g), "graph with {} vertices on {n} labels", g.num_vertices());
        // lineality shifts do not move the model
        let x = LinealityShift((0..n).map(|_| Q::from_integer(rng.gen_range(-3..=3))).collect());
        let shifted = normal_model(&lineality_apply(&pi, &x).unwrap()).unwrap();
        assert!(isomorphic(&shifted, &m));
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} normal graphs sampled");
}

#[test]
fn exhaustive_round_trips() {
    for (n, w) in [(4, 3), (5, 3), (6, 3), (7, 3)] {
        let r = roundtrip_all(n, w);
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!(r.counts[0], 1);
    }
}

#[test]
fn seven_label_rays() {
    let r = verify_ray_tables(7).unwrap();
    assert!(r.ok(), "{:?}", r.failures);
    assert_eq!(r.counts.get(&1), Some(&28));
    assert_eq!(r.counts.get(&2), Some(&14));
}

#[test]
fn eight_label_rays() {
    let r = verify_ray_tables(8).unwrap();
    assert!(r.ok(), "{:?}", r.failures);
    assert_eq!(r.counts.get(&1), Some(&48));
    assert_eq!(r.counts.get(&3), Some(&16));
}

#[test]
fn eight_label_orbit_models() {
    let reps = eight_gon_orbit_representatives().unwrap();
    let models = eight_gon_models().unwrap();
    for (pi, model) in reps.iter().zip(&models) {
        assert_eq!(canonical_form(&model.pluecker()), canonical_form(pi));
        let r = reconstruct(pi).unwrap();
        assert_eq!(r.tableau.weight(), 3);
        assert!(isomorphic(&r.graph, model));
    }
    assert_ne!(canonical_form(&rotate(&reps[0], 3)), canonical_form(&reps[0]));
    assert_eq!(canonical_form(&rotate(&reps[0], 8)), canonical_form(&reps[0]));
}
