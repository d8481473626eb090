//! One test per acceptance criterion. Every equality is exact.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use webdimer::dimer::{check_plucker_relations, enumerate_matchings, plucker_vector, plucker_vector_with};
use webdimer::duality::{check_signed_permutation, crossingless_matchings, duality_matrix, sl3_basis_n6};
use webdimer::exact::{int, integer_rank, MultiPoly, Rational, Ring};
use webdimer::gallery;
use webdimer::graph::{top_cell_graph, Network, PlanarBipartiteGraph};
use webdimer::invariants::{
    dim_invariant_space, pair_rational, partial_evaluate, partial_evaluation_kernel, permute, plucker_monomials,
    positroid_subspace, sample_positivity, to_rational, verify_factorization_with, verify_welldefined,
    web_measurement, PluckerExpression,
};
use webdimer::moves::{compare_networks, spider_move};
use webdimer::random;
use webdimer::skein::{
    admissible_scenarios, bigon_identity, bivalent_identity, square_move_identity, tag_relation_checks, Closure,
};
use webdimer::tagged::{coherence_check, tag_from_matching};
use webdimer::weblike::{bold_value_table, enumerate_weblike, Invariant, LabelSpace, WeblikeSubgraph};

struct Criterion(u32, &'static str);

impl Drop for Criterion {
    fn drop(&mut self) {
        let verdict = if std::thread::panicking() { "FAIL" } else { "PASS" };
        println!("criterion {:02} {}: {verdict}", self.0, self.1);
    }
}

fn within(start: Instant, budget: Duration, what: &str) {
    let took = start.elapsed();
    println!("{what}: {:.3}s of {}s", took.as_secs_f64(), budget.as_secs());
    assert!(took < budget, "{what} took {took:?}");
}

fn colors(c: &[usize]) -> Vec<u8> {
    c.iter().map(|x| 1u8 << (x - 1)).collect()
}

#[test]
fn criterion_01_sl4_web_evaluation() {
    let _verdict = Criterion(1, "sl4 web evaluation");
    let start = Instant::now();
    let w = gallery::sl4_weblike();
    let web = tag_from_matching(&w, &gallery::sl4_matching()).unwrap();
    assert_eq!(web.evaluate(&colors(&[1, 2, 3, 4, 3, 2, 1, 4])).unwrap(), int(-1));
    within(start, Duration::from_secs(1), "sl4 evaluation");
}

fn sorted_weights(m: &[(WeblikeSubgraph, MultiPoly)]) -> Vec<String> {
    let mut out: Vec<String> = m.iter().map(|(_, w)| w.to_string()).collect();
    out.sort();
    out
}

#[test]
fn criterion_02_square_network_subgraphs() {
    let _verdict = Criterion(2, "square network subgraphs");
    let start = Instant::now();
    let m = web_measurement(&gallery::square_network(), 3, &[1; 6]).unwrap();
    assert_eq!(sorted_weights(&m.subgraphs), ["a*b*c*d*e*f", "a^2*c^2*e*f", "b^2*d^2*e*f"]);
    let moved = web_measurement(&gallery::square_network_moved(), 3, &[1; 6]).unwrap();
    assert_eq!(sorted_weights(&moved.subgraphs), ["a'*c'*e*f", "b'*d'*e*f"]);
    within(start, Duration::from_secs(1), "square network");
}

fn specialize(net: &Network, rng: &mut impl Rng) -> Network {
    let vals: HashMap<String, Rational> = net.variables().into_iter().map(|v| (v, random::weight(rng))).collect();
    net.specialize(&vals).unwrap()
}

#[test]
fn criterion_03_spider_move_invariance() {
    let _verdict = Criterion(3, "spider move invariance");
    let start = Instant::now();
    let square = gallery::square_network();
    let g = square.graph();
    let face = ["w_sw", "b_nw", "w_ne", "b_se"].map(|id| g.vertex_by_id(id).unwrap());
    let moved = gallery::square_network_moved();
    let mut rng = random::rng(3);
    for _ in 0..100 {
        let net = specialize(&square, &mut rng);
        let w = |id: &str| net.weight(g.edge_by_id(id).unwrap()).as_constant().unwrap();
        let det = w("a") * w("c") + w("b") * w("d");
        let mut vals = HashMap::new();
        vals.insert("e".to_string(), w("e3"));
        vals.insert("f".to_string(), w("e6"));
        for (x, y) in [("a'", "a"), ("b'", "b"), ("c'", "c"), ("d'", "d")] {
            vals.insert(x.to_string(), w(y) / &det);
        }
        let primed = moved.specialize(&vals).unwrap();
        let alpha = MultiPoly::constant(det);
        assert!(compare_networks(&net, &primed, &alpha).unwrap().passed());
        assert!(verify_welldefined(&net, &primed, &alpha, 3, &[1; 6]).unwrap().passed());
        let res = spider_move(&net, face).unwrap();
        assert_eq!(res.scalar, alpha);
        assert!(verify_welldefined(&net, &res.network, &alpha, 3, &[1; 6]).unwrap().passed());
    }
    within(start, Duration::from_secs(60), "move invariance");
}

#[test]
fn criterion_04_factorization_battery() {
    let _verdict = Criterion(4, "factorization battery");
    let start = Instant::now();
    let top = |k, n| Arc::new(top_cell_graph(k, n).unwrap());
    let battery: Vec<(Arc<PlanarBipartiteGraph>, usize, Vec<usize>)> = vec![
        (top(2, 5), 1, vec![1, 0, 1, 0, 0]),
        (top(3, 9), 1, vec![0, 1, 0, 0, 1, 1, 0, 0, 0]),
        (top(2, 4), 2, vec![1; 4]),
        (top(3, 6), 2, vec![1; 6]),
        (top(2, 5), 2, vec![2, 1, 0, 1, 0]),
        (top(2, 9), 2, vec![1, 0, 0, 1, 0, 1, 0, 0, 1]),
        (top(2, 6), 3, vec![1; 6]),
        (top(1, 4), 3, vec![1, 1, 0, 1]),
        (top(2, 7), 3, vec![1, 2, 0, 1, 1, 1, 0]),
        (gallery::square_network().graph_arc().clone(), 3, vec![1; 6]),
        (gallery::sl4_graph(), 3, vec![1, 1, 0, 1, 1, 0, 1, 1]),
    ];
    let mut rng = random::rng(4);
    for (g, r, lambda) in &battery {
        for _ in 0..20 {
            let w = random::weights(&mut rng, g.edges().len());
            let t = verify_factorization_with(g, &w, *r, lambda).unwrap();
            assert!(t.checked > 0);
            assert!(t.passed(), "r = {r}, lambda = {lambda:?}: {:?}", t.failures.first());
        }
    }
    within(start, Duration::from_secs(300), "factorization");
}

fn lambdas(n: usize, total: usize, cap: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=cap.min(total) {
        for mut rest in lambdas(n - 1, total - first, cap) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn coherent_everywhere(g: &Arc<PlanarBipartiteGraph>, r: usize, lambda: &[usize]) -> usize {
    let matchings = enumerate_matchings(g);
    let mut tested = 0;
    for w in enumerate_weblike(g, r, lambda).unwrap() {
        let inside: Vec<_> = matchings.iter().filter(|m| m.edges.iter().all(|&e| w.multiplicity(e) > 0)).collect();
        let mut webs: Vec<_> = inside.iter().take(3).map(|m| tag_from_matching(&w, &m.edges).unwrap()).collect();
        assert!(!webs.is_empty());
        if webs.len() < 2 {
            let e = webs[0].edges().iter().position(|e| e.tag.is_some()).unwrap();
            webs.push(webs[0].switch_tag(e).unwrap());
        }
        for web in &webs {
            let report = coherence_check(&w, web).unwrap();
            assert!(report.checked > 0);
            assert!(report.passed(), "{lambda:?}: {:?}", report.failures.first());
        }
        tested += 1;
    }
    tested
}

#[test]
fn criterion_05_sign_coherence() {
    let _verdict = Criterion(5, "sign coherence");
    let start = Instant::now();
    let g26 = Arc::new(top_cell_graph(2, 6).unwrap());
    let mut subgraphs = 0;
    for lambda in lambdas(6, 4, 2) {
        subgraphs += coherent_everywhere(&g26, 2, &lambda);
    }
    subgraphs += coherent_everywhere(&Arc::new(top_cell_graph(3, 6).unwrap()), 2, &[1; 6]);
    subgraphs += coherent_everywhere(gallery::square_network().graph_arc(), 3, &[1; 6]);
    let w = gallery::sl4_weblike();
    let matchings = enumerate_matchings(w.graph());
    let mut taggings = 0;
    for m in matchings.iter().filter(|m| m.edges.iter().all(|&e| w.multiplicity(e) > 0)) {
        let web = tag_from_matching(&w, &m.edges).unwrap();
        assert!(coherence_check(&w, &web).unwrap().passed());
        taggings += 1;
    }
    assert!(taggings >= 2, "{taggings}");
    println!("{subgraphs} weblike subgraphs, {taggings} taggings of the SL4 web");
    within(start, Duration::from_secs(300), "coherence");
}

#[test]
fn criterion_06_plucker_relations() {
    let _verdict = Criterion(6, "plucker relations");
    let start = Instant::now();
    let mut rng = random::rng(6);
    let mut graphs: Vec<PlanarBipartiteGraph> = Vec::new();
    for k in 1..=3 {
        for n in k + 1..=8 {
            graphs.push(top_cell_graph(k, n).unwrap());
        }
    }
    graphs.push(gallery::square_network().graph().clone());
    graphs.push(gallery::sl4_graph().as_ref().clone());
    let mut tested = 0;
    while tested < 120 {
        let g = &graphs[tested % graphs.len()];
        let p = plucker_vector_with(g, &random::weights(&mut rng, g.edges().len())).unwrap();
        assert!(p.k <= 3 && p.n <= 8);
        assert!(check_plucker_relations(&p), "k = {}, n = {}", p.k, p.n);
        tested += 1;
    }
    assert!(check_plucker_relations(&plucker_vector(&gallery::square_network()).unwrap()));
    within(start, Duration::from_secs(60), "plucker relations");
}

#[test]
fn criterion_07_skein_identities() {
    let _verdict = Criterion(7, "skein identities");
    let start = Instant::now();
    for r in 1..=4 {
        let scenarios = admissible_scenarios(r);
        assert!(!scenarios.is_empty());
        for sc in &scenarios {
            for closure in [Closure::Direct, Closure::Chain] {
                let rep = square_move_identity(sc, closure).unwrap();
                assert!(rep.passed(), "{sc:?} {closure:?}: {rep:?}");
            }
        }
        for a in 1..r {
            for b in 1..=r - a {
                assert!(bigon_identity(r, a, b).unwrap().passed(), "bigon {r} {a} {b}");
            }
            assert!(bivalent_identity(r, a).unwrap().passed(), "bivalent {r} {a}");
        }
        if r >= 2 {
            let t = tag_relation_checks(r).unwrap();
            assert!(t.passed(), "r = {r}: {t:?}");
        }
    }
    within(start, Duration::from_secs(600), "skein identities");
}

fn w39_tables() -> Vec<Invariant<i64>> {
    let p = positroid_subspace(&Arc::new(top_cell_graph(3, 9).unwrap()), 3, &[1; 9]).unwrap();
    assert_eq!(p.dimension, 42);
    p.tables
}

#[test]
fn criterion_08_dimensions() {
    let _verdict = Criterion(8, "dimensions");
    let start = Instant::now();
    for (r, k, n, expected) in [(2, 3, 6, 5), (3, 2, 6, 5), (2, 4, 8, 14), (4, 2, 8, 14), (3, 3, 9, 42)] {
        let ones = vec![1; n];
        assert_eq!(dim_invariant_space(r, &ones).unwrap(), expected, "W({r},{n})");
        let p = positroid_subspace(&Arc::new(top_cell_graph(k, n).unwrap()), r, &ones).unwrap();
        assert_eq!(p.dimension as u64, expected, "top cell rank for W({r},{n})");
        assert_eq!(integer_rank(&p.tables.iter().map(|t| t.values().to_vec()).collect::<Vec<_>>()), p.dimension);
    }
    within(start, Duration::from_secs(600), "dimensions");
}

#[test]
fn criterion_09_partial_evaluation() {
    let _verdict = Criterion(9, "partial evaluation");
    let start = Instant::now();
    let tables = w39_tables();
    let report = partial_evaluation_kernel(&tables, &[7, 8, 9]).unwrap();
    assert_eq!((report.source_rank, report.image_rank, report.kernel_dim), (42, 5, 37));
    let target = LabelSpace::new(2, &[1; 6]).unwrap();
    let matchings = crossingless_matchings(6).unwrap();
    let restrict = |x: &Invariant<i64>| -> Vec<i64> {
        target
            .labels()
            .iter()
            .map(|s| {
                let mut full = s.clone();
                full.extend([0, 0, 0]);
                x.value(&full)
            })
            .collect()
    };
    let images: Vec<Vec<i64>> =
        tables.iter().map(|t| restrict(&partial_evaluate(t, &[7, 8, 9]).unwrap())).collect();
    let mut rows: Vec<Vec<i64>> = matchings
        .elements
        .iter()
        .map(|(_, x)| x.values().iter().map(|v| webdimer::exact::to_i64(v).unwrap()).collect())
        .collect();
    assert_eq!(integer_rank(&images), 5);
    rows.extend(images);
    assert_eq!(integer_rank(&rows), 5);
    within(start, Duration::from_secs(900), "partial evaluation");
}

#[test]
fn criterion_10_duality_matrix() {
    let _verdict = Criterion(10, "duality matrix");
    let start = Instant::now();
    let m = duality_matrix(&crossingless_matchings(6).unwrap(), &sl3_basis_n6().unwrap()).unwrap();
    assert_eq!((m.rows(), m.cols()), (5, 5));
    assert!(check_signed_permutation(&m), "{m:?}");
    within(start, Duration::from_secs(60), "duality");
}

#[test]
fn criterion_11_twist() {
    let _verdict = Criterion(11, "twist");
    let start = Instant::now();
    let mut rng = random::rng(11);
    let mut tested = 0;
    for (r, k) in [(3, 2), (2, 3)] {
        let space = LabelSpace::new(r, &[1; 6]).unwrap();
        let g = Arc::new(top_cell_graph(k, 6).unwrap());
        let tables: Vec<Invariant<Rational>> =
            enumerate_weblike(&g, r, &[1; 6]).unwrap().iter().map(|w| to_rational(&bold_value_table(w, &space))).collect();
        let monomials = plucker_monomials(r, k, 6, &[1; 6]);
        for _ in 0..30 {
            let mut x = Invariant::<Rational>::zero(space.clone());
            for t in &tables {
                x.add_scaled(t, &int(rng.gen_range(-5..=5)));
            }
            let mut f = PluckerExpression::new(r, k, 6);
            for m in &monomials {
                f.add_term(m.clone(), int(rng.gen_range(-3..=3)));
            }
            let mut sigma: Vec<usize> = (1..=6).collect();
            for i in (1..6).rev() {
                sigma.swap(i, rng.gen_range(0..=i));
            }
            let lhs = pair_rational(&permute(&x, &sigma).unwrap(), &f.permute(&sigma)).unwrap();
            let sign = int(webdimer::exact::perm_sign(&sigma));
            assert_eq!(lhs, pair_rational(&x, &f).unwrap().times(&sign), "{sigma:?}");
            tested += 1;
        }
    }
    assert!(tested >= 50);
    within(start, Duration::from_secs(60), "twist");
}

#[test]
fn criterion_12_positivity_exploration() {
    let _verdict = Criterion(12, "positivity exploration");
    let start = Instant::now();
    let webs: Vec<Invariant<Rational>> = w39_tables().iter().map(to_rational).collect();
    let report = sample_positivity(&webs, 1000, 12).unwrap();
    assert_eq!(report.matrices, 1000);
    assert_eq!(report.evaluations, 42 * 1000);
    if report.counterexamples.is_empty() {
        println!("positivity: no counterexample found in {} evaluations", report.evaluations);
    } else {
        println!("positivity: {} sign changes found, first at web {}", report.counterexamples.len(), report.counterexamples[0].0);
    }
    println!("positivity sampling: {:.3}s", start.elapsed().as_secs_f64());
}
