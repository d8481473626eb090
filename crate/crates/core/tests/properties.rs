use std::collections::HashMap;
use std::sync::Arc;

use proptest::prelude::*;

use webdimer::dimer::{check_plucker_relations, plucker_vector_with};
use webdimer::exact::{
    format_rational, matrix_rank, matrix_solve, perm_sign, rat, ExactMatrix, Monomial, MultiPoly, Rational,
};
use webdimer::gallery;
use webdimer::graph::{parse_network, serialize_network, top_cell_graph, Network};
use webdimer::invariants::{dim_invariant_space, verify_factorization_with};
use webdimer::moves::{compare_networks, gauge};
use webdimer::tagged::{coherence_check, parse_tagged_web, serialize_tagged_web, tag_from_matching};
use webdimer::weblike::{bold_value_table, enumerate_weblike, parse_invariant, serialize_invariant, LabelSpace};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=100, 1i64..=10).prop_map(|(p, q)| rat(p, q))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    let term = (rational(), prop::collection::vec((0usize..4, 1u32..4), 0..3)).prop_map(|(c, vars)| {
        let names = ["a", "b'", "x_1", "y"];
        MultiPoly::term(c, Monomial::from_pairs(vars.into_iter().map(|(v, e)| (names[v].to_string(), e))))
    });
    prop::collection::vec(term, 0..5).prop_map(|ts| ts.iter().fold(MultiPoly::zero(), |acc, t| acc.add(t)))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

fn top_cell() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3).prop_flat_map(|k| (Just(k), k + 1..=6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rationals_round_trip(x in rational()) {
        prop_assert_eq!(webdimer::exact::parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn polynomials_round_trip(p in poly()) {
        prop_assert_eq!(MultiPoly::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly(), q in poly(), vals in prop::collection::vec(rational(), 4)) {
        let names = ["a", "b'", "x_1", "y"];
        let at: HashMap<String, Rational> = names.iter().map(|s| s.to_string()).zip(vals).collect();
        let (x, y) = (p.eval(&at).unwrap(), q.eval(&at).unwrap());
        prop_assert_eq!(p.mul(&q).eval(&at).unwrap(), &x * &y);
        prop_assert_eq!(p.add(&q).eval(&at).unwrap(), x + y);
    }

    #[test]
    fn sign_is_multiplicative(s in permutation(6), t in permutation(6)) {
        let composed: Vec<usize> = t.iter().map(|&i| s[i - 1]).collect();
        prop_assert_eq!(perm_sign(&composed), perm_sign(&s) * perm_sign(&t));
    }

    #[test]
    fn solve_finds_consistent_solutions(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..5),
                                         x in prop::collection::vec(-4i64..=4, 4)) {
        let m = ExactMatrix::from_i64_rows(&rows).unwrap();
        prop_assert_eq!(matrix_rank(&m), matrix_rank(&m.transpose()));
        let b: Vec<Rational> = rows.iter().map(|r| Rational::from_integer(r.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>().into())).collect();
        let y = matrix_solve(&m, &b).unwrap().unwrap();
        for (row, bi) in rows.iter().zip(&b) {
            let lhs = row.iter().zip(&y).fold(Rational::from_integer(0.into()), |acc, (a, v)| acc + v * Rational::from_integer((*a).into()));
            prop_assert_eq!(&lhs, bi);
        }
    }

    #[test]
    fn networks_round_trip((k, n) in top_cell(), seed in any::<u64>()) {
        let g = Arc::new(top_cell_graph(k, n).unwrap());
        let mut rng = webdimer::random::rng(seed);
        let net = webdimer::random::network(&mut rng, g);
        let back = parse_network(&serialize_network(&net)).unwrap();
        prop_assert_eq!(back, net);
    }

    #[test]
    fn top_cells_satisfy_plucker_relations((k, n) in top_cell(), w in prop::collection::vec(positive(), 64)) {
        let g = top_cell_graph(k, n).unwrap();
        let p = plucker_vector_with(&g, &w[..g.edges().len()]).unwrap();
        prop_assert_eq!(p.values.len(), webdimer::subsets::k_subsets(n, k).len());
        prop_assert!(check_plucker_relations(&p));
    }

    #[test]
    fn gauge_rescales_the_plucker_vector(vertex in 0usize..64, alpha in positive(), seed in any::<u64>()) {
        let square = gallery::square_network();
        let mut rng = webdimer::random::rng(seed);
        let vals: HashMap<String, Rational> = square.variables().into_iter().map(|v| (v, webdimer::random::weight(&mut rng))).collect();
        let net = square.specialize(&vals).unwrap();
        let interior: Vec<usize> = net.graph().interior_vertices().collect();
        let v = interior[vertex % interior.len()];
        let res = gauge(&net, v, &alpha).unwrap();
        prop_assert!(compare_networks(&net, &res.network, &res.scalar).unwrap().passed());
    }

    #[test]
    fn factorization_on_small_top_cells(w in prop::collection::vec(positive(), 64), pick in 0usize..4) {
        let (k, lambda): (usize, &[usize]) = [(2, &[1, 1, 1, 1][..]), (2, &[2, 1, 0, 1][..]), (3, &[1; 6][..]), (2, &[1, 1, 0, 1, 1][..])][pick];
        let r = lambda.iter().sum::<usize>() / k;
        let g = Arc::new(top_cell_graph(k, lambda.len()).unwrap());
        let report = verify_factorization_with(&g, &w[..g.edges().len()], r, lambda).unwrap();
        prop_assert!(report.passed());
    }

    #[test]
    fn invariants_round_trip(values in prop::collection::vec(rational(), 20)) {
        let space = LabelSpace::new(2, &[1; 6]).unwrap();
        prop_assert_eq!(space.len(), 20);
        let x = webdimer::weblike::Invariant::from_values(space, values);
        prop_assert_eq!(parse_invariant(&serialize_invariant(&x)).unwrap(), x);
    }
}

#[test]
fn dimension_is_rotation_invariant() {
    let lambda = [2, 1, 0, 1, 2, 0];
    let mut rotated = lambda;
    for _ in 0..6 {
        rotated.rotate_left(1);
        assert_eq!(dim_invariant_space(2, &rotated).unwrap(), dim_invariant_space(2, &lambda).unwrap());
    }
}

#[test]
fn tagged_webs_round_trip_and_stay_coherent() {
    let g = Arc::new(top_cell_graph(2, 5).unwrap());
    let matchings = webdimer::dimer::enumerate_matchings(&g);
    let space = LabelSpace::new(2, &[1, 1, 1, 1, 0]).unwrap();
    for w in enumerate_weblike(&g, 2, &[1, 1, 1, 1, 0]).unwrap() {
        assert!(!bold_value_table(&w, &space).is_zero());
        let m = matchings.iter().find(|m| m.edges.iter().all(|&e| w.multiplicity(e) > 0)).unwrap();
        let web = tag_from_matching(&w, &m.edges).unwrap();
        let back = parse_tagged_web(&serialize_tagged_web(&web)).unwrap();
        assert_eq!(back, web);
        assert!(coherence_check(&w, &back).unwrap().passed());
    }
}

#[test]
fn unit_network_is_a_network() {
    let g = Arc::new(top_cell_graph(2, 4).unwrap());
    let net = Network::unit(g);
    assert!(net.variables().is_empty());
}
