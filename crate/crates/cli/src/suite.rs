//! The worked examples and the seeded property batteries as one report.

use std::sync::Arc;

use anyhow::Result;
use serde_json::{json, Value};

use webdimer::dimer::{check_plucker_relations, plucker_vector_with};
use webdimer::duality::{crossingless_matchings, duality_report, sl3_basis_n6};
use webdimer::exact::{int, MultiPoly, Rational};
use webdimer::gallery;
use webdimer::graph::top_cell_graph;
use webdimer::invariants::{
    dim_invariant_space, partial_evaluation_kernel, plucker_monomials, positroid_subspace, sample_positivity,
    to_rational, twist_sides, verify_factorization_with, verify_welldefined, web_measurement, PluckerExpression,
};
use webdimer::moves::{compare_networks, spider_move};
use webdimer::random;
use webdimer::tagged::{coherence_check, tag_from_matching};
use webdimer::weblike::{bold_value_table, enumerate_weblike, Invariant, LabelSpace};

use crate::commands::samples;
use crate::{Report, SuiteArgs};

fn labels(colors: &[usize]) -> Vec<u8> {
    colors.iter().map(|c| 1u8 << (c - 1)).collect()
}

fn sl4_evaluation(report: &mut Report) -> Result<()> {
    let w = gallery::sl4_weblike();
    let web = tag_from_matching(&w, &gallery::sl4_matching())?;
    let v = web.evaluate(&labels(&[1, 2, 3, 4, 3, 2, 1, 4]))?;
    report.check("example 01 SL4 web at E1 E2 E3 E4 E3 E2 E1 E4", v == int(-1), json!({"value": v.to_string()}));
    let c = coherence_check(&w, &web)?;
    report.check("example 05 SL4 web sign coherence", c.passed(), json!({"labels": c.checked, "sign": c.sign}));
    Ok(())
}

fn sorted_weights(m: &[(impl Sized, MultiPoly)]) -> Vec<String> {
    let mut out: Vec<String> = m.iter().map(|(_, w)| w.to_string()).collect();
    out.sort();
    out
}

fn square_example(report: &mut Report, seed: u64, count: usize) -> Result<()> {
    let before = sorted_weights(&web_measurement(&gallery::square_network(), 3, &[1; 6])?.subgraphs);
    let after = sorted_weights(&web_measurement(&gallery::square_network_moved(), 3, &[1; 6])?.subgraphs);
    report.check(
        "example 02 square network weblike subgraphs",
        before == ["a*b*c*d*e*f", "a^2*c^2*e*f", "b^2*d^2*e*f"] && after == ["a'*c'*e*f", "b'*d'*e*f"],
        json!({"before": before, "after": after}),
    );
    let net = gallery::square_network();
    let g = net.graph();
    let face = ["w_sw", "b_nw", "w_ne", "b_se"].map(|id| g.vertex_by_id(id).expect("square corners"));
    let (mut failures, mut checked) = (0, 0);
    for s in samples(&net, count, seed) {
        let w = |id: &str| s.weight(g.edge_by_id(id).expect("square edges")).clone();
        let det = w("a").mul(&w("c")).add(&w("b").mul(&w("d")));
        let res = spider_move(&s, face)?;
        let ok = res.scalar == det
            && compare_networks(&s, &res.network, &det)?.passed()
            && verify_welldefined(&s, &res.network, &det, 3, &[1; 6])?.passed();
        checked += 1;
        failures += usize::from(!ok);
    }
    report.check("example 03 spider move scales X and Web3", failures == 0, json!({"weightings": checked, "failed": failures}));
    Ok(())
}

/// `(r, k, n, expected dimension)` for the invariant spaces with `λ = 1^n`.
pub const DIMENSIONS: [(usize, usize, usize, u64); 5] = [(2, 3, 6, 5), (3, 2, 6, 5), (2, 4, 8, 14), (4, 2, 8, 14), (3, 3, 9, 42)];

fn dimensions(report: &mut Report) -> Result<Vec<Invariant<i64>>> {
    let mut w39 = Vec::new();
    for (r, k, n, expected) in DIMENSIONS {
        let ones = vec![1; n];
        let dim = dim_invariant_space(r, &ones)?;
        let p = positroid_subspace(&Arc::new(top_cell_graph(k, n)?), r, &ones)?;
        report.check(
            format!("example 08 dimension of W({r},{n})"),
            dim == expected && p.dimension as u64 == expected,
            json!({"tableaux": dim, "top_cell_rank": p.dimension, "subgraphs_seen": p.subgraphs_seen}),
        );
        if (r, n) == (3, 9) {
            w39 = p.tables;
        }
    }
    Ok(w39)
}

fn partial_evaluation(report: &mut Report, w39: &[Invariant<i64>]) -> Result<()> {
    let p = partial_evaluation_kernel(w39, &[7, 8, 9])?;
    let target = dim_invariant_space(2, &[1; 6])?;
    report.check(
        "example 09 partial evaluation of W(3,9) along 7,8,9",
        p.source_rank == 42 && p.kernel_dim == 37 && p.image_rank == 5 && target == 5,
        json!({"source_rank": p.source_rank, "image_rank": p.image_rank, "kernel": p.kernel_dim}),
    );
    Ok(())
}

fn duality(report: &mut Report) -> Result<()> {
    let d = duality_report(&crossingless_matchings(6)?, &sl3_basis_n6()?)?;
    report.check(
        "example 10 duality matrix for n = 6",
        d.signed_permutation && d.expansion_independent && d.rotation_twist,
        json!({"signed_permutation": d.signed_permutation, "expansion_independent": d.expansion_independent, "rotation_twist": d.rotation_twist}),
    );
    Ok(())
}

fn factorization(report: &mut Report, seed: u64) -> Result<()> {
    let mut rng = random::rng(seed);
    let battery: [(usize, usize, &[usize]); 6] = [
        (1, 2, &[1, 1, 0, 0, 0]),
        (1, 3, &[1, 0, 1, 0, 1, 0]),
        (2, 2, &[2, 1, 1]),
        (2, 3, &[1; 6]),
        (3, 2, &[1; 6]),
        (3, 1, &[1; 3]),
    ];
    for (r, k, lambda) in battery {
        let n = lambda.len();
        let g = Arc::new(top_cell_graph(k, n)?);
        let mut failed = 0;
        for _ in 0..5 {
            let w = random::weights(&mut rng, g.edges().len());
            failed += usize::from(!verify_factorization_with(&g, &w, r, lambda)?.passed());
        }
        report.check(format!("property factorization r={r} k={k} n={n}"), failed == 0, json!({"failed": failed}));
    }
    Ok(())
}

fn plucker_relations(report: &mut Report, seed: u64) -> Result<()> {
    let mut rng = random::rng(seed);
    let mut failed = 0;
    let mut checked = 0;
    for (k, n) in [(2, 4), (2, 6), (3, 6), (3, 7), (2, 8)] {
        let g = top_cell_graph(k, n)?;
        for _ in 0..4 {
            let p = plucker_vector_with(&g, &random::weights(&mut rng, g.edges().len()))?;
            checked += 1;
            failed += usize::from(!check_plucker_relations(&p));
        }
    }
    report.check("property plucker relations", failed == 0, json!({"networks": checked, "failed": failed}));
    Ok(())
}

fn twist(report: &mut Report, seed: u64) -> Result<()> {
    use rand::Rng;
    let mut rng = random::rng(seed);
    let g = Arc::new(top_cell_graph(2, 6)?);
    let space = LabelSpace::new(3, &[1; 6])?;
    let tables: Vec<Invariant<Rational>> =
        enumerate_weblike(&g, 3, &[1; 6])?.iter().map(|w| to_rational(&bold_value_table(w, &space))).collect();
    let monomials = plucker_monomials(3, 2, 6, &[1; 6]);
    let mut failed = 0;
    let trials = 50;
    for _ in 0..trials {
        let mut x = Invariant::<Rational>::zero(space.clone());
        for t in &tables {
            x.add_scaled(t, &random::weight(&mut rng));
        }
        let mut f = PluckerExpression::new(3, 2, 6);
        for m in &monomials {
            f.add_term(m.clone(), int(rng.gen_range(-3..=3)));
        }
        let mut sigma: Vec<usize> = (1..=6).collect();
        for i in (1..6).rev() {
            sigma.swap(i, rng.gen_range(0..=i));
        }
        let (lhs, rhs) = twist_sides(&x, &f, &sigma)?;
        failed += usize::from(lhs != rhs);
    }
    report.check("property twist", failed == 0, json!({"triples": trials, "failed": failed}));
    Ok(())
}

fn positivity(report: &mut Report, seed: u64, w39: &[Invariant<i64>]) -> Result<()> {
    let webs: Vec<Invariant<Rational>> = w39.iter().map(to_rational).collect();
    let p = sample_positivity(&webs, 100, seed)?;
    let found = p.counterexamples.len();
    report.line(format!(
        "positivity: {} webs on {} totally positive matrices, {found} sign changes",
        p.webs, p.matrices
    ));
    for (i, _) in &p.counterexamples {
        report.counterexamples.push(json!({"positivity_web": i}));
    }
    report.check(
        "exploratory positivity in W(3,9)",
        true,
        json!({"webs": p.webs, "matrices": p.matrices, "sign_changes": found}),
    );
    Ok(())
}

pub fn run(a: &SuiteArgs, seed: u64) -> Result<Report> {
    let mut report = Report::new("suite");
    let paper = !a.properties;
    let properties = !a.paper_examples;
    report.param("paper_examples", paper);
    report.param("properties", properties);
    let mut w39 = Vec::new();
    if paper {
        sl4_evaluation(&mut report)?;
        square_example(&mut report, seed, 20)?;
        w39 = dimensions(&mut report)?;
        partial_evaluation(&mut report, &w39)?;
        duality(&mut report)?;
    }
    if properties {
        factorization(&mut report, seed)?;
        plucker_relations(&mut report, seed)?;
        twist(&mut report, seed)?;
        if w39.is_empty() {
            w39 = positroid_subspace(&Arc::new(top_cell_graph(3, 9)?), 3, &[1; 9])?.tables;
        }
        positivity(&mut report, seed, &w39)?;
    }
    report.output = Value::Null;
    Ok(report)
}
