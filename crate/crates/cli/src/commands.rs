use std::collections::HashMap;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use webdimer::dimer::{
    boundary_measurement, check_plucker_relations, enumerate_matchings, plucker_vector, plucker_vector_with,
    plucker_violation,
};
use webdimer::duality::{crossingless_matchings, duality_report, sl3_basis_n6};
use webdimer::exact::{format_rational, parse_rational, ExactMatrix, Rational};
use webdimer::gallery;
use webdimer::graph::{parse_network, serialize_network, top_cell_graph, Network, PlanarBipartiteGraph};
use webdimer::invariants::{
    positroid_subspace, verify_factorization_with, verify_welldefined, web_measurement, TableReport,
};
use webdimer::moves::{apply_move, compare_networks, Move};
use webdimer::random;
use webdimer::skein::{
    admissible_scenarios, bigon_identity, bivalent_identity, square_move_identity, tag_relation_checks, Closure,
    IdentityReport, Scenario,
};
use webdimer::tagged::{coherence_check, tag_from_matching};
use webdimer::weblike::{degree_k, enumerate_weblike, serialize_invariant};

use crate::{
    DualityArgs, MeasureArgs, MoveArgs, MoveKind, MoveSpec, NetworkArgs, PositroidArgs, Relation, Report,
    SkeinArgs, VerifyArgs, VerifyKind, WebArgs,
};

pub(crate) fn load_network(args: &NetworkArgs) -> Result<Network> {
    match (&args.network, &args.example) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            Ok(parse_network(&text).with_context(|| format!("in {}", path.display()))?)
        }
        (None, Some(name)) => example_network(name),
        (None, None) => bail!("pass --network FILE or --example NAME"),
    }
}

pub(crate) fn example_network(name: &str) -> Result<Network> {
    match name {
        "square" => Ok(gallery::square_network()),
        "square-moved" => Ok(gallery::square_network_moved()),
        "sl4" => Ok(Network::unit(gallery::sl4_graph())),
        _ => {
            let parts: Vec<&str> = name.strip_prefix("top-").map(|s| s.split('-').collect()).unwrap_or_default();
            let [k, n] = parts[..] else {
                bail!("unknown example `{name}`; try square, square-moved, sl4 or top-K-N");
            };
            let (k, n) = (k.parse()?, n.parse()?);
            Ok(Network::unit(Arc::new(top_cell_graph(k, n)?)))
        }
    }
}

fn parse_json(text: &str) -> Value {
    serde_json::from_str(text).expect("library JSON is well formed")
}

fn subset_key(s: &[usize]) -> String {
    s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn resolve_lambda(g: &PlanarBipartiteGraph, r: usize, lambda: &Option<Vec<usize>>) -> Result<Vec<usize>> {
    let lambda = match lambda {
        Some(l) => l.clone(),
        None => vec![1; g.n()],
    };
    if lambda.len() != g.n() {
        bail!("--lambda needs {} entries, got {}", g.n(), lambda.len());
    }
    let k = degree_k(r, &lambda)?;
    if k as i64 != g.excedance() {
        bail!("degree {lambda:?} in rank {r} has k = {k}, but the graph has k = {}", g.excedance());
    }
    Ok(lambda)
}

fn vertex(g: &PlanarBipartiteGraph, id: &str) -> Result<usize> {
    g.vertex_by_id(id).ok_or_else(|| anyhow!("no vertex `{id}`"))
}

pub(crate) fn resolve_move(g: &PlanarBipartiteGraph, spec: &MoveSpec) -> Result<Move> {
    let kind = spec.kind.ok_or_else(|| anyhow!("pass --move KIND"))?;
    let one_vertex = || -> Result<usize> { vertex(g, spec.vertex.as_deref().ok_or_else(|| anyhow!("pass --vertex"))?) };
    Ok(match kind {
        MoveKind::Gauge => {
            let alpha = parse_rational(spec.alpha.as_deref().ok_or_else(|| anyhow!("pass --alpha"))?)?;
            Move::Gauge { vertex: one_vertex()?, alpha }
        }
        MoveKind::Spider => {
            let ids = spec.face.as_ref().ok_or_else(|| anyhow!("pass --face v1,v2,v3,v4"))?;
            let face: Vec<usize> = ids.iter().map(|id| vertex(g, id)).collect::<Result<_>>()?;
            let face: [usize; 4] = face.try_into().map_err(|_| anyhow!("--face needs four vertices"))?;
            Move::Spider { face }
        }
        MoveKind::Bivalent => Move::Bivalent { vertex: one_vertex()? },
        MoveKind::Leaf => Move::Leaf { vertex: one_vertex()? },
        MoveKind::Parallel => {
            let ids = spec.vertices.as_ref().ok_or_else(|| anyhow!("pass --vertices u,v"))?;
            let [u, v] = &ids[..] else { bail!("--vertices needs two vertices") };
            Move::Parallel { u: vertex(g, u)?, v: vertex(g, v)? }
        }
        MoveKind::Dipole => {
            let id = spec.edge.as_deref().ok_or_else(|| anyhow!("pass --edge"))?;
            Move::Dipole { edge: g.edge_by_id(id).ok_or_else(|| anyhow!("no edge `{id}`"))? }
        }
    })
}

/// Rational networks on the same graph: the variables are specialized to
/// seeded random weights, or all weights are redrawn when there are none.
pub(crate) fn samples(net: &Network, count: usize, seed: u64) -> Vec<Network> {
    let mut rng = random::rng(seed);
    let vars = net.variables();
    let mut out = Vec::with_capacity(count);
    if vars.is_empty() {
        out.push(net.clone());
    }
    while out.len() < count {
        if vars.is_empty() {
            out.push(random::network(&mut rng, net.graph_arc().clone()));
        } else {
            let assignment: HashMap<String, Rational> = vars.iter().map(|v| (v.clone(), random::weight(&mut rng))).collect();
            match net.specialize(&assignment) {
                Ok(n) if n.weights().iter().all(|w| !w.is_zero()) => out.push(n),
                _ => continue,
            }
        }
    }
    out
}

fn weights_json(net: &Network) -> Value {
    let g = net.graph();
    Value::Object(g.edges().iter().zip(net.weights()).map(|(e, w)| (e.id.clone(), json!(w.to_string()))).collect())
}

pub(crate) fn measure(a: &MeasureArgs) -> Result<Report> {
    let net = load_network(&a.network)?;
    let mut report = Report::new("measure");
    match &a.subset {
        Some(subset) => {
            let mut s = subset.clone();
            s.sort_unstable();
            let value = boundary_measurement(&net, &s)?;
            report.param("subset", subset_key(&s));
            report.line(format!("D[{}] = {value}", subset_key(&s)));
            report.output = json!({"subset": s, "value": value.to_string()});
        }
        None => {
            let p = plucker_vector(&net)?;
            for (s, v) in &p.values {
                report.line(format!("D[{}] = {v}", subset_key(s)));
            }
            report.output = Value::Object(p.values.iter().map(|(s, v)| (subset_key(s), json!(v.to_string()))).collect());
        }
    }
    Ok(report)
}

pub(crate) fn plucker(a: &NetworkArgs) -> Result<Report> {
    let net = load_network(a)?;
    let p = plucker_vector(&net)?;
    let mut report = Report::new("plucker");
    report.param("k", p.k);
    report.param("n", p.n);
    report.output = Value::Object(p.values.iter().map(|(s, v)| (subset_key(s), json!(v.to_string()))).collect());
    report.line(format!("{} nonzero coordinates in Gr({}, {})", p.values.len(), p.k, p.n));
    match plucker_violation(&p) {
        None => report.check("plucker relations", true, Value::Null),
        Some((s, q)) => {
            report.check("plucker relations", false, json!({"subset": s, "indices": q}));
            report.counterexamples.push(json!({"subset": s, "indices": q}));
        }
    }
    Ok(report)
}

pub(crate) fn apply(a: &MoveArgs) -> Result<Report> {
    let net = load_network(&a.network)?;
    let mv = resolve_move(net.graph(), &a.spec)?;
    let res = apply_move(&net, &mv)?;
    let mut report = Report::new("move");
    report.param("move", format!("{mv:?}"));
    report.line(format!("scalar: {}", res.scalar));
    report.line(serialize_network(&res.network));
    report.output = json!({"scalar": res.scalar.to_string(), "network": parse_json(&serialize_network(&res.network))});
    if a.check {
        let inv = compare_networks(&net, &res.network, &res.scalar)?;
        let detail: Vec<Value> = inv
            .violations
            .iter()
            .map(|(s, x, y)| json!({"subset": s, "before": x.to_string(), "scaled_after": y.to_string()}))
            .collect();
        report.check("plucker vector scales by the move factor", inv.passed(), Value::Null);
        report.counterexamples.extend(detail);
    }
    Ok(report)
}

pub(crate) fn webmeasure(a: &WebArgs) -> Result<Report> {
    let net = load_network(&a.network)?;
    let lambda = resolve_lambda(net.graph(), a.r, &a.lambda)?;
    let m = web_measurement(&net, a.r, &lambda)?;
    let mut report = Report::new("webmeasure");
    report.param("r", a.r);
    report.param("lambda", lambda.clone());
    report.line(format!("{} weblike subgraphs", m.subgraphs.len()));
    let mut subgraphs = Vec::new();
    for (w, weight) in &m.subgraphs {
        let edges: serde_json::Map<String, Value> = w
            .multiplicities()
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(e, &k)| (net.graph().edge(e).id.clone(), json!(k)))
            .collect();
        report.line(format!("  {weight}"));
        subgraphs.push(json!({"multiplicities": edges, "weight": weight.to_string()}));
    }
    report.output = json!({"subgraphs": subgraphs, "invariant": parse_json(&serialize_invariant(&m.invariant))});
    Ok(report)
}

fn table_failure<V: std::fmt::Display>(t: &TableReport<V>) -> Option<Value> {
    t.failures.first().map(|(s, x, y)| json!({"labels": s, "lhs": x.to_string(), "rhs": y.to_string()}))
}

pub(crate) fn verify(a: &VerifyArgs, seed: u64) -> Result<Report> {
    let net = load_network(&a.network)?;
    let g = net.graph_arc().clone();
    let mut report = Report::new("verify");
    report.param("kind", format!("{:?}", a.kind).to_lowercase());
    let lambda = if a.kind == VerifyKind::Plucker {
        Vec::new()
    } else {
        let lambda = resolve_lambda(&g, a.r, &a.lambda)?;
        report.param("r", a.r);
        report.param("lambda", lambda.clone());
        lambda
    };
    match a.kind {
        VerifyKind::Factorization => {
            report.param("samples", a.samples);
            for (i, s) in samples(&net, a.samples, seed).iter().enumerate() {
                let w = s.rational_weights().expect("samples are rational");
                let t = verify_factorization_with(&g, &w, a.r, &lambda)?;
                report.check(format!("factorization sample {i:03}"), t.passed(), json!({"labels": t.checked}));
                if let Some(x) = table_failure(&t) {
                    report.counterexamples.push(json!({"sample": i, "weights": weights_json(s), "failure": x}));
                }
            }
        }
        VerifyKind::Welldefined => {
            let mv = resolve_move(&g, &a.spec)?;
            report.param("move", format!("{mv:?}"));
            report.param("samples", a.samples);
            for (i, s) in samples(&net, a.samples, seed).iter().enumerate() {
                let res = apply_move(s, &mv)?;
                let t = verify_welldefined(s, &res.network, &res.scalar, a.r, &lambda)?;
                report.check(
                    format!("welldefined sample {i:03}"),
                    t.passed(),
                    json!({"labels": t.checked, "scalar": res.scalar.to_string()}),
                );
                if let Some(x) = table_failure(&t) {
                    report.counterexamples.push(json!({"sample": i, "weights": weights_json(s), "failure": x}));
                }
            }
        }
        VerifyKind::Coherence => {
            report.param("taggings", a.taggings);
            let matchings = enumerate_matchings(&g);
            for (i, w) in enumerate_weblike(&g, a.r, &lambda)?.iter().enumerate() {
                let inside: Vec<_> =
                    matchings.iter().filter(|m| m.edges.iter().all(|&e| w.multiplicity(e) > 0)).take(a.taggings).collect();
                let mut checked = 0;
                let mut passed = !inside.is_empty();
                for m in inside {
                    let web = tag_from_matching(w, &m.edges)?;
                    let c = coherence_check(w, &web)?;
                    checked += c.checked;
                    if !c.passed() {
                        passed = false;
                        report.counterexamples.push(json!({"subgraph": i, "matching": m.edges, "failures": c.failures.len()}));
                    }
                }
                report.check(format!("coherence subgraph {i:04}"), passed, json!({"labels": checked}));
            }
        }
        VerifyKind::Plucker => {
            report.param("samples", a.samples);
            for (i, s) in samples(&net, a.samples, seed).iter().enumerate() {
                let w = s.rational_weights().expect("samples are rational");
                let p = plucker_vector_with(&g, &w)?;
                report.check(format!("plucker sample {i:03}"), check_plucker_relations(&p), Value::Null);
            }
        }
    }
    Ok(report)
}

fn identity_check(report: &mut Report, name: String, id: &IdentityReport) {
    report.check(name, id.passed(), json!({"labels": id.labels, "terms": id.terms, "mismatches": id.mismatches}));
}

pub(crate) fn skein(a: &SkeinArgs) -> Result<Report> {
    let r = a.r;
    let mut report = Report::new("skein");
    report.param("relation", format!("{:?}", a.relation).to_lowercase());
    report.param("r", r);
    if !a.all && a.params.is_none() && a.relation != Relation::Tags {
        bail!("pass --all or --params");
    }
    let params = a.params.clone().unwrap_or_default();
    match a.relation {
        Relation::Square => {
            let scenarios = if a.all {
                admissible_scenarios(r)
            } else {
                let [j, l, v, s] = params[..] else { bail!("the square move takes --params j,l,v,s") };
                let sc = Scenario { r, j, l, v, s };
                if !sc.is_admissible() {
                    bail!("{sc:?} is not admissible");
                }
                vec![sc]
            };
            for sc in scenarios {
                for (closure, tag) in [(Closure::Direct, "direct"), (Closure::Chain, "chain")] {
                    let id = square_move_identity(&sc, closure)?;
                    let name = format!("square r={r} j={} l={} v={} s={} {tag}", sc.j, sc.l, sc.v, sc.s);
                    identity_check(&mut report, name, &id);
                }
            }
        }
        Relation::Bigon => {
            let pairs: Vec<(usize, usize)> = if a.all {
                (1..r).flat_map(|x| (1..=r - x).map(move |y| (x, y))).collect()
            } else {
                let [x, y] = params[..] else { bail!("bigons take --params a,b") };
                vec![(usize::try_from(x)?, usize::try_from(y)?)]
            };
            for (x, y) in pairs {
                identity_check(&mut report, format!("bigon r={r} a={x} b={y}"), &bigon_identity(r, x, y)?);
            }
        }
        Relation::Bivalent => {
            let xs: Vec<usize> = if a.all {
                (1..r).collect()
            } else {
                let [x] = params[..] else { bail!("bivalent vertices take --params a") };
                vec![usize::try_from(x)?]
            };
            for x in xs {
                identity_check(&mut report, format!("bivalent r={r} a={x}"), &bivalent_identity(r, x)?);
            }
        }
        Relation::Tags => {
            let t = tag_relation_checks(r)?;
            report.check(
                format!("tag switch r={r}"),
                t.switch_failures == 0 && t.switches > 0,
                json!({"webs": t.webs, "switches": t.switches, "failures": t.switch_failures}),
            );
            report.check(
                format!("tag migration r={r}"),
                t.migration_failures == 0 && t.migrations > 0,
                json!({"webs": t.webs, "migrations": t.migrations, "failures": t.migration_failures}),
            );
        }
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    report.line(format!("{} parameter choices, {failed} failed", report.checks.len()));
    Ok(report)
}

pub(crate) fn positroid_dim(a: &PositroidArgs) -> Result<Report> {
    let net = load_network(&a.network)?;
    let g = net.graph_arc().clone();
    let lambda = resolve_lambda(&g, a.r, &a.lambda)?;
    let p = positroid_subspace(&g, a.r, &lambda)?;
    let mut report = Report::new("positroid-dim");
    report.param("r", a.r);
    report.param("lambda", lambda);
    report.line(format!(
        "dimension {} of {} ({} weblike subgraphs examined)",
        p.dimension, p.ambient_dimension, p.subgraphs_seen
    ));
    report.output = json!({
        "dimension": p.dimension,
        "ambient_dimension": p.ambient_dimension,
        "subgraphs_seen": p.subgraphs_seen,
    });
    report.check("rank within the invariant space", p.dimension as u64 <= p.ambient_dimension, Value::Null);
    if let Some(e) = a.expect {
        report.param("expect", e);
        report.check("expected rank", p.dimension == e, json!({"got": p.dimension}));
    }
    Ok(report)
}

fn matrix_json(m: &ExactMatrix) -> Value {
    json!((0..m.rows()).map(|i| m.row(i).iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub(crate) fn duality(a: &DualityArgs) -> Result<Report> {
    if a.n != 6 {
        bail!("only n = 6 has hardcoded bases");
    }
    let sl2 = crossingless_matchings(a.n)?;
    let sl3 = sl3_basis_n6()?;
    let d = duality_report(&sl2, &sl3)?;
    let mut report = Report::new("duality");
    report.param("n", a.n);
    let names: Vec<&str> = sl3.elements.iter().map(|(s, _)| s.as_str()).collect();
    report.line(format!("columns: {}", names.join(" ")));
    for (i, (name, _)) in sl2.elements.iter().enumerate() {
        let row: Vec<String> = d.matrix.row(i).iter().map(|x| format!("{:>3}", format_rational(x))).collect();
        report.line(format!("{name:<16}{}", row.join("")));
    }
    report.output = json!({
        "rows": sl2.elements.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>(),
        "columns": names,
        "matrix": matrix_json(&d.matrix),
    });
    report.check("signed permutation", d.signed_permutation, Value::Null);
    report.check("independent of the expansion", d.expansion_independent, Value::Null);
    report.check("rotation twists by the sign of the cycle", d.rotation_twist, Value::Null);
    Ok(report)
}
