//! The acceptance suite: one PASS/FAIL line per criterion, non-zero exit if
//! any criterion fails.

mod common;

use std::time::{Duration, Instant};

use ramsey_lab::arrow::{arrows_mr, constrained_ramsey_number, ArrowOptions, Outcome};
use ramsey_lab::constructions::{
    avoid_colouring, child_keyed, constellation_arrow_tree, find_mono_or_rainbow, greedy_rainbow_embed, mode_for, star_arrow_tree, verify_avoiding, AvoidMode,
    ConstellationWitness, GreedyOutcome, LazyTree, RootedTree, DEFAULT_VERTEX_BUDGET,
};
use ramsey_lab::density::{max_2_density, max_density, ratio};
use ramsey_lab::fh::{
    appendix_leaf_count, appendix_tree, descendant_colouring, descendant_counts, embed_rainbow_binary, f_at_least, f_of, lazy_descendant_colour, BinaryOutcome,
};
use ramsey_lab::gnp::{arrow_sweep, containment_sweep, half_crossing, sample_gnp_trial, to_csv, PValue};
use ramsey_lab::graph::{
    enumerate_trees, find_monochromatic_copy, find_rainbow_copy, forest_code, parse_graph, verify_monochromatic, verify_rainbow, ColouredGraph,
};
use ramsey_lab::mf::{exponent_of, mf_report, MfOptions};
use ramsey_lab::threshold::{clause_predicates, dispatch, threshold, Clause, ExponentKind};
use ramsey_lab::{Colouring, Graph};
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn g(s: &str) -> Graph {
    parse_graph(s).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    ensure(start.elapsed() <= limit, || format!("{what} took {:?}, limit {limit:?}", start.elapsed()))
}

fn density_oracle() -> Check {
    let start = Instant::now();
    let mut count = 0u64;
    for n in 1..=7 {
        for h in common::labelled_graphs(n) {
            let (m, m2) = (max_density(&h).unwrap(), max_2_density(&h).unwrap());
            ensure(m == common::oracle_m(&h), || format!("m differs on {h}"))?;
            ensure(m2 == common::oracle_m2(&h), || format!("m2 differs on {h}"))?;
            count += 1;
        }
    }
    within(start, Duration::from_secs(300), "oracle sweep")?;
    Ok(format!("{count} labelled graphs in {:.1?}", start.elapsed()))
}

fn bridge_law() -> Check {
    let connected: Vec<Graph> = (1..=6).flat_map(common::iso_classes).filter(Graph::is_connected).collect();
    let dens: Vec<_> = connected.iter().map(|h| max_2_density(h).unwrap()).collect();
    let one = ratio(1, 1);
    let mut joins = 0u64;
    for (g1, m1) in connected.iter().zip(&dens) {
        if g1.edge_count() == 0 {
            continue;
        }
        for (g2, m2) in connected.iter().zip(&dens) {
            if m1 < m2 {
                continue;
            }
            let want = m1.clone().max(one.clone());
            for a in 0..g1.n() {
                for b in 0..g2.n() {
                    let j = g1.disjoint_union(g2).with_edge(a, g1.n() + b).unwrap();
                    let got = max_2_density(&j).unwrap();
                    ensure(got == want, || format!("join of {g1} and {g2} at ({a},{b}) has m2 = {got}, want {want}"))?;
                    joins += 1;
                }
            }
        }
    }
    Ok(format!("{} connected graphs, {joins} bridge joins", connected.len()))
}

fn arrow_ground_truths() -> Check {
    let opts = ArrowOptions::default();
    let timed = |host: &str, h1: &str, h2: &str| -> Result<ramsey_lab::arrow::ArrowVerdict, String> {
        let t = Instant::now();
        let v = arrows_mr(&g(host), &g(h1), &g(h2), &opts).map_err(|e| e.to_string())?;
        within(t, Duration::from_secs(1), host)?;
        Ok(v)
    };
    ensure(timed("P2", "K1,2", "K1,2")?.outcome == Outcome::Arrows, || {
        "P2 should arrow (K1,2, K1,2)".into()
    })?;
    ensure(timed("K2", "K1,2", "K1,2")?.outcome == Outcome::NotArrows, || {
        "K2 should not arrow (K1,2, K1,2)".into()
    })?;
    ensure(timed("K1,2+K2", "K1,2", "M2")?.outcome == Outcome::Arrows, || {
        "K1,2+K2 should arrow (K1,2, M2)".into()
    })?;
    let v = timed("P3", "M2", "P3")?;
    ensure(v.outcome == Outcome::NotArrows, || "P3 should not arrow (M2, P3)".into())?;
    let chi = v.counterexample.ok_or("missing counterexample")?;
    let p3 = g("P3");
    ensure(
        find_monochromatic_copy(&p3, &chi, &g("M2")).is_none() && find_rainbow_copy(&p3, &chi, &p3).is_none(),
        || format!("counterexample {:?} does not replay", chi.as_slice()),
    )?;
    let t = Instant::now();
    let r = constrained_ramsey_number(&g("K1,2"), &g("K1,2"), 5, &opts).map_err(|e| e.to_string())?;
    within(t, Duration::from_secs(1), "ramsey number")?;
    ensure(r == Some(3), || format!("r_c(K1,2, K1,2) = {r:?}, want 3"))?;
    Ok(format!("5 instances, counterexample {:?} replayed", chi.as_slice()))
}

fn avoiding_colourings() -> Check {
    let pairs = [("2K1,2", "K1,3"), ("M2", "P3"), ("2K1,2", "P3")];
    let mut rng = common::rng(4);
    for i in 0..200 {
        let n = rng.gen_range(1..=12);
        let attach = rng.gen_range(0.4..1.0);
        let f = common::random_forest(&mut rng, n, attach);
        for (a, b) in pairs {
            let (h1, h2) = (g(a), g(b));
            let mode = mode_for(&h2).ok_or("no mode")?;
            let chi = avoid_colouring(&f, mode).map_err(|e| e.to_string())?;
            ensure(verify_avoiding(&f, &chi, &h1, &h2), || format!("forest #{i} {f} fails for ({a}, {b})"))?;
        }
    }
    Ok("200 forests x 3 pattern pairs".into())
}

fn greedy_check(c: &ramsey_lab::constructions::StarArrowTree, chi: &Colouring) -> Result<bool, String> {
    let host = ColouredGraph {
        graph: c.tree.graph(),
        colouring: chi,
    };
    let star = parse_graph(&format!("K1,{}", c.star_size)).unwrap();
    match greedy_rainbow_embed(&c.tree, chi, &c.completion, c.star_size) {
        GreedyOutcome::Rainbow(e) => ensure(verify_rainbow(&host, c.completion.graph(), &e), || "unverified rainbow".into()).map(|_| true),
        GreedyOutcome::Monochromatic(e) => ensure(verify_monochromatic(&host, &star, &e), || "unverified star".into()).map(|_| false),
        GreedyOutcome::Stalled(v) => Err(format!("greedy stalled at {v}")),
    }
}

fn star_trees() -> Check {
    let mut exact = 0;
    let mut greedy_runs = 0;
    let mut rng = common::rng(41);
    let cases = [(2, "P2"), (3, "P2"), (2, "K1,3"), (3, "K1,3"), (2, "P3"), (3, "P3"), (3, "K1,3+K2")];
    for (s, h2) in cases {
        let c = star_arrow_tree(s, &g(h2), DEFAULT_VERTEX_BUDGET).map_err(|e| e.to_string())?;
        let t = c.tree.graph();
        if t.edge_count() <= 16 {
            let star = parse_graph(&format!("K1,{s}")).unwrap();
            let v = arrows_mr(t, &star, &g(h2), &ArrowOptions::default()).map_err(|e| e.to_string())?;
            ensure(v.arrows(), || format!("T({},{}) does not arrow (K1,{s}, {h2})", c.arity, c.height))?;
            exact += 1;
            continue;
        }
        let e = t.edge_count();
        for _ in 0..1000 {
            let k = rng.gen_range(1..=2 * c.arity);
            let chi = Colouring::new((0..e).map(|_| rng.gen_range(0..k)).collect());
            greedy_check(&c, &chi).map_err(|m| format!("s={s} {h2}: {m}"))?;
            greedy_runs += 1;
        }
        for root in [0, c.tree.n() - 1] {
            let rerooted = RootedTree::new(t.clone(), root).map_err(|e| e.to_string())?;
            let chi = descendant_colouring(&rerooted);
            greedy_check(&c, &chi).map_err(|m| format!("s={s} {h2} descendant: {m}"))?;
            greedy_runs += 1;
        }
    }
    Ok(format!("{exact} exact decisions, {greedy_runs} greedy runs verified"))
}

fn constellation() -> Check {
    let t = constellation_arrow_tree(2).map_err(|e| e.to_string())?;
    let check = |colour: &dyn Fn(usize) -> usize, label: &str| -> Result<ConstellationWitness, String> {
        let w = find_mono_or_rainbow(&t, colour, 2).map_err(|e| format!("{label}: {e}"))?;
        ensure(w.verify(&t, colour), || format!("{label}: witness does not replay"))?;
        Ok(w)
    };
    let uniform = |_: usize| 0;
    ensure(matches!(check(&uniform, "uniform")?, ConstellationWitness::Monochromatic { .. }), || {
        "uniform colouring gave a rainbow witness".into()
    })?;
    let tree = t.materialize(DEFAULT_VERTEX_BUDGET).map_err(|e| e.to_string())?;
    let chi = avoid_colouring(tree.graph(), AvoidMode::HighDegree).map_err(|e| e.to_string())?;
    let keyed = child_keyed(&chi);
    ensure(matches!(check(&keyed, "high-degree")?, ConstellationWitness::Rainbow { .. }), || {
        "avoiding colouring gave a monochromatic witness".into()
    })?;
    let mut rng = common::rng(76);
    let mut kinds = [0; 2];
    for i in 0..100 {
        let k: usize = [1, 2, 3, 4, 8, 40, 300, 5000, 1 << 20][i % 9];
        let colours: Vec<usize> = (0..t.n()).map(|_| rng.gen_range(0..k)).collect();
        let w = check(&|v| colours[v], &format!("random #{i}"))?;
        kinds[usize::from(matches!(w, ConstellationWitness::Rainbow { .. }))] += 1;
    }
    Ok(format!("n = {}, random runs: {} monochromatic, {} rainbow", t.n(), kinds[0], kinds[1]))
}

fn mf_values() -> Check {
    let opts = MfOptions::default();
    let r = mf_report(&g("K1,2"), &g("K1,2"), &opts).map_err(|e| e.to_string())?;
    let p2 = forest_code(&g("P2"));
    ensure(r.exact && r.upper == ratio(2, 3) && r.lower == ratio(2, 3), || format!("(K1,2, K1,2): {r}"))?;
    ensure(r.witness.as_forest().and_then(forest_code) == p2, || {
        format!("(K1,2, K1,2) witness {}", r.witness)
    })?;
    let s = mf_report(&g("K1,2"), &g("M2"), &opts).map_err(|e| e.to_string())?;
    ensure(s.upper == ratio(2, 3), || format!("(K1,2, M2): {s}"))?;
    ensure(s.witness.as_forest().and_then(forest_code) == forest_code(&g("K1,2+K2")), || {
        format!("(K1,2, M2) witness {}", s.witness)
    })?;
    for (h2, clause) in [("K1,2", Clause::CherryForest), ("M2", Clause::TwoEdge)] {
        let t = threshold(&g("K1,2"), &g(h2), &opts).map_err(|e| e.to_string())?;
        ensure(t.clause == clause && t.kind == ExponentKind::Exact(ratio(-3, 2)), || {
            format!("threshold (K1,2, {h2}): {t}")
        })?;
    }
    ensure(exponent_of(&r.upper) == ratio(-3, 2) && exponent_of(&s.upper) == ratio(-3, 2), || {
        "-1/m_F differs from -3/2".into()
    })?;
    Ok("m_F = 2/3 on both pairs, exponent -3/2".into())
}

fn factorial(d: u128) -> u128 {
    (1..=d).product()
}

fn f_function() -> Check {
    for (h, want) in [("K2", 1), ("P2", 2), ("P3", 3), ("K1,3", 3)] {
        let f = f_of(&g(h), 10).map_err(|e| e.to_string())?.value;
        ensure(f == want, || format!("f({h}) = {f}, want {want}"))?;
        ensure(f == common::brute_f(&g(h), g(h).edge_count() + 2), || {
            format!("f({h}) disagrees with the brute force")
        })?;
    }
    let mut path_values = Vec::new();
    for d in 1..=6u128 {
        let f = f_of(&g(&format!("P{d}")), 10).map_err(|e| e.to_string())?.value;
        ensure(f * f >= factorial(d), || format!("f(P{d}) = {f} is below sqrt({d}!)"))?;
        path_values.push(f);
    }
    let fb2 = f_of(&g("B2"), 10).map_err(|e| e.to_string())?.value;
    ensure(fb2 >= 1, || "f(B2) below 2^C(1,2)".to_string())?;
    ensure(f_at_least(&g("B3"), 2).map_err(|e| e.to_string())?, || "f(B3) below 2^C(2,2)".to_string())?;

    let mut rng = common::rng(3);
    for i in 0..1000 {
        let n = rng.gen_range(2..=200);
        let tree = common::random_tree(&mut rng, n);
        let t = RootedTree::new(tree, rng.gen_range(0..n)).map_err(|e| e.to_string())?;
        let d = descendant_counts(&t);
        let chi = descendant_colouring(&t);
        for v in 0..n {
            if let Some(u) = t.parent(v) {
                let c = chi.colour(t.parent_edge(v).unwrap());
                ensure(d[u] > c * d[v], || format!("tree #{i}: D({u}) < 1 + {c} D({v})"))?;
            }
        }
    }

    let patterns: Vec<(String, Graph, u128)> = ["P2", "P3", "K1,3"]
        .iter()
        .map(|s| (s.to_string(), g(s), f_of(&g(s), 10).unwrap().value))
        .collect();
    let mut rooted = 0;
    for k in 1..=10 {
        for t in enumerate_trees(k) {
            for r in 0..k {
                let chi = descendant_colouring(&RootedTree::new(t.clone(), r).unwrap());
                for (name, h, f) in &patterns {
                    if find_rainbow_copy(&t, &chi, h).is_some() {
                        ensure(k as u128 >= *f, || format!("rainbow {name} in a {k}-vertex descendant tree, f = {f}"))?;
                    }
                }
                rooted += 1;
            }
        }
    }
    Ok(format!("f(P1..P6) = {path_values:?}, f(B2) = {fb2}, {rooted} rooted trees checked"))
}

/// A random colouring of `t` with every colour at most twice around each vertex.
fn random_claw_free(t: &LazyTree, rng: &mut rand_chacha::ChaCha8Rng) -> Vec<usize> {
    let mut colour = vec![usize::MAX; t.n()];
    for v in 0..t.n() {
        let kids = t.children(v);
        if kids.is_empty() {
            continue;
        }
        let palette = rng.gen_range(kids.len() / 2 + 1..=3 * kids.len() + 2);
        let mut uses = vec![0u8; palette];
        if v != 0 && colour[v] < palette {
            uses[colour[v]] += 1;
        }
        for w in kids {
            let c = loop {
                let c = rng.gen_range(0..palette);
                if uses[c] < 2 {
                    break c;
                }
            };
            uses[c] += 1;
            colour[w] = c;
        }
    }
    colour
}

fn binary_embedding() -> Check {
    let claw = g("K1,3");
    let mut rng = common::rng(9);
    let mut runs = 0;
    for h in 1..=3 {
        let t = appendix_tree(h).map_err(|e| e.to_string())?;
        let want = 1u128 << (h * (h - 1) / 2 + 3 * h);
        ensure(t.leaf_count() as u128 == want && appendix_leaf_count(h) == want, || {
            format!("h = {h}: {} leaves, want {want}", t.leaf_count())
        })?;
        let b = g(&format!("B{h}"));
        let embed = |colour: &dyn Fn(usize) -> usize, label: &str| -> Result<(), String> {
            match embed_rainbow_binary(&t, colour, h).map_err(|e| format!("{label}: {e}"))? {
                BinaryOutcome::Rainbow(e) => {
                    let host = ramsey_lab::constructions::LazyColouredTree { tree: &t, colour };
                    ensure(verify_rainbow(&host, &b, &e), || format!("{label}: unverified B{h}"))
                }
                BinaryOutcome::Monochromatic(_) => Err(format!("{label}: monochromatic claw in a claw-free colouring")),
            }
        };
        embed(&lazy_descendant_colour(&t), &format!("h = {h} descendant"))?;
        let tree = t.materialize(DEFAULT_VERTEX_BUDGET).map_err(|e| e.to_string())?;
        for i in 0..100 {
            let colours = random_claw_free(&t, &mut rng);
            let chi = Colouring::new(colours[1..].to_vec());
            ensure(find_monochromatic_copy(tree.graph(), &chi, &claw).is_none(), || {
                "generated colouring has a claw".into()
            })?;
            embed(&|v| colours[v], &format!("h = {h} random #{i}"))?;
            runs += 1;
        }
    }
    Ok(format!("leaf counts 2^4, 2^7, 2^12; {runs} random claw-free colourings"))
}

fn threshold_table() -> Check {
    let cases = [
        ("K3", "P3", ratio(-1, 2)),
        ("2K1,2", "K1,3", ratio(-1, 1)),
        ("M2", "P3", ratio(-1, 1)),
        ("K3", "K1,2", ratio(-1, 1)),
        ("K1,2", "K1,2", ratio(-3, 2)),
        ("K2", "K4", ratio(-2, 1)),
        ("K2", "P5", ratio(-2, 1)),
    ];
    for (a, b, want) in cases {
        let t = threshold(&g(a), &g(b), &MfOptions::default()).map_err(|e| e.to_string())?;
        ensure(t.kind == ExponentKind::Exact(want.clone()), || format!("({a}, {b}): {t}, want {want}"))?;
    }
    let all: Vec<Graph> = (1..=6).flat_map(common::iso_classes).filter(|h| h.edge_count() >= 1).collect();
    let forests: Vec<&Graph> = all.iter().filter(|h| h.is_forest()).collect();
    let mut pairs = 0;
    for h1 in &all {
        for h2 in &forests {
            let fired = clause_predicates(h1, h2).iter().filter(|&&b| b).count();
            ensure(fired == 1, || format!("({h1}) vs ({h2}) fires {fired} clauses"))?;
            dispatch(h1, h2).map_err(|e| format!("({h1}) vs ({h2}): {e}"))?;
            pairs += 1;
        }
    }
    Ok(format!("7 examples, {pairs} pairs each fire one clause"))
}

fn gnp_harness() -> Check {
    let start = Instant::now();
    let k3 = g("K3");
    let n = 60;
    let grid: Vec<PValue> = (0..16).map(|i| PValue::Fixed(0.004 * 1.3f64.powi(i))).collect();
    let a = to_csv(&containment_sweep(&k3, n, &grid, 200, 2024, 1));
    let b = to_csv(&containment_sweep(&k3, n, &grid, 200, 2024, 3));
    ensure(a == b, || "CSV differs between runs".into())?;
    let rows = containment_sweep(&k3, n, &grid, 200, 2024, 1);
    let cross = half_crossing(&rows).ok_or("no half crossing on the grid")?;
    let target = 1.0 / n as f64;
    ensure(cross >= target / 4.0 && cross <= target * 4.0, || {
        format!("crossing {cross:.4} not within a factor 4 of {target:.4}")
    })?;

    let (h1, h2) = (g("K1,2"), g("M2"));
    let ps: Vec<PValue> = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3].into_iter().map(PValue::Fixed).collect();
    let rows = arrow_sweep(7, &ps, &h1, &h2, 200, 17, 16, 1);
    for w in rows.windows(2) {
        ensure(w[1].undecided > 0 || w[0].undecided > 0 || w[0].successes <= w[1].successes, || {
            format!("estimate drops from p = {} to p = {}", w[0].p, w[1].p)
        })?;
    }
    let opts = ArrowOptions::default();
    for trial in 0..200 {
        let mut before = false;
        for p in [0.05, 0.1, 0.15, 0.2, 0.25, 0.3] {
            let s = sample_gnp_trial(7, p, 17, trial);
            let Ok(v) = arrows_mr(&s, &h1, &h2, &opts) else { continue };
            ensure(!before || v.arrows(), || format!("trial {trial} loses the property at p = {p}"))?;
            before = v.arrows();
        }
    }
    within(start, Duration::from_secs(600), "harness")?;
    Ok(format!(
        "crossing at p = {cross:.4} vs 1/n = {target:.4}; arrow estimates {:?}",
        rows.iter().map(|r| r.estimate).collect::<Vec<_>>()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("density oracle equivalence", density_oracle),
        ("bridge join two-density law", bridge_law),
        ("arrow engine ground truths", arrow_ground_truths),
        ("avoiding colourings of forests", avoiding_colourings),
        ("star arrow trees and greedy embedding", star_trees),
        ("constellation witnesses on T(76,3)", constellation),
        ("exact forest density values", mf_values),
        ("labelled path function f(H)", f_function),
        ("rainbow binary trees in claw-free colourings", binary_embedding),
        ("threshold case table", threshold_table),
        ("G(n,p) harness", gnp_harness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.1?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{:.1?}]", i + 1, t.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
