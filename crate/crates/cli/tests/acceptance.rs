//! Acceptance criteria. Each test prints one PASS/FAIL line.
//!
//! Run with `cargo test -p annigraph-cli --test acceptance -- --nocapture`
//! to see the lines.

use std::process::Command;
use std::time::{Duration, Instant};

use annigraph::graph::DEFAULT_VERTEX_CAP;
use annigraph::{
    brute_force_metric_dimension, constructed_resolving_set, dim_bounds, distance_closed_form, epsilon_general,
    exact_metric_dimension, is_resolving, spec_from_modulus, AgGraph, Hints, IdealVector, RingSpec,
};

fn spec(orders: &[u32]) -> RingSpec {
    RingSpec::new(orders.to_vec()).unwrap()
}

fn graph(s: &RingSpec) -> AgGraph {
    AgGraph::build_with_cap(s, DEFAULT_VERTEX_CAP).unwrap()
}

fn dimension(s: &RingSpec) -> u64 {
    exact_metric_dimension(&graph(s), Hints::default()).unwrap().dimension as u64
}

/// All tuples of length `len` over `1..=max`.
fn tuples(len: usize, max: u32) -> Vec<Vec<u32>> {
    (0..len).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                (1..=max).map(move |n| {
                    let mut t = t.clone();
                    t.push(n);
                    t
                })
            })
            .collect()
    })
}

/// Prints the verdict line, then fails the test if the criterion failed.
fn report(id: u32, name: &str, failures: &[String], elapsed: Duration, budget: Duration) {
    let in_time = elapsed <= budget;
    let pass = failures.is_empty() && in_time;
    println!(
        "criterion {id} [{}] {name}: {} failures, {:.3}s (budget {:.0}s)",
        if pass { "PASS" } else { "FAIL" },
        failures.len(),
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    for f in failures.iter().take(10) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
    assert!(in_time, "criterion {id} exceeded its {budget:?} budget: {elapsed:?}");
}

#[test]
fn criterion_1_lemma_equivalence() {
    let t = Instant::now();
    let mut specs: Vec<Vec<u32>> = (1..=3).flat_map(|k| tuples(k, 3)).collect();
    specs.extend((1..=2).flat_map(|k| tuples(k, 5)));
    let mut failures = Vec::new();
    let mut pairs = 0u64;
    for orders in &specs {
        let s = spec(orders);
        let g = graph(&s);
        for (u, m) in g.vertices().iter().enumerate() {
            let bfs = g.bfs_from(u);
            for (v, l) in g.vertices().iter().enumerate() {
                pairs += 1;
                let closed = u32::from(distance_closed_form(&s, m, l).unwrap());
                if closed != bfs[v] {
                    failures.push(format!("spec {s}: d({m},{l}) closed {closed} bfs {}", bfs[v]));
                }
            }
        }
    }
    assert!(pairs > 10_000);
    report(1, "closed-form distance = BFS distance on every pair", &failures, t.elapsed(), Duration::from_secs(5));
}

#[test]
fn criterion_2_local_rings() {
    let t = Instant::now();
    let expected = [0u64, 0, 1, 1, 2, 2, 3, 3, 4];
    let mut failures = Vec::new();
    for (n1, &want) in (1..=9u32).zip(&expected) {
        let s = spec(&[n1]);
        let got = dimension(&s);
        if got != want || dim_bounds(&s).exact != Some((u64::from(n1) - 1) / 2) {
            failures.push(format!("n1={n1}: solver {got}, expected {want}"));
        }
    }
    report(2, "local rings: dim = floor((n1-1)/2) for n1 = 1..9", &failures, t.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_3_two_maximal_ideals() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for n1 in 1..=5u32 {
        for n2 in n1..=5u32 {
            count += 1;
            let epsilon = u64::from(n1 == 1 && n2 == 1);
            let want = u64::from(n1 + n2) - 2 + epsilon;
            let got = dimension(&spec(&[n1, n2]));
            if got != want {
                failures.push(format!("[{n1},{n2}]: solver {got}, expected {want}"));
            }
        }
    }
    assert_eq!(count, 15);
    report(3, "two maximal ideals: dim = n1+n2-2+eps on 15 pairs", &failures, t.elapsed(), Duration::from_secs(30));
}

fn general_specs() -> Vec<RingSpec> {
    let mut out = Vec::new();
    for a in 1..=3u32 {
        for b in 1..=a {
            for c in 1..=b {
                out.push(spec(&[a, b, c]));
            }
        }
    }
    out.push(spec(&[1, 1, 1, 1]));
    out
}

#[test]
fn criterion_4_general_bounds() {
    let t = Instant::now();
    let mut failures = Vec::new();
    for s in general_specs() {
        let sum: u64 = s.orders().iter().map(|&n| u64::from(n)).sum();
        let n = s.factor_count() as u64;
        let epsilon = epsilon_general(s.field_count() as i64).unwrap();
        let (lower, upper) = (sum - n + epsilon, sum);
        let got = dimension(&s);
        if !(lower..=upper).contains(&got) {
            failures.push(format!("{s}: solver {got} outside [{lower}, {upper}]"));
        }
    }
    report(4, "three or more factors: lower <= dim <= upper", &failures, t.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_5_constructions() {
    let t = Instant::now();
    let mut specs: Vec<RingSpec> = (1..=9).map(|n| spec(&[n])).collect();
    for n1 in 1..=5u32 {
        for n2 in 1..=5u32 {
            specs.push(spec(&[n1, n2]));
        }
    }
    specs.extend(general_specs());
    let mut failures = Vec::new();
    for s in &specs {
        let x = constructed_resolving_set(s);
        let cert = is_resolving(&graph(s), &x).unwrap();
        if !cert.resolves {
            failures.push(format!("{s}: constructed set does not resolve"));
        }
        let upper = dim_bounds(s).upper;
        if x.len() as u64 != upper {
            failures.push(format!("{s}: |X| = {}, upper bound {upper}", x.len()));
        }
    }
    report(5, "constructed sets resolve with size = upper formula", &failures, t.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_6_solver_matches_brute_force() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    // beyond these orders every tuple of that length has more than 24 vertices
    for (k, max) in [(1, 23), (2, 12), (3, 5), (4, 2)] {
        for orders in tuples(k, max) {
            if orders.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            let s = spec(&orders);
            if s.vertex_count() > 24 {
                continue;
            }
            checked += 1;
            let g = graph(&s);
            let pruned = exact_metric_dimension(&g, Hints::default()).unwrap();
            let brute = brute_force_metric_dimension(&g);
            if pruned != brute {
                failures.push(format!("{s}: pruned {pruned:?} vs brute force {brute:?}"));
            }
        }
    }
    assert!(checked >= 30, "only {checked} specs");
    report(6, "pruned solver = exhaustive solver (|V| <= 24)", &failures, t.elapsed(), Duration::from_secs(120));
}

#[test]
fn criterion_7_structural_spot_checks() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let z16 = spec_from_modulus(16).unwrap();
    if z16 != spec_from_modulus(81).unwrap() || z16.orders() != [4] {
        failures.push("Z/16 and Z/81 should both give orders [4]".to_string());
    }
    for (s, vertices, edges) in [(z16, 3, 2), (spec(&[2, 1]), 4, 3)] {
        let g = graph(&s);
        let degrees: Vec<usize> = (0..g.vertex_count()).map(|u| g.neighbors(u).count()).collect();
        let is_path = g.edge_count() + 1 == g.vertex_count() && degrees.iter().all(|&d| d <= 2);
        if (g.vertex_count(), g.edge_count()) != (vertices, edges) || !is_path {
            failures.push(format!("{s}: {} vertices, {} edges", g.vertex_count(), g.edge_count()));
        }
        let b = exact_metric_dimension(&g, Hints::default()).unwrap();
        let basis: Vec<IdealVector> = b.basis.iter().map(|&i| g.vertices()[i].clone()).collect();
        if b.dimension != 1 || !is_resolving(&g, &basis).unwrap().resolves {
            failures.push(format!("{s}: dim {} / certificate failed", b.dimension));
        }
    }
    report(7, "AG(Z16) ~ AG(Z81) path on 3 vertices, [2,1] path on 4", &failures, t.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_8_sweep_determinism() {
    let t = Instant::now();
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_annigraph"))
            .args(["verify", "--max-factors", "3", "--max-order", "3", "--threads", threads])
            .output()
            .expect("run annigraph");
        (out.status.code(), out.stdout)
    };
    let (code1, csv1) = run("1");
    let (code8, csv8) = run("8");
    let mut failures = Vec::new();
    if code1 != Some(0) || code8 != Some(0) {
        failures.push(format!("exit codes {code1:?} / {code8:?}"));
    }
    if csv1 != csv8 {
        failures.push("CSV differs between 1 and 8 threads".to_string());
    }
    if csv1.is_empty() || String::from_utf8_lossy(&csv1).contains("MISMATCH") {
        failures.push("empty or mismatching sweep".to_string());
    }
    report(8, "verify CSV identical at 1 and 8 threads", &failures, t.elapsed(), Duration::from_secs(60));
}
