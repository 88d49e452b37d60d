//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each, and
//! exits non-zero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use set_graceful::conditions::{factor_pairs, proof_trace, star_theorem_decision, StarDecision};
use set_graceful::graph::{make_complete, make_complete_bipartite, make_cycle, make_path, Edge, Graph};
use set_graceful::labeling::{edge_labels, translate, validate, Labeling};
use set_graceful::oracle::brute_force_enumerate;
use set_graceful::search::{search, SearchConfig, SearchMode, SkipReason};
use set_graceful::{feasible_ground_size, GroundSize, LabelVec};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))
}

fn count(g: &Graph) -> set_graceful::SearchOutcome {
    search(g, &SearchConfig::new(SearchMode::Count))
}

fn theorem_m4() -> Verdict {
    let start = Instant::now();
    let g = make_complete_bipartite(3, 5).unwrap();
    let out = count(&g);
    within(start, Duration::from_secs(60), "K_{3,5} search")?;
    let decision = star_theorem_decision(3, 5).unwrap();
    ensure(out.exhausted, || "search did not exhaust".into())?;
    ensure(out.count_raw == 0, || format!("count_raw = {}", out.count_raw))?;
    ensure(decision == StarDecision::NonStarImpossible(GroundSize::new(4).unwrap()), || {
        format!("decision = {decision}")
    })?;
    Ok(format!(
        "K_{{3,5}}: count_raw=0, exhausted, {} nodes, decision {decision}, {:?}",
        out.nodes_explored,
        start.elapsed()
    ))
}

fn theorem_small_m() -> Verdict {
    let start = Instant::now();
    let mut checked = Vec::new();
    for m in 1..=3 {
        for (p, q) in factor_pairs(m).unwrap() {
            let out = count(&make_complete_bipartite(p as usize, q as usize).unwrap());
            let is_star = p == 1 || q == 1;
            ensure(out.exhausted && (out.count_raw > 0) == is_star, || {
                format!("K_{{{p},{q}}}: count_raw={} star={is_star}", out.count_raw)
            })?;
            checked.push(format!("K_{{{p},{q}}}={}", out.count_raw));
        }
    }
    within(start, Duration::from_secs(5), "m <= 3 sweep")?;
    Ok(checked.join(" "))
}

fn star_counts() -> Verdict {
    let start = Instant::now();
    let expected: [(u32, u128); 3] = [(1, 2), (2, 24), (3, 40320)];
    let mut notes = Vec::new();
    for (m, factorial) in expected {
        let g = make_complete_bipartite(1, (1 << m) - 1).unwrap();
        let gm = GroundSize::new(m).unwrap();
        let oracle = brute_force_enumerate(&g, gm).map_err(|e| e.to_string())?.len() as u128;
        let out = count(&g);
        ensure(oracle == factorial, || format!("m={m}: oracle {oracle} != {factorial}"))?;
        ensure(out.count_raw == factorial, || format!("m={m}: search {} != {factorial}", out.count_raw))?;
        ensure(out.count_raw == out.count_anchored * gm.universe() as u128, || {
            format!("m={m}: anchored identity fails")
        })?;
        notes.push(format!("m={m}: {} = {} x {}", out.count_raw, out.count_anchored, gm.universe()));
    }
    within(start, Duration::from_secs(10), "star counts")?;
    Ok(notes.join("; "))
}

fn oracle_equivalence() -> Verdict {
    let corpus = [
        ("K_2", make_complete_bipartite(1, 1).unwrap()),
        ("K_1,3", make_complete_bipartite(1, 3).unwrap()),
        ("C_3", make_cycle(3).unwrap()),
        ("P_4", make_path(4).unwrap()),
        ("P_8", make_path(8).unwrap()),
        ("C_7", make_cycle(7).unwrap()),
        ("K_1,7", make_complete_bipartite(1, 7).unwrap()),
        ("K_7", make_complete(7).unwrap()),
        ("C_4", make_cycle(4).unwrap()),
    ];
    let mut notes = Vec::new();
    for (name, g) in corpus {
        let out = count(&g);
        match feasible_ground_size(&g).m {
            Some(m) => {
                let oracle = brute_force_enumerate(&g, m).map_err(|e| e.to_string())?.len() as u128;
                ensure(out.count_raw == oracle, || format!("{name}: search {} oracle {oracle}", out.count_raw))?;
                notes.push(format!("{name}={oracle}"));
            }
            None => {
                let reason = SkipReason::EdgeCountInfeasible { edges: g.edge_count() };
                ensure(out.count_raw == 0 && out.skipped == Some(reason), || {
                    format!("{name}: expected edge-count skip, got {:?}", out.skipped)
                })?;
                notes.push(format!("{name}=0(infeasible)"));
            }
        }
    }
    Ok(notes.join(" "))
}

fn random_graph(rng: &mut StdRng) -> Graph {
    let n = rng.gen_range(1..=8);
    let edges: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.4))
        .collect::<Vec<_>>();
    Graph::new(n, edges).unwrap()
}

fn translation_properties() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x5e7_9ace);
    // Valid labelings to translate, so preservation is exercised on both outcomes.
    let valid_pool: Vec<(Graph, Vec<Labeling>)> = [
        make_complete_bipartite(1, 3).unwrap(),
        make_cycle(3).unwrap(),
        make_path(8).unwrap(),
        make_cycle(7).unwrap(),
    ]
    .into_iter()
    .map(|g| {
        let all = search(&g, &SearchConfig::new(SearchMode::All)).witnesses;
        (g, all)
    })
    .filter(|(_, all)| !all.is_empty())
    .collect();

    let mut violations = 0;
    let mut valid_seen = 0;
    for i in 0..1000 {
        let (g, f) = if i % 2 == 0 {
            let (g, pool) = &valid_pool[rng.gen_range(0..valid_pool.len())];
            (g.clone(), pool[rng.gen_range(0..pool.len())].clone())
        } else {
            let g = random_graph(&mut rng);
            let m = GroundSize::new(rng.gen_range(0..=5)).unwrap();
            let values = (0..g.n()).map(|_| LabelVec(rng.gen_range(0..m.universe() as u32))).collect();
            (g, Labeling::new(m, values).unwrap())
        };
        let a = LabelVec(rng.gen_range(0..f.m().universe() as u32));
        let t = translate(&f, a).unwrap();
        let before = validate(&g, &f).unwrap().valid;
        valid_seen += before as usize;
        if edge_labels(&g, &t).unwrap() != edge_labels(&g, &f).unwrap() {
            violations += 1;
        }
        if translate(&t, a).unwrap() != f {
            violations += 1;
        }
        if validate(&g, &t).unwrap().valid != before {
            violations += 1;
        }
    }
    let small_corpus = [
        make_complete_bipartite(1, 1).unwrap(),
        make_complete_bipartite(1, 3).unwrap(),
        make_cycle(3).unwrap(),
        make_path(4).unwrap(),
        make_path(8).unwrap(),
        make_cycle(7).unwrap(),
        make_complete_bipartite(1, 7).unwrap(),
    ];
    for g in &small_corpus {
        let universe = feasible_ground_size(g).m.unwrap().universe() as u128;
        let on = count(g);
        let off = search(g, &SearchConfig::new(SearchMode::Count).symmetry(false));
        if !on.count_raw.is_multiple_of(universe) || !off.count_raw.is_multiple_of(universe) {
            violations += 1;
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    ensure(valid_seen >= 400, || format!("only {valid_seen} valid samples"))?;
    Ok(format!("1000 triples ({valid_seen} valid), 0 violations; divisibility by 2^m holds on {} graphs", small_corpus.len()))
}

fn edge_count_identity() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x0e91);
    let mut violations = 0;
    let mut infeasible_pairs = 0;
    let mut rejected = 0;
    for p in 1..=32usize {
        for q in 1..=32usize {
            if (p * q + 1).is_power_of_two() {
                continue;
            }
            infeasible_pairs += 1;
            let g = make_complete_bipartite(p, q).unwrap();
            if feasible_ground_size(&g).feasible || count(&g).count_raw != 0 {
                violations += 1;
            }
            let bits = usize::BITS - (p * q).leading_zeros();
            for m in [bits - 1, bits, bits + 1] {
                let m = GroundSize::new(m).unwrap();
                for _ in 0..4 {
                    // distinct vertex labels where the universe allows it
                    let mut values: Vec<u32> = (0..m.universe() as u32).collect();
                    let n = g.n();
                    for i in 0..n.min(values.len()) {
                        let j = rng.gen_range(i..values.len());
                        values.swap(i, j);
                    }
                    let labels: Vec<LabelVec> = (0..n)
                        .map(|i| LabelVec(values.get(i).copied().unwrap_or_else(|| rng.gen_range(0..m.universe() as u32))))
                        .collect();
                    let f = Labeling::new(m, labels).unwrap();
                    if validate(&g, &f).unwrap().valid {
                        violations += 1;
                    }
                    rejected += 1;
                }
            }
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok(format!("{infeasible_pairs} pairs short-circuited, {rejected} random labelings rejected"))
}

fn proof_trace_golden() -> Verdict {
    for (p, q, file) in [(3, 5, "trace_3_5.txt"), (7, 9, "trace_7_9.txt")] {
        let path = format!("{}/tests/golden/{file}", env!("CARGO_MANIFEST_DIR"));
        let expected = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
        let t = proof_trace(p, q).map_err(|e| e.to_string())?;
        ensure(t.verify(), || format!("K_{{{p},{q}}}: a check fails"))?;
        ensure(t.steps.len() == 9, || format!("K_{{{p},{q}}}: {} steps", t.steps.len()))?;
        ensure(t.to_string() == expected, || format!("K_{{{p},{q}}}: rendering differs from {file}"))?;
    }
    Ok("K_{3,5} and K_{7,9} match pinned 9-step traces".into())
}

fn determinism() -> Verdict {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let graph = dir.path().join("k35.txt");
    let g = make_complete_bipartite(3, 5).unwrap();
    let mut buf = Vec::new();
    set_graceful::graph::write_graph(&g, &mut buf).unwrap();
    std::fs::write(&graph, buf).map_err(|e| e.to_string())?;
    let graph = graph.to_str().unwrap();

    let run = |threads: &str, mode: &str| {
        Command::new(env!("CARGO_BIN_EXE_set-graceful"))
            .args(["search", graph, "--mode", mode, "--threads", threads])
            .output()
            .map_err(|e| e.to_string())
    };
    for mode in ["first", "count"] {
        let one = run("1", mode)?;
        let eight = run("8", mode)?;
        ensure(one.status.code() == Some(1), || format!("{mode}: exit {:?}", one.status.code()))?;
        ensure(one.stdout == eight.stdout && one.status.code() == eight.status.code(), || {
            format!("{mode}: --threads 1 and --threads 8 differ")
        })?;
    }
    Ok("search K_{3,5} (first, count) byte-identical for --threads 1 and 8".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("theorem confirmation m=4", theorem_m4),
        ("theorem confirmation m<=3", theorem_small_m),
        ("star counts (2^m)!", star_counts),
        ("oracle equivalence corpus", oracle_equivalence),
        ("translation properties", translation_properties),
        ("edge-count identity p,q<=32", edge_count_identity),
        ("proof-trace golden", proof_trace_golden),
        ("determinism across threads", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
