//! Acceptance checks. Each test prints one `PASS`/`FAIL` line with the
//! measured values, then asserts. All comparisons are exact integers.

use std::collections::BTreeSet;
use std::sync::Mutex;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use turan_core::bounds::turan_verdict;
use turan_core::canon::canonical_form;
use turan_core::enumerate::{
    build_icosahedron, enumerate, ex_search, triangulation_oracle, verify_claim_degree4, verify_lemma3_classes,
    verify_small_n_claim, verify_triangle_window, Budget, EnumOptions, EnumerationConstraints, SearchMode,
};
use turan_core::forbid::{brute_force_contains, contains_double_star, is_free_of, DoubleStar};
use turan_core::graph::Graph;
use turan_core::planarity::is_planar;

fn report(id: u32, name: &str, pass: bool, detail: String) {
    println!("[{}] criterion {id} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
}

fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, &edges).unwrap()
}

#[test]
fn c1_icosahedron_tight_case() {
    let start = Instant::now();
    let g = build_icosahedron();
    let planar = is_planar(&g);
    let free = is_free_of(&g, DoubleStar::S25);
    let v = turan_verdict(12, g.m() as u64).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let pass = planar && free && g.m() == 30 && g.n() == 12 && v.satisfied && v.tight && secs < 1.0;
    report(
        1,
        "icosahedron tight at n=12",
        pass,
        format!(
            "planar={planar} free={free} m={} 7m={} 19n-18={} tight={} time={secs:.3}s",
            g.m(),
            v.lhs,
            v.rhs,
            v.tight
        ),
    );
    assert!(pass);
}

#[test]
fn c2_small_n_arithmetic() {
    let start = Instant::now();
    let r = verify_small_n_claim(13).unwrap();
    let in_range = r.rows.iter().filter(|row| (3..=12).contains(&row.n)).all(|row| row.holds);
    let at13 = r.rows.iter().find(|row| row.n == 13).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let pass = in_range && r.holds_through_12 && r.fails_at_13 && !at13.holds && secs < 1.0;
    report(
        2,
        "3n-6 <= floor((19n-18)/7) exactly for 3..=12",
        pass,
        format!("holds_3_to_12={in_range} at13: {} > {} time={secs:.3}s", at13.planar_max, at13.cap),
    );
    assert!(pass);
}

#[test]
fn c3_containment_matches_subset_search() {
    let start = Instant::now();
    let patterns = [(1, 1), (2, 2), (2, 3), (2, 4), (2, 5)];
    let mut rng = StdRng::seed_from_u64(2024);
    let (mut cases, mut agree) = (0u32, 0u32);
    for _ in 0..2000 {
        let n = rng.gen_range(1..=9);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        for &(m, k) in &patterns {
            let fast = contains_double_star(&g, m, k).unwrap();
            let slow = brute_force_contains(&g, m, k);
            cases += 1;
            let valid = fast.as_ref().is_none_or(|w| w.is_valid_in(&g, m, k));
            agree += u32::from(fast.is_some() == slow && valid);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = agree == cases && secs < 300.0;
    report(3, "containment vs subset search", pass, format!("{agree}/{cases} agree on 2000 graphs time={secs:.1}s"));
    assert!(pass);
}

#[test]
fn c4_triangle_windows() {
    let start = Instant::now();
    let r = verify_triangle_window(9, &EnumOptions::default()).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let pass = r.exhaustive && r.violations == 0 && secs < 1800.0;
    report(
        4,
        "common-neighbour windows on 6-5, 6-4, 6-3 edges, n<=9",
        pass,
        format!("graphs={} observed={:?} violations={} time={secs:.1}s", r.graphs, r.observed, r.violations),
    );
    assert!(pass);
}

#[test]
fn c5_lemma3_classes() {
    let start = Instant::now();
    let r = verify_lemma3_classes(10, &EnumOptions::sequential()).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let counts: Vec<String> = r
        .rows
        .iter()
        .filter(|row| row.hosts > 0)
        .map(|row| {
            let per: Vec<String> = row.classes.iter().map(|c| format!("{}:{}", c.feature, c.graphs)).collect();
            format!("n={} [{}]", row.n, per.join(" "))
        })
        .collect();
    let pass = r.exhaustive && r.violations == 0 && r.s656_without_66 == 0 && secs < 7200.0;
    report(
        5,
        "degree-6 classes obey 7m <= 19n-18, n<=10, single thread",
        pass,
        format!(
            "violations={} 656_without_66={} {} time={secs:.1}s",
            r.violations,
            r.s656_without_66,
            counts.join(" ")
        ),
    );
    assert!(pass);
}

#[test]
fn c6_claim_degree4() {
    let start = Instant::now();
    let r = verify_claim_degree4(10, &EnumOptions::sequential()).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let hosts: u64 = r.rows.iter().map(|row| row.hosts).sum();
    let vertices: u64 = r.rows.iter().map(|row| row.degree6_vertices).sum();
    let separated = r.rows.iter().all(|row| row.separation_failures == 0);
    let pass = r.exhaustive && r.violations == 0 && r.six_dominated_holds && separated;
    report(
        6,
        "degree-6 vertices have a neighbour of degree <= 4, n<=10",
        pass,
        format!(
            "hosts={hosts} degree6_vertices={vertices} violations={} n6<=n3+n4={} separated={separated} time={secs:.1}s",
            r.violations, r.six_dominated_holds
        ),
    );
    assert!(pass);
}

#[test]
fn c7_exact_ex_values() {
    let start = Instant::now();
    let opts = EnumOptions::default();
    let mut small = Vec::new();
    let mut small_ok = true;
    for n in 3..=8 {
        let r = ex_search(n, DoubleStar::S25, true, SearchMode::Exhaustive, &opts).unwrap();
        small_ok &= r.exhaustive && r.max_edges == 3 * n - 6;
        small.push(format!("{n}:{}", r.max_edges));
    }
    let search = ex_search(9, DoubleStar::S25, true, SearchMode::Exhaustive, &opts).unwrap();
    let bnb = ex_search(9, DoubleStar::S25, true, SearchMode::BranchAndBound, &opts).unwrap();
    let oracle = triangulation_oracle(9, DoubleStar::S25).unwrap();
    let nine_ok = search.exhaustive && bnb.exhaustive && search.max_edges == oracle && bnb.max_edges == oracle;
    let nine_secs = start.elapsed().as_secs_f64();

    // n = 10 is best effort under a budget
    let budgeted = EnumOptions { budget: Budget { max_nodes: None, max_seconds: Some(600.0) }, ..opts };
    let ten = ex_search(10, DoubleStar::S25, true, SearchMode::Exhaustive, &budgeted).unwrap();
    let ten_oracle = triangulation_oracle(10, DoubleStar::S25).unwrap();
    let ten_note = if ten.exhaustive {
        format!("n=10 search={} oracle={ten_oracle}", ten.max_edges)
    } else {
        format!("n=10 truncated (lower {} upper {}) oracle={ten_oracle}", ten.max_edges, ten.upper_bound)
    };
    let ten_ok = !ten.exhaustive || ten.max_edges == ten_oracle;

    let pass = small_ok && nine_ok && ten_ok && nine_secs < 3600.0;
    report(
        7,
        "ex_P(n, S_{2,5}) by search and by triangulation oracle",
        pass,
        format!(
            "3n-6 for n=3..8 [{}] n=9 search={} bnb={} oracle={oracle} witnesses={} {ten_note} time={:.1}s",
            small.join(" "),
            search.max_edges,
            bnb.max_edges,
            search.witness_count,
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(pass);
}

fn class_set(c: &EnumerationConstraints, opts: &EnumOptions) -> BTreeSet<Vec<u8>> {
    let out = Mutex::new(BTreeSet::new());
    enumerate(c, opts, |g| {
        out.lock().unwrap().insert(canonical_form(g).as_bytes().to_vec());
    })
    .unwrap();
    out.into_inner().unwrap()
}

fn labeled_dedup(n: usize, keep: impl Fn(&Graph) -> bool) -> BTreeSet<Vec<u8>> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::build(n, &edges).unwrap();
        if keep(&g) {
            out.insert(canonical_form(&g).as_bytes().to_vec());
        }
    }
    out
}

#[test]
fn c8_enumeration_self_consistency() {
    let start = Instant::now();
    let pruned = EnumOptions::default();
    let unpruned = EnumOptions { prune: false, ..EnumOptions::default() };
    let mut bundles = 0;
    let mut mismatches = 0;
    for n in 1..=6 {
        let stack = [
            EnumerationConstraints::new(n),
            EnumerationConstraints {
                require_planar: true,
                forbid: vec![DoubleStar::new(2, 2)],
                ..EnumerationConstraints::new(n)
            },
            EnumerationConstraints {
                min_degree: 2,
                max_degree: 4,
                require_connected: true,
                ..EnumerationConstraints::new(n)
            },
            EnumerationConstraints {
                require_bridgeless: true,
                forbid: vec![DoubleStar::new(1, 2)],
                ..EnumerationConstraints::new(n)
            },
            EnumerationConstraints::lemma_hosts(n),
        ];
        for c in &stack {
            bundles += 1;
            let a = class_set(c, &pruned);
            let b = class_set(c, &unpruned);
            let oracle = labeled_dedup(n, |g| c.accepts(g));
            mismatches += u32::from(a != b || a != oracle);
        }
    }
    let four = class_set(&EnumerationConstraints::new(4), &pruned);
    let four_oracle = labeled_dedup(4, |_| true);
    let secs = start.elapsed().as_secs_f64();
    let pass = mismatches == 0 && four.len() == 11 && four == four_oracle && secs < 300.0;
    report(
        8,
        "pruned = unpruned = labeled dedup for n<=6",
        pass,
        format!(
            "bundles={bundles} mismatches={mismatches} n=4 classes={} (oracle {}) time={secs:.1}s",
            four.len(),
            four_oracle.len()
        ),
    );
    assert!(pass);
}

#[test]
fn c9_general_n_scope() {
    // The statement for every n is a proof, not a computation. What a desk
    // run can certify is carried by criteria 1 to 6; this line records that.
    report(9, "general-n theorem", true, "not reproducible by finite search; acceptance rests on criteria 1-6".into());
}
