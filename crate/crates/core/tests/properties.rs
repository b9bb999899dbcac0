mod common;

use oneplanar::cli::io::{parse_graph, write_graph};
use oneplanar::graph::{complete_bipartite_one_planar, edge};
use oneplanar::kernel::cyclomatic::cyclo_kernelize;
use oneplanar::kernel::treedepth::{normalize_forest, tree_depth, dfs_forest};
use oneplanar::kernel::vc::{group_cap, kernel_size_bound, vc_kernelize, vertex_cover};
use oneplanar::kernel::words::{factorial, find_reducible_subword, random_word};
use oneplanar::solver::{decide_with, SolveOptions};
use oneplanar::{decide, generate, verify_witness, ConstraintSet, Graph, SolveOutcome};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BUDGET: u64 = 10_000_000;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::new(g.n(), g.edges().iter().map(|&(u, v)| edge(perm[u], perm[v]))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(g in graph(12)) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn verdict_ignores_labels(g in graph(8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let a = decide(&g, &ConstraintSet::default(), BUDGET);
        let b = decide(&relabel(&g, &perm), &ConstraintSet::default(), BUDGET);
        prop_assert_eq!(a.verdict(), b.verdict());
    }

    #[test]
    fn witnesses_verify_and_deleting_edges_keeps_one_planarity(g in graph(8), pick in any::<prop::sample::Index>()) {
        let out = decide(&g, &ConstraintSet::default(), BUDGET);
        if let SolveOutcome::OnePlanar(w) = &out {
            prop_assert!(verify_witness(&g, w, &ConstraintSet::default()));
            if g.m() > 0 {
                let e = g.edges()[pick.index(g.m())];
                prop_assert_eq!(decide(&g.without_edge(e), &ConstraintSet::default(), BUDGET).verdict(), Some(true));
            }
        }
    }

    #[test]
    fn constraints_never_help(g in graph(8), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let free = decide(&g, &ConstraintSet::default(), BUDGET);
        for regime in common::REGIMES {
            let cs = common::random_constraints(&g, regime, &mut rng);
            let constrained = decide(&g, &cs, BUDGET);
            if let SolveOutcome::OnePlanar(w) = &constrained {
                prop_assert!(verify_witness(&g, w, &cs));
                prop_assert_eq!(free.verdict(), Some(true));
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_verdicts(g in graph(8)) {
        let cs = ConstraintSet::default();
        let one = decide_with(&g, &cs, &SolveOptions { workers: 1, ..SolveOptions::default() });
        let four = decide_with(&g, &cs, &SolveOptions { workers: 4, ..SolveOptions::default() });
        prop_assert_eq!(one.outcome.verdict(), four.outcome.verdict());
    }

    #[test]
    fn tree_depth_matches_definition(g in graph(9)) {
        let (d, f) = tree_depth(&g, g.n()).unwrap();
        prop_assert!(f.is_valid_for(&g));
        prop_assert_eq!(f.depth(), d);
        prop_assert_eq!(d, common::tree_depth_bruteforce(&g));
    }

    #[test]
    fn normalization_keeps_forests_valid(g in graph(12)) {
        let f = dfs_forest(&g);
        let nf = normalize_forest(&g, &f).unwrap();
        prop_assert!(nf.is_valid_for(&g));
        prop_assert!(nf.depth() <= f.depth());
    }

    #[test]
    fn cyclomatic_kernel_replays(skeleton in graph(6), extra in proptest::collection::vec(0usize..30, 15)) {
        let g = generate::subdivide(&skeleton, &extra[..skeleton.m()]);
        let k = cyclo_kernelize(&g);
        let graphs: Vec<Graph> = k.instances.iter().map(|i| i.graph.clone()).collect();
        prop_assert_eq!(k.plan.replay(&graphs).unwrap(), g);
        for b in &k.blocks {
            prop_assert!(b.interiors.iter().all(|&(before, after)| after == before.min(b.cap)));
        }
    }

    #[test]
    fn cover_kernel_replays(n in 3usize..40, k in 1usize..=4, p in 0.05f64..0.6, seed in any::<u64>()) {
        let g = generate::random_with_cover(n, k, p, &mut ChaCha8Rng::seed_from_u64(seed));
        let cover = vertex_cover(&g, k).unwrap();
        let ck = vc_kernelize(&g, &cover).unwrap();
        if ck.early_verdict.is_none() {
            prop_assert!(ck.kernel.n() <= kernel_size_bound(ck.k));
            prop_assert!(ck.groups.iter().all(|grp| grp.kept.len() == group_cap(ck.k)));
            prop_assert_eq!(ck.plan.replay(std::slice::from_ref(&ck.kernel)).unwrap(), g);
        }
    }

    #[test]
    fn long_words_reduce(n in 2usize..=4, seed in any::<u64>()) {
        let w = random_word(n, 2 * factorial(n), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let (s, e, k) = find_reducible_subword(&w).unwrap().unwrap();
        let window = &w[s..e];
        let mut counts = std::collections::BTreeMap::new();
        for &x in window {
            *counts.entry(x).or_insert(0usize) += 1;
        }
        prop_assert_eq!(counts.len(), k);
        prop_assert!(counts.values().all(|&c| c >= k));
    }

    #[test]
    fn bipartite_table_is_symmetric_and_monotone(a in 1usize..=12, b in 1usize..=12) {
        prop_assert_eq!(complete_bipartite_one_planar(a, b), complete_bipartite_one_planar(b, a));
        prop_assert_eq!(complete_bipartite_one_planar(a, b), common::bipartite_closed_form(a, b));
        if !complete_bipartite_one_planar(a, b) {
            prop_assert!(!complete_bipartite_one_planar(a, b + 1));
        }
    }
}
