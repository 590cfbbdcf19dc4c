//! Randomized invariants: alternation is hereditary and reversal-stable,
//! permutation realizers tolerate a trailing repeat, local complementation
//! is an involution, induced-subgraph matches are sound, transitive
//! orientability matches bipartiteness on triangle-free graphs, and the
//! melon classifier is monotone under short-path appension.

use std::collections::BTreeSet;

use proptest::prelude::*;

use melonrep::graph::{
    build_melon, build_named, contains_induced, find_transitive_orientation, is_bipartite,
    is_isomorphic, line_graph, local_complement, reduce_to_core, Graph, MelonSpec, NamedGraph,
    ReduceStep,
};
use melonrep::melon::representation_number;
use melonrep::words::{represents, PermSequence, Word};

const POOL: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

/// Independent test-side alternation graph: vertices are the word's
/// letters, edges the strictly alternating pairs.
fn alternation(tokens: &[String]) -> Graph {
    let mut letters: Vec<&str> = Vec::new();
    for t in tokens {
        if !letters.contains(&t.as_str()) {
            letters.push(t);
        }
    }
    let mut g = Graph::new();
    for l in &letters {
        g.add_vertex(l);
    }
    for (i, a) in letters.iter().enumerate() {
        for b in letters.iter().skip(i + 1) {
            let seq: Vec<&str> = tokens
                .iter()
                .map(String::as_str)
                .filter(|t| t == a || t == b)
                .collect();
            if seq.windows(2).all(|p| p[0] != p[1]) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

fn vertex_set(g: &Graph) -> BTreeSet<String> {
    g.vertices().map(str::to_string).collect()
}

fn edge_set(g: &Graph) -> BTreeSet<(String, String)> {
    g.edges()
        .into_iter()
        .map(|(u, v)| {
            if u <= v {
                (u.to_string(), v.to_string())
            } else {
                (v.to_string(), u.to_string())
            }
        })
        .collect()
}

/// A shuffled word over 2..=6 letters in which every letter occurs
/// exactly twice.
fn arb_two_uniform() -> impl Strategy<Value = Vec<String>> {
    (2usize..=6).prop_flat_map(|n| {
        let base: Vec<String> = POOL[..n]
            .iter()
            .flat_map(|l| [l.to_string(), l.to_string()])
            .collect();
        Just(base).prop_shuffle()
    })
}

/// A shuffled word over 2..=5 letters, each occurring at least once, with
/// up to 18 extra occurrences.
fn arb_tokens() -> impl Strategy<Value = Vec<String>> {
    (2usize..=5)
        .prop_flat_map(|n| {
            proptest::collection::vec(0..n, 0..=18).prop_map(move |extra| {
                let mut tokens: Vec<String> = (0..n).map(|i| POOL[i].to_string()).collect();
                tokens.extend(extra.into_iter().map(|i| POOL[i].to_string()));
                tokens
            })
        })
        .prop_shuffle()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2usize..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.4), n * (n - 1) / 2).prop_map(
            move |bits| {
                let mut g = Graph::new();
                for label in &POOL[..n] {
                    g.add_vertex(label);
                }
                let mut t = 0;
                for (i, a) in POOL[..n].iter().enumerate() {
                    for b in &POOL[i + 1..n] {
                        if bits[t] {
                            g.add_edge(a, b).unwrap();
                        }
                        t += 1;
                    }
                }
                g
            },
        )
    })
}

fn arb_spec() -> impl Strategy<Value = MelonSpec> {
    proptest::collection::vec(1u32..=6, 1..=5).prop_map(|mut lens| {
        let mut seen_unit = false;
        for l in lens.iter_mut() {
            if *l == 1 {
                if seen_unit {
                    *l = 2;
                }
                seen_unit = true;
            }
        }
        MelonSpec::new(lens).expect("at most one unit path")
    })
}

fn has_triangle(g: &Graph) -> bool {
    let vs: Vec<&str> = g.vertices().collect();
    for (i, a) in vs.iter().enumerate() {
        for (j, b) in vs.iter().enumerate().skip(i + 1) {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in vs.iter().skip(j + 1) {
                if g.has_edge(a, c) && g.has_edge(b, c) {
                    return true;
                }
            }
        }
    }
    false
}

proptest! {
    #[test]
    fn two_uniform_words_survive_reversal(tokens in arb_two_uniform()) {
        let g = alternation(&tokens);
        let w = Word::new(tokens);
        prop_assert!(represents(&w, &g).unwrap());
        prop_assert!(represents(&w.reverse(), &g).unwrap());
    }

    #[test]
    fn restriction_is_hereditary(
        (tokens, keep) in arb_tokens().prop_flat_map(|tokens| {
            let mut letters: Vec<String> = Vec::new();
            for t in &tokens {
                if !letters.contains(t) {
                    letters.push(t.clone());
                }
            }
            let n = letters.len();
            (Just(tokens), proptest::sample::subsequence(letters, 0..=n))
        })
    ) {
        let keep_refs: Vec<&str> = keep.iter().map(String::as_str).collect();
        let restricted = Word::new(tokens.clone()).restrict(&keep_refs);
        let got = alternation(restricted.letters());

        let full = alternation(&tokens);
        let want = full.induced(&keep_refs).unwrap();

        prop_assert_eq!(vertex_set(&got), vertex_set(&want));
        prop_assert_eq!(edge_set(&got), edge_set(&want));
    }

    #[test]
    fn trailing_permutation_copy_is_harmless(
        (letters, perms) in (2usize..=6, 1usize..=3).prop_flat_map(|(n, k)| {
            let letters: Vec<String> = POOL[..n].iter().map(|s| s.to_string()).collect();
            let perm = Just(letters.clone()).prop_shuffle();
            (Just(letters), proptest::collection::vec(perm, k))
        })
    ) {
        let seq = PermSequence::new(
            letters.clone(),
            perms.iter().cloned().map(Word::new).collect(),
        )
        .unwrap();
        let g = alternation(seq.flatten().letters());
        prop_assert!(seq.represents(&g).unwrap());

        let mut extended = perms.clone();
        extended.push(perms.last().unwrap().clone());
        let seq2 = PermSequence::new(letters, extended.into_iter().map(Word::new).collect())
            .unwrap();
        prop_assert!(seq2.represents(&g).unwrap());
    }

    #[test]
    fn local_complement_is_an_involution(
        (g, pivot) in (arb_graph(8), any::<proptest::sample::Index>())
    ) {
        let vs: Vec<String> = g.vertices().map(str::to_string).collect();
        let v = pivot.get(&vs).as_str();

        let once = local_complement(&g, v).unwrap();
        for u in &vs {
            if u != v {
                prop_assert_eq!(g.has_edge(u, v), once.has_edge(u, v), "pivot edge to {}", u);
            }
        }
        let twice = local_complement(&once, v).unwrap();
        prop_assert_eq!(vertex_set(&twice), vertex_set(&g));
        prop_assert_eq!(edge_set(&twice), edge_set(&g));
    }

    #[test]
    fn induced_match_images_are_isomorphic(
        (host, which) in (arb_graph(8), 0usize..5)
    ) {
        let pattern = build_named(match which {
            0 => NamedGraph::Path(3),
            1 => NamedGraph::Path(4),
            2 => NamedGraph::Cycle(4),
            3 => NamedGraph::Cycle(5),
            _ => NamedGraph::Complete(3),
        })
        .unwrap();
        if let Some(embedding) = contains_induced(&host, &pattern).unwrap() {
            let image: Vec<&str> = embedding.values().map(String::as_str).collect();
            let sub = host.induced(&image).unwrap();
            prop_assert!(is_isomorphic(&sub, &pattern).unwrap().is_some());
            for (pu, hu) in &embedding {
                for (pv, hv) in &embedding {
                    if pu < pv {
                        prop_assert_eq!(pattern.has_edge(pu, pv), host.has_edge(hu, hv));
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orientation_agrees_with_bipartiteness_on_triangle_free(g in arb_graph(7)) {
        prop_assume!(!has_triangle(&g));
        let oriented = find_transitive_orientation(&g).unwrap().is_some();
        let parts = is_bipartite(&g);
        prop_assert_eq!(oriented, parts.is_some());
        if let Some((left, right)) = parts {
            for (u, v) in g.edges() {
                let cross = left.iter().any(|x| x == u) && right.iter().any(|x| x == v)
                    || left.iter().any(|x| x == v) && right.iter().any(|x| x == u);
                prop_assert!(cross, "edge ({}, {}) stays inside one side", u, v);
            }
        }
    }

    #[test]
    fn appending_a_short_path_never_raises_r(spec in arb_spec()) {
        let before = representation_number(&spec).unwrap().r;
        let mut lens = spec.lengths().to_vec();
        lens.push(2);
        let extended = MelonSpec::new(lens).unwrap();
        let after = representation_number(&extended).unwrap().r;
        prop_assert!(
            !(before == 2 && after == 3),
            "appending a length-2 path raised r from 2 to 3"
        );
        if before == 3 {
            prop_assert_eq!(after, 3);
        }
    }
}

/// Line graphs of all-length-2 melons are exactly the prism products of a
/// complete graph with an edge.
#[test]
fn all_short_melons_line_to_prism_products() {
    for m in 1..=5 {
        let spec = MelonSpec::new(vec![2; m]).unwrap();
        let lg = line_graph(&build_melon(&spec)).unwrap();
        let target = build_named(NamedGraph::KmBoxK2(m)).unwrap();
        assert!(
            is_isomorphic(&lg, &target).unwrap().is_some(),
            "m = {m} line graph is not the prism product"
        );
    }
}

/// Every three-long-paths melon (with or without an endpoint edge) up to
/// 14 vertices reduces to its length-3 core, and replaying the recorded
/// steps reproduces the reduction.
#[test]
fn long_triple_specs_reduce_to_their_cores() {
    let mut specs: Vec<Vec<u32>> = Vec::new();
    for a in 3..=9u32 {
        for b in a..=9 {
            for c in b..=9 {
                if a + b + c <= 15 {
                    specs.push(vec![a, b, c]);
                    specs.push(vec![1, a, b, c]);
                }
            }
        }
    }
    specs.push(vec![4, 1, 3, 5]);
    for lens in specs {
        let spec = MelonSpec::new(lens.clone()).unwrap();
        let (steps, core) = reduce_to_core(&spec).unwrap();

        let mut replay = build_melon(&spec);
        for step in &steps {
            replay = match step {
                ReduceStep::LocalComplement(v) => local_complement(&replay, v).unwrap(),
                ReduceStep::Delete(v) => melonrep::graph::delete_vertex(&replay, v).unwrap(),
            };
        }
        assert_eq!(vertex_set(&replay), vertex_set(&core), "{lens:?}");
        assert_eq!(edge_set(&replay), edge_set(&core), "{lens:?}");

        let target = if lens.contains(&1) {
            MelonSpec::new(vec![1, 3, 3, 3]).unwrap()
        } else {
            MelonSpec::new(vec![3, 3, 3]).unwrap()
        };
        assert!(
            is_isomorphic(&core, &build_melon(&target)).unwrap().is_some(),
            "{lens:?} core is not the length-3 melon"
        );
    }
}
