//! Exhaustive ground-truth searches for small graphs: the minimum uniformity
//! of a representing word, the minimum size of a permutation realizer, and a
//! seed-guided uniform search used by the constructive layers.
//!
//! All searches are single-threaded with a fixed branch order, so identical
//! inputs yield identical witnesses. A definitive "none" is returned only
//! after exhausting the space; running out of node budget is an error.

use crate::graph::{find_transitive_orientation, Graph, GraphError};
use crate::words::{represents, PermSequence, Word, WordError};
use thiserror::Error;

/// Caps for the exhaustive searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_vertices: usize,
    pub max_k: usize,
    pub node_limit: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_vertices: 10,
            max_k: 3,
            node_limit: 100_000_000,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {vertices} vertices, over the search cap of {max_vertices}")]
    SizeGuard { vertices: usize, max_vertices: usize },
    #[error("search stopped inconclusively after {nodes} nodes")]
    NodeLimitExceeded { nodes: u64 },
    #[error("k = {k} exceeds the budget's max_k = {max_k}")]
    BadK { k: usize, max_k: usize },
    #[error("seed letter {0:?} is not a vertex of the graph")]
    SeedNotInGraph(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_vertex_cap(g: &Graph, budget: &SearchBudget) -> Result<(), OracleError> {
    if g.vertex_count() > budget.max_vertices {
        return Err(OracleError::SizeGuard {
            vertices: g.vertex_count(),
            max_vertices: budget.max_vertices,
        });
    }
    if g.vertex_count() == 0 {
        return Err(OracleError::Word(WordError::EmptyWord));
    }
    Ok(())
}

/// Smallest k ≤ max_k admitting a k-uniform representing word, with the
/// first witness in canonical branch order. `Ok(None)` is a proof that no
/// k ≤ max_k works. The node budget is cumulative across k.
pub fn min_uniform_rep(
    g: &Graph,
    budget: &SearchBudget,
) -> Result<Option<(usize, Word)>, OracleError> {
    check_vertex_cap(g, budget)?;
    let mut nodes = 0u64;
    for k in 1..=budget.max_k {
        if let Some(w) = chain_search(g, k, None, budget.node_limit, &mut nodes)? {
            assert!(
                represents(&w, g)?,
                "uniform search witness failed re-verification"
            );
            return Ok(Some((k, w)));
        }
    }
    Ok(None)
}

/// A k-uniform representing word for `g`, exploring seed-shaped branches
/// first and canonical branch order otherwise; exhaustive within budget.
///
/// The seed is any word over a subset of the vertices; the search inserts
/// the seed's letters first (in first-occurrence order) and, as long as the
/// partial word still matches the seed, tries the seed's own placements
/// before all others. An empty seed gives the plain canonical search.
pub fn seeded_uniform_search(
    g: &Graph,
    k: usize,
    seed: &Word,
    budget: &SearchBudget,
) -> Result<Option<Word>, OracleError> {
    check_vertex_cap(g, budget)?;
    if k == 0 || k > budget.max_k {
        return Err(OracleError::BadK {
            k,
            max_k: budget.max_k,
        });
    }
    for letter in seed.letters() {
        if !g.contains_vertex(letter) {
            return Err(OracleError::SeedNotInGraph(letter.clone()));
        }
    }
    let mut nodes = 0u64;
    let found = chain_search(g, k, Some(seed), budget.node_limit, &mut nodes)?;
    if let Some(w) = &found {
        assert!(
            represents(w, g)?,
            "seeded search witness failed re-verification"
        );
    }
    Ok(found)
}

/// Seed-derived branch ordering: for the first `placements.len()` inserted
/// vertices, the gap multiset the seed itself uses.
struct SeedGuide {
    placements: Vec<Vec<usize>>,
}

/// The insertion-chain search for one uniformity k.
///
/// Vertices are inserted one at a time in a fixed order; a state is a
/// k-uniform word over the inserted prefix that represents the induced
/// subgraph on it. Each insertion enumerates all multisets of k gaps in
/// ascending order and keeps the placements under which the new letter
/// alternates with exactly its neighbors. Every k-uniform representing word
/// restricts to a unique such chain, so exhausting the tree proves absence.
fn chain_search(
    g: &Graph,
    k: usize,
    seed: Option<&Word>,
    node_limit: u64,
    nodes: &mut u64,
) -> Result<Option<Word>, OracleError> {
    let n = g.vertex_count();
    let ids: Vec<&str> = g.vertices().collect();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| g.has_edge(ids[i], ids[j])).collect())
        .collect();

    // Insertion order: seed letters by first occurrence, then the rest in
    // vertex order.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut in_order = vec![false; n];
    if let Some(seed) = seed {
        for letter in seed.letters() {
            let i = ids
                .iter()
                .position(|&v| v == letter)
                .expect("seed letters pre-checked");
            if !in_order[i] {
                in_order[i] = true;
                order.push(i);
            }
        }
    }
    for (i, &queued) in in_order.iter().enumerate() {
        if !queued {
            order.push(i);
        }
    }

    // Seed placements: for the j-th inserted seed vertex, the gap multiset
    // its occurrences use within the seed's own restriction; only built
    // while the seed stays k-uniform on its letters.
    let guide = seed.map(|seed| {
        let mut placements = Vec::new();
        for (j, &x) in order.iter().enumerate() {
            let prefix: Vec<&str> = order[..=j].iter().map(|&i| ids[i]).collect();
            if j >= order.len() || !seed.letters().iter().any(|l| l == ids[x]) {
                break;
            }
            let restricted = seed.restrict(&prefix);
            let occurrences = restricted
                .letters()
                .iter()
                .filter(|l| l.as_str() == ids[x])
                .count();
            if occurrences != k {
                break;
            }
            let mut gaps = Vec::with_capacity(k);
            let mut before = 0usize;
            for l in restricted.letters() {
                if l == ids[x] {
                    gaps.push(before);
                } else {
                    before += 1;
                }
            }
            placements.push(gaps);
        }
        SeedGuide { placements }
    });

    struct Ctx<'a> {
        adj: &'a [Vec<bool>],
        order: &'a [usize],
        k: usize,
        guide: Option<&'a SeedGuide>,
        node_limit: u64,
        nodes: &'a mut u64,
    }

    /// Inserts `x` into `word` at the gaps of `c`; returns `None` when the
    /// new letter fails to alternate with exactly its required neighbors.
    fn try_place(ctx: &mut Ctx, word: &[usize], x: usize, c: &[usize]) -> Option<Vec<usize>> {
        *ctx.nodes += 1;
        let mut next = Vec::with_capacity(word.len() + c.len());
        let mut ci = 0;
        for (gap, &letter) in word.iter().enumerate() {
            while ci < c.len() && c[ci] == gap {
                next.push(x);
                ci += 1;
            }
            next.push(letter);
        }
        while ci < c.len() {
            next.push(x);
            ci += 1;
        }
        // The pair (x, u) is fully decided now; earlier pairs are unchanged
        // by inserting x, so checking x against everything already inserted
        // keeps the whole state consistent.
        for &u in ctx.order {
            if u == x {
                break;
            }
            let mut prev = usize::MAX;
            let mut alternates = true;
            for &l in &next {
                if l != x && l != u {
                    continue;
                }
                if l == prev {
                    alternates = false;
                    break;
                }
                prev = l;
            }
            if alternates != ctx.adj[x][u] {
                return None;
            }
        }
        Some(next)
    }

    fn dfs(
        ctx: &mut Ctx,
        level: usize,
        word: Vec<usize>,
        on_seed: bool,
    ) -> Result<Option<Vec<usize>>, OracleError> {
        if level == ctx.order.len() {
            return Ok(Some(word));
        }
        let x = ctx.order[level];
        let gap_count = word.len();

        let suggested: Option<&Vec<usize>> = if on_seed {
            ctx.guide.and_then(|s| s.placements.get(level))
        } else {
            None
        };
        if let Some(c) = suggested {
            if *ctx.nodes >= ctx.node_limit {
                return Err(OracleError::NodeLimitExceeded { nodes: *ctx.nodes });
            }
            if let Some(next) = try_place(ctx, &word, x, c) {
                if let Some(hit) = dfs(ctx, level + 1, next, true)? {
                    return Ok(Some(hit));
                }
            }
        }

        let mut c = vec![0usize; ctx.k];
        loop {
            if Some(&c) != suggested {
                if *ctx.nodes >= ctx.node_limit {
                    return Err(OracleError::NodeLimitExceeded { nodes: *ctx.nodes });
                }
                if let Some(next) = try_place(ctx, &word, x, &c) {
                    if let Some(hit) = dfs(ctx, level + 1, next, false)? {
                        return Ok(Some(hit));
                    }
                }
            }
            // Lexicographic successor of the nondecreasing gap tuple.
            let mut i = ctx.k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if c[i] < gap_count {
                    let v = c[i] + 1;
                    for slot in c.iter_mut().skip(i) {
                        *slot = v;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                return Ok(None);
            }
        }
    }

    let mut ctx = Ctx {
        adj: &adj,
        order: &order,
        k,
        guide: guide.as_ref(),
        node_limit,
        nodes,
    };
    let hit = dfs(&mut ctx, 0, Vec::new(), true)?;
    Ok(hit.map(|word| Word::new(word.into_iter().map(|i| ids[i].to_string()).collect())))
}

/// Smallest k ≤ max_k with k permutations whose concatenation represents
/// `g`, with a verified realizer. `Ok(None)` is definitive.
///
/// Any realizer orders every edge identically in all its permutations, and
/// that edge orientation is transitive; so a graph with no transitive
/// orientation has no realizer of any size, a 2-realizer exists exactly when
/// the complement is also transitively orientable (the two orientations
/// union to a total order and its reverse-on-non-edges partner), and the
/// 3-realizer search may fix one transitive orientation once and range over
/// its linear extensions, because the minimum realizer size is the order
/// dimension of the induced partial order, which is the same for every
/// transitive orientation of a graph (a standard order-theoretic fact).
pub fn min_perm_rep(
    g: &Graph,
    budget: &SearchBudget,
) -> Result<Option<(usize, PermSequence)>, OracleError> {
    check_vertex_cap(g, budget)?;
    let n = g.vertex_count();
    let ids: Vec<String> = g.vertices().map(str::to_string).collect();

    // k = 1: exactly the complete graphs.
    let complete = (0..n).all(|i| (0..n).all(|j| i == j || g.has_edge(&ids[i], &ids[j])));
    if complete {
        let seq = PermSequence::new(
            ids.clone(),
            vec![Word::new(ids.clone())],
        )?;
        assert!(seq.represents(g)?, "complete-graph realizer must verify");
        return Ok(Some((1, seq)));
    }
    if budget.max_k < 2 {
        return Ok(None);
    }

    let Some(orientation) = find_transitive_orientation(g)? else {
        return Ok(None);
    };

    // Arc matrix of the fixed transitive orientation.
    let idx = |v: &str| ids.iter().position(|u| u == v).expect("own vertex");
    let mut arc = vec![vec![false; n]; n];
    for (u, v) in orientation.arcs() {
        arc[idx(u)][idx(v)] = true;
    }

    // k = 2: realizable exactly when the complement is transitively
    // orientable; the union of the two orientations is then a transitive
    // tournament, read off as a total order.
    if let Some(co) = find_transitive_orientation(&g.complement())? {
        let mut carc = vec![vec![false; n]; n];
        for (u, v) in co.arcs() {
            carc[idx(u)][idx(v)] = true;
        }
        let order1 = lex_topo_order(n, |a, b| arc[a][b] || carc[a][b])
            .expect("union of the two orientations is acyclic");
        let order2 = lex_topo_order(n, |a, b| arc[a][b] || carc[b][a])
            .expect("union with the reversed complement orientation is acyclic");
        let seq = PermSequence::new(
            ids.clone(),
            vec![perm_word(&ids, &order1), perm_word(&ids, &order2)],
        )?;
        assert!(seq.represents(g)?, "two-permutation realizer must verify");
        return Ok(Some((2, seq)));
    }
    if budget.max_k < 3 {
        return Ok(None);
    }

    // k = 3: enumerate ordered pairs of linear extensions of the fixed
    // orientation; a third permutation exists for a pair exactly when the
    // constraints it forces (follow every edge's arc; reverse every
    // non-edge the pair ordered consistently) are acyclic.
    let mut nodes = 0u64;
    let mut first: Vec<usize> = Vec::with_capacity(n);
    let mut second: Vec<usize> = Vec::with_capacity(n);
    let mut used1 = vec![false; n];
    let mut used2 = vec![false; n];

    struct PairCtx<'a> {
        n: usize,
        arc: &'a [Vec<bool>],
        adj: Vec<Vec<bool>>,
        node_limit: u64,
        nodes: &'a mut u64,
    }

    // Orders found by the nested searches; `None` once a branch is exhausted.
    type SecondAndThird = Option<(Vec<usize>, Vec<usize>)>;
    type FullTriple = Option<(Vec<usize>, Vec<usize>, Vec<usize>)>;

    fn extend_second(
        ctx: &mut PairCtx,
        first: &[usize],
        second: &mut Vec<usize>,
        used2: &mut [bool],
    ) -> Result<SecondAndThird, OracleError> {
        let n = ctx.n;
        if second.len() == n {
            *ctx.nodes += 1;
            if *ctx.nodes > ctx.node_limit {
                return Err(OracleError::NodeLimitExceeded { nodes: *ctx.nodes });
            }
            // Positions in both extensions.
            let mut pos1 = vec![0usize; n];
            let mut pos2 = vec![0usize; n];
            for (p, &v) in first.iter().enumerate() {
                pos1[v] = p;
            }
            for (p, &v) in second.iter().enumerate() {
                pos2[v] = p;
            }
            let mut forced = ctx.arc.to_vec();
            for a in 0..n {
                for b in (a + 1)..n {
                    if ctx.adj[a][b] {
                        continue;
                    }
                    let first_says = pos1[a] < pos1[b];
                    let second_says = pos2[a] < pos2[b];
                    if first_says == second_says {
                        // The third order must break the agreement.
                        if first_says {
                            forced[b][a] = true;
                        } else {
                            forced[a][b] = true;
                        }
                    }
                }
            }
            return Ok(lex_topo_order(n, |a, b| forced[a][b])
                .map(|third| (second.clone(), third)));
        }
        'cand: for v in 0..n {
            if used2[v] {
                continue;
            }
            for (u, &used) in used2.iter().enumerate() {
                if !used && u != v && ctx.arc[u][v] {
                    continue 'cand;
                }
            }
            used2[v] = true;
            second.push(v);
            let hit = extend_second(ctx, first, second, used2)?;
            second.pop();
            used2[v] = false;
            if hit.is_some() {
                return Ok(hit);
            }
        }
        Ok(None)
    }

    fn extend_first(
        ctx: &mut PairCtx,
        first: &mut Vec<usize>,
        used1: &mut [bool],
        second: &mut Vec<usize>,
        used2: &mut [bool],
    ) -> Result<FullTriple, OracleError> {
        let n = ctx.n;
        if first.len() == n {
            return Ok(extend_second(ctx, first, second, used2)?
                .map(|(l2, l3)| (first.clone(), l2, l3)));
        }
        'cand: for v in 0..n {
            if used1[v] {
                continue;
            }
            for (u, &used) in used1.iter().enumerate() {
                if !used && u != v && ctx.arc[u][v] {
                    continue 'cand;
                }
            }
            used1[v] = true;
            first.push(v);
            let hit = extend_first(ctx, first, used1, second, used2)?;
            first.pop();
            used1[v] = false;
            if hit.is_some() {
                return Ok(hit);
            }
        }
        Ok(None)
    }

    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| g.has_edge(&ids[i], &ids[j])).collect())
        .collect();
    let mut ctx = PairCtx {
        n,
        arc: &arc,
        adj,
        node_limit: budget.node_limit,
        nodes: &mut nodes,
    };
    if let Some((l1, l2, l3)) =
        extend_first(&mut ctx, &mut first, &mut used1, &mut second, &mut used2)?
    {
        let seq = PermSequence::new(
            ids.clone(),
            vec![
                perm_word(&ids, &l1),
                perm_word(&ids, &l2),
                perm_word(&ids, &l3),
            ],
        )?;
        assert!(seq.represents(g)?, "three-permutation realizer must verify");
        return Ok(Some((3, seq)));
    }
    Ok(None)
}

fn perm_word(ids: &[String], order: &[usize]) -> Word {
    Word::new(order.iter().map(|&i| ids[i].clone()).collect())
}

/// Kahn's algorithm picking the smallest available index; `None` on a cycle.
fn lex_topo_order(n: usize, has_arc: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for a in 0..n {
        for (b, deg) in indeg.iter_mut().enumerate() {
            if a != b && has_arc(a, b) {
                *deg += 1;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut done = vec![false; n];
    for _ in 0..n {
        let v = (0..n).find(|&v| !done[v] && indeg[v] == 0)?;
        done[v] = true;
        out.push(v);
        for b in 0..n {
            if b != v && !done[b] && has_arc(v, b) {
                indeg[b] -= 1;
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_melon, build_named, MelonSpec, NamedGraph};

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn complete_graphs_are_one_uniform() {
        let k3 = build_named(NamedGraph::Complete(3)).unwrap();
        let (k, w) = min_uniform_rep(&k3, &budget()).unwrap().unwrap();
        assert_eq!(k, 1);
        assert!(represents(&w, &k3).unwrap());
    }

    #[test]
    fn five_cycle_needs_two_uniform() {
        let c5 = build_named(NamedGraph::Cycle(5)).unwrap();
        let (k, w) = min_uniform_rep(&c5, &budget()).unwrap().unwrap();
        assert_eq!(k, 2);
        assert!(represents(&w, &c5).unwrap());
    }

    #[test]
    fn six_cycle_two_uniform() {
        let c6 = build_named(NamedGraph::Cycle(6)).unwrap();
        let (k, _) = min_uniform_rep(&c6, &budget()).unwrap().unwrap();
        assert_eq!(k, 2);
    }

    #[test]
    fn wheel_on_six_vertices_has_no_short_uniform_word() {
        // The 5-wheel is the smallest graph representable by no word at all;
        // the search proves none exists for k up to 3.
        let mut w5 = build_named(NamedGraph::Cycle(5)).unwrap();
        for i in 1..=5 {
            w5.add_edge("hub", &format!("c{i}")).unwrap();
        }
        assert_eq!(min_uniform_rep(&w5, &budget()).unwrap(), None);
    }

    #[test]
    fn determinism_of_witnesses() {
        let c5 = build_named(NamedGraph::Cycle(5)).unwrap();
        let a = min_uniform_rep(&c5, &budget()).unwrap().unwrap();
        let b = min_uniform_rep(&c5, &budget()).unwrap().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn node_limit_is_an_error_not_a_none() {
        let c5 = build_named(NamedGraph::Cycle(5)).unwrap();
        let tiny = SearchBudget {
            node_limit: 3,
            ..budget()
        };
        assert!(matches!(
            min_uniform_rep(&c5, &tiny),
            Err(OracleError::NodeLimitExceeded { .. })
        ));
    }

    #[test]
    fn vertex_cap_is_enforced() {
        let big = build_melon(&MelonSpec::new(vec![6, 6]).unwrap());
        assert!(matches!(
            min_uniform_rep(&big, &budget()),
            Err(OracleError::SizeGuard { .. })
        ));
    }

    #[test]
    fn seeded_search_on_path() {
        let p4 = build_named(NamedGraph::Path(4)).unwrap();
        let w = seeded_uniform_search(&p4, 2, &Word::default(), &budget())
            .unwrap()
            .unwrap();
        assert!(represents(&w, &p4).unwrap());
        assert!(w.is_k_uniform(2));
    }

    #[test]
    fn seeded_search_follows_a_consistent_seed() {
        // Seed with a full known representant: the search must return it.
        let p4 = build_named(NamedGraph::Path(4)).unwrap();
        let known = Word::parse("c2 c1 c4 c3 c4 c2 c3 c1");
        let w = seeded_uniform_search(&p4, 2, &known, &budget())
            .unwrap()
            .unwrap();
        assert_eq!(w, known);
    }

    #[test]
    fn seeded_search_rejects_foreign_letters() {
        let p4 = build_named(NamedGraph::Path(4)).unwrap();
        let seed = Word::parse("zz");
        assert!(matches!(
            seeded_uniform_search(&p4, 2, &seed, &budget()),
            Err(OracleError::SeedNotInGraph(_))
        ));
        assert!(matches!(
            seeded_uniform_search(&p4, 9, &Word::default(), &budget()),
            Err(OracleError::BadK { .. })
        ));
    }

    #[test]
    fn perm_rep_of_complete_graph() {
        let k4 = build_named(NamedGraph::Complete(4)).unwrap();
        let (k, seq) = min_perm_rep(&k4, &budget()).unwrap().unwrap();
        assert_eq!(k, 1);
        assert!(seq.represents(&k4).unwrap());
    }

    #[test]
    fn perm_rep_of_path_is_two() {
        let p4 = build_named(NamedGraph::Path(4)).unwrap();
        let (k, seq) = min_perm_rep(&p4, &budget()).unwrap().unwrap();
        assert_eq!(k, 2);
        assert!(seq.represents(&p4).unwrap());
    }

    #[test]
    fn perm_rep_of_complete_bipartite_is_two() {
        let g = build_named(NamedGraph::CompleteBipartite(2, 3)).unwrap();
        let (k, seq) = min_perm_rep(&g, &budget()).unwrap().unwrap();
        assert_eq!(k, 2);
        assert!(seq.represents(&g).unwrap());
    }

    #[test]
    fn six_cycle_needs_three_permutations() {
        let c6 = build_named(NamedGraph::Cycle(6)).unwrap();
        let (k, seq) = min_perm_rep(&c6, &budget()).unwrap().unwrap();
        assert_eq!(k, 3);
        assert!(seq.represents(&c6).unwrap());
    }

    #[test]
    fn prism_has_no_permutation_realizer() {
        let pr3 = build_named(NamedGraph::Prism3).unwrap();
        assert_eq!(min_perm_rep(&pr3, &budget()).unwrap(), None);
    }

    #[test]
    fn perm_rep_determinism() {
        let c6 = build_named(NamedGraph::Cycle(6)).unwrap();
        let a = min_perm_rep(&c6, &budget()).unwrap();
        let b = min_perm_rep(&c6, &budget()).unwrap();
        assert_eq!(a, b);
    }
}
