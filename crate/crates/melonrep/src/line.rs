//! Line graphs of melons: word-representability, representation number,
//! and comparability classification, with constructive certificate words.
//!
//! The line graph replaces each melon edge by a vertex; two vertices are
//! adjacent when the edges share an endpoint. Each constituent path thus
//! becomes a chain of edge-letters, and the hub endpoints become two
//! cliques (one per hub) over the chains' end letters. An endpoint edge of
//! the melon belongs to both cliques. The shape of the length spectrum
//! decides everything: the line graph is word-representable unless the
//! melon has an endpoint edge and at least three length-2 paths, its
//! representation number is 3 exactly when at least three paths have
//! length ≥ 2, and it is a comparability graph only in a short list of
//! degenerate families.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::{
    build_named, contains_induced, neighborhood_comparability_check, Graph, GraphError, MelonSpec,
    NamedGraph, INDUCED_HOST_LIMIT,
};
use crate::melon::two_uniform_path_word;
use crate::oracle::OracleError;
use crate::words::{represents, PermSequence, Word, WordError};

/// Errors from the line-graph constructions.
#[derive(Debug, Error)]
pub enum LineError {
    /// An operation was called outside its documented domain.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    /// The line graph admits no representing word at all.
    #[error("the line graph of ({0}) is not word-representable")]
    NotWordRepresentable(String),
    /// A chain-extension search ran out of budget.
    #[error("search budget exceeded for ({spec}) while {stage}")]
    SearchBudgetExceeded { spec: String, stage: String },
    /// A constructed word failed its re-verification; surfaced, never
    /// silently patched.
    #[error("construction for ({spec}) failed verification while {stage}")]
    VerificationFailed { spec: String, stage: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Comparability families among line graphs of melons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineClass {
    /// Line graph of a single constituent path: a path on `n` vertices.
    LP(usize),
    /// Line graph of an even cycle: the cycle C_n itself (n even).
    LC(usize),
    /// Line graph of the triangle: the triangle again.
    LK3,
    /// Line graph of the two-triangle book sharing an edge.
    LA2,
    /// Everything else; never a comparability graph.
    NotComparability,
}

impl fmt::Display for LineClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineClass::LP(n) => write!(f, "LP_{n}"),
            LineClass::LC(n) => write!(f, "LC_{n}"),
            LineClass::LK3 => write!(f, "LK_3"),
            LineClass::LA2 => write!(f, "LA_2"),
            LineClass::NotComparability => write!(f, "NotComparability"),
        }
    }
}

/// An induced-subgraph witness that a line graph is not a comparability
/// graph: the pattern's name and an embedding into the line graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedWitness {
    pub pattern: String,
    pub embedding: BTreeMap<String, String>,
}

/// Comparability classification of a melon's line graph.
#[derive(Debug, Clone)]
pub struct LineComparability {
    pub class: LineClass,
    /// Minimum number of permutations whose concatenation represents the
    /// line graph; absent for non-comparability graphs.
    pub prn: Option<usize>,
    /// Present for desk-scale non-comparability line graphs.
    pub witness: Option<InducedWitness>,
}

/// Representation verdict for a melon's line graph.
#[derive(Debug, Clone)]
pub struct LineVerdict {
    pub word_representable: bool,
    /// A vertex whose neighborhood admits no transitive orientation, when
    /// the line graph is not word-representable.
    pub refuter: Option<String>,
    pub r: Option<usize>,
    pub certificate: Option<Word>,
    pub comparability_class: LineClass,
}

fn word(tokens: Vec<String>) -> Word {
    Word::new(tokens)
}

/// The label of path `i`'s edge at the hub "0": "e{i}", or "e_0" for an
/// endpoint edge.
fn zero_side_label(spec: &MelonSpec, i: usize) -> String {
    if spec.lengths()[i - 1] == 1 {
        "e_0".into()
    } else {
        format!("e{i}")
    }
}

/// The label of path `i`'s edge at the hub "0p": "e{i}p", or "e_0".
fn prime_side_label(spec: &MelonSpec, i: usize) -> String {
    if spec.lengths()[i - 1] == 1 {
        "e_0".into()
    } else {
        format!("e{i}p")
    }
}

/// Path `i`'s edges as line-graph labels, walking from "0p" to "0":
/// "e{i}p", then interior edges "e{i}_1" …, then "e{i}". An endpoint edge
/// is the single label "e_0".
pub fn path_edge_labels(spec: &MelonSpec, i: usize) -> Vec<String> {
    let len = spec.lengths()[i - 1] as usize;
    if len == 1 {
        return vec!["e_0".into()];
    }
    let mut out = vec![format!("e{i}p")];
    for j in 1..=(len - 2) {
        out.push(format!("e{i}_{j}"));
    }
    out.push(format!("e{i}"));
    out
}

/// The line graph of the melon over edge labels: chains per path, plus one
/// clique per hub over the end labels.
pub fn build_line_melon(spec: &MelonSpec) -> Graph {
    let mut g = Graph::new();
    let m = spec.path_count();
    for i in 1..=m {
        for label in path_edge_labels(spec, i) {
            g.add_vertex(&label);
        }
    }
    for i in 1..=m {
        let chain = path_edge_labels(spec, i);
        for pair in chain.windows(2) {
            g.add_edge(&pair[0], &pair[1]).expect("distinct labels");
        }
    }
    for side in [zero_side_label, prime_side_label] {
        let ends: Vec<String> = (1..=m).map(|i| side(spec, i)).collect();
        for (a, ea) in ends.iter().enumerate() {
            for eb in ends.iter().skip(a + 1) {
                g.add_edge(ea, eb).expect("distinct labels");
            }
        }
    }
    g
}

/// Whether the melon's line graph is word-representable: false exactly
/// when an endpoint edge coexists with three or more length-2 paths (the
/// triangular-book obstruction).
pub fn line_word_representable(spec: &MelonSpec) -> bool {
    let twos = spec.lengths().iter().filter(|&&l| l == 2).count();
    !(spec.has_unit_path() && twos >= 3)
}

/// A vertex of the line graph whose neighborhood admits no transitive
/// orientation, if any; such a vertex refutes word-representability.
pub fn line_refuter(spec: &MelonSpec) -> Result<Option<String>, LineError> {
    Ok(neighborhood_comparability_check(&build_line_melon(spec))?)
}

/// 2-uniform (or 1-uniform) word for the line graph of a two-path melon,
/// which is the cycle of length ℓ1+ℓ2 (the triangle collapses to a single
/// copy of each letter).
pub fn line_word_cycle(spec: &MelonSpec) -> Result<Word, LineError> {
    if spec.path_count() != 2 {
        return Err(LineError::PreconditionViolated(format!(
            "line cycle word needs exactly 2 constituent paths, got {}",
            spec.path_count()
        )));
    }
    let mut ring = path_edge_labels(spec, 1);
    let mut back = path_edge_labels(spec, 2);
    back.reverse();
    ring.extend(back);
    let w = if ring.len() == 3 {
        // The triangle is complete: one occurrence of each letter.
        word(ring)
    } else {
        crate::melon::two_uniform_cycle_word(&ring)
    };
    verify(spec, w, "building the cycle word")
}

/// 2-uniform word for the line graph of a three-path melon with an
/// endpoint edge: the two long paths close a cycle c_1 … c_n, and the
/// endpoint-edge letter is woven in twice, once next to each hub pair.
pub fn line_word_three_paths_adjacent(spec: &MelonSpec) -> Result<Word, LineError> {
    if spec.path_count() != 3 || !spec.has_unit_path() {
        return Err(LineError::PreconditionViolated(format!(
            "needs exactly 3 constituent paths, one being the endpoint edge, got ({spec})"
        )));
    }
    let longs: Vec<usize> = (1..=3).filter(|&i| spec.lengths()[i - 1] >= 2).collect();
    let (a, b) = (longs[0], longs[1]);
    let lb = spec.lengths()[b - 1] as usize;
    // Ring: e_a, then path b walked 0→0p, then path a walked 0p→0 stopping
    // short of e_a. The hub-pair positions are (c_1, c_2) and (c_i, c_{i+1}).
    let mut ring = vec![zero_side_label(spec, a)];
    let mut back = path_edge_labels(spec, b);
    back.reverse();
    ring.extend(back);
    let along = path_edge_labels(spec, a);
    ring.extend(along[..along.len() - 1].iter().cloned());
    let n = ring.len();
    let i = lb + 1;

    let mut tokens = vec![ring[0].clone(), ring[n - 1].clone()];
    for t in 2..=n {
        tokens.push(ring[t - 1].clone());
        if t == 2 || t == i + 1 {
            tokens.push("e_0".into());
        }
        tokens.push(ring[t - 2].clone());
    }
    verify(spec, word(tokens), "weaving the endpoint edge into the cycle word")
}

/// The 3-uniform word e_1…e_m e′_1e_1…e′_me_m e′_1…e′_m e_1e′_1…e_me′_m
/// representing the prism-product of K_m with an edge, over labels
/// "e{i}" / "e{i}p".
pub fn km_k2_word(mcount: usize) -> Result<Word, LineError> {
    if mcount < 1 {
        return Err(GraphError::SpecInvalid("product word needs m >= 1".into()).into());
    }
    let e = |i: usize| format!("e{i}");
    let ep = |i: usize| format!("e{i}p");
    let mut tokens = Vec::with_capacity(6 * mcount);
    for i in 1..=mcount {
        tokens.push(e(i));
    }
    for i in 1..=mcount {
        tokens.push(ep(i));
        tokens.push(e(i));
    }
    for i in 1..=mcount {
        tokens.push(ep(i));
    }
    for i in 1..=mcount {
        tokens.push(e(i));
        tokens.push(ep(i));
    }
    let w = word(tokens);
    let target = build_named(NamedGraph::KmBoxK2(mcount))?;
    if !represents(&w, &target)? {
        return Err(LineError::VerificationFailed {
            spec: format!("product of K_{mcount} with an edge"),
            stage: "building the product word".into(),
        });
    }
    Ok(w)
}

/// Three permutations realizing H(m): two K_m copies a_1..a_m / b_1..b_m
/// with a universal x, where only the first two cross pairs a_i–b_i are
/// edges. The pair order is uniform across all three permutations exactly
/// for i ∈ {1, 2}; every later pair flips in the third permutation.
pub fn h_perms(mcount: usize) -> Result<PermSequence, LineError> {
    if mcount < 2 {
        return Err(LineError::PreconditionViolated(format!(
            "the three-permutation realizer needs at least 2 non-unit parts, got {mcount}"
        )));
    }
    let a = |i: usize| format!("a{i}");
    let b = |i: usize| format!("b{i}");

    let mut q1 = vec![a(1), b(2)];
    for j in 3..=mcount {
        q1.push(a(j));
        q1.push(b(j));
    }
    q1.extend([a(2), b(1), "x".into()]);

    let mut q2 = vec![a(1)];
    for j in 3..=mcount {
        q2.push(a(j));
    }
    q2.extend([b(2), a(2)]);
    for j in 3..=mcount {
        q2.push(b(j));
    }
    q2.extend([b(1), "x".into()]);

    let mut q3 = vec![b(2)];
    for j in 3..=mcount {
        q3.push(b(j));
    }
    q3.extend([a(1), b(1)]);
    for j in 3..=mcount {
        q3.push(a(j));
    }
    q3.extend([a(2), "x".into()]);

    let mut letters: Vec<String> = (1..=mcount).map(a).collect();
    letters.extend((1..=mcount).map(b));
    letters.push("x".into());
    let seq = PermSequence::new(letters, vec![word(q1), word(q2), word(q3)])?;
    let target = build_named(NamedGraph::H(mcount))?;
    if !seq.represents(&target)? {
        return Err(LineError::VerificationFailed {
            spec: format!("H({mcount})"),
            stage: "building the three-permutation realizer".into(),
        });
    }
    Ok(seq)
}

/// First position where `a b` occur as consecutive tokens.
fn find_factor(tokens: &[String], a: &str, b: &str) -> usize {
    tokens
        .windows(2)
        .position(|w| w[0] == a && w[1] == b)
        .unwrap_or_else(|| panic!("factor {a} {b} not found"))
}

/// Replaces the first `a b` factor with the given tokens.
fn replace_factor(tokens: &mut Vec<String>, a: &str, b: &str, with: &[&str]) {
    let at = find_factor(tokens, a, b);
    tokens.splice(at..at + 2, with.iter().map(|s| s.to_string()));
}

/// Inserts `ins` right after the first occurrence of `after`.
fn insert_after(tokens: &mut Vec<String>, after: &str, ins: &str) {
    let at = tokens
        .iter()
        .position(|t| t == after)
        .unwrap_or_else(|| panic!("token {after} not found"));
    tokens.insert(at + 1, ins.to_string());
}

/// Attempt cap for chain-extension searches; no sweep-scale spec reaches it.
const EXTEND_ATTEMPT_CAP: u64 = 50_000_000;

/// Extends the current word to cover the full chains of the given paths
/// via a seeded backtracking search over the extended graph: the prior
/// word's first occurrences fix the letter order, the missing interior
/// letters append to it chain by chain, and placements are explored
/// exhaustively in that order.
fn extend_chains(
    spec: &MelonSpec,
    full: &Graph,
    tokens: Vec<String>,
    paths: &[usize],
) -> Result<Vec<String>, LineError> {
    let mut order: Vec<String> = Vec::new();
    for t in &tokens {
        if !order.contains(t) {
            order.push(t.clone());
        }
    }
    for &i in paths {
        for label in path_edge_labels(spec, i) {
            if !order.contains(&label) {
                order.push(label);
            }
        }
    }
    let refs: Vec<&str> = order.iter().map(String::as_str).collect();
    let target = full.induced(&refs)?;
    match crate::melon::lift_search(&target, &order, EXTEND_ATTEMPT_CAP) {
        Some(w) => Ok(w.letters().to_vec()),
        None => Err(LineError::SearchBudgetExceeded {
            spec: spec.to_string(),
            stage: format!("extending the chains of paths {paths:?}"),
        }),
    }
}

/// 3-uniform word for the line graph of a melon without an endpoint edge:
/// start from the product word over the end letters, break each non-edge
/// end pair by a factor swap, realize one interior letter per length-3
/// path by factor surgery, and grow longer chains by seeded search.
pub fn line_word_nonadjacent(spec: &MelonSpec) -> Result<Word, LineError> {
    if spec.has_unit_path() {
        return Err(LineError::PreconditionViolated(format!(
            "needs non-adjacent hubs, but ({spec}) has an endpoint edge"
        )));
    }
    let m = spec.path_count();
    let lens = spec.lengths();
    let mut tokens = km_k2_word(m)?.letters().to_vec();
    for i in 1..=m {
        let len = lens[i - 1] as usize;
        if len <= 2 {
            continue;
        }
        let e = format!("e{i}");
        let ep = format!("e{i}p");
        if len == 3 {
            // One interior letter: weave it so it alternates with exactly
            // the two chain ends, which stop alternating with each other.
            let x = format!("e{i}_1");
            replace_factor(&mut tokens, &e, &ep, &[&e, &x, &ep]);
            replace_factor(&mut tokens, &ep, &e, &[&x, &e, &ep, &x]);
        } else {
            // Longer chains come from the seeded extension; the swap
            // already breaks the end pair's alternation.
            replace_factor(&mut tokens, &ep, &e, &[&e, &ep]);
        }
    }
    let full = build_line_melon(spec);
    let long: Vec<usize> = (1..=m).filter(|&i| lens[i - 1] >= 4).collect();
    if !long.is_empty() {
        tokens = extend_chains(spec, &full, tokens, &long)?;
    }
    verify(spec, word(tokens), "assembling the non-adjacent line word")
}

/// 3-uniform word for the line graph of a melon with an endpoint edge:
/// start from the H-realizer's flattening over the end letters (sorted by
/// ascending length), apply per-part factor surgery for length-3 paths,
/// and grow longer chains by seeded search.
pub fn line_word_adjacent(spec: &MelonSpec) -> Result<Word, LineError> {
    if !spec.has_unit_path() {
        return Err(LineError::PreconditionViolated(format!(
            "needs an endpoint edge, but ({spec}) has none"
        )));
    }
    if !line_word_representable(spec) {
        return Err(LineError::PreconditionViolated(format!(
            "the line graph of ({spec}) is not word-representable"
        )));
    }
    let lens = spec.lengths();
    let mut parts: Vec<usize> = (1..=spec.path_count())
        .filter(|&i| lens[i - 1] >= 2)
        .collect();
    parts.sort_by_key(|&i| (lens[i - 1], i));
    let mm = parts.len();
    let seq = h_perms(mm)?;

    // Rename a_t / b_t / x to the line labels of the t-th shortest part.
    let rename = |token: &String| -> String {
        if token == "x" {
            return "e_0".into();
        }
        let (side, t) = token.split_at(1);
        let t: usize = t.parse().expect("h label index");
        let i = parts[t - 1];
        match side {
            "a" => format!("e{i}"),
            _ => format!("e{i}p"),
        }
    };
    let mut q: Vec<Vec<String>> = seq
        .perms()
        .iter()
        .map(|p| p.letters().iter().map(rename).collect())
        .collect();

    for (t, &i) in parts.iter().enumerate() {
        let t = t + 1;
        let len = lens[i - 1] as usize;
        if len == 2 {
            continue;
        }
        let e = format!("e{i}");
        let ep = format!("e{i}p");
        let y = format!("e{i}_1");
        match t {
            1 => {
                // The first pair keeps uniform order e, ep across all three
                // permutations; break it in the third.
                if len == 3 {
                    replace_factor(&mut q[2], &e, &ep, &[&y, &ep, &e, &y]);
                    insert_after(&mut q[0], &ep, &y);
                } else {
                    replace_factor(&mut q[2], &e, &ep, &[&ep, &e]);
                }
            }
            2 => {
                // The second pair keeps uniform order ep, e; break it in
                // the second permutation.
                if len == 3 {
                    replace_factor(&mut q[1], &ep, &e, &[&y, &e, &ep, &y]);
                    insert_after(&mut q[2], &e, &y);
                } else {
                    replace_factor(&mut q[1], &ep, &e, &[&e, &ep]);
                }
            }
            _ => {
                // Later pairs already flip order in the third permutation;
                // only length-3 paths need their interior letter woven in.
                if len == 3 {
                    replace_factor(&mut q[0], &e, &ep, &[&y, &e, &ep, &y]);
                    insert_after(&mut q[1], &ep, &y);
                }
            }
        }
    }
    let mut tokens: Vec<String> = q.into_iter().flatten().collect();
    let full = build_line_melon(spec);
    let long: Vec<usize> = parts
        .iter()
        .copied()
        .filter(|&i| lens[i - 1] >= 4)
        .collect();
    if !long.is_empty() {
        tokens = extend_chains(spec, &full, tokens, &long)?;
    }
    verify(spec, word(tokens), "assembling the adjacent line word")
}

fn verify(spec: &MelonSpec, w: Word, stage: &str) -> Result<Word, LineError> {
    if !represents(&w, &build_line_melon(spec))? {
        return Err(LineError::VerificationFailed {
            spec: spec.to_string(),
            stage: stage.into(),
        });
    }
    Ok(w)
}

/// Comparability family of the melon's line graph, from the length
/// spectrum alone.
fn classify(spec: &MelonSpec) -> LineClass {
    let lens = spec.lengths();
    match lens.len() {
        1 => LineClass::LP(lens[0] as usize),
        2 => {
            let sum = (lens[0] + lens[1]) as usize;
            if sum == 3 {
                LineClass::LK3
            } else if lens[0] % 2 == lens[1] % 2 {
                LineClass::LC(sum)
            } else {
                LineClass::NotComparability
            }
        }
        _ => {
            let mut sorted: Vec<u32> = lens.to_vec();
            sorted.sort_unstable();
            if sorted == [1, 2, 2] {
                LineClass::LA2
            } else {
                LineClass::NotComparability
            }
        }
    }
}

/// Representation number of the melon's line graph with a verifying
/// certificate: 1 for the complete degenerate cases, 3 when at least three
/// paths have length ≥ 2, and 2 otherwise.
pub fn line_rep_number(spec: &MelonSpec) -> Result<LineVerdict, LineError> {
    if !line_word_representable(spec) {
        return Err(LineError::NotWordRepresentable(spec.to_string()));
    }
    let lens = spec.lengths();
    let m = spec.path_count();
    let big = lens.iter().filter(|&&l| l >= 2).count();
    let total: u32 = lens.iter().sum();

    let (r, certificate) = if m == 1 && lens[0] <= 2 {
        let w = word(path_edge_labels(spec, 1));
        (1, w)
    } else if m == 2 && total == 3 {
        (1, line_word_cycle(spec)?)
    } else if big >= 3 {
        let w = if spec.has_unit_path() {
            line_word_adjacent(spec)?
        } else {
            line_word_nonadjacent(spec)?
        };
        (3, w)
    } else {
        let w = match m {
            1 => two_uniform_path_word(&path_edge_labels(spec, 1)),
            2 => line_word_cycle(spec)?,
            _ => line_word_three_paths_adjacent(spec)?,
        };
        (2, w)
    };
    if !certificate.is_k_uniform(r) || !represents(&certificate, &build_line_melon(spec))? {
        return Err(LineError::VerificationFailed {
            spec: spec.to_string(),
            stage: "checking the certificate's uniformity".into(),
        });
    }
    Ok(LineVerdict {
        word_representable: true,
        refuter: None,
        r: Some(r),
        certificate: Some(certificate),
        comparability_class: classify(spec),
    })
}

/// Comparability classification of the melon's line graph: the family, the
/// permutation count for the comparability families, and an induced
/// witness for the rest (searched among the net, the net-plus-edge, odd
/// cycles, and the triangular prism, within the size guard).
pub fn line_comparability(spec: &MelonSpec) -> Result<LineComparability, LineError> {
    let class = classify(spec);
    let prn = match &class {
        LineClass::LP(n) => Some(if *n <= 2 { 1 } else { 2 }),
        LineClass::LC(n) => Some(if *n == 4 { 2 } else { 3 }),
        LineClass::LK3 => Some(1),
        LineClass::LA2 => Some(2),
        LineClass::NotComparability => None,
    };
    let witness = if class == LineClass::NotComparability {
        noncomparability_witness(spec)?
    } else {
        None
    };
    Ok(LineComparability {
        class,
        prn,
        witness,
    })
}

fn noncomparability_witness(spec: &MelonSpec) -> Result<Option<InducedWitness>, LineError> {
    let lg = build_line_melon(spec);
    if lg.vertex_count() > INDUCED_HOST_LIMIT {
        return Ok(None);
    }
    let mut patterns: Vec<(String, Graph)> = vec![
        ("S1".into(), build_named(NamedGraph::S1)?),
        ("S2".into(), build_named(NamedGraph::S2)?),
    ];
    let mut odd = 5;
    while odd <= lg.vertex_count() {
        patterns.push((format!("C{odd}"), build_named(NamedGraph::Cycle(odd))?));
        odd += 2;
    }
    patterns.push(("Prism3".into(), build_named(NamedGraph::Prism3)?));
    for (name, pattern) in patterns {
        if pattern.vertex_count() > lg.vertex_count() {
            continue;
        }
        if let Some(embedding) = contains_induced(&lg, &pattern)? {
            return Ok(Some(InducedWitness {
                pattern: name,
                embedding,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        build_melon, delete_vertex, find_transitive_orientation, is_isomorphic, line_graph,
        local_complement,
    };
    use crate::oracle::{min_perm_rep, min_uniform_rep, SearchBudget};

    fn spec(lengths: &[u32]) -> MelonSpec {
        MelonSpec::new(lengths.to_vec()).expect("valid spec")
    }

    /// All length spectra, sorted ascending, with at most `max_len` per
    /// entry, at most `max_parts` parts, at most one 1, and total ≤ `cap`.
    fn sorted_specs(max_parts: usize, max_len: u32, cap: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        fn rec(cur: &mut Vec<u32>, next_min: u32, left: usize, max_len: u32, cap: u32, out: &mut Vec<Vec<u32>>) {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            if left == 0 {
                return;
            }
            for l in next_min.max(1)..=max_len {
                if cur.iter().sum::<u32>() + l > cap {
                    break;
                }
                if l == 1 && cur.contains(&1) {
                    continue;
                }
                cur.push(l);
                rec(cur, l, left - 1, max_len, cap, out);
                cur.pop();
            }
        }
        rec(&mut Vec::new(), 1, max_parts, max_len, cap, &mut out);
        out
    }

    fn alternates(w: &Word, a: &str, b: &str) -> bool {
        let seq: Vec<&str> = w
            .letters()
            .iter()
            .map(String::as_str)
            .filter(|t| *t == a || *t == b)
            .collect();
        seq.windows(2).all(|p| p[0] != p[1])
    }

    #[test]
    fn line_melon_matches_line_graph_operator() {
        for lens in [
            vec![1],
            vec![2],
            vec![5],
            vec![1, 2],
            vec![3, 3],
            vec![4, 2],
            vec![1, 2, 2],
            vec![2, 2, 2],
            vec![1, 3, 3],
            vec![1, 2, 3],
            vec![2, 2, 3, 3],
        ] {
            let s = spec(&lens);
            let mine = build_line_melon(&s);
            let theirs = line_graph(&build_melon(&s)).unwrap();
            assert!(
                is_isomorphic(&mine, &theirs).unwrap().is_some(),
                "line graphs differ for {lens:?}"
            );
        }
    }

    #[test]
    fn representability_is_the_book_obstruction() {
        assert!(!line_word_representable(&spec(&[1, 2, 2, 2])));
        assert!(!line_word_representable(&spec(&[2, 1, 2, 2, 2])));
        assert!(line_word_representable(&spec(&[1, 2, 2])));
        assert!(line_word_representable(&spec(&[2, 2, 2])));
        assert!(line_word_representable(&spec(&[2, 2, 2, 2])));
        assert!(line_word_representable(&spec(&[1, 3, 2, 2])));
    }

    #[test]
    fn refuter_is_the_endpoint_edge() {
        assert_eq!(
            line_refuter(&spec(&[1, 2, 2, 2])).unwrap(),
            Some("e_0".into())
        );
        assert_eq!(
            line_refuter(&spec(&[2, 2, 1, 2, 2])).unwrap(),
            Some("e_0".into())
        );
        assert_eq!(line_refuter(&spec(&[1, 2, 2])).unwrap(), None);
        assert_eq!(line_refuter(&spec(&[2, 2, 2])).unwrap(), None);
    }

    #[test]
    fn cycle_words() {
        // The triangle needs only one copy of each letter.
        let k3 = line_word_cycle(&spec(&[1, 2])).unwrap();
        assert_eq!(k3.to_string(), "e_0 e2 e2p");
        assert!(k3.is_k_uniform(1));
        for lens in [[2, 2], [1, 3], [3, 3], [2, 3], [1, 4], [4, 6]] {
            let w = line_word_cycle(&spec(&lens)).unwrap();
            assert!(w.is_k_uniform(2), "{lens:?}");
        }
        assert!(matches!(
            line_word_cycle(&spec(&[2, 2, 2])),
            Err(LineError::PreconditionViolated(_))
        ));
        assert!(matches!(
            line_word_cycle(&spec(&[5])),
            Err(LineError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn three_path_words_with_endpoint_edge() {
        for lens in [
            vec![1, 2, 2],
            vec![1, 3, 3],
            vec![1, 2, 4],
            vec![2, 1, 2],
            vec![1, 6, 5],
            vec![1, 2, 6],
        ] {
            let w = line_word_three_paths_adjacent(&spec(&lens)).unwrap();
            assert!(w.is_k_uniform(2), "{lens:?}");
        }
        assert!(matches!(
            line_word_three_paths_adjacent(&spec(&[2, 2, 2])),
            Err(LineError::PreconditionViolated(_))
        ));
        assert!(matches!(
            line_word_three_paths_adjacent(&spec(&[1, 2, 2, 2])),
            Err(LineError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn product_words() {
        let w3 = km_k2_word(3).unwrap();
        assert_eq!(
            w3.to_string(),
            "e1 e2 e3 e1p e1 e2p e2 e3p e3 e1p e2p e3p e1 e1p e2 e2p e3 e3p"
        );
        assert!(w3.is_k_uniform(3));
        for m in [1, 2, 4, 5] {
            assert!(km_k2_word(m).unwrap().is_k_uniform(3));
        }
        assert!(matches!(
            km_k2_word(0),
            Err(LineError::Graph(GraphError::SpecInvalid(_)))
        ));
    }

    #[test]
    fn h_realizer_goldens() {
        let seq = h_perms(3).unwrap();
        let texts: Vec<String> = seq.perms().iter().map(|p| p.to_string()).collect();
        assert_eq!(
            texts,
            vec![
                "a1 b2 a3 b3 a2 b1 x",
                "a1 a3 b2 a2 b3 b1 x",
                "b2 b3 a1 b1 a3 a2 x",
            ]
        );
        for m in [2, 4, 5] {
            h_perms(m).unwrap();
        }
        assert!(matches!(
            h_perms(1),
            Err(LineError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn nonadjacent_words() {
        let unchanged = line_word_nonadjacent(&spec(&[2, 2, 2])).unwrap();
        assert_eq!(unchanged.to_string(), km_k2_word(3).unwrap().to_string());
        for lens in [
            vec![3, 2, 2],
            vec![2, 3, 2],
            vec![3, 3, 3],
            vec![2, 3, 3],
            vec![4, 2],
            vec![3, 3],
            vec![4, 2, 2],
            vec![2, 2, 3, 3],
            vec![4, 3, 2],
        ] {
            let w = line_word_nonadjacent(&spec(&lens)).unwrap();
            assert!(w.is_k_uniform(3), "{lens:?}");
        }
        assert!(matches!(
            line_word_nonadjacent(&spec(&[1, 2, 2])),
            Err(LineError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn adjacent_words() {
        for lens in [
            vec![1, 2, 2],
            vec![1, 2, 2, 3],
            vec![1, 3, 3],
            vec![1, 2, 4],
            vec![1, 4, 3],
            vec![1, 3, 2, 2],
            vec![1, 2, 2, 6],
            vec![1, 3, 3, 3],
            vec![2, 2, 1, 3],
        ] {
            let w = line_word_adjacent(&spec(&lens)).unwrap();
            assert!(w.is_k_uniform(3), "{lens:?}");
        }
        assert!(matches!(
            line_word_adjacent(&spec(&[1, 2, 2, 2])),
            Err(LineError::PreconditionViolated(_))
        ));
        assert!(matches!(
            line_word_adjacent(&spec(&[2, 2])),
            Err(LineError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn interior_letters_alternate_only_with_chain_neighbors() {
        let w = line_word_nonadjacent(&spec(&[3, 2, 2])).unwrap();
        let partners: Vec<&str> = ["e1p", "e1", "e2", "e2p", "e3", "e3p"]
            .into_iter()
            .filter(|v| alternates(&w, "e1_1", v))
            .collect();
        assert_eq!(partners, vec!["e1p", "e1"]);

        let w = line_word_adjacent(&spec(&[1, 2, 2, 3])).unwrap();
        let others = ["e2", "e2p", "e3", "e3p", "e4", "e4p", "e_0"];
        let partners: Vec<&str> = others
            .into_iter()
            .filter(|v| alternates(&w, "e4_1", v))
            .collect();
        assert_eq!(partners, vec!["e4", "e4p"]);
    }

    #[test]
    fn rep_numbers() {
        let cases: Vec<(Vec<u32>, usize)> = vec![
            (vec![1], 1),
            (vec![2], 1),
            (vec![1, 2], 1),
            (vec![2, 1], 1),
            (vec![5], 2),
            (vec![3, 3], 2),
            (vec![4, 2], 2),
            (vec![1, 3], 2),
            (vec![1, 2, 2], 2),
            (vec![1, 4, 5], 2),
            (vec![2, 2, 2], 3),
            (vec![3, 2, 2], 3),
            (vec![1, 2, 2, 3], 3),
            (vec![2, 2, 2, 2], 3),
            (vec![1, 3, 3], 2),
        ];
        for (lens, want) in cases {
            let v = line_rep_number(&spec(&lens)).unwrap();
            assert_eq!(v.r, Some(want), "{lens:?}");
            assert!(v.word_representable);
            assert!(v.refuter.is_none());
        }
        assert!(matches!(
            line_rep_number(&spec(&[1, 2, 2, 2])),
            Err(LineError::NotWordRepresentable(_))
        ));
    }

    #[test]
    fn rep_number_matches_oracle_on_small_line_graphs() {
        for lens in sorted_specs(4, 5, 9) {
            let s = spec(&lens);
            if !line_word_representable(&s) {
                continue;
            }
            let lg = build_line_melon(&s);
            if lg.vertex_count() > 9 {
                continue;
            }
            let want = min_uniform_rep(&lg, &SearchBudget::default())
                .unwrap()
                .expect("within max_k")
                .0;
            let got = line_rep_number(&s).unwrap().r.unwrap();
            assert_eq!(got, want, "{lens:?}");
        }
    }

    #[test]
    fn full_small_sweep_verifies() {
        let mut seen = 0;
        for lens in sorted_specs(5, 6, 12) {
            let s = spec(&lens);
            if line_word_representable(&s) {
                let v = line_rep_number(&s).unwrap();
                assert!(v.certificate.is_some(), "{lens:?}");
                seen += 1;
            } else {
                assert!(matches!(
                    line_rep_number(&s),
                    Err(LineError::NotWordRepresentable(_))
                ));
                assert!(line_refuter(&s).unwrap().is_some(), "{lens:?}");
            }
        }
        assert!(seen >= 90, "sweep covered only {seen} specs");
    }

    #[test]
    fn comparability_classes() {
        let c = line_comparability(&spec(&[5])).unwrap();
        assert_eq!(c.class, LineClass::LP(5));
        assert_eq!(c.prn, Some(2));
        let c = line_comparability(&spec(&[1])).unwrap();
        assert_eq!(c.class, LineClass::LP(1));
        assert_eq!(c.prn, Some(1));
        let c = line_comparability(&spec(&[2])).unwrap();
        assert_eq!(c.class, LineClass::LP(2));
        assert_eq!(c.prn, Some(1));
        let c = line_comparability(&spec(&[3, 3])).unwrap();
        assert_eq!(c.class, LineClass::LC(6));
        assert_eq!(c.prn, Some(3));
        let c = line_comparability(&spec(&[2, 2])).unwrap();
        assert_eq!(c.class, LineClass::LC(4));
        assert_eq!(c.prn, Some(2));
        let c = line_comparability(&spec(&[1, 3])).unwrap();
        assert_eq!(c.class, LineClass::LC(4));
        assert_eq!(c.prn, Some(2));
        let c = line_comparability(&spec(&[1, 2])).unwrap();
        assert_eq!(c.class, LineClass::LK3);
        assert_eq!(c.prn, Some(1));
        let c = line_comparability(&spec(&[1, 2, 2])).unwrap();
        assert_eq!(c.class, LineClass::LA2);
        assert_eq!(c.prn, Some(2));
    }

    #[test]
    fn noncomparability_witnesses() {
        let c = line_comparability(&spec(&[2, 3])).unwrap();
        assert_eq!(c.class, LineClass::NotComparability);
        assert_eq!(c.prn, None);
        assert_eq!(c.witness.unwrap().pattern, "C5");

        let c = line_comparability(&spec(&[1, 3, 3])).unwrap();
        let w = c.witness.unwrap();
        assert!(w.pattern == "S1" || w.pattern == "S2", "got {}", w.pattern);

        let c = line_comparability(&spec(&[1, 2, 3])).unwrap();
        assert_eq!(c.witness.unwrap().pattern, "C5");

        // The forbidden book's line graph needs the prism: its universal
        // vertex rules out long induced cycles and pendant patterns.
        let c = line_comparability(&spec(&[1, 2, 2, 2])).unwrap();
        assert_eq!(c.witness.unwrap().pattern, "Prism3");

        // Witness embeddings really are induced embeddings.
        let s = spec(&[1, 3, 3]);
        let lg = build_line_melon(&s);
        let w = line_comparability(&s).unwrap().witness.unwrap();
        let pat = build_named(match w.pattern.as_str() {
            "S1" => NamedGraph::S1,
            _ => NamedGraph::S2,
        })
        .unwrap();
        for (pu, hu) in &w.embedding {
            for (pv, hv) in &w.embedding {
                if pu < pv {
                    assert_eq!(pat.has_edge(pu, pv), lg.has_edge(hu, hv));
                }
            }
        }
    }

    #[test]
    fn class_agrees_with_orientation_search() {
        for lens in sorted_specs(5, 6, 10) {
            let s = spec(&lens);
            let lg = build_line_melon(&s);
            let oriented = find_transitive_orientation(&lg).unwrap().is_some();
            let class = classify(&s);
            assert_eq!(
                oriented,
                class != LineClass::NotComparability,
                "{lens:?} classified {class}"
            );
        }
    }

    #[test]
    fn prn_agrees_with_oracle() {
        let budget = SearchBudget::default();
        for lens in [vec![5], vec![3, 3], vec![2, 2], vec![1, 2], vec![1, 2, 2], vec![1, 3]] {
            let s = spec(&lens);
            let lg = build_line_melon(&s);
            let want = min_perm_rep(&lg, &budget).unwrap().expect("comparability").0;
            let got = line_comparability(&s).unwrap().prn.unwrap();
            assert_eq!(got, want, "{lens:?}");
        }
        // A five-cycle line graph defeats any three permutations.
        let lg = build_line_melon(&spec(&[2, 3]));
        assert!(min_perm_rep(&lg, &budget).unwrap().is_none());
    }

    #[test]
    fn triple_long_line_graphs_reach_the_prism_product() {
        for lens in [vec![2, 2, 2], vec![3, 2, 2], vec![2, 2, 2, 2], vec![1, 2, 2, 3]] {
            let s = spec(&lens);
            let mut g = build_line_melon(&s);
            if s.has_unit_path() {
                g = delete_vertex(&g, "e_0").unwrap();
            }
            let keep: Vec<usize> = (1..=s.path_count())
                .filter(|&i| s.lengths()[i - 1] >= 2)
                .collect();
            let chosen = &keep[..3];
            for &i in &keep {
                if chosen.contains(&i) {
                    // Shorten the chain one interior letter at a time.
                    for j in 1..=(s.lengths()[i - 1] as usize).saturating_sub(2) {
                        let x = format!("e{i}_{j}");
                        g = local_complement(&g, &x).unwrap();
                        g = delete_vertex(&g, &x).unwrap();
                    }
                } else {
                    for label in path_edge_labels(&s, i) {
                        g = delete_vertex(&g, &label).unwrap();
                    }
                }
            }
            let target = build_named(NamedGraph::KmBoxK2(3)).unwrap();
            assert!(
                is_isomorphic(&g, &target).unwrap().is_some(),
                "{lens:?} did not reduce to the prism product"
            );
        }
    }

    #[test]
    fn outputs_are_deterministic() {
        for lens in [vec![3, 2, 2], vec![1, 3, 3], vec![4, 2], vec![2, 3]] {
            let s = spec(&lens);
            if line_word_representable(&s) {
                let a = line_rep_number(&s).unwrap();
                let b = line_rep_number(&s).unwrap();
                assert_eq!(
                    a.certificate.unwrap().to_string(),
                    b.certificate.unwrap().to_string()
                );
            }
            let wa = line_comparability(&s).unwrap().witness;
            let wb = line_comparability(&s).unwrap().witness;
            assert_eq!(wa, wb);
        }
    }
}
