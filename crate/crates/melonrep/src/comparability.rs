//! Comparability classification of melon graphs, permutation realizers,
//! permutation-representation numbers, and Hasse diagrams.
//!
//! A melon graph is a comparability graph exactly when its edges admit a
//! transitive orientation. For melons this reduces to an arithmetic test on
//! the path-length spectrum ([`is_comparability_melon`]). Comparability
//! melons are permutationally representable; this module builds concrete
//! permutation sequences witnessing that ([`melon_perms_odd_parity`],
//! [`melon_perms_even_parity`], [`melon_perms_adjacent`]), classifies the
//! permutation-representation number ([`prn`]), and lays the transitive
//! orientation out as a Hasse diagram ([`hasse_orientation`]).

use crate::graph::{build_melon, Graph, GraphError, MelonSpec, Orientation};
use crate::oracle::{min_perm_rep, OracleError, SearchBudget};
use crate::words::{PermSequence, Word, WordError};
use std::cmp::Reverse;
use thiserror::Error;

/// Errors from comparability constructions.
#[derive(Debug, Error)]
pub enum ComparabilityError {
    /// The requested structure exists only for comparability melons.
    #[error("melon ({0}) is not a comparability graph")]
    NotComparability(String),
    /// An operation was called outside its documented domain.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Why a melon is a comparability graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparabilityTag {
    /// All path lengths share one parity.
    SameParity,
    /// The endpoints are adjacent (a length-1 path exists) and every even
    /// path length equals two.
    EdgeAndShortEvens,
}

/// Decides whether the melon is a comparability graph, and why.
///
/// The spectrum test: either all lengths have the same parity, or a length-1
/// path exists and every even length is exactly two. When both hold the
/// same-parity tag wins.
pub fn is_comparability_melon(spec: &MelonSpec) -> Option<ComparabilityTag> {
    let lengths = spec.lengths();
    let parity = lengths[0] % 2;
    if lengths.iter().all(|l| l % 2 == parity) {
        return Some(ComparabilityTag::SameParity);
    }
    if spec.has_unit_path() && lengths.iter().filter(|l| *l % 2 == 0).all(|&l| l == 2) {
        return Some(ComparabilityTag::EdgeAndShortEvens);
    }
    None
}

fn perm(tokens: Vec<String>) -> Word {
    Word::new(tokens)
}

fn labels_c(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("c{i}")).collect()
}

/// Two-permutation realizer of the path c\[0\] – c\[1\] – … – c\[n−1\], n ≥ 2.
///
/// Even n uses the closed-form pair; odd n is its restriction (drop the last
/// vertex of the even pattern one size up, which removes exactly one letter
/// from each permutation).
pub(crate) fn path_realizer(c: &[String]) -> (Vec<String>, Vec<String>) {
    let n = c.len();
    assert!(n >= 2, "path realizer needs at least two vertices");
    let at = |i: usize| c[i - 1].clone();
    if n == 2 {
        return (vec![at(1), at(2)], vec![at(1), at(2)]);
    }
    let k = n.div_ceil(2);
    let mut u = Vec::new();
    for t in 2..k {
        u.push(at(2 * t));
        u.push(at(2 * t - 1));
    }
    let mut v = Vec::new();
    for t in (1..k).rev() {
        v.push(at(2 * t));
        v.push(at(2 * t + 1));
    }
    if n.is_multiple_of(2) {
        let mut p = vec![at(2), at(1)];
        p.extend(u);
        p.push(at(2 * k));
        p.push(at(2 * k - 1));
        let mut q = vec![at(2 * k)];
        q.extend(v);
        q.push(at(1));
        (p, q)
    } else {
        let mut p = vec![at(2), at(1)];
        p.extend(u);
        p.push(at(2 * k - 1));
        let mut q = v;
        q.push(at(1));
        (p, q)
    }
}

/// Two-permutation realizer of the path c_1 – … – c_n for even n ≥ 4.
pub fn path_perms_even(n: usize) -> Result<PermSequence, ComparabilityError> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(ComparabilityError::PreconditionViolated(format!(
            "even path realizer needs an even vertex count >= 4, got {n}"
        )));
    }
    let c = labels_c(n);
    let (p, q) = path_realizer(&c);
    Ok(PermSequence::new(c, vec![perm(p), perm(q)])?)
}

/// Three-permutation sequence for the path c_1 – … – c_n for odd n ≥ 3.
///
/// The third permutation repeats the middle pattern; the triple is the
/// building block used by the all-even melon construction.
pub fn path_perms_odd(n: usize) -> Result<PermSequence, ComparabilityError> {
    if n < 3 || n % 2 != 1 {
        return Err(ComparabilityError::PreconditionViolated(format!(
            "odd path realizer needs an odd vertex count >= 3, got {n}"
        )));
    }
    let c = labels_c(n);
    let at = |i: usize| c[i - 1].clone();
    let k = n.div_ceil(2);
    let mut u = Vec::new();
    for t in 2..k {
        u.push(at(2 * t));
        u.push(at(2 * t - 1));
    }
    let mut v = Vec::new();
    for t in (1..k).rev() {
        v.push(at(2 * t));
        v.push(at(2 * t + 1));
    }
    let mut p = vec![at(2), at(1)];
    p.extend(u.clone());
    p.push(at(2 * k - 1));
    let mut q = v;
    q.push(at(1));
    let mut r = vec![at(2)];
    r.extend(u);
    r.push(at(2 * k - 1));
    r.push(at(1));
    Ok(PermSequence::new(c, vec![perm(p), perm(q), perm(r)])?)
}

/// Permutation sequence for the even cycle "0p" – c_1 – … – c_{n−2} – "0" –
/// "0p" on n vertices (n even ≥ 4).
///
/// For n ≥ 6 this is the three-permutation cycle pattern whose restriction to
/// the intermediates is the even-path pair (see the restriction test); the
/// four-cycle is special-cased with a fixed two-permutation realizer.
pub fn even_cycle_perms(n: usize) -> Result<PermSequence, ComparabilityError> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(ComparabilityError::PreconditionViolated(format!(
            "even cycle realizer needs an even vertex count >= 4, got {n}"
        )));
    }
    let mut vs = vec!["0p".to_string()];
    vs.extend(labels_c(n - 2));
    vs.push("0".to_string());
    if n == 4 {
        let w1 = Word::parse("0p c2 c1 0");
        let w2 = Word::parse("c2 0p 0 c1");
        return Ok(PermSequence::new(vs, vec![w1, w2])?);
    }
    let c = labels_c(n - 2);
    let at = |i: usize| c[i - 1].clone();
    let k = (n - 2) / 2;
    let mut u = Vec::new();
    for t in 2..k {
        u.push(at(2 * t));
        u.push(at(2 * t - 1));
    }
    let mut v = Vec::new();
    for t in (1..k).rev() {
        v.push(at(2 * t));
        v.push(at(2 * t + 1));
    }
    let mut w1 = vec!["0p".to_string(), at(2), at(1)];
    w1.extend(u);
    w1.push(at(2 * k));
    w1.push(at(2 * k - 1));
    w1.push("0".to_string());
    let mut w2 = vec![at(2 * k)];
    w2.extend(v.clone());
    w2.push("0p".to_string());
    w2.push(at(1));
    w2.push("0".to_string());
    let mut w3 = vec!["0p".to_string(), at(2 * k), "0".to_string()];
    w3.extend(v);
    w3.push(at(1));
    Ok(PermSequence::new(vs, vec![perm(w1), perm(w2), perm(w3)])?)
}

/// A constituent path together with its original (1-based) position.
struct PathView {
    len: u32,
    interiors: Vec<String>,
}

fn path_views(spec: &MelonSpec) -> Vec<PathView> {
    spec.lengths()
        .iter()
        .enumerate()
        .map(|(i, &len)| PathView {
            len,
            interiors: spec.path_intermediates(i + 1),
        })
        .collect()
}

fn melon_vertex_set(g: &Graph) -> Vec<String> {
    g.vertices().map(str::to_string).collect()
}

/// Building blocks of one odd path (length ≥ 3) between non-adjacent
/// endpoints: the interiors extended by "0p" and "0" form a path on an even
/// number of vertices; `u` spans the interiors except the two ends, `v`
/// spans all interiors.
struct OddPiece {
    a_prime: String,
    a: String,
    u: Vec<String>,
    v: Vec<String>,
}

fn odd_piece(interiors: &[String]) -> OddPiece {
    let n = interiors.len() + 2;
    debug_assert!(n >= 4 && n.is_multiple_of(2));
    let k = n / 2;
    let at = |j: usize| interiors[j - 2].clone();
    let mut u = Vec::new();
    for t in 2..k {
        u.push(at(2 * t));
        u.push(at(2 * t - 1));
    }
    let mut v = Vec::new();
    for t in (1..k).rev() {
        v.push(at(2 * t));
        v.push(at(2 * t + 1));
    }
    OddPiece {
        a_prime: interiors[0].clone(),
        a: interiors[interiors.len() - 1].clone(),
        u,
        v,
    }
}

/// Three-permutation sequence for a melon whose path lengths are all odd and
/// at least three (so the endpoints are non-adjacent). Paths keep their
/// original order.
pub fn melon_perms_odd_parity(spec: &MelonSpec) -> Result<PermSequence, ComparabilityError> {
    if !spec.lengths().iter().all(|&l| l % 2 == 1 && l >= 3) {
        return Err(ComparabilityError::PreconditionViolated(format!(
            "odd-parity construction needs all lengths odd and >= 3, got ({spec})"
        )));
    }
    let g = build_melon(spec);
    let pieces: Vec<OddPiece> = path_views(spec).iter().map(|p| odd_piece(&p.interiors)).collect();

    let mut p1 = Vec::new();
    for piece in &pieces {
        p1.push(piece.a_prime.clone());
    }
    p1.push("0p".to_string());
    for piece in pieces.iter().rev() {
        p1.extend(piece.u.iter().cloned());
    }
    p1.push("0".to_string());
    for piece in pieces.iter().rev() {
        p1.push(piece.a.clone());
    }

    let mut p2 = vec!["0".to_string()];
    for piece in &pieces {
        p2.extend(piece.v.iter().cloned());
    }
    p2.push("0p".to_string());

    let mut p3 = vec!["0".to_string()];
    for piece in pieces.iter().rev() {
        p3.extend(piece.v.iter().cloned());
    }
    p3.push("0p".to_string());

    let seq = PermSequence::new(melon_vertex_set(&g), vec![perm(p1), perm(p2), perm(p3)])?;
    debug_assert!(seq.represents(&g)?);
    Ok(seq)
}

/// Building blocks of one even path between non-adjacent endpoints. A
/// length-2 path has a single interior playing both end roles; longer paths
/// extend to a path on an odd number of vertices whose realizer pieces are
/// split around the "0" end.
struct EvenPiece {
    a_prime: String,
    a: String,
    u: Vec<String>,
    v_prime: Vec<String>,
}

fn even_piece(interiors: &[String]) -> EvenPiece {
    if interiors.len() == 1 {
        return EvenPiece {
            a_prime: interiors[0].clone(),
            a: interiors[0].clone(),
            u: Vec::new(),
            v_prime: Vec::new(),
        };
    }
    let n = interiors.len() + 2;
    debug_assert!(n >= 5 && n % 2 == 1);
    let k = n.div_ceil(2);
    let at = |j: usize| interiors[j - 2].clone();
    let mut u = Vec::new();
    for t in 2..k {
        u.push(at(2 * t));
        u.push(at(2 * t - 1));
    }
    let mut v_prime = Vec::new();
    for t in (1..k - 1).rev() {
        v_prime.push(at(2 * t));
        v_prime.push(at(2 * t + 1));
    }
    EvenPiece {
        a_prime: interiors[0].clone(),
        a: interiors[interiors.len() - 1].clone(),
        u,
        v_prime,
    }
}

/// Three-permutation sequence for a melon whose path lengths are all even
/// (endpoints non-adjacent). Paths are processed in stable ascending length
/// order; the emitted labels are the caller's.
pub fn melon_perms_even_parity(spec: &MelonSpec) -> Result<PermSequence, ComparabilityError> {
    if !spec.lengths().iter().all(|&l| l % 2 == 0) {
        return Err(ComparabilityError::PreconditionViolated(format!(
            "even-parity construction needs all lengths even, got ({spec})"
        )));
    }
    let g = build_melon(spec);
    let mut views = path_views(spec);
    views.sort_by_key(|p| p.len);
    let pieces: Vec<EvenPiece> = views.iter().map(|p| even_piece(&p.interiors)).collect();

    let mut p1 = Vec::new();
    for piece in &pieces {
        p1.push(piece.a_prime.clone());
    }
    p1.push("0p".to_string());
    for piece in &pieces {
        p1.extend(piece.u.iter().cloned());
    }
    p1.push("0".to_string());

    let mut p2 = Vec::new();
    for piece in &pieces {
        p2.push(piece.a.clone());
    }
    p2.push("0".to_string());
    for piece in &pieces {
        p2.extend(piece.v_prime.iter().cloned());
    }
    p2.push("0p".to_string());

    let mut p3 = Vec::new();
    for piece in pieces.iter().rev() {
        p3.push(piece.a_prime.clone());
        p3.extend(piece.u.iter().cloned());
    }
    p3.push("0".to_string());
    p3.push("0p".to_string());

    let seq = PermSequence::new(melon_vertex_set(&g), vec![perm(p1), perm(p2), perm(p3)])?;
    debug_assert!(seq.represents(&g)?);
    Ok(seq)
}

/// Building blocks of one odd path (length ≥ 3) between adjacent endpoints:
/// the path plus the endpoint edge induces an even cycle. For length ≥ 5 the
/// interiors form an even path with four distinguished vertices; a length-3
/// path has only the two interiors, which absorb all four roles.
struct CyclePiece {
    short: bool,
    a_prime: String,
    y: String,
    x: String,
    a: String,
    u: Vec<String>,
    v: Vec<String>,
}

fn cycle_piece(interiors: &[String]) -> CyclePiece {
    let n = interiors.len();
    debug_assert!(n >= 2 && n.is_multiple_of(2));
    if n == 2 {
        return CyclePiece {
            short: true,
            a_prime: interiors[0].clone(),
            y: interiors[1].clone(),
            x: interiors[0].clone(),
            a: interiors[1].clone(),
            u: Vec::new(),
            v: Vec::new(),
        };
    }
    let k = n / 2;
    let at = |j: usize| interiors[j - 1].clone();
    let mut u = Vec::new();
    for t in 2..k {
        u.push(at(2 * t));
        u.push(at(2 * t - 1));
    }
    let mut v = Vec::new();
    for t in (1..k).rev() {
        v.push(at(2 * t));
        v.push(at(2 * t + 1));
    }
    CyclePiece {
        short: false,
        a_prime: at(1),
        y: at(2),
        x: at(2 * k - 1),
        a: at(2 * k),
        u,
        v,
    }
}

/// Three-permutation sequence for a melon with adjacent endpoints (a
/// length-1 path exists; every other path is length 2 or odd ≥ 3).
///
/// Paths are processed in stable descending length order, so the odd paths
/// come first, then the length-2 paths, then the endpoint edge. Odd paths of
/// length ≥ 5 contribute a leading pair, a middle run and a trailing pair to
/// the first permutation; length-3 paths contribute their two interiors as
/// one trailing pair there and travel as an inline pair in the third
/// permutation, with the "0" placed before the final block of the second
/// permutation — this keeps every non-adjacent cross-path pair reversed
/// somewhere while every edge keeps one consistent order.
pub fn melon_perms_adjacent(spec: &MelonSpec) -> Result<PermSequence, ComparabilityError> {
    if !spec.has_unit_path()
        || !spec
            .lengths()
            .iter()
            .all(|&l| l == 1 || l == 2 || (l % 2 == 1 && l >= 3))
    {
        return Err(ComparabilityError::PreconditionViolated(format!(
            "adjacent-endpoints construction needs a length-1 path and all other lengths 2 or odd >= 3, got ({spec})"
        )));
    }
    let g = build_melon(spec);
    let mut views: Vec<PathView> = path_views(spec).into_iter().filter(|p| p.len >= 2).collect();
    views.sort_by_key(|p| Reverse(p.len));
    let odd: Vec<CyclePiece> = views
        .iter()
        .filter(|p| p.len >= 3)
        .map(|p| cycle_piece(&p.interiors))
        .collect();
    let twos: Vec<String> = views
        .iter()
        .filter(|p| p.len == 2)
        .map(|p| p.interiors[0].clone())
        .collect();

    let mut q1 = vec!["0p".to_string()];
    for piece in odd.iter().rev() {
        if !piece.short {
            q1.push(piece.y.clone());
            q1.push(piece.a_prime.clone());
        }
    }
    for piece in &odd {
        q1.extend(piece.u.iter().cloned());
    }
    for piece in &odd {
        q1.push(piece.a.clone());
        q1.push(piece.x.clone());
    }
    for b in twos.iter().rev() {
        q1.push(b.clone());
    }
    q1.push("0".to_string());

    let mut q2 = Vec::new();
    for piece in odd.iter().rev() {
        q2.push(piece.a.clone());
        q2.extend(piece.v.iter().cloned());
    }
    q2.push("0p".to_string());
    q2.extend(twos.iter().cloned());
    q2.push("0".to_string());
    for piece in odd.iter().rev() {
        q2.push(piece.a_prime.clone());
    }

    let mut q3 = vec!["0p".to_string()];
    q3.extend(twos.iter().cloned());
    for piece in odd.iter().rev() {
        q3.push(piece.a.clone());
        if piece.short {
            q3.push(piece.a_prime.clone());
        }
    }
    q3.push("0".to_string());
    for piece in &odd {
        if !piece.short {
            q3.extend(piece.v.iter().cloned());
            q3.push(piece.a_prime.clone());
        }
    }

    let seq = PermSequence::new(melon_vertex_set(&g), vec![perm(q1), perm(q2), perm(q3)])?;
    debug_assert!(seq.represents(&g)?);
    Ok(seq)
}

/// Why the permutation-representation number is what it is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrnWitness {
    /// The melon is complete; one permutation suffices.
    Kn,
    /// The melon is a permutation graph; two permutations suffice and one is
    /// not enough because the melon is not complete.
    PermutationGraph,
    /// An induced even cycle on this many vertices (≥ 6) rules out two
    /// permutations.
    InducedEvenCycle(usize),
    /// The seven-vertex spider tree (three legs of length two sharing a
    /// center) appears as an induced subgraph and rules out two permutations.
    InducedT2,
}

/// Permutation-representation verdict: the number, a verified realizer, and
/// the witness explaining the lower bound.
#[derive(Debug, Clone)]
pub struct PrnVerdict {
    pub prn: usize,
    pub realizer: PermSequence,
    pub witness: PrnWitness,
}

/// Computes the permutation-representation number of a comparability melon
/// together with a realizer and a lower-bound witness. Non-comparability
/// melons are not permutationally representable and yield an error.
pub fn prn(spec: &MelonSpec) -> Result<PrnVerdict, ComparabilityError> {
    if is_comparability_melon(spec).is_none() {
        return Err(ComparabilityError::NotComparability(spec.to_string()));
    }
    let g = build_melon(spec);
    let lengths = spec.lengths();
    let has_edge = spec.has_unit_path();

    // Complete melons: the single-edge and triangle spectra.
    let mut sorted: Vec<u32> = lengths.to_vec();
    sorted.sort_unstable();
    if sorted == [1] || sorted == [1, 2] {
        let order: Vec<String> = melon_vertex_set(&g);
        let realizer = PermSequence::new(order.clone(), vec![perm(order)])?;
        assert!(realizer.represents(&g)?, "complete-melon realizer must verify");
        return Ok(PrnVerdict {
            prn: 1,
            realizer,
            witness: PrnWitness::Kn,
        });
    }

    // Witnesses forcing three permutations.
    let three_witness = if !has_edge {
        if lengths.len() >= 2 {
            let two_largest =
                (sorted[sorted.len() - 1] + sorted[sorted.len() - 2]) as usize;
            (two_largest >= 6).then_some(PrnWitness::InducedEvenCycle(two_largest))
        } else {
            None
        }
    } else {
        let longest = sorted[sorted.len() - 1];
        if longest >= 5 {
            Some(PrnWitness::InducedEvenCycle(longest as usize + 1))
        } else if lengths.iter().filter(|&&l| l >= 3).count() >= 3 {
            Some(PrnWitness::InducedT2)
        } else {
            None
        }
    };

    if let Some(witness) = three_witness {
        let realizer = if has_edge {
            melon_perms_adjacent(spec)?
        } else if lengths[0] % 2 == 1 {
            melon_perms_odd_parity(spec)?
        } else {
            melon_perms_even_parity(spec)?
        };
        assert!(realizer.represents(&g)?, "three-permutation realizer must verify");
        return Ok(PrnVerdict {
            prn: 3,
            realizer,
            witness,
        });
    }

    let realizer = prn2_realizer(spec, &g)?;
    assert!(realizer.represents(&g)?, "two-permutation realizer must verify");
    Ok(PrnVerdict {
        prn: 2,
        realizer,
        witness: PrnWitness::PermutationGraph,
    })
}

/// Finds a two-permutation realizer: oracle search at desk scale, closed
/// forms when the input outgrows the orientation guards.
fn prn2_realizer(spec: &MelonSpec, g: &Graph) -> Result<PermSequence, ComparabilityError> {
    let budget = SearchBudget {
        max_vertices: g.vertex_count().max(SearchBudget::default().max_vertices),
        max_k: 2,
        node_limit: SearchBudget::default().node_limit,
    };
    match min_perm_rep(g, &budget) {
        Ok(Some((k, seq))) => {
            debug_assert_eq!(k, 2);
            Ok(seq)
        }
        Ok(None) => unreachable!("permutation-graph melons always have a 2-realizer"),
        Err(OracleError::SizeGuard { .. })
        | Err(OracleError::NodeLimitExceeded { .. })
        | Err(OracleError::Graph(GraphError::SizeGuardExceeded { .. })) => {
            prn2_closed_form(spec, g)
        }
        Err(e) => Err(e.into()),
    }
}

/// Closed-form two-permutation realizers for every permutation-graph melon
/// shape: single paths, the all-twos complete bipartite family, and the
/// edge-plus-twos family with up to two length-3 pages.
fn prn2_closed_form(spec: &MelonSpec, g: &Graph) -> Result<PermSequence, ComparabilityError> {
    let lengths = spec.lengths();
    let vs = melon_vertex_set(g);
    let (l1, l2): (Vec<String>, Vec<String>) = if !spec.has_unit_path() {
        if lengths.len() == 1 {
            let mut c = vec!["0p".to_string()];
            c.extend(spec.path_intermediates(1));
            c.push("0".to_string());
            path_realizer(&c)
        } else {
            // all lengths are two: the endpoints versus the interiors
            let xs: Vec<String> = (1..=lengths.len())
                .map(|i| MelonSpec::intermediate(i, 1))
                .collect();
            let mut a = vec!["0".to_string(), "0p".to_string()];
            a.extend(xs.iter().cloned());
            let mut b = vec!["0p".to_string(), "0".to_string()];
            b.extend(xs.iter().rev().cloned());
            (a, b)
        }
    } else {
        // one unit path, any number of twos, up to two length-3 pages
        let xs: Vec<String> = lengths
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == 2)
            .map(|(i, _)| MelonSpec::intermediate(i + 1, 1))
            .collect();
        let pages: Vec<(String, String)> = lengths
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == 3)
            .map(|(i, _)| {
                (
                    MelonSpec::intermediate(i + 1, 1),
                    MelonSpec::intermediate(i + 1, 2),
                )
            })
            .collect();
        match pages.as_slice() {
            [] => {
                let mut a = vec!["0".to_string(), "0p".to_string()];
                a.extend(xs.iter().cloned());
                let mut b = vec!["0".to_string(), "0p".to_string()];
                b.extend(xs.iter().rev().cloned());
                (a, b)
            }
            [(a1, b1)] => {
                let mut p = vec!["0".to_string()];
                p.extend(xs.iter().cloned());
                p.extend([a1.clone(), "0p".to_string(), b1.clone()]);
                let mut q = vec![a1.clone(), "0".to_string(), b1.clone()];
                q.extend(xs.iter().rev().cloned());
                q.push("0p".to_string());
                (p, q)
            }
            [(a1, b1), (a2, b2)] => {
                let mut p = vec![a2.clone(), "0".to_string(), b2.clone()];
                p.extend(xs.iter().cloned());
                p.extend([a1.clone(), "0p".to_string(), b1.clone()]);
                let mut q = vec![a1.clone(), "0".to_string(), b1.clone()];
                q.extend(xs.iter().rev().cloned());
                q.extend([a2.clone(), "0p".to_string(), b2.clone()]);
                (p, q)
            }
            _ => {
                return Err(ComparabilityError::PreconditionViolated(format!(
                    "no two-permutation closed form for ({spec})"
                )))
            }
        }
    };
    let seq = PermSequence::new(vs, vec![perm(l1), perm(l2)])?;
    if !seq.represents(g)? {
        return Err(ComparabilityError::PreconditionViolated(format!(
            "closed-form realizer failed verification for ({spec})"
        )));
    }
    Ok(seq)
}

/// Structural family of a melon's Hasse diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HasseCase {
    /// Endpoints non-adjacent, all lengths even: two layers with both
    /// endpoints at the bottom.
    CaseI,
    /// Endpoints non-adjacent, all lengths odd: two layers with the
    /// endpoints at opposite extremes.
    CaseII,
    /// Endpoints adjacent, all other paths odd: two layers plus the
    /// endpoint edge as a cover.
    CaseIII,
    /// Endpoints adjacent with length-2 paths present: three layers; the
    /// endpoint edge is implied by the length-2 chains and is not a cover.
    CaseIV,
}

/// A transitive orientation of a comparability melon arranged by height.
#[derive(Debug, Clone)]
pub struct HasseDiagram {
    case: HasseCase,
    orientation: Orientation,
    layers: Vec<Vec<String>>,
    covers: Vec<(String, String)>,
}

impl HasseDiagram {
    pub fn case(&self) -> HasseCase {
        self.case
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    /// Vertices grouped by height, bottom layer first.
    pub fn layers(&self) -> &[Vec<String>] {
        &self.layers
    }

    /// Covering arcs (arcs not implied by a two-step chain), lower first.
    pub fn covers(&self) -> &[(String, String)] {
        &self.covers
    }

    /// DOT digraph with one rank per layer and only covering arcs drawn.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph \"{name}\" {{\n"));
        out.push_str("  rankdir=BT;\n");
        for layer in &self.layers {
            out.push_str("  { rank=same;");
            for v in layer {
                out.push_str(&format!(" \"{v}\";"));
            }
            out.push_str(" }\n");
        }
        for (u, v) in &self.covers {
            out.push_str(&format!("  \"{u}\" -> \"{v}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the canonical transitive orientation of a comparability melon and
/// lays it out as a Hasse diagram. The "0p" endpoint is always minimal.
pub fn hasse_orientation(spec: &MelonSpec) -> Result<HasseDiagram, ComparabilityError> {
    if is_comparability_melon(spec).is_none() {
        return Err(ComparabilityError::NotComparability(spec.to_string()));
    }
    let g = build_melon(spec);
    let lengths = spec.lengths();
    let has_edge = spec.has_unit_path();
    let has_two = lengths.contains(&2);
    let case = match (has_edge, has_two) {
        (false, _) => {
            if lengths[0].is_multiple_of(2) {
                HasseCase::CaseI
            } else {
                HasseCase::CaseII
            }
        }
        (true, false) => HasseCase::CaseIII,
        (true, true) => HasseCase::CaseIV,
    };

    let mut arcs: Vec<(String, String)> = Vec::new();
    for (i, &len) in lengths.iter().enumerate() {
        let path = i + 1;
        let label = |pos: u32| -> String {
            if pos == 0 {
                "0p".to_string()
            } else if pos == len {
                "0".to_string()
            } else {
                MelonSpec::intermediate(path, pos as usize)
            }
        };
        if len == 1 {
            arcs.push(("0p".to_string(), "0".to_string()));
        } else if has_edge && len == 2 {
            // chains through the length-2 interiors
            arcs.push(("0p".to_string(), label(1)));
            arcs.push((label(1), "0".to_string()));
        } else {
            // every edge points from its even position to its odd position
            for pos in 0..len {
                if pos % 2 == 0 {
                    arcs.push((label(pos), label(pos + 1)));
                } else {
                    arcs.push((label(pos + 1), label(pos)));
                }
            }
        }
    }

    let arc_refs: Vec<(&str, &str)> = arcs.iter().map(|(u, v)| (u.as_str(), v.as_str())).collect();
    let orientation = Orientation::from_arcs(g.clone(), arc_refs)?;
    assert!(
        orientation.is_transitive(),
        "melon Hasse orientation must be transitive"
    );

    // Height of each vertex: longest directed path from a source.
    let n = g.vertex_count();
    let ids: Vec<String> = melon_vertex_set(&g);
    let mut height = vec![0usize; n];
    let idx_of = |label: &str| -> usize { ids.iter().position(|v| v == label).expect("own vertex") };
    let arc_idx: Vec<(usize, usize)> = arcs
        .iter()
        .map(|(u, v)| (idx_of(u), idx_of(v)))
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for &(u, v) in &arc_idx {
            if height[u] + 1 > height[v] {
                height[v] = height[u] + 1;
                changed = true;
            }
        }
    }
    let max_h = height.iter().copied().max().unwrap_or(0);
    let mut layers: Vec<Vec<String>> = vec![Vec::new(); max_h + 1];
    for (i, id) in ids.iter().enumerate() {
        layers[height[i]].push(id.clone());
    }

    let mut covers: Vec<(String, String)> = Vec::new();
    for (u, v) in orientation.arcs() {
        let implied = g
            .vertices()
            .any(|w| orientation.has_arc(u, w) && orientation.has_arc(w, v));
        if !implied {
            covers.push((u.to_string(), v.to_string()));
        }
    }

    Ok(HasseDiagram {
        case,
        orientation,
        layers,
        covers,
    })
}
