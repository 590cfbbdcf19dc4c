//! Word-representants of melon graphs and their line graphs.
//!
//! A *melon graph* `M = (E_1, …, E_m)` consists of two endpoints `0` and `0p`
//! joined by `m` internally disjoint paths (at most one of length one). This
//! crate classifies, constructs, and verifies:
//!
//! * the representation number `R(M)` with a certificate word of matching
//!   uniformity ([`melon`]),
//! * comparability of `M`, permutation realizers, the permutation
//!   representation number, and a layered Hasse orientation
//!   ([`comparability`]),
//! * word-representability and representation numbers of the line graph
//!   `L(M)` ([`line`]),
//! * exhaustive ground-truth searches that cross-validate every classifier
//!   on desk-scale instances ([`oracle`]).
//!
//! The [`graph`] and [`words`] modules supply the underlying graph type with
//! deterministic vertex ordering and the alternation semantics of
//! word-representability.

pub mod comparability;
pub mod graph;
pub mod line;
pub mod melon;
pub mod oracle;
pub mod words;
