//! Words over vertex labels and the alternation semantics that ties a word
//! to the graph it represents: two letters are adjacent exactly when their
//! occurrences strictly alternate in the word.

use crate::graph::{Graph, GraphError};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {0:?} is not a vertex of the graph")]
    UnknownLetter(String),
    #[error("vertex {0:?} never occurs in the word")]
    MissingLetter(String),
    #[error("the empty word represents nothing")]
    EmptyWord,
    #[error("sequence entry is not a permutation of the vertex set: {0}")]
    NotAPermutation(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A finite word: a sequence of vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<String>,
}

impl Word {
    pub fn new(letters: Vec<String>) -> Self {
        Self { letters }
    }

    pub fn from_strs(letters: &[&str]) -> Self {
        Self {
            letters: letters.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Parses a whitespace-separated word; the whole-text "eps" (or an empty
    /// text) is the empty word.
    pub fn parse(text: &str) -> Self {
        let t = text.trim();
        if t.is_empty() || t == "eps" {
            return Self::default();
        }
        Self {
            letters: t.split_whitespace().map(str::to_string).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn push(&mut self, letter: &str) {
        self.letters.push(letter.to_string());
    }

    pub fn concat(parts: &[Word]) -> Word {
        let mut letters = Vec::new();
        for p in parts {
            letters.extend_from_slice(&p.letters);
        }
        Word { letters }
    }

    /// The subword keeping only occurrences of the given letters.
    pub fn restrict(&self, keep: &[&str]) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .filter(|l| keep.contains(&l.as_str()))
                .cloned()
                .collect(),
        }
    }

    pub fn reverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().cloned().collect(),
        }
    }

    /// Multiplicity of each distinct letter, keyed by letter.
    pub fn letter_counts(&self) -> HashMap<&str, usize> {
        let mut counts = HashMap::new();
        for l in &self.letters {
            *counts.entry(l.as_str()).or_insert(0) += 1;
        }
        counts
    }

    /// `Some(k)` when every distinct letter occurs exactly k times; `None`
    /// for mixed multiplicities. The empty word is an error.
    pub fn uniformity(&self) -> Result<Option<usize>, WordError> {
        if self.letters.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let counts = self.letter_counts();
        let mut values = counts.values();
        let k = *values.next().expect("nonempty word has a letter");
        if values.all(|&c| c == k) {
            Ok(Some(k))
        } else {
            Ok(None)
        }
    }

    pub fn is_k_uniform(&self, k: usize) -> bool {
        matches!(self.uniformity(), Ok(Some(got)) if got == k)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "eps");
        }
        write!(f, "{}", self.letters.join(" "))
    }
}

/// Builds the graph the word represents over the given vertex set: vertices
/// in the given order, an edge exactly where two letters strictly alternate.
///
/// Every letter must be a listed vertex and every vertex must occur.
pub fn alternation_graph(w: &Word, vertex_set: &[&str]) -> Result<Graph, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    let n = vertex_set.len();
    let mut index: HashMap<&str, usize> = HashMap::with_capacity(n);
    for (i, &v) in vertex_set.iter().enumerate() {
        index.insert(v, i);
    }
    let mut seen = vec![false; n];
    // For the unordered pair {min, max}: 0 = nothing yet, 1 = min spoke
    // last, 2 = max spoke last.
    let mut last = vec![vec![0u8; n]; n];
    let mut broken = vec![vec![false; n]; n];
    for letter in w.letters() {
        let &i = index
            .get(letter.as_str())
            .ok_or_else(|| WordError::UnknownLetter(letter.clone()))?;
        seen[i] = true;
        for j in 0..n {
            if j == i {
                continue;
            }
            let (a, b) = (i.min(j), i.max(j));
            let code = if i == a { 1 } else { 2 };
            if last[a][b] == code {
                broken[a][b] = true;
            }
            last[a][b] = code;
        }
    }
    if let Some(missing) = (0..n).find(|&i| !seen[i]) {
        return Err(WordError::MissingLetter(vertex_set[missing].to_string()));
    }
    let mut g = Graph::new();
    for &v in vertex_set {
        g.add_vertex(v);
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if last[a][b] != 0 && !broken[a][b] {
                g.add_edge(vertex_set[a], vertex_set[b])?;
            }
        }
    }
    Ok(g)
}

/// Whether the word represents exactly this graph (same vertex set, same
/// edges).
pub fn represents(w: &Word, g: &Graph) -> Result<bool, WordError> {
    let vs: Vec<&str> = g.vertices().collect();
    let got = alternation_graph(w, &vs)?;
    Ok(got == *g)
}

/// A sequence of permutations of one vertex set; its concatenation is a
/// uniform word whose uniformity equals the number of permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermSequence {
    vertex_set: Vec<String>,
    perms: Vec<Word>,
}

impl PermSequence {
    pub fn new(vertex_set: Vec<String>, perms: Vec<Word>) -> Result<Self, WordError> {
        if perms.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let mut reference: Vec<&str> = vertex_set.iter().map(String::as_str).collect();
        reference.sort_unstable();
        for p in &perms {
            let mut letters: Vec<&str> = p.letters().iter().map(String::as_str).collect();
            letters.sort_unstable();
            if letters != reference {
                return Err(WordError::NotAPermutation(p.to_string()));
            }
        }
        Ok(Self { vertex_set, perms })
    }

    pub fn vertex_set(&self) -> &[String] {
        &self.vertex_set
    }

    pub fn perms(&self) -> &[Word] {
        &self.perms
    }

    pub fn k(&self) -> usize {
        self.perms.len()
    }

    pub fn flatten(&self) -> Word {
        Word::concat(&self.perms)
    }

    /// Whether the concatenation represents the graph.
    pub fn represents(&self, g: &Graph) -> Result<bool, WordError> {
        represents(&self.flatten(), g)
    }
}
