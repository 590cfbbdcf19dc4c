//! Graph data type with deterministic vertex ordering, named-graph builders,
//! and structural operations: line graph, local complementation, induced
//! subgraph search, transitive orientation, isomorphism, and the directed
//! reduction of long melons to their cores.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use thiserror::Error;

/// Hard cap on host size for [`contains_induced`].
pub const INDUCED_HOST_LIMIT: usize = 24;
/// Hard cap on edge count for [`find_transitive_orientation`].
pub const ORIENTATION_EDGE_LIMIT: usize = 40;
/// Hard cap on vertex count for [`is_isomorphic`].
pub const ISOMORPHISM_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0:?} is not allowed")]
    SelfLoop(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("graph has no edges")]
    EmptyEdgeSet,
    #[error("invalid spec: {0}")]
    SpecInvalid(String),
    #[error("{op} is limited to {limit} {unit}, got {actual}")]
    SizeGuardExceeded {
        op: &'static str,
        limit: usize,
        actual: usize,
        unit: &'static str,
    },
    #[error("not reducible to a core: {0}")]
    NotInFamily(String),
    #[error("edge list line {line}: {msg}")]
    ParseError { line: usize, msg: String },
}

/// Undirected simple graph over string-labeled vertices.
///
/// Vertices keep their insertion order; every iterator and every emitted
/// collection follows that order, so all downstream output is reproducible.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex if not present; returns its index either way.
    pub fn add_vertex(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        self.adj.push(BTreeSet::new());
        i
    }

    /// Adds an undirected edge, creating endpoints as needed.
    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u.to_string()));
        }
        let iu = self.add_vertex(u);
        let iv = self.add_vertex(v);
        self.adj[iu].insert(iv);
        self.adj[iv].insert(iu);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn contains_vertex(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub(crate) fn idx(&self, label: &str) -> Result<usize, GraphError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(label.to_string()))
    }

    pub(crate) fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Vertex labels in insertion order.
    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(|s| s.as_str())
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.index.get(u), self.index.get(v)) {
            (Some(&iu), Some(&iv)) => self.adj[iu].contains(&iv),
            _ => false,
        }
    }

    pub(crate) fn has_edge_idx(&self, iu: usize, iv: usize) -> bool {
        self.adj[iu].contains(&iv)
    }

    pub(crate) fn adj_idx(&self, i: usize) -> &BTreeSet<usize> {
        &self.adj[i]
    }

    /// Neighbors of a vertex, in vertex order.
    pub fn neighbors(&self, v: &str) -> Result<Vec<&str>, GraphError> {
        let i = self.idx(v)?;
        Ok(self.adj[i].iter().map(|&j| self.label(j)).collect())
    }

    pub fn degree(&self, v: &str) -> Result<usize, GraphError> {
        Ok(self.adj[self.idx(v)?].len())
    }

    /// Edges as label pairs; each pair lists the endpoint that comes first in
    /// vertex order first, and the list is sorted by that order.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for iu in 0..self.labels.len() {
            for &iv in &self.adj[iu] {
                if iu < iv {
                    out.push((self.label(iu), self.label(iv)));
                }
            }
        }
        out
    }

    /// Induced subgraph on the given labels; vertex order follows this
    /// graph's order, not the argument order.
    pub fn induced(&self, keep: &[&str]) -> Result<Graph, GraphError> {
        let mut keep_idx = BTreeSet::new();
        for &v in keep {
            keep_idx.insert(self.idx(v)?);
        }
        let mut g = Graph::new();
        for &i in &keep_idx {
            g.add_vertex(self.label(i));
        }
        for &i in &keep_idx {
            for &j in &self.adj[i] {
                if i < j && keep_idx.contains(&j) {
                    g.add_edge(self.label(i), self.label(j))?;
                }
            }
        }
        Ok(g)
    }

    /// Complement graph on the same vertices, in the same order.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::new();
        for v in self.vertices() {
            g.add_vertex(v);
        }
        let n = self.labels.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if !self.adj[i].contains(&j) {
                    g.add_edge(&self.labels[i].clone(), &self.labels[j].clone())
                        .expect("distinct labels");
                }
            }
        }
        g
    }

    /// Renames every vertex through the given map; unmapped vertices keep
    /// their label. Order is preserved.
    pub fn relabel(&self, map: &BTreeMap<String, String>) -> Graph {
        let name = |l: &str| map.get(l).cloned().unwrap_or_else(|| l.to_string());
        let mut g = Graph::new();
        for v in self.vertices() {
            g.add_vertex(&name(v));
        }
        for (u, v) in self.edges() {
            g.add_edge(&name(u), &name(v)).expect("relabel keeps simple");
        }
        g
    }

    /// Deterministic DOT rendering of the undirected graph.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for v in self.vertices() {
            s.push_str(&format!("  \"{v}\";\n"));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  \"{u}\" -- \"{v}\";\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Equality is structural: same vertex set (order ignored) and same edges.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        if self.labels.len() != other.labels.len() || self.edge_count() != other.edge_count() {
            return false;
        }
        let mine: BTreeSet<&str> = self.vertices().collect();
        let theirs: BTreeSet<&str> = other.vertices().collect();
        if mine != theirs {
            return false;
        }
        self.edges()
            .into_iter()
            .all(|(u, v)| other.has_edge(u, v))
    }
}

impl Eq for Graph {}

/// Multiset of constituent-path lengths defining a melon graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MelonSpec {
    lengths: Vec<u32>,
}

impl MelonSpec {
    pub fn new(lengths: Vec<u32>) -> Result<Self, GraphError> {
        if lengths.is_empty() {
            return Err(GraphError::SpecInvalid("no constituent paths".into()));
        }
        if lengths.contains(&0) {
            return Err(GraphError::SpecInvalid("path length 0".into()));
        }
        let units = lengths.iter().filter(|&&l| l == 1).count();
        if units > 1 {
            return Err(GraphError::SpecInvalid(format!(
                "{units} paths of length one; a simple graph allows at most one"
            )));
        }
        Ok(Self { lengths })
    }

    /// Parses "1,3,3"; a single trailing comma is tolerated ("1," is K_2).
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let trimmed = text.trim().strip_suffix(',').unwrap_or(text.trim());
        let mut lengths = Vec::new();
        for part in trimmed.split(',') {
            let part = part.trim();
            let len: u32 = part
                .parse()
                .map_err(|_| GraphError::SpecInvalid(format!("bad path length {part:?}")))?;
            lengths.push(len);
        }
        Self::new(lengths)
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    /// Number of constituent paths.
    pub fn path_count(&self) -> usize {
        self.lengths.len()
    }

    /// Whether the endpoints are adjacent (a length-1 path exists).
    pub fn has_unit_path(&self) -> bool {
        self.lengths.contains(&1)
    }

    /// Number of paths of length at least 3.
    pub fn long_count(&self) -> usize {
        self.lengths.iter().filter(|&&l| l >= 3).count()
    }

    pub fn vertex_count(&self) -> usize {
        2 + self
            .lengths
            .iter()
            .map(|&l| l as usize - 1)
            .sum::<usize>()
    }

    /// Canonical label of path `i`'s `j`-th intermediate (both 1-based;
    /// j = 1 is adjacent to "0p", j = length−1 is adjacent to "0").
    pub fn intermediate(path: usize, j: usize) -> String {
        format!("p{path}_{j}")
    }

    /// The intermediates of path `i` (1-based), ordered from "0p" to "0".
    pub fn path_intermediates(&self, i: usize) -> Vec<String> {
        (1..self.lengths[i - 1])
            .map(|j| Self::intermediate(i, j as usize))
            .collect()
    }
}

impl fmt::Display for MelonSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Builds the melon graph: endpoints "0" and "0p"; path i's intermediates
/// "p{i}_{j}" with j = 1 nearest "0p".
pub fn build_melon(spec: &MelonSpec) -> Graph {
    let mut g = Graph::new();
    g.add_vertex("0");
    g.add_vertex("0p");
    for (i0, &len) in spec.lengths().iter().enumerate() {
        let i = i0 + 1;
        if len == 1 {
            g.add_edge("0p", "0").expect("distinct endpoints");
            continue;
        }
        let mut prev = "0p".to_string();
        for j in 1..len {
            let v = MelonSpec::intermediate(i, j as usize);
            g.add_edge(&prev, &v).expect("fresh intermediate");
            prev = v;
        }
        g.add_edge(&prev, "0").expect("distinct endpoints");
    }
    g
}

/// Fixed catalogue of auxiliary graphs used by the classifiers and tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedGraph {
    /// Path on n vertices, labels c1..cn.
    Path(usize),
    /// Cycle on n vertices, labels c1..cn.
    Cycle(usize),
    /// Complete graph on n vertices, labels v1..vn.
    Complete(usize),
    /// Complete bipartite graph, parts u1..ua and w1..wb.
    CompleteBipartite(usize, usize),
    /// Book with m pages: the melon (1, 3, 3, …, 3).
    Book(usize),
    /// Triangular book with m pages: the melon (1, 2, 2, …, 2).
    TriangularBook(usize),
    /// Triangular prism: two triangles u1u2u3, w1w2w3 plus rungs ui–wi.
    Prism3,
    /// Cartesian product K_m □ K_2 over labels e{i} / e{i}p.
    KmBoxK2(usize),
    /// Seven-vertex tree: center t3, legs t3-t2-t1, t3-t4-t6, t3-t5-t7.
    T2,
    /// Net-like graph: triangle s1s2s3 with pendants s6, s4, s5.
    S1,
    /// S1 plus the edge s4–s5.
    S2,
    /// Two K_m copies a1..am and b1..bm, a universal x, plus a1–b1, a2–b2.
    H(usize),
}

pub fn build_named(which: NamedGraph) -> Result<Graph, GraphError> {
    use NamedGraph::*;
    let mut g = Graph::new();
    match which {
        Path(n) => {
            if n < 1 {
                return Err(GraphError::SpecInvalid("path needs n >= 1".into()));
            }
            for i in 1..=n {
                g.add_vertex(&format!("c{i}"));
            }
            for i in 1..n {
                g.add_edge(&format!("c{i}"), &format!("c{}", i + 1))?;
            }
        }
        Cycle(n) => {
            if n < 3 {
                return Err(GraphError::SpecInvalid("cycle needs n >= 3".into()));
            }
            for i in 1..=n {
                g.add_vertex(&format!("c{i}"));
            }
            for i in 1..n {
                g.add_edge(&format!("c{i}"), &format!("c{}", i + 1))?;
            }
            g.add_edge(&format!("c{n}"), "c1")?;
        }
        Complete(n) => {
            if n < 1 {
                return Err(GraphError::SpecInvalid("complete graph needs n >= 1".into()));
            }
            for i in 1..=n {
                g.add_vertex(&format!("v{i}"));
            }
            for i in 1..=n {
                for j in (i + 1)..=n {
                    g.add_edge(&format!("v{i}"), &format!("v{j}"))?;
                }
            }
        }
        CompleteBipartite(a, b) => {
            if a < 1 || b < 1 {
                return Err(GraphError::SpecInvalid("parts must be nonempty".into()));
            }
            for i in 1..=a {
                g.add_vertex(&format!("u{i}"));
            }
            for j in 1..=b {
                g.add_vertex(&format!("w{j}"));
            }
            for i in 1..=a {
                for j in 1..=b {
                    g.add_edge(&format!("u{i}"), &format!("w{j}"))?;
                }
            }
        }
        Book(m) => {
            if m < 1 {
                return Err(GraphError::SpecInvalid("book needs m >= 1".into()));
            }
            let mut lengths = vec![1];
            lengths.extend(std::iter::repeat_n(3, m));
            g = build_melon(&MelonSpec::new(lengths)?);
        }
        TriangularBook(m) => {
            if m < 1 {
                return Err(GraphError::SpecInvalid("triangular book needs m >= 1".into()));
            }
            let mut lengths = vec![1];
            lengths.extend(std::iter::repeat_n(2, m));
            g = build_melon(&MelonSpec::new(lengths)?);
        }
        Prism3 => {
            for i in 1..=3 {
                g.add_vertex(&format!("u{i}"));
            }
            for i in 1..=3 {
                g.add_vertex(&format!("w{i}"));
            }
            for i in 1..=3 {
                for j in (i + 1)..=3 {
                    g.add_edge(&format!("u{i}"), &format!("u{j}"))?;
                    g.add_edge(&format!("w{i}"), &format!("w{j}"))?;
                }
                g.add_edge(&format!("u{i}"), &format!("w{i}"))?;
            }
        }
        KmBoxK2(m) => {
            if m < 1 {
                return Err(GraphError::SpecInvalid("product needs m >= 1".into()));
            }
            for i in 1..=m {
                g.add_vertex(&format!("e{i}"));
            }
            for i in 1..=m {
                g.add_vertex(&format!("e{i}p"));
            }
            for i in 1..=m {
                for j in (i + 1)..=m {
                    g.add_edge(&format!("e{i}"), &format!("e{j}"))?;
                    g.add_edge(&format!("e{i}p"), &format!("e{j}p"))?;
                }
                g.add_edge(&format!("e{i}"), &format!("e{i}p"))?;
            }
        }
        T2 => {
            for i in 1..=7 {
                g.add_vertex(&format!("t{i}"));
            }
            for (u, v) in [(1, 2), (2, 3), (3, 4), (3, 5), (4, 6), (5, 7)] {
                g.add_edge(&format!("t{u}"), &format!("t{v}"))?;
            }
        }
        S1 | S2 => {
            for i in 1..=6 {
                g.add_vertex(&format!("s{i}"));
            }
            for (u, v) in [(1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (1, 6)] {
                g.add_edge(&format!("s{u}"), &format!("s{v}"))?;
            }
            if which == S2 {
                g.add_edge("s4", "s5")?;
            }
        }
        H(m) => {
            if m < 2 {
                return Err(GraphError::SpecInvalid("H needs m >= 2".into()));
            }
            for i in 1..=m {
                g.add_vertex(&format!("a{i}"));
            }
            for i in 1..=m {
                g.add_vertex(&format!("b{i}"));
            }
            g.add_vertex("x");
            for i in 1..=m {
                for j in (i + 1)..=m {
                    g.add_edge(&format!("a{i}"), &format!("a{j}"))?;
                    g.add_edge(&format!("b{i}"), &format!("b{j}"))?;
                }
                g.add_edge(&format!("a{i}"), "x")?;
                g.add_edge(&format!("b{i}"), "x")?;
            }
            g.add_edge("a1", "b1")?;
            g.add_edge("a2", "b2")?;
        }
    }
    Ok(g)
}

/// Line graph: one vertex "u-v" per edge of `g` (u first in vertex order),
/// adjacent when the underlying edges share an endpoint.
pub fn line_graph(g: &Graph) -> Result<Graph, GraphError> {
    if g.edge_count() == 0 {
        return Err(GraphError::EmptyEdgeSet);
    }
    let edges = g.edges();
    let name = |(u, v): (&str, &str)| format!("{u}-{v}");
    let mut lg = Graph::new();
    for &e in &edges {
        lg.add_vertex(&name(e));
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in edges.iter().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                lg.add_edge(&name((a, b)), &name((c, d)))?;
            }
        }
    }
    Ok(lg)
}

/// Complements the edges among the neighbors of `v`; edges incident to `v`
/// itself are unchanged.
pub fn local_complement(g: &Graph, v: &str) -> Result<Graph, GraphError> {
    let pivot = g.idx(v)?;
    let nbrs: Vec<usize> = g.adj[pivot].iter().copied().collect();
    let mut out = g.clone();
    for (a, &ia) in nbrs.iter().enumerate() {
        for &ib in nbrs.iter().skip(a + 1) {
            if g.adj[ia].contains(&ib) {
                out.adj[ia].remove(&ib);
                out.adj[ib].remove(&ia);
            } else {
                out.adj[ia].insert(ib);
                out.adj[ib].insert(ia);
            }
        }
    }
    Ok(out)
}

/// Removes `v` and its incident edges; other vertices keep their order.
pub fn delete_vertex(g: &Graph, v: &str) -> Result<Graph, GraphError> {
    let dead = g.idx(v)?;
    let mut out = Graph::new();
    for (i, label) in g.labels.iter().enumerate() {
        if i != dead {
            out.add_vertex(label);
        }
    }
    for (u, w) in g.edges() {
        if u != v && w != v {
            out.add_edge(u, w)?;
        }
    }
    Ok(out)
}

/// Searches for an induced embedding of `pattern` into `host`: an injective
/// vertex map preserving both adjacency and non-adjacency. Exhaustive
/// backtracking; the first embedding in canonical order is returned.
pub fn contains_induced(
    host: &Graph,
    pattern: &Graph,
) -> Result<Option<BTreeMap<String, String>>, GraphError> {
    if host.vertex_count() > INDUCED_HOST_LIMIT {
        return Err(GraphError::SizeGuardExceeded {
            op: "contains_induced",
            limit: INDUCED_HOST_LIMIT,
            actual: host.vertex_count(),
            unit: "host vertices",
        });
    }
    let np = pattern.vertex_count();
    if np > host.vertex_count() {
        return Ok(None);
    }

    // Pattern vertices in a connectivity-friendly order: each vertex after
    // the first is preferably adjacent to an earlier one, so partial maps
    // are constrained early.
    let mut order: Vec<usize> = Vec::with_capacity(np);
    let mut placed = vec![false; np];
    while order.len() < np {
        let next = (0..np)
            .filter(|&i| !placed[i])
            .max_by_key(|&i| {
                (
                    pattern.adj[i].iter().filter(|&&j| placed[j]).count(),
                    pattern.adj[i].len(),
                    std::cmp::Reverse(i),
                )
            })
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
    }

    let nh = host.vertex_count();
    let mut map = vec![usize::MAX; np];
    let mut used = vec![false; nh];

    fn backtrack(
        host: &Graph,
        pattern: &Graph,
        order: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let p = order[depth];
        let nh = used.len();
        'cand: for h in 0..nh {
            if used[h] || host.adj[h].len() < pattern.adj[p].len() {
                continue;
            }
            for &q in &order[..depth] {
                let hq = map[q];
                if pattern.adj[p].contains(&q) != host.adj[h].contains(&hq) {
                    continue 'cand;
                }
            }
            map[p] = h;
            used[h] = true;
            if backtrack(host, pattern, order, depth + 1, map, used) {
                return true;
            }
            used[h] = false;
            map[p] = usize::MAX;
        }
        false
    }

    if backtrack(host, pattern, &order, 0, &mut map, &mut used) {
        let mut out = BTreeMap::new();
        for (p, &h) in map.iter().enumerate().take(np) {
            out.insert(pattern.label(p).to_string(), host.label(h).to_string());
        }
        Ok(Some(out))
    } else {
        Ok(None)
    }
}

/// Two-coloring by BFS; `Some((a, b))` with every edge between the classes,
/// or `None` exactly when an odd cycle exists.
pub fn is_bipartite(g: &Graph) -> Option<(Vec<String>, Vec<String>)> {
    let n = g.vertex_count();
    let mut color: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued vertices are colored");
            for &v in &g.adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, c) in color.iter().enumerate() {
        if *c == Some(false) {
            a.push(g.label(i).to_string());
        } else {
            b.push(g.label(i).to_string());
        }
    }
    Some((a, b))
}

/// An assignment of a direction to every edge of `base`.
#[derive(Debug, Clone)]
pub struct Orientation {
    base: Graph,
    arcs: BTreeSet<(usize, usize)>,
}

impl Orientation {
    /// Builds an orientation from directed label pairs; every edge of `base`
    /// must receive exactly one direction.
    pub fn from_arcs<'a>(
        base: Graph,
        directed: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, GraphError> {
        let mut arcs = BTreeSet::new();
        for (u, v) in directed {
            let iu = base.idx(u)?;
            let iv = base.idx(v)?;
            if !base.has_edge_idx(iu, iv) {
                return Err(GraphError::UnknownVertex(format!("no edge {u}-{v}")));
            }
            arcs.insert((iu, iv));
        }
        let o = Self { base, arcs };
        if let Some((u, v)) = o.unassigned_edge() {
            return Err(GraphError::SpecInvalid(format!(
                "edge {u}-{v} has no direction"
            )));
        }
        Ok(o)
    }

    fn unassigned_edge(&self) -> Option<(String, String)> {
        for (u, v) in self.base.edges() {
            let iu = self.base.idx(u).expect("own vertex");
            let iv = self.base.idx(v).expect("own vertex");
            let fwd = self.arcs.contains(&(iu, iv));
            let bwd = self.arcs.contains(&(iv, iu));
            if fwd == bwd {
                return Some((u.to_string(), v.to_string()));
            }
        }
        None
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Directed pairs in deterministic order.
    pub fn arcs(&self) -> Vec<(&str, &str)> {
        self.arcs
            .iter()
            .map(|&(u, v)| (self.base.label(u), self.base.label(v)))
            .collect()
    }

    pub fn has_arc(&self, u: &str, v: &str) -> bool {
        match (self.base.index.get(u), self.base.index.get(v)) {
            (Some(&iu), Some(&iv)) => self.arcs.contains(&(iu, iv)),
            _ => false,
        }
    }

    /// First triple violating transitivity (a→b, b→c but no a→c), if any.
    pub fn transitivity_violation(&self) -> Option<(String, String, String)> {
        let mut out_nbrs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(u, v) in &self.arcs {
            out_nbrs.entry(u).or_default().push(v);
        }
        for (&a, bs) in &out_nbrs {
            for &b in bs {
                if let Some(cs) = out_nbrs.get(&b) {
                    for &c in cs {
                        if c != a && !self.arcs.contains(&(a, c)) {
                            return Some((
                                self.base.label(a).to_string(),
                                self.base.label(b).to_string(),
                                self.base.label(c).to_string(),
                            ));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_violation().is_none()
    }
}

/// Searches for a transitive orientation by implication-class forcing:
/// orienting an edge forces every edge it is Γ-related to; contradictions
/// refute. Returns a verified orientation or `None` when none exists.
pub fn find_transitive_orientation(g: &Graph) -> Result<Option<Orientation>, GraphError> {
    if g.edge_count() > ORIENTATION_EDGE_LIMIT {
        return Err(GraphError::SizeGuardExceeded {
            op: "find_transitive_orientation",
            limit: ORIENTATION_EDGE_LIMIT,
            actual: g.edge_count(),
            unit: "edges",
        });
    }
    let n = g.vertex_count();
    // dir[u][v]: +1 arc u→v, −1 arc v→u (stored on both orders), 0 unset.
    let mut dir = vec![vec![0i8; n]; n];

    // Forces the closure of `u→v`; returns false on contradiction.
    fn force(g: &Graph, dir: &mut [Vec<i8>], u: usize, v: usize) -> bool {
        let mut queue = VecDeque::from([(u, v)]);
        while let Some((a, b)) = queue.pop_front() {
            match dir[a][b] {
                1 => continue,
                -1 => return false,
                _ => {}
            }
            dir[a][b] = 1;
            dir[b][a] = -1;
            // a→b forces a→c for neighbors c of a that b does not see,
            // and c→b for neighbors c of b that a does not see.
            for &c in g.adj_idx(a) {
                if c != b && !g.has_edge_idx(b, c) {
                    queue.push_back((a, c));
                }
            }
            for &c in g.adj_idx(b) {
                if c != a && !g.has_edge_idx(a, c) {
                    queue.push_back((c, b));
                }
            }
        }
        true
    }

    for (u, v) in g.edges() {
        let iu = g.idx(u).expect("own vertex");
        let iv = g.idx(v).expect("own vertex");
        if dir[iu][iv] != 0 {
            continue;
        }
        let snapshot = dir.clone();
        if !force(g, &mut dir, iu, iv) {
            dir = snapshot;
            if !force(g, &mut dir, iv, iu) {
                return Ok(None);
            }
        }
    }

    let mut arcs = Vec::new();
    for (u, v) in g.edges() {
        let iu = g.idx(u).expect("own vertex");
        let iv = g.idx(v).expect("own vertex");
        if dir[iu][iv] == 1 {
            arcs.push((u, v));
        } else {
            arcs.push((v, u));
        }
    }
    let o = Orientation::from_arcs(g.clone(), arcs)?;
    if o.is_transitive() {
        Ok(Some(o))
    } else {
        Ok(None)
    }
}

/// Finds a vertex whose neighborhood induces a graph with no transitive
/// orientation — a refuter of word-representability — or `None` when every
/// neighborhood passes (necessary, not sufficient).
pub fn neighborhood_comparability_check(g: &Graph) -> Result<Option<String>, GraphError> {
    for v in g.vertices() {
        let nbrs = g.neighbors(v)?;
        let sub = g.induced(&nbrs)?;
        if find_transitive_orientation(&sub)?.is_none() {
            return Ok(Some(v.to_string()));
        }
    }
    Ok(None)
}

/// Exhaustive isomorphism search with degree pruning; returns the first
/// bijection in canonical order, or `None`.
pub fn is_isomorphic(
    g: &Graph,
    h: &Graph,
) -> Result<Option<BTreeMap<String, String>>, GraphError> {
    let n = g.vertex_count();
    if n.max(h.vertex_count()) > ISOMORPHISM_LIMIT {
        return Err(GraphError::SizeGuardExceeded {
            op: "is_isomorphic",
            limit: ISOMORPHISM_LIMIT,
            actual: n.max(h.vertex_count()),
            unit: "vertices",
        });
    }
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let mut gd: Vec<usize> = g.adj.iter().map(|s| s.len()).collect();
    let mut hd: Vec<usize> = h.adj.iter().map(|s| s.len()).collect();
    gd.sort_unstable();
    hd.sort_unstable();
    if gd != hd {
        return Ok(None);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn backtrack(
        g: &Graph,
        h: &Graph,
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = map.len();
        if depth == n {
            return true;
        }
        'cand: for cand in 0..n {
            if used[cand] || g.adj[depth].len() != h.adj[cand].len() {
                continue;
            }
            for (prev, &m) in map.iter().enumerate().take(depth) {
                if g.adj[depth].contains(&prev) != h.adj[cand].contains(&m) {
                    continue 'cand;
                }
            }
            map[depth] = cand;
            used[cand] = true;
            if backtrack(g, h, depth + 1, map, used) {
                return true;
            }
            used[cand] = false;
            map[depth] = usize::MAX;
        }
        false
    }

    if backtrack(g, h, 0, &mut map, &mut used) {
        let mut out = BTreeMap::new();
        for (i, &m) in map.iter().enumerate().take(n) {
            out.insert(g.label(i).to_string(), h.label(m).to_string());
        }
        Ok(Some(out))
    } else {
        Ok(None)
    }
}

/// One step of the melon-core reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReduceStep {
    LocalComplement(String),
    Delete(String),
}

impl fmt::Display for ReduceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReduceStep::LocalComplement(v) => write!(f, "local-complement {v}"),
            ReduceStep::Delete(v) => write!(f, "delete {v}"),
        }
    }
}

/// Shortens every over-long path of a three-long-paths melon (optionally with
/// an endpoint edge) down to length three by local complementation followed
/// by deletion of the intermediate nearest "0", and returns the step list
/// together with the replay result. The result is isomorphic to the melon
/// (3,3,3) — or (1,3,3,3) when the endpoint edge is present.
pub fn reduce_to_core(spec: &MelonSpec) -> Result<(Vec<ReduceStep>, Graph), GraphError> {
    let lengths = spec.lengths();
    let units = lengths.iter().filter(|&&l| l == 1).count();
    let longs = lengths.iter().filter(|&&l| l >= 3).count();
    let ok = (units == 0 && longs == 3 && lengths.len() == 3)
        || (units == 1 && longs == 3 && lengths.len() == 4);
    if !ok {
        return Err(GraphError::NotInFamily(format!(
            "spec {spec} is not three length>=3 paths with at most an endpoint edge"
        )));
    }

    let mut g = build_melon(spec);
    let mut steps = Vec::new();
    for (i0, &len) in lengths.iter().enumerate() {
        let path = i0 + 1;
        let mut cur = len as usize;
        while cur > 3 {
            // The intermediate adjacent to "0" has exactly the neighbors
            // {previous intermediate, "0"}; complementing locally adds the
            // shortcut edge, deletion then shortens the path by one.
            let v = MelonSpec::intermediate(path, cur - 1);
            g = local_complement(&g, &v)?;
            steps.push(ReduceStep::LocalComplement(v.clone()));
            g = delete_vertex(&g, &v)?;
            steps.push(ReduceStep::Delete(v));
            cur -= 1;
        }
    }
    Ok((steps, g))
}

/// Parses the edge-list text format: one edge "u v" per line, `#` starts a
/// comment, and "vertex u" declares an isolated vertex.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut g = Graph::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["vertex", v] => {
                g.add_vertex(v);
            }
            [u, v] => {
                g.add_edge(u, v).map_err(|e| GraphError::ParseError {
                    line: lineno + 1,
                    msg: e.to_string(),
                })?;
            }
            _ => {
                return Err(GraphError::ParseError {
                    line: lineno + 1,
                    msg: format!("expected \"u v\" or \"vertex u\", got {line:?}"),
                })
            }
        }
    }
    Ok(g)
}
