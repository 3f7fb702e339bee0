//! Simple undirected graphs over vertex ids `0..n` with bitset adjacency.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A set of vertex ids below a fixed universe size.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet { n, words: vec![0; words_for(n)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::new(n);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            let cnt = (n - lo).min(64);
            *w = if cnt == 64 { u64::MAX } else { (1u64 << cnt) - 1 };
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Self {
        let mut s = VertexSet::new(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn singleton(n: usize, v: usize) -> Self {
        VertexSet::from_iter(n, [v])
    }

    /// Builds a set from the low `n` bits of a mask.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64 || mask >> 63 == 0);
        let mut s = VertexSet::new(n);
        if n > 0 {
            s.words[0] = mask;
        }
        s
    }

    /// The low 64 ids as a mask; callers guarantee `universe() <= 64`.
    pub fn to_mask(&self) -> u64 {
        debug_assert!(self.n <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} outside universe {}", self.n);
        self.words[v >> 6] |= 1 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.words[v >> 6] &= !(1 << (v & 63));
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v >> 6] >> (v & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, idx: 0, cur: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip_with(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::full(self.n).difference(self)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & b == 0)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words.iter().zip(&other.words).map(|(&a, &b)| (a & b).count_ones() as usize).sum()
    }
}

impl Ord for VertexSet {
    /// Lexicographic order on the ascending member lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter()).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Immutable simple graph. Modifications produce new graphs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![VertexSet::new(n); n], m: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let mut adj = vec![VertexSet::full(n); n];
        for (v, a) in adj.iter_mut().enumerate() {
            a.remove(v);
        }
        Graph { n, adj, m: n * n.saturating_sub(1) / 2 }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and bad ids.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::Contract(format!("edge {i}: vertex id out of range ({u},{v}) for n={n}")));
            }
            if u == v {
                return Err(Error::Contract(format!("edge {i}: self-loop at {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::Contract(format!("edge {i}: duplicate edge ({u},{v})")));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    /// The labeled graph whose edge set is given by the bits of `code`,
    /// pairs ordered (0,1),(0,2),...,(1,2),...
    pub fn from_code(n: usize, code: u64) -> Self {
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if code >> bit & 1 == 1 {
                    g.set_edge(u, v, true);
                }
                bit += 1;
            }
        }
        g
    }

    /// G(n, p) random graph.
    pub fn random<R: Rng>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        let had = self.adj[u].contains(v);
        if on && !had {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
            self.m += 1;
        } else if !on && had {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
            self.m -= 1;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// N(U): union of neighborhoods minus U itself.
    pub fn open_neighborhood(&self, u: &VertexSet) -> VertexSet {
        let mut s = VertexSet::new(self.n);
        for v in u.iter() {
            s.union_with(&self.adj[v]);
        }
        s.difference_with(u);
        s
    }

    /// N[U] = N(U) ∪ U.
    pub fn closed_neighborhood(&self, u: &VertexSet) -> VertexSet {
        self.open_neighborhood(u).union(u)
    }

    /// Edges as pairs (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn with_edges_added(&self, pairs: &[(usize, usize)]) -> Graph {
        let mut g = self.clone();
        for &(u, v) in pairs {
            assert!(u != v);
            g.set_edge(u, v, true);
        }
        g
    }

    pub fn with_edges_removed(&self, pairs: &[(usize, usize)]) -> Graph {
        let mut g = self.clone();
        for &(u, v) in pairs {
            g.set_edge(u, v, false);
        }
        g
    }

    /// Same vertex set with `extra` new isolated vertices appended.
    pub fn with_vertices(&self, extra: usize) -> Graph {
        let n = self.n + extra;
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.set_edge(u, v, true);
        }
        g
    }

    /// Induced subgraph on `s`, relabeled to `0..|s|`; returns the map back to ids of `self`.
    pub fn induced(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let back = s.to_vec();
        let mut fwd = vec![usize::MAX; self.n];
        for (i, &v) in back.iter().enumerate() {
            fwd[v] = i;
        }
        let mut g = Graph::empty(back.len());
        for (i, &v) in back.iter().enumerate() {
            for w in self.adj[v].iter() {
                let j = fwd[w];
                if j != usize::MAX && j > i {
                    g.set_edge(i, j, true);
                }
            }
        }
        (g, back)
    }

    pub fn complement(&self) -> Graph {
        let mut adj = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let mut a = self.adj[v].complement();
            a.remove(v);
            adj.push(a);
        }
        Graph { n: self.n, adj, m: self.n * self.n.saturating_sub(1) / 2 - self.m }
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = self.with_vertices(other.n);
        for (u, v) in other.edges() {
            g.set_edge(u + self.n, v + self.n, true);
        }
        g
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn component_within(&self, start: usize, within: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(self.n, start);
        let mut frontier = seen.clone();
        while !frontier.is_empty() {
            let mut next = VertexSet::new(self.n);
            for v in frontier.iter() {
                next.union_with(&self.adj[v]);
            }
            next.intersect_with(within);
            next.difference_with(&seen);
            seen.union_with(&next);
            frontier = next;
        }
        seen
    }

    /// Connected components of `G[within]`, ordered by smallest vertex.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut rest = within.clone();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.component_within(v, &rest);
            rest.difference_with(&c);
            out.push(c);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    pub fn is_connected_set(&self, s: &VertexSet) -> bool {
        match s.first() {
            None => true,
            Some(v) => self.component_within(v, s).len() == s.len(),
        }
    }

    pub fn edges_within(&self, x: &VertexSet) -> usize {
        x.iter().map(|v| self.adj[v].intersection_len(x)).sum::<usize>() / 2
    }

    pub fn is_clique(&self, x: &VertexSet) -> bool {
        non_edges_within(self, x) == 0
    }

    pub fn is_independent(&self, x: &VertexSet) -> bool {
        self.edges_within(x) == 0
    }

    /// Checks the adjacency invariants; used by tests.
    pub fn check_invariants(&self) -> bool {
        let mut deg = 0;
        for v in 0..self.n {
            if self.adj[v].contains(v) || self.adj[v].universe() != self.n {
                return false;
            }
            for w in self.adj[v].iter() {
                if !self.adj[w].contains(v) {
                    return false;
                }
            }
            deg += self.adj[v].len();
        }
        deg == 2 * self.m
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// C(|X|,2) − m_X.
pub fn non_edges_within(g: &Graph, x: &VertexSet) -> usize {
    let k = x.len();
    k * k.saturating_sub(1) / 2 - g.edges_within(x)
}

/// |X|·|Y| − |E(X,Y)| for disjoint X and Y.
pub fn missing_edges_between(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<usize> {
    if !x.is_disjoint(y) {
        return Err(Error::Contract("missing_edges_between needs disjoint sets".into()));
    }
    let cross: usize = x.iter().map(|v| g.neighbors(v).intersection_len(y)).sum();
    Ok(x.len() * y.len() - cross)
}

/// Parses the edge-list format: "n m", then m lines "u v"; '#' lines are comments.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::empty(0);
    let mut seen = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        let nums: Vec<usize> = toks
            .iter()
            .map(|s| s.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse { line, msg: format!("expected two non-negative integers, got {t:?}") })?;
        if nums.len() != 2 {
            return Err(Error::Parse { line, msg: format!("expected two integers, got {}", nums.len()) });
        }
        match header {
            None => {
                header = Some((nums[0], nums[1]));
                g = Graph::empty(nums[0]);
            }
            Some((n, m)) => {
                let (u, v) = (nums[0], nums[1]);
                if u >= n || v >= n {
                    return Err(Error::Parse { line, msg: format!("vertex id out of range (n = {n})") });
                }
                if u == v {
                    return Err(Error::Parse { line, msg: format!("self-loop at vertex {u}") });
                }
                if g.has_edge(u, v) {
                    return Err(Error::Parse { line, msg: format!("duplicate edge {u} {v}") });
                }
                if seen == m {
                    return Err(Error::Parse { line, msg: format!("more than the {m} edges announced") });
                }
                g.set_edge(u, v, true);
                seen += 1;
            }
        }
    }
    match header {
        None => Err(Error::Parse { line: 1, msg: "missing header \"n m\"".into() }),
        Some((_, m)) if seen != m => Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("header announces {m} edges, found {seen}"),
        }),
        Some(_) => Ok(g),
    }
}

/// Writes the edge-list format.
pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Iterates all labeled graphs on `n` vertices.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    assert!(pairs < 64);
    (0..1u64 << pairs).map(move |c| Graph::from_code(n, c))
}
