//! The fixed forbidden patterns and induced-occurrence search.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    TwoK2,
    C4,
    P4,
    C5,
    /// K2 plus an isolated vertex.
    CoP3,
}

impl Pattern {
    pub const ALL: [Pattern; 5] = [Pattern::TwoK2, Pattern::C4, Pattern::P4, Pattern::C5, Pattern::CoP3];

    pub fn vertex_count(self) -> usize {
        match self {
            Pattern::TwoK2 | Pattern::C4 | Pattern::P4 => 4,
            Pattern::C5 => 5,
            Pattern::CoP3 => 3,
        }
    }

    /// Edges between role positions.
    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            Pattern::TwoK2 => &[(0, 1), (2, 3)],
            Pattern::C4 => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            Pattern::P4 => &[(0, 1), (1, 2), (2, 3)],
            Pattern::C5 => &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
            Pattern::CoP3 => &[(0, 1)],
        }
    }

    pub fn has_role_edge(self, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges().contains(&(a, b))
    }

    pub fn non_edge_count(self) -> usize {
        let k = self.vertex_count();
        k * (k - 1) / 2 - self.edges().len()
    }

    /// The pattern of the complement graph, when it is in the list.
    pub fn complement(self) -> Option<Pattern> {
        match self {
            Pattern::TwoK2 => Some(Pattern::C4),
            Pattern::C4 => Some(Pattern::TwoK2),
            Pattern::P4 => Some(Pattern::P4),
            Pattern::C5 => Some(Pattern::C5),
            Pattern::CoP3 => None,
        }
    }

    pub fn graph(self) -> Graph {
        Graph::from_edges(self.vertex_count(), self.edges()).unwrap()
    }

    pub fn name(self) -> &'static str {
        match self {
            Pattern::TwoK2 => "2K2",
            Pattern::C4 => "C4",
            Pattern::P4 => "P4",
            Pattern::C5 => "C5",
            Pattern::CoP3 => "coP3",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Refused(format!("unknown pattern {s:?} (expected 2K2, C4, P4, C5 or coP3)")))
    }
}

/// Parses a comma-separated pattern list such as "C4,P4".
pub fn parse_patterns(s: &str) -> Result<Vec<Pattern>, Error> {
    let mut out: Vec<Pattern> = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let p: Pattern = part.parse()?;
        if !out.contains(&p) {
            out.push(p);
        }
    }
    if out.is_empty() {
        return Err(Error::Refused("empty pattern list".into()));
    }
    Ok(out)
}

/// Ordered-tuple search for pattern occurrences. Edge roles are tested
/// against `edge_g` and non-edge roles against `nonedge_g`; plain induced
/// search passes the same graph twice.
struct Matcher<'a> {
    edge_g: &'a Graph,
    nonedge_g: &'a Graph,
    p: Pattern,
    k: usize,
    tuple: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(edge_g: &'a Graph, nonedge_g: &'a Graph, p: Pattern) -> Self {
        Matcher { edge_g, nonedge_g, p, k: p.vertex_count(), tuple: Vec::with_capacity(5) }
    }

    fn candidates(&self, role: usize) -> VertexSet {
        let n = self.edge_g.n();
        let mut c = VertexSet::full(n);
        for (j, &u) in self.tuple.iter().enumerate() {
            if self.p.has_role_edge(j, role) {
                c.intersect_with(self.edge_g.neighbors(u));
            } else {
                c.difference_with(self.nonedge_g.neighbors(u));
                c.remove(u);
            }
        }
        c
    }

    /// Calls `f` on every occurrence in lexicographic order; stops when `f` returns false.
    fn run(&mut self, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let role = self.tuple.len();
        if role == self.k {
            return f(&self.tuple);
        }
        let cands = self.candidates(role);
        for v in cands.iter() {
            self.tuple.push(v);
            let go = self.run(f);
            self.tuple.pop();
            if !go {
                return false;
            }
        }
        true
    }
}

/// Lexicographically smallest occurrence of `p` in role order.
pub fn find_induced(g: &Graph, p: Pattern) -> Option<Vec<usize>> {
    find_constrained(g, g, p)
}

/// Smallest tuple whose edge roles are edges of `edge_g` and whose
/// non-edge roles are non-edges of `nonedge_g`.
pub fn find_constrained(edge_g: &Graph, nonedge_g: &Graph, p: Pattern) -> Option<Vec<usize>> {
    let mut found = None;
    Matcher::new(edge_g, nonedge_g, p).run(&mut |t| {
        found = Some(t.to_vec());
        false
    });
    found
}

/// Canonical obstruction over a family: the smallest tuple among the
/// smallest occurrences of each pattern, ties broken by family order.
pub fn find_any(g: &Graph, family: &[Pattern]) -> Option<(Pattern, Vec<usize>)> {
    let mut best: Option<(Pattern, Vec<usize>)> = None;
    for &p in family {
        if let Some(t) = find_induced(g, p) {
            if best.as_ref().is_none_or(|(_, b)| t < *b) {
                best = Some((p, t));
            }
        }
    }
    best
}

pub fn is_f_free(g: &Graph, family: &[Pattern]) -> bool {
    family.iter().all(|&p| find_induced(g, p).is_none())
}

/// Distinct vertex sets inducing `p`.
pub fn induced_copies(g: &Graph, p: Pattern) -> Vec<VertexSet> {
    let mut out = std::collections::BTreeSet::new();
    Matcher::new(g, g, p).run(&mut |t| {
        out.insert(VertexSet::from_iter(g.n(), t.iter().copied()));
        true
    });
    out.into_iter().collect()
}

/// Checks that `t` induces `p` with the stated role order.
pub fn is_occurrence(g: &Graph, p: Pattern, t: &[usize]) -> bool {
    if t.len() != p.vertex_count() {
        return false;
    }
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if t[i] == t[j] || g.has_edge(t[i], t[j]) != p.has_role_edge(i, j) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::labeled_graphs;

    #[test]
    fn pattern_sizes() {
        let v: Vec<_> = Pattern::ALL.iter().map(|p| p.vertex_count()).collect();
        assert_eq!(v, vec![4, 4, 4, 5, 3]);
        let ne: Vec<_> = Pattern::ALL.iter().map(|p| p.non_edge_count()).collect();
        assert_eq!(ne, vec![4, 2, 3, 5, 2]);
        for p in Pattern::ALL {
            if let Some(c) = p.complement() {
                assert_eq!(find_induced(&p.graph().complement(), c).map(|t| t.len()), Some(c.vertex_count()));
            }
        }
    }

    #[test]
    fn find_examples() {
        assert_eq!(find_induced(&Graph::cycle(4), Pattern::C4), Some(vec![0, 1, 2, 3]));
        assert_eq!(find_induced(&Graph::complete(4), Pattern::C4), None);
        assert_eq!(find_induced(&Graph::path(4), Pattern::P4), Some(vec![0, 1, 2, 3]));
        assert!(is_f_free(&Graph::cycle(5), &[Pattern::TwoK2, Pattern::C4]));
        assert!(!is_f_free(&Graph::cycle(4), &[Pattern::C4, Pattern::P4]));
    }

    #[test]
    fn occurrences_are_valid_and_match_brute_force() {
        for g in labeled_graphs(5) {
            for p in [Pattern::TwoK2, Pattern::C4, Pattern::P4, Pattern::C5, Pattern::CoP3] {
                let found = find_induced(&g, p);
                let k = p.vertex_count();
                // brute force: smallest valid ordered tuple
                let mut brute = None;
                let n = g.n();
                let mut t = vec![0; k];
                'outer: loop {
                    if is_occurrence(&g, p, &t) {
                        brute = Some(t.clone());
                        break;
                    }
                    let mut i = k;
                    loop {
                        if i == 0 {
                            break 'outer;
                        }
                        i -= 1;
                        t[i] += 1;
                        if t[i] < n {
                            break;
                        }
                        t[i] = 0;
                    }
                }
                assert_eq!(found, brute, "{p} in {g:?}");
            }
        }
    }

    #[test]
    fn copies_counted_by_vertex_set() {
        assert_eq!(induced_copies(&Graph::cycle(4), Pattern::C4).len(), 1);
        assert_eq!(induced_copies(&Graph::cycle(5), Pattern::P4).len(), 5);
    }

    #[test]
    fn parse_pattern_list() {
        assert_eq!(parse_patterns("C4,p4").unwrap(), vec![Pattern::C4, Pattern::P4]);
        assert!(parse_patterns("C6").is_err());
        assert!(parse_patterns("").is_err());
    }
}
