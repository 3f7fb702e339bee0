use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Addition,
    Deletion,
}

impl Mode {
    pub fn flip(self) -> Mode {
        match self {
            Mode::Addition => Mode::Deletion,
            Mode::Deletion => Mode::Addition,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Addition => "completion",
            Mode::Deletion => "deletion",
        })
    }
}

/// Unordered vertex pairs to add to (or delete from) a host graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CompletionSet {
    mode: Mode,
    pairs: BTreeSet<(usize, usize)>,
}

impl CompletionSet {
    pub fn new(mode: Mode) -> Self {
        CompletionSet { mode, pairs: BTreeSet::new() }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(mode: Mode, it: I) -> Self {
        let mut s = CompletionSet::new(mode);
        for (u, v) in it {
            s.insert(u, v);
        }
        s
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Inserts the pair, normalized to u < v. Returns false if already present.
    pub fn insert(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "pair with equal endpoints");
        self.pairs.insert(if u < v { (u, v) } else { (v, u) })
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.pairs.contains(&if u < v { (u, v) } else { (v, u) })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().copied().collect()
    }

    pub fn extend(&mut self, other: &CompletionSet) {
        assert_eq!(self.mode, other.mode);
        self.pairs.extend(other.pairs.iter().copied());
    }

    /// Relabels every endpoint through `map`.
    pub fn mapped(&self, map: &[usize]) -> CompletionSet {
        CompletionSet::from_pairs(self.mode, self.pairs().map(|(u, v)| (map[u], map[v])))
    }

    /// Checks that every pair is a non-edge (addition) or edge (deletion) of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for (u, v) in self.pairs() {
            if v >= g.n() {
                return Err(Error::Contract(format!("pair ({u},{v}) outside the graph")));
            }
            let present = g.has_edge(u, v);
            match self.mode {
                Mode::Addition if present => {
                    return Err(Error::Contract(format!("pair ({u},{v}) is already an edge")))
                }
                Mode::Deletion if !present => return Err(Error::Contract(format!("pair ({u},{v}) is not an edge"))),
                _ => {}
            }
        }
        Ok(())
    }

    /// G + S or G − S.
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        self.validate(g)?;
        let v = self.to_vec();
        Ok(match self.mode {
            Mode::Addition => g.with_edges_added(&v),
            Mode::Deletion => g.with_edges_removed(&v),
        })
    }

    /// "OPT t" followed by sorted pairs.
    pub fn to_output(&self) -> String {
        let mut s = format!("OPT {}\n", self.len());
        for (u, v) in self.pairs() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for CompletionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.mode, self.pairs)
    }
}

/// Output for an optional solution: the pairs, or "NO".
pub fn format_solution(s: Option<&CompletionSet>) -> String {
    match s {
        Some(s) => s.to_output(),
        None => "NO\n".to_string(),
    }
}

/// Parses the solver output grammar back.
pub fn parse_solution(text: &str, mode: Mode) -> Result<Option<CompletionSet>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let first = lines.next().ok_or(Error::Parse { line: 1, msg: "empty output".into() })?;
    if first.trim() == "NO" {
        return Ok(None);
    }
    let t: usize = first
        .trim()
        .strip_prefix("OPT ")
        .and_then(|x| x.trim().parse().ok())
        .ok_or(Error::Parse { line: 1, msg: format!("expected OPT t or NO, got {first:?}") })?;
    let mut s = CompletionSet::new(mode);
    for (i, l) in lines.enumerate() {
        let nums: Vec<usize> = l.split_whitespace().filter_map(|x| x.parse().ok()).collect();
        if nums.len() != 2 || nums[0] >= nums[1] {
            return Err(Error::Parse { line: i + 2, msg: format!("bad pair line {l:?}") });
        }
        s.insert(nums[0], nums[1]);
    }
    if s.len() != t {
        return Err(Error::Parse { line: 1, msg: format!("OPT {t} but {} pairs", s.len()) });
    }
    Ok(Some(s))
}
