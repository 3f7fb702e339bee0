//! Trivially perfect completion: kernel, vital PMC enumeration, block
//! family and the dpt dynamic program.

mod blocks;
mod dp;
mod enumerate;
mod fill;
mod kernel;

use std::collections::HashSet;
use std::fmt;
use std::time::Instant;

pub use blocks::{build_blocks, BlockFamily};
pub use dp::{dp_solve, DpSolution, DpTable};
pub use enumerate::{
    enumerate_type1, enumerate_type2, enumerate_type3, enumerate_type4, enumerate_vital_pmcs, CandidateFamily,
    EnumerationChoice, Provenance,
};
pub use fill::FillProfile;
pub use kernel::{kernelize, ComponentKernel, Kernel, Kernelizer, SubInstance};

use crate::completion::CompletionSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::par::Exec;
use crate::recognition::is_trivially_perfect;

/// ⌈√k⌉.
pub fn ceil_sqrt(k: usize) -> usize {
    let mut s = (k as f64).sqrt() as usize;
    while s * s < k {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= k {
        s -= 1;
    }
    s
}

#[derive(Clone, Debug)]
pub struct TpConfig {
    pub exec: Exec,
    /// Cap on |small sets|², the number of (W2, W3) choice pairs.
    pub max_choice_pairs: usize,
    pub max_candidates: usize,
    pub max_blocks: usize,
}

impl Default for TpConfig {
    fn default() -> Self {
        TpConfig { exec: Exec::default(), max_choice_pairs: 50_000_000, max_candidates: 2_000_000, max_blocks: 5_000_000 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TpStats {
    pub c1: usize,
    pub c2: usize,
    pub c3: usize,
    pub c4: usize,
    pub c: usize,
    pub s: usize,
    pub dp_entries: usize,
    pub components: usize,
    pub wall_ms: u128,
}

impl fmt::Display for TpStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "components={}", self.components)?;
        writeln!(f, "c1={}", self.c1)?;
        writeln!(f, "c2={}", self.c2)?;
        writeln!(f, "c3={}", self.c3)?;
        writeln!(f, "c4={}", self.c4)?;
        writeln!(f, "c={}", self.c)?;
        writeln!(f, "s={}", self.s)?;
        writeln!(f, "dp_entries={}", self.dp_entries)?;
        write!(f, "wall_ms={}", self.wall_ms)
    }
}

pub fn tp_complete(g: &Graph, k: usize) -> Result<Option<CompletionSet>> {
    tp_complete_with(g, k, &TpConfig::default()).map(|(s, _)| s)
}

/// Kernel, then per component: enumeration, blocks and DP. The output is
/// checked with the recognizer before it is returned.
pub fn tp_complete_with(g: &Graph, k: usize, cfg: &TpConfig) -> Result<(Option<CompletionSet>, TpStats)> {
    let start = Instant::now();
    let kernel = kernelize(g, k);
    let mut stats = TpStats { components: kernel.parts.len(), ..TpStats::default() };
    let mut total = CompletionSet::new(crate::Mode::Addition);
    let mut left = kernel.k;
    for part in &kernel.parts {
        let local = Local::new(&part.graph)?;
        let fam = enumerate::vital_local(&local, left, cfg, Some(&mut stats))?;
        let fam: Vec<u64> = fam.into_iter().map(|(m, _)| m).collect();
        let pairs = blocks::blocks_local(&local, &fam, cfg)?;
        stats.s += pairs.len();
        let sol = dp::dp_local(&local, &pairs, left);
        stats.dp_entries += sol.entries;
        let Some((cost, edges)) = sol.best else {
            stats.wall_ms = start.elapsed().as_millis();
            return Ok((None, stats));
        };
        left -= cost;
        for (u, v) in edges {
            total.insert(part.back[u], part.back[v]);
        }
    }
    stats.wall_ms = start.elapsed().as_millis();
    let h = total.apply(g)?;
    if !is_trivially_perfect(&h) {
        return Err(Error::Contract("dp reconstruction is not trivially perfect".into()));
    }
    Ok((Some(total), stats))
}

/// Largest component handled by the mask-based enumeration.
pub const MAX_LOCAL: usize = 63;

/// A graph of at most [`MAX_LOCAL`] vertices with mask adjacency.
#[derive(Clone, Debug)]
pub(crate) struct Local {
    pub n: usize,
    pub adj: Vec<u64>,
}

impl Local {
    pub fn new(g: &Graph) -> Result<Local> {
        if g.n() > MAX_LOCAL {
            return Err(Error::Cap { what: "component size for mask enumeration", size: g.n(), cap: MAX_LOCAL });
        }
        Ok(Local { n: g.n(), adj: (0..g.n()).map(|v| g.neighbors(v).to_mask()).collect() })
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    #[inline]
    pub fn union_adj(&self, mut w: u64) -> u64 {
        let mut u = 0;
        while w != 0 {
            u |= self.adj[w.trailing_zeros() as usize];
            w &= w - 1;
        }
        u
    }

    #[inline]
    pub fn edges_within(&self, x: u64) -> u32 {
        let mut w = x;
        let mut d = 0;
        while w != 0 {
            d += (self.adj[w.trailing_zeros() as usize] & x).count_ones();
            w &= w - 1;
        }
        d / 2
    }

    #[inline]
    pub fn non_edges(&self, x: u64) -> u32 {
        let c = x.count_ones();
        c * c.saturating_sub(1) / 2 - self.edges_within(x)
    }

    pub fn edges_between(&self, x: u64, y: u64) -> u32 {
        let mut w = x;
        let mut d = 0;
        while w != 0 {
            d += (self.adj[w.trailing_zeros() as usize] & y).count_ones();
            w &= w - 1;
        }
        d
    }

    /// Vertices reachable from `from` inside `within`.
    pub fn reach(&self, from: u64, within: u64) -> u64 {
        let mut seen = from & within;
        let mut frontier = seen;
        while frontier != 0 {
            let next = self.union_adj(frontier) & within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn components(&self, within: u64) -> Vec<u64> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.reach(rest & rest.wrapping_neg(), rest);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn is_connected(&self, x: u64) -> bool {
        x == 0 || self.reach(x & x.wrapping_neg(), x) == x
    }

    pub fn to_set(&self, m: u64) -> VertexSet {
        VertexSet::from_mask(self.n, m)
    }
}

/// Subsets of `0..n` with at most `max` elements, by size then value.
pub(crate) fn small_sets(n: usize, max: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for size in 0..=max.min(n) {
        crate::oracle::for_each_combination(n, size, &mut |m| out.push(m));
    }
    out
}

/// Deduplicating set of masks: a dense bitmap for small universes.
pub(crate) struct MaskSet {
    dense: Option<Vec<u64>>,
    sparse: HashSet<u64>,
    items: Vec<u64>,
}

impl MaskSet {
    pub fn new(n: usize) -> Self {
        let dense = (n <= 16).then(|| vec![0u64; ((1usize << n) / 64).max(1)]);
        MaskSet { dense, sparse: HashSet::new(), items: Vec::new() }
    }

    pub fn insert(&mut self, m: u64) -> bool {
        let fresh = match &mut self.dense {
            Some(bits) => {
                let (w, b) = ((m >> 6) as usize, m & 63);
                let fresh = bits[w] >> b & 1 == 0;
                bits[w] |= 1 << b;
                fresh
            }
            None => self.sparse.insert(m),
        };
        if fresh {
            self.items.push(m);
        }
        fresh
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.items
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::labeled_graphs;
    use crate::oracle::exact_completion;
    use crate::pattern::Pattern;
    use crate::Mode;

    #[test]
    fn sqrt_rounding() {
        let v: Vec<_> = (0..10).map(ceil_sqrt).collect();
        assert_eq!(v, vec![0, 1, 2, 2, 2, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn examples() {
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(tp_complete(&two_k2, 0).unwrap().unwrap().len(), 0);
        assert_eq!(tp_complete(&Graph::path(4), 1).unwrap().unwrap().len(), 1);
        assert_eq!(tp_complete(&Graph::path(4), 0).unwrap(), None);
        let c4c4 = Graph::cycle(4).disjoint_union(&Graph::cycle(4));
        assert_eq!(tp_complete(&c4c4, 2).unwrap().unwrap().len(), 2);
        assert_eq!(tp_complete(&c4c4, 1).unwrap(), None);
        assert_eq!(tp_complete(&Graph::complete(5), 3).unwrap().unwrap().len(), 0);
    }

    #[test]
    fn matches_oracle_on_small_graphs() {
        for n in 1..=5 {
            for g in labeled_graphs(n) {
                let want = exact_completion(&g, &[Pattern::C4, Pattern::P4], 4, Mode::Addition).unwrap();
                let got = tp_complete(&g, 4).unwrap();
                assert_eq!(got.as_ref().map(|s| s.len()), want.map(|s| s.len()), "{g:?}");
            }
        }
    }

    #[test]
    fn local_helpers() {
        let l = Local::new(&Graph::cycle(5)).unwrap();
        assert_eq!(l.union_adj(0b1), 0b10010);
        assert_eq!(l.non_edges(0b11111), 5);
        assert_eq!(l.components(0b10101).len(), 2);
        assert!(l.is_connected(0b00111));
        let mut s = MaskSet::new(5);
        assert!(s.insert(3) && !s.insert(3) && s.insert(0));
        assert_eq!(s.into_vec(), vec![3, 0]);
        assert_eq!(small_sets(4, 2).len(), 11);
    }
}
