//! Block family S built from triples of candidate sets.

use std::collections::HashSet;

use super::{enumerate::CandidateFamily, Local, MaskSet, TpConfig};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::par;

/// Pairs (X, Y) with X ⊆ Y and G[Y] connected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFamily {
    n: usize,
    pairs: Vec<(VertexSet, VertexSet)>,
}

impl BlockFamily {
    pub fn new(n: usize, mut pairs: Vec<(VertexSet, VertexSet)>) -> Self {
        pairs.sort();
        pairs.dedup();
        BlockFamily { n, pairs }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: &VertexSet, y: &VertexSet) -> bool {
        self.pairs.binary_search_by(|(a, b)| a.cmp(x).then_with(|| b.cmp(y))).is_ok()
    }

    pub fn pairs(&self) -> &[(VertexSet, VertexSet)] {
        &self.pairs
    }
}

/// Leaf shape Ω1 \ Ω2, root shape (Ω1 ∩ Ω2, component) and internal shape
/// (Q \ Ω3, component of G − (Q \ B) containing B) with Q = Ω1 ∩ Ω2.
pub(crate) fn blocks_local(l: &Local, fam: &[u64], cfg: &TpConfig) -> Result<Vec<(u64, u64)>> {
    let full = l.full();
    let mut qs = MaskSet::new(l.n);
    let mut leaves = MaskSet::new(l.n);
    for (i, &a) in fam.iter().enumerate() {
        for (j, &b) in fam.iter().enumerate() {
            if j >= i {
                let q = a & b;
                if q != 0 {
                    qs.insert(q);
                }
            }
            let d = a & !b;
            if d != 0 {
                leaves.insert(d);
            }
        }
    }
    let mut out: HashSet<(u64, u64)> = HashSet::new();
    for b in leaves.into_vec() {
        if l.is_connected(b) {
            out.insert((b, b));
        }
    }
    let qs = qs.into_vec();
    let internal = par::map(cfg.exec, &qs, |&q| {
        let mut found = Vec::new();
        let lowq = q & q.wrapping_neg();
        let root = l.reach(lowq, full);
        if q & !root == 0 {
            found.push((q, root));
        }
        let mut seen = MaskSet::new(l.n);
        for &o3 in fam {
            let b = q & !o3;
            if b == 0 || !seen.insert(b) {
                continue;
            }
            let removed = q & !b;
            let d = l.reach(b & b.wrapping_neg(), full & !removed);
            if b & !d == 0 {
                found.push((b, d));
            }
        }
        found
    });
    for v in internal {
        out.extend(v);
        if out.len() > cfg.max_blocks {
            return Err(Error::Cap { what: "block family", size: out.len(), cap: cfg.max_blocks });
        }
    }
    let mut v: Vec<_> = out.into_iter().collect();
    v.sort_by_key(|&(x, y)| (y.count_ones(), y, x));
    Ok(v)
}

pub fn build_blocks(c: &CandidateFamily, g: &Graph, _k: usize) -> Result<BlockFamily> {
    build_blocks_with(c, g, &TpConfig::default())
}

pub fn build_blocks_with(c: &CandidateFamily, g: &Graph, cfg: &TpConfig) -> Result<BlockFamily> {
    let l = Local::new(g)?;
    let fam: Vec<u64> = c.iter().map(|s| s.to_mask()).collect();
    let pairs = blocks_local(&l, &fam, cfg)?;
    Ok(BlockFamily::new(g.n(), pairs.into_iter().map(|(x, y)| (l.to_set(x), l.to_set(y))).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognition::{blocks_of, build_ucd};
    use crate::tp::enumerate_vital_pmcs;

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, v.iter().copied())
    }

    #[test]
    fn complete_graph_has_root_block() {
        let g = Graph::complete(4);
        let c = enumerate_vital_pmcs(&g, 0).unwrap();
        let s = build_blocks(&c, &g, 0).unwrap();
        assert!(s.contains(&g.vertices(), &g.vertices()));
    }

    #[test]
    fn c4_root_shape() {
        let g = Graph::cycle(4);
        let c = enumerate_vital_pmcs(&g, 1).unwrap();
        let s = build_blocks(&c, &g, 1).unwrap();
        assert!(s.contains(&set(4, &[0, 2]), &g.vertices()));
        assert!(s.pairs().iter().all(|(x, y)| x.is_subset(y) && g.is_connected_set(y)));
    }

    #[test]
    fn figure_blocks_are_covered() {
        let e = [
            (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7),
            (3, 5), (4, 5), (3, 6), (6, 7), (7, 4), (4, 3), (3, 7), (4, 6),
        ];
        let g = Graph::from_edges(8, &e).unwrap();
        for k in 0..=2 {
            let c = enumerate_vital_pmcs(&g, k).unwrap();
            let s = build_blocks(&c, &g, k).unwrap();
            for b in blocks_of(&build_ucd(&g).unwrap()) {
                assert!(s.contains(&b.bag, &b.subtree), "{b:?}");
            }
        }
    }
}
