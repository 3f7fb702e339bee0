//! Exact reference solvers: bounded search trees, chain completion by subset
//! DP, split completion and a minimal-completion enumerator.

use std::collections::HashSet;

use crate::completion::{CompletionSet, Mode};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::pattern::{find_any, find_constrained, is_f_free, Pattern};
use crate::recognition::check_bipartition;

pub const SPLIT_FAMILY: [Pattern; 3] = [Pattern::TwoK2, Pattern::C4, Pattern::C5];

/// Budget k with saturation at k + 1 standing for infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub k: usize,
}

impl SearchBudget {
    pub fn new(k: usize) -> Self {
        SearchBudget { k }
    }

    pub fn infinity(self) -> usize {
        self.k + 1
    }

    pub fn sat(self, x: usize) -> usize {
        x.min(self.k + 1)
    }

    pub fn add(self, a: usize, b: usize) -> usize {
        self.sat(a.saturating_add(b))
    }

    pub fn fits(self, x: usize) -> bool {
        x <= self.k
    }
}

fn check_family(family: &[Pattern], mode: Mode) -> Result<()> {
    if family.is_empty() {
        return Err(Error::Contract("empty pattern family".into()));
    }
    for p in family {
        let ok = match mode {
            Mode::Addition => p.non_edge_count() > 0,
            Mode::Deletion => !p.edges().is_empty(),
        };
        if !ok {
            return Err(Error::Contract(format!("{p} cannot be destroyed in {mode} mode")));
        }
    }
    Ok(())
}

/// Pairs of the occurrence that the search may modify.
fn branch_pairs(p: Pattern, t: &[usize], mode: Mode) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if p.has_role_edge(i, j) == (mode == Mode::Deletion) {
                out.push((t[i].min(t[j]), t[i].max(t[j])));
            }
        }
    }
    out
}

fn modify(g: &Graph, pair: (usize, usize), mode: Mode) -> Graph {
    match mode {
        Mode::Addition => g.with_edges_added(&[pair]),
        Mode::Deletion => g.with_edges_removed(&[pair]),
    }
}

/// Number of obstructions found greedily that share no modifiable pair.
fn packing_bound(g: &Graph, family: &[Pattern], mode: Mode, stop: usize) -> usize {
    let mut used = g.clone();
    let mut count = 0;
    loop {
        let found = family.iter().find_map(|&p| {
            let t = match mode {
                Mode::Addition => find_constrained(g, &used, p),
                Mode::Deletion => find_constrained(&used, g, p),
            }?;
            Some((p, t))
        });
        let Some((p, t)) = found else { return count };
        count += 1;
        if count > stop {
            return count;
        }
        let pairs = branch_pairs(p, &t, mode);
        used = match mode {
            Mode::Addition => used.with_edges_added(&pairs),
            Mode::Deletion => used.with_edges_removed(&pairs),
        };
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
}

fn dfs(
    g: &Graph,
    family: &[Pattern],
    budget: usize,
    mode: Mode,
    acc: &mut Vec<(usize, usize)>,
    stats: &mut SearchStats,
) -> bool {
    stats.nodes += 1;
    let Some((p, t)) = find_any(g, family) else { return true };
    if budget == 0 {
        return false;
    }
    if budget >= 2 && packing_bound(g, family, mode, budget) > budget {
        return false;
    }
    for pair in branch_pairs(p, &t, mode) {
        acc.push(pair);
        if dfs(&modify(g, pair, mode), family, budget - 1, mode, acc, stats) {
            return true;
        }
        acc.pop();
    }
    false
}

/// Some solution of size at most `k`, not necessarily minimum.
pub fn decide_completion(g: &Graph, family: &[Pattern], k: usize, mode: Mode) -> Result<Option<CompletionSet>> {
    check_family(family, mode)?;
    let mut acc = Vec::new();
    let mut stats = SearchStats::default();
    Ok(dfs(g, family, k, mode, &mut acc, &mut stats).then(|| CompletionSet::from_pairs(mode, acc)))
}

/// Minimum-size solution within budget `k`, by iterating the budget upward.
pub fn exact_completion(g: &Graph, family: &[Pattern], k: usize, mode: Mode) -> Result<Option<CompletionSet>> {
    exact_completion_with_stats(g, family, k, mode).map(|(s, _)| s)
}

pub fn exact_completion_with_stats(
    g: &Graph,
    family: &[Pattern],
    k: usize,
    mode: Mode,
) -> Result<(Option<CompletionSet>, SearchStats)> {
    check_family(family, mode)?;
    let mut stats = SearchStats::default();
    for budget in 0..=k {
        let mut acc = Vec::new();
        if dfs(g, family, budget, mode, &mut acc, &mut stats) {
            return Ok((Some(CompletionSet::from_pairs(mode, acc)), stats));
        }
    }
    Ok((None, stats))
}

pub fn exact_split_completion(g: &Graph, k: usize) -> Result<Option<CompletionSet>> {
    exact_completion(g, &SPLIT_FAMILY, k, Mode::Addition)
}

/// Largest number of distinct neighborhoods handled by the chain DP.
pub const CHAIN_DP_LIMIT: usize = 22;

/// Minimum additions making the given neighborhoods nested. Returns the cost
/// and, per input index, the final neighborhood.
pub(crate) fn chain_dp(nbrs: &[VertexSet], k: usize) -> Result<Option<(usize, Vec<VertexSet>)>> {
    // Identical neighborhoods can sit next to each other in an optimal order,
    // so group them and charge by multiplicity. Empty ones cost nothing.
    let mut groups: Vec<(VertexSet, Vec<usize>)> = Vec::new();
    for (i, nb) in nbrs.iter().enumerate() {
        if nb.is_empty() {
            continue;
        }
        match groups.iter_mut().find(|(s, _)| s == nb) {
            Some((_, members)) => members.push(i),
            None => groups.push((nb.clone(), vec![i])),
        }
    }
    let m = groups.len();
    if m > CHAIN_DP_LIMIT {
        return Err(Error::Cap { what: "chain DP side", size: m, cap: CHAIN_DP_LIMIT });
    }
    let inf = k + 1;
    let full = 1usize << m;
    let mut union_len = vec![0usize; full];
    let mut unions: Vec<VertexSet> = Vec::with_capacity(if m <= 16 { full } else { 0 });
    if m <= 16 {
        unions.push(match groups.first() {
            Some((s, _)) => VertexSet::new(s.universe()),
            None => VertexSet::new(0),
        });
        for s in 1..full {
            let low = s.trailing_zeros() as usize;
            let u = unions[s & (s - 1)].union(&groups[low].0);
            union_len[s] = u.len();
            unions.push(u);
        }
    } else {
        for (s, ul) in union_len.iter_mut().enumerate().skip(1) {
            let mut u = VertexSet::new(groups[0].0.universe());
            for (j, (g, _)) in groups.iter().enumerate() {
                if s >> j & 1 == 1 {
                    u.union_with(g);
                }
            }
            *ul = u.len();
        }
    }
    let mut f = vec![inf; full];
    let mut choice = vec![u8::MAX; full];
    f[0] = 0;
    for s in 1..full {
        let mut bits = s;
        while bits != 0 {
            let a = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let prev = f[s & !(1 << a)];
            if prev >= inf {
                continue;
            }
            let step = (union_len[s] - groups[a].0.len()) * groups[a].1.len();
            let c = (prev + step).min(inf);
            if c < f[s] {
                f[s] = c;
                choice[s] = a as u8;
            }
        }
    }
    if f[full - 1] > k {
        return Ok(None);
    }
    // retrace: the last element chosen for S gets the union of S
    let mut out: Vec<VertexSet> = nbrs.to_vec();
    let mut s = full - 1;
    while s != 0 {
        let a = choice[s] as usize;
        let mut u = VertexSet::new(groups[a].0.universe());
        for (j, (g, _)) in groups.iter().enumerate() {
            if s >> j & 1 == 1 {
                u.union_with(g);
            }
        }
        for &i in &groups[a].1 {
            out[i] = u.clone();
        }
        s &= !(1 << a);
    }
    Ok(Some((f[full - 1], out)))
}

/// Minimum additions between the sides making A-side neighborhoods nested.
pub fn exact_chain_completion(
    a_side: &VertexSet,
    b_side: &VertexSet,
    g: &Graph,
    k: usize,
) -> Result<Option<CompletionSet>> {
    check_bipartition(a_side, b_side, g)?;
    let av = a_side.to_vec();
    let nbrs: Vec<VertexSet> = av.iter().map(|&a| g.neighbors(a).clone()).collect();
    let Some((_, finals)) = chain_dp(&nbrs, k)? else { return Ok(None) };
    let mut s = CompletionSet::new(Mode::Addition);
    for (i, &a) in av.iter().enumerate() {
        for b in finals[i].difference(&nbrs[i]).iter() {
            s.insert(a, b);
        }
    }
    Ok(Some(s))
}

/// Non-edge limit for [`enumerate_minimal_completions`] without override.
pub const MINIMAL_ENUM_GUARD: usize = 24;

/// All inclusion-minimal F-free completion sets of size at most `k`.
pub fn enumerate_minimal_completions(
    g: &Graph,
    family: &[Pattern],
    k: usize,
    allow_large: bool,
) -> Result<Vec<CompletionSet>> {
    check_family(family, Mode::Addition)?;
    let ne = g.non_edges();
    if ne.len() > MINIMAL_ENUM_GUARD && !allow_large {
        return Err(Error::Cap { what: "non-edges for minimal completion scan", size: ne.len(), cap: MINIMAL_ENUM_GUARD });
    }
    if ne.len() > 63 {
        return Err(Error::Cap { what: "non-edges for minimal completion scan", size: ne.len(), cap: 63 });
    }
    let mut working: HashSet<u64> = HashSet::new();
    let mut by_size: Vec<u64> = Vec::new();
    for size in 0..=k.min(ne.len()) {
        for_each_combination(ne.len(), size, &mut |mask| {
            let pairs: Vec<_> = (0..ne.len()).filter(|&i| mask >> i & 1 == 1).map(|i| ne[i]).collect();
            if is_f_free(&g.with_edges_added(&pairs), family) {
                working.insert(mask);
                by_size.push(mask);
            }
        });
    }
    let mut out = Vec::new();
    for &mask in &by_size {
        let mut minimal = true;
        if mask != 0 {
            let mut sub = (mask - 1) & mask;
            loop {
                if working.contains(&sub) {
                    minimal = false;
                    break;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        if minimal {
            out.push(CompletionSet::from_pairs(
                Mode::Addition,
                (0..ne.len()).filter(|&i| mask >> i & 1 == 1).map(|i| ne[i]),
            ));
        }
    }
    Ok(out)
}

/// Calls `f` on every `size`-subset of `0..n` (n < 64) as a bitmask, in increasing order.
pub fn for_each_combination(n: usize, size: usize, f: &mut dyn FnMut(u64)) {
    assert!(n < 64);
    if size > n {
        return;
    }
    if size == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << n;
    let mut c: u64 = (1u64 << size) - 1;
    while c < limit {
        f(c);
        let t = c | (c - 1);
        c = (t + 1) | (((!t & (t + 1)) - 1) >> (c.trailing_zeros() + 1));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::labeled_graphs;
    use crate::recognition::is_chain;

    const TP: [Pattern; 2] = [Pattern::C4, Pattern::P4];

    fn opt(g: &Graph, fam: &[Pattern], k: usize) -> Option<usize> {
        exact_completion(g, fam, k, Mode::Addition).unwrap().map(|s| s.len())
    }

    #[test]
    fn examples() {
        assert_eq!(opt(&Graph::cycle(4), &TP, 1), Some(1));
        assert_eq!(opt(&Graph::path(4), &TP, 1), Some(1));
        assert_eq!(opt(&Graph::cycle(5), &SPLIT_FAMILY, 2), Some(2));
        assert_eq!(opt(&Graph::cycle(5), &SPLIT_FAMILY, 1), None);
        assert_eq!(opt(&Graph::complete(4), &TP, 0), Some(0));
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(exact_split_completion(&two_k2, 1).unwrap().map(|s| s.len()), Some(1));
        assert!(exact_completion(&two_k2, &[], 1, Mode::Addition).is_err());
        assert!(exact_completion(&two_k2, &[Pattern::CoP3], 1, Mode::Addition).is_ok());
    }

    #[test]
    fn combinations_count() {
        let mut c = 0;
        for_each_combination(10, 3, &mut |_| c += 1);
        assert_eq!(c, 120);
        let mut c = 0;
        for_each_combination(5, 5, &mut |m| {
            assert_eq!(m, 31);
            c += 1
        });
        assert_eq!(c, 1);
    }

    fn scan_optimum(g: &Graph, fam: &[Pattern]) -> usize {
        let ne = g.non_edges();
        let mut best = usize::MAX;
        for mask in 0u64..1 << ne.len() {
            let c = mask.count_ones() as usize;
            if c >= best {
                continue;
            }
            let pairs: Vec<_> = (0..ne.len()).filter(|&i| mask >> i & 1 == 1).map(|i| ne[i]).collect();
            if is_f_free(&g.with_edges_added(&pairs), fam) {
                best = c;
            }
        }
        best
    }

    #[test]
    fn oracle_matches_subset_scan() {
        let families: [&[Pattern]; 4] = [
            &TP,
            &[Pattern::TwoK2, Pattern::C4, Pattern::P4],
            &[Pattern::TwoK2, Pattern::C4],
            &SPLIT_FAMILY,
        ];
        for n in 1..=5 {
            for g in labeled_graphs(n) {
                for fam in families {
                    let best = scan_optimum(&g, fam);
                    let got = exact_completion(&g, fam, 10, Mode::Addition).unwrap().unwrap();
                    assert_eq!(got.len(), best, "{g:?} {fam:?}");
                    assert!(is_f_free(&got.apply(&g).unwrap(), fam));
                }
            }
        }
    }

    #[test]
    fn deletion_mode_is_complement_of_addition() {
        for g in labeled_graphs(5).step_by(7) {
            let del = exact_completion(&g, &[Pattern::C4], 10, Mode::Deletion).unwrap().unwrap();
            let add = exact_completion(&g.complement(), &[Pattern::TwoK2], 10, Mode::Addition).unwrap().unwrap();
            assert_eq!(del.len(), add.len());
            assert!(is_f_free(&del.apply(&g).unwrap(), &[Pattern::C4]));
        }
    }

    #[test]
    fn chain_examples() {
        let a = VertexSet::from_iter(4, [0, 1]);
        let b = VertexSet::from_iter(4, [2, 3]);
        let two_k2 = Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(exact_chain_completion(&a, &b, &two_k2, 3).unwrap().unwrap().len(), 1);
        let k22 = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(exact_chain_completion(&a, &b, &k22, 0).unwrap().unwrap().len(), 0);
        assert_eq!(exact_chain_completion(&a, &b, &two_k2, 0).unwrap(), None);
        assert!(exact_chain_completion(&a, &a, &two_k2, 0).is_err());
    }

    /// Brute force over all subsets of cross non-edges.
    pub(crate) fn chain_brute(a: &VertexSet, b: &VertexSet, g: &Graph) -> usize {
        let cross: Vec<_> = a.iter().flat_map(|u| b.iter().map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
        let mut best = usize::MAX;
        for mask in 0u64..1 << cross.len() {
            let c = mask.count_ones() as usize;
            if c >= best {
                continue;
            }
            let add: Vec<_> = (0..cross.len()).filter(|&i| mask >> i & 1 == 1).map(|i| cross[i]).collect();
            if is_chain(a, b, &g.with_edges_added(&add)).unwrap() {
                best = c;
            }
        }
        best
    }

    #[test]
    fn chain_dp_matches_brute_force_small() {
        for na in 1..=3 {
            for nb in 1..=3 {
                let n = na + nb;
                let a = VertexSet::from_iter(n, 0..na);
                let b = VertexSet::from_iter(n, na..n);
                for mask in 0u64..1 << (na * nb) {
                    let e: Vec<_> =
                        (0..na * nb).filter(|&i| mask >> i & 1 == 1).map(|i| (i / nb, na + i % nb)).collect();
                    let g = Graph::from_edges(n, &e).unwrap();
                    let s = exact_chain_completion(&a, &b, &g, 20).unwrap().unwrap();
                    assert_eq!(s.len(), chain_brute(&a, &b, &g));
                    assert!(is_chain(&a, &b, &s.apply(&g).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn minimal_completion_examples() {
        let c4 = enumerate_minimal_completions(&Graph::cycle(4), &TP, 1, false).unwrap();
        let sets: Vec<_> = c4.iter().map(|s| s.to_vec()).collect();
        assert_eq!(sets, vec![vec![(0, 2)], vec![(1, 3)]]);
        let tp = enumerate_minimal_completions(&Graph::path(3), &TP, 3, false).unwrap();
        assert_eq!(tp, vec![CompletionSet::new(Mode::Addition)]);
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let th = enumerate_minimal_completions(&two_k2, &[Pattern::TwoK2, Pattern::C4, Pattern::P4], 2, false).unwrap();
        assert!(th.iter().all(|s| s.len() == 2));
        assert!(th.contains(&CompletionSet::from_pairs(Mode::Addition, [(0, 2), (0, 3)])));
        assert!(enumerate_minimal_completions(&Graph::empty(8), &TP, 1, false).is_err());
    }
}
