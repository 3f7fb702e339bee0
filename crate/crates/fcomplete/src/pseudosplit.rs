//! Pseudosplit completion: try split completion, otherwise guess the 5-set
//! that becomes the C5, make it a clique, force it into the clique side with
//! a set A of fresh vertices and solve split completion on the result.

use std::fmt;

use crate::completion::{CompletionSet, Mode};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{decide_completion, exact_split_completion, for_each_combination, SearchBudget, SPLIT_FAMILY};
use crate::par::{self, Exec};
use crate::pattern::is_f_free;
use crate::recognition::{enumerate_split_partitions, is_pseudosplit, SplitPartition};

/// The 12 labelings of a 5-cycle on positions 0..5, as cyclic orders.
fn c5_orders() -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    let rest = [1, 2, 3, 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [rest[a], rest[b], rest[c], rest[d]];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    // one of each mirror pair
                    if distinct && p[0] < p[3] {
                        out.push([0, p[0], p[1], p[2], p[3]]);
                    }
                }
            }
        }
    }
    out
}

/// Edges of the first C5 labeling containing G[X], as host pairs.
fn c5_supergraph(g: &Graph, x: &[usize]) -> Option<Vec<(usize, usize)>> {
    c5_orders().into_iter().find_map(|o| {
        let cyc: Vec<(usize, usize)> = (0..5)
            .map(|i| {
                let (u, v) = (x[o[i]], x[o[(i + 1) % 5]]);
                (u.min(v), u.max(v))
            })
            .collect();
        let fits = (0..5).all(|i| (i + 1..5).all(|j| !g.has_edge(x[i], x[j]) || cyc.contains(&(x[i], x[j]))));
        fits.then_some(cyc)
    })
}

pub fn is_c5_seed(g: &Graph, x: &VertexSet) -> bool {
    x.len() == 5 && c5_supergraph(g, &x.to_vec()).is_some()
}

/// All 5-sets X such that G[X] is a subgraph of some C5, in lexicographic order.
pub fn enumerate_c5_seeds(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut out = Vec::new();
    if n < 5 {
        return out;
    }
    let mut pick = |x: Vec<usize>| {
        if c5_supergraph(g, &x).is_some() {
            out.push(VertexSet::from_iter(n, x));
        }
    };
    if n < 64 {
        for_each_combination(n, 5, &mut |m| pick((0..n).filter(|&i| m >> i & 1 == 1).collect()));
    } else {
        let mut idx = [0, 1, 2, 3, 4];
        loop {
            pick(idx.to_vec());
            let mut i = 5;
            while i > 0 && idx[i - 1] == n - 5 + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..5 {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedInstance {
    pub graph: Graph,
    pub budget: SearchBudget,
    pub x: VertexSet,
    /// The k+2 forcing vertices, ids n..n+k+2 of `graph`.
    pub a: VertexSet,
    /// Vertex count of the original graph.
    pub n: usize,
}

/// G with X turned into a clique plus k+2 independent vertices adjacent to
/// exactly N_G[X]; budget k + |E(G[X])| − 5.
pub fn build_augmented_instance(g: &Graph, k: usize, x: &VertexSet) -> Result<AugmentedInstance> {
    if x.universe() != g.n() || !is_c5_seed(g, x) {
        return Err(Error::Refused("X is not a C5 seed".into()));
    }
    let e = g.edges_within(x);
    if k + e < 5 {
        return Err(Error::Refused(format!("budget {k} cannot pay for the {} missing C5 edges", 5 - e)));
    }
    let n = g.n();
    let xs = x.to_vec();
    let mut add = Vec::new();
    for (i, &u) in xs.iter().enumerate() {
        for &v in &xs[i + 1..] {
            add.push((u, v));
        }
    }
    for u in g.closed_neighborhood(x).iter() {
        for a in n..n + k + 2 {
            add.push((u, a));
        }
    }
    let graph = g.with_vertices(k + 2).with_edges_added(&add);
    Ok(AugmentedInstance {
        graph,
        budget: SearchBudget::new(k + e - 5),
        x: VertexSet::from_iter(n + k + 2, xs),
        a: VertexSet::from_iter(n + k + 2, n..n + k + 2),
        n,
    })
}

/// Drops pairs greedily while the result stays free of `family`.
fn minimalize(g: &Graph, s: &CompletionSet) -> CompletionSet {
    let mut pairs = s.to_vec();
    let mut i = 0;
    while i < pairs.len() {
        let mut rest = pairs.clone();
        rest.remove(i);
        if is_f_free(&g.with_edges_added(&rest), &SPLIT_FAMILY) {
            pairs = rest;
        } else {
            i += 1;
        }
    }
    CompletionSet::from_pairs(Mode::Addition, pairs)
}

/// Split partitions with no clique vertex that could move to the independent side.
pub fn i_maximal_partitions(h: &Graph) -> Vec<SplitPartition> {
    enumerate_split_partitions(h)
        .unwrap_or_default()
        .into_iter()
        .filter(|sp| sp.c.iter().all(|v| !h.neighbors(v).is_disjoint(&sp.i)))
        .collect()
}

/// Names of the structural clauses violated by some I-maximal partition.
pub fn lemma_violations(inst: &AugmentedInstance, s: &CompletionSet) -> Result<Vec<String>> {
    let h = s.apply(&inst.graph)?;
    let nx = {
        let (g0, _) = inst.graph.induced(&VertexSet::from_iter(inst.graph.n(), 0..inst.n));
        let xs = VertexSet::from_iter(inst.n, inst.x.iter());
        VertexSet::from_iter(inst.graph.n(), g0.closed_neighborhood(&xs).iter())
    };
    let mut out = Vec::new();
    let touches_a = s.pairs().any(|(u, v)| inst.a.contains(u) || inst.a.contains(v));
    for sp in i_maximal_partitions(&h) {
        let i_minus_a = sp.i.difference(&inst.a);
        let checks = [
            ("N_G[X] in C", nx.is_subset(&sp.c)),
            ("A in I", inst.a.is_subset(&sp.i)),
            ("S avoids A", !touches_a),
            ("X complete to C-X", sp.c.difference(&inst.x).iter().all(|v| inst.x.is_subset(h.neighbors(v)))),
            ("I-A anticomplete to X", i_minus_a.iter().all(|v| h.neighbors(v).is_disjoint(&inst.x))),
        ];
        for (name, ok) in checks {
            if !ok {
                out.push(format!("{name} fails for C={:?}", sp.c.to_vec()));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PseudosplitConfig {
    pub exec: Exec,
    /// Check the structural clauses on every augmented solution found.
    pub check_lemma: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PseudosplitReport {
    pub solution: Option<CompletionSet>,
    /// The seed used, when the answer did not come from split completion.
    pub seed: Option<VertexSet>,
    pub seeds: usize,
    pub augmented_solves: usize,
    pub lemma_checks: usize,
    pub lemma_violations: Vec<String>,
}

impl fmt::Display for PseudosplitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seeds={}", self.seeds)?;
        writeln!(f, "augmented_solves={}", self.augmented_solves)?;
        match &self.seed {
            Some(x) => writeln!(f, "via=seed {:?}", x.to_vec())?,
            None => writeln!(f, "via=split")?,
        }
        writeln!(f, "lemma_checks={}", self.lemma_checks)?;
        writeln!(f, "lemma_violations={}", self.lemma_violations.len())
    }
}

struct SeedHit {
    s0: CompletionSet,
    x: VertexSet,
    violations: Vec<String>,
}

/// Algorithm 1 at budget `b` for one seed.
fn try_seed(g: &Graph, b: usize, x: &VertexSet, check: bool) -> Result<Option<SeedHit>> {
    let inst = build_augmented_instance(g, b, x)?;
    let Some(s) = decide_completion(&inst.graph, &SPLIT_FAMILY, inst.budget.k, Mode::Addition)? else {
        return Ok(None);
    };
    let s = minimalize(&inst.graph, &s);
    let violations = if check { lemma_violations(&inst, &s)? } else { Vec::new() };
    let xs = x.to_vec();
    let mut s0 = CompletionSet::new(Mode::Addition);
    for (u, v) in s.pairs() {
        if u < inst.n && v < inst.n {
            s0.insert(u, v);
        }
    }
    for (u, v) in c5_supergraph(g, &xs).expect("seed") {
        if !g.has_edge(u, v) {
            s0.insert(u, v);
        }
    }
    let h = s0.apply(g)?;
    if s0.len() > b || is_pseudosplit(&h).is_none() {
        return Err(Error::Contract(format!("seed {xs:?} gave an invalid pseudosplit completion")));
    }
    Ok(Some(SeedHit { s0, x: x.clone(), violations }))
}

pub fn pseudosplit_complete(g: &Graph, k: usize) -> Result<Option<CompletionSet>> {
    pseudosplit_complete_with(g, k, &PseudosplitConfig::default()).map(|r| r.solution)
}

/// Minimum pseudosplit completion within `k`: the split optimum, or the
/// smallest budget at which some seed succeeds, whichever is lower.
pub fn pseudosplit_complete_with(g: &Graph, k: usize, cfg: &PseudosplitConfig) -> Result<PseudosplitReport> {
    let mut rep = PseudosplitReport::default();
    if is_pseudosplit(g).is_some() {
        rep.solution = Some(CompletionSet::new(Mode::Addition));
        return Ok(rep);
    }
    let split = exact_split_completion(g, k)?;
    let limit = split.as_ref().map_or(k + 1, |s| s.len());
    let seeds = enumerate_c5_seeds(g);
    rep.seeds = seeds.len();
    let edges: Vec<usize> = seeds.iter().map(|x| g.edges_within(x)).collect();
    for b in 0..limit {
        let live: Vec<&VertexSet> = seeds.iter().zip(&edges).filter(|(_, &e)| b + e >= 5).map(|(x, _)| x).collect();
        rep.augmented_solves += live.len();
        if cfg.check_lemma {
            // every seed, so that every augmented solution gets checked
            let hits = par::map(cfg.exec, &live, |x| try_seed(g, b, x, true));
            let mut first = None;
            for h in hits {
                if let Some(h) = h? {
                    rep.lemma_checks += 1;
                    rep.lemma_violations.extend(h.violations.iter().cloned());
                    if first.is_none() {
                        first = Some(h);
                    }
                }
            }
            if let Some(h) = first {
                rep.solution = Some(h.s0);
                rep.seed = Some(h.x);
                return Ok(rep);
            }
        } else {
            let hit = par::find_map_first(cfg.exec, &live, |x| try_seed(g, b, x, false).transpose());
            if let Some(h) = hit {
                let h = h?;
                rep.solution = Some(h.s0);
                rep.seed = Some(h.x);
                return Ok(rep);
            }
        }
    }
    rep.solution = split;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::labeled_graphs;
    use crate::oracle::exact_completion;
    use crate::pattern::Pattern;

    #[test]
    fn c5_orders_are_the_twelve_cycles() {
        let o = c5_orders();
        assert_eq!(o.len(), 12);
        let mut edge_sets: Vec<Vec<(usize, usize)>> = o
            .iter()
            .map(|c| {
                let mut e: Vec<_> = (0..5).map(|i| (c[i].min(c[(i + 1) % 5]), c[i].max(c[(i + 1) % 5]))).collect();
                e.sort();
                e
            })
            .collect();
        edge_sets.sort();
        edge_sets.dedup();
        assert_eq!(edge_sets.len(), 12);
    }

    #[test]
    fn seed_examples() {
        assert_eq!(enumerate_c5_seeds(&Graph::cycle(5)), vec![VertexSet::full(5)]);
        assert!(enumerate_c5_seeds(&Graph::complete(5)).is_empty());
        assert_eq!(enumerate_c5_seeds(&Graph::empty(5)).len(), 1);
        // a star K1,3 plus a vertex does not fit in a cycle
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(enumerate_c5_seeds(&star).is_empty());
    }

    #[test]
    fn augmented_examples() {
        let c5 = Graph::cycle(5);
        let inst = build_augmented_instance(&c5, 2, &VertexSet::full(5)).unwrap();
        assert_eq!(inst.budget.k, 2);
        assert_eq!(inst.graph.n(), 5 + 4);
        assert!(inst.graph.is_clique(&inst.x));
        assert!(inst.graph.is_independent(&inst.a));
        let g = Graph::from_edges(5, &[(0, 1), (1, 2)]).unwrap();
        let inst = build_augmented_instance(&g, 4, &VertexSet::full(5)).unwrap();
        assert_eq!(inst.budget.k, 1);
        for a in inst.a.iter() {
            assert_eq!(inst.graph.neighbors(a), &VertexSet::from_iter(11, 0..5));
        }
        assert!(build_augmented_instance(&Graph::complete(5), 3, &VertexSet::full(5)).is_err());
    }

    #[test]
    fn examples() {
        assert_eq!(pseudosplit_complete(&Graph::cycle(5), 0).unwrap().map(|s| s.len()), Some(0));
        let split = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (1, 4)]).unwrap();
        assert_eq!(pseudosplit_complete(&split, 0).unwrap().map(|s| s.len()), Some(0));
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(pseudosplit_complete(&two_k2, 1).unwrap().map(|s| s.len()), Some(1));
    }

    #[test]
    fn seed_route_is_used() {
        // C5 plus a disjoint edge
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 6)]).unwrap();
        let want = exact_completion(&g, &[Pattern::TwoK2, Pattern::C4], 4, Mode::Addition).unwrap();
        let cfg = PseudosplitConfig { check_lemma: true, ..Default::default() };
        let rep = pseudosplit_complete_with(&g, 4, &cfg).unwrap();
        assert_eq!(rep.solution.map(|s| s.len()), want.map(|s| s.len()));
        assert!(rep.lemma_violations.is_empty(), "{:?}", rep.lemma_violations);
    }

    #[test]
    fn matches_oracle_up_to_five_vertices() {
        let fam = [Pattern::TwoK2, Pattern::C4];
        let cfg = PseudosplitConfig { check_lemma: true, ..Default::default() };
        for n in 1..=5 {
            for g in labeled_graphs(n) {
                let want = exact_completion(&g, &fam, 4, Mode::Addition).unwrap().map(|s| s.len());
                let rep = pseudosplit_complete_with(&g, 4, &cfg).unwrap();
                assert_eq!(rep.solution.map(|s| s.len()), want, "{g:?}");
                assert!(rep.lemma_violations.is_empty(), "{:?}", rep.lemma_violations);
            }
        }
    }
}
