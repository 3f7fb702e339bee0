//! Candidate families for vital potential maximal cliques (Types 1-4).
//!
//! Types 3 and 4 are enumerated by value rather than by choice tuple: for a
//! fixed W2 only R = N[W2] \ N_v matters, and W1 only enters through N(W1)
//! subject to disjointness from W2 ∪ W3. Non-edge counts only grow under
//! union, so a partial union over the budget can be dropped early.

use std::collections::HashMap;
use std::fmt;

use super::{ceil_sqrt, small_sets, Local, MaskSet, TpConfig, TpStats};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::par;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Provenance(u8);

impl Provenance {
    pub const TYPE1: Provenance = Provenance(1);
    pub const TYPE2: Provenance = Provenance(2);
    pub const TYPE3: Provenance = Provenance(4);
    pub const TYPE4: Provenance = Provenance(8);
    pub const BLOCK: Provenance = Provenance(16);

    pub fn has(self, other: Provenance) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn with(self, other: Provenance) -> Provenance {
        Provenance(self.0 | other.0)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["Type1", "Type2", "Type3", "Type4", "derived-block"];
        let v: Vec<_> = names.iter().enumerate().filter(|(i, _)| self.0 >> i & 1 == 1).map(|(_, n)| *n).collect();
        f.write_str(&v.join("|"))
    }
}

/// Deduplicated vertex sets over one host graph, each with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateFamily {
    n: usize,
    sets: Vec<(VertexSet, Provenance)>,
}

impl CandidateFamily {
    fn from_masks(n: usize, masks: impl IntoIterator<Item = (u64, Provenance)>) -> Self {
        let mut m: HashMap<u64, Provenance> = HashMap::new();
        for (x, p) in masks {
            let e = m.entry(x).or_default();
            *e = e.with(p);
        }
        let mut sets: Vec<_> = m.into_iter().map(|(x, p)| (VertexSet::from_mask(n, x), p)).collect();
        sets.sort();
        CandidateFamily { n, sets }
    }

    fn from_sets(n: usize, it: impl IntoIterator<Item = (VertexSet, Provenance)>) -> Self {
        let mut m: HashMap<VertexSet, Provenance> = HashMap::new();
        for (x, p) in it {
            let e = m.entry(x).or_default();
            *e = e.with(p);
        }
        let mut sets: Vec<_> = m.into_iter().collect();
        sets.sort();
        CandidateFamily { n, sets }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: &VertexSet) -> bool {
        self.sets.binary_search_by(|(x, _)| x.cmp(s)).is_ok()
    }

    pub fn provenance(&self, s: &VertexSet) -> Option<Provenance> {
        self.sets.binary_search_by(|(x, _)| x.cmp(s)).ok().map(|i| self.sets[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexSet> {
        self.sets.iter().map(|(s, _)| s)
    }

    pub fn entries(&self) -> &[(VertexSet, Provenance)] {
        &self.sets
    }

    pub fn count_with(&self, p: Provenance) -> usize {
        self.sets.iter().filter(|(_, q)| q.has(p)).count()
    }
}

/// One concrete choice for the Type 3 and Type 4 recipes. Type 3 reads
/// `(v1, a1)` as its `(v, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationChoice {
    pub w1: VertexSet,
    pub w2: VertexSet,
    pub w3: VertexSet,
    pub v1: usize,
    pub a1: VertexSet,
    pub v2: usize,
    pub a2: VertexSet,
}

impl EnumerationChoice {
    /// Size limits 2⌈√k⌉ and ⌈√k⌉, disjoint W's, A's avoiding their base.
    pub fn is_valid(&self, k: usize) -> bool {
        let (s, s2) = (ceil_sqrt(k), 2 * ceil_sqrt(k));
        [&self.w1, &self.w2, &self.w3].iter().all(|w| w.len() <= s2)
            && self.a1.len() <= s
            && self.a2.len() <= s
            && self.w1.is_disjoint(&self.w2)
            && self.w1.is_disjoint(&self.w3)
            && self.w2.is_disjoint(&self.w3)
            && !self.a1.contains(self.v1)
            && !self.a2.contains(self.v2)
    }

    fn n_v(g: &Graph, v: usize, a: &VertexSet) -> VertexSet {
        g.neighbors(v).union(a)
    }

    fn tail(&self, g: &Graph) -> VertexSet {
        let nv = Self::n_v(g, self.v1, &self.a1);
        let r = g.closed_neighborhood(&self.w2).difference(&nv);
        let mut out = g.open_neighborhood(&self.w1);
        out.union_with(&g.open_neighborhood(&self.w2));
        out.union_with(&g.open_neighborhood(&self.w3.union(&r)));
        out.union_with(&self.w3);
        out
    }

    /// N(W1) ∪ N(W2) ∪ N(W3 ∪ (N[W2] \ N_v)) ∪ W3.
    pub fn type3(&self, g: &Graph) -> VertexSet {
        self.tail(g)
    }

    /// (N_v1 ∩ N_v2) ∪ the Type 3 expression with N_v1.
    pub fn type4(&self, g: &Graph) -> VertexSet {
        let i = Self::n_v(g, self.v1, &self.a1).intersection(&Self::n_v(g, self.v2, &self.a2));
        self.tail(g).union(&i)
    }
}

struct Enumerator<'a> {
    l: &'a Local,
    s: usize,
    s2: usize,
    prune: Option<u32>,
    cfg: &'a TpConfig,
}

type Antichains = HashMap<u64, Vec<u64>>;

/// Keeps only inclusion-minimal `used` sets per key.
fn add_antichain(map: &mut Antichains, key: u64, used: u64) {
    let list = map.entry(key).or_default();
    if list.iter().any(|&e| e & !used == 0) {
        return;
    }
    list.retain(|&e| used & !e != 0);
    list.push(used);
}

impl<'a> Enumerator<'a> {
    fn new(l: &'a Local, k: usize, prune: bool, cfg: &'a TpConfig) -> Self {
        let s = ceil_sqrt(k);
        Enumerator { l, s, s2: 2 * s, prune: prune.then_some(k as u32), cfg }
    }

    #[inline]
    fn ok(&self, x: u64) -> bool {
        match self.prune {
            Some(p) => self.l.non_edges(x) <= p,
            None => true,
        }
    }

    fn keep(&self, x: u64) -> bool {
        match self.prune {
            Some(_) => x != 0 && self.ok(x),
            None => true,
        }
    }

    fn type1(&self) -> Vec<u64> {
        let full = self.l.full();
        small_sets(self.l.n, self.s2).into_iter().map(|u| full & !u).filter(|&x| self.keep(x)).collect()
    }

    fn type2(&self) -> Vec<u64> {
        let mut out = MaskSet::new(self.l.n);
        let ws = small_sets(self.l.n, self.s);
        for v in 0..self.l.n {
            let closed = self.l.adj[v] | 1 << v;
            for &w in &ws {
                let x = closed | w;
                if self.keep(x) {
                    out.insert(x);
                }
            }
        }
        out.into_vec()
    }

    /// Distinct values of N(v) ∪ A.
    fn nv_values(&self) -> Vec<u64> {
        let mut out = MaskSet::new(self.l.n);
        let as_ = small_sets(self.l.n, self.s);
        for v in 0..self.l.n {
            for &a in &as_ {
                if a >> v & 1 == 0 {
                    out.insert(self.l.adj[v] | a);
                }
            }
        }
        out.into_vec()
    }

    fn type34(&self, want3: bool, want4: bool) -> Result<(Vec<u64>, Vec<u64>)> {
        let l = self.l;
        let smalls = small_sets(l.n, self.s2);
        let pairs = smalls.len().saturating_mul(smalls.len());
        if pairs > self.cfg.max_choice_pairs {
            return Err(Error::Cap { what: "Type 3/4 choice pairs", size: pairs, cap: self.cfg.max_choice_pairs });
        }
        let uadj: Vec<u64> = smalls.iter().map(|&w| l.union_adj(w)).collect();
        let nbs: Vec<u64> = smalls.iter().zip(&uadj).map(|(&w, &u)| u & !w).collect();
        let ms = self.nv_values();
        let ivals: Vec<Vec<u64>> = if want4 {
            ms.iter()
                .map(|&m| {
                    let mut s = MaskSet::new(l.n);
                    for &m2 in &ms {
                        let i = m & m2;
                        if self.ok(i) {
                            s.insert(i);
                        }
                    }
                    s.into_vec()
                })
                .collect()
        } else {
            Vec::new()
        };

        let chunk = smalls.len().div_ceil(256).max(1);
        let ranges: Vec<(usize, usize)> =
            (0..smalls.len()).step_by(chunk).map(|a| (a, (a + chunk).min(smalls.len()))).collect();
        let partial = par::map(self.cfg.exec, &ranges, |&(lo, hi)| {
            let mut st3 = Antichains::new();
            let mut st4 = Antichains::new();
            for i in lo..hi {
                let w2 = smalls[i];
                let base2 = nbs[i];
                if !self.ok(base2) {
                    continue;
                }
                let closed2 = base2 | w2;
                let mut groups: HashMap<u64, Vec<usize>> = HashMap::new();
                for (j, &m) in ms.iter().enumerate() {
                    groups.entry(closed2 & !m).or_default().push(j);
                }
                for (r, mids) in groups {
                    let ur = l.union_adj(r);
                    let iset = if want4 {
                        let mut s = MaskSet::new(l.n);
                        for &j in &mids {
                            for &iv in &ivals[j] {
                                s.insert(iv);
                            }
                        }
                        s.into_vec()
                    } else {
                        Vec::new()
                    };
                    for (t, &w3) in smalls.iter().enumerate() {
                        if w3 & w2 != 0 {
                            continue;
                        }
                        let x = w3 | r;
                        let part = base2 | ((uadj[t] | ur) & !x) | w3;
                        if !self.ok(part) {
                            continue;
                        }
                        let used = w2 | w3;
                        if want3 {
                            add_antichain(&mut st3, part, used);
                        }
                        for &iv in &iset {
                            let p4 = part | iv;
                            if self.ok(p4) {
                                add_antichain(&mut st4, p4, used);
                            }
                        }
                    }
                }
            }
            (st3, st4)
        });
        let mut st3 = Antichains::new();
        let mut st4 = Antichains::new();
        for (a, b) in partial {
            for (key, list) in a {
                for u in list {
                    add_antichain(&mut st3, key, u);
                }
            }
            for (key, list) in b {
                for u in list {
                    add_antichain(&mut st4, key, u);
                }
            }
        }
        let w1s: Vec<(u64, u64)> =
            smalls.iter().zip(&nbs).filter(|(_, &nb)| self.ok(nb)).map(|(&w, &nb)| (w, nb)).collect();
        Ok((self.finish_w1(st3, &w1s), self.finish_w1(st4, &w1s)))
    }

    /// Adds N(W1) for every W1 disjoint from some recorded W2 ∪ W3.
    fn finish_w1(&self, states: Antichains, w1s: &[(u64, u64)]) -> Vec<u64> {
        let states: Vec<(u64, Vec<u64>)> = states.into_iter().collect();
        let outs = par::map(self.cfg.exec, &states, |(part, ach)| {
            let mut out = Vec::new();
            let mut last = u64::MAX;
            for &(w1, nb1) in w1s {
                if ach.iter().any(|&u| u & w1 == 0) {
                    let x = part | nb1;
                    if x != last && self.keep(x) {
                        out.push(x);
                        last = x;
                    }
                }
            }
            out
        });
        let mut set = MaskSet::new(self.l.n);
        for v in outs {
            for x in v {
                set.insert(x);
            }
        }
        set.into_vec()
    }
}

/// Pruned union of Types 1-4 on a connected local graph.
pub(crate) fn vital_local(
    l: &Local,
    k: usize,
    cfg: &TpConfig,
    stats: Option<&mut TpStats>,
) -> Result<Vec<(u64, Provenance)>> {
    let e = Enumerator::new(l, k, true, cfg);
    let t1 = e.type1();
    let t2 = e.type2();
    let (t3, t4) = e.type34(true, true)?;
    let mut all: HashMap<u64, Provenance> = HashMap::new();
    for (v, p) in [(&t1, Provenance::TYPE1), (&t2, Provenance::TYPE2), (&t3, Provenance::TYPE3), (&t4, Provenance::TYPE4)] {
        for &x in v {
            let e = all.entry(x).or_default();
            *e = e.with(p);
        }
    }
    if all.len() > cfg.max_candidates {
        return Err(Error::Cap { what: "candidate family", size: all.len(), cap: cfg.max_candidates });
    }
    if let Some(st) = stats {
        st.c1 += t1.len();
        st.c2 += t2.len();
        st.c3 += t3.len();
        st.c4 += t4.len();
        st.c += all.len();
    }
    let mut v: Vec<_> = all.into_iter().collect();
    v.sort();
    Ok(v)
}

fn raw_family(g: &Graph, k: usize, which: u8) -> Result<CandidateFamily> {
    let l = Local::new(g)?;
    let cfg = TpConfig::default();
    let e = Enumerator::new(&l, k, false, &cfg);
    let masks = match which {
        1 => e.type1(),
        2 => e.type2(),
        3 => e.type34(true, false)?.0,
        _ => e.type34(false, true)?.1,
    };
    let p = [Provenance::TYPE1, Provenance::TYPE2, Provenance::TYPE3, Provenance::TYPE4][which as usize - 1];
    Ok(CandidateFamily::from_masks(g.n(), masks.into_iter().map(|m| (m, p))))
}

/// All W with |V \ W| ≤ 2⌈√k⌉.
pub fn enumerate_type1(g: &Graph, k: usize) -> Result<CandidateFamily> {
    raw_family(g, k, 1)
}

/// N[v] ∪ W2 with |W2| ≤ ⌈√k⌉.
pub fn enumerate_type2(g: &Graph, k: usize) -> Result<CandidateFamily> {
    raw_family(g, k, 2)
}

/// Every Type 3 recipe output, unpruned.
pub fn enumerate_type3(g: &Graph, k: usize) -> Result<CandidateFamily> {
    raw_family(g, k, 3)
}

/// Every Type 4 recipe output, unpruned.
pub fn enumerate_type4(g: &Graph, k: usize) -> Result<CandidateFamily> {
    raw_family(g, k, 4)
}

/// Types 1-4 per connected component, without sets over k non-edges or ∅.
pub fn enumerate_vital_pmcs(g: &Graph, k: usize) -> Result<CandidateFamily> {
    enumerate_vital_pmcs_with(g, k, &TpConfig::default())
}

pub fn enumerate_vital_pmcs_with(g: &Graph, k: usize, cfg: &TpConfig) -> Result<CandidateFamily> {
    let mut out = Vec::new();
    for comp in g.components() {
        let (h, back) = g.induced(&comp);
        let l = Local::new(&h)?;
        for (m, p) in vital_local(&l, k, cfg, None)? {
            out.push((VertexSet::from_iter(g.n(), l.to_set(m).iter().map(|v| back[v])), p));
        }
    }
    Ok(CandidateFamily::from_sets(g.n(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::labeled_graphs;
    use std::collections::BTreeSet;

    fn subsets(n: usize, max: usize) -> Vec<VertexSet> {
        small_sets(n, max).into_iter().map(|m| VertexSet::from_mask(n, m)).collect()
    }

    /// Every recipe output from every valid choice tuple.
    fn naive(g: &Graph, k: usize, four: bool) -> BTreeSet<VertexSet> {
        let n = g.n();
        let (s, s2) = (ceil_sqrt(k), 2 * ceil_sqrt(k));
        let ws = subsets(n, s2);
        let as_ = subsets(n, s);
        let bases: Vec<(usize, VertexSet)> =
            (0..n).flat_map(|v| as_.iter().filter(move |a| !a.contains(v)).map(move |a| (v, a.clone()))).collect();
        let mut out = BTreeSet::new();
        for w1 in &ws {
            for w2 in ws.iter().filter(|w| w.is_disjoint(w1)) {
                for w3 in ws.iter().filter(|w| w.is_disjoint(w1) && w.is_disjoint(w2)) {
                    for (v1, a1) in &bases {
                        let mut c = EnumerationChoice {
                            w1: w1.clone(),
                            w2: w2.clone(),
                            w3: w3.clone(),
                            v1: *v1,
                            a1: a1.clone(),
                            v2: *v1,
                            a2: a1.clone(),
                        };
                        if !four {
                            out.insert(c.type3(g));
                            continue;
                        }
                        for (v2, a2) in &bases {
                            c.v2 = *v2;
                            c.a2 = a2.clone();
                            debug_assert!(c.is_valid(k));
                            out.insert(c.type4(g));
                        }
                    }
                }
            }
        }
        out
    }

    fn family_set(f: &CandidateFamily) -> BTreeSet<VertexSet> {
        f.iter().cloned().collect()
    }

    #[test]
    fn type1_and_type2_examples() {
        assert_eq!(enumerate_type1(&Graph::empty(3), 1).unwrap().len(), 7);
        assert_eq!(enumerate_type1(&Graph::empty(4), 1).unwrap().len(), 11);
        assert_eq!(enumerate_type1(&Graph::empty(4), 9).unwrap().len(), 16);
        let kn = Graph::complete(4);
        assert!(enumerate_type2(&kn, 1).unwrap().contains(&kn.vertices()));
        let c4 = Graph::cycle(4);
        assert!(enumerate_type2(&c4, 1).unwrap().contains(&c4.vertices()));
        let t2 = enumerate_type2(&c4, 0).unwrap();
        let closed: BTreeSet<_> = (0..4).map(|v| c4.closed_neighbors(v)).collect();
        assert_eq!(family_set(&t2), closed);
    }

    #[test]
    fn type3_type4_examples() {
        let g = Graph::path(5);
        let t3 = enumerate_type3(&g, 1).unwrap();
        assert!(t3.contains(&VertexSet::new(5)));
        for x in 0..5 {
            assert!(t3.contains(&g.closed_neighbors(x)));
        }
        let t4 = enumerate_type4(&g, 1).unwrap();
        for v in 0..5 {
            assert!(t4.contains(g.neighbors(v)));
        }
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(enumerate_type4(&two_k2, 0).unwrap().contains(&VertexSet::new(4)));
    }

    #[test]
    fn factorized_enumeration_equals_naive_recipes() {
        for n in 1..=4 {
            for g in labeled_graphs(n) {
                for k in [0, 1, 2] {
                    assert_eq!(family_set(&enumerate_type3(&g, k).unwrap()), naive(&g, k, false), "{g:?} k={k}");
                    assert_eq!(family_set(&enumerate_type4(&g, k).unwrap()), naive(&g, k, true), "{g:?} k={k}");
                }
            }
        }
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
        for _ in 0..6 {
            let g = Graph::random(5, 0.5, &mut rng);
            assert_eq!(family_set(&enumerate_type3(&g, 1).unwrap()), naive(&g, 1, false));
            assert_eq!(family_set(&enumerate_type4(&g, 1).unwrap()), naive(&g, 1, true));
        }
    }

    #[test]
    fn vital_pmcs_of_c4() {
        let c4 = Graph::cycle(4);
        let f = enumerate_vital_pmcs(&c4, 1).unwrap();
        for s in [[0, 1, 2], [0, 2, 3], [0, 1, 3], [1, 2, 3]] {
            assert!(f.contains(&VertexSet::from_iter(4, s)));
        }
        assert!(!f.contains(&VertexSet::new(4)));
        assert!(f.iter().all(|s| crate::graph::non_edges_within(&c4, s) <= 1));
        assert!(enumerate_vital_pmcs(&Graph::complete(5), 0).unwrap().contains(&VertexSet::full(5)));
    }

    #[test]
    fn pruned_family_is_exactly_the_filtered_raw_union() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
        for _ in 0..10 {
            let g = Graph::random(6, 0.6, &mut rng);
            if !g.is_connected_set(&g.vertices()) {
                continue;
            }
            for k in 1..=3 {
                let pruned = family_set(&enumerate_vital_pmcs(&g, k).unwrap());
                let mut raw = BTreeSet::new();
                for f in [enumerate_type1, enumerate_type2, enumerate_type3, enumerate_type4] {
                    raw.extend(family_set(&f(&g, k).unwrap()));
                }
                raw.retain(|s| !s.is_empty() && crate::graph::non_edges_within(&g, s) <= k);
                assert_eq!(pruned, raw);
            }
        }
    }
}
