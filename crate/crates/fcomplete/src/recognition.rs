//! Recognizers for the target classes and the universal clique decomposition.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::pattern::{find_any, find_induced, Pattern};

/// Universal vertices of `G[comp]`.
fn universal_in(g: &Graph, comp: &VertexSet) -> VertexSet {
    let mut u = VertexSet::new(g.n());
    for v in comp.iter() {
        let mut rest = comp.clone();
        rest.remove(v);
        if rest.is_subset(g.neighbors(v)) {
            u.insert(v);
        }
    }
    u
}

fn peel(g: &Graph, comp: &VertexSet) -> bool {
    let u = universal_in(g, comp);
    if u.is_empty() {
        return false;
    }
    let rest = comp.difference(&u);
    g.components_within(&rest).iter().all(|c| peel(g, c))
}

/// Recursive universal-vertex peeling per component.
pub fn is_trivially_perfect(g: &Graph) -> bool {
    g.components().iter().all(|c| peel(g, c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UcdNode {
    pub bag: VertexSet,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// Rooted bag forest; nodes are stored in preorder, children by smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalCliqueDecomposition {
    pub nodes: Vec<UcdNode>,
    pub roots: Vec<usize>,
}

impl UniversalCliqueDecomposition {
    pub fn is_leaf(&self, t: usize) -> bool {
        self.nodes[t].children.is_empty()
    }

    /// Union of bags in the subtree of `t`.
    pub fn subtree(&self, t: usize) -> VertexSet {
        let mut s = self.nodes[t].bag.clone();
        for &c in &self.nodes[t].children {
            s.union_with(&self.subtree(c));
        }
        s
    }

    /// Union of bags from `t` up to its root.
    pub fn tail(&self, t: usize) -> VertexSet {
        let mut s = self.nodes[t].bag.clone();
        let mut cur = self.nodes[t].parent;
        while let Some(p) = cur {
            s.union_with(&self.nodes[p].bag);
            cur = self.nodes[p].parent;
        }
        s
    }
}

pub fn build_ucd(g: &Graph) -> Result<UniversalCliqueDecomposition> {
    if !is_trivially_perfect(g) {
        let (pattern, witness) = find_any(g, &[Pattern::C4, Pattern::P4]).expect("non-TP graph has an obstruction");
        return Err(Error::Obstruction { class: "trivially perfect", pattern, witness });
    }
    let mut ucd = UniversalCliqueDecomposition { nodes: Vec::new(), roots: Vec::new() };
    fn grow(g: &Graph, comp: &VertexSet, parent: Option<usize>, ucd: &mut UniversalCliqueDecomposition) -> usize {
        let bag = universal_in(g, comp);
        let id = ucd.nodes.len();
        ucd.nodes.push(UcdNode { bag: bag.clone(), parent, children: Vec::new() });
        for c in g.components_within(&comp.difference(&bag)) {
            let child = grow(g, &c, Some(id), ucd);
            ucd.nodes[id].children.push(child);
        }
        id
    }
    for comp in g.components() {
        let r = grow(g, &comp, None, &mut ucd);
        ucd.roots.push(r);
    }
    Ok(ucd)
}

/// Bag B, subtree vertices D and tail Q of a decomposition node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub bag: VertexSet,
    pub subtree: VertexSet,
    pub tail: VertexSet,
}

/// One block per node, in node order.
pub fn blocks_of(ucd: &UniversalCliqueDecomposition) -> Vec<Block> {
    (0..ucd.nodes.len())
        .map(|t| Block { bag: ucd.nodes[t].bag.clone(), subtree: ucd.subtree(t), tail: ucd.tail(t) })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitPartition {
    pub c: VertexSet,
    pub i: VertexSet,
}

impl SplitPartition {
    pub fn is_valid(&self, g: &Graph) -> bool {
        self.c.is_disjoint(&self.i)
            && self.c.union(&self.i) == g.vertices()
            && g.is_clique(&self.c)
            && g.is_independent(&self.i)
    }
}

/// One split partition from the degree sequence, if the graph is split.
pub fn split_partition(g: &Graph) -> Option<SplitPartition> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let m = order.iter().enumerate().filter(|&(i, &v)| g.degree(v) >= i).map(|(i, _)| i + 1).max().unwrap_or(0);
    let c = VertexSet::from_iter(g.n(), order[..m].iter().copied());
    let sp = SplitPartition { i: c.complement(), c };
    sp.is_valid(g).then_some(sp)
}

pub fn is_split(g: &Graph) -> bool {
    split_partition(g).is_some()
}

/// All split partitions, ordered by clique side.
pub fn enumerate_split_partitions(g: &Graph) -> Result<Vec<SplitPartition>> {
    let base = split_partition(g).ok_or_else(|| Error::Refused("graph is not split".into()))?;
    let mut out = Vec::new();
    let cs: Vec<Option<usize>> = std::iter::once(None).chain(base.c.iter().map(Some)).collect();
    let is: Vec<Option<usize>> = std::iter::once(None).chain(base.i.iter().map(Some)).collect();
    for &x in &cs {
        for &y in &is {
            let mut c = base.c.clone();
            if let Some(x) = x {
                c.remove(x);
            }
            if let Some(y) = y {
                c.insert(y);
            }
            let sp = SplitPartition { i: c.complement(), c };
            if sp.is_valid(g) {
                out.push(sp);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Whether the I-side neighborhoods of a split partition form a chain.
pub fn has_nested_independent_side(g: &Graph, sp: &SplitPartition) -> bool {
    let mut iv = sp.i.to_vec();
    iv.sort_by_key(|&v| (g.degree(v), v));
    iv.windows(2).all(|w| g.neighbors(w[0]).is_subset(g.neighbors(w[1])))
}

pub fn is_threshold(g: &Graph) -> bool {
    match enumerate_split_partitions(g) {
        Ok(parts) => parts.iter().any(|sp| has_nested_independent_side(g, sp)),
        Err(_) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudosplitWitness {
    pub c: VertexSet,
    pub i: VertexSet,
    pub x: VertexSet,
}

/// Split, or split plus an induced C5 fully joined to C and anticomplete to I.
pub fn is_pseudosplit(g: &Graph) -> Option<PseudosplitWitness> {
    if let Some(sp) = split_partition(g) {
        return Some(PseudosplitWitness { c: sp.c, i: sp.i, x: VertexSet::new(g.n()) });
    }
    let x = VertexSet::from_iter(g.n(), find_induced(g, Pattern::C5)?);
    let mut c = VertexSet::new(g.n());
    let mut i = VertexSet::new(g.n());
    for v in x.complement().iter() {
        match g.neighbors(v).intersection_len(&x) {
            5 => c.insert(v),
            0 => i.insert(v),
            _ => return None,
        }
    }
    (g.is_clique(&c) && g.is_independent(&i)).then_some(PseudosplitWitness { c, i, x })
}

/// Whether A-side neighborhoods are totally ordered by inclusion.
pub fn is_chain(a_side: &VertexSet, b_side: &VertexSet, g: &Graph) -> Result<bool> {
    check_bipartition(a_side, b_side, g)?;
    let mut av = a_side.to_vec();
    av.sort_by_key(|&v| (g.degree(v), v));
    Ok(av.windows(2).all(|w| g.neighbors(w[0]).is_subset(g.neighbors(w[1]))))
}

pub(crate) fn check_bipartition(a_side: &VertexSet, b_side: &VertexSet, g: &Graph) -> Result<()> {
    if !a_side.is_disjoint(b_side) || a_side.union(b_side) != g.vertices() {
        return Err(Error::Refused("sides do not partition the vertex set".into()));
    }
    if !g.is_independent(a_side) || !g.is_independent(b_side) {
        return Err(Error::Refused("an edge lies inside one side of the bipartition".into()));
    }
    Ok(())
}
