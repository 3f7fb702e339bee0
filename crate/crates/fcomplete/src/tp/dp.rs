//! The dpt recurrence over the block family, with argmin retrace.

use std::collections::HashMap;

use super::{blocks::BlockFamily, Local};
use crate::completion::{CompletionSet, Mode};
use crate::error::Result;
use crate::graph::{Graph, VertexSet};

/// dpt values; `k + 1` stands for infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpTable {
    pub k: usize,
    pub entries: Vec<((VertexSet, VertexSet), usize)>,
}

impl DpTable {
    pub fn get(&self, x: &VertexSet, y: &VertexSet) -> Option<usize> {
        self.entries.iter().find(|((a, b), _)| a == x && b == y).map(|(_, v)| *v)
    }

    pub fn is_infinite(&self, v: usize) -> bool {
        v > self.k
    }
}

#[derive(Clone, Debug)]
pub struct DpSolution {
    pub value: Option<usize>,
    pub table: DpTable,
    pub completion: Option<CompletionSet>,
}

pub(crate) struct LocalDp {
    pub best: Option<(usize, Vec<(usize, usize)>)>,
    pub entries: usize,
    pub values: Vec<usize>,
}

/// `pairs` must be sorted by |Y|.
pub(crate) fn dp_local(l: &Local, pairs: &[(u64, u64)], k: usize) -> LocalDp {
    let inf = k + 1;
    let mut vals = vec![inf; pairs.len()];
    let mut kids: Vec<Vec<u32>> = vec![Vec::new(); pairs.len()];
    let mut best_y: HashMap<u64, (usize, u32)> = HashMap::new();
    debug_assert!(pairs.windows(2).all(|w| w[0].1.count_ones() <= w[1].1.count_ones()));
    for (idx, &(x, y)) in pairs.iter().enumerate() {
        let v = if x == y {
            (l.non_edges(x) as usize).min(inf)
        } else {
            let rest = y & !x;
            let base = l.non_edges(x) as usize + (x.count_ones() * rest.count_ones() - l.edges_between(x, rest)) as usize;
            let mut total = base.min(inf);
            for comp in l.components(rest) {
                if total >= inf {
                    break;
                }
                match best_y.get(&comp) {
                    Some(&(bv, bi)) if bv < inf => {
                        total = (total + bv).min(inf);
                        kids[idx].push(bi);
                    }
                    _ => total = inf,
                }
            }
            total
        };
        vals[idx] = v;
        let e = best_y.entry(y).or_insert((inf, u32::MAX));
        if v < e.0 {
            *e = (v, idx as u32);
        }
    }
    let mut total = 0;
    let mut roots = Vec::new();
    for comp in l.components(l.full()) {
        match best_y.get(&comp) {
            Some(&(v, i)) if v < inf => {
                total += v;
                roots.push(i);
            }
            _ => return LocalDp { best: None, entries: pairs.len(), values: vals },
        }
    }
    if total > k {
        return LocalDp { best: None, entries: pairs.len(), values: vals };
    }
    let mut edges = Vec::new();
    let mut stack = roots;
    while let Some(i) = stack.pop() {
        let (x, y) = pairs[i as usize];
        let xs: Vec<usize> = bits(x).collect();
        for (a, &u) in xs.iter().enumerate() {
            for &v in &xs[a + 1..] {
                if l.adj[u] >> v & 1 == 0 {
                    edges.push((u, v));
                }
            }
            for v in bits(y & !x & !l.adj[u]) {
                edges.push((u.min(v), u.max(v)));
            }
        }
        stack.extend(&kids[i as usize]);
    }
    debug_assert_eq!(edges.len(), total);
    LocalDp { best: Some((total, edges)), entries: pairs.len(), values: vals }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(b)
    })
}

/// Runs the recurrence over `s` and returns the optimum, table and edge set.
pub fn dp_solve(s: &BlockFamily, g: &Graph, k: usize) -> Result<DpSolution> {
    let l = Local::new(g)?;
    let mut pairs: Vec<(u64, u64)> = s.pairs().iter().map(|(x, y)| (x.to_mask(), y.to_mask())).collect();
    pairs.sort_by_key(|&(x, y)| (y.count_ones(), y, x));
    let r = dp_local(&l, &pairs, k);
    let table = DpTable {
        k,
        entries: pairs.iter().zip(&r.values).map(|(&(x, y), &v)| ((l.to_set(x), l.to_set(y)), v)).collect(),
    };
    let (value, completion) = match r.best {
        Some((v, e)) => (Some(v), Some(CompletionSet::from_pairs(Mode::Addition, e))),
        None => (None, None),
    };
    Ok(DpSolution { value, table, completion })
}
