//! P4-free edge deletion: per variable a cycle of tower pairs separated by
//! shortcut edges and stacks, per clause a vertex joined to three triangles
//! hanging from tower spikes.

use super::{occurrence_index, satisfying_position, Builder, CnfFormula, Reduction, ReductionInstance};
use crate::completion::{CompletionSet, Mode};
use crate::graph::Graph;
use crate::oracle::SearchBudget;
use crate::pattern::Pattern;

const B1: usize = 0;
const B2: usize = 1;
const B3: usize = 2;
const B4: usize = 3;
const B5: usize = 4;
const T1: usize = 5;
const T2: usize = 6;

/// The four ways of killing every P4 of one tower pair with four deletions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Elimination {
    /// Base of tower 1 and spike of tower 2; x false.
    A,
    /// Base of tower 2 and spike of tower 1; x true.
    B,
    C,
    D,
}

impl Elimination {
    pub const ALL: [Elimination; 4] = [Elimination::A, Elimination::B, Elimination::C, Elimination::D];

    fn indices(self) -> [usize; 4] {
        match self {
            Elimination::A => [0, 1, 2, 7],
            Elimination::B => [3, 4, 5, 6],
            Elimination::C => [1, 2, 6, 7],
            Elimination::D => [3, 4, 6, 7],
        }
    }
}

/// The edges of `r` (an `R_i` as returned in [`TowerGadget::r`]) removed by `kind`.
pub fn elimination(kind: Elimination, r: &[(usize, usize); 8]) -> [(usize, usize); 4] {
    kind.indices().map(|i| r[i])
}

/// A standalone variable gadget with its per-pair edge sets, in the order
/// b1b2, b1b3, b2b3, b3b4, b3b5, b4b5, b2t1, b4t2.
#[derive(Clone, Debug)]
pub struct TowerGadget {
    pub graph: Graph,
    pub r: Vec<[(usize, usize); 8]>,
}

fn r_edges(base: usize) -> [(usize, usize); 8] {
    let v = |o: usize| base + o;
    [
        (v(B1), v(B2)),
        (v(B1), v(B3)),
        (v(B2), v(B3)),
        (v(B3), v(B4)),
        (v(B3), v(B5)),
        (v(B4), v(B5)),
        (v(B2), v(T1)),
        (v(B4), v(T2)),
    ]
}

/// p pairs of towers, 7 vertices each, with the cyclic shortcut edges.
fn towers(b: &mut Builder, name: &str, p: usize) -> usize {
    let base = b.roles.len();
    for i in 0..p {
        for r in ["b1", "b2", "b3", "b4", "b5", "t1", "t2"] {
            b.vertex(format!("{name}.{r}.{i}"));
        }
    }
    for i in 0..p {
        for (u, v) in r_edges(base + 7 * i) {
            b.edge(u, v);
        }
        b.edge(base + 7 * i + B5, base + 7 * ((i + 1) % p) + B1);
    }
    base
}

/// Stack i sits between pair i-1 (its b5) and pair i (its b1).
fn stacks(b: &mut Builder, name: &str, base: usize, p: usize, height: usize) {
    for i in 0..p {
        let prev = base + 7 * ((i + p - 1) % p) + B5;
        for j in 0..height {
            let s = b.vertex(format!("{name}.s{i}.{j}"));
            b.edge(s, base + 7 * i + B1);
            b.edge(s, prev);
        }
    }
}

/// Variable gadget for `p` occurrences with stacks of the given height.
pub fn p4_deletion_variable_gadget(p: usize, stack: usize) -> TowerGadget {
    let mut b = Builder::new();
    let base = towers(&mut b, "x", p);
    stacks(&mut b, "x", base, p, stack);
    TowerGadget { graph: b.finish().0, r: (0..p).map(|i| r_edges(base + 7 * i)).collect() }
}

struct Layout {
    towers: Vec<usize>,
    clauses: Vec<usize>,
}

fn layout(b: &mut Builder, f: &CnfFormula) -> Layout {
    let p = f.occurrences();
    let towers = (0..f.num_vars()).map(|x| towers(b, &format!("x{}", x + 1), p[x])).collect();
    let clauses = (0..f.clauses().len())
        .map(|c| {
            let name = format!("c{}", c + 1);
            let base = b.vertex(format!("{name}.u"));
            for r in 0..3 {
                b.vertex(format!("{name}.u{r}.2"));
                b.vertex(format!("{name}.u{r}.3"));
            }
            base
        })
        .collect();
    Layout { towers, clauses }
}

/// Budget 16|C|, stacks of height 16|C| + 3. Vertices: tower pairs per
/// variable, then 7 per clause (u, then two per literal), then the stacks.
pub fn reduce_to_p4_deletion(f: &CnfFormula) -> ReductionInstance {
    let k = 16 * f.clauses().len();
    let p = f.occurrences();
    let mut b = Builder::new();
    let lay = layout(&mut b, f);
    let occ = occurrence_index(f);
    for (c, cl) in f.clauses().iter().enumerate() {
        let u = lay.clauses[c];
        for (r, &l) in cl.iter().enumerate() {
            let (u2, u3) = (u + 1 + 2 * r, u + 2 + 2 * r);
            b.edge(u, u2);
            b.edge(u, u3);
            b.edge(u2, u3);
            let pair = lay.towers[l.unsigned_abs() as usize - 1] + 7 * occ[c][r];
            let t = pair + if l > 0 { T1 } else { T2 };
            b.edge(u2, t);
            b.edge(u3, t);
        }
    }
    for x in 0..f.num_vars() {
        stacks(&mut b, &format!("x{}", x + 1), lay.towers[x], p[x], k + 3);
    }
    let (graph, roles) = b.finish();
    ReductionInstance {
        kind: Reduction::P4Deletion,
        graph,
        budget: SearchBudget::new(k),
        mode: Mode::Deletion,
        targets: vec![Pattern::P4],
        roles,
    }
}

pub(super) fn solution(f: &CnfFormula, alpha: &[bool]) -> CompletionSet {
    let p = f.occurrences();
    let mut b = Builder::new();
    let lay = layout(&mut b, f);
    let mut s = CompletionSet::new(Mode::Deletion);
    for x in 0..f.num_vars() {
        let kind = if alpha[x] { Elimination::B } else { Elimination::A };
        for i in 0..p[x] {
            for (u, v) in elimination(kind, &r_edges(lay.towers[x] + 7 * i)) {
                s.insert(u, v);
            }
        }
    }
    for (c, cl) in f.clauses().iter().enumerate() {
        let u = lay.clauses[c];
        let keep = satisfying_position(cl, alpha);
        for r in (0..3).filter(|&r| r != keep) {
            s.insert(u, u + 1 + 2 * r);
            s.insert(u, u + 2 + 2 * r);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::is_f_free;
    use crate::reductions::solution_from_assignment;

    #[test]
    fn counts() {
        let f = CnfFormula::new(4, vec![[1, -2, 3], [-1, 2, 4]]).unwrap();
        let r = reduce_to_p4_deletion(&f);
        let k = 32;
        let kp = k + 3;
        let total_p: usize = f.occurrences().iter().sum();
        assert_eq!(r.budget.k, k);
        assert_eq!(r.graph.n(), total_p * (7 + kp) + 7 * 2);
        assert_eq!(r.graph.m(), total_p * (8 + 2 * kp + 1) + 15 * 2);
        assert_eq!(r.vertex("x1.b1.0"), Some(0));
        assert_eq!(r.vertex("c1.u"), Some(7 * total_p));
    }

    #[test]
    fn forward_solutions() {
        let f = CnfFormula::new(4, vec![[1, -2, 3], [-1, 2, 4]]).unwrap();
        let r = reduce_to_p4_deletion(&f);
        for m in 0u32..16 {
            let alpha: Vec<bool> = (0..4).map(|i| m >> i & 1 == 1).collect();
            if !f.eval(&alpha) {
                continue;
            }
            let s = solution_from_assignment(&f, &alpha, Reduction::P4Deletion).unwrap();
            assert_eq!(s.len(), 32);
            assert!(r.is_solved_by(&s).unwrap(), "{alpha:?}");
        }
    }

    #[test]
    fn consistent_eliminations_only() {
        let g = p4_deletion_variable_gadget(2, 1);
        let all: Vec<(usize, usize)> = g.r.iter().flatten().copied().collect();
        let mut best = usize::MAX;
        let mut optimal = Vec::new();
        for mask in 0u32..1 << all.len() {
            let size = mask.count_ones() as usize;
            if size > 8 || size > best {
                continue;
            }
            let del: Vec<_> = (0..all.len()).filter(|&i| mask >> i & 1 == 1).map(|i| all[i]).collect();
            if is_f_free(&g.graph.with_edges_removed(&del), &[Pattern::P4]) {
                if size < best {
                    best = size;
                    optimal.clear();
                }
                optimal.push(mask);
            }
        }
        assert_eq!(best, 8);
        let as_mask = |kind: Elimination| -> u32 {
            kind.indices().iter().map(|&i| 1 << i | 1 << (i + 8)).fold(0, |a, b| a | b)
        };
        optimal.sort();
        let mut want = vec![as_mask(Elimination::A), as_mask(Elimination::B)];
        want.sort();
        assert_eq!(optimal, want);
    }

    #[test]
    fn eliminations_are_disjoint_quads() {
        let g = p4_deletion_variable_gadget(1, 2);
        for kind in Elimination::ALL {
            let e = elimination(kind, &g.r[0]);
            assert!(e.iter().all(|&(u, v)| g.graph.has_edge(u, v)));
        }
    }
}
