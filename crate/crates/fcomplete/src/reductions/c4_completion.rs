//! C4-free completion: a cyclic tape of 4p_x squares per variable, an
//! 8-vertex clause gadget guarded by k_φ paths of length three.

use super::{occurrence_index, satisfying_position, Builder, CnfFormula, Reduction, ReductionInstance};
use crate::completion::{CompletionSet, Mode};
use crate::graph::Graph;
use crate::oracle::SearchBudget;
use crate::pattern::Pattern;

const U: usize = 0;
const T: usize = 1;
const B: usize = 2;
const D: usize = 3;

/// Ids of one tape: vertex `4i + r` of the gadget for r in u, t, b, d.
struct Tape {
    base: usize,
    len: usize,
}

impl Tape {
    fn at(&self, i: usize, r: usize) -> usize {
        self.base + 4 * (i % self.len) + r
    }
}

fn tape(b: &mut Builder, name: &str, p: usize) -> Tape {
    let t = Tape { base: b.roles.len(), len: 4 * p };
    for i in 0..t.len {
        for r in ["u", "t", "b", "d"] {
            b.vertex(format!("{name}.{r}{i}"));
        }
    }
    for i in 0..t.len {
        let j = i + 1;
        b.edge(t.at(i, U), t.at(i, T));
        b.edge(t.at(i, U), t.at(j, T));
        b.edge(t.at(i, T), t.at(j, U));
        b.edge(t.at(i, T), t.at(j, T));
        b.edge(t.at(i, T), t.at(i, B));
        b.edge(t.at(i, B), t.at(j, B));
        b.edge(t.at(i, B), t.at(j, D));
        b.edge(t.at(i, B), t.at(i, D));
        b.edge(t.at(i, D), t.at(j, B));
    }
    t
}

/// Core ids: v1..v4 at 0..4, u1..u4 at 4..8.
fn clause_core(b: &mut Builder, name: &str) -> usize {
    let base = b.roles.len();
    for r in ["v1", "v2", "v3", "v4", "u1", "u2", "u3", "u4"] {
        b.vertex(format!("{name}.{r}"));
    }
    let v = |i: usize| base + i - 1;
    let u = |i: usize| base + 3 + i;
    for (x, y) in [(v(1), v(4)), (v(4), v(2)), (v(2), v(3)), (v(3), v(1))] {
        b.edge(x, y);
    }
    for (x, y) in [(v(2), u(1)), (u(1), u(2)), (u(2), v(1)), (v(3), u(4)), (u(4), u(3)), (u(3), v(4))] {
        b.edge(x, y);
    }
    base
}

fn guard(b: &mut Builder, name: &str, core: usize, count: usize) {
    for g in 0..count {
        let x = b.vertex(format!("{name}.g{g}a"));
        let y = b.vertex(format!("{name}.g{g}b"));
        b.edge(core + 3, x);
        b.edge(x, y);
        b.edge(y, core + 7);
    }
}

/// The tape for a variable in `p` clauses, alone.
pub fn c4_completion_variable_gadget(p: usize) -> Graph {
    let mut b = Builder::new();
    tape(&mut b, "x", p);
    b.finish().0
}

/// The clause gadget alone with `guards` paths between v4 and u4.
pub fn c4_completion_clause_gadget(guards: usize) -> Graph {
    let mut b = Builder::new();
    let core = clause_core(&mut b, "c");
    guard(&mut b, "c", core, guards);
    b.finish().0
}

struct Layout {
    tapes: Vec<Tape>,
    cores: Vec<usize>,
}

fn layout(b: &mut Builder, f: &CnfFormula) -> Layout {
    let p = f.occurrences();
    let tapes = (0..f.num_vars()).map(|x| tape(b, &format!("x{}", x + 1), p[x])).collect();
    let cores = (0..f.clauses().len()).map(|c| clause_core(b, &format!("c{}", c + 1))).collect();
    Layout { tapes, cores }
}

/// Budget 14|C| after doubling the clause list if some variable occurs once.
/// Vertices: tapes in variable order, clause cores in clause order, then the
/// guard paths clause by clause.
pub fn reduce_to_c4_completion(f: &CnfFormula) -> ReductionInstance {
    let f = f.with_two_occurrences();
    let k = 14 * f.clauses().len();
    let mut b = Builder::new();
    let lay = layout(&mut b, &f);
    for (c, &core) in lay.cores.iter().enumerate() {
        guard(&mut b, &format!("c{}", c + 1), core, k);
    }
    let occ = occurrence_index(&f);
    for (c, cl) in f.clauses().iter().enumerate() {
        let core = lay.cores[c];
        for (i, &l) in cl.iter().enumerate() {
            let t = &lay.tapes[l.unsigned_abs() as usize - 1];
            let j = 4 * occ[c][i];
            let (v, u) = (core + i, core + 4 + i);
            if l > 0 {
                b.edge(t.at(j + 1, T), v);
                b.edge(t.at(j, B), u);
            } else {
                b.edge(t.at(j, T), v);
                b.edge(t.at(j + 1, B), u);
            }
        }
    }
    let (graph, roles) = b.finish();
    ReductionInstance {
        kind: Reduction::C4Completion,
        graph,
        budget: SearchBudget::new(k),
        mode: Mode::Addition,
        targets: vec![Pattern::C4],
        roles,
    }
}

pub(super) fn solution(f: &CnfFormula, alpha: &[bool]) -> CompletionSet {
    let f = f.with_two_occurrences();
    let mut b = Builder::new();
    let lay = layout(&mut b, &f);
    let mut s = CompletionSet::new(Mode::Addition);
    for (x, t) in lay.tapes.iter().enumerate() {
        for i in 0..t.len {
            if alpha[x] {
                s.insert(t.at(i, T), t.at(i + 1, B));
            } else {
                s.insert(t.at(i + 1, T), t.at(i, B));
            }
        }
    }
    for (c, cl) in f.clauses().iter().enumerate() {
        let v = |i: usize| lay.cores[c] + i - 1;
        let u = |i: usize| lay.cores[c] + 3 + i;
        let pair = match satisfying_position(cl, alpha) {
            0 => [(v(1), v(2)), (v(1), u(1))],
            1 => [(v(1), v(2)), (v(2), u(2))],
            _ => [(v(3), v(4)), (v(3), u(3))],
        };
        for (x, y) in pair {
            s.insert(x, y);
        }
    }
    s
}
