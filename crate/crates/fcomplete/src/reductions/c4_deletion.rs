//! C4-free edge deletion: a 6-vertex variable gadget with a true and a false
//! edge, a two-triangle clause gadget with three variable-edges.

use super::{satisfying_position, Builder, CnfFormula, Reduction, ReductionInstance};
use crate::completion::{CompletionSet, Mode};
use crate::graph::Graph;
use crate::oracle::SearchBudget;
use crate::pattern::Pattern;

const W0: usize = 0;
const N: usize = 3;
const P: usize = 4;
const T: usize = 5;

fn var_base(x: usize) -> usize {
    6 * x
}

fn clause_base(f: &CnfFormula, c: usize) -> usize {
    6 * f.num_vars() + 6 * c
}

fn variable(b: &mut Builder, name: &str) -> usize {
    let base = b.roles.len();
    for i in 0..3 {
        b.vertex(format!("{name}.w{i}"));
    }
    for r in ["n", "p", "t"] {
        b.vertex(format!("{name}.{r}"));
    }
    for i in 0..3 {
        for j in i + 1..3 {
            b.edge(base + W0 + i, base + W0 + j);
        }
        b.edge(base + N, base + W0 + i);
        b.edge(base + P, base + W0 + i);
    }
    b.edge(base + T, base + N);
    b.edge(base + T, base + P);
    base
}

fn clause(b: &mut Builder, name: &str) -> usize {
    let base = b.roles.len();
    for side in ["a", "b"] {
        for i in 0..3 {
            b.vertex(format!("{name}.{side}{i}"));
        }
    }
    for i in 0..3 {
        let j = (i + 1) % 3;
        b.edge(base + i, base + j);
        b.edge(base + 3 + i, base + 3 + j);
        b.edge(base + i, base + 3 + i);
    }
    base
}

/// The variable gadget alone: triangle w0 w1 w2, then n, p, t.
pub fn c4_deletion_variable_gadget() -> Graph {
    let mut b = Builder::new();
    variable(&mut b, "x");
    b.finish().0
}

/// The clause gadget alone: a0 a1 a2, then b0 b1 b2.
pub fn c4_deletion_clause_gadget() -> Graph {
    let mut b = Builder::new();
    clause(&mut b, "c");
    b.finish().0
}

/// Budget |V| + 2|C|. Vertices: 6 per variable (w0 w1 w2 n p t), then
/// 6 per clause (a0 a1 a2 b0 b1 b2).
pub fn reduce_to_c4_deletion(f: &CnfFormula) -> ReductionInstance {
    let mut b = Builder::new();
    for x in 0..f.num_vars() {
        variable(&mut b, &format!("x{}", x + 1));
    }
    for c in 0..f.clauses().len() {
        clause(&mut b, &format!("c{}", c + 1));
    }
    for (c, cl) in f.clauses().iter().enumerate() {
        let cb = clause_base(f, c);
        for (i, &l) in cl.iter().enumerate() {
            let vb = var_base(l.unsigned_abs() as usize - 1);
            b.edge(vb + T, cb + i);
            b.edge(if l > 0 { vb + P } else { vb + N }, cb + 3 + i);
        }
    }
    let (graph, roles) = b.finish();
    ReductionInstance {
        kind: Reduction::C4Deletion,
        graph,
        budget: SearchBudget::new(f.num_vars() + 2 * f.clauses().len()),
        mode: Mode::Deletion,
        targets: vec![Pattern::C4],
        roles,
    }
}

pub(super) fn solution(f: &CnfFormula, alpha: &[bool]) -> CompletionSet {
    let mut s = CompletionSet::new(Mode::Deletion);
    for (x, &val) in alpha.iter().enumerate() {
        let vb = var_base(x);
        s.insert(vb + T, if val { vb + P } else { vb + N });
    }
    for (c, cl) in f.clauses().iter().enumerate() {
        let cb = clause_base(f, c);
        let keep = satisfying_position(cl, alpha);
        for i in (0..3).filter(|&i| i != keep) {
            s.insert(cb + i, cb + 3 + i);
        }
    }
    s
}
