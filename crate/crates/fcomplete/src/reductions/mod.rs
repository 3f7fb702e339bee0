//! Generators for the 3SAT hardness instances of C4-free edge deletion,
//! C4-free completion and P4-free edge deletion, with the solutions built
//! from satisfying assignments.

mod c4_completion;
mod c4_deletion;
mod cnf;
mod p4_deletion;

use std::fmt;
use std::str::FromStr;

pub use c4_completion::{c4_completion_clause_gadget, c4_completion_variable_gadget, reduce_to_c4_completion};
pub use c4_deletion::{c4_deletion_clause_gadget, c4_deletion_variable_gadget, reduce_to_c4_deletion};
pub use cnf::{parse_dimacs, regularize, solve_truth_table, Cnf, CnfFormula, Lit, TRUTH_TABLE_LIMIT};
pub use p4_deletion::{elimination, p4_deletion_variable_gadget, reduce_to_p4_deletion, Elimination, TowerGadget};

use crate::completion::{CompletionSet, Mode};
use crate::error::{Error, Result};
use crate::graph::{write_graph, Graph};
use crate::oracle::SearchBudget;
use crate::pattern::{is_f_free, Pattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reduction {
    C4Deletion,
    C4Completion,
    P4Deletion,
}

impl Reduction {
    pub const ALL: [Reduction; 3] = [Reduction::C4Deletion, Reduction::C4Completion, Reduction::P4Deletion];

    pub fn name(self) -> &'static str {
        match self {
            Reduction::C4Deletion => "c4del",
            Reduction::C4Completion => "c4compl",
            Reduction::P4Deletion => "p4del",
        }
    }

    pub fn build(self, f: &CnfFormula) -> Result<ReductionInstance> {
        match self {
            Reduction::C4Deletion => Ok(reduce_to_c4_deletion(f)),
            Reduction::C4Completion => Ok(reduce_to_c4_completion(f)),
            Reduction::P4Deletion => Ok(reduce_to_p4_deletion(f)),
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reduction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Reduction::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Contract(format!("unknown reduction `{s}` (c4del, c4compl, p4del)")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionInstance {
    pub kind: Reduction,
    pub graph: Graph,
    pub budget: SearchBudget,
    pub mode: Mode,
    pub targets: Vec<Pattern>,
    /// Gadget role of every vertex, indexed by vertex id.
    pub roles: Vec<String>,
}

impl ReductionInstance {
    /// Edge list preceded by a `# reduction=.. k=.. mode=.. targets=..` line.
    pub fn to_edge_list(&self) -> String {
        let targets: Vec<&str> = self.targets.iter().map(|p| p.name()).collect();
        format!(
            "# reduction={} k={} mode={} targets={}\n{}",
            self.kind,
            self.budget.k,
            self.mode,
            targets.join(","),
            write_graph(&self.graph)
        )
    }

    /// "<vertex-id> <role-name>" lines.
    pub fn role_table(&self) -> String {
        self.roles.iter().enumerate().map(|(v, r)| format!("{v} {r}\n")).collect()
    }

    pub fn vertex(&self, role: &str) -> Option<usize> {
        self.roles.iter().position(|r| r == role)
    }

    /// Whether applying `s` in this instance's mode leaves no target pattern.
    pub fn is_solved_by(&self, s: &CompletionSet) -> Result<bool> {
        if s.mode() != self.mode {
            return Err(Error::Contract(format!("solution is in {} mode, instance in {}", s.mode(), self.mode)));
        }
        Ok(is_f_free(&s.apply(&self.graph)?, &self.targets))
    }
}

/// Same instance on the complement graph: completion and deletion swap, and
/// each target becomes its complement.
pub fn complement_instance(r: &ReductionInstance) -> ReductionInstance {
    ReductionInstance {
        kind: r.kind,
        graph: r.graph.complement(),
        budget: r.budget,
        mode: r.mode.flip(),
        targets: r.targets.iter().map(|p| p.complement().unwrap_or(*p)).collect(),
        roles: r.roles.clone(),
    }
}

/// The k_φ pairs the forward direction of each reduction picks for `alpha`.
pub fn solution_from_assignment(f: &CnfFormula, alpha: &[bool], which: Reduction) -> Result<CompletionSet> {
    if alpha.len() != f.num_vars() {
        return Err(Error::Contract(format!("assignment has {} values for {} variables", alpha.len(), f.num_vars())));
    }
    if !f.eval(alpha) {
        return Err(Error::Refused("assignment does not satisfy the formula".into()));
    }
    Ok(match which {
        Reduction::C4Deletion => c4_deletion::solution(f, alpha),
        Reduction::C4Completion => c4_completion::solution(f, alpha),
        Reduction::P4Deletion => p4_deletion::solution(f, alpha),
    })
}

/// Position of the first literal of `c` made true by `alpha`.
fn satisfying_position(c: &[Lit; 3], alpha: &[bool]) -> usize {
    c.iter().position(|&l| alpha[l.unsigned_abs() as usize - 1] == (l > 0)).expect("clause satisfied")
}

/// For each clause and position, the index of that clause among the
/// occurrences of the variable.
fn occurrence_index(f: &CnfFormula) -> Vec<[usize; 3]> {
    let mut seen = vec![0; f.num_vars()];
    f.clauses()
        .iter()
        .map(|c| {
            let mut out = [0; 3];
            for (i, &l) in c.iter().enumerate() {
                let x = l.unsigned_abs() as usize - 1;
                out[i] = seen[x];
                seen[x] += 1;
            }
            out
        })
        .collect()
}

/// Accumulates vertices with role names and edges.
struct Builder {
    roles: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new() -> Self {
        Builder { roles: Vec::new(), edges: Vec::new() }
    }

    fn vertex(&mut self, role: String) -> usize {
        self.roles.push(role);
        self.roles.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u.min(v), u.max(v)));
    }

    fn finish(self) -> (Graph, Vec<String>) {
        let g = Graph::from_edges(self.roles.len(), &self.edges).expect("gadget edges are simple");
        (g, self.roles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for r in Reduction::ALL {
            assert_eq!(r.name().parse::<Reduction>().unwrap(), r);
        }
        assert!("c5".parse::<Reduction>().is_err());
    }

    #[test]
    fn refuses_unsatisfying_assignment() {
        let f = CnfFormula::new(3, vec![[1, 2, 3]]).unwrap();
        assert!(solution_from_assignment(&f, &[false, false, false], Reduction::C4Deletion).is_err());
        assert!(solution_from_assignment(&f, &[true], Reduction::C4Deletion).is_err());
    }

    #[test]
    fn complement_examples() {
        let f = CnfFormula::new(3, vec![[1, -2, 3]]).unwrap();
        let r = reduce_to_c4_deletion(&f);
        let c = complement_instance(&r);
        assert_eq!(c.mode, Mode::Addition);
        assert_eq!(c.targets, vec![Pattern::TwoK2]);
        assert_eq!(c.budget, r.budget);
        assert_eq!(complement_instance(&c), r);
        let p = complement_instance(&reduce_to_p4_deletion(&f));
        assert_eq!(p.targets, vec![Pattern::P4]);
        assert_eq!(p.mode, Mode::Addition);
    }

    #[test]
    fn output_formats() {
        let f = CnfFormula::new(3, vec![[1, 2, 3]]).unwrap();
        let r = reduce_to_c4_deletion(&f);
        let text = r.to_edge_list();
        assert!(text.starts_with("# reduction=c4del k=5 mode=deletion targets=C4\n"));
        assert_eq!(crate::graph::parse_graph(&text).unwrap(), r.graph);
        assert_eq!(r.role_table().lines().count(), r.graph.n());
    }
}
