use anyhow::{bail, Result};
use fcomplete::completion::format_solution;
use fcomplete::oracle::{enumerate_minimal_completions, exact_completion_with_stats};
use fcomplete::par::Exec;
use fcomplete::pattern::is_f_free;
use fcomplete::pseudosplit::{pseudosplit_complete_with, PseudosplitConfig};
use fcomplete::threshold::{threshold_complete_with, ColoringConfig};
use fcomplete::tp::{tp_complete_with, TpConfig};
use fcomplete::{CompletionSet, Error, Graph, Mode};

use crate::io::{read_graph, write_output};
use crate::problem::Problem;
use crate::{Algo, Budget, OracleArgs, SolveArgs};

struct Solver<'a> {
    problem: &'a Problem,
    mode: Mode,
    algo: Algo,
    coloring: ColoringConfig,
    stats: Vec<String>,
}

fn seed(flag: u64) -> Result<u64> {
    match std::env::var("FCOMPLETE_SEED") {
        Ok(s) if !s.trim().is_empty() => match s.trim().parse() {
            Ok(v) => Ok(v),
            Err(_) => bail!("FCOMPLETE_SEED is not an unsigned integer: {s:?}"),
        },
        _ => Ok(flag),
    }
}

/// Largest budget that can ever be needed.
fn ceiling(g: &Graph, mode: Mode) -> usize {
    match mode {
        Mode::Addition => g.n() * g.n().saturating_sub(1) / 2 - g.m(),
        Mode::Deletion => g.m(),
    }
}

impl Solver<'_> {
    fn subexp(&mut self, g: &Graph, k: usize) -> fcomplete::Result<Option<CompletionSet>> {
        match self.problem {
            Problem::Tp => {
                let (s, st) = tp_complete_with(g, k, &TpConfig::default())?;
                self.stats.push(format!("algo=subexp\n{}", st.to_string().trim_end()));
                Ok(s)
            }
            Problem::Threshold => {
                let (s, st) = threshold_complete_with(g, k, &self.coloring)?;
                self.stats.push(format!("algo=subexp\n{}", st.to_string().trim_end()));
                Ok(s)
            }
            Problem::Pseudosplit => {
                let r = pseudosplit_complete_with(g, k, &PseudosplitConfig::default())?;
                self.stats.push(format!("algo=subexp\n{}", r.to_string().trim_end()));
                Ok(r.solution)
            }
            _ => unreachable!("no subexponential solver"),
        }
    }

    fn branch(&mut self, g: &Graph, k: usize) -> fcomplete::Result<Option<CompletionSet>> {
        let (s, st) = exact_completion_with_stats(g, &self.problem.family(), k, self.mode)?;
        self.stats.push(format!("algo=branch\nsearch_nodes={}", st.nodes));
        Ok(s)
    }

    fn once(&mut self, g: &Graph, k: usize) -> Result<Option<CompletionSet>> {
        let subexp_ok = self.problem.has_subexp() && self.mode == Mode::Addition;
        match self.algo {
            Algo::Branch => Ok(self.branch(g, k)?),
            Algo::Subexp if !subexp_ok => {
                bail!("no subexponential algorithm for {} in {} mode; use --algo branch", self.problem, self.mode)
            }
            Algo::Subexp => Ok(self.subexp(g, k)?),
            Algo::Auto if !subexp_ok => Ok(self.branch(g, k)?),
            Algo::Auto => match self.subexp(g, k) {
                Err(e @ (Error::Cap { .. } | Error::Refused(_))) => {
                    eprintln!("warning: {e}; falling back to branching");
                    Ok(self.branch(g, k)?)
                }
                r => Ok(r?),
            },
        }
    }

    fn run(&mut self, g: &Graph, budget: &Budget) -> Result<Option<CompletionSet>> {
        match budget.k {
            Some(k) => self.once(g, k),
            None => {
                for b in 0..=ceiling(g, self.mode) {
                    if let Some(s) = self.once(g, b)? {
                        return Ok(Some(s));
                    }
                }
                Ok(None)
            }
        }
    }
}

pub fn run_solve(a: &SolveArgs) -> Result<bool> {
    if a.deletion && a.algo == Algo::Subexp {
        bail!("--deletion is only available with branching");
    }
    let g = read_graph(&a.input)?;
    let coloring = ColoringConfig {
        mode: a.coloring,
        trials: a.trials,
        seed: seed(a.seed)?,
        exec: Exec::Parallel,
        ..ColoringConfig::default()
    };
    let mode = if a.deletion { Mode::Deletion } else { Mode::Addition };
    let mut solver = Solver { problem: &a.problem, mode, algo: a.algo, coloring, stats: Vec::new() };
    let sol = solver.run(&g, &a.budget)?;
    if a.stats {
        if let Some(last) = solver.stats.last() {
            eprintln!("problem={}\nbudget_calls={}\n{}", a.problem, solver.stats.len(), last);
        }
    }
    if a.verify {
        if let Some(s) = &sol {
            if !is_f_free(&s.apply(&g)?, &a.problem.family()) {
                bail!("verification failed: result still contains an obstruction");
            }
        }
    }
    write_output(a.output.as_deref(), &format_solution(sol.as_ref()))?;
    Ok(sol.is_some())
}

pub fn run_oracle(a: &OracleArgs) -> Result<bool> {
    let g = read_graph(&a.input)?;
    let mode = if a.deletion { Mode::Deletion } else { Mode::Addition };
    if a.minimal {
        if mode == Mode::Deletion {
            bail!("--minimal lists completions only");
        }
        let k = a.budget.k.expect("clap requires --k");
        let all = enumerate_minimal_completions(&g, &a.problem.family(), k, false)?;
        let mut text = format!("MINIMAL {}\n", all.len());
        for s in &all {
            let pairs: Vec<String> = s.pairs().map(|(u, v)| format!("{u} {v}")).collect();
            text.push_str(&pairs.join(", "));
            text.push('\n');
        }
        write_output(None, &text)?;
        return Ok(!all.is_empty());
    }
    let mut solver =
        Solver { problem: &a.problem, mode, algo: Algo::Branch, coloring: ColoringConfig::default(), stats: Vec::new() };
    let sol = solver.run(&g, &a.budget)?;
    if a.stats {
        let nodes: Vec<&str> = solver.stats.iter().filter_map(|s| s.lines().nth(1)).collect();
        eprintln!("problem={}\nbudget_calls={}\n{}", a.problem, solver.stats.len(), nodes.join("\n"));
    }
    write_output(None, &format_solution(sol.as_ref()))?;
    Ok(sol.is_some())
}
