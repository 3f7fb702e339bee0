use anyhow::{Context, Result};
use fcomplete::reductions::{
    complement_instance, parse_dimacs, regularize, solution_from_assignment, solve_truth_table, Reduction,
};

use crate::io::{read_input, write_output};
use crate::GenerateArgs;

pub fn run_generate(a: &GenerateArgs) -> Result<()> {
    let text = read_input(&a.input)?;
    let cnf = parse_dimacs(&text).with_context(|| format!("parsing {}", a.input.display()))?;
    let f = regularize(&cnf)?;
    let mut inst = a.reduction.build(&f)?;
    if a.complement {
        inst = complement_instance(&inst);
    }
    let used = if a.reduction == Reduction::C4Completion { f.with_two_occurrences() } else { f.clone() };
    let duplicated = used.clauses().len() != f.clauses().len();
    let mut out = format!(
        "# formula vars={} clauses={} duplicated={}\n",
        used.num_vars(),
        used.clauses().len(),
        if duplicated { "yes" } else { "no" }
    );
    out.push_str(&inst.to_edge_list());
    write_output(a.output.as_deref(), &out)?;
    let roles = a.roles.clone().or_else(|| {
        a.output.as_ref().map(|o| {
            let mut p = o.clone().into_os_string();
            p.push(".roles");
            p.into()
        })
    });
    if let Some(r) = roles {
        write_output(Some(&r), &inst.role_table())?;
    }
    if let Some(w) = &a.witness {
        let body = match solve_truth_table(&f.to_cnf())? {
            Some(alpha) => solution_from_assignment(&f, &alpha, a.reduction)?.to_output(),
            None => "NO\n".to_string(),
        };
        write_output(Some(w), &body)?;
    }
    Ok(())
}
