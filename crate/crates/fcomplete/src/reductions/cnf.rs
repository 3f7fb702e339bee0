//! DIMACS input, regularization to exact 3-CNF and truth tables.

use std::fmt;

use crate::error::{Error, Result};

/// Literal in DIMACS convention: `v` or `-v` for variable `v ≥ 1`.
pub type Lit = i32;

fn var(l: Lit) -> usize {
    l.unsigned_abs() as usize
}

/// A CNF formula with clauses of any length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Lit>>,
}

impl Cnf {
    pub fn eval(&self, alpha: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| alpha[var(l) - 1] == (l > 0)))
    }
}

/// Exactly three literals per clause over pairwise different variables,
/// each clause sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<[Lit; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[Lit; 3]>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(Error::Refused("formula has no clauses".into()));
        }
        let mut out = Vec::with_capacity(clauses.len());
        for (i, mut c) in clauses.into_iter().enumerate() {
            if c.iter().any(|&l| l == 0 || var(l) > num_vars) {
                return Err(Error::Contract(format!("clause {i} has a literal outside 1..={num_vars}")));
            }
            c.sort_by_key(|&l| var(l));
            if var(c[0]) == var(c[1]) || var(c[1]) == var(c[2]) {
                return Err(Error::Contract(format!("clause {i} repeats a variable")));
            }
            out.push(c);
        }
        Ok(CnfFormula { num_vars, clauses: out })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Lit; 3]] {
        &self.clauses
    }

    pub fn to_cnf(&self) -> Cnf {
        Cnf { num_vars: self.num_vars, clauses: self.clauses.iter().map(|c| c.to_vec()).collect() }
    }

    pub fn eval(&self, alpha: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| alpha[var(l) - 1] == (l > 0)))
    }

    /// Number of clauses each variable occurs in, indexed from 0.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut p = vec![0; self.num_vars];
        for c in &self.clauses {
            for &l in c {
                p[var(l) - 1] += 1;
            }
        }
        p
    }

    /// The formula with its clause list doubled when some variable occurs
    /// fewer than twice.
    pub fn with_two_occurrences(&self) -> CnfFormula {
        if self.occurrences().iter().all(|&p| p >= 2) {
            return self.clone();
        }
        let mut clauses = self.clauses.clone();
        clauses.extend_from_slice(&self.clauses);
        CnfFormula { num_vars: self.num_vars, clauses }
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for c in &self.clauses {
            writeln!(f, "{} {} {} 0", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}

/// Parses DIMACS CNF. Clauses may span lines; `c` lines are comments.
pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut cur: Vec<Lit> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let toks: Vec<&str> = t.split_whitespace().collect();
            if header.is_some() {
                return Err(Error::Parse { line, msg: "second problem line".into() });
            }
            if toks.len() != 4 || toks[1] != "cnf" {
                return Err(Error::Parse { line, msg: "expected \"p cnf <vars> <clauses>\"".into() });
            }
            let nums = (toks[2].parse::<usize>(), toks[3].parse::<usize>());
            let (Ok(v), Ok(c)) = nums else {
                return Err(Error::Parse { line, msg: "bad counts in problem line".into() });
            };
            header = Some((v, c));
            continue;
        }
        let Some((nv, _)) = header else {
            return Err(Error::Parse { line, msg: "clause before problem line".into() });
        };
        for tok in t.split_whitespace() {
            let l: Lit = tok.parse().map_err(|_| Error::Parse { line, msg: format!("bad literal {tok:?}") })?;
            if l == 0 {
                clauses.push(std::mem::take(&mut cur));
            } else if var(l) > nv {
                return Err(Error::Parse { line, msg: format!("literal {l} exceeds {nv} variables") });
            } else {
                cur.push(l);
            }
        }
    }
    let Some((num_vars, nc)) = header else {
        return Err(Error::Parse { line: 1, msg: "missing problem line".into() });
    };
    if !cur.is_empty() {
        clauses.push(cur);
    }
    if clauses.len() != nc {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("problem line announces {nc} clauses, found {}", clauses.len()),
        });
    }
    Ok(Cnf { num_vars, clauses })
}

/// Rewrites to exact 3-CNF over distinct variables, equisatisfiable:
/// repeated literals are merged, tautologies dropped, short clauses padded
/// over fresh variables in both polarities, long clauses split along a chain
/// of fresh variables, an empty clause replaced by all eight clauses over
/// three fresh variables, and unused variables renumbered away.
pub fn regularize(f: &Cnf) -> Result<CnfFormula> {
    let mut next = f.num_vars;
    let mut fresh = || {
        next += 1;
        next as Lit
    };
    let mut out: Vec<Vec<Lit>> = Vec::new();
    for c in &f.clauses {
        let mut lits: Vec<Lit> = Vec::new();
        for &l in c {
            if !lits.contains(&l) {
                lits.push(l);
            }
        }
        if lits.iter().any(|&l| lits.contains(&-l)) {
            continue;
        }
        match lits.len() {
            0 => {
                let (a, b, c) = (fresh(), fresh(), fresh());
                for s in 0..8 {
                    let sg = |bit: i32, v: Lit| if s >> bit & 1 == 1 { -v } else { v };
                    out.push(vec![sg(0, a), sg(1, b), sg(2, c)]);
                }
            }
            1 => {
                let (y, z) = (fresh(), fresh());
                let l = lits[0];
                out.extend([vec![l, y, z], vec![l, y, -z], vec![l, -y, z], vec![l, -y, -z]]);
            }
            2 => {
                let y = fresh();
                out.push(vec![lits[0], lits[1], y]);
                out.push(vec![lits[0], lits[1], -y]);
            }
            3 => out.push(lits),
            m => {
                let mut y = fresh();
                out.push(vec![lits[0], lits[1], y]);
                for &l in &lits[2..m - 2] {
                    let y2 = fresh();
                    out.push(vec![-y, l, y2]);
                    y = y2;
                }
                out.push(vec![-y, lits[m - 2], lits[m - 1]]);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Refused("formula has no clauses after removing tautologies".into()));
    }
    let mut map = vec![0 as Lit; next + 1];
    let mut used = 0;
    for c in &out {
        for &l in c {
            if map[var(l)] == 0 {
                used += 1;
                map[var(l)] = used;
            }
        }
    }
    let clauses = out
        .into_iter()
        .map(|c| {
            let m = |l: Lit| map[var(l)] * l.signum();
            [m(c[0]), m(c[1]), m(c[2])]
        })
        .collect();
    CnfFormula::new(used as usize, clauses)
}

/// Largest variable count [`solve_truth_table`] accepts.
pub const TRUTH_TABLE_LIMIT: usize = 20;

/// First satisfying assignment in binary counting order, by truth table.
pub fn solve_truth_table(f: &Cnf) -> Result<Option<Vec<bool>>> {
    if f.num_vars > TRUTH_TABLE_LIMIT {
        return Err(Error::Cap { what: "truth-table variables", size: f.num_vars, cap: TRUTH_TABLE_LIMIT });
    }
    for m in 0u32..1 << f.num_vars {
        let alpha: Vec<bool> = (0..f.num_vars).map(|i| m >> i & 1 == 1).collect();
        if f.eval(&alpha) {
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}
