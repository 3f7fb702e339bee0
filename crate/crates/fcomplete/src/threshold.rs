//! Threshold completion by chromatic coding: color the vertices, split every
//! color class, glue the per-class split partitions into global ones and
//! finish each with a chain completion.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::completion::{CompletionSet, Mode};
use crate::error::{Error, Result};
use crate::graph::{non_edges_within, Graph, VertexSet};
use crate::oracle::chain_dp;
use crate::par::{self, Exec};
use crate::recognition::{enumerate_split_partitions, is_split, is_threshold, SplitPartition};
use crate::tp::{Kernel, Kernelizer, SubInstance};

/// Largest t^n accepted by an exhaustive [`build_coloring_family`].
pub const EXHAUSTIVE_GUARD: u64 = 1_000_000;

const BATCH: usize = 512;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ColoringMode {
    #[default]
    Exhaustive,
    Randomized,
}

impl fmt::Display for ColoringMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColoringMode::Exhaustive => "exhaustive",
            ColoringMode::Randomized => "randomized",
        })
    }
}

impl std::str::FromStr for ColoringMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(ColoringMode::Exhaustive),
            "randomized" | "random" => Ok(ColoringMode::Randomized),
            _ => Err(Error::Contract(format!("unknown coloring mode `{s}`"))),
        }
    }
}

/// Colorings `vertex -> 0..t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringFamily {
    pub t: usize,
    pub mode: ColoringMode,
    pub colorings: Vec<Vec<u8>>,
}

impl ColoringFamily {
    pub fn len(&self) -> usize {
        self.colorings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colorings.is_empty()
    }

    /// Non-empty color classes of coloring `i`.
    pub fn classes(&self, i: usize) -> Vec<VertexSet> {
        classes_of(&self.colorings[i])
    }
}

fn classes_of(coloring: &[u8]) -> Vec<VertexSet> {
    let n = coloring.len();
    let mut by: Vec<VertexSet> = Vec::new();
    for (v, &c) in coloring.iter().enumerate() {
        let c = c as usize;
        while by.len() <= c {
            by.push(VertexSet::new(n));
        }
        by[c].insert(v);
    }
    by.retain(|s| !s.is_empty());
    by
}

/// Colors enough to properly color any graph with `k` edges.
pub fn exhaustive_colors(k: usize) -> usize {
    let mut t = 1;
    while (t + 1) * t / 2 <= k {
        t += 1;
    }
    t
}

/// ⌈2√k⌉, at least 2.
pub fn randomized_colors(k: usize) -> usize {
    crate::tp::ceil_sqrt(4 * k).max(2)
}

/// Lower bound on the probability that a uniform t-coloring is proper on a
/// fixed graph with `k` edges. Such a graph is d-degenerate with
/// d(d+1)/2 ≤ k; coloring in degeneracy order, a vertex with b earlier
/// neighbors avoids them with probability at least 1 − b/t, and the product
/// over back-degrees summing to k is smallest at (1 − d/t)^⌈k/d⌉.
pub fn colorful_probability_bound(k: usize, t: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut d = 1;
    while (d + 1) * (d + 2) / 2 <= k {
        d += 1;
    }
    if d >= t {
        return 0.0;
    }
    (1.0 - d as f64 / t as f64).powi(k.div_ceil(d) as i32)
}

/// Trials so that a fixed k-edge solution is colorful with probability ≥ 0.99.
pub fn default_trials(k: usize, t: usize) -> usize {
    let p = colorful_probability_bound(k, t);
    if p >= 1.0 {
        return 1;
    }
    if p <= 0.0 {
        return usize::MAX;
    }
    ((0.01f64).ln() / (1.0 - p).ln()).ceil().max(1.0) as usize
}

pub fn build_coloring_family(
    n: usize,
    k: usize,
    t: usize,
    mode: ColoringMode,
    trials: Option<usize>,
    seed: u64,
) -> Result<ColoringFamily> {
    if t == 0 || t > 256 {
        return Err(Error::Contract(format!("color count {t} outside 1..=256")));
    }
    match mode {
        ColoringMode::Exhaustive => {
            let total = (t as u64).checked_pow(n as u32).filter(|&c| c <= EXHAUSTIVE_GUARD);
            let Some(total) = total else {
                return Err(Error::Refused(format!(
                    "{t}^{n} colorings exceed the exhaustive guard of {EXHAUSTIVE_GUARD}; use randomized mode"
                )));
            };
            let mut colorings = Vec::with_capacity(total as usize);
            let mut cur = vec![0u8; n];
            for _ in 0..total {
                colorings.push(cur.clone());
                for c in cur.iter_mut() {
                    if (*c as usize) + 1 < t {
                        *c += 1;
                        break;
                    }
                    *c = 0;
                }
            }
            Ok(ColoringFamily { t, mode, colorings })
        }
        ColoringMode::Randomized => {
            if t < 2 {
                return Err(Error::Contract("randomized mode needs at least 2 colors".into()));
            }
            let r = trials.unwrap_or_else(|| default_trials(k, t));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let colorings = (0..r).map(|_| (0..n).map(|_| rng.gen_range(0..t) as u8).collect()).collect();
            Ok(ColoringFamily { t, mode, colorings })
        }
    }
}

/// Colorings up to renaming of colors: restricted growth strings with at most `t` colors.
struct CanonicalColorings {
    t: usize,
    cur: Option<Vec<u8>>,
}

impl CanonicalColorings {
    fn new(n: usize, t: usize) -> Self {
        CanonicalColorings { t, cur: Some(vec![0; n]) }
    }
}

impl Iterator for CanonicalColorings {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        let out = self.cur.take()?;
        let mut a = out.clone();
        let mut prefix_max = vec![0u8; a.len()];
        for i in 1..a.len() {
            prefix_max[i] = prefix_max[i - 1].max(a[i - 1]);
        }
        let mut i = a.len();
        while i > 1 {
            i -= 1;
            let cap = (prefix_max[i] as usize + 1).min(self.t - 1);
            if (a[i] as usize) < cap {
                a[i] += 1;
                for x in &mut a[i + 1..] {
                    *x = 0;
                }
                self.cur = Some(a);
                break;
            }
        }
        Some(out)
    }
}

/// Number of colorings with at most `t` nonempty unlabeled classes, saturating.
pub fn canonical_coloring_count(n: usize, t: usize) -> u128 {
    // Stirling numbers of the second kind, row by row.
    let mut s = vec![0u128; t + 1];
    s[0] = 1;
    for _ in 0..n {
        for j in (1..=t).rev() {
            s[j] = (j as u128).saturating_mul(s[j]).saturating_add(s[j - 1]);
        }
        s[0] = 0;
    }
    s[1..].iter().fold(0u128, |a, &b| a.saturating_add(b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionAssembly {
    /// Chosen split partition of each color class, in host vertex ids.
    pub parts: Vec<SplitPartition>,
    pub c: VertexSet,
    pub i: VertexSet,
}

fn class_partitions(g: &Graph, class: &VertexSet) -> Option<Vec<SplitPartition>> {
    let (h, back) = g.induced(class);
    if !is_split(&h) {
        return None;
    }
    let lift = |s: &VertexSet| VertexSet::from_iter(g.n(), s.iter().map(|v| back[v]));
    Some(
        enumerate_split_partitions(&h)
            .ok()?
            .iter()
            .map(|sp| SplitPartition { c: lift(&sp.c), i: lift(&sp.i) })
            .collect(),
    )
}

/// Cross product of per-class split partitions with globally independent I.
fn assemble(
    g: &Graph,
    per_class: &[Vec<SplitPartition>],
    max_cost: Option<usize>,
    cap: usize,
    emit: &mut dyn FnMut(&[usize], &VertexSet, &VertexSet),
) -> Result<usize> {
    fn rec(
        g: &Graph,
        per_class: &[Vec<SplitPartition>],
        max_cost: Option<usize>,
        cap: usize,
        depth: usize,
        picks: &mut Vec<usize>,
        c: &VertexSet,
        i: &VertexSet,
        count: &mut usize,
        emit: &mut dyn FnMut(&[usize], &VertexSet, &VertexSet),
    ) -> Result<()> {
        if depth == per_class.len() {
            *count += 1;
            if *count > cap {
                return Err(Error::Cap { what: "assemblies per coloring", size: *count, cap });
            }
            emit(picks, c, i);
            return Ok(());
        }
        for (j, sp) in per_class[depth].iter().enumerate() {
            if sp.i.iter().any(|v| !g.neighbors(v).is_disjoint(i)) {
                continue;
            }
            let c2 = c.union(&sp.c);
            if max_cost.is_some_and(|m| non_edges_within(g, &c2) > m) {
                continue;
            }
            picks.push(j);
            rec(g, per_class, max_cost, cap, depth + 1, picks, &c2, &i.union(&sp.i), count, emit)?;
            picks.pop();
        }
        Ok(())
    }
    let mut count = 0;
    let e = VertexSet::new(g.n());
    rec(g, per_class, max_cost, cap, 0, &mut Vec::new(), &e, &e, &mut count, emit)?;
    Ok(count)
}

/// All assemblies for one coloring; empty when some class is not split.
pub fn assemble_partitions(g: &Graph, coloring: &[u8]) -> Vec<PartitionAssembly> {
    let Some(per_class) = classes_of(coloring).iter().map(|cl| class_partitions(g, cl)).collect::<Option<Vec<_>>>()
    else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let _ = assemble(g, &per_class, None, usize::MAX, &mut |picks, c, i| {
        out.push(PartitionAssembly {
            parts: picks.iter().enumerate().map(|(d, &j)| per_class[d][j].clone()).collect(),
            c: c.clone(),
            i: i.clone(),
        });
    });
    out
}

/// Minimum completion that turns (C, V∖C) into a threshold split partition,
/// if it costs at most `budget`.
fn finish(g: &Graph, c: &VertexSet, budget: usize) -> Result<Option<(usize, Vec<(usize, usize)>)>> {
    let cost_c = non_edges_within(g, c);
    if cost_c > budget {
        return Ok(None);
    }
    let iv = c.complement().to_vec();
    let nbrs: Vec<VertexSet> = iv.iter().map(|&v| g.neighbors(v).clone()).collect();
    let Some((chain, finals)) = chain_dp(&nbrs, budget - cost_c)? else { return Ok(None) };
    let cv = c.to_vec();
    let mut pairs = Vec::with_capacity(cost_c + chain);
    for (a, &u) in cv.iter().enumerate() {
        for &v in &cv[a + 1..] {
            if !g.has_edge(u, v) {
                pairs.push((u, v));
            }
        }
    }
    for (j, &v) in iv.iter().enumerate() {
        for u in finals[j].difference(&nbrs[j]).iter() {
            pairs.push((u.min(v), u.max(v)));
        }
    }
    Ok(Some((cost_c + chain, pairs)))
}

/// Threshold kernel stand-in: the whole graph as one part.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityKernel;

impl Kernelizer for IdentityKernel {
    fn kernelize(&self, g: &Graph, k: usize) -> Kernel {
        Kernel { parts: vec![SubInstance { graph: g.clone(), back: (0..g.n()).collect() }], k }
    }
}

#[derive(Clone, Debug)]
pub struct ColoringConfig {
    pub mode: ColoringMode,
    /// Color count; defaults per mode.
    pub t: Option<usize>,
    /// Randomized trials; defaults to [`default_trials`].
    pub trials: Option<usize>,
    pub seed: u64,
    pub exec: Exec,
    /// Cap on canonical colorings in exhaustive mode.
    pub max_colorings: u128,
    pub max_assemblies: usize,
}

impl Default for ColoringConfig {
    fn default() -> Self {
        ColoringConfig {
            mode: ColoringMode::Exhaustive,
            t: None,
            trials: None,
            seed: 0,
            exec: Exec::default(),
            max_colorings: 2_000_000,
            max_assemblies: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThresholdStats {
    pub t: usize,
    pub colorings: usize,
    pub skipped_colorings: usize,
    pub assemblies: usize,
    pub distinct_partitions: usize,
    /// Successive improvements of the best cost.
    pub trace: Vec<usize>,
    /// False in randomized mode: a NO answer may be unlucky.
    pub exact: bool,
    pub wall_ms: u128,
}

impl fmt::Display for ThresholdStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "colors={}", self.t)?;
        writeln!(f, "colorings={}", self.colorings)?;
        writeln!(f, "skipped_colorings={}", self.skipped_colorings)?;
        writeln!(f, "assemblies={}", self.assemblies)?;
        writeln!(f, "distinct_partitions={}", self.distinct_partitions)?;
        let trace: Vec<String> = self.trace.iter().map(|c| c.to_string()).collect();
        writeln!(f, "best_cost_trace={}", trace.join(","))?;
        writeln!(f, "exact={}", self.exact)?;
        writeln!(f, "wall_ms={}", self.wall_ms)
    }
}

pub fn threshold_complete(g: &Graph, k: usize) -> Result<Option<CompletionSet>> {
    threshold_complete_with(g, k, &ColoringConfig::default()).map(|(s, _)| s)
}

pub fn threshold_complete_with(
    g: &Graph,
    k: usize,
    cfg: &ColoringConfig,
) -> Result<(Option<CompletionSet>, ThresholdStats)> {
    let start = Instant::now();
    let kernel = IdentityKernel.kernelize(g, k);
    let part = &kernel.parts[0];
    let (res, mut stats) = solve(&part.graph, kernel.k, cfg)?;
    stats.wall_ms = start.elapsed().as_millis();
    Ok((res.map(|s| s.mapped(&part.back)), stats))
}

fn solve(g: &Graph, k: usize, cfg: &ColoringConfig) -> Result<(Option<CompletionSet>, ThresholdStats)> {
    let n = g.n();
    let mut stats = ThresholdStats { exact: cfg.mode == ColoringMode::Exhaustive, ..Default::default() };
    if is_threshold(g) {
        stats.trace.push(0);
        return Ok((Some(CompletionSet::new(Mode::Addition)), stats));
    }
    if k == 0 {
        return Ok((None, stats));
    }
    let t = match cfg.mode {
        ColoringMode::Exhaustive => cfg.t.unwrap_or_else(|| exhaustive_colors(k)),
        ColoringMode::Randomized => cfg.t.unwrap_or_else(|| randomized_colors(k)),
    };
    stats.t = t;
    let mut colorings: Box<dyn Iterator<Item = Vec<u8>>> = match cfg.mode {
        ColoringMode::Exhaustive => {
            let count = canonical_coloring_count(n, t);
            if count > cfg.max_colorings {
                return Err(Error::Refused(format!(
                    "{count} colorings with {t} colors exceed the cap of {}; use randomized mode",
                    cfg.max_colorings
                )));
            }
            Box::new(CanonicalColorings::new(n, t.max(1)))
        }
        ColoringMode::Randomized => {
            let fam = build_coloring_family(n, k, t, ColoringMode::Randomized, cfg.trials, cfg.seed)?;
            Box::new(fam.colorings.into_iter())
        }
    };

    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut class_cache: HashMap<VertexSet, Option<Vec<SplitPartition>>> = HashMap::new();
    let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
    loop {
        let batch: Vec<Vec<u8>> = colorings.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        stats.colorings += batch.len();
        let bound = best.as_ref().map_or(k, |(c, _)| c - 1);

        // class partitions, shared across the batch
        let mut need: Vec<VertexSet> = Vec::new();
        let class_lists: Vec<Vec<VertexSet>> = batch.iter().map(|c| classes_of(c)).collect();
        for cls in &class_lists {
            for cl in cls {
                if !class_cache.contains_key(cl) && !need.contains(cl) {
                    need.push(cl.clone());
                }
            }
        }
        let found = par::map(cfg.exec, &need, |cl| class_partitions(g, cl));
        class_cache.extend(need.into_iter().zip(found));

        let per_coloring = par::map(cfg.exec, &class_lists, |cls| -> Result<Option<(usize, Vec<VertexSet>)>> {
            let Some(per_class) = cls.iter().map(|cl| class_cache[cl].clone()).collect::<Option<Vec<_>>>() else {
                return Ok(None);
            };
            let mut cs = Vec::new();
            let count = assemble(g, &per_class, Some(bound), cfg.max_assemblies, &mut |_, c, _| cs.push(c.clone()))?;
            Ok(Some((count, cs)))
        });
        let mut fresh = Vec::new();
        for r in per_coloring {
            match r? {
                None => stats.skipped_colorings += 1,
                Some((count, cs)) => {
                    stats.assemblies += count;
                    for c in cs {
                        if seen.insert(c.clone()) {
                            fresh.push(c);
                        }
                    }
                }
            }
        }
        stats.distinct_partitions += fresh.len();
        let evals = par::map(cfg.exec, &fresh, |c| finish(g, c, bound));
        for r in evals {
            if let Some((cost, pairs)) = r? {
                if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                    stats.trace.push(cost);
                    best = Some((cost, pairs));
                }
            }
        }
        if best.as_ref().is_some_and(|(c, _)| *c <= 1) {
            break;
        }
    }
    let Some((cost, pairs)) = best else { return Ok((None, stats)) };
    let s = CompletionSet::from_pairs(Mode::Addition, pairs);
    if s.len() != cost || s.len() > k || !is_threshold(&s.apply(g)?) {
        return Err(Error::Contract("threshold assembly produced an invalid completion".into()));
    }
    Ok((Some(s), stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::labeled_graphs;
    use crate::oracle::exact_completion;
    use crate::pattern::Pattern;

    const FAMILY: [Pattern; 3] = [Pattern::TwoK2, Pattern::C4, Pattern::P4];

    fn opt(g: &Graph, k: usize) -> Option<usize> {
        threshold_complete(g, k).unwrap().map(|s| s.len())
    }

    #[test]
    fn coloring_families() {
        let f = build_coloring_family(3, 1, 2, ColoringMode::Exhaustive, None, 0).unwrap();
        assert_eq!(f.len(), 8);
        assert!(f.colorings.iter().any(|c| c[0] != c[1]));
        let a = build_coloring_family(6, 4, 4, ColoringMode::Randomized, Some(11), 5).unwrap();
        let b = build_coloring_family(6, 4, 4, ColoringMode::Randomized, Some(11), 5).unwrap();
        assert_eq!(a.len(), 11);
        assert_eq!(a, b);
        assert!(build_coloring_family(30, 4, 3, ColoringMode::Exhaustive, None, 0).is_err());
        assert!(build_coloring_family(3, 4, 1, ColoringMode::Randomized, None, 0).is_err());
    }

    #[test]
    fn canonical_colorings_are_counted() {
        for n in 1..=7 {
            for t in 1..=4 {
                let all: Vec<_> = CanonicalColorings::new(n, t).collect();
                assert_eq!(all.len() as u128, canonical_coloring_count(n, t), "n={n} t={t}");
                let classes: HashSet<Vec<VertexSet>> = all.iter().map(|c| classes_of(c)).collect();
                assert_eq!(classes.len(), all.len());
            }
        }
    }

    #[test]
    fn color_counts() {
        assert_eq!(exhaustive_colors(0), 1);
        assert_eq!(exhaustive_colors(1), 2);
        assert_eq!(exhaustive_colors(3), 3);
        assert_eq!(exhaustive_colors(6), 4);
        assert_eq!(randomized_colors(4), 4);
        assert_eq!(randomized_colors(1), 2);
        assert!(colorful_probability_bound(4, 4) > 0.2);
        assert!(default_trials(4, 4) >= 16);
    }

    #[test]
    fn assembly_examples() {
        let k2 = Graph::complete(2);
        assert_eq!(assemble_partitions(&k2, &[0, 0]).len(), 3);
        let p3 = Graph::path(3);
        let a = assemble_partitions(&p3, &[0, 1, 2]);
        let brute = (0u64..8)
            .filter(|&m| p3.is_independent(&VertexSet::from_mask(3, m).complement()))
            .count();
        assert_eq!(a.len(), brute);
        assert!(assemble_partitions(&Graph::cycle(4), &[0, 0, 0, 0]).is_empty());
        for asm in a {
            assert!(p3.is_independent(&asm.i));
            assert_eq!(asm.c.union(&asm.i), p3.vertices());
        }
    }

    #[test]
    fn examples() {
        assert_eq!(opt(&Graph::complete(5), 0), Some(0));
        let paw = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(opt(&paw, 0), Some(0));
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(opt(&two_k2, 2), Some(2));
        assert_eq!(opt(&two_k2, 1), None);
        assert_eq!(opt(&Graph::path(4), 1), Some(1));
    }

    #[test]
    fn matches_oracle_up_to_five_vertices() {
        for n in 1..=5 {
            for g in labeled_graphs(n) {
                let want = exact_completion(&g, &FAMILY, 4, Mode::Addition).unwrap().map(|s| s.len());
                assert_eq!(opt(&g, 4), want, "{g:?}");
            }
        }
    }

    #[test]
    fn sequential_matches_parallel() {
        let g = Graph::cycle(6);
        let seq = ColoringConfig { exec: Exec::Sequential, ..Default::default() };
        let a = threshold_complete_with(&g, 6, &seq).unwrap().0.map(|s| s.len());
        assert_eq!(a, opt(&g, 6));
    }
}
