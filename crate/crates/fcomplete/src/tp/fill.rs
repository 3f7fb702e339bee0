use super::ceil_sqrt;
use crate::completion::CompletionSet;

/// Per-vertex fill counts of a completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillProfile {
    pub fills: Vec<usize>,
    pub threshold: usize,
}

impl FillProfile {
    pub fn new(n: usize, s: &CompletionSet, k: usize) -> Self {
        let mut fills = vec![0; n];
        for (u, v) in s.pairs() {
            fills[u] += 1;
            fills[v] += 1;
        }
        FillProfile { fills, threshold: ceil_sqrt(k) }
    }

    pub fn total(&self) -> usize {
        self.fills.iter().sum()
    }

    /// Vertices with fill above ⌈√k⌉.
    pub fn expensive(&self) -> Vec<usize> {
        (0..self.fills.len()).filter(|&v| self.fills[v] > self.threshold).collect()
    }

    pub fn is_cheap(&self, v: usize) -> bool {
        self.fills[v] <= self.threshold
    }

    /// Sum is 2|S| and at most 2⌈√k⌉ vertices are expensive.
    pub fn holds(&self, s: &CompletionSet) -> bool {
        self.total() == 2 * s.len() && self.expensive().len() <= 2 * self.threshold
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Mode;

    #[test]
    fn star_fill() {
        let s = CompletionSet::from_pairs(Mode::Addition, [(0, 1), (0, 2), (0, 3), (0, 4)]);
        let f = FillProfile::new(5, &s, 4);
        assert_eq!(f.fills, vec![4, 1, 1, 1, 1]);
        assert_eq!(f.expensive(), vec![0]);
        assert!(f.holds(&s));
    }
}
