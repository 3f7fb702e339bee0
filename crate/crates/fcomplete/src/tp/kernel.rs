use crate::graph::Graph;
use crate::recognition::is_trivially_perfect;

/// A piece of the kernel with the map back to host vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubInstance {
    pub graph: Graph,
    pub back: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub parts: Vec<SubInstance>,
    pub k: usize,
}

impl Kernel {
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Disjoint union of the parts and its back-mapping.
    pub fn graph(&self) -> (Graph, Vec<usize>) {
        let mut g = Graph::empty(0);
        let mut back = Vec::new();
        for p in &self.parts {
            g = g.disjoint_union(&p.graph);
            back.extend(&p.back);
        }
        (g, back)
    }
}

pub trait Kernelizer {
    fn kernelize(&self, g: &Graph, k: usize) -> Kernel;
}

/// Splits into connected components and drops those already trivially perfect.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComponentKernel;

impl Kernelizer for ComponentKernel {
    fn kernelize(&self, g: &Graph, k: usize) -> Kernel {
        let parts = g
            .components()
            .into_iter()
            .map(|c| {
                let (graph, back) = g.induced(&c);
                SubInstance { graph, back }
            })
            .filter(|p| !is_trivially_perfect(&p.graph))
            .collect();
        Kernel { parts, k }
    }
}

pub fn kernelize(g: &Graph, k: usize) -> Kernel {
    ComponentKernel.kernelize(g, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(kernelize(&Graph::path(3), 2).is_empty());
        let g = Graph::cycle(4).disjoint_union(&Graph::complete(3));
        let kr = kernelize(&g, 3);
        assert_eq!(kr.parts.len(), 1);
        assert_eq!(kr.parts[0].graph, Graph::cycle(4));
        assert_eq!(kr.k, 3);
        let g = Graph::cycle(4).disjoint_union(&Graph::path(4));
        let kr = kernelize(&g, 3);
        assert_eq!(kr.parts.len(), 2);
        assert_eq!(kr.parts[1].back, vec![4, 5, 6, 7]);
        assert_eq!(kr.graph().0, g);
    }
}
