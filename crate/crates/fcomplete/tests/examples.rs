use fcomplete::graph::{parse_graph, Graph, VertexSet};
use fcomplete::oracle::{exact_completion, exact_split_completion, SPLIT_FAMILY};
use fcomplete::pattern::{induced_copies, Pattern};
use fcomplete::pseudosplit::{build_augmented_instance, enumerate_c5_seeds, pseudosplit_complete};
use fcomplete::recognition::{build_ucd, enumerate_split_partitions, is_pseudosplit, is_threshold};
use fcomplete::reductions::{
    c4_completion_variable_gadget, complement_instance, reduce_to_c4_deletion, solution_from_assignment,
    CnfFormula, Reduction,
};
use fcomplete::threshold::{build_coloring_family, threshold_complete, ColoringMode};
use fcomplete::tp::tp_complete;
use fcomplete::Mode;

const TP: [Pattern; 2] = [Pattern::C4, Pattern::P4];

fn two_k2() -> Graph {
    Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()
}

fn paw() -> Graph {
    Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap()
}

fn opt(s: Option<fcomplete::CompletionSet>) -> Option<usize> {
    s.map(|s| s.len())
}

#[test]
fn oracle_examples() {
    assert_eq!(opt(exact_completion(&Graph::cycle(4), &TP, 1, Mode::Addition).unwrap()), Some(1));
    assert_eq!(opt(exact_completion(&Graph::path(4), &TP, 1, Mode::Addition).unwrap()), Some(1));
    assert_eq!(opt(exact_completion(&Graph::cycle(5), &SPLIT_FAMILY, 2, Mode::Addition).unwrap()), Some(2));
    assert_eq!(opt(exact_split_completion(&two_k2(), 1).unwrap()), Some(1));
}

#[test]
fn tp_examples() {
    assert_eq!(opt(tp_complete(&two_k2(), 0).unwrap()), Some(0));
    assert_eq!(opt(tp_complete(&Graph::path(4), 1).unwrap()), Some(1));
    let two_c4 = Graph::cycle(4).disjoint_union(&Graph::cycle(4));
    assert_eq!(opt(tp_complete(&two_c4, 2).unwrap()), Some(2));
    assert_eq!(opt(tp_complete(&two_c4, 1).unwrap()), None);
    assert_eq!(opt(tp_complete(&Graph::complete(5), 0).unwrap()), Some(0));
}

#[test]
fn decomposition_of_a_path() {
    let ucd = build_ucd(&Graph::path(3)).unwrap();
    assert_eq!(ucd.roots.len(), 1);
    let root = &ucd.nodes[ucd.roots[0]];
    assert_eq!(root.bag.to_vec(), vec![1]);
    assert_eq!(root.children.len(), 2);
}

#[test]
fn split_partitions_of_small_graphs() {
    assert_eq!(enumerate_split_partitions(&Graph::path(3)).unwrap().len(), 3);
    assert_eq!(enumerate_split_partitions(&Graph::complete(3)).unwrap().len(), 4);
    assert_eq!(enumerate_split_partitions(&Graph::complete(1)).unwrap().len(), 2);
}

#[test]
fn threshold_examples() {
    assert!(is_threshold(&paw()));
    assert!(!is_threshold(&two_k2()));
    assert_eq!(opt(threshold_complete(&paw(), 0).unwrap()), Some(0));
    assert_eq!(opt(threshold_complete(&two_k2(), 2).unwrap()), Some(2));
    assert_eq!(opt(threshold_complete(&two_k2(), 1).unwrap()), None);
    assert_eq!(opt(threshold_complete(&Graph::path(4), 1).unwrap()), Some(1));
    let fam = build_coloring_family(3, 1, 2, ColoringMode::Exhaustive, None, 0).unwrap();
    assert_eq!(fam.len(), 8);
    let a = build_coloring_family(6, 4, 4, ColoringMode::Randomized, Some(5), 3).unwrap();
    let b = build_coloring_family(6, 4, 4, ColoringMode::Randomized, Some(5), 3).unwrap();
    assert_eq!(a.len(), 5);
    assert_eq!(a.colorings, b.colorings);
}

#[test]
fn pseudosplit_examples() {
    let c5 = Graph::cycle(5);
    assert!(is_pseudosplit(&c5).is_some());
    assert_eq!(opt(pseudosplit_complete(&c5, 0).unwrap()), Some(0));
    assert_eq!(opt(pseudosplit_complete(&two_k2(), 1).unwrap()), Some(1));
    assert_eq!(enumerate_c5_seeds(&c5), vec![c5.vertices()]);
    assert!(enumerate_c5_seeds(&Graph::complete(5)).is_empty());
    assert_eq!(enumerate_c5_seeds(&Graph::empty(5)).len(), 1);
    let inst = build_augmented_instance(&c5, 2, &c5.vertices()).unwrap();
    assert_eq!(inst.budget.k, 2);
    assert_eq!(inst.graph.n(), 5 + 2 + 2);
    let p3 = Graph::from_edges(5, &[(0, 1), (1, 2)]).unwrap();
    let inst = build_augmented_instance(&p3, 4, &p3.vertices()).unwrap();
    assert_eq!(inst.budget.k, 1);
    assert!(inst.graph.is_clique(&VertexSet::from_iter(inst.graph.n(), 0..5)));
}

#[test]
fn c4_deletion_instance_from_text() {
    let f = CnfFormula::new(3, vec![[1, 2, 3]]).unwrap();
    let r = reduce_to_c4_deletion(&f);
    let g = parse_graph(&r.to_edge_list()).unwrap();
    assert_eq!((g.n(), g.m()), (24, 48));
    assert_eq!(opt(exact_completion(&g, &[Pattern::C4], 5, Mode::Deletion).unwrap()), Some(5));
    let c = complement_instance(&r);
    let s = solution_from_assignment(&f, &[true, true, true], Reduction::C4Deletion).unwrap();
    let flipped = fcomplete::CompletionSet::from_pairs(Mode::Addition, s.pairs());
    assert!(c.is_solved_by(&flipped).unwrap());
}

#[test]
fn tape_needs_four_p_additions() {
    let g = c4_completion_variable_gadget(2);
    assert_eq!(induced_copies(&g, Pattern::C4).len(), 8);
    assert_eq!(opt(exact_completion(&g, &[Pattern::C4], 8, Mode::Addition).unwrap()), Some(8));
}
