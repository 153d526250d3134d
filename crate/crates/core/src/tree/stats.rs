use core::fmt;
use core::str::FromStr;

use super::PlaneTree;
use crate::error::{Error, Result};

/// Whether the tree consisting of a single node counts as a leaf.
///
/// Ordered trees traditionally do not count it; the distinguished model
/// counts it as one old leaf (its generating function starts with `z u`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LeafConvention {
    SingleNodeNotLeaf,
    SingleNodeIsLeaf,
}

impl FromStr for LeafConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(LeafConvention::SingleNodeNotLeaf),
            "model" => Ok(LeafConvention::SingleNodeIsLeaf),
            other => Err(Error::Domain(alloc::format!(
                "unknown leaf convention `{other}` (expected `classical` or `model`)"
            ))),
        }
    }
}

/// Parameters of a single tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeStats {
    pub nodes: u64,
    pub leaves: u64,
    /// Leaves that are the leftmost child of their parent.
    pub old_leaves: u64,
    pub young_leaves: u64,
    /// Edges that are the first edge below their parent; one per internal node.
    pub leftmost_edges: u64,
    pub root_degree: u64,
    /// Edges on a longest root-to-leaf path.
    pub height_edges: u64,
    /// Nodes on the path from the root to the leftmost leaf, both included.
    pub leftmost_path_nodes: u64,
    /// Sum of the depths (in edges) of all nodes.
    pub pathlength_edges: u64,
    pub marked_edges: u64,
    pub convention: LeafConvention,
}

/// A selectable [`TreeStats`] field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parameter {
    Nodes,
    Leaves,
    OldLeaves,
    YoungLeaves,
    LeftmostEdges,
    RootDegree,
    Height,
    LeftmostPath,
    Pathlength,
    MarkedEdges,
}

impl Parameter {
    pub const ALL: [Parameter; 10] = [
        Parameter::Nodes,
        Parameter::Leaves,
        Parameter::OldLeaves,
        Parameter::YoungLeaves,
        Parameter::LeftmostEdges,
        Parameter::RootDegree,
        Parameter::Height,
        Parameter::LeftmostPath,
        Parameter::Pathlength,
        Parameter::MarkedEdges,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Parameter::Nodes => "nodes",
            Parameter::Leaves => "leaves",
            Parameter::OldLeaves => "old-leaves",
            Parameter::YoungLeaves => "young-leaves",
            Parameter::LeftmostEdges => "leftmost-edges",
            Parameter::RootDegree => "root-degree",
            Parameter::Height => "height",
            Parameter::LeftmostPath => "leftmost-path",
            Parameter::Pathlength => "pathlength",
            Parameter::MarkedEdges => "marked-edges",
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Parameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parameter::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Domain(alloc::format!("unknown parameter `{s}`")))
    }
}

impl TreeStats {
    pub fn get(&self, p: Parameter) -> u64 {
        match p {
            Parameter::Nodes => self.nodes,
            Parameter::Leaves => self.leaves,
            Parameter::OldLeaves => self.old_leaves,
            Parameter::YoungLeaves => self.young_leaves,
            Parameter::LeftmostEdges => self.leftmost_edges,
            Parameter::RootDegree => self.root_degree,
            Parameter::Height => self.height_edges,
            Parameter::LeftmostPath => self.leftmost_path_nodes,
            Parameter::Pathlength => self.pathlength_edges,
            Parameter::MarkedEdges => self.marked_edges,
        }
    }
}

#[derive(Default)]
struct Accum {
    nodes: u64,
    leaves: u64,
    old_leaves: u64,
    leftmost_edges: u64,
    height: u64,
    pathlength: u64,
    marked: u64,
}

fn walk<T: PlaneTree>(t: &T, depth: u64, acc: &mut Accum) {
    acc.nodes += 1;
    acc.pathlength += depth;
    acc.height = acc.height.max(depth);
    if t.rightmost_marked() {
        acc.marked += 1;
    }
    let children = t.children();
    if let Some(first) = children.first() {
        acc.leftmost_edges += 1;
        if first.is_leaf() {
            acc.old_leaves += 1;
        }
    }
    for c in children {
        if c.is_leaf() {
            acc.leaves += 1;
        }
        walk(c, depth + 1, acc);
    }
}

pub fn tree_stats<T: PlaneTree>(t: &T, convention: LeafConvention) -> TreeStats {
    let mut acc = Accum::default();
    walk(t, 0, &mut acc);
    if t.is_leaf() && convention == LeafConvention::SingleNodeIsLeaf {
        acc.leaves = 1;
        acc.old_leaves = 1;
    }
    let mut leftmost_path_nodes = 1;
    let mut node = t;
    while let Some(first) = node.children().first() {
        leftmost_path_nodes += 1;
        node = first;
    }
    TreeStats {
        nodes: acc.nodes,
        leaves: acc.leaves,
        old_leaves: acc.old_leaves,
        young_leaves: acc.leaves - acc.old_leaves,
        leftmost_edges: acc.leftmost_edges,
        root_degree: t.children().len() as u64,
        height_edges: acc.height,
        leftmost_path_nodes,
        pathlength_edges: acc.pathlength,
        marked_edges: acc.marked,
        convention,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::OrderedTree;

    #[test]
    fn path_and_star() {
        let p = tree_stats(&OrderedTree::path(4), LeafConvention::SingleNodeNotLeaf);
        assert_eq!(
            (
                p.nodes,
                p.leaves,
                p.height_edges,
                p.pathlength_edges,
                p.root_degree
            ),
            (4, 1, 3, 6, 1)
        );
        assert_eq!(p.leftmost_path_nodes, 4);
        let s = tree_stats(&OrderedTree::star(3), LeafConvention::SingleNodeNotLeaf);
        assert_eq!(
            (s.leaves, s.old_leaves, s.young_leaves, s.pathlength_edges),
            (3, 1, 2, 3)
        );
        assert_eq!(s.leftmost_edges, 1);
    }

    #[test]
    fn single_node_conventions() {
        let model = tree_stats(&OrderedTree::leaf(), LeafConvention::SingleNodeIsLeaf);
        assert_eq!(
            (
                model.nodes,
                model.leaves,
                model.old_leaves,
                model.young_leaves
            ),
            (1, 1, 1, 0)
        );
        let classical = tree_stats(&OrderedTree::leaf(), LeafConvention::SingleNodeNotLeaf);
        assert_eq!((classical.leaves, classical.old_leaves), (0, 0));
        assert_eq!(classical.leftmost_path_nodes, 1);
    }

    #[test]
    fn parameter_names_round_trip() {
        for p in Parameter::ALL {
            assert_eq!(p.name().parse::<Parameter>().unwrap(), p);
        }
    }
}
