//! The four tree families, their exhaustive generation, per-tree parameters
//! and the canonical text encoding.

mod aggregate;
mod encode;
mod gen;
mod stats;

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

pub use aggregate::{aggregate, count, Aggregate, Guard};
pub use encode::{decode, encode};
pub use gen::{
    for_each_member, gen_distinguished, gen_marked, gen_marked_dist, gen_ordered, generate, shapes,
};
pub use stats::{tree_stats, LeafConvention, Parameter, TreeStats};

/// The tree families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Ordered (plane) trees.
    Ordered,
    /// Ordered trees with one distinguished child per internal node.
    Distinguished,
    /// Ordered trees whose rightmost edges may be marked when they do not
    /// lead to a leaf.
    Marked,
    /// Marked trees that also distinguish one child per internal node.
    MarkedDist,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Ordered,
        Family::Distinguished,
        Family::Marked,
        Family::MarkedDist,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ordered => "ordered",
            Family::Distinguished => "distinguished",
            Family::Marked => "marked",
            Family::MarkedDist => "marked-dist",
        }
    }

    pub fn has_distinguished(self) -> bool {
        matches!(self, Family::Distinguished | Family::MarkedDist)
    }

    pub fn has_marks(self) -> bool {
        matches!(self, Family::Marked | Family::MarkedDist)
    }

    /// Largest `n` generated exhaustively unless the guard is overridden.
    pub fn guard_limit(self) -> usize {
        if self.has_marks() {
            9
        } else {
            12
        }
    }

    /// The leaf convention used when none is requested: the single node is
    /// an (old) leaf in the distinguished families and not a leaf otherwise.
    pub fn default_convention(self) -> LeafConvention {
        if self.has_distinguished() {
            LeafConvention::SingleNodeIsLeaf
        } else {
            LeafConvention::SingleNodeNotLeaf
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.name() == s)
            .ok_or_else(|| Error::Domain(alloc::format!("unknown family `{s}`")))
    }
}

/// Common view of the tree types: an ordered sequence of children plus the
/// optional annotations of the family.
pub trait PlaneTree: Sized + Clone + Eq + fmt::Debug {
    const FAMILY: Family;

    fn children(&self) -> &[Self];

    /// Index of the distinguished child, present exactly at internal nodes of
    /// the distinguished families.
    fn distinguished(&self) -> Option<usize> {
        None
    }

    /// Whether the edge to the rightmost child is marked.
    fn rightmost_marked(&self) -> bool {
        false
    }

    /// Builds a node, enforcing the family invariants.
    fn from_parts(children: Vec<Self>, distinguished: Option<usize>, marked: bool) -> Result<Self>;

    fn is_leaf(&self) -> bool {
        self.children().is_empty()
    }

    fn node_count(&self) -> usize {
        1 + self.children().iter().map(Self::node_count).sum::<usize>()
    }

    /// The underlying ordered tree.
    fn shape(&self) -> OrderedTree {
        OrderedTree::new(self.children().iter().map(Self::shape).collect())
    }
}

fn check_distinguished(family: Family, degree: usize, d: Option<usize>) -> Result<()> {
    match (family.has_distinguished(), degree, d) {
        (false, _, None) => Ok(()),
        (false, _, Some(_)) => Err(Error::InvalidTree(alloc::format!(
            "{family} trees carry no distinguished child"
        ))),
        (true, 0, None) => Ok(()),
        (true, 0, Some(_)) => Err(Error::InvalidTree(
            "a leaf cannot have a distinguished child".into(),
        )),
        (true, _, None) => Err(Error::InvalidTree(
            "every internal node needs a distinguished child".into(),
        )),
        (true, k, Some(i)) if i >= k => Err(Error::InvalidTree(alloc::format!(
            "distinguished index {i} out of range for {k} children"
        ))),
        (true, _, Some(_)) => Ok(()),
    }
}

fn check_mark<T: PlaneTree>(family: Family, children: &[T], marked: bool) -> Result<()> {
    if !marked {
        return Ok(());
    }
    if !family.has_marks() {
        return Err(Error::InvalidTree(alloc::format!(
            "{family} trees carry no marks"
        )));
    }
    match children.last() {
        Some(last) if !last.is_leaf() => Ok(()),
        Some(_) => Err(Error::InvalidTree(
            "a marked rightmost edge must not lead to a leaf".into(),
        )),
        None => Err(Error::InvalidTree("a leaf has no edge to mark".into())),
    }
}

/// An ordered (plane) tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OrderedTree {
    children: Vec<OrderedTree>,
}

impl OrderedTree {
    pub fn new(children: Vec<OrderedTree>) -> Self {
        OrderedTree { children }
    }

    pub fn leaf() -> Self {
        OrderedTree::default()
    }

    /// The path with `n >= 1` nodes.
    pub fn path(n: usize) -> Self {
        let mut t = OrderedTree::leaf();
        for _ in 1..n {
            t = OrderedTree::new(alloc::vec![t]);
        }
        t
    }

    /// A root with `k` leaf children.
    pub fn star(k: usize) -> Self {
        OrderedTree::new(alloc::vec![OrderedTree::leaf(); k])
    }
}

impl PlaneTree for OrderedTree {
    const FAMILY: Family = Family::Ordered;

    fn children(&self) -> &[Self] {
        &self.children
    }

    fn from_parts(children: Vec<Self>, distinguished: Option<usize>, marked: bool) -> Result<Self> {
        check_distinguished(Self::FAMILY, children.len(), distinguished)?;
        check_mark(Self::FAMILY, &children, marked)?;
        Ok(OrderedTree { children })
    }
}

/// An ordered tree in which every internal node distinguishes one child.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistTree {
    children: Vec<DistTree>,
    distinguished: Option<usize>,
}

impl DistTree {
    pub fn new(children: Vec<DistTree>, distinguished: Option<usize>) -> Result<Self> {
        Self::from_parts(children, distinguished, false)
    }

    pub fn leaf() -> Self {
        DistTree {
            children: Vec::new(),
            distinguished: None,
        }
    }
}

impl PlaneTree for DistTree {
    const FAMILY: Family = Family::Distinguished;

    fn children(&self) -> &[Self] {
        &self.children
    }

    fn distinguished(&self) -> Option<usize> {
        self.distinguished
    }

    fn from_parts(children: Vec<Self>, distinguished: Option<usize>, marked: bool) -> Result<Self> {
        check_distinguished(Self::FAMILY, children.len(), distinguished)?;
        check_mark(Self::FAMILY, &children, marked)?;
        Ok(DistTree {
            children,
            distinguished,
        })
    }
}

/// An ordered tree whose rightmost edges may be marked when they lead to an
/// internal node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedTree {
    children: Vec<MarkedTree>,
    rightmost_marked: bool,
}

impl MarkedTree {
    pub fn new(children: Vec<MarkedTree>, rightmost_marked: bool) -> Result<Self> {
        Self::from_parts(children, None, rightmost_marked)
    }

    pub fn leaf() -> Self {
        MarkedTree {
            children: Vec::new(),
            rightmost_marked: false,
        }
    }

    /// Number of marked edges.
    pub fn marked_edges(&self) -> usize {
        usize::from(self.rightmost_marked)
            + self
                .children
                .iter()
                .map(MarkedTree::marked_edges)
                .sum::<usize>()
    }
}

impl PlaneTree for MarkedTree {
    const FAMILY: Family = Family::Marked;

    fn children(&self) -> &[Self] {
        &self.children
    }

    fn rightmost_marked(&self) -> bool {
        self.rightmost_marked
    }

    fn from_parts(children: Vec<Self>, distinguished: Option<usize>, marked: bool) -> Result<Self> {
        check_distinguished(Self::FAMILY, children.len(), distinguished)?;
        check_mark(Self::FAMILY, &children, marked)?;
        Ok(MarkedTree {
            children,
            rightmost_marked: marked,
        })
    }
}

/// A marked tree that also distinguishes one child per internal node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedDistTree {
    children: Vec<MarkedDistTree>,
    distinguished: Option<usize>,
    rightmost_marked: bool,
}

impl MarkedDistTree {
    pub fn new(
        children: Vec<MarkedDistTree>,
        distinguished: Option<usize>,
        rightmost_marked: bool,
    ) -> Result<Self> {
        Self::from_parts(children, distinguished, rightmost_marked)
    }

    pub fn leaf() -> Self {
        MarkedDistTree {
            children: Vec::new(),
            distinguished: None,
            rightmost_marked: false,
        }
    }
}

impl PlaneTree for MarkedDistTree {
    const FAMILY: Family = Family::MarkedDist;

    fn children(&self) -> &[Self] {
        &self.children
    }

    fn distinguished(&self) -> Option<usize> {
        self.distinguished
    }

    fn rightmost_marked(&self) -> bool {
        self.rightmost_marked
    }

    fn from_parts(children: Vec<Self>, distinguished: Option<usize>, marked: bool) -> Result<Self> {
        check_distinguished(Self::FAMILY, children.len(), distinguished)?;
        check_mark(Self::FAMILY, &children, marked)?;
        Ok(MarkedDistTree {
            children,
            distinguished,
            rightmost_marked: marked,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn distinguished_invariants() {
        assert!(DistTree::new(vec![], Some(0)).is_err());
        assert!(DistTree::new(vec![DistTree::leaf()], None).is_err());
        assert!(DistTree::new(vec![DistTree::leaf()], Some(1)).is_err());
        assert!(DistTree::new(vec![DistTree::leaf()], Some(0)).is_ok());
    }

    #[test]
    fn mark_invariants() {
        let leaf = MarkedTree::leaf;
        assert!(MarkedTree::new(vec![leaf()], true).is_err());
        assert!(MarkedTree::new(vec![], true).is_err());
        let inner = MarkedTree::new(vec![leaf()], false).unwrap();
        assert!(MarkedTree::new(vec![inner.clone(), leaf()], true).is_err());
        let t = MarkedTree::new(vec![leaf(), inner], true).unwrap();
        assert_eq!(t.marked_edges(), 1);
        assert!(OrderedTree::from_parts(vec![OrderedTree::leaf()], Some(0), false).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for fam in Family::ALL {
            assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
        }
        assert!("plane".parse::<Family>().is_err());
    }
}
