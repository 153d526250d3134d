//! Randomized structural properties over trees outside the exhaustive range.

use proptest::prelude::*;

use distree_core::marked::{skew_to_tree, skew_validate, tree_to_skew};
use distree_core::tree::{decode, encode, tree_stats};
use distree_core::{DistTree, LeafConvention, MarkedDistTree, MarkedTree, OrderedTree, PlaneTree};

/// A random tree shape with per-node choice seeds.
#[derive(Debug, Clone)]
struct Shape {
    seed: u32,
    children: Vec<Shape>,
}

fn shape() -> impl Strategy<Value = Shape> {
    let leaf = any::<u32>().prop_map(|seed| Shape {
        seed,
        children: Vec::new(),
    });
    leaf.prop_recursive(5, 40, 4, |inner| {
        (any::<u32>(), prop::collection::vec(inner, 1..4))
            .prop_map(|(seed, children)| Shape { seed, children })
    })
}

fn build<T: PlaneTree>(s: &Shape) -> T {
    let children: Vec<T> = s.children.iter().map(build).collect();
    let dist = (T::FAMILY.has_distinguished() && !children.is_empty())
        .then(|| s.seed as usize % children.len());
    let can_mark = children.last().is_some_and(|c| !c.is_leaf());
    let marked = T::FAMILY.has_marks() && can_mark && s.seed.is_multiple_of(3);
    T::from_parts(children, dist, marked).expect("valid by construction")
}

proptest! {
    #[test]
    fn encodings_round_trip(s in shape()) {
        let o: OrderedTree = build(&s);
        prop_assert_eq!(decode::<OrderedTree>(&encode(&o)).unwrap(), o);
        let d: DistTree = build(&s);
        prop_assert_eq!(decode::<DistTree>(&encode(&d)).unwrap(), d);
        let m: MarkedTree = build(&s);
        prop_assert_eq!(decode::<MarkedTree>(&encode(&m)).unwrap(), m);
        let md: MarkedDistTree = build(&s);
        prop_assert_eq!(decode::<MarkedDistTree>(&encode(&md)).unwrap(), md);
    }

    #[test]
    fn statistics_identities(s in shape()) {
        let t: DistTree = build(&s);
        let st = tree_stats(&t, LeafConvention::SingleNodeIsLeaf);
        prop_assert_eq!(st.leaves, st.old_leaves + st.young_leaves);
        // One leftmost edge per internal node.
        prop_assert_eq!(st.leftmost_edges, st.nodes - st.leaves);
        prop_assert!(st.height_edges < st.nodes);
        prop_assert!(st.leftmost_path_nodes <= st.height_edges + 1);
        prop_assert!(st.pathlength_edges >= st.nodes - 1);
        prop_assert!(st.pathlength_edges <= st.nodes * st.height_edges);
    }

    #[test]
    fn skew_walk_is_a_bijection(s in shape()) {
        let t: MarkedTree = build(&s);
        let p = tree_to_skew(&t);
        prop_assert_eq!(skew_validate(&p), Ok(()));
        prop_assert_eq!(p.steps.len(), 2 * (t.node_count() - 1));
        prop_assert_eq!(skew_to_tree(&p).unwrap(), t);
    }
}
