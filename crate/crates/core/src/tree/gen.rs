use alloc::vec::Vec;

use super::{encode, DistTree, MarkedDistTree, MarkedTree, OrderedTree, PlaneTree};
use crate::error::{Error, Result};

/// All ordered forests by total node count `0..=max`, built by splitting off
/// the first tree: a forest of size `m` is a first tree of size `s` followed
/// by a forest of size `m - s`.
fn forests_up_to(max: usize) -> Vec<Vec<Vec<OrderedTree>>> {
    let mut trees: Vec<Vec<OrderedTree>> = alloc::vec![Vec::new()];
    let mut forests: Vec<Vec<Vec<OrderedTree>>> = alloc::vec![alloc::vec![Vec::new()]];
    for m in 1..=max {
        // Trees of size m hang a forest of size m - 1 under a root.
        trees.push(
            forests[m - 1]
                .iter()
                .map(|f| OrderedTree::new(f.clone()))
                .collect(),
        );
        let mut level = Vec::new();
        for s in 1..=m {
            for first in &trees[s] {
                for rest in &forests[m - s] {
                    let mut f = Vec::with_capacity(rest.len() + 1);
                    f.push(first.clone());
                    f.extend(rest.iter().cloned());
                    level.push(f);
                }
            }
        }
        forests.push(level);
    }
    forests
}

/// All ordered trees with `n` nodes in generation order (not canonical order).
pub fn shapes(n: usize) -> Result<Vec<OrderedTree>> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let forests = forests_up_to(n - 1);
    Ok(forests[n - 1]
        .iter()
        .map(|f| OrderedTree::new(f.clone()))
        .collect())
}

/// Every member of family `T` whose underlying ordered tree is `shape`.
///
/// The children's variants are combined independently; at each internal node
/// every distinguished index and (where allowed) both mark states are taken.
pub fn members_of_shape<T: PlaneTree>(shape: &OrderedTree) -> Vec<T> {
    let child_variants: Vec<Vec<T>> = shape.children().iter().map(members_of_shape).collect();
    let degree = child_variants.len();
    let dist_choices: Vec<Option<usize>> = if T::FAMILY.has_distinguished() && degree > 0 {
        (0..degree).map(Some).collect()
    } else {
        alloc::vec![None]
    };
    let markable =
        T::FAMILY.has_marks() && shape.children().last().is_some_and(|last| !last.is_leaf());
    let mark_choices: &[bool] = if markable { &[false, true] } else { &[false] };

    let mut combos: Vec<Vec<T>> = alloc::vec![Vec::new()];
    for variants in &child_variants {
        let mut next = Vec::with_capacity(combos.len() * variants.len());
        for prefix in &combos {
            for v in variants {
                let mut c = prefix.clone();
                c.push(v.clone());
                next.push(c);
            }
        }
        combos = next;
    }

    let mut out = Vec::new();
    for children in combos {
        for &d in &dist_choices {
            for &m in mark_choices {
                out.push(T::from_parts(children.clone(), d, m).expect("generated node is valid"));
            }
        }
    }
    out
}

/// Calls `f` on every member of family `T` with `n` nodes, shape by shape.
pub fn for_each_member<T: PlaneTree>(n: usize, mut f: impl FnMut(&T)) -> Result<()> {
    for shape in shapes(n)? {
        for t in members_of_shape::<T>(&shape) {
            f(&t);
        }
    }
    Ok(())
}

/// All members of family `T` with `n` nodes, in canonical order (byte order
/// of the canonical encoding).
pub fn generate<T: PlaneTree>(n: usize) -> Result<Vec<T>> {
    let mut all = Vec::new();
    for_each_member::<T>(n, |t| all.push(t.clone()))?;
    all.sort_by_cached_key(|t| encode(t));
    Ok(all)
}

pub fn gen_ordered(n: usize) -> Result<Vec<OrderedTree>> {
    generate(n)
}

pub fn gen_distinguished(n: usize) -> Result<Vec<DistTree>> {
    generate(n)
}

pub fn gen_marked(n: usize) -> Result<Vec<MarkedTree>> {
    generate(n)
}

pub fn gen_marked_dist(n: usize) -> Result<Vec<MarkedDistTree>> {
    generate(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::catalan;

    #[test]
    fn ordered_counts_are_catalan() {
        assert_eq!(gen_ordered(1).unwrap().len(), 1);
        assert_eq!(gen_ordered(4).unwrap().len(), 5);
        for n in 1..=8 {
            assert_eq!(
                num_bigint::BigInt::from(gen_ordered(n).unwrap().len()),
                catalan(n - 1)
            );
        }
        assert_eq!(gen_ordered(0), Err(Error::EmptyInput));
    }

    #[test]
    fn family_counts() {
        let dist: Vec<usize> = (1..=6)
            .map(|n| gen_distinguished(n).unwrap().len())
            .collect();
        assert_eq!(dist, [1, 1, 3, 10, 37, 146]);
        let marked: Vec<usize> = (1..=5).map(|n| gen_marked(n).unwrap().len()).collect();
        assert_eq!(marked, [1, 1, 3, 10, 36]);
        let md: Vec<usize> = (1..=5).map(|n| gen_marked_dist(n).unwrap().len()).collect();
        assert_eq!(md, [1, 1, 4, 17, 78]);
    }

    #[test]
    fn canonical_order_is_sorted_and_injective() {
        let trees = gen_marked_dist(5).unwrap();
        let codes: Vec<_> = trees.iter().map(encode).collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
    }
}
