use alloc::collections::BTreeMap;

use super::{
    for_each_member, tree_stats, DistTree, Family, LeafConvention, MarkedDistTree, MarkedTree,
    OrderedTree, Parameter, PlaneTree,
};
use crate::error::{Error, Result};

/// Whether the exhaustive-generation size limit applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guard {
    Enforce,
    Override,
}

impl Guard {
    pub fn check(self, family: Family, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let limit = family.guard_limit();
        if self == Guard::Enforce && n > limit {
            return Err(Error::ResourceLimit {
                family: family.name(),
                n,
                limit,
            });
        }
        Ok(())
    }
}

/// Sum and histogram of one parameter over all trees of a family with `n`
/// nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aggregate {
    pub family: Family,
    pub n: usize,
    pub parameter: Parameter,
    pub convention: LeafConvention,
    /// Number of trees.
    pub count: u64,
    /// Sum of the parameter over all trees.
    pub total: u128,
    /// Parameter value -> number of trees.
    pub distribution: BTreeMap<u64, u64>,
}

fn aggregate_of<T: PlaneTree>(
    n: usize,
    parameter: Parameter,
    convention: LeafConvention,
) -> Result<Aggregate> {
    let mut agg = Aggregate {
        family: T::FAMILY,
        n,
        parameter,
        convention,
        count: 0,
        total: 0,
        distribution: BTreeMap::new(),
    };
    for_each_member::<T>(n, |t| {
        let value = tree_stats(t, convention).get(parameter);
        agg.count += 1;
        agg.total += u128::from(value);
        *agg.distribution.entry(value).or_insert(0) += 1;
    })?;
    Ok(agg)
}

/// Exhaustive aggregate of `parameter` over `family` at size `n`.
pub fn aggregate(
    n: usize,
    family: Family,
    parameter: Parameter,
    convention: LeafConvention,
    guard: Guard,
) -> Result<Aggregate> {
    guard.check(family, n)?;
    match family {
        Family::Ordered => aggregate_of::<OrderedTree>(n, parameter, convention),
        Family::Distinguished => aggregate_of::<DistTree>(n, parameter, convention),
        Family::Marked => aggregate_of::<MarkedTree>(n, parameter, convention),
        Family::MarkedDist => aggregate_of::<MarkedDistTree>(n, parameter, convention),
    }
}

/// Number of trees of `family` with `n` nodes, by exhaustive generation.
pub fn count(family: Family, n: usize, guard: Guard) -> Result<u64> {
    aggregate(
        n,
        family,
        Parameter::Nodes,
        family.default_convention(),
        guard,
    )
    .map(|a| a.count)
}
