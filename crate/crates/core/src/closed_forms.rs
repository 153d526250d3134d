//! Binomial closed forms for the counting sequences, and the old/young leaf
//! table of ordered trees extracted from its algebraic generating function.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::series::{Coeff, Marker, MarkerPoly, MultiSeries, Series};

/// Binomial coefficient extended to all integer `a` by
/// `C(a, b) = a (a - 1) ... (a - b + 1) / b!`; zero for `b < 0`.
///
/// For `a >= 0` this is the usual coefficient (zero when `b > a`); for
/// negative `a` it is `(-1)^b C(b - a - 1, b)`, so that `C(-1, 0) = 1`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if a >= 0 && b > a {
        return BigInt::zero();
    }
    if a < 0 {
        let magnitude = binomial(b - a - 1, b);
        return if b % 2 == 0 { magnitude } else { -magnitude };
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

fn exact_div(num: BigInt, den: i64, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(&BigInt::from(den));
    if Zero::is_zero(&r) {
        Ok(q)
    } else {
        Err(Error::FormulaIntegrity(alloc::format!(
            "{what}: {num} is not divisible by {den}"
        )))
    }
}

fn node_count(n: usize) -> Result<i64> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    Ok(n as i64)
}

/// Number of trees with distinguished children and `n` nodes:
/// `(1/n) sum_{k=1..n} C(n, k) C(2n - 2 - k, k - 1)`.
pub fn dist_count(n: usize) -> Result<BigInt> {
    let n = node_count(n)?;
    let sum: BigInt = (1..=n)
        .map(|k| binomial(n, k) * binomial(2 * n - 2 - k, k - 1))
        .sum();
    exact_div(sum, n, "distinguished count")
}

/// Trees with distinguished children, `n` nodes and `j` leaves (the single
/// node counting as a leaf): `(1/n) C(n, j) C(2n - 2 - j, j - 1)`.
pub fn dist_count_by_leaves(n: usize, j: usize) -> Result<BigInt> {
    let n = node_count(n)?;
    let j = j as i64;
    if j < 1 || j > n {
        return Ok(BigInt::zero());
    }
    exact_div(
        binomial(n, j) * binomial(2 * n - 2 - j, j - 1),
        n,
        "distinguished count by leaves",
    )
}

/// Ordered trees with `n` nodes and `k` leftmost edges:
/// `(1/n) C(n, k) C(n - 2, k - 1)` for `n >= 2`; the single node has none.
pub fn leftmost_edge_count(n: usize, k: usize) -> Result<BigInt> {
    let n = node_count(n)?;
    let k = k as i64;
    if n == 1 {
        return Ok(BigInt::from(u8::from(k == 0)));
    }
    if k < 1 || k > n - 1 {
        return Ok(BigInt::zero());
    }
    exact_div(
        binomial(n, k) * binomial(n - 2, k - 1),
        n,
        "leftmost edge count",
    )
}

/// The variant `(1/n) C(n, k) C(n - 1, k n)`, which comes from extracting
/// `(y / (1 - y))^{kn}` instead of `(y / (1 - y))^k`. Kept only so the
/// exhaustive counts can refute it; returned as a rational because it need
/// not be an integer.
pub fn leftmost_edge_count_kn_variant(n: usize, k: usize) -> Result<BigRational> {
    let n = node_count(n)?;
    let k = k as i64;
    Ok(BigRational::new(
        binomial(n, k) * binomial(n - 1, k * n),
        BigInt::from(n),
    ))
}

pub fn catalan(m: usize) -> BigInt {
    let m = m as i64;
    binomial(2 * m, m) / BigInt::from(m + 1)
}

/// `(1/n) C(n, k) C(n, k - 1)`: ordered trees with `n` edges and `k` leaves.
pub fn narayana(n: usize, k: usize) -> Result<BigInt> {
    let n = node_count(n)?;
    let k = k as i64;
    exact_div(binomial(n, k) * binomial(n, k - 1), n, "narayana")
}

/// `(1 + z - u z - sqrt(1 - 2(1 + v) z + ((1 + v)^2 - 4u) z^2)) / (2z)` to
/// order `order`, with `z` counting edges, `u` old leaves and `v` young
/// leaves.
pub fn old_young_series(order: usize) -> Result<MultiSeries> {
    let int = MarkerPoly::integer;
    let u = MarkerPoly::marker(Marker::U);
    let v = MarkerPoly::marker(Marker::V);
    let one_v = int(1).plus(&v);
    let radicand = alloc::vec![
        int(1),
        one_v.times(&int(-2)),
        one_v.times(&one_v).minus(&u.times(&int(4))),
    ];
    let n = order + 1;
    let root = Series::from_prefix(radicand, &int(0), n).sqrt()?;
    let head = Series::from_prefix(alloc::vec![int(1), int(1).minus(&u)], &int(0), n);
    let half = MarkerPoly::constant(BigRational::new(1.into(), 2.into()));
    head.sub(&root).div_z_pow(1).map(|s| s.scale(&half))
}

/// `[z^n u^i v^j]` of [`old_young_series`]: ordered trees with `n` edges,
/// `i` old and `j` young leaves.
pub fn cde_old_young_table(n: usize) -> Result<BTreeMap<(u32, u32), BigInt>> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let series = old_young_series(n)?;
    let mut table = BTreeMap::new();
    for (mono, c) in series.coeff(n)?.terms() {
        if !c.is_integer() || c.is_negative() || mono[2] != 0 {
            return Err(Error::FormulaIntegrity(alloc::format!(
                "old/young coefficient {c} at {mono:?} is not a count"
            )));
        }
        table.insert((mono[0], mono[1]), c.to_integer());
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn extended_binomial() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(2, 3), big(0));
        assert_eq!(binomial(3, -1), big(0));
        assert_eq!(binomial(-1, 0), big(1));
        assert_eq!(binomial(-1, 3), big(-1));
        assert_eq!(binomial(-3, 2), big(6));
    }

    #[test]
    fn distinguished_sequence() {
        let seq: Vec<BigInt> = (1..=11).map(|n| dist_count(n).unwrap()).collect();
        let want = [1, 1, 3, 10, 37, 146, 602, 2563, 11181, 49720, 224540];
        assert_eq!(seq, want.iter().map(|&v| big(v)).collect::<Vec<_>>());
        assert_eq!(dist_count(0), Err(Error::EmptyInput));
    }

    #[test]
    fn leaves_refinement() {
        assert_eq!(dist_count_by_leaves(4, 2).unwrap(), big(6));
        assert_eq!(dist_count_by_leaves(4, 4).unwrap(), big(0));
        assert_eq!(dist_count_by_leaves(5, 3).unwrap(), big(20));
        assert_eq!(dist_count_by_leaves(1, 1).unwrap(), big(1));
        assert_eq!(dist_count_by_leaves(4, 0).unwrap(), big(0));
        for n in 1..=60 {
            let row: BigInt = (1..=n).map(|j| dist_count_by_leaves(n, j).unwrap()).sum();
            assert_eq!(row, dist_count(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn leftmost_edges() {
        assert_eq!(leftmost_edge_count(3, 1).unwrap(), big(1));
        assert_eq!(leftmost_edge_count(3, 2).unwrap(), big(1));
        assert_eq!(leftmost_edge_count(2, 1).unwrap(), big(1));
        let row4: BigInt = (1..4).map(|k| leftmost_edge_count(4, k).unwrap()).sum();
        assert_eq!(row4, big(5));
        for n in 2..=20 {
            let row: BigInt = (1..n).map(|k| leftmost_edge_count(n, k).unwrap()).sum();
            assert_eq!(row, catalan(n - 1));
        }
        assert!(Zero::is_zero(
            &leftmost_edge_count_kn_variant(3, 1).unwrap()
        ));
    }

    #[test]
    fn catalan_and_narayana() {
        assert_eq!(catalan(0), big(1));
        assert_eq!(catalan(3), big(5));
        assert_eq!(narayana(4, 2).unwrap(), big(6));
        assert_eq!(narayana(3, 2).unwrap(), big(3));
    }

    #[test]
    fn old_young_table() {
        let t1 = cde_old_young_table(1).unwrap();
        assert_eq!(t1.into_iter().collect::<Vec<_>>(), [((1, 0), big(1))]);
        let t3 = cde_old_young_table(3).unwrap();
        assert_eq!(t3.values().sum::<BigInt>(), big(5));
        assert_eq!(t3[&(1, 1)], big(2));
        for n in 1..=12 {
            let total: BigInt = cde_old_young_table(n).unwrap().values().sum();
            assert_eq!(total, catalan(n));
        }
    }
}
