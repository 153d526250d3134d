//! Marked ordered trees, their combination with distinguished children, and
//! the walk that turns a marked tree into a skew Dyck path.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::series::{algebraic_branch_solve, PowerSeries, ZAPoly};
use crate::tree::{MarkedTree, PlaneTree};

/// `(1 - z - sqrt(1 - 6z + 5z^2)) / 2`: marked ordered trees by nodes.
pub fn marked_series(order: usize) -> Result<PowerSeries> {
    let root = PowerSeries::from_ints(&[1, -6, 5], order).sqrt()?;
    let half = BigRational::new(1.into(), 2.into());
    Ok(PowerSeries::from_ints(&[1, -1], order)
        .sub(&root)
        .scale(&half))
}

/// `A^2 - (1 - z) A + z - z^2`, the quadratic satisfied by [`marked_series`].
pub fn marked_quadratic() -> ZAPoly {
    ZAPoly::from_int_terms(&[(0, 2, 1), (0, 1, -1), (1, 1, 1), (1, 0, 1), (2, 0, -1)])
}

/// Right-hand side of the structural equation of marked trees,
/// `z + z/(1 - A) z + z/(1 - A) 2 (A - z)`: a root with a sequence of children
/// whose last child is either a leaf, or an internal node reached by a marked
/// or an unmarked edge.
pub fn marked_structural_rhs(a: &PowerSeries) -> Result<PowerSeries> {
    let n = a.order();
    let z = PowerSeries::z(n);
    let seq = PowerSeries::one(n).sub(a).reciprocal()?.mul(&z);
    let two = BigRational::from_integer(2.into());
    let last = z.add(&a.sub(&z).scale(&two));
    Ok(z.add(&seq.mul(&last)))
}

/// `-A^3 + 2A^2 - A + zA^2 + z - z^2`: marked trees with distinguished
/// children, from `A = z + z A / (1 - A)^2 + z (A - z) / (1 - A)^2`.
pub fn marked_dist_cubic() -> ZAPoly {
    ZAPoly::from_int_terms(&[
        (0, 3, -1),
        (0, 2, 2),
        (0, 1, -1),
        (1, 2, 1),
        (1, 0, 1),
        (2, 0, -1),
    ])
}

/// Marked trees with distinguished children by nodes: the branch of
/// [`marked_dist_cubic`] starting with `z`.
pub fn marked_dist_series(order: usize) -> Result<PowerSeries> {
    algebraic_branch_solve(&marked_dist_cubic(), &PowerSeries::z(order), order)
}

/// A step of a skew Dyck path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    /// `(1, 1)`
    U,
    /// `(1, -1)`
    D,
    /// `(-1, -1)`
    L,
}

impl Step {
    fn delta(self) -> (i64, i64) {
        match self {
            Step::U => (1, 1),
            Step::D => (1, -1),
            Step::L => (-1, -1),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
            Step::L => 'L',
        }
    }
}

/// A lattice path over `{U, D, L}`; not necessarily valid.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SkewPath {
    pub steps: Vec<Step>,
}

impl fmt::Display for SkewPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps
            .iter()
            .try_for_each(|s| write!(f, "{}", s.letter()))
    }
}

impl FromStr for SkewPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .char_indices()
            .map(|(i, c)| match c {
                'U' => Ok(Step::U),
                'D' => Ok(Step::D),
                'L' => Ok(Step::L),
                other => Err(Error::parse(i, alloc::format!("unknown step `{other}`"))),
            })
            .collect::<Result<_>>()?;
        Ok(SkewPath { steps })
    }
}

/// Why a path fails to be a skew Dyck path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkewViolation {
    /// The step at `index` goes below the x-axis.
    BelowAxis { index: usize },
    /// The step at `index` reuses or crosses an earlier segment.
    SelfIntersection { index: usize },
    /// The path ends at a height other than 0.
    EndHeight { height: i64 },
}

impl fmt::Display for SkewViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkewViolation::BelowAxis { index } => write!(f, "step {index} goes below the axis"),
            SkewViolation::SelfIntersection { index } => {
                write!(f, "step {index} meets an earlier segment")
            }
            SkewViolation::EndHeight { height } => write!(f, "path ends at height {height}"),
        }
    }
}

/// Checks nonnegativity, final height 0 and that no two unit segments share
/// a midpoint (which covers both overlapping and crossing diagonals); reports
/// the first violation.
pub fn skew_validate(p: &SkewPath) -> core::result::Result<(), SkewViolation> {
    let (mut x, mut y) = (0i64, 0i64);
    let mut midpoints = BTreeSet::new();
    for (index, step) in p.steps.iter().enumerate() {
        let (dx, dy) = step.delta();
        if y + dy < 0 {
            return Err(SkewViolation::BelowAxis { index });
        }
        if !midpoints.insert((2 * x + dx, 2 * y + dy)) {
            return Err(SkewViolation::SelfIntersection { index });
        }
        x += dx;
        y += dy;
    }
    if y != 0 {
        return Err(SkewViolation::EndHeight { height: y });
    }
    Ok(())
}

/// Depth-first walk: descending an edge is `U`, climbing back an unmarked
/// edge `D` and a marked edge `L`.
pub fn tree_to_skew<T: PlaneTree>(t: &T) -> SkewPath {
    fn walk<T: PlaneTree>(t: &T, out: &mut Vec<Step>) {
        let last = t.children().len().wrapping_sub(1);
        for (i, c) in t.children().iter().enumerate() {
            out.push(Step::U);
            walk(c, out);
            out.push(if i == last && t.rightmost_marked() {
                Step::L
            } else {
                Step::D
            });
        }
    }
    let mut steps = Vec::with_capacity(2 * t.node_count());
    walk(t, &mut steps);
    let path = SkewPath { steps };
    debug_assert_eq!(skew_validate(&path), Ok(()));
    path
}

/// Inverse of [`tree_to_skew`] on valid paths.
pub fn skew_to_tree(p: &SkewPath) -> Result<MarkedTree> {
    if let Err(v) = skew_validate(p) {
        return Err(Error::Domain(alloc::format!("not a skew Dyck path: {v}")));
    }
    // Stack of open nodes: (children so far, whether the last edge is marked).
    let mut stack: Vec<(Vec<MarkedTree>, bool)> = alloc::vec![(Vec::new(), false)];
    for &step in &p.steps {
        match step {
            Step::U => stack.push((Vec::new(), false)),
            Step::D | Step::L => {
                let (children, marked) = stack.pop().expect("valid path never closes the root");
                let node = MarkedTree::new(children, marked)?;
                let parent = stack.last_mut().expect("valid path never closes the root");
                parent.0.push(node);
                parent.1 = step == Step::L;
            }
        }
    }
    let (children, marked) = stack.pop().expect("root is open");
    MarkedTree::new(children, marked)
}

/// All skew Dyck paths with `semilength` up steps, in lexicographic order
/// `U < D < L`.
pub fn skew_paths(semilength: usize) -> Vec<SkewPath> {
    fn extend(
        cur: &mut Vec<Step>,
        pos: (i64, i64),
        ups: usize,
        semilength: usize,
        seen: &mut BTreeSet<(i64, i64)>,
        out: &mut Vec<SkewPath>,
    ) {
        if cur.len() == 2 * semilength {
            if pos.1 == 0 {
                out.push(SkewPath { steps: cur.clone() });
            }
            return;
        }
        let remaining = 2 * semilength - cur.len();
        for step in [Step::U, Step::D, Step::L] {
            if step == Step::U && ups == semilength {
                continue;
            }
            let (dx, dy) = step.delta();
            let y = pos.1 + dy;
            // Every remaining step changes the height by one.
            if y < 0 || y as usize > remaining - 1 {
                continue;
            }
            let mid = (2 * pos.0 + dx, 2 * pos.1 + dy);
            if !seen.insert(mid) {
                continue;
            }
            cur.push(step);
            let ups_next = ups + usize::from(step == Step::U);
            extend(cur, (pos.0 + dx, y), ups_next, semilength, seen, out);
            cur.pop();
            seen.remove(&mid);
        }
    }
    let mut out = Vec::new();
    extend(
        &mut Vec::new(),
        (0, 0),
        0,
        semilength,
        &mut BTreeSet::new(),
        &mut out,
    );
    out
}

/// A path as its step letters.
pub fn path_string(p: &SkewPath) -> String {
    alloc::format!("{p}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{gen_marked, OrderedTree};
    use alloc::vec;

    fn ints(s: &PowerSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| i64::try_from(c.to_integer()).unwrap())
            .collect()
    }

    #[test]
    fn marked_series_and_equations() {
        let a = marked_series(9).unwrap();
        assert_eq!(ints(&a), vec![0, 1, 1, 3, 10, 36, 137, 543, 2219, 9285]);
        assert!(marked_quadratic()
            .eval_series(&PowerSeries::z(9), &a)
            .is_zero());
        assert_eq!(marked_structural_rhs(&a).unwrap(), a);
    }

    #[test]
    fn marked_dist_series_values() {
        let a = marked_dist_series(10).unwrap();
        assert_eq!(
            ints(&a),
            vec![0, 1, 1, 4, 17, 78, 378, 1906, 9901, 52630, 284926]
        );
    }

    #[test]
    fn path_examples() {
        let p = OrderedTree::path(4);
        assert_eq!(path_string(&tree_to_skew(&p)), "UUUDDD");
        let top = MarkedTree::new(vec![MarkedTree::leaf()], false).unwrap();
        let mid = MarkedTree::new(vec![top], false).unwrap();
        let root = MarkedTree::new(vec![mid], true).unwrap();
        assert_eq!(path_string(&tree_to_skew(&root)), "UUUDDL");
        assert_eq!(tree_to_skew(&MarkedTree::leaf()), SkewPath::default());
    }

    #[test]
    fn validation() {
        let ok: SkewPath = "UUUDDL".parse().unwrap();
        assert_eq!(skew_validate(&ok), Ok(()));
        let bad: SkewPath = "UDL".parse().unwrap();
        assert_eq!(
            skew_validate(&bad),
            Err(SkewViolation::BelowAxis { index: 2 })
        );
        let overlap: SkewPath = "UL".parse().unwrap();
        assert_eq!(
            skew_validate(&overlap),
            Err(SkewViolation::SelfIntersection { index: 1 })
        );
        // Climbing back up the segment an L step just came down.
        let retrace: SkewPath = "UUDLUD".parse().unwrap();
        assert_eq!(
            skew_validate(&retrace),
            Err(SkewViolation::SelfIntersection { index: 4 })
        );
        assert_eq!(
            skew_validate(&"UU".parse().unwrap()),
            Err(SkewViolation::EndHeight { height: 2 })
        );
        assert!("UXD".parse::<SkewPath>().is_err());
    }

    #[test]
    fn bijection_small() {
        for n in 1..=6 {
            let trees = gen_marked(n).unwrap();
            let mut images: Vec<SkewPath> = trees.iter().map(tree_to_skew).collect();
            for (t, p) in trees.iter().zip(&images) {
                assert_eq!(&skew_to_tree(p).unwrap(), t);
            }
            images.sort();
            assert_eq!(images, skew_paths(n - 1));
        }
    }
}
