//! Static, batch-built kd-tree with exact ball range queries.
//!
//! The tree is stored implicitly: for any subtree occupying `items[lo..hi]`,
//! the splitting point sits at `lo + (hi - lo) / 2`, the left subtree fills
//! the slots before it and the right subtree the slots after. Split axes
//! cycle with depth. No child pointers are stored.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PointLabel<L, const D: usize = 2> {
    pub point: [f64; D],
    pub label: L,
}

impl<L, const D: usize> PointLabel<L, D> {
    pub fn new(point: [f64; D], label: L) -> Self {
        PointLabel { point, label }
    }
}

#[inline]
pub(crate) fn dist_sq<const D: usize>(a: &[f64; D], b: &[f64; D]) -> f64 {
    let mut acc = 0.0;
    for i in 0..D {
        let d = a[i] - b[i];
        acc += d * d;
    }
    acc
}

pub(crate) fn check_radius(r: f64) -> Result<f64> {
    if r >= 0.0 {
        Ok(r * r)
    } else {
        Err(Error::NegativeRadius(r))
    }
}

#[derive(Clone, Debug)]
pub struct KdTree<L, const D: usize = 2> {
    items: Vec<PointLabel<L, D>>,
}

impl<L, const D: usize> KdTree<L, D> {
    /// Builds a balanced tree. Medians are chosen by `(coordinate, input
    /// position)`, so equal coordinates resolve toward the earlier input.
    pub fn build(points: Vec<PointLabel<L, D>>) -> Self {
        assert!(
            points.iter().all(|p| p.point.iter().all(|v| v.is_finite())),
            "kd-tree points must be finite"
        );
        let mut keyed: Vec<(usize, PointLabel<L, D>)> = points.into_iter().enumerate().collect();
        build_rec(&mut keyed, 0);
        KdTree {
            items: keyed.into_iter().map(|(_, p)| p).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Stored points in layout order.
    pub fn iter(&self) -> std::slice::Iter<'_, PointLabel<L, D>> {
        self.items.iter()
    }

    pub fn depth(&self) -> usize {
        fn rec(n: usize) -> usize {
            if n == 0 {
                0
            } else {
                let mid = n / 2;
                1 + rec(mid).max(rec(n - mid - 1))
            }
        }
        rec(self.items.len())
    }

    /// All stored points within distance `r` of `center` (boundary inclusive).
    pub fn ball_query(&self, center: &[f64; D], r: f64) -> Result<Vec<&PointLabel<L, D>>> {
        let r_sq = check_radius(r)?;
        let mut out = Vec::new();
        self.for_each_within(center, r_sq, |p| out.push(p));
        Ok(out)
    }

    /// Calls `f` for every point with squared distance `<= r_sq`, in a fixed
    /// traversal order. Returns the number of tree nodes examined.
    pub fn for_each_within<'a>(&'a self, center: &[f64; D], r_sq: f64, mut f: impl FnMut(&'a PointLabel<L, D>)) -> usize {
        let mut visited = 0;
        self.visit(0, self.items.len(), 0, center, r_sq, &mut f, &mut visited);
        visited
    }

    #[allow(clippy::too_many_arguments)]
    fn visit<'a>(
        &'a self,
        lo: usize,
        hi: usize,
        axis: usize,
        center: &[f64; D],
        r_sq: f64,
        f: &mut impl FnMut(&'a PointLabel<L, D>),
        visited: &mut usize,
    ) {
        if lo >= hi {
            return;
        }
        *visited += 1;
        let mid = lo + (hi - lo) / 2;
        let node = &self.items[mid];
        if dist_sq(&node.point, center) <= r_sq {
            f(node);
        }
        let next = (axis + 1) % D;
        // Left points have coordinate <= split, right points >= split, so a
        // slab farther than r on either side cannot hold a match.
        let delta = center[axis] - node.point[axis];
        let slab_sq = delta * delta;
        if delta <= 0.0 || slab_sq <= r_sq {
            self.visit(lo, mid, next, center, r_sq, f, visited);
        }
        if delta >= 0.0 || slab_sq <= r_sq {
            self.visit(mid + 1, hi, next, center, r_sq, f, visited);
        }
    }
}

fn build_rec<L, const D: usize>(items: &mut [(usize, PointLabel<L, D>)], axis: usize) {
    if items.len() <= 1 {
        return;
    }
    let mid = items.len() / 2;
    items.select_nth_unstable_by(mid, |a, b| a.1.point[axis].total_cmp(&b.1.point[axis]).then(a.0.cmp(&b.0)));
    let (left, rest) = items.split_at_mut(mid);
    let next = (axis + 1) % D;
    build_rec(left, next);
    build_rec(&mut rest[1..], next);
}
