//! Fully persistent nearest-neighbor tree.
//!
//! Every insertion produces a new immutable version node. A version holds the
//! newly inserted point-label, a link to its predecessor version, its depth,
//! and a forest of static kd-trees. Points are organized by the logarithmic
//! method: for a version of depth `n`, slot `i` of the forest holds a tree of
//! exactly `2^i * M` points iff bit `i` of `(n - 1) / M` is set, and the
//! remaining `(n - 1) % M + 1` points are reached by walking predecessor
//! links (the lookback).
//!
//! Versions never change once built. Forest arrays and trees are shared
//! between versions through reference counting, so inserting under an old
//! version never disturbs any other version.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::Result;
use crate::kdtree::{check_radius, dist_sq, KdTree, PointLabel};

pub const DEFAULT_LOOKBACK: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpnntConfig {
    /// Capacity of the lookback chain, `M`.
    pub m: usize,
}

impl Default for FpnntConfig {
    fn default() -> Self {
        FpnntConfig { m: DEFAULT_LOOKBACK }
    }
}

impl FpnntConfig {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "lookback capacity must be at least 1");
        FpnntConfig { m }
    }
}

type Slots<L, const D: usize> = Vec<Option<Arc<KdTree<L, D>>>>;

/// The forest of static trees a version can see. Cloning shares the slot
/// array.
pub struct Forest<L, const D: usize = 2> {
    slots: Arc<Slots<L, D>>,
}

impl<L, const D: usize> Clone for Forest<L, D> {
    fn clone(&self) -> Self {
        Forest {
            slots: Arc::clone(&self.slots),
        }
    }
}

impl<L, const D: usize> Forest<L, D> {
    fn empty() -> Self {
        Forest {
            slots: Arc::new(Vec::new()),
        }
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn slot(&self, i: usize) -> Option<&Arc<KdTree<L, D>>> {
        self.slots.get(i).and_then(Option::as_ref)
    }

    /// Size of the tree in each slot, `None` for vacant slots.
    pub fn occupancy(&self) -> Vec<Option<usize>> {
        self.slots.iter().map(|s| s.as_ref().map(|t| t.len())).collect()
    }

    pub fn trees(&self) -> impl Iterator<Item = &Arc<KdTree<L, D>>> {
        self.slots.iter().flatten()
    }

    pub fn shares_slots_with(&self, other: &Forest<L, D>) -> bool {
        Arc::ptr_eq(&self.slots, &other.slots)
    }
}

struct NodeInner<L, const D: usize> {
    point_label: PointLabel<L, D>,
    predecessor: Option<FpnntNode<L, D>>,
    depth: usize,
    m: usize,
    forest: Forest<L, D>,
}

impl<L, const D: usize> Drop for NodeInner<L, D> {
    // Unlink long predecessor chains iteratively instead of recursing.
    fn drop(&mut self) {
        let mut next = self.predecessor.take();
        while let Some(node) = next {
            match Arc::try_unwrap(node.inner) {
                Ok(mut inner) => next = inner.predecessor.take(),
                Err(_) => break,
            }
        }
    }
}

/// Handle to one immutable version. Cloning is cheap.
pub struct FpnntNode<L, const D: usize = 2> {
    inner: Arc<NodeInner<L, D>>,
}

impl<L, const D: usize> Clone for FpnntNode<L, D> {
    fn clone(&self) -> Self {
        FpnntNode {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<L: std::fmt::Debug, const D: usize> std::fmt::Debug for FpnntNode<L, D> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FpnntNode")
            .field("depth", &self.inner.depth)
            .field("point_label", &self.inner.point_label)
            .field("forest", &self.inner.forest.occupancy())
            .finish()
    }
}

/// Work done by one range query.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryWork {
    /// Points checked by brute force along the lookback chain.
    pub lookback_points: usize,
    /// kd-tree nodes examined across the forest.
    pub tree_nodes: usize,
}

impl<L, const D: usize> FpnntNode<L, D> {
    pub fn new_root(p: PointLabel<L, D>, cfg: FpnntConfig) -> Self {
        assert!(cfg.m >= 1, "lookback capacity must be at least 1");
        FpnntNode {
            inner: Arc::new(NodeInner {
                point_label: p,
                predecessor: None,
                depth: 1,
                m: cfg.m,
                forest: Forest::empty(),
            }),
        }
    }

    pub fn depth(&self) -> usize {
        self.inner.depth
    }

    pub fn m(&self) -> usize {
        self.inner.m
    }

    pub fn point_label(&self) -> &PointLabel<L, D> {
        &self.inner.point_label
    }

    pub fn predecessor(&self) -> Option<&FpnntNode<L, D>> {
        self.inner.predecessor.as_ref()
    }

    pub fn forest(&self) -> &Forest<L, D> {
        &self.inner.forest
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn lookback_len(&self) -> usize {
        (self.inner.depth - 1) % self.inner.m + 1
    }

    /// Point-labels held along the lookback chain, newest first.
    pub fn lookback(&self) -> Vec<&PointLabel<L, D>> {
        self.lookback_iter().collect()
    }

    fn lookback_iter(&self) -> impl Iterator<Item = &PointLabel<L, D>> {
        let mut cursor = Some(self);
        std::iter::from_fn(move || {
            let node = cursor?;
            cursor = node.inner.predecessor.as_ref();
            Some(&node.inner.point_label)
        })
        .take(self.lookback_len())
    }

    /// Every point-label on the version chain within distance `r` of
    /// `center`: lookback hits newest first, then forest slots in ascending
    /// order.
    pub fn range_query(&self, center: &[f64; D], r: f64) -> Result<Vec<&PointLabel<L, D>>> {
        let r_sq = check_radius(r)?;
        let mut out = Vec::new();
        self.for_each_within(center, r_sq, |p| out.push(p));
        Ok(out)
    }

    /// Visitor form of [`range_query`](Self::range_query) taking a squared radius.
    pub fn for_each_within<'a>(&'a self, center: &[f64; D], r_sq: f64, mut f: impl FnMut(&'a PointLabel<L, D>)) -> QueryWork {
        let mut work = QueryWork::default();
        for p in self.lookback_iter() {
            work.lookback_points += 1;
            if dist_sq(&p.point, center) <= r_sq {
                f(p);
            }
        }
        for tree in self.inner.forest.trees() {
            work.tree_nodes += tree.for_each_within(center, r_sq, &mut f);
        }
        work
    }

    /// Every point-label on the version chain, newest first. Linear in depth.
    pub fn chain(&self) -> impl Iterator<Item = &PointLabel<L, D>> {
        let mut cursor = Some(self);
        std::iter::from_fn(move || {
            let node = cursor?;
            cursor = node.inner.predecessor.as_ref();
            Some(&node.inner.point_label)
        })
    }
}

impl<L: Clone, const D: usize> FpnntNode<L, D> {
    /// Creates the successor version holding `p` plus everything visible from
    /// `self`. `self` and every other version are unaffected.
    pub fn insert_node(&self, p: PointLabel<L, D>) -> FpnntNode<L, D> {
        self.insert_counted(p).0
    }

    /// Like [`insert_node`](Self::insert_node), also returning how many points
    /// were handed to a kd-tree build (zero when no merge happened).
    pub fn insert_counted(&self, p: PointLabel<L, D>) -> (FpnntNode<L, D>, usize) {
        let pred = &self.inner;
        let mut built = 0;
        let forest = if !pred.depth.is_multiple_of(pred.m) {
            pred.forest.clone()
        } else {
            // The predecessor's lookback is full: carry it, together with
            // the run of occupied low slots, into the first vacant slot.
            let mut points: Vec<PointLabel<L, D>> = self.lookback_iter().cloned().collect();
            let mut slots: Slots<L, D> = (*pred.forest.slots).clone();
            let mut k = 0;
            while k < slots.len() {
                match slots[k].take() {
                    Some(tree) => points.extend(tree.iter().cloned()),
                    None => break,
                }
                k += 1;
            }
            if k == slots.len() {
                slots.push(None);
            }
            built = points.len();
            debug_assert_eq!(built, (1 << k) * pred.m);
            slots[k] = Some(Arc::new(KdTree::build(points)));
            Forest { slots: Arc::new(slots) }
        };
        let node = FpnntNode {
            inner: Arc::new(NodeInner {
                point_label: p,
                predecessor: Some(self.clone()),
                depth: pred.depth + 1,
                m: pred.m,
                forest,
            }),
        };
        (node, built)
    }
}

/// Unit costs for logical memory accounting. Platform independent by
/// construction; they are not byte counts of the Rust structs.
pub mod cost {
    pub const NODE: u64 = 64;
    pub const SLOT_REF: u64 = 8;
    pub const POINT_LABEL: u64 = 24;
    pub const KD_NODE: u64 = 40;
}

/// Accumulates logical memory over any set of versions, counting each shared
/// forest array and each kd-tree once no matter how many versions see it.
#[derive(Debug, Default)]
pub struct MemoryLedger {
    forests: HashSet<usize>,
    trees: HashSet<usize>,
    total: u64,
}

impl MemoryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Adds one version node. Call once per node.
    pub fn add_node<L, const D: usize>(&mut self, node: &FpnntNode<L, D>) {
        self.total += cost::NODE + cost::POINT_LABEL;
        let forest = &node.inner.forest;
        if self.forests.insert(Arc::as_ptr(&forest.slots) as *const () as usize) {
            self.total += cost::SLOT_REF * forest.slots.len() as u64;
            for tree in forest.trees() {
                if self.trees.insert(Arc::as_ptr(tree) as *const () as usize) {
                    self.total += cost::KD_NODE * tree.len() as u64;
                }
            }
        }
    }
}

/// Logical size of a version together with all of its ancestors.
pub fn logical_size<L, const D: usize>(node: &FpnntNode<L, D>) -> u64 {
    let mut ledger = MemoryLedger::new();
    let mut cursor = Some(node);
    while let Some(n) = cursor {
        ledger.add_node(n);
        cursor = n.predecessor();
    }
    ledger.total()
}
