//! Exact single-nearest-neighbor queries under class exclusion rules.
//!
//! Two engines implement [`NeighborSearch`]: [`BruteForce`], a linear scan
//! kept as the reference, and [`KdIndex`], a forest of kd-trees (one over
//! all instances, one per class). Both compare squared Euclidean distances
//! computed by the same routine and break ties towards the lower instance
//! index, so their answers agree bit for bit.

use crate::dataset::{ClassId, Dataset};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighborResult {
    pub index: usize,
    pub distance: f64,
}

/// Which instances are eligible as the neighbor of a query. The query itself
/// is never eligible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExclusionRule {
    SelfOnly,
    /// Instances of the query's own class (near-hit).
    SameClassOnly(ClassId),
    /// Instances of any other class (near-miss).
    OtherClassOnly(ClassId),
}

impl ExclusionRule {
    pub fn same_class(ds: &Dataset, query: usize) -> Self {
        ExclusionRule::SameClassOnly(ds.class_of(query))
    }

    pub fn other_class(ds: &Dataset, query: usize) -> Self {
        ExclusionRule::OtherClassOnly(ds.class_of(query))
    }
}

/// Selects the neighbor engine used by the measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    KdTree,
    BruteForce,
}

pub trait NeighborSearch: Sync {
    fn dataset(&self) -> &Dataset;

    fn nearest(&self, query: usize, rule: ExclusionRule) -> Result<NeighborResult>;
}

/// Builds the engine for `backend` over `ds`.
pub fn searcher(ds: &Dataset, backend: Backend) -> Box<dyn NeighborSearch + '_> {
    match backend {
        Backend::KdTree => Box::new(KdIndex::build(ds)),
        Backend::BruteForce => Box::new(BruteForce::new(ds)),
    }
}

/// One-shot query through a freshly built [`KdIndex`].
pub fn nearest(ds: &Dataset, query: usize, rule: ExclusionRule) -> Result<NeighborResult> {
    KdIndex::build(ds).nearest(query, rule)
}

/// One-shot query through a linear scan.
pub fn nearest_bruteforce(
    ds: &Dataset,
    query: usize,
    rule: ExclusionRule,
) -> Result<NeighborResult> {
    BruteForce::new(ds).nearest(query, rule)
}

#[inline]
pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let t = x - y;
        acc += t * t;
    }
    acc
}

/// Running minimum over `(squared distance, index)` pairs, lexicographic.
#[derive(Debug, Clone, Copy)]
struct Best {
    sq: f64,
    index: usize,
}

impl Best {
    const NONE: Best = Best {
        sq: f64::INFINITY,
        index: usize::MAX,
    };

    #[inline]
    fn offer(&mut self, sq: f64, index: usize) {
        if sq < self.sq || (sq == self.sq && index < self.index) {
            self.sq = sq;
            self.index = index;
        }
    }

    fn into_result(self, query: usize, rule: ExclusionRule) -> Result<NeighborResult> {
        if self.index == usize::MAX {
            return Err(Error::EmptyCandidates { query, rule });
        }
        Ok(NeighborResult {
            index: self.index,
            distance: self.sq.sqrt(),
        })
    }
}

fn validate(ds: &Dataset, query: usize, rule: ExclusionRule) -> Result<()> {
    if query >= ds.n() {
        return Err(Error::QueryOutOfRange {
            index: query,
            n: ds.n(),
        });
    }
    match rule {
        ExclusionRule::SelfOnly => Ok(()),
        ExclusionRule::SameClassOnly(c) | ExclusionRule::OtherClassOnly(c) => {
            if c == ds.class_of(query) {
                Ok(())
            } else {
                Err(Error::RuleLabelMismatch { query, rule })
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BruteForce<'a> {
    ds: &'a Dataset,
}

impl<'a> BruteForce<'a> {
    pub fn new(ds: &'a Dataset) -> Self {
        Self { ds }
    }
}

impl NeighborSearch for BruteForce<'_> {
    fn dataset(&self) -> &Dataset {
        self.ds
    }

    fn nearest(&self, query: usize, rule: ExclusionRule) -> Result<NeighborResult> {
        validate(self.ds, query, rule)?;
        let q = self.ds.row(query);
        let mut best = Best::NONE;
        for (j, row) in self.ds.rows().enumerate() {
            let eligible = j != query
                && match rule {
                    ExclusionRule::SelfOnly => true,
                    ExclusionRule::SameClassOnly(c) => self.ds.class_of(j) == c,
                    ExclusionRule::OtherClassOnly(c) => self.ds.class_of(j) != c,
                };
            if eligible {
                best.offer(squared_distance(q, row), j);
            }
        }
        best.into_result(query, rule)
    }
}

const LEAF_SIZE: usize = 8;

#[derive(Debug, Clone)]
enum Node {
    Leaf {
        start: usize,
        end: usize,
    },
    Split {
        axis: usize,
        value: f64,
        left: usize,
        right: usize,
    },
}

/// Static kd-tree over a subset of a dataset's rows.
#[derive(Debug, Clone)]
struct KdTree {
    order: Vec<usize>,
    nodes: Vec<Node>,
}

impl KdTree {
    fn build(ds: &Dataset, mut order: Vec<usize>) -> Self {
        let mut nodes = Vec::new();
        let len = order.len();
        if len > 0 {
            Self::build_node(ds, &mut order, 0, len, &mut nodes);
        }
        Self { order, nodes }
    }

    fn build_node(
        ds: &Dataset,
        order: &mut [usize],
        start: usize,
        end: usize,
        nodes: &mut Vec<Node>,
    ) -> usize {
        let id = nodes.len();
        nodes.push(Node::Leaf { start, end });
        if end - start <= LEAF_SIZE {
            return id;
        }

        // Split on the axis of widest spread; a zero spread means every
        // point in the range coincides and the range stays a leaf.
        let slice = &mut order[start..end];
        let mut axis = 0;
        let mut spread = 0.0;
        for k in 0..ds.d() {
            let (lo, hi) = slice
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| {
                    let v = ds.row(i)[k];
                    (lo.min(v), hi.max(v))
                });
            if hi - lo > spread {
                spread = hi - lo;
                axis = k;
            }
        }
        if spread == 0.0 {
            return id;
        }

        let mid = slice.len() / 2;
        slice.select_nth_unstable_by(mid, |&a, &b| ds.row(a)[axis].total_cmp(&ds.row(b)[axis]));
        let value = ds.row(slice[mid])[axis];

        let left = Self::build_node(ds, order, start, start + mid, nodes);
        let right = Self::build_node(ds, order, start + mid, end, nodes);
        nodes[id] = Node::Split {
            axis,
            value,
            left,
            right,
        };
        id
    }

    fn search(&self, ds: &Dataset, query: usize, best: &mut Best) {
        if !self.nodes.is_empty() {
            self.search_node(ds, 0, ds.row(query), query, best);
        }
    }

    fn search_node(&self, ds: &Dataset, node: usize, q: &[f64], query: usize, best: &mut Best) {
        match self.nodes[node] {
            Node::Leaf { start, end } => {
                for &j in &self.order[start..end] {
                    if j != query {
                        best.offer(squared_distance(q, ds.row(j)), j);
                    }
                }
            }
            Node::Split {
                axis,
                value,
                left,
                right,
            } => {
                let diff = q[axis] - value;
                let (near, far) = if diff < 0.0 {
                    (left, right)
                } else {
                    (right, left)
                };
                self.search_node(ds, near, q, query, best);
                // Every point beyond the plane is at least |diff| away on this
                // axis. Equality must still be explored for the index tie-break.
                if diff * diff <= best.sq {
                    self.search_node(ds, far, q, query, best);
                }
            }
        }
    }
}

/// Exact accelerated index: a kd-tree over all rows plus one per class.
///
/// Immutable once built; queries take `&self` and may run concurrently.
#[derive(Debug, Clone)]
pub struct KdIndex<'a> {
    ds: &'a Dataset,
    all: KdTree,
    per_class: Vec<KdTree>,
}

impl<'a> KdIndex<'a> {
    pub fn build(ds: &'a Dataset) -> Self {
        let all = KdTree::build(ds, (0..ds.n()).collect());
        let mut members = vec![Vec::new(); ds.n_classes()];
        for (i, c) in ds.classes().iter().enumerate() {
            members[c.0].push(i);
        }
        let per_class = members.into_iter().map(|m| KdTree::build(ds, m)).collect();
        Self { ds, all, per_class }
    }
}

impl NeighborSearch for KdIndex<'_> {
    fn dataset(&self) -> &Dataset {
        self.ds
    }

    fn nearest(&self, query: usize, rule: ExclusionRule) -> Result<NeighborResult> {
        validate(self.ds, query, rule)?;
        let mut best = Best::NONE;
        match rule {
            ExclusionRule::SelfOnly => self.all.search(self.ds, query, &mut best),
            ExclusionRule::SameClassOnly(c) => {
                self.per_class[c.0].search(self.ds, query, &mut best)
            }
            ExclusionRule::OtherClassOnly(c) => {
                for (k, tree) in self.per_class.iter().enumerate() {
                    if k != c.0 {
                        tree.search(self.ds, query, &mut best);
                    }
                }
            }
        }
        best.into_result(query, rule)
    }
}
