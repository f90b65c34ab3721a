//! Exhaustive search over merge trees.
//!
//! For a merge tree, the shared information of a collection is a sum over
//! internal nodes `S = L ⊔ R` of `min_k p(S)·I(A_k; {L, R} | S)`, and each
//! such term is `G_k(L) + G_k(R) − G_k(S)` with
//! `G_k(T) = −p(T)·H(A_k | Y ∈ T)`. The cost of a subtree therefore depends
//! only on its leaf set, and the best tree over a set `S` is the best split of
//! `S` plus the best trees over both halves. [`SearchStrategy::SubsetDp`] runs
//! that recursion over all subsets of the support in `O(3^n)` steps;
//! [`SearchStrategy::TreeEnumeration`] scores every tree and serves as a
//! cross-check.

use rayon::prelude::*;

use crate::descriptor::{enumerate_merge_trees, MergeTree, DEFAULT_MAX_ALPHABET};
use crate::distribution::{plog, JointDistribution, SourceSet};
use crate::error::{Error, Result};
use crate::partition::Block;

/// Hard limit on the support size searched, whatever the configured cap.
/// The subset recursion keeps two tables of `2^n` entries.
pub const MAX_SEARCH_ALPHABET: usize = 20;

/// Values within this distance of the best are ties.
pub(crate) const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Best split per subset of outcomes, `O(3^n)`. Among equally good splits
    /// of a subset, the one whose part holding the least outcome is smallest
    /// as a bitmask wins.
    #[default]
    SubsetDp,
    /// Scores all `(2n−3)!!` trees. Ties go to the tree whose sorted list of
    /// cluster bitmasks is lexicographically smallest.
    TreeEnumeration,
}

/// Limits and method for descriptor searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest number of positive-mass target outcomes accepted.
    pub max_alphabet: usize,
    pub strategy: SearchStrategy,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            max_alphabet: DEFAULT_MAX_ALPHABET,
            strategy: SearchStrategy::default(),
        }
    }
}

impl SearchConfig {
    pub fn with_max_alphabet(mut self, max_alphabet: usize) -> SearchConfig {
        self.max_alphabet = max_alphabet;
        self
    }

    pub fn with_strategy(mut self, strategy: SearchStrategy) -> SearchConfig {
        self.strategy = strategy;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Goal {
    /// Shared information: minimum over sources, minimized over trees.
    Min,
    /// Union information: maximum over sources, maximized over trees.
    Max,
}

impl Goal {
    fn better(self, candidate: f64, best: f64) -> bool {
        match self {
            Goal::Min => candidate < best - TIE_TOLERANCE,
            Goal::Max => candidate > best + TIE_TOLERANCE,
        }
    }

    fn worst(self) -> f64 {
        match self {
            Goal::Min => f64::INFINITY,
            Goal::Max => f64::NEG_INFINITY,
        }
    }

    fn pick(self, a: f64, b: f64) -> f64 {
        match self {
            Goal::Min => a.min(b),
            Goal::Max => a.max(b),
        }
    }
}

/// `G_k` for every subset of the support, for every source of a collection.
struct Objective {
    goal: Goal,
    support: Vec<usize>,
    g: Vec<Vec<f64>>,
}

impl Objective {
    fn new(
        d: &JointDistribution,
        sources: &[SourceSet],
        support: &[usize],
        goal: Goal,
    ) -> Result<Objective> {
        let m = support.len();
        let mut g = Vec::with_capacity(sources.len());
        for &s in sources {
            let table = d.source_table(s)?;
            let values = table.n_values();
            // columns of the support outcomes, value-major
            let cols: Vec<Vec<f64>> = support
                .iter()
                .map(|&y| (0..values).map(|a| table.mass(a, y)).collect())
                .collect();
            let gk: Vec<f64> = (0..1u64 << m)
                .into_par_iter()
                .map_init(
                    || vec![0.0; values],
                    |acc, mask| {
                        acc.iter_mut().for_each(|x| *x = 0.0);
                        for i in Block::from_bits(mask).iter() {
                            for (x, c) in acc.iter_mut().zip(&cols[i]) {
                                *x += c;
                            }
                        }
                        let total: f64 = acc.iter().sum();
                        plog(total) - acc.iter().map(|&x| plog(x)).sum::<f64>()
                    },
                )
                .collect();
            g.push(gk);
        }
        Ok(Objective {
            goal,
            support: support.to_vec(),
            g,
        })
    }

    /// Weighted term of merging `l` and `r`, reduced over sources.
    fn cost(&self, l: u64, r: u64) -> f64 {
        let s = (l | r) as usize;
        let (l, r) = (l as usize, r as usize);
        let v = self
            .g
            .iter()
            .map(|g| g[l] + g[r] - g[s])
            .fold(self.goal.worst(), |a, b| self.goal.pick(a, b));
        v.max(0.0)
    }

    fn subset_dp(&self) -> MergeTree {
        let m = self.support.len();
        let size = 1usize << m;
        let mut f = vec![0.0f64; size];
        let mut split = vec![0u64; size];
        for c in 2..=m as u32 {
            let layer: Vec<u64> = (1..size as u64).filter(|s| s.count_ones() == c).collect();
            let best: Vec<(f64, u64)> = layer
                .par_iter()
                .map(|&s| {
                    let low = s & s.wrapping_neg();
                    let rest = s ^ low;
                    let mut best = (self.goal.worst(), 0u64);
                    let mut sub = 0u64;
                    while sub != rest {
                        let l = low | sub;
                        let r = s ^ l;
                        let v = self.cost(l, r) + f[l as usize] + f[r as usize];
                        if self.goal.better(v, best.0) {
                            best = (v, l);
                        }
                        sub = sub.wrapping_sub(rest) & rest;
                    }
                    best
                })
                .collect();
            for (&s, (v, l)) in layer.iter().zip(best) {
                f[s as usize] = v;
                split[s as usize] = l;
            }
        }
        self.rebuild((size - 1) as u64, &split)
    }

    fn rebuild(&self, s: u64, split: &[u64]) -> MergeTree {
        if s.count_ones() == 1 {
            return MergeTree::Leaf(self.support[s.trailing_zeros() as usize]);
        }
        let l = split[s as usize];
        MergeTree::node(self.rebuild(l, split), self.rebuild(s ^ l, split))
    }

    /// Score of a tree over local leaves, with its leaf mask.
    fn score(&self, t: &MergeTree) -> (u64, f64) {
        match t {
            MergeTree::Leaf(i) => (1 << i, 0.0),
            MergeTree::Node(a, b) => {
                let (la, va) = self.score(a);
                let (lb, vb) = self.score(b);
                (la | lb, va + vb + self.cost(la, lb))
            }
        }
    }

    fn enumerate(&self) -> Result<MergeTree> {
        let m = self.support.len();
        let trees = enumerate_merge_trees(m, MAX_SEARCH_ALPHABET)?;
        let total = trees.total();
        let value = |i: u64| self.score(&trees.get(i)).1;
        let best = (0..total)
            .into_par_iter()
            .map(value)
            .reduce(|| self.goal.worst(), |a, b| self.goal.pick(a, b));
        let tied = |v: f64| (v - best).abs() <= TIE_TOLERANCE;
        let support = &self.support;
        let global = |t: &MergeTree| t.map_leaves(&|i| support[i]);
        let (_, index) = (0..total)
            .into_par_iter()
            .filter(|&i| tied(value(i)))
            .map(|i| (global(&trees.get(i)).clusters(), i))
            .min()
            .expect("some tree attains the optimum");
        Ok(global(&trees.get(index)))
    }
}

/// Best merge tree over the full target alphabet for a collection.
///
/// Only positive-mass outcomes are searched; zero-mass outcomes join at the
/// root, in increasing order, where they add nothing.
pub(crate) fn best_tree(
    d: &JointDistribution,
    sources: &[SourceSet],
    goal: Goal,
    config: &SearchConfig,
) -> Result<MergeTree> {
    let support = d.target_support();
    let m = support.len();
    let cap = config.max_alphabet.min(MAX_SEARCH_ALPHABET);
    if m > cap {
        return Err(Error::AlphabetTooLarge { size: m, max: cap });
    }
    let mut tree = if m == 1 {
        MergeTree::Leaf(support[0])
    } else {
        let objective = Objective::new(d, sources, &support, goal)?;
        match config.strategy {
            SearchStrategy::SubsetDp => objective.subset_dp(),
            SearchStrategy::TreeEnumeration => objective.enumerate()?,
        }
    };
    for z in (0..d.target_len()).filter(|y| !support.contains(y)) {
        tree = MergeTree::node(tree, MergeTree::Leaf(z));
    }
    Ok(tree.canonical())
}
