//! Descriptors: chains of strictly coarsening partitions of the target
//! alphabet, from the discrete partition down to a single block.
//!
//! Binary merge trees describe the chains whose every step joins exactly one
//! pair of blocks. They are the search domain for shared information.

use std::fmt;

use crate::distribution::{JointDistribution, Outcome};
use crate::error::{Error, Result};
use crate::partition::{Block, Partition, MAX_OUTCOMES};

/// Default cap on the alphabet size for exhaustive descriptor searches.
pub const DEFAULT_MAX_ALPHABET: usize = 12;

/// Largest alphabet for [`enumerate_all_descriptors`].
pub const MAX_ORACLE_ALPHABET: usize = 5;

/// A validated chain `P₀ → P₁ → … → P_L` of partitions of `0..n`.
///
/// `P₀` is discrete, `P_L` is trivial and each level strictly coarsens the one
/// before it. For a one-outcome alphabet the chain is the single level `P₀`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Descriptor {
    levels: Vec<Partition>,
}

impl Descriptor {
    /// Checks the chain conditions and wraps the levels.
    pub fn validate(levels: Vec<Partition>) -> Result<Descriptor> {
        let Some(first) = levels.first() else {
            return Err(Error::BadEndpoints);
        };
        let n = first.alphabet_len();
        if let Some(p) = levels.iter().find(|p| p.alphabet_len() != n) {
            return Err(Error::DescriptorAlphabetMismatch {
                descriptor: p.alphabet_len(),
                target: n,
            });
        }
        for level in 1..levels.len() {
            let (lower, upper) = (&levels[level - 1], &levels[level]);
            if lower == upper {
                return Err(Error::RepeatedLevel { level });
            }
            if !lower.refines(upper) {
                return Err(Error::NotCoarsening { level });
            }
        }
        if n == 0 || !first.is_discrete() || !levels[levels.len() - 1].is_trivial() {
            return Err(Error::BadEndpoints);
        }
        Ok(Descriptor { levels })
    }

    /// The two-level chain collapsing the whole alphabet in one step.
    pub fn shannon(n: usize) -> Result<Descriptor> {
        if n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if n > MAX_OUTCOMES {
            return Err(Error::AlphabetTooLarge {
                size: n,
                max: MAX_OUTCOMES,
            });
        }
        if n == 1 {
            return Ok(Descriptor {
                levels: vec![Partition::discrete(1)],
            });
        }
        Ok(Descriptor {
            levels: vec![Partition::discrete(n), Partition::trivial(n)],
        })
    }

    pub fn levels(&self) -> &[Partition] {
        &self.levels
    }

    /// Number of coarsening steps `L`.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn alphabet_len(&self) -> usize {
        self.levels[0].alphabet_len()
    }

    /// Inserts `intermediate` between levels `level - 1` and `level`.
    pub fn refine(&self, level: usize, intermediate: Partition) -> Result<Descriptor> {
        if level == 0 || level > self.depth() {
            return Err(Error::NotBetween {
                lower: level.saturating_sub(1),
                upper: level,
            });
        }
        let (lower, upper) = (&self.levels[level - 1], &self.levels[level]);
        if !(lower.strictly_refines(&intermediate) && intermediate.strictly_refines(upper)) {
            return Err(Error::NotBetween {
                lower: level - 1,
                upper: level,
            });
        }
        let mut levels = self.levels.clone();
        levels.insert(level, intermediate);
        Ok(Descriptor { levels })
    }

    /// True when every block of every level joins at most two blocks of the
    /// level below.
    pub fn is_pairwise(&self) -> bool {
        self.levels.windows(2).all(|w| {
            w[1].blocks()
                .iter()
                .all(|&b| w[0].parts_within(b).count() <= 2)
        })
    }

    /// Parses the text format: one level per line (or `;`-separated), blocks
    /// separated by `|`, members by `,`. The discrete level is implicit; the
    /// last level must be the single block.
    pub fn parse(text: &str, names: &[String]) -> Result<Descriptor> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let mut levels = vec![Partition::discrete(n)];
        for line in text.lines().flat_map(|l| l.split(';')) {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut blocks = Vec::new();
            for part in line.split('|') {
                let mut b = Block::EMPTY;
                for member in part.split(',') {
                    let member = member.trim();
                    let i = names.iter().position(|s| s == member).ok_or_else(|| {
                        Error::Parse(format!("unknown outcome `{member}` in descriptor"))
                    })?;
                    if b.contains(i) {
                        return Err(Error::Parse(format!(
                            "outcome `{member}` listed twice in one block"
                        )));
                    }
                    b = b.union(Block::singleton(i));
                }
                blocks.push(b);
            }
            let p = Partition::new(n, blocks)?;
            if levels.len() == 1 && p.is_discrete() && n > 1 {
                continue; // an explicit level 0
            }
            levels.push(p);
        }
        Descriptor::validate(levels)
    }

    /// Like [`parse`](Self::parse), naming outcomes by their display form.
    pub fn parse_for(text: &str, outcomes: &[Outcome]) -> Result<Descriptor> {
        let names: Vec<String> = outcomes.iter().map(|o| o.to_string()).collect();
        Descriptor::parse(text, &names)
    }

    /// Levels `1..=L` in the text format, one per line.
    pub fn to_text<S: fmt::Display>(&self, names: &[S]) -> String {
        self.levels[1..]
            .iter()
            .map(|p| p.display_with(names).to_string())
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Levels `1..=L` on one line, separated by `; `.
    pub fn to_inline<S: fmt::Display>(&self, names: &[S]) -> String {
        self.levels[1..]
            .iter()
            .map(|p| p.display_with(names).to_string())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Debug for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.levels).finish()
    }
}

/// For tuple-valued targets: level `ℓ` groups outcomes that agree on every
/// coordinate from `ℓ` on, forgetting one more leading coordinate per level.
/// Levels that would repeat the previous one are skipped.
pub fn canonical_descriptor(d: &JointDistribution) -> Result<Descriptor> {
    let outcomes = d.target_alphabet();
    let arity = outcomes[0].arity();
    if outcomes.iter().any(|o| o.arity() != arity) {
        return Err(Error::TargetNotTuple);
    }
    d.check_outcome_limit()?;
    let n = outcomes.len();
    let mut levels = vec![Partition::discrete(n)];
    for l in 1..=arity {
        let p = Partition::from_labels(n, |y| &outcomes[y].components()[l..]);
        if p != levels[levels.len() - 1] {
            levels.push(p);
        }
    }
    Descriptor::validate(levels)
}

/// Every descriptor of an `n`-outcome alphabet, each exactly once.
///
/// The count grows very fast, so this is limited to
/// [`MAX_ORACLE_ALPHABET`] outcomes. It is meant as a test oracle.
pub fn enumerate_all_descriptors(n: usize) -> Result<Vec<Descriptor>> {
    if n == 0 {
        return Err(Error::EmptyAlphabet);
    }
    if n > MAX_ORACLE_ALPHABET {
        return Err(Error::AlphabetTooLarge {
            size: n,
            max: MAX_ORACLE_ALPHABET,
        });
    }
    let mut out = Vec::new();
    let mut chain = vec![Partition::discrete(n)];
    extend_chains(&mut chain, &mut out);
    Ok(out)
}

fn extend_chains(chain: &mut Vec<Partition>, out: &mut Vec<Descriptor>) {
    let top = chain[chain.len() - 1].clone();
    if top.is_trivial() {
        out.push(Descriptor {
            levels: chain.clone(),
        });
        return;
    }
    let k = top.len();
    for labels in set_partitions(k) {
        let groups = labels.iter().max().map_or(0, |m| m + 1);
        if groups == k {
            continue;
        }
        let mut merged = vec![Block::EMPTY; groups];
        for (i, &g) in labels.iter().enumerate() {
            merged[g] = merged[g].union(top.blocks()[i]);
        }
        let next = Partition::new(top.alphabet_len(), merged).expect("coarsening is a partition");
        chain.push(next);
        extend_chains(chain, out);
        chain.pop();
    }
}

/// All set partitions of `0..k` as restricted growth strings.
fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut s = vec![0usize; k];
    fn go(i: usize, max: usize, s: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == s.len() {
            out.push(s.clone());
            return;
        }
        for v in 0..=max + 1 {
            s[i] = v;
            go(i + 1, max.max(v), s, out);
        }
    }
    if k == 0 {
        return vec![vec![]];
    }
    go(1, 0, &mut s, &mut out);
    out
}

/// A rooted binary tree whose leaves are target outcomes.
///
/// Children are unordered; [`canonical`](Self::canonical) puts the child with
/// the smaller least leaf first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum MergeTree {
    Leaf(usize),
    Node(Box<MergeTree>, Box<MergeTree>),
}

impl MergeTree {
    pub fn node(a: MergeTree, b: MergeTree) -> MergeTree {
        MergeTree::Node(Box::new(a), Box::new(b))
    }

    /// The outcomes at the leaves.
    pub fn leaves(&self) -> Block {
        match self {
            MergeTree::Leaf(i) => Block::singleton(*i),
            MergeTree::Node(a, b) => a.leaves().union(b.leaves()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            MergeTree::Leaf(_) => 1,
            MergeTree::Node(a, b) => a.leaf_count() + b.leaf_count(),
        }
    }

    /// Leaf sets of the internal nodes, sorted. Two trees are the same
    /// unordered tree exactly when these agree.
    pub fn clusters(&self) -> Vec<Block> {
        let mut out = Vec::new();
        self.collect_clusters(&mut out);
        out.sort_unstable();
        out
    }

    fn collect_clusters(&self, out: &mut Vec<Block>) -> Block {
        match self {
            MergeTree::Leaf(i) => Block::singleton(*i),
            MergeTree::Node(a, b) => {
                let s = a.collect_clusters(out).union(b.collect_clusters(out));
                out.push(s);
                s
            }
        }
    }

    /// The same tree with children ordered by least leaf.
    pub fn canonical(&self) -> MergeTree {
        match self {
            MergeTree::Leaf(i) => MergeTree::Leaf(*i),
            MergeTree::Node(a, b) => {
                let (a, b) = (a.canonical(), b.canonical());
                if a.leaves().first() <= b.leaves().first() {
                    MergeTree::node(a, b)
                } else {
                    MergeTree::node(b, a)
                }
            }
        }
    }

    /// Relabels the leaves.
    pub fn map_leaves(&self, f: &impl Fn(usize) -> usize) -> MergeTree {
        match self {
            MergeTree::Leaf(i) => MergeTree::Leaf(f(*i)),
            MergeTree::Node(a, b) => MergeTree::node(a.map_leaves(f), b.map_leaves(f)),
        }
    }
}

impl fmt::Debug for MergeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MergeTree::Leaf(i) => write!(f, "{i}"),
            MergeTree::Node(a, b) => write!(f, "({a:?} {b:?})"),
        }
    }
}

/// Order in which independent merges of a tree become descriptor levels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MergeOrder {
    /// The available merge whose block has the smallest least member first.
    #[default]
    SmallestFirst,
    /// The available merge whose block has the largest least member first.
    LargestFirst,
}

/// The single-pair merge chain of a tree over `0..n`.
pub fn descriptor_from_merge_tree(tree: &MergeTree, n: usize) -> Result<Descriptor> {
    descriptor_from_merge_tree_ordered(tree, n, MergeOrder::SmallestFirst)
}

/// [`descriptor_from_merge_tree`] with an explicit serialization of
/// independent merges.
pub fn descriptor_from_merge_tree_ordered(
    tree: &MergeTree,
    n: usize,
    order: MergeOrder,
) -> Result<Descriptor> {
    if n > MAX_OUTCOMES {
        return Err(Error::AlphabetTooLarge {
            size: n,
            max: MAX_OUTCOMES,
        });
    }
    if tree.leaves() != Block::full(n) || tree.leaf_count() != n {
        return Err(Error::InvalidPartition(format!(
            "merge tree leaves do not match an alphabet of {n} outcomes"
        )));
    }
    // (cluster, left child, right child) for each internal node
    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    fn walk(t: &MergeTree, out: &mut Vec<(Block, Block, Block)>) -> Block {
        match t {
            MergeTree::Leaf(i) => Block::singleton(*i),
            MergeTree::Node(a, b) => {
                let (a, b) = (walk(a, out), walk(b, out));
                out.push((a.union(b), a, b));
                a.union(b)
            }
        }
    }
    walk(tree, &mut merges);

    let mut current: Vec<Block> = (0..n).map(Block::singleton).collect();
    let mut levels = vec![Partition::discrete(n)];
    let mut pending = merges;
    while !pending.is_empty() {
        let ready = pending
            .iter()
            .enumerate()
            .filter(|(_, (_, a, b))| current.contains(a) && current.contains(b))
            .map(|(i, (s, _, _))| (i, s.first()));
        let pick = match order {
            MergeOrder::SmallestFirst => ready.min_by_key(|&(_, m)| m),
            MergeOrder::LargestFirst => ready.max_by_key(|&(_, m)| m),
        }
        .map(|(i, _)| i)
        .expect("some merge is always ready");
        let (s, a, b) = pending.swap_remove(pick);
        current.retain(|&c| c != a && c != b);
        current.push(s);
        levels.push(Partition::new(n, current.iter().copied())?);
    }
    Descriptor::validate(levels)
}

/// Number of unordered binary trees on `n` labelled leaves, `(2n−3)!!`.
pub fn merge_tree_count(n: usize) -> u128 {
    (2..n).map(|m| (2 * m - 1) as u128).product()
}

/// All unordered binary trees on leaves `0..n`, each exactly once.
///
/// Tree `k` is decoded from the mixed-radix digits of `k`: leaf `m` is inserted
/// above one of the `2m − 1` nodes of the tree on leaves `0..m`.
#[derive(Clone, Debug)]
pub struct MergeTrees {
    n: usize,
    len: u64,
    next: u64,
}

/// Streams the merge trees on `n` leaves, refusing `n > max_alphabet`.
pub fn enumerate_merge_trees(n: usize, max_alphabet: usize) -> Result<MergeTrees> {
    if n == 0 {
        return Err(Error::EmptyAlphabet);
    }
    if n > max_alphabet || n > MAX_OUTCOMES {
        return Err(Error::AlphabetTooLarge {
            size: n,
            max: max_alphabet.min(MAX_OUTCOMES),
        });
    }
    let len = u64::try_from(merge_tree_count(n)).map_err(|_| Error::AlphabetTooLarge {
        size: n,
        max: max_alphabet,
    })?;
    Ok(MergeTrees { n, len, next: 0 })
}

impl MergeTrees {
    pub fn leaf_count(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> u64 {
        self.len
    }

    /// The tree with the given index, `0 ≤ index < total()`.
    pub fn get(&self, index: u64) -> MergeTree {
        assert!(index < self.len, "tree index out of range");
        let n = self.n;
        if n == 1 {
            return MergeTree::Leaf(0);
        }
        // Arena: leaves are 0..n, internal nodes n.. in creation order.
        let mut children: Vec<[usize; 2]> = Vec::with_capacity(n - 1);
        let mut parent = vec![usize::MAX; 2 * n - 1];
        children.push([0, 1]);
        parent[0] = n;
        parent[1] = n;
        let mut root = n;
        let mut k = index;
        for m in 2..n {
            let radix = (2 * m - 1) as u64;
            let d = (k % radix) as usize;
            k /= radix;
            let v = if d < m { d } else { n + (d - m) };
            let u = n + children.len();
            children.push([v, m]);
            let pv = parent[v];
            parent[u] = pv;
            parent[v] = u;
            parent[m] = u;
            if pv == usize::MAX {
                root = u;
            } else {
                let c = &mut children[pv - n];
                if c[0] == v {
                    c[0] = u;
                } else {
                    c[1] = u;
                }
            }
        }
        fn build(v: usize, n: usize, children: &[[usize; 2]]) -> MergeTree {
            if v < n {
                MergeTree::Leaf(v)
            } else {
                let [a, b] = children[v - n];
                MergeTree::node(build(a, n, children), build(b, n, children))
            }
        }
        build(root, n, &children).canonical()
    }
}

impl Iterator for MergeTrees {
    type Item = MergeTree;

    fn next(&mut self) -> Option<MergeTree> {
        if self.next >= self.len {
            return None;
        }
        let t = self.get(self.next);
        self.next += 1;
        Some(t)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.len - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for MergeTrees {}
