//! Subsets and partitions of the target alphabet.
//!
//! Outcomes of the target are addressed by their index in the target
//! alphabet, so a subset of outcomes is a bitmask. This caps descriptor work at
//! [`MAX_OUTCOMES`] outcomes, far beyond what any exhaustive search can handle.

use std::fmt;

use crate::error::{Error, Result};

/// Largest target alphabet a [`Block`] can address.
pub const MAX_OUTCOMES: usize = 64;

/// A set of target outcomes, stored as a bitmask over alphabet indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Block(u64);

impl Block {
    pub const EMPTY: Block = Block(0);

    pub fn from_bits(bits: u64) -> Block {
        Block(bits)
    }

    pub fn singleton(index: usize) -> Block {
        assert!(index < MAX_OUTCOMES, "outcome index {index} out of range");
        Block(1 << index)
    }

    /// The block holding outcomes `0..n`.
    pub fn full(n: usize) -> Block {
        assert!(n <= MAX_OUTCOMES, "alphabet of {n} outcomes out of range");
        if n == MAX_OUTCOMES {
            Block(u64::MAX)
        } else {
            Block((1u64 << n) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_OUTCOMES && self.0 >> index & 1 == 1
    }

    /// Smallest outcome index in the block.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: Block) -> Block {
        Block(self.0 | other.0)
    }

    pub fn intersection(self, other: Block) -> Block {
        Block(self.0 & other.0)
    }

    pub fn is_subset(self, other: Block) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Block) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }
}

impl FromIterator<usize> for Block {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Block {
        iter.into_iter()
            .fold(Block::EMPTY, |b, i| b.union(Block::singleton(i)))
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A partition of the outcomes `0..n` into non-empty disjoint blocks.
///
/// Blocks are kept sorted by their smallest member, which makes equality and
/// ordering of partitions canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Block>,
}

impl Partition {
    pub fn new(n: usize, blocks: impl IntoIterator<Item = Block>) -> Result<Partition> {
        if n > MAX_OUTCOMES {
            return Err(Error::AlphabetTooLarge {
                size: n,
                max: MAX_OUTCOMES,
            });
        }
        let mut blocks: Vec<Block> = blocks.into_iter().collect();
        let mut seen = Block::EMPTY;
        for &b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if !b.is_subset(Block::full(n)) {
                return Err(Error::InvalidPartition(format!(
                    "block {b:?} has outcomes outside 0..{n}"
                )));
            }
            if !b.is_disjoint(seen) {
                return Err(Error::InvalidPartition(format!(
                    "block {b:?} overlaps another block"
                )));
            }
            seen = seen.union(b);
        }
        if seen != Block::full(n) {
            return Err(Error::InvalidPartition(
                "blocks do not cover the alphabet".into(),
            ));
        }
        blocks.sort_unstable_by_key(|b| b.first());
        Ok(Partition { n, blocks })
    }

    /// Every outcome in its own block.
    pub fn discrete(n: usize) -> Partition {
        Partition {
            n,
            blocks: (0..n).map(Block::singleton).collect(),
        }
    }

    /// A single block holding every outcome. For `n == 0` there are no blocks.
    pub fn trivial(n: usize) -> Partition {
        Partition {
            n,
            blocks: if n == 0 { vec![] } else { vec![Block::full(n)] },
        }
    }

    /// Groups outcomes by a labelling function.
    pub fn from_labels<K: Ord>(n: usize, label: impl Fn(usize) -> K) -> Partition {
        let mut groups: std::collections::BTreeMap<K, Block> = Default::default();
        for i in 0..n {
            let b = groups.entry(label(i)).or_default();
            *b = b.union(Block::singleton(i));
        }
        let mut blocks: Vec<Block> = groups.into_values().collect();
        blocks.sort_unstable_by_key(|b| b.first());
        Partition { n, blocks }
    }

    pub fn alphabet_len(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.n
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() <= 1
    }

    /// The block containing `outcome`.
    pub fn block_of(&self, outcome: usize) -> Option<Block> {
        self.blocks.iter().copied().find(|b| b.contains(outcome))
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.n == coarser.n
            && self
                .blocks
                .iter()
                .all(|b| coarser.blocks.iter().any(|c| b.is_subset(*c)))
    }

    /// True when `coarser` is coarser than `self` and differs from it.
    pub fn strictly_refines(&self, coarser: &Partition) -> bool {
        self.refines(coarser) && self.blocks.len() > coarser.blocks.len()
    }

    /// Blocks of `self` that lie inside `block`, in canonical order.
    pub fn parts_within(&self, block: Block) -> impl Iterator<Item = Block> + '_ {
        self.blocks
            .iter()
            .copied()
            .filter(move |b| b.is_subset(block))
    }

    /// Formats the partition with outcome names, blocks separated by `|` and
    /// members by `,`.
    pub fn display_with<'a, S: fmt::Display>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        DisplayPartition {
            partition: self,
            names,
        }
    }
}

struct DisplayPartition<'a, S> {
    partition: &'a Partition,
    names: &'a [S],
}

impl<S: fmt::Display> fmt::Display for DisplayPartition<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (bi, b) in self.partition.blocks.iter().enumerate() {
            if bi > 0 {
                f.write_str("|")?;
            }
            for (mi, m) in b.iter().enumerate() {
                if mi > 0 {
                    f.write_str(",")?;
                }
                match self.names.get(m) {
                    Some(name) => write!(f, "{name}")?,
                    None => write!(f, "{m}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<usize> = (0..self.n).collect();
        let shown = self.display_with(&names).to_string();
        f.write_str(&shown)
    }
}
