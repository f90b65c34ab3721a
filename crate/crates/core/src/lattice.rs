//! Collections of sources and the redundancy lattice over them.

use std::fmt;
use std::str::FromStr;

use crate::distribution::SourceSet;
use crate::error::{Error, Result};

/// Most sources for which [`build_lattice`] materializes the lattice.
pub const MAX_LATTICE_SOURCES: usize = 4;

/// A non-empty collection of sources, none contained in another.
///
/// Written `{1}{2}` for the two singletons and `{1,2}` for the joint source.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain(Vec<SourceSet>);

impl Antichain {
    /// Drops duplicates and every set that contains another member.
    pub fn normalize(sets: impl IntoIterator<Item = SourceSet>) -> Result<Antichain> {
        let mut sets: Vec<SourceSet> = sets.into_iter().collect();
        if sets.is_empty() {
            return Err(Error::EmptyCollection);
        }
        sets.sort();
        sets.dedup();
        let kept: Vec<SourceSet> = sets
            .iter()
            .copied()
            .filter(|&s| !sets.iter().any(|&t| t != s && t.is_subset(s)))
            .collect();
        Ok(Antichain(kept))
    }

    /// `{1}{2}…{n}`.
    pub fn singletons(n: usize) -> Antichain {
        Antichain((0..n).map(SourceSet::single).collect())
    }

    /// `{1,…,n}`.
    pub fn joint(n: usize) -> Antichain {
        Antichain(vec![SourceSet::all(n)])
    }

    pub fn single(s: SourceSet) -> Antichain {
        Antichain(vec![s])
    }

    pub fn sources(&self) -> &[SourceSet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every source variable mentioned.
    pub fn union(&self) -> SourceSet {
        self.0
            .iter()
            .copied()
            .reduce(SourceSet::union)
            .expect("antichains are non-empty")
    }

    /// One more than the largest source index used.
    pub fn span(&self) -> usize {
        self.union().span()
    }

    /// The redundancy order: `self ⪯ other` when every member of `other`
    /// contains some member of `self`.
    pub fn precedes(&self, other: &Antichain) -> bool {
        other
            .0
            .iter()
            .all(|&b| self.0.iter().any(|&a| a.is_subset(b)))
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Antichain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Antichain> {
        let mut sets = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            if !rest.starts_with('{') {
                return Err(Error::Parse(format!("expected `{{` in collection `{s}`")));
            }
            let end = rest
                .find('}')
                .ok_or_else(|| Error::Parse(format!("unclosed `{{` in collection `{s}`")))?;
            sets.push(rest[..=end].parse::<SourceSet>()?);
            rest = rest[end + 1..].trim_start();
        }
        Antichain::normalize(sets)
    }
}

/// All antichains over sources `1..=n`, with the redundancy order.
#[derive(Clone, Debug)]
pub struct RedundancyLattice {
    n: usize,
    nodes: Vec<Antichain>,
    /// `below[i]`: indices of the nodes strictly below node `i`.
    below: Vec<Vec<usize>>,
}

/// Materializes the lattice for `1 ≤ n ≤ 4` sources.
///
/// Nodes are listed bottom-up: by the size of their strict down-set, then in
/// antichain order.
pub fn build_lattice(n: usize) -> Result<RedundancyLattice> {
    if n == 0 || n > MAX_LATTICE_SOURCES {
        return Err(Error::TooManySources {
            n,
            max: MAX_LATTICE_SOURCES,
        });
    }
    let subsets: Vec<SourceSet> = (1..1u32 << n)
        .map(|b| SourceSet::from_bits(b).expect("non-zero"))
        .collect();
    let mut nodes = Vec::new();
    for pick in 1u64..1 << subsets.len() {
        let members: Vec<SourceSet> = (0..subsets.len())
            .filter(|&i| pick >> i & 1 == 1)
            .map(|i| subsets[i])
            .collect();
        let incomparable = members
            .iter()
            .all(|&a| members.iter().all(|&b| a == b || !a.is_subset(b)));
        if incomparable {
            let mut m = members;
            m.sort();
            nodes.push(Antichain(m));
        }
    }
    let strictly_below = |a: &Antichain, b: &Antichain| a != b && a.precedes(b);
    let mut keyed: Vec<(usize, Antichain)> = nodes
        .iter()
        .map(|b| {
            (
                nodes.iter().filter(|a| strictly_below(a, b)).count(),
                b.clone(),
            )
        })
        .collect();
    keyed.sort();
    let nodes: Vec<Antichain> = keyed.into_iter().map(|(_, a)| a).collect();
    let below = nodes
        .iter()
        .map(|b| {
            (0..nodes.len())
                .filter(|&i| strictly_below(&nodes[i], b))
                .collect()
        })
        .collect();
    let lattice = RedundancyLattice { n, nodes, below };
    if n <= 3 {
        lattice.assert_partial_order();
    }
    Ok(lattice)
}

impl RedundancyLattice {
    pub fn n_sources(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[Antichain] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, a: &Antichain) -> Result<usize> {
        self.nodes
            .iter()
            .position(|b| b == a)
            .ok_or_else(|| Error::NodeNotInLattice(a.to_string()))
    }

    /// Indices of the nodes strictly below node `i`.
    pub fn below(&self, i: usize) -> &[usize] {
        &self.below[i]
    }

    /// Every node strictly below `a`.
    pub fn strict_down_set(&self, a: &Antichain) -> Result<Vec<&Antichain>> {
        let i = self.index_of(a)?;
        Ok(self.below[i].iter().map(|&j| &self.nodes[j]).collect())
    }

    pub fn bottom(&self) -> &Antichain {
        &self.nodes[0]
    }

    pub fn top(&self) -> &Antichain {
        &self.nodes[self.nodes.len() - 1]
    }

    fn assert_partial_order(&self) {
        let v = &self.nodes;
        for a in v {
            assert!(a.precedes(a), "reflexivity fails at {a}");
            for b in v {
                if a != b {
                    assert!(
                        !(a.precedes(b) && b.precedes(a)),
                        "antisymmetry fails at {a}, {b}"
                    );
                }
                for c in v {
                    if a.precedes(b) && b.precedes(c) {
                        assert!(a.precedes(c), "transitivity fails at {a}, {b}, {c}");
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ac(s: &str) -> Antichain {
        s.parse().unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(ac("{1}{1,2}"), ac("{1}"));
        assert_eq!(ac("{1}{2}").len(), 2);
        assert_eq!(ac("{1,2}{1,2}"), ac("{1,2}"));
        assert_eq!(Antichain::normalize([]), Err(Error::EmptyCollection));
        assert_eq!(ac("{2}{1}").to_string(), "{1}{2}");
        assert!("{1}x".parse::<Antichain>().is_err());
        assert!("{1".parse::<Antichain>().is_err());
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(build_lattice(1).unwrap().len(), 1);
        assert_eq!(build_lattice(2).unwrap().len(), 4);
        assert_eq!(build_lattice(3).unwrap().len(), 18);
        assert_eq!(build_lattice(4).unwrap().len(), 166);
        assert!(matches!(
            build_lattice(5),
            Err(Error::TooManySources { n: 5, max: 4 })
        ));
    }

    #[test]
    fn two_source_order() {
        let l = build_lattice(2).unwrap();
        let names: Vec<String> = l.nodes().iter().map(|a| a.to_string()).collect();
        assert_eq!(names, ["{1}{2}", "{1}", "{2}", "{1,2}"]);
        let mut top = l.strict_down_set(&ac("{1,2}")).unwrap();
        top.sort();
        assert_eq!(top, [&ac("{1}"), &ac("{1}{2}"), &ac("{2}")]);
        assert!(l.strict_down_set(&ac("{1}{2}")).unwrap().is_empty());
        assert_eq!(l.strict_down_set(&ac("{1}")).unwrap(), [&ac("{1}{2}")]);
        assert!(matches!(
            l.strict_down_set(&ac("{3}")),
            Err(Error::NodeNotInLattice(_))
        ));
    }

    #[test]
    fn bottom_and_top() {
        for n in 1..=3 {
            let l = build_lattice(n).unwrap();
            assert_eq!(l.bottom(), &Antichain::singletons(n));
            assert_eq!(l.top(), &Antichain::joint(n));
            let bi = l.index_of(l.bottom()).unwrap();
            assert!(l.below(bi).is_empty());
            assert_eq!(l.below(l.len() - 1).len(), l.len() - 1);
        }
    }
}
