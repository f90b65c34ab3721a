//! Shared and union information, the partial-information function on the
//! redundancy lattice, and the two-source decomposition.

use std::collections::BTreeMap;

use crate::descriptor::{descriptor_from_merge_tree, Descriptor, MergeTree};
use crate::distribution::{JointDistribution, Selection, SourceSet, SourceTable};
use crate::error::{Error, Result};
use crate::expansion::{check_alphabet, features, term_value, Feature};
use crate::lattice::{build_lattice, Antichain, RedundancyLattice};
use crate::search::{best_tree, Goal};

pub use crate::search::{SearchConfig, SearchStrategy, MAX_SEARCH_ALPHABET};

/// PI values in `[-CLAMP_TOLERANCE, 0)` are reported as 0.
pub const CLAMP_TOLERANCE: f64 = 1e-9;

/// Per-feature conditional informations of a set of sources.
struct Terms {
    weights: Vec<f64>,
    /// `values[source][feature]`
    values: BTreeMap<SourceSet, Vec<f64>>,
}

impl Terms {
    fn new(
        d: &JointDistribution,
        desc: &Descriptor,
        sources: impl IntoIterator<Item = SourceSet>,
    ) -> Result<Terms> {
        check_alphabet(d, desc)?;
        let feats: Vec<(Feature, f64)> = features(d, desc);
        let mut values = BTreeMap::new();
        for s in sources {
            if values.contains_key(&s) {
                continue;
            }
            let table: SourceTable = d.source_table(s)?;
            values.insert(
                s,
                feats.iter().map(|(f, _)| term_value(&table, f)).collect(),
            );
        }
        Ok(Terms {
            weights: feats.iter().map(|&(_, w)| w).collect(),
            values,
        })
    }

    /// `min` (or `max`) over the collection, per feature.
    fn reduced(&self, a: &Antichain, goal: Goal) -> Vec<f64> {
        (0..self.weights.len())
            .map(|j| {
                let it = a.sources().iter().map(|s| self.values[s][j]);
                match goal {
                    Goal::Min => it.fold(f64::INFINITY, f64::min),
                    Goal::Max => it.fold(f64::NEG_INFINITY, f64::max),
                }
            })
            .collect()
    }

    fn weighted(&self, per_feature: &[f64]) -> f64 {
        self.weights
            .iter()
            .zip(per_feature)
            .map(|(w, v)| w * v)
            .sum()
    }
}

fn given_descriptor(
    d: &JointDistribution,
    a: &Antichain,
    desc: &Descriptor,
    goal: Goal,
) -> Result<f64> {
    let terms = Terms::new(d, desc, a.sources().iter().copied())?;
    Ok(terms.weighted(&terms.reduced(a, goal)))
}

/// Information shared by the collection about the features of `desc`: the
/// weighted sum, over features, of the least information any source carries.
pub fn shared_given_descriptor(
    d: &JointDistribution,
    a: &Antichain,
    desc: &Descriptor,
) -> Result<f64> {
    given_descriptor(d, a, desc, Goal::Min)
}

/// Like [`shared_given_descriptor`] with the largest information per feature.
pub fn union_given_descriptor(
    d: &JointDistribution,
    a: &Antichain,
    desc: &Descriptor,
) -> Result<f64> {
    given_descriptor(d, a, desc, Goal::Max)
}

/// Result of a descriptor search.
#[derive(Clone, Debug, PartialEq)]
pub struct Optimum {
    /// Bits.
    pub value: f64,
    /// The optimizing single-merge chain.
    pub descriptor: Descriptor,
    /// The merge tree behind `descriptor`.
    pub tree: MergeTree,
}

fn optimize(
    d: &JointDistribution,
    a: &Antichain,
    goal: Goal,
    config: &SearchConfig,
) -> Result<Optimum> {
    let tree = best_tree(d, a.sources(), goal, config)?;
    let descriptor = descriptor_from_merge_tree(&tree, d.target_len())?;
    let value = given_descriptor(d, a, &descriptor, goal)?;
    Ok(Optimum {
        value,
        descriptor,
        tree,
    })
}

/// Shared information of a collection: [`shared_given_descriptor`] minimized
/// over descriptors.
pub fn shared_info(d: &JointDistribution, a: &Antichain) -> Result<Optimum> {
    shared_info_with(d, a, &SearchConfig::default())
}

pub fn shared_info_with(
    d: &JointDistribution,
    a: &Antichain,
    config: &SearchConfig,
) -> Result<Optimum> {
    optimize(d, a, Goal::Min, config)
}

/// Union information of a collection: [`union_given_descriptor`] maximized
/// over descriptors.
pub fn union_info(d: &JointDistribution, a: &Antichain) -> Result<Optimum> {
    union_info_with(d, a, &SearchConfig::default())
}

pub fn union_info_with(
    d: &JointDistribution,
    a: &Antichain,
    config: &SearchConfig,
) -> Result<Optimum> {
    optimize(d, a, Goal::Max, config)
}

/// PI values on the nodes of a lattice, in lattice order.
#[derive(Clone, Debug, PartialEq)]
pub struct PiValues {
    nodes: Vec<Antichain>,
    values: Vec<f64>,
}

impl PiValues {
    pub fn get(&self, a: &Antichain) -> Option<f64> {
        self.nodes
            .iter()
            .position(|b| b == a)
            .map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Antichain, f64)> {
        self.nodes.iter().zip(self.values.iter().copied())
    }

    /// Sum over all nodes.
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn check_lattice(d: &JointDistribution, lattice: &RedundancyLattice) -> Result<()> {
    if lattice.n_sources() != d.n_sources() {
        return Err(Error::InvalidVariableSelection(format!(
            "lattice over {} sources for a distribution with {}",
            lattice.n_sources(),
            d.n_sources()
        )));
    }
    Ok(())
}

fn all_sources(lattice: &RedundancyLattice) -> Vec<SourceSet> {
    lattice
        .nodes()
        .iter()
        .flat_map(|a| a.sources().iter().copied())
        .collect()
}

/// The PI function for a fixed descriptor, node by node:
/// `μ(α) = I(α; 𝒴) − Σ p(y^ℓ) · max_{β ≺ α} min_{B ∈ β} I(B; Y^{ℓ-1} | y^ℓ)`.
pub fn pi_closed_form(
    d: &JointDistribution,
    desc: &Descriptor,
    lattice: &RedundancyLattice,
) -> Result<PiValues> {
    check_lattice(d, lattice)?;
    let terms = Terms::new(d, desc, all_sources(lattice))?;
    let reduced: Vec<Vec<f64>> = lattice
        .nodes()
        .iter()
        .map(|a| terms.reduced(a, Goal::Min))
        .collect();
    let values = (0..lattice.len())
        .map(|i| {
            let own = &reduced[i];
            let below = lattice.below(i);
            let per_feature: Vec<f64> = (0..own.len())
                .map(|j| {
                    let covered = below.iter().map(|&b| reduced[b][j]).fold(0.0f64, f64::max);
                    own[j] - covered
                })
                .collect();
            terms.weighted(&per_feature)
        })
        .collect();
    Ok(PiValues {
        nodes: lattice.nodes().to_vec(),
        values,
    })
}

/// The PI function by Möbius inversion of [`shared_given_descriptor`]:
/// `μ(α) = I(α; 𝒴) − Σ_{β ≺ α} μ(β)`.
pub fn pi_mobius(
    d: &JointDistribution,
    desc: &Descriptor,
    lattice: &RedundancyLattice,
) -> Result<PiValues> {
    check_lattice(d, lattice)?;
    let terms = Terms::new(d, desc, all_sources(lattice))?;
    let mut values: Vec<f64> = Vec::with_capacity(lattice.len());
    for (i, a) in lattice.nodes().iter().enumerate() {
        let shared = terms.weighted(&terms.reduced(a, Goal::Min));
        // nodes are listed bottom-up, so everything below is already known
        let below: f64 = lattice.below(i).iter().map(|&b| values[b]).sum();
        values.push(shared - below);
    }
    Ok(PiValues {
        nodes: lattice.nodes().to_vec(),
        values,
    })
}

/// Reports tiny negative rounding noise as zero.
pub fn clamp_pi(v: f64) -> f64 {
    if (-CLAMP_TOLERANCE..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

/// Decomposition of `I(X₁, X₂; Y)` into redundant, unique and synergistic
/// parts at the descriptor minimizing shared information.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionResult {
    /// `I(X₁, X₂; Y)`.
    pub total: f64,
    /// `I(X₁; Y)` and `I(X₂; Y)`.
    pub single: [f64; 2],
    /// Shared information of `{1}{2}`.
    pub shared: f64,
    /// Union information of `{1}{2}`.
    pub union: f64,
    /// Descriptor minimizing shared information.
    pub descriptor: Descriptor,
    /// Unclamped PI values at `descriptor`.
    pub pi: PiValues,
}

impl DecompositionResult {
    fn raw(&self, node: &str) -> f64 {
        let a: Antichain = node.parse().expect("static antichain");
        self.pi.get(&a).expect("two-source lattice node")
    }

    pub fn raw_redundant(&self) -> f64 {
        self.raw("{1}{2}")
    }

    pub fn raw_unique(&self, source: usize) -> f64 {
        match source {
            1 => self.raw("{1}"),
            2 => self.raw("{2}"),
            _ => panic!("sources are numbered 1 and 2"),
        }
    }

    pub fn raw_synergy(&self) -> f64 {
        self.raw("{1,2}")
    }

    pub fn redundant(&self) -> f64 {
        clamp_pi(self.raw_redundant())
    }

    /// Unique information of source 1 or 2.
    pub fn unique(&self, source: usize) -> f64 {
        clamp_pi(self.raw_unique(source))
    }

    pub fn synergy(&self) -> f64 {
        clamp_pi(self.raw_synergy())
    }
}

pub fn decompose_two_sources(d: &JointDistribution) -> Result<DecompositionResult> {
    decompose_two_sources_with(d, &SearchConfig::default())
}

pub fn decompose_two_sources_with(
    d: &JointDistribution,
    config: &SearchConfig,
) -> Result<DecompositionResult> {
    if d.n_sources() != 2 {
        return Err(Error::NotTwoSources(d.n_sources()));
    }
    let pair = Antichain::singletons(2);
    let shared = shared_info_with(d, &pair, config)?;
    let union = union_info_with(d, &pair, config)?;
    let lattice = build_lattice(2)?;
    let pi = pi_closed_form(d, &shared.descriptor, &lattice)?;
    let y = Selection::target();
    Ok(DecompositionResult {
        total: d.mutual_information(SourceSet::all(2), y)?,
        single: [
            d.mutual_information(SourceSet::single(0), y)?,
            d.mutual_information(SourceSet::single(1), y)?,
        ],
        shared: shared.value,
        union: union.value,
        descriptor: shared.descriptor,
        pi,
    })
}
