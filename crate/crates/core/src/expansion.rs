//! The expansion of `I(A; Y)` along a descriptor into per-feature terms
//! `p(y^ℓ) · I(A; Y^{ℓ-1} | y^ℓ)`.

use crate::descriptor::Descriptor;
use crate::distribution::{JointDistribution, SourceSet, SourceTable, MASS_EPSILON};
use crate::error::{Error, Result};
use crate::partition::Block;

/// One summand of an expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionTerm {
    /// Level `ℓ ≥ 1` of the feature.
    pub level: usize,
    /// The feature `y^ℓ`, as the set of target outcomes it collects.
    pub event: Block,
    /// `p(y^ℓ)`.
    pub weight: f64,
    /// `I(A; Y^{ℓ-1} | y^ℓ)` in bits.
    pub value: f64,
}

impl ExpansionTerm {
    pub fn contribution(&self) -> f64 {
        self.weight * self.value
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    /// Positive-weight terms by level, then canonical block order.
    pub terms: Vec<ExpansionTerm>,
    /// `Σ weight · value`.
    pub total: f64,
}

/// A feature of a descriptor: level, block, and the blocks of the level below
/// that it joins.
#[derive(Clone, Debug)]
pub(crate) struct Feature {
    pub level: usize,
    pub event: Block,
    pub parts: Vec<Block>,
}

pub(crate) fn check_alphabet(d: &JointDistribution, desc: &Descriptor) -> Result<()> {
    if desc.alphabet_len() != d.target_len() {
        return Err(Error::DescriptorAlphabetMismatch {
            descriptor: desc.alphabet_len(),
            target: d.target_len(),
        });
    }
    Ok(())
}

/// Features with positive mass, in report order.
pub(crate) fn features(d: &JointDistribution, desc: &Descriptor) -> Vec<(Feature, f64)> {
    let levels = desc.levels();
    let mut out = Vec::new();
    for level in 1..levels.len() {
        for &event in levels[level].blocks() {
            let weight = d.event_mass(event);
            if weight < MASS_EPSILON {
                continue;
            }
            let parts = levels[level - 1].parts_within(event).collect();
            out.push((
                Feature {
                    level,
                    event,
                    parts,
                },
                weight,
            ));
        }
    }
    out
}

pub(crate) fn term_value(table: &SourceTable, f: &Feature) -> f64 {
    if f.parts.len() <= 1 {
        0.0
    } else {
        table.conditional_mi(&f.parts).1
    }
}

/// Expands `I(A; Y)` along `desc`.
pub fn expand(d: &JointDistribution, a: SourceSet, desc: &Descriptor) -> Result<Expansion> {
    check_alphabet(d, desc)?;
    let table = d.source_table(a)?;
    let terms: Vec<ExpansionTerm> = features(d, desc)
        .into_iter()
        .map(|(f, weight)| ExpansionTerm {
            level: f.level,
            event: f.event,
            weight,
            value: term_value(&table, &f),
        })
        .collect();
    let total = terms.iter().map(ExpansionTerm::contribution).sum();
    Ok(Expansion { terms, total })
}
