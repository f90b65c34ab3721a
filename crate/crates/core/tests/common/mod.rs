//! Random generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use pidc::descriptor::Descriptor;
use pidc::lattice::{build_lattice, Antichain};
use pidc::partition::{Block, Partition};
use pidc::{JointDistribution, LoadOptions, Outcome, Record};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random joint distribution. Each source takes 2..=`max_source` values,
/// the target 1..=`max_target` (all declared, some may end up with zero mass).
/// Cells are zero with probability `sparsity`.
pub fn random_distribution(
    rng: &mut ChaCha8Rng,
    n_sources: usize,
    max_source: usize,
    max_target: usize,
    sparsity: f64,
) -> JointDistribution {
    let sizes: Vec<usize> = (0..n_sources)
        .map(|_| rng.random_range(2..=max_source))
        .collect();
    let ny = rng.random_range(1..=max_target);
    loop {
        let mut records = Vec::new();
        let mut keys = vec![vec![]];
        for &s in &sizes {
            keys = keys
                .into_iter()
                .flat_map(|k: Vec<usize>| {
                    (0..s).map(move |v| {
                        let mut k = k.clone();
                        k.push(v);
                        k
                    })
                })
                .collect();
        }
        for k in &keys {
            for y in 0..ny {
                if rng.random_bool(sparsity) {
                    continue;
                }
                let m: f64 = rng.random::<f64>().powi(2) + 1e-3;
                records.push(Record::new(
                    k.iter().map(|v| v.to_string()),
                    format!("y{y}"),
                    m,
                ));
            }
        }
        if records.is_empty() {
            continue;
        }
        let names = (1..=n_sources).map(|i| format!("X{i}")).collect();
        let opts = LoadOptions {
            renormalize: true,
            target_alphabet: Some((0..ny).map(|y| Outcome::from(format!("y{y}"))).collect()),
            ..Default::default()
        };
        return JointDistribution::load(names, &records, &opts).unwrap();
    }
}

/// A random strictly coarsening chain over `0..n`.
pub fn random_descriptor(rng: &mut ChaCha8Rng, n: usize) -> Descriptor {
    let mut levels = vec![Partition::discrete(n)];
    let mut blocks: Vec<Block> = (0..n).map(Block::singleton).collect();
    while blocks.len() > 1 {
        blocks.shuffle(rng);
        let groups = rng.random_range(1..blocks.len());
        let mut cuts: Vec<usize> = (1..blocks.len()).collect();
        cuts.shuffle(rng);
        let mut cuts: Vec<usize> = cuts[..groups - 1].to_vec();
        cuts.sort();
        cuts.push(blocks.len());
        let mut next = Vec::new();
        let mut start = 0;
        for c in cuts {
            next.push(
                blocks[start..c]
                    .iter()
                    .fold(Block::EMPTY, |a, &b| a.union(b)),
            );
            start = c;
        }
        blocks = next;
        levels.push(Partition::new(n, blocks.iter().copied()).unwrap());
    }
    Descriptor::validate(levels).unwrap()
}

/// A uniformly chosen lattice node over `n` sources.
pub fn random_antichain(rng: &mut ChaCha8Rng, n: usize) -> Antichain {
    let l = build_lattice(n).unwrap();
    l.nodes()[rng.random_range(0..l.len())].clone()
}

/// Direct `Σ p(a,y) log₂ p(a,y) / (p(a) p(y))` from the rows, grouping the
/// listed source columns against the target.
pub fn oracle_mi(d: &JointDistribution, sources: &[usize]) -> f64 {
    oracle_mi_between(d, sources, None)
}

/// Like [`oracle_mi`] but against other source columns instead of the target.
pub fn oracle_mi_between(d: &JointDistribution, a: &[usize], b: Option<&[usize]>) -> f64 {
    let mut pab: BTreeMap<(Vec<String>, String), f64> = BTreeMap::new();
    let mut pa: BTreeMap<Vec<String>, f64> = BTreeMap::new();
    let mut pb: BTreeMap<String, f64> = BTreeMap::new();
    for r in d.records() {
        let ka: Vec<String> = a.iter().map(|&i| r.sources[i].clone()).collect();
        let kb = match b {
            None => r.target.to_string(),
            Some(b) => b
                .iter()
                .map(|&i| r.sources[i].clone())
                .collect::<Vec<_>>()
                .join(","),
        };
        *pab.entry((ka.clone(), kb.clone())).or_default() += r.mass;
        *pa.entry(ka).or_default() += r.mass;
        *pb.entry(kb).or_default() += r.mass;
    }
    pab.iter()
        .map(|((ka, kb), &p)| p * (p / (pa[ka] * pb[kb])).log2())
        .sum()
}

/// Entropy of the listed source columns.
pub fn oracle_entropy(d: &JointDistribution, a: &[usize]) -> f64 {
    let mut pa: BTreeMap<Vec<String>, f64> = BTreeMap::new();
    for r in d.records() {
        *pa.entry(a.iter().map(|&i| r.sources[i].clone()).collect())
            .or_default() += r.mass;
    }
    pa.values().map(|&p| -p * p.log2()).sum()
}

/// A distribution over sources only, from `(values, mass)` rows.
pub fn sources_only(rows: &[(Vec<&str>, f64)]) -> JointDistribution {
    let n = rows[0].0.len();
    let names = (1..=n).map(|i| format!("X{i}")).collect();
    let rows: Vec<(Vec<String>, f64)> = rows
        .iter()
        .map(|(v, m)| (v.iter().map(|s| s.to_string()).collect(), *m))
        .collect();
    JointDistribution::load_joint(names, &rows, &LoadOptions::default()).unwrap()
}

/// Every partition strictly between two levels of a descriptor that merges
/// exactly one pair of lower blocks.
pub fn pair_refinements(lower: &Partition, upper: &Partition) -> Vec<Partition> {
    if lower.len() < upper.len() + 2 {
        return vec![];
    }
    let b = lower.blocks();
    let mut out = Vec::new();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let joined = b[i].union(b[j]);
            if !upper.blocks().iter().any(|u| joined.is_subset(*u)) {
                continue;
            }
            let blocks = b
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, &x)| x)
                .chain([joined]);
            out.push(Partition::new(lower.alphabet_len(), blocks).unwrap());
        }
    }
    out
}
