//! Invariants checked on random distributions.

mod common;

use std::collections::HashMap;

use common::*;
use pidc::descriptor::{
    descriptor_from_merge_tree, descriptor_from_merge_tree_ordered, enumerate_all_descriptors,
    enumerate_merge_trees, Descriptor, MergeOrder,
};
use pidc::expansion::expand;
use pidc::lattice::{build_lattice, Antichain};
use pidc::multiple::multiple_information;
use pidc::pid::{
    decompose_two_sources, pi_closed_form, shared_given_descriptor, shared_info,
    union_given_descriptor, union_info,
};
use pidc::{Outcome, Partition, Selection, SourceSet};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const EPS: f64 = 1e-9;

fn pair() -> Antichain {
    Antichain::singletons(2)
}

/// A random map from the target alphabet onto at most `k` labels.
fn random_coarsening(
    rng: &mut ChaCha8Rng,
    outcomes: &[Outcome],
    k: usize,
) -> HashMap<Outcome, Outcome> {
    outcomes
        .iter()
        .map(|o| {
            (
                o.clone(),
                Outcome::from(format!("c{}", rng.random_range(0..k))),
            )
        })
        .collect()
}

fn random_relabel(rng: &mut ChaCha8Rng, outcomes: &[Outcome]) -> HashMap<Outcome, Outcome> {
    let mut labels: Vec<usize> = (0..outcomes.len()).collect();
    labels.shuffle(rng);
    outcomes
        .iter()
        .zip(labels)
        .map(|(o, l)| (o.clone(), Outcome::from(format!("r{l}"))))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mutual_information_matches_direct_formula(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let d = random_distribution(&mut rng, 3, 3, 4, 0.3);
        for a in [vec![0], vec![1, 2], vec![0, 1, 2]] {
            let s = SourceSet::new(&a).unwrap();
            let lib = d.mutual_information(s, Selection::target()).unwrap();
            prop_assert!((lib - oracle_mi(&d, &a)).abs() < 1e-12);
            let back = d.mutual_information(Selection::target(), s).unwrap();
            prop_assert!((lib - back).abs() < 1e-12);
            prop_assert!(lib >= -1e-12);
            prop_assert!(d.entropy(s).unwrap() >= -1e-12);
        }
        let x1 = SourceSet::single(0);
        let x23 = SourceSet::new(&[1, 2]).unwrap();
        let ab = d.mutual_information(x1, x23).unwrap();
        prop_assert!((ab - d.mutual_information(x23, x1).unwrap()).abs() < 1e-12);
        prop_assert!((ab - oracle_mi_between(&d, &[0], Some(&[1, 2]))).abs() < 1e-12);
    }

    #[test]
    fn chain_identity_and_data_processing(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let d = random_distribution(&mut rng, 2, 3, 6, 0.3);
        let f = random_coarsening(&mut rng, d.target_alphabet(), 3);
        let coarse = d.map_target(|y| f[y].clone()).unwrap();
        let discrete = Partition::discrete(d.target_len());
        for a in [SourceSet::single(0), SourceSet::single(1), SourceSet::all(2)] {
            let full = d.mutual_information(a, Selection::target()).unwrap();
            let outer = coarse.mutual_information(a, Selection::target()).unwrap();
            prop_assert!(outer <= full + 1e-12);
            let mut inner = 0.0;
            for label in coarse.target_alphabet() {
                let event = (0..d.target_len())
                    .filter(|&y| &f[&d.target_alphabet()[y]] == label)
                    .collect();
                let p = d.event_mass(event);
                if p > 0.0 {
                    let v = d.conditional_mi_given_event(a, &discrete, event).unwrap();
                    prop_assert!(v >= -1e-12);
                    inner += p * v;
                }
            }
            prop_assert!((full - outer - inner).abs() < EPS);
        }
    }

    #[test]
    fn expansion_total_is_descriptor_independent(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let d = random_distribution(&mut rng, 2, 3, 4, 0.3);
        let a = random_antichain(&mut rng, 2).sources()[0];
        let mi = d.mutual_information(a, Selection::target()).unwrap();
        for desc in enumerate_all_descriptors(d.target_len()).unwrap() {
            let e = expand(&d, a, &desc).unwrap();
            prop_assert!((e.total - mi).abs() < EPS);
            for level in 1..=desc.depth() {
                let w: f64 = e.terms.iter().filter(|t| t.level == level).map(|t| t.weight).sum();
                prop_assert!((w - 1.0).abs() < 1e-12);
            }
            for t in &e.terms {
                prop_assert!(t.weight > 0.0 && t.value >= 0.0);
                if desc.levels()[t.level - 1].parts_within(t.event).count() == 1 {
                    prop_assert_eq!(t.value, 0.0);
                }
            }
        }
    }

    #[test]
    fn merge_tree_serializations_agree(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let d = random_distribution(&mut rng, 2, 3, 7, 0.2);
        let n = d.target_len();
        let trees = enumerate_merge_trees(n, 12).unwrap();
        let t = trees.get(rng.random_range(0..trees.total()));
        let first = descriptor_from_merge_tree(&t, n).unwrap();
        let last = descriptor_from_merge_tree_ordered(&t, n, MergeOrder::LargestFirst).unwrap();
        prop_assert!(first.is_pairwise() && last.is_pairwise());
        prop_assert_eq!(first.depth(), n - 1);
        for a in [SourceSet::single(0), SourceSet::all(2)] {
            let x = expand(&d, a, &first).unwrap().total;
            let y = expand(&d, a, &last).unwrap().total;
            prop_assert!((x - y).abs() < EPS);
        }
        let x = shared_given_descriptor(&d, &pair(), &first).unwrap();
        let y = shared_given_descriptor(&d, &pair(), &last).unwrap();
        prop_assert!((x - y).abs() < EPS);
    }

    #[test]
    fn descriptor_level_axioms(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let d = random_distribution(&mut rng, 3, 2, 4, 0.3);
        let desc = random_descriptor(&mut rng, d.target_len());
        let shannon = Descriptor::shannon(d.target_len()).unwrap();
        let a = random_antichain(&mut rng, 3);
        let s = shared_given_descriptor(&d, &a, &desc).unwrap();
        prop_assert!(s >= 0.0);
        prop_assert!(s <= shared_given_descriptor(&d, &a, &shannon).unwrap() + EPS);
        let least = a
            .sources()
            .iter()
            .map(|&x| d.mutual_information(x, Selection::target()).unwrap())
            .fold(f64::INFINITY, f64::min);
        prop_assert!(s <= least + EPS);
        // adding a source never increases it
        let extra = random_antichain(&mut rng, 3).sources()[0];
        let more = Antichain::normalize(a.sources().iter().copied().chain([extra])).unwrap();
        prop_assert!(shared_given_descriptor(&d, &more, &desc).unwrap() <= s + EPS);
        // self redundancy
        for &x in a.sources() {
            let one = shared_given_descriptor(&d, &Antichain::single(x), &desc).unwrap();
            prop_assert!((one - d.mutual_information(x, Selection::target()).unwrap()).abs() < EPS);
        }
        // union is the max-side twin
        let u = union_given_descriptor(&d, &a, &desc).unwrap();
        prop_assert!(u + EPS >= s);
    }

    #[test]
    fn target_level_axioms(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let d = random_distribution(&mut rng, 2, 3, 5, 0.3);
        let s = shared_info(&d, &pair()).unwrap().value;
        let swapped = d.select_sources(&[1, 0]).unwrap();
        prop_assert!((shared_info(&swapped, &pair()).unwrap().value - s).abs() < EPS);
        let i1 = d.mutual_information(SourceSet::single(0), Selection::target()).unwrap();
        let i2 = d.mutual_information(SourceSet::single(1), Selection::target()).unwrap();
        let i12 = d.mutual_information(SourceSet::all(2), Selection::target()).unwrap();
        prop_assert!(s >= 0.0 && s <= i1.min(i2) + EPS);
        let own = shared_info(&d, &Antichain::single(SourceSet::single(0))).unwrap().value;
        prop_assert!((own - i1).abs() < EPS);
        // max–min duality
        let u = union_info(&d, &pair()).unwrap().value;
        prop_assert!((u - (i1 + i2 - s)).abs() < 1e-8);
        prop_assert!(u <= i12 + EPS);
        // decomposition bookkeeping
        let r = decompose_two_sources(&d).unwrap();
        prop_assert!((r.pi.total() - i12).abs() < 1e-8);
        prop_assert!((r.raw_redundant() - s).abs() < EPS);
        prop_assert!((r.raw_unique(1) - (i1 - s)).abs() < EPS);
        prop_assert!((r.raw_synergy() - (i12 - i1 - i2 + s)).abs() < EPS);
        for (_, mu) in r.pi.iter() {
            prop_assert!(mu >= -EPS);
        }
        prop_assert!((r.union - u).abs() < EPS);
        let swapped = decompose_two_sources(&swapped).unwrap();
        prop_assert!((swapped.unique(1) - r.unique(2)).abs() < EPS);
    }

    #[test]
    fn shared_is_monotone_in_the_collection(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let d = random_distribution(&mut rng, 3, 2, 5, 0.3);
        let two = shared_info(&d, &pair()).unwrap().value;
        let three = shared_info(&d, &Antichain::singletons(3)).unwrap().value;
        prop_assert!(three <= two + EPS);
    }

    #[test]
    fn refining_a_source_leaves_shared_unchanged(seed in any::<u64>()) {
        // X3 = (X1, X2) determines X1, so it never carries less than X1
        let mut rng = rng(seed);
        let d = random_distribution(&mut rng, 2, 3, 5, 0.3);
        let e = d.with_derived_source("X3", |x| format!("{}/{}", x[0], x[1]));
        let before = shared_info(&d, &pair()).unwrap().value;
        let after = shared_info(&e, &Antichain::singletons(3)).unwrap().value;
        prop_assert!((before - after).abs() < EPS);
        let desc = random_descriptor(&mut rng, d.target_len());
        prop_assert!(
            (shared_given_descriptor(&d, &pair(), &desc).unwrap()
                - shared_given_descriptor(&e, &Antichain::singletons(3), &desc).unwrap())
            .abs()
                < EPS
        );
    }

    #[test]
    fn product_systems_never_exceed_the_sum(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_distribution(&mut rng, 2, 2, 3, 0.2);
        let b = random_distribution(&mut rng, 2, 2, 3, 0.2);
        let p = a.independent_product(&b).unwrap();
        let sa = shared_info(&a, &pair()).unwrap().value;
        let sb = shared_info(&b, &pair()).unwrap().value;
        prop_assert!(shared_info(&p, &pair()).unwrap().value <= sa + sb + EPS);
        let ia = a.mutual_information(SourceSet::all(2), Selection::target()).unwrap();
        let ib = b.mutual_information(SourceSet::all(2), Selection::target()).unwrap();
        let ip = p.mutual_information(SourceSet::all(2), Selection::target()).unwrap();
        prop_assert!((ip - ia - ib).abs() < 1e-9);
    }

    #[test]
    fn labels_do_not_matter(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let d = random_distribution(&mut rng, 2, 3, 6, 0.3);
        let relabel = random_relabel(&mut rng, d.target_alphabet());
        let e = d.map_target(|y| relabel[y].clone()).unwrap();
        let (r, q) = (decompose_two_sources(&d).unwrap(), decompose_two_sources(&e).unwrap());
        prop_assert!((r.redundant() - q.redundant()).abs() < EPS);
        prop_assert!((r.synergy() - q.synergy()).abs() < EPS);
        let renamed = d.with_derived_source("X3", |x| format!("v{}", x[1]))
            .select_sources(&[0, 2])
            .unwrap();
        prop_assert!((decompose_two_sources(&renamed).unwrap().redundant() - r.redundant()).abs() < EPS);
    }

    #[test]
    fn pi_bottom_is_shared_at_the_descriptor(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n_sources = rng.random_range(1..=3);
        let d = random_distribution(&mut rng, n_sources, 2, 4, 0.3);
        let desc = random_descriptor(&mut rng, d.target_len());
        let l = build_lattice(n_sources).unwrap();
        let pi = pi_closed_form(&d, &desc, &l).unwrap();
        let bottom = shared_given_descriptor(&d, l.bottom(), &desc).unwrap();
        prop_assert!((pi.get(l.bottom()).unwrap() - bottom).abs() < 1e-12);
        if n_sources == 1 {
            let i = d.mutual_information(SourceSet::single(0), Selection::target()).unwrap();
            prop_assert!((pi.get(l.top()).unwrap() - i).abs() < EPS);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiple_information_blackwell(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let d = random_distribution(&mut rng, 2, 3, 1, 0.3);
        // X2 = f(X3) with X3 = (X2, X1)
        let e = d.with_derived_source("X3", |x| format!("{}/{}", x[1], x[0]));
        let two = multiple_information(&d).unwrap();
        let three = multiple_information(&e).unwrap();
        prop_assert!((two - three).abs() < EPS);
    }

    #[test]
    fn multiple_information_of_a_garbling_chain(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let base = random_distribution(&mut rng, 1, 6, 1, 0.0);
        let g: HashMap<String, String> = base.source_alphabet(0).iter()
            .map(|v| (v.clone(), format!("g{}", rng.random_range(0..4))))
            .collect();
        let h: HashMap<String, String> = g.values()
            .map(|v| (v.clone(), format!("h{}", rng.random_range(0..2))))
            .collect();
        let chain = base
            .with_derived_source("G", |x| g[&x[0]].clone())
            .with_derived_source("H", |x| h[&x[1]].clone())
            .select_sources(&[2, 1, 0])
            .unwrap();
        let m = multiple_information(&chain).unwrap();
        prop_assert!((m - oracle_entropy(&chain, &[0])).abs() < EPS);
    }

    #[test]
    fn multiple_information_vanishes_with_an_independent_variable(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let d = random_distribution(&mut rng, 2, 2, 1, 0.3);
        let p: f64 = rng.random_range(0.1..0.9);
        let mut rows = Vec::new();
        for r in d.records() {
            for (z, q) in [("0", p), ("1", 1.0 - p)] {
                let mut v = r.sources.clone();
                v.push(z.to_string());
                rows.push((v, r.mass * q));
            }
        }
        let names = vec!["X1".into(), "X2".into(), "X3".into()];
        let e = pidc::JointDistribution::load_joint(names, &rows, &Default::default()).unwrap();
        prop_assert!(multiple_information(&e).unwrap().abs() < EPS);
    }
}

#[test]
fn multiple_information_vanishes_for_pairwise_independent_xor() {
    let rows: Vec<(Vec<&str>, f64)> = vec![
        (vec!["0", "0", "0"], 0.25),
        (vec!["0", "1", "1"], 0.25),
        (vec!["1", "0", "1"], 0.25),
        (vec!["1", "1", "0"], 0.25),
    ];
    let d = sources_only(&rows);
    assert!(multiple_information(&d).unwrap().abs() < EPS);
    assert!(oracle_mi_between(&d, &[0], Some(&[2])).abs() < 1e-12);
}

#[test]
fn multiple_information_of_correlated_and_independent_bits() {
    let same = sources_only(&[(vec!["0", "0"], 0.5), (vec!["1", "1"], 0.5)]);
    assert!((multiple_information(&same).unwrap() - 1.0).abs() < 1e-12);
    let mut rows = Vec::new();
    for a in ["0", "1"] {
        for b in ["0", "1"] {
            for c in ["0", "1"] {
                rows.push((vec![a, b, c], 0.125));
            }
        }
    }
    assert!(multiple_information(&sources_only(&rows)).unwrap().abs() < EPS);
}

#[test]
fn a_constant_garbling_wipes_out_shared_information() {
    // appended copies that forget everything drive the minimum to zero
    let rdn = pidc::corpus::canonical_example(pidc::corpus::ExampleName::Rdn).distribution;
    let e = rdn.with_derived_source("X3", |_| "c".into());
    assert!((shared_info(&rdn, &pair()).unwrap().value - 1.0).abs() < EPS);
    assert_eq!(
        shared_info(&e, &Antichain::singletons(3)).unwrap().value,
        0.0
    );
}
