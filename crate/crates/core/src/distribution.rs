//! Exact discrete joint distributions `P(X₁,…,X_N, Y)` and the Shannon
//! quantities computed from them.
//!
//! All information values are in bits. Rows are stored in sorted key order so
//! every sum runs in the same order on every call.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::{Block, Partition, MAX_OUTCOMES};

/// Masses below this are treated as exact zeros.
pub const MASS_EPSILON: f64 = 1e-12;

/// Allowed deviation of the total mass from 1 when renormalization is off.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// `-x log₂ x`, with `0 log 0 = 0`.
pub(crate) fn plog(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// A target outcome. Scalar targets are 1-tuples; targets built from several
/// variables carry one component per variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Outcome(Vec<String>);

impl Outcome {
    pub fn new(components: Vec<String>) -> Outcome {
        assert!(
            !components.is_empty(),
            "an outcome needs at least one component"
        );
        Outcome(components)
    }

    pub fn components(&self) -> &[String] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join("/"))
    }
}

impl From<&str> for Outcome {
    fn from(s: &str) -> Outcome {
        Outcome(vec![s.to_owned()])
    }
}

impl From<String> for Outcome {
    fn from(s: String) -> Outcome {
        Outcome(vec![s])
    }
}

impl From<Vec<String>> for Outcome {
    fn from(v: Vec<String>) -> Outcome {
        Outcome::new(v)
    }
}

/// One line of a probability table: source values, target value, mass.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub sources: Vec<String>,
    pub target: Outcome,
    pub mass: f64,
}

impl Record {
    pub fn new<S, T>(sources: impl IntoIterator<Item = S>, target: T, mass: f64) -> Record
    where
        S: Into<String>,
        T: Into<Outcome>,
    {
        Record {
            sources: sources.into_iter().map(Into::into).collect(),
            target: target.into(),
            mass,
        }
    }
}

/// Options for [`JointDistribution::load`].
#[derive(Clone, Debug, Default)]
pub struct LoadOptions {
    /// Divide by the total mass instead of rejecting tables that do not sum to 1.
    pub renormalize: bool,
    /// Declared source alphabets. Inferred from the rows, in order of first
    /// appearance, when absent.
    pub source_alphabets: Option<Vec<Vec<String>>>,
    /// Declared target alphabet, inferred like the source alphabets when absent.
    pub target_alphabet: Option<Vec<Outcome>>,
}

/// A non-empty set of source variables, stored as a bitmask over zero-based
/// source indices. Displayed and parsed one-based: `{1,2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSet(u32);

/// Most sources a [`SourceSet`] can address.
pub const MAX_SOURCES: usize = 32;

impl SourceSet {
    /// Builds a set from zero-based indices.
    pub fn new(indices: &[usize]) -> Result<SourceSet> {
        if indices.is_empty() {
            return Err(Error::InvalidVariableSelection("empty source set".into()));
        }
        let mut bits = 0u32;
        for &i in indices {
            if i >= MAX_SOURCES {
                return Err(Error::InvalidVariableSelection(format!(
                    "source index {} out of range",
                    i + 1
                )));
            }
            bits |= 1 << i;
        }
        Ok(SourceSet(bits))
    }

    pub fn single(index: usize) -> SourceSet {
        assert!(index < MAX_SOURCES);
        SourceSet(1 << index)
    }

    /// `{X₁,…,X_n}`.
    pub fn all(n: usize) -> SourceSet {
        assert!((1..=MAX_SOURCES).contains(&n));
        SourceSet((((1u64) << n) - 1) as u32)
    }

    pub fn from_bits(bits: u32) -> Option<SourceSet> {
        (bits != 0).then_some(SourceSet(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_SOURCES && self.0 >> index & 1 == 1
    }

    pub fn is_subset(self, other: SourceSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SourceSet) -> SourceSet {
        SourceSet(self.0 | other.0)
    }

    /// Zero-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..MAX_SOURCES).filter(|&i| self.contains(i)).collect()
    }

    /// Largest index plus one.
    pub fn span(self) -> usize {
        MAX_SOURCES - self.0.leading_zeros() as usize
    }
}

impl PartialOrd for SourceSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SourceSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.indices().cmp(&other.indices())
    }
}

impl fmt::Display for SourceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.indices().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SourceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SourceSet {
    type Err = Error;

    /// Accepts `{1,2}` or `1,2` (one-based).
    fn from_str(s: &str) -> Result<SourceSet> {
        let s = s.trim();
        let inner = s
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(s);
        let mut indices = Vec::new();
        for tok in inner.split(',') {
            let tok = tok.trim();
            let i: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad source index `{tok}` in `{s}`")))?;
            if i == 0 {
                return Err(Error::Parse(format!("source indices are 1-based in `{s}`")));
            }
            indices.push(i - 1);
        }
        SourceSet::new(&indices)
    }
}

/// A set of variables of a distribution: some sources, optionally the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Selection {
    sources: u32,
    target: bool,
}

impl Selection {
    pub fn target() -> Selection {
        Selection {
            sources: 0,
            target: true,
        }
    }

    pub fn sources_and_target(sources: SourceSet) -> Selection {
        Selection {
            sources: sources.bits(),
            target: true,
        }
    }

    fn union(self, other: Selection) -> Selection {
        Selection {
            sources: self.sources | other.sources,
            target: self.target || other.target,
        }
    }
}

impl From<SourceSet> for Selection {
    fn from(s: SourceSet) -> Selection {
        Selection {
            sources: s.bits(),
            target: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
struct Row {
    sources: Vec<usize>,
    target: usize,
    mass: f64,
}

/// An exact joint distribution over `N ≥ 1` source variables and one target.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    source_names: Vec<String>,
    source_alphabets: Vec<Vec<String>>,
    target_alphabet: Vec<Outcome>,
    /// Positive-mass rows in sorted key order.
    rows: Vec<Row>,
}

fn check_alphabet<T: Ord + fmt::Display>(variable: &str, alphabet: &[T]) -> Result<()> {
    if alphabet.is_empty() {
        return Err(Error::InvalidAlphabet {
            variable: variable.into(),
            reason: "empty".into(),
        });
    }
    let mut sorted: Vec<&T> = alphabet.iter().collect();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidAlphabet {
            variable: variable.into(),
            reason: format!("duplicate symbol `{}`", w[0]),
        });
    }
    Ok(())
}

fn index_of<T: PartialEq + Clone>(alphabet: &mut Vec<T>, symbol: &T, infer: bool) -> Option<usize> {
    match alphabet.iter().position(|s| s == symbol) {
        Some(i) => Some(i),
        None if infer => {
            alphabet.push(symbol.clone());
            Some(alphabet.len() - 1)
        }
        None => None,
    }
}

impl JointDistribution {
    /// Builds a distribution from probability-table rows.
    pub fn load(
        source_names: Vec<String>,
        records: &[Record],
        options: &LoadOptions,
    ) -> Result<JointDistribution> {
        let n = source_names.len();
        if n == 0 {
            return Err(Error::InvalidVariableSelection(
                "a distribution needs at least one source".into(),
            ));
        }
        if n > MAX_SOURCES {
            return Err(Error::InvalidVariableSelection(format!(
                "at most {MAX_SOURCES} sources are supported"
            )));
        }
        let infer_sources = options.source_alphabets.is_none();
        let mut source_alphabets = options
            .source_alphabets
            .clone()
            .unwrap_or_else(|| vec![Vec::new(); n]);
        if source_alphabets.len() != n {
            return Err(Error::InvalidVariableSelection(format!(
                "{} source alphabets declared for {n} sources",
                source_alphabets.len()
            )));
        }
        if !infer_sources {
            for (name, a) in source_names.iter().zip(&source_alphabets) {
                check_alphabet(name, a)?;
            }
        }
        let infer_target = options.target_alphabet.is_none();
        let mut target_alphabet = options.target_alphabet.clone().unwrap_or_default();
        if !infer_target {
            check_alphabet("target", &target_alphabet)?;
        }

        let mut keyed: BTreeMap<(Vec<usize>, usize), (usize, f64)> = BTreeMap::new();
        for (row, rec) in records.iter().enumerate() {
            if rec.sources.len() != n {
                return Err(Error::RowArity {
                    row,
                    expected: n,
                    found: rec.sources.len(),
                });
            }
            if !rec.mass.is_finite() || rec.mass < 0.0 {
                return Err(Error::NegativeMass {
                    row,
                    mass: rec.mass,
                });
            }
            let mut key = Vec::with_capacity(n);
            for (i, sym) in rec.sources.iter().enumerate() {
                let idx =
                    index_of(&mut source_alphabets[i], sym, infer_sources).ok_or_else(|| {
                        Error::UnknownSymbol {
                            variable: source_names[i].clone(),
                            symbol: sym.clone(),
                        }
                    })?;
                key.push(idx);
            }
            let t = index_of(&mut target_alphabet, &rec.target, infer_target).ok_or_else(|| {
                Error::UnknownSymbol {
                    variable: "target".into(),
                    symbol: rec.target.to_string(),
                }
            })?;
            if keyed.insert((key, t), (row, rec.mass)).is_some() {
                let shown: Vec<&str> = rec.sources.iter().map(String::as_str).collect();
                return Err(Error::DuplicateKey {
                    row,
                    key: format!("{} -> {}", shown.join(","), rec.target),
                });
            }
        }
        if target_alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (name, a) in source_names.iter().zip(&source_alphabets) {
            check_alphabet(name, a)?;
        }
        check_alphabet("target", &target_alphabet)?;

        let total: f64 = keyed.values().map(|&(_, m)| m).sum();
        if total <= 0.0
            || total.is_nan()
            || (!options.renormalize && (total - 1.0).abs() > NORMALIZATION_TOLERANCE)
        {
            return Err(Error::MassNotNormalized { total });
        }
        let rows = keyed
            .into_iter()
            .filter(|(_, (_, m))| *m >= MASS_EPSILON)
            .map(|((sources, target), (_, mass))| Row {
                sources,
                target,
                mass: mass / total,
            })
            .collect();
        Ok(JointDistribution {
            source_names,
            source_alphabets,
            target_alphabet,
            rows,
        })
    }

    /// Loads a table over sources only. The target is the tuple of all sources,
    /// over the support.
    pub fn load_joint(
        source_names: Vec<String>,
        rows: &[(Vec<String>, f64)],
        options: &LoadOptions,
    ) -> Result<JointDistribution> {
        let records: Vec<Record> = rows
            .iter()
            .map(|(sources, mass)| Record {
                sources: sources.clone(),
                target: Outcome::new(if sources.is_empty() {
                    vec![String::new()]
                } else {
                    sources.clone()
                }),
                mass: *mass,
            })
            .collect();
        let options = LoadOptions {
            target_alphabet: None,
            ..options.clone()
        };
        JointDistribution::load(source_names, &records, &options)
    }

    /// [`load`](Self::load) with default options, naming sources `X1…XN`.
    pub fn from_records(records: &[Record]) -> Result<JointDistribution> {
        let n = records.first().map_or(0, |r| r.sources.len());
        let names = (1..=n).map(|i| format!("X{i}")).collect();
        JointDistribution::load(names, records, &LoadOptions::default())
    }

    pub fn n_sources(&self) -> usize {
        self.source_names.len()
    }

    pub fn source_names(&self) -> &[String] {
        &self.source_names
    }

    pub fn source_alphabet(&self, i: usize) -> &[String] {
        &self.source_alphabets[i]
    }

    pub fn target_alphabet(&self) -> &[Outcome] {
        &self.target_alphabet
    }

    /// `|𝕐|`, counting declared outcomes with zero mass.
    pub fn target_len(&self) -> usize {
        self.target_alphabet.len()
    }

    /// Positive-mass rows as `(source value indices, target index, mass)`.
    pub fn rows(&self) -> impl Iterator<Item = (&[usize], usize, f64)> {
        self.rows
            .iter()
            .map(|r| (r.sources.as_slice(), r.target, r.mass))
    }

    /// Back to table form, with symbols.
    pub fn records(&self) -> Vec<Record> {
        self.rows
            .iter()
            .map(|r| Record {
                sources: r
                    .sources
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| self.source_alphabets[i][v].clone())
                    .collect(),
                target: self.target_alphabet[r.target].clone(),
                mass: r.mass,
            })
            .collect()
    }

    /// `p(y)` for every target outcome.
    pub fn target_marginal(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.target_len()];
        for r in &self.rows {
            p[r.target] += r.mass;
        }
        p
    }

    /// Mass of a set of target outcomes.
    pub fn event_mass(&self, event: Block) -> f64 {
        self.rows
            .iter()
            .filter(|r| event.contains(r.target))
            .map(|r| r.mass)
            .sum()
    }

    /// Indices of target outcomes with positive mass.
    pub fn target_support(&self) -> Vec<usize> {
        let p = self.target_marginal();
        (0..p.len()).filter(|&y| p[y] > 0.0).collect()
    }

    fn check_selection(&self, sel: Selection) -> Result<()> {
        if sel.sources == 0 && !sel.target {
            return Err(Error::InvalidVariableSelection("empty selection".into()));
        }
        let span = 32 - sel.sources.leading_zeros() as usize;
        if span > self.n_sources() {
            return Err(Error::InvalidVariableSelection(format!(
                "source {span} does not exist; the distribution has {} sources",
                self.n_sources()
            )));
        }
        Ok(())
    }

    fn projection(&self, sel: Selection) -> BTreeMap<Vec<usize>, f64> {
        let mut marginal: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for r in &self.rows {
            let mut key: Vec<usize> = r
                .sources
                .iter()
                .enumerate()
                .filter(|(i, _)| sel.sources >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            if sel.target {
                key.push(r.target);
            }
            *marginal.entry(key).or_insert(0.0) += r.mass;
        }
        marginal
    }

    /// Shannon entropy of a set of variables, in bits.
    pub fn entropy(&self, vars: impl Into<Selection>) -> Result<f64> {
        let sel = vars.into();
        self.check_selection(sel)?;
        Ok(self.projection(sel).values().map(|&p| plog(p)).sum())
    }

    /// `I(a; b)` in bits, computed as `H(a) + H(b) − H(a, b)`.
    pub fn mutual_information(
        &self,
        a: impl Into<Selection>,
        b: impl Into<Selection>,
    ) -> Result<f64> {
        let (a, b) = (a.into(), b.into());
        let ha = self.entropy(a)?;
        let hb = self.entropy(b)?;
        let hab = self.entropy(a.union(b))?;
        Ok((ha + hb - hab).max(0.0))
    }

    /// The joint mass table of a source set against the target.
    pub fn source_table(&self, sources: SourceSet) -> Result<SourceTable> {
        self.check_selection(sources.into())?;
        let idx = sources.indices();
        let mut values: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for r in &self.rows {
            let key: Vec<usize> = idx.iter().map(|&i| r.sources[i]).collect();
            let next = values.len();
            values.entry(key).or_insert(next);
        }
        // renumber in sorted key order
        for (k, v) in values.values_mut().enumerate() {
            *v = k;
        }
        let n_target = self.target_len();
        let mut mass = vec![0.0; values.len() * n_target];
        for r in &self.rows {
            let key: Vec<usize> = idx.iter().map(|&i| r.sources[i]).collect();
            mass[values[&key] * n_target + r.target] += r.mass;
        }
        Ok(SourceTable {
            n_values: values.len(),
            n_target,
            mass,
        })
    }

    /// `I(A; Y^{ℓ-1} | y^ℓ)`: the information a source set carries about which
    /// block of `finer` the target falls in, given that it falls in `event`.
    pub fn conditional_mi_given_event(
        &self,
        sources: SourceSet,
        finer: &Partition,
        event: Block,
    ) -> Result<f64> {
        if finer.alphabet_len() != self.target_len() {
            return Err(Error::DescriptorAlphabetMismatch {
                descriptor: finer.alphabet_len(),
                target: self.target_len(),
            });
        }
        let parts: Vec<Block> = finer
            .blocks()
            .iter()
            .map(|b| b.intersection(event))
            .filter(|b| !b.is_empty())
            .collect();
        let table = self.source_table(sources)?;
        let (mass, mi) = table.conditional_mi(&parts);
        if mass < MASS_EPSILON {
            return Err(Error::ZeroMassEvent);
        }
        Ok(mi)
    }

    /// A distribution whose target is the tuple of the given sources, keeping
    /// all sources. The target alphabet is the support of that tuple.
    pub fn retarget(&self, sources: SourceSet) -> Result<JointDistribution> {
        self.check_selection(sources.into())?;
        let idx = sources.indices();
        let records: Vec<Record> = self
            .records()
            .into_iter()
            .map(|mut r| {
                r.target = Outcome::new(idx.iter().map(|&i| r.sources[i].clone()).collect());
                r
            })
            .collect();
        self.rebuild(self.source_names.clone(), &records)
    }

    /// Target `Y = (X₁,…,X_N)`, over the support of `P`.
    pub fn with_joint_target(&self) -> JointDistribution {
        self.retarget(SourceSet::all(self.n_sources()))
            .expect("all sources form a valid selection")
    }

    /// Keeps the listed sources (zero-based, in the given order), marginalizing
    /// the others out.
    pub fn select_sources(&self, keep: &[usize]) -> Result<JointDistribution> {
        if keep.is_empty() {
            return Err(Error::InvalidVariableSelection("no sources kept".into()));
        }
        if let Some(&bad) = keep.iter().find(|&&i| i >= self.n_sources()) {
            return Err(Error::InvalidVariableSelection(format!(
                "source {} does not exist",
                bad + 1
            )));
        }
        let mut merged: BTreeMap<(Vec<String>, Outcome), f64> = BTreeMap::new();
        for r in self.records() {
            let key: Vec<String> = keep.iter().map(|&i| r.sources[i].clone()).collect();
            *merged.entry((key, r.target)).or_insert(0.0) += r.mass;
        }
        let records: Vec<Record> = merged
            .into_iter()
            .map(|((sources, target), mass)| Record {
                sources,
                target,
                mass,
            })
            .collect();
        let names = keep.iter().map(|&i| self.source_names[i].clone()).collect();
        let mut d = self.rebuild(names, &records)?;
        d.target_alphabet = self.target_alphabet.clone();
        d.remap_target_to(&self.target_alphabet);
        Ok(d)
    }

    /// Appends a source computed from each row's existing source values.
    pub fn with_derived_source(
        &self,
        name: &str,
        f: impl Fn(&[String]) -> String,
    ) -> JointDistribution {
        let records: Vec<Record> = self
            .records()
            .into_iter()
            .map(|mut r| {
                let v = f(&r.sources);
                r.sources.push(v);
                r
            })
            .collect();
        let mut names = self.source_names.clone();
        names.push(name.to_owned());
        let mut d = self
            .rebuild(names, &records)
            .expect("derived rows keep the key structure");
        d.remap_target_to(&self.target_alphabet);
        d
    }

    /// Independent product of two systems with the same number of sources:
    /// source `i` becomes the pair `(X_i, X̂_i)` and the target `(Y, Ŷ)`.
    pub fn independent_product(&self, other: &JointDistribution) -> Result<JointDistribution> {
        if self.n_sources() != other.n_sources() {
            return Err(Error::InvalidVariableSelection(
                "product systems need the same number of sources".into(),
            ));
        }
        let mut records = Vec::with_capacity(self.rows.len() * other.rows.len());
        for a in self.records() {
            for b in other.records() {
                let sources = a
                    .sources
                    .iter()
                    .zip(&b.sources)
                    .map(|(x, y)| format!("{x}/{y}"))
                    .collect();
                let mut target = a.target.components().to_vec();
                target.extend_from_slice(b.target.components());
                records.push(Record {
                    sources,
                    target: Outcome::new(target),
                    mass: a.mass * b.mass,
                });
            }
        }
        self.rebuild(self.source_names.clone(), &records)
    }

    /// The joint law of the sources and `f(Y)`. Rows that `f` sends to the
    /// same key are merged.
    pub fn map_target(&self, f: impl Fn(&Outcome) -> Outcome) -> Result<JointDistribution> {
        let mut merged: BTreeMap<(Vec<String>, Outcome), f64> = BTreeMap::new();
        for r in self.records() {
            *merged.entry((r.sources, f(&r.target))).or_insert(0.0) += r.mass;
        }
        let records: Vec<Record> = merged
            .into_iter()
            .map(|((sources, target), mass)| Record {
                sources,
                target,
                mass,
            })
            .collect();
        self.rebuild(self.source_names.clone(), &records)
    }

    fn rebuild(&self, names: Vec<String>, records: &[Record]) -> Result<JointDistribution> {
        JointDistribution::load(
            names,
            records,
            &LoadOptions {
                renormalize: true,
                ..LoadOptions::default()
            },
        )
    }

    /// Re-indexes an inferred target alphabet onto `alphabet`, which must
    /// contain every outcome that occurs.
    fn remap_target_to(&mut self, alphabet: &[Outcome]) {
        let map: Vec<usize> = self
            .target_alphabet
            .iter()
            .map(|o| alphabet.iter().position(|a| a == o).expect("outcome kept"))
            .collect();
        for r in &mut self.rows {
            r.target = map[r.target];
        }
        self.rows
            .sort_by(|a, b| (&a.sources, a.target).cmp(&(&b.sources, b.target)));
        self.target_alphabet = alphabet.to_vec();
    }

    /// Fails when the target alphabet is too large for descriptor work.
    pub(crate) fn check_outcome_limit(&self) -> Result<()> {
        if self.target_len() > MAX_OUTCOMES {
            return Err(Error::AlphabetTooLarge {
                size: self.target_len(),
                max: MAX_OUTCOMES,
            });
        }
        Ok(())
    }
}

/// Joint masses `p(a, y)` of one source set's values against target outcomes.
#[derive(Clone, Debug)]
pub struct SourceTable {
    n_values: usize,
    n_target: usize,
    mass: Vec<f64>,
}

impl SourceTable {
    pub fn n_values(&self) -> usize {
        self.n_values
    }

    pub fn mass(&self, value: usize, outcome: usize) -> f64 {
        self.mass[value * self.n_target + outcome]
    }

    /// Mass of the event `⋃ parts` and the information the source carries about
    /// which part the target is in, conditioned on that event.
    pub fn conditional_mi(&self, parts: &[Block]) -> (f64, f64) {
        let k = parts.len();
        let mut joint = vec![0.0; self.n_values * k];
        for a in 0..self.n_values {
            let row = &self.mass[a * self.n_target..(a + 1) * self.n_target];
            for (j, part) in parts.iter().enumerate() {
                joint[a * k + j] = part.iter().map(|y| row[y]).sum();
            }
        }
        let part_mass: Vec<f64> = (0..k)
            .map(|j| (0..self.n_values).map(|a| joint[a * k + j]).sum())
            .collect();
        let event: f64 = part_mass.iter().sum();
        if k <= 1 || event < MASS_EPSILON {
            return (event, 0.0);
        }
        let mut mi = 0.0;
        for a in 0..self.n_values {
            let cells = &joint[a * k..(a + 1) * k];
            let value_mass: f64 = cells.iter().sum();
            for (j, &m) in cells.iter().enumerate() {
                if m > 0.0 {
                    mi += m * (m * event / (value_mass * part_mass[j])).log2();
                }
            }
        }
        (event, (mi / event).max(0.0))
    }
}
