//! The canonical example distributions, with their expected two-source
//! decompositions.

use std::fmt;
use std::str::FromStr;

use crate::distribution::{JointDistribution, Outcome, Record};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExampleName {
    Rdn,
    ImperfectRdn,
    Unq1,
    Unq2,
    Unq,
    Syn,
    Corner,
    Xor,
    And,
    Sum,
    Dyadic,
    Triadic,
    RdnXor,
    RdnUnqXor,
    Table2Counterexample,
}

impl ExampleName {
    pub const ALL: [ExampleName; 15] = [
        ExampleName::Rdn,
        ExampleName::ImperfectRdn,
        ExampleName::Unq1,
        ExampleName::Unq2,
        ExampleName::Unq,
        ExampleName::Syn,
        ExampleName::Corner,
        ExampleName::Xor,
        ExampleName::And,
        ExampleName::Sum,
        ExampleName::Dyadic,
        ExampleName::Triadic,
        ExampleName::RdnXor,
        ExampleName::RdnUnqXor,
        ExampleName::Table2Counterexample,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExampleName::Rdn => "Rdn",
            ExampleName::ImperfectRdn => "ImperfectRdn",
            ExampleName::Unq1 => "Unq1",
            ExampleName::Unq2 => "Unq2",
            ExampleName::Unq => "Unq",
            ExampleName::Syn => "Syn",
            ExampleName::Corner => "Corner",
            ExampleName::Xor => "Xor",
            ExampleName::And => "And",
            ExampleName::Sum => "Sum",
            ExampleName::Dyadic => "Dyadic",
            ExampleName::Triadic => "Triadic",
            ExampleName::RdnXor => "RdnXor",
            ExampleName::RdnUnqXor => "RdnUnqXor",
            ExampleName::Table2Counterexample => "Table2Counterexample",
        }
    }
}

impl fmt::Display for ExampleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExampleName {
    type Err = Error;

    /// Case-insensitive; `-`, `_` and spaces are ignored.
    fn from_str(s: &str) -> Result<ExampleName> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .flat_map(char::to_lowercase)
            .collect();
        if key == "table2" {
            return Ok(ExampleName::Table2Counterexample);
        }
        ExampleName::ALL
            .into_iter()
            .find(|n| n.as_str().to_lowercase() == key)
            .ok_or_else(|| Error::UnknownExample(s.to_owned()))
    }
}

/// Two-source decomposition values printed for an example, in bits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Expected {
    pub total: f64,
    pub redundant: f64,
    pub unique1: f64,
    pub unique2: f64,
    pub synergy: f64,
}

const fn expected(
    total: f64,
    redundant: f64,
    unique1: f64,
    unique2: f64,
    synergy: f64,
) -> Expected {
    Expected {
        total,
        redundant,
        unique1,
        unique2,
        synergy,
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalExample {
    pub name: ExampleName,
    pub distribution: JointDistribution,
    /// `None` for examples that are not two-source decompositions.
    pub expected: Option<Expected>,
}

fn uniform<const N: usize>(rows: &[([&str; N], &str)]) -> Vec<Record> {
    let p = 1.0 / rows.len() as f64;
    rows.iter()
        .map(|(x, y)| Record::new(x.iter().copied(), *y, p))
        .collect()
}

fn bits(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..1u32 << n).map(move |v| (0..n).rev().map(|i| (v >> i & 1) as u8).collect())
}

fn join(v: &[u8]) -> String {
    v.iter().map(|b| b.to_string()).collect()
}

/// Builds uniform records from `bits → (x1, x2, y components)`.
fn uniform_over_bits(n: usize, f: impl Fn(&[u8]) -> (Vec<u8>, Vec<u8>, Vec<u8>)) -> Vec<Record> {
    let p = 1.0 / (1u32 << n) as f64;
    bits(n)
        .map(|b| {
            let (x1, x2, y) = f(&b);
            Record {
                sources: vec![join(&x1), join(&x2)],
                target: Outcome::new(y.iter().map(|c| c.to_string()).collect()),
                mass: p,
            }
        })
        .collect()
}

fn sources(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}")).collect()
}

pub fn canonical_example(name: ExampleName) -> CanonicalExample {
    use ExampleName::*;
    let (records, expected, n) = match name {
        Rdn => (
            uniform(&[(["0", "0"], "0"), (["1", "1"], "1")]),
            Some(expected(1.0, 1.0, 0.0, 0.0, 0.0)),
            2,
        ),
        ImperfectRdn => (
            vec![
                Record::new(["1", "1"], "1", 0.5),
                Record::new(["1", "0"], "0", 0.01),
                Record::new(["0", "0"], "0", 0.49),
            ],
            Some(expected(1.0, 0.93, 0.0, 0.07, 0.0)),
            2,
        ),
        Unq1 => (
            uniform(&[(["0", "0"], "0"), (["1", "0"], "1")]),
            Some(expected(1.0, 0.0, 1.0, 0.0, 0.0)),
            2,
        ),
        Unq2 => (
            uniform(&[(["0", "0"], "0"), (["0", "1"], "1")]),
            Some(expected(1.0, 0.0, 0.0, 1.0, 0.0)),
            2,
        ),
        Unq => (
            uniform(&[
                (["0", "0"], "y1"),
                (["0", "1"], "y2"),
                (["1", "0"], "y3"),
                (["1", "1"], "y4"),
            ]),
            Some(expected(2.0, 0.0, 1.0, 1.0, 0.0)),
            2,
        ),
        Syn => (
            uniform(&[
                (["0", "1"], "0"),
                (["1", "1"], "1"),
                (["2", "0"], "0"),
                (["2", "2"], "1"),
            ]),
            Some(expected(1.0, 0.5, 0.0, 0.0, 0.5)),
            2,
        ),
        Corner => (
            uniform(&[(["0", "1"], "0"), (["1", "0"], "0"), (["1", "1"], "1")]),
            Some(expected(0.92, 0.25, 0.0, 0.0, 0.67)),
            2,
        ),
        Xor => (
            uniform(&[
                (["0", "1"], "0"),
                (["1", "0"], "0"),
                (["0", "0"], "1"),
                (["1", "1"], "1"),
            ]),
            Some(expected(1.0, 0.0, 0.0, 0.0, 1.0)),
            2,
        ),
        And => (
            uniform(&[
                (["0", "1"], "0"),
                (["1", "0"], "0"),
                (["0", "0"], "0"),
                (["1", "1"], "1"),
            ]),
            Some(expected(0.81, 0.31, 0.0, 0.0, 0.5)),
            2,
        ),
        Sum => (
            uniform(&[
                (["0", "1"], "1"),
                (["1", "0"], "1"),
                (["0", "0"], "0"),
                (["1", "1"], "2"),
            ]),
            Some(expected(1.5, 0.5, 0.0, 0.0, 1.0)),
            2,
        ),
        Dyadic => (
            uniform(&[
                (["2", "3"], "B"),
                (["3", "3"], "+"),
                (["0", "2"], "B"),
                (["1", "2"], "+"),
                (["2", "1"], "o"),
                (["3", "1"], "x"),
                (["0", "0"], "o"),
                (["1", "0"], "x"),
            ]),
            Some(expected(2.0, 0.0, 1.0, 1.0, 0.0)),
            2,
        ),
        Triadic => (
            uniform(&[
                (["1", "3"], "+"),
                (["3", "3"], "B"),
                (["0", "2"], "x"),
                (["2", "2"], "o"),
                (["1", "1"], "B"),
                (["3", "1"], "+"),
                (["0", "0"], "o"),
                (["2", "0"], "x"),
            ]),
            Some(expected(2.0, 1.0, 0.0, 0.0, 1.0)),
            2,
        ),
        // X1 = (r, a), X2 = (r, b), Y = (r, a ⊕ b)
        RdnXor => (
            uniform_over_bits(3, |v| {
                let (r, a, b) = (v[0], v[1], v[2]);
                (vec![r, a], vec![r, b], vec![r, a ^ b])
            }),
            Some(expected(2.0, 1.0, 0.0, 0.0, 1.0)),
            2,
        ),
        // X1 = (r, a, c), X2 = (r, b, d), Y = (r, a, b, c ⊕ d)
        RdnUnqXor => (
            uniform_over_bits(5, |v| {
                let (r, a, b, c, d) = (v[0], v[1], v[2], v[3], v[4]);
                (vec![r, a, c], vec![r, b, d], vec![r, a, b, c ^ d])
            }),
            Some(expected(4.0, 1.0, 1.0, 1.0, 1.0)),
            2,
        ),
        // target is (Y⁰, Y¹, Y²)
        Table2Counterexample => {
            let rows = [
                (["0", "0", "1"], ["0", "0", "0"]),
                (["1", "0", "-1"], ["1", "0", "0"]),
                (["0", "1", "0"], ["2", "1", "0"]),
                (["1", "-1", "0"], ["3", "1", "0"]),
            ];
            let records = rows
                .iter()
                .map(|(x, y)| Record {
                    sources: x.iter().map(|s| s.to_string()).collect(),
                    target: Outcome::new(y.iter().map(|s| s.to_string()).collect()),
                    mass: 0.25,
                })
                .collect();
            (records, None, 3)
        }
    };
    let distribution = JointDistribution::load(sources(n), &records, &Default::default())
        .expect("corpus tables are valid");
    CanonicalExample {
        name,
        distribution,
        expected,
    }
}

/// Looks an example up by name.
pub fn example_by_name(name: &str) -> Result<CanonicalExample> {
    Ok(canonical_example(name.parse()?))
}
