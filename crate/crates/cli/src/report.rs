//! Reports: serialized as JSON, or rendered as tables rounded to 4 decimals.

use std::fmt::Write;

use pidc::expansion::Expansion;
use pidc::pid::{DecompositionResult, Optimum};
use pidc::{Block, Descriptor, JointDistribution};
use serde::Serialize;

/// A descriptor as nested outcome names, levels `1..=L`, plus its text form.
#[derive(Debug, Serialize)]
pub struct DescriptorReport {
    pub levels: Vec<Vec<Vec<String>>>,
    pub text: String,
}

fn names(d: &JointDistribution) -> Vec<String> {
    d.target_alphabet().iter().map(|o| o.to_string()).collect()
}

fn members(b: Block, names: &[String]) -> Vec<String> {
    b.iter().map(|i| names[i].clone()).collect()
}

impl DescriptorReport {
    pub fn new(d: &JointDistribution, desc: &Descriptor) -> DescriptorReport {
        let names = names(d);
        let levels = desc.levels()[1..]
            .iter()
            .map(|p| p.blocks().iter().map(|&b| members(b, &names)).collect())
            .collect();
        DescriptorReport {
            levels,
            text: desc.to_inline(&names),
        }
    }

    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "descriptor:");
        for (i, level) in self.levels.iter().enumerate() {
            let blocks: Vec<String> = level.iter().map(|b| b.join(",")).collect();
            let _ = writeln!(out, "  level {}: {}", i + 1, blocks.join(" | "));
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TermReport {
    pub level: usize,
    pub event: Vec<String>,
    pub weight: f64,
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct ExpandReport {
    pub source: String,
    pub descriptor: DescriptorReport,
    pub terms: Vec<TermReport>,
    pub total: f64,
}

impl ExpandReport {
    pub fn new(
        d: &JointDistribution,
        source: String,
        desc: &Descriptor,
        e: &Expansion,
    ) -> ExpandReport {
        let names = names(d);
        ExpandReport {
            source,
            descriptor: DescriptorReport::new(d, desc),
            terms: e
                .terms
                .iter()
                .map(|t| TermReport {
                    level: t.level,
                    event: members(t.event, &names),
                    weight: t.weight,
                    value: t.value,
                })
                .collect(),
            total: e.total,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PiReport {
    pub node: String,
    /// Unclamped.
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct DecomposeReport {
    pub sources: Vec<String>,
    pub total: f64,
    pub single: [f64; 2],
    pub shared: f64,
    pub union: f64,
    pub redundant: f64,
    pub unique1: f64,
    pub unique2: f64,
    pub synergy: f64,
    pub pi: Vec<PiReport>,
    pub descriptor: DescriptorReport,
}

impl DecomposeReport {
    pub fn new(d: &JointDistribution, r: &DecompositionResult) -> DecomposeReport {
        DecomposeReport {
            sources: d.source_names().to_vec(),
            total: r.total,
            single: r.single,
            shared: r.shared,
            union: r.union,
            redundant: r.redundant(),
            unique1: r.unique(1),
            unique2: r.unique(2),
            synergy: r.synergy(),
            pi: r
                .pi
                .iter()
                .map(|(a, value)| PiReport {
                    node: a.to_string(),
                    value,
                })
                .collect(),
            descriptor: DescriptorReport::new(d, &r.descriptor),
        }
    }
}

/// Shared information of a collection, or multiple information.
#[derive(Debug, Serialize)]
pub struct ValueReport {
    /// The collection, or the variables of a multiple-information query.
    pub of: String,
    pub value: f64,
    pub descriptor: DescriptorReport,
}

impl ValueReport {
    pub fn new(d: &JointDistribution, of: String, o: &Optimum) -> ValueReport {
        ValueReport {
            of,
            value: o.value,
            descriptor: DescriptorReport::new(d, &o.descriptor),
        }
    }
}

pub trait Render {
    fn render(&self) -> String;
}

impl Render for ExpandReport {
    fn render(&self) -> String {
        let events: Vec<String> = self.terms.iter().map(|t| t.event.join(",")).collect();
        let w = events.iter().map(|e| e.len()).max().unwrap_or(0).max(5);
        let mut out = String::new();
        let _ = writeln!(out, "source {}", self.source);
        let _ = writeln!(
            out,
            "{:<5}  {:<w$}  {:>8}  {:>8}",
            "level", "event", "weight", "value"
        );
        for (t, e) in self.terms.iter().zip(&events) {
            let _ = writeln!(
                out,
                "{:<5}  {:<w$}  {:>8.4}  {:>8.4}",
                t.level, e, t.weight, t.value
            );
        }
        let _ = writeln!(
            out,
            "{:<5}  {:<w$}  {:>8}  {:>8.4}",
            "total", "", "", self.total
        );
        self.descriptor.render(&mut out);
        out
    }
}

impl Render for DecomposeReport {
    fn render(&self) -> String {
        let mut out = String::new();
        let rows = [
            ("total", self.total),
            ("redundant", self.redundant),
            (&*format!("unique {}", self.sources[0]), self.unique1),
            (&*format!("unique {}", self.sources[1]), self.unique2),
            ("synergy", self.synergy),
        ];
        let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<w$}  {v:.4}");
        }
        self.descriptor.render(&mut out);
        out
    }
}

impl Render for ValueReport {
    fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}  {:.4}", self.of, self.value);
        self.descriptor.render(&mut out);
        out
    }
}
