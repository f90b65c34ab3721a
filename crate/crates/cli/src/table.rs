//! Tab-separated probability tables.

use pidc::{JointDistribution, LoadOptions, Record};

use crate::CliError;

/// A parsed table: header plus data rows, each tagged with its line number.
#[derive(Debug)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<(usize, Vec<String>)>,
}

/// Column roles picked from the header.
#[derive(Debug, PartialEq, Eq)]
pub struct Layout {
    pub sources: Vec<usize>,
    pub target: Option<usize>,
    pub prob: usize,
}

impl Table {
    /// Blank lines and lines starting with `#` are skipped; the first other
    /// line is the header.
    pub fn parse(text: &str) -> Result<Table, CliError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (_, head) = lines
            .next()
            .ok_or_else(|| CliError::Input("empty distribution file".into()))?;
        let header: Vec<String> = head.split('\t').map(|s| s.trim().to_owned()).collect();
        for (i, name) in header.iter().enumerate() {
            if name.is_empty() {
                return Err(CliError::Input(format!(
                    "column {} has an empty name",
                    i + 1
                )));
            }
            if header[..i].contains(name) {
                return Err(CliError::Input(format!("column `{name}` appears twice")));
            }
        }
        let mut rows = Vec::new();
        for (line, l) in lines {
            let fields: Vec<String> = l.split('\t').map(|s| s.trim().to_owned()).collect();
            if fields.len() != header.len() {
                return Err(CliError::Input(format!(
                    "line {line}: expected {} fields, found {}",
                    header.len(),
                    fields.len()
                )));
            }
            rows.push((line, fields));
        }
        Ok(Table { header, rows })
    }

    fn column(&self, name: &str) -> Result<usize, CliError> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Input(format!("no column named `{name}`")))
    }

    /// Probability: `prob`, else the column `p`, else the last column.
    /// Target (when wanted): `target`, else the last other column.
    pub fn layout(
        &self,
        target: Option<&str>,
        prob: Option<&str>,
        with_target: bool,
    ) -> Result<Layout, CliError> {
        let prob = match prob {
            Some(name) => self.column(name)?,
            None => self.column("p").unwrap_or(self.header.len() - 1),
        };
        let mut rest: Vec<usize> = (0..self.header.len()).filter(|&i| i != prob).collect();
        let target = if with_target {
            let t = match target {
                Some(name) => self.column(name)?,
                None => *rest
                    .last()
                    .ok_or_else(|| CliError::Input("no target column".into()))?,
            };
            if t == prob {
                return Err(CliError::Input(
                    "target and probability columns coincide".into(),
                ));
            }
            rest.retain(|&i| i != t);
            Some(t)
        } else {
            None
        };
        if rest.is_empty() {
            return Err(CliError::Input("no source columns".into()));
        }
        Ok(Layout {
            sources: rest,
            target,
            prob,
        })
    }

    fn mass(&self, line: usize, field: &str) -> Result<f64, CliError> {
        match field.parse::<f64>() {
            Ok(p) if p.is_finite() => Ok(p),
            _ => Err(CliError::Input(format!(
                "line {line}: bad probability `{field}`"
            ))),
        }
    }

    fn names(&self, columns: &[usize]) -> Vec<String> {
        columns.iter().map(|&i| self.header[i].clone()).collect()
    }

    /// Sources against a target column.
    pub fn distribution(
        &self,
        layout: &Layout,
        renormalize: bool,
    ) -> Result<JointDistribution, CliError> {
        let t = layout.target.expect("layout with a target");
        let records = self
            .rows
            .iter()
            .map(|(line, f)| {
                let sources = layout.sources.iter().map(|&i| f[i].clone());
                Ok(Record::new(
                    sources,
                    f[t].clone(),
                    self.mass(*line, &f[layout.prob])?,
                ))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let opts = LoadOptions {
            renormalize,
            ..LoadOptions::default()
        };
        Ok(JointDistribution::load(
            self.names(&layout.sources),
            &records,
            &opts,
        )?)
    }

    /// Every non-probability column as a variable, with the joint as target.
    pub fn joint(&self, layout: &Layout, renormalize: bool) -> Result<JointDistribution, CliError> {
        let rows = self
            .rows
            .iter()
            .map(|(line, f)| {
                let values = layout.sources.iter().map(|&i| f[i].clone()).collect();
                Ok((values, self.mass(*line, &f[layout.prob])?))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let opts = LoadOptions {
            renormalize,
            ..LoadOptions::default()
        };
        Ok(JointDistribution::load_joint(
            self.names(&layout.sources),
            &rows,
            &opts,
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AND: &str =
        "# and gate\nX1\tX2\tY\tp\n0\t0\t0\t0.25\n0\t1\t0\t0.25\n1\t0\t0\t0.25\n1\t1\t1\t0.25\n";

    #[test]
    fn default_layout() {
        let t = Table::parse(AND).unwrap();
        let l = t.layout(None, None, true).unwrap();
        assert_eq!(
            l,
            Layout {
                sources: vec![0, 1],
                target: Some(2),
                prob: 3
            }
        );
        let d = t.distribution(&l, false).unwrap();
        assert_eq!(d.n_sources(), 2);
        assert_eq!(d.target_len(), 2);
        let j = t.layout(None, None, false).unwrap();
        assert_eq!(j.sources, [0, 1, 2]);
    }

    #[test]
    fn probability_column_defaults_to_last() {
        let t = Table::parse("Y\tA\tmass\n0\t0\t1\n").unwrap();
        let l = t.layout(None, None, true).unwrap();
        assert_eq!((l.prob, l.target), (2, Some(1)));
        let l = t.layout(Some("Y"), Some("mass"), true).unwrap();
        assert_eq!((l.sources, l.target), (vec![1], Some(0)));
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(Table::parse("").is_err());
        assert!(Table::parse("A\tA\tp\n").is_err());
        assert!(Table::parse("A\tY\tp\n0\t0\n").is_err());
        let t = Table::parse("A\tY\tp\n0\t0\tx\n").unwrap();
        let l = t.layout(None, None, true).unwrap();
        assert!(t.distribution(&l, false).is_err());
        assert!(t.layout(Some("Z"), None, true).is_err());
        assert!(Table::parse("Y\tp\n0\t1\n")
            .unwrap()
            .layout(None, None, true)
            .is_err());
    }
}
