//! Validated samples on the open unit interval, text ingestion, and the
//! built-in flood fixture.

use std::path::Path;

use crate::error::{Error, Result};

/// Maximum flood levels of the Susquehanna River at Harrisburg, PA
/// (20 observations, as ratios).
pub const FLOOD: [f64; 20] = [
    0.26, 0.27, 0.30, 0.32, 0.32, 0.34, 0.38, 0.38, 0.39, 0.40, //
    0.41, 0.42, 0.42, 0.42, 0.45, 0.48, 0.49, 0.61, 0.65, 0.74,
];

pub const BUILTIN_NAMES: [&str; 1] = ["flood"];

/// Sorted sample with every value strictly inside `(0, 1)`. Ties are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
}

impl Dataset {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        let bad: Vec<f64> = values.iter().copied().filter(|v| !(*v > 0.0 && *v < 1.0)).collect();
        if !bad.is_empty() {
            return Err(Error::OutOfUnitInterval { values: bad });
        }
        values.sort_by(f64::total_cmp);
        Ok(Dataset { values })
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "flood" => Dataset::new(FLOOD.to_vec()),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }

    pub fn flood() -> Self {
        Dataset::new(FLOOD.to_vec()).expect("fixture is valid")
    }

    /// Parses newline-, comma- or whitespace-separated decimals.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (li, line) in text.lines().enumerate() {
            let mut column = 1;
            for token in line.split(|c: char| c == ',' || c.is_whitespace()) {
                if !token.is_empty() {
                    let v: f64 = token.parse().map_err(|_| Error::Parse {
                        line: li + 1,
                        column,
                        detail: format!("`{token}` is not a number"),
                    })?;
                    values.push(v);
                }
                column += token.chars().count() + 1;
            }
        }
        Dataset::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Sample size `m`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Where to read a dataset from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DataSource {
    Builtin(String),
    File(String),
}

impl DataSource {
    /// Built-in names win over file paths of the same spelling.
    pub fn parse(s: &str) -> Self {
        if BUILTIN_NAMES.contains(&s) {
            DataSource::Builtin(s.to_string())
        } else {
            DataSource::File(s.to_string())
        }
    }
}

pub fn load_dataset(source: &DataSource) -> Result<Dataset> {
    match source {
        DataSource::Builtin(name) => Dataset::builtin(name),
        DataSource::File(path) => {
            let text = std::fs::read_to_string(Path::new(path))
                .map_err(|e| Error::Io { path: path.clone(), detail: e.to_string() })?;
            Dataset::parse_text(&text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flood_fixture() {
        let d = Dataset::flood();
        assert_eq!(d.len(), 20);
        assert_eq!(d.values()[0], 0.26);
        assert_eq!(d.values()[19], 0.74);
        let count = |x: f64| d.values().iter().filter(|&&v| v == x).count();
        assert_eq!(count(0.32), 2);
        assert_eq!(count(0.38), 2);
        assert_eq!(count(0.42), 3);
        assert!(d.values().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn parse_sorts_and_splits() {
        let d = Dataset::parse_text("0.5\n0.25").unwrap();
        assert_eq!(d.values(), &[0.25, 0.5]);
        let d = Dataset::parse_text("0.3, 0.1 0.2\n\n  0.9\t0.4,").unwrap();
        assert_eq!(d.values(), &[0.1, 0.2, 0.3, 0.4, 0.9]);
    }

    #[test]
    fn parse_errors() {
        match Dataset::parse_text("1.2") {
            Err(Error::OutOfUnitInterval { values }) => assert_eq!(values, vec![1.2]),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Dataset::parse_text("0.0 0.5"), Err(Error::OutOfUnitInterval { .. })));
        match Dataset::parse_text("0.1 0.2\n0.3 abc") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(Dataset::parse_text(" \n"), Err(Error::Empty));
        assert!(matches!(Dataset::parse_text("NaN"), Err(Error::OutOfUnitInterval { .. })));
    }

    #[test]
    fn sources() {
        assert_eq!(DataSource::parse("flood"), DataSource::Builtin("flood".into()));
        assert_eq!(DataSource::parse("x.txt"), DataSource::File("x.txt".into()));
        assert_eq!(load_dataset(&DataSource::parse("flood")).unwrap(), Dataset::flood());
        assert!(matches!(
            load_dataset(&DataSource::File("/nonexistent/file".into())),
            Err(Error::Io { .. })
        ));
    }
}
