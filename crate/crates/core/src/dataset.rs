//! Labeled numeric datasets and CSV ingestion.
//!
//! A [`Dataset`] is an immutable `N × d` matrix of finite reals with one
//! opaque string label per row. Labels are interned into dense [`ClassId`]s
//! in order of first appearance so that the neighbor engine only ever
//! compares integers.

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Dense identifier of a class label within one dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId(pub usize);

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Vec<f64>,
    n: usize,
    d: usize,
    labels: Vec<String>,
    classes: Vec<ClassId>,
    class_names: Vec<String>,
}

impl Dataset {
    /// Builds a dataset from row vectors and their labels.
    pub fn from_rows<L: Into<String>>(rows: Vec<Vec<f64>>, labels: Vec<L>) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        for (row, values) in rows.iter().enumerate() {
            if values.len() != d {
                return Err(Error::DimensionMismatch {
                    row,
                    expected: d,
                    found: values.len(),
                });
            }
        }
        let features = rows.into_iter().flatten().collect();
        Self::from_flat(features, d, labels)
    }

    /// Builds a dataset from a row-major buffer of `labels.len() * d` values.
    pub fn from_flat<L: Into<String>>(
        features: Vec<f64>,
        d: usize,
        labels: Vec<L>,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        if n < 2 {
            return Err(Error::TooFewInstances(n));
        }
        if d == 0 {
            return Err(Error::NoFeatures);
        }
        if features.len() != n * d {
            return Err(Error::LabelCountMismatch {
                rows: features.len() / d,
                labels: n,
            });
        }
        if let Some(pos) = features.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / d,
                column: pos % d,
            });
        }

        let mut class_names: Vec<String> = Vec::new();
        let classes = labels
            .iter()
            .map(|label| match class_names.iter().position(|c| c == label) {
                Some(k) => ClassId(k),
                None => {
                    class_names.push(label.clone());
                    ClassId(class_names.len() - 1)
                }
            })
            .collect();

        Ok(Self {
            features,
            n,
            d,
            labels,
            classes,
            class_names,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.features.chunks_exact(self.d)
    }

    /// Row-major feature buffer.
    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn class_of(&self, i: usize) -> ClassId {
        self.classes[i]
    }

    pub fn classes(&self) -> &[ClassId] {
        &self.classes
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn class_name(&self, class: ClassId) -> &str {
        &self.class_names[class.0]
    }

    /// Member count per class, in order of first appearance.
    pub fn class_counts(&self) -> Vec<(&str, usize)> {
        let mut counts = vec![0usize; self.class_names.len()];
        for c in &self.classes {
            counts[c.0] += 1;
        }
        self.class_names
            .iter()
            .map(String::as_str)
            .zip(counts)
            .collect()
    }

    /// Keeps only the columns in `subset`, in subset order.
    pub fn project(&self, subset: &FeatureSubset) -> Result<Dataset> {
        subset.check(self.d)?;
        let mut features = Vec::with_capacity(self.n * subset.len());
        for row in self.rows() {
            features.extend(subset.indices().iter().map(|&k| row[k]));
        }
        Ok(Dataset {
            features,
            n: self.n,
            d: subset.len(),
            labels: self.labels.clone(),
            classes: self.classes.clone(),
            class_names: self.class_names.clone(),
        })
    }

    /// Applies `f(column, value)` to every feature value. The result must stay finite.
    pub fn map_features(&self, mut f: impl FnMut(usize, f64) -> f64) -> Result<Dataset> {
        let d = self.d;
        let features = self
            .features
            .iter()
            .enumerate()
            .map(|(pos, &v)| f(pos % d, v))
            .collect();
        Dataset::from_flat(features, d, self.labels.clone())
    }

    /// Writes the dataset as CSV with the label in the last column.
    ///
    /// Values use the shortest decimal form that parses back to the same
    /// `f64`, so [`read_csv`] on the output restores the features bit-exactly.
    pub fn write_csv<W: Write>(&self, writer: W, header: bool) -> Result<()> {
        let mut out = csv::Writer::from_writer(writer);
        let csv_err = |e: csv::Error| Error::Csv {
            row: 0,
            message: e.to_string(),
        };
        if header {
            let mut names: Vec<String> = (0..self.d).map(|k| format!("x{k}")).collect();
            names.push("label".to_string());
            out.write_record(&names).map_err(csv_err)?;
        }
        for (i, row) in self.rows().enumerate() {
            let mut record: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            record.push(self.labels[i].clone());
            out.write_record(&record).map_err(csv_err)?;
        }
        out.flush().map_err(|e| Error::Csv {
            row: 0,
            message: e.to_string(),
        })
    }
}

/// Which CSV column holds the class label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelColumn {
    #[default]
    Last,
    Index(usize),
}

impl std::str::FromStr for LabelColumn {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("last") {
            return Ok(LabelColumn::Last);
        }
        s.parse::<usize>()
            .map(LabelColumn::Index)
            .map_err(|_| format!("expected `last` or a column index, got {s:?}"))
    }
}

/// Loads a labeled dataset from a CSV file.
pub fn load_csv(
    path: impl AsRef<Path>,
    has_header: bool,
    label_column: LabelColumn,
) -> Result<Dataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_csv(file, has_header, label_column)
}

/// Parses CSV from any reader. Row numbers in errors are 1-based file lines.
pub fn read_csv<R: Read>(
    reader: R,
    has_header: bool,
    label_column: LabelColumn,
) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut width: Option<usize> = None;
    let mut label_at = 0;
    let mut features = Vec::new();
    let mut labels = Vec::new();

    for record in rdr.records() {
        let record = record.map_err(|e| Error::Csv {
            row: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let row = record.position().map_or(0, |p| p.line() as usize);
        let expected = match width {
            Some(w) => w,
            None => {
                let w = record.len();
                label_at = match label_column {
                    LabelColumn::Last => w.saturating_sub(1),
                    LabelColumn::Index(k) if k < w => k,
                    LabelColumn::Index(k) => {
                        return Err(Error::MissingLabelColumn {
                            column: k,
                            width: w,
                        })
                    }
                };
                if w < 2 {
                    return Err(Error::NoFeatures);
                }
                width = Some(w);
                w
            }
        };
        if record.len() != expected {
            return Err(Error::RaggedRow {
                row,
                expected,
                found: record.len(),
            });
        }
        for (column, cell) in record.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::EmptyCell { row, column });
            }
            if column == label_at {
                labels.push(cell.to_string());
                continue;
            }
            match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => features.push(v),
                _ => {
                    return Err(Error::BadCell {
                        row,
                        column,
                        value: cell.to_string(),
                    })
                }
            }
        }
    }

    let d = width.map_or(0, |w| w - 1);
    if labels.len() < 2 {
        return Err(Error::TooFewInstances(labels.len()));
    }
    Dataset::from_flat(features, d, labels)
}

/// An ordered, duplicate-free, non-empty selection of feature columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeatureSubset(Vec<usize>);

impl FeatureSubset {
    pub fn new(indices: Vec<usize>, dims: usize) -> Result<Self> {
        let subset = FeatureSubset(indices);
        subset.check(dims)?;
        Ok(subset)
    }

    /// Every column of a `dims`-feature dataset, in order.
    pub fn all(dims: usize) -> Self {
        FeatureSubset((0..dims).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check(&self, dims: usize) -> Result<()> {
        if self.0.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut seen = vec![false; dims];
        for &index in &self.0 {
            if index >= dims {
                return Err(Error::FeatureOutOfRange { index, dims });
            }
            if std::mem::replace(&mut seen[index], true) {
                return Err(Error::DuplicateFeature(index));
            }
        }
        Ok(())
    }
}

/// Semicolon-joined indices, e.g. `0;2`.
impl fmt::Display for FeatureSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, index) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{index}")?;
        }
        Ok(())
    }
}
