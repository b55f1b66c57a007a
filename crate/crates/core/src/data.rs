//! UCI-style CSV ingestion, scalar target encoding and the bundled dataset
//! catalog.

use std::collections::{BTreeSet, HashMap};
use std::fs::File;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Marker used by the UCI files for a missing value.
pub const MISSING_MARKER: &str = "?";

/// Layout and headline counts of one dataset.
///
/// `attribute_count_incl_target` counts the predicting attributes plus the
/// target, excluding identifier columns, so a raw row has
/// `attribute_count_incl_target + id_columns.len()` fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetDescriptor {
    pub name: String,
    pub pattern_count: usize,
    pub attribute_count_incl_target: usize,
    pub class_count: usize,
    pub target_column: usize,
    #[serde(default)]
    pub categorical_columns: BTreeSet<usize>,
    #[serde(default)]
    pub id_columns: BTreeSet<usize>,
    #[serde(default)]
    pub has_header: bool,
    /// Full label domain in class-index order. When absent, the labels seen in
    /// the file are used, sorted numerically if they all parse as numbers.
    #[serde(default)]
    pub class_labels: Option<Vec<String>>,
    /// File name of the dataset as distributed.
    #[serde(default)]
    pub fixture: Option<String>,
}

impl DatasetDescriptor {
    pub fn field_count(&self) -> usize {
        self.attribute_count_incl_target + self.id_columns.len()
    }

    /// Number of predicting attributes fed to the network.
    pub fn input_count(&self) -> usize {
        self.attribute_count_incl_target - 1
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let descriptor: Self = serde_json::from_reader(file).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        descriptor.validate()?;
        Ok(descriptor)
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidArgument(format!("descriptor {:?}: {msg}", self.name)));
        let fields = self.field_count();
        if self.attribute_count_incl_target < 2 {
            return invalid("need at least one predicting attribute and a target".into());
        }
        if self.target_column >= fields {
            return invalid(format!("target column {} out of range for {fields} fields", self.target_column));
        }
        if self.id_columns.contains(&self.target_column) || self.categorical_columns.contains(&self.target_column) {
            return invalid("target column cannot be an id or categorical predictor column".into());
        }
        if let Some(&c) = self.id_columns.iter().chain(&self.categorical_columns).find(|&&c| c >= fields) {
            return invalid(format!("column {c} out of range for {fields} fields"));
        }
        if let Some(labels) = &self.class_labels {
            if labels.len() != self.class_count {
                return invalid(format!("{} labels declared for {} classes", labels.len(), self.class_count));
            }
            let distinct: BTreeSet<_> = labels.iter().collect();
            if distinct.len() != labels.len() {
                return invalid("duplicate class label".into());
            }
        }
        Ok(())
    }
}

/// Loaded dataset: predicting attributes, encoded targets and class metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub descriptor: DatasetDescriptor,
    /// `P x n` predicting attributes, one row per pattern.
    pub x: Vec<Vec<f64>>,
    /// Encoded scalar targets in `(0, 1)`.
    pub targets: Vec<f64>,
    pub classes: Vec<usize>,
    pub class_labels: Vec<String>,
    /// Rows skipped because they contained the missing-value marker.
    pub dropped_rows: usize,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn n(&self) -> usize {
        self.x.first().map_or(0, Vec::len)
    }

    pub fn class_count(&self) -> usize {
        self.class_labels.len()
    }

    pub fn class_index(&self, label: &str) -> Result<usize> {
        self.class_labels
            .iter()
            .position(|l| l == label.trim())
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

/// Encodes class `k` of `class_count` as `(k + 1) / (class_count + 1)`.
pub fn encode_target(k: usize, class_count: usize) -> Result<f64> {
    if k >= class_count {
        return Err(Error::InvalidArgument(format!("class index {k} out of range for {class_count} classes")));
    }
    Ok((k + 1) as f64 / (class_count + 1) as f64)
}

pub fn load_csv(path: &Path, descriptor: &DatasetDescriptor) -> Result<Dataset> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_csv(file, descriptor)
}

/// Parses comma-separated rows laid out as `descriptor` describes.
pub fn parse_csv<R: Read>(reader: R, descriptor: &DatasetDescriptor) -> Result<Dataset> {
    descriptor.validate()?;
    let fields = descriptor.field_count();
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(descriptor.has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut category_codes: HashMap<usize, Vec<String>> = HashMap::new();
    let mut x = Vec::new();
    let mut raw_labels = Vec::new();
    let mut dropped_rows = 0;
    for record in csv.records() {
        let record = record.map_err(|e| Error::MalformedRow {
            row: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let row = record.position().map_or(0, |p| p.line() as usize);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != fields {
            return Err(Error::MalformedRow {
                row,
                message: format!("expected {fields} fields, found {}", record.len()),
            });
        }
        if record.iter().any(|f| f == MISSING_MARKER) {
            dropped_rows += 1;
            continue;
        }

        let mut attributes = Vec::with_capacity(descriptor.input_count());
        for (col, field) in record.iter().enumerate() {
            if col == descriptor.target_column || descriptor.id_columns.contains(&col) {
                continue;
            }
            let value = if descriptor.categorical_columns.contains(&col) {
                let seen = category_codes.entry(col).or_default();
                match seen.iter().position(|s| s == field) {
                    Some(code) => code as f64,
                    None => {
                        seen.push(field.to_string());
                        (seen.len() - 1) as f64
                    }
                }
            } else {
                match field.parse::<f64>() {
                    Ok(v) if v.is_finite() => v,
                    _ => {
                        return Err(Error::MalformedRow {
                            row,
                            message: format!("column {col}: cannot parse {field:?} as a number"),
                        })
                    }
                }
            };
            attributes.push(value);
        }
        x.push(attributes);
        raw_labels.push((row, record[descriptor.target_column].to_string()));
    }

    if x.is_empty() {
        return Err(Error::EmptyData(format!(
            "{} contains no usable rows ({dropped_rows} dropped)",
            descriptor.name
        )));
    }

    let class_labels = match &descriptor.class_labels {
        Some(labels) => labels.clone(),
        None => observed_labels(raw_labels.iter().map(|(_, l)| l.as_str())),
    };
    let class_count = class_labels.len();
    let mut classes = Vec::with_capacity(raw_labels.len());
    let mut targets = Vec::with_capacity(raw_labels.len());
    for (row, label) in &raw_labels {
        let k = class_labels.iter().position(|l| l == label).ok_or_else(|| Error::MalformedRow {
            row: *row,
            message: format!("unknown class label {label:?}"),
        })?;
        classes.push(k);
        targets.push(encode_target(k, class_count)?);
    }

    Ok(Dataset {
        descriptor: descriptor.clone(),
        x,
        targets,
        classes,
        class_labels,
        dropped_rows,
    })
}

fn observed_labels<'a>(labels: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut distinct: Vec<String> = labels.collect::<BTreeSet<_>>().into_iter().map(String::from).collect();
    let numeric: Option<Vec<f64>> = distinct.iter().map(|l| l.parse::<f64>().ok()).collect();
    if let Some(values) = numeric {
        let mut paired: Vec<_> = values.into_iter().zip(distinct).collect();
        paired.sort_by(|a, b| a.0.total_cmp(&b.0));
        distinct = paired.into_iter().map(|(_, l)| l).collect();
    }
    distinct
}

fn labels<I: IntoIterator<Item = T>, T: ToString>(items: I) -> Option<Vec<String>> {
    Some(items.into_iter().map(|l| l.to_string()).collect())
}

/// The six benchmark datasets.
pub fn dataset_catalog() -> Vec<DatasetDescriptor> {
    vec![
        DatasetDescriptor {
            name: "iris".into(),
            pattern_count: 150,
            attribute_count_incl_target: 5,
            class_count: 3,
            target_column: 4,
            categorical_columns: BTreeSet::new(),
            id_columns: BTreeSet::new(),
            has_header: false,
            class_labels: labels(["Iris-setosa", "Iris-versicolor", "Iris-virginica"]),
            fixture: Some("iris.data".into()),
        },
        DatasetDescriptor {
            name: "abalone".into(),
            pattern_count: 4177,
            attribute_count_incl_target: 9,
            class_count: 29,
            target_column: 8,
            categorical_columns: BTreeSet::from([0]),
            id_columns: BTreeSet::new(),
            has_header: false,
            class_labels: labels(1..=29),
            fixture: Some("abalone.data".into()),
        },
        DatasetDescriptor {
            name: "bcw".into(),
            pattern_count: 699,
            attribute_count_incl_target: 10,
            class_count: 2,
            target_column: 10,
            categorical_columns: BTreeSet::new(),
            id_columns: BTreeSet::from([0]),
            has_header: false,
            class_labels: labels([2, 4]),
            fixture: Some("breast-cancer-wisconsin.data".into()),
        },
        DatasetDescriptor {
            name: "glass".into(),
            pattern_count: 214,
            attribute_count_incl_target: 10,
            class_count: 7,
            target_column: 10,
            categorical_columns: BTreeSet::new(),
            id_columns: BTreeSet::from([0]),
            has_header: false,
            class_labels: labels(1..=7),
            fixture: Some("glass.data".into()),
        },
        DatasetDescriptor {
            name: "soybean".into(),
            pattern_count: 47,
            attribute_count_incl_target: 36,
            class_count: 4,
            target_column: 35,
            categorical_columns: BTreeSet::new(),
            id_columns: BTreeSet::new(),
            has_header: false,
            class_labels: labels(["D1", "D2", "D3", "D4"]),
            fixture: Some("soybean-small.data".into()),
        },
        DatasetDescriptor {
            name: "wine".into(),
            pattern_count: 178,
            attribute_count_incl_target: 14,
            class_count: 3,
            target_column: 0,
            categorical_columns: BTreeSet::new(),
            id_columns: BTreeSet::new(),
            has_header: false,
            class_labels: labels(1..=3),
            fixture: Some("wine.data".into()),
        },
    ]
}

pub fn lookup(name: &str) -> Result<DatasetDescriptor> {
    let wanted = name.trim().to_ascii_lowercase();
    dataset_catalog()
        .into_iter()
        .find(|d| d.name == wanted)
        .ok_or_else(|| Error::UnknownDataset(name.to_string()))
}

/// Catalog entry whose distributed file name matches `path`'s file name.
pub fn lookup_by_file_name(path: &Path) -> Option<DatasetDescriptor> {
    let file = path.file_name()?.to_str()?;
    dataset_catalog().into_iter().find(|d| d.fixture.as_deref() == Some(file))
}

/// Raw contents of the datasets shipped with the crate.
pub fn bundled_fixture(name: &str) -> Option<&'static str> {
    match name {
        "iris" => Some(include_str!("../data/iris.data")),
        "bcw" => Some(include_str!("../data/breast-cancer-wisconsin.data")),
        "glass" => Some(include_str!("../data/glass.data")),
        "wine" => Some(include_str!("../data/wine.data")),
        _ => None,
    }
}

/// Loads a catalog dataset from the copy shipped with the crate.
pub fn load_bundled(name: &str) -> Result<Dataset> {
    let descriptor = lookup(name)?;
    let raw = bundled_fixture(&descriptor.name).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "dataset {:?} is not bundled; pass the path to {}",
            descriptor.name,
            descriptor.fixture.as_deref().unwrap_or("the data file")
        ))
    })?;
    parse_csv(raw.as_bytes(), &descriptor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_descriptor() -> DatasetDescriptor {
        DatasetDescriptor {
            name: "tiny".into(),
            pattern_count: 3,
            attribute_count_incl_target: 3,
            class_count: 2,
            target_column: 2,
            categorical_columns: BTreeSet::new(),
            id_columns: BTreeSet::new(),
            has_header: false,
            class_labels: None,
            fixture: None,
        }
    }

    #[test]
    fn encoding_values() {
        assert_eq!(encode_target(0, 2).unwrap(), 1.0 / 3.0);
        assert_eq!(encode_target(1, 2).unwrap(), 2.0 / 3.0);
        let three: Vec<f64> = (0..3).map(|k| encode_target(k, 3).unwrap()).collect();
        assert_eq!(three, vec![0.25, 0.5, 0.75]);
        assert!(encode_target(3, 3).is_err());
    }

    #[test]
    fn abalone_encodings_are_increasing_interior_points() {
        let enc: Vec<f64> = (0..29).map(|k| encode_target(k, 29).unwrap()).collect();
        assert!(enc.windows(2).all(|w| w[0] < w[1]));
        assert!(enc.iter().all(|&e| e > 0.0 && e < 1.0));
        assert!(enc[0] >= 1.0 / 30.0 && enc[28] <= 29.0 / 30.0);
    }

    #[test]
    fn parses_and_sorts_numeric_labels() {
        let data = parse_csv("1.0,2.0,10\n3.0,4.0,2\n5.0,6.0,10\n".as_bytes(), &tiny_descriptor()).unwrap();
        assert_eq!(data.class_labels, vec!["2", "10"]);
        assert_eq!(data.classes, vec![1, 0, 1]);
        assert_eq!(data.x[1], vec![3.0, 4.0]);
        assert_eq!(data.targets[0], 2.0 / 3.0);
        assert_eq!(data.class_index("10").unwrap(), 1);
        assert!(matches!(data.class_index("7"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn empty_file_is_an_error() {
        assert!(matches!(parse_csv("".as_bytes(), &tiny_descriptor()), Err(Error::EmptyData(_))));
        assert!(matches!(parse_csv("1,?,2\n".as_bytes(), &tiny_descriptor()), Err(Error::EmptyData(_))));
    }

    #[test]
    fn malformed_rows_report_their_line() {
        let err = parse_csv("1,2,a\n1,2\n".as_bytes(), &tiny_descriptor()).unwrap_err();
        assert!(matches!(err, Error::MalformedRow { row: 2, .. }), "{err}");
        let err = parse_csv("1,2,a\n1,x,b\n".as_bytes(), &tiny_descriptor()).unwrap_err();
        assert!(matches!(err, Error::MalformedRow { row: 2, .. }), "{err}");
    }

    #[test]
    fn declared_labels_reject_strangers() {
        let descriptor = DatasetDescriptor { class_labels: labels(["a", "b"]), ..tiny_descriptor() };
        let err = parse_csv("1,2,a\n1,2,c\n".as_bytes(), &descriptor).unwrap_err();
        assert!(matches!(err, Error::MalformedRow { row: 2, .. }), "{err}");
    }

    #[test]
    fn abalone_rows_code_sex_by_first_appearance() {
        let rows = "M,0.455,0.365,0.095,0.514,0.2245,0.101,0.15,15\n\
                    F,0.53,0.42,0.135,0.677,0.2565,0.1415,0.21,9\n\
                    I,0.33,0.255,0.08,0.205,0.0895,0.0395,0.055,7\n\
                    M,0.44,0.365,0.125,0.516,0.2155,0.114,0.155,10\n";
        let data = parse_csv(rows.as_bytes(), &lookup("abalone").unwrap()).unwrap();
        let sex: Vec<f64> = data.x.iter().map(|r| r[0]).collect();
        assert_eq!(sex, vec![0.0, 1.0, 2.0, 0.0]);
        assert_eq!(data.n(), 8);
        assert_eq!(data.class_count(), 29);
        assert_eq!(data.classes, vec![14, 8, 6, 9]);
    }

    #[test]
    fn catalog_contents() {
        let catalog = dataset_catalog();
        assert_eq!(catalog.len(), 6);
        for d in &catalog {
            d.validate().unwrap();
        }
        assert_eq!(lookup("soybean").unwrap().attribute_count_incl_target, 36);
        assert_eq!(lookup("Wine").unwrap().class_count, 3);
        assert!(matches!(lookup("unknown"), Err(Error::UnknownDataset(_))));
        assert_eq!(
            lookup_by_file_name(Path::new("/tmp/x/abalone.data")).map(|d| d.name),
            Some("abalone".to_string())
        );
        assert!(load_bundled("soybean").is_err());
    }

    #[test]
    fn descriptor_json_round_trip() {
        let d = lookup("glass").unwrap();
        let json = serde_json::to_string(&d).unwrap();
        let back: DatasetDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        let minimal: DatasetDescriptor = serde_json::from_str(
            r#"{"name":"m","pattern_count":3,"attribute_count_incl_target":3,"class_count":2,"target_column":2}"#,
        )
        .unwrap();
        minimal.validate().unwrap();
    }
}
