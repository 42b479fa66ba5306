//! KDD-99 connection record format.
//!
//! Each line holds 41 comma-separated features followed by the attack name,
//! usually with a trailing period (`smurf.`). Columns 2-4 (1-indexed) are
//! symbolic: protocol type, service and TCP flag.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use flate2::read::MultiGzDecoder;

use super::encode::MatrixBuilder;
use super::LabeledDataset;
use crate::error::{Error, Result};

pub const N_FEATURES: usize = 41;

/// Zero-based indices of the symbolic columns.
pub const SYMBOLIC_COLUMNS: [usize; 3] = [1, 2, 3];

pub const FEATURE_NAMES: [&str; N_FEATURES] = [
    "duration",
    "protocol_type",
    "service",
    "flag",
    "src_bytes",
    "dst_bytes",
    "land",
    "wrong_fragment",
    "urgent",
    "hot",
    "num_failed_logins",
    "logged_in",
    "num_compromised",
    "root_shell",
    "su_attempted",
    "num_root",
    "num_file_creations",
    "num_shells",
    "num_access_files",
    "num_outbound_cmds",
    "is_host_login",
    "is_guest_login",
    "count",
    "srv_count",
    "serror_rate",
    "srv_serror_rate",
    "rerror_rate",
    "srv_rerror_rate",
    "same_srv_rate",
    "diff_srv_rate",
    "srv_diff_host_rate",
    "dst_host_count",
    "dst_host_srv_count",
    "dst_host_same_srv_rate",
    "dst_host_diff_srv_rate",
    "dst_host_same_src_port_rate",
    "dst_host_srv_diff_host_rate",
    "dst_host_serror_rate",
    "dst_host_srv_serror_rate",
    "dst_host_rerror_rate",
    "dst_host_srv_rerror_rate",
];

/// Category ids are indices into this list.
pub const CATEGORY_NAMES: [&str; 5] = ["normal", "dos", "probe", "r2l", "u2r"];

pub const NORMAL: usize = 0;
pub const DOS: usize = 1;
pub const PROBE: usize = 2;
pub const R2L: usize = 3;
pub const U2R: usize = 4;

/// Attack name, record count in the 10% training file, and category.
pub const TEN_PERCENT_SUBCATEGORIES: [(&str, usize, usize); 23] = [
    ("smurf", 280_790, DOS),
    ("neptune", 107_201, DOS),
    ("back", 2_203, DOS),
    ("teardrop", 979, DOS),
    ("pod", 264, DOS),
    ("land", 21, DOS),
    ("normal", 97_277, NORMAL),
    ("satan", 1_589, PROBE),
    ("ipsweep", 1_247, PROBE),
    ("portsweep", 1_040, PROBE),
    ("nmap", 231, PROBE),
    ("warezclient", 1_020, R2L),
    ("guess_passwd", 53, R2L),
    ("warezmaster", 20, R2L),
    ("imap", 12, R2L),
    ("ftp_write", 8, R2L),
    ("multihop", 7, R2L),
    ("phf", 4, R2L),
    ("spy", 2, R2L),
    ("buffer_overflow", 30, U2R),
    ("rootkit", 10, U2R),
    ("loadmodule", 9, U2R),
    ("perl", 3, U2R),
];

/// Category totals of the 10% training file, indexed like [`CATEGORY_NAMES`].
pub const TEN_PERCENT_CATEGORY_TOTALS: [usize; 5] = [97_277, 391_458, 4_107, 1_126, 52];

pub fn category_names() -> Vec<String> {
    CATEGORY_NAMES.iter().map(|s| s.to_string()).collect()
}

pub fn feature_names() -> Vec<String> {
    FEATURE_NAMES.iter().map(|s| s.to_string()).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum RawField {
    Numeric(f64),
    Symbolic(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawRecord {
    pub fields: Vec<RawField>,
    pub subcategory: String,
}

/// Splits one record into its 41 feature fields and the attack name.
///
/// `line_no` is only used for error messages.
pub fn parse_kdd_record(line: &str, line_no: usize) -> Result<RawRecord> {
    let parts: Vec<&str> = line.trim_end_matches(['\r', '\n']).split(',').collect();
    if parts.len() != N_FEATURES + 1 {
        return Err(Error::MalformedRecord {
            line: line_no,
            found: parts.len(),
        });
    }
    let mut fields = Vec::with_capacity(N_FEATURES);
    for (column, raw) in parts[..N_FEATURES].iter().enumerate() {
        let raw = raw.trim();
        if SYMBOLIC_COLUMNS.contains(&column) {
            fields.push(RawField::Symbolic(raw.to_string()));
        } else {
            let v: f64 = raw.parse().map_err(|_| Error::Parse {
                line: line_no,
                column: column + 1,
                value: raw.to_string(),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    column: column + 1,
                    value: raw.to_string(),
                });
            }
            fields.push(RawField::Numeric(v));
        }
    }
    let label = parts[N_FEATURES].trim();
    let label = label.strip_suffix('.').unwrap_or(label);
    Ok(RawRecord {
        fields,
        subcategory: label.to_string(),
    })
}

/// Subcategory to category lookup, seeded with the 10% training file's
/// attack list.
#[derive(Debug, Clone)]
pub struct CategoryMap {
    map: HashMap<String, usize>,
}

impl Default for CategoryMap {
    fn default() -> Self {
        let map = TEN_PERCENT_SUBCATEGORIES
            .iter()
            .map(|&(name, _, cat)| (name.to_string(), cat))
            .collect();
        CategoryMap { map }
    }
}

impl CategoryMap {
    pub fn get(&self, subcategory: &str) -> Result<usize> {
        self.map
            .get(subcategory)
            .copied()
            .ok_or_else(|| Error::UnknownSubcategory(subcategory.to_string()))
    }

    pub fn insert(&mut self, subcategory: &str, category: &str) -> Result<()> {
        let id = CATEGORY_NAMES
            .iter()
            .position(|&c| c.eq_ignore_ascii_case(category))
            .ok_or_else(|| Error::UnknownCategory(category.to_string()))?;
        self.map.insert(subcategory.to_string(), id);
        Ok(())
    }

    /// Adds `subcategory,category` lines on top of the built-in table.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn extend_from_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (sub, cat) = line.split_once(',').ok_or(Error::MalformedRecord {
                line: i + 1,
                found: 1,
            })?;
            self.insert(sub.trim().trim_end_matches('.'), cat.trim())?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut map = CategoryMap::default();
        map.extend_from_text(&text)?;
        Ok(map)
    }
}

/// Category id under the built-in attack table.
pub fn map_category(subcategory: &str) -> Result<usize> {
    CategoryMap::default().get(subcategory)
}

/// Parses records from an iterator of lines; blank lines are skipped.
pub fn load_kdd_lines<I, S>(lines: I, categories: &CategoryMap) -> Result<LabeledDataset>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut acc = Accumulator::default();
    for (i, line) in lines.into_iter().enumerate() {
        acc.push_line(line.as_ref(), i + 1, categories)?;
    }
    acc.finish()
}

#[derive(Default)]
struct Accumulator {
    builder: MatrixBuilder,
    labels: Vec<usize>,
    subcategory: Vec<String>,
}

impl Accumulator {
    fn push_line(&mut self, line: &str, line_no: usize, categories: &CategoryMap) -> Result<()> {
        if line.trim().is_empty() {
            return Ok(());
        }
        let record = parse_kdd_record(line, line_no)?;
        self.labels.push(categories.get(&record.subcategory)?);
        self.builder.push(&record)?;
        self.subcategory.push(record.subcategory);
        Ok(())
    }

    fn finish(self) -> Result<LabeledDataset> {
        let (matrix, _encoder) = self.builder.finish(feature_names())?;
        LabeledDataset::new(matrix, self.labels, category_names(), self.subcategory)
    }
}

/// Opens a file, transparently decompressing gzip input.
pub fn open_text(path: &Path) -> Result<Box<dyn BufRead>> {
    let mut file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut magic = [0u8; 2];
    let n = file.read(&mut magic).map_err(|e| Error::io(path, e))?;
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    if n == 2 && magic == [0x1f, 0x8b] {
        Ok(Box::new(BufReader::new(MultiGzDecoder::new(file))))
    } else {
        Ok(Box::new(BufReader::new(file)))
    }
}

/// Loads a KDD-99 file (plain or gzip) into a labeled dataset.
pub fn load_kdd(path: &Path, categories: &CategoryMap) -> Result<LabeledDataset> {
    let reader = open_text(path)?;
    let mut acc = Accumulator::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        acc.push_line(&line, i + 1, categories)?;
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMURF: &str = "0,icmp,ecr_i,SF,1032,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,511,511,0.00,0.00,0.00,0.00,1.00,0.00,0.00,255,255,1.00,0.00,1.00,0.00,0.00,0.00,0.00,0.00,smurf.";
    const NORMAL_LINE: &str = "0,tcp,http,SF,181,5450,0,0,0,0,0,1,0,0,0,0,0,0,0,0,0,0,8,8,0.00,0.00,0.00,0.00,1.00,0.00,0.00,9,9,1.00,0.00,0.11,0.00,0.00,0.00,0.00,0.00,normal.";

    #[test]
    fn trailing_period_stripped() {
        assert_eq!(parse_kdd_record(SMURF, 1).unwrap().subcategory, "smurf");
        assert_eq!(parse_kdd_record(NORMAL_LINE, 1).unwrap().subcategory, "normal");
        let no_period = NORMAL_LINE.trim_end_matches('.');
        assert_eq!(parse_kdd_record(no_period, 1).unwrap().subcategory, "normal");
    }

    #[test]
    fn three_symbolic_columns() {
        let rec = parse_kdd_record(NORMAL_LINE, 1).unwrap();
        assert_eq!(rec.fields.len(), 41);
        let symbolic: Vec<usize> = rec
            .fields
            .iter()
            .enumerate()
            .filter(|(_, f)| matches!(f, RawField::Symbolic(_)))
            .map(|(i, _)| i)
            .collect();
        assert_eq!(symbolic, vec![1, 2, 3]);
        assert_eq!(rec.fields[2], RawField::Symbolic("http".into()));
        assert_eq!(rec.fields[4], RawField::Numeric(181.0));
    }

    #[test]
    fn wrong_field_count_reports_line() {
        let err = parse_kdd_record("0,tcp,http,SF,normal.", 17).unwrap_err();
        assert!(matches!(err, Error::MalformedRecord { line: 17, found: 5 }));
    }

    #[test]
    fn non_numeric_in_numeric_column() {
        let bad = SMURF.replacen("1032", "abc", 1);
        let err = parse_kdd_record(&bad, 3).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 5, .. }));
    }

    #[test]
    fn table_categories() {
        assert_eq!(map_category("neptune").unwrap(), DOS);
        assert_eq!(map_category("normal").unwrap(), NORMAL);
        assert_eq!(map_category("buffer_overflow").unwrap(), U2R);
        assert_eq!(map_category("spy").unwrap(), R2L);
        assert_eq!(map_category("nmap").unwrap(), PROBE);
        match map_category("mscan") {
            Err(Error::UnknownSubcategory(name)) => assert_eq!(name, "mscan"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn table_totals_consistent() {
        assert_eq!(TEN_PERCENT_SUBCATEGORIES.len(), 23);
        let mut totals = [0usize; 5];
        for (_, n, c) in TEN_PERCENT_SUBCATEGORIES {
            totals[c] += n;
        }
        assert_eq!(totals, TEN_PERCENT_CATEGORY_TOTALS);
        assert_eq!(totals.iter().sum::<usize>(), 494_020);
    }

    #[test]
    fn override_map() {
        let mut map = CategoryMap::default();
        map.extend_from_text("# extra attacks\nmscan,probe\n\napache2.,DoS\n")
            .unwrap();
        assert_eq!(map.get("mscan").unwrap(), PROBE);
        assert_eq!(map.get("apache2").unwrap(), DOS);
        assert!(map.extend_from_text("x,nonsense").is_err());
    }

    #[test]
    fn load_lines_builds_dataset() {
        let ds = load_kdd_lines([SMURF, "", NORMAL_LINE], &CategoryMap::default()).unwrap();
        assert_eq!(ds.n_samples(), 2);
        assert_eq!(ds.n_features(), 41);
        assert_eq!(ds.labels, vec![DOS, NORMAL]);
        // protocol vocabulary {icmp, tcp}
        assert_eq!(ds.matrix.get(0, 1), 0.0);
        assert_eq!(ds.matrix.get(1, 1), 1.0);
    }
}
