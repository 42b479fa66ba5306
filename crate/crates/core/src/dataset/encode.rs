use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::kdd::{RawField, RawRecord};
use super::FeatureMatrix;
use crate::error::{Error, Result};

/// Ordinal codes for symbolic columns, assigned in lexicographic order of
/// the vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoricalEncoder {
    /// `(column index, sorted vocabulary)` per symbolic column.
    columns: Vec<(usize, Vec<String>)>,
}

impl CategoricalEncoder {
    pub fn fit(records: &[RawRecord]) -> CategoricalEncoder {
        let mut builder = MatrixBuilder::default();
        for r in records {
            builder.observe_symbols(r);
        }
        builder.encoder()
    }

    pub fn vocabulary(&self, column: usize) -> Option<&[String]> {
        self.columns
            .iter()
            .find(|(c, _)| *c == column)
            .map(|(_, v)| v.as_slice())
    }

    pub fn encode(&self, column: usize, value: &str) -> Result<usize> {
        let vocab = self.vocabulary(column).ok_or_else(|| {
            Error::invalid(format!("column {column} is not a symbolic column"))
        })?;
        vocab
            .binary_search_by(|v| v.as_str().cmp(value))
            .map_err(|_| Error::UnseenSymbol {
                column,
                value: value.to_string(),
            })
    }

    pub fn decode(&self, column: usize, code: usize) -> Option<&str> {
        self.vocabulary(column)?.get(code).map(String::as_str)
    }

    /// Encodes records against this (already fitted) vocabulary.
    pub fn transform(&self, records: &[RawRecord], names: Vec<String>) -> Result<FeatureMatrix> {
        let width = names.len();
        let mut values = Vec::with_capacity(records.len() * width);
        for r in records {
            if r.fields.len() != width {
                return Err(Error::Dimension {
                    expected: width,
                    got: r.fields.len(),
                });
            }
            for (column, f) in r.fields.iter().enumerate() {
                values.push(match f {
                    RawField::Numeric(v) => *v,
                    RawField::Symbolic(s) => self.encode(column, s)? as f64,
                });
            }
        }
        FeatureMatrix::new(values, width, names)
    }
}

/// Streams records into a matrix, interning symbols as they arrive and
/// renumbering them lexicographically once all records are seen.
#[derive(Debug, Default)]
pub(crate) struct MatrixBuilder {
    values: Vec<f64>,
    width: Option<usize>,
    // column -> (symbol -> provisional id, provisional id -> symbol)
    symbols: Vec<(usize, HashMap<String, usize>, Vec<String>)>,
    // positions in `values` holding provisional ids, grouped by symbol slot
    pending: Vec<Vec<usize>>,
}

impl MatrixBuilder {
    fn slot(&mut self, column: usize) -> usize {
        if let Some(pos) = self.symbols.iter().position(|(c, _, _)| *c == column) {
            return pos;
        }
        self.symbols.push((column, HashMap::new(), Vec::new()));
        self.pending.push(Vec::new());
        self.symbols.len() - 1
    }

    fn intern(&mut self, column: usize, value: &str) -> usize {
        let slot = self.slot(column);
        let (_, index, list) = &mut self.symbols[slot];
        if let Some(&id) = index.get(value) {
            return id;
        }
        let id = list.len();
        index.insert(value.to_string(), id);
        list.push(value.to_string());
        id
    }

    fn observe_symbols(&mut self, record: &RawRecord) {
        for (column, f) in record.fields.iter().enumerate() {
            if let RawField::Symbolic(s) = f {
                self.intern(column, s);
            }
        }
    }

    pub(crate) fn push(&mut self, record: &RawRecord) -> Result<()> {
        let width = *self.width.get_or_insert(record.fields.len());
        if record.fields.len() != width {
            return Err(Error::Dimension {
                expected: width,
                got: record.fields.len(),
            });
        }
        for (column, f) in record.fields.iter().enumerate() {
            match f {
                RawField::Numeric(v) => self.values.push(*v),
                RawField::Symbolic(s) => {
                    let id = self.intern(column, s);
                    let slot = self.slot(column);
                    self.pending[slot].push(self.values.len());
                    self.values.push(id as f64);
                }
            }
        }
        Ok(())
    }

    fn encoder(&self) -> CategoricalEncoder {
        let mut columns: Vec<(usize, Vec<String>)> = self
            .symbols
            .iter()
            .map(|(c, _, list)| {
                let mut vocab = list.clone();
                vocab.sort();
                (*c, vocab)
            })
            .collect();
        columns.sort_by_key(|(c, _)| *c);
        CategoricalEncoder { columns }
    }

    pub(crate) fn finish(mut self, names: Vec<String>) -> Result<(FeatureMatrix, CategoricalEncoder)> {
        let encoder = self.encoder();
        for (slot, (column, _, list)) in self.symbols.iter().enumerate() {
            let vocab = encoder.vocabulary(*column).unwrap_or(&[]);
            let remap: Vec<f64> = list
                .iter()
                .map(|s| vocab.binary_search(s).unwrap_or(0) as f64)
                .collect();
            for &pos in &self.pending[slot] {
                self.values[pos] = remap[self.values[pos] as usize];
            }
        }
        if let Some(width) = self.width {
            if width != names.len() {
                return Err(Error::Dimension {
                    expected: names.len(),
                    got: width,
                });
            }
        }
        let matrix = FeatureMatrix::new(self.values, names.len(), names)?;
        Ok((matrix, encoder))
    }
}

/// Replaces every symbolic field by its ordinal code and parses the rest as
/// reals. Returns the fitted encoder alongside the matrix.
pub fn encode_symbolic(
    records: &[RawRecord],
    names: Vec<String>,
) -> Result<(FeatureMatrix, CategoricalEncoder)> {
    let mut builder = MatrixBuilder::default();
    for r in records {
        builder.push(r)?;
    }
    builder.finish(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(sym: &str, x: f64) -> RawRecord {
        RawRecord {
            fields: vec![RawField::Numeric(x), RawField::Symbolic(sym.into())],
            subcategory: "normal".into(),
        }
    }

    fn names() -> Vec<String> {
        vec!["x".into(), "proto".into()]
    }

    #[test]
    fn lexicographic_codes() {
        let records = vec![rec("udp", 1.0), rec("tcp", 2.0), rec("icmp", 3.0), rec("tcp", 4.0)];
        let (m, enc) = encode_symbolic(&records, names()).unwrap();
        assert_eq!(m.column(1), vec![2.0, 1.0, 0.0, 1.0]);
        assert_eq!(m.column(0), vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(enc.encode(1, "icmp").unwrap(), 0);
        assert_eq!(enc.encode(1, "tcp").unwrap(), 1);
        assert_eq!(enc.encode(1, "udp").unwrap(), 2);
    }

    #[test]
    fn single_value_vocabulary() {
        let records = vec![rec("tcp", 1.0), rec("tcp", 2.0)];
        let (m, _) = encode_symbolic(&records, names()).unwrap();
        assert_eq!(m.column(1), vec![0.0, 0.0]);
    }

    #[test]
    fn identical_vocabularies_identical_codes() {
        let a = vec![rec("tcp", 0.0), rec("udp", 0.0), rec("icmp", 0.0)];
        let b = vec![rec("icmp", 0.0), rec("icmp", 0.0), rec("udp", 0.0), rec("tcp", 0.0)];
        let (_, ea) = encode_symbolic(&a, names()).unwrap();
        let (_, eb) = encode_symbolic(&b, names()).unwrap();
        assert_eq!(ea, eb);
        assert_eq!(ea, CategoricalEncoder::fit(&b));
        let reencoded = ea.transform(&b, names()).unwrap();
        assert_eq!(reencoded, encode_symbolic(&b, names()).unwrap().0);
    }

    #[test]
    fn decode_inverts_encode() {
        let records = vec![rec("udp", 0.0), rec("tcp", 0.0), rec("icmp", 0.0)];
        let enc = CategoricalEncoder::fit(&records);
        for s in ["icmp", "tcp", "udp"] {
            let code = enc.encode(1, s).unwrap();
            assert_eq!(enc.decode(1, code), Some(s));
        }
        assert!(matches!(
            enc.encode(1, "sctp"),
            Err(Error::UnseenSymbol { column: 1, .. })
        ));
    }
}
