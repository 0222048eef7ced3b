//! Serialized form of a table: the JSON document the tools read and
//! write.
//!
//! A document carries the field modulus, the generating seeds when
//! known, the 5x3 point rows as element-string pairs, the operator
//! names, and optionally the verification verdicts. Serialization is
//! lossless: parsing an emitted document reproduces the table exactly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::{FieldCtx, GaloisError};
use crate::pauli::{MubReport, PauliOp};
use crate::phase_space::{MubTable, Point, SeedParams};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("only the field x^2+x+1 is supported, document has {0}")]
    UnsupportedField(String),
}

/// The eight seed entries by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedsDoc {
    pub a11: String,
    pub b11: String,
    pub a12: String,
    pub b12: String,
    pub a21: String,
    pub b21: String,
    pub a22: String,
    pub b22: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureDoc {
    pub separable: usize,
    pub entangled: usize,
    pub anomalous: usize,
}

/// Verification verdicts, flattened from a full report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictsDoc {
    pub rows_commute: [bool; 5],
    pub partition: bool,
    pub orthonormal: [bool; 5],
    pub overlaps_quarter: bool,
    pub signature: SignatureDoc,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seeds: Option<SeedsDoc>,
    pub rows: [[[String; 2]; 3]; 5],
    pub operators: [[String; 3]; 5],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<VerdictsDoc>,
}

impl TableDocument {
    pub fn from_table(table: &MubTable, seeds: Option<&SeedParams>) -> Self {
        let rows = table
            .rows()
            .map(|row| row.map(|p| [p.a.to_string(), p.b.to_string()]));
        let operators = table
            .rows()
            .map(|row| row.map(|p| PauliOp::at_point(p).name()));
        TableDocument {
            field: FieldCtx::gf4().poly_str(),
            seeds: seeds.map(|s| {
                let [a11, b11, a12, b12, a21, b21, a22, b22] = s.as_array().map(|e| e.to_string());
                SeedsDoc {
                    a11,
                    b11,
                    a12,
                    b12,
                    a21,
                    b21,
                    a22,
                    b22,
                }
            }),
            rows,
            operators,
            verdicts: None,
        }
    }

    pub fn with_verdicts(mut self, report: &MubReport) -> Self {
        let mut rows_commute = [false; 5];
        let mut orthonormal = [false; 5];
        for (k, row) in report.rows.iter().enumerate() {
            rows_commute[k] = row.commute_predicate && row.commute_matrix;
            orthonormal[k] = row.orthonormal;
        }
        self.verdicts = Some(VerdictsDoc {
            rows_commute,
            partition: report.partition.ok,
            orthonormal,
            overlaps_quarter: !report.overlaps.is_empty()
                && report.overlaps.iter().all(|o| o.all_quarter),
            signature: SignatureDoc {
                separable: report.signature.separable,
                entangled: report.signature.entangled,
                anomalous: report.signature.anomalous,
            },
            valid: report.valid,
        });
        self
    }

    /// Reconstructs the table (and seeds, when present). Only the GF(4)
    /// modulus is accepted; the operator and verdict fields are derived
    /// data and are not consulted.
    pub fn to_table(&self) -> Result<(MubTable, Option<SeedParams>), DocumentError> {
        let ctx = FieldCtx::gf4();
        if FieldCtx::from_poly_str(&self.field)? != ctx {
            return Err(DocumentError::UnsupportedField(self.field.clone()));
        }
        let mut rows = [[Point::origin(ctx); 3]; 5];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, [a, b]) in row.iter().enumerate() {
                rows[r][c] = Point::new(ctx.parse_element(a)?, ctx.parse_element(b)?)
                    .expect("elements share the GF(4) context");
            }
        }
        let table = MubTable::from_rows(rows).expect("points share the GF(4) context");
        let seeds = match &self.seeds {
            None => None,
            Some(s) => {
                let parse = |v: &str| ctx.parse_element(v);
                Some(
                    SeedParams::new(
                        parse(&s.a11)?,
                        parse(&s.b11)?,
                        parse(&s.a12)?,
                        parse(&s.b12)?,
                        parse(&s.a21)?,
                        parse(&s.b21)?,
                        parse(&s.a22)?,
                        parse(&s.b22)?,
                    )
                    .expect("elements share the GF(4) context"),
                )
            }
        };
        Ok((table, seeds))
    }

    pub fn from_json(s: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serializes");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::verify_mub;
    use crate::phase_space::build_table;

    fn reference_seeds() -> SeedParams {
        SeedParams::from_bits([3, 2, 1, 3, 2, 2, 1, 2]).unwrap()
    }

    #[test]
    fn document_round_trips_table_and_seeds() {
        let seeds = reference_seeds();
        let table = build_table(&seeds);
        let doc = TableDocument::from_table(&table, Some(&seeds));
        let parsed = TableDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(parsed, doc);
        let (table2, seeds2) = parsed.to_table().unwrap();
        assert_eq!(table2, table);
        assert_eq!(seeds2, Some(seeds));
    }

    #[test]
    fn seeds_and_verdicts_are_optional() {
        let table = build_table(&reference_seeds());
        let doc = TableDocument::from_table(&table, None);
        let json = doc.to_json();
        assert!(!json.contains("seeds"));
        assert!(!json.contains("verdicts"));
        let (table2, seeds2) = TableDocument::from_json(&json).unwrap().to_table().unwrap();
        assert_eq!(table2, table);
        assert_eq!(seeds2, None);
    }

    #[test]
    fn verdicts_flatten_the_report() {
        let table = build_table(&reference_seeds());
        let report = verify_mub(&table);
        let doc = TableDocument::from_table(&table, None).with_verdicts(&report);
        let v = doc.verdicts.as_ref().unwrap();
        assert!(v.valid);
        assert_eq!(v.rows_commute, [true; 5]);
        assert_eq!(v.orthonormal, [true; 5]);
        assert!(v.partition && v.overlaps_quarter);
        assert_eq!(
            v.signature,
            SignatureDoc {
                separable: 3,
                entangled: 2,
                anomalous: 0
            }
        );
        // verdicts survive the JSON round trip
        let parsed = TableDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(parsed.verdicts, doc.verdicts);
    }

    #[test]
    fn operator_names_are_emitted() {
        let table = build_table(&reference_seeds());
        let doc = TableDocument::from_table(&table, None);
        assert_eq!(doc.operators[0], ["ZX", "XY", "YZ"]);
        assert_eq!(doc.operators[2], ["XX", "ZZ", "YY"]);
    }

    #[test]
    fn bad_documents_are_rejected() {
        let table = build_table(&reference_seeds());
        let mut doc = TableDocument::from_table(&table, None);
        doc.field = "x^3+x+1".to_owned();
        assert!(matches!(
            doc.to_table(),
            Err(DocumentError::UnsupportedField(_))
        ));

        let mut doc = TableDocument::from_table(&table, None);
        doc.rows[0][0][0] = "q".to_owned();
        assert!(matches!(doc.to_table(), Err(DocumentError::Galois(_))));

        assert!(TableDocument::from_json("{").is_err());
        assert!(TableDocument::from_json("{\"field\": \"x^2+x+1\"}").is_err());
    }
}
