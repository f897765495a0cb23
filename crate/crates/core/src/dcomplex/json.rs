//! JSON interchange format for double complexes.
//!
//! ```json
//! {
//!   "components": [{"p": 0, "q": 0, "dim": 1, "labels": ["x"]}],
//!   "d1": [{"p": 0, "q": 0, "entries": [[0, 0, {"re": "1", "im": "0"}]]}],
//!   "d2": []
//! }
//! ```
//!
//! Output is canonical: components and matrices sorted by `(p, q)`, entries
//! by `(row, col)`, zero entries omitted.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::exactla::Matrix;
use crate::scalar::Scalar;

use super::{Bidegree, BigradedComplex, ComplexError};

pub const DEFAULT_MAX_DIM: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    /// Largest accepted dimension of a single component.
    pub max_dim: usize,
    /// Largest accepted number of listed components.
    pub max_components: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self { max_dim: DEFAULT_MAX_DIM, max_components: 4096 }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentJson {
    p: i64,
    q: i64,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    p: i64,
    q: i64,
    entries: Vec<(usize, usize, Scalar)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    components: Vec<ComponentJson>,
    #[serde(default)]
    d1: Vec<MatrixJson>,
    #[serde(default)]
    d2: Vec<MatrixJson>,
}

fn matrix_json(map: &BTreeMap<Bidegree, Matrix>) -> Vec<MatrixJson> {
    map.iter()
        .map(|(&(p, q), m)| MatrixJson {
            p,
            q,
            entries: m.nonzero_entries().map(|(r, c, x)| (r, c, x.clone())).collect(),
        })
        .collect()
}

impl BigradedComplex {
    /// Canonical pretty-printed JSON, newline-terminated.
    pub fn to_json(&self) -> String {
        let doc = ComplexJson {
            components: self
                .components()
                .iter()
                .map(|(&(p, q), &dim)| ComponentJson {
                    p,
                    q,
                    dim,
                    labels: self.stored_labels().get(&(p, q)).cloned(),
                })
                .collect(),
            d1: matrix_json(self.stored_d1()),
            d2: matrix_json(self.stored_d2()),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        Self::from_json_with(text, ParseOptions::default())
    }

    /// Parse and bounds-check. The differential laws are not checked here;
    /// call [`BigradedComplex::validate`].
    pub fn from_json_with(text: &str, opts: ParseOptions) -> Result<Self, ComplexError> {
        let doc: ComplexJson = serde_json::from_str(text).map_err(|e| ComplexError::Json {
            line: e.line(),
            column: e.column(),
            message: {
                let text = e.to_string();
                match text.rfind(" at line ") {
                    Some(cut) => text[..cut].to_string(),
                    None => text,
                }
            },
        })?;
        if doc.components.len() > opts.max_components {
            return Err(ComplexError::Invalid(format!(
                "{} components listed, above the limit {}",
                doc.components.len(),
                opts.max_components
            )));
        }
        let mut c = BigradedComplex::new();
        let mut seen = BTreeSet::new();
        for comp in &doc.components {
            let at = (comp.p, comp.q);
            if !seen.insert(at) {
                return Err(ComplexError::Invalid(format!("component ({},{}) listed twice", at.0, at.1)));
            }
            if comp.dim > opts.max_dim {
                return Err(ComplexError::TooLarge { p: at.0, q: at.1, dim: comp.dim, limit: opts.max_dim });
            }
            c.set_dim(at, comp.dim);
        }
        for comp in doc.components {
            if let Some(labels) = comp.labels {
                c.set_labels((comp.p, comp.q), labels)?;
            }
        }
        for (which, list, step) in [("d1", doc.d1, (1, 0)), ("d2", doc.d2, (0, 1))] {
            let mut seen = BTreeSet::new();
            for mj in list {
                let src = (mj.p, mj.q);
                if !seen.insert(src) {
                    return Err(ComplexError::Invalid(format!("{which} at ({},{}) listed twice", src.0, src.1)));
                }
                let dst = (src.0 + step.0, src.1 + step.1);
                let (rows, cols) = (c.dim(dst), c.dim(src));
                let mut m = Matrix::zeros(rows, cols);
                let mut cells = BTreeSet::new();
                for (r, col, x) in mj.entries {
                    if r >= rows || col >= cols {
                        return Err(ComplexError::Invalid(format!(
                            "{which} at ({},{}): entry [{r},{col}] outside {rows}x{cols}",
                            src.0, src.1
                        )));
                    }
                    if !cells.insert((r, col)) {
                        return Err(ComplexError::Invalid(format!(
                            "{which} at ({},{}): entry [{r},{col}] given twice",
                            src.0, src.1
                        )));
                    }
                    m.set(r, col, x);
                }
                if which == "d1" {
                    c.set_d1(src, m)?;
                } else {
                    c.set_d2(src, m)?;
                }
            }
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcomplex::tests::unit_square;

    #[test]
    fn round_trip_is_byte_stable() {
        let mut c = unit_square();
        c.set_labels((0, 0), vec!["a".into()]).unwrap();
        let text = c.to_json();
        let back = BigradedComplex::from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn malformed_scalar_reports_position() {
        let text = "{\"components\":[{\"p\":0,\"q\":0,\"dim\":1},{\"p\":1,\"q\":0,\"dim\":1}],\n\"d1\":[{\"p\":0,\"q\":0,\"entries\":[[0,0,{\"re\":\"1/0\",\"im\":\"0\"}]]}]}";
        match BigradedComplex::from_json(text) {
            Err(ComplexError::Json { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("1/0"), "{message}");
            }
            other => panic!("expected JSON error, got {other:?}"),
        }
    }

    #[test]
    fn out_of_range_entry_is_rejected() {
        let text = r#"{"components":[{"p":0,"q":0,"dim":1}],"d1":[{"p":0,"q":0,"entries":[[0,0,{"re":"1","im":"0"}]]}]}"#;
        assert!(matches!(BigradedComplex::from_json(text), Err(ComplexError::Invalid(_))));
    }

    #[test]
    fn oversized_component_is_rejected() {
        let text = r#"{"components":[{"p":0,"q":0,"dim":100000}]}"#;
        assert!(matches!(BigradedComplex::from_json(text), Err(ComplexError::TooLarge { .. })));
        let small = ParseOptions { max_dim: 2, ..ParseOptions::default() };
        let text = r#"{"components":[{"p":0,"q":0,"dim":3}]}"#;
        assert!(BigradedComplex::from_json_with(text, small).is_err());
    }
}
