//! JSON interchange format for a Lie algebra with isotropy data.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use num_traits::Zero;
use crate::isotropy::IsotropyModel;
use crate::lie::{LieAlgebra, SparseBracket};
use crate::linalg::Matrix;
use crate::Rational;

/// A rational number written as `[+-]?digits(/digits)?`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Q(pub Rational);

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map(Q).map_err(serde::de::Error::custom)
    }
}

impl From<Rational> for Q {
    fn from(value: Rational) -> Self {
        Q(value)
    }
}

/// Parses `[+-]?digits(/digits)?` with a positive denominator.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let bad = || format!("invalid rational `{text}`");
    let (sign, body) = match text.as_bytes().first() {
        Some(b'-') => (-1, &text[1..]),
        Some(b'+') => (1, &text[1..]),
        _ => (1, text),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if !digits(num) || den.is_some_and(|d| !digits(d)) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in `{text}`"));
    }
    Ok(Rational::new(n * sign, d))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<usize, Q>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subalgebra: Option<Vec<Vec<Q>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement: Option<Vec<Vec<Q>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ad_generators: Option<Vec<Vec<Vec<Q>>>>,
}

/// A parse or shape error with the location of the offending field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocumentError {
    /// Dotted field path such as `brackets[2].coeffs.4`, or `.` for the root.
    pub path: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "at `{}` (line {l}, column {c}): {}", self.path, self.message),
            _ => write!(f, "at `{}`: {}", self.path, self.message),
        }
    }
}

impl std::error::Error for DocumentError {}

fn shape_error(path: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError {
        path: path.into(),
        line: None,
        column: None,
        message: message.into(),
    }
}

/// Failure to turn a document into a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadError {
    /// Malformed JSON or wrong shapes.
    Parse(DocumentError),
    /// Well-formed input that violates a mathematical requirement.
    Domain(Error),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Parse(e) => write!(f, "parse error {e}"),
            Self::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl From<DocumentError> for LoadError {
    fn from(e: DocumentError) -> Self {
        Self::Parse(e)
    }
}

impl From<Error> for LoadError {
    fn from(e: Error) -> Self {
        Self::Domain(e)
    }
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let mut de = serde_json::Deserializer::from_str(text);
        let doc: Self = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = match e.path().to_string() {
                p if p == "?" => ".".to_string(),
                p => p,
            };
            let inner = e.into_inner();
            DocumentError {
                path,
                line: Some(inner.line()),
                column: Some(inner.column()),
                message: strip_location(&inner.to_string()),
            }
        })?;
        de.end().map_err(|e| DocumentError {
            path: ".".into(),
            line: Some(e.line()),
            column: Some(e.column()),
            message: strip_location(&e.to_string()),
        })?;
        doc.check_shape()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Checks dimensions and indices without any algebra.
    pub fn check_shape(&self) -> Result<(), DocumentError> {
        let n = self.dim;
        if self.basis.len() != n {
            return Err(shape_error("basis", format!("expected {n} labels, found {}", self.basis.len())));
        }
        for (a, label) in self.basis.iter().enumerate() {
            if !is_label(label) {
                return Err(shape_error(format!("basis[{a}]"), format!("invalid label `{label}`")));
            }
            if self.basis[..a].contains(label) {
                return Err(shape_error(format!("basis[{a}]"), format!("duplicate label `{label}`")));
            }
        }
        for (idx, entry) in self.brackets.iter().enumerate() {
            if entry.i >= n {
                return Err(shape_error(format!("brackets[{idx}].i"), format!("index {} out of range", entry.i)));
            }
            if entry.j >= n {
                return Err(shape_error(format!("brackets[{idx}].j"), format!("index {} out of range", entry.j)));
            }
            if let Some(k) = entry.coeffs.keys().find(|&&k| k >= n) {
                return Err(shape_error(format!("brackets[{idx}].coeffs.{k}"), format!("index {k} out of range")));
            }
        }
        let check_vectors = |field: &str, vectors: &Option<Vec<Vec<Q>>>| -> Result<(), DocumentError> {
            for (a, v) in vectors.iter().flatten().enumerate() {
                if v.len() != n {
                    return Err(shape_error(format!("{field}[{a}]"), format!("expected {n} entries, found {}", v.len())));
                }
            }
            Ok(())
        };
        check_vectors("subalgebra", &self.subalgebra)?;
        check_vectors("complement", &self.complement)?;
        for (g, mat) in self.ad_generators.iter().flatten().enumerate() {
            if mat.len() != n {
                return Err(shape_error(format!("ad_generators[{g}]"), format!("expected {n} rows, found {}", mat.len())));
            }
            for (row, entries) in mat.iter().enumerate() {
                if entries.len() != n {
                    return Err(shape_error(
                        format!("ad_generators[{g}][{row}]"),
                        format!("expected {n} entries, found {}", entries.len()),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> Result<LieAlgebra<Rational>, DocumentError> {
        self.check_shape()?;
        let brackets: Vec<SparseBracket<Rational>> = self
            .brackets
            .iter()
            .map(|e| (e.i, e.j, e.coeffs.iter().map(|(k, c)| (*k, c.0.clone())).collect()))
            .collect();
        Ok(LieAlgebra::from_sparse(self.basis.clone(), &brackets))
    }

    /// Builds the isotropy model; the complement is greedy unless given.
    pub fn model(&self) -> Result<IsotropyModel<Rational>, LoadError> {
        let algebra = self.algebra()?;
        let vectors = |v: &Option<Vec<Vec<Q>>>| -> Vec<Vec<Rational>> {
            v.iter().flatten().map(|x| x.iter().map(|c| c.0.clone()).collect()).collect()
        };
        let h = vectors(&self.subalgebra);
        let generators: Vec<Matrix<Rational>> = self
            .ad_generators
            .iter()
            .flatten()
            .map(|m| Matrix::from_rows(&m.iter().map(|r| r.iter().map(|c| c.0.clone()).collect()).collect::<Vec<_>>()))
            .collect();
        let model = match &self.complement {
            Some(_) => IsotropyModel::with_complement(algebra, &h, vectors(&self.complement), generators)?,
            None => IsotropyModel::new(algebra, &h, generators)?,
        };
        Ok(model)
    }

    /// The document describing a Lie algebra and isotropy data.
    pub fn from_parts(
        name: &str,
        algebra: &LieAlgebra<Rational>,
        subalgebra: Option<&[Vec<Rational>]>,
        complement: Option<&[Vec<Rational>]>,
        generators: Option<&[Matrix<Rational>]>,
    ) -> Self {
        let n = algebra.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let coeffs: BTreeMap<usize, Q> = (0..n)
                    .filter(|&k| !algebra.constant(i, j, k).is_zero())
                    .map(|k| (k, Q(algebra.constant(i, j, k).clone())))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketEntry { i, j, coeffs });
                }
            }
        }
        let vecs = |v: &[Vec<Rational>]| v.iter().map(|x| x.iter().cloned().map(Q).collect()).collect();
        Self {
            name: name.to_string(),
            dim: n,
            basis: algebra.labels().to_vec(),
            brackets,
            subalgebra: subalgebra.map(vecs),
            complement: complement.map(vecs),
            ad_generators: generators.map(|gs| {
                gs.iter()
                    .map(|m| m.row_vectors().into_iter().map(|r| r.into_iter().map(Q).collect()).collect())
                    .collect()
            }),
        }
    }
}

fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn strip_location(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(pos) => msg[..pos].to_string(),
        None => msg.to_string(),
    }
}
