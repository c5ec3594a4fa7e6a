//! JSON input files.
//!
//! A point file is `{"field": F, "n": n, "forms": [gram, ...], "subspace": basis}`
//! and a matrix file is `{"field": F, "matrix": rows}`, where `F` is
//! `{"kind": "prime", "p": p}` or `{"kind": "rational"}` and scalars are
//! integers or `"a/b"` strings.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::symplectic::{FormSpace, Subspace, SymplecticForm};
use crate::tangent::PointContext;

fn field_of(v: &Value) -> Result<FieldSpec> {
    let f = v.get("field").ok_or_else(|| Error::Parse("missing \"field\"".into()))?;
    serde_json::from_value(f.clone()).map_err(|e| Error::Parse(format!("bad field spec: {e}")))
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))
}

/// A point of the isotropic locus as read from disk. `basis` keeps the rows
/// as written so diagnostics refer to the file's own vectors.
#[derive(Clone, Debug)]
pub struct PointFile {
    pub forms: FormSpace,
    pub basis: Matrix,
}

impl PointFile {
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_value(&parse_value(text)?)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let field = field_of(v)?;
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing or non-integer \"n\"".into()))? as usize;
        let forms = v
            .get("forms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("\"forms\" must be an array of matrices".into()))?;
        if forms.is_empty() {
            return Err(Error::Parse("\"forms\" is empty".into()));
        }
        let forms = forms
            .iter()
            .map(|g| {
                let g = Matrix::from_json(field, g)?;
                if g.rows() != n || g.cols() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "form is {}x{}, expected {n}x{n}",
                        g.rows(),
                        g.cols()
                    )));
                }
                SymplecticForm::new(g)
            })
            .collect::<Result<Vec<_>>>()?;
        let forms = FormSpace::new(forms)?;
        let basis = Matrix::from_json(
            field,
            v.get("subspace").ok_or_else(|| Error::Parse("missing \"subspace\"".into()))?,
        )?;
        if basis.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "subspace vectors have length {}, expected {n}",
                basis.cols()
            )));
        }
        Ok(Self { forms, basis })
    }

    pub fn to_value(&self) -> Value {
        json!({
            "field": self.forms.field(),
            "n": self.forms.dim(),
            "forms": self.forms,
            "subspace": self.basis,
        })
    }

    /// Checks isotropy against the rows as written, then builds the default
    /// frame.
    pub fn context(&self) -> Result<PointContext> {
        if let Some((form, i, j, value)) = self.forms.isotropy_violation(&self.basis)? {
            return Err(Error::NotIsotropic {
                form,
                i,
                j,
                value: value.to_string(),
            });
        }
        PointContext::new(Subspace::from_basis(&self.basis)?, self.forms.clone())
    }
}

/// Reads a matrix file.
pub fn parse_matrix_file(text: &str) -> Result<Matrix> {
    let v = parse_value(text)?;
    let field = field_of(&v)?;
    Matrix::from_json(
        field,
        v.get("matrix").ok_or_else(|| Error::Parse("missing \"matrix\"".into()))?,
    )
}

pub fn matrix_file_value(m: &Matrix) -> Value {
    json!({ "field": m.field(), "matrix": m })
}
