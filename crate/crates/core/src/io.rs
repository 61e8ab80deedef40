//! JSON encodings of fields, codes, tuples, anticodes, isometries and tap
//! matrices. Matrices are lists of rows of element encodings.

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::anticode::{AnticodeDescriptor, BlockAnticode};
use crate::code::{LinearCode, MatrixTuple, Shape};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldContext};
use crate::isom::{BlockIsometry, Isometry};
use crate::matfq::{MatrixFq, Subspace};

pub type Rows = Vec<Vec<u32>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    #[serde(default = "one")]
    pub e: u32,
    /// Monic modulus, constant term first; the default one when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

fn is_true(b: &bool) -> bool {
    *b
}

fn yes() -> bool {
    true
}

impl FieldJson {
    pub fn build(&self) -> Result<Field> {
        FieldContext::new(self.p, self.e, self.modulus.clone())
    }

    pub fn of(field: &Field) -> Self {
        let e = field.degree();
        FieldJson {
            p: field.characteristic(),
            e,
            modulus: (e > 1).then(|| field.modulus().to_vec()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeJson {
    pub m: Vec<usize>,
    pub n: Vec<usize>,
    /// `false` allows `n_i > m_i` and unsorted `m_i`.
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub strict: bool,
}

impl ShapeJson {
    pub fn build(&self) -> Result<Shape> {
        let (m, n) = (self.m.clone(), self.n.clone());
        if self.strict {
            Shape::new(m, n)
        } else {
            Shape::non_strict(m, n)
        }
    }

    pub fn of(shape: &Shape) -> Self {
        ShapeJson {
            m: shape.m().to_vec(),
            n: shape.n().to_vec(),
            strict: shape.is_strict(),
        }
    }
}

fn matrix(field: &Field, rows: &Rows, m: usize, n: usize) -> Result<MatrixFq> {
    if rows.len() != m {
        return Err(Error::DimensionMismatch(format!("expected {m} rows, found {}", rows.len())));
    }
    MatrixFq::from_rows(field, rows, n)
}

/// A matrix whose column count is read off its rows; `n x 0` matrices are
/// written as `n` empty rows.
pub fn matrix_any(field: &Field, rows: &Rows) -> Result<MatrixFq> {
    let cols = rows.first().map_or(0, Vec::len);
    MatrixFq::from_rows(field, rows, cols)
}

pub fn rows_of(m: &MatrixFq) -> Rows {
    if m.ncols() == 0 {
        return vec![Vec::new(); m.nrows()];
    }
    m.to_rows()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: FieldJson,
    pub shape: ShapeJson,
    /// Each basis element lists its blocks.
    pub basis: Vec<Vec<Rows>>,
}

fn tuple_from_blocks(field: &Field, shape: &Shape, blocks: &[Rows]) -> Result<MatrixTuple> {
    if blocks.len() != shape.blocks() {
        return Err(Error::ShapeMismatch);
    }
    let ms = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| matrix(field, b, shape.m()[i], shape.n()[i]))
        .collect::<Result<Vec<_>>>()?;
    MatrixTuple::new(shape, ms)
}

impl CodeJson {
    pub fn build(&self) -> Result<LinearCode> {
        let field = self.field.build()?;
        let shape = self.shape.build()?;
        let gens = self
            .basis
            .iter()
            .map(|g| tuple_from_blocks(&field, &shape, g))
            .collect::<Result<Vec<_>>>()?;
        LinearCode::new(&field, &shape, &gens)
    }

    /// The reduced basis.
    pub fn of(code: &LinearCode) -> Self {
        CodeJson {
            field: FieldJson::of(code.field()),
            shape: ShapeJson::of(code.shape()),
            basis: code.basis().iter().map(|t| t.blocks().iter().map(rows_of).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleJson {
    pub field: FieldJson,
    pub shape: ShapeJson,
    pub blocks: Vec<Rows>,
}

impl TupleJson {
    pub fn build(&self) -> Result<MatrixTuple> {
        tuple_from_blocks(&self.field.build()?, &self.shape.build()?, &self.blocks)
    }

    pub fn of(t: &MatrixTuple) -> Self {
        TupleJson {
            field: FieldJson::of(t.field()),
            shape: ShapeJson::of(t.shape()),
            blocks: t.blocks().iter().map(rows_of).collect(),
        }
    }
}

/// A coset representative `a` (optional) and a list of same-size matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixListJson {
    pub field: FieldJson,
    #[serde(default, rename = "A", skip_serializing_if = "Option::is_none")]
    pub a: Option<Rows>,
    pub matrices: Vec<Rows>,
}

impl MatrixListJson {
    pub fn build(&self) -> Result<(Option<MatrixFq>, Vec<MatrixFq>)> {
        let f = self.field.build()?;
        let a = self.a.as_ref().map(|a| matrix_any(&f, a)).transpose()?;
        let ms = self.matrices.iter().map(|m| matrix_any(&f, m)).collect::<Result<Vec<_>>>()?;
        Ok((a, ms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    /// `{M : Row(M) <= L}`, `L <= F_q^{n_i}`.
    Row,
    /// `{M : Col(M) <= L}`, `L <= F_q^{m_i}`.
    Col,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockAnticodeJson {
    pub support: BlockKind,
    /// Basis of `L` in reduced echelon form.
    pub basis: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorJson {
    pub field: FieldJson,
    pub shape: ShapeJson,
    pub blocks: Vec<BlockAnticodeJson>,
    /// Hamming anticode on the trailing `1 x 1` blocks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<Rows>,
    #[serde(default, skip_deserializing)]
    pub max_srk: usize,
    #[serde(default, skip_deserializing)]
    pub dim: usize,
}

impl DescriptorJson {
    pub fn build(&self) -> Result<AnticodeDescriptor> {
        let f = self.field.build()?;
        let shape = self.shape.build()?;
        if self.blocks.len() > shape.blocks() {
            return Err(Error::ShapeMismatch);
        }
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                Ok(match b.support {
                    BlockKind::Row => BlockAnticode::RowSpace(Subspace::span(&f, shape.n()[i], b.basis.clone())?),
                    BlockKind::Col => BlockAnticode::ColSpace(Subspace::span(&f, shape.m()[i], b.basis.clone())?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let tail = match &self.tail {
            Some(rows) => {
                let t = shape.blocks() - blocks.len();
                Some(Subspace::span(&f, t, rows.clone())?)
            }
            None => None,
        };
        AnticodeDescriptor::new(&f, &shape, blocks, tail)
    }

    pub fn of(a: &AnticodeDescriptor) -> Self {
        let blocks = a
            .blocks()
            .iter()
            .map(|b| match b {
                BlockAnticode::RowSpace(l) => BlockAnticodeJson { support: BlockKind::Row, basis: l.basis().to_vec() },
                BlockAnticode::ColSpace(l) => BlockAnticodeJson { support: BlockKind::Col, basis: l.basis().to_vec() },
            })
            .collect();
        DescriptorJson {
            field: FieldJson::of(a.field()),
            shape: ShapeJson::of(a.shape()),
            blocks,
            tail: a.tail().map(|w| w.basis().to_vec()),
            max_srk: a.max_srk(),
            dim: a.dim(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockIsometryJson {
    #[serde(rename = "M")]
    pub m: Rows,
    #[serde(rename = "N")]
    pub n: Rows,
    pub transpose: bool,
}

/// `sigma` is 0-based; block `i` of the image is `psi_i` applied to block
/// `sigma[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryJson {
    pub sigma: Vec<usize>,
    pub blocks: Vec<BlockIsometryJson>,
}

impl IsometryJson {
    pub fn build(&self, field: &Field, shape: &Shape) -> Result<Isometry> {
        if self.blocks.len() != shape.blocks() {
            return Err(Error::ShapeMismatch);
        }
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                Ok(BlockIsometry {
                    m: matrix(field, &b.m, shape.m()[i], shape.m()[i])?,
                    n: matrix(field, &b.n, shape.n()[i], shape.n()[i])?,
                    transpose: b.transpose,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Isometry::new(field, shape, self.sigma.clone(), blocks)
    }

    pub fn of(iso: &Isometry) -> Self {
        IsometryJson {
            sigma: iso.sigma().to_vec(),
            blocks: iso
                .blocks()
                .iter()
                .map(|b| BlockIsometryJson { m: b.m.to_rows(), n: b.n.to_rows(), transpose: b.transpose })
                .collect(),
        }
    }
}

/// One `n_i x mu_i` tap matrix per block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TapsJson {
    pub taps: Vec<Rows>,
}

impl TapsJson {
    pub fn build(&self, field: &Field, shape: &Shape) -> Result<Vec<MatrixFq>> {
        if self.taps.len() != shape.blocks() {
            return Err(Error::ShapeMismatch);
        }
        self.taps
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let m = matrix_any(field, b)?;
                if m.nrows() != shape.n()[i] {
                    return Err(Error::DimensionMismatch(format!("tap {i} needs {} rows", shape.n()[i])));
                }
                Ok(m)
            })
            .collect()
    }
}

/// Generators over the extension fields, one list of `n_i` element
/// encodings of `F_{p^{m_i}}` per block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionJson {
    pub p: u32,
    pub shape: ShapeJson,
    pub generators: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("JSON: {e}")))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}
