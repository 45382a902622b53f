//! JSON formats: matrices, graphs, certificates and group reports.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::digraph::{Digraph, Permutation};
use crate::error::{Error, Result};
use crate::groups::{MonomialGroup, MonomialMap};
use crate::matrix::Matrix;
use crate::scalars::{Field, FieldDescriptor};
use crate::solver::{Certificate, DiagonalSubgroup};

/// `{"field": "Q", "n": 2, "entries": [["0", "1"], ["1", "0"]]}`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub field: String,
    pub n: usize,
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frucht_shift: Option<u64>,
}

impl MatrixFile {
    pub fn from_matrix(a: &Matrix, frucht_shift: Option<u64>) -> MatrixFile {
        MatrixFile {
            field: a.field().to_string(),
            n: a.rows(),
            entries: a.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            frucht_shift,
        }
    }

    /// The matrix over the declared field, or over `field` when given.
    pub fn to_matrix(&self, field: Option<&Field>) -> Result<Matrix> {
        let field = match field {
            Some(f) => f.clone(),
            None => Field::new(self.field.parse::<FieldDescriptor>()?)?,
        };
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.n) {
            return Err(Error::NotSquare {
                rows: self.entries.len(),
                cols: self.entries.first().map_or(0, Vec::len),
            });
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| field.parse(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(&field, rows)
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_matrix_file(path: &Path) -> Result<MatrixFile> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_matrix(path: &Path, field: Option<&Field>) -> Result<Matrix> {
    read_matrix_file(path)?.to_matrix(field)
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// `{"n": 3, "adjacency": [[0, 1, 0], [1, 0, 1], [0, 1, 0]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub adjacency: Vec<Vec<u8>>,
}

impl GraphFile {
    pub fn from_graph(g: &Digraph) -> GraphFile {
        GraphFile {
            n: g.n(),
            adjacency: g.adjacency().iter().map(|r| r.iter().map(|&b| b as u8).collect()).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Digraph> {
        if self.adjacency.len() != self.n || self.adjacency.iter().any(|r| r.len() != self.n) {
            return Err(Error::InvalidGraph(format!("adjacency is not {0}×{0}", self.n)));
        }
        let adj = self
            .adjacency
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| match x {
                        0 => Ok(false),
                        1 => Ok(true),
                        _ => Err(Error::InvalidGraph(format!("adjacency entry {x} is not 0/1"))),
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<bool>>>>()?;
        Digraph::from_adjacency(adj)
    }
}

pub fn read_graph(path: &Path) -> Result<Digraph> {
    let file: GraphFile =
        serde_json::from_str(&read_text(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    file.to_graph()
}

pub fn permutation_json(p: &Permutation) -> Value {
    json!(p.one_based())
}

/// `{"sigma": [..], "d": [..]}` with 1-based images.
pub fn map_json(m: &MonomialMap) -> Value {
    json!({
        "sigma": m.sigma().one_based(),
        "d": m.scalars().iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

pub fn certificate_json(c: &Certificate) -> Value {
    let mut v = map_json(&c.map);
    v["checked"] = json!({
        "BP2_eq_PA": c.check.bp2_eq_pa,
        "B_PstarP_zero": c.check.b_pstar_p_zero,
    });
    v
}

/// Parses the map part of a certificate.
pub fn map_from_json(field: &Field, v: &Value) -> Result<MonomialMap> {
    let bad = || Error::Parse("certificate needs `sigma` (1-based images) and `d` (scalars)".into());
    let sigma: Vec<usize> = serde_json::from_value(v.get("sigma").ok_or_else(bad)?.clone()).map_err(|_| bad())?;
    let d: Vec<String> = serde_json::from_value(v.get("d").ok_or_else(bad)?.clone()).map_err(|_| bad())?;
    let d = d.iter().map(|x| field.parse(x)).collect::<Result<Vec<_>>>()?;
    MonomialMap::new(field, Permutation::from_one_based(&sigma)?, d)
}

/// Order, name, element-order histogram and generators.
pub fn group_json(g: &MonomialGroup) -> Result<Value> {
    let profile = g.profile()?;
    let name = if g.is_closed() { g.name()? } else { None };
    let generators = if g.is_closed() { g.generators()? } else { Vec::new() };
    Ok(json!({
        "order": g.order(),
        "closed": g.is_closed(),
        "partial": g.is_partial(),
        "name": name,
        "abelian": profile.is_abelian,
        "element_orders": profile.histogram,
        "diagonal_kernel_order": profile.kernel_order,
        "permutation_image_order": profile.quotient_order,
        "generators": generators.iter().map(map_json).collect::<Vec<_>>(),
    }))
}

pub fn diagonal_json(d: &DiagonalSubgroup) -> Value {
    let order = d.lattice.order();
    json!({
        "order": u64::try_from(order).map(Value::from).unwrap_or_else(|_| Value::from(order.to_string())),
        "root_of_unity_order": d.lattice.modulus,
        "exponent_generators": d.lattice.generators,
        "generator_orders": d.lattice.orders,
        "t_A": d.t_a,
        "conductor_sufficient": d.conductor_sufficient,
        "listed": d.group.is_some(),
    })
}
