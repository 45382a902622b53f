//! Evolution algebras `E(A)`.
//!
//! Column convention: column `j` of the structure matrix holds the coordinates
//! of `e_j²`, so `a_ij` is the coefficient of `e_i` in `e_j²`, and `e_i e_j = 0`
//! for `i ≠ j`. The transposed convention also appears in the literature; every
//! function here uses this one.

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::groups::MonomialMap;
use crate::matrix::Matrix;
use crate::scalars::{Field, Scalar};

/// An evolution algebra with its structure matrix, determinant and digraph.
#[derive(Clone, Debug)]
pub struct EvolutionAlgebra {
    a: Matrix,
    det: Scalar,
    graph: Digraph,
}

impl EvolutionAlgebra {
    pub fn new(a: Matrix) -> Result<EvolutionAlgebra> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if a.rows() == 0 {
            return Err(Error::DimensionMismatch("an algebra needs dimension >= 1".into()));
        }
        let det = a.determinant()?;
        let graph = Digraph::of_matrix(&a);
        Ok(EvolutionAlgebra { a, det, graph })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Result<EvolutionAlgebra> {
        EvolutionAlgebra::new(Matrix::from_rows(field, rows)?)
    }

    pub fn from_i64(field: &Field, rows: &[Vec<i64>]) -> Result<EvolutionAlgebra> {
        EvolutionAlgebra::new(Matrix::from_i64(field, rows)?)
    }

    pub fn structure(&self) -> &Matrix {
        &self.a
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn determinant(&self) -> &Scalar {
        &self.det
    }

    /// `E² = E`, equivalently `det A ≠ 0`.
    pub fn is_idempotent(&self) -> bool {
        !self.det.is_zero()
    }

    pub fn require_idempotent(&self) -> Result<()> {
        if self.is_idempotent() {
            Ok(())
        } else {
            Err(Error::Singular)
        }
    }

    /// Γ_A.
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn basis(&self, i: usize) -> AlgebraElement {
        let f = self.field();
        AlgebraElement {
            coords: (0..self.n()).map(|k| if k == i { f.one() } else { f.zero() }).collect(),
        }
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<AlgebraElement> {
        if coords.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates in dimension {}",
                coords.len(),
                self.n()
            )));
        }
        if let Some(x) = coords.iter().find(|x| x.field() != self.field()) {
            return Err(Error::FieldMismatch {
                left: self.field().to_string(),
                right: x.field().to_string(),
            });
        }
        Ok(AlgebraElement { coords })
    }

    /// `x·y = A·(x ⊙ y)`.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        let x = self.element(x.coords.clone())?;
        let y = self.element(y.coords.clone())?;
        let hadamard: Vec<Scalar> = x.coords.iter().zip(&y.coords).map(|(a, b)| a * b).collect();
        Ok(AlgebraElement {
            coords: self.a.apply(&hadamard)?,
        })
    }

    /// The algebra with structure matrix [`transport_structure`]`(A, p)`.
    pub fn transport(&self, p: &MonomialMap) -> Result<EvolutionAlgebra> {
        self.require_idempotent()?;
        EvolutionAlgebra::new(transport_structure(&self.a, p)?)
    }
}

/// An element in natural-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub coords: Vec<Scalar>,
}

/// `B = P·A·(P^(2))⁻¹` for a monomial `P = P_σ·diag(d)`, entrywise
/// `b_{σ(k)σ(j)} = d_k·a_kj / d_j²`; the inverse of `P^(2)` is read off the
/// monomial form. Then `B·P^(2) = P·A`, so `P` is an isomorphism `E(A) → E(B)`.
pub fn transport_structure(a: &Matrix, p: &MonomialMap) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if p.n() != n {
        return Err(Error::DimensionMismatch(format!("map on {} points for dimension {n}", p.n())));
    }
    if p.field() != a.field() {
        return Err(Error::FieldMismatch {
            left: a.field().to_string(),
            right: p.field().to_string(),
        });
    }
    if a.determinant()?.is_zero() {
        return Err(Error::Singular);
    }
    let d = p.scalars();
    let inv_sq: Vec<Scalar> = d.iter().map(|x| x.square().inv()).collect::<Result<_>>()?;
    let s = p.sigma();
    let mut b = Matrix::zeros(a.field(), n, n);
    for k in 0..n {
        for j in 0..n {
            let v = &(&d[k] * a.get(k, j)) * &inv_sq[j];
            b.set(s.apply(k), s.apply(j), v);
        }
    }
    Ok(b)
}
