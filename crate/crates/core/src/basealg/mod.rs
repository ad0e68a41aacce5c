//! Finite-dimensional unital associative algebras over ℚ(ζ_N) given by structure
//! constants, together with the twist automorphism φ defined by `u·τ = τ·φ(u)`.
//!
//! Both built-in instances (the x-subalgebra of the reduced quantum plane and the
//! even part of the quaternions) are plain structure-constant algebras, so nothing
//! downstream special-cases them.

mod element;
mod file;
mod validate;

pub use element::BaseElement;
pub use file::AlgebraFile;
pub use validate::{Law, LawFailure, ValidationReport};

use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::exactnum::{CyclotomicField, CyclotomicNumber};

pub struct BaseAlgebra {
    field: Arc<CyclotomicField>,
    basis_names: Vec<String>,
    /// `structure[i][j][k]`: coefficient of e_k in e_i·e_j.
    structure: Vec<Vec<Vec<CyclotomicNumber>>>,
    /// Nonzero entries of `structure[i][j]`, indexed by `i * dim + j`.
    sparse: Vec<Vec<(usize, CyclotomicNumber)>>,
    unit: Vec<CyclotomicNumber>,
    /// Row j holds the coordinates of φ(e_j).
    twist_matrix: Vec<Vec<CyclotomicNumber>>,
}

impl std::fmt::Debug for BaseAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BaseAlgebra")
            .field("n", &self.field.n())
            .field("basis", &self.basis_names)
            .finish_non_exhaustive()
    }
}

impl BaseAlgebra {
    /// Assembles an algebra from raw tables. Only shapes are checked here; the
    /// algebraic laws are checked by [`BaseAlgebra::validate`].
    pub fn new(
        field: Arc<CyclotomicField>,
        basis_names: Vec<String>,
        structure: Vec<Vec<Vec<CyclotomicNumber>>>,
        unit: Vec<CyclotomicNumber>,
        twist_matrix: Vec<Vec<CyclotomicNumber>>,
    ) -> Result<Arc<Self>> {
        let dim = basis_names.len();
        let bad = |what: &str| AlgebraError::Malformed(format!("{what} does not match dimension {dim}"));
        if dim == 0 {
            return Err(AlgebraError::Malformed("dimension must be at least 1".into()));
        }
        if structure.len() != dim
            || structure.iter().any(|row| row.len() != dim || row.iter().any(|c| c.len() != dim))
        {
            return Err(bad("structure table"));
        }
        if unit.len() != dim {
            return Err(bad("unit vector"));
        }
        if twist_matrix.len() != dim || twist_matrix.iter().any(|r| r.len() != dim) {
            return Err(bad("twist matrix"));
        }
        let all = structure.iter().flatten().flatten().chain(&unit).chain(twist_matrix.iter().flatten());
        for c in all {
            if c.field().n() != field.n() {
                return Err(AlgebraError::FieldMismatch(c.field().n(), field.n()));
            }
        }
        let sparse = structure
            .iter()
            .flat_map(|row| {
                row.iter().map(|cell| {
                    cell.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
                })
            })
            .collect();
        Ok(Arc::new(Self { field, basis_names, structure, sparse, unit, twist_matrix }))
    }

    /// span{1, x, …, x^{N−1}} with x^N = 1 and φ(x^i) = q^i x^i.
    ///
    /// This is the x-subalgebra of the reduced quantum plane x·y = q·y·x; reading
    /// y as τ, the relation x·τ = τ·(q x) forces the twist.
    pub fn cyclic_coordinate_algebra(n: usize) -> Result<Arc<Self>> {
        if n < 2 {
            return Err(AlgebraError::InvalidOrder(n, "algebras need N >= 2"));
        }
        let field = CyclotomicField::new(n)?;
        let zero = CyclotomicNumber::zero(&field);
        let one = CyclotomicNumber::one(&field);
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let structure = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| if (i + j) % n == k { one.clone() } else { zero.clone() }).collect())
                    .collect()
            })
            .collect();
        let unit = (0..n).map(|k| if k == 0 { one.clone() } else { zero.clone() }).collect();
        let twist = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| if k == j { CyclotomicNumber::q_power(&field, j as i64) } else { zero.clone() })
                    .collect()
            })
            .collect();
        Self::new(field, names, structure, unit, twist)
    }

    /// span{1, j} over ℚ with j² = −1 and φ = complex conjugation (j ↦ −j).
    ///
    /// The imaginary unit is the basis vector `j`, not a field scalar.
    pub fn gaussian() -> Result<Arc<Self>> {
        let field = CyclotomicField::new(2)?;
        let c = |k: i64| CyclotomicNumber::from_int(&field, k);
        let structure = vec![
            vec![vec![c(1), c(0)], vec![c(0), c(1)]],
            vec![vec![c(0), c(1)], vec![c(-1), c(0)]],
        ];
        let twist = vec![vec![c(1), c(0)], vec![c(0), c(-1)]];
        let unit = vec![c(1), c(0)];
        Self::new(field.clone(), vec!["1".into(), "j".into()], structure, unit, twist)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// The N for which φ^N = id is required.
    pub fn n(&self) -> usize {
        self.field.n()
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|b| b == name)
    }

    pub fn structure(&self) -> &[Vec<Vec<CyclotomicNumber>>] {
        &self.structure
    }

    pub fn unit_coords(&self) -> &[CyclotomicNumber] {
        &self.unit
    }

    pub fn twist_matrix(&self) -> &[Vec<CyclotomicNumber>] {
        &self.twist_matrix
    }

    pub(crate) fn product_terms(&self, i: usize, j: usize) -> &[(usize, CyclotomicNumber)] {
        &self.sparse[i * self.dim() + j]
    }

    pub fn validate(self: &Arc<Self>) -> ValidationReport {
        validate::validate(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_products_wrap() {
        let a = BaseAlgebra::cyclic_coordinate_algebra(3).unwrap();
        let x = BaseElement::basis(&a, 1);
        let x2 = BaseElement::basis(&a, 2);
        assert!((&x * &x2).is_one());
    }

    #[test]
    fn rejects_small_order() {
        assert!(BaseAlgebra::cyclic_coordinate_algebra(1).is_err());
        assert!(BaseAlgebra::cyclic_coordinate_algebra(0).is_err());
    }

    #[test]
    fn builtins_are_valid() {
        for n in 2..=8 {
            assert!(BaseAlgebra::cyclic_coordinate_algebra(n).unwrap().validate().is_ok());
        }
        assert!(BaseAlgebra::gaussian().unwrap().validate().is_ok());
    }

    #[test]
    fn shape_errors() {
        let field = CyclotomicField::new(2).unwrap();
        let one = CyclotomicNumber::one(&field);
        let err = BaseAlgebra::new(field.clone(), vec!["1".into()], vec![vec![vec![]]], vec![one.clone()], vec![vec![one]]);
        assert!(matches!(err, Err(AlgebraError::Malformed(_))));
    }
}
