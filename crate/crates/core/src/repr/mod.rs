//! Matrix realizations of the built-in instances, used as an independent oracle.
//!
//! A representation fixes images T of τ and B_i of the base basis over some
//! cyclotomic field containing the algebra's scalars; ξ = Σ τ^k u_k maps to
//! Σ T^k ρ(u_k). The oracle recomputes d, φ, Δ and the derivative from these
//! matrices alone and compares with the algebraic implementation.

mod oracle;

pub use oracle::oracle_suite;

use std::sync::Arc;

use crate::basealg::BaseElement;
use crate::error::{AlgebraError, Result};
use crate::exactnum::{CyclotomicField, CyclotomicNumber};
use crate::extension::{ExtAlgebra, ExtElement};
use crate::instance::{Instance, InstanceKind};
use crate::linalg::Matrix;

#[derive(Debug, Clone)]
pub struct MatrixRep {
    ext: Arc<ExtAlgebra>,
    field: Arc<CyclotomicField>,
    dim: usize,
    tau_powers: Vec<Matrix>,
    tau_inv: Matrix,
    basis: Vec<Matrix>,
}

impl MatrixRep {
    /// Wraps generator images; `tau` must be invertible.
    pub fn new(ext: &Arc<ExtAlgebra>, field: &Arc<CyclotomicField>, tau: Matrix, basis: Vec<Matrix>) -> Result<Self> {
        if field.n() % ext.n() != 0 || basis.len() != ext.base().dim() {
            return Err(AlgebraError::AlgebraMismatch);
        }
        let dim = tau.rows();
        let tau_inv = tau.inverse().ok_or(AlgebraError::NotInvertible)?;
        let tau_powers = (0..ext.n()).map(|k| tau.pow(k)).collect();
        Ok(Self { ext: ext.clone(), field: field.clone(), dim, tau_powers, tau_inv, basis })
    }

    pub fn ext(&self) -> &Arc<ExtAlgebra> {
        &self.ext
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tau(&self) -> &Matrix {
        &self.tau_powers[1 % self.tau_powers.len()]
    }

    pub fn tau_inv(&self) -> &Matrix {
        &self.tau_inv
    }

    pub fn basis_image(&self, i: usize) -> &Matrix {
        &self.basis[i]
    }

    /// Generator images keyed by their expression-language names, τ first as `t`.
    pub fn images(&self) -> Vec<(String, &Matrix)> {
        let mut out = vec![("t".to_string(), self.tau())];
        out.extend(self.ext.base().basis_names().iter().cloned().zip(&self.basis));
        out
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(&self.field, self.dim)
    }

    pub fn zero(&self) -> Matrix {
        Matrix::zeros(&self.field, self.dim, self.dim)
    }

    pub fn scalar(&self, c: &CyclotomicNumber) -> CyclotomicNumber {
        c.embed(&self.field).expect("representation field contains the scalars")
    }

    pub fn q_power(&self, k: i64) -> CyclotomicNumber {
        self.scalar(&self.ext.q_power(k))
    }

    pub fn represent_base(&self, u: &BaseElement) -> Matrix {
        u.coords().iter().zip(&self.basis).filter(|(c, _)| !c.is_zero()).fold(self.zero(), |acc, (c, b)| {
            &acc + &b.scale(&self.scalar(c))
        })
    }

    /// Per-grade images T^k ρ(u_k).
    pub fn represent_graded(&self, xi: &ExtElement) -> Vec<Matrix> {
        xi.parts().iter().enumerate().map(|(k, u)| &self.tau_powers[k] * &self.represent_base(u)).collect()
    }

    pub fn represent(&self, xi: &ExtElement) -> Result<Matrix> {
        if !Arc::ptr_eq(xi.algebra(), &self.ext) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(self.represent_graded(xi).iter().fold(self.zero(), |acc, m| &acc + m))
    }

    /// φ on matrices: T⁻¹·M·T, from u·τ = τ·φ(u).
    pub fn twist(&self, m: &Matrix) -> Matrix {
        &(&self.tau_inv * m) * self.tau()
    }

    /// d on a grade-l matrix: T·M − q^l·M·T.
    pub fn differential(&self, m: &Matrix, grade: usize) -> Matrix {
        &(self.tau() * m) - &(m * self.tau()).scale(&self.q_power(grade as i64))
    }

    /// d on a graded family; the result is shifted up one grade, mod N.
    pub fn differential_graded(&self, parts: &[Matrix]) -> Vec<Matrix> {
        let n = parts.len();
        let mut out = vec![self.zero(); n];
        for (l, m) in parts.iter().enumerate() {
            out[(l + 1) % n] = &out[(l + 1) % n] + &self.differential(m, l);
        }
        out
    }

    /// Rank of the images of the canonical basis τ^k e_i, flattened to vectors.
    pub fn basis_rank(&self) -> usize {
        let rows: Vec<Vec<CyclotomicNumber>> = self
            .tau_powers
            .iter()
            .flat_map(|t| self.basis.iter().map(move |b| (t * b).entries().to_vec()))
            .collect();
        Matrix::rank_of_rows(&rows)
    }

    /// Whether the images satisfy the structure constants, the unit, the twist
    /// relation and τ^N = s; returns the first violated relation.
    pub fn relation_failure(&self) -> Option<String> {
        let base = self.ext.base();
        let n = self.ext.n();
        for i in 0..base.dim() {
            for j in 0..base.dim() {
                let e = BaseElement::basis(base, i);
                let f = BaseElement::basis(base, j);
                if &self.basis[i] * &self.basis[j] != self.represent_base(&(&e * &f)) {
                    return Some(format!("ρ(e_{i})ρ(e_{j}) ≠ ρ(e_{i}e_{j})"));
                }
                if &self.basis[i] * self.tau() != self.tau() * &self.represent_base(&e.twist(1)) {
                    return Some(format!("ρ(e_{i})T ≠ Tρ(φ(e_{i}))"));
                }
            }
        }
        if self.represent_base(&BaseElement::one(base)) != self.identity() {
            return Some("ρ(1) ≠ identity".into());
        }
        let sign = CyclotomicNumber::from_int(&self.field, self.ext.sign().as_i64());
        if self.tau().pow(n) != self.identity().scale(&sign) {
            return Some("T^N ≠ s·identity".into());
        }
        None
    }
}

/// X = diag(q^j) images x, the cyclic shift e_j ↦ e_{j+1} images τ, so X·Y = q·Y·X.
pub fn quantum_plane_rep(n: usize) -> Result<MatrixRep> {
    quantum_plane_images(&ExtAlgebra::quantum_plane(n)?)
}

fn quantum_plane_images(ext: &Arc<ExtAlgebra>) -> Result<MatrixRep> {
    let n = ext.n();
    let field = ext.base().field().clone();
    let x = Matrix::from_fn(&field, n, n, |i, j| {
        if i == j {
            CyclotomicNumber::q_power(&field, i as i64)
        } else {
            CyclotomicNumber::zero(&field)
        }
    });
    let y = Matrix::from_fn(&field, n, n, |i, j| {
        if i == (j + 1) % n {
            CyclotomicNumber::one(&field)
        } else {
            CyclotomicNumber::zero(&field)
        }
    });
    let basis = (0..n).map(|k| x.pow(k)).collect();
    MatrixRep::new(ext, &field, y, basis)
}

/// i ↦ diag(ζ, −ζ), j ↦ [[0, 1], [−1, 0]] over ℚ(ζ_4).
pub fn quaternion_rep() -> Result<MatrixRep> {
    quaternion_images(&ExtAlgebra::quaternions()?)
}

fn quaternion_images(ext: &Arc<ExtAlgebra>) -> Result<MatrixRep> {
    let field = CyclotomicField::new(4)?;
    let z = CyclotomicNumber::q_root(&field);
    let c = |k: i64| CyclotomicNumber::from_int(&field, k);
    let i = Matrix::from_fn(&field, 2, 2, |r, s| match (r, s) {
        (0, 0) => z.clone(),
        (1, 1) => -&z,
        _ => c(0),
    });
    let j = Matrix::from_fn(&field, 2, 2, |r, s| match (r, s) {
        (0, 1) => c(1),
        (1, 0) => c(-1),
        _ => c(0),
    });
    MatrixRep::new(ext, &field, i, vec![Matrix::identity(&field, 2), j])
}

/// The matrix realization of a built-in instance, sharing its algebra handle.
pub fn rep_for_instance(instance: &Instance) -> Option<Result<MatrixRep>> {
    match instance.kind() {
        InstanceKind::QuantumPlane(_) => Some(quantum_plane_images(instance.ext())),
        InstanceKind::Quaternion => Some(quaternion_images(instance.ext())),
        InstanceKind::File(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_plane_relations() {
        for n in 2..=6 {
            let r = quantum_plane_rep(n).unwrap();
            let x = r.basis_image(1);
            let y = r.tau();
            assert_eq!(x * y, (y * x).scale(&r.q_power(1)));
            assert_eq!(x.pow(n), r.identity());
            assert_eq!(y.pow(n), r.identity());
            assert_eq!(r.relation_failure(), None);
            assert_eq!(r.basis_rank(), n * n);
        }
    }

    #[test]
    fn quantum_plane_two_anticommutes() {
        let r = quantum_plane_rep(2).unwrap();
        let f = r.field().clone();
        let c = |k| CyclotomicNumber::from_int(&f, k);
        let x = Matrix::from_fn(&f, 2, 2, |i, j| if i == j { c(1 - 2 * i as i64) } else { c(0) });
        let swap = Matrix::from_fn(&f, 2, 2, |i, j| if i != j { c(1) } else { c(0) });
        assert_eq!(r.basis_image(1), &x);
        assert_eq!(r.tau(), &swap);
        assert!((&(&x * &swap) + &(&swap * &x)).is_zero());
    }

    #[test]
    fn quaternion_relations() {
        let r = quaternion_rep().unwrap();
        let i = r.tau();
        let j = r.basis_image(1);
        let minus_one = r.identity().scale(&CyclotomicNumber::from_int(r.field(), -1));
        assert_eq!(i * i, minus_one);
        assert_eq!(j * j, minus_one);
        assert!((&(i * j) + &(j * i)).is_zero());
        let k = i * j;
        assert_eq!(&k * i, *j);
        assert_eq!(&k * &k, minus_one);
        assert_eq!(r.relation_failure(), None);
        assert_eq!(r.basis_rank(), 4);
    }

    #[test]
    fn represent_basics() {
        let r = quantum_plane_rep(3).unwrap();
        let a = r.ext().clone();
        assert_eq!(r.represent(&ExtElement::one(&a)).unwrap(), r.identity());
        let x = BaseElement::basis(a.base(), 1);
        let c = crate::calculus::Coordinate::new(&a, x).unwrap();
        let dx = r.represent(&c.dx()).unwrap();
        assert_eq!(dx, r.tau() * &r.represent_base(c.delta_x()));
        let other = ExtAlgebra::quantum_plane(3).unwrap();
        assert_eq!(r.represent(&ExtElement::one(&other)).unwrap_err(), AlgebraError::AlgebraMismatch);
    }
}
