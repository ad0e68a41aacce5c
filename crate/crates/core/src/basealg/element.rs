use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::BaseAlgebra;
use crate::error::{AlgebraError, Result};
use crate::exactnum::{CyclotomicJson, CyclotomicNumber};
use crate::linalg::Matrix;

/// An element of a [`BaseAlgebra`], stored as coordinates in its basis.
#[derive(Clone)]
pub struct BaseElement {
    algebra: Arc<BaseAlgebra>,
    coords: Vec<CyclotomicNumber>,
}

impl BaseElement {
    pub fn zero(algebra: &Arc<BaseAlgebra>) -> Self {
        let z = CyclotomicNumber::zero(algebra.field());
        Self { algebra: algebra.clone(), coords: vec![z; algebra.dim()] }
    }

    pub fn one(algebra: &Arc<BaseAlgebra>) -> Self {
        Self { algebra: algebra.clone(), coords: algebra.unit_coords().to_vec() }
    }

    pub fn basis(algebra: &Arc<BaseAlgebra>, i: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coords[i] = CyclotomicNumber::one(algebra.field());
        e
    }

    pub fn scalar(algebra: &Arc<BaseAlgebra>, c: &CyclotomicNumber) -> Self {
        Self::one(algebra).scale(c)
    }

    pub fn from_coords(algebra: &Arc<BaseAlgebra>, coords: Vec<CyclotomicNumber>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(AlgebraError::Malformed(format!(
                "expected {} coordinates, got {}",
                algebra.dim(),
                coords.len()
            )));
        }
        if let Some(c) = coords.iter().find(|c| c.field().n() != algebra.n()) {
            return Err(AlgebraError::FieldMismatch(c.field().n(), algebra.n()));
        }
        Ok(Self { algebra: algebra.clone(), coords })
    }

    pub fn algebra(&self) -> &Arc<BaseAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[CyclotomicNumber] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(CyclotomicNumber::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords == self.algebra.unit_coords()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Self { algebra: self.algebra.clone(), coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(Self { algebra: self.algebra.clone(), coords })
    }

    /// Bilinear extension of the structure table.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.algebra);
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.algebra.product_terms(i, j) {
                    out.coords[*k] = &out.coords[*k] + &(&ab * c);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        Self { algebra: self.algebra.clone(), coords: self.coords.iter().map(|x| x * c).collect() }
    }

    /// φ applied `k` times; `k` is read modulo N, so negative powers are allowed.
    pub fn twist(&self, k: i64) -> Self {
        let times = k.rem_euclid(self.algebra.n() as i64);
        (0..times).fold(self.clone(), |u, _| u.twist_once())
    }

    fn twist_once(&self) -> Self {
        let mut out = Self::zero(&self.algebra);
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, t) in self.algebra.twist_matrix()[j].iter().enumerate() {
                if !t.is_zero() {
                    out.coords[k] = &out.coords[k] + &(c * t);
                }
            }
        }
        out
    }

    /// Matrix of w ↦ self·w in the basis (column j is self·e_j).
    pub fn left_multiplication(&self) -> Matrix {
        let dim = self.algebra.dim();
        let columns: Vec<BaseElement> = (0..dim).map(|j| self * &Self::basis(&self.algebra, j)).collect();
        Matrix::from_fn(self.algebra.field(), dim, dim, |i, j| columns[j].coords[i].clone())
    }

    /// Two-sided inverse by exact linear solve of `self·w = 1`, double-checked on the
    /// other side since the algebra may be noncommutative.
    pub fn inverse(&self) -> Result<Self> {
        let w = self
            .left_multiplication()
            .solve(self.algebra.unit_coords())
            .ok_or(AlgebraError::NotInvertible)?;
        let w = Self { algebra: self.algebra.clone(), coords: w };
        if (&w * self).is_one() {
            Ok(w)
        } else {
            Err(AlgebraError::NotInvertible)
        }
    }

    /// Integer power; negative exponents go through [`BaseElement::inverse`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.algebra);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Conjugation `a⁻¹ · self · a`.
    pub fn conjugate_by(&self, a: &Self, a_inv: &Self) -> Self {
        &(a_inv * self) * a
    }

    /// JSON form: one cyclotomic coordinate array per basis vector.
    pub fn to_json(&self) -> Vec<Vec<String>> {
        self.coords.iter().map(CyclotomicNumber::coord_strings).collect()
    }

    pub fn from_json(algebra: &Arc<BaseAlgebra>, json: &[Vec<String>]) -> Result<Self> {
        let coords = json
            .iter()
            .map(|c| CyclotomicNumber::from_coord_strings(algebra.field(), c))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coords(algebra, coords)
    }

    /// Scalar coordinates as full `{"n", "coords"}` objects.
    pub fn coords_json(&self) -> Vec<CyclotomicJson> {
        self.coords.iter().map(CyclotomicNumber::to_json).collect()
    }
}

impl PartialEq for BaseElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) && self.coords == other.coords
    }
}

impl Eq for BaseElement {}

impl fmt::Debug for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseElement({self})")
    }
}

/// Joins `coefficient*name` terms into a sum that the expression parser accepts.
pub(crate) fn format_terms<'a>(terms: impl IntoIterator<Item = (&'a CyclotomicNumber, String)>) -> String {
    let mut out = String::new();
    for (c, name) in terms {
        if c.is_zero() {
            continue;
        }
        let text = c.to_string();
        let (negative, mag) = match text.strip_prefix('-') {
            Some(rest) if !c.is_compound() => (true, rest.to_string()),
            _ => (false, text),
        };
        let coeff = if c.is_compound() { format!("({mag})") } else { mag };
        let term = match (coeff.as_str(), name.as_str()) {
            (_, "1") | (_, "") => coeff.clone(),
            ("1", _) => name.clone(),
            _ => format!("{coeff}*{name}"),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.algebra.basis_names();
        f.write_str(&format_terms(self.coords.iter().zip(names.iter().cloned())))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&BaseElement> for &BaseElement {
            type Output = BaseElement;
            /// Panics when the operands come from different algebras.
            fn $method(self, rhs: &BaseElement) -> BaseElement {
                self.$checked(rhs).expect("base algebra mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &BaseElement {
    type Output = BaseElement;
    fn neg(self) -> BaseElement {
        BaseElement { algebra: self.algebra.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}
