use serde::{Deserialize, Serialize};

use super::polys::{poly_p, poly_phi, poly_q, poly_q_inverse};
use super::{derivative, Coordinate};
use crate::basealg::BaseElement;
use crate::error::{AlgebraError, Result};
use crate::extension::ExtElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormBasis {
    /// τ^k·u
    Tau,
    /// (dx)^k·u
    Dx,
}

/// A homogeneous element of degree k, written τ^k·u or (dx)^k·u.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KForm {
    degree: usize,
    basis: FormBasis,
    coeff: BaseElement,
}

/// Wire form `{"degree": k, "basis": "tau"|"dx", "coeff": BaseElement}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KFormJson {
    pub degree: usize,
    pub basis: FormBasis,
    pub coeff: Vec<Vec<String>>,
}

impl KForm {
    pub fn new(degree: usize, basis: FormBasis, coeff: BaseElement) -> Result<Self> {
        let n = coeff.algebra().n();
        if degree >= n {
            return Err(AlgebraError::OutOfRange { index: degree as i64, lo: 0, hi: n as i64 - 1 });
        }
        Ok(Self { degree, basis, coeff })
    }

    /// Reads a homogeneous extension element as a τ-basis form.
    pub fn from_ext(xi: &ExtElement) -> Result<Self> {
        let k = xi.degree()?;
        Self::new(k, FormBasis::Tau, xi.part(k).clone())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> FormBasis {
        self.basis
    }

    pub fn coeff(&self) -> &BaseElement {
        &self.coeff
    }

    /// τ^k u = (dx)^k·(Q_k⁻¹ u).
    pub fn to_dx_basis(&self, c: &Coordinate) -> Result<Self> {
        match self.basis {
            FormBasis::Dx => Ok(self.clone()),
            FormBasis::Tau => {
                let coeff = &poly_q_inverse(self.degree, c)? * &self.coeff;
                Self::new(self.degree, FormBasis::Dx, coeff)
            }
        }
    }

    /// (dx)^k u = τ^k·(Q_k u).
    pub fn to_tau_basis(&self, c: &Coordinate) -> Result<Self> {
        match self.basis {
            FormBasis::Tau => Ok(self.clone()),
            FormBasis::Dx => {
                let coeff = if self.degree == 0 { self.coeff.clone() } else { &poly_q(self.degree, c)? * &self.coeff };
                Self::new(self.degree, FormBasis::Tau, coeff)
            }
        }
    }

    pub fn to_ext(&self, c: &Coordinate) -> Result<ExtElement> {
        let tau = self.to_tau_basis(c)?;
        Ok(ExtElement::homogeneous(c.ext(), tau.degree, tau.coeff))
    }

    pub fn to_json(&self) -> KFormJson {
        KFormJson { degree: self.degree, basis: self.basis, coeff: self.coeff.to_json() }
    }

    pub fn from_json(c: &Coordinate, json: &KFormJson) -> Result<Self> {
        Self::new(json.degree, json.basis, BaseElement::from_json(c.x().algebra(), &json.coeff)?)
    }
}

impl std::fmt::Display for KForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gen = match (self.basis, self.degree) {
            (_, 0) => return write!(f, "{}", self.coeff),
            (FormBasis::Tau, 1) => "t".to_string(),
            (FormBasis::Tau, k) => format!("t^{k}"),
            (FormBasis::Dx, 1) => "dx".to_string(),
            (FormBasis::Dx, k) => format!("dx^{k}"),
        };
        write!(f, "{gen}*({})", self.coeff)
    }
}

/// D^(k)u = q^k u'_x + Φ_k u; D^(0) is the plain derivative.
pub fn covariant_derivative(u: &BaseElement, k: usize, c: &Coordinate) -> Result<BaseElement> {
    let n = c.ext().n();
    if k >= n {
        return Err(AlgebraError::OutOfRange { index: k as i64, lo: 0, hi: n as i64 - 1 });
    }
    let first = derivative(u, c).scale(&c.ext().q_power(k as i64));
    if k == 0 {
        return Ok(first);
    }
    Ok(&first + &(&poly_phi(k, c)? * u))
}

/// D u = q u'_x + Q_2⁻¹ P_2 u, written out from the Q and P sequences.
pub fn operator_d(u: &BaseElement, c: &Coordinate) -> Result<BaseElement> {
    let phi1 = &poly_q_inverse(2, c)? * &poly_p(2, c)?;
    Ok(&derivative(u, c).scale(c.ext().q()) + &(&phi1 * u))
}

/// d((dx)^k u) = (dx)^{k+1} D^(k)u for forms of degree k ≤ N − 2.
pub fn form_differential(omega: &KForm, c: &Coordinate) -> Result<KForm> {
    let n = c.ext().n();
    if omega.degree + 1 >= n {
        return Err(AlgebraError::OutOfRange { index: omega.degree as i64, lo: 0, hi: n as i64 - 2 });
    }
    let omega = omega.to_dx_basis(c)?;
    let coeff = covariant_derivative(&omega.coeff, omega.degree, c)?;
    KForm::new(omega.degree + 1, FormBasis::Dx, coeff)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearityCheck {
    pub first_derivative: BaseElement,
    pub second_derivative: BaseElement,
    pub is_zero: bool,
}

/// For N = 2 every element is linear in x: u''_x = 0.
pub fn linearity_check(c: &Coordinate, u: &BaseElement) -> Result<LinearityCheck> {
    if c.ext().n() != 2 {
        return Err(AlgebraError::Unsupported(format!(
            "the second-derivative law holds for N = 2 only, not N = {}",
            c.ext().n()
        )));
    }
    let first_derivative = derivative(u, c);
    let second_derivative = derivative(&first_derivative, c);
    let is_zero = second_derivative.is_zero();
    Ok(LinearityCheck { first_derivative, second_derivative, is_zero })
}
