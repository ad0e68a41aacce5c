//! First-order and higher-order calculus over a coordinate x ∈ A.
//!
//! With Δu = u − φ(u) and Δx invertible, dx = τ·Δx generates the degree-one
//! module and every u has a unique right derivative u'_x with du = dx·u'_x.

mod forms;
mod polys;

pub use forms::{
    covariant_derivative, form_differential, linearity_check, operator_d, FormBasis, KForm, KFormJson,
    LinearityCheck,
};
pub use polys::{
    adjudicate_phi_recurrence, phi_by_recurrence, poly_p, poly_p_twisted_sum, poly_phi, poly_q, poly_q_explicit,
    poly_q_inverse, AdReading, ExponentReading, PhiReading, RecurrenceVerdict,
};

use std::sync::Arc;

use crate::basealg::BaseElement;
use crate::error::{AlgebraError, Result};
use crate::extension::{ExtAlgebra, ExtElement};

/// A coordinate x with Δx and its inverse cached.
#[derive(Debug, Clone)]
pub struct Coordinate {
    ext: Arc<ExtAlgebra>,
    x: BaseElement,
    delta_x: BaseElement,
    delta_x_inv: BaseElement,
}

impl Coordinate {
    pub fn new(ext: &Arc<ExtAlgebra>, x: BaseElement) -> Result<Self> {
        if !Arc::ptr_eq(x.algebra(), ext.base()) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        let delta_x = delta(&x);
        let delta_x_inv = delta_x.inverse()?;
        Ok(Self { ext: ext.clone(), x, delta_x, delta_x_inv })
    }

    pub fn ext(&self) -> &Arc<ExtAlgebra> {
        &self.ext
    }

    pub fn x(&self) -> &BaseElement {
        &self.x
    }

    pub fn delta_x(&self) -> &BaseElement {
        &self.delta_x
    }

    pub fn delta_x_inv(&self) -> &BaseElement {
        &self.delta_x_inv
    }

    /// dx = τ·Δx.
    pub fn dx(&self) -> ExtElement {
        ExtElement::homogeneous(&self.ext, 1, self.delta_x.clone())
    }
}

/// Δu = u − φ(u).
pub fn delta(u: &BaseElement) -> BaseElement {
    u - &u.twist(1)
}

/// The right derivative u'_x = Δx⁻¹·Δu.
pub fn derivative(u: &BaseElement, c: &Coordinate) -> BaseElement {
    c.delta_x_inv() * &delta(u)
}

/// φ_dx(u) = Δx⁻¹·φ(u)·Δx, the multiplier in (uv)'_x = u'_x v + φ_dx(u) v'_x.
pub fn phi_dx(u: &BaseElement, c: &Coordinate) -> BaseElement {
    u.twist(1).conjugate_by(c.delta_x(), c.delta_x_inv())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChangeOfVariable {
    pub y_prime_x: BaseElement,
    pub x_prime_y: BaseElement,
}

/// Transition factors between coordinates x and y: dy = dx·y'_x and x'_y = (y'_x)⁻¹.
pub fn change_of_variable(cx: &Coordinate, cy: &Coordinate) -> ChangeOfVariable {
    let y_prime_x = derivative(cy.x(), cx);
    let x_prime_y = derivative(cx.x(), cy);
    assert!((&y_prime_x * &x_prime_y).is_one(), "transition factors must be mutually inverse");
    ChangeOfVariable { y_prime_x, x_prime_y }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rational, CyclotomicNumber};
    use crate::extension::differential;

    fn plane(n: usize) -> (Arc<ExtAlgebra>, Coordinate) {
        let a = ExtAlgebra::quantum_plane(n).unwrap();
        let c = Coordinate::new(&a, BaseElement::basis(a.base(), 1)).unwrap();
        (a, c)
    }

    fn one_minus_q(a: &ExtAlgebra) -> CyclotomicNumber {
        &CyclotomicNumber::one(a.base().field()) - a.q()
    }

    #[test]
    fn coordinate_of_generator() {
        let (a, c) = plane(3);
        let x = BaseElement::basis(a.base(), 1);
        let x2 = BaseElement::basis(a.base(), 2);
        assert_eq!(c.delta_x(), &x.scale(&one_minus_q(&a)));
        assert_eq!(c.delta_x_inv(), &x2.scale(&one_minus_q(&a).inv().unwrap()));
    }

    #[test]
    fn gaussian_coordinate() {
        let h = ExtAlgebra::quaternions().unwrap();
        let f = h.base().field();
        let one = BaseElement::one(h.base());
        let j = BaseElement::basis(h.base(), 1);
        let (a, b) = (CyclotomicNumber::from_int(f, 3), CyclotomicNumber::from_rational(f, rational(-5, 2)));
        let c = Coordinate::new(&h, &one.scale(&a) + &j.scale(&b)).unwrap();
        let two_b = &b + &b;
        assert_eq!(c.delta_x(), &j.scale(&two_b));
        let real = Coordinate::new(&h, one.scale(&a));
        assert_eq!(real.unwrap_err(), AlgebraError::NotInvertible);
    }

    #[test]
    fn unit_is_not_a_coordinate() {
        let (a, _) = plane(4);
        let err = Coordinate::new(&a, BaseElement::one(a.base())).unwrap_err();
        assert_eq!(err, AlgebraError::NotInvertible);
    }

    #[test]
    fn delta_examples() {
        let (a, _) = plane(3);
        let x2 = BaseElement::basis(a.base(), 2);
        assert!(delta(&BaseElement::one(a.base())).is_zero());
        let one_minus_q2 = &CyclotomicNumber::one(a.base().field()) - &a.q_power(2);
        assert_eq!(delta(&x2), x2.scale(&one_minus_q2));

        let h = ExtAlgebra::quaternions().unwrap();
        let j = BaseElement::basis(h.base(), 1);
        assert_eq!(delta(&j), &j + &j);
    }

    #[test]
    fn derivative_examples() {
        let (a, c) = plane(3);
        let x = BaseElement::basis(a.base(), 1);
        let x2 = BaseElement::basis(a.base(), 2);
        assert!(derivative(&x, &c).is_one());
        let one_plus_q = &CyclotomicNumber::one(a.base().field()) + a.q();
        assert_eq!(derivative(&x2, &c), x.scale(&one_plus_q));
        // du = dx·u'_x
        let du = differential(&ExtElement::from_base(&a, x2.clone()));
        assert_eq!(du, c.dx().mul_base(&derivative(&x2, &c)));
    }

    #[test]
    fn phi_dx_examples() {
        let (a, c) = plane(3);
        assert!(phi_dx(&BaseElement::one(a.base()), &c).is_one());
        for i in 0..3 {
            let u = BaseElement::basis(a.base(), i);
            assert_eq!(phi_dx(&u, &c), u.twist(1));
        }
        let h = ExtAlgebra::quaternions().unwrap();
        let j = BaseElement::basis(h.base(), 1);
        let cj = Coordinate::new(&h, j.clone()).unwrap();
        assert_eq!(phi_dx(&j, &cj), -&j);
    }

    #[test]
    fn change_of_variable_examples() {
        let (a, c) = plane(3);
        let same = change_of_variable(&c, &c);
        assert!(same.y_prime_x.is_one() && same.x_prime_y.is_one());

        let x = BaseElement::basis(a.base(), 1);
        let x2 = BaseElement::basis(a.base(), 2);
        let cy = Coordinate::new(&a, x2.clone()).unwrap();
        let t = change_of_variable(&c, &cy);
        let one_plus_q = &CyclotomicNumber::one(a.base().field()) + a.q();
        assert_eq!(t.y_prime_x, x.scale(&one_plus_q));
        // chain rule with u = x²
        assert_eq!(derivative(&x2, &c), &t.y_prime_x * &derivative(&x2, &cy));
        assert!(derivative(&x2, &cy).is_one());
    }
}
