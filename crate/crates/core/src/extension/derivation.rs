use std::sync::Arc;

use super::{ExtAlgebra, ExtElement, Sign};
use crate::basealg::BaseElement;
use crate::error::{AlgebraError, Result};

/// Graded q-commutator [v, u]_q = v·u − q^{|v||u|}·u·v of homogeneous elements.
pub fn q_commutator(v: &ExtElement, u: &ExtElement) -> Result<ExtElement> {
    let dv = v.degree()? as i64;
    let du = u.degree()? as i64;
    let q = v.algebra().q_power(dv * du);
    Ok(&v.try_mul(u)? - &(&(u * v)).scale(&q))
}

/// The N-differential d = [τ, ·]_q in closed form:
/// d(Σ τ^k u_k) = Σ τ^{k+1}(u_k − q^k φ(u_k)).
pub fn differential(xi: &ExtElement) -> ExtElement {
    let algebra = xi.algebra();
    let n = algebra.n();
    let mut parts = vec![BaseElement::zero(algebra.base()); n];
    for (k, u) in xi.parts().iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        let mut w = u - &u.twist(1).scale(&algebra.q_power(k as i64));
        if k + 1 == n && algebra.sign() == Sign::Minus {
            w = -&w;
        }
        parts[(k + 1) % n] = w;
    }
    ExtElement::from_parts(algebra, parts).expect("parts built from the same algebra")
}

pub fn d_power(xi: &ExtElement, m: usize) -> ExtElement {
    (0..m).fold(xi.clone(), |acc, _| differential(&acc))
}

/// The inner graded q-derivation u ↦ [v, u]_q, extended additively over the grades of u.
pub fn inner_derivation(v: &ExtElement, u: &ExtElement) -> Result<ExtElement> {
    let m = v.degree()? as i64;
    let algebra = u.algebra();
    let mut out = ExtElement::zero(algebra);
    for (l, c) in u.components() {
        let q = algebra.q_power(m * l as i64);
        let term = &v.try_mul(&c)? - &(&c * v).scale(&q);
        out = &out + &term;
    }
    Ok(out)
}

/// Facts about the inner derivation d_v induced by a degree-1 element v.
#[derive(Debug, Clone)]
pub struct InnerDifferentialCheck {
    pub v_pow_n: ExtElement,
    /// v^N = ±1.
    pub is_pm_one: bool,
    /// (d_v)^N vanishes on the spanning set {τ^k e_i}, hence everywhere.
    pub d_n_vanishes: bool,
    /// (d_v)^N(u) = v^N·u − u·v^N on the spanning set.
    pub closed_form_holds: bool,
    /// A spanning element with (d_v)^N(u) ≠ 0, when one exists.
    pub witness: Option<(ExtElement, ExtElement)>,
}

fn spanning_set(algebra: &Arc<ExtAlgebra>) -> Vec<ExtElement> {
    let base = algebra.base();
    (0..algebra.n())
        .flat_map(|k| (0..base.dim()).map(move |i| (k, i)))
        .map(|(k, i)| ExtElement::homogeneous(algebra, k, BaseElement::basis(base, i)))
        .collect()
}

pub fn check_inner_differential(v: &ExtElement) -> Result<InnerDifferentialCheck> {
    let found = v.degree()?;
    if found != 1 || v.is_zero() {
        return Err(AlgebraError::WrongDegree { expected: 1, found });
    }
    let algebra = v.algebra();
    let n = algebra.n();
    let v_pow_n = v.pow(n as u32);
    let one = ExtElement::one(algebra);
    let is_pm_one = v_pow_n == one || v_pow_n == -&one;

    let mut witness = None;
    let mut closed_form_holds = true;
    for u in spanning_set(algebra) {
        let mut image = u.clone();
        for _ in 0..n {
            image = inner_derivation(v, &image)?;
        }
        let closed = &(&v_pow_n * &u) - &(&u * &v_pow_n);
        closed_form_holds &= image == closed;
        if witness.is_none() && !image.is_zero() {
            witness = Some((u, image));
        }
    }
    Ok(InnerDifferentialCheck {
        v_pow_n,
        is_pm_one,
        d_n_vanishes: witness.is_none(),
        closed_form_holds,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::CyclotomicNumber;

    fn cyclic3() -> (Arc<ExtAlgebra>, BaseElement) {
        let a = ExtAlgebra::quantum_plane(3).unwrap();
        let x = BaseElement::basis(a.base(), 1);
        (a, x)
    }

    #[test]
    fn commutator_examples() {
        let (a, x) = cyclic3();
        let t = ExtElement::tau(&a);
        let one = ExtElement::one(&a);
        assert!(q_commutator(&t, &one).unwrap().is_zero());

        let delta_x = &x - &x.scale(a.q());
        let got = q_commutator(&t, &ExtElement::from_base(&a, x.clone())).unwrap();
        assert_eq!(got, ExtElement::homogeneous(&a, 1, delta_x));

        let one_minus_q = &CyclotomicNumber::one(a.base().field()) - a.q();
        assert_eq!(q_commutator(&t, &t).unwrap(), ExtElement::tau_power(&a, 2).scale(&one_minus_q));

        let mixed = &one + &t;
        assert_eq!(q_commutator(&t, &mixed).unwrap_err(), AlgebraError::NotHomogeneous);
    }

    #[test]
    fn differential_examples() {
        let (a, x) = cyclic3();
        assert!(differential(&ExtElement::one(&a)).is_zero());
        let dx = differential(&ExtElement::from_base(&a, x.clone()));
        assert_eq!(dx, ExtElement::homogeneous(&a, 1, &x - &x.twist(1)));
        assert_eq!(d_power(&dx, 0), dx);
    }

    #[test]
    fn differential_matches_commutator_with_tau() {
        let (a, x) = cyclic3();
        let t = ExtElement::tau(&a);
        let x2 = BaseElement::basis(a.base(), 2);
        let xi = &(&ExtElement::from_base(&a, x.clone()) + &ExtElement::homogeneous(&a, 1, x2.clone()))
            + &ExtElement::homogeneous(&a, 2, &x + &x2);
        let via_commutator = xi
            .components()
            .map(|(_, c)| q_commutator(&t, &c).unwrap())
            .fold(ExtElement::zero(&a), |acc, c| &acc + &c);
        assert_eq!(differential(&xi), via_commutator);
        assert_eq!(inner_derivation(&t, &xi).unwrap(), via_commutator);
        assert!(d_power(&xi, 3).is_zero());
    }

    #[test]
    fn quaternion_differential() {
        // d(z0 + i z1) = i(z0 − z̄0) − (z1 + z̄1)
        let h = ExtAlgebra::quaternions().unwrap();
        let base = h.base();
        let f = base.field();
        let one = BaseElement::one(base);
        let j = BaseElement::basis(base, 1);
        let z0 = &one.scale(&CyclotomicNumber::from_int(f, 3)) + &j.scale(&CyclotomicNumber::from_int(f, 5));
        let z1 = &one.scale(&CyclotomicNumber::from_int(f, -2)) + &j;
        let xi = &ExtElement::from_base(&h, z0.clone()) + &ExtElement::homogeneous(&h, 1, z1.clone());
        let got = differential(&xi);
        assert_eq!(got.part(1), &(&z0 - &z0.twist(1)));
        assert_eq!(got.part(0), &(-&(&z1 + &z1.twist(1))));
        assert!(d_power(&xi, 2).is_zero());
    }

    #[test]
    fn leibniz_on_powers_of_x() {
        let (a, x) = cyclic3();
        let t = ExtElement::tau(&a);
        let x1 = ExtElement::from_base(&a, x.clone());
        let x2 = ExtElement::from_base(&a, BaseElement::basis(a.base(), 2));
        let lhs = inner_derivation(&t, &(&x1 * &x2)).unwrap();
        let rhs = &(&inner_derivation(&t, &x1).unwrap() * &x2) + &(&x1 * &inner_derivation(&t, &x2).unwrap());
        assert_eq!(lhs, rhs);
        assert!(lhs.is_zero());
    }

    #[test]
    fn anticommutator_at_n_two() {
        let h = ExtAlgebra::quaternions().unwrap();
        let v = ExtElement::tau(&h);
        let u = ExtElement::homogeneous(&h, 1, BaseElement::basis(h.base(), 1));
        assert_eq!(inner_derivation(&v, &u).unwrap(), &(&v * &u) + &(&u * &v));
    }

    #[test]
    fn inner_differential_of_tau_and_tau_x() {
        let (a, x) = cyclic3();
        let t = ExtElement::tau(&a);
        let check = check_inner_differential(&t).unwrap();
        assert!(check.is_pm_one && check.d_n_vanishes && check.closed_form_holds);

        let tx = ExtElement::homogeneous(&a, 1, x.clone());
        let check = check_inner_differential(&tx).unwrap();
        assert_eq!(check.v_pow_n, ExtElement::one(&a));
        assert!(check.is_pm_one && check.d_n_vanishes);
    }

    #[test]
    fn tau_one_plus_x_cubes_to_two() {
        // (τ(1+x))³ = (1+q²x)(1+qx)(1+x) = 1 + x³ = 2: central, so d³ still vanishes
        let (a, x) = cyclic3();
        let v = ExtElement::homogeneous(&a, 1, &BaseElement::one(a.base()) + &x);
        let check = check_inner_differential(&v).unwrap();
        let two = CyclotomicNumber::from_int(a.base().field(), 2);
        assert_eq!(check.v_pow_n, ExtElement::one(&a).scale(&two));
        assert!(!check.is_pm_one);
        assert!(check.d_n_vanishes);
        assert!(check.closed_form_holds);
    }

    #[test]
    fn wrong_degree_rejected() {
        let (a, _) = cyclic3();
        let err = check_inner_differential(&ExtElement::one(&a)).unwrap_err();
        assert_eq!(err, AlgebraError::WrongDegree { expected: 1, found: 0 });
    }
}
