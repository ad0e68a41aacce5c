//! The ℤ_N-graded extension A[τ] with τ^N = ±1 and u·τ = τ·φ(u).
//!
//! Elements are kept in right-module coordinates ξ = Σ_k τ^k u_k, which is the
//! form the differential formula is stated in.

mod derivation;

pub use derivation::{
    check_inner_differential, d_power, differential, inner_derivation, q_commutator, InnerDifferentialCheck,
};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::basealg::{BaseAlgebra, BaseElement};
use crate::error::{AlgebraError, Result};
use crate::exactnum::CyclotomicNumber;

/// The s in τ^N = s·1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl TryFrom<i64> for Sign {
    type Error = AlgebraError;
    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(AlgebraError::Malformed(format!("sign must be 1 or -1, got {other}"))),
        }
    }
}

#[derive(Debug)]
pub struct ExtAlgebra {
    base: Arc<BaseAlgebra>,
    sign: Sign,
    q: CyclotomicNumber,
}

impl ExtAlgebra {
    pub fn new(base: Arc<BaseAlgebra>, sign: Sign) -> Result<Arc<Self>> {
        if base.n() < 2 {
            return Err(AlgebraError::InvalidOrder(base.n(), "extensions need N >= 2"));
        }
        let q = CyclotomicNumber::q_root(base.field());
        Ok(Arc::new(Self { base, sign, q }))
    }

    /// Reduced quantum plane x·y = q·y·x, x^N = y^N = 1, as the extension of the
    /// x-subalgebra by τ = y.
    pub fn quantum_plane(n: usize) -> Result<Arc<Self>> {
        Self::new(BaseAlgebra::cyclic_coordinate_algebra(n)?, Sign::Plus)
    }

    /// Quaternions ℍ = ℂ[i] with τ = i, i² = −1 and ℂ = span{1, j}.
    pub fn quaternions() -> Result<Arc<Self>> {
        Self::new(BaseAlgebra::gaussian()?, Sign::Minus)
    }

    pub fn base(&self) -> &Arc<BaseAlgebra> {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn q(&self) -> &CyclotomicNumber {
        &self.q
    }

    /// q^k for any integer k.
    pub fn q_power(&self, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::q_power(self.base.field(), k)
    }
}

/// ξ = Σ_k τ^k u_k.
#[derive(Clone)]
pub struct ExtElement {
    algebra: Arc<ExtAlgebra>,
    parts: Vec<BaseElement>,
}

/// Wire form `{"parts": [BaseElement, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtElementJson {
    pub parts: Vec<Vec<Vec<String>>>,
}

impl ExtElement {
    pub fn zero(algebra: &Arc<ExtAlgebra>) -> Self {
        let z = BaseElement::zero(algebra.base());
        Self { algebra: algebra.clone(), parts: vec![z; algebra.n()] }
    }

    pub fn one(algebra: &Arc<ExtAlgebra>) -> Self {
        Self::from_base(algebra, BaseElement::one(algebra.base()))
    }

    /// τ^k·u for 0 ≤ k < N.
    pub fn homogeneous(algebra: &Arc<ExtAlgebra>, k: usize, u: BaseElement) -> Self {
        let mut x = Self::zero(algebra);
        x.parts[k % algebra.n()] = u;
        x
    }

    pub fn from_base(algebra: &Arc<ExtAlgebra>, u: BaseElement) -> Self {
        Self::homogeneous(algebra, 0, u)
    }

    pub fn tau(algebra: &Arc<ExtAlgebra>) -> Self {
        Self::tau_power(algebra, 1)
    }

    /// τ^k for any integer k, folded by τ^N = s.
    pub fn tau_power(algebra: &Arc<ExtAlgebra>, k: i64) -> Self {
        let n = algebra.n() as i64;
        let wraps = k.div_euclid(n);
        let mut u = BaseElement::one(algebra.base());
        if algebra.sign == Sign::Minus && wraps.rem_euclid(2) == 1 {
            u = -&u;
        }
        Self::homogeneous(algebra, k.rem_euclid(n) as usize, u)
    }

    pub fn from_parts(algebra: &Arc<ExtAlgebra>, parts: Vec<BaseElement>) -> Result<Self> {
        if parts.len() != algebra.n() {
            return Err(AlgebraError::Malformed(format!("expected {} parts, got {}", algebra.n(), parts.len())));
        }
        if parts.iter().any(|p| !Arc::ptr_eq(p.algebra(), algebra.base())) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(Self { algebra: algebra.clone(), parts })
    }

    pub fn algebra(&self) -> &Arc<ExtAlgebra> {
        &self.algebra
    }

    pub fn parts(&self) -> &[BaseElement] {
        &self.parts
    }

    /// The coefficient u_k of τ^k.
    pub fn part(&self, k: usize) -> &BaseElement {
        &self.parts[k]
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(BaseElement::is_zero)
    }

    /// The grade of a homogeneous element; zero reports grade 0.
    pub fn degree(&self) -> Result<usize> {
        let mut nonzero = self.parts.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(k, _)| k);
        match (nonzero.next(), nonzero.next()) {
            (None, _) => Ok(0),
            (Some(k), None) => Ok(k),
            _ => Err(AlgebraError::NotHomogeneous),
        }
    }

    pub fn grade_project(&self, k: usize) -> Self {
        Self::homogeneous(&self.algebra, k, self.parts[k].clone())
    }

    /// Homogeneous components (k, τ^k u_k) with u_k ≠ 0.
    pub fn components(&self) -> impl Iterator<Item = (usize, ExtElement)> + '_ {
        (0..self.parts.len()).filter(|&k| !self.parts[k].is_zero()).map(|k| (k, self.grade_project(k)))
    }

    /// The base element when ξ lies in degree 0.
    pub fn as_base(&self) -> Option<&BaseElement> {
        self.parts[1..].iter().all(BaseElement::is_zero).then(|| &self.parts[0])
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
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a + b).collect();
        Ok(Self { algebra: self.algebra.clone(), parts })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a - b).collect();
        Ok(Self { algebra: self.algebra.clone(), parts })
    }

    /// (τ^a u)(τ^b v) = τ^{a+b} φ^b(u) v, folding τ^N = s.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.algebra.n();
        let mut out = Self::zero(&self.algebra);
        for (a, u) in self.parts.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (b, v) in other.parts.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let mut term = &u.twist(b as i64) * v;
                let mut k = a + b;
                if k >= n {
                    k -= n;
                    if self.algebra.sign == Sign::Minus {
                        term = -&term;
                    }
                }
                out.parts[k] = &out.parts[k] + &term;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        Self { algebra: self.algebra.clone(), parts: self.parts.iter().map(|p| p.scale(c)).collect() }
    }

    /// Right multiplication by a base element: ξ·u.
    pub fn mul_base(&self, u: &BaseElement) -> Self {
        self * &Self::from_base(&self.algebra, u.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.algebra);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Inverse of a homogeneous element τ^k·u with u invertible:
    /// (τ^k u)⁻¹ = u⁻¹·τ^{−k}.
    pub fn inverse(&self) -> Result<Self> {
        let k = self.degree()?;
        let u_inv = self.parts[k].inverse()?;
        let left = Self::from_base(&self.algebra, u_inv);
        Ok(&left * &Self::tau_power(&self.algebra, -(k as i64)))
    }

    pub fn to_json(&self) -> ExtElementJson {
        ExtElementJson { parts: self.parts.iter().map(BaseElement::to_json).collect() }
    }

    pub fn from_json(algebra: &Arc<ExtAlgebra>, json: &ExtElementJson) -> Result<Self> {
        let parts = json
            .parts
            .iter()
            .map(|p| BaseElement::from_json(algebra.base(), p))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(algebra, parts)
    }
}

impl PartialEq for ExtElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) && self.parts == other.parts
    }
}

impl Eq for ExtElement {}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtElement({self})")
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, u) in self.parts.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            let tau = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            terms.push(match (k, u.is_one()) {
                (0, _) => format!("{u}"),
                (_, true) => tau,
                _ => format!("{tau}*({u})"),
            });
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + "))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&ExtElement> for &ExtElement {
            type Output = ExtElement;
            /// Panics when the operands come from different extension algebras.
            fn $method(self, rhs: &ExtElement) -> ExtElement {
                self.$checked(rhs).expect("extension algebra mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &ExtElement {
    type Output = ExtElement;
    fn neg(self) -> ExtElement {
        ExtElement { algebra: self.algebra.clone(), parts: self.parts.iter().map(|p| -p).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_and_tau_powers() {
        let h = ExtAlgebra::quaternions().unwrap();
        let i = ExtElement::tau(&h);
        assert_eq!(&i * &i, -&ExtElement::one(&h));
        assert_eq!(ExtElement::tau_power(&h, 2), -&ExtElement::one(&h));
        assert_eq!(ExtElement::tau_power(&h, -1), -&i);
        let one = ExtElement::one(&h);
        assert_eq!(&one * &i, i);
    }

    #[test]
    fn quaternion_odd_product() {
        // (i z)(i w) = −z̄ w
        let h = ExtAlgebra::quaternions().unwrap();
        let base = h.base();
        let j = BaseElement::basis(base, 1);
        let one = BaseElement::one(base);
        let z = &one + &j;
        let w = &one.scale(&CyclotomicNumber::from_int(base.field(), 2)) - &j;
        let lhs = &ExtElement::homogeneous(&h, 1, z.clone()) * &ExtElement::homogeneous(&h, 1, w.clone());
        let rhs = ExtElement::from_base(&h, -&(&z.twist(1) * &w));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cyclic_wraparound() {
        let a = ExtAlgebra::quantum_plane(3).unwrap();
        let x = BaseElement::basis(a.base(), 1);
        let lhs = &ExtElement::homogeneous(&a, 1, x.clone()) * &ExtElement::tau_power(&a, 2);
        assert_eq!(lhs, ExtElement::from_base(&a, x.scale(&a.q_power(2))));
    }

    #[test]
    fn quantum_plane_relation() {
        // x·y = q·y·x with y = τ
        for n in 2..=6 {
            let a = ExtAlgebra::quantum_plane(n).unwrap();
            let x = ExtElement::from_base(&a, BaseElement::basis(a.base(), 1));
            let y = ExtElement::tau(&a);
            assert_eq!(&x * &y, (&y * &x).scale(a.q()));
            assert!((&y.pow(n as u32) - &ExtElement::one(&a)).is_zero());
        }
    }

    #[test]
    fn degrees() {
        let a = ExtAlgebra::quantum_plane(3).unwrap();
        let t = ExtElement::tau(&a);
        let one = ExtElement::one(&a);
        assert_eq!(t.degree(), Ok(1));
        assert_eq!(ExtElement::from_base(&a, BaseElement::basis(a.base(), 2)).degree(), Ok(0));
        assert_eq!((&one + &t).degree(), Err(AlgebraError::NotHomogeneous));
        assert_eq!(ExtElement::zero(&a).degree(), Ok(0));
        assert_eq!((&one + &t).grade_project(1), t);
    }

    #[test]
    fn homogeneous_inverse() {
        let a = ExtAlgebra::quantum_plane(4).unwrap();
        let x = BaseElement::basis(a.base(), 1);
        let xi = ExtElement::homogeneous(&a, 3, x.scale(&CyclotomicNumber::from_int(a.base().field(), 5)));
        let inv = xi.inverse().unwrap();
        assert_eq!(&xi * &inv, ExtElement::one(&a));
        assert_eq!(&inv * &xi, ExtElement::one(&a));
    }

    #[test]
    fn json_round_trip() {
        let a = ExtAlgebra::quantum_plane(3).unwrap();
        let xi = &ExtElement::tau(&a) + &ExtElement::from_base(&a, BaseElement::basis(a.base(), 2));
        let json = serde_json::to_string(&xi.to_json()).unwrap();
        let back: ExtElementJson = serde_json::from_str(&json).unwrap();
        assert_eq!(ExtElement::from_json(&a, &back).unwrap(), xi);
    }

    #[test]
    fn display() {
        let a = ExtAlgebra::quantum_plane(3).unwrap();
        let x = BaseElement::basis(a.base(), 1);
        let xi = &ExtElement::from_base(&a, x.clone()) + &ExtElement::homogeneous(&a, 2, x.scale(a.q()));
        assert_eq!(xi.to_string(), "x + t^2*(q*x)");
        assert_eq!(ExtElement::tau(&a).to_string(), "t");
    }
}
