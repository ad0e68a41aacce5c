//! The sequences Q_k, P_k and Φ_k attached to a coordinate.
//!
//! (dx)^k = τ^k Q_k, d^k x = τ^k P_k and d((dx)^k) = (dx)^{k+1} Φ_k.

use std::fmt;

use serde::Serialize;

use super::{delta, Coordinate};
use crate::basealg::BaseElement;
use crate::error::{AlgebraError, Result};
use crate::extension::{differential, ExtElement};

fn check_range(k: usize, lo: usize, hi: usize) -> Result<()> {
    if (lo..=hi).contains(&k) {
        Ok(())
    } else {
        Err(AlgebraError::OutOfRange { index: k as i64, lo: lo as i64, hi: hi as i64 })
    }
}

/// Q_k by the recurrence Q_1 = Δx, Q_{k+1} = φ(Q_k)·Δx, for 1 ≤ k ≤ N.
pub fn poly_q(k: usize, c: &Coordinate) -> Result<BaseElement> {
    check_range(k, 1, c.ext().n())?;
    let mut q = c.delta_x().clone();
    for _ in 1..k {
        q = &q.twist(1) * c.delta_x();
    }
    Ok(q)
}

/// Q_k as the explicit product Δx_{τ^{k−1}} ⋯ Δx_τ Δx.
pub fn poly_q_explicit(k: usize, c: &Coordinate) -> Result<BaseElement> {
    check_range(k, 1, c.ext().n())?;
    let x = c.x();
    Ok((0..k)
        .rev()
        .map(|j| delta(&x.twist(j as i64)))
        .reduce(|acc, f| &acc * &f)
        .expect("k >= 1"))
}

/// Q_k⁻¹ = Δx⁻¹ Δx_τ⁻¹ ⋯ Δx_{τ^{k−1}}⁻¹, built from the cached Δx⁻¹.
pub fn poly_q_inverse(k: usize, c: &Coordinate) -> Result<BaseElement> {
    check_range(k, 0, c.ext().n())?;
    Ok((0..k)
        .map(|j| c.delta_x_inv().twist(j as i64))
        .fold(BaseElement::one(c.x().algebra()), |acc, f| &acc * &f))
}

/// P_k by the recurrence P_1 = Δx, P_{k+1} = P_k − q^k φ(P_k), for 1 ≤ k ≤ N.
pub fn poly_p(k: usize, c: &Coordinate) -> Result<BaseElement> {
    check_range(k, 1, c.ext().n())?;
    let mut p = c.delta_x().clone();
    for j in 1..k {
        p = &p - &p.twist(1).scale(&c.ext().q_power(j as i64));
    }
    Ok(p)
}

/// Σ_{j<N} φ^j(P_{N−1}), which vanishes identically.
pub fn poly_p_twisted_sum(c: &Coordinate) -> BaseElement {
    let n = c.ext().n();
    let p = poly_p(n - 1, c).expect("N - 1 is in range");
    (0..n).map(|j| p.twist(j as i64)).fold(BaseElement::zero(c.x().algebra()), |acc, t| &acc + &t)
}

/// Φ_k solved from its defining property d((dx)^k) = (dx)^{k+1}·Φ_k, for 1 ≤ k ≤ N − 1.
pub fn poly_phi(k: usize, c: &Coordinate) -> Result<BaseElement> {
    let n = c.ext().n();
    check_range(k, 1, n - 1)?;
    let dx_k = dx_power(c, k);
    let dx_k1 = &dx_k * &c.dx();
    let grade = (k + 1) % n;
    let lhs = differential(&dx_k);
    Ok(&dx_k1.part(grade).inverse()? * lhs.part(grade))
}

/// How Ad_{Δx} acts inside the Φ recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdReading {
    /// Δx⁻¹·Φ·Δx
    Plain,
    /// Δx⁻¹·φ(Φ)·Δx
    Twisted,
}

/// Exponent of q in front of Φ_1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExponentReading {
    KMinusOne,
    K,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PhiReading {
    pub ad: AdReading,
    pub exponent: ExponentReading,
}

impl PhiReading {
    pub const ALL: [PhiReading; 4] = [
        PhiReading { ad: AdReading::Plain, exponent: ExponentReading::KMinusOne },
        PhiReading { ad: AdReading::Plain, exponent: ExponentReading::K },
        PhiReading { ad: AdReading::Twisted, exponent: ExponentReading::KMinusOne },
        PhiReading { ad: AdReading::Twisted, exponent: ExponentReading::K },
    ];
}

impl fmt::Display for PhiReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ad = match self.ad {
            AdReading::Plain => "Dx^-1*Phi_k*Dx",
            AdReading::Twisted => "Dx^-1*phi(Phi_k)*Dx",
        };
        let e = match self.exponent {
            ExponentReading::KMinusOne => "q^(k-1)",
            ExponentReading::K => "q^k",
        };
        write!(f, "Phi_(k+1) = {ad} + {e}*Phi_1")
    }
}

/// Φ_k generated by Φ_{k+1} = Ad(Φ_k) + q^e Φ_1 under the given reading, seeded with
/// Φ_1 = Q_2⁻¹ P_2.
pub fn phi_by_recurrence(k: usize, c: &Coordinate, reading: PhiReading) -> Result<BaseElement> {
    let n = c.ext().n();
    check_range(k, 1, n - 1)?;
    let phi1 = &poly_q(2, c)?.inverse()? * &poly_p(2, c)?;
    let mut phi = phi1.clone();
    for j in 1..k {
        let inner = match reading.ad {
            AdReading::Plain => phi.clone(),
            AdReading::Twisted => phi.twist(1),
        };
        let exp = match reading.exponent {
            ExponentReading::KMinusOne => j as i64 - 1,
            ExponentReading::K => j as i64,
        };
        phi = &inner.conjugate_by(c.delta_x(), c.delta_x_inv()) + &phi1.scale(&c.ext().q_power(exp));
    }
    Ok(phi)
}

/// For one reading of the recurrence, whether it reproduces the oracle Φ_k at each k.
#[derive(Debug, Clone, Serialize)]
pub struct RecurrenceVerdict {
    pub reading: PhiReading,
    /// (k, matches) for 2 ≤ k ≤ N − 1; Φ_1 is the shared seed.
    pub matches: Vec<(usize, bool)>,
}

impl RecurrenceVerdict {
    pub fn all_match(&self) -> bool {
        self.matches.iter().all(|(_, m)| *m)
    }
}

pub fn adjudicate_phi_recurrence(c: &Coordinate) -> Result<Vec<RecurrenceVerdict>> {
    let n = c.ext().n();
    let oracle = (2..n).map(|k| poly_phi(k, c)).collect::<Result<Vec<_>>>()?;
    PhiReading::ALL
        .iter()
        .map(|&reading| {
            let matches = (2..n)
                .zip(&oracle)
                .map(|(k, want)| Ok((k, &phi_by_recurrence(k, c, reading)? == want)))
                .collect::<Result<Vec<_>>>()?;
            Ok(RecurrenceVerdict { reading, matches })
        })
        .collect()
}

/// (dx)^k computed by repeated multiplication in the extension.
pub(crate) fn dx_power(c: &Coordinate, k: usize) -> ExtElement {
    c.dx().pow(k as u32)
}
