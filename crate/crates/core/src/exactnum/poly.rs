//! Dense univariate polynomials over ℚ, stored as ascending coefficient vectors.
//!
//! Only the handful of operations needed by the cyclotomic layer live here: the
//! zero polynomial is the empty vector and every result is trimmed.

use num_traits::{One, Zero};

use super::Rational;

pub(crate) fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(x - y);
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division `a = quot * b + rem` with `deg rem < deg b`.
///
/// Panics when `b` is the zero polynomial.
pub(crate) fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem: Vec<Rational> = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap();
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let factor = rem.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] -= &factor * c;
        }
        quot[shift] = factor;
        // the leading term cancels exactly
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Returns `s` with `s * a ≡ g (mod m)`, where `g` is the monic gcd of `a` and `m`.
pub(crate) fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    // invariant: s_i * a ≡ r_i (mod m)
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        // gcd has positive degree (or a was zero)
        return None;
    }
    let c = r0[0].clone();
    let (_, s) = div_rem(&s0, m);
    Some(s.into_iter().map(|x| x / &c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_i64(coeffs: &[i64]) -> Vec<Rational> {
        let mut p: Vec<Rational> = coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect();
        trim(&mut p);
        p
    }

    #[test]
    fn division_recovers_dividend() {
        let a = from_i64(&[-1, 0, 0, 1]);
        let b = from_i64(&[-1, 1]);
        let (q, r) = div_rem(&a, &b);
        assert_eq!(q, from_i64(&[1, 1, 1]));
        assert!(r.is_empty());
    }

    #[test]
    fn remainder_has_lower_degree() {
        let a = from_i64(&[3, 2, 5, 7]);
        let b = from_i64(&[1, 0, 2]);
        let (q, r) = div_rem(&a, &b);
        assert!(r.len() < b.len());
        let back = mul(&q, &b);
        let mut sum = sub(&back, &r.iter().map(|c| -c.clone()).collect::<Vec<_>>());
        trim(&mut sum);
        assert_eq!(sum, a);
    }

    #[test]
    fn inverse_modulo_irreducible() {
        // (1 - z) * (2 + z) / 3 ≡ 1 mod z^2 + z + 1
        let m = from_i64(&[1, 1, 1]);
        let inv = inverse_mod(&from_i64(&[1, -1]), &m).unwrap();
        let third = Rational::new(1.into(), 3.into());
        assert_eq!(inv, vec![Rational::from_integer(2.into()) * &third, third.clone()]);
        assert!(inverse_mod(&[], &m).is_none());
    }
}
