use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, poly, Rational};
use crate::error::{AlgebraError, Result};

fn proper_divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..n).filter(move |d| n % d == 0)
}

/// The n-th cyclotomic polynomial Φ_n as a monic ascending coefficient vector.
///
/// Computed by dividing z^n − 1 by Φ_d for every proper divisor d of n.
pub fn cyclotomic_minimal_poly(n: usize) -> Vec<Rational> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let mut p = vec![Rational::zero(); n + 1];
    p[0] = -Rational::one();
    p[n] = Rational::one();
    for d in proper_divisors(n) {
        let (q, r) = poly::div_rem(&p, &cyclotomic_minimal_poly(d));
        debug_assert!(r.is_empty());
        p = q;
    }
    p
}

/// ℚ(ζ_n) presented as ℚ[z]/Φ_n(z).
#[derive(Debug)]
pub struct CyclotomicField {
    n: usize,
    minimal_poly: Vec<Rational>,
    degree: usize,
    /// Row m holds z^m reduced modulo Φ_n, for m < 2·degree − 1.
    reduction: Vec<Vec<Rational>>,
    /// Row k holds ζ^k for k < n.
    powers: Vec<Vec<Rational>>,
}

impl CyclotomicField {
    pub fn new(n: usize) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(AlgebraError::InvalidOrder(n, "cyclotomic fields need n >= 1"));
        }
        let minimal_poly = cyclotomic_minimal_poly(n);
        let degree = minimal_poly.len() - 1;

        let z_times = |row: &[Rational]| -> Vec<Rational> {
            // multiply a reduced vector by z and fold z^degree back
            let mut out = vec![Rational::zero(); degree];
            let top = row[degree - 1].clone();
            for i in (1..degree).rev() {
                out[i] = row[i - 1].clone();
            }
            if !top.is_zero() {
                for (i, c) in minimal_poly[..degree].iter().enumerate() {
                    out[i] -= &top * c;
                }
            }
            out
        };
        let unit = |i: usize| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); degree];
            v[i] = Rational::one();
            v
        };

        let span = (2 * degree - 1).max(n);
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(span);
        for m in 0..span {
            let row = if m < degree { unit(m) } else { z_times(&rows[m - 1]) };
            rows.push(row);
        }
        let powers = rows[..n].to_vec();
        rows.truncate(2 * degree - 1);
        Ok(Arc::new(Self { n, minimal_poly, degree, reduction: rows, powers }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minimal_poly(&self) -> &[Rational] {
        &self.minimal_poly
    }

    fn reduce_poly(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let (_, mut r) = poly::div_rem(coeffs, &self.minimal_poly);
        r.resize(self.degree, Rational::zero());
        r
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl Eq for CyclotomicField {}

/// An element of ℚ(ζ_n) in the power basis 1, ζ, …, ζ^{degree−1}.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coords: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self { field: field.clone(), coords: vec![Rational::zero(); field.degree] }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, r: Rational) -> Self {
        let mut x = Self::zero(field);
        x.coords[0] = r;
        x
    }

    pub fn from_int(field: &Arc<CyclotomicField>, k: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(k.into()))
    }

    /// Builds Σ c_k ζ^k for a coefficient list of any length, reducing modulo Φ_n.
    pub fn from_poly(field: &Arc<CyclotomicField>, coeffs: &[Rational]) -> Self {
        Self { field: field.clone(), coords: field.reduce_poly(coeffs) }
    }

    /// The distinguished primitive root ζ = e^{2πi/n}.
    pub fn q_root(field: &Arc<CyclotomicField>) -> Self {
        Self::q_power(field, 1)
    }

    /// ζ^k for any integer k.
    pub fn q_power(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let k = k.rem_euclid(field.n as i64) as usize;
        Self { field: field.clone(), coords: field.powers[k].clone() }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the number lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| &self.coords[0])
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.n == other.field.n {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch(self.field.n, other.field.n))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Self { field: self.field.clone(), coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(Self { field: self.field.clone(), coords })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let deg = self.field.degree;
        let mut wide = vec![Rational::zero(); 2 * deg - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        let mut coords: Vec<Rational> = wide[..deg].to_vec();
        for (m, c) in wide.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for (slot, r) in coords.iter_mut().zip(&self.field.reduction[m]) {
                if !r.is_zero() {
                    *slot += c * r;
                }
            }
        }
        Ok(Self { field: self.field.clone(), coords })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { field: self.field.clone(), coords: self.coords.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_n.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, r.recip()));
        }
        let mut a = self.coords.clone();
        poly::trim(&mut a);
        let s = poly::inverse_mod(&a, &self.field.minimal_poly)
            .expect("Φ_n is irreducible, nonzero residues are units");
        Ok(Self::from_poly(&self.field, &s))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
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

    /// Image under ℚ(ζ_m) → ℚ(ζ_n), ζ_m ↦ ζ_n^{n/m}; requires m | n.
    pub fn embed(&self, target: &Arc<CyclotomicField>) -> Result<Self> {
        let m = self.field.n;
        if target.n % m != 0 {
            return Err(AlgebraError::FieldMismatch(m, target.n));
        }
        let step = (target.n / m) as i64;
        let mut acc = Self::zero(target);
        for (k, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &Self::q_power(target, k as i64 * step).scale(c);
            }
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> CyclotomicJson {
        CyclotomicJson { n: self.field.n, coords: self.coord_strings() }
    }

    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(format_rational).collect()
    }

    pub fn from_coord_strings(field: &Arc<CyclotomicField>, coords: &[String]) -> Result<Self> {
        let parsed = coords.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_poly(field, &parsed))
    }

    pub fn from_json(field: &Arc<CyclotomicField>, json: &CyclotomicJson) -> Result<Self> {
        if json.n != field.n {
            return Err(AlgebraError::FieldMismatch(json.n, field.n));
        }
        Self::from_coord_strings(field, &json.coords)
    }

    /// True when the printed form needs parentheses inside a product.
    pub fn is_compound(&self) -> bool {
        self.coords.iter().filter(|c| !c.is_zero()).count() > 1
    }
}

/// Wire form: `{"n": N, "coords": ["p/q", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicJson {
    pub n: usize,
    pub coords: Vec<String>,
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coords == other.coords
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc[{}]({})", self.field.n, self)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let monomial = match k {
                0 => None,
                1 => Some("q".to_string()),
                _ => Some(format!("q^{k}")),
            };
            match monomial {
                None => write!(f, "{mag}")?,
                Some(m) if mag.is_one() => f.write_str(&m)?,
                Some(m) => write!(f, "{mag}*{m}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            /// Panics on a field mismatch; use the `try_` form to get an error instead.
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs).expect("cyclotomic field mismatch")
            }
        }
        impl $trait for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}
