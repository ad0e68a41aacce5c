//! Exact arithmetic in the cyclotomic field ℚ(ζ_N).

mod cyclotomic;
pub(crate) mod poly;

pub use cyclotomic::{cyclotomic_minimal_poly, CyclotomicField, CyclotomicNumber, CyclotomicJson};

use num_bigint::BigInt;

use crate::error::{AlgebraError, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` with decimal integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || AlgebraError::Malformed(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(AlgebraError::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(parse_rational("0/7").unwrap(), rational(0, 1));
        assert_eq!(parse_rational("1/0"), Err(AlgebraError::DivisionByZero));
        assert!(parse_rational("x").is_err());
    }
}
