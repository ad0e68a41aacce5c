//! Seeded sampling of small random elements for property checks.
//!
//! Coefficients are rationals with |numerator| ≤ 9 and denominator ≤ 4, and
//! about half of all coordinates are zero so that witnesses stay readable.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basealg::{BaseAlgebra, BaseElement};
use crate::calculus::Coordinate;
use crate::exactnum::{rational, CyclotomicField, CyclotomicNumber, Rational};
use crate::extension::{ExtAlgebra, ExtElement};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    pub fn rational(&mut self) -> Rational {
        rational(self.rng.random_range(-9..=9), self.rng.random_range(1..=4))
    }

    pub fn cyclotomic(&mut self, field: &Arc<CyclotomicField>) -> CyclotomicNumber {
        let coords: Vec<Rational> = (0..field.degree())
            .map(|_| if self.rng.random_bool(0.5) { self.rational() } else { rational(0, 1) })
            .collect();
        CyclotomicNumber::from_poly(field, &coords)
    }

    pub fn base(&mut self, algebra: &Arc<BaseAlgebra>) -> BaseElement {
        let coords = (0..algebra.dim())
            .map(|_| {
                if self.rng.random_bool(0.5) {
                    self.cyclotomic(algebra.field())
                } else {
                    CyclotomicNumber::zero(algebra.field())
                }
            })
            .collect();
        BaseElement::from_coords(algebra, coords).expect("dimension matches")
    }

    pub fn homogeneous(&mut self, algebra: &Arc<ExtAlgebra>, k: usize) -> ExtElement {
        let u = self.base(algebra.base());
        ExtElement::homogeneous(algebra, k, u)
    }

    pub fn ext(&mut self, algebra: &Arc<ExtAlgebra>) -> ExtElement {
        let parts = (0..algebra.n()).map(|_| self.base(algebra.base())).collect();
        ExtElement::from_parts(algebra, parts).expect("length matches")
    }

    /// A random x with Δx invertible; gives up after a bounded number of draws.
    pub fn coordinate(&mut self, algebra: &Arc<ExtAlgebra>) -> Option<Coordinate> {
        (0..64).find_map(|_| Coordinate::new(algebra, self.base(algebra.base())).ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = ExtAlgebra::quantum_plane(4).unwrap();
        let (mut s, mut t) = (Sampler::new(7), Sampler::new(7));
        for _ in 0..10 {
            assert_eq!(s.ext(&a), t.ext(&a));
        }
    }

    #[test]
    fn coefficients_are_small() {
        let mut s = Sampler::new(1);
        for _ in 0..500 {
            let r = s.rational();
            assert!(r.numer().magnitude() <= &9u32.into());
            assert!(r.denom() <= &4.into());
        }
    }

    #[test]
    fn coordinates_are_invertible() {
        let a = ExtAlgebra::quantum_plane(3).unwrap();
        let mut s = Sampler::new(3);
        let c = s.coordinate(&a).unwrap();
        assert!((c.delta_x() * c.delta_x_inv()).is_one());
    }
}
