use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{BaseAlgebra, BaseElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    Associativity,
    LeftUnit,
    RightUnit,
    TwistHomomorphism,
    TwistUnit,
    TwistOrder,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Associativity => "associativity",
            Law::LeftUnit => "left unit",
            Law::RightUnit => "right unit",
            Law::TwistHomomorphism => "twist is multiplicative",
            Law::TwistUnit => "twist fixes the unit",
            Law::TwistOrder => "twist^N = id",
        };
        f.write_str(s)
    }
}

/// A violated law with the basis indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawFailure {
    pub law: Law,
    pub witness: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<LawFailure>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures_of(&self, law: Law) -> impl Iterator<Item = &LawFailure> {
        self.failures.iter().filter(move |f| f.law == law)
    }
}

pub(super) fn validate(algebra: &Arc<BaseAlgebra>) -> ValidationReport {
    let dim = algebra.dim();
    let e = |i: usize| BaseElement::basis(algebra, i);
    let one = BaseElement::one(algebra);
    let mut failures = Vec::new();
    let mut fail = |law, witness: Vec<usize>, lhs: &BaseElement, rhs: &BaseElement| {
        failures.push(LawFailure { law, witness, detail: format!("{lhs} != {rhs}") });
    };

    for i in 0..dim {
        for j in 0..dim {
            let ij = &e(i) * &e(j);
            for k in 0..dim {
                let lhs = &ij * &e(k);
                let rhs = &e(i) * &(&e(j) * &e(k));
                if lhs != rhs {
                    fail(Law::Associativity, vec![i, j, k], &lhs, &rhs);
                }
            }
        }
    }

    for i in 0..dim {
        let left = &one * &e(i);
        if left != e(i) {
            fail(Law::LeftUnit, vec![i], &left, &e(i));
        }
        let right = &e(i) * &one;
        if right != e(i) {
            fail(Law::RightUnit, vec![i], &right, &e(i));
        }
    }

    for i in 0..dim {
        for j in 0..dim {
            let lhs = (&e(i) * &e(j)).twist(1);
            let rhs = &e(i).twist(1) * &e(j).twist(1);
            if lhs != rhs {
                fail(Law::TwistHomomorphism, vec![i, j], &lhs, &rhs);
            }
        }
    }

    let twisted_one = one.twist(1);
    if twisted_one != one {
        fail(Law::TwistUnit, vec![], &twisted_one, &one);
    }

    // twist(·, N) reduces the exponent, so iterate φ explicitly here
    for i in 0..dim {
        let mut u = e(i);
        for _ in 0..algebra.n() {
            u = u.twist(1);
        }
        if u != e(i) {
            fail(Law::TwistOrder, vec![i], &u, &e(i));
        }
    }

    ValidationReport { failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::CyclotomicNumber;

    fn perturbed_structure(
        base: &BaseAlgebra,
        edit: impl FnOnce(&mut Vec<Vec<Vec<CyclotomicNumber>>>),
    ) -> Arc<BaseAlgebra> {
        let mut s = base.structure().to_vec();
        edit(&mut s);
        BaseAlgebra::new(
            base.field().clone(),
            base.basis_names().to_vec(),
            s,
            base.unit_coords().to_vec(),
            base.twist_matrix().to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn perturbed_unit_entry_is_reported() {
        let base = BaseAlgebra::cyclic_coordinate_algebra(3).unwrap();
        let f = base.field().clone();
        let broken = perturbed_structure(&base, |s| s[0][0][0] = CyclotomicNumber::from_int(&f, 2));
        let report = broken.validate();
        let unit_failure = report.failures_of(Law::LeftUnit).next().expect("left unit failure");
        assert_eq!(unit_failure.witness, vec![0]);
        assert!(report.failures_of(Law::RightUnit).any(|f| f.witness == vec![0]));
    }

    #[test]
    fn non_multiplicative_twist_is_reported() {
        let base = BaseAlgebra::cyclic_coordinate_algebra(3).unwrap();
        let f = base.field();
        let mut twist = base.twist_matrix().to_vec();
        // φ(x) = 2x is linear but not multiplicative
        twist[1][1] = CyclotomicNumber::from_int(f, 2);
        let broken = BaseAlgebra::new(
            f.clone(),
            base.basis_names().to_vec(),
            base.structure().to_vec(),
            base.unit_coords().to_vec(),
            twist,
        )
        .unwrap();
        let report = broken.validate();
        assert!(report.failures_of(Law::TwistHomomorphism).any(|w| w.witness == vec![1, 1]));
        assert!(report.failures_of(Law::TwistOrder).any(|w| w.witness == vec![1]));
        assert!(report.failures_of(Law::Associativity).next().is_none());
    }

    #[test]
    fn broken_associativity_is_reported() {
        let base = BaseAlgebra::cyclic_coordinate_algebra(3).unwrap();
        let f = base.field().clone();
        // x·x² = 2 while x²·x = 1
        let broken = perturbed_structure(&base, |s| s[1][2][0] = CyclotomicNumber::from_int(&f, 2));
        let report = broken.validate();
        assert!(report.failures_of(Law::Associativity).any(|w| w.witness == vec![1, 1, 1]));
    }
}
