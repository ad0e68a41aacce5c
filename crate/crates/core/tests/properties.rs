use std::sync::Arc;

use proptest::prelude::*;

use qgda_core::basealg::BaseElement;
use qgda_core::calculus::{derivative, form_differential, Coordinate, FormBasis, KForm, KFormJson};
use qgda_core::exactnum::{rational, CyclotomicField, CyclotomicJson, CyclotomicNumber, Rational};
use qgda_core::expr::{parse, AddOp, Expr, Session, Value, ValueJson};
use qgda_core::extension::{d_power, differential, ExtAlgebra, ExtElement, ExtElementJson};
use qgda_core::instance::Instance;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rational(n, d))
}

fn cyclotomic(field: Arc<CyclotomicField>) -> impl Strategy<Value = CyclotomicNumber> {
    prop::collection::vec(small_rational(), field.degree()).prop_map(move |c| CyclotomicNumber::from_poly(&field, &c))
}

fn base(ext: Arc<ExtAlgebra>) -> impl Strategy<Value = BaseElement> {
    let b = ext.base().clone();
    prop::collection::vec(cyclotomic(b.field().clone()), b.dim())
        .prop_map(move |c| BaseElement::from_coords(&b, c).unwrap())
}

fn ext_element(ext: Arc<ExtAlgebra>) -> impl Strategy<Value = ExtElement> {
    let n = ext.n();
    prop::collection::vec(base(ext.clone()), n).prop_map(move |p| ExtElement::from_parts(&ext, p).unwrap())
}

fn instance() -> impl Strategy<Value = Arc<ExtAlgebra>> {
    prop_oneof![
        (2usize..=6).prop_map(|n| ExtAlgebra::quantum_plane(n).unwrap()),
        Just(()).prop_map(|_| ExtAlgebra::quaternions().unwrap()),
    ]
}

fn field() -> impl Strategy<Value = Arc<CyclotomicField>> {
    (1usize..=12).prop_map(|n| CyclotomicField::new(n).unwrap())
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..100, 1i64..5).prop_map(|(n, d)| Expr::Rational(rational(n, d))),
        prop::sample::select(vec!["x", "t", "q", "j", "dx"]).prop_map(|s| Expr::Symbol(s.into())),
    ];
    leaf.prop_recursive(5, 48, 4, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), prop::collection::vec((any::<bool>(), inner.clone()), 1..4)).prop_map(|(f, rest)| {
                let rest = rest.into_iter().map(|(b, e)| (if b { AddOp::Add } else { AddOp::Sub }, e)).collect();
                Expr::Sum(Box::new(f), rest)
            }),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Product),
            (inner.clone(), -5i64..=5).prop_map(|(e, k)| Expr::Pow(Box::new(e), k)),
            (prop::sample::select(vec!["d", "phi", "der", "P"]), prop::collection::vec(inner, 1..3))
                .prop_map(|(n, a)| Expr::Call(n.into(), a)),
        ]
    })
}

/// Print, then parse back.
fn reparse_normal(e: &Expr) -> Expr {
    parse(&e.to_string()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms((a, b, c) in field().prop_flat_map(|f| (cyclotomic(f.clone()), cyclotomic(f.clone()), cyclotomic(f)))) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn twist_is_multiplicative((u, v) in instance().prop_flat_map(|a| (base(a.clone()), base(a)))) {
        prop_assert_eq!((&u * &v).twist(1), &u.twist(1) * &v.twist(1));
        let n = u.algebra().n() as i64;
        prop_assert_eq!(u.twist(n), u.clone());
    }

    #[test]
    fn d_to_the_n_vanishes(xi in instance().prop_flat_map(ext_element)) {
        prop_assert!(d_power(&xi, xi.algebra().n()).is_zero());
    }

    #[test]
    fn graded_leibniz((a, k, l, u, v) in instance().prop_flat_map(|a| {
        let n = a.n();
        (Just(a.clone()), 0..n, 0..n, base(a.clone()), base(a))
    })) {
        let xi = ExtElement::homogeneous(&a, k, u);
        let eta = ExtElement::homogeneous(&a, l, v);
        let lhs = differential(&(&xi * &eta));
        let rhs = &(&differential(&xi) * &eta) + &(&xi * &differential(&eta)).scale(&a.q_power(k as i64));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn two_path_form_differential((a, k, u, dx_basis) in (3usize..=6).prop_flat_map(|n| {
        let a = ExtAlgebra::quantum_plane(n).unwrap();
        (Just(a.clone()), 0..n - 1, base(a), any::<bool>())
    })) {
        let c = Coordinate::new(&a, BaseElement::basis(a.base(), 1)).unwrap();
        let basis = if dx_basis { FormBasis::Dx } else { FormBasis::Tau };
        let omega = KForm::new(k, basis, u).unwrap();
        let direct = differential(&omega.to_ext(&c).unwrap());
        prop_assert_eq!(form_differential(&omega, &c).unwrap().to_ext(&c).unwrap(), direct);
    }

    #[test]
    fn du_is_dx_times_derivative(u in base(ExtAlgebra::quantum_plane(5).unwrap())) {
        let a = u.algebra();
        let ext = ExtAlgebra::new(a.clone(), qgda_core::extension::Sign::Plus).unwrap();
        let c = Coordinate::new(&ext, BaseElement::basis(a, 1)).unwrap();
        let du = differential(&ExtElement::from_base(&ext, u.clone()));
        prop_assert_eq!(du, c.dx().mul_base(&derivative(&u, &c)));
    }

    #[test]
    fn json_round_trips(xi in instance().prop_flat_map(ext_element)) {
        let a = xi.algebra().clone();
        let text = serde_json::to_string(&xi.to_json()).unwrap();
        let back: ExtElementJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(ExtElement::from_json(&a, &back).unwrap(), xi.clone());

        let u = xi.part(0);
        let back = BaseElement::from_json(a.base(), &serde_json::from_str::<Vec<Vec<String>>>(&serde_json::to_string(&u.to_json()).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(&back, u);

        let c0 = &u.coords()[0];
        let back: CyclotomicJson = serde_json::from_str(&serde_json::to_string(&c0.to_json()).unwrap()).unwrap();
        prop_assert_eq!(&CyclotomicNumber::from_json(a.base().field(), &back).unwrap(), c0);

        if let Ok(c) = Coordinate::new(&a, BaseElement::basis(a.base(), 1)) {
            let k = a.n() - 1;
            let form = KForm::new(k, FormBasis::Dx, u.clone()).unwrap();
            let back: KFormJson = serde_json::from_str(&serde_json::to_string(&form.to_json()).unwrap()).unwrap();
            prop_assert_eq!(KForm::from_json(&c, &back).unwrap(), form);
        }
    }

    #[test]
    fn printed_expressions_reparse(e in expr()) {
        let once = reparse_normal(&e);
        prop_assert_eq!(once.to_string(), e.to_string());
        prop_assert_eq!(reparse_normal(&once), once);
    }

    #[test]
    fn parse_is_total(bytes in prop::collection::vec(any::<u8>(), 0..64)) {
        let src = String::from_utf8_lossy(&bytes);
        if let Err(e) = parse(&src) {
            prop_assert!(e.pos <= src.len());
            prop_assert!(!e.expected.is_empty());
        }
    }

    #[test]
    fn parse_is_total_on_grammar_alphabet(chars in prop::collection::vec(prop::sample::select(
        "x t q d P ( ) , + - * ^ / 0 1 2 9".split(' ').collect::<Vec<_>>()), 0..40)) {
        let src: String = chars.concat();
        if let Err(e) = parse(&src) {
            prop_assert!(e.pos <= src.len());
        }
    }

    #[test]
    fn evaluated_values_round_trip_through_json(src in prop::sample::select(vec![
        "x", "t*x", "d(x^2)", "q", "form(1, x)", "P(2)", "Phi(1)", "der(x^2, x)", "phi(t*x, 1)",
    ])) {
        let s = Session::new(Instance::quantum_plane(4).unwrap());
        let v = s.eval_str(src).unwrap();
        let back: ValueJson = serde_json::from_str(&serde_json::to_string(&v.to_json()).unwrap()).unwrap();
        prop_assert_eq!(Value::from_json(&s, &back).unwrap(), v);
    }
}
