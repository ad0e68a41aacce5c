//! Verification suites: every law of the engine checked in exact arithmetic.
//!
//! Each suite appends checks to a [`Report`]; a failing check carries the first
//! witness found. Randomized checks are deterministic given the seed.

mod report;

pub use report::{ensure, expect_eq, Check, Recorder, Report, Sample, Status};

use std::fmt;
use std::str::FromStr;

use crate::basealg::{BaseElement, Law};
use crate::calculus::{
    adjudicate_phi_recurrence, change_of_variable, covariant_derivative, delta, derivative, form_differential,
    linearity_check, operator_d, phi_dx, poly_p, poly_p_twisted_sum, poly_phi, poly_q, poly_q_explicit,
    poly_q_inverse, Coordinate, FormBasis, KForm,
};
use crate::exactnum::{cyclotomic_minimal_poly, CyclotomicNumber};
use crate::extension::{check_inner_differential, d_power, differential, inner_derivation, ExtElement};
use crate::instance::{Instance, InstanceKind};
use crate::random::Sampler;
use crate::repr::{oracle_suite, rep_for_instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Field,
    Base,
    Extension,
    Calculus,
    Oracle,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["field", "base", "extension", "calculus", "oracle", "all"];
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "field" => Suite::Field,
            "base" => Suite::Base,
            "extension" => Suite::Extension,
            "calculus" => Suite::Calculus,
            "oracle" => Suite::Oracle,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite {s:?}, expected one of {}", Suite::NAMES.join(", "))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        f.write_str(Suite::NAMES[i])
    }
}

/// Runs `suite` on `instance`, differentiating along `coordinate` (default: the
/// instance's canonical generator).
pub fn run(suite: Suite, instance: &Instance, coordinate: Option<BaseElement>, seed: u64) -> Report {
    let mut report = Report::new(instance.to_string(), seed);
    let mut sampler = Sampler::new(seed);
    let wanted = |s: Suite| suite == Suite::All || suite == s;
    if wanted(Suite::Field) {
        field_suite(instance, &mut sampler, &mut report.suite("field"));
    }
    if wanted(Suite::Base) {
        base_suite(instance, &mut sampler, &mut report.suite("base"));
    }
    if wanted(Suite::Extension) {
        extension_suite(instance, coordinate.as_ref(), &mut sampler, &mut report.suite("extension"));
    }
    let needs_coordinate = wanted(Suite::Calculus) || wanted(Suite::Oracle);
    let coordinate = coordinate.or_else(|| instance.default_coordinate());
    let coordinate = match coordinate.map(|x| Coordinate::new(instance.ext(), x)) {
        Some(Ok(c)) => Some(c),
        Some(Err(e)) if needs_coordinate => {
            report.suite("calculus").fail("coordinate", format!("x − φ(x) is not invertible: {e}"));
            None
        }
        None if needs_coordinate => {
            report.suite("calculus").fail("coordinate", "the algebra has no non-unit basis element");
            None
        }
        _ => None,
    };
    if let Some(c) = &coordinate {
        if wanted(Suite::Calculus) {
            calculus_suite(instance, c, &mut sampler, &mut report.suite("calculus"));
        }
        if wanted(Suite::Oracle) {
            let mut rec = report.suite("oracle");
            match rep_for_instance(instance) {
                Some(Ok(rep)) => oracle_suite(&rep, c, &mut sampler, &mut rec),
                Some(Err(e)) => rec.fail("representation", e.to_string()),
                None => rec.info("representation", "no matrix realization for file-defined algebras"),
            }
        }
    }
    report
}

fn field_suite(instance: &Instance, s: &mut Sampler, rec: &mut Recorder<'_>) {
    let field = instance.ext().base().field().clone();
    let n = field.n();
    let phi = cyclotomic_minimal_poly(n);
    rec.check(
        "minimal polynomial divides z^N − 1",
        (|| {
            let mut zn = vec![crate::exactnum::rational(0, 1); n + 1];
            zn[0] = crate::exactnum::rational(-1, 1);
            zn[n] = crate::exactnum::rational(1, 1);
            let (_, r) = crate::exactnum::poly::div_rem(&zn, &phi);
            ensure(r.is_empty(), || format!("remainder {r:?}"))
        })(),
    );
    let totient = (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count();
    rec.check(
        "degree is the totient",
        ensure(field.degree() == totient, || format!("degree {} vs φ({n}) = {totient}", field.degree())),
    );
    let q = CyclotomicNumber::q_root(&field);
    rec.check("q^N = 1", ensure(q.pow(n as i64).is_ok_and(|p| p.is_one()), || "q^N ≠ 1".into()));
    rec.cases("q is primitive", 1..n, |k| ensure(!q.pow(k as i64)?.is_one(), || format!("q^{k} = 1")));
    if n >= 2 {
        let sum = (0..n).map(|k| CyclotomicNumber::q_power(&field, k as i64)).fold(CyclotomicNumber::zero(&field), |a, b| &a + &b);
        rec.check("1 + q + … + q^{N−1} = 0", ensure(sum.is_zero(), || format!("sum = {sum}")));
    }
    rec.sampled("field axioms", 200, |_| {
        let (a, b, c) = (s.cyclotomic(&field), s.cyclotomic(&field), s.cyclotomic(&field));
        expect_eq("a + b", &(&a + &b), &(&b + &a))?;
        expect_eq("a·b", &(&a * &b), &(&b * &a))?;
        expect_eq("(a·b)·c", &(&(&a * &b) * &c), &(&a * &(&b * &c)))?;
        expect_eq("a·(b + c)", &(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)))?;
        ensure((&a - &a).is_zero(), || "a − a ≠ 0".into())?;
        if !a.is_zero() {
            ensure((&a * &a.inv()?).is_one(), || format!("a·a⁻¹ ≠ 1 for a = {a}"))?;
        }
        Ok(())
    });
}

fn base_suite(instance: &Instance, s: &mut Sampler, rec: &mut Recorder<'_>) {
    let base = instance.ext().base().clone();
    let report = instance.validation();
    for law in [Law::Associativity, Law::LeftUnit, Law::RightUnit, Law::TwistHomomorphism, Law::TwistUnit, Law::TwistOrder] {
        match report.failures_of(law).next() {
            None => rec.check(&law.to_string(), Ok(())),
            Some(f) => rec.fail(&law.to_string(), format!("basis {:?}: {}", f.witness, f.detail)),
        }
    }
    rec.sampled("twist is multiplicative", 100, |_| {
        let (u, v) = (s.base(&base), s.base(&base));
        expect_eq("φ(uv)", &(&u * &v).twist(1), &(&u.twist(1) * &v.twist(1)))
    });
    rec.sampled("twist has order dividing N", 100, |_| {
        let u = s.base(&base);
        let mut w = u.clone();
        for _ in 0..base.n() {
            w = w.twist(1);
        }
        expect_eq("φ^N(u)", &w, &u)
    });
    rec.sampled("twisted Leibniz for Δ", 100, |_| {
        let (u, v) = (s.base(&base), s.base(&base));
        expect_eq("Δ(uv)", &delta(&(&u * &v)), &(&(&delta(&u) * &v) + &(&u.twist(1) * &delta(&v))))
    });
}

fn extension_suite(instance: &Instance, x: Option<&BaseElement>, s: &mut Sampler, rec: &mut Recorder<'_>) {
    let ext = instance.ext().clone();
    let base = ext.base().clone();
    let n = ext.n();
    let one = ExtElement::one(&ext);
    let tau = ExtElement::tau(&ext);

    // Products of degree ≤ 1 basis elements reach every structure constant and the twist.
    let gens: Vec<ExtElement> = (0..2.min(n))
        .flat_map(|k| (0..base.dim()).map(move |i| (k, i)))
        .map(|(k, i)| ExtElement::homogeneous(&ext, k, BaseElement::basis(&base, i)))
        .collect();
    let g = gens.len();
    let triples = (0..g * g * g).map(|t| (&gens[t / (g * g)], &gens[t / g % g], &gens[t % g]));
    rec.cases("associativity of A[τ]", triples, |(a, b, c)| {
        let (l, r) = (&(a * b) * c, a * &(b * c));
        ensure(l == r, || format!("({a})·({b})·({c}): {l} vs {r}"))
    });
    let sign = one.scale(&CyclotomicNumber::from_int(base.field(), ext.sign().as_i64()));
    rec.check("τ^N = s", expect_eq("τ^N", &tau.pow(n as u32), &sign));
    rec.cases("u·τ = τ·φ(u)", 0..base.dim(), |i| {
        let e = BaseElement::basis(&base, i);
        expect_eq("e·τ", &(&ExtElement::from_base(&ext, e.clone()) * &tau), &tau.mul_base(&e.twist(1)))
    });
    rec.sampled("d = [τ, ·]_q", 200, |_| {
        let xi = s.ext(&ext);
        expect_eq("dξ", &differential(&xi), &inner_derivation(&tau, &xi)?)
    });
    rec.sampled("d raises degree by one", 100, |_| {
        let k = s.index(n);
        let d = differential(&s.homogeneous(&ext, k));
        ensure(d.is_zero() || d.degree().ok() == Some((k + 1) % n), || format!("d of a degree-{k} element is {d}"))
    });
    rec.sampled("d^N = 0", 200, |_| {
        let xi = s.ext(&ext);
        let dn = d_power(&xi, n);
        ensure(dn.is_zero(), || format!("d^N({xi}) = {dn}"))
    });
    rec.sampled("graded q-Leibniz", 500, |_| {
        let (a, b) = (s.index(n), s.index(n));
        let (xi, eta) = (s.homogeneous(&ext, a), s.homogeneous(&ext, b));
        let lhs = differential(&(&xi * &eta));
        let rhs = &(&differential(&xi) * &eta) + &(&xi * &differential(&eta)).scale(&ext.q_power(a as i64));
        ensure(lhs == rhs, || format!("ξ = {xi}, η = {eta}: {lhs} vs {rhs}"))
    });

    let x = x.cloned().or_else(|| instance.default_coordinate());
    let mut witnesses = vec![("t".to_string(), tau.clone())];
    if let Some(x) = &x {
        witnesses.push((format!("t*({x})"), tau.mul_base(x)));
        witnesses.push((format!("t*(1 + {x})"), tau.mul_base(&(&BaseElement::one(&base) + x))));
    }
    for (label, v) in witnesses {
        let c = match check_inner_differential(&v) {
            Ok(c) => c,
            Err(e) => {
                rec.fail(&format!("inner differential v = {label}"), e.to_string());
                continue;
            }
        };
        rec.info(
            &format!("inner differential v = {label}"),
            format!("v^N = {}, v^N = ±1: {}, (d_v)^N = 0: {}", c.v_pow_n, c.is_pm_one, c.d_n_vanishes),
        );
        rec.check(
            &format!("v^N = ±1 ⇒ (d_v)^N = 0, v = {label}"),
            ensure(!c.is_pm_one || c.d_n_vanishes, || {
                let (u, img) = c.witness.clone().expect("nonvanishing has a witness");
                format!("(d_v)^N({u}) = {img}")
            }),
        );
        rec.check(
            &format!("(d_v)^N(u) = v^N·u − u·v^N, v = {label}"),
            ensure(c.closed_form_holds, || "closed form fails on a basis element".into()),
        );
    }
}

fn calculus_suite(instance: &Instance, c: &Coordinate, s: &mut Sampler, rec: &mut Recorder<'_>) {
    let ext = c.ext().clone();
    let base = ext.base().clone();
    let n = ext.n();
    let x = c.x().clone();

    rec.sampled("du = dx·u'_x", 100, |_| {
        let u = s.base(&base);
        expect_eq("du", &differential(&ExtElement::from_base(&ext, u.clone())), &c.dx().mul_base(&derivative(&u, c)))
    });
    rec.sampled("(uv)'_x = u'_x·v + φ_dx(u)·v'_x", 100, |_| {
        let (u, v) = (s.base(&base), s.base(&base));
        let rhs = &(&derivative(&u, c) * &v) + &(&phi_dx(&u, c) * &derivative(&v, c));
        expect_eq("(uv)'", &derivative(&(&u * &v), c), &rhs)
    });
    if x.twist(1) == x.scale(ext.q()) {
        rec.cases("power rule (x^m)' = [m]_q x^{m−1}", 0..n, |m| {
            let qm = (0..m).map(|j| ext.q_power(j as i64)).fold(CyclotomicNumber::zero(base.field()), |a, b| &a + &b);
            let xm = x.pow(m as i64)?;
            let expected = if m == 0 { BaseElement::zero(&base) } else { x.pow(m as i64 - 1)?.scale(&qm) };
            expect_eq(&format!("(x^{m})'"), &derivative(&xm, c), &expected)
        });
    } else {
        rec.info("power rule", "skipped: φ(x) ≠ q·x for this coordinate");
    }
    rec.sampled("change of variable", 20, |_| {
        let Some(cy) = s.coordinate(&ext) else { return Ok(()) };
        let t = change_of_variable(c, &cy);
        let u = s.base(&base);
        expect_eq("u'_x", &derivative(&u, c), &(&t.y_prime_x * &derivative(&u, &cy)))
    });

    rec.cases("Q_k recurrence = explicit product, inverse", 1..=n, |k| {
        let q = poly_q(k, c)?;
        expect_eq(&format!("Q_{k}"), &q, &poly_q_explicit(k, c)?)?;
        ensure((&q * &poly_q_inverse(k, c)?).is_one(), || format!("Q_{k}·Q_{k}⁻¹ ≠ 1"))?;
        ensure((&poly_q_inverse(k, c)? * &q).is_one(), || format!("Q_{k}⁻¹·Q_{k} ≠ 1"))
    });
    rec.cases("(dx)^k = τ^k Q_k", 1..n, |k| {
        expect_eq(&format!("(dx)^{k}"), &c.dx().pow(k as u32), &ExtElement::homogeneous(&ext, k, poly_q(k, c)?))
    });
    rec.check("P_1 = Q_1 = Δx", (|| expect_eq("P_1", &poly_p(1, c)?, &poly_q(1, c)?))());
    rec.check(
        "P_2, P_3 expansions",
        (|| {
            let one = CyclotomicNumber::one(base.field());
            let q = ext.q();
            let p2 = &(&x - &x.twist(1).scale(&(&one + q))) + &x.twist(2).scale(q);
            expect_eq("P_2", &poly_p(2, c)?, &p2)?;
            if n >= 3 {
                let (q2, q3) = (ext.q_power(2), ext.q_power(3));
                let p3 = &(&(&x - &x.twist(1).scale(&(&(&one + q) + &q2))) + &x.twist(2).scale(&(&(q + &q2) + &q3)))
                    - &x.twist(3).scale(&q3);
                expect_eq("P_3", &poly_p(3, c)?, &p3)?;
            }
            Ok(())
        })(),
    );
    rec.cases("d^k x = τ^k P_k", 1..=n, |k| {
        let lhs = d_power(&ExtElement::from_base(&ext, x.clone()), k);
        expect_eq(&format!("d^{k}x"), &lhs, &ExtElement::homogeneous(&ext, k % n, poly_p(k, c)?))
    });
    rec.check("P_N = 0", (|| ensure(poly_p(n, c)?.is_zero(), || "P_N ≠ 0".into()))());
    rec.check("Σ_j φ^j(P_{N−1}) = 0", ensure(poly_p_twisted_sum(c).is_zero(), || "twisted sum ≠ 0".into()));

    rec.cases("d((dx)^k) = (dx)^{k+1}·Φ_k", 1..n, |k| {
        let lhs = differential(&c.dx().pow(k as u32));
        expect_eq(&format!("k = {k}"), &lhs, &c.dx().pow(k as u32 + 1).mul_base(&poly_phi(k, c)?))
    });
    if n >= 3 {
        match adjudicate_phi_recurrence(c) {
            Ok(verdicts) => {
                for v in verdicts {
                    let detail: Vec<String> =
                        v.matches.iter().map(|(k, m)| format!("k={k}:{}", if *m { "match" } else { "differs" })).collect();
                    let tag = if v.all_match() { "matches oracle" } else { "does not match oracle" };
                    rec.info(&format!("Φ recurrence {}", v.reading), format!("{tag} ({})", detail.join(", ")));
                }
            }
            Err(e) => rec.fail("Φ recurrence", e.to_string()),
        }
    }
    if n >= 2 {
        rec.sampled("form differential: two paths agree", 100 * (n - 1), |i| {
            let k = i % (n - 1);
            let basis = if s.index(2) == 0 { FormBasis::Tau } else { FormBasis::Dx };
            let omega = KForm::new(k, basis, s.base(&base))?;
            let direct = differential(&omega.to_ext(c)?);
            let via = form_differential(&omega, c)?.to_ext(c)?;
            ensure(direct == via, || format!("ω = {omega}: {direct} vs {via}"))
        });
        rec.sampled("D^(1) = D", 100, |_| {
            let u = s.base(&base);
            expect_eq("Du", &covariant_derivative(&u, 1, c)?, &operator_d(&u, c)?)
        });
    }
    if n >= 3 {
        rec.sampled("d² of a 1-form through D", 100, |_| {
            let u = s.base(&base);
            let omega = KForm::new(1, FormBasis::Dx, u.clone())?;
            let direct = d_power(&omega.to_ext(c)?, 2);
            let v = covariant_derivative(&covariant_derivative(&u, 1, c)?, 2, c)?;
            expect_eq("d²ω", &direct, &c.dx().pow(3).mul_base(&v))
        });
    }
    if n == 2 {
        rec.sampled("u''_x = 0", 100, |_| {
            let l = linearity_check(c, &s.base(&base))?;
            ensure(l.is_zero, || format!("u'' = {}", l.second_derivative))
        });
    }
    if *instance.kind() == InstanceKind::Quaternion {
        quaternion_checks(instance, s, rec);
    }
}

fn quaternion_checks(instance: &Instance, s: &mut Sampler, rec: &mut Recorder<'_>) {
    let ext = instance.ext().clone();
    let base = ext.base().clone();
    let f = base.field().clone();
    let one = BaseElement::one(&base);
    let j = BaseElement::basis(&base, 1);
    rec.sampled("Δ(a + b·j) = 2b·j", 100, |_| {
        let (a, b) = (s.cyclotomic(&f), s.cyclotomic(&f));
        let x = &one.scale(&a) + &j.scale(&b);
        let two_b = &b + &b;
        expect_eq("Δx", &delta(&x), &j.scale(&two_b))?;
        ensure(Coordinate::new(&ext, x).is_ok() == !b.is_zero(), || "invertibility of Δx does not track b ≠ 0".into())
    });
    rec.sampled("d²𝔮 = 0", 100, |_| {
        let h = s.ext(&ext);
        ensure(d_power(&h, 2).is_zero(), || format!("d²({h}) ≠ 0"))
    });
    rec.sampled("d(z_0 + i·z_1) degree-0 part = −(z̄_1 + z_1)", 100, |_| {
        let (z0, z1) = (s.base(&base), s.base(&base));
        let h = ExtElement::from_parts(&ext, vec![z0.clone(), z1.clone()])?;
        let dh = differential(&h);
        expect_eq("degree 0", dh.part(0), &-&(&z1.twist(1) + &z1))?;
        expect_eq("degree 1", dh.part(1), &(&z0 - &z0.twist(1)))
    });
    rec.info("d(z_0 + i·z_1)", "degree-1 part i·(z_0 − z̄_0) accompanies the printed degree-0 value −(z̄_1 + z_1)");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn small_instances_pass() {
        for inst in [Instance::quantum_plane(2).unwrap(), Instance::quantum_plane(3).unwrap(), Instance::quaternion().unwrap()] {
            let r = run(Suite::All, &inst, None, 1);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn recurrence_verdicts_are_reported() {
        let r = run(Suite::Calculus, &Instance::quantum_plane(4).unwrap(), None, 0);
        let winner = r.checks.iter().find(|c| c.name.contains("phi(Phi_k)") && c.name.contains("q^k*")).unwrap();
        assert!(winner.detail.as_deref().unwrap().starts_with("matches oracle"));
    }

    #[test]
    fn singular_coordinate_is_a_failure() {
        let inst = Instance::quaternion().unwrap();
        let r = run(Suite::Calculus, &inst, Some(BaseElement::one(inst.ext().base())), 0);
        assert!(!r.passed());
        assert!(r.find("coordinate").is_some());
    }
}
