use super::MatrixRep;
use crate::basealg::BaseElement;
use crate::calculus::{
    derivative, form_differential, operator_d, covariant_derivative, poly_p, poly_phi, poly_q, Coordinate, FormBasis,
    KForm,
};
use crate::exactnum::CyclotomicNumber;
use crate::extension::{check_inner_differential, differential, ExtElement};
use crate::linalg::Matrix;
use crate::random::Sampler;
use crate::verify::{ensure, Recorder, Sample};

fn same(what: &str, lhs: &Matrix, rhs: &Matrix) -> Sample {
    ensure(lhs == rhs, || format!("{what}: matrices differ, lhs = {lhs:?}, rhs = {rhs:?}"))
}

/// Matrix-side first-order calculus for a fixed coordinate.
struct MatrixCalculus<'a> {
    rep: &'a MatrixRep,
    x: Matrix,
    delta_x_inv: Matrix,
}

impl<'a> MatrixCalculus<'a> {
    fn new(rep: &'a MatrixRep, c: &Coordinate) -> Option<Self> {
        let x = rep.represent_base(c.x());
        let delta_x_inv = rep.delta(&x).inverse()?;
        Some(Self { rep, x, delta_x_inv })
    }

    fn derivative(&self, m: &Matrix) -> Matrix {
        &self.delta_x_inv * &self.rep.delta(m)
    }

    fn delta_x(&self) -> Matrix {
        self.rep.delta(&self.x)
    }

    fn phi_dx(&self, m: &Matrix) -> Matrix {
        &(&self.delta_x_inv * &self.rep.twist(m)) * &self.delta_x()
    }
}

impl MatrixRep {
    /// Δ on matrices: M − T⁻¹MT.
    pub fn delta(&self, m: &Matrix) -> Matrix {
        m - &self.twist(m)
    }

    fn inner_derivation(&self, v: &Matrix, m: &Matrix, grade: usize) -> Matrix {
        &(v * m) - &(m * v).scale(&self.q_power(grade as i64))
    }
}

/// Replays the algebraic identities through `rep`: every check recomputes the
/// right-hand side with matrix arithmetic only and compares exactly.
pub fn oracle_suite(rep: &MatrixRep, c: &Coordinate, sampler: &mut Sampler, rec: &mut Recorder<'_>) {
    let ext = rep.ext().clone();
    let base = ext.base().clone();
    let n = ext.n();

    rec.check("generator relations", rep.relation_failure().map_or(Ok(()), Err));
    rec.check(
        "injective on the canonical basis",
        ensure(rep.basis_rank() == n * base.dim(), || {
            format!("rank {} < {}", rep.basis_rank(), n * base.dim())
        }),
    );
    rec.sampled("homomorphism", 100, |_| {
        let (a, b) = (sampler.ext(&ext), sampler.ext(&ext));
        same("ρ(ξη) vs ρ(ξ)ρ(η)", &rep.represent(&(&a * &b))?, &(&rep.represent(&a)? * &rep.represent(&b)?))
    });

    rec.sampled("d matches T·M − q^l·M·T", 200, |_| {
        let xi = sampler.ext(&ext);
        let direct = rep.represent_graded(&differential(&xi));
        let via = rep.differential_graded(&rep.represent_graded(&xi));
        direct.iter().zip(&via).try_for_each(|(a, b)| same("grade part", a, b))
    });
    rec.sampled("d^N = 0 on matrices", 200, |_| {
        let mut parts = rep.represent_graded(&sampler.ext(&ext));
        for _ in 0..n {
            parts = rep.differential_graded(&parts);
        }
        ensure(parts.iter().all(Matrix::is_zero), || "d^N leaves a nonzero matrix".into())
    });
    rec.check(
        "T^N = s·identity",
        same("T^N", &rep.tau().pow(n), &rep.identity().scale(&CyclotomicNumber::from_int(rep.field(), ext.sign().as_i64()))),
    );

    let tau = ExtElement::tau(&ext);
    let witnesses = [("t", tau.clone()), ("t*x", tau.mul_base(c.x()))];
    for (label, v) in witnesses {
        rec.check(&format!("inner differential closed form, v = {label}"), (|| -> Sample {
            let check = check_inner_differential(&v)?;
            let vm = rep.represent(&v)?;
            let vn = vm.pow(n);
            let pm_one = vn == rep.identity() || vn == rep.identity().scale(&CyclotomicNumber::from_int(rep.field(), -1));
            ensure(pm_one == check.is_pm_one, || format!("V^N = ±1 is {pm_one} on matrices"))?;
            for k in 0..n {
                for i in 0..base.dim() {
                    let mut m = rep.represent(&ExtElement::homogeneous(&ext, k, BaseElement::basis(&base, i)))?;
                    let start = m.clone();
                    for step in 0..n {
                        m = rep.inner_derivation(&vm, &m, (k + step) % n);
                    }
                    same("(d_V)^N(M) vs V^N M − M V^N", &m, &(&(&vn * &start) - &(&start * &vn)))?;
                }
            }
            Ok(())
        })());
    }

    rec.sampled("graded q-Leibniz on matrices", 500, |_| {
        let (a, b) = (sampler.index(n), sampler.index(n));
        let (xi, eta) = (sampler.homogeneous(&ext, a), sampler.homogeneous(&ext, b));
        let (m, k) = (rep.represent(&xi)?, rep.represent(&eta)?);
        let lhs = rep.differential(&(&m * &k), (a + b) % n);
        let rhs = &(&rep.differential(&m, a) * &k) + &(&m * &rep.differential(&k, b)).scale(&rep.q_power(a as i64));
        same("d(MK)", &lhs, &rhs)?;
        same("ρ(d(ξη))", &rep.represent(&differential(&(&xi * &eta)))?, &lhs)
    });

    let Some(mc) = MatrixCalculus::new(rep, c) else {
        rec.fail("coordinate on matrices", "ρ(Δx) is singular");
        return;
    };
    rec.check("Δx on matrices", same("ρ(Δx)", &rep.represent_base(c.delta_x()), &mc.delta_x()));
    rec.sampled("derivative on matrices", 100, |_| {
        let u = sampler.base(&base);
        let uu = rep.represent_base(&u);
        let d = mc.derivative(&uu);
        same("ρ(u'_x)", &rep.represent_base(&derivative(&u, c)), &d)?;
        same("du = dx·u'_x", &rep.differential(&uu, 0), &(&(rep.tau() * &mc.delta_x()) * &d))
    });
    rec.sampled("twisted Leibniz on matrices", 100, |_| {
        let (u, v) = (rep.represent_base(&sampler.base(&base)), rep.represent_base(&sampler.base(&base)));
        let lhs = mc.derivative(&(&u * &v));
        let rhs = &(&mc.derivative(&u) * &v) + &(&mc.phi_dx(&u) * &mc.derivative(&v));
        same("(UV)'", &lhs, &rhs)
    });
    if rep.twist(&mc.x) == mc.x.scale(&rep.q_power(1)) {
        rec.cases("power rule on matrices", 0..n, |m| {
            let qm: CyclotomicNumber = (0..m)
                .map(|j| rep.q_power(j as i64))
                .fold(CyclotomicNumber::zero(rep.field()), |acc, t| &acc + &t);
            let expected = if m == 0 { rep.zero() } else { mc.x.pow(m - 1).scale(&qm) };
            same(&format!("(X^{m})'"), &mc.derivative(&mc.x.pow(m)), &expected)
        });
    }
    rec.sampled("change of variable on matrices", 20, |_| {
        let Some(cy) = sampler.coordinate(&ext) else { return Ok(()) };
        let Some(my) = MatrixCalculus::new(rep, &cy) else { return Err("ρ(Δy) singular".into()) };
        let yx = mc.derivative(&my.x);
        let xy = my.derivative(&mc.x);
        same("y'_x·x'_y", &(&yx * &xy), &rep.identity())?;
        let u = rep.represent_base(&sampler.base(&base));
        same("u'_x = y'_x·u'_y", &mc.derivative(&u), &(&yx * &my.derivative(&u)))
    });

    let dx = rep.tau() * &mc.delta_x();
    rec.cases("Q_k, P_k on matrices", 1..=n, |k| {
        let mut q = mc.delta_x();
        let mut p = mc.delta_x();
        for j in 1..k {
            q = &rep.twist(&q) * &mc.delta_x();
            p = &p - &rep.twist(&p).scale(&rep.q_power(j as i64));
        }
        same(&format!("Q_{k}"), &rep.represent_base(&poly_q(k, c)?), &q)?;
        same(&format!("P_{k}"), &rep.represent_base(&poly_p(k, c)?), &p)?;
        let tk = rep.tau().pow(k);
        same(&format!("(dx)^{k}"), &dx.pow(k), &(&tk * &q))?;
        let mut dk = mc.x.clone();
        for g in 0..k {
            dk = rep.differential(&dk, g);
        }
        same(&format!("d^{k}x"), &dk, &(&tk * &p))?;
        ensure(k < n || p.is_zero(), || "P_N ≠ 0 on matrices".into())
    });
    rec.cases("d((dx)^k) = (dx)^{k+1}·Φ_k on matrices", 1..n, |k| {
        let phi = rep.represent_base(&poly_phi(k, c)?);
        same(&format!("k = {k}"), &rep.differential(&dx.pow(k), k % n), &(&dx.pow(k + 1) * &phi))
    });
    if n >= 2 {
        rec.sampled("form differential on matrices", 100 * (n - 1), |i| {
            let k = i % (n - 1);
            let basis = if sampler.index(2) == 0 { FormBasis::Tau } else { FormBasis::Dx };
            let omega = KForm::new(k, basis, sampler.base(&base))?;
            let direct = rep.differential(&rep.represent(&omega.to_ext(c)?)?, k);
            let via = rep.represent(&form_differential(&omega, c)?.to_ext(c)?)?;
            same(&format!("d of {k}-form"), &direct, &via)
        });
        rec.sampled("D^(1) = D on matrices", 100, |_| {
            let u = sampler.base(&base);
            let a = rep.represent_base(&covariant_derivative(&u, 1, c)?);
            same("D^(1)u", &a, &rep.represent_base(&operator_d(&u, c)?))
        });
    }
    if n == 2 {
        rec.sampled("u''_x = 0 on matrices", 100, |_| {
            let u = rep.represent_base(&sampler.base(&base));
            ensure(mc.derivative(&mc.derivative(&u)).is_zero(), || "second derivative is nonzero".into())
        });
        rec.sampled("d² = 0 on matrices", 100, |_| {
            let parts = rep.represent_graded(&sampler.ext(&ext));
            let d2 = rep.differential_graded(&rep.differential_graded(&parts));
            ensure(d2.iter().all(Matrix::is_zero), || "d² leaves a nonzero matrix".into())
        });
    }
}
