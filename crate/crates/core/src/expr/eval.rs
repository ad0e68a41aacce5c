use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{parse, AddOp, Expr, ParseError};
use crate::basealg::BaseElement;
use crate::calculus::{
    covariant_derivative, delta, derivative, form_differential, operator_d, poly_p, poly_phi, poly_q, Coordinate,
    FormBasis, KForm, KFormJson,
};
use crate::error::AlgebraError;
use crate::exactnum::{CyclotomicJson, CyclotomicNumber};
use crate::extension::{differential, ExtElement, ExtElementJson};
use crate::instance::{Instance, InstanceKind};

/// Largest accepted |exponent|.
pub const MAX_EXPONENT: i64 = 1024;
/// Rough bound on the bit size of any coefficient a power may produce.
const MAX_BITS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("unknown function {0:?}")]
    UnknownFunction(String),
    #[error("{name} takes {expected} argument(s), got {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("{0}")]
    Type(String),
    #[error("exponent {0} exceeds the limit of {MAX_EXPONENT}")]
    ExponentTooLarge(i64),
    #[error("result of the power would exceed {MAX_BITS} bits per coefficient")]
    TooLarge,
    #[error("no coordinate: {0}")]
    NoCoordinate(String),
}

type Result<T> = std::result::Result<T, EvalError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(CyclotomicNumber),
    Elem(ExtElement),
    Form(KForm),
}

/// Wire form `{"kind": "scalar"|"element"|"form", "value": ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum ValueJson {
    Scalar(CyclotomicJson),
    Element(ExtElementJson),
    Form(KFormJson),
}

impl Value {
    pub fn to_json(&self) -> ValueJson {
        match self {
            Value::Scalar(c) => ValueJson::Scalar(c.to_json()),
            Value::Elem(e) => ValueJson::Element(e.to_json()),
            Value::Form(f) => ValueJson::Form(f.to_json()),
        }
    }

    pub fn from_json(session: &Session, json: &ValueJson) -> Result<Self> {
        let ext = session.instance.ext();
        Ok(match json {
            ValueJson::Scalar(c) => Value::Scalar(CyclotomicNumber::from_json(ext.base().field(), c)?),
            ValueJson::Element(e) => Value::Elem(ExtElement::from_json(ext, e)?),
            ValueJson::Form(f) => Value::Form(KForm::from_json(session.coordinate()?, f)?),
        })
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::Elem(e) => write!(f, "{e}"),
            Value::Form(k) => write!(f, "{k}"),
        }
    }
}

/// An algebra plus the coordinate used by `der`-free calculus requests.
#[derive(Debug, Clone)]
pub struct Session {
    instance: Instance,
    coordinate: std::result::Result<Coordinate, String>,
}

impl Session {
    /// Uses the canonical generator as coordinate.
    pub fn new(instance: Instance) -> Self {
        let coordinate = match instance.default_coordinate() {
            Some(x) => Coordinate::new(instance.ext(), x).map_err(|e| format!("default generator: {e}")),
            None => Err("the algebra has no non-unit basis element".into()),
        };
        Self { instance, coordinate }
    }

    /// Evaluates `src` to an element of A and uses it as coordinate.
    pub fn with_coordinate(instance: Instance, src: &str) -> Result<Self> {
        let mut s = Self::new(instance);
        let x = s.eval_base(src)?;
        s.coordinate = Ok(Coordinate::new(s.instance.ext(), x)?);
        Ok(s)
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn coordinate(&self) -> Result<&Coordinate> {
        self.coordinate.as_ref().map_err(|e| EvalError::NoCoordinate(e.clone()))
    }

    pub fn eval_str(&self, src: &str) -> Result<Value> {
        evaluate(&parse(src)?, self)
    }

    /// Evaluates `src` and requires an element of A.
    pub fn eval_base(&self, src: &str) -> Result<BaseElement> {
        self.base_of(&self.eval_str(src)?)
    }

    fn elem(&self, v: Value) -> Result<ExtElement> {
        let ext = self.instance.ext();
        Ok(match v {
            Value::Scalar(c) => ExtElement::one(ext).scale(&c),
            Value::Elem(e) => e,
            Value::Form(f) => f.to_ext(self.coordinate()?)?,
        })
    }

    fn base_of(&self, v: &Value) -> Result<BaseElement> {
        let base = self.instance.ext().base();
        match v {
            Value::Scalar(c) => Ok(BaseElement::scalar(base, c)),
            Value::Elem(e) => e.as_base().cloned().ok_or_else(|| EvalError::Type(format!("expected an element of A, got {e}"))),
            Value::Form(f) if f.degree() == 0 => Ok(f.coeff().clone()),
            Value::Form(f) => Err(EvalError::Type(format!("expected an element of A, got the {}-form {f}", f.degree()))),
        }
    }

    fn symbol(&self, name: &str) -> Result<Value> {
        let ext = self.instance.ext();
        let base = ext.base();
        let quaternion = *self.instance.kind() == InstanceKind::Quaternion;
        Ok(match name {
            "q" => Value::Scalar(ext.q().clone()),
            "t" => Value::Elem(ExtElement::tau(ext)),
            "i" if quaternion => Value::Elem(ExtElement::tau(ext)),
            "k" if quaternion => Value::Elem(ExtElement::tau(ext).mul_base(&BaseElement::basis(base, 1))),
            "dx" => Value::Elem(self.coordinate()?.dx()),
            _ => match base.basis_index(name) {
                Some(i) => Value::Elem(ExtElement::from_base(ext, BaseElement::basis(base, i))),
                None => return Err(EvalError::UnknownSymbol(name.to_string())),
            },
        })
    }
}

fn integer_arg(v: &Value, what: &str) -> Result<i64> {
    let err = || EvalError::Type(format!("{what} must be an integer, got {v}"));
    let Value::Scalar(c) = v else { return Err(err()) };
    let r = c.as_rational().ok_or_else(err)?;
    if !r.is_integer() {
        return Err(err());
    }
    i64::try_from(r.to_integer()).map_err(|_| err())
}

fn index_arg(v: &Value, what: &str) -> Result<usize> {
    let k = integer_arg(v, what)?;
    usize::try_from(k).map_err(|_| EvalError::Type(format!("{what} must be non-negative, got {k}")))
}

fn coefficient_bits(v: &Value) -> u64 {
    let coords: Vec<&CyclotomicNumber> = match v {
        Value::Scalar(c) => vec![c],
        Value::Elem(e) => e.parts().iter().flat_map(|u| u.coords()).collect(),
        Value::Form(f) => f.coeff().coords().iter().collect(),
    };
    coords
        .iter()
        .flat_map(|c| c.coords())
        .map(|r| r.numer().bits() + r.denom().bits())
        .max()
        .unwrap_or(0)
}

fn arity(name: &str, args: &[Expr], expected: usize) -> Result<()> {
    if args.len() != expected {
        return Err(EvalError::Arity { name: name.to_string(), expected, found: args.len() });
    }
    Ok(())
}

fn add(s: &Session, a: Value, b: Value, op: AddOp) -> Result<Value> {
    if let (Value::Scalar(x), Value::Scalar(y)) = (&a, &b) {
        return Ok(Value::Scalar(if op == AddOp::Add { x.try_add(y)? } else { x.try_sub(y)? }));
    }
    let (x, y) = (s.elem(a)?, s.elem(b)?);
    Ok(Value::Elem(if op == AddOp::Add { x.try_add(&y)? } else { x.try_sub(&y)? }))
}

fn mul(s: &Session, a: Value, b: Value) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.try_mul(&y)?),
        (Value::Scalar(x), Value::Elem(e)) | (Value::Elem(e), Value::Scalar(x)) => Value::Elem(e.scale(&x)),
        (a, b) => Value::Elem(s.elem(a)?.try_mul(&s.elem(b)?)?),
    })
}

fn pow(s: &Session, v: Value, k: i64) -> Result<Value> {
    if k.abs() > MAX_EXPONENT {
        return Err(EvalError::ExponentTooLarge(k));
    }
    if coefficient_bits(&v).saturating_mul(k.unsigned_abs()) > MAX_BITS {
        return Err(EvalError::TooLarge);
    }
    Ok(match v {
        Value::Scalar(c) => Value::Scalar(c.pow(k)?),
        v => {
            let e = s.elem(v)?;
            let e = if k < 0 { e.inverse()? } else { e };
            Value::Elem(e.pow(k.unsigned_abs() as u32))
        }
    })
}

fn call(s: &Session, name: &str, args: &[Expr]) -> Result<Value> {
    let ext = s.instance.ext();
    let ev = |i: usize| evaluate(&args[i], s);
    match name {
        "d" => {
            arity(name, args, 1)?;
            Ok(match ev(0)? {
                Value::Scalar(_) => Value::Elem(ExtElement::zero(ext)),
                Value::Elem(e) => Value::Elem(differential(&e)),
                Value::Form(f) => Value::Form(form_differential(&f, s.coordinate()?)?),
            })
        }
        "Delta" => {
            arity(name, args, 1)?;
            let u = s.base_of(&ev(0)?)?;
            Ok(Value::Elem(ExtElement::from_base(ext, delta(&u))))
        }
        "phi" => {
            arity(name, args, 2)?;
            let k = integer_arg(&ev(1)?, "the twist power")?;
            Ok(match ev(0)? {
                Value::Scalar(c) => Value::Scalar(c),
                v => {
                    let e = s.elem(v)?;
                    let parts = e.parts().iter().map(|u| u.twist(k)).collect();
                    Value::Elem(ExtElement::from_parts(ext, parts)?)
                }
            })
        }
        "der" => {
            arity(name, args, 2)?;
            let u = s.base_of(&ev(0)?)?;
            let y = s.base_of(&ev(1)?)?;
            let c = Coordinate::new(ext, y)?;
            Ok(Value::Elem(ExtElement::from_base(ext, derivative(&u, &c))))
        }
        "P" | "Q" | "Phi" => {
            arity(name, args, 1)?;
            let k = index_arg(&ev(0)?, "the index")?;
            let c = s.coordinate()?;
            let u = match name {
                "P" => poly_p(k, c)?,
                "Q" => poly_q(k, c)?,
                _ => poly_phi(k, c)?,
            };
            Ok(Value::Elem(ExtElement::from_base(ext, u)))
        }
        "form" => {
            arity(name, args, 2)?;
            let k = index_arg(&ev(0)?, "the form degree")?;
            let u = s.base_of(&ev(1)?)?;
            Ok(Value::Form(KForm::new(k, FormBasis::Dx, u)?))
        }
        "cov" => {
            arity(name, args, 2)?;
            let k = index_arg(&ev(0)?, "the form degree")?;
            let u = s.base_of(&ev(1)?)?;
            Ok(Value::Elem(ExtElement::from_base(ext, covariant_derivative(&u, k, s.coordinate()?)?)))
        }
        "D" => {
            arity(name, args, 1)?;
            let u = s.base_of(&ev(0)?)?;
            Ok(Value::Elem(ExtElement::from_base(ext, operator_d(&u, s.coordinate()?)?)))
        }
        _ => Err(EvalError::UnknownFunction(name.to_string())),
    }
}

/// Evaluates a parsed expression; pure and deterministic given the session.
pub fn evaluate(e: &Expr, s: &Session) -> Result<Value> {
    match e {
        Expr::Rational(r) => Ok(Value::Scalar(CyclotomicNumber::from_rational(s.instance.ext().base().field(), r.clone()))),
        Expr::Symbol(name) => s.symbol(name),
        Expr::Neg(inner) => Ok(match evaluate(inner, s)? {
            Value::Scalar(c) => Value::Scalar(-c),
            Value::Form(f) => Value::Form(KForm::new(f.degree(), f.basis(), -f.coeff())?),
            Value::Elem(x) => Value::Elem(-&x),
        }),
        Expr::Sum(first, rest) => {
            let mut acc = evaluate(first, s)?;
            for (op, t) in rest {
                acc = add(s, acc, evaluate(t, s)?, *op)?;
            }
            Ok(acc)
        }
        Expr::Product(factors) => {
            let mut acc = evaluate(&factors[0], s)?;
            for f in &factors[1..] {
                acc = mul(s, acc, evaluate(f, s)?)?;
            }
            Ok(acc)
        }
        Expr::Pow(base, k) => pow(s, evaluate(base, s)?, *k),
        Expr::Call(name, args) => call(s, name, args),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(n: usize) -> Session {
        Session::new(Instance::quantum_plane(n).unwrap())
    }

    fn same(s: &Session, a: &str, b: &str) {
        let (x, y) = (s.eval_str(a).unwrap(), s.eval_str(b).unwrap());
        assert_eq!(s.elem(x).unwrap(), s.elem(y).unwrap(), "{a} vs {b}");
    }

    #[test]
    fn derivative_of_square() {
        let s = qp(3);
        same(&s, "der(x^2, x)", "(1+q)*x");
        assert_eq!(s.eval_str("der(x^2, x)").unwrap().to_string(), "(1 + q)*x");
    }

    #[test]
    fn spec_examples() {
        let s = qp(3);
        assert!(s.elem(s.eval_str("d(1)").unwrap()).unwrap().is_zero());
        assert!(s.elem(s.eval_str("P(3)").unwrap()).unwrap().is_zero());
        same(&s, "d(x)", "t*(1-q)*x");
        same(&s, "x*t", "q*t*x");
        same(&s, "x^3", "1");
        same(&s, "t^3", "1");
        same(&s, "x^-1", "x^2");
        same(&s, "dx", "d(x)");
        same(&s, "Q(2)", "phi(Delta(x), 1)*Delta(x)");
        same(&s, "cov(1, x^2)", "D(x^2)");
        same(&s, "d(form(1, x))", "d(dx*x)");
    }

    #[test]
    fn quaternion_symbols() {
        let s = Session::new(Instance::quaternion().unwrap());
        same(&s, "i*i", "-1");
        same(&s, "j*j", "-1");
        same(&s, "i*j", "-j*i");
        same(&s, "k*i", "j");
        same(&s, "d(2 + 3*j + i*(5 - j))", "-10 + i*6*j");
        same(&s, "Delta(3 + 2*j)", "4*j");
    }

    #[test]
    fn scalar_arithmetic_stays_scalar() {
        let s = qp(4);
        assert_eq!(s.eval_str("q^2 + 1").unwrap(), Value::Scalar(CyclotomicNumber::zero(s.instance.ext().base().field())));
        assert!(matches!(s.eval_str("1/2*q").unwrap(), Value::Scalar(_)));
    }

    #[test]
    fn errors() {
        let s = qp(3);
        assert!(matches!(s.eval_str("y").unwrap_err(), EvalError::UnknownSymbol(_)));
        assert!(matches!(s.eval_str("foo(x)").unwrap_err(), EvalError::UnknownFunction(_)));
        assert!(matches!(s.eval_str("d(x, x)").unwrap_err(), EvalError::Arity { expected: 1, found: 2, .. }));
        assert!(matches!(s.eval_str("x^2000").unwrap_err(), EvalError::ExponentTooLarge(2000)));
        assert!(matches!(s.eval_str("(1+t)^-1").unwrap_err(), EvalError::Algebra(AlgebraError::NotHomogeneous)));
        assert!(matches!(s.eval_str("(1+x^2+x)^-1").unwrap_err(), EvalError::Algebra(AlgebraError::NotInvertible)));
        assert!(matches!(s.eval_str("0^-1").unwrap_err(), EvalError::Algebra(AlgebraError::DivisionByZero)));
        assert!(matches!(s.eval_str("der(x, 1)").unwrap_err(), EvalError::Algebra(AlgebraError::NotInvertible)));
        assert!(matches!(s.eval_str("P(1/2)").unwrap_err(), EvalError::Type(_)));
        assert!(matches!(s.eval_str("Delta(t)").unwrap_err(), EvalError::Type(_)));
        assert!(matches!(s.eval_str("x^").unwrap_err(), EvalError::Parse(_)));
        assert!(matches!(s.eval_str("((2^1024)^1024)^1024").unwrap_err(), EvalError::TooLarge));
        assert!(matches!(s.eval_str("d(form(2, x))").unwrap_err(), EvalError::Algebra(AlgebraError::OutOfRange { .. })));
    }

    #[test]
    fn custom_coordinate() {
        let s = Session::with_coordinate(Instance::quantum_plane(3).unwrap(), "x^2").unwrap();
        same(&s, "P(1)", "Delta(x^2)");
        assert!(Session::with_coordinate(Instance::quantum_plane(3).unwrap(), "1").is_err());
        assert!(Session::with_coordinate(Instance::quantum_plane(3).unwrap(), "t").is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = qp(4);
        for src in ["q + 1/3", "t*x - 2*x^3", "form(2, x + 1/2)", "0"] {
            let v = s.eval_str(src).unwrap();
            let text = serde_json::to_string(&v.to_json()).unwrap();
            let back: ValueJson = serde_json::from_str(&text).unwrap();
            assert_eq!(Value::from_json(&s, &back).unwrap(), v, "{src}");
        }
    }
}
