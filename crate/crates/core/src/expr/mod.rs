//! The expression language used by the command line.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' '-'? integer)?
//! atom   := rational | symbol | call | '(' expr ')'
//! call   := name '(' expr (',' expr)* ')'
//! ```
//!
//! Juxtaposition is not multiplication. Symbols are resolved at evaluation time.

mod eval;
mod parse;

pub use eval::{evaluate, EvalError, Session, Value, ValueJson};
pub use parse::{parse, ParseError, MAX_DEPTH};

use std::fmt;

use crate::exactnum::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AddOp {
    Add,
    Sub,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Rational(Rational),
    Symbol(String),
    Neg(Box<Expr>),
    Sum(Box<Expr>, Vec<(AddOp, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, i64),
    Call(String, Vec<Expr>),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Sum(..) => 1,
            Expr::Product(_) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Rational(r) if r < &Rational::from_integer(0.into()) => 1,
            Expr::Rational(_) | Expr::Symbol(_) | Expr::Call(..) => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Rational(r) => write!(f, "{}", format_rational(r)),
            Expr::Symbol(s) => write!(f, "{s}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.write_at(f, 3)
            }
            Expr::Sum(first, rest) => {
                first.write_at(f, 2)?;
                for (op, e) in rest {
                    write!(f, " {} ", if *op == AddOp::Add { '+' } else { '-' })?;
                    e.write_at(f, 2)?;
                }
                Ok(())
            }
            Expr::Product(factors) => {
                for (i, e) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    e.write_at(f, 3)?;
                }
                Ok(())
            }
            Expr::Pow(base, k) => {
                base.write_at(f, 5)?;
                write!(f, "^{k}")
            }
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    a.write_at(f, 0)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Prints with the fewest parentheses that reparse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// Canonical spelling of an expression: `parse` then print.
pub fn normalize(src: &str) -> Result<String, ParseError> {
    parse(src).map(|e| e.to_string())
}
