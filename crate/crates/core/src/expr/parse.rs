use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{AddOp, Expr};
use crate::exactnum::Rational;

/// Maximum nesting of parentheses, calls and unary minus.
pub const MAX_DEPTH: usize = 200;

/// A parse failure at a byte offset, with the set of tokens that would have been accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: expected ", self.pos)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::Ident(s) => format!("symbol {s}"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            out.push((pos, Tok::Num(s)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_alphanumeric() || *d == '_') {
                s.push(d);
                chars.next();
            }
            out.push((pos, Tok::Ident(s)));
        } else if "+-*^/(),".contains(c) {
            out.push((pos, Tok::Sym(c)));
            chars.next();
        } else {
            return Err(ParseError {
                pos,
                expected: vec!["number".into(), "symbol".into(), "operator".into(), "parenthesis".into()],
                found: format!("character {c:?}"),
            });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    depth: usize,
}

const ATOM: [&str; 4] = ["number", "symbol", "'('", "'-'"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn nest(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error(&["at most 200 levels of nesting"]));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let first = self.term()?;
        let mut rest = Vec::new();
        loop {
            let op = if self.eat('+') {
                AddOp::Add
            } else if self.eat('-') {
                AddOp::Sub
            } else {
                break;
            };
            rest.push((op, self.term()?));
        }
        Ok(if rest.is_empty() { first } else { Expr::Sum(Box::new(first), rest) })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.unary()?];
        while self.eat('*') {
            factors.push(self.unary()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            self.nest()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let Tok::Num(digits) = self.peek().clone() else {
            return Err(self.error(if negative { &["integer"] } else { &["integer", "'-'"] }));
        };
        let value: i64 = digits.parse().map_err(|_| self.error(&["integer exponent within 64 bits"]))?;
        self.at += 1;
        Ok(Expr::Pow(Box::new(base), if negative { -value } else { value }))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.at += 1;
                let num: BigInt = n.parse().expect("lexer yields digits");
                if !self.eat('/') {
                    return Ok(Expr::Rational(Rational::from_integer(num)));
                }
                let Tok::Num(d) = self.peek().clone() else {
                    return Err(self.error(&["denominator"]));
                };
                let den: BigInt = d.parse().expect("lexer yields digits");
                if den.is_zero() {
                    return Err(self.error(&["nonzero denominator"]));
                }
                self.at += 1;
                Ok(Expr::Rational(Rational::new(num, den)))
            }
            Tok::Ident(name) => {
                self.at += 1;
                if !self.eat('(') {
                    return Ok(Expr::Symbol(name));
                }
                self.nest()?;
                let mut args = vec![self.expr()?];
                while self.eat(',') {
                    args.push(self.expr()?);
                }
                if !self.eat(')') {
                    return Err(self.error(&["','", "')'", "operator"]));
                }
                self.depth -= 1;
                Ok(Expr::Call(name, args))
            }
            Tok::Sym('(') => {
                self.at += 1;
                self.nest()?;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error(&["')'", "operator"]));
                }
                self.depth -= 1;
                Ok(inner)
            }
            _ => Err(self.error(&ATOM)),
        }
    }
}

/// Parses one expression; total on every input string.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, at: 0, depth: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Expr {
        Expr::Symbol(s.into())
    }

    fn int(k: i64) -> Expr {
        Expr::Rational(Rational::from_integer(k.into()))
    }

    #[test]
    fn example_tree() {
        let e = parse("d(x^2) + q*t").unwrap();
        let want = Expr::Sum(
            Box::new(Expr::Call("d".into(), vec![Expr::Pow(Box::new(sym("x")), 2)])),
            vec![(AddOp::Add, Expr::Product(vec![sym("q"), sym("t")]))],
        );
        assert_eq!(e, want);
    }

    #[test]
    fn dangling_caret() {
        let e = parse("x^").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(e.expected.contains(&"integer".to_string()));
        assert_eq!(e.found, "end of input");
    }

    #[test]
    fn precedence_and_unary() {
        assert_eq!(parse("-x^2").unwrap(), Expr::Neg(Box::new(Expr::Pow(Box::new(sym("x")), 2))));
        assert_eq!(parse("2*x^-1").unwrap(), Expr::Product(vec![int(2), Expr::Pow(Box::new(sym("x")), -1)]));
        assert_eq!(parse("3/6").unwrap(), Expr::Rational(Rational::new(1.into(), 2.into())));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("").unwrap_err().pos, 0);
        assert_eq!(parse("x y").unwrap_err().pos, 2);
        assert_eq!(parse("x $").unwrap_err().pos, 2);
        assert_eq!(parse("1/0").unwrap_err().pos, 2);
        assert_eq!(parse("d(x").unwrap_err().pos, 3);
        assert_eq!(parse("(x").unwrap_err().expected[0], "')'");
        assert_eq!(parse("x^99999999999999999999").unwrap_err().pos, 2);
        assert_eq!(parse("é").unwrap_err().pos, 0);
        assert_eq!(parse("x é").unwrap_err().pos, 2);
    }

    #[test]
    fn deep_nesting_is_an_error_not_a_crash() {
        let deep = "(".repeat(100_000) + "x" + &")".repeat(100_000);
        assert!(parse(&deep).unwrap_err().expected[0].contains("nesting"));
        let minus = "-".repeat(100_000) + "x";
        assert!(parse(&minus).is_err());
        let ok = "(".repeat(MAX_DEPTH) + "x" + &")".repeat(MAX_DEPTH);
        assert_eq!(parse(&ok).unwrap(), sym("x"));
        let long = vec!["x"; 100_000].join("+");
        assert!(parse(&long).is_ok());
    }
}
