//! Evaluator for field expressions.
//!
//! Grammar (loosest binding first):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" exponent)?
//! exponent := ["-"] int | "(" ["-"] int ["/" int] ")"
//! atom   := number | "e" | "pi" | call | "(" expr ")"
//! call   := name "(" expr ")"
//! name   := sqrt | st | classify | inv | sin* | cos* | tan*
//! ```
//!
//! `pi` may only appear in arguments of `sin*`, `cos*`, `tan*`, written as
//! `q*pi + <series>` with rational `q` and infinitesimal series.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use semieuclid::ext::{ext_cos_sin, ext_tan, TrigArgument};
use semieuclid::{ConstructibleReal, Exponent, Magnitude, Precision, SeriesNumber, Validity};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("{0}")]
    Math(String),
}

impl EvalError {
    pub fn is_parse(&self) -> bool {
        matches!(self, EvalError::Parse { .. })
    }
}

type EvalResult<T> = Result<T, EvalError>;

fn math(e: impl fmt::Display) -> EvalError {
    EvalError::Math(e.to_string())
}

/// Result of an evaluation.
#[derive(Clone, Debug)]
pub enum Value {
    Series(SeriesNumber),
    Magnitude(Magnitude),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Series(s) => write!(f, "{s}"),
            Value::Magnitude(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Serialize)]
struct TermJson {
    exponent: String,
    coefficient: String,
}

#[derive(Serialize)]
#[serde(untagged)]
enum ValueJson {
    Series {
        text: String,
        terms: Vec<TermJson>,
        validity: String,
    },
    Magnitude {
        text: String,
        class: String,
        sign: String,
    },
}

impl Value {
    pub fn to_json(&self) -> serde_json::Value {
        let v = match self {
            Value::Series(s) => ValueJson::Series {
                text: s.to_string(),
                terms: s
                    .terms()
                    .iter()
                    .map(|(e, c)| TermJson {
                        exponent: e.to_string(),
                        coefficient: c.to_string(),
                    })
                    .collect(),
                validity: match s.validity() {
                    Validity::Exact => "exact".into(),
                    Validity::Order(q) => format!("O(e^{q})"),
                },
            },
            Value::Magnitude(m) => ValueJson::Magnitude {
                text: m.to_string(),
                class: m.class.to_string(),
                sign: m.sign.to_string(),
            },
        };
        serde_json::to_value(v).expect("plain data")
    }
}

/// `pi_coeff * π + series`; the π part only survives into trig arguments.
#[derive(Clone)]
struct Num {
    pi: BigRational,
    s: SeriesNumber,
}

impl Num {
    fn series(s: SeriesNumber) -> Self {
        Num { pi: BigRational::zero(), s }
    }

    fn rational(&self) -> Option<BigRational> {
        if !self.s.is_exact() {
            return None;
        }
        match self.s.terms() {
            [] => Some(BigRational::zero()),
            [(e, c)] if e.is_zero() => c.as_rational(),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> EvalResult<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((col, Tok::Num(parse_decimal(&text, col)?)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let mut name: String = chars[start..i].iter().collect();
            // `sin*` and friends: the star belongs to the name
            if matches!(name.as_str(), "sin" | "cos" | "tan") && chars.get(i) == Some(&'*') {
                name.push('*');
                i += 1;
            }
            out.push((col, Tok::Ident(name)));
        } else if "+-*/^()".contains(c) || c == '\u{2212}' {
            out.push((col, Tok::Op(if c == '\u{2212}' { '-' } else { c })));
            i += 1;
        } else {
            return Err(EvalError::Parse {
                col,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

fn parse_decimal(text: &str, col: usize) -> EvalResult<BigRational> {
    let bad = || EvalError::Parse {
        col,
        msg: format!("malformed number '{text}'"),
    };
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if frac.contains('.') {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let d = BigInt::from(10u32).pow(frac.len() as u32);
    Ok(BigRational::new(n, d))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    prec: Precision,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> EvalResult<T> {
        Err(EvalError::Parse {
            col: self.col(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> EvalResult<()> {
        if self.eat(op) {
            Ok(())
        } else {
            self.err(format!("expected '{op}'"))
        }
    }

    fn expr(&mut self) -> EvalResult<Num> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let r = self.term()?;
                acc = Num { pi: acc.pi + r.pi, s: &acc.s + &r.s };
            } else if self.eat('-') {
                let r = self.term()?;
                acc = Num { pi: acc.pi - r.pi, s: &acc.s - &r.s };
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> EvalResult<Num> {
        let mut acc = self.unary()?;
        loop {
            let col = self.col();
            if self.eat('*') {
                let r = self.unary()?;
                acc = mul(acc, r, col)?;
            } else if self.eat('/') {
                let r = self.unary()?;
                acc = div(acc, r, col)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> EvalResult<Num> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(Num { pi: -v.pi, s: -&v.s });
        }
        self.power()
    }

    fn power(&mut self) -> EvalResult<Num> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        let k = self.exponent()?;
        no_pi(&base, col)?;
        Ok(Num::series(power(&base.s, k)?))
    }

    fn exponent(&mut self) -> EvalResult<Exponent> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let mut k = self.integer()?;
        if paren {
            if self.eat('/') {
                let d = self.integer()?;
                if d.is_zero() {
                    return self.err("zero exponent denominator");
                }
                k /= d;
            }
            self.expect(')')?;
        }
        Ok(if neg { -k } else { k })
    }

    fn integer(&mut self) -> EvalResult<Exponent> {
        match self.peek().cloned() {
            Some(Tok::Num(q)) if q.is_integer() => {
                self.pos += 1;
                let n: i64 = q.to_integer().try_into().map_err(|_| EvalError::Parse {
                    col: self.col(),
                    msg: "exponent too large".into(),
                })?;
                Ok(Exponent::from_integer(n))
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn atom(&mut self) -> EvalResult<Num> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(Num::series(SeriesNumber::constant(ConstructibleReal::from_rational(q), self.prec)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "e" => Ok(Num::series(SeriesNumber::epsilon(self.prec))),
                    "pi" => Ok(Num {
                        pi: BigRational::from_integer(1.into()),
                        s: SeriesNumber::zero(self.prec),
                    }),
                    "sqrt" | "st" | "inv" | "sin*" | "cos*" | "tan*" | "sin" | "cos" | "tan" => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(')')?;
                        self.call(&name, arg, col)
                    }
                    "classify" => self.err("classify(...) must be the whole expression"),
                    _ => Err(EvalError::Parse {
                        col,
                        msg: format!("unknown name '{name}'"),
                    }),
                }
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }

    fn call(&self, name: &str, arg: Num, col: usize) -> EvalResult<Num> {
        let trig = |arg: Num| -> EvalResult<TrigArgument> {
            TrigArgument::new(arg.pi, arg.s).map_err(math)
        };
        let s = match name {
            "sqrt" => {
                no_pi(&arg, col)?;
                arg.s.sqrt().map_err(math)?
            }
            "st" => {
                no_pi(&arg, col)?;
                SeriesNumber::constant(arg.s.standard_part().map_err(math)?, self.prec)
            }
            "inv" => {
                no_pi(&arg, col)?;
                arg.s.inv().map_err(math)?
            }
            "sin*" | "sin" => ext_cos_sin(&trig(arg)?).map_err(math)?.1,
            "cos*" | "cos" => ext_cos_sin(&trig(arg)?).map_err(math)?.0,
            _ => ext_tan(&trig(arg)?).map_err(math)?,
        };
        Ok(Num::series(s))
    }
}

fn no_pi(v: &Num, col: usize) -> EvalResult<()> {
    if v.pi.is_zero() {
        Ok(())
    } else {
        Err(EvalError::Parse {
            col,
            msg: "pi may only appear inside sin*, cos* or tan*".into(),
        })
    }
}

fn mul(a: Num, b: Num, col: usize) -> EvalResult<Num> {
    match (a.pi.is_zero(), b.pi.is_zero()) {
        (true, true) => Ok(Num::series(&a.s * &b.s)),
        (false, true) => scale_pi(a, &b, col),
        (true, false) => scale_pi(b, &a, col),
        (false, false) => Err(EvalError::Parse {
            col,
            msg: "pi times pi is not supported".into(),
        }),
    }
}

/// `(q π + s) * r` for a rational `r`.
fn scale_pi(a: Num, r: &Num, col: usize) -> EvalResult<Num> {
    let Some(k) = r.rational() else {
        return Err(EvalError::Parse {
            col,
            msg: "pi may only be scaled by a rational".into(),
        });
    };
    let c = ConstructibleReal::from_rational(k.clone());
    Ok(Num { pi: a.pi * k, s: a.s.scale(&c) })
}

fn div(a: Num, b: Num, col: usize) -> EvalResult<Num> {
    if !b.pi.is_zero() {
        return Err(EvalError::Parse {
            col,
            msg: "division by a multiple of pi".into(),
        });
    }
    if a.pi.is_zero() {
        return Ok(Num::series(a.s.checked_div(&b.s).map_err(math)?));
    }
    match b.rational() {
        Some(k) if !k.is_zero() => {
            let inv = Num::series(SeriesNumber::constant(ConstructibleReal::from_rational(k.recip()), b.s.precision()));
            scale_pi(a, &inv, col)
        }
        _ => Err(EvalError::Parse {
            col,
            msg: "pi may only be divided by a nonzero rational".into(),
        }),
    }
}

/// `x^k` for rational `k` whose denominator is a power of two.
fn power(x: &SeriesNumber, k: Exponent) -> EvalResult<SeriesNumber> {
    let mut d = *k.denom();
    let mut base = x.clone();
    while d > 1 {
        if d % 2 != 0 {
            return Err(math("only exponents with power-of-two denominators are supported"));
        }
        base = base.sqrt().map_err(math)?;
        d /= 2;
    }
    let n = *k.numer();
    if n < 0 {
        base = base.inv().map_err(math)?;
    }
    base.powi(n.abs()).map_err(math)
}

/// Parses and evaluates `src` at the given precision.
pub fn evaluate(src: &str, prec: Precision) -> EvalResult<Value> {
    let toks = tokenize(src)?;
    let end = src.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, end, prec };
    let classify = matches!(p.peek(), Some(Tok::Ident(n)) if n == "classify");
    let v = if classify {
        p.pos += 1;
        p.expect('(')?;
        let v = p.expr()?;
        p.expect(')')?;
        if p.peek().is_some() {
            return p.err("classify(...) must be the whole expression");
        }
        no_pi(&v, 1)?;
        return Ok(Value::Magnitude(v.s.classify().map_err(math)?));
    } else {
        p.expr()?
    };
    if let Some(t) = p.peek() {
        let t = format!("{t:?}");
        return p.err(format!("trailing input {t}"));
    }
    no_pi(&v, 1)?;
    Ok(Value::Series(v.s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str) -> String {
        evaluate(s, Precision::default()).unwrap().to_string()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(eval("classify(e - e^2)"), "Infinitesimal, +");
        assert_eq!(eval("st(3+e)"), "3");
        let g = eval("1/(1+e)");
        assert!(g.starts_with("1 - e + e^2 - e^3"), "{g}");
        assert!(g.ends_with("(O(e^16))"), "{g}");
    }

    #[test]
    fn arithmetic_and_powers() {
        assert_eq!(eval("(1 + e)^2"), "1 + 2*e + e^2");
        assert_eq!(eval("e^(1/2) * e^(1/2)"), "e");
        assert_eq!(eval("e^-1 * e"), "1");
        assert_eq!(eval("inv(e)"), "e^(-1)");
        assert_eq!(eval("sqrt(4*e^2)"), "2*e");
        assert_eq!(eval("0.5 + 1/2"), "1");
        assert_eq!(eval("-3 \u{2212} 1"), "-4");
        assert_eq!(eval("sqrt(2)*sqrt(8)"), "4");
    }

    #[test]
    fn trig_arguments() {
        assert_eq!(eval("sin*(pi/6)"), "1/2");
        assert_eq!(eval("tan*(1/4*pi)"), "1");
        let t = eval("tan*(pi - e)");
        assert!(t.starts_with("-e - 1/3*e^3"), "{t}");
        let s = eval("sin*(e)");
        assert!(s.starts_with("e - 1/6*e^3"), "{s}");
        assert!(matches!(evaluate("sin*(pi/5)", Precision::default()), Err(EvalError::Math(_))));
    }

    #[test]
    fn errors() {
        let p = Precision::default();
        for bad in ["", "1 +", "(1", "foo(2)", "2 $ 3", "pi", "pi*pi", "e^(1/0)", "1 2", "3 + classify(e)"] {
            assert!(evaluate(bad, p).unwrap_err().is_parse(), "{bad}");
        }
        for bad in ["1/0", "sqrt(-1)", "st(1/e)", "e^(1/3)", "inv(0)"] {
            assert!(matches!(evaluate(bad, p), Err(EvalError::Math(_))), "{bad}");
        }
    }

    #[test]
    fn json_forms() {
        let v = evaluate("2*e^(1/2) + 3", Precision::default()).unwrap().to_json();
        assert_eq!(v["validity"], "exact");
        assert_eq!(v["terms"][0]["exponent"], "0");
        assert_eq!(v["terms"][1]["exponent"], "1/2");
        assert_eq!(v["terms"][1]["coefficient"], "2");
        let m = evaluate("classify(-1/e)", Precision::default()).unwrap().to_json();
        assert_eq!(m["class"], "Infinite");
        assert_eq!(m["sign"], "-");
    }
}
