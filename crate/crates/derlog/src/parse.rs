//! Plain-text syntax for polynomials and differential operators, and the
//! printers that round-trip through it.
//!
//! Grammar: identifiers are ring variables or `d<var>` partials, literals
//! are integers or integer fractions `p/q`, operators are `+ - * ^` with
//! parentheses; juxtaposition is not multiplication, `*` is mandatory.

use crate::error::{EngineError, Result};
use crate::polyring::{Monomial, Poly, TermOrder};
use crate::weyl::WeylOp;
use num::{BigInt, BigRational, One, Signed};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn error(&self, message: impl Into<String>) -> EngineError {
        EngineError::Parse { line: self.line, col: self.col, message: message.into() }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next_token(&mut self) -> Result<(Token, usize, usize)> {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.bump();
        }
        let (line, col) = (self.line, self.col);
        let c = match self.peek() {
            None => return Ok((Token::End, line, col)),
            Some(c) => c,
        };
        let tok = match c {
            b'+' => {
                self.bump();
                Token::Plus
            }
            b'-' => {
                self.bump();
                Token::Minus
            }
            b'*' => {
                self.bump();
                Token::Star
            }
            b'/' => {
                self.bump();
                Token::Slash
            }
            b'^' => {
                self.bump();
                Token::Caret
            }
            b'(' => {
                self.bump();
                Token::LParen
            }
            b')' => {
                self.bump();
                Token::RParen
            }
            b'0'..=b'9' => {
                let mut digits = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    digits.push(self.bump().unwrap() as char);
                }
                Token::Number(digits.parse().expect("digit string"))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut ident = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    ident.push(self.bump().unwrap() as char);
                }
                Token::Ident(ident)
            }
            other => {
                return Err(self.error(format!("unexpected character {:?}", other as char)));
            }
        };
        Ok((tok, line, col))
    }
}

struct Parser<'a> {
    tokens: Vec<(Token, usize, usize)>,
    pos: usize,
    ctx: Context<'a>,
}

#[derive(Clone, Copy)]
enum Context<'a> {
    Polynomial { vars: &'a [String] },
    Operator { vars: &'a [String] },
}

impl<'a> Context<'a> {
    fn vars(&self) -> &'a [String] {
        match self {
            Context::Polynomial { vars } | Context::Operator { vars } => vars,
        }
    }
}

#[derive(Clone)]
enum Value {
    Poly(Poly),
    Op(WeylOp),
}

impl<'a> Parser<'a> {
    fn new(src: &str, ctx: Context<'a>) -> Result<Self> {
        let mut lexer = Lexer::new(src);
        let mut tokens = Vec::new();
        loop {
            let t = lexer.next_token()?;
            let end = t.0 == Token::End;
            tokens.push(t);
            if end {
                break;
            }
        }
        Ok(Parser { tokens, pos: 0, ctx })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> EngineError {
        let (_, line, col) = self.tokens[self.pos];
        EngineError::Parse { line, col, message: message.into() }
    }

    fn nvars(&self) -> usize {
        self.ctx.vars().len()
    }

    fn value_constant(&self, c: BigRational) -> Value {
        match self.ctx {
            Context::Polynomial { .. } => Value::Poly(Poly::constant(self.nvars(), c)),
            Context::Operator { .. } => Value::Op(WeylOp::constant(self.nvars(), c)),
        }
    }

    fn combine(
        &self,
        a: Value,
        b: Value,
        f_poly: impl Fn(&Poly, &Poly) -> Poly,
        f_op: impl Fn(&WeylOp, &WeylOp) -> WeylOp,
    ) -> Value {
        match (a, b) {
            (Value::Poly(x), Value::Poly(y)) => Value::Poly(f_poly(&x, &y)),
            (Value::Op(x), Value::Op(y)) => Value::Op(f_op(&x, &y)),
            _ => unreachable!("values from one context"),
        }
    }

    fn parse_expr(&mut self) -> Result<Value> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = self.combine(acc, rhs, |a, b| a + b, |a, b| a + b);
                }
                Token::Minus => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = self.combine(acc, rhs, |a, b| a - b, |a, b| a - b);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Value> {
        let mut acc = self.parse_factor()?;
        while *self.peek() == Token::Star {
            self.bump();
            let rhs = self.parse_factor()?;
            acc = self.combine(acc, rhs, |a, b| a * b, |a, b| a * b);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Value> {
        if *self.peek() == Token::Minus {
            self.bump();
            let v = self.parse_factor()?;
            return Ok(match v {
                Value::Poly(p) => Value::Poly(-&p),
                Value::Op(p) => Value::Op(-&p),
            });
        }
        let base = self.parse_primary()?;
        if *self.peek() == Token::Caret {
            self.bump();
            let e = match self.bump() {
                Token::Number(n) => n,
                _ => return Err(self.error_here("expected a nonnegative integer exponent")),
            };
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error_here("exponent out of range"))?;
            return Ok(match base {
                Value::Poly(p) => Value::Poly(p.pow(e)),
                Value::Op(p) => {
                    let mut acc = WeylOp::one(p.nvars());
                    for _ in 0..e {
                        acc = &acc * &p;
                    }
                    Value::Op(acc)
                }
            });
        }
        Ok(base)
    }

    fn parse_primary(&mut self) -> Result<Value> {
        match self.peek().clone() {
            Token::LParen => {
                self.bump();
                let v = self.parse_expr()?;
                if self.bump() != Token::RParen {
                    return Err(self.error_here("expected ')'"));
                }
                Ok(v)
            }
            Token::Number(n) => {
                self.bump();
                // a fraction literal p/q is only recognized between two
                // plain integers
                if *self.peek() == Token::Slash {
                    self.bump();
                    match self.bump() {
                        Token::Number(d) if !num::Zero::is_zero(&d) => {
                            Ok(self.value_constant(BigRational::new(n, d)))
                        }
                        Token::Number(_) => Err(self.error_here("zero denominator")),
                        _ => Err(self.error_here("expected an integer denominator")),
                    }
                } else {
                    Ok(self.value_constant(BigRational::from(n)))
                }
            }
            Token::Ident(name) => {
                self.bump();
                self.resolve_ident(&name)
            }
            Token::Slash => Err(self.error_here("division is only allowed in rational literals")),
            Token::End => Err(self.error_here("unexpected end of input")),
            t => Err(self.error_here(format!("unexpected token {t:?}"))),
        }
    }

    fn resolve_ident(&self, name: &str) -> Result<Value> {
        let vars = self.ctx.vars();
        if let Some(i) = vars.iter().position(|v| v == name) {
            return Ok(match self.ctx {
                Context::Polynomial { .. } => Value::Poly(Poly::var(vars.len(), i)),
                Context::Operator { .. } => Value::Op(WeylOp::coordinate(vars.len(), i)),
            });
        }
        if let Some(rest) = name.strip_prefix('d') {
            if let Some(i) = vars.iter().position(|v| v == rest) {
                return match self.ctx {
                    Context::Polynomial { .. } => Err(self.error_here(format!(
                        "partial symbol `{name}` is not allowed in a polynomial"
                    ))),
                    Context::Operator { .. } => Ok(Value::Op(WeylOp::partial(vars.len(), i))),
                };
            }
        }
        Err(self.error_here(format!("unknown identifier `{name}`")))
    }

    fn finish(mut self) -> Result<Value> {
        let v = self.parse_expr()?;
        if *self.peek() != Token::End {
            return Err(self.error_here("trailing input"));
        }
        Ok(v)
    }
}

/// Parses a polynomial in the given variables.
pub fn parse_poly(src: &str, vars: &[String]) -> Result<Poly> {
    let p = Parser::new(src, Context::Polynomial { vars })?;
    match p.finish()? {
        Value::Poly(p) => Ok(p),
        Value::Op(_) => unreachable!(),
    }
}

/// Parses a differential operator in the given variables; `d<var>` names
/// the corresponding partial.
pub fn parse_operator(src: &str, vars: &[String]) -> Result<WeylOp> {
    let p = Parser::new(src, Context::Operator { vars })?;
    match p.finish()? {
        Value::Op(p) => Ok(p),
        Value::Poly(_) => unreachable!(),
    }
}

pub fn var_names(spec: &str) -> Vec<String> {
    spec.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn push_coeff_monomial(
    out: &mut String,
    coeff: &BigRational,
    factors: &[(String, u32)],
    explicit_star: bool,
) {
    let sep = if explicit_star { "*" } else { " " };
    let abs = coeff.abs();
    let mut parts: Vec<String> = Vec::new();
    if !abs.is_one() || factors.is_empty() {
        parts.push(abs.to_string());
    }
    for (name, e) in factors {
        if *e == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    out.push_str(&parts.join(sep));
}

fn render_terms(terms: Vec<(BigRational, Vec<(String, u32)>)>, explicit_star: bool) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, factors)) in terms.iter().enumerate() {
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        push_coeff_monomial(&mut out, c, factors, explicit_star);
    }
    out
}

fn poly_term_list(p: &Poly, vars: &[String]) -> Vec<(BigRational, Vec<(String, u32)>)> {
    let order = TermOrder::grevlex();
    let mut terms: Vec<(&Monomial, &BigRational)> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
    terms
        .into_iter()
        .map(|(m, c)| {
            let factors: Vec<(String, u32)> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (vars[i].clone(), e))
                .collect();
            (c.clone(), factors)
        })
        .collect()
}

fn op_term_list(p: &WeylOp, vars: &[String]) -> Vec<(BigRational, Vec<(String, u32)>)> {
    let n = vars.len();
    let order = TermOrder::grevlex();
    let mut terms: Vec<(&Monomial, &BigRational)> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
    terms
        .into_iter()
        .map(|(m, c)| {
            let mut factors: Vec<(String, u32)> = Vec::new();
            for (i, &e) in m.0[..n].iter().enumerate() {
                if e > 0 {
                    factors.push((vars[i].clone(), e));
                }
            }
            for (i, &e) in m.0[n..].iter().enumerate() {
                if e > 0 {
                    factors.push((format!("d{}", vars[i]), e));
                }
            }
            (c.clone(), factors)
        })
        .collect()
}

/// Canonical parseable form: `parse_poly(print_poly(p)) == p`.
pub fn print_poly(p: &Poly, vars: &[String]) -> String {
    render_terms(poly_term_list(p, vars), true)
}

/// Canonical parseable form for operators.
pub fn print_operator(p: &WeylOp, vars: &[String]) -> String {
    render_terms(op_term_list(p, vars), true)
}

/// Report-oriented form with spaces instead of `*`, e.g. `x dx + y dy - 2`.
pub fn pretty_poly(p: &Poly, vars: &[String]) -> String {
    render_terms(poly_term_list(p, vars), false)
}

pub fn pretty_operator(p: &WeylOp, vars: &[String]) -> String {
    render_terms(op_term_list(p, vars), false)
}

/// Pretty form wrapped in parentheses when the polynomial has more than
/// one term; used for cofactors and bracket coefficients in reports.
pub fn pretty_poly_atom(p: &Poly, vars: &[String]) -> String {
    let s = pretty_poly(p, vars);
    if p.num_terms() > 1 {
        format!("({s})")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::poly::{int, rat};

    fn vars_xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn vars_xyz() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    #[test]
    fn parse_cusp() {
        let p = parse_poly("x^2 - y^3", &vars_xy()).unwrap();
        let expect = &Poly::var(2, 0).pow(2) - &Poly::var(2, 1).pow(3);
        assert_eq!(p, expect);
    }

    #[test]
    fn parse_surface_product() {
        let p = parse_poly("x*y*(x+y)*(x*z+y)", &vars_xyz()).unwrap();
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let expect = &(&(&x * &y) * &(&x + &y)) * &(&(&x * &z) + &y);
        assert_eq!(p, expect);
    }

    #[test]
    fn parse_operator_euler() {
        let p = parse_operator("x*dx + y*dy", &vars_xy()).unwrap();
        let expect = WeylOp::vector_field(&[Poly::var(2, 0), Poly::var(2, 1)]);
        assert_eq!(p, expect);
    }

    #[test]
    fn parse_rational_literals() {
        let p = parse_poly("3/2*x - 1/4", &vars_xy()).unwrap();
        let expect = &Poly::var(2, 0).scale(&rat(3, 2)) - &Poly::constant(2, rat(1, 4));
        assert_eq!(p, expect);
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_poly("x +* y", &vars_xy()) {
            Err(EngineError::Parse { line: 1, col, .. }) => assert_eq!(col, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_poly("x + w", &vars_xy()),
            Err(EngineError::Parse { .. })
        ));
        assert!(matches!(
            parse_poly("x + dx", &vars_xy()),
            Err(EngineError::Parse { .. })
        ));
        assert!(parse_operator("x + dx", &vars_xy()).is_ok());
    }

    #[test]
    fn print_and_reparse() {
        let p = parse_poly("x^2*y - 3*y + 1/2", &vars_xy()).unwrap();
        let s = print_poly(&p, &vars_xy());
        assert_eq!(parse_poly(&s, &vars_xy()).unwrap(), p);

        let q = parse_operator("x*dx^2 - dy + 5", &vars_xy()).unwrap();
        let s = print_operator(&q, &vars_xy());
        assert_eq!(parse_operator(&s, &vars_xy()).unwrap(), q);
    }

    #[test]
    fn pretty_forms() {
        let vars = vars_xy();
        let euler_minus_two = &WeylOp::vector_field(&[Poly::var(2, 0), Poly::var(2, 1)])
            - &WeylOp::constant(2, int(2));
        assert_eq!(pretty_operator(&euler_minus_two, &vars), "x dx + y dy - 2");
        let a = &Poly::var(2, 0).scale(&int(2)) - &Poly::var(2, 1).scale(&int(3));
        assert_eq!(pretty_poly_atom(&a, &vars), "(2 x - 3 y)");
        assert_eq!(pretty_poly_atom(&Poly::var(2, 0), &vars), "x");
    }
}
