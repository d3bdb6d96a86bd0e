//! Text front-end for elements of `U` and of its dual.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := rational | token | '(' expr ')' | 'exp' '(' expr ')'
//! ```
//!
//! Primal tokens are `Th Ph Ps Q1 Q2 P1 P2 rho lambda exp(..)`, dual tokens
//! are `W[a,b,c] Y[a,b,c,d] x1..x7`; `h1 h2 h3` and numbers go with either.
//! Products keep their written order and are normal-ordered on evaluation;
//! in a dual expression `*` is the undeformed commutative product.

use crate::dual::{commutative_product, DualElement, DualMonomial};
use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::series::{Rational, Series};
use crate::uea::{AlgebraElement, Generator, Uea};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(Rational),
    Hbar(usize),
    Generator(Generator),
    Rho,
    Lambda,
    Exp(Box<Expr>),
    Dual(DualMonomial),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Which side of the pairing an expression lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Scalar,
    Primal,
    Dual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expression {
    pub ast: Expr,
    pub kind: Kind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Bracket(Vec<u32>),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    let digits = |k: &mut usize| {
        let start = *k;
        while *k < chars.len() && chars[*k].1.is_ascii_digit() {
            *k += 1;
        }
        chars[start..*k].iter().map(|c| c.1).collect::<String>()
    };
    while k < chars.len() {
        let (pos, c) = chars[k];
        match c {
            _ if c.is_whitespace() => k += 1,
            '+' | '-' | '*' | '^' | '(' | ')' => {
                out.push((
                    pos,
                    match c {
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '^' => Tok::Caret,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    },
                ));
                k += 1;
            }
            '0'..='9' => {
                let numer = digits(&mut k);
                let mut r = Rational::from_integer(numer.parse().unwrap());
                if k + 1 < chars.len() && chars[k].1 == '/' && chars[k + 1].1.is_ascii_digit() {
                    k += 1;
                    let denom: num_bigint::BigInt = digits(&mut k).parse().unwrap();
                    if num_traits::Zero::is_zero(&denom) {
                        return Err(parse_err(pos, "zero denominator"));
                    }
                    r /= Rational::from_integer(denom);
                }
                out.push((pos, Tok::Num(r)));
            }
            '[' => {
                let close = chars[k..]
                    .iter()
                    .position(|c| c.1 == ']')
                    .ok_or_else(|| parse_err(pos, "unclosed '['"))?;
                let inner: String = chars[k + 1..k + close].iter().map(|c| c.1).collect();
                let parts = inner
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<u32>()
                            .map_err(|_| parse_err(pos, format!("bad index '[{inner}]'")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.push((pos, Tok::Bracket(parts)));
                k += close + 1;
            }
            _ if c.is_ascii_alphabetic() => {
                let start = k;
                while k < chars.len() && chars[k].1.is_ascii_alphanumeric() {
                    k += 1;
                }
                out.push((
                    pos,
                    Tok::Ident(chars[start..k].iter().map(|c| c.1).collect()),
                ));
            }
            _ => return Err(parse_err(pos, format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    primal: Option<usize>,
    dual: Option<usize>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(())
        } else {
            Err(parse_err(self.pos(), format!("expected {what}")))
        }
    }

    fn mark(&mut self, primal: bool, pos: usize) -> Result<()> {
        let slot = if primal {
            &mut self.primal
        } else {
            &mut self.dual
        };
        slot.get_or_insert(pos);
        if self.primal.is_some() && self.dual.is_some() {
            return Err(Error::MixedTokens);
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                Expr::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.at += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) if n.is_integer() => {
                let e = u32::try_from(n.to_integer())
                    .map_err(|_| parse_err(pos, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(parse_err(pos, "exponent must be a natural number")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Expr::Number(n)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => self.ident(&name, pos),
            Some(_) => Err(parse_err(pos, "expected a number, token or '('")),
            None => Err(parse_err(pos, "unexpected end of input")),
        }
    }

    fn ident(&mut self, name: &str, pos: usize) -> Result<Expr> {
        if let Some(g) = Generator::from_token(name) {
            self.mark(true, pos)?;
            return Ok(Expr::Generator(g));
        }
        match name {
            "h1" | "h2" | "h3" => Ok(Expr::Hbar(usize::from(name.as_bytes()[1] - b'0'))),
            "rho" => {
                self.mark(true, pos)?;
                Ok(Expr::Rho)
            }
            "lambda" => {
                self.mark(true, pos)?;
                Ok(Expr::Lambda)
            }
            "exp" => {
                self.mark(true, pos)?;
                self.expect(Tok::LParen, "'(' after exp")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Exp(Box::new(inner)))
            }
            "x1" | "x2" | "x3" | "x4" | "x5" | "x6" | "x7" => {
                self.mark(false, pos)?;
                let k = usize::from(name.as_bytes()[1] - b'0');
                Ok(Expr::Dual(DualMonomial::chi(k)?))
            }
            "W" | "Y" => {
                self.mark(false, pos)?;
                let want = if name == "W" { 3 } else { 4 };
                match self.bump() {
                    Some(Tok::Bracket(v)) if v.len() == want => Ok(Expr::Dual(if want == 3 {
                        DualMonomial::new(MultiIndex([v[0], v[1], v[2]]), MultiIndex::zero())
                    } else {
                        DualMonomial::new(MultiIndex::zero(), MultiIndex([v[0], v[1], v[2], v[3]]))
                    })),
                    _ => Err(parse_err(
                        pos,
                        format!("{name} needs {want} indices in brackets"),
                    )),
                }
            }
            _ => Err(parse_err(pos, format!("unknown token '{name}'"))),
        }
    }
}

/// Parses `text`; fails on syntax errors and on mixing primal and dual tokens.
pub fn parse_expression(text: &str) -> Result<Expression> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        primal: None,
        dual: None,
    };
    let ast = p.expr()?;
    if p.at < p.toks.len() {
        return Err(parse_err(p.pos(), "unexpected trailing input"));
    }
    let kind = match (p.primal, p.dual) {
        (Some(_), None) => Kind::Primal,
        (None, Some(_)) => Kind::Dual,
        _ => Kind::Scalar,
    };
    Ok(Expression { ast, kind })
}

impl Expression {
    /// Evaluates in `u`, normal-ordering every product.
    pub fn to_algebra(&self, u: &Uea) -> Result<AlgebraElement> {
        if self.kind == Kind::Dual {
            return Err(Error::MixedTokens);
        }
        eval_primal(&self.ast, u)
    }

    /// Evaluates as a dual element at truncation `trunc`.
    pub fn to_dual(&self, trunc: u32) -> Result<DualElement> {
        if self.kind == Kind::Primal {
            return Err(Error::MixedTokens);
        }
        eval_dual(&self.ast, trunc)
    }
}

fn eval_primal(e: &Expr, u: &Uea) -> Result<AlgebraElement> {
    Ok(match e {
        Expr::Number(r) => u.rational(r.clone()),
        Expr::Hbar(i) => u.hbar(*i),
        Expr::Generator(g) => u.generator(*g),
        Expr::Rho => u.rho(),
        Expr::Lambda => u.lambda(),
        Expr::Exp(inner) => {
            let arg = eval_primal(inner, u)?;
            u.exp_rho(&rho_multiple(&arg, u)?)
        }
        Expr::Dual(_) => return Err(Error::MixedTokens),
        Expr::Neg(x) => -&eval_primal(x, u)?,
        Expr::Add(a, b) => eval_primal(a, u)?.try_add(&eval_primal(b, u)?)?,
        Expr::Sub(a, b) => eval_primal(a, u)?.try_sub(&eval_primal(b, u)?)?,
        Expr::Mul(a, b) => u.mul(&eval_primal(a, u)?, &eval_primal(b, u)?)?,
        Expr::Pow(a, n) => u.pow(&eval_primal(a, u)?, *n)?,
    })
}

/// The rational `c` with `x = c·ρ`.
fn rho_multiple(x: &AlgebraElement, u: &Uea) -> Result<Rational> {
    let not_multiple = || Error::Parse {
        pos: 0,
        msg: format!("exp() needs a rational multiple of rho, got {x}"),
    };
    if x.is_zero() {
        return Ok(Rational::from_integer(0.into()));
    }
    let c = x
        .coefficient(&Generator::Theta.monomial())
        .coeff_at(&MultiIndex::unit(0))
        .map_err(|_| not_multiple())?;
    if *x == u.rho().scale_rational(&c) {
        Ok(c)
    } else {
        Err(not_multiple())
    }
}

fn eval_dual(e: &Expr, trunc: u32) -> Result<DualElement> {
    let scalar = |s: Series| DualElement::one(trunc).scale(&s);
    Ok(match e {
        Expr::Number(r) => scalar(Series::constant(r.clone(), trunc)),
        Expr::Hbar(i) => scalar(Series::hbar(*i, trunc)),
        Expr::Dual(m) => DualElement::monomial(*m, trunc),
        Expr::Generator(_) | Expr::Rho | Expr::Lambda | Expr::Exp(_) => {
            return Err(Error::MixedTokens)
        }
        Expr::Neg(x) => -&eval_dual(x, trunc)?,
        Expr::Add(a, b) => eval_dual(a, trunc)?.try_add(&eval_dual(b, trunc)?)?,
        Expr::Sub(a, b) => eval_dual(a, trunc)?.try_sub(&eval_dual(b, trunc)?)?,
        Expr::Mul(a, b) => commutative_product(&eval_dual(a, trunc)?, &eval_dual(b, trunc)?)?,
        Expr::Pow(a, n) => {
            let base = eval_dual(a, trunc)?;
            let mut acc = DualElement::one(trunc);
            for _ in 0..*n {
                acc = commutative_product(&acc, &base)?;
            }
            acc
        }
    })
}

/// Parses and evaluates a primal expression in `u`.
pub fn parse_algebra(text: &str, u: &Uea) -> Result<AlgebraElement> {
    parse_expression(text)?.to_algebra(u)
}

/// Parses and evaluates a dual expression.
pub fn parse_dual(text: &str, trunc: u32) -> Result<DualElement> {
    parse_expression(text)?.to_dual(trunc)
}
