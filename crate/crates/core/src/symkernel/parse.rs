//! Expression grammar shared by scalars, vector fields and one-forms.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-'? base ('^' signed-int)?
//! base   := unsigned-int | name | '@' name | 'd[' name ']' | '(' expr ')'
//! ```
//!
//! `@x` denotes the coordinate vector field of `x` and `d[x]` its
//! differential. Unary minus binds looser than `^`, so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    Int(BigInt),
    Ident(String),
    CoordVector(String),
    Differential(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i64),
}

/// An AST node tagged with the 1-based column where it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub column: usize,
    pub ast: Ast,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    At(String),
    D(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn syntax(column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let ident_at = |start: usize| -> (String, usize) {
        let mut j = start;
        while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
            j += 1;
        }
        (chars[start..j].iter().collect(), j)
    };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            toks.push((t, col));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().collect();
            toks.push((Tok::Int(digits.parse().expect("digits")), col));
            i = j;
            continue;
        }
        if c == '@' {
            if i + 1 >= chars.len() || !chars[i + 1].is_ascii_alphabetic() {
                return Err(syntax(col, "expected coordinate name after '@'"));
            }
            let (name, j) = ident_at(i + 1);
            toks.push((Tok::At(name), col));
            i = j;
            continue;
        }
        if c.is_ascii_alphabetic() {
            if c == 'd' && chars.get(i + 1) == Some(&'[') {
                let mut j = i + 2;
                while j < chars.len() && chars[j].is_whitespace() {
                    j += 1;
                }
                if j >= chars.len() || !chars[j].is_ascii_alphabetic() {
                    return Err(syntax(j + 1, "expected coordinate name inside d[...]"));
                }
                let (name, mut k) = ident_at(j);
                while k < chars.len() && chars[k].is_whitespace() {
                    k += 1;
                }
                if chars.get(k) != Some(&']') {
                    return Err(syntax(k + 1, "expected ']'"));
                }
                toks.push((Tok::D(name), col));
                i = k + 1;
                continue;
            }
            let (name, j) = ident_at(i);
            toks.push((Tok::Ident(name), col));
            i = j;
            continue;
        }
        return Err(syntax(col, format!("unexpected character '{c}'")));
    }
    toks.push((Tok::End, chars.len() + 1));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => Ast::Add as fn(Box<Node>, Box<Node>) -> Ast,
                Tok::Minus => Ast::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let column = lhs.column;
            lhs = Node {
                column,
                ast: op(Box::new(lhs), Box::new(rhs)),
            };
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Tok::Star => Ast::Mul as fn(Box<Node>, Box<Node>) -> Ast,
                Tok::Slash => Ast::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            let column = lhs.column;
            lhs = Node {
                column,
                ast: op(Box::new(lhs), Box::new(rhs)),
            };
        }
    }

    fn factor(&mut self) -> Result<Node> {
        let column = self.column();
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut node = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let negative = if *self.peek() == Tok::Minus {
                self.bump();
                true
            } else {
                false
            };
            let (tok, col) = self.bump();
            let Tok::Int(n) = tok else {
                return Err(syntax(col, "expected integer exponent"));
            };
            let n = if negative { -n } else { n };
            let k = n.to_i64().ok_or(Error::ExponentOverflow)?;
            node = Node {
                column: node.column,
                ast: Ast::Pow(Box::new(node), k),
            };
        }
        if negate {
            node = Node {
                column,
                ast: Ast::Neg(Box::new(node)),
            };
        }
        Ok(node)
    }

    fn base(&mut self) -> Result<Node> {
        let (tok, column) = self.bump();
        let ast = match tok {
            Tok::Int(n) => Ast::Int(n),
            Tok::Ident(s) => Ast::Ident(s),
            Tok::At(s) => Ast::CoordVector(s),
            Tok::D(s) => Ast::Differential(s),
            Tok::LParen => {
                let inner = self.expr()?;
                let (close, col) = self.bump();
                if close != Tok::RParen {
                    return Err(syntax(col, "expected ')'"));
                }
                return Ok(Node { column, ast: inner.ast });
            }
            Tok::End => return Err(syntax(column, "unexpected end of input")),
            other => return Err(syntax(column, format!("unexpected token {}", describe(&other)))),
        };
        Ok(Node { column, ast })
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::RParen => "')'",
        Tok::LParen => "'('",
        _ => "token",
    }
}

/// Parse text into an AST without resolving identifiers.
pub fn parse_ast(text: &str) -> Result<Node> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let node = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.column(), "unexpected trailing input"));
    }
    Ok(node)
}

/// True when the node is a literal zero integer (used to reject `x/0`).
pub(crate) fn is_zero_literal(node: &Node) -> bool {
    matches!(&node.ast, Ast::Int(n) if n.is_zero())
}
