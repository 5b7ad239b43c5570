use super::{BinOp, Expr, Func, Variable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            let col = i + 1;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() || c == '.' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &lx.src[start..i];
                let v: f64 = text.parse().map_err(|_| Error::Parse {
                    column: col,
                    message: format!("malformed number `{text}`"),
                })?;
                lx.toks.push((Tok::Num(v), col));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                lx.toks.push((Tok::Ident(lx.src[start..i].to_string()), col));
            } else if "+-*/^".contains(c) {
                lx.toks.push((Tok::Op(c), col));
                i += 1;
            } else if c == '(' {
                lx.toks.push((Tok::LParen, col));
                i += 1;
            } else if c == ')' {
                lx.toks.push((Tok::RParen, col));
                i += 1;
            } else {
                let ch = src[i..].chars().next().unwrap_or(c);
                return Err(Error::Parse { column: col, message: format!("unexpected character `{ch}`") });
            }
        }
        lx.toks.push((Tok::End, src.len() + 1));
        Ok(lx.toks)
    }
}

pub(super) struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    pub(super) fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { toks: Lexer::run(src)?, pos: 0 };
        let e = p.sum()?;
        match p.peek() {
            Tok::End => Ok(e),
            other => Err(p.error(format!("unexpected {}", describe(other)))),
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn error(&self, message: String) -> Error {
        Error::Parse { column: self.column(), message }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if let Tok::Op('^') = self.peek() {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        let col = self.column();
        match self.bump() {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::LParen => {
                let e = self.sum()?;
                self.expect_rparen(col)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let func = match name.as_str() {
                    "x" => return Ok(Expr::Var(Variable::X)),
                    "t" => return Ok(Expr::Var(Variable::T)),
                    "pi" => return Ok(Expr::Num(std::f64::consts::PI)),
                    "e" => return Ok(Expr::Num(std::f64::consts::E)),
                    "exp" => Func::Exp,
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    _ => {
                        return Err(Error::Parse { column: col, message: format!("unknown name `{name}`") });
                    }
                };
                if *self.peek() != Tok::LParen {
                    return Err(self.error(format!("expected `(` after `{name}`")));
                }
                let open = self.column();
                self.bump();
                let arg = self.sum()?;
                self.expect_rparen(open)?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
            other => Err(Error::Parse { column: col, message: format!("expected a value, found {}", describe(&other)) }),
        }
    }

    fn expect_rparen(&mut self, open: usize) -> Result<()> {
        if *self.peek() == Tok::RParen {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected `)` to close `(` at column {open}")))
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("number {v}"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Op(c) => format!("`{c}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}
