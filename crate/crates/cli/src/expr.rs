//! Expression syntax: lexer, recursive-descent parser and printer.
//!
//! Parsing also validates indices against `n` and rejects expressions that
//! combine sector-basis atoms with localized-basis atoms outside an explicit
//! `gamma(...)` / `gammainv(...)`.

use std::fmt;

use thiserror::Error;
use virtual_k::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Psi(u32),
    Eps,
    Gamma,
    GammaInv,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(Rat),
    Zeta,
    /// `x[m]`
    X(u32),
    /// `one[m]`
    One(u32),
    /// `e[m,l]`
    E(u32, u32),
    /// `xe[0,0]`
    XE,
    /// `u[l,q]`
    U(u32, u32),
    Sigma(u32),
    Nu(u32),
    /// `L(f_0,…,f_{n-1}; b_0,…,b_{n-1})`
    Line(Vec<i64>, Vec<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(Func, Box<Expr>),
}

/// Which space an expression lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// An element of `Q(ζ_n)`; acts as a multiple of the unit anywhere.
    Scalar,
    /// `K(IP(1,n))` in the sector basis.
    Sector,
    /// The localization, in either the `e` or the `u` basis.
    Local,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Scalar => "scalar",
            Kind::Sector => "sector basis",
            Kind::Local => "localized basis",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("index out of range at position {pos}: {msg}")]
    Index { pos: usize, msg: String },
    #[error("basis mixing at position {pos}: cannot combine {left} and {right}; convert with gamma(...) or gammainv(...)")]
    Mixing { pos: usize, left: Kind, right: Kind },
    #[error("type error at position {pos}: {msg}")]
    Type { pos: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rat),
    Int(i64),
    Ident(String),
    Sym(char),
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = input.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let mut is_fraction = false;
            if i + 1 < chars.len() && chars[i].1 == '/' && chars[i + 1].1.is_ascii_digit() {
                is_fraction = true;
                i += 1;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
            }
            let end = chars.get(i).map_or(input.len(), |c| c.0);
            let text = &input[pos..end];
            let syntax = |msg: String| ParseError::Syntax { pos, msg };
            let r: Rat = text.parse().map_err(|e| syntax(format!("bad number `{text}`: {e}")))?;
            if !is_fraction && r.is_integer() {
                match text.parse::<i64>() {
                    Ok(v) => out.push((pos, Tok::Int(v))),
                    Err(_) => out.push((pos, Tok::Num(r))),
                }
            } else {
                out.push((pos, Tok::Num(r)));
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = pos;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let end = chars.get(i).map_or(input.len(), |c| c.0);
            out.push((start, Tok::Ident(input[start..end].to_string())));
        } else if "+-*^()[],;".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    n: u32,
}

type Typed = (Expr, Kind);

fn combine(pos: usize, a: Kind, b: Kind) -> Result<Kind, ParseError> {
    match (a, b) {
        (Kind::Scalar, k) | (k, Kind::Scalar) => Ok(k),
        (x, y) if x == y => Ok(x),
        (left, right) => Err(ParseError::Mixing { pos, left, right }),
    }
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = match self.peek() {
                None => "end of input".to_string(),
                Some(Tok::Sym(s)) => format!("`{s}`"),
                Some(Tok::Ident(s)) => format!("`{s}`"),
                Some(Tok::Int(v)) => format!("`{v}`"),
                Some(Tok::Num(r)) => format!("`{r}`"),
            };
            self.syntax(format!("expected `{c}`, found {found}"))
        }
    }

    /// `-`? integer
    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.i += 1;
                Ok(if neg { -v } else { v })
            }
            _ => self.syntax("expected an integer"),
        }
    }

    fn index(&mut self, what: &'static str) -> Result<u32, ParseError> {
        let pos = self.pos();
        let v = self.signed_int()?;
        let limit = self.n as i64;
        if v < 0 || v >= limit {
            return Err(ParseError::Index { pos, msg: format!("{what} index {v} must lie in 0..{}", limit - 1) });
        }
        Ok(v as u32)
    }

    fn bracket1(&mut self, what: &'static str) -> Result<u32, ParseError> {
        self.expect('[')?;
        let a = self.index(what)?;
        self.expect(']')?;
        Ok(a)
    }

    fn bracket2(&mut self, w1: &'static str, w2: &'static str) -> Result<(u32, u32), ParseError> {
        self.expect('[')?;
        let a = self.index(w1)?;
        self.expect(',')?;
        let b = self.index(w2)?;
        self.expect(']')?;
        Ok((a, b))
    }

    fn expr(&mut self) -> Result<Typed, ParseError> {
        let (mut e, mut k) = self.term()?;
        loop {
            let pos = self.pos();
            let add = if self.eat('+') {
                true
            } else if self.eat('-') {
                false
            } else {
                return Ok((e, k));
            };
            let (r, rk) = self.term()?;
            k = combine(pos, k, rk)?;
            e = if add { Expr::Add(Box::new(e), Box::new(r)) } else { Expr::Sub(Box::new(e), Box::new(r)) };
        }
    }

    fn term(&mut self) -> Result<Typed, ParseError> {
        let (mut e, mut k) = self.unary()?;
        loop {
            let pos = self.pos();
            if !self.eat('*') {
                return Ok((e, k));
            }
            let (r, rk) = self.unary()?;
            k = combine(pos, k, rk)?;
            e = Expr::Mul(Box::new(e), Box::new(r));
        }
    }

    fn unary(&mut self) -> Result<Typed, ParseError> {
        if self.eat('-') {
            let (e, k) = self.unary()?;
            return Ok((Expr::Neg(Box::new(e)), k));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Typed, ParseError> {
        let (base, k) = self.atom()?;
        if self.eat('^') {
            let e = self.signed_int()?;
            if self.peek() == Some(&Tok::Sym('^')) {
                return self.syntax("chained exponents need parentheses");
            }
            return Ok((Expr::Pow(Box::new(base), e), k));
        }
        Ok((base, k))
    }

    fn call_arg(&mut self) -> Result<(usize, Typed), ParseError> {
        self.expect('(')?;
        let pos = self.pos();
        let inner = self.expr()?;
        self.expect(')')?;
        Ok((pos, inner))
    }

    fn atom(&mut self) -> Result<Typed, ParseError> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return self.syntax("unexpected end of input");
        };
        self.i += 1;
        match tok {
            Tok::Int(v) => Ok((Expr::Num(Rat::from_int(v)), Kind::Scalar)),
            Tok::Num(r) => Ok((Expr::Num(r), Kind::Scalar)),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Sym(c) => {
                self.i -= 1;
                self.syntax(format!("unexpected `{c}`"))
            }
            Tok::Ident(name) => match name.as_str() {
                "zeta" => Ok((Expr::Zeta, Kind::Scalar)),
                "x" => Ok((Expr::X(self.bracket1("sector")?), Kind::Sector)),
                "one" => Ok((Expr::One(self.bracket1("sector")?), Kind::Sector)),
                "e" => {
                    let (m, l) = self.bracket2("sector", "root")?;
                    Ok((Expr::E(m, l), Kind::Local))
                }
                "xe" => {
                    let ipos = self.pos();
                    let (m, l) = self.bracket2("sector", "root")?;
                    if (m, l) != (0, 0) {
                        return Err(ParseError::Index { pos: ipos, msg: "xe exists only as xe[0,0]".into() });
                    }
                    Ok((Expr::XE, Kind::Local))
                }
                "u" => {
                    let (l, q) = self.bracket2("root", "sector")?;
                    Ok((Expr::U(l, q), Kind::Local))
                }
                "sigma" => Ok((Expr::Sigma(self.bracket1("sigma")?), Kind::Local)),
                "nu" => Ok((Expr::Nu(self.bracket1("nu")?), Kind::Local)),
                "L" => self.line(pos),
                "psi" => {
                    self.expect('[')?;
                    let kpos = self.pos();
                    let k = self.signed_int()?;
                    if k < 1 || k > u32::MAX as i64 {
                        return Err(ParseError::Index { pos: kpos, msg: format!("Adams index must be at least 1, got {k}") });
                    }
                    self.expect(']')?;
                    let (_, (e, kind)) = self.call_arg()?;
                    Ok((Expr::Call(Func::Psi(k as u32), Box::new(e)), kind))
                }
                "eps" => {
                    let (_, (e, kind)) = self.call_arg()?;
                    Ok((Expr::Call(Func::Eps, Box::new(e)), kind))
                }
                "gamma" => {
                    let (apos, (e, kind)) = self.call_arg()?;
                    if kind == Kind::Local {
                        return Err(ParseError::Type { pos: apos, msg: "gamma expects a sector-basis argument".into() });
                    }
                    Ok((Expr::Call(Func::Gamma, Box::new(e)), Kind::Local))
                }
                "gammainv" => {
                    let (apos, (e, kind)) = self.call_arg()?;
                    if kind == Kind::Sector {
                        return Err(ParseError::Type { pos: apos, msg: "gammainv expects a localized argument".into() });
                    }
                    Ok((Expr::Call(Func::GammaInv, Box::new(e)), Kind::Sector))
                }
                _ => Err(ParseError::Syntax { pos, msg: format!("unknown name `{name}`") }),
            },
        }
    }

    fn line(&mut self, pos: usize) -> Result<Typed, ParseError> {
        self.expect('(')?;
        let mut f = vec![self.signed_int()?];
        while self.eat(',') {
            f.push(self.signed_int()?);
        }
        self.expect(';')?;
        let mut beta = Vec::new();
        loop {
            let bpos = self.pos();
            let (b, kind) = self.expr()?;
            if kind != Kind::Scalar {
                return Err(ParseError::Type { pos: bpos, msg: "line-element parameters must be scalars".into() });
            }
            beta.push(b);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        let n = self.n as usize;
        if f.len() != n || beta.len() != n {
            return Err(ParseError::Index {
                pos,
                msg: format!("L needs {n} exponents and {n} scalars, got {} and {}", f.len(), beta.len()),
            });
        }
        Ok((Expr::Line(f, beta), Kind::Local))
    }
}

/// Parses and type-checks `input` for the given `n`.
pub fn parse(input: &str, n: u32) -> Result<(Expr, Kind), ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, i: 0, end: input.len(), n };
    let out = p.expr()?;
    if p.i != p.toks.len() {
        return p.syntax("unexpected trailing input");
    }
    Ok(out)
}

impl Expr {
    /// Whether the expression names only `u`-basis or line-element atoms among
    /// its localized atoms, so `u` is the natural output basis. `e[0,0]` is a
    /// member of both bases and does not count either way.
    pub fn prefers_u_basis(&self) -> bool {
        let mut has_u = false;
        let mut has_e = false;
        self.visit(&mut |e| match e {
            Expr::U(..) | Expr::Sigma(_) | Expr::Nu(_) | Expr::Line(..) => has_u = true,
            Expr::E(0, 0) => {}
            Expr::E(..) | Expr::XE => has_e = true,
            _ => {}
        });
        has_u && !has_e
    }

    fn visit(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Line(_, b) => b.iter().for_each(|x| x.visit(f)),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.visit(f),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(r) => write!(f, "{r}"),
            Expr::Zeta => write!(f, "zeta"),
            Expr::X(m) => write!(f, "x[{m}]"),
            Expr::One(m) => write!(f, "one[{m}]"),
            Expr::E(m, l) => write!(f, "e[{m},{l}]"),
            Expr::XE => write!(f, "xe[0,0]"),
            Expr::U(l, q) => write!(f, "u[{l},{q}]"),
            Expr::Sigma(i) => write!(f, "sigma[{i}]"),
            Expr::Nu(j) => write!(f, "nu[{j}]"),
            Expr::Line(fs, bs) => {
                let fs: Vec<String> = fs.iter().map(i64::to_string).collect();
                write!(f, "L({}; ", fs.join(","))?;
                for (i, b) in bs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    b.fmt_at(f, 0)?;
                }
                write!(f, ")")
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_at(f, 3)
            }
            Expr::Add(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " + ")?;
                b.fmt_at(f, 2)
            }
            Expr::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " - ")?;
                b.fmt_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "*")?;
                b.fmt_at(f, 3)
            }
            Expr::Pow(a, e) => {
                a.fmt_at(f, 5)?;
                write!(f, "^{e}")
            }
            Expr::Call(func, a) => {
                match func {
                    Func::Psi(k) => write!(f, "psi[{k}]")?,
                    Func::Eps => write!(f, "eps")?,
                    Func::Gamma => write!(f, "gamma")?,
                    Func::GammaInv => write!(f, "gammainv")?,
                }
                write!(f, "(")?;
                a.fmt_at(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(s: &str, n: u32) -> (Expr, Kind) {
        parse(s, n).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn precedence_and_associativity() {
        let (e, _) = ok("1 - 2 - 3", 2);
        assert_eq!(e.to_string(), "1 - 2 - 3");
        assert!(matches!(e, Expr::Sub(ref a, _) if matches!(**a, Expr::Sub(..))));
        let (e, _) = ok("2*x[1]^-1 + one[0]", 3);
        assert!(matches!(e, Expr::Add(ref a, _) if matches!(**a, Expr::Mul(_, ref p) if matches!(**p, Expr::Pow(_, -1)))));
        let (e, _) = ok("-x[0]^2", 2);
        assert!(matches!(e, Expr::Neg(ref p) if matches!(**p, Expr::Pow(..))));
    }

    #[test]
    fn kinds() {
        assert_eq!(ok("zeta^2 + 1/2", 3).1, Kind::Scalar);
        assert_eq!(ok("one[0] + 2*x[1]^-1", 3).1, Kind::Sector);
        assert_eq!(ok("u[1,0]*u[1,0]", 2).1, Kind::Local);
        assert_eq!(ok("gamma(x[0]) + e[0,1]", 2).1, Kind::Local);
        assert_eq!(ok("gammainv(e[0,1]) * x[1]", 2).1, Kind::Sector);
        assert_eq!(ok("L(1,0; 0, 1/2 - zeta)", 2).1, Kind::Local);
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("x[0] + e[0,1]", 2), Err(ParseError::Mixing { pos: 5, .. })));
        assert!(matches!(parse("x[3]", 3), Err(ParseError::Index { pos: 2, .. })));
        assert!(matches!(parse("e[0,0] + ", 2), Err(ParseError::Syntax { pos: 9, .. })));
        assert!(matches!(parse("x[0] $", 2), Err(ParseError::Syntax { pos: 5, .. })));
        assert!(matches!(parse("xe[1,0]", 2), Err(ParseError::Index { .. })));
        assert!(matches!(parse("L(1;0)", 2), Err(ParseError::Index { .. })));
        assert!(matches!(parse("gamma(e[0,0])", 2), Err(ParseError::Type { .. })));
        assert!(matches!(parse("psi[0](x[0])", 2), Err(ParseError::Index { .. })));
        assert!(matches!(parse("L(1,0; x[0], 0)", 2), Err(ParseError::Type { .. })));
        assert!(matches!(parse("frob[1]", 2), Err(ParseError::Syntax { pos: 0, .. })));
    }

    #[test]
    fn round_trip() {
        let corpus = [
            "one[0] + 2*x[1]^-1",
            "u[1,0]*u[1,0]",
            "L(1,0; 0,0)",
            "psi[2](xe[0,0])",
            "gamma(one[0])",
            "eps(x[0]^3)",
            "-(x[0] - one[0])^2*x[1]",
            "1/2*e[0,0] - (1/3 - zeta)*e[1,1] + -e[0,1]",
            "gammainv(sigma[1]^-1*nu[0]) - x[1]*x[1]",
            "L(0,-1; 1/2 + zeta^3, -2)",
            "2 - (3 - 4) - -5",
            "zeta^-1*(u[0,1] + u[1,1])^3",
        ];
        for s in corpus {
            let (e, k) = ok(s, 2);
            let printed = e.to_string();
            let (again, k2) = ok(&printed, 2);
            assert_eq!(again, e, "{s} -> {printed}");
            assert_eq!(k, k2);
        }
    }

    #[test]
    fn prefers_u() {
        assert!(ok("u[1,0] + sigma[0]", 2).0.prefers_u_basis());
        assert!(!ok("u[1,0] + e[0,1]", 2).0.prefers_u_basis());
        assert!(!ok("gamma(x[0])", 2).0.prefers_u_basis());
        assert!(ok("e[0,0] - u[1,0]", 2).0.prefers_u_basis());
        assert!(!ok("e[0,0]", 2).0.prefers_u_basis());
    }
}
