//! Evaluation of parsed expressions and their text/JSON rendering.

use std::fmt;

use serde::Serialize;
use thiserror::Error;
use virtual_k::cyclotomic::Cyc;
use virtual_k::error::Error as CoreError;
use virtual_k::line_elements::{u_inverse, LineElt};
use virtual_k::localization::{LocClass, Localization, UClass};
use virtual_k::rat::Rat;
use virtual_k::virtual_ring::{virtual_augmentation, KClass, VirtualRing};

use crate::expr::{parse, Expr, Func, ParseError};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0} is not invertible")]
    NotInvertible(String),
}

/// A value in the ambient space of its expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Cyc),
    Sector(KClass),
    Local(LocClass),
}

/// Output basis for localized values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LocalBasis {
    /// `u` when the expression only names `u`/line-element atoms, `e` otherwise.
    #[default]
    Auto,
    Loc,
    U,
}

/// Rings for one `n`, built once per command.
pub struct Context {
    pub ring: VirtualRing,
    pub loc: Localization,
}

impl Context {
    pub fn new(n: u32) -> Result<Context, EvalError> {
        Ok(Context { ring: VirtualRing::new(n)?, loc: Localization::new(n)? })
    }

    pub fn n(&self) -> u32 {
        self.ring.n()
    }

    pub fn parse_eval(&self, input: &str) -> Result<(Expr, Value), EvalError> {
        let (e, _) = parse(input, self.n())?;
        let v = self.eval(&e)?;
        Ok((e, v))
    }

    fn scalar(&self, e: &Expr) -> Result<Cyc, EvalError> {
        match self.eval(e)? {
            Value::Scalar(c) => Ok(c),
            _ => unreachable!("parser only admits scalar line-element parameters"),
        }
    }

    fn to_sector(&self, v: Value) -> KClass {
        match v {
            Value::Scalar(c) => KClass::one(self.n()).scale(&c),
            Value::Sector(k) => k,
            Value::Local(_) => unreachable!("parser rejects basis mixing"),
        }
    }

    fn to_local(&self, v: Value) -> LocClass {
        match v {
            Value::Scalar(c) => LocClass::one(self.n()).scale(&c),
            Value::Local(l) => l,
            Value::Sector(_) => unreachable!("parser rejects basis mixing"),
        }
    }

    fn binary(
        &self,
        a: Value,
        b: Value,
        scalar: impl Fn(&Cyc, &Cyc) -> Cyc,
        sector: impl Fn(&KClass, &KClass) -> KClass,
        local: impl Fn(&LocClass, &LocClass) -> LocClass,
    ) -> Value {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(scalar(&x, &y)),
            (a @ Value::Sector(_), b) | (a, b @ Value::Sector(_)) => {
                Value::Sector(sector(&self.to_sector(a), &self.to_sector(b)))
            }
            (a, b) => Value::Local(local(&self.to_local(a), &self.to_local(b))),
        }
    }

    fn u(&self, b: UClass) -> Value {
        Value::Local(self.loc.from_u_basis(&b))
    }

    fn line(&self, l: LineElt) -> Value {
        self.u(l.realize())
    }

    pub fn eval(&self, e: &Expr) -> Result<Value, EvalError> {
        let n = self.n();
        Ok(match e {
            Expr::Num(r) => Value::Scalar(Cyc::from_rat(n, r.clone())),
            Expr::Zeta => Value::Scalar(Cyc::zeta_pow(n, 1)),
            Expr::X(m) => Value::Sector(KClass::monomial(n, *m, 1)),
            Expr::One(m) => Value::Sector(KClass::monomial(n, *m, 0)),
            Expr::E(m, l) => Value::Local(LocClass::unit_at(n, *m, *l)),
            Expr::XE => Value::Local(LocClass::x00(n)),
            Expr::U(l, q) => self.u(UClass::u(n, *l, *q)),
            Expr::Sigma(i) => self.line(LineElt::sigma(n, *i)),
            Expr::Nu(j) => self.line(LineElt::nu(n, *j)),
            Expr::Line(f, b) => {
                let beta = b.iter().map(|x| self.scalar(x)).collect::<Result<Vec<_>, _>>()?;
                self.line(LineElt::new(n, f, beta)?)
            }
            Expr::Neg(a) => match self.eval(a)? {
                Value::Scalar(c) => Value::Scalar(-c),
                Value::Sector(k) => Value::Sector(k.neg()),
                Value::Local(l) => Value::Local(l.neg()),
            },
            Expr::Add(a, b) => self.binary(self.eval(a)?, self.eval(b)?, |x, y| x + y, KClass::add, LocClass::add),
            Expr::Sub(a, b) => self.binary(self.eval(a)?, self.eval(b)?, |x, y| x - y, KClass::sub, LocClass::sub),
            Expr::Mul(a, b) => self.binary(
                self.eval(a)?,
                self.eval(b)?,
                |x, y| x * y,
                |x, y| self.ring.mul(x, y),
                |x, y| self.loc.mul(x, y),
            ),
            Expr::Pow(a, k) => self.pow(a, *k)?,
            Expr::Call(func, a) => {
                let v = self.eval(a)?;
                match func {
                    Func::Psi(k) => match v {
                        Value::Scalar(c) => Value::Scalar(c),
                        Value::Sector(x) => Value::Sector(self.ring.adams(&x, *k)),
                        Value::Local(x) => Value::Local(self.loc.adams(&x, *k)),
                    },
                    Func::Eps => match v {
                        Value::Scalar(c) => Value::Scalar(c),
                        Value::Sector(x) => Value::Sector(virtual_augmentation(&x)),
                        Value::Local(x) => {
                            let down = virtual_augmentation(&self.loc.gamma_inverse(&x));
                            Value::Local(self.loc.gamma(&down))
                        }
                    },
                    Func::Gamma => Value::Local(self.loc.gamma(&self.to_sector(v))),
                    Func::GammaInv => Value::Sector(self.loc.gamma_inverse(&self.to_local(v))),
                }
            }
        })
    }

    fn pow(&self, base: &Expr, k: i64) -> Result<Value, EvalError> {
        let n = self.n();
        // Monomials take any integer exponent directly.
        match base {
            Expr::X(m) => return Ok(Value::Sector(KClass::monomial(n, *m, k))),
            Expr::Zeta => return Ok(Value::Scalar(Cyc::zeta_pow(n, k))),
            _ => {}
        }
        let v = self.eval(base)?;
        let e = u32::try_from(k.unsigned_abs()).map_err(|_| CoreError::NotInvertible(format!("exponent {k} too large")))?;
        Ok(match v {
            Value::Scalar(c) => Value::Scalar(c.powi(k)?),
            Value::Sector(x) => {
                let p = if k < 0 { self.sector_inverse(&x).ok_or_else(|| EvalError::NotInvertible(base.to_string()))? } else { x };
                Value::Sector(self.ring.pow(&p, e))
            }
            Value::Local(x) => {
                let p = if k < 0 { self.local_inverse(&x).ok_or_else(|| EvalError::NotInvertible(base.to_string()))? } else { x };
                Value::Local(self.loc.pow(&p, e))
            }
        })
    }

    fn local_inverse(&self, x: &LocClass) -> Option<LocClass> {
        u_inverse(&self.loc.to_u_basis(x)).map(|y| self.loc.from_u_basis(&y))
    }

    fn sector_inverse(&self, x: &KClass) -> Option<KClass> {
        self.local_inverse(&self.loc.gamma(x)).map(|y| self.loc.gamma_inverse(&y))
    }

    /// Renders `v` in the basis chosen by `basis` (with `expr` deciding `Auto`).
    pub fn render(&self, v: &Value, expr: Option<&Expr>, basis: LocalBasis) -> Rendered {
        let n = self.n();
        match v {
            Value::Scalar(c) => Rendered::Sector(KClass::one(n).scale(c)),
            Value::Sector(k) => Rendered::Sector(k.clone()),
            Value::Local(l) => {
                let use_u = match basis {
                    LocalBasis::Auto => expr.is_some_and(Expr::prefers_u_basis),
                    LocalBasis::Loc => false,
                    LocalBasis::U => true,
                };
                if use_u {
                    Rendered::U(self.loc.to_u_basis(l))
                } else {
                    Rendered::Loc(l.clone())
                }
            }
        }
    }
}

/// A value fixed to one output basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rendered {
    Sector(KClass),
    Loc(LocClass),
    U(UClass),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JsonCoeff {
    pub index: usize,
    pub value: Vec<String>,
}

/// `{n, basis, coeffs}` with each coefficient as its rational vector over `Q(ζ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JsonValue {
    pub n: u32,
    pub basis: &'static str,
    pub coeffs: Vec<JsonCoeff>,
}

fn json_coeffs(coords: &[Cyc]) -> Vec<JsonCoeff> {
    coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(index, c)| JsonCoeff { index, value: c.coeffs().iter().map(Rat::to_string).collect() })
        .collect()
}

impl Rendered {
    pub fn to_json(&self) -> JsonValue {
        match self {
            Rendered::Sector(k) => JsonValue { n: k.n(), basis: "sector", coeffs: json_coeffs(&k.coordinates()) },
            Rendered::Loc(l) => JsonValue { n: l.n(), basis: "loc", coeffs: json_coeffs(l.coords()) },
            Rendered::U(u) => JsonValue { n: u.n(), basis: "u", coeffs: json_coeffs(u.coords()) },
        }
    }
}

impl fmt::Display for Rendered {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rendered::Sector(k) => write!(f, "{k}"),
            Rendered::Loc(l) => write!(f, "{l}"),
            Rendered::U(u) => write!(f, "{u}"),
        }
    }
}
