//! Exact arithmetic in the cyclotomic field `Q(ζ_n)`, `ζ = exp(2πi/n)`.
//!
//! Elements are stored as their canonical residue modulo the `n`-th
//! cyclotomic polynomial `Φ_n`, a rational vector of length `φ(n)`. Reducing
//! modulo `Φ_n` rather than `x^n - 1` keeps the quotient a field, so
//! `1/(ζ^l - 1)` exists for every `l ≢ 0`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::rat::{modulo, Rat};

/// `Φ_n`, computed by dividing `x^n - 1` by `Φ_d` for every proper divisor `d | n`.
pub fn cyclotomic_polynomial(n: u32) -> RatPoly {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let mut p = RatPoly::monomial(n as usize).sub(&RatPoly::one());
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = p.div_rem(&cyclotomic_polynomial(d));
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|&k| crate::rat::gcd(k as u64, n as u64) == 1).count() as u32
}

/// Precomputed data for one `Q(ζ_n)`; shared between all its elements.
pub struct CycField {
    n: u32,
    degree: usize,
    modulus: RatPoly,
    /// Coordinates of `ζ^j`, `j` in `0..n`.
    zeta_powers: Vec<Vec<Rat>>,
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.n)
    }
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<CycField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl CycField {
    /// Shared handle to `Q(ζ_n)`; built once per `n` and cached.
    pub fn get(n: u32) -> Arc<CycField> {
        assert!(n >= 1, "root-of-unity order must be positive");
        let mut cache = field_cache().lock().expect("field cache poisoned");
        cache.entry(n).or_insert_with(|| Arc::new(Self::build(n))).clone()
    }

    fn build(n: u32) -> CycField {
        let modulus = cyclotomic_polynomial(n);
        let degree = modulus.degree().expect("cyclotomic polynomial is nonzero");
        let low: Vec<Rat> = modulus.coeffs()[..degree].iter().map(|c| -c).collect();
        // x * (reduced vector), folding the overflow term back through x^degree = low.
        let shift = |v: &[Rat]| -> Vec<Rat> {
            let mut out = vec![Rat::zero(); degree];
            let top = v[degree - 1].clone();
            for i in (1..degree).rev() {
                out[i] = v[i - 1].clone();
            }
            if !top.is_zero() {
                for (o, l) in out.iter_mut().zip(&low) {
                    *o += &(&top * l);
                }
            }
            out
        };
        let mut one = vec![Rat::zero(); degree];
        one[0] = Rat::one();
        let mut zeta_powers = Vec::with_capacity(n as usize);
        let mut cur = one;
        for _ in 0..n {
            let next = shift(&cur);
            zeta_powers.push(cur);
            cur = next;
        }
        CycField { n, degree, modulus, zeta_powers }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    fn reduce(&self, mut wide: Vec<Rat>) -> Vec<Rat> {
        if wide.len() > self.degree {
            for j in (self.degree..wide.len()).rev() {
                let c = std::mem::take(&mut wide[j]);
                if c.is_zero() {
                    continue;
                }
                let row = &self.zeta_powers[j % self.n as usize];
                for (w, r) in wide.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *w += &(&c * r);
                    }
                }
            }
            wide.truncate(self.degree);
        } else {
            wide.resize(self.degree, Rat::zero());
        }
        wide
    }
}

/// An element of `Q(ζ_n)`.
#[derive(Clone)]
pub struct Cyc {
    field: Arc<CycField>,
    coeffs: Vec<Rat>,
}

impl Cyc {
    pub fn zero(n: u32) -> Cyc {
        Self::from_rat(n, Rat::zero())
    }

    pub fn one(n: u32) -> Cyc {
        Self::from_rat(n, Rat::one())
    }

    pub fn from_rat(n: u32, r: Rat) -> Cyc {
        let field = CycField::get(n);
        let mut coeffs = vec![Rat::zero(); field.degree];
        coeffs[0] = r;
        Cyc { field, coeffs }
    }

    pub fn from_int(n: u32, v: i64) -> Cyc {
        Self::from_rat(n, Rat::from_int(v))
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Cyc {
        let field = CycField::get(n);
        let coeffs = field.zeta_powers[modulo(k, n) as usize].clone();
        Cyc { field, coeffs }
    }

    /// Element from coordinates in the power basis `1, ζ, …, ζ^{φ(n)-1}`;
    /// a longer vector is reduced modulo `Φ_n`.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rat>) -> Cyc {
        let field = CycField::get(n);
        let coeffs = field.reduce(coeffs);
        Cyc { field, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.field.n
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rat::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rat(&self) -> Option<&Rat> {
        self.coeffs[1..].iter().all(Rat::is_zero).then(|| &self.coeffs[0])
    }

    fn same_field(&self, other: &Cyc) {
        assert_eq!(
            self.field.n, other.field.n,
            "cyclotomic operands over different orders"
        );
    }

    pub fn scale(&self, r: &Rat) -> Cyc {
        Cyc { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_n`.
    pub fn inv(&self) -> Result<Cyc> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if let Some(r) = self.as_rat() {
            return Ok(Cyc::from_rat(self.order(), r.recip()));
        }
        let a = RatPoly::new(self.coeffs.clone());
        let (g, s, _) = a.ext_gcd(&self.field.modulus);
        // Φ_n is irreducible, so any nonzero residue is coprime to it.
        debug_assert_eq!(g, RatPoly::one());
        Ok(Cyc::from_coeffs(self.order(), s.into_coeffs()))
    }

    pub fn pow(&self, mut e: u64) -> Cyc {
        let mut base = self.clone();
        let mut acc = Cyc::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<Cyc> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Approximate complex value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order() as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
            let t = 2.0 * std::f64::consts::PI * j as f64 / n;
            let c = c.to_f64();
            (re + c * t.cos(), im + c * t.sin())
        })
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coeffs == other.coeffs
    }
}

impl Eq for Cyc {}

impl Hash for Cyc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.coeffs.hash(state);
    }
}

impl<'a> Add<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        self.same_field(rhs);
        Cyc {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        self.same_field(rhs);
        Cyc {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        self.same_field(rhs);
        if let Some(r) = rhs.as_rat() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rat() {
            return rhs.scale(r);
        }
        let d = self.field.degree;
        let mut wide = vec![Rat::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += &(a * b);
                }
            }
        }
        Cyc { field: self.field.clone(), coeffs: self.field.reduce(wide) }
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: &Cyc) -> Cyc {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Cyc> for Cyc {
    fn add_assign(&mut self, rhs: &Cyc) {
        self.same_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Cyc> for Cyc {
    fn sub_assign(&mut self, rhs: &Cyc) {
        self.same_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl fmt::Display for Cyc {
    /// `1/2 - zeta + 3*zeta^2`; rationals print bare.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                _ => write!(f, "{mag}*")?,
            }
            match j {
                0 => {}
                1 => write!(f, "zeta")?,
                _ => write!(f, "zeta^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self, self.field.n)
    }
}

/// Dense polynomial with coefficients in one `Q(ζ_n)`, ascending degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycPoly {
    n: u32,
    coeffs: Vec<Cyc>,
}

impl CycPoly {
    pub fn new(n: u32, mut coeffs: Vec<Cyc>) -> CycPoly {
        while coeffs.last().is_some_and(Cyc::is_zero) {
            coeffs.pop();
        }
        CycPoly { n, coeffs }
    }

    pub fn one(n: u32) -> CycPoly {
        CycPoly { n, coeffs: vec![Cyc::one(n)] }
    }

    /// `x - c`
    pub fn linear_root(c: Cyc) -> CycPoly {
        let n = c.order();
        CycPoly { n, coeffs: vec![-c, Cyc::one(n)] }
    }

    pub fn coeffs(&self) -> &[Cyc] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Cyc> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &CycPoly) -> CycPoly {
        assert_eq!(self.n, other.n);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return CycPoly::new(self.n, Vec::new());
        }
        let mut out = vec![Cyc::zero(self.n); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        CycPoly::new(self.n, out)
    }

    pub fn scale(&self, c: &Cyc) -> CycPoly {
        CycPoly::new(self.n, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Cyc) -> Cyc {
        self.coeffs.iter().rev().fold(Cyc::zero(self.n), |acc, c| &(&acc * x) + c)
    }
}
