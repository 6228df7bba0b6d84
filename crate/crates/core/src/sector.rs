//! The sector rings `K_G(X^m)` with their ordinary product.
//!
//! Sector `m ≠ 0` is `Q(ζ_n)[x_m] / (x_m^n - 1)`; the untwisted sector is
//! `Q(ζ_n)[x_0] / ((x_0 - 1)(x_0^n - 1))`. Elements are kept as the unique
//! representative of degree below the modulus degree, so equality is
//! coefficientwise.

use std::fmt;

use crate::cyclotomic::Cyc;
use crate::display::write_combination;
use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::rat::{modulo, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SectorClass {
    n: u32,
    m: u32,
    poly: Vec<Cyc>,
}

/// Number of coefficients of a reduced representative in sector `m`.
pub fn sector_dim(n: u32, m: u32) -> usize {
    if m == 0 {
        n as usize + 1
    } else {
        n as usize
    }
}

/// `(x - 1)(x^n - 1)` over `Q`, the untwisted-sector modulus.
pub fn untwisted_modulus(n: u32) -> RatPoly {
    RatPoly::from_ints(&[-1, 1]).mul(&RatPoly::monomial(n as usize).sub(&RatPoly::one()))
}

/// Folds a dense coefficient vector of any length into the canonical representative.
fn reduce(n: u32, m: u32, mut wide: Vec<Cyc>) -> Vec<Cyc> {
    let dim = sector_dim(n, m);
    let nu = n as usize;
    if wide.len() <= dim {
        wide.resize(dim, Cyc::zero(n));
        return wide;
    }
    if m != 0 {
        let mut out = vec![Cyc::zero(n); dim];
        for (j, c) in wide.into_iter().enumerate() {
            if !c.is_zero() {
                out[j % nu] += &c;
            }
        }
        return out;
    }
    // x^{n+1} = x^n + x - 1
    for j in (nu + 1..wide.len()).rev() {
        let c = std::mem::replace(&mut wide[j], Cyc::zero(n));
        if c.is_zero() {
            continue;
        }
        wide[j - 1] += &c;
        wide[j - nu] += &c;
        wide[j - nu - 1] -= &c;
    }
    wide.truncate(dim);
    wide
}

fn check_index(n: u32, m: u32) -> Result<()> {
    if m >= n {
        return Err(Error::IndexOutOfRange { what: "sector", index: m as i64, n });
    }
    Ok(())
}

impl SectorClass {
    pub fn zero(n: u32, m: u32) -> SectorClass {
        assert!(m < n, "sector index {m} out of range for n = {n}");
        SectorClass { n, m, poly: vec![Cyc::zero(n); sector_dim(n, m)] }
    }

    /// The identity `1_m`.
    pub fn one(n: u32, m: u32) -> SectorClass {
        let mut s = Self::zero(n, m);
        s.poly[0] = Cyc::one(n);
        s
    }

    /// Reduces a dense ascending coefficient vector of any length.
    pub fn from_coeffs(n: u32, m: u32, coeffs: Vec<Cyc>) -> SectorClass {
        assert!(m < n, "sector index {m} out of range for n = {n}");
        SectorClass { n, m, poly: reduce(n, m, coeffs) }
    }

    pub fn from_rat_coeffs(n: u32, m: u32, coeffs: &[Rat]) -> SectorClass {
        Self::from_coeffs(n, m, coeffs.iter().map(|c| Cyc::from_rat(n, c.clone())).collect())
    }

    /// `x_m^a`; negative exponents go through [`sector_x_inverse`].
    pub fn monomial(n: u32, m: u32, a: i64) -> SectorClass {
        if m != 0 {
            let mut s = Self::zero(n, m);
            s.poly[modulo(a, n) as usize] = Cyc::one(n);
            return s;
        }
        if a >= 0 {
            let mut wide = vec![Cyc::zero(n); a as usize + 1];
            wide[a as usize] = Cyc::one(n);
            return Self::from_coeffs(n, 0, wide);
        }
        sector_x_inverse(n, 0).pow(a.unsigned_abs())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sector(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[Cyc] {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.iter().all(Cyc::is_zero)
    }

    fn assert_same(&self, other: &SectorClass) {
        assert!(
            self.n == other.n && self.m == other.m,
            "sector mismatch: (n={}, m={}) vs (n={}, m={})",
            self.n,
            self.m,
            other.n,
            other.m
        );
    }

    pub fn add(&self, other: &SectorClass) -> SectorClass {
        self.assert_same(other);
        let poly = self.poly.iter().zip(&other.poly).map(|(a, b)| a + b).collect();
        SectorClass { n: self.n, m: self.m, poly }
    }

    pub fn sub(&self, other: &SectorClass) -> SectorClass {
        self.assert_same(other);
        let poly = self.poly.iter().zip(&other.poly).map(|(a, b)| a - b).collect();
        SectorClass { n: self.n, m: self.m, poly }
    }

    pub fn neg(&self) -> SectorClass {
        SectorClass { n: self.n, m: self.m, poly: self.poly.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &Cyc) -> SectorClass {
        SectorClass { n: self.n, m: self.m, poly: self.poly.iter().map(|a| a * c).collect() }
    }

    /// Ordinary product within one sector. Panics on mismatched sectors; see
    /// [`SectorClass::try_mul`].
    pub fn mul(&self, other: &SectorClass) -> SectorClass {
        self.assert_same(other);
        SectorClass::from_coeffs(self.n, self.m, poly_product(self.n, &self.poly, &other.poly))
    }

    pub fn try_mul(&self, other: &SectorClass) -> Result<SectorClass> {
        if self.n != other.n {
            return Err(Error::OrderMismatch(self.n, other.n));
        }
        if self.m != other.m {
            return Err(Error::IndexOutOfRange { what: "sector", index: other.m as i64, n: self.n });
        }
        Ok(self.mul(other))
    }

    pub fn pow(&self, e: u64) -> SectorClass {
        let mut acc = SectorClass::one(self.n, self.m);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Ordinary Adams operation: `x_m ↦ x_m^k`, extended linearly, then reduced.
    pub fn adams(&self, k: u32) -> SectorClass {
        assert!(k >= 1, "Adams operations are indexed by k >= 1");
        let k = k as usize;
        let mut wide = vec![Cyc::zero(self.n); (self.poly.len() - 1) * k + 1];
        for (j, c) in self.poly.iter().enumerate() {
            if !c.is_zero() {
                wide[j * k] = c.clone();
            }
        }
        SectorClass::from_coeffs(self.n, self.m, wide)
    }

    /// Re-labels the same polynomial as a class in sector `target`.
    pub fn transport(&self, target: u32) -> SectorClass {
        SectorClass::from_coeffs(self.n, target, self.poly.clone())
    }

    /// Value of the representative at `x`.
    pub fn eval(&self, x: &Cyc) -> Cyc {
        self.poly.iter().rev().fold(Cyc::zero(self.n), |acc, c| &(&acc * x) + c)
    }

    /// Value of the representative at `ζ^l`.
    pub fn eval_at_root(&self, l: u32) -> Cyc {
        let mut acc = Cyc::zero(self.n);
        for (j, c) in self.poly.iter().enumerate() {
            if !c.is_zero() {
                acc += &(c * &Cyc::zeta_pow(self.n, j as i64 * l as i64));
            }
        }
        acc
    }

    /// `f(1)` for the representative `f`.
    pub fn value_at_one(&self) -> Cyc {
        self.poly.iter().fold(Cyc::zero(self.n), |acc, c| &acc + c)
    }

    /// `f'(1)` for the representative `f`.
    pub fn derivative_at_one(&self) -> Cyc {
        self.poly
            .iter()
            .enumerate()
            .skip(1)
            .fold(Cyc::zero(self.n), |acc, (j, c)| &acc + &c.scale(&Rat::from_int(j as i64)))
    }

    /// `index = j` gives the label of `x_m^j` used by the text format.
    pub fn monomial_label(m: u32, j: usize) -> String {
        match j {
            0 => format!("one[{m}]"),
            1 => format!("x[{m}]"),
            _ => format!("x[{m}]^{j}"),
        }
    }
}

/// Plain polynomial product, unreduced.
pub(crate) fn poly_product(n: u32, a: &[Cyc], b: &[Cyc]) -> Vec<Cyc> {
    let mut out = vec![Cyc::zero(n); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    out
}

/// The class `y` with `y · x_m = 1_m`.
///
/// Twisted sectors give `x_m^{n-1}`; the untwisted sector solves the Bézout
/// identity against `(x_0 - 1)(x_0^n - 1)`, whose constant term is nonzero.
pub fn sector_x_inverse(n: u32, m: u32) -> SectorClass {
    if m != 0 {
        return SectorClass::monomial(n, m, n as i64 - 1);
    }
    let (g, s, _) = RatPoly::monomial(1).ext_gcd(&untwisted_modulus(n));
    debug_assert_eq!(g, RatPoly::one());
    SectorClass::from_rat_coeffs(n, 0, s.coeffs())
}

pub fn checked_x_inverse(n: u32, m: u32) -> Result<SectorClass> {
    check_index(n, m)?;
    Ok(sector_x_inverse(n, m))
}

/// The `j`-th Bott class of `x_m^{-1}`: `Σ_{i=0}^{j-1} x_m^{-i}`.
pub fn bott_class(n: u32, m: u32, j: u32) -> SectorClass {
    assert!(j >= 1, "Bott classes are indexed by j >= 1");
    let inv = sector_x_inverse(n, m);
    let mut term = SectorClass::one(n, m);
    let mut acc = SectorClass::zero(n, m);
    for i in 0..j {
        if i > 0 {
            term = term.mul(&inv);
        }
        acc = acc.add(&term);
    }
    acc
}

impl fmt::Display for SectorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(
            f,
            self.poly.iter().enumerate().map(|(j, c)| (c, SectorClass::monomial_label(self.m, j))),
        )
    }
}

impl fmt::Debug for SectorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SectorClass(n={}, {})", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(n: u32, m: u32, v: &[i64]) -> SectorClass {
        SectorClass::from_rat_coeffs(n, m, &v.iter().map(|&c| Rat::from_int(c)).collect::<Vec<_>>())
    }

    /// Remainder modulo the sector modulus by plain long division over Q.
    fn long_division_oracle(n: u32, m: u32, v: &[i64]) -> SectorClass {
        let modulus = if m == 0 {
            untwisted_modulus(n)
        } else {
            RatPoly::monomial(n as usize).sub(&RatPoly::one())
        };
        let (_, r) = RatPoly::from_ints(v).div_rem(&modulus);
        SectorClass::from_rat_coeffs(n, m, r.coeffs())
    }

    #[test]
    fn twisted_monomials_wrap() {
        for n in 2..6 {
            for m in 1..n {
                let x = SectorClass::monomial(n, m, 1);
                let top = SectorClass::monomial(n, m, n as i64 - 1);
                assert_eq!(top.mul(&x), SectorClass::one(n, m));
            }
        }
    }

    #[test]
    fn untwisted_cube_for_n2() {
        let x = SectorClass::monomial(2, 0, 1);
        let x2 = SectorClass::monomial(2, 0, 2);
        assert_eq!(x2.mul(&x), ints(2, 0, &[-1, 1, 1]));
        assert_eq!(x2.mul(&x), long_division_oracle(2, 0, &[0, 0, 0, 1]));
    }

    #[test]
    fn reduction_matches_long_division() {
        for n in 2..7u32 {
            for m in 0..n {
                for deg in 0..(3 * n as usize + 2) {
                    let v: Vec<i64> = (0..=deg).map(|i| (i as i64 * 7 + 3) % 5 - 2).collect();
                    let wide: Vec<Cyc> = v.iter().map(|&c| Cyc::from_int(n, c)).collect();
                    assert_eq!(
                        SectorClass::from_coeffs(n, m, wide),
                        long_division_oracle(n, m, &v),
                        "n={n} m={m} deg={deg}"
                    );
                }
            }
        }
    }

    #[test]
    fn identity_and_inverse() {
        for n in 2..7 {
            for m in 0..n {
                let one = SectorClass::one(n, m);
                let a = SectorClass::monomial(n, m, 3).add(&SectorClass::monomial(n, m, 1).scale(&Cyc::zeta_pow(n, 1)));
                assert_eq!(one.mul(&a), a);
                let inv = sector_x_inverse(n, m);
                assert_eq!(inv.mul(&SectorClass::monomial(n, m, 1)), one);
                assert_eq!(SectorClass::monomial(n, m, -2).mul(&SectorClass::monomial(n, m, 2)), one);
            }
        }
        assert_eq!(sector_x_inverse(4, 2), SectorClass::monomial(4, 2, 3));
        // x_0^{-1} = 1 + x_0^{n-1} - x_0^n, from x_0 (x_0^n - x_0^{n-1} - 1) = -1 mod the modulus.
        assert_eq!(sector_x_inverse(2, 0), ints(2, 0, &[1, 1, -1]));
        assert!(checked_x_inverse(3, 3).is_err());
    }

    #[test]
    fn ordinary_adams() {
        assert_eq!(SectorClass::one(5, 2).adams(3), SectorClass::one(5, 2));
        assert_eq!(SectorClass::monomial(2, 1, 1).adams(2), SectorClass::one(2, 1));
        let x0 = SectorClass::monomial(2, 0, 1);
        assert_eq!(x0.adams(2), SectorClass::monomial(2, 0, 2));
        // x_0^4 mod (x_0 - 1)(x_0^2 - 1) = 2 x_0^2 - 1
        assert_eq!(SectorClass::monomial(2, 0, 2).adams(2), ints(2, 0, &[-1, 0, 2]));
        assert_eq!(SectorClass::monomial(2, 0, 2).adams(2), long_division_oracle(2, 0, &[0, 0, 0, 0, 1]));
    }

    #[test]
    fn bott_classes() {
        for n in 2..6 {
            for m in 0..n {
                assert_eq!(bott_class(n, m, 1), SectorClass::one(n, m));
                assert_eq!(
                    bott_class(n, m, 2),
                    SectorClass::one(n, m).add(&sector_x_inverse(n, m))
                );
            }
        }
        assert_eq!(bott_class(3, 1, 3), ints(3, 1, &[1, 1, 1]));
    }

    #[test]
    fn commutative_associative_on_monomials() {
        for n in 2..=6u32 {
            for m in 0..n {
                let mono: Vec<_> = (0..=n as i64).map(|a| SectorClass::monomial(n, m, a)).collect();
                for a in &mono {
                    for b in &mono {
                        assert_eq!(a.mul(b), b.mul(a));
                        for c in &mono {
                            assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn adams_composition_on_monomials() {
        for n in 2..=6u32 {
            for m in 0..n {
                for a in 0..=n as i64 {
                    let x = SectorClass::monomial(n, m, a);
                    for k in 1..=6 {
                        for l in 1..=6 {
                            assert_eq!(x.adams(k).adams(l), x.adams(k * l), "n={n} m={m} a={a}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn eval_and_jet() {
        let f = ints(3, 0, &[1, 2, 0, 3]);
        assert_eq!(f.value_at_one(), Cyc::from_int(3, 6));
        assert_eq!(f.derivative_at_one(), Cyc::from_int(3, 11));
        assert_eq!(f.eval_at_root(1), f.eval(&Cyc::zeta_pow(3, 1)));
    }

    #[test]
    fn display_uses_parser_syntax() {
        assert_eq!(ints(3, 1, &[1, 0, -2]).to_string(), "one[1] - 2*x[1]^2");
        assert_eq!(SectorClass::zero(3, 0).to_string(), "0");
    }
}
