//! Localization of `K(IP(1,n))` at the maximal ideals `⟨x - ζ^l⟩`.
//!
//! `Γ` sends a class to its localizations `𝒦 = ⊕_l 𝒦_l`. Every block is one
//! dimensional (`I_{ml} = ⟨x_{ml} - ζ^l⟩`) except block `(0,0)`, where
//! `I_{00} = ⟨(x_{00} - 1)²⟩` leaves the span of `1_{00}` and `x_{00}`.
//!
//! Two coordinate systems are provided:
//!
//! * [`LocClass`]: `1_{00}, x_{00}` and `1_{ml}` for `(m,l) ≠ (0,0)`;
//! * [`UClass`]: `1_{00}` and the semisimple elements `u_l^q`, where
//!   `u_0^0 = x_{00} - 1_{00}`, `u_0^m = 1_{m0}` and, for `l ≠ 0`,
//!   `u_l^q = (1/n) Σ_i ζ^{-iq} 1̂_{il}` with `1̂_{il} = 1_{il}/(1 - ζ^{-l})`
//!   for `i ≠ 0` and `1̂_{0l} = 1_{0l}`.
//!
//! In the `u`-basis the product is diagonal: `u_l^q` are orthogonal
//! idempotents for `l ≠ 0`, the `u_0^q` square to zero, and `1_{00}` is the
//! unit of the `l = 0` row.

use std::fmt;

use crate::cyclotomic::{Cyc, CycPoly};
use crate::display::write_combination;
use crate::error::{check_order, Error, Result};
use crate::rat::{gcd, Rat};
use crate::sector::SectorClass;
use crate::virtual_ring::KClass;

/// Solutions `s` of `k·s ≡ l (mod n)` in ascending order (so `s_1 = 0` when `l = 0`).
pub fn adams_solutions(n: u32, k: u32, l: u32) -> Vec<u32> {
    (0..n).filter(|&s| (k as u64 * s as u64) % n as u64 == l as u64 % n as u64).collect()
}

macro_rules! coordinate_vector {
    ($name:ident, $labels:path) => {
        impl $name {
            pub fn zero(n: u32) -> $name {
                $name { n, coords: vec![Cyc::zero(n); (n * n + 1) as usize] }
            }

            pub fn basis(n: u32, index: usize) -> $name {
                let mut v = Self::zero(n);
                v.coords[index] = Cyc::one(n);
                v
            }

            /// All `n² + 1` basis vectors, in coordinate order.
            pub fn basis_vectors(n: u32) -> Vec<$name> {
                (0..(n * n + 1) as usize).map(|i| Self::basis(n, i)).collect()
            }

            pub fn from_coords(n: u32, coords: Vec<Cyc>) -> $name {
                assert_eq!(coords.len(), (n * n + 1) as usize, "wrong dimension");
                $name { n, coords }
            }

            pub fn n(&self) -> u32 {
                self.n
            }

            pub fn coords(&self) -> &[Cyc] {
                &self.coords
            }

            pub fn coord(&self, index: usize) -> &Cyc {
                &self.coords[index]
            }

            pub fn is_zero(&self) -> bool {
                self.coords.iter().all(Cyc::is_zero)
            }

            pub fn add(&self, other: &$name) -> $name {
                assert_eq!(self.n, other.n);
                $name { n: self.n, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
            }

            pub fn sub(&self, other: &$name) -> $name {
                assert_eq!(self.n, other.n);
                $name { n: self.n, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
            }

            pub fn neg(&self) -> $name {
                $name { n: self.n, coords: self.coords.iter().map(|a| -a).collect() }
            }

            pub fn scale(&self, c: &Cyc) -> $name {
                $name { n: self.n, coords: self.coords.iter().map(|a| a * c).collect() }
            }

            /// Label of coordinate `index` in the text format.
            pub fn label(n: u32, index: usize) -> String {
                $labels(n, index)
            }

            /// Nonzero coordinates with their labels, in coordinate order.
            pub fn terms(&self) -> Vec<(String, Cyc)> {
                self.coords
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| ($labels(self.n, i), c.clone()))
                    .collect()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_combination(f, self.coords.iter().enumerate().map(|(i, c)| (c, $labels(self.n, i))))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}(n={}, {})", stringify!($name), self.n, self)
            }
        }
    };
}

/// Coordinates on `𝒦` in the basis `1_{00}, x_{00}, 1_{ml}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocClass {
    n: u32,
    coords: Vec<Cyc>,
}

/// Coordinates on `𝒦` in the basis `1_{00}, u_l^q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UClass {
    n: u32,
    coords: Vec<Cyc>,
}

/// Index layout shared by both bases: slot `0` is `1_{00}`, slot `1 + a·n + b`
/// is `(a, b)`: `x_{00}` / `1_{ab}` for [`LocClass`], `u_a^b` for [`UClass`].
pub const UNIT00: usize = 0;
pub const X00: usize = 1;

pub fn loc_index(n: u32, m: u32, l: u32) -> usize {
    assert!(m < n && l < n, "localized index out of range");
    if m == 0 && l == 0 {
        UNIT00
    } else {
        1 + (m * n + l) as usize
    }
}

pub fn u_index(n: u32, l: u32, q: u32) -> usize {
    assert!(l < n && q < n, "u index out of range");
    1 + (l * n + q) as usize
}

/// Inverse of [`loc_index`]: `None` for `x_{00}`.
pub fn loc_pair(n: u32, index: usize) -> Option<(u32, u32)> {
    match index {
        UNIT00 => Some((0, 0)),
        X00 => None,
        i => Some((((i - 1) as u32) / n, ((i - 1) as u32) % n)),
    }
}

pub fn u_pair(n: u32, index: usize) -> Option<(u32, u32)> {
    match index {
        UNIT00 => None,
        i => Some((((i - 1) as u32) / n, ((i - 1) as u32) % n)),
    }
}

fn loc_label(n: u32, index: usize) -> String {
    match loc_pair(n, index) {
        None => "xe[0,0]".to_string(),
        Some((m, l)) => format!("e[{m},{l}]"),
    }
}

fn u_label(n: u32, index: usize) -> String {
    match u_pair(n, index) {
        None => "e[0,0]".to_string(),
        Some((l, q)) => format!("u[{l},{q}]"),
    }
}

coordinate_vector!(LocClass, loc_label);
coordinate_vector!(UClass, u_label);

impl LocClass {
    pub fn get(&self, m: u32, l: u32) -> &Cyc {
        &self.coords[loc_index(self.n, m, l)]
    }

    /// `1_{ml}`
    pub fn unit_at(n: u32, m: u32, l: u32) -> LocClass {
        Self::basis(n, loc_index(n, m, l))
    }

    pub fn x00(n: u32) -> LocClass {
        Self::basis(n, X00)
    }

    /// The unit `1 = Σ_l 1_{0l}`.
    pub fn one(n: u32) -> LocClass {
        (0..n).fold(Self::zero(n), |acc, l| acc.add(&Self::unit_at(n, 0, l)))
    }
}

impl UClass {
    pub fn u(n: u32, l: u32, q: u32) -> UClass {
        Self::basis(n, u_index(n, l, q))
    }

    pub fn unit00(n: u32) -> UClass {
        Self::basis(n, UNIT00)
    }

    pub fn get(&self, l: u32, q: u32) -> &Cyc {
        &self.coords[u_index(self.n, l, q)]
    }

    /// The unit `1 = 1_{00} + Σ_{l≠0} Σ_q u_l^q`.
    pub fn one(n: u32) -> UClass {
        let mut v = Self::unit00(n);
        for l in 1..n {
            for q in 0..n {
                v.coords[u_index(n, l, q)] = Cyc::one(n);
            }
        }
        v
    }

    /// The diagonal product of the semisimple basis.
    pub fn mul(&self, other: &UClass) -> UClass {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let (a, b) = (&self.coords[UNIT00], &other.coords[UNIT00]);
        let mut out = UClass::zero(n);
        out.coords[UNIT00] = a * b;
        for q in 0..n {
            let i = u_index(n, 0, q);
            out.coords[i] = &(a * &other.coords[i]) + &(b * &self.coords[i]);
        }
        for l in 1..n {
            for q in 0..n {
                let i = u_index(n, l, q);
                out.coords[i] = &self.coords[i] * &other.coords[i];
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> UClass {
        (0..e).fold(UClass::one(self.n), |acc, _| acc.mul(self))
    }
}

/// `Γ`, `Γ⁻¹`, the localized product and Adams operations for one `n`.
///
/// Construction precomputes `Γ⁻¹` of every basis vector from the closed
/// forms, so repeated conversions cost only linear combinations.
#[derive(Clone, Debug)]
pub struct Localization {
    n: u32,
    inverse_images: Vec<KClass>,
}

/// `Π_{i≠l} (x - ζ^i)`, the expansion of `(x^n - 1)/(x - ζ^l)`.
fn punctured_product(n: u32, l: u32) -> CycPoly {
    (0..n)
        .filter(|&i| i != l)
        .fold(CycPoly::one(n), |acc, i| acc.mul(&CycPoly::linear_root(Cyc::zeta_pow(n, i as i64))))
}

impl Localization {
    pub fn new(n: u32) -> Result<Localization> {
        check_order(n)?;
        let inverse_images = (0..(n * n + 1) as usize).map(|i| closed_form_inverse(n, i)).collect();
        Ok(Localization { n, inverse_images })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `Γ⁻¹` of basis vector `index` in [`LocClass`] coordinates.
    pub fn inverse_image(&self, index: usize) -> &KClass {
        &self.inverse_images[index]
    }

    /// `Γ`: evaluate each sector at every `ζ^l`; block `(0,0)` keeps the
    /// 2-jet at `1` written as `f(1) - f'(1)` on `1_{00}` plus `f'(1)` on `x_{00}`.
    pub fn gamma(&self, a: &KClass) -> LocClass {
        assert_eq!(a.n(), self.n);
        let n = self.n;
        let mut out = LocClass::zero(n);
        for m in 0..n {
            let s = a.sector(m);
            if s.is_zero() {
                continue;
            }
            for l in 0..n {
                if m == 0 && l == 0 {
                    let value = s.value_at_one();
                    let slope = s.derivative_at_one();
                    out.coords[UNIT00] = &value - &slope;
                    out.coords[X00] = slope;
                } else {
                    out.coords[loc_index(n, m, l)] = s.eval_at_root(l);
                }
            }
        }
        out
    }

    /// `Γ⁻¹` as the linear extension of the closed forms.
    pub fn gamma_inverse(&self, b: &LocClass) -> KClass {
        assert_eq!(b.n(), self.n);
        b.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(KClass::zero(self.n), |acc, (i, c)| {
            acc.add(&self.inverse_images[i].scale(c))
        })
    }

    /// Product of two basis vectors, straight from the multiplication table.
    pub fn basis_product(&self, i: usize, j: usize) -> LocClass {
        let n = self.n;
        let mut out = LocClass::zero(n);
        let mut put = |idx: usize, c: Cyc| out.coords[idx] += &c;
        let one = Cyc::one(n);
        match (loc_pair(n, i), loc_pair(n, j)) {
            // x_{00} * x_{00} = 2x_{00} - 1_{00}
            (None, None) => {
                put(X00, Cyc::from_int(n, 2));
                put(UNIT00, Cyc::from_int(n, -1));
            }
            // x_{00} * 1_{m0} = 1_{m0}; x_{00} * 1_{ml} = 0 for l ≠ 0
            (None, Some((m, l))) | (Some((m, l)), None) => {
                if l == 0 {
                    let target = if m == 0 { X00 } else { loc_index(n, m, 0) };
                    put(target, one);
                }
            }
            (Some((m1, l1)), Some((m2, l2))) => {
                if l1 != l2 {
                    return out;
                }
                let l = l1;
                if m1 == 0 || m2 == 0 {
                    // 1_{0l} is the identity of row l.
                    put(loc_index(n, m1 + m2, l), one);
                } else if l == 0 {
                    // 1_{m₁0} * 1_{m₂0} = 0
                } else {
                    let w = &one - &Cyc::zeta_pow(n, -(l as i64));
                    if m1 + m2 == n {
                        put(loc_index(n, 0, l), &w * &w);
                    } else {
                        put(loc_index(n, (m1 + m2) % n, l), w);
                    }
                }
            }
        }
        out
    }

    /// The localized virtual product: bilinear in the table of [`Localization::basis_product`],
    /// evaluated row by row.
    pub fn mul(&self, a: &LocClass, b: &LocClass) -> LocClass {
        assert_eq!(a.n(), self.n);
        assert_eq!(b.n(), self.n);
        let n = self.n;
        let mut out = LocClass::zero(n);
        // Row 0: c·1_{00} + d·x_{00} + Σ t_m 1_{m0}.
        let (c, d) = (&a.coords[UNIT00], &a.coords[X00]);
        let (c2, d2) = (&b.coords[UNIT00], &b.coords[X00]);
        let dd = d * d2;
        out.coords[UNIT00] = &(c * c2) - &dd;
        out.coords[X00] = &(&(c * d2) + &(d * c2)) + &(&dd + &dd);
        let (s, s2) = (c + d, c2 + d2);
        for m in 1..n {
            let i = loc_index(n, m, 0);
            out.coords[i] = &(&s * &b.coords[i]) + &(&s2 * &a.coords[i]);
        }
        // Rows l ≠ 0: a twisted group ring on the sector index.
        for l in 1..n {
            let w = &Cyc::one(n) - &Cyc::zeta_pow(n, -(l as i64));
            let w2 = &w * &w;
            for m1 in 0..n {
                let x = &a.coords[loc_index(n, m1, l)];
                if x.is_zero() {
                    continue;
                }
                for m2 in 0..n {
                    let y = &b.coords[loc_index(n, m2, l)];
                    if y.is_zero() {
                        continue;
                    }
                    let xy = x * y;
                    let t = loc_index(n, (m1 + m2) % n, l);
                    let term = if m1 == 0 || m2 == 0 {
                        xy
                    } else if m1 + m2 == n {
                        &xy * &w2
                    } else {
                        &xy * &w
                    };
                    out.coords[t] += &term;
                }
            }
        }
        out
    }

    pub fn try_mul(&self, a: &LocClass, b: &LocClass) -> Result<LocClass> {
        for v in [a, b] {
            if v.n() != self.n {
                return Err(Error::OrderMismatch(self.n, v.n()));
            }
        }
        Ok(self.mul(a, b))
    }

    pub fn pow(&self, a: &LocClass, e: u32) -> LocClass {
        (0..e).fold(LocClass::one(self.n), |acc, _| self.mul(&acc, a))
    }

    /// `ψ̃^k` of one basis vector, from the closed forms.
    pub fn basis_adams(&self, index: usize, k: u32) -> LocClass {
        assert!(k >= 1, "Adams operations are indexed by k >= 1");
        let n = self.n;
        let mut out = LocClass::zero(n);
        match loc_pair(n, index) {
            None => {
                // k x_{00} - (k-1) 1_{00} + Σ_{i≥2} 1_{0 s_i}
                out.coords[X00] = Cyc::from_int(n, k as i64);
                out.coords[UNIT00] = Cyc::from_int(n, 1 - k as i64);
                for s in adams_solutions(n, k, 0).into_iter().skip(1) {
                    out.coords[loc_index(n, 0, s)] += &Cyc::one(n);
                }
            }
            Some((0, l)) => {
                for s in adams_solutions(n, k, l) {
                    out.coords[loc_index(n, 0, s)] += &Cyc::one(n);
                }
            }
            Some((_, 0)) => {
                out.coords[index] = Cyc::from_int(n, k as i64);
            }
            Some((m, l)) => {
                let numer = &Cyc::zeta_pow(n, -(l as i64)) - &Cyc::one(n);
                for s in adams_solutions(n, k, l) {
                    assert!(s != 0, "k·0 ≡ l with l ≠ 0 is impossible");
                    let denom = &Cyc::zeta_pow(n, -(s as i64)) - &Cyc::one(n);
                    let coeff = &numer * &denom.inv().expect("ζ^{-s} ≠ 1 for s ≠ 0");
                    out.coords[loc_index(n, m, s)] += &coeff;
                }
            }
        }
        out
    }

    /// `ψ̃^k` on `𝒦`, the linear extension of [`Localization::basis_adams`].
    pub fn adams(&self, a: &LocClass, k: u32) -> LocClass {
        assert_eq!(a.n(), self.n);
        a.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(LocClass::zero(self.n), |acc, (i, c)| {
            acc.add(&self.basis_adams(i, k).scale(c))
        })
    }

    pub fn try_adams(&self, a: &LocClass, k: i64) -> Result<LocClass> {
        if a.n() != self.n {
            return Err(Error::OrderMismatch(self.n, a.n()));
        }
        if k < 1 {
            return Err(Error::InvalidAdamsIndex(k));
        }
        Ok(self.adams(a, k as u32))
    }

    /// Change of basis `1_{00}, x_{00}, 1_{ml}` → `1_{00}, u_l^q`.
    pub fn to_u_basis(&self, a: &LocClass) -> UClass {
        assert_eq!(a.n(), self.n);
        let n = self.n;
        let mut out = UClass::zero(n);
        // x_{00} = u_0^0 + 1_{00}, 1_{m0} = u_0^m
        out.coords[UNIT00] = &a.coords[UNIT00] + &a.coords[X00];
        out.coords[u_index(n, 0, 0)] = a.coords[X00].clone();
        for m in 1..n {
            out.coords[u_index(n, 0, m)] = a.coords[loc_index(n, m, 0)].clone();
        }
        // 1_{0l} = Σ_q u_l^q and 1_{il} = (1 - ζ^{-l}) Σ_q ζ^{iq} u_l^q.
        for l in 1..n {
            let w = &Cyc::one(n) - &Cyc::zeta_pow(n, -(l as i64));
            for i in 0..n {
                let c = &a.coords[loc_index(n, i, l)];
                if c.is_zero() {
                    continue;
                }
                let c = if i == 0 { c.clone() } else { c * &w };
                for q in 0..n {
                    let z = Cyc::zeta_pow(n, (i * q) as i64);
                    out.coords[u_index(n, l, q)] += &(&c * &z);
                }
            }
        }
        out
    }

    /// Change of basis `1_{00}, u_l^q` → `1_{00}, x_{00}, 1_{ml}`.
    pub fn from_u_basis(&self, b: &UClass) -> LocClass {
        assert_eq!(b.n(), self.n);
        let n = self.n;
        let mut out = LocClass::zero(n);
        let u00 = &b.coords[u_index(n, 0, 0)];
        out.coords[X00] = u00.clone();
        out.coords[UNIT00] = &b.coords[UNIT00] - u00;
        for m in 1..n {
            out.coords[loc_index(n, m, 0)] = b.coords[u_index(n, 0, m)].clone();
        }
        let inv_n = Rat::new(1, n as i64);
        for l in 1..n {
            let w_inv = (&Cyc::one(n) - &Cyc::zeta_pow(n, -(l as i64))).inv().expect("l ≠ 0");
            for q in 0..n {
                let c = &b.coords[u_index(n, l, q)];
                if c.is_zero() {
                    continue;
                }
                let c = c.scale(&inv_n);
                for i in 0..n {
                    let mut coeff = &c * &Cyc::zeta_pow(n, -((i * q) as i64));
                    if i != 0 {
                        coeff = &coeff * &w_inv;
                    }
                    out.coords[loc_index(n, i, l)] += &coeff;
                }
            }
        }
        out
    }

    /// `ψ̃^k` in the `u`-basis: `u_0^q ↦ k u_0^q`, `u_l^q ↦ Σ_i u_{s_i}^q`
    /// (or `0` when `gcd(k,n) ∤ l`), and `1_{00} ↦ 1_{00} + Σ_{s≠0, ks≡0} Σ_q u_s^q`
    /// so that `ψ̃^k(1) = 1`.
    pub fn u_adams(&self, b: &UClass, k: u32) -> UClass {
        assert!(k >= 1, "Adams operations are indexed by k >= 1");
        assert_eq!(b.n(), self.n);
        let n = self.n;
        let mut out = UClass::zero(n);
        let unit = &b.coords[UNIT00];
        out.coords[UNIT00] = unit.clone();
        if !unit.is_zero() {
            for s in adams_solutions(n, k, 0).into_iter().filter(|&s| s != 0) {
                for q in 0..n {
                    out.coords[u_index(n, s, q)] += unit;
                }
            }
        }
        let kk = Rat::from_int(k as i64);
        for q in 0..n {
            let i = u_index(n, 0, q);
            out.coords[i] += &b.coords[i].scale(&kk);
        }
        let d = gcd(k as u64, n as u64) as u32;
        for l in 1..n {
            if l % d != 0 {
                continue;
            }
            let sols = adams_solutions(n, k, l);
            for q in 0..n {
                let c = &b.coords[u_index(n, l, q)];
                if c.is_zero() {
                    continue;
                }
                for &s in &sols {
                    out.coords[u_index(n, s, q)] += c;
                }
            }
        }
        out
    }
}

/// `Γ⁻¹` of one basis vector from the closed forms.
fn closed_form_inverse(n: u32, index: usize) -> KClass {
    let ni = n as i64;
    let poly_to_class = |m: u32, p: CycPoly| KClass::from_sector(SectorClass::from_coeffs(n, m, p.into_coeffs()));
    let rat = |a: i64, b: i64| Cyc::from_rat(n, Rat::new(a, b));
    match loc_pair(n, index) {
        // (1/2n)((1-n)x_0 + (1+n)) Π_{i≠0}(x_0 - ζ^i)
        Some((0, 0)) => {
            let lin = CycPoly::new(n, vec![rat(1 + ni, 2 * ni), rat(1 - ni, 2 * ni)]);
            poly_to_class(0, lin.mul(&punctured_product(n, 0)))
        }
        // (1/2n)((3-n)x_0 + (n-1)) Π_{i≠0}(x_0 - ζ^i)
        None => {
            let lin = CycPoly::new(n, vec![rat(ni - 1, 2 * ni), rat(3 - ni, 2 * ni)]);
            poly_to_class(0, lin.mul(&punctured_product(n, 0)))
        }
        // ζ^l / (n(ζ^l - 1)) · (x_0 - 1) Π_{i≠l}(x_0 - ζ^i)
        Some((0, l)) => {
            let z = Cyc::zeta_pow(n, l as i64);
            let denom = (&z - &Cyc::one(n)).scale(&Rat::from_int(ni));
            let c = &z * &denom.inv().expect("l ≠ 0");
            let p = CycPoly::linear_root(Cyc::one(n)).mul(&punctured_product(n, l)).scale(&c);
            poly_to_class(0, p)
        }
        // (ζ^l / n) Π_{i≠l}(x_m - ζ^i)
        Some((m, l)) => {
            let c = Cyc::zeta_pow(n, l as i64).scale(&Rat::new(1, ni));
            poly_to_class(m, punctured_product(n, l).scale(&c))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loc(n: u32) -> Localization {
        Localization::new(n).unwrap()
    }

    #[test]
    fn index_layout() {
        let n = 3;
        assert_eq!(loc_index(n, 0, 0), 0);
        assert_eq!(loc_index(n, 0, 1), 2);
        assert_eq!(loc_index(n, 2, 2), 9);
        for i in 0..10 {
            if let Some((m, l)) = loc_pair(n, i) {
                assert_eq!(loc_index(n, m, l), i);
            }
        }
        assert_eq!(u_index(n, 0, 0), 1);
        assert_eq!(u_pair(n, u_index(n, 2, 1)), Some((2, 1)));
    }

    #[test]
    fn gamma_of_unit_and_x0() {
        for n in 2..7 {
            let lz = loc(n);
            assert_eq!(lz.gamma(&KClass::one(n)), LocClass::one(n));
            assert!(lz.gamma(&KClass::zero(n)).is_zero());
        }
        // n = 2: Γ(x_0) = x_{00} - 1_{01}
        let lz = loc(2);
        let expect = LocClass::x00(2).sub(&LocClass::unit_at(2, 0, 1));
        assert_eq!(lz.gamma(&KClass::monomial(2, 0, 1)), expect);
    }

    #[test]
    fn gamma_round_trip() {
        for n in 2..6 {
            let lz = loc(n);
            for b in LocClass::basis_vectors(n) {
                assert_eq!(lz.gamma(&lz.gamma_inverse(&b)), b);
            }
            for a in KClass::monomial_basis(n) {
                assert_eq!(lz.gamma_inverse(&lz.gamma(&a)), a);
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        // n = 2: Γ⁻¹(1_{00}) = (1/4)(3 + 2x_0 - x_0²)
        let lz = loc(2);
        let q = |a, b| Rat::new(a, b);
        let expect = KClass::from_sector(SectorClass::from_rat_coeffs(2, 0, &[q(3, 4), q(1, 2), q(-1, 4)]));
        assert_eq!(lz.gamma_inverse(&LocClass::basis(2, UNIT00)), expect);
        // Γ⁻¹(1_{m0}) = (1/n)(1 + x_m + … + x_m^{n-1})
        for n in 2..6 {
            let lz = loc(n);
            for m in 1..n {
                let ones = vec![Rat::new(1, n as i64); n as usize];
                let expect = KClass::from_sector(SectorClass::from_rat_coeffs(n, m, &ones));
                assert_eq!(lz.gamma_inverse(&LocClass::unit_at(n, m, 0)), expect);
            }
        }
    }

    #[test]
    fn product_table_examples() {
        for n in 2..6u32 {
            let lz = loc(n);
            let x = LocClass::x00(n);
            let expect = x.scale(&Cyc::from_int(n, 2)).sub(&LocClass::unit_at(n, 0, 0));
            assert_eq!(lz.mul(&x, &x), expect);
            for l in 1..n {
                let w = &Cyc::one(n) - &Cyc::zeta_pow(n, -(l as i64));
                for m1 in 1..n {
                    let m2 = n - m1;
                    let p = lz.mul(&LocClass::unit_at(n, m1, l), &LocClass::unit_at(n, m2, l));
                    assert_eq!(p, LocClass::unit_at(n, 0, l).scale(&(&w * &w)));
                }
                for l2 in 0..n {
                    if l2 != l {
                        assert!(lz.mul(&LocClass::unit_at(n, 1, l), &LocClass::unit_at(n, n - 1, l2)).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn row_formula_matches_table() {
        for n in 2..6u32 {
            let lz = loc(n);
            let basis = LocClass::basis_vectors(n);
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    assert_eq!(lz.mul(a, b), lz.basis_product(i, j), "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn powers_of_x00() {
        for n in 2..5u32 {
            let lz = loc(n);
            let x = LocClass::x00(n);
            for k in 1..=10 {
                let expect = x.scale(&Cyc::from_int(n, k)).sub(&LocClass::unit_at(n, 0, 0).scale(&Cyc::from_int(n, k - 1)));
                let p = (1..k).fold(x.clone(), |acc, _| lz.mul(&acc, &x));
                assert_eq!(p, expect);
            }
        }
    }

    #[test]
    fn adams_examples() {
        let lz = loc(2);
        assert!(lz.basis_adams(loc_index(2, 0, 1), 2).is_zero());
        let expect = LocClass::x00(2)
            .scale(&Cyc::from_int(2, 2))
            .sub(&LocClass::unit_at(2, 0, 0))
            .add(&LocClass::unit_at(2, 0, 1));
        assert_eq!(lz.adams(&LocClass::x00(2), 2), expect);
        for n in 2..6 {
            let lz = loc(n);
            for m in 1..n {
                for k in 1..6 {
                    assert_eq!(
                        lz.adams(&LocClass::unit_at(n, m, 0), k),
                        LocClass::unit_at(n, m, 0).scale(&Cyc::from_int(n, k as i64))
                    );
                }
            }
        }
        assert_eq!(adams_solutions(4, 2, 2), vec![1, 3]);
        assert_eq!(adams_solutions(6, 4, 0), vec![0, 3]);
        assert!(adams_solutions(4, 2, 1).is_empty());
    }

    #[test]
    fn u_basis_examples() {
        let lz = loc(2);
        // u_1^0 = (1/2)1_{01} + (1/4)1_{11}
        let expect = LocClass::unit_at(2, 0, 1)
            .scale(&Cyc::from_rat(2, Rat::new(1, 2)))
            .add(&LocClass::unit_at(2, 1, 1).scale(&Cyc::from_rat(2, Rat::new(1, 4))));
        assert_eq!(lz.from_u_basis(&UClass::u(2, 1, 0)), expect);
        for n in 2..6 {
            let lz = loc(n);
            for b in UClass::basis_vectors(n) {
                assert_eq!(lz.to_u_basis(&lz.from_u_basis(&b)), b);
            }
            for b in LocClass::basis_vectors(n) {
                assert_eq!(lz.from_u_basis(&lz.to_u_basis(&b)), b);
            }
            assert_eq!(lz.to_u_basis(&LocClass::one(n)), UClass::one(n));
            for l in 1..n {
                let sum = (0..n).fold(UClass::zero(n), |acc, q| acc.add(&UClass::u(n, l, q)));
                assert_eq!(lz.from_u_basis(&sum), LocClass::unit_at(n, 0, l));
            }
        }
    }

    #[test]
    fn u_adams_examples() {
        let n = 4;
        let lz = loc(n);
        for q in 0..n {
            assert_eq!(lz.u_adams(&UClass::u(n, 2, q), 2), UClass::u(n, 1, q).add(&UClass::u(n, 3, q)));
            assert_eq!(lz.u_adams(&UClass::u(n, 0, q), 3), UClass::u(n, 0, q).scale(&Cyc::from_int(n, 3)));
            assert!(lz.u_adams(&UClass::u(n, 1, q), 2).is_zero());
        }
        for k in 1..9 {
            assert_eq!(lz.u_adams(&UClass::one(n), k), UClass::one(n));
        }
    }

    #[test]
    fn u_product_matches_loc_product() {
        for n in 2..5 {
            let lz = loc(n);
            let basis = UClass::basis_vectors(n);
            for a in &basis {
                for b in &basis {
                    let via_loc = lz.to_u_basis(&lz.mul(&lz.from_u_basis(a), &lz.from_u_basis(b)));
                    assert_eq!(a.mul(b), via_loc);
                }
            }
        }
    }

    #[test]
    fn display_labels() {
        let v = LocClass::x00(2).scale(&Cyc::from_int(2, 2)).sub(&LocClass::unit_at(2, 0, 0)).add(&LocClass::unit_at(2, 0, 1));
        assert_eq!(v.to_string(), "-e[0,0] + 2*xe[0,0] + e[0,1]");
        assert_eq!(UClass::one(2).to_string(), "e[0,0] + u[1,0] + u[1,1]");
    }
}
