//! Virtual line elements: invertible classes with `ψ̃^k(L) = L^k` for all `k`.
//!
//! A line element is parameterized by `f ∈ (Z/n)^n` and `β ∈ Q(ζ_n)^n` and
//! realized in the `u`-basis as
//! `1 + Σ_q Σ_{l≥1} (ζ^{l f_q} - 1) u_l^q + Σ_q β_q u_0^q`.
//! Since `1 = 1_{00} + Σ_{l≥1} Σ_q u_l^q`, the coordinates are `1` on `1_{00}`,
//! `ζ^{l f_q}` on `u_l^q` and `β_q` on `u_0^q`.

use std::fmt;

use crate::cyclotomic::Cyc;
use crate::display::combination_string;
use crate::error::{check_order, Error, Result};
use crate::linalg::{rank, solve};
use crate::localization::{u_index, Localization, UClass, UNIT00};
use crate::rat::modulo;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LineElt {
    n: u32,
    f: Vec<u32>,
    beta: Vec<Cyc>,
}

impl LineElt {
    /// `L(f; β)`; entries of `f` are reduced mod `n`.
    pub fn new(n: u32, f: &[i64], beta: Vec<Cyc>) -> Result<LineElt> {
        check_order(n)?;
        if f.len() != n as usize || beta.len() != n as usize {
            return Err(Error::IndexOutOfRange { what: "line element parameter count", index: f.len().max(beta.len()) as i64, n });
        }
        Ok(LineElt { n, f: f.iter().map(|&v| modulo(v, n)).collect(), beta })
    }

    pub fn identity(n: u32) -> LineElt {
        LineElt { n, f: vec![0; n as usize], beta: vec![Cyc::zero(n); n as usize] }
    }

    /// `σ_i = L(e_i; 0)`.
    pub fn sigma(n: u32, i: u32) -> LineElt {
        let mut l = Self::identity(n);
        l.f[i as usize] = 1;
        l
    }

    /// `ν_j = L(0; e_j)`.
    pub fn nu(n: u32, j: u32) -> LineElt {
        let mut l = Self::identity(n);
        l.beta[j as usize] = Cyc::one(n);
        l
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn f(&self) -> &[u32] {
        &self.f
    }

    pub fn beta(&self) -> &[Cyc] {
        &self.beta
    }

    /// The group law: parameters add.
    pub fn mul(&self, other: &LineElt) -> LineElt {
        assert_eq!(self.n, other.n);
        LineElt {
            n: self.n,
            f: self.f.iter().zip(&other.f).map(|(a, b)| (a + b) % self.n).collect(),
            beta: self.beta.iter().zip(&other.beta).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inverse(&self) -> LineElt {
        LineElt {
            n: self.n,
            f: self.f.iter().map(|&a| (self.n - a) % self.n).collect(),
            beta: self.beta.iter().map(|b| -b).collect(),
        }
    }

    /// `L^e` for any integer `e`.
    pub fn pow(&self, e: i64) -> LineElt {
        let e_n = modulo(e, self.n) as u64;
        let scale = Cyc::from_int(self.n, e);
        LineElt {
            n: self.n,
            f: self.f.iter().map(|&a| ((a as u64 * e_n) % self.n as u64) as u32).collect(),
            beta: self.beta.iter().map(|b| b * &scale).collect(),
        }
    }

    pub fn realize(&self) -> UClass {
        line_realize(self)
    }
}

impl fmt::Display for LineElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs: Vec<String> = self.f.iter().map(u32::to_string).collect();
        let bs: Vec<String> = self
            .beta
            .iter()
            .map(|b| if b.as_rat().is_some() { b.to_string() } else { format!("({b})") })
            .collect();
        write!(f, "L({}; {})", fs.join(","), bs.join(","))
    }
}

impl fmt::Debug for LineElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [n={}]", self.n)
    }
}

pub fn line_realize(l: &LineElt) -> UClass {
    let n = l.n;
    let mut coords = vec![Cyc::zero(n); (n * n + 1) as usize];
    coords[UNIT00] = Cyc::one(n);
    for q in 0..n {
        coords[u_index(n, 0, q)] = l.beta[q as usize].clone();
        for ll in 1..n {
            coords[u_index(n, ll, q)] = Cyc::zeta_pow(n, (ll * l.f[q as usize]) as i64);
        }
    }
    UClass::from_coords(n, coords)
}

/// `u`-basis inverse; `None` when `a` is not invertible.
pub fn u_inverse(a: &UClass) -> Option<UClass> {
    let n = a.n();
    let alpha_inv = a.coord(UNIT00).inv().ok()?;
    let mut coords = vec![Cyc::zero(n); (n * n + 1) as usize];
    // (α, β) with β square-zero on row 0 inverts to (α⁻¹, -β α⁻²).
    let a2 = &alpha_inv * &alpha_inv;
    coords[UNIT00] = alpha_inv;
    for q in 0..n {
        let i = u_index(n, 0, q);
        coords[i] = -&(a.coord(i) * &a2);
        for l in 1..n {
            let i = u_index(n, l, q);
            coords[i] = a.coord(i).inv().ok()?;
        }
    }
    Some(UClass::from_coords(n, coords))
}

/// Outcome of [`is_line_element`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// The recovered parameters, whose realization reproduces the input.
    Line(LineElt),
    NotInvertible,
    /// `ψ̃^k(a) ≠ a^k` at this `k`.
    PowerLawFails(u32),
    /// The power law holds up to `k_max` but the coefficients are not of the form `ζ^{l f_q}`.
    NoParameters,
}

impl Membership {
    pub fn is_line(&self) -> bool {
        matches!(self, Membership::Line(_))
    }
}

/// Tests invertibility and `ψ̃^k(a) = a^k` for `2 ≤ k ≤ k_max`, then recovers `(f; β)`.
pub fn is_line_element(loc: &Localization, a: &UClass, k_max: u32) -> Membership {
    assert!(k_max >= 2, "k_max must be at least 2");
    let n = a.n();
    if u_inverse(a).is_none() {
        return Membership::NotInvertible;
    }
    let mut power = a.clone();
    for k in 2..=k_max {
        power = power.mul(a);
        if loc.u_adams(a, k) != power {
            return Membership::PowerLawFails(k);
        }
    }
    let alpha = a.coord(UNIT00);
    if !alpha.is_one() {
        return Membership::NoParameters;
    }
    let mut f = Vec::with_capacity(n as usize);
    for q in 0..n {
        match (0..n).find(|&t| Cyc::zeta_pow(n, t as i64) == *a.get(1, q)) {
            Some(t) => f.push(t as i64),
            None => return Membership::NoParameters,
        }
    }
    let beta = (0..n).map(|q| a.get(0, q).clone()).collect();
    let l = LineElt::new(n, &f, beta).expect("parameter counts match n");
    if line_realize(&l) != *a {
        return Membership::NoParameters;
    }
    Membership::Line(l)
}

/// The `(n-1) × (n-1)` block `B[r][c] = ζ^{rc} - 1`, `r, c = 1..n-1`.
pub fn span_block(n: u32) -> Vec<Vec<Cyc>> {
    (1..n).map(|r| (1..n).map(|c| &Cyc::zeta_pow(n, (r * c) as i64) - &Cyc::one(n)).collect()).collect()
}

/// Block-diagonal `A = diag(B, …, B)` with `n` copies. Rows are `(l, q)`,
/// columns the generators `L(α e_q; 0)`, `α = 1..n-1`, grouped by `q`.
pub fn span_matrix(n: u32) -> Vec<Vec<Cyc>> {
    let b = span_block(n);
    let size = (n * (n - 1)) as usize;
    let block = (n - 1) as usize;
    let mut a = vec![vec![Cyc::zero(n); size]; size];
    for q in 0..n as usize {
        for r in 0..block {
            for c in 0..block {
                a[q * block + r][q * block + c] = b[r][c].clone();
            }
        }
    }
    a
}

/// A linear combination of realized line elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Label of the reconstructed vector: `1` for the unit, `u[l,q]` otherwise.
    pub target: String,
    pub terms: Vec<(Cyc, LineElt)>,
}

impl Witness {
    pub fn evaluate(&self, n: u32) -> UClass {
        self.terms.iter().fold(UClass::zero(n), |acc, (c, l)| acc.add(&line_realize(l).scale(c)))
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ", self.target)?;
        f.write_str(&combination_string(self.terms.iter().map(|(c, l)| (c, l.to_string()))))
    }
}

#[derive(Clone, Debug)]
pub struct SpanResult {
    pub rank: usize,
    /// Witnesses for the unit, every `u_0^q`, then every `u_l^q` with `l ≠ 0`.
    pub witnesses: Vec<Witness>,
}

/// Rank of `A` and explicit reconstructions of a basis from line elements.
pub fn span_rank(n: u32) -> Result<SpanResult> {
    check_order(n)?;
    let rank = rank(n, &span_matrix(n));
    let b = span_block(n);
    let one = Cyc::one(n);
    let unit = LineElt::identity(n);
    let mut witnesses = vec![Witness { target: "1".into(), terms: vec![(one.clone(), unit.clone())] }];
    for q in 0..n {
        witnesses.push(Witness {
            target: format!("u[0,{q}]"),
            terms: vec![(one.clone(), LineElt::nu(n, q)), (-&one, unit.clone())],
        });
    }
    // B c = e_l gives Σ_α c_α (L(α e_q; 0) - 1) = u_l^q.
    let mut columns = Vec::new();
    for l in 1..n {
        let mut e = vec![Cyc::zero(n); (n - 1) as usize];
        e[(l - 1) as usize] = one.clone();
        match solve(&b, &e) {
            Some(c) => columns.push((l, c)),
            None => break,
        }
    }
    for q in 0..n {
        for (l, c) in &columns {
            let mut terms = Vec::new();
            let mut total = Cyc::zero(n);
            for (alpha, coeff) in (1..n).zip(c) {
                if coeff.is_zero() {
                    continue;
                }
                let mut f = vec![0i64; n as usize];
                f[q as usize] = alpha as i64;
                terms.push((coeff.clone(), LineElt::new(n, &f, vec![Cyc::zero(n); n as usize])?));
                total += coeff;
            }
            if !total.is_zero() {
                terms.push((-&total, unit.clone()));
            }
            witnesses.push(Witness { target: format!("u[{l},{q}]"), terms });
        }
    }
    Ok(SpanResult { rank, witnesses })
}

/// The basis vector a witness is supposed to produce.
pub fn witness_target(n: u32, index: usize) -> UClass {
    if index == 0 {
        return UClass::one(n);
    }
    let i = index - 1;
    if i < n as usize {
        return UClass::u(n, 0, i as u32);
    }
    let i = (i - n as usize) as u32;
    let (q, l) = (i / (n - 1), i % (n - 1) + 1);
    UClass::u(n, l, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    #[test]
    fn realize_generators() {
        let n = 3;
        assert_eq!(LineElt::identity(n).realize(), UClass::one(n));
        assert_eq!(LineElt::nu(n, 2).realize(), UClass::one(n).add(&UClass::u(n, 0, 2)));
        let mut sigma = UClass::one(n);
        for l in 1..n {
            let c = &Cyc::zeta_pow(n, l as i64) - &Cyc::one(n);
            sigma = sigma.add(&UClass::u(n, l, 1).scale(&c));
        }
        assert_eq!(LineElt::sigma(n, 1).realize(), sigma);
    }

    #[test]
    fn group_law() {
        let n = 4;
        for i in 0..n {
            let s = LineElt::sigma(n, i);
            assert_eq!(s.mul(&s.pow(n as i64 - 1)), LineElt::identity(n));
            let l = s.mul(&LineElt::nu(n, (i + 1) % n));
            assert_eq!(l.mul(&l.inverse()), LineElt::identity(n));
            assert_eq!(l.mul(&l).realize(), l.realize().mul(&l.realize()));
        }
        let mut b = vec![Cyc::zero(n); n as usize];
        b[0] = Cyc::one(n);
        b[1] = Cyc::one(n);
        assert_eq!(LineElt::nu(n, 0).mul(&LineElt::nu(n, 1)), LineElt::new(n, &[0; 4], b).unwrap());
    }

    #[test]
    fn membership() {
        let n = 3;
        let loc = Localization::new(n).unwrap();
        let l = LineElt::new(n, &[1, 2, 0], vec![Cyc::from_int(n, 5), Cyc::zeta_pow(n, 1), Cyc::zero(n)]).unwrap();
        assert_eq!(is_line_element(&loc, &l.realize(), 2 * n), Membership::Line(l.clone()));
        let mut no_unit = l.realize();
        no_unit = no_unit.sub(&UClass::unit00(n));
        assert_eq!(is_line_element(&loc, &no_unit, 2 * n), Membership::NotInvertible);
        let two = UClass::one(n).scale(&Cyc::from_int(n, 2));
        assert_eq!(is_line_element(&loc, &two, 2 * n), Membership::PowerLawFails(2));
        assert!(!is_line_element(&loc, &UClass::one(n).add(&UClass::u(n, 1, 0)), 2 * n).is_line());
    }

    #[test]
    fn u_inverse_examples() {
        let n = 3;
        let l = LineElt::new(n, &[1, 1, 2], vec![Cyc::from_rat(n, Rat::new(1, 3)); 3]).unwrap();
        assert_eq!(u_inverse(&l.realize()).unwrap(), l.inverse().realize());
        assert!(u_inverse(&UClass::u(n, 1, 1)).is_none());
    }

    #[test]
    fn block_squared_pattern() {
        for n in 2..8u32 {
            let b = span_block(n);
            let size = (n - 1) as usize;
            for r in 0..size {
                for c in 0..size {
                    let mut s = Cyc::zero(n);
                    for j in 0..size {
                        s += &(&b[r][j] * &b[j][c]);
                    }
                    let expect = if (r + c + 2) % n as usize == 0 { 2 * n } else { n };
                    assert_eq!(s, Cyc::from_int(n, expect as i64), "n={n} r={r} c={c}");
                }
            }
        }
    }

    #[test]
    fn span_small() {
        for n in 2..5 {
            let s = span_rank(n).unwrap();
            assert_eq!(s.rank, (n * (n - 1)) as usize);
            assert_eq!(s.witnesses.len(), (n * n + 1) as usize);
            for (i, w) in s.witnesses.iter().enumerate() {
                assert_eq!(w.evaluate(n), witness_target(n, i), "{w}");
            }
        }
    }
}
