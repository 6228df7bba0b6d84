//! The inertial K-theory `K(IP(1,n)) = ⊕_m K_G(X^m)` with its virtual
//! product, virtual Adams operations, virtual augmentation and the
//! λ-operations they induce.
//!
//! This is the polynomial-side ground truth; everything in
//! [`crate::localization`] is checked against it.

use std::fmt;

use crate::cyclotomic::Cyc;
use crate::display::write_combination;
use crate::error::{check_order, Error, Result};
use crate::rat::Rat;
use crate::sector::{bott_class, poly_product, sector_dim, sector_x_inverse, SectorClass};

/// An element of `K(IP(1,n))`: one class per sector, sector `0` untwisted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KClass {
    n: u32,
    sectors: Vec<SectorClass>,
}

impl KClass {
    pub fn zero(n: u32) -> KClass {
        KClass { n, sectors: (0..n).map(|m| SectorClass::zero(n, m)).collect() }
    }

    /// The unit `1 = 1_0`.
    pub fn one(n: u32) -> KClass {
        Self::from_sector(SectorClass::one(n, 0))
    }

    pub fn from_sector(s: SectorClass) -> KClass {
        let mut k = Self::zero(s.n());
        let m = s.sector() as usize;
        k.sectors[m] = s;
        k
    }

    pub fn from_sectors(n: u32, sectors: Vec<SectorClass>) -> KClass {
        assert_eq!(sectors.len(), n as usize);
        for (m, s) in sectors.iter().enumerate() {
            assert!(s.n() == n && s.sector() as usize == m, "sector {m} out of place");
        }
        KClass { n, sectors }
    }

    /// `x_m^a` in sector `m`.
    pub fn monomial(n: u32, m: u32, a: i64) -> KClass {
        Self::from_sector(SectorClass::monomial(n, m, a))
    }

    /// The monomial basis `x_0^0..x_0^n` then `x_m^0..x_m^{n-1}` for each
    /// `m ≠ 0`; `n² + 1` elements.
    pub fn monomial_basis(n: u32) -> Vec<KClass> {
        (0..n)
            .flat_map(|m| (0..sector_dim(n, m) as i64).map(move |a| KClass::monomial(n, m, a)))
            .collect()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sector(&self, m: u32) -> &SectorClass {
        &self.sectors[m as usize]
    }

    pub fn sectors(&self) -> &[SectorClass] {
        &self.sectors
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.iter().all(SectorClass::is_zero)
    }

    /// Coordinates in [`KClass::monomial_basis`] order.
    pub fn coordinates(&self) -> Vec<Cyc> {
        self.sectors.iter().flat_map(|s| s.coeffs().iter().cloned()).collect()
    }

    pub fn from_coordinates(n: u32, coords: &[Cyc]) -> KClass {
        assert_eq!(coords.len(), (n * n + 1) as usize);
        let mut offset = 0;
        let sectors = (0..n)
            .map(|m| {
                let d = sector_dim(n, m);
                let s = SectorClass::from_coeffs(n, m, coords[offset..offset + d].to_vec());
                offset += d;
                s
            })
            .collect();
        KClass { n, sectors }
    }

    fn zip(&self, other: &KClass, f: impl Fn(&SectorClass, &SectorClass) -> SectorClass) -> KClass {
        assert_eq!(self.n, other.n, "KClass operands over different n");
        KClass { n: self.n, sectors: self.sectors.iter().zip(&other.sectors).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, other: &KClass) -> KClass {
        self.zip(other, SectorClass::add)
    }

    pub fn sub(&self, other: &KClass) -> KClass {
        self.zip(other, SectorClass::sub)
    }

    pub fn neg(&self) -> KClass {
        KClass { n: self.n, sectors: self.sectors.iter().map(SectorClass::neg).collect() }
    }

    pub fn scale(&self, c: &Cyc) -> KClass {
        KClass { n: self.n, sectors: self.sectors.iter().map(|s| s.scale(c)).collect() }
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(
            f,
            self.sectors.iter().flat_map(|s| {
                s.coeffs().iter().enumerate().map(move |(j, c)| (c, SectorClass::monomial_label(s.sector(), j)))
            }),
        )
    }
}

impl fmt::Debug for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KClass(n={}, {})", self.n, self)
    }
}

/// Which branch of the Euler class formula a sector pair falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EulerCase {
    /// One of the sectors is untwisted: the factor is `1`.
    Untwisted,
    /// `m₁ + m₂ = n`: `1 - 2x^{-1} + x^{-2}` in sector `0`.
    Complementary,
    /// Everything else: `1 - x^{-1}` in sector `m₁ + m₂`.
    Generic,
}

/// `euler(S_{m₁} + S_{m₂} - S_{m₁+m₂})`, living in sector `m₁ + m₂ mod n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerFactor {
    pub target: u32,
    pub case: EulerCase,
    pub value: SectorClass,
}

pub fn euler_factor(n: u32, m1: u32, m2: u32) -> EulerFactor {
    assert!(m1 < n && m2 < n, "sector indices out of range");
    let target = (m1 + m2) % n;
    let one = SectorClass::one(n, target);
    if m1 == 0 || m2 == 0 {
        return EulerFactor { target, case: EulerCase::Untwisted, value: one };
    }
    let inv = sector_x_inverse(n, target);
    if m1 + m2 == n {
        let two = Cyc::from_int(n, 2);
        let value = one.sub(&inv.scale(&two)).add(&inv.mul(&inv));
        EulerFactor { target, case: EulerCase::Complementary, value }
    } else {
        EulerFactor { target, case: EulerCase::Generic, value: one.sub(&inv) }
    }
}

/// The full `n × n` table of Euler factors.
pub fn euler_table(n: u32) -> Vec<Vec<EulerFactor>> {
    (0..n).map(|m1| (0..n).map(|m2| euler_factor(n, m1, m2)).collect()).collect()
}

/// The virtual product and Adams operations for one `n`.
///
/// The Euler factors are stored as a table so test fixtures can swap in a
/// deliberately wrong one.
#[derive(Clone, Debug)]
pub struct VirtualRing {
    n: u32,
    euler: Vec<Vec<EulerFactor>>,
}

impl VirtualRing {
    pub fn new(n: u32) -> Result<VirtualRing> {
        check_order(n)?;
        Ok(VirtualRing { n, euler: euler_table(n) })
    }

    /// A ring whose product uses `table` instead of the true Euler factors.
    pub fn with_euler_table(n: u32, table: Vec<Vec<EulerFactor>>) -> Result<VirtualRing> {
        check_order(n)?;
        assert!(table.len() == n as usize && table.iter().all(|row| row.len() == n as usize));
        for (m1, row) in table.iter().enumerate() {
            for (m2, e) in row.iter().enumerate() {
                assert_eq!(e.value.sector(), (m1 as u32 + m2 as u32) % n, "Euler factor in wrong sector");
            }
        }
        Ok(VirtualRing { n, euler: table })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn euler(&self, m1: u32, m2: u32) -> &EulerFactor {
        &self.euler[m1 as usize][m2 as usize]
    }

    fn check(&self, a: &KClass) -> Result<()> {
        if a.n != self.n {
            return Err(Error::OrderMismatch(self.n, a.n));
        }
        Ok(())
    }

    /// `x_{m₁}^{a₁} * x_{m₂}^{a₂} = x_{m₁+m₂}^{a₁+a₂} · euler(m₁, m₂)`, extended bilinearly.
    pub fn mul(&self, a: &KClass, b: &KClass) -> KClass {
        assert_eq!(a.n, self.n, "left operand over a different n");
        assert_eq!(b.n, self.n, "right operand over a different n");
        let n = self.n;
        let mut out = KClass::zero(n);
        for (m1, s1) in a.sectors.iter().enumerate() {
            if s1.is_zero() {
                continue;
            }
            for (m2, s2) in b.sectors.iter().enumerate() {
                if s2.is_zero() {
                    continue;
                }
                let e = &self.euler[m1][m2];
                let t = e.target as usize;
                let raw = SectorClass::from_coeffs(n, e.target, poly_product(n, s1.coeffs(), s2.coeffs()));
                let term = match e.case {
                    EulerCase::Untwisted if e.value == SectorClass::one(n, e.target) => raw,
                    _ => raw.mul(&e.value),
                };
                out.sectors[t] = out.sectors[t].add(&term);
            }
        }
        out
    }

    pub fn try_mul(&self, a: &KClass, b: &KClass) -> Result<KClass> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn pow(&self, a: &KClass, e: u32) -> KClass {
        (0..e).fold(KClass::one(self.n), |acc, _| self.mul(&acc, a))
    }

    /// `ψ̃^k = ψ^k(·) · θ^k(S*)`, with the Bott factor only on twisted sectors.
    pub fn adams(&self, a: &KClass, k: u32) -> KClass {
        assert!(k >= 1, "Adams operations are indexed by k >= 1");
        let sectors = a
            .sectors
            .iter()
            .map(|s| {
                let psi = s.adams(k);
                if s.sector() == 0 || k == 1 || psi.is_zero() {
                    psi
                } else {
                    psi.mul(&bott_class(self.n, s.sector(), k))
                }
            })
            .collect();
        KClass { n: a.n, sectors }
    }

    pub fn try_adams(&self, a: &KClass, k: i64) -> Result<KClass> {
        self.check(a)?;
        if k < 1 {
            return Err(Error::InvalidAdamsIndex(k));
        }
        Ok(self.adams(a, k as u32))
    }

    /// `λ̃^i(a)` from the Newton recurrence
    /// `i·λ̃^i = Σ_{j=1}^{i} (-1)^{j-1} λ̃^{i-j} * ψ̃^j(a)`.
    pub fn lambda(&self, a: &KClass, i: u32) -> KClass {
        self.lambda_sequence(a, i).pop().expect("sequence is never empty")
    }

    /// `[λ̃^0(a), …, λ̃^i(a)]`.
    pub fn lambda_sequence(&self, a: &KClass, i: u32) -> Vec<KClass> {
        let psi: Vec<KClass> = (1..=i).map(|j| self.adams(a, j)).collect();
        let mut lambdas = vec![KClass::one(self.n)];
        for r in 1..=i {
            let mut acc = KClass::zero(self.n);
            for j in 1..=r {
                let term = self.mul(&lambdas[(r - j) as usize], &psi[(j - 1) as usize]);
                acc = if j % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
            }
            lambdas.push(acc.scale(&Cyc::from_rat(self.n, Rat::new(1, r as i64))));
        }
        lambdas
    }
}

/// `ε̃`: the untwisted sector goes to its rank `f(1)·1_0`, twisted sectors to zero.
pub fn virtual_augmentation(a: &KClass) -> KClass {
    KClass::from_sector(SectorClass::one(a.n, 0).scale(&a.sectors[0].value_at_one()))
}
