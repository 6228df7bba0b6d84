//! The `σ/ν` presentation of the localized ring, the projection `Γ₀` onto the
//! `l = 0` block and its identification with `K(Z_n)`.
//!
//! `K(Z_n)` is modelled as `Q(ζ_n)[ν̂_0^{±1}, …, ν̂_{n-1}^{±1}] / ⟨(ν̂_i - 1)(ν̂_j - 1)⟩`,
//! which has basis `1, ê_i = ν̂_i - 1` and square-zero `ê_i ê_j = 0`.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::cyclotomic::Cyc;
use crate::display::write_combination;
use crate::linalg::{rank, EchelonBasis};
use crate::line_elements::{line_realize, LineElt};
use crate::localization::{u_index, LocClass, Localization, UClass, UNIT00};
use crate::virtual_ring::KClass;

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

impl RelationReport {
    pub fn compare<T: PartialEq + fmt::Display>(id: impl Into<String>, lhs: &T, rhs: &T) -> RelationReport {
        RelationReport { id: id.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), equal: lhs == rhs }
    }
}

/// An element `a·1 + Σ b_i ê_i` of `K(Z_n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResolutionClass {
    n: u32,
    a: Cyc,
    b: Vec<Cyc>,
}

impl ResolutionClass {
    pub fn new(n: u32, a: Cyc, b: Vec<Cyc>) -> ResolutionClass {
        assert_eq!(b.len(), n as usize);
        ResolutionClass { n, a, b }
    }

    pub fn one(n: u32) -> ResolutionClass {
        Self::new(n, Cyc::one(n), vec![Cyc::zero(n); n as usize])
    }

    /// `ê_i = ν̂_i - 1`
    pub fn e(n: u32, i: u32) -> ResolutionClass {
        let mut b = vec![Cyc::zero(n); n as usize];
        b[i as usize] = Cyc::one(n);
        Self::new(n, Cyc::zero(n), b)
    }

    /// `ν̂_i = 1 + ê_i`
    pub fn nu_hat(n: u32, i: u32) -> ResolutionClass {
        Self::one(n).add(&Self::e(n, i))
    }

    /// `1, ê_0, …, ê_{n-1}`.
    pub fn basis(n: u32) -> Vec<ResolutionClass> {
        std::iter::once(Self::one(n)).chain((0..n).map(|i| Self::e(n, i))).collect()
    }

    pub fn coords(&self) -> Vec<Cyc> {
        std::iter::once(self.a.clone()).chain(self.b.iter().cloned()).collect()
    }

    pub fn add(&self, other: &ResolutionClass) -> ResolutionClass {
        Self::new(self.n, &self.a + &other.a, self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, other: &ResolutionClass) -> ResolutionClass {
        Self::new(self.n, &self.a - &other.a, self.b.iter().zip(&other.b).map(|(x, y)| x - y).collect())
    }

    /// `(a, b)·(a', b') = (aa', ab' + a'b)`
    pub fn mul(&self, other: &ResolutionClass) -> ResolutionClass {
        assert_eq!(self.n, other.n);
        let b = self.b.iter().zip(&other.b).map(|(x, y)| &(&self.a * y) + &(&other.a * x)).collect();
        Self::new(self.n, &self.a * &other.a, b)
    }

    /// `ψ^k(ν̂_i) = ν̂_i^k = 1 + k ê_i`, so `ψ^k(a, b) = (a, k b)`.
    pub fn adams(&self, k: u32) -> ResolutionClass {
        assert!(k >= 1, "Adams operations are indexed by k >= 1");
        let k = Cyc::from_int(self.n, k as i64);
        Self::new(self.n, self.a.clone(), self.b.iter().map(|x| x * &k).collect())
    }
}

impl fmt::Display for ResolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(
            f,
            std::iter::once((&self.a, "1".to_string()))
                .chain(self.b.iter().enumerate().map(|(i, c)| (c, format!("(nuhat[{i}] - 1)")))),
        )
    }
}

impl fmt::Debug for ResolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResolutionClass(n={}, {})", self.n, self)
    }
}

/// `Γ₀`: keep `1_{00}` and the `u_0^q`, drop every `l ≠ 0` block.
pub fn gamma0_project(a: &UClass) -> UClass {
    let n = a.n();
    let mut coords = vec![Cyc::zero(n); (n * n + 1) as usize];
    coords[UNIT00] = a.coord(UNIT00).clone();
    for q in 0..n {
        let i = u_index(n, 0, q);
        coords[i] = a.coord(i).clone();
    }
    UClass::from_coords(n, coords)
}

/// `Θ`: `1_{00} ↦ 1`, `u_0^q ↦ ν̂_q - 1`. Reads only the `l = 0` block.
pub fn theta(a: &UClass) -> ResolutionClass {
    let n = a.n();
    ResolutionClass::new(n, a.coord(UNIT00).clone(), (0..n).map(|q| a.get(0, q).clone()).collect())
}

/// Basis `1_{00}, u_0^0, …, u_0^{n-1}` of the `l = 0` block.
pub fn block0_basis(n: u32) -> Vec<UClass> {
    std::iter::once(UClass::unit00(n)).chain((0..n).map(|q| UClass::u(n, 0, q))).collect()
}

fn loc_product(loc: &Localization, a: &UClass, b: &UClass) -> LocClass {
    loc.mul(&loc.from_u_basis(a), &loc.from_u_basis(b))
}

fn realize_loc(loc: &Localization, l: &LineElt) -> LocClass {
    loc.from_u_basis(&line_realize(l))
}

/// The four relation families of the `σ/ν` presentation, multiplied with the localized product.
pub fn presentation_relations(loc: &Localization) -> Vec<RelationReport> {
    let n = loc.n();
    let one = LocClass::one(n);
    let sigma: Vec<LocClass> = (0..n).map(|i| realize_loc(loc, &LineElt::sigma(n, i))).collect();
    let nu_minus: Vec<LocClass> = (0..n).map(|j| realize_loc(loc, &LineElt::nu(n, j)).sub(&one)).collect();
    let zero = LocClass::zero(n);
    let mut out = Vec::new();
    for i in 0..n as usize {
        out.push(RelationReport::compare(format!("sigma-order[{i}]"), &loc.pow(&sigma[i], n), &one));
    }
    for i in 0..n as usize {
        for j in 0..n as usize {
            out.push(RelationReport::compare(
                format!("nu-square-zero[{i},{j}]"),
                &loc.mul(&nu_minus[i], &nu_minus[j]),
                &zero,
            ));
        }
    }
    for i in 0..n as usize {
        for j in 0..n as usize {
            out.push(RelationReport::compare(
                format!("sigma-fixes-nu[{i},{j}]"),
                &loc.mul(&sigma[i], &nu_minus[j]),
                &nu_minus[j],
            ));
        }
    }
    for i in 0..n as usize {
        for j in 0..n as usize {
            if i != j {
                out.push(RelationReport::compare(
                    format!("sigma-orthogonal[{i},{j}]"),
                    &loc.mul(&sigma[i].sub(&one), &sigma[j].sub(&one)),
                    &zero,
                ));
            }
        }
    }
    out
}

/// The relations of the `u`-basis presentation, multiplied with the localized product.
pub fn u_presentation_relations(loc: &Localization) -> Vec<RelationReport> {
    let n = loc.n();
    let u: Vec<Vec<UClass>> = (0..n).map(|l| (0..n).map(|q| UClass::u(n, l, q)).collect()).collect();
    let unit0: Vec<LocClass> = (0..n).map(|l| LocClass::unit_at(n, 0, l)).collect();
    let as_loc = |b: &UClass| loc.from_u_basis(b);
    let mut out = Vec::new();
    for l1 in 0..n {
        for q1 in 0..n {
            for l2 in 0..n {
                for q2 in 0..n {
                    let lhs = loc_product(loc, &u[l1 as usize][q1 as usize], &u[l2 as usize][q2 as usize]);
                    let rhs = if l1 == 0 && l2 == 0 || (l1, q1) != (l2, q2) {
                        LocClass::zero(n)
                    } else {
                        as_loc(&u[l1 as usize][q1 as usize])
                    };
                    out.push(RelationReport::compare(format!("u-product[{l1},{q1};{l2},{q2}]"), &lhs, &rhs));
                }
            }
        }
    }
    let total = unit0.iter().fold(LocClass::zero(n), |acc, e| acc.add(e));
    out.push(RelationReport::compare("unit-decomposition", &total, &loc.gamma(&KClass::one(n))));
    for (i, e) in LocClass::basis_vectors(n).iter().enumerate() {
        out.push(RelationReport::compare(format!("unit-acts[{i}]"), &loc.mul(&total, e), e));
    }
    for l in 1..n {
        let sum = (0..n).fold(UClass::zero(n), |acc, q| acc.add(&u[l as usize][q as usize]));
        out.push(RelationReport::compare(format!("row-unit[{l}]"), &as_loc(&sum), &unit0[l as usize]));
    }
    for l1 in 0..n as usize {
        for l2 in 0..n as usize {
            let rhs = if l1 == l2 { unit0[l1].clone() } else { LocClass::zero(n) };
            out.push(RelationReport::compare(
                format!("row-idempotent[{l1},{l2}]"),
                &loc.mul(&unit0[l1], &unit0[l2]),
                &rhs,
            ));
        }
    }
    for l in 0..n {
        for q in 0..n {
            for l2 in 0..n {
                let uq = as_loc(&u[l as usize][q as usize]);
                let rhs = if l == l2 { uq.clone() } else { LocClass::zero(n) };
                out.push(RelationReport::compare(
                    format!("row-action[{l},{q};{l2}]"),
                    &loc.mul(&uq, &unit0[l2 as usize]),
                    &rhs,
                ));
            }
        }
    }
    out
}

/// Result of spanning the localized ring with `σ/ν` monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub rank: usize,
    pub dimension: usize,
    pub max_degree: u32,
    /// Distinct monomials fed to the elimination before it stopped.
    pub examined: usize,
}

/// Exponent vectors over `2n` generators with exactly `support` nonzero entries
/// and total degree `≤ max_degree`, ordered by degree, then support set, then
/// exponents. Monomials with small support come first, so the elimination
/// normally reaches full rank after the pure powers.
fn exponent_vectors(gens: usize, support: usize, max_degree: u32) -> Vec<Vec<i64>> {
    fn subsets(gens: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for g in start..gens {
            cur.push(g);
            subsets(gens, size, g + 1, cur, out);
            cur.pop();
        }
    }
    fn magnitudes(parts: usize, total: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == parts {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let left = (parts - cur.len() - 1) as u32;
        for m in 1..=total.saturating_sub(left) {
            cur.push(m);
            magnitudes(parts, total - m, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    subsets(gens, support, 0, &mut Vec::new(), &mut sets);
    let mut out = Vec::new();
    if support == 0 {
        out.push(vec![0; gens]);
        return out;
    }
    for degree in support as u32..=max_degree {
        let mut mags = Vec::new();
        magnitudes(support, degree, &mut Vec::new(), &mut mags);
        for set in &sets {
            for mag in &mags {
                for signs in 0..(1u32 << support) {
                    let mut e = vec![0i64; gens];
                    for (k, (&g, &m)) in set.iter().zip(mag).enumerate() {
                        e[g] = if signs >> k & 1 == 1 { -(m as i64) } else { m as i64 };
                    }
                    out.push(e);
                }
            }
        }
    }
    out
}

/// The line element `Π σ_i^{e_i} Π ν_j^{e_{n+j}}`.
pub fn monomial_line_element(n: u32, exponents: &[i64]) -> LineElt {
    assert_eq!(exponents.len(), 2 * n as usize);
    (0..n).fold(LineElt::identity(n), |acc, i| {
        acc.mul(&LineElt::sigma(n, i).pow(exponents[i as usize]))
            .mul(&LineElt::nu(n, i).pow(exponents[(n + i) as usize]))
    })
}

/// Rank of the span of the `σ_i^{±1}, ν_j^{±1}` monomials of total degree
/// `≤ max_degree`. Monomials are turned into line-element parameters
/// (so duplicates are skipped) and inserted into an incremental elimination
/// that stops once the rank reaches the dimension `n² + 1`.
pub fn generation_rank(n: u32, max_degree: u32) -> GenerationReport {
    let dimension = (n * n + 1) as usize;
    let gens = 2 * n as usize;
    let mut basis = EchelonBasis::new(n, dimension);
    let mut seen = HashSet::new();
    'outer: for support in 0..=gens.min(max_degree as usize) {
        for e in exponent_vectors(gens, support, max_degree) {
            let l = monomial_line_element(n, &e);
            if !seen.insert(l.clone()) {
                continue;
            }
            basis.insert(line_realize(&l).coords().to_vec());
            if basis.is_full() {
                break 'outer;
            }
        }
    }
    GenerationReport { rank: basis.rank(), dimension, max_degree, examined: seen.len() }
}

/// Checks of the isomorphism `Θ` between the `l = 0` block and `K(Z_n)`,
/// and of the composite `𝒦 → 𝒦_0 → K(Z_n)`.
pub fn verify_resolution_isomorphism(loc: &Localization, k_max: u32) -> Vec<RelationReport> {
    let n = loc.n();
    let mut out = Vec::new();
    let block = block0_basis(n);
    let images: Vec<Vec<Cyc>> = block.iter().map(|b| theta(b).coords()).collect();
    let r = rank(n, &images);
    out.push(RelationReport {
        id: "theta-bijective".into(),
        lhs: format!("rank {r}"),
        rhs: format!("dimension {}", n + 1),
        equal: r == (n + 1) as usize && ResolutionClass::basis(n).len() == block.len(),
    });
    for (i, a) in block.iter().enumerate() {
        for (j, b) in block.iter().enumerate() {
            let prod = loc.to_u_basis(&loc_product(loc, a, b));
            let lhs = theta(&prod);
            out.push(RelationReport::compare(format!("theta-mul[{i},{j}]"), &lhs, &theta(a).mul(&theta(b))));
            let restricted = gamma0_project(&prod) == prod;
            out.push(RelationReport {
                id: format!("block-closed[{i},{j}]"),
                lhs: prod.to_string(),
                rhs: gamma0_project(&prod).to_string(),
                equal: restricted,
            });
        }
    }
    for k in 1..=k_max {
        for (i, a) in block.iter().enumerate() {
            let lhs = theta(&gamma0_project(&loc.u_adams(a, k)));
            out.push(RelationReport::compare(format!("theta-adams[k={k}][{i}]"), &lhs, &theta(a).adams(k)));
        }
    }

    let full = UClass::basis_vectors(n);
    let down: Vec<ResolutionClass> = full.iter().map(|a| theta(&gamma0_project(a))).collect();
    out.push(RelationReport::compare(
        "composite-unit",
        &theta(&gamma0_project(&UClass::one(n))),
        &ResolutionClass::one(n),
    ));
    for (i, a) in full.iter().enumerate() {
        for (j, b) in full.iter().enumerate().skip(i) {
            let lhs = theta(&gamma0_project(&loc.to_u_basis(&loc_product(loc, a, b))));
            out.push(RelationReport::compare(format!("composite-mul[{i},{j}]"), &lhs, &down[i].mul(&down[j])));
        }
    }
    for k in 1..=k_max {
        for (i, a) in full.iter().enumerate() {
            let lhs = theta(&gamma0_project(&loc.u_adams(a, k)));
            out.push(RelationReport::compare(format!("composite-adams[k={k}][{i}]"), &lhs, &down[i].adams(k)));
        }
    }
    let image_rank = rank(n, &down.iter().map(ResolutionClass::coords).collect::<Vec<_>>());
    out.push(RelationReport {
        id: "composite-surjective".into(),
        lhs: format!("rank {image_rank}"),
        rhs: format!("dimension {}", n + 1),
        equal: image_rank == (n + 1) as usize,
    });
    for i in 0..n {
        out.push(RelationReport::compare(
            format!("gamma0-sigma[{i}]"),
            &gamma0_project(&line_realize(&LineElt::sigma(n, i))),
            &UClass::unit00(n),
        ));
        out.push(RelationReport::compare(
            format!("gamma0-nu[{i}]"),
            &gamma0_project(&line_realize(&LineElt::nu(n, i))),
            &UClass::unit00(n).add(&UClass::u(n, 0, i)),
        ));
        out.push(RelationReport::compare(
            format!("theta-nu[{i}]"),
            &theta(&line_realize(&LineElt::nu(n, i))),
            &ResolutionClass::nu_hat(n, i),
        ));
    }
    out
}

/// `ε̃(a)` read through `Γ`: the `1_{00}` coordinate in the `u`-basis is `f(1)`,
/// so `Γ(ε̃(a))` is that coordinate times the unit.
pub fn augmentation_via_gamma(loc: &Localization, a: &KClass) -> LocClass {
    let rank = loc.to_u_basis(&loc.gamma(a)).coord(UNIT00).clone();
    LocClass::one(loc.n()).scale(&rank)
}
