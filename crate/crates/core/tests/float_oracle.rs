//! Floating-point cross-check of the localization map against direct
//! evaluation of each sector polynomial at complex roots of unity.

use std::f64::consts::TAU;

use virtual_k::cyclotomic::Cyc;
use virtual_k::localization::{loc_index, LocClass, Localization};
use virtual_k::rat::Rat;
use virtual_k::sector::sector_dim;
use virtual_k::virtual_ring::{KClass, VirtualRing};

const TOL: f64 = 1e-9;

/// Deterministic rational coefficients, small enough to keep floats exact-ish.
fn sample(n: u32, seed: u64) -> Vec<Vec<f64>> {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    (0..n)
        .map(|m| {
            (0..sector_dim(n, m))
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((state >> 33) % 9) as f64 - 4.0
                })
                .collect()
        })
        .collect()
}

fn to_class(n: u32, s: &[Vec<f64>]) -> KClass {
    let coords: Vec<Cyc> = s.iter().flatten().map(|&v| Cyc::from_rat(n, Rat::from_int(v as i64))).collect();
    KClass::from_coordinates(n, &coords)
}

fn eval(poly: &[f64], theta: f64) -> (f64, f64) {
    poly.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
        (re + c * (j as f64 * theta).cos(), im + c * (j as f64 * theta).sin())
    })
}

/// Expected localized coordinates: values at `e^{2πil/n}`, plus the 2-jet at 1 for block `(0,0)`.
fn expected(n: u32, s: &[Vec<f64>]) -> Vec<(usize, (f64, f64))> {
    let mut out = Vec::new();
    for (m, poly) in s.iter().enumerate() {
        for l in 0..n {
            if m == 0 && l == 0 {
                let value: f64 = poly.iter().sum();
                let slope: f64 = poly.iter().enumerate().map(|(j, c)| j as f64 * c).sum();
                out.push((0, (value - slope, 0.0)));
                out.push((1, (slope, 0.0)));
            } else {
                out.push((loc_index(n, m as u32, l), eval(poly, TAU * l as f64 / n as f64)));
            }
        }
    }
    out
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < TOL && (a.1 - b.1).abs() < TOL
}

fn assert_matches(n: u32, got: &LocClass, want: &[(usize, (f64, f64))]) {
    for &(i, w) in want {
        let g = got.coord(i).to_complex();
        assert!(close(g, w), "n={n} coordinate {}: {g:?} vs {w:?}", LocClass::label(n, i));
    }
}

#[test]
fn gamma_matches_numeric_evaluation() {
    for n in 2..=8 {
        let loc = Localization::new(n).unwrap();
        for seed in 0..5 {
            let s = sample(n, seed + 100 * n as u64);
            assert_matches(n, &loc.gamma(&to_class(n, &s)), &expected(n, &s));
        }
    }
}

/// Sector-0 classes multiply with an untwisted Euler factor, so at `l ≠ 0`
/// the localized product is pointwise multiplication of values.
#[test]
fn untwisted_products_multiply_values() {
    for n in 2..=8 {
        let ring = VirtualRing::new(n).unwrap();
        let loc = Localization::new(n).unwrap();
        let untwisted = |seed| {
            let mut s = sample(n, seed);
            s.iter_mut().skip(1).for_each(|p| p.iter_mut().for_each(|c| *c = 0.0));
            s
        };
        let (sa, sb) = (untwisted(7), untwisted(8));
        let prod = loc.gamma(&ring.mul(&to_class(n, &sa), &to_class(n, &sb)));
        for l in 1..n {
            let theta = TAU * l as f64 / n as f64;
            let (x, y) = (eval(&sa[0], theta), eval(&sb[0], theta));
            let want = (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
            let got = prod.coord(loc_index(n, 0, l)).to_complex();
            assert!(close(got, want), "n={n} l={l}: {got:?} vs {want:?}");
        }
    }
}

#[test]
fn inverse_images_localize_to_basis_vectors() {
    for n in 2..=8 {
        let loc = Localization::new(n).unwrap();
        for i in 0..(n * n + 1) as usize {
            let back = loc.gamma(loc.inverse_image(i));
            for j in 0..(n * n + 1) as usize {
                let want = if i == j { (1.0, 0.0) } else { (0.0, 0.0) };
                assert!(close(back.coord(j).to_complex(), want), "n={n} {i} {j}");
            }
        }
    }
}
