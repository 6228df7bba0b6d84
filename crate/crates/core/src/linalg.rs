//! Gaussian elimination over `Q(ζ_n)`.

use crate::cyclotomic::Cyc;

/// Exact rank of a dense matrix given as rows.
pub fn rank(n: u32, rows: &[Vec<Cyc>]) -> usize {
    let mut basis = EchelonBasis::new(n, rows.first().map_or(0, Vec::len));
    for r in rows {
        basis.insert(r.clone());
    }
    basis.rank()
}

/// Solves `a·x = b` for square invertible `a`. Returns `None` if `a` is singular.
pub fn solve(a: &[Vec<Cyc>], b: &[Cyc]) -> Option<Vec<Cyc>> {
    let size = a.len();
    assert_eq!(b.len(), size);
    let mut m: Vec<Vec<Cyc>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), size, "matrix is not square");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].inv().expect("pivot is nonzero");
        for c in col..=size {
            m[col][c] = &m[col][c] * &inv;
        }
        for r in 0..size {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..=size {
                let t = &f * &m[col][c];
                m[r][c] -= &t;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

/// A row-reduced set of vectors, extended one vector at a time.
///
/// Each stored row has a leading `1` in its pivot column and zeros in the
/// pivot columns of the rows before it.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    n: u32,
    width: usize,
    rows: Vec<(usize, Vec<Cyc>)>,
}

impl EchelonBasis {
    pub fn new(n: u32, width: usize) -> EchelonBasis {
        EchelonBasis { n, width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `v` against the stored rows; the result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: Vec<Cyc>) -> Vec<Cyc> {
        assert_eq!(v.len(), self.width, "vector has the wrong length");
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row).skip(*p) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Cyc]) -> bool {
        self.reduce(v.to_vec()).iter().all(Cyc::is_zero)
    }

    /// Adds `v` if it is independent of the stored rows; returns whether it was.
    pub fn insert(&mut self, v: Vec<Cyc>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("pivot is nonzero");
        let v: Vec<Cyc> = v.iter().map(|c| c * &inv).collect();
        debug_assert_eq!(v[p], Cyc::one(self.n));
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(n: u32, rows: &[&[i64]]) -> Vec<Vec<Cyc>> {
        rows.iter().map(|r| r.iter().map(|&v| Cyc::from_int(n, v)).collect()).collect()
    }

    #[test]
    fn rational_ranks() {
        assert_eq!(rank(2, &ints(2, &[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(2, &ints(2, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
        assert_eq!(rank(2, &ints(2, &[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(2, &ints(2, &[&[0, 1], &[1, 0]])), 2);
    }

    #[test]
    fn cyclotomic_rank() {
        // Rows (1, ζ) and (ζ, ζ²) are proportional; (1, ζ²) is not for n = 3.
        let n = 3;
        let z = |k| Cyc::zeta_pow(n, k);
        assert_eq!(rank(n, &[vec![z(0), z(1)], vec![z(1), z(2)]]), 1);
        assert_eq!(rank(n, &[vec![z(0), z(1)], vec![z(0), z(2)]]), 2);
    }

    #[test]
    fn solve_small_system() {
        let n = 4;
        let a = ints(n, &[&[2, 1], &[1, 3]]);
        let b = vec![Cyc::from_int(n, 3), Cyc::from_int(n, 5)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![Cyc::from_rat(n, crate::rat::Rat::new(4, 5)), Cyc::from_rat(n, crate::rat::Rat::new(7, 5))]);
        assert!(solve(&ints(n, &[&[1, 2], &[2, 4]]), &b).is_none());
    }

    #[test]
    fn echelon_membership() {
        let n = 2;
        let mut e = EchelonBasis::new(n, 3);
        assert!(e.insert(ints(n, &[&[1, 1, 0]]).remove(0)));
        assert!(e.insert(ints(n, &[&[0, 1, 1]]).remove(0)));
        assert!(!e.insert(ints(n, &[&[1, 2, 1]]).remove(0)));
        assert!(e.contains(&ints(n, &[&[2, 0, -2]])[0]));
        assert!(!e.contains(&ints(n, &[&[0, 0, 1]])[0]));
        assert_eq!(e.rank(), 2);
        assert!(!e.is_full());
    }
}
