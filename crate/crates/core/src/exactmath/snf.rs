use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Smith normal form `U·A·V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    pub rank: usize,
    /// Inverse of `u`, tracked during the reduction.
    pub u_inv: IntMatrix,
}

impl SnfResult {
    /// The nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Product of the nonzero invariant factors (1 for the zero matrix).
    pub fn torsion_product(&self) -> BigInt {
        self.invariant_factors()
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }
}

struct Reducer {
    d: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Reducer {
    // row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.d[0].len() {
            let t = c * &self.d[j][k];
            self.d[i][k] += t;
        }
        for k in 0..self.u.len() {
            let t = c * &self.u[j][k];
            self.u[i][k] += t;
        }
        // u_inv picks up the inverse op on the right: col_j -= c * col_i
        for row in self.u_inv.iter_mut() {
            let t = c * &row[i];
            row[j] -= t;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.d.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.d[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        for x in self.u[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -std::mem::take(&mut row[i]);
        }
    }

    // col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for row in self.d.iter_mut() {
            let t = c * &row[j];
            row[i] += t;
        }
        for row in self.v.iter_mut() {
            let t = c * &row[j];
            row[i] += t;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.d.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
    }

    fn min_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.len() {
            for j in t..self.d[i].len() {
                let x = &self.d[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

fn to_matrix(rows: Vec<Vec<BigInt>>, nrows: usize, ncols: usize) -> IntMatrix {
    if nrows == 0 || ncols == 0 {
        return IntMatrix::zeros(nrows, ncols);
    }
    IntMatrix::from_big_rows(rows).expect("rectangular by construction")
}

/// Smith normal form by repeated pivoting on the entry of least absolute value.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut r = Reducer {
        d: a.to_rows(),
        u: IntMatrix::identity(m).to_rows(),
        u_inv: IntMatrix::identity(m).to_rows(),
        v: IntMatrix::identity(n).to_rows(),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        while let Some((pi, pj)) = r.min_nonzero(t) {
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            let pivot = r.d[t][t].clone();
            let mut dirty = false;
            for i in t + 1..m {
                if r.d[i][t].is_zero() {
                    continue;
                }
                let q = &r.d[i][t] / &pivot;
                r.add_row(i, t, &-q);
                dirty |= !r.d[i][t].is_zero();
            }
            for j in t + 1..n {
                if r.d[t][j].is_zero() {
                    continue;
                }
                let q = &r.d[t][j] / &pivot;
                r.add_col(j, t, &-q);
                dirty |= !r.d[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !(&r.d[i][j] % &pivot).is_zero())
            });
            match offender {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.d[t][t].is_zero() {
            break;
        }
        if r.d[t][t].is_negative() {
            r.negate_row(t);
        }
        rank += 1;
    }
    SnfResult {
        u: to_matrix(r.u, m, m),
        v: to_matrix(r.v, n, n),
        d: to_matrix(r.d, m, n),
        rank,
        u_inv: to_matrix(r.u_inv, m, m),
    }
}

/// Completes a full-column-rank `n×r` integer matrix to a unimodular `n×n`
/// matrix whose first `r` columns span the saturation of its column lattice.
pub fn hnf_basis_extension(a: &IntMatrix) -> Result<IntMatrix> {
    let r = a.cols();
    let rank = a.rank();
    if rank != r {
        return Err(Error::RankDeficient { rank, expected: r });
    }
    // A = U⁻¹·D·V⁻¹ and D vanishes below row r, so the first r columns of U⁻¹
    // carry A's column space; U⁻¹ is unimodular.
    Ok(snf(a).u_inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn check(a: &IntMatrix) -> SnfResult {
        let s = snf(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn two_by_two() {
        let s = check(&m(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.d, m(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(2, 3));
        assert!(s.d.is_zero());
        assert_eq!(s.rank, 0);
        assert_eq!(s.torsion_product(), BigInt::one());
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) is diagonal but not in Smith form
        let s = check(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn basis_extension_examples() {
        let id = hnf_basis_extension(&m(&[vec![1], vec![0], vec![0]])).unwrap();
        assert_eq!(id, IntMatrix::identity(3));

        let sat = hnf_basis_extension(&m(&[vec![2], vec![0]])).unwrap();
        assert!(sat.is_unimodular());
        assert_eq!(sat.column(0), vec![BigInt::from(1), BigInt::from(0)]);

        let diag = hnf_basis_extension(&m(&[vec![1], vec![1]])).unwrap();
        assert_eq!(diag, m(&[vec![1, 0], vec![1, 1]]));

        assert_eq!(
            hnf_basis_extension(&m(&[vec![1, 2], vec![2, 4]])),
            Err(Error::RankDeficient { rank: 1, expected: 2 })
        );
    }
}
