//! Small exact linear algebra over `Q` and `Q(i)`; everything here is
//! Gaussian elimination on tiny matrices.

use num_traits::{One, Zero};

use crate::gauss::{GaussRat, Rat};

/// Rank of a rational matrix.
pub(crate) fn rank_rat(mut m: Vec<Vec<Rat>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let inv = Rat::one() / m[row][col].clone();
        for c in col..cols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    m[r][c] = &m[r][c] - &(&f * &m[row][c]);
                }
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Solves `A X = B` for square `A`; `None` when `A` is singular.
pub(crate) fn solve_rat(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n));
    assert_eq!(b.len(), n);
    let k = b[0].len();
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|r| a[r].iter().cloned().chain(b[r].iter().cloned()).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, p);
        let inv = Rat::one() / aug[col][col].clone();
        for c in col..n + k {
            aug[col][c] = &aug[col][c] * &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..n + k {
                    aug[r][c] = &aug[r][c] - &(&f * &aug[col][c]);
                }
            }
        }
    }
    Some((0..n).map(|r| aug[r][n..].to_vec()).collect())
}

/// Basis of the right nullspace of a matrix over `Q(i)`.
pub(crate) fn nullspace_gauss(mut m: Vec<Vec<GaussRat>>) -> Vec<Vec<GaussRat>> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("pivot nonzero");
        for c in col..cols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    m[r][c] = &m[r][c] - &(&f * &m[row][c]);
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![GaussRat::zero(); cols];
        v[free] = GaussRat::one();
        for (col, pr) in pivot_of_col.iter().enumerate() {
            if let Some(r) = pr {
                v[col] = -&m[*r][free];
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{rat, rat_int};

    #[test]
    fn rank_and_solve() {
        let m = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ];
        assert_eq!(rank_rat(m), 1);

        let a = vec![
            vec![rat_int(2), rat_int(0)],
            vec![rat_int(1), rat_int(1)],
        ];
        let b = vec![vec![rat_int(4)], vec![rat_int(3)]];
        let x = solve_rat(&a, &b).unwrap();
        assert_eq!(x, vec![vec![rat_int(2)], vec![rat_int(1)]]);

        let sing = vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(1)],
        ];
        assert!(solve_rat(&sing, &b).is_none());
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![vec![GaussRat::from_int(1), GaussRat::i(), GaussRat::from_int(0)]];
        let ns = nullspace_gauss(m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let s = &(&v[0] + &(&GaussRat::i() * &v[1])) + &(&GaussRat::zero() * &v[2]);
            assert!(s.is_zero());
        }
        let _ = rat(1, 2);
    }
}
