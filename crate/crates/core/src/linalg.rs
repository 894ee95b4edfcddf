//! Dense linear algebra over a [`Scalar`] field: echelon form, rank, solving and
//! kernels.

use crate::scalars::Scalar;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Scalar>(m: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let pick = if F::EXACT {
            (row..m.len()).find(|&r| !m[r][col].is_zero())
        } else {
            (row..m.len())
                .filter(|&r| !m[r][col].is_zero())
                .max_by(|&a, &b| m[a][col].log2_abs().total_cmp(&m[b][col].log2_abs()))
        };
        let Some(p) = pick else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for c in col..ncols {
            m[row][c] = m[row][c].clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..ncols {
                    let t = m[row][c].clone() * f.clone();
                    m[r][c] = m[r][c].clone() - t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Scalar>(m: &[Vec<F>]) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut w = m.to_vec();
    rref(&mut w, ncols).len()
}

/// Some solution of `a·x = b` (free unknowns set to zero), or `None` when inconsistent.
pub fn solve<F: Scalar>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut w: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut w, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![F::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = w[r][ncols].clone();
    }
    Some(x)
}

/// A basis of `{x : a·x = 0}`.
pub fn nullspace<F: Scalar>(a: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut w = a.to_vec();
    let pivots = rref(&mut w, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -w[r][f].clone();
            }
            v
        })
        .collect()
}

/// Coefficients expressing `v` in the span of `basis`, when it lies there.
pub fn in_span<F: Scalar>(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    let dim = v.len();
    let a: Vec<Vec<F>> = (0..dim).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    solve(&a, v)
}

/// Determinant by elimination; `m` must be square.
pub fn determinant<F: Scalar>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut w = m.to_vec();
    let mut acc = F::one();
    for col in 0..n {
        let pick = if F::EXACT {
            (col..n).find(|&r| !w[r][col].is_zero())
        } else {
            (col..n)
                .filter(|&r| !w[r][col].is_zero())
                .max_by(|&a, &b| w[a][col].log2_abs().total_cmp(&w[b][col].log2_abs()))
        };
        let Some(p) = pick else { return F::zero() };
        if p != col {
            w.swap(p, col);
            acc = -acc;
        }
        let piv = w[col][col].clone();
        let inv = piv.inv().expect("nonzero pivot");
        acc = acc * piv;
        for r in col + 1..n {
            if w[r][col].is_zero() {
                continue;
            }
            let f = w[r][col].clone() * inv.clone();
            for c in col..n {
                let t = w[col][c].clone() * f.clone();
                w[r][c] = w[r][c].clone() - t;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Rational};

    fn q(v: i64) -> Rational {
        rat(v, 1)
    }

    #[test]
    fn solves_and_detects_inconsistency() {
        let a = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(solve(&a, &[q(1), q(3)]).is_none());
        let x = solve(&a, &[q(1), q(2)]).unwrap();
        assert_eq!(x[0].clone() + q(2) * x[1].clone(), q(1));
        assert_eq!(rank(&a), 1);
        let ns = nullspace(&a, 2);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0].clone() + q(2) * ns[0][1].clone(), q(0));
    }

    #[test]
    fn determinant_of_small_matrices() {
        let a = vec![vec![q(0), q(2), q(1)], vec![q(1), q(1), q(0)], vec![q(3), q(0), q(1)]];
        assert_eq!(determinant(&a), q(-5));
        assert_eq!(determinant(&[vec![q(1), q(2)], vec![q(2), q(4)]]), q(0));
    }
}
