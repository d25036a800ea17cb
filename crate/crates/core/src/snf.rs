//! Smith normal form over the integers.
//!
//! Used for two jobs: presenting quotient groups `Z^k / L` as products of
//! cyclic groups, and deciding solvability of the linear congruence systems
//! behind the bounded quasi-inverse search. Arithmetic is exact `BigInt`;
//! the matrices involved are small (tens of rows).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn mat_from_i128(rows: &[Vec<i128>]) -> Mat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &Mat, v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Row-vector times matrix: `v * m`.
pub fn vec_mat(v: &[BigInt], m: &Mat) -> Vec<BigInt> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| v.iter().zip(m.iter()).map(|(a, row)| a * &row[j]).sum())
        .collect()
}

/// Result of `u * a * v = diag(d)` with `u`, `v` unimodular.
///
/// `v_inv` is maintained alongside `v` so callers can lift generators of the
/// transformed basis back to the original coordinates without a separate
/// matrix inversion.
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: Mat,
    pub v: Mat,
    pub v_inv: Mat,
}

pub fn smith_normal_form(a: &Mat) -> Smith {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut v_inv = identity(cols);

    let swap_rows = |m: &mut Mat, u: &mut Mat, i: usize, j: usize| {
        m.swap(i, j);
        u.swap(i, j);
    };
    let swap_cols = |m: &mut Mat, v: &mut Mat, vi: &mut Mat, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        vi.swap(i, j);
    };
    // row j += t * row i
    let add_row = |m: &mut Mat, u: &mut Mat, i: usize, j: usize, t: &BigInt| {
        for c in 0..cols {
            let x = &m[i][c] * t;
            m[j][c] += x;
        }
        for c in 0..rows {
            let x = &u[i][c] * t;
            u[j][c] += x;
        }
    };
    // col j += t * col i; inverse op on v_inv is row i -= t * row j
    let add_col = |m: &mut Mat, v: &mut Mat, vi: &mut Mat, i: usize, j: usize, t: &BigInt| {
        for row in m.iter_mut() {
            let x = &row[i] * t;
            row[j] += x;
        }
        for row in v.iter_mut() {
            let x = &row[i] * t;
            row[j] += x;
        }
        for c in 0..cols {
            let x = &vi[j][c] * t;
            vi[i][c] -= x;
        }
    };
    let negate_row = |m: &mut Mat, u: &mut Mat, i: usize| {
        for c in 0..cols {
            let x = -m[i][c].clone();
            m[i][c] = x;
        }
        for c in 0..rows {
            let x = -u[i][c].clone();
            u[i][c] = x;
        }
    };

    let n = rows.min(cols);
    let mut p = 0;
    while p < n {
        // find a nonzero pivot of minimal absolute value in the submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in p..rows {
            for j in p..cols {
                if !m[i][j].is_zero() {
                    match &pivot {
                        Some((pi, pj)) if m[*pi][*pj].abs() <= m[i][j].abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != p {
            swap_rows(&mut m, &mut u, p, pi);
        }
        if pj != p {
            swap_cols(&mut m, &mut v, &mut v_inv, p, pj);
        }
        if m[p][p].is_negative() {
            negate_row(&mut m, &mut u, p);
        }

        let mut clean = true;
        for i in (p + 1)..rows {
            if !m[i][p].is_zero() {
                let q = -(&m[i][p] / &m[p][p]);
                add_row(&mut m, &mut u, p, i, &q);
                if !m[i][p].is_zero() {
                    clean = false;
                }
            }
        }
        for j in (p + 1)..cols {
            if !m[p][j].is_zero() {
                let q = -(&m[p][j] / &m[p][p]);
                add_col(&mut m, &mut v, &mut v_inv, p, j, &q);
                if !m[p][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue; // smaller remainders appeared; re-select the pivot
        }

        // divisibility: d_p must divide every remaining entry
        let mut fixed = true;
        'scan: for i in (p + 1)..rows {
            for j in (p + 1)..cols {
                if !(&m[i][j] % &m[p][p]).is_zero() {
                    add_row(&mut m, &mut u, i, p, &BigInt::one());
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            p += 1;
        }
    }

    let diag = (0..n).map(|i| m[i][i].clone()).collect();
    Smith { diag, u, v, v_inv }
}

/// Solve `a * y = b` over the integers. Returns one solution or `None`.
pub fn solve_integer(a: &Mat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    if rows == 0 {
        return Some(vec![BigInt::zero(); cols]);
    }
    let s = smith_normal_form(a);
    let c = mat_vec(&s.u, b);
    let mut t = vec![BigInt::zero(); cols];
    for i in 0..rows {
        let d = if i < s.diag.len() {
            s.diag[i].clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            if !c[i].is_zero() {
                return None;
            }
        } else {
            if !(&c[i] % &d).is_zero() {
                return None;
            }
            if i < cols {
                t[i] = &c[i] / &d;
            }
        }
    }
    Some(mat_vec(&s.v, &t))
}
