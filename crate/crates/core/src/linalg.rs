//! Small dense linear-algebra routines used by the rank audits and the
//! least-squares projections: Gaussian elimination with partial pivoting.

use nalgebra::DMatrix;

/// Pivot threshold for rank decisions.
pub const RANK_PIVOT_TOL: f64 = 1e-9;

/// Rank of the row span via Gaussian elimination with partial pivoting.
/// A pivot counts if its absolute value exceeds `pivot_tol`.
pub fn rank(rows: &[Vec<f64>], pivot_tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let nrows = m.len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        // partial pivoting
        let mut best = row;
        for r in row..nrows {
            if m[r][col].abs() > m[best][col].abs() {
                best = r;
            }
        }
        if m[best][col].abs() <= pivot_tol {
            continue;
        }
        m.swap(row, best);
        for r in (row + 1)..nrows {
            let f = m[r][col] / m[row][col];
            if f == 0.0 {
                continue;
            }
            let (pivot_row, rest) = {
                let (a, b) = m.split_at_mut(row + 1);
                (&a[row], &mut b[r - row - 1])
            };
            for (c, cell) in rest.iter_mut().enumerate().skip(col) {
                *cell -= f * pivot_row[c];
            }
        }
        rank += 1;
        row += 1;
        if row == nrows {
            break;
        }
    }
    rank
}

/// Solve the square system `a x = b` in place by Gaussian elimination with
/// partial pivoting. Returns `None` when a pivot falls below `pivot_tol`.
pub fn solve(a: &DMatrix<f64>, b: &[f64], pivot_tol: f64) -> Option<Vec<f64>> {
    let n = a.nrows();
    assert_eq!(a.ncols(), n);
    assert_eq!(b.len(), n);
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let mut best = col;
        for r in col..n {
            if m[(r, col)].abs() > m[(best, col)].abs() {
                best = r;
            }
        }
        if m[(best, col)].abs() <= pivot_tol {
            return None;
        }
        if best != col {
            m.swap_rows(col, best);
            rhs.swap(col, best);
        }
        for r in (col + 1)..n {
            let f = m[(r, col)] / m[(col, col)];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                m[(r, c)] -= f * m[(col, c)];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    // back substitution
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = rhs[row];
        for c in (row + 1)..n {
            s -= m[(row, c)] * x[c];
        }
        x[row] = s / m[(row, row)];
    }
    Some(x)
}

/// Least-squares solve of `basis * x ~ target` by normal equations, where
/// `basis` columns are the flattened basis vectors. Returns the coefficients
/// and the max-abs residual of the reconstruction.
pub fn lstsq(basis: &[Vec<f64>], target: &[f64]) -> (Vec<f64>, f64) {
    let k = basis.len();
    let n = target.len();
    debug_assert!(basis.iter().all(|b| b.len() == n));
    let mut gram = DMatrix::<f64>::zeros(k, k);
    let mut rhs = vec![0.0; k];
    for i in 0..k {
        for j in i..k {
            let g: f64 = basis[i].iter().zip(&basis[j]).map(|(a, b)| a * b).sum();
            gram[(i, j)] = g;
            gram[(j, i)] = g;
        }
        rhs[i] = basis[i].iter().zip(target).map(|(a, b)| a * b).sum();
    }
    let coeffs = solve(&gram, &rhs, 1e-12).expect("basis is linearly independent");
    let mut resid = 0.0f64;
    for idx in 0..n {
        let mut v = target[idx];
        for (c, b) in coeffs.iter().zip(basis) {
            v -= c * b[idx];
        }
        resid = resid.max(v.abs());
    }
    (coeffs, resid)
}

/// Max-abs entry of a matrix.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}
