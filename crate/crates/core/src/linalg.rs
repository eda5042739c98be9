//! Small dense numerical routines: Perron roots and linear solves.

use alloc::vec;
use alloc::vec::Vec;

/// Perron root and right eigenvector of a nonnegative irreducible matrix given
/// as sparse rows `rows[i] = [(j, a_ij), ...]`.
///
/// Iterates `x <- (A + I) x` from the all-ones vector; `A + I` is primitive, so
/// the Collatz–Wielandt bounds `min (Bx)_i / x_i <= rho(B) <= max (Bx)_i / x_i`
/// close in. Stops once they agree to `rel_tol` relative to `rho(B)`.
pub fn perron(rows: &[Vec<(usize, f64)>], rel_tol: f64, max_iter: usize) -> (f64, Vec<f64>) {
    let n = rows.len();
    let mut x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    let mut lo = 0.0;
    let mut hi = f64::INFINITY;
    for _ in 0..max_iter {
        for i in 0..n {
            let mut s = x[i];
            for &(j, a) in &rows[i] {
                s += a * x[j];
            }
            y[i] = s;
        }
        lo = f64::INFINITY;
        hi = 0.0;
        for i in 0..n {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        for i in 0..n {
            x[i] = y[i] / norm;
        }
        if hi - lo <= rel_tol * hi {
            break;
        }
    }
    ((lo + hi) / 2.0 - 1.0, x)
}

/// Solves `M x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` for (numerically) singular systems.
pub fn solve(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() < 1e-14 {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in i + 1..n {
            s -= m[i][j] * x[j];
        }
        x[i] = s / m[i][i];
    }
    Some(x)
}

/// Stationary row vector `pi` of a row-stochastic matrix: `pi P = pi`, `sum pi = 1`.
pub fn stationary(p: &[Vec<f64>]) -> Option<Vec<f64>> {
    let n = p.len();
    // (P^T - I) pi = 0 with the last equation replaced by normalisation
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[j][i] = p[i][j];
        }
        m[i][i] -= 1.0;
    }
    let mut b = vec![0.0; n];
    m[n - 1] = vec![1.0; n];
    b[n - 1] = 1.0;
    solve(m, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_root() {
        let rows = vec![vec![(0, 1.0), (1, 1.0)], vec![(0, 1.0)]];
        let (l, v) = perron(&rows, 1e-14, 100_000);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((l - phi).abs() < 1e-12);
        assert!((v[0] / v[1] - phi).abs() < 1e-10);
    }

    #[test]
    fn periodic_matrix_converges() {
        // a 5-cycle: rho = 1 even though A itself is not primitive
        let rows: Vec<_> = (0..5).map(|i| vec![((i + 1) % 5, 1.0)]).collect();
        let (l, _) = perron(&rows, 1e-14, 1_000_000);
        assert!((l - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stationary_two_state() {
        let p = vec![vec![0.9, 0.1], vec![0.5, 0.5]];
        let pi = stationary(&p).unwrap();
        assert!((pi[0] - 5.0 / 6.0).abs() < 1e-14);
        assert!((pi[1] - 1.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn singular_detected() {
        assert!(solve(vec![vec![1.0, 2.0], vec![2.0, 4.0]], vec![1.0, 2.0]).is_none());
    }
}
