//! Small dense linear algebra: symmetric 3x3 eigenproblems, square solves,
//! and least squares via normal equations. Problem sizes here are tiny and
//! fixed, so simple pivoted elimination is both adequate and fast.

/// Eigenvalues and orthonormal eigenvectors (as columns) of a symmetric 3x3
/// matrix, by cyclic Jacobi rotations.
pub fn jacobi_eigen_3(m: [[f64; 3]; 3]) -> ([f64; 3], [[f64; 3]; 3]) {
    let mut a = m;
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let scale = m
        .iter()
        .flatten()
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
        .max(1e-300);
    for _ in 0..64 {
        let off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
        if off < (1e-15 * scale) * (1e-15 * scale) {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            if a[p][q].abs() <= 1e-300 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            // A <- J^T A J with the rotation in the (p, q) plane.
            let app = a[p][p];
            let aqq = a[q][q];
            let apq = a[p][q];
            a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
            a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            let r = 3 - p - q;
            let arp = a[r][p];
            let arq = a[r][q];
            a[r][p] = c * arp - s * arq;
            a[p][r] = a[r][p];
            a[r][q] = s * arp + c * arq;
            a[q][r] = a[r][q];
            for row in 0..3 {
                let vp = v[row][p];
                let vq = v[row][q];
                v[row][p] = c * vp - s * vq;
                v[row][q] = s * vp + c * vq;
            }
        }
    }
    ([a[0][0], a[1][1], a[2][2]], v)
}

/// Solves a square system by Gaussian elimination with partial pivoting.
/// Returns `None` when the matrix is numerically singular.
pub fn solve_linear(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-14 * row_scale(&m) {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                m[row][k] -= factor * m[col][k];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in row + 1..n {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

fn row_scale(m: &[Vec<f64>]) -> f64 {
    m.iter()
        .flatten()
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
        .max(1e-300)
}

/// Least squares min |Ax - b| via the normal equations. Returns the
/// minimizer and the Euclidean residual norm; a rank-deficient system falls
/// back to x = 0, which keeps the residual meaningful for certificates on
/// identically-zero data.
pub fn lstsq(a: &[Vec<f64>], b: &[f64]) -> (Vec<f64>, f64) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut ata = vec![vec![0.0; cols]; cols];
    let mut atb = vec![0.0; cols];
    for r in 0..rows {
        for i in 0..cols {
            atb[i] += a[r][i] * b[r];
            for j in 0..cols {
                ata[i][j] += a[r][i] * a[r][j];
            }
        }
    }
    let x = solve_linear(&ata, &atb).unwrap_or_else(|| vec![0.0; cols]);
    let mut res = 0.0;
    for r in 0..rows {
        let mut ax = 0.0;
        for i in 0..cols {
            ax += a[r][i] * x[i];
        }
        res += (ax - b[r]) * (ax - b[r]);
    }
    (x, res.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn jacobi_recovers_known_spectrum() {
        // Eigenvalues 1, 2, 4 conjugated by a rotation.
        let d = [1.0, 2.0, 4.0];
        let (c, s) = (0.8, 0.6);
        // Rotation in the (0, 1) plane followed by one in (1, 2).
        let r = |v: [f64; 3]| {
            let w = [c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]];
            [w[0], c * w[1] - s * w[2], s * w[1] + c * w[2]]
        };
        let cols = [r([1.0, 0.0, 0.0]), r([0.0, 1.0, 0.0]), r([0.0, 0.0, 1.0])];
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    m[i][j] += d[k] * cols[k][i] * cols[k][j];
                }
            }
        }
        let (mut vals, vecs) = jacobi_eigen_3(m);
        vals.sort_by(f64::total_cmp);
        for (got, want) in vals.iter().zip(d.iter()) {
            assert_relative_eq!(got, want, epsilon = 1e-12);
        }
        // Columns stay orthonormal.
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| vecs[k][i] * vecs[k][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert_relative_eq!(dot, want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn gaussian_solve_and_singularity() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve_linear(&a, &[5.0, 10.0]).unwrap();
        assert_relative_eq!(x[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(x[1], 3.0, epsilon = 1e-12);
        let singular = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(solve_linear(&singular, &[1.0, 2.0]).is_none());
    }

    #[test]
    fn least_squares_consistent_and_inconsistent() {
        // Overdetermined but consistent: residual vanishes.
        let a = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
        let (x, res) = lstsq(&a, &[2.0, 3.0, 5.0]);
        assert_relative_eq!(x[0], 2.0, epsilon = 1e-12);
        assert_relative_eq!(x[1], 3.0, epsilon = 1e-12);
        assert!(res < 1e-12);
        // Inconsistent: the classic vertical fit.
        let (x, res) = lstsq(&a, &[0.0, 0.0, 3.0]);
        assert_relative_eq!(x[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(x[1], 1.0, epsilon = 1e-12);
        assert!(res > 1.0);
    }
}
