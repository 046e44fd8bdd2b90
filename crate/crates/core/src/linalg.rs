//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};

/// Eigendecomposition of a symmetric matrix, eigenvalues ascending.
pub fn symmetric_eigen(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let n = m.nrows();
    if n == 0 {
        return (DVector::zeros(0), DMatrix::zeros(0, 0));
    }
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// `V f(Λ) Vᵀ`.
pub fn spectral_function(
    values: &DVector<f64>,
    vectors: &DMatrix<f64>,
    f: impl Fn(f64) -> f64,
) -> DMatrix<f64> {
    let n = values.len();
    let mut scaled = vectors.clone();
    for c in 0..n {
        let s = f(values[c]);
        scaled.column_mut(c).scale_mut(s);
    }
    scaled * vectors.transpose()
}

/// Largest singular value of a dense matrix.
pub fn operator_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().iter().fold(0.0_f64, |a, &b| a.max(b))
}

/// Minimal eigenvalue of a symmetric matrix (0 for the empty matrix).
pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let (v, _) = symmetric_eigen(m);
    v[0]
}

/// Result of simultaneously diagonalizing a commuting family.
#[derive(Clone, Debug)]
pub struct JointEigenbasis {
    /// Orthonormal common eigenvectors, one per column.
    pub vectors: DMatrix<f64>,
    /// `values[k][j]` is the eigenvalue of matrix `j` on vector `k`.
    pub values: Vec<Vec<f64>>,
}

/// Common orthonormal eigenbasis of pairwise commuting symmetric matrices.
///
/// Diagonalizes a random combination `Σ r_j A_j` (fixed seed), then splits any
/// cluster of that combination on which some `A_j` is not yet scalar by
/// diagonalizing `A_j` inside the cluster. The result is verified: every
/// `A_j` must be diagonal in the returned basis to `tol`.
pub fn simultaneous_diagonalize(
    matrices: &[DMatrix<f64>],
    tol: f64,
    seed: u64,
) -> Result<JointEigenbasis> {
    let n = matrices.first().map_or(0, |m| m.nrows());
    for m in matrices {
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::Dimension("family matrices differ in size".into()));
        }
    }
    if n == 0 {
        return Ok(JointEigenbasis { vectors: DMatrix::zeros(0, 0), values: Vec::new() });
    }
    let scale = matrices.iter().map(|m| m.amax()).fold(1.0_f64, f64::max);
    for attempt in 0..3u64 {
        let mut rng = ChaCha20Rng::seed_from_u64(seed.wrapping_add(attempt));
        let mut combo = DMatrix::<f64>::zeros(n, n);
        for m in matrices {
            let r: f64 = rng.random_range(0.5..1.5);
            combo += m * r;
        }
        let (vals, vecs) = symmetric_eigen(&combo);
        // Group nearly-equal eigenvalues of the combination.
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for k in 0..n {
            match clusters.last_mut() {
                Some(c) if (vals[k] - vals[c[c.len() - 1]]).abs() <= 1e-7 * scale.max(1.0) => {
                    c.push(k)
                }
                _ => clusters.push(vec![k]),
            }
        }
        let mut basis: Vec<DVector<f64>> = Vec::with_capacity(n);
        for cluster in clusters {
            let block = DMatrix::from_fn(n, cluster.len(), |r, c| vecs[(r, cluster[c])]);
            refine(matrices, block, 0, tol, &mut basis);
        }
        let vectors = DMatrix::from_columns(&basis);
        let mut ok = true;
        let mut values = vec![vec![0.0; matrices.len()]; n];
        for (j, m) in matrices.iter().enumerate() {
            let d = vectors.transpose() * m * &vectors;
            for k in 0..n {
                values[k][j] = d[(k, k)];
            }
            let mut off = 0.0_f64;
            for r in 0..n {
                for c in 0..n {
                    if r != c {
                        off = off.max(d[(r, c)].abs());
                    }
                }
            }
            if off > tol {
                ok = false;
            }
        }
        if ok {
            return Ok(JointEigenbasis { vectors, values });
        }
    }
    Err(Error::Diagonalization(
        "family is not diagonal in the refined basis after 3 random combinations".into(),
    ))
}

/// Split the column space of `block` until every matrix from `start` on acts
/// as a scalar on each piece.
fn refine(
    matrices: &[DMatrix<f64>],
    block: DMatrix<f64>,
    start: usize,
    tol: f64,
    out: &mut Vec<DVector<f64>>,
) {
    if block.ncols() == 1 {
        out.push(block.column(0).into_owned());
        return;
    }
    for j in start..matrices.len() {
        let restricted = block.transpose() * &matrices[j] * &block;
        let mean = restricted.trace() / restricted.nrows() as f64;
        let spread = (&restricted - DMatrix::<f64>::identity(restricted.nrows(), restricted.nrows()) * mean).amax();
        if spread <= tol {
            continue;
        }
        let sym = (&restricted + restricted.transpose()) * 0.5;
        let (vals, vecs) = symmetric_eigen(&sym);
        let rotated = &block * vecs;
        let mut k = 0;
        while k < vals.len() {
            let mut e = k + 1;
            while e < vals.len() && (vals[e] - vals[k]).abs() <= tol.max(1e-9) {
                e += 1;
            }
            let piece = rotated.columns(k, e - k).into_owned();
            refine(matrices, piece, j + 1, tol, out);
            k = e;
        }
        return;
    }
    for c in 0..block.ncols() {
        out.push(block.column(c).into_owned());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_function_square_root() {
        let m = DMatrix::from_row_slice(2, 2, &[0.5, 0.2, 0.2, 0.3]);
        let (v, q) = symmetric_eigen(&m);
        assert!(v[0] <= v[1]);
        let r = spectral_function(&v, &q, f64::sqrt);
        assert!((&r * &r - &m).amax() < 1e-14);
    }

    #[test]
    fn diagonalizes_commuting_pair_with_degeneracy() {
        // A = diag(1,1,2), B = diag(0,3,3) in a rotated basis.
        let q = {
            let raw = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 0.5, -1.0, 0.3, 2.0, 0.2, 1.0, -1.0]);
            raw.qr().q()
        };
        let a = &q * DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, 2.0])) * q.transpose();
        let b = &q * DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, 3.0, 3.0])) * q.transpose();
        let joint = simultaneous_diagonalize(&[a, b], 1e-9, 7).unwrap();
        let mut tuples: Vec<(i64, i64)> = joint
            .values
            .iter()
            .map(|v| (v[0].round() as i64, v[1].round() as i64))
            .collect();
        tuples.sort();
        assert_eq!(tuples, vec![(1, 0), (1, 3), (2, 3)]);
    }
}
