//! Kernel generators used by the command line and the test suites.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::ground::{KernelModel, Statistics};

/// `Q diag(λ) Qᵀ` with `Q` Haar-like orthogonal and `λ_k` uniform in
/// `[0, top]`.
pub fn random_psd(n: usize, top: f64, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let raw = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let q = raw.qr().q();
    let lambda = DVector::from_fn(n, |_, _| rng.random_range(0.0..=top));
    let m = &q * DMatrix::from_diagonal(&lambda) * q.transpose();
    (&m + m.transpose()) * 0.5
}

/// Random model whose spectrum suits the family: `[0, 1]` for fermionic
/// families, `[0, top_boson]` for bosonic ones.
pub fn random_model(n: usize, statistics: Statistics, top_boson: f64, seed: u64) -> Result<KernelModel> {
    let top = if statistics.is_fermionic() { 1.0 } else { top_boson };
    KernelModel::from_matrix(random_psd(n, top, seed), statistics)
}

/// `k(x, y) = exp(−|x−y|²/2ℓ²)` on the grid `0, 1, …, n−1`, divided by
/// 1.05 times its largest eigenvalue.
pub fn gaussian_grid(n: usize, lengthscale: f64) -> Result<DMatrix<f64>> {
    if lengthscale <= 0.0 || !lengthscale.is_finite() {
        return Err(Error::Invalid(format!("lengthscale must be positive, got {lengthscale}")));
    }
    let k = DMatrix::from_fn(n, n, |i, j| {
        let d = i as f64 - j as f64;
        (-d * d / (2.0 * lengthscale * lengthscale)).exp()
    });
    let top = crate::linalg::symmetric_eigen(&k).0.iter().fold(0.0_f64, |m, &v| m.max(v));
    Ok(if top > 0.0 { k / (1.05 * top) } else { k })
}

pub fn diagonal(values: &[f64]) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_column_slice(values))
}

