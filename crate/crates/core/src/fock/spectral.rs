use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use super::sparse::SparseMatrix;
use crate::error::{Error, Result};
use crate::linalg;

/// Dimension up to which operator norms use a dense SVD.
pub const DENSE_NORM_LIMIT: usize = 1024;
/// Joint eigenvalues closer than this are merged into one atom.
pub const ATOM_MERGE_TOLERANCE: f64 = 1e-6;

/// Operator 2-norm: dense SVD for small matrices, otherwise power
/// iteration on `AᵀA`.
pub fn operator_norm(a: &SparseMatrix) -> f64 {
    if a.nnz() == 0 {
        return 0.0;
    }
    if a.nrows().max(a.ncols()) <= DENSE_NORM_LIMIT {
        return linalg::operator_norm(&a.to_dense());
    }
    let at = a.transpose();
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed);
    let mut v = DVector::from_fn(a.ncols(), |_, _| rng.random_range(-1.0..1.0));
    v /= v.norm();
    let mut estimate = 0.0;
    for _ in 0..500 {
        let w = at.mul_vec(&a.mul_vec(&v));
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        let next = norm.sqrt();
        v = w / norm;
        if (next - estimate).abs() <= 1e-14 * next {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// `‖T1 T2 − T2 T1‖` in operator norm.
pub fn commutator_norm(t1: &SparseMatrix, t2: &SparseMatrix) -> f64 {
    operator_norm(&t1.commutator(t2))
}

/// One atom of a joint spectral measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralAtom {
    pub point: Vec<f64>,
    pub weight: f64,
}

/// Joint spectral measure of commuting symmetric matrices with respect to
/// `omega`: joint eigenvalue tuples weighted by `|⟨omega, v⟩|²`.
///
/// The family is first compressed to the cyclic subspace generated from
/// `omega`, which carries the whole measure and is invariant under every
/// member.
pub fn joint_spectral_measure(family: &[SparseMatrix], omega: &DVector<f64>, seed: u64) -> Result<Vec<SpectralAtom>> {
    for a in family {
        if a.nrows() != omega.len() || a.ncols() != omega.len() {
            return Err(Error::Dimension("family and vector sizes differ".into()));
        }
    }
    let mut worst = 0.0_f64;
    for i in 0..family.len() {
        worst = worst.max(family[i].sub(&family[i].transpose()).max_abs());
        for j in i + 1..family.len() {
            worst = worst.max(family[i].commutator(&family[j]).max_abs());
        }
    }
    if worst > 1e-8 {
        return Err(Error::NonCommuting(worst));
    }
    let basis = cyclic_basis(family, omega);
    let k = basis.len();
    let v = DMatrix::from_columns(&basis);
    let compressed: Vec<DMatrix<f64>> = family
        .iter()
        .map(|a| {
            let av = DMatrix::from_columns(&basis.iter().map(|b| a.mul_vec(b)).collect::<Vec<_>>());
            let c = v.transpose() * av;
            (&c + c.transpose()) * 0.5
        })
        .collect();
    let omega_coords = v.transpose() * omega;
    if family.is_empty() {
        return Ok(vec![SpectralAtom { point: Vec::new(), weight: omega.norm_squared() }]);
    }
    let joint = linalg::simultaneous_diagonalize(&compressed, 1e-8, seed)?;
    let mut atoms: Vec<SpectralAtom> = Vec::new();
    for c in 0..k {
        let w = joint.vectors.column(c).dot(&omega_coords).powi(2);
        let point = joint.values[c].clone();
        match atoms.iter_mut().find(|a| {
            a.point.iter().zip(&point).all(|(x, y)| (x - y).abs() <= ATOM_MERGE_TOLERANCE)
        }) {
            Some(a) => a.weight += w,
            None => atoms.push(SpectralAtom { point, weight: w }),
        }
    }
    atoms.retain(|a| a.weight > 1e-300);
    atoms.sort_by(|a, b| {
        a.point
            .iter()
            .zip(&b.point)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(atoms)
}

/// Orthonormal basis of the smallest subspace containing `omega` and
/// invariant under every matrix of the family.
fn cyclic_basis(family: &[SparseMatrix], omega: &DVector<f64>) -> Vec<DVector<f64>> {
    let scale = family.iter().map(SparseMatrix::max_abs).fold(1.0_f64, f64::max);
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let first = omega / omega.norm();
    basis.push(first);
    let mut next = 0;
    while next < basis.len() {
        let v = basis[next].clone();
        next += 1;
        for a in family {
            let mut w = a.mul_vec(&v);
            let norm0 = w.norm();
            for _ in 0..2 {
                for b in &basis {
                    let p = b.dot(&w);
                    w.axpy(-p, b, 1.0);
                }
            }
            let norm = w.norm();
            if norm > 1e-9 * scale.max(norm0) {
                basis.push(w / norm);
            }
        }
    }
    basis
}
