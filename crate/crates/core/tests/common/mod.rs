//! Brute-force oracles shared by the integration tests. Everything here is
//! written from the definitions, independently of the library's fast paths.
#![allow(dead_code)]

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use quasifree::{Configuration, KernelModel, Window};

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

pub fn cycles(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut c = 0;
    for s in 0..perm.len() {
        if !seen[s] {
            c += 1;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
    }
    c
}

/// `Σ_ξ α^{n−ν(ξ)} Π_i a_{i,ξ(i)}` by enumerating every permutation.
pub fn alpha_det(a: &DMatrix<f64>, alpha: f64) -> f64 {
    let n = a.nrows();
    permutations(n)
        .iter()
        .map(|p| alpha.powi((n - cycles(p)) as i32) * (0..n).map(|i| a[(i, p[i])]).product::<f64>())
        .sum()
}

pub fn permanent(a: &DMatrix<f64>) -> f64 {
    alpha_det(a, 1.0)
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Counts of `c` as a dense vector over `n` sites.
pub fn counts(c: &Configuration, n: usize) -> Vec<u32> {
    (0..n).map(|x| c.count(x)).collect()
}

pub fn from_counts(v: &[u32]) -> Configuration {
    Configuration::from_counts(v.iter().enumerate().filter(|(_, &c)| c > 0).map(|(x, &c)| (x, c)))
}

/// `M_η` with row/column `x` repeated `η_x` times.
pub fn repeated_submatrix(m: &DMatrix<f64>, eta: &Configuration) -> DMatrix<f64> {
    let idx = eta.expanded();
    DMatrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
}

/// `(Π b_x!)^{-1} det_α(M_η)` by enumeration.
pub fn alpha_correlation(m: &DMatrix<f64>, eta: &Configuration, alpha: f64) -> f64 {
    alpha_det(&repeated_submatrix(m, eta), alpha) / eta.factorial_product()
}

/// Exact law of a determinantal process on all sites:
/// `P(γ = S) = |det(M − 1_{S^c})|`, keyed by 0/1 count vectors.
pub fn fermion_law(m: &DMatrix<f64>) -> BTreeMap<Vec<u32>, f64> {
    let n = m.nrows();
    let mut out = BTreeMap::new();
    for mask in 0..(1usize << n) {
        let mut a = m.clone();
        for x in 0..n {
            if mask & (1 << x) == 0 {
                a[(x, x)] -= 1.0;
            }
        }
        let key: Vec<u32> = (0..n).map(|x| u32::from(mask & (1 << x) != 0)).collect();
        out.insert(key, a.determinant().abs());
    }
    out
}

/// Law of the sum of two independent count vectors.
pub fn convolve(a: &BTreeMap<Vec<u32>, f64>, b: &BTreeMap<Vec<u32>, f64>) -> BTreeMap<Vec<u32>, f64> {
    let mut out = BTreeMap::new();
    for (ka, pa) in a {
        for (kb, pb) in b {
            let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            *out.entry(k).or_insert(0.0) += pa * pb;
        }
    }
    out
}

/// `E[Π_x C(γ_x, η_x)]` under a law on count vectors.
pub fn factorial_moment(law: &BTreeMap<Vec<u32>, f64>, eta: &[u32]) -> f64 {
    law.iter()
        .map(|(g, p)| p * g.iter().zip(eta).map(|(&c, &b)| binomial(c, b)).product::<f64>())
        .sum()
}

/// Every count vector on `n` sites with total ≤ `degree` and entries ≤ `mult`.
pub fn count_vectors(n: usize, degree: u32, mult: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            let used: u32 = v.iter().sum();
            for c in 0..=mult.min(degree - used) {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// `(G)(γ) = Σ_{η ⊑ γ} G(η) Π C(γ_x, η_x)` straight from the definition.
pub fn k_transform(g: &dyn Fn(&[u32]) -> f64, gamma: &[u32]) -> f64 {
    let n = gamma.len();
    let max = *gamma.iter().max().unwrap_or(&0);
    count_vectors(n, gamma.iter().sum(), max)
        .into_iter()
        .filter(|eta| eta.iter().zip(gamma).all(|(b, c)| b <= c))
        .map(|eta| g(&eta) * eta.iter().zip(gamma).map(|(&b, &c)| binomial(c, b)).product::<f64>())
        .sum()
}

/// `(χ_{Δ1}⊙…⊙χ_{Δn})(η) = (1/n!) Σ_σ Π_i χ_{Δ_i}(x_{σ(i)})` for the
/// points `x_1…x_n` of `η` (zero unless `|η| = n`).
pub fn symmetric_indicator(windows: &[Window], eta: &Configuration) -> f64 {
    let points = eta.expanded();
    let n = windows.len();
    if points.len() != n {
        return 0.0;
    }
    let hits = permutations(n)
        .iter()
        .filter(|p| (0..n).all(|i| windows[i].contains(points[p[i]])))
        .count();
    hits as f64 / factorial(n as u32)
}

pub fn model(m: DMatrix<f64>, s: quasifree::Statistics) -> KernelModel {
    KernelModel::from_matrix(m, s).expect("valid model")
}

/// Sum of a law's probabilities on count vectors after `windows` push-forward.
pub fn pushforward(law: &BTreeMap<Vec<u32>, f64>, windows: &[Window]) -> BTreeMap<Vec<u32>, f64> {
    let mut out = BTreeMap::new();
    for (g, p) in law {
        let key: Vec<u32> = windows.iter().map(|w| w.iter().map(|x| g[x]).sum()).collect();
        *out.entry(key).or_insert(0.0) += p;
    }
    out
}

/// Law of a sum of independent Bernoulli variables.
pub fn poisson_binomial(ps: &[f64]) -> Vec<f64> {
    let mut law = vec![1.0];
    for &p in ps {
        let mut next = vec![0.0; law.len() + 1];
        for (k, &q) in law.iter().enumerate() {
            next[k] += q * (1.0 - p);
            next[k + 1] += q * p;
        }
        law = next;
    }
    law
}
