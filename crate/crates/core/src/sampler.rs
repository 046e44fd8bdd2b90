//! Exact samplers for the point processes of kernel models and empirical
//! correlation estimates.
//!
//! Sample `i` of a batch draws from its own ChaCha20 stream (`seed`,
//! stream `i`), so batches are identical however the work is scheduled.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::configspace::Configuration;
use crate::correlation::PointDistribution;
use crate::error::{Error, Result};
use crate::ground::{KernelModel, Statistics};

/// Largest tail mass accepted by [`sample_table`].
pub const MAX_TABLE_TAIL: f64 = 1e-6;

/// A reproducible batch of sampled configurations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub sites: usize,
    pub seed: u64,
    pub generator: String,
    pub configurations: Vec<Configuration>,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.configurations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configurations.is_empty()
    }

    /// One JSON configuration per line.
    pub fn to_json_lines(&self) -> Result<String> {
        let mut out = String::new();
        for c in &self.configurations {
            out.push_str(&serde_json::to_string(c)?);
            out.push('\n');
        }
        Ok(out)
    }

    pub fn cardinalities(&self) -> Vec<usize> {
        self.configurations.iter().map(Configuration::size).collect()
    }
}

fn stream(seed: u64, index: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn batch(
    sites: usize,
    count: usize,
    seed: u64,
    generator: String,
    draw: impl Fn(&mut ChaCha20Rng) -> Configuration + Sync,
) -> SampleBatch {
    let configurations = (0..count).into_par_iter().map(|i| draw(&mut stream(seed, i))).collect();
    SampleBatch { sites, seed, generator, configurations }
}

/// Determinantal sample: keep eigenvector `k` with probability `λ_k`, then
/// draw points one at a time from the projection kernel of the kept
/// vectors, conditioning after each point.
fn hkpv(values: &DVector<f64>, vectors: &DMatrix<f64>, rng: &mut impl Rng) -> Vec<usize> {
    let n = vectors.nrows();
    let kept: Vec<usize> = (0..values.len()).filter(|&k| rng.random::<f64>() < values[k]).collect();
    let mut v = DMatrix::from_fn(n, kept.len(), |r, c| vectors[(r, kept[c])]);
    let mut points = Vec::with_capacity(kept.len());
    while v.ncols() > 0 {
        let weights: Vec<f64> = (0..n).map(|x| v.row(x).norm_squared()).collect();
        let total: f64 = weights.iter().sum();
        let x = loop {
            let mut u = rng.random::<f64>() * total;
            let mut pick = n - 1;
            for (x, &w) in weights.iter().enumerate() {
                if u < w {
                    pick = x;
                    break;
                }
                u -= w;
            }
            if weights[pick] >= 1e-12 {
                break pick;
            }
        };
        points.push(x);
        // eliminate the component along e_x and re-orthonormalize
        let pivot = (0..v.ncols())
            .max_by(|&a, &b| v[(x, a)].abs().total_cmp(&v[(x, b)].abs()))
            .expect("at least one column");
        let p = v.column(pivot).into_owned();
        let mut rest: Vec<DVector<f64>> = Vec::with_capacity(v.ncols() - 1);
        for c in 0..v.ncols() {
            if c != pivot {
                let col = v.column(c) - &p * (v[(x, c)] / p[x]);
                rest.push(col);
            }
        }
        let mut ortho: Vec<DVector<f64>> = Vec::with_capacity(rest.len());
        for mut w in rest {
            for _ in 0..2 {
                for q in &ortho {
                    let d = q.dot(&w);
                    w.axpy(-d, q, 1.0);
                }
            }
            let norm = w.norm();
            if norm >= 1e-12 {
                ortho.push(w / norm);
            }
        }
        v = if ortho.is_empty() { DMatrix::zeros(n, 0) } else { DMatrix::from_columns(&ortho) };
    }
    points
}

/// Gaussian Cox sample: `g = Σ_k √(λ_k/2)(ξ_k + iη_k) v_k`, then
/// independent Poisson(|g_x|²) counts.
fn gaussian_cox(values: &DVector<f64>, vectors: &DMatrix<f64>, rng: &mut impl Rng) -> Vec<(usize, u32)> {
    let n = vectors.nrows();
    let mut re = DVector::<f64>::zeros(n);
    let mut im = DVector::<f64>::zeros(n);
    for k in 0..values.len() {
        let s = (values[k].max(0.0) / 2.0).sqrt();
        let xi: f64 = rng.sample(StandardNormal);
        let eta: f64 = rng.sample(StandardNormal);
        re.axpy(s * xi, &vectors.column(k), 1.0);
        im.axpy(s * eta, &vectors.column(k), 1.0);
    }
    let mut counts = Vec::new();
    for x in 0..n {
        let intensity = re[x] * re[x] + im[x] * im[x];
        if intensity > 0.0 {
            let c = Poisson::new(intensity).expect("positive intensity").sample(rng) as u32;
            if c > 0 {
                counts.push((x, c));
            }
        }
    }
    counts
}

fn check_fermion_spectrum(model: &KernelModel) -> Result<()> {
    let tol = model.tolerance();
    for &v in model.eigenvalues().iter() {
        if !(-tol..=1.0 + tol).contains(&v) {
            return Err(Error::Spectrum { family: "fermion".into(), eigenvalue: v });
        }
    }
    Ok(())
}

pub fn sample_fermion(model: &KernelModel, count: usize, seed: u64) -> Result<SampleBatch> {
    check_fermion_spectrum(model)?;
    let (values, vectors) = (model.eigenvalues(), model.eigenvectors());
    Ok(batch(model.size(), count, seed, "hkpv/chacha20".into(), |rng| {
        Configuration::from_sites(hkpv(values, vectors, rng))
    }))
}

pub fn sample_boson(model: &KernelModel, count: usize, seed: u64) -> Result<SampleBatch> {
    let tol = model.tolerance();
    if let Some(&v) = model.eigenvalues().iter().find(|&&v| v < -tol) {
        return Err(Error::Spectrum { family: "boson".into(), eigenvalue: v });
    }
    let (values, vectors) = (model.eigenvalues(), model.eigenvectors());
    Ok(batch(model.size(), count, seed, "gaussian-cox/chacha20".into(), |rng| {
        Configuration::from_counts(gaussian_cox(values, vectors, rng))
    }))
}

/// Superposition of `l` independent samples of the base family with kernel
/// `M/l`, for `*_like(l)` models.
pub fn sample_alpha(model: &KernelModel, count: usize, seed: u64) -> Result<SampleBatch> {
    let (l, fermionic) = match model.statistics() {
        Statistics::FermionLike(l) => (l, true),
        Statistics::BosonLike(l) => (l, false),
        other => {
            return Err(Error::Invalid(format!("sample_alpha needs a *_like model, got {}", other.family_name())))
        }
    };
    if l == 0 {
        return Err(Error::Invalid("number of copies must be positive".into()));
    }
    if fermionic {
        check_fermion_spectrum(model)?;
    }
    let values = model.eigenvalues() / f64::from(l);
    let vectors = model.eigenvectors();
    let generator = format!("{}x{l}/chacha20", if fermionic { "hkpv" } else { "gaussian-cox" });
    Ok(batch(model.size(), count, seed, generator, |rng| {
        let mut gamma = Configuration::empty();
        for _ in 0..l {
            let part = if fermionic {
                Configuration::from_sites(hkpv(&values, vectors, rng))
            } else {
                Configuration::from_counts(gaussian_cox(&values, vectors, rng))
            };
            gamma = gamma.plus(&part);
        }
        gamma
    }))
}

/// Sampler matching the model's statistics.
pub fn sample(model: &KernelModel, count: usize, seed: u64) -> Result<SampleBatch> {
    match model.statistics() {
        Statistics::Fermion => sample_fermion(model, count, seed),
        Statistics::Boson => sample_boson(model, count, seed),
        _ => sample_alpha(model, count, seed),
    }
}

/// I.i.d. draws from a finite table by inverse CDF.
pub fn sample_table(mu: &PointDistribution, count: usize, seed: u64) -> Result<SampleBatch> {
    if mu.tail_mass > MAX_TABLE_TAIL {
        return Err(Error::HeavyTail(mu.tail_mass));
    }
    let entries: Vec<(&Configuration, f64)> = mu.iter().map(|(g, p)| (g, p.max(0.0))).collect();
    let mut cdf = Vec::with_capacity(entries.len());
    let mut acc = 0.0;
    for (_, p) in &entries {
        acc += p;
        cdf.push(acc);
    }
    if acc <= 0.0 {
        return Err(Error::Invalid("distribution table has no positive mass".into()));
    }
    let sites = mu.window().sites().last().map_or(0, |&s| s + 1);
    Ok(batch(sites, count, seed, "inverse-cdf/chacha20".into(), |rng| {
        let u = rng.random::<f64>() * acc;
        let k = cdf.partition_point(|&c| c <= u).min(entries.len() - 1);
        entries[k].0.clone()
    }))
}

/// Mean and standard error of `Π_x C(γ_x, η_x)` over the batch, the
/// empirical version of `ρ̈(η)`.
pub fn estimate_correlation(batch: &SampleBatch, eta: &Configuration) -> Result<(f64, f64)> {
    let n = batch.len();
    if n == 0 {
        return Err(Error::Invalid("empty batch".into()));
    }
    let values: Vec<f64> = batch.configurations.iter().map(|g| eta.embeddings_in(g)).collect();
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return Ok((mean, 0.0));
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Ok((mean, (var / n as f64).sqrt()))
}
