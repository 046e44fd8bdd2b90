//! Correlation tables of point processes on the ground space and the
//! dictionary between correlation tables and probability distributions.
//!
//! A correlation table stores the mass `ρ̈(η)` of every configuration `η`
//! within caps. Distributions and tables are related by the per-site
//! binomial transforms `ρ̈(η) = Σ_γ μ(γ) Π_x C(c_x, b_x)` and its inverse.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphadet;
use crate::configspace::{binomial, enumerate_configurations, Caps, Configuration, ConfigurationFunction};
use crate::error::{Error, Result};
use crate::ground::{KernelModel, Statistics, Window};
use crate::linalg;

/// Largest number of basis configurations accepted by [`pd_gram`].
pub const MAX_GRAM_DIMENSION: usize = 4096;
/// Largest dense index box used by the per-site transforms.
pub const MAX_BOX: usize = 1 << 24;

/// Correlation masses `ρ̈(η)` on configurations within a window and caps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTable {
    /// Family of the kernel the table came from, if any.
    pub statistics: Option<Statistics>,
    /// Whether every configuration outside the caps has mass exactly 0.
    pub complete: bool,
    #[serde(flatten)]
    function: ConfigurationFunction,
}

impl CorrelationTable {
    pub fn new(function: ConfigurationFunction, statistics: Option<Statistics>, complete: bool) -> Self {
        CorrelationTable { statistics, complete, function }
    }

    pub fn window(&self) -> &Window {
        self.function.window()
    }

    pub fn caps(&self) -> Caps {
        self.function.caps()
    }

    pub fn function(&self) -> &ConfigurationFunction {
        &self.function
    }

    pub fn get(&self, eta: &Configuration) -> f64 {
        self.function.get(eta)
    }

    /// Like [`get`](Self::get) but fails when `η` lies outside the caps and
    /// the table does not know it to vanish there.
    pub fn get_checked(&self, eta: &Configuration) -> Result<f64> {
        if eta.fits(self.window(), self.caps()) || (self.complete && eta.within(self.window())) {
            return Ok(self.get(eta));
        }
        if !eta.within(self.window()) {
            return Err(Error::Invalid(format!("{eta} is not inside the table window {}", self.window())));
        }
        // a sum of l simple processes never puts more than l points on a site
        if let Some(s) = self.statistics.filter(|s| s.is_fermionic()) {
            if eta.max_multiplicity() > s.copies() {
                return Ok(0.0);
            }
        }
        Err(Error::CapOverflow(format!("{eta} lies outside the table caps")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Configuration, f64)> {
        self.function.iter()
    }

    /// The table of the process restricted to a sub-window.
    pub fn restrict(&self, window: &Window) -> Result<CorrelationTable> {
        if !window.is_subset(self.window()) {
            return Err(Error::Invalid(format!("{window} is not inside the table window {}", self.window())));
        }
        let table = self
            .iter()
            .filter(|(eta, _)| eta.within(window))
            .map(|(eta, v)| (eta.clone(), v))
            .collect();
        Ok(CorrelationTable {
            statistics: self.statistics,
            complete: self.complete,
            function: ConfigurationFunction::from_table(window.clone(), self.caps(), table),
        })
    }

    /// `ρ(Γ^{(n)}_Δ)`, the total mass of `n`-point configurations.
    pub fn level_mass(&self, n: usize) -> f64 {
        self.iter().filter(|(eta, _)| eta.size() == n).map(|(_, v)| v).sum()
    }
}

/// A probability table `γ ↦ μ(γ)` on configurations within caps plus the
/// mass that falls outside the caps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointDistribution {
    pub tail_mass: f64,
    #[serde(flatten)]
    function: ConfigurationFunction,
}

impl PointDistribution {
    pub fn new(function: ConfigurationFunction, tail_mass: f64) -> Self {
        PointDistribution { tail_mass, function }
    }

    /// The process with no points.
    pub fn empty(window: Window) -> Self {
        PointDistribution { tail_mass: 0.0, function: ConfigurationFunction::xi(window, Caps::new(0, 0)) }
    }

    /// A deterministic configuration.
    pub fn deterministic(gamma: Configuration, window: Window) -> Result<Self> {
        let caps = Caps::new(gamma.size(), gamma.max_multiplicity());
        Ok(PointDistribution { tail_mass: 0.0, function: ConfigurationFunction::delta(gamma, window, caps)? })
    }

    pub fn window(&self) -> &Window {
        self.function.window()
    }

    pub fn caps(&self) -> Caps {
        self.function.caps()
    }

    pub fn function(&self) -> &ConfigurationFunction {
        &self.function
    }

    pub fn probability(&self, gamma: &Configuration) -> f64 {
        self.function.get(gamma)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Configuration, f64)> {
        self.function.iter()
    }

    pub fn total_mass(&self) -> f64 {
        self.iter().map(|(_, p)| p).sum()
    }

    pub fn min_probability(&self) -> f64 {
        let all = enumerate_len(self.window(), self.caps());
        let floor = if self.function.len() < all { 0.0 } else { f64::INFINITY };
        self.iter().map(|(_, p)| p).fold(floor, f64::min)
    }

    /// Copy with probabilities in `[−tol, 0)` set to 0, for reporting.
    pub fn clamped(&self, tol: f64) -> PointDistribution {
        let table = self
            .iter()
            .map(|(g, p)| (g.clone(), if p < 0.0 && p >= -tol { 0.0 } else { p }))
            .collect();
        PointDistribution {
            tail_mass: self.tail_mass,
            function: ConfigurationFunction::from_table(self.window().clone(), self.caps(), table),
        }
    }
}

fn enumerate_len(window: &Window, caps: Caps) -> usize {
    DenseBox::new(window, caps).map_or(usize::MAX, |b| b.degree_filtered_len())
}

/// Row-major index box over per-site counts `0..=min(mult, degree)` with
/// the first window site varying fastest.
struct DenseBox {
    sites: Vec<usize>,
    dims: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
    caps: Caps,
}

impl DenseBox {
    fn new(window: &Window, caps: Caps) -> Result<Self> {
        let side = (caps.multiplicity as usize).min(caps.degree) + 1;
        let sites = window.sites().to_vec();
        let mut strides = Vec::with_capacity(sites.len());
        let mut len = 1usize;
        for _ in &sites {
            strides.push(len);
            len = len
                .checked_mul(side)
                .filter(|&l| l <= MAX_BOX)
                .ok_or_else(|| Error::Guard(format!("index box over {} sites exceeds {MAX_BOX}", sites.len())))?;
        }
        Ok(DenseBox { dims: vec![side; sites.len()], sites, strides, len, caps })
    }

    fn counts(&self, mut idx: usize) -> Vec<usize> {
        self.dims
            .iter()
            .map(|&d| {
                let c = idx % d;
                idx /= d;
                c
            })
            .collect()
    }

    fn configuration(&self, idx: usize) -> Configuration {
        let counts = self.counts(idx);
        Configuration::from_counts(self.sites.iter().zip(counts).map(|(&s, c)| (s, c as u32)))
    }

    fn index(&self, eta: &Configuration) -> Option<usize> {
        let mut idx = 0;
        for &(s, c) in eta.counts() {
            let k = self.sites.binary_search(&s).ok()?;
            if c as usize >= self.dims[k] {
                return None;
            }
            idx += c as usize * self.strides[k];
        }
        Some(idx)
    }

    fn degree_filtered_len(&self) -> usize {
        (0..self.len).filter(|&i| self.counts(i).iter().sum::<usize>() <= self.caps.degree).count()
    }

    fn load(&self, f: &ConfigurationFunction) -> Vec<f64> {
        let mut data = vec![0.0; self.len];
        for (eta, v) in f.iter() {
            if let Some(i) = self.index(eta) {
                data[i] = v;
            }
        }
        data
    }

    fn store(&self, data: &[f64], window: &Window) -> ConfigurationFunction {
        let table: BTreeMap<Configuration, f64> = (0..self.len)
            .filter(|&i| data[i] != 0.0)
            .map(|i| (self.configuration(i), data[i]))
            .filter(|(eta, _)| eta.size() <= self.caps.degree)
            .collect();
        ConfigurationFunction::from_table(window.clone(), self.caps, table)
    }

    /// Apply `new[c] = Σ_b coef(c, b) old[b]` along every axis.
    fn transform(&self, data: &mut [f64], coef: impl Fn(usize, usize) -> f64) {
        let mut line = Vec::new();
        for (axis, &d) in self.dims.iter().enumerate() {
            let stride = self.strides[axis];
            let t: Vec<Vec<f64>> = (0..d).map(|c| (0..d).map(|b| coef(c, b)).collect()).collect();
            for base in 0..self.len {
                if (base / stride) % d != 0 {
                    continue;
                }
                line.clear();
                line.extend((0..d).map(|b| data[base + b * stride]));
                for (c, row) in t.iter().enumerate() {
                    data[base + c * stride] = row.iter().zip(&line).map(|(a, b)| a * b).sum();
                }
            }
        }
    }
}

/// `ρ̈(η) = (Π_x b_x!)^{-1} det_α(M_η)` for every `η` within the window and
/// caps; `M_η` repeats row and column `x` exactly `b_x` times. Fermion
/// tables only carry simple configurations.
pub fn correlation_from_kernel(model: &KernelModel, window: &Window, caps: Caps) -> Result<CorrelationTable> {
    window.check(model.size())?;
    let statistics = model.statistics();
    let caps = if statistics == Statistics::Fermion {
        Caps::new(caps.degree.min(window.len()), 1)
    } else {
        caps
    };
    let configurations = enumerate_configurations(window, caps);
    let alpha = statistics.alpha();
    let values: Vec<(Configuration, f64)> = configurations
        .into_par_iter()
        .map(|eta| {
            let v = correlation_entry(model, &eta, alpha)?;
            Ok((eta, v))
        })
        .collect::<Result<_>>()?;
    let complete = statistics == Statistics::Fermion && caps.degree >= window.len();
    Ok(CorrelationTable::new(
        ConfigurationFunction::from_table(window.clone(), caps, values.into_iter().collect()),
        Some(statistics),
        complete,
    ))
}

/// A single correlation mass `(Π_x b_x!)^{-1} det_α(M_η)`.
pub fn correlation_entry(model: &KernelModel, eta: &Configuration, alpha: f64) -> Result<f64> {
    if eta.is_empty() {
        return Ok(1.0);
    }
    if alpha == 1.0 {
        let sites: Vec<usize> = eta.counts().iter().map(|&(s, _)| s).collect();
        let mult: Vec<u32> = eta.counts().iter().map(|&(_, c)| c).collect();
        let per = alphadet::permanent_repeated(&model.submatrix(&sites), &mult)?;
        return Ok(per / eta.factorial_product());
    }
    if alpha == -1.0 && !eta.is_simple() {
        return Ok(0.0);
    }
    let m = model.submatrix(&eta.expanded());
    let value = if alpha == -1.0 {
        alphadet::determinant(&m)
    } else if m.nrows() <= alphadet::MAX_CYCLE_DP_ORDER {
        alphadet::alpha_determinant_cycles(&m, alpha)?
    } else {
        alphadet::alpha_determinant(&m, alpha)?
    };
    Ok(value / eta.factorial_product())
}

/// Multiset inclusion–exclusion
/// `μ(γ) = Σ_{η ⊒ γ} (−1)^{|η|−|γ|} Π_x C(b_x, c_x) ρ̈(η)`
/// over the table entries inside `window`. Fails when some probability is
/// below `−tol`.
pub fn distribution_from_correlation(
    rho: &CorrelationTable,
    window: &Window,
    tol: f64,
) -> Result<PointDistribution> {
    let rho = rho.restrict(window)?;
    let caps = rho.caps();
    let dense = DenseBox::new(window, caps)?;
    let mut data = dense.load(rho.function());
    dense.transform(&mut data, |c, b| {
        if b < c {
            0.0
        } else {
            let s = if (b - c) % 2 == 0 { 1.0 } else { -1.0 };
            s * binomial(b as u32, c as u32)
        }
    });
    let function = dense.store(&data, window);
    let dist = PointDistribution::new(function, 0.0);
    let min = dist.min_probability();
    if min < -tol {
        return Err(Error::NotRealizable { min });
    }
    let tail = 1.0 - dist.total_mass();
    Ok(PointDistribution { tail_mass: tail, ..dist })
}

/// `ρ̈(η) = Σ_γ μ(γ) Π_x C(c_x, b_x)`, the expectation of the K-transform of
/// the indicator of `η`.
pub fn correlation_from_distribution(mu: &PointDistribution) -> Result<CorrelationTable> {
    let window = mu.window().clone();
    let dense = DenseBox::new(&window, mu.caps())?;
    let mut data = dense.load(mu.function());
    dense.transform(&mut data, |b, c| binomial(c as u32, b as u32));
    let function = dense.store(&data, &window);
    Ok(CorrelationTable::new(function, None, mu.tail_mass == 0.0))
}

/// Exact distribution of the process of `model` on `window`, truncated to
/// `caps`. Fermion: inclusion–exclusion of the determinant table. Boson:
/// `μ(γ) = det(1+M_Δ)^{-1} per(J_γ) / Π_x c_x!` with `J = M_Δ(1+M_Δ)^{-1}`.
/// The α-families are `l`-fold superpositions of the base family with
/// kernel `M/l`.
pub fn distribution_from_kernel(model: &KernelModel, window: &Window, caps: Caps) -> Result<PointDistribution> {
    window.check(model.size())?;
    match model.statistics() {
        Statistics::Fermion => {
            let rho = correlation_from_kernel(model, window, Caps::simple(window.len()))?;
            let mut mu = distribution_from_correlation(&rho, window, model.tolerance().max(1e-9))?;
            if caps.degree < window.len() || caps.multiplicity == 0 {
                mu = truncate(&mu, caps);
            }
            Ok(mu)
        }
        Statistics::Boson => boson_janossy(model, window, caps),
        family @ (Statistics::FermionLike(l) | Statistics::BosonLike(l)) => {
            if l == 0 {
                return Err(Error::Invalid("number of copies must be positive".into()));
            }
            let copy = model.scaled(f64::from(l), family.base())?;
            let single = distribution_from_kernel(&copy, window, caps)?;
            convolution_power(&single, l, caps)
        }
    }
}

fn boson_janossy(model: &KernelModel, window: &Window, caps: Caps) -> Result<PointDistribution> {
    let radius = model.spectral_radius();
    if radius >= 1.0 {
        return Err(Error::BosonDivergent(radius));
    }
    let sites = window.sites();
    let m = model.submatrix(sites);
    let k = sites.len();
    let shifted = DMatrix::<f64>::identity(k, k) + &m;
    let inverse = shifted
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Invalid("1 + M_Δ is singular".into()))?;
    let j = &m * inverse;
    let j = (&j + j.transpose()) * 0.5;
    let void = 1.0 / alphadet::determinant(&shifted);
    let table: BTreeMap<Configuration, f64> = enumerate_configurations(window, caps)
        .into_par_iter()
        .map(|gamma| {
            let mult: Vec<u32> = sites.iter().map(|&s| gamma.count(s)).collect();
            let per = alphadet::permanent_repeated(&j, &mult)?;
            Ok((gamma.clone(), void * per / gamma.factorial_product()))
        })
        .collect::<Result<_>>()?;
    let function = ConfigurationFunction::from_table(window.clone(), caps, table);
    let dist = PointDistribution::new(function, 0.0);
    let tail = (1.0 - dist.total_mass()).max(0.0);
    Ok(PointDistribution { tail_mass: tail, ..dist })
}

fn truncate(mu: &PointDistribution, caps: Caps) -> PointDistribution {
    let table: BTreeMap<Configuration, f64> = mu
        .iter()
        .filter(|(g, _)| g.size() <= caps.degree && g.max_multiplicity() <= caps.multiplicity)
        .map(|(g, p)| (g.clone(), p))
        .collect();
    let kept: f64 = table.values().sum();
    let total = mu.total_mass() + mu.tail_mass;
    PointDistribution {
        tail_mass: total - kept,
        function: ConfigurationFunction::from_table(mu.window().clone(), caps, table),
    }
}

/// Distribution of the independent superposition, with exactly the caps
/// needed to hold every sum.
pub fn convolve(mu1: &PointDistribution, mu2: &PointDistribution) -> Result<PointDistribution> {
    let caps = Caps::new(
        mu1.caps().degree + mu2.caps().degree,
        mu1.caps().multiplicity + mu2.caps().multiplicity,
    );
    convolve_capped(mu1, mu2, caps)
}

/// Superposition truncated to `caps`; mass beyond the caps is added to the
/// tail.
pub fn convolve_capped(mu1: &PointDistribution, mu2: &PointDistribution, caps: Caps) -> Result<PointDistribution> {
    let window = mu1.window().union(mu2.window());
    let (t1, t2) = (mu1.tail_mass, mu2.tail_mass);
    let dense = DenseBox::new(&window, caps)?;
    let entries = |mu: &PointDistribution| -> Vec<(Vec<u32>, usize, f64)> {
        mu.iter()
            .map(|(g, p)| (window.iter().map(|s| g.count(s)).collect(), g.size(), p))
            .collect()
    };
    let (e1, e2) = (entries(mu1), entries(mu2));
    let mut data = vec![0.0; dense.len];
    let mut overflow = 0.0;
    for (c1, n1, p1) in &e1 {
        for (c2, n2, p2) in &e2 {
            let fits = n1 + n2 <= caps.degree
                && c1.iter().zip(c2).all(|(a, b)| a + b <= caps.multiplicity);
            if fits {
                let idx: usize = c1
                    .iter()
                    .zip(c2)
                    .zip(&dense.strides)
                    .map(|((a, b), st)| (a + b) as usize * st)
                    .sum();
                data[idx] += p1 * p2;
            } else {
                overflow += p1 * p2;
            }
        }
    }
    let tail = t1 + t2 - t1 * t2 + overflow;
    Ok(PointDistribution { tail_mass: tail, function: dense.store(&data, &window) })
}

/// The `l`-fold superposition of independent copies.
pub fn convolution_power(mu: &PointDistribution, l: u32, caps: Caps) -> Result<PointDistribution> {
    let mut acc = PointDistribution::empty(mu.window().clone());
    for _ in 0..l {
        acc = convolve_capped(&acc, mu, caps)?;
    }
    Ok(acc)
}

/// `C_Δ = max_{1≤n≤cap} (ρ(Γ^{(n)}_Δ))^{1/n}` over the table entries inside
/// `window`.
pub fn local_bound(rho: &CorrelationTable, window: &Window) -> Result<f64> {
    let rho = rho.restrict(window)?;
    let mut levels = vec![0.0; rho.caps().degree + 1];
    for (eta, v) in rho.iter() {
        levels[eta.size()] += v;
    }
    Ok(levels
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, &m)| m.max(0.0).powf(1.0 / n as f64))
        .fold(0.0, f64::max))
}

/// Gram matrix `[∫ δ_η ⋆ δ_ξ dρ̈]` over configurations inside `window` with
/// at most `degree_cap` points, and its minimal eigenvalue.
pub fn pd_gram(rho: &CorrelationTable, window: &Window, degree_cap: usize) -> Result<(f64, DMatrix<f64>)> {
    let multiplicity = if rho.complete { rho.caps().multiplicity.max(1) } else { rho.caps().multiplicity };
    let basis = enumerate_configurations(window, Caps::new(degree_cap, multiplicity.min(degree_cap as u32)));
    let n = basis.len();
    if n > MAX_GRAM_DIMENSION {
        return Err(Error::Guard(format!("Gram dimension {n} exceeds {MAX_GRAM_DIMENSION}")));
    }
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (a, b) = (&basis[i], &basis[j]);
                    let mut acc = 0.0;
                    for shared in a.meet(b).sub_configurations() {
                        let left = a.minus(&shared).expect("shared ⊑ a");
                        let right = b.minus(&shared).expect("shared ⊑ b");
                        let eta = left.plus(&shared).plus(&right);
                        let weight = eta.factorial_product()
                            / (left.factorial_product() * shared.factorial_product() * right.factorial_product());
                        acc += weight * rho.get_checked(&eta)?;
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let gram = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let sym = (&gram + gram.transpose()) * 0.5;
    Ok((linalg::min_eigenvalue(&sym), gram))
}

fn check_disjoint(windows: &[Window]) -> Result<()> {
    for i in 0..windows.len() {
        for j in i + 1..windows.len() {
            if !windows[i].is_disjoint(&windows[j]) {
                return Err(Error::OverlappingWindows);
            }
        }
    }
    Ok(())
}

/// `L(y) = Σ_η Exp(Σ_j (e^{i y_j} − 1) χ_{Δ_j}, η) ρ̈(η)` for disjoint
/// windows.
pub fn characteristic_fn(rho: &CorrelationTable, windows: &[Window], y: &[f64]) -> Result<Complex64> {
    if windows.len() != y.len() {
        return Err(Error::Dimension(format!("{} windows but {} arguments", windows.len(), y.len())));
    }
    check_disjoint(windows)?;
    let phase: Vec<Complex64> = y.iter().map(|&t| Complex64::from_polar(1.0, t) - 1.0).collect();
    let phi = |site: usize| -> Complex64 {
        windows
            .iter()
            .zip(&phase)
            .find(|(w, _)| w.contains(site))
            .map_or(Complex64::new(0.0, 0.0), |(_, &p)| p)
    };
    let mut total = Complex64::new(0.0, 0.0);
    for (eta, v) in rho.iter() {
        let mut term = Complex64::new(v, 0.0);
        for &(s, c) in eta.counts() {
            term *= phi(s).powu(c);
        }
        total += term;
    }
    Ok(total)
}

/// `E_μ[exp(i Σ_j y_j γ(Δ_j))]` computed directly from the table.
pub fn characteristic_of_distribution(mu: &PointDistribution, windows: &[Window], y: &[f64]) -> Complex64 {
    mu.iter()
        .map(|(g, p)| {
            let t: f64 = windows.iter().zip(y).map(|(w, &yj)| yj * f64::from(g.count_in(w))).sum();
            Complex64::from_polar(p, t)
        })
        .sum()
}

/// `E_μ[Π_j γ(Δ_j)^{k_j}]`.
pub fn count_moments(mu: &PointDistribution, windows: &[Window], powers: &[u32]) -> Result<f64> {
    if windows.len() != powers.len() {
        return Err(Error::Dimension(format!("{} windows but {} powers", windows.len(), powers.len())));
    }
    Ok(mu
        .iter()
        .map(|(g, p)| {
            p * windows
                .iter()
                .zip(powers)
                .map(|(w, &k)| f64::from(g.count_in(w)).powi(k as i32))
                .product::<f64>()
        })
        .sum())
}

/// Push-forward of `μ` under `γ ↦ (γ(Δ_1), …, γ(Δ_n))`.
pub fn count_pushforward(mu: &PointDistribution, windows: &[Window]) -> BTreeMap<Vec<u32>, f64> {
    let mut out = BTreeMap::new();
    for (g, p) in mu.iter() {
        let key: Vec<u32> = windows.iter().map(|w| g.count_in(w)).collect();
        *out.entry(key).or_insert(0.0) += p;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(m: f64, s: Statistics) -> KernelModel {
        KernelModel::from_matrix(DMatrix::from_element(1, 1, m), s).unwrap()
    }

    #[test]
    fn single_site_fermion() {
        let model = one(0.5, Statistics::Fermion);
        let w = Window::full(1);
        let rho = correlation_from_kernel(&model, &w, Caps::simple(1)).unwrap();
        assert_eq!(rho.get(&Configuration::empty()), 1.0);
        assert_eq!(rho.get(&Configuration::from_sites([0])), 0.5);
        let mu = distribution_from_correlation(&rho, &w, 1e-10).unwrap();
        assert!((mu.probability(&Configuration::empty()) - 0.5).abs() < 1e-15);
        assert!((mu.probability(&Configuration::from_sites([0])) - 0.5).abs() < 1e-15);
        assert!((local_bound(&rho, &w).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn boson_geometric_law() {
        let model = one(0.5, Statistics::Boson);
        let w = Window::full(1);
        let mu = distribution_from_kernel(&model, &w, Caps::new(20, 20)).unwrap();
        for c in 0..=20u32 {
            let want = (2.0 / 3.0) * (1.0_f64 / 3.0).powi(c as i32);
            let got = mu.probability(&Configuration::from_counts([(0, c)]));
            assert!((got - want).abs() < 1e-14, "c={c}");
        }
        assert!(mu.tail_mass < 1e-9);
    }

    #[test]
    fn fermion_like_two_copies_single_site() {
        let m = 0.6;
        let model = one(m, Statistics::FermionLike(2));
        let rho = correlation_from_kernel(&model, &Window::full(1), Caps::new(2, 2)).unwrap();
        assert!((rho.get(&Configuration::from_counts([(0, 2)])) - m * m / 4.0).abs() < 1e-15);
        let mu = distribution_from_kernel(&model, &Window::full(1), Caps::new(2, 2)).unwrap();
        let back = correlation_from_distribution(&mu).unwrap();
        assert!(back.function().max_abs_diff(rho.function()) < 1e-15);
    }
}
