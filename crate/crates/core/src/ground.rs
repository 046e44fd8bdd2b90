//! The discretized ground space: sites with cell masses, the kernel operator
//! written in orthonormal coordinates, and its square roots.
//!
//! A kernel `k(x, y)` on cells with masses `σ_x` is stored as the symmetric
//! matrix `M = D^{1/2} K D^{-1/2}`, i.e. `M_xy = k(x, y) sqrt(σ_x σ_y)`. In these
//! coordinates the window projector `P_Δ` is a 0/1 diagonal and the usual
//! symmetric eigendecomposition applies.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

pub type Site = usize;

/// Default spectral tolerance used by [`KernelModel::new`].
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// A set of sites, kept sorted and free of duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Window(Vec<Site>);

impl Window {
    pub fn new<I: IntoIterator<Item = Site>>(sites: I) -> Self {
        let mut v: Vec<Site> = sites.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Window(v)
    }

    pub fn empty() -> Self {
        Window(Vec::new())
    }

    /// All sites `0..n`.
    pub fn full(n: usize) -> Self {
        Window((0..n).collect())
    }

    pub fn singleton(site: Site) -> Self {
        Window(vec![site])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, site: Site) -> bool {
        self.0.binary_search(&site).is_ok()
    }

    pub fn sites(&self) -> &[Site] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Site> + '_ {
        self.0.iter().copied()
    }

    pub fn intersection(&self, other: &Window) -> Window {
        Window(self.0.iter().copied().filter(|s| other.contains(*s)).collect())
    }

    pub fn union(&self, other: &Window) -> Window {
        Window::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn is_subset(&self, other: &Window) -> bool {
        self.0.iter().all(|s| other.contains(*s))
    }

    pub fn is_disjoint(&self, other: &Window) -> bool {
        self.0.iter().all(|s| !other.contains(*s))
    }

    /// Position of `site` inside the window, if present.
    pub fn position(&self, site: Site) -> Option<usize> {
        self.0.binary_search(&site).ok()
    }

    pub fn check(&self, size: usize) -> Result<()> {
        match self.0.iter().find(|&&s| s >= size) {
            Some(&index) => Err(Error::InvalidSite { index, size }),
            None => Ok(()),
        }
    }

    /// Parse a comma-separated list of site indices, e.g. `"0,2,3"`.
    pub fn parse(text: &str) -> Result<Window> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Window::empty());
        }
        text.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Invalid(format!("bad site index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Window::new)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<Site> for Window {
    fn from_iter<I: IntoIterator<Item = Site>>(iter: I) -> Self {
        Window::new(iter)
    }
}

/// Particle statistics of a kernel model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "StatisticsRepr", into = "StatisticsRepr")]
pub enum Statistics {
    Fermion,
    Boson,
    /// Superposition of `l` independent fermion processes with kernel `K/l`.
    FermionLike(u32),
    /// Superposition of `l` independent boson processes with kernel `K/l`.
    BosonLike(u32),
}

impl Statistics {
    /// Exponent of the Vere-Jones α-determinant describing the correlations.
    pub fn alpha(self) -> f64 {
        match self {
            Statistics::Fermion => -1.0,
            Statistics::Boson => 1.0,
            Statistics::FermionLike(l) => -1.0 / l as f64,
            Statistics::BosonLike(l) => 1.0 / l as f64,
        }
    }

    /// Number of superposed copies (1 for the plain families).
    pub fn copies(self) -> u32 {
        match self {
            Statistics::Fermion | Statistics::Boson => 1,
            Statistics::FermionLike(l) | Statistics::BosonLike(l) => l,
        }
    }

    pub fn is_fermionic(self) -> bool {
        matches!(self, Statistics::Fermion | Statistics::FermionLike(_))
    }

    /// The single-copy family this one is built from.
    pub fn base(self) -> Statistics {
        if self.is_fermionic() {
            Statistics::Fermion
        } else {
            Statistics::Boson
        }
    }

    pub fn family_name(self) -> &'static str {
        match self {
            Statistics::Fermion => "fermion",
            Statistics::Boson => "boson",
            Statistics::FermionLike(_) => "fermion_like",
            Statistics::BosonLike(_) => "boson_like",
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistics::Fermion | Statistics::Boson => f.write_str(self.family_name()),
            Statistics::FermionLike(l) | Statistics::BosonLike(l) => {
                write!(f, "{}({l})", self.family_name())
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct StatisticsRepr {
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    l: Option<u32>,
}

impl TryFrom<StatisticsRepr> for Statistics {
    type Error = String;

    fn try_from(r: StatisticsRepr) -> std::result::Result<Self, String> {
        let need_l = |l: Option<u32>| match l {
            Some(l) if l >= 1 => Ok(l),
            Some(l) => Err(format!("copy count l must be >= 1, got {l}")),
            None => Err(format!("family {} requires an integer l", r.family)),
        };
        match r.family.as_str() {
            "fermion" => Ok(Statistics::Fermion),
            "boson" => Ok(Statistics::Boson),
            "fermion_like" => need_l(r.l).map(Statistics::FermionLike),
            "boson_like" => need_l(r.l).map(Statistics::BosonLike),
            other => Err(format!("unknown statistics family {other:?}")),
        }
    }
}

impl From<Statistics> for StatisticsRepr {
    fn from(s: Statistics) -> Self {
        let l = match s {
            Statistics::FermionLike(l) | Statistics::BosonLike(l) => Some(l),
            _ => None,
        };
        StatisticsRepr { family: s.family_name().to_string(), l }
    }
}

/// Finite set of labelled cells with positive masses σ_x.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroundSpace {
    labels: Vec<String>,
    weights: Vec<f64>,
}

impl GroundSpace {
    pub fn new(labels: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(Error::Dimension(format!(
                "{} labels but {} weights",
                labels.len(),
                weights.len()
            )));
        }
        for (site, &value) in weights.iter().enumerate() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositiveWeight { site, value });
            }
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSpace { labels, weights })
    }

    /// `n` sites labelled `x0, x1, …` with unit mass.
    pub fn unit(n: usize) -> Self {
        GroundSpace {
            labels: (0..n).map(|i| format!("x{i}")).collect(),
            weights: vec![1.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn check_site(&self, site: Site) -> Result<()> {
        if site < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidSite { index: site, size: self.len() })
        }
    }
}

/// A validated kernel: ground space, symmetric matrix in orthonormal
/// coordinates, statistics family and a cached eigendecomposition.
#[derive(Clone, Debug)]
pub struct KernelModel {
    ground: GroundSpace,
    matrix: DMatrix<f64>,
    statistics: Statistics,
    tolerance: f64,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl KernelModel {
    /// Validate and build a model with [`DEFAULT_TOLERANCE`].
    pub fn new(ground: GroundSpace, matrix: DMatrix<f64>, statistics: Statistics) -> Result<Self> {
        validate_model(ground, matrix, statistics, DEFAULT_TOLERANCE)
    }

    /// Unit-weight ground space of matching size.
    pub fn from_matrix(matrix: DMatrix<f64>, statistics: Statistics) -> Result<Self> {
        let ground = GroundSpace::unit(matrix.nrows());
        Self::new(ground, matrix, statistics)
    }

    pub fn ground(&self) -> &GroundSpace {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.len()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Eigenvalues in ascending order, clamped into the admissible range.
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// Orthonormal eigenvectors, one per column, matching [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// The same kernel under a different statistics family.
    pub fn with_statistics(&self, statistics: Statistics) -> Result<Self> {
        validate_model(self.ground.clone(), self.matrix.clone(), statistics, self.tolerance)
    }

    /// Kernel `M / factor` with the given statistics.
    pub fn scaled(&self, factor: f64, statistics: Statistics) -> Result<Self> {
        validate_model(
            self.ground.clone(),
            &self.matrix / factor,
            statistics,
            self.tolerance,
        )
    }

    /// `k(x, y) = M_xy / sqrt(σ_x σ_y)`.
    pub fn point_kernel(&self, x: Site, y: Site) -> Result<f64> {
        self.ground.check_site(x)?;
        self.ground.check_site(y)?;
        let w = self.ground.weights();
        Ok(self.matrix[(x, y)] / (w[x] * w[y]).sqrt())
    }

    /// `(M1, M2)` with `M1 = sqrt(M)` and `M2 = sqrt(I - M)` (fermionic) or
    /// `sqrt(I + M)` (bosonic).
    pub fn square_roots(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        let fermionic = self.statistics.is_fermionic();
        let m1 = linalg::spectral_function(&self.eigenvalues, &self.eigenvectors, |l| l.max(0.0).sqrt());
        let m2 = linalg::spectral_function(&self.eigenvalues, &self.eigenvectors, |l| {
            if fermionic {
                (1.0 - l).max(0.0).sqrt()
            } else {
                (1.0 + l).sqrt()
            }
        });
        (m1, m2)
    }

    /// `Σ_{x∈Δ} M_xx`, the integral of `k(x, x)` over the window.
    pub fn local_trace(&self, window: &Window) -> Result<f64> {
        window.check(self.size())?;
        Ok(window.iter().map(|x| self.matrix[(x, x)]).sum())
    }

    /// Rows and columns of `M` indexed by the given site sequence (repeats allowed).
    pub fn submatrix(&self, sites: &[Site]) -> DMatrix<f64> {
        DMatrix::from_fn(sites.len(), sites.len(), |i, j| self.matrix[(sites[i], sites[j])])
    }

    /// The window projector `P_Δ` as an N×N 0/1 diagonal matrix.
    pub fn window_projector(&self, window: &Window) -> DMatrix<f64> {
        let n = self.size();
        DMatrix::from_fn(n, n, |i, j| if i == j && window.contains(i) { 1.0 } else { 0.0 })
    }
}

/// Check symmetry and the spectral constraint of the statistics family.
pub fn validate_model(
    ground: GroundSpace,
    matrix: DMatrix<f64>,
    statistics: Statistics,
    tolerance: f64,
) -> Result<KernelModel> {
    let n = ground.len();
    if matrix.nrows() != n || matrix.ncols() != n {
        return Err(Error::Dimension(format!(
            "kernel matrix is {}x{} but the ground space has {n} sites",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    if !(tolerance > 0.0) {
        return Err(Error::Invalid(format!("tolerance must be positive, got {tolerance}")));
    }
    if statistics.copies() == 0 {
        return Err(Error::Invalid("copy count l must be >= 1".into()));
    }
    if matrix.iter().any(|v| !v.is_finite()) {
        return Err(Error::Invalid("kernel matrix has non-finite entries".into()));
    }
    let asym = (&matrix - matrix.transpose()).amax();
    if asym > tolerance {
        return Err(Error::Asymmetric(asym));
    }
    let matrix = (&matrix + matrix.transpose()) * 0.5;
    let (mut eigenvalues, eigenvectors) = linalg::symmetric_eigen(&matrix);
    let spectrum_err = |eigenvalue: f64| Error::Spectrum {
        family: statistics.to_string(),
        eigenvalue,
    };
    for v in eigenvalues.iter_mut() {
        if *v < -tolerance {
            return Err(spectrum_err(*v));
        }
        if statistics.is_fermionic() && *v > 1.0 + tolerance {
            return Err(spectrum_err(*v));
        }
        if *v < 0.0 {
            *v = 0.0;
        }
        if statistics.is_fermionic() && *v > 1.0 {
            *v = 1.0;
        }
    }
    Ok(KernelModel {
        ground,
        matrix,
        statistics,
        tolerance,
        eigenvalues,
        eigenvectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn one(m: f64, stats: Statistics) -> Result<KernelModel> {
        KernelModel::from_matrix(DMatrix::from_element(1, 1, m), stats)
    }

    #[test]
    fn scalar_spectral_checks() {
        assert!(one(0.5, Statistics::Fermion).is_ok());
        assert!(matches!(one(1.5, Statistics::Fermion), Err(Error::Spectrum { .. })));
        assert!(one(1.5, Statistics::Boson).is_ok());
        assert!(matches!(one(-0.1, Statistics::Boson), Err(Error::Spectrum { .. })));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            GroundSpace::new(vec!["a".into()], vec![0.0]),
            Err(Error::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            GroundSpace::new(vec!["a".into(), "a".into()], vec![1.0, 1.0]),
            Err(Error::DuplicateLabel(_))
        ));
        let g = GroundSpace::unit(2);
        let m = DMatrix::from_element(3, 3, 0.1);
        assert!(matches!(KernelModel::new(g.clone(), m, Statistics::Fermion), Err(Error::Dimension(_))));
        let m = DMatrix::from_row_slice(2, 2, &[0.5, 0.1, 0.2, 0.5]);
        assert!(matches!(KernelModel::new(g, m, Statistics::Fermion), Err(Error::Asymmetric(_))));
    }

    #[test]
    fn tiny_asymmetry_is_symmetrized() {
        let m = DMatrix::from_row_slice(2, 2, &[0.5, 0.2, 0.2 + 1e-12, 0.5]);
        let model = KernelModel::from_matrix(m, Statistics::Fermion).unwrap();
        assert_eq!(model.point_kernel(0, 1).unwrap(), model.point_kernel(1, 0).unwrap());
    }

    #[test]
    fn point_kernel_divides_by_weights() {
        let g = GroundSpace::new(vec!["a".into(), "b".into()], vec![4.0, 1.0]).unwrap();
        let m = DMatrix::from_row_slice(2, 2, &[0.6, 0.5, 0.5, 0.6]);
        let model = KernelModel::new(g, m, Statistics::Boson).unwrap();
        assert_abs_diff_eq!(model.point_kernel(0, 1).unwrap(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(model.point_kernel(1, 1).unwrap(), 0.6, epsilon = 1e-15);
        assert!(matches!(model.point_kernel(2, 0), Err(Error::InvalidSite { .. })));

        let unit = KernelModel::from_matrix(
            DMatrix::from_row_slice(2, 2, &[0.5, 0.25, 0.25, 0.5]),
            Statistics::Fermion,
        )
        .unwrap();
        assert_abs_diff_eq!(unit.point_kernel(0, 1).unwrap(), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn scalar_square_roots() {
        let (m1, m2) = one(0.25, Statistics::Fermion).unwrap().square_roots();
        assert_abs_diff_eq!(m1[(0, 0)], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(m2[(0, 0)], 0.75_f64.sqrt(), epsilon = 1e-15);
        let (_, m2) = one(0.25, Statistics::Boson).unwrap().square_roots();
        assert_abs_diff_eq!(m2[(0, 0)], 1.25_f64.sqrt(), epsilon = 1e-15);

        let id = KernelModel::from_matrix(DMatrix::identity(2, 2), Statistics::Fermion).unwrap();
        let (m1, m2) = id.square_roots();
        assert!((m1 - DMatrix::<f64>::identity(2, 2)).amax() < 1e-15);
        assert!(m2.amax() < 1e-15);
    }

    #[test]
    fn local_trace_cases() {
        let diag = KernelModel::from_matrix(
            DMatrix::from_diagonal(&DVector::from_vec(vec![0.3, 0.7])),
            Statistics::Fermion,
        )
        .unwrap();
        assert_eq!(diag.local_trace(&Window::empty()).unwrap(), 0.0);
        assert_abs_diff_eq!(diag.local_trace(&Window::full(2)).unwrap(), 1.0, epsilon = 1e-15);
        let m = KernelModel::from_matrix(
            DMatrix::from_row_slice(2, 2, &[0.5, 0.2, 0.2, 0.5]),
            Statistics::Fermion,
        )
        .unwrap();
        assert_abs_diff_eq!(m.local_trace(&Window::singleton(0)).unwrap(), 0.5, epsilon = 1e-15);
        assert!(m.local_trace(&Window::singleton(5)).is_err());
    }

    #[test]
    fn statistics_json_shape() {
        let s: Statistics = serde_json::from_str(r#"{"family":"fermion_like","l":2}"#).unwrap();
        assert_eq!(s, Statistics::FermionLike(2));
        assert_eq!(serde_json::to_string(&Statistics::Boson).unwrap(), r#"{"family":"boson"}"#);
        assert!(serde_json::from_str::<Statistics>(r#"{"family":"boson_like"}"#).is_err());
        assert!(serde_json::from_str::<Statistics>(r#"{"family":"anyon"}"#).is_err());
    }

    #[test]
    fn window_set_operations() {
        let a = Window::new([3, 1, 2, 1]);
        assert_eq!(a.sites(), &[1, 2, 3]);
        let b = Window::parse("2, 4").unwrap();
        assert_eq!(a.intersection(&b), Window::singleton(2));
        assert_eq!(a.union(&b).len(), 4);
        assert!(!a.is_disjoint(&b));
        assert!(Window::parse("1,x").is_err());
        assert_eq!(a.to_string(), "{1,2,3}");
    }
}
