//! Finite configurations (multisets of sites), functions on them, the
//! K-transform with its inverse, and the ⋆-convolution.
//!
//! Configurations carry multiplicities. On simple configurations every
//! operation here reduces to the usual subset formulas; on multisets the
//! K-transform counts sub-multisets with `Π_x C(c_x, b_x)`, i.e. it sums over
//! subsets of individually labelled points.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphadet;
use crate::error::{Error, Result};
use crate::ground::{Site, Window};

/// Hard limit on total points handled by table operations.
pub const MAX_DEGREE: usize = 64;
/// Permutation-sum guard for [`SymmetricIndicator`].
pub const MAX_INDICATOR_ORDER: usize = 10;

/// A finite multiset of sites, stored as sorted `(site, count)` pairs with
/// positive counts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    counts: Vec<(Site, u32)>,
}

impl Configuration {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Multiset from a list of sites; repeated sites increase the count.
    pub fn from_sites<I: IntoIterator<Item = Site>>(sites: I) -> Self {
        let mut map: BTreeMap<Site, u32> = BTreeMap::new();
        for s in sites {
            *map.entry(s).or_default() += 1;
        }
        Configuration { counts: map.into_iter().collect() }
    }

    /// Multiset from `(site, count)` pairs; zero counts are dropped and
    /// repeated sites are merged.
    pub fn from_counts<I: IntoIterator<Item = (Site, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<Site, u32> = BTreeMap::new();
        for (s, c) in pairs {
            if c > 0 {
                *map.entry(s).or_default() += c;
            }
        }
        Configuration { counts: map.into_iter().collect() }
    }

    /// Total number of points `|η| = Σ b_x`.
    pub fn size(&self) -> usize {
        self.counts.iter().map(|&(_, c)| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        self.counts.iter().all(|&(_, c)| c == 1)
    }

    pub fn count(&self, site: Site) -> u32 {
        match self.counts.binary_search_by_key(&site, |&(s, _)| s) {
            Ok(i) => self.counts[i].1,
            Err(_) => 0,
        }
    }

    pub fn counts(&self) -> &[(Site, u32)] {
        &self.counts
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.counts.iter().map(|&(_, c)| c).max().unwrap_or(0)
    }

    /// Sites listed with multiplicity, ascending.
    pub fn expanded(&self) -> Vec<Site> {
        self.counts
            .iter()
            .flat_map(|&(s, c)| std::iter::repeat_n(s, c as usize))
            .collect()
    }

    pub fn support(&self) -> Window {
        Window::new(self.counts.iter().map(|&(s, _)| s))
    }

    pub fn within(&self, window: &Window) -> bool {
        self.counts.iter().all(|&(s, _)| window.contains(s))
    }

    /// Number of points lying in the window, `η(Δ)`.
    pub fn count_in(&self, window: &Window) -> u32 {
        self.counts
            .iter()
            .filter(|&&(s, _)| window.contains(s))
            .map(|&(_, c)| c)
            .sum()
    }

    pub fn fits(&self, window: &Window, caps: Caps) -> bool {
        self.within(window) && self.size() <= caps.degree && self.max_multiplicity() <= caps.multiplicity
    }

    /// Multiset sum.
    pub fn plus(&self, other: &Configuration) -> Configuration {
        Configuration::from_counts(self.counts.iter().chain(other.counts.iter()).copied())
    }

    /// `self ⊑ other` as multisets.
    pub fn is_sub(&self, other: &Configuration) -> bool {
        self.counts.iter().all(|&(s, c)| other.count(s) >= c)
    }

    /// Multiset difference `self − other`, if `other ⊑ self`.
    pub fn minus(&self, other: &Configuration) -> Option<Configuration> {
        if !other.is_sub(self) {
            return None;
        }
        Some(Configuration::from_counts(
            self.counts.iter().map(|&(s, c)| (s, c - other.count(s))),
        ))
    }

    /// Per-site minimum of two multisets.
    pub fn meet(&self, other: &Configuration) -> Configuration {
        Configuration::from_counts(self.counts.iter().map(|&(s, c)| (s, c.min(other.count(s)))))
    }

    /// `Π_x b_x!`.
    pub fn factorial_product(&self) -> f64 {
        self.counts.iter().map(|&(_, c)| factorial(c)).product()
    }

    /// Number of ways `self` sits inside `sup` as a set of labelled points:
    /// `Π_x C(c_x, b_x)` with `c = sup`, `b = self` (0 unless `self ⊑ sup`).
    pub fn embeddings_in(&self, sup: &Configuration) -> f64 {
        self.counts
            .iter()
            .map(|&(s, b)| binomial(sup.count(s), b))
            .product()
    }

    /// Every sub-multiset `ξ ⊑ self`, including `∅` and `self`.
    pub fn sub_configurations(&self) -> Vec<Configuration> {
        let mut out = vec![Vec::<(Site, u32)>::new()];
        for &(s, c) in &self.counts {
            let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
            for partial in &out {
                for k in 0..=c {
                    let mut p = partial.clone();
                    if k > 0 {
                        p.push((s, k));
                    }
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(|counts| Configuration { counts }).collect()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.expanded().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.counts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(Site, u32)>::deserialize(deserializer)?;
        Ok(Configuration::from_counts(pairs))
    }
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut r = 1.0;
    for i in 0..k {
        r = r * f64::from(n - i) / f64::from(i + 1);
    }
    r.round()
}

/// Bounds on total points and per-site multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Caps {
    pub degree: usize,
    pub multiplicity: u32,
}

impl Caps {
    pub fn new(degree: usize, multiplicity: u32) -> Self {
        Caps { degree, multiplicity }
    }

    /// Simple configurations of at most `degree` points.
    pub fn simple(degree: usize) -> Self {
        Caps { degree, multiplicity: 1 }
    }

    fn check(self) -> Result<()> {
        if self.degree > MAX_DEGREE {
            return Err(Error::CapOverflow(format!(
                "degree cap {} exceeds the limit {MAX_DEGREE}",
                self.degree
            )));
        }
        Ok(())
    }
}

/// All configurations inside the window within the caps, ordered by size
/// and then lexicographically.
pub fn enumerate_configurations(window: &Window, caps: Caps) -> Vec<Configuration> {
    let sites = window.sites();
    let mut out = Vec::new();
    let mut current: Vec<(Site, u32)> = Vec::new();
    fn rec(
        sites: &[Site],
        idx: usize,
        remaining: usize,
        caps: Caps,
        current: &mut Vec<(Site, u32)>,
        out: &mut Vec<Configuration>,
    ) {
        if idx == sites.len() {
            out.push(Configuration { counts: current.clone() });
            return;
        }
        let max = (caps.multiplicity as usize).min(remaining);
        for k in 0..=max {
            if k > 0 {
                current.push((sites[idx], k as u32));
            }
            rec(sites, idx + 1, remaining - k, caps, current, out);
            if k > 0 {
                current.pop();
            }
        }
    }
    rec(sites, 0, caps.degree, caps, &mut current, &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
    out
}

/// A real function on configurations inside a window, stored as a finite
/// table (absent entries are 0).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigurationFunction {
    window: Window,
    caps: Caps,
    #[serde(with = "table_serde")]
    table: BTreeMap<Configuration, f64>,
}

impl ConfigurationFunction {
    pub fn zero(window: Window, caps: Caps) -> Self {
        ConfigurationFunction { window, caps, table: BTreeMap::new() }
    }

    /// The unit `Ξ`: 1 on the empty configuration, 0 elsewhere.
    pub fn xi(window: Window, caps: Caps) -> Self {
        let mut f = Self::zero(window, caps);
        f.table.insert(Configuration::empty(), 1.0);
        f
    }

    /// Indicator of a single configuration.
    pub fn delta(eta: Configuration, window: Window, caps: Caps) -> Result<Self> {
        let mut f = Self::zero(window, caps);
        f.set(eta, 1.0)?;
        Ok(f)
    }

    /// Tabulate `f` on every configuration within the window and caps.
    pub fn from_fn(window: Window, caps: Caps, f: impl Fn(&Configuration) -> f64) -> Result<Self> {
        caps.check()?;
        let table = enumerate_configurations(&window, caps)
            .into_iter()
            .map(|eta| {
                let v = f(&eta);
                (eta, v)
            })
            .filter(|(_, v)| *v != 0.0)
            .collect();
        Ok(ConfigurationFunction { window, caps, table })
    }

    pub(crate) fn from_table(window: Window, caps: Caps, mut table: BTreeMap<Configuration, f64>) -> Self {
        table.retain(|_, v| *v != 0.0);
        ConfigurationFunction { window, caps, table }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn get(&self, eta: &Configuration) -> f64 {
        self.table.get(eta).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, eta: Configuration, value: f64) -> Result<()> {
        if !eta.fits(&self.window, self.caps) {
            return Err(Error::CapOverflow(format!(
                "configuration {eta} lies outside window {} / caps {:?}",
                self.window, self.caps
            )));
        }
        if value == 0.0 {
            self.table.remove(&eta);
        } else {
            self.table.insert(eta, value);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Configuration, f64)> {
        self.table.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Largest size of a configuration carrying a non-zero value.
    pub fn support_degree(&self) -> usize {
        self.table.keys().map(Configuration::size).max().unwrap_or(0)
    }

    /// `G^(n)`: the part of `G` living on configurations of `n` points.
    pub fn restriction(&self, n: usize) -> Self {
        ConfigurationFunction {
            window: self.window.clone(),
            caps: self.caps,
            table: self
                .table
                .iter()
                .filter(|(k, _)| k.size() == n)
                .map(|(k, &v)| (k.clone(), v))
                .collect(),
        }
    }

    /// `a·self + b·other` on the union of windows and the larger caps.
    pub fn combine(&self, a: f64, other: &ConfigurationFunction, b: f64) -> Self {
        let window = self.window.union(&other.window);
        let caps = Caps::new(
            self.caps.degree.max(other.caps.degree),
            self.caps.multiplicity.max(other.caps.multiplicity),
        );
        let mut table = BTreeMap::new();
        for (k, v) in self.iter() {
            *table.entry(k.clone()).or_insert(0.0) += a * v;
        }
        for (k, v) in other.iter() {
            *table.entry(k.clone()).or_insert(0.0) += b * v;
        }
        table.retain(|_, v| *v != 0.0);
        ConfigurationFunction { window, caps, table }
    }

    /// Max of `|self(η) − other(η)|` over both supports.
    pub fn max_abs_diff(&self, other: &ConfigurationFunction) -> f64 {
        let mut m = 0.0_f64;
        for (k, v) in self.iter() {
            m = m.max((v - other.get(k)).abs());
        }
        for (k, v) in other.iter() {
            m = m.max((v - self.get(k)).abs());
        }
        m
    }
}

mod table_serde {
    use super::Configuration;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        configuration: Configuration,
        value: f64,
    }

    pub fn serialize<S: Serializer>(t: &BTreeMap<Configuration, f64>, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = t
            .iter()
            .map(|(k, &v)| Entry { configuration: k.clone(), value: v })
            .collect();
        entries.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Configuration, f64>, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        Ok(entries.into_iter().map(|e| (e.configuration, e.value)).collect())
    }
}

/// `(𝒦G)(γ) = Σ_{η ⊑ γ} Π_x C(c_x, b_x) G(η)` at a single configuration.
pub fn k_transform_at(g: &ConfigurationFunction, gamma: &Configuration) -> f64 {
    gamma
        .sub_configurations()
        .iter()
        .map(|eta| {
            let v = g.get(eta);
            if v == 0.0 {
                0.0
            } else {
                eta.embeddings_in(gamma) * v
            }
        })
        .sum()
}

/// Tabulate `𝒦G` on every configuration within `window` and `caps`.
pub fn k_transform(g: &ConfigurationFunction, window: &Window, caps: Caps) -> Result<ConfigurationFunction> {
    if !g.window.is_subset(window) {
        return Err(Error::Invalid(format!(
            "function window {} is not inside the transform window {window}",
            g.window
        )));
    }
    ConfigurationFunction::from_fn(window.clone(), caps, |gamma| k_transform_at(g, gamma))
}

/// Inverse K-transform on the function's own window and caps:
/// `G(η) = Σ_{ξ ⊑ η} (−1)^{|η|−|ξ|} Π_x C(b_x, a_x) F(ξ)`.
pub fn k_inverse(f: &ConfigurationFunction) -> Result<ConfigurationFunction> {
    f.caps.check()?;
    ConfigurationFunction::from_fn(f.window.clone(), f.caps, |eta| {
        let n = eta.size();
        eta.sub_configurations()
            .iter()
            .map(|xi| {
                let v = f.get(xi);
                if v == 0.0 {
                    return 0.0;
                }
                let sign = if (n - xi.size()) % 2 == 0 { 1.0 } else { -1.0 };
                sign * xi.embeddings_in(eta) * v
            })
            .sum()
    })
}

/// The ⋆-convolution
/// `(G1⋆G2)(η) = Σ_{ξ1+ξ2+ξ3=η} w(ξ1,ξ2,ξ3) G1(ξ1+ξ2) G2(ξ2+ξ3)`,
/// where `w = Π_x n_x!/(a_x! b_x! c_x!)` counts the ways of splitting the
/// labelled points of `η`; `w = 1` whenever `η` is simple.
pub fn star(g1: &ConfigurationFunction, g2: &ConfigurationFunction) -> Result<ConfigurationFunction> {
    let window = g1.window.union(&g2.window);
    let caps = Caps::new(
        g1.caps.degree + g2.caps.degree,
        g1.caps.multiplicity + g2.caps.multiplicity,
    );
    caps.check()?;
    let mut table: BTreeMap<Configuration, f64> = BTreeMap::new();
    for (a, va) in g1.iter() {
        for (b, vb) in g2.iter() {
            for shared in a.meet(b).sub_configurations() {
                let left = a.minus(&shared).expect("shared ⊑ a");
                let right = b.minus(&shared).expect("shared ⊑ b");
                let eta = left.plus(&shared).plus(&right);
                let weight = eta.factorial_product()
                    / (left.factorial_product() * shared.factorial_product() * right.factorial_product());
                *table.entry(eta).or_insert(0.0) += weight * va * vb;
            }
        }
    }
    table.retain(|_, v| *v != 0.0);
    Ok(ConfigurationFunction { window, caps, table })
}

/// `Exp(φ, η) = Π_x φ(x)^{b_x}`, 1 on the empty configuration.
pub fn exp_config(phi: impl Fn(Site) -> f64, eta: &Configuration) -> f64 {
    eta.counts().iter().map(|&(s, c)| phi(s).powi(c as i32)).product()
}

/// `⟨φ, η⟩ = Σ_x b_x φ(x)`.
pub fn linear_pairing(phi: impl Fn(Site) -> f64, eta: &Configuration) -> f64 {
    eta.counts().iter().map(|&(s, c)| f64::from(c) * phi(s)).sum()
}

/// The symmetrized indicator product `χ_{Δ1}⊙…⊙χ_{Δn}`:
/// `(1/n!) Σ_{ξ∈S_n} Π_i χ_{Δ_i}(y_{ξ(i)})` on configurations of size `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricIndicator {
    windows: Vec<Window>,
}

impl SymmetricIndicator {
    pub fn new(windows: Vec<Window>) -> Result<Self> {
        if windows.is_empty() {
            return Err(Error::Invalid("an indicator product needs at least one window".into()));
        }
        if windows.len() > MAX_INDICATOR_ORDER {
            return Err(Error::Guard(format!(
                "indicator product of order {} exceeds {MAX_INDICATOR_ORDER}",
                windows.len()
            )));
        }
        Ok(SymmetricIndicator { windows })
    }

    pub fn order(&self) -> usize {
        self.windows.len()
    }

    pub fn windows(&self) -> &[Window] {
        &self.windows
    }

    pub fn eval(&self, eta: &Configuration) -> f64 {
        let n = self.windows.len();
        if eta.size() != n {
            return 0.0;
        }
        let points = eta.expanded();
        let incidence = nalgebra::DMatrix::from_fn(n, n, |i, j| {
            if self.windows[i].contains(points[j]) {
                1.0
            } else {
                0.0
            }
        });
        alphadet::permanent(&incidence).expect("order guarded at construction") / factorial(n as u32)
    }

    /// Tabulate on the union of the windows (multiplicities up to `n`).
    pub fn to_function(&self) -> ConfigurationFunction {
        let window = self
            .windows
            .iter()
            .fold(Window::empty(), |acc, w| acc.union(w));
        let n = self.windows.len();
        let caps = Caps::new(n, n as u32);
        let table = enumerate_configurations(&window, caps)
            .into_iter()
            .filter(|eta| eta.size() == n)
            .map(|eta| {
                let v = self.eval(&eta);
                (eta, v)
            })
            .filter(|(_, v)| *v != 0.0)
            .collect();
        ConfigurationFunction { window, caps, table }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(sites: &[Site]) -> Configuration {
        Configuration::from_sites(sites.iter().copied())
    }

    #[test]
    fn configuration_basics() {
        let eta = cfg(&[2, 0, 2]);
        assert_eq!(eta.size(), 3);
        assert_eq!(eta.counts(), &[(0, 1), (2, 2)]);
        assert!(!eta.is_simple());
        assert_eq!(eta.sub_configurations().len(), 6);
        assert_eq!(cfg(&[2]).embeddings_in(&eta), 2.0);
        assert_eq!(cfg(&[1]).embeddings_in(&eta), 0.0);
        assert_eq!(eta.minus(&cfg(&[2])), Some(cfg(&[0, 2])));
        assert_eq!(serde_json::to_string(&eta).unwrap(), "[[0,1],[2,2]]");
    }

    #[test]
    fn enumerate_respects_caps() {
        let all = enumerate_configurations(&Window::full(3), Caps::new(2, 1));
        // ∅, 3 singletons, 3 pairs
        assert_eq!(all.len(), 7);
        let multi = enumerate_configurations(&Window::full(2), Caps::new(2, 2));
        // ∅, {0},{1},{0,0},{0,1},{1,1}
        assert_eq!(multi.len(), 6);
        assert!(multi[0].is_empty());
    }

    #[test]
    fn k_transform_of_xi_is_one() {
        let w = Window::full(3);
        let caps = Caps::new(3, 2);
        let xi = ConfigurationFunction::xi(w.clone(), caps);
        let f = k_transform(&xi, &w, caps).unwrap();
        for eta in enumerate_configurations(&w, caps) {
            assert_eq!(f.get(&eta), 1.0);
        }
    }

    #[test]
    fn k_transform_of_singleton_counts_points() {
        let w = Window::full(2);
        let caps = Caps::new(3, 3);
        let d = ConfigurationFunction::delta(cfg(&[0]), w.clone(), caps).unwrap();
        assert_eq!(k_transform_at(&d, &cfg(&[0, 0, 1])), 2.0);
        assert_eq!(k_transform_at(&d, &cfg(&[1])), 0.0);
        let d12 = ConfigurationFunction::delta(cfg(&[0, 1]), w, caps).unwrap();
        assert_eq!(k_transform_at(&d12, &cfg(&[0, 1])), 1.0);
        assert_eq!(k_transform_at(&d12, &cfg(&[0])), 0.0);
    }

    #[test]
    fn k_inverse_of_one_is_xi() {
        let w = Window::full(3);
        let caps = Caps::new(3, 2);
        let one = ConfigurationFunction::from_fn(w.clone(), caps, |_| 1.0).unwrap();
        let g = k_inverse(&one).unwrap();
        assert_eq!(g, ConfigurationFunction::xi(w, caps));
    }

    #[test]
    fn star_unit_and_small_products() {
        let w = Window::full(2);
        let caps = Caps::new(2, 2);
        let d1 = ConfigurationFunction::delta(cfg(&[0]), w.clone(), caps).unwrap();
        let xi = ConfigurationFunction::xi(w.clone(), caps);
        let p = star(&d1, &xi).unwrap();
        assert_eq!(p.max_abs_diff(&d1), 0.0);

        let sq = star(&d1, &d1).unwrap();
        // shared point gives {0}; disjoint labelled copies give {0,0} twice
        assert_eq!(sq.get(&cfg(&[0])), 1.0);
        assert_eq!(sq.get(&cfg(&[0, 0])), 2.0);
        assert_eq!(sq.get(&cfg(&[0, 1])), 0.0);
        // multiplicativity holds on the multiset {0,0} too: 2·2 = 4
        assert_eq!(k_transform_at(&sq, &cfg(&[0, 0])), 4.0);
    }

    #[test]
    fn exp_and_pairing() {
        assert_eq!(exp_config(|_| 3.0, &Configuration::empty()), 1.0);
        assert_eq!(exp_config(|_| 1.0, &cfg(&[0, 1, 1])), 1.0);
        assert_eq!(exp_config(|s| if s == 0 { 2.0 } else { 1.0 }, &cfg(&[0, 0])), 4.0);
        assert_eq!(linear_pairing(|_| 1.0, &Configuration::empty()), 0.0);
        let w = Window::new([0, 2]);
        assert_eq!(linear_pairing(|s| if w.contains(s) { 1.0 } else { 0.0 }, &cfg(&[0, 1, 2, 2])), 3.0);
        assert_eq!(linear_pairing(|_| 3.0, &cfg(&[0, 0])), 6.0);
    }

    #[test]
    fn symmetric_indicator_values() {
        let one = SymmetricIndicator::new(vec![Window::singleton(0)]).unwrap();
        assert_eq!(one.eval(&cfg(&[0])), 1.0);
        assert_eq!(one.eval(&cfg(&[1])), 0.0);

        let same = SymmetricIndicator::new(vec![Window::new([0, 1]); 2]).unwrap();
        assert_eq!(same.eval(&cfg(&[0, 1])), 1.0);
        assert_eq!(same.eval(&cfg(&[1, 1])), 1.0);
        assert_eq!(same.eval(&cfg(&[1, 2])), 0.0);
        assert_eq!(same.eval(&cfg(&[0])), 0.0);

        assert!(SymmetricIndicator::new(vec![Window::singleton(0); 11]).is_err());
    }

    #[test]
    fn restriction_filters_degree() {
        let w = Window::full(2);
        let f = ConfigurationFunction::from_fn(w, Caps::new(2, 1), |e| e.size() as f64 + 1.0).unwrap();
        let r = f.restriction(1);
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|(k, _)| k.size() == 1));
    }
}
