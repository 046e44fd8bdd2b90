use std::collections::HashMap;

use nalgebra::DVector;

use super::operator::FockOperator;
use super::rep::{FieldKind, QuasiFreeRep};
use super::space::Particle;
use super::sparse::SparseMatrix;
use crate::configspace::{factorial, ConfigurationFunction};
use crate::error::{Error, Result};
use crate::ground::Window;

/// Largest number of windows in an indicator product handled by [`q_product`].
pub const MAX_Q_ORDER: usize = 6;
/// Largest number of windows in [`normal_ordered_product`].
pub const MAX_NORMAL_ORDER: usize = 4;
/// Tolerance for the commutation check on a family.
pub const COMMUTATION_TOLERANCE: f64 = 1e-8;

/// A window-indexed operator family `Δ ↦ A(Δ)` on a fixed representation,
/// with materialized matrices cached per window.
pub struct DensityFamily<'a> {
    rep: &'a QuasiFreeRep,
    build: Box<dyn Fn(&QuasiFreeRep, &Window) -> Result<FockOperator> + 'a>,
    cache: HashMap<Window, SparseMatrix>,
}

impl<'a> DensityFamily<'a> {
    /// `a(Δ)` (standard layout) or `R(Δ)` (copies).
    pub fn density(rep: &'a QuasiFreeRep) -> Self {
        Self::custom(rep, |r, w| r.density(w))
    }

    /// `Σ_{x∈Δ} Ψ*(e_x)Ψ(e_x)` with the representation's own field.
    pub fn full_density(rep: &'a QuasiFreeRep) -> Self {
        Self::custom(rep, |r, w| r.full_density(w))
    }

    pub fn custom(rep: &'a QuasiFreeRep, build: impl Fn(&QuasiFreeRep, &Window) -> Result<FockOperator> + 'a) -> Self {
        DensityFamily { rep, build: Box::new(build), cache: HashMap::new() }
    }

    pub fn rep(&self) -> &QuasiFreeRep {
        self.rep
    }

    pub fn matrix(&mut self, window: &Window) -> Result<&SparseMatrix> {
        if !self.cache.contains_key(window) {
            let m = (self.build)(self.rep, window)?.to_matrix(self.rep.space());
            self.cache.insert(window.clone(), m);
        }
        Ok(&self.cache[window])
    }

    /// Fails with the largest commutator found when two members of the
    /// family do not commute.
    pub fn check_commuting(&mut self, windows: &[Window]) -> Result<()> {
        // Truncated boson densities commute only where four creations stay
        // under the cutoff.
        let space = self.rep.space();
        let safe: Vec<bool> = (0..space.dim())
            .map(|j| space.particle() == Particle::Fermion || space.particle_count(space.state(j)) + 4 <= space.cutoff())
            .collect();
        let mut worst = 0.0_f64;
        for i in 0..windows.len() {
            for j in i + 1..windows.len() {
                let a = self.matrix(&windows[i])?.clone();
                let b = self.matrix(&windows[j])?;
                worst = worst.max(a.commutator(b).frobenius_norm_on(|k| safe[k]));
            }
        }
        if worst > COMMUTATION_TOLERANCE {
            return Err(Error::NonCommuting(worst));
        }
        Ok(())
    }
}

/// `𝒬(χ_{Δ1}⊙…⊙χ_{Δn})Ω` by the recursion
/// `𝒬(χ_{Δ1}⊙…⊙χ_{Δn+1}) = (n+1)^{-2} [Σ_i A(Δ_i) 𝒬(…Δ̂_i…)
///   − Σ_{i≠j} 𝒬(χ_{Δ_i∩Δ_j} ⊙ …Δ̂_i…Δ̂_j…)]`, `𝒬(Ξ) = 1`.
pub fn q_product(family: &mut DensityFamily<'_>, windows: &[Window]) -> Result<DVector<f64>> {
    if windows.len() > MAX_Q_ORDER {
        return Err(Error::Guard(format!("indicator product of order {} exceeds {MAX_Q_ORDER}", windows.len())));
    }
    for w in windows {
        w.check(family.rep.model().size())?;
    }
    family.check_commuting(windows)?;
    let mut memo: HashMap<Vec<Window>, DVector<f64>> = HashMap::new();
    q_rec(family, windows.to_vec(), &mut memo)
}

fn q_rec(
    family: &mut DensityFamily<'_>,
    mut windows: Vec<Window>,
    memo: &mut HashMap<Vec<Window>, DVector<f64>>,
) -> Result<DVector<f64>> {
    windows.sort();
    let dim = family.rep.dim();
    if windows.is_empty() {
        return Ok(family.rep.vacuum());
    }
    if windows.iter().any(Window::is_empty) {
        return Ok(DVector::zeros(dim));
    }
    if let Some(v) = memo.get(&windows) {
        return Ok(v.clone());
    }
    let n = windows.len();
    let mut acc = DVector::zeros(dim);
    for i in 0..n {
        let mut rest = windows.clone();
        let wi = rest.remove(i);
        let inner = q_rec(family, rest, memo)?;
        acc += family.matrix(&wi)?.mul_vec(&inner);
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let meet = windows[i].intersection(&windows[j]);
            let mut rest: Vec<Window> = windows
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, w)| w.clone())
                .collect();
            rest.push(meet);
            acc -= q_rec(family, rest, memo)?;
        }
    }
    acc /= (n * n) as f64;
    memo.insert(windows, acc.clone());
    Ok(acc)
}

/// `𝒬(G)Ω` for a configuration function, expanding each indicator
/// `δ_η = (n!/Π_x b_x!) ⊙_{x∈η} χ_{{x}}`.
pub fn q_apply(family: &mut DensityFamily<'_>, g: &ConfigurationFunction) -> Result<DVector<f64>> {
    let mut acc = DVector::zeros(family.rep.dim());
    for (eta, value) in g.iter() {
        let windows: Vec<Window> = eta.expanded().into_iter().map(Window::singleton).collect();
        let factor = factorial(eta.size() as u32) / eta.factorial_product();
        acc += q_product(family, &windows)? * (factor * value);
    }
    Ok(acc)
}

/// `(1/n!) Σ_{x_1∈Δ_1,…,x_n∈Δ_n} Ψ̃*_{x_n}⋯Ψ̃*_{x_1} Ψ̃_{x_1}⋯Ψ̃_{x_n}` with
/// `Ψ̃_x = Ψ(e_x)`, as a matrix.
pub fn normal_ordered_product(rep: &QuasiFreeRep, windows: &[Window]) -> Result<SparseMatrix> {
    if windows.len() > MAX_NORMAL_ORDER {
        return Err(Error::Guard(format!(
            "normal-ordered product of order {} exceeds {MAX_NORMAL_ORDER}",
            windows.len()
        )));
    }
    let space = rep.space();
    let n = rep.model().size();
    let mut psi = Vec::with_capacity(n);
    let mut star = Vec::with_capacity(n);
    for x in 0..n {
        psi.push(rep.site_field(x, FieldKind::Psi)?.to_matrix(space));
        star.push(rep.site_field(x, FieldKind::PsiStar)?.to_matrix(space));
    }
    let mut t = SparseMatrix::identity(space.dim());
    for w in windows {
        w.check(n)?;
        let mut next = SparseMatrix::zeros(space.dim(), space.dim());
        for x in w.iter() {
            next = next.add(&star[x].mul(&t).mul(&psi[x]));
        }
        t = next;
    }
    Ok(t.scale(1.0 / factorial(windows.len() as u32)))
}
