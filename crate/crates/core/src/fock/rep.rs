use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::operator::{FockOperator, Ladder};
use super::space::{FockSpace, Particle};
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};
use crate::ground::{KernelModel, Site, Statistics, Window};
use crate::linalg;

/// Default total-occupation cutoff for bosonic representations.
pub const DEFAULT_BOSON_CUTOFF: u32 = 8;

/// How the one-particle space is laid out in modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layout {
    /// `H₁ ⊕ H₂`: site `x` of `H₁` is mode `x`, site `x` of `H₂` is mode `N + x`.
    Standard,
    /// `l` copies of `H₁ ⊕ H₂`; copy `i` starts at mode `2Ni`.
    Copies(u32),
}

/// Annihilation field `Ψ` or creation field `Ψ*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Psi,
    PsiStar,
}

/// Pieces of the particle density over a window.
#[derive(Clone, Debug)]
pub struct DensityParts {
    /// Double creation `Σ B_xy a†_{2,x} a†_{1,y}` with `B = M₂ P_Δ M₁`.
    pub plus: FockOperator,
    /// `tr(P_Δ M) + dΓ((∓M₁P_ΔM₁) ⊕ M₂P_ΔM₂)`.
    pub zero: FockOperator,
    /// Adjoint of `plus`.
    pub minus: FockOperator,
    pub total: FockOperator,
}

/// Quasi-free CAR/CCR representation of a kernel model on a finite Fock
/// space.
#[derive(Clone, Debug)]
pub struct QuasiFreeRep {
    model: KernelModel,
    layout: Layout,
    space: FockSpace,
    m1: DMatrix<f64>,
    m2: DMatrix<f64>,
    /// Square roots for the per-copy kernel `M/l` (copies layout).
    copy_m1: DMatrix<f64>,
    copy_m2: DMatrix<f64>,
}

/// Build the representation. Fermion and boson models use the standard
/// layout; `*_like(l)` models use `Copies(l)`. Bosons are truncated at
/// `cutoff` particles (default [`DEFAULT_BOSON_CUTOFF`]).
pub fn build_rep(model: &KernelModel, layout: Layout, cutoff: Option<u32>) -> Result<QuasiFreeRep> {
    let statistics = model.statistics();
    let copies = match (layout, statistics) {
        (Layout::Standard, Statistics::Fermion | Statistics::Boson) => 1,
        (Layout::Copies(l), Statistics::FermionLike(k) | Statistics::BosonLike(k)) if l == k && l > 0 => l,
        _ => {
            return Err(Error::Invalid(format!(
                "layout {layout:?} does not fit {} statistics",
                statistics.family_name()
            )))
        }
    };
    let n = model.size();
    let modes = 2 * n * copies as usize;
    let space = if statistics.is_fermionic() {
        FockSpace::fermion(modes)?
    } else {
        FockSpace::boson(modes, cutoff.unwrap_or(DEFAULT_BOSON_CUTOFF))?
    };
    let (m1, m2) = model.square_roots();
    let l = f64::from(copies);
    let copy_m1 = &m1 / l.sqrt();
    let copy_m2 = linalg::spectral_function(model.eigenvalues(), model.eigenvectors(), |v| {
        if statistics.is_fermionic() {
            (1.0 - v / l).max(0.0).sqrt()
        } else {
            (1.0 + v / l).sqrt()
        }
    });
    Ok(QuasiFreeRep { model: model.clone(), layout, space, m1, m2, copy_m1, copy_m2 })
}

impl QuasiFreeRep {
    pub fn model(&self) -> &KernelModel {
        &self.model
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn particle(&self) -> Particle {
        self.space.particle()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn vacuum(&self) -> DVector<f64> {
        self.space.vacuum()
    }

    pub fn copies(&self) -> u32 {
        match self.layout {
            Layout::Standard => 1,
            Layout::Copies(l) => l,
        }
    }

    fn sites(&self) -> usize {
        self.model.size()
    }

    /// Mode of site `x` in part `H₁` (`part = 1`) or `H₂` (`part = 2`) of
    /// copy `copy`.
    pub fn mode(&self, copy: u32, part: u8, x: Site) -> usize {
        let n = self.sites();
        2 * n * copy as usize + if part == 1 { 0 } else { n } + x
    }

    fn fermionic(&self) -> bool {
        self.particle() == Particle::Fermion
    }

    fn check_vector(&self, f: &DVector<f64>) -> Result<()> {
        if f.len() != self.sites() {
            return Err(Error::Dimension(format!("vector of length {} for {} sites", f.len(), self.sites())));
        }
        Ok(())
    }

    /// `Ψ(f) = Φ₂(M₂f) + Φ₁*(M₁f)` and `Ψ*(f) = Φ₂*(M₂f) + Φ₁(M₁f)`; with
    /// `l` copies each copy carries `l^{-1/2}` of both terms.
    pub fn field(&self, f: &DVector<f64>, kind: FieldKind) -> Result<FockOperator> {
        self.check_vector(f)?;
        let c = 1.0 / f64::from(self.copies()).sqrt();
        let h1 = &self.m1 * f * c;
        let h2 = &self.m2 * f * c;
        let mut op = FockOperator::zero();
        for copy in 0..self.copies() {
            for x in 0..self.sites() {
                let (l1, l2) = match kind {
                    FieldKind::Psi => (Ladder::Create(self.mode(copy, 1, x)), Ladder::Annihilate(self.mode(copy, 2, x))),
                    FieldKind::PsiStar => {
                        (Ladder::Annihilate(self.mode(copy, 1, x)), Ladder::Create(self.mode(copy, 2, x)))
                    }
                };
                op.push(h1[x], vec![l1]);
                op.push(h2[x], vec![l2]);
            }
        }
        Ok(op)
    }

    /// The field at a site, `Ψ(e_x)`.
    pub fn site_field(&self, x: Site, kind: FieldKind) -> Result<FockOperator> {
        self.model.ground().check_site(x)?;
        let mut e = DVector::zeros(self.sites());
        e[x] = 1.0;
        self.field(&e, kind)
    }

    /// Largest deviation from the canonical relations
    /// `[Ψ(f),Ψ(g)]_± = 0`, `[Ψ*(f),Ψ*(g)]_± = 0`, `[Ψ(f),Ψ*(g)]_± = (f,g)`
    /// (anticommutators for fermions, commutators for bosons), measured in
    /// Frobenius norm. For bosons only basis states with at most
    /// `cutoff − 2` particles are tested, where the truncation is invisible.
    pub fn relation_residual(&self, f: &DVector<f64>, g: &DVector<f64>) -> Result<f64> {
        let space = &self.space;
        let psi_f = self.field(f, FieldKind::Psi)?.to_matrix(space);
        let psi_g = self.field(g, FieldKind::Psi)?.to_matrix(space);
        let star_f = self.field(f, FieldKind::PsiStar)?.to_matrix(space);
        let star_g = self.field(g, FieldKind::PsiStar)?.to_matrix(space);
        let bracket = |a: &SparseMatrix, b: &SparseMatrix| {
            if self.fermionic() {
                a.anticommutator(b)
            } else {
                a.commutator(b)
            }
        };
        let inner = f.dot(g);
        let mixed = bracket(&psi_f, &star_g).sub(&SparseMatrix::identity(space.dim()).scale(inner));
        let safe = |j: usize| {
            self.fermionic() || space.particle_count(space.state(j)) + 2 <= space.cutoff()
        };
        Ok([bracket(&psi_f, &psi_g), bracket(&star_f, &star_g), mixed]
            .iter()
            .map(|m| m.frobenius_norm_on(safe))
            .fold(0.0, f64::max))
    }

    /// `dΓ(A) = Σ_{u,v} A_uv a†_u a_v` for a matrix on modes.
    pub fn second_quantization(&self, a: &DMatrix<f64>) -> Result<FockOperator> {
        let d = self.space.modes();
        if a.nrows() != d || a.ncols() != d {
            return Err(Error::Dimension(format!("{}x{} matrix on {d} modes", a.nrows(), a.ncols())));
        }
        let mut op = FockOperator::zero();
        for u in 0..d {
            for v in 0..d {
                op.push(a[(u, v)], vec![Ladder::Create(u), Ladder::Annihilate(v)]);
            }
        }
        Ok(op)
    }

    fn parts_on_copy(&self, copy: u32, m1: &DMatrix<f64>, m2: &DMatrix<f64>, scale: f64, window: &Window) -> DensityParts {
        let n = self.sites();
        let p = self.model.window_projector(window);
        let b = m2 * &p * m1;
        let mut plus = FockOperator::zero();
        for x in 0..n {
            for y in 0..n {
                plus.push(
                    b[(x, y)],
                    vec![Ladder::Create(self.mode(copy, 2, x)), Ladder::Create(self.mode(copy, 1, y))],
                );
            }
        }
        let minus = plus.adjoint();
        let trace: f64 = window.iter().map(|x| self.model.matrix()[(x, x)]).sum::<f64>() / scale;
        let d1 = m1 * &p * m1;
        let d2 = m2 * &p * m2;
        let sign = if self.fermionic() { -1.0 } else { 1.0 };
        let mut zero = FockOperator::scalar(trace);
        for x in 0..n {
            for y in 0..n {
                zero.push(
                    sign * d1[(x, y)],
                    vec![Ladder::Create(self.mode(copy, 1, x)), Ladder::Annihilate(self.mode(copy, 1, y))],
                );
                zero.push(
                    d2[(x, y)],
                    vec![Ladder::Create(self.mode(copy, 2, x)), Ladder::Annihilate(self.mode(copy, 2, y))],
                );
            }
        }
        let total = plus.add(&zero).add(&minus);
        DensityParts { plus, zero, minus, total }
    }

    /// `a⁺(Δ)`, `a⁰(Δ)`, `a⁻(Δ)` and `a(Δ)` in the standard layout.
    pub fn density_parts(&self, window: &Window) -> Result<DensityParts> {
        window.check(self.sites())?;
        if self.layout != Layout::Standard {
            return Err(Error::Invalid("density parts need the standard layout; use reduced_density".into()));
        }
        Ok(self.parts_on_copy(0, &self.m1, &self.m2, 1.0, window))
    }

    /// `R(Δ) = Σ_i a_i(Δ)` where `a_i` is the density of copy `i` built from
    /// the kernel `M/l`.
    pub fn reduced_density(&self, window: &Window) -> Result<FockOperator> {
        window.check(self.sites())?;
        let l = self.copies();
        let mut op = FockOperator::zero();
        for copy in 0..l {
            op = op.add(&self.parts_on_copy(copy, &self.copy_m1, &self.copy_m2, f64::from(l), window).total);
        }
        Ok(op)
    }

    /// `Σ_{x∈Δ} Ψ*(e_x) Ψ(e_x)` with the representation's own field,
    /// including every cross term between copies.
    pub fn full_density(&self, window: &Window) -> Result<FockOperator> {
        window.check(self.sites())?;
        let mut op = FockOperator::zero();
        for x in window.iter() {
            let psi = self.site_field(x, FieldKind::Psi)?;
            let star = self.site_field(x, FieldKind::PsiStar)?;
            op = op.add(&star.compose(&psi));
        }
        Ok(op.simplify())
    }

    /// The density family used by the correlation pairing: `a(Δ)` in the
    /// standard layout, `R(Δ)` with copies.
    pub fn density(&self, window: &Window) -> Result<FockOperator> {
        match self.layout {
            Layout::Standard => Ok(self.density_parts(window)?.total),
            Layout::Copies(_) => self.reduced_density(window),
        }
    }

    /// `⟨Ψ*(f_n)⋯Ψ*(f_1) Ψ(g_1)⋯Ψ(g_m) Ω, Ω⟩`.
    pub fn npoint_value(&self, fs: &[DVector<f64>], gs: &[DVector<f64>]) -> Result<f64> {
        let mut v = self.vacuum();
        for g in gs.iter().rev() {
            v = self.field(g, FieldKind::Psi)?.apply(&self.space, &v);
        }
        for f in fs {
            v = self.field(f, FieldKind::PsiStar)?.apply(&self.space, &v);
        }
        Ok(v[0])
    }
}
