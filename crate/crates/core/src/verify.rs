//! Self-check suites run by `quasifree verify`. Each suite samples random
//! kernels and tables (or uses a supplied kernel) and measures one family
//! of identities against its tolerance.

use std::cell::RefCell;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::alphadet;
use crate::configspace::{
    enumerate_configurations, k_inverse, k_transform, k_transform_at, star, Caps, ConfigurationFunction, SymmetricIndicator,
};
use crate::correlation::{
    characteristic_fn, characteristic_of_distribution, convolution_power, correlation_from_distribution,
    correlation_from_kernel, count_pushforward, distribution_from_correlation, distribution_from_kernel, local_bound,
    pd_gram,
};
use crate::error::{Error, Result};
use crate::fock::{
    build_rep, commutator_norm, joint_spectral_measure, normal_ordered_product, q_apply, q_product, DensityFamily,
    Layout,
};
use crate::ground::{GroundSpace, KernelModel, Statistics, Window};
use crate::io::CheckResult;
use crate::kernels::random_psd;
use crate::sampler;

pub const SUITES: [&str; 14] = [
    "ktransform",
    "star",
    "alphadet",
    "dictionary",
    "pd-lb",
    "car",
    "ccr",
    "commute",
    "npoint",
    "qpair",
    "spectral",
    "convolution",
    "reduced",
    "samplers",
];

/// Parameters shared by all suites.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Requested number of sites; each suite clamps it to its own guard.
    pub sites: usize,
    pub seed: u64,
    /// Random instances per suite.
    pub trials: usize,
    /// Number of samples for the sampler suite.
    pub samples: usize,
    /// Kernel to use instead of random ones.
    pub kernel: Option<KernelModel>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { sites: 4, seed: 1, trials: 5, samples: 100_000, kernel: None }
    }
}

/// Run one suite by name, or every suite for `"all"`.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    match name {
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s, opts)?);
            }
            Ok(out)
        }
        "ktransform" => ktransform(opts),
        "star" => star_suite(opts),
        "alphadet" => alphadet_suite(opts),
        "dictionary" => dictionary(opts),
        "pd-lb" => pd_lb(opts),
        "car" => car(opts),
        "ccr" => ccr(opts),
        "commute" => commute(opts),
        "npoint" => npoint(opts),
        "qpair" => qpair(opts),
        "spectral" => spectral(opts),
        "convolution" => convolution(opts),
        "reduced" => reduced(opts),
        "samplers" => samplers(opts),
        other => Err(Error::Invalid(format!("unknown suite {other:?}; expected one of {SUITES:?} or all"))),
    }
}

fn rng(seed: u64, salt: u64) -> ChaCha20Rng {
    let mut r = ChaCha20Rng::seed_from_u64(seed);
    r.set_stream(salt);
    r
}

fn random_function(r: &mut ChaCha20Rng, window: &Window, caps: Caps) -> Result<ConfigurationFunction> {
    let cell = RefCell::new(r);
    ConfigurationFunction::from_fn(window.clone(), caps, |_| cell.borrow_mut().random_range(-1.0..1.0))
}

fn random_vector(r: &mut ChaCha20Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| r.random_range(-1.0..1.0))
}

/// Leading `n × n` block of a model as a unit-weight model.
fn leading_block(model: &KernelModel, n: usize, statistics: Statistics) -> Result<KernelModel> {
    let n = n.min(model.size());
    let sites: Vec<usize> = (0..n).collect();
    let ground = GroundSpace::new(
        model.ground().labels()[..n].to_vec(),
        model.ground().weights()[..n].to_vec(),
    )?;
    KernelModel::new(ground, model.submatrix(&sites), statistics)
}

/// The supplied kernel (leading block) or a random one with a spectrum
/// suited to the family.
fn kernel(opts: &VerifyOptions, n: usize, statistics: Statistics, top_boson: f64, trial: u64) -> Result<KernelModel> {
    match &opts.kernel {
        Some(m) => leading_block(m, n, statistics),
        None => {
            let top = if statistics.is_fermionic() { 1.0 } else { top_boson };
            let seed = opts.seed.wrapping_mul(1_000_003).wrapping_add(trial);
            KernelModel::from_matrix(random_psd(n, top, seed), statistics)
        }
    }
}

fn sites(opts: &VerifyOptions, cap: usize) -> usize {
    opts.sites.clamp(1, cap)
}

fn ktransform(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n = sites(opts, 10);
    let window = Window::full(n);
    let caps = Caps::new(4, 3);
    let mut r = rng(opts.seed, 1);
    let mut err = 0.0_f64;
    let mut err_rev = 0.0_f64;
    for _ in 0..opts.trials {
        let g = random_function(&mut r, &window, caps)?;
        let f = k_transform(&g, &window, caps)?;
        err = err.max(k_inverse(&f)?.max_abs_diff(&g));
        err_rev = err_rev.max(k_transform(&k_inverse(&g)?, &window, caps)?.max_abs_diff(&g));
    }
    Ok(vec![
        CheckResult::at_most("ktransform/inverse-after-transform", err, 1e-12),
        CheckResult::at_most("ktransform/transform-after-inverse", err_rev, 1e-12),
    ])
}

fn star_suite(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n = sites(opts, 6);
    let window = Window::full(n);
    let mut r = rng(opts.seed, 2);
    let (mut mult, mut mult_multi, mut comm, mut assoc) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    let simple = enumerate_configurations(&window, Caps::simple(n));
    let multi = enumerate_configurations(&window, Caps::new(4, 2));
    for _ in 0..opts.trials {
        let g1 = random_function(&mut r, &window, Caps::new(3, 2))?;
        let g2 = random_function(&mut r, &window, Caps::new(3, 2))?;
        let g3 = random_function(&mut r, &window, Caps::new(2, 1))?;
        let s = star(&g1, &g2)?;
        for gamma in &simple {
            let d = k_transform_at(&s, gamma) - k_transform_at(&g1, gamma) * k_transform_at(&g2, gamma);
            mult = mult.max(d.abs());
        }
        for gamma in &multi {
            let d = k_transform_at(&s, gamma) - k_transform_at(&g1, gamma) * k_transform_at(&g2, gamma);
            mult_multi = mult_multi.max(d.abs());
        }
        comm = comm.max(s.max_abs_diff(&star(&g2, &g1)?));
        let small1 = random_function(&mut r, &window, Caps::new(2, 1))?;
        let small2 = random_function(&mut r, &window, Caps::new(2, 1))?;
        let left = star(&star(&small1, &small2)?, &g3)?;
        let right = star(&small1, &star(&small2, &g3)?)?;
        assoc = assoc.max(left.max_abs_diff(&right));
    }
    Ok(vec![
        CheckResult::at_most("star/multiplicative-simple", mult, 1e-12),
        CheckResult::at_most("star/multiplicative-multiset", mult_multi, 1e-12),
        CheckResult::at_most("star/commutative", comm, 1e-12),
        CheckResult::at_most("star/associative", assoc, 1e-12),
    ])
}

fn alphadet_suite(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut r = rng(opts.seed, 3);
    let (mut det_err, mut per_err, mut dp_err, mut relabel, mut scaling) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    let mut ryser_mismatch = 0.0_f64;
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
    for t in 0..opts.trials.max(1) * 4 {
        let n = 1 + t % 6;
        let a = DMatrix::from_fn(n, n, |_, _| r.random_range(-1.0..1.0));
        det_err = det_err.max(rel(alphadet::alpha_determinant_enumerated(&a, -1.0)?, alphadet::determinant(&a)));
        per_err = per_err.max(rel(alphadet::alpha_determinant_enumerated(&a, 1.0)?, alphadet::permanent(&a)?));
        let alpha = r.random_range(-1.5..1.5);
        let e = alphadet::alpha_determinant_enumerated(&a, alpha)?;
        dp_err = dp_err.max(rel(alphadet::alpha_determinant_cycles(&a, alpha)?, e));
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, r.random_range(0..=i));
        }
        let p = DMatrix::from_fn(n, n, |i, j| a[(perm[i], perm[j])]);
        relabel = relabel.max(rel(alphadet::alpha_determinant_enumerated(&p, alpha)?, e));
        let c = 1.7;
        scaling = scaling.max(rel(alphadet::alpha_determinant_enumerated(&(&a * c), alpha)?, c.powi(n as i32) * e));
        let m = 1 + t % 8;
        let b = DMatrix::from_fn(m, m, |_, _| if r.random_bool(0.5) { 1.0 } else { 0.0 });
        ryser_mismatch = ryser_mismatch.max((alphadet::permanent(&b)? - alphadet::alpha_determinant_enumerated(&b, 1.0)?).abs());
    }
    Ok(vec![
        CheckResult::at_most("alphadet/minus-one-is-determinant", det_err, 1e-12),
        CheckResult::at_most("alphadet/plus-one-is-permanent", per_err, 1e-12),
        CheckResult::at_most("alphadet/cycle-expansion", dp_err, 1e-12),
        CheckResult::at_most("alphadet/relabeling", relabel, 1e-12),
        CheckResult::at_most("alphadet/homogeneity", scaling, 1e-12),
        CheckResult::at_most("alphadet/ryser-exact", ryser_mismatch, 0.0),
    ])
}

fn dictionary(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n = sites(opts, 12);
    let (mut min_p, mut mass, mut round) = (f64::INFINITY, 0.0_f64, 0.0_f64);
    for t in 0..opts.trials as u64 {
        let model = kernel(opts, n, Statistics::Fermion, 0.0, t)?;
        let w = Window::full(model.size());
        let rho = correlation_from_kernel(&model, &w, Caps::simple(model.size()))?;
        let mu = distribution_from_correlation(&rho, &w, f64::INFINITY)?;
        min_p = min_p.min(mu.min_probability());
        mass = mass.max((mu.total_mass() - 1.0).abs());
        round = round.max(correlation_from_distribution(&mu)?.function().max_abs_diff(rho.function()));
    }
    Ok(vec![
        CheckResult::at_least_minus("dictionary/min-probability", min_p, 1e-10),
        CheckResult::at_most("dictionary/total-mass", mass, 1e-10),
        CheckResult::at_most("dictionary/round-trip", round, 1e-10),
    ])
}

fn pd_lb(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n = sites(opts, 5);
    let mut r = rng(opts.seed, 5);
    let (mut pd, mut mono, mut trace, mut chi) = (f64::INFINITY, 0.0_f64, 0.0_f64, 0.0_f64);
    for t in 0..opts.trials as u64 {
        let model = kernel(opts, n, Statistics::Fermion, 0.0, t)?;
        let size = model.size();
        let full = Window::full(size);
        let rho = correlation_from_kernel(&model, &full, Caps::simple(size))?;
        pd = pd.min(pd_gram(&rho, &full, 2.min(size))?.0);
        let boson = kernel(opts, n.min(3), Statistics::Boson, 0.9, t)?;
        let bfull = Window::full(boson.size());
        let brho = correlation_from_kernel(&boson, &bfull, Caps::new(4, 4))?;
        pd = pd.min(pd_gram(&brho, &bfull, 2)?.0);
        // nested windows Δ' ⊆ Δ
        let sub = Window::new((0..size).filter(|_| r.random_bool(0.5)));
        mono = mono.max(local_bound(&rho, &sub)? - local_bound(&rho, &full)?);
        trace = trace.max(local_bound(&rho, &full)? - model.local_trace(&full)?);
        let mu = distribution_from_correlation(&rho, &full, f64::INFINITY)?;
        let split = size / 2;
        let windows = vec![Window::new(0..split), Window::new(split..size)];
        let y = [r.random_range(-3.0..3.0), r.random_range(-3.0..3.0)];
        chi = chi.max((characteristic_fn(&rho, &windows, &y)? - characteristic_of_distribution(&mu, &windows, &y)).norm());
    }
    Ok(vec![
        CheckResult::at_least_minus("pd-lb/gram-min-eigenvalue", pd, 1e-8),
        CheckResult::at_most("pd-lb/monotone", mono, 1e-12),
        CheckResult::at_most("pd-lb/below-local-trace", trace, 1e-10),
        CheckResult::at_most("pd-lb/characteristic", chi, 1e-10),
    ])
}

fn car(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n = sites(opts, 5);
    let mut r = rng(opts.seed, 6);
    let mut worst = 0.0_f64;
    for t in 0..opts.trials as u64 {
        let model = kernel(opts, n, Statistics::Fermion, 0.0, t)?;
        let rep = build_rep(&model, Layout::Standard, None)?;
        let (f, g) = (random_vector(&mut r, model.size()), random_vector(&mut r, model.size()));
        worst = worst.max(rep.relation_residual(&f, &g)?);
    }
    Ok(vec![CheckResult::at_most("car/relations", worst, 1e-10)])
}

fn ccr(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n = sites(opts, 2);
    let mut r = rng(opts.seed, 7);
    let mut worst = 0.0_f64;
    for t in 0..opts.trials as u64 {
        let model = kernel(opts, n, Statistics::Boson, 0.9, t)?;
        let rep = build_rep(&model, Layout::Standard, Some(8))?;
        let (f, g) = (random_vector(&mut r, model.size()), random_vector(&mut r, model.size()));
        worst = worst.max(rep.relation_residual(&f, &g)?);
    }
    Ok(vec![CheckResult::at_most("ccr/relations-on-safe-subspace", worst, 1e-10)])
}

fn all_windows(n: usize) -> Vec<Window> {
    (0..(1usize << n))
        .map(|mask| Window::new((0..n).filter(|x| mask & (1 << x) != 0)))
        .collect()
}

fn commute(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n = sites(opts, 4);
    let mut worst = 0.0_f64;
    for t in 0..opts.trials.min(3) as u64 {
        let model = kernel(opts, n, Statistics::Fermion, 0.0, t)?;
        let rep = build_rep(&model, Layout::Standard, None)?;
        let mats: Vec<_> = all_windows(model.size())
            .iter()
            .map(|w| Ok(rep.density(w)?.to_matrix(rep.space())))
            .collect::<Result<_>>()?;
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                worst = worst.max(commutator_norm(&mats[i], &mats[j]));
            }
        }
    }
    Ok(vec![CheckResult::at_most("commute/density-pairs", worst, 1e-10)])
}

fn npoint(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n = sites(opts, 3);
    let mut r = rng(opts.seed, 9);
    let (mut det_err, mut off, mut per_err) = (0.0_f64, 0.0_f64, 0.0_f64);
    for t in 0..opts.trials as u64 {
        let model = kernel(opts, n, Statistics::Fermion, 0.0, t)?;
        let rep = build_rep(&model, Layout::Standard, None)?;
        let size = model.size();
        for k in 1..=3usize {
            let fs: Vec<_> = (0..k).map(|_| random_vector(&mut r, size)).collect();
            let gs: Vec<_> = (0..k).map(|_| random_vector(&mut r, size)).collect();
            let pairing = DMatrix::from_fn(k, k, |i, j| (model.matrix() * &fs[i]).dot(&gs[j]));
            det_err = det_err.max((rep.npoint_value(&fs, &gs)? - alphadet::determinant(&pairing)).abs());
            off = off.max(rep.npoint_value(&fs[..k - 1], &gs)?.abs());
        }
        let boson = kernel(opts, n.min(2), Statistics::Boson, 0.9, t)?;
        let brep = build_rep(&boson, Layout::Standard, Some(8))?;
        for k in 1..=3usize {
            let fs: Vec<_> = (0..k).map(|_| random_vector(&mut r, boson.size())).collect();
            let gs: Vec<_> = (0..k).map(|_| random_vector(&mut r, boson.size())).collect();
            let pairing = DMatrix::from_fn(k, k, |i, j| (boson.matrix() * &fs[i]).dot(&gs[j]));
            per_err = per_err.max((brep.npoint_value(&fs, &gs)? - alphadet::permanent(&pairing)?).abs());
        }
    }
    Ok(vec![
        CheckResult::at_most("npoint/determinant", det_err, 1e-10),
        CheckResult::at_most("npoint/unequal-orders-vanish", off, 1e-12),
        CheckResult::at_most("npoint/permanent", per_err, 1e-10),
    ])
}

fn random_windows(r: &mut ChaCha20Rng, n: usize, count: usize) -> Vec<Window> {
    (0..count)
        .map(|_| loop {
            let w = Window::new((0..n).filter(|_| r.random_bool(0.5)));
            if !w.is_empty() {
                break w;
            }
        })
        .collect()
}

fn qpair(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut r = rng(opts.seed, 10);
    let (mut pair_err, mut normal_err) = (0.0_f64, 0.0_f64);
    for t in 0..opts.trials as u64 {
        for (statistics, n, cutoff) in [(Statistics::Fermion, sites(opts, 3), None), (Statistics::Boson, sites(opts, 2), Some(10))] {
            let model = kernel(opts, n, statistics, 0.6, t)?;
            let rep = build_rep(&model, Layout::Standard, cutoff)?;
            let full = Window::full(model.size());
            let rho = correlation_from_kernel(&model, &full, Caps::new(3, 3))?;
            let mut family = DensityFamily::density(&rep);
            for order in 1..=3 {
                let windows = random_windows(&mut r, model.size(), order);
                let q = q_product(&mut family, &windows)?;
                let g = SymmetricIndicator::new(windows.clone())?.to_function();
                let want: f64 = g.iter().map(|(eta, v)| v * rho.get(eta)).sum();
                pair_err = pair_err.max((q[0] - want).abs());
                let t_omega = normal_ordered_product(&rep, &windows)?.mul_vec(&rep.vacuum());
                normal_err = normal_err.max((t_omega - q).amax());
            }
        }
    }
    Ok(vec![
        CheckResult::at_most("qpair/vacuum-pairing", pair_err, 1e-8),
        CheckResult::at_most("qpair/normal-ordered", normal_err, 1e-8),
    ])
}

fn spectral(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n = sites(opts, 4);
    let mut r = rng(opts.seed, 11);
    let (mut tv, mut integrality) = (0.0_f64, 0.0_f64);
    for t in 0..opts.trials as u64 {
        let model = kernel(opts, n, Statistics::Fermion, 0.0, t)?;
        let rep = build_rep(&model, Layout::Standard, None)?;
        let full = Window::full(model.size());
        let windows = random_windows(&mut r, model.size(), 1 + (t as usize % 3));
        let mats: Vec<_> = windows
            .iter()
            .map(|w| Ok(rep.density(w)?.to_matrix(rep.space())))
            .collect::<Result<_>>()?;
        let atoms = joint_spectral_measure(&mats, &rep.vacuum(), opts.seed)?;
        let rho = correlation_from_kernel(&model, &full, Caps::simple(model.size()))?;
        let mu = distribution_from_correlation(&rho, &full, f64::INFINITY)?;
        let push = count_pushforward(&mu, &windows);
        tv = tv.max(total_variation(&atoms, &push));
        for a in &atoms {
            for c in &a.point {
                integrality = integrality.max((c - c.round()).abs());
            }
        }
    }
    Ok(vec![
        CheckResult::at_most("spectral/total-variation", tv, 1e-8),
        CheckResult::at_most("spectral/integer-atoms", integrality, 1e-6),
    ])
}

/// Total variation between spectral atoms (rounded to integer points) and
/// a count law.
pub fn total_variation(
    atoms: &[crate::fock::SpectralAtom],
    law: &std::collections::BTreeMap<Vec<u32>, f64>,
) -> f64 {
    let mut merged = law.iter().map(|(k, &p)| (k.clone(), -p)).collect::<std::collections::BTreeMap<_, _>>();
    for a in atoms {
        let key: Vec<u32> = a.point.iter().map(|c| c.round().max(0.0) as u32).collect();
        *merged.entry(key).or_insert(0.0) += a.weight;
    }
    merged.values().map(|v| v.abs()).sum::<f64>() / 2.0
}

fn convolution(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut fermion_err = 0.0_f64;
    let mut boson_err = 0.0_f64;
    let mut boson_tail = 0.0_f64;
    for t in 0..opts.trials as u64 {
        for l in [2u32, 3] {
            let n = sites(opts, 5);
            let model = kernel(opts, n, Statistics::FermionLike(l), 0.0, t)?;
            fermion_err = fermion_err.max(convolution_gap(&model, l, Caps::new((l as usize * model.size()).min(10), l))?.0);
        }
        let n = sites(opts, 2);
        let model = kernel(opts, n, Statistics::BosonLike(2), 0.85, t)?;
        let (gap, tail) = convolution_gap(&model, 2, Caps::new(4, 4))?;
        boson_err = boson_err.max(gap);
        boson_tail = boson_tail.max(tail);
    }
    Ok(vec![
        CheckResult::at_most("convolution/fermion-like", fermion_err, 1e-9),
        CheckResult::at_most("convolution/boson-like", boson_err, 1e-9),
        CheckResult::at_most("convolution/boson-like-tail", boson_tail, 1e-8),
    ])
}

/// Largest gap between the correlation table of the `l`-fold
/// superposition of the base process with kernel `M/l` and the α-table of
/// `model` over `table_caps`, plus the truncated mass of the superposition.
pub fn convolution_gap(model: &KernelModel, l: u32, table_caps: Caps) -> Result<(f64, f64)> {
    let full = Window::full(model.size());
    let base = model.statistics().base();
    let copy = model.scaled(f64::from(l), base)?;
    let copy_caps = if base == Statistics::Fermion {
        Caps::simple(model.size())
    } else {
        // enough points that the dropped mass is negligible
        let q = copy.spectral_radius() / (1.0 + copy.spectral_radius());
        let mut d = 8usize;
        while d < 200 && (d as f64).powi(model.size() as i32 + table_caps.degree as i32) * q.powi(d as i32) > 1e-18 {
            d += 1;
        }
        Caps::new(d, d as u32)
    };
    let single = distribution_from_kernel(&copy, &full, copy_caps)?;
    let total_caps = Caps::new(copy_caps.degree * l as usize, copy_caps.multiplicity * l);
    let sum = convolution_power(&single, l, total_caps)?;
    let from_sum = correlation_from_distribution(&sum)?;
    let table = correlation_from_kernel(model, &full, table_caps)?;
    let gap = table
        .iter()
        .map(|(eta, v)| (v - from_sum.get(eta)).abs())
        .chain(from_sum.iter().filter(|(eta, _)| eta.fits(&full, table_caps)).map(|(eta, v)| (v - table.get(eta)).abs()))
        .fold(0.0, f64::max);
    Ok((gap, sum.tail_mass))
}

fn reduced(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n = sites(opts, 3);
    let (mut alpha_err, mut det_err) = (0.0_f64, 0.0_f64);
    for t in 0..opts.trials.min(3) as u64 {
        let model = kernel(opts, n, Statistics::FermionLike(2), 0.0, t)?;
        let rep = build_rep(&model, Layout::Copies(2), None)?;
        let full = Window::full(model.size());
        let caps = Caps::new(3, 2);
        let alpha_table = correlation_from_kernel(&model, &full, caps)?;
        let det_table = correlation_from_kernel(&model.with_statistics(Statistics::Fermion)?, &full, Caps::simple(3))?;
        let mut reduced = DensityFamily::density(&rep);
        let mut whole = DensityFamily::full_density(&rep);
        for eta in enumerate_configurations(&full, caps) {
            let g = ConfigurationFunction::delta(eta.clone(), full.clone(), caps)?;
            alpha_err = alpha_err.max((q_apply(&mut reduced, &g)?[0] - alpha_table.get(&eta)).abs());
            det_err = det_err.max((q_apply(&mut whole, &g)?[0] - det_table.get(&eta)).abs());
        }
    }
    Ok(vec![
        CheckResult::at_most("reduced/alpha-table", alpha_err, 1e-8),
        CheckResult::at_most("reduced/full-density-determinant-table", det_err, 1e-8),
    ])
}

/// Law of a sum of independent Bernoulli(p_k).
pub fn poisson_binomial(ps: &[f64]) -> Vec<f64> {
    let mut law = vec![1.0];
    for &p in ps {
        let p = p.clamp(0.0, 1.0);
        let mut next = vec![0.0; law.len() + 1];
        for (k, &q) in law.iter().enumerate() {
            next[k] += q * (1.0 - p);
            next[k + 1] += q * p;
        }
        law = next;
    }
    law
}

fn samplers(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let count = opts.samples;
    let n = sites(opts, 8);
    let model = kernel(opts, n, Statistics::Fermion, 0.0, 0)?;
    let batch = sampler::sample_fermion(&model, count, opts.seed)?;
    let law = poisson_binomial(model.eigenvalues().as_slice());
    let mut empirical = vec![0.0; law.len()];
    for c in batch.cardinalities() {
        empirical[c] += 1.0 / count as f64;
    }
    let tv = law.iter().zip(&empirical).map(|(a, b)| (a - b).abs()).sum::<f64>() / 2.0;
    let again = sampler::sample_fermion(&model, count, opts.seed)?;
    let deterministic = if batch.to_json_lines()? == again.to_json_lines()? { 0.0 } else { 1.0 };

    let small = sites(opts, 4);
    let mut worst_z = 0.0_f64;
    for statistics in [Statistics::Fermion, Statistics::Boson, Statistics::FermionLike(2)] {
        let m = kernel(opts, small, statistics, 0.8, 1)?;
        let b = sampler::sample(&m, count, opts.seed.wrapping_add(17))?;
        let full = Window::full(m.size());
        let table = correlation_from_kernel(&m, &full, Caps::new(2, 2))?;
        for eta in enumerate_configurations(&full, Caps::new(2, 2)) {
            if eta.is_empty() {
                continue;
            }
            let (est, se) = sampler::estimate_correlation(&b, &eta)?;
            let want = table.get(&eta);
            let z = if se > 0.0 { (est - want).abs() / se } else if (est - want).abs() < 1e-12 { 0.0 } else { f64::INFINITY };
            worst_z = worst_z.max(z);
        }
    }
    Ok(vec![
        CheckResult::at_most("samplers/fermion-cardinality-tv", tv, 0.01),
        CheckResult::at_most("samplers/correlation-z-score", worst_z, 4.0),
        CheckResult::at_most("samplers/deterministic", deterministic, 0.0),
    ])
}
