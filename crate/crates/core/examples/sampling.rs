//! Draw configurations and compare empirical correlations with the table.

use quasifree::correlation::correlation_from_kernel;
use quasifree::kernels::random_psd;
use quasifree::sampler::{estimate_correlation, sample};
use quasifree::{Caps, Configuration, KernelModel, Statistics, Window};

fn main() -> quasifree::Result<()> {
    for s in [Statistics::Fermion, Statistics::Boson, Statistics::FermionLike(2), Statistics::BosonLike(2)] {
        let top = if s.is_fermionic() { 1.0 } else { 0.8 };
        let model = KernelModel::from_matrix(random_psd(3, top, 21), s)?;
        let batch = sample(&model, 50_000, 1)?;
        let rho = correlation_from_kernel(&model, &Window::full(3), Caps::new(2, 2))?;
        println!("{}:", s.family_name());
        for eta in [Configuration::from_sites([0]), Configuration::from_sites([0, 1]), Configuration::from_sites([1, 1])] {
            let (est, se) = estimate_correlation(&batch, &eta)?;
            println!("  {:?}: exact {:.4}  sampled {est:.4} ± {se:.4}", eta.expanded(), rho.get(&eta));
        }
    }
    Ok(())
}
