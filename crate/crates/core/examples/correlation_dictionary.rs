//! Pass between correlation tables and point distributions on a window.

use quasifree::correlation::{
    characteristic_fn, correlation_from_distribution, correlation_from_kernel, distribution_from_correlation,
    distribution_from_kernel, local_bound, pd_gram,
};
use quasifree::io::function_csv;
use quasifree::kernels::{gaussian_grid, random_psd};
use quasifree::{Caps, KernelModel, Statistics, Window};

fn main() -> quasifree::Result<()> {
    let model = KernelModel::from_matrix(gaussian_grid(4, 1.0)?, Statistics::Fermion)?;
    let w = Window::new([1, 2]);
    let rho = correlation_from_kernel(&model, &w, Caps::simple(2))?;
    print!("{}", function_csv(rho.function(), "correlation"));

    let mu = distribution_from_correlation(&rho, &w, 1e-10)?;
    print!("{}", function_csv(mu.function(), "probability"));
    let back = correlation_from_distribution(&mu)?;
    println!("round trip gap {:e}", back.function().max_abs_diff(rho.function()));
    println!("expected count {} (local trace {})", local_bound(&rho, &w)?, model.local_trace(&w)?);
    println!("min Gram eigenvalue {:e}", pd_gram(&rho, &w, 2)?.0);
    let l = characteristic_fn(&rho, &[Window::singleton(1), Window::singleton(2)], &[0.4, -1.0])?;
    println!("characteristic function at (0.4, -1): {l:.6}");

    // bosons: Janossy densities straight from the kernel
    let boson = KernelModel::from_matrix(random_psd(2, 0.6, 1), Statistics::Boson)?;
    let mu = distribution_from_kernel(&boson, &Window::full(2), Caps::new(12, 12))?;
    println!("boson law on 2 sites: mass {:.12}, truncated tail {:.2e}", mu.total_mass(), mu.tail_mass);
    Ok(())
}
