//! Products of window densities on the vacuum reproduce correlations.

use quasifree::correlation::correlation_from_kernel;
use quasifree::fock::{build_rep, q_apply, DensityFamily, Layout};
use quasifree::kernels::random_psd;
use quasifree::{Caps, ConfigurationFunction, KernelModel, Statistics, Window};

fn main() -> quasifree::Result<()> {
    let model = KernelModel::from_matrix(random_psd(3, 1.0, 4), Statistics::Fermion)?;
    let rep = build_rep(&model, Layout::Standard, None)?;
    let w = Window::full(3);
    let caps = Caps::simple(3);
    let g = ConfigurationFunction::from_fn(w.clone(), caps, |eta| (1 + eta.size()) as f64 * 0.5f64.powi(eta.count(0) as i32))?;

    let mut family = DensityFamily::density(&rep);
    let v = q_apply(&mut family, &g)?;
    let omega = rep.vacuum();
    let paired = omega.dot(&v);

    let rho = correlation_from_kernel(&model, &w, caps)?;
    let direct: f64 = g.iter().map(|(eta, x)| x * rho.get(eta)).sum();
    println!("<Q(G) vacuum, vacuum> = {paired:.12}");
    println!("sum G rho           = {direct:.12}");
    Ok(())
}
