//! On several copies the reduced density sees only the one-copy parts.

use quasifree::correlation::correlation_from_kernel;
use quasifree::fock::{build_rep, q_product, DensityFamily, Layout};
use quasifree::kernels::random_psd;
use quasifree::{Caps, Configuration, KernelModel, Statistics, SymmetricIndicator, Window};

fn main() -> quasifree::Result<()> {
    let model = KernelModel::from_matrix(random_psd(2, 1.0, 6), Statistics::FermionLike(2))?;
    let rep = build_rep(&model, Layout::Copies(2), None)?;
    let table = correlation_from_kernel(&model, &Window::full(2), Caps::new(2, 1))?;
    let omega = rep.vacuum();
    let both = Configuration::from_sites([0, 1]);

    let mut reduced = DensityFamily::density(&rep);
    let pair = [Window::singleton(0), Window::singleton(1)];
    // the indicator product weighs the pair {0, 1} by 1/2
    let weight = SymmetricIndicator::new(pair.to_vec())?.eval(&both);
    let v = q_product(&mut reduced, &pair)?;
    println!("reduced density pair: {:.12}", omega.dot(&v));
    println!("alpha = -1/2 table:   {:.12}", weight * table.get(&both));

    let mut full = DensityFamily::full_density(&rep);
    let v = q_product(&mut full, &pair)?;
    println!("full density pair:    {:.12}", omega.dot(&v));
    let m = model.matrix();
    println!("det:                  {:.12}", weight * (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]));
    Ok(())
}
