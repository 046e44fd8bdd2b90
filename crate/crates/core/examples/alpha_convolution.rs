//! Integer-alpha tables describe sums of independent copies.

use quasifree::correlation::{convolution_power, correlation_from_kernel, correlation_from_distribution, distribution_from_kernel};
use quasifree::kernels::random_psd;
use quasifree::{Caps, KernelModel, Statistics, Window};

fn main() -> quasifree::Result<()> {
    let n = 3;
    let w = Window::full(n);
    for l in [2u32, 3] {
        let m = random_psd(n, 1.0, 9);
        let like = KernelModel::from_matrix(m, Statistics::FermionLike(l))?;
        let copy = like.scaled(f64::from(l), Statistics::Fermion)?;
        let caps = Caps::new(l as usize * n, l);
        let one = distribution_from_kernel(&copy, &w, Caps::simple(n))?;
        let sum = convolution_power(&one, l, caps)?;
        let direct = correlation_from_kernel(&like, &w, caps)?;
        let gap = correlation_from_distribution(&sum)?.function().max_abs_diff(direct.function());
        println!("fermion_like({l}): {} table entries, gap to {l}-fold convolution {gap:e}", direct.function().len());
    }
    Ok(())
}
