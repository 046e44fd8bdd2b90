//! The joint spectral measure of commuting densities is the law of the counts.

use quasifree::correlation::{count_pushforward, distribution_from_kernel};
use quasifree::fock::{build_rep, joint_spectral_measure, Layout};
use quasifree::kernels::gaussian_grid;
use quasifree::{Caps, KernelModel, Statistics, Window};

fn main() -> quasifree::Result<()> {
    let model = KernelModel::from_matrix(gaussian_grid(4, 1.2)?, Statistics::Fermion)?;
    let rep = build_rep(&model, Layout::Standard, None)?;
    let windows = [Window::new([0, 1]), Window::new([2, 3])];
    let family = windows
        .iter()
        .map(|w| Ok(rep.density(w)?.to_matrix(rep.space())))
        .collect::<quasifree::Result<Vec<_>>>()?;
    let atoms = joint_spectral_measure(&family, &rep.vacuum(), 1)?;

    let mu = distribution_from_kernel(&model, &Window::full(4), Caps::simple(4))?;
    let law = count_pushforward(&mu, &windows);
    for atom in &atoms {
        let key: Vec<u32> = atom.point.iter().map(|x| x.round() as u32).collect();
        println!("{:>6.3?}  spectral {:.10}  counts {:.10}", atom.point, atom.weight, law.get(&key).copied().unwrap_or(0.0));
    }
    Ok(())
}
