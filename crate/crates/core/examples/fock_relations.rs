//! Fields of the quasi-free representation obey the canonical relations.

use nalgebra::DVector;
use quasifree::fock::{build_rep, Layout};
use quasifree::kernels::random_psd;
use quasifree::{KernelModel, Statistics};

fn main() -> quasifree::Result<()> {
    let f = DVector::from_vec(vec![0.3, -1.0, 0.5]);
    let g = DVector::from_vec(vec![1.1, 0.2, -0.7]);
    for (s, cutoff) in [(Statistics::Fermion, None), (Statistics::Boson, Some(8))] {
        let top = if s.is_fermionic() { 1.0 } else { 2.0 };
        let model = KernelModel::from_matrix(random_psd(3, top, 11), s)?;
        let rep = build_rep(&model, Layout::Standard, cutoff)?;
        println!("{:?}: Fock dimension {}, relation residual {:e}", s, rep.dim(), rep.relation_residual(&f, &g)?);
    }
    let model = KernelModel::from_matrix(random_psd(3, 1.0, 2), Statistics::Fermion)?;
    let rep = build_rep(&model, Layout::Standard, None)?;
    let (e0, e1) = (DVector::from_vec(vec![1.0, 0.0, 0.0]), DVector::from_vec(vec![0.0, 1.0, 0.0]));
    let two = rep.npoint_value(&[e0.clone(), e1.clone()], &[e0, e1])?;
    let m = model.matrix();
    println!("two-point value {two:.12} vs det {:.12}", m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]);
    Ok(())
}
