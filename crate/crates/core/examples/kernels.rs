//! Build kernels from the stock generators and watch validation reject bad ones.

use nalgebra::DMatrix;
use quasifree::kernels::{diagonal, gaussian_grid, random_psd};
use quasifree::{GroundSpace, KernelModel, Statistics, Window};

fn main() -> quasifree::Result<()> {
    let grid = KernelModel::from_matrix(gaussian_grid(5, 1.5)?, Statistics::Fermion)?;
    println!("gaussian grid spectrum: {:.4}", grid.eigenvalues().transpose());
    println!("expected points in sites 1..3: {:.4}", grid.local_trace(&Window::new(1..4))?);

    // a weighted ground space changes the point kernel but not the matrix
    let ground = GroundSpace::new(vec!["a".into(), "b".into()], vec![4.0, 1.0])?;
    let m = KernelModel::new(ground, diagonal(&[0.5, 0.5]), Statistics::Fermion)?;
    println!("point kernel at (a, a): {}", m.point_kernel(0, 0)?);

    let boson = KernelModel::from_matrix(random_psd(4, 3.0, 7), Statistics::Boson)?;
    println!("boson spectral radius: {:.3}", boson.spectral_radius());
    let (root, complement) = boson.square_roots();
    println!("sqrt(M)^2 = M: {:e}", (&root * &root - boson.matrix()).amax());
    println!("sqrt(1 + M)^2 = 1 + M: {:e}", (&complement * &complement - boson.matrix() - DMatrix::identity(4, 4)).amax());

    for (what, matrix, s) in [
        ("fermion eigenvalue above one", diagonal(&[1.2]), Statistics::Fermion),
        ("asymmetric", DMatrix::from_row_slice(2, 2, &[0.5, 0.4, 0.1, 0.5]), Statistics::Boson),
        ("negative eigenvalue", diagonal(&[-0.3]), Statistics::Boson),
    ] {
        match KernelModel::from_matrix(matrix, s) {
            Ok(_) => println!("{what}: accepted"),
            Err(e) => println!("{what}: {e}"),
        }
    }
    Ok(())
}
