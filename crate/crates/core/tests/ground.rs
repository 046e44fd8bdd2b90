use nalgebra::DMatrix;
use proptest::prelude::*;
use quasifree::ground::{validate_model, DEFAULT_TOLERANCE};
use quasifree::kernels::random_psd;
use quasifree::{Error, GroundSpace, KernelModel, Statistics, Window};

fn scalar(m: f64, s: Statistics) -> Result<KernelModel, Error> {
    validate_model(GroundSpace::unit(1), DMatrix::from_element(1, 1, m), s, DEFAULT_TOLERANCE)
}

#[test]
fn spectrum_validation() {
    assert!(scalar(0.5, Statistics::Fermion).is_ok());
    assert!(matches!(scalar(1.5, Statistics::Fermion), Err(Error::Spectrum { .. })));
    assert!(scalar(1.5, Statistics::Boson).is_ok());
    assert!(matches!(scalar(-0.1, Statistics::Boson), Err(Error::Spectrum { .. })));
    assert!(matches!(scalar(1.5, Statistics::FermionLike(2)), Err(Error::Spectrum { .. })));
}

#[test]
fn rejects_bad_ground_and_matrix() {
    assert!(matches!(
        GroundSpace::new(vec!["a".into(), "a".into()], vec![1.0, 1.0]),
        Err(Error::DuplicateLabel(_))
    ));
    assert!(matches!(
        GroundSpace::new(vec!["a".into(), "b".into()], vec![1.0, 0.0]),
        Err(Error::NonPositiveWeight { .. })
    ));
    let asym = DMatrix::from_row_slice(2, 2, &[0.5, 0.1, 0.2, 0.5]);
    assert!(matches!(KernelModel::from_matrix(asym, Statistics::Fermion), Err(Error::Asymmetric(_))));
    let wrong = DMatrix::from_row_slice(1, 2, &[0.5, 0.1]);
    assert!(KernelModel::from_matrix(wrong, Statistics::Fermion).is_err());
}

#[test]
fn point_kernel_divides_by_weights() {
    let m = DMatrix::from_row_slice(2, 2, &[0.5, 0.25, 0.25, 0.5]);
    let unit = KernelModel::from_matrix(m.clone(), Statistics::Fermion).unwrap();
    assert_eq!(unit.point_kernel(0, 1).unwrap(), 0.25);
    assert_eq!(unit.point_kernel(1, 1).unwrap(), 0.5);

    let m = DMatrix::from_row_slice(2, 2, &[0.5, 0.5, 0.5, 0.5]);
    let ground = GroundSpace::new(vec!["a".into(), "b".into()], vec![4.0, 1.0]).unwrap();
    let weighted = KernelModel::new(ground, m, Statistics::Fermion).unwrap();
    assert!((weighted.point_kernel(0, 1).unwrap() - 0.25).abs() < 1e-15);
    assert!(weighted.point_kernel(2, 0).is_err());
}

#[test]
fn square_roots_of_scalars_and_identity() {
    let (m1, m2) = scalar(0.25, Statistics::Fermion).unwrap().square_roots();
    assert!((m1[(0, 0)] - 0.5).abs() < 1e-12);
    assert!((m2[(0, 0)] - 0.75_f64.sqrt()).abs() < 1e-12);
    let (_, m2) = scalar(0.25, Statistics::Boson).unwrap().square_roots();
    assert!((m2[(0, 0)] - 1.25_f64.sqrt()).abs() < 1e-12);
    let id = KernelModel::from_matrix(DMatrix::identity(2, 2), Statistics::Fermion).unwrap();
    let (m1, m2) = id.square_roots();
    assert!((m1 - DMatrix::<f64>::identity(2, 2)).amax() < 1e-12);
    assert!(m2.amax() < 1e-6);
}

#[test]
fn local_traces() {
    let diag = KernelModel::from_matrix(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.3, 0.7])), Statistics::Fermion).unwrap();
    assert_eq!(diag.local_trace(&Window::empty()).unwrap(), 0.0);
    assert!((diag.local_trace(&Window::full(2)).unwrap() - 1.0).abs() < 1e-15);
    let m = DMatrix::from_row_slice(2, 2, &[0.5, 0.2, 0.2, 0.5]);
    let model = KernelModel::from_matrix(m, Statistics::Fermion).unwrap();
    assert_eq!(model.local_trace(&Window::singleton(0)).unwrap(), 0.5);
    assert!(model.local_trace(&Window::singleton(5)).is_err());
}

#[test]
fn window_parsing() {
    assert_eq!(Window::parse("2, 0,2").unwrap(), Window::new([0, 2]));
    assert!(Window::parse("").unwrap().is_empty());
    assert!(Window::parse("a").is_err());
}

proptest! {
    #[test]
    fn square_roots_square_back(n in 1usize..7, seed in 0u64..1000, boson in any::<bool>()) {
        let s = if boson { Statistics::Boson } else { Statistics::Fermion };
        let top = if boson { 3.0 } else { 1.0 };
        let model = KernelModel::from_matrix(random_psd(n, top, seed), s).unwrap();
        let (m1, m2) = model.square_roots();
        let sign = if boson { 1.0 } else { -1.0 };
        let one = DMatrix::<f64>::identity(n, n);
        let tol = n as f64 * 1e-10;
        prop_assert!((&m1 * &m1 - model.matrix()).amax() <= tol);
        prop_assert!((&m2 * &m2 - (one + model.matrix() * sign)).amax() <= tol);
    }

    #[test]
    fn point_kernel_is_symmetric(n in 1usize..6, seed in 0u64..1000) {
        let weights: Vec<f64> = (0..n).map(|i| 0.5 + i as f64).collect();
        let labels = (0..n).map(|i| format!("s{i}")).collect();
        let ground = GroundSpace::new(labels, weights).unwrap();
        let model = KernelModel::new(ground, random_psd(n, 1.0, seed), Statistics::Fermion).unwrap();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(model.point_kernel(x, y).unwrap(), model.point_kernel(y, x).unwrap());
            }
        }
    }
}
