use std::f64::consts::PI;

use clifft::fourier::{
    dilation_check, growth_bound_check, inverse_check, kernel_bound_check, kernel_m2,
    kernel_symmetry_defect, plancherel_check, transform, transform_at, transform_fft,
    transform_quadrature, E12,
};
use clifft::grid::sample;
use clifft::poly::{psi_basis_element, Parity};
use clifft::{BladeIndex, GridSpec, KernelSign, Multivector, SampledField, TransformMethod};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SIGNS: [KernelSign; 2] = [KernelSign::Minus, KernelSign::Plus];

fn gaussian(x: &[f64]) -> Multivector {
    Multivector::scalar(2, (-0.5 * (x[0] * x[0] + x[1] * x[1])).exp())
}

fn small_grid() -> GridSpec {
    GridSpec::new(2, 8.0, 64).unwrap()
}

fn mixed_field(grid: &GridSpec) -> SampledField {
    sample(
        |x| {
            let w = (-0.6 * (x[0] * x[0] + x[1] * x[1])).exp();
            Multivector::from_coeffs(
                2,
                vec![(1.0 + x[0]) * w, x[1] * w, -0.5 * w, x[0] * x[1] * w],
            )
            .unwrap()
        },
        grid,
    )
}

#[test]
fn kernel_examples() {
    let k = kernel_m2([1.0, 0.0], [0.0, 1.0], KernelSign::Minus);
    let want = Multivector::from_coeffs(2, vec![1f64.cos(), 0.0, 0.0, 1f64.sin()]).unwrap();
    assert!(k.max_abs_diff(&want) < 1e-15);
    let kp = kernel_m2([1.0, 0.0], [0.0, 1.0], KernelSign::Plus);
    assert!((kp.get(E12) + 1f64.sin()).abs() < 1e-15);
    assert_eq!(
        kernel_m2([0.7, -2.0], [0.7, -2.0], KernelSign::Minus),
        Multivector::scalar(2, 1.0)
    );

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pairs = Vec::new();
    let mut triples = Vec::new();
    for _ in 0..10_000 {
        let x = [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)];
        let y = [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)];
        pairs.push((x, y));
        triples.push((x, y, rng.gen_range(0.1..4.0)));
    }
    for sign in SIGNS {
        let worst = pairs
            .iter()
            .map(|&(x, y)| (kernel_m2(x, y, sign).norm() - 1.0).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-14);
        let bound = kernel_bound_check(2, &pairs, sign).unwrap();
        assert!(bound.passed && bound.max_ratio <= 1.0);
        assert!(kernel_symmetry_defect(&triples[..1000], sign) <= 1e-12);
    }
    let origin = kernel_bound_check(2, &[([0.0, 0.0], [3.0, 1.0])], KernelSign::Minus).unwrap();
    assert_eq!(origin.max_ratio, 1.0);
    let far = kernel_bound_check(2, &[([20.0, 20.0], [20.0, 20.0])], KernelSign::Minus).unwrap();
    assert!(far.max_ratio < 1e-300);
    assert!(kernel_bound_check(4, &pairs[..1], KernelSign::Minus).is_err());
}

#[test]
fn fast_path_matches_quadrature_on_small_grid() {
    let grid = small_grid();
    let f = mixed_field(&grid);
    for sign in SIGNS {
        let q = transform_quadrature(&f, sign).unwrap().field;
        let p = transform_fft(&f, sign).unwrap().field;
        assert!(q.max_diff(&p).unwrap() <= 1e-12);
    }
}

#[test]
fn quadrature_fixed_point_and_vector_gaussian() {
    let grid = small_grid();
    let e1 = Multivector::blade(2, BladeIndex::generator(0), 1.0);
    let f = sample(gaussian, &grid);
    let v = sample(|x| e1.gp(&gaussian(x)), &grid);
    for sign in SIGNS {
        let out = transform_quadrature(&f, sign).unwrap();
        assert_eq!(out.method, TransformMethod::Quadrature);
        assert!(out.field.max_diff(&f).unwrap() <= 1e-6);
        assert!(
            transform_quadrature(&v, sign)
                .unwrap()
                .field
                .max_diff(&v)
                .unwrap()
                <= 1e-6
        );
    }
}

#[test]
fn linearity() {
    let grid = small_grid();
    let a = mixed_field(&grid);
    let b = sample(|x| gaussian(x).gp(&Multivector::blade(2, E12, 2.0)), &grid);
    for method in [TransformMethod::Quadrature, TransformMethod::Fft] {
        let lhs = transform(&a.axpy(-3.0, &b).unwrap(), KernelSign::Minus, method)
            .unwrap()
            .field;
        let ta = transform(&a, KernelSign::Minus, method).unwrap().field;
        let tb = transform(&b, KernelSign::Minus, method).unwrap().field;
        let rhs = ta.axpy(-3.0, &tb).unwrap();
        assert!(lhs.max_diff(&rhs).unwrap() <= 1e-12);
    }
}

#[test]
fn default_grid_fast_path_identities() {
    let grid = GridSpec::default_2d();
    let f = sample(gaussian, &grid);
    let psi = psi_basis_element(2, 0, 1, 0, Parity::Even)
        .unwrap()
        .sample(&grid)
        .unwrap();
    for sign in SIGNS {
        let out = transform_fft(&f, sign).unwrap().field;
        assert!(out.max_diff(&f).unwrap() <= 1e-6);
        assert!(inverse_check(&f, sign, TransformMethod::Fft).unwrap() <= 1e-5);
        assert!(inverse_check(&psi, sign, TransformMethod::Fft).unwrap() <= 1e-5);
        assert!((plancherel_check(&f, sign, TransformMethod::Fft).unwrap() - 1.0).abs() <= 1e-6);
        assert!((plancherel_check(&psi, sign, TransformMethod::Fft).unwrap() - 1.0).abs() <= 1e-6);
    }
    let heat = sample(
        |x| Multivector::scalar(2, (-(x[0] * x[0] + x[1] * x[1]) / 4.0).exp() / (4.0 * PI)),
        &grid,
    );
    let want = sample(
        |y| Multivector::scalar(2, (-(y[0] * y[0] + y[1] * y[1])).exp() / (2.0 * PI)),
        &grid,
    );
    let got = transform_fft(&heat, KernelSign::Minus).unwrap().field;
    assert!(got.max_diff(&want).unwrap() <= 1e-6);
}

#[test]
fn off_grid_evaluation_matches_grid_transform() {
    let grid = small_grid();
    let f = mixed_field(&grid);
    let full = transform_quadrature(&f, KernelSign::Plus).unwrap().field;
    for node in [0, 100, 2080, 4095] {
        let y = grid.point(node);
        let v = transform_at(&f, [y[0], y[1]], KernelSign::Plus).unwrap();
        assert!(v.max_abs_diff(&full.value(node)) <= 1e-13);
    }
}

#[test]
fn zero_field_and_bad_input() {
    let grid = small_grid();
    let z = SampledField::zeros(grid);
    assert!(transform_fft(&z, KernelSign::Minus)
        .unwrap()
        .field
        .is_zero());
    assert!(inverse_check(&z, KernelSign::Minus, TransformMethod::Fft).is_err());
    let g4 = GridSpec::new(4, 4.0, 8).unwrap();
    assert!(transform_fft(&SampledField::zeros(g4), KernelSign::Minus).is_err());
}

#[test]
fn dilation_exponent_is_minus_m() {
    let grid = GridSpec::new(2, 10.0, 128).unwrap();
    let r = dilation_check(
        gaussian,
        &grid,
        2.0,
        KernelSign::Minus,
        TransformMethod::Fft,
    )
    .unwrap();
    let gamma = r.fitted_exponent.unwrap();
    assert!((gamma + 2.0).abs() <= 1e-4, "γ = {gamma}");
    assert!(r.passed && r.kernel_symmetry_defect <= 1e-12);
    assert!(r.distance_minus_m.unwrap() < r.distance_plus_m.unwrap());
    let id = dilation_check(
        gaussian,
        &grid,
        1.0,
        KernelSign::Minus,
        TransformMethod::Fft,
    )
    .unwrap();
    assert!(id.fitted_exponent.is_none() && id.passed);
}

#[test]
fn complexified_growth_is_bounded() {
    let grid = GridSpec::new(2, 8.0, 64).unwrap();
    let a = 0.5;
    let f = sample(
        |x| Multivector::scalar(2, (-a * (x[0] * x[0] + x[1] * x[1])).exp()),
        &grid,
    );
    let dirs = [[1.0, 0.0], [0.0, 1.0], [0.6, 0.8]];
    let r = growth_bound_check(&f, a, &dirs, KernelSign::Minus).unwrap();
    // F(e^{-a‖x‖²})(ξ) = (2a)^{-1} e^{-‖ξ‖²/4a}
    let closed = 1.0 / (2.0 * a);
    assert!(r.c_emp_real <= closed * (1.0 + 1e-6));
    assert!(r.bounded && r.c_emp <= 10.0 * r.c_emp_real);
    let wide = sample(
        |x| Multivector::scalar(2, (-0.2 * (x[0] * x[0] + x[1] * x[1])).exp()),
        &grid,
    );
    assert!(growth_bound_check(&wide, a, &dirs, KernelSign::Minus).is_err());
}
