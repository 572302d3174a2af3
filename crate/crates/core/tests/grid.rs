use std::f64::consts::PI;

use clifft::grid::io::{read_binary, read_csv, write_binary, write_csv};
use clifft::grid::{b_norm, lp_norm, radial_convolve, radial_profile, sample};
use clifft::heat::simpson;
use clifft::{GridSpec, Multivector, SampledField};

fn scalar_gaussian(m: usize, rate: f64) -> impl Fn(&[f64]) -> Multivector {
    move |x: &[f64]| Multivector::scalar(m, (-rate * x.iter().map(|v| v * v).sum::<f64>()).exp())
}

#[test]
fn sampling_examples() {
    let g = GridSpec::new(2, 3.0, 16).unwrap();
    let ones = sample(|_| Multivector::scalar(2, 1.0), &g);
    assert!((0..ones.len()).all(|i| ones.coeffs(i) == [1.0, 0.0, 0.0, 0.0]));
    let f = sample(
        |x| Multivector::from_coeffs(2, vec![x[0], x[1], x[0] * x[1], 1.0]).unwrap(),
        &g,
    );
    for node in [0, 37, 255] {
        let x = g.point(node);
        assert_eq!(f.coeffs(node), [x[0], x[1], x[0] * x[1], 1.0]);
    }
    let wide = GridSpec::new(2, 8.0, 64).unwrap();
    let gauss = sample(scalar_gaussian(2, 0.5), &wide);
    let boundary = (0..gauss.len())
        .filter(|&i| wide.multi_index(i).iter().any(|&k| k == 0 || k == 63))
        .map(|i| gauss.node_norm(i))
        .fold(0.0, f64::max);
    assert!(boundary < 1e-13);
}

#[test]
fn norms_against_closed_forms() {
    let g = GridSpec::default_2d();
    let heat = sample(
        |x| Multivector::scalar(2, (-(x[0] * x[0] + x[1] * x[1]) / 4.0).exp() / (4.0 * PI)),
        &g,
    );
    assert!((lp_norm(&heat, 1.0).unwrap() - 1.0).abs() <= 1e-6);
    let gauss = sample(scalar_gaussian(2, 0.5), &g);
    assert!((lp_norm(&gauss, 2.0).unwrap() - PI.sqrt()).abs() <= 1e-6);
    assert_eq!(b_norm(&gauss), lp_norm(&gauss, 1.0).unwrap());
    let z = SampledField::zeros(g);
    for p in [1.0, 1.5, 2.0, f64::INFINITY] {
        assert_eq!(lp_norm(&z, p).unwrap(), 0.0);
    }
    assert_eq!(b_norm(&z), 0.0);
    assert!(lp_norm(&gauss, 0.5).is_err());
}

#[test]
fn four_dimensional_b_norm_matches_radial_oracle() {
    let g = GridSpec::new(4, 6.0, 32).unwrap();
    let f = sample(scalar_gaussian(4, 0.5), &g);
    // |S³| ∫ (1 + r) r³ e^{-r²/2} dr
    let oracle = 2.0
        * PI
        * PI
        * simpson(
            |r| (1.0 + r) * r.powi(3) * (-r * r / 2.0).exp(),
            14.0,
            20_000,
        );
    let rel = (b_norm(&f) - oracle).abs() / oracle;
    assert!(rel <= 1e-5, "relative error {rel}");
}

#[test]
fn radial_profile_of_gaussian_is_decreasing() {
    let g = GridSpec::new(2, 6.0, 48).unwrap();
    let prof = radial_profile(&sample(scalar_gaussian(2, 0.5), &g));
    assert!(prof.windows(2).all(|w| w[1].1 < w[0].1));
    assert!(radial_profile(&SampledField::zeros(g))
        .iter()
        .all(|&(_, v)| v == 0.0));
}

#[test]
fn convolution_rejects_mismatched_grids() {
    let a = SampledField::zeros(GridSpec::new(2, 4.0, 16).unwrap());
    let b = SampledField::zeros(GridSpec::new(2, 4.0, 32).unwrap());
    assert!(radial_convolve(&a, &b).is_err());
}

#[test]
fn serialization_round_trips() {
    let g = GridSpec::new(2, 2.5, 8).unwrap();
    let f = sample(
        |x| Multivector::from_coeffs(2, vec![x[0], -x[1], 1.0 / 3.0, x[0] * x[1]]).unwrap(),
        &g,
    );
    let mut bin = Vec::new();
    write_binary(&f, &mut bin).unwrap();
    assert_eq!(read_binary(bin.as_slice()).unwrap(), f);
    let mut csv = Vec::new();
    write_csv(&f, &mut csv).unwrap();
    assert_eq!(read_csv(csv.as_slice()).unwrap(), f);
    bin.pop();
    assert!(read_binary(bin.as_slice()).is_err());
}
