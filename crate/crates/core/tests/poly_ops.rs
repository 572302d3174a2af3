use clifft::poly::{
    dirac, gamma_op, laguerre_eval, laplace, monogenic_basis, psi_basis_element, LaguerreParams,
    Parity,
};
use clifft::{BladeIndex, GridSpec, Multivector, PolyField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut ChaCha8Rng, m: usize, max_degree: u32) -> PolyField {
    let mut p = PolyField::zero(m);
    for _ in 0..rng.gen_range(1..8) {
        let mut alpha = vec![0u32; m];
        let mut left = rng.gen_range(0..=max_degree);
        while left > 0 {
            alpha[rng.gen_range(0..m)] += 1;
            left -= 1;
        }
        let c: Vec<f64> = (0..1 << m).map(|_| rng.gen_range(-3.0..3.0)).collect();
        p.add_term(alpha, Multivector::from_coeffs(m, c).unwrap());
    }
    p
}

#[test]
fn laplacian_is_minus_dirac_squared() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for m in [2usize, 4] {
        for _ in 0..50 {
            let p = random_poly(&mut rng, m, 4);
            let lhs = laplace(&p);
            let rhs = dirac(&dirac(&p)).scale(-1.0);
            let scale = p.max_abs_coeff().max(1.0);
            assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * scale, "m={m} p={p:?}");
        }
    }
}

#[test]
fn operator_examples() {
    let e12 = Multivector::blade(2, BladeIndex(0b11), 1.0);
    let x1 = PolyField::coordinate(2, 0);
    let x2 = PolyField::coordinate(2, 1);
    let monogenic = x1.sub(&x2.left_mul(&e12));
    assert!(dirac(&monogenic).is_zero());
    assert!(dirac(&PolyField::constant(e12.clone())).is_zero());
    let r2 = PolyField::radius_sqr(2);
    let grad = x1
        .left_mul(&Multivector::blade(2, BladeIndex::generator(0), 2.0))
        .add(&x2.left_mul(&Multivector::blade(2, BladeIndex::generator(1), 2.0)));
    assert!(dirac(&r2).max_abs_diff(&grad) == 0.0);
    for m in [2usize, 4, 6] {
        let lap = laplace(&PolyField::radius_sqr(m));
        assert!(
            lap.max_abs_diff(&PolyField::constant(Multivector::scalar(m, 2.0 * m as f64))) == 0.0
        );
        assert!(gamma_op(&PolyField::radius_sqr(m)).is_zero());
    }
    assert!(laplace(&x1.mul(&x2)).is_zero());
    assert!(gamma_op(&monogenic).max_abs_diff(&monogenic.scale(-1.0)) == 0.0);
    assert!(gamma_op(&PolyField::constant(Multivector::scalar(2, 5.0))).is_zero());
}

#[test]
fn monogenic_bases_are_annihilated() {
    for (m, k) in [(2usize, 0u32), (2, 1), (2, 2), (2, 3), (4, 1), (4, 2)] {
        let basis = monogenic_basis(m, k).unwrap();
        assert!(!basis.is_empty());
        for p in &basis {
            assert!(p.is_homogeneous());
            assert_eq!(p.degree(), Some(k as usize));
            let residual = dirac(p).max_abs_coeff() / p.max_abs_coeff();
            assert!(residual < 1e-10, "m={m} k={k} residual {residual}");
        }
    }
    assert_eq!(monogenic_basis(2, 0).unwrap().len(), 4);
    let e12 = Multivector::blade(2, BladeIndex(0b11), 1.0);
    let target = PolyField::coordinate(2, 0).sub(&PolyField::coordinate(2, 1).left_mul(&e12));
    let first = &monogenic_basis(2, 1).unwrap()[0];
    assert!(first.max_abs_diff(&target) < 1e-12);
}

/// `Σ_i binom(j + α, j - i) (-t)^i / i!`.
fn laguerre_by_summation(j: usize, alpha: f64, t: f64) -> f64 {
    let binom =
        |top: f64, k: usize| (0..k).fold(1.0, |acc, r| acc * (top - r as f64) / (r as f64 + 1.0));
    let mut fact = 1.0;
    let mut sum = 0.0;
    for i in 0..=j {
        if i > 0 {
            fact *= i as f64;
        }
        sum += binom(j as f64 + alpha, j - i) * (-t).powi(i as i32) / fact;
    }
    sum
}

#[test]
fn laguerre_recurrence_matches_summation() {
    for j in 0..=6 {
        for alpha in [-0.5, 0.0, 1.0, 1.5, 3.0] {
            for t in [0.0, 0.25, 1.0, 2.0, 5.0, 9.5] {
                let got = laguerre_eval(LaguerreParams::new(j, alpha).unwrap(), t).unwrap();
                let want = laguerre_by_summation(j, alpha, t);
                assert!(
                    (got - want).abs() <= 1e-12 * want.abs().max(1.0),
                    "L_{j}^{alpha}({t})"
                );
            }
        }
    }
    let l1 = laguerre_eval(LaguerreParams::new(1, 2.0).unwrap(), 0.5).unwrap();
    assert!((l1 - 2.5).abs() < 1e-15);
    // L_2^1(2) = 3 - 3*2 + 2²/2 = -1
    let l2 = laguerre_eval(LaguerreParams::new(2, 1.0).unwrap(), 2.0).unwrap();
    assert!((l2 + 1.0).abs() < 1e-15);
    assert!(LaguerreParams::new(2, -1.0).is_err());
    assert!(laguerre_eval(LaguerreParams::new(2, 0.0).unwrap(), -1.0).is_err());
}

#[test]
fn psi_examples() {
    let g = psi_basis_element(2, 0, 0, 0, Parity::Even).unwrap();
    for x in [[0.0, 0.0], [1.0, 2.0], [-3.0, 0.5]] {
        let r2 = x[0] * x[0] + x[1] * x[1];
        assert!(
            g.eval(&x)
                .max_abs_diff(&Multivector::scalar(2, (-r2 / 2.0).exp()))
                < 1e-15
        );
    }
    let p = psi_basis_element(2, 0, 1, 0, Parity::Even).unwrap();
    assert!(
        p.eval(&[1.0, 0.0])
            .max_abs_diff(&Multivector::scalar(2, (-0.5f64).exp()))
            < 1e-15
    );
    assert!(psi_basis_element(2, 0, 1, 9, Parity::Even).is_err());
}

#[test]
fn psi_decays_faster_than_any_weaker_gaussian() {
    let grid = GridSpec::new(2, 10.0, 128).unwrap();
    for (j, k) in [(0usize, 1u32), (1, 0), (1, 1), (2, 0)] {
        for parity in [Parity::Even, Parity::Odd] {
            let f = psi_basis_element(2, j, k, 0, parity)
                .unwrap()
                .sample(&grid)
                .unwrap();
            for p in [0.25, 0.35, 0.4] {
                // e^{p‖x‖²} ‖ψ‖ peaks in the interior and is small on the boundary band
                let weighted: Vec<f64> = (0..f.len())
                    .map(|i| (p * grid.radius_sqr(i)).exp() * f.node_norm(i))
                    .collect();
                let edge = (0..f.len())
                    .filter(|&i| grid.sup_coord(i) >= 9.5)
                    .map(|i| weighted[i])
                    .fold(0.0, f64::max);
                let peak = weighted.iter().copied().fold(0.0, f64::max);
                assert!(edge <= 0.05 * peak, "j={j} k={k} p={p}");
            }
        }
    }
}
