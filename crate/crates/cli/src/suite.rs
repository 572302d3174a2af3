//! The check groups behind each command.

use std::f64::consts::PI;
use std::fmt::Display;

use clifft::algebra::inner_product;
use clifft::fourier::{
    dilation_check, inverse_check, kernel_bound_check, kernel_m2, kernel_symmetry_defect,
    transform, E12,
};
use clifft::grid::{lp_norm, sample};
use clifft::heat::{
    heat_inverse_check, heat_mass, heat_mass_radial, heat_origin_laplacian, heat_pde_residual,
    heat_scaling_check, heat_semigroup_check, heat_transform_check, sample_heat_kernel,
    HeatKernelParams,
};
use clifft::poly::{dirac, laplace, psi_basis_element, Parity};
use clifft::uncertainty::{
    hardy_verify, miyachi_functional, miyachi_verify, polynomial_gaussian_image,
    weighted_transform_check, MiyachiConclusion, MiyachiReport, Regime,
};
use clifft::{
    par, BladeIndex, GridSpec, KernelSign, Multivector, PolyField, SampledField, TransformMethod,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::config::{Command, RunConfig, HARDY_RATES, POLYGAUSS_DELTAS};
use crate::plotdata::{self, PlotFile};

const QUAD: TransformMethod = TransformMethod::Quadrature;
const FFT: TransformMethod = TransformMethod::Fft;

/// Acceptance thresholds.
pub mod tol {
    pub const ALGEBRA: f64 = 1e-12;
    pub const KERNEL_NORM: f64 = 1e-14;
    pub const KERNEL_BOUND: f64 = 1.0;
    pub const KERNEL_SYMMETRY: f64 = 1e-12;
    pub const DILATION: f64 = 1e-4;
    pub const FIXED_POINT: f64 = 1e-6;
    pub const INVERSION: f64 = 1e-4;
    pub const PLANCHEREL: f64 = 1e-4;
    pub const FFT_AGREEMENT: f64 = 1e-6;
    pub const SPEEDUP: f64 = 20.0;
    pub const PDE_RESIDUAL: f64 = 1e-4;
    pub const PDE_ORDER_RATIO: f64 = 4.0;
    pub const PDE_ORDER_TOL: f64 = 0.4;
    pub const HEAT_TRANSFORM: f64 = 1e-6;
    pub const HEAT_INVERSE: f64 = 1e-5;
    pub const HEAT_SCALING: f64 = 1e-12;
    pub const HEAT_MASS: f64 = 1e-6;
    pub const HEAT_MASS_RADIAL: f64 = 1e-5;
    pub const SEMIGROUP: f64 = 1e-5;
    pub const HARDY_PRODUCT_REL: f64 = 1e-3;
    pub const HARDY_RECONSTRUCTION: f64 = 1e-5;
    pub const PSI_INVERSE: f64 = 1e-4;
    pub const POLYGAUSS_RESIDUAL: f64 = 1e-5;
    pub const FUNCTIONAL_ZERO: f64 = 1e-6;
    pub const STABLE_GROWTH: f64 = 1.01;
    pub const DIVERGENT_GROWTH: f64 = 2.0;
}

/// How a measured value is judged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tol {
    AtMost(f64),
    AtLeast(f64),
    Within {
        target: f64,
        tol: f64,
    },
    /// The value is a flag that must equal 1.
    Holds,
}

impl Tol {
    pub fn admits(self, v: f64) -> bool {
        match self {
            Tol::AtMost(t) => v <= t,
            Tol::AtLeast(t) => v >= t,
            Tol::Within { target, tol } => (v - target).abs() <= tol,
            Tol::Holds => v == 1.0,
        }
    }

    pub fn text(self) -> String {
        match self {
            Tol::AtMost(t) => format!("<= {t:e}"),
            Tol::AtLeast(t) => format!(">= {t:e}"),
            Tol::Within { target, tol } => format!("{target:e} +- {tol:e}"),
            Tol::Holds => "== 1".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub id: String,
    pub params: String,
    pub value: f64,
    pub tolerance: String,
    pub pass: bool,
    /// Informational rows do not affect the exit status.
    pub gating: bool,
}

#[derive(Debug, Default)]
pub struct Report {
    pub rows: Vec<Row>,
    pub details: Vec<(String, Value)>,
    pub plots: Vec<PlotFile>,
    pub errors: Vec<String>,
}

impl Report {
    fn push(
        &mut self,
        id: String,
        params: String,
        value: clifft::Result<f64>,
        t: Tol,
        gating: bool,
    ) {
        let value = value.unwrap_or_else(|e| {
            self.errors.push(format!("{id}: {e}"));
            f64::NAN
        });
        let tolerance = if gating {
            t.text()
        } else {
            format!("info {}", t.text())
        };
        self.rows.push(Row {
            pass: t.admits(value),
            id,
            params,
            value,
            tolerance,
            gating,
        });
    }

    pub fn check(
        &mut self,
        id: impl Into<String>,
        params: String,
        value: clifft::Result<f64>,
        t: Tol,
    ) {
        self.push(id.into(), params, value, t, true);
    }

    pub fn info(
        &mut self,
        id: impl Into<String>,
        params: String,
        value: clifft::Result<f64>,
        t: Tol,
    ) {
        self.push(id.into(), params, value, t, false);
    }

    pub fn detail(&mut self, key: impl Into<String>, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("detail records serialize");
        self.details.push((key.into(), v));
    }

    pub fn plot(&mut self, plot: PlotFile) {
        self.plots.push(plot);
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass || !r.gating)
    }

    pub fn failed_ids(&self) -> Vec<&str> {
        self.rows
            .iter()
            .filter(|r| r.gating && !r.pass)
            .map(|r| r.id.as_str())
            .collect()
    }
}

/// `key=value` pairs joined by `;`.
pub fn params(items: &[(&str, &dyn Display)]) -> String {
    items
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Independent RNG stream for item `item` of group `group`.
fn rng_for(seed: u64, group: u64, item: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ group.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.set_stream(item);
    rng
}

fn grid_params(g: &GridSpec, sign: KernelSign) -> String {
    params(&[
        ("m", &g.dim()),
        ("R", &g.half_width()),
        ("N", &g.points()),
        ("sign", &sign.as_str()),
    ])
}

fn radial_field(grid: &GridSpec, profile: impl Fn(f64) -> f64 + Sync) -> SampledField {
    sample(
        |x| Multivector::scalar(2, profile(x[0] * x[0] + x[1] * x[1])),
        grid,
    )
}

/// Run the groups that make up `cfg.command`.
pub fn run_suite(cfg: &RunConfig) -> Report {
    let mut report = Report::default();
    let grid = cfg.grid_spec().expect("validated config");
    let groups: &[fn(&RunConfig, &GridSpec, &mut Report)] = match cfg.command {
        Command::Transform => &[algebra, kernel, transforms],
        Command::Heat => &[heat],
        Command::Hardy => &[hardy],
        Command::Miyachi => &[miyachi],
        Command::Corollary => &[corollary],
        Command::VerifyAll => &[algebra, kernel, transforms, heat, hardy, miyachi, corollary],
        Command::Bench => &[],
    };
    for group in groups {
        group(cfg, &grid, &mut report);
    }
    report
}

const CASES: usize = 1000;

fn random_vector(rng: &mut ChaCha8Rng, m: usize) -> Multivector {
    let x: Vec<f64> = (0..m).map(|_| rng.gen_range(-10.0..10.0)).collect();
    Multivector::vector(&x)
}

fn random_poly(rng: &mut ChaCha8Rng, m: usize, max_degree: u32) -> PolyField {
    let mut p = PolyField::zero(m);
    for _ in 0..rng.gen_range(1..8) {
        let mut alpha = vec![0u32; m];
        for _ in 0..rng.gen_range(0..=max_degree) {
            alpha[rng.gen_range(0..m)] += 1;
        }
        let c: Vec<f64> = (0..1 << m).map(|_| rng.gen_range(-3.0..3.0)).collect();
        p.add_term(alpha, Multivector::from_coeffs(m, c).expect("length 2^m"));
    }
    p
}

fn algebra(cfg: &RunConfig, _: &GridSpec, report: &mut Report) {
    for m in [2usize, 4] {
        let gens: Vec<Multivector> = (0..m)
            .map(|i| Multivector::blade(m, BladeIndex::generator(i), 1.0))
            .collect();
        let mut table = 0.0_f64;
        for (i, ei) in gens.iter().enumerate() {
            for (j, ej) in gens.iter().enumerate() {
                let want = if i == j { -2.0 } else { 0.0 };
                let got = &ei.gp(ej) + &ej.gp(ei);
                table = table.max(got.max_abs_diff(&Multivector::scalar(m, want)));
            }
        }
        let pm = params(&[("m", &m)]);
        report.check(
            "algebra.generators",
            pm.clone(),
            Ok(table),
            Tol::AtMost(tol::ALGEBRA),
        );

        let errs = par::map_indices(CASES, |case| {
            let mut rng = rng_for(cfg.seed, 1 + m as u64, case as u64);
            let x = random_vector(&mut rng, m);
            let y = random_vector(&mut rng, m);
            let dot = inner_product(&x, &y).expect("vectors");
            let anti = (&(&x.gp(&y) + &y.gp(&x)) + &dot.scale(2.0)).norm() / (x.norm() * y.norm());
            let square = (&x.gp(&x) + &Multivector::scalar(m, x.norm_sqr())).norm() / x.norm_sqr();
            let p = random_poly(&mut rng, m, 4);
            let lap = laplace(&p).max_abs_diff(&dirac(&dirac(&p)).scale(-1.0))
                / p.max_abs_coeff().max(1.0);
            [anti, square, lap]
        });
        let worst = |k: usize| errs.iter().map(|e| e[k]).fold(0.0, f64::max);
        let pc = params(&[("m", &m), ("cases", &CASES)]);
        report.check(
            "algebra.anticommutator",
            pc.clone(),
            Ok(worst(0)),
            Tol::AtMost(tol::ALGEBRA),
        );
        report.check(
            "algebra.vector_square",
            pc.clone(),
            Ok(worst(1)),
            Tol::AtMost(tol::ALGEBRA),
        );
        report.check(
            "algebra.laplace_dirac",
            pc,
            Ok(worst(2)),
            Tol::AtMost(tol::ALGEBRA),
        );
    }
}

fn kernel(cfg: &RunConfig, grid: &GridSpec, report: &mut Report) {
    let mut rng = rng_for(cfg.seed, 10, 0);
    let mut pairs = Vec::with_capacity(10_000);
    let mut triples = Vec::with_capacity(1000);
    for i in 0..10_000 {
        let x = [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)];
        let y = [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)];
        pairs.push((x, y));
        if i < 1000 {
            triples.push((x, y, rng.gen_range(0.1..4.0)));
        }
    }
    for sign in [KernelSign::Minus, KernelSign::Plus] {
        let s = sign.as_str();
        let unit = par::max_indices(pairs.len(), |i| {
            let (x, y) = pairs[i];
            (kernel_m2(x, y, sign).norm() - 1.0).abs()
        });
        report.check(
            "kernel.unit_norm",
            params(&[("sign", &s), ("pairs", &pairs.len())]),
            Ok(unit),
            Tol::AtMost(tol::KERNEL_NORM),
        );
        report.check(
            "kernel.bound_ratio",
            params(&[("sign", &s), ("pairs", &pairs.len())]),
            kernel_bound_check(2, &pairs, sign).map(|r| r.max_ratio),
            Tol::AtMost(tol::KERNEL_BOUND),
        );
        report.check(
            "kernel.symmetry",
            params(&[("sign", &s), ("triples", &triples.len())]),
            Ok(kernel_symmetry_defect(&triples, sign)),
            Tol::AtMost(tol::KERNEL_SYMMETRY),
        );
    }
    let gaussian = |x: &[f64]| Multivector::scalar(2, (-0.5 * (x[0] * x[0] + x[1] * x[1])).exp());
    let dil = dilation_check(gaussian, grid, 2.0, cfg.sign, FFT);
    if let Ok(d) = &dil {
        report.detail("kernel.dilation", d);
    }
    report.check(
        "kernel.dilation_exponent",
        format!("{};c=2", grid_params(grid, cfg.sign)),
        dil.and_then(|d| d.distance_minus_m.ok_or(clifft::Error::ZeroField)),
        Tol::AtMost(tol::DILATION),
    );
}

/// Size of the Gaussian-polynomial corpus.
pub const CORPUS_SIZE: usize = 20;
const CORPUS_DELTAS: [f64; 3] = [0.25, 0.5, 1.0];

/// Element `i`: a random `P` of degree `i mod 4` times `e^{-δ‖x‖²}`.
fn corpus_member(seed: u64, i: usize) -> (PolyField, f64) {
    let mut rng = rng_for(seed, 20, i as u64);
    let degree = (i % 4) as u32;
    let mut p = PolyField::zero(2);
    for d in 0..=degree {
        for a in 0..=d {
            let c: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
            p.add_term(
                vec![a, d - a],
                Multivector::from_coeffs(2, c).expect("m = 2"),
            );
        }
    }
    (p, CORPUS_DELTAS[i % 3])
}

#[derive(Serialize)]
struct CorpusMeasure {
    degree: usize,
    delta: f64,
    fft_vs_quadrature: f64,
    plancherel: f64,
    inversion: f64,
}

fn corpus_measure(
    seed: u64,
    i: usize,
    grid: &GridSpec,
    sign: KernelSign,
) -> clifft::Result<CorpusMeasure> {
    let (p, delta) = corpus_member(seed, i);
    let f = sample(
        |x| {
            p.evaluate(x)
                .scale((-delta * (x[0] * x[0] + x[1] * x[1])).exp())
        },
        grid,
    );
    let quad = transform(&f, sign, QUAD)?.field;
    let fast = transform(&f, sign, FFT)?.field;
    let back = transform(&fast, sign, FFT)?.field;
    let norm = lp_norm(&f, 2.0)?;
    Ok(CorpusMeasure {
        degree: p.degree().unwrap_or(0),
        delta,
        fft_vs_quadrature: quad.max_diff(&fast)?,
        plancherel: lp_norm(&quad, 2.0)? / norm,
        inversion: lp_norm(&back.sub(&f)?, 2.0)? / norm,
    })
}

/// Polynomials of degree 0 to 3 for the `P e^{-δ‖x‖²}` image fits.
pub fn polygauss_corpus() -> Vec<(&'static str, PolyField)> {
    let e = |mask: u32| Multivector::blade(2, BladeIndex(mask), 1.0);
    let x1 = PolyField::coordinate(2, 0);
    let x2 = PolyField::coordinate(2, 1);
    let one = PolyField::constant(e(0));
    let r2 = PolyField::radius_sqr(2);
    vec![
        ("1", one.clone()),
        ("e12", PolyField::constant(e(0b11))),
        ("x1-e12*x2", x1.sub(&x2.left_mul(&e(0b11)))),
        (
            "e1*x1+e2*x2",
            x1.left_mul(&e(0b01)).add(&x2.left_mul(&e(0b10))),
        ),
        ("r2*e1", r2.left_mul(&e(0b01))),
        ("x1*x2+e12", x1.mul(&x2).add(&PolyField::constant(e(0b11)))),
        (
            "x1^3-e2*x1*x2^2+1",
            x1.mul(&x1)
                .mul(&x1)
                .sub(&x1.mul(&x2).mul(&x2).left_mul(&e(0b10)))
                .add(&one),
        ),
    ]
}

fn transforms(cfg: &RunConfig, grid: &GridSpec, report: &mut Report) {
    let gp = grid_params(grid, cfg.sign);
    let gaussian = radial_field(grid, |r2| (-0.5 * r2).exp());
    for sign in [KernelSign::Minus, KernelSign::Plus] {
        let v = transform(&gaussian, sign, QUAD).and_then(|t| t.field.max_diff(&gaussian));
        report.check(
            "transform.fixed_point",
            format!("{};method=quadrature", grid_params(grid, sign)),
            v,
            Tol::AtMost(tol::FIXED_POINT),
        );
    }

    let seed = cfg.seed;
    let sign = cfg.sign;
    let measures = par::map_indices(CORPUS_SIZE, |i| corpus_measure(seed, i, grid, sign));
    for (i, m) in measures.into_iter().enumerate() {
        let (p, delta) = corpus_member(seed, i);
        let pp = format!(
            "{gp};item={i};degree={};delta={delta}",
            p.degree().unwrap_or(0)
        );
        let id = |what: &str| format!("transform.corpus.{i:02}.{what}");
        let (agree, planch, inv) = match &m {
            Ok(m) => (Ok(m.fft_vs_quadrature), Ok(m.plancherel), Ok(m.inversion)),
            Err(e) => (Err(e.clone()), Err(e.clone()), Err(e.clone())),
        };
        report.check(
            id("fft_vs_quadrature"),
            pp.clone(),
            agree,
            Tol::AtMost(tol::FFT_AGREEMENT),
        );
        report.check(
            id("plancherel"),
            pp.clone(),
            planch,
            Tol::Within {
                target: 1.0,
                tol: tol::PLANCHEREL,
            },
        );
        report.check(id("inversion"), pp, inv, Tol::AtMost(tol::INVERSION));
        if let Ok(m) = m {
            report.detail(format!("transform.corpus.{i:02}"), m);
        }
    }

    let deltas: Vec<f64> = cfg.delta.map_or(POLYGAUSS_DELTAS.to_vec(), |d| vec![d]);
    let corpus = polygauss_corpus();
    let jobs: Vec<(usize, f64)> = (0..corpus.len())
        .flat_map(|i| deltas.iter().map(move |&d| (i, d)))
        .collect();
    let fits = par::map_indices(jobs.len(), |j| {
        let (i, d) = jobs[j];
        polynomial_gaussian_image(&corpus[i].1, d, grid, sign, FFT)
    });
    for (&(i, d), fit) in jobs.iter().zip(fits) {
        let (name, p) = &corpus[i];
        let pp = format!("{gp};P={name};degree={};delta={d}", p.degree().unwrap_or(0));
        let key = format!("transform.polygauss.{i}.delta={d}");
        report.check(
            format!("{key}.degree_match"),
            pp.clone(),
            fit.as_ref()
                .map(|f| flag(f.degree_match))
                .map_err(Clone::clone),
            Tol::Holds,
        );
        report.check(
            format!("{key}.residual"),
            pp,
            fit.as_ref().map(|f| f.residual).map_err(Clone::clone),
            Tol::AtMost(tol::POLYGAUSS_RESIDUAL),
        );
        if let Ok(f) = fit {
            report.detail(key, f.summary());
        }
    }
}

fn heat(cfg: &RunConfig, grid: &GridSpec, report: &mut Report) {
    let (s, t) = (cfg.s, cfg.t);
    let gp = params(&[("m", &2), ("R", &grid.half_width()), ("s", &s)]);
    let hs = match HeatKernelParams::new(2, s) {
        Ok(p) => p,
        Err(e) => {
            report.errors.push(format!("heat: {e}"));
            return;
        }
    };
    let sizes = [grid.points(), 2 * grid.points(), 4 * grid.points()];
    let residuals = par::map_indices(sizes.len(), |k| {
        grid.with_points(sizes[k])
            .and_then(|g| heat_pde_residual(hs, &g))
    });
    let with_n = |n: usize| format!("{gp};N={n}");
    report.check(
        "heat.pde_residual",
        with_n(sizes[0]),
        residuals[0].clone(),
        Tol::AtMost(tol::PDE_RESIDUAL),
    );
    let ratio = match (&residuals[0], &residuals[1]) {
        (Ok(a), Ok(b)) => Ok(a / b),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    report.check(
        "heat.pde_convergence_ratio",
        format!("{gp};N={}->{}", sizes[0], sizes[1]),
        ratio,
        Tol::Within {
            target: tol::PDE_ORDER_RATIO,
            tol: tol::PDE_ORDER_TOL,
        },
    );
    report.info(
        "heat.pde_residual_refined",
        with_n(sizes[2]),
        residuals[2].clone(),
        Tol::AtMost(tol::PDE_RESIDUAL),
    );

    let h = grid.step();
    let o = heat_origin_laplacian(hs, h);
    report.detail("heat.origin_laplacian", o);
    report.check(
        "heat.origin_laplacian",
        format!("{gp};h={h}"),
        Ok((o.finite_difference - o.analytic).abs() / o.analytic.abs()),
        Tol::AtMost(h * h / (4.0 * s)),
    );

    let tp = format!("{};s={s}", grid_params(grid, cfg.sign));
    report.check(
        "heat.transform",
        format!("{tp};method=quadrature"),
        heat_transform_check(hs, grid, cfg.sign, QUAD),
        Tol::AtMost(tol::HEAT_TRANSFORM),
    );
    report.check(
        "heat.inverse",
        format!("{tp};method=fft"),
        heat_inverse_check(hs, grid, cfg.sign, FFT),
        Tol::AtMost(tol::HEAT_INVERSE),
    );

    for m in [2usize, 4] {
        let mut rng = rng_for(cfg.seed, 30, m as u64);
        let samples: Vec<(f64, Vec<f64>, f64)> = (0..200)
            .map(|_| {
                let x = (0..m).map(|_| rng.gen_range(-3.0..3.0)).collect();
                (rng.gen_range(0.1..5.0), x, rng.gen_range(0.1..3.0))
            })
            .collect();
        report.check(
            "heat.scaling",
            params(&[("m", &m), ("samples", &samples.len())]),
            heat_scaling_check(m, &samples),
            Tol::AtMost(tol::HEAT_SCALING),
        );
    }

    let mut times = vec![s];
    if t != s {
        times.push(t);
    }
    for &time in &times {
        let mass = HeatKernelParams::new(2, time).and_then(|p| heat_mass(p, grid));
        report.check(
            "heat.mass",
            params(&[
                ("m", &2),
                ("R", &grid.half_width()),
                ("N", &grid.points()),
                ("s", &time),
            ]),
            mass,
            Tol::Within {
                target: 1.0,
                tol: tol::HEAT_MASS,
            },
        );
    }
    for &time in &times {
        report.check(
            "heat.mass_radial",
            params(&[("m", &4), ("s", &time)]),
            HeatKernelParams::new(4, time).map(heat_mass_radial),
            Tol::Within {
                target: 1.0,
                tol: tol::HEAT_MASS_RADIAL,
            },
        );
    }
    report.check(
        "heat.semigroup",
        params(&[
            ("m", &2),
            ("R", &grid.half_width()),
            ("N", &grid.points()),
            ("s", &s),
            ("t", &t),
        ]),
        heat_semigroup_check(2, s, t, grid),
        Tol::AtMost(tol::SEMIGROUP),
    );
    if let Ok(f) = sample_heat_kernel(hs, grid) {
        report.plot(plotdata::profile("heat_profile", &f));
    }
}

fn hardy(cfg: &RunConfig, grid: &GridSpec, report: &mut Report) {
    let gp = grid_params(grid, cfg.sign);
    let sign = cfg.sign;
    let rates: Vec<f64> = cfg.p.map_or(HARDY_RATES.to_vec(), |p| vec![p]);
    let verdicts = par::map_indices(rates.len(), |k| {
        let p = rates[k];
        let f = radial_field(grid, move |r2| (-p * r2).exp());
        let v = hardy_verify(&f, sign, FFT);
        (f, v)
    });
    for (&p, (f, v)) in rates.iter().zip(verdicts) {
        let pp = format!("{gp};p={p}");
        report.check(
            "hardy.gaussian.product",
            pp.clone(),
            v.as_ref()
                .map(|v| (v.product - 0.25).abs() / 0.25)
                .map_err(Clone::clone),
            Tol::AtMost(tol::HARDY_PRODUCT_REL),
        );
        report.check(
            "hardy.gaussian.reconstruction",
            pp,
            v.as_ref()
                .map_err(Clone::clone)
                .and_then(|v| v.gaussian_residual.ok_or(clifft::Error::ZeroField)),
            Tol::AtMost(tol::HARDY_RECONSTRUCTION),
        );
        if let Ok(v) = &v {
            report.plot(plotdata::decay_overlay(
                &format!("hardy_p{p}"),
                &f,
                Some(&v.fit_f),
            ));
            if let Ok(image) = transform(&f, sign, FFT) {
                report.plot(plotdata::decay_overlay(
                    &format!("hardy_p{p}_transform"),
                    &image.field,
                    Some(&v.fit_transform),
                ));
            }
            report.detail(format!("hardy.gaussian.p={p}"), v);
        }
    }

    let mut elements = Vec::new();
    match (cfg.j, cfg.k) {
        (None, None) => {
            for j in 0..=2usize {
                for k in 0..=(2 - j) as u32 {
                    for parity in [Parity::Even, Parity::Odd] {
                        elements.push((j, k, cfg.l.unwrap_or(0), parity));
                    }
                }
            }
        }
        (j, k) => {
            for parity in [Parity::Even, Parity::Odd] {
                elements.push((j.unwrap_or(0), k.unwrap_or(0), cfg.l.unwrap_or(0), parity));
            }
        }
    }
    let results = par::map_indices(elements.len(), |e| {
        let (j, k, l, parity) = elements[e];
        let f = psi_basis_element(2, j, k, l, parity)?.sample(grid)?;
        let verdict = hardy_verify(&f, sign, FFT)?;
        let inv = inverse_check(&f, sign, FFT)?;
        Ok::<_, clifft::Error>((verdict, inv))
    });
    for (&(j, k, l, parity), r) in elements.iter().zip(results) {
        let par_name = match parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
        };
        let pp = format!("{gp};j={j};k={k};l={l};parity={par_name}");
        report.check(
            "hardy.psi.product",
            pp.clone(),
            r.as_ref().map(|(v, _)| v.product).map_err(Clone::clone),
            Tol::AtMost(0.25 * (1.0 + tol::HARDY_PRODUCT_REL)),
        );
        report.check(
            "hardy.psi.inversion",
            pp,
            r.as_ref().map(|(_, i)| *i).map_err(Clone::clone),
            Tol::AtMost(tol::PSI_INVERSE),
        );
        if let Ok((v, _)) = r {
            report.detail(format!("hardy.psi.{j}.{k}.{l}.{par_name}"), v);
        }
    }
}

/// `(x1 - e12 x2) e^{-‖x‖²/4δ}` scaled by `2πλ`: a monogenic times a heat kernel.
fn subcritical_witness(grid: &GridSpec, delta: f64, lambda: f64) -> clifft::Result<SampledField> {
    let hp = HeatKernelParams::new(2, delta)?;
    let e12 = Multivector::blade(2, E12, 1.0);
    let p = PolyField::coordinate(2, 0).sub(&PolyField::coordinate(2, 1).left_mul(&e12));
    let amp = 2.0 * PI * lambda;
    Ok(sample(
        |x| {
            p.evaluate(x)
                .scale(amp * hp.value_at_radius_sqr(x[0] * x[0] + x[1] * x[1]))
        },
        grid,
    ))
}

fn heat_multiple(grid: &GridSpec, s: f64, amp: f64) -> clifft::Result<SampledField> {
    Ok(sample_heat_kernel(HeatKernelParams::new(2, s)?, grid)?.scale(amp))
}

fn regime_row(
    report: &mut Report,
    id: &str,
    pp: &str,
    r: &clifft::Result<MiyachiReport>,
    want: Regime,
) {
    report.check(
        format!("{id}.regime"),
        format!("{pp};expect={}", want.as_str()),
        r.as_ref()
            .map(|r| flag(r.regime == want))
            .map_err(Clone::clone),
        Tol::Holds,
    );
    report.check(
        format!("{id}.consistent"),
        pp.to_string(),
        r.as_ref().map(|r| flag(r.consistent)).map_err(Clone::clone),
        Tol::Holds,
    );
}

fn miyachi(cfg: &RunConfig, grid: &GridSpec, report: &mut Report) {
    let (b, lambda, sign) = (cfg.b, cfg.lambda, cfg.sign);
    let gp = grid_params(grid, sign);
    let amp = 2.0 * PI * lambda;

    let a_crit = 1.0 / (4.0 * b);
    let crit =
        heat_multiple(grid, b, amp).and_then(|f| miyachi_verify(&f, a_crit, b, lambda, sign, FFT));
    let pp = format!("{gp};a={a_crit};b={b};lambda={lambda}");
    report.check(
        "miyachi.critical.functional",
        pp.clone(),
        crit.as_ref().map(|r| r.integral).map_err(Clone::clone),
        Tol::AtMost(tol::FUNCTIONAL_ZERO),
    );
    report.check(
        "miyachi.critical.amplitude_within_bound",
        pp.clone(),
        crit.as_ref()
            .map(|r| {
                flag(matches!(
                    r.conclusion,
                    MiyachiConclusion::GaussianMultiple {
                        within_bound: true,
                        ..
                    }
                ))
            })
            .map_err(Clone::clone),
        Tol::Holds,
    );
    regime_row(report, "miyachi.critical", &pp, &crit, Regime::Critical);
    if let Ok(r) = crit {
        report.detail("miyachi.critical", r);
    }

    let delta = cfg.witness_delta();
    let sub = subcritical_witness(grid, delta, lambda)
        .and_then(|f| miyachi_verify(&f, cfg.a, b, lambda, sign, FFT));
    let pp = format!("{gp};a={};b={b};lambda={lambda};delta={delta}", cfg.a);
    report.check(
        "miyachi.subcritical.growth",
        pp.clone(),
        sub.as_ref()
            .map(|r| r.functional.growth)
            .map_err(Clone::clone),
        Tol::AtMost(tol::STABLE_GROWTH),
    );
    regime_row(
        report,
        "miyachi.subcritical",
        &pp,
        &sub,
        Regime::Subcritical,
    );
    if let Ok(r) = sub {
        report.detail("miyachi.subcritical", r);
    }

    let (s_sup, a_sup) = (b / 2.0, 1.0 / (2.0 * b));
    let sup_field = heat_multiple(grid, s_sup, amp);
    let sup = sup_field
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|f| miyachi_verify(f, a_sup, b, lambda, sign, FFT));
    let pp = format!("{gp};a={a_sup};b={b};lambda={lambda};delta={s_sup}");
    report.check(
        "miyachi.supercritical.growth",
        pp.clone(),
        sup.as_ref()
            .map(|r| r.functional.growth)
            .map_err(Clone::clone),
        Tol::AtLeast(tol::DIVERGENT_GROWTH),
    );
    regime_row(
        report,
        "miyachi.supercritical",
        &pp,
        &sup,
        Regime::Supercritical,
    );
    if let Ok(r) = sup {
        report.detail("miyachi.supercritical", r);
    }

    // the functional is non-increasing in λ and non-decreasing in b
    let image = sup_field
        .and_then(|f| transform(&f, sign, FFT))
        .map(|t| t.field);
    let sweep = |pairs: [(f64, f64); 3], increasing: bool| -> clifft::Result<f64> {
        let img = image.as_ref().map_err(Clone::clone)?;
        let mut vals = Vec::new();
        for (bb, ll) in pairs {
            vals.push(miyachi_functional(img, bb, ll)?.value);
        }
        Ok(vals
            .windows(2)
            .map(|w| if increasing { w[0] - w[1] } else { w[1] - w[0] })
            .fold(0.0, f64::max))
    };
    let lams = [0.5 * lambda, lambda, 2.0 * lambda];
    report.check(
        "miyachi.monotone_in_lambda",
        format!("{gp};b={b};lambda={}|{}|{}", lams[0], lams[1], lams[2]),
        sweep(lams.map(|l| (b, l)), false),
        Tol::AtMost(0.0),
    );
    let bs = [0.5 * b, b, 2.0 * b];
    report.check(
        "miyachi.monotone_in_b",
        format!("{gp};b={}|{}|{};lambda={lambda}", bs[0], bs[1], bs[2]),
        sweep(bs.map(|bb| (bb, lambda)), true),
        Tol::AtMost(0.0),
    );
}

fn corollary(cfg: &RunConfig, grid: &GridSpec, report: &mut Report) {
    let (a, b, r, sign) = (cfg.a, cfg.b, cfg.r, cfg.sign);
    let gp = grid_params(grid, sign);
    let delta = cfg.witness_delta();

    let sub = subcritical_witness(grid, delta, cfg.lambda)
        .and_then(|f| weighted_transform_check(&f, a, b, r, sign, FFT));
    let pp = format!("{gp};a={a};b={b};r={r};delta={delta}");
    report.check(
        "corollary.subcritical.growth",
        pp.clone(),
        sub.as_ref().map(|c| c.growth).map_err(Clone::clone),
        Tol::AtMost(tol::STABLE_GROWTH),
    );
    report.check(
        "corollary.subcritical.consistent",
        pp,
        sub.as_ref()
            .map(|c| flag(c.consistent))
            .map_err(Clone::clone),
        Tol::Holds,
    );
    if let Ok(c) = sub {
        report.detail("corollary.subcritical", c);
    }

    let a_crit = 1.0 / (4.0 * b);
    let crit = heat_multiple(grid, b, 1.0)
        .and_then(|f| weighted_transform_check(&f, a_crit, b, r, sign, FFT));
    let pp = format!("{gp};a={a_crit};b={b};r={r}");
    report.check(
        "corollary.critical.growth",
        pp.clone(),
        crit.as_ref().map(|c| c.growth).map_err(Clone::clone),
        Tol::AtLeast(tol::DIVERGENT_GROWTH),
    );
    report.check(
        "corollary.critical.consistent",
        pp,
        crit.as_ref()
            .map(|c| flag(c.consistent))
            .map_err(Clone::clone),
        Tol::Holds,
    );
    if let Ok(c) = crit {
        report.detail("corollary.critical", c);
    }

    let zero = weighted_transform_check(&SampledField::zeros(*grid), a_crit, b, r, sign, FFT);
    let pp = format!("{gp};a={a_crit};b={b};r={r};input=zero");
    report.check(
        "corollary.zero.integral",
        pp.clone(),
        zero.as_ref().map(|c| c.integral).map_err(Clone::clone),
        Tol::AtMost(0.0),
    );
    report.check(
        "corollary.zero.consistent",
        pp,
        zero.as_ref()
            .map(|c| flag(c.consistent))
            .map_err(Clone::clone),
        Tol::Holds,
    );
}
