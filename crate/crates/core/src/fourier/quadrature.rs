//! Direct midpoint-rule evaluation of the transform, one output node at a
//! time. This is the reference path that the fast transform is checked
//! against.

use crate::algebra::{gp_accumulate, BladeIndex, ComplexMultivector, Multivector};
use crate::error::Result;
use crate::grid::SampledField;
use crate::par;

use super::kernel::{kernel_m2, kernel_m2_complex, KernelSign, E12};
use super::{require_m2, NORMALIZATION_2D};

/// Per node `[f_0..f_3, (e12 f)_0..(e12 f)_3]`, so that
/// `K ⊗ f = cos θ f + sin θ (e12 ⊗ f)`.
fn interleaved_planes(field: &SampledField) -> Vec<f64> {
    let e12 = Multivector::blade(2, E12, 1.0);
    let mut planes = vec![0.0; 8 * field.len()];
    for (node, dst) in planes.chunks_exact_mut(8).enumerate() {
        let c = field.coeffs(node);
        dst[..4].copy_from_slice(c);
        gp_accumulate(e12.coeffs(), c, &mut dst[4..]);
    }
    planes
}

/// `F_±(f)` on the input grid by direct summation over all nodes.
pub(crate) fn transform(field: &SampledField, sign: KernelSign) -> Result<SampledField> {
    require_m2(field.grid())?;
    let grid = *field.grid();
    let n = grid.points();
    let u = grid.axis_coords();
    // cos/sin of the axis products u_a u_d; θ = x1 y2 - x2 y1 is recovered by angle subtraction.
    let mut cos_t = vec![0.0; n * n];
    let mut sin_t = vec![0.0; n * n];
    for a in 0..n {
        for d in 0..n {
            let (s, c) = (u[a] * u[d]).sin_cos();
            cos_t[a * n + d] = c;
            sin_t[a * n + d] = s;
        }
    }
    let planes = interleaved_planes(field);
    let sf = sign.sin_factor();
    let scale = grid.cell_volume() * NORMALIZATION_2D;

    let mut out = SampledField::zeros(grid);
    par::for_each_chunk_mut(out.raw_mut(), 4 * n, |c, row| {
        // output row c: y1 = u_c, the inner index b pairs with table row c
        let cos_c = &cos_t[c * n..(c + 1) * n];
        let sin_c = &sin_t[c * n..(c + 1) * n];
        let mut cth = vec![0.0; n];
        let mut sth = vec![0.0; n];
        for d in 0..n {
            let mut acc = [0.0; 4];
            for a in 0..n {
                // x1 = u_a pairs with y2 = u_d
                let cad = cos_t[a * n + d];
                let sad = sin_t[a * n + d];
                for b in 0..n {
                    // cos(p - q) and sin(p - q) with p = x1 y2, q = x2 y1
                    cth[b] = cad * cos_c[b] + sad * sin_c[b];
                    sth[b] = sf * (sad * cos_c[b] - cad * sin_c[b]);
                }
                let rows = &planes[8 * a * n..8 * (a + 1) * n];
                let mut part = [0.0; 4];
                for ((p, &ct), &st) in rows.chunks_exact(8).zip(&cth).zip(&sth) {
                    for k in 0..4 {
                        part[k] += ct * p[k] + st * p[4 + k];
                    }
                }
                for k in 0..4 {
                    acc[k] += part[k];
                }
            }
            for k in 0..4 {
                row[4 * d + k] = acc[k] * scale;
            }
        }
    });
    Ok(out)
}

/// `F_±(f)(y)` at an arbitrary real point, evaluating the kernel per node.
pub(crate) fn transform_at(
    field: &SampledField,
    y: [f64; 2],
    sign: KernelSign,
) -> Result<Multivector> {
    require_m2(field.grid())?;
    let grid = *field.grid();
    let parts = par::map_indices(field.len().div_ceil(par::BLOCK), |blk| {
        let mut acc = [0.0; 4];
        let mut x = [0.0; 2];
        for node in blk * par::BLOCK..((blk + 1) * par::BLOCK).min(field.len()) {
            grid.fill_point(node, &mut x);
            let k = kernel_m2(x, y, sign);
            gp_accumulate(k.coeffs(), field.coeffs(node), &mut acc);
        }
        acc
    });
    let mut coeffs = vec![0.0; 4];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let col: Vec<f64> = parts.iter().map(|p| p[k]).collect();
        *c = par::pairwise(&col) * grid.cell_volume() * NORMALIZATION_2D;
    }
    Multivector::from_coeffs(2, coeffs)
}

/// `F_±(f)(ξ + iη)` with the complexified kernel.
pub(crate) fn transform_at_complex(
    field: &SampledField,
    re: [f64; 2],
    im: [f64; 2],
    sign: KernelSign,
) -> Result<ComplexMultivector> {
    require_m2(field.grid())?;
    let grid = *field.grid();
    let parts = par::map_indices(field.len().div_ceil(par::BLOCK), |blk| {
        let mut acc_re = [0.0; 4];
        let mut acc_im = [0.0; 4];
        let mut x = [0.0; 2];
        for node in blk * par::BLOCK..((blk + 1) * par::BLOCK).min(field.len()) {
            let c = field.coeffs(node);
            if c.iter().all(|&v| v == 0.0) {
                continue;
            }
            grid.fill_point(node, &mut x);
            let k = kernel_m2_complex(x, re, im, sign);
            gp_accumulate(k.re.coeffs(), c, &mut acc_re);
            gp_accumulate(k.im.coeffs(), c, &mut acc_im);
        }
        (acc_re, acc_im)
    });
    let w = grid.cell_volume() * NORMALIZATION_2D;
    let mut out = ComplexMultivector::zero(2);
    for k in 0..4 {
        let col_re: Vec<f64> = parts.iter().map(|p| p.0[k]).collect();
        let col_im: Vec<f64> = parts.iter().map(|p| p.1[k]).collect();
        out.re.set(BladeIndex(k as u32), par::pairwise(&col_re) * w);
        out.im.set(BladeIndex(k as u32), par::pairwise(&col_im) * w);
    }
    Ok(out)
}
