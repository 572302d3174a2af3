use nalgebra::DMatrix;

use crate::algebra::{gp_accumulate, BladeIndex, Multivector, MAX_DIM};
use crate::error::{Error, Result};

use super::{Exponent, PolyField};

/// Singular values below this fraction of the largest are treated as zero.
pub const NULLSPACE_REL_TOL: f64 = 1e-10;

/// All exponents of total degree `k` in `m` variables, lexicographically
/// descending (`x1^k` first).
pub fn monomials_of_degree(m: usize, k: u32) -> Vec<Exponent> {
    fn rec(m: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if prefix.len() == m - 1 {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=k).rev() {
            prefix.push(first);
            rec(m, k - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, k, &mut Vec::with_capacity(m), &mut out);
    out
}

/// A basis of `M_k = ker ∂_x ∩ P_k` over the reals.
///
/// The Dirac operator is assembled as a matrix from `(monomial, blade)`
/// coordinates of `P_k` to those of `P_{k-1}`; its kernel comes from the SVD
/// and is brought to reduced row-echelon form so the basis is canonical
/// (for m = 2, k = 1 the first element is `x1 - e12 x2`).
pub fn monogenic_basis(m: usize, k: u32) -> Result<Vec<PolyField>> {
    if m == 0 || m > MAX_DIM || m % 2 != 0 {
        return Err(Error::UnsupportedDimension {
            m,
            reason: "spherical monogenics are built for even m",
        });
    }
    let blades = 1usize << m;
    let cols = monomials_of_degree(m, k);
    if k == 0 {
        return Ok((0..blades)
            .map(|b| PolyField::constant(Multivector::blade(m, BladeIndex(b as u32), 1.0)))
            .collect());
    }
    let rows = monomials_of_degree(m, k - 1);
    let row_of = |beta: &[u32]| {
        rows.iter()
            .position(|r| r.as_slice() == beta)
            .expect("degree k-1 monomial")
    };
    let n_unknowns = cols.len() * blades;
    let n_eqs = rows.len() * blades;
    let size = n_unknowns.max(n_eqs);
    let mut a = DMatrix::<f64>::zeros(size, n_unknowns);
    let mut unit = vec![0.0; blades];
    let mut prod = vec![0.0; blades];
    for (ci, alpha) in cols.iter().enumerate() {
        for blade in 0..blades {
            let col = ci * blades + blade;
            for i in 0..m {
                if alpha[i] == 0 {
                    continue;
                }
                let mut beta = alpha.clone();
                beta[i] -= 1;
                let r = row_of(&beta);
                unit.fill(0.0);
                unit[blade] = 1.0;
                prod.fill(0.0);
                let e = Multivector::blade(m, BladeIndex::generator(i), 1.0);
                gp_accumulate(e.coeffs(), &unit, &mut prod);
                for (out_blade, &v) in prod.iter().enumerate() {
                    if v != 0.0 {
                        a[(r * blades + out_blade, col)] += alpha[i] as f64 * v;
                    }
                }
            }
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::Numerical("SVD did not return right singular vectors".into()))?;
    let smax = svd.singular_values.max();
    let null_rows: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= NULLSPACE_REL_TOL * smax)
        .collect();
    let mut basis = DMatrix::<f64>::zeros(null_rows.len(), n_unknowns);
    for (r, &i) in null_rows.iter().enumerate() {
        basis.set_row(r, &v_t.row(i));
    }
    rref(&mut basis);
    let mut out = Vec::with_capacity(basis.nrows());
    for r in 0..basis.nrows() {
        let mut p = PolyField::zero(m);
        for (ci, alpha) in cols.iter().enumerate() {
            let coeffs: Vec<f64> = (0..blades).map(|b| basis[(r, ci * blades + b)]).collect();
            p.add_term(alpha.clone(), Multivector::from_coeffs(m, coeffs)?);
        }
        out.push(p);
    }
    Ok(out)
}

/// Reduced row-echelon form with partial pivoting; entries that are zero to
/// rounding are cleared so the result has exact zeros where expected.
fn rref(a: &mut DMatrix<f64>) {
    let (nr, nc) = a.shape();
    let mut lead = 0;
    for col in 0..nc {
        if lead == nr {
            break;
        }
        let (piv, best) = (lead..nr)
            .map(|r| (r, a[(r, col)].abs()))
            .fold((lead, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best < 1e-9 {
            continue;
        }
        a.swap_rows(lead, piv);
        let p = a[(lead, col)];
        for j in 0..nc {
            a[(lead, j)] /= p;
        }
        for r in 0..nr {
            if r != lead {
                let f = a[(r, col)];
                if f != 0.0 {
                    for j in 0..nc {
                        let v = a[(lead, j)];
                        a[(r, j)] -= f * v;
                    }
                }
            }
        }
        lead += 1;
    }
    for v in a.iter_mut() {
        if v.abs() < 1e-12 {
            *v = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{dirac, gamma_op};

    #[test]
    fn monomial_enumeration() {
        assert_eq!(
            monomials_of_degree(2, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_of_degree(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn constants_span_degree_zero() {
        let b = monogenic_basis(2, 0).unwrap();
        assert_eq!(b.len(), 4);
        assert!(b.iter().all(|p| p.degree() == Some(0)));
    }

    #[test]
    fn first_degree_one_element() {
        let b = monogenic_basis(2, 1).unwrap();
        assert_eq!(b.len(), 4);
        let e12 = Multivector::blade(2, BladeIndex(3), 1.0);
        let z = PolyField::coordinate(2, 0).sub(&PolyField::coordinate(2, 1).left_mul(&e12));
        assert!(b[0].max_abs_diff(&z) < 1e-14);
        assert!(gamma_op(&b[0]).max_abs_diff(&b[0].scale(-1.0)) < 1e-14);
    }

    #[test]
    fn kernel_elements_are_annihilated() {
        for (m, k) in [(2, 1), (2, 2), (2, 3), (4, 1), (4, 2)] {
            let basis = monogenic_basis(m, k).unwrap();
            assert!(!basis.is_empty());
            for p in &basis {
                assert!(p.is_homogeneous() && p.degree() == Some(k as usize));
                assert!(dirac(p).max_abs_coeff() < 1e-10, "m={m} k={k}");
            }
        }
        // two left-monogenic families per degree in the plane: 2 complex dims
        assert_eq!(monogenic_basis(2, 3).unwrap().len(), 4);
        assert!(monogenic_basis(3, 1).is_err());
    }
}
