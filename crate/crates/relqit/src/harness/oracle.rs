//! Reference implementations kept deliberately separate from the fast
//! paths they check.
//!
//! The partial trace here is a brute-force double loop over all basis
//! pairs of the full matrix with explicit digit bookkeeping, whereas
//! [`DensityMatrix::partial_trace`] enumerates kept/traced index offsets.
//! The two must agree elementwise; the verification suite and the test
//! suites hold them against each other.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::density::{DensityMatrix, PartitionSpec};
use crate::error::{Error, Result};

/// Digits of `index` in the mixed-radix system given by `dims`, row-major.
fn digits_of(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for pos in (0..dims.len()).rev() {
        digits[pos] = index % dims[pos];
        index /= dims[pos];
    }
    digits
}

/// Brute-force partial trace: scans every (row, column) pair of the input,
/// keeps those whose traced digits coincide, and accumulates them at the
/// kept-digit position.
pub fn brute_force_partial_trace(
    rho: &DensityMatrix,
    keep: &PartitionSpec,
) -> Result<DMatrix<Complex64>> {
    let entries = rho.factor_entries();
    for factor in keep.factors() {
        if !entries.iter().any(|e| e.factor == *factor) {
            return Err(Error::FactorNotPresent {
                factor: factor.to_string(),
            });
        }
    }
    let dims = rho.factor_dims();
    let kept_pos: Vec<usize> = entries
        .iter()
        .enumerate()
        .filter(|(_, e)| keep.contains(&e.factor))
        .map(|(pos, _)| pos)
        .collect();
    let traced_pos: Vec<usize> = (0..entries.len())
        .filter(|pos| !kept_pos.contains(pos))
        .collect();

    let out_dim: usize = kept_pos.iter().map(|&p| dims[p]).product();
    let mut out = DMatrix::<Complex64>::zeros(out_dim, out_dim);

    let dim = rho.dim();
    for i in 0..dim {
        let di = digits_of(i, &dims);
        for j in 0..dim {
            let dj = digits_of(j, &dims);
            if traced_pos.iter().any(|&p| di[p] != dj[p]) {
                continue;
            }
            let mut a = 0;
            let mut b = 0;
            for &p in &kept_pos {
                a = a * dims[p] + di[p];
                b = b * dims[p] + dj[p];
            }
            out[(a, b)] += rho.matrix()[(i, j)];
        }
    }
    Ok(out)
}

/// Linear entropy computed from the brute-force reduction.
pub fn brute_force_linear_entropy(rho: &DensityMatrix, keep: &PartitionSpec) -> Result<f64> {
    let reduced = brute_force_partial_trace(rho, keep)?;
    let purity: f64 = reduced.iter().map(|z| z.norm_sqr()).sum();
    Ok(1.0 - purity)
}
