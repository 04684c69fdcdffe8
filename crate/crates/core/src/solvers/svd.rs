//! Leading singular pair of the cascaded channel by power iteration on the
//! `N × N` Gram matrix, the projected phase solution built from it, and the
//! `L σ²_max P_t` received-power ceiling.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{mrt_beamforming, Method, Solution};
use crate::em::{received_power, ChannelSet};
use crate::error::{Result, RisError};

/// Relative change of the Rayleigh quotient at which iteration stops.
pub const EIGEN_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 10_000;
const RESTART_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq)]
pub struct SingularPair {
    /// `σ_max²`.
    pub sigma_sq: f64,
    /// Left singular vector `u₁` (length `L`), largest-magnitude entry real-positive.
    pub left: DVector<Complex64>,
    /// Right singular vector `v₁` (length `N`).
    pub right: DVector<Complex64>,
    pub iterations: usize,
    /// `‖G v₁ - σ² v₁‖ / σ²` at termination.
    pub residual: f64,
}

fn rayleigh(gram: &DMatrix<Complex64>, x: &DVector<Complex64>) -> (DVector<Complex64>, f64) {
    let y = gram * x;
    let lambda = x.dotc(&y).re;
    (y, lambda)
}

/// Power iteration from `start`; returns (eigenvalue, eigenvector, iterations, residual).
fn power_iterate(gram: &DMatrix<Complex64>, start: DVector<Complex64>) -> Result<(f64, DVector<Complex64>, usize, f64)> {
    let scale = gram.norm();
    let mut x = start.normalize();
    let (mut y, mut lambda) = rayleigh(gram, &x);
    for it in 1..=MAX_ITERATIONS {
        let ny = y.norm();
        if ny <= scale * 1e-300 {
            // start vector in the null space
            return Ok((0.0, x, it, 0.0));
        }
        x = y / Complex64::from(ny);
        let (next_y, next_lambda) = rayleigh(gram, &x);
        let converged = (next_lambda - lambda).abs() <= EIGEN_TOL * next_lambda.abs();
        y = next_y;
        lambda = next_lambda;
        if converged {
            let residual = (&y - &x * Complex64::from(lambda)).norm() / lambda.abs().max(f64::MIN_POSITIVE);
            return Ok((lambda, x, it, residual));
        }
    }
    let residual = (&y - &x * Complex64::from(lambda)).norm() / lambda.abs().max(f64::MIN_POSITIVE);
    Err(RisError::NoConvergence { iterations: MAX_ITERATIONS, residual })
}

/// Leading singular pair of an `L × N` matrix.
///
/// Iterates from the normalized all-ones vector and again from a fixed-seed
/// random vector, keeping the larger eigenvalue, so a start vector orthogonal
/// to the dominant subspace cannot stall on a smaller one.
pub fn leading_singular_pair(h: &DMatrix<Complex64>) -> Result<SingularPair> {
    let n = h.ncols();
    if n == 0 || h.nrows() == 0 || h.iter().all(|x| *x == Complex64::new(0.0, 0.0)) {
        return Err(RisError::ZeroChannel);
    }
    let gram = h.adjoint() * h;
    let ones = DVector::from_element(n, Complex64::new(1.0, 0.0));
    let mut rng = ChaCha8Rng::seed_from_u64(RESTART_SEED);
    let random = DVector::from_fn(n, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));

    let first = power_iterate(&gram, ones)?;
    let second = power_iterate(&gram, random)?;
    let (sigma_sq, right, it_a, residual) = if second.0 > first.0 * (1.0 + 1e-9) { second } else { first };
    let iterations = it_a;

    let mut left = h * &right;
    let norm = left.norm();
    if norm == 0.0 {
        return Err(RisError::ZeroChannel);
    }
    left /= Complex64::from(norm);
    // global phase: largest-magnitude entry of u₁ real-positive
    let (imax, _) = left.iter().enumerate().fold((0, -1.0), |acc, (i, z)| if z.norm() > acc.1 { (i, z.norm()) } else { acc });
    let rot = left[imax].conj() / left[imax].norm();
    let left = left * rot;
    let right = right * rot;
    Ok(SingularPair { sigma_sq, left, right, iterations, residual })
}

/// `L σ²_max(H_TIR) P_t`; zero for an all-zero cascade.
pub fn power_upper_bound(channels: &ChannelSet, p_t: f64) -> Result<f64> {
    match leading_singular_pair(&channels.cascade()) {
        Ok(pair) => Ok(channels.n_elements() as f64 * pair.sigma_sq * p_t),
        Err(RisError::ZeroChannel) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Phases `e^{j∠u₁*}` projected from the leading left singular vector, with MRT
/// against the resulting effective channel (direct link included when present).
pub fn svd_solution(channels: &ChannelSet, p_t: f64) -> Result<Solution> {
    let pair = leading_singular_pair(&channels.cascade())?;
    let theta = pair.left.map(|u| if u.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { u.conj() / u.norm() });
    let v = mrt_beamforming(&channels.effective_channel(&theta)?, p_t)?;
    let predicted_power = received_power(channels, &theta, &v)?;
    Ok(Solution { v, theta, predicted_power, method: Method::SvdProjected })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rank_one_pair() {
        let a = DVector::from_vec(vec![c(1.0, 1.0), c(-2.0, 0.5), c(0.3, -0.4)]);
        let b = DVector::from_vec(vec![c(0.5, 0.0), c(0.0, -1.0)]);
        let h = &a * b.transpose();
        let pair = leading_singular_pair(&h).unwrap();
        let expected = a.norm_squared() * b.norm_squared();
        assert!((pair.sigma_sq - expected).abs() < 1e-12 * expected);
        // u₁ ∝ a up to a global phase
        let ratio = pair.left[1] / a[1];
        for i in 0..3 {
            assert!((pair.left[i] - a[i] * ratio).norm() < 1e-12);
        }
        assert!(pair.left[1].im.abs() < 1e-15 && pair.left[1].re > 0.0);
    }

    #[test]
    fn orthogonal_start_still_finds_top() {
        // Gram has eigenvector (1, -1)/√2 on top; all-ones start is orthogonal to it
        let h = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(-1.0, 0.0), c(0.1, 0.0), c(0.1, 0.0)]);
        let pair = leading_singular_pair(&h).unwrap();
        assert!((pair.sigma_sq - 2.0).abs() < 1e-10, "{}", pair.sigma_sq);
    }

    #[test]
    fn zero_channel() {
        let h = DMatrix::<Complex64>::zeros(3, 2);
        assert_eq!(leading_singular_pair(&h), Err(RisError::ZeroChannel));
        let ch = ChannelSet { h_ti: h, h_ir: DVector::zeros(3), h_tr: None, wavelength: 1.0 };
        assert_eq!(power_upper_bound(&ch, 1.0).unwrap(), 0.0);
        assert_eq!(svd_solution(&ch, 1.0), Err(RisError::ZeroChannel));
    }
}
