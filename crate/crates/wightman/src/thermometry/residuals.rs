//! Quantified thermality checks: spectral detailed balance and imaginary-time
//! anti-periodicity.

use super::ThermometryError;
use crate::correlators::{kernel_fourier, CorrelatorKernel, FourierMethod};
use num_complex::Complex64;

/// Relative floor guarding divisions where one side of the balance relation
/// underflows (the Boltzmann factor makes it exponentially small).
const FLOOR_FACTOR: f64 = 1e-30;

/// Max relative detailed-balance defect of a single kernel over a frequency
/// grid: |w̃(ω) − e^{−βω} w̃(−ω)| normalized by the larger of the two sides.
pub fn detailed_balance_residual(
    kernel: &CorrelatorKernel,
    beta: f64,
    omega_grid: &[f64],
    method: FourierMethod,
) -> Result<f64, ThermometryError> {
    detailed_balance_residual_pair(kernel, kernel, beta, omega_grid, method)
}

/// Pair form for effective Wightman functions: w̃_in(ω) vs e^{−βω} w̃_ni(−ω).
pub fn detailed_balance_residual_pair(
    w_in: &CorrelatorKernel,
    w_ni: &CorrelatorKernel,
    beta: f64,
    omega_grid: &[f64],
    method: FourierMethod,
) -> Result<f64, ThermometryError> {
    if omega_grid.is_empty() {
        return Err(ThermometryError::EmptyGrid);
    }
    let mut lhs = Vec::with_capacity(omega_grid.len());
    let mut rhs = Vec::with_capacity(omega_grid.len());
    for &omega in omega_grid {
        lhs.push(kernel_fourier(w_in, omega, method)?.value);
        rhs.push(kernel_fourier(w_ni, -omega, method)?.value);
    }
    let max_mag = lhs
        .iter()
        .chain(rhs.iter())
        .map(|v: &Complex64| v.norm())
        .fold(0.0, f64::max);
    let floor = FLOOR_FACTOR * max_mag.max(f64::MIN_POSITIVE);

    let mut worst: f64 = 0.0;
    for ((&omega, &l), &r) in omega_grid.iter().zip(lhs.iter()).zip(rhs.iter()) {
        let boltzmann = (-beta * omega).exp();
        let num = (l - boltzmann * r).norm();
        let den = l.norm().max(r.norm()).max(floor);
        worst = worst.max(num / den);
    }
    Ok(worst)
}

/// Max relative anti-periodicity defect |w(τ + iβ) − w(−τ)| / |w(−τ)| over a
/// proper-time grid (single-kernel form).
pub fn anti_periodicity_residual(
    kernel: &CorrelatorKernel,
    beta: f64,
    tau_grid: &[f64],
) -> Result<f64, ThermometryError> {
    anti_periodicity_residual_pair(kernel, kernel, beta, tau_grid)
}

/// Pair form: w_in(τ + iβ) vs w_ni(−τ).
pub fn anti_periodicity_residual_pair(
    w_in: &CorrelatorKernel,
    w_ni: &CorrelatorKernel,
    beta: f64,
    tau_grid: &[f64],
) -> Result<f64, ThermometryError> {
    if tau_grid.is_empty() {
        return Err(ThermometryError::EmptyGrid);
    }
    let mut worst: f64 = 0.0;
    let mut seen = 0usize;
    for &tau in tau_grid {
        // the strip edge has the kernel's coincidence pole at τ = 0
        if tau.abs() < 1e-9 {
            continue;
        }
        let up = w_in.continuation(tau, beta)?;
        let refl = w_ni.eval_extrapolated(-tau, 1e-8)?;
        let den = refl.norm();
        if den < f64::MIN_POSITIVE {
            continue;
        }
        worst = worst.max((up - refl).norm() / den);
        seen += 1;
    }
    if seen == 0 {
        return Err(ThermometryError::EmptyGrid);
    }
    Ok(worst)
}

/// Evenly spaced grid helper for residual scans.
pub fn symmetric_grid(half_range: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|k| -half_range + 2.0 * half_range * k as f64 / (n - 1) as f64)
        .collect()
}
