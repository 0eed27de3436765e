//! Two-level detector model: matrix elements, switching, smearing, effective
//! Wightman assembly, and transition probabilities by two independent routes.

mod profile;
mod response;
mod switching;

pub use profile::{ProfileComponent, SmearingProfile};
pub use response::{
    switching_autocorrelation, transition_probability_direct, transition_probability_fourier,
    ContourChoice, ResponseDiagnostics, ResponseResult, ResponseSettings, Route,
};
pub use switching::{Autocorrelation, SwitchingFunction, SwitchingShape};

use crate::correlators::{CorrelatorError, CorrelatorKernel, CorrelatorSet};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DetectorError {
    #[error("invalid smearing profile: {0}")]
    InvalidProfile(String),
    #[error("interaction duration must be positive and finite, got {0}")]
    InvalidDuration(f64),
    #[error("switching function has no analytic continuation off the real axis")]
    SwitchingNotAnalytic,
    #[error("frequency grid does not cover the switching bandwidth: tail estimate {tail:.3e} exceeds tolerance {tol:.3e}")]
    BandwidthCoverage { tail: f64, tol: f64 },
    #[error("probability quadrature failed to converge: residual {residual:.3e}")]
    NonConvergent { residual: f64 },
    #[error("probability {p} exceeds 1: perturbative treatment has broken down")]
    PerturbativityBreakdown { p: f64 },
    #[error("probability {p} is negative beyond the numerical tolerance {tol:.3e}")]
    NegativeProbability { p: f64, tol: f64 },
    #[error(transparent)]
    Correlator(#[from] CorrelatorError),
}

/// Matrix elements of the internal degree of freedom μ̂(0) in the {|i⟩, |n⟩}
/// subspace.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MuMatrix {
    pub mu_ii: Complex64,
    pub mu_in: Complex64,
    pub mu_ni: Complex64,
    pub mu_nn: Complex64,
}

impl MuMatrix {
    /// Pure raising coupling: μ_ni = 1, everything else 0.
    pub fn raising() -> Self {
        MuMatrix {
            mu_ii: Complex64::new(0.0, 0.0),
            mu_in: Complex64::new(0.0, 0.0),
            mu_ni: Complex64::new(1.0, 0.0),
            mu_nn: Complex64::new(0.0, 0.0),
        }
    }

    /// Symmetric coupling μ_in = μ_ni = 1 (Hermitian μ̂ with real elements).
    pub fn symmetric() -> Self {
        MuMatrix {
            mu_ii: Complex64::new(0.0, 0.0),
            mu_in: Complex64::new(1.0, 0.0),
            mu_ni: Complex64::new(1.0, 0.0),
            mu_nn: Complex64::new(0.0, 0.0),
        }
    }

    /// Unit-modulus off-diagonal elements with arbitrary phases.
    pub fn with_phases(phi_in: f64, phi_ni: f64) -> Self {
        MuMatrix {
            mu_ii: Complex64::new(0.0, 0.0),
            mu_in: Complex64::from_polar(1.0, phi_in),
            mu_ni: Complex64::from_polar(1.0, phi_ni),
            mu_nn: Complex64::new(0.0, 0.0),
        }
    }
}

/// Two-level detector: gap Ω = E_n − E_i, coupling λ, matrix elements.
#[derive(Clone, Copy, Debug)]
pub struct DetectorSpec {
    pub omega: f64,
    pub lambda: f64,
    pub mu: MuMatrix,
}

impl DetectorSpec {
    pub fn new(omega: f64, lambda: f64, mu: MuMatrix) -> Self {
        DetectorSpec { omega, lambda, mu }
    }
}

/// The effective Wightman pair (w_in, w_ni) driving excitation and
/// deexcitation.
#[derive(Clone, Debug)]
pub struct EffectiveWightman {
    pub w_in: CorrelatorKernel,
    pub w_ni: CorrelatorKernel,
}

impl EffectiveWightman {
    /// Plain single-kernel detector (Hermitian operator, raising μ): both
    /// members are the kernel itself.
    pub fn from_kernel(kernel: CorrelatorKernel) -> Self {
        EffectiveWightman {
            w_in: kernel.clone(),
            w_ni: kernel,
        }
    }
}

/// Assemble the effective Wightman pair from the four operator correlators:
///
/// w_in = μ_in μ_ni w^{↑↑} + |μ_ni|² w^{↑↓} + |μ_in|² w^{↓↑} + μ*_in μ*_ni w^{↓↓}
///
/// and w_ni is the same expression with the i ↔ n indices exchanged (which
/// swaps the coefficients of w^{↑↓} and w^{↓↑}).
pub fn effective_wightman(
    det: &DetectorSpec,
    set: &CorrelatorSet,
) -> Result<EffectiveWightman, DetectorError> {
    let mu = &det.mu;
    let c_uu = mu.mu_in * mu.mu_ni;
    let c_dd = c_uu.conj();
    let abs_ni = Complex64::new(mu.mu_ni.norm_sqr(), 0.0);
    let abs_in = Complex64::new(mu.mu_in.norm_sqr(), 0.0);

    let w_in = CorrelatorKernel::linear_combination(
        &[
            (c_uu, &set.w_uu),
            (abs_ni, &set.w_ud),
            (abs_in, &set.w_du),
            (c_dd, &set.w_dd),
        ],
        "w_in",
    )?;
    let w_ni = CorrelatorKernel::linear_combination(
        &[
            (c_uu, &set.w_uu),
            (abs_in, &set.w_ud),
            (abs_ni, &set.w_du),
            (c_dd, &set.w_dd),
        ],
        "w_ni",
    )?;
    Ok(EffectiveWightman { w_in, w_ni })
}
