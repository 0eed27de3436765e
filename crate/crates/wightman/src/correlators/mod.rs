//! Stationary pulled-back two-point kernels.
//!
//! A [`CorrelatorKernel`] is a complex function w(Δτ − iε) of the proper-time
//! difference along a worldline, regulated by the iε prescription. Catalog
//! kernels are boundary values of closed-form meromorphic functions, so the
//! same expression provides the real-axis evaluation, the strip continuation
//! w(τ + iσ), and (where worked out) the closed-form spectral function
//! w̃(ω) = ∫ dτ e^{−iωτ} w(τ).

mod catalog;
mod fourier;
mod smearing;

pub use catalog::{
    derivative_coupled_kernel, synthetic_planck_kernel, thermal_image_sum_partial,
    thermal_image_tail_bound, thermal_kernel_inertial, vacuum_kernel_accelerated,
    vacuum_kernel_inertial,
};
pub use fourier::{
    kernel_fourier, kernel_spectrum_fft, DampedQuadratureSpec, FftGridSpec, FourierMethod,
    FourierValue,
};
pub use smearing::{smeared_correlator, GeometryContext, KernelFamily, OperatorKind};

use crate::geometry::GeometryError;
use num_complex::Complex64;
use std::sync::Arc;
use thiserror::Error;

pub(crate) type EvalFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;
pub(crate) type SpectralFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// Large-|Δτ| behaviour, used to pick quadrature truncation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decay {
    Exponential { rate: f64 },
    PowerLaw { power: f64 },
}

/// Errors from kernel construction, evaluation and transforms.
#[derive(Debug, Error)]
pub enum CorrelatorError {
    #[error("parameter {name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },
    #[error("unsupported kernel operation: {0}")]
    Unsupported(String),
    #[error("kernel `{0}` has no closed-form evaluation")]
    MissingEvaluation(String),
    #[error("kernel `{0}` has no strip continuation")]
    MissingContinuation(String),
    #[error("kernel `{0}` has no closed-form spectral function")]
    MissingSpectralForm(String),
    #[error("sigma = {sigma} outside the analyticity strip (0, {strip}]")]
    OutsideStrip { sigma: f64, strip: f64 },
    #[error("Fourier transform did not converge: residual estimate {residual:.3e}")]
    NonConvergent { residual: f64 },
    #[error("image-sum truncation tail {bound:.3e} above tolerance {tol:.3e}")]
    TailBound { bound: f64, tol: f64 },
    #[error("smearing setup: {0}")]
    Smearing(String),
    #[error("volume element depends on tau (max relative deviation {0:.3e}); the stationary-volume assumption fails")]
    TauDependentVolume(f64),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A stationary two-point kernel w(Δτ) with iε regularization.
///
/// Stationarity is structural: the type can only represent functions of the
/// proper-time difference. `beta_nominal` records the inverse temperature the
/// kernel is expected to satisfy the KMS condition at (`+∞` for vacuum
/// kernels, `None` when no thermal interpretation is claimed).
#[derive(Clone)]
pub struct CorrelatorKernel {
    label: String,
    beta_nominal: Option<f64>,
    eval: Option<EvalFn>,
    eval_d2: Option<EvalFn>,
    spectral: Option<SpectralFn>,
    strip_above: f64,
    strip_below: f64,
    decay: Decay,
}

impl std::fmt::Debug for CorrelatorKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CorrelatorKernel")
            .field("label", &self.label)
            .field("beta_nominal", &self.beta_nominal)
            .field("has_eval", &self.eval.is_some())
            .field("has_spectral", &self.spectral.is_some())
            .field("decay", &self.decay)
            .finish()
    }
}

impl CorrelatorKernel {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        label: impl Into<String>,
        beta_nominal: Option<f64>,
        eval: Option<EvalFn>,
        eval_d2: Option<EvalFn>,
        spectral: Option<SpectralFn>,
        strip_above: f64,
        strip_below: f64,
        decay: Decay,
    ) -> Self {
        CorrelatorKernel {
            label: label.into(),
            beta_nominal,
            eval,
            eval_d2,
            spectral,
            strip_above,
            strip_below,
            decay,
        }
    }

    /// Identically zero kernel carrying the metadata of `like`.
    pub fn zero_like(like: &CorrelatorKernel, label: impl Into<String>) -> Self {
        CorrelatorKernel {
            label: label.into(),
            beta_nominal: like.beta_nominal,
            eval: Some(Arc::new(|_| Complex64::new(0.0, 0.0))),
            eval_d2: Some(Arc::new(|_| Complex64::new(0.0, 0.0))),
            spectral: Some(Arc::new(|_| Complex64::new(0.0, 0.0))),
            strip_above: like.strip_above,
            strip_below: like.strip_below,
            decay: like.decay,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn beta_nominal(&self) -> Option<f64> {
        self.beta_nominal
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    /// Depth of the pole-free region below the real axis (for contour shifts).
    pub fn strip_below(&self) -> f64 {
        self.strip_below
    }

    /// Height of the analyticity strip above the real axis.
    pub fn strip_above(&self) -> f64 {
        self.strip_above
    }

    pub fn has_spectral_form(&self) -> bool {
        self.spectral.is_some()
    }

    pub fn has_evaluation(&self) -> bool {
        self.eval.is_some()
    }

    /// Evaluate at complex argument (internal workhorse; no strip checks).
    pub(crate) fn eval_z(&self, z: Complex64) -> Result<Complex64, CorrelatorError> {
        match &self.eval {
            Some(f) => Ok(f(z)),
            None => Err(CorrelatorError::MissingEvaluation(self.label.clone())),
        }
    }

    /// Regulated evaluation w(Δτ − iε).
    pub fn eval(&self, dtau: f64, eps: f64) -> Result<Complex64, CorrelatorError> {
        self.eval_z(Complex64::new(dtau, -eps))
    }

    /// ε → 0 boundary value via a 3-point Richardson ladder (ε, ε/2, ε/4).
    pub fn eval_extrapolated(
        &self,
        dtau: f64,
        eps_base: f64,
    ) -> Result<Complex64, CorrelatorError> {
        let f = self
            .eval
            .as_ref()
            .ok_or_else(|| CorrelatorError::MissingEvaluation(self.label.clone()))?;
        let (v, _resid) = crate::quad::richardson3(|e| f(Complex64::new(dtau, -e)), eps_base);
        Ok(v)
    }

    /// Closed-form strip continuation w(τ + iσ), valid for 0 < σ ≤ strip height.
    pub fn continuation(&self, tau: f64, sigma: f64) -> Result<Complex64, CorrelatorError> {
        if self.eval.is_none() || self.strip_above <= 0.0 {
            return Err(CorrelatorError::MissingContinuation(self.label.clone()));
        }
        if !(sigma > 0.0 && sigma <= self.strip_above * (1.0 + 1e-12)) {
            return Err(CorrelatorError::OutsideStrip {
                sigma,
                strip: self.strip_above,
            });
        }
        self.eval_z(Complex64::new(tau, sigma))
    }

    /// Closed-form spectral function, when available.
    pub fn spectral(&self, omega: f64) -> Result<Complex64, CorrelatorError> {
        match &self.spectral {
            Some(f) => Ok(f(omega)),
            None => Err(CorrelatorError::MissingSpectralForm(self.label.clone())),
        }
    }

    pub(crate) fn spectral_fn(&self) -> Option<SpectralFn> {
        self.spectral.clone()
    }

    pub(crate) fn eval_d2_fn(&self) -> Option<EvalFn> {
        self.eval_d2.clone()
    }

    /// Complex linear combination Σ cᵢ wᵢ.
    pub fn linear_combination(
        terms: &[(Complex64, &CorrelatorKernel)],
        label: impl Into<String>,
    ) -> Result<CorrelatorKernel, CorrelatorError> {
        if terms.is_empty() {
            return Err(CorrelatorError::Unsupported(
                "empty linear combination".into(),
            ));
        }
        let evals: Option<Vec<(Complex64, EvalFn)>> = terms
            .iter()
            .map(|(c, k)| k.eval.clone().map(|f| (*c, f)))
            .collect();
        let spectrals: Option<Vec<(Complex64, SpectralFn)>> = terms
            .iter()
            .map(|(c, k)| k.spectral.clone().map(|f| (*c, f)))
            .collect();
        let d2s: Option<Vec<(Complex64, EvalFn)>> = terms
            .iter()
            .map(|(c, k)| k.eval_d2.clone().map(|f| (*c, f)))
            .collect();

        let eval: Option<EvalFn> = evals.map(|fs| {
            Arc::new(move |z: Complex64| fs.iter().map(|(c, f)| c * f(z)).sum::<Complex64>())
                as EvalFn
        });
        if eval.is_none() {
            return Err(CorrelatorError::Unsupported(
                "linear combination needs every term to be evaluable".into(),
            ));
        }
        let spectral: Option<SpectralFn> = spectrals.map(|fs| {
            Arc::new(move |w: f64| fs.iter().map(|(c, f)| c * f(w)).sum::<Complex64>())
                as SpectralFn
        });
        let eval_d2: Option<EvalFn> = d2s.map(|fs| {
            Arc::new(move |z: Complex64| fs.iter().map(|(c, f)| c * f(z)).sum::<Complex64>())
                as EvalFn
        });

        let strip_above = terms
            .iter()
            .map(|(_, k)| k.strip_above)
            .fold(f64::INFINITY, f64::min);
        let strip_below = terms
            .iter()
            .map(|(_, k)| k.strip_below)
            .fold(f64::INFINITY, f64::min);
        let beta = terms[0].1.beta_nominal;
        let beta_nominal = if terms.iter().all(|(_, k)| k.beta_nominal == beta) {
            beta
        } else {
            None
        };
        // keep the slowest decay
        let decay = terms
            .iter()
            .map(|(_, k)| k.decay)
            .reduce(|a, b| match (a, b) {
                (Decay::PowerLaw { power: p }, Decay::PowerLaw { power: q }) => {
                    Decay::PowerLaw { power: p.min(q) }
                }
                (Decay::PowerLaw { power }, _) | (_, Decay::PowerLaw { power }) => {
                    Decay::PowerLaw { power }
                }
                (Decay::Exponential { rate: r }, Decay::Exponential { rate: s }) => {
                    Decay::Exponential { rate: r.min(s) }
                }
            })
            .unwrap();

        Ok(CorrelatorKernel {
            label: label.into(),
            beta_nominal,
            eval,
            eval_d2,
            spectral,
            strip_above,
            strip_below,
            decay,
        })
    }

    /// Export samples (Δτ, Re w, Im w, ε) in the columnar text format.
    pub fn to_table(&self, dtaus: &[f64], eps: f64) -> Result<String, CorrelatorError> {
        let mut rows = Vec::with_capacity(dtaus.len());
        for &dt in dtaus {
            let v = self.eval(dt, eps)?;
            rows.push(vec![dt, v.re, v.im, eps]);
        }
        Ok(crate::table::write_table(
            "natural",
            &["dtau", "re_w", "im_w", "eps"],
            &rows,
        ))
    }
}

/// The four smeared operator correlators ⟨OO⟩, ⟨OO†⟩, ⟨O†O⟩, ⟨O†O†⟩.
#[derive(Clone, Debug)]
pub struct CorrelatorSet {
    pub w_uu: CorrelatorKernel,
    pub w_ud: CorrelatorKernel,
    pub w_du: CorrelatorKernel,
    pub w_dd: CorrelatorKernel,
}

impl CorrelatorSet {
    /// All four correlators coincide for a Hermitian operator.
    pub fn hermitian(w: CorrelatorKernel) -> Self {
        CorrelatorSet {
            w_uu: w.clone(),
            w_ud: w.clone(),
            w_du: w.clone(),
            w_dd: w,
        }
    }

    /// Complex-scalar operator O = φ₁ + iφ₂ (independent fields, same state):
    /// ⟨OO⟩ = ⟨O†O†⟩ = 0 while ⟨OO†⟩ = ⟨O†O⟩ = 2⟨φφ⟩.
    pub fn complex_scalar(w: CorrelatorKernel) -> Result<Self, CorrelatorError> {
        let two = Complex64::new(2.0, 0.0);
        let doubled =
            CorrelatorKernel::linear_combination(&[(two, &w)], format!("2*{}", w.label()))?;
        Ok(CorrelatorSet {
            w_uu: CorrelatorKernel::zero_like(&w, format!("0*{}", w.label())),
            w_ud: doubled.clone(),
            w_du: doubled,
            w_dd: CorrelatorKernel::zero_like(&w, format!("0*{}", w.label())),
        })
    }
}
