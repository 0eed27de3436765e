//! Switching functions χ(τ): unit-integral time profiles of the coupling.
//!
//! The interaction window of duration T uses the scaled form χ(τ/T), so that
//! ∫ χ(τ/T) dτ = T. The Fourier transform must be strongly peaked at ω = 0;
//! each shape declares the bandwidth beyond which |χ̃(ω)|/|χ̃(0)| < 1e−6.

use crate::quad::{adaptive_gk, panel_edges};
use num_complex::Complex64;
use std::f64::consts::PI;

use super::DetectorError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwitchingShape {
    /// χ(τ) = (2π)^{−1/2} e^{−τ²/2}; χ̃(ω) = e^{−ω²/2}. Entire.
    Gaussian,
    /// Compactly supported bump ∝ e^{−1/(1−τ²)} on |τ| < 1. Smooth, not analytic.
    Bump,
}

/// Unit-integral switching profile with its spectral data.
#[derive(Clone, Debug)]
pub struct SwitchingFunction {
    shape: SwitchingShape,
    bandwidth: f64,
    /// Normalization for the bump; 1 for the Gaussian.
    norm: f64,
    l2_sq: f64,
}

impl SwitchingFunction {
    pub fn gaussian() -> Self {
        SwitchingFunction {
            shape: SwitchingShape::Gaussian,
            // e^{-ω²/2} < 1e-6 beyond |ω| = 5.26
            bandwidth: 6.0,
            norm: 1.0,
            l2_sq: 0.5 / PI.sqrt(),
        }
    }

    pub fn bump() -> Self {
        // normalization and L² norm by quadrature, done once
        let raw = |t: f64| {
            if t.abs() < 1.0 {
                (-1.0 / (1.0 - t * t)).exp()
            } else {
                0.0
            }
        };
        let edges = panel_edges(-1.0, 1.0, 0.05);
        let (c, _) = adaptive_gk(
            &|t| Complex64::new(raw(t), 0.0),
            &edges,
            1e-14,
            1e-13,
            4000,
        );
        let norm = 1.0 / c.re;
        let (l2, _) = adaptive_gk(
            &|t| Complex64::new((norm * raw(t)).powi(2), 0.0),
            &edges,
            1e-14,
            1e-13,
            4000,
        );
        SwitchingFunction {
            shape: SwitchingShape::Bump,
            // |χ̃| decays subexponentially; the 1e−6 crossing sits near ω ≈ 130
            bandwidth: 150.0,
            norm,
            l2_sq: l2.re,
        }
    }

    pub fn shape(&self) -> SwitchingShape {
        self.shape
    }

    /// Unit-width profile value χ(τ).
    pub fn eval(&self, tau: f64) -> f64 {
        match self.shape {
            SwitchingShape::Gaussian => (-0.5 * tau * tau).exp() / (2.0 * PI).sqrt(),
            SwitchingShape::Bump => {
                if tau.abs() < 1.0 {
                    self.norm * (-1.0 / (1.0 - tau * tau)).exp()
                } else {
                    0.0
                }
            }
        }
    }

    /// χ̃(ω) = ∫ dτ e^{−iωτ} χ(τ); real and even for both shapes.
    pub fn fourier(&self, omega: f64) -> f64 {
        match self.shape {
            SwitchingShape::Gaussian => (-0.5 * omega * omega).exp(),
            SwitchingShape::Bump => {
                let f = |t: f64| Complex64::new((omega * t).cos() * self.eval(t), 0.0);
                let width = (PI / omega.abs().max(2.0)).min(0.05);
                let edges = panel_edges(0.0, 1.0, width);
                let (v, _) = adaptive_gk(&f, &edges, 1e-13, 1e-12, 8000);
                2.0 * v.re
            }
        }
    }

    /// ∫ χ² dτ for the unit-width profile.
    pub fn l2_norm_sq(&self) -> f64 {
        self.l2_sq
    }

    /// Characteristic support scale of the unit profile. Shapes are built at
    /// unit width; the T-scaled form χ(τ/T) used in responses has width T.
    pub fn width(&self) -> f64 {
        1.0
    }

    /// Frequency beyond which |χ̃(ω)|/χ̃(0) < 1e−6.
    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// Whether χ extends to an entire function (allows complex contours).
    pub fn is_entire(&self) -> bool {
        matches!(self.shape, SwitchingShape::Gaussian)
    }

    /// Switching autocorrelation K_T(u) = ∫ χ(τ/T) χ((τ−u)/T) dτ.
    pub fn autocorrelation(&self, t: f64) -> Result<Autocorrelation<'_>, DetectorError> {
        if t <= 0.0 || !t.is_finite() {
            return Err(DetectorError::InvalidDuration(t));
        }
        Ok(Autocorrelation { chi: self, t })
    }
}

/// The T-scaled switching autocorrelation; even in u, with ∫ K_T du = T².
#[derive(Clone, Copy, Debug)]
pub struct Autocorrelation<'a> {
    chi: &'a SwitchingFunction,
    t: f64,
}

impl Autocorrelation<'_> {
    pub fn duration(&self) -> f64 {
        self.t
    }

    pub fn eval(&self, u: f64) -> f64 {
        match self.chi.shape {
            SwitchingShape::Gaussian => {
                // Gaussian convolution: K_T(u) = T/(2√π) e^{−u²/4T²}
                self.t / (2.0 * PI.sqrt()) * (-u * u / (4.0 * self.t * self.t)).exp()
            }
            SwitchingShape::Bump => {
                let v = u / self.t;
                if v.abs() >= 2.0 {
                    return 0.0;
                }
                let f = |x: f64| Complex64::new(self.chi.eval(x) * self.chi.eval(x - v), 0.0);
                let lo = (-1.0f64).max(v - 1.0);
                let hi = 1.0f64.min(v + 1.0);
                let edges = panel_edges(lo, hi, 0.05);
                let (val, _) = adaptive_gk(&f, &edges, 1e-13, 1e-12, 4000);
                self.t * val.re
            }
        }
    }

    /// Complex continuation of K_T; available only for entire shapes.
    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64, DetectorError> {
        match self.chi.shape {
            SwitchingShape::Gaussian => {
                Ok(self.t / (2.0 * PI.sqrt()) * (-z * z / (4.0 * self.t * self.t)).exp())
            }
            SwitchingShape::Bump => Err(DetectorError::SwitchingNotAnalytic),
        }
    }

    /// ∫ K_T(u) du (unit-integral χ makes this T² exactly).
    pub fn integral(&self) -> f64 {
        self.t * self.t
    }

    /// Half-range beyond which K_T is negligible (~1e−18 relative).
    pub fn support(&self) -> f64 {
        match self.chi.shape {
            SwitchingShape::Gaussian => 13.0 * self.t,
            SwitchingShape::Bump => 2.0 * self.t,
        }
    }
}
