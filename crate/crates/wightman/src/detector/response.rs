//! Excitation/deexcitation probabilities at leading (λ²) order.
//!
//! For a stationary effective Wightman pair the double switching integral
//! collapses to a single integral against the switching autocorrelation:
//!
//!   p_up   = λ² ∫ du e^{−iΩu} K_T(u) w_in(u − iε)
//!   p_down = λ² ∫ du e^{+iΩu} K_T(u) w_ni(u − iε)
//!
//! and equivalently, in spectral form,
//!
//!   p_up   = (λ²T/2π) ∫ dω |χ̃(ω)|² w̃_in(Ω + ω/T)
//!   p_down = (λ²T/2π) ∫ dω |χ̃(ω)|² w̃_ni(−Ω + ω/T).
//!
//! The two implementations share no numerical machinery beyond the generic
//! panel integrator, so their agreement is a real cross-check.
//!
//! When the switching function is entire and the kernel is pole-free below
//! the real axis, the u-integration line is lowered to Im u = −δ. This is an
//! exact contour deformation; it matters because derivative-coupled kernels
//! have an O(1/ε⁴) spike at u = 0 whose cancellation on the real axis costs
//! ~10 digits — more than f64 can spare at the 1e−6 route-agreement budget.

use super::switching::SwitchingFunction;
use super::{DetectorError, DetectorSpec, EffectiveWightman};
use crate::correlators::{kernel_fourier, CorrelatorKernel, FourierMethod};
use crate::quad::{adaptive_gk, panel_edges, richardson3, QuadDiagnostics};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Which computational route produced a response.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Direct,
    Fourier,
}

/// Contour placement for the direct route.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum ContourChoice {
    /// Lower the line into the kernel's pole-free strip when the switching
    /// function permits it; otherwise stay on the real axis.
    #[default]
    Auto,
    /// Force real-axis integration (iε ladder only).
    RealAxis,
    /// Explicit line depth.
    ShiftedBy(f64),
}

/// Numerical knobs for the probability integrals.
#[derive(Clone, Copy, Debug)]
pub struct ResponseSettings {
    /// ε ladder base as a fraction of the switching width T.
    pub eps_base_factor: f64,
    /// Absolute quadrature tolerance as a fraction of λ²T.
    pub abs_tol_factor: f64,
    pub rel_tol: f64,
    pub contour: ContourChoice,
    pub max_panels: usize,
    /// Override of the spectral-route frequency half-window.
    pub bandwidth_override: Option<f64>,
}

impl Default for ResponseSettings {
    fn default() -> Self {
        ResponseSettings {
            eps_base_factor: 1e-4,
            abs_tol_factor: 1e-12,
            rel_tol: 1e-9,
            contour: ContourChoice::Auto,
            max_panels: 40_000,
            bandwidth_override: None,
        }
    }
}

/// Per-probability diagnostics.
#[derive(Clone, Copy, Debug, Default)]
pub struct ResponseDiagnostics {
    pub quad_error_up: f64,
    pub quad_error_down: f64,
    pub richardson_residual_up: f64,
    pub richardson_residual_down: f64,
    /// Worst imaginary leakage relative to λ²T.
    pub imag_leak: f64,
    pub panels: usize,
    /// Set when λ²T²·(regulated kernel peak) is not small.
    pub perturbativity_warning: bool,
}

/// Excitation/deexcitation probabilities for one (Ω, T) point.
#[derive(Clone, Copy, Debug)]
pub struct ResponseResult {
    pub p_up: f64,
    pub p_down: f64,
    pub t: f64,
    pub route: Route,
    pub diagnostics: ResponseDiagnostics,
}

impl ResponseResult {
    /// Long-time spectral rate p/(λ²T ∫χ²); converges to w̃(±Ω) as T → ∞.
    pub fn rate_up(&self, det: &DetectorSpec, chi: &SwitchingFunction) -> f64 {
        self.p_up / (det.lambda * det.lambda * self.t * chi.l2_norm_sq())
    }

    pub fn rate_down(&self, det: &DetectorSpec, chi: &SwitchingFunction) -> f64 {
        self.p_down / (det.lambda * det.lambda * self.t * chi.l2_norm_sq())
    }
}

/// Switching autocorrelation K_T(u) = ∫ χ(τ/T) χ((τ−u)/T) dτ as a standalone
/// operation (see [`SwitchingFunction::autocorrelation`] for the object form).
pub fn switching_autocorrelation(
    chi: &SwitchingFunction,
    t: f64,
    u: f64,
) -> Result<f64, DetectorError> {
    Ok(chi.autocorrelation(t)?.eval(u))
}

struct IntegralOutcome {
    value: Complex64,
    quad_error: f64,
    richardson_residual: f64,
    panels: usize,
}

/// Direct-route core: ∫ e^{−i ω̂ (u−iδ)} K_T(u−iδ) w(u − iδ − iε) du with the
/// ε → 0 Richardson ladder.
fn direct_integral(
    kernel: &CorrelatorKernel,
    chi: &SwitchingFunction,
    t: f64,
    omega_hat: f64,
    settings: &ResponseSettings,
) -> Result<IntegralOutcome, DetectorError> {
    if !kernel.has_evaluation() {
        return Err(DetectorError::Correlator(
            crate::correlators::CorrelatorError::MissingEvaluation(kernel.label().into()),
        ));
    }
    let auto = chi.autocorrelation(t)?;

    let delta = match settings.contour {
        ContourChoice::RealAxis => 0.0,
        ContourChoice::ShiftedBy(d) => d,
        ContourChoice::Auto => {
            if chi.is_entire() && kernel.strip_below() > 1e-9 {
                0.45 * kernel.strip_below().min(4.0)
            } else {
                0.0
            }
        }
    };
    if delta > 0.0 && !chi.is_entire() {
        return Err(DetectorError::SwitchingNotAnalytic);
    }

    let kernel_range = match kernel.decay() {
        crate::correlators::Decay::Exponential { rate } => 60.0 / rate + 5.0,
        crate::correlators::Decay::PowerLaw { .. } => f64::INFINITY,
    };
    let umax = auto.support().min(kernel_range);
    let width = (PI / omega_hat.abs().max(0.3)).min(5.0).min(umax / 2.0);
    let edges = panel_edges(-umax, umax, width);

    let abs_tol = settings.abs_tol_factor * t;
    let eps_base = settings.eps_base_factor * t;

    let mut worst_quad = 0.0f64;
    let mut total_panels = 0usize;
    let mut rung = |eps: f64| -> Complex64 {
        let drop = delta + eps;
        let f = |u: f64| -> Complex64 {
            let z = Complex64::new(u, -delta);
            let phase = (Complex64::new(0.0, -omega_hat) * z).exp();
            let envelope = if delta == 0.0 {
                Complex64::new(auto.eval(u), 0.0)
            } else {
                auto.eval_complex(z).unwrap_or(Complex64::new(0.0, 0.0))
            };
            let w = kernel
                .eval_z(Complex64::new(u, -drop))
                .unwrap_or(Complex64::new(0.0, 0.0));
            phase * envelope * w
        };
        let (v, diag): (Complex64, QuadDiagnostics) =
            adaptive_gk(&f, &edges, abs_tol, settings.rel_tol, settings.max_panels);
        worst_quad = worst_quad.max(diag.abs_error);
        total_panels += diag.panels;
        v
    };

    let (value, residual) = richardson3(&mut rung, eps_base);
    if residual > (1e-5 * value.norm()).max(200.0 * abs_tol) {
        return Err(DetectorError::NonConvergent { residual });
    }
    Ok(IntegralOutcome {
        value,
        quad_error: worst_quad,
        richardson_residual: residual,
        panels: total_panels,
    })
}

/// Spectral-route core: (T/2π) ∫ dν |χ̃(ν)|² w̃(ω̂ + ν/T) dν.
fn fourier_integral(
    kernel: &CorrelatorKernel,
    chi: &SwitchingFunction,
    t: f64,
    omega_hat: f64,
    settings: &ResponseSettings,
) -> Result<IntegralOutcome, DetectorError> {
    let bw = settings
        .bandwidth_override
        .unwrap_or(chi.bandwidth() + 2.0);
    let abs_tol = settings.abs_tol_factor * t;

    // transform failures inside the integrand cannot return early; they are
    // latched and surfaced after integration instead of silently zeroed
    let failed = std::cell::Cell::new(false);
    let spectral: Box<dyn Fn(f64) -> Complex64 + '_> = if kernel.has_spectral_form() {
        let k = kernel.clone();
        Box::new(move |w: f64| k.spectral(w).unwrap_or(Complex64::new(0.0, 0.0)))
    } else {
        // fall back to the damped-quadrature transform per frequency; costly
        // but exercised only for kernels without worked-out spectra
        let k = kernel.clone();
        let failed = &failed;
        Box::new(move |w: f64| {
            kernel_fourier(&k, w, FourierMethod::DampedQuadrature)
                .map(|fv| fv.value)
                .unwrap_or_else(|_| {
                    failed.set(true);
                    Complex64::new(0.0, 0.0)
                })
        })
    };

    let f = |nu: f64| -> Complex64 {
        let chi_sq = chi.fourier(nu).powi(2);
        spectral(omega_hat + nu / t) * chi_sq
    };

    // coverage check at the window edges
    let edge_tail = chi.fourier(bw).powi(2)
        * (spectral(omega_hat - bw / t).norm() + spectral(omega_hat + bw / t).norm())
        * bw;
    let tail_tol = abs_tol.max(1e-30);
    if edge_tail * t / (2.0 * PI) > tail_tol {
        return Err(DetectorError::BandwidthCoverage {
            tail: edge_tail * t / (2.0 * PI),
            tol: tail_tol,
        });
    }

    let edges = panel_edges(-bw, bw, 0.5);
    let inner_tol = abs_tol * 2.0 * PI / t;
    let (v, diag) = adaptive_gk(&f, &edges, inner_tol, settings.rel_tol, settings.max_panels);
    Ok(IntegralOutcome {
        value: v * t / (2.0 * PI),
        quad_error: diag.abs_error * t / (2.0 * PI),
        richardson_residual: 0.0,
        panels: diag.panels,
    })
}

/// Rough regulated kernel magnitude used for the perturbativity flag.
fn kernel_peak_scale(kernel: &CorrelatorKernel) -> f64 {
    let probe = kernel.strip_below().clamp(1e-3, 1.0) * 0.5;
    kernel
        .eval_z(Complex64::new(0.0, -probe))
        .map(|v| v.norm())
        .unwrap_or(0.0)
}

fn finalize(
    det: &DetectorSpec,
    kernel_up: &CorrelatorKernel,
    t: f64,
    route: Route,
    up: IntegralOutcome,
    down: IntegralOutcome,
    settings: &ResponseSettings,
) -> Result<ResponseResult, DetectorError> {
    let lam_sq = det.lambda * det.lambda;
    let abs_tol = settings.abs_tol_factor * t;

    let to_probability = |out: &IntegralOutcome| -> Result<f64, DetectorError> {
        let tol = out.quad_error + out.richardson_residual + 10.0 * abs_tol;
        if out.value.re < -tol {
            return Err(DetectorError::NegativeProbability {
                p: lam_sq * out.value.re,
                tol: lam_sq * tol,
            });
        }
        let p = lam_sq * out.value.re.max(0.0);
        if p > 1.0 {
            return Err(DetectorError::PerturbativityBreakdown { p });
        }
        Ok(p)
    };

    let p_up = to_probability(&up)?;
    let p_down = to_probability(&down)?;
    let imag_leak = up.value.im.abs().max(down.value.im.abs()) / t.max(1.0);
    let warn = lam_sq * t * t * kernel_peak_scale(kernel_up) > 0.1;
    Ok(ResponseResult {
        p_up,
        p_down,
        t,
        route,
        diagnostics: ResponseDiagnostics {
            quad_error_up: lam_sq * up.quad_error,
            quad_error_down: lam_sq * down.quad_error,
            richardson_residual_up: lam_sq * up.richardson_residual,
            richardson_residual_down: lam_sq * down.richardson_residual,
            imag_leak,
            panels: up.panels + down.panels,
            perturbativity_warning: warn,
        },
    })
}

/// Leading-order transition probabilities by proper-time quadrature.
pub fn transition_probability_direct(
    eff: &EffectiveWightman,
    chi: &SwitchingFunction,
    det: &DetectorSpec,
    t: f64,
    settings: &ResponseSettings,
) -> Result<ResponseResult, DetectorError> {
    let up = direct_integral(&eff.w_in, chi, t, det.omega, settings)?;
    let down = direct_integral(&eff.w_ni, chi, t, -det.omega, settings)?;
    finalize(det, &eff.w_in, t, Route::Direct, up, down, settings)
}

/// Leading-order transition probabilities in spectral form.
pub fn transition_probability_fourier(
    eff: &EffectiveWightman,
    chi: &SwitchingFunction,
    det: &DetectorSpec,
    t: f64,
    settings: &ResponseSettings,
) -> Result<ResponseResult, DetectorError> {
    let up = fourier_integral(&eff.w_in, chi, t, det.omega, settings)?;
    let down = fourier_integral(&eff.w_ni, chi, t, -det.omega, settings)?;
    finalize(det, &eff.w_in, t, Route::Fourier, up, down, settings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlators::{
        derivative_coupled_kernel, thermal_kernel_inertial, vacuum_kernel_accelerated,
        vacuum_kernel_inertial,
    };
    use crate::detector::MuMatrix;

    fn det(omega: f64, lambda: f64) -> DetectorSpec {
        DetectorSpec::new(omega, lambda, MuMatrix::raising())
    }

    #[test]
    fn zero_coupling_means_zero_probability() {
        let eff = EffectiveWightman::from_kernel(vacuum_kernel_accelerated(1.0).unwrap());
        let chi = SwitchingFunction::gaussian();
        let r = transition_probability_fourier(
            &eff,
            &chi,
            &det(1.0, 0.0),
            10.0,
            &ResponseSettings::default(),
        )
        .unwrap();
        assert_eq!(r.p_up, 0.0);
        assert_eq!(r.p_down, 0.0);
    }

    #[test]
    fn coupling_scales_exactly_quadratically() {
        let eff = EffectiveWightman::from_kernel(vacuum_kernel_accelerated(1.0).unwrap());
        let chi = SwitchingFunction::gaussian();
        let s = ResponseSettings::default();
        let r1 = transition_probability_fourier(&eff, &chi, &det(1.0, 0.01), 10.0, &s).unwrap();
        let r2 = transition_probability_fourier(&eff, &chi, &det(1.0, 0.02), 10.0, &s).unwrap();
        assert_eq!(r2.p_up, 4.0 * r1.p_up);
        assert_eq!(r2.p_down, 4.0 * r1.p_down);
    }

    #[test]
    fn vacuum_at_rest_does_not_excite() {
        let eff = EffectiveWightman::from_kernel(vacuum_kernel_inertial());
        let chi = SwitchingFunction::gaussian();
        let d = det(1.0, 0.01);
        let r = transition_probability_direct(&eff, &chi, &d, 20.0, &ResponseSettings::default())
            .unwrap();
        assert!(
            r.p_up / (d.lambda * d.lambda * r.t) < 1e-6,
            "vacuum excitation rate {}",
            r.p_up / (d.lambda * d.lambda * r.t)
        );
        assert!(r.p_down > 0.0);
    }

    #[test]
    fn accelerated_edr_approaches_boltzmann_factor() {
        let eff = EffectiveWightman::from_kernel(vacuum_kernel_accelerated(1.0).unwrap());
        let chi = SwitchingFunction::gaussian();
        let d = det(1.0, 0.01);
        let r = transition_probability_direct(&eff, &chi, &d, 30.0, &ResponseSettings::default())
            .unwrap();
        let ratio = r.p_up / r.p_down;
        let want = (-2.0 * PI).exp();
        assert!(
            (ratio - want).abs() < 0.02 * want,
            "ratio {ratio} vs e^(-2π) = {want}"
        );
    }

    #[test]
    fn long_time_rate_approaches_spectral_value() {
        let kernel = vacuum_kernel_accelerated(1.0).unwrap();
        let eff = EffectiveWightman::from_kernel(kernel.clone());
        let chi = SwitchingFunction::gaussian();
        let d = det(1.0, 0.01);
        let r =
            transition_probability_fourier(&eff, &chi, &d, 200.0, &ResponseSettings::default())
                .unwrap();
        let rate = r.rate_up(&d, &chi);
        let want = kernel.spectral(1.0).unwrap().re;
        assert!((want - 2.98e-4).abs() < 5e-7);
        assert!(
            (rate - want).abs() < 2e-3 * want,
            "rate {rate} vs w̃(Ω) = {want}"
        );
    }

    #[test]
    fn routes_agree_on_the_accelerated_benchmark() {
        let eff = EffectiveWightman::from_kernel(vacuum_kernel_accelerated(1.0).unwrap());
        let chi = SwitchingFunction::gaussian();
        let d = det(1.0, 0.01);
        let s = ResponseSettings::default();
        for t in [10.0, 30.0] {
            let rd = transition_probability_direct(&eff, &chi, &d, t, &s).unwrap();
            let rf = transition_probability_fourier(&eff, &chi, &d, t, &s).unwrap();
            let rel_up = (rd.p_up - rf.p_up).abs() / rf.p_up;
            let rel_down = (rd.p_down - rf.p_down).abs() / rf.p_down;
            assert!(rel_up < 1e-6, "T={t}: up disagreement {rel_up:.3e}");
            assert!(rel_down < 1e-6, "T={t}: down disagreement {rel_down:.3e}");
        }
    }

    #[test]
    fn routes_agree_for_derivative_coupling() {
        let base = vacuum_kernel_accelerated(1.0).unwrap();
        let kernel = derivative_coupled_kernel(&base, [1.0, 0.0, 0.0, 0.0]).unwrap();
        let eff = EffectiveWightman::from_kernel(kernel);
        let chi = SwitchingFunction::gaussian();
        let d = det(1.0, 0.01);
        let s = ResponseSettings::default();
        let rd = transition_probability_direct(&eff, &chi, &d, 10.0, &s).unwrap();
        let rf = transition_probability_fourier(&eff, &chi, &d, 10.0, &s).unwrap();
        assert!((rd.p_up - rf.p_up).abs() / rf.p_up < 1e-6);
        assert!((rd.p_down - rf.p_down).abs() / rf.p_down < 1e-6);
    }

    #[test]
    fn gap_symmetry_is_exact() {
        let kernel = thermal_kernel_inertial(2.0).unwrap();
        let chi = SwitchingFunction::gaussian();
        let s = ResponseSettings::default();
        let eff = EffectiveWightman::from_kernel(kernel.clone());
        let d = det(0.8, 0.01);
        let r = transition_probability_direct(&eff, &chi, &d, 10.0, &s).unwrap();
        // swap Ω → −Ω and w_in ↔ w_ni: p_up and p_down trade places exactly
        let swapped = EffectiveWightman {
            w_in: eff.w_ni.clone(),
            w_ni: eff.w_in.clone(),
        };
        let d_neg = det(-0.8, 0.01);
        let r_swapped = transition_probability_direct(&swapped, &chi, &d_neg, 10.0, &s).unwrap();
        assert_eq!(r.p_up, r_swapped.p_down);
        assert_eq!(r.p_down, r_swapped.p_up);
    }

    #[test]
    fn zero_gap_symmetric_kernel_equalizes_both_probabilities() {
        let kernel = thermal_kernel_inertial(2.0).unwrap();
        let eff = EffectiveWightman::from_kernel(kernel);
        let chi = SwitchingFunction::gaussian();
        let d = det(0.0, 0.01);
        let r = transition_probability_fourier(&eff, &chi, &d, 10.0, &ResponseSettings::default())
            .unwrap();
        assert!((r.p_up - r.p_down).abs() < 1e-12 * r.p_up);
    }

    #[test]
    fn insufficient_bandwidth_is_a_coverage_error() {
        let eff = EffectiveWightman::from_kernel(vacuum_kernel_accelerated(1.0).unwrap());
        let chi = SwitchingFunction::gaussian();
        let settings = ResponseSettings {
            bandwidth_override: Some(1.0),
            ..Default::default()
        };
        let r = transition_probability_fourier(&eff, &chi, &det(1.0, 0.01), 10.0, &settings);
        assert!(matches!(r, Err(DetectorError::BandwidthCoverage { .. })));
    }

    #[test]
    fn perturbativity_breakdown_is_reported() {
        let eff = EffectiveWightman::from_kernel(vacuum_kernel_accelerated(1.0).unwrap());
        let chi = SwitchingFunction::gaussian();
        let r = transition_probability_fourier(
            &eff,
            &chi,
            &det(1.0, 50.0),
            30.0,
            &ResponseSettings::default(),
        );
        assert!(matches!(
            r,
            Err(DetectorError::PerturbativityBreakdown { .. })
        ));
    }

    #[test]
    fn raw_double_integral_matches_the_u_reduction_at_fixed_epsilon() {
        // low-resolution 2D oracle for the stationarity reduction: at any
        // fixed regulator ε the double switching integral equals the single
        // integral against the autocorrelation. The production path then only
        // adds the ε ladder, which is validated against the spectral route.
        use crate::quad::gk15;
        let kernel = vacuum_kernel_accelerated(1.0).unwrap();
        let chi = SwitchingFunction::gaussian();
        let t = 3.0;
        let omega = 1.0;
        let eps = 0.5;
        let half = 15.0; // ±5T covers the Gaussian window to ~1e-12

        // tensor-product composite Gauss–Kronrod on unit panels (no
        // adaptivity: this is deliberately the blunt low-resolution route)
        let mut double = Complex64::new(0.0, 0.0);
        let panels: Vec<f64> = (0..=(2.0 * half) as usize)
            .map(|k| -half + k as f64)
            .collect();
        for pa in panels.windows(2) {
            for pb in panels.windows(2) {
                let (cell, _, _) = gk15(
                    &|tau: f64| {
                        let (row, _, _) = gk15(
                            &|tau_p: f64| {
                                let phase =
                                    Complex64::new(0.0, -omega * (tau - tau_p)).exp();
                                let w = kernel
                                    .eval_z(Complex64::new(tau - tau_p, -eps))
                                    .unwrap();
                                chi.eval(tau / t) * chi.eval(tau_p / t) * phase * w
                            },
                            pb[0],
                            pb[1],
                        );
                        row
                    },
                    pa[0],
                    pa[1],
                );
                double += cell;
            }
        }

        // 1D reduction at the same fixed ε
        let auto = chi.autocorrelation(t).unwrap();
        let f = |u: f64| -> Complex64 {
            let phase = Complex64::new(0.0, -omega * u).exp();
            phase * auto.eval(u) * kernel.eval_z(Complex64::new(u, -eps)).unwrap()
        };
        let edges = panel_edges(-2.0 * half, 2.0 * half, 0.5);
        let (reduced, _) = adaptive_gk(&f, &edges, 1e-12, 1e-10, 20_000);

        let rel = (double - reduced).norm() / reduced.norm();
        assert!(
            rel < 1e-3,
            "2D oracle {double} vs reduced {reduced} (rel {rel:.2e})"
        );
    }

    #[test]
    fn forced_real_axis_contour_agrees_with_the_default() {
        // the specced real-axis ladder and the lowered-line default are the
        // same integral; they must agree within the ladder residual
        let eff = EffectiveWightman::from_kernel(vacuum_kernel_accelerated(1.0).unwrap());
        let chi = SwitchingFunction::gaussian();
        let d = det(1.0, 0.01);
        let auto = transition_probability_direct(&eff, &chi, &d, 10.0, &ResponseSettings::default())
            .unwrap();
        let real_axis = ResponseSettings {
            contour: ContourChoice::RealAxis,
            abs_tol_factor: 1e-11,
            ..Default::default()
        };
        let r = transition_probability_direct(&eff, &chi, &d, 10.0, &real_axis).unwrap();
        assert!(
            (r.p_down - auto.p_down).abs() / auto.p_down < 1e-6,
            "{} vs {}",
            r.p_down,
            auto.p_down
        );
        assert!(
            (r.p_up - auto.p_up).abs() / auto.p_up < 1e-4,
            "{} vs {}",
            r.p_up,
            auto.p_up
        );
    }

    #[test]
    fn bump_switching_works_on_the_real_axis() {
        let eff = EffectiveWightman::from_kernel(vacuum_kernel_accelerated(1.0).unwrap());
        let chi = SwitchingFunction::bump();
        let d = det(1.0, 0.01);
        // coarser tolerances: real-axis ladder with the iε spike
        let settings = ResponseSettings {
            abs_tol_factor: 1e-10,
            rel_tol: 1e-7,
            ..Default::default()
        };
        let rd = transition_probability_direct(&eff, &chi, &d, 8.0, &settings).unwrap();
        let rf = transition_probability_fourier(&eff, &chi, &d, 8.0, &settings).unwrap();
        // bump χ̃ decays slowly, so the agreement budget is looser here
        assert!(
            (rd.p_down - rf.p_down).abs() / rf.p_down < 1e-4,
            "down: {} vs {}",
            rd.p_down,
            rf.p_down
        );
        assert!(rd.p_up > 0.0 && rf.p_up > 0.0);
        assert!(
            (rd.p_up - rf.p_up).abs() / rf.p_up < 1e-2,
            "up: {} vs {}",
            rd.p_up,
            rf.p_up
        );
    }
}
