//! Temperature recovery and thermality verification.
//!
//! The excitation–deexcitation ratio (EDR) of a two-level detector recovers
//! the KMS inverse temperature in the long-interaction limit:
//! β = −log(p_up/p_down)/Ω. This module estimates β from response pairs,
//! sweeps the interaction duration to verify convergence, quantifies detailed
//! balance and imaginary-time anti-periodicity residuals, computes smearing
//! moments with their validity bounds, and converts to SI units.

mod moments;
mod residuals;
pub mod units;

pub use moments::{smearing_moments, validity_bounds, MomentReport, ValidityReport};
pub use residuals::{
    anti_periodicity_residual, anti_periodicity_residual_pair, detailed_balance_residual,
    detailed_balance_residual_pair, symmetric_grid,
};
pub use units::{
    acceleration_for_temperature, si_acceleration_to_natural, unruh_temperature, UnitSystem,
};

use crate::correlators::CorrelatorError;
use crate::detector::{
    transition_probability_direct, transition_probability_fourier, DetectorError, DetectorSpec,
    EffectiveWightman, ResponseResult, ResponseSettings, Route, SwitchingFunction,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ThermometryError {
    #[error("probabilities must be positive for the EDR estimate: p_up = {p_up}, p_down = {p_down}")]
    NonPositiveProbability { p_up: f64, p_down: f64 },
    #[error("degenerate gap: the EDR estimate is 0/0 at omega = 0")]
    DegenerateGap,
    #[error("duration list must be increasing and non-empty")]
    BadDurationList,
    #[error("kernel declares no nominal inverse temperature; the sweep verdict is undefined")]
    MissingNominalBeta,
    #[error("sweep did not converge: terminal relative error {terminal:.3e} (tolerance {tol:.3e}); error sequence {errors:?}")]
    NotConverged {
        terminal: f64,
        tol: f64,
        errors: Vec<f64>,
    },
    #[error("frequency grid is empty")]
    EmptyGrid,
    #[error("moment integral diverged or is not finite: {0}")]
    DivergentMoment(String),
    #[error("acceleration must be positive, got {0}")]
    NonPositiveAcceleration(f64),
    #[error(transparent)]
    Detector(#[from] DetectorError),
    #[error(transparent)]
    Correlator(#[from] CorrelatorError),
}

/// One EDR temperature estimate.
#[derive(Clone, Copy, Debug)]
pub struct EdrEstimate {
    /// −log(ratio)/Ω; +∞ when the excitation channel underflows to zero.
    pub beta_hat: f64,
    pub ratio: f64,
    pub omega: f64,
    pub t: f64,
    /// Set by the sweep once the convergence verdict is known.
    pub converged: bool,
}

/// β estimate from a single probability pair.
pub fn edr_beta_estimate(
    p_up: f64,
    p_down: f64,
    omega: f64,
) -> Result<EdrEstimate, ThermometryError> {
    if omega == 0.0 {
        return Err(ThermometryError::DegenerateGap);
    }
    if p_up <= 0.0 || p_down <= 0.0 || p_up.is_nan() || p_down.is_nan() {
        return Err(ThermometryError::NonPositiveProbability { p_up, p_down });
    }
    let ratio = p_up / p_down;
    Ok(EdrEstimate {
        beta_hat: -ratio.ln() / omega,
        ratio,
        omega,
        t: f64::NAN,
        converged: false,
    })
}

/// Full configuration of a convergence sweep.
pub struct SweepSetup<'a> {
    pub eff: &'a EffectiveWightman,
    pub chi: &'a SwitchingFunction,
    pub det: DetectorSpec,
    pub route: Route,
    pub settings: ResponseSettings,
    /// Relative tolerance on the terminal estimate (default 2%).
    pub rel_tol: f64,
}

impl<'a> SweepSetup<'a> {
    pub fn new(
        eff: &'a EffectiveWightman,
        chi: &'a SwitchingFunction,
        det: DetectorSpec,
    ) -> Self {
        SweepSetup {
            eff,
            chi,
            det,
            route: Route::Fourier,
            settings: ResponseSettings::default(),
            rel_tol: 0.02,
        }
    }
}

/// Sweep verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum SweepVerdict {
    /// Terminal estimate within tolerance of β_nominal, error sequence
    /// non-increasing on the last three points.
    Converged { terminal_rel_err: f64 },
    /// β_nominal = ∞ (vacuum): the estimate grows without settling. The flag
    /// records whether it grew monotonically, the expected signature.
    Divergent { monotone: bool },
}

/// Sweep output: per-duration estimates, responses, and the verdict.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub estimates: Vec<EdrEstimate>,
    pub responses: Vec<ResponseResult>,
    pub verdict: SweepVerdict,
    /// |β̂(T) − β_nominal| per point (finite-β kernels only).
    pub errors: Vec<f64>,
}

/// Run the detector over increasing interaction durations and judge whether
/// the EDR estimate converges to the kernel's nominal inverse temperature.
pub fn edr_convergence_sweep(
    setup: &SweepSetup<'_>,
    t_list: &[f64],
) -> Result<SweepReport, ThermometryError> {
    if t_list.is_empty() || t_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ThermometryError::BadDurationList);
    }
    let beta_nominal = setup
        .eff
        .w_in
        .beta_nominal()
        .ok_or(ThermometryError::MissingNominalBeta)?;

    let mut estimates = Vec::with_capacity(t_list.len());
    let mut responses = Vec::with_capacity(t_list.len());
    for &t in t_list {
        let resp = match setup.route {
            Route::Direct => {
                transition_probability_direct(setup.eff, setup.chi, &setup.det, t, &setup.settings)?
            }
            Route::Fourier => transition_probability_fourier(
                setup.eff,
                setup.chi,
                &setup.det,
                t,
                &setup.settings,
            )?,
        };
        let est = if resp.p_up > 0.0 && resp.p_down > 0.0 {
            let mut e = edr_beta_estimate(resp.p_up, resp.p_down, setup.det.omega)?;
            e.t = t;
            e
        } else if resp.p_down > 0.0 {
            // excitation channel numerically extinct: infinite-β marker
            EdrEstimate {
                beta_hat: f64::INFINITY,
                ratio: 0.0,
                omega: setup.det.omega,
                t,
                converged: false,
            }
        } else {
            return Err(ThermometryError::NonPositiveProbability {
                p_up: resp.p_up,
                p_down: resp.p_down,
            });
        };
        estimates.push(est);
        responses.push(resp);
    }

    if beta_nominal.is_infinite() {
        let monotone = estimates.windows(2).all(|w| {
            // once the excitation channel underflows the marker saturates at ∞
            w[1].beta_hat > w[0].beta_hat
                || (w[0].beta_hat.is_infinite() && w[1].beta_hat.is_infinite())
        });
        return Ok(SweepReport {
            estimates,
            responses,
            verdict: SweepVerdict::Divergent { monotone },
            errors: Vec::new(),
        });
    }

    let errors: Vec<f64> = estimates
        .iter()
        .map(|e| (e.beta_hat - beta_nominal).abs())
        .collect();
    let terminal = errors.last().copied().unwrap() / beta_nominal.abs();
    let tail_ok = if errors.len() >= 3 {
        let k = errors.len() - 3;
        errors[k..]
            .windows(2)
            .all(|w| w[1] <= w[0] * (1.0 + 1e-12))
    } else {
        true
    };
    if terminal <= setup.rel_tol && tail_ok {
        for e in &mut estimates {
            e.converged = true;
        }
        Ok(SweepReport {
            estimates,
            responses,
            verdict: SweepVerdict::Converged {
                terminal_rel_err: terminal,
            },
            errors,
        })
    } else {
        Err(ThermometryError::NotConverged {
            terminal,
            tol: setup.rel_tol,
            errors,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlators::{
        thermal_kernel_inertial, vacuum_kernel_accelerated, vacuum_kernel_inertial,
    };
    use crate::detector::MuMatrix;
    use std::f64::consts::PI;

    #[test]
    fn algebraic_inversion_is_exact() {
        let beta: f64 = 1.7;
        let omega = 0.9;
        let x = 0.123;
        let e = edr_beta_estimate(x * (-beta * omega).exp(), x, omega).unwrap();
        assert!((e.beta_hat - beta).abs() < 1e-12);
        let e = edr_beta_estimate(0.25, 0.25, 1.0).unwrap();
        assert_eq!(e.beta_hat, 0.0);
    }

    #[test]
    fn domain_errors_are_reported() {
        assert!(matches!(
            edr_beta_estimate(0.0, 0.1, 1.0),
            Err(ThermometryError::NonPositiveProbability { .. })
        ));
        assert!(matches!(
            edr_beta_estimate(0.1, 0.1, 0.0),
            Err(ThermometryError::DegenerateGap)
        ));
    }

    #[test]
    fn accelerated_sweep_recovers_two_pi() {
        let eff = EffectiveWightman::from_kernel(vacuum_kernel_accelerated(1.0).unwrap());
        let chi = SwitchingFunction::gaussian();
        let det = DetectorSpec::new(1.0, 0.01, MuMatrix::raising());
        let setup = SweepSetup::new(&eff, &chi, det);
        let report = edr_convergence_sweep(&setup, &[5.0, 10.0, 20.0, 40.0]).unwrap();
        match report.verdict {
            SweepVerdict::Converged { terminal_rel_err } => {
                assert!(terminal_rel_err < 0.02, "terminal {terminal_rel_err}");
            }
            other => panic!("unexpected verdict {other:?}"),
        }
        let last = report.estimates.last().unwrap();
        assert!((last.beta_hat - 2.0 * PI).abs() / (2.0 * PI) < 0.02);
        // error sequence non-increasing over the last three points
        let k = report.errors.len() - 3;
        assert!(report.errors[k] >= report.errors[k + 1]);
        assert!(report.errors[k + 1] >= report.errors[k + 2]);
    }

    #[test]
    fn thermal_sweep_recovers_its_beta() {
        let eff = EffectiveWightman::from_kernel(thermal_kernel_inertial(2.0).unwrap());
        let chi = SwitchingFunction::gaussian();
        let det = DetectorSpec::new(1.0, 0.01, MuMatrix::raising());
        let setup = SweepSetup::new(&eff, &chi, det);
        let report = edr_convergence_sweep(&setup, &[5.0, 10.0, 20.0, 40.0]).unwrap();
        let last = report.estimates.last().unwrap();
        assert!((last.beta_hat - 2.0).abs() / 2.0 < 0.02, "{}", last.beta_hat);
    }

    #[test]
    fn vacuum_sweep_is_divergent_and_monotone() {
        let eff = EffectiveWightman::from_kernel(vacuum_kernel_inertial());
        let chi = SwitchingFunction::gaussian();
        let det = DetectorSpec::new(1.0, 0.01, MuMatrix::raising());
        let setup = SweepSetup::new(&eff, &chi, det);
        let report = edr_convergence_sweep(&setup, &[5.0, 10.0, 20.0, 40.0]).unwrap();
        match report.verdict {
            SweepVerdict::Divergent { monotone } => assert!(monotone),
            other => panic!("vacuum must diverge, got {other:?}"),
        }
        // the estimate grows without bound rather than settling
        let b: Vec<f64> = report.estimates.iter().map(|e| e.beta_hat).collect();
        assert!(b[1] > 2.0 * b[0] || b[0].is_infinite());
    }

    #[test]
    fn bad_duration_lists_are_rejected() {
        let eff = EffectiveWightman::from_kernel(vacuum_kernel_accelerated(1.0).unwrap());
        let chi = SwitchingFunction::gaussian();
        let det = DetectorSpec::new(1.0, 0.01, MuMatrix::raising());
        let setup = SweepSetup::new(&eff, &chi, det);
        assert!(matches!(
            edr_convergence_sweep(&setup, &[]),
            Err(ThermometryError::BadDurationList)
        ));
        assert!(matches!(
            edr_convergence_sweep(&setup, &[5.0, 5.0]),
            Err(ThermometryError::BadDurationList)
        ));
    }
}
