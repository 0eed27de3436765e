//! Python bindings for the wightman library: the kernel catalog, detector
//! response, EDR thermometry, residual checks, and unit conversions.
//!
//! Build with `cargo build -p wightman-py --release`; the smoke test in
//! `python/smoke_test.py` locates the produced cdylib and imports it.

// the pymethods expansion inserts identity PyErr conversions
#![allow(clippy::useless_conversion)]

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use wightman::correlators::{
    self, kernel_fourier, smeared_correlator, CorrelatorKernel, CorrelatorSet, FourierMethod,
    GeometryContext, KernelFamily, OperatorKind,
};
use wightman::detector::{
    effective_wightman, transition_probability_direct, transition_probability_fourier,
    DetectorSpec, EffectiveWightman, MuMatrix, ResponseSettings, SmearingProfile,
    SwitchingFunction,
};
use wightman::geometry::{fermi_walker_transport, tau_grid, CurveData, RindlerWedge};
use wightman::thermometry::{
    self, edr_convergence_sweep, SweepSetup, SweepVerdict, UnitSystem,
};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A stationary pulled-back two-point kernel.
#[pyclass(name = "Kernel")]
#[derive(Clone)]
struct PyKernel {
    inner: CorrelatorKernel,
}

#[pymethods]
impl PyKernel {
    /// w(dtau - i eps) as a complex number.
    fn eval(&self, dtau: f64, eps: f64) -> PyResult<(f64, f64)> {
        let v = self.inner.eval(dtau, eps).map_err(err)?;
        Ok((v.re, v.im))
    }

    /// Strip continuation w(tau + i sigma).
    fn continuation(&self, tau: f64, sigma: f64) -> PyResult<(f64, f64)> {
        let v = self.inner.continuation(tau, sigma).map_err(err)?;
        Ok((v.re, v.im))
    }

    /// Fourier transform w̃(omega); method is "closed", "quadrature" or "fft".
    #[pyo3(signature = (omega, method = "quadrature"))]
    fn fourier(&self, omega: f64, method: &str) -> PyResult<(f64, f64)> {
        let m = match method {
            "closed" => FourierMethod::ClosedForm,
            "quadrature" => FourierMethod::DampedQuadrature,
            "fft" => FourierMethod::FftGrid,
            other => return Err(err(format!("unknown method {other:?}"))),
        };
        let v = kernel_fourier(&self.inner, omega, m).map_err(err)?;
        Ok((v.value.re, v.value.im))
    }

    /// Inverse temperature the kernel is nominally KMS at (None if unset,
    /// inf for vacuum kernels).
    #[getter]
    fn beta_nominal(&self) -> Option<f64> {
        self.inner.beta_nominal()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Kernel({})", self.inner.label())
    }
}

#[pyfunction]
fn vacuum_inertial() -> PyKernel {
    PyKernel {
        inner: correlators::vacuum_kernel_inertial(),
    }
}

#[pyfunction]
fn vacuum_accelerated(a: f64) -> PyResult<PyKernel> {
    Ok(PyKernel {
        inner: correlators::vacuum_kernel_accelerated(a).map_err(err)?,
    })
}

#[pyfunction]
fn thermal_inertial(beta: f64) -> PyResult<PyKernel> {
    Ok(PyKernel {
        inner: correlators::thermal_kernel_inertial(beta).map_err(err)?,
    })
}

#[pyfunction]
fn derivative_coupled(base: &PyKernel) -> PyResult<PyKernel> {
    Ok(PyKernel {
        inner: correlators::derivative_coupled_kernel(&base.inner, [1.0, 0.0, 0.0, 0.0])
            .map_err(err)?,
    })
}

/// Gaussian-smeared accelerated kernel (aligned profiles of width sigma,
/// X-offset x0).
#[pyfunction]
#[pyo3(signature = (a, sigma, x0 = 0.0))]
fn smeared_accelerated(a: f64, sigma: f64, x0: f64) -> PyResult<PyKernel> {
    let profile = SmearingProfile::gaussian_at(sigma, [x0, 0.0, 0.0]).map_err(err)?;
    let set = smeared_correlator(
        KernelFamily::VacuumAccelerated { a },
        OperatorKind::HermitianScalar,
        &profile,
        &profile,
        &GeometryContext::Rindler { a },
    )
    .map_err(err)?;
    Ok(PyKernel { inner: set.w_ud })
}

fn mu_from_name(preset: &str) -> PyResult<MuMatrix> {
    match preset {
        "raising" => Ok(MuMatrix::raising()),
        "symmetric" => Ok(MuMatrix::symmetric()),
        other => Err(err(format!("unknown mu preset {other:?}"))),
    }
}

/// Excitation/deexcitation probabilities (p_up, p_down) for gap omega,
/// coupling lam, duration t.
#[pyfunction]
#[pyo3(signature = (kernel, omega, lam, t, route = "fourier", mu = "raising"))]
fn response(
    kernel: &PyKernel,
    omega: f64,
    lam: f64,
    t: f64,
    route: &str,
    mu: &str,
) -> PyResult<(f64, f64)> {
    let set = CorrelatorSet::hermitian(kernel.inner.clone());
    let det = DetectorSpec::new(omega, lam, mu_from_name(mu)?);
    let eff = effective_wightman(&det, &set).map_err(err)?;
    let chi = SwitchingFunction::gaussian();
    let settings = ResponseSettings::default();
    let r = match route {
        "fourier" => transition_probability_fourier(&eff, &chi, &det, t, &settings),
        "direct" => transition_probability_direct(&eff, &chi, &det, t, &settings),
        other => return Err(err(format!("unknown route {other:?}"))),
    }
    .map_err(err)?;
    Ok((r.p_up, r.p_down))
}

/// EDR convergence sweep; returns (list of (T, beta_hat), verdict string).
#[pyfunction]
#[pyo3(signature = (kernel, omega, lam, t_list, route = "fourier"))]
fn edr_sweep(
    kernel: &PyKernel,
    omega: f64,
    lam: f64,
    t_list: Vec<f64>,
    route: &str,
) -> PyResult<(Vec<(f64, f64)>, String)> {
    let eff = EffectiveWightman::from_kernel(kernel.inner.clone());
    let chi = SwitchingFunction::gaussian();
    let det = DetectorSpec::new(omega, lam, MuMatrix::raising());
    let mut setup = SweepSetup::new(&eff, &chi, det);
    setup.route = match route {
        "fourier" => wightman::detector::Route::Fourier,
        "direct" => wightman::detector::Route::Direct,
        other => return Err(err(format!("unknown route {other:?}"))),
    };
    let report = edr_convergence_sweep(&setup, &t_list).map_err(err)?;
    let pairs = report
        .estimates
        .iter()
        .map(|e| (e.t, e.beta_hat))
        .collect();
    let verdict = match report.verdict {
        SweepVerdict::Converged { terminal_rel_err } => {
            format!("converged (terminal relative error {terminal_rel_err:.3e})")
        }
        SweepVerdict::Divergent { monotone } => {
            format!("divergent (monotone: {monotone})")
        }
    };
    Ok((pairs, verdict))
}

/// Max relative detailed-balance residual over n frequencies in
/// [-omega_max, omega_max].
#[pyfunction]
#[pyo3(signature = (kernel, beta, omega_max, n = 41))]
fn detailed_balance_residual(
    kernel: &PyKernel,
    beta: f64,
    omega_max: f64,
    n: usize,
) -> PyResult<f64> {
    let grid = thermometry::symmetric_grid(omega_max, n.max(2));
    thermometry::detailed_balance_residual(
        &kernel.inner,
        beta,
        &grid,
        FourierMethod::DampedQuadrature,
    )
    .map_err(err)
}

/// Max relative anti-periodicity residual over n proper times in
/// [-tau_max, tau_max].
#[pyfunction]
#[pyo3(signature = (kernel, beta, tau_max, n = 200))]
fn anti_periodicity_residual(
    kernel: &PyKernel,
    beta: f64,
    tau_max: f64,
    n: usize,
) -> PyResult<f64> {
    let grid = thermometry::symmetric_grid(tau_max, n.max(2));
    thermometry::anti_periodicity_residual(&kernel.inner, beta, &grid).map_err(err)
}

/// Unruh temperature; units is "natural" or "si".
#[pyfunction]
#[pyo3(signature = (a, units = "natural"))]
fn unruh_temperature(a: f64, units: &str) -> PyResult<f64> {
    let u = match units {
        "natural" => UnitSystem::Natural,
        "si" => UnitSystem::Si,
        other => return Err(err(format!("unknown unit system {other:?}"))),
    };
    thermometry::unruh_temperature(a, u).map_err(err)
}

/// Fermi–Walker orthonormality drift for a uniformly accelerated worldline
/// over proper time [0, tau_max].
#[pyfunction]
fn fermi_walker_drift(a: f64, tau_max: f64) -> PyResult<f64> {
    let curve = CurveData::uniform_acceleration(a, tau_grid(0.0, tau_max, 41)).map_err(err)?;
    let tetrad = [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ];
    let frame = fermi_walker_transport(&curve, &tetrad).map_err(err)?;
    Ok(frame.max_drift())
}

/// Round-trip wedge coordinates: returns max |identity defect| for the point.
#[pyfunction]
fn rindler_round_trip(a: f64, tau: f64, x: f64, y: f64, z: f64) -> PyResult<f64> {
    let wedge = RindlerWedge::new(a).map_err(err)?;
    let ev = wedge.to_minkowski(tau, x, y, z).map_err(err)?;
    let back = wedge.to_rindler(ev).map_err(err)?;
    Ok((back[0] - tau)
        .abs()
        .max((back[1] - x).abs())
        .max((back[2] - y).abs())
        .max((back[3] - z).abs()))
}

#[pymodule]
fn wightman_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyKernel>()?;
    m.add_function(wrap_pyfunction!(vacuum_inertial, m)?)?;
    m.add_function(wrap_pyfunction!(vacuum_accelerated, m)?)?;
    m.add_function(wrap_pyfunction!(thermal_inertial, m)?)?;
    m.add_function(wrap_pyfunction!(derivative_coupled, m)?)?;
    m.add_function(wrap_pyfunction!(smeared_accelerated, m)?)?;
    m.add_function(wrap_pyfunction!(response, m)?)?;
    m.add_function(wrap_pyfunction!(edr_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(detailed_balance_residual, m)?)?;
    m.add_function(wrap_pyfunction!(anti_periodicity_residual, m)?)?;
    m.add_function(wrap_pyfunction!(unruh_temperature, m)?)?;
    m.add_function(wrap_pyfunction!(fermi_walker_drift, m)?)?;
    m.add_function(wrap_pyfunction!(rindler_round_trip, m)?)?;
    Ok(())
}
