//! The shipped kernel catalog.
//!
//! All kernels are massless-scalar pullbacks in 3+1 dimensions:
//!
//! * inertial vacuum       w(z) = −1/(4π² z²)
//! * accelerated vacuum    w(z) = −a²/(16π² sinh²(az/2)),  KMS at β = 2π/a
//! * inertial thermal      w(z) = −1/(4β² sinh²(πz/β)),    KMS at β
//!
//! The thermal kernel is the closed-form resummation of the imaginary-time
//! image sum Σₙ −1/(4π²(z + inβ)²); the truncated sum and its tail bound are
//! exposed for cross-checks. Spectral functions use the convention
//! w̃(ω) = ∫ dτ e^{−iωτ} w(τ), under which every KMS kernel here has
//! w̃(ω) = (ω/2π)/(e^{βω} − 1).

use super::{CorrelatorError, CorrelatorKernel, Decay, EvalFn, SpectralFn};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

/// sinh(z)⁻² with an overflow guard for |Re z| beyond the exponential range.
fn sinh_m2(z: Complex64) -> Complex64 {
    if z.re.abs() > 350.0 {
        return Complex64::new(0.0, 0.0);
    }
    let s = z.sinh();
    1.0 / (s * s)
}

/// Planck-form spectral function (ω/2π)/(e^{βω} − 1), continuous at ω = 0.
fn planck_spectral(omega: f64, beta: f64) -> f64 {
    let x = beta * omega;
    if x.abs() < 1e-12 {
        // ω/(e^{βω}−1) -> 1/β · (1 − x/2 + x²/12)
        (1.0 - 0.5 * x + x * x / 12.0) / (2.0 * PI * beta)
    } else if x > 700.0 {
        0.0
    } else {
        omega / (2.0 * PI * x.exp_m1())
    }
}

/// Massless-scalar Minkowski vacuum pulled back on an inertial worldline.
///
/// Spectral function: −ω/(2π) for ω < 0, zero for ω ≥ 0 (no excitations from
/// the vacuum at rest).
pub fn vacuum_kernel_inertial() -> CorrelatorKernel {
    let c = -1.0 / (4.0 * PI * PI);
    let eval: EvalFn = Arc::new(move |z: Complex64| c / (z * z));
    // d²/dz² of c z⁻² = 6c z⁻⁴
    let d2: EvalFn = Arc::new(move |z: Complex64| 6.0 * c / (z * z * z * z));
    let spectral: SpectralFn = Arc::new(|w: f64| {
        Complex64::new(if w < 0.0 { -w / (2.0 * PI) } else { 0.0 }, 0.0)
    });
    CorrelatorKernel::new(
        "vacuum-inertial",
        Some(f64::INFINITY),
        Some(eval),
        Some(d2),
        Some(spectral),
        f64::INFINITY,
        f64::INFINITY,
        Decay::PowerLaw { power: 2.0 },
    )
}

/// Minkowski vacuum pulled back on a uniformly accelerated worldline of
/// proper acceleration `a`; KMS at inverse temperature 2π/a.
pub fn vacuum_kernel_accelerated(a: f64) -> Result<CorrelatorKernel, CorrelatorError> {
    if a <= 0.0 || !a.is_finite() {
        return Err(CorrelatorError::NonPositiveParameter {
            name: "a",
            value: a,
        });
    }
    let beta = 2.0 * PI / a;
    Ok(sinh_squared_kernel(
        format!("vacuum-accelerated(a={a})"),
        -a * a / (16.0 * PI * PI),
        a / 2.0,
        beta,
    ))
}

/// Inertial thermal state at inverse temperature `beta` (image-sum
/// resummation at spatial coincidence).
pub fn thermal_kernel_inertial(beta: f64) -> Result<CorrelatorKernel, CorrelatorError> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(CorrelatorError::NonPositiveParameter {
            name: "beta",
            value: beta,
        });
    }
    Ok(sinh_squared_kernel(
        format!("thermal-inertial(beta={beta})"),
        -1.0 / (4.0 * beta * beta),
        PI / beta,
        beta,
    ))
}

/// Common body of the two sinh⁻² kernels: w(z) = c·sinh(kz)⁻², KMS at β = π/k.
fn sinh_squared_kernel(label: String, c: f64, k: f64, beta: f64) -> CorrelatorKernel {
    let eval: EvalFn = Arc::new(move |z: Complex64| c * sinh_m2(k * z));
    // d²/dz² sinh(kz)⁻² = −2k²(sinh⁻² − 3 cosh² sinh⁻⁴)
    let d2: EvalFn = Arc::new(move |z: Complex64| {
        if (k * z.re).abs() > 350.0 {
            return Complex64::new(0.0, 0.0);
        }
        let s = (k * z).sinh();
        let ch = (k * z).cosh();
        let s2 = s * s;
        c * (-2.0 * k * k) * (1.0 / s2 - 3.0 * ch * ch / (s2 * s2))
    });
    let spectral: SpectralFn = Arc::new(move |w: f64| Complex64::new(planck_spectral(w, beta), 0.0));
    CorrelatorKernel::new(
        label,
        Some(beta),
        Some(eval),
        Some(d2),
        Some(spectral),
        beta,
        beta,
        Decay::Exponential { rate: 2.0 * k },
    )
}

/// Pulled-back kernel of the derivative coupling O = e·∇φ for a timelike
/// frame direction e: −(e⁰)² ∂²w/∂Δτ² on stationary kernels.
///
/// Only directions aligned with the frame time leg are representable from the
/// 1D pullback; spatial components would need off-worldline data.
pub fn derivative_coupled_kernel(
    base: &CorrelatorKernel,
    direction: [f64; 4],
) -> Result<CorrelatorKernel, CorrelatorError> {
    let spatial = (direction[1] * direction[1]
        + direction[2] * direction[2]
        + direction[3] * direction[3])
        .sqrt();
    if spatial > 1e-12 * direction[0].abs().max(1.0) {
        return Err(CorrelatorError::Unsupported(
            "derivative coupling is implemented for frame-time directions only".into(),
        ));
    }
    let scale = direction[0] * direction[0];
    let d2 = base.eval_d2_fn().ok_or_else(|| {
        CorrelatorError::Unsupported(format!(
            "kernel `{}` does not admit two closed-form derivatives",
            base.label()
        ))
    })?;
    let eval: EvalFn = Arc::new(move |z: Complex64| -scale * d2(z));
    // spectral multiplier: FT[−w''](ω) = ω² w̃(ω)
    let spectral: Option<SpectralFn> = base.spectral_fn().map(|s| {
        Arc::new(move |w: f64| scale * w * w * s(w)) as SpectralFn
    });
    let decay = match base.decay() {
        Decay::PowerLaw { power } => Decay::PowerLaw { power: power + 2.0 },
        e => e,
    };
    Ok(CorrelatorKernel::new(
        format!("derivative({})", base.label()),
        base.beta_nominal(),
        Some(eval),
        None,
        spectral,
        base.strip_above(),
        base.strip_below(),
        decay,
    ))
}

/// Spectral-only kernel with the exact Planck form w̃(ω) = ω/(e^{βω} − 1),
/// extended evenly through ω = 0. Useful as a detailed-balance identity
/// source; it has no proper-time evaluation.
pub fn synthetic_planck_kernel(beta: f64) -> Result<CorrelatorKernel, CorrelatorError> {
    if beta <= 0.0 || beta.is_nan() {
        return Err(CorrelatorError::NonPositiveParameter {
            name: "beta",
            value: beta,
        });
    }
    let spectral: SpectralFn = Arc::new(move |w: f64| {
        Complex64::new(2.0 * PI * planck_spectral(w, beta), 0.0)
    });
    Ok(CorrelatorKernel::new(
        format!("synthetic-planck(beta={beta})"),
        Some(beta),
        None,
        None,
        Some(spectral),
        0.0,
        0.0,
        Decay::Exponential { rate: 1.0 },
    ))
}

/// Truncated image sum Σ_{|n| ≤ n_max} −1/(4π²(z + inβ)²).
pub fn thermal_image_sum_partial(beta: f64, z: Complex64, n_max: usize) -> Complex64 {
    let c = -1.0 / (4.0 * PI * PI);
    let mut acc = Complex64::new(0.0, 0.0);
    for n in -(n_max as i64)..=(n_max as i64) {
        let zn = z + Complex64::new(0.0, n as f64 * beta);
        acc += c / (zn * zn);
    }
    acc
}

/// Upper bound on the image-sum truncation error:
/// |Σ_{|n| > N}| ≤ 2/(4π²) Σ_{n>N} (nβ)⁻² < 1/(2π²β²N).
pub fn thermal_image_tail_bound(beta: f64, n_max: usize) -> f64 {
    1.0 / (2.0 * PI * PI * beta * beta * n_max as f64)
}
