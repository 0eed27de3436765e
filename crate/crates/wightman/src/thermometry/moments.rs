//! Smearing moments and the detector-size validity bounds.
//!
//! The single-temperature description of a smeared detector holds only while
//! the profile's dipole against the acceleration and its quadrupole against
//! the frame curvature stay small. The headline scalar is a²·D*D with D the
//! dipole component along the acceleration: the squared "size times
//! acceleration" of the detector.

use super::ThermometryError;
use crate::detector::{ProfileComponent, SmearingProfile};
use crate::quad::gauss_legendre;

/// Raw moments per profile component: ∫F, ∫ξF, ∫ξξF over the rest slice.
#[derive(Clone, Debug)]
pub struct MomentReport {
    pub weights: Vec<f64>,
    pub dipoles: Vec<[f64; 3]>,
    pub quadrupoles: Vec<[[f64; 3]; 3]>,
}

impl MomentReport {
    pub fn component_count(&self) -> usize {
        self.weights.len()
    }
}

/// 1D Gaussian marginal integrals (∫g, ∫ξg, ∫ξ²g) by Gauss–Legendre panels.
fn gaussian_axis_moments(center: f64, sigma: f64) -> (f64, f64, f64) {
    let lo = center - 8.5 * sigma;
    let hi = center + 8.5 * sigma;
    let rule = gauss_legendre(64);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let norm = 1.0 / ((2.0 * std::f64::consts::PI).sqrt() * sigma);
    let mut m = (0.0, 0.0, 0.0);
    for &(x, w) in &rule {
        let xi = mid + half * x;
        let g = w * half * norm * (-(xi - center) * (xi - center) / (2.0 * sigma * sigma)).exp();
        m.0 += g;
        m.1 += g * xi;
        m.2 += g * xi * xi;
    }
    m
}

/// Compute weight, dipole and quadrupole moments of each profile component by
/// quadrature over the rest slice (exact algebra for pointlike components).
#[allow(clippy::needless_range_loop)] // fixed 3x3 moment blocks
pub fn smearing_moments(profile: &SmearingProfile) -> Result<MomentReport, ThermometryError> {
    let mut weights = Vec::new();
    let mut dipoles = Vec::new();
    let mut quadrupoles = Vec::new();
    for comp in profile.components() {
        match comp {
            ProfileComponent::PointLike { center, weight } => {
                weights.push(*weight);
                dipoles.push([weight * center[0], weight * center[1], weight * center[2]]);
                let mut q = [[0.0; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        q[i][j] = weight * center[i] * center[j];
                    }
                }
                quadrupoles.push(q);
            }
            ProfileComponent::Gaussian {
                sigma,
                center,
                weight,
            } => {
                if !sigma.is_finite() || !weight.is_finite() {
                    return Err(ThermometryError::DivergentMoment(format!(
                        "component with sigma {sigma}, weight {weight}"
                    )));
                }
                // separable: per-axis (m0, m1, m2)
                let ax: Vec<(f64, f64, f64)> = center
                    .iter()
                    .map(|&c| gaussian_axis_moments(c, *sigma))
                    .collect();
                let w = weight * ax[0].0 * ax[1].0 * ax[2].0;
                weights.push(w);
                let mut d = [0.0; 3];
                for i in 0..3 {
                    let mut v = *weight;
                    for (j, a) in ax.iter().enumerate() {
                        v *= if i == j { a.1 } else { a.0 };
                    }
                    d[i] = v;
                }
                dipoles.push(d);
                let mut q = [[0.0; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        let mut v = *weight;
                        for (k, a) in ax.iter().enumerate() {
                            v *= if k == i && k == j {
                                a.2
                            } else if k == i || k == j {
                                a.1
                            } else {
                                a.0
                            };
                        }
                        q[i][j] = v;
                    }
                }
                quadrupoles.push(q);
            }
        }
    }
    // symmetry sanity on the quadrupoles
    for q in &quadrupoles {
        for i in 0..3 {
            for j in (i + 1)..3 {
                if (q[i][j] - q[j][i]).abs() > 1e-12 * q[i][i].abs().max(1.0) {
                    return Err(ThermometryError::DivergentMoment(
                        "asymmetric quadrupole".into(),
                    ));
                }
            }
        }
    }
    Ok(MomentReport {
        weights,
        dipoles,
        quadrupoles,
    })
}

/// Validity verdict for the single-temperature description.
#[derive(Clone, Debug)]
pub struct ValidityReport {
    /// ‖a_i F^{a,i}‖ over components.
    pub bound_dipole: f64,
    /// ‖R_{0i0j} F^{a,ij}‖ over components.
    pub bound_quadrupole: f64,
    /// a² D*D with D the dipole along the acceleration direction.
    pub adx: f64,
    pub threshold: f64,
    pub pass: bool,
    pub notes: &'static str,
}

/// Evaluate the smallness bounds of a moment report against an acceleration
/// and frame curvature. Displacements orthogonal to the acceleration do not
/// enter `adx`: constituents separated only along those directions share the
/// same proper acceleration.
#[allow(clippy::needless_range_loop)]
pub fn validity_bounds(
    report: &MomentReport,
    accel: [f64; 3],
    r_0i0j: &[[f64; 3]; 3],
    threshold: f64,
) -> ValidityReport {
    let a_mag = (accel[0] * accel[0] + accel[1] * accel[1] + accel[2] * accel[2]).sqrt();
    let a_hat = if a_mag > 0.0 {
        [accel[0] / a_mag, accel[1] / a_mag, accel[2] / a_mag]
    } else {
        [1.0, 0.0, 0.0]
    };

    let mut dip_sq = 0.0;
    let mut quad_sq = 0.0;
    let mut adx_sq = 0.0;
    for (d, q) in report.dipoles.iter().zip(report.quadrupoles.iter()) {
        let a_dot_d: f64 = (0..3).map(|i| accel[i] * d[i]).sum();
        dip_sq += a_dot_d * a_dot_d;
        let mut rq = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                rq += r_0i0j[i][j] * q[i][j];
            }
        }
        quad_sq += rq * rq;
        let d_along: f64 = (0..3).map(|i| a_hat[i] * d[i]).sum();
        adx_sq += d_along * d_along;
    }

    let bound_dipole = dip_sq.sqrt();
    let bound_quadrupole = quad_sq.sqrt();
    let adx = a_mag * a_mag * adx_sq;
    ValidityReport {
        bound_dipole,
        bound_quadrupole,
        adx,
        threshold,
        pass: bound_dipole < threshold && bound_quadrupole < threshold && adx < threshold,
        notes: "displacements along the two directions orthogonal to the acceleration are unconstrained",
    }
}
