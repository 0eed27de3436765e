//! Second-order Fermi-normal-coordinate metric expansion and redshift.

use super::{CurvatureComponents, GeometryError};

/// A point in Fermi normal coordinates: proper time along the curve plus
/// proper-distance spatial offsets on the rest slice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FncPoint {
    pub tau: f64,
    pub xi: [f64; 3],
}

impl FncPoint {
    pub fn norm_xi(&self) -> f64 {
        (self.xi[0] * self.xi[0] + self.xi[1] * self.xi[1] + self.xi[2] * self.xi[2]).sqrt()
    }
}

/// Locality guard for the second-order expansion: points must satisfy
/// ‖ξ‖ · max(|a|, √‖R‖) ≤ radius_factor.
#[derive(Clone, Copy, Debug)]
pub struct FncValidity {
    pub radius_factor: f64,
}

impl Default for FncValidity {
    fn default() -> Self {
        // keeps the O(ξ³) truncation error subdominant
        FncValidity { radius_factor: 0.1 }
    }
}

impl FncValidity {
    pub fn check(
        &self,
        accel: &[f64; 3],
        curvature: &CurvatureComponents,
        xi: &[f64; 3],
    ) -> Result<(), GeometryError> {
        let a_mag = (accel[0] * accel[0] + accel[1] * accel[1] + accel[2] * accel[2]).sqrt();
        let scale = a_mag.max(curvature.max_abs().sqrt());
        let xi_norm = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
        let value = xi_norm * scale;
        if value > self.radius_factor {
            return Err(GeometryError::OutOfValidityRadius {
                value,
                limit: self.radius_factor,
            });
        }
        Ok(())
    }
}

/// Metric components of the second-order expansion at a rest-slice point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricComponents {
    pub g_00: f64,
    pub g_0i: [f64; 3],
    pub g_ij: [[f64; 3]; 3],
}

/// Second-order truncated metric in Fermi normal coordinates:
///
/// g_00 = −(1 + a_i ξ^i)² − R_{0i0j} ξ^i ξ^j
/// g_0i = −(2/3) R_{0kil} ξ^k ξ^l
/// g_ij = δ_ij − (1/3) R_{ikjl} ξ^k ξ^l
#[allow(clippy::needless_range_loop)] // fixed 3x3 index blocks
pub fn fnc_metric(
    accel: &[f64; 3],
    curvature: &CurvatureComponents,
    xi: &[f64; 3],
    validity: &FncValidity,
) -> Result<MetricComponents, GeometryError> {
    validity.check(accel, curvature, xi)?;

    let a_dot_xi = accel[0] * xi[0] + accel[1] * xi[1] + accel[2] * xi[2];
    let mut r00 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            r00 += curvature.r_0i0j[i][j] * xi[i] * xi[j];
        }
    }
    let g_00 = -(1.0 + a_dot_xi) * (1.0 + a_dot_xi) - r00;

    let mut g_0i = [0.0; 3];
    for (i, g) in g_0i.iter_mut().enumerate() {
        let mut acc = 0.0;
        for k in 0..3 {
            for l in 0..3 {
                acc += curvature.r_0kil[k][i][l] * xi[k] * xi[l];
            }
        }
        *g = -(2.0 / 3.0) * acc;
    }

    let mut g_ij = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = 0.0;
            for k in 0..3 {
                for l in 0..3 {
                    acc += curvature.r_ikjl[i][k][j][l] * xi[k] * xi[l];
                }
            }
            g_ij[i][j] = if i == j { 1.0 } else { 0.0 } - acc / 3.0;
        }
    }

    Ok(MetricComponents { g_00, g_0i, g_ij })
}

/// Redshift factor dτ₀/dτ between the constant-ξ trajectory and the curve:
/// 1 + a_i ξ^i + (1/2) R_{0i0j} ξ^i ξ^j (second-order truncation).
pub fn redshift_factor(
    accel: &[f64; 3],
    r_0i0j: &[[f64; 3]; 3],
    xi: &[f64; 3],
    validity: &FncValidity,
) -> Result<f64, GeometryError> {
    let curvature = CurvatureComponents {
        r_0i0j: *r_0i0j,
        ..Default::default()
    };
    validity.check(accel, &curvature, xi)?;
    let a_dot_xi = accel[0] * xi[0] + accel[1] * xi[1] + accel[2] * xi[2];
    let mut r00 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            r00 += r_0i0j[i][j] * xi[i] * xi[j];
        }
    }
    Ok(1.0 + a_dot_xi + 0.5 * r00)
}
