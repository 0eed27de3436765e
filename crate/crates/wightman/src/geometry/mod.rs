//! Worldline geometry: curves with Fermi–Walker frames, the second-order
//! Fermi-normal-coordinate metric expansion, and the Rindler wedge.
//!
//! Conventions: mostly-plus signature (−,+,+,+), natural units, proper time
//! parametrization. Curvature never comes from a metric here — callers supply
//! frame components of the Riemann tensor along the curve when they have them.

mod curve;
mod fnc;
mod rindler;
mod transport;

pub use curve::{tau_grid, CurveData, WorldlineLaw};
pub use fnc::{fnc_metric, redshift_factor, FncPoint, FncValidity, MetricComponents};
pub use rindler::{boost_matrix, boost_pushforward, BoostPushforward, RindlerWedge};
pub use transport::{fermi_walker_transport, Frame};

use thiserror::Error;

/// Contravariant components of a spacetime vector, index order (t, x, y, z).
pub type FourVector = [f64; 4];

/// Minkowski metric diag(−1, +1, +1, +1).
pub const ETA: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// η_{μν} u^μ v^ν.
pub fn minkowski_dot(u: &FourVector, v: &FourVector) -> f64 {
    -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3]
}

/// Frame components of the Riemann tensor along a curve, as used by the
/// second-order metric expansion. All components default to zero (flat).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CurvatureComponents {
    /// R_{0i0j}, symmetric in (i, j).
    pub r_0i0j: [[f64; 3]; 3],
    /// R_{0kil}.
    pub r_0kil: [[[f64; 3]; 3]; 3],
    /// R_{ikjl}.
    pub r_ikjl: [[[[f64; 3]; 3]; 3]; 3],
}

impl CurvatureComponents {
    /// Largest absolute component over all three blocks.
    pub fn max_abs(&self) -> f64 {
        let mut m: f64 = 0.0;
        for row in &self.r_0i0j {
            for &v in row {
                m = m.max(v.abs());
            }
        }
        for a in &self.r_0kil {
            for b in a {
                for &v in b {
                    m = m.max(v.abs());
                }
            }
        }
        for a in &self.r_ikjl {
            for b in a {
                for c in b {
                    for &v in c {
                        m = m.max(v.abs());
                    }
                }
            }
        }
        m
    }
}

/// Errors from the geometry subsystem.
#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("curve invariant violated: {0}")]
    InvalidCurve(String),
    #[error("initial tetrad is not orthonormal (worst defect {defect:.3e} at slot ({i},{j}))")]
    NonOrthonormalTetrad { i: usize, j: usize, defect: f64 },
    #[error("initial tetrad timelike leg must equal the four-velocity (defect {0:.3e})")]
    TetradNotComoving(f64),
    #[error("transport integrator exceeded tolerance: worst drift {drift:.3e} at tau = {tau}")]
    TransportTolerance { tau: f64, drift: f64 },
    #[error(
        "point outside the validity radius: |xi| * scale = {value:.3e} exceeds {limit:.3e}"
    )]
    OutOfValidityRadius { value: f64, limit: f64 },
    #[error("event outside the Rindler wedge: {0}")]
    OutOfWedge(String),
    #[error("proper acceleration must be positive, got {0}")]
    NonPositiveAcceleration(f64),
    #[error("malformed tensor rank: {0}")]
    MalformedRank(String),
    #[error("table parse error: {0}")]
    Table(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_uses_mostly_plus_signature() {
        let u = [1.0, 0.0, 0.0, 0.0];
        assert_eq!(minkowski_dot(&u, &u), -1.0);
        let x = [0.0, 2.0, 0.0, 0.0];
        assert_eq!(minkowski_dot(&x, &x), 4.0);
    }
}
