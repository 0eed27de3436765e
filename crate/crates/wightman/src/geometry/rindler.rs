//! Rindler wedge coordinates and boost pushforwards.
//!
//! The wedge coordinates (τ, X, y, z) of proper acceleration `a` are related
//! to inertial coordinates (t, x, y, z) by
//!
//!   t = (X + 1/a) sinh(aτ),  x = (X + 1/a) cosh(aτ) − 1/a,
//!
//! defined for X ∈ (−1/a, ∞), τ ∈ ℝ — the right wedge shifted by −1/a so that
//! the fiducial X = 0 worldline is the uniformly accelerated curve through the
//! inertial origin. The flat metric in these coordinates is
//! −(1+aX)² dτ² + dX² + dy² + dz², and the constant-X worldline has proper
//! acceleration a/(1+aX).

use super::{FourVector, GeometryError};
use std::sync::Arc;

use super::curve::{CurveData, WorldlineLaw};

/// Right Rindler wedge of proper acceleration `a > 0`, shifted so the
/// fiducial worldline passes through the inertial origin.
#[derive(Clone, Copy, Debug)]
pub struct RindlerWedge {
    a: f64,
}

impl RindlerWedge {
    pub fn new(a: f64) -> Result<Self, GeometryError> {
        if a <= 0.0 || !a.is_finite() {
            return Err(GeometryError::NonPositiveAcceleration(a));
        }
        Ok(RindlerWedge { a })
    }

    pub fn acceleration(&self) -> f64 {
        self.a
    }

    /// Wedge coordinates (τ, X, y, z) → inertial event (t, x, y, z).
    pub fn to_minkowski(&self, tau: f64, x_r: f64, y: f64, z: f64) -> Result<FourVector, GeometryError> {
        let rho = x_r + 1.0 / self.a;
        if rho <= 0.0 {
            return Err(GeometryError::OutOfWedge(format!(
                "X = {x_r} <= -1/a = {}",
                -1.0 / self.a
            )));
        }
        let (s, c) = ((self.a * tau).sinh(), (self.a * tau).cosh());
        Ok([rho * s, rho * c - 1.0 / self.a, y, z])
    }

    /// Inertial event (t, x, y, z) → wedge coordinates (τ, X, y, z).
    pub fn to_rindler(&self, event: FourVector) -> Result<[f64; 4], GeometryError> {
        let [t, x, y, z] = event;
        let rho_x = x + 1.0 / self.a;
        if rho_x <= t.abs() {
            return Err(GeometryError::OutOfWedge(format!(
                "event (t={t}, x={x}) not inside the shifted right wedge"
            )));
        }
        let rho = (rho_x * rho_x - t * t).sqrt();
        let tau = (t / rho_x).atanh() / self.a;
        Ok([tau, rho - 1.0 / self.a, y, z])
    }

    /// Constant-(X, y, z) worldline parametrized by its own proper time.
    ///
    /// Proper time s relates to wedge time by s = (1 + aX) τ, and the
    /// worldline's proper acceleration is a/(1 + aX).
    pub fn constituent_law(&self, x_r: f64, y: f64, z: f64) -> Result<Arc<dyn WorldlineLaw>, GeometryError> {
        let rho = x_r + 1.0 / self.a;
        if rho <= 0.0 {
            return Err(GeometryError::OutOfWedge(format!("X = {x_r} out of wedge")));
        }
        Ok(Arc::new(ConstituentLaw {
            rho,
            shift: 1.0 / self.a,
            y,
            z,
        }))
    }

    /// Constant-X worldline sampled on a proper-time grid.
    pub fn constituent_curve(
        &self,
        x_r: f64,
        y: f64,
        z: f64,
        taus: Vec<f64>,
    ) -> Result<CurveData, GeometryError> {
        CurveData::from_law(self.constituent_law(x_r, y, z)?, taus)
    }
}

struct ConstituentLaw {
    rho: f64,
    shift: f64,
    y: f64,
    z: f64,
}

impl WorldlineLaw for ConstituentLaw {
    fn event(&self, s: f64) -> FourVector {
        // proper acceleration of this orbit is 1/rho
        let phi = s / self.rho;
        [
            self.rho * phi.sinh(),
            self.rho * phi.cosh() - self.shift,
            self.y,
            self.z,
        ]
    }
    fn velocity(&self, s: f64) -> FourVector {
        let phi = s / self.rho;
        [phi.cosh(), phi.sinh(), 0.0, 0.0]
    }
    fn acceleration(&self, s: f64) -> FourVector {
        let phi = s / self.rho;
        [phi.sinh() / self.rho, phi.cosh() / self.rho, 0.0, 0.0]
    }
}

/// Vector-representation boost matrix with rapidity η acting on the (t, x)
/// block.
pub fn boost_matrix(rapidity: f64) -> [[f64; 4]; 4] {
    let (s, c) = (rapidity.sinh(), rapidity.cosh());
    [
        [c, s, 0.0, 0.0],
        [s, c, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
}

/// Pushforward along the wedge time flow by parameter τ: the one-parameter
/// boost group exp(aτ S^{01}) in a finite tensor representation.
#[derive(Clone, Debug)]
pub struct BoostPushforward {
    rapidity: f64,
    rank: usize,
}

/// Build the pushforward for a rank-`rank` tensor (rank 0 = scalar).
pub fn boost_pushforward(a: f64, tau: f64, rank: usize) -> Result<BoostPushforward, GeometryError> {
    if rank > 6 {
        return Err(GeometryError::MalformedRank(format!(
            "rank {rank} unsupported (components would number 4^{rank})"
        )));
    }
    Ok(BoostPushforward {
        rapidity: a * tau,
        rank,
    })
}

impl BoostPushforward {
    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Rank-1 matrix representation.
    pub fn matrix(&self) -> [[f64; 4]; 4] {
        boost_matrix(self.rapidity)
    }

    /// Apply to a flat component array of length 4^rank (row-major index
    /// order, first index slowest).
    pub fn apply(&self, components: &[f64]) -> Result<Vec<f64>, GeometryError> {
        let want = 4usize.pow(self.rank as u32);
        if components.len() != want {
            return Err(GeometryError::MalformedRank(format!(
                "rank {} needs {want} components, got {}",
                self.rank,
                components.len()
            )));
        }
        if self.rank == 0 {
            return Ok(components.to_vec());
        }
        let m = self.matrix();
        let mut cur = components.to_vec();
        // contract one slot at a time
        for slot in 0..self.rank {
            let stride = 4usize.pow((self.rank - 1 - slot) as u32);
            let mut next = vec![0.0; cur.len()];
            for (idx, val) in next.iter_mut().enumerate() {
                let slot_index = (idx / stride) % 4;
                let base = idx - slot_index * stride;
                let mut acc = 0.0;
                for nu in 0..4 {
                    acc += m[slot_index][nu] * cur[base + nu * stride];
                }
                *val = acc;
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Compose two pushforwards of the same rank (group law).
    pub fn compose(&self, other: &BoostPushforward) -> Result<BoostPushforward, GeometryError> {
        if self.rank != other.rank {
            return Err(GeometryError::MalformedRank(
                "cannot compose pushforwards of different rank".into(),
            ));
        }
        Ok(BoostPushforward {
            rapidity: self.rapidity + other.rapidity,
            rank: self.rank,
        })
    }
}
