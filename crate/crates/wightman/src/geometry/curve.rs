//! Proper-time-parametrized timelike curves.
//!
//! A [`CurveData`] carries sampled kinematics (events, four-velocity,
//! four-acceleration, frame acceleration, optional curvature) on a strictly
//! increasing proper-time grid. Curves built from an analytic law keep the law
//! around so that consumers needing off-grid values (the transport integrator)
//! avoid interpolation error entirely.

use super::{minkowski_dot, CurvatureComponents, FourVector, GeometryError};
use std::fmt;
use std::sync::Arc;

/// Analytic worldline: exact kinematics at any proper time.
pub trait WorldlineLaw: Send + Sync {
    fn event(&self, tau: f64) -> FourVector;
    fn velocity(&self, tau: f64) -> FourVector;
    fn acceleration(&self, tau: f64) -> FourVector;
}

struct InertialLaw {
    origin: FourVector,
    u: FourVector,
}

impl WorldlineLaw for InertialLaw {
    fn event(&self, tau: f64) -> FourVector {
        let mut z = self.origin;
        for (zi, ui) in z.iter_mut().zip(self.u.iter()) {
            *zi += ui * tau;
        }
        z
    }
    fn velocity(&self, _tau: f64) -> FourVector {
        self.u
    }
    fn acceleration(&self, _tau: f64) -> FourVector {
        [0.0; 4]
    }
}

/// Boost orbit of proper acceleration `a` along +x through the origin.
pub(crate) struct UniformAccelerationLaw {
    pub a: f64,
}

impl WorldlineLaw for UniformAccelerationLaw {
    fn event(&self, tau: f64) -> FourVector {
        let (s, c) = ((self.a * tau).sinh(), (self.a * tau).cosh());
        [s / self.a, (c - 1.0) / self.a, 0.0, 0.0]
    }
    fn velocity(&self, tau: f64) -> FourVector {
        let (s, c) = ((self.a * tau).sinh(), (self.a * tau).cosh());
        [c, s, 0.0, 0.0]
    }
    fn acceleration(&self, tau: f64) -> FourVector {
        let (s, c) = ((self.a * tau).sinh(), (self.a * tau).cosh());
        [self.a * s, self.a * c, 0.0, 0.0]
    }
}

/// Sampled trajectory data on a proper-time grid.
#[derive(Clone)]
pub struct CurveData {
    taus: Vec<f64>,
    events: Vec<FourVector>,
    velocities: Vec<FourVector>,
    accelerations: Vec<FourVector>,
    accel_frame: Vec<[f64; 3]>,
    curvature: Option<Vec<CurvatureComponents>>,
    law: Option<Arc<dyn WorldlineLaw>>,
}

impl fmt::Debug for CurveData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurveData")
            .field("samples", &self.taus.len())
            .field("tau_span", &(self.taus.first(), self.taus.last()))
            .field("analytic", &self.law.is_some())
            .finish()
    }
}

/// Tolerance used when validating u·u = −1 and u·a = 0 on ingestion.
const KINEMATIC_TOL: f64 = 1e-8;

impl CurveData {
    /// Inertial worldline with constant four-velocity `u` through `origin`.
    pub fn inertial(origin: FourVector, u: FourVector, taus: Vec<f64>) -> Result<Self, GeometryError> {
        Self::from_law(Arc::new(InertialLaw { origin, u }), taus)
    }

    /// Uniformly accelerated worldline (proper acceleration `a` along x,
    /// passing through the inertial origin at τ = 0).
    pub fn uniform_acceleration(a: f64, taus: Vec<f64>) -> Result<Self, GeometryError> {
        if a <= 0.0 {
            return Err(GeometryError::NonPositiveAcceleration(a));
        }
        Self::from_law(Arc::new(UniformAccelerationLaw { a }), taus)
    }

    /// Sample an analytic law on a grid, validating the kinematic invariants.
    pub fn from_law(law: Arc<dyn WorldlineLaw>, taus: Vec<f64>) -> Result<Self, GeometryError> {
        let events = taus.iter().map(|&t| law.event(t)).collect();
        let velocities: Vec<_> = taus.iter().map(|&t| law.velocity(t)).collect();
        let accelerations: Vec<_> = taus.iter().map(|&t| law.acceleration(t)).collect();
        let mut out = CurveData {
            taus,
            events,
            velocities,
            accelerations,
            accel_frame: Vec::new(),
            curvature: None,
            law: Some(law),
        };
        out.accel_frame = out.derive_frame_acceleration();
        out.validate()?;
        Ok(out)
    }

    /// Build from tabulated samples. `accel_frame` may be empty, in which case
    /// the frame acceleration magnitude is derived from the four-acceleration.
    pub fn from_samples(
        taus: Vec<f64>,
        events: Vec<FourVector>,
        velocities: Vec<FourVector>,
        accelerations: Vec<FourVector>,
        accel_frame: Vec<[f64; 3]>,
        curvature: Option<Vec<CurvatureComponents>>,
    ) -> Result<Self, GeometryError> {
        let n = taus.len();
        if events.len() != n || velocities.len() != n || accelerations.len() != n {
            return Err(GeometryError::InvalidCurve(format!(
                "column lengths differ: tau {n}, events {}, u {}, a {}",
                events.len(),
                velocities.len(),
                accelerations.len()
            )));
        }
        if let Some(c) = &curvature {
            if c.len() != n {
                return Err(GeometryError::InvalidCurve(
                    "curvature table length differs from tau grid".into(),
                ));
            }
        }
        let mut out = CurveData {
            taus,
            events,
            velocities,
            accelerations,
            accel_frame,
            curvature,
            law: None,
        };
        if out.accel_frame.is_empty() {
            out.accel_frame = out.derive_frame_acceleration();
        } else if out.accel_frame.len() != out.taus.len() {
            return Err(GeometryError::InvalidCurve(
                "accel_frame length differs from tau grid".into(),
            ));
        }
        out.validate()?;
        Ok(out)
    }

    fn derive_frame_acceleration(&self) -> Vec<[f64; 3]> {
        // For planar motion (our catalog) the frame acceleration points along
        // the first spatial leg with magnitude sqrt(a·a).
        self.accelerations
            .iter()
            .map(|a| {
                let mag = minkowski_dot(a, a).max(0.0).sqrt();
                [mag, 0.0, 0.0]
            })
            .collect()
    }

    fn validate(&self) -> Result<(), GeometryError> {
        if self.taus.len() < 2 {
            return Err(GeometryError::InvalidCurve(
                "need at least two proper-time samples".into(),
            ));
        }
        for w in self.taus.windows(2) {
            if w[1] <= w[0] {
                return Err(GeometryError::InvalidCurve(format!(
                    "tau grid not strictly increasing at {} -> {}",
                    w[0], w[1]
                )));
            }
        }
        for (k, (&tau, (u, a))) in self
            .taus
            .iter()
            .zip(self.velocities.iter().zip(self.accelerations.iter()))
            .enumerate()
        {
            let uu = minkowski_dot(u, u);
            // normalization drift scales with the boost factor, so compare
            // against the squared components
            let scale = u.iter().map(|c| c * c).sum::<f64>().max(1.0);
            if (uu + 1.0).abs() > KINEMATIC_TOL * scale {
                return Err(GeometryError::InvalidCurve(format!(
                    "u.u = {uu} != -1 at sample {k} (tau = {tau})"
                )));
            }
            let ua = minkowski_dot(u, a);
            let ascale = a
                .iter()
                .zip(u.iter())
                .map(|(x, y)| (x * y).abs())
                .sum::<f64>()
                .max(1.0);
            if ua.abs() > KINEMATIC_TOL * ascale {
                return Err(GeometryError::InvalidCurve(format!(
                    "u.a = {ua} != 0 at sample {k} (tau = {tau})"
                )));
            }
        }
        Ok(())
    }

    pub fn taus(&self) -> &[f64] {
        &self.taus
    }
    pub fn events(&self) -> &[FourVector] {
        &self.events
    }
    pub fn velocities(&self) -> &[FourVector] {
        &self.velocities
    }
    pub fn accelerations(&self) -> &[FourVector] {
        &self.accelerations
    }
    pub fn accel_frame(&self) -> &[[f64; 3]] {
        &self.accel_frame
    }
    pub fn curvature(&self) -> Option<&[CurvatureComponents]> {
        self.curvature.as_deref()
    }

    /// Attach curvature components sampled on the same grid.
    pub fn with_curvature(mut self, curvature: Vec<CurvatureComponents>) -> Result<Self, GeometryError> {
        if curvature.len() != self.taus.len() {
            return Err(GeometryError::InvalidCurve(
                "curvature table length differs from tau grid".into(),
            ));
        }
        self.curvature = Some(curvature);
        Ok(self)
    }

    /// Four-velocity at arbitrary τ: exact for analytic curves, cubic Hermite
    /// (using the acceleration as derivative) for tabulated ones.
    pub fn velocity_at(&self, tau: f64) -> FourVector {
        if let Some(law) = &self.law {
            return law.velocity(tau);
        }
        self.hermite(tau, &self.velocities, &self.accelerations)
    }

    /// Four-acceleration at arbitrary τ.
    pub fn acceleration_at(&self, tau: f64) -> FourVector {
        if let Some(law) = &self.law {
            return law.acceleration(tau);
        }
        // piecewise-linear in the acceleration table
        let (k, s) = self.locate(tau);
        let mut out = [0.0; 4];
        for (mu, o) in out.iter_mut().enumerate() {
            *o = self.accelerations[k][mu] * (1.0 - s) + self.accelerations[k + 1][mu] * s;
        }
        out
    }

    fn locate(&self, tau: f64) -> (usize, f64) {
        let n = self.taus.len();
        let k = match self
            .taus
            .binary_search_by(|t| t.partial_cmp(&tau).unwrap())
        {
            Ok(k) => k.min(n - 2),
            Err(k) => k.saturating_sub(1).min(n - 2),
        };
        let h = self.taus[k + 1] - self.taus[k];
        ((k), ((tau - self.taus[k]) / h).clamp(0.0, 1.0))
    }

    #[allow(clippy::needless_range_loop)]
    fn hermite(&self, tau: f64, values: &[FourVector], derivs: &[FourVector]) -> FourVector {
        let (k, s) = self.locate(tau);
        let h = self.taus[k + 1] - self.taus[k];
        let (s2, s3) = (s * s, s * s * s);
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        let mut out = [0.0; 4];
        for mu in 0..4 {
            out[mu] = h00 * values[k][mu]
                + h10 * h * derivs[k][mu]
                + h01 * values[k + 1][mu]
                + h11 * h * derivs[k + 1][mu];
        }
        out
    }
}

/// Evenly spaced proper-time grid.
pub fn tau_grid(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && t1 > t0);
    (0..n)
        .map(|k| t0 + (t1 - t0) * k as f64 / (n - 1) as f64)
        .collect()
}
