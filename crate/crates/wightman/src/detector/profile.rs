//! Spatial smearing profiles F^a(ξ) on the detector's rest slices.
//!
//! A profile is a list of components (one per tensor index value of the
//! coupled operator; a scalar coupling has a single component). Components
//! are pointlike or isotropic Gaussians; moments are available in closed form
//! for both, which the quadrature in `thermometry::smearing_moments` is tested
//! against.

use super::DetectorError;

/// One tensor component of a smearing profile.
#[derive(Clone, Debug, PartialEq)]
pub enum ProfileComponent {
    /// Dirac delta at `center` carrying `weight`.
    PointLike { center: [f64; 3], weight: f64 },
    /// Normalized isotropic Gaussian: weight · (2πσ²)^{−3/2} e^{−|ξ−c|²/2σ²}.
    Gaussian {
        sigma: f64,
        center: [f64; 3],
        weight: f64,
    },
}

impl ProfileComponent {
    pub fn weight(&self) -> f64 {
        match self {
            ProfileComponent::PointLike { weight, .. } => *weight,
            ProfileComponent::Gaussian { weight, .. } => *weight,
        }
    }

    pub fn center(&self) -> [f64; 3] {
        match self {
            ProfileComponent::PointLike { center, .. } => *center,
            ProfileComponent::Gaussian { center, .. } => *center,
        }
    }

    pub fn sigma(&self) -> f64 {
        match self {
            ProfileComponent::PointLike { .. } => 0.0,
            ProfileComponent::Gaussian { sigma, .. } => *sigma,
        }
    }

    /// Closed-form first moment ∫ ξ F d³ξ.
    pub fn dipole(&self) -> [f64; 3] {
        let w = self.weight();
        let c = self.center();
        [w * c[0], w * c[1], w * c[2]]
    }

    /// Closed-form second moment ∫ ξ_i ξ_j F d³ξ = w(σ²δ_ij + c_i c_j).
    pub fn quadrupole(&self) -> [[f64; 3]; 3] {
        let w = self.weight();
        let c = self.center();
        let s2 = self.sigma() * self.sigma();
        let mut q = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                q[i][j] = w * (c[i] * c[j] + if i == j { s2 } else { 0.0 });
            }
        }
        q
    }

    /// Radius containing the profile up to ~1e-9 of its mass.
    pub fn support_radius(&self) -> f64 {
        let c = self.center();
        let r = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        r + 6.5 * self.sigma()
    }
}

/// Spatial profile of the detector, one component per operator index.
#[derive(Clone, Debug, PartialEq)]
pub struct SmearingProfile {
    components: Vec<ProfileComponent>,
}

impl SmearingProfile {
    /// Pointlike scalar detector at the origin.
    pub fn pointlike() -> Self {
        SmearingProfile {
            components: vec![ProfileComponent::PointLike {
                center: [0.0; 3],
                weight: 1.0,
            }],
        }
    }

    /// Centered unit-weight isotropic Gaussian of width `sigma`.
    pub fn gaussian(sigma: f64) -> Result<Self, DetectorError> {
        Self::gaussian_at(sigma, [0.0; 3])
    }

    /// Unit-weight isotropic Gaussian of width `sigma` centered at `center`.
    pub fn gaussian_at(sigma: f64, center: [f64; 3]) -> Result<Self, DetectorError> {
        if sigma <= 0.0 || !sigma.is_finite() {
            return Err(DetectorError::InvalidProfile(format!(
                "gaussian width must be positive, got {sigma}"
            )));
        }
        Ok(SmearingProfile {
            components: vec![ProfileComponent::Gaussian {
                sigma,
                center,
                weight: 1.0,
            }],
        })
    }

    /// Multi-component profile (vector/tensor couplings).
    pub fn from_components(components: Vec<ProfileComponent>) -> Result<Self, DetectorError> {
        if components.is_empty() {
            return Err(DetectorError::InvalidProfile(
                "profile needs at least one component".into(),
            ));
        }
        Ok(SmearingProfile { components })
    }

    pub fn components(&self) -> &[ProfileComponent] {
        &self.components
    }

    pub fn is_pointlike(&self) -> bool {
        self.components
            .iter()
            .all(|c| matches!(c, ProfileComponent::PointLike { .. }))
    }

    /// Largest support radius over components.
    pub fn support_radius(&self) -> f64 {
        self.components
            .iter()
            .map(ProfileComponent::support_radius)
            .fold(0.0, f64::max)
    }
}
