//! Spatially smeared correlators.
//!
//! The smeared two-point function is the double rest-slice integral of the
//! field correlator between constituent worldlines, weighted by the profiles
//! and the volume factors √(−g)√(−g′). For the shipped kernel families the
//! constituent correlator is known in closed form as a function of the wedge
//! or inertial time difference:
//!
//! * accelerated (wedge coordinates, constituents at constant X, y, z):
//!   W = −1/4π² · 1/(2ρρ′ cosh(aΔτ) − ρ² − ρ′² − d⊥²), ρ = X + 1/a
//! * inertial vacuum: W = −1/4π² · 1/(Δτ² − r²)
//! * inertial thermal: image-sum resummation via coth
//!
//! Profile integrals reduce to low-dimensional Gaussian quadratures: separate
//! Hermite grids in the acceleration direction and a single radial grid for
//! the transverse (or full, in the inertial case) displacement, whose
//! distribution is known in closed form for Gaussian profiles. The resulting
//! kernel is a weighted node sum, cheap to evaluate at complex argument.

use super::{CorrelatorError, CorrelatorKernel, CorrelatorSet, Decay, EvalFn};
use crate::detector::{ProfileComponent, SmearingProfile};
use crate::quad::{gauss_hermite, gauss_legendre};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

/// Which pulled-back state/trajectory family the constituents sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KernelFamily {
    VacuumInertial,
    VacuumAccelerated { a: f64 },
    ThermalInertial { beta: f64 },
}

/// Operator the detector couples to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    HermitianScalar,
    /// O = φ₁ + iφ₂ with independent fields in the same state; exercises the
    /// non-Hermitian correlator structure without spinor machinery.
    ComplexScalar,
}

/// Volume element and locality data for the smearing integrals.
#[derive(Clone)]
pub enum GeometryContext {
    Inertial,
    /// Rindler wedge of acceleration `a`: √(−g) = 1 + aX.
    Rindler { a: f64 },
    /// User-supplied volume element (τ, ξ) ↦ √(−g) with a validity radius.
    Custom {
        sqrt_g: Arc<dyn Fn(f64, [f64; 3]) -> f64 + Send + Sync>,
        validity_radius: f64,
    },
}

impl std::fmt::Debug for GeometryContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeometryContext::Inertial => write!(f, "Inertial"),
            GeometryContext::Rindler { a } => write!(f, "Rindler {{ a: {a} }}"),
            GeometryContext::Custom { validity_radius, .. } => {
                write!(f, "Custom {{ validity_radius: {validity_radius} }}")
            }
        }
    }
}

impl GeometryContext {
    fn sqrt_g(&self, tau: f64, xi: [f64; 3]) -> f64 {
        match self {
            GeometryContext::Inertial => 1.0,
            GeometryContext::Rindler { a } => 1.0 + a * xi[0],
            GeometryContext::Custom { sqrt_g, .. } => sqrt_g(tau, xi),
        }
    }

    fn validity_radius(&self) -> f64 {
        match self {
            GeometryContext::Inertial => f64::INFINITY,
            GeometryContext::Rindler { a } => 0.1 / a,
            GeometryContext::Custom { validity_radius, .. } => *validity_radius,
        }
    }

    /// Verify √(−g) is τ-independent at a set of probe points. The
    /// stationary effective Wightman exists only under this assumption; which
    /// trajectories satisfy it is the caller's question, this is the test.
    pub fn check_stationary_volume(&self, probes: &[[f64; 3]]) -> Result<(), CorrelatorError> {
        let mut worst: f64 = 0.0;
        for &xi in probes {
            let base = self.sqrt_g(0.0, xi);
            for k in 1..=5 {
                let v = self.sqrt_g(k as f64, xi);
                worst = worst.max((v - base).abs() / base.abs().max(1e-300));
            }
        }
        if worst > 1e-10 {
            return Err(CorrelatorError::TauDependentVolume(worst));
        }
        Ok(())
    }
}

/// Node counts for the profile quadratures.
#[derive(Clone, Copy, Debug)]
pub struct SmearingQuadrature {
    pub hermite_nodes: usize,
    pub radial_nodes: usize,
}

impl Default for SmearingQuadrature {
    fn default() -> Self {
        SmearingQuadrature {
            hermite_nodes: 20,
            radial_nodes: 24,
        }
    }
}

fn single_scalar_component(
    profile: &SmearingProfile,
) -> Result<&ProfileComponent, CorrelatorError> {
    match profile.components() {
        [c] => Ok(c),
        other => Err(CorrelatorError::Smearing(format!(
            "scalar smearing needs a single-component profile, got {} components",
            other.len()
        ))),
    }
}

/// Nodes (position, weight) of a 1D Gaussian/point marginal.
fn axis_nodes(center: f64, sigma: f64, n: usize) -> Vec<(f64, f64)> {
    if sigma == 0.0 {
        return vec![(center, 1.0)];
    }
    gauss_hermite(n)
        .into_iter()
        .map(|(x, w)| (center + std::f64::consts::SQRT_2 * sigma * x, w / PI.sqrt()))
        .collect()
}

/// Nodes for |v| when v ~ N(Δc, s² I_dim), dim ∈ {2, 3}.
fn radial_nodes(mu: f64, s: f64, dim: usize, n: usize) -> Vec<(f64, f64)> {
    if s == 0.0 {
        return vec![(mu, 1.0)];
    }
    let lo = (mu - 8.5 * s).max(0.0);
    let hi = mu + 8.5 * s;
    let density = |r: f64| -> f64 {
        match dim {
            2 => {
                // transverse displacement of centered equal-width profiles
                r / (s * s) * (-r * r / (2.0 * s * s)).exp()
            }
            _ => {
                if mu < 1e-12 * s.max(1.0) {
                    (2.0 / PI).sqrt() * r * r / (s * s * s) * (-r * r / (2.0 * s * s)).exp()
                } else {
                    r / ((2.0 * PI).sqrt() * s * mu)
                        * ((-(r - mu) * (r - mu) / (2.0 * s * s)).exp()
                            - (-(r + mu) * (r + mu) / (2.0 * s * s)).exp())
                }
            }
        }
    };
    let rule = gauss_legendre(n);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let mut out: Vec<(f64, f64)> = rule
        .into_iter()
        .map(|(x, w)| {
            let r = mid + half * x;
            (r, w * half * density(r))
        })
        .collect();
    // renormalize the discretized density to unit mass
    let total: f64 = out.iter().map(|(_, w)| w).sum();
    for (_, w) in &mut out {
        *w /= total;
    }
    out
}

struct NodeSum {
    // kernel value: scale · Σ c_m / (A_m · cosh(az) − B_m)   (accelerated)
    //            or scale · Σ c_m · elementary(z, r_m)        (inertial)
    weights: Vec<f64>,
    a_coef: Vec<f64>,
    b_coef: Vec<f64>,
}

fn build_accelerated_nodes(
    a: f64,
    c1: &ProfileComponent,
    c2: &ProfileComponent,
    geom: &GeometryContext,
    quad: &SmearingQuadrature,
) -> Result<NodeSum, CorrelatorError> {
    let (ctr1, ctr2) = (c1.center(), c2.center());
    let (s1, s2) = (c1.sigma(), c2.sigma());
    if (ctr1[1] - ctr2[1]).abs() > 1e-14 || (ctr1[2] - ctr2[2]).abs() > 1e-14 {
        return Err(CorrelatorError::Smearing(
            "accelerated smearing supports transverse-coincident profile centers only".into(),
        ));
    }
    let x_nodes_1 = axis_nodes(ctr1[0], s1, quad.hermite_nodes);
    let x_nodes_2 = axis_nodes(ctr2[0], s2, quad.hermite_nodes);
    let s_perp = (s1 * s1 + s2 * s2).sqrt();
    let r_nodes = radial_nodes(0.0, s_perp, 2, quad.radial_nodes);

    let mut node_sum = NodeSum {
        weights: Vec::new(),
        a_coef: Vec::new(),
        b_coef: Vec::new(),
    };
    for &(x1, w1) in &x_nodes_1 {
        let rho1 = x1 + 1.0 / a;
        if rho1 <= 0.0 {
            return Err(CorrelatorError::Smearing(format!(
                "profile node X = {x1} falls outside the wedge"
            )));
        }
        let vol1 = geom.sqrt_g(0.0, [x1, ctr1[1], ctr1[2]]);
        for &(x2, w2) in &x_nodes_2 {
            let rho2 = x2 + 1.0 / a;
            if rho2 <= 0.0 {
                return Err(CorrelatorError::Smearing(format!(
                    "profile node X' = {x2} falls outside the wedge"
                )));
            }
            let vol2 = geom.sqrt_g(0.0, [x2, ctr2[1], ctr2[2]]);
            for &(r, wr) in &r_nodes {
                node_sum.weights.push(
                    w1 * w2 * wr * vol1 * vol2 * c1.weight() * c2.weight(),
                );
                node_sum.a_coef.push(2.0 * rho1 * rho2);
                node_sum.b_coef.push(rho1 * rho1 + rho2 * rho2 + r * r);
            }
        }
    }
    Ok(node_sum)
}

fn build_inertial_nodes(
    c1: &ProfileComponent,
    c2: &ProfileComponent,
    quad: &SmearingQuadrature,
) -> Vec<(f64, f64)> {
    // displacement ξ − ξ′ ~ N(Δc, (σ₁² + σ₂²) I₃)
    let (a, b) = (c1.center(), c2.center());
    let mu = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
    let s = (c1.sigma() * c1.sigma() + c2.sigma() * c2.sigma()).sqrt();
    radial_nodes(mu, s, 3, quad.radial_nodes)
        .into_iter()
        .map(|(r, w)| (r, w * c1.weight() * c2.weight()))
        .collect()
}

/// Smear a kernel family against a pair of spatial profiles.
pub fn smeared_correlator(
    family: KernelFamily,
    op: OperatorKind,
    profile_1: &SmearingProfile,
    profile_2: &SmearingProfile,
    geom: &GeometryContext,
) -> Result<CorrelatorSet, CorrelatorError> {
    smeared_correlator_with(
        family,
        op,
        profile_1,
        profile_2,
        geom,
        &SmearingQuadrature::default(),
    )
}

/// Same as [`smeared_correlator`] with explicit quadrature resolution.
pub fn smeared_correlator_with(
    family: KernelFamily,
    op: OperatorKind,
    profile_1: &SmearingProfile,
    profile_2: &SmearingProfile,
    geom: &GeometryContext,
    quad: &SmearingQuadrature,
) -> Result<CorrelatorSet, CorrelatorError> {
    let c1 = single_scalar_component(profile_1)?;
    let c2 = single_scalar_component(profile_2)?;

    // locality of both profiles
    let radius = geom.validity_radius();
    let support = profile_1.support_radius().max(profile_2.support_radius());
    if support > radius {
        return Err(CorrelatorError::Geometry(
            crate::geometry::GeometryError::OutOfValidityRadius {
                value: support,
                limit: radius,
            },
        ));
    }

    // stationarity of the volume element at profile probe points
    let mut probes = vec![c1.center(), c2.center()];
    for c in [c1, c2] {
        let s = c.sigma();
        if s > 0.0 {
            let ctr = c.center();
            probes.push([ctr[0] + s, ctr[1], ctr[2]]);
            probes.push([ctr[0] - s, ctr[1] + s, ctr[2] - s]);
        }
    }
    geom.check_stationary_volume(&probes)?;

    // family/geometry coherence
    match (family, geom) {
        (KernelFamily::VacuumAccelerated { .. }, GeometryContext::Inertial) => {
            return Err(CorrelatorError::Smearing(
                "accelerated family needs a wedge (or custom) volume element".into(),
            ))
        }
        (KernelFamily::VacuumInertial | KernelFamily::ThermalInertial { .. },
            GeometryContext::Rindler { .. }) => {
            return Err(CorrelatorError::Smearing(
                "inertial families pair with the inertial (or custom) volume element".into(),
            ))
        }
        _ => {}
    }

    let kernel = match family {
        KernelFamily::VacuumAccelerated { a } => {
            if a <= 0.0 || a.is_nan() {
                return Err(CorrelatorError::NonPositiveParameter { name: "a", value: a });
            }
            let nodes = build_accelerated_nodes(a, c1, c2, geom, quad)?;
            let beta = 2.0 * PI / a;
            let eval: EvalFn = Arc::new(move |z: Complex64| {
                if (a * z.re).abs() > 350.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let ch = (a * z).cosh();
                let mut acc = Complex64::new(0.0, 0.0);
                for ((&w, &ac), &bc) in nodes
                    .weights
                    .iter()
                    .zip(nodes.a_coef.iter())
                    .zip(nodes.b_coef.iter())
                {
                    acc += w / (ac * ch - bc);
                }
                -acc / (4.0 * PI * PI)
            });
            CorrelatorKernel::new(
                format!("smeared({})", label_of(family)),
                Some(beta),
                Some(eval),
                None,
                None,
                beta,
                beta,
                Decay::Exponential { rate: a },
            )
        }
        KernelFamily::VacuumInertial => {
            let nodes = build_inertial_nodes(c1, c2, quad);
            let eval: EvalFn = Arc::new(move |z: Complex64| {
                let z2 = z * z;
                let mut acc = Complex64::new(0.0, 0.0);
                for &(r, w) in &nodes {
                    acc += w / (z2 - r * r);
                }
                -acc / (4.0 * PI * PI)
            });
            CorrelatorKernel::new(
                format!("smeared({})", label_of(family)),
                Some(f64::INFINITY),
                Some(eval),
                None,
                None,
                f64::INFINITY,
                f64::INFINITY,
                Decay::PowerLaw { power: 2.0 },
            )
        }
        KernelFamily::ThermalInertial { beta } => {
            if beta <= 0.0 || beta.is_nan() {
                return Err(CorrelatorError::NonPositiveParameter {
                    name: "beta",
                    value: beta,
                });
            }
            let nodes = build_inertial_nodes(c1, c2, quad);
            let eval: EvalFn = Arc::new(move |z: Complex64| {
                if (PI * z.re / beta).abs() > 350.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let mut acc = Complex64::new(0.0, 0.0);
                for &(r, w) in &nodes {
                    acc += w * thermal_separated(z, r, beta);
                }
                acc
            });
            CorrelatorKernel::new(
                format!("smeared({})", label_of(family)),
                Some(beta),
                Some(eval),
                None,
                None,
                beta,
                beta,
                Decay::Exponential {
                    rate: 2.0 * PI / beta,
                },
            )
        }
    };

    match op {
        OperatorKind::HermitianScalar => Ok(CorrelatorSet::hermitian(kernel)),
        OperatorKind::ComplexScalar => CorrelatorSet::complex_scalar(kernel),
    }
}

fn label_of(family: KernelFamily) -> String {
    match family {
        KernelFamily::VacuumInertial => "vacuum-inertial".into(),
        KernelFamily::VacuumAccelerated { a } => format!("vacuum-accelerated(a={a})"),
        KernelFamily::ThermalInertial { beta } => format!("thermal-inertial(beta={beta})"),
    }
}

/// Thermal correlator at spatial separation r: image-sum resummation
/// −1/4π² · π/(2rβ) [coth(π(z−r)/β) − coth(π(z+r)/β)], with the coincidence
/// limit below r ≈ 0.
fn thermal_separated(z: Complex64, r: f64, beta: f64) -> Complex64 {
    if r < 1e-7 * beta {
        let s = (PI * z / beta).sinh();
        return -1.0 / (4.0 * beta * beta) / (s * s);
    }
    let cm = coth(PI * (z - r) / beta);
    let cp = coth(PI * (z + r) / beta);
    -(cm - cp) * PI / (2.0 * r * beta) / (4.0 * PI * PI)
}

fn coth(z: Complex64) -> Complex64 {
    z.cosh() / z.sinh()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlators::{thermal_kernel_inertial, vacuum_kernel_accelerated, vacuum_kernel_inertial};

    #[test]
    fn delta_profiles_reproduce_pointlike_kernels() {
        let p = SmearingProfile::pointlike();
        let z = Complex64::new(0.8, -1e-4);

        let set = smeared_correlator(
            KernelFamily::VacuumAccelerated { a: 1.0 },
            OperatorKind::HermitianScalar,
            &p,
            &p,
            &GeometryContext::Rindler { a: 1.0 },
        )
        .unwrap();
        let want = vacuum_kernel_accelerated(1.0).unwrap().eval_z(z).unwrap();
        assert!(
            (set.w_ud.eval_z(z).unwrap() - want).norm() < 1e-10 * want.norm(),
            "accelerated delta smear: {} vs {want}",
            set.w_ud.eval_z(z).unwrap()
        );

        let set = smeared_correlator(
            KernelFamily::VacuumInertial,
            OperatorKind::HermitianScalar,
            &p,
            &p,
            &GeometryContext::Inertial,
        )
        .unwrap();
        let want = vacuum_kernel_inertial().eval_z(z).unwrap();
        assert!((set.w_ud.eval_z(z).unwrap() - want).norm() < 1e-12 * want.norm());

        let set = smeared_correlator(
            KernelFamily::ThermalInertial { beta: 2.0 },
            OperatorKind::HermitianScalar,
            &p,
            &p,
            &GeometryContext::Inertial,
        )
        .unwrap();
        let want = thermal_kernel_inertial(2.0).unwrap().eval_z(z).unwrap();
        assert!((set.w_ud.eval_z(z).unwrap() - want).norm() < 1e-10 * want.norm());
    }

    #[test]
    fn hermitian_smearing_yields_identical_quadruple() {
        let p = SmearingProfile::gaussian(0.01).unwrap();
        let set = smeared_correlator(
            KernelFamily::VacuumAccelerated { a: 1.0 },
            OperatorKind::HermitianScalar,
            &p,
            &p,
            &GeometryContext::Rindler { a: 1.0 },
        )
        .unwrap();
        let z = Complex64::new(0.5, -1e-3);
        let a = set.w_uu.eval_z(z).unwrap();
        for k in [&set.w_ud, &set.w_du, &set.w_dd] {
            assert_eq!(k.eval_z(z).unwrap(), a);
        }
    }

    #[test]
    fn complex_scalar_smearing_zeroes_the_diagonal_pair() {
        let p = SmearingProfile::gaussian(0.01).unwrap();
        let set = smeared_correlator(
            KernelFamily::VacuumAccelerated { a: 1.0 },
            OperatorKind::ComplexScalar,
            &p,
            &p,
            &GeometryContext::Rindler { a: 1.0 },
        )
        .unwrap();
        let z = Complex64::new(0.5, -1e-3);
        assert_eq!(set.w_uu.eval_z(z).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(set.w_dd.eval_z(z).unwrap(), Complex64::new(0.0, 0.0));
        let ud = set.w_ud.eval_z(z).unwrap();
        assert!(ud.norm() > 0.0);
        assert_eq!(set.w_du.eval_z(z).unwrap(), ud);
    }

    #[test]
    fn small_smearing_perturbs_the_kernel_mildly() {
        let p = SmearingProfile::gaussian(0.01).unwrap();
        let set = smeared_correlator(
            KernelFamily::VacuumAccelerated { a: 1.0 },
            OperatorKind::HermitianScalar,
            &p,
            &p,
            &GeometryContext::Rindler { a: 1.0 },
        )
        .unwrap();
        let pointlike = vacuum_kernel_accelerated(1.0).unwrap();
        for tau in [0.5, 1.0, 2.0] {
            let z = Complex64::new(tau, -1e-3);
            let s = set.w_ud.eval_z(z).unwrap();
            let w = pointlike.eval_z(z).unwrap();
            let rel = (s - w).norm() / w.norm();
            assert!(rel < 0.01, "tau={tau}: relative shift {rel}");
        }
    }

    #[test]
    fn smeared_kernel_keeps_kms_antiperiodicity() {
        // exact for every constituent pair, so the node sum inherits it
        let p = SmearingProfile::gaussian_at(0.01, [0.02, 0.0, 0.0]).unwrap();
        let q = SmearingProfile::gaussian(0.008).unwrap();
        let set = smeared_correlator(
            KernelFamily::VacuumAccelerated { a: 1.0 },
            OperatorKind::HermitianScalar,
            &p,
            &q,
            &GeometryContext::Rindler { a: 1.0 },
        )
        .unwrap();
        let beta = 2.0 * PI;
        for tau in [0.4, 1.3, 3.0] {
            let up = set.w_ud.continuation(tau, beta).unwrap();
            let refl = set.w_ud.eval_extrapolated(-tau, 1e-8).unwrap();
            assert!(
                (up - refl).norm() < 1e-9 * refl.norm(),
                "tau={tau}: {up} vs {refl}"
            );
        }
    }

    #[test]
    fn oversized_profile_is_rejected() {
        let p = SmearingProfile::gaussian(0.05).unwrap(); // support 0.325 > 0.1/a
        let r = smeared_correlator(
            KernelFamily::VacuumAccelerated { a: 1.0 },
            OperatorKind::HermitianScalar,
            &p,
            &p,
            &GeometryContext::Rindler { a: 1.0 },
        );
        assert!(matches!(
            r,
            Err(CorrelatorError::Geometry(
                crate::geometry::GeometryError::OutOfValidityRadius { .. }
            ))
        ));
    }

    #[test]
    fn tau_dependent_volume_element_is_rejected() {
        let p = SmearingProfile::gaussian(0.01).unwrap();
        let geom = GeometryContext::Custom {
            sqrt_g: Arc::new(|tau: f64, xi: [f64; 3]| 1.0 + xi[0] + 0.01 * tau),
            validity_radius: 1.0,
        };
        let r = smeared_correlator(
            KernelFamily::VacuumAccelerated { a: 1.0 },
            OperatorKind::HermitianScalar,
            &p,
            &p,
            &geom,
        );
        assert!(matches!(r, Err(CorrelatorError::TauDependentVolume(_))));
    }

    #[test]
    fn mismatched_family_and_geometry_is_rejected() {
        let p = SmearingProfile::pointlike();
        assert!(smeared_correlator(
            KernelFamily::VacuumAccelerated { a: 1.0 },
            OperatorKind::HermitianScalar,
            &p,
            &p,
            &GeometryContext::Inertial,
        )
        .is_err());
        assert!(smeared_correlator(
            KernelFamily::ThermalInertial { beta: 2.0 },
            OperatorKind::HermitianScalar,
            &p,
            &p,
            &GeometryContext::Rindler { a: 1.0 },
        )
        .is_err());
    }

    #[test]
    fn thermal_separated_limits() {
        let beta = 2.0;
        let z = Complex64::new(0.9, -1e-4);
        // r → 0 approaches the coincidence kernel
        let near = thermal_separated(z, 1e-5, beta);
        let coincident = thermal_separated(z, 0.0, beta);
        assert!((near - coincident).norm() < 1e-8 * coincident.norm());
        // vacuum limit: large beta at separation r matches −1/4π²(z²−r²)
        let v = thermal_separated(z, 0.3, 1e5);
        let want = -1.0 / (4.0 * PI * PI) / (z * z - 0.09);
        assert!((v - want).norm() < 1e-7 * want.norm());
    }
}
