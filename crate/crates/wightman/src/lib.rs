//! Numerical machinery for probing thermality of quantum field states with
//! localized two-level detectors.
//!
//! The crate is organized around four subsystems:
//!
//! * [`geometry`] — timelike worldlines, Fermi–Walker frames, the second-order
//!   Fermi-normal-coordinate metric and redshift, and Rindler wedge maps with
//!   boost pushforwards.
//! * [`correlators`] — a catalog of stationary pulled-back two-point kernels
//!   (inertial vacuum, uniformly accelerated vacuum, inertial thermal,
//!   derivative-coupled, complex-scalar operator sets), their regularization,
//!   Fourier transforms, strip continuation, and spatial smearing.
//! * [`detector`] — two-level detector specs, switching functions, smearing
//!   profiles, effective Wightman assembly, and excitation/deexcitation
//!   probabilities computed by two independent routes (proper-time quadrature
//!   and spectral integration).
//! * [`thermometry`] — excitation–deexcitation-ratio temperature estimation,
//!   detailed-balance and anti-periodicity residuals, convergence sweeps,
//!   smearing-moment validity bounds, and SI conversions.
//!
//! Everything inside the library works in natural units (`c = ħ = k_B = 1`,
//! mostly-plus metric signature); SI conversions live in [`thermometry::units`].
//!
//! ```
//! use wightman::correlators::vacuum_kernel_accelerated;
//! use wightman::detector::{DetectorSpec, EffectiveWightman, MuMatrix, SwitchingFunction};
//! use wightman::thermometry::{edr_convergence_sweep, SweepSetup};
//!
//! // a uniformly accelerated detector in the vacuum settles on β = 2π/a
//! let eff = EffectiveWightman::from_kernel(vacuum_kernel_accelerated(1.0)?);
//! let chi = SwitchingFunction::gaussian();
//! let det = DetectorSpec::new(1.0, 0.01, MuMatrix::raising());
//! let setup = SweepSetup::new(&eff, &chi, det);
//! let report = edr_convergence_sweep(&setup, &[5.0, 10.0, 20.0, 40.0])?;
//! let beta = report.estimates.last().unwrap().beta_hat;
//! assert!((beta - std::f64::consts::TAU).abs() / std::f64::consts::TAU < 0.02);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod correlators;
pub mod detector;
pub mod geometry;
pub mod table;
pub mod thermometry;

mod dd;
pub mod quad;

pub use num_complex::Complex64;

/// Workspace-wide result alias.
pub type Result<T, E> = std::result::Result<T, E>;
