//! Scenario configuration: TOML schema, validation with field paths, and
//! construction of the library objects.

use serde::{Deserialize, Serialize};
use wightman::correlators::{
    derivative_coupled_kernel, smeared_correlator, thermal_kernel_inertial,
    vacuum_kernel_accelerated, vacuum_kernel_inertial, CorrelatorSet, GeometryContext,
    KernelFamily, OperatorKind,
};
use wightman::detector::{
    effective_wightman, DetectorSpec, EffectiveWightman, MuMatrix, Route, SmearingProfile,
    SwitchingFunction,
};
use wightman::thermometry::si_acceleration_to_natural;

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub kernel: KernelSection,
    pub detector: DetectorSection,
    #[serde(default)]
    pub switching: SwitchingSection,
    #[serde(default)]
    pub smearing: SmearingSection,
    pub sweep: SweepSection,
    #[serde(default)]
    pub checks: ChecksSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub units: UnitsSection,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    /// Default output directory (the --out flag wins).
    pub directory: Option<String>,
    #[serde(default = "default_formats")]
    pub formats: Vec<String>,
}

fn default_formats() -> Vec<String> {
    vec!["tsv".into()]
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            directory: None,
            formats: default_formats(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct KernelSection {
    /// vacuum_inertial | vacuum_accelerated | thermal_inertial
    pub r#type: String,
    pub a: Option<f64>,
    pub beta: Option<f64>,
    /// hermitian | complex_scalar
    #[serde(default = "default_operator")]
    pub operator: String,
    /// linear | derivative
    #[serde(default = "default_coupling")]
    pub coupling: String,
}

fn default_operator() -> String {
    "hermitian".into()
}
fn default_coupling() -> String {
    "linear".into()
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DetectorSection {
    pub omegas: Vec<f64>,
    /// raising | symmetric | phases
    #[serde(default = "default_mu")]
    pub mu_preset: String,
    pub lambda: f64,
}

fn default_mu() -> String {
    "raising".into()
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SwitchingSection {
    /// gaussian | bump
    pub shape: String,
}

impl Default for SwitchingSection {
    fn default() -> Self {
        SwitchingSection {
            shape: "gaussian".into(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SmearingSection {
    /// pointlike | gaussian
    pub profile: String,
    #[serde(default)]
    pub sigma: f64,
    #[serde(default)]
    pub offset: [f64; 3],
}

impl Default for SmearingSection {
    fn default() -> Self {
        SmearingSection {
            profile: "pointlike".into(),
            sigma: 0.0,
            offset: [0.0; 3],
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub t_list: Vec<f64>,
    /// fourier | direct
    #[serde(default = "default_route")]
    pub route: String,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_route() -> String {
    "fourier".into()
}
fn default_tolerance() -> f64 {
    0.02
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ChecksSection {
    #[serde(default = "yes")]
    pub detailed_balance: bool,
    #[serde(default = "yes")]
    pub anti_periodicity: bool,
    #[serde(default = "yes")]
    pub validity_bounds: bool,
    #[serde(default = "default_balance_points")]
    pub balance_points: usize,
}

fn yes() -> bool {
    true
}
fn default_balance_points() -> usize {
    41
}

impl Default for ChecksSection {
    fn default() -> Self {
        ChecksSection {
            detailed_balance: true,
            anti_periodicity: true,
            validity_bounds: true,
            balance_points: default_balance_points(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct UnitsSection {
    /// natural | si (si: kernel.a in m/s², reports add kelvin temperatures)
    pub system: String,
}

impl Default for UnitsSection {
    fn default() -> Self {
        UnitsSection {
            system: "natural".into(),
        }
    }
}

/// Everything the runner needs, already validated and built.
pub struct Experiment {
    pub config: ScenarioConfig,
    /// One detector + effective pair per requested gap.
    pub channels: Vec<(DetectorSpec, EffectiveWightman)>,
    pub chi: SwitchingFunction,
    pub route: Route,
    pub beta_nominal: Option<f64>,
    /// Natural-units acceleration when the kernel family has one.
    pub acceleration: Option<f64>,
    pub profile: Option<SmearingProfile>,
    pub label: String,
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig, String> {
    toml::from_str(text).map_err(|e| format!("config parse error: {e}"))
}

/// Validate the configuration and build the experiment objects. Every error
/// names the offending field.
pub fn build_experiment(config: &ScenarioConfig) -> Result<Experiment, String> {
    let si = match config.units.system.as_str() {
        "natural" => false,
        "si" => true,
        other => return Err(format!("units.system: unknown system {other:?}")),
    };

    if config.detector.omegas.is_empty() {
        return Err("detector.omegas: need at least one gap".into());
    }
    if config.detector.omegas.iter().any(|w| *w == 0.0 || !w.is_finite()) {
        return Err("detector.omegas: gaps must be finite and nonzero".into());
    }
    if config.detector.lambda <= 0.0 || config.detector.lambda.is_nan() {
        return Err(format!(
            "detector.lambda: coupling must be positive, got {}",
            config.detector.lambda
        ));
    }
    if config.sweep.t_list.is_empty()
        || config.sweep.t_list.windows(2).any(|w| w[1] <= w[0])
        || config.sweep.t_list.iter().any(|t| *t <= 0.0 || t.is_nan())
    {
        return Err("sweep.t_list: need a strictly increasing list of positive durations".into());
    }
    if config.sweep.tolerance <= 0.0 || config.sweep.tolerance.is_nan() {
        return Err("sweep.tolerance: must be positive".into());
    }
    if config.checks.balance_points < 3 {
        return Err("checks.balance_points: need at least 3 grid points".into());
    }
    if config.output.formats.iter().any(|f| f != "tsv") {
        return Err(format!(
            "output.formats: only \"tsv\" is available, got {:?}",
            config.output.formats
        ));
    }

    let route = match config.sweep.route.as_str() {
        "fourier" => Route::Fourier,
        "direct" => Route::Direct,
        other => return Err(format!("sweep.route: unknown route {other:?}")),
    };

    let chi = match config.switching.shape.as_str() {
        "gaussian" => SwitchingFunction::gaussian(),
        "bump" => SwitchingFunction::bump(),
        other => return Err(format!("switching.shape: unknown shape {other:?}")),
    };

    let operator = match config.kernel.operator.as_str() {
        "hermitian" => OperatorKind::HermitianScalar,
        "complex_scalar" => OperatorKind::ComplexScalar,
        other => return Err(format!("kernel.operator: unknown operator {other:?}")),
    };

    // family with parameter checks (SI acceleration converted up front)
    let (family, acceleration, geom): (KernelFamily, Option<f64>, GeometryContext) =
        match config.kernel.r#type.as_str() {
            "vacuum_inertial" => (KernelFamily::VacuumInertial, None, GeometryContext::Inertial),
            "vacuum_accelerated" => {
                let a_raw = config
                    .kernel
                    .a
                    .ok_or("kernel.a: required for vacuum_accelerated")?;
                if a_raw <= 0.0 || !a_raw.is_finite() {
                    return Err(format!("kernel.a: must be positive, got {a_raw}"));
                }
                let a = if si { si_acceleration_to_natural(a_raw) } else { a_raw };
                (
                    KernelFamily::VacuumAccelerated { a },
                    Some(a),
                    GeometryContext::Rindler { a },
                )
            }
            "thermal_inertial" => {
                if si {
                    return Err(
                        "units.system: si parameters are supported for the accelerated family only"
                            .into(),
                    );
                }
                let beta = config
                    .kernel
                    .beta
                    .ok_or("kernel.beta: required for thermal_inertial")?;
                if beta <= 0.0 || !beta.is_finite() {
                    return Err(format!("kernel.beta: must be positive, got {beta}"));
                }
                (
                    KernelFamily::ThermalInertial { beta },
                    None,
                    GeometryContext::Inertial,
                )
            }
            other => return Err(format!("kernel.type: unknown kernel {other:?}")),
        };

    let base_kernel = match family {
        KernelFamily::VacuumInertial => vacuum_kernel_inertial(),
        KernelFamily::VacuumAccelerated { a } => {
            vacuum_kernel_accelerated(a).map_err(|e| format!("kernel.a: {e}"))?
        }
        KernelFamily::ThermalInertial { beta } => {
            thermal_kernel_inertial(beta).map_err(|e| format!("kernel.beta: {e}"))?
        }
    };

    let derivative = match config.kernel.coupling.as_str() {
        "linear" => false,
        "derivative" => true,
        other => return Err(format!("kernel.coupling: unknown coupling {other:?}")),
    };

    // profile
    let profile = match config.smearing.profile.as_str() {
        "pointlike" => None,
        "gaussian" => {
            if config.smearing.sigma <= 0.0 || config.smearing.sigma.is_nan() {
                return Err(format!(
                    "smearing.sigma: must be positive for a gaussian profile, got {}",
                    config.smearing.sigma
                ));
            }
            Some(
                SmearingProfile::gaussian_at(config.smearing.sigma, config.smearing.offset)
                    .map_err(|e| format!("smearing: {e}"))?,
            )
        }
        other => return Err(format!("smearing.profile: unknown profile {other:?}")),
    };
    if derivative && profile.is_some() {
        return Err(
            "kernel.coupling: derivative coupling is available for pointlike detectors only"
                .into(),
        );
    }

    let working_kernel = if derivative {
        derivative_coupled_kernel(&base_kernel, [1.0, 0.0, 0.0, 0.0])
            .map_err(|e| format!("kernel.coupling: {e}"))?
    } else {
        base_kernel.clone()
    };

    let set = match &profile {
        None => match operator {
            OperatorKind::HermitianScalar => CorrelatorSet::hermitian(working_kernel.clone()),
            OperatorKind::ComplexScalar => CorrelatorSet::complex_scalar(working_kernel.clone())
                .map_err(|e| format!("kernel.operator: {e}"))?,
        },
        Some(p) => smeared_correlator(family, operator, p, p, &geom)
            .map_err(|e| format!("smearing: {e}"))?,
    };

    let mu = match config.detector.mu_preset.as_str() {
        "raising" => MuMatrix::raising(),
        "symmetric" => MuMatrix::symmetric(),
        "phases" => MuMatrix::with_phases(0.9, -0.4),
        other => return Err(format!("detector.mu_preset: unknown preset {other:?}")),
    };

    let mut channels = Vec::new();
    for &omega in &config.detector.omegas {
        let det = DetectorSpec::new(omega, config.detector.lambda, mu);
        let eff = effective_wightman(&det, &set).map_err(|e| format!("detector: {e}"))?;
        channels.push((det, eff));
    }

    let beta_nominal = channels[0].1.w_in.beta_nominal();
    let label = set.w_ud.label().to_string();

    Ok(Experiment {
        config: config.clone(),
        channels,
        chi,
        route,
        beta_nominal,
        acceleration,
        profile,
        label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[kernel]
type = "vacuum_accelerated"
a = 1.0

[detector]
omegas = [1.0]
lambda = 0.01

[sweep]
t_list = [5.0, 10.0]
"#;

    #[test]
    fn minimal_config_builds() {
        let cfg = parse_config(MINIMAL).unwrap();
        let exp = build_experiment(&cfg).unwrap();
        assert_eq!(exp.channels.len(), 1);
        assert!(exp.beta_nominal.unwrap() > 6.0);
    }

    #[test]
    fn round_trip_serialization_is_stable() {
        let cfg = parse_config(MINIMAL).unwrap();
        let text = toml::to_string_pretty(&cfg).unwrap();
        let back = parse_config(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn bad_acceleration_names_the_field() {
        let text = MINIMAL.replace("a = 1.0", "a = -2.0");
        let cfg = parse_config(&text).unwrap();
        let err = match build_experiment(&cfg) {
            Err(e) => e,
            Ok(_) => panic!("negative acceleration must not validate"),
        };
        assert!(err.starts_with("kernel.a"), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = format!("{MINIMAL}\n[extra]\nfoo = 1\n");
        assert!(parse_config(&text).is_err());
    }

    #[test]
    fn si_units_convert_the_acceleration() {
        let text = MINIMAL.replace("a = 1.0", "a = 1e20")
            + "\n[units]\nsystem = \"si\"\n";
        let cfg = parse_config(&text).unwrap();
        let exp = build_experiment(&cfg).unwrap();
        let a = exp.acceleration.unwrap();
        assert!((a - 1112.65).abs() < 0.01, "a_nat = {a}");
    }
}
