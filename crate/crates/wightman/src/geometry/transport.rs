//! Fermi–Walker frame transport.
//!
//! Solves De_I/dτ + (a^μ u_ν − u^μ a_ν) e_I^ν = 0 with an adaptive embedded
//! Runge–Kutta pair (Cash–Karp 4(5)). No re-orthonormalization is applied:
//! the inner-product drift is the integrator quality signal and is reported
//! per sample. The state is carried in double-double precision because at
//! rapidity ~10 the f64 representation alone already costs ~1e-8 of apparent
//! drift, swamping the integrator contribution we want to measure.

use super::curve::CurveData;
use super::{minkowski_dot, FourVector, GeometryError, ETA};
use crate::dd::Dd;

/// Fermi–Walker transported tetrad sampled on the curve's grid.
#[derive(Clone, Debug)]
pub struct Frame {
    taus: Vec<f64>,
    tetrads: Vec<[FourVector; 4]>,
    drift: Vec<f64>,
}

impl Frame {
    /// Proper-time samples.
    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    /// Tetrad e_I^μ at each sample; outer index is the frame label I.
    pub fn tetrads(&self) -> &[[FourVector; 4]] {
        &self.tetrads
    }

    /// max_{I,J} |g(e_I, e_J) − η_IJ| per sample, evaluated in extended
    /// precision on the integrator state before rounding to f64.
    pub fn drift(&self) -> &[f64] {
        &self.drift
    }

    /// Worst orthonormality drift over the whole grid.
    pub fn max_drift(&self) -> f64 {
        self.drift.iter().cloned().fold(0.0, f64::max)
    }
}

/// Tolerance for the adaptive step controller.
const STEP_TOL: f64 = 1e-13;
/// Default acceptance threshold for the initial tetrad.
const INIT_TOL: f64 = 1e-9;

type State = [[Dd; 4]; 4]; // state[I][mu]

/// RHS matrix M^μ_ν = u^μ a_ν − a^μ u_ν (so that de_I/dτ = M e_I).
///
/// The lowered form is assembled antisymmetrically entry by entry; this keeps
/// the computed matrix exactly g-antisymmetric in floating point, so rounding
/// in u and a perturbs the transport within the isometry group instead of
/// leaking orthonormality.
fn fw_matrix(u: &FourVector, a: &FourVector) -> [[f64; 4]; 4] {
    let mut lower = [[0.0f64; 4]; 4]; // M_{μν}
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            let u_mu = ETA[mu] * u[mu];
            let a_nu = ETA[nu] * a[nu];
            let a_mu = ETA[mu] * a[mu];
            let u_nu = ETA[nu] * u[nu];
            let v = u_mu * a_nu - a_mu * u_nu;
            lower[mu][nu] = v;
            lower[nu][mu] = -v;
        }
    }
    let mut m = [[0.0f64; 4]; 4]; // M^μ_ν = η^{μμ} M_{μν}
    for mu in 0..4 {
        for nu in 0..4 {
            m[mu][nu] = ETA[mu] * lower[mu][nu];
        }
    }
    m
}

fn apply(m: &[[f64; 4]; 4], e: &[Dd; 4]) -> [Dd; 4] {
    let mut out = [Dd::ZERO; 4];
    for (mu, o) in out.iter_mut().enumerate() {
        let mut acc = Dd::ZERO;
        for nu in 0..4 {
            acc = acc.scale_add(m[mu][nu], e[nu]);
        }
        *o = acc;
    }
    out
}

fn rhs(curve: &CurveData, tau: f64, state: &State) -> State {
    let u = curve.velocity_at(tau);
    let a = curve.acceleration_at(tau);
    let m = fw_matrix(&u, &a);
    let mut out = [[Dd::ZERO; 4]; 4];
    for i in 0..4 {
        out[i] = apply(&m, &state[i]);
    }
    out
}

#[allow(clippy::needless_range_loop)]
fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (c, k) in terms {
        let hc = h * c;
        for i in 0..4 {
            for mu in 0..4 {
                out[i][mu] = out[i][mu].scale_add(hc, k[i][mu]);
            }
        }
    }
    out
}

/// Inner products of the extended-precision state against η.
fn gram_defect(state: &State) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in i..4 {
            let mut dot = Dd::ZERO;
            for (mu, (a, b)) in state[i].iter().zip(state[j].iter()).enumerate() {
                let prod = a.mul(*b);
                dot = if mu == 0 { dot.sub(prod) } else { dot.add(prod) };
            }
            let target = if i == j { ETA[i] } else { 0.0 };
            worst = worst.max((dot.to_f64() - target).abs());
        }
    }
    worst
}

// Cash–Karp 4(5) tableau.
const CK_C: [f64; 6] = [0.0, 0.2, 0.3, 0.6, 1.0, 0.875];
const CK_A: [[f64; 5]; 5] = [
    [0.2, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0],
    [0.3, -0.9, 1.2, 0.0, 0.0],
    [-11.0 / 54.0, 2.5, -70.0 / 27.0, 35.0 / 27.0, 0.0],
    [
        1631.0 / 55296.0,
        175.0 / 512.0,
        575.0 / 13824.0,
        44275.0 / 110592.0,
        253.0 / 4096.0,
    ],
];
const CK_B5: [f64; 6] = [
    37.0 / 378.0,
    0.0,
    250.0 / 621.0,
    125.0 / 594.0,
    0.0,
    512.0 / 1771.0,
];
const CK_B4: [f64; 6] = [
    2825.0 / 27648.0,
    0.0,
    18575.0 / 48384.0,
    13525.0 / 55296.0,
    277.0 / 14336.0,
    0.25,
];

fn ck_step(curve: &CurveData, tau: f64, h: f64, y: &State) -> (State, f64) {
    let k1 = rhs(curve, tau, y);
    let y2 = axpy(y, h, &[(CK_A[0][0], &k1)]);
    let k2 = rhs(curve, tau + CK_C[1] * h, &y2);
    let y3 = axpy(y, h, &[(CK_A[1][0], &k1), (CK_A[1][1], &k2)]);
    let k3 = rhs(curve, tau + CK_C[2] * h, &y3);
    let y4 = axpy(y, h, &[(CK_A[2][0], &k1), (CK_A[2][1], &k2), (CK_A[2][2], &k3)]);
    let k4 = rhs(curve, tau + CK_C[3] * h, &y4);
    let y5 = axpy(
        y,
        h,
        &[
            (CK_A[3][0], &k1),
            (CK_A[3][1], &k2),
            (CK_A[3][2], &k3),
            (CK_A[3][3], &k4),
        ],
    );
    let k5 = rhs(curve, tau + CK_C[4] * h, &y5);
    let y6 = axpy(
        y,
        h,
        &[
            (CK_A[4][0], &k1),
            (CK_A[4][1], &k2),
            (CK_A[4][2], &k3),
            (CK_A[4][3], &k4),
            (CK_A[4][4], &k5),
        ],
    );
    let k6 = rhs(curve, tau + CK_C[5] * h, &y6);

    let ks = [&k1, &k2, &k3, &k4, &k5, &k6];
    let mut out = *y;
    let mut err: f64 = 0.0;
    for i in 0..4 {
        for mu in 0..4 {
            let mut acc5 = Dd::ZERO;
            let mut acc4 = 0.0f64;
            for (b5, (b4, k)) in CK_B5.iter().zip(CK_B4.iter().zip(ks.iter())) {
                acc5 = acc5.scale_add(*b5, k[i][mu]);
                acc4 += b4 * k[i][mu].to_f64();
            }
            out[i][mu] = out[i][mu].scale_add(h, acc5);
            let scale = 1.0 + out[i][mu].hi.abs();
            err = err.max((h * (acc5.to_f64() - acc4)).abs() / scale);
        }
    }
    (out, err)
}

/// Fermi–Walker transport of `initial` (given at the first grid point) along
/// the curve, sampled on the curve's own proper-time grid.
///
/// `initial[I]` are the tetrad legs e_I^μ; they must be orthonormal with
/// e_0 = u(τ₀). Orthonormality is *not* re-imposed during integration.
pub fn fermi_walker_transport(
    curve: &CurveData,
    initial: &[FourVector; 4],
) -> Result<Frame, GeometryError> {
    // precondition checks
    for i in 0..4 {
        for j in i..4 {
            let dot = minkowski_dot(&initial[i], &initial[j]);
            let target = if i == j { ETA[i] } else { 0.0 };
            if (dot - target).abs() > INIT_TOL {
                return Err(GeometryError::NonOrthonormalTetrad {
                    i,
                    j,
                    defect: (dot - target).abs(),
                });
            }
        }
    }
    let u0 = curve.velocity_at(curve.taus()[0]);
    let mut comove_defect: f64 = 0.0;
    for mu in 0..4 {
        comove_defect = comove_defect.max((initial[0][mu] - u0[mu]).abs());
    }
    if comove_defect > INIT_TOL {
        return Err(GeometryError::TetradNotComoving(comove_defect));
    }

    let mut state: State = [[Dd::ZERO; 4]; 4];
    for i in 0..4 {
        for mu in 0..4 {
            state[i][mu] = Dd::from_f64(initial[i][mu]);
        }
    }

    let taus = curve.taus().to_vec();
    let mut tetrads = Vec::with_capacity(taus.len());
    let mut drift = Vec::with_capacity(taus.len());

    let record = |state: &State, tetrads: &mut Vec<[FourVector; 4]>, drift: &mut Vec<f64>| {
        let mut t = [[0.0f64; 4]; 4];
        for i in 0..4 {
            for mu in 0..4 {
                t[i][mu] = state[i][mu].to_f64();
            }
        }
        tetrads.push(t);
        drift.push(gram_defect(state));
    };

    record(&state, &mut tetrads, &mut drift);

    let mut h = (taus[1] - taus[0]).min(1e-2);
    for w in taus.windows(2) {
        let (start, end) = (w[0], w[1]);
        let mut tau = start;
        while tau < end {
            let step = h.min(end - tau);
            let (candidate, err) = ck_step(curve, tau, step, &state);
            if err <= STEP_TOL || step < 1e-12 {
                state = candidate;
                tau += step;
                let grow = 0.9 * (STEP_TOL / err.max(1e-300)).powf(0.2);
                h = (step * grow.clamp(0.2, 5.0)).min(0.25);
            } else {
                let shrink = 0.9 * (STEP_TOL / err).powf(0.25);
                h = step * shrink.clamp(0.1, 0.9);
            }
        }
        record(&state, &mut tetrads, &mut drift);
    }

    let frame = Frame { taus, tetrads, drift };
    let worst = frame.max_drift();
    if worst > 1e-8 {
        let k = frame
            .drift
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(k, _)| k)
            .unwrap_or(0);
        return Err(GeometryError::TransportTolerance {
            tau: frame.taus[k],
            drift: worst,
        });
    }
    Ok(frame)
}

#[cfg(test)]
mod tests {
    use super::super::curve::tau_grid;
    use super::*;

    fn identity_tetrad() -> [FourVector; 4] {
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    }

    #[test]
    fn inertial_transport_is_constant() {
        let curve =
            CurveData::inertial([0.0; 4], [1.0, 0.0, 0.0, 0.0], tau_grid(0.0, 5.0, 21)).unwrap();
        let frame = fermi_walker_transport(&curve, &identity_tetrad()).unwrap();
        for t in frame.tetrads() {
            for (i, leg) in t.iter().enumerate() {
                for (mu, &c) in leg.iter().enumerate() {
                    let want = if i == mu { 1.0 } else { 0.0 };
                    assert!((c - want).abs() < 1e-13);
                }
            }
        }
        assert!(frame.max_drift() < 1e-14);
    }

    #[test]
    fn uniform_acceleration_matches_boost_solution() {
        let a = 1.0;
        let curve = CurveData::uniform_acceleration(a, tau_grid(0.0, 3.0, 31)).unwrap();
        let frame = fermi_walker_transport(&curve, &identity_tetrad()).unwrap();
        for (&tau, t) in frame.taus().iter().zip(frame.tetrads()) {
            let (s, c) = ((a * tau).sinh(), (a * tau).cosh());
            // e_0 = (cosh, sinh, 0, 0), e_1 = (sinh, cosh, 0, 0)
            assert!((t[0][0] - c).abs() < 1e-9 * c, "e0^t at tau={tau}");
            assert!((t[0][1] - s).abs() < 1e-9 * c);
            assert!((t[1][0] - s).abs() < 1e-9 * c);
            assert!((t[1][1] - c).abs() < 1e-9 * c);
            assert!(t[2][2] == 1.0 && t[3][3] == 1.0);
        }
    }

    #[test]
    fn drift_stays_below_budget_at_rapidity_ten() {
        let curve = CurveData::uniform_acceleration(1.0, tau_grid(0.0, 10.0, 41)).unwrap();
        let frame = fermi_walker_transport(&curve, &identity_tetrad()).unwrap();
        assert!(
            frame.max_drift() < 1e-9,
            "drift {} exceeds 1e-9",
            frame.max_drift()
        );
        // inner products are tracked at every sample, not just the endpoint
        assert_eq!(frame.drift().len(), frame.taus().len());
        assert!(frame.drift().iter().all(|d| *d < 1e-9));
    }

    #[test]
    fn rejects_non_orthonormal_initial_tetrad() {
        let curve = CurveData::uniform_acceleration(1.0, tau_grid(0.0, 1.0, 11)).unwrap();
        let mut bad = identity_tetrad();
        bad[1][1] = 1.5;
        let r = fermi_walker_transport(&curve, &bad);
        assert!(matches!(r, Err(GeometryError::NonOrthonormalTetrad { .. })));
    }

    #[test]
    fn rejects_tetrad_not_aligned_with_velocity() {
        let curve = CurveData::uniform_acceleration(1.0, tau_grid(1.0, 2.0, 11)).unwrap();
        // identity tetrad is orthonormal but e_0 != u(tau0) away from tau = 0
        let r = fermi_walker_transport(&curve, &identity_tetrad());
        assert!(matches!(r, Err(GeometryError::TetradNotComoving(_))));
    }
}
