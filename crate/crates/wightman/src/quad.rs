//! Quadrature building blocks: adaptive Gauss–Kronrod panels for complex
//! integrands, Richardson extrapolation ladders for the iε regulator, and
//! Gauss–Legendre / Gauss–Hermite node generation for smearing integrals.

use num_complex::Complex64;
use std::collections::BinaryHeap;

/// G7–K15 Kronrod abscissae (QUADPACK values).
#[allow(clippy::excessive_precision)]
const XGK15: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// Embedded 7-point Gauss weights.
#[allow(clippy::excessive_precision)]
const WG7: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// 15-point Kronrod weights.
#[allow(clippy::excessive_precision)]
const WGK15: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// One G7-K15 pass over `[a, b]`: returns (kronrod value, |K15 - G7| error
/// estimate, integral of |f|).
pub fn gk15<F>(f: &F, a: f64, b: f64) -> (Complex64, f64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);

    let mut kronrod = fc * WGK15[7];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut resabs = fc.norm() * WGK15[7];

    for j in 0..7 {
        let x = half * XGK15[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        let fsum = f1 + f2;
        kronrod += fsum * WGK15[j];
        resabs += (f1.norm() + f2.norm()) * WGK15[j];
        if j % 2 == 1 {
            // odd Kronrod indices are the embedded Gauss nodes
            gauss += fsum * WG7[j / 2];
        }
    }
    gauss += fc * WG7[3];

    let err = (kronrod - gauss).norm() * half.abs();
    (kronrod * half, err, resabs * half.abs())
}

/// Diagnostics returned alongside each adaptive integral.
#[derive(Clone, Copy, Debug, Default)]
pub struct QuadDiagnostics {
    /// Accumulated error estimate.
    pub abs_error: f64,
    /// Integral of |f| (cancellation indicator).
    pub resabs: f64,
    /// Number of integrand panels evaluated.
    pub panels: usize,
}

#[derive(Debug)]
struct Panel {
    err: f64,
    a: f64,
    b: f64,
    val: Complex64,
    resabs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// Adaptive Gauss–Kronrod over an explicit panel decomposition.
///
/// Panels are refined worst-first until the summed error estimate drops below
/// `max(abs_tol, rel_tol * |integral|)` or the panel budget is exhausted.
pub fn adaptive_gk<F>(
    f: &F,
    edges: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> (Complex64, QuadDiagnostics)
where
    F: Fn(f64) -> Complex64,
{
    let mut heap = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    let mut total_abs = 0.0;
    let mut panels = 0usize;

    for w in edges.windows(2) {
        let (v, e, ra) = gk15(f, w[0], w[1]);
        total += v;
        total_err += e;
        total_abs += ra;
        panels += 1;
        heap.push(Panel {
            err: e,
            a: w[0],
            b: w[1],
            val: v,
            resabs: ra,
        });
    }

    while total_err > abs_tol.max(rel_tol * total.norm()) && panels < max_panels {
        let Some(worst) = heap.pop() else { break };
        if worst.err <= 0.0 || worst.b - worst.a < 1e-300 {
            heap.push(worst);
            break;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1, r1) = gk15(f, worst.a, mid);
        let (v2, e2, r2) = gk15(f, mid, worst.b);
        total += v1 + v2 - worst.val;
        total_err += e1 + e2 - worst.err;
        total_abs += r1 + r2 - worst.resabs;
        panels += 1;
        heap.push(Panel {
            err: e1,
            a: worst.a,
            b: mid,
            val: v1,
            resabs: r1,
        });
        heap.push(Panel {
            err: e2,
            a: mid,
            b: worst.b,
            val: v2,
            resabs: r2,
        });
    }

    (
        total,
        QuadDiagnostics {
            abs_error: total_err,
            resabs: total_abs,
            panels,
        },
    )
}

/// Uniform panel edges of width at most `width` spanning `[a, b]`.
pub fn panel_edges(a: f64, b: f64, width: f64) -> Vec<f64> {
    let n = ((b - a) / width).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    (0..=n).map(|k| a + h * k as f64).collect()
}

/// Three-point geometric Richardson ladder eliminating the O(ε) and O(ε²)
/// terms of `f(ε)`; evaluations at ε, ε/2, ε/4.
///
/// Returns the extrapolated value and a residual estimate (distance between
/// the two highest-order extrapolants).
pub fn richardson3<F>(mut f: F, eps: f64) -> (Complex64, f64)
where
    F: FnMut(f64) -> Complex64,
{
    let f1 = f(eps);
    let f2 = f(eps / 2.0);
    let f4 = f(eps / 4.0);
    // first-order eliminations
    let r12 = 2.0 * f2 - f1;
    let r24 = 2.0 * f4 - f2;
    // second-order elimination
    let out = (4.0 * r24 - r12) / 3.0;
    let resid = (out - r24).norm();
    (out, resid)
}

/// Legendre P_n(x) and its derivative by upward recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let pp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, pp)
}

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2);
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th root (descending order)
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 1.0;
        for _ in 0..100 {
            let (p, dp) = legendre_pair(n, z);
            pp = dp;
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * pp * pp);
        xs[i] = -z;
        xs[n - 1 - i] = z;
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    xs.into_iter().zip(ws).collect()
}

/// Orthonormal Hermite h_n(x), h_{n-1}(x) (weight e^{-x²}).
fn hermite_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p1 = std::f64::consts::PI.powf(-0.25);
    let mut p2 = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = x * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
    }
    (p1, p2)
}

/// Gauss–Hermite nodes/weights for ∫ f(x) e^{-x²} dx.
pub fn gauss_hermite(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2);
    let m = n.div_ceil(2);
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    let mut z = 0.0f64;
    for i in 0..m {
        z = match i {
            0 => {
                ((2 * n + 1) as f64).sqrt() - 1.85575 * ((2 * n + 1) as f64).powf(-1.0 / 6.0)
            }
            1 => z - 1.14 * (n as f64).powf(0.426) / z,
            2 => 1.86 * z - 0.86 * xs[0],
            3 => 1.91 * z - 0.91 * xs[1],
            _ => 2.0 * z - xs[i - 2],
        };
        let mut pp = 1.0;
        for _ in 0..200 {
            let (p1, p2) = hermite_pair(n, z);
            pp = (2.0 * n as f64).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        xs[i] = z;
        xs[n - 1 - i] = -z;
        let w = 2.0 / (pp * pp);
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    let mut out: Vec<(f64, f64)> = xs.into_iter().zip(ws).collect();
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn kronrod_rule_integrates_high_degree_polynomials() {
        // K15 is exact to degree 22; a wrong tabulated digit would show here.
        for k in [0usize, 3, 8, 13, 18, 22] {
            let (v, _, _) = gk15(&|x: f64| Complex64::new(x.powi(k as i32), 0.0), -1.0, 1.0);
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!(
                (v.re - exact).abs() < 1e-14,
                "degree {k}: got {} want {exact}",
                v.re
            );
        }
    }

    #[test]
    fn adaptive_handles_oscillation() {
        let f = |x: f64| Complex64::new((40.0 * x).cos() * (-x * x).exp(), 0.0);
        let edges = panel_edges(-8.0, 8.0, 0.5);
        let (v, diag) = adaptive_gk(&f, &edges, 1e-13, 0.0, 4000);
        // closed form: sqrt(pi) e^{-400}·? -> ∫cos(bx)e^{-x²} = √π e^{-b²/4}
        let exact = PI.sqrt() * (-400.0f64).exp();
        assert!(diag.abs_error < 1e-10);
        assert!((v.re - exact).abs() < 1e-12);
    }

    #[test]
    fn richardson_removes_linear_and_quadratic_terms() {
        let f = |e: f64| Complex64::new(3.0 + 2.0 * e + 5.0 * e * e + e * e * e, 0.0);
        let (v, resid) = richardson3(f, 0.1);
        assert!((v.re - 3.0).abs() < 2e-3);
        assert!(resid < 2e-2);
    }

    #[test]
    fn legendre_nodes_integrate_polynomials() {
        let rule = gauss_legendre(16);
        assert_eq!(rule.len(), 16);
        // exact to degree 31
        let s: f64 = rule.iter().map(|&(x, w)| w * x.powi(20)).sum();
        assert!((s - 2.0 / 21.0).abs() < 1e-14, "got {s}");
        let total: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn hermite_nodes_integrate_gaussian_moments() {
        let rule = gauss_hermite(24);
        assert_eq!(rule.len(), 24);
        let s0: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert!((s0 - PI.sqrt()).abs() < 1e-12, "weight sum {s0}");
        let s2: f64 = rule.iter().map(|&(x, w)| w * x * x).sum();
        assert!((s2 - 0.5 * PI.sqrt()).abs() < 1e-12, "second moment {s2}");
        let s8: f64 = rule.iter().map(|&(x, w)| w * x.powi(8)).sum();
        // ∫x^8 e^{-x²} = 105/16 √π
        assert!((s8 - 105.0 / 16.0 * PI.sqrt()).abs() < 1e-10, "got {s8}");
    }
}
