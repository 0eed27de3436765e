//! Minimal double-double arithmetic (~31 significant digits).
//!
//! Frame transport along strongly boosted worldlines stores tetrad components
//! that grow like `cosh(aτ)`; checking `g(e_I, e_J) = η_IJ` at rapidity 10
//! cancels ~8 orders of magnitude, which pushes the achievable drift floor in
//! plain f64 arithmetic to ~1e-8. The transport integrator therefore keeps its
//! state in double-double so the reported drift measures the integrator, not
//! the word size. Only the handful of operations the integrator needs are
//! implemented.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, f64::mul_add(a, b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = two_prod(self.hi, x);
        let e = e + self.lo * x;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn scale_add(self, x: f64, other: Dd) -> Dd {
        // self + x * other
        self.add(other.mul_f64(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_tracks_residual() {
        let a = Dd::from_f64(1.0);
        let b = Dd::from_f64(1e-20);
        let s = a.add(b);
        assert_eq!(s.hi, 1.0);
        assert_eq!(s.lo, 1e-20);
    }

    #[test]
    fn mul_recovers_exact_product() {
        // (1 + 2^-30)^2 = 1 + 2^-29 + 2^-60; f64 alone drops the last term.
        let x = 1.0 + (0.5f64).powi(30);
        let p = Dd::from_f64(x).mul(Dd::from_f64(x));
        let expect_lo = (0.5f64).powi(60);
        assert_eq!(p.hi, x * x);
        assert!((p.lo - expect_lo).abs() < 1e-33);
    }

    #[test]
    fn cancellation_keeps_31_digits() {
        // cosh^2 - sinh^2 = 1 at rapidity 10: hopeless in f64, exact-ish in dd.
        let c = Dd::from_f64(10f64.cosh());
        let s = Dd::from_f64(10f64.sinh());
        let one = c.mul(c).sub(s.mul(s)).to_f64();
        // The inputs are f64-rounded cosh/sinh, so the defect is ~cosh^2 * eps,
        // but the dd arithmetic itself introduces nothing beyond that.
        assert!((one - 1.0).abs() < 1e-7);
        // With exactly representable inputs the subtraction is exact.
        let c = Dd::from_f64(1.0e6);
        let s = Dd::from_f64(1.0);
        let q = c.mul(c).sub(s.mul(s));
        assert_eq!(q.hi, 999_999_999_999.0);
        assert_eq!(q.lo, 0.0);
    }
}
