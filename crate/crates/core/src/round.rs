//! Directed rounding primitives.
//!
//! All enclosure guarantees in this crate reduce to the correctness of the
//! functions in this module. Directed rounding is emulated on top of
//! round-to-nearest arithmetic: for `+`, `-`, `*`, `/` and `sqrt` the exact
//! residual is recovered (2Sum / FMA / IEEE-exact square root), so the
//! directed results are correctly rounded; for the transcendental functions
//! the nearest result is stepped outward by two representable values, which
//! covers libm implementations with errors below two ulps.

use num_traits::Float;
use std::fmt::{Debug, Display};

/// Floating-point scalar with directed-rounding support.
///
/// Implemented for `f32` and `f64`. Everything generic in this crate is
/// written against this trait; the rounding policy lives here and nowhere
/// else.
pub trait RoundedFloat:
    Float + Debug + Display + Default + Send + Sync + 'static
{
    /// Next representable value towards +∞.
    fn next_up(self) -> Self;
    /// Next representable value towards −∞.
    fn next_down(self) -> Self;

    /// Largest double below or equal to π.
    fn pi_lo() -> Self;
    /// Smallest double above or equal to π.
    fn pi_hi() -> Self;

    /// Nearest-float conversion of an `f64` constant.
    fn from_f64_nearest(c: f64) -> Self;
    /// True if the `f64` value converts without rounding.
    fn from_f64_is_exact(c: f64) -> bool;

    fn to_f64_lossy(self) -> f64;

    /// Exact-residual guard for `a + b`: returns the error `a + b - fl(a+b)`.
    ///
    /// 2Sum; exact for all finite inputs.
    fn two_sum_err(a: Self, b: Self, s: Self) -> Self {
        let bp = s - a;
        let ap = s - bp;
        (a - ap) + (b - bp)
    }

    fn add_down(a: Self, b: Self) -> Self {
        let s = a + b;
        if !s.is_finite() {
            return if s == Self::infinity() { Self::max_value() } else { s };
        }
        if Self::two_sum_err(a, b, s) < Self::zero() {
            s.next_down()
        } else {
            s
        }
    }

    fn add_up(a: Self, b: Self) -> Self {
        let s = a + b;
        if !s.is_finite() {
            return if s == Self::neg_infinity() { -Self::max_value() } else { s };
        }
        if Self::two_sum_err(a, b, s) > Self::zero() {
            s.next_up()
        } else {
            s
        }
    }

    fn sub_down(a: Self, b: Self) -> Self {
        Self::add_down(a, -b)
    }

    fn sub_up(a: Self, b: Self) -> Self {
        Self::add_up(a, -b)
    }

    fn mul_down(a: Self, b: Self) -> Self {
        let p = a * b;
        if !p.is_finite() {
            return if p == Self::infinity() { Self::max_value() } else { p };
        }
        let err = a.mul_add(b, -p);
        if err < Self::zero() {
            p.next_down()
        } else if err == Self::zero() && p == Self::zero() {
            // Underflow can hide a nonzero exact product; step outward when
            // the exact product is negative.
            if (a > Self::zero() && b < Self::zero()) || (a < Self::zero() && b > Self::zero()) {
                p.next_down()
            } else {
                p
            }
        } else {
            p
        }
    }

    fn mul_up(a: Self, b: Self) -> Self {
        let p = a * b;
        if !p.is_finite() {
            return if p == Self::neg_infinity() { -Self::max_value() } else { p };
        }
        let err = a.mul_add(b, -p);
        if err > Self::zero() {
            p.next_up()
        } else if err == Self::zero() && p == Self::zero() {
            if (a > Self::zero() && b > Self::zero()) || (a < Self::zero() && b < Self::zero()) {
                p.next_up()
            } else {
                p
            }
        } else {
            p
        }
    }

    fn div_down(a: Self, b: Self) -> Self {
        let q = a / b;
        if !q.is_finite() {
            return if q == Self::infinity() { Self::max_value() } else { q };
        }
        // residual r = a - q*b; exact quotient is q + r/b
        let r = q.mul_add(-b, a);
        if r == Self::zero() {
            q
        } else if (r > Self::zero()) == (b > Self::zero()) {
            q
        } else {
            q.next_down()
        }
    }

    fn div_up(a: Self, b: Self) -> Self {
        let q = a / b;
        if !q.is_finite() {
            return if q == Self::neg_infinity() { -Self::max_value() } else { q };
        }
        let r = q.mul_add(-b, a);
        if r == Self::zero() {
            q
        } else if (r > Self::zero()) == (b > Self::zero()) {
            q.next_up()
        } else {
            q
        }
    }

    fn sqrt_down(a: Self) -> Self {
        let s = a.sqrt();
        // IEEE sqrt is correctly rounded; the FMA residual decides the side.
        if s.mul_add(s, -a) > Self::zero() {
            s.next_down()
        } else {
            s
        }
    }

    fn sqrt_up(a: Self) -> Self {
        let s = a.sqrt();
        if s.mul_add(s, -a) < Self::zero() {
            s.next_up()
        } else {
            s
        }
    }

    /// Two outward steps around a faithfully-rounded libm result.
    fn libm_down(y: Self) -> Self {
        y.next_down().next_down()
    }

    fn libm_up(y: Self) -> Self {
        y.next_up().next_up()
    }
}

impl RoundedFloat for f64 {
    fn next_up(self) -> Self {
        f64::next_up(self)
    }

    fn next_down(self) -> Self {
        f64::next_down(self)
    }

    fn pi_lo() -> Self {
        // f64 π rounds down, so the stored constant is the lower bound.
        std::f64::consts::PI
    }

    fn pi_hi() -> Self {
        f64::next_up(std::f64::consts::PI)
    }

    fn from_f64_nearest(c: f64) -> Self {
        c
    }

    fn from_f64_is_exact(_c: f64) -> bool {
        true
    }

    fn to_f64_lossy(self) -> f64 {
        self
    }
}

impl RoundedFloat for f32 {
    fn next_up(self) -> Self {
        f32::next_up(self)
    }

    fn next_down(self) -> Self {
        f32::next_down(self)
    }

    fn pi_lo() -> Self {
        // f32 π rounds up, so step the stored constant down.
        f32::next_down(std::f32::consts::PI)
    }

    fn pi_hi() -> Self {
        std::f32::consts::PI
    }

    fn from_f64_nearest(c: f64) -> Self {
        c as f32
    }

    fn from_f64_is_exact(c: f64) -> bool {
        (c as f32) as f64 == c
    }

    fn to_f64_lossy(self) -> f64 {
        self as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_ops_are_not_stepped() {
        assert_eq!(f64::add_down(0.25, 0.5), 0.75);
        assert_eq!(f64::add_up(0.25, 0.5), 0.75);
        assert_eq!(f64::mul_down(1.5, 2.0), 3.0);
        assert_eq!(f64::mul_up(1.5, 2.0), 3.0);
        assert_eq!(f64::div_down(1.0, 4.0), 0.25);
        assert_eq!(f64::div_up(1.0, 4.0), 0.25);
        assert_eq!(f64::sqrt_down(4.0), 2.0);
        assert_eq!(f64::sqrt_up(4.0), 2.0);
    }

    #[test]
    fn inexact_ops_bracket_the_exact_value() {
        // 0.1 + 0.2 is inexact in binary
        let lo = f64::add_down(0.1, 0.2);
        let hi = f64::add_up(0.1, 0.2);
        assert!(lo < hi);
        assert!(lo < 0.3000000000000001 && hi > 0.29999999999999993);
        assert_eq!(hi, lo.next_up());

        let lo = f64::div_down(1.0, 3.0);
        let hi = f64::div_up(1.0, 3.0);
        assert!(lo * 3.0 <= 1.0 && hi * 3.0 >= 1.0);
        assert_eq!(hi, lo.next_up());

        let lo = f64::sqrt_down(2.0);
        let hi = f64::sqrt_up(2.0);
        assert!(lo * lo < 2.0 && hi * hi > 2.0);
    }

    #[test]
    fn directed_ops_bracket_random_cases() {
        // deterministic LCG so the test needs no RNG dependency here
        let mut state: u64 = 0x9E3779B97F4A7C15;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let v = ((state >> 11) as f64 / (1u64 << 53) as f64 - 0.5) * 2e3;
            v
        };
        for _ in 0..20_000 {
            let a = next();
            let b = next();
            assert!(f64::add_down(a, b) <= a + b && a + b <= f64::add_up(a, b));
            assert!(f64::mul_down(a, b) <= a * b && a * b <= f64::mul_up(a, b));
            if b != 0.0 {
                assert!(f64::div_down(a, b) <= a / b && a / b <= f64::div_up(a, b));
            }
            // cross-check against higher-precision reference via two-step residual
            let s = a + b;
            let err = f64::two_sum_err(a, b, s);
            if err > 0.0 {
                assert!(f64::add_up(a, b) > s - s.abs() * 1e-18);
                assert_eq!(f64::add_up(a, b), s.next_up());
                assert_eq!(f64::add_down(a, b), s);
            } else if err < 0.0 {
                assert_eq!(f64::add_down(a, b), s.next_down());
                assert_eq!(f64::add_up(a, b), s);
            }
        }
    }

    #[test]
    fn f32_pi_brackets() {
        assert!((f32::pi_lo() as f64) < std::f64::consts::PI);
        assert!((f32::pi_hi() as f64) > std::f64::consts::PI);
        assert!((f64::pi_lo() as f64) < std::f64::consts::PI + 1e-15);
        assert!(f64::pi_hi() > f64::pi_lo());
    }
}
