//! Outward-rounded interval arithmetic with elementary functions.

use crate::round::RoundedFloat;
use crate::ArithError;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A closed real interval `[lo, hi]` with outward-rounded endpoints.
///
/// The empty set has the single canonical representation `lo = +∞, hi = −∞`;
/// every operation short-circuits on it. All arithmetic results enclose the
/// exact real-set result.
#[derive(Copy, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interval<F> {
    pub lo: F,
    pub hi: F,
}

pub type Iv64 = Interval<f64>;

impl<F: RoundedFloat> Interval<F> {
    pub const fn new_unchecked(lo: F, hi: F) -> Self {
        Interval { lo, hi }
    }

    pub fn new(lo: F, hi: F) -> Self {
        if lo <= hi {
            Interval { lo, hi }
        } else {
            Self::empty()
        }
    }

    pub fn empty() -> Self {
        Interval { lo: F::infinity(), hi: F::neg_infinity() }
    }

    pub fn point(v: F) -> Self {
        Interval { lo: v, hi: v }
    }

    pub fn from_f64(lo: f64, hi: f64) -> Self {
        let l = if F::from_f64_is_exact(lo) {
            F::from_f64_nearest(lo)
        } else {
            F::from_f64_nearest(lo).next_down()
        };
        let h = if F::from_f64_is_exact(hi) {
            F::from_f64_nearest(hi)
        } else {
            F::from_f64_nearest(hi).next_up()
        };
        Self::new(l, h)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Midpoint, clamped into the interval. Not defined on the empty set.
    pub fn center(&self) -> F {
        debug_assert!(!self.is_empty());
        let two = F::one() + F::one();
        let c = (self.lo + self.hi) / two;
        if c.is_finite() {
            c.max(self.lo).min(self.hi)
        } else {
            // endpoint sum overflowed
            self.lo / two + self.hi / two
        }
    }

    /// Upper bound on the distance from `center()` to the farthest endpoint.
    pub fn radius_up(&self) -> F {
        let c = self.center();
        F::sub_up(self.hi, c).max(F::sub_up(c, self.lo))
    }

    /// Lower bound on the distance from `center()` to the nearest endpoint.
    pub fn radius_down(&self) -> F {
        let c = self.center();
        F::sub_down(self.hi, c).min(F::sub_down(c, self.lo)).max(F::zero())
    }

    pub fn width_up(&self) -> F {
        if self.is_empty() {
            F::zero()
        } else {
            F::sub_up(self.hi, self.lo)
        }
    }

    /// Largest absolute value contained (magnitude).
    pub fn mag(&self) -> F {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value contained (mignitude).
    pub fn mig(&self) -> F {
        if self.lo <= F::zero() && F::zero() <= self.hi {
            F::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    /// Interval of absolute values: `{|x| : x ∈ self}`.
    pub fn abs_hull(&self) -> Self {
        if self.is_empty() {
            return *self;
        }
        Interval { lo: self.mig(), hi: self.mag() }
    }

    pub fn contains(&self, v: F) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(F::zero())
    }

    pub fn subset_of(&self, other: &Self) -> bool {
        self.is_empty() || (other.lo <= self.lo && self.hi <= other.hi)
    }

    pub fn hull(&self, other: &Self) -> Self {
        // the canonical empty endpoints are the identity of min/max
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// Widen both endpoints outward by one representable step.
    pub fn widen_1ulp(&self) -> Self {
        if self.is_empty() {
            return *self;
        }
        Interval { lo: self.lo.next_down(), hi: self.hi.next_up() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_empty() || rhs.is_empty() {
            return Self::empty();
        }
        Interval { lo: F::add_down(self.lo, rhs.lo), hi: F::add_up(self.hi, rhs.hi) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        if self.is_empty() || rhs.is_empty() {
            return Self::empty();
        }
        Interval { lo: F::sub_down(self.lo, rhs.hi), hi: F::sub_up(self.hi, rhs.lo) }
    }

    pub fn neg(&self) -> Self {
        if self.is_empty() {
            return *self;
        }
        Interval { lo: -self.hi, hi: -self.lo }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_empty() || rhs.is_empty() {
            return Self::empty();
        }
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let lo = F::mul_down(a, c)
            .min(F::mul_down(a, d))
            .min(F::mul_down(b, c))
            .min(F::mul_down(b, d));
        let hi = F::mul_up(a, c)
            .max(F::mul_up(a, d))
            .max(F::mul_up(b, c))
            .max(F::mul_up(b, d));
        Interval { lo, hi }
    }

    pub fn scale(&self, k: F) -> Self {
        if self.is_empty() {
            return *self;
        }
        if k >= F::zero() {
            Interval { lo: F::mul_down(self.lo, k), hi: F::mul_up(self.hi, k) }
        } else {
            Interval { lo: F::mul_down(self.hi, k), hi: F::mul_up(self.lo, k) }
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, ArithError> {
        if self.is_empty() || rhs.is_empty() {
            return Ok(Self::empty());
        }
        if rhs.contains_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let lo = F::div_down(a, c)
            .min(F::div_down(a, d))
            .min(F::div_down(b, c))
            .min(F::div_down(b, d));
        let hi = F::div_up(a, c)
            .max(F::div_up(a, d))
            .max(F::div_up(b, c))
            .max(F::div_up(b, d));
        Ok(Interval { lo, hi })
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        Interval::point(F::one()).div(self)
    }

    /// Tight square: image is a subset of `[0, ∞)`.
    pub fn sqr(&self) -> Self {
        if self.is_empty() {
            return *self;
        }
        let m = self.mig();
        let big = self.mag();
        Interval { lo: F::mul_down(m, m), hi: F::mul_up(big, big) }
    }

    /// Integer power with even-power tightening.
    pub fn powi(&self, n: i32) -> Result<Self, ArithError> {
        if self.is_empty() {
            return Ok(*self);
        }
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        match n {
            0 => Ok(Interval::point(F::one())),
            1 => Ok(*self),
            _ => {
                if n % 2 == 0 {
                    let m = self.mig();
                    let big = self.mag();
                    Ok(Interval { lo: pow_nonneg_down(m, n), hi: pow_nonneg_up(big, n) })
                } else {
                    Ok(Interval { lo: pow_signed_down(self.lo, n), hi: pow_signed_up(self.hi, n) })
                }
            }
        }
    }

    pub fn sqrt(&self) -> Result<Self, ArithError> {
        if self.is_empty() {
            return Ok(*self);
        }
        if self.lo < F::zero() {
            return Err(ArithError::Domain("sqrt of interval containing negatives"));
        }
        Ok(Interval { lo: F::sqrt_down(self.lo), hi: F::sqrt_up(self.hi) })
    }

    pub fn exp(&self) -> Self {
        if self.is_empty() {
            return *self;
        }
        Interval { lo: F::libm_down(self.lo.exp()).max(F::zero()), hi: F::libm_up(self.hi.exp()) }
    }

    pub fn ln(&self) -> Result<Self, ArithError> {
        if self.is_empty() {
            return Ok(*self);
        }
        if self.lo <= F::zero() {
            return Err(ArithError::Domain("log of interval containing non-positives"));
        }
        Ok(Interval { lo: F::libm_down(self.lo.ln()), hi: F::libm_up(self.hi.ln()) })
    }

    pub fn sin(&self) -> Self {
        if self.is_empty() {
            return *self;
        }
        trig_enclose(self, false)
    }

    pub fn cos(&self) -> Self {
        if self.is_empty() {
            return *self;
        }
        trig_enclose(self, true)
    }
}

fn pow_nonneg_down<F: RoundedFloat>(x: F, n: i32) -> F {
    let mut acc = x;
    for _ in 1..n {
        acc = F::mul_down(acc, x);
    }
    acc
}

fn pow_nonneg_up<F: RoundedFloat>(x: F, n: i32) -> F {
    let mut acc = x;
    for _ in 1..n {
        acc = F::mul_up(acc, x);
    }
    acc
}

fn pow_signed_down<F: RoundedFloat>(x: F, n: i32) -> F {
    // odd n: sign of result follows sign of x
    if x >= F::zero() {
        pow_nonneg_down(x, n)
    } else {
        -pow_nonneg_up(-x, n)
    }
}

fn pow_signed_up<F: RoundedFloat>(x: F, n: i32) -> F {
    if x >= F::zero() {
        pow_nonneg_up(x, n)
    } else {
        -pow_nonneg_down(-x, n)
    }
}

/// Quadrant decomposition for sin/cos: locate candidate extremum abscissae
/// `m·π/2` conservatively and hull them with the endpoint values.
fn trig_enclose<F: RoundedFloat>(x: &Interval<F>, is_cos: bool) -> Interval<F> {
    let one = F::one();
    let two = one + one;
    let half_pi_lo = F::pi_lo() / two; // scaling by 0.5 is exact
    let half_pi_hi = F::pi_hi() / two;
    let four_f = two + two;

    // width >= 2π covers a full period
    if F::sub_down(x.hi, x.lo) >= F::mul_up(half_pi_hi, four_f).min(F::mul_down(F::pi_lo(), two)) {
        return Interval { lo: -one, hi: one };
    }

    let f_end = |v: F| -> Interval<F> {
        let y = if is_cos { v.cos() } else { v.sin() };
        Interval { lo: F::libm_down(y).max(-one), hi: F::libm_up(y).min(one) }
    };
    let mut out = f_end(x.lo).hull(&f_end(x.hi));

    // candidate multiples of π/2 inside [lo, hi], with one index of slack
    let m_lo = (x.lo / half_pi_hi).floor();
    let m_hi = (x.hi / half_pi_lo).ceil();
    let (Some(mut m), Some(m_end)) = (m_lo.to_i64(), m_hi.to_i64()) else {
        return Interval { lo: -one, hi: one };
    };
    m -= 1;
    let m_end = m_end + 1;
    if m_end - m > 16 {
        return Interval { lo: -one, hi: one };
    }
    while m <= m_end {
        // sin extrema at odd multiples of π/2, cos extrema at even multiples
        let is_extremum = if is_cos { m % 2 == 0 } else { m % 2 != 0 };
        if is_extremum {
            let mf = F::from_f64_nearest(m as f64); // small integers are exact
            let p = if mf >= F::zero() {
                Interval { lo: F::mul_down(mf, half_pi_lo), hi: F::mul_up(mf, half_pi_hi) }
            } else {
                Interval { lo: F::mul_down(mf, half_pi_hi), hi: F::mul_up(mf, half_pi_lo) }
            };
            if p.hi >= x.lo && p.lo <= x.hi {
                // which extremum: sin(π/2 + 2kπ)=+1 ; cos(2kπ)=+1
                let positive = if is_cos { m.rem_euclid(4) == 0 } else { m.rem_euclid(4) == 1 };
                let v = if positive { one } else { -one };
                out = out.hull(&Interval::point(v));
            }
        }
        m += 1;
    }
    out
}

impl<F: RoundedFloat> fmt::Display for Interval<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "[empty]")
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

impl<F: RoundedFloat> fmt::Debug for Interval<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An axis-aligned box: one interval per input dimension.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalBox<F> {
    pub components: Vec<Interval<F>>,
}

pub type Box64 = IntervalBox<f64>;

impl<F: RoundedFloat> IntervalBox<F> {
    pub fn new(components: Vec<Interval<F>>) -> Self {
        IntervalBox { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.iter().any(|c| c.is_empty())
    }

    pub fn center(&self) -> Vec<F> {
        self.components.iter().map(|c| c.center()).collect()
    }

    pub fn radius_up(&self) -> Vec<F> {
        self.components.iter().map(|c| c.radius_up()).collect()
    }

    pub fn radius_down(&self) -> Vec<F> {
        self.components.iter().map(|c| c.radius_down()).collect()
    }

    pub fn contains(&self, p: &[F]) -> bool {
        p.len() == self.dim() && self.components.iter().zip(p).all(|(c, v)| c.contains(*v))
    }

    pub fn subset_of(&self, other: &Self) -> bool {
        self.is_empty()
            || self.components.iter().zip(&other.components).all(|(a, b)| a.subset_of(b))
    }

    pub fn hull(&self, other: &Self) -> Self {
        IntervalBox {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.hull(b))
                .collect(),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        IntervalBox {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.intersect(b))
                .collect(),
        }
    }
}

impl<F: RoundedFloat> fmt::Display for IntervalBox<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl<F: RoundedFloat> fmt::Debug for IntervalBox<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Iv64 {
        Interval::new(lo, hi)
    }

    #[test]
    fn endpoint_addition() {
        let r = iv(1.0, 2.0).add(&iv(-1.0, 1.0));
        assert_eq!(r, iv(0.0, 3.0));
    }

    #[test]
    fn product_of_mixed_signs() {
        let r = iv(-2.0, 3.0).mul(&iv(-1.0, 2.0));
        assert_eq!(r, iv(-4.0, 6.0));
    }

    #[test]
    fn natural_extension _of_square_minus_x() {
        let x = iv(2.0, 3.0);
        let r = x.mul(&x).sub(&x);
        assert_eq!(r, iv(1.0, 7.0));
    }

    #[test]
    fn even_power() {
        assert_eq!(iv(-2.0, 1.0).powi(2).unwrap(), iv(0.0, 4.0));
        assert_eq!(iv(-2.0, 1.0).sqr(), iv(0.0, 4.0));
        assert_eq!(iv(-2.0, -1.0).powi(3).unwrap(), iv(-8.0, -1.0));
    }

    #[test]
    fn sin_on_first_quadrant() {
        let r = iv(0.0, std::f64::consts::FRAC_PI_2).sin();
        assert!(r.lo <= 0.0 && r.lo >= -1e-12);
        assert!(r.hi >= 1.0 - 1e-12 && r.hi <= 1.0);
        let r2 = iv(0.0, 2.0).sin();
        assert!(r2.hi == 1.0); // π/2 inside
        let r3 = iv(0.0, 7.0).sin();
        assert_eq!(r3, iv(-1.0, 1.0));
        let c = iv(-0.5, 0.5).cos();
        assert!(c.hi == 1.0 && c.lo >= 0.8 && c.lo <= (0.5f64).cos());
    }

    #[test]
    fn exp_monotone_with_directed_rounding() {
        let r = iv(0.0, 1.0).exp();
        let e = std::f64::consts::E;
        assert!(r.lo <= 1.0 && r.lo >= 1.0 - 1e-14);
        assert!(r.hi >= e && r.hi <= e + 1e-14);
        // upper endpoint within two steps of the nearest double to e
        assert!(r.hi <= e.next_up().next_up());
    }

    #[test]
    fn division_by_zero_interval_is_an_error() {
        assert!(iv(1.0, 2.0).div(&iv(-1.0, 1.0)).is_err());
        assert_eq!(iv(1.0, 2.0).div(&iv(2.0, 4.0)).unwrap(), iv(0.25, 1.0));
    }

    #[test]
    fn sqrt_log_domain() {
        assert!(iv(-1.0, 1.0).sqrt().is_err());
        assert!(iv(0.0, 1.0).ln().is_err());
        assert_eq!(iv(0.0, 4.0).sqrt().unwrap(), iv(0.0, 2.0));
    }

    #[test]
    fn center_radius_hull_intersect() {
        let b = IntervalBox::new(vec![iv(2.0, 3.0), iv(0.0, 1.0)]);
        assert_eq!(b.center(), vec![2.5, 0.5]);
        assert_eq!(b.radius_up(), vec![0.5, 0.5]);
        assert_eq!(iv(0.0, 2.0).intersect(&iv(1.0, 3.0)), iv(1.0, 2.0));
        assert!(iv(0.0, 1.0).intersect(&iv(2.0, 3.0)).is_empty());
        assert_eq!(iv(0.0, 1.0).hull(&iv(2.0, 3.0)), iv(0.0, 3.0));
    }

    #[test]
    fn empty_propagates_and_is_canonical() {
        let e = Iv64::empty();
        assert!(e.is_empty());
        assert!(e.add(&iv(1.0, 2.0)).is_empty());
        assert!(iv(1.0, 2.0).mul(&e).is_empty());
        assert_eq!(e.add(&iv(1.0, 2.0)), Iv64::empty());
        assert!(e.subset_of(&iv(0.0, 0.0)));
        assert_eq!(format!("{e}"), "[empty]");
    }

    #[test]
    fn display_round_trips() {
        let x = iv(0.1, 0.30000000000000004);
        let s = format!("{x}");
        assert_eq!(s, "[0.1,0.30000000000000004]");
    }

    #[test]
    fn f32_instantiation_encloses() {
        let a = Interval::<f32>::from_f64(0.1, 0.2);
        assert!((a.lo as f64) < 0.1 && (a.hi as f64) > 0.2);
        let r = a.mul(&a);
        assert!(r.lo <= 0.1f32 * 0.1f32 && r.hi >= 0.2f32 * 0.2f32);
    }
}
