//! Float helpers that work without `std`, plus [`ScaledReal`], a float with
//! a separate binary exponent for products that would otherwise underflow.

pub use core::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn asin(x: f64) -> f64 {
    libm::asin(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, n as f64)
}

/// `2^e` as a float; saturates to 0 or infinity outside the float range.
#[inline]
pub fn exp2i(e: i32) -> f64 {
    libm::ldexp(1.0, e)
}

/// A real number `mantissa * 2^exponent` with `1 <= |mantissa| < 2`, or
/// exactly zero (mantissa 0, exponent 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledReal {
    pub mantissa: f64,
    pub exponent: i32,
}

impl ScaledReal {
    pub const ZERO: Self = Self { mantissa: 0.0, exponent: 0 };
    pub const ONE: Self = Self { mantissa: 1.0, exponent: 0 };

    pub fn from_f64(x: f64) -> Self {
        Self::ONE.mul_f64(x)
    }

    /// Multiplies by `x` and renormalizes.
    pub fn mul_f64(self, x: f64) -> Self {
        if self.mantissa == 0.0 || x == 0.0 {
            return Self::ZERO;
        }
        let (m, e) = libm::frexp(self.mantissa * x);
        Self { mantissa: 2.0 * m, exponent: self.exponent + e - 1 }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        let p = self.mul_f64(other.mantissa);
        if p.mantissa == 0.0 {
            return p;
        }
        Self { mantissa: p.mantissa, exponent: p.exponent + other.exponent }
    }

    pub fn recip(self) -> Self {
        if self.mantissa == 0.0 {
            return Self { mantissa: f64::INFINITY, exponent: 0 };
        }
        Self { mantissa: 1.0, exponent: -self.exponent }.mul_f64(1.0 / self.mantissa)
    }

    pub fn is_zero(self) -> bool {
        self.mantissa == 0.0
    }

    /// `ln |value|`; `-inf` for zero.
    pub fn ln_abs(self) -> f64 {
        if self.mantissa == 0.0 {
            return f64::NEG_INFINITY;
        }
        ln(abs(self.mantissa)) + self.exponent as f64 * core::f64::consts::LN_2
    }

    /// Collapses to a plain float (may under/overflow).
    pub fn to_f64(self) -> f64 {
        libm::ldexp(self.mantissa, self.exponent)
    }

    /// `self / other` as a plain float.
    pub fn ratio_to_f64(self, other: Self) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        libm::ldexp(self.mantissa / other.mantissa, self.exponent - other.exponent)
    }

    /// `|self| / |other|` as a plain float.
    pub fn abs_ratio(self, other: Self) -> f64 {
        libm::ldexp(abs(self.mantissa) / abs(other.mantissa), self.exponent - other.exponent)
    }
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`. Stops once the
/// bracket is narrower than `rel_tol * (hi - lo)`. Returns `(x, f(x))` for the
/// best point evaluated, endpoints included.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, rel_tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let width = hi - lo;
    let (mut a, mut b) = (lo, hi);
    let mut best = (lo, f(lo));
    let fh = f(hi);
    if fh > best.1 {
        best = (hi, fh);
    }
    if width.is_nan() || width <= 0.0 {
        return best;
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    // The bracket shrinks by INV_PHI per step; the cap also ends the loop
    // when the tolerance is below float resolution near `a` and `b`.
    let max_steps = (ln(rel_tol.max(f64::EPSILON)) / ln(INV_PHI)) as usize + 2;
    let mut steps = 0;
    while b - a > rel_tol * width && steps < max_steps {
        steps += 1;
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    for (x, v) in [(c, fc), (d, fd)] {
        if v > best.1 || (v == best.1 && x < best.0) {
            best = (x, v);
        }
    }
    best
}
