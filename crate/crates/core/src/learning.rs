//! Position-based learning effect.
//!
//! `psi(alpha, p, r) = floor(100 * p * r^(-alpha) + 1/2)` is the scaled
//! processing time of an operation with standard time `p` scheduled at
//! position `r` of its machine. The factor 100 bakes the scaling into the
//! integer result, so `psi(alpha, p, 1) == 100 * p` exactly.
//!
//! The result must be bit-stable across platforms even though `exp`/`ln` are
//! not. The fast path evaluates in plain f64; whenever the value lands near
//! an integer boundary the call is re-decided by an exact integer route (for
//! the dyadic-rational alphas where `r^(-alpha)` is rational) or by
//! double-double arithmetic built only from correctly-rounded IEEE ops.

use crate::ScaledTime;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LearningRateError {
    #[error("learning rate must be finite, got {0}")]
    NotFinite(f64),
    #[error("learning rate must be nonnegative, got {0}")]
    Negative(f64),
}

/// Validated nonnegative learning exponent.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct LearningRate(f64);

impl LearningRate {
    pub const ZERO: LearningRate = LearningRate(0.0);

    pub fn new(alpha: f64) -> Result<Self, LearningRateError> {
        if !alpha.is_finite() {
            return Err(LearningRateError::NotFinite(alpha));
        }
        if alpha < 0.0 {
            return Err(LearningRateError::Negative(alpha));
        }
        Ok(LearningRate(alpha))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for LearningRate {
    type Error = LearningRateError;
    fn try_from(v: f64) -> Result<Self, Self::Error> {
        LearningRate::new(v)
    }
}

impl From<LearningRate> for f64 {
    fn from(a: LearningRate) -> f64 {
        a.0
    }
}

impl std::fmt::Display for LearningRate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Scaled processing time at machine position `r` (1-based).
///
/// Nonincreasing in `r` and in `alpha`; `psi(alpha, p, 1) == 100 * p`.
///
/// Panics if `p < 1` or `r < 1`.
pub fn psi(alpha: LearningRate, p: u32, r: u32) -> ScaledTime {
    assert!(p >= 1, "standard processing time must be >= 1");
    assert!(r >= 1, "machine position must be >= 1");
    let a = alpha.value();
    if a == 0.0 || r == 1 {
        return 100 * p as ScaledTime;
    }
    let y = 100.0 * p as f64 * (-a * (r as f64).ln()).exp() + 0.5;
    let fl = y.floor();
    let frac = y - fl;
    // fast-path error is a few ulp; near an integer we cannot trust the floor
    let band = 1e-6_f64.max(y * 1e-12);
    if frac > band && 1.0 - frac > band {
        return fl as ScaledTime;
    }
    psi_slow(a, p, r)
}

fn psi_slow(a: f64, p: u32, r: u32) -> ScaledTime {
    if let Some(v) = psi_rational(a, p, r) {
        return v;
    }
    // r^(-a) is irrational, so the true value is never exactly on a boundary
    // and ~30 significant digits decide it
    let ln_r = dd_ln_u32(r);
    let v = dd_exp(ln_r.mul(Dd::from(-a)));
    let y = v.mul(Dd::from(100.0 * p as f64)).add(Dd::from(0.5));
    let mut f = y.hi.floor();
    let rem = y.add(Dd::from(-f));
    if rem.hi < 0.0 {
        f -= 1.0;
    } else if rem.hi >= 1.0 {
        f += 1.0;
    }
    f as ScaledTime
}

/// Exact integer evaluation when `r^(-a)` is rational for the dyadic value
/// of `a`, i.e. `a = num / 2^k` and `r` is a perfect `2^k`-th power.
fn psi_rational(a: f64, p: u32, r: u32) -> Option<ScaledTime> {
    let (num, k) = dyadic(a)?;
    let root: u128 = if k == 0 {
        r as u128
    } else {
        if k > 5 {
            // r <= u32::MAX < 2^(2^5), so no r >= 2 is a perfect 2^k-th power
            return None;
        }
        iroot_exact(r as u128, 1u32 << k)?
    };
    // psi = floor(100p / root^num + 1/2) = (200p + t) div 2t with t = root^num
    let cap = 200 * p as u128;
    let mut t: u128 = 1;
    for _ in 0..num {
        t = t.saturating_mul(root);
        if t > cap {
            return Some(0);
        }
    }
    Some(((200 * p as u128 + t) / (2 * t)) as ScaledTime)
}

/// Decomposes a positive finite double as `num / 2^k` with `num` odd.
/// Returns None when the integer part alone already exceeds any useful
/// exponent (the caller treats those via the power cap instead).
fn dyadic(a: f64) -> Option<(u64, u32)> {
    debug_assert!(a.is_finite() && a > 0.0);
    if a >= 64.0 {
        // any integer exponent >= 64 with base >= 2 blows past the cap;
        // report it as the capped integer 64 if a is integral
        if a.fract() == 0.0 {
            return Some((64, 0));
        }
        return None;
    }
    let bits = a.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = if exp == 0 {
        bits & 0xf_ffff_ffff_ffff
    } else {
        (bits & 0xf_ffff_ffff_ffff) | (1 << 52)
    };
    let e2 = if exp == 0 { -1074i64 } else { exp - 1075 };
    // a = mantissa * 2^e2
    let tz = mantissa.trailing_zeros() as i64;
    let m = mantissa >> tz;
    let e = e2 + tz;
    if e >= 0 {
        Some((m << e, 0))
    } else {
        Some((m, (-e) as u32))
    }
}

fn iroot_exact(n: u128, e: u32) -> Option<u128> {
    if n <= 1 {
        return Some(n);
    }
    let (mut lo, mut hi) = (1u128, n);
    while lo <= hi {
        let mid = lo + (hi - lo) / 2;
        match mid.checked_pow(e) {
            Some(v) if v == n => return Some(mid),
            Some(v) if v < n => lo = mid + 1,
            _ => hi = mid - 1,
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
// Only +, -, *, / and mul_add are used, all correctly rounded per IEEE-754,
// so results are identical on every conforming platform.

#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let err = b - (s - a);
    Dd { hi: s, lo: err }
}

fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    let err = a.mul_add(b, -p);
    Dd { hi: p, lo: err }
}

impl Dd {
    fn add(self, other: Dd) -> Dd {
        let s = two_sum(self.hi, other.hi);
        let lo = s.lo + self.lo + other.lo;
        quick_two_sum(s.hi, lo)
    }

    fn mul(self, other: Dd) -> Dd {
        let p = two_prod(self.hi, other.hi);
        let lo = p.lo + self.hi * other.lo + self.lo * other.hi;
        quick_two_sum(p.hi, lo)
    }

    fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.add(other.mul(Dd::from(-q1)));
        let q2 = r.hi / other.hi;
        let r2 = r.add(other.mul(Dd::from(-q2)));
        let q3 = r2.hi / other.hi;
        quick_two_sum(q1, q2).add(Dd::from(q3))
    }

    fn scale_pow2(self, k: i32) -> Dd {
        let f = pow2(k);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }
}

fn pow2(k: i32) -> f64 {
    // |k| stays small here; keep it exact via bit construction
    debug_assert!((-1000..=1000).contains(&k));
    f64::from_bits(((1023 + k) as u64) << 52)
}

const LN2: Dd = Dd {
    hi: 0.6931471805599453,
    lo: 2.3190468138462996e-17,
};

/// exp(a) in double-double via range reduction and a Taylor series.
fn dd_exp(a: Dd) -> Dd {
    if a.hi < -709.0 {
        return Dd::from(0.0);
    }
    if a.hi > 709.0 {
        return Dd::from(f64::INFINITY);
    }
    let k = (a.hi / LN2.hi).round();
    let r = a.add(LN2.mul(Dd::from(-k)));
    // |r| <= ln2/2; 26 terms push the truncation error below 1e-33
    let mut term = Dd::from(1.0);
    let mut sum = Dd::from(1.0);
    for i in 1..=26 {
        term = term.mul(r).div(Dd::from(i as f64));
        sum = sum.add(term);
    }
    sum.scale_pow2(k as i32)
}

/// ln(r) in double-double for integer input, by one Newton step on dd_exp
/// starting from the f64 logarithm.
fn dd_ln_u32(r: u32) -> Dd {
    let x = Dd::from(r as f64);
    let y0 = (r as f64).ln();
    // y1 = y0 + x * exp(-y0) - 1
    let corr = x.mul(dd_exp(Dd::from(-y0))).add(Dd::from(-1.0));
    Dd::from(y0).add(corr)
}
