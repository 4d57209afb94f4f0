//! Certified floors of the irrational expressions appearing in the bound
//! functions.
//!
//! Everything is interval arithmetic over exact rationals: a quantity is
//! bracketed between two `BigRational` endpoints, the bracket is tightened
//! by raising the working precision, and a floor is reported only once the
//! bracket contains no integer. A misrounded floor would silently corrupt
//! every downstream bound, so no floating point is involved.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Digits of pi, enough for any precision escalation this crate performs.
const PI_DIGITS: &str = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651328230664709384460955058223172535940812848111745028410270193852110555964462294895493038196";

#[derive(Debug, Clone)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn exact(v: BigRational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn from_int(v: i64) -> Self {
        Interval::exact(BigRational::from_integer(BigInt::from(v)))
    }

    /// Bracket of pi with `digits` digits after the point.
    pub fn pi(digits: usize) -> Self {
        let digits = digits.min(180);
        let text = &PI_DIGITS[..2 + digits];
        let mantissa: String = text.chars().filter(|c| *c != '.').collect();
        let denom = BigInt::from(10u32).pow(digits as u32);
        let lo = BigRational::new(mantissa.parse::<BigInt>().unwrap(), denom.clone());
        let hi = &lo + BigRational::new(BigInt::one(), denom);
        Interval { lo, hi }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// Product, assuming both intervals are nonnegative.
    pub fn mul_nonneg(&self, other: &Interval) -> Interval {
        debug_assert!(!self.lo.is_negative() && !other.lo.is_negative());
        Interval {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }

    /// Quotient, assuming self nonnegative and other strictly positive.
    pub fn div_pos(&self, other: &Interval) -> Interval {
        debug_assert!(other.lo.is_positive());
        Interval {
            lo: &self.lo / &other.hi,
            hi: &self.hi / &other.lo,
        }
    }

    /// Square root bracket with denominator 2^bits.
    pub fn sqrt(&self, bits: u32) -> Interval {
        Interval {
            lo: sqrt_lower(&self.lo, bits),
            hi: sqrt_upper(&self.hi, bits),
        }
    }

    /// Base-2 logarithm bracket with `bits` fractional bits; requires a
    /// positive interval.
    pub fn log2(&self, bits: u32) -> Interval {
        Interval {
            lo: log2_lower(&self.lo, bits),
            hi: log2_upper(&self.hi, bits),
        }
    }

    /// The unique integer floor if the bracket pins one down.
    pub fn certain_floor(&self) -> Option<BigInt> {
        let f_lo = self.lo.floor().to_integer();
        let f_hi = self.hi.floor().to_integer();
        if f_lo == f_hi {
            Some(f_lo)
        } else {
            None
        }
    }
}

/// Largest x with x^2 <= v, as a rational with denominator 2^bits.
fn sqrt_lower(v: &BigRational, bits: u32) -> BigRational {
    if v.is_negative() {
        return BigRational::zero();
    }
    let scale = BigInt::one() << bits;
    // integer sqrt of floor(v * 4^bits)
    let scaled = (v * BigRational::from_integer(&scale * &scale)).floor().to_integer();
    BigRational::new(scaled.sqrt(), scale)
}

fn sqrt_upper(v: &BigRational, bits: u32) -> BigRational {
    if v.is_negative() {
        return BigRational::zero();
    }
    let scale = BigInt::one() << bits;
    let scaled = (v * BigRational::from_integer(&scale * &scale)).ceil().to_integer();
    let root = scaled.sqrt();
    let root = if &root * &root < scaled { root + 1 } else { root };
    BigRational::new(root, scale)
}

/// Floor of log2 for a rational > 0.
fn ilog2(v: &BigRational) -> i64 {
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let mut e: i64 = 0;
    let mut x = v.clone();
    while x >= two {
        x /= &two;
        e += 1;
    }
    while x < one {
        x *= &two;
        e -= 1;
    }
    e
}

/// Lower bound on log2(v) with `bits` fractional bits.
fn log2_lower(v: &BigRational, bits: u32) -> BigRational {
    log2_bracket(v, bits).lo
}

fn log2_upper(v: &BigRational, bits: u32) -> BigRational {
    log2_bracket(v, bits).hi
}

/// Bracket of log2(v) by binary digit extraction: repeatedly square a
/// fixed-point interval around the mantissa and read off whether the square
/// passed 2. When the interval straddles 2 the extraction stops and the
/// remaining digit mass widens the bracket; callers escalate `bits` until
/// the bracket is tight enough. The bracket always contains the true value.
fn log2_bracket(v: &BigRational, bits: u32) -> Interval {
    assert!(v.is_positive(), "log2 needs a positive argument");
    let e = ilog2(v);
    let two = BigRational::from_integer(BigInt::from(2));
    let mut x = v.clone();
    let mut k = e;
    while k > 0 {
        x /= &two;
        k -= 1;
    }
    while k < 0 {
        x *= &two;
        k += 1;
    }
    // x in [1, 2); fixed-point interval with guard bits
    let guard = bits + 16;
    let scale = BigInt::one() << guard;
    let scale_rat = BigRational::from_integer(scale.clone());
    let mut lo = (&x * &scale_rat).floor().to_integer();
    let mut hi = (&x * &scale_rat).ceil().to_integer();
    let two_fixed: BigInt = &scale << 1;
    let mut frac = BigRational::zero();
    let mut weight = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut exhausted_cleanly = true;
    for _ in 0..bits {
        // square both endpoints with outward rounding back to guard bits
        lo = (&lo * &lo) / &scale;
        hi = (&hi * &hi + (&scale - 1)) / &scale;
        if lo >= two_fixed {
            lo >>= 1;
            hi = (&hi + 1) >> 1;
            frac += &weight;
        } else if hi <= two_fixed {
            // digit 0, no renormalization
        } else {
            // cannot decide this digit at the current precision
            exhausted_cleanly = false;
            break;
        }
        weight /= &two;
    }
    let base = BigRational::from_integer(BigInt::from(e));
    let slack = if exhausted_cleanly {
        weight * &two
    } else {
        weight * BigRational::from_integer(BigInt::from(4))
    };
    Interval {
        lo: &base + &frac,
        hi: base + frac + slack,
    }
}

/// pi mantissa with the given digit count: (floor(pi * 10^digits), 10^digits).
fn pi_mantissa(digits: usize) -> (BigInt, BigInt) {
    use std::sync::OnceLock;
    static CACHE: OnceLock<Vec<(BigInt, BigInt)>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        [30usize, 60, 120, 180]
            .iter()
            .map(|&d| {
                let text = &PI_DIGITS[..2 + d];
                let mantissa: String = text.chars().filter(|c| *c != '.').collect();
                (
                    mantissa.parse::<BigInt>().unwrap(),
                    BigInt::from(10u32).pow(d as u32),
                )
            })
            .collect()
    });
    let idx = match digits {
        0..=30 => 0,
        31..=60 => 1,
        61..=120 => 2,
        _ => 3,
    };
    cache[idx].clone()
}

/// Certified floor of `s * sqrt(2 / (pi * x))` for positive integers s, x:
/// the floor term of the generator-number bounds. Exact integer answer with
/// pure integer arithmetic.
pub fn floor_bs_over_sqrt(s: u64, x: u64) -> BigInt {
    // m <= s*sqrt(2/(pi x)) iff m^2 * pi * x <= 2 s^2, and equality is
    // impossible for m > 0 since pi is irrational
    let est = (s as f64) * (2.0 / (std::f64::consts::PI * x as f64)).sqrt();
    let mut m = BigInt::from(est.floor().max(0.0) as u64);
    let two_s2 = BigInt::from(2) * BigInt::from(s) * BigInt::from(s);
    let mut digits = 30usize;
    loop {
        let (pi_lo, scale) = pi_mantissa(digits);
        let pi_hi = &pi_lo + 1;
        let target = &two_s2 * &scale;
        // Some(true): cand <= value, Some(false): cand > value
        let check = |cand: &BigInt| -> Option<bool> {
            let sq = cand * cand * BigInt::from(x);
            if &sq * &pi_hi <= target {
                Some(true)
            } else if &sq * &pi_lo > target {
                Some(false)
            } else {
                None
            }
        };
        match (check(&m), check(&(&m + 1))) {
            (Some(true), Some(false)) => return m,
            (Some(false), _) => {
                m -= 1;
                continue;
            }
            (Some(true), Some(true)) => {
                m += 1;
                continue;
            }
            _ => {
                digits += 30;
                assert!(digits <= 180, "precision escalation ran away");
            }
        }
    }
}

/// Certified floor of `b * s / sqrt(log2(arg))` where b = sqrt(2/pi), for
/// integer s >= 1 and rational arg > 1.
pub fn floor_bs_over_sqrt_log2(s: u64, arg: &BigRational) -> BigInt {
    let mut bits = 32u32;
    loop {
        let pi = Interval::pi((bits / 3) as usize + 10);
        let log = Interval {
            lo: log2_lower(arg, bits),
            hi: log2_upper(arg, bits),
        };
        assert!(log.lo.is_positive(), "argument must exceed 1");
        let two = Interval::from_int(2);
        let s_int = Interval::exact(BigRational::from_integer(BigInt::from(s)));
        let inner = two.div_pos(&pi.mul_nonneg(&log));
        let value = s_int.mul_nonneg(&inner.sqrt(bits));
        if let Some(f) = value.certain_floor() {
            return f;
        }
        bits *= 2;
        assert!(bits <= 4096, "precision escalation ran away");
    }
}

/// Certified floor of `c * log2(n)` for positive integers c, n.
pub fn floor_c_log2(c: u64, n: u64) -> BigInt {
    assert!(n >= 1);
    if n == 1 {
        return BigInt::zero();
    }
    if n.is_power_of_two() {
        return BigInt::from(c) * BigInt::from(n.trailing_zeros());
    }
    let arg = BigRational::from_integer(BigInt::from(n));
    let mut bits = 32u32;
    loop {
        let log = Interval {
            lo: log2_lower(&arg, bits),
            hi: log2_upper(&arg, bits),
        };
        let c_int = Interval::exact(BigRational::from_integer(BigInt::from(c)));
        let value = c_int.mul_nonneg(&log);
        if let Some(f) = value.certain_floor() {
            return f;
        }
        bits *= 2;
        assert!(bits <= 4096, "precision escalation ran away");
    }
}
