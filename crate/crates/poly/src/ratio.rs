//! Exact-rational helpers: float promotion, decimal rendering, root bounds.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The coefficient type used throughout: arbitrary-precision rational.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact conversion: every finite f64 is a binary rational.
pub fn f64_to_rat(x: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    Some(Rat::from_float(x).expect("finite float converts exactly"))
}

/// Nearest-f64 of a rational (round-trip through the decimal-free path).
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of truncated parts for huge operands.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Largest f64 that is <= r (conservative downward rounding).
pub fn rat_to_f64_down(r: &Rat) -> f64 {
    let x = rat_to_f64(r);
    if !x.is_finite() {
        return x;
    }
    match f64_to_rat(x) {
        Some(back) if back <= *r => x,
        _ => next_down(x),
    }
}

/// Smallest f64 that is >= r.
pub fn rat_to_f64_up(r: &Rat) -> f64 {
    let x = rat_to_f64(r);
    if !x.is_finite() {
        return x;
    }
    match f64_to_rat(x) {
        Some(back) if back >= *r => x,
        _ => next_up(x),
    }
}

fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::MIN_POSITIVE * f64::EPSILON; // smallest subnormal
    }
    let bits = x.to_bits();
    f64::from_bits(if x > 0.0 { bits + 1 } else { bits - 1 })
}

fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

/// Decimal string with `decimals` places after the point, rounded to nearest.
pub fn decimal_string(r: &Rat, decimals: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = BigInt::from(10u32).pow(decimals as u32);
    // round(a * scale)
    let scaled = &a * Rat::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let rounded = if &(rem * 2) >= scaled.denom() { q + 1 } else { q };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let mut s = String::new();
    if neg && (!int_part.is_zero() || !frac_part.is_zero()) {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if decimals > 0 {
        s.push('.');
        let frac = frac_part.to_string();
        for _ in frac.len()..decimals {
            s.push('0');
        }
        s.push_str(&frac);
    }
    s
}

/// Parses an integer or decimal literal exactly: `3.8025` -> 38025/10000.
pub fn parse_decimal(text: &str) -> Option<Rat> {
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, text),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().ok()?;
    let d = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(Rat::new(n * BigInt::from(sign), d))
}

/// A rational `u` with `u^2 >= q >= 0` and `u` within a factor `1 + 2^-30`
/// of the true square root (outward/upper rounding).
pub fn sqrt_upper(q: &Rat) -> Rat {
    assert!(!q.is_negative(), "sqrt of negative");
    if q.is_zero() {
        return Rat::zero();
    }
    // Integer sqrt of ceil(q * 4^k) gives sqrt(q) to 2^-k absolute-ish scale.
    let k = 32u32;
    let scaled = q * Rat::from_integer(BigInt::from(4u8).pow(k));
    let n = scaled.ceil().to_integer();
    let root = n.sqrt() + 1; // sqrt() floors, +1 makes it an upper bound
    Rat::new(root, BigInt::from(2u8).pow(k))
}

/// Best rational approximation to `r` with denominator <= `max_den`,
/// via the continued-fraction convergents.
pub fn limit_denominator(r: &Rat, max_den: &BigInt) -> Rat {
    if r.denom() <= max_den {
        return r.clone();
    }
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut n = r.numer().clone();
    let mut d = r.denom().clone();
    loop {
        let (a, rem) = n.div_rem(&d);
        let q2 = &q0 + &a * &q1;
        if &q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        n = std::mem::replace(&mut d, rem);
        if d.is_zero() {
            break;
        }
    }
    // q1 <= max_den always holds here; pick the better of the two candidates.
    let cand1 = Rat::new(p1.clone(), q1.clone());
    if q1.is_zero() {
        return Rat::new(p0, q0);
    }
    let k = (max_den - &q0).div_floor(&q1);
    let cand2_q = &q0 + &k * &q1;
    if cand2_q.is_zero() {
        return cand1;
    }
    let cand2 = Rat::new(&p0 + &k * &p1, cand2_q);
    if (r - &cand1).abs() <= (r - &cand2).abs() {
        cand1
    } else {
        cand2
    }
}

/// Sign of a rational as -1/0/1.
pub fn sign(r: &Rat) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_literals_exact() {
        assert_eq!(parse_decimal("3.8025").unwrap(), rat(38025, 10000));
        assert_eq!(parse_decimal("16").unwrap(), rat_int(16));
        assert_eq!(parse_decimal("-0.01").unwrap(), rat(-1, 100));
        assert_eq!(parse_decimal(".5").unwrap(), rat(1, 2));
        assert!(parse_decimal("1.2.3").is_none());
        assert!(parse_decimal("").is_none());
    }

    #[test]
    fn float_promotion_exact() {
        let x = 0.1f64;
        let r = f64_to_rat(x).unwrap();
        assert_eq!(rat_to_f64(&r), x);
        assert!(f64_to_rat(f64::NAN).is_none());
    }

    #[test]
    fn directed_rounding_brackets() {
        let r = rat(1, 3);
        let lo = rat_to_f64_down(&r);
        let hi = rat_to_f64_up(&r);
        assert!(f64_to_rat(lo).unwrap() <= r);
        assert!(f64_to_rat(hi).unwrap() >= r);
        assert!(hi - lo <= f64::EPSILON);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat(1, 2), 4), "0.5000");
        assert_eq!(decimal_string(&rat(-4167204, 10000), 4), "-416.7204");
        assert_eq!(decimal_string(&rat(2, 3), 4), "0.6667");
        assert_eq!(decimal_string(&rat_int(5), 0), "5");
    }

    #[test]
    fn sqrt_upper_is_upper() {
        for (n, d) in [(2i64, 1i64), (3025, 1), (1, 3), (7, 5)] {
            let q = rat(n, d);
            let u = sqrt_upper(&q);
            assert!(u.clone() * u.clone() >= q);
            // and not wildly loose
            let too_small = &u * rat(999_999, 1_000_000);
            assert!(too_small.clone() * too_small < q);
        }
    }

    #[test]
    fn limit_denominator_pi() {
        let pi = rat(3_141_592_653, 1_000_000_000);
        let approx = limit_denominator(&pi, &BigInt::from(1000));
        assert!(approx.denom() <= &BigInt::from(1000));
        assert!((&pi - &approx).abs() < rat(1, 100_000));
        // already-small denominators pass through
        assert_eq!(limit_denominator(&rat(1, 3), &BigInt::from(10)), rat(1, 3));
    }
}
