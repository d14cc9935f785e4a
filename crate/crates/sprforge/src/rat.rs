//! Exact rational scalars: parsing, formatting, and conversions.
//!
//! All certificate-bearing arithmetic in this crate runs on [`Rat`]
//! (arbitrary-precision rationals). Floating point appears only in search
//! heuristics and diagnostic renderings.

use num_bigint::{BigInt, Sign};
use num_traits::{Euclid, One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number, always stored in reduced form with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

/// Shorthand for a small rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses an exact rational from a string.
///
/// Accepted forms: integers (`"-3"`), fractions (`"38/3"`), and decimals
/// (`"0.25"`, `"-1.5"`). Decimals convert exactly via scaled integers.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty coefficient string".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let sign = if int_part.trim_start().starts_with('-') {
            -1
        } else {
            1
        };
        let int_digits = int_part.trim_start_matches(['+', '-']);
        let int_val: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad decimal in {s:?}")))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal in {s:?}")));
        }
        let frac_val: BigInt = frac_part
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal in {s:?}")))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let unsigned = int_val * &scale + frac_val;
        return Ok(Rat::new(BigInt::from(sign) * unsigned, scale));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?;
    Ok(Rat::from_integer(n))
}

/// Renders a rational exactly: `"38/3"`, or `"6"` when integral.
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a rational as a 17-significant-digit decimal.
pub fn rat_to_decimal_string(r: &Rat) -> String {
    format!("{:.16e}", rat_to_f64(r))
}

/// Robust rational-to-f64 conversion that survives numerators and
/// denominators far beyond the f64 exponent range (shifts both down before
/// dividing instead of letting them saturate to infinity).
pub fn rat_to_f64(r: &Rat) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let numer = r.numer();
    let denom = r.denom();
    let nb = numer.bits() as i64;
    let db = denom.bits() as i64;
    // Keep ~64 significant bits of each side.
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let n = (numer >> shift_n)
        .to_string()
        .parse::<f64>()
        .unwrap_or(f64::NAN);
    let d = (denom >> shift_d)
        .to_string()
        .parse::<f64>()
        .unwrap_or(f64::NAN);
    (n / d) * 2f64.powi((shift_n - shift_d) as i32)
}

/// Converts a finite f64 to an exact rational (dyadic expansion).
pub fn f64_to_rat(x: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(Rat::zero());
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1 } else { -1 };
    let exponent = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = if exponent == 0 {
        (bits & 0xf_ffff_ffff_ffff) << 1
    } else {
        (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000
    };
    let exp2 = exponent - 1075;
    let m = BigInt::from(sign) * BigInt::from(mantissa);
    Some(if exp2 >= 0 {
        Rat::from_integer(m << exp2 as u64)
    } else {
        Rat::new(m, BigInt::one() << (-exp2) as u64)
    })
}

/// Best rational approximation of `x` with denominator bounded by `max_den`,
/// via the continued-fraction convergents of the exact dyadic value.
pub fn rationalize(x: f64, max_den: u64) -> Rat {
    let exact = match f64_to_rat(x) {
        Some(r) => r,
        None => return Rat::zero(),
    };
    let bound = BigInt::from(max_den);
    if exact.denom() <= &bound {
        return exact;
    }
    // Continued-fraction expansion; keep the last convergent within bound.
    let mut num = exact.numer().clone();
    let mut den = exact.denom().clone();
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    loop {
        let a = num.div_euclid(&den);
        let p2 = &a * &p0 + &p1;
        let q2 = &a * &q0 + &q1;
        if q2 > bound {
            break;
        }
        let rem = &num - &a * &den;
        p1 = p0;
        q1 = q0;
        p0 = p2;
        q0 = q2;
        if rem.is_zero() {
            break;
        }
        num = den;
        den = rem;
    }
    if q0.is_zero() {
        return Rat::zero();
    }
    Rat::new(p0, q0)
}

/// Sign of a rational as -1, 0, or 1.
pub fn sign_of(r: &Rat) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Rational bracket `(lo, hi)` around the square root of a nonnegative
/// rational: `lo² ≤ r ≤ hi²` and `hi − lo ≤ tol`.
pub fn sqrt_bounds(r: &Rat, tol: &Rat) -> (Rat, Rat) {
    debug_assert!(!r.is_negative() && tol.is_positive());
    if r.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    // Seed from the float square root: g and r/g always bracket √r.
    let g = rationalize(rat_to_f64(r).sqrt(), 1 << 30);
    let (mut lo, mut hi) = if g.is_positive() {
        let other = r / &g;
        if g <= other {
            (g, other)
        } else {
            (other, g)
        }
    } else {
        (Rat::zero(), Rat::one() + r.clone())
    };
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / rat_i(2);
        if &mid * &mid <= *r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}
