//! Parsing and rendering of exact rationals.
//!
//! Accepted input forms are `p/q` and decimal literals (`0.75`, `-3`, `1.`).
//! Decimal literals are converted through their decimal expansion, never
//! through binary floating point.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Ratio, Result};

/// Parse `p/q` or a decimal literal into an exact rational.
pub fn parse_ratio(s: &str) -> Result<Ratio> {
    let s = s.trim();
    let bad = || Error::BadRational(s.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut num: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().map_err(|_| bad())?
    };
    let mut den = BigInt::one();
    for c in frac_part.chars() {
        num = num * 10 + (c as u8 - b'0');
        den *= 10;
    }
    Ok(Ratio::new(num * sign, den))
}

/// Parse a comma-separated list of rationals, e.g. `1/2,1/2`.
pub fn parse_ratio_list(s: &str) -> Result<Vec<Ratio>> {
    s.split(',').map(parse_ratio).collect()
}

/// Render a rational as `p/q` (or just `p` when the denominator is 1).
pub fn exact_string(r: &Ratio) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render a rational in decimal with 12 significant digits, computed by
/// exact long division.
pub fn decimal_string(r: &Ratio) -> String {
    const SIG: usize = 12;
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();

    // decimal exponent: number of digits before the point, minus one
    let mut exp: i64 = 0;
    let mut scaled_num = num.clone();
    let mut scaled_den = den.clone();
    while scaled_num < scaled_den {
        scaled_num *= 10;
        exp -= 1;
    }
    while scaled_num >= &scaled_den * 10 {
        scaled_den *= 10;
        exp += 1;
    }
    // now 1 <= scaled_num/scaled_den < 10; extract SIG digits with rounding
    let pow = BigInt::from(10u32).pow(SIG as u32 - 1);
    let scaled = &scaled_num * &pow;
    let (mut q, rem) = (scaled.clone() / &scaled_den, scaled % &scaled_den);
    if &rem * 2 >= scaled_den {
        q += 1;
    }
    let mut digits = q.to_string();
    if digits.len() > SIG {
        // rounding overflowed (e.g. 9.99... -> 10.0...)
        digits.truncate(SIG);
        exp += 1;
    }
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };

    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if (-4..(SIG as i64)).contains(&exp) {
        if exp >= 0 {
            let point = (exp + 1) as usize;
            if digits.len() <= point {
                out.push_str(digits);
                out.push_str(&"0".repeat(point - digits.len()));
            } else {
                out.push_str(&digits[..point]);
                out.push('.');
                out.push_str(&digits[point..]);
            }
        } else {
            out.push_str("0.");
            out.push_str(&"0".repeat((-exp - 1) as usize));
            out.push_str(digits);
        }
    } else {
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push_str(&format!("e{exp}"));
    }
    out
}

/// Convenience constructor for small rationals.
pub fn ratio(n: i64, d: i64) -> Ratio {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor for integers.
pub fn int(n: i64) -> Ratio {
    Ratio::from(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_ratio("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_ratio("0.75").unwrap(), ratio(3, 4));
        assert_eq!(parse_ratio("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_ratio("1").unwrap(), int(1));
        assert_eq!(parse_ratio(".25").unwrap(), ratio(1, 4));
        assert_eq!(parse_ratio("0.5004").unwrap(), ratio(1251, 2500));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("abc").is_err());
        assert!(parse_ratio("1e3").is_err());
    }

    #[test]
    fn decimal_conversion_is_exact_not_binary() {
        // 0.1 must become exactly 1/10, not the nearest binary double
        assert_eq!(parse_ratio("0.1").unwrap(), ratio(1, 10));
    }

    #[test]
    fn renders_decimals() {
        assert_eq!(decimal_string(&ratio(1, 2)), "0.5");
        assert_eq!(decimal_string(&ratio(1, 3)), "0.333333333333");
        assert_eq!(decimal_string(&int(1_000_000)), "1000000");
        assert_eq!(decimal_string(&ratio(1001, 2000)), "0.5005");
        assert_eq!(decimal_string(&int(0)), "0");
        assert_eq!(decimal_string(&ratio(-1, 4)), "-0.25");
        assert_eq!(decimal_string(&ratio(2, 3)), "0.666666666667");
    }

    #[test]
    fn exact_rendering_round_trips() {
        for r in [ratio(3, 4), int(-7), ratio(1001, 2000)] {
            assert_eq!(parse_ratio(&exact_string(&r)).unwrap(), r);
        }
    }
}
