//! Conversions between rationals, decimal strings, and floats.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::scalar::Rat;

/// Format a rational in lowest terms: `"3/2"`, `"-1"`, `"0"`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"p/q"`, `"p"`, or a decimal string like `"-1.25e-3"` exactly.
pub fn rat_parse(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if joined.is_empty() { BigInt::zero() } else { joined.parse().ok()? };
    if neg {
        numer = -numer;
    }
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    Some(if shift >= 0 {
        Rat::from_integer(numer * ten.pow(shift as u32))
    } else {
        Rat::new(numer, ten.pow((-shift) as u32))
    })
}

/// Exact rational from a float via its shortest round-trip decimal form,
/// so `0.4_f64` becomes `2/5` rather than the binary expansion.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    parse_decimal(&format!("{x}"))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Best rational approximation by continued fractions, bounded denominator.
/// Returns `None` when no convergent with denominator ≤ `max_den` lands
/// within `tol` of `x`.
pub fn rationalize(x: f64, max_den: u64, tol: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::from(x.floor() as i64), BigInt::one());
    let mut frac = x - x.floor();
    let bound = BigInt::from(max_den);
    for _ in 0..64 {
        let cand = Rat::new(p1.clone(), q1.clone());
        if (rat_to_f64(&cand) - x).abs() <= tol {
            return Some(cand);
        }
        if frac.abs() < 1e-18 {
            break;
        }
        let recip = 1.0 / frac;
        let a = recip.floor();
        if !a.is_finite() || a.abs() > 1e17 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > bound {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        frac = recip - a;
    }
    let cand = Rat::new(p1, q1);
    if (rat_to_f64(&cand) - x).abs() <= tol {
        Some(cand)
    } else {
        None
    }
}

/// Round to `sig` significant digits and print the shortest decimal form of
/// the rounded value. Deterministic in the bit pattern of `x`.
pub fn fmt_f64(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{:.*e}", sig - 1, x).parse().unwrap();
    if rounded == 0.0 {
        return "0".to_string();
    }
    format!("{rounded}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parse_fraction_and_integer() {
        assert_eq!(rat_parse("3/6").unwrap(), q(1, 2));
        assert_eq!(rat_parse("-7").unwrap(), q(-7, 1));
        assert_eq!(rat_parse(" 2 / 4 ").unwrap(), q(1, 2));
        assert!(rat_parse("1/0").is_none());
        assert!(rat_parse("abc").is_none());
    }

    #[test]
    fn parse_decimal_forms() {
        assert_eq!(rat_parse("0.4").unwrap(), q(2, 5));
        assert_eq!(rat_parse("-1.25e-2").unwrap(), q(-1, 80));
        assert_eq!(rat_parse("5e3").unwrap(), q(5000, 1));
        assert_eq!(rat_parse(".5").unwrap(), q(1, 2));
        assert_eq!(rat_parse("2.").unwrap(), q(2, 1));
    }

    #[test]
    fn float_to_rat_shortest() {
        assert_eq!(rat_from_f64(0.4).unwrap(), q(2, 5));
        assert_eq!(rat_from_f64(-2.5).unwrap(), q(-5, 2));
        assert_eq!(rat_from_f64(3.0).unwrap(), q(3, 1));
        assert!(rat_from_f64(f64::NAN).is_none());
    }

    #[test]
    fn rationalize_recovers_simple_fractions() {
        assert_eq!(rationalize(1.0 / 3.0, 1000, 1e-9).unwrap(), q(1, 3));
        assert_eq!(rationalize(-0.75, 1000, 1e-12).unwrap(), q(-3, 4));
        assert_eq!(rationalize(5.0, 10, 1e-12).unwrap(), q(5, 1));
        // golden ratio has no small-denominator approximation at 1e-12
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!(rationalize(phi, 50, 1e-12).is_none());
    }

    #[test]
    fn fmt_significant_digits() {
        assert_eq!(fmt_f64(0.4, 12), "0.4");
        assert_eq!(fmt_f64(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(fmt_f64(0.0, 12), "0");
        assert_eq!(fmt_f64(-0.0, 12), "0");
        assert_eq!(fmt_f64(123456.789, 5), "123460");
        assert_eq!(fmt_f64(2.0, 12), "2");
    }

    #[test]
    fn round_trip_rat_strings() {
        for s in ["3/2", "-1", "0", "22/7"] {
            let r = rat_parse(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
    }
}
