//! Exact rational scalars: parsing, rendering, conversion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational used for all exact arithmetic.
pub type Rational = BigRational;

/// Parse a rational from `"3/4"`, `"-2"` or `"7"` style text.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty rational literal".into());
    }
    match t.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in `{t}`"))?;
            let d: BigInt = den
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in `{t}`"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in `{t}`"));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| format!("bad integer `{t}`"))?;
            Ok(Rational::from(n))
        }
    }
}

/// Canonical text form: `"3/4"`, `"-2"`, `"0"`.
pub fn render_rational(q: &Rational) -> String {
    q.to_string()
}

/// Lossy conversion for the floating-point evaluation mode.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn rat_i64(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["3/4", "-2", "0", "-13/7"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(render_rational(&q), s);
        }
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn normalizes() {
        assert_eq!(render_rational(&parse_rational("6/8").unwrap()), "3/4");
        assert_eq!(render_rational(&parse_rational("4/-2").unwrap()), "-2");
    }
}
