//! The scalar type: exact arbitrary-precision rationals.

use core::fmt;

use num_bigint::BigInt;

/// The only scalar type used by the cone computations.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `numer/denom`. Panics if `denom == 0`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Formats a rational as `p` when integral and `p/q` otherwise.
///
/// This is the normative textual encoding used by the CLI and its JSON
/// documents, kept here so core and front end cannot drift apart.
pub fn display(value: &Rational) -> DisplayRational<'_> {
    DisplayRational(value)
}

/// Parses the `p` / `p/q` encoding produced by [`display`]. Returns `None`
/// on malformed input or a zero denominator.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((numer, denom)) => {
            let n: BigInt = numer.trim().parse().ok()?;
            let d: BigInt = denom.trim().parse().ok()?;
            if num_traits::Zero::is_zero(&d) {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => {
            let n: BigInt = text.parse().ok()?;
            Some(Rational::from_integer(n))
        }
    }
}

pub struct DisplayRational<'a>(&'a Rational);

impl fmt::Display for DisplayRational<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::One;
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn display_integral_without_denominator() {
        assert_eq!(display(&int(-7)).to_string(), "-7");
        assert_eq!(display(&ratio(6, 3)).to_string(), "2");
        assert_eq!(display(&ratio(-3, 6)).to_string(), "-1/2");
    }

    #[test]
    fn parse_round_trips_display() {
        for value in [int(0), int(-7), ratio(22, 7), ratio(-3, 6)] {
            let text = display(&value).to_string();
            assert_eq!(parse(&text), Some(value));
        }
        assert_eq!(parse(" -4/6 "), Some(ratio(-2, 3)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("3.5"), None);
        assert_eq!(parse(""), None);
    }
}
