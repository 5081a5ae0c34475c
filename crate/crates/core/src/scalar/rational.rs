use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{forward_binops, tick, Field};
use crate::error::{HeptaError, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(HeptaError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn from_big(inner: BigRational) -> Self {
        Rational(inner)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.0.is_zero() {
            return Err(HeptaError::DivisionByZero);
        }
        Ok(self.div_ref(rhs))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    pub fn to_f64(&self) -> f64 {
        // Ratio::to_f64 rounds correctly even when numerator and denominator overflow f64.
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        tick();
        Rational(&self.0 + &rhs.0)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        tick();
        Rational(&self.0 - &rhs.0)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        tick();
        Rational(&self.0 * &rhs.0)
    }

    fn div_ref(&self, rhs: &Self) -> Self {
        tick();
        Rational(&self.0 / &rhs.0)
    }
}

forward_binops!(Rational,
    Add::add => add_ref,
    Sub::sub => sub_ref,
    Mul::mul => mul_ref,
    Div::div => div_ref,
);

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        tick();
        Rational(-self.0)
    }
}

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        tick();
        Rational(-&self.0)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Rational::from_integer(v)
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(text: &str, full: &str, allow_sign: bool) -> Result<BigInt> {
    let bad = |reason| HeptaError::ParseScalar {
        text: full.to_string(),
        reason,
    };
    let digits = match text.as_bytes().first() {
        Some(b'+') | Some(b'-') if allow_sign => &text[1..],
        _ => text,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad("expected digits"));
    }
    text.trim_start_matches('+')
        .parse::<BigInt>()
        .map_err(|_| bad("expected digits"))
}

/// Accepts `p/q` (sign on `p` only), plain integers and terminating decimals.
impl FromStr for Rational {
    type Err = HeptaError;

    fn from_str(raw: &str) -> Result<Self> {
        let s = raw.trim();
        if let Some((p, q)) = s.split_once('/') {
            let numer = parse_int(p, raw, true)?;
            let denom = parse_int(q, raw, false)?;
            if denom.is_zero() {
                return Err(HeptaError::ParseScalar {
                    text: raw.to_string(),
                    reason: "zero denominator",
                });
            }
            return Ok(Rational(BigRational::new(numer, denom)));
        }
        if let Some((int_part, frac)) = s.split_once('.') {
            let (negative, int_digits) = match int_part.as_bytes().first() {
                Some(b'-') => (true, &int_part[1..]),
                Some(b'+') => (false, &int_part[1..]),
                _ => (false, int_part),
            };
            if int_digits.is_empty() && frac.is_empty() {
                return Err(HeptaError::ParseScalar {
                    text: raw.to_string(),
                    reason: "expected digits",
                });
            }
            let whole = if int_digits.is_empty() {
                BigInt::zero()
            } else {
                parse_int(int_digits, raw, false)?
            };
            let (frac_val, scale) = if frac.is_empty() {
                (BigInt::zero(), BigInt::one())
            } else {
                let v = parse_int(frac, raw, false)?;
                (v, num_traits::pow(BigInt::from(10u32), frac.len()))
            };
            let magnitude = whole * &scale + frac_val;
            let numer = if negative { -magnitude } else { magnitude };
            return Ok(Rational(BigRational::new(numer, scale)));
        }
        Ok(Rational::from_integer(parse_int(s, raw, true)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_all_three_forms() {
        assert_eq!(q("6/4"), Rational::new(3, 2).unwrap());
        assert_eq!(q("-12"), Rational::from(-12));
        assert_eq!(q("+7"), Rational::from(7));
        assert_eq!(q("1.25"), Rational::new(5, 4).unwrap());
        assert_eq!(q("-0.5"), Rational::new(-1, 2).unwrap());
        assert_eq!(q(".5"), Rational::new(1, 2).unwrap());
        assert_eq!(q("3."), Rational::from(3));
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in ["", "1/0", "1/-2", "abc", "1.2.3", "--1", "1/", "."] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn canonical_display() {
        assert_eq!(q("-24419/32715").to_string(), "-24419/32715");
        assert_eq!(q("8/4").to_string(), "2");
        assert_eq!(q("0/5").to_string(), "0");
        assert_eq!(q("-1.50").to_string(), "-3/2");
    }

    #[test]
    fn checked_division() {
        assert_eq!(Rational::one().checked_div(&Rational::zero()), Err(HeptaError::DivisionByZero));
        assert_eq!(Rational::from(3).recip().unwrap(), q("1/3"));
    }
}
