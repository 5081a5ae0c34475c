use std::fmt;

use num_traits::Zero;

use super::{forward_binops, poly_gcd, tick, Field, Poly, Rational};
use crate::error::{HeptaError, Result};

/// Reduced ratio of polynomials in `t`.
///
/// Invariants held after every construction: the denominator is nonzero and
/// monic, numerator and denominator are coprime, and constants have
/// denominator `1`. Structural equality is therefore value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

/// Builds the canonical reduced form of `num / den`.
pub fn ratfun_normalize(num: Poly, den: Poly) -> Result<RatFun> {
    if den.is_zero() {
        return Err(HeptaError::DivisionByZero);
    }
    Ok(RatFun::reduce(num, den))
}

impl RatFun {
    pub fn t() -> Self {
        RatFun {
            num: Poly::t(),
            den: Poly::one(),
        }
    }

    pub fn constant(c: &Rational) -> Self {
        RatFun {
            num: Poly::constant(c.as_big().clone()),
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Caller guarantees `den` is nonzero.
    fn reduce(num: Poly, den: Poly) -> RatFun {
        if num.is_zero() {
            return RatFun {
                num,
                den: Poly::one(),
            };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den).expect("denominator is nonzero");
            if g.is_constant() {
                (num, den)
            } else {
                (
                    num.div_rem(&g).expect("gcd is nonzero").0,
                    den.div_rem(&g).expect("gcd is nonzero").0,
                )
            }
        };
        let lead = den.leading().expect("denominator is nonzero");
        if num_traits::One::is_one(&lead) {
            RatFun { num, den }
        } else {
            let inv = lead.recip();
            RatFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Substitutes `t = 0`.
    pub fn eval_at_zero(&self) -> Result<Rational> {
        let d = self.den.at_zero();
        if d.is_zero() {
            return Err(HeptaError::PoleAtZero);
        }
        Ok(Rational::from_big(self.num.at_zero() / d))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.num.is_zero() {
            return Err(HeptaError::DivisionByZero);
        }
        Ok(self.div_ref(rhs))
    }

    fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Quotient by a polynomial known to divide exactly.
    fn exact_quo(p: &Poly, d: &Poly) -> Poly {
        if d.is_constant() {
            // gcds are monic, so a constant divisor is 1
            return p.clone();
        }
        p.div_rem(d).expect("divisor is nonzero").0
    }

    /// `self + sign·rhs` for `sign = ±1`, keeping the result reduced with as
    /// little gcd work as possible (Henrici's method).
    fn add_signed(&self, rhs: &Self, negate: bool) -> Self {
        let rn = if negate { rhs.num.neg() } else { rhs.num.clone() };
        if self.den == rhs.den {
            if self.is_polynomial() {
                return RatFun {
                    num: self.num.add(&rn),
                    den: Poly::one(),
                };
            }
            return RatFun::reduce(self.num.add(&rn), self.den.clone());
        }
        // A polynomial summand cannot share a factor with the other
        // denominator: gcd(n + p·d, d) = gcd(n, d) = 1.
        if self.is_polynomial() {
            return RatFun {
                num: self.num.mul(&rhs.den).add(&rn),
                den: rhs.den.clone(),
            };
        }
        if rhs.is_polynomial() {
            return RatFun {
                num: self.num.add(&rn.mul(&self.den)),
                den: self.den.clone(),
            };
        }
        let g = poly_gcd(&self.den, &rhs.den).expect("denominators are nonzero");
        if g.is_constant() {
            return RatFun {
                num: self.num.mul(&rhs.den).add(&rn.mul(&self.den)),
                den: self.den.mul(&rhs.den),
            };
        }
        let d1 = RatFun::exact_quo(&self.den, &g);
        let d2 = RatFun::exact_quo(&rhs.den, &g);
        let num = self.num.mul(&d2).add(&rn.mul(&d1));
        if num.is_zero() {
            return <RatFun as Field>::zero();
        }
        let g2 = poly_gcd(&num, &g).expect("gcd operand is nonzero");
        RatFun::reduce(
            RatFun::exact_quo(&num, &g2),
            d1.mul(&RatFun::exact_quo(&rhs.den, &g2)),
        )
    }

    /// Product of reduced fractions: only cross gcds are needed.
    fn mul_reduced(n1: &Poly, d1: &Poly, n2: &Poly, d2: &Poly) -> Self {
        if n1.is_zero() || n2.is_zero() {
            return <RatFun as Field>::zero();
        }
        let g1 = if d2.is_constant() { Poly::one() } else { poly_gcd(n1, d2).expect("nonzero") };
        let g2 = if d1.is_constant() { Poly::one() } else { poly_gcd(n2, d1).expect("nonzero") };
        let num = RatFun::exact_quo(n1, &g1).mul(&RatFun::exact_quo(n2, &g2));
        let den = RatFun::exact_quo(d1, &g2).mul(&RatFun::exact_quo(d2, &g1));
        RatFun::reduce_coprime(num, den)
    }

    /// Normalizes the leading coefficient of an already coprime pair.
    fn reduce_coprime(num: Poly, den: Poly) -> Self {
        let lead = den.leading().expect("denominator is nonzero");
        if num_traits::One::is_one(&lead) {
            RatFun { num, den }
        } else {
            let inv = lead.recip();
            RatFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        tick();
        self.add_signed(rhs, false)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        tick();
        self.add_signed(rhs, true)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        tick();
        RatFun::mul_reduced(&self.num, &self.den, &rhs.num, &rhs.den)
    }

    fn div_ref(&self, rhs: &Self) -> Self {
        tick();
        assert!(!rhs.num.is_zero(), "RatFun division by zero");
        RatFun::mul_reduced(&self.num, &self.den, &rhs.den, &rhs.num)
    }
}

forward_binops!(RatFun,
    Add::add => add_ref,
    Sub::sub => sub_ref,
    Mul::mul => mul_ref,
    Div::div => div_ref,
);

impl std::ops::Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        tick();
        RatFun {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Field for RatFun {
    fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    fn one() -> Self {
        RatFun {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn from_rational(r: &Rational) -> Self {
        RatFun::constant(r)
    }

    fn indeterminate() -> Option<Self> {
        Some(RatFun::t())
    }

    fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }
}

impl From<Rational> for RatFun {
    fn from(r: Rational) -> Self {
        RatFun::constant(&r)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
