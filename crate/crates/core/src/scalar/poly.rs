use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{HeptaError, Result};

use super::Rational;

/// Univariate polynomial in `t` over the rationals.
///
/// Stored as integer numerators over one shared positive denominator, so
/// arithmetic normalizes once per polynomial instead of once per
/// coefficient. `num[k]` belongs to `t^k`; trailing zeros are trimmed and
/// `gcd(content(num), den) = 1`, making the representation canonical. The
/// zero polynomial has an empty `num` and `den = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Default for Poly {
    fn default() -> Self {
        Poly::zero()
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Poly {
            num: vec![BigInt::one()],
            den: BigInt::one(),
        }
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Poly {
            num: vec![BigInt::zero(), BigInt::one()],
            den: BigInt::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Poly::normalized(num, den)
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|c| c.as_big().clone()).collect())
    }

    /// Restores the invariants; `den` must be nonzero.
    fn normalized(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        while num.last().is_some_and(Zero::is_zero) {
            num.pop();
        }
        if num.is_empty() {
            return Poly::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in &mut num {
                *c = -&*c;
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() {
                den /= &g;
                for c in &mut num {
                    *c /= &g;
                }
            }
        }
        Poly { num, den }
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        match self.num.get(k) {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|k| self.coeff(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.num.len() <= 1
    }

    pub fn leading(&self) -> Option<BigRational> {
        self.degree().map(|d| self.coeff(d))
    }

    pub fn is_monic(&self) -> bool {
        self.num.last().is_some_and(|l| *l == self.den)
    }

    /// Value at `t = 0`, i.e. the constant coefficient.
    pub fn at_zero(&self) -> BigRational {
        self.coeff(0)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (num, den) = if self.den == rhs.den {
            let len = self.num.len().max(rhs.num.len());
            let num = (0..len)
                .map(|k| match (self.num.get(k), rhs.num.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect();
            (num, self.den.clone())
        } else {
            let den = self.den.lcm(&rhs.den);
            let (fa, fb) = (&den / &self.den, &den / &rhs.den);
            let len = self.num.len().max(rhs.num.len());
            let num = (0..len)
                .map(|k| {
                    let mut acc = BigInt::zero();
                    if let Some(a) = self.num.get(k) {
                        acc += a * &fa;
                    }
                    if let Some(b) = rhs.num.get(k) {
                        acc += b * &fb;
                    }
                    acc
                })
                .collect();
            (num, den)
        };
        Poly::normalized(num, den)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.num.len() + rhs.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::normalized(out, &self.den * &rhs.den)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::normalized(
            self.num.iter().map(|a| a * c.numer()).collect(),
            &self.den * c.denom(),
        )
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(HeptaError::DivisionByZero)?;
        if self.num.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        // With a = A/D and b = B/E over Z, pseudo-divide A by B: the
        // integer recurrence only ever scales by lc(B).
        let b = &divisor.num;
        let lead = &b[dd];
        let steps = self.num.len() - dd;
        let mut rem = self.num.clone();
        let mut quot = vec![BigInt::zero(); steps];
        // rem and quot are tracked over the common scale lead^m.
        let mut scale = BigInt::one();
        for k in (0..steps).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for x in rem.iter_mut() {
                *x *= lead;
            }
            for q in quot.iter_mut() {
                *q *= lead;
            }
            scale *= lead;
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        // self = (quot/scale)·B/D + rem/(scale·D), and B = E·divisor.
        let q = Poly::normalized(quot, &scale * &self.den).scale(&BigRational::from_integer(divisor.den.clone()));
        let r = Poly::normalized(rem, scale * &self.den);
        Ok((q, r))
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.num.last() {
            Some(l) if *l != self.den => Poly::normalized(self.num.clone(), l.clone()),
            _ => self.clone(),
        }
    }
}

/// Monic greatest common divisor by the Euclidean algorithm over Q.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.is_zero() && q.is_zero() {
        return Err(HeptaError::GcdUndefined);
    }
    if coprime_mod_prime(p, q) {
        return Ok(Poly::one());
    }
    if p.is_zero() || q.is_zero() {
        return Ok(if p.is_zero() { q.monic() } else { p.monic() });
    }
    let (mut a, mut b) = (primitive_part(p), primitive_part(q));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive_part_int(pseudo_remainder(&a, &b));
        a = b;
        b = r;
    }
    Ok(Poly::normalized(a, BigInt::one()).monic())
}

/// Integer polynomial proportional to `p` with coprime coefficients.
fn primitive_part(p: &Poly) -> Vec<BigInt> {
    primitive_part_int(p.num.clone())
}

fn primitive_part_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in &mut v {
            *c /= &content;
        }
    }
    v
}

/// `lc(b)^(deg a − deg b + 1) · a mod b`, all in `Z[t]`.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let c = r.last().expect("nonempty").clone();
        let shift = r.len() - b.len();
        for x in r.iter_mut() {
            *x *= lead;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// Mersenne prime `2^61 − 1`; products fit in `u128`.
const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, PRIME - 2)
}

/// Image of `p` in `F_PRIME[t]`, or `None` if the prime divides a
/// denominator or the leading coefficient (the degree would drop).
fn reduce_mod_prime(p: &Poly) -> Option<Vec<u64>> {
    let m = num_bigint::BigInt::from(PRIME);
    let residue = |x: &num_bigint::BigInt| -> u64 {
        let r = x % &m;
        let r = if r.sign() == num_bigint::Sign::Minus { r + &m } else { r };
        r.iter_u64_digits().next().unwrap_or(0)
    };
    // The shared denominator only scales the image; it must not vanish.
    if residue(&p.den) == 0 {
        return None;
    }
    let out: Vec<u64> = p.num.iter().map(residue).collect();
    (*out.last()? != 0).then_some(out)
}

/// Conclusive only when it returns `true`: the images mod the prime are
/// coprime with degrees preserved, so the gcd over `Q` is `1` as well.
fn coprime_mod_prime(p: &Poly, q: &Poly) -> bool {
    let (Some(mut a), Some(mut b)) = (reduce_mod_prime(p), reduce_mod_prime(q)) else {
        return false;
    };
    while !b.is_empty() {
        // a ← a mod b
        let inv_lead = inv_mod(*b.last().expect("nonempty"));
        while a.len() >= b.len() {
            let c = mul_mod(*a.last().expect("nonempty"), inv_lead);
            let shift = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                let sub = mul_mod(c, bj);
                a[shift + j] = (a[shift + j] + PRIME - sub) % PRIME;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let c = Rational::from_big(BigRational::new(c.clone(), self.den.clone()));
            let text = c.to_string();
            let (sign, body) = match text.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", text),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = body == "1";
            match k {
                0 => write!(f, "{body}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "({body})t")?,
                _ if unit => write!(f, "t^{k}")?,
                _ => write!(f, "({body})t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    #[test]
    fn gcd_examples() {
        // t^2 - 1 and t - 1
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[0, 1]), &p(&[1])).unwrap(), p(&[1]));
        // 2t^2 + 2t and 4t
        assert_eq!(poly_gcd(&p(&[0, 2, 2]), &p(&[0, 4])).unwrap(), p(&[0, 1]));
    }

    #[test]
    fn gcd_of_zeros_is_undefined() {
        assert_eq!(poly_gcd(&Poly::zero(), &Poly::zero()), Err(HeptaError::GcdUndefined));
        assert_eq!(poly_gcd(&Poly::zero(), &p(&[0, 3])).unwrap(), p(&[0, 1]));
    }

    #[test]
    fn canonical_zero_and_trim() {
        assert!(p(&[0, 0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(p(&[1, 1]).sub(&p(&[1, 1])), Poly::zero());
    }

    #[test]
    fn division_identity() {
        let a = p(&[3, -2, 0, 5, 1]);
        let b = p(&[1, 0, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
        assert!(a.div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[3, 0, -1]).to_string(), "-t^2 + 3");
        assert_eq!(p(&[0, 2]).to_string(), "(2)t");
    }
}
