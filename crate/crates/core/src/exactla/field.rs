//! Scalar types used by elimination. Arithmetic is fallible so that the
//! machine-word fast path can report overflow and be retried exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(Rational::new(a, b))
    } else {
        Some(Rational::from_integer(s.parse().ok()?))
    }
}

pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Arithmetic failed to fit the representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub trait Field: Clone + Debug + Send + Sync + PartialEq {
    fn fzero() -> Self;
    fn fone() -> Self;
    fn fis_zero(&self) -> bool;
    fn from_rational(x: &Rational) -> Result<Self, Overflow>;
    fn fadd(&self, o: &Self) -> Result<Self, Overflow>;
    fn fmul(&self, o: &Self) -> Result<Self, Overflow>;
    fn fneg(&self) -> Result<Self, Overflow>;
    fn finv(&self) -> Result<Self, Overflow>;

    fn fsub(&self, o: &Self) -> Result<Self, Overflow> {
        self.fadd(&o.fneg()?)
    }
}

impl Field for Rational {
    fn fzero() -> Self {
        Zero::zero()
    }
    fn fone() -> Self {
        One::one()
    }
    fn fis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(x: &Rational) -> Result<Self, Overflow> {
        Ok(x.clone())
    }
    fn fadd(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self + o)
    }
    fn fmul(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self * o)
    }
    fn fneg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn finv(&self) -> Result<Self, Overflow> {
        Ok(self.recip())
    }
}

/// Reduced fraction of machine words with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallRat {
    num: i64,
    den: i64,
}

impl SmallRat {
    fn make(n: i128, d: i128) -> Result<Self, Overflow> {
        let g = n.gcd(&d);
        let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        let num = i64::try_from(n).map_err(|_| Overflow)?;
        let den = i64::try_from(d).map_err(|_| Overflow)?;
        if num == i64::MIN {
            return Err(Overflow);
        }
        Ok(SmallRat { num, den })
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
}

impl Field for SmallRat {
    fn fzero() -> Self {
        SmallRat { num: 0, den: 1 }
    }
    fn fone() -> Self {
        SmallRat { num: 1, den: 1 }
    }
    fn fis_zero(&self) -> bool {
        self.num == 0
    }
    fn from_rational(x: &Rational) -> Result<Self, Overflow> {
        let n = x.numer().to_i64().ok_or(Overflow)?;
        let d = x.denom().to_i64().ok_or(Overflow)?;
        SmallRat::make(n as i128, d as i128)
    }
    fn fadd(&self, o: &Self) -> Result<Self, Overflow> {
        if self.den == 1 && o.den == 1 {
            let s = self.num.checked_add(o.num).ok_or(Overflow)?;
            if s == i64::MIN {
                return Err(Overflow);
            }
            return Ok(SmallRat { num: s, den: 1 });
        }
        let n = self.num as i128 * o.den as i128 + o.num as i128 * self.den as i128;
        let d = self.den as i128 * o.den as i128;
        SmallRat::make(n, d)
    }
    fn fmul(&self, o: &Self) -> Result<Self, Overflow> {
        if self.den == 1 && o.den == 1 {
            let p = self.num.checked_mul(o.num).ok_or(Overflow)?;
            if p == i64::MIN {
                return Err(Overflow);
            }
            return Ok(SmallRat { num: p, den: 1 });
        }
        SmallRat::make(self.num as i128 * o.num as i128, self.den as i128 * o.den as i128)
    }
    fn fneg(&self) -> Result<Self, Overflow> {
        Ok(SmallRat { num: -self.num, den: self.den })
    }
    fn finv(&self) -> Result<Self, Overflow> {
        SmallRat::make(self.den as i128, self.num as i128)
    }
}

/// Integers modulo the prime `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp<const P: u64>(pub u64);

pub const PRIME_A: u64 = 2_147_483_647;
pub const PRIME_B: u64 = 2_147_483_629;

impl<const P: u64> Fp<P> {
    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P as u128;
            }
            base = base * base % P as u128;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn fzero() -> Self {
        Fp(0)
    }
    fn fone() -> Self {
        Fp(1)
    }
    fn fis_zero(&self) -> bool {
        self.0 == 0
    }
    fn from_rational(x: &Rational) -> Result<Self, Overflow> {
        let p = BigInt::from(P);
        let n = x.numer().mod_floor(&p).to_u64().unwrap();
        let d = x.denom().mod_floor(&p).to_u64().unwrap();
        if d == 0 {
            return Err(Overflow);
        }
        Fp(n).fmul(&Fp(d).finv()?)
    }
    fn fadd(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(Fp((self.0 + o.0) % P))
    }
    fn fmul(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(Fp((self.0 as u128 * o.0 as u128 % P as u128) as u64))
    }
    fn fneg(&self) -> Result<Self, Overflow> {
        Ok(Fp((P - self.0) % P))
    }
    fn finv(&self) -> Result<Self, Overflow> {
        if self.0 == 0 {
            return Err(Overflow);
        }
        Ok(self.pow(P - 2))
    }
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}
