//! Coefficient rings: the rationals, prime fields and the integers.
//!
//! Every scalar is carried as a reduced [`BigRational`]; the ring decides which
//! values are admissible (integers for `Z`, residues `0..p` for `F_p`) and how
//! arithmetic is reduced.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarRing {
    Rationals,
    /// Only construct through [`ScalarRing::prime_field`], which checks primality.
    PrimeField(u64),
    Integers,
}

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl ScalarRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(ScalarRing::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, ScalarRing::Integers)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    /// Image of an integer in the ring.
    pub fn from_i64(&self, v: i64) -> Scalar {
        self.reduce_int(BigInt::from(v))
    }

    fn reduce_int(&self, v: BigInt) -> Scalar {
        match self {
            ScalarRing::PrimeField(p) => BigRational::from_integer(v.mod_floor(&BigInt::from(*p))),
            _ => BigRational::from_integer(v),
        }
    }

    /// Map an arbitrary rational into the ring, failing when it has no image.
    pub fn normalize(&self, x: &Scalar) -> Result<Scalar> {
        match self {
            ScalarRing::Rationals => Ok(x.clone()),
            ScalarRing::Integers => {
                if x.is_integer() {
                    Ok(x.clone())
                } else {
                    Err(self.invalid(x))
                }
            }
            ScalarRing::PrimeField(p) => {
                let p = BigInt::from(*p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(self.invalid(x));
                }
                let inv = mod_inverse(&den, &p);
                Ok(BigRational::from_integer((x.numer() * inv).mod_floor(&p)))
            }
        }
    }

    fn invalid(&self, x: &Scalar) -> Error {
        Error::InvalidScalar {
            value: x.to_string(),
            ring: self.to_string(),
        }
    }

    /// True when `x` is already a canonical element of the ring.
    pub fn contains(&self, x: &Scalar) -> bool {
        match self {
            ScalarRing::Rationals => true,
            ScalarRing::Integers => x.is_integer(),
            ScalarRing::PrimeField(p) => {
                x.is_integer() && !x.is_negative() && x.numer() < &BigInt::from(*p)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.fix(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.fix(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::zero();
        }
        self.fix(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.fix(-a)
    }

    // Results of ring operations on canonical inputs are integers for Z and F_p.
    fn fix(&self, v: Scalar) -> Scalar {
        match self {
            ScalarRing::PrimeField(p) => {
                BigRational::from_integer(v.to_integer().mod_floor(&BigInt::from(*p)))
            }
            _ => v,
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match self {
            ScalarRing::Integers => a.abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if !self.is_unit(a) {
            return None;
        }
        match self {
            ScalarRing::Integers => Some(a.clone()),
            ScalarRing::Rationals => Some(a.recip()),
            ScalarRing::PrimeField(p) => {
                let p = BigInt::from(*p);
                Some(BigRational::from_integer(mod_inverse(&a.to_integer(), &p)))
            }
        }
    }

    /// Euclidean division: `a = q*b + r` with `norm(r) < norm(b)`.
    pub fn div_rem(&self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        assert!(!b.is_zero(), "division by zero");
        match self {
            ScalarRing::Integers => {
                let (q, r) = a.to_integer().div_mod_floor(&b.to_integer());
                (BigRational::from_integer(q), BigRational::from_integer(r))
            }
            _ => {
                let q = self.mul(a, &self.inv(b).expect("nonzero field element"));
                (q, Scalar::zero())
            }
        }
    }

    /// Exact quotient `a / b` when `b` divides `a`.
    pub fn exact_div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        if b.is_zero() {
            return if a.is_zero() { Some(Scalar::zero()) } else { None };
        }
        let (q, r) = self.div_rem(a, b);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, a: &Scalar, b: &Scalar) -> bool {
        self.exact_div(b, a).is_some()
    }

    /// Unit `u` making `u*a` the canonical associate (positive over Z, one over a field).
    pub fn unit_normalizer(&self, a: &Scalar) -> Scalar {
        match self {
            ScalarRing::Integers => {
                if a.is_negative() {
                    -Scalar::one()
                } else {
                    Scalar::one()
                }
            }
            _ => self.inv(a).unwrap_or_else(Scalar::one),
        }
    }

    /// Size used for pivot selection.
    pub fn norm(&self, a: &Scalar) -> Scalar {
        a.abs()
    }

    /// Integer value of an invariant factor (`0` for free summands).
    pub fn order_of(&self, d: &Scalar) -> BigInt {
        match self {
            ScalarRing::Integers => d.to_integer().abs(),
            _ => {
                if d.is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
        }
    }

    pub fn format_scalar(&self, a: &Scalar) -> String {
        a.to_string()
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            ScalarRing::PrimeField(p) => *p,
            _ => 0,
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.mod_floor(p).extended_gcd(p);
    e.x.mod_floor(p)
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRing::Rationals => write!(f, "Q"),
            ScalarRing::Integers => write!(f, "Z"),
            ScalarRing::PrimeField(p) => write!(f, "Fp({p})"),
        }
    }
}

impl FromStr for ScalarRing {
    type Err = Error;

    /// Accepts `Q`, `Z`, `Fp(p)` and `Fp:p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Q" => return Ok(ScalarRing::Rationals),
            "Z" => return Ok(ScalarRing::Integers),
            _ => {}
        }
        let inner = s
            .strip_prefix("Fp(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("Fp:"))
            .ok_or_else(|| Error::Format(format!("unknown ring tag `{s}`")))?;
        let p: u64 = inner
            .trim()
            .parse()
            .map_err(|_| Error::Format(format!("bad characteristic in `{s}`")))?;
        ScalarRing::prime_field(p)
    }
}

/// Parse `n` or `n/d` as a scalar of the ring.
pub fn parse_scalar(ring: ScalarRing, s: &str) -> Result<Scalar> {
    let raw: BigRational = if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Format(format!("bad scalar `{s}`")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Format(format!("bad scalar `{s}`")))?;
        if d.is_zero() {
            return Err(Error::Format(format!("zero denominator in `{s}`")));
        }
        BigRational::new(n, d)
    } else {
        BigRational::from_integer(
            s.trim()
                .parse()
                .map_err(|_| Error::Format(format!("bad scalar `{s}`")))?,
        )
    };
    ring.normalize(&raw)
}

/// Small-integer view used by reports; `None` when out of `i64` range or not integral.
pub fn as_i64(a: &Scalar) -> Option<i64> {
    if a.is_integer() {
        a.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f5 = ScalarRing::prime_field(5).unwrap();
        assert_eq!(f5.add(&int(3), &int(4)), int(2));
        assert_eq!(f5.neg(&int(1)), int(4));
        assert_eq!(f5.inv(&int(2)), Some(int(3)));
        assert_eq!(f5.normalize(&BigRational::new(1.into(), 2.into())).unwrap(), int(3));
        assert!(f5.normalize(&BigRational::new(1.into(), 5.into())).is_err());
        assert!(ScalarRing::prime_field(6).is_err());
    }

    #[test]
    fn integer_division() {
        let z = ScalarRing::Integers;
        let (q, r) = z.div_rem(&int(-7), &int(3));
        assert_eq!(q * int(3) + r.clone(), int(-7));
        assert!(r.abs() < int(3));
        assert!(z.divides(&int(3), &int(12)));
        assert!(!z.divides(&int(0), &int(1)));
        assert!(z.divides(&int(0), &int(0)));
        assert!(z.normalize(&BigRational::new(1.into(), 2.into())).is_err());
    }

    #[test]
    fn ring_tags_round_trip() {
        for tag in ["Q", "Z", "Fp(7)"] {
            let r: ScalarRing = tag.parse().unwrap();
            assert_eq!(r.to_string(), tag);
        }
        assert_eq!("Fp:3".parse::<ScalarRing>().unwrap(), ScalarRing::PrimeField(3));
        assert!("Fp:4".parse::<ScalarRing>().is_err());
    }
}
