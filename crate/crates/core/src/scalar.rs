//! Exact scalar types and the traits the generic kernels are written against.
//!
//! Everything here is exact: integers for lattices, rationals or prime fields
//! for exactness checks. There is deliberately no floating-point scalar.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact commutative ring elements.
pub trait Ring:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
}

impl<T> Ring for T where
    T: Clone
        + fmt::Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + Send
        + Sync
{
}

/// Euclidean integer types used by the normal-form routines.
pub trait IntegerScalar: Ring + Integer + Signed {}

impl<T> IntegerScalar for T where T: Ring + Integer + Signed {}

/// Exact field elements.
///
/// Implemented explicitly: integer types also implement `Div`, but truncating
/// division does not make them fields.
pub trait FieldScalar: Ring + Div<Output = Self> {}

impl FieldScalar for BigRational {}
impl FieldScalar for num_rational::Rational64 {}
impl FieldScalar for Zp {}

/// Element of Z/p.
///
/// The modulus travels with the value. `zero()` and `one()` are produced
/// without one (modulus 0) and adopt the modulus of the first typed operand
/// they meet.
#[derive(Clone, Copy)]
pub struct Zp {
    value: i128,
    modulus: u64,
}

impl Zp {
    pub fn new(value: i64, p: u64) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        Zp {
            value: (value as i128).rem_euclid(p as i128),
            modulus: p,
        }
    }

    pub fn from_bigint(value: &BigInt, p: u64) -> Self {
        let r = value.mod_floor(&BigInt::from(p));
        Zp {
            value: r.to_i128().expect("residue fits"),
            modulus: p,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        (self.modulus != 0).then_some(self.modulus)
    }

    /// Canonical representative in `0..p` (or the raw value for untyped constants).
    pub fn residue(&self) -> i128 {
        if self.modulus == 0 {
            self.value
        } else {
            self.value.rem_euclid(self.modulus as i128)
        }
    }

    fn join(a: u64, b: u64) -> u64 {
        if a == 0 {
            b
        } else {
            debug_assert!(b == 0 || a == b, "mixed moduli {a} and {b}");
            a
        }
    }

    fn make(value: i128, modulus: u64) -> Self {
        let value = if modulus == 0 {
            value
        } else {
            value.rem_euclid(modulus as i128)
        };
        Zp { value, modulus }
    }

    fn inverse_mod(value: i128, m: i128) -> Option<i128> {
        let (mut r0, mut r1) = (m, value.rem_euclid(m));
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        (r0 == 1).then(|| s0.rem_euclid(m))
    }
}

impl fmt::Debug for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue())
    }
}

impl fmt::Display for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue())
    }
}

impl PartialEq for Zp {
    fn eq(&self, other: &Self) -> bool {
        let m = Zp::join(self.modulus, other.modulus);
        Zp::make(self.value, m).value == Zp::make(other.value, m).value
    }
}

impl Eq for Zp {}

impl Add for Zp {
    type Output = Zp;
    fn add(self, rhs: Zp) -> Zp {
        let m = Zp::join(self.modulus, rhs.modulus);
        Zp::make(self.value + rhs.value, m)
    }
}

impl Sub for Zp {
    type Output = Zp;
    fn sub(self, rhs: Zp) -> Zp {
        let m = Zp::join(self.modulus, rhs.modulus);
        Zp::make(self.value - rhs.value, m)
    }
}

impl Mul for Zp {
    type Output = Zp;
    fn mul(self, rhs: Zp) -> Zp {
        let m = Zp::join(self.modulus, rhs.modulus);
        let a = Zp::make(self.value, m).value;
        let b = Zp::make(rhs.value, m).value;
        Zp::make(a * b, m)
    }
}

impl Div for Zp {
    type Output = Zp;
    fn div(self, rhs: Zp) -> Zp {
        let m = Zp::join(self.modulus, rhs.modulus);
        if m == 0 {
            assert!(rhs.value == 1 || rhs.value == -1, "untyped Zp division");
            return Zp::make(self.value * rhs.value, 0);
        }
        let inv = Zp::inverse_mod(rhs.value, m as i128).expect("division by zero in Z/p");
        self * Zp::make(inv, m)
    }
}

impl Neg for Zp {
    type Output = Zp;
    fn neg(self) -> Zp {
        Zp::make(-self.value, self.modulus)
    }
}

impl Zero for Zp {
    fn zero() -> Self {
        Zp {
            value: 0,
            modulus: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.residue() == 0
    }
}

impl One for Zp {
    fn one() -> Self {
        Zp {
            value: 1,
            modulus: 0,
        }
    }
}

/// A coefficient field together with the map from the integers into it.
pub trait CoefficientField: Send + Sync + fmt::Debug {
    type Elem: FieldScalar + fmt::Display;

    fn embed(&self, z: &BigInt) -> Self::Elem;

    fn name(&self) -> String;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl CoefficientField for Rationals {
    type Elem = BigRational;

    fn embed(&self, z: &BigInt) -> BigRational {
        BigRational::from_integer(z.clone())
    }

    fn name(&self) -> String {
        "Q".into()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Returns `None` unless `p` is prime and small enough for exact `i128` products.
    pub fn new(p: u64) -> Option<Self> {
        (p < (1 << 32) && is_prime(p)).then_some(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
}

impl CoefficientField for PrimeField {
    type Elem = Zp;

    fn embed(&self, z: &BigInt) -> Zp {
        Zp::from_bigint(z, self.p)
    }

    fn name(&self) -> String {
        format!("Z/{}", self.p)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Coefficient ring selected at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientSpec {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl CoefficientSpec {
    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientSpec::Integers)
    }
}

impl fmt::Display for CoefficientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientSpec::Integers => write!(f, "z"),
            CoefficientSpec::Rationals => write!(f, "q"),
            CoefficientSpec::PrimeField(p) => write!(f, "zp:{p}"),
        }
    }
}

impl std::str::FromStr for CoefficientSpec {
    type Err = crate::Error;

    /// Accepts `z`, `q` or `zp:<p>` with `p` prime.
    fn from_str(s: &str) -> crate::Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "z" => Ok(CoefficientSpec::Integers),
            "q" => Ok(CoefficientSpec::Rationals),
            other => {
                let p = other
                    .strip_prefix("zp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| {
                        crate::Error::InvalidInput(format!(
                            "unknown coefficient ring '{s}' (expected z, q or zp:<p>)"
                        ))
                    })?;
                if PrimeField::new(p).is_none() {
                    return Err(crate::Error::InvalidInput(format!(
                        "zp:{p} needs a prime modulus below 2^32"
                    )));
                }
                Ok(CoefficientSpec::PrimeField(p))
            }
        }
    }
}

/// Runs `$body` with `$k` bound to the concrete field named by a
/// [`CoefficientSpec`]; integer coefficients evaluate `$integers` instead.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $k:ident => $body:expr, integers => $integers:expr) => {
        match $spec {
            $crate::scalar::CoefficientSpec::Rationals => {
                let $k = $crate::scalar::Rationals;
                $body
            }
            $crate::scalar::CoefficientSpec::PrimeField(p) => {
                let $k = $crate::scalar::PrimeField::new(p).expect("validated prime");
                $body
            }
            $crate::scalar::CoefficientSpec::Integers => $integers,
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zp_arithmetic_matches_modular_integers() {
        let p = 7;
        for a in -10i64..10 {
            for b in -10i64..10 {
                let x = Zp::new(a, p);
                let y = Zp::new(b, p);
                assert_eq!((x + y).residue(), (a + b).rem_euclid(7) as i128);
                assert_eq!((x * y).residue(), (a * b).rem_euclid(7) as i128);
                if b.rem_euclid(7) != 0 {
                    assert_eq!((x / y) * y, x);
                }
            }
        }
    }

    #[test]
    fn untyped_constants_adopt_modulus() {
        let x = Zp::new(3, 5);
        assert_eq!(Zp::one() + x, Zp::new(4, 5));
        assert_eq!(x - Zp::one() - Zp::one() - Zp::one(), Zp::zero());
        assert!((Zp::zero() * x).is_zero());
        assert_eq!(-Zp::one() * x, Zp::new(2, 5));
    }

    #[test]
    fn coefficient_spec_parsing() {
        assert_eq!("z".parse::<CoefficientSpec>().unwrap(), CoefficientSpec::Integers);
        assert_eq!("Q".parse::<CoefficientSpec>().unwrap(), CoefficientSpec::Rationals);
        assert_eq!(
            "zp:5".parse::<CoefficientSpec>().unwrap(),
            CoefficientSpec::PrimeField(5)
        );
        assert!("zp:4".parse::<CoefficientSpec>().is_err());
        assert!("zp:".parse::<CoefficientSpec>().is_err());
        assert!("r".parse::<CoefficientSpec>().is_err());
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
